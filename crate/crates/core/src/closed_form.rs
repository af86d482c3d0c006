//! Direct evaluation of the published entry formulas for the wheel's group
//! inverse: the blocks `N_k` of the top-left block Toeplitz part, the hub
//! column, and the hub corner.
//!
//! The typeset formulas lost several binary operators. Each one is evaluated
//! under an explicit reading; the `ACCEPTED` readings are the ones the errata
//! reconciliation confirms against [`crate::pipeline::assemble_group_inverse`].

use crate::error::Result;
use crate::matrix::DenseMatrix;
use crate::pipeline::{gs_vector, Spectral};
use crate::reading::{DistanceOffset, Join, Reading};
use crate::wheel::WheelParams;

/// Hub corner `(12cdn + an(d²-1)) / (12ac(n+1)²)`.
pub fn theorem_corner(p: &WheelParams) -> f64 {
    let (n, d, a, c) = (p.n() as f64, p.d() as f64, p.a(), p.c());
    (12.0 * c * d * n + a * n * (d * d - 1.0)) / (12.0 * a * c * (n + 1.0) * (n + 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BorderReading {
    /// `-d/(a(n+1)²) · (a(d²-1)/(12cd) + n + 2) · n_i`
    AsPrinted,
    /// `-d/(a(n+1)²) · (a(d²-1)/(12cd) + 1 + (n+1)·n_i)`, the affine form
    /// the assembly produces.
    AffineInGs,
}

impl BorderReading {
    pub const ACCEPTED: BorderReading = BorderReading::AffineInGs;

    pub fn candidates() -> Vec<BorderReading> {
        vec![BorderReading::AsPrinted, BorderReading::AffineInGs]
    }
}

impl Reading for BorderReading {
    fn is_as_printed(&self) -> bool {
        *self == BorderReading::AsPrinted
    }

    fn describe(&self) -> String {
        match self {
            BorderReading::AsPrinted => "as printed: scalar (a(d²-1)/(12cd) + n + 2) times n_i".into(),
            BorderReading::AffineInGs => "the factor (a(d²-1)/(12cd) + n + 2)·n_i is replaced by \
                 (a(d²-1)/(12cd) + 1) + (n+1)·n_i; the hub column is affine, not proportional, in n"
                .into(),
        }
    }
}

pub fn theorem_border_entry_with(p: &WheelParams, reading: BorderReading, i: usize) -> Result<f64> {
    if !(1..=p.d()).contains(&i) {
        return Err(crate::error::Error::Domain(format!("border row {i} outside 1..={}", p.d())));
    }
    let (n, d, a, c) = (p.n() as f64, p.d() as f64, p.a(), p.c());
    let gs = gs_vector(p)[i - 1];
    let lead = -d / (a * (n + 1.0) * (n + 1.0));
    let base = a / (12.0 * c * d) * (d * d - 1.0);
    Ok(match reading {
        BorderReading::AsPrinted => lead * (base + n + 2.0) * gs,
        BorderReading::AffineInGs => lead * (base + 1.0 + (n + 1.0) * gs),
    })
}

/// Hub-column entry for cycle vertices in block-row position `i ∈ 1..=d`
/// (the column is `d`-periodic along the cycle).
pub fn theorem_border_entry(p: &WheelParams, i: usize) -> Result<f64> {
    theorem_border_entry_with(p, BorderReading::ACCEPTED, i)
}

/// Reading of the `N_k` entry formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockReading {
    /// Boundary between the `V` term and the `U` term inside the bracket.
    pub spectral: Join,
    /// Boundary between `-nd` and `(2kd - 3d + 2h - n)(i-1)`.
    pub index: Join,
    /// Boundary between the `1/(n+1)(…)` term and the closing
    /// `(a(d²-1)+12cd)/(6a(n+1)²)` fraction.
    pub closing: Join,
    pub offset: DistanceOffset,
}

impl BlockReading {
    pub const ACCEPTED: BlockReading = BlockReading {
        spectral: Join::Minus,
        index: Join::Plus,
        closing: Join::Plus,
        offset: DistanceOffset::BlockStart,
    };

    /// Every reading, literal first, then operator insertions with the
    /// printed offset, then with the corrected offset.
    pub fn candidates() -> Vec<BlockReading> {
        let mut out = Vec::with_capacity(54);
        for offset in DistanceOffset::ALL {
            for spectral in Join::ALL {
                for index in Join::ALL {
                    for closing in Join::ALL {
                        out.push(BlockReading { spectral, index, closing, offset });
                    }
                }
            }
        }
        out
    }
}

impl Reading for BlockReading {
    fn is_as_printed(&self) -> bool {
        self.spectral == Join::Juxtaposed
            && self.index == Join::Juxtaposed
            && self.closing == Join::Juxtaposed
            && self.offset == DistanceOffset::AsPrinted
    }

    fn describe(&self) -> String {
        format!(
            "before (an/c (i-1)(h-d) - nd)(U..): {}; before (2kd-3d+2h-n)(i-1): {}; \
             before (a(d²-1)+12cd)/(6a(n+1)²): {}; distance offset: {}",
            self.spectral,
            self.index,
            self.closing,
            match self.offset {
                DistanceOffset::AsPrinted => "k(d-1) as printed",
                DistanceOffset::BlockStart => "(k-1)d in place of the printed k(d-1)",
            }
        )
    }
}

pub(crate) fn block_entry(sp: &Spectral, reading: BlockReading, k: usize, i: usize, h: usize) -> f64 {
    let (n, d, a, c) = (sp.n, sp.d, sp.a, sp.c);
    let (fi, fh) = (i as f64, h as f64);
    let tail = ((n - 1.0) * (d * d - 1.0) / 6.0 - (fi - 2.0 - d) * fi - fh * fh + d * fh - d - 1.0) / (n + 1.0);
    let closing = (a * (d * d - 1.0) + 12.0 * c * d) / (6.0 * a * (n + 1.0) * (n + 1.0));
    let inner = sp.block_distance(reading.offset, k, i, h)
        + sp.block_bracket(reading.spectral, k, i, h)
        + sp.block_polynomial(reading.index, k, i, h)
        + reading.closing.fuse(tail, closing);
    inner / (2.0 * c * n)
}

pub fn theorem_block_entry_with(
    p: &WheelParams,
    reading: BlockReading,
    k: usize,
    i: usize,
    h: usize,
) -> Result<f64> {
    let sp = Spectral::new(p)?;
    sp.check_block_index(k, i, h)?;
    Ok(block_entry(&sp, reading, k, i, h))
}

/// Entry `(i, h+1)` of block `N_k` of the top-left part of the group
/// inverse; `k ∈ 1..=m`, `i ∈ 1..=d`, `h ∈ 0..d`.
pub fn theorem_block_entry(p: &WheelParams, k: usize, i: usize, h: usize) -> Result<f64> {
    theorem_block_entry_with(p, BlockReading::ACCEPTED, k, i, h)
}

/// The full `(n+1)×(n+1)` matrix assembled purely from the entry formulas.
pub fn theorem_group_inverse_with(
    p: &WheelParams,
    block: BlockReading,
    border: BorderReading,
) -> Result<DenseMatrix> {
    let sp = Spectral::new(p)?;
    let (n, m, d) = (p.n(), p.m(), p.d());
    let blocks: Vec<DenseMatrix> = (1..=m)
        .map(|k| DenseMatrix::from_fn(d, d, |r, h| block_entry(&sp, block, k, r + 1, h)))
        .collect();
    let column: Vec<f64> =
        (1..=d).map(|i| theorem_border_entry_with(p, border, i)).collect::<Result<_>>()?;
    let corner = theorem_corner(p);
    Ok(DenseMatrix::from_fn(n + 1, n + 1, |row, col| match (row == n, col == n) {
        (true, true) => corner,
        (false, true) => column[row % d],
        (true, false) => column[col % d],
        (false, false) => {
            let k = (col / d + m - row / d) % m;
            blocks[k][(row % d, col % d)]
        }
    }))
}

pub fn theorem_group_inverse(p: &WheelParams) -> Result<DenseMatrix> {
    theorem_group_inverse_with(p, BlockReading::ACCEPTED, BorderReading::ACCEPTED)
}
