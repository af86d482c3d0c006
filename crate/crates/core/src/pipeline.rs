//! Closed-form route to the group inverse of the wheel Laplacian.
//!
//! The hub row/column is eliminated through a Schur complement whose group
//! inverse `M = G - G F G` is block Toeplitz. The chain is
//!
//! ```text
//! G_R  →  G_R⁻¹  →  M_R = (G_R⁻¹ + Π_R Π_Rᵀ)⁻¹  →  F  →  H = G F  →  K = H G  →  M = G - K
//! ```
//!
//! and the full `(n+1)×(n+1)` inverse is assembled from `M`, the border `s`
//! and `α = m·a`. Indices `k`, `i` in the entry formulas are 1-based block and
//! row positions; `h` is the 0-based column offset inside a block.

use crate::chebyshev::ChebTable;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::oracle::axiom_residuals;
use crate::reading::{DistanceOffset, Join, Literal, Reading};
use crate::wheel::{build_laplacian, spoke_border, WheelParams};

/// Residual above which an assembled group inverse is rejected.
pub const AXIOM_GUARD: f64 = 1e-6;

/// First row of an `m×m` circulant matrix; entry `(i, j)` is
/// `row[(j - i) mod m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantVec {
    row: Vec<f64>,
}

impl CirculantVec {
    pub fn new(row: Vec<f64>) -> Result<Self> {
        if row.is_empty() {
            return Err(Error::Dimension("circulant of order 0".into()));
        }
        Ok(CirculantVec { row })
    }

    pub fn order(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[f64] {
        &self.row
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let m = self.order();
        self.row[(j + m - i % m) % m]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let m = self.order();
        DenseMatrix::from_fn(m, m, |i, j| self.entry(i, j))
    }

    /// Product of two circulants of the same order (again circulant).
    pub fn mul(&self, rhs: &CirculantVec) -> Result<CirculantVec> {
        let m = self.order();
        if rhs.order() != m {
            return Err(Error::Dimension(format!("circulant orders {m} and {}", rhs.order())));
        }
        let row = (0..m)
            .map(|j| (0..m).map(|k| self.row[k] * rhs.row[(j + m - k) % m]).sum())
            .collect();
        Ok(CirculantVec { row })
    }

    pub fn add(&self, rhs: &CirculantVec) -> Result<CirculantVec> {
        if rhs.order() != self.order() {
            return Err(Error::Dimension(format!(
                "circulant orders {} and {}",
                self.order(),
                rhs.order()
            )));
        }
        Ok(CirculantVec { row: self.row.iter().zip(&rhs.row).map(|(a, b)| a + b).collect() })
    }

    /// `max_j |row[j] - row[(m - j) mod m]|`
    pub fn asymmetry(&self) -> f64 {
        let m = self.order();
        (0..m).fold(0.0, |w, j| w.max((self.row[j] - self.row[(m - j) % m]).abs()))
    }
}

/// `m` square blocks inducing the block Toeplitz matrix whose block `(r, s)`
/// is `blocks[(s - r) mod m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockColumnFamily {
    blocks: Vec<DenseMatrix>,
}

impl BlockColumnFamily {
    pub fn new(blocks: Vec<DenseMatrix>) -> Result<Self> {
        let d = blocks.first().map(DenseMatrix::rows).unwrap_or(0);
        if d == 0 || blocks.iter().any(|b| b.rows() != d || b.cols() != d) {
            return Err(Error::Dimension("blocks must be square and of equal, nonzero order".into()));
        }
        Ok(BlockColumnFamily { blocks })
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_order(&self) -> usize {
        self.blocks[0].rows()
    }

    /// Block `N_k`, 1-based.
    pub fn block(&self, k: usize) -> &DenseMatrix {
        &self.blocks[k - 1]
    }

    pub fn expand(&self) -> DenseMatrix {
        let m = self.block_count();
        let d = self.block_order();
        DenseMatrix::from_fn(m * d, m * d, |row, col| {
            let k = (col / d + m - row / d) % m;
            self.blocks[k][(row % d, col % d)]
        })
    }
}

/// Chebyshev values and shared scalars for one parameter point.
pub(crate) struct Spectral {
    pub n: f64,
    pub m: f64,
    pub d: f64,
    pub a: f64,
    pub c: f64,
    pub mi: usize,
    pub di: usize,
    pub cheb: ChebTable,
    /// `T_m(q) - 1`
    pub tm1: f64,
}

impl Spectral {
    pub fn new(p: &WheelParams) -> Result<Self> {
        let cheb = ChebTable::new(p.q(), p.m())?;
        let tm1 = cheb.t_top() - 1.0;
        Ok(Spectral {
            n: p.n() as f64,
            m: p.m() as f64,
            d: p.d() as f64,
            a: p.a(),
            c: p.c(),
            mi: p.m(),
            di: p.d(),
            cheb,
            tm1,
        })
    }

    pub fn u(&self, k: i64) -> f64 {
        self.cheb.u(k)
    }

    pub fn v(&self, k: i64) -> f64 {
        self.cheb.v(k)
    }

    /// `U_{k-2} + U_{m-k}`
    pub fn u_pair(&self, k: usize) -> f64 {
        self.u(k as i64 - 2) + self.u(self.mi as i64 - k as i64)
    }

    /// `V_{k-1} - V_{m-k}`
    pub fn v_gap(&self, k: usize) -> f64 {
        self.v(k as i64 - 1) - self.v(self.mi as i64 - k as i64)
    }

    pub fn check_block_index(&self, k: usize, i: usize, h: usize) -> Result<()> {
        if !(1..=self.mi).contains(&k) || !(1..=self.di).contains(&i) || h >= self.di {
            return Err(Error::Domain(format!(
                "block index (k={k}, i={i}, h={h}) outside k∈[1,{m}], i∈[1,{d}], h∈[0,{d})",
                m = self.mi,
                d = self.di
            )));
        }
        Ok(())
    }

    /// The bracket shared by the `K`, `M` and `N` entries:
    /// `[ n(h-i+1)(V_{k-1}-V_{m-k}) ∘ (an/c (i-1)(h-d) - nd)(U_{k-2}+U_{m-k})
    ///    - 2cd/a (V_{m-1}-1) - d² U_{m-1} ] / (T_m - 1)`.
    pub fn block_bracket(&self, coupling: Join, k: usize, i: usize, h: usize) -> f64 {
        let (n, d, a, c) = (self.n, self.d, self.a, self.c);
        let (i1, h) = ((i - 1) as f64, h as f64);
        let spectral = n * (h - i1) * self.v_gap(k);
        let index = (a * n / c * i1 * (h - d) - n * d) * self.u_pair(k);
        let top = self.mi as i64 - 1;
        let rest = -2.0 * c * d / a * (self.v(top) - 1.0) - d * d * self.u(top);
        (coupling.fuse(spectral, index) + rest) / self.tm1
    }

    /// `dh + nh - nd ∘ (2kd - 3d + 2h - n)(i-1) + kd(n - 2h) - d²(k-1)²`
    pub fn block_polynomial(&self, coupling: Join, k: usize, i: usize, h: usize) -> f64 {
        let (n, d) = (self.n, self.d);
        let (kf, i1, h) = (k as f64, (i - 1) as f64, h as f64);
        let head = d * h + n * h;
        let fused = coupling.fuse(-n * d, (2.0 * kf * d - 3.0 * d + 2.0 * h - n) * i1);
        head + fused + kf * d * (n - 2.0 * h) - d * d * (kf - 1.0) * (kf - 1.0)
    }

    /// `-|x|(n - |x|)` with `x = i - 1 - offset - h`.
    pub fn block_distance(&self, offset: DistanceOffset, k: usize, i: usize, h: usize) -> f64 {
        let x = ((i - 1) as f64 - offset.offset(k, self.di) - h as f64).abs();
        -x * (self.n - x)
    }
}

/// `G_R = -(d/(2cm)) circ(0, m-1, …, j(m-j), …, m-1)`.
pub fn reduced_green(p: &WheelParams) -> CirculantVec {
    let m = p.m();
    let scale = -(p.d() as f64) / (2.0 * p.c() * m as f64);
    CirculantVec { row: (0..m).map(|j| scale * (j * (m - j)) as f64).collect() }
}

/// How the pattern `(b₀, -b₁, -1, …, -1, -b₁)` is laid out when `m` is too
/// small for the two `-b₁` slots to be distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CirculantPattern {
    /// `-b₁` once per slot; at `m = 2` the row is `(b₀, -b₁)`.
    Distinct,
    /// At `m = 2` the two `-b₁` slots stack: `(b₀, -2b₁)`.
    Doubled,
    /// A `-1` baseline with a `1 - b₁` correction per `-b₁` slot; at `m = 2`
    /// this gives `(b₀, 1 - 2b₁)`.
    Superposed,
}

impl CirculantPattern {
    pub const ALL: [CirculantPattern; 3] =
        [CirculantPattern::Distinct, CirculantPattern::Doubled, CirculantPattern::Superposed];
}

impl Reading for CirculantPattern {
    fn is_as_printed(&self) -> bool {
        *self == CirculantPattern::Distinct
    }

    fn describe(&self) -> String {
        match self {
            CirculantPattern::Distinct => "as printed: (b0, -b1, -1, …, -1, -b1), each slot once".into(),
            CirculantPattern::Doubled => "at m = 2 both -b1 slots land on one entry: (b0, -2·b1)".into(),
            CirculantPattern::Superposed => {
                "entry j≠0 is -1 - (b1 - 1)·[j = 1] - (b1 - 1)·[j = m-1]; at m = 2 this is (b0, 1 - 2·b1)"
                    .into()
            }
        }
    }
}

/// `G_R⁻¹ = 12c/(n(m²-1)) circ(b₀, -b₁, -1, …, -1, -b₁)` under a given
/// layout of the pattern.
pub fn reduced_green_inverse_with(p: &WheelParams, pattern: CirculantPattern) -> CirculantVec {
    let m = p.m();
    let mf = m as f64;
    let b0 = (mf.powi(3) - mf - 6.0) / 6.0;
    let b1 = (mf.powi(3) - mf + 12.0) / 12.0;
    let scale = 12.0 * p.c() / (p.n() as f64 * (mf * mf - 1.0));
    let row = (0..m)
        .map(|j| {
            if j == 0 {
                return b0;
            }
            let hits = (j == 1) as u8 + (j == m - 1) as u8;
            match (pattern, hits) {
                (_, 0) => -1.0,
                (CirculantPattern::Distinct, _) => -b1,
                (CirculantPattern::Doubled, h) => -b1 * h as f64,
                (CirculantPattern::Superposed, h) => -1.0 - (b1 - 1.0) * h as f64,
            }
        })
        .map(|x| scale * x)
        .collect();
    CirculantVec { row }
}

/// `max |G_R · X - I|` for a candidate inverse.
pub fn reduced_inverse_residual(p: &WheelParams, candidate: &CirculantVec) -> f64 {
    let prod = reduced_green(p).mul(candidate).expect("same order");
    prod.row()
        .iter()
        .enumerate()
        .fold(0.0, |w, (j, &x)| w.max((x - if j == 0 { 1.0 } else { 0.0 }).abs()))
}

/// Inverse of the reduced Green circulant. At `m = 2` the printed pattern is
/// ambiguous; the layout whose product with `G_R` is the identity is chosen.
pub fn reduced_green_inverse(p: &WheelParams) -> Result<CirculantVec> {
    let mut worst: f64 = 0.0;
    for pattern in CirculantPattern::ALL {
        let candidate = reduced_green_inverse_with(p, pattern);
        let r = reduced_inverse_residual(p, &candidate);
        if r <= 1e-8 {
            return Ok(candidate);
        }
        worst = worst.max(r);
    }
    Err(Error::Singular(format!(
        "no layout of the reduced inverse pattern reproduces the identity (residual {worst:e})"
    )))
}

/// `Π_R Π_Rᵀ = (a/m)(mI - J)` as a circulant.
pub fn reduced_dipole_gram(p: &WheelParams) -> CirculantVec {
    let m = p.m();
    let w = p.a() / m as f64;
    CirculantVec { row: (0..m).map(|j| if j == 0 { w * (m as f64 - 1.0) } else { -w }).collect() }
}

pub(crate) fn mr_entries(sp: &Spectral) -> Vec<f64> {
    let (m, d, a, c) = (sp.m, sp.d, sp.a, sp.c);
    let shift = (12.0 * c + a * d * (m * m - 1.0)) / (12.0 * a * c * m);
    (1..=sp.mi).map(|j| sp.u_pair(j) * d / (2.0 * c * sp.tm1) - shift).collect()
}

/// `M_R = (G_R⁻¹ + Π_R Π_Rᵀ)⁻¹ = circ(m_1, …, m_m)`.
pub fn mr_matrix(p: &WheelParams) -> Result<CirculantVec> {
    Ok(CirculantVec { row: mr_entries(&Spectral::new(p)?) })
}

pub(crate) fn f_entries(sp: &Spectral) -> Vec<f64> {
    let (d, a, c) = (sp.d, sp.a, sp.c);
    (1..=sp.mi)
        .map(|i| {
            let delta = if i == 1 { a } else { 0.0 };
            delta - a * a * d / (2.0 * c) * sp.u_pair(i) / sp.tm1
        })
        .collect()
}

/// `f_1, …, f_m`: the only nonzero entry of each block of `F`, at the block's
/// top-left corner.
pub fn f_coeffs(p: &WheelParams) -> Result<Vec<f64>> {
    Ok(f_entries(&Spectral::new(p)?))
}

/// Reading of the `k ≥ 2` column formula of `H`, which has one fused
/// boundary before `(d/c)[a(i-1)+c](U_{k-2}+U_{m-k})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HReading {
    pub coupling: Join,
}

impl HReading {
    pub const ACCEPTED: HReading = HReading { coupling: Join::Minus };

    pub fn candidates() -> Vec<HReading> {
        Join::ALL.iter().map(|&coupling| HReading { coupling }).collect()
    }
}

impl Reading for HReading {
    fn is_as_printed(&self) -> bool {
        self.coupling == Join::Juxtaposed
    }

    fn describe(&self) -> String {
        format!("boundary before (d/c)[a(i-1)+c](U_(k-2)+U_(m-k)): {}", self.coupling)
    }
}

pub(crate) fn h_column(sp: &Spectral, reading: HReading, k: usize) -> Vec<f64> {
    let (n, d, a, c) = (sp.n, sp.d, sp.a, sp.c);
    let top = sp.mi as i64 - 1;
    (1..=sp.di)
        .map(|i| {
            let i1 = (i - 1) as f64;
            let bracket = if k == 1 {
                i1 * (sp.v(top) - 1.0) - d * sp.u(top)
            } else {
                let left = i1 * sp.v_gap(k);
                let right = d / c * (a * i1 + c) * sp.u_pair(k);
                reading.coupling.fuse(left, right)
            };
            -d / n - a / (2.0 * c) * bracket / sp.tm1
        })
        .collect()
}

pub fn h_first_columns_with(p: &WheelParams, reading: HReading) -> Result<Vec<Vec<f64>>> {
    let sp = Spectral::new(p)?;
    Ok((1..=p.m()).map(|k| h_column(&sp, reading, k)).collect())
}

/// First columns of the blocks `H_1, …, H_m` of `H = G F`; every other
/// column of each block is zero.
pub fn h_first_columns(p: &WheelParams) -> Result<Vec<Vec<f64>>> {
    h_first_columns_with(p, HReading::ACCEPTED)
}

pub(crate) fn k_entry(sp: &Spectral, k: usize, i: usize, h: usize) -> f64 {
    let (n, d, c) = (sp.n, sp.d, sp.c);
    let bracket = sp.block_bracket(Join::Minus, k, i, h);
    let poly = sp.block_polynomial(Join::Plus, k, i, h) - n * n / 6.0 + d * d / 6.0;
    -(bracket + poly) / (2.0 * c * n)
}

/// Entry `(i, h+1)` of block `K_k` of `K = G F G`.
pub fn k_block_entry(p: &WheelParams, k: usize, i: usize, h: usize) -> Result<f64> {
    let sp = Spectral::new(p)?;
    sp.check_block_index(k, i, h)?;
    Ok(k_entry(&sp, k, i, h))
}

/// Reading of the `M_k` entry formula: one fused boundary inside the
/// Chebyshev bracket and the cycle-distance offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MReading {
    pub coupling: Join,
    pub offset: DistanceOffset,
}

impl MReading {
    pub const ACCEPTED: MReading = MReading { coupling: Join::Minus, offset: DistanceOffset::BlockStart };

    pub fn candidates() -> Vec<MReading> {
        let mut out = Vec::new();
        for offset in DistanceOffset::ALL {
            for coupling in Join::ALL {
                out.push(MReading { coupling, offset });
            }
        }
        out
    }
}

impl Reading for MReading {
    fn is_as_printed(&self) -> bool {
        self.coupling == Join::Juxtaposed && self.offset == DistanceOffset::AsPrinted
    }

    fn describe(&self) -> String {
        format!(
            "boundary before (an/c (i-1)(h-d) - nd)(U_(k-2)+U_(m-k)): {}; distance offset: {}",
            self.coupling,
            match self.offset {
                DistanceOffset::AsPrinted => "k(d-1) as printed",
                DistanceOffset::BlockStart => "(k-1)d in place of the printed k(d-1)",
            }
        )
    }
}

pub(crate) fn m_entry(sp: &Spectral, reading: MReading, k: usize, i: usize, h: usize) -> f64 {
    let (n, d, c) = (sp.n, sp.d, sp.c);
    let inner = sp.block_distance(reading.offset, k, i, h)
        + sp.block_bracket(reading.coupling, k, i, h)
        + sp.block_polynomial(Join::Plus, k, i, h);
    inner / (2.0 * c * n) + (d * d - 1.0) / (12.0 * c * n)
}

pub fn m_block_entry_with(p: &WheelParams, reading: MReading, k: usize, i: usize, h: usize) -> Result<f64> {
    let sp = Spectral::new(p)?;
    sp.check_block_index(k, i, h)?;
    Ok(m_entry(&sp, reading, k, i, h))
}

/// Entry `(i, h+1)` of block `M_k` of the Schur-complement group inverse
/// `M = G - G F G`.
pub fn m_block_entry(p: &WheelParams, k: usize, i: usize, h: usize) -> Result<f64> {
    m_block_entry_with(p, MReading::ACCEPTED, k, i, h)
}

fn family(p: &WheelParams, mut entry: impl FnMut(usize, usize, usize) -> f64) -> BlockColumnFamily {
    let d = p.d();
    let blocks = (1..=p.m())
        .map(|k| DenseMatrix::from_fn(d, d, |r, h| entry(k, r + 1, h)))
        .collect();
    BlockColumnFamily { blocks }
}

pub fn induced_f(p: &WheelParams) -> Result<BlockColumnFamily> {
    let f = f_coeffs(p)?;
    Ok(family(p, |k, i, h| if i == 1 && h == 0 { f[k - 1] } else { 0.0 }))
}

pub fn induced_h(p: &WheelParams) -> Result<BlockColumnFamily> {
    let cols = h_first_columns(p)?;
    Ok(family(p, |k, i, h| if h == 0 { cols[k - 1][i - 1] } else { 0.0 }))
}

pub fn induced_k(p: &WheelParams) -> Result<BlockColumnFamily> {
    let sp = Spectral::new(p)?;
    Ok(family(p, |k, i, h| k_entry(&sp, k, i, h)))
}

pub fn induced_m_with(p: &WheelParams, reading: MReading) -> Result<BlockColumnFamily> {
    let sp = Spectral::new(p)?;
    Ok(family(p, |k, i, h| m_entry(&sp, reading, k, i, h)))
}

pub fn induced_m(p: &WheelParams) -> Result<BlockColumnFamily> {
    induced_m_with(p, MReading::ACCEPTED)
}

/// The vector `n` of length `d` whose `d`-periodic extension is `G s`.
pub fn gs_vector(p: &WheelParams) -> Vec<f64> {
    let (n, m, d) = (p.n() as f64, p.m() as f64, p.d() as f64);
    let scale = -p.a() / (12.0 * p.c() * n);
    (1..=p.d())
        .map(|i| {
            let i = i as f64;
            scale * (n * (6.0 + d) + 5.0 * m + 6.0 * m * i * (i - d - 2.0))
        })
        .collect()
}

/// `G s` over all `n` cycle vertices.
pub fn gs_extended(p: &WheelParams) -> Vec<f64> {
    let base = gs_vector(p);
    (0..p.n()).map(|v| base[v % p.d()]).collect()
}

/// Assembles the group inverse of the wheel Laplacian from `M`:
///
/// ```text
/// n²/(α²(n+1)²) · [ C M Cᵀ + (α/n²) J      -(α/n) j - C M s ]
///                 [ -(α/n) jᵀ - sᵀ M Cᵀ    α + sᵀ M s       ]
/// ```
///
/// with `C = (α(n+1) I + j sᵀ)/n`. The result is checked against the three
/// group-inverse axioms before it is returned.
pub fn assemble_group_inverse(p: &WheelParams) -> Result<DenseMatrix> {
    let x = assemble_unchecked(p)?;
    let l = build_laplacian(p);
    let res = axiom_residuals(&l, &x)?;
    if !(res.max() <= AXIOM_GUARD) {
        return Err(Error::AxiomViolation(format!(
            "assembled inverse has axiom residual {:e} (guard {AXIOM_GUARD:e})",
            res.max()
        )));
    }
    Ok(x)
}

pub(crate) fn assemble_unchecked(p: &WheelParams) -> Result<DenseMatrix> {
    let n = p.n();
    let nf = n as f64;
    let alpha = p.alpha();
    let m = induced_m(p)?.expand();
    let s = spoke_border(p);

    let c = DenseMatrix::from_fn(n, n, |i, j| {
        (if i == j { alpha * (nf + 1.0) } else { 0.0 } + s[j]) / nf
    });
    let cmct = c.matmul(&m)?.matmul(&c.transpose())?;
    let ms = m.matvec(&s)?;
    let cms = c.matvec(&ms)?;
    let sms: f64 = s.iter().zip(&ms).map(|(a, b)| a * b).sum();

    let scale = nf * nf / (alpha * alpha * (nf + 1.0) * (nf + 1.0));
    let mut out = DenseMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = scale * (cmct[(i, j)] + alpha / (nf * nf));
        }
        let border = scale * (-alpha / nf - cms[i]);
        out[(i, n)] = border;
        out[(n, i)] = border;
    }
    out[(n, n)] = scale * (alpha + sms);
    Ok(out)
}

/// Readings with no fused boundaries, listed so the reconciliation can
/// record them alongside the others.
pub fn literal_candidates() -> Vec<Literal> {
    vec![Literal]
}
