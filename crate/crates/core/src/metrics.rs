//! Effective resistance and Kirchhoff index, both from a group inverse and
//! from the published closed forms.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::pipeline::Spectral;
use crate::reading::{DistanceOffset, Join, Reading};
use crate::wheel::{VertexId, WheelParams};

fn check_index(ginv: &DenseMatrix, v: VertexId) -> Result<()> {
    if v.index() >= ginv.rows() {
        Err(Error::IndexOutOfRange { index: v.index(), order: ginv.rows() })
    } else {
        Ok(())
    }
}

/// `R(i,j) = X_ii + X_jj - 2 X_ij` for a group inverse `X`.
pub fn effective_resistance(ginv: &DenseMatrix, i: VertexId, j: VertexId) -> Result<f64> {
    if !ginv.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", ginv.rows(), ginv.cols())));
    }
    check_index(ginv, i)?;
    check_index(ginv, j)?;
    if i == j {
        return Ok(0.0);
    }
    let (i, j) = (i.index(), j.index());
    Ok(ginv[(i, i)] + ginv[(j, j)] - 2.0 * ginv[(i, j)])
}

/// All pairwise resistances; symmetric with zero diagonal.
pub fn resistance_table(ginv: &DenseMatrix) -> Result<DenseMatrix> {
    if !ginv.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", ginv.rows(), ginv.cols())));
    }
    let n = ginv.rows();
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            ginv[(i, i)] + ginv[(j, j)] - 2.0 * ginv[(i, j)]
        }
    }))
}

/// `K = N · trace(X)` for a group inverse on `N` vertices.
pub fn kirchhoff_green(ginv: &DenseMatrix) -> f64 {
    ginv.rows() as f64 * ginv.trace()
}

/// `½ Σ_{i,j} R(i,j)`, the definition of the Kirchhoff index.
pub fn kirchhoff_from_resistances(table: &DenseMatrix) -> f64 {
    0.5 * table.as_slice().iter().sum::<f64>()
}

/// What follows the Chebyshev bracket in the cycle-pair resistance formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRemainder {
    /// The printed distance term, polynomial group and trailing constant.
    AsPrinted { offset: DistanceOffset },
    /// Distance term and polynomial cancel and the trailing constant is
    /// absent, so only the bracket remains.
    Vanishing,
}

/// Reading of the resistance between two cycle vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairReading {
    /// Boundary between the `V` term and the `U_{k'-2}+U_{m-k'}` term.
    pub coupling: Join,
    pub remainder: PairRemainder,
}

impl PairReading {
    pub const ACCEPTED: PairReading = PairReading { coupling: Join::Minus, remainder: PairRemainder::Vanishing };

    pub fn candidates() -> Vec<PairReading> {
        let mut out = Vec::new();
        for offset in DistanceOffset::ALL {
            for coupling in Join::ALL {
                out.push(PairReading { coupling, remainder: PairRemainder::AsPrinted { offset } });
            }
        }
        for coupling in Join::ALL {
            out.push(PairReading { coupling, remainder: PairRemainder::Vanishing });
        }
        out
    }
}

impl Reading for PairReading {
    fn is_as_printed(&self) -> bool {
        self.coupling == Join::Juxtaposed
            && self.remainder == PairRemainder::AsPrinted { offset: DistanceOffset::AsPrinted }
    }

    fn describe(&self) -> String {
        let tail = match self.remainder {
            PairRemainder::AsPrinted { offset: DistanceOffset::AsPrinted } => {
                "remaining terms as printed".to_string()
            }
            PairRemainder::AsPrinted { offset: DistanceOffset::BlockStart } => {
                "distance offset (k'-1)d in place of k'(d-1), other terms as printed".to_string()
            }
            PairRemainder::Vanishing => "the |x|(n-|x|) term, the polynomial group (2k'd+2h₂)h₁… \
                 and the trailing -(n-1)²(d²-1)/(6c(n+1)²) are dropped; together they \
                 are identically zero once the polynomial's (3h₁-2h₂)d reads (2h₁-2h₂)d"
                .to_string(),
        };
        format!("before (a/c² h₁(h₂-d) - d/c)(U..): {}; {}", self.coupling, tail)
    }
}

/// What follows the Chebyshev bracket in the cycle-to-hub resistance formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HubRemainder {
    /// `(h²-hd)/(c(n+1)²) + X₂ ∘ X₃`, with `∘` the given boundary.
    AsPrinted { tail: Join },
    /// The single series term `d/(an)`.
    SeriesTerm,
}

/// Reading of the resistance between a cycle vertex and the hub.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HubReading {
    /// Boundary between `(d/(an))(V_{m-1}-1)` and the `U_{m-1}` term.
    pub spectral: Join,
    pub remainder: HubRemainder,
}

impl HubReading {
    pub const ACCEPTED: HubReading = HubReading { spectral: Join::Plus, remainder: HubRemainder::SeriesTerm };

    pub fn candidates() -> Vec<HubReading> {
        let mut out = Vec::new();
        for spectral in Join::ALL {
            for tail in Join::ALL {
                out.push(HubReading { spectral, remainder: HubRemainder::AsPrinted { tail } });
            }
        }
        for spectral in Join::ALL {
            out.push(HubReading { spectral, remainder: HubRemainder::SeriesTerm });
        }
        out
    }
}

impl Reading for HubReading {
    fn is_as_printed(&self) -> bool {
        self.spectral == Join::Juxtaposed && self.remainder == HubRemainder::AsPrinted { tail: Join::Juxtaposed }
    }

    fn describe(&self) -> String {
        let tail = match self.remainder {
            HubRemainder::AsPrinted { tail } => format!(
                "before (6h²-6hd-1)/(6c(n+1)²)(…): {tail}; other terms as printed"
            ),
            HubRemainder::SeriesTerm => "every term after the bracket is replaced by d/(an)".into(),
        };
        format!("before (1/(2cn))(…)U_(m-1): {}; {}", self.spectral, tail)
    }
}

/// Position of a cycle vertex as (block `k ∈ 1..=m`, offset `h ∈ 0..d`).
fn block_position(v: usize, d: usize) -> (usize, usize) {
    (v / d + 1, v % d)
}

pub(crate) fn pair_resistance(sp: &Spectral, reading: PairReading, i: usize, j: usize) -> f64 {
    if i == j {
        return 0.0;
    }
    let (lo, hi) = (i.min(j), i.max(j));
    let (n, d, a, c) = (sp.n, sp.d, sp.a, sp.c);
    let (k1, h1) = block_position(lo, sp.di);
    let (k2, h2) = block_position(hi, sp.di);
    let kp = k2 - k1 + 1;
    let (h1, h2) = (h1 as f64, h2 as f64);
    let top = sp.mi as i64 - 1;

    let spectral = (h2 - h1) / c * sp.v_gap(kp);
    let index = (a / (c * c) * h1 * (h2 - d) - d / c) * sp.u_pair(kp);
    let last = (a / (2.0 * c * c) * (h1 * h1 + h2 * h2 - (h1 + h2) * d) - d / c) * sp.u(top);
    let bracket = -(reading.coupling.fuse(spectral, index) + last) / sp.tm1;

    match reading.remainder {
        PairRemainder::Vanishing => bracket,
        PairRemainder::AsPrinted { offset } => {
            let kpf = kp as f64;
            let x = (h1 - h2 - offset.offset(kp, sp.di)).abs();
            let poly = x * (n - x) - (2.0 * kpf * d + 2.0 * h2) * h1 - kpf * d * (n - 2.0 * h2)
                + d * d * (kpf - 1.0) * (kpf - 1.0)
                + h1 * h1
                + h2 * h2
                + (3.0 * h1 - 2.0 * h2) * d
                + n * (h1 - h2 + d);
            bracket + poly / (c * n) - (n - 1.0).powi(2) * (d * d - 1.0) / (6.0 * c * (n + 1.0).powi(2))
        }
    }
}

pub(crate) fn hub_resistance(sp: &Spectral, reading: HubReading, v: usize) -> f64 {
    let (n, d, a, c) = (sp.n, sp.d, sp.a, sp.c);
    let h = (v % sp.di) as f64;
    let top = sp.mi as i64 - 1;
    let hh = h * h - h * d;

    let spectral = d / (a * n) * (sp.v(top) - 1.0);
    let cheb = (a * n / c * hh - n * d + d * d) * sp.u(top) / (2.0 * c * n);
    let bracket = -reading.spectral.fuse(spectral, cheb) / sp.tm1;

    match reading.remainder {
        HubRemainder::SeriesTerm => bracket + d / (a * n),
        HubRemainder::AsPrinted { tail } => {
            let np1sq = (n + 1.0) * (n + 1.0);
            let x2 = (12.0 * c * d * (n * n + 1.0) + a * n * n * (d * d - 1.0)) / (12.0 * a * c * n * np1sq);
            let x3 = (6.0 * h * h - 6.0 * h * d - 1.0) / (6.0 * c * np1sq)
                * (a * (d * d - 1.0) / (12.0 * c * d) + n + 2.0);
            bracket + hh / (c * np1sq) + tail.fuse(x2, x3)
        }
    }
}

pub fn resistance_closed_with(
    p: &WheelParams,
    pair: PairReading,
    hub: HubReading,
    i: VertexId,
    j: VertexId,
) -> Result<f64> {
    p.check_vertex(i)?;
    p.check_vertex(j)?;
    let sp = Spectral::new(p)?;
    let n = p.n();
    Ok(match (i.index(), j.index()) {
        (x, y) if x == y => 0.0,
        (v, h) | (h, v) if h == n => hub_resistance(&sp, hub, v),
        (x, y) => pair_resistance(&sp, pair, x, y),
    })
}

/// Effective resistance between two vertices of the wheel from the closed
/// forms; the hub is vertex `n`.
pub fn resistance_closed(p: &WheelParams, i: VertexId, j: VertexId) -> Result<f64> {
    resistance_closed_with(p, PairReading::ACCEPTED, HubReading::ACCEPTED, i, j)
}

/// The final term of the general Kirchhoff-index formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KirchhoffReading {
    /// `-(d-1)² n / (12c)`
    AsPrinted,
    /// `-(d²-1) n / (12c)`
    DifferenceOfSquares,
}

impl KirchhoffReading {
    pub const ACCEPTED: KirchhoffReading = KirchhoffReading::DifferenceOfSquares;

    pub fn candidates() -> Vec<KirchhoffReading> {
        vec![KirchhoffReading::AsPrinted, KirchhoffReading::DifferenceOfSquares]
    }
}

impl Reading for KirchhoffReading {
    fn is_as_printed(&self) -> bool {
        *self == KirchhoffReading::AsPrinted
    }

    fn describe(&self) -> String {
        match self {
            KirchhoffReading::AsPrinted => "final term -(d-1)²n/(12c) as printed".into(),
            KirchhoffReading::DifferenceOfSquares => "final term -(d²-1)n/(12c) in place of -(d-1)²n/(12c)".into(),
        }
    }
}

pub fn kirchhoff_closed_with(p: &WheelParams, reading: KirchhoffReading) -> Result<f64> {
    let sp = Spectral::new(p)?;
    let (n, d, a, c) = (sp.n, sp.d, sp.a, sp.c);
    let top = sp.mi as i64 - 1;
    let bracket = (a * n / (6.0 * c) - d * n + d * d) * sp.u(top)
        + (2.0 * c * d / a + d * n / 3.0) * (sp.v(top) - 1.0);
    let last = match reading {
        KirchhoffReading::AsPrinted => (d - 1.0) * (d - 1.0),
        KirchhoffReading::DifferenceOfSquares => d * d - 1.0,
    } * n
        / (12.0 * c);
    Ok(-(n + 1.0) / (2.0 * c * sp.tm1) * bracket + d / a + d * n * (n + 1.0) / (6.0 * c) - last)
}

/// Kirchhoff index of the wheel from the closed form.
pub fn kirchhoff_closed(p: &WheelParams) -> Result<f64> {
    kirchhoff_closed_with(p, KirchhoffReading::ACCEPTED)
}

/// Reading of the complete-wheel (`d = 1`) Kirchhoff formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WheelKirchhoffReading {
    /// Boundary between the Chebyshev term and `1/a`.
    pub hub: Join,
}

impl WheelKirchhoffReading {
    pub const ACCEPTED: WheelKirchhoffReading = WheelKirchhoffReading { hub: Join::Plus };

    pub fn candidates() -> Vec<WheelKirchhoffReading> {
        Join::ALL.iter().map(|&hub| WheelKirchhoffReading { hub }).collect()
    }
}

impl Reading for WheelKirchhoffReading {
    fn is_as_printed(&self) -> bool {
        self.hub == Join::Juxtaposed
    }

    fn describe(&self) -> String {
        format!("before 1/a: {}", self.hub)
    }
}

pub fn kirchhoff_wheel_with(p: &WheelParams, reading: WheelKirchhoffReading) -> Result<f64> {
    if p.d() != 1 {
        return Err(Error::Domain(format!("the complete-wheel formula needs d = 1, got d = {}", p.d())));
    }
    let sp = Spectral::new(p)?;
    let (n, a, c) = (sp.n, sp.a, sp.c);
    let top = sp.mi as i64 - 1;
    let bracket = (a * n / (6.0 * c) - n + 1.0) * sp.u(top) + (2.0 * c / a + n / 3.0) * (sp.v(top) - 1.0);
    let lead = -(n + 1.0) / (2.0 * c * sp.tm1) * bracket;
    Ok(reading.hub.fuse(lead, 1.0 / a) + n * (n + 1.0) / (6.0 * c))
}

/// Kirchhoff index of the complete wheel `W_n` (`d = 1`).
pub fn kirchhoff_wheel(p: &WheelParams) -> Result<f64> {
    kirchhoff_wheel_with(p, WheelKirchhoffReading::ACCEPTED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense_group_inverse;
    use crate::wheel::build_laplacian;

    fn wp(m: usize, d: usize, a: f64, c: f64) -> WheelParams {
        WheelParams::new(m, d, a, c).unwrap()
    }

    #[test]
    fn k4_resistances() {
        let p = wp(3, 1, 1.0, 1.0);
        for (i, j) in [(0, 1), (0, 3), (2, 3)] {
            let r = resistance_closed(&p, VertexId(i), VertexId(j)).unwrap();
            assert!((r - 0.5).abs() < 1e-14, "R({i},{j}) = {r}");
        }
        assert_eq!(resistance_closed(&p, VertexId(2), VertexId(2)).unwrap(), 0.0);
        assert!(matches!(
            resistance_closed(&p, VertexId(0), VertexId(4)),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn kirchhoff_hand_values() {
        assert!((kirchhoff_closed(&wp(3, 1, 1.0, 1.0)).unwrap() - 3.0).abs() < 1e-13);
        assert!((kirchhoff_wheel(&wp(3, 1, 1.0, 1.0)).unwrap() - 3.0).abs() < 1e-13);
        assert!((kirchhoff_closed(&wp(2, 2, 1.0, 1.0)).unwrap() - 23.0 / 3.0).abs() < 1e-13);
        let printed = kirchhoff_closed_with(&wp(2, 2, 1.0, 1.0), KirchhoffReading::AsPrinted).unwrap();
        assert!((printed - 25.0 / 3.0).abs() < 1e-13);
        assert!(matches!(kirchhoff_wheel(&wp(2, 2, 1.0, 1.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn closed_forms_match_dense_oracle() {
        for (m, d, a, c) in [(2, 2, 1.0, 1.0), (4, 3, 2.0, 0.5), (5, 4, 0.3, 1.7), (2, 1, 1.0, 1.0)] {
            let p = wp(m, d, a, c);
            let x = dense_group_inverse(&build_laplacian(&p)).unwrap();
            let table = resistance_table(&x).unwrap();
            for i in 0..=p.n() {
                for j in 0..=p.n() {
                    let r = resistance_closed(&p, VertexId(i), VertexId(j)).unwrap();
                    assert!((r - table[(i, j)]).abs() < 1e-10, "({m},{d},{a},{c}) R({i},{j})");
                }
            }
            let k = kirchhoff_closed(&p).unwrap();
            assert!((k - kirchhoff_green(&x)).abs() < 1e-9 * k.max(1.0));
            assert!((k - kirchhoff_from_resistances(&table)).abs() < 1e-9 * k.max(1.0));
        }
    }

    #[test]
    fn effective_resistance_basics() {
        let x = dense_group_inverse(&build_laplacian(&wp(2, 2, 1.0, 1.0))).unwrap();
        let r = effective_resistance(&x, VertexId(1), VertexId(3)).unwrap();
        assert_eq!(r, effective_resistance(&x, VertexId(3), VertexId(1)).unwrap());
        assert_eq!(effective_resistance(&x, VertexId(4), VertexId(4)).unwrap(), 0.0);
        assert!(effective_resistance(&x, VertexId(5), VertexId(0)).is_err());
    }
}
