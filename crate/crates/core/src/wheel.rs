//! The non-complete wheel network: a cycle on `n = m·d` vertices with
//! conductance `c`, plus a hub joined with conductance `a` to every `d`-th
//! cycle vertex.
//!
//! Vertices are labelled `0..n` around the cycle and the hub is `n`. Spoke
//! vertices are `0, d, 2d, …, (m-1)d`.

use serde::{Deserialize, Serialize};

use crate::chebyshev::{q_of, ChebArg};
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Internal 0-based vertex label; the hub is `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Shape and conductances of a non-complete wheel. `n` is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct WheelParams {
    m: usize,
    d: usize,
    a: f64,
    c: f64,
}

#[derive(Deserialize)]
struct RawParams {
    m: usize,
    d: usize,
    a: f64,
    c: f64,
}

impl TryFrom<RawParams> for WheelParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        WheelParams::new(raw.m, raw.d, raw.a, raw.c)
    }
}

impl WheelParams {
    pub fn new(m: usize, d: usize, a: f64, c: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!(
                "m > 1 is required (m = {m}); a single spoke makes the hub a pendant vertex"
            )));
        }
        if d < 1 {
            return Err(Error::Domain("spoke spacing d must be at least 1".into()));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("hub conductance a must be positive and finite, got {a}")));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Domain(format!(
                "cycle conductance c must be positive and finite, got {c}"
            )));
        }
        m.checked_mul(d)
            .filter(|&n| n < 1 << 24)
            .ok_or_else(|| Error::Domain(format!("cycle length m·d = {m}·{d} is too large")))?;
        Ok(WheelParams { m, d, a, c })
    }

    /// Number of spokes.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Spacing between consecutive spokes along the cycle.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Hub–spoke conductance.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Cycle-edge conductance.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Cycle length `m·d`.
    pub fn n(&self) -> usize {
        self.m * self.d
    }

    /// Hub degree `m·a`.
    pub fn alpha(&self) -> f64 {
        self.m as f64 * self.a
    }

    /// Number of vertices of the wheel, `n + 1`.
    pub fn order(&self) -> usize {
        self.n() + 1
    }

    pub fn hub(&self) -> VertexId {
        VertexId(self.n())
    }

    pub fn q(&self) -> ChebArg {
        q_of(self.a, self.c, self.d).expect("validated at construction")
    }

    pub fn is_complete_wheel(&self) -> bool {
        self.d == 1
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 > self.n() {
            Err(Error::IndexOutOfRange { index: v.0, order: self.order() })
        } else {
            Ok(())
        }
    }
}

/// Spoke vertices `0, d, …, (m-1)d` in ascending order.
pub fn spoke_vertices(p: &WheelParams) -> Vec<VertexId> {
    (0..p.m()).map(|k| VertexId(k * p.d())).collect()
}

/// Laplacian of the cycle `C_n` with constant conductance.
///
/// For `n = 2` both cycle edges join the same pair, so the off-diagonal entry
/// is `-2c`.
pub fn cycle_laplacian(n: usize, c: f64) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(Error::Domain(format!("a cycle needs at least 2 vertices, got {n}")));
    }
    let mut l = DenseMatrix::zeros(n, n);
    for i in 0..n {
        let j = (i + 1) % n;
        l[(i, j)] -= c;
        l[(j, i)] -= c;
        l[(i, i)] += c;
        l[(j, j)] += c;
    }
    Ok(l)
}

/// The `(n+1)×(n+1)` Laplacian `[[L + D, s], [sᵀ, m·a]]` of the wheel.
pub fn build_laplacian(p: &WheelParams) -> DenseMatrix {
    let n = p.n();
    let cycle = cycle_laplacian(n, p.c()).expect("n >= 2 for valid parameters");
    let mut l = DenseMatrix::from_fn(n + 1, n + 1, |i, j| if i < n && j < n { cycle[(i, j)] } else { 0.0 });
    for v in spoke_vertices(p) {
        let k = v.index();
        l[(k, k)] += p.a();
        l[(k, n)] -= p.a();
        l[(n, k)] -= p.a();
        l[(n, n)] += p.a();
    }
    l
}

/// Entry `(i, j)` of the Green matrix (group inverse of the Laplacian) of the
/// cycle `C_n`: `(n² - 1 - 6|i-j|(n - |i-j|)) / (12cn)`.
pub fn cycle_green_entry(n: usize, c: f64, i: VertexId, j: VertexId) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("a cycle needs at least 2 vertices, got {n}")));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Domain(format!("cycle conductance must be positive, got {c}")));
    }
    for v in [i, j] {
        if v.index() >= n {
            return Err(Error::IndexOutOfRange { index: v.index(), order: n });
        }
    }
    Ok(cycle_green_unchecked(n, c, i.index(), j.index()))
}

pub(crate) fn cycle_green_unchecked(n: usize, c: f64, i: usize, j: usize) -> f64 {
    let dist = i.abs_diff(j) as f64;
    let n = n as f64;
    (n * n - 1.0 - 6.0 * dist * (n - dist)) / (12.0 * c * n)
}

/// The full `n×n` cycle Green matrix.
pub fn cycle_green(n: usize, c: f64) -> Result<DenseMatrix> {
    cycle_green_entry(n, c, VertexId(0), VertexId(0))?;
    Ok(DenseMatrix::from_fn(n, n, |i, j| cycle_green_unchecked(n, c, i, j)))
}

/// The border vector `s = -a Σ e_spoke` of length `n`.
pub fn spoke_border(p: &WheelParams) -> Vec<f64> {
    let mut s = vec![0.0; p.n()];
    for v in spoke_vertices(p) {
        s[v.index()] = -p.a();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_pendant_hub_and_bad_conductances() {
        let err = WheelParams::new(1, 4, 1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("m > 1"));
        assert!(WheelParams::new(3, 0, 1.0, 1.0).is_err());
        assert!(WheelParams::new(3, 1, 0.0, 1.0).is_err());
        assert!(WheelParams::new(3, 1, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn complete_wheel_on_four_vertices_is_k4() {
        let l = build_laplacian(&WheelParams::new(3, 1, 1.0, 1.0).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(l[(i, j)], if i == j { 3.0 } else { -1.0 });
            }
        }
    }

    #[test]
    fn two_spokes_spacing_two() {
        let l = build_laplacian(&WheelParams::new(2, 2, 1.0, 1.0).unwrap());
        let expect = [
            [3.0, -1.0, 0.0, -1.0, -1.0],
            [-1.0, 2.0, -1.0, 0.0, 0.0],
            [0.0, -1.0, 3.0, -1.0, -1.0],
            [-1.0, 0.0, -1.0, 2.0, 0.0],
            [-1.0, 0.0, -1.0, 0.0, 2.0],
        ];
        for (i, row) in expect.iter().enumerate() {
            assert_eq!(l.row(i), row);
        }
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let p = WheelParams::new(5, 3, 0.3, 1.7).unwrap();
        let l = build_laplacian(&p);
        assert_eq!(l.asymmetry(), 0.0);
        assert!(l.row_sums().iter().all(|s| s.abs() <= 1e-12));
    }

    #[test]
    fn spokes() {
        let ids = |m, d| -> Vec<usize> {
            spoke_vertices(&WheelParams::new(m, d, 1.0, 1.0).unwrap()).iter().map(|v| v.index()).collect()
        };
        assert_eq!(ids(2, 2), vec![0, 2]);
        assert_eq!(ids(3, 1), vec![0, 1, 2]);
        assert_eq!(ids(4, 3), vec![0, 3, 6, 9]);
    }

    #[test]
    fn cycle_green_small_table() {
        let g = |i, j| cycle_green_entry(4, 1.0, VertexId(i), VertexId(j)).unwrap();
        assert_eq!(g(0, 0), 0.3125);
        assert_eq!(g(0, 1), -0.0625);
        assert_eq!(g(1, 3), -0.1875);
        assert_eq!(g(0, 0) - 2.0 * 0.0625 - 0.1875, 0.0);
        assert!(cycle_green_entry(4, 1.0, VertexId(4), VertexId(0)).is_err());
        assert!(cycle_green_entry(1, 1.0, VertexId(0), VertexId(0)).is_err());
    }
}
