//! Independent ground truth built only from dense linear algebra.
//!
//! Nothing here evaluates a Chebyshev polynomial or a closed-form entry: the
//! group inverse comes from rank completion `(L + J/N)⁻¹ - J/N`, and the
//! intermediate matrices of the Schur-complement route are formed by explicit
//! products.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::wheel::{cycle_green, spoke_border, spoke_vertices, WheelParams};

/// Relative pivot size below which a matrix is treated as singular.
pub const PIVOT_THRESHOLD: f64 = 1e-13;

/// LU factorization with partial pivoting, `P·A = L·U` packed in place.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DenseMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension(format!(
                "LU needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let floor = PIVOT_THRESHOLD * a.max_abs();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let (pivot_row, pivot) = (col..n)
                .map(|r| (r, lu[(r, col)].abs()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot > floor) || pivot == 0.0 {
                return Err(Error::Singular(format!(
                    "pivot {pivot:e} in column {col} is below {floor:e}"
                )));
            }
            if pivot_row != col {
                perm.swap(pivot_row, col);
                for j in 0..n {
                    let tmp = lu[(col, j)];
                    lu[(col, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
            }
            let diag = lu[(col, col)];
            for r in col + 1..n {
                let factor = lu[(r, col)] / diag;
                lu[(r, col)] = factor;
                if factor != 0.0 {
                    for j in col + 1..n {
                        let u = lu[(col, j)];
                        lu[(r, j)] -= factor * u;
                    }
                }
            }
        }
        Ok(LuFactors { lu, perm })
    }

    pub fn order(&self) -> usize {
        self.lu.rows()
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.order();
        if b.len() != n {
            return Err(Error::Dimension(format!("right-hand side has length {}, expected {n}", b.len())));
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.lu[(i, i)];
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        let n = self.order();
        let mut inv = DenseMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.solve(&e)?;
            e[j] = 0.0;
            for (i, v) in col.into_iter().enumerate() {
                inv[(i, j)] = v;
            }
        }
        Ok(inv)
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve_dense(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    LuFactors::new(a)?.solve(b)
}

pub fn invert_dense(a: &DenseMatrix) -> Result<DenseMatrix> {
    LuFactors::new(a)?.inverse()
}

fn is_connected(l: &DenseMatrix) -> bool {
    let n = l.rows();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && l[(i, j)] != 0.0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Group inverse of the Laplacian of a connected network by rank completion,
/// `(L + J/N)⁻¹ - J/N`.
pub fn dense_group_inverse(l: &DenseMatrix) -> Result<DenseMatrix> {
    if !l.is_square() || l.rows() == 0 {
        return Err(Error::Precondition(format!(
            "expected a nonempty square Laplacian, got {}x{}",
            l.rows(),
            l.cols()
        )));
    }
    let n = l.rows();
    let scale = l.max_abs().max(1.0);
    if l.asymmetry() > 1e-10 * scale {
        return Err(Error::Precondition("Laplacian is not symmetric".into()));
    }
    if l.row_sums().iter().any(|s| s.abs() > 1e-10 * scale) {
        return Err(Error::Precondition("Laplacian rows do not sum to zero".into()));
    }
    if !is_connected(l) {
        return Err(Error::Precondition("network is not connected".into()));
    }
    let shift = 1.0 / n as f64;
    let completed = DenseMatrix::from_fn(n, n, |i, j| l[(i, j)] + shift);
    let inv = invert_dense(&completed)?;
    Ok(DenseMatrix::from_fn(n, n, |i, j| inv[(i, j)] - shift))
}

/// Residuals of the group-inverse axioms for a candidate `X` of `L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxiomResiduals {
    /// `max |X L X - X|`
    pub outer: f64,
    /// `max |L X L - L|`
    pub inner: f64,
    /// `max |X L - L X|`
    pub commute: f64,
    /// `max |X 1|`
    pub kernel: f64,
}

impl AxiomResiduals {
    pub fn max(&self) -> f64 {
        self.outer.max(self.inner).max(self.commute).max(self.kernel)
    }
}

pub fn axiom_residuals(l: &DenseMatrix, x: &DenseMatrix) -> Result<AxiomResiduals> {
    let xl = x.matmul(l)?;
    let lx = l.matmul(x)?;
    Ok(AxiomResiduals {
        outer: xl.matmul(x)?.max_abs_diff(x)?,
        inner: lx.matmul(l)?.max_abs_diff(l)?,
        commute: xl.max_abs_diff(&lx)?,
        kernel: x.row_sums().iter().fold(0.0, |m, s| m.max(s.abs())),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub max_abs_diff: f64,
    pub rel_frobenius: f64,
    pub argmax_location: (usize, usize),
    pub passed: bool,
    pub tolerance: f64,
}

/// Compares `a` against the reference `b`; passes when the relative
/// Frobenius distance is within `tol`.
pub fn compare(a: &DenseMatrix, b: &DenseMatrix, tol: f64) -> Result<ComparisonReport> {
    let diff = a.sub(b)?;
    let mut argmax = (0, 0);
    let mut max_abs: f64 = 0.0;
    for i in 0..diff.rows() {
        for j in 0..diff.cols() {
            let v = diff[(i, j)].abs();
            if v > max_abs || v.is_nan() {
                max_abs = v;
                argmax = (i, j);
            }
        }
    }
    let denom = b.frobenius();
    let rel = if denom > 0.0 { diff.frobenius() / denom } else { diff.frobenius() };
    Ok(ComparisonReport {
        max_abs_diff: max_abs,
        rel_frobenius: rel,
        argmax_location: argmax,
        passed: rel <= tol,
        tolerance: tol,
    })
}

/// Every intermediate matrix of the Schur-complement route, formed by dense
/// products from the cycle Green matrix.
#[derive(Debug, Clone)]
pub struct DenseReference {
    /// Cycle Green matrix `G`.
    pub g: DenseMatrix,
    /// `G_R`, spoke submatrix of `G - (n²-1)/(12cn) J`.
    pub reduced_green: DenseMatrix,
    pub reduced_green_inverse: DenseMatrix,
    /// `Π_R Π_Rᵀ = (a/m)(mI - J)`.
    pub reduced_dipoles: DenseMatrix,
    /// `(G_R⁻¹ + Π_R Π_Rᵀ)⁻¹`
    pub mr: DenseMatrix,
    pub f: DenseMatrix,
    pub h: DenseMatrix,
    pub k: DenseMatrix,
    pub m: DenseMatrix,
    /// `G s`
    pub gs: Vec<f64>,
    pub s: Vec<f64>,
}

impl DenseReference {
    pub fn new(p: &WheelParams) -> Result<Self> {
        let n = p.n();
        let m = p.m();
        let c = p.c();
        let g = cycle_green(n, c)?;
        let spokes: Vec<usize> = spoke_vertices(p).iter().map(|v| v.index()).collect();
        let nf = n as f64;
        let shift = (nf * nf - 1.0) / (12.0 * c * nf);
        let reduced_green = DenseMatrix::from_fn(m, m, |i, j| g[(spokes[i], spokes[j])] - shift);
        let reduced_green_inverse = invert_dense(&reduced_green)?;
        let w = p.a() / m as f64;
        let reduced_dipoles =
            DenseMatrix::from_fn(m, m, |i, j| w * (if i == j { m as f64 } else { 0.0 } - 1.0));
        let mr = invert_dense(&reduced_green_inverse.add(&reduced_dipoles)?)?;
        let fr = reduced_dipoles.sub(&reduced_dipoles.matmul(&mr)?.matmul(&reduced_dipoles)?)?;
        let mut f = DenseMatrix::zeros(n, n);
        for (r, &i) in spokes.iter().enumerate() {
            for (s, &j) in spokes.iter().enumerate() {
                f[(i, j)] = fr[(r, s)];
            }
        }
        let h = g.matmul(&f)?;
        let k = h.matmul(&g)?;
        let mm = g.sub(&k)?;
        let s = spoke_border(p);
        let gs = g.matvec(&s)?;
        Ok(DenseReference {
            g,
            reduced_green,
            reduced_green_inverse,
            reduced_dipoles,
            mr,
            f,
            h,
            k,
            m: mm,
            gs,
            s,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wheel::{build_laplacian, cycle_laplacian};

    #[test]
    fn identity_and_diagonal_solves() {
        let b = [3.0, -1.0, 2.5];
        assert_eq!(solve_dense(&DenseMatrix::identity(3), &b).unwrap(), b.to_vec());
        let a = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
        assert_eq!(solve_dense(&a, &[2.0, 8.0]).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(solve_dense(&a, &[2.0, 3.0]).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let l = cycle_laplacian(5, 1.0).unwrap();
        assert!(matches!(solve_dense(&l, &[0.0; 5]), Err(Error::Singular(_))));
        assert!(matches!(
            solve_dense(&DenseMatrix::identity(2), &[1.0]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn well_conditioned_random_system() {
        // Deterministic LCG; diagonally dominant so the system is well posed.
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let n = 50;
        let a = DenseMatrix::from_fn(n, n, |i, j| next() + if i == j { n as f64 } else { 0.0 });
        let b: Vec<f64> = (0..n).map(|_| next()).collect();
        let x = solve_dense(&a, &b).unwrap();
        let r = a.matvec(&x).unwrap();
        let resid = r.iter().zip(&b).fold(0.0f64, |m, (u, v)| m.max((u - v).abs()));
        assert!(resid <= 1e-9, "residual {resid}");
    }

    #[test]
    fn complete_graph_group_inverse() {
        let p = WheelParams::new(3, 1, 1.0, 1.0).unwrap();
        let x = dense_group_inverse(&build_laplacian(&p)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 3.0 / 16.0 } else { -1.0 / 16.0 };
                assert!((x[(i, j)] - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn cycle_group_inverse_matches_closed_form() {
        let x = dense_group_inverse(&cycle_laplacian(4, 1.0).unwrap()).unwrap();
        let g = cycle_green(4, 1.0).unwrap();
        assert!(x.max_abs_diff(&g).unwrap() < 1e-14);
        assert!((x[(0, 0)] - 0.3125).abs() < 1e-14);
    }

    #[test]
    fn wheel_hub_diagonal() {
        let p = WheelParams::new(2, 2, 1.0, 1.0).unwrap();
        let l = build_laplacian(&p);
        let x = dense_group_inverse(&l).unwrap();
        assert!((x[(4, 4)] - 0.36).abs() < 1e-14);
        assert!(axiom_residuals(&l, &x).unwrap().max() < 1e-12);
    }

    #[test]
    fn rejects_non_laplacians() {
        let mut l = cycle_laplacian(4, 1.0).unwrap();
        l[(0, 1)] = -2.0;
        assert!(matches!(dense_group_inverse(&l), Err(Error::Precondition(_))));
        let two_components = DenseMatrix::from_rows(&[
            vec![1.0, -1.0, 0.0, 0.0],
            vec![-1.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, -1.0],
            vec![0.0, 0.0, -1.0, 1.0],
        ])
        .unwrap();
        assert!(matches!(dense_group_inverse(&two_components), Err(Error::Precondition(_))));
    }

    #[test]
    fn comparison_report() {
        let a = DenseMatrix::from_fn(3, 3, |i, j| (i * 3 + j) as f64);
        let same = compare(&a, &a, 1e-12).unwrap();
        assert_eq!(same.max_abs_diff, 0.0);
        assert!(same.passed);
        let mut b = a.clone();
        b[(2, 1)] += 1e-3;
        let r = compare(&b, &a, 1e-6).unwrap();
        assert!(!r.passed);
        assert_eq!(r.argmax_location, (2, 1));
        assert!(compare(&a, &DenseMatrix::zeros(2, 2), 1.0).is_err());
    }
}
