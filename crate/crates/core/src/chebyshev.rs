//! Chebyshev polynomials of the first (`T`), second (`U`) and third (`V`)
//! kinds, evaluated by forward three-term recurrence.
//!
//! Every entry of the wheel's Green matrix is a rational expression in
//! `T_m(q)`, `U_k(q)` and `V_k(q)` at the single argument
//! `q = a·d/(2c) + 1`. For `q > 1` these grow geometrically in `k`, so every
//! recurrence step is checked against [`OVERFLOW_LIMIT`] and an
//! [`Error::Overflow`] is reported instead of letting infinities through.

use crate::error::{Error, Result};

/// Largest magnitude a recurrence value may reach.
pub const OVERFLOW_LIMIT: f64 = 1e300;

/// The common argument `q` of every Chebyshev factor in the wheel formulas.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ChebArg(f64);

impl ChebArg {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() {
            return Err(Error::Domain(format!("Chebyshev argument must be finite, got {q}")));
        }
        Ok(ChebArg(q))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `q = a·d/(2c) + 1`.
pub fn q_of(a: f64, c: f64, d: usize) -> Result<ChebArg> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Domain(format!("conductance a must be positive, got {a}")));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Domain(format!("conductance c must be positive, got {c}")));
    }
    if d < 1 {
        return Err(Error::Domain("spoke spacing d must be at least 1".into()));
    }
    ChebArg::new(a * d as f64 / (2.0 * c) + 1.0)
}

fn check(kind: char, index: i64, x: f64, value: f64) -> Result<f64> {
    if value.is_finite() && value.abs() <= OVERFLOW_LIMIT {
        Ok(value)
    } else {
        Err(Error::Overflow { kind, index, x })
    }
}

fn check_arg(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("Chebyshev argument must be finite, got {x}")))
    }
}

/// First kind: `T_0 = 1`, `T_1 = x`, `T_k = 2x·T_{k-1} - T_{k-2}`.
pub fn cheb_t(k: usize, x: f64) -> Result<f64> {
    check_arg(x)?;
    let (mut prev, mut cur) = (1.0, x);
    if k == 0 {
        return Ok(prev);
    }
    check('T', 1, x, cur)?;
    for j in 2..=k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = check('T', j as i64, x, next)?;
    }
    Ok(cur)
}

/// Second kind, defined from `k = -1`: `U_{-1} = 0`, `U_0 = 1`,
/// `U_k = 2x·U_{k-1} - U_{k-2}`.
pub fn cheb_u(k: i64, x: f64) -> Result<f64> {
    check_arg(x)?;
    if k < -1 {
        return Err(Error::Domain(format!("U_k is defined for k >= -1, got k = {k}")));
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    if k == -1 {
        return Ok(prev);
    }
    for j in 1..=k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = check('U', j, x, next)?;
    }
    Ok(cur)
}

/// Third kind, `V_k = U_k - U_{k-1}`.
pub fn cheb_v(k: usize, x: f64) -> Result<f64> {
    let k = k as i64;
    let v = cheb_u(k, x)? - cheb_u(k - 1, x)?;
    check('V', k, x, v)
}

/// Precomputed `T_m`, `U_{-1..=max}` and `V_{0..=max}` at one argument.
///
/// The wheel formulas look up a handful of indices per entry; building the
/// table once per parameter point keeps assembly linear in the number of
/// entries.
#[derive(Debug, Clone)]
pub struct ChebTable {
    x: f64,
    t_top: f64,
    top: usize,
    /// `u[k + 1] = U_k`
    u: Vec<f64>,
}

impl ChebTable {
    /// Table holding `T_top` and `U_k`, `V_k` for every `k <= top`.
    pub fn new(arg: ChebArg, top: usize) -> Result<Self> {
        let x = arg.value();
        let mut u = Vec::with_capacity(top + 2);
        u.push(0.0);
        u.push(1.0);
        for j in 1..=top {
            let next = 2.0 * x * u[j] - u[j - 1];
            u.push(check('U', j as i64, x, next)?);
        }
        let t_top = cheb_t(top, x)?;
        Ok(ChebTable { x, t_top, top, u })
    }

    pub fn arg(&self) -> f64 {
        self.x
    }

    /// `T_top`, the only first-kind value the formulas need.
    pub fn t_top(&self) -> f64 {
        self.t_top
    }

    pub fn u(&self, k: i64) -> f64 {
        assert!(
            k >= -1 && k <= self.top as i64,
            "U index {k} outside table range -1..={}",
            self.top
        );
        self.u[(k + 1) as usize]
    }

    pub fn v(&self, k: i64) -> f64 {
        assert!(k >= 0, "V index must be nonnegative, got {k}");
        self.u(k) - self.u(k - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn first_kind_values() {
        assert_eq!(cheb_t(0, 7.3).unwrap(), 1.0);
        assert_eq!(cheb_t(3, 1.5).unwrap(), 9.0);
        assert!((9.0_f64 - (3.0 * 1.5_f64.acosh()).cosh()).abs() < 1e-12);
        assert_eq!(cheb_t(2, 2.0).unwrap(), 2.0 * 4.0 - 1.0);
    }

    #[test]
    fn second_kind_values() {
        assert_eq!(cheb_u(-1, 3.7).unwrap(), 0.0);
        assert_eq!(cheb_u(2, 1.5).unwrap(), 4.0 * 2.25 - 1.0);
        assert_eq!(cheb_u(1, 2.0).unwrap(), 4.0);
        assert!(matches!(cheb_u(-2, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn third_kind_values() {
        assert_eq!(cheb_v(0, 5.0).unwrap(), 1.0);
        assert_eq!(cheb_v(2, 1.5).unwrap(), 5.0);
        assert_eq!(cheb_v(1, 2.0).unwrap(), 3.0);
    }

    #[test]
    fn argument_from_conductances() {
        assert_eq!(q_of(1.0, 1.0, 1).unwrap().value(), 1.5);
        assert_eq!(q_of(1.0, 1.0, 2).unwrap().value(), 2.0);
        assert_eq!(q_of(2.0, 0.5, 3).unwrap().value(), 7.0);
        assert!(q_of(0.0, 1.0, 1).is_err());
        assert!(q_of(1.0, -1.0, 1).is_err());
        assert!(q_of(1.0, 1.0, 0).is_err());
    }

    #[test]
    fn overflow_is_an_error_not_infinity() {
        // U_k(1e6) ~ (2e6)^k passes 1e300 near k = 48.
        let err = cheb_u(60, 1e6).unwrap_err();
        assert!(matches!(err, Error::Overflow { kind: 'U', .. }));
        assert!(matches!(cheb_t(60, 1e6), Err(Error::Overflow { kind: 'T', .. })));
        assert!(cheb_u(40, 1e6).is_ok());
        assert!(ChebTable::new(ChebArg::new(1e6).unwrap(), 80).is_err());
    }

    #[test]
    fn table_agrees_with_direct_evaluation() {
        let table = ChebTable::new(ChebArg::new(1.7).unwrap(), 12).unwrap();
        for k in -1..=12 {
            assert_eq!(table.u(k), cheb_u(k, 1.7).unwrap());
        }
        for k in 0..=12 {
            assert!((table.v(k) - cheb_v(k as usize, 1.7).unwrap()).abs() < 1e-9);
        }
        assert_eq!(table.t_top(), cheb_t(12, 1.7).unwrap());
    }

    #[test]
    fn strictly_increasing_above_one() {
        for &x in &[1.01, 1.5, 3.0] {
            for k in 1..30usize {
                assert!(cheb_t(k + 1, x).unwrap() > cheb_t(k, x).unwrap());
                assert!(cheb_u(k as i64 + 1, x).unwrap() > cheb_u(k as i64, x).unwrap());
                assert!(cheb_v(k + 1, x).unwrap() > cheb_v(k, x).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn pell_identity(k in 1usize..=50, x in -10.0f64..10.0) {
            let t = cheb_t(k, x).unwrap();
            let u = cheb_u(k as i64 - 1, x).unwrap();
            let lhs = t * t - (x * x - 1.0) * u * u;
            let scale = (t * t).max((x * x - 1.0).abs() * u * u).max(1.0);
            prop_assert!((lhs - 1.0).abs() <= 1e-9 * scale);
        }

        #[test]
        fn cosine_form_on_unit_interval(k in 0usize..=40, x in -1.0f64..1.0) {
            let expect = (k as f64 * x.acos()).cos();
            prop_assert!((cheb_t(k, x).unwrap() - expect).abs() < 1e-9);
        }
    }
}
