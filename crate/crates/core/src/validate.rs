//! Sweep-wide cross-checks: pipeline against the dense oracle, the theorem's
//! entry formulas against the pipeline, and the metric identities.

use serde::Serialize;

use crate::closed_form::theorem_group_inverse;
use crate::errata::{reconcile, ErrataLedger, PointLabel, Selections};
use crate::error::{Error, Result};
use crate::metrics::{kirchhoff_closed, kirchhoff_from_resistances, kirchhoff_green, resistance_closed, resistance_table};
use crate::oracle::{axiom_residuals, compare, dense_group_inverse};
use crate::pipeline::assemble_unchecked;
use crate::sweep::Sweep;
use crate::wheel::{build_laplacian, VertexId, WheelParams};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Below this no comparison of computed doubles can be meaningful.
pub const RESOLUTION_FLOOR: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointCheck {
    pub params: PointLabel,
    pub n: usize,
    /// Largest of the four group-inverse axiom residuals, max-abs.
    pub axiom_residual: f64,
    pub oracle_rel_frobenius: f64,
    /// Theorem entry formulas against the pipeline; `None` when excluded.
    pub theorem_max_abs: Option<f64>,
    /// Oracle resistances against pipeline resistances.
    pub resistance_oracle_max_abs: f64,
    pub resistance_closed_max_abs: Option<f64>,
    /// `|N·trace(X) - ½ΣR|`, relative to `max(1, K)`.
    pub kirchhoff_identity_gap: f64,
    pub kirchhoff_closed_gap: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub tolerance: f64,
    pub sweep_size: usize,
    pub exit_code: i32,
    pub failures: Vec<String>,
    pub unresolved: Vec<String>,
    pub excluded_comparisons: Vec<String>,
    pub diagnostics: Vec<String>,
    pub points: Vec<PointCheck>,
    #[serde(skip)]
    pub ledger: Option<ErrataLedger>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.exit_code == 0
    }
}

fn relative(gap: f64, scale: f64) -> f64 {
    gap / scale.abs().max(1.0)
}

fn check_point(p: &WheelParams, tol: f64, sel: Option<&Selections>) -> Result<PointCheck> {
    let l = build_laplacian(p);
    let x = assemble_unchecked(p)?;
    let oracle = dense_group_inverse(&l)?;
    let axiom_residual = axiom_residuals(&l, &x)?.max();
    let oracle_rel_frobenius = compare(&x, &oracle, tol)?.rel_frobenius;

    let theorem_ok = sel.is_some_and(|s| s.block.is_some() && s.border.is_some());
    let theorem_max_abs = if theorem_ok { Some(theorem_group_inverse(p)?.max_abs_diff(&x)?) } else { None };

    let table = resistance_table(&x)?;
    let resistance_oracle_max_abs = resistance_table(&oracle)?.max_abs_diff(&table)?;
    let closed_ok = sel.is_some_and(|s| s.pair.is_some() && s.hub.is_some());
    let resistance_closed_max_abs = if closed_ok {
        let mut worst = 0.0f64;
        for i in 0..=p.n() {
            for j in i + 1..=p.n() {
                let r = resistance_closed(p, VertexId(i), VertexId(j))?;
                worst = worst.max((r - table[(i, j)]).abs());
            }
        }
        Some(worst)
    } else {
        None
    };

    let k = kirchhoff_green(&x);
    let kirchhoff_identity_gap = relative((k - kirchhoff_from_resistances(&table)).abs(), k);
    let kirchhoff_closed_gap = if sel.is_some_and(|s| s.kirchhoff.is_some()) {
        Some(relative((kirchhoff_closed(p)? - k).abs(), k))
    } else {
        None
    };

    let within = |v: f64| v <= tol;
    let passed = within(axiom_residual)
        && within(oracle_rel_frobenius)
        && theorem_max_abs.is_none_or(within)
        && within(resistance_oracle_max_abs)
        && resistance_closed_max_abs.is_none_or(within)
        && within(kirchhoff_identity_gap)
        && kirchhoff_closed_gap.is_none_or(within);

    Ok(PointCheck {
        params: PointLabel::from(p),
        n: p.n(),
        axiom_residual,
        oracle_rel_frobenius,
        theorem_max_abs,
        resistance_oracle_max_abs,
        resistance_closed_max_abs,
        kirchhoff_identity_gap,
        kirchhoff_closed_gap,
        passed,
    })
}

/// Runs every cross-check over the sweep at tolerance `tol`.
///
/// Exit code 1 if any comparison fails, else 3 if a formula is unresolved,
/// else 0.
pub fn validate(sweep: &Sweep, tol: f64) -> Result<ValidationReport> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive and finite, got {tol}")));
    }
    let mut failures = Vec::new();
    let mut diagnostics = Vec::new();
    if tol < RESOLUTION_FLOOR {
        failures.push(format!("tolerance {tol:e} is unattainable"));
        diagnostics.push(format!(
            "tolerance {tol:e} is below the floating-point resolution floor {RESOLUTION_FLOOR:e} \
             (4 ulp of 1.0); rounding alone exceeds it"
        ));
    }

    let (ledger, selections) = match reconcile(sweep) {
        Ok((ledger, sel)) => (Some(ledger), Some(sel)),
        Err(e @ (Error::AxiomViolation(_) | Error::Overflow { .. } | Error::Singular(_))) => {
            failures.push(format!("errata reconciliation aborted: {e}"));
            (None, None)
        }
        Err(e) => return Err(e),
    };

    let mut unresolved = Vec::new();
    let mut excluded = Vec::new();
    if let (Some(ledger), Some(sel)) = (&ledger, &selections) {
        unresolved = ledger.unresolved().into_iter().map(String::from).collect();
        for id in sel.disagreements() {
            failures.push(format!("{id}: sweep accepts a different reading than the library evaluates"));
        }
        if sel.block.is_none() || sel.border.is_none() {
            excluded.push("theorem entries vs pipeline".to_string());
        }
        if sel.pair.is_none() || sel.hub.is_none() {
            excluded.push("closed-form resistances vs pipeline".to_string());
        }
        if sel.kirchhoff.is_none() {
            excluded.push("closed-form Kirchhoff index vs pipeline".to_string());
        }
    }

    let mut points = Vec::with_capacity(sweep.len());
    for p in sweep.points() {
        let check = check_point(p, tol, selections.as_ref())?;
        if !check.passed {
            failures.push(format!(
                "point m={} d={} a={} c={} fails at tolerance {tol:e}",
                p.m(),
                p.d(),
                p.a(),
                p.c()
            ));
        }
        points.push(check);
    }

    let exit_code = if !failures.is_empty() {
        1
    } else if !unresolved.is_empty() {
        3
    } else {
        0
    };
    Ok(ValidationReport {
        tolerance: tol,
        sweep_size: sweep.len(),
        exit_code,
        failures,
        unresolved,
        excluded_comparisons: excluded,
        diagnostics,
        points,
        ledger,
    })
}
