//! Horizontal-cut scanning, extraction of alternative (U*, N*)
//! representations of an implication, uniqueness verdicts, operator
//! equality and coincidence-region checks.
//!
//! A representation of I as I(x,y) = U*(N*(x), y) with a continuous N*
//! exists exactly at those alpha where the horizontal cut I(., alpha) is
//! a continuous fuzzy negation; then N* is that cut and U* is rebuilt
//! through the modified pseudo-inverse. For a uninorm the matching
//! condition is a continuous increasing cut with full range `[0,1]` at
//! some alpha different from the neutral element.

use serde::Serialize;

use crate::negations::{modified_pseudo_inverse, negation_from_cut, Negation};
use crate::numerics::{monotone_continuity_probe, uniform_grid, ContinuityVerdict, Grid, Monotonicity, Tolerances, UnitFunction1D};
use crate::uninorms::{check_uninorm_axioms, BinaryOperator, OperatorKind};
use crate::{Error, Result};

/// Which validity predicate a horizontal cut is held to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CutRole {
    /// Increasing, continuous, endpoints 0 and 1.
    UninormCut,
    /// Decreasing, continuous, endpoints 1 and 0 (a continuous negation).
    ImplicationCut,
}

impl std::fmt::Display for CutRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CutRole::UninormCut => f.write_str("uninorm-cut"),
            CutRole::ImplicationCut => f.write_str("implication-cut"),
        }
    }
}

/// Verdict for one horizontal cut.
#[derive(Debug, Clone, Serialize)]
pub struct CutReport {
    pub alpha: f64,
    pub role: CutRole,
    pub monotone_ok: bool,
    pub continuity: ContinuityVerdict,
    pub endpoint_low: f64,
    pub endpoint_high: f64,
    pub valid: bool,
}

/// Scans the horizontal cuts of `op` at the given alphas.
///
/// Endpoint equality is required within `exact_tol`, not `eq_tol`: an
/// endpoint failure is structural, and a looser tolerance would admit
/// false representations.
pub fn scan_cuts(op: &BinaryOperator, role: CutRole, alphas: &[f64], grid: &Grid, tol: &Tolerances) -> Result<Vec<CutReport>> {
    for &alpha in alphas {
        let ok = match role {
            CutRole::UninormCut => 0.0 < alpha && alpha < 1.0,
            CutRole::ImplicationCut => (0.0..1.0).contains(&alpha),
        };
        if !ok {
            return Err(Error::InvalidArgument(format!("alpha {alpha} is outside the admissible range for {role}")));
        }
    }
    let mut sorted: Vec<f64> = alphas.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    sorted.dedup();

    let mut reports = Vec::with_capacity(sorted.len());
    for alpha in sorted {
        reports.push(scan_one_cut(op, role, alpha, grid, tol)?);
    }
    Ok(reports)
}

fn scan_one_cut(op: &BinaryOperator, role: CutRole, alpha: f64, grid: &Grid, tol: &Tolerances) -> Result<CutReport> {
    let direction = match role {
        CutRole::UninormCut => Monotonicity::Increasing,
        CutRole::ImplicationCut => Monotonicity::Decreasing,
    };
    let o = op.clone();
    let cut = UnitFunction1D::new(format!("cut({},{alpha})", op.name()), direction, move |t| o.eval(t, alpha));

    let pts = grid.points();
    let mut mono_defect: f64 = 0.0;
    let mut prev = cut.eval(pts[0]);
    for &t in &pts[1..] {
        let v = cut.eval(t);
        let step = match direction {
            Monotonicity::Increasing => prev - v,
            Monotonicity::Decreasing => v - prev,
        };
        mono_defect = mono_defect.max(step);
        prev = v;
    }
    let monotone_ok = mono_defect <= tol.eq_tol;

    let continuity = monotone_continuity_probe(&cut, grid, tol)?;
    let (lo_want, hi_want) = match role {
        CutRole::UninormCut => (0.0, 1.0),
        CutRole::ImplicationCut => (1.0, 0.0),
    };
    let endpoints_ok = (continuity.endpoint_low - lo_want).abs() <= tol.exact_tol
        && (continuity.endpoint_high - hi_want).abs() <= tol.exact_tol;
    let valid = monotone_ok && continuity.continuous && endpoints_ok;
    Ok(CutReport {
        alpha,
        role,
        monotone_ok,
        endpoint_low: continuity.endpoint_low,
        endpoint_high: continuity.endpoint_high,
        continuity,
        valid,
    })
}

/// One extracted (alpha, N*, U*) representation with its residuals.
#[derive(Debug, Clone)]
pub struct RepresentationRecord {
    pub alpha: f64,
    pub n_star: Negation,
    pub u_star: BinaryOperator,
    /// max over the grid of |U*(N*(x), y) - I(x,y)|.
    pub reconstruction_residual: f64,
    /// Worst axiom residual of U* (commutativity, associativity,
    /// monotonicity, neutral element at alpha).
    pub u_star_axiom_residual: f64,
}

/// Extracts the representation of `i` at `alpha`: N* is the horizontal
/// cut and U*(x,y) = I(R_{N*}(x), y).
///
/// The cut is re-verified first rather than trusting the caller; an
/// invalid cut is a precondition violation.
pub fn extract_representation(i: &BinaryOperator, alpha: f64, grid: &Grid, tol: &Tolerances) -> Result<RepresentationRecord> {
    let report = scan_one_cut(i, CutRole::ImplicationCut, alpha, grid, tol)?;
    if !report.valid {
        return Err(Error::Precondition(format!(
            "cut of `{}` at alpha = {alpha} is not a continuous negation (monotone: {}, continuous: {}, endpoints: {} / {})",
            i.name(),
            report.monotone_ok,
            report.continuity.continuous,
            report.endpoint_low,
            report.endpoint_high,
        )));
    }

    let pts = grid.points();
    let mut strictly = true;
    let mut prev = i.eval(pts[0], alpha);
    for &x in &pts[1..] {
        let v = i.eval(x, alpha);
        if (prev - v).abs() <= tol.eq_tol {
            strictly = false;
        }
        prev = v;
    }
    let n_star = negation_from_cut(i, alpha, true, strictly);
    let pseudo = modified_pseudo_inverse(&n_star);

    let iop = i.clone();
    let pinv = pseudo.clone();
    let u_star = BinaryOperator::new(format!("U*({},{alpha})", i.name()), OperatorKind::Uninorm, move |x, y| {
        iop.eval(pinv.eval(x), y)
    })
    .with_neutral(alpha);
    let u_star = match classify_corner(&u_star, tol) {
        Some(d) => u_star.with_disjunctive(d),
        None => u_star,
    };

    // U*(N*(x), y) vs I(x, y); the pseudo-inverse of the cut value is
    // hoisted out of the inner loop (one bisection per x, not per pair).
    let mut reconstruction_residual: f64 = 0.0;
    for &x in pts {
        let rx = pseudo.eval(n_star.eval(x));
        for &y in pts {
            reconstruction_residual = reconstruction_residual.max((i.eval(rx, y) - i.eval(x, y)).abs());
        }
    }

    // A coarse axiom sweep; the residual is recorded on the record, and
    // dedicated tests run the full policy grid.
    let axiom_grid = uniform_grid(16)?;
    let axioms = check_uninorm_axioms(&u_star, &axiom_grid, tol);
    let mut u_star_axiom_residual = axioms
        .commutativity
        .residual
        .max(axioms.associativity.residual)
        .max(axioms.monotonicity.residual);
    if let Some(n) = &axioms.neutral {
        u_star_axiom_residual = u_star_axiom_residual.max(n.residual);
    }

    Ok(RepresentationRecord { alpha, n_star, u_star, reconstruction_residual, u_star_axiom_residual })
}

fn classify_corner(u: &BinaryOperator, tol: &Tolerances) -> Option<bool> {
    let v = u.eval(1.0, 0.0);
    if (v - 1.0).abs() <= tol.eq_tol {
        Some(true)
    } else if v.abs() <= tol.eq_tol {
        Some(false)
    } else {
        None
    }
}

/// Verdict on the uniqueness of the (U,N)-representation generated by a
/// uninorm: unique iff no alpha different from the neutral element has a
/// valid full-range increasing cut.
#[derive(Debug, Clone, Serialize)]
pub struct UniquenessVerdict {
    pub unique: bool,
    pub neutral: f64,
    /// The alphas whose cuts certify a second representation.
    pub witnesses: Vec<f64>,
    pub scanned: usize,
}

/// Scans the uninorm cuts of `u` at `alphas` (the neutral element is
/// skipped) and reports the witnesses of non-uniqueness.
pub fn uniqueness_verdict(u: &BinaryOperator, grid: &Grid, alphas: &[f64], tol: &Tolerances) -> Result<UniquenessVerdict> {
    let e = u
        .neutral()
        .ok_or_else(|| Error::InvalidArgument(format!("`{}` has no claimed neutral element", u.name())))?;
    let candidates: Vec<f64> = alphas.iter().copied().filter(|&a| (a - e).abs() > tol.eq_tol).collect();
    let reports = scan_cuts(u, CutRole::UninormCut, &candidates, grid, tol)?;
    let witnesses: Vec<f64> = reports.iter().filter(|r| r.valid).map(|r| r.alpha).collect();
    Ok(UniquenessVerdict { unique: witnesses.is_empty(), neutral: e, scanned: candidates.len(), witnesses })
}

/// The default alpha candidates: the 99-point uniform interior grid plus
/// the operator's claimed neutral element plus any declared special
/// points.
pub fn default_alpha_candidates(u: &BinaryOperator, extras: &[f64]) -> Vec<f64> {
    let mut alphas: Vec<f64> = (1..100).map(|k| k as f64 / 100.0).collect();
    if let Some(e) = u.neutral() {
        if 0.0 < e && e < 1.0 {
            alphas.push(e);
        }
    }
    alphas.extend(extras.iter().copied().filter(|&a| 0.0 < a && a < 1.0));
    alphas.sort_by(|a, b| a.total_cmp(b));
    alphas.dedup();
    alphas
}

/// Max-difference record between two operators.
#[derive(Debug, Clone, Serialize)]
pub struct EqualityRecord {
    pub max_residual: f64,
    pub witness: Option<(f64, f64)>,
    pub checked: usize,
    pub excluded: usize,
}

/// max |A - B| over the grid square, skipping the excluded points.
pub fn operators_equal(
    a: &BinaryOperator,
    b: &BinaryOperator,
    grid: &Grid,
    tol: &Tolerances,
    exclusions: &[(f64, f64)],
) -> EqualityRecord {
    let pts = grid.points();
    let mut max_residual: f64 = 0.0;
    let mut witness = None;
    let mut checked = 0usize;
    let mut excluded = 0usize;
    for &x in pts {
        for &y in pts {
            if exclusions.iter().any(|&(ex, ey)| (x - ex).abs() <= tol.exact_tol && (y - ey).abs() <= tol.exact_tol) {
                excluded += 1;
                continue;
            }
            checked += 1;
            let d = (a.eval(x, y) - b.eval(x, y)).abs();
            if d > max_residual {
                max_residual = d;
                witness = Some((x, y));
            }
        }
    }
    EqualityRecord { max_residual, witness, checked, excluded }
}

/// Agreement on the frame `([0,a] u [d,1])^2` together with a disagreement
/// certificate inside the open band square when one exists.
#[derive(Debug, Clone, Serialize)]
pub struct CoincidenceReport {
    pub frame_residual: f64,
    pub frame_witness: Option<(f64, f64)>,
    pub interior_max_difference: f64,
    pub interior_witness: Option<(f64, f64)>,
    pub interior_disagreement: bool,
}

/// Checks |U1 - U2| restricted to `([0,a] u [d,1])^2` and searches
/// `]a,d[^2` for a disagreement point.
pub fn coincidence_region_check(
    u1: &BinaryOperator,
    u2: &BinaryOperator,
    a: f64,
    d: f64,
    grid: &Grid,
    tol: &Tolerances,
) -> Result<CoincidenceReport> {
    if a.is_nan() || d.is_nan() || a >= d {
        return Err(Error::InvalidArgument(format!("coincidence region needs a < d, got a = {a}, d = {d}")));
    }
    let outside = |v: f64| v <= a || v >= d;
    let pts = grid.points();
    let mut frame_residual: f64 = 0.0;
    let mut frame_witness = None;
    let mut interior_max: f64 = 0.0;
    let mut interior_witness = None;
    for &x in pts {
        for &y in pts {
            let diff = (u1.eval(x, y) - u2.eval(x, y)).abs();
            if outside(x) && outside(y) {
                if diff > frame_residual {
                    frame_residual = diff;
                    frame_witness = Some((x, y));
                }
            } else if x > a && x < d && y > a && y < d && diff > interior_max {
                interior_max = diff;
                interior_witness = Some((x, y));
            }
        }
    }
    Ok(CoincidenceReport {
        frame_residual,
        frame_witness,
        interior_max_difference: interior_max,
        interior_witness,
        interior_disagreement: interior_max > tol.eq_tol,
    })
}
