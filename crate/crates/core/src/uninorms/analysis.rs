//! Numeric verification of the uninorm axioms, power sequences along a
//! horizontal cut, and extraction of the underlying t-norm / t-conorm.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::numerics::{invert_increasing, monotone_continuity_probe, Grid, Monotonicity, Tolerances, UnitFunction1D, DEFAULT_SEED, RANDOM_TRIPLES};
use crate::uninorms::operator::{BinaryOperator, OperatorKind};
use crate::{Error, Result};

/// Result of one axiom scan: worst residual with its witness point.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomCheck {
    pub residual: f64,
    pub witness: Vec<f64>,
    pub pass: bool,
}

impl AxiomCheck {
    fn new(residual: f64, witness: Vec<f64>, tol: f64) -> Self {
        Self { residual, witness, pass: residual <= tol }
    }
}

/// Disjunctive / conjunctive classification from U(1,0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CornerClass {
    Disjunctive,
    Conjunctive,
    Neither,
}

/// Numeric verdict on the uninorm axioms.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub commutativity: AxiomCheck,
    pub associativity: AxiomCheck,
    pub monotonicity: AxiomCheck,
    pub neutral: Option<AxiomCheck>,
    pub corner_value: f64,
    pub corner_class: CornerClass,
    pub pass: bool,
}

struct Worst {
    residual: f64,
    witness: Vec<f64>,
}

impl Worst {
    fn new() -> Self {
        Self { residual: 0.0, witness: Vec::new() }
    }

    fn update(&mut self, residual: f64, witness: &[f64]) {
        if residual > self.residual {
            self.residual = residual;
            self.witness = witness.to_vec();
        }
    }

    fn into_check(self, tol: f64) -> AxiomCheck {
        AxiomCheck::new(self.residual, self.witness, tol)
    }
}

/// Checks commutativity, associativity, monotonicity and the claimed
/// neutral element of `u` on the full pair/triple product of `grid` plus
/// a fixed number of seeded pseudo-random triples, and classifies the
/// operator from U(1,0).
pub fn check_uninorm_axioms(u: &BinaryOperator, grid: &Grid, tol: &Tolerances) -> AxiomReport {
    check_uninorm_axioms_seeded(u, grid, tol, DEFAULT_SEED)
}

/// [`check_uninorm_axioms`] with an explicit seed for the random triples.
pub fn check_uninorm_axioms_seeded(u: &BinaryOperator, grid: &Grid, tol: &Tolerances, seed: u64) -> AxiomReport {
    let pts = grid.points();
    let mut comm = Worst::new();
    let mut asso = Worst::new();
    let mut mono = Worst::new();
    let mut neut = u.neutral().map(|_| Worst::new());
    let e = u.neutral();

    for (i, &x) in pts.iter().enumerate() {
        if let (Some(e), Some(w)) = (e, neut.as_mut()) {
            w.update((u.eval(x, e) - x).abs(), &[x]);
        }
        for &y in &pts[i..] {
            comm.update((u.eval(x, y) - u.eval(y, x)).abs(), &[x, y]);
        }
        for w in pts.windows(2) {
            let lo = u.eval(x, w[0]);
            let hi = u.eval(x, w[1]);
            mono.update((lo - hi).max(0.0), &[x, w[0], w[1]]);
            let lo = u.eval(w[0], x);
            let hi = u.eval(w[1], x);
            mono.update((lo - hi).max(0.0), &[w[0], x, w[1]]);
        }
        for &y in pts {
            for &z in pts {
                let lhs = u.eval(x, u.eval(y, z));
                let rhs = u.eval(u.eval(x, y), z);
                asso.update((lhs - rhs).abs(), &[x, y, z]);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIPLES {
        let x: f64 = rng.gen();
        let y: f64 = rng.gen();
        let z: f64 = rng.gen();
        let lhs = u.eval(x, u.eval(y, z));
        let rhs = u.eval(u.eval(x, y), z);
        asso.update((lhs - rhs).abs(), &[x, y, z]);
        comm.update((u.eval(x, y) - u.eval(y, x)).abs(), &[x, y]);
        let (lo, hi) = if y <= z { (y, z) } else { (z, y) };
        mono.update((u.eval(x, lo) - u.eval(x, hi)).max(0.0), &[x, lo, hi]);
        if let (Some(e), Some(w)) = (e, neut.as_mut()) {
            w.update((u.eval(x, e) - x).abs(), &[x]);
        }
    }

    let corner = u.eval(1.0, 0.0);
    let corner_class = if (corner - 1.0).abs() <= tol.eq_tol {
        CornerClass::Disjunctive
    } else if corner.abs() <= tol.eq_tol {
        CornerClass::Conjunctive
    } else {
        CornerClass::Neither
    };

    let commutativity = comm.into_check(tol.eq_tol);
    let associativity = asso.into_check(tol.eq_tol);
    let monotonicity = mono.into_check(tol.eq_tol);
    let neutral = neut.map(|w| w.into_check(tol.eq_tol));
    let pass = commutativity.pass
        && associativity.pass
        && monotonicity.pass
        && neutral.as_ref().is_none_or(|c| c.pass);
    AxiomReport { commutativity, associativity, monotonicity, neutral, corner_value: corner, corner_class, pass }
}

/// Forward and backward powers of a point under a uninorm, together with
/// estimates of their limits.
#[derive(Debug, Clone, Serialize)]
pub struct PowerSequence {
    pub base: f64,
    pub neutral: f64,
    /// x^(n) = U(x, x^(n-1)) for n = 1..=K, starting from x^(0) = e.
    pub forward: Vec<f64>,
    /// x^(-n) for n = 1..=K, built from the partner y with U(x,y) = e.
    pub backward: Vec<f64>,
    /// Worst residual of U(x^(n), x^(-n)) = e over the computed range.
    pub pairing_residual: f64,
    pub a_x: f64,
    pub d_x: f64,
    pub a_converged: bool,
    pub d_converged: bool,
}

/// Iterates the powers of `x` under `u` and locates the partner point by
/// bisecting the cut U(x, .). Fails with [`Error::NoInverse`] when the
/// cut never attains the neutral element.
pub fn power_sequence(u: &BinaryOperator, x: f64, k: usize, tol: &Tolerances) -> Result<PowerSequence> {
    if k == 0 {
        return Err(Error::InvalidArgument("power sequence needs K >= 1".into()));
    }
    let e = u
        .neutral()
        .ok_or_else(|| Error::InvalidArgument(format!("`{}` has no claimed neutral element", u.name())))?;
    if x == e {
        return Err(Error::InvalidArgument("power sequence base must differ from the neutral element".into()));
    }

    let mut forward = Vec::with_capacity(k);
    let mut cur = e;
    for _ in 0..k {
        cur = u.eval(x, cur);
        forward.push(cur);
    }

    let y = invert_increasing(|t| u.eval(x, t), e, 0.0, 1.0);
    let attained = (u.eval(x, y) - e).abs();
    if attained > tol.eq_tol {
        return Err(Error::NoInverse(format!(
            "cut U({x}, .) does not attain the neutral element {e} (best residual {attained:.3e})"
        )));
    }

    let mut backward = Vec::with_capacity(k);
    let mut cur = e;
    for _ in 0..k {
        cur = u.eval(y, cur);
        backward.push(cur);
    }

    let mut pairing_residual: f64 = 0.0;
    for i in 0..k {
        pairing_residual = pairing_residual.max((u.eval(forward[i], backward[i]) - e).abs());
    }

    let a_converged = k >= 2 && (forward[k - 1] - forward[k - 2]).abs() < 1e-15;
    let d_converged = k >= 2 && (backward[k - 1] - backward[k - 2]).abs() < 1e-15;
    Ok(PowerSequence {
        base: x,
        neutral: e,
        a_x: forward[k - 1],
        d_x: backward[k - 1],
        forward,
        backward,
        pairing_residual,
        a_converged,
        d_converged,
    })
}

/// One persistent jump found while probing an operator along grid lines.
#[derive(Debug, Clone, Serialize)]
pub struct LineWitness {
    /// The fixed coordinate of the probed line.
    pub line: f64,
    pub location: f64,
    pub jump: f64,
}

/// The underlying t-norm and t-conorm of a proper uninorm, each tagged
/// with a continuity verdict from probing along grid lines.
#[derive(Debug)]
pub struct UnderlyingOps {
    pub t_norm: BinaryOperator,
    pub t_conorm: BinaryOperator,
    pub t_norm_continuous: bool,
    pub t_conorm_continuous: bool,
    pub t_norm_witnesses: Vec<LineWitness>,
    pub t_conorm_witnesses: Vec<LineWitness>,
}

/// Rescales U restricted to `[0,e]^2` and `[e,1]^2` back to the unit square.
pub fn underlying_ops(u: &BinaryOperator, grid: &Grid, tol: &Tolerances) -> Result<UnderlyingOps> {
    let e = u
        .neutral()
        .ok_or_else(|| Error::InvalidArgument(format!("`{}` has no claimed neutral element", u.name())))?;
    if !(0.0 < e && e < 1.0) {
        return Err(Error::InvalidArgument(format!("underlying functions need a proper neutral element, got {e}")));
    }

    let ut = u.clone();
    let t_norm = BinaryOperator::new(format!("underlying-t({})", u.name()), OperatorKind::TNorm, move |x, y| {
        (ut.eval(e * x, e * y) / e).clamp(0.0, 1.0)
    })
    .with_neutral(1.0);
    let us = u.clone();
    let t_conorm = BinaryOperator::new(format!("underlying-s({})", u.name()), OperatorKind::TConorm, move |x, y| {
        ((us.eval(e + (1.0 - e) * x, e + (1.0 - e) * y) - e) / (1.0 - e)).clamp(0.0, 1.0)
    })
    .with_neutral(0.0);

    let probe_lines = |op: &BinaryOperator| -> Result<(bool, Vec<LineWitness>)> {
        let mut witnesses = Vec::new();
        for &line in grid.points() {
            let op = op.clone();
            let f = UnitFunction1D::new("line-cut", Monotonicity::Increasing, move |t| op.eval(line, t));
            let verdict = monotone_continuity_probe(&f, grid, tol)?;
            for (loc, jump) in verdict.witnesses {
                if witnesses.len() < 64 {
                    witnesses.push(LineWitness { line, location: loc, jump });
                }
            }
        }
        Ok((witnesses.is_empty(), witnesses))
    };

    let (t_cont, t_wit) = probe_lines(&t_norm)?;
    let (s_cont, s_wit) = probe_lines(&t_conorm)?;
    Ok(UnderlyingOps {
        t_norm,
        t_conorm,
        t_norm_continuous: t_cont,
        t_conorm_continuous: s_cont,
        t_norm_witnesses: t_wit,
        t_conorm_witnesses: s_wit,
    })
}
