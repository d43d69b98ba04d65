//! Bundled, named instantiations of the worked constructions, each
//! paired with the relations expected to hold between its operators.
//!
//! Every instance carries the builder-produced operators alongside
//! hand-coded closed-form reference evaluators, so equality relations
//! compare two independent derivations of the same object.

use serde::Serialize;

use crate::implications::{check_implication_axioms, check_property, un_implication, ImplicationProperty};
use crate::negations::{build_negation, modified_pseudo_inverse, negation_from_cut, Negation, NegationSpec};
use crate::numerics::{uniform_grid, Grid, Monotonicity, Tolerances, UnitFunction1D, DEFAULT_TRIPLE_GRID_N};
use crate::representations::{
    coincidence_region_check, default_alpha_candidates, operators_equal, scan_cuts, uniqueness_verdict, CutRole,
};
use crate::uninorms::{
    band_ordinal_sum, band_rescale, check_uninorm_axioms, conjugate_shift, drastic_band_uninorm, equf_uninorm,
    power_band_uninorm, power_point, power_sequence, representable_uninorm, BinaryOperator, GeneratorDescriptor,
    OperatorKind, OuterOps,
};
use crate::{Error, Result};

/// The seven instance names, in catalog order.
pub const CATALOG_NAMES: [&str; 7] =
    ["example1", "step-negation", "u3u4", "unique-rep", "nonc-power", "osum-nonc", "equf"];

/// A relation expected to hold within an instance, identified by the
/// names of the operators it relates.
#[derive(Debug, Clone)]
pub enum Relation {
    /// max |left - right| over the grid square (minus exclusions, or
    /// restricted to the open interior) stays within tolerance.
    Equality { left: String, right: String, exclusions: Vec<(f64, f64)>, interior_only: bool, tolerance: f64 },
    /// max |N_left - N_right| over the grid stays within tolerance.
    NegationEquality { left: String, right: String, tolerance: f64 },
    /// max |U(x,e) - x| over the grid stays within tolerance.
    NeutralElement { operator: String, neutral: f64, tolerance: f64 },
    CutValid { operator: String, role: CutRole, alpha: f64 },
    CutInvalid { operator: String, role: CutRole, alpha: f64 },
    /// Uniqueness verdict over the default alpha candidates plus the
    /// declared extras.
    Uniqueness { operator: String, expect_unique: bool, extra_alphas: Vec<f64>, min_witnesses: usize },
    /// Frame agreement on `([0,a] u [d,1])^2` plus an interior
    /// disagreement certificate.
    Coincidence { left: String, right: String, a: f64, d: f64, tolerance: f64, expect_interior_disagreement: bool },
    /// Forward/backward powers of `base` match the expected sequences.
    PowerSequence {
        operator: String,
        base: f64,
        expected_forward: Vec<f64>,
        expected_backward: Vec<f64>,
        tolerance: f64,
    },
    /// N maps each x to the paired expected value.
    NegationPowers { negation: String, pairs: Vec<(f64, f64)>, tolerance: f64 },
    /// The cut-function checks around the band square: f moves every
    /// interior point, fixes a and d exactly, and U(a,d) is a or d.
    LemmaLemNw { function: String, operator: String, a: f64, d: f64, margin: f64, inset: f64 },
}

/// Extraction round trip: the cut of `implication` at `alpha` must be a
/// valid continuous negation recovering `negation`, and the rebuilt
/// operator must recover `uninorm`, all within `tolerance` on the грид.
#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub implication: String,
    pub alpha: f64,
    pub uninorm: String,
    pub negation: String,
    pub tolerance: f64,
}

/// One named worked instance: operators plus expected relations.
pub struct CatalogInstance {
    pub name: String,
    pub description: String,
    pub uninorms: Vec<(String, BinaryOperator)>,
    pub negations: Vec<(String, Negation)>,
    pub implications: Vec<(String, BinaryOperator)>,
    pub references: Vec<(String, BinaryOperator)>,
    pub functions: Vec<(String, UnitFunction1D)>,
    pub relations: Vec<Relation>,
    pub round_trips: Vec<RoundTrip>,
    /// Pass threshold for the axiom sweeps of this instance. Most
    /// instances use the default operator-equality tolerance; the
    /// extension instance whose cut function has quadratic contact with
    /// its fixed points carries an intrinsic f64 composition error near
    /// the band edges (an intermediate landing within an ulp of the edge
    /// loses the information one association route needs), so its
    /// threshold sits above that floor.
    pub axiom_tolerance: f64,
}

impl CatalogInstance {
    /// Looks a binary operator up across uninorms, implications and
    /// references.
    pub fn operator(&self, name: &str) -> Result<&BinaryOperator> {
        self.uninorms
            .iter()
            .chain(self.implications.iter())
            .chain(self.references.iter())
            .find(|(n, _)| n == name)
            .map(|(_, op)| op)
            .ok_or_else(|| Error::NotFound(format!("operator `{name}` in instance `{}`", self.name)))
    }

    pub fn negation(&self, name: &str) -> Result<&Negation> {
        self.negations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, neg)| neg)
            .ok_or_else(|| Error::NotFound(format!("negation `{name}` in instance `{}`", self.name)))
    }

    pub fn function(&self, name: &str) -> Result<&UnitFunction1D> {
        self.functions
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| Error::NotFound(format!("function `{name}` in instance `{}`", self.name)))
    }
}

/// Outcome of one verified relation.
#[derive(Debug, Clone, Serialize)]
pub struct RelationOutcome {
    pub description: String,
    pub pass: bool,
    pub residual: f64,
    pub detail: String,
}

/// Aggregated verification result for one instance.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub name: String,
    pub pass: bool,
    pub outcomes: Vec<RelationOutcome>,
}

// ---------------------------------------------------------------------
// Instance constructors.
// ---------------------------------------------------------------------

fn ex1_u1() -> BinaryOperator {
    representable_uninorm(GeneratorDescriptor::log_ratio(1.0).expect("k = 1"), true)
}

fn ex1_u2() -> BinaryOperator {
    representable_uninorm(GeneratorDescriptor::log_ratio(3.0).expect("k = 3"), true)
}

fn ex1_u1_reference() -> BinaryOperator {
    BinaryOperator::new("ref:U1", OperatorKind::Uninorm, |x, y| {
        if (x == 0.0 && y == 1.0) || (x == 1.0 && y == 0.0) {
            return 1.0;
        }
        let num = x * y;
        let den = num + (1.0 - x) * (1.0 - y);
        num / den
    })
    .with_neutral(0.5)
    .with_disjunctive(true)
}

fn ex1_u2_reference() -> BinaryOperator {
    BinaryOperator::new("ref:U2", OperatorKind::Uninorm, |x, y| {
        if (x == 0.0 && y == 1.0) || (x == 1.0 && y == 0.0) {
            return 1.0;
        }
        let num = 3.0 * x * y;
        let den = num + (1.0 - x) * (1.0 - y);
        num / den
    })
    .with_neutral(0.25)
    .with_disjunctive(true)
}

fn ex1_implication_reference() -> BinaryOperator {
    BinaryOperator::new("ref:I", OperatorKind::Implication, |x, y| {
        if (x == 0.0 && y == 0.0) || (x == 1.0 && y == 1.0) {
            return 1.0;
        }
        let num = (1.0 - x) * y;
        let den = num + x * (1.0 - y);
        num / den
    })
}

fn example1() -> CatalogInstance {
    let u1 = ex1_u1();
    let u2 = ex1_u2();
    let n1 = build_negation(NegationSpec::Standard).expect("standard");
    let n2 = build_negation(NegationSpec::Sugeno { lambda: 2.0 }).expect("sugeno(2)");
    let i1 = un_implication(&u1, &n1).expect("uninorm kind");
    let i2 = un_implication(&u2, &n2).expect("uninorm kind");
    let corner_exclusions = vec![(0.0, 0.0), (1.0, 1.0)];
    CatalogInstance {
        name: "example1".into(),
        description: "Two representable uninorms with neutral elements 1/2 and 1/4 generating the same implication".into(),
        uninorms: vec![("U1".into(), u1), ("U2".into(), u2)],
        negations: vec![("N1".into(), n1), ("N2".into(), n2)],
        implications: vec![("I1".into(), i1), ("I2".into(), i2)],
        references: vec![
            ("ref:U1".into(), ex1_u1_reference()),
            ("ref:U2".into(), ex1_u2_reference()),
            ("ref:I".into(), ex1_implication_reference()),
        ],
        functions: vec![],
        relations: vec![
            Relation::Equality {
                left: "U1".into(),
                right: "ref:U1".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::Equality {
                left: "U2".into(),
                right: "ref:U2".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::Equality {
                left: "I1".into(),
                right: "I2".into(),
                exclusions: corner_exclusions.clone(),
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::Equality {
                left: "I1".into(),
                right: "ref:I".into(),
                exclusions: corner_exclusions,
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::NeutralElement { operator: "U1".into(), neutral: 0.5, tolerance: 1e-12 },
            Relation::NeutralElement { operator: "U2".into(), neutral: 0.25, tolerance: 1e-12 },
            Relation::Uniqueness {
                operator: "U1".into(),
                expect_unique: false,
                extra_alphas: vec![],
                min_witnesses: 98,
            },
            Relation::CutValid { operator: "U1".into(), role: CutRole::UninormCut, alpha: 0.25 },
            Relation::CutValid { operator: "U2".into(), role: CutRole::UninormCut, alpha: 0.5 },
        ],
        round_trips: vec![
            RoundTrip { implication: "I1".into(), alpha: 0.5, uninorm: "U1".into(), negation: "N1".into(), tolerance: 1e-9 },
            RoundTrip { implication: "I1".into(), alpha: 0.25, uninorm: "U2".into(), negation: "N2".into(), tolerance: 1e-9 },
        ],
        axiom_tolerance: 1e-9,
    }
}

fn step_negation_reference() -> BinaryOperator {
    BinaryOperator::new("ref:I", OperatorKind::Implication, |x, y| {
        if x == 0.0 || y == 1.0 {
            1.0
        } else if x == 1.0 {
            0.0
        } else {
            y
        }
    })
}

fn step_negation() -> CatalogInstance {
    let u1 = ex1_u1();
    let u2 = ex1_u2();
    let n1 = build_negation(NegationSpec::Step { e: 0.5 }).expect("step(1/2)");
    let n2 = build_negation(NegationSpec::Step { e: 0.25 }).expect("step(1/4)");
    let n_std = build_negation(NegationSpec::Standard).expect("standard");
    let i1 = un_implication(&u1, &n1).expect("uninorm kind");
    let i2 = un_implication(&u2, &n2).expect("uninorm kind");
    let i_rt = un_implication(&u2, &n_std).expect("uninorm kind");
    CatalogInstance {
        name: "step-negation".into(),
        description: "Step negations pinned to the neutral elements collapse both implications onto the same three-branch form".into(),
        uninorms: vec![("U1".into(), u1), ("U2".into(), u2)],
        negations: vec![("N1".into(), n1), ("N2".into(), n2), ("Nstd".into(), n_std)],
        implications: vec![("I1".into(), i1), ("I2".into(), i2), ("Irt".into(), i_rt)],
        references: vec![("ref:I".into(), step_negation_reference())],
        functions: vec![],
        relations: vec![
            Relation::Equality {
                left: "I1".into(),
                right: "ref:I".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::Equality {
                left: "I2".into(),
                right: "ref:I".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::Equality {
                left: "I1".into(),
                right: "I2".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::CutInvalid { operator: "I1".into(), role: CutRole::ImplicationCut, alpha: 0.0 },
            Relation::CutInvalid { operator: "I1".into(), role: CutRole::ImplicationCut, alpha: 0.3 },
            Relation::CutInvalid { operator: "I1".into(), role: CutRole::ImplicationCut, alpha: 0.5 },
            Relation::CutInvalid { operator: "I1".into(), role: CutRole::ImplicationCut, alpha: 0.7 },
        ],
        round_trips: vec![RoundTrip {
            implication: "Irt".into(),
            alpha: 0.25,
            uninorm: "U2".into(),
            negation: "Nstd".into(),
            tolerance: 1e-9,
        }],
        axiom_tolerance: 1e-9,
    }
}

fn u3_reference() -> BinaryOperator {
    BinaryOperator::new("ref:U3", OperatorKind::Uninorm, |x, y| {
        if x > 0.25 && x < 0.75 && y > 0.25 && y < 0.75 {
            let p = (x - 0.25) * (y - 0.25);
            let q = (0.75 - x) * (0.75 - y);
            0.25 + 0.5 * p / (p + q)
        } else if x.max(y) >= 0.75 {
            x.max(y)
        } else {
            x.min(y)
        }
    })
    .with_neutral(0.5)
    .with_disjunctive(true)
}

fn u4_reference() -> BinaryOperator {
    BinaryOperator::new("ref:U4", OperatorKind::Uninorm, |x, y| {
        if x > 0.25 && x < 0.75 && y > 0.25 && y < 0.75 {
            let p = (x - 0.25) * (y - 0.25);
            let q = (0.75 - x) * (0.75 - y);
            0.25 + 3.0 * p / (6.0 * p + 2.0 * q)
        } else if x.max(y) >= 0.75 {
            x.max(y)
        } else {
            x.min(y)
        }
    })
    .with_neutral(0.375)
    .with_disjunctive(true)
}

fn u3u4_implication_reference() -> BinaryOperator {
    BinaryOperator::new("ref:I", OperatorKind::Implication, |x, y| {
        if x > 0.25 && x < 0.75 && y > 0.25 && y < 0.75 {
            let p = (0.75 - x) * (y - 0.25);
            let q = (x - 0.25) * (0.75 - y);
            0.25 + p / (2.0 * p + 2.0 * q)
        } else if (1.0 - x).max(y) >= 0.75 {
            (1.0 - x).max(y)
        } else {
            (1.0 - x).min(y)
        }
    })
}

fn u3u4_n2_reference() -> Negation {
    let f = UnitFunction1D::new("ref:N2", Monotonicity::Decreasing, |x| {
        if x > 0.25 && x < 0.75 {
            3.0 / (16.0 * x)
        } else {
            1.0 - x
        }
    });
    Negation::new(f, true, true)
}

fn u3u4() -> CatalogInstance {
    let u3 = band_ordinal_sum(&band_rescale(&ex1_u1(), 0.25, 0.75).expect("band"), OuterOps::MinMax);
    let u4 = band_ordinal_sum(&band_rescale(&ex1_u2(), 0.25, 0.75).expect("band"), OuterOps::MinMax);
    let n1 = build_negation(NegationSpec::Standard).expect("standard");
    let i = un_implication(&u3, &n1).expect("uninorm kind");
    let n2 = negation_from_cut(&i, 0.375, true, true);
    let i4 = un_implication(&u4, &n2).expect("uninorm kind");
    let witnesses: Vec<f64> = (26..75).filter(|&k| k != 50).map(|k| k as f64 / 100.0).collect();
    CatalogInstance {
        name: "u3u4".into(),
        description: "Ordinal sums over ]1/4,3/4[ of the two representable uninorms; the cut at 3/8 exposes the second representation".into(),
        uninorms: vec![("U3".into(), u3), ("U4".into(), u4)],
        negations: vec![("N1".into(), n1), ("N2".into(), n2), ("ref:N2".into(), u3u4_n2_reference())],
        implications: vec![("I".into(), i), ("I4".into(), i4)],
        references: vec![
            ("ref:U3".into(), u3_reference()),
            ("ref:U4".into(), u4_reference()),
            ("ref:I".into(), u3u4_implication_reference()),
        ],
        functions: vec![],
        relations: vec![
            Relation::Equality {
                left: "I".into(),
                right: "I4".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::Equality {
                left: "U3".into(),
                right: "ref:U3".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::Equality {
                left: "I".into(),
                right: "ref:I".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::Equality {
                left: "U4".into(),
                right: "ref:U4".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-12,
            },
            Relation::NegationEquality { left: "N2".into(), right: "ref:N2".into(), tolerance: 1e-12 },
            Relation::NeutralElement { operator: "U3".into(), neutral: 0.5, tolerance: 1e-12 },
            Relation::NeutralElement { operator: "U4".into(), neutral: 0.375, tolerance: 1e-12 },
            Relation::CutValid { operator: "I".into(), role: CutRole::ImplicationCut, alpha: 0.375 },
            Relation::CutValid { operator: "U3".into(), role: CutRole::UninormCut, alpha: 0.375 },
            Relation::CutValid { operator: "U4".into(), role: CutRole::UninormCut, alpha: 0.5 },
            Relation::Coincidence {
                left: "U3".into(),
                right: "U4".into(),
                a: 0.25,
                d: 0.75,
                tolerance: 1e-12,
                expect_interior_disagreement: true,
            },
            Relation::Uniqueness {
                operator: "U3".into(),
                expect_unique: false,
                extra_alphas: vec![0.375],
                min_witnesses: witnesses.len(),
            },
        ],
        round_trips: vec![
            RoundTrip { implication: "I".into(), alpha: 0.5, uninorm: "U3".into(), negation: "N1".into(), tolerance: 1e-9 },
            RoundTrip { implication: "I".into(), alpha: 0.375, uninorm: "U4".into(), negation: "N2".into(), tolerance: 1e-9 },
        ],
        axiom_tolerance: 1e-9,
    }
}

fn unique_rep() -> CatalogInstance {
    let u = drastic_band_uninorm(0.5).expect("e = 1/2");
    let n = build_negation(NegationSpec::Standard).expect("standard");
    let i = un_implication(&u, &n).expect("uninorm kind");
    CatalogInstance {
        name: "unique-rep".into(),
        description: "Maximum t-conorm over the drastic product: no horizontal cut except y = e is continuous with full range".into(),
        uninorms: vec![("U".into(), u)],
        negations: vec![("N".into(), n)],
        implications: vec![("I".into(), i)],
        references: vec![],
        functions: vec![],
        relations: vec![
            Relation::NeutralElement { operator: "U".into(), neutral: 0.5, tolerance: 1e-12 },
            Relation::Uniqueness { operator: "U".into(), expect_unique: true, extra_alphas: vec![], min_witnesses: 0 },
            Relation::CutValid { operator: "U".into(), role: CutRole::UninormCut, alpha: 0.5 },
            Relation::CutInvalid { operator: "U".into(), role: CutRole::UninormCut, alpha: 0.3 },
            Relation::CutInvalid { operator: "U".into(), role: CutRole::UninormCut, alpha: 0.7 },
        ],
        round_trips: vec![RoundTrip {
            implication: "I".into(),
            alpha: 0.5,
            uninorm: "U".into(),
            negation: "N".into(),
            tolerance: 1e-9,
        }],
        axiom_tolerance: 1e-9,
    }
}

fn nonc_power() -> CatalogInstance {
    let u1 = power_band_uninorm();
    let n1 = build_negation(NegationSpec::PowerLog).expect("powerlog");
    let n2 = build_negation(NegationSpec::SquareOf(n1.clone())).expect("square");
    let u2 = conjugate_shift(u1.clone(), power_point(-1), 0.25).expect("U1(u(-1), 1/4) = 1/2");
    let i1 = un_implication(&u1, &n1).expect("uninorm kind");
    let i2 = un_implication(&u2, &n2).expect("uninorm kind");
    // Second derivation of N2: through the uninorm rather than squaring.
    let u1_for_n2 = u1.clone();
    let n1_for_n2 = n1.clone();
    let n2_via_u1 = Negation::new(
        UnitFunction1D::new("ref:N2", Monotonicity::Decreasing, move |x| u1_for_n2.eval(n1_for_n2.eval(x), 0.25)),
        true,
        true,
    );
    let forward: Vec<f64> = (1..=5).map(power_point).collect();
    let backward: Vec<f64> = (1..=5).map(|k| power_point(-k)).collect();
    let pairs: Vec<(f64, f64)> = (-3..=3).map(|k| (power_point(k), power_point(-k))).collect();
    CatalogInstance {
        name: "nonc-power".into(),
        description: "The band uninorm of f(x) = x^2 with the double-log negation and its conjugate with neutral 1/4".into(),
        uninorms: vec![("U1".into(), u1), ("U2".into(), u2)],
        negations: vec![("N1".into(), n1), ("N2".into(), n2), ("ref:N2".into(), n2_via_u1)],
        implications: vec![("I1".into(), i1), ("I2".into(), i2)],
        references: vec![],
        functions: vec![],
        relations: vec![
            Relation::Equality {
                left: "I1".into(),
                right: "I2".into(),
                exclusions: vec![],
                interior_only: true,
                tolerance: 1e-9,
            },
            Relation::NegationEquality { left: "N2".into(), right: "ref:N2".into(), tolerance: 1e-12 },
            Relation::NeutralElement { operator: "U2".into(), neutral: 0.25, tolerance: 1e-12 },
            Relation::PowerSequence {
                operator: "U1".into(),
                base: 0.25,
                expected_forward: forward,
                expected_backward: backward,
                tolerance: 1e-12,
            },
            Relation::NegationPowers { negation: "N1".into(), pairs, tolerance: 1e-12 },
            Relation::CutValid { operator: "U1".into(), role: CutRole::UninormCut, alpha: 0.25 },
            Relation::CutValid { operator: "U1".into(), role: CutRole::UninormCut, alpha: power_point(-1) },
            Relation::CutValid { operator: "U2".into(), role: CutRole::UninormCut, alpha: 0.5 },
            Relation::CutInvalid { operator: "U1".into(), role: CutRole::UninormCut, alpha: 0.3 },
            Relation::Uniqueness {
                operator: "U1".into(),
                expect_unique: false,
                extra_alphas: vec![power_point(2), power_point(-1), power_point(-2)],
                min_witnesses: 4,
            },
        ],
        round_trips: vec![RoundTrip {
            implication: "I1".into(),
            alpha: 0.5,
            uninorm: "U1".into(),
            negation: "N1".into(),
            tolerance: 1e-9,
        }],
        axiom_tolerance: 1e-9,
    }
}

/// Band index of s by explicit comparison against the partition points,
/// independent of the exponent-extraction path used by the builder.
fn power_band_index_by_loop(s: f64) -> i32 {
    let u = |k: i32| (-(2f64.powi(k))).exp2();
    let mut k: i32 = 0;
    if s <= 0.5 {
        while s <= u(k + 1) {
            k += 1;
        }
        k
    } else {
        while s > u(k) {
            k -= 1;
        }
        k
    }
}

/// Closed-form power-band evaluation via powf, for reference use.
fn power_band_reference_eval(x: f64, y: f64) -> f64 {
    if x.max(y) == 1.0 {
        return 1.0;
    }
    if x.min(y) == 0.0 {
        return 0.0;
    }
    let n = power_band_index_by_loop(x);
    let m = power_band_index_by_loop(y);
    let x0 = x.powf(2f64.powi(-n));
    let y0 = y.powf(2f64.powi(-m));
    x0.min(y0).powf(2f64.powi(n + m))
}

fn osum_reference() -> BinaryOperator {
    BinaryOperator::new("ref:U", OperatorKind::Uninorm, |x, y| {
        if x <= 0.25 && y <= 0.25 {
            x * y
        } else if x >= 0.75 && y >= 0.75 {
            x + y - x * y
        } else if x > 0.25 && x < 0.75 && y > 0.25 && y < 0.75 {
            0.25 + 0.5 * power_band_reference_eval(2.0 * (x - 0.25), 2.0 * (y - 0.25))
        } else if x >= 0.75 || y >= 0.75 {
            x.max(y)
        } else {
            x.min(y)
        }
    })
    .with_neutral(0.5)
    .with_disjunctive(true)
}

fn osum_nonc() -> CatalogInstance {
    let inner = band_rescale(&power_band_uninorm(), 0.25, 0.75).expect("band");
    let u = band_ordinal_sum(&inner, OuterOps::ProdDualProd);
    let n = build_negation(NegationSpec::Standard).expect("standard");
    let i = un_implication(&u, &n).expect("uninorm kind");
    let scaled = |k: i32| 0.25 + 0.5 * power_point(k);
    let forward: Vec<f64> = (1..=3).map(scaled).collect();
    let backward: Vec<f64> = (1..=3).map(|k| scaled(-k)).collect();
    CatalogInstance {
        name: "osum-nonc".into(),
        description: "Ordinal sum of the product, the dual product and the band uninorm rescaled to ]1/4,3/4[".into(),
        uninorms: vec![("U".into(), u)],
        negations: vec![("N".into(), n)],
        implications: vec![("I".into(), i)],
        references: vec![("ref:U".into(), osum_reference())],
        functions: vec![],
        relations: vec![
            Relation::Equality {
                left: "U".into(),
                right: "ref:U".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-9,
            },
            Relation::NeutralElement { operator: "U".into(), neutral: 0.5, tolerance: 1e-12 },
            Relation::PowerSequence {
                operator: "U".into(),
                base: scaled(1),
                expected_forward: forward,
                expected_backward: backward,
                tolerance: 1e-12,
            },
            Relation::CutValid { operator: "U".into(), role: CutRole::UninormCut, alpha: scaled(1) },
            Relation::CutValid { operator: "U".into(), role: CutRole::UninormCut, alpha: scaled(-1) },
            Relation::CutInvalid { operator: "U".into(), role: CutRole::UninormCut, alpha: 0.3 },
            Relation::CutInvalid { operator: "U".into(), role: CutRole::UninormCut, alpha: 0.1 },
            Relation::CutInvalid { operator: "U".into(), role: CutRole::UninormCut, alpha: 0.9 },
            Relation::Uniqueness {
                operator: "U".into(),
                expect_unique: false,
                extra_alphas: vec![scaled(1), scaled(2), scaled(-1), scaled(-2)],
                min_witnesses: 4,
            },
        ],
        round_trips: vec![RoundTrip {
            implication: "I".into(),
            alpha: 0.5,
            uninorm: "U".into(),
            negation: "N".into(),
            tolerance: 1e-9,
        }],
        axiom_tolerance: 1e-9,
    }
}

/// The piecewise-quadratic cut function fixing 1/4 and 3/4.
///
/// On each branch f is conjugate to t -> t^2 through an affine map onto
/// `[0,1]`, so the n-th functional power has the branch-local closed form
/// (scaled coordinate)^(2^n), evaluated through the exact-exponent path
/// to keep deep compositions at ulp accuracy.
fn equf_cut_function() -> UnitFunction1D {
    UnitFunction1D::new("f", Monotonicity::Increasing, |s| {
        if s <= 0.25 {
            4.0 * s * s
        } else if s < 0.75 {
            2.0 * (s - 0.25) * (s - 0.25) + 0.25
        } else {
            4.0 * (s - 0.75) * (s - 0.75) + 0.75
        }
    })
    .with_closed_inverse(|v| {
        if v <= 0.25 {
            (v / 4.0).sqrt()
        } else if v < 0.75 {
            0.25 + ((v - 0.25) / 2.0).sqrt()
        } else {
            0.75 + ((v - 0.75) / 4.0).sqrt()
        }
    })
    .with_closed_iterate(|n, s| {
        if s <= 0.0 {
            return 0.0;
        }
        if s >= 1.0 {
            return 1.0;
        }
        let (lo, scale) = if s <= 0.25 {
            (0.0, 4.0)
        } else if s < 0.75 {
            (0.25, 2.0)
        } else {
            (0.75, 4.0)
        };
        let t = (s - lo) * scale;
        if t <= 0.0 || t >= 1.0 {
            // Branch endpoints are fixed points of f.
            return s;
        }
        lo + crate::numerics::pow2_iterate(n, t) / scale
    })
}

/// f^(n) in closed form per branch: (scaled coordinate)^(2^n).
fn equf_f_pow_reference(n: i32, s: f64) -> f64 {
    let p = 2f64.powi(n);
    if s <= 0.25 {
        0.25 * (4.0 * s).powf(p)
    } else if s < 0.75 {
        0.25 + 0.5 * (2.0 * (s - 0.25)).powf(p)
    } else {
        0.75 + 0.25 * (4.0 * (s - 0.75)).powf(p)
    }
}

fn equf_band_index_by_loop(s: f64) -> i32 {
    // Band n is ]f^(n+1)(e), f^(n)(e)] with edges 0.25 + 0.5 * u(k).
    power_band_index_by_loop(2.0 * (s - 0.25))
}

fn equf_reference() -> BinaryOperator {
    BinaryOperator::new("ref:U", OperatorKind::Uninorm, |x, y| {
        let in_band = |v: f64| v > 0.25 && v < 0.75;
        if x <= 0.25 && y <= 0.25 {
            0.0
        } else if (0.75..1.0).contains(&x) && (0.75..1.0).contains(&y) {
            1.0
        } else if (x <= 0.25 && (0.75..1.0).contains(&y)) || (y <= 0.25 && (0.75..1.0).contains(&x)) {
            0.75
        } else if x == 1.0 || y == 1.0 {
            1.0
        } else if !in_band(x) && in_band(y) {
            equf_f_pow_reference(equf_band_index_by_loop(y), x)
        } else if !in_band(y) && in_band(x) {
            equf_f_pow_reference(equf_band_index_by_loop(x), y)
        } else {
            0.25 + 0.5 * power_band_reference_eval(2.0 * (x - 0.25), 2.0 * (y - 0.25))
        }
    })
    .with_neutral(0.5)
    .with_disjunctive(true)
}

fn equf() -> CatalogInstance {
    let f = equf_cut_function();
    let inner = band_rescale(&power_band_uninorm(), 0.25, 0.75).expect("band");
    let u = equf_uninorm(f.clone(), &inner, 0.25, 0.75, 0.5, &Tolerances::default()).expect("fixed points hold");
    let n = build_negation(NegationSpec::Standard).expect("standard");
    let i = un_implication(&u, &n).expect("uninorm kind");
    let scaled = |k: i32| 0.25 + 0.5 * power_point(k);
    CatalogInstance {
        name: "equf".into(),
        description: "Seven-case extension of the rescaled band uninorm by a cut function fixing 1/4 and 3/4; not an ordinal sum over the band".into(),
        uninorms: vec![("U".into(), u)],
        negations: vec![("N".into(), n)],
        implications: vec![("I".into(), i)],
        references: vec![("ref:U".into(), equf_reference())],
        functions: vec![("f".into(), f)],
        relations: vec![
            Relation::Equality {
                left: "U".into(),
                right: "ref:U".into(),
                exclusions: vec![],
                interior_only: false,
                tolerance: 1e-9,
            },
            Relation::NeutralElement { operator: "U".into(), neutral: 0.5, tolerance: 1e-12 },
            Relation::LemmaLemNw {
                function: "f".into(),
                operator: "U".into(),
                a: 0.25,
                d: 0.75,
                margin: 1e-6,
                inset: 0.01,
            },
            Relation::CutValid { operator: "U".into(), role: CutRole::UninormCut, alpha: 0.375 },
            Relation::CutValid { operator: "U".into(), role: CutRole::UninormCut, alpha: 0.5 },
            Relation::CutInvalid { operator: "U".into(), role: CutRole::UninormCut, alpha: 0.6 },
            Relation::Uniqueness {
                operator: "U".into(),
                expect_unique: false,
                extra_alphas: vec![0.375, scaled(2), scaled(-1)],
                min_witnesses: 3,
            },
        ],
        round_trips: vec![RoundTrip {
            implication: "I".into(),
            alpha: 0.5,
            uninorm: "U".into(),
            negation: "N".into(),
            tolerance: 1e-9,
        }],
        // Intrinsic f64 composition floor near the quadratic-contact
        // band edges; see the field documentation.
        axiom_tolerance: 1e-6,
    }
}

/// Builds the named instance.
pub fn catalog_instance(name: &str) -> Result<CatalogInstance> {
    match name {
        "example1" => Ok(example1()),
        "step-negation" => Ok(step_negation()),
        "u3u4" => Ok(u3u4()),
        "unique-rep" => Ok(unique_rep()),
        "nonc-power" => Ok(nonc_power()),
        "osum-nonc" => Ok(osum_nonc()),
        "equf" => Ok(equf()),
        other => Err(Error::NotFound(format!("catalog instance `{other}`"))),
    }
}

// ---------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------

/// Runs every expected relation of the named instance, plus the uninorm
/// axiom sweep and the implication axiom battery (I1-I3 and the exchange
/// principle) over all bundled operators.
pub fn verify_instance(name: &str, grid: &Grid, tol: &Tolerances) -> Result<InstanceReport> {
    let inst = catalog_instance(name)?;
    let triple_grid = uniform_grid(DEFAULT_TRIPLE_GRID_N)?;
    let mut outcomes = Vec::new();

    for (op_name, u) in &inst.uninorms {
        let r = check_uninorm_axioms(u, &triple_grid, tol);
        let residual = r
            .commutativity
            .residual
            .max(r.associativity.residual)
            .max(r.monotonicity.residual)
            .max(r.neutral.as_ref().map_or(0.0, |c| c.residual));
        outcomes.push(RelationOutcome {
            description: format!("axioms({op_name})"),
            pass: residual <= inst.axiom_tolerance,
            residual,
            detail: format!("corner class {:?}", r.corner_class),
        });
    }

    for (imp_name, i) in &inst.implications {
        let mut residual: f64 = 0.0;
        for r in check_implication_axioms(i, grid, tol) {
            residual = residual.max(r.worst_residual);
        }
        let ep = check_property(i, ImplicationProperty::EP, &triple_grid, tol, None)?;
        residual = residual.max(ep.worst_residual);
        outcomes.push(RelationOutcome {
            description: format!("implication-axioms({imp_name})"),
            pass: residual <= inst.axiom_tolerance,
            residual,
            detail: "I1, I2, I3, EP".into(),
        });
    }

    for rel in &inst.relations {
        outcomes.push(run_relation(&inst, rel, grid, tol)?);
    }
    for rt in &inst.round_trips {
        outcomes.extend(run_round_trip(&inst, rt, grid, tol)?);
    }

    let pass = outcomes.iter().all(|o| o.pass);
    Ok(InstanceReport { name: inst.name.clone(), pass, outcomes })
}

fn run_relation(inst: &CatalogInstance, rel: &Relation, grid: &Grid, tol: &Tolerances) -> Result<RelationOutcome> {
    match rel {
        Relation::Equality { left, right, exclusions, interior_only, tolerance } => {
            let a = inst.operator(left)?;
            let b = inst.operator(right)?;
            let record = if *interior_only {
                let interior = Grid::from_points(grid.points().to_vec())?;
                // Compare on interior points only by excluding the frame
                // through a manual scan.
                let pts = interior.points();
                let mut max = 0.0f64;
                let mut witness = None;
                for &x in &pts[1..pts.len() - 1] {
                    for &y in &pts[1..pts.len() - 1] {
                        let d = (a.eval(x, y) - b.eval(x, y)).abs();
                        if d > max {
                            max = d;
                            witness = Some((x, y));
                        }
                    }
                }
                (max, witness)
            } else {
                let r = operators_equal(a, b, grid, tol, exclusions);
                (r.max_residual, r.witness)
            };
            Ok(RelationOutcome {
                description: format!("equality({left},{right})"),
                pass: record.0 <= *tolerance,
                residual: record.0,
                detail: format!("worst at {:?}", record.1),
            })
        }
        Relation::NegationEquality { left, right, tolerance } => {
            let a = inst.negation(left)?;
            let b = inst.negation(right)?;
            let mut max = 0.0f64;
            let mut at = 0.0;
            for &x in grid.points() {
                let d = (a.eval(x) - b.eval(x)).abs();
                if d > max {
                    max = d;
                    at = x;
                }
            }
            Ok(RelationOutcome {
                description: format!("negation-equality({left},{right})"),
                pass: max <= *tolerance,
                residual: max,
                detail: format!("worst at {at}"),
            })
        }
        Relation::NeutralElement { operator, neutral, tolerance } => {
            let u = inst.operator(operator)?;
            let mut max = 0.0f64;
            let mut at = 0.0;
            for &x in grid.points() {
                let d = (u.eval(x, *neutral) - x).abs();
                if d > max {
                    max = d;
                    at = x;
                }
            }
            Ok(RelationOutcome {
                description: format!("neutral-element({operator},{neutral})"),
                pass: max <= *tolerance,
                residual: max,
                detail: format!("worst at {at}"),
            })
        }
        Relation::CutValid { operator, role, alpha } => {
            let op = inst.operator(operator)?;
            let reports = scan_cuts(op, *role, &[*alpha], grid, tol)?;
            let r = &reports[0];
            Ok(RelationOutcome {
                description: format!("cut-valid({operator},{alpha})"),
                pass: r.valid,
                residual: if r.valid { 0.0 } else { 1.0 },
                detail: format!(
                    "monotone {}, continuous {}, endpoints {} / {}",
                    r.monotone_ok, r.continuity.continuous, r.endpoint_low, r.endpoint_high
                ),
            })
        }
        Relation::CutInvalid { operator, role, alpha } => {
            let op = inst.operator(operator)?;
            let reports = scan_cuts(op, *role, &[*alpha], grid, tol)?;
            let r = &reports[0];
            Ok(RelationOutcome {
                description: format!("cut-invalid({operator},{alpha})"),
                pass: !r.valid,
                residual: if r.valid { 1.0 } else { 0.0 },
                detail: format!("continuous {}, endpoints {} / {}", r.continuity.continuous, r.endpoint_low, r.endpoint_high),
            })
        }
        Relation::Uniqueness { operator, expect_unique, extra_alphas, min_witnesses } => {
            let u = inst.operator(operator)?;
            let alphas = default_alpha_candidates(u, extra_alphas);
            let v = uniqueness_verdict(u, grid, &alphas, tol)?;
            let pass = v.unique == *expect_unique && v.witnesses.len() >= *min_witnesses;
            Ok(RelationOutcome {
                description: format!("uniqueness({operator})"),
                pass,
                residual: 0.0,
                detail: format!("unique {}, {} witnesses of {} scanned", v.unique, v.witnesses.len(), v.scanned),
            })
        }
        Relation::Coincidence { left, right, a, d, tolerance, expect_interior_disagreement } => {
            let u1 = inst.operator(left)?;
            let u2 = inst.operator(right)?;
            let r = coincidence_region_check(u1, u2, *a, *d, grid, tol)?;
            let pass = r.frame_residual <= *tolerance && r.interior_disagreement == *expect_interior_disagreement;
            Ok(RelationOutcome {
                description: format!("coincidence({left},{right})"),
                pass,
                residual: r.frame_residual,
                detail: format!(
                    "interior max difference {} at {:?}",
                    r.interior_max_difference, r.interior_witness
                ),
            })
        }
        Relation::PowerSequence { operator, base, expected_forward, expected_backward, tolerance } => {
            let u = inst.operator(operator)?;
            let seq = power_sequence(u, *base, expected_forward.len(), tol)?;
            let mut max = seq.pairing_residual;
            for (got, want) in seq.forward.iter().zip(expected_forward) {
                max = max.max((got - want).abs());
            }
            for (got, want) in seq.backward.iter().zip(expected_backward) {
                max = max.max((got - want).abs());
            }
            Ok(RelationOutcome {
                description: format!("power-sequence({operator},{base})"),
                pass: max <= *tolerance,
                residual: max,
                detail: format!("pairing residual {}", seq.pairing_residual),
            })
        }
        Relation::NegationPowers { negation, pairs, tolerance } => {
            let n = inst.negation(negation)?;
            let mut max = 0.0f64;
            for &(x, want) in pairs {
                max = max.max((n.eval(x) - want).abs());
            }
            Ok(RelationOutcome {
                description: format!("negation-powers({negation})"),
                pass: max <= *tolerance,
                residual: max,
                detail: format!("{} points", pairs.len()),
            })
        }
        Relation::LemmaLemNw { function, operator, a, d, margin, inset } => {
            let f = inst.function(function)?;
            let u = inst.operator(operator)?;
            let mut pass = true;
            let mut detail = String::new();
            let mut min_gap = f64::INFINITY;
            for &s in grid.points() {
                if s > a + inset && s < d - inset {
                    min_gap = min_gap.min((f.eval(s) - s).abs());
                }
            }
            if min_gap.is_nan() || min_gap <= *margin {
                pass = false;
                detail.push_str(&format!("interior gap {min_gap} below margin; "));
            }
            if f.eval(*a) != *a || f.eval(*d) != *d {
                pass = false;
                detail.push_str("band edges not fixed exactly; ");
            }
            let corner = u.eval(*a, *d);
            if corner != *a && corner != *d {
                pass = false;
                detail.push_str(&format!("U(a,d) = {corner} is neither a nor d; "));
            }
            if detail.is_empty() {
                detail = format!("interior gap {min_gap}, U(a,d) = {corner}");
            }
            Ok(RelationOutcome { description: format!("lemma-lemNW({operator})"), pass, residual: 0.0, detail })
        }
    }
}

fn run_round_trip(inst: &CatalogInstance, rt: &RoundTrip, grid: &Grid, tol: &Tolerances) -> Result<Vec<RelationOutcome>> {
    let i = inst.operator(&rt.implication)?;
    let u = inst.operator(&rt.uninorm)?;
    let n = inst.negation(&rt.negation)?;
    let alpha = rt.alpha;

    let reports = scan_cuts(i, CutRole::ImplicationCut, &[alpha], grid, tol)?;
    let valid = reports[0].valid;
    let mut outcomes = vec![RelationOutcome {
        description: format!("round-trip-cut({},{alpha})", rt.implication),
        pass: valid,
        residual: if valid { 0.0 } else { 1.0 },
        detail: format!("continuous {}", reports[0].continuity.continuous),
    }];
    if !valid {
        return Ok(outcomes);
    }

    let n_star = negation_from_cut(i, alpha, true, true);
    let pseudo = modified_pseudo_inverse(&n_star);
    let pts = grid.points();

    // N* recovers N.
    let mut n_residual: f64 = 0.0;
    for &x in pts {
        n_residual = n_residual.max((n_star.eval(x) - n.eval(x)).abs());
    }
    outcomes.push(RelationOutcome {
        description: format!("round-trip-negation({},{alpha})", rt.implication),
        pass: n_residual <= rt.tolerance,
        residual: n_residual,
        detail: format!("vs {}", rt.negation),
    });

    // U*(x,y) = I(R(x), y) recovers U, and the reconstruction identity
    // U*(N*(x), y) = I(x, y) closes.
    let mut u_residual: f64 = 0.0;
    let mut rec_residual: f64 = 0.0;
    for &x in pts {
        let rx = pseudo.eval(x);
        for &y in pts {
            u_residual = u_residual.max((i.eval(rx, y) - u.eval(x, y)).abs());
        }
        let r_of_cut = pseudo.eval(n_star.eval(x));
        for &y in pts {
            rec_residual = rec_residual.max((i.eval(r_of_cut, y) - i.eval(x, y)).abs());
        }
    }
    outcomes.push(RelationOutcome {
        description: format!("round-trip-uninorm({},{alpha})", rt.implication),
        pass: u_residual <= rt.tolerance,
        residual: u_residual,
        detail: format!("vs {}", rt.uninorm),
    });
    outcomes.push(RelationOutcome {
        description: format!("round-trip-reconstruction({},{alpha})", rt.implication),
        pass: rec_residual <= rt.tolerance,
        residual: rec_residual,
        detail: "U*(N*(x),y) vs I(x,y)".into(),
    });
    Ok(outcomes)
}
