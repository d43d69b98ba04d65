//! Binary operators on the unit square and the basic t-norm / t-conorm
//! catalog used as building blocks.

use std::sync::Arc;

use serde::Serialize;

/// Role tag of a binary operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperatorKind {
    TNorm,
    TConorm,
    Uninorm,
    Implication,
    Raw,
}

impl std::fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OperatorKind::TNorm => "t-norm",
            OperatorKind::TConorm => "t-conorm",
            OperatorKind::Uninorm => "uninorm",
            OperatorKind::Implication => "implication",
            OperatorKind::Raw => "raw",
        };
        f.write_str(s)
    }
}

/// A named binary operator on `[0,1]^2` with claimed metadata.
///
/// The metadata (neutral element, disjunctive flag) records what the
/// constructor claims; [`check_uninorm_axioms`](crate::uninorms::check_uninorm_axioms)
/// verifies the claims numerically.
#[derive(Clone)]
pub struct BinaryOperator {
    eval: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    name: String,
    kind: OperatorKind,
    neutral: Option<f64>,
    disjunctive: Option<bool>,
    discontinuity_note: Option<String>,
}

impl std::fmt::Debug for BinaryOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BinaryOperator")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("neutral", &self.neutral)
            .field("disjunctive", &self.disjunctive)
            .finish()
    }
}

impl BinaryOperator {
    pub fn new(
        name: impl Into<String>,
        kind: OperatorKind,
        eval: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            name: name.into(),
            kind,
            neutral: None,
            disjunctive: None,
            discontinuity_note: None,
        }
    }

    pub fn with_neutral(mut self, e: f64) -> Self {
        self.neutral = Some(e);
        self
    }

    pub fn with_disjunctive(mut self, d: bool) -> Self {
        self.disjunctive = Some(d);
        self
    }

    pub fn with_discontinuity_note(mut self, note: impl Into<String>) -> Self {
        self.discontinuity_note = Some(note.into());
        self
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.eval)(x, y)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn neutral(&self) -> Option<f64> {
        self.neutral
    }

    pub fn disjunctive(&self) -> Option<bool> {
        self.disjunctive
    }

    pub fn discontinuity_note(&self) -> Option<&str> {
        self.discontinuity_note.as_deref()
    }
}

/// Minimum t-norm.
pub fn t_norm_min() -> BinaryOperator {
    BinaryOperator::new("min", OperatorKind::TNorm, f64::min).with_neutral(1.0)
}

/// Product t-norm.
pub fn t_norm_product() -> BinaryOperator {
    BinaryOperator::new("prod", OperatorKind::TNorm, |x, y| x * y).with_neutral(1.0)
}

/// Drastic product t-norm: x if y = 1, y if x = 1, 0 otherwise.
pub fn t_norm_drastic() -> BinaryOperator {
    BinaryOperator::new("drastic", OperatorKind::TNorm, |x, y| {
        if y == 1.0 {
            x
        } else if x == 1.0 {
            y
        } else {
            0.0
        }
    })
    .with_neutral(1.0)
    .with_discontinuity_note("discontinuous on the border of the unit square")
}

/// Maximum t-conorm.
pub fn t_conorm_max() -> BinaryOperator {
    BinaryOperator::new("max", OperatorKind::TConorm, f64::max).with_neutral(0.0)
}

/// Probabilistic sum t-conorm x + y - xy (dual of the product).
pub fn t_conorm_prob_sum() -> BinaryOperator {
    BinaryOperator::new("probsum", OperatorKind::TConorm, |x, y| x + y - x * y).with_neutral(0.0)
}
