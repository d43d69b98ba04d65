//! Uninorm constructors and numeric axiom checking.

mod analysis;
mod bands;
mod families;
mod operator;
mod power_band;

pub use analysis::{
    check_uninorm_axioms, check_uninorm_axioms_seeded, power_sequence, underlying_ops, AxiomCheck, AxiomReport,
    CornerClass, LineWitness, PowerSequence, UnderlyingOps,
};
pub use bands::{band_ordinal_sum, band_rescale, equf_uninorm, propf_uninorm, BandOperator, FBandSpec, OuterOps};
pub use families::{
    conjugate_shift, drastic_band_uninorm, minmax_uninorm, representable_uninorm, CrossMode, GeneratorDescriptor,
};
pub use operator::{t_conorm_max, t_conorm_prob_sum, t_norm_drastic, t_norm_min, t_norm_product, BinaryOperator, OperatorKind};
pub use power_band::{power_band_index, power_band_uninorm, power_point};
