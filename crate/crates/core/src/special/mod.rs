//! Discrete orthogonal polynomials and the series they are built from.
//!
//! Every polynomial has a floating-point evaluator and an exact evaluator over
//! [`ExactScalar`]. The exact path is the definitional oracle; the float path is
//! what the rest of the crate uses.

mod charlier;
mod exact;
mod hypergeometric;
mod krawtchouk;
mod logspace;

pub use charlier::{
    charlier, charlier_at_integer, charlier_exact, charlier_orthogonality_sum,
    charlier_shift_check, CharlierParams, ShiftResiduals,
};
pub use exact::{exact_from_f64, exact_ln_abs, exact_to_f64, ratio, ExactScalar};
pub use hypergeometric::{hyp2f0_f64, hyp2f0_terminating, hyp2f1_terminating};
pub use krawtchouk::{
    krawtchouk, krawtchouk_exact, krawtchouk_inner_exact, krawtchouk_ln_norm_sq,
    krawtchouk_norm_sq_exact, krawtchouk_normalized, KrawtchoukParams,
};
pub use logspace::{ln_binomial, ln_factorial};
