mod dd;
pub mod error;
pub mod eval;
pub mod experiments;
pub mod functions;
pub mod jacobi;
mod nodes;
pub mod oracle;
pub mod scaled;
pub mod taylor;
pub mod weights;

pub use error::{Error, Result};
pub use eval::{
    eval_first_form, eval_second_form, sample_hermite_data, DataMode, HermiteData, Interpolant,
};
pub use functions::TestFunction;
pub use jacobi::{
    common_factor, gauss_jacobi_grid, jacobi_eval, lobatto_grid, Grid, GridKind, JacobiParams,
};
pub use oracle::{newton_hermite_eval, sv_weights, MultiNodeSpec, NewtonHermite, SvWeights};
pub use scaled::LogScaled;
pub use taylor::{gauss_m, lobatto_m, series_divide, SeriesCoeffs, TaylorRatios};
pub use weights::{
    bary_weights, explicit_low_order, weights_alg1, weights_alg2, Algorithm, BaryWeightTable,
    Scaling, WeightValues,
};
