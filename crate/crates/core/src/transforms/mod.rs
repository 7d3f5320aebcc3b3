//! Exact truncated series in `X` over Laurent polynomials in `Y, A, B`, the
//! boolean and free moment-cumulant transforms, and the closed-form series.

mod closed;
mod moment;
mod poly;
mod series;

pub use closed::{
    semi_meander_series, shallow_top_g, shallow_top_h, shallow_top_series, thin_series, SeriesPair,
    DEFAULT_ORDER,
};
pub use moment::{
    boolean_inverse, boolean_transform, free_inverse, free_transform, free_transform_fixed_point,
    last_block_sum,
};
pub use poly::{Exponents, LaurentPoly, TermRecord, Var};
pub use series::{CoefficientRecord, TruncSeries};
