//! Loop counts of meandric systems, exhaustive meander polynomials for the
//! four class pairings, and executable forms of the combinatorial lemmas.

mod brute;
mod class;
mod lemmas;

pub use brute::{
    cumulant_coefficient, cumulant_coefficient_with_budget, cumulant_distribution,
    generating_coefficient, generating_coefficient_with_budget, joint_distribution,
    meander_polynomial, meander_polynomial_with_budget, JointDistribution, MAX_ORDER,
};
pub use class::{binomial, catalan, LoopPolynomial, MeanderClass};
pub use lemmas::{
    binomial_lemma_check, binomial_lemma_histogram, binomial_lemma_sides, gnp_count, loop_count,
    loop_count_comb, rainbow, semi_loop_distribution, thin_count, BINOMIAL_LEMMA_MAX,
};
