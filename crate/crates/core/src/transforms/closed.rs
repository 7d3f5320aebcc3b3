//! Closed-form generating series for thin, shallow-top and semi-meandric systems.

use super::moment::{boolean_transform, last_block_sum};
use super::poly::LaurentPoly;
use super::series::TruncSeries;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 12;

/// Moment and cumulant series of a meander class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPair {
    pub m: TruncSeries,
    pub k: TruncSeries,
}

fn p(e: [i32; 3]) -> LaurentPoly {
    LaurentPoly::monomial(e, 1)
}

/// `AB + (A + B)Y`.
fn thin_cumulant_ratio() -> LaurentPoly {
    &(&p([0, 1, 1]) + &p([1, 1, 0])) + &p([1, 0, 1])
}

/// `M = X / (1 - X(1 + AB + (A+B)Y))` and `K = X / (1 - X(AB + (A+B)Y))`.
pub fn thin_series(order: usize) -> SeriesPair {
    let x = TruncSeries::x(order);
    let r = thin_cumulant_ratio();
    let q = &r + &LaurentPoly::one();
    let m = x.div_one_minus(&x.scalar_mul(&q)).expect("same order");
    let k = x.div_one_minus(&x.scalar_mul(&r)).expect("same order");
    SeriesPair { m, k }
}

/// `g_n = BY((1 + AY)^n - (AY)^n) + B A^n Y^{n-1}`, the cumulant input of the
/// non-last blocks, written without negative exponents.
pub fn shallow_top_g(order: usize) -> TruncSeries {
    let ay = p([1, 1, 0]);
    let one_plus_ay = &LaurentPoly::one() + &ay;
    TruncSeries::from_fn(order, |n| {
        let n32 = n as u32;
        let diff = &one_plus_ay.pow(n32) - &ay.pow(n32);
        &(&diff * &p([1, 0, 1])) + &p([n as i32 - 1, n as i32, 1])
    })
}

/// `h_n = (AY)^{n-1}`, the weight of the block containing `n`.
pub fn shallow_top_h(order: usize) -> TruncSeries {
    TruncSeries::from_fn(order, |n| p([n as i32 - 1, n as i32 - 1, 0]))
}

/// `K = h(X(1 + ĝ))` with `ĝ` the free moment series of `g`, and `M` its
/// boolean moment series.
pub fn shallow_top_series(order: usize) -> SeriesPair {
    let k = last_block_sum(&shallow_top_h(order), &shallow_top_g(order)).expect("same order");
    let m = boolean_transform(&k);
    SeriesPair { m, k }
}

/// `M = (X + X²(Y + A)) / (1 - X² Y (1 + 2YA + A²))`, with `A` marking the
/// interval side and `B` absent.
pub fn semi_meander_series(order: usize) -> TruncSeries {
    let num = TruncSeries::from_coeffs(order, [LaurentPoly::one(), &p([1, 0, 0]) + &p([0, 1, 0])]);
    let ratio = &(&p([1, 0, 0]) + &LaurentPoly::monomial([2, 1, 0], 2)) + &p([1, 2, 0]);
    let den = TruncSeries::from_coeffs(order, [LaurentPoly::zero(), ratio]);
    num.div_one_minus(&den).expect("same order")
}
