//! Boolean and free moment-cumulant transforms on truncated series.

use super::poly::LaurentPoly;
use super::series::TruncSeries;
use crate::error::Result;

/// `M = K / (1 - K)`, i.e. `m_n = κ_n + Σ_{j<n} κ_j m_{n-j}`.
pub fn boolean_transform(k: &TruncSeries) -> TruncSeries {
    k.div_one_minus(k).expect("same order")
}

/// `K = M / (1 + M)`, solved by forward substitution.
pub fn boolean_inverse(m: &TruncSeries) -> TruncSeries {
    let n = m.order();
    let mut kappa: Vec<LaurentPoly> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut acc = m.c(j).clone();
        for i in 1..j {
            if !kappa[i - 1].is_zero() && !m.c(j - i).is_zero() {
                acc = &acc - &(&kappa[i - 1] * m.c(j - i));
            }
        }
        kappa.push(acc);
    }
    TruncSeries::from_coeffs(n, kappa)
}

/// Triangular table `t[s][k] = [X^k] (1 + M)^s` for `s + k ≤ N`.
struct PowerTable {
    t: Vec<Vec<LaurentPoly>>,
}

impl PowerTable {
    fn new(order: usize) -> Self {
        let t = (0..=order)
            .map(|s| {
                let mut row = Vec::with_capacity(order + 1 - s);
                row.push(LaurentPoly::one());
                row
            })
            .collect();
        Self { t }
    }

    /// Fills column `k` for every `s ≥ 1` with `s + k ≤ N`, given `m_1..m_k`.
    fn fill_column(&mut self, k: usize, m: &[LaurentPoly]) {
        let order = self.t.len() - 1;
        // s = 0 row is 1 + 0X + ..; its column k > 0 is zero.
        if self.t[0].len() == k && k <= order {
            self.t[0].push(LaurentPoly::zero());
        }
        for s in 1..=order - k {
            let mut acc = self.t[s - 1][k].clone();
            for i in 1..=k {
                let prev = &self.t[s - 1][k - i];
                if !prev.is_zero() && !m[i - 1].is_zero() {
                    acc += &(prev * &m[i - 1]);
                }
            }
            self.t[s].push(acc);
        }
    }

    fn get(&self, s: usize, k: usize) -> &LaurentPoly {
        &self.t[s][k]
    }
}

/// The free moment series `M` with `M(X) = K(X(1 + M(X)))`.
///
/// Coefficient form of the fixed point: `m_n = Σ_s κ_s [X^{n-s}](1 + M)^s`,
/// where the right side only involves `m_1..m_{n-1}`.
pub fn free_transform(k: &TruncSeries) -> TruncSeries {
    let n = k.order();
    let mut table = PowerTable::new(n);
    let mut m: Vec<LaurentPoly> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut acc = LaurentPoly::zero();
        for s in 1..=j {
            if !k.c(s).is_zero() && !table.get(s, j - s).is_zero() {
                acc += &(k.c(s) * table.get(s, j - s));
            }
        }
        m.push(acc);
        if j < n {
            table.fill_column(j, &m);
        }
    }
    TruncSeries::from_coeffs(n, m)
}

/// The literal iteration `M ← K(X(1 + M))` started from zero; coefficient
/// `n` is final after `n` rounds.
pub fn free_transform_fixed_point(k: &TruncSeries) -> Result<TruncSeries> {
    let order = k.order();
    let x = TruncSeries::x(order);
    let mut m = TruncSeries::zero(order);
    for _ in 0..order {
        let inner = x.add(&x.mul(&m)?)?;
        m = k.compose(&inner)?;
    }
    Ok(m)
}

/// Free cumulants from moments by forward substitution.
pub fn free_inverse(m: &TruncSeries) -> TruncSeries {
    let n = m.order();
    let mut table = PowerTable::new(n);
    for j in 1..n {
        table.fill_column(j, m.coeffs());
    }
    let mut kappa: Vec<LaurentPoly> = Vec::with_capacity(n);
    for j in 1..=n {
        let mut acc = m.c(j).clone();
        for s in 1..j {
            if !kappa[s - 1].is_zero() && !table.get(s, j - s).is_zero() {
                acc = &acc - &(&kappa[s - 1] * table.get(s, j - s));
            }
        }
        kappa.push(acc);
    }
    TruncSeries::from_coeffs(n, kappa)
}

/// `h(X(1 + Ĝ(X)))` where `Ĝ` is the free moment series of `g`.
pub fn last_block_sum(h: &TruncSeries, g: &TruncSeries) -> Result<TruncSeries> {
    let x = TruncSeries::x(h.order());
    let inner = x.add(&x.mul(&free_transform(g))?)?;
    h.compose(&inner)
}
