//! Monte Carlo estimators for the matrix models and the exact thin model.
//!
//! The large tensor-product matrices are never formed. Each trace functional
//! is expanded over words in the small factors:
//! `Tr((Σ_k A_k ⊗ B_k)^n) = Σ_w Tr(A_w) Tr(B_w)`, with prefix products shared
//! along a depth-first walk.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Pow, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::channels::{phi_ginibre_units, psi_units, tensor_on_omega, units};
use super::matrix::ComplexMatrix;
use super::sampling::{sample_ginibre, sample_gue, sample_rng};
use crate::error::{Error, Result};
use crate::meanders::{meander_polynomial_with_budget, MeanderClass};

/// Fresh streams tried for one sample index before giving up.
pub const MAX_ATTEMPTS: u32 = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// `(1/d²) Tr(Σ_i B_i ⊗ B̄_i / d)^{2n}` for i.i.d. GUE `B_i`.
    GueDf,
    /// `(1/d²) Tr(ℓ d ρ^Γ)^{2n}` for `ρ` from the induced measure `(d², ℓ)`.
    WishartPt,
    /// `(1/d²) Tr(Z/d²)^n` with `Z = [Φ_G ⊗ Φ_H](ω_ℓ)`.
    NcNc,
    /// `(1/d) Tr[(Z₀/d)(Z/d)^{n-1}]` with `Z₀ = [Φ_G ⊗ id](ω_ℓ)` and
    /// `Z = [Φ_G ⊗ Ψ](ω_ℓ)`.
    ShallowTop,
    /// `Tr[ω_ℓ Z^{n-1}]` with `Z = [Ψ ⊗ Ψ](ω_ℓ)`, computed exactly.
    Thin,
}

impl Model {
    pub const ALL: [Model; 5] = [
        Model::GueDf,
        Model::WishartPt,
        Model::NcNc,
        Model::ShallowTop,
        Model::Thin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::GueDf => "gue-df",
            Model::WishartPt => "wishart-pt",
            Model::NcNc => "nc-nc",
            Model::ShallowTop => "shallow-top",
            Model::Thin => "thin",
        }
    }

    /// Meander class whose loop polynomial at `ℓ` is the large-`d` limit.
    pub fn class(self) -> MeanderClass {
        match self {
            Model::GueDf | Model::WishartPt | Model::NcNc => MeanderClass::Full,
            Model::ShallowTop => MeanderClass::ShallowTop,
            Model::Thin => MeanderClass::Thin,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Model::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown model '{s}'")))
    }
}

/// Choice of the second Ginibre matrix in the NC×NC model.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NcVariant {
    /// `H` independent of `G`.
    #[default]
    Independent,
    /// `H = G`.
    Same,
    /// `H = Ḡ`.
    Conjugate,
}

impl NcVariant {
    pub fn name(self) -> &'static str {
        match self {
            NcVariant::Independent => "independent",
            NcVariant::Same => "same",
            NcVariant::Conjugate => "conjugate",
        }
    }

    fn is_default(&self) -> bool {
        *self == NcVariant::Independent
    }
}

impl FromStr for NcVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "independent" => Ok(NcVariant::Independent),
            "same" => Ok(NcVariant::Same),
            "conjugate" => Ok(NcVariant::Conjugate),
            _ => Err(Error::InvalidSpec(format!("unknown variant '{s}'"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: Model,
    pub n: usize,
    pub l: usize,
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "NcVariant::is_default")]
    pub variant: NcVariant,
    /// Enumeration budget for the exact target; the class default when unset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_budget: Option<usize>,
}

impl ModelSpec {
    pub fn new(model: Model, n: usize, l: usize, d: usize, samples: usize, seed: u64) -> Self {
        ModelSpec {
            model,
            n,
            l,
            d,
            samples,
            seed,
            variant: NcVariant::Independent,
            target_budget: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if self.l == 0 {
            return Err(Error::InvalidSpec("ℓ must be at least 1".into()));
        }
        if self.variant != NcVariant::Independent && self.model != Model::NcNc {
            return Err(Error::InvalidSpec("variants apply to nc-nc only".into()));
        }
        if self.model == Model::Thin {
            return Ok(());
        }
        if self.d < 2 {
            return Err(Error::InvalidSpec(format!(
                "d = {} must be at least 2",
                self.d
            )));
        }
        if self.samples == 0 {
            return Err(Error::InvalidSpec("samples must be positive".into()));
        }
        Ok(())
    }

    /// Exact large-`d` limit: the loop polynomial of the matching class at `ℓ`.
    pub fn exact_target(&self) -> Result<BigInt> {
        if self.model == Model::Thin {
            return thin_exact(self.n, self.l);
        }
        let class = self.model.class();
        let budget = self.target_budget.unwrap_or(class.budget());
        let poly = meander_polynomial_with_budget(class, self.n, budget)?;
        Ok(poly.evaluate(&BigInt::from(self.l)))
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct EstimateReport {
    pub model: Model,
    pub n: usize,
    pub l: usize,
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub stderr: f64,
    /// Decimal string of the exact integer target.
    pub exact_target: String,
    #[serde(default, skip_serializing_if = "NcVariant::is_default")]
    pub variant: NcVariant,
}

impl EstimateReport {
    pub const CSV_HEADER: &'static str = "model,n,l,d,samples,seed,mean,stderr,exact_target";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.model,
            self.n,
            self.l,
            self.d,
            self.samples,
            self.seed,
            self.mean,
            self.stderr,
            self.exact_target
        )
    }

    pub fn target(&self) -> f64 {
        self.exact_target.parse().unwrap_or(f64::NAN)
    }

    /// `|mean - target|`.
    pub fn abs_error(&self) -> f64 {
        (self.mean - self.target()).abs()
    }

    /// Whether the mean lies within `3·stderr + 10·target/d²` of the target.
    pub fn within_band(&self) -> bool {
        let target = self.target();
        let d2 = (self.d * self.d) as f64;
        self.abs_error() <= 3.0 * self.stderr + 10.0 * target.abs() / d2
    }
}

/// Whether the absolute error does not grow along `reports` (ordered by
/// increasing `d`), allowing each step a slack of twice the larger stderr.
pub fn error_nonincreasing(reports: &[EstimateReport]) -> bool {
    reports.windows(2).all(|w| {
        let slack = 2.0 * w[0].stderr.max(w[1].stderr);
        w[1].abs_error() <= w[0].abs_error() + slack
    })
}

/// Runs the estimator. THIN is evaluated exactly with `samples = 0`.
pub fn estimate(spec: &ModelSpec) -> Result<EstimateReport> {
    spec.validate()?;
    let target = spec.exact_target()?;
    let mut report = EstimateReport {
        model: spec.model,
        n: spec.n,
        l: spec.l,
        d: spec.d,
        samples: 0,
        seed: spec.seed,
        mean: 0.0,
        stderr: 0.0,
        exact_target: target.to_string(),
        variant: spec.variant,
    };
    if spec.model == Model::Thin {
        report.mean = report.target();
        return Ok(report);
    }
    let values: Vec<f64> = crate::parallel::pool().install(|| {
        (0..spec.samples as u64)
            .into_par_iter()
            .map(|i| sample_with_retry(spec, i))
            .collect::<Result<Vec<f64>>>()
    })?;
    let (mean, stderr) = mean_and_stderr(&values);
    report.samples = spec.samples;
    report.mean = mean;
    report.stderr = stderr;
    Ok(report)
}

/// Sample mean and `sd / √samples` with the `n - 1` denominator; the stderr
/// of a single sample is 0.
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let k = values.len();
    if k == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mut sum = 0.0;
    for v in values {
        sum += v;
    }
    let mean = sum / k as f64;
    if k == 1 {
        return (mean, 0.0);
    }
    let mut ss = 0.0;
    for v in values {
        ss += (v - mean) * (v - mean);
    }
    let sd = (ss / (k - 1) as f64).sqrt();
    (mean, sd / (k as f64).sqrt())
}

fn sample_with_retry(spec: &ModelSpec, index: u64) -> Result<f64> {
    for attempt in 0..MAX_ATTEMPTS {
        let v = sample_value(spec, &mut sample_rng(spec.seed, index, attempt))?;
        if v.is_finite() {
            return Ok(v);
        }
        log::warn!(
            "{} sample {index} (attempt {attempt}) gave a non-finite value; resampling",
            spec.model
        );
    }
    Err(Error::Inconsistent(format!(
        "sample {index} stayed non-finite after {MAX_ATTEMPTS} attempts"
    )))
}

/// One draw of the model's trace functional.
pub fn sample_value<R: Rng + ?Sized>(spec: &ModelSpec, rng: &mut R) -> Result<f64> {
    let (n, l, d) = (spec.n, spec.l, spec.d);
    let df = d as f64;
    match spec.model {
        Model::GueDf => {
            let b: Vec<ComplexMatrix> = (0..l).map(|_| sample_gue(d, rng)).collect();
            Ok(gue_df_trace(&b, n)? / df.powi(2 * n as i32 + 2))
        }
        Model::WishartPt => {
            let g = sample_ginibre(d * d, l, rng);
            let tr_w: f64 = g.data().iter().map(|z| z.norm_sqr()).sum();
            let scale = (l as f64 * df / tr_w).powi(2 * n as i32);
            Ok(scale * wishart_pt_trace(&g, d, n)? / (df * df))
        }
        Model::NcNc => {
            let g = sample_ginibre(l, d * d, rng);
            let h = match spec.variant {
                NcVariant::Independent => sample_ginibre(l, d * d, rng),
                NcVariant::Same => g.clone(),
                NcVariant::Conjugate => g.conj(),
            };
            let a = phi_ginibre_units(&g)?;
            let b = phi_ginibre_units(&h)?;
            Ok(nc_nc_trace(&a, &b, n)? / df.powi(2 * n as i32 + 2))
        }
        Model::ShallowTop => {
            let g = sample_ginibre(l, d * d, rng);
            let (z0, z) = shallow_top_matrices(&g)?;
            Ok(shallow_top_trace(&z0, &z, n)? / df.powi(n as i32 + 1))
        }
        Model::Thin => Err(Error::InvalidSpec("thin is exact, not sampled".into())),
    }
}

/// `Σ_w Tr(first_w) Tr(second_w)` over words of length `len`, where
/// `first_w` multiplies letters left to right and `second_w` either the same
/// way or in reverse order.
fn word_trace_sum(
    letters: &[(ComplexMatrix, ComplexMatrix)],
    len: usize,
    reverse_second: bool,
) -> Result<Complex64> {
    if letters.is_empty() || len == 0 {
        return Err(Error::InvalidArgument(
            "word expansion needs letters and positive length".into(),
        ));
    }
    let p = ComplexMatrix::identity(letters[0].0.rows());
    let q = ComplexMatrix::identity(letters[0].1.rows());
    let mut total = Complex64::zero();
    walk(letters, len, reverse_second, &p, &q, &mut total)?;
    Ok(total)
}

fn walk(
    letters: &[(ComplexMatrix, ComplexMatrix)],
    remaining: usize,
    reverse_second: bool,
    p: &ComplexMatrix,
    q: &ComplexMatrix,
    total: &mut Complex64,
) -> Result<()> {
    for (a, b) in letters {
        if remaining == 1 {
            let ta = p.trace_of_product(a)?;
            let tb = if reverse_second {
                b.trace_of_product(q)?
            } else {
                q.trace_of_product(b)?
            };
            *total += ta * tb;
        } else {
            let p2 = p.try_mul(a)?;
            let q2 = if reverse_second {
                b.try_mul(q)?
            } else {
                q.try_mul(b)?
            };
            walk(letters, remaining - 1, reverse_second, &p2, &q2, total)?;
        }
    }
    Ok(())
}

/// `Tr((Σ_i B_i ⊗ B̄_i)^{2n}) = Σ_w |Tr B_w|²`.
pub fn gue_df_trace(b: &[ComplexMatrix], n: usize) -> Result<f64> {
    let letters: Vec<_> = b.iter().map(|m| (m.clone(), m.conj())).collect();
    Ok(word_trace_sum(&letters, 2 * n, false)?.re)
}

/// `Tr((Σ_k A_k ⊗ B_k)^n)` for the unit images `A_k = Φ_G(E_ij)`,
/// `B_k = Φ_H(E_ij)`.
pub fn nc_nc_trace(a: &[ComplexMatrix], b: &[ComplexMatrix], n: usize) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("unit images must pair up".into()));
    }
    let letters: Vec<_> = a.iter().cloned().zip(b.iter().cloned()).collect();
    Ok(word_trace_sum(&letters, n, false)?.re)
}

/// `Tr((W^Γ)^{2n})` for `W = GG*`, `G` of size `d² × ℓ`.
///
/// With `V_a` the `d × d` reshaping of column `a`, `(v_a v_a*)^Γ` acts on
/// `X ∈ M_d` as `X ↦ V_a Xᵀ V̄_a`, so a product of two of them is
/// `X ↦ P X Q` with `P = V_a V_b*` and `Q = V_bᵀ V̄_a`.
pub fn wishart_pt_trace(g: &ComplexMatrix, d: usize, n: usize) -> Result<f64> {
    if g.rows() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "expected {} rows, got {}",
            d * d,
            g.rows()
        )));
    }
    let v: Vec<ComplexMatrix> = (0..g.cols())
        .map(|a| ComplexMatrix::from_fn(d, d, |i, j| g[(i * d + j, a)]))
        .collect();
    let mut letters = Vec::with_capacity(v.len() * v.len());
    for va in &v {
        for vb in &v {
            letters.push((
                va.try_mul(&vb.adjoint())?,
                vb.transpose().try_mul(&va.conj())?,
            ));
        }
    }
    Ok(word_trace_sum(&letters, n, true)?.re)
}

/// `(Z₀, Z) = ([Φ_G ⊗ id](ω_ℓ), [Φ_G ⊗ Ψ](ω_ℓ))`, both `dℓ × dℓ`.
pub fn shallow_top_matrices(g: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let l = g.rows();
    let phi = phi_ginibre_units(g)?;
    Ok((
        tensor_on_omega(&phi, &units(l))?,
        tensor_on_omega(&phi, &psi_units(l))?,
    ))
}

/// `Tr[Z₀ Z^{n-1}]`.
pub fn shallow_top_trace(z0: &ComplexMatrix, z: &ComplexMatrix, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(z0.trace_of_product(&z.pow(n - 1)?)?.re)
}

/// `Tr[ω_ℓ Z^{n-1}]` with `Z = [Ψ ⊗ Ψ](ω_ℓ)`, in exact integer arithmetic.
///
/// The result is checked against `ℓ(2+2ℓ)^{n-1}` before it is returned.
pub fn thin_exact(n: usize, l: usize) -> Result<BigInt> {
    if n == 0 || l == 0 {
        return Err(Error::InvalidArgument("n and ℓ must be at least 1".into()));
    }
    let size = l * l;
    let idx = |i: usize, j: usize| i * l + j;
    // Ψ(E_ij) = E_ij + δ_ij I, as an integer ℓ × ℓ matrix.
    let psi_unit = |i: usize, j: usize| {
        let mut m = vec![vec![0i64; l]; l];
        m[i][j] += 1;
        if i == j {
            for (k, row) in m.iter_mut().enumerate() {
                row[k] += 1;
            }
        }
        m
    };
    let mut z = vec![vec![BigInt::zero(); size]; size];
    let mut omega = vec![vec![BigInt::zero(); size]; size];
    for i in 0..l {
        for j in 0..l {
            omega[idx(i, i)][idx(j, j)] = BigInt::one();
            let p = psi_unit(i, j);
            for (r1, row1) in p.iter().enumerate() {
                for (c1, &x) in row1.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (r2, row2) in p.iter().enumerate() {
                        for (c2, &y) in row2.iter().enumerate() {
                            if y != 0 {
                                z[idx(r1, r2)][idx(c1, c2)] += x * y;
                            }
                        }
                    }
                }
            }
        }
    }
    let mul = |a: &[Vec<BigInt>], b: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); size]; size];
        for (i, row) in a.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b[k].iter().enumerate() {
                    if !y.is_zero() {
                        out[i][j] += x * y;
                    }
                }
            }
        }
        out
    };
    let mut acc = omega;
    for _ in 1..n {
        acc = mul(&acc, &z);
    }
    let value: BigInt = (0..size).map(|i| acc[i][i].clone()).sum();
    let closed = BigInt::from(l) * Pow::pow(BigInt::from(2 + 2 * l), n - 1);
    if value != closed {
        return Err(Error::Inconsistent(format!(
            "thin model n = {n}, ℓ = {l}: trace {value} differs from closed form {closed}"
        )));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_models::matrix::omega;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn model_names_round_trip() {
        for m in Model::ALL {
            assert_eq!(m.name().parse::<Model>().unwrap(), m);
        }
        assert_eq!("NC_NC".parse::<Model>().unwrap(), Model::NcNc);
        assert_eq!("GUE_DF".parse::<Model>().unwrap(), Model::GueDf);
        assert!("ising".parse::<Model>().is_err());
        assert_eq!(
            serde_json::to_string(&Model::WishartPt).unwrap(),
            "\"wishart-pt\""
        );
    }

    #[test]
    fn spec_validation() {
        assert!(ModelSpec::new(Model::NcNc, 1, 2, 1, 10, 0)
            .validate()
            .is_err());
        assert!(ModelSpec::new(Model::NcNc, 0, 2, 4, 10, 0)
            .validate()
            .is_err());
        assert!(ModelSpec::new(Model::NcNc, 1, 0, 4, 10, 0)
            .validate()
            .is_err());
        assert!(ModelSpec::new(Model::NcNc, 1, 2, 4, 0, 0)
            .validate()
            .is_err());
        assert!(ModelSpec::new(Model::Thin, 3, 2, 0, 0, 0)
            .validate()
            .is_ok());
        let mut s = ModelSpec::new(Model::GueDf, 1, 2, 4, 10, 0);
        s.variant = NcVariant::Same;
        assert!(s.validate().is_err());
    }

    #[test]
    fn targets() {
        assert_eq!(
            ModelSpec::new(Model::NcNc, 1, 5, 4, 1, 0)
                .exact_target()
                .unwrap(),
            BigInt::from(5)
        );
        assert_eq!(
            ModelSpec::new(Model::NcNc, 2, 2, 4, 1, 0)
                .exact_target()
                .unwrap(),
            BigInt::from(12)
        );
        // Int(2) × NC(2): loops 2,1 over the two bottoms for each top.
        assert_eq!(
            ModelSpec::new(Model::ShallowTop, 2, 2, 4, 1, 0)
                .exact_target()
                .unwrap(),
            BigInt::from(12)
        );
        let mut big = ModelSpec::new(Model::NcNc, 10, 2, 4, 1, 0);
        assert!(matches!(
            big.exact_target(),
            Err(Error::ResourceLimit { .. })
        ));
        big.target_budget = Some(10);
        big.n = 3;
        assert!(big.exact_target().is_ok());
    }

    #[test]
    fn thin_exact_values() {
        assert_eq!(thin_exact(3, 2).unwrap(), BigInt::from(72));
        for n in 1..=8 {
            assert_eq!(thin_exact(n, 1).unwrap(), Pow::pow(BigInt::from(4), n - 1));
        }
        for l in 1..=5 {
            for n in 1..=16 {
                thin_exact(n, l).unwrap();
            }
        }
        assert!(thin_exact(0, 2).is_err());
    }

    #[test]
    fn mean_and_stderr_basics() {
        let (m, s) = mean_and_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0f64 / 3.0).sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(mean_and_stderr(&[7.0]), (7.0, 0.0));
    }

    #[test]
    fn nc_nc_words_match_dense() {
        let (l, d) = (2, 2);
        let mut rng = sample_rng(11, 0, 0);
        let g = sample_ginibre(l, d * d, &mut rng);
        let h = sample_ginibre(l, d * d, &mut rng);
        let a = phi_ginibre_units(&g).unwrap();
        let b = phi_ginibre_units(&h).unwrap();
        let z = tensor_on_omega(&a, &b).unwrap();
        assert!(z.is_hermitian(1e-10));
        assert!(z.is_psd());
        for n in 1..=4 {
            let dense = z.pow(n).unwrap().trace();
            assert!(dense.im.abs() < 1e-8 * dense.norm());
            assert!(close(nc_nc_trace(&a, &b, n).unwrap(), dense.re), "n = {n}");
        }
    }

    #[test]
    fn gue_words_match_dense() {
        let (l, d) = (2, 3);
        let mut rng = sample_rng(12, 0, 0);
        let b: Vec<_> = (0..l).map(|_| sample_gue(d, &mut rng)).collect();
        let mut z = b[0].kron(&b[0].conj());
        for m in &b[1..] {
            z.add_assign(&m.kron(&m.conj()));
        }
        assert!(z.is_hermitian(1e-10));
        for n in 1..=3 {
            let dense = z.pow(2 * n).unwrap().trace().re;
            assert!(close(gue_df_trace(&b, n).unwrap(), dense), "n = {n}");
        }
    }

    #[test]
    fn wishart_words_match_dense() {
        let (l, d) = (2, 3);
        let g = sample_ginibre(d * d, l, &mut sample_rng(13, 0, 0));
        let w = &g * &g.adjoint();
        assert!(w.is_psd());
        let wg = w.partial_transpose((d, d)).unwrap();
        assert!(wg.is_hermitian(1e-10));
        assert!((wg.trace() - w.trace()).norm() < 1e-10);
        let rho = w.scale_real(1.0 / w.trace().re);
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        for n in 1..=3 {
            let dense = wg.pow(2 * n).unwrap().trace().re;
            assert!(close(wishart_pt_trace(&g, d, n).unwrap(), dense), "n = {n}");
        }
    }

    #[test]
    fn shallow_top_matrices_are_literal() {
        let (l, d) = (2, 2);
        let g = sample_ginibre(l, d * d, &mut sample_rng(14, 0, 0));
        let (z0, z) = shallow_top_matrices(&g).unwrap();
        assert_eq!((z0.rows(), z.rows()), (d * l, d * l));
        assert!(z0.is_psd() && z.is_psd());
        // Z₀ = [Φ_G ⊗ id](ω), built from the literal Stinespring map.
        let mut lit = ComplexMatrix::zeros(d * l, d * l);
        for i in 0..l {
            for j in 0..l {
                let e = ComplexMatrix::unit(l, i, j);
                lit.add_assign(
                    &super::super::channels::phi_ginibre(&g, &e)
                        .unwrap()
                        .kron(&e),
                );
            }
        }
        assert!(lit.max_abs_diff(&z0) < 1e-12);
        assert_eq!(omega(l).trace().re, l as f64);
    }

    #[test]
    fn phi_first_moment() {
        let (l, d, draws) = (2, 3, 4000u64);
        let mut acc = ComplexMatrix::zeros(d, d);
        for i in 0..draws {
            let g = sample_ginibre(l, d * d, &mut sample_rng(15, i, 0));
            let y = super::super::channels::phi_ginibre(&g, &ComplexMatrix::identity(l)).unwrap();
            acc.add_assign(&y);
        }
        let mean = acc.scale_real(1.0 / draws as f64);
        let expect = ComplexMatrix::identity(d).scale_real((l * d) as f64);
        assert!(mean.max_abs_diff(&expect) < 0.25, "{:?}", mean);
    }

    #[test]
    fn estimate_is_deterministic() {
        let spec = ModelSpec::new(Model::NcNc, 2, 2, 4, 20, 99);
        let a = estimate(&spec).unwrap();
        let b = estimate(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.samples, 20);
        assert!(a.stderr > 0.0);
        let thin = estimate(&ModelSpec::new(Model::Thin, 3, 2, 0, 0, 0)).unwrap();
        assert_eq!(thin.exact_target, "72");
        assert_eq!(thin.mean, 72.0);
        assert_eq!(thin.samples, 0);
    }

    #[test]
    fn report_json_fields() {
        let r = estimate(&ModelSpec::new(Model::Thin, 2, 1, 8, 5, 3)).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in [
            "model",
            "n",
            "l",
            "d",
            "samples",
            "seed",
            "mean",
            "stderr",
            "exact_target",
        ] {
            assert!(keys.contains(&k), "{k}");
        }
        assert_eq!(v["exact_target"], "4");
        assert_eq!(r.csv_row(), "thin,2,1,8,0,3,4,0,4");
    }
}
