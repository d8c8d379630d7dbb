//! Dense statevector ground truth.
//!
//! Everything here works on explicit amplitudes and signed Pauli matrices,
//! sharing nothing with the symplectic engine beyond the operator type.
//! Basis index bit `q - 1` is the state of qubit `q`. Y is the real matrix
//! `[[0, 1], [-1, 0]] = Z·X`; an operator with an odd number of Y letters is
//! then anti-Hermitian, so measured observables carry an extra factor `i`.

use std::collections::{HashMap, HashSet};

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::correction::CorrectionTable;
use crate::error::{Error, Result};
use crate::pauli::{enumerate_restricted, PauliOp, SupportSet};
use crate::rational::Rational;
use crate::stabilizer::{StabilizerCode, Syndrome};

pub const MAX_ORACLE_QUBITS: usize = 10;
pub const MAX_ENUMERATE_SUPPORT: usize = 4;
pub const FIDELITY_THRESHOLD: f64 = 1.0 - 1e-8;

const CODEWORD_ATTEMPTS: usize = 16;
const ZERO_NORM: f64 = 1e-12;

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ORACLE_QUBITS {
        return Err(Error::CodeTooLarge { what: "statevector oracle", n, max: MAX_ORACLE_QUBITS });
    }
    Ok(())
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}

/// Signed real matrix of `p` applied to `v`.
fn apply_signed(p: &PauliOp, v: &[Complex64]) -> Vec<Complex64> {
    let x = p.x_mask() as usize;
    let z = p.z_mask() as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (i, a) in v.iter().enumerate() {
        let j = i ^ x;
        out[j] = if (z & j).count_ones() % 2 == 1 { -a } else { *a };
    }
    out
}

/// Hermitian observable for `p`: the signed matrix, times `i` when Y appears
/// an odd number of times.
fn apply_observable(p: &PauliOp, v: &[Complex64]) -> Vec<Complex64> {
    let mut out = apply_signed(p, v);
    if p.y_count() % 2 == 1 {
        out.iter_mut().for_each(|a| *a *= Complex64::i());
    }
    out
}

/// `(I + sign·O)/2 v` for the observable `O` of `p`.
fn project(p: &PauliOp, v: &[Complex64], minus: bool) -> Vec<Complex64> {
    let o = apply_observable(p, v);
    v.iter().zip(o).map(|(a, b)| if minus { (a - b) * 0.5 } else { (a + b) * 0.5 }).collect()
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// A normalized state on `n ≤ 10` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Normalizes `amplitudes`, whose length must be `2^n`.
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_size(n)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::SizeMismatch { left: 1 << n, right: amplitudes.len() });
        }
        Self::normalized(n, amplitudes)
    }

    fn normalized(n: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = norm_sqr(&amplitudes).sqrt();
        if norm < ZERO_NORM {
            return Err(Error::ZeroNormState);
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector { n, amplitudes })
    }

    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_size(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        *amplitudes.get_mut(index).ok_or_else(|| Error::InvalidSupport(format!("basis index {index} out of range")))? = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amplitudes })
    }

    /// Haar-random state from i.i.d. Gaussian amplitudes.
    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        check_size(n)?;
        Self::normalized(n, (0..1 << n).map(|_| gaussian(rng)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.amplitudes).sqrt()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|⟨self|other⟩|`, insensitive to global phase.
    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm()
    }

    fn check_operator(&self, p: &PauliOp) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: p.num_qubits() });
        }
        Ok(())
    }

    /// Applies the signed real matrix of `p`.
    pub fn apply_pauli(&self, p: &PauliOp) -> Result<Self> {
        self.check_operator(p)?;
        Ok(StateVector { n: self.n, amplitudes: apply_signed(p, &self.amplitudes) })
    }

    /// `⟨ψ|O|ψ⟩` for the Hermitian observable of `p`.
    pub fn expectation(&self, p: &PauliOp) -> Result<f64> {
        self.check_operator(p)?;
        let o = apply_observable(p, &self.amplitudes);
        Ok(self.amplitudes.iter().zip(o).map(|(a, b)| a.conj() * b).sum::<Complex64>().re)
    }

    /// Probability of the `-1` outcome when measuring `p`.
    pub fn minus_probability(&self, p: &PauliOp) -> Result<f64> {
        self.check_operator(p)?;
        Ok(norm_sqr(&project(p, &self.amplitudes, true)))
    }

    /// Born-rule measurement of `p`; returns `true` for the `-1` outcome and
    /// the collapsed state.
    pub fn measure(&self, p: &PauliOp, rng: &mut impl Rng) -> Result<(bool, Self)> {
        let prob_minus = self.minus_probability(p)?.clamp(0.0, 1.0);
        let minus = rng.random::<f64>() < prob_minus;
        let post = Self::normalized(self.n, project(p, &self.amplitudes, minus))?;
        Ok((minus, post))
    }
}

/// Fresh random state in the code space: a random state projected by
/// `(I + g_i)/2` for every generator.
pub fn random_codeword(code: &StabilizerCode, rng: &mut impl Rng) -> Result<StateVector> {
    let n = code.num_qubits();
    check_size(n)?;
    for _ in 0..CODEWORD_ATTEMPTS {
        let mut v = StateVector::random(n, rng)?.amplitudes;
        for g in code.generators() {
            v = project(g, &v, false);
        }
        if norm_sqr(&v) > 1e-6 {
            return StateVector::normalized(n, v);
        }
    }
    Err(Error::ProjectionFailed(CODEWORD_ATTEMPTS))
}

/// Trace of the code-space projector, computed column by column.
pub fn code_space_dimension(code: &StabilizerCode) -> Result<usize> {
    let n = code.num_qubits();
    check_size(n)?;
    let mut trace = 0.0;
    for i in 0..1usize << n {
        let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
        v[i] = Complex64::new(1.0, 0.0);
        for g in code.generators() {
            v = project(g, &v, false);
        }
        trace += v[i].re;
    }
    Ok(trace.round() as usize)
}

/// `E = Σ a_g g` over the operators supported in `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomError {
    support: SupportSet,
    /// Indexed in `enumerate_restricted` order.
    coefficients: Vec<Complex64>,
}

impl RandomError {
    pub fn new(support: SupportSet, coefficients: Vec<Complex64>) -> Result<Self> {
        let want = 1usize << (2 * support.len());
        if coefficients.len() != want {
            return Err(Error::SizeMismatch { left: want, right: coefficients.len() });
        }
        if coefficients.iter().all(|a| a.norm_sqr() == 0.0) {
            return Err(Error::ZeroNormState);
        }
        Ok(RandomError { support, coefficients })
    }

    /// Error from explicit terms; the support is the union of the terms'
    /// supports and missing coefficients are zero.
    pub fn from_terms(n: usize, terms: &[(PauliOp, Complex64)]) -> Result<Self> {
        let mut mask = 0u16;
        for (p, _) in terms {
            if p.num_qubits() != n {
                return Err(Error::SizeMismatch { left: n, right: p.num_qubits() });
            }
            mask |= p.support().mask();
        }
        let support = SupportSet::from_mask(n, mask)?;
        let mut coefficients = vec![Complex64::new(0.0, 0.0); 1 << (2 * support.len())];
        for (p, a) in terms {
            coefficients[support.restricted_index(p).expect("inside union") as usize] += a;
        }
        Self::new(support, coefficients)
    }

    /// i.i.d. standard complex Gaussian coefficients.
    pub fn gaussian(support: SupportSet, rng: &mut impl Rng) -> Self {
        let coefficients = (0..1usize << (2 * support.len())).map(|_| gaussian(rng)).collect();
        RandomError { support, coefficients }
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn terms(&self) -> impl Iterator<Item = (PauliOp, Complex64)> + '_ {
        enumerate_restricted(&self.support).zip(self.coefficients.iter().copied())
    }

    /// Normalized `E|ψ⟩`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if self.support.num_qubits() != psi.n {
            return Err(Error::SizeMismatch { left: psi.n, right: self.support.num_qubits() });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); psi.amplitudes.len()];
        for (g, a) in self.terms() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(apply_signed(&g, &psi.amplitudes)) {
                *o += a * v;
            }
        }
        StateVector::normalized(psi.n, out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub syndrome: Syndrome,
    pub success: bool,
    pub fidelity: f64,
}

/// Applies `error` to `psi`, measures every generator in order, applies the
/// table's correction and compares against `psi`.
pub fn simulate_trial(
    code: &StabilizerCode,
    table: &CorrectionTable,
    error: &RandomError,
    psi: &StateVector,
    rng: &mut impl Rng,
) -> Result<TrialOutcome> {
    if table.syndrome_len() != code.num_generators() {
        return Err(Error::SizeMismatch { left: code.num_generators(), right: table.syndrome_len() });
    }
    let mut state = error.apply(psi)?;
    let mut value = 0u32;
    for g in code.generators() {
        let (minus, post) = state.measure(g, rng)?;
        value = (value << 1) | minus as u32;
        state = post;
    }
    let syndrome = Syndrome::from_index(code.num_generators(), value)?;
    let corrected = state.apply_pauli(&table.get(&syndrome))?;
    let fidelity = psi.fidelity(&corrected);
    Ok(TrialOutcome { syndrome, success: fidelity >= FIDELITY_THRESHOLD, fidelity })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub trials: u64,
    pub successes: u64,
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    fn from_counts(trials: u64, successes: u64) -> Self {
        let mean = successes as f64 / trials as f64;
        let std_error = (mean * (1.0 - mean) / trials as f64).sqrt();
        Estimate { trials, successes, mean, std_error }
    }
}

/// Independent generator for trial `index` under `seed`.
fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One Monte Carlo trial on a fixed support with Gaussian coefficients and a
/// fresh codeword.
fn gaussian_trial(code: &StabilizerCode, table: &CorrectionTable, m: SupportSet, rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    let psi = random_codeword(code, rng)?;
    let error = RandomError::gaussian(m, rng);
    simulate_trial(code, table, &error, &psi, rng)
}

/// Runs `trials` seeded trials on the fixed support `m`, in parallel.
pub fn run_trials(code: &StabilizerCode, table: &CorrectionTable, m: &SupportSet, trials: u64, seed: u64) -> Result<Vec<TrialOutcome>> {
    check_size(code.num_qubits())?;
    if m.num_qubits() != code.num_qubits() {
        return Err(Error::SizeMismatch { left: code.num_qubits(), right: m.num_qubits() });
    }
    (0..trials)
        .into_par_iter()
        .map(|i| gaussian_trial(code, table, *m, &mut trial_rng(seed, i)))
        .collect()
}

/// Monte Carlo estimate of `f(t)`: each trial picks a uniform support of
/// size `t`.
pub fn estimate_f(code: &StabilizerCode, table: &CorrectionTable, t: usize, trials: u64, seed: u64) -> Result<Estimate> {
    let n = code.num_qubits();
    check_size(n)?;
    if trials == 0 {
        return Err(Error::InvalidSupport("at least one trial is required".into()));
    }
    if t > n {
        return Err(Error::InvalidSupport(format!("support size {t} exceeds {n} qubits")));
    }
    let successes = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let qubits: Vec<usize> = sample(&mut rng, n, t).into_iter().map(|q| q + 1).collect();
            let m = SupportSet::new(n, &qubits)?;
            Ok(gaussian_trial(code, table, m, &mut rng)?.success as u64)
        })
        .sum::<Result<u64>>()?;
    Ok(Estimate::from_counts(trials, successes))
}

/// Brute-force correction probability on `m`: group by syndrome, then check
/// every element of every class against the full stabilizer set.
pub fn enumerate_check(code: &StabilizerCode, table: &CorrectionTable, m: &SupportSet) -> Result<Rational> {
    if m.len() > MAX_ENUMERATE_SUPPORT {
        return Err(Error::InvalidSupport(format!("brute force is limited to {MAX_ENUMERATE_SUPPORT} qubits, got {}", m.len())));
    }
    if m.num_qubits() != code.num_qubits() {
        return Err(Error::SizeMismatch { left: code.num_qubits(), right: m.num_qubits() });
    }
    let stabilizer: HashSet<PauliOp> = code.stabilizer_elements().into_iter().collect();
    let mut classes: HashMap<Syndrome, Vec<PauliOp>> = HashMap::new();
    for g in enumerate_restricted(m) {
        classes.entry(code.syndrome(&g)?).or_default().push(g);
    }
    let mut corrected = 0i128;
    for (s, members) in &classes {
        let phi = table.get(s);
        if members.iter().all(|g| stabilizer.contains(&phi.multiply(g).expect("same length"))) {
            corrected += 1;
        }
    }
    Ok(Rational::new(corrected, classes.len() as i128))
}
