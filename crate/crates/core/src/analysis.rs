//! Exact success probabilities built from per-support class counts.
//!
//! Error model: a weight-`t` error hits each of the `C(n,t)` supports with
//! equal probability, and an error on support `m` lands in each of the
//! `|Q^{m}_S|` classes with equal probability.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::correction::{corrected_class_count, CorrectionTable};
use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::pauli::SupportSet;
use crate::rational::{big_sign, binomial, Rational};
use crate::stabilizer::{StabilizerCode, Syndrome};


fn all_supports(n: usize) -> Vec<SupportSet> {
    (0u32..1 << n)
        .map(|m| SupportSet::from_mask(n, m as u16).expect("mask within n"))
        .collect()
}

/// `f(t)` for `t = 0..=n`: the probability that a random error on `t`
/// uniformly chosen qubits is corrected.
pub fn f_table(code: &StabilizerCode, table: &CorrectionTable) -> Vec<Rational> {
    let n = code.num_qubits();
    let per_support: Vec<(usize, Rational)> = all_supports(n)
        .par_iter()
        .map(|m| {
            let d = decompose(code, m).expect("support sized for code");
            (m.len(), Rational::new(corrected_class_count(&d, table) as i128, d.class_count() as i128))
        })
        .collect();
    let mut sums = vec![Rational::ZERO; n + 1];
    for (t, p) in per_support {
        sums[t] = sums[t] + p;
    }
    sums.into_iter()
        .enumerate()
        .map(|(t, s)| s / Rational::from_integer(binomial(n, t)))
        .collect()
}

/// Monomial coefficients `c_j` with `h(p) = Σ_j c_j p^j`.
pub fn h_poly_from_f(f: &[Rational]) -> Vec<Rational> {
    let n = f.len() - 1;
    let mut c = vec![Rational::ZERO; n + 1];
    for (t, ft) in f.iter().enumerate() {
        if ft.is_zero() {
            continue;
        }
        let base = *ft * Rational::from_integer(binomial(n, t));
        // (1-p)^(n-t) = Σ_i C(n-t, i) (-p)^i
        for i in 0..=n - t {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            c[t + i] = c[t + i] + base * Rational::from_integer(sign * binomial(n - t, i));
        }
    }
    c
}

pub fn h_poly(code: &StabilizerCode, table: &CorrectionTable) -> Vec<Rational> {
    h_poly_from_f(&f_table(code, table))
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

/// `h(p) = Σ_t f(t) C(n,t) p^t (1-p)^(n-t)` in floating point.
pub fn h_eval_f(f: &[Rational], p: f64) -> Result<f64> {
    check_p(p)?;
    let n = f.len() - 1;
    Ok(f.iter()
        .enumerate()
        .map(|(t, ft)| ft.to_f64() * binomial(n, t) as f64 * p.powi(t as i32) * (1.0 - p).powi((n - t) as i32))
        .sum())
}

/// Exact `h(p)` at a rational `p`.
pub fn h_eval_exact(f: &[Rational], p: Rational) -> Rational {
    let n = f.len() - 1;
    let q = Rational::ONE - p;
    f.iter()
        .enumerate()
        .map(|(t, ft)| *ft * Rational::from_integer(binomial(n, t)) * p.pow(t as u32) * q.pow((n - t) as u32))
        .sum()
}

pub fn h_eval(code: &StabilizerCode, table: &CorrectionTable, p: f64) -> Result<f64> {
    h_eval_f(&f_table(code, table), p)
}

/// Evenly spaced `(p, h(p))` samples over `[from, to]`.
pub fn h_curve(f: &[Rational], from: f64, to: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    check_p(from)?;
    check_p(to)?;
    let points = points.max(2);
    (0..points)
        .map(|i| {
            let p = from + (to - from) * i as f64 / (points - 1) as f64;
            Ok((p, h_eval_f(f, p.clamp(0.0, 1.0))?))
        })
        .collect()
}

/// Per-syndrome sums over supports, for every `t`.
///
/// `measured[ε][t] = Σ_{|m|=t, ε attainable} 1/|Q^{m}_S|` and
/// `corrected[ε][t]` the same sum restricted to supports on which φ
/// corrects the class of ε. Dividing by `C(n,t)` gives the probability of
/// measuring ε and of measuring ε and succeeding, for a weight-`t` error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeTally {
    n: usize,
    r: usize,
    measured: Vec<Vec<Rational>>,
    corrected: Vec<Vec<Rational>>,
}

impl SyndromeTally {
    pub fn compute(code: &StabilizerCode, table: &CorrectionTable) -> Self {
        let n = code.num_qubits();
        let r = code.num_generators();
        let width = n + 1;
        let cells = (1usize << r) * width;
        // Counts are kept as multiples of 2^-(2n); every 1/|Q| is one.
        let (measured, corrected) = all_supports(n)
            .par_iter()
            .fold(
                || (vec![0u128; cells], vec![0u128; cells]),
                |(mut meas, mut corr), m| {
                    let d = decompose(code, m).expect("support sized for code");
                    let weight = 1u128 << (2 * n - d.image_dimension());
                    let t = m.len();
                    let dead = d.kernel_has_logical();
                    for (s, g) in d.class_preimages() {
                        let cell = s.index() as usize * width + t;
                        meas[cell] += weight;
                        if !dead && code.logical_class_unchecked(&table.get(&s).mul_unchecked(&g)).is_trivial() {
                            corr[cell] += weight;
                        }
                    }
                    (meas, corr)
                },
            )
            .reduce(
                || (vec![0u128; cells], vec![0u128; cells]),
                |(mut a, mut b), (c, d)| {
                    a.iter_mut().zip(c).for_each(|(x, y)| *x += y);
                    b.iter_mut().zip(d).for_each(|(x, y)| *x += y);
                    (a, b)
                },
            );
        let scale = 1i128 << (2 * n);
        let unpack = |v: Vec<u128>| -> Vec<Vec<Rational>> {
            v.chunks(width)
                .map(|row| row.iter().map(|&c| Rational::new(c as i128, scale)).collect())
                .collect()
        };
        Self { n, r, measured: unpack(measured), corrected: unpack(corrected) }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Probability of measuring `s` given a weight-`t` error.
    pub fn syndrome_probability(&self, s: &Syndrome, t: usize) -> Rational {
        self.measured[s.index() as usize][t] / Rational::from_integer(binomial(self.n, t))
    }

    /// Probability of measuring `s` and then correcting, given weight `t`.
    pub fn joint_success(&self, s: &Syndrome, t: usize) -> Rational {
        self.corrected[s.index() as usize][t] / Rational::from_integer(binomial(self.n, t))
    }

    /// Success probability conditioned on `s` and weight `t`; `None` when
    /// `s` cannot be measured after a weight-`t` error.
    pub fn quality(&self, s: &Syndrome, t: usize) -> Option<Rational> {
        let m = self.measured[s.index() as usize][t];
        (!m.is_zero()).then(|| self.corrected[s.index() as usize][t] / m)
    }

    pub fn syndromes(&self) -> impl Iterator<Item = Syndrome> {
        Syndrome::all(self.r)
    }

    pub fn profile(&self, s: &Syndrome) -> QualityProfile {
        QualityProfile {
            quality: (0..=self.n).map(|t| self.quality(s, t)).collect(),
            probability: (0..=self.n).map(|t| self.syndrome_probability(s, t)).collect(),
        }
    }

    /// Success probability given `s` at per-qubit error rate `p`.
    pub fn marginal_quality(&self, s: &Syndrome, p: f64) -> Result<f64> {
        check_p(p)?;
        let i = s.index() as usize;
        let n = self.n;
        let mut num = 0.0;
        let mut den = 0.0;
        let mut possible = false;
        for t in 0..=n {
            let zero_weight = (p == 0.0 && t > 0) || (p == 1.0 && t < n);
            if zero_weight || self.measured[i][t].is_zero() {
                continue;
            }
            possible = true;
            // C(n,t) cancels against the 1/C(n,t) in both sums
            let w = p.powi(t as i32) * (1.0 - p).powi((n - t) as i32);
            num += self.corrected[i][t].to_f64() * w;
            den += self.measured[i][t].to_f64() * w;
        }
        if !possible {
            return Err(Error::ZeroProbabilitySyndrome(s.to_string()));
        }
        Ok(num / den)
    }
}

/// Per-`t` (quality, syndrome probability) vectors of one syndrome.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QualityProfile {
    pub quality: Vec<Option<Rational>>,
    pub probability: Vec<Rational>,
}

/// Syndromes sharing one quality profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualityGroup {
    pub syndromes: Vec<Syndrome>,
    pub profile: QualityProfile,
}

pub fn syndrome_given_t(code: &StabilizerCode, s: &Syndrome, t: usize) -> Result<Rational> {
    let n = code.num_qubits();
    if s.len() != code.num_generators() {
        return Err(Error::InvalidSyndrome(s.to_string()));
    }
    if t > n {
        return Ok(Rational::ZERO);
    }
    let mut sum = Rational::ZERO;
    for m in SupportSet::all_of_size(n, t)? {
        let d = decompose(code, &m)?;
        if d.attainable(s) {
            sum = sum + Rational::new(1, d.class_count() as i128);
        }
    }
    Ok(sum / Rational::from_integer(binomial(n, t)))
}

pub fn quality_given_t(code: &StabilizerCode, table: &CorrectionTable, s: &Syndrome, t: usize) -> Result<Option<Rational>> {
    let n = code.num_qubits();
    if s.len() != code.num_generators() {
        return Err(Error::InvalidSyndrome(s.to_string()));
    }
    if t > n {
        return Ok(None);
    }
    let (mut good, mut seen) = (Rational::ZERO, Rational::ZERO);
    for m in SupportSet::all_of_size(n, t)? {
        let d = decompose(code, &m)?;
        if !d.attainable(s) {
            continue;
        }
        let w = Rational::new(1, d.class_count() as i128);
        seen = seen + w;
        if crate::correction::condition_holds_in(&d, table, s)? {
            good = good + w;
        }
    }
    Ok((!seen.is_zero()).then(|| good / seen))
}

pub fn quality_marginal(code: &StabilizerCode, table: &CorrectionTable, s: &Syndrome, p: f64) -> Result<f64> {
    if s.len() != code.num_generators() {
        return Err(Error::InvalidSyndrome(s.to_string()));
    }
    SyndromeTally::compute(code, table).marginal_quality(s, p)
}

/// Groups syndromes with identical quality profiles; smaller groups first,
/// ties by smallest member.
pub fn quality_partition_of(tally: &SyndromeTally) -> Vec<QualityGroup> {
    let mut groups: BTreeMap<QualityProfile, Vec<Syndrome>> = BTreeMap::new();
    for s in tally.syndromes() {
        groups.entry(tally.profile(&s)).or_default().push(s);
    }
    let mut out: Vec<QualityGroup> = groups
        .into_iter()
        .map(|(profile, syndromes)| QualityGroup { syndromes, profile })
        .collect();
    out.sort_by(|a, b| a.syndromes.len().cmp(&b.syndromes.len()).then(a.syndromes[0].cmp(&b.syndromes[0])));
    out
}

pub fn quality_partition(code: &StabilizerCode, table: &CorrectionTable) -> Vec<QualityGroup> {
    quality_partition_of(&SyndromeTally::compute(code, table))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossing {
    /// Sign change of `h_A - h_B`, located to within the bisection tolerance.
    Root(f64),
    /// No sign change between the interval ends.
    None,
    /// The two curves coincide.
    Identical,
}

pub const CROSSING_TOLERANCE: f64 = 1e-6;

fn eval_big(coeffs: &[BigRational], p: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::from_integer(0.into()), |acc, c| acc * p + c)
}

/// Locates a root of `h_A - h_B` on `[from, to]` by bisection with exact
/// sign evaluation at rational midpoints.
pub fn crossing_of(f_a: &[Rational], f_b: &[Rational], from: f64, to: f64) -> Result<Crossing> {
    check_p(from)?;
    check_p(to)?;
    let (ha, hb) = (h_poly_from_f(f_a), h_poly_from_f(f_b));
    let len = ha.len().max(hb.len());
    let diff: Vec<BigRational> = (0..len)
        .map(|j| {
            let a = ha.get(j).copied().unwrap_or(Rational::ZERO);
            let b = hb.get(j).copied().unwrap_or(Rational::ZERO);
            (a - b).to_big()
        })
        .collect();
    if diff.iter().all(|c| big_sign(c).is_eq()) {
        return Ok(Crossing::Identical);
    }
    let (mut lo, mut hi) = (Rational::from_f64(from.min(to))?.to_big(), Rational::from_f64(from.max(to))?.to_big());
    let (s_lo, s_hi) = (big_sign(&eval_big(&diff, &lo)), big_sign(&eval_big(&diff, &hi)));
    if s_lo.is_eq() {
        return Ok(Crossing::Root(Rational::big_to_f64(&lo)));
    }
    if s_hi.is_eq() {
        return Ok(Crossing::Root(Rational::big_to_f64(&hi)));
    }
    if s_lo == s_hi {
        return Ok(Crossing::None);
    }
    let two = BigRational::from_integer(2.into());
    let tol = Rational::from_f64(CROSSING_TOLERANCE)?.to_big();
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / &two;
        let s = big_sign(&eval_big(&diff, &mid));
        if s.is_eq() {
            return Ok(Crossing::Root(Rational::big_to_f64(&mid)));
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Crossing::Root(Rational::big_to_f64(&((lo + hi) / two))))
}

pub fn crossing(
    a: (&StabilizerCode, &CorrectionTable),
    b: (&StabilizerCode, &CorrectionTable),
    from: f64,
    to: f64,
) -> Result<Crossing> {
    crossing_of(&f_table(a.0, a.1), &f_table(b.0, b.1), from, to)
}

/// Everything the analysis produces for one (code, table) pair.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub f: Vec<Rational>,
    /// `(f(t), C(n,t))`, the terms of `h`.
    pub h_terms: Vec<(Rational, i128)>,
    pub tally: SyndromeTally,
    pub partition: Vec<QualityGroup>,
}

pub fn analyze(code: &StabilizerCode, table: &CorrectionTable) -> AnalysisReport {
    let f = f_table(code, table);
    let n = code.num_qubits();
    let h_terms = f.iter().enumerate().map(|(t, ft)| (*ft, binomial(n, t))).collect();
    let tally = SyndromeTally::compute(code, table);
    let partition = quality_partition_of(&tally);
    AnalysisReport { f, h_terms, tally, partition }
}
