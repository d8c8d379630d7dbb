//! Exhaustive search for the best correction function.
//!
//! For a syndrome ε, the candidates are the `4^k` logical classes of φ(ε)
//! relative to a fixed base operator of syndrome ε. On a support `m` that
//! can produce ε, exactly one candidate corrects the whole class (none if the
//! kernel holds a logical), so each `(m, ε)` cell credits `1/|Q^{m}_S|` to a
//! single candidate. Every objective of the form `Σ_t w_t f(t)` is a sum of
//! such cells, so maximizing each syndrome independently is globally optimal.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;

use crate::correction::CorrectionTable;
use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::pauli::{enumerate_restricted, PauliOp, SupportSet};
use crate::rational::Rational;
use crate::stabilizer::{LogicalClass, StabilizerCode, Syndrome, MAX_SCAN_QUBITS};

pub const MAX_SEARCH_LOGICAL: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Objective {
    /// Maximize the score vector in lexicographic order of increasing `t`
    /// (optimal as `p -> 0+`).
    Lex,
    /// Maximize the success probability at a fixed per-qubit error rate.
    FixedP(f64),
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "lex" {
            return Ok(Objective::Lex);
        }
        let value = s.strip_prefix("p=").or_else(|| s.strip_prefix("fixed-p:")).ok_or_else(|| Error::UnknownObjective(s.into()))?;
        let p: f64 = value.parse().map_err(|_| Error::UnknownObjective(s.into()))?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        Ok(Objective::FixedP(p))
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Lex => f.write_str("lex"),
            Objective::FixedP(p) => write!(f, "p={p}"),
        }
    }
}

/// Scores of every logical-class candidate for one syndrome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeScore {
    pub syndrome: Syndrome,
    /// Candidate `c` stands for `base · L_c`.
    pub base: PauliOp,
    /// `scores[c][t] = Σ_{|m|=t} [φ_c(ε) corrects G^{m}_ε] / |Q^{m}_S|`.
    pub scores: Vec<Vec<Rational>>,
}

impl SyndromeScore {
    pub fn candidate(&self, code: &StabilizerCode, c: LogicalClass) -> PauliOp {
        self.base.mul_unchecked(&code.logical_representative(c))
    }

    /// Candidates with the maximal score under `objective`.
    pub fn best(&self, n: usize, objective: Objective) -> Vec<LogicalClass> {
        let keys: Vec<ScoreKey> = self.scores.iter().map(|v| ScoreKey::new(v, n, objective)).collect();
        let top = keys.iter().max().expect("at least one candidate");
        (0..keys.len()).filter(|&c| &keys[c] == top).map(|c| LogicalClass(c as u32)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum ScoreKey {
    Lex(Vec<Rational>),
    Weighted(BigRational),
}

impl ScoreKey {
    fn new(scores: &[Rational], n: usize, objective: Objective) -> Self {
        match objective {
            Objective::Lex => ScoreKey::Lex(scores.to_vec()),
            Objective::FixedP(p) => {
                let p = Rational::from_f64(p).expect("p in [0,1]").to_big();
                let q = BigRational::from_integer(1.into()) - &p;
                let total = scores
                    .iter()
                    .enumerate()
                    .map(|(t, s)| s.to_big() * pow(&p, t) * pow(&q, n - t))
                    .fold(BigRational::from_integer(0.into()), |a, b| a + b);
                ScoreKey::Weighted(total)
            }
        }
    }
}

fn pow(v: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::from_integer(1.into()), |acc, _| acc * v)
}

fn check_searchable(code: &StabilizerCode) -> Result<()> {
    let k = code.num_logical();
    if k > MAX_SEARCH_LOGICAL {
        return Err(Error::TooManyLogicalQubits { k, max: MAX_SEARCH_LOGICAL });
    }
    if code.num_qubits() > MAX_SCAN_QUBITS {
        return Err(Error::CodeTooLarge { what: "search", n: code.num_qubits(), max: MAX_SCAN_QUBITS });
    }
    Ok(())
}

fn bases(code: &StabilizerCode) -> Vec<PauliOp> {
    Syndrome::all(code.num_generators())
        .map(|s| code.pauli_with_syndrome(&s).expect("syndrome length"))
        .collect()
}

/// Scores for a single syndrome.
pub fn per_syndrome_scores(code: &StabilizerCode, s: &Syndrome) -> Result<SyndromeScore> {
    check_searchable(code)?;
    let base = code.pauli_with_syndrome(s)?;
    per_syndrome_scores_with_base(code, s, base)
}

/// Scores for `s` relative to a caller-chosen base operator of syndrome `s`.
pub fn per_syndrome_scores_with_base(code: &StabilizerCode, s: &Syndrome, base: PauliOp) -> Result<SyndromeScore> {
    let n = code.num_qubits();
    if code.syndrome(&base)? != *s {
        return Err(Error::InvalidSyndrome(format!("base {base} does not have syndrome {s}")));
    }
    let candidates = code.num_logical_classes() as usize;
    let mut scores = vec![vec![Rational::ZERO; n + 1]; candidates];
    for mask in 0u32..1 << n {
        let m = SupportSet::from_mask(n, mask as u16)?;
        let d = decompose(code, &m)?;
        if d.kernel_has_logical() {
            continue;
        }
        if let Some(rep) = d.representative(s) {
            let c = code.logical_class_unchecked(&base.mul_unchecked(&rep));
            let cell = &mut scores[c.0 as usize][m.len()];
            *cell = *cell + Rational::new(1, d.class_count() as i128);
        }
    }
    Ok(SyndromeScore { syndrome: *s, base, scores })
}

/// Scores for every syndrome in one pass over the supports.
pub fn all_scores(code: &StabilizerCode) -> Result<Vec<SyndromeScore>> {
    check_searchable(code)?;
    let n = code.num_qubits();
    let r = code.num_generators();
    let bases = bases(code);
    let candidates = code.num_logical_classes() as usize;
    let width = n + 1;
    let cells = (1usize << r) * candidates * width;
    let supports: Vec<SupportSet> = (0u32..1 << n).map(|m| SupportSet::from_mask(n, m as u16)).collect::<Result<_>>()?;
    // multiples of 2^-(2n), as in the analysis tally
    let counts = supports
        .par_iter()
        .fold(
            || vec![0u128; cells],
            |mut acc, m| {
                let d = decompose(code, m).expect("support sized for code");
                if d.kernel_has_logical() {
                    return acc;
                }
                let weight = 1u128 << (2 * n - d.image_dimension());
                for (s, g) in d.class_preimages() {
                    let c = code.logical_class_unchecked(&bases[s.index() as usize].mul_unchecked(&g));
                    acc[(s.index() as usize * candidates + c.0 as usize) * width + m.len()] += weight;
                }
                acc
            },
        )
        .reduce(
            || vec![0u128; cells],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let scale = 1i128 << (2 * n);
    Ok(Syndrome::all(r)
        .map(|s| {
            let i = s.index() as usize;
            let scores = (0..candidates)
                .map(|c| {
                    let at = (i * candidates + c) * width;
                    counts[at..at + width].iter().map(|&v| Rational::new(v as i128, scale)).collect()
                })
                .collect();
            SyndromeScore { syndrome: s, base: bases[i], scores }
        })
        .collect())
}

/// Minimal-weight, then letter-order-minimal operator in each
/// `(syndrome, candidate)` coset, indexed `[ε][c]`.
fn coset_minima(code: &StabilizerCode, bases: &[PauliOp]) -> Vec<Vec<PauliOp>> {
    let n = code.num_qubits();
    let candidates = code.num_logical_classes() as usize;
    let all = SupportSet::all(n).expect("n checked");
    let mut best: Vec<Vec<Option<PauliOp>>> = vec![vec![None; candidates]; bases.len()];
    for g in enumerate_restricted(&all) {
        let s = code.syndrome_unchecked(&g);
        let c = code.logical_class_unchecked(&g.mul_unchecked(&bases[s.index() as usize]));
        let slot = &mut best[s.index() as usize][c.0 as usize];
        let better = match slot {
            None => true,
            Some(cur) => (g.weight(), g) < (cur.weight(), *cur),
        };
        if better {
            *slot = Some(g);
        }
    }
    best.into_iter()
        .map(|row| row.into_iter().map(|p| p.expect("every coset is nonempty")).collect())
        .collect()
}

/// Builds the table maximizing `objective`, one syndrome at a time. Ties go
/// to the candidate whose lightest concrete operator has minimal weight, then
/// comes first in letter order; that operator is stored.
pub fn optimize_table(code: &StabilizerCode, objective: Objective) -> Result<CorrectionTable> {
    if let Objective::FixedP(p) = objective {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
    }
    let scores = all_scores(code)?;
    let bases: Vec<PauliOp> = scores.iter().map(|s| s.base).collect();
    let minima = coset_minima(code, &bases);
    let n = code.num_qubits();
    let entries: Vec<(Syndrome, PauliOp)> = scores
        .par_iter()
        .map(|sc| {
            let row = &minima[sc.syndrome.index() as usize];
            let choice = sc
                .best(n, objective)
                .into_iter()
                .map(|c| row[c.0 as usize])
                .min_by(|a, b| (a.weight(), *a).cmp(&(b.weight(), *b)))
                .expect("at least one candidate");
            (sc.syndrome, choice)
        })
        .collect();
    CorrectionTable::build(code, &entries)
}

/// Whether two tables choose the same logical class for every syndrome.
pub fn tables_equivalent(code: &StabilizerCode, a: &CorrectionTable, b: &CorrectionTable) -> bool {
    a.iter().zip(b.iter()).all(|((_, pa), (_, pb))| code.in_stabilizer(&pa.mul_unchecked(&pb)).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::f_table;
    use crate::builtin::Builtin;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    fn syn(s: &str) -> Syndrome {
        Syndrome::parse(s).unwrap()
    }

    #[test]
    fn objective_parsing() {
        assert_eq!("lex".parse::<Objective>().unwrap(), Objective::Lex);
        assert_eq!("p=0.1".parse::<Objective>().unwrap(), Objective::FixedP(0.1));
        assert!(matches!("p=1.5".parse::<Objective>(), Err(Error::ProbabilityOutOfRange(_))));
        assert!("best".parse::<Objective>().is_err());
        let code = Builtin::Five.code();
        assert!(matches!(optimize_table(&code, Objective::FixedP(-0.5)), Err(Error::ProbabilityOutOfRange(_))));
    }

    #[test]
    fn five_qubit_unique_optimum() {
        let (code, table) = Builtin::Five.load();
        let sc = per_syndrome_scores(&code, &syn("0101")).unwrap();
        let best = sc.best(5, Objective::Lex);
        assert_eq!(best.len(), 1);
        let chosen = sc.candidate(&code, best[0]);
        assert!(code.in_stabilizer(&chosen.multiply(&PauliOp::parse("IZIII").unwrap()).unwrap()).unwrap());
        let opt = optimize_table(&code, Objective::Lex).unwrap();
        assert!(tables_equivalent(&code, &opt, &table));
        assert_eq!(opt, table);
    }

    #[test]
    fn zero_syndrome_trivial_candidate() {
        let code = Builtin::Steane.code();
        let sc = per_syndrome_scores(&code, &syn("000000")).unwrap();
        let trivial = sc
            .scores
            .iter()
            .enumerate()
            .find(|(c, _)| code.in_stabilizer(&sc.candidate(&code, LogicalClass(*c as u32))).unwrap())
            .unwrap();
        assert_eq!(trivial.1[0], Rational::ONE);
        for (c, v) in sc.scores.iter().enumerate() {
            if c != trivial.0 {
                assert_eq!(v[0], Rational::ZERO);
            }
        }
    }

    #[test]
    fn shor_ties() {
        let code = Builtin::Shor.code();
        let scores = all_scores(&code).unwrap();
        // single-qubit errors with a shared syndrome are stabilizer-equivalent,
        // so no syndrome splits nonzero weight-<=1 credit between candidates
        let low_split = scores.iter().any(|sc| {
            let low = |c: usize| sc.scores[c][..2].to_vec();
            let top = (0..4).map(low).max().unwrap();
            (0..4).filter(|&c| low(c) == top).count() > 1 && top.iter().any(|v| !v.is_zero())
        });
        assert!(!low_split);
        let tied = scores.iter().filter(|sc| sc.best(9, Objective::Lex).len() > 1).count();
        assert_eq!(tied, 126);
    }

    #[test]
    fn lex_and_fixed_p_agree_on_builtins() {
        for b in Builtin::ALL {
            let code = b.code();
            let lex = optimize_table(&code, Objective::Lex).unwrap();
            let fixed = optimize_table(&code, Objective::FixedP(0.1)).unwrap();
            assert!(tables_equivalent(&code, &lex, &fixed), "{b}");
        }
    }

    #[test]
    fn separability_under_perturbation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for b in Builtin::ALL {
            let code = b.code();
            let opt = optimize_table(&code, Objective::Lex).unwrap();
            let best = f_table(&code, &opt);
            let r = code.num_generators();
            for _ in 0..100 {
                // the zero syndrome must stay trivial
                let s = Syndrome::from_index(r, rng.random_range(1..1u32 << r)).unwrap();
                let c = LogicalClass(rng.random_range(1..code.num_logical_classes()));
                let alt = opt.get(&s).mul_unchecked(&code.logical_representative(c));
                let perturbed = opt.with_entry(&code, s, alt).unwrap();
                assert!(f_table(&code, &perturbed) <= best, "{b} {s}");
            }
        }
    }

    #[test]
    fn single_pass_matches_per_syndrome() {
        let code = Builtin::Steane.code();
        let all = all_scores(&code).unwrap();
        for s in ["000000", "000111", "110011", "101101"] {
            let s = syn(s);
            assert_eq!(per_syndrome_scores(&code, &s).unwrap(), all[s.index() as usize]);
        }
    }

    #[test]
    fn scores_independent_of_base_choice() {
        let code = Builtin::Shor.code();
        let stab = code.stabilizer_elements();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let s = Syndrome::from_index(8, rng.random_range(0..256)).unwrap();
            let a = per_syndrome_scores(&code, &s).unwrap();
            let shifted = a.base.multiply(&stab[rng.random_range(0..stab.len())]).unwrap();
            let b = per_syndrome_scores_with_base(&code, &s, shifted).unwrap();
            assert_eq!(a.scores, b.scores);
        }
    }

    #[test]
    fn steane_search_reproduces_css_table() {
        let (code, table) = Builtin::Steane.load();
        let opt = optimize_table(&code, Objective::Lex).unwrap();
        // several candidates tie for weight-2 syndromes; the CSS choice is
        // always among the optima
        let scores = all_scores(&code).unwrap();
        for (s, p) in table.iter() {
            let sc = &scores[s.index() as usize];
            let class = code.logical_class(&p.mul_unchecked(&sc.base)).unwrap();
            assert!(sc.best(7, Objective::Lex).contains(&class), "{s}");
        }
        assert_eq!(f_table(&code, &table), f_table(&code, &opt));
        assert_eq!(
            f_table(&code, &opt),
            vec![q(1, 1), q(1, 1), q(9, 16), q(5, 16), q(5, 64), q(0, 1), q(0, 1), q(0, 1)]
        );
    }

    #[test]
    fn shor_search_values() {
        let code = Builtin::Shor.code();
        let opt = optimize_table(&code, Objective::Lex).unwrap();
        let f = f_table(&code, &opt);
        assert_eq!(f[0], Rational::ONE);
        assert_eq!(f[1], Rational::ONE);
        assert_eq!(f[2], q(51, 64));
        assert_eq!(f[3], q(45, 112));
        assert_eq!(f[4], q(15, 128));
        assert!(f[5..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn stored_shor_table_regenerates() {
        let (code, stored) = Builtin::Shor.load();
        let opt = optimize_table(&code, Objective::Lex).unwrap();
        assert_eq!(opt.to_text(), stored.to_text());
    }
}
