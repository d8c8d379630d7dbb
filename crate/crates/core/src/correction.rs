//! Error-correction functions φ and the exact success test for an error on a
//! fixed support.
//!
//! After measuring ε, an error on `m` has collapsed onto a random element of
//! the span of `G^{m}_ε`. Recovery by φ(ε) succeeds for a generic error iff
//! `φ(ε)·g ∈ S` for every `g` in the class. Since the class is a coset of
//! the kernel `G^{m} ∩ C(S)`, this holds iff `φ(ε)·rep` is a stabilizer and
//! every kernel element is one as well; both are logical-class checks.

use std::collections::BTreeMap;

use crate::decomposition::{decompose, RestrictedDecomposition};
use crate::error::{Error, Result};
use crate::pauli::{PauliOp, SupportSet};
use crate::rational::Rational;
use crate::stabilizer::{StabilizerCode, Syndrome};

/// A total map from syndromes to recovery operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionTable {
    r: usize,
    entries: Vec<PauliOp>,
}

impl CorrectionTable {
    /// Validates totality, syndrome consistency and that φ(0) is a
    /// stabilizer element.
    pub fn build(code: &StabilizerCode, entries: &[(Syndrome, PauliOp)]) -> Result<Self> {
        let r = code.num_generators();
        let mut slots: Vec<Option<PauliOp>> = vec![None; 1 << r];
        for (s, p) in entries {
            if s.len() != r {
                return Err(Error::InvalidSyndrome(s.to_string()));
            }
            let actual = code.syndrome(p)?;
            if actual != *s {
                return Err(Error::InconsistentEntry {
                    expected: s.to_string(),
                    pauli: p.to_string(),
                    actual: actual.to_string(),
                });
            }
            let slot = &mut slots[s.index() as usize];
            if slot.is_some() {
                return Err(Error::DuplicateSyndrome(s.to_string()));
            }
            *slot = Some(*p);
        }
        let missing: Vec<usize> = (0..slots.len()).filter(|&i| slots[i].is_none()).collect();
        if let Some(&first) = missing.first() {
            return Err(Error::MissingSyndromes {
                count: missing.len(),
                first: Syndrome::from_index(r, first as u32)?.to_string(),
            });
        }
        let entries: Vec<PauliOp> = slots.into_iter().map(|p| p.expect("checked")).collect();
        if !code.in_stabilizer(&entries[0])? {
            return Err(Error::NontrivialZeroEntry(entries[0].to_string()));
        }
        Ok(Self { r, entries })
    }

    pub fn num_syndromes(&self) -> usize {
        self.entries.len()
    }

    pub fn syndrome_len(&self) -> usize {
        self.r
    }

    /// φ(ε). Panics if `s` has the wrong length.
    pub fn get(&self, s: &Syndrome) -> PauliOp {
        assert_eq!(s.len(), self.r, "syndrome length");
        self.entries[s.index() as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Syndrome, PauliOp)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(move |(i, p)| (Syndrome::from_index(self.r, i as u32).expect("in range"), *p))
    }

    /// Replaces one entry, revalidating it against `code`.
    pub fn with_entry(&self, code: &StabilizerCode, s: Syndrome, p: PauliOp) -> Result<Self> {
        let mut entries: Vec<(Syndrome, PauliOp)> = self.iter().collect();
        entries[s.index() as usize] = (s, p);
        Self::build(code, &entries)
    }

    /// Table file format: `<bits> <pauli>` per line, `#` comments allowed.
    pub fn from_text(code: &StabilizerCode, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut seen = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: i + 1, message };
            let mut parts = line.split_whitespace();
            let (Some(bits), Some(pauli), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err("expected \"<syndrome> <pauli>\"".into()));
            };
            let s = Syndrome::parse(bits).map_err(|e| err(e.to_string()))?;
            let p = PauliOp::parse(pauli).map_err(|e| err(e.to_string()))?;
            if s.len() != code.num_generators() {
                return Err(err(format!("syndrome has {} bits, code has {} generators", s.len(), code.num_generators())));
            }
            if p.num_qubits() != code.num_qubits() {
                return Err(err(format!("operator has {} letters, code has {} qubits", p.num_qubits(), code.num_qubits())));
            }
            if seen.insert(s, i + 1).is_some() {
                return Err(err(Error::DuplicateSyndrome(s.to_string()).to_string()));
            }
            entries.push((s, p));
        }
        Self::build(code, &entries)
    }

    pub fn to_text(&self) -> String {
        self.iter().map(|(s, p)| format!("{s} {p}\n")).collect()
    }
}

/// The correctability condition on a prepared decomposition. `Err` when ε cannot occur.
pub fn condition_holds_in(decomp: &RestrictedDecomposition<'_>, table: &CorrectionTable, s: &Syndrome) -> Result<bool> {
    let rep = decomp.representative(s).ok_or_else(|| Error::NotAttainable {
        syndrome: s.to_string(),
        support: decomp.support().to_string(),
    })?;
    if decomp.kernel_has_logical() {
        return Ok(false);
    }
    let product = table.get(s).mul_unchecked(&rep);
    Ok(decomp.code().logical_class_unchecked(&product).is_trivial())
}

pub fn condition_holds(code: &StabilizerCode, table: &CorrectionTable, m: &SupportSet, s: &Syndrome) -> Result<bool> {
    condition_holds_in(&decompose(code, m)?, table, s)
}

/// Number of attainable syndromes on `decomp` that φ corrects.
pub(crate) fn corrected_class_count(decomp: &RestrictedDecomposition<'_>, table: &CorrectionTable) -> u64 {
    if decomp.kernel_has_logical() {
        return 0;
    }
    let code = decomp.code();
    decomp
        .class_preimages()
        .filter(|(s, g)| code.logical_class_unchecked(&table.get(s).mul_unchecked(g)).is_trivial())
        .count() as u64
}

/// Probability that a random error on `m` is corrected: corrected classes
/// over `|Q^{m}_S|`.
pub fn correction_probability(code: &StabilizerCode, table: &CorrectionTable, m: &SupportSet) -> Result<Rational> {
    let d = decompose(code, m)?;
    Ok(Rational::new(corrected_class_count(&d, table) as i128, d.class_count() as i128))
}
