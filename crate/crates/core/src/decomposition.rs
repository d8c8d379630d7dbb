//! Coset structure of the operators supported on a fixed set of qubits.
//!
//! For a support `m` with `l` qubits, `G^{m}` has `4^l` elements. The
//! syndrome map restricted to it is linear; its kernel is
//! `G^{m} ∩ C(S)` (dimension κ) and its image is the subspace of syndromes
//! that can be measured after an error on `m`. Each attainable syndrome
//! labels one class `G^{m}_ε`, a coset of the kernel.

use crate::error::{Error, Result};
use crate::gf2::Echelon;
use crate::pauli::{PauliOp, SupportSet};
use crate::stabilizer::{LogicalClass, StabilizerCode, Syndrome};

/// Largest support whose classes may be listed element by element.
pub const MAX_MATERIALIZE: usize = 8;

#[derive(Debug, Clone)]
pub struct RestrictedDecomposition<'a> {
    code: &'a StabilizerCode,
    support: SupportSet,
    /// key: syndrome value, payload: restricted index of a preimage
    image: Echelon,
    /// key: restricted index (reduced echelon form)
    kernel: Echelon,
    kernel_basis: Vec<PauliOp>,
    kernel_flags: Vec<LogicalClass>,
}

pub fn decompose<'a>(code: &'a StabilizerCode, support: &SupportSet) -> Result<RestrictedDecomposition<'a>> {
    if support.num_qubits() != code.num_qubits() {
        return Err(Error::SizeMismatch { left: code.num_qubits(), right: support.num_qubits() });
    }
    let l = support.len();
    let mut image = Echelon::new();
    let mut kernel = Echelon::new();
    for b in 0..2 * l {
        let idx = 1u32 << b;
        let g = support.restricted_element(idx);
        let s = code.syndrome_unchecked(&g);
        if let Some(k) = image.insert(s.index() as u64, idx as u64) {
            kernel.insert(k, 0);
        }
    }
    let kernel_basis: Vec<PauliOp> = kernel.rows().map(|(k, _)| support.restricted_element(k as u32)).collect();
    let kernel_flags = kernel_basis.iter().map(|g| code.logical_class_unchecked(g)).collect();
    Ok(RestrictedDecomposition { code, support: *support, image, kernel, kernel_basis, kernel_flags })
}

impl<'a> RestrictedDecomposition<'a> {
    pub fn code(&self) -> &'a StabilizerCode {
        self.code
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    /// κ, the dimension of `G^{m} ∩ C(S)` modulo phase.
    pub fn kernel_dimension(&self) -> usize {
        self.kernel.rank()
    }

    pub fn kernel_basis(&self) -> &[PauliOp] {
        &self.kernel_basis
    }

    pub fn kernel_flags(&self) -> &[LogicalClass] {
        &self.kernel_flags
    }

    /// True when some element of the kernel is a nontrivial logical
    /// operator; then no class on this support can be corrected.
    pub fn kernel_has_logical(&self) -> bool {
        self.kernel_flags.iter().any(|c| !c.is_trivial())
    }

    /// Dimension of the attainable-syndrome subspace, `2l - κ`.
    pub fn image_dimension(&self) -> usize {
        self.image.rank()
    }

    /// `|Q^{m}_S| = 2^(2l - κ)`.
    pub fn class_count(&self) -> u64 {
        1u64 << self.image.rank()
    }

    pub fn attainable(&self, s: &Syndrome) -> bool {
        s.len() == self.code.num_generators() && self.image.contains(s.index() as u64)
    }

    /// The first element of `G^{m}_ε` in enumeration order.
    pub fn representative(&self, s: &Syndrome) -> Option<PauliOp> {
        if s.len() != self.code.num_generators() {
            return None;
        }
        let (rest, idx) = self.image.reduce(s.index() as u64);
        if rest != 0 {
            return None;
        }
        let (canonical, _) = self.kernel.reduce(idx);
        Some(self.support.restricted_element(canonical as u32))
    }

    /// Attainable syndromes in increasing order.
    pub fn attainable_syndromes(&self) -> Vec<Syndrome> {
        let mut out: Vec<Syndrome> = self.class_preimages().map(|(s, _)| s).collect();
        out.sort();
        out
    }

    /// Every attainable syndrome with some (not necessarily canonical)
    /// element of its class.
    pub fn class_preimages(&self) -> impl Iterator<Item = (Syndrome, PauliOp)> + '_ {
        let rows: Vec<(u64, u64)> = self.image.rows().collect();
        let r = self.code.num_generators();
        (0u64..1 << rows.len()).map(move |mask| {
            let (mut s, mut idx) = (0u64, 0u64);
            for (i, &(k, p)) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s ^= k;
                    idx ^= p;
                }
            }
            (
                Syndrome::from_index(r, s as u32).expect("syndrome within r bits"),
                self.support.restricted_element(idx as u32),
            )
        })
    }

    /// `G^{m}_ε`: all `2^κ` elements of the class, sorted.
    pub fn class_elements(&self, s: &Syndrome) -> Result<Vec<PauliOp>> {
        if self.support.len() > MAX_MATERIALIZE {
            return Err(Error::MaterializationTooLarge { size: self.support.len(), max: MAX_MATERIALIZE });
        }
        let rep = self.representative(s).ok_or_else(|| Error::NotAttainable {
            syndrome: s.to_string(),
            support: self.support.to_string(),
        })?;
        let mut out: Vec<PauliOp> = (0u64..1 << self.kernel_basis.len())
            .map(|mask| {
                self.kernel_basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(rep, |acc, (_, k)| acc.mul_unchecked(k))
            })
            .collect();
        out.sort();
        Ok(out)
    }
}
