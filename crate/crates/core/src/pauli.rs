//! Phase-free n-qubit Pauli operators as binary symplectic vectors.
//!
//! An operator is stored as two bit masks `x` and `z`; bit `q - 1` of each
//! mask describes qubit `q` (qubits are 1-based in all text I/O, qubit 1 is
//! the leftmost letter). Phases are not tracked, so the group law is plain XOR.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported qubit count; `x` and `z` each fit in a `u16`.
pub const MAX_QUBITS: usize = 16;

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (false, true) => Letter::Z,
            (true, true) => Letter::Y,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Z => (false, true),
            Letter::Y => (true, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// A Pauli operator modulo phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOp {
    n: u8,
    x: u16,
    z: u16,
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        Err(Error::TooManyQubits { n, max: MAX_QUBITS })
    } else {
        Ok(())
    }
}

fn full_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

impl PauliOp {
    pub fn identity(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n: n as u8, x: 0, z: 0 })
    }

    /// Builds an operator from raw masks; bits above `n` are rejected.
    pub fn from_masks(n: usize, x: u16, z: u16) -> Result<Self> {
        check_n(n)?;
        let mask = full_mask(n);
        if x & !mask != 0 || z & !mask != 0 {
            return Err(Error::InvalidSupport(format!(
                "mask bits beyond qubit {n}"
            )));
        }
        Ok(Self { n: n as u8, x, z })
    }

    /// A single-letter operator on 1-based `qubit`.
    pub fn single(n: usize, qubit: usize, letter: Letter) -> Result<Self> {
        check_n(n)?;
        if qubit == 0 || qubit > n {
            return Err(Error::InvalidSupport(format!("qubit {qubit} not in 1..={n}")));
        }
        let (x, z) = letter.bits();
        let bit = 1u16 << (qubit - 1);
        Ok(Self {
            n: n as u8,
            x: if x { bit } else { 0 },
            z: if z { bit } else { 0 },
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::EmptyPauli);
        }
        let n = text.chars().count();
        check_n(n)?;
        let (mut x, mut z) = (0u16, 0u16);
        for (q, c) in text.chars().enumerate() {
            let (xb, zb) = match c {
                'I' => (false, false),
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                _ => return Err(Error::InvalidPauliLetter { letter: c, position: q + 1 }),
            };
            if xb {
                x |= 1 << q;
            }
            if zb {
                z |= 1 << q;
            }
        }
        Ok(Self { n: n as u8, x, z })
    }

    pub fn num_qubits(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u16 {
        self.x
    }

    pub fn z_mask(&self) -> u16 {
        self.z
    }

    /// Packed `(x | z << 16)` symplectic vector.
    pub fn to_bits(&self) -> u32 {
        self.x as u32 | (self.z as u32) << 16
    }

    pub(crate) fn from_bits_unchecked(n: usize, bits: u32) -> Self {
        Self { n: n as u8, x: bits as u16, z: (bits >> 16) as u16 }
    }

    /// Letter on 1-based `qubit`.
    pub fn letter(&self, qubit: usize) -> Letter {
        let b = 1u16 << (qubit - 1);
        Letter::from_bits(self.x & b != 0, self.z & b != 0)
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::SizeMismatch { left: self.n as usize, right: other.n as usize })
        } else {
            Ok(())
        }
    }

    /// Projective product: componentwise XOR.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        Self { n: self.n, x: self.x ^ other.x, z: self.z ^ other.z }
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.same_size(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    pub(crate) fn anticommutes_unchecked(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() & 1 == 1
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn support(&self) -> SupportSet {
        SupportSet { n: self.n, mask: self.x | self.z }
    }

    /// Number of `Y` letters.
    pub fn y_count(&self) -> usize {
        (self.x & self.z).count_ones() as usize
    }
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (1..=self.num_qubits()).map(|q| self.letter(q).as_char()).collect();
        f.write_str(&s)
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Orders by qubit count, then by the letter string with `I < X < Y < Z`.
impl Ord for PauliOp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            (1..=self.num_qubits())
                .map(|q| self.letter(q).cmp(&other.letter(q)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for PauliOp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A set of qubits `{m_1 < m_2 < ... < m_l}` of an n-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportSet {
    n: u8,
    mask: u16,
}

impl SupportSet {
    pub fn empty(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n: n as u8, mask: 0 })
    }

    pub fn all(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n: n as u8, mask: full_mask(n) })
    }

    /// From 1-based qubit indices; they must be distinct and within `1..=n`.
    pub fn new(n: usize, qubits: &[usize]) -> Result<Self> {
        check_n(n)?;
        let mut mask = 0u16;
        for &q in qubits {
            if q == 0 || q > n {
                return Err(Error::InvalidSupport(format!("qubit {q} not in 1..={n}")));
            }
            let b = 1u16 << (q - 1);
            if mask & b != 0 {
                return Err(Error::InvalidSupport(format!("qubit {q} repeated")));
            }
            mask |= b;
        }
        Ok(Self { n: n as u8, mask })
    }

    pub fn from_mask(n: usize, mask: u16) -> Result<Self> {
        check_n(n)?;
        if mask & !full_mask(n) != 0 {
            return Err(Error::InvalidSupport(format!("mask {mask:#x} exceeds {n} qubits")));
        }
        Ok(Self { n: n as u8, mask })
    }

    /// Parses `"1,3,5,7"`; an empty string or `"-"` is the empty set.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        if text.is_empty() || text == "-" {
            return Self::empty(n);
        }
        let qubits = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidSupport(format!("bad qubit index {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &qubits)
    }

    pub fn num_qubits(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> u16 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, qubit: usize) -> bool {
        qubit >= 1 && qubit <= self.num_qubits() && self.mask & (1 << (qubit - 1)) != 0
    }

    /// 1-based qubit indices in increasing order.
    pub fn qubits(&self) -> Vec<usize> {
        (1..=self.num_qubits()).filter(|&q| self.contains(q)).collect()
    }

    /// All size-`t` subsets of `n` qubits, in increasing mask order.
    pub fn all_of_size(n: usize, t: usize) -> Result<Vec<SupportSet>> {
        check_n(n)?;
        Ok((0u32..1 << n)
            .filter(|m| m.count_ones() as usize == t)
            .map(|m| SupportSet { n: n as u8, mask: m as u16 })
            .collect())
    }

    /// The operator with index `idx` in the enumeration of `G^{m}`.
    ///
    /// Index layout: the high `l` bits select X components and the low `l`
    /// bits Z components, bit `j` addressing the `j`-th smallest qubit of
    /// the set. Numeric index order is the enumeration order.
    pub fn restricted_element(&self, idx: u32) -> PauliOp {
        let l = self.len();
        let (mut x, mut z) = (0u16, 0u16);
        for (j, q) in self.qubits().into_iter().enumerate() {
            let b = 1u16 << (q - 1);
            if idx >> (l + j) & 1 == 1 {
                x |= b;
            }
            if idx >> j & 1 == 1 {
                z |= b;
            }
        }
        PauliOp { n: self.n, x, z }
    }

    /// Inverse of [`restricted_element`](Self::restricted_element); `None`
    /// when `p` acts outside this set.
    pub fn restricted_index(&self, p: &PauliOp) -> Option<u32> {
        if p.n != self.n || (p.x | p.z) & !self.mask != 0 {
            return None;
        }
        let l = self.len();
        let mut idx = 0u32;
        for (j, q) in self.qubits().into_iter().enumerate() {
            let b = 1u16 << (q - 1);
            if p.x & b != 0 {
                idx |= 1 << (l + j);
            }
            if p.z & b != 0 {
                idx |= 1 << j;
            }
        }
        Some(idx)
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: Vec<String> = self.qubits().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", q.join(","))
    }
}

/// All `4^l` operators acting as identity outside `m`, in enumeration order.
pub fn enumerate_restricted(m: &SupportSet) -> impl Iterator<Item = PauliOp> + '_ {
    let count = 1u64 << (2 * m.len());
    (0..count).map(move |i| m.restricted_element(i as u32))
}
