//! Stabilizer codes over the phase-free Pauli group.
//!
//! A code is given by `r` independent, pairwise commuting generators on `n`
//! qubits. Independence over GF(2) stands in for `-I` not being in the
//! group, since signs are not tracked.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::Echelon;
use crate::pauli::{Letter, PauliOp, SupportSet};

/// Largest `n` for which exhaustive `4^n` scans are allowed.
pub const MAX_SCAN_QUBITS: usize = 12;

/// Error syndrome `(ε_1, ..., ε_r)`.
///
/// Stored as an integer whose binary expansion, most significant bit first,
/// reads `ε_1 ε_2 ... ε_r`; so `"0101"` has value 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syndrome {
    len: u8,
    value: u32,
}

impl Syndrome {
    pub fn zero(r: usize) -> Self {
        Self { len: r as u8, value: 0 }
    }

    pub fn from_index(r: usize, value: u32) -> Result<Self> {
        if r > 32 || (r < 32 && value >> r != 0) {
            return Err(Error::InvalidSyndrome(format!("{value} does not fit in {r} bits")));
        }
        Ok(Self { len: r as u8, value })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('(').trim_end_matches(')');
        if text.is_empty() || text.len() > 32 {
            return Err(Error::InvalidSyndrome(text.to_string()));
        }
        let mut value = 0u32;
        for c in text.chars() {
            value = value << 1
                | match c {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::InvalidSyndrome(text.to_string())),
                };
        }
        Ok(Self { len: text.len() as u8, value })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// `ε_i` for 1-based `i`.
    pub fn bit(&self, i: usize) -> bool {
        self.value >> (self.len() - i) & 1 == 1
    }

    pub fn xor(&self, other: &Self) -> Self {
        Self { len: self.len, value: self.value ^ other.value }
    }

    /// All `2^r` syndromes in increasing order.
    pub fn all(r: usize) -> impl Iterator<Item = Syndrome> {
        (0..1u64 << r).map(move |v| Syndrome { len: r as u8, value: v as u32 })
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Syndrome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Coordinates of a centralizer element in `C(S)/S`, one bit pair per
/// logical qubit (bit `2j` is the X̄_j component, bit `2j + 1` the Z̄_j one).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogicalClass(pub u32);

impl LogicalClass {
    pub fn is_trivial(&self) -> bool {
        self.0 == 0
    }

    pub fn xor(&self, other: &Self) -> Self {
        LogicalClass(self.0 ^ other.0)
    }
}

#[derive(Debug, Clone)]
pub struct StabilizerCode {
    n: usize,
    generators: Vec<PauliOp>,
    stabilizer: Echelon,
    /// Payload of each row is the symplectic vector of a pure error for the
    /// key syndrome.
    syndrome_solver: Echelon,
    /// `[X̄_1, Z̄_1, X̄_2, Z̄_2, ...]`.
    logicals: Vec<PauliOp>,
}

fn swap_halves(v: u32) -> u32 {
    v.rotate_left(16)
}

fn pairing(a: u32, b: u32) -> bool {
    (a & swap_halves(b)).count_ones() & 1 == 1
}

impl StabilizerCode {
    pub fn new(generators: Vec<PauliOp>) -> Result<Self> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let n = first.num_qubits();
        if let Some(g) = generators.iter().find(|g| g.num_qubits() != n) {
            return Err(Error::MixedLengths { first: n, other: g.num_qubits() });
        }
        let r = generators.len();
        if r > n {
            return Err(Error::TooManyGenerators { r, n });
        }
        for i in 0..r {
            for j in i + 1..r {
                if generators[i].anticommutes_unchecked(&generators[j]) {
                    return Err(Error::NonCommuting(i + 1, j + 1));
                }
            }
        }
        let mut stabilizer = Echelon::new();
        for (i, g) in generators.iter().enumerate() {
            if let Some(combo) = stabilizer.insert(g.to_bits() as u64, 1 << i) {
                let idx = (0..r).filter(|j| combo >> j & 1 == 1).map(|j| j + 1).collect();
                return Err(Error::DependentGenerators(idx));
            }
        }

        // Syndrome map on the 2n unit vectors: image rows solve for pure
        // errors, kernel vectors span the centralizer.
        let mut syndrome_solver = Echelon::new();
        let mut centralizer = Vec::new();
        for b in (0..n).chain(16..16 + n) {
            let v = 1u32 << b;
            let syn = syndrome_value(&generators, v);
            if let Some(kernel) = syndrome_solver.insert(syn as u64, v as u64) {
                centralizer.push(kernel as u32);
            }
        }
        debug_assert_eq!(syndrome_solver.rank(), r);

        let mut quotient = stabilizer.clone();
        let mut reps = Vec::new();
        for v in centralizer {
            if quotient.insert(v as u64, 0).is_none() {
                reps.push(stabilizer.reduce(v as u64).0 as u32);
            }
        }
        let logicals = symplectic_pairs(reps)
            .into_iter()
            .map(|v| PauliOp::from_bits_unchecked(n, v))
            .collect::<Vec<_>>();
        debug_assert_eq!(logicals.len(), 2 * (n - r));

        Ok(Self { n, generators, stabilizer, syndrome_solver, logicals })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_logical(&self) -> usize {
        self.n - self.generators.len()
    }

    pub fn generators(&self) -> &[PauliOp] {
        &self.generators
    }

    /// Logical basis `[X̄_1, Z̄_1, ...]` in symplectic standard form.
    pub fn logical_basis(&self) -> &[PauliOp] {
        &self.logicals
    }

    fn check(&self, g: &PauliOp) -> Result<()> {
        if g.num_qubits() != self.n {
            Err(Error::SizeMismatch { left: self.n, right: g.num_qubits() })
        } else {
            Ok(())
        }
    }

    pub fn syndrome(&self, g: &PauliOp) -> Result<Syndrome> {
        self.check(g)?;
        Ok(self.syndrome_unchecked(g))
    }

    pub(crate) fn syndrome_unchecked(&self, g: &PauliOp) -> Syndrome {
        Syndrome { len: self.generators.len() as u8, value: syndrome_value(&self.generators, g.to_bits()) }
    }

    pub fn in_centralizer(&self, g: &PauliOp) -> Result<bool> {
        Ok(self.syndrome(g)?.is_zero())
    }

    pub fn in_stabilizer(&self, g: &PauliOp) -> Result<bool> {
        self.check(g)?;
        Ok(self.stabilizer.contains(g.to_bits() as u64))
    }

    pub fn logical_class(&self, g: &PauliOp) -> Result<LogicalClass> {
        if !self.in_centralizer(g)? {
            return Err(Error::NotInCentralizer(g.to_string()));
        }
        Ok(self.logical_class_unchecked(g))
    }

    /// Pairing coordinates without the centralizer check; meaningful only
    /// for centralizer elements.
    pub(crate) fn logical_class_unchecked(&self, g: &PauliOp) -> LogicalClass {
        let v = g.to_bits();
        let mut c = 0u32;
        for (j, pair) in self.logicals.chunks(2).enumerate() {
            if pairing(v, pair[1].to_bits()) {
                c |= 1 << (2 * j);
            }
            if pairing(v, pair[0].to_bits()) {
                c |= 1 << (2 * j + 1);
            }
        }
        LogicalClass(c)
    }

    /// A centralizer element whose logical class is `c`.
    pub fn logical_representative(&self, c: LogicalClass) -> PauliOp {
        let mut v = 0u32;
        for (j, pair) in self.logicals.chunks(2).enumerate() {
            if c.0 >> (2 * j) & 1 == 1 {
                v ^= pair[0].to_bits();
            }
            if c.0 >> (2 * j + 1) & 1 == 1 {
                v ^= pair[1].to_bits();
            }
        }
        PauliOp::from_bits_unchecked(self.n, v)
    }

    pub fn num_logical_classes(&self) -> u32 {
        1 << (2 * self.num_logical())
    }

    /// Some operator with the given syndrome (a combination of pure errors).
    pub fn pauli_with_syndrome(&self, s: &Syndrome) -> Result<PauliOp> {
        if s.len() != self.generators.len() {
            return Err(Error::InvalidSyndrome(s.to_string()));
        }
        let (rest, v) = self.syndrome_solver.reduce(s.index() as u64);
        debug_assert_eq!(rest, 0);
        Ok(PauliOp::from_bits_unchecked(self.n, v as u32))
    }

    /// All `2^r` elements of the stabilizer group (modulo phase).
    pub fn stabilizer_elements(&self) -> Vec<PauliOp> {
        let r = self.generators.len();
        (0..1u64 << r)
            .map(|mask| {
                let mut v = PauliOp::identity(self.n).expect("valid n");
                for (i, g) in self.generators.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v = v.mul_unchecked(g);
                    }
                }
                v
            })
            .collect()
    }

    /// Minimum weight over `C(S) \ S`, scanning operators by increasing weight.
    pub fn compute_distance(&self) -> Result<usize> {
        if self.num_logical() == 0 {
            return Err(Error::NoLogicalQubits);
        }
        if self.n > MAX_SCAN_QUBITS {
            return Err(Error::CodeTooLarge { what: "distance", n: self.n, max: MAX_SCAN_QUBITS });
        }
        for w in 1..=self.n {
            for m in SupportSet::all_of_size(self.n, w)? {
                let found = full_weight_operators(&m).any(|g| {
                    self.syndrome_unchecked(&g).is_zero() && !self.stabilizer.contains(g.to_bits() as u64)
                });
                if found {
                    return Ok(w);
                }
            }
        }
        unreachable!("a code with k >= 1 has a nontrivial logical operator")
    }

    /// Probability-one correctability of a set of errors: no pairwise product
    /// may be a nontrivial logical operator.
    pub fn correctable_set_check(&self, errors: &[PauliOp]) -> Result<bool> {
        for e in errors {
            self.check(e)?;
        }
        for (j, a) in errors.iter().enumerate() {
            for b in &errors[j..] {
                let p = a.mul_unchecked(b);
                if self.syndrome_unchecked(&p).is_zero() && !self.stabilizer.contains(p.to_bits() as u64) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Parses the code file format: one generator per line, `#` comments and
    /// blank lines ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let g = PauliOp::parse(line).map_err(|e| Error::Parse { line: i + 1, message: e.to_string() })?;
            if let Some(first) = gens.first().map(|g: &PauliOp| g.num_qubits()) {
                if g.num_qubits() != first {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("generator has {} letters, expected {first}", g.num_qubits()),
                    });
                }
            }
            gens.push(g);
        }
        Self::new(gens)
    }

    pub fn to_text(&self) -> String {
        self.generators.iter().map(|g| format!("{g}\n")).collect()
    }
}

fn syndrome_value(generators: &[PauliOp], v: u32) -> u32 {
    let r = generators.len();
    generators
        .iter()
        .enumerate()
        .filter(|(_, g)| pairing(v, g.to_bits()))
        .fold(0u32, |acc, (i, _)| acc | 1 << (r - 1 - i))
}

/// Symplectic Gram-Schmidt: returns `[a_1, b_1, a_2, b_2, ...]` with
/// `<a_i, b_j> = δ_ij` and all other pairings zero. The input must span a
/// space on which the pairing is nondegenerate.
fn symplectic_pairs(mut vs: Vec<u32>) -> Vec<u32> {
    let mut out = Vec::with_capacity(vs.len());
    while !vs.is_empty() {
        let a = vs.remove(0);
        let pos = vs
            .iter()
            .position(|&b| pairing(a, b))
            .expect("pairing on C(S)/S is nondegenerate");
        let b = vs.remove(pos);
        for v in vs.iter_mut() {
            let mut w = *v;
            if pairing(w, b) {
                w ^= a;
            }
            if pairing(*v, a) {
                w ^= b;
            }
            *v = w;
        }
        out.push(a);
        out.push(b);
    }
    out
}

/// All operators whose support is exactly `m`.
fn full_weight_operators(m: &SupportSet) -> impl Iterator<Item = PauliOp> + '_ {
    let qubits = m.qubits();
    let n = m.num_qubits();
    let count = 3u64.pow(qubits.len() as u32);
    (0..count).map(move |mut idx| {
        let (mut x, mut z) = (0u16, 0u16);
        for &q in &qubits {
            let letter = [Letter::X, Letter::Y, Letter::Z][(idx % 3) as usize];
            idx /= 3;
            let (xb, zb) = letter.bits();
            if xb {
                x |= 1 << (q - 1);
            }
            if zb {
                z |= 1 << (q - 1);
            }
        }
        PauliOp::from_masks(n, x, z).expect("support within n")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::pauli::enumerate_restricted;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliOp {
        PauliOp::parse(s).unwrap()
    }

    fn syn(s: &str) -> Syndrome {
        Syndrome::parse(s).unwrap()
    }

    #[test]
    fn builds_builtin_codes() {
        let five = builtin::five_qubit_code();
        assert_eq!((five.num_qubits(), five.num_logical()), (5, 1));
        let steane = builtin::steane_code();
        assert_eq!((steane.num_qubits(), steane.num_logical()), (7, 1));
        let shor = builtin::shor_code();
        assert_eq!((shor.num_qubits(), shor.num_logical()), (9, 1));
    }

    #[test]
    fn build_errors() {
        let r = StabilizerCode::new(vec![p("XI"), p("ZI")]);
        assert_eq!(r.unwrap_err(), Error::NonCommuting(1, 2));
        let r = StabilizerCode::new(vec![p("XX"), p("ZZ"), p("YY")]);
        assert!(matches!(r, Err(Error::TooManyGenerators { .. })));
        let r = StabilizerCode::new(vec![p("XXI"), p("IXX"), p("XIX")]);
        assert_eq!(r.unwrap_err(), Error::DependentGenerators(vec![1, 2, 3]));
        let r = StabilizerCode::new(vec![p("XX"), p("ZZZ")]);
        assert!(matches!(r, Err(Error::MixedLengths { .. })));
        assert_eq!(StabilizerCode::new(vec![]).unwrap_err(), Error::NoGenerators);
    }

    #[test]
    fn syndrome_examples() {
        let five = builtin::five_qubit_code();
        assert_eq!(five.syndrome(&p("IZIII")).unwrap(), syn("0101"));
        assert_eq!(five.syndrome(&p("YZIII")).unwrap(), syn("1110"));
        assert!(five.syndrome(&p("IIIII")).unwrap().is_zero());
        assert!(five.syndrome(&p("III")).is_err());
    }

    #[test]
    fn centralizer_and_stabilizer_membership() {
        let five = builtin::five_qubit_code();
        assert!(five.in_centralizer(&p("ZZZZZ")).unwrap());
        assert!(!five.in_centralizer(&p("XIIII")).unwrap());
        for g in five.generators() {
            assert!(five.in_centralizer(g).unwrap());
            assert!(five.in_stabilizer(g).unwrap());
        }
        let steane = builtin::steane_code();
        assert!(steane.in_stabilizer(&p("XIXIXIX")).unwrap());
        assert!(!steane.in_stabilizer(&p("IXIIXIX")).unwrap());
        assert!(!five.in_stabilizer(&p("ZZZZZ")).unwrap());
        // cross-check against the enumerated group
        assert!(!five.stabilizer_elements().contains(&p("ZZZZZ")));
    }

    #[test]
    fn logical_class_examples() {
        let five = builtin::five_qubit_code();
        for g in five.generators() {
            assert!(five.logical_class(g).unwrap().is_trivial());
        }
        let c = five.logical_class(&p("ZZZZZ")).unwrap();
        assert!(!c.is_trivial());
        assert!(c.xor(&c).is_trivial());
        assert_eq!(
            five.logical_class(&p("XIIII")).unwrap_err(),
            Error::NotInCentralizer("XIIII".into())
        );
    }

    #[test]
    fn logical_basis_is_symplectic() {
        for code in [builtin::five_qubit_code(), builtin::steane_code(), builtin::shor_code()] {
            let l = code.logical_basis();
            for (i, a) in l.iter().enumerate() {
                assert!(code.in_centralizer(a).unwrap());
                assert!(!code.in_stabilizer(a).unwrap());
                for (j, b) in l.iter().enumerate() {
                    let expect = i / 2 == j / 2 && i != j;
                    assert_eq!(!a.commutes(b).unwrap(), expect);
                }
            }
            for c in 0..code.num_logical_classes() {
                let rep = code.logical_representative(LogicalClass(c));
                assert_eq!(code.logical_class(&rep).unwrap(), LogicalClass(c));
            }
        }
    }

    #[test]
    fn distances() {
        assert_eq!(builtin::five_qubit_code().compute_distance().unwrap(), 3);
        assert_eq!(builtin::steane_code().compute_distance().unwrap(), 3);
        assert_eq!(builtin::shor_code().compute_distance().unwrap(), 3);
        let full = StabilizerCode::new(vec![p("ZI"), p("IZ")]).unwrap();
        assert_eq!(full.compute_distance().unwrap_err(), Error::NoLogicalQubits);
    }

    fn weight_at_most(n: usize, t: usize) -> Vec<PauliOp> {
        enumerate_restricted(&SupportSet::all(n).unwrap()).filter(|g| g.weight() <= t).collect()
    }

    #[test]
    fn correctable_set_examples() {
        let five = builtin::five_qubit_code();
        assert!(five.correctable_set_check(&weight_at_most(5, 1)).unwrap());
        let two: Vec<_> = enumerate_restricted(&SupportSet::new(5, &[1, 2]).unwrap()).collect();
        assert!(five.correctable_set_check(&two).unwrap());
        let three: Vec<_> = enumerate_restricted(&SupportSet::new(5, &[1, 2, 3]).unwrap()).collect();
        assert!(!five.correctable_set_check(&three).unwrap());
        assert!(five.correctable_set_check(&[p("IIIII")]).unwrap());
    }

    #[test]
    fn correctable_iff_twice_t_below_distance() {
        for code in [builtin::five_qubit_code(), builtin::steane_code(), builtin::shor_code()] {
            let d = code.compute_distance().unwrap();
            for t in 0..=2 {
                let ok = code.correctable_set_check(&weight_at_most(code.num_qubits(), t)).unwrap();
                assert_eq!(ok, 2 * t < d, "t = {t}");
            }
        }
    }

    #[test]
    fn syndrome_additivity_random_pairs() {
        let code = builtin::shor_code();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let a = PauliOp::from_masks(9, rng.random_range(0..512), rng.random_range(0..512)).unwrap();
            let b = PauliOp::from_masks(9, rng.random_range(0..512), rng.random_range(0..512)).unwrap();
            let ab = code.syndrome(&a.multiply(&b).unwrap()).unwrap();
            assert_eq!(ab, code.syndrome(&a).unwrap().xor(&code.syndrome(&b).unwrap()));
        }
    }

    #[test]
    fn exhaustive_membership_counts_five_qubit() {
        let code = builtin::five_qubit_code();
        let all: Vec<_> = enumerate_restricted(&SupportSet::all(5).unwrap()).collect();
        let stab = all.iter().filter(|g| code.in_stabilizer(g).unwrap()).count();
        assert_eq!(stab, 16);
        for g in &all {
            if code.in_stabilizer(g).unwrap() {
                assert!(code.in_centralizer(g).unwrap());
            }
            if code.in_centralizer(g).unwrap() {
                let c = code.logical_class(g).unwrap();
                assert_eq!(c.is_trivial(), code.in_stabilizer(g).unwrap());
                for h in all.iter().filter(|h| code.in_centralizer(h).unwrap()) {
                    let gh = g.multiply(h).unwrap();
                    assert_eq!(code.logical_class(&gh).unwrap(), c.xor(&code.logical_class(h).unwrap()));
                }
            }
        }
    }

    #[test]
    fn pure_errors_have_requested_syndrome() {
        let code = builtin::shor_code();
        for s in Syndrome::all(8) {
            assert_eq!(code.syndrome(&code.pauli_with_syndrome(&s).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn code_file_parsing() {
        let text = "# five\nXZZXI\n\nIXZZX\nXIXZZ\nZXIXZ\n";
        let code = StabilizerCode::from_text(text).unwrap();
        assert_eq!(code.num_generators(), 4);
        assert_eq!(code.to_text(), "XZZXI\nIXZZX\nXIXZZ\nZXIXZ\n");
        let bad = StabilizerCode::from_text("XZZXI\nIXZZ\n").unwrap_err();
        assert!(matches!(bad, Error::Parse { line: 2, .. }));
        let bad = StabilizerCode::from_text("XZZXI\nIXQZX\n").unwrap_err();
        assert!(matches!(bad, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn syndrome_parsing() {
        let s = syn("000111");
        assert_eq!(s.index(), 7);
        assert!(s.bit(4) && s.bit(6) && !s.bit(1));
        assert_eq!(s.to_string(), "000111");
        assert!(Syndrome::parse("01a").is_err());
    }
}
