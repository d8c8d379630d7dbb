//! The five-qubit, Steane and Shor codes with their correction tables.

use std::fmt;
use std::str::FromStr;

use crate::correction::CorrectionTable;
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOp};
use crate::stabilizer::{StabilizerCode, Syndrome};

const FIVE_QUBIT: [&str; 4] = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];

const STEANE: [&str; 6] = ["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"];

const SHOR: [&str; 8] = [
    "ZZIIIIIII", "IZZIIIIII", "IIIZZIIII", "IIIIZZIII", "IIIIIIZZI", "IIIIIIIZZ", "XXXXXXIII", "IIIXXXXXX",
];

const FIVE_QUBIT_TABLE: [(&str, &str); 16] = [
    ("0000", "IIIII"),
    ("0001", "XIIII"),
    ("0010", "IIZII"),
    ("0011", "IIIIX"),
    ("0100", "IIIIZ"),
    ("0101", "IZIII"),
    ("0110", "IIIXI"),
    ("0111", "IIIIY"),
    ("1000", "IXIII"),
    ("1001", "IIIZI"),
    ("1010", "ZIIII"),
    ("1011", "YIIII"),
    ("1100", "IIXII"),
    ("1101", "IYIII"),
    ("1110", "IIYII"),
    ("1111", "IIIYI"),
];

/// Lexicographically optimized table for the Shor code, as emitted by
/// `stabprob search-phi --builtin shor`.
const SHOR_TABLE: &str = include_str!("../data/shor.table");

fn code_from(gens: &[&str]) -> StabilizerCode {
    let gens = gens.iter().map(|g| PauliOp::parse(g).expect("builtin generator")).collect();
    StabilizerCode::new(gens).expect("builtin code is valid")
}

pub fn five_qubit_code() -> StabilizerCode {
    code_from(&FIVE_QUBIT)
}

pub fn steane_code() -> StabilizerCode {
    code_from(&STEANE)
}

pub fn shor_code() -> StabilizerCode {
    code_from(&SHOR)
}

pub fn five_qubit_table(code: &StabilizerCode) -> CorrectionTable {
    let entries: Vec<_> = FIVE_QUBIT_TABLE
        .iter()
        .map(|(s, p)| (Syndrome::parse(s).expect("syndrome"), PauliOp::parse(p).expect("pauli")))
        .collect();
    CorrectionTable::build(code, &entries).expect("builtin table is valid")
}

/// CSS decoding for the Steane code: `ε_4ε_5ε_6` read as a binary number is
/// the qubit needing an X correction, `ε_1ε_2ε_3` the qubit needing a Z
/// correction, zero meaning none.
pub fn steane_table(code: &StabilizerCode) -> CorrectionTable {
    let entries: Vec<_> = Syndrome::all(6)
        .map(|s| {
            let x_qubit = (s.index() & 7) as usize;
            let z_qubit = (s.index() >> 3) as usize;
            let mut p = PauliOp::identity(7).expect("n = 7");
            if x_qubit != 0 {
                p = p.mul_unchecked(&PauliOp::single(7, x_qubit, Letter::X).expect("qubit"));
            }
            if z_qubit != 0 {
                p = p.mul_unchecked(&PauliOp::single(7, z_qubit, Letter::Z).expect("qubit"));
            }
            (s, p)
        })
        .collect();
    CorrectionTable::build(code, &entries).expect("builtin table is valid")
}

pub fn shor_table(code: &StabilizerCode) -> CorrectionTable {
    CorrectionTable::from_text(code, SHOR_TABLE).expect("stored Shor table is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    Five,
    Steane,
    Shor,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::Five, Builtin::Steane, Builtin::Shor];

    pub fn code(self) -> StabilizerCode {
        match self {
            Builtin::Five => five_qubit_code(),
            Builtin::Steane => steane_code(),
            Builtin::Shor => shor_code(),
        }
    }

    pub fn load(self) -> (StabilizerCode, CorrectionTable) {
        let code = self.code();
        let table = match self {
            Builtin::Five => five_qubit_table(&code),
            Builtin::Steane => steane_table(&code),
            Builtin::Shor => shor_table(&code),
        };
        (code, table)
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Five => "five",
            Builtin::Steane => "steane",
            Builtin::Shor => "shor",
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "five" => Ok(Builtin::Five),
            "steane" => Ok(Builtin::Steane),
            "shor" => Ok(Builtin::Shor),
            other => Err(Error::UnknownBuiltin(other.to_string())),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `(code, table)` for a builtin name.
pub fn builtin(id: &str) -> Result<(StabilizerCode, CorrectionTable)> {
    Ok(id.parse::<Builtin>()?.load())
}
