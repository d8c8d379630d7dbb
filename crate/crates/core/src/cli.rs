//! The `stabprob` command-line tool.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::analysis::{crossing_of, f_table, h_curve, quality_partition_of, Crossing, QualityProfile, SyndromeTally};
use crate::builtin::Builtin;
use crate::correction::{condition_holds_in, correction_probability, CorrectionTable};
use crate::decomposition::decompose;
use crate::error::{Error, Result};
use crate::oracle::{enumerate_check, estimate_f};
use crate::pauli::{PauliOp, SupportSet};
use crate::rational::Rational;
use crate::search::{optimize_table, tables_equivalent, Objective};
use crate::stabilizer::{StabilizerCode, Syndrome};

#[derive(Debug, Parser)]
#[command(name = "stabprob", version, about = "Exact success probabilities of stabilizer error correction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit CSV with a header row instead of a human-readable table.
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads for parallel sums, searches and trials.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("code_source").required(true).args(["builtin", "code"])))]
struct Source {
    /// Builtin code and table: five, steane or shor.
    #[arg(long, value_parser = parse_builtin)]
    builtin: Option<Builtin>,
    /// Code file: one generator per line.
    #[arg(long)]
    code: Option<PathBuf>,
    /// Correction table file; overrides the builtin table.
    #[arg(long, conflicts_with = "search")]
    table: Option<PathBuf>,
    /// Build the table by search instead: lex or p=<value>.
    #[arg(long, value_parser = parse_objective)]
    search: Option<Objective>,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("code_source2").args(["builtin2", "code2"])))]
struct Second {
    /// Builtin for the second code.
    #[arg(long, value_parser = parse_builtin)]
    builtin2: Option<Builtin>,
    /// Code file for the second code.
    #[arg(long)]
    code2: Option<PathBuf>,
    /// Table file for the second code.
    #[arg(long)]
    table2: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a code (and its table, if one is available).
    Validate {
        #[command(flatten)]
        src: Source,
    },
    /// Minimum distance.
    Distance {
        #[command(flatten)]
        src: Source,
    },
    /// Syndrome of a Pauli operator.
    Syndrome {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        pauli: String,
    },
    /// Syndrome classes of the operators supported on a qubit set.
    Classes {
        #[command(flatten)]
        src: Source,
        /// Qubits, 1-based, comma separated.
        #[arg(long)]
        support: String,
        /// List the members of this class.
        #[arg(long)]
        syndrome: Option<String>,
    },
    /// Exact success probability for each error weight.
    FTable {
        #[command(flatten)]
        src: Source,
    },
    /// Success probability sampled over a grid of per-qubit error rates.
    HCurve {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        second: Second,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 1.0)]
        to: f64,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Error rate at which two codes' success curves cross.
    Crossing {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        second: Second,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = 0.5)]
        to: f64,
    },
    /// Syndrome quality and probability per error weight.
    Quality {
        #[command(flatten)]
        src: Source,
        /// Show one syndrome instead of the grouped table.
        #[arg(long)]
        syndrome: Option<String>,
        /// Restrict to one error weight.
        #[arg(long)]
        t: Option<usize>,
        /// Also report the success probability given the syndrome at this error rate.
        #[arg(long)]
        p: Option<f64>,
    },
    /// Accept or abort per syndrome group against a quality threshold.
    QualityReport {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        tau: f64,
    },
    /// Search for the best correction table and print it in table-file format.
    SearchPhi {
        #[command(flatten)]
        src: Source,
        /// lex or p=<value>.
        #[arg(long, default_value = "lex", value_parser = parse_objective)]
        objective: Objective,
        /// Also report whether the fixed-p optimum at this rate picks the same classes.
        #[arg(long)]
        compare: Option<f64>,
    },
    /// Monte Carlo estimate of the success probability for weight-t errors.
    OracleEstimate {
        #[command(flatten)]
        src: Source,
        /// Error weights, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<usize>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Brute-force recomputation of per-support success probabilities.
    OracleCheck {
        #[command(flatten)]
        src: Source,
        /// A single support; otherwise every support up to --max-size.
        #[arg(long)]
        support: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
}

fn parse_builtin(s: &str) -> std::result::Result<Builtin, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_objective(s: &str) -> std::result::Result<Objective, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, message } => Error::Io { path: path.display().to_string(), message: format!("line {line}: {message}") },
        other => other,
    })
}

fn load_code(builtin: Option<Builtin>, code: &Option<PathBuf>) -> Result<StabilizerCode> {
    match (builtin, code) {
        (Some(b), _) => Ok(b.code()),
        (None, Some(path)) => with_path(path, StabilizerCode::from_text(&read(path)?)),
        (None, None) => Err(Error::NoGenerators),
    }
}

fn load_table(
    code: &StabilizerCode,
    builtin: Option<Builtin>,
    table: &Option<PathBuf>,
    search: Option<Objective>,
) -> Result<CorrectionTable> {
    if let Some(path) = table {
        return with_path(path, CorrectionTable::from_text(code, &read(path)?));
    }
    if let Some(objective) = search {
        return optimize_table(code, objective);
    }
    match builtin {
        Some(b) => Ok(b.load().1),
        None => Err(Error::Io { path: "--table".into(), message: "a code file needs --table or --search".into() }),
    }
}

impl Source {
    fn code(&self) -> Result<StabilizerCode> {
        load_code(self.builtin, &self.code)
    }

    fn load(&self) -> Result<(StabilizerCode, CorrectionTable)> {
        let code = self.code()?;
        let table = load_table(&code, self.builtin, &self.table, self.search)?;
        Ok((code, table))
    }
}

impl Second {
    fn load(&self) -> Result<Option<(StabilizerCode, CorrectionTable)>> {
        if self.builtin2.is_none() && self.code2.is_none() {
            return Ok(None);
        }
        let code = load_code(self.builtin2, &self.code2)?;
        let table = load_table(&code, self.builtin2, &self.table2, None)?;
        Ok(Some((code, table)))
    }
}

fn check_p(p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

/// Six significant digits, fixed notation where reasonable.
pub fn format_float(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..6).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        if s == "-0" { "0".into() } else { s }
    } else {
        format!("{x:.5e}")
    }
}

fn format_quality(q: &Option<Rational>) -> String {
    q.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

struct Output<'a> {
    out: &'a mut dyn Write,
    csv: bool,
}

impl Output<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", s.as_ref()).map_err(|e| Error::Io { path: "<stdout>".into(), message: e.to_string() })
    }

    /// Rows of cells: CSV, or columns padded to a common width.
    fn table(&mut self, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        if self.csv {
            self.line(header.join(","))?;
            for r in rows {
                self.line(r.join(","))?;
            }
            return Ok(());
        }
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for r in rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let fmt = |cells: Vec<&str>| {
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
        };
        self.line(fmt(header.to_vec()))?;
        for r in rows {
            self.line(fmt(r.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }
}

fn profile_cells(profile: &QualityProfile, ts: &[usize]) -> Vec<String> {
    ts.iter()
        .flat_map(|&t| [format_quality(&profile.quality[t]), profile.probability[t].to_string()])
        .collect()
}

fn profile_header(ts: &[usize]) -> Vec<String> {
    ts.iter().flat_map(|t| [format!("q{t}"), format!("prob{t}")]).collect()
}

fn execute(cli: Cli, out: &mut Output<'_>) -> Result<i32> {
    match cli.command {
        Command::Validate { src } => {
            let code = src.code()?;
            let n = code.num_qubits();
            out.line(format!("code: {n} qubits, {} generators, {} logical", code.num_generators(), code.num_logical()))?;
            for (j, l) in code.logical_basis().iter().enumerate() {
                let kind = if j % 2 == 0 { "X" } else { "Z" };
                out.line(format!("logical {kind}{}: {l}", j / 2 + 1))?;
            }
            if src.builtin.is_some() || src.table.is_some() || src.search.is_some() {
                let table = load_table(&code, src.builtin, &src.table, src.search)?;
                out.line(format!("table: {} syndromes, valid", table.num_syndromes()))?;
            }
        }
        Command::Distance { src } => {
            let d = src.code()?.compute_distance()?;
            if out.csv {
                out.line("distance")?;
                out.line(d.to_string())?;
            } else {
                out.line(format!("d = {d}"))?;
            }
        }
        Command::Syndrome { src, pauli } => {
            let code = src.code()?;
            let p = PauliOp::parse(&pauli)?;
            let s = code.syndrome(&p)?;
            if out.csv {
                out.line("pauli,syndrome,logical_class")?;
                let class = if code.in_centralizer(&p)? { code.logical_class(&p)?.0.to_string() } else { "n/a".into() };
                out.line(format!("{p},{s},{class}"))?;
            } else {
                out.line(s.to_string())?;
            }
        }
        Command::Classes { src, support, syndrome } => {
            let code = src.code()?;
            let m = SupportSet::parse(code.num_qubits(), &support)?;
            let d = decompose(&code, &m)?;
            match syndrome {
                Some(s) => {
                    let s: Syndrome = s.parse()?;
                    let elements = d.class_elements(&s)?;
                    if out.csv {
                        out.line("pauli")?;
                    }
                    for g in elements {
                        out.line(g.to_string())?;
                    }
                }
                None => {
                    let table = load_table(&code, src.builtin, &src.table, src.search).ok();
                    let mut rows = Vec::new();
                    for s in d.attainable_syndromes() {
                        let rep = d.representative(&s).expect("attainable");
                        let ok = match &table {
                            Some(t) => condition_holds_in(&d, t, &s)?.to_string(),
                            None => "n/a".into(),
                        };
                        rows.push(vec![s.to_string(), rep.to_string(), (1u64 << d.kernel_dimension()).to_string(), ok]);
                    }
                    if !out.csv {
                        out.line(format!(
                            "support {m}: {} classes, kernel dimension {}, kernel has logical: {}",
                            d.class_count(),
                            d.kernel_dimension(),
                            d.kernel_has_logical()
                        ))?;
                    }
                    out.table(&["syndrome", "representative", "size", "corrected"], &rows)?;
                }
            }
        }
        Command::FTable { src } => {
            let (code, table) = src.load()?;
            let f = f_table(&code, &table);
            out.line("t,f")?;
            for (t, v) in f.iter().enumerate() {
                out.line(format!("{t},{v}"))?;
            }
        }
        Command::HCurve { src, second, from, to, points } => {
            check_p(from)?;
            check_p(to)?;
            let (code, table) = src.load()?;
            let a = h_curve(&f_table(&code, &table), from, to, points)?;
            match second.load()? {
                Some((code2, table2)) => {
                    let b = h_curve(&f_table(&code2, &table2), from, to, points)?;
                    out.line("p,h,h2")?;
                    for ((p, ha), (_, hb)) in a.iter().zip(&b) {
                        out.line(format!("{},{},{}", format_float(*p), format_float(*ha), format_float(*hb)))?;
                    }
                }
                None => {
                    out.line("p,h")?;
                    for (p, h) in a {
                        out.line(format!("{},{}", format_float(p), format_float(h)))?;
                    }
                }
            }
        }
        Command::Crossing { src, second, from, to } => {
            let (code, table) = src.load()?;
            let Some((code2, table2)) = second.load()? else {
                return Err(Error::Io { path: "--builtin2".into(), message: "crossing needs a second code".into() });
            };
            let result = crossing_of(&f_table(&code, &table), &f_table(&code2, &table2), from, to)?;
            let (kind, value) = match result {
                Crossing::Root(p) => ("root", format_float(p)),
                Crossing::None => ("none", "n/a".into()),
                Crossing::Identical => ("identical", "n/a".into()),
            };
            if out.csv {
                out.line("result,p")?;
                out.line(format!("{kind},{value}"))?;
            } else {
                match result {
                    Crossing::Root(_) => out.line(format!("p* = {value}"))?,
                    Crossing::None => out.line(format!("no crossing in [{}, {}]", format_float(from), format_float(to)))?,
                    Crossing::Identical => out.line("the curves are identical")?,
                }
            }
        }
        Command::Quality { src, syndrome, t, p } => {
            let (code, table) = src.load()?;
            let n = code.num_qubits();
            if let Some(t) = t {
                if t > n {
                    return Err(Error::InvalidSupport(format!("weight {t} exceeds {n} qubits")));
                }
            }
            if let Some(p) = p {
                check_p(p)?;
            }
            let ts: Vec<usize> = t.map_or_else(|| (0..=n).collect(), |t| vec![t]);
            let tally = SyndromeTally::compute(&code, &table);
            let marginal = |s: &Syndrome| -> Result<Vec<String>> {
                Ok(match p {
                    Some(p) => vec![format_float(tally.marginal_quality(s, p)?)],
                    None => vec![],
                })
            };
            let mut header: Vec<String> = Vec::new();
            let mut rows = Vec::new();
            match syndrome {
                Some(s) => {
                    let s: Syndrome = s.parse()?;
                    if s.len() != code.num_generators() {
                        return Err(Error::InvalidSyndrome(format!("{s} has {} bits, code has {} generators", s.len(), code.num_generators())));
                    }
                    header.push("syndrome".into());
                    let mut row = vec![s.to_string()];
                    row.extend(profile_cells(&tally.profile(&s), &ts));
                    row.extend(marginal(&s)?);
                    rows.push(row);
                }
                None => {
                    header.extend(["group".to_string(), "size".into(), "first".into()]);
                    for (i, g) in quality_partition_of(&tally).iter().enumerate() {
                        let mut row = vec![(i + 1).to_string(), g.syndromes.len().to_string(), g.syndromes[0].to_string()];
                        row.extend(profile_cells(&g.profile, &ts));
                        row.extend(marginal(&g.syndromes[0])?);
                        rows.push(row);
                    }
                }
            }
            header.extend(profile_header(&ts));
            if p.is_some() {
                header.push("marginal".into());
            }
            out.table(&header.iter().map(String::as_str).collect::<Vec<_>>(), &rows)?;
        }
        Command::QualityReport { src, p, tau } => {
            check_p(p)?;
            check_p(tau)?;
            let (code, table) = src.load()?;
            let n = code.num_qubits();
            let ts: Vec<usize> = (0..=n).collect();
            let tally = SyndromeTally::compute(&code, &table);
            let mut rows = Vec::new();
            for (i, g) in quality_partition_of(&tally).iter().enumerate() {
                let m = tally.marginal_quality(&g.syndromes[0], p)?;
                let verdict = if m >= tau { "ACCEPT" } else { "ABORT" };
                let members = g.syndromes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
                let mut row = vec![(i + 1).to_string(), g.syndromes.len().to_string()];
                row.extend(profile_cells(&g.profile, &ts).into_iter().step_by(2));
                row.extend([format_float(m), verdict.to_string(), members]);
                rows.push(row);
            }
            let mut header: Vec<String> = vec!["group".into(), "size".into()];
            header.extend(ts.iter().map(|t| format!("q{t}")));
            header.extend(["marginal".into(), "verdict".into(), "syndromes".into()]);
            if !out.csv {
                out.line(format!("p = {}, threshold = {}", format_float(p), format_float(tau)))?;
            }
            out.table(&header.iter().map(String::as_str).collect::<Vec<_>>(), &rows)?;
        }
        Command::SearchPhi { src, objective, compare } => {
            let code = src.code()?;
            let table = optimize_table(&code, objective)?;
            if let Some(p) = compare {
                let other = optimize_table(&code, Objective::FixedP(check_p(p)?))?;
                let same = tables_equivalent(&code, &table, &other);
                out.line(format!("# {objective} and p={p} optima {}", if same { "coincide" } else { "differ" }))?;
            }
            write!(out.out, "{}", table.to_text()).map_err(|e| Error::Io { path: "<stdout>".into(), message: e.to_string() })?;
        }
        Command::OracleEstimate { src, t, trials, seed } => {
            let (code, table) = src.load()?;
            let f = f_table(&code, &table);
            let mut rows = Vec::new();
            for &t in &t {
                let est = estimate_f(&code, &table, t, trials, seed)?;
                let exact = f[t];
                let z = if est.std_error > 0.0 { (est.mean - exact.to_f64()) / est.std_error } else { 0.0 };
                rows.push(vec![
                    t.to_string(),
                    trials.to_string(),
                    format_float(est.mean),
                    format_float(est.std_error),
                    exact.to_string(),
                    format_float(z),
                ]);
            }
            out.table(&["t", "trials", "mean", "std_error", "exact", "z"], &rows)?;
        }
        Command::OracleCheck { src, support, max_size } => {
            let (code, table) = src.load()?;
            let n = code.num_qubits();
            let supports = match support {
                Some(s) => vec![SupportSet::parse(n, &s)?],
                None => (0..=max_size.min(n))
                    .map(|t| SupportSet::all_of_size(n, t))
                    .collect::<Result<Vec<_>>>()?
                    .concat(),
            };
            let mut rows = Vec::new();
            let mut mismatches = 0;
            for m in &supports {
                let brute = enumerate_check(&code, &table, m)?;
                let engine = correction_probability(&code, &table, m)?;
                let ok = brute == engine;
                mismatches += usize::from(!ok);
                rows.push(vec![m.to_string().replace(',', " "), brute.to_string(), engine.to_string(), if ok { "ok" } else { "MISMATCH" }.into()]);
            }
            out.table(&["support", "brute_force", "engine", "status"], &rows)?;
            if mismatches > 0 {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

/// Runs the tool on `args` (including the program name). Returns the exit
/// status: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Some(k) = cli.threads {
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    }
    let csv = cli.csv;
    let mut output = Output { out, csv };
    match execute(cli, &mut output) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn main_exit() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
