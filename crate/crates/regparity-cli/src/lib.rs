//! Command-line front end for `regparity`: argument definitions, command
//! execution and the structured output format.

pub mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use regparity::group_core::{parse_generators, preset, GroupError, PermGroup};
use regparity::isogeny_modules::{
    alpha_factorization, borel_det_formula, build_borel_f, build_dihedral_maps, compose_transpose, dihedral_alpha2_det_formula,
    in_printed_basis, matches_printed_p3, q_parity, regconst_agreement, Agreement, IsogenyError,
};
use regparity::local_curve::{parse_curve_file, parse_tower_file, CurveFile, LocalError, TowerFamily};
use regparity::parity_engine::{
    borel_parity, dihedral_parity, false_tate_ladder, s3_theorem_parity, DihedralVerdict, LadderLayer, Parity, ParityError, ParityVerdict,
    TowerDescription,
};
use regparity::regconst::{
    a5_relations, borel_relation, dihedral_relation, lattice_table, named_table, s3_relation, GroupData, NamedRelation, RegConstTable,
    RegError,
};
use regparity::repq::{RepError, DEFAULT_SEED};
use regparity::selftest::run_all;

use output::{Document, Record, Structured};

#[derive(Parser, Debug, Clone)]
#[command(name = "regparity", version, about = "Regulator constants, root numbers and rank-parity predictions")]
pub struct Cli {
    /// Output mode.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Structured,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerKind {
    Borel,
    S3,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsogenyFamily {
    Borel,
    Dihedral,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityArg {
    Even,
    Odd,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Subgroup classes and a basis of the relation lattice.
    Relations {
        /// Preset (S3, A5, C5, D10, D2n:5, Borel:7, S4, ...) or a file of generators.
        group: String,
    },
    /// Regulator constants of the standard relations (or the lattice basis).
    Regconst {
        group: String,
        /// Use the computed lattice basis even when named relations exist.
        #[arg(long)]
        lattice: bool,
    },
    /// Parity prediction for a Borel or S3 tower.
    Parity {
        /// Tower over Q built from a curve file and m.
        #[arg(long, value_enum, requires_all = ["curve", "m"], conflicts_with = "tower_file")]
        tower: Option<TowerKind>,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long)]
        m: Option<u64>,
        /// Tower file with local Galois data at each place.
        #[arg(long)]
        tower_file: Option<PathBuf>,
    },
    /// Root numbers and Selmer lower bounds along a false Tate tower over Q.
    Falsetate {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 5)]
        levels: u32,
    },
    /// Parity prediction for a dihedral tower file.
    Dihedral {
        #[arg(long)]
        tower_file: PathBuf,
        /// Known parity of rk_p(E/M).
        #[arg(long, value_enum)]
        rk_m: Option<ParityArg>,
    },
    /// Builds the explicit isogenies and checks their identities.
    IsogenyCheck {
        #[arg(long, value_enum)]
        family: IsogenyFamily,
        /// Prime for the Borel family and for Q-parity.
        #[arg(long)]
        p: Option<u64>,
        /// n for the dihedral family (defaults to p).
        #[arg(long)]
        n: Option<u64>,
        /// Print the matrices (p = 3 in the printed bases).
        #[arg(long)]
        show: bool,
    },
    /// Runs every acceptance check.
    Selftest,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Lib(#[from] regparity::Error),
}

macro_rules! lib_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self::Lib(e.into())
            }
        })*
    };
}

lib_error!(GroupError, RepError, RegError, LocalError, ParityError, IsogenyError);

impl CliError {
    /// 1 when a computation was refused, 2 for bad input.
    #[must_use]
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) | Self::Parse { .. } | Self::Io { .. } => 2,
            Self::Lib(e) => lib_exit_code(e),
        }
    }
}

fn group_code(e: &GroupError) -> u8 {
    if matches!(e, GroupError::Capacity { .. }) {
        1
    } else {
        2
    }
}

fn rep_code(e: &RepError) -> u8 {
    match e {
        RepError::Group(g) => group_code(g),
        RepError::Shape(_) => 2,
        RepError::Undecided { .. } | RepError::DimensionCap { .. } | RepError::Incomplete { .. } => 1,
    }
}

fn reg_code(e: &RegError) -> u8 {
    match e {
        RegError::Rep(r) => rep_code(r),
        RegError::NotIrreducible => 1,
        _ => 2,
    }
}

fn local_code(e: &LocalError) -> u8 {
    if matches!(e, LocalError::Unsupported { .. } | LocalError::TamagawaUnknown { .. }) {
        1
    } else {
        2
    }
}

fn lib_exit_code(e: &regparity::Error) -> u8 {
    use regparity::Error as E;
    match e {
        E::Group(g) => group_code(g),
        E::Rep(r) => rep_code(r),
        E::Reg(r) => reg_code(r),
        E::Local(l) => local_code(l),
        E::Parity(ParityError::Local(l)) => local_code(l),
        E::Parity(ParityError::Rejected(_)) => 2,
        E::Parity(_) => 1,
        E::Isogeny(IsogenyError::Refused { .. }) => 1,
        E::Isogeny(IsogenyError::Group(g)) => group_code(g),
        E::Isogeny(IsogenyError::Rep(r)) => rep_code(r),
        E::Isogeny(IsogenyError::Reg(r)) => reg_code(r),
        E::Isogeny(_) | E::Input(_) => 2,
    }
}

/// Rendered output and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

/// Output assembled as records; printed as a table or as a structured
/// document.
struct Report {
    doc: Document,
    table: String,
    code: u8,
}

impl Report {
    fn new(seed: u64, command: &str) -> Self {
        Self { doc: Document::new(seed, command), table: String::new(), code: 0 }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.table.push_str(s.as_ref());
        self.table.push('\n');
    }

    fn record(&mut self, r: Record) {
        self.doc.records.push(r);
    }

    fn finish(self, format: Format) -> Output {
        let text = match format {
            Format::Table => self.table,
            Format::Structured => self.doc.to_string(),
        };
        Output { text, code: self.code }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn load_group(name: &str) -> Result<PermGroup, CliError> {
    let path = Path::new(name);
    if path.is_file() {
        return Ok(parse_generators(&read(path)?)?);
    }
    Ok(preset(name)?)
}

fn load_curve(path: &Path) -> Result<CurveFile, CliError> {
    let text = read(path)?;
    parse_curve_file(&text).map_err(|e| located(path, e))
}

/// Parse errors keep their line and column, with the file name in front.
fn located(path: &Path, e: LocalError) -> CliError {
    match e {
        LocalError::Parse { line, column, message } => CliError::Parse { line, column, message: format!("{}: {message}", path.display()) },
        other => other.into(),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let seed = cli.seed;
    let report = match &cli.command {
        Command::Relations { group } => relations(seed, group)?,
        Command::Regconst { group, lattice } => regconst(seed, group, *lattice)?,
        Command::Parity { tower, p, curve, m, tower_file } => parity(seed, *tower, *p, curve.as_deref(), *m, tower_file.as_deref())?,
        Command::Falsetate { curve, p, m, levels } => falsetate(seed, curve, *p, *m, *levels)?,
        Command::Dihedral { tower_file, rk_m } => dihedral(seed, tower_file, *rk_m)?,
        Command::IsogenyCheck { family, p, n, show } => isogeny_check(seed, *family, *p, *n, *show)?,
        Command::Selftest => selftest(seed),
    };
    Ok(report.finish(cli.format))
}

fn relations(seed: u64, name: &str) -> Result<Report, CliError> {
    let data = GroupData::new(name, load_group(name)?, seed)?;
    let basis = data.relation_lattice()?;
    let labels: Vec<&str> = data.classes.iter().map(|c| c.label.as_str()).collect();
    let mut r = Report::new(seed, "relations");
    r.line(format!("group {name} of order {}", data.group.order()));
    r.line(format!("subgroup classes: {}", labels.join(" ")));
    r.line(format!("lattice rank {}", basis.len()));
    let mut rec = Record::new("relations").with("group", name).with("order", data.group.order()).with("classes", labels.join(" ")).with("rank", basis.len());
    for (i, v) in basis.iter().enumerate() {
        let shown = v.display(&data.classes);
        r.line(format!("L{} = {shown}", i + 1));
        rec = rec.with("relation", format!("L{} | {shown}", i + 1));
    }
    r.record(rec);
    Ok(r)
}

fn named_relations(data: &GroupData, name: &str) -> Option<Vec<NamedRelation>> {
    let top = data.top_label();
    let order = data.group.order() as u64;
    let prime = |p: u64| p > 2 && (2..p).all(|d| !p.is_multiple_of(d));
    match name {
        "S3" => Some(vec![s3_relation()]),
        "A5" => Some(a5_relations()),
        _ if name.starts_with("Borel:") => Some(vec![borel_relation(name[6..].parse().ok()?, top)]),
        _ if name.starts_with('D') && prime(order / 2) => Some(vec![dihedral_relation(order / 2, top)]),
        _ => None,
    }
}

fn print_table(r: &mut Report, t: &RegConstTable) {
    r.line(format!("group {}", t.group));
    r.line(format!("irreducibles : {}", t.irreducibles.join(" ")));
    let many = t.relations.len() > 1;
    for ((name, shown), row) in t.relations.iter().zip(&t.entries) {
        let values: Vec<String> = row.iter().map(ToString::to_string).collect();
        if many {
            r.line(format!("{name:<7} {shown} : {}", values.join(" ")));
        } else {
            r.line(format!("{shown} : {}", values.join(" ")));
        }
    }
    r.record(t.to_record());
}

fn regconst(seed: u64, name: &str, lattice: bool) -> Result<Report, CliError> {
    let data = GroupData::new(name, load_group(name)?, seed)?;
    let table = match named_relations(&data, name).filter(|_| !lattice) {
        Some(rels) => named_table(&data, &rels)?,
        None => lattice_table(&data)?,
    };
    let mut r = Report::new(seed, "regconst");
    print_table(&mut r, &table);
    Ok(r)
}

fn print_verdict(r: &mut Report, v: &ParityVerdict) {
    r.line(format!("ParityVerdict {}", v.combination));
    r.line(format!("  parity: {}", v.parity));
    r.line(format!("  evidence: {}", v.evidence));
    for a in &v.assumptions {
        r.line(format!("  assumption: {a}"));
    }
    r.record(v.to_record());
}

fn parity(
    seed: u64,
    tower: Option<TowerKind>,
    p: u64,
    curve: Option<&Path>,
    m: Option<u64>,
    tower_file: Option<&Path>,
) -> Result<Report, CliError> {
    let mut r = Report::new(seed, "parity");
    let (desc, family) = match (tower, tower_file) {
        (Some(kind), None) => {
            let curve = load_curve(curve.ok_or_else(|| CliError::Input("--curve is required with --tower".into()))?)?;
            let m = m.ok_or_else(|| CliError::Input("--m is required with --tower".into()))?;
            match kind {
                TowerKind::Borel => (TowerDescription::borel_over_q(&curve, p, m)?, TowerFamily::Borel),
                TowerKind::S3 => (TowerDescription::s3_over_q(&curve, m)?, TowerFamily::S3),
            }
        }
        (None, Some(path)) => {
            let file = parse_tower_file(&read(path)?).map_err(|e| located(path, e))?;
            (TowerDescription::from_file(&file)?, file.family)
        }
        _ => return Err(CliError::Input("give either --tower with --curve and --m, or --tower-file".into())),
    };
    r.line(format!("tower {} with {} listed places", desc.family, desc.places.len()));
    match family {
        TowerFamily::Borel => print_verdict(&mut r, &borel_parity(&desc)?),
        TowerFamily::S3 => {
            let (v, sel) = s3_theorem_parity(&desc, true)?;
            print_verdict(&mut r, &v);
            if let Some(s) = sel {
                print_verdict(&mut r, &s);
            }
        }
        TowerFamily::Dihedral => return Err(CliError::Input("dihedral towers are handled by the 'dihedral' command".into())),
    }
    Ok(r)
}

fn falsetate(seed: u64, curve: &Path, p: u64, m: u64, levels: u32) -> Result<Report, CliError> {
    let c = load_curve(curve)?;
    let layers = false_tate_ladder(&c, p, m, levels)?;
    let mut r = Report::new(seed, "falsetate");
    r.line(format!("false Tate tower p = {p}, m = {m}"));
    r.line(format!("{:>3} {:>7} {:>7} {:>9} {:>9}", "n", "w(L_n)", "w(F_n)", "lb(L_n)", "lb(F_n)"));
    for LadderLayer { level, w_l, w_f, lower_bound_l, lower_bound_f, .. } in &layers {
        r.line(format!("{level:>3} {:>7} {:>7} {lower_bound_l:>9} {lower_bound_f:>9}", w_l.value(), w_f.value()));
        r.record(
            Record::new("layer")
                .with("level", level)
                .with("w_l", w_l.value())
                .with("w_f", w_f.value())
                .with("lower_bound_l", lower_bound_l)
                .with("lower_bound_f", lower_bound_f),
        );
    }
    if let Some(a) = layers.first().and_then(|l| l.verdict_l.assumptions.first()) {
        r.line(format!("assumption: {a}"));
    }
    Ok(r)
}

fn dihedral(seed: u64, path: &Path, rk_m: Option<ParityArg>) -> Result<Report, CliError> {
    let file = parse_tower_file(&read(path)?).map_err(|e| located(path, e))?;
    let desc = TowerDescription::from_file(&file)?;
    let rk_m = rk_m.map(|a| if a == ParityArg::Odd { Parity::Odd } else { Parity::Even });
    let DihedralVerdict { verdict, s1, s2, rank_jump } = dihedral_parity(&desc, rk_m)?;
    let mut r = Report::new(seed, "dihedral");
    r.line(format!("tower {}", desc.family));
    print_verdict(&mut r, &verdict);
    r.line(format!("S1: {}", if s1.is_empty() { "-".into() } else { s1.join(" ") }));
    r.line(format!("S2: {}", if s2.is_empty() { "-".into() } else { s2.join(" ") }));
    let mut rec = Record::new("dihedral").with("s1", s1.join(" ")).with("s2", s2.join(" "));
    if let Some(j) = rank_jump {
        let p = desc.family.p();
        r.line(format!("rk_{p}(E/L) >= rk_{p}(E/K) + {j}"));
        rec = rec.with("rank_jump", j);
    }
    r.record(rec);
    Ok(r)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_q_parity(r: &mut Report, seed: u64, f: &regparity::isogeny_modules::IntegerGModuleMap, p: u64) -> Result<(), CliError> {
    let data = GroupData::new("G", (**f.source().group()).clone(), seed)?;
    let q = q_parity(f, p, &data.irreducibles)?;
    let agree = regconst_agreement(f, p, &data, None)?.iter().all(Agreement::agrees);
    r.line(format!("q_parity: {q}"));
    r.line(format!("agrees with ord_{p} of regulator constants: {}", yes(agree)));
    r.record(Record::new("q_parity").with("p", p).with("expression", q.to_string()).with("regconst_agreement", yes(agree)));
    Ok(())
}

fn isogeny_check(seed: u64, family: IsogenyFamily, p: Option<u64>, n: Option<u64>, show: bool) -> Result<Report, CliError> {
    let mut r = Report::new(seed, "isogeny-check");
    match family {
        IsogenyFamily::Borel => {
            let p = p.ok_or_else(|| CliError::Input("--p is required for the Borel family".into()))?;
            let f = build_borel_f(p)?;
            let det = f.det().unwrap_or_default();
            let abs = det.magnitude();
            let formula = borel_det_formula(p);
            r.line(format!("Borel map f for p = {p}: rank {}", f.source().rank()));
            r.line(format!("|det f| = {abs}"));
            r.line(format!("(p^2-p+1) p^(p(p-1)/2-1) = {formula}: {}", yes(abs == formula.magnitude())));
            let ftf = compose_transpose(&f)?;
            r.line(format!("det f^t f = (det f)^2: {}", yes(ftf.det() == Some(&det * &det))));
            let mut rec = Record::new("borel").with("p", p).with("abs_det_f", abs).with("closed_form", &formula);
            if p == 3 {
                let m = matches_printed_p3()?;
                r.line(format!("matches printed matrix: {}", yes(m)));
                rec = rec.with("matches_printed", yes(m));
                if show {
                    r.line("f in the printed bases:");
                    r.line(show_matrix(&in_printed_basis(&f)?));
                    r.line("f^t f in the printed bases:");
                    r.line(show_matrix(&in_printed_basis(&ftf)?));
                }
            } else if show {
                r.line(f.to_string());
            }
            let a = alpha_factorization(p)?;
            let (d3, d4) = a.dets();
            let holds = a.identity_holds()?;
            r.line(format!("alpha_3 (alpha_2 + [p]) = ([p] + id) alpha_4: {}", yes(holds)));
            r.line(format!("det alpha_3 = {d3}, det alpha_4 = {d4}"));
            r.record(rec.with("alpha_identity", yes(holds)).with("det_alpha3", d3).with("det_alpha4", d4));
            print_q_parity(&mut r, seed, &f, p)?;
        }
        IsogenyFamily::Dihedral => {
            let n = n.or(p).ok_or_else(|| CliError::Input("--n or --p is required for the dihedral family".into()))?;
            let maps = build_dihedral_maps(n)?;
            let d = maps.alpha2.det().unwrap_or_default();
            let formula = dihedral_alpha2_det_formula(n);
            r.line(format!("dihedral maps for n = {n}"));
            r.line(format!("det alpha_2 = {d}"));
            r.line(format!("2^(n-1) n^3 = {formula}: {}", yes(d == formula)));
            if show {
                r.line("f:");
                r.line(maps.f.to_string());
                r.line("alpha_2:");
                r.line(maps.alpha2.to_string());
            }
            r.record(Record::new("dihedral").with("n", n).with("det_alpha2", &d).with("closed_form", &formula));
            let prime = n > 2 && (2..n).all(|k| n % k != 0);
            if let Some(p) = p.or(prime.then_some(n)) {
                print_q_parity(&mut r, seed, &maps.f, p)?;
            }
        }
    }
    Ok(r)
}

fn show_matrix(m: &regparity::linalg::ZMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out.trim_end().to_string()
}

fn selftest(seed: u64) -> Report {
    let mut r = Report::new(seed, "selftest");
    for o in run_all(seed) {
        r.line(o.line());
        if !o.passed {
            r.code = 1;
        }
        r.record(
            Record::new("check")
                .with("criterion", o.criterion)
                .with("title", o.title)
                .with("passed", yes(o.passed))
                .with("detail", &o.detail),
        );
    }
    r
}
