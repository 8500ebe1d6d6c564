//! Command-line front end for the duality workbench.
//!
//! One verb per library operation chain.  Exit codes: 0 when every
//! check in the report passes, 1 when a check fails (the report
//! carries the counterexample), 2 when the input itself is invalid
//! (parse errors carry line/column).  Reports are deterministic:
//! identical inputs and options produce byte-identical output.
//!
//! Object-producing verbs (`spectrum`, `dual`) emit, under
//! `--format=json`, exactly the JSON document of the constructed
//! object, so their output can be fed back in as input.  `export`
//! always emits DOT.  Everything else emits a report in the chosen
//! format, with the almost-sober reading echoed in the header.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stonework::dot;
use stonework::duality::{counit_map, functor_P_obj, functor_T_obj, unit_map};
use stonework::error::{Error, Result};
use stonework::io::{self, OperatorForm, Parsed};
use stonework::lattices::{find_join_witness, find_meet_witness, WitnessSearch};
use stonework::limits;
use stonework::mask;
use stonework::order::{
    check_strict, enumerate_primes, is_distributive, CPoset, Check, ElementMap,
};
use stonework::spectrum::{spectrum, SpectrumSpace};
use stonework::suite::run_suite;
use stonework::topology::{
    check_spectral, classify, inc_from_space, validate_space, SoberMode, Space,
};

#[derive(Parser)]
#[command(
    name = "stonework",
    version,
    about = "Verification workbench for the duality between distributive \
             c-posets and almost semispectral spaces with base"
)]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Which almost-sober reading the topology checks use.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Standard)]
    mode: Mode,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse one object and check its axioms.
    Validate { file: PathBuf },
    /// Construct the prime spectrum of a distributive c-poset.
    Spectrum {
        file: PathBuf,
        /// Also report the Inc predicate for set codes up to this bound.
        #[arg(long)]
        maxk: Option<u64>,
    },
    /// Apply the duality functor: c-poset -> space, space -> c-poset.
    Dual { file: PathBuf },
    /// Verify a round trip through the duality.
    Roundtrip {
        /// PT: c-poset through its spectrum (counit).  TP: space through
        /// its base c-poset (unit).
        #[arg(long, value_enum)]
        side: Side,
        file: PathBuf,
    },
    /// List the prime ideals of a c-poset.
    Primes { file: PathBuf },
    /// Report the classification flags and subcategory cells of a space.
    Classify { file: PathBuf },
    /// Check that a map between c-posets is strict.
    CheckStrict {
        map: PathBuf,
        p0: PathBuf,
        p1: PathBuf,
    },
    /// Check that a point map between spaces is spectral.
    CheckSpectral {
        map: PathBuf,
        x0: PathBuf,
        x1: PathBuf,
    },
    /// Search a space's base for meet/join witness tables.
    Witness { file: PathBuf },
    /// Run the acceptance battery over generated corpora.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit DOT: order diagram of a (c-)poset, or specialization order
    /// plus base-inclusion diagram of a space.
    Export { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Standard,
    #[value(name = "strict-literal")]
    StrictLiteral,
}

impl Mode {
    fn sober(self) -> SoberMode {
        match self {
            Mode::Standard => SoberMode::Standard,
            Mode::StrictLiteral => SoberMode::StrictLiteral,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Mode::Standard => "standard",
            Mode::StrictLiteral => "strict-literal",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    #[value(name = "PT", alias = "pt")]
    Pt,
    #[value(name = "TP", alias = "tp")]
    Tp,
}

/// A finished report: text rendering, JSON rendering, overall verdict.
struct Rendered {
    text: String,
    json: Value,
    passed: bool,
}

impl Rendered {
    /// A report whose JSON form is an object document rather than a
    /// verdict (the verdict is vacuously "pass").
    fn document(text: String, json: Value) -> Self {
        Rendered {
            text,
            json,
            passed: true,
        }
    }
}

/// Report builder: header lines, body lines, a closing verdict.
struct Report {
    verb: &'static str,
    mode: &'static str,
    lines: Vec<String>,
    fields: serde_json::Map<String, Value>,
    passed: bool,
}

impl Report {
    fn new(verb: &'static str, mode: Mode) -> Self {
        Report {
            verb,
            mode: mode.name(),
            lines: Vec::new(),
            fields: serde_json::Map::new(),
            passed: true,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn field(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    fn check(&mut self, label: &str, c: &Check) {
        if c.passed {
            self.line(format!("{label}: PASS"));
        } else {
            let w = c.witness.as_deref().unwrap_or("no witness");
            self.line(format!("{label}: FAIL — {w}"));
            self.passed = false;
        }
        self.field(
            &label.replace([' ', '-'], "_"),
            serde_json::to_value(c).expect("check serializes"),
        );
    }

    fn finish(mut self) -> Rendered {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut text = format!(
            "# stonework report\n# verb: {}\n# mode: {}\n",
            self.verb, self.mode
        );
        for l in &self.lines {
            text.push_str(l);
            text.push('\n');
        }
        text.push_str(&format!("result: {verdict}\n"));
        self.fields.insert("verb".into(), json!(self.verb));
        self.fields.insert("mode".into(), json!(self.mode));
        self.fields.insert("passed".into(), json!(self.passed));
        Rendered {
            text,
            json: Value::Object(self.fields),
            passed: self.passed,
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Ok(raw) = std::env::var("WORKBENCH_SIZE_LIMIT") {
        match raw.parse::<usize>() {
            Ok(n) => {
                limits::set_exhaustive_ceiling(n);
            }
            Err(_) => {
                eprintln!("error: WORKBENCH_SIZE_LIMIT must be a natural number, got {raw:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run(&args) {
        Ok(rendered) => {
            let output = match args.format {
                Format::Text => rendered.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&rendered.json)
                        .expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            if let Err(e) = emit(&output, args.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if rendered.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(output: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, output)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{output}");
            Ok(())
        }
    }
}

/// JSON value of a serializable report component.
fn val<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report component serializes")
}

fn run(args: &Args) -> Result<Rendered> {
    let mode = args.mode;
    match &args.command {
        Command::Validate { file } => validate(file, mode),
        Command::Spectrum { file, maxk } => spectrum_verb(file, *maxk, mode),
        Command::Dual { file } => dual(file, mode),
        Command::Roundtrip { side, file } => roundtrip(*side, file, mode),
        Command::Primes { file } => primes(file, mode),
        Command::Classify { file } => classify_verb(file, mode),
        Command::CheckStrict { map, p0, p1 } => check_strict_verb(map, p0, p1, mode),
        Command::CheckSpectral { map, x0, x1 } => check_spectral_verb(map, x0, x1, mode),
        Command::Witness { file } => witness(file, mode),
        Command::Suite { seed } => suite(*seed, mode),
        Command::Export { file } => export(file),
    }
}

fn want_cposet(parsed: Parsed) -> Result<CPoset> {
    match parsed {
        Parsed::CPoset(p) => Ok(p),
        other => Err(Error::Parse(format!(
            "expected a cposet document, found kind {:?}",
            other.kind()
        ))),
    }
}

fn want_space(parsed: Parsed) -> Result<Space> {
    match parsed {
        Parsed::Space(s) => Ok(s),
        other => Err(Error::Parse(format!(
            "expected a space document, found kind {:?}",
            other.kind()
        ))),
    }
}

fn want_map(parsed: Parsed) -> Result<ElementMap> {
    match parsed {
        Parsed::Map(m) => Ok(m),
        other => Err(Error::Parse(format!(
            "expected a map document, found kind {:?}",
            other.kind()
        ))),
    }
}

fn name_lists(p: &CPoset, masks: &[u64]) -> Value {
    json!(masks
        .iter()
        .map(|&m| p.names_of_mask(m).into_iter().collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn validate(file: &Path, mode: Mode) -> Result<Rendered> {
    let mut r = Report::new("validate", mode);
    match io::parse_file(file)? {
        Parsed::CPoset(p) => {
            r.line("kind: cposet");
            r.line(format!("carrier: {} elements", p.n()));
            let distributive = is_distributive(&p)?;
            r.line(format!("distributive: {distributive}"));
            r.field("kind", json!("cposet"));
            r.field("carrier", json!(p.n()));
            r.field("distributive", json!(distributive));
        }
        Parsed::Space(s) => {
            let report = validate_space(&s, mode.sober())?;
            r.line("kind: space");
            r.line(format!(
                "points: {}, base sets: {}",
                s.n_points(),
                s.n_base()
            ));
            r.check("T0", &report.t0);
            r.check("covering base", &report.covering);
            r.check("intersection basis", &report.intersection_basis);
            r.check("empty-set membership biconditional", &report.db_ii);
            r.check("whole-space membership biconditional", &report.db_iii);
            r.line(format!("sober: {}", report.sober));
            r.line(format!("almost sober: {}", report.almost_sober));
            r.field("kind", json!("space"));
            r.field("points", json!(s.n_points()));
            r.field("sober", json!(report.sober));
            r.field("almost_sober", json!(report.almost_sober));
            r.passed = report.passed();
        }
        Parsed::Poset(p) => {
            r.line("kind: poset");
            r.line(format!("carrier: {} elements", p.n()));
            r.field("kind", json!("poset"));
            r.field("carrier", json!(p.n()));
        }
        Parsed::Lattice(l) => {
            r.line("kind: lattice");
            r.line(format!("carrier: {} elements", l.names().len()));
            r.field("kind", json!("lattice"));
            r.field("carrier", json!(l.names().len()));
        }
        Parsed::Semilattice(s) => {
            r.line("kind: semilattice");
            r.line(format!("carrier: {} elements", s.n()));
            r.field("kind", json!("semilattice"));
            r.field("carrier", json!(s.n()));
        }
        Parsed::Map(m) => {
            r.line("kind: map");
            r.line(format!("pairs: {}", m.pairs().len()));
            r.field("kind", json!("map"));
            r.field("pairs", json!(m.pairs().len()));
        }
    }
    Ok(r.finish())
}

/// Text summary of a spectrum: point count and each base set `V_a`.
fn describe_spectrum(sp: &SpectrumSpace) -> Vec<String> {
    let s = sp.space();
    let mut lines = vec![format!("points: {}", s.n_points())];
    for (i, &a) in sp.source_carrier().iter().enumerate() {
        lines.push(format!(
            "V {a} = {}",
            mask::format_with_names(s.beta_set(i), s.point_names())
        ));
    }
    lines
}

fn spectrum_verb(file: &Path, maxk: Option<u64>, mode: Mode) -> Result<Rendered> {
    let p = want_cposet(io::parse_file(file)?)?;
    let sp = spectrum(&p)?;
    let doc = io::spectrum_document(&sp);
    let mut text = format!(
        "# stonework report\n# verb: spectrum\n# mode: {}\n",
        mode.name()
    );
    for l in describe_spectrum(&sp) {
        text.push_str(&l);
        text.push('\n');
    }
    let mut json = val(&doc);
    if let Some(maxk) = maxk {
        let inc = inc_from_space(sp.space(), maxk);
        let entries = inc
            .entries
            .iter()
            .map(|&(i, k)| format!("({i}, {k})"))
            .collect::<Vec<_>>()
            .join(" ");
        text.push_str(&format!("Inc up to {maxk}: {entries}\n"));
        json.as_object_mut()
            .expect("document is an object")
            .insert("inc".into(), json!(inc.entries));
    }
    Ok(Rendered::document(text, json))
}

fn dual(file: &Path, mode: Mode) -> Result<Rendered> {
    match io::parse_file(file)? {
        Parsed::CPoset(p) => {
            let sp = functor_T_obj(&p)?;
            let doc = io::spectrum_document(&sp);
            let mut text = format!(
                "# stonework report\n# verb: dual\n# mode: {}\n# direction: cposet -> space\n",
                mode.name()
            );
            for l in describe_spectrum(&sp) {
                text.push_str(&l);
                text.push('\n');
            }
            Ok(Rendered::document(text, val(&doc)))
        }
        Parsed::Space(s) => {
            let p = functor_P_obj(&s)?;
            let doc = io::cposet_document(&p, OperatorForm::Codes);
            let text = format!(
                "# stonework report\n# verb: dual\n# mode: {}\n# direction: space -> cposet\n\
                 carrier: {} elements\noperator codes: {}\n",
                mode.name(),
                p.n(),
                p.operator().codes().len()
            );
            Ok(Rendered::document(text, val(&doc)))
        }
        other => Err(Error::Parse(format!(
            "the dual verb expects a cposet or space document, found kind {:?}",
            other.kind()
        ))),
    }
}

fn roundtrip(side: Side, file: &Path, mode: Mode) -> Result<Rendered> {
    match side {
        Side::Pt => {
            let p = want_cposet(io::parse_file(file)?)?;
            let rep = counit_map(&p)?;
            let mut r = Report::new("roundtrip", mode);
            r.line("side: PT");
            r.line(format!("carrier: {} elements", p.n()));
            r.line(format!("spectrum points: {}", rep.spectrum.n_points()));
            let xi = rep
                .xi
                .pairs()
                .iter()
                .map(|&(a, b)| format!("{a} -> {b}"))
                .collect::<Vec<_>>()
                .join(", ");
            r.line(format!("xi: {xi}"));
            r.check("bijective", &rep.iso.bijective);
            r.check("order preserving", &rep.iso.order_preserving);
            r.check("order reflecting", &rep.iso.order_reflecting);
            r.check("closure commutes", &rep.iso.closure_commutes);
            r.field("side", json!("PT"));
            r.field("xi", json!(rep.xi.pairs()));
            Ok(r.finish())
        }
        Side::Tp => {
            let s = want_space(io::parse_file(file)?)?;
            let rep = unit_map(&s)?;
            let mut r = Report::new("roundtrip", mode);
            r.line("side: TP");
            r.line(format!(
                "points: {}, base sets: {}",
                s.n_points(),
                s.n_base()
            ));
            r.line(format!("dual carrier: {} elements", rep.dual.n()));
            let fx = rep
                .forward
                .point_map
                .pairs()
                .iter()
                .map(|&(x, q)| format!("{x} -> {q}"))
                .collect::<Vec<_>>()
                .join(", ");
            r.line(format!("f_X: {fx}"));
            r.line("bijection: PASS");
            r.line("pullback identity: PASS");
            r.field("side", json!("TP"));
            r.field("f_x", json!(rep.forward.point_map.pairs()));
            r.field("f_x_inverse", json!(rep.inverse.point_map.pairs()));
            Ok(r.finish())
        }
    }
}

fn primes(file: &Path, mode: Mode) -> Result<Rendered> {
    let p = want_cposet(io::parse_file(file)?)?;
    let primes = enumerate_primes(&p)?;
    let mut r = Report::new("primes", mode);
    r.line(format!("carrier: {} elements", p.n()));
    for &m in &primes {
        r.line(format!("prime: {}", p.format_mask(m)));
    }
    r.line(format!("count: {}", primes.len()));
    r.field("carrier", json!(p.n()));
    r.field("primes", name_lists(&p, &primes));
    r.field("count", json!(primes.len()));
    Ok(r.finish())
}

fn classify_verb(file: &Path, mode: Mode) -> Result<Rendered> {
    let s = want_space(io::parse_file(file)?)?;
    let cls = classify(&s, mode.sober())?;
    let mut r = Report::new("classify", mode);
    let flags = [
        ("empty set in base", cls.has_empty_in_base),
        ("whole space in base", cls.has_whole_in_base),
        ("base down-directed", cls.down_directed),
        ("base up-directed", cls.up_directed),
        ("0-base", cls.zero_base),
        ("1-base", cls.one_base),
        ("multiplicative", cls.multiplicative),
        ("multiplicative on nonempty", cls.multiplicative_nonempty),
        ("additive", cls.additive),
        ("additive on nonempty", cls.additive_nonempty),
        ("sober", cls.sober),
        ("almost sober", cls.almost_sober),
        ("compact", cls.compact),
        ("base of compact opens", cls.base_of_compact_opens),
    ];
    for (label, value) in flags {
        r.line(format!("{label}: {value}"));
    }
    r.line(format!("cells: {}", cls.cells.join(", ")));
    r.field("classification", val(&cls));
    Ok(r.finish())
}

fn check_strict_verb(map: &Path, p0: &Path, p1: &Path, mode: Mode) -> Result<Rendered> {
    let g = want_map(io::parse_file(map)?)?;
    let p0 = want_cposet(io::parse_file(p0)?)?;
    let p1 = want_cposet(io::parse_file(p1)?)?;
    let rep = check_strict(&p0, &p1, &g)?;
    let mut r = Report::new("check-strict", mode);
    r.line(format!(
        "map: {} pairs, carriers {} -> {}",
        g.pairs().len(),
        p0.n(),
        p1.n()
    ));
    r.line(format!("primes checked: {}", rep.primes_checked));
    r.check("preimages prime", &rep.preimages_prime);
    r.field("primes_checked", json!(rep.primes_checked));
    Ok(r.finish())
}

fn check_spectral_verb(map: &Path, x0: &Path, x1: &Path, mode: Mode) -> Result<Rendered> {
    let f = want_map(io::parse_file(map)?)?;
    let x0 = want_space(io::parse_file(x0)?)?;
    let x1 = want_space(io::parse_file(x1)?)?;
    let check = check_spectral(&f, &x0, &x1)?;
    let mut r = Report::new("check-spectral", mode);
    r.line(format!(
        "map: {} pairs, spaces with {} and {} points",
        f.pairs().len(),
        x0.n_points(),
        x1.n_points()
    ));
    r.check("preimages of base sets open", &check);
    Ok(r.finish())
}

fn witness(file: &Path, mode: Mode) -> Result<Rendered> {
    let s = want_space(io::parse_file(file)?)?;
    let meet = find_meet_witness(&s);
    let join = find_join_witness(&s);
    let mut r = Report::new("witness", mode);
    let describe = |r: &mut Report, label: &str, search: &WitnessSearch| match search {
        WitnessSearch::Found { witness } => {
            let rows = witness
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect::<Vec<_>>()
                .join("; ");
            r.line(format!("{label} witness: found ({rows})"));
        }
        WitnessSearch::Absent { i, j } => {
            r.line(format!("{label} witness: absent at base pair ({i}, {j})"));
        }
    };
    describe(&mut r, "meet", &meet);
    describe(&mut r, "join", &join);
    r.field("meet", val(&meet));
    r.field("join", val(&join));
    Ok(r.finish())
}

fn suite(seed: u64, mode: Mode) -> Result<Rendered> {
    let report = run_suite(seed)?;
    let mut r = Report::new("suite", mode);
    r.line(format!("seed: {seed}"));
    for c in &report.criteria {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        r.line(format!("{:>2} {verdict}  {} — {}", c.id, c.title, c.detail));
    }
    r.passed = report.passed();
    r.field("seed", json!(seed));
    r.field("criteria", val(&report.criteria));
    Ok(r.finish())
}

fn export(file: &Path) -> Result<Rendered> {
    let dot = match io::parse_file(file)? {
        Parsed::CPoset(p) => dot::poset_dot(p.poset()),
        Parsed::Poset(p) => dot::poset_dot(&p),
        Parsed::Space(s) => dot::space_dot(&s),
        other => Err(Error::Parse(format!(
            "the export verb expects a cposet, poset, or space document, found kind {:?}",
            other.kind()
        )))?,
    };
    Ok(Rendered::document(dot.clone(), json!(dot)))
}
