use std::collections::BTreeMap;
use std::env;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use spslab_core::congruence::jir_con;
use spslab_core::constructions::{
    grid, multifork_decompose, multifork_insert, s_lattice, theorem2_h, theorem2_l,
};
use spslab_core::corpus::enumerate_corpus;
use spslab_core::diagram::{recognize_rectangular, RectDiagram};
use spslab_core::io::{con_json, read_pattern, LatticeJson, PosetJson};
use spslab_core::lamps::{lamp_poset, quadruple};
use spslab_core::lattice::count_downsets;
use spslab_core::properties::{
    check_all, corollary62_report, patch_characterize, Check, PatternPoset, Verdict, Witness,
};
use spslab_core::render::{render, Format, RenderStyle};
use spslab_core::verify::{verify_corpus, verify_diagram, Suite};
use spslab_core::{FiniteLattice, FinitePoset};

#[derive(Parser)]
#[command(
    name = "spslab",
    version,
    about = "Slim, planar, semimodular lattice toolkit"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Element bound for corpus enumeration.
    #[arg(long, global = true, default_value_t = 24)]
    max_size: usize,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check slimness, semimodularity, rectangularity and the diagram contract.
    Validate { file: String },
    /// Size of Con L and the poset Jir(Con L).
    Con {
        file: String,
        /// Also list the connected components of Jir(Con L), i.e. the
        /// directly indecomposable factors of Con L.
        #[arg(long)]
        factor: bool,
    },
    /// Join-irreducible congruences with their generating edges.
    Jir {
        file: String,
        /// Show Jir L instead of Jir(Con L).
        #[arg(long)]
        lattice: bool,
    },
    /// Lamp table and lamp order.
    Lamps { file: String },
    /// Lattice JSON with computed coordinates.
    Layout { file: String },
    /// Draw the diagram as SVG or TikZ.
    Render {
        file: String,
        /// Defaults to TikZ for `-o *.tex` and SVG otherwise.
        #[arg(long, value_enum)]
        format: Option<RenderFormat>,
        /// Shade the lit region of the lamp with this foot (or internal peak).
        #[arg(long)]
        lit: Vec<String>,
        /// Fill the 4-cell with this top grey.
        #[arg(long)]
        grey: Vec<String>,
        #[arg(long)]
        labels: bool,
    },
    /// Construct lattices.
    Build {
        #[command(subcommand)]
        what: Build,
    },
    /// Find a grid and multifork insertions producing the diagram.
    Decompose { file: String },
    /// Run property checks on one lattice.
    Check {
        file: String,
        /// Lamp suites: lamp isomorphism, rho-equality, Key Lemma, shields.
        #[arg(long)]
        lamps: bool,
        /// Lamp suites, Theorems 3 and 4, the 3P3C property and the patch
        /// characterization (the default).
        #[arg(long)]
        all: bool,
        /// Pattern poset used for Theorem 4(ii).
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
    /// Enumerate slim rectangular lattices up to --max-size elements.
    Enumerate,
    /// Run verification suites over the enumerated corpus.
    Verify {
        /// Suites to run (repeatable); all by default.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Pattern poset used for Theorem 4(ii).
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Build {
    /// The grid C_{M+1} x C_{N+1}.
    Grid { m: usize, n: usize },
    /// B2 with a rank-T multifork in its cell.
    St { t: usize },
    /// Insert a multifork into the distributive 4-cell with the given top.
    Fork {
        file: String,
        #[arg(long)]
        cell_top: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
    },
    /// Lattice whose congruence lattice is built from those of the inputs.
    Theorem2 {
        #[arg(required = true)]
        files: Vec<String>,
        #[arg(long, value_enum, default_value_t = Variant::L)]
        variant: Variant,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Svg,
    Tikz,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    /// Glued sum; Con is the direct product.
    #[value(name = "H", alias = "h")]
    H,
    /// Patch lattice; Jir(Con) is the disjoint union with a top block.
    #[value(name = "L", alias = "l")]
    L,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] spslab_core::Error),
    #[error("{0}")]
    Violation(String),
}

impl CliError {
    fn code(&self) -> u8 {
        use spslab_core::Error as E;
        match self {
            CliError::Input(_) => 1,
            CliError::Violation(_) => 2,
            CliError::Core(e) => match e {
                E::IsoFailure(_)
                | E::ReplayMismatch(_)
                | E::EquivalenceViolation(_)
                | E::GreyCellNotFound(_)
                | E::LayoutContradiction(_)
                | E::MissingShield(..)
                | E::DecompositionFailed(_) => 3,
                _ => 1,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn fixture_dir() -> PathBuf {
    env::var_os("SPSLAB_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

/// Reads a file, `-` for stdin, or a fixture by name (with or without `.json`).
fn read_input(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    let dir = fixture_dir();
    let candidates = [
        PathBuf::from(arg),
        dir.join(arg),
        dir.join(format!("{arg}.json")),
    ];
    for p in &candidates {
        if p.is_file() {
            return fs::read_to_string(p)
                .map_err(|e| CliError::Input(format!("{}: {e}", p.display())));
        }
    }
    Err(CliError::Input(format!(
        "{arg}: no such file or fixture (fixture directory {})",
        dir.display()
    )))
}

fn load_json(arg: &str) -> Result<LatticeJson> {
    serde_json::from_str(&read_input(arg)?).map_err(|e| CliError::Input(format!("{arg}: {e}")))
}

fn load_lattice(arg: &str) -> Result<FiniteLattice> {
    Ok(load_json(arg)?.to_lattice()?)
}

fn load_diagram(arg: &str) -> Result<RectDiagram> {
    Ok(load_json(arg)?.to_diagram()?)
}

fn load_pattern(path: &Option<PathBuf>) -> Result<Option<PatternPoset>> {
    path.as_deref()
        .map(|p| read_pattern(p).map_err(CliError::from))
        .transpose()
}

fn element(l: &FiniteLattice, name: &str) -> Result<usize> {
    Ok(l.index_of(name)?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn poset_lines(p: &FinitePoset, out: &mut String) {
    if p.cover_count() == 0 {
        let _ = writeln!(out, "  (antichain) {}", p.names().join(", "));
    }
    for (a, b) in p.cover_names() {
        let _ = writeln!(out, "  {a} < {b}");
    }
}

fn components(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut comp: Vec<Option<usize>> = vec![None; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s].is_some() {
            continue;
        }
        let id = out.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp[s] = Some(id);
        while let Some(x) = stack.pop() {
            members.push(x);
            for &y in p.upper_covers(x).iter().chain(p.lower_covers(x)) {
                if comp[y].is_none() {
                    comp[y] = Some(id);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn witness_text(v: &Verdict) -> String {
    match v {
        Verdict::Pass => String::new(),
        Verdict::Skipped { reason } => reason.clone(),
        Verdict::Fail {
            witness: Witness::Elements(xs),
        } => xs.join(", "),
        Verdict::Fail {
            witness: Witness::Embedding(map),
        } => map
            .iter()
            .map(|(a, b)| format!("{a}->{b}"))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn verdict_word(v: &Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail { .. } => "FAIL",
        Verdict::Skipped { .. } => "skipped",
    }
}

struct Output {
    text: String,
    json: Value,
    /// Set when the command found a property violation.
    violation: Option<String>,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            violation: None,
        }
    }

    /// Output that is JSON in both modes.
    fn json_only(json: Value) -> Self {
        Output::new(pretty(&json), json)
    }
}

fn validate(file: &str) -> Result<Output> {
    let json_in = load_json(file)?;
    let l = json_in.to_lattice()?;
    let semimodular = l.is_semimodular();
    let slim = l.is_slim();
    let mut text = String::new();
    let yes = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(text, "elements: {}", l.len());
    let _ = writeln!(text, "semimodular: {}", yes(semimodular));
    let _ = writeln!(text, "slim: {}", yes(slim));
    let mut problems = Vec::new();
    if !semimodular {
        problems.push("not semimodular".to_string());
    }
    if !slim {
        problems.push("not slim".to_string());
    }
    let mut out = json!({
        "elements": l.len(),
        "semimodular": semimodular,
        "slim": slim,
    });
    match recognize_rectangular(&l) {
        Err(e) => {
            let _ = writeln!(text, "rectangular: no ({e})");
            out["rectangular"] = json!(false);
            problems.push(e.to_string());
        }
        Ok(_) => {
            let d = json_in.to_diagram()?;
            let patch =
                l.is_cover(d.left_corner(), l.top()) && l.is_cover(d.right_corner(), l.top());
            let _ = writeln!(
                text,
                "rectangular: yes (left corner {}, right corner {})",
                d.name(d.left_corner()),
                d.name(d.right_corner())
            );
            let _ = writeln!(text, "patch: {}", yes(patch));
            let violations: Vec<String> = d.validate_c1().iter().map(|v| v.to_string()).collect();
            if violations.is_empty() {
                let _ = writeln!(text, "C1 diagram: ok");
            } else {
                let _ = writeln!(text, "C1 diagram: {} violation(s)", violations.len());
                for v in &violations {
                    let _ = writeln!(text, "  {v}");
                }
                problems.push(format!("{} diagram violation(s)", violations.len()));
            }
            out["rectangular"] = json!(true);
            out["left_corner"] = json!(d.name(d.left_corner()));
            out["right_corner"] = json!(d.name(d.right_corner()));
            out["patch"] = json!(patch);
            out["c1_violations"] = json!(violations);
        }
    }
    let mut o = Output::new(text, out);
    if !problems.is_empty() {
        o.violation = Some(problems.join("; "));
    }
    Ok(o)
}

fn con(file: &str, factor: bool) -> Result<Output> {
    let l = load_lattice(file)?;
    let summary = con_json(&l);
    let jir = summary.jir_poset.to_poset()?;
    let mut text = format!(
        "|Con L| = {}\nJir(Con L): {} elements\n",
        summary.con_size,
        jir.len()
    );
    poset_lines(&jir, &mut text);
    let mut out = serde_json::to_value(&summary).expect("serialisable");
    if factor {
        let mut factors = Vec::new();
        let _ = writeln!(text, "factors:");
        for comp in components(&jir) {
            let sub = jir.induced(&comp);
            let size = count_downsets(&sub);
            let _ = writeln!(
                text,
                "  {} down-sets on {{{}}}",
                size,
                sub.names().join(", ")
            );
            factors.push(json!({"jir": PosetJson::from(&sub), "size": size}));
        }
        out["factors"] = json!(factors);
    }
    Ok(Output::new(text, out))
}

fn jir(file: &str, of_lattice: bool) -> Result<Output> {
    let l = load_lattice(file)?;
    if of_lattice {
        let p = l.jir_poset();
        let mut text = format!("Jir L: {} elements\n", p.len());
        poset_lines(&p, &mut text);
        return Ok(Output::new(text, json!(PosetJson::from(&p))));
    }
    let jc = jir_con(&l);
    let p = &jc.poset;
    let mut text = format!("Jir(Con L): {} elements\n", p.len());
    let mut rows = Vec::new();
    for x in 0..p.len() {
        let edges: Vec<String> = jc
            .edges
            .iter()
            .zip(&jc.edge_class)
            .filter(|(_, &c)| c == x)
            .map(|(&(a, b), _)| format!("[{},{}]", l.name(a), l.name(b)))
            .collect();
        let ups: Vec<&str> = p.upper_covers(x).iter().map(|&y| p.name(y)).collect();
        let _ = writeln!(
            text,
            "  {}  covered by: {}  edges: {}",
            p.name(x),
            if ups.is_empty() {
                "-".to_string()
            } else {
                ups.join(", ")
            },
            edges.join(" ")
        );
        rows.push(json!({"element": p.name(x), "upper_covers": ups, "edges": edges}));
    }
    Ok(Output::new(
        text,
        json!({"poset": PosetJson::from(p), "elements": rows}),
    ))
}

fn lamps_cmd(file: &str) -> Result<Output> {
    let d = load_diagram(file)?;
    let lp = lamp_poset(&d)?;
    let mut text = format!(
        "{:<16} {:<10} {:<10} {:>5}  <p,q,r,s>\n",
        "kind", "foot", "peak", "tubes"
    );
    let mut rows = Vec::new();
    for lamp in &lp.lamps {
        let q = quadruple(&d, lamp);
        let _ = writeln!(
            text,
            "{:<16} {:<10} {:<10} {:>5}  <{},{},{},{}>",
            lamp.kind.to_string(),
            d.name(lamp.foot),
            d.name(lamp.peak),
            lamp.tubes.len(),
            q.p,
            q.q,
            q.r,
            q.s
        );
        let tubes: Vec<(String, String)> = lamp
            .tubes
            .iter()
            .map(|t| (d.name(t.foot).to_string(), d.name(t.peak).to_string()))
            .collect();
        rows.push(json!({
            "kind": lamp.kind.to_string(),
            "foot": d.name(lamp.foot),
            "peak": d.name(lamp.peak),
            "tubes": tubes,
            "quadruple": [q.p, q.q, q.r, q.s],
        }));
    }
    let _ = writeln!(text, "order (lamps named by foot):");
    poset_lines(&lp.order, &mut text);
    Ok(Output::new(
        text,
        json!({"lamps": rows, "order": PosetJson::from(&lp.order)}),
    ))
}

fn render_cmd(
    cli: &Cli,
    file: &str,
    format: Option<RenderFormat>,
    lit: &[String],
    grey: &[String],
    labels: bool,
) -> Result<Output> {
    let d = load_diagram(file)?;
    let l = d.lattice();
    let tex = cli
        .output
        .as_ref()
        .and_then(|p| p.extension())
        .is_some_and(|e| e == "tex");
    let format = match format {
        Some(RenderFormat::Svg) => Format::Svg,
        Some(RenderFormat::Tikz) => Format::Tikz,
        None if tex => Format::Tikz,
        None => Format::Svg,
    };
    let style = RenderStyle {
        labels,
        lit: lit.iter().map(|s| element(l, s)).collect::<Result<_>>()?,
        grey_cells: grey.iter().map(|s| element(l, s)).collect::<Result<_>>()?,
    };
    let text = render(&d, format, &style)?;
    Ok(Output::new(text.clone(), Value::String(text)))
}

fn build(what: &Build) -> Result<Output> {
    let json = match what {
        Build::Grid { m, n } => json!(LatticeJson::from_diagram(&grid(*m, *n)?)),
        Build::St { t } => json!(LatticeJson::from_diagram(&s_lattice(*t)?)),
        Build::Fork {
            file,
            cell_top,
            rank,
        } => {
            let d = load_diagram(file)?;
            let top = element(d.lattice(), cell_top)?;
            json!(LatticeJson::from_diagram(
                &multifork_insert(&d, top, *rank)?.diagram
            ))
        }
        Build::Theorem2 { files, variant } => match variant {
            Variant::H => {
                let parts = files
                    .iter()
                    .map(|f| load_lattice(f))
                    .collect::<Result<Vec<_>>>()?;
                let refs: Vec<&FiniteLattice> = parts.iter().collect();
                json!(LatticeJson::from_lattice(&theorem2_h(&refs)?))
            }
            Variant::L => {
                let parts = files
                    .iter()
                    .map(|f| load_diagram(f))
                    .collect::<Result<Vec<_>>>()?;
                let refs: Vec<&RectDiagram> = parts.iter().collect();
                json!(LatticeJson::from_diagram(&theorem2_l(&refs)?.diagram))
            }
        },
    };
    Ok(Output::json_only(json))
}

fn check_rows(checks: &[Check], text: &mut String) {
    for c in checks {
        let _ = writeln!(
            text,
            "{:<12} {:<8} {}",
            c.name,
            verdict_word(&c.verdict),
            witness_text(&c.verdict)
        );
    }
}

fn check(file: &str, lamps: bool, all: bool, pattern: &Option<PathBuf>) -> Result<Output> {
    let d = load_diagram(file)?;
    let l = d.lattice();
    let with_props = all || !lamps;
    let mut text = format!("{:<12} {:<8} witness\n", "check", "verdict");
    let mut checks: Vec<Check> = Vec::new();
    let lamp_suites = [Suite::LampIso, Suite::Rho, Suite::KeyLemma, Suite::Shields];
    let found = verify_diagram(&d, None, &lamp_suites, None);
    for s in lamp_suites {
        let failures: Vec<&String> = found
            .iter()
            .filter(|(t, _)| *t == s)
            .map(|(_, m)| m)
            .collect();
        let verdict = match failures.first() {
            None => Verdict::Pass,
            Some(m) => Verdict::Fail {
                witness: Witness::Elements(vec![m.to_string()]),
            },
        };
        checks.push(Check {
            name: s.to_string(),
            verdict,
        });
    }
    let mut out = json!({});
    if with_props {
        let r = load_pattern(pattern)?;
        let jir = spslab_core::jir_con_poset(l);
        checks.extend(check_all(&jir, r.as_ref()).checks);
        let pc = patch_characterize(l, Some(&d))?;
        let mut patch = json!({
            "patch": pc.is_patch,
            "jir_con_maximal": pc.max_count,
            "d0_size": pc.d0.as_ref().map(|d0| d0.len()),
        });
        if pc.is_patch {
            let c = corollary62_report(l, Some(&d))?;
            checks.extend(c.report.checks.iter().cloned());
            patch["d0_size"] = json!(c.d0.len());
        }
        out["patch"] = patch;
        let _ = writeln!(
            text,
            "{:<12} {:<8} maximal elements of Jir(Con L): {}",
            "lemma6.1",
            if pc.is_patch { "patch" } else { "no-patch" },
            pc.max_count
        );
    }
    check_rows(&checks, &mut text);
    out["checks"] = serde_json::to_value(&checks).expect("serialisable");
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c.verdict.is_fail())
        .map(|c| c.name.as_str())
        .collect();
    let mut o = Output::new(text, out);
    if !failed.is_empty() {
        o.violation = Some(format!("failed: {}", failed.join(", ")));
    }
    Ok(o)
}

fn enumerate(max_size: usize) -> Result<Output> {
    let corpus = enumerate_corpus(max_size);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for item in &corpus.items {
        *counts.entry(item.diagram.len()).or_default() += 1;
    }
    let mut text = format!("{:>5} {:>7}\n", "size", "count");
    for (size, count) in &counts {
        let _ = writeln!(text, "{size:>5} {count:>7}");
    }
    let _ = writeln!(text, "total {:>7}", corpus.items.len());
    let items: Vec<Value> = corpus
        .items
        .iter()
        .map(|i| json!({"size": i.diagram.len(), "script": i.script}))
        .collect();
    Ok(Output::new(
        text,
        json!({"max_size": max_size, "counts": counts, "items": items}),
    ))
}

fn verify(max_size: usize, suites: &[String], pattern: &Option<PathBuf>) -> Result<Output> {
    let suites: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites
            .iter()
            .map(|s| {
                s.parse()
                    .map_err(|e: spslab_core::Error| CliError::Input(e.to_string()))
            })
            .collect::<Result<_>>()?
    };
    let r = load_pattern(pattern)?;
    let corpus = enumerate_corpus(max_size);
    let report = verify_corpus(&corpus, &suites, r.as_ref());
    let mut text = format!(
        "corpus: {} lattices with at most {} elements\n{:<12} {:>8} {:>10}\n",
        report.items, report.max_size, "suite", "checked", "violations"
    );
    for s in &report.suites {
        let _ = writeln!(
            text,
            "{:<12} {:>8} {:>10}",
            s.suite.as_str(),
            s.checked,
            s.violations
        );
    }
    for v in &report.violations {
        let _ = writeln!(
            text,
            "item {} ({} elements) {}: {}",
            v.item, v.size, v.suite, v.detail
        );
    }
    let mut o = Output::new(text, serde_json::to_value(&report).expect("serialisable"));
    if !report.passed() {
        o.violation = Some(format!("{} violation(s)", report.violations.len()));
    }
    Ok(o)
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Con { file, factor } => con(file, *factor),
        Command::Jir { file, lattice } => jir(file, *lattice),
        Command::Lamps { file } => lamps_cmd(file),
        Command::Layout { file } => Ok(Output::json_only(json!(LatticeJson::from_diagram(
            &load_diagram(file)?
        )))),
        Command::Render {
            file,
            format,
            lit,
            grey,
            labels,
        } => render_cmd(cli, file, *format, lit, grey, *labels),
        Command::Build { what } => build(what),
        Command::Decompose { file } => {
            let script = multifork_decompose(&load_diagram(file)?)?;
            Ok(Output::json_only(json!(script)))
        }
        Command::Check {
            file,
            lamps,
            all,
            pattern,
        } => check(file, *lamps, *all, pattern),
        Command::Enumerate => enumerate(cli.max_size),
        Command::Verify { suites, pattern } => verify(cli.max_size, suites, pattern),
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    let body = match (&out.json, cli.json) {
        (Value::String(s), _) => s.clone(),
        (v, true) => pretty(v),
        (_, false) => out.text.clone(),
    };
    match &cli.output {
        Some(path) => {
            fs::write(path, body).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
        }
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Input(format!("stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("spslab: {e}");
            return ExitCode::from(1);
        }
    }
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out)?;
        match out.violation {
            Some(msg) => Err(CliError::Violation(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spslab: {e}");
            ExitCode::from(e.code())
        }
    }
}
