//! Argument parsing and the verbs of the `qca` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qca_core::duality::{check_compatible_pair, check_intertwining, p1_star, synthesize_lambda};
use qca_core::mutation::{apply_mutation_sequence, Mode, Row};
use qca_core::poisson::{check_poisson_map, poisson_bracket};
use qca_core::qtorus::QTorusElement;
use qca_core::ratfun::CommutativeRational;
use qca_core::scatter::{complete_to_order, initial_diagram, ScatteringDiagram, Side};
use qca_core::theta::{enumerate_broken_lines, theta_function, BrokenLine};
use qca_core::Rational;
use serde_json::{json, Value};

use crate::diagram_file::DiagramRecord;
use crate::seed_file::{
    parse_fraction_list, parse_int_list, parse_sequence, render_fraction, Coefficients, LoadedSeed, SeedFile,
};
use crate::suites;
use crate::svg::{self, Viewport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qca", version, about = "Exact computations in quantum cluster algebras")]
struct Cli {
    /// Output format on stdout.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mutate a seed along a sequence and print the final chart.
    Mutate(MutateArgs),
    /// Print every step of a mutation sequence.
    Table(TableArgs),
    /// Build and complete a rank-2 scattering diagram.
    Scatter(ScatterArgs),
    /// Enumerate broken lines and sum a theta function.
    Theta(ThetaArgs),
    /// Print p* and Λ, or check that p* intertwines quantum mutation.
    Pstar(PstarArgs),
    /// Print the Poisson bracket, or check that mutation is a Poisson map.
    Poisson(PoissonArgs),
    /// Run the reproduction suites.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct SequenceArgs {
    #[arg(long)]
    seed: PathBuf,
    /// Comma-separated 1-based directions, e.g. 2,1,2.
    #[arg(long, default_value = "")]
    sequence: String,
    /// x-classical, x-family, x-quantum, x-quantum-coeff, a-classical, a-prin or a-quantum.
    #[arg(long)]
    mode: Option<String>,
}

#[derive(Args, Debug)]
struct MutateArgs {
    #[command(flatten)]
    common: SequenceArgs,
    /// Write the mutated chart as a seed file.
    #[arg(long)]
    emit_seed: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    common: SequenceArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    A,
    X,
}

#[derive(Args, Debug)]
struct ScatterArgs {
    #[arg(long)]
    seed: PathBuf,
    #[arg(long, default_value_t = 2)]
    order: usize,
    /// Quantum walls instead of classical ones.
    #[arg(long)]
    quantum: bool,
    #[arg(long, value_enum, default_value_t = SideArg::A)]
    side: SideArg,
    /// Stop after the incoming walls.
    #[arg(long)]
    initial: bool,
    /// Read walls from an exported diagram instead of computing them.
    #[arg(long, conflicts_with_all = ["initial", "quantum", "side", "order"])]
    import: Option<PathBuf>,
    #[arg(long)]
    emit_svg: Option<PathBuf>,
    #[arg(long)]
    emit_json: Option<PathBuf>,
    /// SVG width and height in pixels.
    #[arg(long, default_value_t = 480)]
    viewport: u32,
}

#[derive(Args, Debug)]
struct ThetaArgs {
    #[arg(long)]
    seed: PathBuf,
    /// Initial exponent m₀ in f-coordinates, e.g. -3,5.
    #[arg(long, allow_hyphen_values = true)]
    gvector: String,
    /// Endpoint Q, fractions allowed, e.g. 1/3,1/3.
    #[arg(long, allow_hyphen_values = true)]
    basepoint: String,
    /// Diagram order K.
    #[arg(long, default_value_t = 2)]
    order: usize,
    /// Keep only lines with this final exponent.
    #[arg(long, allow_hyphen_values = true)]
    filter_exponent: Option<String>,
    /// Bound on the total bend degree; defaults to 2K.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Classical walls (q = 1).
    #[arg(long)]
    classical: bool,
    #[arg(long)]
    emit_svg: Option<PathBuf>,
    #[arg(long)]
    emit_json: Option<PathBuf>,
    #[arg(long, default_value_t = 480)]
    viewport: u32,
}

#[derive(Args, Debug)]
struct PstarArgs {
    #[arg(long)]
    seed: PathBuf,
    #[arg(long)]
    check_intertwining: bool,
    /// Relative precision for series comparison.
    #[arg(long, default_value_t = 12)]
    order: usize,
}

#[derive(Args, Debug)]
struct PoissonArgs {
    #[arg(long)]
    seed: PathBuf,
    /// 1-based mutation direction; all unfrozen directions when absent.
    #[arg(long)]
    k: Option<usize>,
    /// Check the Poisson-map identity on every generator pair.
    #[arg(long)]
    rank_check: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// all, mutation-table, coefficient-table, classical-a2, quantum-a23, broken-lines or properties.
    #[arg(long, default_value = "all")]
    suite: String,
    /// List passing checks too.
    #[arg(long)]
    verbose: bool,
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: EXIT_OK }
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Mutate(a) => mutate(a),
        Command::Table(a) => table(a),
        Command::Scatter(a) => scatter(a),
        Command::Theta(a) => theta(a),
        Command::Pstar(a) => pstar(a),
        Command::Poisson(a) => poisson(a),
        Command::Check(a) => check(a),
    };
    match result {
        Ok(o) => {
            let written = match cli.format {
                Format::Text => write!(out, "{}", o.text),
                Format::Json => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("JSON values serialize"))
                }
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn lambda_for(loaded: &LoadedSeed) -> Result<Vec<Vec<Rational>>> {
    match &loaded.lambda {
        Some(l) => Ok(l.clone()),
        None => Ok(synthesize_lambda(&loaded.seed)?),
    }
}

fn default_mode(loaded: &LoadedSeed) -> Mode {
    if loaded.principal {
        Mode::XQuantumCoeff
    } else {
        Mode::XQuantum
    }
}

fn int_matrix(m: &[Vec<Rational>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(render_fraction).collect()).collect()
}

fn render_matrix_inline(m: &[Vec<String>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("({})", r.join(","))).collect();
    format!("({})", rows.join(","))
}

fn render_int_rows(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> =
        m.iter().map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
    format!("({})", rows.join(","))
}

fn run_sequence(a: &SequenceArgs) -> Result<(LoadedSeed, Mode, Vec<Row>)> {
    let loaded = SeedFile::load(&a.seed)?;
    let mode = match &a.mode {
        Some(m) => m.parse::<Mode>()?,
        None => default_mode(&loaded),
    };
    let seq = parse_sequence(&a.sequence, &loaded.seed)?;
    let lambda = if mode == Mode::AQuantum { Some(lambda_for(&loaded)?) } else { None };
    let rows = apply_mutation_sequence(&loaded.seed, &seq, mode, lambda.as_deref())?;
    Ok((loaded, mode, rows))
}

fn row_json(r: &Row) -> Value {
    json!({
        "step": r.step,
        "direction": r.direction.map(|k| k + 1),
        "epsilon": int_matrix(&r.seed.epsilon()),
        "cvectors": r.seed.cvectors(),
        "variables": r.rendered(),
    })
}

fn mutate(a: &MutateArgs) -> Result<Output> {
    let (loaded, mode, rows) = run_sequence(&a.common)?;
    let last = rows.last().expect("the initial row is always present");
    if let Some(p) = &a.emit_seed {
        let coeff = if loaded.principal { Coefficients::Principal } else { Coefficients::None };
        let file = SeedFile::from_seed(&last.seed, coeff, None);
        write_file(p, &(serde_json::to_string_pretty(&file)? + "\n"))?;
    }
    let mut text = format!("mode {mode}, after {} mutation(s)\n", rows.len() - 1);
    text += &format!("epsilon  {}\n", render_matrix_inline(&int_matrix(&last.seed.epsilon())));
    text += &format!("cvectors {}\n", render_int_rows(&last.seed.cvectors()));
    for (l, v) in last.labels.iter().zip(last.rendered()) {
        text += &format!("{l}' = {v}\n");
    }
    Ok(Output::ok(text, json!({ "mode": mode.name(), "final": row_json(last) })))
}

fn table(a: &TableArgs) -> Result<Output> {
    let (_, mode, rows) = run_sequence(&a.common)?;
    let header: Vec<String> =
        ["s", "mu", "epsilon", "C"].iter().map(|s| s.to_string()).chain(rows[0].labels.iter().cloned()).collect();
    let mut cells: Vec<Vec<String>> = vec![header];
    for r in &rows {
        let mut row = vec![
            r.step.to_string(),
            r.direction.map(|k| format!("mu{}", k + 1)).unwrap_or_else(|| "-".into()),
            render_matrix_inline(&int_matrix(&r.seed.epsilon())),
            render_int_rows(&r.seed.cvectors()),
        ];
        row.extend(r.rendered());
        cells.push(row);
    }
    let widths: Vec<usize> =
        (0..cells[0].len()).map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    let mut text = format!("mode {mode}\n");
    for r in &cells {
        let padded: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        text += padded.join("  ").trim_end();
        text.push('\n');
    }
    let json = json!({ "mode": mode.name(), "rows": rows.iter().map(row_json).collect::<Vec<_>>() });
    Ok(Output::ok(text, json))
}

fn build_diagram(
    loaded: &LoadedSeed,
    side: Side,
    quantum: bool,
    order: usize,
    complete: bool,
) -> Result<ScatteringDiagram> {
    let lambda = if side == Side::A && quantum { Some(lambda_for(loaded)?) } else { None };
    let mut dg = initial_diagram(&loaded.seed, side, quantum, lambda.as_deref(), order)?;
    if let Some(w) = &loaded.degree {
        dg = dg.with_degree(w.clone())?;
    }
    if complete {
        dg = complete_to_order(&dg, order)?;
    }
    Ok(dg)
}

fn consistency_grid() -> Vec<Vec<i64>> {
    (-3..=3).flat_map(|a| (-3..=3).map(move |b| vec![a, b])).collect()
}

fn scatter(a: &ScatterArgs) -> Result<Output> {
    let loaded = SeedFile::load(&a.seed)?;
    let dg = match &a.import {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let rec: DiagramRecord = serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
            rec.to_diagram(&loaded)?
        }
        None => {
            let side = if a.side == SideArg::A { Side::A } else { Side::X };
            build_diagram(&loaded, side, a.quantum, a.order, !a.initial)?
        }
    };
    let record = DiagramRecord::from_diagram(&dg);
    if let Some(p) = &a.emit_json {
        write_file(p, &(serde_json::to_string_pretty(&record)? + "\n"))?;
    }
    if let Some(p) = &a.emit_svg {
        write_file(p, &svg::render(&dg, &[], Viewport { size: a.viewport })?)?;
    }
    let consistent = dg.is_consistent(&dg.default_loop()?, &consistency_grid(), dg.order())?;
    let mut text = format!(
        "{} {} diagram, order {}, {} walls\n",
        if dg.is_quantum() { "quantum" } else { "classical" },
        record.side,
        dg.order(),
        dg.walls().len()
    );
    for (i, w) in record.walls.iter().enumerate() {
        text += &format!(
            "  [{i}] {} ({},{}) {} normal ({},{}): {}\n",
            if w.line { "line" } else { "ray " },
            w.ray[0],
            w.ray[1],
            if w.incoming { "incoming" } else { "outgoing" },
            w.normal[0],
            w.normal[1],
            w.rendered
        );
    }
    text += &format!(
        "loop product trivial to order {} on |u| <= 3: {}\n",
        dg.order(),
        if consistent { "yes" } else { "no" }
    );
    let mut json = serde_json::to_value(&record)?;
    json["consistent"] = json!(consistent);
    Ok(Output::ok(text, json))
}

fn rational_list(v: &[Rational]) -> Vec<String> {
    v.iter().map(render_fraction).collect()
}

/// The final decoration c·A^m written like theta's terms.
fn final_term(dg: &ScatteringDiagram, l: &BrokenLine) -> String {
    QTorusElement::monomial(dg.torus(), l.final_exponent().to_vec(), l.final_coefficient().clone()).render()
}

fn line_json(dg: &ScatteringDiagram, l: &BrokenLine) -> Value {
    let var = dg.torus().var();
    let segments: Vec<Value> = l
        .segments
        .iter()
        .map(|s| {
            json!({
                "coefficient": s.coefficient.render(var),
                "exponent": s.exponent,
                "start": s.start.as_ref().map(|p| rational_list(p)),
                "end": rational_list(&s.end),
                "bend_wall": s.bend_wall,
            })
        })
        .collect();
    json!({
        "initial_exponent": l.initial_exponent,
        "endpoint": rational_list(&l.endpoint),
        "final_exponent": l.final_exponent(),
        "final_coefficient": l.final_coefficient().render(var),
        "final_term": final_term(dg, l),
        "bends": l.bends(),
        "segments": segments,
    })
}

fn theta(a: &ThetaArgs) -> Result<Output> {
    let loaded = SeedFile::load(&a.seed)?;
    let m0 = parse_int_list(&a.gvector)?;
    let q = parse_fraction_list(&a.basepoint)?;
    if m0.len() != 2 || q.len() != 2 {
        bail!("--gvector and --basepoint need two coordinates");
    }
    let filter = a.filter_exponent.as_deref().map(parse_int_list).transpose()?;
    let max_degree = a.max_degree.unwrap_or(2 * a.order);
    let dg = build_diagram(&loaded, Side::A, !a.classical, a.order, true)?;
    let lines = enumerate_broken_lines(&m0, &q, &dg, a.order, max_degree, filter.as_deref())?;
    if let Some(p) = &a.emit_json {
        let v = json!({ "broken_lines": lines.iter().map(|l| line_json(&dg, l)).collect::<Vec<_>>() });
        write_file(p, &(serde_json::to_string_pretty(&v)? + "\n"))?;
    }
    if let Some(p) = &a.emit_svg {
        write_file(p, &svg::render(&dg, &lines, Viewport { size: a.viewport })?)?;
    }
    let mut text = format!(
        "broken lines for m0 = ({},{}) ending at ({}), order {}, bend degree <= {}\n",
        m0[0],
        m0[1],
        rational_list(&q).join(","),
        a.order,
        max_degree
    );
    for l in &lines {
        let path: Vec<String> = l.segments.iter().map(|s| format!("({},{})", s.exponent[0], s.exponent[1])).collect();
        let bends: Vec<String> = l
            .bends()
            .iter()
            .map(|w| {
                let r = &dg.walls()[*w].ray;
                format!("({},{})", r[0], r[1])
            })
            .collect();
        text +=
            &format!("  {}  bends at [{}]  ends with {}\n", path.join(" -> "), bends.join(", "), final_term(&dg, l));
    }
    let mut json = json!({ "broken_lines": lines.iter().map(|l| line_json(&dg, l)).collect::<Vec<_>>() });
    if filter.is_none() {
        let th = theta_function(&m0, &q, &dg, a.order, max_degree)?;
        text += &format!("theta = {th}\n");
        json["theta"] = json!(th.to_string());
    } else {
        text += &format!("{} line(s)\n", lines.len());
    }
    Ok(Output::ok(text, json))
}

fn pstar(a: &PstarArgs) -> Result<Output> {
    let loaded = SeedFile::load(&a.seed)?;
    let seed = &loaded.seed;
    let lambda = lambda_for(&loaded)?;
    let dprime = check_compatible_pair(&lambda, seed)?;
    let p = p1_star(seed);
    let mut text = format!("p* rows {}\n", render_matrix_inline(&int_matrix(p.matrix())));
    text += &format!("lambda   {}\n", render_matrix_inline(&int_matrix(&lambda)));
    text += &format!("D'       {dprime:?}\n");
    let mut json = json!({ "pstar": int_matrix(p.matrix()), "lambda": int_matrix(&lambda), "dprime": dprime });
    let mut code = EXIT_OK;
    if a.check_intertwining {
        let mut verdicts = Vec::new();
        for k in seed.fixed().unfrozen() {
            for v in check_intertwining(seed, &lambda, k, a.order, loaded.principal)? {
                text += &format!(
                    "  mu{} X{}: {}\n",
                    v.k + 1,
                    v.i + 1,
                    if v.holds { "ok".to_string() } else { format!("FAIL  {}  vs  {}", v.lhs, v.rhs) }
                );
                if !v.holds {
                    code = EXIT_CHECK_FAILED;
                }
                verdicts.push(json!({ "k": v.k + 1, "i": v.i + 1, "holds": v.holds, "lhs": v.lhs, "rhs": v.rhs }));
            }
        }
        json["intertwining"] = json!(verdicts);
    }
    Ok(Output { text, json, code })
}

fn poisson(a: &PoissonArgs) -> Result<Output> {
    let loaded = SeedFile::load(&a.seed)?;
    let seed = &loaded.seed;
    let n = seed.rank();
    let labels = seed.fixed().labels().to_vec();
    let ks: Vec<usize> = match a.k {
        Some(k) => {
            if k == 0 || k > n || !seed.fixed().is_unfrozen(k - 1) {
                bail!("--k {k} is not an unfrozen direction");
            }
            vec![k - 1]
        }
        None => seed.fixed().unfrozen(),
    };
    if !a.rank_check {
        let mut text = String::new();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let b = poisson_bracket(&CommutativeRational::x(n, i), &CommutativeRational::x(n, j), seed)?;
                text += &format!("{{{}, {}}} = {}\n", labels[i], labels[j], b.render(&labels));
                brackets.push(json!({ "pair": [labels[i].clone(), labels[j].clone()], "bracket": b.render(&labels) }));
            }
        }
        return Ok(Output::ok(text, json!({ "brackets": brackets })));
    }
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut code = EXIT_OK;
    for k in ks {
        let r = check_poisson_map(seed, k, &[])?;
        text += &format!("mu{}: {}\n", k + 1, if r.all_hold() { "Poisson map" } else { "NOT a Poisson map" });
        let mut grid = vec![vec!["-".to_string(); n]; n];
        for (idx, p) in r.pairs.iter().enumerate() {
            let (i, j) = pair_at(n, idx).ok_or_else(|| anyhow!("unexpected pair {:?}", p.names))?;
            let mark = if p.holds { "ok" } else { "FAIL" };
            grid[i][j] = mark.into();
            grid[j][i] = mark.into();
        }
        let w = labels.iter().map(|l| l.len() + 1).max().unwrap_or(3).max(4);
        let mut header = format!("  {:w$}", "");
        for l in &labels {
            header += &format!(" {:<w$}", format!("{l}'"));
        }
        text += header.trim_end();
        text.push('\n');
        for i in 0..n {
            text += &format!("  {:<w$}", format!("{}'", labels[i]));
            for j in 0..n {
                text += &format!(" {:<w$}", grid[i][j]);
            }
            text = text.trim_end().to_string();
            text.push('\n');
        }
        if !r.all_hold() {
            code = EXIT_CHECK_FAILED;
        }
        let pairs: Vec<Value> = r
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "pair": [p.names.0.clone(), p.names.1.clone()],
                    "holds": p.holds,
                    "pulled_back": p.pulled_back,
                    "bracket_of_pullbacks": p.bracket_of_pullbacks,
                })
            })
            .collect();
        reports.push(json!({ "k": k + 1, "holds": r.all_hold(), "pairs": pairs }));
    }
    Ok(Output { text, json: json!({ "rank_check": reports }), code })
}

fn pair_at(n: usize, idx: usize) -> Option<(usize, usize)> {
    (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).nth(idx)
}

fn check(a: &CheckArgs) -> Result<Output> {
    let reports = suites::run(&a.suite)?;
    let mut text = String::new();
    for r in &reports {
        text += &r.render_text(a.verbose);
    }
    let blocking = reports.iter().any(|r| r.blocking());
    let json: Vec<Value> = reports
        .iter()
        .map(|r| {
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| {
                    let (status, note) = match &c.status {
                        suites::Status::Pass => ("pass", None),
                        suites::Status::Fail => ("fail", None),
                        suites::Status::Known(why) => ("known", Some(why.clone())),
                    };
                    json!({ "label": c.label, "status": status, "note": note, "detail": c.detail })
                })
                .collect();
            json!({
                "criterion": r.criterion,
                "suite": r.suite,
                "title": r.title,
                "verdict": r.verdict(),
                "passed": r.passed(),
                "checks": checks,
            })
        })
        .collect();
    Ok(Output { text, json: json!({ "suites": json }), code: if blocking { EXIT_CHECK_FAILED } else { EXIT_OK } })
}
