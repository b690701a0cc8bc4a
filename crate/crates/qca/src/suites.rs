//! Reproduction suites run by `qca check` and by the acceptance tests.
//!
//! Each suite returns a report of individual checks. A check against a
//! printed reference value is `Known` when it disagrees with that value but an
//! independent consistency check (recorded in the detail) sides with the engine.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use anyhow::Result;
use qca_core::duality::{check_intertwining, synthesize_lambda};
use qca_core::mutation::{apply_mutation_sequence, quantum_x_images, words_equal, FactoredWord, Mode};
use qca_core::poisson::{check_poisson_map, poisson_bracket, semiclassical_bracket};
use qca_core::qtorus::{dilog_coefficients, dilog_series, dilog_series_from_log, QTorusElement, SkewLattice};
use qca_core::ratfun::CommutativeRational;
use qca_core::scalars::QScalar;
use qca_core::scatter::{a23_loop_coefficient, complete_to_order, initial_diagram, Loop, Side, WallKind};
use qca_core::seeds::{FixedData, Seed};
use qca_core::theta::{enumerate_broken_lines, greedy_t};
use qca_core::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Disagrees with a printed value; the string says why the engine is kept.
    Known(String),
}

#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub criterion: usize,
    pub suite: &'static str,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Report {
    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn known(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| matches!(c.status, Status::Known(_))).collect()
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    /// True when nothing differs from the reference and the budget holds.
    pub fn passed(&self) -> bool {
        self.failed().is_empty() && self.known().is_empty() && self.within_budget()
    }

    /// Failures that are not documented discrepancies.
    pub fn blocking(&self) -> bool {
        !self.failed().is_empty() || !self.within_budget()
    }

    pub fn verdict(&self) -> String {
        if self.passed() {
            return "PASS".into();
        }
        let mut why = Vec::new();
        let failed = self.failed();
        if !failed.is_empty() {
            let names: Vec<&str> = failed.iter().map(|c| c.label.as_str()).collect();
            why.push(format!("{} failed: {}", failed.len(), names.join("; ")));
        }
        let known = self.known();
        if !known.is_empty() {
            let names: Vec<&str> = known.iter().map(|c| c.label.as_str()).collect();
            why.push(format!("known: {}", names.join("; ")));
        }
        if !self.within_budget() {
            why.push(format!("over the {}s budget", self.budget.as_secs()));
        }
        format!("FAIL ({})", why.join(", "))
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {} ({}/{} checks, {:.2}s of {}s)",
            self.criterion,
            self.suite,
            self.title,
            self.verdict(),
            self.checks.iter().filter(|c| c.status == Status::Pass).count(),
            self.checks.len(),
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }

    pub fn render_text(&self, verbose: bool) -> String {
        let mut out = self.line();
        out.push('\n');
        for c in &self.checks {
            let tag = match &c.status {
                Status::Pass if !verbose => continue,
                Status::Pass => "ok".to_string(),
                Status::Fail => "FAIL".to_string(),
                Status::Known(why) => format!("KNOWN ({why})"),
            };
            let _ = writeln!(
                out,
                "  {tag}: {}{}",
                c.label,
                if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) }
            );
        }
        out
    }
}

fn check(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { label: label.into(), status: if pass { Status::Pass } else { Status::Fail }, detail: detail.into() }
}

struct Timer {
    start: Instant,
    checks: Vec<Check>,
}

impl Timer {
    fn new() -> Self {
        Timer { start: Instant::now(), checks: Vec::new() }
    }

    fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    fn finish(self, criterion: usize, suite: &'static str, title: &'static str, budget: u64) -> Report {
        Report {
            criterion,
            suite,
            title,
            checks: self.checks,
            elapsed: self.start.elapsed(),
            budget: Duration::from_secs(budget),
        }
    }
}

fn rat(x: i64) -> Rational {
    Rational::from_integer(x)
}

/// Type A2 with {e1,e2} = -1, the convention of both mutation tables.
pub fn a2_tables() -> Seed {
    Seed::initial(FixedData::rank2(rat(-1), [1, 1]).expect("A2 data"))
}

/// Type A2 with {e1,e2} = 1, the convention of the classical scattering picture.
pub fn a2_scattering() -> Seed {
    Seed::initial(FixedData::rank2(rat(1), [1, 1]).expect("A2 data"))
}

/// 𝒜(2,3): {e1,e2} = -1, d = (2,3).
pub fn a23() -> Seed {
    Seed::initial(FixedData::rank2(rat(-1), [2, 3]).expect("A(2,3) data"))
}

/// Rank 3 with e3 frozen and an explicit compatible Λ.
pub fn rank3_frozen() -> (Seed, Vec<Vec<Rational>>) {
    let skew = vec![vec![rat(0), rat(1), rat(1)], vec![rat(-1), rat(0), rat(-1)], vec![rat(-1), rat(1), rat(0)]];
    let seed = Seed::initial(FixedData::new(skew, vec![1, 1, 1], &[0, 1]).expect("rank-3 data"));
    let lambda = vec![vec![rat(0), rat(-1), rat(0)], vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(0), rat(0)]];
    (seed, lambda)
}

pub const SEQUENCE: [usize; 5] = [1, 0, 1, 0, 1];

pub const CLASSICAL_COLUMNS: [[&str; 2]; 5] = [
    ["X1*(1+X2)", "1/X2"],
    ["1/(X1*(1+X2))", "(X1*X2+X1+1)/X2"],
    ["(X1+1)/(X1*X2)", "X2/(X1*X2+X1+1)"],
    ["X1*X2/(X1+1)", "1/X1"],
    ["X2", "X1"],
];

pub const QUANTUM_COLUMNS: [[&str; 2]; 5] = [
    ["X1*(1+q*X2)", "X2^{-1}"],
    ["(1+q*X2)^{-1}*X1^{-1}", "(X1^{-1}*X2)^{-1}*(X1^{-1}+q*(1+q*X2))"],
    ["X2^{-1}*(1+q^{-1}*X1^{-1})", "(X1^{-1}+q*(1+q*X2))^{-1}*(X1^{-1}*X2)"],
    ["(1+q^{-1}*X1^{-1})^{-1}*X2", "X1^{-1}"],
    ["X2", "X1"],
];

pub const FAMILY_COLUMNS: [[&str; 2]; 5] = [
    ["X1*(1+t2*X2)", "1/X2"],
    ["1/(X1*(1+t2*X2))", "(t1*t2*X1*X2+t1*X1+1)/X2"],
    ["(t1*X1+1)/(X1*X2)", "X2/(t1*t2*X1*X2+t1*X1+1)"],
    ["X1*X2/(t1*X1+1)", "1/X1"],
    ["X2", "X1"],
];

pub const QUANTUM_COEFF_COLUMNS: [[&str; 2]; 5] = [
    ["X1*(1+t2*q*X2)", "X2^{-1}"],
    ["(1+t2*q*X2)^{-1}*X1^{-1}", "(X1^{-1}*X2)^{-1}*(X1^{-1}+t1*q*(1+t2*q*X2))"],
    ["X2^{-1}*(t1+q^{-1}*X1^{-1})", "(X1^{-1}+t1*q*(1+t2*q*X2))^{-1}*(X1^{-1}*X2)"],
    ["(t1+q^{-1}*X1^{-1})^{-1}*X2", "X1^{-1}"],
    ["X2", "X1"],
];

/// The ε_s column as printed, s = 0..5.
pub const PRINTED_EPSILON: [[[i64; 2]; 2]; 6] =
    [[[0, -1], [1, 0]], [[0, 1], [-1, 0]], [[0, -1], [1, 0]], [[0, 1], [-1, 0]], [[0, -1], [1, 0]], [[0, 1], [-1, 0]]];

/// The C_s column as printed, s = 0..5.
pub const PRINTED_CVECTORS: [[[i64; 2]; 2]; 6] =
    [[[1, 0], [0, 1]], [[1, 0], [0, -1]], [[-1, 0], [0, -1]], [[-1, 0], [-1, -1]], [[1, -1], [1, 0]], [[0, 1], [1, 0]]];

const TABLE_K: usize = 12;

fn golden_row(s: usize, golden: &'static [[&'static str; 2]; 5]) -> [&'static str; 2] {
    // row 0 is the initial chart
    if s == 0 {
        ["X1", "X2"]
    } else {
        golden[s - 1]
    }
}

fn commutative(alg: &std::sync::Arc<SkewLattice>, src: &str) -> Result<CommutativeRational> {
    Ok(FactoredWord::parse(alg, src)?.to_commutative()?)
}

fn compare_quantum(t: &mut Timer, label: &str, got: &FactoredWord, want: &str) -> Result<()> {
    let w = FactoredWord::parse(got.algebra(), want)?;
    let ok = words_equal(got, &w, TABLE_K)?;
    t.push(check(label, ok, if ok { String::new() } else { format!("engine {got}, printed {want}") }));
    Ok(())
}

fn compare_commutative(
    t: &mut Timer,
    label: &str,
    got: &CommutativeRational,
    want: &str,
    labels: &[String],
) -> Result<()> {
    let w = commutative(&a2_tables().x_lattice(), want)?;
    let ok = *got == w;
    t.push(check(label, ok, if ok { String::new() } else { format!("engine {}, printed {want}", got.render(labels)) }));
    Ok(())
}

/// A2 mutation table, sequence μ2μ1μ2μ1μ2, classical and quantum columns.
pub fn mutation_table() -> Result<Report> {
    let mut t = Timer::new();
    let seed = a2_tables();
    let labels = seed.fixed().labels().to_vec();
    let classical = apply_mutation_sequence(&seed, &SEQUENCE, Mode::XClassical, None)?;
    let quantum = apply_mutation_sequence(&seed, &SEQUENCE, Mode::XQuantum, None)?;
    for s in 1..=5 {
        for i in 0..2 {
            let want = CLASSICAL_COLUMNS[s - 1][i];
            compare_commutative(
                &mut t,
                &format!("classical X{} at s={s}", i + 1),
                &classical[s].vars.commutative().unwrap()[i],
                want,
                &labels,
            )?;
            let want = QUANTUM_COLUMNS[s - 1][i];
            compare_quantum(
                &mut t,
                &format!("quantum X{} at s={s}", i + 1),
                &quantum[s].vars.quantum().unwrap()[i],
                want,
            )?;
        }
    }
    let alg = seed.x_lattice();
    let q = quantum[5].vars.quantum().unwrap();
    let swapped = words_equal(&q[0], &FactoredWord::generator(&alg, 1), TABLE_K)?
        && words_equal(&q[1], &FactoredWord::generator(&alg, 0), TABLE_K)?;
    let c = classical[5].vars.commutative().unwrap();
    let swapped_c = c[0] == CommutativeRational::x(2, 1) && c[1] == CommutativeRational::x(2, 0);
    t.push(check("final row is (X2, X1)", swapped && swapped_c, ""));
    Ok(t.finish(1, "mutation-table", "A2 mutation table, classical and quantum", 5))
}

/// Whether the printed family column step s → s+1 follows from c_{k;s} = `c`,
/// with k the direction mutated at s and ε_s as printed.
fn family_step_holds(s: usize, c: [i64; 2]) -> Result<bool> {
    let alg = a2_tables().x_lattice();
    let k = SEQUENCE[s];
    let eps = PRINTED_EPSILON[s];
    let cur = golden_row(s, &FAMILY_COLUMNS);
    let next = golden_row(s + 1, &FAMILY_COLUMNS);
    let tmono = |v: [i64; 2]| -> String {
        let parts: Vec<String> =
            v.iter().enumerate().filter(|(_, e)| **e > 0).map(|(j, e)| format!("t{}^{}", j + 1, e)).collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    };
    for i in 0..2 {
        let want = commutative(&alg, next[i])?;
        let predicted = if i == k {
            format!("({})^{{-1}}", cur[k])
        } else {
            let e = eps[i][k];
            if e == 0 {
                cur[i].to_string()
            } else {
                let sg = e.signum();
                let pos = tmono([(sg * c[0]).max(0), (sg * c[1]).max(0)]);
                let neg = tmono([(-sg * c[0]).max(0), (-sg * c[1]).max(0)]);
                format!("({})*(({pos}) + ({neg})*({})^{{{}}})^{{{}}}", cur[i], cur[k], -sg, -e)
            }
        };
        if commutative(&alg, &predicted)? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same sequence with principal coefficients.
pub fn coefficient_table() -> Result<Report> {
    let mut t = Timer::new();
    let seed = a2_tables();
    let labels = seed.fixed().labels().to_vec();
    let family = apply_mutation_sequence(&seed, &SEQUENCE, Mode::XFamily, None)?;
    let quantum = apply_mutation_sequence(&seed, &SEQUENCE, Mode::XQuantumCoeff, None)?;
    let classical = apply_mutation_sequence(&seed, &SEQUENCE, Mode::XClassical, None)?;
    let plain = apply_mutation_sequence(&seed, &SEQUENCE, Mode::XQuantum, None)?;
    for s in 1..=5 {
        for i in 0..2 {
            compare_commutative(
                &mut t,
                &format!("family X{} at s={s}", i + 1),
                &family[s].vars.commutative().unwrap()[i],
                FAMILY_COLUMNS[s - 1][i],
                &labels,
            )?;
            compare_quantum(
                &mut t,
                &format!("quantum X{} at s={s}", i + 1),
                &quantum[s].vars.quantum().unwrap()[i],
                QUANTUM_COEFF_COLUMNS[s - 1][i],
            )?;
        }
    }
    for s in 0..=5 {
        let eps: Vec<Vec<i64>> =
            family[s].seed.epsilon().iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
        let printed: Vec<Vec<i64>> = PRINTED_EPSILON[s].iter().map(|r| r.to_vec()).collect();
        t.push(check(format!("ε at s={s}"), eps == printed, format!("engine {eps:?}")));

        let c = family[s].seed.cvectors();
        let printed: Vec<Vec<i64>> = PRINTED_CVECTORS[s].iter().map(|r| r.to_vec()).collect();
        let label = format!("C at s={s} against the printed column");
        if c == printed {
            t.push(check(label, true, ""));
        } else {
            // the row of the mutated direction is pinned by the family column
            let detail = format!("engine {c:?}, printed {printed:?}");
            let k = if s < 5 { Some(SEQUENCE[s]) } else { None };
            let status = match k {
                Some(k) => {
                    let engine_row = [c[k][0], c[k][1]];
                    let printed_row = [printed[k][0], printed[k][1]];
                    let engine_ok = family_step_holds(s, engine_row)?;
                    let printed_ok = family_step_holds(s, printed_row)?;
                    if engine_ok && !printed_ok {
                        Status::Known(format!(
                            "printed c{}={printed_row:?} does not reproduce the family column at s={s}→{}; the engine's {engine_row:?} does",
                            k + 1,
                            s + 1
                        ))
                    } else {
                        Status::Fail
                    }
                }
                None => Status::Fail,
            };
            t.checks.push(Check { label, status, detail });
        }
        if s < 5 {
            let k = SEQUENCE[s];
            let ok = family_step_holds(s, [c[k][0], c[k][1]])?;
            t.push(check(format!("engine c{} at s={s} reproduces the family step", k + 1), ok, ""));
        }
    }
    for s in 0..=5 {
        let q = quantum[s].vars.quantum().unwrap();
        let f = family[s].vars.commutative().unwrap();
        let p = plain[s].vars.quantum().unwrap();
        let c = classical[s].vars.commutative().unwrap();
        let mut at_q1 = true;
        let mut at_t1 = true;
        for i in 0..2 {
            at_q1 &= q[i].to_commutative()? == f[i];
            at_t1 &= words_equal(&q[i].at_t_one(), &p[i], TABLE_K)? && f[i].at_t_one() == c[i];
            if s > 0 {
                at_t1 &= words_equal(
                    &q[i].at_t_one(),
                    &FactoredWord::parse(q[i].algebra(), QUANTUM_COLUMNS[s - 1][i])?,
                    TABLE_K,
                )?;
                at_t1 &= f[i].at_t_one() == commutative(&seed.x_lattice(), CLASSICAL_COLUMNS[s - 1][i])?;
            }
        }
        t.push(check(format!("q=1 gives the family column at s={s}"), at_q1, ""));
        t.push(check(format!("t=1 gives the coefficient-free table at s={s}"), at_t1, ""));
    }
    Ok(t.finish(2, "coefficient-table", "A2 mutation table with principal coefficients", 5))
}

fn grid(bound: i64) -> Vec<Vec<i64>> {
    (-bound..=bound).flat_map(|a| (-bound..=bound).map(move |b| vec![a, b])).collect()
}

/// Classical A2 scattering: one outgoing wall on ℝ≥0(1,-1).
pub fn classical_a2() -> Result<Report> {
    let mut t = Timer::new();
    let dg = initial_diagram(&a2_scattering(), Side::A, false, None, 2)?;
    for k in 2..=6 {
        let c = complete_to_order(&dg, k)?;
        let added = &c.walls()[dg.walls().len()..];
        t.push(check(format!("K={k}: one wall added"), added.len() == 1, format!("{} added", added.len())));
        if let Some(w) = added.first() {
            let idx = dg.walls().len();
            let function_ok = c.wall_function(idx) == Some(&[QScalar::one(), QScalar::one()][..])
                && c.image_of(&w.normal) == vec![-1, 1];
            t.push(check(
                format!("K={k}: ray (1,-1)"),
                w.ray == vec![1, -1] && !w.line && !w.incoming,
                format!("{:?}", w.ray),
            ));
            t.push(check(format!("K={k}: function 1 + A1^-1*A2"), function_ok, c.render_wall(idx)));
        }
        for ccw in [true, false] {
            let ok = c.is_consistent(&Loop::new([1, 2], ccw), &grid(3), k)?;
            t.push(check(format!("K={k}: loop product is the identity ({})", if ccw { "ccw" } else { "cw" }), ok, ""));
        }
    }
    Ok(t.finish(3, "classical-a2", "classical A2 scattering diagram", 2))
}

fn laurent_negative(c: &QScalar) -> Option<Rational> {
    c.laurent_terms()?.into_iter().find_map(|(e, t)| match t.as_constant() {
        Some(v) if v < 0.into() => Some(e),
        _ => None,
    })
}

/// Quantum 𝒜(2,3) at order 2: the new wall, the closed form, the coefficient groups.
pub fn quantum_a23() -> Result<Report> {
    let mut t = Timer::new();
    let dg = initial_diagram(&a23(), Side::A, true, None, 2)?;
    let c = complete_to_order(&dg, 2)?;
    let added = &c.walls()[dg.walls().len()..];
    t.push(check("one wall added", added.len() == 1, format!("{} added", added.len())));
    if let Some(w) = added.first() {
        t.push(check("new wall on ℝ≥0(-2f1+3f2)", w.ray == vec![-2, 3] && !w.line, format!("{:?}", w.ray)));
    }
    let lp = Loop::new([-3, 1], false);
    let crossings = dg.crossings(&lp)?;
    let mut coeff = std::collections::BTreeMap::new();
    let mut mismatches = Vec::new();
    for u in grid(3) {
        let img = dg.apply_crossings(&crossings, &u, 2)?;
        let got = dg.left_coefficient(&img, &u, &[1, 1]);
        if got != a23_loop_coefficient([u[0], u[1]]) {
            mismatches.push(format!("{u:?}: {got}"));
        }
        coeff.insert((u[0], u[1]), got);
    }
    t.push(check(
        format!("loop product matches the closed form on all {} u", coeff.len()),
        mismatches.is_empty() && coeff.len() == 49,
        mismatches.join("; "),
    ));
    let v = QScalar::q_int;
    let g1 = v(-4).add(&QScalar::one()).add(&v(4));
    let g2 = v(-3).add(&v(3));
    let g3 = v(6).sub(&v(-6));
    let got1 = coeff[&(1, 0)].mul(&v(-3));
    let got2 = coeff[&(0, 1)].mul(&v(-2));
    let got3 = coeff[&(1, 1)].sub(&coeff[&(1, 0)]).sub(&coeff[&(0, 1)]).mul(&v(-5));
    t.push(check("group v^-4 + 1 + v^4 from u=(1,0)", got1 == g1, got1.to_string()));
    t.push(check("group v^-3 + v^3 from u=(0,1)", got2 == g2, got2.to_string()));
    t.push(check("group v^6 - v^-6 from u=(1,1)", got3 == g3, got3.to_string()));
    let mut witnesses = Vec::new();
    if let Some(w) = added.first() {
        if let WallKind::Quantum { log_coeffs, .. } = &w.kind {
            for (j, a) in log_coeffs.iter().enumerate() {
                if let Some(e) = laurent_negative(a) {
                    witnesses.push(format!("new wall log-coefficient {} has a negative v^{e} term", j + 1));
                }
            }
        }
    }
    for ((a, b), cf) in &coeff {
        if let Some(e) = laurent_negative(cf) {
            witnesses.push(format!("coefficient at u=({a},{b}) has a negative v^{e} term"));
        }
    }
    t.push(check(
        "a strictly negative Laurent coefficient exists",
        !witnesses.is_empty(),
        witnesses.first().cloned().unwrap_or_default(),
    ));
    Ok(t.finish(4, "quantum-a23", "quantum A(2,3) scattering at order 2", 10))
}

/// θ_{-3f1+5f2} on 𝒜(2,3): the single broken line to A^{f1-f2}.
pub fn broken_lines() -> Result<Report> {
    let mut t = Timer::new();
    let dg = complete_to_order(&initial_diagram(&a23(), Side::A, true, None, 2)?, 2)?;
    let q = vec![Rational::new(1, 3), Rational::new(1, 3)];
    let want = QScalar::q_int(-2).sub(&QScalar::one()).add(&QScalar::q_int(2));
    let lines = enumerate_broken_lines(&[-3, 5], &q, &dg, 2, 4, Some(&[1, -1]))?;
    t.push(check("exactly one broken line ends with A^{f1-f2}", lines.len() == 1, format!("{} lines", lines.len())));
    // theta's coefficient at a monomial sums the lines ending with that exponent
    let got = lines.iter().fold(QScalar::zero(), |acc, l| acc.add(&l.final_coefficient()));
    t.push(check("coefficient of A^{f1-f2} is v^-2 - 1 + v^2", got == want, got.to_string()));
    // the greedy value is quoted as v^2 - 1 + v^-2; compare after v ↔ v^-1
    let greedy = QScalar::q_int(2).sub(&QScalar::one()).add(&QScalar::q_int(-2));
    t.push(check("equals the greedy value under v ↔ v^-1", got.bar() == greedy && got == greedy, ""));
    let tm = greedy_t([-3, 5], 2, 3);
    t.push(check("T(-3,5) = (-3,-4)", tm == [-3, -4], format!("{tm:?}")));
    Ok(t.finish(5, "broken-lines", "theta function via broken lines", 5))
}

fn rank2_grid() -> Vec<FixedData> {
    let mut out = Vec::new();
    for d in [[1, 1], [1, 2], [2, 1], [1, 3], [2, 3]] {
        for b in [-1, 1] {
            out.push(FixedData::rank2(rat(b), d).expect("rank-2 data"));
        }
    }
    for b in [-2, 2] {
        out.push(FixedData::rank2(rat(b), [1, 1]).expect("rank-2 data"));
    }
    out
}

fn rank3_grid() -> Vec<FixedData> {
    let mut out = Vec::new();
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                let skew =
                    vec![vec![rat(0), rat(a), rat(b)], vec![rat(-a), rat(0), rat(c)], vec![rat(-b), rat(-c), rat(0)]];
                out.push(FixedData::new(skew, vec![1, 1, 1], &[0, 1, 2]).expect("rank-3 data"));
            }
        }
    }
    out
}

/// Seeds reachable in at most `depth` mutations.
fn reachable(fd: &FixedData, depth: usize) -> Result<Vec<Seed>> {
    let mut level = vec![Seed::initial(fd.clone())];
    let mut out = level.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for s in &level {
            for k in fd.unfrozen() {
                next.push(s.mutate(k)?);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    Ok(out)
}

const MUTATION_K: usize = 10;

fn mutation_properties(t: &mut Timer) -> Result<()> {
    let mut seeds = 0;
    let mut bad_invol = Vec::new();
    let mut bad_star = Vec::new();
    for fd in rank2_grid().iter().chain(rank3_grid().iter()) {
        for s in reachable(fd, 2)? {
            seeds += 1;
            for k in fd.unfrozen() {
                let rows = apply_mutation_sequence(&s, &[k, k], Mode::XQuantumCoeff, None)?;
                let (start, end) = (rows[0].vars.quantum().unwrap(), rows[2].vars.quantum().unwrap());
                for i in 0..s.rank() {
                    if !words_equal(&end[i], &start[i], MUTATION_K)? {
                        bad_invol.push(format!("ε={:?} path {:?} k={}", s.fixed().skew(), s.history(), k + 1));
                    }
                }
                for w in quantum_x_images(&s, k, true)? {
                    if !words_equal(&w.star(), &w, MUTATION_K)? {
                        bad_star.push(format!("{w}"));
                    }
                }
            }
        }
    }
    t.push(check(
        format!("quantum mutation is involutive ({seeds} seeds, ranks 2-3, depth ≤ 2)"),
        bad_invol.is_empty(),
        bad_invol.join("; "),
    ));
    t.push(check(
        format!("quantum mutation commutes with * ({seeds} seeds)"),
        bad_star.is_empty(),
        bad_star.join("; "),
    ));
    Ok(())
}

const DILOG_K: usize = 6;

fn dilog_properties(t: &mut Timer) -> Result<()> {
    let mut params = Vec::new();
    for (n, d) in [(1, 1), (2, 1), (3, 1), (1, 2), (3, 2), (1, 3), (2, 3), (1, 6)] {
        params.push(Rational::new(n, d));
        params.push(Rational::new(-n, d));
    }
    let (mut inverse, mut difference, mut exp_log) = (true, true, true);
    let x = SkewLattice::commutative(1, "x");
    for &k in &params {
        let a = dilog_coefficients(k, DILOG_K);
        let b = dilog_coefficients(-k, DILOG_K);
        for j in 0..=DILOG_K {
            let conv = (0..=j).fold(QScalar::zero(), |acc, i| acc.add(&a[i].mul(&b[j - i])));
            inverse &= conv == if j == 0 { QScalar::one() } else { QScalar::zero() };
        }
        for j in 1..=DILOG_K {
            let jj = rat(j as i64);
            // Ψ(q²x) = (1 + qx)Ψ(x), coefficientwise
            difference &= a[j].mul(&QScalar::q_pow(k * jj * 2)) == a[j].add(&QScalar::q_pow(k).mul(&a[j - 1]));
        }
        exp_log &= dilog_series(&x, &[1], k, DILOG_K)?.terms() == dilog_series_from_log(&x, &[1], k, DILOG_K)?.terms();
    }
    let n = params.len();
    t.push(check(format!("Ψ(q²x) = (1+qx)Ψ(x) to order {DILOG_K} ({n} parameters)"), difference, ""));
    t.push(check(format!("Ψ at q⁻¹ is Ψ⁻¹ to order {DILOG_K} ({n} parameters)"), inverse, ""));
    t.push(check(
        format!("Ψ is exp of the quantum dilogarithm series to order {DILOG_K} ({n} parameters)"),
        exp_log,
        "",
    ));
    Ok(())
}

fn intertwining_properties(t: &mut Timer) -> Result<()> {
    let s = a23();
    let lam = synthesize_lambda(&s)?;
    let (r3, l3) = rank3_frozen();
    for (name, seed, lambda) in [("A(2,3)", &s, &lam), ("rank-3 fixture", &r3, &l3)] {
        let mut bad = Vec::new();
        let mut n = 0;
        for k in seed.fixed().unfrozen() {
            for coeff in [true, false] {
                for v in check_intertwining(seed, lambda, k, 8, coeff)? {
                    n += 1;
                    if !v.holds {
                        bad.push(format!("k={} i={} coeff={coeff}: {} vs {}", k + 1, v.i + 1, v.lhs, v.rhs));
                    }
                }
            }
        }
        t.push(check(
            format!("p* intertwines quantum mutation on {name} ({n} generator checks, K=8)"),
            bad.is_empty(),
            bad.join("; "),
        ));
    }
    Ok(())
}

fn exponent_grid(rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn bracket_properties(t: &mut Timer) -> Result<()> {
    let (r3, _) = rank3_frozen();
    for (name, seed, bound) in [("A2", a2_tables(), 3), ("A(2,3)", a23(), 3), ("rank-3 fixture", r3, 1)] {
        let alg = seed.x_lattice();
        let n = seed.rank();
        let exps = exponent_grid(n, bound);
        let mut bad = Vec::new();
        for a in &exps {
            for b in &exps {
                let qa = QTorusElement::monomial(&alg, a.clone(), QScalar::one());
                let qb = QTorusElement::monomial(&alg, b.clone(), QScalar::one());
                let lhs = semiclassical_bracket(&qa, &qb)?;
                let rhs =
                    poisson_bracket(&CommutativeRational::x_monomial(a), &CommutativeRational::x_monomial(b), &seed)?;
                if lhs != rhs {
                    bad.push(format!("{a:?},{b:?}"));
                }
            }
        }
        t.push(check(
            format!(
                "semiclassical bracket = bivector bracket on {name} monomials |n| ≤ {bound} ({} pairs)",
                exps.len() * exps.len()
            ),
            bad.is_empty(),
            bad.join("; "),
        ));
    }
    Ok(())
}

fn poisson_map_properties(t: &mut Timer) -> Result<()> {
    let mut seeds: Vec<Seed> = rank2_grid().into_iter().chain(rank3_grid()).map(Seed::initial).collect();
    seeds.push(rank3_frozen().0);
    let mut cases = std::collections::BTreeSet::new();
    let mut bad = Vec::new();
    let mut count = 0;
    for s in &seeds {
        let n = s.rank();
        let x = |i: usize| CommutativeRational::x(n, i);
        let one = CommutativeRational::one(n);
        // quotients exercise the reduction from rational functions to generators
        let f = x(0).add(&one).div(&x(1))?;
        let g = x(0).mul(&x(1)).add(&x(n - 1)).div(&x(1).add(&one))?;
        let extra = [(f, g)];
        for k in s.fixed().unfrozen() {
            let report = check_poisson_map(s, k, &extra)?;
            for (idx, p) in report.pairs.iter().enumerate() {
                count += 1;
                if !p.holds {
                    bad.push(format!("ε={:?} k={} {:?}", s.fixed().skew(), k + 1, p.names));
                }
                if idx < n * (n - 1) / 2 {
                    let (i, j) = pair_index(n, idx);
                    let eps = |a: usize| s.eps(a, k) != 0;
                    let case = if i == k || j == k {
                        if eps(if i == k { j } else { i }) {
                            "1.a"
                        } else {
                            "1.b"
                        }
                    } else if eps(i) && eps(j) {
                        "2.a"
                    } else {
                        "2.b"
                    };
                    cases.insert(case);
                }
            }
        }
    }
    t.push(check(
        format!("mutation is a Poisson map ({} seeds, {count} pairs)", seeds.len()),
        bad.is_empty(),
        bad.join("; "),
    ));
    let all: Vec<&str> = cases.iter().copied().collect();
    t.push(check(
        "generator pairs cover cases 1.a, 1.b, 2.a, 2.b",
        all == ["1.a", "1.b", "2.a", "2.b"],
        format!("{all:?}"),
    ));
    Ok(())
}

fn pair_index(n: usize, idx: usize) -> (usize, usize) {
    let mut r = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if r == idx {
                return (i, j);
            }
            r += 1;
        }
    }
    unreachable!("pair index out of range")
}

/// Exhaustive property grids for mutation, dilogarithms, p*, and brackets.
pub fn properties() -> Result<Report> {
    let mut t = Timer::new();
    mutation_properties(&mut t)?;
    dilog_properties(&mut t)?;
    intertwining_properties(&mut t)?;
    bracket_properties(&mut t)?;
    poisson_map_properties(&mut t)?;
    Ok(t.finish(6, "properties", "exhaustive property grids", 60))
}

pub type SuiteFn = fn() -> Result<Report>;

pub const SUITES: [(&str, SuiteFn); 6] = [
    ("mutation-table", mutation_table),
    ("coefficient-table", coefficient_table),
    ("classical-a2", classical_a2),
    ("quantum-a23", quantum_a23),
    ("broken-lines", broken_lines),
    ("properties", properties),
];

/// Runs one suite by name, or all of them for "all".
pub fn run(name: &str) -> Result<Vec<Report>> {
    let chosen: Vec<SuiteFn> = if name == "all" {
        SUITES.iter().map(|(_, f)| *f).collect()
    } else {
        match SUITES.iter().find(|(n, _)| *n == name) {
            Some((_, f)) => vec![*f],
            None => anyhow::bail!("unknown suite {name:?}; expected all or one of {}", suite_names().join(", ")),
        }
    };
    chosen.into_iter().map(|f| f()).collect()
}

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}
