//! Per-lattice property reports and the census and script sweeps that check
//! the core-label characterizations.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use crate::bitset::ElementSet;
use crate::canonical::{
    canonical_join_complex_with, canonical_join_rep_oracle, lambda_label, CoverLabels, OracleMode,
};
use crate::congruence::congruence_uniformity;
use crate::constructions::{
    birkhoff, boolean, iota, principal_filter_reachable, random_filter_script,
    random_interval_script, script_rng, DoublingScript, LatticeEnumerator,
};
use crate::core_label::{clo_is_lattice, clo_is_meet_semilattice, core_is_boolean, CoreLabelData};
use crate::error::ConstructionError;
use crate::exec::Exec;
use crate::lattice::{Lattice, Pattern};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub outcome: Outcome,
}

/// Shape of CLO(L) as an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CloShape {
    Lattice,
    MeetSemilattice,
    Poset,
}

impl fmt::Display for CloShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CloShape::Lattice => "lattice",
            CloShape::MeetSemilattice => "meet-semilattice",
            CloShape::Poset => "poset",
        })
    }
}

/// Data computed only for congruence-uniform lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformSummary {
    pub boolean_defect: usize,
    pub clo_shape: CloShape,
    pub f_vector: Vec<usize>,
    pub flag: bool,
}

#[derive(Debug, Clone)]
pub struct LatticeReport {
    pub name: String,
    pub size: usize,
    pub distributive: bool,
    pub semidistributive: bool,
    pub congruence_uniform: bool,
    pub graded: bool,
    pub boolean: bool,
    pub uniform: Option<UniformSummary>,
    pub checks: Vec<Check>,
    /// A census-wide check rather than one lattice; `size` counts the
    /// lattices it covered.
    pub aggregate: bool,
}

impl LatticeReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

impl fmt::Display for LatticeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.aggregate {
            writeln!(f, "census {} lattices={}", self.name, self.size)?;
            return self.fmt_checks(f);
        }
        write!(
            f,
            "lattice {} n={} distributive={} semidistributive={} congruence-uniform={} graded={} boolean={}",
            self.name,
            self.size,
            self.distributive,
            self.semidistributive,
            self.congruence_uniform,
            self.graded,
            self.boolean
        )?;
        if let Some(u) = &self.uniform {
            let fv: Vec<String> = u.f_vector.iter().map(usize::to_string).collect();
            write!(
                f,
                " bdef={} clo={} f-vector=({}) flag={}",
                u.boolean_defect,
                u.clo_shape,
                fv.join(","),
                u.flag
            )?;
        }
        writeln!(f)?;
        self.fmt_checks(f)
    }
}

impl LatticeReport {
    fn fmt_checks(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.outcome {
                Outcome::Pass => writeln!(f, "  PASS {}", c.name)?,
                Outcome::Fail(w) => writeln!(f, "  FAIL {}: {}", c.name, w)?,
                Outcome::Skip(w) => writeln!(f, "  SKIP {}: {}", c.name, w)?,
            }
        }
        Ok(())
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &'static str, outcome: Outcome) {
        self.0.push(Check { name, outcome });
    }

    fn require(&mut self, name: &'static str, witness: Option<String>) {
        self.push(name, witness.map_or(Outcome::Pass, Outcome::Fail));
    }

    fn skip(&mut self, name: &'static str, why: &str) {
        self.push(name, Outcome::Skip(why.into()));
    }
}

/// First element for which `bad` produces a witness.
fn first_bad(n: usize, bad: impl Fn(usize) -> Option<String>) -> Option<String> {
    (0..n).find_map(bad)
}

fn fmt_set(s: &ElementSet) -> String {
    format!("{:?}", s.to_vec())
}

/// Whether `l` is isomorphic to a Boolean lattice.
pub fn is_boolean(l: &Lattice) -> bool {
    let k = l.join_irreducibles().len();
    l.len() == 1 << k && l.is_isomorphic(&boolean(k)).is_some()
}

/// Distributivity by the ideal representation: `L ≅ I(J(L))`.
pub fn is_distributive_birkhoff(l: &Lattice) -> bool {
    let (jp, _) = l.join_irreducible_poset();
    l.is_isomorphic(&birkhoff(&jp)).is_some()
}

/// Distributivity by excluded pentagon and diamond sublattices.
pub fn is_distributive_forbidden(l: &Lattice) -> bool {
    l.has_sublattice(Pattern::N5).is_none() && l.has_sublattice(Pattern::M3).is_none()
}

/// Largest lattice the per-element canonical-representation oracle runs on.
pub const ORACLE_MAX_ELEMENTS: usize = 8;

/// Runs every property and characterization check on `l`.
pub fn report(name: impl Into<String>, l: &Lattice) -> LatticeReport {
    let mut checks = Checks(Vec::new());
    let distributive = l.is_distributive_law();
    let birkhoff_test = is_distributive_birkhoff(l);
    let forbidden_test = is_distributive_forbidden(l);
    checks.require(
        "distributivity tests agree",
        (distributive != birkhoff_test || distributive != forbidden_test).then(|| {
            format!("law={distributive} ideal-representation={birkhoff_test} no-pentagon-or-diamond={forbidden_test}")
        }),
    );
    let semidistributive = l.is_semidistributive();
    let uniformity = congruence_uniformity(l);
    let congruence_uniform = uniformity.is_uniform();
    let boolean = is_boolean(l);
    checks.require(
        "congruence uniform implies semidistributive",
        (congruence_uniform && !semidistributive).then(|| "semidistributivity fails".into()),
    );
    checks.require(
        "distributive implies congruence uniform",
        (distributive && !congruence_uniform).then(|| format!("{uniformity:?}")),
    );
    let mut out = LatticeReport {
        name: name.into(),
        size: l.len(),
        distributive,
        semidistributive,
        congruence_uniform,
        graded: l.is_graded(),
        boolean,
        uniform: None,
        checks: Vec::new(),
        aggregate: false,
    };
    if congruence_uniform {
        out.uniform = uniform_checks(l, distributive, boolean, &mut checks);
    } else {
        checks.skip("core label checks", "not congruence uniform");
    }
    out.checks = checks.0;
    out
}

fn uniform_checks(
    l: &Lattice,
    distributive: bool,
    boolean: bool,
    checks: &mut Checks,
) -> Option<UniformSummary> {
    let n = l.len();
    let labels = match CoverLabels::gamma(l) {
        Ok(labels) => {
            checks.push("perspectivity label is unique on every cover", Outcome::Pass);
            labels
        }
        Err(e) => {
            checks.push("perspectivity label is unique on every cover", Outcome::Fail(e.to_string()));
            return None;
        }
    };
    let data = CoreLabelData::with_labels(l, &labels, Exec::Sequential);

    checks.require(
        "lower-cover labels form an irredundant join representation",
        first_bad(n, |x| {
            let g = &data.gamma[x];
            let antichain = g.iter().all(|a| g.iter().all(|b| a == b || !l.poset().comparable(a, b)));
            (!antichain || l.join_set(g.iter()) != x).then(|| format!("x={x} labels={}", fmt_set(g)))
        }),
    );
    if n <= ORACLE_MAX_ELEMENTS {
        checks.require(
            "lower-cover labels equal the brute-force canonical representation",
            first_bad(n, |x| {
                let oracle = canonical_join_rep_oracle(l, x, OracleMode::JoinIrreducibles);
                (oracle.as_ref() != Some(&data.gamma[x]))
                    .then(|| format!("x={x} labels={} oracle={:?}", fmt_set(&data.gamma[x]), oracle.map(|s| s.to_vec())))
            }),
        );
    } else {
        checks.skip("lower-cover labels equal the brute-force canonical representation", "lattice too large");
    }

    let complex = match canonical_join_complex_with(l, &labels) {
        Ok(c) => {
            checks.push("canonical join representations form a simplicial complex", Outcome::Pass);
            c
        }
        Err(e) => {
            checks.push("canonical join representations form a simplicial complex", Outcome::Fail(e.to_string()));
            return None;
        }
    };
    let flag = complex.is_flag();
    checks.require("canonical join complex is flag", (!flag).then(|| "a clique is not a face".into()));

    checks.require(
        "core labels contain lower-cover labels",
        first_bad(n, |x| {
            (!data.gamma[x].is_subset(&data.psi[x]))
                .then(|| format!("x={x} psi={} gamma={}", fmt_set(&data.psi[x]), fmt_set(&data.gamma[x])))
        }),
    );
    checks.require(
        "core labels equal lower-cover labels iff the core is Boolean",
        first_bad(n, |x| {
            let equal = data.psi[x] == data.gamma[x];
            let core_boolean = core_is_boolean(l, x).expect("labels exist");
            (equal != core_boolean).then(|| format!("x={x} equal={equal} boolean-core={core_boolean}"))
        }),
    );
    let bdef = data.boolean_defect();
    checks.require(
        "zero Boolean defect iff distributive",
        ((bdef == 0) != distributive).then(|| format!("bdef={bdef} distributive={distributive}")),
    );

    if distributive {
        checks.require(
            "perspectivity label equals the ideal-difference label",
            l.covers().into_iter().find_map(|(a, b)| {
                let lam = lambda_label(l, (a, b));
                (lam.as_ref().ok() != labels.label(a, b).as_ref()).then(|| format!("cover ({a},{b}) lambda={lam:?}"))
            }),
        );
        checks.require(
            "lower-cover labels equal the ideal difference at the nucleus",
            first_bad(n, |x| {
                let diff = iota(l, x).difference(&iota(l, data.nucleus[x]));
                (diff != data.gamma[x]).then(|| format!("x={x} difference={}", fmt_set(&diff)))
            }),
        );
    }

    let order = match data.order() {
        Ok(o) => {
            checks.push("core labels are injective", Outcome::Pass);
            o
        }
        Err(e) => {
            checks.push("core labels are injective", Outcome::Fail(e.to_string()));
            return None;
        }
    };
    let (face_poset, _) = complex.face_poset();
    let iso = order.poset.is_isomorphic(&face_poset).is_some();
    checks.require(
        "distributive iff core label order is isomorphic to the face poset",
        (iso != distributive).then(|| format!("isomorphic={iso} distributive={distributive}")),
    );
    let psi_family: HashSet<&ElementSet> = data.psi.iter().collect();
    let gamma_family: HashSet<&ElementSet> = data.gamma.iter().collect();
    let same_family = psi_family == gamma_family;
    checks.require(
        "distributive iff core label sets are exactly the canonical join faces",
        (same_family != distributive).then(|| format!("same-family={same_family} distributive={distributive}")),
    );

    let meet_semilattice = clo_is_meet_semilattice(&order.poset);
    let is_lattice = clo_is_lattice(&order.poset);
    let ip = data.intersection_failure();
    checks.require(
        "intersection property iff core label order is a meet-semilattice",
        (ip.is_none() != meet_semilattice).then(|| format!("intersection-failure={ip:?} meet-semilattice={meet_semilattice}")),
    );
    let top_nucleus = data.nucleus[l.top()];
    let has_top = order.poset.maximal_elements().len() == 1;
    checks.require(
        "core label order has a greatest element iff the top's nucleus is the bottom",
        (has_top != (top_nucleus == l.bottom())).then(|| format!("greatest={has_top} top-nucleus={top_nucleus}")),
    );
    checks.require(
        "core label order is a lattice iff intersection property and the top's nucleus is the bottom",
        (is_lattice != (ip.is_none() && top_nucleus == l.bottom()))
            .then(|| format!("lattice={is_lattice} intersection-failure={ip:?} top-nucleus={top_nucleus}")),
    );
    checks.require(
        "core label order is a lattice iff the top's nucleus is the bottom",
        (is_lattice != (top_nucleus == l.bottom())).then(|| {
            let mut w = format!("lattice={is_lattice} top-nucleus={top_nucleus}");
            if let Some((x, y)) = ip {
                let _ = write!(
                    w,
                    " psi({x})={} psi({y})={} intersection is no core label set",
                    fmt_set(&data.psi[x]),
                    fmt_set(&data.psi[y])
                );
            }
            let _ = write!(w, " covers={:?}", l.covers());
            w
        }),
    );
    if distributive {
        checks.require(
            "distributive lattices have the intersection property",
            ip.map(|(x, y)| format!("x={x} y={y}")),
        );
        checks.require(
            "distributive lattices have a meet-semilattice core label order",
            (!meet_semilattice).then(|| "some pair has no greatest lower bound".into()),
        );
        checks.require(
            "distributive core label order is a lattice iff Boolean",
            (is_lattice != boolean).then(|| format!("lattice={is_lattice} boolean={boolean}")),
        );
    }

    Some(UniformSummary {
        boolean_defect: bdef,
        clo_shape: if is_lattice {
            CloShape::Lattice
        } else if meet_semilattice {
            CloShape::MeetSemilattice
        } else {
            CloShape::Poset
        },
        f_vector: complex.f_vector(),
        flag,
    })
}

#[derive(Debug, Clone, Default)]
pub struct Summary {
    pub lattices: usize,
    pub congruence_uniform: usize,
    pub distributive: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn of(reports: &[LatticeReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            s.add(r);
        }
        s
    }

    pub fn add(&mut self, r: &LatticeReport) {
        if !r.aggregate {
            self.lattices += 1;
            self.congruence_uniform += usize::from(r.congruence_uniform);
            self.distributive += usize::from(r.distributive);
        }
        for c in &r.checks {
            match c.outcome {
                Outcome::Pass => self.pass += 1,
                Outcome::Fail(_) => self.fail += 1,
                Outcome::Skip(_) => self.skip += 1,
            }
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "summary lattices={} congruence-uniform={} distributive={} pass={} fail={} skip={}",
            self.lattices, self.congruence_uniform, self.distributive, self.pass, self.fail, self.skip
        )
    }
}

/// Reports for every lattice with at most `nmax` elements, in enumeration
/// order, plus one reachability report per size.
pub fn verify_census(nmax: usize, exec: Exec) -> Result<Vec<LatticeReport>, ConstructionError> {
    let levels = LatticeEnumerator::default().with_exec(exec).levels(nmax)?;
    let mut named: Vec<(String, &Lattice)> = Vec::new();
    for (m, level) in levels.iter().enumerate() {
        for (i, l) in level.iter().enumerate() {
            named.push((format!("n{}#{}", m + 1, i), l));
        }
    }
    let mut reports = exec.map(&named, |(name, l)| report(name.clone(), l));
    reports.push(reachability_report(&levels));
    Ok(reports)
}

/// Every distributive lattice in `levels` is built by some principal-filter
/// doubling script.
pub fn reachability_report(levels: &[Vec<Lattice>]) -> LatticeReport {
    let reachable = principal_filter_reachable(levels.len());
    let mut checks = Checks(Vec::new());
    let mut missing = Vec::new();
    let mut count = 0;
    for (m, level) in levels.iter().enumerate() {
        for (i, l) in level.iter().enumerate() {
            if !l.is_distributive_law() {
                continue;
            }
            count += 1;
            match reachable.get(&l.poset().canonical_form()) {
                Some(script) => {
                    let built = script.build().map(|o| o.lattice.is_isomorphic(l).is_some());
                    if built != Ok(true) {
                        missing.push(format!("n{}#{} (script does not rebuild it)", m + 1, i));
                    }
                }
                None => missing.push(format!("n{}#{}", m + 1, i)),
            }
        }
    }
    checks.require(
        "every distributive lattice is reached by principal-filter doublings",
        (!missing.is_empty()).then(|| missing.join(", ")),
    );
    checks.require(
        "principal-filter doublings reach only distributive lattices",
        reachable
            .values()
            .find(|s| !s.build().is_ok_and(|o| o.lattice.is_distributive_law()))
            .map(|s| s.to_text()),
    );
    LatticeReport {
        name: format!("principal-filter-reachability n<={}", levels.len()),
        size: count,
        distributive: false,
        semidistributive: false,
        congruence_uniform: false,
        graded: false,
        boolean: false,
        uniform: None,
        checks: checks.0,
        aggregate: true,
    }
}

/// Which doubling scripts to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScriptKind {
    Interval,
    PrincipalFilter,
}

/// `count` seeded random scripts of each kind, each built and reported. The
/// script for index `i` depends only on `(seed, i)`.
pub fn verify_scripts(count: usize, max_len: usize, seed: u64, exec: Exec) -> Vec<LatticeReport> {
    let jobs: Vec<(ScriptKind, usize)> = [ScriptKind::Interval, ScriptKind::PrincipalFilter]
        .into_iter()
        .flat_map(|k| (0..count).map(move |i| (k, i)))
        .collect();
    exec.map(&jobs, |&(kind, i)| script_report(kind, i, max_len, seed))
}

/// The script for `(seed, index)`; interval and filter scripts use disjoint streams.
pub fn seeded_script(kind: ScriptKind, index: usize, max_len: usize, seed: u64) -> DoublingScript {
    let stream = match kind {
        ScriptKind::Interval => 2 * index as u64,
        ScriptKind::PrincipalFilter => 2 * index as u64 + 1,
    };
    let mut rng = script_rng(seed, stream);
    match kind {
        ScriptKind::Interval => random_interval_script(&mut rng, max_len),
        ScriptKind::PrincipalFilter => random_filter_script(&mut rng, max_len),
    }
}

pub fn script_report(kind: ScriptKind, index: usize, max_len: usize, seed: u64) -> LatticeReport {
    let script = seeded_script(kind, index, max_len, seed);
    let tag = match kind {
        ScriptKind::Interval => "interval-script",
        ScriptKind::PrincipalFilter => "filter-script",
    };
    let name = format!("{tag}#{index}");
    let outcome = match script.build() {
        Ok(o) => o,
        Err(e) => {
            return LatticeReport {
                name,
                size: 0,
                distributive: false,
                semidistributive: false,
                congruence_uniform: false,
                graded: false,
                boolean: false,
                uniform: None,
                checks: vec![Check {
                    name: "script builds a lattice",
                    outcome: Outcome::Fail(format!("{e} script=[{}]", one_line(&script))),
                }],
                aggregate: false,
            };
        }
    };
    let mut r = report(name, &outcome.lattice);
    let (check, want, got) = match kind {
        ScriptKind::Interval => (
            "interval doublings yield a congruence-uniform lattice",
            outcome.all_steps_intervals,
            r.congruence_uniform,
        ),
        ScriptKind::PrincipalFilter => (
            "principal-filter doublings yield a distributive lattice",
            outcome.all_steps_principal_filters,
            r.distributive,
        ),
    };
    let outcome = if !want {
        Outcome::Fail("script steps are not all of the requested kind".into())
    } else if got {
        Outcome::Pass
    } else {
        Outcome::Fail(String::new())
    };
    r.checks.insert(0, Check { name: check, outcome });
    let steps = one_line(&script);
    for c in &mut r.checks {
        if let Outcome::Fail(w) = &mut c.outcome {
            let _ = write!(w, " script=[{steps}]");
        }
    }
    r
}

fn one_line(script: &DoublingScript) -> String {
    script.to_text().lines().collect::<Vec<_>>().join("; ")
}

/// Renders reports and the summary, in order.
pub fn render(reports: &[LatticeReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = write!(s, "{r}");
    }
    let _ = writeln!(s, "{}", Summary::of(reports));
    s
}
