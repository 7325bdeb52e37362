//! Acceptance battery: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use spj_core::chains::{self, OmegaGroup, StepKind};
use spj_core::oracle::FiniteGroupModel;
use spj_core::special::CoefficientRing;
use spj_core::suite::{self, Outcome, Status, SuiteConfig};
use spj_core::weyl::length;
use spj_core::{CartanType, Error, Result, RootSystem, SubsetJ, WeylElement, WeylGroup};

const LISTED: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "D4"];
const RANK_LE_3: [&str; 6] = ["A1", "A2", "A3", "B2", "B3", "C3"];
const RANK_LE_4: [&str; 13] =
    ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "A1xA1", "A2xA2"];
const PRIMES: [u64; 2] = [2, 3];
const LINE_CAP: u128 = 1 << 20;

const LIMIT_RANKS: Duration = Duration::from_secs(10);
const LIMIT_EXACTNESS: Duration = Duration::from_secs(60);
const LIMIT_LINES: Duration = Duration::from_secs(120);
const LIMIT_ORACLE: Duration = Duration::from_secs(120);

fn group(t: &str) -> Result<WeylGroup> {
    WeylGroup::new(RootSystem::build(&t.parse()?)?)
}

/// Tally of a battery; the first failure is kept for the report line.
#[derive(Default)]
struct Tally {
    pass: usize,
    skip: usize,
    first_fail: Option<String>,
}

impl Tally {
    fn add(&mut self, what: &str, r: Result<Outcome>) {
        match r {
            Ok(o) if o.status == Status::Pass => self.pass += 1,
            Ok(o) if o.status == Status::Skip => self.skip += 1,
            Ok(o) => self.fail(format!("{what}: {}", o.detail)),
            Err(Error::CapExceeded { .. }) => self.skip += 1,
            Err(e) => self.fail(format!("{what}: {e}")),
        }
    }

    fn check(&mut self, what: &str, ok: bool) {
        if ok {
            self.pass += 1;
        } else {
            self.fail(what.to_string());
        }
    }

    fn fail(&mut self, msg: String) {
        if self.first_fail.is_none() {
            self.first_fail = Some(msg);
        }
    }

    fn ok(&self) -> bool {
        self.first_fail.is_none()
    }

    fn summary(&self) -> String {
        match &self.first_fail {
            Some(m) => format!("first failure: {m}"),
            None if self.skip > 0 => format!("{} checks, {} above cap", self.pass, self.skip),
            None => format!("{} checks", self.pass),
        }
    }
}

fn each_group(types: &[&str], t: &mut Tally, mut f: impl FnMut(&str, &WeylGroup, &mut Tally)) {
    for name in types {
        match group(name) {
            Ok(g) => f(name, &g, t),
            Err(e) => t.fail(format!("{name}: {e}")),
        }
    }
}

fn rank_identities() -> Tally {
    let mut t = Tally::default();
    each_group(&LISTED, &mut t, |name, g, t| {
        for j in SubsetJ::all(g.rank()) {
            t.add(&format!("{name} J={j}"), suite::check_module(g, j, CoefficientRing::Integers));
        }
        t.add(name, suite::check_rank_sum(g));
        t.add(name, suite::check_vj_partition(g));
    });
    t
}

fn steinberg() -> Tally {
    let mut t = Tally::default();
    each_group(&LISTED, &mut t, |name, g, t| t.add(name, suite::check_steinberg(g)));
    t
}

fn exactness() -> Tally {
    let mut t = Tally::default();
    let rings = [CoefficientRing::Rationals, CoefficientRing::PrimeField(2), CoefficientRing::PrimeField(3)];
    each_group(&RANK_LE_3, &mut t, |name, g, t| {
        for j in SubsetJ::all(g.rank()) {
            for r in rings {
                t.add(&format!("{name} J={j} {r}"), suite::check_exactness(g, j, r));
            }
        }
    });
    t
}

fn length_and_order() -> Tally {
    let mut t = Tally::default();
    each_group(&RANK_LE_3, &mut t, |name, g, t| {
        t.add(name, suite::check_group(g));
        t.add(name, suite::check_phi_difference(g));
        for j in SubsetJ::all(g.rank()) {
            let w = format!("{name} J={j}");
            t.add(&w, suite::check_coset_lengths(g, j));
            t.add(&w, suite::check_projection(g, j));
            t.add(&w, suite::check_order_raises_length(g, j));
            t.add(&w, suite::check_left_moves(g, j));
            t.add(&w, suite::check_order_descent(g, j));
            t.add(&w, suite::check_above_parabolic(g, j));
            t.add(&w, suite::check_maximum(g, j));
            t.add(&w, suite::check_ascents_in_vj(g, j));
        }
    });
    t
}

fn witnesses() -> Tally {
    let mut t = Tally::default();
    each_group(&RANK_LE_4, &mut t, |name, g, t| {
        for j in SubsetJ::all(g.rank()) {
            t.add(&format!("{name} J={j}"), suite::check_witnesses(g, j));
        }
    });
    t
}

/// Re-checks a chain step by step without the library's validator.
fn recheck_chain(ct: &CartanType) -> Result<bool> {
    let rs = RootSystem::build(ct)?;
    let omega = OmegaGroup::build(&rs)?;
    let steps = chains::weyllem2_chain(&rs)?;
    let w0 = chains::longest_of(&rs, SubsetJ::full(rs.rank()));
    let mut cur = w0.clone();
    if length(&rs, &w0) as usize != rs.num_positive() {
        return Ok(false);
    }
    for st in &steps {
        if st.from != cur {
            return Ok(false);
        }
        let ok = match &st.kind {
            StepKind::Weak { s } => {
                st.to == rs.reflection(*s).compose(&st.from) && length(&rs, &st.to) == length(&rs, &st.from) + 1
            }
            StepKind::Omega { u } => omega.contains(u) && st.to == u.compose(&st.from),
        };
        if !ok {
            return Ok(false);
        }
        cur = st.to.clone();
    }
    Ok(cur == WeylElement::identity(rs.width()))
}

fn chains_battery() -> Tally {
    let mut t = Tally::default();
    let mut types: Vec<String> = Vec::new();
    for l in 1..=5 {
        types.extend([format!("A{l}"), format!("B{l}"), format!("C{l}")]);
    }
    types.extend((2..=5).map(|l| format!("D{l}")));
    types.push("A2xB2".into());
    for name in &types {
        match name.parse::<CartanType>().and_then(|ct| recheck_chain(&ct)) {
            Ok(ok) => t.check(&format!("chain for {name}"), ok),
            Err(e) => t.fail(format!("{name}: {e}")),
        }
    }
    each_group(&RANK_LE_3, &mut t, |name, g, t| {
        for j in SubsetJ::all(g.rank()) {
            t.add(&format!("lifts {name} J={j}"), suite::check_lifts(g, j));
        }
    });
    t
}

fn hecke_table() -> Tally {
    let mut t = Tally::default();
    each_group(&RANK_LE_3, &mut t, |name, g, t| {
        t.add(name, suite::check_trichotomy(g));
        for j in SubsetJ::all(g.rank()) {
            for p in PRIMES {
                t.add(&format!("{name} J={j} p={p}"), suite::check_quadratic(g, j, p));
            }
        }
    });
    t
}

fn lines() -> Tally {
    let mut t = Tally::default();
    each_group(&RANK_LE_3, &mut t, |name, g, t| {
        for j in SubsetJ::all(g.rank()) {
            for p in PRIMES {
                t.add(&format!("{name} J={j} p={p}"), suite::check_lines(g, j, p, LINE_CAP));
            }
        }
    });
    t
}

fn simplicity() -> Tally {
    let mut t = Tally::default();
    let mut types = RANK_LE_3.to_vec();
    types.push("D4");
    each_group(&types, &mut t, |name, g, t| {
        for j in SubsetJ::all(g.rank()) {
            for p in PRIMES {
                t.add(&format!("{name} J={j} p={p}"), suite::check_simple(g, j, p, LINE_CAP));
            }
        }
    });
    for p in PRIMES {
        t.add(&format!("negative control p={p}"), suite::negative_control(p));
    }
    t
}

fn fingerprints() -> Tally {
    let mut t = Tally::default();
    each_group(&LISTED, &mut t, |name, g, t| {
        t.add(name, suite::check_fingerprints(g));
        for j in SubsetJ::all(g.rank()) {
            t.add(&format!("{name} J={j}"), suite::check_zj_eigen(g, j));
        }
    });
    t
}

fn oracle() -> Tally {
    let mut t = Tally::default();
    for (n, q) in [(2, 2), (3, 2), (2, 3)] {
        match FiniteGroupModel::build(n, q) {
            Ok(m) => {
                t.add(&format!("GL{n}(F{q})"), suite::check_model(&m));
                for j in SubsetJ::all(n - 1) {
                    t.add(&format!("GL{n}(F{q}) J={j}"), suite::check_oracle(&m, j));
                }
            }
            Err(e) => t.fail(format!("GL{n}(F{q}): {e}")),
        }
    }
    t
}

fn determinism() -> Tally {
    let mut t = Tally::default();
    let cfg = SuiteConfig::default();
    let a = suite::run_suite(&cfg);
    let b = suite::run_suite(&cfg);
    t.check("reports differ", a.to_jsonl() == b.to_jsonl());
    t.check("default suite has failures", a.all_pass());
    t.pass = a.records.len();
    t
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Tally, Option<Duration>);
    let criteria: [Criterion; 12] = [
        ("rank identities and sum of ranks", rank_identities, Some(LIMIT_RANKS)),
        ("Steinberg module has rank one", steinberg, None),
        ("restricted exactness over Q, F2, F3", exactness, Some(LIMIT_EXACTNESS)),
        ("length and order identities", length_and_order, None),
        ("descent witnesses in V^J", witnesses, None),
        ("weak order and Omega chains, lifts", chains_battery, None),
        ("Hecke case table and quadratic relation", hecke_table, None),
        ("every line reaches g_zJ", lines, Some(LIMIT_LINES)),
        ("simplicity and negative control", simplicity, None),
        ("descent fingerprints recover J", fingerprints, None),
        ("finite group oracle certification", oracle, Some(LIMIT_ORACLE)),
        ("suite determinism", determinism, None),
    ];
    let mut all = true;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let tally = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let ok = tally.ok() && in_time;
        all &= ok;
        let timing = match limit {
            Some(l) => format!("{:.2}s of {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        println!("[{}] {:>2}. {name}: {} ({timing})", if ok { "PASS" } else { "FAIL" }, k + 1, tally.summary());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
