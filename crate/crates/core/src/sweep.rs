//! Batch verification suites over ranges of `d` and ideal norms.
//!
//! A sweep first builds an ordered task list, runs it on a rayon pool of
//! the requested size, and collects results in task order, so the report is
//! byte-identical for any thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::certify::{
    certify_noncongruence, class_number, power_subgroup_status, verify_appendix_a, verify_lemma_6_1,
    SubgroupDescriptor, Verdict, SMALL_CLASS_NUMBER_FIELDS,
};
use crate::error::{Error, Result};
use crate::ideals::{ideals_up_to, split_type, Ideal};
use crate::indexcalc::{
    index_formula, verify_filtration, verify_multiplicativity, verify_surjectivity, verify_wohlfahrt_closure,
};
use crate::quadring::make_ring;
use crate::resring::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Index,
    Surjectivity,
    Filtration,
    Multiplicativity,
    Wohlfahrt,
    Lemma61,
    Classnum,
    Certificates,
    AppendixA,
    All,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Index,
        Suite::Surjectivity,
        Suite::Filtration,
        Suite::Multiplicativity,
        Suite::Wohlfahrt,
        Suite::Lemma61,
        Suite::Classnum,
        Suite::Certificates,
        Suite::AppendixA,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Index => "index",
            Suite::Surjectivity => "surjectivity",
            Suite::Filtration => "filtration",
            Suite::Multiplicativity => "multiplicativity",
            Suite::Wohlfahrt => "wohlfahrt",
            Suite::Lemma61 => "lemma61",
            Suite::Classnum => "classnum",
            Suite::Certificates => "certificates",
            Suite::AppendixA => "appendix-a",
            Suite::All => "all",
        }
    }

    /// The `d` values a suite covers when no range is given.
    pub fn default_ds(self) -> Vec<i64> {
        match self {
            Suite::Index | Suite::Surjectivity | Suite::Filtration | Suite::Multiplicativity => {
                vec![-1, -2, -3, -5, -7, -11]
            }
            Suite::Wohlfahrt => vec![-1, -2, -3],
            Suite::Lemma61 => squarefree_range(-43, -1),
            Suite::Classnum => squarefree_range(-430, -1),
            Suite::Certificates => vec![-1, -2, -3, -7, -11, -23],
            Suite::AppendixA => vec![-5],
            Suite::All => Vec::new(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse {
                input: s.into(),
                reason: "unknown suite; expected one of index, surjectivity, filtration, multiplicativity, \
                         wohlfahrt, lemma61, classnum, certificates, appendix-a, all"
                    .into(),
            })
    }
}

/// Squarefree `d` in `[lo, hi]`, excluding 0 and 1, ascending.
pub fn squarefree_range(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&d| d != 0 && d != 1 && make_ring(d).is_ok()).collect()
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub suite: Suite,
    /// Overrides every suite's default `d` set.
    pub d_range: Option<(i64, i64)>,
    /// Largest ideal norm for the index-style suites; filtration primes are
    /// additionally capped at norm 9.
    pub norm_bound: u64,
    pub limits: Limits,
    pub parallelism: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { suite: Suite::All, d_range: None, norm_bound: 36, limits: Limits::default(), parallelism: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepItem {
    pub suite: &'static str,
    pub d: i64,
    pub item: String,
    pub status: Status,
    pub detail: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub suite: String,
    pub norm_bound: u64,
    pub limits: Limits,
    pub items: Vec<SweepItem>,
    pub summary: Summary,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }
}

enum Task {
    Index(i64, Ideal),
    Surjectivity(i64, Ideal),
    Filtration(i64, Ideal, u32),
    Multiplicativity(i64, Ideal, Ideal),
    Wohlfahrt(i64, u64, u64),
    Lemma61(i64),
    ClassNumber(i64),
    ClassNumberSet(Vec<i64>),
    Certificate(i64, u64, Option<Verdict>),
    PowerStatus(i64, Option<Verdict>),
    AppendixA(i64, u64),
}

const WOHLFAHRT_PAIRS: [(u64, u64); 4] = [(2, 3), (3, 2), (2, 2), (3, 3)];

fn ds_for(suite: Suite, cfg: &SweepConfig) -> Vec<i64> {
    match cfg.d_range {
        Some((lo, hi)) => squarefree_range(lo.min(hi), lo.max(hi)),
        None => suite.default_ds(),
    }
}

fn tasks_for(suite: Suite, cfg: &SweepConfig) -> Result<Vec<Task>> {
    let ds = ds_for(suite, cfg);
    let mut tasks = Vec::new();
    match suite {
        Suite::Index | Suite::Surjectivity => {
            for &d in &ds {
                let ring = make_ring(d)?;
                for i in ideals_up_to(&ring, 2, cfg.norm_bound) {
                    tasks.push(if suite == Suite::Index { Task::Index(d, i) } else { Task::Surjectivity(d, i) });
                }
            }
        }
        Suite::Filtration => {
            for &d in &ds {
                let ring = make_ring(d)?;
                for i in ideals_up_to(&ring, 2, cfg.norm_bound.min(9)) {
                    if i.is_prime(&ring) {
                        for m in [1, 2] {
                            tasks.push(Task::Filtration(d, i.clone(), m));
                        }
                    }
                }
            }
        }
        Suite::Multiplicativity => {
            for &d in &ds {
                let ring = make_ring(d)?;
                let ids = ideals_up_to(&ring, 2, cfg.norm_bound / 2);
                for (k, a) in ids.iter().enumerate() {
                    for b in &ids[k + 1..] {
                        let n = a.norm_u64().unwrap_or(u64::MAX).saturating_mul(b.norm_u64().unwrap_or(u64::MAX));
                        if n <= cfg.norm_bound && a.is_coprime_to(b) {
                            tasks.push(Task::Multiplicativity(d, a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
        Suite::Wohlfahrt => {
            for &d in &ds {
                for (m, n) in WOHLFAHRT_PAIRS {
                    tasks.push(Task::Wohlfahrt(d, m, n));
                }
            }
        }
        Suite::Lemma61 => tasks.extend(ds.iter().filter(|&&d| d < 0).map(|&d| Task::Lemma61(d))),
        Suite::Classnum => {
            let neg: Vec<i64> = ds.into_iter().filter(|&d| d < 0).collect();
            tasks.extend(neg.iter().map(|&d| Task::ClassNumber(d)));
            tasks.push(Task::ClassNumberSet(neg));
        }
        Suite::Certificates => {
            if cfg.d_range.is_none() {
                tasks.push(Task::Certificate(-2, 5, Some(Verdict::NonCongruence)));
                tasks.push(Task::Certificate(-1, 5, Some(Verdict::NotApplicable)));
                tasks.push(Task::Certificate(-3, 5, Some(Verdict::NotApplicable)));
                tasks.push(Task::PowerStatus(-11, Some(Verdict::NonCongruence)));
                tasks.push(Task::PowerStatus(-23, Some(Verdict::NonCongruence)));
                tasks.push(Task::PowerStatus(-7, Some(Verdict::Congruence)));
                tasks.push(Task::PowerStatus(-3, Some(Verdict::Congruence)));
            } else {
                for d in ds.into_iter().filter(|&d| d < 0) {
                    tasks.push(Task::Certificate(d, 5, None));
                    tasks.push(Task::PowerStatus(d, None));
                }
            }
        }
        Suite::AppendixA => {
            if cfg.d_range.is_none() {
                tasks.push(Task::AppendixA(-5, 5));
            } else {
                for d in ds {
                    let ring = make_ring(d)?;
                    for q in [5, 7] {
                        if split_type(&ring, q)?.is_ramified() {
                            tasks.push(Task::AppendixA(d, q));
                        }
                    }
                }
            }
        }
        Suite::All => {
            for s in Suite::ALL {
                tasks.extend(tasks_for(s, cfg)?);
            }
        }
    }
    Ok(tasks)
}

fn item(suite: &'static str, d: i64, item: String, ok: bool, detail: impl Serialize) -> SweepItem {
    let detail = serde_json::to_value(detail).expect("reports serialize");
    SweepItem { suite, d, item, status: if ok { Status::Pass } else { Status::Fail }, detail }
}

fn run_task(task: &Task, limits: Limits) -> SweepItem {
    let (suite, d, label) = match task {
        Task::Index(d, i) => ("index", *d, i.to_string()),
        Task::Surjectivity(d, i) => ("surjectivity", *d, i.to_string()),
        Task::Filtration(d, p, m) => ("filtration", *d, format!("{p} m={m}")),
        Task::Multiplicativity(d, a, b) => ("multiplicativity", *d, format!("{a} * {b}")),
        Task::Wohlfahrt(d, m, n) => ("wohlfahrt", *d, format!("m={m} n={n}")),
        Task::Lemma61(d) => ("lemma61", *d, "PSL(2, O/2)".into()),
        Task::ClassNumber(d) => ("classnum", *d, "h".into()),
        Task::ClassNumberSet(_) => ("classnum", 0, "h <= 2 set".into()),
        Task::Certificate(d, q, _) => ("certificates", *d, format!("B_{d} q={q}")),
        Task::PowerStatus(d, _) => ("certificates", *d, format!("B_{d}^2")),
        Task::AppendixA(d, q) => ("appendix-a", *d, format!("q={q}")),
    };
    match run_task_inner(task, limits) {
        Ok((ok, detail)) => SweepItem {
            suite,
            d,
            item: label,
            status: match ok {
                Some(true) => Status::Pass,
                Some(false) => Status::Fail,
                None => Status::Skip,
            },
            detail,
        },
        Err(e @ Error::Capacity { .. }) => {
            SweepItem { suite, d, item: label, status: Status::Skip, detail: json!({ "reason": e.to_string() }) }
        }
        Err(e) => item(suite, d, label, false, json!({ "error": e.to_string() })),
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// `Some(ok)` for a verdict, `None` for an explicit skip.
fn run_task_inner(task: &Task, limits: Limits) -> Result<(Option<bool>, Value)> {
    Ok(match task {
        Task::Index(d, i) => {
            let r = index_formula(&make_ring(*d)?, i, limits)?;
            let ok = r.oracle.map(|_| r.matches);
            (ok, to_value(r))
        }
        Task::Surjectivity(d, i) => {
            let r = verify_surjectivity(&make_ring(*d)?, i, limits)?;
            (Some(r.surjective), to_value(r))
        }
        Task::Filtration(d, p, m) => {
            let r = verify_filtration(&make_ring(*d)?, p, *m, limits)?;
            (Some(r.ok), to_value(r))
        }
        Task::Multiplicativity(d, a, b) => {
            let r = verify_multiplicativity(&make_ring(*d)?, a, b, limits)?;
            (Some(r.holds), to_value(r))
        }
        Task::Wohlfahrt(d, m, n) => {
            let r = verify_wohlfahrt_closure(&make_ring(*d)?, *m, *n, limits)?;
            (Some(r.equal), to_value(r))
        }
        Task::Lemma61(d) => {
            let r = verify_lemma_6_1(*d, limits)?;
            (Some(r.holds), to_value(r))
        }
        Task::ClassNumber(d) => (Some(true), json!({ "class_number": class_number(*d)? })),
        Task::ClassNumberSet(ds) => {
            let mut got = Vec::new();
            for &d in ds {
                if class_number(d)? <= 2 {
                    got.push(d);
                }
            }
            let (lo, hi) = (ds.iter().min().copied().unwrap_or(0), ds.iter().max().copied().unwrap_or(0));
            let mut want: Vec<i64> =
                SMALL_CLASS_NUMBER_FIELDS.iter().copied().filter(|d| (lo..=hi).contains(d)).collect();
            want.sort_unstable_by(|a, b| b.cmp(a));
            got.sort_unstable_by(|a, b| b.cmp(a));
            (Some(got == want), json!({ "computed": got, "reference": want }))
        }
        Task::Certificate(d, q, expect) => {
            let c = certify_noncongruence(*d, *q, &SubgroupDescriptor::Bianchi)?;
            let ok = match expect {
                Some(v) => Some(&c.verdict == v),
                None => (!matches!(c.verdict, Verdict::Undetermined(_))).then_some(true),
            };
            (ok, to_value(c))
        }
        Task::PowerStatus(d, expect) => {
            let r = power_subgroup_status(*d, None)?;
            let square = &r.items[0].verdict;
            let ok = match expect {
                Some(v) => Some(square == v),
                None => (!matches!(square, Verdict::Undetermined(_))).then_some(true),
            };
            (ok, to_value(r))
        }
        Task::AppendixA(d, q) => {
            let r = verify_appendix_a(*d, *q, limits)?;
            (Some(r.holds), to_value(r))
        }
    })
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    if cfg.parallelism == 0 {
        return Err(Error::Precondition("parallelism must be at least 1".into()));
    }
    let tasks = tasks_for(cfg.suite, cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let limits = cfg.limits;
    let items: Vec<SweepItem> = pool.install(|| tasks.par_iter().map(|t| run_task(t, limits)).collect());
    let mut summary = Summary::default();
    for it in &items {
        match it.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skip => summary.skip += 1,
        }
    }
    Ok(SweepReport { suite: cfg.suite.name().into(), norm_bound: cfg.norm_bound, limits, items, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: Suite) -> SweepConfig {
        SweepConfig { suite, ..SweepConfig::default() }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn squarefree_ranges() {
        assert_eq!(squarefree_range(-10, -1), vec![-10, -7, -6, -5, -3, -2, -1]);
        assert_eq!(squarefree_range(-1, 3), vec![-1, 2, 3]);
    }

    #[test]
    fn small_index_sweep_passes() {
        let mut c = cfg(Suite::Index);
        c.norm_bound = 12;
        c.d_range = Some((-3, -1));
        let r = run_sweep(&c).unwrap();
        assert!(r.all_passed());
        assert!(r.summary.pass > 10);
        assert_eq!(r.summary.skip, 0);
    }

    #[test]
    fn capacity_becomes_skip() {
        let mut c = cfg(Suite::Wohlfahrt);
        c.d_range = Some((-1, -1));
        c.limits.group_elements = 1000;
        let r = run_sweep(&c).unwrap();
        assert_eq!(r.items.len(), 4);
        assert!(r.items.iter().all(|i| i.status == Status::Skip));
        assert!(r.items[0].detail["reason"].as_str().unwrap().contains("capacity"));
    }

    #[test]
    fn order_is_independent_of_threads() {
        let mut c = cfg(Suite::Lemma61);
        c.d_range = Some((-15, -1));
        let one = serde_json::to_string(&run_sweep(&c).unwrap()).unwrap();
        c.parallelism = 4;
        let four = serde_json::to_string(&run_sweep(&c).unwrap()).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn certificate_defaults_pass() {
        let r = run_sweep(&cfg(Suite::Certificates)).unwrap();
        assert_eq!(r.summary, Summary { pass: 7, fail: 0, skip: 0 });
    }
}
