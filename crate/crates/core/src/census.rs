//! Exhaustive census of Cayley graphs of abelian groups by order, classified
//! for Hamiltonian transitivity.
//!
//! Graphs are deduplicated by canonical certificate. Each order's records
//! are kept as one JSON-lines file keyed by certificate, so an interrupted
//! run resumes where it stopped.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianGroup, GeneratingSet, GroupElem};
use crate::canon;
use crate::construct::cayley_graph;
use crate::error::{Error, Result};
use crate::factor::{classify_by_theorems, family_tag, CayleyHint, Verdict};
use crate::graph::Graph;
use crate::graph6;
use crate::hamilton::{is_ham_transitive, kappa_of_cycle, kappa_of_graph, ClassCount, SearchLimits};

/// Abelian group given by its invariant factors `d_1 | d_2 | ... | d_r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub invariant_factors: Vec<usize>,
}

impl GroupSpec {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup::from_invariant_factors(self.invariant_factors.clone()).expect("valid invariant factors")
    }

    pub fn order(&self) -> usize {
        self.invariant_factors.iter().product()
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.group())
    }
}

fn chains(rem: usize, last: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rem == 1 {
        out.push(prefix.clone());
        return;
    }
    for d in 2..=rem {
        if rem.is_multiple_of(d) && d % last == 0 {
            prefix.push(d);
            chains(rem / d, d, prefix, out);
            prefix.pop();
        }
    }
}

/// One group per isomorphism class of abelian groups of order `n`, fewest
/// factors first.
pub fn enumerate_abelian_groups(n: usize) -> Vec<GroupSpec> {
    if n == 1 {
        return vec![GroupSpec { invariant_factors: Vec::new() }];
    }
    let mut out = Vec::new();
    chains(n, 1, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.into_iter().map(|invariant_factors| GroupSpec { invariant_factors }).collect()
}

/// The `{x, -x}` classes of nonidentity elements, in element order.
fn inverse_classes(group: &AbelianGroup) -> Vec<Vec<GroupElem>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in group.elements().skip(1) {
        if seen.contains(&x) {
            continue;
        }
        let y = group.neg(&x);
        seen.insert(x.clone());
        seen.insert(y.clone());
        out.push(if x == y { vec![x] } else { vec![x, y] });
    }
    out
}

/// Every inverse-closed generating set without the identity, as unions of
/// `{x, -x}` classes in increasing bitmask order.
pub fn enumerate_generating_sets(group: &AbelianGroup) -> impl Iterator<Item = GeneratingSet> + '_ {
    let classes = inverse_classes(group);
    let c = classes.len();
    assert!(c < 32, "too many inverse classes for the census");
    (1u32..(1u32 << c)).filter_map(move |mask| {
        let elems: Vec<GroupElem> =
            (0..c).filter(|i| mask >> i & 1 == 1).flat_map(|i| classes[i].iter().cloned()).collect();
        group.generates(&elems).then(|| GeneratingSet::new_unchecked(elems))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CensusVerdict {
    InH,
    NotInH,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaValue {
    pub value: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub order: usize,
    pub degree: usize,
    pub group: GroupSpec,
    /// Every group of this order with a Cayley graph isomorphic to this one.
    pub realized_by: Vec<GroupSpec>,
    /// Formatted elements of the first generating set that produced the graph.
    pub genset: Vec<String>,
    /// Hex canonical certificate.
    pub cert: String,
    pub graph6: String,
    pub verdict: CensusVerdict,
    /// `{"exact": n}` or `{"lower_bound": n}`.
    pub class_count: Option<serde_json::Value>,
    pub kappa: Option<KappaValue>,
    pub total_cycles: Option<String>,
    pub aut_order: Option<String>,
    pub family_tag: String,
    /// Verdict of the theorem-based classifier, when it is definite.
    pub predicted: Option<CensusVerdict>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryEntry {
    pub order: usize,
    pub family_tag: String,
    pub cert: String,
}

/// Per-order counts. The number of distinct graphs is not given in the
/// literature; it is reported as is.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderStats {
    pub order: usize,
    pub groups: usize,
    pub generating_sets: usize,
    pub distinct_graphs: usize,
    pub members: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderTiming {
    pub order: usize,
    pub seconds: f64,
    pub resumed: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusReport {
    pub max_order: usize,
    pub include_order_27: bool,
    pub orders: Vec<OrderStats>,
    /// Deduplicated records sorted by order, then certificate.
    pub records: Vec<CensusRecord>,
    /// Members of the class with their family tags.
    pub summary: Vec<SummaryEntry>,
    /// Set when the overall deadline stopped the run early.
    pub partial: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timing: Vec<OrderTiming>,
}

impl CensusReport {
    pub fn inconclusive(&self) -> impl Iterator<Item = &CensusRecord> {
        self.records.iter().filter(|r| r.verdict == CensusVerdict::Inconclusive)
    }

    /// Summary table with one line per member.
    pub fn summary_table(&self) -> String {
        let mut out = String::from("order  members\n");
        for stats in &self.orders {
            let tags: Vec<&str> =
                self.summary.iter().filter(|s| s.order == stats.order).map(|s| s.family_tag.as_str()).collect();
            out.push_str(&format!("{:>5}  {}\n", stats.order, tags.join(", ")));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub max_order: usize,
    pub include_order_27: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Time allowed per graph classification.
    pub graph_budget: Option<Duration>,
    /// Stop starting new orders after this much time.
    pub total_budget: Option<Duration>,
    /// Directory for the per-order JSON-lines files.
    pub out_dir: Option<PathBuf>,
    pub cycle_cap: usize,
    /// Cycles inspected when computing κ of a nonmember.
    pub kappa_cap: usize,
}

impl CensusOptions {
    pub fn new(max_order: usize) -> Self {
        CensusOptions {
            max_order,
            include_order_27: false,
            jobs: None,
            graph_budget: None,
            total_budget: None,
            out_dir: None,
            cycle_cap: crate::hamilton::DEFAULT_CYCLE_CAP,
            kappa_cap: 5000,
        }
    }
}

struct Candidate {
    group: GroupSpec,
    realized_by: BTreeSet<GroupSpec>,
    gens: GeneratingSet,
    graph: Graph,
    cert: Vec<u8>,
}

fn verdict_of(v: Verdict) -> Option<CensusVerdict> {
    match v {
        Verdict::InH => Some(CensusVerdict::InH),
        Verdict::NotInH => Some(CensusVerdict::NotInH),
        Verdict::Unknown => None,
    }
}

/// Every translation `x -> x + t` is an automorphism.
pub fn translations_are_automorphisms(group: &AbelianGroup, g: &Graph) -> bool {
    let elems: Vec<GroupElem> = group.elements().collect();
    elems.iter().all(|t| {
        let img: Vec<usize> = elems.iter().map(|x| group.index(&group.add(x, t))).collect();
        g.is_automorphism(&img)
    })
}

fn classify(c: &Candidate, opts: &CensusOptions) -> CensusRecord {
    let group = c.group.group();
    let limits = SearchLimits {
        cycle_cap: opts.cycle_cap,
        deadline: opts.graph_budget.map(|b| Instant::now() + b),
        ..SearchLimits::default()
    };
    let hint = CayleyHint { group: group.clone(), gens: c.gens.clone() };
    let predicted = verdict_of(classify_by_theorems(&c.graph, Some(&hint)).verdict);
    let mut rec = CensusRecord {
        order: c.graph.n(),
        degree: c.gens.len(),
        group: c.group.clone(),
        realized_by: c.realized_by.iter().cloned().collect(),
        genset: c.gens.elems().iter().map(|x| group.format_elem(x)).collect(),
        cert: hex::encode(&c.cert),
        graph6: graph6::encode_string(&c.graph),
        verdict: CensusVerdict::Inconclusive,
        class_count: None,
        kappa: None,
        total_cycles: None,
        aut_order: None,
        family_tag: family_tag(&c.graph).unwrap_or_else(|| "other".to_string()),
        predicted,
        note: None,
    };
    match is_ham_transitive(&c.graph, &limits) {
        Ok(report) => {
            rec.class_count = Some(match report.class_count {
                ClassCount::Exact(k) => serde_json::json!({ "exact": k }),
                ClassCount::LowerBound(k) => serde_json::json!({ "lower_bound": k }),
            });
            rec.total_cycles = report.total_cycles.as_ref().map(|t| t.to_str_radix(10));
            rec.aut_order = Some(report.aut_order.to_str_radix(10));
            if report.is_transitive() {
                rec.verdict = CensusVerdict::InH;
                // every cycle lies in one orbit, so any cycle gives κ(G)
                let k = kappa_of_cycle(&c.graph, &report.representatives[0]).expect("representative is a cycle");
                rec.kappa = Some(KappaValue { value: k, exact: true });
            } else {
                rec.verdict = CensusVerdict::NotInH;
                if let Ok(k) = kappa_of_graph(&c.graph, opts.kappa_cap) {
                    rec.kappa = Some(KappaValue { value: k.value, exact: k.exact });
                }
            }
        }
        Err(Error::Inconclusive(why)) => rec.note = Some(why),
        Err(e) => rec.note = Some(e.to_string()),
    }
    rec
}

fn order_file(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("order-{n:02}.jsonl"))
}

/// Records already on disk; a torn last line is ignored.
fn load_records(path: &Path) -> BTreeMap<String, CensusRecord> {
    let Ok(text) = fs::read_to_string(path) else {
        return BTreeMap::new();
    };
    text.lines()
        .filter_map(|l| serde_json::from_str::<CensusRecord>(l).ok())
        .filter(|r| r.verdict != CensusVerdict::Inconclusive)
        .map(|r| (r.cert.clone(), r))
        .collect()
}

fn write_records(path: &Path, records: &[CensusRecord]) -> Result<()> {
    let mut text = String::new();
    for r in records {
        text.push_str(&serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?);
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| Error::Io(e.to_string()))
}

fn census_order(n: usize, opts: &CensusOptions, stats: &mut OrderStats) -> Result<(Vec<CensusRecord>, usize)> {
    let groups = enumerate_abelian_groups(n);
    stats.groups = groups.len();
    let tasks: Vec<(GroupSpec, GeneratingSet)> = groups
        .iter()
        .flat_map(|spec| {
            let group = spec.group();
            enumerate_generating_sets(&group).map(|s| (spec.clone(), s)).collect::<Vec<_>>()
        })
        .collect();
    stats.generating_sets = tasks.len();

    let built: Vec<Candidate> = tasks
        .into_par_iter()
        .map(|(spec, gens)| {
            let graph = cayley_graph(&spec.group(), &gens)?;
            let cert = canon::graph_canonical_form(&graph).cert;
            Ok(Candidate { realized_by: BTreeSet::from([spec.clone()]), group: spec, gens, graph, cert })
        })
        .collect::<Result<_>>()?;
    // first generating set in enumeration order represents its graph
    let mut unique: BTreeMap<Vec<u8>, Candidate> = BTreeMap::new();
    for c in built {
        match unique.entry(c.cert.clone()) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().realized_by.insert(c.group);
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }
    stats.distinct_graphs = unique.len();

    let path = opts.out_dir.as_ref().map(|d| order_file(d, n));
    let done = path.as_deref().map(load_records).unwrap_or_default();
    let resumed = unique.keys().filter(|c| done.contains_key(&hex::encode(c))).count();
    let sink = match &path {
        Some(p) => {
            // rewrite with the usable records before appending new ones
            write_records(p, &done.values().cloned().collect::<Vec<_>>())?;
            Some(Mutex::new(
                fs::OpenOptions::new().append(true).open(p).map_err(|e| Error::Io(e.to_string()))?,
            ))
        }
        None => None,
    };

    let todo: Vec<&Candidate> = unique.values().filter(|c| !done.contains_key(&hex::encode(&c.cert))).collect();
    let fresh: Vec<CensusRecord> = todo
        .into_par_iter()
        .map(|c| {
            let rec = classify(c, opts);
            if let Some(sink) = &sink {
                let line = serde_json::to_string(&rec).expect("record serializes");
                let mut f = sink.lock().expect("sink lock");
                let _ = writeln!(f, "{line}");
            }
            rec
        })
        .collect();

    let mut records: Vec<CensusRecord> =
        unique.keys().filter_map(|c| done.get(&hex::encode(c)).cloned()).chain(fresh).collect();
    records.sort_by(|a, b| a.cert.cmp(&b.cert));
    if let Some(p) = &path {
        write_records(p, &records)?;
    }
    stats.members = records.iter().filter(|r| r.verdict == CensusVerdict::InH).count();
    stats.inconclusive = records.iter().filter(|r| r.verdict == CensusVerdict::Inconclusive).count();
    Ok((records, resumed))
}

fn run_inner(opts: &CensusOptions) -> Result<CensusReport> {
    let start = Instant::now();
    let mut orders: Vec<usize> = (3..=opts.max_order).collect();
    if opts.include_order_27 && opts.max_order < 27 {
        orders.push(27);
    }
    if let Some(dir) = &opts.out_dir {
        fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
    }
    let mut report = CensusReport {
        max_order: opts.max_order,
        include_order_27: opts.include_order_27,
        orders: Vec::new(),
        records: Vec::new(),
        summary: Vec::new(),
        partial: false,
        timing: Vec::new(),
    };
    for n in orders {
        if opts.total_budget.is_some_and(|b| start.elapsed() >= b) {
            report.partial = true;
            break;
        }
        let t = Instant::now();
        let mut stats = OrderStats { order: n, groups: 0, generating_sets: 0, distinct_graphs: 0, members: 0, inconclusive: 0 };
        let (records, resumed) = census_order(n, opts, &mut stats)?;
        report.summary.extend(
            records
                .iter()
                .filter(|r| r.verdict == CensusVerdict::InH)
                .map(|r| SummaryEntry { order: n, family_tag: r.family_tag.clone(), cert: r.cert.clone() }),
        );
        report.records.extend(records);
        report.orders.push(stats);
        report.timing.push(OrderTiming { order: n, seconds: t.elapsed().as_secs_f64(), resumed });
    }
    Ok(report)
}

/// Runs the census over orders `3..=max_order`, plus 27 when opted in.
pub fn run_census(opts: &CensusOptions) -> Result<CensusReport> {
    if opts.max_order < 3 {
        return Err(Error::TooSmall { what: "census order", got: opts.max_order, min: 3 });
    }
    if opts.max_order > 27 {
        return Err(Error::CapExceeded { requested: opts.max_order, cap: 27 });
    }
    match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(|| run_inner(opts)),
        None => run_inner(opts),
    }
}
