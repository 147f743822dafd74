//! Mechanical auditors for every axiom family: the unconditional measure
//! axioms, the Popper-algebra and conditioning axioms, coherence, the
//! `⊕`/`⊗` axioms with their bottom/top identities, `⊗`-monotonicity, the
//! network-compatibility conditions, richness, and the partition
//! expansion identity.
//!
//! Space-level audits are exhaustive over all events when the world set is
//! small (at most [`AuditOptions::exhaustive_worlds`]) and fall back to
//! seeded random sampling above that; the axioms are universally
//! quantified, so small exhaustive plus larger randomized coverage is the
//! test contract. Every check is deterministic given its options.

use std::collections::BTreeSet;
use std::fmt;

use crate::cps::Cps;
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::exec::{find_first, map_ordered, Exec};
use crate::gen::SplitMix;
use crate::measure::UnconditionalPl;
use crate::value::Value;
use crate::worlds::Event;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomId {
    Pl1,
    Pl2,
    Pl3,
    Acc1,
    Acc2,
    Acc3,
    Acc4,
    CPl1,
    CPl2,
    CPl3,
    CPl4,
    CPl5,
    Standard,
    Alg1,
    Alg2,
    Alg3,
    Alg4,
    AddIdentity,
    MulIdentity,
    Monotone,
    Bn1,
    Bn2,
    Bn3,
    Bn4,
    Bn5,
    Bn6,
    Bn7,
    Bn8,
    Rich,
    PartitionExpansion,
    Cirv1,
    Cirv2,
    Cirv3,
    Cirv4,
    ProbIndepEquivalence,
    ComplementClosure,
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxiomId::Pl1 => "Pl1",
            AxiomId::Pl2 => "Pl2",
            AxiomId::Pl3 => "Pl3",
            AxiomId::Acc1 => "Acc1",
            AxiomId::Acc2 => "Acc2",
            AxiomId::Acc3 => "Acc3",
            AxiomId::Acc4 => "Acc4",
            AxiomId::CPl1 => "CPl1",
            AxiomId::CPl2 => "CPl2",
            AxiomId::CPl3 => "CPl3",
            AxiomId::CPl4 => "CPl4",
            AxiomId::CPl5 => "CPl5",
            AxiomId::Standard => "standard",
            AxiomId::Alg1 => "Alg1",
            AxiomId::Alg2 => "Alg2",
            AxiomId::Alg3 => "Alg3",
            AxiomId::Alg4 => "Alg4",
            AxiomId::AddIdentity => "add-identity",
            AxiomId::MulIdentity => "mul-identity",
            AxiomId::Monotone => "monotone",
            AxiomId::Bn1 => "BN1",
            AxiomId::Bn2 => "BN2",
            AxiomId::Bn3 => "BN3",
            AxiomId::Bn4 => "BN4",
            AxiomId::Bn5 => "BN5",
            AxiomId::Bn6 => "BN6",
            AxiomId::Bn7 => "BN7",
            AxiomId::Bn8 => "BN8",
            AxiomId::Rich => "rich",
            AxiomId::PartitionExpansion => "partition-expansion",
            AxiomId::Cirv1 => "CIRV1",
            AxiomId::Cirv2 => "CIRV2",
            AxiomId::Cirv3 => "CIRV3",
            AxiomId::Cirv4 => "CIRV4",
            AxiomId::ProbIndepEquivalence => "prob-indep-equivalence",
            AxiomId::ComplementClosure => "complement-closure",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessItem {
    Event(Event),
    Value(Value),
    Text(String),
}

impl fmt::Display for WitnessItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessItem::Event(e) => write!(f, "{e}"),
            WitnessItem::Value(v) => write!(f, "{v}"),
            WitnessItem::Text(s) => write!(f, "{s}"),
        }
    }
}

/// A violating instance, serialized as named bindings so it can be
/// re-checked without the original inputs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    pub items: Vec<(String, WitnessItem)>,
}

impl Witness {
    pub fn new() -> Self {
        Witness::default()
    }

    pub fn event(mut self, name: &str, e: Event) -> Self {
        self.items.push((name.to_string(), WitnessItem::Event(e)));
        self
    }

    pub fn value(mut self, name: &str, v: Value) -> Self {
        self.items.push((name.to_string(), WitnessItem::Value(v)));
        self
    }

    pub fn text(mut self, name: &str, s: impl Into<String>) -> Self {
        self.items.push((name.to_string(), WitnessItem::Text(s.into())));
        self
    }

    pub fn get_event(&self, name: &str) -> Option<&Event> {
        self.items.iter().find_map(|(n, i)| match i {
            WitnessItem::Event(e) if n == name => Some(e),
            _ => None,
        })
    }

    pub fn get_value(&self, name: &str) -> Option<&Value> {
        self.items.iter().find_map(|(n, i)| match i {
            WitnessItem::Value(v) if n == name => Some(v),
            _ => None,
        })
    }

    pub fn render(&self) -> String {
        self.items
            .iter()
            .map(|(n, i)| format!("{n}={i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Outcome of auditing one axiom. A witness is attached exactly when the
/// axiom fails (the richness search is the one exception: its failure is
/// inconclusive and carries only a note).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub holds: bool,
    pub witness: Option<Witness>,
    /// Instances enumerated or sampled.
    pub cases: u64,
    /// Instances on which the axiom's guard or antecedent applied.
    pub hits: u64,
    pub note: Option<String>,
}

impl AxiomReport {
    fn pass(axiom: AxiomId, cases: u64, hits: u64) -> Self {
        AxiomReport { axiom, holds: true, witness: None, cases, hits, note: None }
    }

    fn fail(axiom: AxiomId, witness: Witness, cases: u64, hits: u64) -> Self {
        AxiomReport { axiom, holds: false, witness: Some(witness), cases, hits, note: None }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone)]
pub struct AuditOptions {
    /// Seed for the sampled paths.
    pub seed: u64,
    /// Tuples drawn per axiom in sampled mode.
    pub samples: usize,
    /// Largest world count audited exhaustively (clamped to 8).
    pub exhaustive_worlds: usize,
    pub exec: Exec,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions { seed: 1, samples: 1500, exhaustive_worlds: 5, exec: Exec::Auto }
    }
}

impl AuditOptions {
    pub fn seeded(seed: u64) -> Self {
        AuditOptions { seed, ..Default::default() }
    }

    fn exhaustive_for(&self, m: usize) -> bool {
        m <= self.exhaustive_worlds.min(8)
    }
}

/// Iterator over all submasks of `mask`, ascending.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
        Some(cur)
    })
}

// ---------------------------------------------------------------------------
// Tabulated views of a space

/// All conditional values of a small space, laid out densely by event
/// mask. Building it also proves the table is complete on `F' × F`.
pub(crate) struct DenseTable {
    pub m: usize,
    pub ne: usize,
    pub fprime: Vec<bool>,
    vals: Vec<Option<Value>>,
    pub range: Vec<Value>,
}

impl DenseTable {
    pub fn pl(&self, u: u64, v: u64) -> Option<&Value> {
        self.vals[v as usize * self.ne + u as usize].as_ref()
    }
}

pub(crate) fn dense_table(cps: &Cps, exec: Exec) -> Result<DenseTable> {
    let m = cps.worlds().len();
    assert!(m <= 8, "dense tables are for small spaces");
    let ne = 1usize << m;
    let rows = map_ordered(exec, ne, |v| {
        let ve = Event::from_mask(m, v as u64);
        let fp = cps.in_fprime(&ve);
        let row: Vec<Option<Value>> = (0..ne)
            .map(|u| {
                if fp {
                    cps.pl(&Event::from_mask(m, u as u64), &ve)
                } else {
                    None
                }
            })
            .collect();
        (fp, row)
    });
    let mut fprime = Vec::with_capacity(ne);
    let mut vals = Vec::with_capacity(ne * ne);
    for (fp, row) in rows {
        if fp {
            if let Some(u) = row.iter().position(|x| x.is_none()) {
                return Err(Error::MalformedCps(format!(
                    "Pl undefined at (U={u:#b}) under an admissible conditioning event"
                )));
            }
        }
        fprime.push(fp);
        vals.extend(row);
    }
    let mut range = BTreeSet::new();
    for v in vals.iter().flatten() {
        range.insert(v.clone());
    }
    Ok(DenseTable { m, ne, fprime, vals, range: range.into_iter().collect() })
}

/// Sampled view: values for a fixed set of event-mask pairs.
pub(crate) struct SparseTable {
    fprime: std::collections::HashMap<u64, bool>,
    vals: std::collections::HashMap<(u64, u64), Option<Value>>,
}

impl SparseTable {
    pub fn fprime(&self, v: u64) -> bool {
        self.fprime[&v]
    }

    pub fn pl(&self, u: u64, v: u64) -> Option<&Value> {
        self.vals[&(u, v)].as_ref()
    }
}

pub(crate) fn sparse_table(
    cps: &Cps,
    pairs: &BTreeSet<(u64, u64)>,
    exec: Exec,
) -> Result<SparseTable> {
    let m = cps.worlds().len();
    let vs: BTreeSet<u64> = pairs.iter().map(|&(_, v)| v).collect();
    let vs: Vec<u64> = vs.into_iter().collect();
    let fprime: std::collections::HashMap<u64, bool> = vs
        .iter()
        .map(|&v| (v, cps.in_fprime(&Event::from_mask(m, v))))
        .collect();
    let plist: Vec<(u64, u64)> = pairs.iter().copied().collect();
    let computed = map_ordered(exec, plist.len(), |i| {
        let (u, v) = plist[i];
        if fprime[&v] {
            cps.pl(&Event::from_mask(m, u), &Event::from_mask(m, v))
        } else {
            None
        }
    });
    let mut vals = std::collections::HashMap::with_capacity(plist.len());
    for ((u, v), val) in plist.into_iter().zip(computed) {
        if fprime[&v] && val.is_none() {
            return Err(Error::MalformedCps(format!(
                "Pl undefined at (U={u:#b}, V={v:#b}) with V admissible"
            )));
        }
        vals.insert((u, v), val);
    }
    Ok(SparseTable { fprime, vals })
}

fn ev(m: usize, mask: u64) -> Event {
    Event::from_mask(m, mask)
}

// ---------------------------------------------------------------------------
// Unconditional measure axioms

pub fn check_unconditional_axioms(pl: &UnconditionalPl, opts: &AuditOptions) -> Vec<AxiomReport> {
    let m = pl.worlds().len();
    let d = pl.domain();
    let empty = pl.worlds().empty_event();
    let full = pl.worlds().full_event();

    let pl1 = if *pl.value(&empty) == d.bot() {
        AxiomReport::pass(AxiomId::Pl1, 1, 1)
    } else {
        AxiomReport::fail(
            AxiomId::Pl1,
            Witness::new().event("U", empty.clone()).value("Pl(U)", pl.value(&empty).clone()),
            1,
            1,
        )
    };
    let pl2 = if *pl.value(&full) == d.top() {
        AxiomReport::pass(AxiomId::Pl2, 1, 1)
    } else {
        AxiomReport::fail(
            AxiomId::Pl2,
            Witness::new().event("U", full.clone()).value("Pl(U)", pl.value(&full).clone()),
            1,
            1,
        )
    };

    // Pl3: monotone under inclusion. Exhaustive over subset pairs when
    // feasible, sampled above that.
    let pl3 = if 3f64.powi(m as i32) <= 2_000_000.0 {
        let mut cases = 0u64;
        let mut witness = None;
        'outer: for sup in 0..1u64 << m {
            for sub in submasks(sup) {
                cases += 1;
                let (a, b) = (pl.value(&ev(m, sub)), pl.value(&ev(m, sup)));
                if !d.leq(a, b) {
                    witness = Some(
                        Witness::new()
                            .event("U", ev(m, sub))
                            .event("U'", ev(m, sup))
                            .value("Pl(U)", a.clone())
                            .value("Pl(U')", b.clone()),
                    );
                    break 'outer;
                }
            }
        }
        match witness {
            None => AxiomReport::pass(AxiomId::Pl3, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::Pl3, w, cases, cases),
        }
    } else {
        let mut rng = SplitMix::new(opts.seed ^ 0x506c33);
        let mut witness = None;
        let cases = opts.samples as u64;
        for _ in 0..opts.samples {
            let sup = rng.below(1u64 << m);
            let sub = rng.below(1u64 << m) & sup;
            let (a, b) = (pl.value(&ev(m, sub)), pl.value(&ev(m, sup)));
            if !d.leq(a, b) {
                witness = Some(
                    Witness::new()
                        .event("U", ev(m, sub))
                        .event("U'", ev(m, sup))
                        .value("Pl(U)", a.clone())
                        .value("Pl(U')", b.clone()),
                );
                break;
            }
        }
        let rep = match witness {
            None => AxiomReport::pass(AxiomId::Pl3, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::Pl3, w, cases, cases),
        };
        rep.with_note("sampled")
    };

    vec![pl1, pl2, pl3]
}

// ---------------------------------------------------------------------------
// Conditioning-space axioms

pub fn check_cps_axioms(cps: &Cps, opts: &AuditOptions) -> Result<Vec<AxiomReport>> {
    let m = cps.worlds().len();
    if opts.exhaustive_for(m) {
        check_cps_axioms_dense(cps, opts)
    } else {
        check_cps_axioms_sampled(cps, opts)
    }
}

fn check_cps_axioms_dense(cps: &Cps, opts: &AuditOptions) -> Result<Vec<AxiomReport>> {
    let t = dense_table(cps, opts.exec)?;
    let d = cps.domain().clone();
    let (m, ne) = (t.m, t.ne as u64);
    let full = ne - 1;
    let fps: Vec<u64> = (0..ne).filter(|&v| t.fprime[v as usize]).collect();
    let mut out = Vec::new();

    // Acc1: the event algebra is the full power set by construction.
    out.push(
        AxiomReport::pass(AxiomId::Acc1, 1, 1)
            .with_note("event algebra is the full power set by construction"),
    );
    // Acc2: nonempty conditioning family.
    out.push(if fps.is_empty() {
        AxiomReport::fail(
            AxiomId::Acc2,
            Witness::new().text("reason", "conditioning family is empty"),
            1,
            1,
        )
    } else {
        AxiomReport::pass(AxiomId::Acc2, 1, 1)
    });

    // Acc3: closed under supersets.
    {
        let mut cases = 0u64;
        let mut witness = None;
        'acc3: for &v in &fps {
            let compl = full & !v;
            for extra in submasks(compl) {
                cases += 1;
                let sup = v | extra;
                if !t.fprime[sup as usize] {
                    witness = Some(
                        Witness::new().event("V", ev(m, v)).event("V'", ev(m, sup)),
                    );
                    break 'acc3;
                }
            }
        }
        out.push(match witness {
            None => AxiomReport::pass(AxiomId::Acc3, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::Acc3, w, cases, cases),
        });
    }

    // CPl1/CPl2 per admissible conditioning event.
    for (axiom, target_u, expect) in [
        (AxiomId::CPl1, 0u64, d.bot()),
        (AxiomId::CPl2, full, d.top()),
    ] {
        let hit = fps.iter().find_map(|&v| {
            let got = t.pl(target_u, v).unwrap();
            (*got != expect).then(|| {
                Witness::new()
                    .event("V", ev(m, v))
                    .value("Pl", got.clone())
                    .value("expected", expect.clone())
            })
        });
        out.push(match hit {
            None => AxiomReport::pass(axiom, fps.len() as u64, fps.len() as u64),
            Some(w) => AxiomReport::fail(axiom, w, fps.len() as u64, fps.len() as u64),
        });
    }

    // CPl3: monotone in the first argument.
    {
        let mut cases = 0u64;
        let mut witness = None;
        'cpl3: for &v in &fps {
            for sup in 0..ne {
                for sub in submasks(sup) {
                    cases += 1;
                    let (a, b) = (t.pl(sub, v).unwrap(), t.pl(sup, v).unwrap());
                    if !d.leq(a, b) {
                        witness = Some(
                            Witness::new()
                                .event("U", ev(m, sub))
                                .event("U'", ev(m, sup))
                                .event("V", ev(m, v))
                                .value("Pl(U|V)", a.clone())
                                .value("Pl(U'|V)", b.clone()),
                        );
                        break 'cpl3;
                    }
                }
            }
        }
        out.push(match witness {
            None => AxiomReport::pass(AxiomId::CPl3, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::CPl3, w, cases, cases),
        });
    }

    // CPl4: conditioning relativizes to the conditioning event.
    {
        let cases = fps.len() as u64 * ne;
        let w = find_first(opts.exec, fps.len(), |vi| {
            let v = fps[vi];
            (0..ne).find_map(|u| {
                let (a, b) = (t.pl(u, v).unwrap(), t.pl(u & v, v).unwrap());
                (a != b).then(|| {
                    Witness::new()
                        .event("U", ev(m, u))
                        .event("V", ev(m, v))
                        .value("Pl(U|V)", a.clone())
                        .value("Pl(U∩V|V)", b.clone())
                })
            })
        });
        out.push(match w {
            None => AxiomReport::pass(AxiomId::CPl4, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::CPl4, w, cases, cases),
        });
    }

    // Acc4: nonbottom conditionals make the intersection admissible.
    {
        let bot = d.bot();
        let cases = fps.len() as u64 * ne;
        let w = fps.iter().find_map(|&v| {
            (0..ne).find_map(|u| {
                let val = t.pl(u, v).unwrap();
                (*val != bot && !t.fprime[(u & v) as usize]).then(|| {
                    Witness::new()
                        .event("U", ev(m, u))
                        .event("V", ev(m, v))
                        .value("Pl(U|V)", val.clone())
                })
            })
        });
        out.push(match w {
            None => AxiomReport::pass(AxiomId::Acc4, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::Acc4, w, cases, cases),
        });
    }

    // Standardness: F' is exactly the family of events with nonbottom
    // unconditional plausibility.
    out.push(standard_report(&t, &d, m, ne, full));

    Ok(out)
}

fn standard_report(t: &DenseTable, d: &DomainSpec, m: usize, ne: u64, full: u64) -> AxiomReport {
    if !t.fprime[full as usize] {
        return AxiomReport::fail(
            AxiomId::Standard,
            Witness::new().text("reason", "the full event is not admissible"),
            1,
            1,
        );
    }
    let bot = d.bot();
    let w = (0..ne).find_map(|u| {
        let nonbottom = *t.pl(u, full).unwrap() != bot;
        (t.fprime[u as usize] != nonbottom).then(|| {
            Witness::new()
                .event("U", ev(m, u))
                .value("Pl(U)", t.pl(u, full).unwrap().clone())
                .text(
                    "reason",
                    if nonbottom {
                        "nonbottom event missing from the conditioning family"
                    } else {
                        "bottom event admitted for conditioning"
                    },
                )
        })
    });
    match w {
        None => AxiomReport::pass(AxiomId::Standard, ne, ne),
        Some(w) => AxiomReport::fail(AxiomId::Standard, w, ne, ne),
    }
}

fn check_cps_axioms_sampled(cps: &Cps, opts: &AuditOptions) -> Result<Vec<AxiomReport>> {
    let m = cps.worlds().len();
    if m > 16 {
        return Err(Error::CapExceeded("audits support at most 16 worlds".into()));
    }
    let d = cps.domain().clone();
    let ne = 1u64 << m;
    let full = ne - 1;
    let n = opts.samples;
    let mut rng = SplitMix::new(opts.seed ^ 0xC9535);

    // one tuple pool drives all the axioms of this audit
    let mut tuples = Vec::with_capacity(n);
    for _ in 0..n {
        let v = rng.below(ne);
        let sup = rng.below(ne);
        let sub = rng.below(ne) & sup;
        let extra = rng.below(ne) & !v;
        tuples.push((v, sup, sub, extra));
    }
    let mut pairs = BTreeSet::new();
    for &(v, sup, sub, extra) in &tuples {
        pairs.insert((0, v));
        pairs.insert((full, v));
        pairs.insert((sup, v));
        pairs.insert((sub, v));
        pairs.insert((sub & v, v));
        pairs.insert((sup & v, v));
        // registers the superset for the closure check
        pairs.insert((0, v | extra));
        pairs.insert((v, full));
        pairs.insert((sup, full));
        pairs.insert((sub, full));
    }
    let t = sparse_table(cps, &pairs, opts.exec)?;

    let mut out = Vec::new();
    out.push(
        AxiomReport::pass(AxiomId::Acc1, 1, 1)
            .with_note("event algebra is the full power set by construction"),
    );
    out.push(if t.fprime(full) || tuples.iter().any(|&(v, ..)| t.fprime(v)) {
        AxiomReport::pass(AxiomId::Acc2, 1, 1)
    } else {
        AxiomReport::fail(
            AxiomId::Acc2,
            Witness::new().text("reason", "no admissible event among the samples"),
            1,
            1,
        )
    });

    macro_rules! scan {
        ($axiom:expr, $guard:expr, $viol:expr) => {{
            let mut hits = 0u64;
            let mut witness = None;
            for &(v, sup, sub, extra) in &tuples {
                let _ = (sup, sub, extra);
                if !($guard)(v, sup, sub, extra) {
                    continue;
                }
                hits += 1;
                if let Some(w) = ($viol)(v, sup, sub, extra) {
                    witness = Some(w);
                    break;
                }
            }
            out.push(
                match witness {
                    None => AxiomReport::pass($axiom, tuples.len() as u64, hits),
                    Some(w) => AxiomReport::fail($axiom, w, tuples.len() as u64, hits),
                }
                .with_note("sampled"),
            );
        }};
    }

    scan!(
        AxiomId::Acc3,
        |v: u64, _, _, _| t.fprime(v),
        |v: u64, _, _, extra: u64| {
            (!t.fprime(v | extra))
                .then(|| Witness::new().event("V", ev(m, v)).event("V'", ev(m, v | extra)))
        }
    );
    scan!(
        AxiomId::CPl1,
        |v: u64, _, _, _| t.fprime(v),
        |v: u64, _, _, _| {
            let got = t.pl(0, v).unwrap();
            (*got != d.bot()).then(|| {
                Witness::new().event("V", ev(m, v)).value("Pl", got.clone())
            })
        }
    );
    scan!(
        AxiomId::CPl2,
        |v: u64, _, _, _| t.fprime(v),
        |v: u64, _, _, _| {
            let got = t.pl(full, v).unwrap();
            (*got != d.top()).then(|| {
                Witness::new().event("V", ev(m, v)).value("Pl", got.clone())
            })
        }
    );
    scan!(
        AxiomId::CPl3,
        |v: u64, _, _, _| t.fprime(v),
        |v: u64, sup: u64, sub: u64, _| {
            let (a, b) = (t.pl(sub, v).unwrap(), t.pl(sup, v).unwrap());
            (!d.leq(a, b)).then(|| {
                Witness::new()
                    .event("U", ev(m, sub))
                    .event("U'", ev(m, sup))
                    .event("V", ev(m, v))
                    .value("Pl(U|V)", a.clone())
                    .value("Pl(U'|V)", b.clone())
            })
        }
    );
    scan!(
        AxiomId::CPl4,
        |v: u64, _, _, _| t.fprime(v),
        |v: u64, sup: u64, _, _| {
            let (a, b) = (t.pl(sup, v).unwrap(), t.pl(sup & v, v).unwrap());
            (a != b).then(|| {
                Witness::new()
                    .event("U", ev(m, sup))
                    .event("V", ev(m, v))
                    .value("Pl(U|V)", a.clone())
                    .value("Pl(U∩V|V)", b.clone())
            })
        }
    );
    scan!(
        AxiomId::Acc4,
        |v: u64, _, _, _| t.fprime(v),
        |v: u64, sup: u64, _, _| {
            let val = t.pl(sup, v).unwrap();
            (*val != d.bot() && !cps.in_fprime(&ev(m, sup & v))).then(|| {
                Witness::new()
                    .event("U", ev(m, sup))
                    .event("V", ev(m, v))
                    .value("Pl(U|V)", val.clone())
            })
        }
    );
    // standardness on sampled events
    {
        let mut witness = None;
        if !t.fprime(full) {
            witness = Some(Witness::new().text("reason", "the full event is not admissible"));
        } else {
            for &(v, ..) in &tuples {
                let nonbottom = *t.pl(v, full).unwrap() != d.bot();
                if t.fprime(v) != nonbottom {
                    witness = Some(
                        Witness::new()
                            .event("U", ev(m, v))
                            .value("Pl(U)", t.pl(v, full).unwrap().clone()),
                    );
                    break;
                }
            }
        }
        out.push(
            match witness {
                None => {
                    AxiomReport::pass(AxiomId::Standard, tuples.len() as u64, tuples.len() as u64)
                }
                Some(w) => AxiomReport::fail(
                    AxiomId::Standard,
                    w,
                    tuples.len() as u64,
                    tuples.len() as u64,
                ),
            }
            .with_note("sampled"),
        );
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Coherence

pub fn check_cpl5(cps: &Cps, opts: &AuditOptions) -> Result<AxiomReport> {
    let m = cps.worlds().len();
    let ne = 1u64 << m;
    if opts.exhaustive_for(m) {
        let t = dense_table(cps, opts.exec)?;
        let d = cps.domain().clone();
        let cases = ne * ne * ne * ne;
        let w = find_first(opts.exec, (ne * ne) as usize, |outer| {
            let v = (outer as u64) / ne;
            let vp = (outer as u64) % ne;
            let joint = v & vp;
            if !t.fprime[joint as usize] {
                return None;
            }
            for u in 0..ne {
                for up in 0..ne {
                    if let Some(w) = cpl5_violation(&t, &d, m, u, up, v, vp) {
                        return Some(w);
                    }
                }
            }
            None
        });
        Ok(match w {
            None => AxiomReport::pass(AxiomId::CPl5, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::CPl5, w, cases, cases),
        })
    } else {
        let mut rng = SplitMix::new(opts.seed ^ 0xCB15);
        let mut tuples = Vec::with_capacity(opts.samples);
        for _ in 0..opts.samples {
            tuples.push((rng.below(ne), rng.below(ne), rng.below(ne), rng.below(ne)));
        }
        let mut pairs = BTreeSet::new();
        for &(u, up, v, vp) in &tuples {
            pairs.insert((u, v & vp));
            pairs.insert((up, v & vp));
            pairs.insert((u & v, vp));
            pairs.insert((up & v, vp));
        }
        let t = sparse_table(cps, &pairs, opts.exec)?;
        let d = cps.domain().clone();
        let mut hits = 0u64;
        let mut witness = None;
        for &(u, up, v, vp) in &tuples {
            if !t.fprime(v & vp) {
                continue;
            }
            hits += 1;
            if let Some(w) = cpl5_violation_sparse(&t, &d, m, u, up, v, vp) {
                witness = Some(w);
                break;
            }
        }
        Ok(match witness {
            None => AxiomReport::pass(AxiomId::CPl5, tuples.len() as u64, hits),
            Some(w) => AxiomReport::fail(AxiomId::CPl5, w, tuples.len() as u64, hits),
        }
        .with_note("sampled"))
    }
}

#[allow(clippy::too_many_arguments)]
fn cpl5_witness(
    m: usize,
    u: u64,
    up: u64,
    v: u64,
    vp: u64,
    lhs: bool,
    a1: &Value,
    a2: &Value,
) -> Witness {
    Witness::new()
        .event("U", ev(m, u))
        .event("U'", ev(m, up))
        .event("V", ev(m, v))
        .event("V'", ev(m, vp))
        .value("Pl(U|V∩V')", a1.clone())
        .value("Pl(U'|V∩V')", a2.clone())
        .text(
            "reason",
            if lhs {
                "ordered given V∩V' but not after intersecting with V"
            } else {
                "ordered after intersecting with V but not given V∩V'"
            },
        )
}

fn cpl5_violation(
    t: &DenseTable,
    d: &DomainSpec,
    m: usize,
    u: u64,
    up: u64,
    v: u64,
    vp: u64,
) -> Option<Witness> {
    let a1 = t.pl(u, v & vp).unwrap();
    let a2 = t.pl(up, v & vp).unwrap();
    // V' is admissible by superset closure whenever V∩V' is
    let b1 = t.pl(u & v, vp)?;
    let b2 = t.pl(up & v, vp)?;
    let lhs = d.leq(a1, a2);
    let rhs = d.leq(b1, b2);
    (lhs != rhs).then(|| cpl5_witness(m, u, up, v, vp, lhs, a1, a2))
}

fn cpl5_violation_sparse(
    t: &SparseTable,
    d: &DomainSpec,
    m: usize,
    u: u64,
    up: u64,
    v: u64,
    vp: u64,
) -> Option<Witness> {
    let a1 = t.pl(u, v & vp).unwrap();
    let a2 = t.pl(up, v & vp).unwrap();
    let b1 = t.pl(u & v, vp)?;
    let b2 = t.pl(up & v, vp)?;
    let lhs = d.leq(a1, a2);
    let rhs = d.leq(b1, b2);
    (lhs != rhs).then(|| cpl5_witness(m, u, up, v, vp, lhs, a1, a2))
}

// ---------------------------------------------------------------------------
// Algebraic axioms

/// Audits the `⊕`/`⊗` axioms. For domains that declare an algebra this
/// verifies the join and product laws, restricted distributivity and
/// cancellation, and the bottom/top identities over the realized range.
/// For order-only domains it searches instead for functional
/// obstructions: equal component plausibilities whose combination has
/// unequal plausibilities, which proves no `⊕` (or `⊗`) can exist.
pub fn check_algebraic(cps: &Cps, opts: &AuditOptions) -> Result<Vec<AxiomReport>> {
    let m = cps.worlds().len();
    if !opts.exhaustive_for(m) {
        return check_algebraic_sampled(cps, opts);
    }
    let t = dense_table(cps, opts.exec)?;
    let d = cps.domain().clone();
    if !d.has_algebra() {
        return Ok(vec![
            alg1_obstruction_dense(&t, m),
            alg2_obstruction_dense(&t, m),
        ]);
    }
    let ne = t.ne as u64;
    let fps: Vec<u64> = (0..ne).filter(|&v| t.fprime[v as usize]).collect();
    let mut out = Vec::new();

    // Acc4 is a prerequisite for the algebraic reading.
    {
        let bot = d.bot();
        let cases = fps.len() as u64 * ne;
        let w = fps.iter().find_map(|&v| {
            (0..ne).find_map(|u| {
                let val = t.pl(u, v).unwrap();
                (*val != bot && !t.fprime[(u & v) as usize]).then(|| {
                    Witness::new().event("U", ev(m, u)).event("V", ev(m, v))
                })
            })
        });
        out.push(match w {
            None => AxiomReport::pass(AxiomId::Acc4, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::Acc4, w, cases, cases),
        });
    }

    // Alg1: joins of disjoint events.
    {
        let mut cases = 0u64;
        let viol = find_first(opts.exec, fps.len(), |vi| {
            let v = fps[vi];
            let mut local = 0u64;
            let r = (0..ne).find_map(|u1| {
                submasks((ne - 1) & !u1).find_map(|u2| {
                    local += 1;
                    let a = t.pl(u1, v).unwrap();
                    let b = t.pl(u2, v).unwrap();
                    let joined = t.pl(u1 | u2, v).unwrap();
                    let base = || {
                        Witness::new()
                            .event("U", ev(m, u1))
                            .event("U'", ev(m, u2))
                            .event("V", ev(m, v))
                            .value("Pl(U|V)", a.clone())
                            .value("Pl(U'|V)", b.clone())
                            .value("Pl(U∪U'|V)", joined.clone())
                    };
                    if !d.in_dom_oplus(&[a.clone(), b.clone()]) {
                        return Some(base().text("reason", "⊕ undefined on a required pair"));
                    }
                    let sum = d.oplus(&[a.clone(), b.clone()]).ok()?;
                    (sum != *joined).then(|| base().value("⊕", sum))
                })
            });
            (r.is_some()).then(|| (r.unwrap(), local))
        });
        // count cases exactly: 3^m per admissible conditioning event
        cases += fps.len() as u64 * 3u64.pow(m as u32);
        out.push(match viol {
            None => AxiomReport::pass(AxiomId::Alg1, cases, cases),
            Some((w, _)) => AxiomReport::fail(AxiomId::Alg1, w, cases, cases),
        });
    }

    // Alg2: the chain rule through a conditioning event.
    {
        let cases = ne * ne * ne;
        let viol = find_first(opts.exec, (ne * ne) as usize, |outer| {
            let v = (outer as u64) / ne;
            let vp = (outer as u64) % ne;
            if !t.fprime[(v & vp) as usize] {
                return None;
            }
            (0..ne).find_map(|u| {
                let a = t.pl(u, v & vp).unwrap();
                let b = t.pl(v, vp)?;
                let target = t.pl(u & v, vp)?;
                let base = || {
                    Witness::new()
                        .event("U", ev(m, u))
                        .event("V", ev(m, v))
                        .event("V'", ev(m, vp))
                        .value("Pl(U|V∩V')", a.clone())
                        .value("Pl(V|V')", b.clone())
                        .value("Pl(U∩V|V')", target.clone())
                };
                if !d.in_dom_otimes(a, b) {
                    return Some(base().text("reason", "⊗ undefined on a required pair"));
                }
                let prod = d.otimes(a, b).ok()?;
                (prod != *target).then(|| base().value("⊗", prod))
            })
        });
        out.push(match viol {
            None => AxiomReport::pass(AxiomId::Alg2, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::Alg2, w, cases, cases),
        });
    }

    let range = capped_range(&t.range, 24);
    out.push(alg3_report(&d, &range, opts));
    out.push(alg4_report(&d, &range));
    out.push(add_identity_report(&d, &t.range));
    out.push(mul_identity_report(&d, &t.range));
    Ok(out)
}

fn capped_range(range: &[Value], cap: usize) -> Vec<Value> {
    if range.len() <= cap {
        return range.to_vec();
    }
    let step = range.len().div_ceil(cap);
    let mut out: Vec<Value> = range.iter().step_by(step).cloned().collect();
    for v in [range.first(), range.last()].into_iter().flatten() {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out
}

/// Distributivity on guarded tuples: `a ⊗ (b₁ ⊕ ⋯ ⊕ bₖ)` for k ≤ 3.
fn alg3_report(d: &DomainSpec, range: &[Value], opts: &AuditOptions) -> AxiomReport {
    let n = range.len();
    let mut cases = 0u64;
    let mut hits = 0u64;
    let mut witness = None;

    let mut consider = |a: &Value, bs: &[&Value]| -> Option<Witness> {
        cases += 1;
        let owned: Vec<Value> = bs.iter().map(|b| (*b).clone()).collect();
        if !d.in_dom_oplus(&owned) {
            return None;
        }
        if !bs.iter().all(|b| d.in_dom_otimes(a, b)) {
            return None;
        }
        let sum = d.oplus(&owned).ok()?;
        if !d.in_dom_otimes(a, &sum) {
            return None;
        }
        let prods: Vec<Value> = bs
            .iter()
            .map(|b| d.otimes(a, b).expect("⊗ total on carrier"))
            .collect();
        if !d.in_dom_oplus(&prods) {
            return None;
        }
        hits += 1;
        let lhs = d.otimes(a, &sum).expect("⊗ total on carrier");
        let rhs = d.oplus(&prods).expect("⊕ defined on guarded tuple");
        (lhs != rhs).then(|| {
            let mut w = Witness::new().value("a", a.clone());
            for (i, b) in bs.iter().enumerate() {
                w = w.value(&format!("b{}", i + 1), (*b).clone());
            }
            w.value("a⊗(⊕b)", lhs).value("⊕(a⊗b)", rhs)
        })
    };

    'outer: for a in range {
        for b1 in range {
            for b2 in range {
                if let Some(w) = consider(a, &[b1, b2]) {
                    witness = Some(w);
                    break 'outer;
                }
            }
        }
    }
    // triples: exhaustive when small, otherwise a seeded sample
    if witness.is_none() {
        if n.pow(4) <= 200_000 {
            'outer3: for a in range {
                for b1 in range {
                    for b2 in range {
                        for b3 in range {
                            if let Some(w) = consider(a, &[b1, b2, b3]) {
                                witness = Some(w);
                                break 'outer3;
                            }
                        }
                    }
                }
            }
        } else {
            let mut rng = SplitMix::new(opts.seed ^ 0xA163);
            for _ in 0..opts.samples {
                let a = &range[rng.below(n as u64) as usize];
                let b1 = &range[rng.below(n as u64) as usize];
                let b2 = &range[rng.below(n as u64) as usize];
                let b3 = &range[rng.below(n as u64) as usize];
                if let Some(w) = consider(a, &[b1, b2, b3]) {
                    witness = Some(w);
                    break;
                }
            }
        }
    }
    match witness {
        None => AxiomReport::pass(AxiomId::Alg3, cases, hits),
        Some(w) => AxiomReport::fail(AxiomId::Alg3, w, cases, hits),
    }
}

/// Cancellation on guarded pairs sharing a right factor.
fn alg4_report(d: &DomainSpec, range: &[Value]) -> AxiomReport {
    let bot = d.bot();
    let mut cases = 0u64;
    let mut hits = 0u64;
    let mut witness = None;
    'outer: for a in range {
        for b in range {
            for c in range {
                cases += 1;
                if *c == bot || !d.in_dom_otimes(a, c) || !d.in_dom_otimes(b, c) {
                    continue;
                }
                let ac = d.otimes(a, c).expect("⊗ total");
                let bc = d.otimes(b, c).expect("⊗ total");
                if !d.leq(&ac, &bc) {
                    continue;
                }
                hits += 1;
                if !d.leq(a, b) {
                    witness = Some(
                        Witness::new()
                            .value("a", a.clone())
                            .value("b", b.clone())
                            .value("c", c.clone())
                            .value("a⊗c", ac)
                            .value("b⊗c", bc),
                    );
                    break 'outer;
                }
            }
        }
    }
    match witness {
        None => AxiomReport::pass(AxiomId::Alg4, cases, hits),
        Some(w) => AxiomReport::fail(AxiomId::Alg4, w, cases, hits),
    }
}

/// Bottom is a join identity over the realized range.
fn add_identity_report(d: &DomainSpec, range: &[Value]) -> AxiomReport {
    let bot = d.bot();
    let mut witness = None;
    for v in range {
        let left = d.oplus(&[bot.clone(), v.clone()]);
        let right = d.oplus(&[v.clone(), bot.clone()]);
        let ok = matches!((&left, &right), (Ok(l), Ok(r)) if l == v && r == v);
        if !ok {
            witness = Some(Witness::new().value("d", v.clone()));
            break;
        }
    }
    match witness {
        None => AxiomReport::pass(AxiomId::AddIdentity, range.len() as u64, range.len() as u64),
        Some(w) => AxiomReport::fail(AxiomId::AddIdentity, w, range.len() as u64, range.len() as u64),
    }
}

/// Top is a product identity and bottom annihilates, over the realized
/// range.
fn mul_identity_report(d: &DomainSpec, range: &[Value]) -> AxiomReport {
    let bot = d.bot();
    let top = d.top();
    let mut witness = None;
    for v in range {
        let mut ok = d.otimes(v, &top).map(|x| x == *v).unwrap_or(false);
        if *v != bot {
            ok = ok
                && d.otimes(&top, v).map(|x| x == *v).unwrap_or(false)
                && d.otimes(&bot, v).map(|x| x == bot).unwrap_or(false);
        }
        if d.in_dom_otimes(v, &bot) {
            ok = ok && d.otimes(v, &bot).map(|x| x == bot).unwrap_or(false);
        }
        if !ok {
            witness = Some(Witness::new().value("d", v.clone()));
            break;
        }
    }
    match witness {
        None => AxiomReport::pass(AxiomId::MulIdentity, range.len() as u64, range.len() as u64),
        Some(w) => AxiomReport::fail(AxiomId::MulIdentity, w, range.len() as u64, range.len() as u64),
    }
}

/// For an order-only domain: search for two disjoint pairs with equal
/// component plausibilities under the same conditioning event whose unions
/// have unequal plausibilities. Such a pair proves no join operation can
/// exist. `holds = true` only means no obstruction was found.
fn alg1_obstruction_dense(t: &DenseTable, m: usize) -> AxiomReport {
    let ne = t.ne as u64;
    let mut cases = 0u64;
    let mut witness = None;
    'outer: for v in 0..ne {
        if !t.fprime[v as usize] {
            continue;
        }
        let mut seen: std::collections::BTreeMap<(Value, Value), (u64, u64, Value)> =
            std::collections::BTreeMap::new();
        for u1 in 0..ne {
            for u2 in submasks((ne - 1) & !u1) {
                cases += 1;
                let key = (t.pl(u1, v).unwrap().clone(), t.pl(u2, v).unwrap().clone());
                let joined = t.pl(u1 | u2, v).unwrap().clone();
                match seen.get(&key) {
                    None => {
                        seen.insert(key, (u1, u2, joined));
                    }
                    Some((p1, p2, prev)) if *prev != joined => {
                        witness = Some(
                            Witness::new()
                                .event("V", ev(m, v))
                                .event("U1", ev(m, *p1))
                                .event("U2", ev(m, *p2))
                                .event("U3", ev(m, u1))
                                .event("U4", ev(m, u2))
                                .value("Pl(U1|V)=Pl(U3|V)", key.0.clone())
                                .value("Pl(U2|V)=Pl(U4|V)", key.1.clone())
                                .value("Pl(U1∪U2|V)", prev.clone())
                                .value("Pl(U3∪U4|V)", joined),
                        );
                        break 'outer;
                    }
                    _ => {}
                }
            }
        }
    }
    match witness {
        None => AxiomReport::pass(AxiomId::Alg1, cases, cases)
            .with_note("functional obstruction search (no declared algebra)"),
        Some(w) => AxiomReport::fail(AxiomId::Alg1, w, cases, cases)
            .with_note("no ⊕ can reproduce these joins"),
    }
}

/// The analogous obstruction search for `⊗` through the chain rule.
fn alg2_obstruction_dense(t: &DenseTable, m: usize) -> AxiomReport {
    let ne = t.ne as u64;
    let mut cases = 0u64;
    let mut witness = None;
    let mut seen: std::collections::BTreeMap<(Value, Value), (u64, u64, u64, Value)> =
        std::collections::BTreeMap::new();
    'outer: for v in 0..ne {
        for vp in 0..ne {
            if !t.fprime[(v & vp) as usize] {
                continue;
            }
            for u in 0..ne {
                cases += 1;
                let Some(b) = t.pl(v, vp) else { continue };
                let Some(target) = t.pl(u & v, vp) else { continue };
                let key = (t.pl(u, v & vp).unwrap().clone(), b.clone());
                match seen.get(&key) {
                    None => {
                        seen.insert(key, (u, v, vp, target.clone()));
                    }
                    Some((pu, pv, pvp, prev)) if prev != target => {
                        witness = Some(
                            Witness::new()
                                .event("U1", ev(m, *pu))
                                .event("V1", ev(m, *pv))
                                .event("V1'", ev(m, *pvp))
                                .event("U2", ev(m, u))
                                .event("V2", ev(m, v))
                                .event("V2'", ev(m, vp))
                                .value("shared factors", key.0.clone())
                                .value("Pl(U1∩V1|V1')", prev.clone())
                                .value("Pl(U2∩V2|V2')", target.clone()),
                        );
                        break 'outer;
                    }
                    _ => {}
                }
            }
        }
    }
    match witness {
        None => AxiomReport::pass(AxiomId::Alg2, cases, cases)
            .with_note("functional obstruction search (no declared algebra)"),
        Some(w) => AxiomReport::fail(AxiomId::Alg2, w, cases, cases)
            .with_note("no ⊗ can reproduce these products"),
    }
}

fn check_algebraic_sampled(cps: &Cps, opts: &AuditOptions) -> Result<Vec<AxiomReport>> {
    let m = cps.worlds().len();
    if m > 16 {
        return Err(Error::CapExceeded("audits support at most 16 worlds".into()));
    }
    let d = cps.domain().clone();
    if !d.has_algebra() {
        return Err(Error::Unsupported(
            "obstruction search for order-only domains runs exhaustively on small spaces"
                .into(),
        ));
    }
    let ne = 1u64 << m;
    let full = ne - 1;
    let mut rng = SplitMix::new(opts.seed ^ 0xA16);
    let n = opts.samples;
    // tuples: (v, u1, u2 disjoint from u1, vp)
    let mut tuples = Vec::with_capacity(n);
    for _ in 0..n {
        let v = rng.below(ne);
        let u1 = rng.below(ne);
        let u2 = rng.below(ne) & !u1;
        let vp = rng.below(ne);
        tuples.push((v, u1, u2, vp));
    }
    let mut pairs = BTreeSet::new();
    for &(v, u1, u2, vp) in &tuples {
        pairs.insert((u1, v));
        pairs.insert((u2, v));
        pairs.insert((u1 | u2, v));
        pairs.insert((u1, v & vp));
        pairs.insert((v, vp));
        pairs.insert((u1 & v, vp));
        pairs.insert((u1 & v, v));
        pairs.insert((u1, full));
    }
    let t = sparse_table(cps, &pairs, opts.exec)?;

    let mut out = Vec::new();

    // Acc4 on samples
    {
        let mut hits = 0u64;
        let mut witness = None;
        for &(v, u1, ..) in &tuples {
            if !t.fprime(v) {
                continue;
            }
            hits += 1;
            let val = t.pl(u1, v).unwrap();
            if *val != d.bot() && !cps.in_fprime(&ev(m, u1 & v)) {
                witness = Some(Witness::new().event("U", ev(m, u1)).event("V", ev(m, v)));
                break;
            }
        }
        out.push(
            match witness {
                None => AxiomReport::pass(AxiomId::Acc4, tuples.len() as u64, hits),
                Some(w) => AxiomReport::fail(AxiomId::Acc4, w, tuples.len() as u64, hits),
            }
            .with_note("sampled"),
        );
    }

    // Alg1 on sampled disjoint pairs
    {
        let mut hits = 0u64;
        let mut witness = None;
        for &(v, u1, u2, _) in &tuples {
            if !t.fprime(v) {
                continue;
            }
            hits += 1;
            let a = t.pl(u1, v).unwrap();
            let b = t.pl(u2, v).unwrap();
            let joined = t.pl(u1 | u2, v).unwrap();
            if !d.in_dom_oplus(&[a.clone(), b.clone()]) {
                witness = Some(
                    Witness::new()
                        .event("U", ev(m, u1))
                        .event("U'", ev(m, u2))
                        .event("V", ev(m, v))
                        .text("reason", "⊕ undefined on a required pair"),
                );
                break;
            }
            let sum = d.oplus(&[a.clone(), b.clone()]).expect("guarded join");
            if sum != *joined {
                witness = Some(
                    Witness::new()
                        .event("U", ev(m, u1))
                        .event("U'", ev(m, u2))
                        .event("V", ev(m, v))
                        .value("⊕", sum)
                        .value("Pl(U∪U'|V)", joined.clone()),
                );
                break;
            }
        }
        out.push(
            match witness {
                None => AxiomReport::pass(AxiomId::Alg1, tuples.len() as u64, hits),
                Some(w) => AxiomReport::fail(AxiomId::Alg1, w, tuples.len() as u64, hits),
            }
            .with_note("sampled"),
        );
    }

    // Alg2 on sampled chains
    {
        let mut hits = 0u64;
        let mut witness = None;
        for &(v, u1, _, vp) in &tuples {
            if !t.fprime(v & vp) {
                continue;
            }
            hits += 1;
            let a = t.pl(u1, v & vp).unwrap();
            let Some(b) = t.pl(v, vp) else { continue };
            let Some(target) = t.pl(u1 & v, vp) else { continue };
            if !d.in_dom_otimes(a, b) {
                witness = Some(
                    Witness::new()
                        .event("U", ev(m, u1))
                        .event("V", ev(m, v))
                        .event("V'", ev(m, vp))
                        .text("reason", "⊗ undefined on a required pair"),
                );
                break;
            }
            let prod = d.otimes(a, b).expect("⊗ total");
            if prod != *target {
                witness = Some(
                    Witness::new()
                        .event("U", ev(m, u1))
                        .event("V", ev(m, v))
                        .event("V'", ev(m, vp))
                        .value("⊗", prod)
                        .value("Pl(U∩V|V')", target.clone()),
                );
                break;
            }
        }
        out.push(
            match witness {
                None => AxiomReport::pass(AxiomId::Alg2, tuples.len() as u64, hits),
                Some(w) => AxiomReport::fail(AxiomId::Alg2, w, tuples.len() as u64, hits),
            }
            .with_note("sampled"),
        );
    }

    // value-level checks over the sampled range
    let mut range = BTreeSet::new();
    for &(u, v) in pairs.iter() {
        if t.fprime(v) {
            if let Some(val) = t.pl(u, v) {
                range.insert(val.clone());
            }
        }
    }
    let range: Vec<Value> = capped_range(&range.into_iter().collect::<Vec<_>>(), 24);
    out.push(alg3_report(&d, &range, opts).with_note("sampled range"));
    out.push(alg4_report(&d, &range).with_note("sampled range"));
    out.push(add_identity_report(&d, &range).with_note("sampled range"));
    out.push(mul_identity_report(&d, &range).with_note("sampled range"));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Monotonicity

/// Verifies `d ≤ d' ∧ e ≤ e' ⇒ d⊗e ≤ d'⊗e'` over guarded quadruples from
/// the sample (the domain grid when the sample is empty).
pub fn check_monotonic_otimes(
    domain: &DomainSpec,
    sample: &[Value],
    _opts: &AuditOptions,
) -> AxiomReport {
    if !domain.has_algebra() {
        return AxiomReport::pass(AxiomId::Monotone, 0, 0)
            .with_note("no declared algebra; nothing to check");
    }
    let values = if sample.is_empty() {
        domain.grid_values()
    } else {
        capped_range(sample, 20)
    };
    let mut cases = 0u64;
    let mut hits = 0u64;
    let mut witness = None;
    'outer: for d1 in &values {
        for d2 in &values {
            if !domain.leq(d1, d2) {
                continue;
            }
            for e1 in &values {
                for e2 in &values {
                    cases += 1;
                    if !domain.leq(e1, e2)
                        || !domain.in_dom_otimes(d1, e1)
                        || !domain.in_dom_otimes(d2, e2)
                    {
                        continue;
                    }
                    hits += 1;
                    let p1 = domain.otimes(d1, e1).expect("⊗ total");
                    let p2 = domain.otimes(d2, e2).expect("⊗ total");
                    if !domain.leq(&p1, &p2) {
                        witness = Some(
                            Witness::new()
                                .value("d", d1.clone())
                                .value("d'", d2.clone())
                                .value("e", e1.clone())
                                .value("e'", e2.clone())
                                .value("d⊗e", p1)
                                .value("d'⊗e'", p2),
                        );
                        break 'outer;
                    }
                }
            }
        }
    }
    match witness {
        None => AxiomReport::pass(AxiomId::Monotone, cases, hits),
        Some(w) => AxiomReport::fail(AxiomId::Monotone, w, cases, hits),
    }
}

// ---------------------------------------------------------------------------
// Network-compatibility conditions (domain level)

/// The operations a network-compatibility audit needs. `DomainSpec`
/// implements it directly; tests can wire in deliberately broken algebras.
pub(crate) trait Algebra: Sync {
    fn bot(&self) -> Value;
    fn top(&self) -> Value;
    fn leq(&self, a: &Value, b: &Value) -> bool;
    fn oplus(&self, vs: &[Value]) -> Result<Value>;
    fn otimes(&self, a: &Value, b: &Value) -> Result<Value>;
    fn in_dom_oplus(&self, vs: &[Value]) -> bool;
    fn in_dom_otimes(&self, a: &Value, b: &Value) -> bool;
    fn solve_otimes(&self, p: &Value, c: &Value) -> Option<Value>;
    fn grid(&self) -> Vec<Value>;
}

impl Algebra for DomainSpec {
    fn bot(&self) -> Value {
        DomainSpec::bot(self)
    }
    fn top(&self) -> Value {
        DomainSpec::top(self)
    }
    fn leq(&self, a: &Value, b: &Value) -> bool {
        DomainSpec::leq(self, a, b)
    }
    fn oplus(&self, vs: &[Value]) -> Result<Value> {
        DomainSpec::oplus(self, vs)
    }
    fn otimes(&self, a: &Value, b: &Value) -> Result<Value> {
        DomainSpec::otimes(self, a, b)
    }
    fn in_dom_oplus(&self, vs: &[Value]) -> bool {
        DomainSpec::in_dom_oplus(self, vs)
    }
    fn in_dom_otimes(&self, a: &Value, b: &Value) -> bool {
        DomainSpec::in_dom_otimes(self, a, b)
    }
    fn solve_otimes(&self, p: &Value, c: &Value) -> Option<Value> {
        DomainSpec::solve_otimes(self, p, c)
    }
    fn grid(&self) -> Vec<Value> {
        self.grid_values()
    }
}

/// Audits the eight conditions a domain must satisfy for quantitative
/// networks over it to determine a unique measure. Quantification is over
/// a deterministic value grid; a configuration error is returned when the
/// domain declares no algebra at all.
pub fn check_bn_compatible(domain: &DomainSpec, opts: &AuditOptions) -> Result<Vec<AxiomReport>> {
    if !domain.has_algebra() {
        return Err(Error::NoAlgebra(domain.carrier_name()));
    }
    Ok(check_bn_compatible_impl(domain, opts))
}

pub(crate) fn check_bn_compatible_impl(alg: &dyn Algebra, _opts: &AuditOptions) -> Vec<AxiomReport> {
    let grid = alg.grid();
    let n = grid.len();
    let bot = alg.bot();
    let top = alg.top();
    let mut out = Vec::new();

    let ok2 = |a: &Value, b: &Value| alg.in_dom_oplus(&[a.clone(), b.clone()]);
    let sum2 = |a: &Value, b: &Value| alg.oplus(&[a.clone(), b.clone()]);

    // BN1: commutativity and associativity, guarded by the join domain
    // for ⊕ (which is partial on some carriers); ⊗ is total.
    {
        let mut cases = 0u64;
        let mut witness = None;
        'bn1: for a in &grid {
            for b in &grid {
                cases += 1;
                if ok2(a, b) {
                    let (x, y) = (sum2(a, b), sum2(b, a));
                    if x.is_err() || y.is_err() || x.unwrap() != y.unwrap() {
                        witness = Some(
                            Witness::new()
                                .value("a", a.clone())
                                .value("b", b.clone())
                                .text("law", "⊕ commutativity"),
                        );
                        break 'bn1;
                    }
                }
                let (x, y) = (alg.otimes(a, b), alg.otimes(b, a));
                if x.is_err() || y.is_err() || x.unwrap() != y.unwrap() {
                    witness = Some(
                        Witness::new()
                            .value("a", a.clone())
                            .value("b", b.clone())
                            .text("law", "⊗ commutativity"),
                    );
                    break 'bn1;
                }
                for c in &grid {
                    if alg.in_dom_oplus(&[a.clone(), b.clone(), c.clone()]) {
                        let lhs = sum2(&sum2(a, b).unwrap(), c);
                        let rhs = sum2(a, &sum2(b, c).unwrap());
                        if lhs.is_err() || rhs.is_err() || lhs.unwrap() != rhs.unwrap() {
                            witness = Some(
                                Witness::new()
                                    .value("a", a.clone())
                                    .value("b", b.clone())
                                    .value("c", c.clone())
                                    .text("law", "⊕ associativity"),
                            );
                            break 'bn1;
                        }
                    }
                    let lhs = alg.otimes(&alg.otimes(a, b).unwrap(), c).unwrap();
                    let rhs = alg.otimes(a, &alg.otimes(b, c).unwrap()).unwrap();
                    if lhs != rhs {
                        witness = Some(
                            Witness::new()
                                .value("a", a.clone())
                                .value("b", b.clone())
                                .value("c", c.clone())
                                .text("law", "⊗ associativity"),
                        );
                        break 'bn1;
                    }
                }
            }
        }
        out.push(match witness {
            None => AxiomReport::pass(AxiomId::Bn1, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::Bn1, w, cases, cases),
        });
    }

    // BN2: the extremes behave like zero and one on every value.
    {
        let mut witness = None;
        for d in &grid {
            let ok = alg.in_dom_otimes(&top, d)
                && alg.in_dom_otimes(&bot, d)
                && ok2(&bot, d)
                && alg.otimes(&top, d).map(|x| x == *d).unwrap_or(false)
                && alg.otimes(&bot, d).map(|x| x == bot).unwrap_or(false)
                && sum2(&bot, d).map(|x| x == *d).unwrap_or(false);
            if !ok {
                witness = Some(Witness::new().value("d", d.clone()));
                break;
            }
        }
        out.push(match witness {
            None => AxiomReport::pass(AxiomId::Bn2, n as u64, n as u64),
            Some(w) => AxiomReport::fail(AxiomId::Bn2, w, n as u64, n as u64),
        });
    }

    // BN3: two-sided distributivity on guarded tuples (k ≤ 2 suffices at
    // grid scale to exercise the law; longer joins reduce by BN1).
    {
        let mut cases = 0u64;
        let mut hits = 0u64;
        let mut witness = None;
        'bn3: for a in &grid {
            for b1 in &grid {
                for b2 in &grid {
                    cases += 1;
                    // left
                    if ok2(b1, b2)
                        && alg.in_dom_otimes(a, b1)
                        && alg.in_dom_otimes(a, b2)
                    {
                        let s = sum2(b1, b2).unwrap();
                        if alg.in_dom_otimes(a, &s) {
                            let p1 = alg.otimes(a, b1).unwrap();
                            let p2 = alg.otimes(a, b2).unwrap();
                            if ok2(&p1, &p2) {
                                hits += 1;
                                if alg.otimes(a, &s).unwrap() != sum2(&p1, &p2).unwrap() {
                                    witness = Some(
                                        Witness::new()
                                            .value("a", a.clone())
                                            .value("b1", b1.clone())
                                            .value("b2", b2.clone())
                                            .text("law", "left distributivity"),
                                    );
                                    break 'bn3;
                                }
                            }
                        }
                    }
                    // right
                    if ok2(b1, b2)
                        && alg.in_dom_otimes(b1, a)
                        && alg.in_dom_otimes(b2, a)
                    {
                        let s = sum2(b1, b2).unwrap();
                        if alg.in_dom_otimes(&s, a) {
                            let p1 = alg.otimes(b1, a).unwrap();
                            let p2 = alg.otimes(b2, a).unwrap();
                            if ok2(&p1, &p2) {
                                hits += 1;
                                if alg.otimes(&s, a).unwrap() != sum2(&p1, &p2).unwrap() {
                                    witness = Some(
                                        Witness::new()
                                            .value("a", a.clone())
                                            .value("b1", b1.clone())
                                            .value("b2", b2.clone())
                                            .text("law", "right distributivity"),
                                    );
                                    break 'bn3;
                                }
                            }
                        }
                    }
                }
            }
        }
        out.push(match witness {
            None => AxiomReport::pass(AxiomId::Bn3, cases, hits),
            Some(w) => AxiomReport::fail(AxiomId::Bn3, w, cases, hits),
        });
    }

    // BN4: cancellation.
    {
        let mut cases = 0u64;
        let mut hits = 0u64;
        let mut witness = None;
        'bn4: for a in &grid {
            for b in &grid {
                for c in &grid {
                    cases += 1;
                    if *c == bot || !alg.in_dom_otimes(a, c) || !alg.in_dom_otimes(b, c) {
                        continue;
                    }
                    let ac = alg.otimes(a, c).unwrap();
                    let bc = alg.otimes(b, c).unwrap();
                    if !alg.leq(&ac, &bc) {
                        continue;
                    }
                    hits += 1;
                    if !alg.leq(a, b) {
                        witness = Some(
                            Witness::new()
                                .value("a", a.clone())
                                .value("b", b.clone())
                                .value("c", c.clone()),
                        );
                        break 'bn4;
                    }
                }
            }
        }
        out.push(match witness {
            None => AxiomReport::pass(AxiomId::Bn4, cases, hits),
            Some(w) => AxiomReport::fail(AxiomId::Bn4, w, cases, hits),
        });
    }

    // BN5: division realizes every bounded join decomposition.
    {
        let mut cases = 0u64;
        let mut hits = 0u64;
        let mut witness = None;
        let tuples: Vec<Vec<&Value>> = grid_tuples(&grid, 3);
        'bn5: for tup in &tuples {
            let owned: Vec<Value> = tup.iter().map(|v| (*v).clone()).collect();
            if !alg.in_dom_oplus(&owned) {
                continue;
            }
            let total = alg.oplus(&owned).unwrap();
            for d in &grid {
                cases += 1;
                if !alg.leq(&total, d) {
                    continue;
                }
                hits += 1;
                if *d == bot {
                    // every part is bottom; bottom divides trivially
                    let ok = owned.iter().all(|x| *x == bot);
                    if !ok {
                        witness = Some(
                            Witness::new()
                                .value("d", d.clone())
                                .text("reason", "nonbottom join below bottom"),
                        );
                        break 'bn5;
                    }
                    continue;
                }
                let mut parts = Vec::with_capacity(owned.len());
                let mut failed = None;
                for x in &owned {
                    match alg.solve_otimes(x, d) {
                        Some(q) => parts.push(q),
                        None => {
                            failed = Some(x.clone());
                            break;
                        }
                    }
                }
                if let Some(x) = failed {
                    witness = Some(
                        Witness::new()
                            .value("d_i", x)
                            .value("d", d.clone())
                            .text("reason", "no quotient"),
                    );
                    break 'bn5;
                }
                if !alg.in_dom_oplus(&parts) {
                    witness = Some(
                        Witness::new()
                            .value("d", d.clone())
                            .text("reason", "quotients leave the join domain"),
                    );
                    break 'bn5;
                }
                let lhs = alg.oplus(&parts).unwrap();
                let back = alg.otimes(&lhs, d).unwrap();
                if back != total {
                    witness = Some(
                        Witness::new()
                            .value("d", d.clone())
                            .value("⊕dᵢ", total.clone())
                            .value("(⊕dᵢ')⊗d", back),
                    );
                    break 'bn5;
                }
            }
        }
        out.push(match witness {
            None => AxiomReport::pass(AxiomId::Bn5, cases, hits),
            Some(w) => AxiomReport::fail(AxiomId::Bn5, w, cases, hits),
        });
    }

    // BN6: join domain closed under permutation and prefix, and contains
    // every single value.
    {
        let mut cases = 0u64;
        let mut witness = None;
        for d in &grid {
            cases += 1;
            if !alg.in_dom_oplus(std::slice::from_ref(d)) {
                witness = Some(Witness::new().value("d", d.clone()).text("reason", "singleton"));
                break;
            }
        }
        if witness.is_none() {
            'bn6: for tup in grid_tuples(&grid, 3) {
                let owned: Vec<Value> = tup.iter().map(|v| (*v).clone()).collect();
                cases += 1;
                if !alg.in_dom_oplus(&owned) {
                    continue;
                }
                for perm in permutations(owned.len()) {
                    let p: Vec<Value> = perm.iter().map(|&i| owned[i].clone()).collect();
                    if !alg.in_dom_oplus(&p) {
                        witness = Some(
                            Witness::new()
                                .text("tuple", format!("{owned:?}"))
                                .text("reason", "permutation left the join domain"),
                        );
                        break 'bn6;
                    }
                }
                for k in 1..owned.len() {
                    if !alg.in_dom_oplus(&owned[..k]) {
                        witness = Some(
                            Witness::new()
                                .text("tuple", format!("{owned:?}"))
                                .text("reason", "prefix left the join domain"),
                        );
                        break 'bn6;
                    }
                }
            }
        }
        out.push(match witness {
            None => AxiomReport::pass(AxiomId::Bn6, cases, cases),
            Some(w) => AxiomReport::fail(AxiomId::Bn6, w, cases, cases),
        });
    }

    // BN7: products of two join-domain tuples stay in the join domain.
    {
        let mut cases = 0u64;
        let mut hits = 0u64;
        let mut witness = None;
        let tuples: Vec<Vec<&Value>> = grid_tuples(&grid, 2);
        'bn7: for t1 in &tuples {
            let o1: Vec<Value> = t1.iter().map(|v| (*v).clone()).collect();
            if !alg.in_dom_oplus(&o1) {
                continue;
            }
            for t2 in &tuples {
                cases += 1;
                let o2: Vec<Value> = t2.iter().map(|v| (*v).clone()).collect();
                if !alg.in_dom_oplus(&o2) {
                    continue;
                }
                if !o1.iter().all(|x| o2.iter().all(|y| alg.in_dom_otimes(x, y))) {
                    continue;
                }
                hits += 1;
                let mut prods = Vec::with_capacity(o1.len() * o2.len());
                for x in &o1 {
                    for y in &o2 {
                        prods.push(alg.otimes(x, y).unwrap());
                    }
                }
                if !alg.in_dom_oplus(&prods) {
                    witness = Some(
                        Witness::new()
                            .text("t1", format!("{o1:?}"))
                            .text("t2", format!("{o2:?}")),
                    );
                    break 'bn7;
                }
            }
        }
        out.push(match witness {
            None => AxiomReport::pass(AxiomId::Bn7, cases, hits),
            Some(w) => AxiomReport::fail(AxiomId::Bn7, w, cases, hits),
        });
    }

    // BN8: prefix joins never exceed the full join.
    {
        let mut cases = 0u64;
        let mut hits = 0u64;
        let mut witness = None;
        'bn8: for tup in grid_tuples(&grid, 3) {
            let owned: Vec<Value> = tup.iter().map(|v| (*v).clone()).collect();
            cases += 1;
            if !alg.in_dom_oplus(&owned) {
                continue;
            }
            hits += 1;
            let full = alg.oplus(&owned).unwrap();
            for k in 1..owned.len() {
                let prefix = alg.oplus(&owned[..k]).unwrap();
                if !alg.leq(&prefix, &full) {
                    witness = Some(
                        Witness::new()
                            .text("tuple", format!("{owned:?}"))
                            .value("prefix", prefix)
                            .value("full", full.clone()),
                    );
                    break 'bn8;
                }
            }
        }
        out.push(match witness {
            None => AxiomReport::pass(AxiomId::Bn8, cases, hits),
            Some(w) => AxiomReport::fail(AxiomId::Bn8, w, cases, hits),
        });
    }

    out
}

fn grid_tuples(grid: &[Value], max_len: usize) -> Vec<Vec<&Value>> {
    // tuples of length 2..=max_len; the grid is small so this stays modest
    let mut out = Vec::new();
    for a in grid {
        for b in grid {
            out.push(vec![a, b]);
        }
    }
    if max_len >= 3 && grid.len() <= 12 {
        for a in grid {
            for b in grid {
                for c in grid {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    match n {
        0 => vec![vec![]],
        _ => {
            let mut out = Vec::new();
            for p in permutations(n - 1) {
                for i in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// Richness

/// Searches the domain's declared candidate pairs for `(d, d')` with
/// `d ⊕ d' = ⊤` whose mixed products of length below `n` all stay in the
/// product domain. Absence of a witness is inconclusive by design.
pub fn check_rich(domain: &DomainSpec, n: usize) -> AxiomReport {
    match richness_pair(domain, n) {
        Ok((d, dp)) => AxiomReport::pass(AxiomId::Rich, 1, 1)
            .with_note(format!("witness pair d={d}, d'={dp}")),
        Err(_) => AxiomReport {
            axiom: AxiomId::Rich,
            holds: false,
            witness: None,
            cases: domain.richness_candidates().len() as u64,
            hits: 0,
            note: Some(
                "inconclusive: no declared candidate verified; this is not a proof of \
                 non-richness"
                    .into(),
            ),
        },
    }
}

/// The verified richness pair itself, for constructions that need it.
pub fn richness_pair(domain: &DomainSpec, n: usize) -> Result<(Value, Value)> {
    assert!(n >= 1);
    'cand: for (d, dp) in domain.richness_candidates() {
        if !domain.in_dom_oplus(&[d.clone(), dp.clone()]) {
            continue;
        }
        match domain.oplus(&[d.clone(), dp.clone()]) {
            Ok(t) if t == domain.top() => {}
            _ => continue,
        }
        // products of length < n over {d, d'}
        let mut layer: BTreeSet<Value> = BTreeSet::new();
        layer.insert(d.clone());
        layer.insert(dp.clone());
        let mut all: BTreeSet<Value> = layer.clone();
        for _ in 2..n {
            let mut next = BTreeSet::new();
            for x in &layer {
                for y in [&d, &dp] {
                    match domain.otimes(x, y) {
                        Ok(p) => {
                            next.insert(p);
                        }
                        Err(_) => continue 'cand,
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        for x in &all {
            for y in [&d, &dp] {
                if !domain.in_dom_otimes(y, x) || !domain.in_dom_otimes(x, y) {
                    continue 'cand;
                }
            }
        }
        return Ok((d, dp));
    }
    Err(Error::NoRichnessWitness(domain.carrier_name()))
}

// ---------------------------------------------------------------------------
// Partition expansion

/// Verifies `Pl(X|Y) = ⊕_i Pl(X|Aᵢ∩Y) ⊗ Pl(Aᵢ|Y)` over the admissible
/// cells of a partition.
pub fn check_lemma1_expansion(
    cps: &Cps,
    x: &Event,
    y: &Event,
    partition: &[Event],
) -> Result<AxiomReport> {
    let worlds = cps.worlds();
    let mut seen = worlds.empty_event();
    for (i, a) in partition.iter().enumerate() {
        if !seen.is_disjoint_from(a) {
            return Err(Error::BadPartition(format!("cell {i} overlaps an earlier cell")));
        }
        seen = seen.union(a);
    }
    if seen != worlds.full_event() {
        return Err(Error::BadPartition("cells do not cover the world set".into()));
    }
    if !cps.in_fprime(y) {
        return Err(Error::MalformedCps(
            "conditioning event is not admissible".into(),
        ));
    }
    let d = cps.domain();
    let lhs = cps.pl(x, y).expect("admissible conditioning event");
    let mut terms = Vec::new();
    for a in partition {
        let ay = a.inter(y);
        if !cps.in_fprime(&ay) {
            continue;
        }
        let t = d.otimes(
            &cps.pl(x, &ay).expect("admissible cell"),
            &cps.pl(a, y).expect("admissible conditioning event"),
        )?;
        terms.push(t);
    }
    let rhs = d.oplus(&terms)?;
    Ok(if lhs == rhs {
        AxiomReport::pass(AxiomId::PartitionExpansion, 1, 1)
    } else {
        AxiomReport::fail(
            AxiomId::PartitionExpansion,
            Witness::new()
                .event("X", x.clone())
                .event("Y", y.clone())
                .value("Pl(X|Y)", lhs)
                .value("expansion", rhs),
            1,
            1,
        )
    })
}

// ---------------------------------------------------------------------------

/// The full audit used by the command-line front end: conditioning-space
/// axioms, coherence, and the algebraic laws. Monotonicity of `⊗` is a
/// lemma premise rather than a space axiom (the indexed-family product is
/// genuinely not monotone, yet its spaces are coherent), so it is not
/// part of the pass/fail suite.
pub fn audit_all(cps: &Cps, opts: &AuditOptions) -> Result<Vec<AxiomReport>> {
    let mut out = check_cps_axioms(cps, opts)?;
    out.push(check_cpl5(cps, opts)?);
    out.extend(check_algebraic(cps, opts)?);
    Ok(out)
}
