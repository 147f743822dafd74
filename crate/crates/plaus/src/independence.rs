//! Conditional independence of events and of sets of binary random
//! variables, noninteractivity, type-1 independence for indexed families,
//! and the semi-graphoid audit.
//!
//! Independence is the symmetric condition: learning either event must
//! leave the conditional plausibility of the other unchanged, with each
//! clause read vacuously when its conditioning event is inadmissible.
//! Noninteractivity is the weaker product-factorization condition.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::Zero;

use crate::audit::{AuditOptions, AxiomId, AxiomReport, Witness};
use crate::cps::Cps;
use crate::error::{Error, Result};
use crate::gen::SplitMix;
use crate::measure::{Measure, MeasureData};
use crate::rational::Rat;
use crate::value::Value;
use crate::worlds::{Event, Worlds};

/// Per-query memo over a space; variable-set queries ask for the same
/// conditionals many times.
pub(crate) struct MemoPl<'a> {
    cps: &'a Cps,
    pl: RefCell<HashMap<(Event, Event), Option<Value>>>,
    fprime: RefCell<HashMap<Event, bool>>,
}

impl<'a> MemoPl<'a> {
    pub fn new(cps: &'a Cps) -> Self {
        MemoPl { cps, pl: RefCell::new(HashMap::new()), fprime: RefCell::new(HashMap::new()) }
    }

    pub fn worlds(&self) -> &Worlds {
        self.cps.worlds()
    }

    pub fn in_fprime(&self, v: &Event) -> bool {
        if let Some(&b) = self.fprime.borrow().get(v) {
            return b;
        }
        let b = self.cps.in_fprime(v);
        self.fprime.borrow_mut().insert(v.clone(), b);
        b
    }

    pub fn pl(&self, u: &Event, v: &Event) -> Option<Value> {
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.pl.borrow().get(&key) {
            return hit.clone();
        }
        let val = self.cps.pl(u, v);
        self.pl.borrow_mut().insert(key, val.clone());
        val
    }
}

fn indep_clause(mp: &MemoPl, a: &Event, b: &Event, vp: &Event) -> bool {
    let bvp = b.inter(vp);
    if !mp.in_fprime(&bvp) {
        return true;
    }
    match (mp.pl(a, &bvp), mp.pl(a, vp)) {
        (Some(x), Some(y)) => x == y,
        // the reference conditional is undefined although the refined one
        // is admissible: superset closure is broken, treat as dependent
        _ => false,
    }
}

pub(crate) fn indep_events_memo(mp: &MemoPl, u: &Event, v: &Event, vp: &Event) -> bool {
    indep_clause(mp, u, v, vp) && indep_clause(mp, v, u, vp)
}

/// Conditional plausibilistic independence of events: both symmetric
/// clauses hold, each vacuously when its conditioning event is
/// inadmissible.
pub fn indep_events(cps: &Cps, u: &Event, v: &Event, vp: &Event) -> bool {
    indep_events_memo(&MemoPl::new(cps), u, v, vp)
}

/// Noninteractivity: `Pl(U∩V|V') = Pl(U|V') ⊗ Pl(V|V')` whenever `V'` is
/// admissible. Requires a declared algebra.
pub fn noninteract_events(cps: &Cps, u: &Event, v: &Event, vp: &Event) -> Result<bool> {
    let d = cps.domain();
    if !d.has_algebra() {
        return Err(Error::NoAlgebra(d.carrier_name()));
    }
    if !cps.in_fprime(vp) {
        return Ok(true);
    }
    let lhs = cps.pl(&u.inter(v), vp).expect("admissible conditioning event");
    let a = cps.pl(u, vp).expect("admissible conditioning event");
    let b = cps.pl(v, vp).expect("admissible conditioning event");
    Ok(lhs == d.otimes(&a, &b)?)
}

fn assignments(vars: &[usize]) -> Vec<Vec<(usize, bool)>> {
    (0..1usize << vars.len())
        .map(|code| {
            vars.iter()
                .enumerate()
                .map(|(j, &v)| (v, (code >> j) & 1 == 1))
                .collect()
        })
        .collect()
}

fn require_disjoint(sets: &[&[usize]]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for s in sets {
        for &v in *s {
            if !seen.insert(v) {
                return Err(Error::OverlappingSets(format!("variable {v} appears twice")));
            }
        }
    }
    Ok(())
}

pub(crate) fn indep_rv_memo(mp: &MemoPl, x: &[usize], y: &[usize], z: &[usize]) -> bool {
    if x.is_empty() || y.is_empty() {
        return true;
    }
    let worlds = mp.worlds();
    for xa in assignments(x) {
        let ex = worlds.assignment_event(&xa);
        for ya in assignments(y) {
            let ey = worlds.assignment_event(&ya);
            for za in assignments(z) {
                let ez = worlds.assignment_event(&za);
                if !indep_events_memo(mp, &ex, &ey, &ez) {
                    return false;
                }
            }
        }
    }
    true
}

/// Conditional independence of variable sets: independence of `X = x` and
/// `Y = y` given `Z = z` for every assignment. Vacuously true when `X` or
/// `Y` is empty; an empty `Z` conditions on the whole space.
pub fn indep_rv(cps: &Cps, x: &[usize], y: &[usize], z: &[usize]) -> Result<bool> {
    require_disjoint(&[x, y, z])?;
    let n = cps
        .worlds()
        .var_count()
        .ok_or_else(|| Error::Unsupported("worlds carry no variable structure".into()))?;
    for &v in x.iter().chain(y).chain(z) {
        if v >= n {
            return Err(Error::UnknownVariable(format!("#{v}")));
        }
    }
    Ok(indep_rv_memo(&MemoPl::new(cps), x, y, z))
}

/// Type-1 independence of variable sets with respect to an indexed family:
/// probabilistic conditional independence separately under every member.
pub fn type1_indep(family: &Measure, x: &[usize], y: &[usize], z: &[usize]) -> Result<bool> {
    let MeasureData::Family { members, .. } = family.data() else {
        return Err(Error::WrongMeasureKind { wanted: "family", found: family.kind_name() });
    };
    require_disjoint(&[x, y, z])?;
    if x.is_empty() || y.is_empty() {
        return Ok(true);
    }
    let worlds = family.worlds();
    let msum = |m: &Vec<Rat>, e: &Event| -> Rat { e.iter().map(|w| m[w].clone()).sum() };
    for m in members {
        for xa in assignments(x) {
            let ex = worlds.assignment_event(&xa);
            for ya in assignments(y) {
                let ey = worlds.assignment_event(&ya);
                for za in assignments(z) {
                    let ez = worlds.assignment_event(&za);
                    // clause 1: μ(V∩V') ≠ 0 ⇒ μ(U|V∩V') = μ(U|V')
                    let eyz = ey.inter(&ez);
                    if !msum(m, &eyz).is_zero()
                        && msum(m, &ex.inter(&eyz)) / msum(m, &eyz)
                            != msum(m, &ex.inter(&ez)) / msum(m, &ez)
                    {
                        return Ok(false);
                    }
                    let exz = ex.inter(&ez);
                    if !msum(m, &exz).is_zero()
                        && msum(m, &ey.inter(&exz)) / msum(m, &exz)
                            != msum(m, &ey.inter(&ez)) / msum(m, &ez)
                    {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// The equivalence of the three readings of probabilistic independence:
/// irrelevance in either direction and product factorization.
pub fn check_prob_indep_equivalence(m: &Measure, u: &Event, v: &Event) -> Result<AxiomReport> {
    let MeasureData::Probability(_) = m.data() else {
        return Err(Error::WrongMeasureKind { wanted: "probability", found: m.kind_name() });
    };
    let pu = m.prob_of(u);
    let pv = m.prob_of(v);
    let puv = m.prob_of(&u.inter(v));
    let a = pu.is_zero() || puv.clone() / pu.clone() == pv;
    let b = puv == pu.clone() * pv.clone();
    let c = pv.is_zero() || puv.clone() / pv.clone() == pu;
    Ok(if a == b && b == c {
        AxiomReport {
            axiom: AxiomId::ProbIndepEquivalence,
            holds: true,
            witness: None,
            cases: 3,
            hits: 3,
            note: Some(format!("all three clauses agree: {a}")),
        }
    } else {
        AxiomReport {
            axiom: AxiomId::ProbIndepEquivalence,
            holds: false,
            witness: Some(
                Witness::new()
                    .event("U", u.clone())
                    .event("V", v.clone())
                    .text("clauses", format!("irrelevance(V|U)={a} product={b} irrelevance(U|V)={c}")),
            ),
            cases: 3,
            hits: 3,
            note: None,
        }
    })
}

/// The complement closure of independence — not part of the definition,
/// exposed as a separate check because it can genuinely fail outside
/// probability.
pub fn check_complement_closure(cps: &Cps, opts: &AuditOptions) -> Result<AxiomReport> {
    let m = cps.worlds().len();
    let mp = MemoPl::new(cps);
    let mut cases = 0u64;
    let mut hits = 0u64;
    let mut witness = None;
    let mut consider = |u: &Event, v: &Event, vp: &Event| -> bool {
        cases += 1;
        if !indep_events_memo(&mp, u, v, vp) {
            return false;
        }
        hits += 1;
        if !indep_events_memo(&mp, &u.complement(), v, vp) {
            witness = Some(
                Witness::new().event("U", u.clone()).event("V", v.clone()).event("V'", vp.clone()),
            );
            return true;
        }
        false
    };
    if m <= opts.exhaustive_worlds.min(5) {
        let ne = 1u64 << m;
        'outer: for u in 0..ne {
            for v in 0..ne {
                for vp in 0..ne {
                    if consider(
                        &Event::from_mask(m, u),
                        &Event::from_mask(m, v),
                        &Event::from_mask(m, vp),
                    ) {
                        break 'outer;
                    }
                }
            }
        }
    } else {
        let ne = 1u64 << m;
        let mut rng = SplitMix::new(opts.seed ^ 0xc0311);
        for _ in 0..opts.samples {
            if consider(
                &Event::from_mask(m, rng.below(ne)),
                &Event::from_mask(m, rng.below(ne)),
                &Event::from_mask(m, rng.below(ne)),
            ) {
                break;
            }
        }
    }
    Ok(match witness {
        None => AxiomReport {
            axiom: AxiomId::ComplementClosure,
            holds: true,
            witness: None,
            cases,
            hits,
            note: None,
        },
        Some(w) => AxiomReport {
            axiom: AxiomId::ComplementClosure,
            holds: false,
            witness: Some(w),
            cases,
            hits,
            note: None,
        },
    })
}

// ---------------------------------------------------------------------------
// Semi-graphoid audit

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgMode {
    /// All role assignments of the variables; capped at four variables.
    Exhaustive,
    /// Seeded random role assignments, `samples` draws per rule.
    Sampled,
}

/// Checks the four semi-graphoid properties of variable-set independence:
/// symmetry, decomposition, weak union, and contraction. Whenever a
/// rule's antecedent independencies hold, the consequent is asserted;
/// `hits` counts the antecedent-satisfying instances per rule.
pub fn check_semigraphoid(
    cps: &Cps,
    n_vars: usize,
    mode: SgMode,
    opts: &AuditOptions,
) -> Result<Vec<AxiomReport>> {
    let have = cps
        .worlds()
        .var_count()
        .ok_or_else(|| Error::Unsupported("worlds carry no variable structure".into()))?;
    if have != n_vars {
        return Err(Error::Unsupported(format!(
            "space has {have} variables, query names {n_vars}"
        )));
    }
    if mode == SgMode::Exhaustive && n_vars > 4 {
        return Err(Error::CapExceeded(
            "exhaustive semi-graphoid audit is capped at 4 variables".into(),
        ));
    }
    let mp = MemoPl::new(cps);

    // roles: 0 → X, 1 → Y, 2 → Y', 3 → Z, 4 → unused
    let decode = |code: u64| -> [Vec<usize>; 4] {
        let mut sets: [Vec<usize>; 4] = Default::default();
        let mut c = code;
        for v in 0..n_vars {
            let role = (c % 5) as usize;
            c /= 5;
            if role < 4 {
                sets[role].push(v);
            }
        }
        sets
    };

    let total = 5u64.pow(n_vars as u32);
    let codes: Vec<u64> = match mode {
        SgMode::Exhaustive => (0..total).collect(),
        SgMode::Sampled => {
            let mut rng = SplitMix::new(opts.seed ^ 0x5697);
            (0..opts.samples).map(|_| rng.below(total)).collect()
        }
    };

    let mut reports = Vec::new();
    for rule in [AxiomId::Cirv1, AxiomId::Cirv2, AxiomId::Cirv3, AxiomId::Cirv4] {
        let mut cases = 0u64;
        let mut hits = 0u64;
        let mut witness = None;
        for &code in &codes {
            let [x, y, yp, z] = decode(code);
            // symmetry ranges over triples only
            if rule == AxiomId::Cirv1 && !yp.is_empty() {
                continue;
            }
            cases += 1;
            let union_yyp = || {
                let mut u = y.clone();
                u.extend(&yp);
                u.sort_unstable();
                u
            };
            let union_ypz = || {
                let mut u = yp.clone();
                u.extend(&z);
                u.sort_unstable();
                u
            };
            let union_yz = || {
                let mut u = y.clone();
                u.extend(&z);
                u.sort_unstable();
                u
            };
            let (antecedent, consequent): (bool, Box<dyn Fn() -> bool>) = match rule {
                AxiomId::Cirv1 => (
                    indep_rv_memo(&mp, &x, &y, &z),
                    Box::new(|| indep_rv_memo(&mp, &y, &x, &z)),
                ),
                AxiomId::Cirv2 => (
                    indep_rv_memo(&mp, &x, &union_yyp(), &z),
                    Box::new(|| indep_rv_memo(&mp, &x, &y, &z)),
                ),
                AxiomId::Cirv3 => (
                    indep_rv_memo(&mp, &x, &union_yyp(), &z),
                    Box::new(|| indep_rv_memo(&mp, &x, &y, &union_ypz())),
                ),
                AxiomId::Cirv4 => (
                    indep_rv_memo(&mp, &x, &y, &z) && indep_rv_memo(&mp, &x, &yp, &union_yz()),
                    Box::new(|| indep_rv_memo(&mp, &x, &union_yyp(), &z)),
                ),
                _ => unreachable!(),
            };
            if !antecedent {
                continue;
            }
            hits += 1;
            if !consequent() {
                witness = Some(
                    Witness::new()
                        .text("X", format!("{x:?}"))
                        .text("Y", format!("{y:?}"))
                        .text("Y'", format!("{yp:?}"))
                        .text("Z", format!("{z:?}")),
                );
                break;
            }
        }
        let mut rep = match witness {
            None => AxiomReport { axiom: rule, holds: true, witness: None, cases, hits, note: None },
            Some(w) => {
                AxiomReport { axiom: rule, holds: false, witness: Some(w), cases, hits, note: None }
            }
        };
        if mode == SgMode::Sampled {
            rep.note = Some("sampled".into());
        }
        reports.push(rep);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditioning::{
        extend_plp, extend_possibility, extend_probability, extend_ranking, PossVariant,
    };
    use crate::domain::DomainSpec;
    use crate::rational::rat;
    use crate::value::PlpValue;
    use std::collections::BTreeMap;

    fn fair_coins() -> Cps {
        let w = Worlds::binary(&["X1", "X2"]);
        let m = Measure::probability(w, vec![rat(1, 4); 4]).unwrap();
        extend_probability(&m).unwrap()
    }

    /// Double-headed-or-double-tailed coin tossed twice: worlds encode
    /// (toss1, toss2) with heads = 1.
    fn coin_family() -> Measure {
        let w = Worlds::binary(&["X1", "X2"]);
        // world index bit0 = X1, bit1 = X2: hh=3, tt=0
        let mut m0 = vec![rat(0, 1); 4];
        m0[3] = rat(1, 1);
        let mut m1 = vec![rat(0, 1); 4];
        m1[0] = rat(1, 1);
        Measure::family(w, &["m0", "m1"], vec![m0, m1]).unwrap()
    }

    #[test]
    fn everything_is_independent_of_the_whole_space() {
        let cps = fair_coins();
        let w = cps.worlds().clone();
        let full = w.full_event();
        for mask in 0u64..16 {
            let u = Event::from_mask(4, mask);
            assert!(indep_events(&cps, &u, &full, &full));
        }
    }

    #[test]
    fn product_coins_are_independent_but_not_selfindependent() {
        let cps = fair_coins();
        let w = cps.worlds().clone();
        let h1 = w.assignment_event(&[(0, true)]);
        let h2 = w.assignment_event(&[(1, true)]);
        let full = w.full_event();
        assert!(indep_events(&cps, &h1, &h2, &full));
        assert!(noninteract_events(&cps, &h1, &h2, &full).unwrap());
        // a fair coin head is not independent of itself: 1/2 ≠ 1/4
        assert!(!noninteract_events(&cps, &h1, &h1, &full).unwrap());
        assert!(!indep_events(&cps, &h1, &h1, &full));
        assert!(indep_rv(&cps, &[0], &[1], &[]).unwrap());
    }

    #[test]
    fn indep_events_is_symmetric() {
        let cps = fair_coins();
        for seed in 0..200u64 {
            let mut rng = SplitMix::new(seed);
            let u = Event::from_mask(4, rng.below(16));
            let v = Event::from_mask(4, rng.below(16));
            let vp = Event::from_mask(4, rng.below(16));
            assert_eq!(
                indep_events(&cps, &u, &v, &vp),
                indep_events(&cps, &v, &u, &vp)
            );
        }
    }

    /// A conditional probability table with μ(a)=1, μ(b)=0 but μ(b|b)=1:
    /// algebraic yet nonstandard. `{b}` does not interact with itself but
    /// is not independent of itself.
    fn nonstandard_two_worlds() -> Cps {
        let w = Worlds::labeled(&["a", "b"]);
        let d = DomainSpec::probability();
        let full = w.full_event();
        let a = w.singleton(0);
        let b = w.singleton(1);
        let empty = w.empty_event();
        let mut table = BTreeMap::new();
        let one = Value::Prob(rat(1, 1));
        let zero = Value::Prob(rat(0, 1));
        for (v, weights) in [
            (full.clone(), [(0usize, rat(1, 1)), (1usize, rat(0, 1))]),
            (a.clone(), [(0, rat(1, 1)), (1, rat(0, 1))]),
            (b.clone(), [(0, rat(0, 1)), (1, rat(1, 1))]),
        ] {
            for mask in 0u64..4 {
                let u = Event::from_mask(2, mask);
                let mut p = rat(0, 1);
                for (wi, wt) in &weights {
                    if u.contains(*wi) {
                        p += wt.clone();
                    }
                }
                table.insert((u, v.clone()), Value::Prob(p));
            }
        }
        let _ = (one, zero, empty);
        Cps::explicit(w, d, vec![full, a, b], table).unwrap()
    }

    #[test]
    fn nonstandard_space_separates_noninteractivity_from_independence() {
        let cps = nonstandard_two_worlds();
        let w = cps.worlds().clone();
        let b = w.singleton(1);
        let full = w.full_event();
        // μ(b) = 0 = μ(b)·μ(b): noninteractive
        assert!(noninteract_events(&cps, &b, &b, &full).unwrap());
        // but μ(b|b) = 1 ≠ 0 = μ(b): not independent
        assert!(!indep_events(&cps, &b, &b, &full));
        // and the space is nonstandard with witness {b}
        let reports = crate::audit::check_cps_axioms(&cps, &AuditOptions::default()).unwrap();
        let standard = reports.iter().find(|r| r.axiom == AxiomId::Standard).unwrap();
        assert!(!standard.holds);
        assert_eq!(standard.witness.as_ref().unwrap().get_event("U"), Some(&b));
    }

    #[test]
    fn coin_family_separates_type1_from_family_independence() {
        let fam = coin_family();
        let w = fam.worlds().clone();
        // type-1: independent under each member separately
        assert!(type1_indep(&fam, &[0], &[1], &[]).unwrap());
        let cps = extend_plp(&fam).unwrap();
        // noninteractivity holds for every joint assignment
        let full = w.full_event();
        for i in [false, true] {
            for j in [false, true] {
                let u = w.assignment_event(&[(0, i)]);
                let v = w.assignment_event(&[(1, j)]);
                assert!(noninteract_events(&cps, &u, &v, &full).unwrap());
            }
        }
        // but family independence fails: conditioning on the second head
        // leaves the first-toss conditional undefined for the tails member
        assert!(!indep_rv(&cps, &[0], &[1], &[]).unwrap());
        let h1 = w.assignment_event(&[(0, true)]);
        let h2 = w.assignment_event(&[(1, true)]);
        let raw = cps.plp_raw_conditional(&h1, &h2).unwrap();
        assert_eq!(raw[1], None);
        assert_eq!(raw[0], Some(rat(1, 1)));
        // unconditionally the same entry is a hard zero
        assert_eq!(
            cps.plp_raw_conditional(&h1, &full).unwrap()[1],
            Some(rat(0, 1))
        );
    }

    #[test]
    fn almost_deterministic_coins_restore_family_independence() {
        // heads probability .99 or .01, independent tosses per member
        let w = Worlds::binary(&["X1", "X2"]);
        let member = |p: Rat| -> Vec<Rat> {
            let q = rat(1, 1) - p.clone();
            // world bits: X1 = bit0, X2 = bit1
            vec![
                q.clone() * q.clone(),
                p.clone() * q.clone(),
                q.clone() * p.clone(),
                p.clone() * p.clone(),
            ]
        };
        let fam = Measure::family(
            w,
            &["hi", "lo"],
            vec![member(rat(99, 100)), member(rat(1, 100))],
        )
        .unwrap();
        assert!(type1_indep(&fam, &[0], &[1], &[]).unwrap());
        let cps = extend_plp(&fam).unwrap();
        assert!(indep_rv(&cps, &[0], &[1], &[]).unwrap());
    }

    #[test]
    fn perfectly_correlated_single_member_fails_type1() {
        let w = Worlds::binary(&["X1", "X2"]);
        let mut weights = vec![rat(0, 1); 4];
        weights[0] = rat(1, 2);
        weights[3] = rat(1, 2);
        let fam = Measure::family(w, &["m"], vec![weights]).unwrap();
        assert!(!type1_indep(&fam, &[0], &[1], &[]).unwrap());
    }

    #[test]
    fn empty_sets_are_vacuously_independent() {
        let cps = fair_coins();
        assert!(indep_rv(&cps, &[0], &[], &[]).unwrap());
        assert!(indep_rv(&cps, &[], &[0, 1], &[]).unwrap());
        assert!(matches!(
            indep_rv(&cps, &[0], &[0], &[]),
            Err(Error::OverlappingSets(_))
        ));
    }

    #[test]
    fn semigraphoid_rules_hold_exhaustively_on_small_algebraic_spaces() {
        let opts = AuditOptions::default();
        let w3 = crate::gen::binary_worlds(3);
        let spaces: Vec<Cps> = vec![
            extend_probability(&crate::gen::random_probability(w3.clone(), 7, true)).unwrap(),
            extend_ranking(&crate::gen::random_ranking(w3.clone(), 7)).unwrap(),
            extend_possibility(&crate::gen::random_possibility(w3.clone(), 7), PossVariant::Min)
                .unwrap(),
            extend_possibility(&crate::gen::random_possibility(w3.clone(), 7), PossVariant::Prod)
                .unwrap(),
            extend_plp(&crate::gen::random_family(w3, 2, 7, false)).unwrap(),
        ];
        for cps in &spaces {
            let reports = check_semigraphoid(cps, 3, SgMode::Exhaustive, &opts).unwrap();
            for r in &reports {
                assert!(r.holds, "{} fails: {:?}", r.axiom, r.witness);
                assert!(r.hits > 0, "{} never fired", r.axiom);
            }
        }
    }

    #[test]
    fn prob_independence_clauses_agree() {
        let cps = fair_coins();
        let w = cps.worlds().clone();
        let m = Measure::probability(w.clone(), vec![rat(1, 4); 4]).unwrap();
        let h1 = w.assignment_event(&[(0, true)]);
        let h2 = w.assignment_event(&[(1, true)]);
        assert!(check_prob_indep_equivalence(&m, &h1, &h2).unwrap().holds);
        // zero-probability event: clause (a) vacuous, all agree
        let m2 = Measure::probability(
            w.clone(),
            vec![rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1)],
        )
        .unwrap();
        let dead = w.assignment_event(&[(1, true)]);
        assert!(check_prob_indep_equivalence(&m2, &dead, &h1).unwrap().holds);
        // correlated pair: all three false together
        let w3 = Worlds::labeled(&["a", "b", "c"]);
        let m3 =
            Measure::probability(w3.clone(), vec![rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap();
        let u = w3.event_from_indices(&[0, 1]);
        let v = w3.event_from_indices(&[0, 2]);
        let rep = check_prob_indep_equivalence(&m3, &u, &v).unwrap();
        assert!(rep.holds, "clauses must agree even when all false: {rep:?}");
        assert!(rep.note.as_deref().unwrap().contains("false"));
    }

    #[test]
    fn complement_closure_holds_for_probability() {
        let cps = fair_coins();
        let rep = check_complement_closure(&cps, &AuditOptions::default()).unwrap();
        assert!(rep.holds);
        assert!(rep.hits > 0);
    }

    /// Stored witness that noninteractivity does not imply independence
    /// for min-conditioned possibility (whose cancellation law holds only
    /// on the restricted product domain). Found by exhaustive search over
    /// two-world possibility measures.
    #[test]
    fn possibility_min_noninteractive_but_dependent_instance() {
        let w = Worlds::labeled(&["a", "b"]);
        let m = Measure::possibility(w.clone(), vec![rat(1, 1), rat(1, 2)]).unwrap();
        let cps = extend_possibility(&m, PossVariant::Min).unwrap();
        let b = w.singleton(1);
        let full = w.full_event();
        assert!(noninteract_events(&cps, &b, &b, &full).unwrap());
        assert!(!indep_events(&cps, &b, &b, &full));
        // the domain indeed lacks unrestricted cancellation
        assert!(!cps.domain().satisfies_alg4_prime());
    }

    #[test]
    fn family_independence_implies_type1_on_random_families() {
        for seed in 0..30u64 {
            let w = crate::gen::binary_worlds(2);
            let fam = crate::gen::random_family(w, 2, seed, false);
            let cps = extend_plp(&fam).unwrap();
            if indep_rv(&cps, &[0], &[1], &[]).unwrap() {
                assert!(type1_indep(&fam, &[0], &[1], &[]).unwrap(), "seed {seed}");
            }
        }
        // and the converse fails on the coin family
        let fam = coin_family();
        let cps = extend_plp(&fam).unwrap();
        assert!(type1_indep(&fam, &[0], &[1], &[]).unwrap());
        assert!(!indep_rv(&cps, &[0], &[1], &[]).unwrap());
    }

    #[test]
    fn plp_self_dependence_via_distinguished_classes() {
        // family independence uses the identified bottom/top classes:
        // Pl(U|U) = top while Pl(U) is a vector, so U depends on itself
        let fam = coin_family();
        let cps = extend_plp(&fam).unwrap();
        let w = cps.worlds().clone();
        let h1 = w.assignment_event(&[(0, true)]);
        assert_eq!(
            cps.pl(&h1, &h1),
            Some(Value::Plp(PlpValue::Top))
        );
    }
}
