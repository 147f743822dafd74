//! Constructions that extend an unconditional measure to a conditional
//! plausibility space.
//!
//! Each construction fixes the conditioning family `F'` and the formula
//! for `Pl(U|V)`:
//!
//! * probability: `F' = {V : μ(V) > 0}`, ratio conditioning;
//! * ranking: `F' = {V : κ(V) ≠ ∞}`, `κ(U|V) = κ(U∩V) − κ(V)`;
//! * possibility, min variant: `Poss(U|V)` is `Poss(U∩V)` below `Poss(V)`
//!   and `1` at it; prod variant divides;
//! * lower/upper probability over a family, in the strict variant
//!   (every member must give `V` positive probability) and the lenient
//!   one (some member suffices);
//! * the indexed-family representation with `*` marking members whose
//!   conditional is undefined;
//! * the generic order lift from any tabulated unconditional measure.

use crate::cps::{Cps, CpsKind};
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::measure::{Measure, MeasureData, UnconditionalPl};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PossVariant {
    Min,
    Prod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Conditioning defined only when every member gives `V` positive
    /// probability. Coherent, but in general not acceptable.
    AllPositive,
    /// Conditioning defined when some member gives `V` positive
    /// probability. Acceptable, but violates coherence in general.
    SomePositive,
}

fn wrong_kind(wanted: &'static str, m: &Measure) -> Error {
    Error::WrongMeasureKind { wanted, found: m.kind_name() }
}

pub fn extend_probability(m: &Measure) -> Result<Cps> {
    let MeasureData::Probability(weights) = m.data() else {
        return Err(wrong_kind("probability", m));
    };
    Ok(Cps::new(
        m.worlds().clone(),
        DomainSpec::probability(),
        CpsKind::Probability { weights: weights.clone() },
    ))
}

pub fn extend_ranking(m: &Measure) -> Result<Cps> {
    let MeasureData::Ranking(ranks) = m.data() else {
        return Err(wrong_kind("ranking", m));
    };
    Ok(Cps::new(
        m.worlds().clone(),
        DomainSpec::ranking(),
        CpsKind::Ranking { ranks: ranks.clone() },
    ))
}

pub fn extend_possibility(m: &Measure, variant: PossVariant) -> Result<Cps> {
    let MeasureData::Possibility(weights) = m.data() else {
        return Err(wrong_kind("possibility", m));
    };
    let (domain, kind) = match variant {
        PossVariant::Min => (
            DomainSpec::possibility_min(),
            CpsKind::PossMin { weights: weights.clone() },
        ),
        PossVariant::Prod => (
            DomainSpec::possibility_prod(),
            CpsKind::PossProd { weights: weights.clone() },
        ),
    };
    Ok(Cps::new(m.worlds().clone(), domain, kind))
}

pub fn extend_lower_upper(m: &Measure, strictness: Strictness) -> Result<Cps> {
    let MeasureData::Family { members, .. } = m.data() else {
        return Err(wrong_kind("family", m));
    };
    Ok(Cps::new(
        m.worlds().clone(),
        DomainSpec::interval(),
        CpsKind::LowerUpper {
            members: members.clone(),
            all_positive: strictness == Strictness::AllPositive,
        },
    ))
}

pub fn extend_plp(m: &Measure) -> Result<Cps> {
    let MeasureData::Family { labels, members } = m.data() else {
        return Err(wrong_kind("family", m));
    };
    Ok(Cps::new(
        m.worlds().clone(),
        DomainSpec::plp(labels)?,
        CpsKind::Plp { members: members.clone() },
    ))
}

/// Worlds cap for the order lift; monotonicity of the base measure is
/// verified over all subset pairs, which is exponential in `|W|`.
pub const MAX_LIFT_WORLDS: usize = 12;

/// Lifts a tabulated unconditional measure to a conditional space whose
/// values are tagged with the conditioning event. Requires the base to
/// satisfy the three measure axioms; the empty set must sit at bottom,
/// the whole space at top, and supersets must dominate.
pub fn lift_unconditional(base: UnconditionalPl) -> Result<Cps> {
    let worlds = base.worlds().clone();
    if worlds.len() > MAX_LIFT_WORLDS {
        return Err(Error::CapExceeded(format!(
            "the order lift supports at most {MAX_LIFT_WORLDS} worlds"
        )));
    }
    let d = base.domain().clone();
    if *base.value(&worlds.empty_event()) != d.bot() {
        return Err(Error::MalformedMeasure(
            "lift: base measure must map the empty event to bottom".into(),
        ));
    }
    if *base.value(&worlds.full_event()) != d.top() {
        return Err(Error::MalformedMeasure(
            "lift: base measure must map the full event to top".into(),
        ));
    }
    let m = worlds.len();
    for v_mask in 0..1u64 << m {
        let v = crate::worlds::Event::from_mask(m, v_mask);
        for u_mask in crate::audit::submasks(v_mask) {
            let u = crate::worlds::Event::from_mask(m, u_mask);
            if !d.leq(base.value(&u), base.value(&v)) {
                return Err(Error::MalformedMeasure(format!(
                    "lift: base measure is not monotone at {u} ⊆ {v}"
                )));
            }
        }
    }
    let domain = DomainSpec::lifted(d);
    Ok(Cps::new(worlds, domain, CpsKind::Lifted { base }))
}
