//! Conditional plausibility spaces.
//!
//! A space is a world set, the event algebra `2^W`, a conditioning family
//! `F'`, and a partial map `(U,V) ↦ Pl(U|V)` defined exactly when
//! `V ∈ F'`. Spaces are immutable; `pl` is computed on demand from the
//! underlying measure data, so large world sets cost nothing until
//! queried. Undefined conditionals are represented as absence (`None`),
//! never as a sentinel carrier value.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::measure::UnconditionalPl;
use crate::rational::Rat;
use crate::value::{LiftedValue, PlpValue, Rank, Value};
use crate::worlds::{Event, Worlds};

#[derive(Debug, Clone)]
pub(crate) enum CpsKind {
    Probability { weights: Vec<Rat> },
    Ranking { ranks: Vec<Rank> },
    PossMin { weights: Vec<Rat> },
    PossProd { weights: Vec<Rat> },
    LowerUpper { members: Vec<Vec<Rat>>, all_positive: bool },
    Plp { members: Vec<Vec<Rat>> },
    Lifted { base: UnconditionalPl },
    Reconstructed { joint: Vec<Value> },
    Explicit {
        fprime: Vec<Event>,
        table: BTreeMap<(Event, Event), Value>,
    },
}

#[derive(Debug, Clone)]
pub struct Cps {
    worlds: Worlds,
    domain: DomainSpec,
    kind: CpsKind,
}

impl Cps {
    pub(crate) fn new(worlds: Worlds, domain: DomainSpec, kind: CpsKind) -> Self {
        Cps { worlds, domain, kind }
    }

    /// A space given by an explicit table. `table` must hold a value for
    /// every pair `(U, V)` with `V` in the conditioning family; partial
    /// tables are accepted here and reported by the audits.
    pub fn explicit(
        worlds: Worlds,
        domain: DomainSpec,
        fprime: Vec<Event>,
        table: BTreeMap<(Event, Event), Value>,
    ) -> Result<Self> {
        for e in &fprime {
            if e.universe_size() != worlds.len() {
                return Err(Error::MalformedCps(
                    "conditioning event over the wrong universe".into(),
                ));
            }
        }
        for ((u, v), val) in &table {
            if u.universe_size() != worlds.len() || v.universe_size() != worlds.len() {
                return Err(Error::MalformedCps("event over the wrong universe".into()));
            }
            domain.validate(val)?;
        }
        let mut fprime = fprime;
        fprime.sort();
        fprime.dedup();
        Ok(Cps::new(worlds, domain, CpsKind::Explicit { fprime, table }))
    }

    pub fn worlds(&self) -> &Worlds {
        &self.worlds
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    /// Whether `v` is an admissible conditioning event.
    pub fn in_fprime(&self, v: &Event) -> bool {
        match &self.kind {
            CpsKind::Probability { weights } => !sum(weights, v).is_zero(),
            CpsKind::Ranking { ranks } => min_rank(ranks, v) != Rank::Infinite,
            CpsKind::PossMin { weights } | CpsKind::PossProd { weights } => {
                !max(weights, v).is_zero()
            }
            CpsKind::LowerUpper { members, all_positive } => {
                if *all_positive {
                    members.iter().all(|m| !sum(m, v).is_zero())
                } else {
                    members.iter().any(|m| !sum(m, v).is_zero())
                }
            }
            CpsKind::Plp { members } => members.iter().any(|m| !sum(m, v).is_zero()),
            CpsKind::Lifted { base } => *base.value(v) != base.domain().bot(),
            CpsKind::Reconstructed { joint } => {
                self.joint_sum(joint, v) != self.domain.bot()
            }
            CpsKind::Explicit { fprime, .. } => fprime.binary_search(v).is_ok(),
        }
    }

    /// The conditional plausibility `Pl(U|V)`, or `None` when `V` is not
    /// an admissible conditioning event (or, for explicit tables, when the
    /// entry is missing — the audits flag that as a malformed space).
    pub fn pl(&self, u: &Event, v: &Event) -> Option<Value> {
        debug_assert_eq!(u.universe_size(), self.worlds.len());
        debug_assert_eq!(v.universe_size(), self.worlds.len());
        match &self.kind {
            CpsKind::Probability { weights } => {
                let pv = sum(weights, v);
                if pv.is_zero() {
                    return None;
                }
                Some(Value::Prob(sum(weights, &u.inter(v)) / pv))
            }
            CpsKind::Ranking { ranks } => {
                let kv = min_rank(ranks, v);
                if kv == Rank::Infinite {
                    return None;
                }
                let kuv = min_rank(ranks, &u.inter(v));
                Some(Value::Rank(kuv.checked_sub(kv).expect("conditioning rank is finite")))
            }
            CpsKind::PossMin { weights } => {
                let pv = max(weights, v);
                if pv.is_zero() {
                    return None;
                }
                let puv = max(weights, &u.inter(v));
                Some(Value::Poss(if puv < pv { puv } else { Rat::from_integer(1.into()) }))
            }
            CpsKind::PossProd { weights } => {
                let pv = max(weights, v);
                if pv.is_zero() {
                    return None;
                }
                Some(Value::Poss(max(weights, &u.inter(v)) / pv))
            }
            CpsKind::LowerUpper { members, all_positive } => {
                let defined: Vec<&Vec<Rat>> =
                    members.iter().filter(|m| !sum(m, v).is_zero()).collect();
                if defined.is_empty() || (*all_positive && defined.len() != members.len()) {
                    return None;
                }
                let uv = u.inter(v);
                let mut lo: Option<Rat> = None;
                let mut hi: Option<Rat> = None;
                for m in defined {
                    let c = sum(m, &uv) / sum(m, v);
                    if lo.as_ref().is_none_or(|l| c < *l) {
                        lo = Some(c.clone());
                    }
                    if hi.as_ref().is_none_or(|h| c > *h) {
                        hi = Some(c);
                    }
                }
                Some(Value::Interval(crate::value::IntervalValue {
                    lower: lo.unwrap(),
                    upper: hi.unwrap(),
                }))
            }
            CpsKind::Plp { .. } => {
                let entries = self.plp_raw_conditional(u, v)?;
                Some(Value::Plp(
                    PlpValue::vector(entries).expect("conditional family vector is defined"),
                ))
            }
            CpsKind::Lifted { base } => {
                let bot = base.domain().bot();
                let pv = base.value(v);
                if *pv == bot {
                    return None;
                }
                let puv = base.value(&u.inter(v));
                Some(Value::Lifted(if *puv == bot {
                    LiftedValue::Bot
                } else if puv == pv {
                    LiftedValue::Top
                } else {
                    LiftedValue::Scaled { value: Box::new(puv.clone()), given: v.clone() }
                }))
            }
            CpsKind::Reconstructed { joint } => {
                let pv = self.joint_sum(joint, v);
                if pv == self.domain.bot() {
                    return None;
                }
                let parts: Vec<Value> = u
                    .inter(v)
                    .iter()
                    .map(|w| {
                        self.domain.solve_otimes(&joint[w], &pv).unwrap_or_else(|| {
                            panic!(
                                "domain {} violates the division condition: no x with \
                                 x ⊗ {} = {}",
                                self.domain.carrier_name(),
                                pv,
                                joint[w]
                            )
                        })
                    })
                    .collect();
                Some(self.domain.oplus(&parts).expect("join of conditional parts"))
            }
            CpsKind::Explicit { fprime, table } => {
                if fprime.binary_search(v).is_err() {
                    return None;
                }
                table.get(&(u.clone(), v.clone())).cloned()
            }
        }
    }

    /// The unconditional value `Pl(U) = Pl(U|W)`.
    pub fn unconditional(&self, u: &Event) -> Option<Value> {
        self.pl(u, &self.worlds.full_event())
    }

    /// For indexed-family spaces: the raw entrywise conditional vector
    /// before bottom/top identification, `*` rendered as `None`. This is
    /// the diagnostic form showing exactly which members leave the
    /// conditional undefined.
    pub fn plp_raw_conditional(&self, u: &Event, v: &Event) -> Option<Vec<Option<Rat>>> {
        let CpsKind::Plp { members } = &self.kind else {
            return None;
        };
        let uv = u.inter(v);
        let entries: Vec<Option<Rat>> = members
            .iter()
            .map(|m| {
                let mv = sum(m, v);
                (!mv.is_zero()).then(|| sum(m, &uv) / mv)
            })
            .collect();
        entries.iter().any(|e| e.is_some()).then_some(entries)
    }

    /// World joint values for reconstructed spaces.
    pub fn joint_values(&self) -> Option<&[Value]> {
        match &self.kind {
            CpsKind::Reconstructed { joint } => Some(joint),
            _ => None,
        }
    }

    fn joint_sum(&self, joint: &[Value], v: &Event) -> Value {
        let parts: Vec<Value> = v.iter().map(|w| joint[w].clone()).collect();
        self.domain.oplus(&parts).expect("join of world values")
    }
}

fn sum(weights: &[Rat], e: &Event) -> Rat {
    e.iter().map(|w| weights[w].clone()).sum()
}

fn max(weights: &[Rat], e: &Event) -> Rat {
    let mut acc = Rat::zero();
    for w in e.iter() {
        if weights[w] > acc {
            acc = weights[w].clone();
        }
    }
    acc
}

fn min_rank(ranks: &[Rank], e: &Event) -> Rank {
    e.iter().map(|w| ranks[w]).fold(Rank::Infinite, Rank::numeric_min)
}
