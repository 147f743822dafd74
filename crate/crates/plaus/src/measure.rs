//! Unconditional measures: probability, ranking, possibility functions on
//! worlds, and indexed families of probability measures.

use num_traits::{One, Zero};

use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::value::{PlpValue, Rank, Value};
use crate::worlds::{Event, Worlds};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureData {
    /// Per-world weights summing to one.
    Probability(Vec<Rat>),
    /// Per-world degrees of surprise with minimum zero.
    Ranking(Vec<Rank>),
    /// Per-world possibility degrees with maximum one.
    Possibility(Vec<Rat>),
    /// An indexed family of probability measures.
    Family { labels: Vec<String>, members: Vec<Vec<Rat>> },
}

/// An unconditional measure paired with its world set. Events are
/// evaluated by the kind's combination rule: sums for probability, minima
/// for ranking, maxima for possibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    worlds: Worlds,
    data: MeasureData,
}

impl Measure {
    pub fn probability(worlds: Worlds, weights: Vec<Rat>) -> Result<Self> {
        if weights.len() != worlds.len() {
            return Err(Error::MalformedMeasure("weight count != world count".into()));
        }
        if weights.iter().any(|w| !crate::rational::in_unit_interval(w)) {
            return Err(Error::MalformedMeasure("weights must lie in [0,1]".into()));
        }
        let total: Rat = weights.iter().cloned().sum();
        if !total.is_one() {
            return Err(Error::MalformedMeasure(format!(
                "probability weights sum to {total}, not 1"
            )));
        }
        Ok(Measure { worlds, data: MeasureData::Probability(weights) })
    }

    pub fn ranking(worlds: Worlds, ranks: Vec<Rank>) -> Result<Self> {
        if ranks.len() != worlds.len() {
            return Err(Error::MalformedMeasure("rank count != world count".into()));
        }
        if !worlds.is_empty() && !ranks.contains(&Rank::Finite(0)) {
            return Err(Error::MalformedMeasure(
                "some world must have rank zero".into(),
            ));
        }
        Ok(Measure { worlds, data: MeasureData::Ranking(ranks) })
    }

    pub fn possibility(worlds: Worlds, weights: Vec<Rat>) -> Result<Self> {
        if weights.len() != worlds.len() {
            return Err(Error::MalformedMeasure("weight count != world count".into()));
        }
        if weights.iter().any(|w| !crate::rational::in_unit_interval(w)) {
            return Err(Error::MalformedMeasure("weights must lie in [0,1]".into()));
        }
        if !worlds.is_empty() && !weights.iter().any(|w| w.is_one()) {
            return Err(Error::MalformedMeasure(
                "some world must have possibility one".into(),
            ));
        }
        Ok(Measure { worlds, data: MeasureData::Possibility(weights) })
    }

    pub fn family<S: AsRef<str>>(
        worlds: Worlds,
        labels: &[S],
        members: Vec<Vec<Rat>>,
    ) -> Result<Self> {
        if labels.is_empty() || members.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        if labels.len() != members.len() {
            return Err(Error::MalformedMeasure("label/member count mismatch".into()));
        }
        for member in &members {
            // reuse the probability validation
            Measure::probability(worlds.clone(), member.clone())?;
        }
        Ok(Measure {
            worlds,
            data: MeasureData::Family {
                labels: labels.iter().map(|s| s.as_ref().to_string()).collect(),
                members,
            },
        })
    }

    pub fn worlds(&self) -> &Worlds {
        &self.worlds
    }

    pub fn data(&self) -> &MeasureData {
        &self.data
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.data {
            MeasureData::Probability(_) => "probability",
            MeasureData::Ranking(_) => "ranking",
            MeasureData::Possibility(_) => "possibility",
            MeasureData::Family { .. } => "family",
        }
    }

    pub fn prob_of(&self, e: &Event) -> Rat {
        match &self.data {
            MeasureData::Probability(ws) => e.iter().map(|w| ws[w].clone()).sum(),
            _ => panic!("not a probability measure"),
        }
    }

    pub fn rank_of(&self, e: &Event) -> Rank {
        match &self.data {
            MeasureData::Ranking(ks) => e
                .iter()
                .map(|w| ks[w])
                .fold(Rank::Infinite, Rank::numeric_min),
            _ => panic!("not a ranking measure"),
        }
    }

    pub fn poss_of(&self, e: &Event) -> Rat {
        match &self.data {
            MeasureData::Possibility(ws) => {
                let mut acc = Rat::zero();
                for w in e.iter() {
                    if ws[w] > acc {
                        acc = ws[w].clone();
                    }
                }
                acc
            }
            _ => panic!("not a possibility measure"),
        }
    }

    pub fn family_labels(&self) -> &[String] {
        match &self.data {
            MeasureData::Family { labels, .. } => labels,
            _ => panic!("not an indexed family"),
        }
    }

    pub fn family_members(&self) -> &[Vec<Rat>] {
        match &self.data {
            MeasureData::Family { members, .. } => members,
            _ => panic!("not an indexed family"),
        }
    }

    pub fn member_prob(&self, i: usize, e: &Event) -> Rat {
        e.iter().map(|w| self.family_members()[i][w].clone()).sum()
    }
}

/// A fully tabulated unconditional plausibility measure: one value per
/// event, in any domain. This is the input to the measure-axiom audit and
/// to the order-lifting construction, so world counts are kept small.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnconditionalPl {
    worlds: Worlds,
    domain: DomainSpec,
    /// Indexed by event mask; length `2^|W|`.
    values: Vec<Value>,
}

pub const MAX_TABULATED_WORLDS: usize = 16;

impl UnconditionalPl {
    pub fn new(worlds: Worlds, domain: DomainSpec, values: Vec<Value>) -> Result<Self> {
        if worlds.len() > MAX_TABULATED_WORLDS {
            return Err(Error::CapExceeded(format!(
                "tabulated measures support at most {MAX_TABULATED_WORLDS} worlds"
            )));
        }
        if values.len() != 1usize << worlds.len() {
            return Err(Error::MalformedMeasure(format!(
                "need a value for each of the {} events",
                1usize << worlds.len()
            )));
        }
        for v in &values {
            domain.validate(v)?;
        }
        Ok(UnconditionalPl { worlds, domain, values })
    }

    pub fn from_probability(m: &Measure) -> Result<Self> {
        Self::tabulate(m, DomainSpec::probability(), |m, e| Value::Prob(m.prob_of(e)))
    }

    pub fn from_ranking(m: &Measure) -> Result<Self> {
        Self::tabulate(m, DomainSpec::ranking(), |m, e| Value::Rank(m.rank_of(e)))
    }

    pub fn from_possibility(m: &Measure) -> Result<Self> {
        Self::tabulate(m, DomainSpec::possibility_prod(), |m, e| {
            Value::Poss(m.poss_of(e))
        })
    }

    /// The indexed-family measure `U ↦ (μ_i(U))_i`, with no undefined
    /// entries at the unconditional level.
    pub fn from_family(m: &Measure) -> Result<Self> {
        let labels = m.family_labels().to_vec();
        let domain = DomainSpec::plp(&labels)?;
        Self::tabulate(m, domain, |m, e| {
            let entries = (0..m.family_members().len())
                .map(|i| Some(m.member_prob(i, e)))
                .collect();
            Value::Plp(PlpValue::vector(entries).expect("family vector is defined"))
        })
    }

    fn tabulate(
        m: &Measure,
        domain: DomainSpec,
        f: impl Fn(&Measure, &Event) -> Value,
    ) -> Result<Self> {
        let worlds = m.worlds().clone();
        if worlds.len() > MAX_TABULATED_WORLDS {
            return Err(Error::CapExceeded(format!(
                "tabulated measures support at most {MAX_TABULATED_WORLDS} worlds"
            )));
        }
        let values = (0..1u64 << worlds.len())
            .map(|mask| f(m, &Event::from_mask(worlds.len(), mask)))
            .collect();
        Ok(UnconditionalPl { worlds, domain, values })
    }

    pub fn worlds(&self) -> &Worlds {
        &self.worlds
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn value(&self, e: &Event) -> &Value {
        let mask = e.mask().expect("tabulated measures have small universes");
        &self.values[mask as usize]
    }
}
