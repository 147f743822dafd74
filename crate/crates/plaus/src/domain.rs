//! Plausibility-value domains: carrier, partial order, distinguished
//! bottom/top, the partial `⊕`/`⊗` algebra with its membership predicates,
//! and a `⊗`-division solver.
//!
//! `⊕` and `⊗` are total functions on each carrier (where the carrier
//! permits) paired with membership predicates describing the tuples on
//! which the algebraic axioms are required to hold. The interval and
//! lifted carriers declare no algebra at all; they exist as order-only
//! domains.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Rat};
use crate::value::{IntervalValue, LiftedValue, PlpValue, Rank, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DomainKind {
    /// `[0,1]` with capped addition and multiplication.
    Probability,
    /// Naturals plus infinity under the reversed order; `⊕`/`⊗` are
    /// numeric min and addition.
    Ranking,
    /// `[0,1]` with `⊕ = max` and `⊗ = min`; `Dom(⊗)` is restricted.
    PossibilityMin,
    /// `[0,1]` with `⊕ = max` and `⊗ = ×`.
    PossibilityProd,
    /// Vectors over a finite index set with entries in `[0,1] ∪ {*}`,
    /// bottom/top equivalence classes identified.
    Plp { indices: Vec<String> },
    /// Lower/upper probability pairs. Order-only.
    Interval,
    /// Values of an inner domain scaled by a conditioning event.
    /// Order-only.
    Lifted(Box<DomainSpec>),
}

/// A plausibility value algebra. Cheap to clone; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainSpec {
    kind: DomainKind,
}

impl DomainSpec {
    pub fn probability() -> Self {
        DomainSpec { kind: DomainKind::Probability }
    }

    pub fn ranking() -> Self {
        DomainSpec { kind: DomainKind::Ranking }
    }

    pub fn possibility_min() -> Self {
        DomainSpec { kind: DomainKind::PossibilityMin }
    }

    pub fn possibility_prod() -> Self {
        DomainSpec { kind: DomainKind::PossibilityProd }
    }

    pub fn plp<S: AsRef<str>>(indices: &[S]) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        Ok(DomainSpec {
            kind: DomainKind::Plp {
                indices: indices.iter().map(|s| s.as_ref().to_string()).collect(),
            },
        })
    }

    pub fn interval() -> Self {
        DomainSpec { kind: DomainKind::Interval }
    }

    pub fn lifted(inner: DomainSpec) -> Self {
        DomainSpec { kind: DomainKind::Lifted(Box::new(inner)) }
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    pub fn carrier_name(&self) -> &'static str {
        match &self.kind {
            DomainKind::Probability => "probability",
            DomainKind::Ranking => "ranking",
            DomainKind::PossibilityMin => "possibility-min",
            DomainKind::PossibilityProd => "possibility-prod",
            DomainKind::Plp { .. } => "indexed-family",
            DomainKind::Interval => "interval",
            DomainKind::Lifted(_) => "lifted",
        }
    }

    pub fn index_labels(&self) -> Option<&[String]> {
        match &self.kind {
            DomainKind::Plp { indices } => Some(indices),
            _ => None,
        }
    }

    pub fn bot(&self) -> Value {
        match &self.kind {
            DomainKind::Probability => Value::Prob(Rat::zero()),
            DomainKind::Ranking => Value::Rank(Rank::Infinite),
            DomainKind::PossibilityMin | DomainKind::PossibilityProd => Value::Poss(Rat::zero()),
            DomainKind::Plp { .. } => Value::Plp(PlpValue::Bot),
            DomainKind::Interval => Value::Interval(IntervalValue {
                lower: Rat::zero(),
                upper: Rat::zero(),
            }),
            DomainKind::Lifted(_) => Value::Lifted(LiftedValue::Bot),
        }
    }

    pub fn top(&self) -> Value {
        match &self.kind {
            DomainKind::Probability => Value::Prob(Rat::one()),
            DomainKind::Ranking => Value::Rank(Rank::Finite(0)),
            DomainKind::PossibilityMin | DomainKind::PossibilityProd => Value::Poss(Rat::one()),
            DomainKind::Plp { .. } => Value::Plp(PlpValue::Top),
            DomainKind::Interval => Value::Interval(IntervalValue {
                lower: Rat::one(),
                upper: Rat::one(),
            }),
            DomainKind::Lifted(_) => Value::Lifted(LiftedValue::Top),
        }
    }

    /// Whether the domain declares `⊕`/`⊗` at all.
    pub fn has_algebra(&self) -> bool {
        !matches!(self.kind, DomainKind::Interval | DomainKind::Lifted(_))
    }

    /// Whether right cancellation holds on the whole carrier, not just on
    /// the restricted `Dom(⊗)`. Needed for noninteractivity to imply
    /// independence.
    pub fn satisfies_alg4_prime(&self) -> bool {
        matches!(
            self.kind,
            DomainKind::Probability | DomainKind::Ranking | DomainKind::PossibilityProd
        )
    }

    /// Whether `Dom(⊗)` is the whole carrier square, which lets the
    /// chain-product audits skip their membership scans.
    pub fn product_dom_is_total(&self) -> bool {
        matches!(
            self.kind,
            DomainKind::Probability | DomainKind::Ranking | DomainKind::PossibilityProd
        )
    }

    /// Checks the value lies in this carrier (including range constraints).
    pub fn validate(&self, v: &Value) -> Result<()> {
        let bad = || Error::CarrierMismatch {
            carrier: self.carrier_name(),
            value: v.to_string(),
        };
        match (&self.kind, v) {
            (DomainKind::Probability, Value::Prob(r)) => {
                crate::rational::in_unit_interval(r).then_some(()).ok_or_else(bad)
            }
            (DomainKind::Ranking, Value::Rank(_)) => Ok(()),
            (
                DomainKind::PossibilityMin | DomainKind::PossibilityProd,
                Value::Poss(r),
            ) => crate::rational::in_unit_interval(r).then_some(()).ok_or_else(bad),
            (DomainKind::Plp { indices }, Value::Plp(p)) => match p {
                PlpValue::Bot | PlpValue::Top => Ok(()),
                PlpValue::Vector(es) => (es.len() == indices.len())
                    .then_some(())
                    .ok_or_else(bad),
            },
            (DomainKind::Interval, Value::Interval(iv)) => {
                (iv.lower <= iv.upper
                    && crate::rational::in_unit_interval(&iv.lower)
                    && crate::rational::in_unit_interval(&iv.upper))
                .then_some(())
                .ok_or_else(bad)
            }
            (DomainKind::Lifted(inner), Value::Lifted(lv)) => match lv {
                LiftedValue::Bot | LiftedValue::Top => Ok(()),
                LiftedValue::Scaled { value, .. } => inner.validate(value),
            },
            _ => Err(bad()),
        }
    }

    /// The partial order of the carrier. Panics on cross-carrier input;
    /// callers validate values at construction boundaries.
    pub fn leq(&self, a: &Value, b: &Value) -> bool {
        match (&self.kind, a, b) {
            (DomainKind::Probability, Value::Prob(x), Value::Prob(y)) => x <= y,
            // reversed numeric order: more surprising is less plausible
            (DomainKind::Ranking, Value::Rank(x), Value::Rank(y)) => y.numeric_le(*x),
            (
                DomainKind::PossibilityMin | DomainKind::PossibilityProd,
                Value::Poss(x),
                Value::Poss(y),
            ) => x <= y,
            (DomainKind::Plp { .. }, Value::Plp(x), Value::Plp(y)) => plp_leq(x, y),
            (DomainKind::Interval, Value::Interval(x), Value::Interval(y)) => {
                x == y || x.upper <= y.lower
            }
            (DomainKind::Lifted(inner), Value::Lifted(x), Value::Lifted(y)) => {
                match (x, y) {
                    (LiftedValue::Bot, _) | (_, LiftedValue::Top) => true,
                    (
                        LiftedValue::Scaled { value: dx, given: vx },
                        LiftedValue::Scaled { value: dy, given: vy },
                    ) => vx == vy && inner.leq(dx, dy),
                    _ => false,
                }
            }
            _ => panic!(
                "cross-carrier comparison: {} vs {} in {}",
                a,
                b,
                self.carrier_name()
            ),
        }
    }

    pub fn lt(&self, a: &Value, b: &Value) -> bool {
        a != b && self.leq(a, b)
    }

    /// n-ary `⊕`. Total on each algebraic carrier except for family
    /// vectors with complementary undefined positions, which have no
    /// carrier representative.
    pub fn oplus(&self, vs: &[Value]) -> Result<Value> {
        if !self.has_algebra() {
            return Err(Error::NoAlgebra(self.carrier_name()));
        }
        if vs.is_empty() {
            return Ok(self.bot());
        }
        match &self.kind {
            DomainKind::Probability => {
                let sum: Rat = vs.iter().map(|v| v.as_prob().clone()).sum();
                Ok(Value::Prob(if sum > Rat::one() { Rat::one() } else { sum }))
            }
            DomainKind::Ranking => Ok(Value::Rank(
                vs.iter()
                    .map(|v| v.as_rank())
                    .fold(Rank::Infinite, Rank::numeric_min),
            )),
            DomainKind::PossibilityMin | DomainKind::PossibilityProd => {
                let mut acc = Rat::zero();
                for v in vs {
                    let r = v.as_poss();
                    if *r > acc {
                        acc = r.clone();
                    }
                }
                Ok(Value::Poss(acc))
            }
            DomainKind::Plp { indices } => plp_oplus(indices.len(), vs),
            _ => unreachable!(),
        }
    }

    /// Binary `⊗`. Total on each algebraic carrier.
    pub fn otimes(&self, a: &Value, b: &Value) -> Result<Value> {
        if !self.has_algebra() {
            return Err(Error::NoAlgebra(self.carrier_name()));
        }
        Ok(match &self.kind {
            DomainKind::Probability => Value::Prob(a.as_prob() * b.as_prob()),
            DomainKind::Ranking => Value::Rank(a.as_rank().plus(b.as_rank())),
            DomainKind::PossibilityMin => {
                Value::Poss(a.as_poss().min(b.as_poss()).clone())
            }
            DomainKind::PossibilityProd => Value::Poss(a.as_poss() * b.as_poss()),
            DomainKind::Plp { .. } => Value::Plp(plp_otimes(a.as_plp(), b.as_plp())),
            _ => unreachable!(),
        })
    }

    /// Membership in `Dom(⊕)`: the tuples on which the algebraic axioms
    /// quantify.
    pub fn in_dom_oplus(&self, vs: &[Value]) -> bool {
        if !self.has_algebra() {
            return false;
        }
        match &self.kind {
            DomainKind::Probability => {
                let sum: Rat = vs.iter().map(|v| v.as_prob().clone()).sum();
                sum <= Rat::one()
            }
            DomainKind::Ranking
            | DomainKind::PossibilityMin
            | DomainKind::PossibilityProd => true,
            DomainKind::Plp { .. } => plp_in_dom_oplus(vs),
            _ => unreachable!(),
        }
    }

    /// Membership in `Dom(⊗)`.
    pub fn in_dom_otimes(&self, a: &Value, b: &Value) -> bool {
        if !self.has_algebra() {
            return false;
        }
        match &self.kind {
            DomainKind::Probability | DomainKind::PossibilityProd | DomainKind::Ranking => true,
            // `a < b` or `a = 1` covers every pair realizable as
            // (Pl(U|V∩V'), Pl(V|V')); the `a = 0` row is added so the
            // bottom clauses of the network-compatibility conditions are
            // satisfied on the whole carrier.
            DomainKind::PossibilityMin => {
                let (x, y) = (a.as_poss(), b.as_poss());
                x < y || x.is_one() || x.is_zero()
            }
            DomainKind::Plp { .. } => plp_in_dom_otimes(a.as_plp(), b.as_plp()),
            _ => unreachable!(),
        }
    }

    /// Solves `x ⊗ divisor = product` for `x`, requiring `(x, divisor)` to
    /// lie in `Dom(⊗)`. Returns `None` when the divisor is bottom or no
    /// solution exists. The solution is unique whenever cancellation
    /// holds, which the network-compatibility audit verifies.
    pub fn solve_otimes(&self, product: &Value, divisor: &Value) -> Option<Value> {
        if !self.has_algebra() || *divisor == self.bot() {
            return None;
        }
        let candidate = match &self.kind {
            DomainKind::Probability => {
                let (p, c) = (product.as_prob(), divisor.as_prob());
                let q = p / c;
                (q <= Rat::one()).then_some(Value::Prob(q))
            }
            DomainKind::Ranking => product.as_rank().checked_sub(divisor.as_rank()).map(Value::Rank),
            DomainKind::PossibilityProd => {
                let (p, c) = (product.as_poss(), divisor.as_poss());
                let q = p / c;
                (q <= Rat::one()).then_some(Value::Poss(q))
            }
            DomainKind::PossibilityMin => {
                let (p, c) = (product.as_poss(), divisor.as_poss());
                if p < c {
                    Some(Value::Poss(p.clone()))
                } else if p == c {
                    Some(Value::Poss(Rat::one()))
                } else {
                    None
                }
            }
            DomainKind::Plp { .. } => {
                plp_solve(product.as_plp(), divisor.as_plp()).map(Value::Plp)
            }
            _ => unreachable!(),
        }?;
        let ok = self.otimes(&candidate, divisor).ok()? == *product
            && self.in_dom_otimes(&candidate, divisor);
        ok.then_some(candidate)
    }

    /// Candidate pairs for the richness search, per domain.
    pub fn richness_candidates(&self) -> Vec<(Value, Value)> {
        match &self.kind {
            DomainKind::Probability => {
                vec![(Value::Prob(rat(1, 2)), Value::Prob(rat(1, 2)))]
            }
            DomainKind::Ranking => vec![(
                Value::Rank(Rank::Finite(0)),
                Value::Rank(Rank::Finite(0)),
            )],
            DomainKind::PossibilityMin | DomainKind::PossibilityProd => {
                vec![(Value::Poss(Rat::one()), Value::Poss(Rat::one()))]
            }
            DomainKind::Plp { indices } => {
                let half = PlpValue::Vector(vec![Some(rat(1, 2)); indices.len()]);
                vec![(Value::Plp(half.clone()), Value::Plp(half))]
            }
            _ => vec![],
        }
    }

    /// A small deterministic grid of carrier values, used by the
    /// domain-level audits that quantify over values rather than events.
    pub fn grid_values(&self) -> Vec<Value> {
        match &self.kind {
            DomainKind::Probability => unit_grid().into_iter().map(Value::Prob).collect(),
            DomainKind::PossibilityMin | DomainKind::PossibilityProd => {
                unit_grid().into_iter().map(Value::Poss).collect()
            }
            DomainKind::Ranking => vec![
                Value::Rank(Rank::Finite(0)),
                Value::Rank(Rank::Finite(1)),
                Value::Rank(Rank::Finite(2)),
                Value::Rank(Rank::Finite(3)),
                Value::Rank(Rank::Finite(4)),
                Value::Rank(Rank::Infinite),
            ],
            DomainKind::Plp { indices } => plp_grid(indices.len()),
            DomainKind::Interval => {
                let mut out = Vec::new();
                for (a, b) in [
                    (rat(0, 1), rat(0, 1)),
                    (rat(0, 1), rat(1, 2)),
                    (rat(1, 4), rat(1, 2)),
                    (rat(1, 2), rat(1, 2)),
                    (rat(1, 2), rat(1, 1)),
                    (rat(0, 1), rat(1, 1)),
                    (rat(1, 1), rat(1, 1)),
                ] {
                    out.push(Value::Interval(IntervalValue { lower: a, upper: b }));
                }
                out
            }
            DomainKind::Lifted(_) => vec![self.bot(), self.top()],
        }
    }
}

fn unit_grid() -> Vec<Rat> {
    vec![
        Rat::zero(),
        rat(1, 4),
        rat(1, 3),
        rat(1, 2),
        rat(2, 3),
        rat(3, 4),
        Rat::one(),
    ]
}

fn plp_grid(k: usize) -> Vec<Value> {
    let mut out = vec![Value::Plp(PlpValue::Bot), Value::Plp(PlpValue::Top)];
    if 4usize.pow(k as u32) <= 256 {
        let choices = [Some(rat(0, 1)), Some(rat(1, 2)), Some(rat(1, 1)), None];
        let total = 4usize.pow(k as u32);
        for code in 0..total {
            let mut entries = Vec::with_capacity(k);
            let mut c = code;
            for _ in 0..k {
                entries.push(choices[c % 4].clone());
                c /= 4;
            }
            if let Ok(v) = PlpValue::vector(entries) {
                let v = Value::Plp(v);
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    } else {
        for r in unit_grid() {
            if let Ok(v) = PlpValue::vector(vec![Some(r); k]) {
                let v = Value::Plp(v);
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn plp_leq(a: &PlpValue, b: &PlpValue) -> bool {
    match (a, b) {
        (PlpValue::Bot, _) | (_, PlpValue::Top) => true,
        (PlpValue::Vector(xs), PlpValue::Vector(ys)) => {
            xs.iter().zip(ys).all(|(x, y)| match (x, y) {
                (None, None) => true,
                (Some(x), Some(y)) => x <= y,
                _ => false,
            })
        }
        _ => false,
    }
}

fn plp_oplus(k: usize, vs: &[Value]) -> Result<Value> {
    if vs.iter().any(|v| *v.as_plp() == PlpValue::Top) {
        return Ok(Value::Plp(PlpValue::Top));
    }
    let vecs: Vec<&Vec<Option<Rat>>> = vs
        .iter()
        .filter_map(|v| match v.as_plp() {
            PlpValue::Vector(es) => Some(es),
            _ => None,
        })
        .collect();
    if vecs.is_empty() {
        return Ok(Value::Plp(PlpValue::Bot));
    }
    let mut entries: Vec<Option<Rat>> = Vec::with_capacity(k);
    for i in 0..k {
        if vecs.iter().any(|es| es[i].is_none()) {
            entries.push(None);
        } else {
            let sum: Rat = vecs.iter().map(|es| es[i].clone().unwrap()).sum();
            entries.push(Some(if sum > Rat::one() { Rat::one() } else { sum }));
        }
    }
    if entries.iter().all(|e| e.is_none()) {
        return Err(Error::Unsupported(
            "family ⊕ of vectors with complementary undefined positions leaves the carrier"
                .into(),
        ));
    }
    Ok(Value::Plp(PlpValue::vector(entries)?))
}

fn plp_otimes(a: &PlpValue, b: &PlpValue) -> PlpValue {
    match (a, b) {
        (PlpValue::Top, x) | (x, PlpValue::Top) => x.clone(),
        (PlpValue::Bot, _) | (_, PlpValue::Bot) => PlpValue::Bot,
        (PlpValue::Vector(xs), PlpValue::Vector(ys)) => {
            let entries: Vec<Option<Rat>> = xs
                .iter()
                .zip(ys)
                .map(|(x, y)| match (x, y) {
                    (None, None) => None,
                    // `* × a = a × * = 0` for defined `a`
                    (None, Some(_)) | (Some(_), None) => Some(Rat::zero()),
                    (Some(x), Some(y)) => Some(x * y),
                })
                .collect();
            PlpValue::vector(entries).expect("family ⊗ stays in the carrier")
        }
    }
}

fn plp_in_dom_oplus(vs: &[Value]) -> bool {
    let plps: Vec<&PlpValue> = vs.iter().map(|v| v.as_plp()).collect();
    // one top and the rest bottom
    let tops = plps.iter().filter(|p| ***p == PlpValue::Top).count();
    if tops == 1 && plps.iter().all(|p| matches!(p, PlpValue::Top | PlpValue::Bot)) {
        return true;
    }
    if tops > 0 {
        return false;
    }
    let vecs: Vec<&Vec<Option<Rat>>> = plps
        .iter()
        .filter_map(|p| match p {
            PlpValue::Vector(es) => Some(es),
            _ => None,
        })
        .collect();
    if let Some(first) = vecs.first() {
        // matching undefined positions across all non-bottom members
        for es in &vecs[1..] {
            if es.len() != first.len() {
                return false;
            }
            for i in 0..first.len() {
                if first[i].is_none() != es[i].is_none() {
                    return false;
                }
            }
        }
        // defined entries sum to at most one at every index
        for i in 0..first.len() {
            let sum: Rat = vecs.iter().filter_map(|es| es[i].clone()).sum();
            if sum > Rat::one() {
                return false;
            }
        }
    }
    true
}

fn plp_in_dom_otimes(a: &PlpValue, b: &PlpValue) -> bool {
    match (a, b) {
        (PlpValue::Vector(f), PlpValue::Vector(g)) => f
            .iter()
            .zip(g)
            .all(|(fi, gi)| {
                let g_zero_or_star = gi.is_none() || matches!(gi, Some(r) if r.is_zero());
                fi.is_none() == g_zero_or_star
            }),
        // either argument a distinguished constant
        _ => true,
    }
}

fn plp_solve(product: &PlpValue, divisor: &PlpValue) -> Option<PlpValue> {
    if *divisor == PlpValue::Bot {
        return None;
    }
    if *product == PlpValue::Bot {
        return Some(PlpValue::Bot);
    }
    if product == divisor {
        return Some(PlpValue::Top);
    }
    if *divisor == PlpValue::Top {
        return Some(product.clone());
    }
    let (PlpValue::Vector(p), PlpValue::Vector(g)) = (product, divisor) else {
        return None;
    };
    let mut entries = Vec::with_capacity(p.len());
    for (pi, gi) in p.iter().zip(g) {
        match gi {
            None => {
                if pi.is_some() {
                    return None;
                }
                entries.push(None);
            }
            Some(c) if c.is_zero() => {
                if !matches!(pi, Some(x) if x.is_zero()) {
                    return None;
                }
                entries.push(None);
            }
            Some(c) => {
                let a = pi.as_ref()?;
                let q = a / c;
                if q > Rat::one() {
                    return None;
                }
                entries.push(Some(q));
            }
        }
    }
    PlpValue::vector(entries).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn plp3() -> DomainSpec {
        DomainSpec::plp(&["a", "b", "c"]).unwrap()
    }

    fn pv(entries: &[Option<(i64, i64)>]) -> Value {
        Value::Plp(
            PlpValue::vector(
                entries
                    .iter()
                    .map(|e| e.map(|(n, d)| rat(n, d)))
                    .collect(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn family_halves_with_matching_stars_join_to_top() {
        let d = plp3();
        let half = pv(&[Some((1, 2)), None, Some((1, 2))]);
        assert!(d.in_dom_oplus(&[half.clone(), half.clone()]));
        assert_eq!(d.oplus(&[half.clone(), half]).unwrap(), d.top());
    }

    #[test]
    fn possibility_min_dom_restriction() {
        let d = DomainSpec::possibility_min();
        let half = Value::Poss(rat(1, 2));
        let third = Value::Poss(rat(1, 3));
        let one = Value::Poss(rat(1, 1));
        assert!(!d.in_dom_otimes(&half, &third));
        assert!(d.in_dom_otimes(&one, &third));
        assert!(d.in_dom_otimes(&third, &half));
    }

    #[test]
    fn ranking_ops_are_min_and_plus_under_the_reversed_order() {
        let d = DomainSpec::ranking();
        let three = Value::Rank(Rank::Finite(3));
        let two = Value::Rank(Rank::Finite(2));
        assert_eq!(d.otimes(&three, &two).unwrap(), Value::Rank(Rank::Finite(5)));
        assert_eq!(
            d.oplus(&[three.clone(), two.clone()]).unwrap(),
            Value::Rank(Rank::Finite(2))
        );
        // 2 is less surprising, hence more plausible
        assert!(d.leq(&three, &two));
        assert!(!d.leq(&two, &three));
        assert_eq!(d.bot(), Value::Rank(Rank::Infinite));
    }

    #[test]
    fn family_division_examples() {
        let d = DomainSpec::plp(&["a", "b"]).unwrap();
        let quarter = pv(&[Some((1, 4)), None]);
        let half = pv(&[Some((1, 2)), None]);
        assert_eq!(d.solve_otimes(&quarter, &half), Some(pv(&[Some((1, 2)), None])));
        assert_eq!(d.solve_otimes(&quarter, &d.top()), Some(quarter.clone()));
        let no_div = pv(&[Some((1, 4)), Some((1, 8))]);
        assert_eq!(d.solve_otimes(&no_div, &d.bot()), None);
    }

    #[test]
    fn family_star_product_rules_make_distributivity_work() {
        let d = plp3();
        let half = pv(&[Some((1, 2)), None, Some((1, 2))]);
        for (a, b) in [((1, 3), (2, 3)), ((0, 1), (1, 1)), ((1, 4), (1, 5))] {
            // undefined times zero must be zero …
            let target = pv(&[Some(a), Some((0, 1)), Some(b)]);
            let prod = d.otimes(&half, &target).unwrap();
            let sum = d.oplus(&[prod.clone(), prod]).unwrap();
            assert_eq!(sum, target);
            // … and undefined times undefined must stay undefined
            let starred = pv(&[Some(a), None, Some(b)]);
            let prod = d.otimes(&half, &starred).unwrap();
            let sum = d.oplus(&[prod.clone(), prod]).unwrap();
            assert_eq!(sum, starred);
        }
    }

    #[test]
    fn division_round_trips_on_every_algebraic_domain() {
        for d in [
            DomainSpec::probability(),
            DomainSpec::ranking(),
            DomainSpec::possibility_min(),
            DomainSpec::possibility_prod(),
            plp3(),
        ] {
            let grid = d.grid_values();
            for a in &grid {
                for c in &grid {
                    if *c == d.bot() || !d.in_dom_otimes(a, c) {
                        continue;
                    }
                    let p = d.otimes(a, c).unwrap();
                    let solved = d.solve_otimes(&p, c).unwrap_or_else(|| {
                        panic!("no solution for {p} / {c} on {}", d.carrier_name())
                    });
                    assert_eq!(
                        d.otimes(&solved, c).unwrap(),
                        p,
                        "bad division on {}",
                        d.carrier_name()
                    );
                }
            }
        }
    }

    #[test]
    fn order_only_domains_reject_algebra_calls() {
        let d = DomainSpec::interval();
        assert!(!d.has_algebra());
        assert!(d.oplus(&[d.bot()]).is_err());
        assert!(d.otimes(&d.bot(), &d.top()).is_err());
        assert!(!d.in_dom_otimes(&d.bot(), &d.top()));
        assert_eq!(d.solve_otimes(&d.bot(), &d.top()), None);
    }

    #[test]
    fn interval_order_is_upper_below_lower_or_equality() {
        let d = DomainSpec::interval();
        let narrow = Value::Interval(IntervalValue::new(rat(1, 4), rat(1, 3)).unwrap());
        let high = Value::Interval(IntervalValue::new(rat(1, 2), rat(3, 4)).unwrap());
        assert!(d.leq(&narrow, &high));
        assert!(!d.leq(&high, &narrow));
        assert!(d.leq(&narrow, &narrow));
        let overlap = Value::Interval(IntervalValue::new(rat(1, 4), rat(2, 3)).unwrap());
        assert!(!d.leq(&overlap, &high) && !d.leq(&high, &overlap));
    }
}
