//! Seeded generators for randomized audits and trials.
//!
//! A hand-rolled SplitMix64 keeps every sampled audit reproducible across
//! platforms and dependency upgrades; determinism of the structured
//! reports is part of the contract.

use crate::bayesnet::{Cpt, Dag, QuantitativeBn};
use crate::conditioning;
use crate::cps::Cps;
use crate::domain::{DomainKind, DomainSpec};
use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::rational::{rat, Rat};
use crate::value::{PlpValue, Rank, Value};
use crate::worlds::Worlds;

#[derive(Debug, Clone)]
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            xs.swap(i, j);
        }
    }
}

fn var_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("X{}", i + 1)).collect()
}

pub fn binary_worlds(n_vars: usize) -> Worlds {
    Worlds::binary(&var_names(n_vars))
}

/// Random probability measure; zero weights exercise the partiality of
/// conditioning.
pub fn random_probability(worlds: Worlds, seed: u64, allow_zeros: bool) -> Measure {
    let mut rng = SplitMix::new(seed ^ 0x9b0b);
    let n = worlds.len();
    loop {
        let raw: Vec<u64> = (0..n)
            .map(|_| {
                if allow_zeros && rng.chance(1, 4) {
                    0
                } else {
                    rng.below(8) + 1
                }
            })
            .collect();
        let total: u64 = raw.iter().sum();
        if total == 0 {
            continue;
        }
        let weights = raw.iter().map(|&k| rat(k as i64, total as i64)).collect();
        return Measure::probability(worlds, weights).expect("normalized weights");
    }
}

pub fn random_ranking(worlds: Worlds, seed: u64) -> Measure {
    let mut rng = SplitMix::new(seed ^ 0x4a2b);
    let n = worlds.len();
    let mut ranks: Vec<Rank> = (0..n)
        .map(|_| {
            if rng.chance(1, 8) {
                Rank::Infinite
            } else {
                Rank::Finite(rng.below(4))
            }
        })
        .collect();
    if !ranks.contains(&Rank::Finite(0)) {
        let i = rng.below(n as u64) as usize;
        ranks[i] = Rank::Finite(0);
    }
    Measure::ranking(worlds, ranks).expect("normalized ranks")
}

pub fn random_possibility(worlds: Worlds, seed: u64) -> Measure {
    let mut rng = SplitMix::new(seed ^ 0x905);
    let n = worlds.len();
    let mut weights: Vec<Rat> = (0..n).map(|_| rat(rng.below(9) as i64, 8)).collect();
    let i = rng.below(n as u64) as usize;
    weights[i] = rat(1, 1);
    Measure::possibility(worlds, weights).expect("normalized possibilities")
}

pub fn random_family(
    worlds: Worlds,
    members: usize,
    seed: u64,
    strictly_positive: bool,
) -> Measure {
    let mut rng = SplitMix::new(seed ^ 0xfa31);
    let labels: Vec<String> = (0..members).map(|i| format!("m{i}")).collect();
    let data: Vec<Vec<Rat>> = (0..members)
        .map(|i| {
            let m = random_probability(worlds.clone(), rng.next_u64() ^ i as u64, !strictly_positive);
            match m.data() {
                crate::measure::MeasureData::Probability(w) => w.clone(),
                _ => unreachable!(),
            }
        })
        .collect();
    Measure::family(worlds, &labels, data).expect("valid family")
}

/// A random measure of the kind matching the domain, extended to a space
/// by the domain's conditioning construction.
pub fn random_builtin_cps(domain: &DomainSpec, worlds: Worlds, seed: u64) -> Result<Cps> {
    match domain.kind() {
        DomainKind::Probability => {
            conditioning::extend_probability(&random_probability(worlds, seed, true))
        }
        DomainKind::Ranking => conditioning::extend_ranking(&random_ranking(worlds, seed)),
        DomainKind::PossibilityMin => conditioning::extend_possibility(
            &random_possibility(worlds, seed),
            conditioning::PossVariant::Min,
        ),
        DomainKind::PossibilityProd => conditioning::extend_possibility(
            &random_possibility(worlds, seed),
            conditioning::PossVariant::Prod,
        ),
        DomainKind::Plp { indices } => {
            conditioning::extend_plp(&random_family(worlds, indices.len(), seed, false))
        }
        _ => Err(Error::Unsupported(format!(
            "no conditioning construction for the {} domain",
            domain.carrier_name()
        ))),
    }
}

/// A measure over binary variables built as an independent product across
/// a random block partition of the variables. Blocks are independent by
/// construction, so variable-set independencies genuinely hold — the
/// semi-graphoid sampler needs antecedents that fire nontrivially.
pub fn random_block_structured(domain: &DomainSpec, n_vars: usize, seed: u64) -> Result<Cps> {
    let mut rng = SplitMix::new(seed ^ 0xb10c);
    let worlds = binary_worlds(n_vars);
    let n_worlds = 1usize << n_vars;

    // random partition of variable indices
    let mut vars: Vec<usize> = (0..n_vars).collect();
    rng.shuffle(&mut vars);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    for v in vars {
        cur.push(v);
        if rng.chance(1, 2) {
            blocks.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        blocks.push(cur);
    }

    let block_value = |rng: &mut SplitMix, size: usize| -> Vec<u64> {
        (0..1usize << size).map(|_| rng.below(7) + 1).collect()
    };

    let project = |w: usize, block: &[usize]| -> usize {
        block
            .iter()
            .enumerate()
            .map(|(j, &v)| ((w >> v) & 1) << j)
            .sum()
    };

    match domain.kind() {
        DomainKind::Probability => {
            let tables: Vec<(Vec<u64>, u64)> = blocks
                .iter()
                .map(|b| {
                    let t = block_value(&mut rng, b.len());
                    let s = t.iter().sum();
                    (t, s)
                })
                .collect();
            let weights: Vec<Rat> = (0..n_worlds)
                .map(|w| {
                    let mut acc = rat(1, 1);
                    for (b, (t, s)) in blocks.iter().zip(&tables) {
                        acc *= rat(t[project(w, b)] as i64, *s as i64);
                    }
                    acc
                })
                .collect();
            conditioning::extend_probability(
                &Measure::probability(worlds, weights).expect("product weights"),
            )
        }
        DomainKind::Ranking => {
            let tables: Vec<Vec<u64>> = blocks
                .iter()
                .map(|b| {
                    let mut t: Vec<u64> =
                        (0..1usize << b.len()).map(|_| rng.below(3)).collect();
                    if !t.contains(&0) {
                        t[0] = 0;
                    }
                    t
                })
                .collect();
            let ranks: Vec<Rank> = (0..n_worlds)
                .map(|w| {
                    let total: u64 = blocks
                        .iter()
                        .zip(&tables)
                        .map(|(b, t)| t[project(w, b)])
                        .sum();
                    Rank::Finite(total)
                })
                .collect();
            conditioning::extend_ranking(&Measure::ranking(worlds, ranks).expect("sum ranks"))
        }
        DomainKind::PossibilityMin | DomainKind::PossibilityProd => {
            let tables: Vec<Vec<u64>> = blocks
                .iter()
                .map(|b| {
                    let mut t: Vec<u64> =
                        (0..1usize << b.len()).map(|_| rng.below(8) + 1).collect();
                    let i = rng.below(t.len() as u64) as usize;
                    t[i] = 8;
                    t
                })
                .collect();
            let weights: Vec<Rat> = (0..n_worlds)
                .map(|w| {
                    let mut acc = rat(1, 1);
                    for (b, t) in blocks.iter().zip(&tables) {
                        acc *= rat(t[project(w, b)] as i64, 8);
                    }
                    acc
                })
                .collect();
            let m = Measure::possibility(worlds, weights).expect("product possibilities");
            let variant = if matches!(domain.kind(), DomainKind::PossibilityMin) {
                conditioning::PossVariant::Min
            } else {
                conditioning::PossVariant::Prod
            };
            conditioning::extend_possibility(&m, variant)
        }
        DomainKind::Plp { indices } => {
            let labels: Vec<String> = indices.to_vec();
            let members: Vec<Vec<Rat>> = (0..labels.len())
                .map(|_| {
                    let tables: Vec<(Vec<u64>, u64)> = blocks
                        .iter()
                        .map(|b| {
                            let t = block_value(&mut rng, b.len());
                            let s = t.iter().sum();
                            (t, s)
                        })
                        .collect();
                    (0..n_worlds)
                        .map(|w| {
                            let mut acc = rat(1, 1);
                            for (b, (t, s)) in blocks.iter().zip(&tables) {
                                acc *= rat(t[project(w, b)] as i64, *s as i64);
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            conditioning::extend_plp(
                &Measure::family(worlds, &labels, members).expect("product family"),
            )
        }
        _ => Err(Error::Unsupported(format!(
            "no conditioning construction for the {} domain",
            domain.carrier_name()
        ))),
    }
}

/// Random dag: a shuffled topological order with independent edges.
pub fn random_dag(n: usize, seed: u64, edge_num: u64, edge_den: u64) -> Dag {
    let mut rng = SplitMix::new(seed ^ 0xda6);
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let names = var_names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.chance(edge_num, edge_den) {
                edges.push((names[order[i]].clone(), names[order[j]].clone()));
            }
        }
    }
    let edge_refs: Vec<(&str, &str)> =
        edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Dag::new(&names, &edge_refs).expect("order-respecting edges are acyclic")
}

/// Random conditional tables satisfying the row-normalization condition,
/// resampled until the whole network passes the representability audit.
/// The min-possibility carrier gets its own sampling scheme: its
/// restricted product domain must admit the table entries in every
/// topological order, which confines nontrivial values to a single node
/// (or to the two-point scale).
pub fn random_representable_bn(dag: &Dag, domain: &DomainSpec, seed: u64) -> Result<QuantitativeBn> {
    let mut rng = SplitMix::new(seed ^ 0xb6e7);
    for _attempt in 0..50 {
        let bn = candidate_bn(dag, domain, &mut rng)?;
        let reports = crate::bayesnet::check_representable(&bn)?;
        if reports.iter().all(|r| r.holds) {
            return Ok(bn);
        }
    }
    Err(Error::Unsupported(format!(
        "failed to sample a representable network over the {} domain",
        domain.carrier_name()
    )))
}

fn candidate_bn(dag: &Dag, domain: &DomainSpec, rng: &mut SplitMix) -> Result<QuantitativeBn> {
    let n = dag.len();
    if matches!(domain.kind(), DomainKind::PossibilityMin) {
        return candidate_possmin_bn(dag, domain, rng);
    }
    let mut tables = Vec::with_capacity(n);
    for x in 0..n {
        let parents = dag.parents(x).to_vec();
        let rows = 1usize << parents.len();
        let mut entries = Vec::with_capacity(rows);
        for _ in 0..rows {
            entries.push(random_row(domain, rng)?);
        }
        tables.push(Cpt { node: x, parents, rows: entries });
    }
    Ok(QuantitativeBn { dag: dag.clone(), tables, domain: domain.clone() })
}

/// Min-possibility tables: either every entry is zero or one (products
/// stay on the two-point scale, which the product domain accepts in any
/// order), or a single designated node carries interior values while the
/// rest stay vacuous.
fn candidate_possmin_bn(
    dag: &Dag,
    domain: &DomainSpec,
    rng: &mut SplitMix,
) -> Result<QuantitativeBn> {
    let n = dag.len();
    let analog = rng.chance(1, 2).then(|| rng.below(n as u64) as usize);
    let one = || Value::Poss(rat(1, 1));
    let zero = || Value::Poss(rat(0, 1));
    let mut tables = Vec::with_capacity(n);
    for x in 0..n {
        let parents = dag.parents(x).to_vec();
        let rows = 1usize << parents.len();
        let mut entries = Vec::with_capacity(rows);
        for _ in 0..rows {
            let row = match analog {
                Some(a) if a == x => {
                    let side = Value::Poss(rat(rng.below(7) as i64 + 1, 8));
                    if rng.chance(1, 2) {
                        [one(), side]
                    } else {
                        [side, one()]
                    }
                }
                Some(_) => [one(), one()],
                None => match rng.below(3) {
                    0 => [one(), zero()],
                    1 => [zero(), one()],
                    _ => [one(), one()],
                },
            };
            entries.push(row);
        }
        tables.push(Cpt { node: x, parents, rows: entries });
    }
    Ok(QuantitativeBn { dag: dag.clone(), tables, domain: domain.clone() })
}

fn random_row(domain: &DomainSpec, rng: &mut SplitMix) -> Result<[Value; 2]> {
    Ok(match domain.kind() {
        DomainKind::Probability => {
            let k = rng.below(9);
            [Value::Prob(rat(k as i64, 8)), Value::Prob(rat(8 - k as i64, 8))]
        }
        DomainKind::Ranking => {
            let k = if rng.chance(1, 6) {
                Rank::Infinite
            } else {
                Rank::Finite(rng.below(3) + 1)
            };
            if rng.chance(1, 2) {
                [Value::Rank(Rank::Finite(0)), Value::Rank(k)]
            } else {
                [Value::Rank(k), Value::Rank(Rank::Finite(0))]
            }
        }
        DomainKind::PossibilityProd => {
            let k = rng.below(9);
            if rng.chance(1, 2) {
                [Value::Poss(rat(1, 1)), Value::Poss(rat(k as i64, 8))]
            } else {
                [Value::Poss(rat(k as i64, 8)), Value::Poss(rat(1, 1))]
            }
        }
        // interior entries keep every chain product inside the family
        // product domain regardless of order
        DomainKind::Plp { indices } => {
            let k = indices.len();
            let mut zero = Vec::with_capacity(k);
            let mut one = Vec::with_capacity(k);
            for _ in 0..k {
                let v = rng.below(7) + 1;
                zero.push(Some(rat(v as i64, 8)));
                one.push(Some(rat(8 - v as i64, 8)));
            }
            [
                Value::Plp(PlpValue::vector(zero)?),
                Value::Plp(PlpValue::vector(one)?),
            ]
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "cannot sample tables over the {} domain",
                domain.carrier_name()
            )))
        }
    })
}
