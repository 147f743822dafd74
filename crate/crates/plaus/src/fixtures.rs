//! Canonical example spaces used by the demos and the acceptance suite.

use std::collections::BTreeMap;

use crate::cps::Cps;
use crate::domain::DomainSpec;
use crate::measure::Measure;
use crate::rational::rat;
use crate::value::Value;
use crate::worlds::Worlds;

/// Three worlds, two measures: one concentrated on `c`, the other split
/// 2:1 over `a` and `b`. Lenient lower-probability conditioning on this
/// family violates coherence, and no join operation exists for the
/// lower/upper representation.
pub fn three_world_family() -> Measure {
    let w = Worlds::labeled(&["a", "b", "c"]);
    Measure::family(
        w,
        &["mu", "mu'"],
        vec![
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
            vec![rat(2, 3), rat(1, 3), rat(0, 1)],
        ],
    )
    .expect("family is well-formed")
}

/// A coin known to be double-headed or double-tailed, tossed twice.
/// Worlds are `(X1, X2)` with heads encoded as one. Type-1 independence
/// and noninteractivity hold, family independence does not.
pub fn double_coin_family() -> Measure {
    let w = Worlds::binary(&["X1", "X2"]);
    let mut heads = vec![rat(0, 1); 4];
    heads[3] = rat(1, 1);
    let mut tails = vec![rat(0, 1); 4];
    tails[0] = rat(1, 1);
    Measure::family(w, &["m0", "m1"], vec![heads, tails]).expect("family is well-formed")
}

/// The same coin with heads probability 99/100 or 1/100 instead of one
/// and zero: type-1 independence persists and family independence is
/// restored.
pub fn near_deterministic_coin_family() -> Measure {
    let w = Worlds::binary(&["X1", "X2"]);
    let member = |p: crate::rational::Rat| -> Vec<crate::rational::Rat> {
        let q = rat(1, 1) - p.clone();
        vec![
            q.clone() * q.clone(),
            p.clone() * q.clone(),
            q * p.clone(),
            p.clone() * p,
        ]
    };
    Measure::family(
        w,
        &["hi", "lo"],
        vec![member(rat(99, 100)), member(rat(1, 100))],
    )
    .expect("family is well-formed")
}

/// An explicit conditional probability table over two worlds with
/// `μ(a) = 1`, `μ(b) = 0`, but `μ(·|{b})` defined as the point mass on
/// `b`. Algebraic yet nonstandard: `{b}` does not interact with itself
/// but is not independent of itself.
pub fn nonstandard_two_world_cps() -> Cps {
    let w = Worlds::labeled(&["a", "b"]);
    let d = DomainSpec::probability();
    let full = w.full_event();
    let a = w.singleton(0);
    let b = w.singleton(1);
    let mut table = BTreeMap::new();
    for (v, weights) in [
        (full.clone(), [rat(1, 1), rat(0, 1)]),
        (a.clone(), [rat(1, 1), rat(0, 1)]),
        (b.clone(), [rat(0, 1), rat(1, 1)]),
    ] {
        for mask in 0u64..4 {
            let u = crate::worlds::Event::from_mask(2, mask);
            let mut p = rat(0, 1);
            for (wi, wt) in weights.iter().enumerate() {
                if u.contains(wi) {
                    p += wt.clone();
                }
            }
            table.insert((u, v.clone()), Value::Prob(p));
        }
    }
    Cps::explicit(w, d, vec![full, a, b], table).expect("table is complete")
}

/// Five worlds and two measures arranged so that two disjoint pairs of
/// singletons have equal lower/upper intervals while their unions do not:
/// the join-obstruction instance for lower/upper probability.
pub fn interval_join_obstruction_family() -> Measure {
    let w = Worlds::labeled(&["w1", "w2", "w3", "w4", "w5"]);
    Measure::family(
        w,
        &["mu1", "mu2"],
        vec![
            vec![rat(2, 20), rat(4, 20), rat(3, 20), rat(3, 20), rat(8, 20)],
            vec![rat(4, 20), rat(2, 20), rat(5, 20), rat(5, 20), rat(4, 20)],
        ],
    )
    .expect("family is well-formed")
}

/// The two-coin-toss family with unknown bias, represented over a finite
/// grid of bias values: member `α` gives heads probability `α`
/// independently per toss. Worlds are `(X1, X2)` with heads as one.
pub fn bias_grid_coin_family(grid: &[(i64, i64)]) -> Measure {
    let w = Worlds::binary(&["X1", "X2"]);
    let labels: Vec<String> = grid.iter().map(|(n, d)| format!("a{n}_{d}")).collect();
    let members: Vec<Vec<crate::rational::Rat>> = grid
        .iter()
        .map(|&(n, d)| {
            let p = rat(n, d);
            let q = rat(1, 1) - p.clone();
            vec![
                q.clone() * q.clone(),
                p.clone() * q.clone(),
                q * p.clone(),
                p.clone() * p,
            ]
        })
        .collect();
    Measure::family(w, &labels, members).expect("family is well-formed")
}
