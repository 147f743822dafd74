//! Qualitative and quantitative Bayesian networks over algebraic
//! plausibility domains: d-separation (twice — a reference trail
//! enumeration and a linear-time reachability pass, which must agree),
//! compatibility, structure construction from a variable ordering,
//! representability, unique reconstruction of the measure from the
//! tables, and the completeness counterexample generator.
//!
//! Variables are binary throughout; node `i` of a graph is variable `i`
//! of the world space.

use std::collections::VecDeque;

use crate::audit::{AuditOptions, AxiomId, AxiomReport, Witness};
use crate::cps::{Cps, CpsKind};
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::exec::map_ordered;
use crate::gen::SplitMix;
use crate::independence::{indep_rv_memo, MemoPl};
use crate::value::Value;
use crate::worlds::Worlds;

/// A directed acyclic graph over named binary variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    names: Vec<String>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Dag {
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let index = |name: &str| -> Result<usize> {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))
        };
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            idx_edges.push((index(a)?, index(b)?));
        }
        Dag::from_indices(names, idx_edges)
    }

    pub fn from_indices(names: Vec<String>, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = names.len();
        edges.sort_unstable();
        edges.dedup();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVariable(format!("#{}", a.max(b))));
            }
            if a == b {
                return Err(Error::CyclicGraph);
            }
            parents[b].push(a);
            children[a].push(b);
        }
        for p in &mut parents {
            p.sort_unstable();
        }
        for c in &mut children {
            c.sort_unstable();
        }
        let dag = Dag { names, parents, children, edges };
        // Kahn's algorithm doubles as the acyclicity check
        if dag.try_topological_order().is_none() {
            return Err(Error::CyclicGraph);
        }
        Ok(dag)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.children[a].binary_search(&b).is_ok()
    }

    /// Descendants of `i`, including `i` itself.
    pub fn descendants(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([i]);
        seen[i] = true;
        while let Some(v) = queue.pop_front() {
            for &c in &self.children[v] {
                if !seen[c] {
                    seen[c] = true;
                    queue.push_back(c);
                }
            }
        }
        (0..self.len()).filter(|&v| seen[v]).collect()
    }

    /// Everything outside the descendant set (which excludes `i`).
    pub fn nondescendants(&self, i: usize) -> Vec<usize> {
        let des = self.descendants(i);
        (0..self.len()).filter(|v| !des.contains(v)).collect()
    }

    fn try_topological_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut indeg: Vec<usize> = (0..n).map(|i| self.parents[i].len()).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&i) = ready.iter().next() {
            ready.remove(&i);
            order.push(i);
            for &c in &self.children[i] {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Deterministic topological order (smallest index first among ready
    /// nodes).
    pub fn topological_order(&self) -> Vec<usize> {
        self.try_topological_order().expect("graph is acyclic by construction")
    }

    pub fn binary_worlds(&self) -> Worlds {
        Worlds::binary(&self.names)
    }
}

fn validate_query(dag: &Dag, x: &[usize], y: &[usize], z: &[usize]) -> Result<()> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::BadQuery("query sides must be nonempty".into()));
    }
    for &v in x.iter().chain(y).chain(z) {
        if v >= dag.len() {
            return Err(Error::UnknownVariable(format!("#{v}")));
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for &v in x.iter().chain(y).chain(z) {
        if !seen.insert(v) {
            return Err(Error::OverlappingSets(format!("variable {v} appears twice")));
        }
    }
    Ok(())
}

/// d-separation by reachability: linear-time, the production
/// implementation. Walks (node, direction) states; a trail may pass
/// through a collider only when the collider has a descendant inside the
/// conditioning set.
pub fn d_separated(dag: &Dag, x: &[usize], y: &[usize], z: &[usize]) -> Result<bool> {
    validate_query(dag, x, y, z)?;
    let n = dag.len();
    let in_z = {
        let mut b = vec![false; n];
        for &v in z {
            b[v] = true;
        }
        b
    };
    // ancestors of the conditioning set, including it
    let mut anc = in_z.clone();
    let mut queue: VecDeque<usize> = z.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for &p in dag.parents(v) {
            if !anc[p] {
                anc[p] = true;
                queue.push_back(p);
            }
        }
    }
    let target = {
        let mut b = vec![false; n];
        for &v in y {
            b[v] = true;
        }
        b
    };
    // direction: false = entered against an edge (from a child),
    // true = entered along an edge (from a parent)
    let mut visited = vec![[false; 2]; n];
    let mut queue: VecDeque<(usize, bool)> = x.iter().map(|&v| (v, false)).collect();
    while let Some((v, down)) = queue.pop_front() {
        if visited[v][down as usize] {
            continue;
        }
        visited[v][down as usize] = true;
        if target[v] {
            return Ok(false);
        }
        if !down {
            if !in_z[v] {
                for &p in dag.parents(v) {
                    queue.push_back((p, false));
                }
                for &c in dag.children(v) {
                    queue.push_back((c, true));
                }
            }
        } else {
            if !in_z[v] {
                for &c in dag.children(v) {
                    queue.push_back((c, true));
                }
            }
            if anc[v] {
                for &p in dag.parents(v) {
                    queue.push_back((p, false));
                }
            }
        }
    }
    Ok(true)
}

/// Reference d-separation: enumerate every simple trail between the two
/// sides and check that some interior node blocks it. Exponential, for
/// cross-checking the reachability implementation.
pub fn d_separated_trails(dag: &Dag, x: &[usize], y: &[usize], z: &[usize]) -> Result<bool> {
    validate_query(dag, x, y, z)?;
    let in_z = {
        let mut b = vec![false; dag.len()];
        for &v in z {
            b[v] = true;
        }
        b
    };
    let des_hits_z: Vec<bool> = (0..dag.len())
        .map(|v| dag.descendants(v).iter().any(|&d| in_z[d]))
        .collect();
    for &s in x {
        for &t in y {
            let mut trail = vec![s];
            let mut on_trail = vec![false; dag.len()];
            on_trail[s] = true;
            if trail_search(dag, t, &mut trail, &mut on_trail, &in_z, &des_hits_z) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn trail_blocked(dag: &Dag, trail: &[usize], in_z: &[bool], des_hits_z: &[bool]) -> bool {
    for i in 1..trail.len() - 1 {
        let (prev, cur, next) = (trail[i - 1], trail[i], trail[i + 1]);
        let collider = dag.has_edge(prev, cur) && dag.has_edge(next, cur);
        let blocked = if collider { !des_hits_z[cur] } else { in_z[cur] };
        if blocked {
            return true;
        }
    }
    false
}

fn trail_search(
    dag: &Dag,
    goal: usize,
    trail: &mut Vec<usize>,
    on_trail: &mut Vec<bool>,
    in_z: &[bool],
    des_hits_z: &[bool],
) -> bool {
    let cur = *trail.last().unwrap();
    if cur == goal {
        return !trail_blocked(dag, trail, in_z, des_hits_z);
    }
    let neighbors: Vec<usize> = dag
        .parents(cur)
        .iter()
        .chain(dag.children(cur))
        .copied()
        .collect();
    for next in neighbors {
        if on_trail[next] {
            continue;
        }
        trail.push(next);
        on_trail[next] = true;
        let found = trail_search(dag, goal, trail, on_trail, in_z, des_hits_z);
        trail.pop();
        on_trail[next] = false;
        if found {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Compatibility and construction

/// The first node (by index) that is not independent of its
/// nondescendants given its parents, or `None` when the graph is
/// compatible with the space.
pub fn incompatible_node(cps: &Cps, dag: &Dag) -> Result<Option<usize>> {
    let n = cps
        .worlds()
        .var_count()
        .ok_or_else(|| Error::Unsupported("worlds carry no variable structure".into()))?;
    if n != dag.len() {
        return Err(Error::Unsupported(format!(
            "graph has {} nodes, space has {n} variables",
            dag.len()
        )));
    }
    let mp = MemoPl::new(cps);
    for v in 0..n {
        let parents = dag.parents(v);
        let rest: Vec<usize> = dag
            .nondescendants(v)
            .into_iter()
            .filter(|u| !parents.contains(u))
            .collect();
        if !indep_rv_memo(&mp, &[v], &rest, parents) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

pub fn compatible(cps: &Cps, dag: &Dag) -> Result<bool> {
    Ok(incompatible_node(cps, dag)?.is_none())
}

/// Builds the network induced by a variable ordering: each node's parent
/// set is a minimal subset of its predecessors screening it off from the
/// rest of them. Minimality is smallest-cardinality first, ties broken
/// lexicographically in the given ordering, so the result is
/// deterministic.
pub fn construct_bn(cps: &Cps, order: &[usize]) -> Result<Dag> {
    let n = cps
        .worlds()
        .var_count()
        .ok_or_else(|| Error::Unsupported("worlds carry no variable structure".into()))?;
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return Err(Error::BadQuery("ordering must be a permutation of the variables".into()));
        }
        seen[v] = true;
    }
    if order.len() != n {
        return Err(Error::BadQuery("ordering must name every variable".into()));
    }
    let mp = MemoPl::new(cps);
    let names: Vec<String> = cps.worlds().var_names().unwrap().to_vec();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for k in 0..n {
        let target = order[k];
        let prefix = &order[..k];
        let chosen = (0u64..1 << k)
            .map(|mask| {
                let mut subset: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).collect();
                subset.sort_unstable();
                (mask.count_ones(), mask, subset)
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .find_map(|(_, _, positions)| {
                let pset: Vec<usize> = positions.iter().map(|&j| prefix[j]).collect();
                let rest: Vec<usize> = prefix
                    .iter()
                    .copied()
                    .filter(|v| !pset.contains(v))
                    .collect();
                let mut sorted_p = pset.clone();
                sorted_p.sort_unstable();
                let mut sorted_r = rest;
                sorted_r.sort_unstable();
                indep_rv_memo(&mp, &sorted_r, &[target], &sorted_p).then_some(sorted_p)
            })
            .expect("the full prefix always screens off the empty rest");
        for p in chosen {
            edges.push((p, target));
        }
    }
    Dag::from_indices(names, edges)
}

// ---------------------------------------------------------------------------
// Quantitative networks

/// Conditional plausibility table for one node: a pair of values per
/// assignment of the parents. Row `r` addresses the assignment where
/// parent `parents[j]` takes bit `j` of `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cpt {
    pub node: usize,
    pub parents: Vec<usize>,
    pub rows: Vec<[Value; 2]>,
}

impl Cpt {
    pub fn row_assignment(&self, row: usize) -> Vec<(usize, bool)> {
        self.parents
            .iter()
            .enumerate()
            .map(|(j, &p)| (p, (row >> j) & 1 == 1))
            .collect()
    }

    /// The row selected by a full world assignment.
    pub fn row_for_world(&self, world: usize) -> usize {
        self.parents
            .iter()
            .enumerate()
            .map(|(j, &p)| ((world >> p) & 1) << j)
            .sum()
    }
}

/// A graph together with one table per node over a common domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantitativeBn {
    pub dag: Dag,
    pub tables: Vec<Cpt>,
    pub domain: DomainSpec,
}

impl QuantitativeBn {
    fn validate(&self) -> Result<()> {
        if self.tables.len() != self.dag.len() {
            return Err(Error::Unsupported("one table per node required".into()));
        }
        for (i, t) in self.tables.iter().enumerate() {
            if t.node != i || t.parents != self.dag.parents(i) {
                return Err(Error::Unsupported(format!(
                    "table {i} does not match the graph structure"
                )));
            }
            if t.rows.len() != 1 << t.parents.len() {
                return Err(Error::Unsupported(format!("table {i} has missing rows")));
            }
            for row in &t.rows {
                self.domain.validate(&row[0])?;
                self.domain.validate(&row[1])?;
            }
        }
        Ok(())
    }

    /// Table value of node `x` under the full world assignment `w`.
    fn world_entry(&self, x: usize, w: usize) -> &Value {
        let t = &self.tables[x];
        &t.rows[t.row_for_world(w)][(w >> x) & 1]
    }
}

/// Reads the tables of a space off a graph. Rows whose parent assignment
/// is not admissible are unconstrained by representation; they are filled
/// with the canonical `(⊤, ⊥)` row so the result is total and still
/// row-normalized.
pub fn extract_cpts(cps: &Cps, dag: &Dag) -> Result<QuantitativeBn> {
    let n = cps
        .worlds()
        .var_count()
        .ok_or_else(|| Error::Unsupported("worlds carry no variable structure".into()))?;
    if n != dag.len() {
        return Err(Error::Unsupported("graph/space variable mismatch".into()));
    }
    let worlds = cps.worlds();
    let d = cps.domain();
    let mut tables = Vec::with_capacity(n);
    for x in 0..n {
        let parents = dag.parents(x).to_vec();
        let mut rows = Vec::with_capacity(1 << parents.len());
        for r in 0..1usize << parents.len() {
            let assignment: Vec<(usize, bool)> = parents
                .iter()
                .enumerate()
                .map(|(j, &p)| (p, (r >> j) & 1 == 1))
                .collect();
            let pa = worlds.assignment_event(&assignment);
            if cps.in_fprime(&pa) {
                let d0 = cps.pl(&worlds.assignment_event(&[(x, false)]), &pa).unwrap();
                let d1 = cps.pl(&worlds.assignment_event(&[(x, true)]), &pa).unwrap();
                rows.push([d0, d1]);
            } else {
                rows.push([d.top(), d.bot()]);
            }
        }
        tables.push(Cpt { node: x, parents, rows });
    }
    Ok(QuantitativeBn { dag: dag.clone(), tables, domain: d.clone() })
}

pub const MAX_R2_NODES: usize = 12;
pub const MAX_R2_SORTS: usize = 5040;
pub const MAX_RECONSTRUCT_NODES: usize = 16;

/// All topological sorts of the graph, capped. Chain-product membership
/// must hold along every sort: incomparable nodes meet in both orders,
/// and on carriers with a restricted product domain that is exactly what
/// separates tables that determine a compatible measure from tables that
/// merely normalize row-wise.
fn all_topological_sorts(dag: &Dag, cap: usize) -> Result<Vec<Vec<usize>>> {
    fn go(
        dag: &Dag,
        indeg: &mut Vec<usize>,
        placed: &mut Vec<bool>,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if prefix.len() == dag.len() {
            if out.len() >= cap {
                return Err(Error::CapExceeded(format!(
                    "chain-product audit is capped at {cap} topological sorts"
                )));
            }
            out.push(prefix.clone());
            return Ok(());
        }
        for v in 0..dag.len() {
            if placed[v] || indeg[v] != 0 {
                continue;
            }
            placed[v] = true;
            prefix.push(v);
            for &c in dag.children(v) {
                indeg[c] -= 1;
            }
            go(dag, indeg, placed, prefix, out, cap)?;
            for &c in dag.children(v) {
                indeg[c] += 1;
            }
            prefix.pop();
            placed[v] = false;
        }
        Ok(())
    }
    let mut indeg: Vec<usize> = (0..dag.len()).map(|i| dag.parents(i).len()).collect();
    let mut placed = vec![false; dag.len()];
    let mut prefix = Vec::with_capacity(dag.len());
    let mut out = Vec::new();
    go(dag, &mut indeg, &mut placed, &mut prefix, &mut out, cap)?;
    Ok(out)
}

/// Representability: every row joins to top inside the join domain, and
/// every contiguous chain product along every topological sort stays
/// inside the product domain.
#[allow(clippy::needless_range_loop)]
pub fn check_representable(bn: &QuantitativeBn) -> Result<Vec<AxiomReport>> {
    bn.validate()?;
    let d = &bn.domain;
    if !d.has_algebra() {
        return Err(Error::NoAlgebra(d.carrier_name()));
    }
    let n = bn.dag.len();
    let mut out = Vec::new();

    // R1
    {
        let mut cases = 0u64;
        let mut witness = None;
        'r1: for t in &bn.tables {
            for (r, row) in t.rows.iter().enumerate() {
                cases += 1;
                let ok = d.in_dom_oplus(row)
                    && d.oplus(row).map(|s| s == d.top()).unwrap_or(false);
                if !ok {
                    witness = Some(
                        Witness::new()
                            .text("node", bn.dag.name(t.node))
                            .text("row", r.to_string())
                            .value("d0", row[0].clone())
                            .value("d1", row[1].clone()),
                    );
                    break 'r1;
                }
            }
        }
        out.push(match witness {
            None => AxiomReport { axiom: AxiomId::Alg1, holds: true, witness: None, cases, hits: cases, note: Some("row normalization (R1)".into()) },
            Some(w) => AxiomReport { axiom: AxiomId::Alg1, holds: false, witness: Some(w), cases, hits: cases, note: Some("row normalization (R1)".into()) },
        });
    }

    // R2
    {
        if n > MAX_R2_NODES {
            return Err(Error::CapExceeded(format!(
                "chain-product audit is capped at {MAX_R2_NODES} nodes"
            )));
        }
        let sorts = if d.product_dom_is_total() {
            // memberships hold trivially; one sort suffices to validate
            // the products themselves
            vec![bn.dag.topological_order()]
        } else {
            all_topological_sorts(&bn.dag, MAX_R2_SORTS)?
        };
        let mut cases = 0u64;
        let mut witness = None;
        'r2: for topo in &sorts {
            for w in 0..1usize << n {
                let dv: Vec<&Value> = topo.iter().map(|&x| bn.world_entry(x, w)).collect();
                // products of contiguous ranges of this sort
                let mut prod = vec![vec![None::<Value>; n]; n];
                for j in (0..n).rev() {
                    prod[j][j] = Some(dv[j].clone());
                    for k in (j + 1)..n {
                        let next = prod[j + 1][k].clone().unwrap();
                        prod[j][k] = Some(d.otimes(dv[j], &next)?);
                    }
                }
                for j in 0..n {
                    for k in (j + 1)..n {
                        cases += 1;
                        let tail = prod[j + 1][k].as_ref().unwrap();
                        let head = prod[j][k - 1].as_ref().unwrap();
                        if !d.in_dom_otimes(dv[j], tail) || !d.in_dom_otimes(head, dv[k]) {
                            witness = Some(
                                Witness::new()
                                    .text("world", w.to_string())
                                    .text("sort", format!("{topo:?}"))
                                    .text("j", bn.dag.name(topo[j]))
                                    .text("k", bn.dag.name(topo[k]))
                                    .value("d_j", dv[j].clone())
                                    .value("tail product", tail.clone()),
                            );
                            break 'r2;
                        }
                    }
                }
            }
        }
        out.push(match witness {
            None => AxiomReport { axiom: AxiomId::Alg2, holds: true, witness: None, cases, hits: cases, note: Some("chain products in the product domain (R2)".into()) },
            Some(w) => AxiomReport { axiom: AxiomId::Alg2, holds: false, witness: Some(w), cases, hits: cases, note: Some("chain products in the product domain (R2)".into()) },
        });
    }
    Ok(out)
}

/// The unique measure represented by the network: world values are the
/// chain product of the table entries in reverse topological order, event
/// values join over their worlds, and conditionals divide by the
/// conditioning event's value.
pub fn reconstruct(bn: &QuantitativeBn) -> Result<Cps> {
    bn.validate()?;
    let d = &bn.domain;
    if !d.has_algebra() {
        return Err(Error::NoAlgebra(d.carrier_name()));
    }
    let n = bn.dag.len();
    if n > MAX_RECONSTRUCT_NODES {
        return Err(Error::CapExceeded(format!(
            "reconstruction is capped at {MAX_RECONSTRUCT_NODES} nodes"
        )));
    }
    let topo = bn.dag.topological_order();
    let joint: Vec<Value> = map_ordered(crate::exec::Exec::Auto, 1usize << n, |w| {
        let mut acc = bn.world_entry(*topo.last().unwrap(), w).clone();
        for &x in topo.iter().rev().skip(1) {
            acc = d.otimes(bn.world_entry(x, w), &acc).expect("⊗ total on carrier");
        }
        acc
    });
    Ok(Cps::new(
        bn.dag.binary_worlds(),
        d.clone(),
        CpsKind::Reconstructed { joint },
    ))
}

// ---------------------------------------------------------------------------
// d-separation soundness and completeness

/// Soundness trials: random representable networks over the graph, each
/// reconstructed; every d-separated triple must be independent in the
/// reconstruction. Trials are independent and run concurrently; results
/// merge by trial index.
pub fn dsep_soundness_check(
    dag: &Dag,
    domain: &DomainSpec,
    trials: usize,
    opts: &AuditOptions,
) -> Result<AxiomReport> {
    let n = dag.len();
    let queries = all_disjoint_triples(n, opts);
    let per_trial: Vec<Result<(u64, u64, Option<Witness>)>> =
        map_ordered(opts.exec, trials, |t| {
            let bn = crate::gen::random_representable_bn(dag, domain, opts.seed ^ (t as u64) << 8)?;
            let cps = reconstruct(&bn)?;
            let mp = MemoPl::new(&cps);
            let mut cases = 0u64;
            let mut hits = 0u64;
            for (x, y, z) in &queries {
                cases += 1;
                if !d_separated(dag, x, y, z)? {
                    continue;
                }
                hits += 1;
                if !indep_rv_memo(&mp, x, y, z) {
                    return Ok((
                        cases,
                        hits,
                        Some(
                            Witness::new()
                                .text("trial", t.to_string())
                                .text("X", format!("{x:?}"))
                                .text("Y", format!("{y:?}"))
                                .text("Z", format!("{z:?}")),
                        ),
                    ));
                }
            }
            Ok((cases, hits, None))
        });
    let mut cases = 0u64;
    let mut hits = 0u64;
    let mut witness = None;
    for r in per_trial {
        let (c, h, w) = r?;
        cases += c;
        hits += h;
        if witness.is_none() {
            witness = w;
        }
    }
    Ok(match witness {
        None => AxiomReport {
            axiom: AxiomId::Cirv1,
            holds: true,
            witness: None,
            cases,
            hits,
            note: Some("d-separation soundness trials".into()),
        },
        Some(w) => AxiomReport {
            axiom: AxiomId::Cirv1,
            holds: false,
            witness: Some(w),
            cases,
            hits,
            note: Some("d-separation soundness trials".into()),
        },
    })
}

/// All (X, Y, Z) with X, Y nonempty and the three pairwise disjoint —
/// exhaustive up to five nodes, sampled role assignments above.
fn all_disjoint_triples(n: usize, opts: &AuditOptions) -> Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let decode = |code: u64| {
        let mut x = Vec::new();
        let mut y = Vec::new();
        let mut z = Vec::new();
        let mut c = code;
        for v in 0..n {
            match c % 4 {
                0 => x.push(v),
                1 => y.push(v),
                2 => z.push(v),
                _ => {}
            }
            c /= 4;
        }
        (x, y, z)
    };
    let total = 4u64.pow(n as u32);
    let codes: Vec<u64> = if n <= 5 {
        (0..total).collect()
    } else {
        let mut rng = SplitMix::new(opts.seed ^ 0x7215);
        (0..opts.samples.min(2000)).map(|_| rng.below(total)).collect()
    };
    codes
        .into_iter()
        .map(decode)
        .filter(|(x, y, _)| !x.is_empty() && !y.is_empty())
        .collect()
}

/// For a non-d-separated query, builds a quantitative network over a
/// subgraph — an active trail plus one directed path into the
/// conditioning set per trail collider, node-disjoint — whose
/// reconstruction is compatible with the original graph yet violates the
/// queried independence. Parentless nodes get the richness pair,
/// one-parent nodes copy, two-parent nodes take parity. Returns `None`
/// when the query is d-separated (soundness forbids a counterexample).
pub fn dsep_counterexample(
    dag: &Dag,
    domain: &DomainSpec,
    x: usize,
    y: usize,
    z: &[usize],
) -> Result<Option<QuantitativeBn>> {
    if d_separated(dag, &[x], &[y], z)? {
        return Ok(None);
    }
    let n = dag.len();
    let (lo, hi) = crate::audit::richness_pair(domain, n.max(1))?;
    let in_z = {
        let mut b = vec![false; n];
        for &v in z {
            b[v] = true;
        }
        b
    };
    let des_hits_z: Vec<bool> = (0..n)
        .map(|v| dag.descendants(v).iter().any(|&d| in_z[d]))
        .collect();

    // all simple active trails from x to y, shortest first
    let mut trails = Vec::new();
    collect_trails(dag, y, &mut vec![x], &mut vec![false; n], &mut trails);
    trails.retain(|t| !trail_blocked(dag, t, &in_z, &des_hits_z));
    trails.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    for trail in &trails {
        if let Some(edges) = attach_collider_paths(dag, trail, &in_z) {
            let sub = Dag::from_indices(dag.names().to_vec(), edges)?;
            let bn = parity_network(&sub, domain, &lo, &hi);
            let cps = reconstruct(&bn)?;
            if incompatible_node(&cps, dag)?.is_some() {
                continue;
            }
            if crate::independence::indep_rv(&cps, &[x], &[y], z)? {
                continue;
            }
            return Ok(Some(bn));
        }
    }
    Err(Error::VerificationFailed(
        "no active trail admits a disjoint path system".into(),
    ))
}

fn collect_trails(
    dag: &Dag,
    goal: usize,
    trail: &mut Vec<usize>,
    on_trail: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let cur = *trail.last().unwrap();
    on_trail[cur] = true;
    if cur == goal {
        out.push(trail.clone());
        on_trail[cur] = false;
        return;
    }
    let neighbors: Vec<usize> = dag
        .parents(cur)
        .iter()
        .chain(dag.children(cur))
        .copied()
        .collect();
    for next in neighbors {
        if !on_trail[next] {
            trail.push(next);
            collect_trails(dag, goal, trail, on_trail, out);
            trail.pop();
        }
    }
    on_trail[cur] = false;
}

/// Adds, for each collider on the trail that is not itself conditioned
/// on, a directed path into the conditioning set, node-disjoint from the
/// trail and from the other paths. Backtracks over path choices.
fn attach_collider_paths(dag: &Dag, trail: &[usize], in_z: &[bool]) -> Option<Vec<(usize, usize)>> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..trail.len() - 1 {
        let (a, b) = (trail[i], trail[i + 1]);
        if dag.has_edge(a, b) {
            edges.push((a, b));
        } else {
            edges.push((b, a));
        }
    }
    let mut colliders = Vec::new();
    for i in 1..trail.len() - 1 {
        let (prev, cur, next) = (trail[i - 1], trail[i], trail[i + 1]);
        if dag.has_edge(prev, cur) && dag.has_edge(next, cur) && !in_z[cur] {
            colliders.push(cur);
        }
    }
    let mut used = vec![false; dag.len()];
    for &v in trail {
        used[v] = true;
    }
    fn assign(
        dag: &Dag,
        colliders: &[usize],
        used: &mut Vec<bool>,
        in_z: &[bool],
        edges: &mut Vec<(usize, usize)>,
    ) -> bool {
        let Some((&c, rest)) = colliders.split_first() else {
            return true;
        };
        // every simple directed path c → Z over unused nodes, shortest
        // first; trying them all makes the backtracking exhaustive
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut frontier = vec![vec![c]];
        while !frontier.is_empty() {
            let mut next_frontier = Vec::new();
            for p in frontier {
                let last = *p.last().unwrap();
                for &ch in dag.children(last) {
                    if p.contains(&ch) || used[ch] {
                        continue;
                    }
                    let mut q = p.clone();
                    q.push(ch);
                    if in_z[ch] {
                        paths.push(q);
                    } else {
                        next_frontier.push(q);
                    }
                }
            }
            frontier = next_frontier;
        }
        for path in paths {
            let mut added = Vec::new();
            for w in path.windows(2) {
                added.push((w[0], w[1]));
            }
            for &v in &path[1..] {
                used[v] = true;
            }
            edges.extend(added.iter().copied());
            if assign(dag, rest, used, in_z, edges) {
                return true;
            }
            for _ in 0..added.len() {
                edges.pop();
            }
            for &v in &path[1..] {
                used[v] = false;
            }
        }
        false
    }
    assign(dag, &colliders, &mut used, in_z, &mut edges).then_some(edges)
}

/// Tables over a subgraph where every node has at most two parents:
/// sources get the richness pair, single-parent nodes copy their parent,
/// two-parent nodes are deterministic parity.
fn parity_network(sub: &Dag, domain: &DomainSpec, lo: &Value, hi: &Value) -> QuantitativeBn {
    let top = domain.top();
    let bot = domain.bot();
    let tables = (0..sub.len())
        .map(|xi| {
            let parents = sub.parents(xi).to_vec();
            let rows: Vec<[Value; 2]> = match parents.len() {
                0 => vec![[lo.clone(), hi.clone()]],
                1 => (0..2)
                    .map(|j| {
                        if j == 0 {
                            [top.clone(), bot.clone()]
                        } else {
                            [bot.clone(), top.clone()]
                        }
                    })
                    .collect(),
                2 => (0..4)
                    .map(|code: usize| {
                        let parity = (code & 1) ^ ((code >> 1) & 1);
                        if parity == 0 {
                            [top.clone(), bot.clone()]
                        } else {
                            [bot.clone(), top.clone()]
                        }
                    })
                    .collect(),
                k => panic!("subgraph construction yields at most two parents, got {k}"),
            };
            Cpt { node: xi, parents, rows }
        })
        .collect();
    QuantitativeBn { dag: sub.clone(), tables, domain: domain.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditioning::extend_probability;
    use crate::measure::Measure;
    use crate::rational::rat;
    use crate::value::Rank;

    fn chain() -> Dag {
        Dag::new(&["A", "B", "C"], &[("A", "B"), ("B", "C")]).unwrap()
    }

    fn collider() -> Dag {
        Dag::new(&["A", "B", "C"], &[("A", "C"), ("B", "C")]).unwrap()
    }

    #[test]
    fn dag_rejects_cycles_and_unknowns() {
        assert!(matches!(
            Dag::new(&["A", "B"], &[("A", "B"), ("B", "A")]),
            Err(Error::CyclicGraph)
        ));
        assert!(matches!(
            Dag::new(&["A"], &[("A", "Q")]),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn descendants_include_self_and_follow_edges() {
        let d = chain();
        assert_eq!(d.descendants(0), vec![0, 1, 2]);
        assert_eq!(d.descendants(2), vec![2]);
        assert_eq!(d.nondescendants(1), vec![0]);
    }

    #[test]
    fn chain_blocks_through_its_middle() {
        let d = chain();
        assert!(d_separated(&d, &[0], &[2], &[1]).unwrap());
        assert!(!d_separated(&d, &[0], &[2], &[]).unwrap());
        assert!(d_separated_trails(&d, &[0], &[2], &[1]).unwrap());
        assert!(!d_separated_trails(&d, &[0], &[2], &[]).unwrap());
    }

    #[test]
    fn collider_opens_when_conditioned() {
        let d = collider();
        assert!(d_separated(&d, &[0], &[1], &[]).unwrap());
        assert!(!d_separated(&d, &[0], &[1], &[2]).unwrap());
        assert!(d_separated_trails(&d, &[0], &[1], &[]).unwrap());
        assert!(!d_separated_trails(&d, &[0], &[1], &[2]).unwrap());
    }

    #[test]
    fn collider_descendant_also_opens_the_trail() {
        let d = Dag::new(
            &["A", "B", "C", "D"],
            &[("A", "C"), ("B", "C"), ("C", "D")],
        )
        .unwrap();
        assert!(d_separated(&d, &[0], &[1], &[]).unwrap());
        assert!(!d_separated(&d, &[0], &[1], &[3]).unwrap());
    }

    #[test]
    fn adjacent_nodes_are_never_separated() {
        let d = chain();
        for z in [vec![], vec![2]] {
            assert!(!d_separated(&d, &[0], &[1], &z).unwrap());
            assert!(!d_separated_trails(&d, &[0], &[1], &z).unwrap());
        }
    }

    #[test]
    fn both_dsep_implementations_agree_on_random_graphs() {
        let mut rng = SplitMix::new(99);
        for trial in 0..300 {
            let n = 3 + (trial % 5);
            let dag = crate::gen::random_dag(n, rng.next_u64(), 2, 5);
            let x = rng.below(n as u64) as usize;
            let mut y = rng.below(n as u64) as usize;
            if y == x {
                y = (y + 1) % n;
            }
            let z: Vec<usize> = (0..n)
                .filter(|&v| v != x && v != y && rng.chance(1, 3))
                .collect();
            assert_eq!(
                d_separated(&dag, &[x], &[y], &z).unwrap(),
                d_separated_trails(&dag, &[x], &[y], &z).unwrap(),
                "disagreement on trial {trial}"
            );
        }
    }

    fn markov_chain_measure() -> Cps {
        // X1 → X2 → X3 with noisy copies
        let w = crate::gen::binary_worlds(3);
        let mut weights = Vec::new();
        for world in 0..8usize {
            let x1 = world & 1;
            let x2 = (world >> 1) & 1;
            let x3 = (world >> 2) & 1;
            let p1 = rat(1, 2);
            let p2 = if x2 == x1 { rat(3, 4) } else { rat(1, 4) };
            let p3 = if x3 == x2 { rat(3, 4) } else { rat(1, 4) };
            weights.push(p1 * p2 * p3);
        }
        extend_probability(&Measure::probability(w, weights).unwrap()).unwrap()
    }

    #[test]
    fn construct_bn_recovers_the_markov_chain() {
        let cps = markov_chain_measure();
        let dag = construct_bn(&cps, &[0, 1, 2]).unwrap();
        assert_eq!(dag.edges(), &[(0, 1), (1, 2)]);
        assert!(compatible(&cps, &dag).unwrap());
    }

    #[test]
    fn construct_bn_on_a_product_measure_is_empty() {
        let w = crate::gen::binary_worlds(3);
        let m = Measure::probability(w, vec![rat(1, 8); 8]).unwrap();
        let cps = extend_probability(&m).unwrap();
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            let dag = construct_bn(&cps, &order).unwrap();
            assert!(dag.edges().is_empty());
        }
    }

    #[test]
    fn single_variable_network() {
        let w = crate::gen::binary_worlds(1);
        let m = Measure::probability(w, vec![rat(1, 3), rat(2, 3)]).unwrap();
        let cps = extend_probability(&m).unwrap();
        let dag = construct_bn(&cps, &[0]).unwrap();
        assert!(dag.edges().is_empty());
    }

    #[test]
    fn complete_dag_is_compatible_with_anything() {
        for seed in 0..5 {
            let cps = extend_probability(&crate::gen::random_probability(
                crate::gen::binary_worlds(3),
                seed,
                true,
            ))
            .unwrap();
            let dag = Dag::new(
                &["X1", "X2", "X3"],
                &[("X1", "X2"), ("X1", "X3"), ("X2", "X3")],
            )
            .unwrap();
            assert!(compatible(&cps, &dag).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn chain_measure_is_incompatible_with_the_reversed_collider() {
        let cps = markov_chain_measure();
        // A → C ← B claims X1 ⫫ X2 unconditionally, which the chain breaks
        let dag = Dag::new(&["X1", "X2", "X3"], &[("X1", "X3"), ("X2", "X3")]).unwrap();
        assert_eq!(incompatible_node(&cps, &dag).unwrap(), Some(0));
    }

    #[test]
    fn ranking_reconstruction_matches_the_hand_computation() {
        // two nodes X → Y
        let dag = Dag::new(&["X", "Y"], &[("X", "Y")]).unwrap();
        let d = DomainSpec::ranking();
        let bn = QuantitativeBn {
            dag: dag.clone(),
            tables: vec![
                Cpt {
                    node: 0,
                    parents: vec![],
                    rows: vec![[Value::Rank(Rank::Finite(0)), Value::Rank(Rank::Finite(1))]],
                },
                Cpt {
                    node: 1,
                    parents: vec![0],
                    rows: vec![
                        [Value::Rank(Rank::Finite(0)), Value::Rank(Rank::Finite(2))],
                        [Value::Rank(Rank::Finite(1)), Value::Rank(Rank::Finite(0))],
                    ],
                },
            ],
            domain: d,
        };
        assert!(check_representable(&bn).unwrap().iter().all(|r| r.holds));
        let cps = reconstruct(&bn).unwrap();
        let joint = cps.joint_values().unwrap();
        // world 3 = X=1, Y=1: κ = 1 + 0 = 1
        assert_eq!(joint[3], Value::Rank(Rank::Finite(1)));
        assert_eq!(joint[0], Value::Rank(Rank::Finite(0)));
        assert_eq!(joint[2], Value::Rank(Rank::Finite(2)));
        assert_eq!(joint[1], Value::Rank(Rank::Finite(2)));
    }

    #[test]
    fn uniform_tables_reconstruct_the_uniform_measure() {
        let dag = chain();
        let d = DomainSpec::probability();
        let half = || [Value::Prob(rat(1, 2)), Value::Prob(rat(1, 2))];
        let bn = QuantitativeBn {
            dag: dag.clone(),
            tables: vec![
                Cpt { node: 0, parents: vec![], rows: vec![half()] },
                Cpt { node: 1, parents: vec![0], rows: vec![half(), half()] },
                Cpt { node: 2, parents: vec![1], rows: vec![half(), half()] },
            ],
            domain: d,
        };
        let cps = reconstruct(&bn).unwrap();
        for v in cps.joint_values().unwrap() {
            assert_eq!(*v, Value::Prob(rat(1, 8)));
        }
    }

    #[test]
    fn probability_round_trip_through_construction_and_tables() {
        let cps = markov_chain_measure();
        let dag = construct_bn(&cps, &[0, 1, 2]).unwrap();
        let bn = extract_cpts(&cps, &dag).unwrap();
        assert!(check_representable(&bn).unwrap().iter().all(|r| r.holds));
        let recon = reconstruct(&bn).unwrap();
        for v_mask in 0u64..256 {
            let v = crate::worlds::Event::from_mask(8, v_mask);
            for u_mask in 0u64..256 {
                let u = crate::worlds::Event::from_mask(8, u_mask);
                assert_eq!(cps.pl(&u, &v), recon.pl(&u, &v), "at ({u_mask},{v_mask})");
            }
        }
    }

    #[test]
    fn representability_catches_bad_rows() {
        let dag = Dag::new(&["X"], &[]).unwrap();
        let bn = QuantitativeBn {
            dag,
            tables: vec![Cpt {
                node: 0,
                parents: vec![],
                rows: vec![[Value::Prob(rat(1, 4)), Value::Prob(rat(1, 4))]],
            }],
            domain: DomainSpec::probability(),
        };
        let reports = check_representable(&bn).unwrap();
        assert!(!reports[0].holds);
    }

    #[test]
    fn min_possibility_tables_can_violate_the_chain_condition() {
        // exhaustive search over two-node tables with values in a tiny
        // grid finds a chain-product violation
        let dag = Dag::new(&["X", "Y"], &[("X", "Y")]).unwrap();
        let d = DomainSpec::possibility_min();
        let grid = [rat(1, 2), rat(1, 1)];
        let mut found = None;
        'search: for a in &grid {
            for b in &grid {
                for c in &grid {
                    let mk = |p: &crate::rational::Rat| Value::Poss(p.clone());
                    let row_norm = |v: &crate::rational::Rat| {
                        [mk(&rat(1, 1)), mk(v)]
                    };
                    let bn = QuantitativeBn {
                        dag: dag.clone(),
                        tables: vec![
                            Cpt { node: 0, parents: vec![], rows: vec![row_norm(a)] },
                            Cpt {
                                node: 1,
                                parents: vec![0],
                                rows: vec![row_norm(b), row_norm(c)],
                            },
                        ],
                        domain: d.clone(),
                    };
                    let reports = check_representable(&bn).unwrap();
                    if !reports[1].holds {
                        found = Some(reports[1].clone());
                        break 'search;
                    }
                }
            }
        }
        let rep = found.expect("a violating table exists in the grid");
        assert!(rep.witness.is_some());
    }

    #[test]
    fn soundness_trials_pass_on_the_chain_and_collider() {
        let opts = AuditOptions::seeded(5);
        for dag in [chain(), collider()] {
            for domain in [DomainSpec::probability(), DomainSpec::ranking()] {
                let rep = dsep_soundness_check(&dag, &domain, 20, &opts).unwrap();
                assert!(rep.holds, "{:?}", rep.witness);
                assert!(rep.hits > 0);
            }
        }
    }

    #[test]
    fn empty_graph_soundness() {
        let dag = Dag::new(&["A", "B", "C"], &[]).unwrap();
        let rep =
            dsep_soundness_check(&dag, &DomainSpec::probability(), 10, &AuditOptions::seeded(3))
                .unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn collider_soundness_over_the_family_domain() {
        let dag = collider();
        let domain = DomainSpec::plp(&["i", "j"]).unwrap();
        let rep = dsep_soundness_check(&dag, &domain, 12, &AuditOptions::seeded(8)).unwrap();
        assert!(rep.holds, "{:?}", rep.witness);
        assert!(rep.hits > 0);
    }

    #[test]
    fn construction_respects_the_given_ordering() {
        for seed in 0..8u64 {
            let cps = extend_probability(&crate::gen::random_probability(
                crate::gen::binary_worlds(3),
                seed * 3 + 1,
                false,
            ))
            .unwrap();
            for order in [[0usize, 1, 2], [2, 1, 0], [1, 0, 2]] {
                let dag = construct_bn(&cps, &order).unwrap();
                let pos = |v: usize| order.iter().position(|&o| o == v).unwrap();
                for &(a, b) in dag.edges() {
                    assert!(pos(a) < pos(b), "edge against the ordering on seed {seed}");
                }
                assert!(compatible(&cps, &dag).unwrap(), "seed {seed}");
            }
        }
    }

    #[test]
    fn collider_counterexample_is_the_parity_network() {
        let dag = collider();
        let d = DomainSpec::probability();
        let bn = dsep_counterexample(&dag, &d, 0, 1, &[2]).unwrap().unwrap();
        let cps = reconstruct(&bn).unwrap();
        let w = cps.worlds().clone();
        // μ(A=0 | B=0, C=0) = 1 ≠ 1/2 = μ(A=0 | C=0)
        let a0 = w.assignment_event(&[(0, false)]);
        let b0c0 = w.assignment_event(&[(1, false), (2, false)]);
        let c0 = w.assignment_event(&[(2, false)]);
        assert_eq!(cps.pl(&a0, &b0c0), Some(Value::Prob(rat(1, 1))));
        assert_eq!(cps.pl(&a0, &c0), Some(Value::Prob(rat(1, 2))));
        assert!(compatible(&cps, &dag).unwrap());
        assert!(!crate::independence::indep_rv(&cps, &[0], &[1], &[2]).unwrap());
    }

    #[test]
    fn chain_counterexample_fully_correlates_the_endpoints() {
        let dag = chain();
        let d = DomainSpec::ranking();
        let bn = dsep_counterexample(&dag, &d, 0, 2, &[]).unwrap().unwrap();
        let cps = reconstruct(&bn).unwrap();
        let w = cps.worlds().clone();
        let c0 = w.assignment_event(&[(2, false)]);
        let a0 = w.assignment_event(&[(0, false)]);
        let a1 = w.assignment_event(&[(0, true)]);
        // copying makes the last node follow the first one exactly
        assert_eq!(cps.pl(&c0, &a0), Some(cps.domain().top()));
        assert_eq!(cps.pl(&c0, &a1), Some(cps.domain().bot()));
        assert_ne!(cps.pl(&c0, &w.full_event()), Some(cps.domain().bot()));
        assert!(!crate::independence::indep_rv(&cps, &[0], &[2], &[]).unwrap());
    }

    #[test]
    fn separated_queries_have_no_counterexample() {
        let dag = chain();
        let d = DomainSpec::probability();
        assert!(dsep_counterexample(&dag, &d, 0, 2, &[1]).unwrap().is_none());
    }
}
