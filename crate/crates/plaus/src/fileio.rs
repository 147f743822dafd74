//! Measure files, network files, and query strings.
//!
//! Measure file grammar (line-oriented, `#` comments):
//!
//! ```text
//! domain probability            # or ranking / possibility / family
//! vars A B                      # binary variables: worlds are bit tuples
//! (00) 1/4                      # one line per world: (<bits>) <weight>
//! (10) 1/4
//! ...
//! ```
//!
//! `worlds a b c` declares free-form world labels instead of variables,
//! with lines `a 1/3`. Families add one `index <label>` header per member
//! before that member's world lines. Rationals are `p/q`, integers, or
//! exact decimals; ranks are naturals or `inf`.
//!
//! Network file grammar:
//!
//! ```text
//! domain ranking                # or plp with index labels: plp m0 m1
//! node A
//! node B
//! edge A B
//! cpt A - 0 1                   # parentless rows use `-`
//! cpt B A=0 0 2
//! cpt B A=1 1 0
//! ```
//!
//! Parsing is bit-exact on rationals in both directions.

use std::collections::BTreeMap;

use crate::bayesnet::{Cpt, Dag, QuantitativeBn};
use crate::domain::{DomainKind, DomainSpec};
use crate::error::{Error, Result};
use crate::measure::Measure;
use crate::rational::{parse_rat, Rat};
use crate::value::{PlpValue, Rank, Value};
use crate::worlds::{Event, Worlds};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: line + 1, msg: msg.into() }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i, l))
    })
}

pub fn parse_rank(s: &str) -> Result<Rank> {
    if s == "inf" || s == "∞" {
        return Ok(Rank::Infinite);
    }
    s.parse::<u64>()
        .map(Rank::Finite)
        .map_err(|_| Error::MalformedMeasure(format!("cannot parse rank `{s}`")))
}

/// Parses one value literal in the given domain: rationals, ranks, or
/// comma-separated family vectors with `*` for undefined entries.
pub fn parse_value(domain: &DomainSpec, s: &str) -> Result<Value> {
    let v = match domain.kind() {
        DomainKind::Probability => Value::Prob(parse_rat(s)?),
        DomainKind::Ranking => Value::Rank(parse_rank(s)?),
        DomainKind::PossibilityMin | DomainKind::PossibilityProd => Value::Poss(parse_rat(s)?),
        DomainKind::Plp { .. } => {
            if s == "bot" {
                Value::Plp(PlpValue::Bot)
            } else if s == "top" {
                Value::Plp(PlpValue::Top)
            } else {
                // accept both the bare comma list and the parenthesized
                // display form
                let body = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .unwrap_or(s);
                let entries: Result<Vec<Option<Rat>>> = body
                    .split(',')
                    .map(|tok| {
                        let tok = tok.trim();
                        if tok == "*" {
                            Ok(None)
                        } else {
                            parse_rat(tok).map(Some)
                        }
                    })
                    .collect();
                Value::Plp(PlpValue::vector(entries?)?)
            }
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no literal syntax for the {} domain",
                domain.carrier_name()
            )))
        }
    };
    domain.validate(&v)?;
    Ok(v)
}

pub fn render_value(v: &Value) -> String {
    v.to_string()
}

// ---------------------------------------------------------------------------
// Measure files

enum WorldDecl {
    Vars(Vec<String>),
    Labels(Vec<String>),
}

/// Parses a measure file into the measure it declares.
pub fn parse_measure(text: &str) -> Result<Measure> {
    let mut lines = meaningful_lines(text);
    let (l0, header) = lines
        .next()
        .ok_or_else(|| perr(0, "empty file: expected `domain <kind>`"))?;
    let kind = header
        .strip_prefix("domain")
        .map(str::trim)
        .ok_or_else(|| perr(l0, "expected `domain <kind>`"))?;
    let (l1, decl) = lines.next().ok_or_else(|| perr(l0, "expected a world declaration"))?;
    let decl = if let Some(vs) = decl.strip_prefix("vars") {
        let names: Vec<String> = vs.split_whitespace().map(str::to_string).collect();
        if names.is_empty() {
            return Err(perr(l1, "`vars` needs at least one name"));
        }
        WorldDecl::Vars(names)
    } else if let Some(ws) = decl.strip_prefix("worlds") {
        let names: Vec<String> = ws.split_whitespace().map(str::to_string).collect();
        if names.is_empty() {
            return Err(perr(l1, "`worlds` needs at least one name"));
        }
        WorldDecl::Labels(names)
    } else {
        return Err(perr(l1, "expected `vars ...` or `worlds ...`"));
    };
    let worlds = match &decl {
        WorldDecl::Vars(names) => Worlds::binary(names),
        WorldDecl::Labels(names) => Worlds::labeled(names),
    };

    let world_index = |line: usize, token: &str| -> Result<usize> {
        match &decl {
            WorldDecl::Vars(names) => {
                let bits = token
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| perr(line, "expected `(<bits>)`"))?;
                if bits.len() != names.len() || !bits.chars().all(|c| c == '0' || c == '1') {
                    return Err(perr(line, format!("bad world bits `{bits}`")));
                }
                Ok(bits
                    .chars()
                    .enumerate()
                    .map(|(j, c)| if c == '1' { 1usize << j } else { 0 })
                    .sum())
            }
            WorldDecl::Labels(names) => names
                .iter()
                .position(|n| n == token)
                .ok_or_else(|| perr(line, format!("unknown world `{token}`"))),
        }
    };

    // (index label, world lines as (line, world, literal))
    type Block = (Option<String>, Vec<(usize, usize, String)>);
    let mut blocks: Vec<Block> = vec![(None, Vec::new())];
    for (ln, line) in lines {
        if let Some(label) = line.strip_prefix("index") {
            blocks.push((Some(label.trim().to_string()), Vec::new()));
            continue;
        }
        let mut toks = line.split_whitespace();
        let wtok = toks.next().ok_or_else(|| perr(ln, "expected a world line"))?;
        let val = toks.next().ok_or_else(|| perr(ln, "expected a value"))?;
        if toks.next().is_some() {
            return Err(perr(ln, "trailing tokens"));
        }
        let w = world_index(ln, wtok)?;
        blocks.last_mut().unwrap().1.push((ln, w, val.to_string()));
    }

    let fill = |entries: &[(usize, usize, String)]| -> Result<Vec<(usize, String)>> {
        let mut out: Vec<Option<(usize, String)>> = vec![None; worlds.len()];
        for (ln, w, v) in entries {
            if out[*w].is_some() {
                return Err(perr(*ln, "world listed twice"));
            }
            out[*w] = Some((*ln, v.clone()));
        }
        out.into_iter()
            .enumerate()
            .map(|(w, e)| {
                e.ok_or_else(|| {
                    Error::Parse {
                        line: 0,
                        msg: format!("missing weight for world {}", worlds.world_name(w)),
                    }
                })
            })
            .collect()
    };

    match kind {
        "probability" | "ranking" | "possibility" => {
            if blocks.len() != 1 {
                return Err(Error::Parse {
                    line: 0,
                    msg: "`index` blocks are only for family measures".into(),
                });
            }
            let entries = fill(&blocks[0].1)?;
            match kind {
                "probability" => {
                    let weights = entries
                        .iter()
                        .map(|(ln, v)| parse_rat(v).map_err(|e| perr(*ln, e.to_string())))
                        .collect::<Result<Vec<_>>>()?;
                    Measure::probability(worlds, weights)
                }
                "ranking" => {
                    let ranks = entries
                        .iter()
                        .map(|(ln, v)| parse_rank(v).map_err(|e| perr(*ln, e.to_string())))
                        .collect::<Result<Vec<_>>>()?;
                    Measure::ranking(worlds, ranks)
                }
                _ => {
                    let weights = entries
                        .iter()
                        .map(|(ln, v)| parse_rat(v).map_err(|e| perr(*ln, e.to_string())))
                        .collect::<Result<Vec<_>>>()?;
                    Measure::possibility(worlds, weights)
                }
            }
        }
        "family" => {
            if blocks[0].1.is_empty() && blocks.len() > 1 {
                blocks.remove(0);
            }
            let mut labels = Vec::new();
            let mut members = Vec::new();
            for (label, entries) in &blocks {
                let label = label
                    .clone()
                    .ok_or_else(|| Error::Parse {
                        line: 0,
                        msg: "family measures need `index <label>` blocks".into(),
                    })?;
                let filled = fill(entries)?;
                let weights = filled
                    .iter()
                    .map(|(ln, v)| parse_rat(v).map_err(|e| perr(*ln, e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                labels.push(label);
                members.push(weights);
            }
            Measure::family(worlds, &labels, members)
        }
        other => Err(perr(l0, format!("unknown measure kind `{other}`"))),
    }
}

// ---------------------------------------------------------------------------
// Network files

fn parse_domain_header(line: usize, spec: &str) -> Result<DomainSpec> {
    let mut toks = spec.split_whitespace();
    let kind = toks.next().ok_or_else(|| perr(line, "expected a domain kind"))?;
    let rest: Vec<&str> = toks.collect();
    match kind {
        "probability" | "prob" => Ok(DomainSpec::probability()),
        "ranking" | "rank" => Ok(DomainSpec::ranking()),
        "possibility-min" | "poss-min" => Ok(DomainSpec::possibility_min()),
        "possibility-prod" | "poss-prod" => Ok(DomainSpec::possibility_prod()),
        "plp" => {
            if rest.is_empty() {
                return Err(perr(line, "plp domain needs index labels: `domain plp m0 m1`"));
            }
            DomainSpec::plp(&rest)
        }
        other => Err(perr(line, format!("unknown domain `{other}`"))),
    }
}

pub fn render_domain_header(domain: &DomainSpec) -> String {
    match domain.kind() {
        DomainKind::Probability => "probability".into(),
        DomainKind::Ranking => "ranking".into(),
        DomainKind::PossibilityMin => "possibility-min".into(),
        DomainKind::PossibilityProd => "possibility-prod".into(),
        DomainKind::Plp { indices } => format!("plp {}", indices.join(" ")),
        DomainKind::Interval => "interval".into(),
        DomainKind::Lifted(_) => "lifted".into(),
    }
}

/// Parses a network file into a quantitative network.
#[allow(clippy::needless_range_loop)]
pub fn parse_network(text: &str) -> Result<QuantitativeBn> {
    let mut domain: Option<DomainSpec> = None;
    let mut nodes: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut cpt_lines: Vec<(usize, String, String, String, String)> = Vec::new();
    for (ln, line) in meaningful_lines(text) {
        if let Some(spec) = line.strip_prefix("domain") {
            if domain.is_some() {
                return Err(perr(ln, "duplicate domain header"));
            }
            domain = Some(parse_domain_header(ln, spec.trim())?);
        } else if let Some(name) = line.strip_prefix("node") {
            let name = name.trim();
            if name.is_empty() || name.split_whitespace().count() != 1 {
                return Err(perr(ln, "expected `node <name>`"));
            }
            nodes.push(name.to_string());
        } else if let Some(pair) = line.strip_prefix("edge") {
            let toks: Vec<&str> = pair.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(perr(ln, "expected `edge <from> <to>`"));
            }
            edges.push((toks[0].to_string(), toks[1].to_string()));
        } else if let Some(c) = line.strip_prefix("cpt") {
            let toks: Vec<&str> = c.split_whitespace().collect();
            if toks.len() != 4 {
                return Err(perr(ln, "expected `cpt <node> <parent-assignment|-> <v0> <v1>`"));
            }
            cpt_lines.push((
                ln,
                toks[0].to_string(),
                toks[1].to_string(),
                toks[2].to_string(),
                toks[3].to_string(),
            ));
        } else {
            return Err(perr(ln, format!("unrecognized line `{line}`")));
        }
    }
    let domain = domain.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "network file needs a `domain` header".into(),
    })?;
    let edge_refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let dag = Dag::new(&nodes, &edge_refs)?;

    let mut rows: Vec<BTreeMap<usize, [Value; 2]>> = vec![BTreeMap::new(); dag.len()];
    for (ln, node, assign, v0, v1) in &cpt_lines {
        let x = dag.index(node).map_err(|e| perr(*ln, e.to_string()))?;
        let parents = dag.parents(x);
        let row = if assign == "-" {
            if !parents.is_empty() {
                return Err(perr(*ln, format!("node {node} has parents; spell the assignment")));
            }
            0usize
        } else {
            let mut bits: BTreeMap<usize, bool> = BTreeMap::new();
            for part in assign.split(',') {
                let (name, val) = part
                    .split_once('=')
                    .ok_or_else(|| perr(*ln, format!("bad assignment `{part}`")))?;
                let p = dag.index(name.trim()).map_err(|e| perr(*ln, e.to_string()))?;
                let b = match val.trim() {
                    "0" => false,
                    "1" => true,
                    other => return Err(perr(*ln, format!("bad value `{other}`"))),
                };
                if bits.insert(p, b).is_some() {
                    return Err(perr(*ln, format!("parent {name} assigned twice")));
                }
            }
            let expected: Vec<usize> = parents.to_vec();
            let got: Vec<usize> = bits.keys().copied().collect();
            if got != expected {
                return Err(perr(
                    *ln,
                    format!("assignment must cover exactly the parents of {node}"),
                ));
            }
            parents
                .iter()
                .enumerate()
                .map(|(j, p)| if bits[p] { 1usize << j } else { 0 })
                .sum()
        };
        let value0 = parse_value(&domain, v0).map_err(|e| perr(*ln, e.to_string()))?;
        let value1 = parse_value(&domain, v1).map_err(|e| perr(*ln, e.to_string()))?;
        if rows[x].insert(row, [value0, value1]).is_some() {
            return Err(perr(*ln, "duplicate table row"));
        }
    }
    let mut tables = Vec::with_capacity(dag.len());
    for x in 0..dag.len() {
        let parents = dag.parents(x).to_vec();
        let want = 1usize << parents.len();
        if rows[x].len() != want {
            return Err(Error::Parse {
                line: 0,
                msg: format!(
                    "node {} needs {want} table rows, found {}",
                    dag.name(x),
                    rows[x].len()
                ),
            });
        }
        let rows_vec: Vec<[Value; 2]> =
            (0..want).map(|r| rows[x].remove(&r).expect("row counted")).collect();
        tables.push(Cpt { node: x, parents, rows: rows_vec });
    }
    Ok(QuantitativeBn { dag, tables, domain })
}

/// Parses only the graph structure (and the domain header when present)
/// of a network file, ignoring table lines. Queries that never touch the
/// tables accept files without them.
pub fn parse_network_structure(text: &str) -> Result<(Dag, Option<DomainSpec>)> {
    let mut domain: Option<DomainSpec> = None;
    let mut nodes: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for (ln, line) in meaningful_lines(text) {
        if let Some(spec) = line.strip_prefix("domain") {
            domain = Some(parse_domain_header(ln, spec.trim())?);
        } else if let Some(name) = line.strip_prefix("node") {
            nodes.push(name.trim().to_string());
        } else if let Some(pair) = line.strip_prefix("edge") {
            let toks: Vec<&str> = pair.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(perr(ln, "expected `edge <from> <to>`"));
            }
            edges.push((toks[0].to_string(), toks[1].to_string()));
        } else if !line.starts_with("cpt") {
            return Err(perr(ln, format!("unrecognized line `{line}`")));
        }
    }
    let edge_refs: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Ok((Dag::new(&nodes, &edge_refs)?, domain))
}

/// Renders a network in the file grammar; `parse_network` inverts it.
pub fn render_network(bn: &QuantitativeBn) -> String {
    let mut out = String::new();
    out.push_str(&format!("domain {}\n", render_domain_header(&bn.domain)));
    for name in bn.dag.names() {
        out.push_str(&format!("node {name}\n"));
    }
    for &(a, b) in bn.dag.edges() {
        out.push_str(&format!("edge {} {}\n", bn.dag.name(a), bn.dag.name(b)));
    }
    for t in &bn.tables {
        for (r, row) in t.rows.iter().enumerate() {
            let assign = if t.parents.is_empty() {
                "-".to_string()
            } else {
                t.row_assignment(r)
                    .iter()
                    .map(|(p, b)| format!("{}={}", bn.dag.name(*p), if *b { 1 } else { 0 }))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            out.push_str(&format!(
                "cpt {} {} {} {}\n",
                bn.dag.name(t.node),
                assign,
                render_value(&row[0]),
                render_value(&row[1]),
            ));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Queries

/// Splits `A,B ; C | D,E` into the three name lists (the `|` part may be
/// absent).
fn split_query(q: &str) -> Result<(Vec<&str>, Vec<&str>, Vec<&str>)> {
    let (main, cond) = match q.split_once('|') {
        Some((m, c)) => (m, c.trim()),
        None => (q, ""),
    };
    let (left, right) = main
        .split_once(';')
        .ok_or_else(|| Error::BadQuery("expected `<left> ; <right> [| <given>]`".into()))?;
    fn names(s: &str) -> Vec<&str> {
        s.split([',', ' ']).map(str::trim).filter(|t| !t.is_empty()).collect()
    }
    Ok((names(left), names(right), names(cond)))
}

/// A variable-set query against named variables.
pub fn parse_var_query(names: &[String], q: &str) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let (l, r, c) = split_query(q)?;
    let resolve = |toks: Vec<&str>| -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for t in toks {
            out.push(
                names
                    .iter()
                    .position(|n| n == t)
                    .ok_or_else(|| Error::UnknownVariable(t.to_string()))?,
            );
        }
        out.sort_unstable();
        Ok(out)
    };
    Ok((resolve(l)?, resolve(r)?, resolve(c)?))
}

/// Event syntax: `all`, `none`, `{i,j}` world indices, `{name,...}` world
/// labels, or an assignment conjunction `A=0&B=1`.
pub fn parse_event(worlds: &Worlds, s: &str) -> Result<Event> {
    let s = s.trim();
    if s == "all" {
        return Ok(worlds.full_event());
    }
    if s == "none" {
        return Ok(worlds.empty_event());
    }
    if let Some(body) = s.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
        let mut e = worlds.empty_event();
        for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let w = if let Ok(i) = tok.parse::<usize>() {
                i
            } else {
                (0..worlds.len())
                    .find(|&w| worlds.world_name(w) == tok)
                    .ok_or_else(|| Error::BadQuery(format!("unknown world `{tok}`")))?
            };
            if w >= worlds.len() {
                return Err(Error::BadQuery(format!("world index {w} out of range")));
            }
            e.insert(w);
        }
        return Ok(e);
    }
    if s.contains('=') {
        let mut pairs = Vec::new();
        for part in s.split('&').map(str::trim) {
            let (name, val) = part
                .split_once('=')
                .ok_or_else(|| Error::BadQuery(format!("bad assignment `{part}`")))?;
            let var = worlds.var_index(name.trim())?;
            let b = match val.trim() {
                "0" => false,
                "1" => true,
                other => return Err(Error::BadQuery(format!("bad value `{other}`"))),
            };
            pairs.push((var, b));
        }
        return Ok(worlds.assignment_event(&pairs));
    }
    Err(Error::BadQuery(format!("cannot parse event `{s}`")))
}

/// An event-triple query `U ; V | V'`; a missing `|` part conditions on
/// the whole space.
pub fn parse_event_query(worlds: &Worlds, q: &str) -> Result<(Event, Event, Event)> {
    let (main, cond) = match q.split_once('|') {
        Some((m, c)) => (m, c.trim()),
        None => (q, "all"),
    };
    let (l, r) = main
        .split_once(';')
        .ok_or_else(|| Error::BadQuery("expected `<U> ; <V> [| <V'>]`".into()))?;
    Ok((
        parse_event(worlds, l)?,
        parse_event(worlds, r)?,
        parse_event(worlds, if cond.is_empty() { "all" } else { cond })?,
    ))
}
