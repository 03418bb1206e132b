//! The three box tensor products and pure-differential cancellation with
//! marked-generator protection.

use crate::error::{Error, Result};
use crate::f2::ChainComplexF2;
use crate::graphs::{min_split, DaBimodule, DdBimodule, Marks, TypeAGraph, TypeDGraph};
use crate::torus::{Gen, Idem};

fn tensor_name(a: &str, b: &str) -> String {
    format!("{a}|{b}")
}

/// Pairs a right module presented by a Type A graph with a left Type D
/// graph into an F2 chain complex on idempotent-matched generator pairs.
/// At least one factor must be bounded.
pub fn box_ad(a: &TypeAGraph, d: &TypeDGraph) -> Result<ChainComplexF2> {
    let a_bounded = a.is_bounded();
    let d_bounded = d.is_bounded();
    if !a_bounded && !d_bounded {
        return Err(Error::Unsupported(
            "box tensor needs at least one bounded factor".into(),
        ));
    }
    let mut pairs = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (i, ai) in a.idems.iter().enumerate() {
        for (j, dj) in d.idems.iter().enumerate() {
            if ai == dj {
                index.insert((i, j), pairs.len());
                pairs.push((i, j));
            }
        }
    }
    let names: Vec<String> = pairs
        .iter()
        .map(|&(i, j)| tensor_name(&a.names[i], &d.names[j]))
        .collect();
    let mut boundary: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    for (pi, &(x, y)) in pairs.iter().enumerate() {
        let mut counts: std::collections::HashMap<usize, u32> = Default::default();
        // pure differentials pass through by strict unitality
        for (_, y2, l) in d.out_edges(y) {
            if l.is_none() {
                if let Some(&t) = index.get(&(x, *y2)) {
                    *counts.entry(t).or_insert(0) += 1;
                }
            }
        }
        // higher actions matched against differential chains
        if a_bounded {
            // enumerate actions from x, then count matching chains in d
            for (seq, x2) in actions_from(a, x)? {
                for (y2, c) in chain_targets(d, y, &seq) {
                    if let Some(&t) = index.get(&(x2, y2)) {
                        *counts.entry(t).or_insert(0) += c;
                    }
                }
            }
        } else {
            // d bounded: enumerate label chains from y, then match actions
            for (seq, y2, c) in chains_from(d, y) {
                for x2 in a.action_targets(x, &seq) {
                    if let Some(&t) = index.get(&(x2, y2)) {
                        *counts.entry(t).or_insert(0) += c;
                    }
                }
            }
        }
        boundary[pi] = counts
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(t, _)| t)
            .collect();
    }
    let mut complex = ChainComplexF2::new(names, boundary)?;
    // marks combine multiplicatively when their idempotents pair up
    if let (Some(ca), Some(cd)) = (a.marks.contact, d.marks.contact) {
        if let Some(&t) = index.get(&(ca, cd)) {
            complex = complex.with_distinguished(vec![t])?;
        }
    }
    Ok(complex)
}

/// All nonzero actions from a generator of a bounded Type A graph:
/// (input sequence, target), one entry per path.
fn actions_from(a: &TypeAGraph, x: usize) -> Result<Vec<(Vec<Gen>, usize)>> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, String)> = vec![(x, String::new())];
    let mut guard = 0usize;
    while let Some((v, acc)) = stack.pop() {
        guard += 1;
        if guard > 2_000_000 {
            return Err(Error::Unsupported("action enumeration exceeded budget".into()));
        }
        if !acc.is_empty() {
            out.push((min_split(&acc)?, v));
        }
        for (_, w, l) in a.out_edges(v) {
            stack.push((*w, format!("{acc}{l}")));
        }
    }
    Ok(out)
}

/// Differential chains from y whose labels are exactly `seq` (no pure
/// edges inside), with multiplicity.
fn chain_targets(d: &TypeDGraph, y: usize, seq: &[Gen]) -> Vec<(usize, u32)> {
    let mut frontier: std::collections::HashMap<usize, u32> = [(y, 1u32)].into_iter().collect();
    for s in seq {
        let mut next: std::collections::HashMap<usize, u32> = Default::default();
        for (v, c) in frontier {
            for (_, w, l) in d.out_edges(v) {
                if *l == Some(*s) {
                    *next.entry(*w).or_insert(0) += c;
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    frontier.into_iter().collect()
}

/// All maximal-free label chains from y in a bounded Type D graph:
/// (labels, target, multiplicity), pure edges excluded.
fn chains_from(d: &TypeDGraph, y: usize) -> Vec<(Vec<Gen>, usize, u32)> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<Gen>)> = vec![(y, Vec::new())];
    while let Some((v, seq)) = stack.pop() {
        if !seq.is_empty() {
            out.push((seq.clone(), v, 1));
        }
        for (_, w, l) in d.out_edges(v) {
            if let Some(g) = l {
                let mut t = seq.clone();
                t.push(*g);
                stack.push((*w, t));
            }
        }
    }
    out
}

/// Pairs a bimodule with a left Type D graph into a new left Type D graph.
/// The entry arity of the bimodule bounds the differential chains
/// consumed, so possibly-unbounded factors are handled as long as the
/// bimodule consumes boundedly many inputs.
pub fn box_da_d(b: &DaBimodule, d: &TypeDGraph, mark_through: Option<usize>) -> Result<TypeDGraph> {
    let mut pairs = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (i, &(_, ri)) in b.idems.iter().enumerate() {
        for (j, dj) in d.idems.iter().enumerate() {
            if ri == *dj {
                index.insert((i, j), pairs.len());
                pairs.push((i, j));
            }
        }
    }
    let max_inputs = b.entries.iter().map(|(_, ins, _, _)| ins.len()).max().unwrap_or(0);
    let names: Vec<String> = pairs
        .iter()
        .map(|&(i, j)| tensor_name(&b.names[i], &d.names[j]))
        .collect();
    let idems: Vec<Idem> = pairs.iter().map(|&(i, _)| b.idems[i].0).collect();
    let mut edge_counts: std::collections::HashMap<(usize, usize, Option<Gen>), u32> =
        Default::default();
    for (pi, &(m, y)) in pairs.iter().enumerate() {
        // zero-input entries apply at every pairing of their source
        for (src, ins, out, tgt) in &b.entries {
            if *src == m && ins.is_empty() {
                if let Some(&t) = index.get(&(*tgt, y)) {
                    *edge_counts.entry((pi, t, *out)).or_insert(0) += 1;
                }
            }
        }
        // pure differentials pass through by strict unitality
        for (_, y2, l) in d.out_edges(y) {
            if l.is_none() {
                if let Some(&t) = index.get(&(m, *y2)) {
                    *edge_counts.entry((pi, t, None)).or_insert(0) += 1;
                }
            }
        }
        // label chains of length 1..=max_inputs matched against entries
        let mut frontier: Vec<(usize, Vec<Gen>, u32)> = vec![(y, Vec::new(), 1)];
        for _ in 0..max_inputs {
            let mut next = Vec::new();
            for (v, seq, c) in &frontier {
                for (_, w, l) in d.out_edges(*v) {
                    if let Some(g) = l {
                        let mut t = seq.clone();
                        t.push(*g);
                        next.push((*w, t, *c));
                    }
                }
            }
            for (w, seq, c) in &next {
                for (src, ins, out, tgt) in &b.entries {
                    if *src == m && ins == seq {
                        if let Some(&t) = index.get(&(*tgt, *w)) {
                            *edge_counts.entry((pi, t, *out)).or_insert(0) += c;
                        }
                    }
                }
            }
            frontier = next;
        }
    }
    let edges: Vec<(usize, usize, Option<Gen>)> = edge_counts
        .into_iter()
        .filter(|(_, c)| c % 2 == 1)
        .map(|((a, b2, l), _)| (a, b2, l))
        .collect();
    let marks = match mark_through {
        Some(mt) => d.marks.remap(|old| index.get(&(mt, old)).copied()),
        None => Marks::default(),
    };
    Ok(TypeDGraph { names, idems, edges, marks }.normalized())
}

/// Pairs a right module presented by a Type A graph with a nilpotent
/// two-output bimodule: the result is re-read as a left Type D graph via
/// the opposite-algebra identification (digit swap and idempotent flip on
/// the accumulated right outputs).
pub fn box_a_dd(a: &TypeAGraph, dd: &DdBimodule) -> Result<TypeDGraph> {
    let report = crate::graphs::validate_dd(dd);
    if report.bounded != Some(true) {
        return Err(Error::Unsupported("bimodule must be nilpotent".into()));
    }
    let mut pairs = Vec::new();
    let mut index = std::collections::HashMap::new();
    for (i, ai) in a.idems.iter().enumerate() {
        for (j, &(lj, _)) in dd.idems.iter().enumerate() {
            if *ai == lj {
                index.insert((i, j), pairs.len());
                pairs.push((i, j));
            }
        }
    }
    let names: Vec<String> = pairs
        .iter()
        .map(|&(i, j)| tensor_name(&a.names[i], &dd.names[j]))
        .collect();
    // left idempotent after reinterpretation: flip of the right idempotent
    let idems: Vec<Idem> = pairs.iter().map(|&(_, j)| dd.idems[j].1.flip()).collect();
    let mut edge_counts: std::collections::HashMap<(usize, usize, Option<Gen>), u32> =
        Default::default();
    for (pi, &(x, y)) in pairs.iter().enumerate() {
        // enumerate differential chains from y; nilpotence bounds length
        let mut stack: Vec<(usize, Vec<Option<Gen>>, Vec<Option<Gen>>)> = vec![(y, vec![], vec![])];
        while let Some((v, lefts, rights)) = stack.pop() {
            let k = lefts.len();
            if k > 0 {
                // target action of the A side on the left outputs
                let x_targets: Vec<usize> = if lefts.iter().any(|l| l.is_none()) {
                    // unit inputs survive only as the single-input identity action
                    if k == 1 {
                        vec![x]
                    } else {
                        vec![]
                    }
                } else {
                    let seq: Vec<Gen> = lefts.iter().map(|l| l.unwrap()).collect();
                    a.action_targets(x, &seq)
                };
                if !x_targets.is_empty() {
                    // multiply right outputs in reverse accumulation order
                    let mut prod: Option<Gen> = None;
                    let mut zero = false;
                    for r in rights.iter().rev().flatten() {
                        prod = match prod {
                            None => Some(*r),
                            Some(p) => match p.mul(*r) {
                                Some(v2) => Some(v2),
                                None => {
                                    zero = true;
                                    break;
                                }
                            },
                        };
                    }
                    if !zero {
                        let label = prod.map(Gen::opposite);
                        for x2 in x_targets {
                            if let Some(&t) = index.get(&(x2, v)) {
                                *edge_counts.entry((pi, t, label)).or_insert(0) += 1;
                            }
                        }
                    }
                }
            }
            if k < dd.names.len() {
                for (src, l, tgt, r) in &dd.entries {
                    if *src == v {
                        let mut ls = lefts.clone();
                        let mut rs = rights.clone();
                        ls.push(*l);
                        rs.push(*r);
                        stack.push((*tgt, ls, rs));
                    }
                }
            }
        }
    }
    let edges: Vec<(usize, usize, Option<Gen>)> = edge_counts
        .into_iter()
        .filter(|(_, c)| c % 2 == 1)
        .map(|((s, t, l), _)| (s, t, l))
        .collect();
    Ok(TypeDGraph { names, idems, edges, marks: Marks::default() }.normalized())
}

/// Order in which candidate pure edges are cancelled.
#[derive(Clone, Debug)]
pub enum CancelOrder {
    /// Lexicographic by (source name, target name): the deterministic
    /// default.
    Lexicographic,
    /// An explicit priority on generator indices, for order-independence
    /// tests.
    Priority(Vec<usize>),
}

/// Repeatedly removes pure differentials x -> y (both endpoints
/// unprotected), splicing every zigzag z -> y, x -> w into z -> w with the
/// product label and dropping zero products. Marks survive because
/// protected generators are never removed and marked generators carry no
/// outgoing differentials into cancelled pairs' targets unharmed.
pub fn cancel_pure(d: &TypeDGraph, protected: &[usize], order: &CancelOrder) -> TypeDGraph {
    let mut alive: Vec<bool> = vec![true; d.names.len()];
    let mut edges: Vec<(usize, usize, Option<Gen>)> = d.edges.clone();
    let prot: std::collections::HashSet<usize> = protected.iter().copied().collect();
    let rank = |v: usize| -> usize {
        match order {
            CancelOrder::Lexicographic => v,
            CancelOrder::Priority(p) => p.get(v).copied().unwrap_or(v),
        }
    };
    loop {
        // pick the first cancellable pure edge under the ordering
        let mut pick: Option<(usize, usize)> = None;
        for (x, y, l) in &edges {
            if l.is_none() && x != y && !prot.contains(x) && !prot.contains(y) {
                let key = (rank(*x), rank(*y));
                if pick.map_or(true, |(px, py)| (rank(px), rank(py)) > key) {
                    pick = Some((*x, *y));
                }
            }
        }
        let Some((x, y)) = pick else { break };
        let ins: Vec<(usize, Option<Gen>)> = edges
            .iter()
            .filter(|(a, b, _)| *b == y && *a != x)
            .map(|(a, _, l)| (*a, *l))
            .collect();
        let outs: Vec<(usize, Option<Gen>)> = edges
            .iter()
            .filter(|(a, b, _)| *a == x && *b != y)
            .map(|(_, b, l)| (*b, *l))
            .collect();
        let mut counts: std::collections::HashMap<(usize, usize, Option<Gen>), u32> =
            Default::default();
        for e in edges.iter().filter(|(a, b, _)| *a != x && *a != y && *b != x && *b != y) {
            *counts.entry(*e).or_insert(0) += 1;
        }
        for (z, l1) in &ins {
            for (w, l2) in &outs {
                let prod = match (l1, l2) {
                    (None, None) => Some(None),
                    (None, Some(b)) => Some(Some(*b)),
                    (Some(a), None) => Some(Some(*a)),
                    (Some(a), Some(b)) => a.mul(*b).map(Some),
                };
                if let Some(label) = prod {
                    *counts.entry((*z, *w, label)).or_insert(0) += 1;
                }
            }
        }
        edges = counts
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(e, _)| e)
            .collect();
        alive[x] = false;
        alive[y] = false;
    }
    // reindex the survivors
    let mut remap = vec![usize::MAX; d.names.len()];
    let mut names = Vec::new();
    let mut idems = Vec::new();
    for (i, &keep) in alive.iter().enumerate() {
        if keep {
            remap[i] = names.len();
            names.push(d.names[i].clone());
            idems.push(d.idems[i]);
        }
    }
    let edges = edges
        .into_iter()
        .map(|(a, b, l)| (remap[a], remap[b], l))
        .collect();
    let marks = d.marks.remap(|old| {
        if remap[old] == usize::MAX {
            None
        } else {
            Some(remap[old])
        }
    });
    TypeDGraph { names, idems, edges, marks }.normalized()
}
