//! Decorated graphs presenting the four module flavors over the torus
//! algebra, together with structure validation, the grading machinery,
//! the digit-swap relabeling, and labeled-graph isomorphism.
//!
//! Vertices carry idempotents. In a Type A graph, a directed path encodes
//! a higher action: concatenate the edge labels and split the string into
//! the fewest algebra generators. In a Type D graph, each edge carries a
//! single algebra generator or stands for a pure differential.

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};
use crate::torus::{Gen, Idem};

/// Distinguished generators carried by a decorated graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marks {
    pub contact: Option<usize>,
    pub contact_alt: Option<usize>,
    pub loss: Option<(usize, usize)>,
}

impl Marks {
    pub(crate) fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> Marks {
        Marks {
            contact: self.contact.and_then(&f),
            contact_alt: self.contact_alt.and_then(&f),
            loss: self.loss.and_then(|(a, b)| Some((f(a)?, f(b)?))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeAGraph {
    pub names: Vec<String>,
    pub idems: Vec<Idem>,
    /// (source, target, nonempty digit string over {1,2,3})
    pub edges: Vec<(usize, usize, String)>,
    pub marks: Marks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeDGraph {
    pub names: Vec<String>,
    pub idems: Vec<Idem>,
    /// (source, target, label); `None` is a pure differential
    pub edges: Vec<(usize, usize, Option<Gen>)>,
    pub marks: Marks,
}

/// A left-D right-A bimodule given by its structure entries
/// (generator, algebra inputs, algebra output or unit, target).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DaBimodule {
    pub names: Vec<String>,
    pub idems: Vec<(Idem, Idem)>,
    pub entries: Vec<(usize, Vec<Gen>, Option<Gen>, usize)>,
}

/// A bimodule with two differential-style outputs
/// (generator, left output, target, right output); `None` is the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdBimodule {
    pub names: Vec<String>,
    pub idems: Vec<(Idem, Idem)>,
    pub entries: Vec<(usize, Option<Gen>, usize, Option<Gen>)>,
}

/// Splits a digit string into the fewest algebra generators: maximal
/// ascending runs of consecutive digits.
pub fn min_split(s: &str) -> Result<Vec<Gen>> {
    if s.is_empty() {
        return input_err("empty label");
    }
    let digits: Vec<u8> = s
        .bytes()
        .map(|b| match b {
            b'1'..=b'3' => Ok(b - b'0'),
            _ => input_err::<u8>(format!("bad digit in label {s:?}")),
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=digits.len() {
        if i == digits.len() || digits[i] != digits[i - 1] + 1 {
            out.push(Gen::from_digits(&s[start..i])?);
            start = i;
        }
    }
    Ok(out)
}

impl TypeAGraph {
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &(usize, usize, String)> {
        self.edges.iter().filter(move |(a, _, _)| *a == v)
    }

    /// All actions read off from directed paths of concatenated label
    /// length at most `max_len`.
    pub fn expand(&self, max_len: usize) -> Result<Vec<(usize, Vec<Gen>, usize)>> {
        let mut out = Vec::new();
        for x in 0..self.names.len() {
            let mut stack: Vec<(usize, String)> = vec![(x, String::new())];
            while let Some((v, acc)) = stack.pop() {
                if !acc.is_empty() {
                    out.push((x, min_split(&acc)?, v));
                }
                for (_, w, l) in self.out_edges(v) {
                    if acc.len() + l.len() <= max_len {
                        stack.push((*w, format!("{acc}{l}")));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Targets of the action with the given input sequence, mod 2: paths
    /// whose concatenated labels equal the sequence's digits, provided the
    /// sequence is its own minimal split.
    pub fn action_targets(&self, x: usize, seq: &[Gen]) -> Vec<usize> {
        let target: String = seq.iter().map(|g| g.digits().unwrap()).collect();
        match min_split(&target) {
            Ok(ms) if ms == seq => {}
            _ => return Vec::new(),
        }
        let mut counts: std::collections::HashMap<usize, u32> = Default::default();
        let mut stack: Vec<(usize, usize)> = vec![(x, 0)];
        while let Some((v, pos)) = stack.pop() {
            if pos == target.len() {
                *counts.entry(v).or_insert(0) += 1;
                continue;
            }
            for (_, w, l) in self.out_edges(v) {
                if target[pos..].starts_with(l.as_str()) {
                    stack.push((*w, pos + l.len()));
                }
            }
        }
        let mut out: Vec<usize> = counts.into_iter().filter(|(_, c)| c % 2 == 1).map(|(v, _)| v).collect();
        out.sort_unstable();
        out
    }

    /// A directed cycle would make some action family unbounded.
    pub fn is_bounded(&self) -> bool {
        acyclic(self.names.len(), self.edges.iter().map(|(a, b, _)| (*a, *b)))
    }
}

impl TypeDGraph {
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &(usize, usize, Option<Gen>)> {
        self.edges.iter().filter(move |(a, _, _)| *a == v)
    }

    pub fn is_bounded(&self) -> bool {
        acyclic(self.names.len(), self.edges.iter().map(|(a, b, _)| (*a, *b)))
    }

    pub fn has_pure_edges(&self) -> bool {
        self.edges.iter().any(|(_, _, l)| l.is_none())
    }

    /// Sorted edge list for deterministic downstream processing.
    pub fn normalized(mut self) -> Self {
        self.edges.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
        self
    }
}

fn acyclic(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut adj = vec![Vec::new(); n];
    for (a, b) in edges {
        adj[a].push(b);
    }
    // 0 = unseen, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        state[s] = 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    true
}

/// Violations found by structure validation; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub violations: Vec<String>,
    pub bounded: Option<bool>,
}

impl StructureReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_type_a(g: &TypeAGraph, ainf_input_bound: usize) -> StructureReport {
    let mut r = StructureReport { bounded: Some(g.is_bounded()), ..Default::default() };
    for (a, b, l) in &g.edges {
        match min_split(l) {
            Ok(seq) => {
                let lead = seq.first().unwrap().idems().0;
                let trail = seq.last().unwrap().idems().1;
                if g.idems[*a] != lead {
                    r.violations.push(format!(
                        "edge {}->{} [{l}]: source idempotent mismatch",
                        g.names[*a], g.names[*b]
                    ));
                }
                if g.idems[*b] != trail {
                    r.violations.push(format!(
                        "edge {}->{} [{l}]: target idempotent mismatch",
                        g.names[*a], g.names[*b]
                    ));
                }
            }
            Err(e) => r.violations.push(format!("edge label {l:?}: {e}")),
        }
    }
    if r.violations.is_empty() {
        ainf_check(g, ainf_input_bound, &mut r);
    }
    r
}

/// Checks the module relations on input sequences of basis Reeb elements
/// up to the given length.
fn ainf_check(g: &TypeAGraph, max_inputs: usize, r: &mut StructureReport) {
    use Gen::*;
    let reeb = [R1, R2, R3, R12, R23, R123];
    let n = g.names.len();
    // all input sequences of length 2..=max_inputs over the Reeb basis
    let mut all: Vec<Vec<Gen>> = Vec::new();
    let mut layer: Vec<Vec<Gen>> = reeb.iter().map(|&a| vec![a]).collect();
    for _ in 2..=max_inputs {
        let mut next = Vec::new();
        for s in &layer {
            for &a in &reeb {
                let mut t = s.clone();
                t.push(a);
                next.push(t);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    for x in 0..n {
        for seq in &all {
            let mut acc: std::collections::HashMap<usize, u32> = Default::default();
            // compositions through an intermediate generator
            for i in 1..seq.len() {
                for mid in g.action_targets(x, &seq[..i]) {
                    for y in g.action_targets(mid, &seq[i..]) {
                        *acc.entry(y).or_insert(0) += 1;
                    }
                }
            }
            // merges of adjacent inputs
            for j in 0..seq.len() - 1 {
                if let Some(prod) = seq[j].mul(seq[j + 1]) {
                    let mut merged = seq[..j].to_vec();
                    merged.push(prod);
                    merged.extend_from_slice(&seq[j + 2..]);
                    for y in g.action_targets(x, &merged) {
                        *acc.entry(y).or_insert(0) += 1;
                    }
                }
            }
            if acc.values().any(|c| c % 2 == 1) {
                r.violations.push(format!(
                    "module relation fails at {} with inputs {:?}",
                    g.names[x],
                    seq.iter().map(|s| s.to_string()).collect::<Vec<_>>()
                ));
                return;
            }
        }
    }
}

pub fn validate_type_d(g: &TypeDGraph) -> StructureReport {
    let mut r = StructureReport { bounded: Some(g.is_bounded()), ..Default::default() };
    for (a, b, l) in &g.edges {
        match l {
            None => {
                if g.idems[*a] != g.idems[*b] {
                    r.violations.push(format!(
                        "pure edge {}->{} joins distinct idempotents",
                        g.names[*a], g.names[*b]
                    ));
                }
            }
            Some(gen) => {
                let (li, ri) = gen.idems();
                if g.idems[*a] != li || g.idems[*b] != ri {
                    r.violations.push(format!(
                        "edge {}->{} [{gen}]: idempotent mismatch",
                        g.names[*a], g.names[*b]
                    ));
                }
            }
        }
    }
    // structure relation: two-step label products cancel mod 2
    let n = g.names.len();
    for x in 0..n {
        let mut acc: std::collections::HashMap<(usize, Gen), u32> = Default::default();
        for (_, y, l1) in g.out_edges(x) {
            for (_, z, l2) in g.out_edges(*y) {
                let prod = match (l1, l2) {
                    (None, None) => {
                        r.violations.push(format!(
                            "composable pure differentials at {}",
                            g.names[x]
                        ));
                        continue;
                    }
                    (None, Some(b)) => Some(*b),
                    (Some(a), None) => Some(*a),
                    (Some(a), Some(b)) => a.mul(*b),
                };
                if let Some(p) = prod {
                    *acc.entry((*z, p)).or_insert(0) += 1;
                }
            }
        }
        for ((z, p), c) in acc {
            if c % 2 == 1 {
                r.violations.push(format!(
                    "structure relation fails: {} => {p} (x) {}",
                    g.names[x], g.names[z]
                ));
            }
        }
    }
    r
}

pub fn validate_da(b: &DaBimodule) -> StructureReport {
    let mut r = StructureReport::default();
    for (x, inputs, out, y) in &b.entries {
        let (lx, rx) = b.idems[*x];
        let (ly, ry) = b.idems[*y];
        match out {
            Some(o) => {
                let (lo, ro) = o.idems();
                if lx != lo || ro != ly {
                    r.violations.push(format!("entry at {}: output idempotents", b.names[*x]));
                }
            }
            None => {
                if lx != ly {
                    r.violations.push(format!("entry at {}: unit output idempotents", b.names[*x]));
                }
            }
        }
        let mut cur = rx;
        for a in inputs {
            let (la, ra) = a.idems();
            if cur != la {
                r.violations.push(format!("entry at {}: input chain", b.names[*x]));
            }
            cur = ra;
        }
        if cur != ry {
            r.violations.push(format!("entry at {}: input chain tail", b.names[*x]));
        }
    }
    r
}

pub fn validate_dd(b: &DdBimodule) -> StructureReport {
    let mut r = StructureReport::default();
    for (x, left, y, right) in &b.entries {
        let (lx, rx) = b.idems[*x];
        let (ly, ry) = b.idems[*y];
        match left {
            Some(a) => {
                let (la, ra) = a.idems();
                if lx != la || ra != ly {
                    r.violations.push(format!("entry at {}: left output", b.names[*x]));
                }
            }
            None => {
                if lx != ly {
                    r.violations.push(format!("entry at {}: unit left output", b.names[*x]));
                }
            }
        }
        match right {
            Some(bv) => {
                let (lb, rb) = bv.idems();
                if ry != lb || rb != rx {
                    r.violations.push(format!("entry at {}: right output", b.names[*x]));
                }
            }
            None => {
                if ry != rx {
                    r.violations.push(format!("entry at {}: unit right output", b.names[*x]));
                }
            }
        }
    }
    // nilpotence: the entry graph must be acyclic
    let nilpotent = acyclic(b.names.len(), b.entries.iter().map(|(x, _, y, _)| (*x, *y)));
    r.bounded = Some(nilpotent);
    if !nilpotent {
        r.violations.push("entry graph has a cycle: not nilpotent".into());
    }
    r
}

// ---------------------------------------------------------------------------
// relabeling

fn swap_digits(label: &str) -> String {
    label
        .chars()
        .map(|c| match c {
            '1' => '3',
            '3' => '1',
            other => other,
        })
        .collect()
}

/// Turns a pure-differential-free Type D graph into the Type A graph with
/// every label digit-swapped (1 <-> 3), and idempotents unchanged.
pub fn relabel_13_to_a(d: &TypeDGraph) -> Result<TypeAGraph> {
    if d.has_pure_edges() {
        return input_err("relabeling requires no pure differentials");
    }
    let edges = d
        .edges
        .iter()
        .map(|(a, b, l)| (*a, *b, swap_digits(l.unwrap().digits().unwrap())))
        .collect();
    Ok(TypeAGraph {
        names: d.names.clone(),
        idems: d.idems.clone(),
        edges,
        marks: d.marks.clone(),
    })
}

/// Inverse direction: every digit-swapped label must be a single algebra
/// generator.
pub fn relabel_13_to_d(a: &TypeAGraph) -> Result<TypeDGraph> {
    let mut edges = Vec::with_capacity(a.edges.len());
    for (x, y, l) in &a.edges {
        let swapped = swap_digits(l);
        let gen = Gen::from_digits(&swapped)
            .map_err(|_| crate::error::Error::Input(format!("label {l:?} does not swap to an algebra generator")))?;
        edges.push((*x, *y, Some(gen)));
    }
    Ok(TypeDGraph {
        names: a.names.clone(),
        idems: a.idems.clone(),
        edges,
        marks: a.marks.clone(),
    })
}

// ---------------------------------------------------------------------------
// gradings

/// A vector in (1/2)Z^2 stored in half-units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingVec(pub i64, pub i64);

impl GradingVec {
    pub fn add(self, o: GradingVec) -> GradingVec {
        GradingVec(self.0 + o.0, self.1 + o.1)
    }
    pub fn sub(self, o: GradingVec) -> GradingVec {
        GradingVec(self.0 - o.0, self.1 - o.1)
    }
    pub fn neg(self) -> GradingVec {
        GradingVec(-self.0, -self.1)
    }
    pub fn is_zero(self) -> bool {
        self.0 == 0 && self.1 == 0
    }
    /// Integer-vector entries when both half-unit coordinates are even.
    pub fn as_whole(self) -> Option<(i64, i64)> {
        if self.0 % 2 == 0 && self.1 % 2 == 0 {
            Some((self.0 / 2, self.1 / 2))
        } else {
            None
        }
    }
    pub fn from_whole(a: i64, b: i64) -> GradingVec {
        GradingVec(2 * a, 2 * b)
    }

    /// Congruence modulo the subgroup generated by `quotient`.
    pub fn congruent(self, other: GradingVec, quotient: GradingVec) -> bool {
        let d = self.sub(other);
        if quotient.is_zero() {
            return d.is_zero();
        }
        // d == k * quotient for an integer k
        if quotient.0 != 0 {
            d.0 % quotient.0 == 0 && {
                let k = d.0 / quotient.0;
                d.1 == k * quotient.1
            }
        } else {
            d.0 == 0 && quotient.1 != 0 && d.1 % quotient.1 == 0
        }
    }
}

fn digit_grading(d: char) -> GradingVec {
    match d {
        '1' => GradingVec(1, -1),
        '2' => GradingVec(1, 1),
        '3' => GradingVec(-1, 1),
        _ => unreachable!(),
    }
}

/// Grading increment of a Type A edge label: the digit gradings add.
pub fn label_grading_a(label: &str) -> GradingVec {
    label.chars().fold(GradingVec::default(), |acc, c| acc.add(digit_grading(c)))
}

/// Grading increment of a Type D edge: the digit-swapped label's increment.
pub fn label_grading_d(label: Gen) -> GradingVec {
    label_grading_a(&swap_digits(label.digits().unwrap()))
}

/// Edge increments for either flavor of decorated graph.
pub enum GradedEdges<'a> {
    A(&'a TypeAGraph),
    D(&'a TypeDGraph),
}

impl<'a> GradedEdges<'a> {
    fn len(&self) -> usize {
        match self {
            GradedEdges::A(g) => g.names.len(),
            GradedEdges::D(g) => g.names.len(),
        }
    }

    fn edges(&self) -> Vec<(usize, usize, GradingVec)> {
        match self {
            GradedEdges::A(g) => g
                .edges
                .iter()
                .map(|(a, b, l)| (*a, *b, label_grading_a(l)))
                .collect(),
            GradedEdges::D(g) => g
                .edges
                .iter()
                .map(|(a, b, l)| (*a, *b, l.map(label_grading_d).unwrap_or_default()))
                .collect(),
        }
    }
}

/// Path-lifted gradings per generator plus the component structure and the
/// common fundamental-cycle lift (zero when the graph is a forest).
pub struct GradingData {
    pub lift: Vec<GradingVec>,
    pub component: Vec<usize>,
    pub monodromy: GradingVec,
}

/// BFS path lift of the edge increments over a spanning forest; every
/// off-forest edge closes a cycle whose lift must agree across the whole
/// graph up to sign. That shared lift (sign-normalized so the first
/// nonzero coordinate is positive) is the quotient vector.
pub fn grading_data(g: &GradedEdges) -> Result<GradingData> {
    let n = g.len();
    let edges = g.edges();
    let mut adj: Vec<Vec<(usize, GradingVec)>> = vec![Vec::new(); n];
    for (a, b, w) in &edges {
        adj[*a].push((*b, *w));
        adj[*b].push((*a, w.neg()));
    }
    let mut lift = vec![GradingVec::default(); n];
    let mut comp = vec![usize::MAX; n];
    let mut ncomp = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = ncomp;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(w, inc) in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = ncomp;
                    lift[w] = lift[v].add(inc);
                    queue.push_back(w);
                }
            }
        }
        ncomp += 1;
    }
    let mut monodromy = GradingVec::default();
    for (a, b, w) in &edges {
        let c = lift[*a].add(*w).sub(lift[*b]);
        if c.is_zero() {
            continue;
        }
        let c = if c.0 < 0 || (c.0 == 0 && c.1 < 0) { c.neg() } else { c };
        if monodromy.is_zero() {
            monodromy = c;
        } else if monodromy != c {
            return Err(crate::error::Error::Internal(
                "fundamental cycles disagree on the grading lift".into(),
            ));
        }
    }
    Ok(GradingData { lift, component: comp, monodromy })
}

/// The shared fundamental-cycle lift; errors when the graph is a forest.
pub fn cycle_monodromy(g: &GradedEdges) -> Result<GradingVec> {
    let data = grading_data(g)?;
    if data.monodromy.is_zero() {
        return Err(crate::error::Error::Internal("graph carries no cycle".into()));
    }
    Ok(data.monodromy)
}

/// Grading difference gr(y) - gr(x) for generators in the same weak
/// component, together with the quotient vector to reduce against.
pub fn grading_diff(g: &GradedEdges, x: usize, y: usize) -> Result<(GradingVec, GradingVec)> {
    let data = grading_data(g)?;
    if data.component[x] != data.component[y] {
        return input_err("generators lie in different components");
    }
    Ok((data.lift[y].sub(data.lift[x]), data.monodromy))
}

// ---------------------------------------------------------------------------
// isomorphism

/// Backtracking isomorphism test for labeled decorated graphs, respecting
/// idempotents, edge labels, and (when present on both sides) the contact
/// mark.
pub fn isomorphic_d(g1: &TypeDGraph, g2: &TypeDGraph) -> bool {
    if g1.names.len() != g2.names.len() || g1.edges.len() != g2.edges.len() {
        return false;
    }
    let n = g1.names.len();
    let sig = |g: &TypeDGraph, v: usize| {
        let mut outs: Vec<(Option<Gen>, Idem)> =
            g.out_edges(v).map(|(_, b, l)| (*l, g.idems[*b])).collect();
        outs.sort_unstable_by_key(|k| format!("{k:?}"));
        let mut ins: Vec<(Option<Gen>, Idem)> = g
            .edges
            .iter()
            .filter(|(_, b, _)| *b == v)
            .map(|(a, _, l)| (*l, g.idems[*a]))
            .collect();
        ins.sort_unstable_by_key(|k| format!("{k:?}"));
        (g.idems[v], outs, ins)
    };
    let sig1: Vec<_> = (0..n).map(|v| sig(g1, v)).collect();
    let sig2: Vec<_> = (0..n).map(|v| sig(g2, v)).collect();

    let e1: std::collections::HashSet<(usize, usize, Option<Gen>)> =
        g1.edges.iter().map(|(a, b, l)| (*a, *b, *l)).collect();
    let out1: Vec<Vec<(usize, Option<Gen>)>> = {
        let mut o = vec![Vec::new(); n];
        for (a, b, l) in &g1.edges {
            o[*a].push((*b, *l));
        }
        o
    };
    let e2: std::collections::HashSet<(usize, usize, Option<Gen>)> =
        g2.edges.iter().map(|(a, b, l)| (*a, *b, *l)).collect();

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // order vertices by decreasing degree for faster pruning
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(sig1[v].1.len() + sig1[v].2.len()));

    // respect contact marks when both graphs carry one
    if let (Some(c1), Some(c2)) = (g1.marks.contact, g2.marks.contact) {
        if sig1[c1] != sig2[c2] {
            return false;
        }
        mapping[c1] = c2;
        used[c2] = true;
        order.retain(|&v| v != c1);
    }

    fn bt(
        idx: usize,
        order: &[usize],
        sig1: &[(Idem, Vec<(Option<Gen>, Idem)>, Vec<(Option<Gen>, Idem)>)],
        sig2: &[(Idem, Vec<(Option<Gen>, Idem)>, Vec<(Option<Gen>, Idem)>)],
        out1: &[Vec<(usize, Option<Gen>)>],
        e1: &std::collections::HashSet<(usize, usize, Option<Gen>)>,
        e2: &std::collections::HashSet<(usize, usize, Option<Gen>)>,
        mapping: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if idx == order.len() {
            return e1
                .iter()
                .all(|(a, b, l)| e2.contains(&(mapping[*a], mapping[*b], *l)));
        }
        let v = order[idx];
        for w in 0..sig2.len() {
            if used[w] || sig1[v] != sig2[w] {
                continue;
            }
            // local consistency against already-mapped neighbors
            let ok = out1[v].iter().all(|(b, l)| {
                mapping[*b] == usize::MAX || e2.contains(&(w, mapping[*b], *l))
            }) && (0..mapping.len()).all(|a| {
                mapping[a] == usize::MAX
                    || out1[a]
                        .iter()
                        .all(|(b, l)| *b != v || e2.contains(&(mapping[a], w, *l)))
            });
            if !ok {
                continue;
            }
            mapping[v] = w;
            used[w] = true;
            if bt(idx + 1, order, sig1, sig2, out1, e1, e2, mapping, used) {
                return true;
            }
            mapping[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    bt(0, &order, &sig1, &sig2, &out1, &e1, &e2, &mut mapping, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_split_examples() {
        use Gen::*;
        assert_eq!(min_split("2").unwrap(), vec![R2]);
        assert_eq!(min_split("32321").unwrap(), vec![R3, R23, R2, R1]);
        assert_eq!(min_split("232").unwrap(), vec![R23, R2]);
        assert_eq!(min_split("123").unwrap(), vec![R123]);
        assert!(min_split("4").is_err());
        assert!(min_split("").is_err());
    }

    #[test]
    fn grading_table_rows() {
        assert_eq!(label_grading_a("1"), GradingVec(1, -1));
        assert_eq!(label_grading_a("2"), GradingVec(1, 1));
        assert_eq!(label_grading_a("3"), GradingVec(-1, 1));
        assert_eq!(label_grading_a("21"), GradingVec::from_whole(1, 0));
        assert_eq!(label_grading_a("32"), GradingVec::from_whole(0, 1));
        assert_eq!(label_grading_a("321"), GradingVec(1, 1));
    }

    #[test]
    fn relabel_involution() {
        assert_eq!(swap_digits("123"), "321");
        assert_eq!(swap_digits("2"), "2");
        assert_eq!(swap_digits(&swap_digits("3221")), "3221");
    }
}
