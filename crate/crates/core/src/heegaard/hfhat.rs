//! Generator enumeration, the combinatorial differential from empty
//! embedded bigons and rectangles, homology with contact-class
//! membership, spin^c partitioning, and the first-homology invariants of
//! the assembled three-manifold.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Error, Result};
use crate::f2::{homology_with_membership, ChainComplexF2};

use super::diagram::{niceify, Diagram, Side};
use super::regions::RegionList;

/// A generator: one intersection point on each contact-system curve,
/// indexed by that curve, forming a perfect matching with the other
/// system.
pub type Generator = [u32; 3];

/// Streams all generators.
pub fn generators(d: &Diagram) -> impl Iterator<Item = Generator> + '_ {
    let mut by_curve: [Vec<u32>; 3] = Default::default();
    for p in 0..d.npts as u32 {
        by_curve[d.point_beta[p as usize] as usize].push(p);
    }
    let [c0, c1, c2] = by_curve;
    c0.into_iter().flat_map(move |p0| {
        let c1 = c1.clone();
        let c2 = c2.clone();
        c1.into_iter()
            .flat_map(move |p1| {
                let c2 = c2.clone();
                c2.iter().map(|&p2| [p0, p1, p2]).collect::<Vec<_>>()
            })
            .filter(move |g| {
                let a = [
                    d.point_alpha[g[0] as usize],
                    d.point_alpha[g[1] as usize],
                    d.point_alpha[g[2] as usize],
                ];
                a[0] != a[1] && a[0] != a[2] && a[1] != a[2]
            })
    })
}

pub fn generator_count(d: &Diagram) -> u64 {
    let mut counts = [[0u64; 3]; 3];
    for p in 0..d.npts {
        counts[d.point_alpha[p] as usize][d.point_beta[p] as usize] += 1;
    }
    let mut total = 0u64;
    for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]] {
        total += (0..3).map(|i| counts[perm[i]][i]).product::<u64>();
    }
    total
}

/// An empty embedded bigon or rectangle: the moving-corner data plus the
/// interior points excluded from supporting generators.
#[derive(Clone, Debug)]
struct DiskShape {
    xs: Vec<u32>,
    ys: Vec<u32>,
    interior: Vec<u32>,
}

/// Enumerates all embedded bigon and rectangle domains avoiding the
/// basepoint region, as closed interior-on-the-left walks with two or
/// four corners whose legs alternate between the two curve systems.
///
/// The orientation convention is pinned so that the domain flows from the
/// corners whose outgoing legs lie on the moving system; with it the
/// contact generator is a cycle and the differential squares to zero.
fn disk_shapes(d: &Diagram) -> Vec<DiskShape> {
    let mut seen: HashSet<Vec<Side>> = HashSet::new();
    let mut shapes = Vec::new();
    for r0 in 0..d.regions.len() {
        if r0 == d.base {
            continue;
        }
        for i0 in 0..d.regions[r0].len() {
            walk(d, (r0, i0), &mut seen, &mut shapes);
        }
    }
    shapes
}

fn next_turn(d: &Diagram, s: Side) -> Side {
    (s.0, (s.1 + 1) % d.regions[s.0].len())
}

fn next_straight(d: &Diagram, s: Side) -> Side {
    let (r2, i2) = d.mate[s.0][(s.1 + 1) % d.regions[s.0].len()];
    (r2, (i2 + 1) % d.regions[r2].len())
}

fn walk(d: &Diagram, start: Side, seen: &mut HashSet<Vec<Side>>, shapes: &mut Vec<DiskShape>) {
    struct Frame {
        side: Side,
        tried_turn: bool,
        tried_straight: bool,
    }
    let start_pt = d.side_points(start).0;
    let mut stack = vec![Frame { side: start, tried_turn: false, tried_straight: false }];
    let mut sides = vec![start];
    let mut visited: Vec<u32> = vec![start_pt];
    let mut turns: Vec<(u32, Side)> = vec![(start_pt, start)];

    while let Some(top) = stack.last_mut() {
        let side = top.side;
        let endpoint = d.side_points(side).1;
        if !top.tried_turn {
            top.tried_turn = true;
            // closing turn back to the start
            if endpoint == start_pt && matches!(turns.len(), 2 | 4) && next_turn(d, side) == start {
                finalize(d, &sides, &turns, seen, shapes);
            }
            // interior turn
            if !visited.contains(&endpoint) && turns.len() < 4 {
                let nt = next_turn(d, side);
                if nt.0 != d.base {
                    stack.push(Frame { side: nt, tried_turn: false, tried_straight: false });
                    sides.push(nt);
                    visited.push(endpoint);
                    turns.push((endpoint, nt));
                    continue;
                }
            }
        }
        if !top.tried_straight {
            top.tried_straight = true;
            if !visited.contains(&endpoint) {
                let ns = next_straight(d, side);
                if ns.0 != d.base {
                    stack.push(Frame { side: ns, tried_turn: false, tried_straight: false });
                    sides.push(ns);
                    visited.push(endpoint);
                    continue;
                }
            }
        }
        // backtrack
        let popped = stack.pop().unwrap();
        if stack.is_empty() {
            break;
        }
        sides.pop();
        let was_turn = turns.last().map(|&(_, s)| s) == Some(popped.side);
        if was_turn && popped.side != start {
            turns.pop();
        }
        visited.pop();
    }
}

fn finalize(
    d: &Diagram,
    sides: &[Side],
    turns: &[(u32, Side)],
    seen: &mut HashSet<Vec<Side>>,
    shapes: &mut Vec<DiskShape>,
) {
    let mut key: Vec<Side> = sides.to_vec();
    key.sort_unstable();
    if !seen.insert(key) {
        return;
    }
    let boundary: HashSet<Side> = sides.iter().copied().collect();
    // flood-fill the enclosed regions from the left regions of the walk
    let mut regs: HashSet<usize> = sides.iter().map(|s| s.0).collect();
    let mut stack: Vec<usize> = regs.iter().copied().collect();
    while let Some(r) = stack.pop() {
        for i in 0..d.regions[r].len() {
            if boundary.contains(&(r, i)) {
                continue;
            }
            let (r2, i2) = d.mate[r][i];
            if boundary.contains(&(r2, i2)) {
                // the domain would run along this edge with itself on both
                // sides: not an embedded multiplicity-one disk
                return;
            }
            if !regs.contains(&r2) {
                if r2 == d.base {
                    return;
                }
                regs.insert(r2);
                stack.push(r2);
            }
        }
    }
    if regs.contains(&d.base) {
        return;
    }
    // disk check: V - E + F = 1
    let mut pts: HashSet<u32> = HashSet::new();
    let mut side_total = 0usize;
    for &r in &regs {
        side_total += d.regions[r].len();
        pts.extend(d.regions[r].iter().copied());
    }
    let e = (side_total + sides.len()) / 2;
    if pts.len() as i64 - e as i64 + regs.len() as i64 != 1 {
        return;
    }
    let walk_pts: HashSet<u32> = sides
        .iter()
        .flat_map(|&s| {
            let (u, v) = d.side_points(s);
            [u, v]
        })
        .collect();
    let mut interior: Vec<u32> = pts.difference(&walk_pts).copied().collect();
    interior.sort_unstable();
    // moving-system corners are the sources
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &(pt, out_side) in turns {
        if d.is_alpha(out_side) {
            xs.push(pt);
        } else {
            ys.push(pt);
        }
    }
    if xs.len() != ys.len() || !matches!(xs.len(), 1 | 2) {
        return;
    }
    shapes.push(DiskShape { xs, ys, interior });
}

/// The sparse differential as index lists per generator, plus the
/// generator table.
pub struct HatComplex {
    pub gens: Vec<Generator>,
    pub index: HashMap<Generator, usize>,
    pub boundary: Vec<Vec<usize>>,
}

pub fn differential(d: &Diagram) -> Result<HatComplex> {
    if !d.is_nice() {
        return input_err("differential needs a nice diagram");
    }
    let gens: Vec<Generator> = generators(d).collect();
    let index: HashMap<Generator, usize> = gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();
    let shapes = disk_shapes(d);
    let mut by_pair: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
    let mut by_single: HashMap<u32, Vec<usize>> = HashMap::new();
    for (si, sh) in shapes.iter().enumerate() {
        match sh.xs.len() {
            1 => by_single.entry(sh.xs[0]).or_default().push(si),
            2 => {
                let key = (sh.xs[0].min(sh.xs[1]), sh.xs[0].max(sh.xs[1]));
                by_pair.entry(key).or_default().push(si);
            }
            _ => unreachable!(),
        }
    }
    let apply = |g: &Generator, sh: &DiskShape, rest: &[u32]| -> Option<Generator> {
        if rest.iter().any(|p| sh.interior.binary_search(p).is_ok()) {
            return None;
        }
        let mut y = *g;
        for &new_pt in &sh.ys {
            y[d.point_beta[new_pt as usize] as usize] = new_pt;
        }
        Some(y)
    };
    let mut boundary: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    for (gi, g) in gens.iter().enumerate() {
        let mut acc: HashSet<usize> = HashSet::new();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let key = (g[i].min(g[j]), g[i].max(g[j]));
            if let Some(list) = by_pair.get(&key) {
                let rest = [g[3 - i - j]];
                for &si in list {
                    if let Some(y) = apply(g, &shapes[si], &rest) {
                        if let Some(&yi) = index.get(&y) {
                            if !acc.insert(yi) {
                                acc.remove(&yi);
                            }
                        }
                    }
                }
            }
        }
        for slot in 0..3 {
            if let Some(list) = by_single.get(&g[slot]) {
                let rest = [g[(slot + 1) % 3], g[(slot + 2) % 3]];
                for &si in list {
                    if let Some(y) = apply(g, &shapes[si], &rest) {
                        if let Some(&yi) = index.get(&y) {
                            if !acc.insert(yi) {
                                acc.remove(&yi);
                            }
                        }
                    }
                }
            }
        }
        let mut col: Vec<usize> = acc.into_iter().collect();
        col.sort_unstable();
        boundary[gi] = col;
    }
    Ok(HatComplex { gens, index, boundary })
}

// ---------------------------------------------------------------------------
// spin^c partitioning via the corner-map lattice

/// Column-style Hermite basis of the lattice spanned by the per-region
/// corner vectors, with full reduction above pivots so coset
/// representatives are canonical.
struct CornerLattice {
    /// pivot columns sorted by pivot row: (row, column)
    pivots: Vec<(usize, Vec<i128>)>,
    dim: usize,
}

impl CornerLattice {
    fn build(d: &Diagram) -> CornerLattice {
        let dim = d.npts;
        let mut cols: Vec<Vec<i128>> = Vec::new();
        for r in 0..d.regions.len() {
            let mut v = vec![0i128; dim];
            let len = d.regions[r].len();
            for i in 0..len {
                if d.is_alpha((r, i)) {
                    let (u, w) = d.side_points((r, i));
                    v[u as usize] -= 1;
                    v[w as usize] += 1;
                }
            }
            if v.iter().any(|&x| x != 0) {
                cols.push(v);
            }
        }
        let mut pivots: Vec<(usize, Vec<i128>)> = Vec::new();
        for row in 0..dim {
            // gcd-combine all columns with nonzero entry at this row
            loop {
                let mut active: Vec<usize> = (0..cols.len()).filter(|&c| cols[c][row] != 0).collect();
                if active.len() <= 1 {
                    break;
                }
                active.sort_by_key(|&c| cols[c][row].unsigned_abs());
                let (small, big) = (active[0], active[1]);
                let k = cols[big][row] / cols[small][row];
                for i in 0..dim {
                    let s = cols[small][i];
                    cols[big][i] -= k * s;
                }
            }
            if let Some(c) = (0..cols.len()).find(|&c| cols[c][row] != 0) {
                let mut col = cols.swap_remove(c);
                if col[row] < 0 {
                    for x in col.iter_mut() {
                        *x = -*x;
                    }
                }
                pivots.push((row, col));
            }
        }
        // full reduction above pivots for canonical coset representatives
        for pi in (0..pivots.len()).rev() {
            let (row, _) = pivots[pi];
            let d_val = pivots[pi].1[row];
            for pj in 0..pi {
                let k = pivots[pj].1[row].div_euclid(d_val);
                if k != 0 {
                    for i in 0..dim {
                        let s = pivots[pi].1[i];
                        pivots[pj].1[i] -= k * s;
                    }
                }
            }
        }
        CornerLattice { pivots, dim }
    }

    /// Canonical representative of v modulo the lattice.
    fn canonical(&self, mut v: Vec<i128>) -> Vec<i128> {
        debug_assert_eq!(v.len(), self.dim);
        for (row, col) in &self.pivots {
            let d_val = col[*row];
            let k = v[*row].div_euclid(d_val);
            if k != 0 {
                for i in 0..self.dim {
                    v[i] -= k * col[i];
                }
            }
        }
        v
    }
}

/// Assigns each generator its spin^c class label.
fn spinc_classes(d: &Diagram, gens: &[Generator]) -> Vec<usize> {
    let lattice = CornerLattice::build(d);
    // canonical forms are sparse; cache per point
    let mut point_form: Vec<Vec<(usize, i128)>> = Vec::with_capacity(d.npts);
    for p in 0..d.npts {
        let mut v = vec![0i128; d.npts];
        v[p] = 1;
        let c = lattice.canonical(v);
        point_form.push(
            c.into_iter()
                .enumerate()
                .filter(|(_, x)| *x != 0)
                .collect(),
        );
    }
    let mut labels: HashMap<Vec<(usize, i128)>, usize> = HashMap::new();
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        let mut v = vec![0i128; d.npts];
        for &p in g {
            for &(row, val) in &point_form[p as usize] {
                v[row] += val;
            }
        }
        let c = lattice.canonical(v);
        let key: Vec<(usize, i128)> = c
            .into_iter()
            .enumerate()
            .filter(|(_, x)| *x != 0)
            .collect();
        let next = labels.len();
        out.push(*labels.entry(key).or_insert(next));
    }
    out
}

// ---------------------------------------------------------------------------
// orientations, intersection matrix, first homology

/// Signed count of intersections between curve systems: entry (i, j)
/// counts the points on moving curve i and contact curve j with local
/// orientation signs, for an arbitrary-but-fixed orientation of each
/// curve.
pub fn intersection_matrix(d: &Diagram) -> Result<[[i64; 3]; 3]> {
    // successor side along the same curve, continuing past the endpoint
    let mut out_at: HashMap<(u32, bool), Vec<Side>> = HashMap::new();
    for r in 0..d.regions.len() {
        for i in 0..d.regions[r].len() {
            let (u, _) = d.side_points((r, i));
            out_at.entry((u, d.is_alpha((r, i)))).or_default().push((r, i));
        }
    }
    let succ = |s: Side| -> Result<Side> {
        let (_, v) = d.side_points(s);
        let mate = d.mate[s.0][s.1];
        let outs = out_at
            .get(&(v, d.is_alpha(s)))
            .ok_or_else(|| Error::Internal("missing curve continuation".into()))?;
        let nexts: Vec<Side> = outs.iter().copied().filter(|&o| o != mate).collect();
        if nexts.len() != 1 {
            return Err(Error::Internal("curve continuation not unique".into()));
        }
        Ok(nexts[0])
    };
    // orient every curve by walking its side cycle once
    let mut sign: HashMap<Side, i8> = HashMap::new();
    for r in 0..d.regions.len() {
        for i in 0..d.regions[r].len() {
            if sign.contains_key(&(r, i)) {
                continue;
            }
            let mut s = (r, i);
            loop {
                sign.insert(s, 1);
                sign.insert(d.mate[s.0][s.1], -1);
                s = succ(s)?;
                if s == (r, i) {
                    break;
                }
            }
        }
    }
    // rotation at a point: the next outgoing side counterclockwise after
    // arriving along a side is the corner continuation in the mate region
    let ccw_next = |o: Side| -> Side {
        let (r2, i2) = d.mate[o.0][o.1];
        (r2, (i2 + 1) % d.regions[r2].len())
    };
    let mut matrix = [[0i64; 3]; 3];
    for p in 0..d.npts as u32 {
        let a_out = *out_at[&(p, true)]
            .iter()
            .find(|&&s| sign[&s] == 1)
            .ok_or_else(|| Error::Internal("unoriented side".into()))?;
        let b_out = *out_at[&(p, false)]
            .iter()
            .find(|&&s| sign[&s] == 1)
            .ok_or_else(|| Error::Internal("unoriented side".into()))?;
        let mut order = [a_out; 4];
        for t in 1..4 {
            order[t] = ccw_next(order[t - 1]);
        }
        let local = if order[1] == b_out {
            1
        } else if order[3] == b_out {
            -1
        } else {
            return Err(Error::Internal("broken vertex rotation".into()));
        };
        matrix[d.point_alpha[p as usize] as usize][d.point_beta[p as usize] as usize] += local;
    }
    Ok(matrix)
}

pub fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Invariant factors of an integer 3x3 matrix: diagonal of the Smith
/// form, including zeros for free rank.
pub fn invariant_factors(m: &[[i64; 3]; 3]) -> Vec<u64> {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let n = 3usize;
    let mut out = Vec::new();
    let mut top = 0usize;
    while top < n {
        // find the minimal nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in top..n {
            for j in top..n {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(top, bi);
        for row in a.iter_mut() {
            row.swap(top, bj);
        }
        let mut clean = false;
        while !clean {
            clean = true;
            for i in top + 1..n {
                let k = a[i][top].div_euclid(a[top][top]);
                if k != 0 {
                    for j in top..n {
                        let s = a[top][j];
                        a[i][j] -= k * s;
                    }
                }
                if a[i][top] != 0 {
                    a.swap(top, i);
                    clean = false;
                }
            }
            for j in top + 1..n {
                let k = a[top][j].div_euclid(a[top][top]);
                if k != 0 {
                    for i in top..n {
                        let s = a[i][top];
                        a[i][j] -= k * s;
                    }
                }
                if a[top][j] != 0 {
                    // column still nonzero: swap into pivot and retry
                    for row in a.iter_mut() {
                        row.swap(top, j);
                    }
                    clean = false;
                }
            }
        }
        out.push(a[top][top].unsigned_abs() as u64);
        top += 1;
    }
    while out.len() < n {
        out.push(0);
    }
    // enforce divisibility
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if out[i] != 0 && out[j] != 0 {
                let g = gcd(out[i], out[j]);
                let l = out[i] / g * out[j];
                out[i] = g;
                out[j] = l;
            } else if out[i] == 0 && out[j] != 0 {
                out.swap(i, j);
            }
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Euler characteristic of the hat invariant with mod-two grading signs;
/// by the product structure of the generator set this equals the signed
/// intersection determinant.
pub fn euler_characteristic(d: &Diagram) -> Result<i64> {
    Ok(det3(&intersection_matrix(d)?))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NiceInvariants {
    pub generators: u64,
    /// homology dimension per spin^c class
    pub dims: Vec<usize>,
    pub total_dim: usize,
    pub contact_vanishes: bool,
    pub chi: i64,
    /// nonzero invariant factors of the first homology; a zero entry
    /// records a free summand
    pub h1: Vec<u64>,
}

/// Runs the full pipeline on a nice diagram.
pub fn hf_invariants(d: &Diagram) -> Result<NiceInvariants> {
    let hc = differential(d)?;
    let names: Vec<String> = hc.gens.iter().map(|g| format!("{g:?}")).collect();
    let contact: Generator = [0, 1, 2];
    let contact_idx = *hc
        .index
        .get(&contact)
        .ok_or_else(|| Error::Internal("contact generator missing".into()))?;
    let spinc = spinc_classes(d, &hc.gens);
    let mut complex = ChainComplexF2::new(names, hc.boundary.clone())?.with_distinguished(vec![contact_idx])?;
    let report = homology_with_membership(&complex)?;
    // aggregate component dims into spin^c classes
    let nspinc = spinc.iter().copied().max().map_or(0, |m| m + 1);
    let mut dims = vec![0usize; nspinc];
    let mut comp_to_spinc: HashMap<usize, usize> = HashMap::new();
    for (gi, &comp) in complex.component.iter().enumerate() {
        comp_to_spinc.entry(comp).or_insert(spinc[gi]);
    }
    for (comp, dim) in report.dims.iter().enumerate() {
        dims[comp_to_spinc[&comp]] += dim;
    }
    complex.distinguished = None; // complex no longer needed
    let matrix = intersection_matrix(d)?;
    let factors = invariant_factors(&matrix);
    Ok(NiceInvariants {
        generators: hc.gens.len() as u64,
        dims,
        total_dim: report.total_dim,
        contact_vanishes: report.distinguished_is_boundary.unwrap_or(false),
        chi: det3(&matrix),
        h1: factors.into_iter().filter(|&f| f != 1).collect(),
    })
}

/// End-to-end vanishing decision from a region list.
pub fn contact_vanishes_nice(rl: &RegionList) -> Result<bool> {
    let d = super::diagram::build_diagram(rl)?;
    let (nice, _) = niceify(d)?;
    Ok(hf_invariants(&nice)?.contact_vanishes)
}
