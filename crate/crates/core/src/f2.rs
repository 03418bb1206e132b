//! Finite chain complexes over the two-element field, with homology ranks
//! and boundary-membership queries via sparse column reduction.

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};

/// A finite F2 chain complex presented by its generators and a sparse
/// boundary matrix, with an optional distinguished cycle and a component
/// label per generator (components play the role of spin^c classes).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainComplexF2 {
    pub generators: Vec<String>,
    /// boundary[i] = sorted indices of the generators appearing in d(g_i)
    pub boundary: Vec<Vec<usize>>,
    pub distinguished: Option<Vec<usize>>,
    pub component: Vec<usize>,
}

impl ChainComplexF2 {
    pub fn new(generators: Vec<String>, mut boundary: Vec<Vec<usize>>) -> Result<Self> {
        if boundary.len() != generators.len() {
            return input_err("boundary size mismatch");
        }
        for col in &mut boundary {
            col.sort_unstable();
            col.dedup();
            if col.iter().any(|&i| i >= generators.len()) {
                return input_err("boundary index out of range");
            }
        }
        let component = components(generators.len(), &boundary);
        Ok(ChainComplexF2 { generators, boundary, distinguished: None, component })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn with_distinguished(mut self, cycle: Vec<usize>) -> Result<Self> {
        let mut c = cycle;
        c.sort_unstable();
        c.dedup();
        if c.iter().any(|&i| i >= self.len()) {
            return input_err("distinguished index out of range");
        }
        self.distinguished = Some(c);
        Ok(self)
    }

    /// Applies the boundary map to an F2 chain given as a sorted index set.
    pub fn apply_boundary(&self, chain: &[usize]) -> Vec<usize> {
        let mut acc: Vec<usize> = Vec::new();
        for &i in chain {
            acc = xor_sorted(&acc, &self.boundary[i]);
        }
        acc
    }

    /// Checks d^2 = 0.
    pub fn d_squared_is_zero(&self) -> bool {
        (0..self.len()).all(|i| self.apply_boundary(&self.boundary[i]).is_empty())
    }
}

fn components(n: usize, boundary: &[Vec<usize>]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for (i, col) in boundary.iter().enumerate() {
        for &j in col {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut label = std::collections::HashMap::new();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let r = find(&mut parent, i);
        let next = label.len();
        out.push(*label.entry(r).or_insert(next));
    }
    out
}

pub(crate) fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Column-echelon basis of the image of the boundary map, keyed by pivot
/// (largest index).
struct EchelonBasis {
    pivots: std::collections::HashMap<usize, Vec<usize>>,
}

impl EchelonBasis {
    fn build(complex: &ChainComplexF2) -> Self {
        let mut pivots: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
        for col in &complex.boundary {
            let mut c = col.clone();
            while let Some(&low) = c.last() {
                if let Some(basis) = pivots.get(&low) {
                    c = xor_sorted(&c, basis);
                } else {
                    pivots.insert(low, c);
                    break;
                }
            }
        }
        EchelonBasis { pivots }
    }

    /// Reduces a chain against the image basis; empty result means the
    /// chain is a boundary.
    fn reduce(&self, chain: &[usize]) -> Vec<usize> {
        let mut c = chain.to_vec();
        while let Some(&low) = c.last() {
            if let Some(basis) = self.pivots.get(&low) {
                c = xor_sorted(&c, basis);
            } else {
                break;
            }
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    /// Homology dimension per component label.
    pub dims: Vec<usize>,
    pub total_dim: usize,
    pub distinguished_is_boundary: Option<bool>,
}

/// Homology ranks per component and boundary-membership of the
/// distinguished cycle. Rejects complexes whose distinguished element is
/// not a cycle.
pub fn homology_with_membership(complex: &ChainComplexF2) -> Result<HomologyReport> {
    if !complex.d_squared_is_zero() {
        return input_err("boundary map does not square to zero");
    }
    if let Some(c) = &complex.distinguished {
        if !complex.apply_boundary(c).is_empty() {
            return input_err("distinguished element is not a cycle");
        }
    }
    let ncomp = complex.component.iter().copied().max().map_or(0, |m| m + 1);
    // per-component rank via separate eliminations
    let mut dims = vec![0usize; ncomp];
    let basis = EchelonBasis::build(complex);
    // total rank splits across components since the boundary preserves them
    let mut comp_sizes = vec![0usize; ncomp];
    for &c in &complex.component {
        comp_sizes[c] += 1;
    }
    let mut comp_ranks = vec![0usize; ncomp];
    for (&pivot, _) in basis.pivots.iter() {
        comp_ranks[complex.component[pivot]] += 1;
    }
    for c in 0..ncomp {
        dims[c] = comp_sizes[c] - 2 * comp_ranks[c];
    }
    let distinguished_is_boundary = complex
        .distinguished
        .as_ref()
        .map(|c| basis.reduce(c).is_empty());
    Ok(HomologyReport {
        total_dim: dims.iter().sum(),
        dims,
        distinguished_is_boundary,
    })
}

/// Finds one primitive: a chain whose boundary equals the given cycle, if
/// the cycle is a boundary.
pub fn boundary_preimage(complex: &ChainComplexF2, cycle: &[usize]) -> Option<Vec<usize>> {
    // echelon with tracked combinations
    let mut pivots: std::collections::HashMap<usize, (Vec<usize>, Vec<usize>)> =
        std::collections::HashMap::new();
    for (i, col) in complex.boundary.iter().enumerate() {
        let mut c = col.clone();
        let mut combo = vec![i];
        while let Some(&low) = c.last() {
            if let Some((basis, bc)) = pivots.get(&low) {
                c = xor_sorted(&c, basis);
                combo = xor_sorted(&combo, bc);
            } else {
                pivots.insert(low, (c, combo));
                break;
            }
        }
    }
    let mut c = cycle.to_vec();
    c.sort_unstable();
    let mut combo: Vec<usize> = Vec::new();
    while let Some(&low) = c.last() {
        let (basis, bc) = pivots.get(&low)?;
        c = xor_sorted(&c, basis);
        combo = xor_sorted(&combo, bc);
    }
    Some(combo)
}
