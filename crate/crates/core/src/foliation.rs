//! Combinatorial validator for the singular-foliation conditions that
//! certify a transverse overtwisted disk: the negative-separatrix graph is
//! a tree, the positive-separatrix graph is a circle, there are no closed
//! regular leaves, and the singularity count matches a disk.

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
}

/// Where a separatrix of a saddle ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SepEnd {
    /// A radial singularity, by id.
    Elliptic(String),
    /// The boundary of the disk.
    Boundary,
    /// Another saddle (or the same one): marks the saddle as cyclic.
    Hyperbolic(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EllipticPoint {
    pub id: String,
    pub sign: Sign,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperbolicPoint {
    pub id: String,
    pub sign: Sign,
    pub stable: [SepEnd; 2],
    pub unstable: [SepEnd; 2],
}

/// Combinatorial shadow of an open-book foliation on a disk.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FoliationData {
    pub elliptic: Vec<EllipticPoint>,
    pub hyperbolic: Vec<HyperbolicPoint>,
    #[serde(default)]
    pub closed_regular_leaves: usize,
    /// The foliation points outward along the disk boundary.
    pub boundary_transverse_outward: bool,
}

impl HyperbolicPoint {
    fn is_cyclic(&self) -> bool {
        self.stable
            .iter()
            .chain(self.unstable.iter())
            .any(|e| matches!(e, SepEnd::Hyperbolic(_)))
    }
}

/// One of the two separatrix graphs: vertices are elliptic points of the
/// matching sign plus one fake vertex per boundary end; each saddle of the
/// matching sign contributes a single edge through its two separatrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SepGraph {
    pub vertices: Vec<String>,
    pub fake_vertices: usize,
    /// Edges as vertex-index pairs.
    pub edges: Vec<(usize, usize)>,
}

impl SepGraph {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.fake_vertices == 0
    }

    fn vertex_count(&self) -> usize {
        self.vertices.len() + self.fake_vertices
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    fn connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.connected() && self.edges.len() + 1 == self.vertex_count()
    }

    pub fn is_circle(&self) -> bool {
        !self.is_empty() && self.connected() && self.degrees().iter().all(|&d| d == 2)
    }
}

/// Builds the two signed separatrix graphs: the negative graph from
/// unstable separatrices of negative non-cyclic saddles, the positive one
/// from stable separatrices of positive non-cyclic saddles. Cyclic saddles
/// contribute to neither.
pub fn extract_signed_graphs(d: &FoliationData) -> Result<(SepGraph, SepGraph)> {
    let build = |sign: Sign| -> Result<SepGraph> {
        let mut vertices: Vec<String> = Vec::new();
        let mut index = std::collections::HashMap::new();
        for e in &d.elliptic {
            if e.sign == sign {
                index.insert(e.id.clone(), vertices.len());
                vertices.push(e.id.clone());
            }
        }
        let elliptic_count = vertices.len();
        let mut fake = 0usize;
        let mut edges = Vec::new();
        for h in &d.hyperbolic {
            if h.sign != sign || h.is_cyclic() {
                continue;
            }
            let seps = if sign == Sign::Negative { &h.unstable } else { &h.stable };
            let mut ends = [0usize; 2];
            for (slot, sep) in seps.iter().enumerate() {
                ends[slot] = match sep {
                    SepEnd::Elliptic(id) => *index.get(id).ok_or_else(|| {
                        crate::error::Error::Input(format!(
                            "separatrix of {} references unknown or wrong-sign elliptic {id}",
                            h.id
                        ))
                    })?,
                    SepEnd::Boundary => {
                        fake += 1;
                        elliptic_count + fake - 1
                    }
                    SepEnd::Hyperbolic(_) => unreachable!("cyclic saddles are skipped"),
                };
            }
            edges.push((ends[0], ends[1]));
        }
        Ok(SepGraph { vertices, fake_vertices: fake, edges })
    };
    Ok((build(Sign::Negative)?, build(Sign::Positive)?))
}

/// Per-condition report; the disk is transverse overtwisted exactly when
/// all four hold.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiskReport {
    pub negative_graph_tree_no_fake: bool,
    pub positive_graph_circle: bool,
    pub no_closed_leaves_or_cyclic: bool,
    pub euler_count_is_disk: bool,
    pub verdict: bool,
}

pub fn is_transverse_ot_disk(d: &FoliationData) -> Result<DiskReport> {
    validate_refs(d)?;
    let (gmm, gpp) = extract_signed_graphs(d)?;
    let c1 = gmm.fake_vertices == 0 && gmm.is_tree();
    let c2 = gpp.is_circle();
    let c3 = d.closed_regular_leaves == 0 && d.hyperbolic.iter().all(|h| !h.is_cyclic());
    let c4 = d.boundary_transverse_outward
        && d.elliptic.len() == d.hyperbolic.len() + 1;
    Ok(DiskReport {
        negative_graph_tree_no_fake: c1,
        positive_graph_circle: c2,
        no_closed_leaves_or_cyclic: c3,
        euler_count_is_disk: c4,
        verdict: c1 && c2 && c3 && c4,
    })
}

fn validate_refs(d: &FoliationData) -> Result<()> {
    let elliptic: std::collections::HashSet<_> = d.elliptic.iter().map(|e| &e.id).collect();
    let hyperbolic: std::collections::HashSet<_> = d.hyperbolic.iter().map(|h| &h.id).collect();
    if elliptic.len() != d.elliptic.len() || hyperbolic.len() != d.hyperbolic.len() {
        return input_err("duplicate singularity ids");
    }
    for h in &d.hyperbolic {
        for sep in h.stable.iter().chain(h.unstable.iter()) {
            match sep {
                SepEnd::Elliptic(id) if !elliptic.contains(id) => {
                    return input_err(format!("dangling elliptic reference {id}"));
                }
                SepEnd::Hyperbolic(id) if !hyperbolic.contains(id) => {
                    return input_err(format!("dangling hyperbolic reference {id}"));
                }
                _ => {}
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ell(id: &str, sign: Sign) -> EllipticPoint {
        EllipticPoint { id: id.into(), sign }
    }

    fn e(id: &str) -> SepEnd {
        SepEnd::Elliptic(id.into())
    }

    /// The minimal transverse overtwisted disk: one negative and one
    /// positive radial point, one positive saddle whose stable
    /// separatrices both limit to the positive point.
    fn minimal_disk() -> FoliationData {
        FoliationData {
            elliptic: vec![ell("y", Sign::Negative), ell("w", Sign::Positive)],
            hyperbolic: vec![HyperbolicPoint {
                id: "h".into(),
                sign: Sign::Positive,
                stable: [e("w"), e("w")],
                unstable: [SepEnd::Boundary, SepEnd::Boundary],
            }],
            closed_regular_leaves: 0,
            boundary_transverse_outward: true,
        }
    }

    #[test]
    fn minimal_disk_passes() {
        let r = is_transverse_ot_disk(&minimal_disk()).unwrap();
        assert!(r.verdict, "{r:?}");
    }

    #[test]
    fn star_graph_extraction() {
        let n3 = 3;
        let mut elliptic = vec![ell("y", Sign::Negative)];
        let mut hyperbolic = Vec::new();
        for j in 1..=n3 {
            elliptic.push(ell(&format!("x{j}"), Sign::Negative));
            hyperbolic.push(HyperbolicPoint {
                id: format!("h{j}"),
                sign: Sign::Negative,
                stable: [SepEnd::Boundary, SepEnd::Boundary],
                unstable: [e("y"), e(&format!("x{j}"))],
            });
        }
        let d = FoliationData {
            elliptic,
            hyperbolic,
            closed_regular_leaves: 0,
            boundary_transverse_outward: true,
        };
        let (gmm, _) = extract_signed_graphs(&d).unwrap();
        assert!(gmm.is_tree());
        assert_eq!(gmm.edges.len(), n3);
        let deg: usize = gmm.edges.iter().filter(|&&(a, b)| a == 0 || b == 0).count();
        assert_eq!(deg, n3, "central vertex joins every leaf");
    }

    #[test]
    fn no_negative_hyperbolics_gives_discrete_graph() {
        let d = FoliationData {
            elliptic: vec![ell("x", Sign::Negative), ell("y", Sign::Negative)],
            hyperbolic: vec![],
            closed_regular_leaves: 0,
            boundary_transverse_outward: true,
        };
        let (gmm, _) = extract_signed_graphs(&d).unwrap();
        assert!(gmm.edges.is_empty());
        assert!(!gmm.is_tree(), "two isolated vertices are not a tree");
    }

    #[test]
    fn boundary_end_creates_fake_vertex() {
        let d = FoliationData {
            elliptic: vec![ell("y", Sign::Negative)],
            hyperbolic: vec![HyperbolicPoint {
                id: "h".into(),
                sign: Sign::Negative,
                stable: [SepEnd::Boundary, SepEnd::Boundary],
                unstable: [e("y"), SepEnd::Boundary],
            }],
            closed_regular_leaves: 0,
            boundary_transverse_outward: true,
        };
        let (gmm, _) = extract_signed_graphs(&d).unwrap();
        assert_eq!(gmm.fake_vertices, 1);
        let r = is_transverse_ot_disk(&d).unwrap();
        assert!(!r.negative_graph_tree_no_fake);
    }

    #[test]
    fn single_positive_elliptic_fails() {
        let d = FoliationData {
            elliptic: vec![ell("w", Sign::Positive)],
            hyperbolic: vec![],
            closed_regular_leaves: 0,
            boundary_transverse_outward: true,
        };
        let r = is_transverse_ot_disk(&d).unwrap();
        assert!(!r.verdict);
        assert!(!r.negative_graph_tree_no_fake, "negative graph is empty");
    }

    #[test]
    fn closed_leaf_fails() {
        let mut d = minimal_disk();
        d.closed_regular_leaves = 1;
        let r = is_transverse_ot_disk(&d).unwrap();
        assert!(!r.no_closed_leaves_or_cyclic);
        assert!(!r.verdict);
    }

    #[test]
    fn cyclic_saddles_are_ignored_by_graphs() {
        let mut d = minimal_disk();
        let before = extract_signed_graphs(&d).unwrap();
        d.hyperbolic.push(HyperbolicPoint {
            id: "cyc".into(),
            sign: Sign::Negative,
            stable: [SepEnd::Hyperbolic("cyc".into()), SepEnd::Boundary],
            unstable: [SepEnd::Boundary, SepEnd::Boundary],
        });
        let after = extract_signed_graphs(&d).unwrap();
        assert_eq!(before, after);
        // but the cyclic saddle still spoils the disk conditions
        let r = is_transverse_ot_disk(&d).unwrap();
        assert!(!r.no_closed_leaves_or_cyclic);
    }

    #[test]
    fn euler_violation_fails() {
        let mut d = minimal_disk();
        d.elliptic.push(ell("extra", Sign::Positive));
        let r = is_transverse_ot_disk(&d).unwrap();
        assert!(!r.euler_count_is_disk);
    }

    #[test]
    fn dangling_reference_rejected() {
        let mut d = minimal_disk();
        d.hyperbolic[0].stable[0] = e("nope");
        assert!(is_transverse_ot_disk(&d).is_err());
    }
}
