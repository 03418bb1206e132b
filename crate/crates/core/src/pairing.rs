//! Assembles the closed-manifold hat complex for the reducible family by
//! chaining the bordered pieces, and decides contact-class vanishing.

use serde::{Deserialize, Serialize};

use crate::boxes::{box_ad, box_da_d};
use crate::error::{Error, Result};
use crate::f2::{boundary_preimage, homology_with_membership, ChainComplexF2, HomologyReport};
use crate::graphs::TypeDGraph;
use crate::library::{cfd_via_twisting, cfda_tau, library_graph, Flavor, FramingClass, LibrarySpec};

/// Boundary twist exponents n1..n4 >= 1 and the interior twisting
/// exponent n_b <= 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairingSpec {
    pub n: [i64; 4],
    pub n_b: i64,
}

impl PairingSpec {
    pub fn new(n: [i64; 4], n_b: i64) -> Result<Self> {
        if n.iter().any(|&x| x < 1) {
            return Err(Error::Input("boundary exponents must be at least 1".into()));
        }
        if n_b > 0 {
            return Err(Error::Unsupported(
                "positive interior twisting is outside the pairing engine; the monodromy \
                 already factors into positive twists"
                    .into(),
            ));
        }
        Ok(PairingSpec { n, n_b })
    }

    pub fn min(&self) -> i64 {
        *self.n.iter().min().unwrap()
    }
}

/// Intermediate data kept around for the witness search.
pub struct Assembled {
    pub complex: ChainComplexF2,
    pub contact_index: usize,
    /// Generators of the twisted Type D factor reachable as single-tensor
    /// primitives of interest.
    pub d_factor: TypeDGraph,
}

/// The twisted Type D factor: the second-pair invariant with the marked
/// generator carried through `n_twists` reparameterizations.
fn twisted_d_factor(n3: i64, n4: i64, n_twists: u32, reduce: bool) -> Result<TypeDGraph> {
    let a = library_graph(LibrarySpec {
        n: n3 as usize,
        m: n4 as usize,
        framing: FramingClass::IIii,
        flavor: Flavor::TypeA,
    })?
    .unwrap_a();
    let mut d = cfd_via_twisting(&a, reduce)?;
    let tau = cfda_tau();
    let p = 0usize; // generator p extends marks through each twist
    for _ in 0..n_twists {
        d = box_da_d(&tau, &d, Some(p))?;
    }
    Ok(d)
}

/// Builds the full hat complex with its contact cycle for the monodromy
/// with the given exponents. The first boundary pair contributes the
/// bounded Type A factor, the second the marked Type D factor, and each
/// unit of negative interior twisting inserts one reparameterization
/// bimodule.
pub fn assemble_cf_hat(spec: &PairingSpec) -> Result<Assembled> {
    assemble_with(spec, true)
}

pub fn assemble_with(spec: &PairingSpec, reduce_d: bool) -> Result<Assembled> {
    let a = library_graph(LibrarySpec {
        n: spec.n[0] as usize,
        m: spec.n[1] as usize,
        framing: FramingClass::IiIv,
        flavor: Flavor::TypeA,
    })?
    .unwrap_a();
    let d = twisted_d_factor(spec.n[2], spec.n[3], (-spec.n_b) as u32, reduce_d)?;
    let complex = box_ad(&a, &d)?;
    let contact_index = complex.distinguished.as_ref().and_then(|c| c.first().copied()).ok_or(
        Error::Internal("assembled complex lost its contact mark".into()),
    )?;
    if !complex.apply_boundary(&[contact_index]).is_empty() {
        return Err(Error::Internal("contact element is not a cycle".into()));
    }
    Ok(Assembled { complex, contact_index, d_factor: d })
}

/// Whether the contact cycle bounds.
pub fn contact_vanishes(spec: &PairingSpec) -> Result<bool> {
    let asm = assemble_cf_hat(spec)?;
    let report = homology_with_membership(&asm.complex)?;
    Ok(report.distinguished_is_boundary.unwrap_or(false))
}

pub fn homology_report(spec: &PairingSpec) -> Result<(HomologyReport, Assembled)> {
    let asm = assemble_cf_hat(spec)?;
    let report = homology_with_membership(&asm.complex)?;
    Ok((report, asm))
}

/// An explicit primitive for the contact cycle, when it bounds: the chain
/// is returned as generator names, and single-generator primitives are
/// reported separately.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub chain: Vec<String>,
    pub single_generator_primitives: Vec<String>,
}

/// Finds a primitive chain for the contact cycle. Absent when the class
/// does not vanish.
pub fn vanishing_witness(spec: &PairingSpec) -> Result<Option<Witness>> {
    let asm = assemble_cf_hat(spec)?;
    let Some(chain) = boundary_preimage(&asm.complex, &[asm.contact_index]) else {
        return Ok(None);
    };
    let singles: Vec<String> = (0..asm.complex.len())
        .filter(|&g| asm.complex.boundary[g] == vec![asm.contact_index])
        .map(|g| asm.complex.generators[g].clone())
        .collect();
    Ok(Some(Witness {
        chain: chain.into_iter().map(|g| asm.complex.generators[g].clone()).collect(),
        single_generator_primitives: singles,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_positive_twisting() {
        assert!(matches!(
            PairingSpec::new([1, 1, 1, 1], 1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn no_twist_contact_is_cycle() {
        let spec = PairingSpec::new([1, 1, 1, 1], 0).unwrap();
        let asm = assemble_cf_hat(&spec).unwrap();
        assert!(asm.complex.apply_boundary(&[asm.contact_index]).is_empty());
        assert!(!contact_vanishes(&spec).unwrap());
    }

    #[test]
    fn stein_fillable_case_does_not_vanish() {
        let spec = PairingSpec::new([1, 1, 1, 1], -1).unwrap();
        assert!(!contact_vanishes(&spec).unwrap());
        assert!(vanishing_witness(&spec).unwrap().is_none());
    }

    #[test]
    fn overtwisted_case_vanishes_with_single_witness() {
        let spec = PairingSpec::new([1, 1, 1, 1], -2).unwrap();
        assert!(contact_vanishes(&spec).unwrap());
        let w = vanishing_witness(&spec).unwrap().unwrap();
        assert!(!w.single_generator_primitives.is_empty());
        // the witness chain really bounds the contact cycle
        let asm = assemble_cf_hat(&spec).unwrap();
        let idx: Vec<usize> = w
            .chain
            .iter()
            .map(|n| asm.complex.generators.iter().position(|g| g == n).unwrap())
            .collect();
        assert_eq!(asm.complex.apply_boundary(&idx), vec![asm.contact_index]);
    }

    #[test]
    fn deeper_twist_vanishes() {
        let spec = PairingSpec::new([1, 2, 1, 2], -3).unwrap();
        assert!(contact_vanishes(&spec).unwrap());
        assert!(vanishing_witness(&spec).unwrap().is_some());
    }

    #[test]
    fn reduced_and_unreduced_factors_agree() {
        for nb in [0, -1, -2] {
            let spec = PairingSpec::new([1, 2, 2, 1], nb).unwrap();
            let r1 = homology_with_membership(&assemble_with(&spec, true).unwrap().complex).unwrap();
            let r2 = homology_with_membership(&assemble_with(&spec, false).unwrap().complex).unwrap();
            assert_eq!(r1.distinguished_is_boundary, r2.distinguished_is_boundary);
            assert_eq!(r1.total_dim, r2.total_dim);
        }
    }

    #[test]
    fn mixed_spec_complex_is_valid() {
        let spec = PairingSpec::new([2, 3, 1, 2], -2).unwrap();
        let asm = assemble_cf_hat(&spec).unwrap();
        assert!(asm.complex.d_squared_is_zero());
    }
}
