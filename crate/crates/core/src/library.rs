//! The explicit decorated graphs for the bordered invariants of the
//! complement pieces, the reparameterization bimodule, the twisting-slice
//! bimodule, and the passage from the Type A presentation to the marked
//! Type D presentation.

use serde::{Deserialize, Serialize};

use crate::boxes::{box_a_dd, cancel_pure, CancelOrder};
use crate::error::{input_err, Result};
use crate::graphs::{
    cycle_monodromy, grading_data, relabel_13_to_d, DaBimodule, DdBimodule, GradedEdges,
    GradingVec, Marks, TypeAGraph, TypeDGraph,
};
use crate::torus::{Gen, Idem};

/// The two framing classes; the four basepoint positions collapse in
/// pairs because the resulting modules agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FramingClass {
    IIii,
    IiIv,
}

impl FramingClass {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "I_III" | "i_iii" | "I/III" => Ok(FramingClass::IIii),
            "II_IV" | "ii_iv" | "II/IV" => Ok(FramingClass::IiIv),
            _ => input_err(format!("unknown framing class {s:?}")),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FramingClass::IIii => "I_III",
            FramingClass::IiIv => "II_IV",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    TypeA,
    TypeD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LibrarySpec {
    pub n: usize,
    pub m: usize,
    pub framing: FramingClass,
    pub flavor: Flavor,
}

/// Generator layout shared by all library graphs: a torus-shaped grid of
/// nm interior generators G(c,r), boundary rows T_0..T_{n-1} and
/// L_1..L_{m-1}, and a single corner generator S.
struct Layout {
    n: usize,
    m: usize,
}

impl Layout {
    fn names(&self) -> Vec<String> {
        let mut names = Vec::new();
        for c in 0..self.n {
            names.push(format!("T{c}"));
        }
        for r in 1..self.m {
            names.push(format!("L{r}"));
        }
        for c in 1..=self.n {
            for r in 1..=self.m {
                names.push(format!("G{c}_{r}"));
            }
        }
        names.push("S".into());
        names
    }

    fn t(&self, c: usize) -> usize {
        c
    }
    fn l(&self, r: usize) -> usize {
        self.n + (r - 1)
    }
    fn g(&self, c: usize, r: usize) -> usize {
        self.n + (self.m - 1) + (c - 1) * self.m + (r - 1)
    }
    fn s(&self) -> usize {
        self.n + self.m - 1 + self.n * self.m
    }
}

/// Builds the library graph for the given parameters; generator count is
/// nm + n + m with the marked contact and knot-class generators.
pub fn library_graph(spec: LibrarySpec) -> Result<LibraryGraph> {
    if spec.n < 1 || spec.m < 1 {
        return input_err("library parameters must be at least 1");
    }
    let lay = Layout { n: spec.n, m: spec.m };
    let names = lay.names();
    let (i_tls, i_g) = match spec.framing {
        FramingClass::IIii => (Idem::I1, Idem::I0),
        FramingClass::IiIv => (Idem::I0, Idem::I1),
    };
    let mut idems = vec![i_tls; names.len()];
    for c in 1..=spec.n {
        for r in 1..=spec.m {
            idems[lay.g(c, r)] = i_g;
        }
    }
    let mut edges: Vec<(usize, usize, String)> = Vec::new();
    let (n, m) = (spec.n, spec.m);
    match spec.framing {
        FramingClass::IIii => {
            for c in 0..n {
                edges.push((lay.t(c), lay.g(c + 1, 1), "2".into()));
            }
            for r in 1..m {
                edges.push((lay.l(r), lay.g(1, r + 1), "2".into()));
            }
            for c in 1..n {
                for r in 1..m {
                    edges.push((lay.g(c, r), lay.g(c + 1, r + 1), "32".into()));
                }
            }
            for c in 1..n {
                edges.push((lay.g(c, m), lay.t(c), "321".into()));
            }
            for r in 1..m {
                edges.push((lay.g(n, r), lay.l(r), "321".into()));
            }
            edges.push((lay.g(n, m), lay.s(), "321".into()));
            edges.push((lay.s(), lay.t(0), "21".into()));
        }
        FramingClass::IiIv => {
            for c in 0..n {
                edges.push((lay.t(c), lay.g(c + 1, 1), "1".into()));
            }
            for r in 1..m {
                edges.push((lay.l(r), lay.g(1, r + 1), "1".into()));
            }
            for c in 1..n {
                for r in 1..m {
                    edges.push((lay.g(c, r), lay.g(c + 1, r + 1), "21".into()));
                }
            }
            for c in 1..n {
                edges.push((lay.t(c), lay.g(c, m), "3".into()));
            }
            for r in 1..m {
                edges.push((lay.l(r), lay.g(n, r), "3".into()));
            }
            edges.push((lay.s(), lay.g(n, m), "3".into()));
            edges.push((lay.t(0), lay.s(), "32".into()));
        }
    }
    let marks = Marks {
        contact: Some(lay.t(0)),
        contact_alt: Some(lay.s()),
        loss: Some((lay.g(1, 1), lay.g(n, m))),
    };
    let a = TypeAGraph { names, idems, edges, marks };
    Ok(match spec.flavor {
        Flavor::TypeA => LibraryGraph::A(a),
        Flavor::TypeD => LibraryGraph::D(relabel_13_to_d(&a)?),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LibraryGraph {
    A(TypeAGraph),
    D(TypeDGraph),
}

impl LibraryGraph {
    pub fn unwrap_a(self) -> TypeAGraph {
        match self {
            LibraryGraph::A(a) => a,
            _ => panic!("expected a Type A graph"),
        }
    }
    pub fn unwrap_d(self) -> TypeDGraph {
        match self {
            LibraryGraph::D(d) => d,
            _ => panic!("expected a Type D graph"),
        }
    }
}

/// The reparameterization bimodule for a single negative boundary twist:
/// three generators and ten structure entries.
pub fn cfda_tau() -> DaBimodule {
    use Gen::*;
    let names = vec!["p".to_string(), "q".to_string(), "s".to_string()];
    let idems = vec![(Idem::I0, Idem::I0), (Idem::I1, Idem::I1), (Idem::I0, Idem::I1)];
    let (p, q, s) = (0usize, 1usize, 2usize);
    let entries = vec![
        (q, vec![R2, R1], Some(R2), s),
        (q, vec![R2, R12], Some(R2), p),
        (q, vec![R2, R123], Some(R23), q),
        (p, vec![R1], Some(R12), s),
        (p, vec![R12], Some(R12), p),
        // the published list misprints this target as p, which breaks both
        // idempotent bookkeeping and the module relations; q is forced
        (p, vec![R123], Some(R123), q),
        (p, vec![R3], Some(R3), q),
        (s, vec![], Some(R1), q),
        (s, vec![R2], None, p),
        (s, vec![R23], Some(R3), q),
    ];
    DaBimodule { names, idems, entries }
}

/// The twisting-slice bimodule: eight generators, six differentials, and
/// a nilpotent entry graph.
pub fn bsdd_tw() -> DdBimodule {
    use Gen::*;
    let names: Vec<String> = ["rc123", "rc23", "rc12", "rc3", "rc1", "rc2", "ic1", "ic0"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let idems = vec![
        (Idem::I0, Idem::I1), // rc123
        (Idem::I0, Idem::I0), // rc23
        (Idem::I1, Idem::I1), // rc12
        (Idem::I0, Idem::I1), // rc3
        (Idem::I0, Idem::I1), // rc1
        (Idem::I1, Idem::I0), // rc2
        (Idem::I0, Idem::I0), // ic1
        (Idem::I1, Idem::I1), // ic0
    ];
    let ix = |s: &str| names.iter().position(|n| n == s).unwrap();
    let entries = vec![
        (ix("rc123"), Some(R3), ix("rc12"), None),
        (ix("rc123"), None, ix("rc23"), Some(R1)),
        (ix("rc23"), Some(R3), ix("rc2"), None),
        (ix("rc23"), None, ix("rc3"), Some(R2)),
        (ix("rc12"), Some(R2), ix("rc1"), None),
        (ix("rc12"), None, ix("rc2"), Some(R1)),
        (ix("rc3"), Some(R3), ix("ic0"), None),
        (ix("rc3"), None, ix("ic1"), Some(R3)),
        (ix("rc1"), Some(R1), ix("ic0"), None),
        (ix("rc1"), None, ix("ic1"), Some(R1)),
        (ix("rc2"), Some(R2), ix("ic1"), None),
        (ix("rc2"), None, ix("ic0"), Some(R2)),
    ];
    DdBimodule { names, idems, entries }
}

/// The Type D presentation obtained by pairing a marked Type A graph with
/// the twisting slice. Each designated generator pairs with the unique
/// idempotent-compatible checked-idempotent generator. Attaching the
/// slice flips the diagram type, which exchanges the roles of the two
/// contact marks: the alternate Type A mark becomes the principal Type D
/// mark. With `reduce` set, pure differentials away from the marks are
/// cancelled.
pub fn cfd_via_twisting(a: &TypeAGraph, reduce: bool) -> Result<TypeDGraph> {
    let Some(contact) = a.marks.contact else {
        return input_err("contact mark required");
    };
    let dd = bsdd_tw();
    let mut d = box_a_dd(a, &dd)?;
    let check_partner = |gen: usize| -> Result<usize> {
        let partner = match a.idems[gen] {
            Idem::I0 => "ic1",
            Idem::I1 => "ic0",
        };
        let name = format!("{}|{partner}", a.names[gen]);
        d.names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| crate::error::Error::Internal(format!("missing generator {name}")))
    };
    // principal mark: the alternate Type A generator when present
    let principal = match a.marks.contact_alt {
        Some(alt) => check_partner(alt)?,
        None => check_partner(contact)?,
    };
    let secondary = match a.marks.contact_alt {
        Some(_) => Some(check_partner(contact)?),
        None => None,
    };
    d.marks.contact = Some(principal);
    d.marks.contact_alt = secondary;
    if let Some((l1, l2)) = a.marks.loss {
        let p1 = check_partner(l1);
        let p2 = check_partner(l2);
        if let (Ok(p1), Ok(p2)) = (p1, p2) {
            d.marks.loss = Some((p1, p2));
        }
    }
    if reduce {
        let mut prot: Vec<usize> = d.marks.contact.into_iter().collect();
        prot.extend(d.marks.contact_alt);
        d = cancel_pure(&d, &prot, &CancelOrder::Lexicographic);
    }
    Ok(d)
}

/// Locates the unique ordered generator pair in the same component whose
/// grading difference matches the distinguished coset for the framing:
/// (1,0) against the first quotient class, (0,1) against the second.
pub fn identify_distinguished_pair(
    g: &LibraryGraph,
    framing: FramingClass,
) -> Result<(usize, usize)> {
    let ge = match g {
        LibraryGraph::A(a) => GradedEdges::A(a),
        LibraryGraph::D(d) => GradedEdges::D(d),
    };
    let data = grading_data(&ge)?;
    let quotient = cycle_monodromy(&ge)?;
    let target = match framing {
        FramingClass::IIii => GradingVec::from_whole(1, 0),
        FramingClass::IiIv => GradingVec::from_whole(0, 1),
    };
    let n = data.lift.len();
    let mut found = None;
    for x in 0..n {
        for y in 0..n {
            if x == y || data.component[x] != data.component[y] {
                continue;
            }
            let diff = match framing {
                // gr(contact) - gr(alternate) = (1,0) in the first class,
                // gr(alternate) - gr(contact) = (0,1) in the second
                FramingClass::IIii => data.lift[x].sub(data.lift[y]),
                FramingClass::IiIv => data.lift[y].sub(data.lift[x]),
            };
            if diff.congruent(target, quotient) {
                if found.is_some() {
                    return Err(crate::error::Error::Internal(
                        "distinguished pair is not unique".into(),
                    ));
                }
                found = Some((x, y));
            }
        }
    }
    found.ok_or_else(|| crate::error::Error::Internal("no distinguished pair found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{validate_da, validate_dd, validate_type_a, validate_type_d};

    #[test]
    fn generator_count_and_components() {
        for (n, m) in [(1, 1), (2, 2), (3, 4)] {
            let spec = LibrarySpec { n, m, framing: FramingClass::IIii, flavor: Flavor::TypeA };
            let g = library_graph(spec).unwrap().unwrap_a();
            assert_eq!(g.names.len(), n * m + n + m);
            let data = grading_data(&GradedEdges::A(&g)).unwrap();
            let ncomp = data.component.iter().max().unwrap() + 1;
            assert_eq!(ncomp, gcd(n, m), "components for ({n},{m})");
        }
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn library_graphs_validate() {
        for framing in [FramingClass::IIii, FramingClass::IiIv] {
            let a = library_graph(LibrarySpec { n: 3, m: 4, framing, flavor: Flavor::TypeA })
                .unwrap()
                .unwrap_a();
            let r = validate_type_a(&a, 3);
            assert!(r.is_valid(), "{framing:?}: {:?}", r.violations);
            let d = library_graph(LibrarySpec { n: 3, m: 4, framing, flavor: Flavor::TypeD })
                .unwrap()
                .unwrap_d();
            let r = validate_type_d(&d);
            assert!(r.is_valid(), "{framing:?}: {:?}", r.violations);
        }
    }

    #[test]
    fn second_class_is_bounded_first_is_not() {
        let a = |framing| {
            library_graph(LibrarySpec { n: 3, m: 4, framing, flavor: Flavor::TypeA })
                .unwrap()
                .unwrap_a()
        };
        assert!(!a(FramingClass::IIii).is_bounded());
        assert!(a(FramingClass::IiIv).is_bounded());
    }

    #[test]
    fn tau_entries() {
        let tau = cfda_tau();
        assert_eq!(tau.entries.len(), 10);
        assert!(validate_da(&tau).is_valid());
        use Gen::*;
        // spot checks against the published list
        assert!(tau.entries.contains(&(0, vec![R3], Some(R3), 1)));
        assert!(tau.entries.contains(&(1, vec![R2, R123], Some(R23), 1)));
        assert!(tau.entries.contains(&(2, vec![], Some(R1), 1)));
        assert!(tau.entries.contains(&(2, vec![R2], None, 0)));
    }

    #[test]
    fn twisting_slice_is_nilpotent() {
        let dd = bsdd_tw();
        let r = validate_dd(&dd);
        assert!(r.is_valid(), "{:?}", r.violations);
        assert_eq!(r.bounded, Some(true));
        assert_eq!(dd.entries.len(), 12, "six differentials with two terms each");
    }

    #[test]
    fn monodromy_vectors() {
        let g = library_graph(LibrarySpec { n: 3, m: 4, framing: FramingClass::IIii, flavor: Flavor::TypeA })
            .unwrap()
            .unwrap_a();
        let v = cycle_monodromy(&GradedEdges::A(&g)).unwrap();
        assert_eq!(v, GradingVec::from_whole(7, 12));
        let g = library_graph(LibrarySpec { n: 3, m: 4, framing: FramingClass::IiIv, flavor: Flavor::TypeA })
            .unwrap()
            .unwrap_a();
        let v = cycle_monodromy(&GradedEdges::A(&g)).unwrap();
        assert_eq!(v, GradingVec::from_whole(12, -7));
    }

    #[test]
    fn distinguished_pair_matches_marks() {
        for framing in [FramingClass::IIii, FramingClass::IiIv] {
            for (n, m) in [(1, 1), (2, 2), (3, 4)] {
                let g = library_graph(LibrarySpec { n, m, framing, flavor: Flavor::TypeA }).unwrap();
                let (x, y) = identify_distinguished_pair(&g, framing).unwrap();
                let a = g.unwrap_a();
                assert_eq!(Some(x), a.marks.contact, "({n},{m},{framing:?})");
                assert_eq!(Some(y), a.marks.contact_alt, "({n},{m},{framing:?})");
            }
        }
    }
}
