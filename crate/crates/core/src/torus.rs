//! The eight-dimensional torus algebra over F2: two orthogonal idempotents
//! and six Reeb elements with the three nonzero products
//! rho1 rho2 = rho12, rho2 rho3 = rho23, rho1 rho23 = rho12 rho3 = rho123.

use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};

/// Basis elements, in a fixed order used for bitmask representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    I0,
    I1,
    R1,
    R2,
    R3,
    R12,
    R23,
    R123,
}

pub const BASIS: [Gen; 8] = [Gen::I0, Gen::I1, Gen::R1, Gen::R2, Gen::R3, Gen::R12, Gen::R23, Gen::R123];

/// The two idempotents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Idem {
    I0,
    I1,
}

impl Idem {
    pub fn flip(self) -> Idem {
        match self {
            Idem::I0 => Idem::I1,
            Idem::I1 => Idem::I0,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Idem::I0 => 0,
            Idem::I1 => 1,
        }
    }

    pub fn from_index(i: u8) -> Result<Idem> {
        match i {
            0 => Ok(Idem::I0),
            1 => Ok(Idem::I1),
            _ => input_err("idempotent index must be 0 or 1"),
        }
    }
}

impl Gen {
    fn index(self) -> usize {
        match self {
            Gen::I0 => 0,
            Gen::I1 => 1,
            Gen::R1 => 2,
            Gen::R2 => 3,
            Gen::R3 => 4,
            Gen::R12 => 5,
            Gen::R23 => 6,
            Gen::R123 => 7,
        }
    }

    /// Left and right idempotents of the sandwich presentation.
    pub fn idems(self) -> (Idem, Idem) {
        use Idem::*;
        match self {
            Gen::I0 => (I0, I0),
            Gen::I1 => (I1, I1),
            Gen::R1 => (I0, I1),
            Gen::R2 => (I1, I0),
            Gen::R3 => (I0, I1),
            Gen::R12 => (I0, I0),
            Gen::R23 => (I1, I1),
            Gen::R123 => (I0, I1),
        }
    }

    pub fn is_idempotent(self) -> bool {
        matches!(self, Gen::I0 | Gen::I1)
    }

    /// The digit string of a Reeb element: "1", "2", "3", "12", "23", "123".
    pub fn digits(self) -> Option<&'static str> {
        match self {
            Gen::R1 => Some("1"),
            Gen::R2 => Some("2"),
            Gen::R3 => Some("3"),
            Gen::R12 => Some("12"),
            Gen::R23 => Some("23"),
            Gen::R123 => Some("123"),
            _ => None,
        }
    }

    pub fn from_digits(s: &str) -> Result<Gen> {
        match s {
            "1" => Ok(Gen::R1),
            "2" => Ok(Gen::R2),
            "3" => Ok(Gen::R3),
            "12" => Ok(Gen::R12),
            "23" => Ok(Gen::R23),
            "123" => Ok(Gen::R123),
            _ => input_err(format!("not an algebra label: {s:?}")),
        }
    }

    /// The algebra automorphism induced by the digit swap 1 <-> 3; it
    /// reverses multiplication and exchanges the idempotents, realizing
    /// the identification with the opposite algebra.
    pub fn opposite(self) -> Gen {
        match self {
            Gen::I0 => Gen::I1,
            Gen::I1 => Gen::I0,
            Gen::R1 => Gen::R3,
            Gen::R3 => Gen::R1,
            Gen::R2 => Gen::R2,
            Gen::R12 => Gen::R23,
            Gen::R23 => Gen::R12,
            Gen::R123 => Gen::R123,
        }
    }

    /// Product of basis elements; `None` encodes zero.
    pub fn mul(self, other: Gen) -> Option<Gen> {
        if self.is_idempotent() {
            return if other.idems().0 == idem_of(self) { Some(other) } else { None };
        }
        if other.is_idempotent() {
            return if self.idems().1 == idem_of(other) { Some(self) } else { None };
        }
        match (self, other) {
            (Gen::R1, Gen::R2) => Some(Gen::R12),
            (Gen::R2, Gen::R3) => Some(Gen::R23),
            (Gen::R1, Gen::R23) => Some(Gen::R123),
            (Gen::R12, Gen::R3) => Some(Gen::R123),
            _ => None,
        }
    }
}

fn idem_of(g: Gen) -> Idem {
    match g {
        Gen::I0 => Idem::I0,
        Gen::I1 => Idem::I1,
        _ => unreachable!(),
    }
}

impl std::fmt::Display for Gen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Gen::I0 => f.write_str("i0"),
            Gen::I1 => f.write_str("i1"),
            other => write!(f, "r{}", other.digits().unwrap()),
        }
    }
}

/// An F2 linear combination of basis elements, stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct AlgElt(pub u8);

impl AlgElt {
    pub fn zero() -> AlgElt {
        AlgElt(0)
    }

    pub fn one() -> AlgElt {
        AlgElt::from_gen(Gen::I0) + AlgElt::from_gen(Gen::I1)
    }

    pub fn from_gen(g: Gen) -> AlgElt {
        AlgElt(1 << g.index())
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn terms(self) -> impl Iterator<Item = Gen> {
        BASIS.into_iter().filter(move |g| self.0 & (1 << g.index()) != 0)
    }

    pub fn mul(self, other: AlgElt) -> AlgElt {
        let mut out = AlgElt::zero();
        for a in self.terms() {
            for b in other.terms() {
                if let Some(c) = a.mul(b) {
                    out += AlgElt::from_gen(c);
                }
            }
        }
        out
    }
}

impl std::ops::Add for AlgElt {
    type Output = AlgElt;
    fn add(self, rhs: AlgElt) -> AlgElt {
        AlgElt(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for AlgElt {
    fn add_assign(&mut self, rhs: AlgElt) {
        self.0 ^= rhs.0;
    }
}

/// Bilinear product on combinations.
pub fn alg_mul(a: AlgElt, b: AlgElt) -> AlgElt {
    a.mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_products() {
        assert_eq!(Gen::R1.mul(Gen::R2), Some(Gen::R12));
        assert_eq!(Gen::R2.mul(Gen::R1), None);
        assert_eq!(Gen::R2.mul(Gen::R3), Some(Gen::R23));
        assert_eq!(Gen::R1.mul(Gen::R23), Some(Gen::R123));
        assert_eq!(Gen::R12.mul(Gen::R3), Some(Gen::R123));
    }

    #[test]
    fn idempotent_sandwiches() {
        assert_eq!(Gen::I0.mul(Gen::R1), Some(Gen::R1));
        assert_eq!(Gen::R1.mul(Gen::I0), None);
        assert_eq!(Gen::R1.mul(Gen::I1), Some(Gen::R1));
        assert_eq!(Gen::I1.mul(Gen::R2), Some(Gen::R2));
    }

    #[test]
    fn unit_acts_as_identity() {
        for g in BASIS {
            let e = AlgElt::from_gen(g);
            assert_eq!(alg_mul(AlgElt::one(), e), e);
            assert_eq!(alg_mul(e, AlgElt::one()), e);
        }
    }

    #[test]
    fn associativity_on_basis() {
        for a in BASIS {
            for b in BASIS {
                for c in BASIS {
                    let ab_c = a.mul(b).and_then(|ab| ab.mul(c));
                    let a_bc = b.mul(c).and_then(|bc| a.mul(bc));
                    assert_eq!(ab_c, a_bc, "({a})({b})({c})");
                }
            }
        }
    }

    #[test]
    fn opposite_is_antiautomorphism() {
        for a in BASIS {
            for b in BASIS {
                let lhs = a.mul(b).map(Gen::opposite);
                let rhs = b.opposite().mul(a.opposite());
                assert_eq!(lhs, rhs, "phi({a} {b})");
            }
        }
    }
}
