//! Decision procedures for tightness, overtwistedness, Stein fillability,
//! and contact-invariant nonvanishing of monodromies on the
//! four-punctured sphere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};
use crate::farey::{neg_cfrac, parity_class, NegCfrac, ParityClass};
use crate::mcg::{right_veering_reducible, Psl2zMatrix, ReducibleNormalForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictTag {
    SteinFillable,
    Tight,
    OvertwistedNotRightVeering,
    OvertwistedTransverseDisk,
    Unknown,
}

impl std::fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            VerdictTag::SteinFillable => "stein_fillable",
            VerdictTag::Tight => "tight",
            VerdictTag::OvertwistedNotRightVeering => "overtwisted_not_right_veering",
            VerdictTag::OvertwistedTransverseDisk => "overtwisted_transverse_disk",
            VerdictTag::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// A classification outcome together with the name of the criterion that
/// produced it. Stein fillability forces a nonvanishing invariant;
/// overtwistedness forces a vanishing one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub witness: &'static str,
    pub invariant_nonvanishing: Option<bool>,
}

impl Verdict {
    fn check(self) -> Self {
        match (self.tag, self.invariant_nonvanishing) {
            (VerdictTag::SteinFillable, nv) => debug_assert_eq!(nv, Some(true)),
            (VerdictTag::OvertwistedNotRightVeering | VerdictTag::OvertwistedTransverseDisk, nv) => {
                debug_assert_eq!(nv, Some(false))
            }
            _ => {}
        }
        self
    }
}

/// Exact nonvanishing criterion for the reducible family:
/// min(n) >= max(-n_b, 0).
pub fn lekili_nonvanishing(n: [i64; 4], n_b: i64) -> bool {
    let min = *n.iter().min().unwrap();
    min >= (-n_b).max(0)
}

/// Sufficient condition for a positive factorization of a general word in
/// boundary twists and powers of two fixed dual curves:
/// min(n) >= sum of max(-B_i, -C_i, 0). A `false` here is not a
/// certificate of anything.
pub fn stein_sufficient_general(n: [i64; 4], pairs: &[(i64, i64)]) -> bool {
    let min = *n.iter().min().unwrap();
    let bound: i64 = pairs.iter().map(|(b, c)| (-b).max(-c).max(0)).sum();
    min >= bound
}

/// Full classification of a reducible monodromy.
pub fn classify_reducible(f: &ReducibleNormalForm) -> Verdict {
    let min = f.min_boundary();
    let nonvanishing = lekili_nonvanishing(f.n, f.n_gamma);
    let tag_nv = Some(nonvanishing);
    if nonvanishing {
        return Verdict {
            tag: VerdictTag::SteinFillable,
            witness: "lantern_positive_factorization",
            invariant_nonvanishing: tag_nv,
        }
        .check();
    }
    if min >= 2 {
        return Verdict {
            tag: VerdictTag::Tight,
            witness: "fdtc_min_at_least_two",
            invariant_nonvanishing: tag_nv,
        }
        .check();
    }
    if !right_veering_reducible(f) {
        return Verdict {
            tag: VerdictTag::OvertwistedNotRightVeering,
            witness: "not_right_veering",
            invariant_nonvanishing: tag_nv,
        }
        .check();
    }
    // remaining case: min = 1 with interior twisting <= -2
    Verdict {
        tag: VerdictTag::OvertwistedTransverseDisk,
        witness: "odd_denominator_disk",
        invariant_nonvanishing: tag_nv,
    }
    .check()
}

/// Classification ladder for pseudo-Anosov monodromies presented by a
/// normalized matrix (entries nonnegative, bottom row p > q) and the four
/// boundary twist coefficients. Returns `Unknown` outside the proved
/// criteria.
pub fn classify_pa(m: &Psl2zMatrix, fdtc: [i64; 4]) -> Result<Verdict> {
    let e = m.entries();
    if e.iter().any(|x| x.is_negative()) {
        return input_err("matrix must be normalized with nonnegative entries");
    }
    let (p, q) = (e[2].clone(), e[3].clone());
    if p <= q {
        return input_err("matrix must be normalized with p > q in the bottom row");
    }
    let min = *fdtc.iter().min().unwrap();

    if min <= 0 {
        // a right-veering pseudo-Anosov map has all coefficients positive
        return Ok(Verdict {
            tag: VerdictTag::OvertwistedNotRightVeering,
            witness: "not_right_veering",
            invariant_nonvanishing: Some(false),
        }
        .check());
    }
    if min >= 2 {
        return Ok(Verdict {
            tag: VerdictTag::Tight,
            witness: "fdtc_min_at_least_two",
            invariant_nonvanishing: None,
        });
    }
    // min == 1 from here on
    let cf = neg_cfrac(p.clone(), q.clone())?;
    if cf.all_minus_two() {
        return Ok(Verdict {
            tag: VerdictTag::SteinFillable,
            witness: "all_minus_two_factorization",
            invariant_nonvanishing: Some(true),
        }
        .check());
    }
    if p == 8.into() && q == 3.into() {
        return Ok(Verdict {
            tag: VerdictTag::SteinFillable,
            witness: "eight_over_three_factorization",
            invariant_nonvanishing: Some(true),
        }
        .check());
    }
    let parity = parity_class(&cf);
    if parity.class == ParityClass::AllOddDenominators && !cf.all_minus_two() {
        return Ok(Verdict {
            tag: VerdictTag::OvertwistedTransverseDisk,
            witness: "odd_denominator_disk",
            invariant_nonvanishing: Some(false),
        }
        .check());
    }
    if staircase_shape(&cf) {
        return Ok(Verdict {
            tag: VerdictTag::OvertwistedTransverseDisk,
            witness: "alternating_staircase_disk",
            invariant_nonvanishing: Some(false),
        }
        .check());
    }
    if let Some(threshold) = two_term_threshold(&cf) {
        if slope_zero_pair_condition(fdtc, threshold) {
            return Ok(Verdict {
                tag: VerdictTag::OvertwistedTransverseDisk,
                witness: "two_term_fraction_disk",
                invariant_nonvanishing: Some(false),
            }
            .check());
        }
    }
    Ok(Verdict { tag: VerdictTag::Unknown, witness: "none", invariant_nonvanishing: None })
}

/// Shape [r0, r1, -2, r3, -2, ..., r_{k-2}, -2, r_k] with r0 and k odd and
/// r1 < -3 (k = 1 allowed).
fn staircase_shape(cf: &NegCfrac) -> bool {
    let r = cf.coeffs();
    let k = cf.k();
    if k % 2 != 1 || r[0].is_even() {
        return false;
    }
    if r[1] >= BigInt::from(-3) {
        return false;
    }
    (2..k).step_by(2).all(|j| r[j] == BigInt::from(-2))
}

/// For the two-term shape [r0, -3] with r0 <= -5 odd, the coefficient
/// bound (|r0| - 3) / 2 on the partner boundary component.
fn two_term_threshold(cf: &NegCfrac) -> Option<i64> {
    let r = cf.coeffs();
    if cf.k() != 1 || r[1] != BigInt::from(-3) {
        return None;
    }
    if r[0] > BigInt::from(-5) || r[0].is_even() {
        return None;
    }
    let abs_r0 = r[0].abs().to_i64()?;
    Some((abs_r0 - 3) / 2)
}

/// Some boundary pair joined by a slope-zero arc ({1,2} or {3,4} in the
/// reference labeling, searched over the hyperelliptic relabelings) must
/// contain a coefficient-1 component together with a component at most the
/// threshold.
fn slope_zero_pair_condition(fdtc: [i64; 4], threshold: i64) -> bool {
    let pair_ok = |a: i64, b: i64| (a == 1 && b <= threshold) || (b == 1 && a <= threshold);
    pair_ok(fdtc[0], fdtc[1]) || pair_ok(fdtc[2], fdtc[3])
}
