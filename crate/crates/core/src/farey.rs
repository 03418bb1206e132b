//! Exact arithmetic of negative subtractive continued fractions, the
//! descending slope chains they generate in the Farey tessellation, their
//! convergents, and the parity classes that drive the classification
//! criteria.
//!
//! All arithmetic is arbitrary-precision; there is no floating point
//! anywhere in this module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input_err, Error, Result};

/// A slope in Q ∪ {∞}, stored as a primitive pair with positive
/// denominator, except ∞ = 1/0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slope {
    pub num: BigInt,
    pub den: BigInt,
}

impl Slope {
    /// Normalizes to lowest terms with `den > 0`, or `1/0` for ∞.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (mut num, mut den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return input_err("slope 0/0 is not a slope");
        }
        let g = num.gcd(&den);
        if !g.is_zero() {
            num /= &g;
            den /= &g;
        }
        if den.is_negative() || (den.is_zero() && num.is_negative()) {
            num = -num;
            den = -den;
        }
        Ok(Slope { num, den })
    }

    pub fn infinity() -> Self {
        Slope { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    /// The primitive vector (den, num) representing this slope in the
    /// plane cover, defined up to simultaneous sign.
    pub fn vector(&self) -> (BigInt, BigInt) {
        (self.den.clone(), self.num.clone())
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Slope { num: r.numer().clone(), den: r.denom().clone() }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_infinite() {
            None
        } else {
            Some(BigRational::new(self.num.clone(), self.den.clone()))
        }
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Two slopes are joined by an edge of the Farey tessellation exactly when
/// their primitive vectors form a unimodular pair.
pub fn is_farey_edge(s: &Slope, t: &Slope) -> bool {
    let d = &s.num * &t.den - &t.num * &s.den;
    d.abs().is_one()
}

/// The subtractive continued fraction [r0,...,rk] with every coefficient
/// <= -2, representing r0 - 1/(r1 - 1/(...)).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegCfrac {
    coeffs: Vec<BigInt>,
}

impl NegCfrac {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return input_err("continued fraction needs at least one coefficient");
        }
        let m2 = BigInt::from(-2);
        if coeffs.iter().any(|c| *c > m2) {
            return input_err("continued fraction coefficients must all be <= -2");
        }
        Ok(NegCfrac { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The index k of the last coefficient.
    pub fn k(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates [r0,...,rk] as an exact rational, folding from the right.
    pub fn value(&self) -> BigRational {
        let mut acc = BigRational::from(self.coeffs.last().unwrap().clone());
        for r in self.coeffs.iter().rev().skip(1) {
            acc = BigRational::from(r.clone()) - acc.recip();
        }
        acc
    }

    pub fn all_minus_two(&self) -> bool {
        let m2 = BigInt::from(-2);
        self.coeffs.iter().all(|c| *c == m2)
    }
}

impl std::fmt::Display for NegCfrac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// The expansion of -p/q with all coefficients <= -2, for coprime p > q >= 1.
pub fn neg_cfrac(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<NegCfrac> {
    let (p, q) = (p.into(), q.into());
    if !p.is_positive() || !q.is_positive() || p <= q {
        return input_err("need p > q >= 1");
    }
    if !p.gcd(&q).is_one() {
        return input_err("p and q must be coprime");
    }
    let mut coeffs = Vec::new();
    let (mut p, mut q) = (p, q);
    loop {
        // c = ceil(p/q), remainder t = c*q - p lies in [0, q)
        let c = (&p + &q - BigInt::one()).div_floor(&q);
        let t = &c * &q - &p;
        coeffs.push(-c);
        if t.is_zero() {
            break;
        }
        p = q;
        q = t;
    }
    NegCfrac::new(coeffs)
}

/// Result of stepping a slope chain once toward -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepDown {
    /// The previous slope in the chain, still strictly below -1.
    Next(NegCfrac),
    /// The chain has reached its terminus s0 = -1.
    Terminus,
}

/// Given the expansion of s_i, produces the expansion of s_{i-1}: the last
/// coefficient is incremented, and trailing -1 coefficients are absorbed
/// into their predecessor.
pub fn step_down(c: &NegCfrac) -> Result<StepDown> {
    let mut coeffs = c.coeffs.to_vec();
    *coeffs.last_mut().unwrap() += 1;
    while coeffs.len() > 1 && *coeffs.last().unwrap() == BigInt::from(-1) {
        coeffs.pop();
        *coeffs.last_mut().unwrap() += 1;
    }
    if coeffs.len() == 1 && coeffs[0] == BigInt::from(-1) {
        return Ok(StepDown::Terminus);
    }
    Ok(StepDown::Next(NegCfrac::new(coeffs)?))
}

/// The chain s_0 = -1, s_1, ..., s_N = -p/q walked through slopes of the
/// Farey tessellation; consecutive entries are Farey neighbors and the
/// sequence is strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyPath {
    pub steps: Vec<Slope>,
}

impl FareyPath {
    pub fn len_n(&self) -> usize {
        self.steps.len() - 1
    }
}

/// The full chain obtained by iterating `step_down` from the expansion of
/// -p/q. The length N is checked against the closed formula
/// |(r0+2)+...+(r_{k-1}+2)+(r_k+1)|; a mismatch is reported as an internal
/// error rather than a silently wrong chain.
pub fn farey_path(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<FareyPath> {
    let (p, q) = (p.into(), q.into());
    let cf = neg_cfrac(p, q)?;
    let mut slopes_rev: Vec<Slope> = vec![Slope::from_rational(&cf.value())];
    let mut cur = cf.clone();
    loop {
        match step_down(&cur)? {
            StepDown::Next(next) => {
                slopes_rev.push(Slope::from_rational(&next.value()));
                cur = next;
            }
            StepDown::Terminus => {
                slopes_rev.push(Slope::new(-1, 1)?);
                break;
            }
        }
    }
    slopes_rev.reverse();
    let n_expected = closed_formula_n(&cf);
    let n_actual = BigInt::from(slopes_rev.len() as u64 - 1);
    if n_actual != n_expected {
        return Err(Error::Internal(format!(
            "chain length {n_actual} disagrees with closed formula {n_expected}"
        )));
    }
    Ok(FareyPath { steps: slopes_rev })
}

fn closed_formula_n(cf: &NegCfrac) -> BigInt {
    let k = cf.k();
    let mut sum = BigInt::zero();
    for (j, r) in cf.coeffs().iter().enumerate() {
        sum += r + BigInt::from(if j < k { 2 } else { 1 });
    }
    sum.abs()
}

/// Convergent pairs (x_j, y_j) with x_j/y_j = [r0,...,rj] and
/// x_j y_{j-1} - x_{j-1} y_j = -1 for j >= 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentList {
    pub pairs: Vec<(BigInt, BigInt)>,
}

pub fn convergents(cf: &NegCfrac) -> ConvergentList {
    let r = cf.coeffs();
    let mut pairs: Vec<(BigInt, BigInt)> = Vec::with_capacity(r.len());
    pairs.push((r[0].clone(), BigInt::one()));
    if r.len() > 1 {
        pairs.push((&r[0] * &r[1] - BigInt::one(), r[1].clone()));
    }
    for j in 2..r.len() {
        let x = &r[j] * &pairs[j - 1].0 - &pairs[j - 2].0;
        let y = &r[j] * &pairs[j - 1].1 - &pairs[j - 2].1;
        pairs.push((x, y));
    }
    ConvergentList { pairs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParityClass {
    /// k even and every odd-position coefficient equal to -2: all chain
    /// denominators q_i are odd.
    AllOddDenominators,
    /// r0 odd, k odd, and every even interior position equal to -2: from
    /// index |r0|-1 onward one of p_i, q_i is even.
    AlternatingFromR0,
    Neither,
}

impl std::fmt::Display for ParityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ParityClass::AllOddDenominators => "all_odd_denominators",
            ParityClass::AlternatingFromR0 => "alternating_from_r0",
            ParityClass::Neither => "neither",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub class: ParityClass,
    /// Whether p (numerator of the final slope, taken positive) is even.
    pub p_even: bool,
    /// Index from which the parity of p_i alternates, when the class
    /// guarantees alternation.
    pub alternation_from: Option<usize>,
}

pub fn parity_class(cf: &NegCfrac) -> ParityReport {
    let r = cf.coeffs();
    let k = cf.k();
    let m2 = BigInt::from(-2);
    let is_odd = |x: &BigInt| x.is_odd();

    let all_odd_den = k % 2 == 0 && (1..k).step_by(2).all(|j| r[j] == m2);
    let alternating = is_odd(&r[0]) && k % 2 == 1 && (2..k).step_by(2).all(|j| r[j] == m2);

    let p_even = cf.value().numer().is_even();

    if all_odd_den {
        // the parity of p equals the parity of r0 + r2 + ... + rk
        ParityReport {
            class: ParityClass::AllOddDenominators,
            p_even,
            alternation_from: if p_even { Some(0) } else { None },
        }
    } else if alternating {
        let from = (r[0].abs().to_usize().unwrap_or(usize::MAX)).saturating_sub(1);
        ParityReport {
            class: ParityClass::AlternatingFromR0,
            p_even,
            alternation_from: Some(from),
        }
    } else {
        ParityReport { class: ParityClass::Neither, p_even, alternation_from: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(coeffs: &[i64]) -> NegCfrac {
        NegCfrac::from_i64(coeffs).unwrap()
    }

    #[test]
    fn expansions_match_worked_examples() {
        assert_eq!(neg_cfrac(10, 7).unwrap(), cf(&[-2, -2, -4]));
        assert_eq!(neg_cfrac(14, 5).unwrap(), cf(&[-3, -5]));
        assert_eq!(neg_cfrac(2, 1).unwrap(), cf(&[-2]));
        assert_eq!(neg_cfrac(14, 3).unwrap(), cf(&[-5, -3]));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(neg_cfrac(4, 2).is_err());
        assert!(neg_cfrac(3, 5).is_err());
        assert!(neg_cfrac(5, 5).is_err());
    }

    #[test]
    fn step_down_examples() {
        assert_eq!(step_down(&cf(&[-3, -5])).unwrap(), StepDown::Next(cf(&[-3, -4])));
        assert_eq!(step_down(&cf(&[-3, -2])).unwrap(), StepDown::Next(cf(&[-2])));
        assert_eq!(step_down(&cf(&[-5, -3])).unwrap(), StepDown::Next(cf(&[-5, -2])));
        assert_eq!(step_down(&cf(&[-2])).unwrap(), StepDown::Terminus);
    }

    #[test]
    fn chain_for_10_7() {
        let path = farey_path(10, 7).unwrap();
        let got: Vec<String> = path.steps.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, vec!["-1", "-4/3", "-7/5", "-10/7"]);
        assert_eq!(path.len_n(), 3);
    }

    #[test]
    fn chain_for_14_5() {
        let path = farey_path(14, 5).unwrap();
        let got: Vec<String> = path.steps.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, vec!["-1", "-2", "-5/2", "-8/3", "-11/4", "-14/5"]);
        assert_eq!(path.len_n(), 5);
    }

    #[test]
    fn chain_for_14_3_follows_the_step_rule() {
        // the six-term chain forced by the step rule and the length formula
        let path = farey_path(14, 3).unwrap();
        let got: Vec<String> = path.steps.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, vec!["-1", "-2", "-3", "-4", "-9/2", "-14/3"]);
    }

    #[test]
    fn convergents_examples() {
        let c = convergents(&cf(&[-2, -2, -4]));
        let want: Vec<(i64, i64)> = vec![(-2, 1), (3, -2), (-10, 7)];
        assert_eq!(
            c.pairs,
            want.into_iter()
                .map(|(a, b)| (BigInt::from(a), BigInt::from(b)))
                .collect::<Vec<_>>()
        );
        let c = convergents(&cf(&[-2, -3, -2]));
        assert_eq!(c.pairs[2], (BigInt::from(-8), BigInt::from(5)));
        let c = convergents(&cf(&[-2]));
        assert_eq!(c.pairs, vec![(BigInt::from(-2), BigInt::from(1))]);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_class(&cf(&[-2, -2, -4])).class, ParityClass::AllOddDenominators);
        assert_eq!(parity_class(&cf(&[-3, -5])).class, ParityClass::AlternatingFromR0);
        assert_eq!(parity_class(&cf(&[-2, -3, -2])).class, ParityClass::Neither);
    }

    #[test]
    fn farey_edge_examples() {
        let s = |n: i64, d: i64| Slope::new(n, d).unwrap();
        assert!(is_farey_edge(&s(0, 1), &Slope::infinity()));
        assert!(is_farey_edge(&s(-10, 7), &s(-7, 5)));
        assert!(!is_farey_edge(&s(-14, 3), &s(-4, 1)));
    }
}
