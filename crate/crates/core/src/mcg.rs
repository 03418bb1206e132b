//! Monodromy words on the four-punctured sphere, their PSL(2,Z) shadow,
//! the pure-subgroup membership test, and conjugacy normalization into the
//! nonnegative p > q form used by the classification routines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input_err, Result};
use crate::farey::Slope;

/// An element of PSL(2,Z): an integer matrix [[r,s],[p,q]] of determinant
/// one, identified with its negation. The canonical representative makes
/// the first nonzero entry in reading order positive.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Psl2zMatrix {
    entries: [BigInt; 4],
}

impl Psl2zMatrix {
    pub fn new(r: impl Into<BigInt>, s: impl Into<BigInt>, p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let m = Psl2zMatrix { entries: [r.into(), s.into(), p.into(), q.into()] };
        if !m.det().is_one() {
            return input_err("matrix must have determinant 1");
        }
        Ok(m.canonical())
    }

    pub fn from_i64(e: [i64; 4]) -> Result<Self> {
        Self::new(e[0], e[1], e[2], e[3])
    }

    pub fn identity() -> Self {
        Psl2zMatrix::new(1, 0, 0, 1).unwrap()
    }

    fn det(&self) -> BigInt {
        &self.entries[0] * &self.entries[3] - &self.entries[1] * &self.entries[2]
    }

    fn canonical(mut self) -> Self {
        for e in &self.entries {
            if !e.is_zero() {
                if e.is_negative() {
                    for x in &mut self.entries {
                        *x = -std::mem::take(x);
                    }
                }
                break;
            }
        }
        self
    }

    /// Entries in reading order of the canonical representative.
    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.entries[0], &self.entries[1], &self.entries[2], &self.entries[3]]
    }

    pub fn mul(&self, other: &Psl2zMatrix) -> Psl2zMatrix {
        let a = &self.entries;
        let b = &other.entries;
        Psl2zMatrix {
            entries: [
                &a[0] * &b[0] + &a[1] * &b[2],
                &a[0] * &b[1] + &a[1] * &b[3],
                &a[2] * &b[0] + &a[3] * &b[2],
                &a[2] * &b[1] + &a[3] * &b[3],
            ],
        }
        .canonical()
    }

    pub fn inverse(&self) -> Psl2zMatrix {
        let a = &self.entries;
        Psl2zMatrix {
            entries: [a[3].clone(), -a[1].clone(), -a[2].clone(), a[0].clone()],
        }
        .canonical()
    }

    pub fn pow(&self, e: i64) -> Psl2zMatrix {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Psl2zMatrix::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn trace_abs(&self) -> BigInt {
        (&self.entries[0] + &self.entries[3]).abs()
    }

    /// Action on a column vector (x, y).
    pub fn apply(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        let a = &self.entries;
        (&a[0] * x + &a[1] * y, &a[2] * x + &a[3] * y)
    }
}

impl PartialEq for Psl2zMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}
impl Eq for Psl2zMatrix {}

impl std::fmt::Display for Psl2zMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let e = &self.entries;
        write!(f, "[[{},{}],[{},{}]]", e[0], e[1], e[2], e[3])
    }
}

/// The matrix of the positive Dehn twist about a curve of the given slope:
/// x -> x + 2 det(v, x) v on the primitive vector v of the slope.
pub fn twist_matrix(s: &Slope) -> Psl2zMatrix {
    let (a, b) = s.vector(); // v = (den, num)
    // entries of I + 2 * [[-ab, a^2], [-b^2, ab]]
    let two = BigInt::from(2);
    let r = BigInt::one() - &two * &a * &b;
    let s_ = &two * &a * &a;
    let p = -&two * &b * &b;
    let q = BigInt::one() + &two * &a * &b;
    Psl2zMatrix::new(r, s_, p, q).expect("twist matrices are unimodular")
}

/// A word of Dehn twists in function order: entries on the right are
/// applied first, matching matrix multiplication order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistWord {
    pub letters: Vec<(WordCurve, i64)>,
}

/// Curves nameable in a word: the four boundary curves, the three named
/// interior curves, and arbitrary interior slopes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordCurve {
    A1,
    A2,
    A3,
    A4,
    B,
    C,
    D,
    E,
    SlopeCurve(Slope),
}

impl WordCurve {
    pub fn is_boundary(&self) -> bool {
        matches!(self, WordCurve::A1 | WordCurve::A2 | WordCurve::A3 | WordCurve::A4)
    }

    fn matrix(&self) -> Psl2zMatrix {
        match self {
            WordCurve::A1 | WordCurve::A2 | WordCurve::A3 | WordCurve::A4 => Psl2zMatrix::identity(),
            WordCurve::B => twist_matrix(&Slope::new(0, 1).unwrap()),
            WordCurve::C => twist_matrix(&Slope::infinity()),
            // the lantern relation pins tau_d: a1 a2 a3 a4 = b c d projects to I
            WordCurve::D => {
                let bc = WordCurve::B.matrix().mul(&WordCurve::C.matrix());
                bc.inverse()
            }
            WordCurve::E => twist_matrix(&Slope::new(-2, 1).unwrap()),
            WordCurve::SlopeCurve(s) => twist_matrix(s),
        }
    }
}

impl TwistWord {
    pub fn new(letters: Vec<(WordCurve, i64)>) -> Result<Self> {
        if letters.iter().any(|(_, e)| *e == 0) {
            return input_err("twist exponents must be nonzero");
        }
        Ok(TwistWord { letters })
    }
}

/// Projection to PSL(2,Z): the product of twist matrices in function
/// order; boundary twists contribute the identity.
pub fn project_word(w: &TwistWord) -> Psl2zMatrix {
    let mut acc = Psl2zMatrix::identity();
    for (curve, exp) in &w.letters {
        acc = acc.mul(&curve.matrix().pow(*exp));
    }
    acc
}

/// Membership in the pure subgroup: diagonal entries odd, off-diagonal
/// even (independent of the sign representative).
pub fn in_pure_subgroup(m: &Psl2zMatrix) -> bool {
    let e = m.entries();
    e[0].is_odd() && e[3].is_odd() && e[1].is_even() && e[2].is_even()
}

/// Outcome of conjugacy normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    /// Conjugated form [[p',q'],[p,q]] with all entries >= 0 and p > q,
    /// together with a conjugator realizing it exactly in PSL(2,Z).
    Form { matrix: Psl2zMatrix, conjugator: Psl2zMatrix },
    /// The matrix belongs to the excluded family: a parabolic (or the
    /// identity) conjugate to a nonnegative power of a single positive
    /// twist.
    Excluded,
}

/// Normalizes a pure-subgroup matrix up to conjugacy so that the bottom
/// row (p, q) satisfies p > q >= 0 with all entries nonnegative, following
/// the eigen-slope bracketing argument; detects the excluded
/// positive-single-twist family.
pub fn normalize_conjugacy(m: &Psl2zMatrix) -> Result<Normalized> {
    if !in_pure_subgroup(m) {
        return input_err("matrix is not in the pure subgroup");
    }
    let two = BigInt::from(2);
    let tr = {
        let e = m.entries();
        (e[0] + e[3]).abs()
    };

    if tr <= two {
        // parabolic or identity: the conjugacy invariant c in M = ±(I + c Q_v)
        return normalize_parabolic(m);
    }

    // hyperbolic: bracket the expanding eigendirection by a Farey edge and
    // conjugate into the nonnegative cone, then shear until p > q
    let mut work = sign_fixed(m);
    let mut conj = Psl2zMatrix::identity();
    if !all_nonneg(&work) {
        let basis = bracket_basis(&work)?;
        let inv = basis.inverse();
        work = inv.mul(&work).mul(&basis);
        work = sign_fixed(&work);
        conj = inv;
        if !all_nonneg(&work) {
            return Err(crate::error::Error::Internal(format!(
                "cone bracketing failed to produce nonnegative entries: {work}"
            )));
        }
    }
    // shear by [[1,1],[0,1]] until the bottom row satisfies p > q
    let t = Psl2zMatrix::new(1, 1, 0, 1).unwrap();
    let tinv = t.inverse();
    loop {
        let e = work.entries();
        let (p, q) = (e[2].clone(), e[3].clone());
        if p > q {
            break;
        }
        work = t.mul(&work).mul(&tinv);
        work = sign_fixed(&work);
        conj = t.mul(&conj);
    }
    debug_assert_eq!(conj.mul(m).mul(&conj.inverse()), work);
    Ok(Normalized::Form { matrix: work, conjugator: conj })
}

/// Representative with nonnegative trace.
fn sign_fixed(m: &Psl2zMatrix) -> Psl2zMatrix {
    let e = m.entries();
    if (e[0] + e[3]).is_negative() {
        Psl2zMatrix::new(-e[0].clone(), -e[1].clone(), -e[2].clone(), -e[3].clone()).unwrap()
    } else {
        m.clone()
    }
}

fn all_nonneg(m: &Psl2zMatrix) -> bool {
    m.entries().iter().all(|e| !e.is_negative())
}

fn normalize_parabolic(m: &Psl2zMatrix) -> Result<Normalized> {
    let w = sign_fixed(m);
    let e = w.entries();
    // N = M - I is nilpotent of rank <= 1: N = c [[-ab, a^2], [-b^2, ab]]
    // for the primitive fixed vector (a, b)
    let n = [
        e[0] - BigInt::one(),
        e[1].clone(),
        e[2].clone(),
        e[3] - BigInt::one(),
    ];
    if n.iter().all(|x| x.is_zero()) {
        return Ok(Normalized::Excluded); // identity = zeroth power of a twist
    }
    let (a, b, c) = parabolic_data(&n);
    if !c.is_negative() {
        return Ok(Normalized::Excluded);
    }
    // negative twisting: conjugate the fixed vector to (0, 1), giving
    // [[1, 0], [-c, 1]] with -c >= 2
    let conj = complete_to_unimodular(&a, &b)?;
    let out = conj.mul(m).mul(&conj.inverse());
    let out = sign_fixed(&out);
    if !all_nonneg(&out) {
        return Err(crate::error::Error::Internal(format!(
            "parabolic normalization produced {out}"
        )));
    }
    Ok(Normalized::Form { matrix: out, conjugator: conj })
}

/// Decomposes a nonzero nilpotent N = c [[-ab, a^2], [-b^2, ab]] into the
/// primitive kernel vector (a, b) and the coefficient c.
fn parabolic_data(n: &[BigInt; 4]) -> (BigInt, BigInt, BigInt) {
    let (x, y) = if !n[0].is_zero() || !n[1].is_zero() {
        (n[1].clone(), -n[0].clone())
    } else {
        (n[3].clone(), -n[2].clone())
    };
    let g = x.gcd(&y);
    let (a, b) = (x / &g, y / &g);
    let c = if a.is_zero() {
        // b = ±1 and n[2] = -b^2 c
        -n[2].clone()
    } else {
        n[1].clone() / (&a * &a)
    };
    (a, b, c)
}

/// A determinant-one matrix sending the primitive vector (x, y) to (0, 1).
fn complete_to_unimodular(x: &BigInt, y: &BigInt) -> Result<Psl2zMatrix> {
    // find u, v with u*x + v*y = 1; then [[y, -x], [u, v]] has det 1 and
    // maps (x, y) to (y*x - x*y, u*x + v*y) = (0, 1)
    let g = x.extended_gcd(y);
    if !g.gcd.is_one() {
        return input_err("vector is not primitive");
    }
    Psl2zMatrix::new(y.clone(), -x.clone(), g.x, g.y)
}

/// A number a + b√D with D > 0 fixed; only exact sign queries are needed.
struct QuadExt {
    a: BigInt,
    b: BigInt,
}

impl QuadExt {
    /// Sign of a + b√D for non-square D > 0 (never zero unless a = b = 0).
    fn sign(&self, d: &BigInt) -> i32 {
        let (sa, sb) = (sign_of(&self.a), sign_of(&self.b));
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 against b^2 D
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * d;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

fn sign_of(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Brackets the expanding eigendirection of a hyperbolic matrix inside a
/// unimodular cone that the matrix maps into itself, by Stern-Brocot
/// refinement with exact quadratic-irrational comparisons. Returns the
/// basis matrix whose columns span the cone.
fn bracket_basis(m: &Psl2zMatrix) -> Result<Psl2zMatrix> {
    let w = sign_fixed(m);
    let e = w.entries();
    let tau = e[0] + e[3];
    let d = &tau * &tau - BigInt::from(4);
    // eigenvector for the expanding eigenvalue (tau + sqrt(D))/2, scaled
    // by 2: (2s, tau - 2r + sqrt(D)), or its mirror when s = 0
    let (w1, w2) = if !e[1].is_zero() {
        (
            QuadExt { a: e[1] * BigInt::from(2), b: BigInt::zero() },
            QuadExt { a: &tau - e[0] * BigInt::from(2), b: BigInt::one() },
        )
    } else if !e[2].is_zero() {
        (
            QuadExt { a: &tau - e[3] * BigInt::from(2), b: BigInt::one() },
            QuadExt { a: e[2] * BigInt::from(2), b: BigInt::zero() },
        )
    } else {
        return Err(crate::error::Error::Internal("diagonal matrix is not hyperbolic".into()));
    };
    // cross((x, y), w) = x w2 - y w1, exact sign in Z[sqrt(D)]
    let cross_w = |x: &BigInt, y: &BigInt| -> i32 {
        QuadExt { a: x * &w2.a - y * &w1.a, b: x * &w2.b - y * &w1.b }.sign(&d)
    };
    // quadrant cone containing the eigendirection, oriented with det 1
    let s1 = w1.sign(&d);
    let s2 = w2.sign(&d);
    let (mut u, mut v): ((BigInt, BigInt), (BigInt, BigInt)) = match (s1 > 0, s2 > 0) {
        (true, true) => ((1.into(), 0.into()), (0.into(), 1.into())),
        (false, true) => ((0.into(), 1.into()), ((-1).into(), 0.into())),
        (false, false) => (((-1).into(), 0.into()), (0.into(), (-1).into())),
        (true, false) => ((0.into(), (-1).into()), (1.into(), 0.into())),
    };
    for _ in 0..100_000 {
        if cone_maps_into(m, &u, &v) {
            return Psl2zMatrix::new(u.0, v.0, u.1, v.1);
        }
        let med = (&u.0 + &v.0, &u.1 + &v.1);
        // keep the half containing the eigendirection: w between u and med
        // iff cross(med, w) still positive with the det-1 orientation
        if cross_w(&med.0, &med.1) > 0 {
            u = med;
        } else {
            v = med;
        }
    }
    Err(crate::error::Error::Internal(
        "failed to bracket the expanding eigendirection".into(),
    ))
}

fn cross(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> BigInt {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn in_cone(u: &(BigInt, BigInt), v: &(BigInt, BigInt), x: &(BigInt, BigInt)) -> bool {
    // x lies projectively in the closed det-1 cone spanned by (u, v)
    !cross(u, x).is_negative() && !cross(x, v).is_negative()
}

fn cone_maps_into(m: &Psl2zMatrix, u: &(BigInt, BigInt), v: &(BigInt, BigInt)) -> bool {
    let mu = m.apply(&u.0, &u.1);
    let mv = m.apply(&v.0, &v.1);
    (in_cone(u, v, &mu) && in_cone(u, v, &mv))
        || (in_cone(u, v, &(-mu.0.clone(), -mu.1.clone()))
            && in_cone(u, v, &(-mv.0.clone(), -mv.1.clone())))
}

/// Monodromy data for a reducible map: boundary twist exponents and the
/// twisting about the fixed interior curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibleNormalForm {
    pub n: [i64; 4],
    pub gamma_slope: Slope,
    pub n_gamma: i64,
}

impl ReducibleNormalForm {
    pub fn with_curve_b(n: [i64; 4], n_gamma: i64) -> Self {
        ReducibleNormalForm { n, gamma_slope: Slope::new(0, 1).unwrap(), n_gamma }
    }

    pub fn min_boundary(&self) -> i64 {
        *self.n.iter().min().unwrap()
    }
}

/// Right-veering test for reducible monodromies: all boundary exponents at
/// least one, or all nonnegative with nonnegative interior twisting.
pub fn right_veering_reducible(f: &ReducibleNormalForm) -> bool {
    let min = f.min_boundary();
    min >= 1 || (min >= 0 && f.n_gamma >= 0)
}

/// Twist coefficients at the four boundary components, for the word
/// families where they are determined:
/// boundary twists times a single interior twist power, boundary twists
/// times b^m d^l c^{-1}, and boundary twists times b^{m+1} e (which adds
/// one to every coefficient). Other words return `None`.
pub fn fdtc_covered(w: &TwistWord) -> Option<[i64; 4]> {
    let mut boundary = [0i64; 4];
    let mut interior: Vec<(WordCurve, i64)> = Vec::new();
    for (c, e) in &w.letters {
        match c {
            WordCurve::A1 => boundary[0] += e,
            WordCurve::A2 => boundary[1] += e,
            WordCurve::A3 => boundary[2] += e,
            WordCurve::A4 => boundary[3] += e,
            other => interior.push((other.clone(), *e)),
        }
    }
    // family (i): at most one interior letter
    if interior.len() <= 1 {
        return Some(boundary);
    }
    // family (ii): b^m d^l c^{-1} with m, l >= 1
    if interior.len() == 3 {
        let ok = matches!(&interior[0], (WordCurve::B, m) if *m >= 1)
            && matches!(&interior[1], (WordCurve::D, l) if *l >= 1)
            && matches!(&interior[2], (WordCurve::C, -1));
        if ok {
            return Some(boundary);
        }
    }
    // family (ii) degenerate: d^l c^{-1}
    if interior.len() == 2 {
        let ok = matches!(&interior[0], (WordCurve::D, l) if *l >= 1)
            && matches!(&interior[1], (WordCurve::C, -1));
        if ok {
            return Some(boundary);
        }
        // family (iii): b^{m+1} e
        let ok = matches!(&interior[0], (WordCurve::B, m) if *m >= 1)
            && matches!(&interior[1], (WordCurve::E, 1));
        if ok {
            return Some([boundary[0] + 1, boundary[1] + 1, boundary[2] + 1, boundary[3] + 1]);
        }
    }
    None
}
