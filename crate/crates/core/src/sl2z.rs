//! Exact arithmetic in SL(2,Z) and conjugacy classification.
//!
//! Matrices act on column vectors and products compose right to left, so
//! `a * b` applies `b` first. Under that convention the right-handed twists
//! `twist_a() * twist_b() * twist_a()` multiply out to [`phi`].
//!
//! Conjugacy is decided through a canonical [`MonodromyClass`]:
//!
//! * `±I` are central.
//! * `|trace| < 2` gives one of six elliptic classes. For a fixed trace the
//!   two classes are told apart by the sign of the lower-left entry, which is
//!   the sign of the definite form `v ↦ det[v, Av]` and therefore a
//!   conjugation invariant.
//! * `|trace| = 2` gives `±[[1,k],[0,1]]`; `k` is recovered in closed form
//!   from the rank-one nilpotent part.
//! * `|trace| > 2` is conjugated into the positive cone by following the
//!   continued fraction of the attracting fixed point, then factored into a
//!   positive word in `R = [[1,1],[0,1]]` and `L = [[1,0],[1,1]]`. The
//!   cyclic class of that word is the invariant.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error("matrix {matrix} has determinant {det}, expected 1")]
    NotUnimodular { matrix: String, det: BigInt },
    #[error("induced boundary monodromy {0} is not conjugate to Φ or Φ⁻¹")]
    CoreMonodromyMismatch(Box<Sl2Matrix>),
}

/// A 2×2 integer matrix of determinant one, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sl2Matrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Sl2Matrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, Sl2Error> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if det.is_one() {
            Ok(Sl2Matrix { a, b, c, d })
        } else {
            Err(Sl2Error::NotUnimodular {
                matrix: format!("[[{a},{b}],[{c},{d}]]"),
                det,
            })
        }
    }

    // Callers guarantee the determinant.
    fn raw(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!((&a * &d - &b * &c).is_one());
        Sl2Matrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::raw(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    /// `R^n = [[1,n],[0,1]]`.
    pub fn r_power(n: impl Into<BigInt>) -> Self {
        Self::raw(BigInt::one(), n.into(), BigInt::zero(), BigInt::one())
    }

    /// `L^n = [[1,0],[n,1]]`.
    pub fn l_power(n: impl Into<BigInt>) -> Self {
        Self::raw(BigInt::one(), BigInt::zero(), n.into(), BigInt::one())
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        Some([
            self.a.to_i64()?,
            self.b.to_i64()?,
            self.c.to_i64()?,
            self.d.to_i64()?,
        ])
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn inverse(&self) -> Self {
        Self::raw(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, exp: i64) -> Self {
        let mut base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `P⁻¹ · self · P`.
    pub fn conjugate_by(&self, p: &Sl2Matrix) -> Self {
        &(&p.inverse() * self) * p
    }
}

impl Mul for &Sl2Matrix {
    type Output = Sl2Matrix;

    fn mul(self, o: &Sl2Matrix) -> Sl2Matrix {
        Sl2Matrix::raw(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }
}

impl Mul for Sl2Matrix {
    type Output = Sl2Matrix;

    fn mul(self, o: Sl2Matrix) -> Sl2Matrix {
        &self * &o
    }
}

impl Neg for &Sl2Matrix {
    type Output = Sl2Matrix;

    fn neg(self) -> Sl2Matrix {
        Sl2Matrix::raw(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Neg for Sl2Matrix {
    type Output = Sl2Matrix;

    fn neg(self) -> Sl2Matrix {
        -&self
    }
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

pub fn multiply(a: &Sl2Matrix, b: &Sl2Matrix) -> Sl2Matrix {
    a * b
}

pub fn invert(a: &Sl2Matrix) -> Sl2Matrix {
    a.inverse()
}

/// Right-handed twist `τ_a = [[1,1],[0,1]]`.
pub fn twist_a() -> Sl2Matrix {
    Sl2Matrix::r_power(1)
}

/// Right-handed twist `τ_b = [[1,0],[-1,1]]`.
pub fn twist_b() -> Sl2Matrix {
    Sl2Matrix::l_power(-1)
}

/// The Core boundary monodromy `Φ = [[0,1],[-1,0]]`.
pub fn phi() -> Sl2Matrix {
    Sl2Matrix::raw(
        BigInt::zero(),
        BigInt::one(),
        -BigInt::one(),
        BigInt::zero(),
    )
}

/// `first · middle · last == Φ`.
pub fn is_phi_decomposition(first: &Sl2Matrix, middle: &Sl2Matrix, last: &Sl2Matrix) -> bool {
    &(first * middle) * last == phi()
}

pub fn verify_phi_decomposition() -> bool {
    is_phi_decomposition(&twist_a(), &twist_b(), &twist_a())
}

/// Generator of the positive monoid used for hyperbolic normal forms.
/// `R` is the right-handed twist `τ_a`; `L` is `τ_b⁻¹`. The derived order
/// (`R < L`) is the one used for least rotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    R,
    L,
}

impl Letter {
    pub fn power(self, n: impl Into<BigInt>) -> Sl2Matrix {
        match self {
            Letter::R => Sl2Matrix::r_power(n),
            Letter::L => Sl2Matrix::l_power(n),
        }
    }
}

/// A single Dehn twist of the torus written as `R^{±1}` or `L^{±1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Twist {
    pub letter: Letter,
    pub inverse: bool,
}

impl Twist {
    pub const R: Twist = Twist {
        letter: Letter::R,
        inverse: false,
    };
    pub const L: Twist = Twist {
        letter: Letter::L,
        inverse: false,
    };
    pub const R_INV: Twist = Twist {
        letter: Letter::R,
        inverse: true,
    };
    pub const L_INV: Twist = Twist {
        letter: Letter::L,
        inverse: true,
    };

    pub fn matrix(self) -> Sl2Matrix {
        self.letter.power(if self.inverse { -1 } else { 1 })
    }

    /// Whether this is a right-handed twist (`R` or `L⁻¹`).
    pub fn is_positive(self) -> bool {
        matches!(
            (self.letter, self.inverse),
            (Letter::R, false) | (Letter::L, true)
        )
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = match self.letter {
            Letter::R => "R",
            Letter::L => "L",
        };
        if self.inverse {
            write!(f, "{l}^-1")
        } else {
            write!(f, "{l}")
        }
    }
}

pub fn twist_product(word: &[Twist]) -> Sl2Matrix {
    word.iter()
        .fold(Sl2Matrix::identity(), |acc, t| &acc * &t.matrix())
}

/// Positive R/L word up to cyclic rotation, stored as alternating runs.
///
/// The stored rotation is the lexicographically least one with `R < L`, so
/// it always starts with an `R` run.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    runs: Vec<(Letter, BigUint)>,
}

impl CyclicWord {
    fn from_runs(mut runs: Vec<(Letter, BigUint)>) -> Self {
        if runs.len() > 1 && runs[0].0 == runs[runs.len() - 1].0 {
            let (_, tail) = runs.pop().expect("non-empty");
            runs[0].1 += tail;
        }
        if runs.len() < 2 {
            return CyclicWord { runs };
        }
        // With R < L, comparing expanded words is comparing (-r₀, l₀, -r₁, …)
        // over rotations that start at an R run.
        let key = |start: usize| -> Vec<BigInt> {
            (0..runs.len())
                .map(|i| {
                    let (letter, n) = &runs[(start + i) % runs.len()];
                    let n = BigInt::from(n.clone());
                    if *letter == Letter::R {
                        -n
                    } else {
                        n
                    }
                })
                .collect()
        };
        let best = (0..runs.len())
            .filter(|&i| runs[i].0 == Letter::R)
            .min_by(|&i, &j| key(i).cmp(&key(j)))
            .expect("both letters present");
        runs.rotate_left(best);
        CyclicWord { runs }
    }

    pub fn runs(&self) -> &[(Letter, BigUint)] {
        &self.runs
    }

    pub fn len(&self) -> BigUint {
        self.runs.iter().map(|(_, n)| n.clone()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn product(&self) -> Sl2Matrix {
        self.runs.iter().fold(Sl2Matrix::identity(), |acc, (l, n)| {
            &acc * &l.power(BigInt::from(n.clone()))
        })
    }

    /// Expanded letters; `None` if longer than `max_len`.
    pub fn letters(&self, max_len: usize) -> Option<Vec<Letter>> {
        let mut out = Vec::new();
        for (l, n) in &self.runs {
            let n = n.to_usize()?;
            if out.len() + n > max_len {
                return None;
            }
            out.extend(std::iter::repeat_n(*l, n));
        }
        Some(out)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, n) in &self.runs {
            let s = match l {
                Letter::R => "R",
                Letter::L => "L",
            };
            if n.is_one() {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{n}")?;
            }
        }
        Ok(())
    }
}

/// One of the six elliptic conjugacy classes, by index into
/// [`EllipticClass::REPRESENTATIVES`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EllipticClass(u8);

impl EllipticClass {
    /// `(a, b, c, d)` of the canonical representatives: `S`, `-S = Φ`, then
    /// the order-3 and order-6 pairs.
    pub const REPRESENTATIVES: [[i64; 4]; 6] = [
        [0, -1, 1, 0],
        [0, 1, -1, 0],
        [0, -1, 1, -1],
        [0, 1, -1, 1],
        [0, -1, 1, 1],
        [0, 1, -1, -1],
    ];

    pub fn new(index: u8) -> Option<Self> {
        (usize::from(index) < Self::REPRESENTATIVES.len()).then_some(EllipticClass(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    fn from_trace_and_lower(trace: i64, lower: Ordering) -> Self {
        let idx = match (trace, lower) {
            (0, Ordering::Greater) => 0,
            (0, _) => 1,
            (-1, Ordering::Greater) => 2,
            (1, Ordering::Less) => 3,
            (1, _) => 4,
            (-1, _) => 5,
            _ => unreachable!("elliptic trace is -1, 0 or 1"),
        };
        EllipticClass(idx)
    }

    pub fn representative(self) -> Sl2Matrix {
        let [a, b, c, d] = Self::REPRESENTATIVES[usize::from(self.0)];
        Sl2Matrix::raw(a.into(), b.into(), c.into(), d.into())
    }

    /// A word in single twists whose product lies in this class.
    pub fn twist_word(self) -> Vec<Twist> {
        use Twist as T;
        match self.0 {
            0 => vec![T::R_INV, T::L, T::R_INV],
            1 => vec![T::R, T::L_INV, T::R],
            2 => vec![T::R_INV, T::L, T::R_INV, T::L],
            3 => vec![T::R, T::L_INV],
            4 => vec![T::R_INV, T::L],
            _ => vec![T::R, T::L_INV, T::R, T::L_INV],
        }
    }
}

/// Canonical SL(2,Z) conjugacy class of a torus monodromy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonodromyClass {
    Central(Sign),
    Elliptic(EllipticClass),
    /// Conjugate to `sign · [[1,twist],[0,1]]`, `twist ≠ 0`.
    Parabolic {
        sign: Sign,
        twist: BigInt,
    },
    /// Conjugate to `sign · word`, `word` a positive R/L word using both letters.
    Hyperbolic {
        sign: Sign,
        word: CyclicWord,
    },
}

impl MonodromyClass {
    pub fn representative(&self) -> Sl2Matrix {
        match self {
            MonodromyClass::Central(s) => s.apply_matrix(Sl2Matrix::identity()),
            MonodromyClass::Elliptic(e) => e.representative(),
            MonodromyClass::Parabolic { sign, twist } => {
                sign.apply_matrix(Sl2Matrix::r_power(twist.clone()))
            }
            MonodromyClass::Hyperbolic { sign, word } => sign.apply_matrix(word.product()),
        }
    }

    pub fn inverse(&self) -> MonodromyClass {
        match self {
            MonodromyClass::Central(_) => self.clone(),
            MonodromyClass::Parabolic { sign, twist } => MonodromyClass::Parabolic {
                sign: *sign,
                twist: -twist,
            },
            _ => classify(&self.representative().inverse()),
        }
    }

    /// Class of a single right-handed twist about a non-separating curve.
    pub fn single_twist() -> MonodromyClass {
        MonodromyClass::Parabolic {
            sign: Sign::Plus,
            twist: BigInt::one(),
        }
    }

    /// Length of the unsigned twist factorization: `|k|` for parabolics,
    /// the R/L word length for hyperbolics, the tabulated word for elliptics.
    pub fn word_length(&self) -> BigUint {
        match self {
            MonodromyClass::Central(_) => BigUint::zero(),
            MonodromyClass::Elliptic(e) => BigUint::from(e.twist_word().len()),
            MonodromyClass::Parabolic { twist, .. } => twist.magnitude().clone(),
            MonodromyClass::Hyperbolic { word, .. } => word.len(),
        }
    }

    /// A word of single twists whose product lies in this class, including
    /// the `Φ²` factor for negative-trace parabolic and hyperbolic classes.
    /// `None` for central classes or when longer than `max_len`.
    pub fn twist_word(&self, max_len: usize) -> Option<Vec<Twist>> {
        let (sign, mut word) = match self {
            MonodromyClass::Central(_) => return None,
            MonodromyClass::Elliptic(e) => (Sign::Plus, e.twist_word()),
            MonodromyClass::Parabolic { sign, twist } => {
                let n = twist.magnitude().to_usize()?;
                if n > max_len {
                    return None;
                }
                let t = if twist.is_positive() {
                    Twist::R
                } else {
                    Twist::R_INV
                };
                (*sign, vec![t; n])
            }
            MonodromyClass::Hyperbolic { sign, word } => {
                let letters = word.letters(max_len)?;
                let w = letters
                    .into_iter()
                    .map(|letter| Twist {
                        letter,
                        inverse: false,
                    })
                    .collect();
                (*sign, w)
            }
        };
        if sign == Sign::Minus {
            let phi = [Twist::R, Twist::L_INV, Twist::R];
            word.extend(phi.iter().chain(phi.iter()));
        }
        (word.len() <= max_len).then_some(word)
    }
}

impl fmt::Display for MonodromyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyClass::Central(s) => write!(f, "Central({s})"),
            MonodromyClass::Elliptic(e) => {
                write!(f, "Elliptic({}:{})", e.index(), e.representative())
            }
            MonodromyClass::Parabolic { sign, twist } => write!(f, "Parabolic({sign},{twist})"),
            MonodromyClass::Hyperbolic { sign, word } => write!(f, "Hyperbolic({sign},{word})"),
        }
    }
}

pub fn classify(m: &Sl2Matrix) -> MonodromyClass {
    let t = m.trace();
    let two = BigInt::from(2);
    if t.magnitude() < two.magnitude() {
        let trace = t.to_i64().expect("|trace| < 2");
        return MonodromyClass::Elliptic(EllipticClass::from_trace_and_lower(
            trace,
            m.c.cmp(&BigInt::zero()),
        ));
    }
    let (sign, pos) = if t.is_negative() {
        (Sign::Minus, -m)
    } else {
        (Sign::Plus, m.clone())
    };
    if pos.is_identity() {
        return MonodromyClass::Central(sign);
    }
    if t.magnitude() == two.magnitude() {
        return MonodromyClass::Parabolic {
            sign,
            twist: parabolic_twist(&pos),
        };
    }
    let reduced = conjugate_to_positive(pos);
    MonodromyClass::Hyperbolic {
        sign,
        word: CyclicWord::from_runs(factor_positive(reduced)),
    }
}

pub fn are_conjugate(a: &Sl2Matrix, b: &Sl2Matrix) -> bool {
    classify(a) == classify(b)
}

/// Length of the unsigned factorization behind [`classify`]; an upper bound
/// on twist length, not a minimum.
pub fn rl_word_length(m: &Sl2Matrix) -> BigUint {
    classify(m).word_length()
}

// For trace 2, `A - I = k·(p,q)ᵀ(-q,p)` with `(p,q)` primitive, so
// `b = k p²`, `c = -k q²` and `|k| = gcd(b, c)`.
fn parabolic_twist(m: &Sl2Matrix) -> BigInt {
    let g = m.b.gcd(&m.c);
    let negative = if m.b.is_zero() {
        m.c.is_positive()
    } else {
        m.b.is_negative()
    };
    if negative {
        -g
    } else {
        g
    }
}

/// Sign of `p + q√d` for `d > 0` not a perfect square.
fn surd_sign(p: &BigInt, q: &BigInt, d: &BigInt) -> Ordering {
    let sp = p.sign();
    let sq = q.sign();
    match (sp, sq) {
        (BigSign::NoSign, _) => sq_ordering(sq),
        (_, BigSign::NoSign) => sq_ordering(sp),
        _ if sp == sq => sq_ordering(sp),
        _ => {
            let lhs = p * p;
            let rhs = q * q * d;
            if lhs > rhs {
                sq_ordering(sp)
            } else {
                sq_ordering(sq)
            }
        }
    }
}

fn sq_ordering(s: BigSign) -> Ordering {
    match s {
        BigSign::Minus => Ordering::Less,
        BigSign::NoSign => Ordering::Equal,
        BigSign::Plus => Ordering::Greater,
    }
}

/// `floor((p + q√d) / r)` for `q, r ≠ 0`, `d > 0` not a perfect square.
fn surd_floor(p: &BigInt, q: &BigInt, d: &BigInt, r: &BigInt) -> BigInt {
    // Fold the sign of q into the denominator, then q²d under one root.
    let (p, r) = if q.is_negative() {
        (-p, -r)
    } else {
        (p.clone(), r.clone())
    };
    let e = q * q * d;
    let s = e.sqrt();
    if r.is_positive() {
        (&p + &s).div_floor(&r)
    } else {
        (-&p - &s - BigInt::one()).div_floor(&-r)
    }
}

/// Conjugate a trace > 2 matrix until its attracting fixed point is positive
/// and its repelling one negative; such a matrix has positive entries.
fn conjugate_to_positive(mut m: Sl2Matrix) -> Sl2Matrix {
    let t = m.trace();
    let disc = &t * &t - BigInt::from(4);
    let one = BigInt::one();
    let s = Sl2Matrix::raw(
        BigInt::zero(),
        -BigInt::one(),
        BigInt::one(),
        BigInt::zero(),
    );
    loop {
        // Fixed points (u ± √disc) / w; c ≠ 0 for hyperbolic matrices.
        let u = &m.a - &m.d;
        let w = BigInt::from(2) * &m.c;
        let w_sign = sq_ordering(w.sign());
        let alpha = surd_sign(&u, &one, &disc);
        let alpha = if w_sign == Ordering::Less {
            alpha.reverse()
        } else {
            alpha
        };
        let beta = surd_sign(&u, &-&one, &disc);
        let beta = if w_sign == Ordering::Less {
            beta.reverse()
        } else {
            beta
        };
        match (alpha, beta) {
            (Ordering::Greater, Ordering::Less) => break,
            (Ordering::Less, _) => m = m.conjugate_by(&s),
            _ => {
                let above_one = surd_sign(&(&u - &w), &one, &disc);
                let above_one = if w_sign == Ordering::Less {
                    above_one.reverse()
                } else {
                    above_one
                };
                if above_one == Ordering::Greater {
                    let q = surd_floor(&u, &one, &disc, &w);
                    m = m.conjugate_by(&Sl2Matrix::r_power(q));
                } else {
                    // 1/α = w (u - √disc) / (u² - disc)
                    let den = &u * &u - &disc;
                    let q = surd_floor(&(&w * &u), &-&w, &disc, &den);
                    m = m.conjugate_by(&Sl2Matrix::l_power(q));
                }
            }
        }
    }
    debug_assert!(m.entries().iter().all(|x| !x.is_negative()));
    m
}

/// Factor a non-negative SL(2,Z) matrix as a positive R/L word, greedily
/// peeling maximal runs from the left.
fn factor_positive(mut m: Sl2Matrix) -> Vec<(Letter, BigUint)> {
    let mut runs: Vec<(Letter, BigUint)> = Vec::new();
    while !m.is_identity() {
        let top = m.a >= m.c && m.b >= m.d;
        let (letter, q) = if top {
            (Letter::R, run_quotient(&m.a, &m.c, &m.b, &m.d))
        } else {
            (Letter::L, run_quotient(&m.c, &m.a, &m.d, &m.b))
        };
        m = &letter.power(-&q) * &m;
        let q = q.to_biguint().expect("positive run");
        match runs.last_mut() {
            Some((l, n)) if *l == letter => *n += q,
            _ => runs.push((letter, q)),
        }
    }
    runs
}

// Largest q with x0 - q·y0 ≥ 0 and x1 - q·y1 ≥ 0.
fn run_quotient(x0: &BigInt, y0: &BigInt, x1: &BigInt, y1: &BigInt) -> BigInt {
    match (y0.is_zero(), y1.is_zero()) {
        (true, true) => unreachable!("determinant one"),
        (true, false) => x1 / y1,
        (false, true) => x0 / y0,
        (false, false) => (x0 / y0).min(x1 / y1),
    }
}

/// H1 action of the Core identification `(x,y) ↦ (y, x̄)` on the boundary
/// torus: reverse the circle factor (`e₂ ↦ -e₂`), then interchange.
pub fn induced_core_monodromy() -> Result<Sl2Matrix, Sl2Error> {
    let reverse = [[1i64, 0], [0, -1]];
    let interchange = [[0i64, 1], [1, 0]];
    let mut h = [[0i64; 2]; 2];
    for (i, row) in h.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (0..2).map(|k| interchange[i][k] * reverse[k][j]).sum();
        }
    }
    let m = Sl2Matrix::new(h[0][0], h[0][1], h[1][0], h[1][1])?;
    let target = classify(&m);
    if target == classify(&phi()) || target == classify(&phi().inverse()) {
        Ok(m)
    } else {
        Err(Sl2Error::CoreMonodromyMismatch(Box::new(m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Sl2Matrix {
        Sl2Matrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(
            Sl2Matrix::new(2, 0, 0, 1),
            Err(Sl2Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(multiply(&m(1, 1, 0, 1), &m(1, 0, -1, 1)), m(0, 1, -1, 1));
        let a = m(3, 2, 1, 1);
        assert_eq!(multiply(&Sl2Matrix::identity(), &a), a);
        assert_eq!(multiply(&phi(), &phi()), m(-1, 0, 0, -1));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&phi()), m(0, -1, 1, 0));
        assert_eq!(invert(&Sl2Matrix::identity()), Sl2Matrix::identity());
        assert_eq!(invert(&m(1, 1, 0, 1)), m(1, -1, 0, 1));
    }

    #[test]
    fn generators_as_printed() {
        assert_eq!(twist_a(), m(1, 1, 0, 1));
        assert_eq!(twist_b(), m(1, 0, -1, 1));
        assert_eq!(phi(), m(0, 1, -1, 0));
    }

    #[test]
    fn phi_decomposition() {
        assert!(verify_phi_decomposition());
        assert!(!is_phi_decomposition(
            &twist_a(),
            &twist_b().inverse(),
            &twist_a()
        ));
        let i = Sl2Matrix::identity();
        assert!(!is_phi_decomposition(&i, &i, &i));
        assert!(phi().pow(4).is_identity());
        assert_eq!(phi().trace(), BigInt::zero());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&twist_a()), MonodromyClass::single_twist());
        assert_eq!(classify(&twist_b()), MonodromyClass::single_twist());
        match classify(&m(2, 1, 1, 1)) {
            MonodromyClass::Hyperbolic { sign, word } => {
                assert_eq!(sign, Sign::Plus);
                assert_eq!(word.to_string(), "RL");
            }
            other => panic!("expected hyperbolic, got {other}"),
        }
        assert_eq!(
            classify(&-Sl2Matrix::identity()),
            MonodromyClass::Central(Sign::Minus)
        );
    }

    #[test]
    fn conjugacy_examples() {
        assert!(are_conjugate(&twist_a(), &twist_b()));
        assert!(!are_conjugate(&twist_a(), &twist_a().inverse()));
        assert!(are_conjugate(&phi(), &phi()));
        assert!(!are_conjugate(&phi(), &phi().inverse()));
    }

    #[test]
    fn word_length_examples() {
        assert_eq!(rl_word_length(&Sl2Matrix::identity()), BigUint::zero());
        assert_eq!(rl_word_length(&twist_a()), BigUint::one());
        assert_eq!(rl_word_length(&m(2, 1, 1, 1)), BigUint::from(2u8));
    }

    #[test]
    fn core_monodromy() {
        let got = induced_core_monodromy().unwrap();
        assert_eq!(got, m(0, -1, 1, 0));
        assert!(are_conjugate(&got, &phi()) || are_conjugate(&got, &phi().inverse()));
        assert!(got.pow(4).is_identity());
    }

    #[test]
    fn elliptic_words_land_in_their_class() {
        for i in 0..6 {
            let e = EllipticClass::new(i).unwrap();
            assert_eq!(
                classify(&twist_product(&e.twist_word())),
                MonodromyClass::Elliptic(e),
                "index {i}"
            );
            assert_eq!(classify(&e.representative()), MonodromyClass::Elliptic(e));
        }
    }

    #[test]
    fn twist_words_multiply_into_class() {
        let samples = [
            m(2, 1, 1, 1),
            m(-2, -1, -1, -1),
            m(-1, 3, 0, -1),
            m(5, 7, 2, 3),
            m(1, -4, 0, 1),
            phi(),
        ];
        for s in samples {
            let class = classify(&s);
            let word = class.twist_word(64).unwrap();
            assert_eq!(classify(&twist_product(&word)), class, "{s}");
        }
    }

    #[test]
    fn hyperbolic_rotation_is_least() {
        // LRR and RRL are rotations of RLR; the canonical one is RRL.
        let w = m(1, 1, 0, 1) * m(1, 0, 1, 1) * m(1, 1, 0, 1);
        match classify(&w) {
            MonodromyClass::Hyperbolic { word, .. } => assert_eq!(word.to_string(), "R^2L"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn large_entries_do_not_overflow() {
        let big = Sl2Matrix::r_power(BigInt::from(10).pow(30)) * Sl2Matrix::l_power(7);
        let class = classify(&big);
        assert_eq!(
            class.word_length(),
            BigUint::from(10u8).pow(30) + BigUint::from(7u8)
        );
        assert_eq!(classify(&class.representative()), class);
    }

    #[test]
    fn inverse_class() {
        for s in [twist_a(), phi(), m(2, 1, 1, 1), m(0, 1, -1, 1)] {
            assert_eq!(classify(&s).inverse(), classify(&s.inverse()));
        }
    }
}
