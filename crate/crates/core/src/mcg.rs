//! Exact checks of the mapping-class relations used by the Cap construction.
//!
//! The lantern relation is certified at two independent levels:
//!
//! * in the punctured-disk quotient, where twists act on `π₁ = F₃` through
//!   the Artin representation and words are compared after free reduction;
//! * on `H₁(Σ₃)`, where each twist acts as the transvection
//!   `x ↦ x + ⟨x,c⟩c` and products are compared as integer matrices.
//!
//! Symplectic basis order is `a₁, b₁, …, a_g, b_g` with `⟨aᵢ,bᵢ⟩ = +1`.

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::curves::CurveSystem;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McgError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("generator x{generator} out of range for rank {rank}")]
    GeneratorOutOfRange { generator: usize, rank: usize },
    #[error("Artin generator σ{index} needs 1 ≤ index < rank {rank}")]
    ArtinIndex { index: usize, rank: usize },
    #[error("homology class has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("supplied inverse does not invert the automorphism")]
    NotInvertible,
}

/// `x_generator^{±1}`, generators numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FreeLetter {
    pub generator: usize,
    pub inverse: bool,
}

impl FreeLetter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        FreeLetter {
            generator,
            inverse: exponent < 0,
        }
    }

    pub fn inv(self) -> Self {
        FreeLetter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in a free group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    letters: Vec<FreeLetter>,
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce(letters: impl IntoIterator<Item = FreeLetter>) -> FreeWord {
    let mut out: Vec<FreeLetter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    FreeWord { letters: out }
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord::default()
    }

    pub fn generator(i: usize) -> Self {
        FreeWord {
            letters: vec![FreeLetter::new(i, 1)],
        }
    }

    /// Build from `(generator, ±1)` pairs, reducing.
    pub fn from_pairs(pairs: &[(usize, i8)]) -> Self {
        reduce(pairs.iter().map(|&(g, e)| FreeLetter::new(g, e)))
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        reduce(self.letters.iter().chain(rhs.letters.iter()).copied())
    }
}

impl Mul for FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: FreeWord) -> FreeWord {
        &self * &rhs
    }
}

impl FreeWord {
    /// Render with a custom generator symbol, e.g. `phi2 phi1^-1`.
    pub fn render(&self, symbol: &str) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                let inv = if l.inverse { "^-1" } else { "" };
                format!("{symbol}{}{inv}", l.generator)
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

/// An automorphism of the free group of rank `n`, given by generator images
/// together with the images of its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAutomorphism {
    rank: usize,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    pub fn new(
        rank: usize,
        images: Vec<FreeWord>,
        inverse_images: Vec<FreeWord>,
    ) -> Result<Self, McgError> {
        for w in images.iter().chain(inverse_images.iter()) {
            if w.max_generator() > rank {
                return Err(McgError::GeneratorOutOfRange {
                    generator: w.max_generator(),
                    rank,
                });
            }
        }
        if images.len() != rank || inverse_images.len() != rank {
            return Err(McgError::RankMismatch {
                left: rank,
                right: images.len().min(inverse_images.len()),
            });
        }
        let f = FreeAutomorphism {
            rank,
            images,
            inverse_images,
        };
        let id = FreeAutomorphism::identity(rank);
        if f.compose(&f.inverse())? != id || f.inverse().compose(&f)? != id {
            return Err(McgError::NotInvertible);
        }
        Ok(f)
    }

    pub fn identity(rank: usize) -> Self {
        let gens: Vec<FreeWord> = (1..=rank).map(FreeWord::generator).collect();
        FreeAutomorphism {
            rank,
            images: gens.clone(),
            inverse_images: gens,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn image(&self, generator: usize) -> Option<&FreeWord> {
        self.images.get(generator.checked_sub(1)?)
    }

    pub fn inverse(&self) -> Self {
        FreeAutomorphism {
            rank: self.rank,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord, McgError> {
        substitute(&self.images, self.rank, w)
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &FreeAutomorphism) -> Result<FreeAutomorphism, McgError> {
        if self.rank != other.rank {
            return Err(McgError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<_, _>>()?;
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|w| substitute(&other.inverse_images, other.rank, w))
            .collect::<Result<_, _>>()?;
        Ok(FreeAutomorphism {
            rank: self.rank,
            images,
            inverse_images,
        })
    }

    pub fn pow(&self, exp: i32) -> FreeAutomorphism {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        (0..exp.unsigned_abs()).fold(FreeAutomorphism::identity(self.rank), |acc, _| {
            acc.compose(&base).expect("same rank")
        })
    }
}

fn substitute(images: &[FreeWord], rank: usize, w: &FreeWord) -> Result<FreeWord, McgError> {
    let mut out = Vec::new();
    for l in w.letters() {
        let img = images
            .get(l.generator.wrapping_sub(1))
            .ok_or(McgError::GeneratorOutOfRange {
                generator: l.generator,
                rank,
            })?;
        if l.inverse {
            out.extend(img.inverse().letters.iter().copied());
        } else {
            out.extend(img.letters.iter().copied());
        }
    }
    Ok(reduce(out))
}

/// Artin generator `σᵢ` on `F_n`: `xᵢ ↦ xᵢ x_{i+1} xᵢ⁻¹`, `x_{i+1} ↦ xᵢ`.
pub fn artin_generator(i: usize, n: usize) -> Result<FreeAutomorphism, McgError> {
    if i == 0 || i >= n {
        return Err(McgError::ArtinIndex { index: i, rank: n });
    }
    let mut images: Vec<FreeWord> = (1..=n).map(FreeWord::generator).collect();
    let mut inverse_images = images.clone();
    images[i - 1] = FreeWord::from_pairs(&[(i, 1), (i + 1, 1), (i, -1)]);
    images[i] = FreeWord::generator(i);
    inverse_images[i - 1] = FreeWord::generator(i + 1);
    inverse_images[i] = FreeWord::from_pairs(&[(i + 1, -1), (i, 1), (i + 1, 1)]);
    Ok(FreeAutomorphism {
        rank: n,
        images,
        inverse_images,
    })
}

/// The boundary word `x₁ x₂ ⋯ x_n`.
pub fn boundary_word(n: usize) -> FreeWord {
    reduce((1..=n).map(|g| FreeLetter::new(g, 1)))
}

/// Compose a braid word given as signed Artin indices (`-2` is `σ₂⁻¹`),
/// written left to right as a product.
pub fn braid(word: &[i32], n: usize) -> Result<FreeAutomorphism, McgError> {
    word.iter()
        .try_fold(FreeAutomorphism::identity(n), |acc, &s| {
            let g = artin_generator(s.unsigned_abs() as usize, n)?;
            acc.compose(&if s < 0 { g.inverse() } else { g })
        })
}

/// Full twist `Δ² = (σ₁σ₂)³` on `F₃`.
pub fn full_twist() -> FreeAutomorphism {
    braid(&[1, 2, 1, 2, 1, 2], 3).expect("rank 3")
}

/// The lantern relation in the punctured-disk quotient: the boundary twists
/// τ_{C₁..C₃} act trivially on π₁, τ_{C₄} is the full twist, and
/// τ_{C₅} = σ₁², τ_{C₆} = σ₂², τ_{C₇} = σ₁σ₂²σ₁⁻¹.
pub fn verify_braid_lantern() -> bool {
    let rhs = braid(&[1, 2, 2, -1, 1, 1, 2, 2], 3).expect("rank 3");
    full_twist() == rhs
}

/// An integral homology class in the symplectic basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass(pub Vec<i64>);

impl HomologyClass {
    pub fn zero(genus: usize) -> Self {
        HomologyClass(vec![0; 2 * genus])
    }

    /// `a_i` (1-based).
    pub fn a(i: usize, genus: usize) -> Self {
        let mut v = vec![0; 2 * genus];
        v[2 * (i - 1)] = 1;
        HomologyClass(v)
    }

    /// `b_i` (1-based).
    pub fn b(i: usize, genus: usize) -> Self {
        let mut v = vec![0; 2 * genus];
        v[2 * (i - 1) + 1] = 1;
        HomologyClass(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Symplectic pairing; panics on dimension mismatch.
    pub fn pairing(&self, other: &HomologyClass) -> i64 {
        assert_eq!(self.dim(), other.dim(), "pairing dimension mismatch");
        self.0
            .chunks(2)
            .zip(other.0.chunks(2))
            .map(|(x, y)| x[0] * y[1] - x[1] * y[0])
            .sum()
    }
}

impl std::ops::Add for &HomologyClass {
    type Output = HomologyClass;

    fn add(self, rhs: &HomologyClass) -> HomologyClass {
        HomologyClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &x) in self.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let name = format!("{}{}", if i % 2 == 0 { 'a' } else { 'b' }, i / 2 + 1);
            terms.push(match x {
                1 => name,
                -1 => format!("-{name}"),
                _ => format!("{x}{name}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+").replace("+-", "-"))
        }
    }
}

/// A `2g × 2g` integer matrix acting on column vectors of homology.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    genus: usize,
    entries: Vec<i64>,
}

impl SymplecticMatrix {
    pub fn identity(genus: usize) -> Self {
        let n = 2 * genus;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        SymplecticMatrix { genus, entries }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim() + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.dim())
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn apply(&self, x: &HomologyClass) -> HomologyClass {
        let n = self.dim();
        HomologyClass(
            (0..n)
                .map(|i| (0..n).map(|j| self.get(i, j) * x.0[j]).sum())
                .collect(),
        )
    }

    /// `MᵀJM = J`.
    pub fn is_symplectic(&self) -> bool {
        let n = self.dim();
        let cols: Vec<HomologyClass> = (0..n)
            .map(|j| HomologyClass((0..n).map(|i| self.get(i, j)).collect()))
            .collect();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let e_i = basis(n, i);
                let e_j = basis(n, j);
                cols[i].pairing(&cols[j]) == e_i.pairing(&e_j)
            })
        })
    }

    /// `(M - I)² = 0`.
    pub fn is_unipotent_of_step_two(&self) -> bool {
        let n = self.dim();
        let mut n_minus = self.clone();
        for i in 0..n {
            n_minus.entries[i * n + i] -= 1;
        }
        (&n_minus * &n_minus).entries.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == SymplecticMatrix::identity(self.genus)
    }
}

fn basis(n: usize, i: usize) -> HomologyClass {
    let mut v = vec![0; n];
    v[i] = 1;
    HomologyClass(v)
}

impl Mul for &SymplecticMatrix {
    type Output = SymplecticMatrix;

    fn mul(self, rhs: &SymplecticMatrix) -> SymplecticMatrix {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        let n = self.dim();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += x * rhs.get(k, j);
                }
            }
        }
        SymplecticMatrix {
            genus: self.genus,
            entries,
        }
    }
}

/// `x ↦ x + s·⟨x,c⟩c` for `s = ±1`.
fn signed_transvection(
    c: &HomologyClass,
    genus: usize,
    s: i64,
) -> Result<SymplecticMatrix, McgError> {
    let n = 2 * genus;
    if c.dim() != n {
        return Err(McgError::DimensionMismatch {
            expected: n,
            found: c.dim(),
        });
    }
    let mut m = SymplecticMatrix::identity(genus);
    for j in 0..n {
        let p = basis(n, j).pairing(c);
        if p == 0 {
            continue;
        }
        for i in 0..n {
            m.entries[i * n + j] += s * p * c.0[i];
        }
    }
    Ok(m)
}

/// H1 action of the Dehn twist about a curve of class `c`: `x ↦ x + ⟨x,c⟩c`.
pub fn transvection(c: &HomologyClass, genus: usize) -> Result<SymplecticMatrix, McgError> {
    signed_transvection(c, genus, 1)
}

pub fn transvection_inverse(c: &HomologyClass, genus: usize) -> Result<SymplecticMatrix, McgError> {
    signed_transvection(c, genus, -1)
}

/// Product of twists written left to right; `(index, inverse)` pairs index
/// into `classes` from 1.
pub fn twist_product(
    classes: &[HomologyClass],
    genus: usize,
    factors: &[(usize, bool)],
) -> Result<SymplecticMatrix, McgError> {
    factors
        .iter()
        .try_fold(SymplecticMatrix::identity(genus), |acc, &(i, inv)| {
            let c = classes
                .get(i.wrapping_sub(1))
                .ok_or(McgError::GeneratorOutOfRange {
                    generator: i,
                    rank: classes.len(),
                })?;
            let t = signed_transvection(c, genus, if inv { -1 } else { 1 })?;
            Ok(&acc * &t)
        })
}

/// `T₄T₃T₂T₁ = T₇T₆T₅` on `H₁(Σ_g)`.
pub fn verify_h1_lantern(cs: &CurveSystem) -> bool {
    let classes = cs.h1_classes();
    if classes.len() != 7 {
        return false;
    }
    let g = cs.genus();
    let lhs = twist_product(
        classes,
        g,
        &[(4, false), (3, false), (2, false), (1, false)],
    );
    let rhs = twist_product(classes, g, &[(7, false), (6, false), (5, false)]);
    matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
}

/// `T₇⁻¹T₆⁻¹T₅⁻¹T₄T₃T₂T₁ = I` on `H₁(Σ_g)`.
pub fn verify_seven_twist_identity(cs: &CurveSystem) -> bool {
    let classes = cs.h1_classes();
    if classes.len() != 7 {
        return false;
    }
    let factors = [
        (7, true),
        (6, true),
        (5, true),
        (4, false),
        (3, false),
        (2, false),
        (1, false),
    ];
    twist_product(classes, cs.genus(), &factors).is_ok_and(|m| m.is_identity())
}
