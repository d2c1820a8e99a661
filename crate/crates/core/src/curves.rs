//! The seven-curve lantern configuration on a genus-3 surface.
//!
//! Intersection numbers are transcribed data, not computed from an
//! embedding. Curves are numbered from 1 (`C₁ … C₇`).

use std::fmt;

use thiserror::Error;

use crate::mcg::HomologyClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("expected {expected} rows/entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("nonzero self-intersection for curve C{0}")]
    DiagonalNonZero(usize),
    #[error("geometric intersections not symmetric at (C{0}, C{1})")]
    GeometricAsymmetric(usize, usize),
    #[error("algebraic intersections not antisymmetric at (C{0}, C{1})")]
    AlgebraicNotAntisymmetric(usize, usize),
    #[error("|algebraic| exceeds geometric intersection at (C{0}, C{1})")]
    AlgebraicExceedsGeometric(usize, usize),
    #[error("algebraic intersection at (C{0}, C{1}) disagrees with the homology pairing")]
    PairingMismatch(usize, usize),
    #[error("homology class of C{index} has dimension {found}, expected {expected}")]
    ClassDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("no curve C{0}")]
    InvalidCurve(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSystem {
    genus: usize,
    names: Vec<String>,
    h1_classes: Vec<HomologyClass>,
    geom: Vec<Vec<u32>>,
    alg: Vec<Vec<i64>>,
}

impl CurveSystem {
    pub fn new(
        genus: usize,
        names: Vec<String>,
        h1_classes: Vec<HomologyClass>,
        geom: Vec<Vec<u32>>,
        alg: Vec<Vec<i64>>,
    ) -> Result<Self, CurveError> {
        let m = names.len();
        for len in [h1_classes.len(), geom.len(), alg.len()] {
            if len != m {
                return Err(CurveError::Shape {
                    expected: m,
                    found: len,
                });
            }
        }
        for row in geom.iter().map(Vec::len).chain(alg.iter().map(Vec::len)) {
            if row != m {
                return Err(CurveError::Shape {
                    expected: m,
                    found: row,
                });
            }
        }
        for (i, c) in h1_classes.iter().enumerate() {
            if c.dim() != 2 * genus {
                return Err(CurveError::ClassDimension {
                    index: i + 1,
                    expected: 2 * genus,
                    found: c.dim(),
                });
            }
        }
        for i in 0..m {
            if geom[i][i] != 0 || alg[i][i] != 0 {
                return Err(CurveError::DiagonalNonZero(i + 1));
            }
            for j in 0..m {
                if geom[i][j] != geom[j][i] {
                    return Err(CurveError::GeometricAsymmetric(i + 1, j + 1));
                }
                if alg[i][j] != -alg[j][i] {
                    return Err(CurveError::AlgebraicNotAntisymmetric(i + 1, j + 1));
                }
                if alg[i][j].unsigned_abs() > u64::from(geom[i][j]) {
                    return Err(CurveError::AlgebraicExceedsGeometric(i + 1, j + 1));
                }
                if alg[i][j] != h1_classes[i].pairing(&h1_classes[j]) {
                    return Err(CurveError::PairingMismatch(i + 1, j + 1));
                }
            }
        }
        Ok(CurveSystem {
            genus,
            names,
            h1_classes,
            geom,
            alg,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn h1_classes(&self) -> &[HomologyClass] {
        &self.h1_classes
    }

    fn index(&self, curve: usize) -> Result<usize, CurveError> {
        if curve == 0 || curve > self.len() {
            Err(CurveError::InvalidCurve(curve))
        } else {
            Ok(curve - 1)
        }
    }

    pub fn class(&self, curve: usize) -> Result<&HomologyClass, CurveError> {
        Ok(&self.h1_classes[self.index(curve)?])
    }

    pub fn geometric(&self, i: usize, j: usize) -> Result<u32, CurveError> {
        Ok(self.geom[self.index(i)?][self.index(j)?])
    }

    pub fn algebraic(&self, i: usize, j: usize) -> Result<i64, CurveError> {
        Ok(self.alg[self.index(i)?][self.index(j)?])
    }

    /// Replace the class of one curve, recomputing its algebraic row.
    pub fn with_class(&self, curve: usize, class: HomologyClass) -> Result<Self, CurveError> {
        let k = self.index(curve)?;
        let mut classes = self.h1_classes.clone();
        classes[k] = class;
        let mut alg = self.alg.clone();
        for j in 0..self.len() {
            if classes[j].dim() == classes[k].dim() {
                alg[k][j] = classes[k].pairing(&classes[j]);
                alg[j][k] = -alg[k][j];
            }
        }
        CurveSystem::new(
            self.genus,
            self.names.clone(),
            classes,
            self.geom.clone(),
            alg,
        )
    }
}

/// C₁, C₂, C₃ are the boundary curves around three punctures, C₄ the outer
/// boundary, and C₅, C₆, C₇ enclose the puncture pairs (1,2), (2,3), (1,3).
pub fn lantern_curve_system() -> CurveSystem {
    const G: usize = 3;
    let a = |i| HomologyClass::a(i, G);
    let classes = vec![
        a(1),
        a(2),
        a(3),
        &(&a(1) + &a(2)) + &a(3),
        &a(1) + &a(2),
        &a(2) + &a(3),
        &a(1) + &a(3),
    ];
    let mut geom = vec![vec![0u32; 7]; 7];
    for (i, j) in [(4, 5), (5, 6), (4, 6)] {
        geom[i][j] = 2;
        geom[j][i] = 2;
    }
    let alg = vec![vec![0i64; 7]; 7];
    let names = (1..=7).map(|i| format!("C{i}")).collect();
    CurveSystem::new(G, names, classes, geom, alg).expect("lantern data is consistent")
}

/// Whether twists along every curve in `prefix` fix the curve `target`
/// pointwise, modelled as disjointness of supports.
pub fn composite_fixes_support(
    prefix: &[usize],
    target: usize,
    cs: &CurveSystem,
) -> Result<bool, CurveError> {
    let t = cs.index(target)?;
    let mut fixes = true;
    for &p in prefix {
        let p = cs.index(p)?;
        fixes &= cs.geom[p][t] == 0;
    }
    Ok(fixes)
}

impl fmt::Display for CurveSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "curve  class           geometric / algebraic intersections"
        )?;
        for i in 0..self.len() {
            let cells: Vec<String> = (0..self.len())
                .map(|j| format!("{}/{}", self.geom[i][j], self.alg[i][j]))
                .collect();
            writeln!(
                f,
                "{:<6} {:<15} {}",
                self.names[i],
                self.h1_classes[i].to_string(),
                cells.join(" ")
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lantern_data() {
        let cs = lantern_curve_system();
        assert_eq!(cs.geometric(6, 7).unwrap(), 2);
        assert_eq!(cs.algebraic(6, 7).unwrap(), 0);
        assert_eq!(cs.geometric(1, 5).unwrap(), 0);
        let classes = cs.h1_classes();
        for (i, c) in classes.iter().enumerate() {
            assert!(!c.is_zero());
            for d in &classes[i + 1..] {
                assert_ne!(c, d);
            }
        }
        for i in 1..=7 {
            for j in 1..=7 {
                assert_eq!(
                    cs.algebraic(i, j).unwrap(),
                    cs.class(i).unwrap().pairing(cs.class(j).unwrap())
                );
            }
        }
    }

    #[test]
    fn support_examples() {
        let cs = lantern_curve_system();
        assert!(composite_fixes_support(&[1], 2, &cs).unwrap());
        assert!(composite_fixes_support(&[1, 2, 3, 4], 5, &cs).unwrap());
        assert!(!composite_fixes_support(&[6], 7, &cs).unwrap());
        assert!(composite_fixes_support(&[], 7, &cs).unwrap());
        assert_eq!(
            composite_fixes_support(&[8], 1, &cs),
            Err(CurveError::InvalidCurve(8))
        );
        assert_eq!(
            composite_fixes_support(&[1], 0, &cs),
            Err(CurveError::InvalidCurve(0))
        );
    }

    #[test]
    fn rejects_inconsistent_tables() {
        let cs = lantern_curve_system();
        let mut alg = cs.alg.clone();
        alg[0][1] = 1;
        alg[1][0] = -1;
        assert_eq!(
            CurveSystem::new(
                3,
                cs.names.clone(),
                cs.h1_classes.clone(),
                cs.geom.clone(),
                alg
            ),
            Err(CurveError::AlgebraicExceedsGeometric(1, 2))
        );
        let mut geom = cs.geom.clone();
        geom[0][1] = 1;
        assert_eq!(
            CurveSystem::new(
                3,
                cs.names.clone(),
                cs.h1_classes.clone(),
                geom,
                cs.alg.clone()
            ),
            Err(CurveError::GeometricAsymmetric(1, 2))
        );
        // b₁ pairs with a₁, but the table records zero.
        assert_eq!(
            cs.with_class(2, HomologyClass::b(1, 3)),
            Err(CurveError::AlgebraicExceedsGeometric(1, 2))
        );
    }

    #[test]
    fn table_lists_every_curve() {
        let s = lantern_curve_system().to_string();
        assert_eq!(s.lines().count(), 8);
        assert!(s.contains("a1+a2+a3"));
    }
}
