//! Symbolic assembly of aspherical 4-manifolds from boundary-glued blocks.
//!
//! Building blocks (Core, Splitter, Connector, Cap, SixCap, surface-bundle
//! pieces) carry their Euler characteristic, a claimed signature and a list
//! of labelled boundary components. Blocks are glued in an
//! [`AssemblyGraph`](blocks::AssemblyGraph) only when the boundary labels are
//! orientation-compatible, and [`verify`](blocks::verify) re-checks every
//! gluing together with the Euler/signature ledgers and the relation
//! certificates the construction depends on.
//!
//! * [`sl2z`]: exact SL(2,Z) arithmetic and conjugacy normal forms.
//! * [`mcg`]: free-group automorphisms (Artin action) and symplectic
//!   transvections, used to certify the lantern relation.
//! * [`curves`]: the lantern curve configuration and support disjointness.
//! * [`blocks`]: block inventory, boundary labels, assemblies, verification.
//! * [`synthesis`]: assemblies for every odd χ ≥ 13, the (χ, σ) family, the
//!   Cap plan and Euler bounds for torus bundles.
//! * [`format`] and [`report`]: the JSON interchange file, DOT export and
//!   text reports.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

pub mod blocks;
pub mod curves;
pub mod format;
pub mod mcg;
pub mod report;
pub mod sl2z;
pub mod synthesis;

pub use blocks::{
    labels_glueable, verify, AssemblyError, AssemblyGraph, Block, BlockKind, BoundaryLabel,
    Monodromy, SlotRef, VerificationReport,
};
pub use curves::{lantern_curve_system, CurveSystem};
pub use sl2z::{are_conjugate, classify, MonodromyClass, Sl2Matrix};
pub use synthesis::{build_cap_plan, euler_bound, synthesize_chi, synthesize_chi_sigma};

/// An orientation sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn apply_matrix(self, m: Sl2Matrix) -> Sl2Matrix {
        match self {
            Sign::Plus => m,
            Sign::Minus => -m,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}
