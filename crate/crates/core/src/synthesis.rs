//! Assemblies realizing given Euler characteristics, the Cap plan, and
//! upper bounds on the Euler invariant of torus bundles.
//!
//! # Wiring of `synthesize_chi(13 + 2k)`
//!
//! `P₀ … P_k` are Core+Splitter units in the stated orientation and
//! `N₁ … N_k` the same units reversed. Each `N_i` sits between `P_{i-1}` and
//! `P_i` with two Connectors `L_i`, `R_i` (ψ = τ):
//!
//! ```text
//! P_{i-1}.τ ── L_i.0      L_i.2 ── N_i.1      L_i.1 ── R_i.3
//! P_i.τ     ── R_i.0      R_i.2 ── N_i.2      L_i.3 ── R_i.1
//! P_i.τ     ── N_i.3
//! ```
//!
//! Exactly three τ slots stay open (two on `P₀`, one on `P_k`) and are
//! closed by reversed Caps.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::blocks::{
    cap, connector, core, disk_bundle, genus_three_bundle, six_cap, splitter, surface_bundle_chi,
    twist_cobordism, AssemblyGraph, BlockKind, BoundaryLabel, Monodromy, SlotRef,
};
use crate::curves::{composite_fixes_support, lantern_curve_system, CurveError, CurveSystem};
use crate::mcg::{twist_product, FreeWord, HomologyClass};
use crate::sl2z::{classify, phi, twist_a, MonodromyClass, Sl2Matrix, Twist};
use crate::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthesisError {
    #[error("even targets not realized by this construction (chi = {0}; chi must be odd and at least 13)")]
    EvenTarget(i64),
    #[error("chi = {0} is below 13; this construction realizes odd chi ≥ 13 only")]
    TargetBelow13(i64),
    #[error("sigma and m must be non-negative (got s = {s}, m = {m})")]
    NegativeInput { s: i64, m: i64 },
    #[error("Euler bounds need a torus label, got fiber genus {0}")]
    NotTorus(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CapPlanError {
    #[error(transparent)]
    Curves(#[from] CurveError),
    #[error("torus trick on {piece} expected but support of C{target} is not fixed")]
    SupportNotFixed { piece: String, target: usize },
    #[error("piece {0} does not close up: gamma·beta·alpha is not trivial")]
    PieceNotClosed(String),
    #[error("pieces {0} and {1} do not match along their common boundary")]
    BoundaryMismatch(String, String),
}

fn assembly_error(e: crate::blocks::AssemblyError) -> ! {
    panic!("synthesis produced an illegal gluing: {e}")
}

fn glue(g: &mut AssemblyGraph, a: SlotRef, b: SlotRef) {
    g.add_gluing(a, b).unwrap_or_else(|e| assembly_error(e))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlockCounts {
    pub cores: usize,
    pub reversed_cores: usize,
    pub splitters: usize,
    pub connectors: usize,
    pub caps: usize,
    pub six_caps: usize,
}

impl BlockCounts {
    pub fn of(g: &AssemblyGraph) -> Self {
        BlockCounts {
            cores: g.count_kind(|k| matches!(k, BlockKind::Core), Some(Sign::Plus)),
            reversed_cores: g.count_kind(|k| matches!(k, BlockKind::Core), Some(Sign::Minus)),
            splitters: g.count_kind(|k| matches!(k, BlockKind::Splitter), None),
            connectors: g.count_kind(|k| matches!(k, BlockKind::Connector(_)), None),
            caps: g.count_kind(|k| matches!(k, BlockKind::Cap), None),
            six_caps: g.count_kind(|k| matches!(k, BlockKind::SixCap), None),
        }
    }
}

impl fmt::Display for BlockCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} Core, {} reversed Core, {} Splitter, {} Connector, {} Cap",
            self.cores, self.reversed_cores, self.splitters, self.connectors, self.caps
        )?;
        if self.six_caps > 0 {
            write!(f, ", {} SixCap", self.six_caps)?;
        }
        Ok(())
    }
}

/// Targets and expected block counts for a synthesized assembly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SynthesisRecipe {
    pub chi: i64,
    pub sigma: Option<i64>,
    pub counts: BlockCounts,
}

impl SynthesisRecipe {
    /// `k+1` Cores, `k` reversed Cores, `2k+1` Splitters, `2k` Connectors and
    /// 3 Caps for `n = 13 + 2k`.
    pub fn for_chi(n: i64) -> Result<Self, SynthesisError> {
        if n.rem_euclid(2) == 0 {
            return Err(SynthesisError::EvenTarget(n));
        }
        if n < 13 {
            return Err(SynthesisError::TargetBelow13(n));
        }
        let k = ((n - 13) / 2) as usize;
        Ok(SynthesisRecipe {
            chi: n,
            sigma: None,
            counts: BlockCounts {
                cores: k + 1,
                reversed_cores: k,
                splitters: 2 * k + 1,
                connectors: 2 * k,
                caps: 3,
                six_caps: 0,
            },
        })
    }

    /// `s + 2m` Core+Splitter units, `s + 2m - 1` Connectors, `3s` Caps and
    /// `m` SixCaps, all reversed at the end.
    pub fn for_chi_sigma(s: i64, m: i64) -> Result<Self, SynthesisError> {
        if s < 0 || m < 0 {
            return Err(SynthesisError::NegativeInput { s, m });
        }
        let units = (s + 2 * m) as usize;
        Ok(SynthesisRecipe {
            chi: 13 * s + 2 * m,
            sigma: Some(s),
            counts: BlockCounts {
                cores: 0,
                reversed_cores: units,
                splitters: units,
                connectors: units.saturating_sub(1),
                caps: 3 * s as usize,
                six_caps: m as usize,
            },
        })
    }
}

/// Core glued to a Splitter; returns (core, splitter) instance indices.
fn add_unit(g: &mut AssemblyGraph, orientation: Sign) -> (usize, usize) {
    let c = g.add_instance(core(), orientation);
    let s = g.add_instance(splitter(), orientation);
    glue(g, SlotRef::new(c, 0), SlotRef::new(s, 0));
    (c, s)
}

/// Hands out the τ slots of a unit's Splitter in order.
struct TauSlots {
    splitter: usize,
    next: usize,
}

impl TauSlots {
    fn new(splitter: usize) -> Self {
        TauSlots { splitter, next: 1 }
    }

    fn take(&mut self) -> SlotRef {
        assert!(self.next <= 3, "splitter has only three τ slots");
        self.next += 1;
        SlotRef::new(self.splitter, self.next - 1)
    }

    fn rest(&mut self) -> Vec<SlotRef> {
        let out = (self.next..=3)
            .map(|s| SlotRef::new(self.splitter, s))
            .collect();
        self.next = 4;
        out
    }
}

/// A closed, connected assembly with χ = n for odd n ≥ 13.
pub fn synthesize_chi(n: i64) -> Result<AssemblyGraph, SynthesisError> {
    let recipe = SynthesisRecipe::for_chi(n)?;
    let k = recipe.counts.reversed_cores;
    let tau = twist_a();
    let mut g = AssemblyGraph::new();

    let (_, s0) = add_unit(&mut g, Sign::Plus);
    let mut prev = TauSlots::new(s0);
    for _ in 0..k {
        let (_, sn) = add_unit(&mut g, Sign::Minus);
        let (_, sp) = add_unit(&mut g, Sign::Plus);
        let l = g.add_instance(connector(&tau), Sign::Plus);
        let r = g.add_instance(connector(&tau), Sign::Plus);
        let mut cur = TauSlots::new(sp);

        glue(&mut g, prev.take(), SlotRef::new(l, 0));
        glue(&mut g, SlotRef::new(l, 2), SlotRef::new(sn, 1));
        glue(&mut g, cur.take(), SlotRef::new(r, 0));
        glue(&mut g, SlotRef::new(r, 2), SlotRef::new(sn, 2));
        glue(&mut g, SlotRef::new(l, 1), SlotRef::new(r, 3));
        glue(&mut g, SlotRef::new(l, 3), SlotRef::new(r, 1));
        glue(&mut g, cur.take(), SlotRef::new(sn, 3));
        prev = cur;
    }

    let open = g.open_slots();
    debug_assert_eq!(open.len(), 3);
    for slot in open {
        let c = g.add_instance(cap(), Sign::Minus);
        glue(&mut g, slot, SlotRef::new(c, 0));
    }
    Ok(g)
}

/// A closed assembly with χ = 13s + 2m and claimed σ = s. `(0, 0)` gives
/// the empty assembly.
pub fn synthesize_chi_sigma(s: i64, m: i64) -> Result<AssemblyGraph, SynthesisError> {
    let recipe = SynthesisRecipe::for_chi_sigma(s, m)?;
    let units = recipe.counts.splitters;
    let tau = twist_a();
    let mut g = AssemblyGraph::new();
    let mut open: Vec<SlotRef> = Vec::new();
    let mut prev: Option<TauSlots> = None;

    for _ in 0..units {
        let (_, sp) = add_unit(&mut g, Sign::Plus);
        let mut cur = TauSlots::new(sp);
        if let Some(mut p) = prev.take() {
            let c = g.add_instance(connector(&tau), Sign::Plus);
            glue(&mut g, p.take(), SlotRef::new(c, 0));
            glue(&mut g, cur.take(), SlotRef::new(c, 1));
            open.extend(p.rest());
            open.extend([SlotRef::new(c, 2), SlotRef::new(c, 3)]);
        }
        prev = Some(cur);
    }
    if let Some(mut p) = prev {
        open.extend(p.rest());
    }

    let mut open = open.into_iter();
    for _ in 0..recipe.counts.six_caps {
        let six = g.add_instance(six_cap(), Sign::Plus);
        for slot in 0..6 {
            let t = open.next().expect("enough τ slots for SixCaps");
            glue(&mut g, t, SlotRef::new(six, slot));
        }
    }
    for t in open {
        let c = g.add_instance(cap(), Sign::Minus);
        glue(&mut g, t, SlotRef::new(c, 0));
    }
    Ok(g.reversed())
}

/// Genus of the fibers in the Cap construction.
pub const CAP_FIBER_GENUS: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub curves: (usize, usize),
    pub geometric: u32,
    pub algebraic: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrickCheck {
    /// Curves whose twists make up the composite.
    pub prefix: Vec<usize>,
    pub target: usize,
    pub fixes_support: bool,
    pub obstructions: Vec<Obstruction>,
}

/// Bundle over a pair of pants with monodromies `(α, β, γ)`, words in
/// `φ₁ … φ₇`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapPiece {
    pub name: String,
    #[serde(serialize_with = "serialize_words")]
    pub monodromies: [FreeWord; 3],
    pub chi_before: i64,
    pub checks: Vec<TrickCheck>,
    pub trick_applied: bool,
    pub chi_after: i64,
}

fn serialize_words<S: serde::Serializer>(w: &[FreeWord; 3], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(w.iter().map(|w| w.render("phi")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub step: String,
    pub delta: i64,
    pub running: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapPlan {
    pub pieces: Vec<CapPiece>,
    pub final_steps: Vec<String>,
    pub ledger: Vec<LedgerEntry>,
    /// Class of the boundary word of the last piece on `H₁(Σ₃)` equals
    /// `T₇⁻¹`.
    pub closing_word_h1: bool,
}

impl CapPlan {
    pub fn chi_before_tricks(&self) -> i64 {
        self.pieces.iter().map(|p| p.chi_before).sum()
    }

    pub fn tricks_applied(&self) -> usize {
        self.pieces.iter().filter(|p| p.trick_applied).count()
    }

    pub fn final_chi(&self) -> i64 {
        self.ledger.last().map_or(0, |e| e.running)
    }
}

fn phi_word(pairs: &[(usize, i8)]) -> FreeWord {
    FreeWord::from_pairs(pairs)
}

/// `φ_j ⋯ φ₁` with `φ₅, φ₆` entering inverted.
fn prefix_product(j: usize) -> FreeWord {
    let pairs: Vec<(usize, i8)> = (1..=j)
        .rev()
        .map(|i| (i, if i >= 5 { -1 } else { 1 }))
        .collect();
    phi_word(&pairs)
}

/// The five pair-of-pants pieces. Piece `W_j` has monodromies
/// `(φ_{j-1}^{±} ⋯ φ₁, φ_j^{±}, (φ_j^{±} ⋯ φ₁)⁻¹)`.
pub fn cap_pieces_words() -> Vec<(String, [FreeWord; 3])> {
    (2..=6)
        .map(|j| {
            let e = if j >= 5 { -1 } else { 1 };
            let alpha = prefix_product(j - 1);
            let beta = phi_word(&[(j, e)]);
            let gamma = prefix_product(j).inverse();
            (format!("W{j}"), [alpha, beta, gamma])
        })
        .collect()
}

fn trick_check(
    prefix: Vec<usize>,
    target: usize,
    cs: &CurveSystem,
) -> Result<TrickCheck, CurveError> {
    let fixes_support = composite_fixes_support(&prefix, target, cs)?;
    let mut obstructions = Vec::new();
    for &p in &prefix {
        let geometric = cs.geometric(p, target)?;
        if geometric != 0 {
            obstructions.push(Obstruction {
                curves: (p, target),
                geometric,
                algebraic: cs.algebraic(p, target)?,
            });
        }
    }
    Ok(TrickCheck {
        prefix,
        target,
        fixes_support,
        obstructions,
    })
}

/// H₁ image of a word in `φ₁ … φ₇`, with `φᵢ ↦ T_{Cᵢ}`.
fn h1_image(w: &FreeWord, cs: &CurveSystem) -> Option<crate::mcg::SymplecticMatrix> {
    let factors: Vec<(usize, bool)> = w
        .letters()
        .iter()
        .map(|l| (l.generator, l.inverse))
        .collect();
    twist_product(cs.h1_classes(), cs.genus(), &factors).ok()
}

pub fn build_cap_plan() -> Result<CapPlan, CapPlanError> {
    build_cap_plan_with(&lantern_curve_system())
}

/// The Cap plan against explicit curve data; fails if a trick that the
/// construction relies on is not supported by the data.
pub fn build_cap_plan_with(cs: &CurveSystem) -> Result<CapPlan, CapPlanError> {
    let pants_chi = -1;
    let chi_before = surface_bundle_chi(pants_chi, CAP_FIBER_GENUS);
    let mut pieces = Vec::new();
    for (name, words) in cap_pieces_words() {
        let [alpha, beta, gamma] = &words;
        if !(&(gamma * beta) * alpha).is_empty() {
            return Err(CapPlanError::PieceNotClosed(name));
        }
        let j: usize = name[1..].parse().expect("piece index");
        let checks = if j <= 5 {
            vec![trick_check((1..j).collect(), j, cs)?]
        } else {
            vec![
                trick_check((1..j).collect(), j, cs)?,
                trick_check(vec![6], 7, cs)?,
            ]
        };
        let trick_applied = j <= 5;
        if trick_applied && !checks[0].fixes_support {
            return Err(CapPlanError::SupportNotFixed {
                piece: name,
                target: j,
            });
        }
        let chi_after = if trick_applied { 0 } else { chi_before };
        pieces.push(CapPiece {
            name,
            monodromies: words,
            chi_before,
            checks,
            trick_applied,
            chi_after,
        });
    }
    for pair in pieces.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if !(&a.monodromies[2] * &b.monodromies[0]).is_empty() {
            return Err(CapPlanError::BoundaryMismatch(
                a.name.clone(),
                b.name.clone(),
            ));
        }
    }

    let last = &pieces[pieces.len() - 1].monodromies[2];
    let t7_inv = h1_image(&phi_word(&[(7, -1)]), cs);
    let closing_word_h1 = h1_image(last, cs).is_some() && h1_image(last, cs) == t7_inv;

    let mut ledger = Vec::new();
    let mut running = 0;
    for p in &pieces {
        running += p.chi_before;
        ledger.push(LedgerEntry {
            step: format!("{} before trick", p.name),
            delta: p.chi_before,
            running,
        });
    }
    for p in pieces.iter().filter(|p| p.trick_applied) {
        let delta = p.chi_after - p.chi_before;
        running += delta;
        ledger.push(LedgerEntry {
            step: format!("torus trick on {}", p.name),
            delta,
            running,
        });
    }
    let cobordism = twist_cobordism(CAP_FIBER_GENUS).expect("genus 3");
    let final_steps = vec![
        "glue the altered pieces back along their common boundaries".to_string(),
        "identify the remaining positive/negative boundary pairs".to_string(),
        format!(
            "attach a genus-{CAP_FIBER_GENUS} twist cobordism to the remaining surface bundle, leaving T2(tau)"
        ),
    ];
    for (step, delta) in [
        (final_steps[0].clone(), 0),
        (final_steps[1].clone(), 0),
        (final_steps[2].clone(), cobordism.chi),
    ] {
        running += delta;
        ledger.push(LedgerEntry {
            step,
            delta,
            running,
        });
    }

    Ok(CapPlan {
        pieces,
        final_steps,
        ledger,
        closing_word_h1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundRoute {
    /// One Cap.
    SingleTwist,
    /// Splitter plus three Caps.
    SplitterCaps,
    /// Torus bundle over a punctured disk with one Cap per twist.
    TwistWord,
    /// Genus-3 surface bundle plus twist cobordism.
    GenusThree,
}

impl fmt::Display for BoundRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundRoute::SingleTwist => "Cap",
            BoundRoute::SplitterCaps => "Splitter+3Cap",
            BoundRoute::TwistWord => "DiskBundle+Caps",
            BoundRoute::GenusThree => "GenusThreeBundle+TwistCobordism",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerBound {
    pub label: BoundaryLabel,
    /// Best bound over the applicable routes; `None` for central classes.
    pub bound: Option<i64>,
    pub route: Option<BoundRoute>,
    /// Assembly whose single open slot glues to `label`.
    pub witness: Option<AssemblyGraph>,
    pub open_slot: Option<SlotRef>,
    pub candidates: Vec<(BoundRoute, i64)>,
}

/// Longest twist word tried for the general route.
pub const MAX_TWIST_WORD: usize = 100_000;

pub const GENERAL_BOUND_REMARK: &str =
    "a bound E <= 20 is known for every torus bundle over the circle; it is cited here, not reproduced";

fn single_cap(sign: Sign) -> (AssemblyGraph, SlotRef) {
    let mut g = AssemblyGraph::new();
    let c = g.add_instance(cap(), sign);
    (g, SlotRef::new(c, 0))
}

fn splitter_caps(sign: Sign) -> (AssemblyGraph, SlotRef) {
    let mut g = AssemblyGraph::new();
    let s = g.add_instance(splitter(), sign);
    for slot in 1..=3 {
        let c = g.add_instance(cap(), sign.flip());
        glue(&mut g, SlotRef::new(s, slot), SlotRef::new(c, 0));
    }
    (g, SlotRef::new(s, 0))
}

/// The outer slot carries `(t₁ ⋯ t_m)⁻¹`, so it glues to a bundle whose
/// monodromy is `t₁ ⋯ t_m`.
fn twist_word_witness(word: &[Twist]) -> (AssemblyGraph, SlotRef) {
    let punctures: Vec<Sl2Matrix> = word.iter().rev().map(|t| t.matrix()).collect();
    let mut g = AssemblyGraph::new();
    let d = g.add_instance(disk_bundle(punctures), Sign::Plus);
    for (i, t) in word.iter().rev().enumerate() {
        let sign = if t.is_positive() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let c = g.add_instance(cap(), sign);
        glue(&mut g, SlotRef::new(d, i + 1), SlotRef::new(c, 0));
    }
    (g, SlotRef::new(d, 0))
}

fn genus_three_route(sign: Sign) -> (AssemblyGraph, SlotRef) {
    let mut g = AssemblyGraph::new();
    let b = g.add_instance(genus_three_bundle(), sign);
    let t = g.add_instance(twist_cobordism(CAP_FIBER_GENUS).expect("genus 3"), sign);
    glue(&mut g, SlotRef::new(b, 0), SlotRef::new(t, 0));
    (g, SlotRef::new(t, 1))
}

/// Upper bound on the minimum Euler characteristic of a Haken filling of
/// `label`, with a witness assembly.
pub fn euler_bound(label: &BoundaryLabel) -> Result<EulerBound, SynthesisError> {
    let class = match label.effective() {
        Monodromy::Torus(c) => c,
        Monodromy::Symbolic(_) => return Err(SynthesisError::NotTorus(label.fiber_genus())),
    };
    let tau = MonodromyClass::single_twist();
    let phi_class = classify(&phi());

    let mut routes: Vec<(BoundRoute, AssemblyGraph, SlotRef)> = Vec::new();
    if class == tau || class == tau.inverse() {
        let sign = if class == tau {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let (g, s) = single_cap(sign);
        routes.push((BoundRoute::SingleTwist, g, s));
    }
    if class == phi_class || class == phi_class.inverse() {
        let sign = if class == phi_class {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let (g, s) = splitter_caps(sign);
        routes.push((BoundRoute::SplitterCaps, g, s));
    }
    if let Some(word) = class.twist_word(MAX_TWIST_WORD) {
        let (g, s) = twist_word_witness(&word);
        routes.push((BoundRoute::TwistWord, g, s));
    }
    if class == tau || class == tau.inverse() {
        let sign = if class == tau {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let (g, s) = genus_three_route(sign);
        routes.push((BoundRoute::GenusThree, g, s));
    }

    let candidates: Vec<(BoundRoute, i64)> = routes
        .iter()
        .map(|(r, g, _)| (*r, crate::blocks::euler_characteristic(g)))
        .collect();
    let best = candidates
        .iter()
        .enumerate()
        .min_by_key(|(i, (_, chi))| (*chi, *i))
        .map(|(i, _)| i);
    let (bound, route, witness, open_slot) = match best {
        Some(i) => {
            let (r, g, s) = routes.swap_remove(i);
            (
                Some(crate::blocks::euler_characteristic(&g)),
                Some(r),
                Some(g),
                Some(s),
            )
        }
        None => (None, None, None, None),
    };
    Ok(EulerBound {
        label: label.clone(),
        bound,
        route,
        witness,
        open_slot,
        candidates,
    })
}

/// Convenience wrapper on a matrix: bound for `T²(m)`.
pub fn euler_bound_matrix(m: &Sl2Matrix) -> EulerBound {
    euler_bound(&BoundaryLabel::torus_bundle(m)).expect("torus label")
}

/// Twist length estimate used by the general route, if finite.
pub fn twist_word_length(class: &MonodromyClass) -> Option<usize> {
    class.twist_word(MAX_TWIST_WORD).map(|w| w.len())
}

/// `H₁` class of a curve of the Cap configuration, for reports.
pub fn cap_curve_class(i: usize) -> Option<HomologyClass> {
    lantern_curve_system().class(i).ok().cloned()
}

/// χ of a recipe's blocks, recomputed from the inventory.
pub fn recipe_chi(c: &BlockCounts) -> i64 {
    let count = |n: usize| n.to_i64().unwrap_or(i64::MAX);
    count(c.cores + c.reversed_cores) * core().chi
        + count(c.splitters) * splitter().chi
        + count(c.connectors) * connector(&twist_a()).chi
        + count(c.caps) * cap().chi
        + count(c.six_caps) * six_cap().chi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{labels_glueable, signature_sum, verify};

    #[test]
    fn chi_13_is_core_splitter_three_caps() {
        let g = synthesize_chi(13).unwrap();
        let counts = BlockCounts::of(&g);
        assert_eq!(counts, SynthesisRecipe::for_chi(13).unwrap().counts);
        assert_eq!((counts.cores, counts.splitters, counts.caps), (1, 1, 3));
        let r = verify(&g);
        assert!(r.passed());
        assert_eq!(r.chi_total, 13);
        assert_eq!(r.sigma_total, Some(-1));
    }

    #[test]
    fn chi_15_counts() {
        let g = synthesize_chi(15).unwrap();
        let c = BlockCounts::of(&g);
        assert_eq!(
            c,
            BlockCounts {
                cores: 2,
                reversed_cores: 1,
                splitters: 3,
                connectors: 2,
                caps: 3,
                six_caps: 0
            }
        );
        assert_eq!(recipe_chi(&c), 15);
        assert!(verify(&g).passed());
    }

    #[test]
    fn chi_errors() {
        assert_eq!(
            synthesize_chi(12).unwrap_err(),
            SynthesisError::EvenTarget(12)
        );
        assert_eq!(
            synthesize_chi(11).unwrap_err(),
            SynthesisError::TargetBelow13(11)
        );
        assert_eq!(
            synthesize_chi(-3).unwrap_err(),
            SynthesisError::TargetBelow13(-3)
        );
        assert!(SynthesisError::EvenTarget(14)
            .to_string()
            .contains("even targets not realized by this construction"));
    }

    #[test]
    fn chi_sigma_family() {
        for (s, m, chi) in [(1, 0, 13), (2, 3, 32), (0, 1, 2), (0, 0, 0)] {
            let g = synthesize_chi_sigma(s, m).unwrap();
            let r = verify(&g);
            assert!(r.passed(), "({s},{m}) {r:?}");
            assert_eq!(r.chi_total, chi);
            assert_eq!(r.sigma_total, Some(s));
            assert_eq!(
                BlockCounts::of(&g),
                SynthesisRecipe::for_chi_sigma(s, m).unwrap().counts
            );
        }
        assert!(synthesize_chi_sigma(0, 0).unwrap().instances().is_empty());
        assert_eq!(
            synthesize_chi_sigma(-1, 0).unwrap_err(),
            SynthesisError::NegativeInput { s: -1, m: 0 }
        );
    }

    #[test]
    fn cap_plan_ledger() {
        let plan = build_cap_plan().unwrap();
        assert_eq!(plan.pieces.len(), 5);
        assert!(plan.pieces.iter().all(|p| p.chi_before == 4));
        assert_eq!(plan.chi_before_tricks(), 20);
        assert_eq!(plan.tricks_applied(), 4);
        assert_eq!(plan.final_chi(), 4);
        assert_eq!(plan.chi_before_tricks(), genus_three_bundle().chi);
        let w6 = &plan.pieces[4];
        assert!(!w6.trick_applied);
        assert!(w6.checks.iter().all(|c| !c.fixes_support));
        let obs = &w6.checks[1].obstructions[0];
        assert_eq!((obs.curves, obs.geometric, obs.algebraic), ((6, 7), 2, 0));
        assert!(plan.closing_word_h1);
    }

    #[test]
    fn cap_piece_words_are_the_listed_ones() {
        let pieces = cap_pieces_words();
        let shown: Vec<String> = pieces[3].1.iter().map(|w| w.render("phi")).collect();
        assert_eq!(
            shown,
            [
                "phi4 phi3 phi2 phi1",
                "phi5^-1",
                "phi1^-1 phi2^-1 phi3^-1 phi4^-1 phi5"
            ]
        );
        let w6: Vec<String> = pieces[4].1.iter().map(|w| w.render("phi")).collect();
        assert_eq!(
            w6,
            [
                "phi5^-1 phi4 phi3 phi2 phi1",
                "phi6^-1",
                "phi1^-1 phi2^-1 phi3^-1 phi4^-1 phi5 phi6"
            ]
        );
    }

    #[test]
    fn cap_plan_rejects_corrupted_curves() {
        let cs = lantern_curve_system();
        let mut geom: Vec<Vec<u32>> = (1..=7)
            .map(|i| (1..=7).map(|j| cs.geometric(i, j).unwrap()).collect())
            .collect();
        geom[0][1] = 2;
        geom[1][0] = 2;
        let alg = (1..=7)
            .map(|i| (1..=7).map(|j| cs.algebraic(i, j).unwrap()).collect())
            .collect();
        let bad =
            CurveSystem::new(3, cs.names().to_vec(), cs.h1_classes().to_vec(), geom, alg).unwrap();
        assert_eq!(
            build_cap_plan_with(&bad),
            Err(CapPlanError::SupportNotFixed {
                piece: "W2".into(),
                target: 2
            })
        );
    }

    fn check_witness(m: &Sl2Matrix, expected: i64) {
        let label = BoundaryLabel::torus_bundle(m);
        let b = euler_bound(&label).unwrap();
        assert_eq!(b.bound, Some(expected), "{m}");
        let w = b.witness.unwrap();
        let r = verify(&w);
        assert!(r.legal && r.connected);
        assert_eq!(r.open_slots, vec![b.open_slot.unwrap()]);
        assert_eq!(r.chi_total, expected);
        assert!(labels_glueable(
            &w.slot_label(b.open_slot.unwrap()).unwrap(),
            &label
        ));
    }

    #[test]
    fn euler_bound_examples() {
        check_witness(&twist_a(), 4);
        check_witness(&twist_a().inverse(), 4);
        check_witness(&phi(), 12);
        check_witness(&phi().inverse(), 12);
        check_witness(&Sl2Matrix::new(2, 1, 1, 1).unwrap(), 8);
        check_witness(&-twist_a(), 28);
        check_witness(&Sl2Matrix::r_power(3), 12);
        let b = euler_bound_matrix(&phi());
        assert_eq!(b.route, Some(BoundRoute::SplitterCaps));
        assert!(b.candidates.contains(&(BoundRoute::TwistWord, 12)));
        let t = euler_bound_matrix(&twist_a());
        assert!(t.candidates.contains(&(BoundRoute::GenusThree, 20)));
    }

    #[test]
    fn euler_bound_central_has_no_witness() {
        let b = euler_bound_matrix(&Sl2Matrix::identity());
        assert_eq!(b.bound, None);
        assert!(b.witness.is_none());
        let b = euler_bound_matrix(&-Sl2Matrix::identity());
        assert_eq!(b.bound, None);
        let g3 = genus_three_bundle().boundaries[0].clone();
        assert_eq!(euler_bound(&g3).unwrap_err(), SynthesisError::NotTorus(3));
    }

    #[test]
    fn sigma_totals_are_odd_for_odd_chi() {
        for n in (13..=25).step_by(2) {
            let s = signature_sum(&synthesize_chi(n).unwrap()).unwrap();
            assert_eq!(s.value, -1);
            assert_eq!(s.assumptions.len(), usize::from(n > 13));
        }
    }
}
