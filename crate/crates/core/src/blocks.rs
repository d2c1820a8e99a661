//! Building blocks, boundary labels and assemblies.
//!
//! A boundary component of an oriented block is a surface bundle over the
//! circle `F(φ)`, possibly with reversed orientation. Since `-F(φ) ≅ F(φ⁻¹)`,
//! a label `(φ, ε)` is compared through its effective monodromy `φ^ε`. Two
//! components can be identified into an oriented union exactly when one is
//! the orientation reverse of the other, i.e. when their effective
//! monodromies are mutually inverse. For torus fibers this is decided up to
//! SL(2,Z) conjugacy; for higher genus only identical twist words match.
//!
//! Euler characteristics add under gluing because every interface is a
//! mapping torus with χ = 0. Signatures add by Novikov additivity, but the
//! per-block values are claims and are reported as such.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::curves::lantern_curve_system;
use crate::mcg::{verify_braid_lantern, verify_h1_lantern, verify_seven_twist_identity};
use crate::sl2z::{
    self, classify, induced_core_monodromy, phi, twist_a, twist_b, verify_phi_decomposition,
    MonodromyClass, Sl2Matrix,
};
use crate::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("twist cobordism needs fiber genus ≥ 2, got {0}")]
    GenusTooSmall(u32),
    #[error("surface labels need genus ≥ 2, got {0}; use a torus label")]
    NotSurfaceGenus(u32),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("no slot {0}")]
    UnknownSlot(SlotRef),
    #[error("slot {0} is already glued")]
    SlotInUse(SlotRef),
    #[error("illegal gluing {a} ({left}) with {b} ({right})")]
    IllegalGluing {
        a: SlotRef,
        b: SlotRef,
        left: String,
        right: String,
    },
}

/// A word in named twist generators, e.g. `tau^-1`, kept in normal form
/// (adjacent powers merged, zero powers dropped).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SymbolicWord {
    letters: Vec<(String, i64)>,
}

impl SymbolicWord {
    pub fn new(letters: impl IntoIterator<Item = (String, i64)>) -> Self {
        let mut out: Vec<(String, i64)> = Vec::new();
        for (name, e) in letters {
            match out.last_mut() {
                Some((n, x)) if *n == name => {
                    *x += e;
                    if *x == 0 {
                        out.pop();
                    }
                }
                _ if e != 0 => out.push((name, e)),
                _ => {}
            }
        }
        SymbolicWord { letters: out }
    }

    pub fn generator(name: &str) -> Self {
        SymbolicWord::new([(name.to_string(), 1)])
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn inverse(&self) -> Self {
        SymbolicWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(n, e)| (n.clone(), -e))
                .collect(),
        }
    }
}

impl fmt::Display for SymbolicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(n, e)| {
                if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Monodromy {
    Torus(MonodromyClass),
    Symbolic(SymbolicWord),
}

impl Monodromy {
    pub fn inverse(&self) -> Monodromy {
        match self {
            Monodromy::Torus(c) => Monodromy::Torus(c.inverse()),
            Monodromy::Symbolic(w) => Monodromy::Symbolic(w.inverse()),
        }
    }
}

impl fmt::Display for Monodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monodromy::Torus(c) => write!(f, "{c}"),
            Monodromy::Symbolic(w) => write!(f, "{w}"),
        }
    }
}

/// The type of a gluable boundary slot: `orientation · F_genus(monodromy)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryLabel {
    fiber_genus: u32,
    monodromy: Monodromy,
    orientation: Sign,
}

impl BoundaryLabel {
    pub fn torus(class: MonodromyClass) -> Self {
        Self::torus_oriented(class, Sign::Plus)
    }

    pub fn torus_oriented(class: MonodromyClass, orientation: Sign) -> Self {
        BoundaryLabel {
            fiber_genus: 1,
            monodromy: Monodromy::Torus(class),
            orientation,
        }
    }

    /// `T²(m)`.
    pub fn torus_bundle(m: &Sl2Matrix) -> Self {
        Self::torus(classify(m))
    }

    pub fn surface(genus: u32, word: SymbolicWord, orientation: Sign) -> Result<Self, BlockError> {
        if genus < 2 {
            return Err(BlockError::NotSurfaceGenus(genus));
        }
        Ok(BoundaryLabel {
            fiber_genus: genus,
            monodromy: Monodromy::Symbolic(word),
            orientation,
        })
    }

    pub fn fiber_genus(&self) -> u32 {
        self.fiber_genus
    }

    pub fn monodromy(&self) -> &Monodromy {
        &self.monodromy
    }

    pub fn orientation(&self) -> Sign {
        self.orientation
    }

    /// The torus class, for genus-1 labels.
    pub fn torus_class(&self) -> Option<&MonodromyClass> {
        match &self.monodromy {
            Monodromy::Torus(c) => Some(c),
            Monodromy::Symbolic(_) => None,
        }
    }

    /// Same component seen from the opposite orientation of the block.
    pub fn reverse(&self) -> Self {
        BoundaryLabel {
            fiber_genus: self.fiber_genus,
            monodromy: self.monodromy.inverse(),
            orientation: self.orientation,
        }
    }

    pub fn oriented(&self, sign: Sign) -> Self {
        BoundaryLabel {
            orientation: self.orientation * sign,
            ..self.clone()
        }
    }

    /// `φ^ε`, using `-F(φ) ≅ F(φ⁻¹)`.
    pub fn effective(&self) -> Monodromy {
        match self.orientation {
            Sign::Plus => self.monodromy.clone(),
            Sign::Minus => self.monodromy.inverse(),
        }
    }
}

impl fmt::Display for BoundaryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.orientation == Sign::Minus {
            "-"
        } else {
            ""
        };
        if self.fiber_genus == 1 {
            write!(f, "{sign}T2({})", self.monodromy)
        } else {
            write!(f, "{sign}F{}({})", self.fiber_genus, self.monodromy)
        }
    }
}

pub fn labels_glueable(l1: &BoundaryLabel, l2: &BoundaryLabel) -> bool {
    l1.fiber_genus == l2.fiber_genus && l2.effective() == l1.effective().inverse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Value stated for the block in the source construction.
    Stated,
    /// Not stated anywhere; assumed so the ledger can be summed.
    Assumed,
    /// Supplied by the user for a custom block.
    Supplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClaimedSignature {
    pub value: i64,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Core,
    Splitter,
    Connector(Sl2Matrix),
    Cap,
    SixCap,
    TwistCobordism(u32),
    GenusThreeBundle,
    /// Torus bundle over a disk with one puncture per listed monodromy.
    DiskBundle(Vec<Sl2Matrix>),
    Custom(String),
}

impl BlockKind {
    pub fn name(&self) -> &str {
        match self {
            BlockKind::Core => "Core",
            BlockKind::Splitter => "Splitter",
            BlockKind::Connector(_) => "Connector",
            BlockKind::Cap => "Cap",
            BlockKind::SixCap => "SixCap",
            BlockKind::TwistCobordism(_) => "TwistCobordism",
            BlockKind::GenusThreeBundle => "GenusThreeBundle",
            BlockKind::DiskBundle(_) => "DiskBundle",
            BlockKind::Custom(name) => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub kind: BlockKind,
    /// `-` once [`reversed`] has been applied relative to the stated orientation.
    pub orientation: Sign,
    pub chi: i64,
    pub sigma: Option<ClaimedSignature>,
    pub boundaries: Vec<BoundaryLabel>,
    pub aspherical_certified: bool,
    pub pi1_injective_certified: bool,
}

fn stated(value: i64) -> Option<ClaimedSignature> {
    Some(ClaimedSignature {
        value,
        provenance: Provenance::Stated,
    })
}

/// χ of an `F_genus` bundle over a base of Euler characteristic `base_chi`.
pub fn surface_bundle_chi(base_chi: i64, fiber_genus: u32) -> i64 {
    base_chi * (2 - 2 * i64::from(fiber_genus))
}

pub const TWIST_GENERATOR: &str = "tau";

fn certified_block(
    kind: BlockKind,
    chi: i64,
    sigma: Option<ClaimedSignature>,
    boundaries: Vec<BoundaryLabel>,
) -> Block {
    Block {
        kind,
        orientation: Sign::Plus,
        chi,
        sigma,
        boundaries,
        aspherical_certified: true,
        pi1_injective_certified: true,
    }
}

/// χ = 1, σ = 1, boundary `T²(Φ)`.
pub fn core() -> Block {
    certified_block(
        BlockKind::Core,
        1,
        stated(1),
        vec![BoundaryLabel::torus_bundle(&phi())],
    )
}

/// Outer boundary first, then one label per puncture. The outer monodromy
/// is `(φ_n ⋯ φ_1)⁻¹`.
fn disk_bundle_boundaries(punctures: &[Sl2Matrix]) -> Vec<BoundaryLabel> {
    let around = punctures
        .iter()
        .rev()
        .fold(Sl2Matrix::identity(), |acc, p| &acc * p);
    std::iter::once(BoundaryLabel::torus_bundle(&around.inverse()))
        .chain(punctures.iter().map(BoundaryLabel::torus_bundle))
        .collect()
}

/// Torus bundle over the 3-punctured disk with puncture monodromies
/// `τ_a, τ_b, τ_a`: χ = 0, σ = 1, boundary `T²(Φ⁻¹) ⊔ 3·T²(τ)`.
pub fn splitter() -> Block {
    certified_block(
        BlockKind::Splitter,
        0,
        stated(1),
        disk_bundle_boundaries(&splitter_punctures()),
    )
}

pub fn splitter_punctures() -> [Sl2Matrix; 3] {
    [twist_a(), twist_b(), twist_a()]
}

/// χ = 0, boundary `T²(ψ⁻¹) ⊔ T²(ψ⁻¹) ⊔ T²(ψ) ⊔ T²(ψ)`. The signature is
/// not stated anywhere and is assumed to be 0.
pub fn connector(psi: &Sl2Matrix) -> Block {
    let inv = BoundaryLabel::torus_bundle(&psi.inverse());
    let fwd = BoundaryLabel::torus_bundle(psi);
    certified_block(
        BlockKind::Connector(psi.clone()),
        0,
        Some(ClaimedSignature {
            value: 0,
            provenance: Provenance::Assumed,
        }),
        vec![inv.clone(), inv, fwd.clone(), fwd],
    )
}

/// χ = 4, boundary `T²(τ)`.
///
/// The signature -1 is quoted for the Cap in the orientation in which it
/// closes a Splitter's `T²(τ)` slot; that is the reverse of this one, so the
/// stated orientation carries +1.
pub fn cap() -> Block {
    certified_block(
        BlockKind::Cap,
        4,
        stated(1),
        vec![BoundaryLabel::torus(MonodromyClass::single_twist())],
    )
}

/// χ = 0, σ = -4; closes six `T²(τ_a)` slots at once.
pub fn six_cap() -> Block {
    let slot = BoundaryLabel::torus_oriented(MonodromyClass::single_twist(), Sign::Minus);
    certified_block(BlockKind::SixCap, 0, stated(-4), vec![slot; 6])
}

/// Haken cobordism from `F_h(τ)` to `T²(τ')`, χ = 0.
pub fn twist_cobordism(h: u32) -> Result<Block, BlockError> {
    if h < 2 {
        return Err(BlockError::GenusTooSmall(h));
    }
    let high = BoundaryLabel::surface(h, SymbolicWord::generator(TWIST_GENERATOR), Sign::Plus)?;
    Ok(Block {
        sigma: None,
        ..certified_block(
            BlockKind::TwistCobordism(h),
            0,
            None,
            vec![
                high.reverse(),
                BoundaryLabel::torus(MonodromyClass::single_twist()),
            ],
        )
    })
}

/// `F₃` bundle over the once-punctured genus-3 surface bounding `F₃(τ)`:
/// χ = (2 - 7)(2 - 2·3) = 20.
pub fn genus_three_bundle() -> Block {
    let label = BoundaryLabel::surface(3, SymbolicWord::generator(TWIST_GENERATOR), Sign::Plus)
        .expect("genus 3");
    certified_block(
        BlockKind::GenusThreeBundle,
        surface_bundle_chi(2 - 7, 3),
        None,
        vec![label],
    )
}

/// Torus bundle over a disk with the given puncture monodromies. χ = 0; the
/// signature is not tracked.
pub fn disk_bundle(punctures: Vec<Sl2Matrix>) -> Block {
    let boundaries = disk_bundle_boundaries(&punctures);
    let injective = !punctures.is_empty();
    Block {
        pi1_injective_certified: injective,
        ..certified_block(BlockKind::DiskBundle(punctures), 0, None, boundaries)
    }
}

pub fn custom(name: &str, chi: i64, sigma: Option<i64>, boundaries: Vec<BoundaryLabel>) -> Block {
    Block {
        kind: BlockKind::Custom(name.to_string()),
        orientation: Sign::Plus,
        chi,
        sigma: sigma.map(|value| ClaimedSignature {
            value,
            provenance: Provenance::Supplied,
        }),
        boundaries,
        aspherical_certified: false,
        pi1_injective_certified: false,
    }
}

/// The same block with the opposite orientation: χ unchanged, σ negated,
/// every boundary monodromy inverted.
pub fn reversed(b: &Block) -> Block {
    Block {
        kind: b.kind.clone(),
        orientation: b.orientation.flip(),
        chi: b.chi,
        sigma: b.sigma.map(|s| ClaimedSignature {
            value: -s.value,
            ..s
        }),
        boundaries: b.boundaries.iter().map(BoundaryLabel::reverse).collect(),
        aspherical_certified: b.aspherical_certified,
        pi1_injective_certified: b.pi1_injective_certified,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SlotRef {
    pub instance: usize,
    pub slot: usize,
}

impl SlotRef {
    pub fn new(instance: usize, slot: usize) -> Self {
        SlotRef { instance, slot }
    }
}

impl fmt::Display for SlotRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}.{}", self.instance, self.slot)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    /// Always in its stated orientation; reversal lives in `orientation`.
    pub block: Block,
    pub orientation: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub a: SlotRef,
    pub b: SlotRef,
}

/// Block instances and the boundary identifications between them.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AssemblyGraph {
    instances: Vec<Instance>,
    gluings: Vec<Gluing>,
}

impl AssemblyGraph {
    pub fn new() -> Self {
        AssemblyGraph::default()
    }

    /// Add an instance; a reversed block is stored in its stated
    /// orientation with the instance sign flipped.
    pub fn add_instance(&mut self, block: Block, orientation: Sign) -> usize {
        let (block, orientation) = match block.orientation {
            Sign::Plus => (block, orientation),
            Sign::Minus => (reversed(&block), orientation.flip()),
        };
        self.instances.push(Instance { block, orientation });
        self.instances.len() - 1
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    /// Boundary label of a slot as seen in the assembly orientation.
    pub fn slot_label(&self, slot: SlotRef) -> Result<BoundaryLabel, AssemblyError> {
        let inst = self
            .instances
            .get(slot.instance)
            .ok_or(AssemblyError::UnknownSlot(slot))?;
        let label = inst
            .block
            .boundaries
            .get(slot.slot)
            .ok_or(AssemblyError::UnknownSlot(slot))?;
        Ok(label.oriented(inst.orientation))
    }

    fn slot_in_use(&self, slot: SlotRef) -> bool {
        self.gluings.iter().any(|g| g.a == slot || g.b == slot)
    }

    pub fn add_gluing(&mut self, a: SlotRef, b: SlotRef) -> Result<(), AssemblyError> {
        let la = self.slot_label(a)?;
        let lb = self.slot_label(b)?;
        if a == b || self.slot_in_use(a) {
            return Err(AssemblyError::SlotInUse(a));
        }
        if self.slot_in_use(b) {
            return Err(AssemblyError::SlotInUse(b));
        }
        if !labels_glueable(&la, &lb) {
            return Err(AssemblyError::IllegalGluing {
                a,
                b,
                left: la.to_string(),
                right: lb.to_string(),
            });
        }
        self.gluings.push(Gluing { a, b });
        Ok(())
    }

    /// Record a gluing without checking it, as read from a file. [`verify`]
    /// reports any that are illegal.
    pub fn add_gluing_unchecked(&mut self, a: SlotRef, b: SlotRef) {
        self.gluings.push(Gluing { a, b });
    }

    pub fn remove_gluing(&mut self, index: usize) -> Option<Gluing> {
        (index < self.gluings.len()).then(|| self.gluings.remove(index))
    }

    pub fn all_slots(&self) -> impl Iterator<Item = SlotRef> + '_ {
        self.instances
            .iter()
            .enumerate()
            .flat_map(|(i, inst)| (0..inst.block.boundaries.len()).map(move |s| SlotRef::new(i, s)))
    }

    pub fn open_slots(&self) -> Vec<SlotRef> {
        let used: BTreeSet<SlotRef> = self.gluings.iter().flat_map(|g| [g.a, g.b]).collect();
        self.all_slots().filter(|s| !used.contains(s)).collect()
    }

    /// Every slot paired. The empty assembly is closed.
    pub fn is_closed(&self) -> bool {
        self.open_slots().is_empty()
    }

    /// Reachability over instances. The empty assembly is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.instances.len();
        if n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.gluings {
            let (ra, rb) = (
                root(&mut parent, g.a.instance),
                root(&mut parent, g.b.instance),
            );
            parent[ra] = rb;
        }
        let r0 = root(&mut parent, 0);
        (1..n).all(|i| root(&mut parent, i) == r0)
    }

    /// The same assembly with every instance orientation flipped.
    pub fn reversed(&self) -> AssemblyGraph {
        AssemblyGraph {
            instances: self
                .instances
                .iter()
                .map(|i| Instance {
                    block: i.block.clone(),
                    orientation: i.orientation.flip(),
                })
                .collect(),
            gluings: self.gluings.clone(),
        }
    }

    pub fn count_kind(
        &self,
        pred: impl Fn(&BlockKind) -> bool,
        orientation: Option<Sign>,
    ) -> usize {
        self.instances
            .iter()
            .filter(|i| pred(&i.block.kind) && orientation.is_none_or(|o| o == i.orientation))
            .count()
    }
}

/// Sum of instance Euler characteristics.
pub fn euler_characteristic(g: &AssemblyGraph) -> i64 {
    g.instances.iter().map(|i| i.block.chi).sum()
}

/// Claimed signature total with the assumptions it rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignatureLedger {
    pub value: i64,
    pub assumptions: Vec<String>,
}

/// `Σ εᵢ σᵢ`, absent if any block has no claimed signature.
pub fn signature_sum(g: &AssemblyGraph) -> Option<SignatureLedger> {
    let mut value = 0;
    let mut assumptions = BTreeSet::new();
    for inst in &g.instances {
        let s = inst.block.sigma?;
        value += inst.orientation.as_i64() * s.value;
        match s.provenance {
            Provenance::Stated => {}
            Provenance::Assumed => {
                assumptions.insert(format!(
                    "{} signature {} is assumed",
                    inst.block.kind.name(),
                    s.value
                ));
            }
            Provenance::Supplied => {
                assumptions.insert(format!(
                    "{} signature {} is user supplied",
                    inst.block.kind.name(),
                    s.value
                ));
            }
        }
    }
    Some(SignatureLedger {
        value,
        assumptions: assumptions.into_iter().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureCheck {
    pub name: String,
    pub statement: String,
    /// `None` when the assembly is not closed or has no signature total.
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub legal: bool,
    pub closed: bool,
    pub connected: bool,
    pub instances: usize,
    pub gluings: usize,
    pub open_slots: Vec<SlotRef>,
    pub chi_total: i64,
    /// Claimed, not independently verified.
    pub sigma_total: Option<i64>,
    pub certificates: Vec<Certificate>,
    pub conjecture_checks: Vec<ConjectureCheck>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn certificates_hold(&self) -> bool {
        self.certificates.iter().all(|c| c.holds)
    }

    /// Legal, closed, connected and every certificate true.
    pub fn passed(&self) -> bool {
        self.legal && self.closed && self.connected && self.certificates_hold()
    }
}

/// The relation certificates every report carries.
pub fn relation_certificates() -> Vec<Certificate> {
    let cs = lantern_curve_system();
    vec![
        Certificate {
            name: "phi_decomposition".into(),
            holds: verify_phi_decomposition(),
        },
        Certificate {
            name: "braid_lantern".into(),
            holds: verify_braid_lantern(),
        },
        Certificate {
            name: "h1_lantern".into(),
            holds: verify_h1_lantern(&cs),
        },
        Certificate {
            name: "seven_twist_identity".into(),
            holds: verify_seven_twist_identity(&cs),
        },
    ]
}

fn gluing_legal(g: &AssemblyGraph, gl: &Gluing) -> bool {
    match (g.slot_label(gl.a), g.slot_label(gl.b)) {
        (Ok(la), Ok(lb)) => gl.a != gl.b && labels_glueable(&la, &lb),
        _ => false,
    }
}

pub fn verify(g: &AssemblyGraph) -> VerificationReport {
    let mut seen = BTreeSet::new();
    let slots_unique = g
        .gluings
        .iter()
        .flat_map(|gl| [gl.a, gl.b])
        .all(|s| seen.insert(s));
    let legal = slots_unique && g.gluings.iter().all(|gl| gluing_legal(g, gl));
    let closed = g.is_closed();
    let connected = g.is_connected();
    let chi_total = euler_characteristic(g);
    let sigma = signature_sum(g);

    let mut certificates = relation_certificates();
    let has = |k: fn(&BlockKind) -> bool| g.instances.iter().any(|i| k(&i.block.kind));
    if has(|k| matches!(k, BlockKind::Core)) {
        certificates.push(Certificate {
            name: "core_induced_monodromy".into(),
            holds: induced_core_monodromy().is_ok(),
        });
    }
    if has(|k| matches!(k, BlockKind::Splitter)) {
        let [p1, p2, p3] = splitter_punctures();
        let around = &(&p3 * &p2) * &p1;
        certificates.push(Certificate {
            name: "splitter_outer_boundary".into(),
            holds: sl2z::are_conjugate(&around.inverse(), &phi().inverse())
                && sl2z::are_conjugate(&twist_a(), &twist_b()),
        });
    }
    if has(|k| matches!(k, BlockKind::Cap)) {
        certificates.push(Certificate {
            name: "cap_plan_ledger".into(),
            holds: crate::synthesis::build_cap_plan().is_ok_and(|p| p.final_chi() == cap().chi),
        });
    }

    let conjecture = |name: &str, statement: &str, factor: i64| ConjectureCheck {
        name: name.into(),
        statement: statement.into(),
        holds: match (&sigma, closed) {
            (Some(s), true) => Some(chi_total >= factor * s.value.abs()),
            _ => None,
        },
    };
    let conjecture_checks = vec![
        conjecture("chi_ge_abs_sigma", "chi >= |sigma|", 1),
        conjecture("chi_ge_three_abs_sigma", "chi >= 3|sigma|", 3),
    ];

    let mut warnings = Vec::new();
    if let (Some(s), true) = (&sigma, closed) {
        if (chi_total - s.value).rem_euclid(2) != 0 {
            warnings.push(format!(
                "chi = {chi_total} and claimed sigma = {} differ in parity; a closed oriented 4-manifold has chi ≡ sigma (mod 2)",
                s.value
            ));
        }
    }
    if !legal {
        warnings.push("at least one gluing pairs incompatible boundary labels".into());
    }
    for (i, inst) in g.instances.iter().enumerate() {
        if !inst.block.aspherical_certified || !inst.block.pi1_injective_certified {
            warnings.push(format!(
                "instance #{i} ({}) has no asphericity/π1-injectivity certificate",
                inst.block.kind.name()
            ));
        }
    }

    let mut notes = vec![
        "signature values are claimed, not independently verified".to_string(),
        "asphericity and π1-injectivity are recorded block attributes, not computed".to_string(),
    ];
    match &sigma {
        Some(s) => notes.extend(s.assumptions.iter().cloned()),
        None if !g.instances.is_empty() => {
            notes.push("no signature total: some block has no claimed signature".into())
        }
        None => {}
    }

    VerificationReport {
        legal,
        closed,
        connected,
        instances: g.instances.len(),
        gluings: g.gluings.len(),
        open_slots: g.open_slots(),
        chi_total,
        sigma_total: sigma.map(|s| s.value),
        certificates,
        conjecture_checks,
        warnings,
        notes,
    }
}

/// Convenience: `T²(m)` label from four entries.
pub fn torus_label(a: i64, b: i64, c: i64, d: i64) -> Option<BoundaryLabel> {
    Sl2Matrix::new(BigInt::from(a), b, c, d)
        .ok()
        .map(|m| BoundaryLabel::torus_bundle(&m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau() -> BoundaryLabel {
        BoundaryLabel::torus_bundle(&twist_a())
    }

    #[test]
    fn inventory_golden_values() {
        let c = core();
        assert_eq!(c.chi, 1);
        assert_eq!(c.sigma.unwrap().value, 1);
        assert_eq!(c.boundaries, vec![BoundaryLabel::torus(classify(&phi()))]);

        let s = splitter();
        assert_eq!(s.chi, 0);
        assert_eq!(s.boundaries.len(), 4);
        assert_eq!(
            s.boundaries[0],
            BoundaryLabel::torus(classify(&phi().inverse()))
        );
        for l in &s.boundaries[1..] {
            assert_eq!(*l, tau());
        }

        let k = connector(&twist_a());
        assert_eq!(k.chi, 0);
        assert_eq!(k.boundaries.len(), 4);
        let id = connector(&Sl2Matrix::identity());
        assert!(id
            .boundaries
            .iter()
            .all(|l| l.torus_class() == Some(&MonodromyClass::Central(Sign::Plus))));

        let cp = cap();
        assert_eq!(cp.chi, 4);
        assert_eq!(cp.boundaries, vec![tau()]);
        assert_eq!(
            reversed(&cp).boundaries[0].torus_class().unwrap(),
            &classify(&twist_a().inverse())
        );

        let six = six_cap();
        assert_eq!(six.chi, 0);
        assert_eq!(six.sigma.unwrap().value, -4);
        assert_eq!(six.boundaries.len(), 6);
        assert!(six.boundaries.iter().all(|l| labels_glueable(l, &tau())));

        assert_eq!(genus_three_bundle().chi, 20);
        assert_eq!(surface_bundle_chi(2 - 7, 3), 20);
        assert_eq!(twist_cobordism(3).unwrap().chi, 0);
        assert_eq!(twist_cobordism(1), Err(BlockError::GenusTooSmall(1)));
    }

    #[test]
    fn connector_matches_disk_bundle() {
        let psi = Sl2Matrix::new(2, 1, 1, 1).unwrap();
        let k = connector(&psi);
        let d = disk_bundle(vec![psi.inverse(), psi.inverse(), psi.clone()]);
        let mut from_disk = d.boundaries[1..].to_vec();
        from_disk.push(d.boundaries[0].clone());
        assert_eq!(k.boundaries, from_disk);
    }

    #[test]
    fn reversal() {
        let c = core();
        let r = reversed(&c);
        assert_eq!(r.chi, 1);
        assert_eq!(r.sigma.unwrap().value, -1);
        assert_eq!(
            r.boundaries[0],
            BoundaryLabel::torus(classify(&phi().inverse()))
        );
        assert_eq!(reversed(&r), c);
    }

    #[test]
    fn glueability_examples() {
        let tau_inv = BoundaryLabel::torus_bundle(&twist_a().inverse());
        assert!(labels_glueable(&tau(), &tau_inv));
        let p = BoundaryLabel::torus_bundle(&phi());
        let p_inv = BoundaryLabel::torus_bundle(&phi().inverse());
        assert!(labels_glueable(&p, &p_inv));
        assert!(!labels_glueable(&tau(), &tau()));
        assert!(labels_glueable(&tau(), &tau().oriented(Sign::Minus)));
        let g3 = genus_three_bundle().boundaries[0].clone();
        let tc = twist_cobordism(3).unwrap().boundaries[0].clone();
        assert!(labels_glueable(&g3, &tc));
        assert!(!labels_glueable(&g3, &tau()));
        let tc4 = twist_cobordism(4).unwrap().boundaries[0].clone();
        assert!(!labels_glueable(&g3, &tc4));
    }

    #[test]
    fn gluing_errors() {
        let mut g = AssemblyGraph::new();
        let c = g.add_instance(core(), Sign::Plus);
        let s = g.add_instance(splitter(), Sign::Plus);
        let k = g.add_instance(cap(), Sign::Plus);
        g.add_gluing(SlotRef::new(c, 0), SlotRef::new(s, 0))
            .unwrap();
        assert!(matches!(
            g.add_gluing(SlotRef::new(s, 1), SlotRef::new(k, 0)),
            Err(AssemblyError::IllegalGluing { .. })
        ));
        assert_eq!(
            g.add_gluing(SlotRef::new(c, 0), SlotRef::new(s, 1)),
            Err(AssemblyError::SlotInUse(SlotRef::new(c, 0)))
        );
        assert_eq!(
            g.add_gluing(SlotRef::new(c, 5), SlotRef::new(s, 1)),
            Err(AssemblyError::UnknownSlot(SlotRef::new(c, 5)))
        );
        assert_eq!(
            g.add_gluing(SlotRef::new(s, 1), SlotRef::new(s, 1)),
            Err(AssemblyError::SlotInUse(SlotRef::new(s, 1)))
        );
    }

    #[test]
    fn empty_assembly_conventions() {
        let g = AssemblyGraph::new();
        assert!(g.is_closed());
        assert!(g.is_connected());
        assert_eq!(euler_characteristic(&g), 0);
        let r = verify(&g);
        assert!(r.passed());
        assert_eq!(r.sigma_total, Some(0));
    }

    #[test]
    fn core_pairs() {
        // Same orientation: Φ against Φ is illegal.
        let mut g = AssemblyGraph::new();
        let a = g.add_instance(core(), Sign::Plus);
        let b = g.add_instance(core(), Sign::Plus);
        assert!(matches!(
            g.add_gluing(SlotRef::new(a, 0), SlotRef::new(b, 0)),
            Err(AssemblyError::IllegalGluing { .. })
        ));
        // Opposite orientation closes up with χ = 2.
        let mut g = AssemblyGraph::new();
        let a = g.add_instance(core(), Sign::Plus);
        let b = g.add_instance(reversed(&core()), Sign::Plus);
        g.add_gluing(SlotRef::new(a, 0), SlotRef::new(b, 0))
            .unwrap();
        let r = verify(&g);
        assert!(r.passed());
        assert_eq!(r.chi_total, 2);
        assert_eq!(r.sigma_total, Some(0));
        assert_eq!(g.instances()[1].orientation, Sign::Minus);
    }

    #[test]
    fn core_splitter_three_caps() {
        let mut g = AssemblyGraph::new();
        let c = g.add_instance(core(), Sign::Plus);
        let s = g.add_instance(splitter(), Sign::Plus);
        g.add_gluing(SlotRef::new(c, 0), SlotRef::new(s, 0))
            .unwrap();
        for slot in 1..=3 {
            let k = g.add_instance(cap(), Sign::Minus);
            g.add_gluing(SlotRef::new(s, slot), SlotRef::new(k, 0))
                .unwrap();
        }
        let r = verify(&g);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.chi_total, 13);
        assert_eq!(r.sigma_total, Some(-1));
        assert!(r.conjecture_checks.iter().all(|c| c.holds == Some(true)));
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
    }

    #[test]
    fn open_slot_reported() {
        let mut g = AssemblyGraph::new();
        let c = g.add_instance(core(), Sign::Plus);
        let s = g.add_instance(splitter(), Sign::Plus);
        g.add_gluing(SlotRef::new(c, 0), SlotRef::new(s, 0))
            .unwrap();
        let r = verify(&g);
        assert!(!r.closed);
        assert!(r.legal);
        assert_eq!(r.open_slots.len(), 3);
        assert!(r.conjecture_checks.iter().all(|c| c.holds.is_none()));
    }

    #[test]
    fn signature_absent_with_untracked_block() {
        let mut g = AssemblyGraph::new();
        g.add_instance(genus_three_bundle(), Sign::Plus);
        assert_eq!(signature_sum(&g), None);
        let mut g = AssemblyGraph::new();
        g.add_instance(connector(&twist_a()), Sign::Plus);
        let s = signature_sum(&g).unwrap();
        assert_eq!(s.value, 0);
        assert_eq!(s.assumptions.len(), 1);
    }

    #[test]
    fn symbolic_words_normalize() {
        let w = SymbolicWord::new([("t".to_string(), 1), ("t".to_string(), -1), ("u".into(), 2)]);
        assert_eq!(w.to_string(), "u^2");
        assert_eq!(w.inverse().inverse(), w);
        assert_eq!(
            SymbolicWord::new([("t".to_string(), 0)]),
            SymbolicWord::default()
        );
    }
}
