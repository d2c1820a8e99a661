//! Shared test support: an independent conjugacy oracle and random
//! assemblies.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use aspherical_core::blocks::{
    cap, connector, core, custom, disk_bundle, six_cap, splitter, AssemblyGraph, Block,
    BoundaryLabel,
};
use aspherical_core::sl2z::{twist_a, twist_b, Sl2Matrix};
use aspherical_core::{labels_glueable, Sign};
use rand::seq::SliceRandom;
use rand::Rng;

pub type M = [i64; 4];

pub fn mul(x: M, y: M) -> M {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h]
}

pub fn inv(x: M) -> M {
    let [a, b, c, d] = x;
    [d, -b, -c, a]
}

pub const ID: M = [1, 0, 0, 1];

/// All SL(2,Z) matrices with entries in `[-r, r]`.
pub fn grid(r: i64) -> Vec<M> {
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                for d in -r..=r {
                    if a * d - b * c == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Brute-force conjugacy on a finite window of SL(2,Z).
///
/// Breadth-first search over the moves `X ↦ g⁻¹Xg` for `g ∈ {R^{±1}, L^{±1}}`
/// (which generate SL(2,Z)), never leaving matrices with entries bounded by
/// `bound`. Each grid matrix gets the index of the search tree it was
/// reached in and a conjugator `P` with `P⁻¹·root·P = X`.
pub struct ConjugacyOracle {
    pub bound: i64,
    pub component: HashMap<M, (usize, M)>,
    pub roots: Vec<M>,
    pub max_depth: usize,
}

impl ConjugacyOracle {
    pub fn build(targets: &[M], bound: i64) -> Self {
        let moves: [M; 4] = [[1, 1, 0, 1], [1, -1, 0, 1], [1, 0, 1, 1], [1, 0, -1, 1]];
        let mut seen: HashMap<M, (usize, M)> = HashMap::new();
        let mut roots = Vec::new();
        let mut max_depth = 0;
        for &t in targets {
            if seen.contains_key(&t) {
                continue;
            }
            let id = roots.len();
            roots.push(t);
            seen.insert(t, (id, ID));
            let mut queue = VecDeque::from([(t, ID, 0usize)]);
            while let Some((x, p, depth)) = queue.pop_front() {
                max_depth = max_depth.max(depth);
                for g in moves {
                    let y = mul(mul(inv(g), x), g);
                    if y.iter().any(|e| e.abs() > bound) || seen.contains_key(&y) {
                        continue;
                    }
                    let q = mul(p, g);
                    seen.insert(y, (id, q));
                    queue.push_back((y, q, depth + 1));
                }
            }
        }
        let component = targets.iter().map(|t| (*t, seen[t])).collect();
        ConjugacyOracle {
            bound,
            component,
            roots,
            max_depth,
        }
    }

    /// An explicit conjugator `Q` with `Q⁻¹·a·Q = b`, if the search found one.
    pub fn conjugator(&self, a: M, b: M) -> Option<M> {
        let (ca, pa) = self.component[&a];
        let (cb, pb) = self.component[&b];
        (ca == cb).then(|| mul(inv(pa), pb))
    }
}

pub fn to_matrix(m: M) -> Sl2Matrix {
    Sl2Matrix::new(m[0], m[1], m[2], m[3]).expect("determinant one")
}

/// A random word in `R^{±1}, L^{±1}` of length up to `len`.
pub fn random_sl2<R: Rng>(rng: &mut R, len: usize) -> Sl2Matrix {
    let gens = [
        Sl2Matrix::r_power(1),
        Sl2Matrix::r_power(-1),
        Sl2Matrix::l_power(1),
        Sl2Matrix::l_power(-1),
    ];
    let n = rng.gen_range(0..=len);
    let m = (0..n).fold(Sl2Matrix::identity(), |acc, _| {
        &acc * gens.choose(rng).unwrap()
    });
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

/// A random hyperbolic matrix: a positive R/L word containing both
/// letters, with random sign, conjugated by a random element.
pub fn random_hyperbolic<R: Rng>(rng: &mut R) -> Sl2Matrix {
    let n = rng.gen_range(2..=8);
    let mut word: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    word[0] = true;
    word[1] = false;
    let positive = word.iter().fold(Sl2Matrix::identity(), |acc, &r| {
        &acc * &if r {
            Sl2Matrix::r_power(1)
        } else {
            Sl2Matrix::l_power(1)
        }
    });
    let signed = if rng.gen_bool(0.5) {
        positive
    } else {
        -positive
    };
    let p = random_sl2(rng, 6);
    signed.conjugate_by(&p)
}

fn random_label<R: Rng>(rng: &mut R) -> BoundaryLabel {
    let pool = [
        twist_a(),
        twist_b(),
        aspherical_core::sl2z::phi(),
        Sl2Matrix::new(2, 1, 1, 1).unwrap(),
    ];
    let m = pool.choose(rng).unwrap().clone();
    let m = if rng.gen_bool(0.5) { m } else { m.inverse() };
    let sign = if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    BoundaryLabel::torus_bundle(&m).oriented(sign)
}

pub fn random_block<R: Rng>(rng: &mut R) -> Block {
    match rng.gen_range(0..7) {
        0 => core(),
        1 => splitter(),
        2 => cap(),
        3 => six_cap(),
        4 => {
            let psi = [
                twist_a(),
                Sl2Matrix::new(2, 1, 1, 1).unwrap(),
                twist_b().inverse(),
            ];
            connector(psi.choose(rng).unwrap())
        }
        5 => {
            let n = rng.gen_range(1..=3);
            disk_bundle((0..n).map(|_| random_sl2(rng, 3)).collect())
        }
        _ => {
            let n = rng.gen_range(1..=3);
            let labels = (0..n).map(|_| random_label(rng)).collect();
            let sigma = rng.gen_bool(0.7).then(|| rng.gen_range(-3..=3));
            custom("X", rng.gen_range(-5..=10), sigma, labels)
        }
    }
}

/// Random blocks with random orientations, then greedy legal gluings
/// between randomly ordered open slots.
pub fn random_assembly<R: Rng>(rng: &mut R, max_blocks: usize) -> AssemblyGraph {
    let mut g = AssemblyGraph::new();
    let n = rng.gen_range(0..=max_blocks);
    for _ in 0..n {
        let sign = if rng.gen_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let block = random_block(rng);
        g.add_instance(block, sign);
    }
    let mut open = g.open_slots();
    open.shuffle(rng);
    while let Some(a) = open.pop() {
        let la = g.slot_label(a).unwrap();
        let partner = open
            .iter()
            .position(|&b| labels_glueable(&la, &g.slot_label(b).unwrap()) && rng.gen_bool(0.8));
        if let Some(i) = partner {
            let b = open.swap_remove(i);
            g.add_gluing(a, b).expect("checked glueable");
        }
    }
    g
}
