//! Enumeration of the rigid immersed convex-corner polygons of a resolved
//! diagram, and assembly of the Chekanov-Eliashberg differential.
//!
//! A disc is found as a closed boundary word: a walk on the diagram that
//! starts and ends at a distinguished positive corner, passes straight
//! through crossings or turns through a single convex quadrant (a negative
//! corner), and whose face winding multiplicities are all nonnegative with
//! the unbounded face pinned to zero. A word is kept when exactly one corner
//! is positive (the distinguished one), the multiplicities stay within the
//! search budget, and the rigidity condition
//! `|a| - |b_1| - ... - |b_m| = 1` holds.
//!
//! Walks are carried out in the front plane with the disc on the left; the
//! reported corner order is with respect to the boundary orientation of the
//! Lagrangian projection, which reverses the front-plane walk.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::dga::{reduce, Action, AlgebraElement, Dga, DgaError, DSquaredReport, Generator};
use crate::diagram::{corner_quadrant, Arm, EdgeId, FaceId, LagrangianDiagram, VertexId};

/// Extra multiplicity explored beyond `max_mult` so that results rejected
/// purely by the budget can be reported as such.
const BUDGET_SLACK: i64 = 2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiscError {
    #[error("crossing `{0}` is not in the diagram")]
    Invalid(String),
    #[error(transparent)]
    Dga(#[from] DgaError),
}

/// One rigid disc with a single positive corner.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiscRecord {
    pub positive_corner: String,
    /// Negative corners in cyclic order along the boundary, starting after
    /// the positive corner.
    pub negative_corners: Vec<String>,
    /// Oriented boundary edges, same order as the corners.
    pub boundary_word: Vec<(EdgeId, bool)>,
    /// Nonzero face winding multiplicities.
    pub face_multiplicities: BTreeMap<FaceId, i64>,
}

/// Result of one disc search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub discs: BTreeSet<DiscRecord>,
    /// Set when a closing word was rejected only because its multiplicities
    /// exceeded `max_mult`; the result may be incomplete at this budget.
    pub budget_hit: bool,
}

/// The assembled Chekanov-Eliashberg algebra.
#[derive(Debug, Clone)]
pub struct Differential {
    pub dga: Dga,
    pub budget_hit: bool,
}

/// All discs with positive corner at the named crossing.
pub fn enumerate_discs(
    diag: &LagrangianDiagram,
    positive: &str,
    max_mult: u32,
) -> Result<Enumeration, DiscError> {
    enumerate_discs_seeded(diag, positive, max_mult, None)
}

/// As [`enumerate_discs`], with the branch exploration order shuffled by the
/// seed. The resulting disc set does not depend on the seed.
pub fn enumerate_discs_seeded(
    diag: &LagrangianDiagram,
    positive: &str,
    max_mult: u32,
    seed: Option<u64>,
) -> Result<Enumeration, DiscError> {
    let v = diag
        .crossing_by_name(positive)
        .ok_or_else(|| DiscError::Invalid(positive.to_string()))?;
    let mut search = Search {
        diag,
        max_mult: max_mult as i64,
        runs: vec![[0, 0]; diag.edges.len()],
        path: Vec::new(),
        corners: Vec::new(),
        discs: BTreeSet::new(),
        budget_hit: false,
        rng: seed,
    };
    // A positive corner sits in the W or E quadrant; boundary walks leave
    // along NW (for W) or SE (for E) and close arriving at SW / NE.
    for (exit, close) in [(Arm::NW, Arm::SW), (Arm::SE, Arm::NE)] {
        search.step_out(v, exit, v, close);
    }
    Ok(Enumeration {
        discs: search.discs,
        budget_hit: search.budget_hit,
    })
}

struct Search<'a> {
    diag: &'a LagrangianDiagram,
    max_mult: i64,
    /// Traversal counts per edge: [forward, backward].
    runs: Vec<[i64; 2]>,
    path: Vec<(EdgeId, bool)>,
    corners: Vec<VertexId>,
    discs: BTreeSet<DiscRecord>,
    budget_hit: bool,
    rng: Option<u64>,
}

impl Search<'_> {
    fn next_bit(&mut self) -> bool {
        match &mut self.rng {
            None => false,
            Some(state) => {
                // splitmix64
                *state = state.wrapping_add(0x9e3779b97f4a7c15);
                let mut z = *state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                (z ^ (z >> 31)) & 1 == 1
            }
        }
    }

    /// Leaves `v` along `out`, then explores every continuation.
    fn step_out(&mut self, v: VertexId, out: Arm, target: VertexId, close_arm: Arm) {
        let (edge_id, forward) = self.diag.edge_at(v, out);
        let e = &self.diag.edges[edge_id];
        let left = if forward { e.left } else { e.right };
        // A run with the unbounded face on its left is never part of a disc.
        if self.diag.faces[left].outer {
            return;
        }
        let slot = if forward { 0 } else { 1 };
        if self.runs[edge_id][slot] + 1 > self.max_mult + BUDGET_SLACK {
            return;
        }
        self.runs[edge_id][slot] += 1;
        self.path.push((edge_id, forward));

        let (w, in_arm) = if forward { e.to } else { e.from };
        self.arrive(w, in_arm, target, close_arm);

        self.path.pop();
        self.runs[edge_id][slot] -= 1;
    }

    /// Arrived at `w` along `in_arm`; closes and/or continues.
    fn arrive(&mut self, w: VertexId, in_arm: Arm, target: VertexId, close_arm: Arm) {
        if w == target && in_arm == close_arm {
            self.evaluate_closure(target, close_arm);
        }
        let corner_q = corner_quadrant(in_arm);
        let straight_first = !self.next_bit();
        for pick in 0..2 {
            let straight = (pick == 0) == straight_first;
            if straight {
                self.step_out(w, in_arm.opposite(), target, close_arm);
            } else if !corner_q.is_positive() {
                self.corners.push(w);
                self.step_out(w, in_arm.cw_next(), target, close_arm);
                self.corners.pop();
            }
        }
    }

    fn evaluate_closure(&mut self, target: VertexId, close_arm: Arm) {
        let mut net: BTreeMap<EdgeId, i64> = BTreeMap::new();
        for (id, counts) in self.runs.iter().enumerate() {
            if counts[0] != counts[1] {
                net.insert(id, counts[0] - counts[1]);
            }
        }
        let m = self.diag.solve_winding(&net);
        if m.iter().any(|&x| x < 0) {
            return;
        }
        let max_seen = m.iter().copied().max().unwrap_or(0);
        if max_seen > self.max_mult {
            // A genuine closing word beyond the budget.
            if self.rigidity_holds(target) {
                self.budget_hit = true;
            }
            return;
        }
        if !self.rigidity_holds(target) {
            return;
        }
        // Corners and boundary are reported in the boundary orientation of
        // the Lagrangian projection: the reverse of the front-plane walk.
        let negative_corners: Vec<String> = self
            .corners
            .iter()
            .rev()
            .map(|&v| self.diag.crossings[v].name.clone())
            .collect();
        let boundary_word: Vec<(EdgeId, bool)> = self
            .path
            .iter()
            .rev()
            .map(|&(e, fwd)| (e, !fwd))
            .collect();
        let face_multiplicities: BTreeMap<FaceId, i64> = m
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x != 0)
            .map(|(f, &x)| (f, x))
            .collect();
        let _ = close_arm;
        self.discs.insert(DiscRecord {
            positive_corner: self.diag.crossings[target].name.clone(),
            negative_corners,
            boundary_word,
            face_multiplicities,
        });
    }

    fn rigidity_holds(&self, target: VertexId) -> bool {
        let modulus = self.diag.modulus;
        let mut defect = self.diag.crossings[target].grading - 1;
        for &v in &self.corners {
            defect -= self.diag.crossings[v].grading;
        }
        reduce(defect, modulus) == 0
    }
}

/// Assembles the Chekanov-Eliashberg algebra of the resolved diagram: one
/// generator per crossing with its grading, and the mod-2 disc count as the
/// differential. Fails if the assembled differential does not square to
/// zero.
pub fn differential(diag: &LagrangianDiagram, max_mult: u32) -> Result<Differential, DiscError> {
    differential_seeded(diag, max_mult, None)
}

pub fn differential_seeded(
    diag: &LagrangianDiagram,
    max_mult: u32,
    seed: Option<u64>,
) -> Result<Differential, DiscError> {
    // Generators in name order, so that serialized output is stable.
    let mut order: Vec<VertexId> = (0..diag.crossings.len()).collect();
    order.sort_by(|&a, &b| diag.crossings[a].name.cmp(&diag.crossings[b].name));
    let generators: Vec<Generator> = order
        .iter()
        .map(|&v| {
            let c = &diag.crossings[v];
            Generator {
                name: c.name.clone(),
                grading: c.grading,
                action: c.action,
            }
        })
        .collect();
    let mut dga = Dga::new(generators, diag.modulus)?;
    let mut budget_hit = false;
    for &v in &order {
        let name = diag.crossings[v].name.clone();
        let en = enumerate_discs_seeded(diag, &name, max_mult, seed)?;
        budget_hit |= en.budget_hit;
        let mut element = AlgebraElement::zero();
        for disc in &en.discs {
            let word: Vec<usize> = disc
                .negative_corners
                .iter()
                .map(|n| dga.id_of(n).expect("corner names are generators"))
                .collect();
            element.toggle(word);
        }
        let id = dga.id_of(&name).unwrap();
        dga.set_diff(id, element);
    }
    dga.verify_degrees()?;
    if let DSquaredReport::Fails {
        generator,
        residual,
    } = dga.verify_d_squared()
    {
        return Err(DiscError::Dga(DgaError::DSquared {
            generator,
            residual,
        }));
    }
    if diag.crossings.iter().all(|c| c.action.is_some()) {
        // With a full set of actions the differential must strictly
        // decrease them; also checked per disc below.
        dga.verify_action_decreasing()?;
        for &v in &order {
            let name = &diag.crossings[v].name;
            let en = enumerate_discs_seeded(diag, name, max_mult, seed)?;
            for disc in &en.discs {
                let pos = diag.crossings[v].action.unwrap();
                let total: Action = disc
                    .negative_corners
                    .iter()
                    .map(|n| {
                        let id = diag.crossing_by_name(n).unwrap();
                        diag.crossings[id].action.unwrap()
                    })
                    .fold(Action::zero(), |a, b| a + b);
                if total >= pos {
                    return Err(DiscError::Dga(DgaError::ActionOrder(name.clone())));
                }
            }
        }
    }
    Ok(Differential { dga, budget_hit })
}
