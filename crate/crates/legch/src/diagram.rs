//! Resolution of a front into a Lagrangian projection diagram: graded
//! crossings (one per front crossing, one per right cusp), oriented arcs
//! between them, and the planar face structure used by the disc search.
//!
//! Each crossing is a 4-valent vertex with arms NE, NW, SW, SE in the front
//! plane. The strand descending from upper-left to lower-right runs along the
//! NW-SE diagonal; it is the over-strand of the resolved diagram. A right
//! cusp resolves into a crossing whose NE and SE arms are joined by a small
//! loop on the right.

use std::collections::BTreeMap;
use std::fmt;

use crate::dga::reduce;
use crate::front::{Action, EventInfo, FrontDiagram, FrontError};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingKind {
    FrontCrossing,
    RightCusp,
}

/// A double point of the resolved diagram; these are the Reeb chords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub name: String,
    pub grading: i64,
    pub action: Option<Action>,
    pub kind: CrossingKind,
    /// 0-based event index in the front.
    pub column: usize,
    /// Link components of the two strands (over, under).
    pub over_component: usize,
    pub under_component: usize,
}

impl Crossing {
    pub fn is_pure(&self) -> bool {
        self.over_component == self.under_component
    }
}

/// The four arms of a vertex, in counterclockwise order NE, NW, SW, SE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arm {
    NE = 0,
    NW = 1,
    SW = 2,
    SE = 3,
}

pub const ARMS: [Arm; 4] = [Arm::NE, Arm::NW, Arm::SW, Arm::SE];

impl Arm {
    pub fn ccw_next(self) -> Arm {
        match self {
            Arm::NE => Arm::NW,
            Arm::NW => Arm::SW,
            Arm::SW => Arm::SE,
            Arm::SE => Arm::NE,
        }
    }

    pub fn cw_next(self) -> Arm {
        match self {
            Arm::NE => Arm::SE,
            Arm::NW => Arm::NE,
            Arm::SW => Arm::NW,
            Arm::SE => Arm::SW,
        }
    }

    pub fn opposite(self) -> Arm {
        match self {
            Arm::NE => Arm::SW,
            Arm::NW => Arm::SE,
            Arm::SW => Arm::NE,
            Arm::SE => Arm::NW,
        }
    }
}

/// The four quadrants around a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrant {
    N = 0,
    E = 1,
    S = 2,
    W = 3,
}

pub const QUADRANTS: [Quadrant; 4] = [Quadrant::N, Quadrant::E, Quadrant::S, Quadrant::W];

impl Quadrant {
    /// The boundary lift jumps up (positive puncture) exactly at the two
    /// quadrants swept entering along the under-strand and leaving along the
    /// over-strand.
    pub fn is_positive(self) -> bool {
        matches!(self, Quadrant::E | Quadrant::W)
    }
}

/// Quadrant filled by a convex left turn entered inbound along `arm`.
pub fn corner_quadrant(inbound: Arm) -> Quadrant {
    match inbound {
        Arm::SW => Quadrant::W,
        Arm::NE => Quadrant::E,
        Arm::NW => Quadrant::N,
        Arm::SE => Quadrant::S,
    }
}

/// Face on the left when walking away from the vertex along `arm`.
fn outbound_left(arm: Arm) -> Quadrant {
    match arm {
        Arm::NE => Quadrant::N,
        Arm::NW => Quadrant::W,
        Arm::SW => Quadrant::S,
        Arm::SE => Quadrant::E,
    }
}

/// Face on the left when walking into the vertex along `arm`.
fn inbound_left(arm: Arm) -> Quadrant {
    match arm {
        Arm::NE => Quadrant::E,
        Arm::NW => Quadrant::N,
        Arm::SW => Quadrant::W,
        Arm::SE => Quadrant::S,
    }
}

/// An arc of the resolved diagram between two crossing arms (possibly the
/// loop at a right cusp, or an arc running through left cusps).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    /// Exit endpoint: the arc leaves this vertex along this arm.
    pub from: (VertexId, Arm),
    /// Entry endpoint: the arc runs into this vertex along this arm.
    pub to: (VertexId, Arm),
    /// Link component the arc belongs to.
    pub component: usize,
    /// Face on the left / right when traversed from `from` to `to`.
    pub left: FaceId,
    pub right: FaceId,
}

/// A complementary region of the resolved diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub outer: bool,
    /// Corners of the face: (vertex, quadrant) pairs touching it.
    pub corners: Vec<(VertexId, Quadrant)>,
}

/// Resolved Lagrangian projection diagram with planar face structure.
#[derive(Debug, Clone)]
pub struct LagrangianDiagram {
    pub crossings: Vec<Crossing>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    /// Maslov/grading modulus: 0 for Z-gradings.
    pub modulus: i64,
    /// Number of link components.
    pub n_components: usize,
    /// Per vertex and arm: which edge is attached, and whether the vertex is
    /// the `from` end of it.
    arms: Vec<[(EdgeId, bool); 4]>,
    /// Per vertex: face of each quadrant, indexed by `Quadrant as usize`.
    quadrant_face: Vec<[FaceId; 4]>,
    outer_face: FaceId,
    /// Connected component of the 4-valent diagram each vertex belongs to.
    diagram_component: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl LagrangianDiagram {
    /// Resolves a validated front diagram.
    pub fn resolve(front: &FrontDiagram) -> Result<LagrangianDiagram, FrontError> {
        let a = front.analyze()?;
        let n_events = front.events.len();

        // Vertices: one per front crossing (in event order: b1..bm) and one
        // per right cusp (a1..an).
        let mut crossings: Vec<Crossing> = Vec::new();
        let mut vertex_of_event: Vec<Option<VertexId>> = vec![None; n_events];
        let mut cross_vertices = Vec::new();
        let mut cusp_vertices = Vec::new();
        for (i, info) in a.infos.iter().enumerate() {
            match *info {
                EventInfo::Cross { desc, asc } => {
                    cross_vertices.push((i, desc, asc));
                }
                EventInfo::RCusp { upper, lower } => {
                    cusp_vertices.push((i, upper, lower));
                }
                EventInfo::LCusp { .. } => {}
            }
        }
        for (n, &(i, desc, asc)) in cross_vertices.iter().enumerate() {
            let name = format!("b{}", n + 1);
            let grading = reduce(a.potential[desc] - a.potential[asc], a.modulus);
            vertex_of_event[i] = Some(crossings.len());
            crossings.push(Crossing {
                name,
                grading,
                action: None,
                kind: CrossingKind::FrontCrossing,
                column: i,
                over_component: a.component[desc],
                under_component: a.component[asc],
            });
        }
        for (n, &(i, upper, _lower)) in cusp_vertices.iter().enumerate() {
            let name = format!("a{}", n + 1);
            vertex_of_event[i] = Some(crossings.len());
            crossings.push(Crossing {
                name,
                grading: reduce(1, a.modulus),
                action: None,
                kind: CrossingKind::RightCusp,
                column: i,
                over_component: a.component[upper],
                under_component: a.component[upper],
            });
        }
        for c in &mut crossings {
            c.action = front.actions.get(&c.name).copied();
        }

        // Faces by union-find over slab regions. Region key: (slab, gap),
        // gap 0 above all strands. Right-cusp lobes are extra fresh regions.
        let mut key_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut next = 0usize;
        for (slab, strands) in a.slabs.iter().enumerate() {
            for gap in 0..=strands.len() {
                key_index.insert((slab, gap), next);
                next += 1;
            }
        }
        let n_vertices = crossings.len();
        let lobe_index_of: BTreeMap<VertexId, usize> = (0..n_vertices)
            .filter(|&v| crossings[v].kind == CrossingKind::RightCusp)
            .map(|v| {
                let idx = next;
                next += 1;
                (v, idx)
            })
            .collect();
        let mut uf = UnionFind::new(next);
        let key = |slab: usize, gap: usize| -> usize { key_index[&(slab, gap)] };
        for (i, info) in a.infos.iter().enumerate() {
            let (left, right) = (i, i + 1);
            let count_l = a.slabs[left].len();
            match *info {
                EventInfo::LCusp { upper, .. } => {
                    let p = a.slabs[right].iter().position(|&s| s == upper).unwrap();
                    for g in 0..=p {
                        uf.union(key(left, g), key(right, g));
                    }
                    for g in p + 1..=count_l {
                        uf.union(key(left, g), key(right, g + 2));
                    }
                    // The ambient region wraps around the cusp point.
                    uf.union(key(left, p), key(right, p + 2));
                    // key(right, p + 1) is the fresh cusp interior.
                }
                EventInfo::RCusp { upper, .. } => {
                    let p = a.slabs[left].iter().position(|&s| s == upper).unwrap();
                    for g in 0..=p {
                        uf.union(key(left, g), key(right, g));
                    }
                    for g in p + 3..=count_l {
                        uf.union(key(left, g), key(right, g - 2));
                    }
                    uf.union(key(left, p + 2), key(right, p));
                    // key(left, p + 1) is pinched at the new crossing.
                }
                EventInfo::Cross { desc, .. } => {
                    let p = a.slabs[left].iter().position(|&s| s == desc).unwrap();
                    for g in 0..=count_l {
                        if g != p + 1 {
                            uf.union(key(left, g), key(right, g));
                        }
                    }
                }
            }
        }

        // Quadrant faces per vertex, in union-find root terms first.
        let mut quadrant_root = vec![[usize::MAX; 4]; n_vertices];
        for (i, info) in a.infos.iter().enumerate() {
            let Some(v) = vertex_of_event[i] else { continue };
            let left = i;
            match *info {
                EventInfo::Cross { desc, .. } => {
                    let p = a.slabs[left].iter().position(|&s| s == desc).unwrap();
                    quadrant_root[v][Quadrant::N as usize] = uf.find(key(left, p));
                    quadrant_root[v][Quadrant::W as usize] = uf.find(key(left, p + 1));
                    quadrant_root[v][Quadrant::S as usize] = uf.find(key(left, p + 2));
                    quadrant_root[v][Quadrant::E as usize] = uf.find(key(left + 1, p + 1));
                }
                EventInfo::RCusp { upper, .. } => {
                    let p = a.slabs[left].iter().position(|&s| s == upper).unwrap();
                    quadrant_root[v][Quadrant::N as usize] = uf.find(key(left, p));
                    quadrant_root[v][Quadrant::W as usize] = uf.find(key(left, p + 1));
                    quadrant_root[v][Quadrant::S as usize] = uf.find(key(left, p + 2));
                    quadrant_root[v][Quadrant::E as usize] = uf.find(lobe_index_of[&v]);
                }
                EventInfo::LCusp { .. } => unreachable!(),
            }
        }
        let outer_root = uf.find(key(0, 0));

        // Compact face ids: outer face first, the rest ordered by root.
        let mut roots: Vec<usize> = quadrant_root
            .iter()
            .flat_map(|q| q.iter().copied())
            .chain(std::iter::once(outer_root))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.retain(|&r| r != outer_root);
        let mut face_of_root: BTreeMap<usize, FaceId> = BTreeMap::new();
        face_of_root.insert(outer_root, 0);
        for (n, &r) in roots.iter().enumerate() {
            face_of_root.insert(r, n + 1);
        }
        let n_faces = face_of_root.len();
        let quadrant_face: Vec<[FaceId; 4]> = quadrant_root
            .iter()
            .map(|q| {
                [
                    face_of_root[&q[0]],
                    face_of_root[&q[1]],
                    face_of_root[&q[2]],
                    face_of_root[&q[3]],
                ]
            })
            .collect();
        let outer_face: FaceId = 0;

        // Trace each component once to lay down the arcs. Crossing passages
        // per strand, in column order.
        let mut passages: Vec<Vec<(usize, VertexId, bool)>> = vec![Vec::new(); a.n_strands];
        for (i, info) in a.infos.iter().enumerate() {
            if let EventInfo::Cross { desc, asc } = *info {
                let v = vertex_of_event[i].unwrap();
                passages[desc].push((i, v, true));
                passages[asc].push((i, v, false));
            }
        }
        let mut birth_event = vec![usize::MAX; a.n_strands];
        let mut death_event = vec![usize::MAX; a.n_strands];
        let mut birth_partner = vec![usize::MAX; a.n_strands];
        let mut death_partner = vec![usize::MAX; a.n_strands];
        for (i, info) in a.infos.iter().enumerate() {
            match *info {
                EventInfo::LCusp { upper, lower } => {
                    birth_event[upper] = i;
                    birth_event[lower] = i;
                    birth_partner[upper] = lower;
                    birth_partner[lower] = upper;
                }
                EventInfo::RCusp { upper, lower } => {
                    death_event[upper] = i;
                    death_event[lower] = i;
                    death_partner[upper] = lower;
                    death_partner[lower] = upper;
                }
                EventInfo::Cross { .. } => {}
            }
        }

        let mut edges: Vec<Edge> = Vec::new();
        let mut arms: Vec<[(EdgeId, bool); 4]> = vec![[(usize::MAX, false); 4]; n_vertices];
        let mut seen_strand = vec![false; a.n_strands];
        for start in 0..a.n_strands {
            if seen_strand[start] {
                continue;
            }
            let comp = a.component[start];
            // Walk the closed curve, collecting (vertex, arm, is_exit).
            let mut points: Vec<(VertexId, Arm, bool)> = Vec::new();
            let mut strand = start;
            let mut rightward = true;
            let mut column = birth_event[start] as i64;
            loop {
                seen_strand[strand] = true;
                if rightward {
                    let next_passage = passages[strand]
                        .iter()
                        .find(|&&(col, _, _)| (col as i64) > column);
                    if let Some(&(col, v, is_desc)) = next_passage {
                        let (enter, exit) = if is_desc {
                            (Arm::NW, Arm::SE)
                        } else {
                            (Arm::SW, Arm::NE)
                        };
                        points.push((v, enter, false));
                        points.push((v, exit, true));
                        column = col as i64;
                    } else {
                        // Right cusp: pass the crossing, run the loop, pass
                        // again, and continue left on the partner strand.
                        let ev = death_event[strand];
                        let v = vertex_of_event[ev].unwrap();
                        let upper = matches!(a.infos[ev], EventInfo::RCusp { upper, .. } if upper == strand);
                        if upper {
                            points.push((v, Arm::NW, false));
                            points.push((v, Arm::SE, true));
                            points.push((v, Arm::NE, false));
                            points.push((v, Arm::SW, true));
                        } else {
                            points.push((v, Arm::SW, false));
                            points.push((v, Arm::NE, true));
                            points.push((v, Arm::SE, false));
                            points.push((v, Arm::NW, true));
                        }
                        strand = death_partner[strand];
                        rightward = false;
                        column = ev as i64;
                    }
                } else {
                    let next_passage = passages[strand]
                        .iter()
                        .rev()
                        .find(|&&(col, _, _)| (col as i64) < column);
                    if let Some(&(col, v, is_desc)) = next_passage {
                        let (enter, exit) = if is_desc {
                            (Arm::SE, Arm::NW)
                        } else {
                            (Arm::NE, Arm::SW)
                        };
                        points.push((v, enter, false));
                        points.push((v, exit, true));
                        column = col as i64;
                    } else {
                        // Left cusp: smooth turn onto the partner strand.
                        let ev = birth_event[strand];
                        let partner = birth_partner[strand];
                        if partner == start && seen_strand[partner] {
                            break;
                        }
                        strand = partner;
                        rightward = true;
                        column = ev as i64;
                    }
                }
            }
            // Pair each exit with the following entry (cyclically).
            debug_assert_eq!(points.len() % 2, 0);
            let exits: Vec<usize> = (0..points.len()).filter(|&i| points[i].2).collect();
            for &i in &exits {
                let j = (i + 1) % points.len();
                debug_assert!(!points[j].2);
                let (fv, fa, _) = points[i];
                let (tv, ta, _) = points[j];
                let id = edges.len();
                let lq = quadrant_face[fv][outbound_left(fa) as usize];
                debug_assert_eq!(lq, quadrant_face[tv][inbound_left(ta) as usize]);
                let rq = quadrant_face[fv][outbound_left(fa).opposite_side(fa) as usize];
                edges.push(Edge {
                    id,
                    from: (fv, fa),
                    to: (tv, ta),
                    component: comp,
                    left: lq,
                    right: rq,
                });
                arms[fv][fa as usize] = (id, true);
                arms[tv][ta as usize] = (id, false);
            }
        }
        debug_assert!(arms
            .iter()
            .all(|quad| quad.iter().all(|&(e, _)| e != usize::MAX)));

        // Face corner lists.
        let mut faces: Vec<Face> = (0..n_faces)
            .map(|id| Face {
                id,
                outer: id == outer_face,
                corners: Vec::new(),
            })
            .collect();
        for v in 0..n_vertices {
            for q in QUADRANTS {
                faces[quadrant_face[v][q as usize]].corners.push((v, q));
            }
        }

        // Connected components of the diagram graph.
        let mut duf = UnionFind::new(n_vertices.max(1));
        for e in &edges {
            duf.union(e.from.0, e.to.0);
        }
        let mut diagram_component = vec![0usize; n_vertices];
        let mut root_map = BTreeMap::new();
        for (v, slot) in diagram_component.iter_mut().enumerate() {
            let r = duf.find(v);
            let n = root_map.len();
            *slot = *root_map.entry(r).or_insert(n);
        }

        Ok(LagrangianDiagram {
            crossings,
            edges,
            faces,
            modulus: a.modulus,
            n_components: a.n_components,
            arms,
            quadrant_face,
            outer_face,
            diagram_component,
        })
    }

    pub fn crossing_by_name(&self, name: &str) -> Option<VertexId> {
        self.crossings.iter().position(|c| c.name == name)
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer_face
    }

    pub fn quadrant_face(&self, v: VertexId, q: Quadrant) -> FaceId {
        self.quadrant_face[v][q as usize]
    }

    /// Edge attached at the given arm, plus whether `v` is its exit end.
    pub fn edge_at(&self, v: VertexId, arm: Arm) -> (EdgeId, bool) {
        self.arms[v][arm as usize]
    }

    pub fn diagram_component(&self, v: VertexId) -> usize {
        self.diagram_component[v]
    }

    pub fn n_diagram_components(&self) -> usize {
        self.diagram_component.iter().max().map_or(0, |m| m + 1)
    }

    /// Euler characteristic `V - E + F` of one connected diagram component,
    /// with faces counted as orbits of the rotation system.
    pub fn euler_characteristic(&self, diagram_component: usize) -> i64 {
        let vs: Vec<VertexId> = (0..self.crossings.len())
            .filter(|&v| self.diagram_component[v] == diagram_component)
            .collect();
        let es: Vec<&Edge> = self
            .edges
            .iter()
            .filter(|e| self.diagram_component[e.from.0] == diagram_component)
            .collect();
        // Directed edges: (edge, forward?). Face traversal: arrive inbound at
        // an arm, continue outbound along its clockwise neighbour.
        let mut visited: BTreeMap<(EdgeId, bool), bool> = BTreeMap::new();
        for e in &es {
            visited.insert((e.id, true), false);
            visited.insert((e.id, false), false);
        }
        let mut orbits = 0i64;
        let keys: Vec<(EdgeId, bool)> = visited.keys().copied().collect();
        for start in keys {
            if visited[&start] {
                continue;
            }
            orbits += 1;
            let mut cur = start;
            loop {
                *visited.get_mut(&cur).unwrap() = true;
                let e = &self.edges[cur.0];
                let (v, arm_in) = if cur.1 { e.to } else { e.from };
                let out = arm_in.cw_next();
                let (ne, from_here) = self.edge_at(v, out);
                let next = (ne, from_here);
                if next == start {
                    break;
                }
                cur = next;
            }
        }
        vs.len() as i64 - es.len() as i64 + orbits
    }

    /// Solves for face multiplicities of a closed walk given the net number
    /// of forward-minus-backward traversals of each edge. The outer face is
    /// pinned to zero.
    pub fn solve_winding(&self, net: &BTreeMap<EdgeId, i64>) -> Vec<i64> {
        let n = self.faces.len();
        let mut m = vec![i64::MIN; n];
        m[self.outer_face] = 0;
        let mut stack = vec![self.outer_face];
        // Adjacency: m[left] - m[right] = net(e).
        let mut adj: Vec<Vec<(FaceId, i64)>> = vec![Vec::new(); n];
        for e in &self.edges {
            let d = net.get(&e.id).copied().unwrap_or(0);
            adj[e.left].push((e.right, -d));
            adj[e.right].push((e.left, d));
        }
        while let Some(f) = stack.pop() {
            let base = m[f];
            for &(g, delta) in &adj[f] {
                let value = base + delta;
                if m[g] == i64::MIN {
                    m[g] = value;
                    stack.push(g);
                } else {
                    debug_assert_eq!(m[g], value, "winding inconsistency");
                }
            }
        }
        debug_assert!(m.iter().all(|&x| x != i64::MIN));
        m
    }
}

impl Quadrant {
    /// Given the quadrant on the left of an outbound arm, the quadrant on the
    /// right is the other one adjacent to the same arm.
    fn opposite_side(self, arm: Arm) -> Quadrant {
        // The two quadrants adjacent to an arm.
        let (a, b) = match arm {
            Arm::NE => (Quadrant::N, Quadrant::E),
            Arm::NW => (Quadrant::N, Quadrant::W),
            Arm::SW => (Quadrant::S, Quadrant::W),
            Arm::SE => (Quadrant::S, Quadrant::E),
        };
        if self == a {
            b
        } else {
            debug_assert_eq!(self, b);
            a
        }
    }
}

impl fmt::Display for LagrangianDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.crossings {
            write!(f, "{} : {}", c.name, c.grading)?;
            if self.modulus != 0 {
                write!(f, " (mod {})", self.modulus)?;
            }
            writeln!(
                f,
                " : {}",
                match c.kind {
                    CrossingKind::FrontCrossing => "crossing",
                    CrossingKind::RightCusp => "cusp",
                }
            )?;
        }
        Ok(())
    }
}
