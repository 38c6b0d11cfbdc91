//! Planar subdivision induced by a set of segments, built with exact
//! arithmetic. Overlapping collinear input portions are merged into one
//! arrangement edge; every edge remembers which input segments cover it.

use super::primitives::{
    pseudo_angle_cmp, segment_intersection, Line, Point, SegInter, Segment,
};
use super::rat::Rat;
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Clone, Debug)]
pub struct SubEdge {
    pub v0: VertexId,
    pub v1: VertexId,
    /// Face on the left of the directed edge v0 -> v1.
    pub left: FaceId,
    /// Face on the right.
    pub right: FaceId,
    /// Indices of the input segments covering this edge.
    pub covers: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Half {
    origin: VertexId,
    target: VertexId,
    edge: EdgeId,
    twin: usize,
    next: usize,
    face: FaceId,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// Counterclockwise outer cycle (half-edge ids); None for the unbounded face.
    pub outer: Option<Vec<usize>>,
    /// Cycles bounding this face from inside (component outer walks, slits).
    pub holes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Vertex(VertexId),
    Edge(EdgeId),
    Face(FaceId),
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub vertices: Vec<Point>,
    pub edges: Vec<SubEdge>,
    pub faces: Vec<Face>,
    pub unbounded: FaceId,
    halves: Vec<Half>,
    vertex_index: BTreeMap<Point, VertexId>,
}

impl Subdivision {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Total half-edges over all boundary cycles of the face.
    pub fn face_walk_len(&self, f: FaceId) -> usize {
        let face = &self.faces[f];
        face.outer.as_ref().map_or(0, |c| c.len())
            + face.holes.iter().map(|c| c.len()).sum::<usize>()
    }

    /// Vertex list of a cycle given by half-edge ids (origins, in walk order).
    pub fn cycle_points(&self, cycle: &[usize]) -> Vec<Point> {
        cycle
            .iter()
            .map(|&h| self.vertices[self.halves[h].origin].clone())
            .collect()
    }

    pub fn locate(&self, p: &Point) -> Location {
        if let Some(&v) = self.vertex_index.get(p) {
            return Location::Vertex(v);
        }
        for (id, e) in self.edges.iter().enumerate() {
            let seg = Segment::new(
                self.vertices[e.v0].clone(),
                self.vertices[e.v1].clone(),
            );
            if seg.contains(p) {
                return Location::Edge(id);
            }
        }
        Location::Face(self.face_containing(p))
    }

    /// Innermost positive cycle strictly containing p; unbounded face if none.
    /// Assumes p is not on any edge or vertex.
    fn face_containing(&self, p: &Point) -> FaceId {
        let mut best: Option<(Rat, FaceId)> = None;
        for (id, face) in self.faces.iter().enumerate() {
            let Some(cycle) = &face.outer else { continue };
            if self.cycle_strictly_contains(cycle, p) {
                let area = self.cycle_area2(cycle);
                if best.as_ref().map_or(true, |(a, _)| &area < a) {
                    best = Some((area, id));
                }
            }
        }
        best.map_or(self.unbounded, |(_, id)| id)
    }

    pub fn cycle_area2(&self, cycle: &[usize]) -> Rat {
        let mut acc = Rat::zero();
        for &h in cycle {
            let o = &self.vertices[self.halves[h].origin];
            let t = &self.vertices[self.halves[h].target];
            acc += &(&o.x * &t.y) - &(&o.y * &t.x);
        }
        acc
    }

    /// Crossing-parity containment of p against the cycle walk. Spur edges
    /// (walked twice in opposite directions) cancel.
    fn cycle_strictly_contains(&self, cycle: &[usize], p: &Point) -> bool {
        let mut inside = false;
        for &h in cycle {
            let a = &self.vertices[self.halves[h].origin];
            let b = &self.vertices[self.halves[h].target];
            let (lo, hi) = if a.y < b.y { (a, b) } else { (b, a) };
            if p.y >= lo.y && p.y < hi.y {
                let side = super::primitives::orient(lo, hi, p);
                if side > 0 {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// A point strictly inside a bounded face, found by casting a ray inward
    /// from the midpoint of a boundary edge and stopping halfway to the first
    /// obstruction. Exact.
    pub fn face_interior_point(&self, f: FaceId) -> Point {
        let face = &self.faces[f];
        let cycle = face
            .outer
            .as_ref()
            .expect("interior point of the unbounded face");
        let h = cycle[0];
        let o = &self.vertices[self.halves[h].origin];
        let t = &self.vertices[self.halves[h].target];
        let two = Rat::int(2);
        let mid = Point::new(&(&o.x + &t.x) / &two, &(&o.y + &t.y) / &two);
        // Left normal of o->t points into the face.
        let nx = -(&(&t.y - &o.y));
        let ny = &t.x - &o.x;
        let base_edge = self.halves[h].edge;

        let mut smallest: Option<Rat> = None;
        let mut consider = |s: Rat| {
            if s.is_positive() && smallest.as_ref().map_or(true, |m| &s < m) {
                smallest = Some(s);
            }
        };
        // Ray: mid + s·n. Intersect with every other edge and vertex.
        for (id, e) in self.edges.iter().enumerate() {
            if id == base_edge {
                continue;
            }
            let a = &self.vertices[e.v0];
            let b = &self.vertices[e.v1];
            // Solve mid + s*n = a + u*(b-a), 0 <= u <= 1.
            let ex = &b.x - &a.x;
            let ey = &b.y - &a.y;
            let det = &(&nx * &ey) - &(&ny * &ex);
            let rx = &a.x - &mid.x;
            let ry = &a.y - &mid.y;
            if det.is_zero() {
                // Parallel; if collinear, endpoints act as obstructions below.
                continue;
            }
            let s = (&(&rx * &ey) - &(&ry * &ex)) / det.clone();
            let u = (&(&rx * &ny) - &(&ry * &nx)) / det;
            if u >= Rat::zero() && u <= Rat::one() {
                consider(s);
            }
        }
        for v in &self.vertices {
            // Vertex on the ray: v = mid + s*n for some s.
            let rx = &v.x - &mid.x;
            let ry = &v.y - &mid.y;
            if (&(&nx * &ry) - &(&ny * &rx)).is_zero() {
                let s = if nx.is_zero() { ry / ny.clone() } else { rx / nx.clone() };
                consider(s);
            }
        }
        let step = smallest.expect("inward ray must hit the boundary of a bounded face") / two;
        Point::new(&mid.x + &(&nx * &step), &mid.y + &(&ny * &step))
    }

    /// All (edge id, left face, right face) triples.
    pub fn edge_faces(&self) -> impl Iterator<Item = (EdgeId, FaceId, FaceId)> + '_ {
        self.edges.iter().enumerate().map(|(i, e)| (i, e.left, e.right))
    }
}

/// Build the subdivision induced by `segments`. Coincident/overlapping
/// collinear portions become a single edge covered by all involved inputs.
pub fn build_subdivision(segments: &[Segment]) -> Subdivision {
    // Group input segments by canonical supporting line.
    let mut by_line: BTreeMap<LineKey, Vec<usize>> = BTreeMap::new();
    for (i, s) in segments.iter().enumerate() {
        by_line.entry(LineKey::of(&s.line())).or_default().push(i);
    }

    // Per line, find all cut parameters: segment endpoints on the line plus
    // crossings with segments from other lines.
    let mut atomic: Vec<(Point, Point, Vec<usize>)> = Vec::new();
    for (key, members) in &by_line {
        let line = key.to_line();
        let axis_key = |p: &Point| -> Rat {
            if line.b.is_zero() {
                p.y.clone()
            } else {
                p.x.clone()
            }
        };
        let mut cuts: Vec<Rat> = Vec::new();
        let mut intervals: Vec<(Rat, Rat, usize)> = Vec::new();
        for &i in members {
            let s = &segments[i];
            let (mut t0, mut t1) = (axis_key(&s.a), axis_key(&s.b));
            if t0 > t1 {
                std::mem::swap(&mut t0, &mut t1);
            }
            cuts.push(t0.clone());
            cuts.push(t1.clone());
            intervals.push((t0, t1, i));
        }
        for (other_key, other_members) in &by_line {
            if other_key == key {
                continue;
            }
            for &j in other_members {
                for &i in members {
                    match segment_intersection(&segments[i], &segments[j]) {
                        SegInter::Point(p) => cuts.push(axis_key(&p)),
                        SegInter::Overlap(_, _) => unreachable!("distinct lines"),
                        SegInter::None => {}
                    }
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        let param_point = |t: &Rat| -> Point {
            // Point on the line with dominant coordinate t.
            if line.b.is_zero() {
                // a·x + c = 0 with a = 1 canonical
                Point::new(-(&line.c) / line.a.clone(), t.clone())
            } else {
                let x = t.clone();
                let y = (-(&line.c) - &(&line.a * &x)) / line.b.clone();
                Point::new(x, y)
            }
        };
        for w in cuts.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let midt = &(lo + hi) / &Rat::int(2);
            let covers: Vec<usize> = intervals
                .iter()
                .filter(|(t0, t1, _)| t0 <= &midt && &midt <= t1)
                .map(|(_, _, i)| *i)
                .collect();
            if !covers.is_empty() {
                atomic.push((param_point(lo), param_point(hi), covers));
            }
        }
    }

    // Intern vertices, create edge records and half-edges.
    let mut vertex_index: BTreeMap<Point, VertexId> = BTreeMap::new();
    let mut vertices: Vec<Point> = Vec::new();
    let mut intern = |p: Point, vertices: &mut Vec<Point>| -> VertexId {
        if let Some(&id) = vertex_index.get(&p) {
            return id;
        }
        let id = vertices.len();
        vertex_index.insert(p.clone(), id);
        vertices.push(p);
        id
    };

    let mut edges: Vec<SubEdge> = Vec::new();
    let mut halves: Vec<Half> = Vec::new();
    for (pa, pb, covers) in atomic {
        let va = intern(pa, &mut vertices);
        let vb = intern(pb, &mut vertices);
        let e = edges.len();
        let h0 = halves.len();
        halves.push(Half {
            origin: va,
            target: vb,
            edge: e,
            twin: h0 + 1,
            next: usize::MAX,
            face: usize::MAX,
        });
        halves.push(Half {
            origin: vb,
            target: va,
            edge: e,
            twin: h0,
            next: usize::MAX,
            face: usize::MAX,
        });
        edges.push(SubEdge {
            v0: va,
            v1: vb,
            left: usize::MAX,
            right: usize::MAX,
            covers,
        });
    }

    // Sort outgoing half-edges counterclockwise around every vertex.
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (h, half) in halves.iter().enumerate() {
        outgoing[half.origin].push(h);
    }
    for (v, list) in outgoing.iter_mut().enumerate() {
        let vp = vertices[v].clone();
        list.sort_by(|&h1, &h2| {
            let t1 = &vertices[halves[h1].target];
            let t2 = &vertices[halves[h2].target];
            let d1x = &t1.x - &vp.x;
            let d1y = &t1.y - &vp.y;
            let d2x = &t2.x - &vp.x;
            let d2y = &t2.y - &vp.y;
            pseudo_angle_cmp(&d1x, &d1y, &d2x, &d2y)
        });
    }
    // next(h) = clockwise successor of twin(h) around target(h).
    let mut position: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (v, list) in outgoing.iter().enumerate() {
        for (k, &h) in list.iter().enumerate() {
            position.insert(h, (v, k));
        }
    }
    for h in 0..halves.len() {
        let twin = halves[h].twin;
        let (v, k) = position[&twin];
        let list = &outgoing[v];
        let prev = list[(k + list.len() - 1) % list.len()];
        halves[h].next = prev;
    }

    // Extract boundary cycles as orbits of `next`.
    let mut cycle_of_half: Vec<usize> = vec![usize::MAX; halves.len()];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for h0 in 0..halves.len() {
        if cycle_of_half[h0] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut cyc = Vec::new();
        let mut h = h0;
        loop {
            cycle_of_half[h] = id;
            cyc.push(h);
            h = halves[h].next;
            if h == h0 {
                break;
            }
        }
        cycles.push(cyc);
    }

    // Positive-area cycles bound faces; others are hole cycles.
    let area2 = |cyc: &[usize]| -> Rat {
        let mut acc = Rat::zero();
        for &h in cyc {
            let o = &vertices[halves[h].origin];
            let t = &vertices[halves[h].target];
            acc += &(&o.x * &t.y) - &(&o.y * &t.x);
        }
        acc
    };
    let mut positive: Vec<usize> = Vec::new();
    let mut holes: Vec<usize> = Vec::new();
    let mut cycle_area: Vec<Rat> = Vec::new();
    for (i, cyc) in cycles.iter().enumerate() {
        let a = area2(cyc);
        if a.is_positive() {
            positive.push(i);
        } else {
            holes.push(i);
        }
        cycle_area.push(a);
    }

    // Faces: one per positive cycle, plus the unbounded face.
    let mut faces: Vec<Face> = positive
        .iter()
        .map(|&c| Face {
            outer: Some(cycles[c].clone()),
            holes: Vec::new(),
        })
        .collect();
    let unbounded = faces.len();
    faces.push(Face {
        outer: None,
        holes: Vec::new(),
    });
    let mut face_of_cycle: BTreeMap<usize, FaceId> = BTreeMap::new();
    for (fi, &c) in positive.iter().enumerate() {
        face_of_cycle.insert(c, fi);
    }

    // Attach each hole cycle to the innermost positive cycle strictly
    // containing one of its vertices.
    let strictly_contains = |cyc: &[usize], p: &Point| -> bool {
        let mut inside = false;
        for &h in cyc {
            let a = &vertices[halves[h].origin];
            let b = &vertices[halves[h].target];
            let (lo, hi) = if a.y < b.y { (a, b) } else { (b, a) };
            if p.y >= lo.y && p.y < hi.y && super::primitives::orient(lo, hi, p) > 0 {
                inside = !inside;
            }
        }
        inside
    };
    for &hc in &holes {
        let rep = vertices[halves[cycles[hc][0]].origin].clone();
        let mut best: Option<(Rat, FaceId)> = None;
        for &pc in &positive {
            if strictly_contains(&cycles[pc], &rep) {
                let a = cycle_area[pc].clone();
                if best.as_ref().map_or(true, |(b, _)| &a < b) {
                    best = Some((a, face_of_cycle[&pc]));
                }
            }
        }
        let f = best.map_or(unbounded, |(_, f)| f);
        faces[f].holes.push(cycles[hc].clone());
        face_of_cycle.insert(hc, f);
    }

    for (h, half) in halves.iter_mut().enumerate() {
        half.face = face_of_cycle[&cycle_of_half[h]];
    }
    for e in 0..edges.len() {
        let h0 = 2 * e;
        edges[e].left = halves[h0].face;
        edges[e].right = halves[h0 + 1].face;
    }

    Subdivision {
        vertices,
        edges,
        faces,
        unbounded,
        halves,
        vertex_index,
    }
}

/// Canonical, hashable line key (coefficients of the canonical representative).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct LineKey {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl LineKey {
    fn of(l: &Line) -> LineKey {
        LineKey {
            a: l.a.clone(),
            b: l.b.clone(),
            c: l.c.clone(),
        }
    }

    fn to_line(&self) -> Line {
        Line::new(self.a.clone(), self.b.clone(), self.c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(ax: i64, ay: i64, bx: i64, by: i64) -> Segment {
        Segment::new(Point::int(ax, ay), Point::int(bx, by))
    }

    #[test]
    fn empty_input_is_one_face() {
        let sub = build_subdivision(&[]);
        assert_eq!(sub.face_count(), 1);
        assert_eq!(sub.vertex_count(), 0);
        assert_eq!(sub.edge_count(), 0);
        assert_eq!(sub.locate(&Point::int(3, 3)), Location::Face(sub.unbounded));
    }

    #[test]
    fn crossing_segments() {
        let sub = build_subdivision(&[seg(0, 0, 2, 2), seg(0, 2, 2, 0)]);
        assert_eq!(sub.vertex_count(), 5);
        assert_eq!(sub.edge_count(), 4);
        assert_eq!(sub.face_count(), 1);
        assert_eq!(sub.face_walk_len(sub.unbounded), 8);
    }

    #[test]
    fn unit_square_two_faces() {
        let sub = build_subdivision(&[
            seg(0, 0, 1, 0),
            seg(1, 0, 1, 1),
            seg(1, 1, 0, 1),
            seg(0, 1, 0, 0),
        ]);
        assert_eq!(sub.face_count(), 2);
        assert_eq!(sub.vertex_count(), 4);
        assert_eq!(sub.edge_count(), 4);
        let mid = Point::new(Rat::new(1, 2), Rat::new(1, 2));
        let inner = match sub.locate(&mid) {
            Location::Face(f) => f,
            other => panic!("expected face, got {other:?}"),
        };
        assert_ne!(inner, sub.unbounded);
        assert_eq!(sub.locate(&Point::int(2, 2)), Location::Face(sub.unbounded));
        let bottom = Point::new(Rat::new(1, 2), Rat::zero());
        assert!(matches!(sub.locate(&bottom), Location::Edge(_)));
    }

    #[test]
    fn collinear_overlap_merges_with_provenance() {
        // Two overlapping collinear segments: [0,4] and [2,6] on the x-axis.
        let sub = build_subdivision(&[seg(0, 0, 4, 0), seg(2, 0, 6, 0)]);
        assert_eq!(sub.vertex_count(), 4);
        assert_eq!(sub.edge_count(), 3);
        let mut cover_sets: Vec<Vec<usize>> =
            sub.edges.iter().map(|e| e.covers.clone()).collect();
        cover_sets.iter_mut().for_each(|c| c.sort());
        cover_sets.sort();
        assert_eq!(cover_sets, vec![vec![0], vec![0, 1], vec![1]]);
    }

    #[test]
    fn dangling_segment_inside_square_is_self_adjacent() {
        let sub = build_subdivision(&[
            seg(0, 0, 4, 0),
            seg(4, 0, 4, 4),
            seg(4, 4, 0, 4),
            seg(0, 4, 0, 0),
            seg(2, 2, 3, 2), // slit
        ]);
        assert_eq!(sub.face_count(), 2);
        let slit = sub
            .edges
            .iter()
            .find(|e| e.covers == vec![4])
            .expect("slit edge present");
        assert_eq!(slit.left, slit.right);
        assert_ne!(slit.left, sub.unbounded);
    }

    #[test]
    fn nested_squares_form_ring() {
        let outer = [seg(0, 0, 10, 0), seg(10, 0, 10, 10), seg(10, 10, 0, 10), seg(0, 10, 0, 0)];
        let inner = [seg(3, 3, 6, 3), seg(6, 3, 6, 6), seg(6, 6, 3, 6), seg(3, 6, 3, 3)];
        let all: Vec<Segment> = outer.iter().chain(inner.iter()).cloned().collect();
        let sub = build_subdivision(&all);
        assert_eq!(sub.face_count(), 3);
        // (1,1) is in the ring; (4,4) in the core; (20,20) outside.
        let ring = sub.locate(&Point::int(1, 1));
        let core = sub.locate(&Point::int(4, 4));
        let out = sub.locate(&Point::int(20, 20));
        assert_eq!(out, Location::Face(sub.unbounded));
        assert_ne!(ring, core);
        let Location::Face(ring_f) = ring else { panic!() };
        assert_eq!(sub.faces[ring_f].holes.len(), 1);
    }

    #[test]
    fn interior_points_land_in_their_faces() {
        let sub = build_subdivision(&[
            seg(0, 0, 4, 0),
            seg(4, 0, 4, 4),
            seg(4, 4, 0, 4),
            seg(0, 4, 0, 0),
            seg(0, 0, 4, 4), // diagonal
        ]);
        assert_eq!(sub.face_count(), 3);
        for f in 0..sub.face_count() {
            if f == sub.unbounded {
                continue;
            }
            let p = sub.face_interior_point(f);
            assert_eq!(sub.locate(&p), Location::Face(f));
        }
    }
}
