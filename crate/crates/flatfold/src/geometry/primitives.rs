//! Points, lines, segments, rigid maps, and the exact predicates on them.

use super::rat::Rat;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Point {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Point {
        Point::new(Rat::int(x), Rat::int(y))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.x, self.y)
    }
}

/// Orientation of the triple (a, b, c): 1 = counterclockwise, -1 = clockwise,
/// 0 = collinear. Exact.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let d = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    d.signum()
}

pub fn cross(ox: &Rat, oy: &Rat, ax: &Rat, ay: &Rat) -> Rat {
    ox * ay - oy * ax
}

pub fn dot(ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> Rat {
    ax * bx + ay * by
}

/// Squared Euclidean distance, exact.
pub fn dist2(a: &Point, b: &Point) -> Rat {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx * &dx + &dy * &dy
}

/// Line a·x + b·y + c = 0 with (a, b) ≠ (0, 0), scaled to a canonical
/// representative: the first nonzero of (a, b) equals 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Line {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl Line {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Line {
        assert!(!(a.is_zero() && b.is_zero()), "degenerate line");
        let scale = if a.is_zero() { b.clone() } else { a.clone() };
        Line {
            a: &a / &scale,
            b: &b / &scale,
            c: &c / &scale,
        }
    }

    pub fn through(p: &Point, q: &Point) -> Line {
        assert!(p != q, "line through identical points");
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = -(&a * &p.x) - &b * &p.y;
        Line::new(a, b, c)
    }

    /// Signed evaluation; zero iff the point is on the line.
    pub fn eval(&self, p: &Point) -> Rat {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }
}

/// Mirror image of `p` across `l`, exact.
pub fn reflect(p: &Point, l: &Line) -> Point {
    let n2 = &(&l.a * &l.a) + &(&l.b * &l.b);
    let t = l.eval(p) / n2;
    let two = Rat::int(2);
    Point::new(&p.x - &(&two * &(&l.a * &t)), &p.y - &(&two * &(&l.b * &t)))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Segment {
        assert!(a != b, "degenerate segment");
        Segment { a, b }
    }

    pub fn line(&self) -> Line {
        Line::through(&self.a, &self.b)
    }

    /// Closed containment test for a collinear point is not assumed; this is
    /// the full test.
    pub fn contains(&self, p: &Point) -> bool {
        if orient(&self.a, &self.b, p) != 0 {
            return false;
        }
        between(&self.a, &self.b, p)
    }

    /// Open containment (p strictly inside the segment).
    pub fn contains_interior(&self, p: &Point) -> bool {
        self.contains(p) && p != &self.a && p != &self.b
    }
}

/// Assuming a, b, p collinear: p within the closed segment [a, b]?
fn between(a: &Point, b: &Point, p: &Point) -> bool {
    let lo_x = a.x.clone().min(b.x.clone());
    let hi_x = a.x.clone().max(b.x.clone());
    let lo_y = a.y.clone().min(b.y.clone());
    let hi_y = a.y.clone().max(b.y.clone());
    p.x >= lo_x && p.x <= hi_x && p.y >= lo_y && p.y <= hi_y
}

/// Exact intersection of two segments.
#[derive(Clone, Debug, PartialEq)]
pub enum SegInter {
    None,
    Point(Point),
    /// Collinear overlap of positive length.
    Overlap(Point, Point),
}

pub fn segment_intersection(s: &Segment, t: &Segment) -> SegInter {
    let d1 = orient(&s.a, &s.b, &t.a);
    let d2 = orient(&s.a, &s.b, &t.b);
    let d3 = orient(&t.a, &t.b, &s.a);
    let d4 = orient(&t.a, &t.b, &s.b);

    if d1 == 0 && d2 == 0 {
        // Collinear: project on the dominant axis.
        let l = s.line();
        let key = |p: &Point| -> Rat {
            if l.b.is_zero() {
                p.y.clone()
            } else {
                p.x.clone()
            }
        };
        if !l.contains(&t.a) {
            return SegInter::None; // parallel, distinct lines
        }
        let (mut s0, mut s1) = (key(&s.a), key(&s.b));
        if s0 > s1 {
            std::mem::swap(&mut s0, &mut s1);
        }
        let (mut t0, mut t1) = (key(&t.a), key(&t.b));
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        let lo = s0.max(t0);
        let hi = s1.min(t1);
        match lo.cmp(&hi) {
            Ordering::Greater => SegInter::None,
            Ordering::Equal => {
                let p = point_at(s, &l, &lo);
                SegInter::Point(p)
            }
            Ordering::Less => {
                let p = point_at(s, &l, &lo);
                let q = point_at(s, &l, &hi);
                SegInter::Overlap(p, q)
            }
        }
    } else if ((d1 >= 0 && d2 <= 0) || (d1 <= 0 && d2 >= 0))
        && ((d3 >= 0 && d4 <= 0) || (d3 <= 0 && d4 >= 0))
    {
        // Proper or endpoint crossing: solve the 2x2 system.
        let ls = s.line();
        let lt = t.line();
        match line_intersection(&ls, &lt) {
            Some(p) => {
                if between(&s.a, &s.b, &p) && between(&t.a, &t.b, &p) {
                    SegInter::Point(p)
                } else {
                    SegInter::None
                }
            }
            None => SegInter::None,
        }
    } else {
        SegInter::None
    }
}

/// Recover the point on segment `s`'s line whose dominant coordinate is `v`.
fn point_at(s: &Segment, l: &Line, v: &Rat) -> Point {
    if l.b.is_zero() {
        // Vertical-dominant parametrization by y.
        let dx = &s.b.x - &s.a.x;
        let dy = &s.b.y - &s.a.y;
        let t = (v - &s.a.y) / dy;
        Point::new(&s.a.x + &(&dx * &t), v.clone())
    } else {
        let dx = &s.b.x - &s.a.x;
        let dy = &s.b.y - &s.a.y;
        if dx.is_zero() {
            Point::new(v.clone(), s.a.y.clone())
        } else {
            let t = (v - &s.a.x) / dx;
            Point::new(v.clone(), &s.a.y + &(&dy * &t))
        }
    }
}

pub fn line_intersection(l: &Line, m: &Line) -> Option<Point> {
    let det = &(&l.a * &m.b) - &(&l.b * &m.a);
    if det.is_zero() {
        return None;
    }
    let x = (&(&l.b * &m.c) - &(&l.c * &m.b)) / det.clone();
    let y = (&(&l.c * &m.a) - &(&l.a * &m.c)) / det;
    Some(Point::new(x, y))
}

/// Rigid map x ↦ M·x + t with exact rational entries and det M = ±1.
/// Used for facet isometries of a local flat folding.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Isometry {
    pub m: [Rat; 4], // row-major [m00, m01, m10, m11]
    pub t: [Rat; 2],
}

impl Isometry {
    pub fn identity() -> Isometry {
        Isometry {
            m: [Rat::one(), Rat::zero(), Rat::zero(), Rat::one()],
            t: [Rat::zero(), Rat::zero()],
        }
    }

    /// Reflection across a line, as an isometry.
    pub fn reflection(l: &Line) -> Isometry {
        let n2 = &(&l.a * &l.a) + &(&l.b * &l.b);
        let two = Rat::int(2);
        let m00 = Rat::one() - &(&two * &(&l.a * &l.a)) / &n2;
        let m01 = -(&(&two * &(&l.a * &l.b)) / &n2);
        let m10 = m01.clone();
        let m11 = Rat::one() - &(&two * &(&l.b * &l.b)) / &n2;
        let tx = -(&(&two * &(&l.a * &l.c)) / &n2);
        let ty = -(&(&two * &(&l.b * &l.c)) / &n2);
        Isometry {
            m: [m00, m01, m10, m11],
            t: [tx, ty],
        }
    }

    /// Rotation by the rational direction (c, s) with c² + s² = 1, about the origin.
    pub fn rotation(c: Rat, s: Rat) -> Isometry {
        let unit = &(&c * &c) + &(&s * &s);
        assert!(unit == Rat::one(), "rotation direction must be unit");
        Isometry {
            m: [c.clone(), -(&s), s, c],
            t: [Rat::zero(), Rat::zero()],
        }
    }

    pub fn translation(dx: Rat, dy: Rat) -> Isometry {
        let mut iso = Isometry::identity();
        iso.t = [dx, dy];
        iso
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(
            &(&self.m[0] * &p.x) + &(&self.m[1] * &p.y) + &self.t[0],
            &(&self.m[2] * &p.x) + &(&self.m[3] * &p.y) + &self.t[1],
        )
    }

    pub fn apply_segment(&self, s: &Segment) -> Segment {
        Segment::new(self.apply(&s.a), self.apply(&s.b))
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let m = [
            &(&self.m[0] * &other.m[0]) + &(&self.m[1] * &other.m[2]),
            &(&self.m[0] * &other.m[1]) + &(&self.m[1] * &other.m[3]),
            &(&self.m[2] * &other.m[0]) + &(&self.m[3] * &other.m[2]),
            &(&self.m[2] * &other.m[1]) + &(&self.m[3] * &other.m[3]),
        ];
        let t = [
            &(&self.m[0] * &other.t[0]) + &(&self.m[1] * &other.t[1]) + &self.t[0],
            &(&self.m[2] * &other.t[0]) + &(&self.m[3] * &other.t[1]) + &self.t[1],
        ];
        Isometry { m, t }
    }

    pub fn inverse(&self) -> Isometry {
        let det = &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2]);
        assert!(!det.is_zero());
        let inv = [
            &self.m[3] / &det,
            -(&(&self.m[1] / &det)),
            -(&(&self.m[2] / &det)),
            &self.m[0] / &det,
        ];
        let tx = -(&(&inv[0] * &self.t[0]) + &(&inv[1] * &self.t[1]));
        let ty = -(&(&inv[2] * &self.t[0]) + &(&inv[3] * &self.t[1]));
        Isometry {
            m: inv,
            t: [tx, ty],
        }
    }

    /// +1 for orientation-preserving, -1 for a reflection.
    pub fn parity(&self) -> i32 {
        let det = &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2]);
        det.signum()
    }
}

/// Total cyclic order of direction vectors around the origin, starting from
/// the positive x-axis, counterclockwise. Exact (no trigonometry).
pub fn pseudo_angle_cmp(ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> Ordering {
    let half = |x: &Rat, y: &Rat| -> u8 {
        // 0 = positive x-axis, 1 = upper half, 2 = negative x-axis, 3 = lower half
        if y.is_zero() {
            if x.is_positive() {
                0
            } else {
                2
            }
        } else if y.is_positive() {
            1
        } else {
            3
        }
    };
    let (ha, hb) = (half(ax, ay), half(bx, by));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // Same half-plane: counterclockwise iff cross > 0.
    let c = cross(ax, ay, bx, by);
    match c.signum() {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    #[test]
    fn reflect_across_vertical_axis() {
        // x = 1 is the line 1·x + 0·y - 1 = 0
        let l = Line::new(Rat::one(), Rat::zero(), Rat::int(-1));
        assert_eq!(reflect(&pt(0, 0), &l), pt(2, 0));
    }

    #[test]
    fn reflect_across_diagonal() {
        // y = x is x - y = 0
        let l = Line::new(Rat::one(), Rat::int(-1), Rat::zero());
        assert_eq!(reflect(&pt(1, 2), &l), pt(2, 1));
    }

    #[test]
    fn reflection_isometry_matches_pointwise() {
        let l = Line::through(&pt(1, -2), &pt(3, 5));
        let iso = Isometry::reflection(&l);
        for p in [pt(0, 0), pt(7, -3), pt(2, 2)] {
            assert_eq!(iso.apply(&p), reflect(&p, &l));
        }
        assert_eq!(iso.parity(), -1);
        // Involution via composition.
        let id = iso.compose(&iso);
        assert_eq!(id, Isometry::identity());
    }

    #[test]
    fn segment_crossing() {
        let s = Segment::new(pt(0, 0), pt(2, 2));
        let t = Segment::new(pt(0, 2), pt(2, 0));
        assert_eq!(segment_intersection(&s, &t), SegInter::Point(pt(1, 1)));
    }

    #[test]
    fn collinear_overlap() {
        let s = Segment::new(pt(0, 0), pt(4, 0));
        let t = Segment::new(pt(2, 0), pt(6, 0));
        assert_eq!(
            segment_intersection(&s, &t),
            SegInter::Overlap(pt(2, 0), pt(4, 0))
        );
        let u = Segment::new(pt(4, 0), pt(6, 0));
        assert_eq!(segment_intersection(&s, &u), SegInter::Point(pt(4, 0)));
        let v = Segment::new(pt(5, 0), pt(6, 0));
        assert_eq!(segment_intersection(&s, &v), SegInter::None);
    }

    #[test]
    fn angular_order() {
        let dirs: [(i64, i64); 8] = [
            (1, 0),
            (2, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
        ];
        for w in dirs.windows(2) {
            let (a, b) = (w[0], w[1]);
            assert_eq!(
                pseudo_angle_cmp(&Rat::int(a.0), &Rat::int(a.1), &Rat::int(b.0), &Rat::int(b.1)),
                Ordering::Less
            );
        }
    }
}
