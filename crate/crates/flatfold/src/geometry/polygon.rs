//! Polygon helpers: signed area, point containment, convex clipping.

use super::primitives::{cross, orient, Point, Segment};
use super::rat::Rat;

/// Twice the signed area of the (possibly non-convex) polygon, exact.
/// Positive for counterclockwise orientation.
pub fn signed_area2(poly: &[Point]) -> Rat {
    let mut acc = Rat::zero();
    let n = poly.len();
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        acc += &(&p.x * &q.y) - &(&p.y * &q.x);
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Containment {
    Outside,
    OnBoundary,
    Inside,
}

/// Exact point-in-polygon by crossing parity. Works for simple polygons in
/// either orientation.
pub fn point_in_polygon(p: &Point, poly: &[Point]) -> Containment {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if Segment::new(a.clone(), b.clone()).contains(p) {
            return Containment::OnBoundary;
        }
        // Upward-crossing rule on the edge a-b against a rightward ray from p.
        let (lo, hi) = if a.y < b.y { (a, b) } else { (b, a) };
        if p.y >= lo.y && p.y < hi.y {
            // x-coordinate of the edge at height p.y compared with p.x
            let side = orient(lo, hi, p);
            if side > 0 {
                inside = !inside;
            }
        }
    }
    if inside {
        Containment::Inside
    } else {
        Containment::Outside
    }
}

/// Exact intersection of two convex polygons (vertices in counterclockwise
/// order) by half-plane clipping. The result may be degenerate: empty, a
/// single point, or a segment (returned as 1- or 2-point lists after
/// deduplication).
pub fn convex_polygon_intersection(p: &[Point], q: &[Point]) -> Vec<Point> {
    assert!(p.len() >= 3 && q.len() >= 3, "convex polygons need 3+ vertices");
    let mut current: Vec<Point> = p.to_vec();
    let n = q.len();
    for i in 0..n {
        if current.is_empty() {
            return current;
        }
        let a = &q[i];
        let b = &q[(i + 1) % n];
        current = clip_halfplane(&current, a, b);
    }
    dedup_cyclic(current)
}

/// Keep the part of `poly` on the left (counterclockwise-inside) closed side
/// of the directed line a→b.
fn clip_halfplane(poly: &[Point], a: &Point, b: &Point) -> Vec<Point> {
    let mut out = Vec::new();
    let n = poly.len();
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let side = |p: &Point| -> i32 {
        let px = &p.x - &a.x;
        let py = &p.y - &a.y;
        cross(&dx, &dy, &px, &py).signum()
    };
    for i in 0..n {
        let cur = &poly[i];
        let nxt = &poly[(i + 1) % n];
        let sc = side(cur);
        let sn = side(nxt);
        if sc >= 0 {
            out.push(cur.clone());
        }
        if (sc > 0 && sn < 0) || (sc < 0 && sn > 0) {
            // Edge crosses the clip line; insert the exact crossing point.
            let t_num = -(&(&dx * &(&cur.y - &a.y)) - &(&dy * &(&cur.x - &a.x)));
            let seg_dx = &nxt.x - &cur.x;
            let seg_dy = &nxt.y - &cur.y;
            let t_den = &(&dx * &seg_dy) - &(&dy * &seg_dx);
            let t = t_num / t_den;
            out.push(Point::new(
                &cur.x + &(&seg_dx * &t),
                &cur.y + &(&seg_dy * &t),
            ));
        }
    }
    out
}

fn dedup_cyclic(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    // Collapse collinear degeneracies like [a, b, a] to a segment [a, b].
    if pts.len() == 3 {
        let area = signed_area2(&pts);
        if area.is_zero() {
            // Keep the two extreme points.
            let mut sorted = pts.clone();
            sorted.sort();
            return vec![sorted[0].clone(), sorted[2].clone()];
        }
    }
    pts
}

/// Positive-area test for the intersection of two convex polygons.
pub fn convex_overlap_positive(p: &[Point], q: &[Point]) -> bool {
    let inter = convex_polygon_intersection(p, q);
    inter.len() >= 3 && !signed_area2(&inter).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Vec<Point> {
        vec![
            Point::int(0, 0),
            Point::int(1, 0),
            Point::int(1, 1),
            Point::int(0, 1),
        ]
    }

    fn shift(poly: &[Point], dx: Rat, dy: Rat) -> Vec<Point> {
        poly.iter()
            .map(|p| Point::new(&p.x + &dx, &p.y + &dy))
            .collect()
    }

    #[test]
    fn square_with_itself() {
        let s = unit_square();
        let r = convex_polygon_intersection(&s, &s);
        assert_eq!(signed_area2(&r), Rat::int(2)); // 2·area = 2·1
    }

    #[test]
    fn far_translate_is_empty() {
        let s = unit_square();
        let t = shift(&s, Rat::int(2), Rat::zero());
        assert!(convex_polygon_intersection(&s, &t).is_empty());
    }

    #[test]
    fn half_translate_is_rectangle() {
        let s = unit_square();
        let t = shift(&s, Rat::new(1, 2), Rat::zero());
        let r = convex_polygon_intersection(&s, &t);
        assert_eq!(signed_area2(&r), Rat::one()); // 2·(1/2 × 1)
    }

    #[test]
    fn touching_edge_is_degenerate() {
        let s = unit_square();
        let t = shift(&s, Rat::one(), Rat::zero());
        let r = convex_polygon_intersection(&s, &t);
        assert!(r.len() < 3 || signed_area2(&r).is_zero());
        assert!(!convex_overlap_positive(&s, &t));
    }

    #[test]
    fn containment_cases() {
        let s = unit_square();
        let mid = Point::new(Rat::new(1, 2), Rat::new(1, 2));
        assert_eq!(point_in_polygon(&mid, &s), Containment::Inside);
        assert_eq!(point_in_polygon(&Point::int(2, 2), &s), Containment::Outside);
        let edge = Point::new(Rat::new(1, 2), Rat::zero());
        assert_eq!(point_in_polygon(&edge, &s), Containment::OnBoundary);
    }
}
