//! Crease patterns: a simple polygon of paper plus disjoint open creases.

use crate::geometry::{
    orient, point_in_polygon, segment_intersection, signed_area2, Containment, Point, Rat,
    SegInter, Segment,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum FoldLabel {
    #[serde(rename = "M")]
    Mountain,
    #[serde(rename = "V")]
    Valley,
}

#[derive(Clone, Debug)]
pub struct Crease {
    pub seg: Segment,
    pub label: Option<FoldLabel>,
}

impl Crease {
    pub fn new(a: Point, b: Point, label: Option<FoldLabel>) -> Crease {
        Crease {
            seg: Segment::new(a, b),
            label,
        }
    }
}

/// A finite crease pattern on a simple polygon of paper. The boundary is
/// stored counterclockwise.
#[derive(Clone, Debug)]
pub struct CreasePattern {
    pub boundary: Vec<Point>,
    pub creases: Vec<Crease>,
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum PatternError {
    #[error("boundary needs at least 3 vertices")]
    BoundaryTooSmall,
    #[error("boundary has zero area")]
    BoundaryDegenerate,
    #[error("boundary is not a simple polygon")]
    BoundaryNotSimple,
    #[error("crease {0} leaves the paper")]
    CreaseOutsidePaper(usize),
    #[error("crease {0} lies along the boundary")]
    CreaseOnBoundary(usize),
    #[error("creases {0} and {1} overlap or cross")]
    CreasesIntersect(usize, usize),
}

impl CreasePattern {
    /// Validates and normalizes (boundary forced counterclockwise).
    pub fn new(boundary: Vec<Point>, creases: Vec<Crease>) -> Result<CreasePattern, PatternError> {
        if boundary.len() < 3 {
            return Err(PatternError::BoundaryTooSmall);
        }
        let mut boundary = boundary;
        let area = signed_area2(&boundary);
        if area.is_zero() {
            return Err(PatternError::BoundaryDegenerate);
        }
        if area.is_negative() {
            boundary.reverse();
        }
        let cp = CreasePattern { boundary, creases };
        cp.check_boundary_simple()?;
        cp.check_creases()?;
        Ok(cp)
    }

    fn boundary_edges(&self) -> Vec<Segment> {
        let n = self.boundary.len();
        (0..n)
            .map(|i| Segment::new(self.boundary[i].clone(), self.boundary[(i + 1) % n].clone()))
            .collect()
    }

    fn check_boundary_simple(&self) -> Result<(), PatternError> {
        let edges = self.boundary_edges();
        let n = edges.len();
        for i in 0..n {
            // Consecutive boundary vertices must be distinct and non-collinear
            // turns are allowed; only true crossings/overlaps are rejected.
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                match segment_intersection(&edges[i], &edges[j]) {
                    SegInter::None => {}
                    SegInter::Point(p) => {
                        if !adjacent {
                            return Err(PatternError::BoundaryNotSimple);
                        }
                        let shared = p == edges[i].a || p == edges[i].b;
                        if !shared {
                            return Err(PatternError::BoundaryNotSimple);
                        }
                    }
                    SegInter::Overlap(_, _) => return Err(PatternError::BoundaryNotSimple),
                }
            }
        }
        Ok(())
    }

    fn check_creases(&self) -> Result<(), PatternError> {
        let boundary_edges = self.boundary_edges();
        for (i, c) in self.creases.iter().enumerate() {
            // Endpoints inside or on the boundary; interior strictly inside.
            for p in [&c.seg.a, &c.seg.b] {
                if point_in_polygon(p, &self.boundary) == Containment::Outside {
                    return Err(PatternError::CreaseOutsidePaper(i));
                }
            }
            // The crease may touch the boundary only at its endpoints.
            for be in &boundary_edges {
                match segment_intersection(&c.seg, be) {
                    SegInter::None => {}
                    SegInter::Point(p) => {
                        if p != c.seg.a && p != c.seg.b {
                            return Err(PatternError::CreaseOutsidePaper(i));
                        }
                    }
                    SegInter::Overlap(_, _) => return Err(PatternError::CreaseOnBoundary(i)),
                }
            }
            // Midpoint strictly inside catches creases that run outside a
            // non-convex paper while both endpoints touch it.
            let two = Rat::int(2);
            let mid = Point::new(
                &(&c.seg.a.x + &c.seg.b.x) / &two,
                &(&c.seg.a.y + &c.seg.b.y) / &two,
            );
            if point_in_polygon(&mid, &self.boundary) != Containment::Inside {
                return Err(PatternError::CreaseOutsidePaper(i));
            }
        }
        // Pairwise: disjoint open segments, shared endpoints allowed.
        for i in 0..self.creases.len() {
            for j in (i + 1)..self.creases.len() {
                match segment_intersection(&self.creases[i].seg, &self.creases[j].seg) {
                    SegInter::None => {}
                    SegInter::Point(p) => {
                        let si = &self.creases[i].seg;
                        let sj = &self.creases[j].seg;
                        let endpoint_of_both = (p == si.a || p == si.b) && (p == sj.a || p == sj.b);
                        if !endpoint_of_both {
                            return Err(PatternError::CreasesIntersect(i, j));
                        }
                    }
                    SegInter::Overlap(_, _) => {
                        return Err(PatternError::CreasesIntersect(i, j));
                    }
                }
            }
        }
        Ok(())
    }

    /// Total paper area, exact.
    pub fn area(&self) -> Rat {
        signed_area2(&self.boundary) / Rat::int(2)
    }

    /// Axis-aligned rectangle helper used by generators and tests.
    pub fn rectangle(w: Rat, h: Rat) -> Vec<Point> {
        vec![
            Point::new(Rat::zero(), Rat::zero()),
            Point::new(w.clone(), Rat::zero()),
            Point::new(w, h.clone()),
            Point::new(Rat::zero(), h),
        ]
    }
}

/// Orientation helper re-exported for fan construction.
pub fn ccw(a: &Point, b: &Point, c: &Point) -> bool {
    orient(a, b, c) > 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq() -> Vec<Point> {
        CreasePattern::rectangle(Rat::int(1), Rat::int(1))
    }

    #[test]
    fn accepts_plain_square() {
        assert!(CreasePattern::new(sq(), vec![]).is_ok());
    }

    #[test]
    fn rejects_crease_outside() {
        let c = Crease::new(Point::int(0, 0), Point::int(2, 2), None);
        assert!(matches!(
            CreasePattern::new(sq(), vec![c]),
            Err(PatternError::CreaseOutsidePaper(0))
        ));
    }

    #[test]
    fn rejects_crossing_creases() {
        let c1 = Crease::new(
            Point::new(Rat::new(1, 4), Rat::new(1, 2)),
            Point::new(Rat::new(3, 4), Rat::new(1, 2)),
            None,
        );
        let c2 = Crease::new(
            Point::new(Rat::new(1, 2), Rat::new(1, 4)),
            Point::new(Rat::new(1, 2), Rat::new(3, 4)),
            None,
        );
        assert!(matches!(
            CreasePattern::new(sq(), vec![c1, c2]),
            Err(PatternError::CreasesIntersect(0, 1))
        ));
    }

    #[test]
    fn shared_endpoints_are_fine() {
        let center = Point::new(Rat::new(1, 2), Rat::new(1, 2));
        let c1 = Crease::new(Point::new(Rat::zero(), Rat::new(1, 2)), center.clone(), None);
        let c2 = Crease::new(center, Point::new(Rat::one(), Rat::new(1, 2)), None);
        assert!(CreasePattern::new(sq(), vec![c1, c2]).is_ok());
    }

    #[test]
    fn boundary_orientation_normalized() {
        let mut rev = sq();
        rev.reverse();
        let cp = CreasePattern::new(rev, vec![]).unwrap();
        assert!(signed_area2(&cp.boundary).is_positive());
    }
}
