//! Single-vertex fan patterns: the whole plane creased by rays from one
//! apex. Their folded arrangement is a ring of angular sectors, which is the
//! setting where the cell adjacency graph is a cycle.

use super::arrangement::{ArrEdge, ArrangementGeometry, CreaseEvent, FoldedArrangement};
use super::folding::FoldError;
use super::pattern::FoldLabel;
use crate::geometry::{cross, dot, pseudo_angle_cmp, Isometry, Line, Point, Rat};
use std::cmp::Ordering;

/// Crease rays from the origin, in counterclockwise order.
#[derive(Clone, Debug)]
pub struct FanPattern {
    pub dirs: Vec<(Rat, Rat)>,
    pub labels: Vec<Option<FoldLabel>>,
}

impl FanPattern {
    pub fn new(
        mut rays: Vec<((Rat, Rat), Option<FoldLabel>)>,
    ) -> Result<FanPattern, FoldError> {
        if rays.len() < 2 {
            return Err(FoldError::NoLocalFolding);
        }
        for ((x, y), _) in &rays {
            if x.is_zero() && y.is_zero() {
                return Err(FoldError::NoLocalFolding);
            }
        }
        rays.sort_by(|((ax, ay), _), ((bx, by), _)| pseudo_angle_cmp(ax, ay, bx, by));
        for w in rays.windows(2) {
            let ((ax, ay), _) = &w[0];
            let ((bx, by), _) = &w[1];
            if same_ray(ax, ay, bx, by) {
                return Err(FoldError::NoLocalFolding);
            }
        }
        let (dirs, labels) = rays.into_iter().unzip();
        Ok(FanPattern { dirs, labels })
    }

    pub fn crease_count(&self) -> usize {
        self.dirs.len()
    }
}

fn same_ray(ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> bool {
    cross(ax, ay, bx, by).is_zero() && dot(ax, ay, bx, by).is_positive()
}

fn ray_line(dir: &(Rat, Rat)) -> Line {
    // Line through the origin with the given direction.
    Line::new(-dir.1.clone(), dir.0.clone(), Rat::zero())
}

/// Folds a fan: wedge maps by composed reflections with a closure check,
/// then the sector arrangement of the distinct image rays.
pub fn fold_fan(fan: &FanPattern) -> Result<FoldedArrangement, FoldError> {
    let k = fan.dirs.len();
    // Wedge i spans (dirs[i], dirs[i+1]); crease i at dirs[i] separates
    // wedges i-1 and i.
    let mut maps = Vec::with_capacity(k);
    maps.push(Isometry::identity());
    for i in 1..k {
        let refl = Isometry::reflection(&ray_line(&fan.dirs[i]));
        let prev = maps[i - 1].clone();
        maps.push(prev.compose(&refl));
    }
    // Closure around the apex: crossing crease 0 from wedge k-1 back to
    // wedge 0 must reproduce the identity.
    let closure_ok = maps[k - 1] == Isometry::reflection(&ray_line(&fan.dirs[0]));
    if !closure_ok {
        return Err(FoldError::NoLocalFolding);
    }

    // Image ray of crease i: the linear image of its direction under the map
    // of either adjacent wedge (they agree on the crease line).
    let apply_dir = |m: &Isometry, d: &(Rat, Rat)| -> (Rat, Rat) {
        (
            &(&m.m[0] * &d.0) + &(&m.m[1] * &d.1),
            &(&m.m[2] * &d.0) + &(&m.m[3] * &d.1),
        )
    };
    let image_dirs: Vec<(Rat, Rat)> = (0..k)
        .map(|i| apply_dir(&maps[i], &fan.dirs[i]))
        .collect();

    // Distinct image rays in ccw order; sectors sit between consecutive rays.
    let mut rays: Vec<(Rat, Rat)> = image_dirs.clone();
    rays.sort_by(|a, b| pseudo_angle_cmp(&a.0, &a.1, &b.0, &b.1));
    rays.dedup_by(|a, b| same_ray(&a.0, &a.1, &b.0, &b.1));
    let j = rays.len();
    let ray_index = |d: &(Rat, Rat)| -> usize {
        rays.iter()
            .position(|r| same_ray(&r.0, &r.1, &d.0, &d.1))
            .expect("image ray present")
    };

    // Sector t is the ccw interval (rays[t], rays[t+1]). A wedge's image
    // covers the ccw run of sectors between its two bounding image rays.
    let mut coverage: Vec<Vec<bool>> = vec![vec![false; j]; k];
    for i in 0..k {
        let u = ray_index(&image_dirs[i]);
        let v = ray_index(&image_dirs[(i + 1) % k]);
        let (start, end) = if maps[i].parity() > 0 { (u, v) } else { (v, u) };
        let mut t = start;
        while t != end {
            coverage[i][t] = true;
            t = (t + 1) % j;
        }
    }
    let preimages: Vec<Vec<usize>> = (0..j)
        .map(|t| (0..k).filter(|&i| coverage[i][t]).collect())
        .collect();
    let ply: Vec<usize> = preimages.iter().map(|p| p.len()).collect();

    // Events per image ray.
    let mut arr_edges = Vec::with_capacity(j);
    for t in 0..j {
        let cell_cw = (t + j - 1) % j; // sector ending at ray t
        let cell_ccw = t; // sector starting at ray t
        let mut events = Vec::new();
        let mut bound: Vec<usize> = Vec::new();
        for i in 0..k {
            if ray_index(&image_dirs[i]) != t {
                continue;
            }
            let wa = (i + k - 1) % k;
            let wb = i;
            // Both folded wedges lie in the sector their common boundary ray
            // opens into; read it from wedge wb's coverage.
            let cell = if coverage[wb][cell_ccw] {
                cell_ccw
            } else {
                cell_cw
            };
            debug_assert!(coverage[wa][cell], "creased wedges share a sector");
            let label = fan.labels[i];
            // Wedge i lies locally left (ccw) of the outward crease ray i.
            let above = label.map(|l| {
                let parity = maps[wb].parity();
                let left_above = match l {
                    FoldLabel::Mountain => parity > 0,
                    FoldLabel::Valley => parity <= 0,
                };
                if left_above {
                    wb
                } else {
                    wa
                }
            });
            bound.push(wa);
            bound.push(wb);
            events.push(CreaseEvent::FoldedPair {
                cell,
                a: wa,
                b: wb,
                label,
                above,
            });
        }
        for i in 0..k {
            if coverage[i][cell_cw] && coverage[i][cell_ccw] && !bound.contains(&i) {
                events.push(CreaseEvent::Spanning { facet: i });
            }
        }
        arr_edges.push(ArrEdge {
            cell_a: cell_cw,
            cell_b: cell_ccw,
            events,
        });
    }

    Ok(FoldedArrangement {
        cells: j,
        preimages,
        ply,
        arr_edges,
        unbounded_cell: None,
        geometry: ArrangementGeometry::Fan {
            apex: Point::int(0, 0),
            rays,
        },
        facets: k,
    })
}

/// Completes ccw-sorted directions `head` (length k-1) with the unique final
/// crease direction that closes the vertex, if it lands after the last head
/// direction in ccw order. Used by the fan generator.
pub fn closing_direction(head: &[(Rat, Rat)]) -> Option<(Rat, Rat)> {
    // Need R(d_last) = R(d_{k-2}) ··· R(d_1) · R(d_0) so that the cyclic
    // product R(d_1) ··· R(d_{k-2}) · R(d_last) · R(d_0) is the identity.
    let mut m = Isometry::identity();
    for d in head.iter().rev() {
        m = m.compose(&Isometry::reflection(&ray_line(d)));
    }
    // m must be a reflection; its axis is the +1 eigenvector.
    if m.parity() >= 0 {
        return None;
    }
    let one_plus = Rat::one() + &m.m[0];
    let axis = if !one_plus.is_zero() || !m.m[1].is_zero() {
        (one_plus, m.m[2].clone())
    } else {
        (m.m[1].clone(), Rat::one() - &m.m[0])
    };
    if axis.0.is_zero() && axis.1.is_zero() {
        return None;
    }
    // Pick the representative (axis or -axis) that extends the ccw order.
    let last = head.last().unwrap();
    let first = head.first().unwrap();
    for cand in [axis.clone(), (-(&axis.0), -(&axis.1))] {
        let after_last =
            pseudo_angle_cmp(&last.0, &last.1, &cand.0, &cand.1) == Ordering::Less;
        let not_wrapped =
            pseudo_angle_cmp(&first.0, &first.1, &cand.0, &cand.1) == Ordering::Less;
        if after_last && not_wrapped && !same_ray(&last.0, &last.1, &cand.0, &cand.1) {
            return Some(cand);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dir(x: i64, y: i64) -> (Rat, Rat) {
        (Rat::int(x), Rat::int(y))
    }

    #[test]
    fn axis_fold_fan() {
        // Four creases along the axes: the classic flat-foldable vertex.
        let fan = FanPattern::new(vec![
            (dir(1, 0), None),
            (dir(0, 1), None),
            (dir(-1, 0), None),
            (dir(0, -1), None),
        ])
        .unwrap();
        let fa = fold_fan(&fan).unwrap();
        // All wedges fold onto one quadrant: two distinct image rays.
        assert_eq!(fa.cells, 2);
        assert_eq!(fa.pattern_ply(), 4);
        assert_eq!(fa.arr_edges.len(), 2);
    }

    #[test]
    fn kawasaki_violation_detected() {
        let fan = FanPattern::new(vec![
            (dir(1, 0), None),
            (dir(1, 1), None),
            (dir(-1, 0), None),
            (dir(0, -1), None),
        ])
        .unwrap();
        assert!(matches!(fold_fan(&fan), Err(FoldError::NoLocalFolding)));
    }

    #[test]
    fn generic_fan_is_cycle_of_sectors() {
        // Unequal angles satisfying the closure, distinct image rays.
        let head = vec![dir(1, 0), dir(1, 1), dir(0, 1)];
        let last = closing_direction(&head).expect("closable");
        let mut rays: Vec<((Rat, Rat), Option<FoldLabel>)> =
            head.into_iter().map(|d| (d, None)).collect();
        rays.push((last, None));
        let fan = FanPattern::new(rays).unwrap();
        let fa = fold_fan(&fan).unwrap();
        assert_eq!(fa.facets, 4);
        assert!(fa.cells >= 2);
        // Ply-weighted sector count equals the wedge count.
        let total: usize = fa.ply.iter().sum::<usize>();
        assert!(total >= fa.facets);
        assert!(crate::foldcore::events_partition_layers(&fa));
    }
}
