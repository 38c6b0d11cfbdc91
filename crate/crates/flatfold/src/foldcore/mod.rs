//! Crease-pattern model and fold pipeline: pattern validation, local flat
//! folding construction, folded arrangement with ply and layer events, and
//! the cell adjacency graph.

pub mod arrangement;
pub mod fan;
pub mod folding;
pub mod pattern;

pub use arrangement::{
    events_partition_layers, fold_arrangement, structure_fingerprint, ArrEdge,
    ArrangementGeometry, CreaseEvent, FoldedArrangement,
};
pub use fan::{closing_direction, fold_fan, FanPattern};
pub use folding::{build_local_flat_folding, DomEdgeKind, FoldError, LocalFlatFolding};
pub use pattern::{Crease, CreasePattern, FoldLabel, PatternError};

/// Folds a crease pattern end to end, yielding its arrangement.
pub fn fold_pattern(cp: &CreasePattern) -> Result<FoldedArrangement, FoldError> {
    let lff = build_local_flat_folding(cp)?;
    Ok(fold_arrangement(cp, &lff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, Rat};

    fn strip(n: i64) -> CreasePattern {
        let boundary = CreasePattern::rectangle(Rat::int(n), Rat::int(1));
        let creases = (1..n)
            .map(|i| Crease::new(Point::int(i, 0), Point::int(i, 1), None))
            .collect();
        CreasePattern::new(boundary, creases).unwrap()
    }

    #[test]
    fn uncreased_square_ply_one() {
        let cp = CreasePattern::new(CreasePattern::rectangle(Rat::one(), Rat::one()), vec![])
            .unwrap();
        let fa = fold_pattern(&cp).unwrap();
        assert_eq!(fa.pattern_ply(), 1);
        assert!(events_partition_layers(&fa));
    }

    #[test]
    fn half_fold_two_cells_ply_two() {
        let fa = fold_pattern(&strip(2)).unwrap();
        assert_eq!(fa.cells, 2);
        assert_eq!(fa.pattern_ply(), 2);
        let inner = (0..fa.cells)
            .find(|&c| Some(c) != fa.unbounded_cell)
            .unwrap();
        assert_eq!(fa.ply[inner], 2);
        assert!(events_partition_layers(&fa));
    }

    #[test]
    fn strip3_events() {
        let fa = fold_pattern(&strip(3)).unwrap();
        assert_eq!(fa.cells, 2);
        assert_eq!(fa.pattern_ply(), 3);
        // The two vertical sides of the folded unit cell: one carries the
        // crease joining facets 0-1 plus the boundary end of facet 2, the
        // other the crease joining 1-2 plus the boundary end of facet 0.
        let mut signatures = Vec::new();
        for e in &fa.arr_edges {
            let mut folded: Vec<(usize, usize)> = Vec::new();
            let mut ends: Vec<usize> = Vec::new();
            for ev in &e.events {
                match ev {
                    CreaseEvent::FoldedPair { a, b, .. } => folded.push((*a.min(b), *a.max(b))),
                    CreaseEvent::BoundaryEnd { facet, .. } => ends.push(*facet),
                    CreaseEvent::Spanning { .. } => {}
                }
            }
            if !folded.is_empty() {
                signatures.push((folded, ends));
            }
        }
        signatures.sort();
        assert_eq!(
            signatures,
            vec![(vec![(0, 1)], vec![2]), (vec![(1, 2)], vec![0])]
        );
        assert!(events_partition_layers(&fa));
    }

    #[test]
    fn map_2x2_inner_cell_ply_four() {
        let boundary = CreasePattern::rectangle(Rat::int(2), Rat::int(2));
        let creases = vec![
            Crease::new(Point::int(1, 0), Point::int(1, 1), None),
            Crease::new(Point::int(1, 1), Point::int(1, 2), None),
            Crease::new(Point::int(0, 1), Point::int(1, 1), None),
            Crease::new(Point::int(1, 1), Point::int(2, 1), None),
        ];
        let cp = CreasePattern::new(boundary, creases).unwrap();
        let fa = fold_pattern(&cp).unwrap();
        assert_eq!(fa.cells, 2);
        assert_eq!(fa.pattern_ply(), 4);
        let g = fa.cell_adjacency_graph();
        assert_eq!(g.n, 2);
        assert_eq!(g.edge_count(), 1);
        assert!(events_partition_layers(&fa));
    }

    #[test]
    fn ply_times_area_equals_paper_area() {
        for n in 2..=4 {
            let cp = strip(n);
            let fa = fold_pattern(&cp).unwrap();
            let areas = fa.cell_areas().unwrap();
            let mut total = Rat::zero();
            for (cell, area) in areas {
                total += area * Rat::int(fa.ply[cell] as i64);
            }
            assert_eq!(total, cp.area());
        }
    }

    #[test]
    fn rigid_motion_preserves_structure() {
        use crate::geometry::Isometry;
        let cp = strip(3);
        let fa = fold_pattern(&cp).unwrap();
        // Rotate by the rational rotation (3/5, 4/5) and translate.
        let rot = Isometry::rotation(Rat::new(3, 5), Rat::new(4, 5));
        let shift = Isometry::translation(Rat::new(1, 3), Rat::new(-5, 7));
        let motion = shift.compose(&rot);
        let boundary: Vec<Point> = cp.boundary.iter().map(|p| motion.apply(p)).collect();
        let creases = cp
            .creases
            .iter()
            .map(|c| Crease {
                seg: motion.apply_segment(&c.seg),
                label: c.label,
            })
            .collect();
        let cp2 = CreasePattern::new(boundary, creases).unwrap();
        let fa2 = fold_pattern(&cp2).unwrap();
        assert_eq!(structure_fingerprint(&fa), structure_fingerprint(&fa2));
    }
}
