//! Construction of the local flat folding: facet subdivision of the paper
//! and per-facet isometries obtained by composing reflections.

use super::pattern::{CreasePattern, PatternError};
use crate::geometry::{
    build_subdivision, point_in_polygon, Containment, FaceId, Isometry, Line, Point, Segment,
    Subdivision,
};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum FoldError {
    #[error("pattern invalid: {0}")]
    Pattern(#[from] PatternError),
    /// Reflection compositions disagree along two facet paths; no local flat
    /// folding exists.
    #[error("no local flat folding exists")]
    NoLocalFolding,
}

/// What a domain subdivision edge is covered by.
#[derive(Clone, Debug, PartialEq)]
pub enum DomEdgeKind {
    /// Part of crease `crease` between two (possibly equal) facets.
    Crease { crease: usize },
    /// Part of the paper boundary with a facet inside.
    Boundary,
}

/// The paper cut along its creases, with a rigid map per facet.
#[derive(Clone, Debug)]
pub struct LocalFlatFolding {
    /// Subdivision of boundary + creases; facets are its inside faces.
    pub dom: Subdivision,
    /// Face ids of the domain subdivision that are paper facets.
    pub facet_faces: Vec<FaceId>,
    /// facet index for a domain face id (usize::MAX for non-facets).
    pub facet_of_face: Vec<usize>,
    /// Per-facet isometry (facet 0 is the identity seed).
    pub maps: Vec<Isometry>,
    /// Per-domain-edge classification.
    pub edge_kind: Vec<DomEdgeKind>,
}

impl LocalFlatFolding {
    pub fn facet_count(&self) -> usize {
        self.facet_faces.len()
    }

    /// Exact containment of a point in a facet, assuming the point is not on
    /// any domain edge.
    pub fn facet_contains(&self, facet: usize, p: &Point) -> bool {
        match self.dom.locate(p) {
            crate::geometry::Location::Face(f) => f == self.facet_faces[facet],
            _ => false,
        }
    }
}

/// Builds the local flat folding of `cp`, or reports that none exists.
///
/// Facet maps are seeded with the identity on facet 0 and propagated by
/// breadth-first traversal of facet adjacencies, reflecting across each
/// crossed crease. Every crease edge is then re-checked, which verifies
/// path-independence; a dangling crease end interior to the paper makes its
/// face self-adjacent and fails the same check.
pub fn build_local_flat_folding(cp: &CreasePattern) -> Result<LocalFlatFolding, FoldError> {
    let nb = cp.boundary.len();
    let mut inputs: Vec<Segment> = Vec::with_capacity(nb + cp.creases.len());
    for i in 0..nb {
        inputs.push(Segment::new(
            cp.boundary[i].clone(),
            cp.boundary[(i + 1) % nb].clone(),
        ));
    }
    for c in &cp.creases {
        inputs.push(c.seg.clone());
    }
    let dom = build_subdivision(&inputs);

    // Facets: bounded faces whose interior lies inside the paper polygon.
    let mut facet_faces = Vec::new();
    let mut facet_of_face = vec![usize::MAX; dom.face_count()];
    for f in 0..dom.face_count() {
        if f == dom.unbounded {
            continue;
        }
        let rep = dom.face_interior_point(f);
        if point_in_polygon(&rep, &cp.boundary) == Containment::Inside {
            facet_of_face[f] = facet_faces.len();
            facet_faces.push(f);
        }
    }

    // Classify domain edges. Validation guarantees an edge is covered either
    // by exactly one crease or by boundary pieces, never both.
    let mut edge_kind = Vec::with_capacity(dom.edge_count());
    for e in &dom.edges {
        let creases: Vec<usize> = e
            .covers
            .iter()
            .filter(|&&i| i >= nb)
            .map(|&i| i - nb)
            .collect();
        debug_assert!(creases.len() <= 1, "creases overlap");
        if let Some(&c) = creases.first() {
            debug_assert!(
                e.covers.iter().all(|&i| i >= nb),
                "crease along the boundary"
            );
            edge_kind.push(DomEdgeKind::Crease { crease: c });
        } else {
            edge_kind.push(DomEdgeKind::Boundary);
        }
    }

    // Propagate maps across crease edges.
    let n = facet_faces.len();
    let mut maps: Vec<Option<Isometry>> = vec![None; n];
    if n == 0 {
        return Err(FoldError::Pattern(PatternError::BoundaryDegenerate));
    }
    maps[0] = Some(Isometry::identity());
    let mut queue = VecDeque::from([0usize]);
    // (facet a, facet b, crease line): b's map should be a's composed with
    // the reflection.
    let crease_adjacencies: Vec<(usize, usize, Line)> = dom
        .edges
        .iter()
        .enumerate()
        .filter_map(|(ei, e)| match &edge_kind[ei] {
            DomEdgeKind::Crease { crease } => {
                let fa = facet_of_face[e.left];
                let fb = facet_of_face[e.right];
                if fa == usize::MAX || fb == usize::MAX {
                    // A crease piece with non-paper on one side; validation
                    // should prevent this, but stay permissive here.
                    return None;
                }
                Some((fa, fb, cp.creases[*crease].seg.line()))
            }
            DomEdgeKind::Boundary => None,
        })
        .collect();
    let mut adj: Vec<Vec<(usize, Line)>> = vec![Vec::new(); n];
    for (a, b, l) in &crease_adjacencies {
        adj[*a].push((*b, l.clone()));
        adj[*b].push((*a, l.clone()));
    }
    while let Some(f) = queue.pop_front() {
        let base = maps[f].clone().unwrap();
        for (g, line) in &adj[f] {
            let refl = Isometry::reflection(line);
            let candidate = base.compose(&refl);
            match &maps[*g] {
                None => {
                    maps[*g] = Some(candidate);
                    queue.push_back(*g);
                }
                Some(existing) => {
                    if existing != &candidate {
                        return Err(FoldError::NoLocalFolding);
                    }
                }
            }
        }
    }
    // The paper interior is connected, so every facet is reachable through
    // crease edges.
    let maps: Vec<Isometry> = maps
        .into_iter()
        .map(|m| m.expect("facet unreachable from seed"))
        .collect();

    Ok(LocalFlatFolding {
        dom,
        facet_faces,
        facet_of_face,
        maps,
        edge_kind,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foldcore::pattern::Crease;
    use crate::geometry::Rat;

    fn unit_square() -> Vec<Point> {
        CreasePattern::rectangle(Rat::int(1), Rat::int(1))
    }

    #[test]
    fn uncreased_square_is_identity() {
        let cp = CreasePattern::new(unit_square(), vec![]).unwrap();
        let lff = build_local_flat_folding(&cp).unwrap();
        assert_eq!(lff.facet_count(), 1);
        assert_eq!(lff.maps[0], Isometry::identity());
    }

    #[test]
    fn half_fold_reflects_one_side() {
        let half = Rat::new(1, 2);
        let cp = CreasePattern::new(
            unit_square(),
            vec![Crease::new(
                Point::new(half.clone(), Rat::zero()),
                Point::new(half.clone(), Rat::one()),
                None,
            )],
        )
        .unwrap();
        let lff = build_local_flat_folding(&cp).unwrap();
        assert_eq!(lff.facet_count(), 2);
        // One facet is the identity, the other reflects across x = 1/2.
        let ids: Vec<bool> = lff.maps.iter().map(|m| *m == Isometry::identity()).collect();
        assert_eq!(ids.iter().filter(|&&b| b).count(), 1);
        let refl = lff
            .maps
            .iter()
            .find(|m| **m != Isometry::identity())
            .unwrap();
        let line = Line::new(Rat::one(), Rat::zero(), -half);
        assert_eq!(*refl, Isometry::reflection(&line));
    }

    #[test]
    fn dangling_interior_crease_fails() {
        // Crease from (1/2,1/2) to (1,1/2): interior degree-1 endpoint.
        let cp = CreasePattern::new(
            unit_square(),
            vec![Crease::new(
                Point::new(Rat::new(1, 2), Rat::new(1, 2)),
                Point::new(Rat::one(), Rat::new(1, 2)),
                None,
            )],
        )
        .unwrap();
        assert!(matches!(
            build_local_flat_folding(&cp),
            Err(FoldError::NoLocalFolding)
        ));
    }
}
