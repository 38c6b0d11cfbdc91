//! The folded arrangement: subdivision of crease and boundary images, cell
//! preimage lists (ply), and the per-edge layer events consumed by the
//! layering conditions.

use super::folding::{DomEdgeKind, LocalFlatFolding};
use super::pattern::{CreasePattern, FoldLabel};
use crate::geometry::{build_subdivision, dot, Point, Rat, Segment, Subdivision};
use std::collections::BTreeMap;

/// One layer event at an arrangement edge, in the cross-section taxonomy:
/// a facet spanning both cells, two layers of one cell joined by a crease,
/// or a paper boundary ending on the edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CreaseEvent {
    Spanning {
        facet: usize,
    },
    FoldedPair {
        cell: usize,
        a: usize,
        b: usize,
        label: Option<FoldLabel>,
        /// For labeled creases: which of `a`/`b` must lie above the other,
        /// under the fixed mountain/valley convention.
        above: Option<usize>,
    },
    BoundaryEnd {
        cell: usize,
        facet: usize,
    },
}

/// An arrangement edge between two cells (possibly the same cell when an
/// image segment is interior to a cell), with its events.
#[derive(Clone, Debug)]
pub struct ArrEdge {
    pub cell_a: usize,
    pub cell_b: usize,
    pub events: Vec<CreaseEvent>,
}

/// How the cells of a folded arrangement are realized geometrically.
#[derive(Clone, Debug)]
pub enum ArrangementGeometry {
    /// Cells are the faces of a planar subdivision of image segments.
    Planar { sub: Subdivision },
    /// Cells are angular sectors around an apex (single-vertex fan);
    /// directions are the distinct image ray directions in ccw order.
    Fan { apex: Point, rays: Vec<(Rat, Rat)> },
}

#[derive(Clone, Debug)]
pub struct FoldedArrangement {
    /// Number of cells (the cell ids are 0..cells).
    pub cells: usize,
    /// Facet preimages covering each cell, ascending.
    pub preimages: Vec<Vec<usize>>,
    /// Ply per cell (length of the preimage list).
    pub ply: Vec<usize>,
    pub arr_edges: Vec<ArrEdge>,
    /// The unbounded cell for planar arrangements.
    pub unbounded_cell: Option<usize>,
    pub geometry: ArrangementGeometry,
    /// Number of facets of the underlying local flat folding.
    pub facets: usize,
}

impl FoldedArrangement {
    /// Maximum ply over all cells; 1 for an uncreased nonempty pattern.
    pub fn pattern_ply(&self) -> usize {
        self.ply.iter().copied().max().unwrap_or(0)
    }

    /// Simple cell adjacency graph: one vertex per cell (ply-zero cells
    /// included), an edge for each pair of cells sharing an arrangement edge.
    pub fn cell_adjacency_graph(&self) -> crate::treedecomp::Graph {
        let mut g = crate::treedecomp::Graph::new(self.cells);
        for e in &self.arr_edges {
            if e.cell_a != e.cell_b {
                g.add_edge(e.cell_a, e.cell_b);
            }
        }
        g
    }

    /// Exact cell areas for planar arrangements (unbounded cell omitted).
    pub fn cell_areas(&self) -> Option<Vec<(usize, Rat)>> {
        match &self.geometry {
            ArrangementGeometry::Planar { sub } => {
                let mut out = Vec::new();
                for (f, face) in sub.faces.iter().enumerate() {
                    if let Some(outer) = &face.outer {
                        let mut a = sub.cycle_area2(outer);
                        for h in &face.holes {
                            a += sub.cycle_area2(h);
                        }
                        out.push((f, a / Rat::int(2)));
                    }
                }
                Some(out)
            }
            ArrangementGeometry::Fan { .. } => None,
        }
    }
}

/// Tag describing where a folded input segment came from. `dom_left` flags
/// whether the tagged facet lies left of the domain edge direction v0->v1
/// (for creases, the `facets.0` side).
#[derive(Clone, Debug)]
enum ImageTag {
    CreaseImage {
        crease: usize,
        /// (facet left of the domain edge, facet right of it).
        facets: (usize, usize),
        /// Facet locally left of the directed crease in the unfolded paper.
        left_facet: usize,
    },
    BoundaryImage {
        facet: usize,
        facet_on_dom_left: bool,
    },
}

/// Builds the folded arrangement of a local flat folding: the subdivision of
/// all crease and boundary images, per-cell preimages, and per-edge events.
pub fn fold_arrangement(cp: &CreasePattern, lff: &LocalFlatFolding) -> FoldedArrangement {
    let dom = &lff.dom;

    // Image segments, one per domain edge, with crease edges emitted once
    // (the two facet maps agree on the crease line).
    let mut images: Vec<Segment> = Vec::new();
    let mut tags: Vec<ImageTag> = Vec::new();
    for (ei, e) in dom.edges.iter().enumerate() {
        let seg = Segment::new(dom.vertices[e.v0].clone(), dom.vertices[e.v1].clone());
        match &lff.edge_kind[ei] {
            DomEdgeKind::Crease { crease } => {
                let fa = lff.facet_of_face[e.left];
                let fb = lff.facet_of_face[e.right];
                if fa == usize::MAX || fb == usize::MAX {
                    continue;
                }
                // Facet locally left of the crease's own direction: compare
                // the domain edge direction with the crease direction.
                let cs = &cp.creases[*crease].seg;
                let cd_x = &cs.b.x - &cs.a.x;
                let cd_y = &cs.b.y - &cs.a.y;
                let ed_x = &dom.vertices[e.v1].x - &dom.vertices[e.v0].x;
                let ed_y = &dom.vertices[e.v1].y - &dom.vertices[e.v0].y;
                let aligned = dot(&cd_x, &cd_y, &ed_x, &ed_y).is_positive();
                let left_facet = if aligned { fa } else { fb };
                images.push(lff.maps[fa].apply_segment(&seg));
                tags.push(ImageTag::CreaseImage {
                    crease: *crease,
                    facets: (fa, fb),
                    left_facet,
                });
            }
            DomEdgeKind::Boundary => {
                let (facet, facet_on_dom_left) = if lff.facet_of_face[e.left] != usize::MAX {
                    (lff.facet_of_face[e.left], true)
                } else if lff.facet_of_face[e.right] != usize::MAX {
                    (lff.facet_of_face[e.right], false)
                } else {
                    continue;
                };
                images.push(lff.maps[facet].apply_segment(&seg));
                tags.push(ImageTag::BoundaryImage {
                    facet,
                    facet_on_dom_left,
                });
            }
        }
    }

    let sub = build_subdivision(&images);
    let cells = sub.face_count();

    // Preimages: a facet image covers a cell iff the cell's interior point
    // pulls back into the facet.
    let mut preimages: Vec<Vec<usize>> = vec![Vec::new(); cells];
    let inverses: Vec<_> = lff.maps.iter().map(|m| m.inverse()).collect();
    for cell in 0..cells {
        if cell == sub.unbounded {
            continue;
        }
        let rep = sub.face_interior_point(cell);
        for facet in 0..lff.facet_count() {
            let q = inverses[facet].apply(&rep);
            if lff.facet_contains(facet, &q) {
                preimages[cell].push(facet);
            }
        }
    }
    let ply: Vec<usize> = preimages.iter().map(|p| p.len()).collect();

    // Events per folded edge.
    let mut arr_edges = Vec::with_capacity(sub.edge_count());
    for e in &sub.edges {
        let cell_a = e.left;
        let cell_b = e.right;
        let v0 = &sub.vertices[e.v0];
        let v1 = &sub.vertices[e.v1];
        let ed_x = &v1.x - &v0.x;
        let ed_y = &v1.y - &v0.y;

        let mut events: Vec<CreaseEvent> = Vec::new();
        let mut edge_bound_facets: Vec<usize> = Vec::new();
        for &input in &e.covers {
            // Which side of this folded edge the tagged paper lies on:
            // start from the domain side, flip once per reflection parity,
            // and once more if the folded edge runs against the image
            // segment's direction.
            let img = &images[input];
            let im_x = &img.b.x - &img.a.x;
            let im_y = &img.b.y - &img.a.y;
            let aligned = dot(&im_x, &im_y, &ed_x, &ed_y).is_positive();
            match &tags[input] {
                ImageTag::CreaseImage {
                    crease,
                    facets,
                    left_facet,
                } => {
                    let (fa, fb) = *facets;
                    // fa lies on the domain-left; both folded images lie on
                    // the same side of the crease image.
                    let image_left = lff.maps[fa].parity() > 0;
                    let folded_left = image_left == aligned;
                    let cell = if folded_left { cell_a } else { cell_b };
                    let label = cp.creases[*crease].label;
                    let other = if *left_facet == fa { fb } else { fa };
                    let above = label.map(|l| {
                        let parity = lff.maps[*left_facet].parity();
                        let left_above = match l {
                            FoldLabel::Mountain => parity > 0,
                            FoldLabel::Valley => parity <= 0,
                        };
                        if left_above {
                            *left_facet
                        } else {
                            other
                        }
                    });
                    edge_bound_facets.push(fa);
                    edge_bound_facets.push(fb);
                    events.push(CreaseEvent::FoldedPair {
                        cell,
                        a: fa,
                        b: fb,
                        label,
                        above,
                    });
                }
                ImageTag::BoundaryImage {
                    facet,
                    facet_on_dom_left,
                } => {
                    let image_left = *facet_on_dom_left == (lff.maps[*facet].parity() > 0);
                    let folded_left = image_left == aligned;
                    let cell = if folded_left { cell_a } else { cell_b };
                    edge_bound_facets.push(*facet);
                    events.push(CreaseEvent::BoundaryEnd {
                        cell,
                        facet: *facet,
                    });
                }
            }
        }
        // Spanning facets: cover both sides and have no boundary on this edge.
        let both: Vec<usize> = if cell_a == cell_b {
            preimages[cell_a].clone()
        } else {
            preimages[cell_a]
                .iter()
                .copied()
                .filter(|f| preimages[cell_b].binary_search(f).is_ok())
                .collect()
        };
        for facet in both {
            if !edge_bound_facets.contains(&facet) {
                events.push(CreaseEvent::Spanning { facet });
            }
        }
        arr_edges.push(ArrEdge {
            cell_a,
            cell_b,
            events,
        });
    }

    FoldedArrangement {
        cells,
        preimages,
        ply,
        arr_edges,
        unbounded_cell: Some(sub.unbounded),
        geometry: ArrangementGeometry::Planar { sub },
        facets: lff.facet_count(),
    }
}

/// Layer-accounting check used by tests: every (cell, layer) incident to an
/// edge appears in exactly one event of that edge.
pub fn events_partition_layers(fa: &FoldedArrangement) -> bool {
    for e in &fa.arr_edges {
        let mut want: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &f in &fa.preimages[e.cell_a] {
            *want.entry((e.cell_a, f)).or_default() += 1;
        }
        for &f in &fa.preimages[e.cell_b] {
            *want.entry((e.cell_b, f)).or_default() += 1;
        }
        let mut got: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for ev in &e.events {
            match ev {
                CreaseEvent::Spanning { facet } => {
                    *got.entry((e.cell_a, *facet)).or_default() += 1;
                    *got.entry((e.cell_b, *facet)).or_default() += 1;
                }
                CreaseEvent::FoldedPair { cell, a, b, .. } => {
                    *got.entry((*cell, *a)).or_default() += 1;
                    *got.entry((*cell, *b)).or_default() += 1;
                }
                CreaseEvent::BoundaryEnd { cell, facet } => {
                    *got.entry((*cell, *facet)).or_default() += 1;
                }
            }
        }
        if want != got {
            return false;
        }
    }
    true
}

/// Orientation-free structural fingerprint of an arrangement, for testing
/// rigid-motion invariance.
pub fn structure_fingerprint(fa: &FoldedArrangement) -> String {
    let mut cells: Vec<usize> = fa.ply.clone();
    cells.sort();
    let mut edges: Vec<String> = fa
        .arr_edges
        .iter()
        .map(|e| {
            let mut evs: Vec<String> = e
                .events
                .iter()
                .map(|ev| match ev {
                    CreaseEvent::Spanning { .. } => "S".to_string(),
                    CreaseEvent::FoldedPair { label, .. } => format!("F{:?}", label),
                    CreaseEvent::BoundaryEnd { .. } => "B".to_string(),
                })
                .collect();
            evs.sort();
            let mut plys = [fa.ply[e.cell_a], fa.ply[e.cell_b]];
            plys.sort();
            format!("{:?}|{}", plys, evs.join(","))
        })
        .collect();
    edges.sort();
    format!("cells{:?};{}", cells, edges.join(";"))
}
