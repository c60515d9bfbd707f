//! Line complexes: unbranched 1-dimensional simplicial complexes.
//!
//! A line complex is a chain of 0-simplices (vertices) glued by 1-simplices
//! (edges): the topological stand-in for a sampled time axis. Edge `t`
//! always connects vertices `t` and `t + 1`, and traversal order is the
//! direction of increasing index. Because construction takes only a vertex
//! count, branching complexes are unrepresentable here.

use crate::error::{Error, Result};

/// Identifies a simplex in a line complex by dimension and chain position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimplexId {
    /// A 0-simplex at the given chain position.
    Vertex(usize),
    /// A 1-simplex connecting vertices `index` and `index + 1`.
    Edge(usize),
}

impl SimplexId {
    /// 0 for vertices, 1 for edges.
    pub fn dimension(&self) -> usize {
        match self {
            SimplexId::Vertex(_) => 0,
            SimplexId::Edge(_) => 1,
        }
    }

    /// Position along the chain.
    pub fn index(&self) -> usize {
        match self {
            SimplexId::Vertex(i) | SimplexId::Edge(i) => *i,
        }
    }
}

/// An unbranched chain of `vertex_count` vertices and `vertex_count - 1`
/// edges.
///
/// Optional metric labels (e.g. sample timestamps) may annotate the
/// vertices. They must be strictly increasing and are otherwise inert:
/// no operation in this crate ever reads them after validation. That is
/// deliberate — it makes the claim "filtering over the complex does not
/// depend on sample spacing" directly testable.
#[derive(Debug, Clone, PartialEq)]
pub struct LineComplex {
    vertex_count: usize,
    metric_labels: Option<Vec<f64>>,
}

impl LineComplex {
    /// Builds a chain of `n_vertices` vertices, optionally annotated with
    /// strictly increasing metric labels (one per vertex).
    pub fn new(n_vertices: usize, metric_labels: Option<Vec<f64>>) -> Result<Self> {
        if n_vertices == 0 {
            return Err(Error::EmptyComplex);
        }
        if let Some(labels) = &metric_labels {
            if labels.len() != n_vertices {
                return Err(Error::InvalidMetric(format!(
                    "expected {} labels, got {}",
                    n_vertices,
                    labels.len()
                )));
            }
            for (i, pair) in labels.windows(2).enumerate() {
                if pair[0].is_nan() || pair[1].is_nan() || pair[1] <= pair[0] {
                    return Err(Error::InvalidMetric(format!(
                        "labels must be strictly increasing (violated at index {})",
                        i + 1
                    )));
                }
            }
        }
        Ok(Self {
            vertex_count: n_vertices,
            metric_labels,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count - 1
    }

    /// The inert per-vertex annotations, if any.
    pub fn metric_labels(&self) -> Option<&[f64]> {
        self.metric_labels.as_deref()
    }

    /// Whether `id` names a simplex of this complex.
    pub fn contains(&self, id: SimplexId) -> bool {
        match id {
            SimplexId::Vertex(i) => i < self.vertex_count,
            SimplexId::Edge(i) => i < self.edge_count(),
        }
    }

    fn ensure_contains(&self, id: SimplexId) -> Result<()> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(Error::UnknownSimplex {
                dimension: id.dimension(),
                index: id.index(),
            })
        }
    }

    /// The two vertices bounding edge `e`, ordered by chain direction.
    ///
    /// Only edges have a boundary here; vertices (whose boundary is the
    /// empty set) are rejected as arguments rather than given a 0-ary
    /// result.
    pub fn boundary(&self, e: SimplexId) -> Result<[SimplexId; 2]> {
        match e {
            SimplexId::Edge(t) if t < self.edge_count() => {
                Ok([SimplexId::Vertex(t), SimplexId::Vertex(t + 1)])
            }
            other => Err(Error::UnknownSimplex {
                dimension: other.dimension(),
                index: other.index(),
            }),
        }
    }

    /// The edges incident to vertex `v`, ordered `[left, right]`.
    ///
    /// Interior vertices have two, endpoints one, and the sole vertex of a
    /// one-vertex complex none.
    pub fn face(&self, v: SimplexId) -> Result<Vec<SimplexId>> {
        match v {
            SimplexId::Vertex(i) if i < self.vertex_count => {
                let mut edges = Vec::with_capacity(2);
                if i > 0 {
                    edges.push(SimplexId::Edge(i - 1));
                }
                if i + 1 < self.vertex_count {
                    edges.push(SimplexId::Edge(i));
                }
                Ok(edges)
            }
            other => Err(Error::UnknownSimplex {
                dimension: other.dimension(),
                index: other.index(),
            }),
        }
    }

    /// True iff one of `p`, `q` is an edge and the other one of its
    /// boundary vertices, i.e. they are relatable by a single boundary or
    /// face step.
    pub fn directly_connected(&self, p: SimplexId, q: SimplexId) -> Result<bool> {
        self.ensure_contains(p)?;
        self.ensure_contains(q)?;
        Ok(match (p, q) {
            (SimplexId::Vertex(v), SimplexId::Edge(e))
            | (SimplexId::Edge(e), SimplexId::Vertex(v)) => v == e || v == e + 1,
            _ => false,
        })
    }

    /// All vertices in chain order.
    pub fn vertices(&self) -> impl Iterator<Item = SimplexId> {
        (0..self.vertex_count).map(SimplexId::Vertex)
    }

    /// All edges in chain order.
    pub fn edges(&self) -> impl Iterator<Item = SimplexId> {
        (0..self.edge_count()).map(SimplexId::Edge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_chain() {
        let c = LineComplex::new(1, None).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edge_count(), 0);
        assert!(c.face(SimplexId::Vertex(0)).unwrap().is_empty());
    }

    #[test]
    fn four_vertices_give_three_chain_edges() {
        let c = LineComplex::new(4, None).unwrap();
        assert_eq!(c.edge_count(), 3);
        for t in 0..3 {
            let [a, b] = c.boundary(SimplexId::Edge(t)).unwrap();
            assert_eq!(a, SimplexId::Vertex(t));
            assert_eq!(b, SimplexId::Vertex(t + 1));
        }
    }

    #[test]
    fn labels_are_stored_but_inert() {
        let c = LineComplex::new(3, Some(vec![0.0, 1.7, 1.9])).unwrap();
        assert_eq!(c.metric_labels(), Some(&[0.0, 1.7, 1.9][..]));
        // Structure is label-independent.
        let plain = LineComplex::new(3, None).unwrap();
        assert_eq!(c.edge_count(), plain.edge_count());
    }

    #[test]
    fn zero_vertices_rejected() {
        assert!(matches!(LineComplex::new(0, None), Err(Error::EmptyComplex)));
    }

    #[test]
    fn non_monotone_labels_rejected() {
        let err = LineComplex::new(3, Some(vec![0.0, 2.0, 1.0])).unwrap_err();
        assert!(matches!(err, Error::InvalidMetric(_)));
        let err = LineComplex::new(2, Some(vec![0.0, f64::NAN])).unwrap_err();
        assert!(matches!(err, Error::InvalidMetric(_)));
        let err = LineComplex::new(2, Some(vec![0.0])).unwrap_err();
        assert!(matches!(err, Error::InvalidMetric(_)));
    }

    #[test]
    fn boundary_of_three_vertex_complex() {
        let c = LineComplex::new(3, None).unwrap();
        assert_eq!(
            c.boundary(SimplexId::Edge(0)).unwrap(),
            [SimplexId::Vertex(0), SimplexId::Vertex(1)]
        );
        assert_eq!(
            c.boundary(SimplexId::Edge(1)).unwrap(),
            [SimplexId::Vertex(1), SimplexId::Vertex(2)]
        );
        assert!(matches!(
            c.boundary(SimplexId::Edge(5)),
            Err(Error::UnknownSimplex {
                dimension: 1,
                index: 5
            })
        ));
        // Vertices have no boundary operation exposed.
        assert!(c.boundary(SimplexId::Vertex(0)).is_err());
    }

    #[test]
    fn face_ordering_left_then_right() {
        let c = LineComplex::new(3, None).unwrap();
        assert_eq!(
            c.face(SimplexId::Vertex(1)).unwrap(),
            vec![SimplexId::Edge(0), SimplexId::Edge(1)]
        );
        assert_eq!(c.face(SimplexId::Vertex(0)).unwrap(), vec![SimplexId::Edge(0)]);
        assert_eq!(c.face(SimplexId::Vertex(2)).unwrap(), vec![SimplexId::Edge(1)]);
        assert!(c.face(SimplexId::Vertex(3)).is_err());
        assert!(c.face(SimplexId::Edge(0)).is_err());
    }

    #[test]
    fn direct_connection_is_boundary_incidence() {
        let c = LineComplex::new(3, None).unwrap();
        assert!(c
            .directly_connected(SimplexId::Vertex(0), SimplexId::Edge(0))
            .unwrap());
        assert!(!c
            .directly_connected(SimplexId::Vertex(0), SimplexId::Vertex(1))
            .unwrap());
        assert!(!c
            .directly_connected(SimplexId::Vertex(0), SimplexId::Edge(1))
            .unwrap());
        assert!(c
            .directly_connected(SimplexId::Edge(1), SimplexId::Vertex(2))
            .unwrap());
        assert!(c
            .directly_connected(SimplexId::Vertex(9), SimplexId::Edge(0))
            .is_err());
    }

    #[test]
    fn boundary_face_adjunction() {
        let c = LineComplex::new(7, None).unwrap();
        for e in c.edges() {
            for v in c.boundary(e).unwrap() {
                assert!(c.face(v).unwrap().contains(&e));
            }
        }
        let total: usize = c.vertices().map(|v| c.face(v).unwrap().len()).sum();
        assert_eq!(total, 2 * c.edge_count());
    }
}
