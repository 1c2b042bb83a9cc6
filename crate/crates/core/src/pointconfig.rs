//! Reference points, edge directions and the matroid at infinity.

use indexmap::IndexMap;
use num_traits::One;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exactla::{rank_of, Rational, Vector};
use crate::gaingraph::GainGraph;
use crate::matroid::VectorMatroid;

/// Labelled points in Q^dim, pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    dim: usize,
    points: IndexMap<String, Vector>,
}

impl Configuration {
    pub fn new(dim: usize, points: IndexMap<String, Vector>) -> Result<Self> {
        for (v, p) in &points {
            if p.dim() != dim {
                return Err(Error::InvalidConfiguration(format!(
                    "point `{v}` has {} coordinates, expected {dim}",
                    p.dim()
                )));
            }
        }
        let labels: Vec<&String> = points.keys().collect();
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if points[i] == points[j] {
                    return Err(Error::InvalidConfiguration(format!(
                        "points `{}` and `{}` coincide",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Configuration { dim, points })
    }

    /// Convenience for literals: `[("1", &[0, 0]), ...]`.
    pub fn from_ints(dim: usize, pts: &[(&str, &[i64])]) -> Result<Self> {
        Self::new(dim, pts.iter().map(|(k, v)| (k.to_string(), Vector::from_ints(v))).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &IndexMap<String, Vector> {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, v: &str) -> Result<&Vector> {
        self.points.get(v).ok_or_else(|| Error::MissingPoint(v.into()))
    }

    /// Fails with `MissingPoint` unless every vertex of `g` has a point.
    pub fn check_graph(&self, g: &GainGraph) -> Result<()> {
        for v in g.vertices() {
            self.point(v)?;
        }
        Ok(())
    }

    /// Same points moved by `shift`.
    pub fn translated(&self, shift: &Vector) -> Self {
        Configuration { dim: self.dim, points: self.points.iter().map(|(k, p)| (k.clone(), p + shift)).collect() }
    }

    /// Points of both configurations; labels shared by both must agree.
    pub fn union(&self, other: &Configuration) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut pts = self.points.clone();
        for (k, p) in &other.points {
            match pts.get(k) {
                Some(q) if q != p => {
                    return Err(Error::InvalidConfiguration(format!("label `{k}` names two different points")))
                }
                Some(_) => {}
                None => {
                    pts.insert(k.clone(), p.clone());
                }
            }
        }
        Self::new(self.dim, pts)
    }

    /// Affine span of the chosen points has dimension one less than their
    /// number, for every subset of at most dim + 1 of them.
    pub fn is_affine_position(&self, vertices: &[&str]) -> Result<bool> {
        let pts: Vec<&Vector> = vertices.iter().map(|v| self.point(v)).collect::<Result<_>>()?;
        let n = pts.len();
        if n > BitSet::CAPACITY {
            return Err(Error::InvalidConfiguration("too many points".into()));
        }
        for s in BitSet::full(n).subsets() {
            let k = s.len();
            if k < 2 || k > self.dim + 1 {
                continue;
            }
            let idx: Vec<usize> = s.iter().collect();
            let diffs: Vec<Vector> = idx[1..].iter().map(|&i| pts[i] - pts[idx[0]]).collect();
            if rank_of(&diffs.iter().collect::<Vec<_>>(), self.dim) != k - 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal position: at least dim + 1 points, and every forest with dim
    /// edges on the complete graph has independent directions. Brute force
    /// over C(n(n-1)/2, dim) edge sets, fine for n ≤ 8 and dim ≤ 4.
    pub fn is_ideal_position(&self) -> bool {
        let n = self.points.len();
        let d = self.dim;
        if n < d + 1 {
            return false;
        }
        let pts: Vec<&Vector> = self.points.values().collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        if pairs.len() > BitSet::CAPACITY {
            return false;
        }
        for s in BitSet::full(pairs.len()).subsets_of_size(d) {
            let es: Vec<(usize, usize)> = s.iter().map(|k| pairs[k]).collect();
            if !is_forest(n, &es) {
                continue;
            }
            let dirs: Vec<Vector> = es.iter().map(|&(i, j)| pts[j] - pts[i]).collect();
            if rank_of(&dirs.iter().collect::<Vec<_>>(), d) != d {
                return false;
            }
        }
        true
    }
}

fn is_forest(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// q_head − q_tail for the edge with index `e`.
pub fn direction(c: &Configuration, g: &GainGraph, e: usize) -> Result<Vector> {
    if e >= g.num_edges() {
        return Err(Error::UnknownEdge(format!("#{e}")));
    }
    let edge = g.edge(e);
    Ok(c.point(&edge.head)? - c.point(&edge.tail)?)
}

pub fn direction_of(c: &Configuration, g: &GainGraph, id: &str) -> Result<Vector> {
    direction(c, g, g.edge_index(id)?)
}

/// Vector matroid on the edges of `g` with vectors q_head − q_tail.
pub fn matroid_at_infinity(c: &Configuration, g: &GainGraph) -> Result<VectorMatroid> {
    let vectors = (0..g.num_edges()).map(|e| direction(c, g, e)).collect::<Result<Vec<_>>>()?;
    VectorMatroid::new(g.edges().iter().map(|e| e.id.clone()).collect(), vectors, c.dim())
}

/// q_v = ½·1_v in dimension |V|.
pub fn affinographic_configuration(g: &GainGraph) -> Configuration {
    let n = g.vertices().len();
    let half = Rational::one() / Rational::from_integer(2.into());
    let points = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut p = Vector::zeros(n);
            p.0[i] = half.clone();
            (v.clone(), p)
        })
        .collect();
    Configuration { dim: n, points }
}

/// Whether every vertex has a point and the points differ; used by callers
/// that assemble configurations piecemeal.
pub fn has_distinct_points(points: &[Vector]) -> bool {
    (0..points.len()).all(|i| (i + 1..points.len()).all(|j| points[i] != points[j]))
}
