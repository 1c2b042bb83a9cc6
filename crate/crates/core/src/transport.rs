//! Moving gains between triples that share hyperplane directions, so that the
//! arrangement itself is unchanged.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arrangement::build_arrangement;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exactla::{primitive_integer, Matrix, Rational, Vector};
use crate::gaingraph::{Edge, GainGraph};
use crate::matroid::Circuit;
use crate::pointconfig::{direction, matroid_at_infinity, Configuration};

/// Configuration plus gain graph (gains live on the graph).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub config: Configuration,
    pub graph: GainGraph,
}

impl Triple {
    pub fn new(config: Configuration, graph: GainGraph) -> Result<Self> {
        config.check_graph(&graph)?;
        Ok(Triple { config, graph })
    }

    pub fn dim(&self) -> usize {
        self.config.dim()
    }

    pub fn direction(&self, e: usize) -> Vector {
        direction(&self.config, &self.graph, e).expect("validated triple")
    }

    /// |q_head|² − |q_tail|².
    pub fn k(&self, e: usize) -> Rational {
        let edge = self.graph.edge(e);
        self.config.points()[&edge.head].norm_sq() - self.config.points()[&edge.tail].norm_sq()
    }

    /// Disjoint union of graphs over the union of the configurations.
    pub fn combined(&self, other: &Triple) -> Result<Triple> {
        let config = self.config.union(&other.config)?;
        let mut edges = self.graph.edges().to_vec();
        edges.extend(other.graph.edges().iter().cloned());
        let graph = GainGraph::new(config.points().keys().cloned().collect(), edges)?;
        Triple::new(config, graph)
    }
}

/// `c` with `w = c·v`, if `v ≠ 0` and `w` is a multiple of it.
pub fn parallel_factor(v: &Vector, w: &Vector) -> Option<Rational> {
    let i = v.iter().position(|x| !x.is_zero())?;
    let c = &w[i] / &v[i];
    if v.scale(&c) == *w && !c.is_zero() {
        Some(c)
    } else {
        None
    }
}

/// Gain on `to` whose hyperplane equals that of `from` carrying `g_from`.
/// With direction(to) = c·direction(from): g′ + k′ = c·(g + k).
pub fn transported_gain(combined: &Triple, from: &str, to: &str, g_from: &Rational) -> Result<Rational> {
    let e = combined.graph.edge_index(from)?;
    let f = combined.graph.edge_index(to)?;
    let c = parallel_factor(&combined.direction(e), &combined.direction(f))
        .ok_or_else(|| Error::NotParallel(from.into(), to.into()))?;
    Ok(c * (g_from + combined.k(e)) - combined.k(f))
}

fn transport_between(src: &Triple, e: usize, dst: &Triple, f: usize) -> Result<Rational> {
    let c = parallel_factor(&src.direction(e), &dst.direction(f))
        .ok_or_else(|| Error::NotParallel(src.graph.edge(e).id.clone(), dst.graph.edge(f).id.clone()))?;
    Ok(c * (&src.graph.edge(e).gain + src.k(e)) - dst.k(f))
}

/// Gains on `target` (its own gains are ignored) carried over from `source`
/// along `map`, a list of (target edge, source edge) covering every target
/// edge exactly once.
pub fn transport_onto(source: &Triple, target: &Triple, map: &[(String, String)]) -> Result<Triple> {
    if source.dim() != target.dim() {
        return Err(Error::DimensionMismatch { expected: source.dim(), found: target.dim() });
    }
    let mut gains: Vec<Option<Rational>> = vec![None; target.graph.num_edges()];
    for (t, s) in map {
        let f = target.graph.edge_index(t)?;
        let e = source.graph.edge_index(s)?;
        if gains[f].is_some() {
            return Err(Error::ImpossibleCorrespondence(format!("target edge `{t}` mapped twice")));
        }
        gains[f] = Some(transport_between(source, e, target, f)?);
    }
    let gains = gains
        .into_iter()
        .enumerate()
        .map(|(f, g)| g.ok_or_else(|| Error::ImpossibleCorrespondence(format!("target edge `{}` unmapped", target.graph.edge(f).id))))
        .collect::<Result<Vec<_>>>()?;
    Triple::new(target.config.clone(), target.graph.with_gains(&gains)?)
}

/// Canonical hyperplanes as a sorted multiset.
fn hyperplane_multiset(t: &Triple) -> Result<Vec<Vec<BigInt>>> {
    let a = build_arrangement(&t.config, &t.graph)?;
    let mut keys: Vec<Vec<BigInt>> = a.hyperplanes().iter().map(|h| h.canonical_key()).collect();
    keys.sort();
    Ok(keys)
}

/// Same arrangement, compared as multisets of canonical hyperplanes.
pub fn are_equivalent(t1: &Triple, t2: &Triple) -> Result<bool> {
    if t1.dim() != t2.dim() {
        return Err(Error::DimensionMismatch { expected: t1.dim(), found: t2.dim() });
    }
    Ok(hyperplane_multiset(t1)? == hyperplane_multiset(t2)?)
}

/// Direction up to scale: primitive integer vector, first nonzero positive.
fn direction_class(v: &Vector) -> Vec<BigInt> {
    let mut p = primitive_integer(&v.0);
    if p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in p.iter_mut() {
            *x = -x.clone();
        }
    }
    p
}

fn class_vector(class: &[BigInt]) -> Vector {
    Vector(class.iter().map(|x| Rational::from_integer(x.clone())).collect())
}

/// Small nonzero step factors tried in order.
fn step_factors() -> impl Iterator<Item = Rational> {
    (1i64..).flat_map(|n| {
        let n = Rational::from_integer(n.into());
        let inv = n.recip();
        let mut v = vec![n.clone(), -n.clone()];
        if !n.is_one() {
            v.push(inv.clone());
            v.push(-inv);
        }
        v
    })
}

fn fresh_label(used: &IndexMap<String, Vector>, stem: &str, i: usize) -> String {
    let mut k = i;
    loop {
        let l = format!("{stem}{k}");
        if !used.contains_key(&l) {
            return l;
        }
        k += 1;
    }
}

/// An equivalent triple in which edges with parallel hyperplanes are parallel
/// edges. Points are placed greedily: each direction class gets one pair of
/// points, reusing placed points and preferring new points that also realize
/// classes still waiting. The first point is the origin, so in dimension one
/// the result is the normal form on {0, 1}.
pub fn parallelism_canonicalization(t: &Triple) -> Result<Triple> {
    let d = t.dim();
    let m = t.graph.num_edges();
    let mut classes: Vec<Vec<BigInt>> = Vec::new();
    let mut class_of = Vec::with_capacity(m);
    for e in 0..m {
        let cl = direction_class(&t.direction(e));
        let i = classes.iter().position(|c| *c == cl).unwrap_or_else(|| {
            classes.push(cl);
            classes.len() - 1
        });
        class_of.push(i);
    }
    let dirs: Vec<Vector> = classes.iter().map(|c| class_vector(c)).collect();
    let mut pts: Vec<Vector> = Vec::new();
    let mut pair: Vec<Option<(usize, usize)>> = vec![None; dirs.len()];
    let realizes = |pts: &[Vector], p: &Vector, k: usize| -> Option<usize> {
        pts.iter().position(|q| parallel_factor(&dirs[k], &(p - q)).is_some())
    };
    for k in 0..dirs.len() {
        if pair[k].is_some() {
            continue;
        }
        if pts.is_empty() {
            pts.push(Vector::zeros(d));
        }
        // pairs already present
        let existing = (0..pts.len())
            .flat_map(|i| (0..pts.len()).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && parallel_factor(&dirs[k], &(&pts[j] - &pts[i])).is_some_and(|c| c.is_positive()));
        if let Some(p) = existing {
            pair[k] = Some(p);
            continue;
        }
        let mut best: Option<(usize, usize, Vector)> = None;
        let tries = 16;
        for (i, base) in pts.iter().enumerate() {
            for c in step_factors().take(tries) {
                let p = base + &dirs[k].scale(&c);
                if pts.contains(&p) {
                    continue;
                }
                let score = (0..dirs.len()).filter(|&j| j != k && pair[j].is_none() && realizes(&pts, &p, j).is_some()).count();
                if best.as_ref().is_none_or(|b| score > b.0) {
                    best = Some((score, i, p));
                }
            }
        }
        let (_, i, p) = best.expect("some step avoids finitely many points");
        pts.push(p);
        let new = pts.len() - 1;
        let (u, v) = if parallel_factor(&dirs[k], &(&pts[new] - &pts[i])).unwrap().is_positive() { (i, new) } else { (new, i) };
        pair[k] = Some((u, v));
        // classes completed by the new point
        for j in 0..dirs.len() {
            if pair[j].is_none() {
                if let Some(q) = realizes(&pts[..new], &pts[new], j) {
                    let c = parallel_factor(&dirs[j], &(&pts[new] - &pts[q])).unwrap();
                    pair[j] = Some(if c.is_positive() { (q, new) } else { (new, q) });
                }
            }
        }
    }
    let labels: Vec<String> = (0..pts.len()).map(|i| i.to_string()).collect();
    let config = Configuration::new(d, labels.iter().cloned().zip(pts.iter().cloned()).collect())?;
    let edges: Vec<Edge> = (0..m)
        .map(|e| {
            let (u, v) = pair[class_of[e]].unwrap();
            Edge::new(&t.graph.edge(e).id, &labels[u], &labels[v], Rational::zero())
        })
        .collect();
    let shape = Triple::new(config, GainGraph::new(labels, edges)?)?;
    let map: Vec<(String, String)> = t.graph.edges().iter().map(|e| (e.id.clone(), e.id.clone())).collect();
    transport_onto(t, &shape, &map)
}

/// True when parallel hyperplanes come only from parallel edges.
pub fn is_parallelism_canonical(t: &Triple) -> bool {
    let m = t.graph.num_edges();
    (0..m).all(|e| {
        (e + 1..m).all(|f| {
            parallel_factor(&t.direction(e), &t.direction(f)).is_none() || {
                let (a, b) = t.graph.ends(e);
                let (c, d) = t.graph.ends(f);
                (a, b) == (c, d) || (a, b) == (d, c)
            }
        })
    })
}

/// Equivalent triple in which the edges of circuit `x` form a circle on new
/// points, placed along the dependency of their directions.
pub fn realize_circuit_as_circle(t: &Triple, x: Circuit) -> Result<Triple> {
    let mat = matroid_at_infinity(&t.config, &t.graph)?;
    if !mat.is_circuit(x) {
        return Err(Error::NotACircuit);
    }
    if t.graph.circle_from_edges(x).is_ok() {
        return Ok(t.clone());
    }
    let order: Vec<usize> = x.iter().collect();
    let dirs: Vec<Vector> = order.iter().map(|&e| t.direction(e)).collect();
    let r = Matrix::from_rows(dirs.clone()).transpose().kernel();
    let r = r.first().ok_or(Error::NotACircuit)?.clone();
    let d = t.dim();
    // walk q'_{i+1} = q'_i + r_i·dir_i from an anchor chosen off Q
    let nudge = Vector((1..=d as i64).map(|i| Rational::from_integer(i.into())).collect());
    let mut walk = None;
    for s in 0i64.. {
        let anchor = nudge.scale(&Rational::from_integer(s.into()));
        let mut pts = vec![anchor];
        for (ri, di) in r.iter().zip(&dirs).take(order.len() - 1) {
            let next = pts.last().unwrap() + &di.scale(ri);
            pts.push(next);
        }
        if pts.iter().all(|p| !t.config.points().values().any(|q| q == p)) {
            walk = Some(pts);
            break;
        }
    }
    let pts = walk.unwrap();
    let mut points = t.config.points().clone();
    let mut labels = Vec::new();
    for (i, p) in pts.into_iter().enumerate() {
        let l = fresh_label(&points, "c", i);
        points.insert(l.clone(), p);
        labels.push(l);
    }
    let n = labels.len();
    let mut edges = t.graph.edges().to_vec();
    for (i, &e) in order.iter().enumerate() {
        edges[e] = Edge::new(&t.graph.edge(e).id, &labels[i], &labels[(i + 1) % n], Rational::zero());
    }
    // keep only vertices something is still attached to
    let verts: Vec<String> =
        points.keys().filter(|v| edges.iter().any(|e| &e.tail == *v || &e.head == *v)).cloned().collect();
    let points: IndexMap<String, Vector> = verts.iter().map(|v| (v.clone(), points[v].clone())).collect();
    let shape = Triple::new(Configuration::new(d, points)?, GainGraph::new(verts, edges)?)?;
    let map: Vec<(String, String)> = t.graph.edges().iter().map(|e| (e.id.clone(), e.id.clone())).collect();
    transport_onto(t, &shape, &map)
}

/// Equivalent triple on a tree. `tree` lists, for each edge of `t`, the edge
/// id with the tree vertices it joins. The root is the first tail; it sits at
/// the point of the same label in `t` if there is one, else at the origin.
pub fn tree_representation(t: &Triple, tree: &[(String, String, String)]) -> Result<Triple> {
    let m = t.graph.num_edges();
    if tree.len() != m {
        return Err(Error::ImpossibleCorrespondence(format!("tree has {} edges, graph has {m}", tree.len())));
    }
    let mut verts: Vec<String> = Vec::new();
    for (_, u, v) in tree {
        for w in [u, v] {
            if !verts.contains(w) {
                verts.push(w.clone());
            }
        }
    }
    if verts.len() != m + 1 {
        return Err(Error::ImpossibleCorrespondence("shape is not a tree".into()));
    }
    let mut seen = BitSet::EMPTY;
    for (id, _, _) in tree {
        let e = t.graph.edge_index(id).map_err(|_| Error::ImpossibleCorrespondence(format!("unknown edge `{id}`")))?;
        if seen.contains(e) {
            return Err(Error::ImpossibleCorrespondence(format!("edge `{id}` used twice")));
        }
        seen = seen.with(e);
    }
    let d = t.dim();
    let mut placed: IndexMap<String, Vector> = IndexMap::new();
    if let Some((_, root, _)) = tree.first() {
        let p = t.config.points().get(root).cloned().unwrap_or_else(|| Vector::zeros(d));
        placed.insert(root.clone(), p);
    }
    let mut done = vec![false; m];
    loop {
        let mut progress = false;
        for (i, (id, u, v)) in tree.iter().enumerate() {
            if done[i] {
                continue;
            }
            let dir = t.direction(t.graph.edge_index(id)?);
            let (from, to, sign) = match (placed.get(u), placed.get(v)) {
                (Some(_), None) => (u, v, Rational::one()),
                (None, Some(_)) => (v, u, -Rational::one()),
                (Some(_), Some(_)) => return Err(Error::ImpossibleCorrespondence("shape has a cycle".into())),
                (None, None) => continue,
            };
            let q = placed[from].clone();
            let p = step_factors()
                .map(|c| &q + &dir.scale(&(&c * &sign)))
                .find(|p| !placed.values().any(|x| x == p))
                .expect("finitely many points to avoid");
            placed.insert(to.clone(), p);
            done[i] = true;
            progress = true;
        }
        if done.iter().all(|&x| x) {
            break;
        }
        if !progress {
            return Err(Error::ImpossibleCorrespondence("shape is disconnected".into()));
        }
    }
    let points: IndexMap<String, Vector> = verts.iter().map(|v| (v.clone(), placed[v].clone())).collect();
    let edges: Vec<Edge> = tree.iter().map(|(id, u, v)| Edge::new(id, u, v, Rational::zero())).collect();
    let shape = Triple::new(Configuration::new(d, points)?, GainGraph::new(verts, edges)?)?;
    let map: Vec<(String, String)> = tree.iter().map(|(id, _, _)| (id.clone(), id.clone())).collect();
    transport_onto(t, &shape, &map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    fn kite(gains: [i64; 5]) -> Triple {
        let c = Configuration::from_ints(2, &[("1", &[0, 0]), ("2", &[4, 0]), ("3", &[3, 2]), ("4", &[1, 2])]).unwrap();
        let shape = [("a", "1", "2"), ("b", "1", "3"), ("c", "1", "4"), ("s", "2", "3"), ("t", "3", "4")];
        let g = GainGraph::from_edges(shape.iter().zip(gains).map(|(&(id, u, v), x)| Edge::new(id, u, v, rat(x))).collect())
            .unwrap();
        Triple::new(c, g).unwrap()
    }

    #[test]
    fn identity_transport() {
        let t = kite([-6, 0, 2, 2, 6]);
        assert_eq!(transported_gain(&t, "a", "a", &rat(7)).unwrap(), rat(7));
        assert!(matches!(transported_gain(&t, "a", "b", &rat(0)), Err(Error::NotParallel(..))));
        assert!(are_equivalent(&t, &t).unwrap());
        assert!(!are_equivalent(&t, &kite([-5, 0, 2, 2, 6])).unwrap());
    }

    #[test]
    fn canonicalization_of_kite() {
        let t = kite([-6, 0, 2, 2, 6]);
        let u = parallelism_canonicalization(&t).unwrap();
        assert!(are_equivalent(&t, &u).unwrap());
        assert!(is_parallelism_canonical(&u));
        assert_eq!(u.config.len(), 4);
    }

    #[test]
    fn circuit_to_circle() {
        let t = kite([-6, 0, 2, 2, 6]);
        let at = t.graph.edge_set(&["a", "t"]).unwrap();
        let u = realize_circuit_as_circle(&t, at).unwrap();
        assert!(are_equivalent(&t, &u).unwrap());
        assert!(u.graph.circle_from_edges(at).is_ok());
        let abs = t.graph.edge_set(&["a", "b", "s"]).unwrap();
        assert_eq!(realize_circuit_as_circle(&t, abs).unwrap(), t);
    }

    #[test]
    fn trees() {
        let t = kite([-6, 0, 2, 2, 6]);
        let path: Vec<(String, String, String)> = ["a", "b", "c", "s", "t"]
            .iter()
            .enumerate()
            .map(|(i, id)| (id.to_string(), format!("p{i}"), format!("p{}", i + 1)))
            .collect();
        let u = tree_representation(&t, &path).unwrap();
        assert!(are_equivalent(&t, &u).unwrap());
        assert_eq!(u.config.len(), 6);
        assert!(matches!(tree_representation(&t, &path[..4]), Err(Error::ImpossibleCorrespondence(_))));
    }
}
