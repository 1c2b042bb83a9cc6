//! Graphs whose oriented edges carry rational gains in the additive group.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::Zero;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exactla::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub gain: Rational,
}

impl Edge {
    pub fn new(id: &str, tail: &str, head: &str, gain: Rational) -> Self {
        Edge { id: id.into(), tail: tail.into(), head: head.into(), gain }
    }
}

/// Edges are indexed by declaration order; that order is the preferred one
/// everywhere (reports, canonical signs, circuit order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    ends: Vec<(usize, usize)>,
}

/// One traversal step: edge index and whether it is walked tail to head.
pub type Step = (usize, bool);

/// A circle as traced by a closed walk. Stored in canonical form: the
/// lexicographically least edge sequence among rotations and reflections.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circle {
    steps: Vec<Step>,
}

impl Circle {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn edges(&self) -> BitSet {
        self.steps.iter().map(|s| s.0).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    fn canonical(steps: Vec<Step>) -> Circle {
        let k = steps.len();
        let mut best: Option<Vec<Step>> = None;
        let reversed: Vec<Step> = steps.iter().rev().map(|&(e, f)| (e, !f)).collect();
        for seq in [&steps, &reversed] {
            for r in 0..k {
                let cand: Vec<Step> = seq[r..].iter().chain(&seq[..r]).copied().collect();
                let key = |s: &Vec<Step>| s.iter().map(|x| x.0).collect::<Vec<_>>();
                if best.as_ref().is_none_or(|b| key(&cand) < key(b) || (key(&cand) == key(b) && cand < *b)) {
                    best = Some(cand);
                }
            }
        }
        Circle { steps: best.unwrap_or_default() }
    }
}

impl GainGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{v}`")));
            }
        }
        if edges.len() > BitSet::CAPACITY {
            return Err(Error::InvalidGraph(format!("at most {} edges are supported", BitSet::CAPACITY)));
        }
        let mut ids = BTreeSet::new();
        let mut ends = Vec::with_capacity(edges.len());
        for e in &edges {
            if !ids.insert(e.id.clone()) {
                return Err(Error::InvalidGraph(format!("duplicate edge id `{}`", e.id)));
            }
            let t = *index.get(&e.tail).ok_or_else(|| Error::UnknownVertex(e.tail.clone()))?;
            let h = *index.get(&e.head).ok_or_else(|| Error::UnknownVertex(e.head.clone()))?;
            if t == h {
                return Err(Error::InvalidGraph(format!("edge `{}` is a loop", e.id)));
            }
            ends.push((t, h));
        }
        Ok(GainGraph { vertices, edges, ends })
    }

    /// Vertices in order of first appearance along the edge list.
    pub fn from_edges(edges: Vec<Edge>) -> Result<Self> {
        let mut vs: Vec<String> = Vec::new();
        for e in &edges {
            for v in [&e.tail, &e.head] {
                if !vs.contains(v) {
                    vs.push(v.clone());
                }
            }
        }
        Self::new(vs, edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn all_edges(&self) -> BitSet {
        BitSet::full(self.edges.len())
    }

    /// (tail, head) as vertex indices.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vertices.iter().position(|x| x == v).ok_or_else(|| Error::UnknownVertex(v.into()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.edges.iter().position(|e| e.id == id).ok_or_else(|| Error::UnknownEdge(id.into()))
    }

    pub fn edge_set(&self, ids: &[&str]) -> Result<BitSet> {
        ids.iter().map(|id| self.edge_index(id)).collect::<Result<Vec<_>>>().map(BitSet::from_indices)
    }

    pub fn gains(&self) -> Vec<Rational> {
        self.edges.iter().map(|e| e.gain.clone()).collect()
    }

    /// Same graph, new gains in edge order.
    pub fn with_gains(&self, gains: &[Rational]) -> Result<Self> {
        if gains.len() != self.edges.len() {
            return Err(Error::DimensionMismatch { expected: self.edges.len(), found: gains.len() });
        }
        let mut g = self.clone();
        for (e, x) in g.edges.iter_mut().zip(gains) {
            e.gain = x.clone();
        }
        Ok(g)
    }

    /// Display label of an edge set: ids concatenated when all are single
    /// characters, comma separated otherwise. Edge order is declaration order.
    pub fn label(&self, s: BitSet) -> String {
        let ids: Vec<&str> = s.iter().map(|i| self.edges[i].id.as_str()).collect();
        if self.edges.iter().all(|e| e.id.chars().count() == 1) {
            ids.concat()
        } else {
            ids.join(",")
        }
    }

    /// Gain of traversing edge `e` in direction `forward`.
    pub fn step_gain(&self, (e, forward): Step) -> Rational {
        if forward {
            self.edges[e].gain.clone()
        } else {
            -self.edges[e].gain.clone()
        }
    }

    /// Signed gain along the walk that starts at `start` and follows `edges`.
    pub fn walk_gain(&self, start: &str, edges: &[&str]) -> Result<Rational> {
        let mut cur = self.vertex_index(start).map_err(|_| Error::InvalidWalk(format!("unknown start `{start}`")))?;
        let mut total = Rational::zero();
        for id in edges {
            let e = self.edge_index(id).map_err(|_| Error::InvalidWalk(format!("unknown edge `{id}`")))?;
            let (t, h) = self.ends[e];
            if cur == t {
                total += &self.edges[e].gain;
                cur = h;
            } else if cur == h {
                total -= &self.edges[e].gain;
                cur = t;
            } else {
                return Err(Error::InvalidWalk(format!("edge `{id}` does not leave `{}`", self.vertices[cur])));
            }
        }
        Ok(total)
    }

    pub fn circle_gain(&self, c: &Circle) -> Rational {
        c.steps.iter().fold(Rational::zero(), |acc, &s| acc + self.step_gain(s))
    }

    /// Traces the edge set as a circle, or reports why it is not one.
    pub fn circle_from_edges(&self, s: BitSet) -> Result<Circle> {
        if s.is_empty() || s.iter().any(|e| e >= self.edges.len()) {
            return Err(Error::NotACircle(format!("{s:?}")));
        }
        let mut deg: HashMap<usize, usize> = HashMap::new();
        for e in s.iter() {
            let (t, h) = self.ends[e];
            *deg.entry(t).or_default() += 1;
            *deg.entry(h).or_default() += 1;
        }
        if deg.values().any(|&d| d != 2) {
            return Err(Error::NotACircle(self.label(s)));
        }
        let first = s.first().unwrap();
        let (start, mut cur) = self.ends[first];
        let mut steps = vec![(first, true)];
        let mut used = BitSet::singleton(first);
        while cur != start {
            let Some(e) = s.difference(used).iter().find(|&e| self.ends[e].0 == cur || self.ends[e].1 == cur) else {
                return Err(Error::NotACircle(self.label(s)));
            };
            let (t, h) = self.ends[e];
            let forward = t == cur;
            cur = if forward { h } else { t };
            steps.push((e, forward));
            used = used.with(e);
        }
        if used != s {
            return Err(Error::NotACircle(self.label(s)));
        }
        Ok(Circle::canonical(steps))
    }

    /// Every circle once, sorted by canonical form.
    pub fn all_circles(&self) -> Vec<Circle> {
        let n = self.vertices.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &(t, h)) in self.ends.iter().enumerate() {
            incident[t].push(e);
            incident[h].push(e);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in 0..n {
            let mut path = Vec::new();
            let mut on_path = vec![false; n];
            on_path[s] = true;
            self.circle_dfs(s, s, &incident, &mut on_path, &mut path, BitSet::EMPTY, &mut seen, &mut out);
        }
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn circle_dfs(
        &self,
        s: usize,
        cur: usize,
        incident: &[Vec<usize>],
        on_path: &mut [bool],
        path: &mut Vec<Step>,
        used: BitSet,
        seen: &mut BTreeSet<BitSet>,
        out: &mut Vec<Circle>,
    ) {
        for &e in &incident[cur] {
            if used.contains(e) {
                continue;
            }
            let (t, h) = self.ends[e];
            let forward = t == cur;
            let next = if forward { h } else { t };
            if next == s {
                let edges = used.with(e);
                if seen.insert(edges) {
                    let mut steps = path.clone();
                    steps.push((e, forward));
                    out.push(Circle::canonical(steps));
                }
            } else if next > s && !on_path[next] {
                on_path[next] = true;
                path.push((e, forward));
                self.circle_dfs(s, next, incident, on_path, path, used.with(e), seen, out);
                path.pop();
                on_path[next] = false;
            }
        }
    }

    /// Potential φ on the vertices touched by `s` with g(e) = φ(head) − φ(tail)
    /// on every edge of `s`, if one exists.
    fn potentials(&self, s: BitSet) -> Option<Vec<Option<Rational>>> {
        let n = self.vertices.len();
        let mut phi: Vec<Option<Rational>> = vec![None; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in s.iter() {
            let (t, h) = self.ends[e];
            adj[t].push(e);
            adj[h].push(e);
        }
        for root in 0..n {
            if phi[root].is_some() || adj[root].is_empty() {
                continue;
            }
            phi[root] = Some(Rational::zero());
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let pu = phi[u].clone().unwrap();
                for &e in &adj[u] {
                    let (t, h) = self.ends[e];
                    let (v, want) = if t == u {
                        (h, &pu + &self.edges[e].gain)
                    } else {
                        (t, &pu - &self.edges[e].gain)
                    };
                    match &phi[v] {
                        Some(pv) if *pv != want => return None,
                        Some(_) => {}
                        None => {
                            phi[v] = Some(want);
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
        Some(phi)
    }

    pub fn is_balanced(&self, s: BitSet) -> bool {
        self.potentials(s).is_some()
    }

    /// Components of the spanning subgraph (V, s) as a vertex labelling.
    pub fn components(&self, s: BitSet) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in s.iter() {
            let (t, h) = self.ends[e];
            let (a, b) = (find(&mut parent, t), find(&mut parent, h));
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.vertices.len()).map(|v| find(&mut parent, v)).collect()
    }

    /// Rank of `s` in the cycle matroid: |V| minus number of components.
    pub fn cycle_rank(&self, s: BitSet) -> usize {
        let comp = self.components(s);
        let roots: BTreeSet<usize> = comp.iter().copied().collect();
        self.vertices.len() - roots.len()
    }

    /// Largest balanced set containing the balanced set `s`.
    pub fn balance_closure(&self, s: BitSet) -> Result<BitSet> {
        let phi = self.potentials(s).ok_or(Error::UnbalancedInput)?;
        let comp = self.components(s);
        let mut out = s;
        for e in 0..self.edges.len() {
            let (t, h) = self.ends[e];
            if s.contains(e) || comp[t] != comp[h] {
                continue;
            }
            // same component of s, so both potentials exist
            if let (Some(pt), Some(ph)) = (&phi[t], &phi[h]) {
                if ph - pt == self.edges[e].gain {
                    out = out.with(e);
                }
            }
        }
        Ok(out)
    }

    /// Two distinct circles whose union is a theta graph.
    pub fn is_theta(&self, c1: BitSet, c2: BitSet) -> bool {
        if c1 == c2 {
            return false;
        }
        let u = c1.union(c2);
        let mut deg: HashMap<usize, usize> = HashMap::new();
        for e in u.iter() {
            let (t, h) = self.ends[e];
            *deg.entry(t).or_default() += 1;
            *deg.entry(h).or_default() += 1;
        }
        let threes = deg.values().filter(|&&d| d == 3).count();
        if threes != 2 || deg.values().any(|&d| d != 2 && d != 3) {
            return false;
        }
        let comp = self.components(u);
        let mut roots = deg.keys().map(|&v| comp[v]);
        let r0 = roots.next();
        roots.all(|r| Some(r) == r0)
    }

    /// Closed under symmetric difference of theta pairs.
    pub fn is_linear_class_of_circles(&self, cls: &[Circle]) -> bool {
        let sets: BTreeSet<BitSet> = cls.iter().map(|c| c.edges()).collect();
        for &a in &sets {
            for &b in &sets {
                if a < b && self.is_theta(a, b) && !sets.contains(&a.symmetric_difference(b)) {
                    return false;
                }
            }
        }
        true
    }
}
