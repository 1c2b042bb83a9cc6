//! The Pythagorean arrangement of a gain graph over reference points, its
//! central sets and labelled intersection semilattice.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exactla::{primitive_integer, solve, AffineSubspace, Matrix, Rational, Vector};
use crate::gaingraph::GainGraph;
use crate::matroid::{SetFamily, VectorMatroid};
use crate::pointconfig::Configuration;

/// `normal · x = offset`, with normal 2(q_v − q_u) and offset
/// g(e) + |q_v|² − |q_u|².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vector,
    pub offset: Rational,
    pub label: String,
}

impl Hyperplane {
    pub fn contains(&self, x: &Vector) -> bool {
        self.normal.dot(x) == self.offset
    }

    /// Primitive integer vector (normal, offset), first nonzero normal entry
    /// positive. Two hyperplanes are the same point set iff keys match.
    pub fn canonical_key(&self) -> Vec<BigInt> {
        let mut v = self.normal.0.clone();
        v.push(self.offset.clone());
        let mut p = primitive_integer(&v);
        if p.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in p.iter_mut() {
                *x = -x.clone();
            }
        }
        p
    }

    /// Equation in integer form, e.g. `4x + 6y = 13`. Variables are x, y, z
    /// up to dimension 3 and x1, x2, ... beyond.
    pub fn equation(&self) -> String {
        let key = self.canonical_key();
        let d = key.len() - 1;
        let names: Vec<String> = if d <= 3 {
            ["x", "y", "z"][..d].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=d).map(|i| format!("x{i}")).collect()
        };
        format!("{} = {}", linear_form(&key[..d], &names), key[d])
    }
}

/// Renders Σ c_i·name_i with integer coefficients, `0` if all vanish.
pub fn linear_form(coeffs: &[BigInt], names: &[String]) -> String {
    let mut out = String::new();
    for (c, n) in coeffs.iter().zip(names) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = if mag == BigInt::from(1) { n.clone() } else { format!("{mag}{n}") };
        if out.is_empty() {
            out = if c.is_negative() { format!("-{body}") } else { body };
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

pub fn build_arrangement(c: &Configuration, g: &GainGraph) -> Result<Arrangement> {
    let two = Rational::from_integer(2.into());
    let hyperplanes = g
        .edges()
        .iter()
        .map(|e| {
            let qu = c.point(&e.tail)?;
            let qv = c.point(&e.head)?;
            Ok(Hyperplane {
                normal: (qv - qu).scale(&two),
                offset: &e.gain + qv.norm_sq() - qu.norm_sq(),
                label: e.id.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Arrangement { dim: c.dim(), hyperplanes })
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if let Some(h) = hyperplanes.iter().find(|h| h.normal.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: h.normal.dim() });
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn all(&self) -> BitSet {
        BitSet::full(self.hyperplanes.len())
    }

    pub fn label_set(&self, labels: &[&str]) -> Result<BitSet> {
        labels
            .iter()
            .map(|l| {
                self.hyperplanes.iter().position(|h| h.label == *l).ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(BitSet::from_indices)
    }

    pub fn label(&self, s: BitSet) -> String {
        let ids: Vec<&str> = s.iter().map(|i| self.hyperplanes[i].label.as_str()).collect();
        if self.hyperplanes.iter().all(|h| h.label.chars().count() == 1) {
            ids.concat()
        } else {
            ids.join(",")
        }
    }

    /// The linear system of the hyperplanes in `s`.
    pub fn system(&self, s: BitSet) -> (Matrix, Vector) {
        let rows = s.iter().map(|i| self.hyperplanes[i].normal.clone()).collect();
        let rhs = Vector(s.iter().map(|i| self.hyperplanes[i].offset.clone()).collect());
        (Matrix::new(rows, self.dim).expect("normals share the ambient dimension"), rhs)
    }

    fn solve_set(&self, s: BitSet) -> AffineSubspace {
        let (m, b) = self.system(s);
        solve(&m, &b).expect("system is square by construction")
    }

    pub fn is_central(&self, s: BitSet) -> Result<bool> {
        if !s.is_subset(self.all()) {
            return Err(Error::UnknownLabel(format!("{s:?}")));
        }
        Ok(!self.solve_set(s).is_empty())
    }

    pub fn is_central_labels(&self, labels: &[&str]) -> Result<bool> {
        self.is_central(self.label_set(labels)?)
    }

    pub fn flat_of(&self, s: BitSet) -> Result<AffineSubspace> {
        if !s.is_subset(self.all()) {
            return Err(Error::UnknownLabel(format!("{s:?}")));
        }
        let f = self.solve_set(s);
        if f.is_empty() {
            Err(Error::NotCentral)
        } else {
            Ok(f)
        }
    }

    /// Hyperplanes containing the subspace.
    pub fn containing(&self, f: &AffineSubspace) -> BitSet {
        let Some(base) = f.base() else { return BitSet::EMPTY };
        (0..self.hyperplanes.len())
            .filter(|&i| {
                let h = &self.hyperplanes[i];
                h.contains(base) && f.directions().iter().all(|d| h.normal.dot(d).is_zero())
            })
            .collect()
    }

    /// Codimension of the flat of a central set, which is the rank of its normals.
    pub fn codim(&self, s: BitSet) -> usize {
        let (m, _) = self.system(s);
        m.rank()
    }

    /// All central subsets. Ground sets up to 16 hyperplanes.
    pub fn central_sets(&self) -> SetFamily {
        SetFamily::from_predicate(self.len(), |s| !self.solve_set(s).is_empty())
    }

    /// Vector matroid of the normals.
    pub fn normal_matroid(&self) -> VectorMatroid {
        VectorMatroid::new(
            self.hyperplanes.iter().map(|h| h.label.clone()).collect(),
            self.hyperplanes.iter().map(|h| h.normal.clone()).collect(),
            self.dim,
        )
        .expect("consistent dimensions")
    }

    /// Vector matroid of (normal, offset), the cone over the arrangement.
    pub fn cone_matroid(&self) -> VectorMatroid {
        VectorMatroid::new(
            self.hyperplanes.iter().map(|h| h.label.clone()).collect(),
            self.hyperplanes
                .iter()
                .map(|h| {
                    let mut v = h.normal.0.clone();
                    v.push(h.offset.clone());
                    Vector(v)
                })
                .collect(),
            self.dim + 1,
        )
        .expect("consistent dimensions")
    }

    pub fn intersection_semilattice(&self) -> LabeledSemilattice {
        let whole = AffineSubspace::whole(self.dim);
        let mut by_label: BTreeMap<BitSet, AffineSubspace> = BTreeMap::new();
        by_label.insert(self.containing(&whole), whole);
        let mut queue: VecDeque<BitSet> = by_label.keys().copied().collect();
        while let Some(lbl) = queue.pop_front() {
            let f = by_label[&lbl].clone();
            for i in 0..self.hyperplanes.len() {
                if lbl.contains(i) {
                    continue;
                }
                let h = &self.hyperplanes[i];
                let g = f.meet_hyperplane(&h.normal, &h.offset).expect("same ambient dimension");
                if g.is_empty() {
                    continue;
                }
                let l = self.containing(&g);
                if let std::collections::btree_map::Entry::Vacant(slot) = by_label.entry(l) {
                    slot.insert(g);
                    queue.push_back(l);
                }
            }
        }
        let mut flats: Vec<SemilatticeFlat> = by_label
            .into_iter()
            .map(|(labels, subspace)| SemilatticeFlat { codim: subspace.codim().unwrap(), labels, subspace })
            .collect();
        flats.sort_by_key(|f| (f.codim, f.labels.iter().collect::<Vec<_>>()));
        let covers = covers_by(&flats, |a, b| a.labels.is_subset(b.labels) && a.codim + 1 == b.codim);
        LabeledSemilattice { flats, covers }
    }
}

/// A flat of the arrangement with the set of all hyperplanes containing it.
#[derive(Clone, Debug)]
pub struct SemilatticeFlat {
    pub subspace: AffineSubspace,
    pub labels: BitSet,
    pub codim: usize,
}

#[derive(Clone, Debug)]
pub struct LabeledSemilattice {
    /// Sorted by codimension, then label.
    pub flats: Vec<SemilatticeFlat>,
    /// Covering pairs (lower, upper) as indices into `flats`.
    pub covers: Vec<(usize, usize)>,
}

impl LabeledSemilattice {
    pub fn of_codim(&self, k: usize) -> impl Iterator<Item = &SemilatticeFlat> {
        self.flats.iter().filter(move |f| f.codim == k)
    }

    /// Codimension and labels of every flat, the data compared across
    /// arrangements for "same combinatorial type".
    pub fn signature(&self) -> Vec<(usize, BitSet)> {
        self.flats.iter().map(|f| (f.codim, f.labels)).collect()
    }

    pub fn find(&self, labels: BitSet) -> Option<&SemilatticeFlat> {
        self.flats.iter().find(|f| f.labels == labels)
    }
}

pub(crate) fn covers_by<T>(items: &[T], covers: impl Fn(&T, &T) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, a) in items.iter().enumerate() {
        for (j, b) in items.iter().enumerate() {
            if i != j && covers(a, b) {
                out.push((i, j));
            }
        }
    }
    out
}

/// For every edge set: central iff each circuit of the matroid at infinity
/// inside it is central. Returns whether that holds throughout.
pub fn central_circuit_criterion(a: &Arrangement, m: &VectorMatroid) -> bool {
    let circuits = m.circuits();
    let central_circuit: Vec<bool> = circuits.iter().map(|&c| a.is_central(c).unwrap_or(false)).collect();
    a.all().subsets().all(|s| {
        let lhs = a.is_central(s).unwrap_or(false);
        let rhs = circuits.iter().zip(&central_circuit).all(|(c, &ok)| !c.is_subset(s) || ok);
        lhs == rhs
    })
}
