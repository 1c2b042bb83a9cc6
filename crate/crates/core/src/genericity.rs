//! Hyperplanes of nongenericity in gain space and the arrangement they form.
//!
//! Gain space is Q^E with coordinates γ_e in edge order. For a circuit X of
//! the matroid at infinity, F_X is the set of gains making the hyperplanes of
//! X concurrent. The flats of {F_X} classify every combinatorial type the
//! Pythagorean arrangement can take over a fixed configuration.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arrangement::{build_arrangement, covers_by, linear_form};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exactla::{primitive_integer, solve, span_basis, AffineSubspace, Matrix, Rational, Vector};
use crate::gaingraph::{Circle, GainGraph};
use crate::matroid::{Circuit, VectorMatroid};
use crate::pointconfig::{matroid_at_infinity, Configuration};

/// Σ c_e γ_e + constant = 0, kept in canonical form: the coefficients and
/// constant form a primitive integer vector whose first nonzero coefficient
/// is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSpaceHyperplane {
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl EdgeSpaceHyperplane {
    pub fn new(coeffs: Vec<Rational>, constant: Rational) -> Self {
        let mut all = coeffs.clone();
        all.push(constant);
        let mut p = primitive_integer(&all);
        if p[..coeffs.len()].iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in p.iter_mut() {
                *x = -x.clone();
            }
        }
        let constant = Rational::from_integer(p.pop().unwrap());
        EdgeSpaceHyperplane { coeffs: p.into_iter().map(Rational::from_integer).collect(), constant }
    }

    pub fn from_ints(coeffs: &[i64], constant: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(), Rational::from_integer(constant.into()))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn normal(&self) -> Vector {
        Vector(self.coeffs.clone())
    }

    pub fn support(&self) -> BitSet {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    /// Left-hand side at the gain vector `g`.
    pub fn eval(&self, g: &[Rational]) -> Rational {
        self.coeffs.iter().zip(g).fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }

    pub fn contains(&self, g: &[Rational]) -> bool {
        self.eval(g).is_zero()
    }

    /// As an affine subspace of gain space.
    pub fn subspace(&self) -> AffineSubspace {
        solve(&Matrix::from_rows(vec![self.normal()]), &Vector(vec![-self.constant.clone()])).expect("one equation")
    }

    pub fn contains_subspace(&self, s: &AffineSubspace) -> bool {
        match s.base() {
            None => true,
            Some(b) => {
                self.contains(&b.0) && s.directions().iter().all(|d| self.normal().dot(d).is_zero())
            }
        }
    }

    /// `g(a) - 2g(b) + 2g(c) = 0` style rendering with the given edge ids.
    pub fn display(&self, ids: &[String]) -> String {
        let names: Vec<String> = ids.iter().map(|id| format!("g({id})")).collect();
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.to_integer()).collect();
        format!("{} = {}", linear_form(&ints, &names), (-self.constant.clone()).to_integer())
    }
}

impl fmt::Display for EdgeSpaceHyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = (1..=self.coeffs.len()).map(|i| i.to_string()).collect();
        write!(f, "{}", self.display(&ids))
    }
}

/// Final column of the system matrix: entry i is `constant_i − ½γ_{edge_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicColumn {
    pub entries: Vec<(Rational, usize)>,
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// |q_head|² − |q_tail|² for every edge.
pub fn squared_norm_differences(c: &Configuration, g: &GainGraph) -> Result<Vec<Rational>> {
    g.edges()
        .iter()
        .map(|e| Ok(c.point(&e.head)?.norm_sq() - c.point(&e.tail)?.norm_sq()))
        .collect()
}

/// Rows q_v − q_u of the edges of `s` and the symbolic column
/// −½(γ_e + |q_v|² − |q_u|²).
pub fn system_matrix(c: &Configuration, g: &GainGraph, s: BitSet) -> Result<(Matrix, SymbolicColumn)> {
    if c.dim() == 0 {
        return Err(Error::MissingData("system matrices need dimension at least 1".into()));
    }
    if !s.is_subset(g.all_edges()) {
        return Err(Error::MissingData(format!("edge set {s:?} is not inside the graph")));
    }
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for e in s.iter() {
        let edge = g.edge(e);
        let qu = c.point(&edge.tail).map_err(|_| Error::MissingData(format!("no point for `{}`", edge.tail)))?;
        let qv = c.point(&edge.head).map_err(|_| Error::MissingData(format!("no point for `{}`", edge.head)))?;
        rows.push(qv - qu);
        entries.push((-(qv.norm_sq() - qu.norm_sq()) * half(), e));
    }
    Ok((Matrix::new(rows, c.dim())?, SymbolicColumn { entries }))
}

/// Directions expressed in coordinates of a basis of their span, so that the
/// cofactor formula applies when the configuration is not full dimensional.
fn working_directions(m: &VectorMatroid) -> Vec<Vector> {
    let r = m.full_rank();
    if r == m.dim() {
        return m.vectors().to_vec();
    }
    let w = span_basis(m.vectors(), m.dim());
    let wt = Matrix::from_rows(w).transpose();
    m.vectors()
        .iter()
        .map(|v| solve(&wt, v).ok().and_then(|s| s.base().cloned()).expect("direction lies in the span"))
        .collect()
}

/// F_X from the fundamental circuit of `x0` over the basis `b`. Coefficient of
/// γ for the row i of the (r+1)×(r+1) matrix is ½(−1)^{i+r}·det D_i, D_i being
/// the numeric part with row i removed.
pub fn forbidden_hyperplane_from(c: &Configuration, g: &GainGraph, b: BitSet, x0: usize) -> Result<EdgeSpaceHyperplane> {
    let m = matroid_at_infinity(c, g)?;
    if !m.is_basis(b) {
        return Err(Error::NotABasis);
    }
    if b.contains(x0) {
        return Err(Error::ElementInBasis);
    }
    let dirs = working_directions(&m);
    let k = squared_norm_differences(c, g)?;
    let r = m.full_rank();
    let order: Vec<usize> = b.iter().chain([x0]).collect();
    let numeric = Matrix::from_rows(order.iter().map(|&e| dirs[e].clone()).collect());
    let all_cols: Vec<usize> = (0..r).collect();
    let mut coeffs = vec![Rational::zero(); g.num_edges()];
    let mut constant = Rational::zero();
    for (i, &e) in order.iter().enumerate() {
        let rows: Vec<usize> = (0..=r).filter(|&j| j != i).collect();
        let d = numeric.minor(&rows, &all_cols).det()?;
        // i is zero based here, so the sign (−1)^{(i+1)+r}
        let sign = if (i + 1 + r) % 2 == 0 { Rational::one() } else { -Rational::one() };
        let ci = sign * half() * d;
        constant += &ci * &k[e];
        coeffs[e] = ci;
    }
    Ok(EdgeSpaceHyperplane::new(coeffs, constant))
}

/// F_X for a circuit X: the first element of X over the first basis (in
/// mask order) extending the rest of X.
pub fn forbidden_hyperplane(c: &Configuration, g: &GainGraph, x: Circuit) -> Result<EdgeSpaceHyperplane> {
    let m = matroid_at_infinity(c, g)?;
    if !m.is_circuit(x) {
        return Err(Error::NotACircuit);
    }
    let x0 = x.first().unwrap();
    let b = extend_to_basis(&m, x.without(x0)).ok_or(Error::NoExtendingBasis)?;
    forbidden_hyperplane_from(c, g, b, x0)
}

/// Greedy extension of an independent set to a basis.
pub fn extend_to_basis(m: &VectorMatroid, s: BitSet) -> Option<BitSet> {
    if !m.is_independent(s) {
        return None;
    }
    let mut b = s;
    for e in 0..m.len() {
        if !b.contains(e) && m.is_independent(b.with(e)) {
            b = b.with(e);
        }
    }
    Some(b)
}

/// Every (basis, element) pair whose fundamental circuit is `x`.
pub fn circuit_presentations(m: &VectorMatroid, x: Circuit) -> Vec<(BitSet, usize)> {
    let r = m.full_rank();
    let mut out = Vec::new();
    for b in m.ground().subsets_of_size(r) {
        if !m.is_independent(b) {
            continue;
        }
        for x0 in x.difference(b).iter() {
            if x.without(x0).is_subset(b) {
                out.push((b, x0));
            }
        }
    }
    out
}

/// One F_X per circuit, circuits in lexicographic order.
pub fn derived_arrangement(c: &Configuration, g: &GainGraph) -> Result<Vec<(Circuit, EdgeSpaceHyperplane)>> {
    let m = matroid_at_infinity(c, g)?;
    m.circuits().into_iter().map(|x| Ok((x, forbidden_hyperplane(c, g, x)?))).collect()
}

pub fn is_gain_generic(c: &Configuration, g: &GainGraph) -> Result<bool> {
    Ok(central_circuits(c, g)?.is_empty())
}

/// Circuits whose F_X vanishes at the gains of `g`.
pub fn central_circuits(c: &Configuration, g: &GainGraph) -> Result<Vec<Circuit>> {
    let gains = g.gains();
    Ok(derived_arrangement(c, g)?.into_iter().filter(|(_, f)| f.contains(&gains)).map(|(x, _)| x).collect())
}

/// A flat A of the derived arrangement with 𝒞(A) = {X : F_X ⊇ A}.
#[derive(Clone, Debug)]
pub struct FlatOfF {
    pub circuits: Vec<Circuit>,
    pub subspace: AffineSubspace,
}

impl FlatOfF {
    pub fn dim(&self) -> usize {
        self.subspace.dim().expect("flats are nonempty")
    }

    /// A gain vector on the flat.
    pub fn representative(&self) -> Vec<Rational> {
        self.subspace.base().expect("flats are nonempty").0.clone()
    }
}

pub fn flat_of_gain(c: &Configuration, g: &GainGraph) -> Result<FlatOfF> {
    let gains = g.gains();
    let derived = derived_arrangement(c, g)?;
    let mut flat = AffineSubspace::whole(g.num_edges());
    for (_, f) in derived.iter().filter(|(_, f)| f.contains(&gains)) {
        flat = flat.intersect(&f.subspace())?;
    }
    let circuits = derived.iter().filter(|(_, f)| f.contains_subspace(&flat)).map(|(x, _)| *x).collect();
    Ok(FlatOfF { circuits, subspace: flat })
}

/// All flats of the derived arrangement ordered by codimension, then by
/// circuit indices. Flat i covers flat j when `(j, i)` is in `covers`.
#[derive(Clone, Debug)]
pub struct FlatsLattice {
    pub derived: Vec<(Circuit, EdgeSpaceHyperplane)>,
    pub flats: Vec<FlatOfF>,
    pub covers: Vec<(usize, usize)>,
}

impl FlatsLattice {
    pub fn circuit_index(&self, x: Circuit) -> Option<usize> {
        self.derived.iter().position(|(y, _)| *y == x)
    }

    pub fn find(&self, circuits: &[Circuit]) -> Option<usize> {
        let want: BTreeSet<Circuit> = circuits.iter().copied().collect();
        self.flats.iter().position(|f| f.circuits.iter().copied().collect::<BTreeSet<_>>() == want)
    }

    pub fn codim(&self, i: usize) -> usize {
        self.flats[i].subspace.codim().unwrap()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// Index of the flat with the most circuits; it is unique when the
    /// arrangement is central, which it always is (every F_X passes through
    /// the gains making all hyperplanes concurrent).
    pub fn top(&self) -> usize {
        (0..self.flats.len()).max_by_key(|&i| (self.flats[i].circuits.len(), self.codim(i))).unwrap_or(0)
    }
}

pub fn flats_lattice(c: &Configuration, g: &GainGraph) -> Result<FlatsLattice> {
    let derived = derived_arrangement(c, g)?;
    let n = g.num_edges();
    let labels_of = |s: &AffineSubspace| -> BTreeSet<usize> {
        (0..derived.len()).filter(|&i| derived[i].1.contains_subspace(s)).collect()
    };
    let whole = AffineSubspace::whole(n);
    let mut found: BTreeMap<BTreeSet<usize>, AffineSubspace> = BTreeMap::new();
    found.insert(labels_of(&whole), whole);
    let mut queue: VecDeque<BTreeSet<usize>> = found.keys().cloned().collect();
    while let Some(lbl) = queue.pop_front() {
        let a = found[&lbl].clone();
        for (i, (_, f)) in derived.iter().enumerate() {
            if lbl.contains(&i) {
                continue;
            }
            let b = a.meet_hyperplane(&f.normal(), &-f.constant().clone())?;
            if b.is_empty() {
                continue;
            }
            let l = labels_of(&b);
            if !found.contains_key(&l) {
                found.insert(l.clone(), b);
                queue.push_back(l);
            }
        }
    }
    let mut flats: Vec<(BTreeSet<usize>, AffineSubspace)> = found.into_iter().collect();
    flats.sort_by_key(|(l, s)| (s.codim().unwrap(), l.iter().copied().collect::<Vec<_>>()));
    let keyed: Vec<(BTreeSet<usize>, usize)> = flats.iter().map(|(l, s)| (l.clone(), s.codim().unwrap())).collect();
    let covers = covers_by(&keyed, |a, b| a.0.is_subset(&b.0) && a.1 + 1 == b.1);
    let flats = flats
        .into_iter()
        .map(|(l, subspace)| FlatOfF { circuits: l.into_iter().map(|i| derived[i].0).collect(), subspace })
        .collect();
    Ok(FlatsLattice { derived, flats, covers })
}

/// B_X: the coherent gain sum around the circle vanishes.
pub fn balance_hyperplane(g: &GainGraph, x: BitSet) -> Result<EdgeSpaceHyperplane> {
    let circle = g.circle_from_edges(x)?;
    Ok(balance_hyperplane_of(g, &circle))
}

pub fn balance_hyperplane_of(g: &GainGraph, circle: &Circle) -> EdgeSpaceHyperplane {
    let mut coeffs = vec![Rational::zero(); g.num_edges()];
    for &(e, forward) in circle.steps() {
        coeffs[e] = if forward { Rational::one() } else { -Rational::one() };
    }
    EdgeSpaceHyperplane::new(coeffs, Rational::zero())
}

/// A point of `l` off every listed hyperplane, none of which may contain `l`.
/// Walks the moment curve base + Σ s^{j+1}·dir_j; each hyperplane meets it in
/// finitely many parameters, so the search is bounded.
pub fn point_avoiding(l: &AffineSubspace, avoid: &[EdgeSpaceHyperplane]) -> Option<Vec<Rational>> {
    let base = l.base()?;
    let k = l.directions().len();
    let bound = avoid.len() * k.max(1) + 1;
    for s in 0..=bound as i64 {
        let s = Rational::from_integer(s.into());
        let mut p = base.clone();
        let mut pow = s.clone();
        for d in l.directions() {
            p = &p + &d.scale(&pow);
            pow *= &s;
        }
        if avoid.iter().all(|h| !h.contains(&p.0)) {
            return Some(p.0);
        }
    }
    None
}

/// A flat surviving a prescribed bias, with a gain vector certifying it.
#[derive(Clone, Debug)]
pub struct BiasedFlat {
    pub flat: usize,
    /// Every gain in the flat's stratum balancing the bias also balances a
    /// circle outside it.
    pub over_balanced: bool,
    pub witness: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub struct BiasRestriction {
    pub lattice: FlatsLattice,
    pub flats: Vec<BiasedFlat>,
}

/// Flats of the derived arrangement whose stratum meets the gains balancing
/// every circle of `bias`.
///
/// With L = A ∩ ⋂_{X ∈ bias} B_X, a flat A is kept when L is nonempty and not
/// inside any F_X with X ∉ 𝒞(A), i.e. some gain balancing the bias has
/// combinatorial type exactly A. It is flagged over-balanced when L lies
/// inside B_Y for a circle Y outside the bias. If every kept flat is flagged
/// the bias cannot be realized exactly.
pub fn bias_restricted_flats(c: &Configuration, g: &GainGraph, bias: &[Circle]) -> Result<BiasRestriction> {
    if !g.is_linear_class_of_circles(bias) {
        return Err(Error::NotLinearClass);
    }
    let lattice = flats_lattice(c, g)?;
    let bias_sets: BTreeSet<BitSet> = bias.iter().map(|c| c.edges()).collect();
    let others: Vec<EdgeSpaceHyperplane> = g
        .all_circles()
        .iter()
        .filter(|c| !bias_sets.contains(&c.edges()))
        .map(|c| balance_hyperplane_of(g, c))
        .collect();
    let mut out = Vec::new();
    for (i, flat) in lattice.flats.iter().enumerate() {
        let mut l = flat.subspace.clone();
        for circle in bias {
            let b = balance_hyperplane_of(g, circle);
            l = l.meet_hyperplane(&b.normal(), &-b.constant().clone())?;
        }
        if l.is_empty() {
            continue;
        }
        let excluded: Vec<EdgeSpaceHyperplane> = lattice
            .derived
            .iter()
            .filter(|(x, _)| !flat.circuits.contains(x))
            .map(|(_, f)| f.clone())
            .collect();
        if excluded.iter().any(|f| f.contains_subspace(&l)) {
            continue;
        }
        let over_balanced = others.iter().any(|b| b.contains_subspace(&l));
        let mut avoid = excluded;
        avoid.extend(others.iter().filter(|b| !b.contains_subspace(&l)).cloned());
        let witness = point_avoiding(&l, &avoid).expect("finite avoidance on a nonempty flat");
        out.push(BiasedFlat { flat: i, over_balanced, witness });
    }
    if out.iter().all(|f| f.over_balanced) {
        let names: Vec<String> = bias.iter().map(|c| g.label(c.edges())).collect();
        return Err(Error::UnrealizableBias(format!("{{{}}}", names.join(", "))));
    }
    Ok(BiasRestriction { lattice, flats: out })
}

/// A cube |g′_e − g_e| < radius around generic gains inside which every gain
/// vector stays generic. `radius` is `None` when there are no circuits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationBall {
    pub centre: Vec<Rational>,
    pub radius: Option<Rational>,
}

impl PerturbationBall {
    pub fn contains(&self, g: &[Rational]) -> bool {
        match &self.radius {
            None => true,
            Some(r) => self.centre.iter().zip(g).all(|(a, b)| (a - b).abs() < *r),
        }
    }
}

/// radius = min over X of |F_X(g)| / ‖c_X‖₁. `Ok(None)` when the gains are
/// not generic.
pub fn perturbation_ball(c: &Configuration, g: &GainGraph) -> Result<Option<PerturbationBall>> {
    let gains = g.gains();
    let mut radius: Option<Rational> = None;
    for (_, f) in derived_arrangement(c, g)? {
        let v = f.eval(&gains).abs();
        if v.is_zero() {
            return Ok(None);
        }
        let r = v / f.normal().l1();
        radius = Some(match radius {
            Some(old) if old < r => old,
            _ => r,
        });
    }
    Ok(Some(PerturbationBall { centre: gains, radius }))
}

/// The affine map between centre points of a central arrangement and gain
/// vectors in the top flat.
#[derive(Clone, Debug)]
pub struct CentresCorrespondence {
    normals: Vec<Vector>,
    k: Vec<Rational>,
    basis: BitSet,
    dim: usize,
}

pub fn centres_correspondence(c: &Configuration, g: &GainGraph, basis: BitSet) -> Result<CentresCorrespondence> {
    let m = matroid_at_infinity(c, g)?;
    if !m.is_basis(basis) {
        return Err(Error::NotABasis);
    }
    let a = build_arrangement(c, g)?;
    if !a.is_central(a.all())? {
        return Err(Error::NotCentral);
    }
    Ok(CentresCorrespondence {
        normals: a.hyperplanes().iter().map(|h| h.normal.clone()).collect(),
        k: squared_norm_differences(c, g)?,
        basis,
        dim: c.dim(),
    })
}

impl CentresCorrespondence {
    /// Gains putting every hyperplane through `p`.
    pub fn gains_at(&self, p: &Vector) -> Vec<Rational> {
        self.normals.iter().zip(&self.k).map(|(n, k)| n.dot(p) - k).collect()
    }

    /// Common point of all hyperplanes for gains in the top flat. The point
    /// is unique when the configuration spans the space.
    pub fn centre_of(&self, gains: &[Rational]) -> Result<AffineSubspace> {
        let rows: Vec<Vector> = self.normals.clone();
        let rhs = Vector(gains.iter().zip(&self.k).map(|(x, k)| x + k).collect());
        let s = solve(&Matrix::new(rows, self.dim)?, &rhs)?;
        if s.is_empty() {
            Err(Error::NotCentral)
        } else {
            Ok(s)
        }
    }

    /// Completes gains given only on the basis edges (in basis order).
    pub fn complete(&self, basis_gains: &[Rational]) -> Result<(Vector, Vec<Rational>)> {
        let idx: Vec<usize> = self.basis.iter().collect();
        if basis_gains.len() != idx.len() {
            return Err(Error::DimensionMismatch { expected: idx.len(), found: basis_gains.len() });
        }
        let rows: Vec<Vector> = idx.iter().map(|&e| self.normals[e].clone()).collect();
        let rhs = Vector(idx.iter().zip(basis_gains).map(|(&e, x)| x + &self.k[e]).collect());
        let s = solve(&Matrix::new(rows, self.dim)?, &rhs)?;
        let p = s.base().cloned().ok_or(Error::NotCentral)?;
        let gains = self.gains_at(&p);
        Ok((p, gains))
    }

    /// Dimension of the top flat in gain space.
    pub fn top_dimension(&self) -> usize {
        Matrix::new(self.normals.clone(), self.dim).map(|m| m.rank()).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{frac, rat};
    use crate::gaingraph::Edge;

    fn kite(gains: [i64; 5]) -> (Configuration, GainGraph) {
        let c = Configuration::from_ints(2, &[("1", &[0, 0]), ("2", &[4, 0]), ("3", &[3, 2]), ("4", &[1, 2])]).unwrap();
        let shape = [("a", "1", "2"), ("b", "1", "3"), ("c", "1", "4"), ("s", "2", "3"), ("t", "3", "4")];
        let g = GainGraph::from_edges(shape.iter().zip(gains).map(|(&(id, u, v), x)| Edge::new(id, u, v, rat(x))).collect())
            .unwrap();
        (c, g)
    }

    #[test]
    fn system_matrix_abc() {
        let (c, g) = kite([0; 5]);
        let (m, col) = system_matrix(&c, &g, g.edge_set(&["a", "b", "c"]).unwrap()).unwrap();
        assert_eq!(m, Matrix::from_ints(&[&[4, 0], &[3, 2], &[1, 2]]));
        let consts: Vec<Rational> = col.entries.iter().map(|e| e.0.clone()).collect();
        assert_eq!(consts, vec![rat(-8), frac(-13, 2), frac(-5, 2)]);
        let c0 = Configuration::new(0, [("1".to_string(), Vector(vec![]))].into_iter().collect()).unwrap();
        let g0 = GainGraph::new(vec!["1".into()], vec![]).unwrap();
        assert!(matches!(system_matrix(&c0, &g0, BitSet::EMPTY), Err(Error::MissingData(_))));
    }

    #[test]
    fn forbidden_rows() {
        let (c, g) = kite([0; 5]);
        let f = |ids: &[&str]| forbidden_hyperplane(&c, &g, g.edge_set(ids).unwrap()).unwrap();
        assert_eq!(f(&["a", "b", "c"]), EdgeSpaceHyperplane::from_ints(&[1, -2, 2, 0, 0], 0));
        assert_eq!(f(&["a", "t"]), EdgeSpaceHyperplane::from_ints(&[1, 0, 0, 0, 2], 0));
        assert_eq!(f(&["c", "s", "t"]), EdgeSpaceHyperplane::from_ints(&[0, 0, 1, -1, 1], 0));
        assert_eq!(
            forbidden_hyperplane(&c, &g, g.edge_set(&["a", "b", "t"]).unwrap()),
            Err(Error::NotACircuit)
        );
    }

    #[test]
    fn generic_gains() {
        let (c, g) = kite([-6, 0, 2, 2, 6]);
        assert!(is_gain_generic(&c, &g).unwrap());
        let (c, g) = kite([-6, 0, 2, 2, 3]);
        assert_eq!(central_circuits(&c, &g).unwrap(), vec![g.edge_set(&["a", "t"]).unwrap()]);
    }

    #[test]
    fn balance_hyperplanes() {
        let (_, g) = kite([0; 5]);
        let abs = balance_hyperplane(&g, g.edge_set(&["a", "b", "s"]).unwrap()).unwrap();
        assert_eq!(abs, EdgeSpaceHyperplane::from_ints(&[1, -1, 0, 1, 0], 0));
        let astc = balance_hyperplane(&g, g.edge_set(&["a", "s", "t", "c"]).unwrap()).unwrap();
        assert_eq!(astc, EdgeSpaceHyperplane::from_ints(&[1, 0, -1, 1, 1], 0));
        assert!(matches!(balance_hyperplane(&g, g.edge_set(&["a", "b"]).unwrap()), Err(Error::NotACircle(_))));
    }

    #[test]
    fn centres() {
        let (c, g) = kite([0; 5]);
        let basis = g.edge_set(&["a", "b"]).unwrap();
        let cc = centres_correspondence(&c, &g, basis).unwrap();
        assert_eq!(cc.top_dimension(), 2);
        let p = Vector(vec![frac(1, 3), rat(-2)]);
        let gains = cc.gains_at(&p);
        assert_eq!(cc.centre_of(&gains).unwrap(), AffineSubspace::point(p.clone()));
        let (q, all) = cc.complete(&[gains[0].clone(), gains[1].clone()]).unwrap();
        assert_eq!(q, p);
        assert_eq!(all, gains);
        assert!(matches!(centres_correspondence(&c, &g, g.edge_set(&["a", "t"]).unwrap()), Err(Error::NotABasis)));
        let (c2, g2) = kite([-6, 0, 2, 2, 6]);
        assert!(matches!(centres_correspondence(&c2, &g2, basis), Err(Error::NotCentral)));
    }
}
