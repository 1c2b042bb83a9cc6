//! Vector matroids, circuits, linear classes, modular ideals, elementary
//! lifts and semimatroid axioms.
//!
//! Subsets of the ground set are `BitSet`s over element indices. Families of
//! subsets are stored extensionally, which caps the ground set at
//! `SetFamily::MAX_GROUND` elements.

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::exactla::{rank_of, Vector};

pub type Circuit = BitSet;

#[derive(Clone, Debug)]
pub struct VectorMatroid {
    labels: Vec<String>,
    vectors: Vec<Vector>,
    dim: usize,
    // rank of every subset, filled on first use for small ground sets
    ranks: OnceLock<Vec<u8>>,
}

/// Ground sets up to this size get a cached rank table.
const CACHE_GROUND: usize = 12;

impl PartialEq for VectorMatroid {
    fn eq(&self, o: &Self) -> bool {
        self.labels == o.labels && self.vectors == o.vectors && self.dim == o.dim
    }
}

impl Eq for VectorMatroid {}

impl VectorMatroid {
    pub fn new(labels: Vec<String>, vectors: Vec<Vector>, dim: usize) -> Result<Self> {
        if labels.len() != vectors.len() {
            return Err(Error::DimensionMismatch { expected: labels.len(), found: vectors.len() });
        }
        if labels.len() > BitSet::CAPACITY {
            return Err(Error::InvalidGraph(format!("ground set larger than {}", BitSet::CAPACITY)));
        }
        if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
        }
        Ok(VectorMatroid { labels, vectors, dim, ranks: OnceLock::new() })
    }

    /// Elements named "1", "2", ... in order.
    pub fn from_vectors(vectors: Vec<Vector>) -> Self {
        let dim = vectors.first().map_or(0, |v| v.dim());
        let labels = (1..=vectors.len()).map(|i| i.to_string()).collect();
        Self::new(labels, vectors, dim).expect("vectors of mixed dimension")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &Vector {
        &self.vectors[i]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn ground(&self) -> BitSet {
        BitSet::full(self.len())
    }

    pub fn rank(&self, s: BitSet) -> usize {
        if self.len() <= CACHE_GROUND {
            let table = self.ranks.get_or_init(|| {
                (0..1u64 << self.len()).map(|m| self.rank_uncached(BitSet(m)) as u8).collect()
            });
            return table[s.intersection(self.ground()).0 as usize] as usize;
        }
        self.rank_uncached(s)
    }

    fn rank_uncached(&self, s: BitSet) -> usize {
        let vs: Vec<&Vector> = s.iter().map(|i| &self.vectors[i]).collect();
        rank_of(&vs, self.dim)
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    pub fn is_independent(&self, s: BitSet) -> bool {
        self.rank(s) == s.len()
    }

    pub fn is_basis(&self, s: BitSet) -> bool {
        s.is_subset(self.ground()) && self.is_independent(s) && s.len() == self.full_rank()
    }

    pub fn is_circuit(&self, s: BitSet) -> bool {
        !s.is_empty() && s.is_subset(self.ground()) && self.rank(s) + 1 == s.len() && s.iter().all(|e| self.is_independent(s.without(e)))
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.vectors[e].is_zero()
    }

    /// Rank of every subset, indexed by mask. Only for small ground sets.
    pub fn rank_table(&self) -> Vec<usize> {
        assert!(self.len() <= SetFamily::MAX_GROUND);
        (0..1u64 << self.len()).map(|m| self.rank(BitSet(m))).collect()
    }

    /// All circuits, ordered lexicographically by their sorted element lists.
    pub fn circuits(&self) -> Vec<Circuit> {
        let r = self.full_rank();
        let mut out: Vec<Circuit> = Vec::new();
        for k in 1..=(r + 1).min(self.len()) {
            for s in self.ground().subsets_of_size(k) {
                // minimal dependence: no smaller circuit inside and dependent
                if self.rank(s) + 1 == k && !out.iter().any(|c| c.is_subset(s)) {
                    out.push(s);
                }
            }
        }
        sort_lex(&mut out);
        out
    }

    /// The unique circuit in `b ∪ {x}`.
    pub fn fundamental_circuit(&self, b: BitSet, x: usize) -> Result<Circuit> {
        if !self.is_basis(b) {
            return Err(Error::NotABasis);
        }
        if b.contains(x) {
            return Err(Error::ElementInBasis);
        }
        if x >= self.len() {
            return Err(Error::NotABasis);
        }
        let mut c = BitSet::singleton(x);
        for y in b.iter() {
            if self.is_independent(b.without(y).with(x)) {
                c = c.with(y);
            }
        }
        Ok(c)
    }

    /// Sets S, T are a modular pair when rk(S∩T) + rk(S∪T) = rk S + rk T.
    pub fn is_modular_pair_of_sets(&self, s: BitSet, t: BitSet) -> bool {
        s != t && self.rank(s.intersection(t)) + self.rank(s.union(t)) == self.rank(s) + self.rank(t)
    }

    /// For distinct circuits: rk(X ∪ Y) = |X ∪ Y| − 2.
    pub fn is_modular_pair(&self, x: Circuit, y: Circuit) -> Result<bool> {
        if x == y || !self.is_circuit(x) || !self.is_circuit(y) {
            return Err(Error::NotCircuits);
        }
        let u = x.union(y);
        Ok(self.rank(u) + 2 == u.len())
    }

    /// Closed under circuits inside unions of modular pairs.
    pub fn is_linear_class(&self, cls: &[Circuit]) -> bool {
        let set: BTreeSet<Circuit> = cls.iter().copied().collect();
        if !set.iter().all(|&c| self.is_circuit(c)) {
            return false;
        }
        let all = self.circuits();
        missing_from_closure(self, &set, &all).is_empty()
    }

    /// Smallest linear class containing `seed`.
    pub fn linear_class_closure(&self, seed: &[Circuit]) -> Result<Vec<Circuit>> {
        if let Some(&c) = seed.iter().find(|&&c| !self.is_circuit(c)) {
            let _ = c;
            return Err(Error::NotACircuit);
        }
        let all = self.circuits();
        Ok(closure_with(self, seed.iter().copied().collect(), &all))
    }

    /// Every linear class, each sorted; enumerated as closures reachable by
    /// adding one circuit at a time.
    pub fn all_linear_classes(&self) -> Vec<Vec<Circuit>> {
        let all = self.circuits();
        let start = closure_with(self, BTreeSet::new(), &all);
        let mut seen: BTreeSet<Vec<Circuit>> = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(cls) = queue.pop_front() {
            for &x in &all {
                if cls.contains(&x) {
                    continue;
                }
                let mut seed: BTreeSet<Circuit> = cls.iter().copied().collect();
                seed.insert(x);
                let next = closure_with(self, seed, &all);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// Lexicographic order on sorted element lists.
pub fn sort_lex(v: &mut [BitSet]) {
    v.sort_by_key(|s| s.iter().collect::<Vec<_>>());
}

fn missing_from_closure(m: &VectorMatroid, cls: &BTreeSet<Circuit>, all: &[Circuit]) -> Vec<Circuit> {
    let mut missing = BTreeSet::new();
    let v: Vec<Circuit> = cls.iter().copied().collect();
    for (i, &x) in v.iter().enumerate() {
        for &y in &v[i + 1..] {
            let u = x.union(y);
            if m.rank(u) + 2 != u.len() {
                continue;
            }
            for &z in all {
                if z.is_subset(u) && !cls.contains(&z) {
                    missing.insert(z);
                }
            }
        }
    }
    missing.into_iter().collect()
}

fn closure_with(m: &VectorMatroid, mut cls: BTreeSet<Circuit>, all: &[Circuit]) -> Vec<Circuit> {
    loop {
        let add = missing_from_closure(m, &cls, all);
        if add.is_empty() {
            break;
        }
        cls.extend(add);
    }
    let mut out: Vec<Circuit> = cls.into_iter().collect();
    sort_lex(&mut out);
    out
}

/// A family of subsets of a ground set of size `n`, stored as a membership
/// table indexed by mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetFamily {
    n: usize,
    member: Vec<bool>,
}

impl std::fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

impl SetFamily {
    pub const MAX_GROUND: usize = 16;

    pub fn empty(n: usize) -> Self {
        assert!(n <= Self::MAX_GROUND, "ground set too large for an extensional family");
        SetFamily { n, member: vec![false; 1 << n] }
    }

    pub fn from_sets<I: IntoIterator<Item = BitSet>>(n: usize, sets: I) -> Self {
        let mut f = Self::empty(n);
        for s in sets {
            f.insert(s);
        }
        f
    }

    pub fn from_predicate(n: usize, pred: impl Fn(BitSet) -> bool) -> Self {
        let mut f = Self::empty(n);
        for m in 0..1u64 << n {
            f.member[m as usize] = pred(BitSet(m));
        }
        f
    }

    pub fn powerset(n: usize) -> Self {
        Self::from_predicate(n, |_| true)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn contains(&self, s: BitSet) -> bool {
        (s.0 as usize) < self.member.len() && self.member[s.0 as usize]
    }

    pub fn insert(&mut self, s: BitSet) {
        assert!(s.is_subset(BitSet::full(self.n)));
        self.member[s.0 as usize] = true;
    }

    pub fn remove(&mut self, s: BitSet) {
        self.member[s.0 as usize] = false;
    }

    pub fn members(&self) -> impl Iterator<Item = BitSet> + '_ {
        self.member.iter().enumerate().filter(|(_, &b)| b).map(|(m, _)| BitSet(m as u64))
    }

    pub fn len(&self) -> usize {
        self.member.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_hereditary(&self) -> bool {
        self.members().all(|s| s.iter().all(|e| self.contains(s.without(e))))
    }

    pub fn is_subfamily_of(&self, o: &SetFamily) -> bool {
        self.members().all(|s| o.contains(s))
    }
}

/// Why a family fails to be a modular ideal of `m`, or `None` if it is one.
pub fn modular_ideal_violation(m: &VectorMatroid, fam: &SetFamily) -> Option<String> {
    if fam.ground_size() != m.len() {
        return Some("ground sizes differ".into());
    }
    if fam.is_empty() {
        return Some("family is empty".into());
    }
    if !fam.is_hereditary() {
        return Some("family is not an order ideal".into());
    }
    if let Some(e) = (0..m.len()).find(|&e| !m.is_loop(e) && !fam.contains(BitSet::singleton(e))) {
        return Some(format!("non-loop `{}` is missing", m.labels[e]));
    }
    let members: Vec<BitSet> = fam.members().collect();
    let rk: Vec<usize> = members.iter().map(|&s| m.rank(s)).collect();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let (a, b) = (members[i], members[j]);
            let u = a.union(b);
            if fam.contains(u) {
                continue;
            }
            if m.rank(a.intersection(b)) + m.rank(u) == rk[i] + rk[j] {
                return Some(format!("modular pair {a:?}, {b:?} has union outside"));
            }
        }
    }
    None
}

pub fn is_modular_ideal(m: &VectorMatroid, fam: &SetFamily) -> bool {
    modular_ideal_violation(m, fam).is_none()
}

/// A family validated against the modular ideal axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularIdeal {
    family: SetFamily,
}

impl ModularIdeal {
    pub fn new(m: &VectorMatroid, family: SetFamily) -> Result<Self> {
        match modular_ideal_violation(m, &family) {
            None => Ok(ModularIdeal { family }),
            Some(why) => Err(Error::InvalidIdeal(why)),
        }
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn contains(&self, s: BitSet) -> bool {
        self.family.contains(s)
    }

    /// Circuits of the matroid lying in the ideal, which form a linear class.
    pub fn circuits_in(&self, m: &VectorMatroid) -> Vec<Circuit> {
        m.circuits().into_iter().filter(|&c| self.contains(c)).collect()
    }
}

/// Independent sets plus every S having a basis B with all fundamental
/// circuits C_B(x), x ∈ S \ B, inside the class.
pub fn modular_ideal_from_linear_class(m: &VectorMatroid, cls: &[Circuit]) -> Result<ModularIdeal> {
    if !m.is_linear_class(cls) {
        return Err(Error::NotALinearClass);
    }
    let set: BTreeSet<Circuit> = cls.iter().copied().collect();
    let n = m.len();
    let fam = SetFamily::from_predicate(n, |s| {
        let r = m.rank(s);
        if r == s.len() {
            return true;
        }
        s.subsets_of_size(r).any(|b| {
            m.rank(b) == r && s.difference(b).iter().all(|x| set.contains(&fundamental_in(m, b, x)))
        })
    });
    ModularIdeal::new(m, fam)
}

/// Circuit in B ∪ {x} where B is independent and B ∪ {x} dependent.
fn fundamental_in(m: &VectorMatroid, b: BitSet, x: usize) -> Circuit {
    let mut c = BitSet::singleton(x);
    for y in b.iter() {
        if m.is_independent(b.without(y).with(x)) {
            c = c.with(y);
        }
    }
    c
}

/// Rank in the elementary lift: r_M(S), plus one outside the ideal.
pub fn lift_rank(m: &VectorMatroid, ideal: &ModularIdeal, s: BitSet) -> usize {
    m.rank(s) + usize::from(!ideal.contains(s))
}

/// Every modular ideal of `m`: closures of the independent sets under
/// downward closure and modular extension, grown one generator at a time.
pub fn all_modular_ideals(m: &VectorMatroid) -> Vec<SetFamily> {
    let n = m.len();
    let rk = m.rank_table();
    let close = |mut fam: SetFamily| -> SetFamily {
        loop {
            let mut changed = false;
            // downward closure
            for mask in (0..1u64 << n).rev() {
                if fam.member[mask as usize] {
                    for e in BitSet(mask).iter() {
                        let sub = BitSet(mask).without(e);
                        if !fam.member[sub.0 as usize] {
                            fam.member[sub.0 as usize] = true;
                            changed = true;
                        }
                    }
                }
            }
            let members: Vec<u64> = fam.members().map(|s| s.0).collect();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    let u = (a | b) as usize;
                    if !fam.member[u] && rk[(a & b) as usize] + rk[u] == rk[a as usize] + rk[b as usize] {
                        fam.member[u] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return fam;
            }
        }
    };
    let start = close(SetFamily::from_predicate(n, |s| rk[s.0 as usize] == s.len()));
    let mut seen: BTreeSet<SetFamily> = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for mask in 0..1u64 << n {
            if f.member[mask as usize] {
                continue;
            }
            let mut g = f.clone();
            g.member[mask as usize] = true;
            let g = close(g);
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    seen.into_iter().collect()
}

/// Normalization, unit increase and submodularity over the whole powerset.
pub fn is_matroid_rank_function(f: impl Fn(BitSet) -> usize, n: usize) -> bool {
    assert!(n <= SetFamily::MAX_GROUND);
    let table: Vec<usize> = (0..1u64 << n).map(|m| f(BitSet(m))).collect();
    if table[0] != 0 {
        return false;
    }
    for m in 0..1u64 << n {
        for e in 0..n {
            if m >> e & 1 == 0 {
                let d = table[(m | 1 << e) as usize] as isize - table[m as usize] as isize;
                if !(0..=1).contains(&d) {
                    return false;
                }
            }
        }
    }
    for a in 0..1u64 << n {
        for b in a + 1..1u64 << n {
            if table[(a & b) as usize] + table[(a | b) as usize] > table[a as usize] + table[b as usize] {
                return false;
            }
        }
    }
    true
}

/// The first semimatroid axiom that fails, if any. `rk` is consulted only on
/// members of `central`.
pub fn semimatroid_violation(central: &SetFamily, rk: impl Fn(BitSet) -> usize) -> Option<&'static str> {
    // S0
    if central.is_empty() || !central.is_hereditary() {
        return Some("S0");
    }
    let members: Vec<BitSet> = central.members().collect();
    let r: Vec<usize> = members.iter().map(|&s| rk(s)).collect();
    let rank_of = |s: BitSet| r[members.binary_search(&s).expect("member")];
    // S1
    if members.iter().zip(&r).any(|(s, &k)| k > s.len()) {
        return Some("S1");
    }
    // S2: enough to check one-element extensions inside the family
    for (i, &s) in members.iter().enumerate() {
        for e in 0..central.ground_size() {
            let t = s.with(e);
            if t != s && central.contains(t) && rank_of(t) < r[i] {
                return Some("S2");
            }
        }
    }
    for (i, &x) in members.iter().enumerate() {
        for (j, &y) in members.iter().enumerate() {
            let u = x.union(y);
            let meet = rank_of(x.intersection(y));
            // S3
            if central.contains(u) && meet + rank_of(u) > r[i] + r[j] {
                return Some("S3");
            }
            // S4
            if meet == r[i] && !central.contains(u) {
                return Some("S4");
            }
            // S5
            if r[i] < r[j] && !y.difference(x).iter().any(|e| central.contains(x.with(e))) {
                return Some("S5");
            }
        }
    }
    None
}

pub fn is_semimatroid(central: &SetFamily, rk: impl Fn(BitSet) -> usize) -> bool {
    semimatroid_violation(central, rk).is_none()
}

/// Both verdicts of the modular ideal / semimatroid correspondence for a
/// family ranked by the matroid's own rank function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdealSemimatroidCheck {
    pub modular_ideal: bool,
    pub semimatroid: bool,
}

impl IdealSemimatroidCheck {
    pub fn agree(&self) -> bool {
        self.modular_ideal == self.semimatroid
    }
}

pub fn modular_ideal_iff_semimatroid_check(m: &VectorMatroid, fam: &SetFamily) -> IdealSemimatroidCheck {
    IdealSemimatroidCheck {
        modular_ideal: is_modular_ideal(m, fam),
        semimatroid: is_semimatroid(fam, |s| m.rank(s)),
    }
}
