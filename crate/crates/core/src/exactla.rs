//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Nothing here has a tolerance. Elimination only ever asks whether an entry
//! is zero, so pivot choice affects speed but never the answer.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"`, `"-n"` or `"p/q"`. Decimal points and exponents are refused
/// so that no float ever sneaks in.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (t, None),
    };
    let parse_int = |x: &str| -> std::result::Result<BigInt, String> {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("`{s}` is not a rational of the form n or p/q"));
        }
        x.parse::<BigInt>().map_err(|e| format!("`{s}`: {e}"))
    };
    let n = parse_int(num)?;
    match den {
        None => Ok(Rational::from_integer(n)),
        Some(q) => {
            let d = parse_int(q)?;
            if d.is_zero() {
                return Err(format!("`{s}` has a zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Serialized form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to itself.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, o: &Vector) -> Rational {
        debug_assert_eq!(self.dim(), o.dim());
        self.0.iter().zip(&o.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    /// L1 norm, exact.
    pub fn l1(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x.abs())
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, o: &Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, o: &Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Vector> for &Rational {
    type Output = Vector;
    fn mul(self, v: &Vector) -> Vector {
        v.scale(self)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(x))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: Vec<Vector>,
    cols: usize,
}

impl Matrix {
    pub fn new(rows: Vec<Vector>, cols: usize) -> Result<Self> {
        for r in &rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.dim() });
            }
        }
        Ok(Matrix { rows, cols })
    }

    /// Panics on ragged input; meant for literals and internal use.
    pub fn from_rows(rows: Vec<Vector>) -> Self {
        let cols = rows.first().map_or(0, |r| r.dim());
        Self::new(rows, cols).expect("ragged matrix")
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| Vector::from_ints(r)).collect())
    }

    pub fn empty(cols: usize) -> Self {
        Matrix { rows: Vec::new(), cols }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: (0..n).map(|i| Vector::unit(n, i)).collect(), cols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Vector {
        &self.rows[i]
    }

    pub fn push_row(&mut self, r: Vector) -> Result<()> {
        if r.dim() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: r.dim() });
        }
        self.rows.push(r);
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols)
            .map(|j| Vector(self.rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        Matrix { rows, cols: self.rows.len() }
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        Vector(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    /// Appends `b` as an extra column.
    pub fn augment(&self, b: &Vector) -> Matrix {
        let rows = self
            .rows
            .iter()
            .zip(&b.0)
            .map(|(r, x)| {
                let mut e = r.0.clone();
                e.push(x.clone());
                Vector(e)
            })
            .collect();
        Matrix { rows, cols: self.cols + 1 }
    }

    pub fn rank(&self) -> usize {
        rref(self).pivots.len()
    }

    /// Determinant by elimination with full pivoting (row and column swaps).
    pub fn det(&self) -> Result<Rational> {
        let n = self.rows.len();
        if n != self.cols {
            return Err(Error::NonSquare { rows: n, cols: self.cols });
        }
        let mut a: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.0.clone()).collect();
        let mut det = Rational::one();
        for k in 0..n {
            let Some((pi, pj)) = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            else {
                return Ok(Rational::zero());
            };
            if pi != k {
                a.swap(pi, k);
                det = -det;
            }
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(pj, k);
                }
                det = -det;
            }
            let p = a[k][k].clone();
            det *= &p;
            let pivot = a[k].clone();
            for row in a.iter_mut().skip(k + 1) {
                if row[k].is_zero() {
                    continue;
                }
                let f = &row[k] / &p;
                for (x, y) in row[k..].iter_mut().zip(&pivot[k..]) {
                    *x -= &f * y;
                }
            }
        }
        Ok(det)
    }

    /// Basis of {x : self·x = 0}.
    pub fn kernel(&self) -> Vec<Vector> {
        let r = rref(self);
        kernel_from_rref(&r, self.cols)
    }

    /// Square submatrix with the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix {
            rows: rows.iter().map(|&i| Vector(cols.iter().map(|&j| self.rows[i][j].clone()).collect())).collect(),
            cols: cols.len(),
        }
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn det(m: &Matrix) -> Result<Rational> {
    m.det()
}

/// Rank of a list of vectors of common dimension `dim`.
pub fn rank_of(vectors: &[&Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix { rows: vectors.iter().map(|v| (*v).clone()).collect(), cols: dim }.rank()
}

struct Rref {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

fn rref(m: &Matrix) -> Rref {
    let mut a: Vec<Vec<Rational>> = m.rows.iter().map(|r| r.0.clone()).collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate().take(nrows) {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(pivots.len());
    Rref { rows: a, pivots }
}

fn kernel_from_rref(r: &Rref, cols: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for f in 0..cols {
        if r.pivots.contains(&f) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (i, &p) in r.pivots.iter().enumerate() {
            v[p] = -r.rows[i][f].clone();
        }
        out.push(Vector(v));
    }
    out
}

/// A basis for the span of `vectors` (reduced rows, so canonical).
pub fn span_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let r = rref(&Matrix { rows: vectors.to_vec(), cols: dim });
    r.rows.into_iter().map(Vector).collect()
}

/// Solution set of `a·x = b`.
pub fn solve(a: &Matrix, b: &Vector) -> Result<AffineSubspace> {
    if a.nrows() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.nrows(), found: b.dim() });
    }
    let n = a.ncols();
    let r = rref(&a.augment(b));
    if r.pivots.last() == Some(&n) {
        return Ok(AffineSubspace::Empty { ambient: n });
    }
    let mut base = vec![Rational::zero(); n];
    for (i, &p) in r.pivots.iter().enumerate() {
        base[p] = r.rows[i][n].clone();
    }
    // kernel of `a` alone: drop the augmented column
    let ra = Rref {
        rows: r.rows.iter().map(|row| row[..n].to_vec()).collect(),
        pivots: r.pivots.clone(),
    };
    Ok(AffineSubspace::Subspace { base: Vector(base), directions: kernel_from_rref(&ra, n) })
}

pub fn intersect(s1: &AffineSubspace, s2: &AffineSubspace) -> Result<AffineSubspace> {
    s1.intersect(s2)
}

#[derive(Clone, Debug)]
pub enum AffineSubspace {
    Empty { ambient: usize },
    Subspace { base: Vector, directions: Vec<Vector> },
}

impl AffineSubspace {
    pub fn whole(n: usize) -> Self {
        AffineSubspace::Subspace { base: Vector::zeros(n), directions: (0..n).map(|i| Vector::unit(n, i)).collect() }
    }

    pub fn point(p: Vector) -> Self {
        AffineSubspace::Subspace { base: p, directions: Vec::new() }
    }

    /// Builds `base + span(directions)`, reducing the directions to a basis.
    pub fn new(base: Vector, directions: &[Vector]) -> Result<Self> {
        let n = base.dim();
        if let Some(d) = directions.iter().find(|d| d.dim() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: d.dim() });
        }
        let directions = span_basis(directions, n);
        Ok(AffineSubspace::Subspace { base, directions })
    }

    pub fn ambient(&self) -> usize {
        match self {
            AffineSubspace::Empty { ambient } => *ambient,
            AffineSubspace::Subspace { base, .. } => base.dim(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, AffineSubspace::Empty { .. })
    }

    /// Dimension, `None` for the empty set.
    pub fn dim(&self) -> Option<usize> {
        match self {
            AffineSubspace::Empty { .. } => None,
            AffineSubspace::Subspace { directions, .. } => Some(directions.len()),
        }
    }

    pub fn codim(&self) -> Option<usize> {
        self.dim().map(|d| self.ambient() - d)
    }

    pub fn base(&self) -> Option<&Vector> {
        match self {
            AffineSubspace::Empty { .. } => None,
            AffineSubspace::Subspace { base, .. } => Some(base),
        }
    }

    pub fn directions(&self) -> &[Vector] {
        match self {
            AffineSubspace::Empty { .. } => &[],
            AffineSubspace::Subspace { directions, .. } => directions,
        }
    }

    /// Point at parameter `t` (coefficients on the directions).
    pub fn at(&self, t: &[Rational]) -> Option<Vector> {
        let base = self.base()?;
        let mut p = base.clone();
        for (c, d) in t.iter().zip(self.directions()) {
            p = &p + &d.scale(c);
        }
        Some(p)
    }

    /// Equations `N·x = c` whose solution set is `self`.
    pub fn equations(&self) -> (Matrix, Vector) {
        let n = self.ambient();
        match self {
            AffineSubspace::Empty { .. } => {
                // 0 = 1
                (Matrix { rows: vec![Vector::zeros(n)], cols: n }, Vector(vec![Rational::one()]))
            }
            AffineSubspace::Subspace { base, directions } => {
                let normals = if directions.is_empty() {
                    (0..n).map(|i| Vector::unit(n, i)).collect()
                } else {
                    Matrix { rows: directions.clone(), cols: n }.kernel()
                };
                let c = Vector(normals.iter().map(|v| v.dot(base)).collect());
                (Matrix { rows: normals, cols: n }, c)
            }
        }
    }

    pub fn contains_point(&self, p: &Vector) -> bool {
        if self.is_empty() || p.dim() != self.ambient() {
            return false;
        }
        let (m, c) = self.equations();
        m.mul_vec(p) == c
    }

    /// True if `v` lies in the direction space.
    pub fn contains_direction(&self, v: &Vector) -> bool {
        if self.is_empty() {
            return false;
        }
        let (m, _) = self.equations();
        m.mul_vec(v).is_zero()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &AffineSubspace) -> bool {
        match other {
            AffineSubspace::Empty { .. } => true,
            AffineSubspace::Subspace { base, directions } => {
                if self.is_empty() {
                    return false;
                }
                let (m, c) = self.equations();
                m.mul_vec(base) == c && directions.iter().all(|d| m.mul_vec(d).is_zero())
            }
        }
    }

    /// Same point set, by mutual containment.
    pub fn same_as(&self, other: &AffineSubspace) -> bool {
        self.ambient() == other.ambient() && self.contains(other) && other.contains(self)
    }

    pub fn intersect(&self, other: &AffineSubspace) -> Result<AffineSubspace> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch { expected: self.ambient(), found: other.ambient() });
        }
        let (mut m1, c1) = self.equations();
        let (m2, c2) = other.equations();
        let mut c = c1.0;
        for (r, x) in m2.rows.into_iter().zip(c2.0) {
            m1.rows.push(r);
            c.push(x);
        }
        solve(&m1, &Vector(c))
    }

    /// Intersection with the hyperplane `n·x = c`.
    pub fn meet_hyperplane(&self, n: &Vector, c: &Rational) -> Result<AffineSubspace> {
        let h = solve(&Matrix::from_rows(vec![n.clone()]), &Vector(vec![c.clone()]))?;
        self.intersect(&h)
    }
}

impl PartialEq for AffineSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6").unwrap(), rat(-6));
        assert_eq!(parse_rational("75/16").unwrap(), frac(75, 16));
        assert_eq!(parse_rational("4/6").unwrap(), frac(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&frac(-15, 2)), "-15/2");
        assert_eq!(format_rational(&rat(0)), "0");
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::from_ints(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(Matrix::from_ints(&[&[4, 0], &[-2, 0]]).rank(), 1);
        assert_eq!(Matrix::empty(3).rank(), 0);
    }

    #[test]
    fn det_examples() {
        assert_eq!(Matrix::identity(3).det().unwrap(), rat(1));
        assert_eq!(Matrix::from_ints(&[&[4, 0], &[3, 2]]).det().unwrap(), rat(8));
        assert_eq!(Matrix::from_ints(&[&[3, 2], &[4, 0]]).det().unwrap(), rat(-8));
        assert!(matches!(Matrix::from_ints(&[&[1, 2, 3]]).det(), Err(Error::NonSquare { .. })));
        let m = Matrix::from_ints(&[&[0, 1, 2], &[3, 0, 1], &[1, 1, 0]]);
        // 0(0-1) - 1(0-1) + 2(3-0) = 7
        assert_eq!(m.det().unwrap(), rat(7));
    }

    #[test]
    fn solve_examples() {
        let b = Vector::from_ints(&[3, -5]);
        let s = solve(&Matrix::identity(2), &b).unwrap();
        assert_eq!(s, AffineSubspace::point(b));
        let s = solve(&Matrix::from_ints(&[&[1, 0], &[1, 0]]), &Vector::from_ints(&[0, 1])).unwrap();
        assert!(s.is_empty());
        // edges a, c of the four-point kite with gains -6, 2
        let s = solve(&Matrix::from_ints(&[&[8, 0], &[2, 4]]), &Vector::from_ints(&[10, 7])).unwrap();
        assert_eq!(s, AffineSubspace::point(Vector(vec![frac(5, 4), frac(9, 8)])));
    }

    #[test]
    fn intersect_examples() {
        let xaxis = AffineSubspace::new(Vector::from_ints(&[0, 0]), &[Vector::from_ints(&[1, 0])]).unwrap();
        let yaxis = AffineSubspace::new(Vector::from_ints(&[0, 0]), &[Vector::from_ints(&[0, 1])]).unwrap();
        let shifted = AffineSubspace::new(Vector::from_ints(&[0, 1]), &[Vector::from_ints(&[2, 0])]).unwrap();
        assert_eq!(xaxis.intersect(&yaxis).unwrap(), AffineSubspace::point(Vector::from_ints(&[0, 0])));
        assert!(xaxis.intersect(&shifted).unwrap().is_empty());
        assert_eq!(xaxis.intersect(&xaxis).unwrap(), xaxis);
        assert!(matches!(xaxis.intersect(&AffineSubspace::whole(3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![frac(1, 2), rat(-1), frac(3, 4)];
        let p = primitive_integer(&v);
        assert_eq!(p, vec![BigInt::from(2), BigInt::from(-4), BigInt::from(3)]);
    }
}
