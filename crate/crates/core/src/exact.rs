//! Exact rational scalars, vectors and matrices, plus the few integer lattice
//! utilities the geometry layers need (primitive vectors, lattice index).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Deref, DerefMut, Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational scalar. `BigRational` keeps itself normalized (coprime,
/// positive denominator), so equality is structural.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// A rational number extended by `+∞`, used for valuations of the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Finite(Rat),
    PlusInfinity,
}

impl ExtRat {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::PlusInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::PlusInfinity)
    }

    /// Multiplication by a nonnegative scalar; `0 · ∞ = 0` (empty product convention).
    pub fn scale(&self, t: &Rat) -> ExtRat {
        match self {
            ExtRat::Finite(r) => ExtRat::Finite(r * t),
            ExtRat::PlusInfinity if t.is_zero() => ExtRat::Finite(Rat::zero()),
            ExtRat::PlusInfinity => ExtRat::PlusInfinity,
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
            (ExtRat::Finite(_), ExtRat::PlusInfinity) => Ordering::Less,
            (ExtRat::PlusInfinity, ExtRat::Finite(_)) => Ordering::Greater,
            (ExtRat::PlusInfinity, ExtRat::PlusInfinity) => Ordering::Equal,
        }
    }
}

impl Add for &ExtRat {
    type Output = ExtRat;

    fn add(self, rhs: &ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::PlusInfinity,
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(r) => write!(f, "{r}"),
            ExtRat::PlusInfinity => f.write_str("+inf"),
        }
    }
}

/// A dense vector of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVector(pub Vec<Rat>);

impl QVector {
    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v[i] = Rat::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVector(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &QVector) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, t: &Rat) -> QVector {
        QVector(self.0.iter().map(|a| a * t).collect())
    }

    /// `self + t·other`
    pub fn axpy(&self, t: &Rat, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + t * b).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|a| a.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative())
    }

    /// Entries as `i64`; `None` if some entry is fractional or too large.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|a| if a.is_integer() { a.to_integer().to_i64() } else { None })
            .collect()
    }

    /// The primitive integer vector on the same ray (positive rescaling).
    /// Returns the zero vector unchanged.
    pub fn primitive_direction(&self) -> QVector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|a| (a * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        QVector(ints.into_iter().map(|a| Rat::from_integer(a / &g)).collect())
    }

    /// Rescale so the first nonzero entry is positive and the vector is a
    /// primitive integer vector. Canonical representative of a line.
    pub fn canonical_line(&self) -> QVector {
        let p = self.primitive_direction();
        match p.0.iter().find(|a| !a.is_zero()) {
            Some(a) if a.is_negative() => p.neg(),
            _ => p,
        }
    }
}

impl Deref for QVector {
    type Target = [Rat];

    fn deref(&self) -> &[Rat] {
        &self.0
    }
}

impl DerefMut for QVector {
    fn deref_mut(&mut self) -> &mut [Rat] {
        &mut self.0
    }
}

impl Index<usize> for QVector {
    type Output = Rat;

    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl From<Vec<Rat>> for QVector {
    fn from(v: Vec<Rat>) -> Self {
        QVector(v)
    }
}

impl FromIterator<Rat> for QVector {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<QVector>,
    ncols: usize,
}

impl QMatrix {
    pub fn new(rows: Vec<QVector>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.dim() == ncols), "ragged matrix");
        QMatrix { rows, ncols }
    }

    pub fn from_rows(rows: Vec<QVector>) -> Self {
        let ncols = rows.first().map_or(0, QVector::dim);
        Self::new(rows, ncols)
    }

    /// Matrix whose columns are the given vectors (all of length `nrows`).
    pub fn from_columns(cols: &[QVector], nrows: usize) -> Self {
        let rows = (0..nrows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        QMatrix { rows, ncols: cols.len() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| QVector::from_ints(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        QMatrix { rows: (0..n).map(|i| QVector::unit(n, i)).collect(), ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> QVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul_vec(&self, x: &QVector) -> QVector {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    /// `yᵀ·A`
    pub fn vec_mul(&self, y: &QVector) -> QVector {
        let mut out = QVector::zeros(self.ncols);
        for (yi, row) in y.iter().zip(&self.rows) {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row.iter()) {
                *o += yi * a;
            }
        }
        out
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix {
            rows: (0..self.ncols).map(|j| self.column(j)).collect(),
            ncols: self.rows.len(),
        }
    }

    /// Reduced row echelon form, returning the nonzero rows and pivot columns.
    pub fn rref(&self) -> (Vec<QVector>, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            m[r] = m[r].scale(&inv);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = -m[i][c].clone();
                    m[i] = m[i].axpy(&f, &m[r]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A·x = 0}` derived from the reduced echelon form, one
    /// vector per free column, each with a positive leading entry.
    pub fn kernel(&self) -> Vec<QVector> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_row = vec![None; self.ncols];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_row[p] = Some(i);
        }
        for f in 0..self.ncols {
            if pivot_row[f].is_some() {
                continue;
            }
            let mut k = QVector::zeros(self.ncols);
            k[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[p] = -r[i][f].clone();
            }
            basis.push(sign_normalize(k));
        }
        basis
    }

    pub fn determinant(&self) -> Rat {
        assert_eq!(self.nrows(), self.ncols, "determinant of a non-square matrix");
        let mut m = self.rows.clone();
        let n = m.len();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            for i in c + 1..n {
                if !m[i][c].is_zero() {
                    let f = -(&m[i][c] / &m[c][c]);
                    m[i] = m[i].axpy(&f, &m[c]);
                }
            }
        }
        det
    }
}

fn sign_normalize(v: QVector) -> QVector {
    match v.iter().find(|a| !a.is_zero()) {
        Some(a) if a.is_negative() => v.neg(),
        _ => v,
    }
}

/// Result of [`linear_solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionDescriptor {
    Consistent { particular: QVector, kernel: Vec<QVector> },
    Inconsistent,
}

/// Solves `A·x = b` exactly: one particular solution (free variables set to
/// zero) and a basis of the kernel.
pub fn linear_solve(a: &QMatrix, b: &QVector) -> SolutionDescriptor {
    assert_eq!(a.nrows(), b.dim(), "row count must match rhs length");
    let n = a.ncols();
    let augmented = QMatrix::new(
        a.rows()
            .iter()
            .zip(b.iter())
            .map(|(row, bi)| {
                let mut r = row.0.clone();
                r.push(bi.clone());
                QVector(r)
            })
            .collect(),
        n + 1,
    );
    let (r, pivots) = augmented.rref();
    if pivots.last() == Some(&n) {
        return SolutionDescriptor::Inconsistent;
    }
    let mut particular = QVector::zeros(n);
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = r[i][n].clone();
    }
    SolutionDescriptor::Consistent { particular, kernel: a.kernel() }
}

/// Rank of a list of vectors.
pub fn rank_of(vectors: &[QVector]) -> usize {
    match vectors.first() {
        None => 0,
        Some(v) => QMatrix::new(vectors.to_vec(), v.dim()).rank(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInfo {
    pub rank: usize,
    /// Index of the integer span inside the lattice of integer points of the
    /// rational span.
    pub lattice_det: BigInt,
}

fn to_int_rows(vectors: &[QVector]) -> Result<Vec<Vec<BigInt>>, Error> {
    vectors
        .iter()
        .map(|v| {
            if v.is_integral() {
                Ok(v.iter().map(|a| a.to_integer()).collect())
            } else {
                Err(Error::NotIntegral(v.clone()))
            }
        })
        .collect()
}

/// Row-style Hermite normal form of an integer matrix; returns the nonzero
/// rows (echelon, positive pivots, entries above pivots reduced).
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        // Euclid on column c among rows r.. until a single nonzero remains.
        while let Some(p) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].abs())
        {
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                for j in c..ncols {
                    let t = &q * &m[r][j];
                    m[i][j] -= t;
                }
                done &= m[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                for j in c..ncols {
                    let t = &q * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Rank of the integer vectors and the index of their integer span in the
/// saturated lattice of their rational span: the gcd of the maximal minors
/// of the Hermite form.
pub fn hermite_basis_det(vectors: &[QVector]) -> Result<LatticeInfo, Error> {
    let rows = to_int_rows(vectors)?;
    let h = hermite_normal_form(&rows);
    let rank = h.len();
    if rank == 0 {
        return Ok(LatticeInfo { rank, lattice_det: BigInt::one() });
    }
    let ncols = h[0].len();
    let mut g = BigInt::zero();
    for cols in combinations(ncols, rank) {
        let minor = QMatrix::new(
            h.iter()
                .map(|row| cols.iter().map(|&c| Rat::from_integer(row[c].clone())).collect())
                .collect(),
            rank,
        )
        .determinant();
        g = g.gcd(&minor.to_integer());
        if g.is_one() {
            break;
        }
    }
    Ok(LatticeInfo { rank, lattice_det: g })
}

/// `v / gcd(v)` for a nonzero integer vector.
pub fn primitive(v: &QVector) -> Result<QVector, Error> {
    if !v.is_integral() {
        return Err(Error::NotIntegral(v.clone()));
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.primitive_direction())
}
