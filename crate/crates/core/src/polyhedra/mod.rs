//! Rational polyhedra in inequality (H) and generator (V) form.
//!
//! Both descriptions are kept canonical: after any constructive operation
//! the H-form has irredundant facets with primitive integer normals, sorted,
//! and equalities in reduced echelon shape, so equal point sets compare equal
//! structurally.

pub(crate) mod dd;
mod fm;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{QVector, Rat};

use dd::cone_generators;
pub use fm::project;

/// Default cap on the ambient dimension accepted by [`dual_description`].
pub const DEFAULT_DIM_CAP: usize = 8;

/// `⟨normal, x⟩ ≤ offset` (inequality) or `⟨normal, x⟩ = offset` (equality).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub normal: QVector,
    pub offset: Rat,
}

impl Constraint {
    pub fn new(normal: QVector, offset: Rat) -> Self {
        Constraint { normal, offset }
    }

    /// Positive rescaling making the normal a primitive integer vector.
    fn normalized(&self) -> Constraint {
        if self.normal.is_zero() {
            return self.clone();
        }
        let lcm = self.normal.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let g = self
            .normal
            .iter()
            .fold(BigInt::zero(), |acc, a| acc.gcd(&(a * &lcm).to_integer()));
        let f = Rat::new(lcm, g);
        Constraint { normal: self.normal.scale(&f), offset: &self.offset * &f }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPolyhedron {
    ambient_dim: usize,
    inequalities: Vec<Constraint>,
    equalities: Vec<Constraint>,
    empty: bool,
}

impl HPolyhedron {
    /// The whole space.
    pub fn new(ambient_dim: usize) -> Self {
        HPolyhedron { ambient_dim, inequalities: Vec::new(), equalities: Vec::new(), empty: false }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        HPolyhedron {
            ambient_dim,
            inequalities: vec![Constraint::new(QVector::zeros(ambient_dim), -Rat::one())],
            equalities: Vec::new(),
            empty: true,
        }
    }

    pub fn from_constraints(
        ambient_dim: usize,
        inequalities: Vec<Constraint>,
        equalities: Vec<Constraint>,
    ) -> Self {
        for c in inequalities.iter().chain(&equalities) {
            assert_eq!(c.normal.dim(), ambient_dim, "constraint dimension mismatch");
        }
        let trivially_empty = inequalities
            .iter()
            .any(|c| c.normal.is_zero() && c.offset.is_negative())
            || equalities.iter().any(|c| c.normal.is_zero() && !c.offset.is_zero());
        if trivially_empty {
            return Self::empty(ambient_dim);
        }
        HPolyhedron { ambient_dim, inequalities, equalities, empty: false }
    }

    /// Adds `⟨normal, x⟩ ≤ offset`.
    pub fn leq(mut self, normal: QVector, offset: Rat) -> Self {
        assert_eq!(normal.dim(), self.ambient_dim, "constraint dimension mismatch");
        if normal.is_zero() && offset.is_negative() {
            return Self::empty(self.ambient_dim);
        }
        self.inequalities.push(Constraint::new(normal, offset));
        self
    }

    /// Adds `⟨normal, x⟩ ≥ offset`.
    pub fn geq(self, normal: QVector, offset: Rat) -> Self {
        self.leq(normal.neg(), -offset)
    }

    /// Adds `⟨normal, x⟩ = offset`.
    pub fn eq(mut self, normal: QVector, offset: Rat) -> Self {
        assert_eq!(normal.dim(), self.ambient_dim, "constraint dimension mismatch");
        if normal.is_zero() && !offset.is_zero() {
            return Self::empty(self.ambient_dim);
        }
        self.equalities.push(Constraint::new(normal, offset));
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.equalities
    }

    /// True when the polyhedron is flagged empty. Only canonical forms are
    /// guaranteed to carry the flag; use [`HPolyhedron::is_empty`] otherwise.
    pub fn is_marked_empty(&self) -> bool {
        self.empty
    }

    pub fn is_empty(&self) -> bool {
        self.empty || generators(self).empty
    }

    pub fn contains(&self, x: &QVector) -> bool {
        assert_eq!(x.dim(), self.ambient_dim, "point dimension mismatch");
        !self.empty
            && self.inequalities.iter().all(|c| c.normal.dot(x) <= c.offset)
            && self.equalities.iter().all(|c| c.normal.dot(x) == c.offset)
    }

    /// Irredundant canonical form of the same point set.
    pub fn canonical(&self) -> HPolyhedron {
        vrep_to_h(&generators(self))
    }

    /// Point-set equality via canonical forms.
    pub fn same_set(&self, other: &HPolyhedron) -> bool {
        self.ambient_dim == other.ambient_dim && self.canonical() == other.canonical()
    }

    /// `t · P` for `t > 0`.
    pub fn scale(&self, t: &Rat) -> HPolyhedron {
        assert!(t.is_positive(), "scale factor must be positive");
        let map = |c: &Constraint| Constraint::new(c.normal.clone(), &c.offset * t);
        HPolyhedron {
            ambient_dim: self.ambient_dim,
            inequalities: self.inequalities.iter().map(map).collect(),
            equalities: self.equalities.iter().map(map).collect(),
            empty: self.empty,
        }
    }

    /// Intersection with another polyhedron (constraint union).
    pub fn intersect(&self, other: &HPolyhedron) -> HPolyhedron {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.empty || other.empty {
            return Self::empty(self.ambient_dim);
        }
        let mut out = self.clone();
        out.inequalities.extend(other.inequalities.iter().cloned());
        out.equalities.extend(other.equalities.iter().cloned());
        out
    }
}

/// `conv(vertices) + cone(rays) + span(lineality)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VRepresentation {
    pub ambient_dim: usize,
    pub vertices: Vec<QVector>,
    pub rays: Vec<QVector>,
    pub lineality: Vec<QVector>,
    pub empty: bool,
}

impl VRepresentation {
    pub fn empty(ambient_dim: usize) -> Self {
        VRepresentation {
            ambient_dim,
            vertices: Vec::new(),
            rays: Vec::new(),
            lineality: Vec::new(),
            empty: true,
        }
    }

    pub fn point(p: QVector) -> Self {
        VRepresentation {
            ambient_dim: p.dim(),
            vertices: vec![p],
            rays: Vec::new(),
            lineality: Vec::new(),
            empty: false,
        }
    }

    /// `conv(vertices) + cone(rays)`, not yet canonical.
    pub fn new(ambient_dim: usize, vertices: Vec<QVector>, rays: Vec<QVector>) -> Self {
        VRepresentation {
            ambient_dim,
            empty: vertices.is_empty(),
            vertices,
            rays: rays.iter().map(QVector::primitive_direction).filter(|r| !r.is_zero()).collect(),
            lineality: Vec::new(),
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn scale(&self, t: &Rat) -> VRepresentation {
        assert!(t.is_positive(), "scale factor must be positive");
        VRepresentation {
            vertices: self.vertices.iter().map(|v| v.scale(t)).collect(),
            ..self.clone()
        }
    }

    /// Canonical (irredundant, sorted) form of the same point set.
    pub fn canonical(&self) -> VRepresentation {
        generators(&vrep_to_h(self))
    }
}

/// Generators without the dimension cap; used internally on canonical forms.
pub(crate) fn generators(p: &HPolyhedron) -> VRepresentation {
    let n = p.ambient_dim;
    if p.empty {
        return VRepresentation::empty(n);
    }
    // Homogenize: (x, t) with t ≥ 0, b·t − ⟨a, x⟩ ≥ 0, ⟨a, x⟩ − b·t = 0.
    let lift = |c: &Constraint, sign: i64| {
        let mut v: Vec<Rat> = c.normal.iter().map(|a| a * Rat::from_integer(sign.into())).collect();
        v.push(&c.offset * Rat::from_integer((-sign).into()));
        QVector(v)
    };
    let mut ineqs: Vec<QVector> = p.inequalities.iter().map(|c| lift(c, -1)).collect();
    ineqs.push(QVector::unit(n + 1, n));
    let eqs: Vec<QVector> = p.equalities.iter().map(|c| lift(c, 1)).collect();
    let g = cone_generators(n + 1, &ineqs, &eqs);

    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in g.rays {
        let t = r[n].clone();
        let x = QVector(r.0[..n].to_vec());
        if t.is_zero() {
            rays.push(x);
        } else {
            vertices.push(x.scale(&t.recip()));
        }
    }
    if vertices.is_empty() {
        return VRepresentation::empty(n);
    }
    vertices.sort();
    rays.sort();
    let lineality = g.lineality.into_iter().map(|l| QVector(l.0[..n].to_vec())).collect();
    VRepresentation { ambient_dim: n, vertices, rays, lineality, empty: false }
}

/// Vertices, rays and lineality of an H-polyhedron (double description).
pub fn dual_description(p: &HPolyhedron) -> Result<VRepresentation> {
    dual_description_with_cap(p, DEFAULT_DIM_CAP)
}

pub fn dual_description_with_cap(p: &HPolyhedron, cap: usize) -> Result<VRepresentation> {
    if p.ambient_dim > cap {
        return Err(Error::DimensionCap { dim: p.ambient_dim, cap });
    }
    Ok(generators(p))
}

/// Canonical irredundant inequality description of a V-polyhedron.
pub fn vrep_to_h(v: &VRepresentation) -> HPolyhedron {
    let n = v.ambient_dim;
    if v.empty || v.vertices.is_empty() {
        return HPolyhedron::empty(n);
    }
    // Valid inequalities ⟨a, x⟩ ≤ b form the cone of (a, b) with
    // b − ⟨a, v⟩ ≥ 0, −⟨a, r⟩ ≥ 0, ⟨a, l⟩ = 0.
    let with_last = |x: &QVector, last: Rat| {
        let mut e = x.0.clone();
        e.push(last);
        QVector(e)
    };
    let mut ineqs: Vec<QVector> =
        v.vertices.iter().map(|p| with_last(&p.neg(), Rat::one())).collect();
    ineqs.extend(v.rays.iter().map(|r| with_last(&r.neg(), Rat::zero())));
    let eqs: Vec<QVector> = v.lineality.iter().map(|l| with_last(l, Rat::zero())).collect();
    let g = cone_generators(n + 1, &ineqs, &eqs);

    let split = |x: &QVector| Constraint::new(QVector(x.0[..n].to_vec()), x[n].clone());
    let mut inequalities: Vec<Constraint> = g
        .rays
        .iter()
        .map(split)
        .filter(|c| !c.normal.is_zero())
        .map(|c| c.normalized())
        .collect();
    inequalities.sort();
    let equalities = g.lineality.iter().map(split).collect();
    HPolyhedron { ambient_dim: n, inequalities, equalities, empty: false }
}

/// `P = conv(polytope_vertices) + recession`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylDecomposition {
    pub polytope_vertices: Vec<QVector>,
    /// The recession cone as a V-representation with the origin as its vertex.
    pub recession: VRepresentation,
}

pub fn decompose_weyl(p: &HPolyhedron) -> Result<WeylDecomposition> {
    let v = dual_description(p)?;
    if v.empty {
        return Err(Error::EmptyPolyhedron);
    }
    let recession = VRepresentation {
        ambient_dim: v.ambient_dim,
        vertices: vec![QVector::zeros(v.ambient_dim)],
        rays: v.rays,
        lineality: v.lineality,
        empty: false,
    };
    Ok(WeylDecomposition { polytope_vertices: v.vertices, recession })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearMin {
    Min { value: Rat, argmin: QVector },
    /// `ray` is a recession direction along which the functional decreases.
    Unbounded { ray: QVector },
}

/// Minimum of `⟨u, x⟩` over `P`, attained at a vertex of the polytope part.
/// Ties resolve to the lexicographically largest vertex.
pub fn minimize_linear(p: &HPolyhedron, u: &QVector) -> Result<LinearMin> {
    if u.dim() != p.ambient_dim {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim, found: u.dim() });
    }
    let v = dual_description(p)?;
    if v.empty {
        return Err(Error::EmptyPolyhedron);
    }
    if let Some(ray) = v.rays.iter().find(|r| u.dot(r).is_negative()) {
        return Ok(LinearMin::Unbounded { ray: ray.clone() });
    }
    if let Some(l) = v.lineality.iter().find(|l| !u.dot(l).is_zero()) {
        let ray = if u.dot(l).is_negative() { l.clone() } else { l.neg() };
        return Ok(LinearMin::Unbounded { ray });
    }
    let (value, argmin) = v
        .vertices
        .iter()
        .map(|x| (u.dot(x), x))
        .reduce(|best, cur| if cur.0 < best.0 || (cur.0 == best.0 && cur.1 > best.1) { cur } else { best })
        .expect("nonempty polyhedron has a vertex");
    Ok(LinearMin::Min { value, argmin: argmin.clone() })
}

/// Minkowski sum of two V-polyhedra, returned in canonical form.
pub fn minkowski_sum(p: &VRepresentation, q: &VRepresentation) -> Result<VRepresentation> {
    if p.ambient_dim != q.ambient_dim {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim, found: q.ambient_dim });
    }
    if p.empty || q.empty {
        return Ok(VRepresentation::empty(p.ambient_dim));
    }
    let vertices = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| a.add(b)))
        .collect();
    let sum = VRepresentation {
        ambient_dim: p.ambient_dim,
        vertices,
        rays: p.rays.iter().chain(&q.rays).cloned().collect(),
        lineality: p.lineality.iter().chain(&q.lineality).cloned().collect(),
        empty: false,
    };
    Ok(sum.canonical())
}

/// Membership test; every constraint must hold exactly.
pub fn contains(p: &HPolyhedron, x: &QVector) -> bool {
    p.contains(x)
}
