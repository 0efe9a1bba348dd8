use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{hermite_basis_det, QVector};
use crate::polyhedra::dd::cone_generators;

/// A strongly convex rational polyhedral cone.
///
/// `facet_normals` describe the cone as `⟨u, x⟩ ≥ 0` inside the linear span
/// cut out by `equations`. Both normals and rays are primitive integer vectors
/// and all lists are sorted, so equal cones compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<QVector>,
    facet_normals: Vec<QVector>,
    equations: Vec<QVector>,
    dim: usize,
}

impl Cone {
    /// The cone `{0}`.
    pub fn origin(ambient_dim: usize) -> Cone {
        Cone::from_generators(ambient_dim, &[]).expect("origin is pointed")
    }

    /// Cone generated by `gens`. Rejects zero generators and cones containing a line.
    pub fn from_generators(ambient_dim: usize, gens: &[QVector]) -> Result<Cone> {
        for g in gens {
            if g.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: g.dim() });
            }
            if g.is_zero() {
                return Err(Error::ZeroVector);
            }
        }
        let dual = cone_generators(ambient_dim, gens, &[]);
        Cone::from_h(ambient_dim, &dual.rays, &dual.lineality)
    }

    /// `{x : ⟨u, x⟩ ≥ 0 for u in normals, ⟨e, x⟩ = 0 for e in equations}`.
    pub fn from_h(ambient_dim: usize, normals: &[QVector], equations: &[QVector]) -> Result<Cone> {
        let primal = cone_generators(ambient_dim, normals, equations);
        if let Some(line) = primal.lineality.first() {
            return Err(Error::NotPointed { line: line.clone() });
        }
        let dual = cone_generators(ambient_dim, &primal.rays, &[]);
        Ok(Cone {
            ambient_dim,
            dim: ambient_dim - dual.lineality.len(),
            rays: primal.rays,
            facet_normals: dual.rays,
            equations: dual.lineality,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[QVector] {
        &self.facet_normals
    }

    /// Basis of the orthogonal complement of the span.
    pub fn equations(&self) -> &[QVector] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.facet_normals.iter().all(|u| !u.dot(x).is_negative())
            && self.equations.iter().all(|e| e.dot(x).is_zero())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    /// Sum of the rays; lies in the relative interior.
    pub fn relint_point(&self) -> QVector {
        self.rays.iter().fold(QVector::zeros(self.ambient_dim), |acc, r| acc.add(r))
    }

    pub fn in_relint(&self, x: &QVector) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.facet_normals.iter().all(|u| u.dot(x).is_positive())
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_dim, other.ambient_dim, "cone dimension mismatch");
        let normals: Vec<QVector> =
            self.facet_normals.iter().chain(&other.facet_normals).cloned().collect();
        let equations: Vec<QVector> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_h(self.ambient_dim, &normals, &equations).expect("subcone of a pointed cone")
    }

    /// Smallest face of `self` containing `other`, if `other ⊆ self`.
    pub fn smallest_face_containing(&self, other: &Cone) -> Option<Cone> {
        if !self.contains_cone(other) {
            return None;
        }
        let p = other.relint_point();
        let rays: Vec<QVector> = self
            .rays
            .iter()
            .filter(|r| {
                self.facet_normals.iter().all(|u| !u.dot(&p).is_zero() || u.dot(r).is_zero())
            })
            .cloned()
            .collect();
        Some(Cone::from_generators(self.ambient_dim, &rays).expect("face of a pointed cone"))
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        other.smallest_face_containing(self).as_ref() == Some(self)
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    /// Index of the lattice spanned by the rays in the saturated lattice of
    /// the span. Only meaningful for simplicial cones.
    pub fn multiplicity(&self) -> BigInt {
        hermite_basis_det(&self.rays).expect("rays are integral").lattice_det
    }

    /// Strictly positive on every nonzero point of the cone.
    pub fn positive_functional(&self) -> QVector {
        self.facet_normals.iter().fold(QVector::zeros(self.ambient_dim), |acc, u| acc.add(u))
    }
}
