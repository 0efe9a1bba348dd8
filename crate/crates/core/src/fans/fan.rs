use std::collections::BTreeSet;

use num_traits::Signed;

use super::cone::Cone;
use crate::error::{Error, Result};
use crate::exact::{combinations, rank_of, QMatrix, QVector};
use crate::polyhedra::{dual_description, HPolyhedron, DEFAULT_DIM_CAP};

/// Default cap on the number of generators for arrangement constructions.
pub const DEFAULT_GENERATOR_CAP: usize = 12;

/// A fan stored by its maximal cones, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    ambient_dim: usize,
    maximal_cones: Vec<Cone>,
}

impl Fan {
    /// Keeps the inclusion-maximal cones of `cones`. An empty list gives the
    /// fan consisting of the origin.
    pub fn new(ambient_dim: usize, cones: Vec<Cone>) -> Fan {
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        let keep: Vec<bool> = (0..cones.len())
            .map(|i| {
                !cones.iter().enumerate().any(|(j, other)| {
                    j != i && other.dim() > cones[i].dim() && other.contains_cone(&cones[i])
                })
            })
            .collect();
        let mut maximal_cones: Vec<Cone> =
            cones.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect();
        if maximal_cones.is_empty() {
            maximal_cones.push(Cone::origin(ambient_dim));
        }
        Fan { ambient_dim, maximal_cones }
    }

    pub fn from_cone(cone: Cone) -> Fan {
        Fan { ambient_dim: cone.ambient_dim(), maximal_cones: vec![cone] }
    }

    pub fn origin(ambient_dim: usize) -> Fan {
        Fan::from_cone(Cone::origin(ambient_dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal_cones
    }

    /// All rays of the fan, sorted.
    pub fn rays(&self) -> Vec<QVector> {
        let set: BTreeSet<&QVector> = self.maximal_cones.iter().flat_map(|c| c.rays()).collect();
        set.into_iter().cloned().collect()
    }

    pub fn support_contains(&self, x: &QVector) -> bool {
        self.maximal_cones.iter().any(|c| c.contains(x))
    }

    /// Every pairwise intersection of maximal cones is a face of both.
    pub fn is_valid(&self) -> bool {
        let cs = &self.maximal_cones;
        (0..cs.len()).all(|i| {
            (i + 1..cs.len()).all(|j| {
                let meet = cs[i].intersect(&cs[j]);
                meet.is_face_of(&cs[i]) && meet.is_face_of(&cs[j])
            })
        })
    }

    pub fn same_support(&self, other: &Fan) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.maximal_cones.iter().all(|c| covered(c, &other.maximal_cones))
            && other.maximal_cones.iter().all(|c| covered(c, &self.maximal_cones))
    }
}

/// Splits each cone along the hyperplane `h⊥`, keeping pieces of dimension `dim`.
fn split(cones: Vec<Cone>, h: &QVector, dim: usize) -> Vec<Cone> {
    let mut out = Vec::with_capacity(cones.len());
    for c in cones {
        let pos = c.rays().iter().any(|r| h.dot(r).is_positive());
        let neg = c.rays().iter().any(|r| h.dot(r).is_negative());
        if !(pos && neg) {
            out.push(c);
            continue;
        }
        for side in [h.clone(), h.neg()] {
            let mut normals = c.facet_normals().to_vec();
            normals.push(side);
            let piece = Cone::from_h(c.ambient_dim(), &normals, c.equations())
                .expect("subcone of a pointed cone");
            if piece.dim() == dim {
                out.push(piece);
            }
        }
    }
    out
}

/// Whether `sigma` lies in the union of `cover`, decided exactly on the
/// chambers cut out of `sigma` by the hyperplanes of the overlapping cones.
fn covered(sigma: &Cone, cover: &[Cone]) -> bool {
    if sigma.dim() == 0 {
        return true;
    }
    let candidates: Vec<&Cone> =
        cover.iter().filter(|t| t.intersect(sigma).dim() == sigma.dim()).collect();
    if candidates.iter().any(|t| t.contains_cone(sigma)) {
        return true;
    }
    let hyperplanes: BTreeSet<QVector> = candidates
        .iter()
        .flat_map(|t| t.facet_normals().iter().chain(t.equations()))
        .map(QVector::canonical_line)
        .collect();
    let chambers = hyperplanes
        .iter()
        .fold(vec![sigma.clone()], |cs, h| split(cs, h, sigma.dim()));
    chambers.iter().all(|ch| {
        let p = ch.relint_point();
        candidates.iter().any(|t| t.contains(&p))
    })
}

/// Coarsest common refinement by pairwise intersection of maximal cones.
pub fn common_refinement(fans: &[Fan]) -> Result<Fan> {
    let (first, rest) = fans.split_first().expect("at least one fan");
    if rest.iter().any(|f| !f.same_support(first)) {
        return Err(Error::SupportMismatch);
    }
    let n = first.ambient_dim;
    Ok(rest.iter().fold(first.clone(), |acc, f| {
        let cones = acc
            .maximal_cones
            .iter()
            .flat_map(|a| f.maximal_cones.iter().map(move |b| a.intersect(b)))
            .collect();
        Fan::new(n, cones)
    }))
}

/// Same support, and every cone of `fine` lies in a cone of `coarse`.
pub fn refines(fine: &Fan, coarse: &Fan) -> bool {
    fine.ambient_dim == coarse.ambient_dim
        && fine
            .maximal_cones
            .iter()
            .all(|c| coarse.maximal_cones.iter().any(|d| d.contains_cone(c)))
        && coarse.maximal_cones.iter().all(|c| covered(c, &fine.maximal_cones))
}

/// Outer normal fan of a polyhedron: one maximal cone per vertex, collecting
/// the directions maximized there.
pub fn normal_fan(q: &HPolyhedron) -> Result<Fan> {
    let v = dual_description(q)?;
    if v.empty {
        return Err(Error::EmptyPolyhedron);
    }
    let n = v.ambient_dim;
    let mut cones = Vec::with_capacity(v.vertices.len());
    for p in &v.vertices {
        let normals: Vec<QVector> = v
            .vertices
            .iter()
            .filter(|w| *w != p)
            .map(|w| p.sub(w))
            .chain(v.rays.iter().map(QVector::neg))
            .collect();
        let cone = Cone::from_h(n, &normals, &v.lineality).map_err(|e| match e {
            Error::NotPointed { line } => Error::NotPointedSupport { line },
            other => other,
        })?;
        cones.push(cone);
    }
    Ok(Fan::new(n, cones))
}

/// Fan on `cone(gens)` cut out by every hyperplane spanned by generators.
/// Each cone generated by linearly independent generators is a union of its
/// cones.
pub fn linearity_fan(ambient_dim: usize, gens: &[QVector]) -> Result<Fan> {
    if ambient_dim > DEFAULT_DIM_CAP {
        return Err(Error::DimensionCap { dim: ambient_dim, cap: DEFAULT_DIM_CAP });
    }
    if gens.len() > DEFAULT_GENERATOR_CAP {
        return Err(Error::GeneratorCap { count: gens.len(), cap: DEFAULT_GENERATOR_CAP });
    }
    let c = Cone::from_generators(ambient_dim, gens)?;
    let d = c.dim();
    if d <= 1 {
        return Ok(Fan::from_cone(c));
    }
    let mut hyperplanes = BTreeSet::new();
    for subset in combinations(gens.len(), d - 1) {
        let rows: Vec<QVector> = subset.iter().map(|&i| gens[i].clone()).collect();
        if rank_of(&rows) < d - 1 {
            continue;
        }
        let all: Vec<QVector> = rows.into_iter().chain(c.equations().iter().cloned()).collect();
        let kernel = QMatrix::new(all, ambient_dim).kernel();
        debug_assert_eq!(kernel.len(), 1);
        hyperplanes.insert(kernel[0].canonical_line());
    }
    let chambers = hyperplanes.iter().fold(vec![c], |cs, h| split(cs, h, d));
    Ok(Fan::new(ambient_dim, chambers))
}
