use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{ExtRat, QVector, Rat};
use crate::polyhedra::{vrep_to_h, HPolyhedron, VRepresentation};

/// A monomial ideal in `n` variables, stored by its minimal generators
/// (exponent vectors, sorted). No generators is the zero ideal; the single
/// generator `0` is the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    ambient_dim: usize,
    generators: Vec<Vec<u64>>,
}

fn divides(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    gens.sort();
    gens.dedup();
    // After sorting, a divisor of g always precedes g.
    let mut out: Vec<Vec<u64>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| divides(h, &g)) {
            out.push(g);
        }
    }
    out
}

impl MonomialIdeal {
    pub fn new(ambient_dim: usize, generators: Vec<Vec<u64>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: g.len() });
        }
        Ok(MonomialIdeal { ambient_dim, generators: minimalize(generators) })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        MonomialIdeal { ambient_dim, generators: Vec::new() }
    }

    pub fn unit(ambient_dim: usize) -> Self {
        MonomialIdeal { ambient_dim, generators: vec![vec![0; ambient_dim]] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].iter().all(|&e| e == 0)
    }

    pub fn contains_monomial(&self, u: &[u64]) -> bool {
        self.generators.iter().any(|g| divides(g, u))
    }

    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        other.generators.iter().all(|g| self.contains_monomial(g))
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ideal dimension mismatch");
        let gens = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
            .collect();
        MonomialIdeal { ambient_dim: self.ambient_dim, generators: minimalize(gens) }
    }

    pub fn power(&self, k: u64) -> MonomialIdeal {
        let mut result = MonomialIdeal::unit(self.ambient_dim);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.product(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base);
            }
        }
        result
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ideal dimension mismatch");
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        MonomialIdeal { ambient_dim: self.ambient_dim, generators: minimalize(gens) }
    }

    fn exponent_vectors(&self) -> Vec<QVector> {
        self.generators
            .iter()
            .map(|g| g.iter().map(|&e| Rat::from_integer(e.into())).collect())
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let s: Vec<String> = g.iter().map(u64::to_string).collect();
                format!("[{}]", s.join(","))
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `conv(exponents) + R^n_{≥0}` in canonical form.
pub fn newton_polyhedron(ideal: &MonomialIdeal) -> Result<VRepresentation> {
    Ok(newton_vrep(ideal)?.canonical())
}

fn newton_vrep(ideal: &MonomialIdeal) -> Result<VRepresentation> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let n = ideal.ambient_dim;
    let units = (0..n).map(|i| QVector::unit(n, i)).collect();
    Ok(VRepresentation::new(n, ideal.exponent_vectors(), units))
}

/// Canonical inequality description of the Newton polyhedron.
pub fn newton_h(ideal: &MonomialIdeal) -> Result<HPolyhedron> {
    Ok(vrep_to_h(&newton_vrep(ideal)?))
}

/// Equality of integral closures, i.e. of Newton polyhedra.
pub fn closure_equal(a: &MonomialIdeal, b: &MonomialIdeal) -> bool {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => true,
        (false, false) => {
            newton_h(a).expect("nonzero ideal") == newton_h(b).expect("nonzero ideal")
        }
        _ => false,
    }
}

/// Monomial valuation `u ↦ ⟨w, u⟩` for a primitive nonnegative integer weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightValuation {
    w: QVector,
}

impl WeightValuation {
    pub fn new(w: QVector) -> Result<Self> {
        if w.is_zero() || !w.is_nonnegative() || !w.is_integral() || w.primitive_direction() != w {
            return Err(Error::InvalidWeight(w));
        }
        Ok(WeightValuation { w })
    }

    pub fn weight(&self) -> &QVector {
        &self.w
    }
}

/// `min ⟨w, u⟩` over the generators; `+inf` on the zero ideal.
pub fn weight_valuation(w: &WeightValuation, ideal: &MonomialIdeal) -> ExtRat {
    assert_eq!(w.w.dim(), ideal.ambient_dim, "weight dimension mismatch");
    ideal
        .exponent_vectors()
        .iter()
        .map(|u| w.w.dot(u))
        .min()
        .map_or(ExtRat::PlusInfinity, ExtRat::Finite)
}
