//! Coordinate projection by Fourier–Motzkin elimination.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{Constraint, HPolyhedron};
use crate::exact::QVector;

/// Image of `p` under the projection onto the coordinates in `keep` (in the
/// given order). The result is returned in canonical, irredundant form.
pub fn project(p: &HPolyhedron, keep: &[usize]) -> HPolyhedron {
    let n = p.ambient_dim();
    assert!(keep.iter().all(|&k| k < n), "projection index out of range");
    if p.is_marked_empty() {
        return HPolyhedron::empty(keep.len());
    }
    let eliminate: Vec<usize> = (0..n).filter(|j| !keep.contains(j)).collect();

    let mut ineqs: Vec<Constraint> = p.inequalities().to_vec();
    let mut eqs: Vec<Constraint> = p.equalities().to_vec();

    // Substitute equalities that mention an eliminated coordinate.
    while let Some((i, j)) = eqs.iter().enumerate().find_map(|(i, e)| {
        eliminate.iter().find(|&&j| !e.normal[j].is_zero()).map(|&j| (i, j))
    }) {
        let e = eqs.swap_remove(i);
        let substitute = |c: &Constraint| {
            if c.normal[j].is_zero() {
                return c.clone();
            }
            let f = -(&c.normal[j] / &e.normal[j]);
            Constraint::new(c.normal.axpy(&f, &e.normal), &c.offset + &f * &e.offset)
        };
        ineqs = ineqs.iter().map(substitute).collect();
        eqs = eqs.iter().map(substitute).collect();
    }

    for &j in &eliminate {
        let mut next: BTreeSet<Constraint> = BTreeSet::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for c in ineqs {
            let a = c.normal[j].clone();
            if a.is_positive() {
                pos.push(c);
            } else if a.is_negative() {
                neg.push(c);
            } else {
                next.insert(c.normalized());
            }
        }
        for cp in &pos {
            for cn in &neg {
                let fp = -cn.normal[j].clone();
                let fn_ = cp.normal[j].clone();
                let normal = cp.normal.scale(&fp).axpy(&fn_, &cn.normal);
                let offset = &cp.offset * &fp + &cn.offset * &fn_;
                next.insert(Constraint::new(normal, offset).normalized());
            }
        }
        ineqs = Vec::with_capacity(next.len());
        for c in next {
            if c.normal.is_zero() {
                if c.offset.is_negative() {
                    return HPolyhedron::empty(keep.len());
                }
                continue;
            }
            ineqs.push(c);
        }
    }

    let restrict = |c: &Constraint| {
        Constraint::new(
            keep.iter().map(|&k| c.normal[k].clone()).collect::<QVector>(),
            c.offset.clone(),
        )
    };
    let mut equalities = Vec::new();
    for e in &eqs {
        let r = restrict(e);
        if r.normal.is_zero() {
            if !r.offset.is_zero() {
                return HPolyhedron::empty(keep.len());
            }
            continue;
        }
        equalities.push(r);
    }
    let inequalities: Vec<Constraint> = ineqs.iter().map(restrict).collect();
    HPolyhedron::from_constraints(keep.len(), inequalities, equalities).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::polyhedra::{dual_description, minimize_linear, LinearMin};
    use proptest::prelude::*;

    fn qv(xs: &[i64]) -> QVector {
        QVector::from_ints(xs)
    }

    #[test]
    fn diagonal_segment() {
        let p = HPolyhedron::new(2)
            .eq(qv(&[1, -1]), rat(0))
            .geq(qv(&[1, 0]), rat(0))
            .leq(qv(&[1, 0]), rat(1));
        let y = project(&p, &[1]);
        let expected = HPolyhedron::new(1).geq(qv(&[1]), rat(0)).leq(qv(&[1]), rat(1));
        assert!(y.same_set(&expected));
        assert_eq!(y.inequalities().len(), 2);
    }

    #[test]
    fn eliminate_y() {
        let p = HPolyhedron::new(2)
            .geq(qv(&[1, 1]), rat(2))
            .geq(qv(&[1, 0]), rat(0))
            .geq(qv(&[0, 1]), rat(0));
        let x = project(&p, &[0]);
        assert_eq!(x, HPolyhedron::new(1).geq(qv(&[1]), rat(0)).canonical());
    }

    #[test]
    fn keep_everything() {
        let p = HPolyhedron::new(2)
            .geq(qv(&[1, 1]), rat(2))
            .geq(qv(&[1, 0]), rat(0))
            .geq(qv(&[0, 1]), rat(0))
            .geq(qv(&[2, 2]), rat(1));
        assert_eq!(project(&p, &[0, 1]), p.canonical());
    }

    #[test]
    fn empty_projection() {
        let p = HPolyhedron::new(2).geq(qv(&[0, 1]), rat(1)).leq(qv(&[0, 1]), rat(0));
        assert!(project(&p, &[0]).is_marked_empty());
    }

    fn in_projection_by_lift(p: &HPolyhedron, x: i64) -> bool {
        // fix the kept coordinate and test feasibility of the fiber
        let fiber = p.clone().eq(qv(&[1, 0, 0]), rat(x));
        !fiber.is_empty()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn projection_sound_and_complete(
            cs in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), -3i64..=5), 1..=6),
        ) {
            let p = cs.iter().fold(HPolyhedron::new(3), |p, (a, b)| p.leq(qv(a), rat(*b)));
            let img = project(&p, &[0]);
            for x in -6..=6 {
                prop_assert_eq!(img.contains(&qv(&[x])), in_projection_by_lift(&p, x));
            }
            if !p.is_empty() {
                // extreme values of x_0 agree
                for dir in [1, -1] {
                    let a = minimize_linear(&p, &qv(&[dir, 0, 0])).unwrap();
                    let b = minimize_linear(&img, &qv(&[dir])).unwrap();
                    match (a, b) {
                        (LinearMin::Min { value: va, .. }, LinearMin::Min { value: vb, .. }) => prop_assert_eq!(va, vb),
                        (LinearMin::Unbounded { .. }, LinearMin::Unbounded { .. }) => {}
                        other => prop_assert!(false, "mismatch {:?}", other),
                    }
                }
            } else {
                prop_assert!(dual_description(&img).unwrap().empty);
            }
        }
    }
}
