use std::sync::Arc;

use proptest::prelude::*;
use separable::cli::{emit_mor, parse_mor};
use separable::exactlin::{solve_affine, Eliminator, Feasibility, Field, Matrix, Scalar};
use separable::fixtures;
use separable::lincat::{split_idempotent, Category, Mor, Obj};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(7))]
}

fn matrix(field: Field, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let data = v.into_iter().map(|n| field.int(n)).collect();
        Matrix::new(field, rows, cols, data).unwrap()
    })
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    (fields(), 1usize..5, 1usize..5).prop_flat_map(|(f, r, c)| matrix(f, r, c))
}

fn sparse_rows(m: &Matrix) -> Vec<Vec<(usize, Scalar)>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().cloned().enumerate().filter(|(_, s)| !s.is_zero()).collect())
        .collect()
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant(m in any_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rref_is_idempotent(m in any_matrix()) {
        let (r, p) = m.rref();
        let (r2, p2) = r.rref();
        prop_assert_eq!(r, r2);
        prop_assert_eq!(p, p2);
    }

    #[test]
    fn kernel_is_annihilated_and_complements_rank(m in any_matrix()) {
        let k = m.kernel();
        prop_assert_eq!(k.len() + m.rank(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn inverse_exists_iff_full_rank((f, n) in (fields(), 1usize..5), seed in any::<u64>()) {
        let m = {
            let mut rng = seed;
            let data = (0..n * n).map(|_| {
                rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                f.int(((rng >> 33) % 7) as i64 - 3)
            }).collect();
            Matrix::new(f, n, n, data).unwrap()
        };
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.rank(), n);
                prop_assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(f, n));
                prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(f, n));
            }
            None => prop_assert!(m.rank() < n),
        }
    }

    #[test]
    fn sparse_and_dense_solvers_agree(
        (a, b) in any_matrix().prop_flat_map(|a| {
            let f = a.field();
            let rows = a.rows();
            (Just(a), prop::collection::vec(-2i64..=2, rows).prop_map(move |v| v.into_iter().map(|n| f.int(n)).collect::<Vec<_>>()))
        })
    ) {
        let mut elim = Eliminator::new(a.field(), a.cols());
        for (row, r) in sparse_rows(&a).into_iter().zip(&b) {
            elim.add(row, r.clone());
        }
        let dense = solve_affine(&a, &b).unwrap();
        let sparse = elim.solve();
        prop_assert_eq!(dense.is_feasible(), sparse.is_feasible());
        prop_assert_eq!(elim.rank(), a.rank());
        match (dense, sparse) {
            (Feasibility::Feasible(d), Feasibility::Feasible(s)) => {
                prop_assert_eq!(a.mul_vec(&d.particular).unwrap(), b.clone());
                prop_assert_eq!(a.mul_vec(&s.particular).unwrap(), b);
                prop_assert_eq!(d.kernel.len(), s.kernel.len());
                for v in &s.kernel {
                    prop_assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
                }
            }
            (Feasibility::Infeasible(d), Feasibility::Infeasible(s)) => {
                prop_assert_eq!(d.rank, s.rank);
                prop_assert_eq!(s.augmented_rank, s.rank + 1);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn prime_field_inverses(p in prop::sample::select(vec![2u32, 3, 5, 7, 11]), n in -50i64..50) {
        let f = Field::prime(p).unwrap();
        let x = f.int(n);
        match x.inv() {
            Some(y) => prop_assert!((&x * &y).is_one()),
            None => prop_assert!(x.is_zero()),
        }
        prop_assert_eq!(f.parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn rational_display_round_trips(a in -100i64..100, b in 1i64..50) {
        let q = Field::Rationals;
        let x = q.frac(a, b).unwrap();
        prop_assert_eq!(q.parse_scalar(&x.to_string()).unwrap(), x);
    }
}

fn categories() -> Vec<Arc<Category>> {
    let q = Field::Rationals;
    vec![
        Arc::new(fixtures::c2(q)),
        Arc::new(fixtures::dual_numbers(q)),
        Arc::new(fixtures::dual_numbers(Field::Prime(3))),
        Arc::new(fixtures::c3(q)),
    ]
}

/// A random plain object and three random composable morphisms on it.
fn composable() -> impl Strategy<Value = (Arc<Category>, Vec<Obj>, Vec<Vec<i64>>)> {
    (0..categories().len(), prop::collection::vec(prop::collection::vec(0usize..2, 1..3), 4)).prop_flat_map(|(ci, sums)| {
        let cat = categories()[ci].clone();
        let n = cat.num_objects();
        let objs: Vec<Obj> = sums.iter().map(|s| Obj::plain(&cat, s.iter().map(|&x| x % n).collect())).collect();
        let dims: Vec<usize> = (0..3).map(|i| objs[i].ambient_dim(&objs[i + 1])).collect();
        let coeffs = dims.into_iter().map(|d| prop::collection::vec(-2i64..=2, d)).collect::<Vec<_>>();
        (Just(cat), Just(objs), coeffs)
    })
}

fn mor(dom: &Obj, cod: &Obj, v: &[i64]) -> Mor {
    let f = dom.field();
    Mor::from_ambient(dom, cod, &v.iter().map(|&n| f.int(n)).collect::<Vec<_>>()).unwrap()
}

proptest! {
    #[test]
    fn composition_is_associative_and_unital((_, objs, cs) in composable()) {
        let f = mor(&objs[0], &objs[1], &cs[0]);
        let g = mor(&objs[1], &objs[2], &cs[1]);
        let h = mor(&objs[2], &objs[3], &cs[2]);
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(Mor::identity(&objs[1]).compose(&f).unwrap(), f.clone());
        prop_assert_eq!(f.compose(&Mor::identity(&objs[0])).unwrap(), f);
    }

    #[test]
    fn composition_is_bilinear((_, objs, cs) in composable()) {
        let f = mor(&objs[0], &objs[1], &cs[0]);
        let g = mor(&objs[1], &objs[2], &cs[1]);
        let g2 = mor(&objs[1], &objs[2], &cs[1].iter().rev().cloned().collect::<Vec<_>>());
        let lhs = g.add(&g2).unwrap().compose(&f).unwrap();
        let rhs = g.compose(&f).unwrap().add(&g2.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn morphism_literals_round_trip((_, objs, cs) in composable()) {
        let f = mor(&objs[0], &objs[1], &cs[0]);
        let back = parse_mor(f.dom(), f.cod(), &emit_mor(&f)).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn conjugated_idempotents_split(
        f in fields(),
        n in 1usize..4,
        mask in prop::collection::vec(any::<bool>(), 3),
        upper in prop::collection::vec(-2i64..=2, 9),
    ) {
        let cat = Arc::new(fixtures::c1(f));
        let x = Obj::plain(&cat, vec![0; n]);
        let mut a = Matrix::identity(f, n);
        for i in 0..n {
            for j in i + 1..n {
                a.set(i, j, f.int(upper[i * 3 + j]));
            }
        }
        let mut d = Matrix::zeros(f, n, n);
        for i in 0..n {
            if mask[i] {
                d.set(i, i, f.one());
            }
        }
        let e = a.mul(&d).unwrap().mul(&a.inverse().unwrap()).unwrap();
        let e = Mor::from_ambient(&x, &x, e.entries()).unwrap();
        let w = split_idempotent(&x, &e).unwrap();
        prop_assert!(w.verify().passed());
        prop_assert_eq!(w.u.compose(&w.v).unwrap(), e);
    }
}
