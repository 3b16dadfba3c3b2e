use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use schubert_core::combinatorics::{partitions_in_box, partitions_of};
use schubert_core::grassmann::{dual, giambelli, grassmannian_degree, multiply, pairing, pieri, DegreeMode};
use schubert_core::lrcalc::{lr_coefficient, lr_expand};
use schubert_core::{BoxPartition, GrassClass, GrassContext, Partition};

fn contexts_up_to_g26() -> Vec<GrassContext> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for m in 0..n.min(3) {
            out.push(GrassContext::new(m, n).unwrap());
        }
    }
    out
}

fn arb_class() -> impl Strategy<Value = (GrassClass, GrassClass, GrassClass)> {
    (0usize..3, 1usize..=6)
        .prop_filter("m < n", |(m, n)| m < n)
        .prop_flat_map(|(m, n)| {
            let ctx = GrassContext::new(m, n).unwrap();
            let size = ctx.basis().len();
            let one = move || {
                proptest::collection::vec((0..size, -3i64..=3), 0..4).prop_map(move |terms| {
                    let basis = ctx.basis();
                    GrassClass::from_terms(
                        ctx,
                        terms.into_iter().map(|(i, c)| (basis[i].partition(), BigInt::from(c))),
                    )
                    .unwrap()
                })
            };
            (one(), one(), one())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in arb_class()) {
        let ab = multiply(&a, &b).unwrap();
        prop_assert_eq!(&ab, &multiply(&b, &a).unwrap());
        let left = multiply(&ab, &c).unwrap();
        let right = multiply(&a, &multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let dist = multiply(&a, &b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(dist, ab.add(&multiply(&a, &c).unwrap()).unwrap());
        let unit = GrassClass::unit(a.ctx());
        prop_assert_eq!(multiply(&unit, &a).unwrap(), a.clone());
    }
}

#[test]
fn pieri_agrees_with_lr_for_every_special_class() {
    for ctx in contexts_up_to_g26() {
        for idx in ctx.basis() {
            let s = GrassClass::basis_element(&idx);
            for b in 0..=ctx.cols() as i64 {
                let special = GrassClass::special(ctx, b);
                assert_eq!(pieri(&s, b), multiply(&s, &special).unwrap(), "{ctx} {idx} tau_{b}");
            }
        }
    }
}

#[test]
fn special_classes_out_of_range_vanish() {
    let ctx = GrassContext::new(1, 3).unwrap();
    let s = GrassClass::unit(ctx);
    assert!(pieri(&s, 3).is_zero());
    assert!(pieri(&s, -1).is_zero());
}

#[test]
fn duality_is_an_involution_and_pairing_is_orthonormal() {
    for ctx in contexts_up_to_g26() {
        let basis = ctx.basis();
        for l in &basis {
            assert_eq!(dual(&dual(l)), *l);
            assert_eq!(l.codim() + dual(l).codim(), ctx.dimension());
            for mu in &basis {
                let v = pairing(&GrassClass::basis_element(l), &GrassClass::basis_element(mu)).unwrap();
                let want = if *mu == dual(l) { BigInt::one() } else { BigInt::zero() };
                assert_eq!(v, want, "{ctx} <{l},{mu}>");
            }
        }
    }
}

#[test]
fn giambelli_reproduces_each_basis_class() {
    for ctx in contexts_up_to_g26() {
        for idx in ctx.basis() {
            let g = giambelli(&idx.to_sequence()).unwrap();
            assert_eq!(g.expansion, GrassClass::basis_element(&idx), "{ctx} {idx}");
        }
    }
}

#[test]
fn degree_modes_agree() {
    for n in 1..=12 {
        for m in 0..n {
            let ctx = GrassContext::new(m, n).unwrap();
            if ctx.dimension() <= 12 {
                assert_eq!(
                    grassmannian_degree(ctx, DegreeMode::Pieri).unwrap(),
                    grassmannian_degree(ctx, DegreeMode::Formula).unwrap(),
                    "{ctx}"
                );
            }
        }
    }
}

#[test]
fn products_are_graded_with_nonnegative_coefficients() {
    for ctx in contexts_up_to_g26() {
        let basis = ctx.basis();
        for l in &basis {
            for mu in &basis {
                let p = multiply(&GrassClass::basis_element(l), &GrassClass::basis_element(mu)).unwrap();
                for (nu, c) in p.terms() {
                    assert!(*c > BigInt::zero());
                    assert_eq!(nu.weight(), l.codim() + mu.codim());
                }
            }
        }
    }
}

#[test]
fn boundary_contexts_behave() {
    // projective space: a single row
    let pn = GrassContext::new(0, 4).unwrap();
    let h = GrassClass::special(pn, 1);
    let mut p = GrassClass::unit(pn);
    for _ in 0..4 {
        p = multiply(&p, &h).unwrap();
    }
    assert_eq!(p, GrassClass::point(pn));
    assert!(multiply(&p, &h).unwrap().is_zero());
    // hyperplanes: a single column
    let dual_pn = GrassContext::new(3, 4).unwrap();
    assert_eq!(grassmannian_degree(dual_pn, DegreeMode::Pieri).unwrap(), BigInt::one());
    assert_eq!(dual_pn.basis().len(), 5);
}

#[test]
fn lr_pieri_specialization_in_3x4_box() {
    for lam in partitions_in_box(3, 4) {
        for b in 0..=4 {
            let e = lr_expand(&lam, &Partition::row(b), Some((3, 4)));
            for (nu, c) in &e {
                assert!(c.is_one());
                assert!(nu.contains(&lam));
                // horizontal strip: no column gets two new boxes
                for i in 1..nu.len() {
                    assert!(nu.get(i) <= lam.get(i - 1), "{nu} / {lam} is not a horizontal strip");
                }
            }
            let ctx = GrassContext::new(2, 6).unwrap();
            let via_pieri = pieri(&GrassClass::basis_element(&BoxPartition::new(ctx, &lam).unwrap()), b as i64);
            assert_eq!(via_pieri.terms().count(), e.len(), "{lam} x ({b})");
        }
    }
}

#[test]
fn lr_associativity_total_weight_six() {
    let partitions: Vec<Partition> = (0..=6).flat_map(partitions_of).collect();
    for a in &partitions {
        for b in partitions.iter().filter(|b| a.weight() + b.weight() <= 6) {
            let ab = lr_expand(a, b, None);
            for c in partitions.iter().filter(|c| a.weight() + b.weight() + c.weight() <= 6) {
                let bc = lr_expand(b, c, None);
                let mut left = std::collections::BTreeMap::new();
                for (nu, k) in &ab {
                    for (rho, j) in lr_expand(nu, c, None) {
                        *left.entry(rho).or_insert_with(num_bigint::BigUint::default) += k * j;
                    }
                }
                let mut right = std::collections::BTreeMap::new();
                for (nu, k) in &bc {
                    for (rho, j) in lr_expand(a, nu, None) {
                        *right.entry(rho).or_insert_with(num_bigint::BigUint::default) += k * j;
                    }
                }
                assert_eq!(left, right, "({a})({b})({c})");
            }
        }
    }
}

#[test]
fn lr_coefficient_vanishes_off_weight() {
    let l: Partition = "2,1".parse().unwrap();
    let m: Partition = "1".parse().unwrap();
    assert!(lr_coefficient(&l, &m, &"3,2".parse().unwrap()).is_zero());
    assert!(lr_coefficient(&l, &m, &"1,1,1,1".parse().unwrap()).is_zero());
}
