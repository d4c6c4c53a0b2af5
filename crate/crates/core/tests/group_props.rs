mod common;

use std::sync::Arc;

use chainlab::group::{
    bar_complex, bar_index, bar_tuple, bounded_cohomology_of_group, coinvariants, dual_identification, induced_map,
    l1_homology_of_group, module_complex, tensor_coefficients, FiniteGroup, MonomialAction, MonomialModule,
};
use chainlab::rational::{int, one, rat};
use chainlab::simplicial::{antipodal_icosahedron, eta_map, fixtures, SimplicialAction};
use chainlab::{Matrix, Rational};
use proptest::prelude::*;

/// The bundled groups with a nontrivial ±1 character where one exists.
fn groups() -> Vec<(&'static str, Arc<FiniteGroup>, Option<Vec<i64>>)> {
    let z2 = FiniteGroup::cyclic(2);
    vec![
        ("z2", Arc::new(z2.clone()), Some(vec![1, -1])),
        ("z3", Arc::new(FiniteGroup::cyclic(3)), None),
        ("z4", Arc::new(FiniteGroup::cyclic(4)), Some(vec![1, -1, 1, -1])),
        ("z2xz2", Arc::new(FiniteGroup::product(&z2, &z2)), Some(vec![1, -1, 1, -1])),
        ("s3", Arc::new(FiniteGroup::symmetric3()), Some(vec![1, -1, -1, 1, 1, -1])),
    ]
}

#[derive(Clone, Copy, Debug)]
enum Part {
    Trivial,
    Sign,
    Regular,
    SignedRegular,
}

/// A direct sum of trivial, sign and (signed) regular summands, each with
/// its own weight.
fn module(g: &FiniteGroup, chi: &[i64], parts: &[(Part, Rational)]) -> MonomialModule {
    let n = g.order();
    let mut weights = Vec::new();
    let mut images: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (part, w) in parts {
        let base = weights.len();
        match part {
            Part::Trivial | Part::Sign => {
                weights.push(w.clone());
                for (x, img) in images.iter_mut().enumerate() {
                    let s = if matches!(part, Part::Sign) { chi[x] } else { 1 };
                    img.push((base, int(s)));
                }
            }
            Part::Regular | Part::SignedRegular => {
                weights.extend(std::iter::repeat_n(w.clone(), n));
                for (x, img) in images.iter_mut().enumerate() {
                    let s = if matches!(part, Part::SignedRegular) { chi[x] } else { 1 };
                    for h in 0..n {
                        img.push((base + g.mul(x, h), int(s)));
                    }
                }
            }
        }
    }
    MonomialModule::new(g, weights, MonomialAction::from_images(images)).expect("monomial module")
}

fn part() -> impl Strategy<Value = (Part, Rational)> {
    (
        prop_oneof![Just(Part::Trivial), Just(Part::Sign), Just(Part::Regular), Just(Part::SignedRegular)],
        prop_oneof![Just(int(1)), Just(int(2)), Just(rat(1, 3))],
    )
}

/// `∂(x_0, …, x_n) = Σ (−1)^i (x_0, …, x̂_i, …, x_n)` in homogeneous
/// coordinates `x_k = g_0 g_1 ⋯ g_k`.
fn homogeneous_boundary(g: &FiniteGroup, n: usize) -> Matrix {
    let order = g.order();
    let rows = order.pow(n as u32);
    let cols = order.pow(n as u32 + 1);
    let mut m = Matrix::zeros(rows, cols);
    for j in 0..cols {
        let t = bar_tuple(j, n, order);
        let mut x = vec![t[0]];
        for k in 1..=n {
            x.push(g.mul(x[k - 1], t[k]));
        }
        for i in 0..=n {
            let mut face = x.clone();
            face.remove(i);
            let mut inhom = vec![face[0]];
            for k in 1..face.len() {
                inhom.push(g.mul(g.inv(face[k - 1]), face[k]));
            }
            m.add_at(bar_index(&inhom, order), j, &int(if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    m
}

#[test]
fn bar_boundaries_match_homogeneous_formula() {
    for (name, g, _) in groups() {
        let b = bar_complex(g.clone(), 3).unwrap();
        for n in 1..=3 {
            assert_eq!(b.complex().maps[n - 1], homogeneous_boundary(&g, n), "{name} degree {n}");
        }
        assert!(b.complex().validate().is_valid());
        assert!(b.equivariant.check_commutes().is_ok());
    }
}

#[test]
fn every_bundled_group_has_vanishing_l1_homology() {
    for (name, g, chi) in groups() {
        let mut modules = vec![MonomialModule::trivial_line(&g)];
        modules.push(match &chi {
            Some(c) => MonomialModule::sign(&g, c).unwrap(),
            None => MonomialModule::regular(&g),
        });
        for v in &modules {
            let h = l1_homology_of_group(&g, v, 3).unwrap();
            let b = bounded_cohomology_of_group(&g, v, 3).unwrap();
            assert_eq!(h.degrees[0].dimension, h.coefficient_dim, "{name}");
            assert_eq!(b.degrees[0].dimension, b.coefficient_dim, "{name}");
            for n in 1..=2 {
                assert_eq!(h.degrees[n].dimension, 0, "{name} ℓ¹H_{n}");
                assert_eq!(b.degrees[n].dimension, 0, "{name} H^{n}_b");
            }
            assert!(!h.degrees[3].reliable && !b.degrees[3].reliable);
            assert_eq!(common::betti(&h.complex)[..3], [h.coefficient_dim, 0, 0]);
        }
    }
}

#[test]
fn z2_coefficients_from_the_rank_oracle() {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let h = l1_homology_of_group(&z2, &MonomialModule::trivial_line(&z2), 3).unwrap();
    let dims: Vec<usize> = h.degrees.iter().take(3).map(|d| d.dimension).collect();
    assert_eq!(dims, vec![1, 0, 0]);
    assert_eq!(&common::betti(&h.complex)[..3], &[1, 0, 0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dual_of_coinvariants_is_invariants_of_dual(gi in 0usize..5, parts in prop::collection::vec(part(), 1..=3)) {
        let (_, g, chi) = &groups()[gi];
        let chi = chi.clone().unwrap_or_else(|| vec![1; g.order()]);
        let v = module(g, &chi, &parts);
        prop_assert!(dual_identification(&module_complex(g.clone(), &v).unwrap()).unwrap().holds());
        let bar = bar_complex(g.clone(), 1).unwrap();
        let x = tensor_coefficients(&bar.equivariant, &v).unwrap();
        prop_assert!(x.check_commutes().is_ok());
        prop_assert!(dual_identification(&x).unwrap().holds());
    }

    #[test]
    fn random_modules_over_abelian_groups_vanish(gi in 0usize..4, parts in prop::collection::vec(part(), 1..=2)) {
        let (_, g, chi) = &groups()[gi];
        let chi = chi.clone().unwrap_or_else(|| vec![1; g.order()]);
        let v = module(g, &chi, &parts);
        let h = l1_homology_of_group(g, &v, 2).unwrap();
        prop_assert_eq!(h.degrees[0].dimension, h.coefficient_dim);
        prop_assert_eq!(h.degrees[1].dimension, 0);
        let b = bounded_cohomology_of_group(g, &v, 2).unwrap();
        prop_assert_eq!(b.degrees[0].dimension, b.coefficient_dim);
        prop_assert_eq!(b.degrees[1].dimension, 0);
        let co = coinvariants(&module_complex(g.clone(), &v).unwrap()).unwrap();
        prop_assert_eq!(co.complex.dim(0), h.coefficient_dim);
    }
}

#[test]
fn induced_maps_compose_with_twisted_coefficients() {
    let z4 = Arc::new(FiniteGroup::cyclic(4));
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let sign4 = MonomialModule::sign(&z4, &[1, -1, 1, -1]).unwrap();
    let sign2 = MonomialModule::sign(&z2, &[1, -1]).unwrap();
    let id = Matrix::identity(1);
    let down = induced_map((&z4, &sign4), (&z2, &sign2), &[0, 1, 0, 1], &id, 2).unwrap();
    let flip = induced_map((&z2, &sign2), (&z2, &sign2), &[0, 1], &id.scale(&-one()), 2).unwrap();
    let both = induced_map((&z4, &sign4), (&z2, &sign2), &[0, 1, 0, 1], &id.scale(&-one()), 2).unwrap();
    for n in 0..=2 {
        assert_eq!(flip.on_chains.mats[n].mul(&down.on_chains.mats[n]), both.on_chains.mats[n]);
        assert_eq!(flip.on_coinvariants.mats[n].mul(&down.on_coinvariants.mats[n]), both.on_coinvariants.mats[n]);
    }
    assert!(down.operator_norms.iter().all(|x| *x <= one()));
    assert!(induced_map((&z4, &sign4), (&z2, &sign2), &[0, 1, 0, 1], &id.scale(&int(2)), 2).is_err());
}

#[test]
fn z2_to_trivial_is_an_isomorphism_on_degree_zero() {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let e = Arc::new(FiniteGroup::trivial());
    let f = induced_map(
        (&z2, &MonomialModule::trivial_line(&z2)),
        (&e, &MonomialModule::trivial_line(&e)),
        &[0, 0],
        &Matrix::identity(1),
        2,
    )
    .unwrap();
    let h0 = f.on_homology(0).unwrap();
    assert_eq!(h0.shape(), (1, 1));
    assert!(h0.inverse().is_some());
}

#[test]
fn eta_on_the_antipodal_icosahedron() {
    let (k, a) = antipodal_icosahedron().unwrap();
    let first = a.propose_domain();
    let last: Vec<usize> = a.orbits().iter().map(|o| *o.last().unwrap()).collect();
    assert_ne!(first, last);
    let e1 = eta_map(&k, &a, &first).unwrap();
    let e2 = eta_map(&k, &a, &last).unwrap();
    for eta in [&e1, &e2] {
        assert!(eta.map.validate().is_valid());
        assert!(eta.is_equivariant());
        assert!(eta.operator_norms.iter().all(|x| *x == one()));
        // each simplex goes to exactly one bar basis element
        for m in &eta.map.mats {
            for j in 0..m.cols() {
                assert_eq!(m.column(j).iter().filter(|x| **x != int(0)).count(), 1);
            }
        }
    }
    assert_eq!(e1.on_coinvariant_homology(0).unwrap(), e2.on_coinvariant_homology(0).unwrap());
    for n in 0..=2 {
        let f: Vec<Rational> = (0..e1.bar.complex().dim(n)).map(|i| int((i as i64 * 5) % 7 - 3)).collect();
        assert_eq!(e1.theta_by_formula(n, &f), e1.theta_by_transpose(n, &f));
    }
}

#[test]
fn eta_for_the_trivial_group_is_the_augmentation() {
    let k = fixtures::circle(3);
    let a = SimplicialAction::new(&k, Arc::new(FiniteGroup::trivial()), vec![(0..3).collect()]).unwrap();
    let eta = eta_map(&k, &a, &[0, 1, 2]).unwrap();
    for n in 0..=1 {
        assert_eq!(eta.map.mats[n].shape(), (1, k.count(n)));
        assert!(eta.tuples[n].iter().all(|t| t.iter().all(|&g| g == 0)));
    }
}
