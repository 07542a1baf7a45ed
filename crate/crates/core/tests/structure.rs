use std::collections::BTreeSet;

use superlie::algebra::generated_submodule;
use superlie::weights::{decompose, irreducible_summands, WeightFilter, WeightFunctional};
use superlie::{generated_subalgebra, standard_cartan, ClosureMode, Family, Parity, Scalar, Subspace, SuperAlgebra};

fn classical() -> Vec<Family> {
    Family::default_suite().into_iter().filter(|f| f.kind() == superlie::FamilyKind::Classical).collect()
}

fn cartan() -> Vec<Family> {
    Family::default_suite().into_iter().filter(|f| f.kind() == superlie::FamilyKind::Cartan).collect()
}

fn exceptional(f: &Family) -> bool {
    matches!(f, Family::A { m: 1, n: 1 } | Family::P { n: 3 } | Family::Q { .. })
}

fn weights(a: &SuperAlgebra, filter: WeightFilter) -> BTreeSet<WeightFunctional> {
    let frame = standard_cartan(a).unwrap();
    decompose(a, &frame, filter).unwrap().weights()
}

#[test]
fn root_spaces_are_one_dimensional_outside_the_exceptions() {
    for f in classical() {
        let a = f.build().unwrap();
        let frame = standard_cartan(&a).unwrap();
        let d = decompose(&a, &frame, WeightFilter::All).unwrap();
        let max = d.spaces.iter().filter(|(w, _)| !w.is_zero()).map(|(_, v)| v.len()).max().unwrap();
        if exceptional(&f) {
            assert!(max > 1, "{f} should have a weight space of dimension > 1");
        } else {
            assert_eq!(max, 1, "{f}");
        }
    }
}

#[test]
fn zero_is_an_odd_weight_only_for_q() {
    for f in classical() {
        let a = f.build().unwrap();
        let has_zero = weights(&a, WeightFilter::Parity(Parity::Odd)).iter().any(WeightFunctional::is_zero);
        assert_eq!(has_zero, matches!(f, Family::Q { .. }), "{f}");
    }
}

fn bracket_span(a: &SuperAlgebra, xs: &[usize], ys: &[usize]) -> Subspace {
    let mut s = Subspace::zero(a.dim());
    for &i in xs {
        for &j in ys {
            s.insert(&a.basis_bracket_dense(i, j)).unwrap();
        }
    }
    s
}

#[test]
fn odd_part_squares_onto_even_part() {
    for f in Family::default_suite() {
        let a = f.build().unwrap();
        let odd = a.indices_of(Parity::Odd);
        let s = bracket_span(&a, &odd, &odd);
        assert_eq!(s.dim(), a.even_part().dim(), "{f}");
        assert!(s.is_subspace_of(&a.even_part()).unwrap());
    }
}

#[test]
fn cartan_frame_is_recovered_from_even_root_brackets() {
    for f in [Family::A { m: 1, n: 1 }, Family::P { n: 3 }, Family::Q { n: 2 }, Family::Q { n: 3 }] {
        let a = f.build().unwrap();
        let frame = standard_cartan(&a).unwrap();
        let even = decompose(&a, &frame, WeightFilter::Parity(Parity::Even)).unwrap();
        let mut s = Subspace::zero(a.dim());
        for (w, idx) in &even.spaces {
            if let Some(neg) = even.spaces.get(&w.neg()).filter(|_| !w.is_zero()) {
                for &i in idx {
                    for &j in neg {
                        s.insert(&a.basis_bracket_dense(i, j)).unwrap();
                    }
                }
            }
        }
        for h in frame.elements() {
            assert!(s.contains(h.coeffs()).unwrap(), "{f}");
        }
    }
}

#[test]
fn local_part_generates_cartan_families() {
    for f in cartan() {
        let a = f.build().unwrap();
        let seeds: Vec<_> = (-1..=1).flat_map(|k| a.layer(k)).map(|i| a.basis_element(i)).collect();
        let s = generated_subalgebra(&a, &seeds, ClosureMode::Ungraded).unwrap();
        assert_eq!(s.dim(), a.dim(), "{f}");
    }
}

#[test]
fn layer_weight_sets_are_separated() {
    for f in cartan() {
        let a = f.build().unwrap();
        let dm = weights(&a, WeightFilter::Layer(-1));
        let dp = weights(&a, WeightFilter::Layer(1));
        if matches!(f, Family::H { .. }) {
            assert_ne!(dm, dp, "{f}");
        } else {
            assert!(dm.is_disjoint(&dp), "{f}");
        }
    }
}

#[test]
fn square_zero_degree_one_weight_vectors_exist() {
    for f in cartan() {
        let a = f.build().unwrap();
        let found = a.layer(1).into_iter().any(|k| {
            let x = a.basis_element(k);
            a.bracket(&x, &x).unwrap().is_zero()
        });
        assert!(found, "{f}");
    }
    let checks: [(Family, &str); 4] = [
        (Family::W { n: 3 }, "x23d1"),
        (Family::S { n: 4 }, "D12(x123)"),
        (Family::STilde { two_m: 4 }, "D12(x123)"),
        (Family::H { n: 6 }, "DH(x123)"),
    ];
    for (f, label) in checks {
        let a = f.build().unwrap();
        let x = a.parse_element(label).unwrap();
        assert!(a.bracket(&x, &x).unwrap().is_zero(), "{f} {label}");
    }
}

/// Every weight vector of every summand generates that summand.
fn assert_irreducible(a: &SuperAlgebra, acting: &[usize], s: &Subspace) {
    let frame = standard_cartan(a).unwrap();
    for v in s.basis() {
        let w = frame.weight_of_vector(v);
        if w.is_none() {
            continue;
        }
        let g = generated_submodule(a, acting, std::slice::from_ref(v)).unwrap();
        assert_eq!(g.dim(), s.dim(), "{}", a.name());
    }
}

#[test]
fn degree_one_layer_splits_as_stated() {
    for f in cartan() {
        let a = f.build().unwrap();
        let frame = standard_cartan(&a).unwrap();
        let l0 = a.layer(0);
        for k in [-1, 1] {
            let module = a.layer(k);
            let parts = irreducible_summands(&a, &frame, &l0, &module).unwrap();
            let expected = if k == 1 && matches!(f, Family::W { .. } | Family::H { n: 6 }) { 2 } else { 1 };
            assert_eq!(parts.len(), expected, "{f} layer {k}");
            let total = parts.iter().try_fold(Subspace::zero(a.dim()), |acc, p| acc.sum(p)).unwrap();
            assert_eq!(total.dim(), module.len(), "{f} layer {k}");
            for p in &parts {
                assert_irreducible(&a, &l0, p);
            }
        }
    }
}

#[test]
fn split_summands_have_distinct_nonzero_weights() {
    for f in [Family::W { n: 3 }, Family::W { n: 4 }, Family::H { n: 6 }] {
        let a = f.build().unwrap();
        let frame = standard_cartan(&a).unwrap();
        let parts = irreducible_summands(&a, &frame, &a.layer(0), &a.layer(1)).unwrap();
        let ws: Vec<BTreeSet<WeightFunctional>> = parts
            .iter()
            .map(|p| {
                (0..a.dim())
                    .filter(|&k| p.basis().iter().any(|v| !v[k].is_zero()))
                    .map(|k| frame.weight_of(k).clone())
                    .filter(|w| !w.is_zero())
                    .collect()
            })
            .collect();
        assert!(ws[0].iter().any(|x| ws[1].iter().any(|y| x != y)), "{f}");
    }
}

#[test]
fn one_is_in_the_kernel_of_d_h_only() {
    use superlie::cartan::{d_h, Grassmann};
    for n in [5, 6] {
        assert!(d_h(&Grassmann::one(n)).unwrap().is_zero());
        let top = Grassmann::monomial(n, (1 << n) - 1, Scalar::one());
        assert!(!d_h(&top).unwrap().is_zero());
    }
}
