use girdle_core::cochain::*;
use girdle_core::exact::{vec_zero, Gq};
use girdle_core::so32::{indices_of_grade, unit, H_0_1};
use proptest::prelude::*;

fn all_k() -> std::ops::RangeInclusive<i32> {
    -3..=7
}

#[test]
fn coboundary_squares_to_zero() {
    for ell in 0..2 {
        let d2 = coboundary_matrix(ell + 1).unwrap().mul(coboundary_matrix(ell).unwrap()).unwrap();
        assert!(d2.is_zero(), "ell = {ell}");
    }
}

#[test]
fn codifferential_squares_to_zero() {
    for ell in 2..=3 {
        let d2 = codifferential_matrix(ell - 1).unwrap().mul(codifferential_matrix(ell).unwrap()).unwrap();
        assert!(d2.is_zero(), "ell = {ell}");
    }
}

#[test]
fn operators_preserve_degree() {
    for ell in 0..3 {
        for k in all_k() {
            for c in cochain_space(ell, k).unwrap().basis() {
                let d = coboundary(&c).unwrap();
                assert!(Cochain::new(ell + 1, k, d.coeffs).is_ok());
            }
        }
    }
    for ell in 1..=3 {
        for k in all_k() {
            for c in cochain_space(ell, k).unwrap().basis() {
                let d = codifferential(&c).unwrap();
                assert!(Cochain::new(ell - 1, k, d.coeffs).is_ok());
            }
        }
    }
}

#[test]
fn adjoint_type_one_cochains_are_closed() {
    for z in 0..10 {
        let mut coeffs = vec_zero(10);
        coeffs[z] = Gq::one();
        let d = coboundary_matrix(0).unwrap().mul_vec(&coeffs);
        let dd = coboundary_matrix(1).unwrap().mul_vec(&d);
        assert!(dd.iter().all(Gq::is_zero));
    }
}

#[test]
fn equivariance_under_degree_zero() {
    for x in indices_of_grade(0) {
        let x = unit(x);
        for ell in 0..3 {
            let d = coboundary_matrix(ell).unwrap();
            for col in 0..full_len(ell) {
                let mut c = vec_zero(full_len(ell));
                c[col] = Gq::one();
                assert_eq!(d.mul_vec(&act(&x, ell, &c)), act(&x, ell + 1, &d.mul_vec(&c)));
            }
        }
        for ell in 1..=3 {
            let d = codifferential_matrix(ell).unwrap();
            for col in 0..full_len(ell) {
                let mut c = vec_zero(full_len(ell));
                c[col] = Gq::one();
                assert_eq!(d.mul_vec(&act(&x, ell, &c)), act(&x, ell - 1, &d.mul_vec(&c)));
            }
        }
    }
}

#[test]
fn codifferential_kernel_is_invariant() {
    let movers: Vec<usize> = (3..10).collect();
    for ell in 1..=3 {
        let d = codifferential_matrix(ell).unwrap();
        let ker = d.kernel();
        for &x in &movers {
            for c in ker.basis() {
                let moved = act(&unit(x), ell, c);
                assert!(d.mul_vec(&moved).iter().all(Gq::is_zero), "ell={ell} x={x}");
            }
        }
    }
}

#[test]
fn hodge_dimensions_add_up() {
    for ell in 0..=3 {
        for k in all_k() {
            let h = hodge_spaces(ell, k).unwrap();
            let n = h.space.dim();
            assert_eq!(h.exact.dim() + h.harmonic.dim() + h.coexact.dim(), n, "({ell},{k})");
            assert_eq!(h.exact.intersect(&h.ker_dstar).unwrap().dim(), 0);
            assert_eq!(h.ker_d.sum(&h.coexact).unwrap().dim(), n);
            assert_eq!(cohomology_dim(ell, k).unwrap(), h.harmonic.dim());
            if n == 0 {
                assert_eq!(cohomology_dim(ell, k).unwrap(), 0);
            }
        }
    }
}

#[test]
fn exact_input_decomposes_trivially() {
    for k in 1..=3 {
        for b in cochain_space(1, k).unwrap().basis() {
            let c = coboundary(&b).unwrap();
            let t = hodge_decompose(&c).unwrap();
            assert_eq!(t.exact, c);
            assert!(t.harmonic.is_zero() && t.coexact.is_zero());
        }
    }
}

#[test]
fn grading_element_acts_by_degree() {
    // the grading element acts on C^ℓ_k as multiplication by k
    for ell in 0..=3 {
        for k in all_k() {
            let s = cochain_space(ell, k).unwrap();
            for c in s.basis() {
                let moved = act(&unit(H_0_1), ell, &c.coeffs);
                let want: Vec<Gq> = c.coeffs.iter().map(|x| x * &Gq::int(k as i64)).collect();
                assert_eq!(moved, want);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hodge_parts_resum(k in 1i32..=4, seed in prop::collection::vec(-3i64..=3, 20)) {
        let s = cochain_space(2, k).unwrap();
        let local: Vec<Gq> = (0..s.dim()).map(|i| Gq::q(seed[i % 20], 1, seed[(i + 7) % 20], 2)).collect();
        let c = Cochain::new(2, k, s.embed(&local)).unwrap();
        let t = hodge_decompose(&c).unwrap();
        let sum: Vec<Gq> = (0..c.coeffs.len())
            .map(|i| &(&t.exact.coeffs[i] + &t.harmonic.coeffs[i]) + &t.coexact.coeffs[i])
            .collect();
        prop_assert_eq!(&sum, &c.coeffs);
        prop_assert!(codifferential(&t.harmonic).unwrap().is_zero());
        prop_assert!(coboundary(&t.harmonic).unwrap().is_zero());
        let again = hodge_decompose(&t.exact).unwrap();
        prop_assert_eq!(again.exact, t.exact);
    }
}
