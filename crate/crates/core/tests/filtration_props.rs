use girdle_core::exact::{Gq, Matrix};
use girdle_core::filtration::*;
use girdle_core::so32::{indices_of_grade, unit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_member(space: &EndoSubspace, rng: &mut ChaCha8Rng) -> Matrix {
    let n = space.carrier.dim();
    let mut a = Matrix::zeros(n, n);
    for b in space.basis_matrices() {
        a = a.add(&b.scale(&Gq::q(rng.gen_range(-3..=3), 1, rng.gen_range(-2..=2), 1)));
    }
    a
}

#[test]
fn filtration_of_endomorphisms_is_decreasing() {
    for c in Carrier::ALL {
        for star in [false, true] {
            for j in [false, true] {
                for k in 0..4 {
                    let a = gl_filtered(c, k, star, j).unwrap();
                    let b = gl_filtered(c, k + 1, star, j).unwrap();
                    assert!(a.space.contains_space(&b.space).unwrap(), "{c:?} {k} {star} {j}");
                }
            }
        }
    }
}

#[test]
fn commutators_add_degrees() {
    for c in Carrier::ALL {
        for k in 0..=2 {
            for l in 0..=2 {
                assert!(commutators_within(c, false, k, l, k + l), "{c:?} k={k} l={l}");
            }
        }
    }
}

fn commutators_within(c: Carrier, star: bool, k: i32, l: i32, target: i32) -> bool {
    let a = gl_filtered(c, k, star, false).unwrap();
    let b = gl_filtered(c, l, star, false).unwrap();
    let t = gl_filtered(c, target, star, false).unwrap();
    a.basis_matrices()
        .iter()
        .all(|x| b.basis_matrices().iter().all(|y| t.contains(&x.commutator(y))))
}

// The semitone step between V₀ and V₁ costs one degree when two positive
// shifts are composed through it.
#[test]
fn semitone_commutators() {
    for c in Carrier::ALL {
        for l in 0..=2 {
            assert!(commutators_within(c, true, 0, l, l));
        }
        for k in 1..=2 {
            for l in k..=2 {
                assert!(commutators_within(c, true, k, l, k + l - 1));
            }
        }
        assert_eq!(commutators_within(c, true, 1, 1, 2), c == Carrier::M);
    }
}

#[test]
fn j_condition_vacuous_from_degree_two() {
    for c in Carrier::ALL {
        for k in 2..=5 {
            assert_eq!(gl_graded(c, k, true).unwrap().space, gl_graded(c, k, false).unwrap().space);
        }
    }
}

#[test]
fn isotropy_adjoint_lands_in_graded_algebra() {
    let cases = [(0, Carrier::M), (1, Carrier::MH0), (2, Carrier::MH01), (2, Carrier::MH)];
    for (k, c) in cases {
        let space = gl_graded(c, k, true).unwrap();
        let hk: Vec<usize> = indices_of_grade(k).into_iter().filter(|&i| k > 0 || i >= 5).collect();
        for i in hk {
            assert!(space.contains(&graded_ad(c, &unit(i), k)), "ad of basis {i} on {c:?}");
        }
    }
}

#[test]
fn frame_freedom_closed_under_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for c in Carrier::ALL {
        let f = frame_freedom(c);
        let n = c.dim();
        for _ in 0..10 {
            let b = random_member(&f, &mut rng);
            let b2 = random_member(&f, &mut rng);
            let id = Matrix::identity(n);
            let prod = id.add(&b).mul(&id.add(&b2)).unwrap().sub(&id);
            assert!(f.contains(&prod));
        }
        assert!(f.contains(&Matrix::zeros(n, n)));
    }
    assert_eq!(frame_freedom(Carrier::M).space, gl_filtered(Carrier::M, 1, false, true).unwrap().space);
}
