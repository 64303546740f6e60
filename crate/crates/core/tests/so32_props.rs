use girdle_core::exact::{vec_add, vec_conj, vec_is_zero, vec_scale, Gq, Matrix};
use girdle_core::so32::*;
use proptest::prelude::*;

fn elt() -> impl Strategy<Value = Elt> {
    prop::collection::vec((-3i64..=3, 1i64..=2, -2i64..=2), DIM)
        .prop_map(|v| v.into_iter().map(|(a, b, c)| Gq::q(a, b, c, 1)).collect())
}

#[test]
fn jacobi_on_basis_triples() {
    let mut count = 0;
    for i in 0..DIM {
        for j in i + 1..DIM {
            for k in j + 1..DIM {
                let (x, y, z) = (unit(i), unit(j), unit(k));
                let s = vec_add(
                    &vec_add(&bracket(&x, &bracket(&y, &z)), &bracket(&y, &bracket(&z, &x))),
                    &bracket(&z, &bracket(&x, &y)),
                );
                assert!(vec_is_zero(&s), "Jacobi fails on {i},{j},{k}");
                count += 1;
            }
        }
    }
    assert_eq!(count, 120);
}

#[test]
fn bracket_respects_grading() {
    for g in -2..=2 {
        for h in -2..=2 {
            for &i in &indices_of_grade(g) {
                for &j in &indices_of_grade(h) {
                    let b = bracket(&unit(i), &unit(j));
                    for (k, c) in b.iter().enumerate() {
                        assert!(c.is_zero() || grade_of(k) == g + h, "[{i},{j}] leaves grade");
                    }
                }
            }
        }
    }
}

#[test]
fn grading_element_acts_by_degree() {
    let e = unit(H_0_1);
    for k in 0..DIM {
        assert_eq!(bracket(&e, &unit(k)), vec_scale(&unit(k), &Gq::int(grade_of(k) as i64)));
    }
}

#[test]
fn matrix_coordinates_agree_with_generic_solve() {
    let cols: Vec<Vec<Gq>> = basis_matrices().iter().map(|m| m.entries().to_vec()).collect();
    let big = Matrix::from_columns(25, &cols);
    for i in 0..DIM {
        for j in 0..DIM {
            let c = to_matrix(&unit(i)).commutator(&to_matrix(&unit(j)));
            let sol = big.solve(c.entries()).unwrap().expect("in span");
            assert_eq!(sol.particular, bracket(&unit(i), &unit(j)));
        }
    }
}

#[test]
fn shipped_table_has_two_factor_i_cells() {
    let checks = table1_crosscheck();
    assert_eq!(checks.len(), 110);
    let off: Vec<&CellCheck> = checks.iter().filter(|c| c.status != CellStatus::Match).collect();
    assert_eq!(off.len(), 2);
    for c in off {
        assert_eq!(c.status, CellStatus::ScalarFactor(Gq::i()));
        assert_eq!(c.commutator, vec_scale(&complex_unit(E_M2), &Gq::q(0, 1, if c.row == "e^{-1(10)}" { 1 } else { -1 }, 2)));
    }
}

#[test]
fn commutator_table_is_conjugation_symmetric() {
    for r in TABLE1_ROWS.iter().skip(1) {
        for c in TABLE1_COLS {
            let v = bracket(&table_element(r).unwrap(), &table_element(c).unwrap());
            let w = bracket(
                &table_element(&conjugate_label(r)).unwrap(),
                &table_element(&conjugate_label(c)).unwrap(),
            );
            assert_eq!(vec_conj(&v), w, "[{r}, {c}]");
        }
    }
}

#[test]
fn fixture_conjugation_violations_are_the_flagged_cells() {
    let t = parse_table(TABLE1_FIXTURE).unwrap();
    let pos = |l: &str, ls: &[&str]| ls.iter().position(|&x| x == l).unwrap();
    let mut bad = Vec::new();
    for (ri, r) in TABLE1_ROWS.iter().enumerate().skip(1) {
        for (ci, c) in TABLE1_COLS.iter().enumerate() {
            let cr = pos(&conjugate_label(r), &TABLE1_ROWS);
            let cc = pos(&conjugate_label(c), &TABLE1_COLS);
            if vec_conj(&t[ri][ci]) != t[cr][cc] {
                bad.push((r.to_string(), c.to_string()));
            }
        }
    }
    bad.sort();
    assert_eq!(
        bad,
        vec![
            ("e^{-1(01)}".to_string(), "e^{-1(10)}".to_string()),
            ("e^{-1(10)}".to_string(), "e^{-1(01)}".to_string())
        ]
    );
}

#[test]
fn j_fails_outside_domain() {
    assert!(apply_j(&unit(H_2)).is_err());
    assert!(apply_j(&vec_add(&unit(E_M1_1), &unit(E_M2))).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_matches_commutator(x in elt(), y in elt()) {
        prop_assert_eq!(bracket(&x, &y), bracket_by_matrices(&x, &y));
        prop_assert!(is_skew(&to_matrix(&x)));
    }

    #[test]
    fn killing_is_ad_invariant(x in elt(), y in elt(), z in elt()) {
        let l = killing(&bracket(&x, &y), &z);
        let r = killing(&x, &bracket(&y, &z));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn killing_is_trace_form_multiple(x in elt(), y in elt()) {
        let t = to_matrix(&x).mul(&to_matrix(&y)).unwrap().trace();
        prop_assert_eq!(killing(&x, &y), &t * &Gq::int(3));
    }

    #[test]
    fn grade_parts_sum_back(x in elt()) {
        let parts = grade_decompose(&x);
        let mut s = vec![Gq::zero(); DIM];
        for (g, p) in &parts {
            s = vec_add(&s, p);
            let ad = bracket(&unit(H_0_1), p);
            prop_assert_eq!(ad, vec_scale(p, &Gq::int(*g as i64)));
        }
        prop_assert_eq!(s, x);
    }

    #[test]
    fn complex_coordinates_round_trip(x in elt()) {
        prop_assert_eq!(from_complex(&to_complex(&x)), x);
    }
}
