use girdle_core::exact::{Gq, Subspace};
use girdle_core::model::*;
use girdle_core::so32::{unit, H_0_1, H_0_2, H_1_1, H_1_2, H_2};

fn q(s: &str) -> Gq {
    s.parse().unwrap()
}

fn gqs(xs: &[&str]) -> Vec<Gq> {
    xs.iter().map(|s| q(s)).collect()
}

#[test]
fn quadric_examples() {
    let t = ProjectivePoint::new(gqs(&["-1/2*i", "3", "4", "5", "-1/2*i"]), Chart::I32).unwrap();
    let v = quadric_eval(&t);
    assert!(v.on_quadric());
    assert_eq!(v.orientation, Some(girdle_core::exact::rat(5, 2)));
    assert_eq!(v.in_orbit(), Some(true));
    let t = ProjectivePoint::new(gqs(&["1", "0", "0", "0", "0"]), Chart::I32).unwrap();
    let v = quadric_eval(&t);
    assert_eq!((&v.bilinear, &v.hermitian), (&Gq::one(), &Gq::one()));
    assert_eq!(v.in_orbit(), Some(false));
    let xo = quadric_eval(&ProjectivePoint::x_o());
    assert!(xo.on_quadric());
    assert_eq!(xo.in_orbit(), None);
    assert!(ProjectivePoint::new(gqs(&["0", "0", "0", "0", "0"]), Chart::Anti).is_err());
}

#[test]
fn chart_change_preserves_quadric_and_orbit_of_x_o() {
    let xo = ProjectivePoint::x_o();
    let moved = xo.to_chart(Chart::I32);
    let v = quadric_eval(&moved);
    assert!(v.on_quadric());
    assert_eq!(v.in_orbit(), Some(true));
    assert_eq!(moved, xo);
    assert_eq!(xo.scaled(&q("2-i")), xo);
}

#[test]
fn embedding_examples() {
    let f = embed_f(&gqs(&["3", "4", "5"]));
    assert_eq!(f.homogeneous, gqs(&["-1/2*i", "3", "4", "5", "-1/2*i"]));
    assert_eq!(quadric_eval(&f).in_orbit(), Some(true));
    let f = embed_f(&gqs(&["1", "0", "1"]));
    assert_eq!(quadric_eval(&f).in_orbit(), Some(true));
    let v = quadric_eval(&embed_f(&gqs(&["0", "0", "0"])));
    assert!(v.on_quadric());
    assert_eq!(v.in_orbit(), Some(false));
    assert_eq!(v.orientation, Some(girdle_core::exact::rat(0, 1)));
}

#[test]
fn embedding_lands_in_orbit_at_samples() {
    for p in sample_points() {
        let v = quadric_eval(&embed_f(&p.z));
        assert!(v.on_quadric(), "{:?}", p.z);
        assert_eq!(v.bilinear, Gq::zero());
        assert_eq!(v.in_orbit(), Some(true), "{:?}", p.z);
    }
}

#[test]
fn embedding_identities_expand_to_zero() {
    let id = embedding_identities();
    assert!(id.bilinear.is_zero(), "{}", id.bilinear);
    assert!(id.hermitian_minus_2rho.is_zero(), "{}", id.hermitian_minus_2rho);
    assert!(embedding_identity_check());
}

#[test]
fn isotropy_at_x_o() {
    let iso = isotropy_algebra(&ProjectivePoint::x_o());
    let want = Subspace::span(10, [H_0_1, H_0_2, H_1_1, H_1_2, H_2].iter().map(|&k| unit(k)).collect());
    assert_eq!(iso.dim(), 5);
    assert_eq!(iso, want);
    let scaled = isotropy_algebra(&ProjectivePoint::x_o().scaled(&q("3+2*i")));
    assert_eq!(scaled, iso);
    let e2 = girdle_core::so32::to_matrix(&unit(H_2));
    assert!(e2.mul_vec(&ProjectivePoint::x_o().homogeneous).iter().all(Gq::is_zero));
}

#[test]
fn model_levi_and_cubic() {
    assert_eq!(model_levi_cubic(), (q("-1/2"), q("-1/2*i")));
    assert_eq!(model_levi_cubic_scaled(&Gq::int(2)), (q("-1"), q("-i")));
}

#[test]
fn cone_field_identities() {
    let (l, r) = cone_fields();
    for f in &l {
        assert!(f.apply(&rho()).is_zero());
    }
    assert_eq!(r.apply(&rho()), rho());
    let p = ConePoint::from_real_imag([1, 0, 1], [(0, 1); 3]).unwrap();
    let span = Subspace::span(6, l.iter().map(|f| f.eval(&p.z)).collect());
    assert_eq!(span.dim(), 2);
}

#[test]
fn cone_point_validation() {
    assert!(ConePoint::parse("3,4,5,0,0,0").is_ok());
    assert!(ConePoint::parse("3,4,-5").is_err());
    assert!(ConePoint::parse("1,1,1").is_err());
    assert!(ConePoint::parse("1,2").is_err());
    assert!(ConePoint::parse("1/2,x,1").is_err());
}

#[test]
fn levi_rank_and_rib() {
    for p in sample_points() {
        assert_eq!(levi_rank_at(&p), LeviRank { real: 2, complex: 1 }, "{:?}", p.z);
        let rib = rib_real_frame();
        for v in real_d_frame_at(&p) {
            for e in &rib {
                assert!(levi_form_at(&p, e, &v).unwrap().is_zero());
                assert!(levi_form_at(&p, &v, e).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn levi_is_symmetric_and_real() {
    for p in sample_points() {
        let frame = real_d_frame_at(&p);
        for v in &frame {
            for w in &frame {
                let a = levi_form_at(&p, v, w).unwrap();
                assert_eq!(a, levi_form_at(&p, w, v).unwrap());
                assert!(a.is_real());
            }
        }
    }
}

fn vanishing_at(p: &ConePoint) -> PolyScalar {
    // (z¹ − p¹) + 2(z̄² − p̄²), zero at p
    let c = |j: usize, s: &Gq| &PolyScalar::var(j) - &PolyScalar::constant(s.clone());
    &c(0, &p.z[0]) + &c(4, &p.z[1].conj()).scale(&Gq::int(2))
}

#[test]
fn levi_is_extension_independent() {
    for p in sample_points() {
        let [z1, z2] = d10_frame_at(&p);
        let g = vanishing_at(&p);
        let (_, r) = cone_fields();
        let bump = &PolyScalar::constant(Gq::one()) + &g;
        let zp = z1.mul_poly(&bump).add(&z2.mul_poly(&g)).add(&r.mul_poly(&rho()));
        let (v, vp) = (z1.real_part(), zp.real_part());
        for w in real_d_frame_at(&p) {
            assert_eq!(levi_form_at(&p, &v, &w).unwrap(), levi_form_at(&p, &vp, &w).unwrap(), "{:?}", p.z);
            assert_eq!(levi_form_at(&p, &w, &v).unwrap(), levi_form_at(&p, &w, &vp).unwrap());
        }
    }
}

#[test]
fn levi_rejects_fields_outside_d() {
    let p = &sample_points()[1];
    let v = real_d_frame_at(p)[0].clone();
    let normal = PolyVectorField::holomorphic([PolyScalar::x(0), PolyScalar::zero(), PolyScalar::zero()]).real_part();
    assert!(levi_form_at(p, &v, &normal).is_err());
    let (l, _) = cone_fields();
    assert_eq!(levi_form_at(p, &v, &l[0]), Err(ModelError::NotReal));
}

fn cubic_inputs(p: &ConePoint) -> (PolyVectorField, PolyVectorField) {
    let (_, r) = cone_fields();
    let [z1, z2] = d10_frame_at(p);
    // a D^{10} direction transverse to the rib
    let rv = Subspace::span(6, vec![r.eval(&p.z)]);
    let z = if rv.contains(&z1.eval(&p.z)).unwrap() { z2 } else { z1 };
    (r, z.conj())
}

#[test]
fn cubic_is_nonzero_and_linear() {
    for p in sample_points() {
        let (e, h) = cubic_inputs(&p);
        let c = cubic_form_at(&p, &e, &h, &h).unwrap();
        assert!(!c.is_zero(), "{:?}", p.z);
        let c2 = cubic_form_at(&p, &e, &h, &h.scale(&Gq::int(2))).unwrap();
        assert_eq!(c2, &c * &Gq::int(2));
        let ci = cubic_form_at(&p, &e, &h, &h.scale(&Gq::i())).unwrap();
        assert_eq!(ci, &c * &Gq::i());
    }
}

#[test]
fn cubic_golden_value() {
    let p = ConePoint::from_real_imag([1, 0, 1], [(0, 1); 3]).unwrap();
    let (e, h) = cubic_inputs(&p);
    let c = cubic_form_at(&p, &e, &h, &h).unwrap();
    let golden = include_str!("../fixtures/cubic_golden.txt").trim();
    assert_eq!(c.to_string(), golden);
}

#[test]
fn cubic_is_extension_independent() {
    for p in sample_points() {
        let (e, h) = cubic_inputs(&p);
        let base = cubic_form_at(&p, &e, &h, &h).unwrap();
        let g = vanishing_at(&p);
        let one = PolyScalar::constant(Gq::one());
        let [z1, _] = d10_frame_at(&p);
        let any = PolyVectorField::holomorphic([PolyScalar::var(3), PolyScalar::x(1), PolyScalar::constant(q("2-i"))]);
        let h2 = h.add(&any.mul_poly(&rho())).add(&z1.conj().mul_poly(&g));
        let e2 = e.mul_poly(&(&one + &g));
        assert_eq!(cubic_form_at(&p, &e, &h2, &h).unwrap(), base, "{:?}", p.z);
        assert_eq!(cubic_form_at(&p, &e, &h, &h2).unwrap(), base);
        assert_eq!(cubic_form_at(&p, &e2, &h, &h).unwrap(), base);
    }
}

#[test]
fn cubic_checks_membership() {
    let p = &sample_points()[1];
    let (e, h) = cubic_inputs(p);
    assert_eq!(cubic_form_at(p, &h, &h, &h), Err(ModelError::NotInRib));
    assert_eq!(cubic_form_at(p, &e, &e, &h), Err(ModelError::NotAntiHolomorphic));
}

#[test]
fn freeman_ranks_are_constant() {
    let pts = sample_points();
    assert!(pts.len() >= 5);
    for p in &pts {
        assert_eq!(freeman_ranks_at(p), (2, 1, 0), "{:?}", p.z);
    }
}

#[test]
fn rib_is_j_invariant_and_involutive() {
    let [a, b] = rib_real_frame();
    for p in sample_points() {
        let rib = rib_span_at(&p);
        assert_eq!(rib.dim(), 2);
        for v in [&a, &b] {
            assert!(rib.contains(&v.eval(&p.z)).unwrap());
            assert!(rib.contains(&v.apply_j().eval(&p.z)).unwrap());
        }
        assert!(rib.contains(&a.bracket(&b).eval(&p.z)).unwrap());
    }
}
