//! The prolongation steps of the flat model, the gauge spaces that act on
//! torsion at each step, the pointwise frame conditions on full torsion and
//! the Kostant-type normalization of c-torsion.
//!
//! Endomorphisms are written on the complexified basis and extended by
//! conjugation: an image is prescribed for each real label and each
//! `(10)` label, and the `(01)` label receives the conjugate.

use std::fmt;

use num_traits::Signed;
use thiserror::Error;

use crate::cochain::{
    act, coboundary, coboundary_local, codifferential_local, Cochain, CochainError, CochainSpace, ARGS,
};
use crate::exact::{axpy, rat, vec_conj, vec_scale, vec_sub, vec_zero, Gq, Matrix, Rational, Subspace};
use crate::filtration::{flatten, gl_graded, graded_ad, Carrier, EndoSubspace};
use crate::so32::{
    self, bracket, complex_unit, grade_of, to_complex, unit, Elt, COMPLEX_LABELS, DIM, E_0_1, E_0_2, E_M1_1,
    E_M1_2, E_M2, H_0_1, H_0_2, H_1_1, H_1_2, H_2, PAIRS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProlongError {
    #[error("step {0} out of range")]
    Step(usize),
    #[error("degree {0} out of range 1..=3")]
    Degree(i32),
    #[error("expected a 2-cochain, got degree {0}")]
    NotTwoCochain(usize),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

fn h() -> Gq {
    Gq::q(1, 2, 0, 1)
}

fn ih() -> Gq {
    Gq::q(0, 1, 1, 2)
}

fn cx(k: usize) -> Elt {
    complex_unit(k)
}

fn comb(terms: &[(Gq, usize)]) -> Elt {
    let mut v = vec_zero(DIM);
    for (c, k) in terms {
        axpy(&mut v, c, &cx(*k));
    }
    v
}

fn partner(k: usize) -> Option<usize> {
    PAIRS.iter().find(|p| p.0 == k).map(|p| p.1)
}

/// Coordinate of `x` along the complexified label `k`.
pub fn complex_coord(x: &[Gq], k: usize) -> Gq {
    to_complex(x)[k].clone()
}

/// Real endomorphism of the carrier from images of complexified labels.
pub fn endo_from_images(carrier: Carrier, images: &[(usize, Elt)]) -> Matrix {
    let n = carrier.dim();
    let mut img: Vec<Elt> = vec![vec_zero(DIM); DIM];
    for (k, v) in images {
        img[*k] = v.clone();
        if let Some(p) = partner(*k) {
            img[p] = vec_conj(v);
        }
    }
    let mut a = Matrix::zeros(n, n);
    for s in 0..n {
        let mut col = vec_zero(DIM);
        for (k, c) in to_complex(&unit(s)).iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut col, c, &img[k]);
            }
        }
        for (t, v) in col.into_iter().enumerate() {
            assert!(v.is_real(), "image is not conjugation-symmetric");
            if t < n {
                a.set(t, s, v);
            } else {
                assert!(v.is_zero(), "image leaves the carrier");
            }
        }
    }
    a
}

/// The restriction of a carrier endomorphism to 𝔪₋, as a 1-cochain.
pub fn endo_to_cochain(a: &Matrix, k: i32) -> Cochain {
    let mut coeffs = vec_zero(3 * DIM);
    for (ai, &s) in ARGS.iter().enumerate() {
        for t in 0..a.rows() {
            coeffs[ai * DIM + t] = a.get(t, s).clone();
        }
    }
    Cochain::new(1, k, coeffs).expect("graded endomorphism restricts to a homogeneous cochain")
}

/// Kernel over real unknowns of a complex linear system given by the images
/// of the unit unknowns: each complex row splits into real and imaginary rows.
pub fn real_kernel(unknowns: usize, columns: &[Vec<Gq>]) -> Subspace {
    let m = columns.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(2 * m);
    for r in 0..m {
        rows.push(columns.iter().map(|c| Gq::real(c[r].re.clone())).collect());
        rows.push(columns.iter().map(|c| Gq::real(c[r].im.clone())).collect());
    }
    if rows.is_empty() {
        return Subspace::full(unknowns);
    }
    Matrix::from_rows_with_cols(unknowns, rows).kernel()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Param {
    pub name: &'static str,
    pub real: bool,
}

const fn cplx(name: &'static str) -> Param {
    Param { name, real: false }
}

/// A real-linear family of endomorphisms indexed by complex (or real)
/// parameters.
#[derive(Clone, Copy)]
pub struct Family {
    pub carrier: Carrier,
    pub degree: i32,
    pub params: &'static [Param],
    images: fn(&[Gq]) -> Vec<(usize, Elt)>,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.params.iter().map(|p| p.name).collect();
        write!(f, "Family({}, degree {}, {:?})", self.carrier.name(), self.degree, names)
    }
}

impl Family {
    pub fn real_dim(&self) -> usize {
        self.params.iter().map(|p| if p.real { 1 } else { 2 }).sum()
    }

    /// Complex parameter values from real coordinates.
    pub fn complex_params(&self, v: &[Gq]) -> Vec<Gq> {
        let mut out = Vec::new();
        let mut i = 0;
        for p in self.params {
            if p.real {
                out.push(v[i].clone());
                i += 1;
            } else {
                out.push(&v[i] + &(&Gq::i() * &v[i + 1]));
                i += 2;
            }
        }
        out
    }

    pub fn real_coords(&self, c: &[Gq]) -> Vec<Gq> {
        let mut out = Vec::new();
        for (p, z) in self.params.iter().zip(c) {
            out.push(Gq::real(z.re.clone()));
            if !p.real {
                out.push(Gq::real(z.im.clone()));
            }
        }
        out
    }

    pub fn endo(&self, complex: &[Gq]) -> Matrix {
        endo_from_images(self.carrier, &(self.images)(complex))
    }

    pub fn endo_real(&self, v: &[Gq]) -> Matrix {
        self.endo(&self.complex_params(v))
    }

    pub fn unit_endos(&self) -> Vec<Matrix> {
        (0..self.real_dim())
            .map(|i| {
                let mut v = vec_zero(self.real_dim());
                v[i] = Gq::one();
                self.endo_real(&v)
            })
            .collect()
    }

    /// The family as a space of flattened endomorphisms.
    pub fn space(&self) -> EndoSubspace {
        let n = self.carrier.dim();
        let space = Subspace::span(n * n, self.unit_endos().iter().map(flatten).collect());
        EndoSubspace { carrier: self.carrier, degree: self.degree, star: true, j_compatible: true, graded: true, space }
    }
}

fn step0_images(p: &[Gq]) -> Vec<(usize, Elt)> {
    let (tau, lambda, mu) = (&p[0], &p[1], &p[2]);
    vec![
        (E_M2, vec_scale(&cx(E_M2), tau)),
        (E_M1_1, vec_scale(&cx(E_M1_1), lambda)),
        (E_0_1, vec_scale(&cx(E_0_1), mu)),
    ]
}

fn gl1_images(p: &[Gq]) -> Vec<(usize, Elt)> {
    let (lambda, mu, nu, nu_p) = (&p[0], &p[1], &p[2], &p[3]);
    vec![
        (E_M2, comb(&[(lambda.clone(), E_M1_1), (lambda.conj(), E_M1_2)])),
        (E_M1_1, comb(&[(mu.clone(), E_0_1), (nu.clone(), H_0_1), (nu_p.clone(), H_0_2)])),
    ]
}

fn l1_images(p: &[Gq]) -> Vec<(usize, Elt)> {
    let nu_p = &p[2] - &p[1].conj();
    gl1_images(&[p[0].clone(), p[1].clone(), p[2].clone(), nu_p])
}

fn step2_images(p: &[Gq]) -> Vec<(usize, Elt)> {
    let (lambda, mu, nu, nu_p) = (&p[0], &p[1], &p[2], &p[3]);
    vec![
        (E_M2, comb(&[(lambda.clone(), E_0_1), (lambda.conj(), E_0_2), (mu.clone(), H_0_1), (mu.conj(), H_0_2)])),
        (E_M1_1, comb(&[(nu.clone(), H_1_1), (nu_p.clone(), H_1_2)])),
    ]
}

fn step3_images(p: &[Gq]) -> Vec<(usize, Elt)> {
    let (lambda, mu) = (&p[0], &p[1]);
    vec![
        (E_M2, comb(&[(lambda.clone(), H_1_1), (lambda.conj(), H_1_2)])),
        (E_M1_1, vec_scale(&cx(H_2), mu)),
    ]
}

/// 𝔤𝔩₀^gr(𝔪, J): `e⁻² ↦ τe⁻²`, `e^{-1(10)} ↦ λe^{-1(10)}`, `e^{0(10)} ↦ μe^{0(10)}`.
pub const STEP0_FAMILY: Family = Family {
    carrier: Carrier::M,
    degree: 0,
    params: &[Param { name: "tau", real: true }, cplx("lambda"), cplx("mu")],
    images: step0_images,
};

/// 𝔤𝔩₁^gr(𝔪+𝔥⁰, J) with `B(e^{-1(10)}) = μe^{0(10)} + νE^{0(10)} + ν′E^{0(01)}`.
pub const GL1_FAMILY: Family = Family {
    carrier: Carrier::MH0,
    degree: 1,
    params: &[cplx("lambda"), cplx("mu"), cplx("nu"), cplx("nu'")],
    images: gl1_images,
};

/// The gauge space 𝔩¹: the members of [`GL1_FAMILY`] with `ν′ = ν − μ̄`.
pub const L1_FAMILY: Family = Family {
    carrier: Carrier::MH0,
    degree: 1,
    params: &[cplx("lambda"), cplx("mu"), cplx("nu")],
    images: l1_images,
};

pub const STEP2_FAMILY: Family = Family {
    carrier: Carrier::MH01,
    degree: 2,
    params: &[cplx("lambda"), cplx("mu"), cplx("nu"), cplx("nu'")],
    images: step2_images,
};

pub const STEP3_FAMILY: Family = Family {
    carrier: Carrier::MH,
    degree: 3,
    params: &[cplx("lambda"), cplx("mu")],
    images: step3_images,
};

pub fn family(step: usize) -> Result<Family, ProlongError> {
    match step {
        0 => Ok(STEP0_FAMILY),
        1 => Ok(L1_FAMILY),
        2 => Ok(STEP2_FAMILY),
        3 => Ok(STEP3_FAMILY),
        s => Err(ProlongError::Step(s)),
    }
}

pub fn l1_subspace() -> EndoSubspace {
    L1_FAMILY.space()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub text: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ProlongationStep {
    pub step: usize,
    pub family: Family,
    /// Solutions in the real coordinates of the family parameters.
    pub solution: Subspace,
    pub algebra: EndoSubspace,
    /// The explicit generators, in the same order as `witnesses`.
    pub generators: Vec<Matrix>,
    pub witnesses: Vec<(&'static str, Elt)>,
    pub relations: Vec<Relation>,
}

impl ProlongationStep {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn solution_params(&self) -> Vec<Vec<Gq>> {
        self.solution.basis().iter().map(|v| self.family.complex_params(v)).collect()
    }

    /// Each generator lies in the algebra and together they span it.
    pub fn generators_span(&self) -> bool {
        let n = self.family.carrier.dim();
        let span = Subspace::span(n * n, self.generators.iter().map(flatten).collect());
        span == self.algebra.space && span.dim() == self.generators.len()
    }

    /// `ad X` on the carrier, graded by the step, for each witness `X ∈ 𝔥ᵏ`.
    pub fn witness_endos(&self) -> Vec<Matrix> {
        let c = self.family.carrier;
        self.witnesses
            .iter()
            .map(|(_, x)| {
                let a = graded_ad(c, x, self.step as i32);
                if self.step == 0 {
                    a
                } else {
                    restrict_to_m_minus(&a)
                }
            })
            .collect()
    }

    pub fn generators_match_witnesses(&self) -> bool {
        self.generators.iter().zip(self.witness_endos()).all(|(g, w)| *g == w)
    }
}

fn restrict_to_m_minus(a: &Matrix) -> Matrix {
    let mut b = Matrix::zeros(a.rows(), a.cols());
    for s in ARGS {
        for t in 0..a.rows() {
            b.set(t, s, a.get(t, s).clone());
        }
    }
    b
}

fn check_all(params: &[Vec<Gq>], f: impl Fn(&[Gq]) -> bool) -> bool {
    params.iter().all(|p| f(p))
}

fn solve_family(fam: &Family, condition: impl Fn(&Matrix) -> Vec<Gq>) -> (Subspace, EndoSubspace) {
    let cols: Vec<Vec<Gq>> = fam.unit_endos().iter().map(condition).collect();
    let solution = real_kernel(fam.real_dim(), &cols);
    let n = fam.carrier.dim();
    let space = Subspace::span(n * n, solution.basis().iter().map(|v| flatten(&fam.endo_real(v))).collect());
    let algebra = EndoSubspace { space, ..fam.space() };
    (solution, algebra)
}

fn pad(v: &[Gq]) -> Elt {
    let mut out = vec_zero(DIM);
    out[..v.len()].clone_from_slice(v);
    out
}

fn apply(b: &Matrix, x: &[Gq]) -> Elt {
    pad(&b.mul_vec(&x[..b.cols()]))
}

/// The two complex conditions on `B ∈ 𝔤𝔩₀^gr(𝔪, J)`: compatibility with
/// `[e^{-1(10)}, e^{-1(01)}] = (i/2)e⁻²` and with
/// `[[e^{0(10)}, e^{-1(01)}], e^{-1(01)}] = −(i/2)e⁻²`.
pub fn step0_equations(b: &Matrix) -> Vec<Gq> {
    let (e1, f1, e0) = (cx(E_M1_1), cx(E_M1_2), cx(E_0_1));
    let be2 = apply(b, &unit(E_M2));
    let (be1, bf1, be0) = (apply(b, &e1), apply(b, &f1), apply(b, &e0));
    let first = {
        let mut v = so32::bracket(&be1, &f1);
        axpy(&mut v, &Gq::one(), &bracket(&e1, &bf1));
        axpy(&mut v, &-ih(), &be2);
        v
    };
    let second = {
        let mut v = bracket(&bracket(&be0, &f1), &f1);
        axpy(&mut v, &Gq::one(), &bracket(&bracket(&e0, &bf1), &f1));
        axpy(&mut v, &Gq::one(), &bracket(&bracket(&e0, &f1), &bf1));
        axpy(&mut v, &ih(), &be2);
        v
    };
    let mut out = first.clone();
    out.extend(second.iter().cloned());
    out.extend(vec_conj(&first));
    out.extend(vec_conj(&second));
    out
}

/// Derivation conditions over the real basis of 𝔪: `B` respects the brackets
/// 𝔪⁻¹ × 𝔪⁻¹ → 𝔪⁻² and 𝔪⁰ × 𝔪⁻¹ × 𝔪⁻¹ → 𝔪⁻².
pub fn derivation_defects(b: &Matrix) -> Vec<Gq> {
    let mut out = Vec::new();
    let m_minus = [E_M2, E_M1_1, E_M1_2];
    for &x in &m_minus {
        for &y in &m_minus {
            let (ux, uy) = (unit(x), unit(y));
            let mut v = apply(b, &bracket(&ux, &uy));
            axpy(&mut v, &Gq::int(-1), &bracket(&apply(b, &ux), &uy));
            axpy(&mut v, &Gq::int(-1), &bracket(&ux, &apply(b, &uy)));
            out.extend(v);
        }
    }
    for x in [E_0_1, E_0_2] {
        for y in [E_M1_1, E_M1_2] {
            for z in [E_M1_1, E_M1_2] {
                let (ux, uy, uz) = (unit(x), unit(y), unit(z));
                let mut v = apply(b, &bracket(&bracket(&ux, &uy), &uz));
                for (p, q, r) in [
                    (apply(b, &ux), uy.clone(), uz.clone()),
                    (ux.clone(), apply(b, &uy), uz.clone()),
                    (ux.clone(), uy.clone(), apply(b, &uz)),
                ] {
                    axpy(&mut v, &Gq::int(-1), &bracket(&bracket(&p, &q), &r));
                }
                out.extend(v);
            }
        }
    }
    out
}

pub fn prolong_step0() -> ProlongationStep {
    let fam = STEP0_FAMILY;
    let (solution, algebra) = solve_family(&fam, step0_equations);
    let params: Vec<Vec<Gq>> = solution.basis().iter().map(|v| fam.complex_params(v)).collect();
    let relations = vec![
        Relation {
            text: "tau = 2 Re(lambda)",
            holds: check_all(&params, |p| p[0] == Gq::real(&p[1].re * &rat(2, 1))),
        },
        Relation {
            text: "mu = 2i Im(lambda)",
            holds: check_all(&params, |p| p[2] == Gq::new(rat(0, 1), &p[1].im * &rat(2, 1))),
        },
    ];
    let b1 = fam.endo(&[Gq::int(-2), Gq::int(-1), Gq::zero()]);
    let b2 = fam.endo(&[Gq::zero(), -Gq::i(), Gq::q(0, 1, -2, 1)]);
    ProlongationStep {
        step: 0,
        family: fam,
        solution,
        algebra,
        generators: vec![b1, b2],
        witnesses: vec![("E_1^0", unit(H_0_1)), ("E_2^0", unit(H_0_2))],
        relations,
    }
}

/// Solutions of `∂B = 0` inside a family acting on 𝔪₋.
fn closed_in(fam: &Family) -> (Subspace, EndoSubspace) {
    solve_family(fam, |b| coboundary(&endo_to_cochain(b, fam.degree)).unwrap().coeffs)
}

pub fn prolong_step1() -> ProlongationStep {
    let fam = L1_FAMILY;
    let (solution, algebra) = closed_in(&fam);
    let params: Vec<Vec<Gq>> = solution.basis().iter().map(|v| fam.complex_params(v)).collect();
    let relations = vec![
        Relation { text: "nu = (i/2) conj(lambda)", holds: check_all(&params, |p| p[2] == &ih() * &p[0].conj()) },
        Relation { text: "mu = -(i/2) lambda", holds: check_all(&params, |p| p[1] == -(&ih() * &p[0])) },
        Relation { text: "nu' = 0", holds: check_all(&params, |p| (&p[2] - &p[1].conj()).is_zero()) },
    ];
    let b1 = fam.endo(&[Gq::one(), -ih(), ih()]);
    let b2 = fam.endo(&[Gq::i(), h(), h()]);
    ProlongationStep {
        step: 1,
        family: fam,
        solution,
        algebra,
        generators: vec![b1, b2],
        witnesses: vec![("-E_2^1", vec_scale(&unit(H_1_2), &Gq::int(-1))), ("E_1^1", unit(H_1_1))],
        relations,
    }
}

pub fn prolong_step2() -> ProlongationStep {
    let fam = STEP2_FAMILY;
    let (solution, algebra) = closed_in(&fam);
    let params: Vec<Vec<Gq>> = solution.basis().iter().map(|v| fam.complex_params(v)).collect();
    let relations = vec![
        Relation { text: "lambda = 0", holds: check_all(&params, |p| p[0].is_zero()) },
        Relation { text: "mu real", holds: check_all(&params, |p| p[1].is_real()) },
        Relation { text: "nu = i mu", holds: check_all(&params, |p| p[2] == &Gq::i() * &p[1]) },
        Relation { text: "nu' = 0", holds: check_all(&params, |p| p[3].is_zero()) },
    ];
    let b = fam.endo(&[Gq::zero(), Gq::one(), Gq::i(), Gq::zero()]);
    ProlongationStep {
        step: 2,
        family: fam,
        solution,
        algebra,
        generators: vec![b],
        witnesses: vec![("E^2", unit(H_2))],
        relations,
    }
}

pub fn prolong_step3() -> ProlongationStep {
    let fam = STEP3_FAMILY;
    let (solution, algebra) = closed_in(&fam);
    let params: Vec<Vec<Gq>> = solution.basis().iter().map(|v| fam.complex_params(v)).collect();
    let relations = vec![
        Relation { text: "lambda = 0", holds: check_all(&params, |p| p[0].is_zero()) },
        Relation { text: "mu = 0", holds: check_all(&params, |p| p[1].is_zero()) },
    ];
    ProlongationStep { step: 3, family: fam, solution, algebra, generators: vec![], witnesses: vec![], relations }
}

pub fn prolong_step(step: usize) -> Result<ProlongationStep, ProlongError> {
    match step {
        0 => Ok(prolong_step0()),
        1 => Ok(prolong_step1()),
        2 => Ok(prolong_step2()),
        3 => Ok(prolong_step3()),
        s => Err(ProlongError::Step(s)),
    }
}

/// The two component equations of `∂B = 0` at degree 3, as functions of
/// `(λ, μ)`: the 𝔪^{0(10)} and 𝔥^{0(10)} coordinates of `∂B(e⁻², e^{-1(10)})`.
pub fn step3_component_equations(lambda: &Gq, mu: &Gq) -> (Gq, Gq) {
    let b = STEP3_FAMILY.endo(&[lambda.clone(), mu.clone()]);
    let db = coboundary(&endo_to_cochain(&b, 3)).unwrap();
    let v = db.eval(&[vec![Gq::one(), Gq::zero(), Gq::zero()], {
        let e = cx(E_M1_1);
        ARGS.iter().map(|&a| e[a].clone()).collect()
    }]);
    (complex_coord(&v, E_0_1), complex_coord(&v, H_0_1))
}

/// Dimension of the closed maps in 𝔤𝔩₄^gr(𝔪+𝔥) and of 𝔤𝔩₅^gr(𝔪+𝔥).
pub fn top_degrees() -> (usize, usize) {
    let gl4 = gl_graded(Carrier::MH, 4, true).unwrap();
    let cols: Vec<Vec<Gq>> =
        gl4.basis_matrices().iter().map(|b| coboundary(&endo_to_cochain(b, 4)).unwrap().coeffs).collect();
    let closed = real_kernel(gl4.dim(), &cols).dim();
    (closed, gl_graded(Carrier::MH, 5, true).unwrap().dim())
}

/// Commutator checks between step generators against the brackets of their
/// witnesses, where both sides are defined on the carriers.
pub fn bracket_compatibility() -> Vec<(String, bool)> {
    let steps = [prolong_step0(), prolong_step1(), prolong_step2()];
    let mut out = Vec::new();
    let s0 = &steps[0];
    for (i, (na, xa)) in s0.witnesses.iter().enumerate() {
        for (j, (nb, xb)) in s0.witnesses.iter().enumerate() {
            let lhs = s0.generators[i].commutator(&s0.generators[j]);
            let rhs = graded_ad(Carrier::M, &bracket(xa, xb), 0);
            out.push((format!("[{na}, {nb}]"), lhs == rhs));
        }
    }
    for st in &steps[1..] {
        for (na, xa) in &s0.witnesses {
            for ((nb, xb), g) in st.witnesses.iter().zip(&st.generators) {
                let c = endo_to_cochain(g, st.step as i32);
                let moved = act(xa, 1, &c.coeffs);
                let target = endo_to_cochain(&graded_ad(st.family.carrier, &bracket(xa, xb), st.step as i32), st.step as i32);
                out.push((format!("[{na}, {nb}]"), moved == target.coeffs));
            }
        }
    }
    let s1 = &steps[1];
    let e2 = unit(E_M2);
    for (i, (na, xa)) in s1.witnesses.iter().enumerate() {
        for (j, (nb, xb)) in s1.witnesses.iter().enumerate() {
            let (a, b) = (&s1.generators[i], &s1.generators[j]);
            let lhs = vec_sub(&apply(a, &apply(b, &e2)), &apply(b, &apply(a, &e2)));
            let rhs = bracket(&bracket(xa, xb), &e2);
            out.push((format!("[{na}, {nb}] on e^-2"), lhs == rhs));
        }
    }
    out
}

/// Local coordinates (in C¹ₖ) of the gauge space acting at step `k`.
pub fn gauge_space(k: i32) -> Result<Subspace, ProlongError> {
    let fam = match k {
        1 => L1_FAMILY,
        2 => STEP2_FAMILY,
        3 => STEP3_FAMILY,
        _ => return Err(ProlongError::Degree(k)),
    };
    let space = CochainSpace::new(1, k)?;
    Ok(Subspace::span(
        space.dim(),
        fam.unit_endos().iter().map(|b| endo_to_cochain(b, k).local()).collect(),
    ))
}

/// `∂` of the gauge space, in local coordinates of C²ₖ.
pub fn gauge_image(k: i32) -> Result<Subspace, ProlongError> {
    let g = gauge_space(k)?;
    Ok(g.map(&coboundary_local(1, k)?))
}

/// The monomial basis of the full cochain layout, declared orthonormal and
/// restricted to `∂C¹₁`.
#[derive(Clone, Debug)]
pub struct InnerProduct {
    pub basis: Vec<Vec<Gq>>,
    pub gram: Matrix,
}

fn dot(u: &[Gq], v: &[Gq]) -> Gq {
    let mut s = Gq::zero();
    for (a, b) in u.iter().zip(v) {
        s += &(a * b);
    }
    s
}

impl InnerProduct {
    pub fn eval(&self, u: &[Gq], v: &[Gq]) -> Gq {
        dot(u, v)
    }

    /// Pivots of symmetric elimination; all positive iff positive definite.
    pub fn pivots(&self) -> Vec<Rational> {
        let mut g = self.gram.clone();
        let n = g.rows();
        let mut out = Vec::new();
        for p in 0..n {
            let piv = g.get(p, p).clone();
            out.push(piv.re.clone());
            if piv.is_zero() {
                break;
            }
            for r in p + 1..n {
                let f = g.get(r, p) / &piv;
                for c in p..n {
                    let v = g.get(r, c) - &(&f * g.get(p, c));
                    g.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn is_positive_definite(&self) -> bool {
        let p = self.pivots();
        p.len() == self.basis.len() && p.iter().all(|x| x.is_positive())
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }

    /// Matrix of the action of `x ∈ 𝔤⁰` on the basis.
    pub fn action_matrix(&self, x: &[Gq]) -> Matrix {
        let space = CochainSpace::new(2, 1).unwrap();
        let cols: Vec<Vec<Gq>> = self
            .basis
            .iter()
            .map(|b| {
                let moved = space.restrict(&act(x, 2, &space.embed(b)));
                coords_in(&self.basis, &moved).expect("the action preserves the space")
            })
            .collect();
        Matrix::from_columns(self.basis.len(), &cols)
    }

    /// `Aᵀ G + G A = 0` for the action of `x`.
    pub fn is_skew_for(&self, x: &[Gq]) -> bool {
        let a = self.action_matrix(x);
        a.transpose().mul(&self.gram).unwrap().add(&self.gram.mul(&a).unwrap()).is_zero()
    }
}

fn coords_in(basis: &[Vec<Gq>], v: &[Gq]) -> Option<Vec<Gq>> {
    let n = v.len();
    Matrix::from_columns(n, basis).solve(v).unwrap().map(|s| s.particular)
}

pub fn invariant_inner_product() -> InnerProduct {
    let basis = coboundary_local(1, 1).unwrap().image().basis().to_vec();
    let gram = Matrix::from_rows(basis.iter().map(|u| basis.iter().map(|v| dot(u, v)).collect()).collect());
    InnerProduct { basis, gram }
}

/// The complement of the gauge image used to normalize c-torsion of degree `k`.
pub fn normalization_space(k: i32) -> Result<Subspace, ProlongError> {
    if !(1..=3).contains(&k) {
        return Err(ProlongError::Degree(k));
    }
    let ker_dstar = codifferential_local(2, k)?.kernel();
    if k > 1 {
        return Ok(ker_dstar);
    }
    let exact = coboundary_local(1, 1)?.image();
    let orth = exact.intersect(&gauge_image(1)?.annihilator()).unwrap();
    Ok(orth.sum(&ker_dstar).unwrap())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub gauge: Cochain,
    pub residual: Cochain,
}

/// Splits `c = ∂B + c′` with `B` in the gauge space and `c′` in the
/// normalization space; `B` has no component along closed gauge directions
/// that the solver can drop.
pub fn normalize_ctorsion(c: &Cochain) -> Result<Normalized, ProlongError> {
    if c.ell != 2 {
        return Err(ProlongError::NotTwoCochain(c.ell));
    }
    let k = c.k;
    let gauge = gauge_space(k)?;
    let normal = normalization_space(k)?;
    let d = coboundary_local(1, k)?;
    let images: Vec<Vec<Gq>> = gauge.basis().iter().map(|b| d.mul_vec(b)).collect();
    let space2 = CochainSpace::new(2, k)?;
    let mut cols = images.clone();
    cols.extend(normal.basis().iter().cloned());
    let local = space2.restrict(&c.coeffs);
    let sol = Matrix::from_columns(space2.dim(), &cols)
        .solve(&local)
        .unwrap()
        .expect("gauge image and normalization space span C²");
    let ng = gauge.dim();
    let mut b = vec_zero(CochainSpace::new(1, k)?.dim());
    for (coef, v) in sol.particular[..ng].iter().zip(gauge.basis()) {
        axpy(&mut b, coef, v);
    }
    let mut r = vec_zero(space2.dim());
    for (coef, v) in sol.particular[ng..].iter().zip(normal.basis()) {
        axpy(&mut r, coef, v);
    }
    let space1 = CochainSpace::new(1, k)?;
    Ok(Normalized {
        gauge: Cochain::new(1, k, space1.embed(&b))?,
        residual: Cochain::new(2, k, space2.embed(&r))?,
    })
}

/// Ordered pairs `(i, j)`, `i < j`, of basis indices of 𝔪.
pub fn m_pairs() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            out.push((i, j));
        }
    }
    out
}

fn pair_index(i: usize, j: usize) -> usize {
    m_pairs().iter().position(|&p| p == (i, j)).unwrap()
}

/// An alternating bilinear map Λ²𝔪 → 𝔤 stored on the pairs of [`m_pairs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullTorsion {
    pub coeffs: Vec<Gq>,
}

impl FullTorsion {
    pub fn zero() -> Self {
        FullTorsion { coeffs: vec_zero(10 * DIM) }
    }

    /// The flat model: `τ(X, Y) = [X, Y]`.
    pub fn flat() -> Self {
        let mut t = Self::zero();
        for (i, j) in m_pairs() {
            t.set(i, j, &bracket(&unit(i), &unit(j)));
        }
        t
    }

    pub fn value(&self, i: usize, j: usize) -> Elt {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => vec_zero(DIM),
            std::cmp::Ordering::Less => {
                let p = pair_index(i, j);
                self.coeffs[p * DIM..(p + 1) * DIM].to_vec()
            }
            std::cmp::Ordering::Greater => vec_scale(&self.value(j, i), &Gq::int(-1)),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: &[Gq]) {
        assert!(i < j);
        let p = pair_index(i, j);
        self.coeffs[p * DIM..(p + 1) * DIM].clone_from_slice(v);
    }

    /// Bilinear extension to (possibly complex) arguments over 𝓑.
    pub fn eval(&self, x: &[Gq], y: &[Gq]) -> Elt {
        let mut out = vec_zero(DIM);
        for i in 0..5 {
            for j in 0..5 {
                let w = &x[i] * &y[j];
                if !w.is_zero() && i != j {
                    axpy(&mut out, &w, &self.value(i, j));
                }
            }
        }
        out
    }

    /// Adds `v` to `τ(x, y)` for complex arguments, keeping the map real:
    /// the conjugate change is added at the conjugate arguments.
    pub fn perturb(&mut self, x: &[Gq], y: &[Gq], v: &[Gq]) {
        // solve for the real alternating map whose complex extension adds v at (x, y)
        // and v̄ at (x̄, ȳ): use coordinates over the complexified labels
        let (cx_, cy_) = (to_complex(x), to_complex(y));
        let (kx, ky) = (single_label(&cx_), single_label(&cy_));
        let mut delta = vec![vec![vec_zero(DIM); DIM]; DIM];
        delta[kx][ky] = v.to_vec();
        delta[ky][kx] = vec_scale(v, &Gq::int(-1));
        let (ckx, cky) = (conj_label(kx), conj_label(ky));
        if (ckx, cky) != (kx, ky) {
            delta[ckx][cky] = vec_conj(v);
            delta[cky][ckx] = vec_scale(&vec_conj(v), &Gq::int(-1));
        }
        for (i, j) in m_pairs() {
            let (ci, cj) = (to_complex(&unit(i)), to_complex(&unit(j)));
            let mut add = vec_zero(DIM);
            for a in 0..5 {
                for b in 0..5 {
                    let w = &ci[a] * &cj[b];
                    if !w.is_zero() {
                        axpy(&mut add, &w, &delta[a][b]);
                    }
                }
            }
            let cur = self.value(i, j);
            let new: Elt = cur.iter().zip(&add).map(|(p, q)| p + q).collect();
            assert!(new.iter().all(Gq::is_real), "perturbation is not conjugation-symmetric");
            self.set(i, j, &new);
        }
    }

    /// Graded component τᵏ: keeps `τ(Bᵢ, Bⱼ)` at grade `gᵢ + gⱼ + k`.
    pub fn graded(&self, k: i32) -> FullTorsion {
        let mut t = FullTorsion::zero();
        for (i, j) in m_pairs() {
            let mut v = self.value(i, j);
            for (r, c) in v.iter_mut().enumerate() {
                if grade_of(r) != grade_of(i) + grade_of(j) + k {
                    *c = Gq::zero();
                }
            }
            t.set(i, j, &v);
        }
        t
    }

    /// The degree-`k` c-torsion: restriction of τᵏ to Λ²𝔪₋.
    pub fn ctorsion(&self, k: i32) -> Cochain {
        let g = self.graded(k);
        let mut coeffs = vec_zero(3 * DIM);
        for (mi, (a, b)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            coeffs[mi * DIM..(mi + 1) * DIM].clone_from_slice(&g.value(ARGS[a], ARGS[b]));
        }
        Cochain::new(2, k, coeffs).expect("graded component is homogeneous")
    }
}

fn single_label(c: &[Gq]) -> usize {
    let nz: Vec<usize> = (0..DIM).filter(|&k| !c[k].is_zero()).collect();
    assert!(nz.len() == 1 && c[nz[0]].is_one(), "argument must be a complexified basis vector");
    nz[0]
}

fn conj_label(k: usize) -> usize {
    for (a, b) in PAIRS {
        if k == a {
            return b;
        }
        if k == b {
            return a;
        }
    }
    k
}

/// A pointwise frame condition: the coordinate along `component` of
/// `τ(x, y)` for complexified labels `x`, `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameFunctional {
    pub name: String,
    pub x: usize,
    pub y: usize,
    pub component: usize,
}

impl FrameFunctional {
    fn new(name: &str, x: usize, y: usize, component: usize) -> Self {
        FrameFunctional { name: name.into(), x, y, component }
    }

    pub fn degree(&self) -> i32 {
        grade_of(self.component) - grade_of(self.x) - grade_of(self.y)
    }

    pub fn eval(&self, t: &FullTorsion) -> Gq {
        complex_coord(&t.eval(&cx(self.x), &cx(self.y)), self.component)
    }

    pub fn conjugate(&self) -> Self {
        FrameFunctional {
            name: format!("conj {}", self.name),
            x: conj_label(self.x),
            y: conj_label(self.y),
            component: conj_label(self.component),
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "{}: ({}, {}) -> {}",
            self.name, COMPLEX_LABELS[self.x], COMPLEX_LABELS[self.y], COMPLEX_LABELS[self.component]
        )
    }
}

fn with_conjugates(fs: Vec<FrameFunctional>) -> Vec<FrameFunctional> {
    let mut out = Vec::new();
    for f in fs {
        let c = f.conjugate();
        out.push(f);
        out.push(c);
    }
    out
}

/// Frame conditions of step 1 (α and β), 2 (γ) and 3 (ε), with conjugates.
pub fn frame_conditions(step: usize) -> Result<Vec<FrameFunctional>, ProlongError> {
    let fs = match step {
        1 => vec![
            FrameFunctional::new("alpha1", E_M1_1, E_0_1, E_M1_1),
            FrameFunctional::new("alpha2", E_M1_2, E_0_1, E_M1_2),
            FrameFunctional::new("beta", E_M1_1, E_0_1, E_0_2),
        ],
        2 => vec![
            FrameFunctional::new("gamma1", E_M1_1, E_0_1, E_0_1),
            FrameFunctional::new("gamma2", E_M1_2, E_0_1, E_0_2),
        ],
        3 => vec![
            FrameFunctional::new("epsilon1", E_M2, E_0_1, H_0_1),
            FrameFunctional::new("epsilon2", E_M2, E_0_1, H_0_2),
        ],
        s => return Err(ProlongError::Step(s)),
    };
    Ok(with_conjugates(fs))
}

/// Change of the full torsion on each complexified argument pair under the
/// gauge freedom of a step, as functions of the gauge parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variation {
    pub x: usize,
    pub y: usize,
    pub delta: Elt,
}

impl Variation {
    pub fn apply(&self, t: &mut FullTorsion) {
        t.perturb(&cx(self.x), &cx(self.y), &self.delta);
    }
}

/// Step 1a: `B(e^{0(10)}) = νE^{0(10)} + ν′E^{0(01)}`.
pub fn alpha_variation(nu: &Gq, nu_p: &Gq) -> Vec<Variation> {
    vec![
        Variation { x: E_M1_1, y: E_0_1, delta: vec_scale(&cx(E_M1_1), nu) },
        Variation { x: E_M1_2, y: E_0_1, delta: vec_scale(&cx(E_M1_2), nu_p) },
    ]
}

/// Step 1b, for a member of [`GL1_FAMILY`].
pub fn beta_variation(mu: &Gq, nu: &Gq, nu_p: &Gq) -> Vec<Variation> {
    let c = &(&-mu.conj() + nu) - nu_p;
    vec![Variation { x: E_M1_1, y: E_0_1, delta: vec_scale(&cx(E_0_2), &c) }]
}

/// Step 2: `B(e^{0(10)}) = νE^{1(10)} + ν′E^{1(01)}`.
pub fn gamma_variation(nu: &Gq, nu_p: &Gq) -> Vec<Variation> {
    let mh = -h();
    vec![
        Variation { x: E_M1_1, y: E_0_1, delta: comb(&[(&mh * nu, E_0_1), (&mh * nu_p, H_0_1)]) },
        Variation { x: E_M1_2, y: E_0_1, delta: comb(&[(&mh * nu, H_0_2), (&mh * nu_p, E_0_2)]) },
    ]
}

/// Step 3: `B(e^{0(10)}) = νE²`.
pub fn epsilon_variation(nu: &Gq) -> Vec<Variation> {
    let m = -nu.clone();
    vec![Variation { x: E_M2, y: E_0_1, delta: comb(&[(m.clone(), H_0_1), (m, H_0_2)]) }]
}
