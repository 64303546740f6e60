//! The flat model: the quadric in CP⁴, the embedding of the tube over the
//! future light cone, the isotropy algebra at `x_o`, and exact polynomial CR
//! calculus on the tube `𝒯 = {ρ = 0, x³ > 0}` with
//! `ρ = (x¹)² + (x²)² − (x³)²`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{parse_rational, vec_conj, Gq, Matrix, Rational, Subspace};
use crate::prolong::real_kernel;
use crate::so32::{self, basis_matrices, bracket, complex_unit, form_i, to_complex, Elt, E_0_1, E_M1_1, E_M1_2, E_M2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("point is the zero vector")]
    ZeroVector,
    #[error("real part {0} is not on the future light cone")]
    NotOnCone(String),
    #[error("field is not tangent to the tube at the point")]
    NotTangent,
    #[error("field is not a section of the CR distribution at the point")]
    NotInD,
    #[error("field is not in the rib distribution at the point")]
    NotInRib,
    #[error("field is not of type (0,1) at the point")]
    NotAntiHolomorphic,
    #[error("field is not of type (1,0) at the point")]
    NotHolomorphic,
    #[error("field is not real")]
    NotReal,
    #[error("bad coordinate list {0:?}: {1}")]
    Parse(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// The diagonal form `I₃,₂`.
    I32,
    /// The anti-diagonal form 𝓘.
    Anti,
}

#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    pub homogeneous: Vec<Gq>,
    pub chart: Chart,
}

impl ProjectivePoint {
    pub fn new(homogeneous: Vec<Gq>, chart: Chart) -> Result<Self, ModelError> {
        assert_eq!(homogeneous.len(), 5);
        if homogeneous.iter().all(Gq::is_zero) {
            return Err(ModelError::ZeroVector);
        }
        Ok(ProjectivePoint { homogeneous, chart })
    }

    pub fn x_o() -> Self {
        let v = vec![Gq::one(), Gq::i(), Gq::zero(), Gq::zero(), Gq::zero()];
        ProjectivePoint { homogeneous: v, chart: Chart::Anti }
    }

    pub fn scaled(&self, s: &Gq) -> Self {
        ProjectivePoint { homogeneous: self.homogeneous.iter().map(|c| c * s).collect(), chart: self.chart }
    }

    pub fn to_chart(&self, chart: Chart) -> Self {
        let h = match (self.chart, chart) {
            (a, b) if a == b => self.homogeneous.clone(),
            (Chart::Anti, Chart::I32) => chart_matrix().mul_vec(&self.homogeneous),
            _ => chart_matrix_inverse().mul_vec(&self.homogeneous),
        };
        ProjectivePoint { homogeneous: h, chart }
    }

    fn gram(&self) -> Matrix {
        match self.chart {
            Chart::I32 => i32_form(),
            Chart::Anti => form_i(),
        }
    }
}

impl PartialEq for ProjectivePoint {
    /// Equality as points of CP⁴ (after moving to a common chart).
    fn eq(&self, other: &Self) -> bool {
        let o = other.to_chart(self.chart);
        let m = Matrix::from_rows(vec![self.homogeneous.clone(), o.homogeneous]);
        m.rank() == 1
    }
}

fn i32_form() -> Matrix {
    let mut m = Matrix::identity(5);
    m.set(3, 3, Gq::int(-1));
    m.set(4, 4, Gq::int(-1));
    m
}

/// `P` with `Pᵀ I₃,₂ P = 𝓘`: anti-diagonal coordinates `u` go to
/// `(u¹ + u⁵/2, u² + u⁴/2, u³, u¹ − u⁵/2, u⁴/2 − u²)`.
pub fn chart_matrix() -> Matrix {
    let h = Gq::q(1, 2, 0, 1);
    let mut p = Matrix::zeros(5, 5);
    p.set(0, 0, Gq::one());
    p.set(0, 4, h.clone());
    p.set(1, 1, Gq::one());
    p.set(1, 3, h.clone());
    p.set(2, 2, Gq::one());
    p.set(3, 0, Gq::one());
    p.set(3, 4, -h.clone());
    p.set(4, 1, Gq::int(-1));
    p.set(4, 3, h);
    p
}

fn chart_matrix_inverse() -> Matrix {
    let p = chart_matrix();
    let cols: Vec<Vec<Gq>> = (0..5)
        .map(|j| {
            let mut e = vec![Gq::zero(); 5];
            e[j] = Gq::one();
            p.solve(&e).unwrap().expect("invertible").particular
        })
        .collect();
    Matrix::from_columns(5, &cols)
}

fn bilinear(g: &Matrix, t: &[Gq], s: &[Gq]) -> Gq {
    let gs = g.mul_vec(s);
    t.iter().zip(&gs).fold(Gq::zero(), |acc, (a, b)| &acc + &(a * b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricValues {
    pub bilinear: Gq,
    pub hermitian: Gq,
    /// `Im(t³ t̄⁴)`, only in the `I₃,₂` chart.
    pub orientation: Option<Rational>,
}

impl QuadricValues {
    pub fn on_quadric(&self) -> bool {
        self.bilinear.is_zero() && self.hermitian.is_zero()
    }

    /// Membership in the open orbit; undecided outside the `I₃,₂` chart.
    pub fn in_orbit(&self) -> Option<bool> {
        self.orientation.as_ref().map(|o| self.on_quadric() && o.is_positive())
    }
}

pub fn quadric_eval(t: &ProjectivePoint) -> QuadricValues {
    let g = t.gram();
    let v = &t.homogeneous;
    let orientation = match t.chart {
        Chart::I32 => Some((&v[3] * &v[4].conj()).im),
        Chart::Anti => None,
    };
    QuadricValues { bilinear: bilinear(&g, v, v), hermitian: bilinear(&g, &vec_conj(v), v), orientation }
}

/// `f(z) = [−i/2 − (i/2)q : z¹ : z² : z³ : −i/2 + (i/2)q]`, `q = (z¹)² + (z²)² − (z³)²`.
pub fn embed_f(z: &[Gq]) -> ProjectivePoint {
    let q = &(&(&z[0] * &z[0]) + &(&z[1] * &z[1])) - &(&z[2] * &z[2]);
    let mi = Gq::q(0, 1, -1, 2);
    let iq = &Gq::q(0, 1, 1, 2) * &q;
    ProjectivePoint { homogeneous: vec![&mi - &iq, z[0].clone(), z[1].clone(), z[2].clone(), &mi + &iq], chart: Chart::I32 }
}

/// `{A ∈ so(3,2) : A v ∈ span{v}}` over 𝓑, for `v` in the 𝓘 chart.
pub fn isotropy_algebra(v: &ProjectivePoint) -> Subspace {
    let v = v.to_chart(Chart::Anti).homogeneous;
    let cols: Vec<Vec<Gq>> = basis_matrices()
        .iter()
        .map(|a| {
            let av = a.mul_vec(&v);
            let mut minors = Vec::new();
            for i in 0..5 {
                for j in i + 1..5 {
                    minors.push(&(&av[i] * &v[j]) - &(&av[j] * &v[i]));
                }
            }
            minors
        })
        .collect();
    real_kernel(so32::DIM, &cols)
}

fn project_m(x: &[Gq]) -> Elt {
    let mut y = x.to_vec();
    for (k, c) in y.iter_mut().enumerate() {
        if !so32::is_in_m(k) {
            *c = Gq::zero();
        }
    }
    y
}

/// Levi value on `(e^{-1(10)}, e^{-1(01)})` and cubic value on
/// `(e^{0(10)}, e^{-1(01)}, e^{-1(01)})` for `θ = s·(e⁻²)*`, from brackets
/// modulo 𝔥.
pub fn model_levi_cubic_scaled(s: &Gq) -> (Gq, Gq) {
    let theta = |x: &[Gq]| s * &x[E_M2];
    let (e1, f1, e0) = (complex_unit(E_M1_1), complex_unit(E_M1_2), complex_unit(E_0_1));
    // J acts on e^{-1(01)} by −i
    let jf1: Elt = f1.iter().map(|c| c * &-Gq::i()).collect();
    let levi = -theta(&project_m(&bracket(&e1, &jf1)));
    let cubic = theta(&project_m(&bracket(&project_m(&bracket(&e0, &f1)), &f1)));
    (levi, cubic)
}

pub fn model_levi_cubic() -> (Gq, Gq) {
    model_levi_cubic_scaled(&Gq::one())
}

/// Polynomial in `(z¹, z², z³, z̄¹, z̄², z̄³)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyScalar {
    terms: BTreeMap<[u32; 6], Gq>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Gq) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 6], c);
        p
    }

    /// Variable `i`: `0..3` are `zʲ`, `3..6` are `z̄ʲ`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 6];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, Gq::one());
        p
    }

    /// `xʲ = (zʲ + z̄ʲ)/2`.
    pub fn x(j: usize) -> Self {
        (&Self::var(j) + &Self::var(j + 3)).scale(&Gq::q(1, 2, 0, 1))
    }

    fn add_term(&mut self, e: [u32; 6], c: Gq) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Gq::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Gq) -> Self {
        let mut p = Self::zero();
        for (e, a) in &self.terms {
            p.add_term(*e, a * c);
        }
        p
    }

    pub fn conj(&self) -> Self {
        let mut p = Self::zero();
        for (e, a) in &self.terms {
            p.add_term([e[3], e[4], e[5], e[0], e[1], e[2]], a.conj());
        }
        p
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn diff(&self, i: usize) -> Self {
        let mut p = Self::zero();
        for (e, a) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                p.add_term(f, a * &Gq::int(e[i] as i64));
            }
        }
        p
    }

    /// Value at `z`, with `z̄` the conjugate of `z`.
    pub fn eval(&self, z: &[Gq]) -> Gq {
        let vals: Vec<Gq> = z.iter().cloned().chain(z.iter().map(Gq::conj)).collect();
        let mut s = Gq::zero();
        for (e, a) in &self.terms {
            let mut t = a.clone();
            for (v, &k) in vals.iter().zip(e) {
                for _ in 0..k {
                    t = &t * v;
                }
            }
            s += &t;
        }
        s
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, o: &PolyScalar) -> PolyScalar {
        let mut p = self.clone();
        for (e, a) in &o.terms {
            p.add_term(*e, a.clone());
        }
        p
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, o: &PolyScalar) -> PolyScalar {
        self + &(-o)
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        self.scale(&Gq::int(-1))
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, o: &PolyScalar) -> PolyScalar {
        let mut p = PolyScalar::zero();
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                let mut g = *e;
                for k in 0..6 {
                    g[k] += f[k];
                }
                p.add_term(g, a * b);
            }
        }
        p
    }
}

impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 6] = ["z1", "z2", "z3", "zb1", "zb2", "zb3"];
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(e, a)| {
                let mut s = format!("({a})");
                for (n, &k) in NAMES.iter().zip(e) {
                    match k {
                        0 => {}
                        1 => s.push_str(&format!("*{n}")),
                        _ => s.push_str(&format!("*{n}^{k}")),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// The defining function `ρ = (x¹)² + (x²)² − (x³)²`.
pub fn rho() -> PolyScalar {
    let sq = |j: usize| &PolyScalar::x(j) * &PolyScalar::x(j);
    &(&sq(0) + &sq(1)) - &sq(2)
}

/// Vector field over `(∂_{z¹}, ∂_{z²}, ∂_{z³}, ∂_{z̄¹}, ∂_{z̄²}, ∂_{z̄³})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    pub comps: [PolyScalar; 6],
}

impl PolyVectorField {
    pub fn zero() -> Self {
        PolyVectorField { comps: Default::default() }
    }

    pub fn holomorphic(c: [PolyScalar; 3]) -> Self {
        let [a, b, d] = c;
        PolyVectorField { comps: [a, b, d, PolyScalar::zero(), PolyScalar::zero(), PolyScalar::zero()] }
    }

    pub fn apply(&self, f: &PolyScalar) -> PolyScalar {
        let mut s = PolyScalar::zero();
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                s = &s + &(c * &f.diff(i));
            }
        }
        s
    }

    pub fn bracket(&self, o: &PolyVectorField) -> PolyVectorField {
        let mut out = PolyVectorField::zero();
        for i in 0..6 {
            out.comps[i] = &self.apply(&o.comps[i]) - &o.apply(&self.comps[i]);
        }
        out
    }

    pub fn conj(&self) -> PolyVectorField {
        let c = &self.comps;
        PolyVectorField { comps: [c[3].conj(), c[4].conj(), c[5].conj(), c[0].conj(), c[1].conj(), c[2].conj()] }
    }

    pub fn add(&self, o: &PolyVectorField) -> PolyVectorField {
        let mut out = self.clone();
        for i in 0..6 {
            out.comps[i] = &out.comps[i] + &o.comps[i];
        }
        out
    }

    pub fn scale(&self, c: &Gq) -> PolyVectorField {
        PolyVectorField { comps: self.comps.clone().map(|p| p.scale(c)) }
    }

    pub fn mul_poly(&self, f: &PolyScalar) -> PolyVectorField {
        PolyVectorField { comps: self.comps.clone().map(|p| &p * f) }
    }

    /// `(Z + Z̄)/2`.
    pub fn real_part(&self) -> PolyVectorField {
        self.add(&self.conj()).scale(&Gq::q(1, 2, 0, 1))
    }

    /// `i` on the `∂_z` components and `−i` on the `∂_{z̄}` components.
    pub fn apply_j(&self) -> PolyVectorField {
        let mut out = self.clone();
        for i in 0..6 {
            let s = if i < 3 { Gq::i() } else { -Gq::i() };
            out.comps[i] = out.comps[i].scale(&s);
        }
        out
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn eval(&self, z: &[Gq]) -> Vec<Gq> {
        self.comps.iter().map(|c| c.eval(z)).collect()
    }
}

/// A point `z = x + iy` of the tube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePoint {
    pub z: Vec<Gq>,
}

impl ConePoint {
    pub fn new(z: Vec<Gq>) -> Result<Self, ModelError> {
        assert_eq!(z.len(), 3);
        let x: Vec<Rational> = z.iter().map(|c| c.re.clone()).collect();
        let q = &(&(&x[0] * &x[0]) + &(&x[1] * &x[1])) - &(&x[2] * &x[2]);
        if !q.is_zero() || !x[2].is_positive() {
            let s: Vec<String> = z.iter().map(ToString::to_string).collect();
            return Err(ModelError::NotOnCone(s.join(",")));
        }
        Ok(ConePoint { z })
    }

    pub fn from_real_imag(x: [i64; 3], y: [(i64, i64); 3]) -> Result<Self, ModelError> {
        Self::new((0..3).map(|j| Gq::q(x[j], 1, y[j].0, y[j].1)).collect())
    }

    /// Parses `"x1,x2,x3,y1,y2,y3"`; three entries mean `y = 0`.
    pub fn parse(s: &str) -> Result<Self, ModelError> {
        let z = parse_z(s)?;
        Self::new(z)
    }
}

/// Parses `"x1,x2,x3,y1,y2,y3"` (or three real parts) into `z = x + iy`.
pub fn parse_z(s: &str) -> Result<Vec<Gq>, ModelError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 6 && parts.len() != 3 {
        return Err(ModelError::Parse(s.into(), format!("expected 3 or 6 entries, got {}", parts.len())));
    }
    let r: Result<Vec<Rational>, _> = parts.iter().map(|p| parse_rational(p)).collect();
    let r = r.map_err(|e| ModelError::Parse(s.into(), e.to_string()))?;
    Ok((0..3)
        .map(|j| Gq::new(r[j].clone(), r.get(j + 3).cloned().unwrap_or_else(|| Rational::zero())))
        .collect())
}

/// Rational points with distinct cone directions.
pub fn sample_points() -> Vec<ConePoint> {
    let raw: [([i64; 3], [(i64, i64); 3]); 6] = [
        ([1, 0, 1], [(0, 1), (0, 1), (0, 1)]),
        ([3, 4, 5], [(0, 1), (0, 1), (0, 1)]),
        ([5, 12, 13], [(1, 2), (-1, 1), (2, 1)]),
        ([8, 15, 17], [(-3, 1), (1, 3), (0, 1)]),
        ([0, 1, 1], [(1, 1), (1, 1), (-1, 4)]),
        ([-4, 3, 5], [(2, 5), (0, 1), (7, 1)]),
    ];
    raw.iter().map(|(x, y)| ConePoint::from_real_imag(*x, *y).unwrap()).collect()
}

/// `L₁₂, L₁₃, L₂₃` with `L_{jk} = ρ_{zᵏ}∂_{zʲ} − ρ_{zʲ}∂_{zᵏ}`, and the ruling
/// field `R = Σ xʲ∂_{zʲ}`.
pub fn cone_fields() -> ([PolyVectorField; 3], PolyVectorField) {
    let r = rho();
    let dz: Vec<PolyScalar> = (0..3).map(|j| r.diff(j)).collect();
    let l = |j: usize, k: usize| {
        let mut c: [PolyScalar; 3] = Default::default();
        c[j] = dz[k].clone();
        c[k] = -&dz[j];
        PolyVectorField::holomorphic(c)
    };
    let ruling = PolyVectorField::holomorphic([PolyScalar::x(0), PolyScalar::x(1), PolyScalar::x(2)]);
    ([l(0, 1), l(0, 2), l(1, 2)], ruling)
}

/// `ϑ = (i/2)(∂ρ − ∂̄ρ)` applied to a field, as a polynomial.
pub fn theta(v: &PolyVectorField) -> PolyScalar {
    let r = rho();
    let mut s = PolyScalar::zero();
    for j in 0..3 {
        s = &s + &(&r.diff(j) * &v.comps[j]);
        s = &s - &(&r.diff(j + 3) * &v.comps[j + 3]);
    }
    s.scale(&Gq::q(0, 1, 1, 2))
}

fn theta_at(p: &ConePoint, v: &PolyVectorField) -> Gq {
    theta(v).eval(&p.z)
}

fn tangent_at(p: &ConePoint, v: &PolyVectorField) -> bool {
    v.apply(&rho()).eval(&p.z).is_zero()
}

fn in_d_at(p: &ConePoint, v: &PolyVectorField) -> bool {
    tangent_at(p, v) && theta_at(p, v).is_zero()
}

fn span_at(p: &ConePoint, fields: &[PolyVectorField]) -> Subspace {
    Subspace::span(6, fields.iter().map(|f| f.eval(&p.z)).collect())
}

/// `−ϑ_p([V, JW])` for real sections `V`, `W` of 𝒟.
pub fn levi_form_at(p: &ConePoint, v: &PolyVectorField, w: &PolyVectorField) -> Result<Gq, ModelError> {
    for f in [v, w] {
        if !f.is_real() {
            return Err(ModelError::NotReal);
        }
        if !tangent_at(p, f) {
            return Err(ModelError::NotTangent);
        }
        if !in_d_at(p, f) {
            return Err(ModelError::NotInD);
        }
    }
    Ok(-theta_at(p, &v.bracket(&w.apply_j())))
}

/// The rib at `p` as a complex subspace of `T_p^ℂ`, spanned by `R`, `R̄`.
pub fn rib_span_at(p: &ConePoint) -> Subspace {
    let (_, r) = cone_fields();
    span_at(p, &[r.clone(), r.conj()])
}

/// `ϑ_p([[E, H], H′])` for `E` in 𝓔^{10} and `H`, `H′` in 𝒟^{01}.
pub fn cubic_form_at(
    p: &ConePoint,
    e: &PolyVectorField,
    h: &PolyVectorField,
    h2: &PolyVectorField,
) -> Result<Gq, ModelError> {
    let (_, r) = cone_fields();
    let ev = e.eval(&p.z);
    if !Subspace::span(6, vec![r.eval(&p.z)]).contains(&ev).unwrap() {
        return Err(ModelError::NotInRib);
    }
    for f in [h, h2] {
        let v = f.eval(&p.z);
        if v[..3].iter().any(|c| !c.is_zero()) {
            return Err(ModelError::NotAntiHolomorphic);
        }
        if !in_d_at(p, f) {
            return Err(ModelError::NotInD);
        }
    }
    Ok(theta_at(p, &e.bracket(h).bracket(h2)))
}

/// Two of the `L_{jk}` that are independent at `p`.
pub fn d10_frame_at(p: &ConePoint) -> [PolyVectorField; 2] {
    let (l, _) = cone_fields();
    for i in 0..3 {
        for j in i + 1..3 {
            if span_at(p, &[l[i].clone(), l[j].clone()]).dim() == 2 {
                return [l[i].clone(), l[j].clone()];
            }
        }
    }
    unreachable!("the tube has CR dimension 2")
}

/// Real frame `(Re Z₁, Re iZ₁, Re Z₂, Re iZ₂)` of 𝒟 near `p`.
pub fn real_d_frame_at(p: &ConePoint) -> Vec<PolyVectorField> {
    let mut out = Vec::new();
    for z in d10_frame_at(p) {
        out.push(z.real_part());
        out.push(z.scale(&Gq::i()).real_part());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviRank {
    /// Rank of the real symmetric 4×4 matrix on a real frame of 𝒟.
    pub real: usize,
    /// Rank of the Hermitian form on 𝒟^{10}.
    pub complex: usize,
}

pub fn levi_rank_at(p: &ConePoint) -> LeviRank {
    let frame = real_d_frame_at(p);
    let m = Matrix::from_rows(
        frame.iter().map(|v| frame.iter().map(|w| levi_form_at(p, v, w).unwrap()).collect()).collect(),
    );
    let z = d10_frame_at(p);
    let herm = Matrix::from_rows(
        z.iter()
            .map(|a| z.iter().map(|b| -theta_at(p, &a.bracket(&b.conj().apply_j()))).collect())
            .collect(),
    );
    LeviRank { real: m.rank(), complex: herm.rank() }
}

/// Dimensions of `𝓕^{10}₋₁`, `𝓕^{10}₀`, `𝓕^{10}₁` at `p`.
///
/// `𝓕^{10}₀` is the pointwise kernel of `X ↦ ϑ_p([X, 𝒟^{01}])`. For the next
/// step it is extended by the ruling field `R`, which must span it at `p`.
pub fn freeman_ranks_at(p: &ConePoint) -> (usize, usize, usize) {
    let (l, r) = cone_fields();
    let d10 = span_at(p, &l);
    let bars: Vec<PolyVectorField> = l.iter().map(PolyVectorField::conj).collect();
    let m = Matrix::from_rows(
        bars.iter().map(|b| l.iter().map(|z| theta_at(p, &z.bracket(b))).collect()).collect(),
    );
    let kernel = m.kernel();
    let f0_vectors: Vec<Vec<Gq>> = kernel
        .basis()
        .iter()
        .map(|a| {
            let mut v = vec![Gq::zero(); 6];
            for (c, z) in a.iter().zip(&l) {
                for (acc, x) in v.iter_mut().zip(z.eval(&p.z)) {
                    *acc += &(c * &x);
                }
            }
            v
        })
        .collect();
    let f0 = Subspace::span(6, f0_vectors);
    if f0.dim() == 0 {
        return (d10.dim(), 0, 0);
    }
    assert!(
        f0 == span_at(p, &[r.clone()]),
        "ruling field does not span the Levi kernel at {:?}",
        p.z
    );
    let mut target: Vec<Vec<Gq>> = vec![r.eval(&p.z)];
    target.extend(bars.iter().map(|b| b.eval(&p.z)));
    let target = Subspace::span(6, target);
    let f1 = bars.iter().all(|b| target.contains(&r.bracket(b).eval(&p.z)).unwrap());
    (d10.dim(), f0.dim(), usize::from(f1))
}

/// Real span `{Re R, Re(iR)}` at `p`, as the complex span of `R`, `R̄`.
pub fn rib_real_frame() -> [PolyVectorField; 2] {
    let (_, r) = cone_fields();
    [r.real_part(), r.scale(&Gq::i()).real_part()]
}

/// Components of `f(z)` as polynomials.
pub fn embed_f_poly() -> [PolyScalar; 5] {
    let z = |j: usize| PolyScalar::var(j);
    let q = &(&(&z(0) * &z(0)) + &(&z(1) * &z(1))) - &(&z(2) * &z(2));
    let mi = PolyScalar::constant(Gq::q(0, 1, -1, 2));
    let iq = q.scale(&Gq::q(0, 1, 1, 2));
    [&mi - &iq, z(0), z(1), z(2), &mi + &iq]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingIdentities {
    /// `(f, f)` expanded.
    pub bilinear: PolyScalar,
    /// `⟨f, f⟩ − 2ρ` expanded.
    pub hermitian_minus_2rho: PolyScalar,
}

impl EmbeddingIdentities {
    pub fn hold(&self) -> bool {
        self.bilinear.is_zero() && self.hermitian_minus_2rho.is_zero()
    }
}

pub fn embedding_identities() -> EmbeddingIdentities {
    let f = embed_f_poly();
    let sign = [1, 1, 1, -1, -1];
    let mut b = PolyScalar::zero();
    let mut h = PolyScalar::zero();
    for (c, s) in f.iter().zip(sign) {
        let s = Gq::int(s);
        b = &b + &(c * c).scale(&s);
        h = &h + &(&c.conj() * c).scale(&s);
    }
    EmbeddingIdentities { bilinear: b, hermitian_minus_2rho: &h - &rho().scale(&Gq::int(2)) }
}

pub fn embedding_identity_check() -> bool {
    embedding_identities().hold()
}

/// `(R, H̄)` with `H` a 𝒟^{10} direction transverse to the rib at `p`.
pub fn cubic_inputs_at(p: &ConePoint) -> (PolyVectorField, PolyVectorField) {
    let (_, r) = cone_fields();
    let [z1, z2] = d10_frame_at(p);
    let rv = Subspace::span(6, vec![r.eval(&p.z)]);
    let z = if rv.contains(&z1.eval(&p.z)).unwrap() { z2 } else { z1 };
    (r, z.conj())
}

/// The rib at `p` is spanned by `Re R`, `Re(iR)` and is J-invariant.
pub fn rib_check_at(p: &ConePoint) -> bool {
    let rib = rib_span_at(p);
    rib.dim() == 2
        && rib_real_frame().iter().all(|v| {
            rib.contains(&v.eval(&p.z)).unwrap() && rib.contains(&v.apply_j().eval(&p.z)).unwrap()
        })
}

/// Levi and cubic values at `p` are unchanged when the inputs are altered
/// by terms vanishing at `p` or by multiples of the defining function.
pub fn extension_independent_at(p: &ConePoint) -> bool {
    let c = |j: usize, s: &Gq| &PolyScalar::var(j) - &PolyScalar::constant(s.clone());
    let g = &c(1, &p.z[1]) + &c(3, &p.z[0].conj()).scale(&Gq::int(3));
    let one = PolyScalar::constant(Gq::one());
    let (_, r) = cone_fields();
    let [z1, z2] = d10_frame_at(p);
    let zp = z1.mul_poly(&(&one + &g)).add(&z2.mul_poly(&g)).add(&r.mul_poly(&rho()));
    let (v, vp) = (z1.real_part(), zp.real_part());
    let levi_ok = real_d_frame_at(p).iter().all(|w| {
        levi_form_at(p, &v, w) == levi_form_at(p, &vp, w) && levi_form_at(p, w, &v) == levi_form_at(p, w, &vp)
    });
    let (e, h) = cubic_inputs_at(p);
    let base = cubic_form_at(p, &e, &h, &h);
    let shift = PolyVectorField::holomorphic([PolyScalar::x(2), PolyScalar::var(4), PolyScalar::constant(Gq::i())]);
    let h2 = h.add(&shift.mul_poly(&rho())).add(&z2.conj().mul_poly(&g));
    let e2 = e.mul_poly(&(&one + &g));
    let cubic_ok = base.is_ok()
        && cubic_form_at(p, &e, &h2, &h) == base
        && cubic_form_at(p, &e, &h, &h2) == base
        && cubic_form_at(p, &e2, &h, &h) == base;
    levi_ok && cubic_ok
}

/// Complex coordinates of a vector over the labels, used in reports.
pub fn label_coords(x: &[Gq]) -> Vec<Gq> {
    to_complex(x)
}
