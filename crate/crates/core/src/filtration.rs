//! Endomorphism algebras of the truncations of 𝔪 + 𝔥 that respect the plain
//! or the semitone filtration, optionally compatible with J modulo 𝔥.
//!
//! Every carrier is a prefix of the basis 𝓑, so local and global indices
//! agree. An endomorphism `A` on an `n`-dimensional carrier is flattened
//! row-major: entry `t·n + s` is the `Bₜ`-coefficient of `A(Bₛ)`.

use thiserror::Error;

use crate::exact::{Gq, Matrix, Subspace};
use crate::so32::{self, apply_j_unchecked, grade_of, unit, DIM};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Carrier {
    M,
    MH0,
    MH01,
    MH,
}

impl Carrier {
    pub const ALL: [Carrier; 4] = [Carrier::M, Carrier::MH0, Carrier::MH01, Carrier::MH];

    pub fn dim(self) -> usize {
        match self {
            Carrier::M => 5,
            Carrier::MH0 => 7,
            Carrier::MH01 => 9,
            Carrier::MH => DIM,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Carrier::M => "m",
            Carrier::MH0 => "m+h0",
            Carrier::MH01 => "m+h0+h1",
            Carrier::MH => "m+h",
        }
    }

    pub fn parse(s: &str) -> Option<Carrier> {
        Carrier::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("degree {0} is negative")]
    NegativeDegree(i32),
}

/// Position of a basis vector in the semitone filtration: the integer grade
/// for 𝔪⁻², 𝔪⁻¹; otherwise `(0|σ)` with σ = −1 on 𝔪⁰, 0 on 𝔥⁰ and `g` on 𝔥ᵍ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Level {
    Neg(i32),
    Semi(i32),
}

fn level(k: usize) -> Level {
    match grade_of(k) {
        g if g < 0 => Level::Neg(g),
        0 if so32::is_in_m(k) => Level::Semi(-1),
        g => Level::Semi(g),
    }
}

fn plain_ok(t: usize, s: usize, i: i32) -> bool {
    grade_of(t) >= grade_of(s) + i
}

fn star_ok(t: usize, s: usize, i: i32) -> bool {
    match (level(s), level(t)) {
        (Level::Neg(g), _) => grade_of(t) >= g + i,
        (Level::Semi(a), Level::Semi(b)) => b >= a + i,
        (Level::Semi(_), Level::Neg(_)) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoSubspace {
    pub carrier: Carrier,
    pub degree: i32,
    pub star: bool,
    pub j_compatible: bool,
    pub graded: bool,
    pub space: Subspace,
}

impl EndoSubspace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        let n = self.carrier.dim();
        self.space.basis().iter().map(|v| unflatten(n, v)).collect()
    }

    pub fn contains(&self, a: &Matrix) -> bool {
        self.space.contains(&flatten(a)).unwrap_or(false)
    }
}

pub fn flatten(a: &Matrix) -> Vec<Gq> {
    a.entries().to_vec()
}

pub fn unflatten(n: usize, v: &[Gq]) -> Matrix {
    Matrix::from_rows(v.chunks(n).map(<[Gq]>::to_vec).collect())
}

/// Linear conditions `J π(A X) = π(A J X)` for `X` in the basis of `V₋₁`,
/// where `π` projects onto 𝔪⁻¹ + 𝔪⁰ and `J(𝔥²) = 0`.
fn j_conditions(n: usize) -> Vec<Vec<Gq>> {
    let pad = |v: Vec<Gq>| -> Vec<Gq> { v[..n].to_vec() };
    let mut rows = Vec::new();
    for x in 1..n {
        let jx = pad(apply_j_unchecked(&unit(x)));
        // output component r ∈ 𝔪⁻¹+𝔪⁰ of J π(A eₓ) − π(A Jeₓ)
        for r in 1..=so32::E_0_2 {
            let mut row = vec![Gq::zero(); n * n];
            // (J π(A eₓ))_r = Σ_t J[r][t] A[t][x]
            for t in 1..=so32::E_0_2 {
                let jt = apply_j_unchecked(&unit(t));
                if !jt[r].is_zero() {
                    row[t * n + x] += &jt[r];
                }
            }
            // (A J eₓ)_r = Σ_s A[r][s] (Jeₓ)_s
            for (s, c) in jx.iter().enumerate() {
                if !c.is_zero() {
                    row[r * n + s] -= c;
                }
            }
            rows.push(row);
        }
    }
    rows
}

fn build(
    carrier: Carrier,
    allowed: impl Fn(usize, usize) -> bool,
    j: bool,
) -> Subspace {
    let n = carrier.dim();
    let mut rows: Vec<Vec<Gq>> = Vec::new();
    for t in 0..n {
        for s in 0..n {
            if !allowed(t, s) {
                let mut r = vec![Gq::zero(); n * n];
                r[t * n + s] = Gq::one();
                rows.push(r);
            }
        }
    }
    if j {
        rows.extend(j_conditions(n));
    }
    if rows.is_empty() {
        return Subspace::full(n * n);
    }
    Matrix::from_rows_with_cols(n * n, rows).kernel()
}

/// 𝔤𝔩ᵢ (plain) or 𝔤𝔩ᵢ* (semitone) on the carrier; the J variant is taken
/// inside the semitone-preserving maps.
pub fn gl_filtered(
    carrier: Carrier,
    i: i32,
    star: bool,
    j_compatible: bool,
) -> Result<EndoSubspace, FiltrationError> {
    if i < 0 {
        return Err(FiltrationError::NegativeDegree(i));
    }
    let space = build(
        carrier,
        |t, s| {
            let f = if star { star_ok(t, s, i) } else { plain_ok(t, s, i) };
            f && (!j_compatible || star_ok(t, s, 0))
        },
        j_compatible,
    );
    Ok(EndoSubspace { carrier, degree: i, star, j_compatible, graded: false, space })
}

/// Graded representatives: maps raising the 𝔤-grade by exactly `k` that
/// preserve the semitone filtration.
pub fn gl_graded(carrier: Carrier, k: i32, j_compatible: bool) -> Result<EndoSubspace, FiltrationError> {
    if k < 0 {
        return Err(FiltrationError::NegativeDegree(k));
    }
    let space = build(
        carrier,
        |t, s| grade_of(t) == grade_of(s) + k && star_ok(t, s, 0),
        j_compatible,
    );
    Ok(EndoSubspace { carrier, degree: k, star: true, j_compatible, graded: true, space })
}

#[derive(Clone, Debug)]
pub struct StarWitness {
    pub carrier: Carrier,
    pub equal: bool,
    pub plain_dim: usize,
    pub star_dim: usize,
}

pub fn compare_star(carrier: Carrier, k: i32) -> StarWitness {
    let a = gl_filtered(carrier, k, false, true).unwrap();
    let b = gl_filtered(carrier, k, true, true).unwrap();
    StarWitness { carrier, equal: a.space == b.space, plain_dim: a.dim(), star_dim: b.dim() }
}

/// On 𝔪 the semitone is trivial, so 𝔤𝔩₁(𝔪, J) and 𝔤𝔩₁*(𝔪, J) coincide.
pub fn gl_star_equals_gl_on_m() -> StarWitness {
    compare_star(Carrier::M, 1)
}

/// First-order frame changes with a fixed graded part.
pub fn frame_freedom(carrier: Carrier) -> EndoSubspace {
    gl_filtered(carrier, 1, true, true).unwrap()
}

/// `ad x` restricted to the carrier, keeping only the part that raises the
/// grade by `k` and lands in the carrier.
pub fn graded_ad(carrier: Carrier, x: &[Gq], k: i32) -> Matrix {
    let n = carrier.dim();
    let mut a = Matrix::zeros(n, n);
    for s in 0..n {
        let y = so32::bracket(x, &unit(s));
        for t in 0..n {
            if grade_of(t) == grade_of(s) + k {
                a.set(t, s, y[t].clone());
            }
        }
    }
    a
}
