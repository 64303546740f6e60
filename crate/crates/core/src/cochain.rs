//! Cochains on 𝔪₋ = 𝔤⁻² + 𝔤⁻¹ with values in 𝔤, the coboundary ∂, the
//! codifferential ∂* transported from the 𝔥₊-homology complex through the
//! Killing form, and the resulting Hodge decomposition.
//!
//! An ℓ-cochain is stored on the full layout: one block of 10 coefficients
//! (over 𝓑) per sorted ℓ-subset of the arguments `(e⁻², e₁⁻¹, e₂⁻¹)`.

use std::sync::OnceLock;

use thiserror::Error;

use crate::exact::{axpy, vec_zero, Gq, Matrix, Subspace};
use crate::so32::{self, bracket, grade_of, unit, Elt, DIM, E_M1_1, E_M1_2, E_M2, H_1_1, H_1_2, H_2};

/// Basis of 𝔪₋ as indices into 𝓑.
pub const ARGS: [usize; 3] = [E_M2, E_M1_1, E_M1_2];
/// 𝔥₊ partners of [`ARGS`] under the Killing pairing.
pub const DUAL_ARGS: [usize; 3] = [H_2, H_1_1, H_1_2];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("cochain degree {0} out of range 0..=3")]
    Ell(usize),
    #[error("coefficient at monomial {monomial:?}, value {value} violates degree {k}")]
    NotHomogeneous { monomial: Vec<usize>, value: &'static str, k: i32 },
    #[error("coefficient vector has length {0}, expected {1}")]
    Length(usize, usize),
    #[error("coboundary of a 3-cochain is not defined")]
    TopDegree,
    #[error("codifferential of a 0-cochain is not defined")]
    BottomDegree,
}

pub fn monomials(ell: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in start..3 {
            cur.push(a);
            go(a + 1, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, ell, &mut Vec::new(), &mut out);
    out
}

pub fn full_len(ell: usize) -> usize {
    monomials(ell).len() * DIM
}

fn monomial_index(ell: usize, m: &[usize]) -> usize {
    monomials(ell).iter().position(|x| x == m).expect("sorted monomial")
}

/// Sorts a wedge of distinct indices, returning the permutation sign.
fn normalize(mut m: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1;
    for i in 0..m.len() {
        for j in 0..m.len() - 1 - i {
            if m[j] == m[j + 1] {
                return None;
            }
            if m[j] > m[j + 1] {
                m.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if m.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, m))
}

fn without(m: &[usize], skip: &[usize]) -> Vec<usize> {
    m.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, &a)| a).collect()
}

fn sgn(p: usize) -> i64 {
    if p % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Homogeneity degree of the full-layout position `(monomial, value)`.
pub fn position_degree(monomial: &[usize], value: usize) -> i32 {
    grade_of(value) - monomial.iter().map(|&a| grade_of(ARGS[a])).sum::<i32>()
}

/// The homogeneous subspace C^ℓ_k as a set of full-layout positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    pub ell: usize,
    pub k: i32,
    pub positions: Vec<usize>,
}

impl CochainSpace {
    pub fn new(ell: usize, k: i32) -> Result<Self, CochainError> {
        if ell > 3 {
            return Err(CochainError::Ell(ell));
        }
        let mut positions = Vec::new();
        for (mi, m) in monomials(ell).iter().enumerate() {
            for v in 0..DIM {
                if position_degree(m, v) == k {
                    positions.push(mi * DIM + v);
                }
            }
        }
        Ok(Self { ell, k, positions })
    }

    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    pub fn embed(&self, local: &[Gq]) -> Vec<Gq> {
        let mut v = vec_zero(full_len(self.ell));
        for (p, c) in self.positions.iter().zip(local) {
            v[*p] = c.clone();
        }
        v
    }

    pub fn restrict(&self, full: &[Gq]) -> Vec<Gq> {
        self.positions.iter().map(|&p| full[p].clone()).collect()
    }

    /// Basis cochains with a single nonzero coefficient.
    pub fn basis(&self) -> Vec<Cochain> {
        (0..self.dim())
            .map(|i| {
                let mut local = vec_zero(self.dim());
                local[i] = Gq::one();
                Cochain { ell: self.ell, k: self.k, coeffs: self.embed(&local) }
            })
            .collect()
    }

    /// Readable name of a local coordinate, e.g. `e^{-2}∧e_1^{-1} -> E^{2}`.
    pub fn position_label(&self, i: usize) -> String {
        let p = self.positions[i];
        let m = &monomials(self.ell)[p / DIM];
        let args: Vec<&str> = m.iter().map(|&a| so32::REAL_LABELS[ARGS[a]]).collect();
        format!("{} -> {}", args.join("∧"), so32::REAL_LABELS[p % DIM])
    }
}

pub fn cochain_space(ell: usize, k: i32) -> Result<CochainSpace, CochainError> {
    CochainSpace::new(ell, k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub ell: usize,
    pub k: i32,
    pub coeffs: Vec<Gq>,
}

impl Cochain {
    pub fn new(ell: usize, k: i32, coeffs: Vec<Gq>) -> Result<Self, CochainError> {
        if ell > 3 {
            return Err(CochainError::Ell(ell));
        }
        if coeffs.len() != full_len(ell) {
            return Err(CochainError::Length(coeffs.len(), full_len(ell)));
        }
        for (mi, m) in monomials(ell).iter().enumerate() {
            for v in 0..DIM {
                if !coeffs[mi * DIM + v].is_zero() && position_degree(m, v) != k {
                    return Err(CochainError::NotHomogeneous {
                        monomial: m.clone(),
                        value: so32::REAL_LABELS[v],
                        k,
                    });
                }
            }
        }
        Ok(Self { ell, k, coeffs })
    }

    pub fn zero(ell: usize, k: i32) -> Self {
        Self { ell, k, coeffs: vec_zero(full_len(ell)) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Gq::is_zero)
    }

    /// Value on a sorted monomial of basis arguments.
    pub fn value(&self, monomial: &[usize]) -> Elt {
        let mi = monomial_index(self.ell, monomial);
        self.coeffs[mi * DIM..(mi + 1) * DIM].to_vec()
    }

    /// Value on arbitrary arguments from 𝔪₋, given over `ARGS`.
    pub fn eval(&self, ys: &[Vec<Gq>]) -> Elt {
        assert_eq!(ys.len(), self.ell);
        eval_full(self.ell, &self.coeffs, ys)
    }

    pub fn local(&self) -> Vec<Gq> {
        CochainSpace::new(self.ell, self.k).unwrap().restrict(&self.coeffs)
    }
}

fn eval_full(ell: usize, coeffs: &[Gq], ys: &[Vec<Gq>]) -> Elt {
    let mut out = vec_zero(DIM);
    // sum over sequences of distinct argument indices
    let mut idx = vec![0usize; ell];
    loop {
        let mut w = Gq::one();
        for (s, &a) in idx.iter().enumerate() {
            w = &w * &ys[s][a];
            if w.is_zero() {
                break;
            }
        }
        if !w.is_zero() {
            if let Some((sign, m)) = normalize(idx.clone()) {
                let mi = monomial_index(ell, &m);
                axpy(&mut out, &(&w * &Gq::int(sign)), &coeffs[mi * DIM..(mi + 1) * DIM]);
            }
        }
        let mut pos = ell;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < 3 {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// 𝔪₋-coordinates (over `ARGS`) of the negative-grade part of `x`.
pub fn m_minus_coords(x: &[Gq]) -> Vec<Gq> {
    ARGS.iter().map(|&a| x[a].clone()).collect()
}

fn arg_coords(a: usize) -> Vec<Gq> {
    let mut v = vec_zero(3);
    v[a] = Gq::one();
    v
}

fn coboundary_full(ell: usize) -> Matrix {
    let rows = full_len(ell + 1);
    let out_monos = monomials(ell + 1);
    let cols: Vec<Vec<Gq>> = (0..full_len(ell))
        .map(|col| {
            let mut coeffs = vec_zero(full_len(ell));
            coeffs[col] = Gq::one();
            let mut out = vec_zero(rows);
            for (ni, n) in out_monos.iter().enumerate() {
                let mut val = vec_zero(DIM);
                let xs: Vec<Elt> = n.iter().map(|&a| unit(ARGS[a])).collect();
                for s in 0..n.len() {
                    let rest: Vec<Vec<Gq>> = without(n, &[s]).into_iter().map(arg_coords).collect();
                    let c = eval_full(ell, &coeffs, &rest);
                    axpy(&mut val, &Gq::int(sgn(s)), &bracket(&xs[s], &c));
                }
                for s in 0..n.len() {
                    for t in s + 1..n.len() {
                        let b = bracket(&xs[s], &xs[t]);
                        debug_assert!((0..DIM).all(|k| b[k].is_zero() || grade_of(k) < 0));
                        let mut args = vec![m_minus_coords(&b)];
                        args.extend(without(n, &[s, t]).into_iter().map(arg_coords));
                        let c = eval_full(ell, &coeffs, &args);
                        axpy(&mut val, &Gq::int(sgn(s + t)), &c);
                    }
                }
                out[ni * DIM..(ni + 1) * DIM].clone_from_slice(&val);
            }
            out
        })
        .collect();
    Matrix::from_columns(rows, &cols)
}

/// The Killing duals `Zⁱ ∈ 𝔥₊` with `κ(Zⁱ, ARGS[j]) = δᵢⱼ`, over 𝓑.
pub fn killing_duals() -> &'static Vec<Elt> {
    static Z: OnceLock<Vec<Elt>> = OnceLock::new();
    Z.get_or_init(|| {
        // P[i][j] = κ(ARGS[i], DUAL_ARGS[j]); Zⁱ = Σⱼ C[i][j] DUAL_ARGS[j] with C Pᵀ = I
        let p = Matrix::from_rows(
            ARGS.iter()
                .map(|&a| DUAL_ARGS.iter().map(|&h| so32::killing(&unit(a), &unit(h))).collect())
                .collect(),
        );
        (0..3)
            .map(|i| {
                let sol = p.solve(&arg_coords(i)).unwrap().expect("nondegenerate");
                let mut z = vec_zero(DIM);
                for (j, &h) in DUAL_ARGS.iter().enumerate() {
                    z[h] = sol.particular[j].clone();
                }
                z
            })
            .collect()
    })
}

/// Coordinates over the Killing duals of an element of 𝔥₊.
fn dual_coords(x: &[Gq]) -> Vec<Gq> {
    let z = killing_duals();
    let m = Matrix::from_columns(DIM, z);
    m.solve(x).unwrap().expect("element of h+").particular
}

fn codifferential_full(ell: usize) -> Matrix {
    let rows = full_len(ell - 1);
    let z = killing_duals();
    let in_monos = monomials(ell);
    let cols: Vec<Vec<Gq>> = (0..full_len(ell))
        .map(|col| {
            let m = &in_monos[col / DIM];
            let v = unit(col % DIM);
            let mut out = vec_zero(rows);
            for s in 0..m.len() {
                let rest = without(m, &[s]);
                let mi = monomial_index(ell - 1, &rest);
                let w = bracket(&z[m[s]], &v);
                axpy(&mut out[mi * DIM..(mi + 1) * DIM], &Gq::int(sgn(s)), &w);
            }
            for s in 0..m.len() {
                for t in s + 1..m.len() {
                    let b = dual_coords(&bracket(&z[m[s]], &z[m[t]]));
                    let rest = without(m, &[s, t]);
                    for (a, c) in b.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut mono = vec![a];
                        mono.extend(rest.iter().copied());
                        if let Some((sign, sorted)) = normalize(mono) {
                            let mi = monomial_index(ell - 1, &sorted);
                            let f = c * &Gq::int(-sgn(s + t) * sign);
                            axpy(&mut out[mi * DIM..(mi + 1) * DIM], &f, &v);
                        }
                    }
                }
            }
            out
        })
        .collect();
    Matrix::from_columns(rows, &cols)
}

fn cached(which: usize, ell: usize) -> &'static Matrix {
    static M: OnceLock<Vec<Vec<Matrix>>> = OnceLock::new();
    let all = M.get_or_init(|| {
        vec![
            (0..3).map(coboundary_full).collect(),
            (1..4).map(codifferential_full).collect(),
        ]
    });
    &all[which][if which == 0 { ell } else { ell - 1 }]
}

/// ∂ on the full layout, from ℓ- to (ℓ+1)-cochains.
pub fn coboundary_matrix(ell: usize) -> Result<&'static Matrix, CochainError> {
    if ell >= 3 {
        return Err(CochainError::TopDegree);
    }
    Ok(cached(0, ell))
}

/// ∂* on the full layout, from ℓ- to (ℓ−1)-cochains.
pub fn codifferential_matrix(ell: usize) -> Result<&'static Matrix, CochainError> {
    if ell == 0 || ell > 3 {
        return Err(CochainError::BottomDegree);
    }
    Ok(cached(1, ell))
}

fn restrict_op(m: &Matrix, from: &CochainSpace, to: &CochainSpace) -> Matrix {
    let mut out = Matrix::zeros(to.dim(), from.dim());
    for (c, &pc) in from.positions.iter().enumerate() {
        for (r, &pr) in to.positions.iter().enumerate() {
            out.set(r, c, m.get(pr, pc).clone());
        }
    }
    out
}

/// ∂ : C^ℓ_k → C^{ℓ+1}_k in local coordinates.
pub fn coboundary_local(ell: usize, k: i32) -> Result<Matrix, CochainError> {
    let m = coboundary_matrix(ell)?;
    Ok(restrict_op(m, &CochainSpace::new(ell, k)?, &CochainSpace::new(ell + 1, k)?))
}

/// ∂* : C^ℓ_k → C^{ℓ−1}_k in local coordinates.
pub fn codifferential_local(ell: usize, k: i32) -> Result<Matrix, CochainError> {
    let m = codifferential_matrix(ell)?;
    Ok(restrict_op(m, &CochainSpace::new(ell, k)?, &CochainSpace::new(ell - 1, k)?))
}

pub fn coboundary(c: &Cochain) -> Result<Cochain, CochainError> {
    let m = coboundary_matrix(c.ell)?;
    Ok(Cochain { ell: c.ell + 1, k: c.k, coeffs: m.mul_vec(&c.coeffs) })
}

pub fn codifferential(c: &Cochain) -> Result<Cochain, CochainError> {
    if c.ell == 0 {
        return Err(CochainError::BottomDegree);
    }
    let m = codifferential_matrix(c.ell)?;
    Ok(Cochain { ell: c.ell - 1, k: c.k, coeffs: m.mul_vec(&c.coeffs) })
}

/// `(X·c)(Y…) = [X, c(Y…)] − Σᵢ c(…, π[X, Yᵢ], …)` with π the projection to
/// 𝔪₋. The result is on the full layout and may mix degrees.
pub fn act(x: &[Gq], ell: usize, coeffs: &[Gq]) -> Vec<Gq> {
    let mut out = vec_zero(full_len(ell));
    for (mi, m) in monomials(ell).iter().enumerate() {
        let args: Vec<Vec<Gq>> = m.iter().map(|&a| arg_coords(a)).collect();
        let mut val = bracket(x, &eval_full(ell, coeffs, &args));
        for s in 0..m.len() {
            let mut moved = args.clone();
            moved[s] = m_minus_coords(&bracket(x, &unit(ARGS[m[s]])));
            let c = eval_full(ell, coeffs, &moved);
            axpy(&mut val, &Gq::int(-1), &c);
        }
        out[mi * DIM..(mi + 1) * DIM].clone_from_slice(&val);
    }
    out
}

/// Local subspaces of C^ℓ_k attached to ∂ and ∂*.
#[derive(Clone, Debug)]
pub struct HodgeSpaces {
    pub space: CochainSpace,
    pub exact: Subspace,
    pub coexact: Subspace,
    pub harmonic: Subspace,
    pub ker_d: Subspace,
    pub ker_dstar: Subspace,
}

pub fn hodge_spaces(ell: usize, k: i32) -> Result<HodgeSpaces, CochainError> {
    let space = CochainSpace::new(ell, k)?;
    let n = space.dim();
    let exact = if ell == 0 { Subspace::zero(n) } else { coboundary_local(ell - 1, k)?.image() };
    let coexact = if ell == 3 { Subspace::zero(n) } else { codifferential_local(ell + 1, k)?.image() };
    let ker_d = if ell == 3 { Subspace::full(n) } else { coboundary_local(ell, k)?.kernel() };
    let ker_dstar = if ell == 0 { Subspace::full(n) } else { codifferential_local(ell, k)?.kernel() };
    let harmonic = ker_d.intersect(&ker_dstar).unwrap();
    Ok(HodgeSpaces { space, exact, coexact, harmonic, ker_d, ker_dstar })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeTriple {
    pub exact: Cochain,
    pub harmonic: Cochain,
    pub coexact: Cochain,
}

pub fn hodge_decompose(c: &Cochain) -> Result<HodgeTriple, CochainError> {
    let h = hodge_spaces(c.ell, c.k)?;
    let mut cols: Vec<Vec<Gq>> = Vec::new();
    let parts = [&h.exact, &h.harmonic, &h.coexact];
    for p in parts {
        cols.extend(p.basis().iter().cloned());
    }
    let n = h.space.dim();
    let local = h.space.restrict(&c.coeffs);
    let sol = Matrix::from_columns(n, &cols)
        .solve(&local)
        .unwrap()
        .expect("the three parts span the cochain space");
    let mut offset = 0;
    let mut pieces = Vec::new();
    for p in parts {
        let mut v = vec_zero(n);
        for (b, coef) in p.basis().iter().zip(&sol.particular[offset..offset + p.dim()]) {
            axpy(&mut v, coef, b);
        }
        offset += p.dim();
        pieces.push(Cochain { ell: c.ell, k: c.k, coeffs: h.space.embed(&v) });
    }
    let coexact = pieces.pop().unwrap();
    let harmonic = pieces.pop().unwrap();
    let exact = pieces.pop().unwrap();
    Ok(HodgeTriple { exact, harmonic, coexact })
}

/// `dim ker ∂|C^ℓ_k − dim ∂(C^{ℓ−1}_k)`.
pub fn cohomology_dim(ell: usize, k: i32) -> Result<usize, CochainError> {
    let space = CochainSpace::new(ell, k)?;
    let ker = if ell == 3 { space.dim() } else { coboundary_local(ell, k)?.kernel().dim() };
    let im = if ell == 0 { 0 } else { coboundary_local(ell - 1, k)?.rank() };
    Ok(ker - im)
}
