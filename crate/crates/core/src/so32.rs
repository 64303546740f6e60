//! so(3,2) in the anti-diagonal chart: the basis 𝓑, brackets, the complexified
//! basis, the grading by `ad(E₁⁰)`, the Killing form, the partial complex
//! structure and the two filtrations of 𝔪 + 𝔥.
//!
//! Elements are coordinate vectors of length 10 over 𝓑 with entries in ℚ[i];
//! complexified elements such as `e^{-1(10)}` are just non-real vectors.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::exact::{axpy, vec_zero, Gq, Matrix, Subspace};

pub const DIM: usize = 10;

/// Indices into 𝓑 = (e⁻², e₁⁻¹, e₂⁻¹, e₁⁰, e₂⁰, E₁⁰, E₂⁰, E₁¹, E₂¹, E²).
pub const E_M2: usize = 0;
pub const E_M1_1: usize = 1;
pub const E_M1_2: usize = 2;
pub const E_0_1: usize = 3;
pub const E_0_2: usize = 4;
pub const H_0_1: usize = 5;
pub const H_0_2: usize = 6;
pub const H_1_1: usize = 7;
pub const H_1_2: usize = 8;
pub const H_2: usize = 9;

pub const REAL_LABELS: [&str; DIM] = [
    "e^{-2}", "e_1^{-1}", "e_2^{-1}", "e_1^0", "e_2^0", "E_1^0", "E_2^0", "E_1^1", "E_2^1", "E^{2}",
];

/// Complexified labels; position `k` of a `(10)`/`(01)` label sits where the
/// real `X₁`/`X₂` sits in [`REAL_LABELS`].
pub const COMPLEX_LABELS: [&str; DIM] = [
    "e^{-2}",
    "e^{-1(10)}",
    "e^{-1(01)}",
    "e^{0(10)}",
    "e^{0(01)}",
    "E^{0(10)}",
    "E^{0(01)}",
    "E^{1(10)}",
    "E^{1(01)}",
    "E^{2}",
];

pub const GRADES: [i32; DIM] = [-2, -1, -1, 0, 0, 0, 0, 1, 1, 2];

/// `(X₁, X₂)` index pairs that split into `(10)`/`(01)` parts.
pub const PAIRS: [(usize, usize); 4] = [(1, 2), (3, 4), (5, 6), (7, 8)];

pub type Elt = Vec<Gq>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum So32Error {
    #[error("J is only defined on m^-1 + m^0 + h^0 + h^1; offending coordinate {0}")]
    OutsideJDomain(&'static str),
    #[error("matrix is not in so(3,2)")]
    NotInAlgebra,
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("table fixture: {0}")]
    Fixture(String),
}

pub fn unit(k: usize) -> Elt {
    let mut v = vec_zero(DIM);
    v[k] = Gq::one();
    v
}

pub fn is_in_m(k: usize) -> bool {
    k <= E_0_2
}

pub fn grade_of(k: usize) -> i32 {
    GRADES[k]
}

pub fn indices_of_grade(g: i32) -> Vec<usize> {
    (0..DIM).filter(|&k| GRADES[k] == g).collect()
}

fn half() -> Gq {
    Gq::q(1, 2, 0, 1)
}

/// Coordinates over 𝓑 from coordinates over the complexified labels.
pub fn from_complex(c: &[Gq]) -> Elt {
    let mut x = c.to_vec();
    let i = Gq::i();
    for (a, b) in PAIRS {
        // aX₁ + bX₂ = (a + ib)X⁽¹⁰⁾ + (a − ib)X⁽⁰¹⁾
        let (p, q) = (&c[a], &c[b]);
        x[a] = &(p + q) * &half();
        x[b] = &(&(p - q) * &half()) / &i;
    }
    x
}

/// Coordinates over the complexified labels.
pub fn to_complex(x: &[Gq]) -> Vec<Gq> {
    let mut c = x.to_vec();
    let i = Gq::i();
    for (a, b) in PAIRS {
        let ib = &i * &x[b];
        c[a] = &x[a] + &ib;
        c[b] = &x[a] - &ib;
    }
    c
}

/// The complexified basis vector with label index `k`, over 𝓑.
pub fn complex_unit(k: usize) -> Elt {
    from_complex(&unit(k))
}

pub fn label_index(label: &str) -> Option<usize> {
    COMPLEX_LABELS.iter().position(|&l| l == label)
}

/// Terse text for an element over the complexified labels.
pub fn format_complex(x: &[Gq]) -> String {
    format_combination(&to_complex(x), &COMPLEX_LABELS)
}

pub fn format_combination(c: &[Gq], labels: &[&str]) -> String {
    let terms: Vec<String> = c
        .iter()
        .zip(labels)
        .filter(|(a, _)| !a.is_zero())
        .map(|(a, l)| format!("{a} {l}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Parses `"0"` or `"c1 L1 + c2 L2 + …"` over the complexified labels.
pub fn parse_complex_combination(s: &str) -> Result<Elt, So32Error> {
    let s = s.trim();
    let mut c = vec_zero(DIM);
    if s == "0" {
        return Ok(c);
    }
    for term in s.split(" + ") {
        let term = term.trim();
        let (coef, label) = term
            .rsplit_once(char::is_whitespace)
            .ok_or_else(|| So32Error::Fixture(format!("bad term {term:?}")))?;
        let k = label_index(label.trim()).ok_or_else(|| So32Error::UnknownLabel(label.into()))?;
        let a: Gq = coef.parse().map_err(|_| So32Error::Fixture(format!("bad scalar {coef:?}")))?;
        c[k] += a;
    }
    Ok(from_complex(&c))
}

fn m5(entries: &[(usize, usize, i64)]) -> Matrix {
    let mut a = Matrix::zeros(5, 5);
    for &(r, c, v) in entries {
        a.set(r - 1, c - 1, Gq::int(v));
    }
    a
}

/// The anti-diagonal form 𝓘 with `(t, s) = tᵀ𝓘s`.
pub fn form_i() -> Matrix {
    m5(&[(1, 5, 1), (2, 4, 1), (3, 3, 1), (4, 2, 1), (5, 1, 1)])
}

pub fn basis_matrices() -> Vec<Matrix> {
    vec![
        m5(&[(4, 1, 1), (5, 2, -1)]),
        m5(&[(3, 1, 1), (5, 3, -1)]),
        m5(&[(3, 2, 1), (4, 3, -1)]),
        m5(&[(1, 1, 1), (2, 2, -1), (4, 4, 1), (5, 5, -1)]),
        m5(&[(1, 2, 1), (2, 1, 1), (4, 5, -1), (5, 4, -1)]),
        m5(&[(1, 1, 1), (2, 2, 1), (4, 4, -1), (5, 5, -1)]),
        m5(&[(1, 2, 1), (2, 1, -1), (4, 5, -1), (5, 4, 1)]),
        m5(&[(1, 3, 1), (3, 5, -1)]),
        m5(&[(2, 3, 1), (3, 4, -1)]),
        m5(&[(1, 4, 1), (2, 5, -1)]),
    ]
}

fn cached_basis() -> &'static [Matrix] {
    static B: OnceLock<Vec<Matrix>> = OnceLock::new();
    B.get_or_init(basis_matrices)
}

/// `Aᵀ𝓘 + 𝓘A = 0`.
pub fn is_skew(a: &Matrix) -> bool {
    let i = form_i();
    a.transpose().mul(&i).unwrap().add(&i.mul(a).unwrap()).is_zero()
}

pub fn to_matrix(x: &[Gq]) -> Matrix {
    let mut a = Matrix::zeros(5, 5);
    for (c, b) in x.iter().zip(cached_basis()) {
        if !c.is_zero() {
            a = a.add(&b.scale(c));
        }
    }
    a
}

/// Reads coordinates off the free entries of the general element and checks
/// that the matrix is reproduced.
pub fn from_matrix(a: &Matrix) -> Result<Elt, So32Error> {
    let e = |r: usize, c: usize| a.get(r - 1, c - 1).clone();
    let h = half();
    let mut x = vec_zero(DIM);
    x[E_M2] = e(4, 1);
    x[E_M1_1] = e(3, 1);
    x[E_M1_2] = e(3, 2);
    x[E_0_1] = &(e(1, 1) - e(2, 2)) * &h;
    x[H_0_1] = &(e(1, 1) + e(2, 2)) * &h;
    x[E_0_2] = &(e(1, 2) + e(2, 1)) * &h;
    x[H_0_2] = &(e(1, 2) - e(2, 1)) * &h;
    x[H_1_1] = e(1, 3);
    x[H_1_2] = e(2, 3);
    x[H_2] = e(1, 4);
    if &to_matrix(&x) == a {
        Ok(x)
    } else {
        Err(So32Error::NotInAlgebra)
    }
}

/// `sc[i][j]` = coordinates of `[Bᵢ, Bⱼ]`, computed from matrix commutators.
pub fn structure_constants() -> &'static Vec<Vec<Elt>> {
    static SC: OnceLock<Vec<Vec<Elt>>> = OnceLock::new();
    SC.get_or_init(|| {
        let b = cached_basis();
        (0..DIM)
            .map(|i| {
                (0..DIM)
                    .map(|j| from_matrix(&b[i].commutator(&b[j])).expect("closed under brackets"))
                    .collect()
            })
            .collect()
    })
}

pub fn bracket(x: &[Gq], y: &[Gq]) -> Elt {
    let sc = structure_constants();
    let mut out = vec_zero(DIM);
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            axpy(&mut out, &(a * b), &sc[i][j]);
        }
    }
    out
}

/// Bracket computed directly as the matrix commutator.
pub fn bracket_by_matrices(x: &[Gq], y: &[Gq]) -> Elt {
    from_matrix(&to_matrix(x).commutator(&to_matrix(y))).expect("closed under brackets")
}

/// Matrix of `ad x` on 𝓑 (column `j` = `[x, Bⱼ]`).
pub fn ad(x: &[Gq]) -> Matrix {
    let cols: Vec<Elt> = (0..DIM).map(|j| bracket(x, &unit(j))).collect();
    Matrix::from_columns(DIM, &cols)
}

pub fn killing(x: &[Gq], y: &[Gq]) -> Gq {
    let g = killing_gram();
    let mut acc = Gq::zero();
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                acc += &(a * b) * g.get(i, j);
            }
        }
    }
    acc
}

/// Gram matrix of `κ(x, y) = tr(ad x ∘ ad y)` on 𝓑.
pub fn killing_gram() -> &'static Matrix {
    static K: OnceLock<Matrix> = OnceLock::new();
    K.get_or_init(|| {
        let ads: Vec<Matrix> = (0..DIM).map(|k| ad(&unit(k))).collect();
        let mut g = Matrix::zeros(DIM, DIM);
        for i in 0..DIM {
            for j in 0..DIM {
                g.set(i, j, ads[i].mul(&ads[j]).unwrap().trace());
            }
        }
        g
    })
}

/// Counts of positive and negative pivots of a real symmetric matrix after
/// congruence diagonalization.
pub fn inertia(sym: &Matrix) -> (usize, usize) {
    let n = sym.rows();
    let mut a = sym.clone();
    let mut pos = 0;
    let mut neg = 0;
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        let _ = first;
        // pick a nonzero diagonal pivot, or create one from an off-diagonal entry
        let piv = active.iter().copied().find(|&k| !a.get(k, k).is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&r| active.iter().map(move |&c| (r, c))).find(
                    |&(r, c)| r != c && !a.get(r, c).is_zero(),
                );
                let Some((r, c)) = pair else { break };
                // row/col r += row/col c makes the (r, r) entry 2·a[r][c] + a[c][c]
                for j in 0..n {
                    let v = a.get(r, j) + a.get(c, j);
                    a.set(r, j, v);
                }
                for i in 0..n {
                    let v = a.get(i, r) + a.get(i, c);
                    a.set(i, r, v);
                }
                r
            }
        };
        let d = a.get(p, p).clone();
        if d.re > num_traits::Zero::zero() {
            pos += 1;
        } else {
            neg += 1;
        }
        let rest: Vec<usize> = active.iter().copied().filter(|&k| k != p).collect();
        for &i in &rest {
            let f = a.get(i, p) / &d;
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = a.get(i, j) - &(&f * a.get(p, j));
                a.set(i, j, v);
            }
            for r in 0..n {
                let v = a.get(r, i) - &(&f * a.get(r, p));
                a.set(r, i, v);
            }
        }
        active = rest;
    }
    (pos, neg)
}

/// Components of `x` by grade −2..2, each an eigenvector of `ad(E₁⁰)`.
pub fn grade_decompose(x: &[Gq]) -> BTreeMap<i32, Elt> {
    let mut out = BTreeMap::new();
    for g in -2..=2 {
        let mut c = vec_zero(DIM);
        for k in indices_of_grade(g) {
            c[k] = x[k].clone();
        }
        out.insert(g, c);
    }
    out
}

/// Partial complex structure on 𝔪⁻¹ + 𝔪⁰ + 𝔥⁰ + 𝔥¹: `X₁ ↦ X₂`, `X₂ ↦ −X₁`.
pub fn apply_j(x: &[Gq]) -> Result<Elt, So32Error> {
    for k in [E_M2, H_2] {
        if !x[k].is_zero() {
            return Err(So32Error::OutsideJDomain(REAL_LABELS[k]));
        }
    }
    Ok(apply_j_unchecked(x))
}

/// `J` with the 𝔪⁻² and 𝔥² coordinates sent to zero.
pub fn apply_j_unchecked(x: &[Gq]) -> Elt {
    let mut y = vec_zero(DIM);
    for (a, b) in PAIRS {
        y[b] = x[a].clone();
        y[a] = -&x[b];
    }
    y
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationKind {
    Plain,
    Semitone,
}

/// The filtration of 𝔪 + 𝔥 from the largest step down to `{0}`.
pub fn filtration_chain(kind: FiltrationKind) -> Vec<Subspace> {
    let span = |ks: &[usize]| Subspace::span(DIM, ks.iter().map(|&k| unit(k)).collect());
    let mut chain = vec![
        span(&(0..DIM).collect::<Vec<_>>()),
        span(&(1..DIM).collect::<Vec<_>>()),
        span(&(3..DIM).collect::<Vec<_>>()),
    ];
    if kind == FiltrationKind::Semitone {
        chain.push(span(&[H_0_1, H_0_2, H_1_1, H_1_2, H_2]));
    }
    chain.push(span(&[H_1_1, H_1_2, H_2]));
    chain.push(span(&[H_2]));
    chain.push(Subspace::zero(DIM));
    chain
}

/// The transcribed bracket table shipped with the crate.
pub const TABLE1_FIXTURE: &str = include_str!("../fixtures/table1.txt");

/// Row arguments in table order: `E₁⁰` followed by complexified elements.
pub const TABLE1_ROWS: [&str; 11] = [
    "E_1^0",
    "E^{2}",
    "E^{1(10)}",
    "E^{1(01)}",
    "E^{0(10)}",
    "E^{0(01)}",
    "e^{0(10)}",
    "e^{0(01)}",
    "e^{-1(10)}",
    "e^{-1(01)}",
    "e^{-2}",
];

pub const TABLE1_COLS: [&str; 10] = [
    "E^{2}",
    "E^{1(10)}",
    "E^{1(01)}",
    "E^{0(10)}",
    "E^{0(01)}",
    "e^{0(10)}",
    "e^{0(01)}",
    "e^{-1(10)}",
    "e^{-1(01)}",
    "e^{-2}",
];

pub fn table_element(label: &str) -> Result<Elt, So32Error> {
    if label == "E_1^0" {
        return Ok(unit(H_0_1));
    }
    label_index(label).map(complex_unit).ok_or_else(|| So32Error::UnknownLabel(label.into()))
}

/// Parses the fixture grid into `rows × cols` elements over 𝓑.
pub fn parse_table(text: &str) -> Result<Vec<Vec<Elt>>, So32Error> {
    let mut rows = BTreeMap::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, cells) =
            line.split_once(':').ok_or_else(|| So32Error::Fixture(format!("no ':' in {line:?}")))?;
        let r = TABLE1_ROWS
            .iter()
            .position(|&l| l == head.trim())
            .ok_or_else(|| So32Error::UnknownLabel(head.trim().into()))?;
        let parsed: Vec<Elt> =
            cells.split('|').map(parse_complex_combination).collect::<Result<_, _>>()?;
        if parsed.len() != TABLE1_COLS.len() {
            return Err(So32Error::Fixture(format!("row {} has {} cells", head.trim(), parsed.len())));
        }
        rows.insert(r, parsed);
    }
    if rows.len() != TABLE1_ROWS.len() {
        return Err(So32Error::Fixture(format!("expected 11 rows, found {}", rows.len())));
    }
    Ok(rows.into_values().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Match,
    /// Commutator value = factor · transcribed value, with factor ≠ 1.
    ScalarFactor(Gq),
    Unexplained,
}

#[derive(Clone, Debug)]
pub struct CellCheck {
    pub row: &'static str,
    pub col: &'static str,
    pub transcribed: Elt,
    pub commutator: Elt,
    pub status: CellStatus,
}

/// The factor `s` with `a = s·b` when one exists and both are nonzero.
pub fn scalar_factor(a: &[Gq], b: &[Gq]) -> Option<Gq> {
    let k = b.iter().position(|x| !x.is_zero())?;
    let s = &a[k] / &b[k];
    if s.is_zero() {
        return None;
    }
    let scaled: Vec<Gq> = b.iter().map(|x| x * &s).collect();
    (scaled.as_slice() == a).then_some(s)
}

pub fn crosscheck_table(table: &[Vec<Elt>]) -> Vec<CellCheck> {
    let mut out = Vec::new();
    for (r, row) in table.iter().enumerate() {
        let x = table_element(TABLE1_ROWS[r]).unwrap();
        for (c, cell) in row.iter().enumerate() {
            let y = table_element(TABLE1_COLS[c]).unwrap();
            let actual = bracket_by_matrices(&x, &y);
            let status = if &actual == cell {
                CellStatus::Match
            } else if let Some(s) = scalar_factor(&actual, cell) {
                CellStatus::ScalarFactor(s)
            } else {
                CellStatus::Unexplained
            };
            out.push(CellCheck {
                row: TABLE1_ROWS[r],
                col: TABLE1_COLS[c],
                transcribed: cell.clone(),
                commutator: actual,
                status,
            });
        }
    }
    out
}

/// Cross-check of the shipped fixture against matrix commutators.
pub fn table1_crosscheck() -> Vec<CellCheck> {
    crosscheck_table(&parse_table(TABLE1_FIXTURE).expect("shipped fixture parses"))
}

/// Table rendered from commutators, in fixture syntax.
pub fn render_table() -> String {
    let mut s = String::new();
    for r in TABLE1_ROWS {
        let x = table_element(r).unwrap();
        let cells: Vec<String> = TABLE1_COLS
            .iter()
            .map(|c| format_complex(&bracket(&x, &table_element(c).unwrap())))
            .collect();
        s.push_str(&format!("{r} : {}\n", cells.join(" | ")));
    }
    s
}

/// Complex conjugate of a label (`(10)` ↔ `(01)`).
pub fn conjugate_label(label: &str) -> String {
    if label.contains("(10)") {
        label.replace("(10)", "(01)")
    } else {
        label.replace("(01)", "(10)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Elt {
        parse_complex_combination(s).unwrap()
    }

    #[test]
    fn basis_entries() {
        let b = basis_matrices();
        assert_eq!(b.len(), 10);
        assert_eq!(*b[E_M2].get(3, 0), Gq::int(1));
        assert_eq!(*b[E_M2].get(4, 1), Gq::int(-1));
        assert_eq!(*b[H_2].get(0, 3), Gq::int(1));
        assert_eq!(*b[H_2].get(1, 4), Gq::int(-1));
        assert!(b.iter().all(is_skew));
        let flat: Vec<Vec<Gq>> = b.iter().map(|m| m.entries().to_vec()).collect();
        assert_eq!(Matrix::from_columns(25, &flat).rank(), 10);
    }

    #[test]
    fn sample_brackets() {
        assert_eq!(bracket(&unit(H_0_1), &unit(H_2)), c("2 E^{2}"));
        assert_eq!(bracket(&unit(H_2), &unit(E_M2)), c("1 E^{0(10)} + 1 E^{0(01)}"));
        let x = c("3 e^{-2} + 1/2-i e^{0(10)}");
        assert!(bracket(&x, &x).iter().all(Gq::is_zero));
    }

    #[test]
    fn complex_basis() {
        assert_eq!(to_complex(&unit(H_1_1)), to_complex(&c("1 E^{1(10)} + 1 E^{1(01)}")));
        assert_eq!(to_complex(&unit(E_M2)), unit(E_M2));
        assert_eq!(unit(E_M1_2), c("i e^{-1(10)} + -i e^{-1(01)}"));
        let x = c("1/3 e^{-2} + 2-i e^{-1(10)} + 7 E^{1(01)}");
        assert_eq!(from_complex(&to_complex(&x)), x);
    }

    #[test]
    fn grading_and_j() {
        let d = grade_decompose(&unit(E_M2));
        assert_eq!(d[&-2], unit(E_M2));
        let x = crate::exact::vec_add(&unit(E_M1_1), &unit(H_2));
        let d = grade_decompose(&x);
        assert_eq!(d[&-1], unit(E_M1_1));
        assert_eq!(d[&2], unit(H_2));
        assert!(d[&0].iter().all(Gq::is_zero));

        assert_eq!(apply_j(&unit(E_M1_1)).unwrap(), unit(E_M1_2));
        let jj = apply_j(&apply_j(&unit(E_0_1)).unwrap()).unwrap();
        assert_eq!(jj, crate::exact::vec_scale(&unit(E_0_1), &Gq::int(-1)));
        let y = crate::exact::vec_add(&unit(H_1_1), &unit(E_M1_2));
        let expect = crate::exact::vec_sub(&unit(H_1_2), &unit(E_M1_1));
        assert_eq!(apply_j(&y).unwrap(), expect);
        assert!(apply_j(&unit(E_M2)).is_err());
    }

    #[test]
    fn killing_values() {
        assert_eq!(killing(&unit(H_0_1), &unit(H_0_1)), Gq::int(12));
        assert!(killing(&unit(E_M2), &unit(E_M1_1)).is_zero());
        assert!(!killing(&unit(E_M2), &unit(H_2)).is_zero());
        assert_eq!(inertia(killing_gram()), (6, 4));
    }

    #[test]
    fn filtrations() {
        let f: Vec<usize> = filtration_chain(FiltrationKind::Plain).iter().map(Subspace::dim).collect();
        assert_eq!(f, vec![10, 9, 7, 3, 1, 0]);
        let s = filtration_chain(FiltrationKind::Semitone);
        assert_eq!(s.len(), 7);
        assert_eq!(s[2].dim() - s[3].dim(), 2);
    }

    #[test]
    fn fixture_round_trip_syntax() {
        let t = parse_table(&render_table()).unwrap();
        assert!(crosscheck_table(&t).iter().all(|c| c.status == CellStatus::Match));
    }
}
