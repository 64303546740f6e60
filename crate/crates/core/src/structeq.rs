//! Exterior algebra over the model coframe, the flat Maurer–Cartan
//! equations, and the linear constraints that the normalizations impose on
//! structure functions.
//!
//! The coframe `(θ^{-2}, θ^{-1(10)}, …, ω^{2})` is dual to the complexified
//! basis, in the same order as the complexified labels.

use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{vec_zero, Gq, Matrix, Subspace};
use crate::prolong::{complex_coord, frame_conditions, normalization_space, FrameFunctional};
use crate::cochain::{CochainSpace, ARGS};
use crate::so32::{self, bracket, complex_unit, from_complex, to_complex, unit, DIM, PAIRS};

pub const COFRAME_LABELS: [&str; DIM] = [
    "θ^{-2}",
    "θ^{-1(10)}",
    "θ^{-1(01)}",
    "θ^{0(10)}",
    "θ^{0(01)}",
    "ω^{0(10)}",
    "ω^{0(01)}",
    "ω^{1(10)}",
    "ω^{1(01)}",
    "ω^{2}",
];

/// Short index labels used inside structure-function symbols.
pub const INDEX_LABELS: [&str; DIM] =
    ["-2", "-1(10)", "-1(01)", "0(10)", "0(01)", "0(10)", "0(01)", "1(10)", "1(01)", "2"];

pub fn conj_index(k: usize) -> usize {
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

/// Sorts indices, returning the sign of the permutation, or `None` on a repeat.
fn canonical(mut idx: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len().saturating_sub(1 + i) {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, idx))
}

/// A homogeneous exterior form, stored on strictly increasing index tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Form {
    pub degree: usize,
    pub terms: BTreeMap<Vec<usize>, Gq>,
}

pub type TwoForm = Form;

impl Form {
    pub fn zero(degree: usize) -> Self {
        Form { degree, terms: BTreeMap::new() }
    }

    pub fn one_form(k: usize) -> Self {
        let mut f = Form::zero(1);
        f.add_term(vec![k], Gq::one());
        f
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: Gq) {
        assert_eq!(idx.len(), self.degree);
        if c.is_zero() {
            return;
        }
        let Some((sign, idx)) = canonical(idx) else { return };
        let c = &c * &Gq::int(sign);
        let slot = self.terms.entry(idx.clone()).or_insert_with(Gq::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn coefficient(&self, idx: &[usize]) -> Gq {
        match canonical(idx.to_vec()) {
            Some((sign, i)) => self.terms.get(&i).map_or_else(Gq::zero, |c| c * &Gq::int(sign)),
            None => Gq::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Form) -> Form {
        assert_eq!(self.degree, o.degree);
        let mut f = self.clone();
        for (i, c) in &o.terms {
            f.add_term(i.clone(), c.clone());
        }
        f
    }

    pub fn scale(&self, s: &Gq) -> Form {
        let mut f = Form::zero(self.degree);
        for (i, c) in &self.terms {
            f.add_term(i.clone(), c * s);
        }
        f
    }

    pub fn wedge(&self, o: &Form) -> Form {
        let mut f = Form::zero(self.degree + o.degree);
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                let mut idx = i.clone();
                idx.extend(j);
                f.add_term(idx, a * b);
            }
        }
        f
    }

    /// Formal conjugate: conjugate coefficients and swap `(10)` with `(01)`.
    pub fn conj(&self) -> Form {
        let mut f = Form::zero(self.degree);
        for (i, c) in &self.terms {
            f.add_term(i.iter().map(|&k| conj_index(k)).collect(), c.conj());
        }
        f
    }

    /// Exterior derivative, using `d` on generators given by `d1`.
    pub fn d(&self, d1: &impl Fn(usize) -> Form) -> Form {
        let mut f = Form::zero(self.degree + 1);
        for (idx, c) in &self.terms {
            for pos in 0..idx.len() {
                let sign = if pos % 2 == 0 { Gq::one() } else { Gq::int(-1) };
                let mut piece = Form { degree: 0, terms: BTreeMap::from([(vec![], &sign * c)]) };
                for (q, &j) in idx.iter().enumerate() {
                    let factor = if q == pos { d1(j) } else { Form::one_form(j) };
                    piece = piece.wedge(&factor);
                }
                f = f.add(&piece);
            }
        }
        f
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(i, c)| {
                let w: Vec<&str> = i.iter().map(|&k| COFRAME_LABELS[k]).collect();
                format!("{c} * {}", w.join(" ∧ "))
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Structure constants over the complexified basis:
/// `[e_b, e_c] = Σ_a c[a][b][c] e_a`.
pub fn complex_structure_constants() -> Vec<Vec<Vec<Gq>>> {
    let mut c = vec![vec![vec![Gq::zero(); DIM]; DIM]; DIM];
    for b in 0..DIM {
        for cc in 0..DIM {
            let v = to_complex(&bracket(&complex_unit(b), &complex_unit(cc)));
            for a in 0..DIM {
                c[a][b][cc] = v[a].clone();
            }
        }
    }
    c
}

/// `d ω^a = −½ Σ c^a_{bc} ω^b ∧ ω^c`.
pub fn maurer_cartan(a: usize) -> TwoForm {
    let c = complex_structure_constants();
    let mut f = Form::zero(2);
    for b in 0..DIM {
        for cc in b + 1..DIM {
            f.add_term(vec![b, cc], -c[a][b][cc].clone());
        }
    }
    f
}

pub fn maurer_cartan_all() -> Vec<TwoForm> {
    (0..DIM).map(maurer_cartan).collect()
}

/// `d(dω^a)` for every coframe index.
pub fn d_squared() -> Vec<Form> {
    let mc = maurer_cartan_all();
    let d1 = |k: usize| mc[k].clone();
    mc.iter().map(|f| f.d(&d1)).collect()
}

/// A displayed flat structure equation `dω^a + Σ coef ω^b ∧ ω^c = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureEquation {
    pub name: String,
    pub index: usize,
    pub terms: Vec<(Gq, usize, usize)>,
}

impl StructureEquation {
    pub fn conj(&self) -> Self {
        StructureEquation {
            name: format!("conj {}", self.name),
            index: conj_index(self.index),
            terms: self.terms.iter().map(|(c, b, d)| (c.conj(), conj_index(*b), conj_index(*d))).collect(),
        }
    }

    pub fn extra(&self) -> TwoForm {
        let mut f = Form::zero(2);
        for (c, b, d) in &self.terms {
            f.add_term(vec![*b, *d], c.clone());
        }
        f
    }

    pub fn lhs(&self) -> TwoForm {
        maurer_cartan(self.index).add(&self.extra())
    }
}

fn g(s: &str) -> Gq {
    s.parse().expect("scalar literal")
}

/// The six displayed equations followed by the conjugates of the four
/// complex ones.
pub fn displayed_equations() -> Vec<StructureEquation> {
    let eq = |index: usize, terms: &[(&str, usize, usize)]| StructureEquation {
        name: format!("d{}", COFRAME_LABELS[index]),
        index,
        terms: terms.iter().map(|(c, b, d)| (g(c), *b, *d)).collect(),
    };
    let six = vec![
        eq(0, &[("1/2*i", 1, 2), ("-1", 5, 0), ("-1", 6, 0)]),
        eq(1, &[("-1", 3, 2), ("-1", 5, 1), ("i", 7, 0)]),
        eq(3, &[("-1", 5, 3), ("1", 6, 3), ("1/2", 7, 1)]),
        eq(5, &[("-1", 3, 4), ("1/2", 8, 1), ("1", 9, 0)]),
        eq(7, &[("-1", 8, 3), ("-1", 7, 6), ("i", 9, 1)]),
        eq(9, &[("-1/2*i", 7, 8), ("1", 5, 9), ("1", 6, 9)]),
    ];
    let mut out = six.clone();
    for e in &six[1..5] {
        let mut c = e.conj();
        c.name = format!("d{}", COFRAME_LABELS[c.index]);
        out.push(c);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationReport {
    pub name: String,
    /// Nonzero coefficients of the left-hand side after substitution.
    pub residual: Vec<(String, Gq)>,
}

impl EquationReport {
    pub fn passes(&self) -> bool {
        self.residual.is_empty()
    }
}

fn report(eqs: &[StructureEquation]) -> Vec<EquationReport> {
    eqs.iter()
        .map(|e| {
            let lhs = e.lhs();
            let residual = lhs
                .terms
                .iter()
                .map(|(i, c)| (format!("{} ∧ {}", COFRAME_LABELS[i[0]], COFRAME_LABELS[i[1]]), c.clone()))
                .collect();
            EquationReport { name: e.name.clone(), residual }
        })
        .collect()
}

pub fn verify_structure_equations() -> Vec<EquationReport> {
    report(&displayed_equations())
}

/// The same check after adding `coef · ω^b ∧ ω^c` to equation `eq`.
pub fn verify_with_injected_term(eq: usize, term: (Gq, usize, usize)) -> Vec<EquationReport> {
    let mut eqs = displayed_equations();
    eqs[eq].terms.push(term);
    report(&eqs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    T,
    R,
}

/// `T^α_{β|γ}` (values in 𝔪) or `R^a_{β|γ}` (values in 𝔥), with `β < γ`
/// among the 𝔪 coframe indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StructureFunctionSymbol {
    pub upper: usize,
    pub lower: (usize, usize),
}

impl StructureFunctionSymbol {
    pub fn kind(&self) -> SymbolKind {
        if so32::is_in_m(self.upper) {
            SymbolKind::T
        } else {
            SymbolKind::R
        }
    }

    pub fn conj(&self) -> (i64, Self) {
        let (b, c) = (conj_index(self.lower.0), conj_index(self.lower.1));
        let (sign, lower) = if b < c { (1, (b, c)) } else { (-1, (c, b)) };
        (sign, StructureFunctionSymbol { upper: conj_index(self.upper), lower })
    }

    fn position(&self) -> usize {
        self.upper * 10 + lower_pairs().iter().position(|&p| p == self.lower).unwrap()
    }

    fn from_position(p: usize) -> Self {
        StructureFunctionSymbol { upper: p / 10, lower: lower_pairs()[p % 10] }
    }
}

impl fmt::Display for StructureFunctionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind() {
            SymbolKind::T => "T",
            SymbolKind::R => "R",
        };
        write!(
            f,
            "{k}^{{{}}}_{{{}|{}}}",
            INDEX_LABELS[self.upper], INDEX_LABELS[self.lower.0], INDEX_LABELS[self.lower.1]
        )
    }
}

fn lower_pairs() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            out.push((i, j));
        }
    }
    out
}

pub const SYMBOL_COUNT: usize = 100;

/// `(sign, symbol)` for an arbitrary ordered pair of lower indices.
pub fn symbol(upper: usize, b: usize, c: usize) -> Option<(i64, StructureFunctionSymbol)> {
    match b.cmp(&c) {
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Less => Some((1, StructureFunctionSymbol { upper, lower: (b, c) })),
        std::cmp::Ordering::Greater => Some((-1, StructureFunctionSymbol { upper, lower: (c, b) })),
    }
}

/// A linear relation `Σ cᵢ Sᵢ = 0` on the structure functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    pub source: String,
    pub coeffs: Vec<Gq>,
}

impl LinearRelation {
    pub fn terms(&self) -> Vec<(Gq, StructureFunctionSymbol)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (c.clone(), StructureFunctionSymbol::from_position(p)))
            .collect()
    }

    /// Single-symbol relation, if this is a vanishing condition.
    pub fn vanishing(&self) -> Option<StructureFunctionSymbol> {
        let t = self.terms();
        (t.len() == 1).then(|| t[0].1)
    }

    pub fn conj(&self) -> LinearRelation {
        let mut coeffs = vec_zero(SYMBOL_COUNT);
        for (c, s) in self.terms() {
            let (sign, s2) = s.conj();
            coeffs[s2.position()] += &(&c.conj() * &Gq::int(sign));
        }
        LinearRelation { source: format!("conj {}", self.source), coeffs }
    }

    pub fn eval(&self, values: &[Gq]) -> Gq {
        self.coeffs.iter().zip(values).fold(Gq::zero(), |acc, (a, b)| &acc + &(a * b))
    }
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.terms().iter().map(|(c, s)| format!("{c} * {s}")).collect();
        write!(f, "{} = 0", if t.is_empty() { "0".into() } else { t.join(" + ") })
    }
}

fn frame_relation(fc: &FrameFunctional, step: usize) -> LinearRelation {
    let mut coeffs = vec_zero(SYMBOL_COUNT);
    let (sign, s) = symbol(fc.component, fc.x, fc.y).expect("distinct arguments");
    coeffs[s.position()] = Gq::int(sign);
    LinearRelation { source: format!("frame condition {} (step {step})", fc.name), coeffs }
}

/// Relation on symbols from a real functional `φ` on the local coordinates
/// of C²ₖ (real arguments from 𝔪₋, real values over 𝓑).
fn cochain_relation(space: &CochainSpace, phi: &[Gq], source: String) -> LinearRelation {
    let mut coeffs = vec_zero(SYMBOL_COUNT);
    for (slot, &pos) in space.positions.iter().enumerate() {
        if phi[slot].is_zero() {
            continue;
        }
        let (mi, t) = (pos / DIM, pos % DIM);
        let (i, j) = [(0, 1), (0, 2), (1, 2)][mi];
        let (ci, cj) = (to_complex(&unit(ARGS[i])), to_complex(&unit(ARGS[j])));
        for a in 0..DIM {
            // real coordinate t of a vector with complex coordinates u: from_complex(u)[t]
            let mut ua = vec_zero(DIM);
            ua[a] = Gq::one();
            let m = from_complex(&ua)[t].clone();
            if m.is_zero() {
                continue;
            }
            for b in 0..3 {
                for c in 0..3 {
                    let w = &(&m * &ci[ARGS[b]]) * &cj[ARGS[c]];
                    if w.is_zero() {
                        continue;
                    }
                    if let Some((sign, s)) = symbol(a, ARGS[b], ARGS[c]) {
                        coeffs[s.position()] += &(&(&phi[slot] * &w) * &Gq::int(sign));
                    }
                }
            }
        }
    }
    LinearRelation { source, coeffs }
}

#[derive(Clone, Debug)]
pub struct ConstraintCatalog {
    pub relations: Vec<LinearRelation>,
    /// `(source group, number of independent relations)`.
    pub counts: Vec<(String, usize)>,
}

fn rank(rels: &[LinearRelation]) -> usize {
    if rels.is_empty() {
        return 0;
    }
    Matrix::from_rows(rels.iter().map(|r| r.coeffs.clone()).collect()).rank()
}

impl ConstraintCatalog {
    pub fn span(&self) -> Subspace {
        Subspace::span(SYMBOL_COUNT, self.relations.iter().map(|r| r.coeffs.clone()).collect())
    }

    pub fn contains_vanishing(&self, s: &StructureFunctionSymbol) -> bool {
        let mut v = vec_zero(SYMBOL_COUNT);
        v[s.position()] = Gq::one();
        self.span().contains(&v).unwrap()
    }

    pub fn is_conjugation_symmetric(&self) -> bool {
        let conj = Subspace::span(SYMBOL_COUNT, self.relations.iter().map(|r| r.conj().coeffs).collect());
        conj == self.span()
    }
}

pub fn constraint_catalog() -> ConstraintCatalog {
    let mut relations = Vec::new();
    let mut counts = Vec::new();
    for step in 1..=3 {
        let rels: Vec<LinearRelation> =
            frame_conditions(step).unwrap().iter().map(|f| frame_relation(f, step)).collect();
        counts.push((format!("frame conditions step {step}"), rank(&rels)));
        relations.extend(rels);
    }
    for k in 1..=3i32 {
        let space = CochainSpace::new(2, k).unwrap();
        let normal = normalization_space(k).unwrap();
        let rels: Vec<LinearRelation> = normal
            .annihilator()
            .basis()
            .iter()
            .map(|phi| cochain_relation(&space, phi, format!("normalization degree {k}")))
            .collect();
        counts.push((format!("normalization degree {k}"), rank(&rels)));
        relations.extend(rels);
    }
    ConstraintCatalog { relations, counts }
}

/// Symbol values of a full torsion's deviation from the flat bracket.
pub fn symbol_values(t: &crate::prolong::FullTorsion) -> Vec<Gq> {
    let mut out = vec_zero(SYMBOL_COUNT);
    for (b, c) in lower_pairs() {
        let v = &t.eval(&complex_unit(b), &complex_unit(c));
        let flat = bracket(&complex_unit(b), &complex_unit(c));
        for a in 0..DIM {
            let s = StructureFunctionSymbol { upper: a, lower: (b, c) };
            out[s.position()] = &complex_coord(v, a) - &complex_coord(&flat, a);
        }
    }
    out
}
