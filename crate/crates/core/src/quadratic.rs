//! Quadratic algebras T(V)/(R): graded components, multiplication, the
//! quadratic dual and Hilbert-series certificates.

use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{axpy, is_zero_vec, rref, sub_vec, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::tensor::word_of;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPresentation {
    field: Field,
    generators: Vec<String>,
    relations: Subspace,
}

impl QuadraticPresentation {
    pub fn new(field: &Field, generators: Vec<String>, relations: Subspace) -> Result<Self> {
        let g = generators.len();
        for (k, name) in generators.iter().enumerate() {
            if generators[..k].contains(name) {
                return Err(Error::DimensionMismatch(format!(
                    "duplicate generator name `{name}`"
                )));
            }
        }
        if relations.ambient_dim() != g * g {
            return Err(Error::AmbientMismatch(g * g, relations.ambient_dim()));
        }
        if !relations.field().same(field) {
            return Err(Error::FieldMismatch);
        }
        Ok(QuadraticPresentation {
            field: field.clone(),
            generators,
            relations,
        })
    }

    /// Presentation from relation tensors given as vectors in V⊗V.
    pub fn from_relations(field: &Field, generators: &[&str], rels: Vec<Vector>) -> Result<Self> {
        let g = generators.len();
        let relations = Subspace::from_vectors(field, g * g, rels)?;
        QuadraticPresentation::new(field, generators.iter().map(|s| s.to_string()).collect(), relations)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// The same generators with `extra` added to the relations.
    pub fn with_relation(&self, extra: &[FieldElement]) -> Result<Self> {
        let add = Subspace::from_vectors(&self.field, self.relations.ambient_dim(), vec![extra.to_vec()])?;
        QuadraticPresentation::new(&self.field, self.generators.clone(), self.relations.sum(&add)?)
    }

    /// T(V*)/(R^⊥) under the pairing ⟨a⊗b, f⊗g⟩ = f(a)·g(b).
    pub fn quadratic_dual(&self) -> QuadraticPresentation {
        let names = self.generators.iter().map(|n| dual_name(n)).collect();
        QuadraticPresentation {
            field: self.field.clone(),
            generators: names,
            relations: self.relations.annihilator(),
        }
    }

    /// Renders a tensor of V^⊗n as a sum of words, e.g. `x*z + z*x`.
    pub fn tensor_string(&self, v: &[FieldElement], n: usize) -> String {
        let g = self.num_generators();
        let terms = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(flat, c)| {
            let word: Vec<&str> = word_of(flat, g, n)
                .into_iter()
                .map(|k| self.generators[k].as_str())
                .collect();
            (c.clone(), word.join("*"))
        });
        render_terms(terms)
    }
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{name}'"),
    }
}

pub(crate) fn render_terms(terms: impl Iterator<Item = (FieldElement, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let neg = c.to_string().starts_with('-');
        let body = if neg { (-&c).to_string() } else { c.to_string() };
        let compound = body.contains(' ');
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = if compound { format!("({body})") } else { body };
        match (body.as_str(), mono.is_empty()) {
            (_, true) => out.push_str(&body),
            ("1", false) => out.push_str(&mono),
            (_, false) => {
                out.push_str(&body);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A_n with its standard-word basis.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub degree: usize,
    /// Basis words in lexicographic order: complement of the pivot words of
    /// the ideal component.
    pub basis_words: Vec<Vec<usize>>,
    /// Entry `b·g + v`: coordinates in A_n of (basis word b of A_{n−1})·v.
    right_mult: Vec<Vector>,
}

impl GradedComponent {
    pub fn dim(&self) -> usize {
        self.basis_words.len()
    }
}

/// Lazily computed graded components of a quadratic algebra. Components are
/// built once and shared; concurrent readers see complete entries only.
#[derive(Debug)]
pub struct GradedAlgebra {
    presentation: QuadraticPresentation,
    components: RwLock<Vec<Arc<GradedComponent>>>,
}

impl Clone for GradedAlgebra {
    fn clone(&self) -> Self {
        GradedAlgebra {
            presentation: self.presentation.clone(),
            components: RwLock::new(self.components.read().unwrap().clone()),
        }
    }
}

impl GradedAlgebra {
    pub fn new(presentation: QuadraticPresentation) -> Self {
        let field = presentation.field.clone();
        let g = presentation.num_generators();
        let a0 = GradedComponent {
            degree: 0,
            basis_words: vec![Vec::new()],
            right_mult: Vec::new(),
        };
        let a1 = GradedComponent {
            degree: 1,
            basis_words: (0..g).map(|v| vec![v]).collect(),
            right_mult: (0..g).map(|v| unit_vec(&field, g, v)).collect(),
        };
        GradedAlgebra {
            presentation,
            components: RwLock::new(vec![Arc::new(a0), Arc::new(a1)]),
        }
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.presentation
    }

    pub fn field(&self) -> &Field {
        &self.presentation.field
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.num_generators()
    }

    pub fn component(&self, n: usize) -> Arc<GradedComponent> {
        if let Some(c) = self.components.read().unwrap().get(n) {
            return c.clone();
        }
        let mut comps = self.components.write().unwrap();
        while comps.len() <= n {
            let next = self.build_component(&comps[comps.len() - 1], &comps[comps.len() - 2]);
            comps.push(Arc::new(next));
        }
        comps[n].clone()
    }

    fn build_component(&self, prev: &GradedComponent, prev2: &GradedComponent) -> GradedComponent {
        let field = self.field();
        let g = self.num_generators();
        let ambient = prev.dim() * g;
        let mut rows = Vec::new();
        for a in 0..prev2.dim() {
            for r in self.presentation.relations.basis() {
                let mut row = zero_vec(field, ambient);
                for (jk, c) in r.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (j, k) = (jk / g, jk % g);
                    let av = &prev.right_mult[a * g + j];
                    for (b, x) in av.iter().enumerate() {
                        if !x.is_zero() {
                            row[b * g + k] = &row[b * g + k] + &(c * x);
                        }
                    }
                }
                rows.push(row);
            }
        }
        let red = rref(&Matrix::from_rows(field, ambient, rows).expect("uniform rows"));
        let mut pivot_row = vec![None; ambient];
        for (r, &p) in red.pivots.iter().enumerate() {
            pivot_row[p] = Some(r);
        }
        let standard: Vec<usize> = (0..ambient).filter(|&q| pivot_row[q].is_none()).collect();
        let basis_words = standard
            .iter()
            .map(|&q| {
                let mut w = prev.basis_words[q / g].clone();
                w.push(q % g);
                w
            })
            .collect();
        let right_mult = (0..ambient)
            .map(|q| match pivot_row[q] {
                None => {
                    let pos = standard.binary_search(&q).unwrap();
                    unit_vec(field, standard.len(), pos)
                }
                Some(r) => standard.iter().map(|&s| -red.matrix.get(r, s)).collect(),
            })
            .collect();
        GradedComponent {
            degree: prev.degree + 1,
            basis_words,
            right_mult,
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.component(n).dim()
    }

    /// [dim A_0, ..., dim A_N]
    pub fn hilbert(&self, upto: usize) -> Vec<usize> {
        (0..=upto).map(|n| self.dim(n)).collect()
    }

    pub fn unit(&self) -> Vector {
        vec![self.field().one()]
    }

    pub fn generator(&self, v: usize) -> Vector {
        unit_vec(self.field(), self.num_generators(), v)
    }

    /// `elem ∈ A_m` times the generator `v`.
    pub fn right_mul_gen(&self, elem: &[FieldElement], m: usize, v: usize) -> Vector {
        let g = self.num_generators();
        let next = self.component(m + 1);
        let mut out = zero_vec(self.field(), next.dim());
        for (b, c) in elem.iter().enumerate() {
            axpy(&mut out, c, &next.right_mult[b * g + v]);
        }
        out
    }

    pub fn mul_word(&self, elem: &[FieldElement], m: usize, word: &[usize]) -> Vector {
        let mut cur = elem.to_vec();
        for (k, &v) in word.iter().enumerate() {
            cur = self.right_mul_gen(&cur, m + k, v);
        }
        cur
    }

    /// Coordinates in A_n of a word of length n.
    pub fn word_coords(&self, word: &[usize]) -> Vector {
        self.mul_word(&self.unit(), 0, word)
    }

    /// Image in A_n of a tensor in V^⊗n.
    pub fn reduce_tensor(&self, tensor: &[FieldElement], n: usize) -> Vector {
        let g = self.num_generators();
        let mut out = zero_vec(self.field(), self.dim(n));
        for (flat, c) in tensor.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.word_coords(&word_of(flat, g, n)));
            }
        }
        out
    }

    /// Product of `a ∈ A_m` and `b ∈ A_n`.
    pub fn multiply(&self, a: &[FieldElement], m: usize, b: &[FieldElement], n: usize) -> Vector {
        let comp = self.component(n);
        let mut out = zero_vec(self.field(), self.dim(m + n));
        for (coef, word) in b.iter().zip(&comp.basis_words) {
            if !coef.is_zero() {
                axpy(&mut out, coef, &self.mul_word(a, m, word));
            }
        }
        out
    }

    /// Matrix of `x ↦ elem·x` (or `x·elem`) from A_n to A_{n+m}, columns
    /// indexed by the basis of A_n.
    pub fn multiplication_matrix(&self, elem: &[FieldElement], m: usize, n: usize, left: bool) -> Matrix {
        let field = self.field();
        let src = self.dim(n);
        let cols: Vec<Vector> = (0..src)
            .map(|k| {
                let e = unit_vec(field, src, k);
                if left {
                    self.multiply(elem, m, &e, n)
                } else {
                    self.multiply(&e, n, elem, m)
                }
            })
            .collect();
        Matrix::from_rows(field, self.dim(n + m), cols)
            .expect("uniform columns")
            .transpose()
    }

    pub fn element_string(&self, elem: &[FieldElement], n: usize) -> String {
        let comp = self.component(n);
        let names = self.presentation.generators();
        render_terms(elem.iter().zip(&comp.basis_words).filter(|(c, _)| !c.is_zero()).map(|(c, w)| {
            let word: Vec<&str> = w.iter().map(|&k| names[k].as_str()).collect();
            (c.clone(), word.join("*"))
        }))
    }
}

pub fn graded_dim(p: &QuadraticPresentation, n: usize) -> usize {
    GradedAlgebra::new(p.clone()).dim(n)
}

pub fn hilbert(p: &QuadraticPresentation, upto: usize) -> Vec<usize> {
    GradedAlgebra::new(p.clone()).hilbert(upto)
}

pub fn multiply(p: &QuadraticPresentation, a: &[FieldElement], m: usize, b: &[FieldElement], n: usize) -> Vector {
    GradedAlgebra::new(p.clone()).multiply(a, m, b, n)
}

pub fn quadratic_dual(p: &QuadraticPresentation) -> QuadraticPresentation {
    p.quadratic_dual()
}

/// Exact centrality of a degree-2 tensor: w·v − v·w vanishes in degree 3 for
/// every generator v. This suffices because the algebra is generated in
/// degree 1.
pub fn is_central_deg2(alg: &GradedAlgebra, w: &[FieldElement]) -> Result<bool> {
    Ok(non_commuting_generator(alg, w)?.is_none())
}

/// First generator that fails to commute with `w`.
pub fn non_commuting_generator(alg: &GradedAlgebra, w: &[FieldElement]) -> Result<Option<usize>> {
    let g = alg.num_generators();
    if w.len() != g * g {
        return Err(Error::AmbientMismatch(g * g, w.len()));
    }
    let w2 = alg.reduce_tensor(w, 2);
    for v in 0..g {
        let gen = alg.generator(v);
        let wv = alg.multiply(&w2, 2, &gen, 1);
        let vw = alg.multiply(&gen, 1, &w2, 2);
        if !is_zero_vec(&sub_vec(&wv, &vw)) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub degree: usize,
    pub expected: i64,
    pub actual: i64,
    pub pass: bool,
}

/// A finite list of per-degree checks: evidence up to a horizon, never a proof.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub horizon: usize,
    pub checks: Vec<DegreeCheck>,
    pub passed: bool,
    pub first_failure: Option<usize>,
}

impl Certificate {
    pub fn from_checks(name: &str, horizon: usize, checks: Vec<DegreeCheck>) -> Self {
        let first_failure = checks.iter().find(|c| !c.pass).map(|c| c.degree);
        Certificate {
            name: name.to_string(),
            horizon,
            passed: first_failure.is_none(),
            first_failure,
            checks,
        }
    }

    pub fn check(degree: usize, expected: i64, actual: i64) -> DegreeCheck {
        DegreeCheck {
            degree,
            expected,
            actual,
            pass: expected == actual,
        }
    }
}

/// Checks dim (A/wA)_n = dim A_n − dim A_{n−2} for 2 ≤ n ≤ N.
pub fn is_regular_deg2(alg: &GradedAlgebra, w: &[FieldElement], upto: usize) -> Result<Certificate> {
    let quotient = GradedAlgebra::new(alg.presentation().with_relation(w)?);
    let checks = (2..=upto)
        .map(|n| {
            let expected = alg.dim(n) as i64 - alg.dim(n - 2) as i64;
            Certificate::check(n, expected, quotient.dim(n) as i64)
        })
        .collect();
    Ok(Certificate::from_checks("regularity of the central element", upto, checks))
}

/// Coefficients of H_A(t)·H_{A^!}(−t) up to t^N.
pub fn koszul_product_series(alg: &GradedAlgebra, dual: &GradedAlgebra, upto: usize) -> Vec<i64> {
    let a = alg.hilbert(upto);
    let b = dual.hilbert(upto);
    (0..=upto)
        .map(|n| {
            (0..=n)
                .map(|k| {
                    let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
                    sign * a[k] as i64 * b[n - k] as i64
                })
                .sum()
        })
        .collect()
}

/// Necessary condition for Koszulity: H_A(t)·H_{A^!}(−t) = 1 up to t^N.
pub fn koszul_numeric_check(p: &QuadraticPresentation, upto: usize) -> Certificate {
    let alg = GradedAlgebra::new(p.clone());
    let dual = GradedAlgebra::new(p.quadratic_dual());
    koszul_certificate(&alg, &dual, upto)
}

pub fn koszul_certificate(alg: &GradedAlgebra, dual: &GradedAlgebra, upto: usize) -> Certificate {
    let coeffs = koszul_product_series(alg, dual, upto);
    let checks = coeffs
        .iter()
        .enumerate()
        .map(|(n, &c)| Certificate::check(n, i64::from(n == 0), c))
        .collect();
    Certificate::from_checks("H_A(t)·H_A!(−t) = 1", upto, checks)
}
