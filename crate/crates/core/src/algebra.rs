//! Finite-dimensional associative algebras given by structure constants:
//! radical, center, minimal polynomials, Wedderburn blocks and primitive
//! idempotents.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{
    axpy, is_zero_vec, kernel, scale_vec, solve, sub_vec, unit_vec, zero_vec, Matrix, Subspace,
    Vector,
};
use crate::poly::{roots_in_field, Polynomial};

/// Default bound on generic-element retries.
pub const DEFAULT_RETRIES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDimAlgebra {
    field: Field,
    labels: Vec<String>,
    /// `table[i][j]` holds the coordinates of bᵢ·bⱼ.
    table: Vec<Vec<Vector>>,
    unit: Vector,
}

impl FiniteDimAlgebra {
    /// Validates associativity on all basis triples and the two-sided unit.
    pub fn new(field: &Field, labels: Vec<String>, table: Vec<Vec<Vector>>, unit: Vector) -> Result<Self> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::DimensionMismatch("structure constants".into()));
        }
        if unit.len() != n {
            return Err(Error::DimensionMismatch("unit vector".into()));
        }
        let alg = FiniteDimAlgebra {
            field: field.clone(),
            labels,
            table,
            unit,
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = alg.mul(&alg.table[i][j], &alg.basis(k));
                    let right = alg.mul(&alg.basis(i), &alg.table[j][k]);
                    if left != right {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            let b = alg.basis(i);
            if alg.mul(&alg.unit, &b) != b || alg.mul(&b, &alg.unit) != b {
                return Err(Error::BadUnit);
            }
        }
        Ok(alg)
    }

    /// The algebra spanned by square matrices under matrix product. The basis
    /// is the reduced row basis of the flattened span, so it may differ from
    /// the matrices passed in.
    pub fn from_matrices(field: &Field, mats: &[Matrix]) -> Result<(Self, Vec<Matrix>)> {
        let size = mats.first().map_or(0, |m| m.nrows());
        let span = Subspace::from_vectors(field, size * size, mats.iter().map(|m| m.flatten()).collect())?;
        let basis: Vec<Matrix> = span
            .basis()
            .iter()
            .map(|v| Matrix::from_flat(field, size, size, v))
            .collect();
        let coords = |m: &Matrix| -> Result<Vector> {
            span.coordinates(&m.flatten())?.ok_or_else(|| {
                Error::ContainmentViolated("matrix span is not closed under products".into())
            })
        };
        let mut table = Vec::with_capacity(basis.len());
        for a in &basis {
            let row = basis.iter().map(|b| coords(&a.mul(b)?)).collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        let unit = span
            .coordinates(&Matrix::identity(field, size).flatten())?
            .ok_or(Error::BadUnit)?;
        let labels = (1..=basis.len()).map(|k| format!("f{k}")).collect();
        Ok((FiniteDimAlgebra::new(field, labels, table, unit)?, basis))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis(&self, k: usize) -> Vector {
        unit_vec(&self.field, self.dim(), k)
    }

    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vector {
        let mut out = zero_vec(&self.field, self.dim());
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    axpy(&mut out, &(x * y), &self.table[i][j]);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a`; column k is a·b_k.
    pub fn left_matrix(&self, a: &[FieldElement]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|k| self.mul(a, &self.basis(k))).collect();
        Matrix::from_rows(&self.field, self.dim(), cols)
            .expect("square")
            .transpose()
    }

    /// (x, y) ↦ tr(L_x L_y) on the basis.
    pub fn trace_form(&self) -> Matrix {
        let n = self.dim();
        let traces: Vector = (0..n)
            .map(|l| {
                let mut t = self.field.zero();
                for k in 0..n {
                    t = &t + &self.table[l][k][k];
                }
                t
            })
            .collect();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| crate::linalg::dot_in(&self.field, &self.table[i][j], &traces))
                    .collect()
            })
            .collect();
        Matrix::from_rows(&self.field, n, rows).expect("square")
    }

    /// Jacobson radical, as the kernel of the trace form (characteristic zero).
    pub fn radical(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::zero(&self.field, 0);
        }
        kernel(&self.trace_form())
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical().dim() == 0
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            // Σ_j a_j (b_j b_i − b_i b_j) = 0, one row per output coordinate.
            for out in 0..n {
                rows.push(
                    (0..n)
                        .map(|j| &self.table[j][i][out] - &self.table[i][j][out])
                        .collect(),
                );
            }
        }
        kernel(&Matrix::from_rows(&self.field, n, rows).expect("uniform rows"))
    }

    pub fn min_poly(&self, a: &[FieldElement]) -> Polynomial {
        self.min_poly_with_unit(a, &self.unit)
    }

    /// Minimal polynomial of `a` inside a corner algebra with unit `unit`.
    pub fn min_poly_with_unit(&self, a: &[FieldElement], unit: &[FieldElement]) -> Polynomial {
        let field = &self.field;
        let mut powers: Vec<Vector> = vec![unit.to_vec()];
        loop {
            let next = self.mul(powers.last().unwrap(), a);
            let m = Matrix::from_rows(field, self.dim(), powers.clone())
                .expect("uniform")
                .transpose();
            if let Some(c) = solve(&m, &next).expect("matching sizes") {
                let mut coeffs: Vec<FieldElement> = c.iter().map(|x| -x).collect();
                coeffs.push(field.one());
                return Polynomial::new(field, coeffs);
            }
            powers.push(next);
        }
    }

    /// p(a) with constants scaled by `unit`.
    pub fn eval_poly(&self, p: &Polynomial, a: &[FieldElement], unit: &[FieldElement]) -> Vector {
        let mut acc = zero_vec(&self.field, self.dim());
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, a);
            axpy(&mut acc, c, unit);
        }
        acc
    }

    /// Span of e·b_k·e over the basis.
    pub fn corner(&self, e: &[FieldElement]) -> Subspace {
        let vecs = (0..self.dim())
            .map(|k| self.mul(&self.mul(e, &self.basis(k)), e))
            .collect();
        Subspace::from_vectors(&self.field, self.dim(), vecs).expect("ambient")
    }

    /// Central primitive idempotents from a generic central element. When
    /// the field does not split the center the returned decomposition is
    /// partial and `unsplit` names the offending factor.
    pub fn central_decomposition(&self, seed: u64) -> Result<CentralDecomposition> {
        let z = self.center();
        if z.dim() <= 1 {
            return Ok(CentralDecomposition {
                idempotents: vec![self.unit.clone()],
                complete: vec![true],
                unsplit: None,
            });
        }
        let mut rng = Lcg::new(seed);
        for _ in 0..DEFAULT_RETRIES {
            let coeffs: Vector = (0..z.dim()).map(|_| self.field.from_int(rng.small())).collect();
            let g = z.combine(&coeffs);
            let m = self.min_poly(&g);
            if m.degree() != Some(z.dim()) {
                continue;
            }
            let search = roots_in_field(&m)?;
            let mut factors: Vec<Polynomial> = search.roots.iter().map(Polynomial::linear).collect();
            let mut rest = m.clone();
            for f in &factors {
                rest = rest.div_rem(f)?.0;
            }
            let unsplit = (rest.degree().unwrap_or(0) > 0).then(|| rest.clone());
            if let Some(r) = &unsplit {
                factors.push(r.clone());
            }
            let idempotents = factors
                .iter()
                .map(|f| {
                    let cof = m.div_rem(f).unwrap().0;
                    let (_, s, _) = cof.ext_gcd(f);
                    let h = s.mul(&cof).div_rem(&m).unwrap().1;
                    self.eval_poly(&h, &g, &self.unit)
                })
                .collect::<Vec<_>>();
            let mut complete = vec![true; search.roots.len()];
            if unsplit.is_some() {
                complete.push(false);
            }
            return Ok(CentralDecomposition {
                idempotents,
                complete,
                unsplit,
            });
        }
        Err(Error::NonSplit {
            factor: "no central element of full degree found".into(),
        })
    }

    /// A complete set of orthogonal primitive idempotents.
    pub fn primitive_idempotents(&self, seed: u64) -> Result<IdempotentSet> {
        let rad = self.radical().dim();
        if rad > 0 {
            return Err(Error::NotSemisimple(rad));
        }
        let central = self.central_decomposition(seed)?;
        if let Some(f) = &central.unsplit {
            return Err(Error::NonSplit { factor: f.to_string() });
        }
        let mut rng = Lcg::new(seed ^ 0x9e37_79b9_7f4a_7c15);
        let mut out = Vec::new();
        let mut all_central = true;
        for e in &central.idempotents {
            let parts = self.split_corner(e, &mut rng)?;
            all_central &= parts.len() == 1;
            out.extend(parts);
        }
        Ok(IdempotentSet {
            idempotents: out,
            kind: if all_central {
                IdempotentKind::CentralPrimitive
            } else {
                IdempotentKind::Primitive
            },
        })
    }

    fn split_corner(&self, e: &[FieldElement], rng: &mut Lcg) -> Result<Vec<Vector>> {
        let corner = self.corner(e);
        let c = corner.dim();
        if c <= 1 {
            return Ok(vec![e.to_vec()]);
        }
        let root = (c as f64).sqrt().round() as usize;
        if root * root != c {
            return Err(Error::NonSplit {
                factor: format!("block of dimension {c} is not a full matrix algebra"),
            });
        }
        let f = self
            .find_corner_idempotent(e, &corner, rng)
            .ok_or_else(|| Error::NonSplit {
                factor: format!("no idempotent found in a block of dimension {c}"),
            })?;
        let mut parts = self.split_corner(&f, rng)?;
        parts.extend(self.split_corner(&sub_vec(e, &f), rng)?);
        Ok(parts)
    }

    fn candidates(&self, corner: &Subspace, rng: &mut Lcg) -> Vec<Vector> {
        let basis = corner.basis();
        let mut out: Vec<Vector> = basis.to_vec();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                out.push(crate::linalg::add_vec(&basis[i], &basis[j]));
            }
        }
        for _ in 0..DEFAULT_RETRIES {
            let coeffs: Vector = (0..basis.len()).map(|_| self.field.from_int(rng.small())).collect();
            out.push(corner.combine(&coeffs));
        }
        out
    }

    /// An idempotent of the corner e·F·e other than 0 and e.
    fn find_corner_idempotent(&self, e: &[FieldElement], corner: &Subspace, rng: &mut Lcg) -> Option<Vector> {
        for a in self.candidates(corner, rng) {
            let m = self.min_poly_with_unit(&a, e);
            let Ok(search) = roots_in_field(&m) else { continue };
            for lambda in &search.roots {
                let lin = Polynomial::linear(lambda);
                let mut power = Polynomial::constant(self.field.one());
                let mut rest = m.clone();
                loop {
                    let (q, r) = rest.div_rem(&lin).unwrap();
                    if !r.is_zero() {
                        break;
                    }
                    rest = q;
                    power = power.mul(&lin);
                }
                if rest.degree().unwrap_or(0) > 0 {
                    // CRT idempotent for the λ-primary component.
                    let (_, s, _) = rest.ext_gcd(&power);
                    let h = s.mul(&rest);
                    let f = self.eval_poly(&h, &a, e);
                    if !is_zero_vec(&f) && f != e {
                        return Some(f);
                    }
                } else if power.degree().unwrap_or(0) >= 2 {
                    // a − λe is nilpotent: take the right unit of a left ideal.
                    let shifted = sub_vec(&a, &scale_vec(e, lambda));
                    let mut nil = shifted.clone();
                    let k = power.degree().unwrap();
                    for _ in 2..k {
                        nil = self.mul(&nil, &shifted);
                    }
                    if let Some(f) = self.right_unit_of_left_ideal(corner, &nil) {
                        if !is_zero_vec(&f) && f != e {
                            return Some(f);
                        }
                    }
                }
            }
        }
        None
    }

    fn right_unit_of_left_ideal(&self, corner: &Subspace, x: &[FieldElement]) -> Option<Vector> {
        let gens = corner.basis().iter().map(|b| self.mul(b, x)).collect();
        let ideal = Subspace::from_vectors(&self.field, self.dim(), gens).ok()?;
        let basis = ideal.basis();
        let n = self.dim();
        // unknown μ: Σ_t μ_t (l_s l_t) = l_s for every s
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for ls in basis {
            let prods: Vec<Vector> = basis.iter().map(|lt| self.mul(ls, lt)).collect();
            for out in 0..n {
                rows.push(prods.iter().map(|p| p[out].clone()).collect());
                rhs.push(ls[out].clone());
            }
        }
        let m = Matrix::from_rows(&self.field, basis.len(), rows).ok()?;
        let mu = solve(&m, &rhs).ok()??;
        Some(ideal.combine(&mu))
    }

    /// Dimensions of the blocks e·F·e over central primitive idempotents,
    /// sorted. A block the field does not split is reported as one block.
    pub fn block_structure(&self) -> Result<Vec<usize>> {
        let rad = self.radical().dim();
        if rad > 0 {
            return Err(Error::NotSemisimple(rad));
        }
        let central = self.central_decomposition(0)?;
        let mut dims: Vec<usize> = central.idempotents.iter().map(|e| self.corner(e).dim()).collect();
        dims.sort_unstable();
        Ok(dims)
    }

    /// Checks eᵢ² = eᵢ, eᵢeⱼ = 0 and Σ eᵢ = 1 exactly.
    pub fn verify_idempotents(&self, set: &[Vector]) -> bool {
        let mut total = zero_vec(&self.field, self.dim());
        for (i, e) in set.iter().enumerate() {
            total = crate::linalg::add_vec(&total, e);
            for (j, f) in set.iter().enumerate() {
                let p = self.mul(e, f);
                let ok = if i == j { p == *e } else { is_zero_vec(&p) };
                if !ok {
                    return false;
                }
            }
        }
        total == self.unit
    }

    /// Image e·F of the left-regular action, used to compare decompositions.
    pub fn right_ideal(&self, e: &[FieldElement]) -> Subspace {
        let vecs = (0..self.dim()).map(|k| self.mul(e, &self.basis(k))).collect();
        Subspace::from_vectors(&self.field, self.dim(), vecs).expect("ambient")
    }
}

#[derive(Clone, Debug)]
pub struct CentralDecomposition {
    pub idempotents: Vec<Vector>,
    /// Per idempotent: whether its block has a split center.
    pub complete: Vec<bool>,
    pub unsplit: Option<Polynomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdempotentKind {
    CentralPrimitive,
    Primitive,
}

#[derive(Clone, Debug)]
pub struct IdempotentSet {
    pub idempotents: Vec<Vector>,
    pub kind: IdempotentKind,
}

pub fn radical(f: &FiniteDimAlgebra) -> Subspace {
    f.radical()
}

pub fn is_semisimple(f: &FiniteDimAlgebra) -> bool {
    f.is_semisimple()
}

pub fn center(f: &FiniteDimAlgebra) -> Subspace {
    f.center()
}

pub fn min_poly(f: &FiniteDimAlgebra, a: &[FieldElement]) -> Polynomial {
    f.min_poly(a)
}

pub fn primitive_idempotents(f: &FiniteDimAlgebra, seed: u64) -> Result<IdempotentSet> {
    f.primitive_idempotents(seed)
}

pub fn block_structure(f: &FiniteDimAlgebra) -> Result<Vec<usize>> {
    f.block_structure()
}

/// Seeded linear congruential generator for small integer coefficients.
#[derive(Clone, Debug)]
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(0x2545_f491_4f6c_dd1d).wrapping_add(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        self.0 >> 33
    }

    /// Uniform in [−3, 3].
    pub fn small(&mut self) -> i64 {
        (self.next_u64() % 7) as i64 - 3
    }
}
