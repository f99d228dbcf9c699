//! Quadric hypersurfaces A = S/Sw: the context, the syzygy module 𝕄 of the
//! trivial module, End(𝕄) as a linear containment problem, and C(A) built
//! independently from the quadratic dual.

use serde::Serialize;

use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::{is_zero_vec, kernel, solve, unit_vec, Matrix, Subspace, Vector};
use crate::mcm::{ModulePresentation, Relation};
use crate::quadratic::{
    is_regular_deg2, koszul_certificate, non_commuting_generator, Certificate, GradedAlgebra,
    QuadraticPresentation,
};
use crate::tensor::{express_in_tensor_basis, koszul_spaces};

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// Hilbert-level evidence that S is a quantum polynomial algebra.
#[derive(Clone, Debug, Serialize)]
pub struct QuantumPolynomialCertificate {
    /// dim S_n = C(n+g−1, g−1)
    pub hilbert: Certificate,
    /// dim S^!_n = C(g, n), so dim S^! = 2^g
    pub dual: Certificate,
    pub koszul: Certificate,
    pub dual_total: usize,
    pub passed: bool,
}

pub fn quantum_polynomial_certificate(s: &QuadraticPresentation, horizon: usize) -> QuantumPolynomialCertificate {
    let g = s.num_generators();
    let alg = GradedAlgebra::new(s.clone());
    let dual = GradedAlgebra::new(s.quadratic_dual());
    let hilbert = Certificate::from_checks(
        "Hilbert series of S is 1/(1−t)^g",
        horizon,
        (0..=horizon)
            .map(|n| Certificate::check(n, binomial(n + g - 1, g - 1), alg.dim(n) as i64))
            .collect(),
    );
    let dual_cert = Certificate::from_checks(
        "Hilbert series of S! is (1+t)^g",
        g + 1,
        (0..=g + 1)
            .map(|n| Certificate::check(n, binomial(g, n), dual.dim(n) as i64))
            .collect(),
    );
    let koszul = koszul_certificate(&alg, &dual, horizon.max(g + 1));
    let dual_total = (0..=g + 1).map(|n| dual.dim(n)).sum();
    QuantumPolynomialCertificate {
        passed: hilbert.passed && dual_cert.passed && koszul.passed,
        hilbert,
        dual: dual_cert,
        koszul,
        dual_total,
    }
}

#[derive(Clone, Debug)]
pub struct HypersurfaceContext {
    pub s: QuadraticPresentation,
    pub central: Vector,
    pub a: QuadraticPresentation,
    /// dim V − 1
    pub d: usize,
    pub s_alg: GradedAlgebra,
    pub a_alg: GradedAlgebra,
    pub regularity: Certificate,
    /// C_0 .. C_{d+3} of A.
    pub koszul: Vec<Subspace>,
}

impl HypersurfaceContext {
    /// Recorded only.
    pub fn gorenstein_parameter(&self) -> i64 {
        self.d as i64 - 1
    }

    pub fn num_generators(&self) -> usize {
        self.s.num_generators()
    }
}

/// Checks w ∉ R_S, centrality and regularity up to `horizon`, then builds
/// A = S/Sw and its Koszul spaces.
pub fn build_context(s: &QuadraticPresentation, w: &[FieldElement], horizon: usize) -> Result<HypersurfaceContext> {
    let g = s.num_generators();
    if g < 2 {
        return Err(Error::UnsupportedDimension(g));
    }
    if w.len() != g * g {
        return Err(Error::AmbientMismatch(g * g, w.len()));
    }
    if s.relations().contains(w)? {
        return Err(Error::RelationDependence);
    }
    let s_alg = GradedAlgebra::new(s.clone());
    if let Some(v) = non_commuting_generator(&s_alg, w)? {
        return Err(Error::NotCentral(s.generators()[v].clone()));
    }
    let regularity = is_regular_deg2(&s_alg, w, horizon)?;
    if let Some(n) = regularity.first_failure {
        let c = regularity.checks.iter().find(|c| c.degree == n).unwrap();
        return Err(Error::NotRegularCertificate {
            degree: n,
            expected: c.expected,
            actual: c.actual,
        });
    }
    let a = s.with_relation(w)?;
    let d = g - 1;
    let koszul = koszul_spaces(a.relations(), d + 3)?;
    Ok(HypersurfaceContext {
        s: s.clone(),
        central: w.to_vec(),
        a_alg: GradedAlgebra::new(a.clone()),
        a,
        d,
        s_alg,
        regularity,
        koszul,
    })
}

/// 𝕄 = Ω^d(k)(d): generators the basis of C_d in degree 0, relations the
/// basis of C_{d+1} written in C_d ⊗ V, all in degree 1.
pub fn syzygy_presentation(ctx: &HypersurfaceContext) -> Result<ModulePresentation> {
    let g = ctx.num_generators();
    let cd = &ctx.koszul[ctx.d];
    let e = express_in_tensor_basis(cd, &ctx.koszul[ctx.d + 1], g)?;
    let relations = e
        .rows()
        .iter()
        .map(|row| Relation {
            degree: 1,
            vector: row.clone(),
        })
        .collect();
    ModulePresentation::new(&ctx.a_alg, vec![0; cd.dim()], relations)
}

#[derive(Clone, Debug)]
pub struct EndAlgebraResult {
    /// dim C_d
    pub ambient: usize,
    /// Solutions F in row-major coordinates F[j][k] ↦ j·c + k, where
    /// f(c_k) = Σⱼ F[j][k] c_j.
    pub solution_space: Subspace,
    /// Basis matrices matching the basis of `algebra`.
    pub basis: Vec<Matrix>,
    pub algebra: FiniteDimAlgebra,
}

impl EndAlgebraResult {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of an algebra element given in coordinates.
    pub fn to_matrix(&self, coords: &[FieldElement]) -> Matrix {
        let field = self.algebra.field();
        let mut out = Matrix::zeros(field, self.ambient, self.ambient);
        for (c, m) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }
}

/// {F ∈ End(C_d) : (F⊗1)(C_{d+1}) ⊆ C_{d+1}} with composition.
pub fn end_m(ctx: &HypersurfaceContext) -> Result<EndAlgebraResult> {
    let field = ctx.a.field();
    let g = ctx.num_generators();
    let cd = &ctx.koszul[ctx.d];
    let c = cd.dim();
    let e = express_in_tensor_basis(cd, &ctx.koszul[ctx.d + 1], g)?;
    let span = Subspace::from_vectors(field, c * g, e.rows().to_vec())?;
    let complement = span.annihilator();
    // (F⊗1)x has coordinate j·g+l equal to Σ_k F[j][k]·x[k·g+l]
    let mut rows = Vec::new();
    for ann in complement.basis() {
        for x in e.rows() {
            let mut row = Vec::with_capacity(c * c);
            for j in 0..c {
                for k in 0..c {
                    let mut s = field.zero();
                    for l in 0..g {
                        let (a, b) = (&ann[j * g + l], &x[k * g + l]);
                        if !a.is_zero() && !b.is_zero() {
                            s = &s + &(a * b);
                        }
                    }
                    row.push(s);
                }
            }
            rows.push(row);
        }
    }
    let solution_space = if rows.is_empty() {
        Subspace::full(field, c * c)
    } else {
        kernel(&Matrix::from_rows(field, c * c, rows)?)
    };
    let mats: Vec<Matrix> = solution_space
        .basis()
        .iter()
        .map(|v| Matrix::from_flat(field, c, c, v))
        .collect();
    let (algebra, basis) = FiniteDimAlgebra::from_matrices(field, &mats)?;
    Ok(EndAlgebraResult {
        ambient: c,
        solution_space,
        basis,
        algebra,
    })
}

/// C(A) realized on A^!_{2m} with a∘b = (ϖ^m·)^{-1}(a·b).
#[derive(Clone, Debug)]
pub struct DualRealization {
    pub central: Vector,
    pub central_label: String,
    pub power: usize,
    pub algebra: FiniteDimAlgebra,
}

/// Degree-2 central elements of a quadratic algebra.
pub fn central_degree_two(alg: &GradedAlgebra) -> Subspace {
    let field = alg.field();
    let g = alg.num_generators();
    let n2 = alg.dim(2);
    let n3 = alg.dim(3);
    let cols: Vec<Vector> = (0..n2)
        .map(|b| {
            let e = unit_vec(field, n2, b);
            let mut out = Vec::with_capacity(g * n3);
            for v in 0..g {
                let gen = alg.generator(v);
                let ev = alg.multiply(&e, 2, &gen, 1);
                let ve = alg.multiply(&gen, 1, &e, 2);
                out.extend(crate::linalg::sub_vec(&ev, &ve));
            }
            out
        })
        .collect();
    if cols.is_empty() || cols[0].is_empty() {
        return Subspace::full(field, n2);
    }
    kernel(&Matrix::from_rows(field, g * n3, cols).expect("uniform").transpose())
}

fn power_of(alg: &GradedAlgebra, x: &[FieldElement], m: usize) -> Vector {
    let mut p = alg.unit();
    for k in 0..m {
        p = alg.multiply(&p, 2 * k, x, 2);
    }
    p
}

fn bijective_from(alg: &GradedAlgebra, x: &[FieldElement], lo: usize, hi: usize) -> bool {
    (lo..=hi).all(|n| {
        let src = alg.dim(n);
        src == alg.dim(n + 2) && alg.multiplication_matrix(x, 2, n, true).rank() == src
    })
}

/// Builds C(A) from A^! and a central element of degree 2 acting bijectively
/// from degree d on. `power` defaults to the least m with 2m ≥ d.
pub fn c_algebra_via_dual(ctx: &HypersurfaceContext, power: Option<usize>) -> Result<DualRealization> {
    let field = ctx.a.field();
    let dual = GradedAlgebra::new(ctx.a.quadratic_dual());
    let m = power.unwrap_or(ctx.d.div_ceil(2)).max(1);
    if 2 * m < ctx.d {
        return Err(Error::IndexOutOfRange(format!("power {m} below half of {}", ctx.d)));
    }
    let hi = (2 * m + 2).max(4 * m - 2);
    let z = central_degree_two(&dual);
    let mut candidates: Vec<Vector> = z.basis().to_vec();
    for i in 0..z.dim() {
        for j in i + 1..z.dim() {
            candidates.push(crate::linalg::add_vec(&z.basis()[i], &z.basis()[j]));
        }
    }
    let central = candidates
        .into_iter()
        .find(|x| !is_zero_vec(x) && bijective_from(&dual, x, ctx.d, hi))
        .ok_or(Error::NoStableCentral)?;

    let unit_elem = power_of(&dual, &central, m);
    let deg = 2 * m;
    let n = dual.dim(deg);
    let mult = dual.multiplication_matrix(&unit_elem, deg, deg, true);
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let prod = dual.multiply(&unit_vec(field, n, i), deg, &unit_vec(field, n, j), deg);
                    solve(&mult, &prod)?.ok_or(Error::NoStableCentral)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let comp = dual.component(deg);
    let names = dual.presentation().generators();
    let labels = comp
        .basis_words
        .iter()
        .map(|w| w.iter().map(|&k| names[k].as_str()).collect::<Vec<_>>().join("*"))
        .collect();
    let algebra = FiniteDimAlgebra::new(field, labels, table, unit_elem)?;
    Ok(DualRealization {
        central_label: dual.element_string(&central, 2),
        central,
        power: m,
        algebra,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: usize,
    pub rhs: usize,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(name: &str, lhs: usize, rhs: usize) -> Self {
        IdentityCheck {
            name: name.into(),
            lhs,
            rhs,
            pass: lhs == rhs,
        }
    }
}

/// Dimension identities tying End(𝕄), C_n and S^! together. `dual_total`
/// is dim S^! from a passing quantum-polynomial certificate; without it the
/// identities involving S^! are skipped.
pub fn dimension_identities(ctx: &HypersurfaceContext, end_dim: usize, dual_total: Option<usize>) -> Vec<IdentityCheck> {
    let cd = ctx.koszul[ctx.d].dim();
    let mut out = vec![
        IdentityCheck::new("dim End(M) = dim C_d", end_dim, cd),
        IdentityCheck::new("dim M_0 = dim End(M)", cd, end_dim),
    ];
    if let Some(total) = dual_total {
        let half = total / 2;
        out.push(IdentityCheck::new("dim End(M) = dim S!/2", end_dim, half));
        for n in ctx.d..=ctx.d + 3 {
            out.push(IdentityCheck::new(&format!("dim C_{n} = dim S!/2"), ctx.koszul[n].dim(), half));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::tensor::span_ints;

    fn plane(field: &Field) -> QuadraticPresentation {
        let r = span_ints(field, 4, &[vec![0, 1, -1, 0]]);
        QuadraticPresentation::new(field, vec!["x".into(), "y".into()], r).unwrap()
    }

    fn ints(field: &Field, v: &[i64]) -> Vector {
        v.iter().map(|&x| field.from_int(x)).collect()
    }

    #[test]
    fn cusp_is_not_isolated() {
        let f = Field::rationals();
        let ctx = build_context(&plane(&f), &ints(&f, &[1, 0, 0, 0]), 6).unwrap();
        assert_eq!(ctx.d, 1);
        assert_eq!(ctx.a.relations().dim(), 2);
        let end = end_m(&ctx).unwrap();
        assert_eq!(end.dim(), 2);
        assert_eq!(end.algebra.radical().dim(), 1);
        let dual = c_algebra_via_dual(&ctx, None).unwrap();
        assert_eq!(dual.algebra.dim(), 2);
        assert_eq!(dual.algebra.radical().dim(), 1);
    }

    #[test]
    fn node_is_isolated() {
        let f = Field::rationals();
        let ctx = build_context(&plane(&f), &ints(&f, &[1, 0, 0, 1]), 6).unwrap();
        let end = end_m(&ctx).unwrap();
        assert_eq!(end.dim(), 2);
        assert!(end.algebra.is_semisimple());
        let dual = c_algebra_via_dual(&ctx, None).unwrap();
        assert!(dual.algebra.is_semisimple());
        assert_eq!(dual.algebra.block_structure().unwrap(), vec![2]);
        assert_eq!(end.algebra.block_structure().unwrap(), vec![2]);
        let m = syzygy_presentation(&ctx).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.relations().len(), 2);
    }

    #[test]
    fn context_errors() {
        let f = Field::rationals();
        let s = plane(&f);
        assert!(matches!(
            build_context(&s, &ints(&f, &[0, 1, -1, 0]), 4),
            Err(Error::RelationDependence)
        ));
        let free = QuadraticPresentation::new(&f, vec!["x".into(), "y".into()], Subspace::zero(&f, 4)).unwrap();
        assert!(matches!(
            build_context(&free, &ints(&f, &[0, 1, 0, 0]), 4),
            Err(Error::NotCentral(_))
        ));
        let line = QuadraticPresentation::new(&f, vec!["x".into()], Subspace::zero(&f, 1)).unwrap();
        assert!(matches!(
            build_context(&line, &ints(&f, &[1]), 4),
            Err(Error::UnsupportedDimension(1))
        ));
    }

    #[test]
    fn polynomial_ring_certificate() {
        let f = Field::rationals();
        let cert = quantum_polynomial_certificate(&plane(&f), 6);
        assert!(cert.passed);
        assert_eq!(cert.dual_total, 4);
        let free = QuadraticPresentation::new(&f, vec!["x".into(), "y".into()], Subspace::zero(&f, 4)).unwrap();
        assert!(!quantum_polynomial_certificate(&free, 4).passed);
    }
}
