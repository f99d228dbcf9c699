//! Graded right modules over a quadratic algebra given by generators and
//! relations: Hilbert functions, idempotent summands, cyclic quotients A/xA,
//! graded Hom spaces and the degree-zero part of End(𝕄 ⊕ A).

use serde::Serialize;

use crate::algebra::FiniteDimAlgebra;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::{
    axpy, dot_in, is_zero_vec, kernel, normalize_leading, unit_vec, zero_vec, Matrix, Subspace,
    Vector,
};
use crate::quadratic::{Certificate, DegreeCheck, GradedAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: i64,
    /// Coordinates in ⊕ᵢ genᵢ ⊗ A_{degree − deg genᵢ}, blocks in generator order.
    pub vector: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    generator_degrees: Vec<i64>,
    relations: Vec<Relation>,
}

impl ModulePresentation {
    pub fn new(alg: &GradedAlgebra, generator_degrees: Vec<i64>, relations: Vec<Relation>) -> Result<Self> {
        let p = ModulePresentation {
            generator_degrees,
            relations: Vec::new(),
        };
        for r in &relations {
            let expected = p.free_dim(alg, r.degree);
            if r.vector.len() != expected {
                return Err(Error::DimensionMismatch(format!(
                    "relation of degree {} has {} coordinates, expected {expected}",
                    r.degree,
                    r.vector.len()
                )));
            }
            if is_zero_vec(&r.vector) {
                return Err(Error::DimensionMismatch("zero relation".into()));
            }
        }
        Ok(ModulePresentation { relations, ..p })
    }

    /// A free module with generators in the given degrees.
    pub fn free(generator_degrees: Vec<i64>) -> Self {
        ModulePresentation {
            generator_degrees,
            relations: Vec::new(),
        }
    }

    pub fn generator_degrees(&self) -> &[i64] {
        &self.generator_degrees
    }

    pub fn rank(&self) -> usize {
        self.generator_degrees.len()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.generator_degrees.iter().copied().min()
    }

    /// (offset, length) of each generator block in degree n.
    pub fn layout(&self, alg: &GradedAlgebra, n: i64) -> Vec<(usize, usize)> {
        let mut offset = 0;
        self.generator_degrees
            .iter()
            .map(|&d| {
                let len = if n >= d { alg.dim((n - d) as usize) } else { 0 };
                let out = (offset, len);
                offset += len;
                out
            })
            .collect()
    }

    pub fn free_dim(&self, alg: &GradedAlgebra, n: i64) -> usize {
        self.layout(alg, n).iter().map(|&(_, len)| len).sum()
    }

    /// x·a for x in the free module in degree n and a ∈ A_k.
    pub fn act(&self, alg: &GradedAlgebra, x: &[FieldElement], n: i64, a: &[FieldElement], k: usize) -> Vector {
        let target = self.layout(alg, n + k as i64);
        let mut out = zero_vec(alg.field(), self.free_dim(alg, n + k as i64));
        for ((&(off, len), &(toff, _)), &d) in self.layout(alg, n).iter().zip(&target).zip(&self.generator_degrees) {
            if len == 0 {
                continue;
            }
            let block = &x[off..off + len];
            if is_zero_vec(block) {
                continue;
            }
            let prod = alg.multiply(block, (n - d) as usize, a, k);
            for (t, c) in prod.into_iter().enumerate() {
                out[toff + t] = c;
            }
        }
        out
    }

    /// x·v for a generator v of A.
    pub fn act_gen(&self, alg: &GradedAlgebra, x: &[FieldElement], n: i64, v: usize) -> Vector {
        let target = self.layout(alg, n + 1);
        let mut out = zero_vec(alg.field(), self.free_dim(alg, n + 1));
        for ((&(off, len), &(toff, _)), &d) in self.layout(alg, n).iter().zip(&target).zip(&self.generator_degrees) {
            if len == 0 {
                continue;
            }
            let prod = alg.right_mul_gen(&x[off..off + len], (n - d) as usize, v);
            for (t, c) in prod.into_iter().enumerate() {
                out[toff + t] = c;
            }
        }
        out
    }

    /// Coordinates of genᵢ·a in degree deg genᵢ + k.
    pub fn generator_times(&self, alg: &GradedAlgebra, i: usize, a: &[FieldElement], k: usize) -> Vector {
        let n = self.generator_degrees[i] + k as i64;
        let (off, _) = self.layout(alg, n)[i];
        let mut out = zero_vec(alg.field(), self.free_dim(alg, n));
        for (t, c) in a.iter().enumerate() {
            out[off + t] = c.clone();
        }
        out
    }
}

/// The relation submodule of a presentation, computed degree by degree.
#[derive(Clone, Debug)]
pub struct ModuleData {
    min: i64,
    free_dims: Vec<usize>,
    kernels: Vec<Subspace>,
}

impl ModuleData {
    pub fn compute(pres: &ModulePresentation, alg: &GradedAlgebra, top: i64) -> Self {
        let field = alg.field();
        let g = alg.num_generators();
        let min = pres.min_degree().unwrap_or(0);
        let mut data = ModuleData {
            min,
            free_dims: Vec::new(),
            kernels: Vec::new(),
        };
        for n in min..=top.max(min) {
            let free = pres.free_dim(alg, n);
            let mut vecs: Vec<Vector> = Vec::new();
            if n > min {
                for b in data.kernels.last().unwrap().basis() {
                    for v in 0..g {
                        vecs.push(pres.act_gen(alg, b, n - 1, v));
                    }
                }
            }
            vecs.extend(pres.relations.iter().filter(|r| r.degree == n).map(|r| r.vector.clone()));
            data.free_dims.push(free);
            data.kernels.push(Subspace::from_vectors(field, free, vecs).expect("relation length"));
        }
        data
    }

    pub fn top(&self) -> i64 {
        self.min + self.kernels.len() as i64 - 1
    }

    fn index(&self, n: i64) -> Option<usize> {
        if n < self.min {
            return None;
        }
        let k = (n - self.min) as usize;
        assert!(k < self.kernels.len(), "degree {n} beyond computed range");
        Some(k)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.free_dims[k] - self.kernels[k].dim())
    }

    pub fn free_dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.free_dims[k])
    }

    /// Relation subspace in degree n; `None` below the generators.
    pub fn kernel(&self, n: i64) -> Option<&Subspace> {
        self.index(n).map(|k| &self.kernels[k])
    }

    pub fn hilbert(&self, from: i64, to: i64) -> Vec<usize> {
        (from..=to).map(|n| self.dim(n)).collect()
    }

    /// Normal form modulo relations.
    pub fn reduce(&self, x: &[FieldElement], n: i64) -> Vector {
        match self.kernel(n) {
            Some(k) => k.reduce(x),
            None => Vec::new(),
        }
    }
}

pub fn module_graded_dim(p: &ModulePresentation, alg: &GradedAlgebra, n: i64) -> usize {
    ModuleData::compute(p, alg, n).dim(n)
}

/// Presentation of the summand generated by the column space of `e`, which
/// acts on the degree-0 generators by genₖ ↦ Σⱼ e[j][k]·genⱼ. Relations are
/// collected in degrees 0 to 2 and checked against the true image dimensions
/// up to `horizon`.
pub fn idempotent_summand(
    p: &ModulePresentation,
    alg: &GradedAlgebra,
    e: &Matrix,
    horizon: usize,
) -> Result<(ModulePresentation, Vec<Vector>)> {
    let data = ModuleData::compute(p, alg, horizon as i64);
    idempotent_summand_with(p, &data, alg, e, horizon)
}

pub fn idempotent_summand_with(
    p: &ModulePresentation,
    data: &ModuleData,
    alg: &GradedAlgebra,
    e: &Matrix,
    horizon: usize,
) -> Result<(ModulePresentation, Vec<Vector>)> {
    if p.generator_degrees.iter().any(|&d| d != 0) {
        return Err(Error::DimensionMismatch("summands need degree-0 generators".into()));
    }
    if e.nrows() != p.rank() || e.ncols() != p.rank() {
        return Err(Error::DimensionMismatch("idempotent size".into()));
    }
    let field = alg.field();
    let cols: Vec<Vector> = (0..e.ncols()).map(|k| e.column(k)).collect();
    let image = Subspace::from_vectors(field, p.rank(), cols)?;
    let gens: Vec<Vector> = image.basis().to_vec();
    let r = gens.len();

    let true_kernel = |n: usize| -> Subspace {
        let an = alg.dim(n);
        let ker = data.kernel(n as i64).expect("degree within range");
        let constraints = ker.annihilator();
        // unknown: coefficient of gen_t ⊗ (basis b of A_n), index t·an + b
        let mut rows = Vec::with_capacity(constraints.dim());
        for c in constraints.basis() {
            let mut row = Vec::with_capacity(r * an);
            for u in &gens {
                for b in 0..an {
                    let mut s = field.zero();
                    for (j, uj) in u.iter().enumerate() {
                        if !uj.is_zero() {
                            s = &s + &(uj * &c[j * an + b]);
                        }
                    }
                    row.push(s);
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Subspace::full(field, r * an);
        }
        kernel(&Matrix::from_rows(field, r * an, rows).expect("uniform rows"))
    };

    let mut summand = ModulePresentation::free(vec![0; r]);
    for n in 0..=2usize.min(horizon) {
        let wanted = true_kernel(n);
        let mut have = ModuleData::compute(&summand, alg, n as i64)
            .kernel(n as i64)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(field, 0));
        for b in wanted.basis() {
            if !have.contains(b)? {
                summand.relations.push(Relation {
                    degree: n as i64,
                    vector: b.clone(),
                });
                have = have.sum(&Subspace::from_vectors(field, b.len(), vec![b.clone()])?)?;
            }
        }
    }
    let presented = ModuleData::compute(&summand, alg, horizon as i64);
    for n in 0..=horizon {
        let actual = r * alg.dim(n) - true_kernel(n).dim();
        let shown = presented.dim(n as i64);
        if actual != shown {
            return Err(Error::AdditivityViolated {
                degree: n,
                presented: shown,
                actual,
            });
        }
    }
    Ok((summand, gens))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclicIdentification {
    /// The summand agrees with A/xA up to the horizon.
    Cyclic {
        annihilator: Vector,
        summand_hilbert: Vec<usize>,
        quotient_hilbert: Vec<usize>,
        matches: bool,
    },
    NonCyclic { reason: String },
}

/// Looks for x ∈ A₁ with g·x = 0 for the single generator g.
pub fn identify_cyclic_quotient(
    summand: &ModulePresentation,
    alg: &GradedAlgebra,
    horizon: usize,
) -> CyclicIdentification {
    if summand.generator_degrees != [0] {
        return CyclicIdentification::NonCyclic {
            reason: format!("{} generators", summand.rank()),
        };
    }
    let data = ModuleData::compute(summand, alg, horizon as i64);
    let ann = data.kernel(1).expect("degree 1 computed");
    if ann.dim() != 1 {
        return CyclicIdentification::NonCyclic {
            reason: format!("degree-1 annihilator has dimension {}", ann.dim()),
        };
    }
    let x = normalize_leading(&ann.basis()[0]);
    let quotient = cyclic_quotient(alg, &x);
    let qdata = ModuleData::compute(&quotient, alg, horizon as i64);
    let summand_hilbert = data.hilbert(0, horizon as i64);
    let quotient_hilbert = qdata.hilbert(0, horizon as i64);
    CyclicIdentification::Cyclic {
        annihilator: x,
        matches: summand_hilbert == quotient_hilbert,
        summand_hilbert,
        quotient_hilbert,
    }
}

/// A/xA for x ∈ A₁.
pub fn cyclic_quotient(alg: &GradedAlgebra, x: &[FieldElement]) -> ModulePresentation {
    ModulePresentation {
        generator_degrees: vec![0],
        relations: vec![Relation {
            degree: 1,
            vector: x.to_vec(),
        }],
    }
    .checked(alg)
}

impl ModulePresentation {
    fn checked(self, alg: &GradedAlgebra) -> Self {
        debug_assert!(self
            .relations
            .iter()
            .all(|r| r.vector.len() == self.free_dim(alg, r.degree)));
        self
    }
}

/// Degree-n homomorphisms P → Q, stored as concatenated generator images in
/// normal form.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub shift: i64,
    /// (offset, length, target degree) per generator of the source.
    pub layout: Vec<(usize, usize, i64)>,
    pub space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Image of generator i under the map with concatenated images `phi`.
    pub fn image<'a>(&self, phi: &'a [FieldElement], i: usize) -> &'a [FieldElement] {
        let (off, len, _) = self.layout[i];
        &phi[off..off + len]
    }
}

pub fn hom_space(p: &ModulePresentation, q: &ModulePresentation, alg: &GradedAlgebra, shift: i64) -> HomSpace {
    let top = p
        .relations
        .iter()
        .map(|r| r.degree)
        .chain(p.generator_degrees.iter().copied())
        .max()
        .unwrap_or(0)
        + shift;
    let qdata = ModuleData::compute(q, alg, top);
    hom_space_with(p, q, &qdata, alg, shift)
}

pub fn hom_space_with(
    p: &ModulePresentation,
    q: &ModulePresentation,
    qdata: &ModuleData,
    alg: &GradedAlgebra,
    shift: i64,
) -> HomSpace {
    let field = alg.field();
    let mut layout = Vec::new();
    // unknowns: (generator, free coordinate in Q) for each non-pivot coordinate
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut offset = 0;
    for (i, &d) in p.generator_degrees.iter().enumerate() {
        let n = d + shift;
        let len = qdata.free_dim(n);
        layout.push((offset, len, n));
        offset += len;
        if let Some(k) = qdata.kernel(n) {
            unknowns.extend(k.non_pivots().into_iter().map(|c| (i, c)));
        }
    }
    let total = offset;
    let mut rows: Vec<Vector> = Vec::new();
    for rel in &p.relations {
        let target = rel.degree + shift;
        let Some(kq) = qdata.kernel(target) else { continue };
        let constraints = kq.annihilator();
        if constraints.dim() == 0 {
            continue;
        }
        let src_layout = p.layout(alg, rel.degree);
        let columns: Vec<Vector> = unknowns
            .iter()
            .map(|&(i, c)| {
                let (off, len) = src_layout[i];
                let a = &rel.vector[off..off + len];
                let gen_degree = p.generator_degrees[i] + shift;
                let basis = unit_vec(field, qdata.free_dim(gen_degree), c);
                q.act(alg, &basis, gen_degree, a, (rel.degree - p.generator_degrees[i]) as usize)
            })
            .collect();
        for con in constraints.basis() {
            rows.push(columns.iter().map(|col| dot_in(field, con, col)).collect());
        }
    }
    let solutions = if rows.is_empty() {
        Subspace::full(field, unknowns.len())
    } else {
        kernel(&Matrix::from_rows(field, unknowns.len(), rows).expect("uniform rows"))
    };
    let vecs = solutions
        .basis()
        .iter()
        .map(|s| {
            let mut phi = zero_vec(field, total);
            for (coef, &(i, c)) in s.iter().zip(&unknowns) {
                phi[layout[i].0 + c] = coef.clone();
            }
            phi
        })
        .collect();
    HomSpace {
        shift,
        layout,
        space: Subspace::from_vectors(field, total, vecs).expect("lengths"),
    }
}

pub fn hom_graded(p: &ModulePresentation, q: &ModulePresentation, alg: &GradedAlgebra, shift: i64) -> usize {
    hom_space(p, q, alg, shift).dim()
}

/// ψ(x) for x in the free cover of Q in degree n, ψ given by generator images.
fn apply_map(
    q: &ModulePresentation,
    target: &ModulePresentation,
    alg: &GradedAlgebra,
    psi: &HomSpace,
    psi_vec: &[FieldElement],
    x: &[FieldElement],
    n: i64,
) -> Vector {
    let field = alg.field();
    let mut out = zero_vec(field, target.free_dim(alg, n + psi.shift));
    for (j, &(off, len)) in q.layout(alg, n).iter().enumerate() {
        let block = &x[off..off + len];
        if is_zero_vec(block) {
            continue;
        }
        let (_, _, img_deg) = psi.layout[j];
        let img = psi.image(psi_vec, j);
        let part = target.act(alg, img, img_deg, block, (n - q.generator_degrees[j]) as usize);
        axpy(&mut out, &field.one(), &part);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct HomDims {
    pub source: usize,
    pub target: usize,
    /// (degree, dimension)
    pub dims: Vec<(i64, usize)>,
}

#[derive(Clone, Debug)]
pub struct PreresolutionTable {
    pub labels: Vec<String>,
    pub entries: Vec<HomDims>,
    /// Every probed negative degree has zero Hom.
    pub nonnegative: bool,
    /// Hom(𝕄ⁱ, A)₀ = 0 for all summands.
    pub corner_vanishes: bool,
    /// Hom(A, 𝕄ⁱ)₀ = 𝕄ⁱ₀ for all summands.
    pub column_matches: bool,
    /// Total dimension of the degree-0 Homs between summands.
    pub diagonal_dim: usize,
    /// Degree-0 part of End(⊕ summands ⊕ A) under composition.
    pub b0: FiniteDimAlgebra,
}

/// Hom dimensions among the summands and A for degrees `lowest..=horizon`,
/// and the algebra of degree-0 maps.
pub fn preresolution_table(
    summands: &[ModulePresentation],
    alg: &GradedAlgebra,
    lowest: i64,
    horizon: i64,
) -> Result<PreresolutionTable> {
    let field = alg.field();
    let mut modules: Vec<ModulePresentation> = summands.to_vec();
    modules.push(ModulePresentation::free(vec![0]));
    let s = modules.len();
    let top = horizon + 3;
    let datas: Vec<ModuleData> = modules.iter().map(|m| ModuleData::compute(m, alg, top)).collect();

    let mut entries = Vec::new();
    let mut nonnegative = true;
    for (a, pa) in modules.iter().enumerate() {
        for (b, pb) in modules.iter().enumerate() {
            let dims: Vec<(i64, usize)> = (lowest..=horizon)
                .map(|n| (n, hom_space_with(pa, pb, &datas[b], alg, n).dim()))
                .collect();
            nonnegative &= dims.iter().all(|&(n, d)| n >= 0 || d == 0);
            entries.push(HomDims { source: a, target: b, dims });
        }
    }

    // degree-0 maps Pⱼ → Pᵢ as a block algebra, basis ordered by (target, source)
    let homs: Vec<Vec<HomSpace>> = (0..s)
        .map(|i| (0..s).map(|j| hom_space_with(&modules[j], &modules[i], &datas[i], alg, 0)).collect())
        .collect();
    let mut index = Vec::new();
    for i in 0..s {
        for j in 0..s {
            for k in 0..homs[i][j].dim() {
                index.push((i, j, k));
            }
        }
    }
    let dim = index.len();
    let offset = |i: usize, j: usize| index.iter().position(|&(a, b, _)| a == i && b == j);
    let mut table = vec![vec![zero_vec(field, dim); dim]; dim];
    for (x, &(i, j, k)) in index.iter().enumerate() {
        for (y, &(j2, l, k2)) in index.iter().enumerate() {
            if j != j2 {
                continue;
            }
            // (map P_j → P_i) ∘ (map P_l → P_j)
            let outer = &homs[i][j];
            let inner = &homs[j][l];
            let outer_vec = &outer.space.basis()[k];
            let inner_vec = &inner.space.basis()[k2];
            let mut phi = Vec::new();
            for (g, &(_, _, deg)) in inner.layout.iter().enumerate() {
                let img = inner.image(inner_vec, g);
                let mapped = apply_map(&modules[j], &modules[i], alg, outer, outer_vec, img, deg);
                phi.extend(datas[i].reduce(&mapped, deg));
            }
            let target = &homs[i][l];
            let coords = target
                .space
                .coordinates(&phi)?
                .ok_or_else(|| Error::ContainmentViolated("composition left the Hom space".into()))?;
            if let Some(base) = offset(i, l) {
                for (t, c) in coords.into_iter().enumerate() {
                    table[x][y][base + t] = c;
                }
            }
        }
    }
    let mut unit = zero_vec(field, dim);
    for i in 0..s {
        let space = &homs[i][i];
        let mut id = Vec::new();
        for (g, &(_, _, deg)) in space.layout.iter().enumerate() {
            let v = modules[i].generator_times(alg, g, &alg.unit(), 0);
            id.extend(datas[i].reduce(&v, deg));
        }
        let coords = space.space.coordinates(&id)?.ok_or(Error::BadUnit)?;
        if let Some(base) = offset(i, i) {
            for (t, c) in coords.into_iter().enumerate() {
                unit[base + t] = c;
            }
        }
    }
    let labels: Vec<String> = index.iter().map(|&(i, j, k)| format!("h{}{}_{}", i + 1, j + 1, k + 1)).collect();
    let b0 = FiniteDimAlgebra::new(field, labels, table, unit)?;

    let a = s - 1;
    let corner_vanishes = (0..a).all(|i| homs[a][i].dim() == 0);
    let column_matches = (0..a).all(|i| homs[i][a].dim() == datas[i].dim(0));
    let diagonal_dim = (0..a).flat_map(|i| (0..a).map(move |j| (i, j))).map(|(i, j)| homs[i][j].dim()).sum();
    let mut names: Vec<String> = (1..=a).map(|i| format!("M{i}")).collect();
    names.push("A".into());
    Ok(PreresolutionTable {
        labels: names,
        entries,
        nonnegative,
        corner_vanishes,
        column_matches,
        diagonal_dim,
        b0,
    })
}

#[derive(Clone, Debug)]
pub struct SummandInfo {
    pub idempotent: Matrix,
    /// Generators of the summand as combinations of the generators of 𝕄.
    pub generators: Vec<Vector>,
    pub presentation: ModulePresentation,
    pub hilbert: Vec<usize>,
    pub identification: CyclicIdentification,
    /// g·x = 0 holds in 𝕄₁ for the found annihilator.
    pub annihilates: bool,
}

impl SummandInfo {
    pub fn annihilator(&self) -> Option<&Vector> {
        match &self.identification {
            CyclicIdentification::Cyclic { annihilator, .. } => Some(annihilator),
            CyclicIdentification::NonCyclic { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct McmClassification {
    pub summands: Vec<SummandInfo>,
    pub module_hilbert: Vec<usize>,
    pub additivity: Certificate,
}

/// Splits 𝕄 along a complete set of orthogonal idempotents and identifies
/// each summand against a cyclic quotient where possible.
pub fn classify(
    m: &ModulePresentation,
    alg: &GradedAlgebra,
    idempotents: &[Matrix],
    horizon: usize,
) -> Result<McmClassification> {
    let data = ModuleData::compute(m, alg, horizon as i64);
    let mut summands = Vec::new();
    for e in idempotents {
        let (presentation, generators) = idempotent_summand_with(m, &data, alg, e, horizon)?;
        let hilbert = ModuleData::compute(&presentation, alg, horizon as i64).hilbert(0, horizon as i64);
        let identification = identify_cyclic_quotient(&presentation, alg, horizon);
        let annihilates = match &identification {
            CyclicIdentification::Cyclic { annihilator, .. } => {
                let x = m.act(alg, &generators[0], 0, annihilator, 1);
                data.kernel(1).map_or(false, |k| k.contains(&x).unwrap_or(false))
            }
            CyclicIdentification::NonCyclic { .. } => false,
        };
        summands.push(SummandInfo {
            idempotent: e.clone(),
            generators,
            presentation,
            hilbert,
            identification,
            annihilates,
        });
    }
    let module_hilbert = data.hilbert(0, horizon as i64);
    let checks = (0..=horizon)
        .map(|n| {
            let sum: usize = summands.iter().map(|s| s.hilbert[n]).sum();
            Certificate::check(n, module_hilbert[n] as i64, sum as i64)
        })
        .collect();
    Ok(McmClassification {
        summands,
        module_hilbert,
        additivity: Certificate::from_checks("Hilbert additivity over summands", horizon, checks),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyEvidence {
    /// dim Ω(𝕄)_n against dim 𝕄_{n−1}.
    pub dims: Certificate,
    /// For each summand annihilator uᵢ, the index j with ann_{A₁}(uᵢ) = span{uⱼ}.
    pub matching: Vec<Option<usize>>,
    pub permutation: bool,
    pub passed: bool,
}

/// Right annihilator {v ∈ A₁ : x·v = 0} of x ∈ A₁.
pub fn right_annihilator(alg: &GradedAlgebra, x: &[FieldElement]) -> Subspace {
    kernel(&alg.multiplication_matrix(x, 1, 1, true))
}

/// Compares the relation module of 𝕄's free cover with 𝕄 shifted by one,
/// and matches each annihilator uᵢ with the annihilator of uᵢ in A₁.
pub fn syzygy_shift_evidence(
    m: &ModulePresentation,
    alg: &GradedAlgebra,
    annihilators: &[Vector],
    horizon: usize,
) -> Result<SyzygyEvidence> {
    let field = alg.field();
    let data = ModuleData::compute(m, alg, horizon as i64);
    let checks: Vec<DegreeCheck> = (1..=horizon as i64)
        .map(|n| {
            let omega = data.kernel(n).map_or(0, |k| k.dim());
            Certificate::check(n as usize, data.dim(n - 1) as i64, omega as i64)
        })
        .collect();
    let dims = Certificate::from_checks("dim Ω(M)_n = dim M_(n−1)", horizon, checks);
    let spans: Vec<Subspace> = annihilators
        .iter()
        .map(|u| Subspace::from_vectors(field, u.len(), vec![u.clone()]))
        .collect::<Result<_>>()?;
    let matching: Vec<Option<usize>> = annihilators
        .iter()
        .map(|u| {
            let ann = right_annihilator(alg, u);
            spans.iter().position(|s| *s == ann)
        })
        .collect();
    let mut seen = vec![false; annihilators.len()];
    let permutation = matching.iter().all(|m| match m {
        Some(j) if !seen[*j] => {
            seen[*j] = true;
            true
        }
        _ => false,
    });
    Ok(SyzygyEvidence {
        passed: dims.passed && permutation,
        dims,
        matching,
        permutation,
    })
}

/// dim Ω^d(k)_{d+n}: the rank of C_d ⊗ A_n → V^⊗(d−1) ⊗ A_{n+1},
/// c ⊗ a ↦ Σ (first d−1 letters of c) ⊗ (last letter)·a.
pub fn koszul_syzygy_dim(alg: &GradedAlgebra, cd: &Subspace, d: usize, n: usize) -> usize {
    let field = alg.field();
    let g = alg.num_generators();
    let an = alg.dim(n);
    let an1 = alg.dim(n + 1);
    let prefixes = g.pow(d as u32 - 1);
    let gens: Vec<Vector> = (0..g)
        .map(|v| {
            let mut e = zero_vec(field, g);
            e[v] = field.one();
            e
        })
        .collect();
    // (last letter v)·(basis b of A_n) in A_{n+1}
    let left: Vec<Vec<Vector>> = gens
        .iter()
        .map(|gv| (0..an).map(|b| alg.multiply(gv, 1, &unit_vec(field, an, b), n)).collect())
        .collect();
    let mut cols = Vec::with_capacity(cd.dim() * an);
    for c in cd.basis() {
        for b in 0..an {
            let mut out = zero_vec(field, prefixes * an1);
            for (flat, coef) in c.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (prefix, last) = (flat / g, flat % g);
                let block = &mut out[prefix * an1..(prefix + 1) * an1];
                axpy(block, coef, &left[last][b]);
            }
            cols.push(out);
        }
    }
    if cols.is_empty() {
        return 0;
    }
    Matrix::from_rows(field, prefixes * an1, cols).expect("uniform").rank()
}
