//! Dense exact linear algebra: reduced row echelon forms, kernels and
//! subspaces stored by their reduced row basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

pub type Vector = Vec<FieldElement>;

pub fn zero_vec(field: &Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vec(field: &Field, n: usize, k: usize) -> Vector {
    let mut v = zero_vec(field, n);
    v[k] = field.one();
    v
}

pub fn is_zero_vec(v: &[FieldElement]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Coordinate pairing. Panics on empty input; see [`dot_in`].
pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    dot_in(a[0].field(), a, b)
}

pub fn dot_in(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// `y += c·x`
pub fn axpy(y: &mut [FieldElement], c: &FieldElement, x: &[FieldElement]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(c * xi);
        }
    }
}

pub fn scale_vec(v: &[FieldElement], c: &FieldElement) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn add_vec(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scales `v` so that its first nonzero entry is 1.
pub fn normalize_leading(v: &[FieldElement]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(lead) => scale_vec(v, &lead.inv().unwrap()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    cols: usize,
    rows: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            cols,
            rows: vec![zero_vec(field, cols); rows],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Matrix {
            field: field.clone(),
            cols: n,
            rows: (0..n).map(|k| unit_vec(field, n, k)).collect(),
        }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            cols,
            rows,
        })
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_int(x)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows).expect("ragged integer matrix")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.rows[r][c] = v;
    }

    pub fn column(&self, c: usize) -> Vector {
        self.rows.iter().map(|r| r[c].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            field: self.field.clone(),
            cols: self.rows.len(),
            rows: (0..self.cols).map(|c| self.column(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.nrows(),
                self.cols,
                other.nrows(),
                other.cols
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = zero_vec(&self.field, other.cols);
                for (k, a) in r.iter().enumerate() {
                    axpy(&mut out, a, &other.rows[k]);
                }
                out
            })
            .collect();
        Ok(Matrix {
            field: self.field.clone(),
            cols: other.cols,
            rows,
        })
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.rows.iter().map(|r| dot_in(&self.field, r, v)).collect())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix {
            field: self.field.clone(),
            cols: self.cols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| add_vec(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            field: self.field.clone(),
            cols: self.cols,
            rows: self.rows.iter().map(|r| scale_vec(r, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| is_zero_vec(r))
    }

    /// Entries flattened row by row.
    pub fn flatten(&self) -> Vector {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn from_flat(field: &Field, rows: usize, cols: usize, flat: &[FieldElement]) -> Matrix {
        Matrix {
            field: field.clone(),
            cols,
            rows: (0..rows)
                .map(|r| flat[r * cols..(r + 1) * cols].to_vec())
                .collect(),
        }
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination. Pivots are chosen column by column, taking the
/// first row (top to bottom) with a nonzero entry.
pub fn rref(m: &Matrix) -> Rref {
    let mut rows = m.rows.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !rows[r][c].is_one() {
            rows[r] = scale_vec(&rows[r], &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = -&row[c];
                axpy(row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = r;
    Rref {
        matrix: Matrix {
            field: m.field.clone(),
            cols: m.cols,
            rows,
        },
        rank,
        pivots,
    }
}

/// Null space `{v : m·v = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let red = rref(m);
    let n = m.cols;
    let field = &m.field;
    let mut is_pivot = vec![false; n];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(field, n);
        v[free] = field.one();
        for (r, &p) in red.pivots.iter().enumerate() {
            v[p] = -red.matrix.get(r, free);
        }
        basis.push(v);
    }
    Subspace::from_vectors(field, n, basis).expect("kernel vectors have the ambient length")
}

/// One exact solution of `m·x = rhs`, if any.
pub fn solve(m: &Matrix, rhs: &[FieldElement]) -> Result<Option<Vector>> {
    if rhs.len() != m.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            rhs.len(),
            m.nrows()
        )));
    }
    let field = &m.field;
    let aug_rows = m
        .rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let aug = Matrix {
        field: field.clone(),
        cols: m.cols + 1,
        rows: aug_rows,
    };
    let red = rref(&aug);
    if red.pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = zero_vec(field, m.cols);
    for (r, &p) in red.pivots.iter().enumerate() {
        x[p] = red.matrix.get(r, m.cols).clone();
    }
    Ok(Some(x))
}

/// A subspace of `field^ambient`, stored as a reduced row basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: (0..ambient).map(|k| unit_vec(field, ambient, k)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary vectors.
    pub fn from_vectors(field: &Field, ambient: usize, vectors: Vec<Vector>) -> Result<Self> {
        let m = Matrix::from_rows(field, ambient, vectors)?;
        let red = rref(&m);
        let mut basis = red.matrix.rows;
        basis.truncate(red.rank);
        Ok(Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots: red.pivots,
        })
    }

    /// Wraps rows already in reduced row echelon form.
    pub(crate) fn from_rref_rows(field: &Field, ambient: usize, basis: Vec<Vector>) -> Self {
        let pivots: Vec<usize> = basis
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(basis.iter().zip(&pivots).all(|(r, &p)| r[p].is_one()));
        Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix {
            field: self.field.clone(),
            cols: self.ambient,
            rows: self.basis.clone(),
        }
    }

    /// Columns that are not pivots: coordinates of the quotient space.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// `v` minus its component along the basis; zero at every pivot.
    pub fn reduce(&self, v: &[FieldElement]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let factor = -&out[p];
                axpy(&mut out, &factor, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[FieldElement]) -> Result<bool> {
        self.check_len(v.len())?;
        Ok(is_zero_vec(&self.reduce(v)))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[FieldElement]) -> Result<Option<Vector>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn combine(&self, coords: &[FieldElement]) -> Vector {
        let mut out = zero_vec(&self.field, self.ambient);
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(&mut out, c, row);
        }
        out
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n == self.ambient {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(self.ambient, n))
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_len(other.ambient)?;
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Subspace::from_vectors(&self.field, self.ambient, vecs)
    }

    /// Vectors orthogonal to the subspace under the coordinate pairing.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis_matrix())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_len(other.ambient)?;
        Ok(self.intersect_constraints(other.annihilator().basis()))
    }

    /// Elements of `self` orthogonal to every constraint vector.
    pub fn intersect_constraints(&self, constraints: &[Vector]) -> Subspace {
        if self.basis.is_empty() || constraints.is_empty() {
            return self.clone();
        }
        let rows = constraints
            .iter()
            .map(|q| self.basis.iter().map(|b| dot_in(&self.field, q, b)).collect())
            .collect();
        let m = Matrix {
            field: self.field.clone(),
            cols: self.basis.len(),
            rows,
        };
        let lambdas = kernel(&m);
        let vecs = lambdas.basis.iter().map(|l| self.combine(l)).collect();
        Subspace::from_vectors(&self.field, self.ambient, vecs).expect("ambient preserved")
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_len(other.ambient)?;
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn contains(s: &Subspace, v: &[FieldElement]) -> Result<bool> {
    s.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn ints(f: &Field, v: &[i64]) -> Vector {
        v.iter().map(|&x| f.from_int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let f = q();
        let id = Matrix::identity(&f, 3);
        let r = rref(&id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);
        let r = rref(&Matrix::from_ints(&f, &[&[1, 2], &[2, 4]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, Matrix::from_ints(&f, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        let f = q();
        assert_eq!(kernel(&Matrix::zeros(&f, 2, 3)).dim(), 3);
        assert_eq!(kernel(&Matrix::identity(&f, 3)).dim(), 0);
        let k = kernel(&Matrix::from_ints(&f, &[&[1, 1]]));
        assert_eq!(k.basis(), &[ints(&f, &[1, -1])]);
    }

    #[test]
    fn subspace_examples() {
        let f = q();
        let e = |k| unit_vec(&f, 3, k);
        let a = Subspace::from_vectors(&f, 3, vec![e(0), e(1)]).unwrap();
        let b = Subspace::from_vectors(&f, 3, vec![e(1), e(2)]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, Subspace::from_vectors(&f, 3, vec![e(1)]).unwrap());
        assert_eq!(a.intersect(&a).unwrap(), a);
        let s1 = Subspace::from_vectors(&f, 3, vec![e(0)]).unwrap();
        let s2 = Subspace::from_vectors(&f, 3, vec![e(1)]).unwrap();
        assert_eq!(s1.sum(&s2).unwrap(), a);
        let diag = Subspace::from_vectors(&f, 2, vec![ints(&f, &[1, 1])]).unwrap();
        assert!(!diag.contains(&ints(&f, &[1, 0])).unwrap());
        assert!(matches!(
            a.intersect(&Subspace::zero(&f, 4)),
            Err(Error::AmbientMismatch(3, 4))
        ));
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let x = solve(&Matrix::from_ints(&f, &[&[2]]), &[f.from_int(3)])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![f.from_ratio(3, 2)]);
        let none = solve(&Matrix::from_ints(&f, &[&[1, 1], &[1, 1]]), &ints(&f, &[1, 2])).unwrap();
        assert!(none.is_none());
    }
}
