//! Coordinates on tensor powers V^⊗n, placements V^⊗i ⊗ W ⊗ V^⊗j and the
//! Koszul spaces C_n.
//!
//! A word (v_{k_1}, ..., v_{k_n}) has flat index Σ k_j·g^{n−j} with g = dim V,
//! so the leftmost factor is the most significant digit and the flat order is
//! the lexicographic order on words.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{zero_vec, Matrix, Subspace, Vector};

/// A word of generator indices together with its flat coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorIndex {
    pub word: Vec<usize>,
    pub flat: usize,
}

impl TensorIndex {
    pub fn from_word(word: &[usize], g: usize) -> Self {
        TensorIndex {
            word: word.to_vec(),
            flat: flat_index(word, g),
        }
    }

    pub fn from_flat(flat: usize, g: usize, n: usize) -> Self {
        TensorIndex {
            word: word_of(flat, g, n),
            flat,
        }
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

pub fn flat_index(word: &[usize], g: usize) -> usize {
    word.iter().fold(0, |acc, &k| acc * g + k)
}

pub fn word_of(mut flat: usize, g: usize, n: usize) -> Vec<usize> {
    let mut w = vec![0; n];
    for slot in w.iter_mut().rev() {
        *slot = flat % g;
        flat /= g;
    }
    w
}

/// Recovers g from a subspace of V⊗V.
pub fn generator_count(w: &Subspace) -> Result<usize> {
    let a = w.ambient_dim();
    let g = (a as f64).sqrt().round() as usize;
    if g * g != a {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimension {a} is not a square"
        )));
    }
    Ok(g)
}

/// V^⊗i ⊗ w ⊗ V^⊗(n−i−2) for a subspace w of V⊗V.
pub fn place(w: &Subspace, i: usize, n: usize) -> Result<Subspace> {
    let g = generator_count(w)?;
    if n < 2 || i > n - 2 {
        return Err(Error::IndexOutOfRange(format!(
            "placement at {i} in degree {n}"
        )));
    }
    let field = w.field();
    let j = n - i - 2;
    let (left, right) = (g.pow(i as u32), g.pow(j as u32));
    let ambient = g.pow(n as u32);
    // Rows ordered by (prefix, basis row, suffix) keep the reduced echelon shape.
    let mut rows = Vec::with_capacity(left * right * w.dim());
    for p in 0..left {
        for b in w.basis() {
            for s in 0..right {
                let mut v = zero_vec(field, ambient);
                for (ab, c) in b.iter().enumerate() {
                    if !c.is_zero() {
                        v[(p * g * g + ab) * right + s] = c.clone();
                    }
                }
                rows.push(v);
            }
        }
    }
    Ok(Subspace::from_rref_rows(field, ambient, rows))
}

/// c ⊗ V for a subspace c of V^⊗n.
pub fn tensor_right(c: &Subspace, g: usize) -> Subspace {
    let field = c.field();
    let ambient = c.ambient_dim() * g;
    let mut rows = Vec::with_capacity(c.dim() * g);
    for b in c.basis() {
        for l in 0..g {
            let mut v = zero_vec(field, ambient);
            for (k, x) in b.iter().enumerate() {
                if !x.is_zero() {
                    v[k * g + l] = x.clone();
                }
            }
            rows.push(v);
        }
    }
    Subspace::from_rref_rows(field, ambient, rows)
}

/// The spaces C_0, ..., C_upto for relations `r`.
pub fn koszul_spaces(r: &Subspace, upto: usize) -> Result<Vec<Subspace>> {
    let g = generator_count(r)?;
    let field = r.field();
    let mut out = vec![Subspace::full(field, 1)];
    if upto >= 1 {
        out.push(Subspace::full(field, g));
    }
    if upto >= 2 {
        out.push(r.clone());
    }
    let r_perp = r.annihilator();
    for n in 3..=upto {
        // C_n = (C_{n−1} ⊗ V) ∩ (V^⊗(n−2) ⊗ R)
        let prev = tensor_right(&out[n - 1], g);
        let constraints = place(&r_perp, n - 2, n)?;
        out.push(prev.intersect_constraints(constraints.basis()));
    }
    Ok(out)
}

pub fn koszul_space(r: &Subspace, n: usize) -> Result<Subspace> {
    Ok(koszul_spaces(r, n)?.pop().unwrap())
}

/// Degree-n part U_n of the two-sided ideal generated by `r`, computed as
/// the plain sum of all placements.
pub fn ideal_component(r: &Subspace, n: usize) -> Result<Subspace> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("ideal component in degree {n}")));
    }
    let g = generator_count(r)?;
    let ambient = g.pow(n as u32);
    let mut vecs = Vec::new();
    for i in 0..=n - 2 {
        vecs.extend(place(r, i, n)?.basis().iter().cloned());
    }
    Subspace::from_vectors(r.field(), ambient, vecs)
}

/// Writes each basis vector of `upper` ⊆ `lower` ⊗ V in the coordinates
/// {c_k ⊗ v_l} (index k·g + l), where c_k is the stored basis of `lower`.
pub fn express_in_tensor_basis(lower: &Subspace, upper: &Subspace, g: usize) -> Result<Matrix> {
    let field = lower.field();
    let cols = lower.dim() * g;
    let mut rows = Vec::with_capacity(upper.dim());
    for x in upper.basis() {
        let mut coords: Vector = zero_vec(field, cols);
        for (k, &p) in lower.pivots().iter().enumerate() {
            for l in 0..g {
                coords[k * g + l] = x[p * g + l].clone();
            }
        }
        let mut rebuilt = zero_vec(field, x.len());
        for (k, c) in lower.basis().iter().enumerate() {
            for l in 0..g {
                let a = &coords[k * g + l];
                if a.is_zero() {
                    continue;
                }
                for (u, cu) in c.iter().enumerate() {
                    if !cu.is_zero() {
                        rebuilt[u * g + l] = &rebuilt[u * g + l] + &(a * cu);
                    }
                }
            }
        }
        if rebuilt != *x {
            return Err(Error::ContainmentViolated(
                "vector does not lie in the tensor product with V".into(),
            ));
        }
        rows.push(coords);
    }
    Matrix::from_rows(field, cols, rows)
}

/// The C_{d+1} basis in the coordinates {c_k ⊗ v_l} of C_d ⊗ V.
#[allow(non_snake_case)]
pub fn express_in_CdV(r: &Subspace, d: usize) -> Result<Matrix> {
    let g = generator_count(r)?;
    let spaces = koszul_spaces(r, d + 1)?;
    express_in_tensor_basis(&spaces[d], &spaces[d + 1], g)
}

/// Subspace spanned by integer vectors in V^⊗n, a test convenience.
pub fn span_ints(field: &Field, ambient: usize, vecs: &[Vec<i64>]) -> Subspace {
    let rows = vecs
        .iter()
        .map(|v| v.iter().map(|&x| field.from_int(x)).collect())
        .collect();
    Subspace::from_vectors(field, ambient, rows).expect("vectors of ambient length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vec;

    fn commutative(field: &Field, g: usize) -> Subspace {
        let mut vecs = Vec::new();
        for a in 0..g {
            for b in a + 1..g {
                let mut v = vec![0; g * g];
                v[a * g + b] = 1;
                v[b * g + a] = -1;
                vecs.push(v);
            }
        }
        span_ints(field, g * g, &vecs)
    }

    #[test]
    fn indexing_roundtrip() {
        let t = TensorIndex::from_word(&[2, 0, 1], 3);
        assert_eq!(t.flat, 19);
        assert_eq!(TensorIndex::from_flat(19, 3, 3), t);
    }

    #[test]
    fn placement_examples() {
        let f = Field::rationals();
        let r = commutative(&f, 3);
        assert_eq!(place(&r, 0, 2).unwrap(), r);
        assert_eq!(place(&Subspace::zero(&f, 9), 1, 4).unwrap().dim(), 0);
        let p = place(&r, 0, 3).unwrap();
        assert_eq!(p.dim(), 9);
        // must match a from-scratch reduction
        let again = Subspace::from_vectors(&f, 27, p.basis().to_vec()).unwrap();
        assert_eq!(again, p);
        assert!(place(&r, 2, 3).is_err());
    }

    #[test]
    fn polynomial_ring_koszul_dims_are_binomial() {
        let f = Field::rationals();
        for g in 2..=4usize {
            let r = commutative(&f, g);
            let spaces = koszul_spaces(&r, g + 1).unwrap();
            for (n, c) in spaces.iter().enumerate() {
                let expected = if n <= g {
                    (0..n).fold(1, |acc, k| acc * (g - k) / (k + 1))
                } else {
                    0
                };
                assert_eq!(c.dim(), expected, "g={g}, n={n}");
            }
        }
    }

    #[test]
    fn koszul_recursion_matches_full_intersection() {
        let f = Field::rationals();
        let r = commutative(&f, 3);
        let c3 = koszul_space(&r, 3).unwrap();
        let brute = place(&r, 0, 3)
            .unwrap()
            .intersect(&place(&r, 1, 3).unwrap())
            .unwrap();
        assert_eq!(c3, brute);
        assert_eq!(c3.dim(), 1);
    }

    #[test]
    fn ideal_component_edges() {
        let f = Field::rationals();
        let r = commutative(&f, 2);
        assert_eq!(ideal_component(&r, 2).unwrap(), r);
        assert_eq!(ideal_component(&Subspace::zero(&f, 4), 3).unwrap().dim(), 0);
    }

    #[test]
    fn express_commutative_plane() {
        let f = Field::rationals();
        let r = commutative(&f, 2);
        let m = express_in_CdV(&r, 1).unwrap();
        assert_eq!(m, Matrix::from_ints(&f, &[&[0, 1, -1, 0]]));
        let zero = express_in_tensor_basis(
            &Subspace::full(&f, 2),
            &Subspace::zero(&f, 4),
            2,
        )
        .unwrap();
        assert_eq!(zero.nrows(), 0);
        let bad = Subspace::from_vectors(&f, 4, vec![unit_vec(&f, 4, 3)]).unwrap();
        let lower = Subspace::from_vectors(&f, 2, vec![unit_vec(&f, 2, 0)]).unwrap();
        assert!(matches!(
            express_in_tensor_basis(&lower, &bad, 2),
            Err(Error::ContainmentViolated(_))
        ));
    }
}
