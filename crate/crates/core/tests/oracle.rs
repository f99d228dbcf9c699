//! Expected values checked against brute-force computations that share no
//! code with the library's linear algebra.

mod common;

use num_rational::BigRational;
use num_traits::{One, Zero};

use common::{context, gauss_vec};
use quadric::algebra::FiniteDimAlgebra;
use quadric::field::{Field, FieldElement};
use quadric::hypersurface::{c_algebra_via_dual, end_m, syzygy_presentation};
use quadric::linalg::{Matrix, Vector};
use quadric::mcm::{
    classify, cyclic_quotient, preresolution_table, right_annihilator, syzygy_shift_evidence, ModuleData,
};
use quadric::poly::Polynomial;
use quadric::quadratic::{hilbert, is_central_deg2, koszul_numeric_check, GradedAlgebra, QuadraticPresentation};
use quadric::tensor::{ideal_component, koszul_space, place, span_ints};

/// a + b·i with rational parts.
#[derive(Clone, Debug, PartialEq)]
struct Gq {
    re: BigRational,
    im: BigRational,
}

impl Gq {
    fn int(a: i64, b: i64) -> Self {
        Gq {
            re: BigRational::from_integer(a.into()),
            im: BigRational::from_integer(b.into()),
        }
    }

    fn from(e: &FieldElement) -> Self {
        let c = e.coords();
        Gq {
            re: c[0].clone(),
            im: c.get(1).cloned().unwrap_or_else(BigRational::zero),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Gq) -> Gq {
        Gq {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &Gq) -> Gq {
        Gq {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn inv(&self) -> Gq {
        let n = &self.re * &self.re + &self.im * &self.im;
        Gq {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }
}

fn rank(mut rows: Vec<Vec<Gq>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].mul(&inv);
                for k in c..cols {
                    let t = f.mul(&rows[r][k]);
                    rows[i][k] = rows[i][k].sub(&t);
                }
            }
        }
        r += 1;
    }
    r
}

fn lift(v: &[FieldElement]) -> Vec<Gq> {
    v.iter().map(Gq::from).collect()
}

fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<Gq>> {
    rows.iter().map(|r| r.iter().map(|&a| Gq::int(a, 0)).collect()).collect()
}

fn tensor3(a: &[Vec<i64>], left: bool, g: usize) -> Vec<Vec<i64>> {
    // v ⊗ r or r ⊗ v for r in a and every generator v
    let mut out = Vec::new();
    for r in a {
        for v in 0..g {
            let mut t = vec![0; r.len() * g];
            for (k, &c) in r.iter().enumerate() {
                let idx = if left { v * r.len() + k } else { k * g + v };
                t[idx] = c;
            }
            out.push(t);
        }
    }
    out
}

/// xx, xy, xz, yx, yy, yz, zx, zy, zz
fn skew_relations() -> Vec<Vec<i64>> {
    vec![
        vec![0, 0, 1, 0, 0, 0, 1, 0, 0],
        vec![0, 0, 0, 0, 0, 1, 0, 1, 0],
        vec![1, 0, 0, 0, 1, 0, 0, 0, 0],
        vec![1, 0, 0, 0, 0, 0, 0, 0, 1],
    ]
}

fn commutators(g: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            let mut v = vec![0; g * g];
            v[i * g + j] = 1;
            v[j * g + i] = -1;
            out.push(v);
        }
    }
    out
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn skew_relation_rank() {
    assert_eq!(rank(int_rows(&skew_relations())), 4);
    let ctx = context("skew_quadric.txt", 4);
    assert_eq!(ctx.a.relations().dim(), 4);
}

#[test]
fn placement_and_degree_three_ideal() {
    let ctx = context("skew_quadric.txt", 4);
    let r = ctx.a.relations();
    assert_eq!(place(r, 0, 3).unwrap().dim(), 4 * 3);
    let mut both = tensor3(&skew_relations(), false, 3);
    both.extend(tensor3(&skew_relations(), true, 3));
    let oracle = rank(int_rows(&both));
    assert_eq!(oracle, 20);
    assert_eq!(ideal_component(r, 3).unwrap().dim(), oracle);
    // inclusion–exclusion gives the C_3 dimension
    assert_eq!(koszul_space(r, 3).unwrap().dim(), 12 + 12 - oracle);
}

#[test]
fn commutative_koszul_space_in_degree_three() {
    let rels = commutators(3);
    let r_v = rank(int_rows(&tensor3(&rels, false, 3)));
    let v_r = rank(int_rows(&tensor3(&rels, true, 3)));
    let mut both = tensor3(&rels, false, 3);
    both.extend(tensor3(&rels, true, 3));
    let meet = r_v + v_r - rank(int_rows(&both));
    assert_eq!(meet, 1);
    let f = Field::rationals();
    let r = span_ints(&f, 9, &rels);
    assert_eq!(koszul_space(&r, 3).unwrap().dim(), meet);
}

#[test]
fn hilbert_series_closed_forms() {
    let ctx = context("skew_quadric.txt", 6);
    // 1/(1−t)³ and (1−t²)/(1−t)³
    let s: Vec<i64> = (0..=6).map(|n| binomial(n + 2, 2)).collect();
    let a: Vec<i64> = (0..=6).map(|n| s[n] - if n >= 2 { s[n - 2] } else { 0 }).collect();
    assert_eq!(&s[..4], &[1, 3, 6, 10]);
    assert_eq!(a, [1, 3, 5, 7, 9, 11, 13]);
    let hs: Vec<i64> = ctx.s_alg.hilbert(3).into_iter().map(|d| d as i64).collect();
    let ha: Vec<i64> = ctx.a_alg.hilbert(6).into_iter().map(|d| d as i64).collect();
    assert_eq!(hs, s[..4]);
    assert_eq!(ha, a);
}

#[test]
fn polynomial_ring_dual_is_exterior() {
    let f = Field::rationals();
    let p = QuadraticPresentation::from_relations(&f, &["x", "y"], vec![quadric::linalg::Vector::from(
        [0, 1, -1, 0].map(|a| f.from_int(a)),
    )])
    .unwrap();
    // R^⊥ is spanned by xx, yy and xy+yx, so the dual is Λ(x, y)
    let perp = int_rows(&[vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 1, 1, 0]]);
    assert_eq!(rank(perp), 3);
    assert_eq!(hilbert(&p.quadratic_dual(), 3), [1, 2, 1, 0]);
}

#[test]
fn centrality_of_skew_elements() {
    let ctx = context("skew_quadric.txt", 4);
    let s_rels = &skew_relations()[..3];
    let mut ideal = tensor3(s_rels, false, 3);
    ideal.extend(tensor3(s_rels, true, 3));
    let base = rank(int_rows(&ideal));
    // w is central when w⊗v − v⊗w lies in the degree-3 ideal for every v
    let central = |w: &[i64]| {
        (0..3).all(|v| {
            let right = tensor3(&[w.to_vec()], false, 3).swap_remove(v);
            let left = tensor3(&[w.to_vec()], true, 3).swap_remove(v);
            let diff: Vec<i64> = right.iter().zip(&left).map(|(a, b)| a - b).collect();
            let mut rows = ideal.clone();
            rows.push(diff);
            rank(int_rows(&rows)) == base
        })
    };
    let f = Field::gaussian();
    for (w, expected) in [
        (vec![1, 0, 0, 0, 0, 0, 0, 0, 0], true),
        (vec![0, 1, 0, 0, 0, 0, 0, 0, 0], false),
        (vec![1, 0, 0, 0, 0, 0, 0, 0, 1], true),
    ] {
        assert_eq!(central(&w), expected, "{w:?}");
        let tensor: Vector = w.iter().map(|&a| f.from_int(a)).collect();
        assert_eq!(is_central_deg2(&ctx.s_alg, &tensor).unwrap(), expected, "{w:?}");
    }
}

/// All F ∈ {−2..2}^{2×2} with (F⊗1)(C_2) ⊆ C_2, for C_2 = span{xx, xy−yx}
/// or span{xx+yy, xy−yx}.
fn brute_force_end(c2: &[Vec<i64>]) -> Vec<[i64; 4]> {
    let base = rank(int_rows(c2));
    let mut out = Vec::new();
    let range = -2..=2;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    // F(x) = a x + c y, F(y) = b x + d y
                    let image = |v: &[i64]| {
                        let mut t = vec![0; 4];
                        for first in 0..2 {
                            for second in 0..2 {
                                let coef = v[first * 2 + second];
                                let (to_x, to_y) = if first == 0 { (a, c) } else { (b, d) };
                                t[second] += coef * to_x;
                                t[2 + second] += coef * to_y;
                            }
                        }
                        t
                    };
                    let mut rows = c2.to_vec();
                    rows.extend(c2.iter().map(|v| image(v)));
                    if rank(int_rows(&rows)) == base {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn end_contains(name: &str, family: &[[i64; 4]]) {
    let ctx = context(name, 4);
    let end = end_m(&ctx).unwrap();
    assert_eq!(end.dim(), 2);
    let f = ctx.a.field().clone();
    // the crate's C_1 basis is x, y in that order
    for m in family {
        let flat: Vector = m.iter().map(|&v| f.from_int(v)).collect();
        assert!(end.solution_space.contains(&flat).unwrap(), "{name}: {m:?}");
    }
}

#[test]
fn double_line_end_family() {
    let family = brute_force_end(&[vec![1, 0, 0, 0], vec![0, 1, -1, 0]]);
    assert_eq!(family.len(), 25);
    assert!(family.iter().all(|&[a, _, c, d]| c == 0 && a == d));
    end_contains("double_line.txt", &family);
    let ctx = context("double_line.txt", 4);
    let end = end_m(&ctx).unwrap();
    assert!(!end.algebra.is_semisimple());
    assert_eq!(end.algebra.radical().dim(), 1);
}

#[test]
fn node_end_family() {
    let family = brute_force_end(&[vec![1, 0, 0, 1], vec![0, 1, -1, 0]]);
    assert_eq!(family.len(), 25);
    assert!(family.iter().all(|&[a, b, c, d]| a == d && b == -c));
    end_contains("node_rational.txt", &family);
    let ctx = context("node_rational.txt", 4);
    let end = end_m(&ctx).unwrap();
    assert!(end.algebra.is_semisimple());
    let dual = c_algebra_via_dual(&ctx, None).unwrap();
    assert_eq!(dual.algebra.dim(), 2);
    assert!(dual.algebra.is_semisimple());
    let dual_s = GradedAlgebra::new(ctx.s.quadratic_dual()).hilbert(3);
    assert_eq!(dual_s.iter().sum::<usize>(), 4);
    assert_eq!(2 * dual.algebra.dim(), 4);
}

#[test]
fn double_line_dual_has_radical() {
    let ctx = context("double_line.txt", 4);
    let dual = c_algebra_via_dual(&ctx, None).unwrap();
    assert_eq!(dual.algebra.dim(), 2);
    assert_eq!(dual.algebra.radical().dim(), 1);
}

fn rotations(field: &Field) -> FiniteDimAlgebra {
    let i = Matrix::from_ints(field, &[&[1, 0], &[0, 1]]);
    let j = Matrix::from_ints(field, &[&[0, 1], &[-1, 0]]);
    FiniteDimAlgebra::from_matrices(field, &[i, j]).unwrap().0
}

#[test]
fn rotation_min_poly() {
    let q = Field::rationals();
    // J² = −I by hand
    let j = [[0i64, 1], [-1, 0]];
    let sq: Vec<i64> = (0..4).map(|k| (0..2).map(|m| j[k / 2][m] * j[m][k % 2]).sum()).collect();
    assert_eq!(sq, [-1, 0, 0, -1]);
    let alg = rotations(&q);
    let generic = vec![q.zero(), q.one()];
    assert_eq!(alg.min_poly(&generic), Polynomial::from_ints(&q, &[1, 0, 1]));
    assert!(matches!(alg.primitive_idempotents(0), Err(quadric::Error::NonSplit { .. })));
}

#[test]
fn rotation_idempotents_over_gaussian() {
    let f = Field::gaussian();
    let alg = rotations(&f);
    let set = alg.primitive_idempotents(0).unwrap();
    // (1 ± iJ)/2 in the basis I, J
    let half = BigRational::new(1.into(), 2.into());
    let expected: Vec<Vec<Gq>> = [BigRational::one(), -BigRational::one()]
        .into_iter()
        .map(|s| {
            vec![
                Gq { re: half.clone(), im: BigRational::zero() },
                Gq { re: BigRational::zero(), im: &half * s },
            ]
        })
        .collect();
    let mut found: Vec<Vec<Gq>> = set.idempotents.iter().map(|e| lift(e)).collect();
    assert_eq!(found.len(), 2);
    found.sort_by(|a, b| b[1].im.cmp(&a[1].im));
    assert_eq!(found, expected);
}

#[test]
fn syzygy_module_dims() {
    let ctx = context("skew_quadric.txt", 6);
    let m = syzygy_presentation(&ctx).unwrap();
    let data = ModuleData::compute(&m, &ctx.a_alg, 2);
    // 4 generators in degree 0, and 4·dim A_1 minus dim C_3 = 4 independent relations
    let relations: Vec<Vec<Gq>> = m.relations().iter().map(|r| lift(&r.vector)).collect();
    let independent = rank(relations);
    assert_eq!(independent, 4);
    assert_eq!([data.dim(0), data.dim(1)], [4, 4 * 3 - independent]);
    assert_eq!([data.dim(0), data.dim(1)], [4, 8]);
    let anns: Vec<Vector> = vec![
        gauss_vec(&[(0, 0), (1, 0), (0, 1)]),
        gauss_vec(&[(0, 0), (1, 0), (0, -1)]),
        gauss_vec(&[(1, 0), (0, 0), (1, 0)]),
        gauss_vec(&[(1, 0), (0, 0), (-1, 0)]),
    ];
    let ev = syzygy_shift_evidence(&m, &ctx.a_alg, &anns, 2).unwrap();
    let omega: Vec<i64> = ev.dims.checks.iter().map(|c| c.actual).collect();
    assert_eq!(omega, [4, 8]);
}

#[test]
fn cyclic_quotient_dims() {
    let ctx = context("skew_quadric.txt", 6);
    let alg = &ctx.a_alg;
    let x = gauss_vec(&[(0, 0), (1, 0), (0, 1)]);
    // dim (A/xA)_n = dim A_n − rank of left multiplication by x
    let quotient: Vec<usize> = (0..=6usize)
        .map(|n| {
            if n == 0 {
                return 1;
            }
            let m = alg.multiplication_matrix(&x, 1, n - 1, true);
            let rows: Vec<Vec<Gq>> = m.rows().iter().map(|r| lift(r)).collect();
            alg.dim(n) - rank(rows)
        })
        .collect();
    assert_eq!(quotient, [1, 2, 3, 4, 5, 6, 7]);
    // x² = 0 makes A/xA ≅ xA(1), so consecutive quotient dims sum to dim A_n
    for n in 1..=6 {
        assert_eq!(quotient[n] + quotient[n - 1], alg.dim(n));
    }
    let data = ModuleData::compute(&cyclic_quotient(alg, &x), alg, 6);
    assert_eq!(data.hilbert(0, 6), quotient);
}

#[test]
fn node_annihilators() {
    let ctx = context("node_gaussian.txt", 4);
    // (u₁x + u₂y)(ax + by) with y² = −x²: [[u₁, −u₂], [u₂, u₁]]·(a, b)
    for (u, v) in [((1, 0, 0, 1), (1, 0, 0, -1)), ((1, 0, 0, -1), (1, 0, 0, 1))] {
        let u1 = Gq::int(u.0, u.1);
        let u2 = Gq::int(u.2, u.3);
        let minus_u2 = Gq::int(0, 0).sub(&u2);
        let system = vec![vec![u1.clone(), minus_u2], vec![u2.clone(), u1.clone()]];
        assert_eq!(rank(system), 1);
        let (a, b) = (Gq::int(v.0, v.1), Gq::int(v.2, v.3));
        assert!(u1.mul(&a).sub(&u2.mul(&b)).is_zero());
        let ann = right_annihilator(&ctx.a_alg, &gauss_vec(&[(u.0, u.1), (u.2, u.3)]));
        assert_eq!(ann.dim(), 1);
        assert!(ann.contains(&gauss_vec(&[(v.0, v.1), (v.2, v.3)])).unwrap());
    }
    let end = end_m(&ctx).unwrap();
    let set = end.algebra.primitive_idempotents(0).unwrap();
    let mats: Vec<Matrix> = set.idempotents.iter().map(|e| end.to_matrix(e)).collect();
    let m = syzygy_presentation(&ctx).unwrap();
    let classes = classify(&m, &ctx.a_alg, &mats, 4).unwrap();
    let mut found: Vec<Vec<Gq>> = classes
        .summands
        .iter()
        .map(|s| lift(&quadric::linalg::normalize_leading(s.annihilator().unwrap())))
        .collect();
    found.sort_by(|a, b| a[1].im.cmp(&b[1].im));
    assert_eq!(found, [vec![Gq::int(1, 0), Gq::int(0, -1)], vec![Gq::int(1, 0), Gq::int(0, 1)]]);
}

#[test]
fn preresolution_dims() {
    let ctx = context("skew_quadric.txt", 4);
    let end = end_m(&ctx).unwrap();
    let set = end.algebra.primitive_idempotents(0).unwrap();
    let mats: Vec<Matrix> = set.idempotents.iter().map(|e| end.to_matrix(e)).collect();
    let m = syzygy_presentation(&ctx).unwrap();
    let classes = classify(&m, &ctx.a_alg, &mats, 4).unwrap();
    let pres: Vec<_> = classes.summands.iter().map(|s| s.presentation.clone()).collect();
    let table = preresolution_table(&pres, &ctx.a_alg, -1, 4).unwrap();
    let hom0 = |s: usize, t: usize| {
        let e = table.entries.iter().find(|e| e.source == s && e.target == t).unwrap();
        e.dims.iter().find(|&&(n, _)| n == 0).unwrap().1
    };
    let a = pres.len();
    let diagonal: usize = (0..a).flat_map(|i| (0..a).map(move |j| (i, j))).map(|(i, j)| hom0(i, j)).sum();
    let column: usize = (0..a).map(|i| hom0(a, i)).sum();
    let corner: usize = (0..a).map(|i| hom0(i, a)).sum();
    assert_eq!((diagonal, column, corner, hom0(a, a)), (4, 4, 0, 1));
    assert_eq!(table.b0.dim(), diagonal + column + corner + hom0(a, a));
    let row: Vec<usize> = table
        .entries
        .iter()
        .find(|e| e.source == a && e.target == a)
        .unwrap()
        .dims
        .iter()
        .filter(|&&(n, _)| n >= 0)
        .map(|&(_, d)| d)
        .collect();
    assert_eq!(row, [1, 3, 5, 7, 9]);
}

#[test]
fn truncated_polynomial_is_koszul() {
    let f = Field::rationals();
    let p = QuadraticPresentation::from_relations(&f, &["x"], vec![vec![f.one()]]).unwrap();
    // (1 + t)·1/(1 + t) = 1
    let cert = koszul_numeric_check(&p, 8);
    assert!(cert.passed);
    assert_eq!(hilbert(&p, 3), [1, 1, 0, 0]);
    assert_eq!(hilbert(&p.quadratic_dual(), 3), [1, 1, 1, 1]);
}
