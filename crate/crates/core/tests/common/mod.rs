#![allow(dead_code)]

use std::path::PathBuf;

use quadric::field::{Field, FieldElement};
use quadric::hypersurface::{build_context, HypersurfaceContext};
use quadric::linalg::{solve, unit_vec, Matrix, Vector};

pub fn input_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../inputs").join(name)
}

pub fn input(name: &str) -> String {
    std::fs::read_to_string(input_path(name)).expect("input file")
}

pub fn context(name: &str, horizon: usize) -> HypersurfaceContext {
    let (s, w) = quadric::parse::parse(&input(name)).expect("parse");
    build_context(&s, &w, horizon).expect("context")
}

/// a + b·i over ℚ(i).
pub fn gauss(a: i64, b: i64) -> FieldElement {
    let f = Field::gaussian();
    let i = f.generator().unwrap();
    let re = f.from_int(a);
    let im = i.checked_mul(&f.from_int(b)).unwrap();
    re.checked_add(&im).unwrap()
}

pub fn gauss_vec(entries: &[(i64, i64)]) -> Vector {
    entries.iter().map(|&(a, b)| gauss(a, b)).collect()
}

pub fn int_vec(field: &Field, entries: &[i64]) -> Vector {
    entries.iter().map(|&a| field.from_int(a)).collect()
}

pub fn inverse(m: &Matrix) -> Matrix {
    let n = m.nrows();
    let cols: Vec<Vector> = (0..n)
        .map(|k| solve(m, &unit_vec(m.field(), n, k)).unwrap().expect("invertible"))
        .collect();
    Matrix::from_rows(m.field(), n, cols).unwrap().transpose()
}
