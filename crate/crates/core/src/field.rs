//! Exact scalars over ℚ, the Gaussian rationals ℚ(i), and simple number
//! fields ℚ[θ]/(m(θ)).
//!
//! Every field is stored as ℚ[θ]/(m(θ)) with a monic integer modulus; ℚ is the
//! degenerate case m(θ) = θ and ℚ(i) uses m(θ) = θ² + 1 with θ printed as `i`.
//! Elements carry their coordinates in the power basis 1, θ, ..., θ^{deg-1}.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldKind {
    Rationals,
    Gaussian,
    SimpleExtension,
}

/// How irreducibility of an extension modulus was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Irreducibility {
    /// Degree ≤ 3 and no rational roots.
    Checked,
    /// Degree ≥ 4: taken on the user's word.
    Asserted,
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
    /// Monic modulus, coefficients from the constant term up.
    modulus: Vec<BigInt>,
    var: String,
    irreducibility: Irreducibility,
}

/// A cheaply clonable handle to a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldSpec>);

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(FieldSpec {
            kind: FieldKind::Rationals,
            modulus: vec![BigInt::zero(), BigInt::one()],
            var: String::new(),
            irreducibility: Irreducibility::Checked,
        }))
    }

    pub fn gaussian() -> Self {
        Field(Arc::new(FieldSpec {
            kind: FieldKind::Gaussian,
            modulus: vec![BigInt::one(), BigInt::zero(), BigInt::one()],
            var: "i".to_string(),
            irreducibility: Irreducibility::Checked,
        }))
    }

    /// ℚ[var]/(modulus). `modulus` lists integer coefficients from the
    /// constant term up and must be monic of degree ≥ 2.
    pub fn simple_extension(var: &str, modulus: Vec<BigInt>) -> Result<Self> {
        let mut modulus = modulus;
        while modulus.last().is_some_and(|c| c.is_zero()) {
            modulus.pop();
        }
        if modulus.len() < 3 {
            return Err(Error::InvalidField(
                "extension modulus must have degree at least 2".into(),
            ));
        }
        if !modulus.last().unwrap().is_one() {
            return Err(Error::InvalidField("extension modulus must be monic".into()));
        }
        let deg = modulus.len() - 1;
        if has_rational_root(&modulus) {
            return Err(Error::InvalidField(format!(
                "modulus of degree {deg} has a rational root"
            )));
        }
        let irreducibility = if deg <= 3 {
            Irreducibility::Checked
        } else {
            Irreducibility::Asserted
        };
        Ok(Field(Arc::new(FieldSpec {
            kind: FieldKind::SimpleExtension,
            modulus,
            var: var.to_string(),
            irreducibility,
        })))
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    /// Degree of the field over ℚ.
    pub fn degree(&self) -> usize {
        match self.0.kind {
            FieldKind::Rationals => 1,
            _ => self.0.modulus.len() - 1,
        }
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.0.modulus
    }

    pub fn var(&self) -> &str {
        &self.0.var
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.0.irreducibility
    }

    pub fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coords: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> FieldElement {
        self.from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        let mut coords = vec![BigRational::zero(); self.degree()];
        coords[0] = q;
        FieldElement {
            field: self.clone(),
            coords,
        }
    }

    /// The adjoined element θ (`i` for the Gaussian field). ℚ has none.
    pub fn generator(&self) -> Option<FieldElement> {
        if self.degree() < 2 {
            return None;
        }
        let mut e = self.zero();
        e.coords[1] = BigRational::one();
        Some(e)
    }

    /// Builds an element from power-basis coordinates, reducing if too long.
    pub fn element(&self, coords: Vec<BigRational>) -> FieldElement {
        let mut e = FieldElement {
            field: self.clone(),
            coords,
        };
        e.reduce();
        e
    }

    /// Text form accepted by presentation files.
    pub fn spec_string(&self) -> String {
        match self.0.kind {
            FieldKind::Rationals => "Q".into(),
            FieldKind::Gaussian => "Q(i)".into(),
            FieldKind::SimpleExtension => {
                let v = &self.0.var;
                format!("Q[{v}]/({})", int_poly_string(&self.0.modulus, v))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

fn int_poly_string(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

/// Rational-root test for a monic integer polynomial: any rational root is
/// an integer dividing the constant term.
fn has_rational_root(monic: &[BigInt]) -> bool {
    let c0 = &monic[0];
    if c0.is_zero() {
        return true;
    }
    let bound = c0.abs();
    // Trial over divisors; moduli here are tiny.
    let mut d = BigInt::one();
    while d <= bound {
        if (&bound % &d).is_zero() {
            for cand in [d.clone(), -d.clone()] {
                let mut acc = BigInt::zero();
                for c in monic.iter().rev() {
                    acc = acc * &cand + c;
                }
                if acc.is_zero() {
                    return true;
                }
            }
        }
        d += 1;
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An exact element of a [`Field`].
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The element as a rational, if it lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coords[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| &self.coords[0])
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn reduce(&mut self) {
        let deg = self.field.degree();
        let m = &self.field.0.modulus;
        while self.coords.len() > deg {
            let top = self.coords.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = self.coords.len() - deg;
            for (k, mk) in m.iter().take(deg).enumerate() {
                if !mk.is_zero() {
                    let t = &top * BigRational::from_integer(mk.clone());
                    self.coords[shift + k] -= t;
                }
            }
        }
        self.coords.resize(deg, BigRational::zero());
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let inv = other.inv()?;
        Ok(self.mul_unchecked(&inv))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    fn sub_unchecked(&self, other: &Self) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coords,
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let deg = self.coords.len();
        if deg == 1 {
            return FieldElement {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &other.coords[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut e = FieldElement {
            field: self.field.clone(),
            coords: prod,
        };
        e.reduce();
        e
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let deg = self.coords.len();
        if deg == 1 {
            return Ok(FieldElement {
                field: self.field.clone(),
                coords: vec![self.coords[0].recip()],
            });
        }
        if self.field.kind() == FieldKind::Gaussian {
            let (a, b) = (&self.coords[0], &self.coords[1]);
            let norm = a * a + b * b;
            return Ok(FieldElement {
                field: self.field.clone(),
                coords: vec![a / &norm, -(b / &norm)],
            });
        }
        // Solve (multiplication-by-self matrix) · x = 1 over ℚ.
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(deg);
        let mut basis = self.field.one();
        let theta = self.field.generator().unwrap();
        for _ in 0..deg {
            cols.push(self.mul_unchecked(&basis).coords);
            basis = basis.mul_unchecked(&theta);
        }
        let mut aug: Vec<Vec<BigRational>> = (0..deg)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..deg).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..deg {
            let piv = (col..deg)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            aug.swap(col, piv);
            let p = aug[col][col].clone();
            for v in aug[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..deg {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in col..=deg {
                        let t = &factor * &aug[col][c];
                        aug[r][c] -= t;
                    }
                }
            }
        }
        Ok(FieldElement {
            field: self.field.clone(),
            coords: aug.into_iter().map(|mut row| row.pop().unwrap()).collect(),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Complex conjugate for ℚ(i); identity elsewhere.
    pub fn conj(&self) -> Self {
        if self.field.kind() == FieldKind::Gaussian {
            FieldElement {
                field: self.field.clone(),
                coords: vec![self.coords[0].clone(), -self.coords[1].clone()],
            }
        } else {
            self.clone()
        }
    }
}

/// Binary field operation with explicit error reporting.
pub fn field_arithmetic(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Div => a.checked_div(b),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(self.field.same(&rhs.field), "field mismatch");
                self.$inner(rhs)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let var = self.field.var();
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mono.is_empty() {
                f.write_str(&rational_string(&mag))?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", rational_string(&mag), mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sum() {
        let q = Field::rationals();
        let s = field_arithmetic(&q.from_ratio(1, 2), &q.from_ratio(1, 3), FieldOp::Add).unwrap();
        assert_eq!(s, q.from_ratio(5, 6));
        assert_eq!(s.to_string(), "5/6");
    }

    #[test]
    fn i_squared() {
        let g = Field::gaussian();
        let i = g.generator().unwrap();
        assert_eq!(&i * &i, g.from_int(-1));
        assert_eq!((g.from_ratio(1, 2) * &i).to_string(), "1/2*i");
    }

    #[test]
    fn sqrt_two_reduction() {
        let k = Field::simple_extension("t", vec![BigInt::from(-2), 0.into(), 1.into()]).unwrap();
        let t = k.generator().unwrap();
        let one = k.one();
        assert_eq!((&one + &t) * (&one - &t), k.from_int(-1));
    }

    #[test]
    fn inverses() {
        let k = Field::simple_extension("t", vec![BigInt::from(-2), 0.into(), 0.into(), 1.into()])
            .unwrap();
        let t = k.generator().unwrap();
        let a = &k.from_int(3) + &(&t * &t);
        assert!((&a * &a.inv().unwrap()).is_one());
        let g = Field::gaussian();
        let z = &g.from_int(2) - &g.generator().unwrap();
        assert!((&z * &z.inv().unwrap()).is_one());
    }

    #[test]
    fn errors() {
        let q = Field::rationals();
        let g = Field::gaussian();
        assert!(matches!(
            field_arithmetic(&q.one(), &q.zero(), FieldOp::Div),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            field_arithmetic(&q.one(), &g.one(), FieldOp::Add),
            Err(Error::FieldMismatch)
        ));
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(Field::simple_extension("t", vec![BigInt::from(-4), 0.into(), 1.into()]).is_err());
        assert!(Field::simple_extension("t", vec![BigInt::from(-2), 0.into(), 2.into()]).is_err());
        let k = Field::simple_extension("t", vec![BigInt::from(2), 0.into(), 0.into(), 0.into(), 1.into()])
            .unwrap();
        assert_eq!(k.irreducibility(), Irreducibility::Asserted);
        assert_eq!(k.spec_string(), "Q[t]/(t^4+2)");
    }
}
