//! Univariate polynomials over a [`Field`] and root search inside the field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldKind};

/// Coefficients from the constant term up; the zero polynomial has none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Self {
        let mut p = Polynomial {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &Field) -> Self {
        Polynomial::new(field, Vec::new())
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field().clone();
        Polynomial::new(&field, vec![c])
    }

    /// t − λ
    pub fn linear(root: &FieldElement) -> Self {
        let field = root.field().clone();
        Polynomial::new(&field, vec![-root, field.one()])
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Polynomial::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Polynomial::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|k| {
                self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero)
            })
            .collect();
        Polynomial::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&self.field.from_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(&self.field, out)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(&self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            Polynomial::new(&self.field, quot),
            Polynomial::new(&self.field, rem),
        ))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &self.field.from_int(k as i64))
            .collect();
        Polynomial::new(&self.field, coeffs)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s·self + t·other = g, g monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Polynomial::constant(f.one()), Polynomial::zero(f));
        let (mut t0, mut t1) = (Polynomial::zero(f), Polynomial::constant(f.one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.inv().unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).unwrap().0.monic()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // avoid clashing with the generator of ℚ[t]/(m)
        let var = if self.field.var() == "t" { "X" } else { "t" };
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = s[1..].contains(' ');
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            if !first {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            first = false;
            let body = if compound { format!("({body})") } else { body };
            match k {
                0 => f.write_str(&body)?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}*")?;
                    }
                    if k == 1 {
                        f.write_str(var)?;
                    } else {
                        write!(f, "{var}^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Outcome of [`roots_in_field`].
#[derive(Clone, Debug)]
pub struct RootSearch {
    pub roots: Vec<FieldElement>,
    /// `true` when every root lying in the field was found.
    pub complete: bool,
}

/// Distinct roots of `p` that lie in its coefficient field.
pub fn roots_in_field(p: &Polynomial) -> Result<RootSearch> {
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let field = p.field().clone();
    let mut rest = p.squarefree_part();
    let mut roots = Vec::new();

    let zero = field.zero();
    if rest.degree().unwrap_or(0) > 0 && rest.eval(&zero).is_zero() {
        roots.push(zero.clone());
        rest = rest.div_rem(&Polynomial::linear(&zero))?.0;
    }

    let (candidates, mut complete) = match field.kind() {
        FieldKind::Rationals => match rational_candidates(&rest) {
            Some(c) => (c, true),
            None => (Vec::new(), false),
        },
        FieldKind::Gaussian => match gaussian_candidates(&rest) {
            Some(c) => (c, true),
            None => (Vec::new(), false),
        },
        FieldKind::SimpleExtension => {
            let c = if rest.coeffs().iter().all(|c| c.as_rational().is_some()) {
                rational_candidates(&rest).unwrap_or_default()
            } else {
                Vec::new()
            };
            (c, false)
        }
    };

    for cand in candidates {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        if rest.eval(&cand).is_zero() {
            rest = rest.div_rem(&Polynomial::linear(&cand))?.0;
            roots.push(cand);
        }
    }

    match rest.degree().unwrap_or(0) {
        0 => complete = true,
        1 => {
            let r = -&(&rest.coeffs()[0] * &rest.coeffs()[1].inv()?);
            roots.push(r);
            complete = true;
        }
        2 if !complete => {
            if let Some(found) = quadratic_roots(&rest)? {
                roots.extend(found);
                complete = true;
            }
        }
        _ => {}
    }

    roots.retain(|r| p.eval(r).is_zero());
    let mut distinct: Vec<FieldElement> = Vec::new();
    for r in roots {
        if !distinct.contains(&r) {
            distinct.push(r);
        }
    }
    Ok(RootSearch {
        roots: distinct,
        complete,
    })
}

fn lcm_of_denominators(p: &Polynomial) -> BigInt {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        for q in c.coords() {
            l = l.lcm(q.denom());
        }
    }
    l
}

fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u128()?;
    if n == 0 {
        return Some(Vec::new());
    }
    if n > 1u128 << 80 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u128 = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Rational-root candidates ±u/v with u | a₀ and v | aₙ of the cleared
/// integer polynomial. Requires rational coefficients.
fn rational_candidates(p: &Polynomial) -> Option<Vec<FieldElement>> {
    if p.degree().unwrap_or(0) == 0 {
        return Some(Vec::new());
    }
    let field = p.field();
    let l = lcm_of_denominators(p);
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c.as_rational().unwrap() * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let num = positive_divisors(&ints[0])?;
    let den = positive_divisors(ints.last().unwrap())?;
    let mut out = Vec::new();
    for u in &num {
        for v in &den {
            let q = BigRational::new(u.clone(), v.clone());
            out.push(field.from_rational(q.clone()));
            out.push(field.from_rational(-q));
        }
    }
    Some(out)
}

type Gaussian = (BigInt, BigInt);

/// All Gaussian integers dividing z (every associate included).
fn gaussian_divisors(z: &Gaussian) -> Option<Vec<Gaussian>> {
    let norm = &z.0 * &z.0 + &z.1 * &z.1;
    let mut out = Vec::new();
    for n in positive_divisors(&norm)? {
        let n_u = n.to_u128()?;
        let mut c: i128 = -(n_u.sqrt() as i128);
        while c * c <= n_u as i128 {
            let rem = n_u as i128 - c * c;
            let d = (rem as u128).sqrt() as i128;
            if d * d == rem {
                for dd in if d == 0 { vec![0] } else { vec![d, -d] } {
                    let (cb, db) = (BigInt::from(c), BigInt::from(dd));
                    // z / (c + di) = z (c - di) / n
                    let re = &z.0 * &cb + &z.1 * &db;
                    let im = &z.1 * &cb - &z.0 * &db;
                    if (&re % &n).is_zero() && (&im % &n).is_zero() {
                        out.push((cb, db));
                    }
                }
            }
            c += 1;
        }
    }
    Some(out)
}

fn gaussian_candidates(p: &Polynomial) -> Option<Vec<FieldElement>> {
    if p.degree().unwrap_or(0) == 0 {
        return Some(Vec::new());
    }
    let field = p.field();
    let l = BigRational::from_integer(lcm_of_denominators(p));
    let to_int = |c: &FieldElement| -> Gaussian {
        (
            (&c.coords()[0] * &l).to_integer(),
            (&c.coords()[1] * &l).to_integer(),
        )
    };
    let a0 = to_int(&p.coeffs()[0]);
    let an = to_int(p.leading().unwrap());
    let nums = gaussian_divisors(&a0)?;
    // One denominator per associate class: first quadrant, real part > 0.
    let dens: Vec<Gaussian> = gaussian_divisors(&an)?
        .into_iter()
        .filter(|(c, d)| c.is_positive() && !d.is_negative())
        .collect();
    let mut out = Vec::new();
    for (uc, ud) in &nums {
        let u = field.element(vec![
            BigRational::from_integer(uc.clone()),
            BigRational::from_integer(ud.clone()),
        ]);
        for (vc, vd) in &dens {
            let v = field.element(vec![
                BigRational::from_integer(vc.clone()),
                BigRational::from_integer(vd.clone()),
            ]);
            let cand = &u * &v.inv().ok()?;
            if !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    Some(out)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Square root inside the field when it has degree ≤ 2; `Ok(None)` when
/// the field is larger and no certified answer is available.
fn field_sqrt(a: &FieldElement) -> Option<Option<FieldElement>> {
    let field = a.field();
    match field.degree() {
        1 => Some(rational_sqrt(a.as_rational().unwrap()).map(|r| field.from_rational(r))),
        2 => {
            // modulus θ² + pθ + q; φ = θ + p/2 satisfies φ² = D.
            let m = field.modulus();
            let two = BigRational::from_integer(2.into());
            let p = BigRational::from_integer(m[1].clone());
            let q = BigRational::from_integer(m[0].clone());
            let half_p = &p / &two;
            let disc = &half_p * &half_p - &q;
            let (u, v) = (&a.coords()[0], &a.coords()[1]);
            let big_u = u - v * &half_p;
            let norm = &big_u * &big_u - &disc * v * v;
            let to_elem = |x: BigRational, y: BigRational| {
                // x + yφ = (x + y p/2) + yθ
                field.element(vec![&x + &y * &half_p, y])
            };
            let s = rational_sqrt(&norm)?;
            for s in [s.clone(), -s] {
                let x2 = (&big_u + &s) / &two;
                if let Some(x) = rational_sqrt(&x2) {
                    let cand = if x.is_zero() {
                        if !v.is_zero() || disc.is_zero() {
                            continue;
                        }
                        match rational_sqrt(&(&big_u / &disc)) {
                            Some(y) => to_elem(BigRational::zero(), y),
                            None => continue,
                        }
                    } else {
                        let y = v / (&two * &x);
                        to_elem(x, y)
                    };
                    if &cand * &cand == *a {
                        return Some(Some(cand));
                    }
                }
            }
            Some(None)
        }
        _ => None,
    }
}

/// Roots of a quadratic. `Ok(None)` when a square root cannot be certified.
fn quadratic_roots(p: &Polynomial) -> Result<Option<Vec<FieldElement>>> {
    let p = p.monic();
    let field = p.field().clone();
    let (c, b) = (&p.coeffs()[0], &p.coeffs()[1]);
    let four = field.from_int(4);
    let disc = &(b * b) - &(&four * c);
    let half = field.from_ratio(1, 2);
    match field_sqrt(&disc) {
        None => Ok(None),
        Some(None) => Ok(Some(Vec::new())),
        Some(Some(s)) => {
            let r1 = &(&(-b) + &s) * &half;
            let r2 = &(&(-b) - &s) * &half;
            Ok(Some(vec![r1, r2]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots() {
        let q = Field::rationals();
        let r = roots_in_field(&Polynomial::from_ints(&q, &[-1, 0, 1])).unwrap();
        assert!(r.complete);
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots.contains(&q.from_int(1)) && r.roots.contains(&q.from_int(-1)));
        let r = roots_in_field(&Polynomial::from_ints(&q, &[1, 0, 1])).unwrap();
        assert!(r.complete && r.roots.is_empty());
        // (2t - 3)(t + 5)^2 t
        let p = Polynomial::from_ints(&q, &[0, -75, 20, 17, 2]);
        let r = roots_in_field(&p).unwrap();
        assert!(r.complete);
        assert_eq!(r.roots.len(), 3);
        assert!(r.roots.contains(&q.from_ratio(3, 2)));
    }

    #[test]
    fn gaussian_roots() {
        let g = Field::gaussian();
        let r = roots_in_field(&Polynomial::from_ints(&g, &[1, 0, 1])).unwrap();
        let i = g.generator().unwrap();
        assert!(r.complete);
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots.contains(&i) && r.roots.contains(&-&i));
        // (t - (1+2i)/3)(t + 2)
        let a = &(&g.one() + &(&g.from_int(2) * &i)) * &g.from_ratio(1, 3);
        let p = Polynomial::linear(&a).mul(&Polynomial::linear(&g.from_int(-2)));
        let r = roots_in_field(&p).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots.contains(&a));
    }

    #[test]
    fn extension_roots() {
        let k = Field::simple_extension("t", vec![BigInt::from(-2), 0.into(), 1.into()]).unwrap();
        // x^2 - 2 splits, x^2 - 3 does not, x^2 - 8 splits
        let r = roots_in_field(&Polynomial::from_ints(&k, &[-2, 0, 1])).unwrap();
        assert!(r.complete && r.roots.len() == 2);
        let r = roots_in_field(&Polynomial::from_ints(&k, &[-3, 0, 1])).unwrap();
        assert!(r.complete && r.roots.is_empty());
        let r = roots_in_field(&Polynomial::from_ints(&k, &[-8, 0, 1])).unwrap();
        assert_eq!(r.roots.len(), 2);
        // (x - (1 + t))(x - 3)
        let th = k.generator().unwrap();
        let a = &k.one() + &th;
        let p = Polynomial::linear(&a).mul(&Polynomial::linear(&k.from_int(3)));
        let r = roots_in_field(&p).unwrap();
        assert!(r.complete);
        assert!(r.roots.contains(&a) && r.roots.contains(&k.from_int(3)));
    }

    #[test]
    fn cubic_extension_is_flagged() {
        let k = Field::simple_extension("t", vec![BigInt::from(-2), 0.into(), 0.into(), 1.into()])
            .unwrap();
        let r = roots_in_field(&Polynomial::from_ints(&k, &[-5, 0, 1])).unwrap();
        assert!(!r.complete);
    }

    #[test]
    fn ext_gcd_identity() {
        let q = Field::rationals();
        let a = Polynomial::from_ints(&q, &[-1, 0, 1]);
        let b = Polynomial::from_ints(&q, &[2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, Polynomial::from_ints(&q, &[1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn display() {
        let g = Field::gaussian();
        let i = g.generator().unwrap();
        let p = Polynomial::new(&g, vec![&g.one() + &i, g.from_int(-2), g.one()]);
        assert_eq!(p.to_string(), "t^2 - 2*t + (1 + i)");
    }
}
