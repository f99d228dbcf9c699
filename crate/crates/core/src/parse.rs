//! Reader for presentation files:
//!
//! ```text
//! # comment
//! field = Q(i)
//! vars  = x, y, z
//! rel   = x*z + z*x
//! central = x*x + z*z
//! ```
//!
//! Fields are `Q`, `Q(i)` or `Q[t]/(t^2 + 2)` with any variable name and a
//! monic integer modulus. Terms are products of scalars and exactly two
//! generators; scalars are integers, `p/q`, `i` in `Q(i)`, powers of the
//! extension variable and parenthesized sums of these.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldKind};
use crate::linalg::{zero_vec, Vector};
use crate::quadratic::QuadraticPresentation;

#[derive(Clone, Debug)]
pub struct PresentationFile {
    pub field: Field,
    pub vars: Vec<String>,
    pub relations: Vec<Vector>,
    pub central: Vector,
}

impl PresentationFile {
    pub fn presentation(&self) -> Result<QuadraticPresentation> {
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        QuadraticPresentation::from_relations(&self.field, &names, self.relations.clone())
    }
}

/// Parses a file into S and the central tensor w.
pub fn parse(text: &str) -> Result<(QuadraticPresentation, Vector)> {
    let file = parse_file(text)?;
    Ok((file.presentation()?, file.central))
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_file(text: &str) -> Result<PresentationFile> {
    let mut field: Option<Field> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut relations = Vec::new();
    let mut central: Option<Vector> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(err(line, raw.len() - trimmed.len() + 1, "expected `key = value`"));
        };
        let key = raw[..eq].trim();
        let value_col = eq + 2;
        let value = &raw[eq + 1..];
        match key {
            "field" => {
                if field.is_some() {
                    return Err(err(line, 1, "field declared twice"));
                }
                field = Some(parse_field(value, line, value_col)?);
            }
            "vars" => {
                if vars.is_some() {
                    return Err(err(line, 1, "vars declared twice"));
                }
                let f = field.as_ref().ok_or_else(|| err(line, 1, "vars before field"))?;
                vars = Some(parse_vars(f, value, line, value_col)?);
            }
            "rel" | "central" => {
                let f = field.as_ref().ok_or_else(|| err(line, 1, "relation before field"))?;
                let v = vars.as_ref().ok_or_else(|| err(line, 1, "relation before vars"))?;
                let tensor = ExprParser::new(f, v, value, line, value_col)?.tensor()?;
                if key == "rel" {
                    relations.push(tensor);
                } else if central.is_some() {
                    return Err(err(line, 1, "central element declared twice"));
                } else {
                    central = Some(tensor);
                }
            }
            other => return Err(err(line, 1, format!("unknown key `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    Ok(PresentationFile {
        field: field.ok_or_else(|| err(last, 1, "missing field line"))?,
        vars: vars.ok_or_else(|| err(last, 1, "missing vars line"))?,
        relations,
        central: central.ok_or_else(|| err(last, 1, "missing central line"))?,
    })
}

fn parse_field(value: &str, line: usize, col: usize) -> Result<Field> {
    let compact: String = value.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "Q" => return Ok(Field::rationals()),
        "Q(i)" => return Ok(Field::gaussian()),
        _ => {}
    }
    let bad = || err(line, col, format!("unrecognized field `{}`", value.trim()));
    let rest = compact.strip_prefix("Q[").ok_or_else(bad)?;
    let close = rest.find(']').ok_or_else(bad)?;
    let var = &rest[..close];
    if !is_ident(var) || var == "i" {
        return Err(bad());
    }
    let modulus = rest[close + 1..]
        .strip_prefix("/(")
        .and_then(|m| m.strip_suffix(')'))
        .ok_or_else(bad)?;
    let coeffs = parse_int_poly(modulus, var).ok_or_else(bad)?;
    Field::simple_extension(var, coeffs).map_err(|e| err(line, col, e.to_string()))
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Integer polynomial in one variable, e.g. `t^3-2*t+1`, low degree first.
fn parse_int_poly(s: &str, var: &str) -> Option<Vec<BigInt>> {
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut rest = s;
    let mut first = true;
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ if first => (1, rest),
            _ => return None,
        };
        first = false;
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let (c, pow) = match term.split_once(var) {
            None => (term.parse::<BigInt>().ok()?, 0usize),
            Some((lead, tail)) => {
                let c = match lead {
                    "" => BigInt::from(1),
                    _ => lead.strip_suffix('*')?.parse::<BigInt>().ok()?,
                };
                let pow = match tail {
                    "" => 1,
                    _ => tail.strip_prefix('^')?.parse::<usize>().ok()?,
                };
                (c, pow)
            }
        };
        if coeffs.len() <= pow {
            coeffs.resize(pow + 1, BigInt::from(0));
        }
        coeffs[pow] += c * sign;
    }
    Some(coeffs)
}

fn parse_vars(field: &Field, value: &str, line: usize, col: usize) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    let mut offset = 0;
    for part in value.split(',') {
        let name = part.trim();
        let at = col + offset + part.len() - part.trim_start().len();
        offset += part.len() + 1;
        if !is_ident(name) {
            return Err(err(line, at, format!("invalid variable name `{name}`")));
        }
        if field.kind() == FieldKind::Gaussian && name == "i" {
            return Err(err(line, at, "`i` is reserved for the imaginary unit"));
        }
        if field.kind() == FieldKind::SimpleExtension && name == field.var() {
            return Err(err(line, at, format!("`{name}` is the field variable")));
        }
        if out.iter().any(|v| v == name) {
            return Err(err(line, at, format!("duplicate variable `{name}`")));
        }
        out.push(name.to_string());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct ExprParser<'a> {
    field: &'a Field,
    vars: &'a [String],
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

/// A term: scalar coefficient times a word in the generators.
struct Term {
    coef: FieldElement,
    word: Vec<usize>,
}

impl<'a> ExprParser<'a> {
    fn new(field: &'a Field, vars: &'a [String], text: &str, line: usize, col: usize) -> Result<Self> {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut k = 0;
        while k < chars.len() {
            let (at, c) = chars[k];
            let column = col + text[..at].chars().count();
            if c.is_whitespace() {
                k += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = k;
                while k < chars.len() && chars[k].1.is_ascii_digit() {
                    k += 1;
                }
                let s: String = chars[start..k].iter().map(|&(_, c)| c).collect();
                toks.push((Tok::Num(s.parse().unwrap()), column));
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = k;
                while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                    k += 1;
                }
                let s: String = chars[start..k].iter().map(|&(_, c)| c).collect();
                toks.push((Tok::Ident(s), column));
                continue;
            }
            let tok = match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => return Err(err(line, column, format!("unexpected character `{c}`"))),
            };
            toks.push((tok, column));
            k += 1;
        }
        Ok(ExprParser {
            field,
            vars,
            toks,
            pos: 0,
            line,
            end_col: col + text.chars().count(),
        })
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        err(self.line, self.col(), message)
    }

    fn tensor(mut self) -> Result<Vector> {
        let g = self.vars.len();
        let start = self.col();
        let terms = self.sum()?;
        if self.pos < self.toks.len() {
            return Err(self.error("unexpected token"));
        }
        if terms.is_empty() {
            return Err(err(self.line, start, "empty expression"));
        }
        let mut out = zero_vec(self.field, g * g);
        for (t, column) in terms {
            if t.word.len() != 2 {
                return Err(err(
                    self.line,
                    column,
                    format!("term has degree {}, expected 2", t.word.len()),
                ));
            }
            let idx = t.word[0] * g + t.word[1];
            out[idx] = &out[idx] + &t.coef;
        }
        Ok(out)
    }

    fn sum(&mut self) -> Result<Vec<(Term, usize)>> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    1
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let column = self.col();
            let mut t = self.product()?;
            if sign < 0 {
                t.coef = -&t.coef;
            }
            terms.push((t, column));
        }
        Ok(terms)
    }

    fn product(&mut self) -> Result<Term> {
        let mut term = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let next = self.factor()?;
            term.coef = &term.coef * &next.coef;
            term.word.extend(next.word);
        }
        Ok(term)
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.pos += 1;
        match self.peek() {
            Some(Tok::Num(n)) => {
                let e = u32::try_from(n.clone()).map_err(|_| self.error("exponent too large"))?;
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("expected an exponent")),
        }
    }

    fn factor(&mut self) -> Result<Term> {
        let one = self.field.one();
        match self.peek().cloned() {
            Some(Tok::Num(p)) => {
                self.pos += 1;
                let mut q = BigInt::from(1);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek() {
                        Some(Tok::Num(d)) if *d != BigInt::from(0) => {
                            q = d.clone();
                            self.pos += 1;
                        }
                        _ => return Err(self.error("expected a nonzero denominator")),
                    }
                }
                Ok(Term {
                    coef: self.field.from_rational(BigRational::new(p, q)),
                    word: Vec::new(),
                })
            }
            Some(Tok::Ident(name)) => {
                let column = self.col();
                self.pos += 1;
                let e = self.exponent()?;
                if let Some(k) = self.vars.iter().position(|v| *v == name) {
                    return Ok(Term {
                        coef: one,
                        word: vec![k; e as usize],
                    });
                }
                let scalar = match self.field.kind() {
                    FieldKind::Gaussian if name == "i" => self.field.generator(),
                    FieldKind::SimpleExtension if name == self.field.var() => self.field.generator(),
                    _ => None,
                };
                match scalar {
                    Some(s) => Ok(Term {
                        coef: s.pow(e),
                        word: Vec::new(),
                    }),
                    None => Err(err(self.line, column, format!("unknown variable `{name}`"))),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                let mut coef = self.field.zero();
                for (t, column) in inner {
                    if !t.word.is_empty() {
                        return Err(err(self.line, column, "generators inside parentheses"));
                    }
                    coef = &coef + &t.coef;
                }
                Ok(Term { coef, word: Vec::new() })
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SECTION_FIVE: &str = "\
# skew example
field = Q(i)
vars  = x, y, z
rel   = x*z + z*x
rel   = y*z + z*y
rel   = x*x + y*y
central = x*x + z*z
";

    #[test]
    fn parses_the_three_variable_example() {
        let (s, w) = parse(SECTION_FIVE).unwrap();
        assert_eq!(s.num_generators(), 3);
        assert_eq!(s.relations().dim(), 3);
        assert_eq!(s.tensor_string(&w, 2), "x*x + z*z");
    }

    #[test]
    fn coefficients() {
        let text = "field = Q(i)\nvars = x, y\ncentral = 3/2*x*y - i*y*x + (1 + i)*y*y - 2*i*x^2\n";
        let (s, w) = parse(text).unwrap();
        assert_eq!(s.tensor_string(&w, 2), "-2*i*x*x + 3/2*x*y - i*y*x + (1 + i)*y*y");
        let ext = "field = Q[t]/(t^2 - 2)\nvars = a, b\ncentral = t*a*b + t^2*b*a\n";
        let (s, w) = parse(ext).unwrap();
        assert_eq!(s.tensor_string(&w, 2), "t*a*b + 2*b*a");
    }

    fn parse_error(text: &str) -> (usize, usize, String) {
        match parse(text) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let (line, col, msg) = parse_error("field = Q\nvars = x, y, z\nrel = x*y*z\ncentral = x*x\n");
        assert_eq!((line, col), (3, 7));
        assert!(msg.contains("degree 3"));
        let (line, _, msg) = parse_error("field = Q\nvars = x, y, x\ncentral = x*x\n");
        assert_eq!(line, 2);
        assert!(msg.contains("duplicate"));
        let (_, col, msg) = parse_error("field = Q\nvars = x, y\ncentral = x*x + i*y*y\n");
        assert_eq!(col, 17);
        assert!(msg.contains("unknown variable `i`"));
        let (_, _, msg) = parse_error("field = Q(i)\nvars = x, i\ncentral = x*x\n");
        assert!(msg.contains("reserved"));
        let (_, _, msg) = parse_error("field = Q\nvars = x\n");
        assert!(msg.contains("missing central"));
        let (_, col, _) = parse_error("field = Q\nvars = x, y\ncentral = x*x + $\n");
        assert_eq!(col, 17);
    }
}
