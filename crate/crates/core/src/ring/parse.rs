//! Text formats: ring specifier strings, element literals, matrix literals.
//!
//! Rings: "Z", "Z/12", "Q[-5]", "ZXYZ", "(Z/2)x(Z/3)".
//! Elements: integers; "a+b*w" for quadratic; polynomial literals in x,y,z;
//! "(e1,e2)" for products. Matrices: "a,b;c,d" and
//! "a,b,c;d,e,f;g,h,i" with entries in the ring's element syntax.

use num_bigint::BigInt;

use super::poly::Poly3;
use super::{RElem, RingSpec};
use crate::error::{Error, Result};

pub fn parse_ring(s: &str) -> Result<RingSpec> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("Z") {
        return Ok(RingSpec::Integers);
    }
    if s.eq_ignore_ascii_case("ZXYZ") {
        return Ok(RingSpec::PolyZ3);
    }
    if let Some(rest) = s.strip_prefix("Z/").or_else(|| s.strip_prefix("z/")) {
        let n: BigInt = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in ring spec {s:?}")))?;
        return RingSpec::mod_n(n);
    }
    if (s.starts_with("Q[") || s.starts_with("q[")) && s.ends_with(']') {
        let inner = &s[2..s.len() - 1];
        let d: BigInt = inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad D in ring spec {s:?}")))?;
        return RingSpec::quadratic(d);
    }
    // "(S1)x(S2)": split at the top-level 'x' between balanced groups
    if s.starts_with('(') {
        if let Some((l, r)) = split_product(s) {
            return RingSpec::product(parse_ring(l)?, parse_ring(r)?);
        }
    }
    Err(Error::Parse(format!("unrecognized ring spec {s:?}")))
}

fn split_product(s: &str) -> Option<(&str, &str)> {
    let bytes = s.as_bytes();
    let mut depth = 0usize;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth = depth.checked_sub(1)?,
            b'x' | b'X' if depth == 0 && i > 0 => {
                let (l, r) = (&s[..i], &s[i + 1..]);
                let l = l.trim().strip_prefix('(')?.strip_suffix(')')?;
                let r = r.trim().strip_prefix('(')?.strip_suffix(')')?;
                return Some((l, r));
            }
            _ => {}
        }
    }
    None
}

/// Splits on a separator at parenthesis depth 0 (product elements contain
/// commas of their own).
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c2 if c2 == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

pub fn parse_elem(ring: &RingSpec, s: &str) -> Result<RElem> {
    let s = s.trim();
    match ring {
        RingSpec::Integers => Ok(RElem::Int(parse_int(s)?)),
        RingSpec::ModN(_) => Ok(ring.from_int(parse_int(s)?)),
        RingSpec::Quadratic(_) => parse_quad(s),
        RingSpec::PolyZ3 => Ok(RElem::Poly(parse_poly(s)?)),
        RingSpec::Product(l, r) => {
            let inner = s
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("product element must be (a,b): {s:?}")))?;
            let parts = split_top_level(inner, ',');
            if parts.len() != 2 {
                return Err(Error::Parse(format!("product element must have 2 components: {s:?}")));
            }
            Ok(RElem::Pair(
                Box::new(parse_elem(l, parts[0])?),
                Box::new(parse_elem(r, parts[1])?),
            ))
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer literal {s:?}")))
}

/// "a+b*w" style literals; also accepts "w", "-w", "3*w", "2".
fn parse_quad(s: &str) -> Result<RElem> {
    let p = parse_poly_in(s, &["w"])?;
    let mut a = BigInt::from(0);
    let mut b = BigInt::from(0);
    for (&(i, j, k), c) in p.terms() {
        match (i, j, k) {
            (0, 0, 0) => a = c.clone(),
            (1, 0, 0) => b = c.clone(),
            _ => return Err(Error::Parse(format!("quadratic literal must be linear in w: {s:?}"))),
        }
    }
    Ok(RElem::Quad(a, b))
}

fn parse_poly(s: &str) -> Result<Poly3> {
    parse_poly_in(s, &["x", "y", "z"])
}

/// Small recursive-descent parser for integer polynomial expressions in the
/// named variables, with +, -, *, ^ and parentheses.
fn parse_poly_in(s: &str, vars: &[&str]) -> Result<Poly3> {
    let mut p = PolyParser { s: s.as_bytes(), pos: 0, vars };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

struct PolyParser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> PolyParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly3> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly3> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                // juxtaposition with a variable or '(' also multiplies
                Some(c)
                    if c == b'(' || self.vars.iter().any(|v| v.as_bytes()[0] == c) =>
                {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly3> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos == start {
                return Err(Error::Parse("missing exponent after ^".into()));
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| Error::Parse("bad exponent".into()))?;
            let mut acc = Poly3::constant(1);
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly3> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.s[start..self.pos])
                    .unwrap()
                    .parse()
                    .unwrap();
                Ok(Poly3::constant(n))
            }
            Some(c) => {
                for (vi, v) in self.vars.iter().enumerate() {
                    if v.as_bytes()[0] == c {
                        self.pos += 1;
                        let e = match vi {
                            0 => (1, 0, 0),
                            1 => (0, 1, 0),
                            _ => (0, 0, 1),
                        };
                        return Ok(Poly3::monomial(e, 1));
                    }
                }
                Err(Error::Parse(format!("unexpected character {:?}", c as char)))
            }
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parses "a,b;c,d" into 4 entries or "a,b,c;d,e,f;g,h,i" into 9.
pub fn parse_matrix_entries(ring: &RingSpec, s: &str) -> Result<Vec<RElem>> {
    let rows: Vec<&str> = split_top_level(s.trim(), ';');
    let n = rows.len();
    if n != 2 && n != 3 {
        return Err(Error::Parse(format!("matrix must have 2 or 3 rows, got {n}")));
    }
    let mut out = Vec::with_capacity(n * n);
    for row in rows {
        let cells = split_top_level(row, ',');
        if cells.len() != n {
            return Err(Error::Parse(format!(
                "matrix row {row:?} must have {n} entries"
            )));
        }
        for cell in cells {
            out.push(parse_elem(ring, cell)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_strings() {
        assert_eq!(parse_ring("Z").unwrap(), RingSpec::Integers);
        assert_eq!(parse_ring("Z/12").unwrap(), RingSpec::mod_n(12).unwrap());
        assert_eq!(parse_ring("Q[-5]").unwrap(), RingSpec::quadratic(-5).unwrap());
        assert_eq!(parse_ring("ZXYZ").unwrap(), RingSpec::PolyZ3);
        let p = parse_ring("(Z/2)x(Z/3)").unwrap();
        assert_eq!(
            p,
            RingSpec::product(RingSpec::mod_n(2).unwrap(), RingSpec::mod_n(3).unwrap()).unwrap()
        );
        assert!(parse_ring("Z/1").is_err());
        assert!(parse_ring("Q[4]").is_err());
        assert!(parse_ring("what").is_err());
    }

    #[test]
    fn round_trip_ring_display() {
        for s in ["Z", "Z/12", "Q[-5]", "ZXYZ", "(Z/2)x(Z/3)"] {
            let r = parse_ring(s).unwrap();
            assert_eq!(parse_ring(&r.to_string()).unwrap(), r);
        }
    }

    #[test]
    fn quad_literals() {
        let q = RingSpec::quadratic(-5).unwrap();
        assert_eq!(parse_elem(&q, "1-1*w").unwrap(), RElem::Quad(1.into(), (-1).into()));
        assert_eq!(parse_elem(&q, "1+1*w").unwrap(), RElem::Quad(1.into(), 1.into()));
        assert_eq!(parse_elem(&q, "w").unwrap(), RElem::Quad(0.into(), 1.into()));
        assert_eq!(parse_elem(&q, "-w").unwrap(), RElem::Quad(0.into(), (-1).into()));
        assert_eq!(parse_elem(&q, "3").unwrap(), RElem::Quad(3.into(), 0.into()));
        assert!(parse_elem(&q, "w^2").is_err());
    }

    #[test]
    fn poly_literals() {
        let r = RingSpec::PolyZ3;
        let p = parse_elem(&r, "1-x-y*z").unwrap();
        match &p {
            RElem::Poly(p) => assert_eq!(p.to_string(), "-x-y*z+1"),
            _ => panic!(),
        }
        let p2 = parse_elem(&r, "x*(1-y*z)").unwrap();
        match &p2 {
            RElem::Poly(p) => assert_eq!(p.num_terms(), 2),
            _ => panic!(),
        }
        assert!(parse_elem(&r, "x+").is_err());
    }

    #[test]
    fn matrices_with_product_entries() {
        let ring =
            RingSpec::product(RingSpec::mod_n(2).unwrap(), RingSpec::mod_n(3).unwrap()).unwrap();
        let es = parse_matrix_entries(&ring, "(0,1),(1,0);(1,2),(0,0)").unwrap();
        assert_eq!(es.len(), 4);
        assert_eq!(es[0].to_string(), "(0,1)");
        assert_eq!(es[3].to_string(), "(0,0)");
    }

    #[test]
    fn mod_entries_canonicalize() {
        let m = RingSpec::mod_n(6).unwrap();
        let es = parse_matrix_entries(&m, "0,3;2,-6").unwrap();
        assert_eq!(es[3], RElem::Mod(0.into()));
    }
}
