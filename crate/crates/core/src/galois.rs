//! Exact arithmetic in GF(p^m).
//!
//! Elements are stored in the polynomial basis over the prime field: an
//! element is a length-`m` coordinate vector `c` standing for
//! `c[0] + c[1]·α + … + c[m-1]·α^(m-1)` where `α` is a root of the field's
//! monic irreducible modulus. Every value is kept in canonical form, so
//! structural equality is field equality.
//!
//! The integer encoding used by the CLI and for point ordering reads an
//! index in base `p`, least significant digit first: digit `j` becomes
//! coordinate `j`.

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("modulus must be monic")]
    NotMonic,
    #[error("modulus coefficient {0} is not reduced modulo p")]
    CoefficientOutOfRange(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("field order {p}^{m} is too large")]
    TooLarge { p: u64, m: usize },
    #[error("element index {idx} out of range for a field of order {q}")]
    IndexOutOfRange { idx: u64, q: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
}

/// Description of GF(p^m): characteristic, degree and reduction modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
    q: u64,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Modulus coefficients, constant term first, leading 1 last.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// The `"p^m"` text form.
    pub fn label(&self) -> String {
        format!("{}^{}", self.p, self.m)
    }
}

/// Shared handle to a field. Cheap to clone; compares by content.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Field(Arc<FieldSpec>);

impl Deref for Field {
    type Target = FieldSpec;

    fn deref(&self) -> &FieldSpec {
        &self.0
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.label())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// Builds GF(p^m). Without an explicit modulus the lexicographically
    /// smallest monic irreducible polynomial of degree `m` is used, comparing
    /// coefficient lists constant term first.
    pub fn new(p: u64, m: usize, modulus: Option<&[u64]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        // Coordinate products must fit in u64.
        if p > u32::MAX as u64 {
            return Err(FieldError::TooLarge { p, m });
        }
        let q = u32::try_from(m)
            .ok()
            .and_then(|e| p.checked_pow(e))
            .ok_or(FieldError::TooLarge { p, m })?;
        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m + 1 {
                    return Err(FieldError::DegreeMismatch {
                        expected: m,
                        got: coeffs.len().saturating_sub(1),
                    });
                }
                if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
                    return Err(FieldError::CoefficientOutOfRange(c));
                }
                if coeffs[m] != 1 {
                    return Err(FieldError::NotMonic);
                }
                if !is_irreducible(coeffs, p) {
                    return Err(FieldError::ReducibleModulus(p));
                }
                coeffs.to_vec()
            }
            None => smallest_irreducible(p, m),
        };
        Ok(Field(Arc::new(FieldSpec { p, m, modulus, q })))
    }

    /// GF(p) with modulus X.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    /// Parses `"p^m"` (or a bare prime `"p"`).
    pub fn parse(text: &str, modulus: Option<&[u64]>) -> Result<Field, ParseFieldError> {
        let text = text.trim();
        let (p, m) = match text.split_once('^') {
            Some((p, m)) => (p.trim(), m.trim()),
            None => (text, "1"),
        };
        let p: u64 = p.parse().map_err(|_| ParseFieldError::Syntax(text.to_string()))?;
        let m: usize = m.parse().map_err(|_| ParseFieldError::Syntax(text.to_string()))?;
        if !is_prime(p) {
            return Err(ParseFieldError::NotPrime { value: p, hint: prime_power_hint(p, m) });
        }
        Field::new(p, m, modulus).map_err(ParseFieldError::Field)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coeffs: vec![0; self.m] }
    }

    pub fn one(&self) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    pub fn element(&self, idx: u64) -> Result<FieldElement, FieldError> {
        FieldElement::from_index(self, idx)
    }

    /// All `q` elements in index order; `0` first, then `1`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| FieldElement::from_index(self, i).expect("index below q"))
    }

    pub fn check_same(&self, other: &Field) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0 {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.label(), other.label()))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseFieldError {
    #[error("cannot parse field '{0}'; expected p^m")]
    Syntax(String),
    #[error("{value} is not prime{hint}")]
    NotPrime { value: u64, hint: String },
    #[error(transparent)]
    Field(FieldError),
}

fn prime_power_hint(value: u64, m: usize) -> String {
    if m != 1 || value < 2 {
        return String::new();
    }
    for p in 2..=value {
        if !is_prime(p) || !value.is_multiple_of(p) {
            continue;
        }
        let mut rest = value;
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        return if rest == 1 { format!("; write {p}^{e}") } else { String::new() };
    }
    String::new()
}

/// An element of GF(p^m) in polynomial-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.to_index(), self.field.label())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_index())
    }
}

impl FieldElement {
    pub fn from_index(field: &Field, idx: u64) -> Result<FieldElement, FieldError> {
        if idx >= field.q {
            return Err(FieldError::IndexOutOfRange { idx, q: field.q });
        }
        let mut rest = idx;
        let coeffs = (0..field.m)
            .map(|_| {
                let digit = rest % field.p;
                rest /= field.p;
                digit
            })
            .collect();
        Ok(FieldElement { field: field.clone(), coeffs })
    }

    pub fn to_index(&self) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * self.field.p + c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Result<Self, FieldError> {
        self.field.check_same(&other.field)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| op(a, b)).collect();
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        let p = self.field.p;
        self.zip_with(other, |a, b| (a + b) % p)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        let p = self.field.p;
        self.zip_with(other, |a, b| (a + p - b) % p)
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.field.check_same(&other.field)?;
        let p = self.field.p;
        let m = self.field.m;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b % p) % p;
            }
        }
        let mut coeffs = fp_poly::rem(&prod, &self.field.modulus, p);
        coeffs.resize(m, 0);
        Ok(FieldElement { field: self.field.clone(), coeffs })
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `x^(q-2)`.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.field.q - 2))
    }
}

/// Index-addressed arithmetic for inner loops. Small fields get full
/// addition and multiplication tables; larger ones fall back to digit-wise
/// addition and element multiplication.
#[derive(Debug, Clone)]
pub struct FieldTables {
    field: Field,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

const TABLE_LIMIT: u64 = 1024;

impl FieldTables {
    pub fn new(field: &Field) -> FieldTables {
        let q = field.order();
        assert!(q <= u32::MAX as u64, "index tables need q < 2^32");
        let elems: Vec<FieldElement> =
            if q <= TABLE_LIMIT { field.elements().collect() } else { Vec::new() };
        let (mut add, mut mul, mut neg, mut inv) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        if q <= TABLE_LIMIT {
            let qs = q as usize;
            add = vec![0; qs * qs];
            mul = vec![0; qs * qs];
            for (a, x) in elems.iter().enumerate() {
                for (b, y) in elems.iter().enumerate().skip(a) {
                    let s = x.add(y).expect("same field").to_index() as u32;
                    let t = x.mul(y).expect("same field").to_index() as u32;
                    add[a * qs + b] = s;
                    add[b * qs + a] = s;
                    mul[a * qs + b] = t;
                    mul[b * qs + a] = t;
                }
            }
            neg = elems.iter().map(|x| x.neg().to_index() as u32).collect();
            inv = elems
                .iter()
                .map(|x| x.inv().map(|y| y.to_index() as u32).unwrap_or(0))
                .collect();
        }
        FieldTables { field: field.clone(), q: q as u32, add, mul, neg, inv }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    fn tabled(&self) -> bool {
        !self.add.is_empty()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.tabled() {
            return self.add[(a * self.q + b) as usize];
        }
        let p = self.field.p;
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut out, mut place) = (0u64, 1u64);
        for _ in 0..self.field.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.tabled() {
            return self.mul[(a * self.q + b) as usize];
        }
        let x = self.element(a);
        let y = self.element(b);
        x.mul(&y).expect("same field").to_index() as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.tabled() {
            return self.neg[a as usize];
        }
        self.element(a).neg().to_index() as u32
    }

    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        if self.tabled() {
            return Ok(self.inv[a as usize]);
        }
        Ok(self.element(a).inv()?.to_index() as u32)
    }

    pub fn element(&self, a: u32) -> FieldElement {
        FieldElement::from_index(&self.field, a as u64).expect("index below q")
    }
}

/// Dense polynomials over GF(p), constant term first, used for the modulus
/// search and element reduction.
mod fp_poly {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    /// Remainder of `a` by nonzero `b`; result is trimmed.
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let factor = r[r.len() - 1] * lead_inv % p;
            for (i, &c) in b.iter().enumerate() {
                let j = shift + i;
                r[j] = (r[j] + p - factor * c % p) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y % p) % p;
            }
        }
        rem(&prod, modulus, p)
    }

    pub fn pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(base, modulus, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, modulus, p);
            }
            base = mul_mod(&base, &base, modulus, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }
}

fn has_root(f: &[u64], p: u64) -> bool {
    (0..p).any(|x| fp_poly::eval(f, x, p) == 0)
}

/// Ben-Or test: `f` is irreducible iff `gcd(f, X^(p^i) - X) = 1` for every
/// `1 <= i <= deg f / 2`.
fn frobenius_gcd_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    let mut h = fp_poly::rem(&[0, 1], f, p);
    for _ in 1..=m / 2 {
        h = fp_poly::pow_mod(&h, p, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = fp_poly::gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Irreducibility over GF(p) of a monic polynomial given constant term first.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    match m {
        0 => false,
        1 => true,
        2 | 3 if p <= 1 << 16 => !has_root(f, p),
        _ => frobenius_gcd_irreducible(f, p),
    }
}

fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    // Candidates in lexicographic order: c[0] most significant, c[m-1] fastest.
    let mut lower = vec![0u64; m];
    loop {
        let mut candidate = lower.clone();
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
        let mut j = m;
        loop {
            // Irreducible polynomials of every degree exist, so this never runs out.
            j -= 1;
            lower[j] += 1;
            if lower[j] < p {
                break;
            }
            lower[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: usize) -> Field {
        Field::new(p, m, None).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(gf(2, 1).modulus(), &[0, 1]);
        assert_eq!(gf(2, 2).modulus(), &[1, 1, 1]);
        assert_eq!(gf(3, 2).modulus(), &[1, 0, 1]);
        assert_eq!(gf(2, 3).modulus(), &[1, 0, 1, 1]);
        assert_eq!(gf(5, 1).elements().count(), 5);
    }

    #[test]
    fn explicit_modulus() {
        let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f.order(), 9);
        assert_eq!(Field::new(3, 2, Some(&[2, 0, 1])), Err(FieldError::ReducibleModulus(3)));
        assert!(matches!(
            Field::new(3, 2, Some(&[1, 1])),
            Err(FieldError::DegreeMismatch { expected: 2, got: 1 })
        ));
        assert_eq!(Field::new(3, 2, Some(&[1, 0, 2])), Err(FieldError::NotMonic));
        assert_eq!(Field::new(4, 1, None), Err(FieldError::NotPrime(4)));
    }

    #[test]
    fn root_check_matches_frobenius_gcd() {
        for p in [2u64, 3, 5, 7] {
            for m in 2..=3usize {
                let total = p.pow(m as u32);
                for code in 0..total {
                    let mut f: Vec<u64> = (0..m).map(|j| code / p.pow(j as u32) % p).collect();
                    f.push(1);
                    assert_eq!(!has_root(&f, p), frobenius_gcd_irreducible(&f, p), "{f:?} over {p}");
                }
            }
        }
    }

    #[test]
    fn irreducible_counts() {
        // Number of monic irreducibles of degree 4 over GF(2) is 3, over GF(3) is 18.
        for (p, want) in [(2u64, 3usize), (3, 18)] {
            let count = (0..p.pow(4))
                .filter(|code| {
                    let mut f: Vec<u64> = (0..4).map(|j| code / p.pow(j) % p).collect();
                    f.push(1);
                    is_irreducible(&f, p)
                })
                .count();
            assert_eq!(count, want);
        }
    }

    #[test]
    fn index_encoding() {
        assert_eq!(gf(3, 1).element(2).unwrap().coeffs(), &[2]);
        assert_eq!(gf(2, 2).element(3).unwrap().coeffs(), &[1, 1]);
        let f9 = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.element(5).unwrap().coeffs(), &[2, 1]);
        assert!(matches!(f9.element(9), Err(FieldError::IndexOutOfRange { idx: 9, q: 9 })));
        let idx: Vec<u64> = gf(2, 2).elements().map(|e| e.to_index()).collect();
        assert_eq!(idx, vec![0, 1, 2, 3]);
    }

    #[test]
    fn small_products() {
        let f4 = gf(2, 2);
        let a = f4.element(2).unwrap();
        assert_eq!(a.mul(&a).unwrap(), f4.element(3).unwrap());
        let f5 = gf(5, 1);
        assert_eq!(f5.element(3).unwrap().inv().unwrap(), f5.element(2).unwrap());
        let f9 = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let one_plus_alpha = f9.element(4).unwrap();
        // 2α has coords [0, 2], index 6
        assert_eq!(one_plus_alpha.mul(&one_plus_alpha).unwrap(), f9.element(6).unwrap());
        assert_eq!(f5.zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = gf(3, 1).one();
        let b = gf(5, 1).one();
        assert!(matches!(a.add(&b), Err(FieldError::FieldMismatch(_, _))));
        // Separately constructed but identical fields are the same field.
        assert!(gf(3, 1).one().add(&a).is_ok());
    }

    #[test]
    fn parse_field_text() {
        assert_eq!(Field::parse("3^2", None).unwrap().order(), 9);
        assert_eq!(Field::parse("7", None).unwrap().order(), 7);
        let err = Field::parse("4^1", None).unwrap_err();
        assert_eq!(err.to_string(), "4 is not prime; write 2^2");
        assert!(matches!(Field::parse("x^1", None), Err(ParseFieldError::Syntax(_))));
    }

    #[test]
    fn tables_agree_with_elements() {
        let f = gf(3, 2);
        let t = FieldTables::new(&f);
        for a in 0..9u32 {
            for b in 0..9u32 {
                let (x, y) = (t.element(a), t.element(b));
                assert_eq!(t.add(a, b) as u64, x.add(&y).unwrap().to_index());
                assert_eq!(t.mul(a, b) as u64, x.mul(&y).unwrap().to_index());
            }
        }
    }

    #[test]
    fn untabled_fallback() {
        let f = gf(2, 11);
        let t = FieldTables::new(&f);
        let (a, b) = (1234u32, 777u32);
        let (x, y) = (t.element(a), t.element(b));
        assert_eq!(t.add(a, b) as u64, x.add(&y).unwrap().to_index());
        assert_eq!(t.mul(a, b) as u64, x.mul(&y).unwrap().to_index());
        assert_eq!(t.mul(a, t.inv(a).unwrap()), 1);
    }
}
