//! Sparse multivariate polynomials over GF(q) under the graded
//! lexicographic order, with reduction modulo the vanishing polynomials
//! `f_i = ∏_{c ∈ A_i} (X_i - c)` and footprint counting.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::galois::{Field, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset contains a repeated element")]
    DuplicateElements,
    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("exponent {exponent} of variable {var} is outside the box bound {bound}")]
    OutOfBox { var: usize, exponent: u32, bound: u32 },
    #[error("divisor {0} does not have a pure power of its own variable as leading monomial")]
    BadDivisor(usize),
    #[error("box bounds must all be at least 1")]
    EmptyBox,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Exponent vector `(a_1, …, a_n)` of `X_1^{a_1}⋯X_n^{a_n}`.
///
/// `Ord` is the graded lexicographic order for equal arities; monomials of
/// different arity are ordered by arity first so that the order stays total.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    /// `X_var^exp` in `n` variables (0-based `var`).
    pub fn var_power(n: usize, var: usize, exp: u32) -> Monomial {
        let mut e = vec![0; n];
        e[var] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

fn grlex(u: &[u32], v: &[u32]) -> Ordering {
    let du: u64 = u.iter().map(|&a| a as u64).sum();
    let dv: u64 = v.iter().map(|&a| a as u64).sum();
    // Equal degree: u < v iff the leftmost nonzero entry of v - u is positive,
    // i.e. plain lexicographic comparison of the exponent vectors.
    du.cmp(&dv).then_with(|| u.cmp(v))
}

/// Graded lexicographic comparison of two monomials of equal arity.
pub fn grlex_compare(u: &Monomial, v: &Monomial) -> Result<Ordering, PolyError> {
    if u.arity() != v.arity() {
        return Err(PolyError::ArityMismatch { expected: u.arity(), got: v.arity() });
    }
    Ok(grlex(&u.0, &v.0))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity().cmp(&other.arity()).then_with(|| grlex(&self.0, &other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "X{}", i + 1)?;
            } else {
                write!(f, "X{}^{}", i + 1, a)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial in `n` variables; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    field: Field,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: &Field, n: usize) -> MultiPoly {
        MultiPoly { n, field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, n: usize) -> MultiPoly {
        MultiPoly::term(c, Monomial::one(n))
    }

    pub fn term(c: FieldElement, mono: Monomial) -> MultiPoly {
        let mut p = MultiPoly::zero(c.field(), mono.arity());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// `X_var` (0-based) in `n` variables.
    pub fn variable(field: &Field, n: usize, var: usize) -> Result<MultiPoly, PolyError> {
        if var >= n {
            return Err(PolyError::VariableOutOfRange { index: var, n });
        }
        Ok(MultiPoly::term(field.one(), Monomial::var_power(n, var, 1)))
    }

    /// Builds a polynomial from terms, summing repeated monomials.
    pub fn from_terms(
        field: &Field,
        n: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<MultiPoly, PolyError> {
        let mut p = MultiPoly::zero(field, n);
        for (mono, c) in terms {
            p.add_term(mono, c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, mono: Monomial, c: FieldElement) -> Result<(), PolyError> {
        if mono.arity() != self.n {
            return Err(PolyError::ArityMismatch { expected: self.n, got: mono.arity() });
        }
        self.field.check_same(c.field())?;
        let sum = match self.terms.get(&mono) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, sum);
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Option<&FieldElement> {
        self.terms.get(mono)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial, PolyError> {
        self.terms.keys().next_back().ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_coefficient(&self) -> Result<&FieldElement, PolyError> {
        self.terms.values().next_back().ok_or(PolyError::ZeroPolynomial)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::ArityMismatch { expected: self.n, got: other.n });
        }
        self.field.check_same(&other.field)?;
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(mono.clone(), c.neg())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<MultiPoly, PolyError> {
        self.field.check_same(c.field())?;
        let mut out = MultiPoly::zero(&self.field, self.n);
        if c.is_zero() {
            return Ok(out);
        }
        for (mono, a) in &self.terms {
            out.terms.insert(mono.clone(), a.mul(c)?);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(&self.field, self.n);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), a.mul(b)?)?;
            }
        }
        Ok(out)
    }

    /// Multiplies by the monomial `mono` with coefficient `c`.
    fn mul_term(&self, mono: &Monomial, c: &FieldElement) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero(&self.field, self.n);
        for (u, a) in &self.terms {
            out.terms.insert(u.mul(mono), a.mul(c)?);
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<MultiPoly, PolyError> {
        let mut acc = MultiPoly::constant(self.field.one(), self.n);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Value at a point, term by term.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.n {
            return Err(PolyError::ArityMismatch { expected: self.n, got: point.len() });
        }
        for x in point {
            self.field.check_same(x.field())?;
        }
        let mut acc = self.field.zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for (x, &a) in point.iter().zip(mono.exponents()) {
                if a > 0 {
                    t = t.mul(&x.pow(a as u64))?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Parses the text form `c*X1^a1*X2^a2 + …`. Coefficients are element
    /// indices; unit coefficients and zero exponents may be omitted.
    pub fn parse(text: &str, field: &Field, n: usize) -> Result<MultiPoly, PolyError> {
        let mut poly = MultiPoly::zero(field, n);
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(PolyError::Parse(format!("empty term in '{text}'")));
            }
            let mut coeff = field.one();
            let mut exps = vec![0u32; n];
            for factor in term.split('*') {
                if let Some(rest) = factor.strip_prefix(['X', 'x']) {
                    let (var, exp) = match rest.split_once('^') {
                        Some((v, e)) => (v, e),
                        None => (rest, "1"),
                    };
                    let var: usize =
                        var.parse().map_err(|_| PolyError::Parse(format!("bad variable '{factor}'")))?;
                    let exp: u32 =
                        exp.parse().map_err(|_| PolyError::Parse(format!("bad exponent '{factor}'")))?;
                    if var == 0 || var > n {
                        return Err(PolyError::VariableOutOfRange { index: var, n });
                    }
                    exps[var - 1] += exp;
                } else {
                    let idx: u64 =
                        factor.parse().map_err(|_| PolyError::Parse(format!("bad factor '{factor}'")))?;
                    coeff = coeff.mul(&field.element(idx)?)?;
                }
            }
            poly.add_term(Monomial(exps), coeff)?;
        }
        Ok(poly)
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in descending order, e.g. `X1^2+2*X1*X2+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            let constant = mono.degree() == 0;
            if constant {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{c}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// `∏_{c ∈ subset} (X_var - c)` embedded in `n` variables (0-based `var`).
pub fn vanishing_poly(
    field: &Field,
    subset: &[FieldElement],
    var: usize,
    n: usize,
) -> Result<MultiPoly, PolyError> {
    if subset.is_empty() {
        return Err(PolyError::EmptySubset);
    }
    for (i, c) in subset.iter().enumerate() {
        field.check_same(c.field())?;
        if subset[..i].contains(c) {
            return Err(PolyError::DuplicateElements);
        }
    }
    let x = MultiPoly::variable(field, n, var)?;
    let mut acc = MultiPoly::constant(field.one(), n);
    for c in subset {
        let factor = x.sub(&MultiPoly::constant(c.clone(), n))?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Remainder of `poly` on division by `divisors`, where `divisors[i]` has
/// leading monomial `X_i^{d_i}`.
///
/// The largest reducible term is eliminated at each step using the divisor
/// of the lowest-index variable whose bound it exceeds. Because the leading
/// monomials are powers of distinct variables the remainder does not depend
/// on these choices. Every exponent of the result satisfies `a_i < d_i`.
pub fn normal_form(poly: &MultiPoly, divisors: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
    let n = poly.arity();
    if divisors.len() != n {
        return Err(PolyError::ArityMismatch { expected: n, got: divisors.len() });
    }
    let mut bounds = Vec::with_capacity(n);
    let mut lead_inv = Vec::with_capacity(n);
    for (i, f) in divisors.iter().enumerate() {
        poly.check_compatible(f)?;
        let lm = f.leading_monomial().map_err(|_| PolyError::BadDivisor(i))?;
        let d = lm.exponents()[i];
        if d == 0 || lm.degree() != d {
            return Err(PolyError::BadDivisor(i));
        }
        bounds.push(d);
        lead_inv.push(f.leading_coefficient()?.inv()?);
    }
    let mut rem = poly.clone();
    loop {
        let target = rem.terms.iter().rev().find_map(|(mono, c)| {
            let var = mono.exponents().iter().zip(&bounds).position(|(a, d)| a >= d)?;
            Some((mono.clone(), c.clone(), var))
        });
        let Some((mono, c, var)) = target else {
            return Ok(rem);
        };
        let mut shift = mono.exponents().to_vec();
        shift[var] -= bounds[var];
        let factor = c.mul(&lead_inv[var])?;
        let cancel = divisors[var].mul_term(&Monomial(shift), &factor)?;
        rem = rem.sub(&cancel)?;
    }
}

/// The box `{X^a : 0 <= a_i < d_i}` of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FootprintBox {
    bounds: Vec<u32>,
}

impl FootprintBox {
    pub fn new(bounds: Vec<u32>) -> Result<FootprintBox, PolyError> {
        if bounds.is_empty() || bounds.contains(&0) {
            return Err(PolyError::EmptyBox);
        }
        Ok(FootprintBox { bounds })
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn cardinality(&self) -> u64 {
        self.bounds.iter().map(|&d| d as u64).product()
    }

    pub fn contains(&self, mono: &Monomial) -> bool {
        mono.arity() == self.bounds.len()
            && mono.exponents().iter().zip(&self.bounds).all(|(a, d)| a < d)
    }

    /// Box monomials of total degree at most `d`, ascending in graded
    /// lexicographic order.
    pub fn monomials_up_to(&self, d: u64) -> Vec<Monomial> {
        let n = self.bounds.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        let mut sum = 0u64;
        loop {
            if sum <= d {
                out.push(Monomial(cur.clone()));
            }
            // Odometer over the box.
            let mut j = n;
            loop {
                if j == 0 {
                    out.sort();
                    return out;
                }
                j -= 1;
                if cur[j] + 1 < self.bounds[j] {
                    cur[j] += 1;
                    sum += 1;
                    break;
                }
                sum -= cur[j] as u64;
                cur[j] = 0;
            }
        }
    }

    /// Number of box monomials that are not multiples of `X^a`, that is
    /// `∏ d_i - ∏ (d_i - a_i)`.
    pub fn delta_complement_count(&self, a: &Monomial) -> Result<u64, PolyError> {
        if a.arity() != self.bounds.len() {
            return Err(PolyError::ArityMismatch { expected: self.bounds.len(), got: a.arity() });
        }
        Ok(self.cardinality() - self.multiples_count(a)?)
    }

    /// `∏ (d_i - a_i)`: box monomials divisible by `X^a`.
    pub fn multiples_count(&self, a: &Monomial) -> Result<u64, PolyError> {
        let mut prod = 1u64;
        for (var, (&e, &d)) in a.exponents().iter().zip(&self.bounds).enumerate() {
            if e >= d {
                return Err(PolyError::OutOfBox { var: var + 1, exponent: e, bound: d });
            }
            prod *= (d - e) as u64;
        }
        Ok(prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn grlex_examples() {
        assert_eq!(grlex_compare(&mono(&[1, 1]), &mono(&[2, 0])), Ok(Ordering::Less));
        assert_eq!(grlex_compare(&mono(&[0, 3]), &mono(&[1, 1])), Ok(Ordering::Greater));
        assert_eq!(grlex_compare(&mono(&[1, 1]), &mono(&[1, 1])), Ok(Ordering::Equal));
        assert!(grlex_compare(&mono(&[1]), &mono(&[1, 1])).is_err());
    }

    #[test]
    fn leading_monomials() {
        let f = gf(3);
        let p = MultiPoly::parse("X1^2 + X1*X2 + 1", &f, 2).unwrap();
        assert_eq!(p.leading_monomial().unwrap(), &mono(&[2, 0]));
        let all: Vec<_> = f.elements().collect();
        let f1 = vanishing_poly(&f, &all, 0, 1).unwrap();
        assert_eq!(f1.leading_monomial().unwrap(), &mono(&[3]));
        let c = MultiPoly::constant(gf(7).element(5).unwrap(), 2);
        assert_eq!(c.leading_monomial().unwrap(), &mono(&[0, 0]));
        assert_eq!(MultiPoly::zero(&f, 2).leading_monomial(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn evaluation() {
        let f = gf(3);
        let p = MultiPoly::parse("X1*X2", &f, 2).unwrap();
        let two = f.element(2).unwrap();
        assert_eq!(p.evaluate(&[two.clone(), two.clone()]).unwrap(), f.one());
        assert!(MultiPoly::zero(&f, 2).evaluate(&[two.clone(), two]).unwrap().is_zero());
        let sub = [f.zero(), f.one()];
        let f1 = vanishing_poly(&f, &sub, 0, 2).unwrap();
        assert!(f1.evaluate(&[f.one(), f.zero()]).unwrap().is_zero());
        assert!(matches!(f1.evaluate(&[f.one()]), Err(PolyError::ArityMismatch { .. })));
    }

    #[test]
    fn vanishing_examples() {
        let f3 = gf(3);
        let all: Vec<_> = f3.elements().collect();
        assert_eq!(vanishing_poly(&f3, &all, 0, 1).unwrap().to_string(), "X1^3+2*X1");
        let f5 = gf(5);
        assert_eq!(vanishing_poly(&f5, &[f5.zero()], 1, 2).unwrap().to_string(), "X2");
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(vanishing_poly(&f4, &[f4.zero(), f4.one()], 0, 2).unwrap().to_string(), "X1^2+X1");
        assert_eq!(vanishing_poly(&f4, &[], 0, 2), Err(PolyError::EmptySubset));
        assert_eq!(
            vanishing_poly(&f4, &[f4.one(), f4.one()], 0, 2),
            Err(PolyError::DuplicateElements)
        );
    }

    fn full_divisors(f: &Field, n: usize) -> Vec<MultiPoly> {
        let all: Vec<_> = f.elements().collect();
        (0..n).map(|i| vanishing_poly(f, &all, i, n).unwrap()).collect()
    }

    #[test]
    fn normal_form_examples() {
        let f = gf(3);
        let fs1 = full_divisors(&f, 1);
        let x3 = MultiPoly::parse("X1^3", &f, 1).unwrap();
        assert_eq!(normal_form(&x3, &fs1).unwrap().to_string(), "X1");
        let fs2 = full_divisors(&f, 2);
        assert!(normal_form(&fs2[0], &fs2).unwrap().is_zero());
        let p = MultiPoly::parse("X1^4*X2", &f, 2).unwrap();
        let r = normal_form(&p, &fs2).unwrap();
        assert_eq!(r.to_string(), "X1^2*X2");
        for a in f.elements() {
            for b in f.elements() {
                let pt = [a.clone(), b];
                assert_eq!(p.evaluate(&pt).unwrap(), r.evaluate(&pt).unwrap());
            }
        }
    }

    #[test]
    fn normal_form_rejects_bad_divisors() {
        let f = gf(3);
        let p = MultiPoly::parse("X1^4", &f, 2).unwrap();
        let bad = vec![MultiPoly::parse("X2^3", &f, 2).unwrap(), MultiPoly::parse("X2^3", &f, 2).unwrap()];
        assert_eq!(normal_form(&p, &bad), Err(PolyError::BadDivisor(0)));
    }

    #[test]
    fn footprint_listing() {
        let b = FootprintBox::new(vec![3, 3]).unwrap();
        let got: Vec<String> = b.monomials_up_to(2).iter().map(|m| m.to_string()).collect();
        assert_eq!(got, ["1", "X2", "X1", "X2^2", "X1*X2", "X1^2"]);
        assert_eq!(FootprintBox::new(vec![2, 2]).unwrap().monomials_up_to(0), vec![mono(&[0, 0])]);
        assert_eq!(FootprintBox::new(vec![3, 4]).unwrap().monomials_up_to(99).len(), 12);
        assert_eq!(FootprintBox::new(vec![3, 0]), Err(PolyError::EmptyBox));
    }

    #[test]
    fn delta_counts() {
        let b33 = FootprintBox::new(vec![3, 3]).unwrap();
        assert_eq!(b33.delta_complement_count(&mono(&[2, 0])), Ok(6));
        assert_eq!(b33.delta_complement_count(&mono(&[0, 0])), Ok(0));
        let b34 = FootprintBox::new(vec![3, 4]).unwrap();
        assert_eq!(b34.delta_complement_count(&mono(&[1, 1])), Ok(6));
        assert!(matches!(b34.delta_complement_count(&mono(&[3, 0])), Err(PolyError::OutOfBox { .. })));
    }

    #[test]
    fn text_form() {
        let f = gf(5);
        let p = MultiPoly::parse("3*X1^2*X2^0 + X2 + 2 + 2", &f, 2).unwrap();
        assert_eq!(p.to_string(), "3*X1^2+X2+4");
        assert_eq!(MultiPoly::parse(&p.to_string(), &f, 2).unwrap(), p);
        assert!(matches!(MultiPoly::parse("X3", &f, 2), Err(PolyError::VariableOutOfRange { .. })));
        assert!(matches!(MultiPoly::parse("7*X1", &f, 2), Err(PolyError::Field(_))));
        assert!(matches!(MultiPoly::parse("X1++X2", &f, 2), Err(PolyError::Parse(_))));
        assert_eq!(MultiPoly::parse("0", &f, 2).unwrap().to_string(), "0");
    }
}
