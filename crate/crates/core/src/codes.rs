//! Concrete codes: points, generator matrices, exhaustive weight spectra,
//! extremal witness polynomials and the formula-vs-enumeration harness.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{self, CodeSpec, FormulaError, Regime};
use crate::galois::{FieldElement, FieldTables};
use crate::multipoly::{normal_form, vanishing_poly, FootprintBox, Monomial, MultiPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("enumeration needs {required} codewords but the budget is {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial reduces to {0}, which is not in the code")]
    NotInCode(String),
    #[error("out of regime: {0}")]
    OutOfRegime(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

thread_local! {
    static MATRIX_BUILDS: Cell<u64> = const { Cell::new(0) };
}

/// Number of generator matrices built on the current thread.
pub fn generator_matrix_builds() -> u64 {
    MATRIX_BUILDS.with(Cell::get)
}

/// The points of `A_1 × ⋯ × A_n` in odometer order, last axis fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Vec<FieldElement>>,
}

impl PointSet {
    pub fn points(&self) -> &[Vec<FieldElement>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn indices(&self) -> Vec<Vec<u64>> {
        self.points.iter().map(|p| p.iter().map(FieldElement::to_index).collect()).collect()
    }
}

pub fn build_points(spec: &CodeSpec) -> PointSet {
    let subsets = spec.subsets();
    let n = subsets.len();
    let mut points = Vec::with_capacity(spec.length() as usize);
    let mut pos = vec![0usize; n];
    'outer: loop {
        points.push(pos.iter().zip(subsets).map(|(&j, s)| s[j].clone()).collect());
        for axis in (0..n).rev() {
            pos[axis] += 1;
            if pos[axis] < subsets[axis].len() {
                continue 'outer;
            }
            pos[axis] = 0;
        }
        break;
    }
    PointSet { points }
}

/// Rows are the basis monomials of `C(d)` in ascending graded lex order,
/// columns the points in [`PointSet`] order.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    spec: CodeSpec,
    basis: Vec<Monomial>,
    points: PointSet,
    rows: Vec<Vec<FieldElement>>,
    divisors: Vec<MultiPoly>,
}

pub fn generator_matrix(spec: &CodeSpec) -> GeneratorMatrix {
    MATRIX_BUILDS.with(|c| c.set(c.get() + 1));
    let boxed = footprint_box(spec);
    let basis = boxed.monomials_up_to(spec.degree());
    let points = build_points(spec);
    let field = spec.field();
    // powers[axis][j][e] = (A_axis[j])^e for e < d_axis
    let powers: Vec<Vec<Vec<FieldElement>>> = spec
        .subsets()
        .iter()
        .map(|s| s.iter().map(|x| (0..s.len() as u64).map(|e| x.pow(e)).collect()).collect())
        .collect();
    let mut positions = Vec::with_capacity(points.len());
    for p in points.points() {
        let pos: Vec<usize> = p
            .iter()
            .zip(spec.subsets())
            .map(|(x, s)| s.iter().position(|y| y == x).expect("point on grid"))
            .collect();
        positions.push(pos);
    }
    let rows = basis
        .iter()
        .map(|mono| {
            positions
                .iter()
                .map(|pos| {
                    let mut v = field.one();
                    for (axis, (&j, &e)) in pos.iter().zip(mono.exponents()).enumerate() {
                        if e > 0 {
                            v = v.mul(&powers[axis][j][e as usize]).expect("same field");
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    let n = spec.n();
    let divisors = spec
        .subsets()
        .iter()
        .enumerate()
        .map(|(i, s)| vanishing_poly(field, s, i, n).expect("validated subsets"))
        .collect();
    GeneratorMatrix { spec: spec.clone(), basis, points, rows, divisors }
}

pub fn footprint_box(spec: &CodeSpec) -> FootprintBox {
    FootprintBox::new(spec.sizes().iter().map(|&d| d as u32).collect()).expect("sizes >= 2")
}

impl GeneratorMatrix {
    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    /// Vanishing polynomials `f_1, …, f_n` of the subsets.
    pub fn divisors(&self) -> &[MultiPoly] {
        &self.divisors
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.points.len()
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    pub fn index_rows(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|r| r.iter().map(|x| x.to_index() as u32).collect()).collect()
    }

    /// Codeword `Σ coeffs[r] · row_r`.
    pub fn encode(&self, coeffs: &[FieldElement]) -> Result<Vec<FieldElement>, CodeError> {
        if coeffs.len() != self.rows.len() {
            return Err(CodeError::LengthMismatch { expected: self.rows.len(), got: coeffs.len() });
        }
        let field = self.spec.field();
        let mut word = vec![field.zero(); self.column_count()];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            field.check_same(c.field()).map_err(PolyError::from)?;
            if c.is_zero() {
                continue;
            }
            for (w, x) in word.iter_mut().zip(row) {
                *w = w.add(&c.mul(x).expect("same field")).expect("same field");
            }
        }
        Ok(word)
    }

    /// Reduces `poly` modulo the vanishing ideal and expresses the result in
    /// the monomial basis of the code.
    pub fn coefficients_of(&self, poly: &MultiPoly) -> Result<Vec<FieldElement>, CodeError> {
        let reduced = normal_form(poly, &self.divisors)?;
        let mut coeffs = vec![self.spec.field().zero(); self.basis.len()];
        for (mono, c) in reduced.terms() {
            let r = self
                .basis
                .binary_search(mono)
                .map_err(|_| CodeError::NotInCode(reduced.to_string()))?;
            coeffs[r] = c.clone();
        }
        Ok(coeffs)
    }

    /// `φ(poly)` for a polynomial lying in the code.
    pub fn encode_poly(&self, poly: &MultiPoly) -> Result<Vec<FieldElement>, CodeError> {
        self.encode(&self.coefficients_of(poly)?)
    }
}

/// Values of `poly` at every point.
pub fn evaluate_on(poly: &MultiPoly, points: &PointSet) -> Result<Vec<FieldElement>, CodeError> {
    points.points().iter().map(|p| poly.evaluate(p).map_err(CodeError::from)).collect()
}

/// Rank over GF(q) by Gaussian elimination.
pub fn rank(rows: &[Vec<FieldElement>]) -> usize {
    let Some(first) = rows.iter().flatten().next() else {
        return 0;
    };
    let tables = FieldTables::new(first.field());
    let mut m: Vec<Vec<u32>> =
        rows.iter().map(|r| r.iter().map(|x| x.to_index() as u32).collect()).collect();
    rank_indexed(&tables, &mut m)
}

fn rank_indexed(t: &FieldTables, m: &mut [Vec<u32>]) -> usize {
    let cols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = t.inv(m[rank][col]).expect("nonzero pivot");
        for x in m[rank].iter_mut() {
            *x = t.mul(*x, inv);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = t.neg(row[col]);
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = t.add(*x, t.mul(factor, y));
            }
        }
        rank += 1;
    }
    rank
}

pub fn codeword_weight(word: &[FieldElement]) -> usize {
    word.iter().filter(|x| !x.is_zero()).count()
}

/// Weight distribution of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSpectrum {
    pub total: u64,
    /// `[weight, count]` pairs, weights ascending, zero counts omitted.
    pub counts: Vec<(u64, u64)>,
}

impl WeightSpectrum {
    fn from_tally(tally: &[u64]) -> WeightSpectrum {
        let counts: Vec<(u64, u64)> = tally
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w as u64, c))
            .collect();
        WeightSpectrum { total: counts.iter().map(|&(_, c)| c).sum(), counts }
    }

    pub fn count(&self, weight: u64) -> u64 {
        self.counts.iter().find(|&&(w, _)| w == weight).map_or(0, |&(_, c)| c)
    }

    pub fn distinct_nonzero(&self) -> Vec<u64> {
        self.counts.iter().map(|&(w, _)| w).filter(|&w| w > 0).collect()
    }

    /// `t`-th smallest distinct nonzero weight, 1-based.
    pub fn nth_weight(&self, t: usize) -> Option<u64> {
        t.checked_sub(1).and_then(|i| self.distinct_nonzero().get(i).copied())
    }

    pub fn min_distance(&self) -> Option<u64> {
        self.nth_weight(1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// How an exhaustive enumeration is run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Maximum number of codewords `q^dim` the caller accepts.
    pub budget: u64,
    /// Contiguous pieces the coefficient range is split into.
    pub chunks: usize,
    /// Worker threads; 1 runs everything on the calling thread.
    pub jobs: usize,
    /// Enumerate one vector per nonzero scalar class and scale the counts.
    pub scalar_classes: bool,
}

impl EnumerationOptions {
    pub fn with_budget(budget: u64) -> EnumerationOptions {
        EnumerationOptions { budget, chunks: 1, jobs: 1, scalar_classes: false }
    }
}

/// Result of enumerating every codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub spectrum: WeightSpectrum,
    /// Nonzero codewords whose weight is below `∏ (d_i - a_i)` for the
    /// leading monomial `X^a` of their polynomial.
    pub footprint_violations: u64,
    /// Coefficient vectors actually visited.
    pub visited: u64,
}

/// One block of coefficient vectors: the first `free` coordinates run over
/// an odometer range, the rest are fixed to `suffix`.
struct Segment {
    free: usize,
    suffix: Vec<u32>,
    len: u64,
}

struct Kernel<'a> {
    tables: &'a FieldTables,
    q: u32,
    m: usize,
    /// multiples[r][c] = c · row_r
    multiples: Vec<Vec<Vec<u32>>>,
    /// footprint lower bound for rows led by basis monomial r
    bounds: Vec<u64>,
}

#[derive(Default)]
struct Tally {
    counts: Vec<u64>,
    violations: u64,
    visited: u64,
}

impl Tally {
    fn merge(&mut self, other: &Tally) {
        if self.counts.len() < other.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.violations += other.violations;
        self.visited += other.visited;
    }
}

impl Kernel<'_> {
    fn add_into(&self, dst: &mut [u32], a: &[u32], b: &[u32]) {
        for ((d, &x), &y) in dst.iter_mut().zip(a).zip(b) {
            *d = self.tables.add(x, y);
        }
    }

    /// Visits coefficient vectors `lo..hi` of a segment in odometer order
    /// (coordinate 0 most significant).
    fn run(&self, seg: &Segment, lo: u64, hi: u64, tally: &mut Tally) {
        if lo >= hi {
            return;
        }
        let m = self.m;
        let free = seg.free;
        let q = self.q as u64;
        let mut base = vec![0u32; m];
        let mut fixed_lead = None;
        for (off, &c) in seg.suffix.iter().enumerate() {
            if c != 0 {
                let r = free + off;
                let tmp = base.clone();
                self.add_into(&mut base, &tmp, &self.multiples[r][c as usize]);
                fixed_lead = Some(r);
            }
        }
        tally.counts.resize(tally.counts.len().max(m + 1), 0);
        if free == 0 {
            self.record(&base, fixed_lead, tally);
            return;
        }
        // digits[r] for r < free, decoded from lo
        let mut digits = vec![0u32; free];
        let mut rest = lo;
        for r in (0..free).rev() {
            digits[r] = (rest % q) as u32;
            rest /= q;
        }
        // partial[j] = base + Σ_{r<j} digits[r]·row_r; lead[j] = max r<j with a nonzero digit
        let mut partial = vec![vec![0u32; m]; free];
        let mut lead: Vec<Option<usize>> = vec![None; free];
        partial[0].copy_from_slice(&base);
        let mut from = 0;
        let last = free - 1;
        let mut word = vec![0u32; m];
        let mut idx = lo;
        loop {
            for j in from..last {
                let (head, tail) = partial.split_at_mut(j + 1);
                self.add_into(&mut tail[0], &head[j], &self.multiples[j][digits[j] as usize]);
                lead[j + 1] = if digits[j] != 0 { Some(j) } else { lead[j] };
            }
            // Fastest coordinate varies in the innermost loop.
            let start = digits[last];
            let stop = (start as u64 + (hi - idx)).min(q) as u32;
            for c in start..stop {
                let row = &self.multiples[last][c as usize];
                let prefix_lead = if c != 0 { Some(last) } else { lead[last] };
                self.add_into(&mut word, &partial[last], row);
                self.record(&word, fixed_lead.or(prefix_lead), tally);
            }
            idx += (stop - start) as u64;
            if idx >= hi {
                return;
            }
            digits[last] = 0;
            let mut j = last;
            loop {
                j -= 1;
                digits[j] += 1;
                if digits[j] < self.q {
                    break;
                }
                digits[j] = 0;
            }
            from = j;
        }
    }

    #[inline]
    fn record(&self, word: &[u32], lead: Option<usize>, tally: &mut Tally) {
        let w = word.iter().filter(|&&x| x != 0).count();
        tally.counts[w] += 1;
        tally.visited += 1;
        if let Some(r) = lead {
            if (w as u64) < self.bounds[r] {
                tally.violations += 1;
            }
        }
    }
}

fn required_codewords(q: u64, dim: usize) -> BigUint {
    BigUint::from(q).pow(dim as u32)
}

/// Enumerates every codeword of `C(d)` and tallies weights.
pub fn enumerate_code(
    matrix: &GeneratorMatrix,
    opts: &EnumerationOptions,
) -> Result<Enumeration, CodeError> {
    let spec = matrix.spec();
    let q = spec.field().order();
    let dim = matrix.row_count();
    let required = required_codewords(q, dim);
    if required > BigUint::from(opts.budget) {
        return Err(CodeError::BudgetExceeded { required, budget: opts.budget });
    }
    let tables = FieldTables::new(spec.field());
    let rows = matrix.index_rows();
    let m = matrix.column_count();
    let multiples = rows
        .iter()
        .map(|row| {
            (0..q as u32).map(|c| row.iter().map(|&x| tables.mul(c, x)).collect()).collect()
        })
        .collect();
    let boxed = footprint_box(spec);
    let bounds = matrix
        .basis()
        .iter()
        .map(|mono| boxed.multiples_count(mono).expect("basis lies in the box"))
        .collect();
    let kernel = Kernel { tables: &tables, q: q as u32, m, multiples, bounds };

    let segments: Vec<Segment> = if opts.scalar_classes {
        (0..dim)
            .map(|lead| {
                let mut suffix = vec![0u32; dim - lead];
                suffix[0] = 1;
                Segment { free: lead, suffix, len: q.pow(lead as u32) }
            })
            .collect()
    } else {
        vec![Segment { free: dim, suffix: Vec::new(), len: q.pow(dim as u32) }]
    };
    let scaled = opts.scalar_classes;
    let total: u64 = segments.iter().map(|s| s.len).sum();
    let chunks = opts.chunks.max(1) as u64;
    let bounds_of = |i: u64| (total * i / chunks, total * (i + 1) / chunks);

    let run_chunk = |i: u64| {
        let (lo, hi) = bounds_of(i);
        let mut tally = Tally::default();
        let mut offset = 0u64;
        for seg in &segments {
            let (s, e) = (offset, offset + seg.len);
            let (a, b) = (lo.max(s), hi.min(e));
            if a < b {
                kernel.run(seg, a - s, b - s, &mut tally);
            }
            offset = e;
        }
        tally
    };

    let jobs = opts.jobs.max(1).min(chunks as usize);
    let results: Vec<Tally> = if jobs == 1 {
        (0..chunks).map(run_chunk).collect()
    } else {
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<Tally>>> = Mutex::new((0..chunks).map(|_| None).collect());
        std::thread::scope(|scope| {
            for _ in 0..jobs {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed) as u64;
                    if i >= chunks {
                        break;
                    }
                    let tally = run_chunk(i);
                    slots.lock().expect("no poisoned workers")[i as usize] = Some(tally);
                });
            }
        });
        slots.into_inner().expect("no poisoned workers").into_iter().map(|t| t.expect("chunk done")).collect()
    };

    let mut merged = Tally { counts: vec![0; m + 1], ..Tally::default() };
    for t in &results {
        merged.merge(t);
    }
    if scaled {
        for c in merged.counts.iter_mut().skip(1) {
            *c *= q - 1;
        }
        merged.violations *= q - 1;
        // The zero vector has no scalar class of its own.
        merged.counts[0] += 1;
    }
    Ok(Enumeration {
        spectrum: WeightSpectrum::from_tally(&merged.counts),
        footprint_violations: merged.violations,
        visited: merged.visited,
    })
}

pub fn weight_spectrum(spec: &CodeSpec, budget: u64) -> Result<WeightSpectrum, CodeError> {
    check_budget(spec, budget)?;
    let matrix = generator_matrix(spec);
    Ok(enumerate_code(&matrix, &EnumerationOptions::with_budget(budget))?.spectrum)
}

/// Fails fast, before any matrix is built, when `q^dim` exceeds `budget`.
pub fn check_budget(spec: &CodeSpec, budget: u64) -> Result<(), CodeError> {
    let required = required_codewords(spec.field().order(), spec.dimension() as usize);
    if required > BigUint::from(budget) {
        return Err(CodeError::BudgetExceeded { required, budget });
    }
    Ok(())
}

fn linear_factors(
    spec: &CodeSpec,
    axis: usize,
    count: usize,
) -> Result<MultiPoly, CodeError> {
    let n = spec.n();
    let field = spec.field();
    let x = MultiPoly::variable(field, n, axis)?;
    let mut acc = MultiPoly::constant(field.one(), n);
    for c in &spec.subsets()[axis][..count] {
        acc = acc.mul(&x.sub(&MultiPoly::constant(c.clone(), n))?)?;
    }
    Ok(acc)
}

/// `G = ∏_i ∏_{j<a_i} (X_i - α_ij)` for the minimizing exponents `a`; its
/// codeword has minimum weight.
pub fn min_weight_witness(spec: &CodeSpec) -> Result<MultiPoly, CodeError> {
    if spec.is_full_space() {
        return Err(CodeError::OutOfRegime(format!(
            "d = {} >= {} makes C(d) the whole space",
            spec.degree(),
            spec.saturation_degree()
        )));
    }
    let lemma = formulas::lemma1_min(spec.degree(), &spec.sizes())?;
    let n = spec.n();
    let mut g = MultiPoly::constant(spec.field().one(), n);
    for (axis, &a) in lemma.witness.iter().enumerate() {
        g = g.mul(&linear_factors(spec, axis, a as usize)?)?;
    }
    Ok(g)
}

/// `F = ∏_{i<d-1} (X_1 - α_1i) · (X_2 - α_21)`, attaining the second weight
/// when all sizes are equal or there are two subsets, and `2 <= d < d_1`.
pub fn second_weight_witness(spec: &CodeSpec) -> Result<MultiPoly, CodeError> {
    match spec.second_weight() {
        Ok(w) if matches!(w.regime, Regime::Thm2 | Regime::Thm2_5) => {}
        Ok(w) => {
            return Err(CodeError::OutOfRegime(format!("second weight comes from {}", w.regime)));
        }
        Err(e) => return Err(CodeError::OutOfRegime(e.to_string())),
    }
    let d = spec.degree() as usize;
    let first = linear_factors(spec, 0, d - 1)?;
    Ok(first.mul(&linear_factors(spec, 1, 1)?)?)
}

/// Values the harness compares against, on top of the formulas.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_weight: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_th_weights: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecSummary {
    pub field: String,
    pub modulus: Vec<u64>,
    pub sets: Vec<Vec<u64>>,
    pub degree: u64,
    pub permutation: Vec<usize>,
}

impl SpecSummary {
    pub fn of(spec: &CodeSpec) -> SpecSummary {
        SpecSummary {
            field: spec.field().label(),
            modulus: spec.field().modulus().to_vec(),
            sets: spec.subset_indices(),
            degree: spec.degree(),
            permutation: spec.permutation().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValues {
    pub min_distance: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_weight: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_th_weights: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotCovered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Option<u64>,
    pub observed: Option<u64>,
    /// `null` when no closed form applies.
    pub pass: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    fn compare(name: impl Into<String>, expected: u64, observed: Option<u64>) -> Check {
        Check {
            name: name.into(),
            expected: Some(expected),
            observed,
            pass: Some(observed == Some(expected)),
            note: None,
        }
    }

    fn not_covered(name: impl Into<String>, observed: Option<u64>, note: String) -> Check {
        Check { name: name.into(), expected: None, observed, pass: None, note: Some(note) }
    }

    pub fn status(&self) -> CheckStatus {
        match self.pass {
            Some(true) => CheckStatus::Pass,
            Some(false) => CheckStatus::Fail,
            None => CheckStatus::NotCovered,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub spec: SpecSummary,
    pub length: u64,
    pub dimension: u64,
    pub rank: u64,
    pub formula_values: FormulaValues,
    pub spectrum: Vec<(u64, u64)>,
    pub checks: Vec<Check>,
    pub regime_tags: BTreeMap<String, String>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    /// True when no check failed (uncovered checks do not count as failures).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass != Some(false))
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// Enumerates the whole code and checks every applicable closed form
/// against the spectrum.
pub fn verify(
    spec: &CodeSpec,
    opts: &EnumerationOptions,
    expect: &Expectations,
) -> Result<VerificationReport, CodeError> {
    let started = Instant::now();
    check_budget(spec, opts.budget)?;
    let sizes = spec.sizes();
    let d = spec.degree();
    let matrix = generator_matrix(spec);
    let enumeration = enumerate_code(&matrix, opts)?;
    let spectrum = &enumeration.spectrum;
    let dimension = spec.dimension();
    let rank = matrix.rank() as u64;
    let q = spec.field().order();
    let mut checks = Vec::new();
    let mut tags = BTreeMap::new();

    checks.push(Check::compare("dimension_rank", dimension, Some(rank)));
    let footprint_size = footprint_box(spec).monomials_up_to(d).len() as u64;
    checks.push(Check::compare("dimension_footprint", dimension, Some(footprint_size)));
    checks.push(Check::compare("spectrum_total", q.pow(rank as u32), Some(spectrum.total)));
    checks.push(Check::compare("zero_weight_count", 1, Some(spectrum.count(0))));

    let dmin = spec.min_distance();
    tags.insert("min_distance".to_string(), dmin.regime.to_string());
    checks.push(Check::compare("min_distance", dmin.value, spectrum.min_distance()));

    let second = spec.second_weight();
    let observed_second = spectrum.nth_weight(2);
    match &second {
        Ok(w) => {
            tags.insert("second_weight".to_string(), w.regime.to_string());
            checks.push(Check::compare("second_weight", w.value, observed_second));
        }
        Err(e) => {
            tags.insert("second_weight".to_string(), "NotCovered".to_string());
            checks.push(Check::not_covered("second_weight", observed_second, e.to_string()));
        }
    }

    let t_count = formulas::t_th_weight_count(&sizes, d);
    let mut t_values = None;
    if let Some(count) = t_count {
        tags.insert("t_th_weights".to_string(), Regime::Thm3.to_string());
        let mut values = Vec::new();
        for t in 1..=count {
            let w = spec.t_th_weight(t)?;
            values.push(w.value);
            checks.push(Check::compare(
                format!("t_th_weight[{t}]"),
                w.value,
                spectrum.nth_weight(t as usize),
            ));
        }
        t_values = Some(values);
    }

    match min_weight_witness(spec) {
        Ok(g) => {
            let weight = codeword_weight(&matrix.encode_poly(&g)?) as u64;
            checks.push(Check::compare("min_weight_witness", dmin.value, Some(weight)));
        }
        Err(e) => checks.push(Check::not_covered("min_weight_witness", None, e.to_string())),
    }
    match (second_weight_witness(spec), &second) {
        (Ok(f), Ok(w)) => {
            let weight = codeword_weight(&matrix.encode_poly(&f)?) as u64;
            checks.push(Check::compare("second_weight_witness", w.value, Some(weight)));
        }
        (Err(e), _) => checks.push(Check::not_covered("second_weight_witness", None, e.to_string())),
        (Ok(_), Err(e)) => checks.push(Check::not_covered("second_weight_witness", None, e.to_string())),
    }

    checks.push(Check::compare("footprint_bound", 0, Some(enumeration.footprint_violations)));

    if let Some(v) = expect.dimension {
        checks.push(Check::compare("expect.dimension", v, Some(rank)));
    }
    if let Some(v) = expect.min_distance {
        checks.push(Check::compare("expect.min_distance", v, spectrum.min_distance()));
    }
    if let Some(v) = expect.second_weight {
        checks.push(Check::compare("expect.second_weight", v, observed_second));
    }
    if let Some(values) = &expect.t_th_weights {
        for (i, &v) in values.iter().enumerate() {
            checks.push(Check::compare(format!("expect.t_th_weight[{}]", i + 1), v, spectrum.nth_weight(i + 1)));
        }
    }

    Ok(VerificationReport {
        spec: SpecSummary::of(spec),
        length: spec.length(),
        dimension,
        rank,
        formula_values: FormulaValues {
            min_distance: dmin.value,
            second_weight: second.ok().map(|w| w.value),
            t_th_weights: t_values,
        },
        spectrum: spectrum.counts.clone(),
        checks,
        regime_tags: tags,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}
