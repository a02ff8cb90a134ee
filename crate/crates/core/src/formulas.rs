//! Closed-form parameters of affine cartesian codes `C(d)`.
//!
//! Everything here works on the sorted subset sizes `d_1 <= … <= d_n` and the
//! degree `d`; [`CodeSpec`] carries the concrete subsets and performs that
//! normalization.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{Field, FieldElement, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("at least one subset is required")]
    NoSubsets,
    #[error("subset {0} is empty")]
    EmptySubset(usize),
    #[error("subset {0} has a single element; every subset needs at least two")]
    SingletonSubset(usize),
    #[error("subset {axis} repeats element {element}")]
    DuplicateElement { axis: usize, element: u64 },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("code length overflows 64 bits")]
    LengthOverflow,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("value {value} outside the admissible range {min}..={max}")]
    OutOfRange { value: u64, min: u64, max: u64 },
    #[error("sizes must be sorted ascending and at least {min}")]
    BadSizes { min: u64 },
    #[error("at least {0} subsets are required")]
    TooFewSubsets(usize),
    #[error("not covered: {0}")]
    NotCovered(String),
    #[error("out of regime: {0}")]
    OutOfRegime(String),
    #[error("t = {t} outside 1..={max}")]
    TOutOfRange { t: u64, max: u64 },
}

/// The code `C(d)` over `A_1 × ⋯ × A_n`, with the subsets reordered so that
/// their sizes are non-decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSpec {
    field: Field,
    subsets: Vec<Vec<FieldElement>>,
    degree: u64,
    permutation: Vec<usize>,
}

impl CodeSpec {
    /// Validates and normalizes. Subsets are stably sorted by size;
    /// `permutation()[i]` is the input position of normalized axis `i`.
    pub fn new(
        field: &Field,
        subsets: Vec<Vec<FieldElement>>,
        degree: u64,
    ) -> Result<CodeSpec, SpecError> {
        if subsets.is_empty() {
            return Err(SpecError::NoSubsets);
        }
        if degree == 0 {
            return Err(SpecError::ZeroDegree);
        }
        let mut length = 1u64;
        for (axis, subset) in subsets.iter().enumerate() {
            match subset.len() {
                0 => return Err(SpecError::EmptySubset(axis)),
                1 => return Err(SpecError::SingletonSubset(axis)),
                _ => {}
            }
            for (i, c) in subset.iter().enumerate() {
                field.check_same(c.field())?;
                if subset[..i].contains(c) {
                    return Err(SpecError::DuplicateElement { axis, element: c.to_index() });
                }
            }
            length = length.checked_mul(subset.len() as u64).ok_or(SpecError::LengthOverflow)?;
        }
        let mut permutation: Vec<usize> = (0..subsets.len()).collect();
        permutation.sort_by_key(|&i| subsets[i].len());
        let mut slots: Vec<Option<Vec<FieldElement>>> = subsets.into_iter().map(Some).collect();
        let subsets = permutation.iter().map(|&i| slots[i].take().expect("permutation")).collect();
        Ok(CodeSpec { field: field.clone(), subsets, degree, permutation })
    }

    /// Builds a spec from element indices.
    pub fn from_indices(field: &Field, sets: &[Vec<u64>], degree: u64) -> Result<CodeSpec, SpecError> {
        let subsets = sets
            .iter()
            .map(|s| s.iter().map(|&i| field.element(i)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        CodeSpec::new(field, subsets, degree)
    }

    /// Same subsets, another degree.
    pub fn with_degree(&self, degree: u64) -> Result<CodeSpec, SpecError> {
        if degree == 0 {
            return Err(SpecError::ZeroDegree);
        }
        Ok(CodeSpec { degree, ..self.clone() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn subsets(&self) -> &[Vec<FieldElement>] {
        &self.subsets
    }

    pub fn subset_indices(&self) -> Vec<Vec<u64>> {
        self.subsets.iter().map(|s| s.iter().map(FieldElement::to_index).collect()).collect()
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn n(&self) -> usize {
        self.subsets.len()
    }

    /// Sorted sizes `d_1 <= … <= d_n`.
    pub fn sizes(&self) -> Vec<u64> {
        self.subsets.iter().map(|s| s.len() as u64).collect()
    }

    pub fn length(&self) -> u64 {
        self.sizes().iter().product()
    }

    /// `Σ (d_i - 1)`: from this degree on the code is the whole space.
    pub fn saturation_degree(&self) -> u64 {
        self.sizes().iter().map(|d| d - 1).sum()
    }

    pub fn is_full_space(&self) -> bool {
        self.degree >= self.saturation_degree()
    }

    pub fn dimension(&self) -> u64 {
        dimension(&self.sizes(), self.degree)
            .expect("valid spec")
            .to_u64()
            .expect("dimension is at most the length")
    }

    pub fn min_distance(&self) -> WeightFormulaResult {
        min_distance(&self.sizes(), self.degree).expect("valid spec")
    }

    pub fn second_weight(&self) -> Result<WeightFormulaResult, FormulaError> {
        second_weight(&self.sizes(), self.degree)
    }

    pub fn t_th_weight(&self, t: u64) -> Result<WeightFormulaResult, FormulaError> {
        t_th_weight(&self.sizes(), self.degree, t)
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.sizes().iter().map(u64::to_string).collect();
        write!(f, "C({}) over {} with sizes ({})", self.degree, self.field, sizes.join(","))
    }
}

/// Which result a weight value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    MinDistProp,
    Thm2,
    Thm2_5,
    Thm3,
    CorollaryII,
    CorollaryIII,
    FullSpace,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightFormulaResult {
    pub value: u64,
    pub regime: Regime,
}

/// `s = Σ_{i<=k} (d_i - 1) + ell` with `0 <= ell < d_{k+1} - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeDecomposition {
    pub k: usize,
    pub ell: u64,
    pub s: u64,
}

fn check_sorted(ds: &[u64], min: u64) -> Result<(), FormulaError> {
    if ds.is_empty() {
        return Err(FormulaError::TooFewSubsets(1));
    }
    if ds.iter().any(|&d| d < min) || ds.windows(2).any(|w| w[0] > w[1]) {
        return Err(FormulaError::BadSizes { min });
    }
    Ok(())
}

pub fn degree_decomposition(s: u64, ds: &[u64]) -> Result<DegreeDecomposition, FormulaError> {
    check_sorted(ds, 2)?;
    let total: u64 = ds.iter().map(|d| d - 1).sum();
    if s > total {
        return Err(FormulaError::OutOfRange { value: s, min: 0, max: total });
    }
    let mut rest = s;
    for (k, &d) in ds.iter().enumerate() {
        if rest < d - 1 {
            return Ok(DegreeDecomposition { k, ell: rest, s });
        }
        rest -= d - 1;
    }
    Ok(DegreeDecomposition { k: ds.len(), ell: 0, s })
}

/// A minimum of `∏ (d_i - a_i)` together with a tuple attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaMin {
    pub value: u64,
    pub witness: Vec<u64>,
}

/// Minimum of `∏ (d_i - a_i)` over `0 <= a_i < d_i`, `Σ a_i <= s`:
/// `(d_{k+1} - ell) ∏_{i>=k+2} d_i`, attained at `(d_1-1, …, d_k-1, ell, 0, …)`.
pub fn lemma1_min(s: u64, ds: &[u64]) -> Result<LemmaMin, FormulaError> {
    let DegreeDecomposition { k, ell, .. } = degree_decomposition(s, ds)?;
    let n = ds.len();
    let mut witness = vec![0u64; n];
    for i in 0..k {
        witness[i] = ds[i] - 1;
    }
    if k == n {
        return Ok(LemmaMin { value: 1, witness });
    }
    witness[k] = ell;
    let value = (ds[k] - ell) * ds[k + 1..].iter().product::<u64>();
    Ok(LemmaMin { value, witness })
}

/// Minimum of `∏ (d_i - a_i)` over `0 <= a_i < s`, `Σ a_i <= s`, for
/// `2 <= s <= d_1`: `(d_1 - (s-1))(d_2 - 1) ∏_{i>=3} d_i` at `(s-1, 1, 0, …)`.
pub fn lemma2_min(s: u64, ds: &[u64]) -> Result<LemmaMin, FormulaError> {
    check_sorted(ds, 2)?;
    if ds.len() < 2 {
        return Err(FormulaError::TooFewSubsets(2));
    }
    if s < 2 || s > ds[0] {
        return Err(FormulaError::OutOfRange { value: s, min: 2, max: ds[0] });
    }
    let mut witness = vec![0u64; ds.len()];
    witness[0] = s - 1;
    witness[1] = 1;
    let value = (ds[0] - (s - 1)) * (ds[1] - 1) * ds[2..].iter().product::<u64>();
    Ok(LemmaMin { value, witness })
}

/// `C(a, b)` with `C(a, b) = 0` for `b < 0`; here `a = n + b`.
fn shifted_binomial(n: u64, b: i128) -> BigUint {
    if b < 0 {
        return BigUint::zero();
    }
    // C(n + b, n) = ∏_{i=1}^{n} (b + i) / i, exact at every step.
    let b = BigUint::from(b as u128);
    let mut acc = BigUint::one();
    for i in 1..=n {
        acc = acc * (&b + BigUint::from(i)) / BigUint::from(i);
    }
    acc
}

/// Dimension of `C(d)` by inclusion–exclusion over subsets of the axes.
pub fn dimension(ds: &[u64], d: u64) -> Result<BigUint, FormulaError> {
    check_sorted(ds, 1)?;
    let n = ds.len();
    if n >= 64 {
        return Err(FormulaError::OutOfRange { value: n as u64, min: 1, max: 63 });
    }
    let mut acc = BigInt::zero();
    for mask in 0u64..(1u64 << n) {
        let removed: i128 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ds[i] as i128).sum();
        let term = BigInt::from(shifted_binomial(n as u64, d as i128 - removed));
        if mask.count_ones() % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc.to_biguint().expect("dimension is nonnegative"))
}

pub fn min_distance(ds: &[u64], d: u64) -> Result<WeightFormulaResult, FormulaError> {
    check_sorted(ds, 2)?;
    let total: u64 = ds.iter().map(|x| x - 1).sum();
    if d >= total {
        return Ok(WeightFormulaResult { value: 1, regime: Regime::FullSpace });
    }
    let LemmaMin { value, .. } = lemma1_min(d, ds)?;
    Ok(WeightFormulaResult { value, regime: Regime::MinDistProp })
}

/// Second smallest distinct nonzero weight, in the configurations where a
/// closed form is known. Anything else is [`FormulaError::NotCovered`].
pub fn second_weight(ds: &[u64], d: u64) -> Result<WeightFormulaResult, FormulaError> {
    check_sorted(ds, 2)?;
    let n = ds.len();
    let total: u64 = ds.iter().map(|x| x - 1).sum();
    if d >= total {
        let regime = if n == 2 && ds[0] >= 3 { Regime::CorollaryIII } else { Regime::FullSpace };
        return Ok(WeightFormulaResult { value: 2, regime });
    }
    if n >= 2 {
        let head = total - (ds[n - 1] - 1);
        // ell = 0 here only pins down the minimum distance; fall through.
        if d > head {
            let ell = d - head;
            return Ok(WeightFormulaResult { value: ds[n - 1] - ell + 1, regime: Regime::Thm3 });
        }
        let a = ds[0];
        if a >= 3 && ds.iter().all(|&x| x == a) && (2..a).contains(&d) {
            let value = (a - (d - 1)) * (a - 1) * a.pow((n - 2) as u32);
            return Ok(WeightFormulaResult { value, regime: Regime::Thm2 });
        }
        if n == 2 && 3 <= ds[0] && ds[0] < ds[1] && (2..ds[0]).contains(&d) {
            let value = (ds[0] - d + 1) * (ds[1] - 1);
            return Ok(WeightFormulaResult { value, regime: Regime::Thm2_5 });
        }
    }
    let reason = if d == 1 {
        "degree 1".to_string()
    } else if n == 1 {
        "a single subset below full degree".to_string()
    } else if ds[0] == 2 {
        format!("smallest subset has size 2 and d = {d} is below the top-coordinate range")
    } else if n >= 2 && d == total - (ds[n - 1] - 1) {
        format!("d = {d} sits exactly at the start of the top-coordinate range (ell = 0)")
    } else {
        format!("sizes {ds:?} with d = {d} match no known closed form")
    };
    Err(FormulaError::NotCovered(reason))
}

/// `t`-th smallest distinct nonzero weight `d_n - ell + (t - 1)` when
/// `Σ_{i<n} (d_i - 1) <= d < Σ (d_i - 1)` and `1 <= t <= ell + 1`.
pub fn t_th_weight(ds: &[u64], d: u64, t: u64) -> Result<WeightFormulaResult, FormulaError> {
    check_sorted(ds, 2)?;
    let n = ds.len();
    if n < 2 {
        return Err(FormulaError::OutOfRegime("needs at least two subsets".into()));
    }
    let total: u64 = ds.iter().map(|x| x - 1).sum();
    let head = total - (ds[n - 1] - 1);
    if d < head || d >= total {
        return Err(FormulaError::OutOfRegime(format!("d = {d} outside {head}..{total}")));
    }
    let ell = d - head;
    if t == 0 || t > ell + 1 {
        return Err(FormulaError::TOutOfRange { t, max: ell + 1 });
    }
    Ok(WeightFormulaResult { value: ds[n - 1] - ell + (t - 1), regime: Regime::Thm3 })
}

/// Number of weights `t_th_weight` determines for this configuration.
pub fn t_th_weight_count(ds: &[u64], d: u64) -> Option<u64> {
    match t_th_weight(ds, d, 1) {
        Ok(w) => Some(ds[ds.len() - 1] - w.value + 1),
        Err(_) => None,
    }
}

/// Second weight for two subsets with `3 <= d_1 <= d_2` and `d >= 2`, read
/// piecewise: `(d_1 - d + 1)(d_2 - 1)` below `d_1`, `d_1 + d_2 - d` up to
/// `d_1 + d_2 - 2`, and `2` beyond.
pub fn two_axis_second_weight(d1: u64, d2: u64, d: u64) -> Result<WeightFormulaResult, FormulaError> {
    if d1 < 3 || d1 > d2 {
        return Err(FormulaError::BadSizes { min: 3 });
    }
    if d < 2 {
        return Err(FormulaError::OutOfRange { value: d, min: 2, max: u64::MAX });
    }
    let result = if d < d1 {
        let regime = if d1 == d2 { Regime::Thm2 } else { Regime::Thm2_5 };
        WeightFormulaResult { value: (d1 - d + 1) * (d2 - 1), regime }
    } else if d <= d1 + d2 - 2 {
        WeightFormulaResult { value: d1 + d2 - d, regime: Regime::CorollaryII }
    } else {
        WeightFormulaResult { value: 2, regime: Regime::CorollaryIII }
    };
    Ok(result)
}
