//! Symbolic spectra of graphs too large to materialize.
//!
//! Every eigenvalue of a lexicographic power is an affine form
//! `scale * (base eigenvalue) + offset` where scale and offset are exact
//! integers that grow geometrically with the power, and the base eigenvalue
//! comes from one of the (tiny) factor spectra. Multiplicities grow just as
//! fast, so they are arbitrary-precision throughout. For irregular factors
//! the Laplacian offsets range over weighted degree sums of vertex tuples;
//! those are compressed into exact offset -> count distributions instead of
//! being enumerated tuple by tuple.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::eigen::{ExactReal, MatrixKind};
use crate::{Error, Result};

/// Which factor spectrum a symbolic eigenvalue refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BaseId {
    H,
    G,
}

impl fmt::Display for BaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseId::H => write!(f, "H"),
            BaseId::G => write!(f, "G"),
        }
    }
}

/// Reference to one entry of a factor spectrum, with its value cached.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseRef {
    pub graph: BaseId,
    pub index: usize,
    pub value: ExactReal,
}

/// An eigenvalue of a power graph: `scale * base + offset`.
///
/// `base = None` means a pure integer constant (and then `scale = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct AffineEigenvalue {
    scale: BigUint,
    base: Option<BaseRef>,
    offset: BigInt,
}

impl AffineEigenvalue {
    pub fn constant(offset: BigInt) -> Self {
        AffineEigenvalue {
            scale: BigUint::zero(),
            base: None,
            offset,
        }
    }

    pub fn affine(scale: BigUint, base: BaseRef, offset: BigInt) -> Self {
        if scale.is_zero() {
            return AffineEigenvalue::constant(offset);
        }
        AffineEigenvalue {
            scale,
            base: Some(base),
            offset,
        }
    }

    pub fn scale(&self) -> &BigUint {
        &self.scale
    }

    pub fn base(&self) -> Option<&BaseRef> {
        self.base.as_ref()
    }

    pub fn offset(&self) -> &BigInt {
        &self.offset
    }

    /// Exact value when the base (if any) is rational.
    pub fn exact(&self) -> Option<BigRational> {
        let offset = BigRational::from_integer(self.offset.clone());
        match &self.base {
            None => Some(offset),
            Some(b) => {
                let r = b.value.rational()?;
                let scale = BigRational::from_integer(BigInt::from(self.scale.clone()));
                Some(scale * r + offset)
            }
        }
    }

    /// Float approximation (may overflow to infinity for enormous scales;
    /// exact paths are preferred wherever the base is rational).
    pub fn approx(&self) -> f64 {
        let offset = self.offset.to_f64().unwrap_or(f64::NAN);
        match &self.base {
            None => offset,
            Some(b) => self.scale.to_f64().unwrap_or(f64::INFINITY) * b.value.approx() + offset,
        }
    }

    /// Absolute error bound of the float approximation inherited from the
    /// base eigenvalue, scaled.
    pub fn error_bound(&self) -> f64 {
        match &self.base {
            None => 0.0,
            Some(b) => self.scale.to_f64().unwrap_or(f64::INFINITY) * b.value.error_bound(),
        }
    }

    /// Constant-folds the affine form when its value is an exact integer.
    pub fn folded(&self) -> AffineEigenvalue {
        if let Some(r) = self.exact() {
            if r.is_integer() {
                return AffineEigenvalue::constant(r.to_integer());
            }
        }
        self.clone()
    }

    /// Symbolic rendering, e.g. `10*(-2) + 3`; constants render plainly.
    pub fn symbolic(&self) -> String {
        match &self.base {
            None => self.offset.to_string(),
            Some(b) => {
                let mut s = alloc::format!("{}*({})", self.scale, b.value);
                match self.offset.sign() {
                    Sign::NoSign => {}
                    Sign::Plus => s.push_str(&alloc::format!(" + {}", self.offset)),
                    Sign::Minus => s.push_str(&alloc::format!(" - {}", self.offset.magnitude())),
                }
                s
            }
        }
    }

    /// Decimal rendering with `precision` fractional digits.
    ///
    /// Rational values render exactly: integers in full (however many
    /// digits), terminating decimals with their natural digit count when it
    /// fits the requested precision, everything else correctly rounded.
    /// Float-based values are rendered only when the scaled error bound
    /// still guarantees the requested digits.
    pub fn decimal(&self, precision: usize) -> Result<String> {
        if let Some(r) = self.exact() {
            if r.is_integer() {
                return Ok(r.to_integer().to_string());
            }
            return Ok(match terminating_digits(r.denom()) {
                Some(d) if d <= precision => decimal_string(&r, d),
                _ => decimal_string(&r, precision),
            });
        }
        let base = self.base.as_ref().expect("non-exact value has a base");
        let achievable = achievable_digits(&self.scale, base.value.error_bound());
        if (precision as i64) > achievable {
            return Err(Error::Precision {
                requested: precision,
                achievable,
            });
        }
        let mid = BigRational::from_float(base.value.approx())
            .ok_or(Error::Numeric("base eigenvalue is not finite"))?;
        let scale = BigRational::from_integer(BigInt::from(self.scale.clone()));
        let offset = BigRational::from_integer(self.offset.clone());
        Ok(decimal_string(&(scale * mid + offset), precision))
    }
}

/// Fractional digits `f` that remain trustworthy when the value carries an
/// absolute error of `scale * err`: the largest `f` with
/// `2 * scale * err <= 10^-f`, bounded through the decimal digit count of
/// the scale so enormous scales never go through floats.
fn achievable_digits(scale: &BigUint, err: f64) -> i64 {
    debug_assert!(err > 0.0);
    let scale_digits = if scale.is_zero() {
        0
    } else {
        scale.to_string().len() as i64
    };
    let log_total = libm::log10(2.0 * err) + scale_digits as f64;
    libm::floor(-log_total) as i64
}

/// `Some(digit count)` when `denom` divides a power of ten.
fn terminating_digits(denom: &BigInt) -> Option<usize> {
    let mut d = denom.magnitude().clone();
    let two = BigUint::from(2u32);
    let five = BigUint::from(5u32);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    d.is_one().then_some(twos.max(fives))
}

/// Correctly rounded fixed-point rendering with `digits` fractional digits
/// (round half away from zero).
fn decimal_string(r: &BigRational, digits: usize) -> String {
    let pow = BigInt::from(10u32).pow(digits as u32);
    let scaled = r * BigRational::from_integer(pow);
    let (num, den) = (scaled.numer(), scaled.denom());
    let two = BigInt::from(2);
    let rounded: BigInt = if num.is_negative() {
        let abs = (num.magnitude() * 2u32 + den.magnitude()) / (den.magnitude() * 2u32);
        -BigInt::from(abs)
    } else {
        (num * &two + den) / (den * two)
    };
    if digits == 0 {
        return rounded.to_string();
    }
    let neg = rounded.is_negative();
    let mut abs = rounded.magnitude().to_string();
    if abs.len() <= digits {
        let mut padded = String::new();
        for _ in 0..=digits - abs.len() {
            padded.push('0');
        }
        padded.push_str(&abs);
        abs = padded;
    }
    let split = abs.len() - digits;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&abs[..split]);
    out.push('.');
    out.push_str(&abs[split..]);
    out
}

/// Which part of a closed form produced a descriptor entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    /// The simple largest eigenvalue of a connected regular power (its
    /// degree).
    Perron,
    /// Eigenvalues inherited from the innermost factor.
    Factor,
    /// Adjacency contribution of the outer-factor copies at depth `i`.
    Power(u32),
    /// Laplacian inner-factor eigenvalues shifted by degree-sum offsets.
    FactorShift,
    /// Laplacian outer-factor eigenvalues, scaled at level `i` and shifted
    /// by suffix degree sums.
    BaseShift(u32),
    /// The unshifted top level of the Laplacian recursion.
    BaseTop,
    /// A base spectrum passed through unchanged (zeroth power).
    Direct,
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Layer::Perron => write!(f, "perron"),
            Layer::Factor => write!(f, "g"),
            Layer::Power(i) => write!(f, "h:{i}"),
            Layer::FactorShift => write!(f, "g-shift"),
            Layer::BaseShift(i) => write!(f, "h-shift:{i}"),
            Layer::BaseTop => write!(f, "h-top"),
            Layer::Direct => write!(f, "direct"),
        }
    }
}

impl core::str::FromStr for Layer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_index = |t: &str| -> Result<u32> {
            t.parse()
                .map_err(|_| Error::Parse(alloc::format!("bad layer label `{s}`")))
        };
        Ok(match s {
            "perron" => Layer::Perron,
            "g" => Layer::Factor,
            "g-shift" => Layer::FactorShift,
            "h-top" => Layer::BaseTop,
            "direct" => Layer::Direct,
            _ => {
                if let Some(t) = s.strip_prefix("h-shift:") {
                    Layer::BaseShift(parse_index(t)?)
                } else if let Some(t) = s.strip_prefix("h:") {
                    Layer::Power(parse_index(t)?)
                } else {
                    return Err(Error::Parse(alloc::format!("unknown layer label `{s}`")));
                }
            }
        })
    }
}

/// One descriptor row: an affine eigenvalue, how often it occurs, and which
/// layer produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub value: AffineEigenvalue,
    pub multiplicity: BigUint,
    pub layer: Layer,
}

/// Exact aggregate of an offset distribution, computable in closed form
/// even when the distribution itself was never expanded.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetSummary {
    pub count: BigUint,
    pub sum: BigInt,
    pub min: BigInt,
    pub max: BigInt,
}

/// Exact distribution of `sum_i weight_i * d_i` where each `d_i` is drawn
/// independently from a degree histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetDistribution {
    weights: Vec<BigInt>,
    total: BigUint,
    offsets: BTreeMap<BigInt, BigUint>,
}

impl OffsetDistribution {
    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn positions(&self) -> usize {
        self.weights.len()
    }

    /// Total tuple count, `n^positions`.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn offsets(&self) -> &BTreeMap<BigInt, BigUint> {
        &self.offsets
    }

    /// Aggregates of the expanded map; always matches [`offset_summary`]
    /// on the same histogram and weights.
    pub fn summary(&self) -> OffsetSummary {
        let mut count = BigUint::zero();
        let mut sum = BigInt::zero();
        for (offset, c) in &self.offsets {
            count += c;
            sum += offset * BigInt::from(c.clone());
        }
        let min = self.offsets.keys().next().cloned().unwrap_or_default();
        let max = self.offsets.keys().next_back().cloned().unwrap_or_default();
        OffsetSummary {
            count,
            sum,
            min,
            max,
        }
    }
}

/// Convolves the degree histogram across one position per weight.
///
/// Errors with the exact distinct-offset count reached as soon as a level
/// of the convolution exceeds `cap`, so callers can fall back to
/// [`offset_summary`].
pub fn offset_distribution(
    histogram: &BTreeMap<usize, usize>,
    weights: &[BigInt],
    cap: usize,
) -> Result<OffsetDistribution> {
    debug_assert!(histogram.values().all(|&c| c > 0));
    let n: usize = histogram.values().sum();
    debug_assert!(n >= 1);
    let mut offsets = BTreeMap::new();
    offsets.insert(BigInt::zero(), BigUint::one());
    for w in weights {
        let mut next: BTreeMap<BigInt, BigUint> = BTreeMap::new();
        for (offset, count) in &offsets {
            for (&d, &dcount) in histogram {
                let key = offset + w * BigInt::from(d);
                let add = count * BigUint::from(dcount);
                next.entry(key).and_modify(|c| *c += &add).or_insert(add);
            }
        }
        if next.len() > cap {
            return Err(Error::Capacity {
                distinct: next.len(),
                cap,
            });
        }
        offsets = next;
    }
    Ok(OffsetDistribution {
        weights: weights.to_vec(),
        total: BigUint::from(n).pow(weights.len() as u32),
        offsets,
    })
}

/// Closed-form aggregates of the same distribution: count `n^k`,
/// sum `(sum of weights) * (sum of degrees) * n^(k-1)`, and the extremes at
/// the minimum/maximum degree. Exact regardless of any expansion cap.
pub fn offset_summary(histogram: &BTreeMap<usize, usize>, weights: &[BigInt]) -> OffsetSummary {
    let n: usize = histogram.values().sum();
    let k = weights.len();
    let weight_sum: BigInt = weights.iter().sum();
    if k == 0 {
        return OffsetSummary {
            count: BigUint::one(),
            sum: BigInt::zero(),
            min: BigInt::zero(),
            max: BigInt::zero(),
        };
    }
    let degree_sum: BigInt = histogram
        .iter()
        .map(|(&d, &c)| BigInt::from(d) * BigInt::from(c))
        .sum();
    let count = BigUint::from(n).pow(k as u32);
    let sum = &weight_sum * degree_sum * BigInt::from(BigUint::from(n).pow(k as u32 - 1));
    let min_degree = *histogram.keys().next().expect("nonempty histogram");
    let max_degree = *histogram.keys().next_back().expect("nonempty histogram");
    OffsetSummary {
        count,
        sum,
        min: &weight_sum * BigInt::from(min_degree),
        max: weight_sum * BigInt::from(max_degree),
    }
}

/// A layer whose offsets exceeded the expansion cap, kept as exact
/// aggregates: the layer contributes `base_multiplicity` copies of
/// `scale * base + offset` for each of the `summary.count` tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct SummarizedLayer {
    pub layer: Layer,
    pub scale: BigUint,
    pub base: Option<BaseRef>,
    pub base_multiplicity: BigUint,
    pub summary: OffsetSummary,
}

impl SummarizedLayer {
    pub fn total_multiplicity(&self) -> BigUint {
        &self.base_multiplicity * &self.summary.count
    }
}

/// The full symbolic spectrum of a (possibly astronomically large) graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumDescriptor {
    kind: MatrixKind,
    order: BigUint,
    entries: Vec<SpectrumEntry>,
    summarized: Vec<SummarizedLayer>,
}

fn merge_key(e: &SpectrumEntry) -> (Layer, BigUint, Option<(BaseId, usize)>, BigInt) {
    (
        e.layer,
        e.value.scale.clone(),
        e.value.base.as_ref().map(|b| (b.graph, b.index)),
        e.value.offset.clone(),
    )
}

impl SpectrumDescriptor {
    /// Builds a descriptor, merging entries with identical
    /// (scale, base, offset, layer) and checking that multiplicities sum to
    /// the order.
    pub fn new(
        kind: MatrixKind,
        order: BigUint,
        mut entries: Vec<SpectrumEntry>,
        summarized: Vec<SummarizedLayer>,
    ) -> Result<Self> {
        entries.retain(|e| !e.multiplicity.is_zero());
        entries.sort_by_key(merge_key);
        let mut merged: Vec<SpectrumEntry> = Vec::with_capacity(entries.len());
        for entry in entries {
            match merged.last_mut() {
                Some(last) if merge_key(last) == merge_key(&entry) => {
                    last.multiplicity += entry.multiplicity;
                }
                _ => merged.push(entry),
            }
        }
        let descriptor = SpectrumDescriptor {
            kind,
            order,
            entries: merged,
            summarized,
        };
        if descriptor.total_multiplicity() != descriptor.order {
            return Err(Error::Numeric("multiplicities must sum to the order"));
        }
        Ok(descriptor)
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn summarized(&self) -> &[SummarizedLayer] {
        &self.summarized
    }

    pub fn total_multiplicity(&self) -> BigUint {
        let expanded: BigUint = self.entries.iter().map(|e| e.multiplicity.clone()).sum();
        let compressed: BigUint = self.summarized.iter().map(|s| s.total_multiplicity()).sum();
        expanded + compressed
    }

    /// Value-level normalization: integer-valued affine forms fold to
    /// constants, equal values merge across layers (keeping the smallest
    /// layer label), and entries are ordered by decreasing value with ties
    /// broken by layer.
    pub fn normalize(&self) -> SpectrumDescriptor {
        let mut folded: Vec<SpectrumEntry> = self
            .entries
            .iter()
            .map(|e| SpectrumEntry {
                value: e.value.folded(),
                multiplicity: e.multiplicity.clone(),
                layer: e.layer,
            })
            .collect();
        folded.sort_by(|a, b| cmp_values(&b.value, &a.value).then_with(|| a.layer.cmp(&b.layer)));
        let mut merged: Vec<SpectrumEntry> = Vec::with_capacity(folded.len());
        for entry in folded {
            match merged.last_mut() {
                Some(last) if same_symbolic_value(&last.value, &entry.value) => {
                    last.multiplicity += entry.multiplicity;
                    last.layer = last.layer.min(entry.layer);
                }
                _ => merged.push(entry),
            }
        }
        SpectrumDescriptor {
            kind: self.kind,
            order: self.order.clone(),
            entries: merged,
            summarized: self.summarized.clone(),
        }
    }

    /// Exact sum of eigenvalue times multiplicity over the whole
    /// descriptor, including summarized layers; `None` when any base is a
    /// float.
    pub fn symbolic_trace(&self) -> Option<BigRational> {
        let mut sum = BigRational::zero();
        for entry in &self.entries {
            let value = entry.value.exact()?;
            sum += value * BigRational::from_integer(BigInt::from(entry.multiplicity.clone()));
        }
        for layer in &self.summarized {
            // base_mult * (count * scale * base + offset sum)
            let base_value = match &layer.base {
                Some(b) => b.value.rational()?.clone(),
                None => BigRational::zero(),
            };
            let count = BigRational::from_integer(BigInt::from(layer.summary.count.clone()));
            let scale = BigRational::from_integer(BigInt::from(layer.scale.clone()));
            let shifted =
                count * scale * base_value + BigRational::from_integer(layer.summary.sum.clone());
            sum +=
                BigRational::from_integer(BigInt::from(layer.base_multiplicity.clone())) * shifted;
        }
        Some(sum)
    }

    /// Fully expanded float multiset; requires the order to fit below `cap`
    /// and every layer to be expanded.
    pub fn expand_numeric(&self, cap: usize) -> Result<Vec<(f64, u64)>> {
        if self.order > BigUint::from(cap) {
            return Err(Error::Capacity {
                distinct: self.order.to_usize().unwrap_or(usize::MAX),
                cap,
            });
        }
        if !self.summarized.is_empty() {
            return Err(Error::Capacity {
                distinct: self.summarized.len(),
                cap,
            });
        }
        Ok(self
            .entries
            .iter()
            .map(|e| {
                (
                    e.value.approx(),
                    e.multiplicity.to_u64().expect("order below cap"),
                )
            })
            .collect())
    }

    /// Entries sorted ascending by value; `None` with summarized layers
    /// present.
    fn ascending(&self) -> Option<Vec<&SpectrumEntry>> {
        if !self.summarized.is_empty() {
            return None;
        }
        let mut v: Vec<&SpectrumEntry> = self.entries.iter().collect();
        v.sort_by(|a, b| cmp_values(&a.value, &b.value));
        Some(v)
    }

    pub fn min_value(&self) -> Option<&SpectrumEntry> {
        self.ascending()?.first().copied()
    }

    pub fn max_value(&self) -> Option<&SpectrumEntry> {
        self.ascending()?.last().copied()
    }

    /// The second-smallest distinct value (on a normalized Laplacian
    /// descriptor of a connected power this is the algebraic connectivity).
    pub fn second_smallest(&self) -> Option<&SpectrumEntry> {
        self.ascending()?.get(1).copied()
    }
}

/// Total ordering on affine values: exact when both sides are rational,
/// float approximation otherwise.
pub fn cmp_values(a: &AffineEigenvalue, b: &AffineEigenvalue) -> Ordering {
    match (a.exact(), b.exact()) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => a.approx().total_cmp(&b.approx()),
    }
}

fn same_symbolic_value(a: &AffineEigenvalue, b: &AffineEigenvalue) -> bool {
    match (&a.base, &b.base) {
        (None, None) => a.offset == b.offset,
        (Some(x), Some(y)) => {
            x.graph == y.graph && x.index == y.index && a.scale == b.scale && a.offset == b.offset
        }
        _ => match (a.exact(), b.exact()) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn uint(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn base(value: i64) -> BaseRef {
        BaseRef {
            graph: BaseId::H,
            index: 0,
            value: ExactReal::integer(value),
        }
    }

    #[test]
    fn constant_folding_and_decimal() {
        let e = AffineEigenvalue::affine(uint(10), base(-2), int(3));
        assert_eq!(e.decimal(12).unwrap(), "-17");
        assert_eq!(e.folded(), AffineEigenvalue::constant(int(-17)));
        let c = AffineEigenvalue::constant(int(21));
        assert_eq!(c.decimal(12).unwrap(), "21");
        assert_eq!(c.symbolic(), "21");
    }

    #[test]
    fn googol_scale_regularity_renders_all_digits() {
        // (10^100 - 1) / 3 is one hundred threes.
        let v = (BigInt::from(10).pow(100) - 1) / 3;
        let e = AffineEigenvalue::constant(v);
        let s = e.decimal(12).unwrap();
        assert_eq!(s.len(), 100);
        assert!(s.bytes().all(|b| b == b'3'));
    }

    #[test]
    fn non_integer_rationals_render_exactly_or_rounded() {
        let r = BigRational::new(int(21), int(2));
        assert_eq!(decimal_string(&r, 1), "10.5");
        let hoffman = BigRational::new(int(50), int(17));
        assert_eq!(decimal_string(&hoffman, 6), "2.941176");
        let neg = BigRational::new(int(-5), int(2));
        assert_eq!(decimal_string(&neg, 1), "-2.5");
        // half away from zero
        assert_eq!(decimal_string(&BigRational::new(int(5), int(2)), 0), "3");
        assert_eq!(decimal_string(&BigRational::new(int(-5), int(2)), 0), "-3");
        assert_eq!(
            decimal_string(&BigRational::new(int(1), int(8)), 4),
            "0.1250"
        );
    }

    #[test]
    fn float_bases_respect_the_error_bound() {
        let phi = BaseRef {
            graph: BaseId::G,
            index: 1,
            value: ExactReal::Float {
                value: 0.618033988749895,
                error: 1e-9,
            },
        };
        let e = AffineEigenvalue::affine(BigUint::from(1_000_000u64), phi.clone(), int(0));
        let err = e.decimal(12).unwrap_err();
        match err {
            Error::Precision { achievable, .. } => assert!(achievable <= 2, "{achievable}"),
            other => panic!("unexpected error {other}"),
        }
        let ok = e.decimal(1).unwrap();
        assert_eq!(ok, "618034.0");
        // Unscaled, the same base easily supports 6 digits.
        let small = AffineEigenvalue::affine(BigUint::one(), phi, int(2));
        assert_eq!(small.decimal(6).unwrap(), "2.618034");
    }

    #[test]
    fn regular_histogram_collapses_to_single_offset() {
        let hist = named("cycle:4").degree_histogram();
        let weights = [int(2), int(8)];
        let d = offset_distribution(&hist, &weights, 1000).unwrap();
        assert_eq!(d.offsets().len(), 1);
        let (offset, count) = d.offsets().iter().next().unwrap();
        assert_eq!(offset, &int(20));
        assert_eq!(count, &uint(16));
        let s = d.summary();
        assert_eq!(s.count, uint(16));
        assert_eq!(s.sum, int(320));
        assert_eq!(s.min, int(20));
        assert_eq!(s.max, int(20));
        assert_eq!(s, offset_summary(&hist, &weights));
    }

    #[test]
    fn star_distribution_single_position() {
        let hist = named("star:4").degree_histogram();
        let d = offset_distribution(&hist, &[int(1)], 1000).unwrap();
        let expect: BTreeMap<BigInt, BigUint> =
            [(int(3), uint(1)), (int(1), uint(3))].into_iter().collect();
        assert_eq!(d.offsets(), &expect);
    }

    #[test]
    fn star_distribution_two_positions() {
        let hist = named("star:4").degree_histogram();
        let weights = [int(1), int(4)];
        let d = offset_distribution(&hist, &weights, 1000).unwrap();
        let expect: BTreeMap<BigInt, BigUint> = [
            (int(15), uint(1)),
            (int(13), uint(3)),
            (int(7), uint(3)),
            (int(5), uint(9)),
        ]
        .into_iter()
        .collect();
        assert_eq!(d.offsets(), &expect);
        let s = d.summary();
        assert_eq!(s.count, uint(16));
        assert_eq!(s.sum, int(120));
        assert_eq!(s.min, int(5));
        assert_eq!(s.max, int(15));
        assert_eq!(s, offset_summary(&hist, &weights));
    }

    #[test]
    fn empty_weights_distribution_is_the_unit() {
        let hist = named("star:4").degree_histogram();
        let d = offset_distribution(&hist, &[], 1000).unwrap();
        assert_eq!(d.total(), &uint(1));
        assert_eq!(d.offsets().len(), 1);
        let s = offset_summary(&hist, &[]);
        assert_eq!(s.count, uint(1));
        assert_eq!(s.sum, int(0));
    }

    #[test]
    fn capacity_error_carries_exact_distinct_count() {
        let hist = named("star:4").degree_histogram();
        // Degrees 1 and 3 with weights 1, 2, 4 give sums of three terms
        // each of which doubles the distinct count: level 3 holds 8.
        let weights = [int(1), int(2), int(4)];
        match offset_distribution(&hist, &weights, 4) {
            Err(Error::Capacity { distinct, cap }) => {
                assert_eq!(distinct, 8);
                assert_eq!(cap, 4);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
        // Summary stays available and exact.
        let s = offset_summary(&hist, &weights);
        assert_eq!(s.count, uint(64));
        assert_eq!(s.min, int(7));
        assert_eq!(s.max, int(21));
    }

    fn entry(value: AffineEigenvalue, mult: u64, layer: Layer) -> SpectrumEntry {
        SpectrumEntry {
            value,
            multiplicity: uint(mult),
            layer,
        }
    }

    #[test]
    fn descriptor_merges_and_normalizes_value_collisions() {
        // Two symbolically different forms of -1 plus a perron constant:
        // the layers merge only after normalization.
        let g_ref = BaseRef {
            graph: BaseId::G,
            index: 1,
            value: ExactReal::integer(-1),
        };
        let h_ref = BaseRef {
            graph: BaseId::H,
            index: 1,
            value: ExactReal::integer(-1),
        };
        let entries = alloc::vec![
            entry(AffineEigenvalue::constant(int(3)), 1, Layer::Perron),
            entry(
                AffineEigenvalue::affine(uint(1), g_ref, int(0)),
                2,
                Layer::Factor
            ),
            entry(
                AffineEigenvalue::affine(uint(2), h_ref, int(1)),
                1,
                Layer::Power(0)
            ),
        ];
        let d =
            SpectrumDescriptor::new(MatrixKind::Adjacency, uint(4), entries, Vec::new()).unwrap();
        assert_eq!(d.entries().len(), 3);
        let n = d.normalize();
        assert_eq!(n.entries().len(), 2);
        assert_eq!(n.entries()[0].value, AffineEigenvalue::constant(int(3)));
        assert_eq!(n.entries()[1].value, AffineEigenvalue::constant(int(-1)));
        assert_eq!(n.entries()[1].multiplicity, uint(3));
        // the merged spectrum is sigma(K4): trace zero
        assert_eq!(n.symbolic_trace().unwrap(), BigRational::zero());
        let expanded = n.expand_numeric(100).unwrap();
        let cmp = crate::eigen::multiset_equal(&expanded, &[(3.0, 1), (-1.0, 3)], 1e-9);
        assert!(cmp.equal, "{}", cmp.report());
    }

    #[test]
    fn descriptor_rejects_wrong_mass() {
        let entries = alloc::vec![entry(AffineEigenvalue::constant(int(0)), 2, Layer::Direct)];
        let err = SpectrumDescriptor::new(MatrixKind::Adjacency, uint(3), entries, Vec::new());
        assert!(err.is_err());
    }

    #[test]
    fn duplicate_triples_merge_on_construction() {
        let entries = alloc::vec![
            entry(AffineEigenvalue::constant(int(5)), 2, Layer::Power(1)),
            entry(AffineEigenvalue::constant(int(5)), 3, Layer::Power(1)),
        ];
        let d =
            SpectrumDescriptor::new(MatrixKind::Adjacency, uint(5), entries, Vec::new()).unwrap();
        assert_eq!(d.entries().len(), 1);
        assert_eq!(d.entries()[0].multiplicity, uint(5));
    }

    #[test]
    fn extremes_and_second_smallest() {
        let entries = alloc::vec![
            entry(AffineEigenvalue::constant(int(16)), 1, Layer::BaseTop),
            entry(AffineEigenvalue::constant(int(8)), 2, Layer::BaseTop),
            entry(AffineEigenvalue::constant(int(0)), 1, Layer::BaseTop),
        ];
        let d =
            SpectrumDescriptor::new(MatrixKind::Laplacian, uint(4), entries, Vec::new()).unwrap();
        assert_eq!(
            d.min_value().unwrap().value,
            AffineEigenvalue::constant(int(0))
        );
        assert_eq!(
            d.max_value().unwrap().value,
            AffineEigenvalue::constant(int(16))
        );
        assert_eq!(
            d.second_smallest().unwrap().value,
            AffineEigenvalue::constant(int(8))
        );
    }

    #[test]
    fn layer_labels_round_trip() {
        for layer in [
            Layer::Perron,
            Layer::Factor,
            Layer::Power(3),
            Layer::FactorShift,
            Layer::BaseShift(7),
            Layer::BaseTop,
            Layer::Direct,
        ] {
            let s = layer.to_string();
            let parsed: Layer = s.parse().unwrap();
            assert_eq!(parsed, layer);
        }
        assert!("h:x".parse::<Layer>().is_err());
        assert!("nonsense".parse::<Layer>().is_err());
    }

    #[test]
    fn summarized_layers_count_toward_mass_and_trace() {
        let hist = named("star:4").degree_histogram();
        let weights = [int(1), int(4)];
        let summary = offset_summary(&hist, &weights);
        let layer = SummarizedLayer {
            layer: Layer::FactorShift,
            scale: BigUint::one(),
            base: Some(BaseRef {
                graph: BaseId::G,
                index: 0,
                value: ExactReal::integer(2),
            }),
            base_multiplicity: uint(1),
            summary,
        };
        let entries = alloc::vec![entry(AffineEigenvalue::constant(int(0)), 4, Layer::BaseTop)];
        let d =
            SpectrumDescriptor::new(MatrixKind::Laplacian, uint(20), entries, alloc::vec![layer])
                .unwrap();
        assert_eq!(d.total_multiplicity(), uint(20));
        // 16 tuples of value 2 plus the offset sum 120
        assert_eq!(
            d.symbolic_trace().unwrap(),
            BigRational::from_integer(int(152))
        );
        assert!(d.expand_numeric(1000).is_err());
        assert!(d.min_value().is_none());
    }
}
