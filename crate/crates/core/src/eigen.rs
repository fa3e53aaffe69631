//! Dense symmetric eigensolver and exact spectra for named base graphs.
//!
//! The solver is the oracle side of every closed-form check: it reduces the
//! matrix to tridiagonal form with Householder reflections and then runs
//! implicit-shift QL, eigenvalues only. The exact registry carries rational
//! spectra for the generator families whose eigenvalues are integers, so
//! the closed forms can stay exact end to end.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::graph::{Generator, Graph, GraphSpec};
use crate::{Caps, Error, Result};

/// Which symmetric matrix of a graph is under consideration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixKind::Adjacency => write!(f, "adjacency"),
            MatrixKind::Laplacian => write!(f, "laplacian"),
            MatrixKind::SignlessLaplacian => write!(f, "signless-laplacian"),
        }
    }
}

/// An eigenvalue: exact rational, or a float with a stated absolute error
/// bound.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactReal {
    Rational(BigRational),
    Float { value: f64, error: f64 },
}

impl ExactReal {
    pub fn integer(v: i64) -> Self {
        ExactReal::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn rational(&self) -> Option<&BigRational> {
        match self {
            ExactReal::Rational(r) => Some(r),
            ExactReal::Float { .. } => None,
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            ExactReal::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            ExactReal::Float { value, .. } => *value,
        }
    }

    /// Absolute error bound; zero for rationals.
    pub fn error_bound(&self) -> f64 {
        match self {
            ExactReal::Rational(_) => 0.0,
            ExactReal::Float { error, .. } => *error,
        }
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            ExactReal::Float { value, .. } => write!(f, "{value}"),
        }
    }
}

/// The spectrum of one base-graph matrix: distinct eigenvalues in strictly
/// decreasing order with their multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseSpectrum {
    kind: MatrixKind,
    order: usize,
    entries: Vec<(ExactReal, usize)>,
}

impl BaseSpectrum {
    pub fn new(kind: MatrixKind, entries: Vec<(ExactReal, usize)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Numeric("a spectrum needs at least one eigenvalue"));
        }
        for window in entries.windows(2) {
            if window[0].0.approx() <= window[1].0.approx() {
                return Err(Error::Numeric("spectrum values must strictly decrease"));
            }
        }
        if entries.iter().any(|(_, m)| *m == 0) {
            return Err(Error::Numeric("multiplicities must be positive"));
        }
        let order = entries.iter().map(|(_, m)| m).sum();
        Ok(BaseSpectrum {
            kind,
            order,
            entries,
        })
    }

    fn from_integers(kind: MatrixKind, entries: &[(i64, usize)]) -> Self {
        let entries = entries
            .iter()
            .map(|&(v, m)| (ExactReal::integer(v), m))
            .collect();
        BaseSpectrum::new(kind, entries).expect("registry entries are valid")
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[(ExactReal, usize)] {
        &self.entries
    }

    pub fn largest(&self) -> &ExactReal {
        &self.entries[0].0
    }

    pub fn smallest(&self) -> &ExactReal {
        &self.entries[self.entries.len() - 1].0
    }

    /// Entry index holding the eigenvalue at 1-based position `pos` in
    /// decreasing order (so `pos = 1` is the largest).
    pub fn entry_at_position(&self, pos: usize) -> usize {
        debug_assert!(pos >= 1 && pos <= self.order);
        let mut seen = 0;
        for (idx, (_, mult)) in self.entries.iter().enumerate() {
            seen += mult;
            if seen >= pos {
                return idx;
            }
        }
        self.entries.len() - 1
    }

    /// True when every eigenvalue is rational.
    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(|(v, _)| v.rational().is_some())
    }

    /// Float pairs for oracle comparisons.
    pub fn to_pairs(&self) -> Vec<(f64, u64)> {
        self.entries
            .iter()
            .map(|(v, m)| (v.approx(), *m as u64))
            .collect()
    }
}

fn matrix_of(g: &Graph, kind: MatrixKind) -> Vec<f64> {
    let n = g.order();
    let mut a = vec![0.0; n * n];
    for (u, v) in g.edge_list() {
        let off = match kind {
            MatrixKind::Adjacency | MatrixKind::SignlessLaplacian => 1.0,
            MatrixKind::Laplacian => -1.0,
        };
        a[u * n + v] = off;
        a[v * n + u] = off;
    }
    if kind != MatrixKind::Adjacency {
        for v in 0..n {
            a[v * n + v] = g.degree(v) as f64;
        }
    }
    a
}

/// Householder reduction of a symmetric matrix to tridiagonal form,
/// eigenvalues only. `a` is row-major and destroyed; on return `d` holds
/// the diagonal and `e[1..]` the subdiagonal.
fn householder_tridiagonal(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += libm::fabs(a[i * n + k]);
            }
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 {
                    -libm::sqrt(h)
                } else {
                    libm::sqrt(h)
                };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[i * n + j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for i in 0..n {
        d[i] = a[i * n + i];
    }
}

/// Implicit-shift QL on a tridiagonal matrix; overwrites `d` with the
/// eigenvalues in arbitrary order.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], n: usize) -> Result<()> {
    if n <= 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    // Convergence is judged against the scale of the whole matrix; a
    // local diagonal-pair test stalls on the large equal-eigenvalue
    // blocks that graph matrices routinely have.
    let scale = (0..n)
        .map(|i| libm::fabs(d[i]) + libm::fabs(e[i]))
        .fold(0.0f64, f64::max);
    let threshold = f64::EPSILON * scale;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                if libm::fabs(e[m]) <= threshold {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 50 {
                return Err(Error::Numeric("eigenvalue iteration did not converge"));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + libm::copysign(r, g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// All eigenvalues of a dense symmetric matrix, descending.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder_tridiagonal(&mut a, n, &mut d, &mut e);
    tridiagonal_ql(&mut d, &mut e, n)?;
    d.sort_unstable_by(|x, y| y.total_cmp(x));
    Ok(d)
}

/// Groups a descending eigenvalue list into (value, multiplicity) entries:
/// consecutive values within `tol` share an entry, represented by their
/// mean.
pub fn group_eigenvalues(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end - 1] - values[end] <= tol {
            end += 1;
        }
        let sum: f64 = values[start..end].iter().sum();
        out.push((sum / (end - start) as f64, end - start));
        start = end;
    }
    out
}

/// Absolute convergence target claimed by the dense solver.
pub const SOLVER_TOLERANCE: f64 = 1e-10;

/// Default tolerance under which nearby eigenvalues merge into one entry.
pub const GROUPING_TOLERANCE: f64 = 1e-7;

/// Eigenvalues of the requested graph matrix via the dense solver, grouped
/// into a [`BaseSpectrum`] of float entries.
pub fn eigen_spectrum(
    g: &Graph,
    kind: MatrixKind,
    grouping_tol: f64,
    caps: &Caps,
) -> Result<BaseSpectrum> {
    let n = g.order();
    if n > caps.dense {
        return Err(Error::Size {
            order: n as u128,
            cap: caps.dense,
        });
    }
    let values = symmetric_eigenvalues(matrix_of(g, kind), n)?;
    let grouped = group_eigenvalues(&values, grouping_tol);
    let entries = grouped
        .iter()
        .map(|&(v, m)| {
            (
                ExactReal::Float {
                    value: v,
                    error: grouping_tol + SOLVER_TOLERANCE,
                },
                m,
            )
        })
        .collect();
    BaseSpectrum::new(kind, entries)
}

fn is_perfect_square(n: usize) -> Option<i64> {
    let r = libm::sqrt(n as f64) as usize;
    for c in r.saturating_sub(1)..=r + 1 {
        if c * c == n {
            return Some(c as i64);
        }
    }
    None
}

/// Exact rational spectrum from the closed-form registry.
///
/// Covered: complete graphs, stars (Laplacian and signless always,
/// adjacency when `n - 1` is a perfect square), `cycle:4`, `cycle:6`,
/// `path:3` (Laplacian/signless), the Petersen graph, and the degenerate
/// generators that collapse onto these. Anything else yields
/// [`Error::Unsupported`] so the caller can fall back to the float solver.
pub fn exact_spectrum(gen: &Generator, kind: MatrixKind) -> Result<BaseSpectrum> {
    use Generator::*;
    use MatrixKind::*;
    let canonical = match *gen {
        Cycle(1) | Path(1) | Star(1) => Complete(1),
        Cycle(2) | Path(2) | Star(2) => Complete(2),
        Cycle(3) => Complete(3),
        Star(3) => Path(3),
        ref g => g.clone(),
    };
    let unsupported = || Err(Error::Unsupported(format!("{gen} ({kind})")));
    let spec = |entries: &[(i64, usize)]| Ok(BaseSpectrum::from_integers(kind, entries));
    match canonical {
        Complete(1) => spec(&[(0, 1)]),
        Complete(n) => {
            let ni = n as i64;
            match kind {
                Adjacency => spec(&[(ni - 1, 1), (-1, n - 1)]),
                Laplacian => spec(&[(ni, n - 1), (0, 1)]),
                SignlessLaplacian => {
                    if n == 2 {
                        spec(&[(2, 1), (0, 1)])
                    } else {
                        spec(&[(2 * ni - 2, 1), (ni - 2, n - 1)])
                    }
                }
            }
        }
        Cycle(4) => match kind {
            Adjacency => spec(&[(2, 1), (0, 2), (-2, 1)]),
            Laplacian | SignlessLaplacian => spec(&[(4, 1), (2, 2), (0, 1)]),
        },
        Cycle(6) => match kind {
            Adjacency => spec(&[(2, 1), (1, 2), (-1, 2), (-2, 1)]),
            Laplacian | SignlessLaplacian => spec(&[(4, 1), (3, 2), (1, 2), (0, 1)]),
        },
        Star(n) => match kind {
            Adjacency => match is_perfect_square(n - 1) {
                Some(s) => spec(&[(s, 1), (0, n - 2), (-s, 1)]),
                None => unsupported(),
            },
            Laplacian | SignlessLaplacian => spec(&[(n as i64, 1), (1, n - 2), (0, 1)]),
        },
        Path(3) => match kind {
            Adjacency => unsupported(),
            Laplacian | SignlessLaplacian => spec(&[(3, 1), (1, 1), (0, 1)]),
        },
        Petersen => match kind {
            Adjacency => spec(&[(3, 1), (1, 5), (-2, 4)]),
            Laplacian => spec(&[(5, 4), (2, 5), (0, 1)]),
            SignlessLaplacian => spec(&[(6, 1), (4, 5), (1, 4)]),
        },
        _ => unsupported(),
    }
}

/// Registry lookup with float fallback: exact spectrum when the spec names
/// a registry graph, otherwise the dense solver (unless `exact_only`).
pub fn resolve_spectrum(
    spec: &GraphSpec,
    g: &Graph,
    kind: MatrixKind,
    exact_only: bool,
    caps: &Caps,
) -> Result<BaseSpectrum> {
    if let GraphSpec::Named(gen) = spec {
        match exact_spectrum(gen, kind) {
            Ok(s) => return Ok(s),
            Err(Error::Unsupported(_)) if !exact_only => {}
            Err(e) => return Err(e),
        }
    } else if exact_only {
        return Err(Error::Unsupported(format!("{spec} ({kind})")));
    }
    eigen_spectrum(g, kind, GROUPING_TOLERANCE, caps)
}

/// One discrepancy found by [`multiset_equal`]: values paired positionally
/// that differ by more than the tolerance, or values left over on one side.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub left: Option<f64>,
    pub right: Option<f64>,
    pub count: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.left, self.right) {
            (Some(l), Some(r)) => write!(f, "{l} vs {r} (x{})", self.count),
            (Some(l), None) => write!(f, "{l} unmatched on the left (x{})", self.count),
            (None, Some(r)) => write!(f, "{r} unmatched on the right (x{})", self.count),
            (None, None) => write!(f, "empty mismatch"),
        }
    }
}

/// Result of a float-multiset comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct MultisetComparison {
    pub equal: bool,
    pub mismatches: Vec<Mismatch>,
}

impl MultisetComparison {
    pub fn report(&self) -> String {
        if self.equal {
            return String::from("multisets match");
        }
        let items: Vec<String> = self.mismatches.iter().map(|m| format!("{m}")).collect();
        format!("multisets differ: {}", items.join(", "))
    }
}

/// Compares two float multisets given as (value, count) pairs: both sides
/// are sorted and matched positionally, walking counts rather than
/// expanding, and entries whose paired values differ by more than `tol`
/// are reported.
pub fn multiset_equal(a: &[(f64, u64)], b: &[(f64, u64)], tol: f64) -> MultisetComparison {
    let mut left: Vec<(f64, u64)> = a.iter().copied().filter(|&(_, c)| c > 0).collect();
    let mut right: Vec<(f64, u64)> = b.iter().copied().filter(|&(_, c)| c > 0).collect();
    left.sort_unstable_by(|x, y| x.0.total_cmp(&y.0));
    right.sort_unstable_by(|x, y| x.0.total_cmp(&y.0));
    let mut mismatches = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    let (mut li, mut rj) = (0u64, 0u64);
    loop {
        match (i < left.len(), j < right.len()) {
            (true, true) => {
                let take = (left[i].1 - li).min(right[j].1 - rj);
                if libm::fabs(left[i].0 - right[j].0) > tol {
                    mismatches.push(Mismatch {
                        left: Some(left[i].0),
                        right: Some(right[j].0),
                        count: take,
                    });
                }
                li += take;
                rj += take;
                if li == left[i].1 {
                    i += 1;
                    li = 0;
                }
                if rj == right[j].1 {
                    j += 1;
                    rj = 0;
                }
            }
            (true, false) => {
                mismatches.push(Mismatch {
                    left: Some(left[i].0),
                    right: None,
                    count: left[i].1 - li,
                });
                i += 1;
                li = 0;
            }
            (false, true) => {
                mismatches.push(Mismatch {
                    left: None,
                    right: Some(right[j].0),
                    count: right[j].1 - rj,
                });
                j += 1;
                rj = 0;
            }
            (false, false) => break,
        }
    }
    MultisetComparison {
        equal: mismatches.is_empty(),
        mismatches,
    }
}

/// Exact trace of a rational spectrum (sum of eigenvalue times
/// multiplicity); `None` if any entry is a float.
pub fn rational_trace(spectrum: &BaseSpectrum) -> Option<BigRational> {
    let mut sum = BigRational::zero();
    for (value, mult) in spectrum.entries() {
        let r = value.rational()?;
        sum += r * BigRational::from_integer(BigInt::from(*mult));
    }
    Some(sum)
}
