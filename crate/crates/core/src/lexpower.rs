//! The closed-form spectral engine for joins, products and powers.
//!
//! Adjacency spectra compose only for regular connected factors; Laplacian
//! spectra compose for arbitrary factors. Both directions reduce an
//! iterated product `H^k[G]` to affine transforms of the two base spectra:
//! the engine never touches the product graph itself, so `k = 100` on a
//! ten-vertex base (a googol vertices) costs the same as `k = 3`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::eigen::{group_eigenvalues, symmetric_eigenvalues, BaseSpectrum, MatrixKind};
use crate::graph::Graph;
use crate::model::{
    offset_distribution, offset_summary, AffineEigenvalue, BaseId, BaseRef, Layer,
    SpectrumDescriptor, SpectrumEntry, SummarizedLayer,
};
use crate::{Error, Result};

/// `1 + n + n^2 + ... + n^(k-1)` as an exact integer (equals
/// `(n^k - 1) / (n - 1)` for `n >= 2`, and `k` for `n = 1`).
pub fn geometric_sum(n: usize, k: u32) -> BigUint {
    let mut sum = BigUint::zero();
    let mut power = BigUint::one();
    for _ in 0..k {
        sum += &power;
        power *= n;
    }
    sum
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

/// Edge count of `H^k[G]` through the recursion
/// `e_k = n * e_(k-1) + e(H) * order_(k-1)^2`.
pub fn power_edge_count(h: &Graph, g: Option<&Graph>, k: u32) -> BigUint {
    let (mut edges, mut order) = match g {
        Some(g) => (big(g.edge_count()), big(g.order())),
        None => (BigUint::zero(), BigUint::one()),
    };
    let n = big(h.order());
    let he = big(h.edge_count());
    for _ in 0..k {
        edges = &n * edges + &he * (&order * &order);
        order *= &n;
    }
    edges
}

/// One factor of a generalized composition: its spectrum, order, and
/// regularity when it has one.
#[derive(Debug, Clone)]
pub struct JoinPart {
    pub spectrum: BaseSpectrum,
    pub order: usize,
    pub regularity: Option<usize>,
}

impl JoinPart {
    pub fn new(spectrum: BaseSpectrum, order: usize, regularity: Option<usize>) -> Result<Self> {
        if spectrum.order() != order {
            return Err(Error::Numeric("part spectrum order mismatch"));
        }
        Ok(JoinPart {
            spectrum,
            order,
            regularity,
        })
    }
}

fn quotient_eigenvalues(h: &Graph, diagonal: &[f64], orders: &[usize], sign: f64) -> Vec<f64> {
    let n = h.order();
    let mut c = vec![0.0; n * n];
    for j in 0..n {
        c[j * n + j] = diagonal[j];
    }
    for (i, j) in h.edge_list() {
        let v = sign * libm::sqrt((orders[i] * orders[j]) as f64);
        c[i * n + j] = v;
        c[j * n + i] = v;
    }
    symmetric_eigenvalues(c, n).expect("quotient matrices are tiny and symmetric")
}

/// Adjacency spectrum of the composition that replaces vertex `j` of `H`
/// by the regular graph behind `parts[j]`: each part keeps its spectrum
/// minus one copy of its regularity, and the missing eigenvalues are those
/// of the quotient matrix with the regularities on the diagonal and
/// `sqrt(m_i * m_j)` on the edges of `H`.
pub fn hjoin_adjacency_spectrum(h: &Graph, parts: &[JoinPart]) -> Result<Vec<(f64, u64)>> {
    if parts.len() != h.order() {
        return Err(Error::Numeric("one join part required per vertex of H"));
    }
    let mut diagonal = Vec::with_capacity(parts.len());
    for part in parts {
        if part.spectrum.kind() != MatrixKind::Adjacency {
            return Err(Error::Numeric("join parts must carry adjacency spectra"));
        }
        let p = part.regularity.ok_or(Error::Hypothesis(
            "the join adjacency closed form requires each part regular",
        ))?;
        diagonal.push(p as f64);
    }
    let orders: Vec<usize> = parts.iter().map(|p| p.order).collect();
    let mut values = quotient_eigenvalues(h, &diagonal, &orders, 1.0);
    for part in parts {
        let mut strip = 1usize;
        for (value, mult) in part.spectrum.entries() {
            let kept = if strip > 0 { mult - 1 } else { *mult };
            strip = 0;
            for _ in 0..kept {
                values.push(value.approx());
            }
        }
    }
    values.sort_unstable_by(|a, b| b.total_cmp(a));
    Ok(group_eigenvalues(&values, 1e-9)
        .into_iter()
        .map(|(v, m)| (v, m as u64))
        .collect())
}

/// Laplacian spectrum of the same composition, for arbitrary parts: part
/// `j` keeps its nonzero Laplacian eigenvalues shifted by
/// `s_j = sum of the orders of its joined neighbors`, and the quotient
/// matrix has the `s_j` on the diagonal and `-sqrt(m_i * m_j)` on edges.
pub fn hjoin_laplacian_spectrum(h: &Graph, parts: &[JoinPart]) -> Result<Vec<(f64, u64)>> {
    if parts.len() != h.order() {
        return Err(Error::Numeric("one join part required per vertex of H"));
    }
    for part in parts {
        if part.spectrum.kind() != MatrixKind::Laplacian {
            return Err(Error::Numeric("join parts must carry laplacian spectra"));
        }
    }
    let orders: Vec<usize> = parts.iter().map(|p| p.order).collect();
    let shifts: Vec<f64> = (0..h.order())
        .map(|j| {
            h.neighbors(j)
                .iter()
                .map(|&i| orders[i as usize] as f64)
                .sum()
        })
        .collect();
    let mut values = quotient_eigenvalues(h, &shifts, &orders, -1.0);
    for (j, part) in parts.iter().enumerate() {
        // All but one copy of the zero eigenvalue, shifted by s_j.
        let entries = part.spectrum.entries();
        for (idx, (value, mult)) in entries.iter().enumerate() {
            let kept = if idx + 1 == entries.len() {
                mult - 1
            } else {
                *mult
            };
            for _ in 0..kept {
                values.push(value.approx() + shifts[j]);
            }
        }
    }
    values.sort_unstable_by(|a, b| b.total_cmp(a));
    Ok(group_eigenvalues(&values, 1e-9)
        .into_iter()
        .map(|(v, m)| (v, m as u64))
        .collect())
}

fn base_ref(graph: BaseId, spectrum: &BaseSpectrum, index: usize) -> BaseRef {
    BaseRef {
        graph,
        index,
        value: spectrum.entries()[index].0.clone(),
    }
}

/// Single-step adjacency spectrum of `H[G]` for arbitrary `H` and regular
/// `G`: the non-largest `G` eigenvalues survive `n` times each, the
/// regularity of `G` keeps `n * (g_1 - 1)` copies, and every `H` eigenvalue
/// turns into `m * lambda + p`.
pub fn lex_adjacency_spectrum_step(
    h: &Graph,
    h_spectrum: &BaseSpectrum,
    g: &Graph,
    g_spectrum: &BaseSpectrum,
) -> Result<SpectrumDescriptor> {
    let p = g.regularity().ok_or(Error::Hypothesis(
        "the single-step adjacency closed form requires G regular",
    ))?;
    let n = h.order();
    let m = g.order();
    let mut entries = Vec::new();
    for (idx, (_, mult)) in g_spectrum.entries().iter().enumerate() {
        let copies = if idx == 0 { mult - 1 } else { *mult };
        entries.push(SpectrumEntry {
            value: AffineEigenvalue::affine(
                BigUint::one(),
                base_ref(BaseId::G, g_spectrum, idx),
                BigInt::zero(),
            ),
            multiplicity: big(n) * big(copies),
            layer: Layer::Factor,
        });
    }
    for (idx, (_, mult)) in h_spectrum.entries().iter().enumerate() {
        entries.push(SpectrumEntry {
            value: AffineEigenvalue::affine(
                big(m),
                base_ref(BaseId::H, h_spectrum, idx),
                BigInt::from(p),
            ),
            multiplicity: big(*mult),
            layer: Layer::Power(0),
        });
    }
    SpectrumDescriptor::new(MatrixKind::Adjacency, big(n * m), entries, Vec::new())
}

/// Single-step Laplacian spectrum of `H[G]`, both arbitrary: for each
/// vertex `j` of `H` the nonzero `G` eigenvalues shift by `m * d_H(j)`, and
/// the `H` eigenvalues scale by `m`.
pub fn lex_laplacian_spectrum_step(
    h: &Graph,
    h_spectrum: &BaseSpectrum,
    g_spectrum: &BaseSpectrum,
) -> Result<SpectrumDescriptor> {
    let n = h.order();
    let m = g_spectrum.order();
    let mut entries = Vec::new();
    let g_entries = g_spectrum.entries();
    for (&degree, &count) in h.degree_histogram().iter() {
        for (idx, (_, mult)) in g_entries.iter().enumerate() {
            let copies = if idx + 1 == g_entries.len() {
                mult - 1
            } else {
                *mult
            };
            entries.push(SpectrumEntry {
                value: AffineEigenvalue::affine(
                    BigUint::one(),
                    base_ref(BaseId::G, g_spectrum, idx),
                    BigInt::from(m * degree),
                ),
                multiplicity: big(count) * big(copies),
                layer: Layer::FactorShift,
            });
        }
    }
    for (idx, (_, mult)) in h_spectrum.entries().iter().enumerate() {
        entries.push(SpectrumEntry {
            value: AffineEigenvalue::affine(
                big(m),
                base_ref(BaseId::H, h_spectrum, idx),
                BigInt::zero(),
            ),
            multiplicity: big(*mult),
            layer: Layer::BaseTop,
        });
    }
    SpectrumDescriptor::new(MatrixKind::Laplacian, big(n * m), entries, Vec::new())
}

/// Everything the power closed forms need about one `(H, G, k)` instance.
///
/// `g = None` selects the pure power `H^k` (zeroth power: a single vertex);
/// regularities are detected from the graphs, not declared.
#[derive(Debug, Clone)]
pub struct PowerParams {
    pub h: Graph,
    pub g: Option<Graph>,
    pub k: u32,
    pub h_spectrum: BaseSpectrum,
    pub g_spectrum: Option<BaseSpectrum>,
    pub h_regularity: Option<usize>,
    pub g_regularity: Option<usize>,
}

impl PowerParams {
    pub fn new(
        h: Graph,
        h_spectrum: BaseSpectrum,
        g: Option<(Graph, BaseSpectrum)>,
        k: u32,
    ) -> Result<Self> {
        if h_spectrum.order() != h.order() {
            return Err(Error::Numeric("H spectrum does not match the order of H"));
        }
        let (g, g_spectrum) = match g {
            Some((graph, spectrum)) => {
                if spectrum.order() != graph.order() {
                    return Err(Error::Numeric("G spectrum does not match the order of G"));
                }
                if spectrum.kind() != h_spectrum.kind() {
                    return Err(Error::Numeric("factor spectra must share a matrix kind"));
                }
                (Some(graph), Some(spectrum))
            }
            None => (None, None),
        };
        let h_regularity = h.regularity();
        let g_regularity = g.as_ref().and_then(|g| g.regularity());
        Ok(PowerParams {
            h,
            g,
            k,
            h_spectrum,
            g_spectrum,
            h_regularity,
            g_regularity,
        })
    }

    pub fn kind(&self) -> MatrixKind {
        self.h_spectrum.kind()
    }

    /// Order of the inner factor (1 for the pure power).
    fn inner_order(&self) -> usize {
        self.g.as_ref().map_or(1, |g| g.order())
    }

    /// Order of `H^k[G]` as an exact integer.
    pub fn power_order(&self) -> BigUint {
        big(self.inner_order()) * big(self.h.order()).pow(self.k)
    }

    /// The spectrum of `G` passed through unchanged (the zeroth power).
    fn direct_descriptor(&self) -> Result<SpectrumDescriptor> {
        let entries = match &self.g_spectrum {
            Some(gs) => gs
                .entries()
                .iter()
                .enumerate()
                .map(|(idx, (_, mult))| SpectrumEntry {
                    value: AffineEigenvalue::affine(
                        BigUint::one(),
                        base_ref(BaseId::G, gs, idx),
                        BigInt::zero(),
                    ),
                    multiplicity: big(*mult),
                    layer: Layer::Direct,
                })
                .collect(),
            None => vec![SpectrumEntry {
                value: AffineEigenvalue::constant(BigInt::zero()),
                multiplicity: BigUint::one(),
                layer: Layer::Direct,
            }],
        };
        SpectrumDescriptor::new(self.kind(), self.power_order(), entries, Vec::new())
    }
}

/// Adjacency spectrum of `H^k[G]` for connected regular factors.
///
/// The result is: the non-largest `G` eigenvalues with multiplicity
/// `n^k * g`; the regularity `r_k = m q (n^k - 1)/(n - 1) + p` once; and
/// for each depth `i < k` and non-largest `H` eigenvalue `gamma`, the value
/// `m n^i gamma + r_i` with multiplicity `n^(k-1-i) h`.
pub fn power_adjacency_spectrum(params: &PowerParams) -> Result<SpectrumDescriptor> {
    if params.kind() != MatrixKind::Adjacency {
        return Err(Error::Numeric("adjacency power requires adjacency spectra"));
    }
    if params.k == 0 {
        return params.direct_descriptor();
    }
    let q = params.h_regularity.ok_or(Error::Hypothesis(
        "the adjacency power closed form requires H regular",
    ))?;
    if !params.h.is_connected() {
        return Err(Error::Hypothesis(
            "the adjacency power closed form requires H connected",
        ));
    }
    let p = match &params.g {
        None => 0,
        Some(g) => {
            let p = params.g_regularity.ok_or(Error::Hypothesis(
                "the adjacency power closed form requires G regular",
            ))?;
            if !g.is_connected() {
                return Err(Error::Hypothesis(
                    "the adjacency power closed form requires G connected",
                ));
            }
            p
        }
    };
    let n = params.h.order();
    let m = params.inner_order();
    let k = params.k;
    let degree_at = |i: u32| -> BigInt {
        BigInt::from(big(m) * big(q) * geometric_sum(n, i)) + BigInt::from(p)
    };
    let mut entries = Vec::new();
    if let Some(gs) = &params.g_spectrum {
        let n_pow_k = big(n).pow(k);
        for (idx, (_, mult)) in gs.entries().iter().enumerate() {
            let copies = if idx == 0 { mult - 1 } else { *mult };
            entries.push(SpectrumEntry {
                value: AffineEigenvalue::affine(
                    BigUint::one(),
                    base_ref(BaseId::G, gs, idx),
                    BigInt::zero(),
                ),
                multiplicity: &n_pow_k * big(copies),
                layer: Layer::Factor,
            });
        }
    }
    entries.push(SpectrumEntry {
        value: AffineEigenvalue::constant(degree_at(k)),
        multiplicity: BigUint::one(),
        layer: Layer::Perron,
    });
    for i in 0..k {
        let scale = big(m) * big(n).pow(i);
        let offset = degree_at(i);
        let copies = big(n).pow(k - 1 - i);
        for (idx, (_, mult)) in params.h_spectrum.entries().iter().enumerate().skip(1) {
            entries.push(SpectrumEntry {
                value: AffineEigenvalue::affine(
                    scale.clone(),
                    base_ref(BaseId::H, &params.h_spectrum, idx),
                    offset.clone(),
                ),
                multiplicity: &copies * big(*mult),
                layer: Layer::Power(i),
            });
        }
    }
    SpectrumDescriptor::new(
        MatrixKind::Adjacency,
        params.power_order(),
        entries,
        Vec::new(),
    )
}

/// The least adjacency eigenvalue of `H^k` for connected regular `H` with
/// at least one edge: `n^(k-1) * lambda_min(H) + q (n^(k-1) - 1)/(n - 1)`.
pub fn power_least_eigenvalue(
    h: &Graph,
    h_spectrum: &BaseSpectrum,
    k: u32,
) -> Result<AffineEigenvalue> {
    let q = h.regularity().ok_or(Error::Hypothesis(
        "the least-eigenvalue formula requires H regular",
    ))?;
    if !h.is_connected() {
        return Err(Error::Hypothesis(
            "the least-eigenvalue formula requires H connected",
        ));
    }
    if h.edge_count() == 0 {
        return Err(Error::Hypothesis(
            "the least-eigenvalue formula requires H to have at least one edge",
        ));
    }
    if k == 0 {
        return Err(Error::Hypothesis(
            "the least-eigenvalue formula requires k at least 1",
        ));
    }
    let n = h.order();
    let last = h_spectrum.entries().len() - 1;
    Ok(AffineEigenvalue::affine(
        big(n).pow(k - 1),
        base_ref(BaseId::H, h_spectrum, last),
        BigInt::from(big(q) * geometric_sum(n, k - 1)),
    ))
}

/// One degree-shifted layer of the Laplacian closed form: all but the last
/// eigenvalue copy of `spectrum`, scaled, shifted by the offsets of a
/// degree-sum distribution over `weights`.
struct ShiftedLayer<'a> {
    layer: Layer,
    scale: BigUint,
    spectrum: &'a BaseSpectrum,
    graph: BaseId,
    weights: Vec<BigInt>,
}

impl ShiftedLayer<'_> {
    /// Drops one copy of the zero eigenvalue (the last entry).
    fn reduced(&self) -> Vec<(usize, usize)> {
        let entries = self.spectrum.entries();
        entries
            .iter()
            .enumerate()
            .filter_map(|(idx, (_, mult))| {
                let copies = if idx + 1 == entries.len() {
                    mult - 1
                } else {
                    *mult
                };
                (copies > 0).then_some((idx, copies))
            })
            .collect()
    }

    /// Emits expanded entries, or an exact summary per base eigenvalue when
    /// the distribution overflows `cap`.
    fn emit(
        &self,
        histogram: &alloc::collections::BTreeMap<usize, usize>,
        cap: usize,
        entries: &mut Vec<SpectrumEntry>,
        summarized: &mut Vec<SummarizedLayer>,
    ) {
        let reduced = self.reduced();
        if reduced.is_empty() {
            return;
        }
        match offset_distribution(histogram, &self.weights, cap) {
            Ok(distribution) => {
                for (offset, count) in distribution.offsets() {
                    for &(idx, copies) in &reduced {
                        entries.push(SpectrumEntry {
                            value: AffineEigenvalue::affine(
                                self.scale.clone(),
                                base_ref(self.graph, self.spectrum, idx),
                                offset.clone(),
                            ),
                            multiplicity: count * big(copies),
                            layer: self.layer,
                        });
                    }
                }
            }
            Err(_) => {
                let summary = offset_summary(histogram, &self.weights);
                for &(idx, copies) in &reduced {
                    summarized.push(SummarizedLayer {
                        layer: self.layer,
                        scale: self.scale.clone(),
                        base: Some(base_ref(self.graph, self.spectrum, idx)),
                        base_multiplicity: big(copies),
                        summary: summary.clone(),
                    });
                }
            }
        }
    }
}

/// Laplacian spectrum of `H^k[G]` for arbitrary factors.
///
/// The nonzero `G` eigenvalues shift by every weighted degree sum
/// `m * sum n^(i-1) d_H(j_i)` over vertex tuples (one tuple per copy); the
/// nonzero `H` eigenvalues appear scaled by `m n^(i-2)` at depth `i` with
/// suffix degree sums; and the full `H` Laplacian arrives once, scaled by
/// `m n^(k-1)`. Degree-sum distributions that exceed `expansion_cap`
/// distinct offsets are kept as exact summaries instead of entries.
pub fn power_laplacian_spectrum(
    params: &PowerParams,
    expansion_cap: usize,
) -> Result<SpectrumDescriptor> {
    if params.kind() != MatrixKind::Laplacian {
        return Err(Error::Numeric("laplacian power requires laplacian spectra"));
    }
    if params.k == 0 {
        return params.direct_descriptor();
    }
    let n = params.h.order();
    let m = params.inner_order();
    let k = params.k;
    let histogram = params.h.degree_histogram();
    let mut entries = Vec::new();
    let mut summarized = Vec::new();
    if let Some(gs) = &params.g_spectrum {
        ShiftedLayer {
            layer: Layer::FactorShift,
            scale: BigUint::one(),
            spectrum: gs,
            graph: BaseId::G,
            weights: (1..=k)
                .map(|i| BigInt::from(big(m) * big(n).pow(i - 1)))
                .collect(),
        }
        .emit(&histogram, expansion_cap, &mut entries, &mut summarized);
    }
    for i in 2..=k {
        ShiftedLayer {
            layer: Layer::BaseShift(i),
            scale: big(m) * big(n).pow(i - 2),
            spectrum: &params.h_spectrum,
            graph: BaseId::H,
            weights: (i..=k)
                .map(|r| BigInt::from(big(m) * big(n).pow(r - 1)))
                .collect(),
        }
        .emit(&histogram, expansion_cap, &mut entries, &mut summarized);
    }
    let top_scale = big(m) * big(n).pow(k - 1);
    for (idx, (_, mult)) in params.h_spectrum.entries().iter().enumerate() {
        entries.push(SpectrumEntry {
            value: AffineEigenvalue::affine(
                top_scale.clone(),
                base_ref(BaseId::H, &params.h_spectrum, idx),
                BigInt::zero(),
            ),
            multiplicity: big(*mult),
            layer: Layer::BaseTop,
        });
    }
    SpectrumDescriptor::new(
        MatrixKind::Laplacian,
        params.power_order(),
        entries,
        summarized,
    )
}

/// Algebraic connectivity of `H^k` for connected `H`:
/// `n^(k-1) * (second-smallest Laplacian eigenvalue of H)`.
pub fn power_algebraic_connectivity(
    h: &Graph,
    h_laplacian: &BaseSpectrum,
    k: u32,
) -> Result<AffineEigenvalue> {
    ordered_laplacian_scaling(
        h,
        h_laplacian,
        k,
        h.order() - 1,
        "the algebraic connectivity formula requires H connected",
    )
}

/// Largest Laplacian eigenvalue of `H^k` for connected `H`:
/// `n^(k-1) * (largest Laplacian eigenvalue of H)`.
pub fn power_laplacian_index(
    h: &Graph,
    h_laplacian: &BaseSpectrum,
    k: u32,
) -> Result<AffineEigenvalue> {
    ordered_laplacian_scaling(
        h,
        h_laplacian,
        k,
        1,
        "the Laplacian index formula requires H connected",
    )
}

fn ordered_laplacian_scaling(
    h: &Graph,
    h_laplacian: &BaseSpectrum,
    k: u32,
    position: usize,
    hypothesis: &'static str,
) -> Result<AffineEigenvalue> {
    if !h.is_connected() || h.order() < 2 {
        return Err(Error::Hypothesis(hypothesis));
    }
    if k == 0 {
        return Err(Error::Hypothesis(
            "the Laplacian power scaling formulas require k at least 1",
        ));
    }
    debug_assert_eq!(h_laplacian.kind(), MatrixKind::Laplacian);
    let idx = h_laplacian.entry_at_position(position);
    Ok(AffineEigenvalue::affine(
        big(h.order()).pow(k - 1),
        base_ref(BaseId::H, h_laplacian, idx),
        BigInt::zero(),
    ))
}
