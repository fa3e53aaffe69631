//! Closed-form combinatorial and spectral invariants of lexicographic
//! powers, with the exact searches of [`crate::search`] as their
//! brute-force counterpart on small instances.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::eigen::{resolve_spectrum, BaseSpectrum, ExactReal, MatrixKind};
use crate::graph::{diameter, parse_graph, Diameter, Graph, GraphSpec};
use crate::lexpower::{geometric_sum, power_least_eigenvalue};
use crate::search;
use crate::{Caps, Error, Result};

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

fn rat_int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// Minimum and maximum degree of `H^k`:
/// `degree(H^k) = degree(H) * (n^k - 1)/(n - 1)` at both extremes.
pub fn power_degrees(h: &Graph, k: u32) -> Result<(BigUint, BigUint)> {
    if h.order() < 2 {
        return Err(Error::Hypothesis(
            "the power degree formulas require H of order at least 2",
        ));
    }
    let geo = geometric_sum(h.order(), k);
    Ok((big(h.min_degree()) * &geo, big(h.max_degree()) * geo))
}

/// Exact stability number of the power plus its spectral upper bound, in
/// the two algebraically equal displayed forms.
#[derive(Debug, Clone)]
pub struct StabilityBound {
    /// Exact value: the base stability number raised to the `k`-th power.
    pub exact: BigUint,
    /// `n^k * (mu_1(H^k) - min_degree(H^k)) / max_degree(H^k)`.
    pub tight: ExactReal,
    /// The same bound after substituting the power formulas into the base
    /// quantities.
    pub relaxed: ExactReal,
}

/// Stability number `alpha(H^k) = alpha(H)^k` with the Laplacian-index
/// upper bound.
pub fn power_stability(
    h: &Graph,
    h_laplacian: &BaseSpectrum,
    k: u32,
    caps: &Caps,
) -> Result<StabilityBound> {
    if k == 0 || h.order() < 2 {
        return Err(Error::Hypothesis(
            "the power stability formulas require k at least 1 and H of order at least 2",
        ));
    }
    if h.edge_count() == 0 {
        return Err(Error::Hypothesis(
            "the stability upper bound requires H to have at least one edge",
        ));
    }
    let alpha = search::independence_number(h, caps.search)?;
    let exact = big(alpha).pow(k);
    let n = h.order();
    let geo = geometric_sum(n, k);
    let mu1_idx = h_laplacian.entry_at_position(1);
    let mu1 = &h_laplacian.entries()[mu1_idx].0;
    let (tight, relaxed) = match mu1.rational() {
        Some(mu1) => {
            let n_pow_k = rat_int(BigInt::from(big(n).pow(k)));
            let n_pow_k1 = rat_int(BigInt::from(big(n).pow(k - 1)));
            let delta = rat_int(BigInt::from(h.min_degree()));
            let delta_big = rat_int(BigInt::from(big(h.min_degree()) * &geo));
            let cap_big = rat_int(BigInt::from(big(h.max_degree()) * &geo));
            let cap = rat_int(BigInt::from(h.max_degree()));
            let mu1_power = &n_pow_k1 * mu1;
            let tight = &n_pow_k * (&mu1_power - delta_big) / cap_big;
            let ratio = rat_int(BigInt::from(n - 1)) / rat_int(BigInt::from(big(n).pow(k) - 1u32));
            let relaxed = n_pow_k * (mu1_power * ratio - delta) / cap;
            debug_assert_eq!(tight, relaxed);
            (ExactReal::Rational(tight), ExactReal::Rational(relaxed))
        }
        None => {
            let nf = n as f64;
            let n_pow_k = libm::pow(nf, k as f64);
            let n_pow_k1 = libm::pow(nf, (k - 1) as f64);
            let geo_f = geo.to_f64().unwrap_or(f64::INFINITY);
            let mu1_f = mu1.approx();
            let tight = n_pow_k * (n_pow_k1 * mu1_f - h.min_degree() as f64 * geo_f)
                / (h.max_degree() as f64 * geo_f);
            let relaxed = n_pow_k
                * (n_pow_k1 * mu1_f * (nf - 1.0) / (n_pow_k - 1.0) - h.min_degree() as f64)
                / h.max_degree() as f64;
            let error = mu1.error_bound() * n_pow_k * n_pow_k1 / (h.max_degree() as f64 * geo_f);
            (
                ExactReal::Float {
                    value: tight,
                    error,
                },
                ExactReal::Float {
                    value: relaxed,
                    error,
                },
            )
        }
    };
    Ok(StabilityBound {
        exact,
        tight,
        relaxed,
    })
}

/// Clique number `omega(H^k) = omega(H)^k`.
pub fn power_clique(h: &Graph, k: u32, caps: &Caps) -> Result<BigUint> {
    let omega = search::clique_number(h, caps.search)?;
    Ok(big(omega).pow(k))
}

/// Vertex connectivity of the power with its spectral/degree sandwich.
#[derive(Debug, Clone)]
pub struct ConnectivityBounds {
    /// Exact value `n^(k-1) * connectivity(H)`.
    pub value: BigUint,
    /// Spectral lower bound `n^(k-1) * algebraic_connectivity(H)`.
    pub lower: ExactReal,
    /// Degree upper bound `min_degree(H) * (n^k - 1)/(n - 1)`.
    pub upper: BigUint,
}

/// Vertex connectivity `n^(k-1) * connectivity(H)` for connected
/// non-complete `H`, sandwiched between the scaled algebraic connectivity
/// and the power's minimum degree.
pub fn power_vertex_connectivity(
    h: &Graph,
    h_laplacian: &BaseSpectrum,
    k: u32,
    caps: &Caps,
) -> Result<ConnectivityBounds> {
    if h.is_complete() {
        return Err(Error::Hypothesis(
            "the vertex connectivity formula requires H not complete",
        ));
    }
    if !h.is_connected() {
        return Err(Error::Hypothesis(
            "the vertex connectivity formula requires H connected",
        ));
    }
    if k == 0 {
        return Err(Error::Hypothesis(
            "the vertex connectivity formula requires k at least 1",
        ));
    }
    let upsilon = search::vertex_connectivity(h, caps.search)?;
    let n = h.order();
    let scale = big(n).pow(k - 1);
    let value = big(upsilon) * &scale;
    let fiedler_idx = h_laplacian.entry_at_position(n - 1);
    let fiedler = &h_laplacian.entries()[fiedler_idx].0;
    let lower = match fiedler.rational() {
        Some(r) => ExactReal::Rational(r * rat_int(BigInt::from(scale.clone()))),
        None => ExactReal::Float {
            value: fiedler.approx() * scale.to_f64().unwrap_or(f64::INFINITY),
            error: fiedler.error_bound() * scale.to_f64().unwrap_or(f64::INFINITY),
        },
    };
    let upper = big(h.min_degree()) * geometric_sum(n, k);
    let value_rat = rat_int(BigInt::from(value.clone()));
    let sandwich_low = match &lower {
        ExactReal::Rational(r) => r <= &value_rat,
        ExactReal::Float { value: v, error } => *v <= value_rat.to_f64().unwrap() + error + 1e-9,
    };
    if !sandwich_low || value > upper {
        return Err(Error::Numeric(
            "connectivity sandwich violated; spectrum and graph disagree",
        ));
    }
    Ok(ConnectivityBounds {
        value,
        lower,
        upper,
    })
}

/// A chromatic-number lower bound: the exact value and its ceiling.
#[derive(Debug, Clone)]
pub struct ChromaticBound {
    pub bound: ExactReal,
    pub ceiling: BigInt,
}

/// Spectral chromatic lower bound of `H^k` for connected regular `H`:
/// `1 - r_k / (least adjacency eigenvalue of H^k)`, computed in both
/// displayed forms and cross-checked.
pub fn power_chromatic_lower_bound(
    h: &Graph,
    h_adjacency: &BaseSpectrum,
    k: u32,
) -> Result<ChromaticBound> {
    let q = h.regularity().ok_or(Error::Hypothesis(
        "the chromatic lower bound requires H regular",
    ))?;
    if q == 0 {
        return Err(Error::Hypothesis(
            "the chromatic lower bound requires H to have at least one edge",
        ));
    }
    // The least eigenvalue of the power also enforces connectivity.
    let least = power_least_eigenvalue(h, h_adjacency, k)?;
    let n = h.order();
    let r_k = rat_int(BigInt::from(big(q) * geometric_sum(n, k)));
    match least.exact() {
        Some(least_value) => {
            let direct = rat_int(BigInt::one()) - &r_k / least_value;
            // Expanded form on the base quantities.
            let lambda_min = h_adjacency.smallest().rational().expect("rational base");
            let n_pow_k1 = rat_int(BigInt::from(big(n).pow(k - 1)));
            let numerator = rat_int(BigInt::from(big(n).pow(k)) - BigInt::one());
            let denominator = n_pow_k1
                * (rat_int(BigInt::from(n - 1)) * lambda_min / rat_int(BigInt::from(q))
                    + rat_int(BigInt::one()))
                - rat_int(BigInt::one());
            let expanded = rat_int(BigInt::one()) - numerator / denominator;
            if direct != expanded {
                return Err(Error::Numeric(
                    "the two chromatic bound forms disagree; spectrum is inconsistent",
                ));
            }
            let ceiling = direct.ceil().to_integer();
            Ok(ChromaticBound {
                bound: ExactReal::Rational(direct),
                ceiling,
            })
        }
        None => {
            let least_f = least.approx();
            let bound = 1.0 - r_k.to_f64().unwrap() / least_f;
            let ceiling = BigInt::from(libm::ceil(bound) as i64);
            Ok(ChromaticBound {
                bound: ExactReal::Float {
                    value: bound,
                    error: least.error_bound().max(1e-12),
                },
                ceiling,
            })
        }
    }
}

/// Signless-Laplacian bounds for the power: the largest eigenvalue `q_1`
/// lies in `[2 min_degree(H^k), 2 max_degree(H^k)]` and the least
/// eigenvalue `q_n` is strictly below `min_degree(H^k)`.
pub fn power_signless_laplacian_bounds(h: &Graph, k: u32) -> Result<(BigUint, BigUint, BigUint)> {
    let (min_deg, max_deg) = power_degrees(h, k)?;
    Ok((&min_deg * 2u32, max_deg * 2u32, min_deg))
}

/// Diameter of `H^k[G]` (any `G`, any `k >= 1`) for connected non-complete
/// `H`: it equals the diameter of `H` itself.
pub fn power_diameter(h: &Graph, _g: Option<&Graph>, k: u32) -> Result<usize> {
    if k == 0 {
        return Err(Error::Hypothesis(
            "the power diameter formula requires k at least 1",
        ));
    }
    if h.is_complete() {
        return Err(Error::Hypothesis(
            "the power diameter formula requires H not complete",
        ));
    }
    match diameter(h) {
        Diameter::Finite(d) => Ok(d),
        Diameter::Infinite => Err(Error::Hypothesis(
            "the power diameter formula requires H connected",
        )),
    }
}

/// Every closed-form invariant of `H^k` in one record.
#[derive(Debug, Clone)]
pub struct PowerInvariants {
    pub min_degree: BigUint,
    pub max_degree: BigUint,
    pub diameter: Diameter,
    pub independence_number: BigUint,
    pub clique_number: BigUint,
    pub vertex_connectivity: BigUint,
    /// Spectral/degree sandwich around the connectivity, absent for
    /// complete `H` (where the value `n^k - 1` is exact on its own).
    pub connectivity_bounds: Option<(ExactReal, BigUint)>,
    pub signless_index_bounds: (BigUint, BigUint),
    pub signless_least_upper: BigUint,
    /// Absent when `H` is irregular (no closed form applies).
    pub hoffman_bound: Option<ChromaticBound>,
    pub stability_bound: StabilityBound,
}

/// Assembles the full invariant record of `H^k`, short-circuiting the
/// formulas that exclude complete graphs: a complete base makes the power
/// complete, so its diameter is 1 and its connectivity is `n^k - 1`.
pub fn power_invariants(spec: &GraphSpec, k: u32, caps: &Caps) -> Result<PowerInvariants> {
    let h = parse_graph(spec)?;
    if h.order() < 2 || k == 0 {
        return Err(Error::Hypothesis(
            "the power invariants require H of order at least 2 and k at least 1",
        ));
    }
    let laplacian = resolve_spectrum(spec, &h, MatrixKind::Laplacian, false, caps)?;
    let (min_degree, max_degree) = power_degrees(&h, k)?;
    let n = h.order();
    let stability_bound = power_stability(&h, &laplacian, k, caps)?;
    let clique_number = power_clique(&h, k, caps)?;
    let independence_number = big(search::independence_number(&h, caps.search)?).pow(k);
    let (diameter, vertex_connectivity, connectivity_bounds) = if h.is_complete() {
        (Diameter::Finite(1), big(n).pow(k) - BigUint::one(), None)
    } else if !h.is_connected() {
        (Diameter::Infinite, BigUint::zero(), None)
    } else {
        let bounds = power_vertex_connectivity(&h, &laplacian, k, caps)?;
        (
            Diameter::Finite(power_diameter(&h, None, k)?),
            bounds.value.clone(),
            Some((bounds.lower, bounds.upper)),
        )
    };
    let hoffman_bound = if h.regularity().is_some() && h.is_connected() && h.edge_count() > 0 {
        let adjacency = resolve_spectrum(spec, &h, MatrixKind::Adjacency, false, caps)?;
        Some(power_chromatic_lower_bound(&h, &adjacency, k)?)
    } else {
        None
    };
    let (signless_lower, signless_upper, signless_least_upper) =
        power_signless_laplacian_bounds(&h, k)?;
    Ok(PowerInvariants {
        min_degree,
        max_degree,
        diameter,
        independence_number,
        clique_number,
        vertex_connectivity,
        connectivity_bounds,
        signless_index_bounds: (signless_lower, signless_upper),
        signless_least_upper,
        hoffman_bound,
        stability_bound,
    })
}
