//! Stability, real-rootedness, and negative-dependence testing.
//!
//! Real-rootedness of univariate rational polynomials is decided exactly
//! by Sturm's root count. Multivariate stability is only ever refuted
//! exactly (a sampled point in the open upper half-plane where the
//! polynomial vanishes) or reported as "no counterexample found" — never
//! proved. Negative-dependence checks on distributions are exact.

use crate::markov::{ChainError, Distribution};
use crate::params::{ParamPoly, ParamSet, PolyError};
use crate::rational::{crat_is_zero, CRat, Rat};
use crate::sitepoly::{SitePoly, SiteVar};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    ZeroPolynomial,
    SameVariable,
    SizeCap { n: usize, cap: usize },
    NotLipschitz { state: u64, neighbor: u64 },
    Unnormalized,
    Poly(PolyError),
    Chain(ChainError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::ZeroPolynomial => write!(f, "zero polynomial"),
            AnalysisError::SameVariable => write!(f, "variable indices must differ"),
            AnalysisError::SizeCap { n, cap } => {
                write!(f, "site count {n} exceeds the exact-check cap {cap}")
            }
            AnalysisError::NotLipschitz { state, neighbor } => write!(
                f,
                "function changes by more than 1 between neighbors {state} and {neighbor}"
            ),
            AnalysisError::Unnormalized => write!(f, "distribution must be normalized"),
            AnalysisError::Poly(e) => write!(f, "{e}"),
            AnalysisError::Chain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AnalysisError {}

impl From<PolyError> for AnalysisError {
    fn from(e: PolyError) -> Self {
        AnalysisError::Poly(e)
    }
}

impl From<ChainError> for AnalysisError {
    fn from(e: ChainError) -> Self {
        AnalysisError::Chain(e)
    }
}

// ---------------------------------------------------------------------
// Univariate real-rootedness via Sturm sequences
// ---------------------------------------------------------------------

/// Dense univariate polynomial, index = degree.
pub type UniPoly = Vec<Rat>;

fn trim(p: &mut UniPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn degree(p: &UniPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn derivative(p: &UniPoly) -> UniPoly {
    let mut out: UniPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
        .collect();
    trim(&mut out);
    out
}

/// Remainder of polynomial division, leading coefficient made monic along
/// the way to control growth.
fn remainder(num: &UniPoly, den: &UniPoly) -> UniPoly {
    let mut rem = num.clone();
    trim(&mut rem);
    let dd = degree(den).expect("nonzero divisor");
    let lead = den[dd].clone();
    while let Some(dr) = degree(&rem) {
        if dr < dd {
            break;
        }
        let factor = &rem[dr] / &lead;
        let shift = dr - dd;
        for k in 0..=dd {
            let delta = &den[k] * &factor;
            rem[k + shift] -= delta;
        }
        trim(&mut rem);
    }
    rem
}

fn monic(p: &UniPoly) -> UniPoly {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let lead = p[d].clone();
            p.iter().map(|c| c / &lead).collect()
        }
    }
}

fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut a = monic(a);
    let mut b = monic(b);
    while !b.is_empty() {
        let r = remainder(&a, &b);
        a = b;
        b = monic(&r);
    }
    a
}

fn divide_exact(num: &UniPoly, den: &UniPoly) -> UniPoly {
    let mut rem = num.clone();
    trim(&mut rem);
    let dd = degree(den).expect("nonzero divisor");
    let lead = den[dd].clone();
    let dn = match degree(&rem) {
        None => return Vec::new(),
        Some(d) => d,
    };
    let mut quot = vec![Rat::zero(); dn - dd + 1];
    while let Some(dr) = degree(&rem) {
        if dr < dd {
            break;
        }
        let factor = &rem[dr] / &lead;
        let shift = dr - dd;
        quot[shift] = factor.clone();
        for k in 0..=dd {
            let delta = &den[k] * &factor;
            rem[k + shift] -= delta;
        }
        trim(&mut rem);
    }
    debug_assert!(rem.is_empty(), "division was not exact");
    quot
}

/// Number of distinct real roots, by sign variations of the Sturm chain
/// at minus and plus infinity. The input must be squarefree.
fn sturm_distinct_real_roots(p: &UniPoly) -> usize {
    match degree(p) {
        None | Some(0) => return 0,
        Some(_) => {}
    }
    let mut chain: Vec<UniPoly> = vec![p.clone(), derivative(p)];
    loop {
        let k = chain.len();
        let r = remainder(&chain[k - 2], &chain[k - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c.clone()).collect());
        if degree(chain.last().unwrap()) == Some(0) {
            break;
        }
    }
    let variations = |at_plus_infinity: bool| {
        let mut count = 0;
        let mut last_sign = 0i8;
        for q in &chain {
            let dq = degree(q).unwrap();
            let lead = &q[dq];
            let mut sign = if lead.is_positive() { 1i8 } else { -1 };
            if !at_plus_infinity && dq % 2 == 1 {
                sign = -sign;
            }
            if last_sign != 0 && sign != last_sign {
                count += 1;
            }
            last_sign = sign;
        }
        count
    };
    variations(false) - variations(true)
}

/// Exact decision: every complex root of `p` is real. Repeated roots are
/// handled by first passing to the squarefree part.
pub fn sturm_real_rooted(p: &UniPoly) -> Result<bool, AnalysisError> {
    let mut p = p.clone();
    trim(&mut p);
    let d = degree(&p).ok_or(AnalysisError::ZeroPolynomial)?;
    if d == 0 {
        return Ok(true); // nonzero constant: no roots at all
    }
    let g = gcd(&p, &derivative(&p));
    let squarefree = if degree(&g) == Some(0) {
        monic(&p)
    } else {
        monic(&divide_exact(&p, &g))
    };
    let deg = degree(&squarefree).unwrap();
    Ok(sturm_distinct_real_roots(&squarefree) == deg)
}

// ---------------------------------------------------------------------
// Stability sampling
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityVerdict {
    Refuted,
    NoCounterexample,
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityVerdict::Refuted => write!(f, "refuted"),
            StabilityVerdict::NoCounterexample => write!(f, "no-counterexample"),
        }
    }
}

/// One sampled refutation point: assignments for the x (and y) variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityWitness {
    pub xs: Vec<CRat>,
    pub ys: Vec<CRat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub verdict: StabilityVerdict,
    pub witness: Option<StabilityWitness>,
    pub samples_run: usize,
    pub seed: u64,
}

fn random_point(rng: &mut impl Rng, strict_upper: bool) -> CRat {
    let num_re = rng.gen_range(-8i64..=8);
    let den_re = rng.gen_range(1i64..=6);
    let num_im = if strict_upper {
        rng.gen_range(1i64..=8)
    } else {
        rng.gen_range(-8i64..=8)
    };
    let den_im = rng.gen_range(1i64..=6);
    CRat::new(
        Rat::new(BigInt::from(num_re), BigInt::from(den_re)),
        Rat::new(BigInt::from(num_im), BigInt::from(den_im)),
    )
}

/// Search the open upper half-plane (all imaginary parts strictly
/// positive) for an exact zero of `p`. The polynomial must be numeric.
///
/// Each sample draws random rational upper-half-plane points for all
/// variables except one pivot; since the polynomial is multiaffine it is
/// linear in the pivot, whose unique root is computed exactly and kept
/// when it lands strictly in the upper half-plane. Witnesses are
/// re-verified by exact evaluation; absence of a witness proves nothing.
pub fn stability_sample(
    p: &SitePoly,
    num_samples: usize,
    seed: u64,
) -> Result<StabilityReport, AnalysisError> {
    for (_, c) in p.terms() {
        c.constant_value()?; // reject symbolic coefficients
    }
    let n = p.n();
    let with_y = p.has_y();
    let num_vars = if with_y { 2 * n } else { n };
    if num_vars == 0 {
        return Ok(StabilityReport {
            verdict: StabilityVerdict::NoCounterexample,
            witness: None,
            samples_run: 0,
            seed,
        });
    }
    let derivatives: Vec<SitePoly> = (0..num_vars)
        .map(|v| {
            let var = if v < n {
                SiteVar::X(v + 1)
            } else {
                SiteVar::Y(v - n + 1)
            };
            p.partial_derivative(var).expect("in-range variable")
        })
        .collect();

    let witness = (0..num_samples)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9E3779B97F4A7C15));
            let pivot = k % num_vars;
            let mut xs: Vec<CRat> = (0..n).map(|_| random_point(&mut rng, true)).collect();
            let mut ys: Vec<CRat> = if with_y {
                (0..n).map(|_| random_point(&mut rng, true)).collect()
            } else {
                Vec::new()
            };
            let zero = CRat::new(Rat::zero(), Rat::zero());
            let assign = |xs: &mut Vec<CRat>, ys: &mut Vec<CRat>, v: CRat| {
                if pivot < n {
                    xs[pivot] = v;
                } else {
                    ys[pivot - n] = v;
                }
            };
            // p = constant + pivot * slope at the sampled point
            let slope = derivatives[pivot]
                .evaluate(&xs, &ys, &[])
                .expect("numeric polynomial");
            assign(&mut xs, &mut ys, zero.clone());
            let constant = p.evaluate(&xs, &ys, &[]).expect("numeric polynomial");
            let root = if crat_is_zero(&slope) {
                if crat_is_zero(&constant) {
                    // identically zero in the pivot: any upper-half value
                    CRat::new(Rat::zero(), Rat::one())
                } else {
                    return None;
                }
            } else {
                -constant / slope
            };
            if !root.im.is_positive() {
                return None;
            }
            assign(&mut xs, &mut ys, root);
            let check = p.evaluate(&xs, &ys, &[]).expect("numeric polynomial");
            assert!(crat_is_zero(&check), "linear root must evaluate to zero");
            Some((k, StabilityWitness { xs, ys }))
        })
        .min_by_key(|(k, _)| *k);
    Ok(match witness {
        Some((k, w)) => StabilityReport {
            verdict: StabilityVerdict::Refuted,
            witness: Some(w),
            samples_run: k + 1,
            seed,
        },
        None => StabilityReport {
            verdict: StabilityVerdict::NoCounterexample,
            witness: None,
            samples_run: num_samples,
            seed,
        },
    })
}

/// Check a claimed witness exactly.
pub fn verify_witness(p: &SitePoly, w: &StabilityWitness) -> Result<bool, AnalysisError> {
    let v = p.evaluate(&w.xs, &w.ys, &[])?;
    let strict = w.xs.iter().chain(&w.ys).all(|z| z.im.is_positive());
    Ok(strict && crat_is_zero(&v))
}

// ---------------------------------------------------------------------
// Rayleigh differences
// ---------------------------------------------------------------------

/// The Rayleigh difference `(dp/dx_i)(dp/dx_j) - p * d2p/(dx_i dx_j)` of a
/// multiaffine polynomial with numeric coefficients, as a general sparse
/// polynomial in the site variables (its degree in the other variables can
/// reach two, so it does not fit the multiaffine representation).
pub fn rayleigh_difference(
    p: &SitePoly,
    i: usize,
    j: usize,
) -> Result<ParamPoly, AnalysisError> {
    if i == j {
        return Err(AnalysisError::SameVariable);
    }
    if p.has_y() {
        return Err(AnalysisError::Poly(PolyError::ArityMismatch));
    }
    let di = p.partial_derivative(SiteVar::X(i))?;
    let dj = p.partial_derivative(SiteVar::X(j))?;
    let dij = di.partial_derivative(SiteVar::X(j))?;
    let as_params = |q: &SitePoly| -> Result<ParamPoly, AnalysisError> {
        let vars = ParamSet::new((1..=p.n()).map(|k| format!("x{k}")));
        let mut out = ParamPoly::zero(vars.clone());
        for (&(xm, ym), c) in q.terms() {
            debug_assert_eq!(ym, 0);
            let mut exps = vec![0u32; p.n()];
            for k in 0..p.n() {
                if xm >> k & 1 == 1 {
                    exps[k] = 1;
                }
            }
            out.add_term(exps, c.constant_value()?);
        }
        Ok(out)
    };
    let left = as_params(&di)?.try_mul(&as_params(&dj)?)?;
    let right = as_params(p)?.try_mul(&as_params(&dij)?)?;
    Ok(left.try_sub(&right)?)
}

/// Evaluate the Rayleigh difference at random real rational points; a
/// negative value is returned as a witness.
pub fn rayleigh_negative_witness(
    delta: &ParamPoly,
    num_samples: usize,
    seed: u64,
) -> Option<Vec<Rat>> {
    let n = delta.params().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..num_samples {
        let point: Vec<Rat> = (0..n)
            .map(|_| {
                Rat::new(
                    BigInt::from(rng.gen_range(-6i64..=6)),
                    BigInt::from(rng.gen_range(1i64..=4)),
                )
            })
            .collect();
        let v = delta.eval(&point).expect("full assignment");
        if v.is_negative() {
            return Some(point);
        }
    }
    None
}

// ---------------------------------------------------------------------
// Negative dependence of distributions
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseReport {
    pub holds: bool,
    /// On failure, the offending pair and the two sides of the inequality.
    pub witness: Option<(usize, usize, Rat, Rat)>,
}

/// Exact check of `P(eta_i = eta_j = 1) <= P(eta_i = 1) P(eta_j = 1)` over
/// all pairs.
pub fn pairwise_negative_correlation(
    mu: &Distribution,
) -> Result<PairwiseReport, AnalysisError> {
    if !mu.is_normalized() {
        return Err(AnalysisError::Unnormalized);
    }
    let n = mu.n();
    let marginals: Vec<Rat> = (1..=n).map(|i| mu.marginal(i)).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            let joint = mu.joint(i, j);
            let product = &marginals[i - 1] * &marginals[j - 1];
            if joint > product {
                return Ok(PairwiseReport {
                    holds: false,
                    witness: Some((i, j, joint, product)),
                });
            }
        }
    }
    Ok(PairwiseReport {
        holds: true,
        witness: None,
    })
}

/// Cap on the exhaustive negative-association check; up-set counts grow
/// like Dedekind numbers.
pub const NA_SITE_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaReport {
    pub holds: bool,
    /// Coordinate blocks and up-sets (as state masks over the blocks)
    /// witnessing positive covariance.
    pub witness: Option<NaWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaWitness {
    pub block_a: Vec<usize>,
    pub block_b: Vec<usize>,
    pub covariance: Rat,
}

/// All up-closed event families on `{0,1}^m`, each family encoded as a
/// bitset over the `2^m` states.
fn up_sets(m: usize) -> Vec<u64> {
    let states = 1usize << m;
    let mut out = Vec::new();
    'family: for family in 0u64..(1u64 << states) {
        for s in 0..states {
            if family >> s & 1 == 1 {
                for b in 0..m {
                    let sup = s | 1 << b;
                    if family >> sup & 1 == 0 {
                        continue 'family;
                    }
                }
            }
        }
        out.push(family);
    }
    out
}

/// Exhaustive exact negative association: for every pair of disjoint
/// nonempty coordinate blocks and every pair of increasing events on
/// them, the covariance is nonpositive. Increasing functions on disjoint
/// blocks are nonnegative combinations of such indicators plus constants,
/// so this decides the full property.
pub fn negative_association_exact(mu: &Distribution) -> Result<NaReport, AnalysisError> {
    if !mu.is_normalized() {
        return Err(AnalysisError::Unnormalized);
    }
    let n = mu.n();
    if n > NA_SITE_CAP {
        return Err(AnalysisError::SizeCap { n, cap: NA_SITE_CAP });
    }
    // disjoint nonempty blocks have size at most n - 1
    let up_sets_by_size: Vec<Vec<u64>> = (0..n.max(1)).map(up_sets).collect();

    // enumerate unordered pairs of disjoint nonempty blocks
    for a_mask in 1u64..(1 << n) {
        for b_mask in (a_mask + 1)..(1 << n) {
            if a_mask & b_mask != 0 {
                continue;
            }
            let block_a: Vec<usize> = (0..n).filter(|&k| a_mask >> k & 1 == 1).collect();
            let block_b: Vec<usize> = (0..n).filter(|&k| b_mask >> k & 1 == 1).collect();

            // joint distribution over the two block projections
            let la = block_a.len();
            let lb = block_b.len();
            let mut joint = vec![vec![Rat::zero(); 1 << lb]; 1 << la];
            for (s, w) in mu.weights().iter().enumerate() {
                let pa = project(s as u64, &block_a);
                let pb = project(s as u64, &block_b);
                joint[pa][pb] += w;
            }
            let marg_a: Vec<Rat> = joint
                .iter()
                .map(|row| row.iter().sum())
                .collect();
            let marg_b: Vec<Rat> = (0..1 << lb)
                .map(|t| joint.iter().map(|row| row[t].clone()).sum())
                .collect();

            for &fam_a in &up_sets_by_size[la] {
                for &fam_b in &up_sets_by_size[lb] {
                    let mut p_ab = Rat::zero();
                    let mut p_a = Rat::zero();
                    let mut p_b = Rat::zero();
                    for sa in 0..1usize << la {
                        if fam_a >> sa & 1 == 0 {
                            continue;
                        }
                        p_a += &marg_a[sa];
                        for sb in 0..1usize << lb {
                            if fam_b >> sb & 1 == 1 {
                                p_ab += &joint[sa][sb];
                            }
                        }
                    }
                    for sb in 0..1usize << lb {
                        if fam_b >> sb & 1 == 1 {
                            p_b += &marg_b[sb];
                        }
                    }
                    let cov = p_ab - p_a * p_b;
                    if cov.is_positive() {
                        return Ok(NaReport {
                            holds: false,
                            witness: Some(NaWitness {
                                block_a: block_a.iter().map(|k| k + 1).collect(),
                                block_b: block_b.iter().map(|k| k + 1).collect(),
                                covariance: cov,
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(NaReport {
        holds: true,
        witness: None,
    })
}

fn project(state: u64, block: &[usize]) -> usize {
    block
        .iter()
        .enumerate()
        .fold(0, |acc, (pos, &site)| acc | ((state as usize >> site & 1) << pos))
}

// ---------------------------------------------------------------------
// Concentration bound
// ---------------------------------------------------------------------

/// Upper bound on `5 exp(-a^2 / (16 (a + 2m)))`, computed in exact
/// rational arithmetic with rounding directed upward (the exponential is
/// lower-bounded by a Taylor partial sum), so comparisons `tail <= bound`
/// are sound.
pub fn concentration_bound_upper(m: &Rat, a: &Rat) -> Rat {
    let five = Rat::from_integer(5.into());
    if a.is_zero() {
        return five;
    }
    let denom = Rat::from_integer(16.into()) * (a + m * Rat::from_integer(2.into()));
    let t = a * a / denom; // exponent magnitude, >= 0
    // exp(t) >= sum of the first K Taylor terms, exactly
    let mut sum = Rat::one();
    let mut term = Rat::one();
    for k in 1..=40u32 {
        term = term * &t / Rat::from_integer(BigInt::from(k));
        sum += &term;
    }
    five / sum
}

/// Check that a state-function table is Lipschitz-1 for the Hamming
/// metric (enough to compare neighbors).
pub fn lipschitz_check(f: &[Rat], n: usize) -> Result<(), AnalysisError> {
    let one = Rat::one();
    for s in 0..f.len() as u64 {
        for b in 0..n {
            let t = s ^ (1 << b);
            if t > s && (&f[s as usize] - &f[t as usize]).abs() > one {
                return Err(AnalysisError::NotLipschitz { state: s, neighbor: t });
            }
        }
    }
    Ok(())
}

/// The particle-count function as a table.
pub fn particle_count(n: usize) -> Vec<Rat> {
    (0..1u64 << n)
        .map(|s| Rat::from_integer(BigInt::from(s.count_ones())))
        .collect()
}

/// Exact tail probability `mu(|f - E f| > a)`.
pub fn exact_tail(mu: &Distribution, f: &[Rat], a: &Rat) -> Result<Rat, AnalysisError> {
    if !mu.is_normalized() {
        return Err(AnalysisError::Unnormalized);
    }
    let mean = mu.expectation(f)?;
    let mut tail = Rat::zero();
    for (s, w) in mu.weights().iter().enumerate() {
        if (&f[s] - &mean).abs() > *a {
            tail += w;
        }
    }
    Ok(tail)
}

/// The concentration comparison for a Lipschitz-1 function: exact tail on
/// the left, upward-rounded bound (with `m` the mean particle count) on
/// the right.
pub fn concentration_comparison(
    mu: &Distribution,
    f: &[Rat],
    a: &Rat,
) -> Result<(Rat, Rat), AnalysisError> {
    lipschitz_check(f, mu.n())?;
    let m = mu.expectation(&particle_count(mu.n()))?;
    let tail = exact_tail(mu, f, a)?;
    Ok((tail, concentration_bound_upper(&m, a)))
}
