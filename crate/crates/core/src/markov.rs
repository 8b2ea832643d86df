//! Ground-truth oracle for the exclusion process: build the `2^n`-state
//! generator of the jump/birth/death chain, solve the stationary
//! distribution exactly over the rationals, and simulate trajectories.

use crate::params::{ParamPoly, ParamSet};
use crate::rational::{bit_size, Rat};
use crate::sitepoly::SitePoly;
use crate::word::OccupancyWord;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Default cap on the site count for generator-sized operations
/// (`2^12 = 4096` states).
pub const DEFAULT_SITE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainError {
    NegativeRate,
    OverCap { n: usize, cap: usize },
    SizeMismatch,
    Unnormalized,
    NonUniqueStationary { classes: Vec<Vec<String>> },
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::NegativeRate => write!(f, "rates must be nonnegative"),
            ChainError::OverCap { n, cap } => {
                write!(f, "site count {n} exceeds the configured cap {cap}")
            }
            ChainError::SizeMismatch => write!(f, "distributions have different site counts"),
            ChainError::Unnormalized => write!(f, "distribution is not normalized"),
            ChainError::NonUniqueStationary { classes } => {
                write!(f, "stationary distribution is not unique; recurrent classes: ")?;
                for (k, c) in classes.iter().enumerate() {
                    if k > 0 {
                        write!(f, " | ")?;
                    }
                    write!(f, "{{{}}}", c.join(", "))?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ChainError {}

/// Finite exclusion chain on `{0,1}^n`: jump rates `Q[i][j]` from site
/// `i+1` to site `j+1`, plus per-site birth and death rates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    n: usize,
    jump: Vec<Vec<Rat>>,
    birth: Vec<Rat>,
    death: Vec<Rat>,
}

impl ChainSpec {
    pub fn new(
        jump: Vec<Vec<Rat>>,
        birth: Vec<Rat>,
        death: Vec<Rat>,
    ) -> Result<Self, ChainError> {
        let n = birth.len();
        if death.len() != n || jump.len() != n || jump.iter().any(|r| r.len() != n) {
            return Err(ChainError::SizeMismatch);
        }
        let nonneg = |r: &Rat| !r.is_negative();
        if !birth.iter().all(nonneg)
            || !death.iter().all(nonneg)
            || !jump.iter().flatten().all(nonneg)
        {
            return Err(ChainError::NegativeRate);
        }
        Ok(ChainSpec {
            n,
            jump,
            birth,
            death,
        })
    }

    /// Open line with nearest-neighbor hopping: rate 1 to the right, `q`
    /// to the left, particles entering at site 1 (rate `alpha`) and site
    /// `n` (rate `delta`), leaving at site 1 (rate `gamma`) and site `n`
    /// (rate `beta`). For `n = 1` the single site is both ends, so the
    /// boundary rates add.
    pub fn asep_line(
        n: usize,
        q: &Rat,
        alpha: &Rat,
        beta: &Rat,
        gamma: &Rat,
        delta: &Rat,
    ) -> Result<Self, ChainError> {
        assert!(n >= 1);
        let zero = Rat::zero();
        let mut jump = vec![vec![zero.clone(); n]; n];
        for i in 0..n.saturating_sub(1) {
            jump[i][i + 1] = Rat::from_integer(1.into());
            jump[i + 1][i] = q.clone();
        }
        let mut birth = vec![zero.clone(); n];
        let mut death = vec![zero; n];
        birth[0] += alpha;
        death[0] += gamma;
        birth[n - 1] += delta;
        death[n - 1] += beta;
        Self::new(jump, birth, death)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn jump(&self) -> &[Vec<Rat>] {
        &self.jump
    }

    pub fn birth(&self) -> &[Rat] {
        &self.birth
    }

    pub fn death(&self) -> &[Rat] {
        &self.death
    }

    pub fn states(&self) -> usize {
        1 << self.n
    }

    /// Outgoing transitions from one state: jump moves (occupied to
    /// vacant), births (vacant sites), deaths (occupied sites). Rates of
    /// coinciding targets accumulate.
    pub fn transitions_from(&self, state: u64) -> Vec<(u64, Rat)> {
        let n = self.n;
        let mut out: Vec<(u64, Rat)> = Vec::new();
        let mut push = |target: u64, rate: Rat| {
            if rate.is_zero() {
                return;
            }
            if let Some(entry) = out.iter_mut().find(|(t, _)| *t == target) {
                entry.1 += rate;
            } else {
                out.push((target, rate));
            }
        };
        for i in 0..n {
            let occupied = state >> i & 1 == 1;
            if occupied {
                push(state & !(1 << i), self.death[i].clone());
                for j in 0..n {
                    if j != i && state >> j & 1 == 0 {
                        push(state & !(1 << i) | 1 << j, self.jump[i][j].clone());
                    }
                }
            } else {
                push(state | 1 << i, self.birth[i].clone());
            }
        }
        out.sort_by_key(|&(t, _)| t);
        out
    }
}

/// Sparse generator matrix: per-row transition lists plus the diagonal,
/// so each row sums to zero.
pub struct Generator {
    pub n: usize,
    /// `rows[s]` holds the off-diagonal entries `(target, rate)`.
    pub rows: Vec<Vec<(u64, Rat)>>,
}

impl Generator {
    pub fn diagonal(&self, s: usize) -> Rat {
        -self.rows[s].iter().map(|(_, r)| r.clone()).sum::<Rat>()
    }

    pub fn entry(&self, s: usize, t: usize) -> Rat {
        if s == t {
            return self.diagonal(s);
        }
        self.rows[s]
            .iter()
            .find(|&&(u, _)| u == t as u64)
            .map(|(_, r)| r.clone())
            .unwrap_or_else(Rat::zero)
    }
}

pub fn build_generator(spec: &ChainSpec) -> Result<Generator, ChainError> {
    build_generator_capped(spec, DEFAULT_SITE_CAP)
}

pub fn build_generator_capped(spec: &ChainSpec, cap: usize) -> Result<Generator, ChainError> {
    if spec.n > cap {
        return Err(ChainError::OverCap { n: spec.n, cap });
    }
    let rows = (0..spec.states() as u64)
        .map(|s| spec.transitions_from(s))
        .collect();
    Ok(Generator { n: spec.n, rows })
}

/// Probability distribution on `{0,1}^n`, indexed by occupancy mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    n: usize,
    weights: Vec<Rat>,
}

impl Distribution {
    pub fn new(n: usize, weights: Vec<Rat>) -> Result<Self, ChainError> {
        if weights.len() != 1 << n || weights.iter().any(|w| w.is_negative()) {
            return Err(ChainError::SizeMismatch);
        }
        Ok(Distribution { n, weights })
    }

    pub fn point_mass(n: usize, state: u64) -> Self {
        let mut weights = vec![Rat::zero(); 1 << n];
        weights[state as usize] = Rat::from_integer(1.into());
        Distribution { n, weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, state: u64) -> &Rat {
        &self.weights[state as usize]
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn total(&self) -> Rat {
        self.weights.iter().sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.total() == Rat::from_integer(1.into())
    }

    pub fn normalized(&self) -> Result<Self, ChainError> {
        let total = self.total();
        if total.is_zero() {
            return Err(ChainError::Unnormalized);
        }
        Ok(Distribution {
            n: self.n,
            weights: self.weights.iter().map(|w| w / &total).collect(),
        })
    }

    /// `P(eta(i) = 1)`, 1-based site.
    pub fn marginal(&self, i: usize) -> Rat {
        let bit = 1u64 << (i - 1);
        self.weights
            .iter()
            .enumerate()
            .filter(|(s, _)| *s as u64 & bit != 0)
            .map(|(_, w)| w.clone())
            .sum()
    }

    /// `P(eta(i) = eta(j) = 1)`.
    pub fn joint(&self, i: usize, j: usize) -> Rat {
        let mask = (1u64 << (i - 1)) | (1u64 << (j - 1));
        self.weights
            .iter()
            .enumerate()
            .filter(|(s, _)| *s as u64 & mask == mask)
            .map(|(_, w)| w.clone())
            .sum()
    }

    /// Expectation of a state function given as a table.
    pub fn expectation(&self, f: &[Rat]) -> Result<Rat, ChainError> {
        if f.len() != self.weights.len() {
            return Err(ChainError::SizeMismatch);
        }
        Ok(self
            .weights
            .iter()
            .zip(f)
            .map(|(w, v)| w * v)
            .sum())
    }

    /// Multiaffine partition polynomial with the probabilities as
    /// coefficients (numeric, empty parameter set).
    pub fn partition_polynomial(&self) -> SitePoly {
        let empty = ParamSet::empty();
        let mut p = SitePoly::zero(self.n, empty.clone());
        for (s, w) in self.weights.iter().enumerate() {
            p.add_term(s as u64, 0, ParamPoly::constant(empty.clone(), w.clone()));
        }
        p
    }

    pub fn state_word(&self, state: u64) -> OccupancyWord {
        OccupancyWord::from_mask(state, self.n)
    }
}

/// Half the L1 distance between two distributions, exact.
pub fn total_variation(a: &Distribution, b: &Distribution) -> Result<Rat, ChainError> {
    if a.n != b.n {
        return Err(ChainError::SizeMismatch);
    }
    let sum: Rat = a
        .weights
        .iter()
        .zip(&b.weights)
        .map(|(x, y)| (x - y).abs())
        .sum();
    Ok(sum / Rat::from_integer(2.into()))
}

// ---------------------------------------------------------------------
// Recurrent-class analysis
// ---------------------------------------------------------------------

/// Strongly connected components of the positive-rate digraph that have
/// no outgoing edges: the recurrent classes of the chain.
pub fn recurrent_classes(spec: &ChainSpec) -> Vec<Vec<u64>> {
    let n_states = spec.states();
    let adj: Vec<Vec<usize>> = (0..n_states as u64)
        .map(|s| {
            spec.transitions_from(s)
                .into_iter()
                .map(|(t, _)| t as usize)
                .collect()
        })
        .collect();
    let sccs = tarjan_sccs(&adj);
    let mut comp_of = vec![0usize; n_states];
    for (c, comp) in sccs.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let mut terminal = vec![true; sccs.len()];
    for v in 0..n_states {
        for &w in &adj[v] {
            if comp_of[w] != comp_of[v] {
                terminal[comp_of[v]] = false;
            }
        }
    }
    let mut classes: Vec<Vec<u64>> = sccs
        .into_iter()
        .enumerate()
        .filter(|(c, _)| terminal[*c])
        .map(|(_, comp)| {
            let mut comp: Vec<u64> = comp.into_iter().map(|v| v as u64).collect();
            comp.sort();
            comp
        })
        .collect();
    classes.sort();
    classes
}

/// Iterative Tarjan strongly-connected components.
fn tarjan_sccs(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0;
    let mut sccs = Vec::new();

    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        // explicit DFS frame: (vertex, next child position)
        let mut frames: Vec<(usize, usize)> = vec![(start, 0)];
        index[start] = next_index;
        low[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&mut (v, ref mut child)) = frames.last_mut() {
            if *child < adj[v].len() {
                let w = adj[v][*child];
                *child += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (parent, _)) = frames.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    sccs.push(comp);
                }
            }
        }
    }
    sccs
}

// ---------------------------------------------------------------------
// Exact stationary solve
// ---------------------------------------------------------------------

/// Exact stationary distribution: the normalized left null vector of the
/// generator. Requires a unique recurrent class; the solution is verified
/// against the generator after the solve.
pub fn stationary_exact(spec: &ChainSpec) -> Result<Distribution, ChainError> {
    stationary_exact_capped(spec, DEFAULT_SITE_CAP)
}

pub fn stationary_exact_capped(spec: &ChainSpec, cap: usize) -> Result<Distribution, ChainError> {
    let generator = build_generator_capped(spec, cap)?;
    let classes = recurrent_classes(spec);
    if classes.len() != 1 {
        return Err(ChainError::NonUniqueStationary {
            classes: classes
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&s| OccupancyWord::from_mask(s, spec.n).to_string())
                        .collect()
                })
                .collect(),
        });
    }

    let m = spec.states();
    // Solve x G = 0, sum x = 1 as the (m+1) x m system (G^T; 1) x = e_m.
    let mut a: Vec<Vec<Rat>> = vec![vec![Rat::zero(); m + 1]; m + 1];
    for (s, row) in generator.rows.iter().enumerate() {
        let mut diag = Rat::zero();
        for (t, rate) in row {
            a[*t as usize][s] = rate.clone();
            diag -= rate;
        }
        a[s][s] = diag;
    }
    for col in 0..m {
        a[m][col] = Rat::from_integer(1.into());
    }
    a[m][m] = Rat::from_integer(1.into()); // right-hand side of the sum row

    let x = solve_rational(&mut a, m)?;

    // post-hoc verification: x G = 0 exactly and x >= 0
    for t in 0..m {
        let mut acc = x[t].clone() * generator.diagonal(t);
        for (s, row) in generator.rows.iter().enumerate() {
            for (u, rate) in row {
                if *u as usize == t {
                    acc += x[s].clone() * rate.clone();
                }
            }
        }
        assert!(acc.is_zero(), "solver output fails the balance equations");
    }
    assert!(
        x.iter().all(|w| !w.is_negative()),
        "solver output has negative weights"
    );
    Distribution::new(spec.n, x)
}

/// Gaussian elimination over the rationals for an overdetermined
/// `(m+1) x m` system carried in an `(m+1) x (m+1)` augmented matrix
/// (last column is the right-hand side). Pivots are chosen to minimize a
/// bit-size surrogate, which keeps intermediate entries small.
fn solve_rational(a: &mut [Vec<Rat>], m: usize) -> Result<Vec<Rat>, ChainError> {
    let rows = a.len();
    let mut pivot_row_of_col: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; rows];
    for col in 0..m {
        let pivot = (0..rows)
            .filter(|&r| !used[r] && !a[r][col].is_zero())
            .min_by_key(|&r| bit_size(&a[r][col]));
        let Some(p) = pivot else {
            // free column: no positive-recurrence structure
            return Err(ChainError::NonUniqueStationary { classes: vec![] });
        };
        used[p] = true;
        pivot_row_of_col.push(p);
        let pv = a[p][col].clone();
        for r in 0..rows {
            if r == p || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pv;
            for c in col..=m {
                let delta = &a[p][c] * &factor;
                a[r][c] -= delta;
            }
        }
    }
    // consistency of the unused rows
    for r in 0..rows {
        if !used[r] && !a[r][m].is_zero() {
            return Err(ChainError::NonUniqueStationary { classes: vec![] });
        }
    }
    let mut x = vec![Rat::zero(); m];
    for (col, &p) in pivot_row_of_col.iter().enumerate() {
        x[col] = &a[p][m] / &a[p][col];
    }
    Ok(x)
}

// ---------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SimulationResult {
    pub distribution: Distribution,
    /// Set when the trajectory hit a state with no outgoing rate.
    pub absorbed_at: Option<u64>,
    pub events: u64,
}

/// Continuous-time simulation from the empty configuration: exponential
/// waiting times, states recorded after `burn_in` at fixed `gap`s.
/// Deterministic for a fixed seed.
pub fn gillespie(
    spec: &ChainSpec,
    burn_in: &Rat,
    samples: usize,
    gap: &Rat,
    seed: u64,
) -> Result<SimulationResult, ChainError> {
    assert!(samples >= 1);
    let burn_in = burn_in.to_f64().expect("finite burn-in");
    let gap = gap.to_f64().expect("finite gap");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // per-state transition tables in f64, built lazily
    let n_states = spec.states();
    let mut tables: Vec<Option<(f64, Vec<(u64, f64)>)>> = vec![None; n_states];
    let table = |state: u64, tables: &mut Vec<Option<(f64, Vec<(u64, f64)>)>>| {
        if tables[state as usize].is_none() {
            let moves: Vec<(u64, f64)> = spec
                .transitions_from(state)
                .into_iter()
                .map(|(t, r)| (t, r.to_f64().expect("finite rate")))
                .collect();
            let total = moves.iter().map(|(_, r)| r).sum();
            tables[state as usize] = Some((total, moves));
        }
        tables[state as usize].clone().unwrap()
    };

    let mut counts = vec![0u64; n_states];
    let mut state = 0u64;
    let mut clock = 0.0f64;
    let mut recorded = 0usize;
    let mut next_record = burn_in;
    let mut events = 0u64;
    let mut absorbed_at = None;

    while recorded < samples {
        let (total, moves) = table(state, &mut tables);
        if total <= 0.0 {
            absorbed_at = Some(state);
            counts[state as usize] += (samples - recorded) as u64;
            break;
        }
        let u: f64 = loop {
            let u = rng.gen::<f64>();
            if u > 0.0 {
                break u;
            }
        };
        let wait = -u.ln() / total;
        let next_clock = clock + wait;
        while recorded < samples && next_record < next_clock {
            counts[state as usize] += 1;
            recorded += 1;
            next_record += gap;
        }
        if recorded >= samples {
            break;
        }
        // choose the move proportionally to its rate
        let mut pick = rng.gen::<f64>() * total;
        let mut chosen = moves[moves.len() - 1].0;
        for (t, r) in &moves {
            if pick < *r {
                chosen = *t;
                break;
            }
            pick -= r;
        }
        state = chosen;
        clock = next_clock;
        events += 1;
    }

    let total = Rat::from_integer((samples as i64).into());
    let weights = counts
        .into_iter()
        .map(|c| Rat::from_integer((c as i64).into()) / &total)
        .collect();
    Ok(SimulationResult {
        distribution: Distribution::new(spec.n, weights)?,
        absorbed_at,
        events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn asep_line_layout() {
        let spec =
            ChainSpec::asep_line(3, &Rat::zero(), &int(1), &int(1), &Rat::zero(), &Rat::zero())
                .unwrap();
        assert_eq!(spec.jump()[0][1], int(1));
        assert_eq!(spec.jump()[1][2], int(1));
        assert_eq!(spec.jump()[1][0], int(0));
        assert_eq!(spec.birth(), &[int(1), int(0), int(0)]);
        assert_eq!(spec.death(), &[int(0), int(0), int(1)]);

        let spec = ChainSpec::asep_line(2, &rat(1, 2), &int(1), &int(1), &int(0), &int(0)).unwrap();
        assert_eq!(spec.jump()[0][1], int(1));
        assert_eq!(spec.jump()[1][0], rat(1, 2));
    }

    #[test]
    fn asep_line_single_site_merges_boundaries() {
        let spec = ChainSpec::asep_line(1, &int(0), &int(1), &int(2), &int(3), &int(4)).unwrap();
        assert_eq!(spec.birth(), &[int(5)]); // alpha + delta
        assert_eq!(spec.death(), &[int(5)]); // gamma + beta
    }

    #[test]
    fn generator_rows_sum_to_zero() {
        let spec = ChainSpec::asep_line(3, &rat(1, 3), &int(1), &int(2), &rat(1, 5), &int(0))
            .unwrap();
        let g = build_generator(&spec).unwrap();
        for s in 0..spec.states() {
            let offdiag: Rat = g.rows[s].iter().map(|(_, r)| r.clone()).sum();
            assert_eq!(g.diagonal(s), -offdiag);
        }
    }

    #[test]
    fn generator_single_site() {
        let spec = ChainSpec::asep_line(1, &int(0), &int(2), &int(3), &int(0), &int(0)).unwrap();
        let g = build_generator(&spec).unwrap();
        assert_eq!(g.entry(0, 1), int(2));
        assert_eq!(g.entry(0, 0), int(-2));
        assert_eq!(g.entry(1, 0), int(3));
        assert_eq!(g.entry(1, 1), int(-3));
    }

    #[test]
    fn generator_pure_jump_requires_particle() {
        // n = 2, only transition 10 -> 01 (mask 0b01 -> 0b10)
        let spec = ChainSpec::new(
            vec![vec![int(0), int(1)], vec![int(0), int(0)]],
            vec![int(0), int(0)],
            vec![int(0), int(0)],
        )
        .unwrap();
        let g = build_generator(&spec).unwrap();
        assert_eq!(g.rows[0b01], vec![(0b10, int(1))]);
        assert!(g.rows[0b00].is_empty());
        assert!(g.rows[0b10].is_empty());
        assert!(g.rows[0b11].is_empty());
    }

    #[test]
    fn generator_cap() {
        let spec = ChainSpec::asep_line(13, &int(1), &int(1), &int(1), &int(0), &int(0)).unwrap();
        assert!(matches!(
            build_generator(&spec),
            Err(ChainError::OverCap { n: 13, cap: 12 })
        ));
    }

    #[test]
    fn stationary_two_state() {
        let spec = ChainSpec::asep_line(1, &int(0), &int(1), &int(2), &int(0), &int(0)).unwrap();
        let d = stationary_exact(&spec).unwrap();
        assert_eq!(d.weight(0), &rat(2, 3));
        assert_eq!(d.weight(1), &rat(1, 3));
    }

    #[test]
    fn stationary_two_sites() {
        // alpha = beta = q = 1: weights proportional to (1, 1, 3, 1)
        // for masks 00, 10, 01, 11 in word order 00, 01, 10, 11.
        let spec = ChainSpec::asep_line(2, &int(1), &int(1), &int(1), &int(0), &int(0)).unwrap();
        let d = stationary_exact(&spec).unwrap();
        // word "10" = site 1 occupied = mask 0b01
        assert_eq!(d.weight(0b00), &rat(1, 6));
        assert_eq!(d.weight(0b10), &rat(1, 6));
        assert_eq!(d.weight(0b01), &rat(3, 6));
        assert_eq!(d.weight(0b11), &rat(1, 6));
    }

    #[test]
    fn stationary_symmetric_jump_is_uniform_on_level() {
        // symmetric hopping preserves the particle count, so each count
        // level is its own chain; fix one particle by starting rates only
        let spec = ChainSpec::new(
            vec![
                vec![int(0), int(1), int(1)],
                vec![int(1), int(0), int(1)],
                vec![int(1), int(1), int(0)],
            ],
            vec![int(0), int(0), int(0)],
            vec![int(0), int(0), int(0)],
        )
        .unwrap();
        // several recurrent classes (one per particle count): must error
        match stationary_exact(&spec) {
            Err(ChainError::NonUniqueStationary { classes }) => {
                assert!(classes.len() > 1);
            }
            other => panic!("expected non-uniqueness, got {other:?}"),
        }
    }

    #[test]
    fn stationary_detects_uniqueness_with_boundary() {
        let spec = ChainSpec::asep_line(3, &int(1), &int(2), &rat(1, 2), &int(0), &int(0))
            .unwrap();
        let d = stationary_exact(&spec).unwrap();
        assert!(d.is_normalized());
    }

    #[test]
    fn partition_polynomial_examples() {
        // point mass at 11..1 -> x1..xn
        let d = Distribution::point_mass(3, 0b111);
        let p = d.partition_polynomial();
        assert_eq!(p.num_terms(), 1);
        assert!(p.coefficient(0b111, 0).is_one());
        // two-state stationary example: 2/3 + 1/3 x1
        let spec = ChainSpec::asep_line(1, &int(0), &int(1), &int(2), &int(0), &int(0)).unwrap();
        let p = stationary_exact(&spec).unwrap().partition_polynomial();
        assert_eq!(p.coefficient(0, 0).as_constant(), Some(rat(2, 3)));
        assert_eq!(p.coefficient(1, 0).as_constant(), Some(rat(1, 3)));
    }

    #[test]
    fn total_variation_examples() {
        let d1 = Distribution::point_mass(1, 0);
        let d2 = Distribution::point_mass(1, 1);
        assert_eq!(total_variation(&d1, &d1).unwrap(), int(0));
        assert_eq!(total_variation(&d1, &d2).unwrap(), int(1));
        let half = Distribution::new(1, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let third = Distribution::new(1, vec![rat(1, 3), rat(2, 3)]).unwrap();
        assert_eq!(total_variation(&half, &third).unwrap(), rat(1, 6));
    }

    #[test]
    fn gillespie_zero_rates_absorbs() {
        let spec = ChainSpec::new(
            vec![vec![int(0), int(0)], vec![int(0), int(0)]],
            vec![int(0), int(0)],
            vec![int(0), int(0)],
        )
        .unwrap();
        let result = gillespie(&spec, &int(1), 100, &rat(1, 10), 7).unwrap();
        assert_eq!(result.absorbed_at, Some(0));
        assert_eq!(result.distribution.weight(0), &int(1));
    }

    #[test]
    fn gillespie_two_state_converges() {
        let spec = ChainSpec::asep_line(1, &int(0), &int(1), &int(1), &int(0), &int(0)).unwrap();
        let result = gillespie(&spec, &int(10), 20_000, &int(1), 12345).unwrap();
        let exact = stationary_exact(&spec).unwrap();
        let tv = total_variation(&result.distribution, &exact).unwrap();
        assert!(tv < rat(1, 50), "tv = {tv}");
        assert!(result.absorbed_at.is_none());
    }

    #[test]
    fn gillespie_is_deterministic() {
        let spec = ChainSpec::asep_line(2, &int(1), &int(1), &int(1), &int(0), &int(0)).unwrap();
        let a = gillespie(&spec, &int(1), 500, &rat(1, 2), 42).unwrap();
        let b = gillespie(&spec, &int(1), 500, &rat(1, 2), 42).unwrap();
        assert_eq!(a.distribution, b.distribution);
        assert_eq!(a.events, b.events);
    }
}
