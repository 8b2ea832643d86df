//! Plain and colored permutations: enumeration in a deterministic order,
//! excedance/anti-excedance sets, and cycle statistics.
//!
//! A colored permutation is a pair `(kappa, sigma)` with `sigma` a
//! permutation of `{1..n}` and `kappa` a color in `{0..r-1}` per position;
//! `r = 1` degenerates to plain permutations (all colors zero).

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    NotABijection,
    ColorOutOfRange,
    ModeMismatch,
    Parse(String),
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotABijection => write!(f, "images do not form a bijection"),
            PermError::ColorOutOfRange => write!(f, "color exceeds r - 1"),
            PermError::ModeMismatch => write!(f, "statistics mode incompatible with r"),
            PermError::Parse(s) => write!(f, "cannot parse permutation: {s}"),
        }
    }
}

impl std::error::Error for PermError {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPermutation {
    /// `images[i - 1] = sigma(i)`, 1-based values.
    images: Vec<usize>,
    /// `colors[i - 1] = kappa(i)`.
    colors: Vec<u32>,
    r: u32,
}

/// Cycle statistics; the plain variant is for permutations of `{1..n+1}`
/// read against their top element, the colored variant classifies cycles
/// by the color of their maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleStats {
    Plain { cycles: usize, rl_minima: usize },
    Colored { nonzero: usize, zero: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatsMode {
    Plain,
    Colored,
}

impl ColoredPermutation {
    pub fn new(images: Vec<usize>, colors: Vec<u32>, r: u32) -> Result<Self, PermError> {
        let n = images.len();
        assert!(r >= 1, "r must be at least 1");
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::NotABijection);
            }
            seen[v - 1] = true;
        }
        if colors.len() != n || colors.iter().any(|&c| c >= r) {
            return Err(PermError::ColorOutOfRange);
        }
        Ok(ColoredPermutation { images, colors, r })
    }

    pub fn plain(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        Self::new(images, vec![0; n], 1)
    }

    pub fn identity(n: usize, r: u32) -> Self {
        ColoredPermutation {
            images: (1..=n).collect(),
            colors: vec![0; n],
            r,
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `sigma(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `sigma^{-1}(j)`, 1-based.
    pub fn apply_inverse(&self, j: usize) -> usize {
        self.images.iter().position(|&v| v == j).unwrap() + 1
    }

    pub fn color(&self, i: usize) -> u32 {
        self.colors[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Cycles in a canonical form: each cycle is the orbit written as a
    /// word ending at its maximal element, cycles sorted by maximum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start - 1] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur - 1] = true;
                orbit.push(cur);
                cur = self.apply(cur);
            }
            let max_pos = orbit
                .iter()
                .position(|&v| v == *orbit.iter().max().unwrap())
                .unwrap();
            let len = orbit.len();
            orbit.rotate_left((max_pos + 1) % len);
            cycles.push(orbit);
        }
        cycles.sort_by_key(|c| *c.last().unwrap());
        cycles
    }

    /// Excedance and anti-excedance sets as bit masks over positions
    /// (bit `i - 1` is position `i`). A fixed point is an excedance when
    /// its color is non-zero and an anti-excedance when it is zero; the
    /// sets may intersect for non-fixed points.
    pub fn excedance_sets(&self) -> (u64, u64) {
        let n = self.size();
        let mut x = 0u64;
        let mut y = 0u64;
        for i in 1..=n {
            let si = self.apply(i);
            if si > i || (si == i && self.color(i) != 0) {
                x |= 1 << (i - 1);
            }
            if si < i || (si == i && self.color(i) == 0) {
                // sigma(i) is an anti-excedance position.
                y |= 1 << (si - 1);
            }
        }
        (x, y)
    }

    /// Excedance word of length `len` (1 at position `i` iff `i` is an
    /// excedance). For plain permutations of `{1..n+1}` pass `len = n`:
    /// the top position is never an excedance.
    pub fn excedance_word(&self, len: usize) -> crate::word::OccupancyWord {
        let (x, _) = self.excedance_sets();
        crate::word::OccupancyWord::from_mask(x, len)
    }

    /// Descent count of the one-line notation (positions `i` with
    /// `sigma(i) > sigma(i+1)`). Used as an independent distribution
    /// oracle for excedance counts.
    pub fn descents(&self) -> usize {
        self.images.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn cycle_statistics(&self, mode: StatsMode) -> Result<CycleStats, PermError> {
        match mode {
            StatsMode::Plain => {
                if self.r != 1 {
                    return Err(PermError::ModeMismatch);
                }
                let cycles = self.cycles();
                let top = self.size();
                // Cycle containing the top element, written W·top.
                let top_cycle = cycles
                    .iter()
                    .find(|c| *c.last().unwrap() == top)
                    .expect("top element is in some cycle");
                let w = &top_cycle[..top_cycle.len() - 1];
                Ok(CycleStats::Plain {
                    cycles: cycles.len(),
                    rl_minima: right_to_left_minima(w),
                })
            }
            StatsMode::Colored => {
                let mut zero = 0;
                let mut nonzero = 0;
                for c in self.cycles() {
                    let max = *c.last().unwrap();
                    if self.color(max) == 0 {
                        zero += 1;
                    } else {
                        nonzero += 1;
                    }
                }
                Ok(CycleStats::Colored { nonzero, zero })
            }
        }
    }
}

/// Number of positions holding a value smaller than everything to its
/// right. The empty word has none.
pub fn right_to_left_minima(word: &[usize]) -> usize {
    let mut min = usize::MAX;
    let mut count = 0;
    for &v in word.iter().rev() {
        if v < min {
            count += 1;
            min = v;
        }
    }
    count
}

/// Positions holding a value larger than everything to its right.
pub fn right_to_left_maxima(word: &[usize]) -> usize {
    let mut max = 0;
    let mut count = 0;
    for &v in word.iter().rev() {
        if v > max {
            count += 1;
            max = v;
        }
    }
    count
}

/// Total number of r-colored permutations of `{1..n}`: `r^n * n!`.
pub fn count(n: usize, r: u32) -> u128 {
    let mut total: u128 = 1;
    for k in 1..=n as u128 {
        total *= k;
    }
    for _ in 0..n {
        total *= r as u128;
    }
    total
}

/// The `idx`-th element (0-based) in the enumeration order: one-line
/// notation ranked lexicographically first, color vectors (most
/// significant at position 1) breaking ties within a permutation.
pub fn unrank(n: usize, r: u32, idx: u128) -> ColoredPermutation {
    let colors_per_perm = (r as u128).pow(n as u32);
    let perm_rank = idx / colors_per_perm;
    let mut color_rank = idx % colors_per_perm;

    // Factorial-base digits give the lexicographic one-line form.
    let mut digits = vec![0usize; n];
    let mut rest = perm_rank;
    for k in 1..=n {
        digits[n - k] = (rest % k as u128) as usize;
        rest /= k as u128;
    }
    let mut pool: Vec<usize> = (1..=n).collect();
    let images: Vec<usize> = digits.iter().map(|&d| pool.remove(d)).collect();

    let mut colors = vec![0u32; n];
    for i in (0..n).rev() {
        colors[i] = (color_rank % r as u128) as u32;
        color_rank /= r as u128;
    }
    ColoredPermutation {
        images,
        colors,
        r,
    }
}

/// Deterministic, range-splittable enumeration of `Z_r wr S_n`.
pub struct Enumeration {
    n: usize,
    r: u32,
    next: u128,
    end: u128,
}

impl Enumeration {
    pub fn new(n: usize, r: u32) -> Self {
        Self::range(n, r, 0, count(n, r))
    }

    /// Elements with ranks in `[start, end)`; ranges can be consumed
    /// independently and concatenate to the full enumeration.
    pub fn range(n: usize, r: u32, start: u128, end: u128) -> Self {
        assert!(r >= 1);
        let total = count(n, r);
        assert!(start <= end && end <= total, "range out of bounds");
        Enumeration {
            n,
            r,
            next: start,
            end,
        }
    }
}

impl Iterator for Enumeration {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<ColoredPermutation> {
        if self.next >= self.end {
            return None;
        }
        let item = unrank(self.n, self.r, self.next);
        self.next += 1;
        Some(item)
    }
}

/// All plain permutations of `{1..n}` (`r = 1`).
pub fn plain_permutations(n: usize) -> Enumeration {
    Enumeration::new(n, 1)
}

// ---------------------------------------------------------------------
// Text form: cycle notation with caret colors, e.g.
// `(3^0)(4^2 5^0 7^4 6^1 2^2 1^8)`; plain permutations also accept
// one-line notation such as `2 1 3` or `213`.
// ---------------------------------------------------------------------

/// Canonical text form. Plain permutations print their cycles ending at
/// the cycle maximum, largest maximum first. Colored permutations print
/// zero cycles first (ending at their maximum, largest first), then
/// non-zero cycles (ending at their minimum, smallest first).
pub fn format_permutation(pi: &ColoredPermutation) -> String {
    let mut out = String::new();
    let mut cycles = pi.cycles();
    if pi.r() == 1 {
        cycles.reverse(); // largest maximum first
        for c in &cycles {
            out.push('(');
            out.push_str(
                &c.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        return out;
    }
    let (zero, nonzero): (Vec<_>, Vec<_>) = cycles
        .into_iter()
        .partition(|c| pi.color(*c.last().unwrap()) == 0);
    let mut ordered: Vec<Vec<usize>> = Vec::new();
    for c in zero.into_iter().rev() {
        ordered.push(c);
    }
    let mut nonzero: Vec<Vec<usize>> = nonzero
        .into_iter()
        .map(|c| {
            // rotate to end at the cycle minimum
            let min_pos = c.iter().position(|&v| v == *c.iter().min().unwrap()).unwrap();
            let mut c = c;
            let len = c.len();
            c.rotate_left((min_pos + 1) % len);
            c
        })
        .collect();
    nonzero.sort_by_key(|c| *c.last().unwrap());
    ordered.extend(nonzero);
    for c in &ordered {
        out.push('(');
        out.push_str(
            &c.iter()
                .map(|v| format!("{}^{}", v, pi.color(*v)))
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    out
}

/// Parse cycle notation (with optional `^color` marks) or, for plain
/// permutations, one-line notation. Elements absent from cycle notation
/// are fixed points of color zero; `n` is the largest element mentioned
/// unless a larger `min_n` is given.
pub fn parse_permutation(s: &str, r: u32, min_n: usize) -> Result<ColoredPermutation, PermError> {
    let s = s.trim();
    let err = || PermError::Parse(s.to_string());
    if !s.contains('(') {
        // one-line notation
        let values: Vec<usize> = if s.contains(' ') || s.contains(',') {
            s.split(|c| c == ' ' || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err))
                .collect::<Result<_, _>>()?
        };
        let n = values.len().max(min_n);
        if values.len() != n {
            return Err(err());
        }
        return ColoredPermutation::new(values, vec![0; n], r.max(1));
    }
    // cycle notation
    let mut entries: Vec<Vec<(usize, u32)>> = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let open = rest.find('(').ok_or_else(err)?;
        let close = rest.find(')').ok_or_else(err)?;
        if close < open {
            return Err(err());
        }
        let body = &rest[open + 1..close];
        let mut cycle = Vec::new();
        let compact = !body.contains(char::is_whitespace)
            && !body.contains('^')
            && body.len() > 1
            && body.chars().all(|c| c.is_ascii_digit());
        if compact {
            // single-digit elements written without separators, e.g. (38)
            for ch in body.chars() {
                cycle.push((ch.to_digit(10).unwrap() as usize, 0u32));
            }
        } else {
            for tok in body.split_whitespace() {
                let (v, c) = match tok.split_once('^') {
                    Some((v, c)) => (
                        v.parse().map_err(|_| err())?,
                        c.parse().map_err(|_| err())?,
                    ),
                    None => (tok.parse().map_err(|_| err())?, 0u32),
                };
                cycle.push((v, c));
            }
        }
        if cycle.is_empty() {
            return Err(err());
        }
        entries.push(cycle);
        rest = &rest[close + 1..];
        rest = rest.trim_start();
    }
    let n = entries
        .iter()
        .flatten()
        .map(|&(v, _)| v)
        .max()
        .unwrap_or(0)
        .max(min_n);
    let mut images: Vec<usize> = (1..=n).collect();
    let mut colors = vec![0u32; n];
    let mut seen = vec![false; n];
    for cycle in &entries {
        for (k, &(v, c)) in cycle.iter().enumerate() {
            if v == 0 || v > n || seen[v - 1] {
                return Err(err());
            }
            seen[v - 1] = true;
            let (next, _) = cycle[(k + 1) % cycle.len()];
            images[v - 1] = next;
            colors[v - 1] = c;
        }
    }
    let r_eff = if r >= 1 { r } else { 1 };
    let needed = colors.iter().max().copied().unwrap_or(0) + 1;
    ColoredPermutation::new(images, colors, r_eff.max(needed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> ColoredPermutation {
        ColoredPermutation::plain(images.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Enumeration::new(2, 1).count(), 2);
        assert_eq!(Enumeration::new(2, 2).count(), 8);
        assert_eq!(Enumeration::new(3, 3).count(), 162);
        assert_eq!(count(3, 3), 162);
        assert_eq!(Enumeration::new(0, 5).count(), 1);
    }

    #[test]
    fn enumeration_is_lexicographic_and_distinct() {
        let all: Vec<_> = Enumeration::new(3, 2).collect();
        assert_eq!(all.len(), 48);
        let mut keys: Vec<(Vec<usize>, Vec<u32>)> = all
            .iter()
            .map(|p| (p.one_line().to_vec(), p.colors().to_vec()))
            .collect();
        let sorted = {
            let mut s = keys.clone();
            s.sort();
            s
        };
        assert_eq!(keys, sorted);
        keys.dedup();
        assert_eq!(keys.len(), 48);
    }

    #[test]
    fn ranges_concatenate() {
        let total = count(3, 2);
        let mid = total / 2;
        let first: Vec<_> = Enumeration::range(3, 2, 0, mid).collect();
        let second: Vec<_> = Enumeration::range(3, 2, mid, total).collect();
        let full: Vec<_> = Enumeration::new(3, 2).collect();
        let glued: Vec<_> = first.into_iter().chain(second).collect();
        assert_eq!(glued, full);
    }

    #[test]
    fn excedance_sets_identity() {
        let id = ColoredPermutation::identity(4, 1);
        let (x, y) = id.excedance_sets();
        assert_eq!(x, 0);
        assert_eq!(y, 0b1111);
    }

    #[test]
    fn excedance_sets_figure_permutation() {
        // (3 8)(6 2 1 4 5 7) in S_8: excedances at 1, 3, 4, 5.
        let pi = parse_permutation("(3 8)(6 2 1 4 5 7)", 1, 0).unwrap();
        let (x, _) = pi.excedance_sets();
        assert_eq!(x, 0b00011101);
        assert_eq!(pi.excedance_word(7).to_string(), "1011100");
    }

    #[test]
    fn excedance_fixed_point_nonzero_color() {
        let pi = ColoredPermutation::new(vec![1], vec![1], 2).unwrap();
        let (x, y) = pi.excedance_sets();
        assert_eq!(x, 1);
        assert_eq!(y, 0);
    }

    #[test]
    fn excedance_antiexcedance_accounting() {
        // every non-fixed i is counted once on each side, fixed points once
        for pi in Enumeration::new(4, 2) {
            let (x, y) = pi.excedance_sets();
            let strict_x = (1..=4).filter(|&i| pi.apply(i) > i).count();
            let strict_y = (1..=4).filter(|&j| pi.apply_inverse(j) > j).count();
            let fixed = (1..=4).filter(|&i| pi.apply(i) == i).count();
            assert_eq!(
                (x.count_ones() + y.count_ones()) as usize,
                strict_x + strict_y + fixed
            );
        }
    }

    #[test]
    fn plain_cycle_statistics() {
        let pi = parse_permutation("(3 8)(6 2 1 4 5 7)", 1, 0).unwrap();
        match pi.cycle_statistics(StatsMode::Plain).unwrap() {
            CycleStats::Plain { cycles, rl_minima } => {
                assert_eq!(cycles, 2);
                assert_eq!(rl_minima, 1); // W = "3"
            }
            _ => unreachable!(),
        }
        // identity in S_2: top element fixed, W empty
        let id = ColoredPermutation::identity(2, 1);
        assert_eq!(
            id.cycle_statistics(StatsMode::Plain).unwrap(),
            CycleStats::Plain {
                cycles: 2,
                rl_minima: 0
            }
        );
    }

    #[test]
    fn colored_cycle_statistics_figure() {
        let pi = parse_permutation("(3^0)(4^2 5^0 7^4 6^1 2^2 1^8)", 9, 0).unwrap();
        assert_eq!(
            pi.cycle_statistics(StatsMode::Colored).unwrap(),
            CycleStats::Colored {
                nonzero: 1,
                zero: 1
            }
        );
        assert_eq!(pi.cycle_statistics(StatsMode::Plain), Err(PermError::ModeMismatch));
    }

    #[test]
    fn zero_plus_nonzero_is_cycle_count() {
        for pi in Enumeration::new(4, 3) {
            let total = pi.cycles().len();
            match pi.cycle_statistics(StatsMode::Colored).unwrap() {
                CycleStats::Colored { nonzero, zero } => assert_eq!(nonzero + zero, total),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn format_parse_round_trip() {
        for pi in Enumeration::new(4, 2) {
            let text = format_permutation(&pi);
            let back = parse_permutation(&text, 2, 4).unwrap();
            assert_eq!(back.one_line(), pi.one_line());
            assert_eq!(back.colors(), pi.colors());
        }
        let pi = perm(&[2, 1, 3]);
        let text = format_permutation(&pi);
        let back = parse_permutation(&text, 1, 3).unwrap();
        assert_eq!(back.one_line(), pi.one_line());
    }

    #[test]
    fn parse_one_line_forms() {
        assert_eq!(
            parse_permutation("213", 1, 0).unwrap().one_line(),
            &[2, 1, 3]
        );
        assert_eq!(
            parse_permutation("2 1 3", 1, 0).unwrap().one_line(),
            &[2, 1, 3]
        );
        assert!(parse_permutation("2 2 3", 1, 0).is_err());
    }

    #[test]
    fn figure_text_form_round_trips() {
        let text = "(3^0)(4^2 5^0 7^4 6^1 2^2 1^8)";
        let pi = parse_permutation(text, 9, 0).unwrap();
        assert_eq!(format_permutation(&pi), text);
    }

    #[test]
    fn parse_compact_cycles() {
        let pi = parse_permutation("(38)(621457)", 1, 0).unwrap();
        assert_eq!(pi.apply(3), 8);
        assert_eq!(pi.apply(8), 3);
        assert_eq!(pi.apply(6), 2);
        assert_eq!(pi.apply(7), 6);
        assert_eq!(format_permutation(&pi), "(3 8)(6 2 1 4 5 7)");
    }
}
