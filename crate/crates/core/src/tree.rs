//! Alternative trees, the bijections between marked cycles / (colored)
//! permutations and trees, the closed-form parent rule, and the tree
//! statistics that index the partition-polynomial brackets.
//!
//! An alternative tree on an ordered set is a rooted labeled tree whose
//! root is the minimum or maximum of the label set and where every vertex
//! dominates, or is dominated by, all of its descendants according to its
//! comparison with its parent. Decorated trees additionally color their
//! vertices with `{0..r-1}` subject to boundary rules at the two extreme
//! labels.

use crate::perm::{ColoredPermutation, PermError, StatsMode};
use crate::word::OccupancyWord;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    MalformedCycle(String),
    MarkNotExtremal,
    InvalidTree(TreeViolation),
    ColoredNeedsTwoColors,
    NotOnStandardSupport,
    Perm(PermError),
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::MalformedCycle(s) => write!(f, "malformed cycle: {s}"),
            TreeError::MarkNotExtremal => write!(f, "mark must be the minimum or maximum"),
            TreeError::InvalidTree(v) => write!(f, "invalid tree: {v}"),
            TreeError::ColoredNeedsTwoColors => write!(f, "decorated maps require r >= 2"),
            TreeError::NotOnStandardSupport => {
                write!(f, "tree support must be a contiguous range starting at 0")
            }
            TreeError::Perm(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for TreeError {}

impl From<PermError> for TreeError {
    fn from(e: PermError) -> Self {
        TreeError::Perm(e)
    }
}

/// First violated tree condition, with witness vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    /// Parent structure is not a tree rooted at `root`.
    BrokenStructure(String),
    /// Root is neither the minimum nor the maximum of the support.
    RootNotExtremal { root: u32 },
    /// A vertex larger than its parent has a larger descendant.
    LargerSideDominance { vertex: u32, descendant: u32 },
    /// A vertex smaller than its parent has a smaller descendant.
    SmallerSideDominance { vertex: u32, descendant: u32 },
    /// A child of the minimum (other than the maximum) has non-zero color.
    RootChildColored { child: u32 },
    /// The largest vertex of a subtree hanging off the maximum has color 0.
    SubtreeMaxColorZero { child: u32, largest: u32 },
    /// The minimum must have color 1 and the maximum color 0.
    EndpointColors { vertex: u32 },
    /// A color is missing or not below `r`.
    ColorOutOfRange { vertex: u32 },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::BrokenStructure(s) => write!(f, "broken structure: {s}"),
            TreeViolation::RootNotExtremal { root } => {
                write!(f, "root {root} is not the minimum or maximum")
            }
            TreeViolation::LargerSideDominance { vertex, descendant } => write!(
                f,
                "vertex {vertex} exceeds its parent but has larger descendant {descendant}"
            ),
            TreeViolation::SmallerSideDominance { vertex, descendant } => write!(
                f,
                "vertex {vertex} is below its parent but has smaller descendant {descendant}"
            ),
            TreeViolation::RootChildColored { child } => {
                write!(f, "child {child} of the root must have color 0")
            }
            TreeViolation::SubtreeMaxColorZero { child, largest } => write!(
                f,
                "largest vertex {largest} of the subtree at {child} must have non-zero color"
            ),
            TreeViolation::EndpointColors { vertex } => {
                write!(f, "endpoint {vertex} has the wrong color")
            }
            TreeViolation::ColorOutOfRange { vertex } => {
                write!(f, "vertex {vertex} has no color in range")
            }
        }
    }
}

// ---------------------------------------------------------------------
// Marked cycles
// ---------------------------------------------------------------------

/// A single cycle on a finite integer set together with a mark, which must
/// be the minimum or maximum of the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedCycle {
    /// Successor map; a single orbit covering the support.
    succ: BTreeMap<u32, u32>,
    mark: u32,
}

impl MarkedCycle {
    pub fn new(succ: BTreeMap<u32, u32>, mark: u32) -> Result<Self, TreeError> {
        if succ.is_empty() || !succ.contains_key(&mark) {
            return Err(TreeError::MalformedCycle("mark not in support".into()));
        }
        let support: BTreeSet<u32> = succ.keys().copied().collect();
        let values: BTreeSet<u32> = succ.values().copied().collect();
        if support != values {
            return Err(TreeError::MalformedCycle("not a bijection".into()));
        }
        // single orbit
        let mut seen = BTreeSet::new();
        let mut cur = mark;
        loop {
            seen.insert(cur);
            cur = succ[&cur];
            if cur == mark {
                break;
            }
        }
        if seen != support {
            return Err(TreeError::MalformedCycle("multiple orbits".into()));
        }
        let min = *support.iter().next().unwrap();
        let max = *support.iter().last().unwrap();
        if mark != min && mark != max {
            return Err(TreeError::MarkNotExtremal);
        }
        Ok(MarkedCycle { succ, mark })
    }

    /// Cycle given as the word `w_1 .. w_m` meaning `w_1 -> w_2 -> ... ->
    /// w_m -> w_1`, marked at the last letter.
    pub fn from_word_ending_at_mark(word: &[u32]) -> Result<Self, TreeError> {
        if word.is_empty() {
            return Err(TreeError::MalformedCycle("empty word".into()));
        }
        let mut succ = BTreeMap::new();
        for k in 0..word.len() {
            if succ.insert(word[k], word[(k + 1) % word.len()]).is_some() {
                return Err(TreeError::MalformedCycle("repeated letter".into()));
            }
        }
        Self::new(succ, *word.last().unwrap())
    }

    pub fn mark(&self) -> u32 {
        self.mark
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.succ.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn successor(&self, v: u32) -> u32 {
        self.succ[&v]
    }

    /// The orbit written as a word ending at the mark.
    pub fn word_ending_at_mark(&self) -> Vec<u32> {
        let mut word = Vec::with_capacity(self.succ.len());
        let mut cur = self.succ[&self.mark];
        while cur != self.mark {
            word.push(cur);
            cur = self.succ[&cur];
        }
        word.push(self.mark);
        word
    }

    /// Split the cycle word `W s` into blocks `W_k x_k .. W_1 x_1` where
    /// the `x_i` are the right-to-left maxima of `W` when the mark is the
    /// minimum, and the right-to-left minima when it is the maximum.
    /// Blocks are returned in word order (leftmost first); concatenating
    /// the blocks and appending the mark reproduces the cycle word.
    pub fn factorize(&self) -> Vec<(Vec<u32>, u32)> {
        let word = self.word_ending_at_mark();
        let w = &word[..word.len() - 1];
        if w.is_empty() {
            return Vec::new();
        }
        let support = self.support();
        let mark_is_min = self.mark == *support.iter().next().unwrap();
        // positions of the splitting letters
        let mut split = vec![false; w.len()];
        if mark_is_min {
            let mut best = 0u32;
            for (p, &v) in w.iter().enumerate().rev() {
                if v > best {
                    split[p] = true;
                    best = v;
                }
            }
        } else {
            let mut best = u32::MAX;
            for (p, &v) in w.iter().enumerate().rev() {
                if v < best {
                    split[p] = true;
                    best = v;
                }
            }
        }
        let mut blocks = Vec::new();
        let mut start = 0;
        for p in 0..w.len() {
            if split[p] {
                blocks.push((w[start..p].to_vec(), w[p]));
                start = p + 1;
            }
        }
        blocks
    }
}

// ---------------------------------------------------------------------
// Alternative trees
// ---------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AltTree {
    root: u32,
    /// Non-root vertex -> parent.
    parent: BTreeMap<u32, u32>,
    /// Vertex colors for decorated trees.
    colors: Option<BTreeMap<u32, u32>>,
    /// Number of permitted colors; 1 for plain trees.
    r: u32,
}

impl AltTree {
    pub fn leaf(label: u32) -> Self {
        AltTree {
            root: label,
            parent: BTreeMap::new(),
            colors: None,
            r: 1,
        }
    }

    pub fn from_parts(
        root: u32,
        parent: BTreeMap<u32, u32>,
        colors: Option<BTreeMap<u32, u32>>,
        r: u32,
    ) -> Self {
        AltTree {
            root,
            parent,
            colors,
            r,
        }
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn is_decorated(&self) -> bool {
        self.colors.is_some()
    }

    pub fn parent(&self, v: u32) -> Option<u32> {
        self.parent.get(&v).copied()
    }

    pub fn parent_map(&self) -> &BTreeMap<u32, u32> {
        &self.parent
    }

    pub fn color(&self, v: u32) -> Option<u32> {
        self.colors.as_ref().and_then(|c| c.get(&v).copied())
    }

    pub fn colors(&self) -> Option<&BTreeMap<u32, u32>> {
        self.colors.as_ref()
    }

    pub fn support(&self) -> BTreeSet<u32> {
        let mut s: BTreeSet<u32> = self.parent.keys().copied().collect();
        s.insert(self.root);
        s
    }

    pub fn size(&self) -> usize {
        self.parent.len() + 1
    }

    /// Children in increasing label order.
    pub fn children(&self, v: u32) -> Vec<u32> {
        self.parent
            .iter()
            .filter(|&(_, &p)| p == v)
            .map(|(&c, _)| c)
            .collect()
    }

    pub fn subtree(&self, v: u32) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if out.insert(u) {
                stack.extend(self.children(u));
            }
        }
        out
    }

    // -----------------------------------------------------------------
    // The map from marked cycles to trees and its relatives
    // -----------------------------------------------------------------

    /// Recursive tree of a marked cycle: the root is the mark, its
    /// children are the splitting letters of the factorization, and each
    /// block `W_i x_i` contributes the subtree of its own marked cycle.
    pub fn from_marked_cycle(mc: &MarkedCycle) -> Self {
        let mut parent = BTreeMap::new();
        build_cycle_tree(&mc.word_ending_at_mark(), &mut parent);
        AltTree {
            root: mc.mark(),
            parent,
            colors: None,
            r: 1,
        }
    }

    /// Tree of a plain permutation of `{1..n+1}` on the label set
    /// `{0..n+1}`: the root is 0, its children are the cycle maxima, and
    /// each cycle contributes its marked-cycle subtree.
    pub fn from_permutation(pi: &ColoredPermutation) -> Result<Self, TreeError> {
        if pi.r() != 1 {
            return Err(TreeError::Perm(PermError::ModeMismatch));
        }
        let mut parent = BTreeMap::new();
        for cycle in pi.cycles() {
            let word: Vec<u32> = cycle.iter().map(|&v| v as u32).collect();
            let max = *word.last().unwrap();
            parent.insert(max, 0);
            build_cycle_tree(&word, &mut parent);
        }
        Ok(AltTree {
            root: 0,
            parent,
            colors: None,
            r: 1,
        })
    }

    /// Decorated tree of an r-colored permutation of `{1..n}` on the
    /// label set `{0..n+1}`: vertex 0 is the root with color 1 and child
    /// `n+1` of color 0; zero cycles hang off 0 by their maxima, non-zero
    /// cycles hang off `n+1` by their minima.
    pub fn from_colored_permutation(pi: &ColoredPermutation) -> Result<Self, TreeError> {
        if pi.r() < 2 {
            return Err(TreeError::ColoredNeedsTwoColors);
        }
        let n = pi.size();
        let top = (n + 1) as u32;
        let mut parent = BTreeMap::new();
        let mut colors = BTreeMap::new();
        colors.insert(0, 1);
        colors.insert(top, 0);
        parent.insert(top, 0);
        for i in 1..=n {
            colors.insert(i as u32, pi.color(i));
        }
        for cycle in pi.cycles() {
            let max = *cycle.last().unwrap();
            if pi.color(max) == 0 {
                // zero cycle: child of 0, marked at its maximum
                let word: Vec<u32> = cycle.iter().map(|&v| v as u32).collect();
                parent.insert(max as u32, 0);
                build_cycle_tree(&word, &mut parent);
            } else {
                // non-zero cycle: child of n+1, marked at its minimum
                let min = *cycle.iter().min().unwrap();
                let min_pos = cycle.iter().position(|&v| v == min).unwrap();
                let mut word: Vec<u32> = cycle.iter().map(|&v| v as u32).collect();
                let len = word.len();
                word.rotate_left((min_pos + 1) % len);
                parent.insert(min as u32, top);
                build_cycle_tree(&word, &mut parent);
            }
        }
        Ok(AltTree {
            root: 0,
            parent,
            colors: Some(colors),
            r: pi.r(),
        })
    }

    /// Inverse of the permutation-to-tree maps. Plain trees on `{0..n+1}`
    /// return the permutation of `{1..n+1}`; decorated trees return the
    /// colored permutation of `{1..n}`.
    pub fn to_permutation(&self) -> Result<ColoredPermutation, TreeError> {
        self.validate().map_err(TreeError::InvalidTree)?;
        let support = self.support();
        let m = *support.iter().last().unwrap() as usize;
        if self.root != 0 || support.len() != m + 1 {
            return Err(TreeError::NotOnStandardSupport);
        }
        match &self.colors {
            None => {
                // plain: every child of 0 is the maximum of its cycle
                let size = m; // permutation of {1..m}
                let mut images = vec![0usize; size];
                for c in self.children(0) {
                    let word = self.cycle_word(c);
                    for k in 0..word.len() {
                        images[word[k] as usize - 1] = word[(k + 1) % word.len()] as usize;
                    }
                }
                Ok(ColoredPermutation::plain(images)?)
            }
            Some(colors) => {
                let top = m as u32;
                let n = m - 1;
                let mut images = vec![0usize; n];
                let mut kappa = vec![0u32; n];
                for i in 1..=n {
                    kappa[i - 1] = *colors.get(&(i as u32)).unwrap_or(&0);
                }
                for c in self.children(0) {
                    if c == top {
                        continue;
                    }
                    let word = self.cycle_word(c);
                    for k in 0..word.len() {
                        images[word[k] as usize - 1] = word[(k + 1) % word.len()] as usize;
                    }
                }
                for d in self.children(top) {
                    let word = self.cycle_word(d);
                    for k in 0..word.len() {
                        images[word[k] as usize - 1] = word[(k + 1) % word.len()] as usize;
                    }
                }
                Ok(ColoredPermutation::new(images, kappa, self.r)?)
            }
        }
    }

    /// The cycle word (ending at `v`) encoded by the subtree rooted at
    /// `v`; inverse of the block recursion.
    fn cycle_word(&self, v: u32) -> Vec<u32> {
        let mut word = Vec::new();
        self.push_cycle_word(v, &mut word);
        word
    }

    fn push_cycle_word(&self, v: u32, out: &mut Vec<u32>) {
        let sub = self.subtree(v);
        let v_is_min = *sub.iter().next().unwrap() == v;
        let mut kids = self.children(v);
        if v_is_min {
            kids.reverse(); // largest splitting letter comes first
        }
        for k in kids {
            self.push_cycle_word(k, out);
        }
        out.push(v);
    }

    // -----------------------------------------------------------------
    // Validation
    // -----------------------------------------------------------------

    /// Check the alternative-tree conditions, and the coloring rules for
    /// decorated trees; reports the first violation found.
    pub fn validate(&self) -> Result<(), TreeViolation> {
        let support = self.support();
        // structure: every vertex reaches the root without repetition
        for &v in support.iter() {
            let mut seen = BTreeSet::new();
            let mut cur = v;
            while cur != self.root {
                if !seen.insert(cur) {
                    return Err(TreeViolation::BrokenStructure(format!(
                        "cycle through vertex {v}"
                    )));
                }
                match self.parent.get(&cur) {
                    Some(&p) => {
                        if !support.contains(&p) {
                            return Err(TreeViolation::BrokenStructure(format!(
                                "parent {p} of {cur} outside support"
                            )));
                        }
                        cur = p;
                    }
                    None => {
                        return Err(TreeViolation::BrokenStructure(format!(
                            "vertex {cur} has no parent"
                        )))
                    }
                }
            }
        }
        let min = *support.iter().next().unwrap();
        let max = *support.iter().last().unwrap();
        if self.root != min && self.root != max {
            return Err(TreeViolation::RootNotExtremal { root: self.root });
        }
        for (&v, &p) in &self.parent {
            let sub = self.subtree(v);
            if v > p {
                if let Some(&d) = sub.iter().last().filter(|&&d| d > v) {
                    return Err(TreeViolation::LargerSideDominance {
                        vertex: v,
                        descendant: d,
                    });
                }
            } else {
                if let Some(&d) = sub.iter().next().filter(|&&d| d < v) {
                    return Err(TreeViolation::SmallerSideDominance {
                        vertex: v,
                        descendant: d,
                    });
                }
            }
        }
        if let Some(colors) = &self.colors {
            for &v in support.iter() {
                match colors.get(&v) {
                    Some(&c) if c < self.r => {}
                    _ => return Err(TreeViolation::ColorOutOfRange { vertex: v }),
                }
            }
            // the root is the minimum for decorated trees built here, but
            // the rules are stated for min and max of the support
            if colors[&min] != 1 {
                return Err(TreeViolation::EndpointColors { vertex: min });
            }
            if colors[&max] != 0 {
                return Err(TreeViolation::EndpointColors { vertex: max });
            }
            for c in self.children(min) {
                if c != max && colors[&c] != 0 {
                    return Err(TreeViolation::RootChildColored { child: c });
                }
            }
            for d in self.children(max) {
                let largest = *self.subtree(d).iter().last().unwrap();
                if colors[&largest] == 0 {
                    return Err(TreeViolation::SubtreeMaxColorZero { child: d, largest });
                }
            }
        }
        Ok(())
    }

    // -----------------------------------------------------------------
    // Statistics
    // -----------------------------------------------------------------

    /// Statistics of a tree on `{0..n+1}`: the excedance word over
    /// `{1..n}`, the child counts at the two extremes (decorated trees
    /// discount the fixed child of 0), and the number of crossing arc
    /// pairs `i < j` with `p(j) < i < j < p(i)`.
    pub fn statistics(&self) -> Result<TreeStats, TreeError> {
        let support = self.support();
        let m = *support.iter().last().unwrap() as usize;
        if self.root != 0 || support.len() != m + 1 {
            return Err(TreeError::NotOnStandardSupport);
        }
        let n = m - 1;
        let p = |i: usize| self.parent(i as u32).unwrap() as usize;
        let mut bits = Vec::with_capacity(n);
        for i in 1..=n {
            bits.push(u8::from(i < p(i)));
        }
        let mut crossings = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                if p(j) < i && j < p(i) {
                    crossings += 1;
                }
            }
        }
        let c0 = self.children(0).len() - usize::from(self.is_decorated());
        let c1 = self.children(m as u32).len();
        Ok(TreeStats {
            excedances: OccupancyWord::new(bits),
            c0,
            c1,
            crossings,
        })
    }

    /// Arcs of the line diagram: one arc per tree edge, drawn above the
    /// line when the child is the smaller endpoint and below otherwise.
    pub fn arcs(&self) -> Vec<(u32, u32, ArcSide)> {
        let mut arcs: Vec<(u32, u32, ArcSide)> = self
            .parent
            .iter()
            .map(|(&c, &p)| {
                if c < p {
                    (c, p, ArcSide::Above)
                } else {
                    (p, c, ArcSide::Below)
                }
            })
            .collect();
        arcs.sort();
        arcs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArcSide {
    Above,
    Below,
}

impl fmt::Display for ArcSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcSide::Above => write!(f, "above"),
            ArcSide::Below => write!(f, "below"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub excedances: OccupancyWord,
    pub c0: usize,
    pub c1: usize,
    pub crossings: usize,
}

/// Record the parent edges of the tree of one cycle word (ending at its
/// mark). The mark's own parent is the caller's responsibility.
fn build_cycle_tree(word_with_mark: &[u32], parent: &mut BTreeMap<u32, u32>) {
    let mc = MarkedCycle::from_word_ending_at_mark(word_with_mark)
        .expect("orbit words are valid cycles");
    let mark = mc.mark();
    for (block, x) in mc.factorize() {
        parent.insert(x, mark);
        let mut sub = block;
        sub.push(x);
        build_cycle_tree(&sub, parent);
    }
}

// ---------------------------------------------------------------------
// Parent values straight from the permutation (no tree built)
// ---------------------------------------------------------------------

/// Parent of `i` inside its own cycle: walk the orbit while it stays on
/// `i`'s side and take the extreme value seen. `i` must not be an extreme
/// point handled by a root convention (cycle maxima in plain mode, cycle
/// maxima of zero cycles / minima of non-zero cycles in colored mode).
fn parent_within_cycle(pi: &ColoredPermutation, i: usize) -> usize {
    let si = pi.apply(i);
    debug_assert_ne!(si, i, "fixed points are handled by root conventions");
    if si > i {
        let mut best = si;
        let mut cur = pi.apply(si);
        while cur > i {
            best = best.max(cur);
            cur = pi.apply(cur);
        }
        best
    } else {
        let mut best = si;
        let mut cur = pi.apply(si);
        while cur < i {
            best = best.min(cur);
            cur = pi.apply(cur);
        }
        best
    }
}

/// Parent of `i` in the tree of a plain permutation of `{1..n+1}`,
/// computed without building the tree: 0 for cycle maxima, otherwise the
/// orbit rule. Errors when `i` is out of range.
pub fn parent_by_formula(pi: &ColoredPermutation, i: usize) -> Result<usize, PermError> {
    if pi.r() != 1 {
        return Err(PermError::ModeMismatch);
    }
    if i == 0 || i > pi.size() {
        return Err(PermError::NotABijection);
    }
    let max_of_cycle = cycle_max(pi, i);
    if i == max_of_cycle {
        return Ok(0);
    }
    Ok(parent_within_cycle(pi, i))
}

/// Parent of `i` in the decorated tree of a colored permutation of
/// `{1..n}`: 0 for zero-cycle maxima, `n+1` for non-zero-cycle minima,
/// otherwise the orbit rule.
pub fn parent_by_formula_colored(pi: &ColoredPermutation, i: usize) -> Result<usize, PermError> {
    if i == 0 || i > pi.size() {
        return Err(PermError::NotABijection);
    }
    let max = cycle_max(pi, i);
    if pi.color(max) == 0 {
        if i == max {
            return Ok(0);
        }
    } else {
        let min = cycle_min(pi, i);
        if i == min {
            return Ok(pi.size() + 1);
        }
    }
    Ok(parent_within_cycle(pi, i))
}

fn cycle_max(pi: &ColoredPermutation, i: usize) -> usize {
    let mut best = i;
    let mut cur = pi.apply(i);
    while cur != i {
        best = best.max(cur);
        cur = pi.apply(cur);
    }
    best
}

fn cycle_min(pi: &ColoredPermutation, i: usize) -> usize {
    let mut best = i;
    let mut cur = pi.apply(i);
    while cur != i {
        best = best.min(cur);
        cur = pi.apply(cur);
    }
    best
}

/// Number of crossing arc pairs of a permutation, computed from the
/// closed-form parent rule alone (for plain permutations of `{1..n+1}`
/// the pairs range over `{1..n}`; for colored permutations over `{1..n}`).
pub fn crossings_by_formula(pi: &ColoredPermutation, mode: StatsMode) -> Result<usize, PermError> {
    let n = match mode {
        StatsMode::Plain => {
            if pi.r() != 1 {
                return Err(PermError::ModeMismatch);
            }
            pi.size() - 1
        }
        StatsMode::Colored => pi.size(),
    };
    let mut parents = vec![0usize; n + 1];
    for i in 1..=n {
        parents[i] = match mode {
            StatsMode::Plain => parent_by_formula(pi, i)?,
            StatsMode::Colored => parent_by_formula_colored(pi, i)?,
        };
    }
    let mut count = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            if parents[j] < i && j < parents[i] {
                count += 1;
            }
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------

/// All alternative trees on `{0..n+1}` rooted at 0: the images of the
/// permutation enumerators. `r = 1` yields the `(n+1)!` plain trees,
/// `r >= 2` the `r^n n!` decorated trees.
pub fn enumerate_trees(n: usize, r: u32) -> Box<dyn Iterator<Item = AltTree>> {
    if r == 1 {
        Box::new(
            crate::perm::Enumeration::new(n + 1, 1)
                .map(|pi| AltTree::from_permutation(&pi).expect("plain permutation")),
        )
    } else {
        Box::new(
            crate::perm::Enumeration::new(n, r)
                .map(|pi| AltTree::from_colored_permutation(&pi).expect("r >= 2")),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{parse_permutation, Enumeration};

    fn fig1_permutation() -> ColoredPermutation {
        parse_permutation("(38)(621457)", 1, 0).unwrap()
    }

    fn fig4_permutation() -> ColoredPermutation {
        parse_permutation("(3^0)(4^2 5^0 7^4 6^1 2^2 1^8)", 9, 0).unwrap()
    }

    #[test]
    fn factorize_figure_cycle() {
        // ((386214570), 0): W2 = "3", x2 = 8, W1 = "62145", x1 = 7
        let word = [3, 8, 6, 2, 1, 4, 5, 7, 0];
        let mc = MarkedCycle::from_word_ending_at_mark(&word).unwrap();
        assert_eq!(mc.mark(), 0);
        let blocks = mc.factorize();
        assert_eq!(blocks, vec![(vec![3], 8), (vec![6, 2, 1, 4, 5], 7)]);
        // concatenation reproduces the cycle word
        let mut rebuilt: Vec<u32> = Vec::new();
        for (w, x) in &blocks {
            rebuilt.extend(w);
            rebuilt.push(*x);
        }
        rebuilt.push(mc.mark());
        assert_eq!(rebuilt, word);
    }

    #[test]
    fn factorize_single_letter() {
        let mc = MarkedCycle::from_word_ending_at_mark(&[5]).unwrap();
        assert!(mc.factorize().is_empty());
        assert_eq!(mc.mark(), 5);
    }

    #[test]
    fn factorize_max_marked_cycle() {
        // "621457" ending at 7: splitting letters 1, 4, 5 with "62" before 1
        let mc = MarkedCycle::from_word_ending_at_mark(&[6, 2, 1, 4, 5, 7]).unwrap();
        let blocks = mc.factorize();
        assert_eq!(
            blocks,
            vec![(vec![6, 2], 1), (vec![], 4), (vec![], 5)]
        );
    }

    #[test]
    fn mark_must_be_extremal() {
        let err = MarkedCycle::from_word_ending_at_mark(&[1, 3, 2]);
        assert_eq!(err, Err(TreeError::MarkNotExtremal));
    }

    #[test]
    fn tree_of_figure_cycle() {
        let word = [3, 8, 6, 2, 1, 4, 5, 7, 0];
        let mc = MarkedCycle::from_word_ending_at_mark(&word).unwrap();
        let t = AltTree::from_marked_cycle(&mc);
        let expected: BTreeMap<u32, u32> = [
            (8, 0),
            (7, 0),
            (3, 8),
            (1, 7),
            (4, 7),
            (5, 7),
            (2, 1),
            (6, 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(t.parent_map(), &expected);
        assert_eq!(t.root(), 0);
        assert!(t.validate().is_ok());
    }

    #[test]
    fn tree_of_two_cycle() {
        let mc = MarkedCycle::from_word_ending_at_mark(&[2, 1]).unwrap();
        let t = AltTree::from_marked_cycle(&mc);
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.root(), 1);
    }

    #[test]
    fn tree_of_figure_permutation() {
        let t = AltTree::from_permutation(&fig1_permutation()).unwrap();
        let expected: BTreeMap<u32, u32> = [
            (8, 0),
            (7, 0),
            (3, 8),
            (1, 7),
            (4, 7),
            (5, 7),
            (2, 1),
            (6, 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(t.parent_map(), &expected);
    }

    #[test]
    fn tree_of_identity() {
        let t = AltTree::from_permutation(&ColoredPermutation::identity(2, 1)).unwrap();
        assert_eq!(t.children(0), vec![1, 2]);
    }

    #[test]
    fn decorated_tree_of_figure() {
        let t = AltTree::from_colored_permutation(&fig4_permutation()).unwrap();
        let expected: BTreeMap<u32, u32> = [
            (3, 0),
            (8, 0),
            (1, 8),
            (2, 1),
            (6, 1),
            (7, 1),
            (4, 7),
            (5, 7),
        ]
        .into_iter()
        .collect();
        assert_eq!(t.parent_map(), &expected);
        assert_eq!(t.color(0), Some(1));
        assert_eq!(t.color(8), Some(0));
        assert_eq!(t.color(7), Some(4));
        assert_eq!(t.color(1), Some(8));
        assert!(t.validate().is_ok());
    }

    #[test]
    fn decorated_tree_single_site() {
        // n = 1, color 0: star 0 - {1, 2}
        let pi = ColoredPermutation::new(vec![1], vec![0], 2).unwrap();
        let t = AltTree::from_colored_permutation(&pi).unwrap();
        assert_eq!(t.children(0), vec![1, 2]);
        // n = 1, color 1: path 0 - 2 - 1
        let pi = ColoredPermutation::new(vec![1], vec![1], 2).unwrap();
        let t = AltTree::from_colored_permutation(&pi).unwrap();
        assert_eq!(t.parent(1), Some(2));
        assert_eq!(t.parent(2), Some(0));
        assert_eq!(t.color(1), Some(1));
    }

    #[test]
    fn round_trip_figures() {
        let pi = fig1_permutation();
        let t = AltTree::from_permutation(&pi).unwrap();
        let back = t.to_permutation().unwrap();
        assert_eq!(back.one_line(), pi.one_line());

        let pi = fig4_permutation();
        let t = AltTree::from_colored_permutation(&pi).unwrap();
        let back = t.to_permutation().unwrap();
        assert_eq!(back.one_line(), pi.one_line());
        assert_eq!(back.colors(), pi.colors());
    }

    #[test]
    fn leaf_edge_tree_round_trip() {
        // 0 - 1 is the tree of the identity on {1}
        let t = AltTree::from_parts(0, [(1, 0)].into_iter().collect(), None, 1);
        let pi = t.to_permutation().unwrap();
        assert_eq!(pi.one_line(), &[1]);
    }

    #[test]
    fn parent_formula_matches_figure() {
        let pi = fig1_permutation();
        assert_eq!(parent_by_formula(&pi, 4).unwrap(), 7);
        assert_eq!(parent_by_formula(&pi, 8).unwrap(), 0);
        let two_cycle = parse_permutation("(1 2)", 1, 0).unwrap();
        assert_eq!(parent_by_formula(&two_cycle, 1).unwrap(), 2);
    }

    #[test]
    fn parent_formula_matches_trees_exhaustively() {
        for n in 0..=4 {
            for pi in Enumeration::new(n + 1, 1) {
                let t = AltTree::from_permutation(&pi).unwrap();
                for i in 1..=n + 1 {
                    assert_eq!(
                        parent_by_formula(&pi, i).unwrap(),
                        t.parent(i as u32).unwrap() as usize,
                        "perm {:?} vertex {i}",
                        pi.one_line()
                    );
                }
            }
        }
    }

    #[test]
    fn colored_parent_formula_matches_trees() {
        for pi in Enumeration::new(3, 3) {
            let t = AltTree::from_colored_permutation(&pi).unwrap();
            for i in 1..=3 {
                assert_eq!(
                    parent_by_formula_colored(&pi, i).unwrap(),
                    t.parent(i as u32).unwrap() as usize
                );
            }
        }
    }

    #[test]
    fn statistics_of_figure_tree() {
        let t = AltTree::from_permutation(&fig1_permutation()).unwrap();
        let s = t.statistics().unwrap();
        assert_eq!(s.excedances.to_string(), "1011100");
        assert_eq!(s.c0, 2);
        assert_eq!(s.c1, 1);
        assert_eq!(s.crossings, 4);
    }

    #[test]
    fn statistics_of_star_tree() {
        let t = AltTree::from_permutation(&ColoredPermutation::identity(4, 1)).unwrap();
        let s = t.statistics().unwrap();
        assert_eq!(s.excedances.to_string(), "000");
        assert_eq!(s.crossings, 0);
    }

    #[test]
    fn statistics_of_figure_decorated_tree() {
        let t = AltTree::from_colored_permutation(&fig4_permutation()).unwrap();
        let s = t.statistics().unwrap();
        assert_eq!(s.c0, 1);
        assert_eq!(s.c1, 1);
    }

    #[test]
    fn validate_catches_dominance_violation() {
        // root 4, chain 4 - 1 - 2 - 3: vertex 1 sits below its parent and
        // above nothing, but 2 exceeds its parent 1 while having the larger
        // descendant 3.
        let t = AltTree::from_parts(
            4,
            [(1, 4), (2, 1), (3, 2)].into_iter().collect(),
            None,
            1,
        );
        match t.validate() {
            Err(TreeViolation::LargerSideDominance {
                vertex: 2,
                descendant: 3,
            }) => {}
            other => panic!("expected dominance violation at 2, got {other:?}"),
        }
    }

    #[test]
    fn validate_catches_colored_root_child() {
        // child 1 of 0 (other than the top) colored 1
        let t = AltTree::from_parts(
            0,
            [(1, 0), (2, 0)].into_iter().collect(),
            Some([(0, 1), (1, 1), (2, 0)].into_iter().collect()),
            2,
        );
        assert_eq!(
            t.validate(),
            Err(TreeViolation::RootChildColored { child: 1 })
        );
    }

    #[test]
    fn enumerate_tree_counts() {
        assert_eq!(enumerate_trees(2, 1).count(), 6);
        assert_eq!(enumerate_trees(2, 2).count(), 8);
        let mut seen = std::collections::HashSet::new();
        for t in enumerate_trees(4, 1) {
            assert!(t.validate().is_ok());
            assert!(seen.insert(format!("{:?}", t.parent_map())));
        }
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn arcs_of_figure_tree() {
        let t = AltTree::from_permutation(&fig1_permutation()).unwrap();
        let arcs = t.arcs();
        assert_eq!(arcs.len(), 8);
        assert!(arcs.contains(&(1, 7, ArcSide::Above)));
        assert!(arcs.contains(&(1, 2, ArcSide::Below)));
        assert!(arcs.contains(&(0, 8, ArcSide::Below)));
    }
}
