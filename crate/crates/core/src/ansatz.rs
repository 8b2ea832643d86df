//! The matrix-ansatz word bracket: a recursively defined functional on 0/1
//! words whose values are the unnormalized stationary weights of the open
//! exclusion process with boundary injection/extraction only.
//!
//! Rules, over parameters `(alpha, beta, q, xi)`:
//!
//! ```text
//! <empty>  = 1
//! <0 v>    = beta xi <v>
//! <u 1>    = alpha xi <u>
//! <u 10 v> = q <u 01 v> + alpha beta xi <u 1 v> + alpha beta xi <u 0 v>
//! ```
//!
//! Several rules can apply to one word; the value is independent of the
//! order (verified exhaustively in the tests rather than assumed). Every
//! rule strictly decreases `(length, inversions)` lexicographically, so
//! any strategy terminates.

use crate::params::{ParamPoly, ParamSet};
use crate::rational::Rat;
use crate::sitepoly::SitePoly;
use crate::word::OccupancyWord;
use std::collections::HashMap;
use std::sync::Arc;

/// One applicable rewrite: the word is replaced by a weighted sum of
/// shorter-or-simpler words.
pub struct Move {
    pub description: String,
    pub children: Vec<(ParamPoly, OccupancyWord)>,
}

/// Memoizing bracket evaluator. One cache serves all parameter
/// specializations because values stay symbolic; confine an instance to a
/// worker or share behind a lock.
pub struct BracketTable {
    params: Arc<ParamSet>,
    memo: HashMap<OccupancyWord, ParamPoly>,
}

impl Default for BracketTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BracketTable {
    pub fn new() -> Self {
        BracketTable {
            params: ParamSet::ansatz(),
            memo: HashMap::new(),
        }
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    fn alpha(&self) -> ParamPoly {
        ParamPoly::var_named(self.params.clone(), "alpha")
    }

    fn beta(&self) -> ParamPoly {
        ParamPoly::var_named(self.params.clone(), "beta")
    }

    fn q(&self) -> ParamPoly {
        ParamPoly::var_named(self.params.clone(), "q")
    }

    fn xi(&self) -> ParamPoly {
        ParamPoly::var_named(self.params.clone(), "xi")
    }

    /// Bracket value of a word, reduced by the fixed strategy: strip a
    /// leading 0, else strip a trailing 1, else rewrite the leftmost `10`.
    pub fn bracket(&mut self, w: &OccupancyWord) -> ParamPoly {
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let value = if w.is_empty() {
            ParamPoly::one(self.params.clone())
        } else if w.first() == Some(0) {
            let rest = self.bracket(&w.without_first());
            rest.try_mul(&self.beta().try_mul(&self.xi()).unwrap())
                .unwrap()
        } else if w.last() == Some(1) {
            let rest = self.bracket(&w.without_last());
            rest.try_mul(&self.alpha().try_mul(&self.xi()).unwrap())
                .unwrap()
        } else {
            // starts with 1 and ends with 0, so a "10" factor exists
            let i = (0..w.len() - 1)
                .find(|&i| w.bit(i) == 1 && w.bit(i + 1) == 0)
                .expect("word starts with 1 and ends with 0");
            let abx = self
                .alpha()
                .try_mul(&self.beta())
                .unwrap()
                .try_mul(&self.xi())
                .unwrap();
            let swapped = self.bracket(&w.swapped(i)).try_mul(&self.q()).unwrap();
            let drop1 = self.bracket(&w.without_index(i)).try_mul(&abx).unwrap();
            let drop0 = self.bracket(&w.without_index(i + 1)).try_mul(&abx).unwrap();
            swapped
                .try_add(&drop1)
                .unwrap()
                .try_add(&drop0)
                .unwrap()
        };
        self.memo.insert(w.clone(), value.clone());
        value
    }

    /// Bracket at numeric parameters (`xi` included).
    pub fn bracket_at(
        &mut self,
        w: &OccupancyWord,
        alpha: &Rat,
        beta: &Rat,
        q: &Rat,
        xi: &Rat,
    ) -> Rat {
        self.bracket(w)
            .eval(&[alpha.clone(), beta.clone(), q.clone(), xi.clone()])
            .expect("four parameters")
    }

    /// All rewrites applicable to a word, every occurrence included.
    pub fn moves(&self, w: &OccupancyWord) -> Vec<Move> {
        let mut moves = Vec::new();
        if w.is_empty() {
            return moves;
        }
        let bx = self.beta().try_mul(&self.xi()).unwrap();
        let ax = self.alpha().try_mul(&self.xi()).unwrap();
        let abx = ax.try_mul(&self.beta()).unwrap();
        if w.first() == Some(0) {
            moves.push(Move {
                description: "strip leading 0".into(),
                children: vec![(bx, w.without_first())],
            });
        }
        if w.last() == Some(1) {
            moves.push(Move {
                description: "strip trailing 1".into(),
                children: vec![(ax, w.without_last())],
            });
        }
        for i in 0..w.len().saturating_sub(1) {
            if w.bit(i) == 1 && w.bit(i + 1) == 0 {
                moves.push(Move {
                    description: format!("rewrite 10 at {i}"),
                    children: vec![
                        (self.q(), w.swapped(i)),
                        (abx.clone(), w.without_index(i)),
                        (abx.clone(), w.without_index(i + 1)),
                    ],
                });
            }
        }
        moves
    }

    /// Every value reachable by firing any applicable rule at any
    /// occurrence, at every level of the recursion. Confluence holds when
    /// the result is a single value for every word.
    pub fn values_under_all_strategies(
        &self,
        w: &OccupancyWord,
        cache: &mut HashMap<OccupancyWord, Vec<ParamPoly>>,
    ) -> Vec<ParamPoly> {
        if let Some(v) = cache.get(w) {
            return v.clone();
        }
        let mut values: Vec<ParamPoly> = Vec::new();
        if w.is_empty() {
            values.push(ParamPoly::one(self.params.clone()));
        } else {
            for mv in self.moves(w) {
                let child_values: Vec<Vec<ParamPoly>> = mv
                    .children
                    .iter()
                    .map(|(_, cw)| self.values_under_all_strategies(cw, cache))
                    .collect();
                // cartesian product over the children's possible values
                let mut combos: Vec<ParamPoly> = vec![ParamPoly::zero(self.params.clone())];
                for (k, (coeff, _)) in mv.children.iter().enumerate() {
                    let mut next = Vec::new();
                    for acc in &combos {
                        for v in &child_values[k] {
                            next.push(acc.try_add(&v.try_mul(coeff).unwrap()).unwrap());
                        }
                    }
                    combos = next;
                }
                for v in combos {
                    if !values.contains(&v) {
                        values.push(v);
                    }
                }
            }
        }
        cache.insert(w.clone(), values.clone());
        values
    }
}

/// The termination certificate of a rewrite step: `(length, inversions)`.
pub fn termination_measure(w: &OccupancyWord) -> (usize, usize) {
    (w.len(), w.inversions())
}

/// Partition polynomial of the ansatz: the multiaffine polynomial whose
/// coefficient at the site subset `S` is the bracket of the indicator
/// word of `S`.
pub fn ansatz_partition(n: usize, table: &mut BracketTable) -> SitePoly {
    let mut poly = SitePoly::zero(n, table.params().clone());
    for mask in 0u64..(1 << n) {
        let w = OccupancyWord::from_mask(mask, n);
        poly.add_term(mask, 0, table.bracket(&w));
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn word(s: &str) -> OccupancyWord {
        s.parse().unwrap()
    }

    fn eval(p: &ParamPoly, alpha: i64, beta: i64, q: i64, xi: i64) -> Rat {
        p.eval(&[int(alpha), int(beta), int(q), int(xi)]).unwrap()
    }

    #[test]
    fn empty_word_is_one() {
        let mut t = BracketTable::new();
        assert!(t.bracket(&OccupancyWord::empty()).is_one());
    }

    #[test]
    fn single_letters() {
        let mut t = BracketTable::new();
        let b0 = t.bracket(&word("0"));
        let b1 = t.bracket(&word("1"));
        // beta xi and alpha xi
        assert_eq!(eval(&b0, 2, 3, 5, 7), int(21));
        assert_eq!(eval(&b1, 2, 3, 5, 7), int(14));
        assert_eq!(b0.num_terms(), 1);
        assert_eq!(b1.num_terms(), 1);
    }

    #[test]
    fn ten_word_value() {
        // <10> = q alpha beta xi^2 + alpha^2 beta xi^2 + alpha beta^2 xi^2
        let mut t = BracketTable::new();
        let b = t.bracket(&word("10"));
        let ps = t.params().clone();
        let v = |name: &str| ParamPoly::var_named(ps.clone(), name);
        let abxx = v("alpha")
            .try_mul(&v("beta"))
            .unwrap()
            .try_mul(&v("xi"))
            .unwrap()
            .try_mul(&v("xi"))
            .unwrap();
        let expected = abxx
            .try_mul(&v("q"))
            .unwrap()
            .try_add(&abxx.try_mul(&v("alpha")).unwrap())
            .unwrap()
            .try_add(&abxx.try_mul(&v("beta")).unwrap())
            .unwrap();
        assert_eq!(b, expected);
        // alpha = beta = xi = 1: q + 2
        assert_eq!(eval(&b, 1, 1, 3, 1), int(5));
    }

    #[test]
    fn xi_homogeneous_of_word_length() {
        let mut t = BracketTable::new();
        let xi_idx = t.params().index("xi").unwrap();
        for n in 0..=6 {
            for w in OccupancyWord::all_of_length(n) {
                let b = t.bracket(&w);
                for (exps, _) in b.terms() {
                    assert_eq!(exps[xi_idx] as usize, n, "word {w}");
                }
            }
        }
    }

    #[test]
    fn moves_decrease_termination_measure() {
        let t = BracketTable::new();
        for n in 1..=8 {
            for w in OccupancyWord::all_of_length(n) {
                let m = termination_measure(&w);
                let moves = t.moves(&w);
                assert!(!moves.is_empty(), "nonempty words always reduce");
                for mv in moves {
                    for (_, child) in &mv.children {
                        assert!(
                            termination_measure(child) < m,
                            "move {} on {w} fails to decrease",
                            mv.description
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn confluent_up_to_length_six() {
        // lengths 7 and 8 are covered by the acceptance suite
        let t = BracketTable::new();
        let mut strategy = BracketTable::new();
        let mut cache = HashMap::new();
        for n in 0..=6 {
            for w in OccupancyWord::all_of_length(n) {
                let values = t.values_under_all_strategies(&w, &mut cache);
                assert_eq!(values.len(), 1, "word {w} is not confluent");
                assert_eq!(values[0], strategy.bracket(&w));
            }
        }
    }

    #[test]
    fn partition_small_cases() {
        let mut t = BracketTable::new();
        // n = 0: the empty product, 1
        assert!(ansatz_partition(0, &mut t).coefficient(0, 0).is_one());
        // n = 1: beta xi + alpha xi x1
        let p = ansatz_partition(1, &mut t);
        assert_eq!(eval(&p.coefficient(0, 0), 2, 3, 1, 1), int(3));
        assert_eq!(eval(&p.coefficient(1, 0), 2, 3, 1, 1), int(2));
        // n = 2 at alpha = beta = xi = 1: 1 + x2 + (q+2) x1 + x1 x2
        let p = ansatz_partition(2, &mut t);
        let at = |mask: u64| eval(&p.coefficient(mask, 0), 1, 1, 4, 1);
        assert_eq!(at(0b00), int(1));
        assert_eq!(at(0b10), int(1));
        assert_eq!(at(0b01), int(6));
        assert_eq!(at(0b11), int(1));
    }
}
