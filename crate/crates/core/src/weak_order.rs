//! The monoid action of simple reflections on clans, the cross action, the
//! closed and open clans, and the weak order graph with DOT output.
//!
//! A simple reflection `s_i` acts on a clan by exactly one of five rules,
//! looking at the symbols in positions `(i, i+1)`:
//!
//! 1. sign, then a number whose mate lies further right: swap them;
//! 2. a number whose mate lies further left, then a sign: swap them;
//! 3. unequal numbers, the left one's mate left of the right one's mate: swap;
//! 4. opposite signs: replace both by a fresh matching pair;
//! 5. anything else: fixed.
//!
//! Every non-fixed move raises the orbit dimension by exactly one, and the
//! action of a word is independent of the reduced word chosen, so it extends
//! to a monoid action of the whole symmetric group.

use std::fmt::Write as _;

use crate::clan::{enumerate_clans, Clan, Symbol};
use crate::permutation::Permutation;

/// Applies the simple reflection `s_i` to a clan.  Panics unless
/// `1 <= i <= n - 1`.
pub fn act_simple(i: usize, clan: &Clan) -> Clan {
    let n = clan.n();
    assert!(i >= 1 && i < n, "simple root index {i} out of range for n = {n}");
    let a = clan.symbol(i);
    let b = clan.symbol(i + 1);

    let case1 = a.is_sign() && b.is_number() && clan.mate(i + 1).unwrap() > i + 1;
    let case2 = a.is_number() && b.is_sign() && clan.mate(i).unwrap() < i;
    let case3 = a.is_number() && b.is_number() && a != b && clan.mate(i).unwrap() < clan.mate(i + 1).unwrap();
    let case4 = (a == Symbol::Plus && b == Symbol::Minus) || (a == Symbol::Minus && b == Symbol::Plus);
    debug_assert!(
        [case1, case2, case3, case4].iter().filter(|c| **c).count() <= 1,
        "action cases must be mutually exclusive at position {i} of {clan}"
    );

    let mut symbols = clan.symbols().to_vec();
    if case1 || case2 || case3 {
        symbols.swap(i - 1, i);
    } else if case4 {
        // out-of-range placeholder value; normalization renumbers it
        let fresh = Symbol::Num(clan.n() as u32 + 1);
        symbols[i - 1] = fresh;
        symbols[i] = fresh;
    } else {
        return clan.clone();
    }
    Clan::new(symbols, clan.p(), clan.q()).expect("action preserves clan validity")
}

/// Applies a word of simple reflections right to left:
/// `act_word([i1, ..., ik], γ) = s_{i1} · (s_{i2} · ... (s_{ik} · γ))`.
pub fn act_word(word: &[usize], clan: &Clan) -> Clan {
    let mut current = clan.clone();
    for &i in word.iter().rev() {
        current = act_simple(i, &current);
    }
    current
}

/// Applies a permutation through its canonical reduced word.  The result is
/// independent of the word, so this is the monoid action of `w`.  Panics if
/// the ranks differ.
pub fn act_permutation(w: &Permutation, clan: &Clan) -> Clan {
    assert_eq!(w.n(), clan.n(), "rank mismatch between permutation and clan");
    act_word(&w.canonical_reduced_word(), clan)
}

/// The cross action: position `i` of the result holds the symbol of `γ` at
/// position `w^{-1}(i)`, renormalized.  For a simple reflection this swaps the
/// symbols in positions `(i, i+1)`.  Panics if the ranks differ.
pub fn cross_action(w: &Permutation, clan: &Clan) -> Clan {
    assert_eq!(w.n(), clan.n(), "rank mismatch between permutation and clan");
    let inv = w.inverse();
    let symbols = (1..=clan.n()).map(|i| clan.symbol(inv.apply(i))).collect();
    Clan::new(symbols, clan.p(), clan.q()).expect("permuting symbols preserves clan validity")
}

/// The clans of the closed orbits: all arrangements of `p` plus signs and
/// `q` minus signs, sorted.
pub fn closed_clans(p: usize, q: usize) -> Vec<Clan> {
    assert!(p + q >= 1, "need p + q >= 1");
    fn go(p_left: usize, q_left: usize, current: &mut Vec<Symbol>, out: &mut Vec<Vec<Symbol>>) {
        if p_left == 0 && q_left == 0 {
            out.push(current.clone());
            return;
        }
        if p_left > 0 {
            current.push(Symbol::Plus);
            go(p_left - 1, q_left, current, out);
            current.pop();
        }
        if q_left > 0 {
            current.push(Symbol::Minus);
            go(p_left, q_left - 1, current, out);
            current.pop();
        }
    }
    let mut raw = Vec::new();
    go(p, q, &mut Vec::new(), &mut raw);
    let mut clans: Vec<Clan> = raw
        .into_iter()
        .map(|symbols| Clan::new(symbols, p, q).expect("sign strings are valid clans"))
        .collect();
    clans.sort();
    clans
}

/// The clan `γ_0` of the open dense orbit:
/// `(1, 2, ..., q, +, ..., +, q, ..., 2, 1)` with `p - q` plus signs in the
/// middle when `p >= q`, and the sign-flipped version when `q > p`.
pub fn open_clan(p: usize, q: usize) -> Clan {
    let n = p + q;
    assert!(n >= 1, "need p + q >= 1");
    let (m, middle) = if p >= q { (q, Symbol::Plus) } else { (p, Symbol::Minus) };
    let mut symbols = Vec::with_capacity(n);
    for k in 1..=m {
        symbols.push(Symbol::Num(k as u32));
    }
    for _ in 0..n - 2 * m {
        symbols.push(middle);
    }
    for k in (1..=m).rev() {
        symbols.push(Symbol::Num(k as u32));
    }
    Clan::new(symbols, p, q).expect("the open clan is a valid clan")
}

/// The weak order graph on `(p,q)`-clans: nodes are all clans, and there is an
/// edge `γ → γ'` labeled `i` whenever `s_i · γ = γ' ≠ γ`.  Every edge raises
/// the orbit dimension by exactly one, and all edges are single, so no
/// multiplicity is stored.
#[derive(Clone, Debug)]
pub struct WeakOrderGraph {
    p: usize,
    q: usize,
    nodes: Vec<Clan>,
    /// `(source index, target index, simple root index)`, sorted.
    edges: Vec<(usize, usize, usize)>,
}

impl WeakOrderGraph {
    /// Builds the full graph for `(p,q)`; the envelope is `p + q <= 10`.
    pub fn build(p: usize, q: usize) -> Self {
        let n = p + q;
        assert!((1..=10).contains(&n), "weak order graph envelope is 1 <= p + q <= 10");
        let nodes = enumerate_clans(p, q);
        let mut edges = Vec::new();
        for (src, clan) in nodes.iter().enumerate() {
            for i in 1..n {
                let image = act_simple(i, clan);
                if image != *clan {
                    let tgt = nodes.binary_search(&image).expect("action stays within (p,q)-clans");
                    edges.push((src, tgt, i));
                }
            }
        }
        edges.sort();
        WeakOrderGraph { p, q, nodes, edges }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Nodes in canonical sorted order.
    pub fn nodes(&self) -> &[Clan] {
        &self.nodes
    }

    /// Edges as `(source index, target index, simple root index)`, sorted.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// Whether every node reaches `clan` along edges.
    pub fn all_reach(&self, clan: &Clan) -> bool {
        let target = match self.nodes.binary_search(clan) {
            Ok(t) => t,
            Err(_) => return false,
        };
        let mut reached = vec![false; self.nodes.len()];
        reached[target] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for &(src, tgt, _) in &self.edges {
                if reached[tgt] && !reached[src] {
                    reached[src] = true;
                    changed = true;
                }
            }
        }
        reached.iter().all(|&r| r)
    }

    /// Renders the graph in DOT format: nodes labeled by clan string and
    /// orbit dimension, edges labeled by simple root index.  Output is
    /// deterministic (nodes in canonical order, edges sorted).
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph weak_order_{}_{} {{", self.p, self.q).unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=box];").unwrap();
        for clan in &self.nodes {
            writeln!(out, "  \"{}\" [label=\"{}\\ndim {}\"];", clan, clan, clan.orbit_dimension()).unwrap();
        }
        for &(src, tgt, i) in &self.edges {
            writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", self.nodes[src], self.nodes[tgt], i).unwrap();
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clan(text: &str, p: usize, q: usize) -> Clan {
        Clan::parse(text, p, q).unwrap()
    }

    #[test]
    fn act_simple_case_examples() {
        // case 1: sign then number with mate to the right
        assert_eq!(act_simple(1, &clan("+ 1 - 1", 2, 2)), clan("1 + - 1", 2, 2));
        // case 2: number with mate to the left, then sign
        assert_eq!(act_simple(2, &clan("1 1 + -", 2, 2)), clan("1 + 1 -", 2, 2));
        // case 3: unequal numbers, left mate before right mate
        assert_eq!(act_simple(2, &clan("1 1 2 2", 2, 2)), clan("1 2 1 2", 2, 2));
        // case 4: opposite signs become a fresh pair
        assert_eq!(act_simple(2, &clan("+ + - -", 2, 2)), clan("+ 1 1 -", 2, 2));
        // case 5: fixed points
        assert_eq!(act_simple(1, &clan("+ + - -", 2, 2)), clan("+ + - -", 2, 2));
        assert_eq!(act_simple(2, &clan("1 2 1 2", 2, 2)), clan("1 2 1 2", 2, 2));
        assert_eq!(act_simple(1, &clan("1 2 2 1", 2, 2)), clan("1 2 2 1", 2, 2));
    }

    #[test]
    fn act_simple_is_idempotent() {
        for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            for g in enumerate_clans(p, q) {
                for i in 1..p + q {
                    let once = act_simple(i, &g);
                    assert_eq!(act_simple(i, &once), once, "i={i}, clan={g}");
                }
            }
        }
    }

    #[test]
    fn case4_iff_opposite_signs_and_cross_action_moves() {
        for (p, q) in [(2, 2), (2, 1), (1, 2)] {
            let n = p + q;
            for g in enumerate_clans(p, q) {
                for i in 1..n {
                    let a = g.symbol(i);
                    let b = g.symbol(i + 1);
                    let opposite = (a == Symbol::Plus && b == Symbol::Minus)
                        || (a == Symbol::Minus && b == Symbol::Plus);
                    let image = act_simple(i, &g);
                    let became_pair = image != g
                        && g.symbol(i).is_sign()
                        && image.symbol(i).is_number()
                        && image.symbol(i) == image.symbol(i + 1);
                    assert_eq!(became_pair, opposite, "i={i}, clan={g}");
                    if opposite {
                        // the move is "type I": the cross action moves γ too
                        let s = Permutation::simple(n, i);
                        assert_ne!(cross_action(&s, &g), g, "i={i}, clan={g}");
                    }
                }
            }
        }
    }

    #[test]
    fn act_word_examples() {
        let start = clan("+ - + - +", 3, 2);
        assert_eq!(act_word(&[], &start), start);
        assert_eq!(act_word(&[2, 1, 3, 2, 3, 4], &start), clan("1 2 + 2 1", 3, 2));
        assert_eq!(act_word(&[4, 3, 2, 4, 3, 4], &start), clan("+ 1 2 2 1", 3, 2));
    }

    #[test]
    fn act_permutation_examples() {
        let start = clan("+ - + - +", 3, 2);
        assert_eq!(act_permutation(&Permutation::identity(5), &start), start);
        let w = Permutation::from_word(5, &[3, 2, 1, 4, 3, 2]);
        assert_eq!(w.length(), 6);
        assert_eq!(act_permutation(&w, &start), clan("1 2 + 2 1", 3, 2));
    }

    #[test]
    fn action_is_reduced_word_independent_small() {
        for w in Permutation::all(3) {
            for g in enumerate_clans(2, 1) {
                let images: Vec<Clan> = w.reduced_words().iter().map(|word| act_word(word, &g)).collect();
                assert!(images.windows(2).all(|ab| ab[0] == ab[1]), "w={w}, clan={g}");
                assert_eq!(images[0], act_permutation(&w, &g));
            }
        }
    }

    #[test]
    fn cross_action_examples() {
        let s2 = Permutation::simple(4, 2);
        assert_eq!(cross_action(&s2, &clan("+ + - -", 2, 2)), clan("+ - + -", 2, 2));
        let g = clan("+ 1 - 1", 2, 2);
        assert_eq!(cross_action(&Permutation::identity(4), &g), g);
        // w_0 reverses the symbol string
        assert_eq!(cross_action(&Permutation::longest(4), &g), clan("1 - 1 +", 2, 2));
    }

    #[test]
    fn closed_and_open_examples() {
        assert_eq!(open_clan(3, 2), clan("1 2 + 2 1", 3, 2));
        assert_eq!(open_clan(2, 2), clan("1 2 2 1", 2, 2));
        assert_eq!(open_clan(2, 3), clan("1 2 - 2 1", 2, 3));
        assert_eq!(closed_clans(1, 1), vec![clan("+ -", 1, 1), clan("- +", 1, 1)]);
        assert_eq!(closed_clans(2, 2).len(), 6);
        for c in closed_clans(2, 2) {
            assert_eq!(c.length(), 0);
        }
    }

    #[test]
    fn weak_order_graph_1_1() {
        let graph = WeakOrderGraph::build(1, 1);
        assert_eq!(graph.nodes().len(), 3);
        let pm = clan("+ -", 1, 1);
        let mp = clan("- +", 1, 1);
        let pair = clan("1 1", 1, 1);
        let idx = |c: &Clan| graph.nodes().binary_search(c).unwrap();
        let mut expected = [(idx(&pm), idx(&pair), 1), (idx(&mp), idx(&pair), 1)];
        expected.sort();
        assert_eq!(graph.edges(), &expected[..]);
    }

    #[test]
    fn weak_order_graph_edges_raise_dimension() {
        for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2)] {
            let graph = WeakOrderGraph::build(p, q);
            for &(src, tgt, i) in graph.edges() {
                assert_eq!(
                    graph.nodes()[tgt].orbit_dimension(),
                    graph.nodes()[src].orbit_dimension() + 1,
                    "edge {} -{}-> {}",
                    graph.nodes()[src],
                    i,
                    graph.nodes()[tgt]
                );
            }
        }
    }

    #[test]
    fn open_clan_is_reachable_sink() {
        for (p, q) in [(1, 1), (2, 2), (3, 2)] {
            let graph = WeakOrderGraph::build(p, q);
            let top = open_clan(p, q);
            assert!(graph.all_reach(&top), "(p,q)=({p},{q})");
            // the open clan is the unique node with no outgoing edges
            let top_idx = graph.nodes().binary_search(&top).unwrap();
            let sinks: Vec<usize> = (0..graph.nodes().len())
                .filter(|&v| graph.edges().iter().all(|&(src, _, _)| src != v))
                .collect();
            assert_eq!(sinks, vec![top_idx]);
        }
    }

    #[test]
    fn dot_output_is_deterministic_and_labeled() {
        let graph = WeakOrderGraph::build(1, 1);
        let dot = graph.to_dot();
        assert_eq!(dot, WeakOrderGraph::build(1, 1).to_dot());
        assert!(dot.contains("digraph weak_order_1_1 {"));
        assert!(dot.contains("\"+ -\" [label=\"+ -\\ndim 0\"];"));
        assert!(dot.contains("\"1 1\" [label=\"1 1\\ndim 1\"];"));
        assert!(dot.contains("\"+ -\" -> \"1 1\" [label=\"1\"];"));
        assert!(dot.contains("\"- +\" -> \"1 1\" [label=\"1\"];"));
    }
}
