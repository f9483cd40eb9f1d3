//! Permutations of `{1, ..., n}` in one-line notation, with the symmetric-group
//! arithmetic the rest of the crate is built on: lengths, rank matrices, two
//! equivalent Bruhat-order tests, and reduced-word enumeration.
//!
//! Positions and values are 1-indexed everywhere on the public surface.

use std::fmt;
use std::str::FromStr;

/// Errors from parsing or constructing a permutation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("empty permutation")]
    Empty,
    #[error("invalid permutation token `{0}`")]
    InvalidToken(String),
    #[error("value {value} out of range 1..={n}")]
    ValueOutOfRange { value: usize, n: usize },
    #[error("value {0} appears more than once")]
    DuplicateValue(usize),
}

/// A permutation of `{1, ..., n}`, stored in one-line notation.
///
/// `Ord` is lexicographic on the one-line notation, which is the deterministic
/// order used whenever sets of permutations are listed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from one-line notation, validating that it is a
    /// bijection of `{1, ..., n}`.
    pub fn from_one_line(image: Vec<usize>) -> Result<Self, PermError> {
        if image.is_empty() {
            return Err(PermError::Empty);
        }
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v == 0 || v > n {
                return Err(PermError::ValueOutOfRange { value: v, n });
            }
            if seen[v - 1] {
                return Err(PermError::DuplicateValue(v));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { image })
    }

    /// The identity of `S_n`.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "rank must be positive");
        Permutation {
            image: (1..=n).collect(),
        }
    }

    /// The longest element `w_0 = n, n-1, ..., 1` of `S_n`.
    pub fn longest(n: usize) -> Self {
        assert!(n >= 1, "rank must be positive");
        Permutation {
            image: (1..=n).rev().collect(),
        }
    }

    /// The simple transposition `s_i` swapping `i` and `i + 1`, as an element
    /// of `S_n`.  Panics unless `1 <= i < n`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "simple reflection index {i} out of range for S_{n}");
        let mut image: Vec<usize> = (1..=n).collect();
        image.swap(i - 1, i);
        Permutation { image }
    }

    /// The rank `n` of the ambient symmetric group.
    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// The value `w(i)`, 1-indexed.  Panics if `i` is out of range.
    pub fn apply(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.n(), "position {i} out of range");
        self.image[i - 1]
    }

    /// The one-line notation as a slice (`one_line()[k] = w(k + 1)`).
    pub fn one_line(&self) -> &[usize] {
        &self.image
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.n()];
        for (k, &v) in self.image.iter().enumerate() {
            image[v - 1] = k + 1;
        }
        Permutation { image }
    }

    /// Functional composition: `(a.compose(b))(i) = a(b(i))`.
    ///
    /// Panics if the ranks differ.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "rank mismatch in composition");
        let image = other.image.iter().map(|&v| self.image[v - 1]).collect();
        Permutation { image }
    }

    /// Embeds into `S_m` (`m >= n`) by fixing `n+1, ..., m`.
    pub fn embed(&self, m: usize) -> Self {
        assert!(m >= self.n(), "cannot embed S_{} into S_{m}", self.n());
        let mut image = self.image.clone();
        image.extend(self.n() + 1..=m);
        Permutation { image }
    }

    /// The Coxeter length `l(w)`, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.image[i] > self.image[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// The rank matrix `r_w(i,j) = #{k <= i | w(k) <= j}`.
    pub fn rank_matrix(&self) -> RankMatrix {
        let n = self.n();
        let mut entries = vec![0u32; n * n];
        for i in 1..=n {
            let wi = self.image[i - 1];
            for j in 1..=n {
                let above = if i > 1 { entries[(i - 2) * n + (j - 1)] } else { 0 };
                entries[(i - 1) * n + (j - 1)] = above + u32::from(wi <= j);
            }
        }
        RankMatrix { n, entries }
    }

    /// Bruhat order via rank matrices: `u <= v` iff `r_u(i,j) >= r_v(i,j)`
    /// for all `i, j`.  Panics if the ranks differ.
    pub fn bruhat_leq_rank(&self, other: &Self) -> bool {
        assert_eq!(self.n(), other.n(), "rank mismatch in Bruhat comparison");
        let ru = self.rank_matrix();
        let rv = other.rank_matrix();
        ru.entries.iter().zip(rv.entries.iter()).all(|(a, b)| a >= b)
    }

    /// Bruhat order via sorted prefixes: `u <= v` iff for every `i`, the
    /// ascending sort of `u(1..i)` is entrywise `<=` that of `v(1..i)`.
    ///
    /// Agrees with [`Permutation::bruhat_leq_rank`] on all inputs.
    pub fn bruhat_leq_sorted(&self, other: &Self) -> bool {
        assert_eq!(self.n(), other.n(), "rank mismatch in Bruhat comparison");
        let n = self.n();
        let mut pu: Vec<usize> = Vec::with_capacity(n);
        let mut pv: Vec<usize> = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (self.image[i], other.image[i]);
            pu.insert(pu.partition_point(|&x| x < a), a);
            pv.insert(pv.partition_point(|&x| x < b), b);
            if pu.iter().zip(pv.iter()).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// Positions `i` with `w(i) > w(i+1)`, ascending.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n())
            .filter(|&i| self.image[i - 1] > self.image[i])
            .collect()
    }

    fn first_descent(&self) -> Option<usize> {
        (1..self.n()).find(|&i| self.image[i - 1] > self.image[i])
    }

    /// Right multiplication by `s_i`: swaps the entries in positions `i`, `i+1`.
    fn right_simple(&self, i: usize) -> Self {
        let mut image = self.image.clone();
        image.swap(i - 1, i);
        Permutation { image }
    }

    /// The deterministic reduced word obtained by repeatedly peeling the
    /// leftmost descent.  Multiplying `s_{i_1} ... s_{i_k}` left to right
    /// recovers `w`; the word has length `l(w)`.
    pub fn canonical_reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut peeled = Vec::new();
        while let Some(i) = w.first_descent() {
            peeled.push(i);
            w = w.right_simple(i);
        }
        peeled.reverse();
        peeled
    }

    /// All reduced words of `w`, sorted lexicographically.
    ///
    /// A word `[i_1, ..., i_k]` multiplies to `w` as `s_{i_1} ∘ ... ∘ s_{i_k}`
    /// and has `k = l(w)`.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        fn go(w: &Permutation, out: &mut Vec<Vec<usize>>, suffix: &mut Vec<usize>) {
            let descents = w.descents();
            if descents.is_empty() {
                let mut word: Vec<usize> = suffix.clone();
                word.reverse();
                out.push(word);
                return;
            }
            for i in descents {
                suffix.push(i);
                go(&w.right_simple(i), out, suffix);
                suffix.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut out, &mut Vec::new());
        out.sort();
        out
    }

    /// The product `s_{i_1} ∘ s_{i_2} ∘ ... ∘ s_{i_k}` in `S_n` (the word need
    /// not be reduced).  Panics on an out-of-range index.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        let mut acc = Permutation::identity(n);
        for &i in word {
            assert!(i >= 1 && i < n, "word letter {i} out of range for S_{n}");
            acc = acc.compose(&Permutation::simple(n, i));
        }
        acc
    }

    /// All of `S_n`, sorted lexicographically by one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        assert!(n >= 1, "rank must be positive");
        fn go(n: usize, prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            if prefix.len() == n {
                out.push(Permutation { image: prefix.clone() });
                return;
            }
            for v in 1..=n {
                if !used[v - 1] {
                    used[v - 1] = true;
                    prefix.push(v);
                    go(n, prefix, used, out);
                    prefix.pop();
                    used[v - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    /// All `w` in `S_n` with `l(w) = d`, sorted lexicographically.
    ///
    /// Generates all of `S_n` and filters; the supported envelope (`n <= 8`)
    /// makes anything fancier unnecessary.
    pub fn enumerate_by_length(n: usize, d: usize) -> Vec<Permutation> {
        Permutation::all(n)
            .into_iter()
            .filter(|w| w.length() == d)
            .collect()
    }

    /// Parses one-line notation: whitespace- or comma-separated values, or a
    /// single digit string like `"31425"` when `n <= 9`.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(PermError::Empty);
        }
        let values: Vec<usize> = if trimmed.contains([' ', '\t', ',']) {
            trimmed
                .split([' ', '\t', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| PermError::InvalidToken(t.to_string())))
                .collect::<Result<_, _>>()?
        } else if trimmed.chars().all(|c| c.is_ascii_digit()) {
            trimmed
                .chars()
                .map(|c| c.to_digit(10).unwrap() as usize)
                .collect()
        } else {
            return Err(PermError::InvalidToken(trimmed.to_string()));
        };
        Permutation::from_one_line(values)
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9`, space-separated values otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.image {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let words: Vec<String> = self.image.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", words.join(" "))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse(s)
    }
}

/// The rank matrix of a permutation.
///
/// Entries weakly increase along rows and columns, each row jumps by one at
/// column `w(i)`, and the permutation is recoverable from the jump positions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl RankMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The entry `r_w(i,j)`, 1-indexed.  Panics if out of range.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n, "rank matrix index out of range");
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[u32] {
        assert!(i >= 1 && i <= self.n, "rank matrix row out of range");
        &self.entries[(i - 1) * self.n..i * self.n]
    }

    /// The jump column of each row; row `i` jumps at column `w(i)`.
    pub fn jumps(&self) -> Vec<usize> {
        (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .find(|&j| {
                        let above = if i > 1 { self.get(i - 1, j) } else { 0 };
                        self.get(i, j) == above + 1
                    })
                    .expect("every rank matrix row jumps exactly once")
            })
            .collect()
    }

    /// Reconstructs the permutation whose rank matrix this is.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_one_line(self.jumps()).expect("jump columns form a permutation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("31425").one_line(), &[3, 1, 4, 2, 5]);
        assert_eq!(p("3 1 4 2 5"), p("31425"));
        assert_eq!(p("3,1,4,2,5"), p("31425"));
        assert_eq!(p("31425").to_string(), "31425");
        assert!(Permutation::parse("").is_err());
        assert!(Permutation::parse("3 1 4 2 2").is_err());
        assert!(Permutation::parse("3 1 4 2 6").is_err());
        assert!(Permutation::parse("abc").is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(p("31425").length(), 3);
        assert_eq!(p("12345").length(), 0);
        // brute-force inversion count for 2431
        let w = p("2431");
        let mut inv = 0;
        for i in 1..=4 {
            for j in i + 1..=4 {
                if w.apply(i) > w.apply(j) {
                    inv += 1;
                }
            }
        }
        assert_eq!(inv, 4);
        assert_eq!(w.length(), 4);
        assert_eq!(Permutation::longest(5).length(), 10);
    }

    #[test]
    fn rank_matrix_examples() {
        let r = p("2431").rank_matrix();
        assert_eq!(r.row(1), &[0, 1, 1, 1]);
        assert_eq!(r.row(2), &[0, 1, 1, 2]);
        assert_eq!(r.row(3), &[0, 1, 2, 3]);
        assert_eq!(r.row(4), &[1, 2, 3, 4]);
        assert_eq!(r.jumps(), vec![2, 4, 3, 1]);

        let id2 = Permutation::identity(2).rank_matrix();
        assert_eq!(id2.row(1), &[1, 1]);
        assert_eq!(id2.row(2), &[1, 2]);

        let r = p("4321").rank_matrix();
        assert_eq!(r.row(1), &[0, 0, 0, 1]);
        assert_eq!(r.row(2), &[0, 0, 1, 2]);
        assert_eq!(r.row(3), &[0, 1, 2, 3]);
        assert_eq!(r.row(4), &[1, 2, 3, 4]);
    }

    #[test]
    fn rank_matrix_round_trip() {
        for w in Permutation::all(5) {
            assert_eq!(w.rank_matrix().to_permutation(), w);
        }
    }

    #[test]
    fn bruhat_examples() {
        assert!(p("12345").bruhat_leq_rank(&p("31425")));
        assert!(p("2431").bruhat_leq_rank(&p("2431")));
        assert!(p("2143").bruhat_leq_rank(&p("3412")));
        assert!(p("12345").bruhat_leq_sorted(&p("54321")));
        assert!(!p("3412").bruhat_leq_sorted(&p("2143")));
    }

    #[test]
    fn bruhat_definitions_agree_small() {
        for n in 2..=4 {
            let all = Permutation::all(n);
            for u in &all {
                for v in &all {
                    assert_eq!(
                        u.bruhat_leq_rank(v),
                        u.bruhat_leq_sorted(v),
                        "disagreement at u={u}, v={v}"
                    );
                }
            }
        }
    }

    #[test]
    fn compose_examples() {
        let w0 = Permutation::longest(8);
        assert_eq!(w0.compose(&p("48376521")), p("51623478"));
        assert_eq!(w0.compose(&w0), Permutation::identity(8));
        let s1 = Permutation::simple(3, 1);
        assert_eq!(s1.compose(&s1), Permutation::identity(3));
    }

    #[test]
    fn length_complement_under_longest() {
        for n in 2..=5 {
            let w0 = Permutation::longest(n);
            let top = n * (n - 1) / 2;
            for w in Permutation::all(n) {
                assert_eq!(w0.compose(&w).length(), top - w.length());
            }
        }
    }

    #[test]
    fn enumerate_by_length_examples() {
        assert_eq!(Permutation::enumerate_by_length(5, 6).len(), 20);
        assert_eq!(Permutation::enumerate_by_length(4, 0), vec![Permutation::identity(4)]);
        assert_eq!(Permutation::enumerate_by_length(4, 6), vec![Permutation::longest(4)]);
    }

    #[test]
    fn reduced_words_examples() {
        assert_eq!(Permutation::identity(3).reduced_words(), vec![Vec::<usize>::new()]);
        assert_eq!(p("321").reduced_words(), vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert_eq!(Permutation::simple(2, 1).reduced_words(), vec![vec![1]]);
    }

    #[test]
    fn reduced_words_match_brute_force() {
        // every index sequence of length l(w) whose product is w, for all of S_4
        fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
            let mut out = vec![Vec::new()];
            for _ in 0..len {
                out = out
                    .into_iter()
                    .flat_map(|w| {
                        (1..n).map(move |i| {
                            let mut w2 = w.clone();
                            w2.push(i);
                            w2
                        })
                    })
                    .collect();
            }
            out
        }
        for w in Permutation::all(4) {
            let expected: Vec<Vec<usize>> = words(4, w.length())
                .into_iter()
                .filter(|word| Permutation::from_word(4, word) == w)
                .collect();
            assert_eq!(w.reduced_words(), expected, "w = {w}");
        }
    }

    #[test]
    fn canonical_word_multiplies_back() {
        for n in 2..=5 {
            for w in Permutation::all(n) {
                let word = w.canonical_reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(Permutation::from_word(n, &word), w);
            }
        }
    }

    #[test]
    fn inverse_and_embed() {
        let w = p("31425");
        assert_eq!(w.compose(&w.inverse()), Permutation::identity(5));
        assert_eq!(w.inverse().compose(&w), Permutation::identity(5));
        assert_eq!(w.embed(7).one_line(), &[3, 1, 4, 2, 5, 6, 7]);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
            (1..=max_n)
                .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
                .prop_map(|image| Permutation::from_one_line(image).unwrap())
        }

        proptest! {
            #[test]
            fn display_parse_round_trip(w in arb_perm(12)) {
                prop_assert_eq!(Permutation::parse(&w.to_string()).unwrap(), w);
            }

            #[test]
            fn inverse_composes_to_identity(w in arb_perm(8)) {
                let n = w.n();
                prop_assert_eq!(w.compose(&w.inverse()), Permutation::identity(n));
            }

            #[test]
            fn rank_matrix_determines_permutation(w in arb_perm(8)) {
                prop_assert_eq!(w.rank_matrix().to_permutation(), w);
            }

            #[test]
            fn length_adds_along_canonical_word(w in arb_perm(7)) {
                let word = w.canonical_reduced_word();
                prop_assert_eq!(word.len(), w.length());
                prop_assert_eq!(Permutation::from_word(w.n(), &word), w);
            }
        }
    }
}
