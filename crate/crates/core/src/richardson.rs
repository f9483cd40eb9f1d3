//! The dictionary between clans and pairs of permutations: the index sets
//! `γ_+`, `γ_-` and their variants, the permutations `u(γ)` and `v(γ)`, the
//! notion of a `(p,q)`-pair, high-low patterns, Bruhat comparability of
//! shuffle pairs, and the unique `(1,2,1,2)`-avoiding clan of a comparable
//! pair.
//!
//! `u(γ)` is the Bruhat-maximal permutation whose rank matrix has `p`-th
//! column prescribed by `γ(i;+)`; `v(γ)` is the minimal one for the dual
//! condition.  Together they cut out the Richardson variety matching the
//! orbit closure of a `(1,2,1,2)`-avoiding clan, which is what makes the
//! product rule in [`crate::structure`] work.

use std::fmt;

use crate::clan::{avoiding_clan_from_fs, Clan, FsPattern, FsToken, Symbol};
use crate::permutation::Permutation;

/// Errors from `(p,q)`-pair validation and clan construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairError {
    #[error("rank mismatch: both permutations must lie in S_(p+q)")]
    RankMismatch,
    #[error("not a (p,q)-pair: {0}")]
    NotPqPair(&'static str),
    #[error("not a shuffle pair: {0}")]
    NotShufflePair(&'static str),
    #[error("pair is incomparable in Bruhat order (all structure constants vanish)")]
    Incomparable,
}

/// The four index sets attached to a clan.  Positions are 1-indexed and each
/// list is ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSets {
    /// `γ_+`: positions holding `+` or a second occurrence.
    pub plus: Vec<usize>,
    /// `γ_-`: positions holding `-` or a first occurrence.
    pub minus: Vec<usize>,
    /// `γ̃_+`: positions holding `+` or a first occurrence.
    pub plus_tilde: Vec<usize>,
    /// `γ̃_-`: positions holding `-` or a second occurrence.
    pub minus_tilde: Vec<usize>,
}

/// Splits `[n]` into the four defining index sets of the clan.
pub fn gamma_sets(clan: &Clan) -> GammaSets {
    let mut seen: Vec<u32> = Vec::new();
    let mut sets = GammaSets {
        plus: Vec::new(),
        minus: Vec::new(),
        plus_tilde: Vec::new(),
        minus_tilde: Vec::new(),
    };
    for i in 1..=clan.n() {
        match clan.symbol(i) {
            Symbol::Plus => {
                sets.plus.push(i);
                sets.plus_tilde.push(i);
            }
            Symbol::Minus => {
                sets.minus.push(i);
                sets.minus_tilde.push(i);
            }
            Symbol::Num(k) => {
                if seen.contains(&k) {
                    // second occurrence
                    sets.plus.push(i);
                    sets.minus_tilde.push(i);
                } else {
                    seen.push(k);
                    sets.minus.push(i);
                    sets.plus_tilde.push(i);
                }
            }
        }
    }
    sets
}

/// The permutation `u(γ)`: assigns `p, p-1, ..., 1` to the positions of `γ_+`
/// in descending order and `n, n-1, ..., p+1` to `γ_-` in descending order.
/// It is the Bruhat-maximum of the permutations whose rank matrices have
/// `p`-th column `γ(i;+)`.
pub fn u_of_clan(clan: &Clan) -> Permutation {
    let sets = gamma_sets(clan);
    let (p, n) = (clan.p(), clan.n());
    let mut image = vec![0usize; n];
    for (offset, &pos) in sets.plus.iter().enumerate() {
        image[pos - 1] = p - offset;
    }
    for (offset, &pos) in sets.minus.iter().enumerate() {
        image[pos - 1] = n - offset;
    }
    Permutation::from_one_line(image).expect("the gamma sets partition [n]")
}

/// The permutation `v(γ)`: assigns `1, ..., p` to the positions of `γ̃_+` in
/// ascending order and `p+1, ..., n` to `γ̃_-` in ascending order.  It is the
/// Bruhat-minimum of the dual prescribed set.
pub fn v_of_clan(clan: &Clan) -> Permutation {
    let sets = gamma_sets(clan);
    let p = clan.p();
    let mut image = vec![0usize; clan.n()];
    for (offset, &pos) in sets.plus_tilde.iter().enumerate() {
        image[pos - 1] = 1 + offset;
    }
    for (offset, &pos) in sets.minus_tilde.iter().enumerate() {
        image[pos - 1] = p + 1 + offset;
    }
    Permutation::from_one_line(image).expect("the gamma sets partition [n]")
}

/// Whether the values `1..=k` appear in ascending position order in `w`, and
/// likewise the values `k+1..=n`.
fn ascending_shuffle(w: &Permutation, k: usize) -> bool {
    let low: Vec<usize> = w.one_line().iter().copied().filter(|&v| v <= k).collect();
    let high: Vec<usize> = w.one_line().iter().copied().filter(|&v| v > k).collect();
    low.windows(2).all(|ab| ab[0] < ab[1]) && high.windows(2).all(|ab| ab[0] < ab[1])
}

/// Whether the values `1..=k` appear in descending position order in `w`, and
/// likewise the values `k+1..=n`.
fn descending_shuffle(w: &Permutation, k: usize) -> bool {
    let low: Vec<usize> = w.one_line().iter().copied().filter(|&v| v <= k).collect();
    let high: Vec<usize> = w.one_line().iter().copied().filter(|&v| v > k).collect();
    low.windows(2).all(|ab| ab[0] > ab[1]) && high.windows(2).all(|ab| ab[0] > ab[1])
}

/// All ascending shuffles of `1..=k` and `k+1..=n`, sorted; there are
/// `C(n, k)` of them.
pub fn block_shuffles(n: usize, k: usize) -> Vec<Permutation> {
    assert!(k <= n, "block size exceeds rank");
    fn go(n: usize, low_next: usize, high_next: usize, k: usize, image: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if image.len() == n {
            out.push(Permutation::from_one_line(image.clone()).expect("shuffle is a bijection"));
            return;
        }
        if low_next <= k {
            image.push(low_next);
            go(n, low_next + 1, high_next, k, image, out);
            image.pop();
        }
        if high_next <= n {
            image.push(high_next);
            go(n, low_next, high_next + 1, k, image, out);
            image.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, k + 1, k, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Whether `(u, v)` is a `(p,q)`-pair: `u` is a shuffle of `1..=q` and
/// `q+1..=n`, and `v` is a shuffle of `1..=p` and `p+1..=n`.
pub fn is_pq_pair(u: &Permutation, v: &Permutation, p: usize, q: usize) -> bool {
    u.n() == p + q && v.n() == p + q && ascending_shuffle(u, q) && ascending_shuffle(v, p)
}

/// A validated `(p,q)`-pair of permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqPair {
    p: usize,
    q: usize,
    u: Permutation,
    v: Permutation,
}

impl PqPair {
    pub fn new(p: usize, q: usize, u: Permutation, v: Permutation) -> Result<Self, PairError> {
        if u.n() != p + q || v.n() != p + q {
            return Err(PairError::RankMismatch);
        }
        if !ascending_shuffle(&u, q) {
            return Err(PairError::NotPqPair("u is not a shuffle of 1..q and q+1..n"));
        }
        if !ascending_shuffle(&v, p) {
            return Err(PairError::NotPqPair("v is not a shuffle of 1..p and p+1..n"));
        }
        Ok(PqPair { p, q, u, v })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn u(&self) -> &Permutation {
        &self.u
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }
}

/// One token of a high-low pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum HlToken {
    Plus,
    Minus,
    High,
    Low,
}

impl fmt::Display for HlToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HlToken::Plus => write!(f, "+"),
            HlToken::Minus => write!(f, "-"),
            HlToken::High => write!(f, "H"),
            HlToken::Low => write!(f, "L"),
        }
    }
}

/// The high-low pattern of a shuffle pair `(a, b)` relative to the threshold
/// `p`: position `i` reads `+` when both values are `<= p`, `-` when both are
/// `> p`, `H` when only `a(i) > p`, and `L` when only `b(i) > p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighLowPattern {
    tokens: Vec<HlToken>,
}

impl HighLowPattern {
    pub fn tokens(&self) -> &[HlToken] {
        &self.tokens
    }

    /// Prefix dominance of `H` over `L`; this is exactly Bruhat comparability
    /// `a >= b` for the shuffle pair the pattern came from.  A pattern with no
    /// `H`/`L` tokens is dominant.
    pub fn is_dominant(&self) -> bool {
        let mut balance = 0isize;
        for t in &self.tokens {
            match t {
                HlToken::High => balance += 1,
                HlToken::Low => balance -= 1,
                _ => {}
            }
            if balance < 0 {
                return false;
            }
        }
        true
    }

    /// Translates `H -> F`, `L -> S`, signs unchanged.  Errors when the
    /// pattern is not dominant (no clan has such an FS-pattern).
    pub fn to_fs_pattern(&self) -> Result<FsPattern, PairError> {
        let tokens = self
            .tokens
            .iter()
            .map(|t| match t {
                HlToken::Plus => FsToken::Plus,
                HlToken::Minus => FsToken::Minus,
                HlToken::High => FsToken::First,
                HlToken::Low => FsToken::Second,
            })
            .collect();
        FsPattern::new(tokens).map_err(|_| PairError::Incomparable)
    }
}

impl fmt::Display for HighLowPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.tokens.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// The high-low pattern of `(a, b)` with threshold `p`.  Requires `a` to be a
/// descending shuffle of `p..1` and `n..p+1` and `b` an ascending shuffle of
/// `1..p` and `p+1..n`; errors otherwise.
pub fn high_low_pattern(a: &Permutation, b: &Permutation, p: usize) -> Result<HighLowPattern, PairError> {
    if a.n() != b.n() {
        return Err(PairError::RankMismatch);
    }
    if !descending_shuffle(a, p) {
        return Err(PairError::NotShufflePair("first permutation must shuffle p..1 and n..p+1"));
    }
    if !ascending_shuffle(b, p) {
        return Err(PairError::NotShufflePair("second permutation must shuffle 1..p and p+1..n"));
    }
    let tokens = (1..=a.n())
        .map(|i| match (a.apply(i) <= p, b.apply(i) <= p) {
            (true, true) => HlToken::Plus,
            (false, false) => HlToken::Minus,
            (false, true) => HlToken::High,
            (true, false) => HlToken::Low,
        })
        .collect();
    Ok(HighLowPattern { tokens })
}

/// Bruhat comparability `a >= b` for a shuffle pair, decided by prefix
/// dominance of the high-low pattern.  Agrees with the rank-matrix test.
pub fn comparable(a: &Permutation, b: &Permutation, p: usize) -> Result<bool, PairError> {
    Ok(high_low_pattern(a, b, p)?.is_dominant())
}

/// The unique `(1,2,1,2)`-avoiding clan `γ(u,v)` with `u(γ) = w_0·u` and
/// `v(γ) = v`: the high-low pattern of `(w_0·u, v)` with `H -> F`, `L -> S`
/// feeds the avoiding-clan construction.  Errors with
/// [`PairError::Incomparable`] when `w_0·u` and `v` are incomparable.
pub fn clan_of_pair(pair: &PqPair) -> Result<Clan, PairError> {
    let n = pair.p() + pair.q();
    let a = Permutation::longest(n).compose(pair.u());
    let pattern = high_low_pattern(&a, pair.v(), pair.p())?;
    let fs = pattern.to_fs_pattern()?;
    Ok(avoiding_clan_from_fs(&fs))
}
