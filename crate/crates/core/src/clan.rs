//! `(p,q)`-clans and their combinatorics: the counting functions `γ(i;+)`,
//! `γ(i;-)`, `γ(i;j)`, clan length and orbit dimension, FS-patterns, and the
//! `(1,2,1,2)` interleaving pattern with its removal move.
//!
//! Clans are kept in a canonical form where the natural numbers are exactly
//! `1..m`, numbered in order of first occurrence, so clan equality is plain
//! sequence equality.  Every constructor and operation returns canonical clans.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

/// Errors from parsing or constructing clans and FS-patterns.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClanError {
    #[error("empty clan")]
    Empty,
    #[error("invalid clan token `{0}`")]
    InvalidToken(String),
    #[error("number {0} appears {1} time(s), expected exactly 2")]
    UnpairedNumber(u32, usize),
    #[error("sign counts do not match (p,q)=({p},{q}): {plus} plus, {minus} minus")]
    SignCountMismatch { p: usize, q: usize, plus: usize, minus: usize },
    #[error("clan has {len} symbols but p+q = {expected}")]
    LengthMismatch { len: usize, expected: usize },
    #[error("numbers {0} and {1} are not interleaved")]
    NotInterleaved(u32, u32),
    #[error("clan has no interleaved pair to remove")]
    AlreadyAvoiding,
    #[error("invalid FS-pattern: {0}")]
    InvalidFsPattern(String),
    #[error("invalid JSON clan: {0}")]
    InvalidJson(String),
}

/// One symbol of a clan: a sign or half of a matched pair of naturals.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Symbol {
    Plus,
    Minus,
    Num(u32),
}

impl Symbol {
    pub fn is_sign(self) -> bool {
        matches!(self, Symbol::Plus | Symbol::Minus)
    }

    pub fn is_number(self) -> bool {
        matches!(self, Symbol::Num(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Plus => write!(f, "+"),
            Symbol::Minus => write!(f, "-"),
            Symbol::Num(k) => write!(f, "{k}"),
        }
    }
}

/// A `(p,q)`-clan in canonical form.
///
/// Invariants, enforced at construction:
/// * every natural number used appears exactly twice;
/// * `#plus - #minus = p - q`;
/// * the numbers are exactly `1..m` in order of first occurrence.
///
/// `Ord` is lexicographic on the token sequence (signs before numbers), the
/// deterministic order used for listings and DOT output.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clan {
    p: usize,
    q: usize,
    symbols: Vec<Symbol>,
}

impl Clan {
    /// Validates and canonicalizes a symbol sequence as a `(p,q)`-clan.
    pub fn new(symbols: Vec<Symbol>, p: usize, q: usize) -> Result<Self, ClanError> {
        if symbols.is_empty() {
            return Err(ClanError::Empty);
        }
        if symbols.len() != p + q {
            return Err(ClanError::LengthMismatch { len: symbols.len(), expected: p + q });
        }
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        let (mut plus, mut minus) = (0usize, 0usize);
        for &s in &symbols {
            match s {
                Symbol::Plus => plus += 1,
                Symbol::Minus => minus += 1,
                Symbol::Num(k) => *counts.entry(k).or_insert(0) += 1,
            }
        }
        for (&k, &c) in &counts {
            if c != 2 {
                return Err(ClanError::UnpairedNumber(k, c));
            }
        }
        if (plus as isize) - (minus as isize) != (p as isize) - (q as isize) {
            return Err(ClanError::SignCountMismatch { p, q, plus, minus });
        }
        let mut clan = Clan { p, q, symbols };
        clan.normalize();
        Ok(clan)
    }

    /// Renumbers the naturals to `1..m` in order of first occurrence.
    fn normalize(&mut self) {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        let mut next = 1u32;
        for s in &mut self.symbols {
            if let Symbol::Num(k) = s {
                let v = *map.entry(*k).or_insert_with(|| {
                    let v = next;
                    next += 1;
                    v
                });
                *s = Symbol::Num(v);
            }
        }
    }

    /// Parses a clan from whitespace- or comma-separated tokens `+`, `-`, and
    /// decimal numerals.  Surrounding parentheses are tolerated, so strings
    /// like `"(1,2,1,2)"` parse as written.  Renumbering to first-occurrence
    /// order is applied, so `"5 7 5 7"` and `"1 2 1 2"` are the same clan.
    pub fn parse(text: &str, p: usize, q: usize) -> Result<Self, ClanError> {
        let cleaned: String = text.replace(['(', ')'], " ");
        let mut symbols = Vec::new();
        for tok in cleaned.split([' ', '\t', ',']).filter(|t| !t.is_empty()) {
            let sym = match tok {
                "+" => Symbol::Plus,
                "-" => Symbol::Minus,
                _ => match tok.parse::<u32>() {
                    Ok(k) => Symbol::Num(k),
                    Err(_) => return Err(ClanError::InvalidToken(tok.to_string())),
                },
            };
            symbols.push(sym);
        }
        Clan::new(symbols, p, q)
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// The symbol in position `i`, 1-indexed.  Panics if out of range.
    pub fn symbol(&self, i: usize) -> Symbol {
        assert!(i >= 1 && i <= self.n(), "clan position {i} out of range");
        self.symbols[i - 1]
    }

    /// The position of the matching occurrence when position `i` holds a
    /// number, `None` when it holds a sign.
    pub fn mate(&self, i: usize) -> Option<usize> {
        match self.symbol(i) {
            Symbol::Num(k) => (1..=self.n()).find(|&j| j != i && self.symbols[j - 1] == Symbol::Num(k)),
            _ => None,
        }
    }

    /// The positions `(first, second)` of each pair, ordered by first
    /// occurrence, i.e. `pair_positions()[k-1]` is the pair of number `k`.
    pub fn pair_positions(&self) -> Vec<(usize, usize)> {
        let mut firsts: BTreeMap<u32, usize> = BTreeMap::new();
        let mut pairs: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (idx, &s) in self.symbols.iter().enumerate() {
            if let Symbol::Num(k) = s {
                match firsts.get(&k) {
                    None => {
                        firsts.insert(k, idx + 1);
                    }
                    Some(&f) => {
                        pairs.insert(k, (f, idx + 1));
                    }
                }
            }
        }
        pairs.into_values().collect()
    }

    /// `γ(i;+)`: the number of plus signs plus the number of complete pairs
    /// among the prefix `(c_1, ..., c_i)`.  Panics if `i` is out of range.
    pub fn gamma_plus(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.n(), "prefix index {i} out of range");
        let plus = self.symbols[..i].iter().filter(|s| **s == Symbol::Plus).count();
        let pairs = self.pair_positions().iter().filter(|&&(_, t)| t <= i).count();
        plus + pairs
    }

    /// `γ(i;-)`: minus signs plus complete pairs among the prefix.
    pub fn gamma_minus(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.n(), "prefix index {i} out of range");
        let minus = self.symbols[..i].iter().filter(|s| **s == Symbol::Minus).count();
        let pairs = self.pair_positions().iter().filter(|&&(_, t)| t <= i).count();
        minus + pairs
    }

    /// `γ(i;j)`: the number of pairs `c_s = c_t` with `s <= i < j < t`.
    /// Panics unless `1 <= i < j <= n`.
    pub fn gamma_pair(&self, i: usize, j: usize) -> usize {
        assert!(i >= 1 && i < j && j <= self.n(), "need 1 <= i < j <= n, got ({i},{j})");
        self.pair_positions()
            .iter()
            .filter(|&&(s, t)| s <= i && t > j)
            .count()
    }

    /// The clan length
    /// `l(γ) = Σ_{pairs (i,j)} ( j - i - #{other pairs (s,t) with s < i < t < j} )`,
    /// which also equals `Σ(j - i) - count_1212(γ)`.
    pub fn length(&self) -> usize {
        let pairs = self.pair_positions();
        let mut total = 0usize;
        for &(i, j) in &pairs {
            let crossers = pairs
                .iter()
                .filter(|&&(s, t)| s < i && i < t && t < j)
                .count();
            total += j - i - crossers;
        }
        total
    }

    /// The dimension of the clan's orbit: `d(K) + l(γ)` with
    /// `d(K) = (p(p-1) + q(q-1)) / 2`.
    pub fn orbit_dimension(&self) -> usize {
        let d_k = (self.p * self.p.saturating_sub(1) + self.q * self.q.saturating_sub(1)) / 2;
        d_k + self.length()
    }

    /// The FS-pattern: signs copied, first occurrences marked `F`, second
    /// occurrences marked `S`.
    pub fn fs_pattern(&self) -> FsPattern {
        let mut seen: Vec<u32> = Vec::new();
        let tokens = self
            .symbols
            .iter()
            .map(|&s| match s {
                Symbol::Plus => FsToken::Plus,
                Symbol::Minus => FsToken::Minus,
                Symbol::Num(k) => {
                    if seen.contains(&k) {
                        FsToken::Second
                    } else {
                        seen.push(k);
                        FsToken::First
                    }
                }
            })
            .collect();
        FsPattern { tokens }
    }

    /// The number of interleaved occurrences `a..b..a..b` of distinct numbers.
    pub fn count_1212(&self) -> usize {
        self.interleaved_pairs().len()
    }

    /// Whether the clan avoids the `(1,2,1,2)` pattern.
    pub fn avoids_1212(&self) -> bool {
        self.count_1212() == 0
    }

    /// All interleaved occurrences as pairs of canonical numbers `(a, b)` with
    /// positions `a1 < b1 < a2 < b2`, sorted by `(a1, b1)`.
    fn interleaved_pairs(&self) -> Vec<(u32, u32)> {
        let pairs = self.pair_positions();
        let mut out: Vec<((usize, usize), (u32, u32))> = Vec::new();
        for (ka, &(a1, a2)) in pairs.iter().enumerate() {
            for (kb, &(b1, b2)) in pairs.iter().enumerate().skip(ka + 1) {
                // canonical numbering orders pairs by first occurrence, so
                // only the orientation a1 < b1 can interleave
                if a1 < b1 && b1 < a2 && a2 < b2 {
                    out.push(((a1, b1), (ka as u32 + 1, kb as u32 + 1)));
                }
            }
        }
        out.sort();
        out.into_iter().map(|(_, nums)| nums).collect()
    }

    /// Swaps the second occurrences of numbers `a` and `b`, turning an
    /// interleaved `a..b..a..b` into the nested `a..b..b..a`.  The result has
    /// the same FS-pattern.  Errors unless the two numbers interleave.
    pub fn swap_second_occurrences(&self, a: u32, b: u32) -> Result<Clan, ClanError> {
        let pairs = self.pair_positions();
        let get = |k: u32| pairs.get(k as usize - 1).copied().ok_or(ClanError::NotInterleaved(a, b));
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        let (x1, x2) = get(x)?;
        let (y1, y2) = get(y)?;
        if !(x1 < y1 && y1 < x2 && x2 < y2) {
            return Err(ClanError::NotInterleaved(a, b));
        }
        let mut symbols = self.symbols.clone();
        symbols.swap(x2 - 1, y2 - 1);
        Clan::new(symbols, self.p, self.q)
    }

    /// Removes the leftmost interleaved occurrence (ordered by the first
    /// symbol's position, then the second's), swapping the two second
    /// occurrences.  The move preserves the FS-pattern, strictly increases
    /// the clan length, and strictly decreases `count_1212`.  Errors if the
    /// clan already avoids `(1,2,1,2)`.
    pub fn remove_1212_step(&self) -> Result<Clan, ClanError> {
        let occurrences = self.interleaved_pairs();
        let &(a, b) = occurrences.first().ok_or(ClanError::AlreadyAvoiding)?;
        self.swap_second_occurrences(a, b)
    }

    /// JSON rendering: `{"p": .., "q": .., "symbols": ["+", "1", "-", "1"]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "q": self.q,
            "symbols": self.symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        })
    }

    /// Parses the JSON rendering produced by [`Clan::to_json`].
    pub fn from_json(value: &Value) -> Result<Self, ClanError> {
        let obj = value
            .as_object()
            .ok_or_else(|| ClanError::InvalidJson("expected object".into()))?;
        let field = |name: &str| {
            obj.get(name)
                .ok_or_else(|| ClanError::InvalidJson(format!("missing field `{name}`")))
        };
        let p = field("p")?
            .as_u64()
            .ok_or_else(|| ClanError::InvalidJson("`p` must be a non-negative integer".into()))?
            as usize;
        let q = field("q")?
            .as_u64()
            .ok_or_else(|| ClanError::InvalidJson("`q` must be a non-negative integer".into()))?
            as usize;
        let arr = field("symbols")?
            .as_array()
            .ok_or_else(|| ClanError::InvalidJson("`symbols` must be an array".into()))?;
        let mut text = String::new();
        for v in arr {
            let s = v
                .as_str()
                .ok_or_else(|| ClanError::InvalidJson("symbols must be strings".into()))?;
            text.push_str(s);
            text.push(' ');
        }
        Clan::parse(&text, p, q)
    }
}

impl fmt::Display for Clan {
    /// Space-separated canonical tokens, e.g. `+ 1 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

impl fmt::Debug for Clan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Clan[{},{}]({})", self.p, self.q, self)
    }
}

/// One token of an FS-pattern.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FsToken {
    Plus,
    Minus,
    First,
    Second,
}

impl fmt::Display for FsToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FsToken::Plus => write!(f, "+"),
            FsToken::Minus => write!(f, "-"),
            FsToken::First => write!(f, "F"),
            FsToken::Second => write!(f, "S"),
        }
    }
}

/// A first-second pattern: the image of a clan under marking each number's
/// first occurrence `F` and second occurrence `S`.
///
/// Validity (checked at construction): `#F = #S`, and every prefix has at
/// least as many `F`s as `S`s.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FsPattern {
    tokens: Vec<FsToken>,
}

impl FsPattern {
    pub fn new(tokens: Vec<FsToken>) -> Result<Self, ClanError> {
        if tokens.is_empty() {
            return Err(ClanError::InvalidFsPattern("empty pattern".into()));
        }
        let mut open = 0isize;
        for (idx, t) in tokens.iter().enumerate() {
            match t {
                FsToken::First => open += 1,
                FsToken::Second => {
                    open -= 1;
                    if open < 0 {
                        return Err(ClanError::InvalidFsPattern(format!(
                            "prefix of length {} has more S than F",
                            idx + 1
                        )));
                    }
                }
                _ => {}
            }
        }
        if open != 0 {
            return Err(ClanError::InvalidFsPattern("unequal F and S counts".into()));
        }
        Ok(FsPattern { tokens })
    }

    /// Parses whitespace/comma-separated tokens `+ - F S` (parentheses
    /// tolerated, `F`/`S` case-insensitive).
    pub fn parse(text: &str) -> Result<Self, ClanError> {
        let cleaned: String = text.replace(['(', ')'], " ");
        let mut tokens = Vec::new();
        for tok in cleaned.split([' ', '\t', ',']).filter(|t| !t.is_empty()) {
            let t = match tok {
                "+" => FsToken::Plus,
                "-" => FsToken::Minus,
                "F" | "f" => FsToken::First,
                "S" | "s" => FsToken::Second,
                _ => return Err(ClanError::InvalidFsPattern(format!("bad token `{tok}`"))),
            };
            tokens.push(t);
        }
        FsPattern::new(tokens)
    }

    pub fn tokens(&self) -> &[FsToken] {
        &self.tokens
    }

    pub fn n(&self) -> usize {
        self.tokens.len()
    }

    /// The `(p, q)` of any clan with this pattern: `p = #plus + #F`,
    /// `q = #minus + #F`.
    pub fn pq(&self) -> (usize, usize) {
        let plus = self.tokens.iter().filter(|t| **t == FsToken::Plus).count();
        let minus = self.tokens.iter().filter(|t| **t == FsToken::Minus).count();
        let m = self.tokens.iter().filter(|t| **t == FsToken::First).count();
        (plus + m, minus + m)
    }
}

impl fmt::Display for FsPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.tokens.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// The unique `(1,2,1,2)`-avoiding clan with the given FS-pattern: moving left
/// to right, each `S` is mated to the nearest as-yet-unmated `F` to its left.
pub fn avoiding_clan_from_fs(pattern: &FsPattern) -> Clan {
    let mut stack: Vec<u32> = Vec::new();
    let mut next = 1u32;
    let mut symbols = Vec::with_capacity(pattern.n());
    for &t in pattern.tokens() {
        match t {
            FsToken::Plus => symbols.push(Symbol::Plus),
            FsToken::Minus => symbols.push(Symbol::Minus),
            FsToken::First => {
                stack.push(next);
                symbols.push(Symbol::Num(next));
                next += 1;
            }
            FsToken::Second => {
                let k = stack.pop().expect("prefix condition holds for a valid FS-pattern");
                symbols.push(Symbol::Num(k));
            }
        }
    }
    let (p, q) = pattern.pq();
    Clan::new(symbols, p, q).expect("construction from a valid FS-pattern is a valid clan")
}

/// All clans whose FS-pattern equals `pattern`, canonical and sorted.
pub fn clans_with_fs(pattern: &FsPattern) -> Vec<Clan> {
    fn go(
        tokens: &[FsToken],
        idx: usize,
        open: &mut Vec<u32>,
        next: u32,
        current: &mut Vec<Symbol>,
        out: &mut Vec<Vec<Symbol>>,
    ) {
        if idx == tokens.len() {
            out.push(current.clone());
            return;
        }
        match tokens[idx] {
            FsToken::Plus => {
                current.push(Symbol::Plus);
                go(tokens, idx + 1, open, next, current, out);
                current.pop();
            }
            FsToken::Minus => {
                current.push(Symbol::Minus);
                go(tokens, idx + 1, open, next, current, out);
                current.pop();
            }
            FsToken::First => {
                open.push(next);
                current.push(Symbol::Num(next));
                go(tokens, idx + 1, open, next + 1, current, out);
                current.pop();
                open.pop();
            }
            FsToken::Second => {
                // branch over every currently unmated number
                for k in 0..open.len() {
                    let num = open.remove(k);
                    current.push(Symbol::Num(num));
                    go(tokens, idx + 1, open, next, current, out);
                    current.pop();
                    open.insert(k, num);
                }
            }
        }
    }
    let mut raw = Vec::new();
    go(pattern.tokens(), 0, &mut Vec::new(), 1, &mut Vec::new(), &mut raw);
    let (p, q) = pattern.pq();
    let mut clans: Vec<Clan> = raw
        .into_iter()
        .map(|symbols| Clan::new(symbols, p, q).expect("valid by construction"))
        .collect();
    clans.sort();
    clans.dedup();
    clans
}

/// All `(p,q)`-clans, canonical and sorted.  Works by choosing the positions
/// of the matched pairs (a perfect matching) and then the sign placements;
/// the supported envelope is `p + q <= 12`.
pub fn enumerate_clans(p: usize, q: usize) -> Vec<Clan> {
    let n = p + q;
    assert!(n >= 1, "need p + q >= 1");
    assert!(n <= 12, "clan enumeration envelope is p + q <= 12");
    let mut out = Vec::new();
    for m in 0..=p.min(q) {
        for positions in combinations(n, 2 * m) {
            for matching in perfect_matchings(&positions) {
                let rest: Vec<usize> = (1..=n).filter(|i| !positions.contains(i)).collect();
                for plus_positions in combinations_of(&rest, p - m) {
                    let mut symbols = vec![Symbol::Minus; n];
                    for (num, &(a, b)) in matching.iter().enumerate() {
                        symbols[a - 1] = Symbol::Num(num as u32 + 1);
                        symbols[b - 1] = Symbol::Num(num as u32 + 1);
                    }
                    for &i in &plus_positions {
                        symbols[i - 1] = Symbol::Plus;
                    }
                    out.push(Clan::new(symbols, p, q).expect("valid by construction"));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// All `k`-subsets of `{1, ..., n}`, each ascending.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    combinations_of(&(1..=n).collect::<Vec<_>>(), k)
}

fn combinations_of(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - current.len() {
                break;
            }
            current.push(items[i]);
            go(items, k, i + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All perfect matchings of an even-sized, ascending position list.  The first
/// free position is paired with every later one, so each matching shows up
/// exactly once.
fn perfect_matchings(positions: &[usize]) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &[usize], current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(current.clone());
            return;
        }
        let first = free[0];
        for k in 1..free.len() {
            let partner = free[k];
            let rest: Vec<usize> = free[1..].iter().copied().filter(|&x| x != partner).collect();
            current.push((first, partner));
            go(&rest, current, out);
            current.pop();
        }
    }
    if positions.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    go(positions, &mut Vec::new(), &mut out);
    out
}
