//! A brute-force verification oracle for Schubert products, independent of
//! all clan machinery: exact sparse integer polynomials, divided differences,
//! Schubert polynomials from the staircase monomial, and coefficient
//! extraction for `S_u · S_v`.
//!
//! The divided difference `∂_i f = (f - s_i·f) / (x_i - x_{i+1})` is computed
//! monomial by monomial through the geometric-sum identity
//! `∂_i(x_i^a x_{i+1}^b) = ± Σ_{r+s=|a-b|-1} x_i^{min+r} x_{i+1}^{min+s}`,
//! so no division (and no rational intermediate) ever happens.
//!
//! Coefficient extraction rests on `∂_w S_x = S_{x w^{-1}}` when the lengths
//! subtract and `0` otherwise: for homogeneous `f` of degree `l(w)`, the
//! constant term of `∂_w f` is the coefficient of `S_w` in `f`.

use std::collections::BTreeMap;
use std::fmt;

use crate::permutation::Permutation;

/// An exact sparse integer polynomial in `nvars` variables, keyed by full
/// exponent vectors.  Coefficient arithmetic is overflow-checked and panics
/// on overflow; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SchubertPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl SchubertPoly {
    pub fn zero(nvars: usize) -> Self {
        SchubertPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        SchubertPoly::monomial(nvars, vec![0; nvars], 1)
    }

    /// A single term `coeff * x^exponents`.  Panics unless the exponent
    /// vector has length `nvars`.
    pub fn monomial(nvars: usize, exponents: Vec<u32>, coeff: i64) -> Self {
        assert_eq!(exponents.len(), nvars, "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exponents, coeff);
        }
        SchubertPoly { nvars, terms }
    }

    /// The variable `x_i`, 1-indexed.
    pub fn variable(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "variable index {i} out of range");
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        SchubertPoly::monomial(nvars, exps, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of an exponent vector (zero if absent).
    pub fn coeff(&self, exponents: &[u32]) -> i64 {
        assert_eq!(exponents.len(), self.nvars, "exponent vector length mismatch");
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> i64 {
        self.coeff(&vec![0; self.nvars])
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Whether every stored term has total degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    fn add_term(&mut self, exponents: Vec<u32>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(coeff).expect("coefficient overflow");
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c.checked_neg().expect("coefficient overflow"));
        }
        out
    }

    /// Exact product.  Panics on variable-count mismatch or overflow.
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = SchubertPoly::zero(self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exps: Vec<u32> = ea
                    .iter()
                    .zip(eb.iter())
                    .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                    .collect();
                out.add_term(exps, ca.checked_mul(cb).expect("coefficient overflow"));
            }
        }
        out
    }

    /// The polynomial with variables `x_i` and `x_{i+1}` exchanged.
    pub fn swap_variables(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.nvars, "variable index {i} out of range");
        let mut out = SchubertPoly::zero(self.nvars);
        for (e, &c) in &self.terms {
            let mut exps = e.clone();
            exps.swap(i - 1, i);
            out.add_term(exps, c);
        }
        out
    }

    /// The divided difference `∂_i f = (f - s_i·f) / (x_i - x_{i+1})`,
    /// computed per monomial without division.  Panics unless
    /// `1 <= i <= nvars - 1`.
    pub fn divided_difference(&self, i: usize) -> Self {
        assert!(i >= 1 && i < self.nvars, "divided difference index {i} out of range");
        let mut out = SchubertPoly::zero(self.nvars);
        for (e, &c) in &self.terms {
            let a = e[i - 1];
            let b = e[i];
            if a == b {
                continue;
            }
            let (low, diff, sign) = if a > b {
                (b, a - b, c)
            } else {
                (a, b - a, c.checked_neg().expect("coefficient overflow"))
            };
            for r in 0..diff {
                let mut exps = e.clone();
                exps[i - 1] = low + r;
                exps[i] = low + (diff - 1 - r);
                out.add_term(exps, sign);
            }
        }
        out
    }

    /// Applies `∂_w` along any reduced word of `w` (the result is
    /// word-independent).  Indices of `w` must fit inside `nvars`.
    pub fn divided_difference_word(&self, w: &Permutation) -> Self {
        assert!(w.n() <= self.nvars, "permutation rank exceeds variable count");
        let mut out = self.clone();
        // ∂_{i_1}(∂_{i_2}(...∂_{i_k}(f))) applies the last letter first
        for &i in w.canonical_reduced_word().iter().rev() {
            out = out.divided_difference(i);
        }
        out
    }
}

impl fmt::Display for SchubertPoly {
    /// Graded-lexicographic term order, e.g. `x1^2*x2 + 3*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by_key(|e| (e.iter().sum::<u32>(), (*e).clone()));
        let mut first = true;
        for e in keys {
            let c = self.terms[e];
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.unsigned_abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(k, &p)| if p == 1 { format!("x{}", k + 1) } else { format!("x{}^{}", k + 1, p) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SchubertPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchubertPoly[{} vars]({self})", self.nvars)
    }
}

/// The staircase monomial `x_1^{N-1} x_2^{N-2} ... x_{N-1}`, the Schubert
/// polynomial of the longest element of `S_N`.
pub fn staircase(nvars: usize) -> SchubertPoly {
    assert!(nvars >= 1, "need at least one variable");
    let exps: Vec<u32> = (0..nvars).map(|k| (nvars - 1 - k) as u32).collect();
    SchubertPoly::monomial(nvars, exps, 1)
}

/// The Schubert polynomial of `w` computed in `nvars >= w.n()` variables:
/// divided differences along a reduced word of `w^{-1} · w_0(N)` applied to
/// the staircase monomial of `S_N`.
///
/// The reduced word is chosen in two reduced blocks so that intermediates
/// stay small: first strip the staircase down to the embedded staircase of
/// `S_n` (all intermediates are single monomials), then peel a reduced word
/// of `w^{-1} · w_0(n)` inside `S_n`.  By reduced-word independence the
/// result equals the one-shot computation, and by stability it does not
/// depend on `nvars` beyond zero padding.
pub fn schubert_polynomial(w: &Permutation, nvars: usize) -> SchubertPoly {
    let n = w.n();
    assert!(n <= nvars, "cannot embed S_{n} into {nvars} variables");
    let mut f = staircase(nvars);
    // w_0(j) · (s_1 s_2 ... s_{j-1}) = w_0(j-1), one variable at a time
    for j in (n + 1..=nvars).rev() {
        for i in 1..j {
            f = f.divided_difference(i);
        }
    }
    let tail = w.inverse().compose(&Permutation::longest(n));
    for &i in tail.canonical_reduced_word().iter().rev() {
        f = f.divided_difference(i);
    }
    f
}

/// The structure constant `c_{u,v}^w` of `S_u · S_v`, extracted from the
/// exact polynomial product as the constant term of `∂_w (S_u · S_v)`.
/// All three permutations must share one rank `n`; the product is computed
/// in `2n` variables.
pub fn oracle_constant(u: &Permutation, v: &Permutation, w: &Permutation) -> u64 {
    let n = u.n();
    assert_eq!(v.n(), n, "rank mismatch in oracle");
    assert_eq!(w.n(), n, "rank mismatch in oracle");
    let product = schubert_polynomial(u, 2 * n).multiply(&schubert_polynomial(v, 2 * n));
    let c = product.divided_difference_word(&w.embed(2 * n)).constant_term();
    assert!(c >= 0, "negative structure constant from the oracle");
    c as u64
}

/// The full expansion of `S_u · S_v` over `w ∈ S_n` with
/// `l(w) = l(u) + l(v)`: pairs `(w, coefficient)` with positive coefficient,
/// sorted by one-line notation.
pub fn oracle_expand(u: &Permutation, v: &Permutation) -> Vec<(Permutation, u64)> {
    let n = u.n();
    assert_eq!(v.n(), n, "rank mismatch in oracle");
    let d = u.length() + v.length();
    if d > n * (n - 1) / 2 {
        return Vec::new();
    }
    let product = schubert_polynomial(u, 2 * n).multiply(&schubert_polynomial(v, 2 * n));
    let mut out = Vec::new();
    for w in Permutation::enumerate_by_length(n, d) {
        let c = product.divided_difference_word(&w.embed(2 * n)).constant_term();
        assert!(c >= 0, "negative structure constant from the oracle");
        if c > 0 {
            out.push((w, c as u64));
        }
    }
    out
}
