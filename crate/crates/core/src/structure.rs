//! The multiplicity-free product rule for `(p,q)`-pairs: `c_{u,v}^w = 1`
//! exactly when `l(w) = l(u) + l(v)` and the monoid action of `w` carries the
//! clan `γ(u,v)` to the open clan, and `0` otherwise.  Incomparable pairs have
//! all constants zero and are reported as an empty expansion rather than an
//! error, since that zero is a meaningful answer.

use serde_json::{json, Value};

use crate::clan::Clan;
use crate::permutation::Permutation;
use crate::richardson::{block_shuffles, clan_of_pair, PairError, PqPair};
use crate::schubert::oracle_expand;
use crate::weak_order::{act_permutation, open_clan};

/// The Schubert-basis expansion of `S_u · S_v` for a `(p,q)`-pair `(u, v)`.
///
/// Every coefficient is 1 (the rule is multiplicity-free) and every term has
/// `l(w) = l(u) + l(v)`.  `clan` is `None` exactly when `w_0·u` and `v` are
/// incomparable, in which case the expansion is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductExpansion {
    pub p: usize,
    pub q: usize,
    pub u: Permutation,
    pub v: Permutation,
    pub clan: Option<Clan>,
    /// `(w, coefficient)` sorted by one-line notation.
    pub terms: Vec<(Permutation, u64)>,
}

impl ProductExpansion {
    pub fn is_comparable(&self) -> bool {
        self.clan.is_some()
    }

    /// JSON rendering:
    /// `{"u": .., "v": .., "p": .., "q": .., "clan": .., "terms": [{"w": .., "coeff": 1}, ..]}`
    /// with `clan` null for incomparable pairs.
    pub fn to_json(&self) -> Value {
        json!({
            "u": self.u.to_string(),
            "v": self.v.to_string(),
            "p": self.p,
            "q": self.q,
            "clan": self.clan.as_ref().map(|c| c.to_string()),
            "terms": self.terms.iter().map(|(w, c)| json!({"w": w.to_string(), "coeff": c})).collect::<Vec<_>>(),
        })
    }

    /// Parses the JSON rendering produced by [`ProductExpansion::to_json`].
    pub fn from_json(value: &Value) -> Result<Self, String> {
        let obj = value.as_object().ok_or("expected object")?;
        let get = |name: &str| obj.get(name).ok_or_else(|| format!("missing field `{name}`"));
        let p = get("p")?.as_u64().ok_or("`p` must be an integer")? as usize;
        let q = get("q")?.as_u64().ok_or("`q` must be an integer")? as usize;
        let u = Permutation::parse(get("u")?.as_str().ok_or("`u` must be a string")?)
            .map_err(|e| e.to_string())?;
        let v = Permutation::parse(get("v")?.as_str().ok_or("`v` must be a string")?)
            .map_err(|e| e.to_string())?;
        let clan = match get("clan")? {
            Value::Null => None,
            Value::String(s) => Some(Clan::parse(s, p, q).map_err(|e| e.to_string())?),
            _ => return Err("`clan` must be a string or null".into()),
        };
        let mut terms = Vec::new();
        for t in get("terms")?.as_array().ok_or("`terms` must be an array")? {
            let w = Permutation::parse(t["w"].as_str().ok_or("term `w` must be a string")?)
                .map_err(|e| e.to_string())?;
            let c = t["coeff"].as_u64().ok_or("term `coeff` must be an integer")?;
            terms.push((w, c));
        }
        Ok(ProductExpansion { p, q, u, v, clan, terms })
    }
}

/// The structure constant `c_{u,v}^w` by the clan rule.  Errors when `(u,v)`
/// is not a `(p,q)`-pair; an incomparable pair gives 0 for every `w`.
pub fn structure_constant(
    u: &Permutation,
    v: &Permutation,
    w: &Permutation,
    p: usize,
    q: usize,
) -> Result<u64, PairError> {
    if w.n() != p + q {
        return Err(PairError::RankMismatch);
    }
    let pair = PqPair::new(p, q, u.clone(), v.clone())?;
    let clan = match clan_of_pair(&pair) {
        Ok(clan) => clan,
        Err(PairError::Incomparable) => return Ok(0),
        Err(e) => return Err(e),
    };
    if w.length() != u.length() + v.length() {
        return Ok(0);
    }
    Ok(u64::from(act_permutation(w, &clan) == open_clan(p, q)))
}

/// Expands `S_u · S_v` over the Schubert basis by the clan rule: candidates
/// are the permutations of length `l(u) + l(v)`, and the terms are those
/// whose action carries `γ(u,v)` to the open clan.
pub fn expand_product(
    u: &Permutation,
    v: &Permutation,
    p: usize,
    q: usize,
) -> Result<ProductExpansion, PairError> {
    let pair = PqPair::new(p, q, u.clone(), v.clone())?;
    let n = p + q;
    let clan = match clan_of_pair(&pair) {
        Ok(clan) => clan,
        Err(PairError::Incomparable) => {
            return Ok(ProductExpansion {
                p,
                q,
                u: u.clone(),
                v: v.clone(),
                clan: None,
                terms: Vec::new(),
            });
        }
        Err(e) => return Err(e),
    };
    let target = open_clan(p, q);
    let d = u.length() + v.length();
    let terms = Permutation::enumerate_by_length(n, d)
        .into_iter()
        .filter(|w| act_permutation(w, &clan) == target)
        .map(|w| (w, 1))
        .collect();
    Ok(ProductExpansion { p, q, u: u.clone(), v: v.clone(), clan: Some(clan), terms })
}

/// The set of permutations indexing the Schubert expansion of the clan's
/// orbit-closure class: all `w` with `l(w) = codim(γ)` whose action carries
/// `γ` to the open clan, where `codim(γ) = n(n-1)/2 - orbit_dimension(γ)`.
pub fn expansion_support(clan: &Clan) -> Vec<Permutation> {
    let n = clan.n();
    let codim = n * (n - 1) / 2 - clan.orbit_dimension();
    let target = open_clan(clan.p(), clan.q());
    Permutation::enumerate_by_length(n, codim)
        .into_iter()
        .filter(|w| act_permutation(w, clan) == target)
        .collect()
}

/// One disagreement between the clan rule and the polynomial oracle.
#[derive(Clone, Debug)]
pub struct PairMismatch {
    pub p: usize,
    pub q: usize,
    pub u: Permutation,
    pub v: Permutation,
    pub rule_terms: Vec<(Permutation, u64)>,
    pub oracle_terms: Vec<(Permutation, u64)>,
}

/// The outcome of checking the clan rule against the polynomial oracle over
/// every `(p,q)`-pair with `p + q = n`.
#[derive(Clone, Debug)]
pub struct OracleCrossCheck {
    pub n: usize,
    pub pairs_checked: usize,
    pub comparable_pairs: usize,
    pub mismatches: Vec<PairMismatch>,
    /// Oracle coefficients larger than 1 seen for comparable pairs, as
    /// `(p, q, u, v, w, coeff)`; the rule is multiplicity-free, so any entry
    /// here is a failure.
    pub multiplicity_violations: Vec<(usize, usize, Permutation, Permutation, Permutation, u64)>,
}

impl OracleCrossCheck {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.multiplicity_violations.is_empty()
    }
}

/// Compares [`expand_product`] against [`oracle_expand`] term for term, over
/// every `(p,q)` with `p + q = n` and every `(p,q)`-pair (comparable or not:
/// incomparable pairs must come out empty on both sides).
pub fn cross_check_against_oracle(n: usize) -> OracleCrossCheck {
    let mut report = OracleCrossCheck {
        n,
        pairs_checked: 0,
        comparable_pairs: 0,
        mismatches: Vec::new(),
        multiplicity_violations: Vec::new(),
    };
    for p in 0..=n {
        let q = n - p;
        for u in block_shuffles(n, q) {
            for v in block_shuffles(n, p) {
                report.pairs_checked += 1;
                let expansion = expand_product(&u, &v, p, q).expect("generated a valid (p,q)-pair");
                if expansion.is_comparable() {
                    report.comparable_pairs += 1;
                }
                let oracle = oracle_expand(&u, &v);
                for &(ref w, c) in &oracle {
                    if c > 1 {
                        report
                            .multiplicity_violations
                            .push((p, q, u.clone(), v.clone(), w.clone(), c));
                    }
                }
                if expansion.terms != oracle {
                    report.mismatches.push(PairMismatch {
                        p,
                        q,
                        u: u.clone(),
                        v: v.clone(),
                        rule_terms: expansion.terms.clone(),
                        oracle_terms: oracle,
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn clan(text: &str, p: usize, q: usize) -> Clan {
        Clan::parse(text, p, q).unwrap()
    }

    #[test]
    fn structure_constant_table_rows() {
        let u = perm("31425");
        let v = perm("14253");
        let w_one = Permutation::from_word(5, &[2, 1, 3, 2, 3, 4]);
        assert_eq!(structure_constant(&u, &v, &w_one, 3, 2).unwrap(), 1);
        let w_zero = Permutation::from_word(5, &[4, 3, 2, 1, 2, 3]);
        assert_eq!(structure_constant(&u, &v, &w_zero, 3, 2).unwrap(), 0);
        // wrong degree is always zero
        assert_eq!(structure_constant(&u, &v, &Permutation::identity(5), 3, 2).unwrap(), 0);
    }

    #[test]
    fn structure_constant_rejects_non_pairs() {
        let u = perm("21345");
        let v = perm("14253");
        assert!(matches!(
            structure_constant(&u, &v, &Permutation::identity(5), 3, 2),
            Err(PairError::NotPqPair(_))
        ));
    }

    #[test]
    fn expand_product_table_example() {
        let expansion = expand_product(&perm("31425"), &perm("14253"), 3, 2).unwrap();
        assert_eq!(expansion.clan, Some(clan("+ - + - +", 3, 2)));
        assert_eq!(expansion.terms.len(), 8);
        assert!(expansion.terms.iter().all(|&(_, c)| c == 1));
        assert!(expansion
            .terms
            .iter()
            .all(|(w, _)| w.length() == 6));
        // the action of every term lands on the open clan
        for (w, _) in &expansion.terms {
            assert_eq!(
                act_permutation(w, expansion.clan.as_ref().unwrap()),
                open_clan(3, 2)
            );
        }
    }

    #[test]
    fn expand_product_identity_pair() {
        let id = Permutation::identity(2);
        let expansion = expand_product(&id, &id, 1, 1).unwrap();
        assert_eq!(expansion.terms, vec![(id, 1)]);
    }

    #[test]
    fn expand_product_incomparable_is_empty() {
        let expansion = expand_product(&perm("31425"), &perm("41235"), 3, 2).unwrap();
        assert!(!expansion.is_comparable());
        assert!(expansion.terms.is_empty());
        // and the oracle agrees that everything vanishes
        assert!(oracle_expand(&perm("31425"), &perm("41235")).is_empty());
    }

    #[test]
    fn expansion_support_examples() {
        let top = open_clan(3, 2);
        assert_eq!(expansion_support(&top), vec![Permutation::identity(5)]);
        let start = clan("+ - + - +", 3, 2);
        let support = expansion_support(&start);
        assert_eq!(support.len(), 8);
        let expansion = expand_product(&perm("31425"), &perm("14253"), 3, 2).unwrap();
        let terms: Vec<Permutation> = expansion.terms.into_iter().map(|(w, _)| w).collect();
        assert_eq!(support, terms);
    }

    #[test]
    fn expansion_terms_dominate_both_factors() {
        // support property: every term lies above u and v in Bruhat order,
        // over all (p,q)-pairs of rank 4 plus the reference rank-5 pair
        let mut pairs = vec![(perm("31425"), perm("14253"), 3, 2)];
        for p in 0..=4 {
            let q = 4 - p;
            for u in block_shuffles(4, q) {
                for v in block_shuffles(4, p) {
                    pairs.push((u.clone(), v, p, q));
                }
            }
        }
        for (u, v, p, q) in pairs {
            let expansion = expand_product(&u, &v, p, q).unwrap();
            for (w, _) in &expansion.terms {
                assert!(u.bruhat_leq_rank(w), "u={u} w={w}");
                assert!(v.bruhat_leq_rank(w), "v={v} w={w}");
            }
        }
    }

    #[test]
    fn cross_check_tiny_rank() {
        let report = cross_check_against_oracle(2);
        assert!(report.is_clean());
        // (p,q) in {(0,2),(1,1),(2,0)}: 1 + 4 + 1 pairs
        assert_eq!(report.pairs_checked, 6);
    }

    #[test]
    fn json_round_trip() {
        let expansion = expand_product(&perm("31425"), &perm("14253"), 3, 2).unwrap();
        let value = expansion.to_json();
        assert_eq!(ProductExpansion::from_json(&value).unwrap(), expansion);

        let empty = expand_product(&perm("31425"), &perm("41235"), 3, 2).unwrap();
        let value = empty.to_json();
        assert_eq!(value["clan"], Value::Null);
        assert_eq!(ProductExpansion::from_json(&value).unwrap(), empty);
    }
}
