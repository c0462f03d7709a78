//! Sunflowers (Erdős–Rado) and quasi-sunflowers (Rossman) inside unate
//! DNF formulas.
//!
//! A quasi-sunflower relaxes the disjoint-petal requirement of a sunflower:
//! the petals only need to be jointly satisfied with probability at least
//! `1 - e^-gamma` under a uniform assignment. Every object returned here is
//! re-verified against the formula before it is handed out: the stored core
//! is the exact intersection of the chosen terms and the stored gamma is
//! `-ln` of the exact petal-zero probability.

use std::collections::{BTreeMap, BTreeSet};

use crate::bias::BiasValue;
use crate::bitset::VarSet;
use crate::error::{Error, Result};
use crate::formula::{DnfFormula, Literal, Term, DEFAULT_BIAS_SUPPORT_CAP};

/// A possibly-empty set of literals; used for sunflower cores.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LiteralSet {
    pos: VarSet,
    neg: VarSet,
}

impl LiteralSet {
    pub fn empty(n: usize) -> Self {
        LiteralSet {
            pos: VarSet::empty(n),
            neg: VarSet::empty(n),
        }
    }

    pub fn of_term(t: &Term) -> Self {
        LiteralSet {
            pos: t.positives().clone(),
            neg: t.negatives().clone(),
        }
    }

    pub fn positives(&self) -> &VarSet {
        &self.pos
    }

    pub fn negatives(&self) -> &VarSet {
        &self.neg
    }

    pub fn width(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn is_subset_of_term(&self, t: &Term) -> bool {
        self.pos.is_subset_of(t.positives()) && self.neg.is_subset_of(t.negatives())
    }

    pub fn intersect_term(&self, t: &Term) -> Self {
        LiteralSet {
            pos: self.pos.intersection(t.positives()),
            neg: self.neg.intersection(t.negatives()),
        }
    }

    /// `None` when empty (an empty conjunction is the constant 1).
    pub fn to_term(&self) -> Option<Term> {
        Term::from_sets(self.pos.clone(), self.neg.clone())
    }

    pub fn literals(&self) -> Vec<Literal> {
        let mut lits: Vec<Literal> = self
            .pos
            .iter()
            .map(Literal::pos)
            .chain(self.neg.iter().map(Literal::neg))
            .collect();
        lits.sort();
        lits
    }

    /// The term with the literals of `self` removed; `None` if nothing is left.
    pub fn strip_from(&self, t: &Term) -> Option<Term> {
        Term::from_sets(
            t.positives().difference(&self.pos),
            t.negatives().difference(&self.neg),
        )
    }
}

impl std::fmt::Debug for LiteralSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.to_term() {
            Some(t) => write!(f, "{t:?}"),
            None => write!(f, "{{}}"),
        }
    }
}

/// `gamma(m) = (1/5) * (m / w!)^(1/w)`: the quasi-sunflower guarantee for a
/// unate width-`w` formula with `m` terms. The factorial enters through its
/// logarithm so large `w` cannot overflow.
pub fn gamma_bound(m: usize, w: usize) -> f64 {
    assert!(m >= 1 && w >= 1, "gamma_bound needs m >= 1, w >= 1");
    let ln_w_factorial: f64 = (1..=w).map(|k| (k as f64).ln()).sum();
    (((m as f64).ln() - ln_w_factorial) / w as f64).exp() / 5.0
}

// ---------------------------------------------------------------------------
// Exact sunflowers
// ---------------------------------------------------------------------------

/// A size-`k` sunflower: pairwise intersections of the chosen terms all
/// equal the core, and every petal is non-empty.
#[derive(Clone, Debug)]
pub struct Sunflower {
    pub term_indices: Vec<usize>,
    pub core: LiteralSet,
}

impl Sunflower {
    /// Check the defining property against the formula.
    pub fn verify(&self, f: &DnfFormula) -> bool {
        let k = self.term_indices.len();
        if k < 3 {
            return false;
        }
        let terms: Vec<&Term> = self.term_indices.iter().map(|&i| &f.terms()[i]).collect();
        for (a, ta) in terms.iter().enumerate() {
            // Core strictly contained in each term.
            if !self.core.is_subset_of_term(ta) || self.core.width() >= ta.width() {
                return false;
            }
            for tb in terms.iter().skip(a + 1) {
                let inter = LiteralSet::of_term(ta).intersect_term(tb);
                if inter != self.core {
                    return false;
                }
            }
        }
        true
    }
}

/// Search for a size-`k` sunflower (`k >= 3`) in a unate formula, following
/// the classical inductive argument: take a greedy maximal pairwise-disjoint
/// subfamily; if it is too small, recurse on the terms containing the most
/// frequent variable. Succeeds whenever `m > w! (k-1)^w`.
pub fn find_sunflower(f: &DnfFormula, k: usize) -> Result<Option<Sunflower>> {
    f.check_unate()?;
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "sunflower size k must be >= 3, got {k}"
        )));
    }
    let items: Vec<(usize, VarSet)> = f
        .terms()
        .iter()
        .enumerate()
        .map(|(i, t)| (i, t.vars()))
        .collect();
    Ok(search_sunflower(&items, k, f.n()).map(|(mut indices, core_vars)| {
        indices.sort_unstable();
        // Recover literal polarities for the core from any containing term.
        let mut core = LiteralSet::empty(f.n());
        if let Some(&i0) = indices.first() {
            core = LiteralSet {
                pos: f.terms()[i0].positives().intersection(&core_vars),
                neg: f.terms()[i0].negatives().intersection(&core_vars),
            };
        }
        let s = Sunflower {
            term_indices: indices,
            core,
        };
        debug_assert!(s.verify(f));
        s
    }))
}

fn search_sunflower(
    items: &[(usize, VarSet)],
    k: usize,
    n: usize,
) -> Option<(Vec<usize>, VarSet)> {
    if items.len() < k {
        return None;
    }
    // Greedy maximal pairwise-disjoint subfamily, in index order.
    let mut chosen: Vec<usize> = Vec::new();
    let mut union = VarSet::empty(n);
    for (orig, set) in items {
        if set.is_disjoint(&union) {
            chosen.push(*orig);
            union.union_in_place(set);
            if chosen.len() == k {
                return Some((chosen, VarSet::empty(n)));
            }
        }
    }
    // Too few disjoint terms: some variable is frequent; recurse on its terms.
    let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, set) in items {
        for v in set.iter() {
            *freq.entry(v).or_insert(0) += 1;
        }
    }
    let (&v, _) = freq
        .iter()
        .max_by_key(|&(&v, &c)| (c, std::cmp::Reverse(v)))?;
    let sub: Vec<(usize, VarSet)> = items
        .iter()
        .filter(|(_, s)| s.contains(v))
        .filter_map(|(i, s)| {
            let mut s2 = s.clone();
            s2.remove(v);
            if s2.is_empty() {
                None
            } else {
                Some((*i, s2))
            }
        })
        .collect();
    let (indices, mut core) = search_sunflower(&sub, k, n)?;
    core.insert(v);
    Some((indices, core))
}

// ---------------------------------------------------------------------------
// Quasi-sunflowers
// ---------------------------------------------------------------------------

/// A verified quasi-sunflower: `core` is the exact intersection of the
/// chosen terms and `gamma = -ln Pr[all petals unsatisfied]`, with the
/// probability computed exactly.
#[derive(Clone, Debug)]
pub struct QuasiSunflower {
    pub term_indices: Vec<usize>,
    pub core: LiteralSet,
    pub gamma: f64,
    pub petal_zero_prob: BiasValue,
}

impl QuasiSunflower {
    pub fn k(&self) -> usize {
        self.term_indices.len()
    }

    /// The petal formula: each chosen term with the core stripped off.
    pub fn petal_formula(&self, f: &DnfFormula) -> DnfFormula {
        let petals: Vec<Term> = self
            .term_indices
            .iter()
            .map(|&i| {
                self.core
                    .strip_from(&f.terms()[i])
                    .expect("petals are non-empty in a minimal representation")
            })
            .collect();
        DnfFormula::new(f.n(), petals)
    }

    /// Re-verify the defining property: exact core, non-empty petals, and
    /// the stored petal-zero probability.
    pub fn verify(&self, f: &DnfFormula, bias_cap: usize) -> Result<bool> {
        if self.k() < 2 {
            return Ok(false);
        }
        let mut inter = LiteralSet::of_term(&f.terms()[self.term_indices[0]]);
        for &i in &self.term_indices[1..] {
            inter = inter.intersect_term(&f.terms()[i]);
        }
        if inter != self.core {
            return Ok(false);
        }
        if self
            .term_indices
            .iter()
            .any(|&i| self.core.strip_from(&f.terms()[i]).is_none())
        {
            return Ok(false);
        }
        let zero = self
            .petal_formula(f)
            .exact_bias_capped(bias_cap)?
            .complement();
        Ok(zero == self.petal_zero_prob && zero > BiasValue::ZERO)
    }
}

/// Search outcome: either the first candidate (in the deterministic scan
/// order) whose gamma meets the goal, or the best one found.
#[derive(Clone, Debug)]
pub enum QuasiSearch {
    MeetsGoal(QuasiSunflower),
    BelowGoal(QuasiSunflower),
}

impl QuasiSearch {
    pub fn quasi_sunflower(&self) -> &QuasiSunflower {
        match self {
            QuasiSearch::MeetsGoal(q) | QuasiSearch::BelowGoal(q) => q,
        }
    }

    pub fn into_quasi_sunflower(self) -> QuasiSunflower {
        match self {
            QuasiSearch::MeetsGoal(q) | QuasiSearch::BelowGoal(q) => q,
        }
    }

    pub fn meets_goal(&self) -> bool {
        matches!(self, QuasiSearch::MeetsGoal(_))
    }
}

pub fn find_quasi_sunflower(f: &DnfFormula, gamma_goal: f64) -> Result<Option<QuasiSearch>> {
    find_quasi_sunflower_capped(f, gamma_goal, DEFAULT_BIAS_SUPPORT_CAP)
}

/// Candidate cores are the empty set plus all pairwise intersections of
/// terms. For each candidate the family is *every* term containing it (more
/// petals only make the petal-zero event rarer), and the core is then
/// re-tightened to the family's exact intersection, which shrinks each petal
/// and lowers the petal-zero probability further. Ties between equal-gamma
/// candidates go to larger k, then the lexicographically smallest index set.
pub fn find_quasi_sunflower_capped(
    f: &DnfFormula,
    gamma_goal: f64,
    bias_cap: usize,
) -> Result<Option<QuasiSearch>> {
    f.check_unate()?;
    let m = f.size();
    if m < 2 {
        return Ok(None);
    }

    let mut candidates: BTreeSet<LiteralSet> = BTreeSet::new();
    candidates.insert(LiteralSet::empty(f.n()));
    for i in 0..m {
        let ti = LiteralSet::of_term(&f.terms()[i]);
        for j in (i + 1)..m {
            candidates.insert(ti.intersect_term(&f.terms()[j]));
        }
    }

    let mut seen_families: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut best: Option<QuasiSunflower> = None;
    for cand in candidates {
        let family: Vec<usize> = (0..m)
            .filter(|&i| cand.is_subset_of_term(&f.terms()[i]))
            .collect();
        if family.len() < 2 || !seen_families.insert(family.clone()) {
            continue;
        }
        // Exact core of the family; contains the candidate by construction.
        let mut core = LiteralSet::of_term(&f.terms()[family[0]]);
        for &i in &family[1..] {
            core = core.intersect_term(&f.terms()[i]);
        }
        let petals: Vec<Term> = family
            .iter()
            .map(|&i| {
                core.strip_from(&f.terms()[i])
                    .expect("petals are non-empty in a minimal representation")
            })
            .collect();
        let petal_formula = DnfFormula::new(f.n(), petals);
        let zero = petal_formula.exact_bias_capped(bias_cap)?.complement();
        debug_assert!(zero > BiasValue::ZERO, "unate petals always miss somewhere");
        let q = QuasiSunflower {
            term_indices: family,
            core,
            gamma: -zero.ln(),
            petal_zero_prob: zero,
        };
        debug_assert!(q.verify(f, bias_cap).unwrap_or(false));
        if q.gamma >= gamma_goal {
            return Ok(Some(QuasiSearch::MeetsGoal(q)));
        }
        let better = match &best {
            None => true,
            Some(b) => {
                // Smaller zero-probability means larger gamma; compared exactly.
                (q.petal_zero_prob, std::cmp::Reverse(q.k()), &q.term_indices)
                    < (b.petal_zero_prob, std::cmp::Reverse(b.k()), &b.term_indices)
            }
        };
        if better {
            best = Some(q);
        }
    }
    Ok(best.map(QuasiSearch::BelowGoal))
}
