//! Canonical DNF formulas and their exact oracles.
//!
//! A [`DnfFormula`] is kept in minimal representation at all times: no
//! contradictory or empty terms, no term subsuming another, terms sorted in
//! a fixed order. The constant-1 formula (which would need an empty term) is
//! carried as an explicit flag instead. Canonical form makes formulas usable
//! as memoization keys, which the exact bias and decision-tree-depth
//! recursions rely on.

use std::collections::HashMap;

use crate::bias::BiasValue;
use crate::bitset::VarSet;
use crate::error::{Error, Result};

/// Support cap for the exact (Shannon expansion) bias computation.
pub const DEFAULT_BIAS_SUPPORT_CAP: usize = 26;
/// Entry cap for the Shannon-expansion memo table.
pub const BIAS_MEMO_CAP: usize = 1 << 26;
/// Support cap for exact decision-tree depth.
pub const DEFAULT_DT_SUPPORT_CAP: usize = 16;
/// Variable cap for full truth-table enumeration (sandwich checks, covers).
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

/// A variable with a polarity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }
}

/// Why a raw literal list does not form a valid term.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TermDefect {
    /// No literals: the term is the constant 1.
    Empty,
    /// Some variable occurs with both polarities: the term is the constant 0.
    Contradictory { var: usize },
}

/// A conjunction of literals, stored as positive/negative variable masks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pos: VarSet,
    neg: VarSet,
}

impl Term {
    pub fn new(n: usize, literals: &[Literal]) -> std::result::Result<Self, TermDefect> {
        let mut pos = VarSet::empty(n);
        let mut neg = VarSet::empty(n);
        for lit in literals {
            debug_assert!(lit.var < n);
            if lit.positive {
                if neg.contains(lit.var) {
                    return Err(TermDefect::Contradictory { var: lit.var });
                }
                pos.insert(lit.var);
            } else {
                if pos.contains(lit.var) {
                    return Err(TermDefect::Contradictory { var: lit.var });
                }
                neg.insert(lit.var);
            }
        }
        Term::from_sets(pos, neg).ok_or(TermDefect::Empty)
    }

    /// `None` when both sets are empty (the constant-1 term is not representable).
    pub fn from_sets(pos: VarSet, neg: VarSet) -> Option<Self> {
        debug_assert!(pos.is_disjoint(&neg));
        if pos.is_empty() && neg.is_empty() {
            None
        } else {
            Some(Term { pos, neg })
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

    pub fn vars(&self) -> VarSet {
        self.pos.union(&self.neg)
    }

    pub fn satisfied_by(&self, x: &VarSet) -> bool {
        self.pos.is_subset_of(x) && self.neg.is_disjoint(x)
    }

    /// True when every literal of `self` also occurs in `other`
    /// (so `other` implies `self`).
    pub fn subsumes(&self, other: &Term) -> bool {
        self.pos.is_subset_of(&other.pos) && self.neg.is_subset_of(&other.neg)
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
}

impl std::fmt::Debug for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .literals()
            .iter()
            .map(|l| {
                if l.positive {
                    format!("x{}", l.var + 1)
                } else {
                    format!("~x{}", l.var + 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join("&"))
    }
}

/// Counts of what canonicalization removed.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct CanonReport {
    pub dropped_contradictory: usize,
    /// Duplicates and terms implied by another term.
    pub dropped_subsumed: usize,
    /// An empty term forced the whole formula to the constant 1.
    pub collapsed_to_true: bool,
}

/// A DNF formula in minimal representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DnfFormula {
    n: usize,
    terms: Vec<Term>,
    is_true: bool,
}

impl DnfFormula {
    pub fn constant(n: usize, value: bool) -> Self {
        DnfFormula {
            n,
            terms: Vec::new(),
            is_true: value,
        }
    }

    /// Canonicalize a list of valid terms: sort, drop duplicates and
    /// subsumed terms. Logically equivalent to the disjunction of `terms`.
    pub fn new(n: usize, terms: Vec<Term>) -> Self {
        let (terms, _) = canonical_terms(terms);
        DnfFormula {
            n,
            terms,
            is_true: false,
        }
    }

    /// Canonicalize raw literal lists, which may contain contradictory,
    /// empty, or subsumed terms. An empty term makes the result the
    /// constant 1. The term count never increases.
    pub fn from_raw_terms(n: usize, raw: &[Vec<Literal>]) -> (Self, CanonReport) {
        let mut report = CanonReport::default();
        let mut terms = Vec::with_capacity(raw.len());
        for lits in raw {
            match Term::new(n, lits) {
                Ok(t) => terms.push(t),
                Err(TermDefect::Empty) => {
                    report.collapsed_to_true = true;
                    return (DnfFormula::constant(n, true), report);
                }
                Err(TermDefect::Contradictory { .. }) => report.dropped_contradictory += 1,
            }
        }
        let (terms, dropped) = canonical_terms(terms);
        report.dropped_subsumed = dropped;
        (
            DnfFormula {
                n,
                terms,
                is_true: false,
            },
            report,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of terms.
    pub fn size(&self) -> usize {
        self.terms.len()
    }

    /// Maximum term width (0 for constants).
    pub fn width(&self) -> usize {
        self.terms.iter().map(Term::width).max().unwrap_or(0)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant_true(&self) -> bool {
        self.is_true
    }

    pub fn is_constant_false(&self) -> bool {
        self.terms.is_empty() && !self.is_true
    }

    /// Variables that actually occur.
    pub fn support(&self) -> VarSet {
        let mut s = VarSet::empty(self.n);
        for t in &self.terms {
            s.union_in_place(&t.pos);
            s.union_in_place(&t.neg);
        }
        s
    }

    /// True when no variable occurs with both polarities across the formula.
    pub fn is_unate(&self) -> bool {
        self.check_unate().is_ok()
    }

    pub fn check_unate(&self) -> Result<()> {
        let mut pos = VarSet::empty(self.n);
        let mut neg = VarSet::empty(self.n);
        for t in &self.terms {
            pos.union_in_place(&t.pos);
            neg.union_in_place(&t.neg);
        }
        match pos.intersection(&neg).min_element() {
            Some(var) => Err(Error::NotUnate { var }),
            None => Ok(()),
        }
    }

    pub fn eval(&self, x: &VarSet) -> bool {
        self.is_true || self.terms.iter().any(|t| t.satisfied_by(x))
    }

    pub fn eval_bools(&self, bits: &[bool]) -> Result<bool> {
        if bits.len() != self.n {
            return Err(Error::AssignmentLength {
                expected: self.n,
                got: bits.len(),
            });
        }
        Ok(self.eval(&VarSet::from_bools(bits)))
    }

    /// The subformula on the given term indices. A subset of a canonical
    /// term list is still canonical, so no re-canonicalization happens.
    pub fn subformula(&self, indices: &[usize]) -> DnfFormula {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        DnfFormula {
            n: self.n,
            terms: indices.iter().map(|&i| self.terms[i].clone()).collect(),
            is_true: false,
        }
    }

    pub fn without_term(&self, index: usize) -> DnfFormula {
        let mut terms = self.terms.clone();
        terms.remove(index);
        DnfFormula {
            n: self.n,
            terms,
            is_true: self.is_true,
        }
    }

    /// Fix one variable; used by the Shannon-expansion recursions.
    pub fn fix_var(&self, var: usize, value: bool) -> DnfFormula {
        if self.is_true {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let in_pos = t.pos.contains(var);
            let in_neg = t.neg.contains(var);
            if (in_pos && !value) || (in_neg && value) {
                continue; // term falsified
            }
            if in_pos || in_neg {
                let mut pos = t.pos.clone();
                let mut neg = t.neg.clone();
                pos.remove(var);
                neg.remove(var);
                match Term::from_sets(pos, neg) {
                    Some(t2) => out.push(t2),
                    None => return DnfFormula::constant(self.n, true),
                }
            } else {
                out.push(t.clone());
            }
        }
        DnfFormula::new(self.n, out)
    }

    /// Apply a restriction and re-canonicalize. The result is over the same
    /// index space but only mentions live variables: for every assignment
    /// `y`, `restrict(f, r).eval(y) == f.eval(r.overlay(y))`.
    pub fn restrict(&self, rho: &Restriction) -> DnfFormula {
        if self.is_true {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            // Positive literal on a fixed-0 variable (or negative on fixed-1)
            // falsifies the term.
            let dead_pos = t.pos.difference(&rho.live).difference(&rho.values);
            let dead_neg = t.neg.intersection(&rho.values);
            if !dead_pos.is_empty() || !dead_neg.is_empty() {
                continue;
            }
            let pos = t.pos.intersection(&rho.live);
            let neg = t.neg.intersection(&rho.live);
            match Term::from_sets(pos, neg) {
                Some(t2) => out.push(t2),
                None => return DnfFormula::constant(self.n, true),
            }
        }
        DnfFormula::new(self.n, out)
    }

    /// Exact satisfying fraction by memoized Shannon expansion over the
    /// support. Variables outside the support do not affect the result.
    pub fn exact_bias(&self) -> Result<BiasValue> {
        self.exact_bias_capped(DEFAULT_BIAS_SUPPORT_CAP)
    }

    pub fn exact_bias_capped(&self, cap: usize) -> Result<BiasValue> {
        let support = self.support().len();
        if support > cap {
            return Err(Error::SupportTooLarge { support, cap });
        }
        let mut memo = HashMap::new();
        Ok(self.bias_rec(&mut memo))
    }

    fn bias_rec(&self, memo: &mut HashMap<DnfFormula, BiasValue>) -> BiasValue {
        if self.is_true {
            return BiasValue::ONE;
        }
        match self.terms.len() {
            0 => return BiasValue::ZERO,
            1 => return BiasValue::pow2_inverse(self.terms[0].width() as u32),
            _ => {}
        }
        if let Some(v) = memo.get(self) {
            return *v;
        }
        let var = self
            .support()
            .min_element()
            .expect("non-constant formula has support");
        let b0 = self.fix_var(var, false).bias_rec(memo);
        let b1 = self.fix_var(var, true).bias_rec(memo);
        let res = b0.avg(&b1);
        if memo.len() < BIAS_MEMO_CAP {
            memo.insert(self.clone(), res);
        }
        res
    }

    /// Exact minimum decision-tree depth, by memoized recursion over the
    /// support in ascending variable order.
    pub fn dt_depth(&self) -> Result<u32> {
        self.dt_depth_capped(DEFAULT_DT_SUPPORT_CAP)
    }

    pub fn dt_depth_capped(&self, cap: usize) -> Result<u32> {
        let support = self.support().len();
        if support > cap {
            return Err(Error::SupportTooLarge { support, cap });
        }
        let mut memo = HashMap::new();
        Ok(self.dt_rec(&mut memo))
    }

    fn dt_rec(&self, memo: &mut HashMap<DnfFormula, u32>) -> u32 {
        if self.is_constant() {
            return 0;
        }
        if let Some(&d) = memo.get(self) {
            return d;
        }
        let mut best = u32::MAX;
        for var in self.support().iter() {
            let d0 = self.fix_var(var, false).dt_rec(memo);
            if d0.saturating_add(1) >= best {
                continue;
            }
            let d1 = self.fix_var(var, true).dt_rec(memo);
            best = best.min(1 + d0.max(d1));
            if best == 1 {
                break;
            }
        }
        memo.insert(self.clone(), best);
        best
    }
}

impl std::fmt::Debug for DnfFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_true {
            return write!(f, "1");
        }
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| format!("{t:?}")).collect();
        write!(f, "{}", parts.join(" | "))
    }
}

fn canonical_terms(mut terms: Vec<Term>) -> (Vec<Term>, usize) {
    let before = terms.len();
    terms.sort();
    terms.dedup();
    let keep: Vec<bool> = (0..terms.len())
        .map(|i| {
            !terms
                .iter()
                .enumerate()
                .any(|(j, t)| j != i && t.subsumes(&terms[i]))
        })
        .collect();
    let mut it = keep.iter();
    terms.retain(|_| *it.next().unwrap());
    let dropped = before - terms.len();
    (terms, dropped)
}

// ---------------------------------------------------------------------------
// Restrictions
// ---------------------------------------------------------------------------

/// Value of one coordinate under a restriction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RVal {
    Zero,
    One,
    Star,
}

/// A partial assignment in `{0,1,*}^n`. The live set is exactly the
/// star positions; fixed coordinates carry their bit in `values`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Restriction {
    n: usize,
    live: VarSet,
    values: VarSet, // only meaningful (and kept zero) outside `live`
}

impl Restriction {
    pub fn all_star(n: usize) -> Self {
        let mut live = VarSet::empty(n);
        for i in 0..n {
            live.insert(i);
        }
        Restriction {
            n,
            live,
            values: VarSet::empty(n),
        }
    }

    pub fn from_parts(n: usize, live: VarSet, values: VarSet) -> Self {
        let values = values.difference(&live);
        Restriction { n, live, values }
    }

    pub fn from_vals(vals: &[RVal]) -> Self {
        let n = vals.len();
        let mut r = Restriction {
            n,
            live: VarSet::empty(n),
            values: VarSet::empty(n),
        };
        for (i, v) in vals.iter().enumerate() {
            match v {
                RVal::Star => r.live.insert(i),
                RVal::One => r.values.insert(i),
                RVal::Zero => {}
            }
        }
        r
    }

    /// Fix one variable of an otherwise untouched restriction.
    pub fn fixing(mut self, var: usize, value: bool) -> Self {
        self.live.remove(var);
        if value {
            self.values.insert(var);
        } else {
            self.values.remove(var);
        }
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize) -> RVal {
        if self.live.contains(i) {
            RVal::Star
        } else if self.values.contains(i) {
            RVal::One
        } else {
            RVal::Zero
        }
    }

    pub fn live(&self) -> &VarSet {
        &self.live
    }

    pub fn live_count(&self) -> usize {
        self.live.len()
    }

    pub fn fixed_values(&self) -> &VarSet {
        &self.values
    }

    /// Merge an assignment of the live coordinates into the restriction:
    /// live positions take their bit from `y`, fixed positions keep theirs.
    pub fn overlay(&self, y: &VarSet) -> VarSet {
        y.intersection(&self.live).union(&self.values)
    }
}

// ---------------------------------------------------------------------------
// Truth tables
// ---------------------------------------------------------------------------

const LOW_VAR_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Dense truth table over all `2^n` assignments (bit `x` = value at the
/// assignment whose binary encoding is `x`). This is the exhaustive oracle
/// backing sandwich checks and set-cover computations.
#[derive(Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

impl TruthTable {
    fn blank(n: usize, cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::SupportTooLarge { support: n, cap });
        }
        let bits = 1usize << n;
        Ok(TruthTable {
            n,
            words: vec![0u64; bits.div_ceil(64)],
        })
    }

    fn tail_mask(n: usize) -> u64 {
        if n >= 6 {
            !0u64
        } else {
            (1u64 << (1usize << n)) - 1
        }
    }

    pub fn of_formula(f: &DnfFormula, cap: usize) -> Result<Self> {
        let mut table = Self::blank(f.n(), cap)?;
        if f.is_constant_true() {
            let mask = Self::tail_mask(f.n());
            for w in table.words.iter_mut() {
                *w = mask;
            }
            return Ok(table);
        }
        for t in f.terms() {
            let tt = Self::of_term(f.n(), t, cap)?;
            for (a, b) in table.words.iter_mut().zip(tt.words.iter()) {
                *a |= b;
            }
        }
        Ok(table)
    }

    pub fn of_term(n: usize, term: &Term, cap: usize) -> Result<Self> {
        let mut table = Self::blank(n, cap)?;
        let mask = Self::tail_mask(n);
        for w in table.words.iter_mut() {
            *w = mask;
        }
        for lit in term.literals() {
            table.constrain(lit.var, lit.positive);
        }
        Ok(table)
    }

    /// Keep only assignments where variable `var` equals `value`.
    fn constrain(&mut self, var: usize, value: bool) {
        if var < 6 {
            let pattern = if value {
                LOW_VAR_PATTERNS[var]
            } else {
                !LOW_VAR_PATTERNS[var]
            };
            for w in self.words.iter_mut() {
                *w &= pattern;
            }
        } else {
            let bit = var - 6;
            for (i, w) in self.words.iter_mut().enumerate() {
                if ((i >> bit) & 1 == 1) != value {
                    *w = 0;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: u64) -> bool {
        (self.words[(x / 64) as usize] >> (x % 64)) & 1 == 1
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Number of assignments where `self` holds and `other` does not.
    pub fn and_not_count(&self, other: &TruthTable) -> u64 {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & !b).count_ones() as u64)
            .sum()
    }

    /// First assignment where `self` holds and `other` does not.
    pub fn first_and_not(&self, other: &TruthTable) -> Option<u64> {
        for (i, (a, b)) in self.words.iter().zip(other.words.iter()).enumerate() {
            let d = a & !b;
            if d != 0 {
                return Some(i as u64 * 64 + d.trailing_zeros() as u64);
            }
        }
        None
    }

    pub fn or_in_place(&mut self, other: &TruthTable) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }
}

// ---------------------------------------------------------------------------
// Sandwich checking
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SandwichViolation {
    /// The lower formula is 1 somewhere the target is 0.
    LowerAbove,
    /// The upper formula is 0 somewhere the target is 1.
    UpperBelow,
}

#[derive(Clone, PartialEq, Debug)]
pub enum SandwichOutcome {
    /// Pointwise order holds; the exact one-sided disagreement probabilities.
    Certified {
        lower_err: BiasValue,
        upper_err: BiasValue,
    },
    /// Pointwise order fails at the witnessing assignment.
    Violation {
        assignment: Vec<bool>,
        kind: SandwichViolation,
    },
}

/// Exhaustively verify `lower <= f <= upper` over all `2^n` assignments and
/// measure the exact one-sided errors. A violation is a result, not an error.
pub fn sandwich_check(
    lower: &DnfFormula,
    f: &DnfFormula,
    upper: &DnfFormula,
) -> Result<SandwichOutcome> {
    sandwich_check_capped(lower, f, upper, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn sandwich_check_capped(
    lower: &DnfFormula,
    f: &DnfFormula,
    upper: &DnfFormula,
    cap: usize,
) -> Result<SandwichOutcome> {
    for g in [lower, upper] {
        if g.n() != f.n() {
            return Err(Error::VarCountMismatch {
                left: f.n(),
                right: g.n(),
            });
        }
    }
    let n = f.n();
    let tf = TruthTable::of_formula(f, cap)?;
    let tl = TruthTable::of_formula(lower, cap)?;
    let tu = TruthTable::of_formula(upper, cap)?;

    if let Some(x) = tl.first_and_not(&tf) {
        return Ok(SandwichOutcome::Violation {
            assignment: VarSet::from_u64(n, x).to_bools(n),
            kind: SandwichViolation::LowerAbove,
        });
    }
    if let Some(x) = tf.first_and_not(&tu) {
        return Ok(SandwichOutcome::Violation {
            assignment: VarSet::from_u64(n, x).to_bools(n),
            kind: SandwichViolation::UpperBelow,
        });
    }
    Ok(SandwichOutcome::Certified {
        lower_err: BiasValue::from_count(tf.and_not_count(&tl) as u128, n as u32),
        upper_err: BiasValue::from_count(tu.and_not_count(&tf) as u128, n as u32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lit(v: i64) -> Literal {
        if v > 0 {
            Literal::pos((v - 1) as usize)
        } else {
            Literal::neg((-v - 1) as usize)
        }
    }

    fn formula(n: usize, terms: &[&[i64]]) -> DnfFormula {
        let raw: Vec<Vec<Literal>> = terms
            .iter()
            .map(|t| t.iter().map(|&v| lit(v)).collect())
            .collect();
        DnfFormula::from_raw_terms(n, &raw).0
    }

    #[test]
    fn canonicalize_drops_contradictions() {
        let (f, rep) = DnfFormula::from_raw_terms(
            2,
            &[vec![lit(1), lit(-1)], vec![lit(2)]],
        );
        assert_eq!(f.size(), 1);
        assert_eq!(rep.dropped_contradictory, 1);
        assert_eq!(f, formula(2, &[&[2]]));
    }

    #[test]
    fn canonicalize_drops_subsumed() {
        let f = formula(2, &[&[1], &[1, 2]]);
        assert_eq!(f.size(), 1);
        assert_eq!(f, formula(2, &[&[1]]));
    }

    #[test]
    fn canonicalize_keeps_minimal() {
        let f = formula(3, &[&[1, 2], &[1, 3]]);
        assert_eq!(f.size(), 2);
    }

    #[test]
    fn canonicalize_empty_term_is_constant_one() {
        let (f, rep) = DnfFormula::from_raw_terms(2, &[vec![], vec![lit(1)]]);
        assert!(f.is_constant_true());
        assert!(rep.collapsed_to_true);
    }

    #[test]
    fn evaluate_examples() {
        let f = formula(2, &[&[1], &[2]]);
        assert!(!f.eval_bools(&[false, false]).unwrap());
        assert!(f.eval_bools(&[true, false]).unwrap());
        let g = formula(3, &[&[1, 2], &[-1, 3]]);
        assert!(g.eval_bools(&[false, true, true]).unwrap());
        assert!(matches!(
            g.eval_bools(&[false, true]),
            Err(Error::AssignmentLength { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn exact_bias_examples() {
        assert_eq!(
            formula(1, &[&[1]]).exact_bias().unwrap(),
            BiasValue::from_count(1, 1)
        );
        assert_eq!(
            formula(2, &[&[1], &[2]]).exact_bias().unwrap(),
            BiasValue::from_count(3, 2)
        );
        // Direct enumeration over all 8 assignments gives 4/8.
        let g = formula(3, &[&[1, 2], &[-1, 3]]);
        let mut count = 0;
        for x in 0..8u64 {
            if g.eval(&VarSet::from_u64(3, x)) {
                count += 1;
            }
        }
        assert_eq!(count, 4);
        assert_eq!(g.exact_bias().unwrap(), BiasValue::from_count(1, 1));
    }

    #[test]
    fn bias_ignores_variables_outside_support() {
        let f = formula(40, &[&[1], &[2]]);
        assert_eq!(f.exact_bias().unwrap(), BiasValue::from_count(3, 2));
    }

    #[test]
    fn bias_support_cap() {
        let terms: Vec<Vec<Literal>> = (0..30).map(|v| vec![Literal::pos(v)]).collect();
        let (f, _) = DnfFormula::from_raw_terms(30, &terms);
        assert!(matches!(
            f.exact_bias(),
            Err(Error::SupportTooLarge { support: 30, cap: 26 })
        ));
    }

    #[test]
    fn restrict_examples() {
        let f = formula(2, &[&[1, 2]]);
        let r1 = Restriction::all_star(2).fixing(0, true);
        assert_eq!(f.restrict(&r1), formula(2, &[&[2]]));
        let r0 = Restriction::all_star(2).fixing(0, false);
        assert!(f.restrict(&r0).is_constant_false());
        let g = formula(2, &[&[1], &[2]]);
        assert_eq!(g.restrict(&Restriction::all_star(2)), g);
    }

    #[test]
    fn restrict_commutes_with_eval() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = 8;
            let f = crate::instances::random_dnf(&mut rng, n, 3, 6);
            let vals: Vec<RVal> = (0..n)
                .map(|_| match rng.random_range(0..3) {
                    0 => RVal::Zero,
                    1 => RVal::One,
                    _ => RVal::Star,
                })
                .collect();
            let rho = Restriction::from_vals(&vals);
            let fr = f.restrict(&rho);
            for x in 0..(1u64 << n) {
                let y = VarSet::from_u64(n, x);
                assert_eq!(fr.eval(&y), f.eval(&rho.overlay(&y)));
            }
        }
    }

    #[test]
    fn restricted_bias_averages_to_bias() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let n = 8;
            let f = crate::instances::random_dnf(&mut rng, n, 3, 8);
            // Fix the first k coordinates every possible way; live rest.
            let k = rng.random_range(1..=n);
            let mut acc = BiasValue::ZERO;
            for fixing in 0..(1u64 << k) {
                let mut rho = Restriction::all_star(n);
                for i in 0..k {
                    rho = rho.fixing(i, (fixing >> i) & 1 == 1);
                }
                acc = acc.add(&f.restrict(&rho).exact_bias().unwrap());
            }
            let avg = BiasValue::from_count(acc.numerator(), acc.log2_denominator() + k as u32);
            assert_eq!(avg, f.exact_bias().unwrap());
        }
    }

    #[test]
    fn dt_depth_examples() {
        assert_eq!(DnfFormula::constant(3, false).dt_depth().unwrap(), 0);
        assert_eq!(DnfFormula::constant(3, true).dt_depth().unwrap(), 0);
        assert_eq!(formula(1, &[&[1]]).dt_depth().unwrap(), 1);
        // XOR needs both variables.
        assert_eq!(formula(2, &[&[1, -2], &[-1, 2]]).dt_depth().unwrap(), 2);
        // A single wide term still has depth = width.
        assert_eq!(formula(4, &[&[1, 2, 3, 4]]).dt_depth().unwrap(), 4);
    }

    #[test]
    fn sandwich_check_examples() {
        let f = formula(3, &[&[1, 2], &[-1, 3]]);
        let zero = DnfFormula::constant(3, false);
        let one = DnfFormula::constant(3, true);
        let bias = f.exact_bias().unwrap();
        match sandwich_check(&zero, &f, &one).unwrap() {
            SandwichOutcome::Certified { lower_err, upper_err } => {
                assert_eq!(lower_err, bias);
                assert_eq!(upper_err, bias.complement());
            }
            v => panic!("unexpected {v:?}"),
        }
        match sandwich_check(&f, &f, &f).unwrap() {
            SandwichOutcome::Certified { lower_err, upper_err } => {
                assert!(lower_err.is_zero());
                assert!(upper_err.is_zero());
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn sandwich_check_measures_dropped_term() {
        // lower = f minus one term: lower error = Pr[only that term satisfied].
        let f = formula(4, &[&[1, 2], &[3, 4]]);
        let lower = f.without_term(0);
        let dropped = f.terms()[0].clone();
        let mut expect = 0u64;
        for x in 0..16u64 {
            let xs = VarSet::from_u64(4, x);
            if dropped.satisfied_by(&xs) && !lower.eval(&xs) {
                expect += 1;
            }
        }
        match sandwich_check(&lower, &f, &f).unwrap() {
            SandwichOutcome::Certified { lower_err, .. } => {
                assert_eq!(lower_err, BiasValue::from_count(expect as u128, 4));
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn sandwich_check_finds_violations() {
        let f = formula(2, &[&[1]]);
        let g = formula(2, &[&[2]]);
        match sandwich_check(&g, &f, &f).unwrap() {
            SandwichOutcome::Violation { kind, assignment } => {
                assert_eq!(kind, SandwichViolation::LowerAbove);
                assert!(g.eval_bools(&assignment).unwrap());
                assert!(!f.eval_bools(&assignment).unwrap());
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn canonicalize_idempotent_and_truth_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.random_range(1..=8);
            let m = rng.random_range(1..=10);
            // Raw terms straight from the RNG: may contain duplicate vars,
            // contradictions, subsumptions.
            let raw: Vec<Vec<Literal>> = (0..m)
                .map(|_| {
                    let w = rng.random_range(1..=4usize);
                    (0..w)
                        .map(|_| Literal {
                            var: rng.random_range(0..n),
                            positive: rng.random(),
                        })
                        .collect()
                })
                .collect();
            let (f, _) = DnfFormula::from_raw_terms(n, &raw);
            assert!(f.size() <= m);
            // Idempotent.
            let f2 = DnfFormula::new(n, f.terms().to_vec());
            assert_eq!(f, f2);
            // Truth table preserved vs. naive raw evaluation.
            for x in 0..(1u64 << n) {
                let xs = VarSet::from_u64(n, x);
                let raw_val = raw.iter().any(|lits| {
                    !lits.iter().any(|l| {
                        lits.iter()
                            .any(|l2| l2.var == l.var && l2.positive != l.positive)
                    }) && lits
                        .iter()
                        .all(|l| xs.contains(l.var) == l.positive)
                });
                assert_eq!(f.eval(&xs), raw_val, "mismatch at {x:#b}");
            }
        }
    }

    #[test]
    fn single_term_bias_is_half_or_less() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.random_range(1..=10);
            let f = crate::instances::random_dnf(&mut rng, n, 4, 5);
            for (i, t) in f.terms().iter().enumerate() {
                let single = f.subformula(&[i]);
                let b = single.exact_bias().unwrap();
                assert_eq!(b, BiasValue::pow2_inverse(t.width() as u32));
                assert!(b <= BiasValue::from_count(1, 1));
            }
        }
    }

    #[test]
    fn kleitman_drop_bound() {
        // For unate f: Pr[T1=1 and rest=0] <= Pr[f=0], exhaustively.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..60 {
            let n = rng.random_range(2..=10);
            let f = crate::instances::random_unate_dnf(&mut rng, n, 3, 6);
            if f.size() < 2 {
                continue;
            }
            let first = &f.terms()[0];
            let rest = f.subformula(&(1..f.size()).collect::<Vec<_>>());
            let mut joint = 0u64;
            let mut all_zero = 0u64;
            for x in 0..(1u64 << n) {
                let xs = VarSet::from_u64(n, x);
                let rest_zero = !rest.eval(&xs);
                if first.satisfied_by(&xs) && rest_zero {
                    joint += 1;
                }
                if rest_zero && !first.satisfied_by(&xs) {
                    all_zero += 1;
                }
            }
            assert!(joint <= all_zero, "Kleitman bound failed");
        }
    }

    #[test]
    fn truth_table_matches_eval() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let n = rng.random_range(1..=10);
            let f = crate::instances::random_dnf(&mut rng, n, 3, 8);
            let tt = TruthTable::of_formula(&f, DEFAULT_EXHAUSTIVE_CAP).unwrap();
            for x in 0..(1u64 << n) {
                assert_eq!(tt.get(x), f.eval(&VarSet::from_u64(n, x)));
            }
            assert_eq!(
                f.exact_bias().unwrap(),
                BiasValue::from_count(tt.count_ones() as u128, n as u32)
            );
        }
    }
}
