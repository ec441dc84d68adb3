//! Normal-ordering engine: orientation of relations into terminating
//! rewrite rules, reduction to normal form, and local confluence checking
//! by exhaustive critical-pair (overlap) analysis.
//!
//! The term order is degree-then-lexicographic over the generator
//! precedence; it is total, well-founded, and compatible with two-sided
//! multiplication, so any rule whose right side is strictly smaller than
//! its left side terminates.  When every overlap joins, the diamond lemma
//! makes normal forms independent of the reduction strategy.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::ncpoly::{GenId, Poly, Presentation, SigRef, Word};

/// The (sole) term order: degree first, then lexicographic with generator
/// precedence.  Kept as a value so call sites name the order they use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TermOrder;

impl TermOrder {
    pub fn cmp(&self, a: &Word, b: &Word) -> Ordering {
        a.cmp(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RewriteError {
    /// Orientation failed: the named rhs term is not strictly smaller than
    /// the lhs.
    NotOrientable { lhs: String, offending: String },
    /// Step limit exceeded; carries the partial state for diagnosis.
    StepLimit {
        limit: u64,
        partial_normal: Poly,
        pending: Poly,
    },
}

impl fmt::Display for RewriteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RewriteError::NotOrientable { lhs, offending } => write!(
                f,
                "relation with left side `{lhs}` is not orientable: term `{offending}` is not smaller"
            ),
            RewriteError::StepLimit { limit, .. } => {
                write!(f, "reduction exceeded the step limit of {limit}")
            }
        }
    }
}

impl core::error::Error for RewriteError {}

/// An oriented rewrite rule `lhs -> rhs` with every rhs word strictly
/// smaller than `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub id: usize,
    pub lhs: Word,
    pub rhs: Poly,
}

/// Validate orientation of a candidate rule.
pub fn orient(lhs: Word, rhs: Poly, order: TermOrder) -> Result<(Word, Poly), RewriteError> {
    for (w, _) in rhs.terms() {
        if order.cmp(w, &lhs) != Ordering::Less {
            return Err(RewriteError::NotOrientable {
                lhs: alloc::format!("{}", rhs.render_word(&lhs)),
                offending: alloc::format!("{}", rhs.render_word(w)),
            });
        }
    }
    Ok((lhs, rhs))
}

/// Position selection strategy.  On confluent systems all strategies agree;
/// the default is the deterministic leftmost-lowest-rule choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    LeftmostFirst,
    RightmostFirst,
}

/// Reduction options.
#[derive(Clone, Copy, Debug)]
pub struct ReduceOptions {
    pub step_limit: u64,
    pub strategy: Strategy,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            step_limit: 1_000_000,
            strategy: Strategy::LeftmostFirst,
        }
    }
}

/// Result of a reduction: the normal form plus step accounting.
#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub normal_form: Poly,
    pub steps: u64,
    pub rules_fired: BTreeMap<usize, u64>,
}

/// A set of oriented rules over one signature, indexed by first letter.
#[derive(Clone, Debug)]
pub struct RuleSet {
    sig: SigRef,
    rules: Vec<RewriteRule>,
    buckets: Vec<Vec<usize>>,
}

impl RuleSet {
    pub fn new(sig: SigRef, oriented: Vec<(Word, Poly)>) -> Result<Self, RewriteError> {
        let order = TermOrder;
        let mut rules = Vec::with_capacity(oriented.len());
        let mut buckets = alloc::vec![Vec::new(); sig.len()];
        for (id, (lhs, rhs)) in oriented.into_iter().enumerate() {
            let (lhs, rhs) = orient(lhs, rhs, order)?;
            buckets[lhs.letters()[0].0 as usize].push(id);
            rules.push(RewriteRule { id, lhs, rhs });
        }
        Ok(RuleSet {
            sig,
            rules,
            buckets,
        })
    }

    /// Compile a presentation's relations into a rule set.
    pub fn from_presentation(p: &Presentation) -> Result<Self, RewriteError> {
        RuleSet::new(
            p.sig().clone(),
            p.relations()
                .iter()
                .map(|r| (r.lhs.clone(), r.rhs.clone()))
                .collect(),
        )
    }

    pub fn sig(&self) -> &SigRef {
        &self.sig
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Lowest-id rule applicable at `pos` in `w`.
    fn match_at(&self, w: &Word, pos: usize) -> Option<usize> {
        let first = w.letters()[pos];
        let mut best: Option<usize> = None;
        for &rid in &self.buckets[first.0 as usize] {
            if w.matches_at(pos, &self.rules[rid].lhs) && best.map_or(true, |b| rid < b) {
                best = Some(rid);
            }
        }
        best
    }

    fn find_redex(&self, w: &Word, strategy: Strategy) -> Option<(usize, usize)> {
        let n = w.degree();
        match strategy {
            Strategy::LeftmostFirst => (0..n).find_map(|pos| self.match_at(w, pos).map(|r| (pos, r))),
            Strategy::RightmostFirst => {
                (0..n).rev().find_map(|pos| self.match_at(w, pos).map(|r| (pos, r)))
            }
        }
    }

    /// All `(position, rule)` applications available in `w`.
    pub fn all_redexes(&self, w: &Word) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for pos in 0..w.degree() {
            let first = w.letters()[pos];
            for &rid in &self.buckets[first.0 as usize] {
                if w.matches_at(pos, &self.rules[rid].lhs) {
                    out.push((pos, rid));
                }
            }
        }
        out
    }

    /// One-step rewrite of `w` at `pos` with rule `rid`.
    pub fn apply_at(&self, w: &Word, pos: usize, rid: usize) -> Poly {
        let rule = &self.rules[rid];
        let mut out = Poly::zero(&self.sig);
        for (rw, rc) in rule.rhs.terms() {
            out.insert_add(w.splice(pos, rule.lhs.degree(), rw), rc.clone());
        }
        out
    }

    /// Reduce to normal form.  Terminates because every rewrite replaces a
    /// word by strictly smaller words; bounded by the step limit.
    pub fn reduce_with(&self, p: &Poly, opts: ReduceOptions) -> Result<ReductionReport, RewriteError> {
        let mut work: BTreeMap<Word, crate::coeff::Scalar> =
            p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut done = Poly::zero(&self.sig);
        let mut steps: u64 = 0;
        let mut rules_fired: BTreeMap<usize, u64> = BTreeMap::new();
        while let Some((w, c)) = work.pop_last() {
            match self.find_redex(&w, opts.strategy) {
                None => done.insert_add(w, c),
                Some((pos, rid)) => {
                    steps += 1;
                    if steps > opts.step_limit {
                        let mut pending = Poly::zero(&self.sig);
                        pending.insert_add(w, c);
                        for (pw, pc) in work {
                            pending.insert_add(pw, pc);
                        }
                        return Err(RewriteError::StepLimit {
                            limit: opts.step_limit,
                            partial_normal: done,
                            pending,
                        });
                    }
                    *rules_fired.entry(rid).or_insert(0) += 1;
                    let rule = &self.rules[rid];
                    for (rw, rc) in rule.rhs.terms() {
                        let nw = w.splice(pos, rule.lhs.degree(), rw);
                        let nc = c.mul(rc);
                        match work.get_mut(&nw) {
                            Some(e) => {
                                *e = e.add(&nc);
                                if e.is_zero() {
                                    work.remove(&nw);
                                }
                            }
                            None => {
                                if !nc.is_zero() {
                                    work.insert(nw, nc);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(ReductionReport {
            normal_form: done,
            steps,
            rules_fired,
        })
    }

    pub fn reduce(&self, p: &Poly) -> Result<ReductionReport, RewriteError> {
        self.reduce_with(p, ReduceOptions::default())
    }

    /// Normal form with default options, panicking on step-limit overrun
    /// (used where termination is already established).
    pub fn normal_form(&self, p: &Poly) -> Poly {
        self.reduce(p).expect("step limit exceeded").normal_form
    }

    /// True when `w` contains no rule lhs as a subword.
    pub fn is_normal_word(&self, w: &Word) -> bool {
        self.all_redexes(w).is_empty()
    }

    /// Enumerate all normal words up to `max_degree` over the sub-alphabet
    /// `letters` (ascending word order within each degree).
    pub fn normal_words(&self, letters: &[GenId], max_degree: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut frontier = alloc::vec![Word::unit()];
        out.push(Word::unit());
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for w in &frontier {
                for &g in letters {
                    let mut v = w.letters().to_vec();
                    v.push(g);
                    let cand = Word::from_letters(v);
                    // only the new suffix can introduce a redex
                    let fresh = (0..cand.degree()).all(|pos| self.match_at(&cand, pos).is_none());
                    if fresh {
                        out.push(cand.clone());
                        next.push(cand);
                    }
                }
            }
            frontier = next;
        }
        out
    }
}

/// A word admitting two distinct one-step reductions.
#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub word: Word,
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub left_result: Poly,
    pub right_result: Poly,
}

/// Enumerate every word of degree ≤ `max_degree` over the full alphabet
/// that admits at least two distinct rule applications, recording the
/// one-step results of each unordered pair of applications.
pub fn overlaps(rules: &RuleSet, max_degree: usize) -> Vec<CriticalPair> {
    let sig = rules.sig().clone();
    let nall: Vec<GenId> = sig.generators().map(|(g, _)| g).collect();
    let mut out = Vec::new();
    let mut frontier = alloc::vec![Word::unit()];
    for _ in 0..max_degree {
        let mut next = Vec::with_capacity(frontier.len() * nall.len());
        for w in &frontier {
            for &g in &nall {
                let mut v = w.letters().to_vec();
                v.push(g);
                next.push(Word::from_letters(v));
            }
        }
        for w in &next {
            if w.degree() < 2 {
                continue;
            }
            let apps = rules.all_redexes(w);
            if apps.len() < 2 {
                continue;
            }
            for i in 0..apps.len() {
                for j in i + 1..apps.len() {
                    out.push(CriticalPair {
                        word: w.clone(),
                        left: apps[i],
                        right: apps[j],
                        left_result: rules.apply_at(w, apps[i].0, apps[i].1),
                        right_result: rules.apply_at(w, apps[j].0, apps[j].1),
                    });
                }
            }
        }
        frontier = next;
    }
    out
}

/// An overlap whose two branches reduce to different normal forms.
#[derive(Clone, Debug)]
pub struct UnresolvedPair {
    pub word: Word,
    pub left_normal: Poly,
    pub right_normal: Poly,
}

#[derive(Clone, Debug)]
pub enum ConfluenceOutcome {
    Pass { pairs_checked: usize },
    Failed { pairs_checked: usize, unresolved: Vec<UnresolvedPair> },
}

impl ConfluenceOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, ConfluenceOutcome::Pass { .. })
    }
}

/// Reduce both branches of every critical pair up to `max_degree`; pass iff
/// all pairs join.
pub fn confluence_check(
    rules: &RuleSet,
    max_degree: usize,
    opts: ReduceOptions,
) -> Result<ConfluenceOutcome, RewriteError> {
    let pairs = overlaps(rules, max_degree);
    let checked = pairs.len();
    let mut unresolved = Vec::new();
    for pair in pairs {
        let l = rules.reduce_with(&pair.left_result, opts)?.normal_form;
        let r = rules.reduce_with(&pair.right_result, opts)?.normal_form;
        if l != r {
            unresolved.push(UnresolvedPair {
                word: pair.word,
                left_normal: l,
                right_normal: r,
            });
        }
    }
    if unresolved.is_empty() {
        Ok(ConfluenceOutcome::Pass {
            pairs_checked: checked,
        })
    } else {
        Ok(ConfluenceOutcome::Failed {
            pairs_checked: checked,
            unresolved,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ParameterSet;
    use crate::ncpoly::{GeneratorInfo, Parity, Signature};
    use alloc::vec;

    fn xy_sig() -> SigRef {
        Signature::new(
            vec![
                GeneratorInfo::new("x", Parity::Even, 0, 0),
                GeneratorInfo::new("y", Parity::Even, 0, 1),
            ],
            ParameterSet::empty(),
        )
        .unwrap()
    }

    #[test]
    fn orientation_rejects_larger_rhs() {
        let s = xy_sig();
        let x = s.id_of("x").unwrap();
        let y = s.id_of("y").unwrap();
        // x y -> y x is not orientable (y x > x y)
        let lhs = Word::from_letters(vec![x, y]);
        let rhs = Poly::word(&s, Word::from_letters(vec![y, x]));
        assert!(orient(lhs, rhs, TermOrder).is_err());
    }

    #[test]
    fn already_normal_takes_no_steps() {
        let s = xy_sig();
        let x = s.id_of("x").unwrap();
        let y = s.id_of("y").unwrap();
        let rules = RuleSet::new(
            s.clone(),
            vec![(
                Word::from_letters(vec![y, x]),
                Poly::word(&s, Word::from_letters(vec![x, y])),
            )],
        )
        .unwrap();
        let p = Poly::word(&s, Word::from_letters(vec![x, y]));
        let rep = rules.reduce(&p).unwrap();
        assert_eq!(rep.steps, 0);
        assert_eq!(rep.normal_form, p);
        let q = Poly::word(&s, Word::from_letters(vec![y, x]));
        let rep = rules.reduce(&q).unwrap();
        assert_eq!(rep.steps, 1);
        assert_eq!(rep.normal_form, p);
    }

    #[test]
    fn inconsistent_rules_fail_confluence() {
        // {x y -> 1, y x -> 0, x x -> x} has an unresolvable overlap.
        let s = xy_sig();
        let x = s.id_of("x").unwrap();
        let y = s.id_of("y").unwrap();
        let rules = RuleSet::new(
            s.clone(),
            vec![
                (Word::from_letters(vec![x, y]), Poly::one(&s)),
                (Word::from_letters(vec![y, x]), Poly::zero(&s)),
                (Word::from_letters(vec![x, x]), Poly::word(&s, Word::gen(x))),
            ],
        )
        .unwrap();
        let out = confluence_check(&rules, 3, ReduceOptions::default()).unwrap();
        match out {
            ConfluenceOutcome::Failed { unresolved, .. } => assert!(!unresolved.is_empty()),
            ConfluenceOutcome::Pass { .. } => panic!("expected failure"),
        }
    }

    #[test]
    fn empty_rule_set_has_no_overlaps() {
        let s = xy_sig();
        let rules = RuleSet::new(s, vec![]).unwrap();
        assert!(overlaps(&rules, 4).is_empty());
    }

    #[test]
    fn step_limit_reports_partial_state() {
        let s = xy_sig();
        let x = s.id_of("x").unwrap();
        let y = s.id_of("y").unwrap();
        let rules = RuleSet::new(
            s.clone(),
            vec![(
                Word::from_letters(vec![y, x]),
                Poly::word(&s, Word::from_letters(vec![x, y])),
            )],
        )
        .unwrap();
        // y^3 x^3 needs nine swaps
        let w = Word::from_letters(vec![y, y, y, x, x, x]);
        let p = Poly::word(&s, w);
        let err = rules
            .reduce_with(
                &p,
                ReduceOptions {
                    step_limit: 2,
                    strategy: Strategy::LeftmostFirst,
                },
            )
            .unwrap_err();
        match err {
            RewriteError::StepLimit { pending, .. } => assert!(!pending.is_zero()),
            other => panic!("unexpected error {other:?}"),
        }
        assert_eq!(rules.reduce(&p).unwrap().steps, 9);
    }
}
