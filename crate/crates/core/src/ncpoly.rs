//! Graded noncommutative polynomials over the exact coefficient field, and
//! finitely generated presentations.
//!
//! The free algebra here is deliberately ungraded-associative: no sign rule
//! is ever applied implicitly.  Parity and ghost number are metadata used by
//! builders and validators; all (anti)commutation behaviour lives in the
//! relations of a [`Presentation`].
//!
//! Generator ids are assigned by ascending precedence, so the natural order
//! on id sequences is exactly the degree-then-lexicographic term order used
//! by the rewrite engine.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::coeff::{CoeffError, ParameterSet, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorInfo {
    pub name: String,
    pub parity: Parity,
    pub ghost_number: i32,
    pub precedence: i32,
}

impl GeneratorInfo {
    pub fn new(name: &str, parity: Parity, ghost_number: i32, precedence: i32) -> Self {
        GeneratorInfo {
            name: name.to_owned(),
            parity,
            ghost_number,
            precedence,
        }
    }
}

/// Generator handle; numerically equal to the generator's rank in the
/// precedence order (0 = lowest).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NcError {
    DuplicateGeneratorName(String),
    DuplicatePrecedence(i32),
    NameClashWithParameter(String),
    MixedSignatures,
    UnknownGenerator(String),
    /// Relation validation failures carry a short description.
    InvalidRelation(String),
}

impl fmt::Display for NcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NcError::DuplicateGeneratorName(n) => write!(f, "duplicate generator name `{n}`"),
            NcError::DuplicatePrecedence(p) => write!(f, "duplicate precedence value {p}"),
            NcError::NameClashWithParameter(n) => {
                write!(f, "generator `{n}` clashes with a parameter name")
            }
            NcError::MixedSignatures => write!(f, "operands belong to different presentations"),
            NcError::UnknownGenerator(n) => write!(f, "unknown generator `{n}`"),
            NcError::InvalidRelation(msg) => write!(f, "invalid relation: {msg}"),
        }
    }
}

impl core::error::Error for NcError {}

/// Generator table plus parameter set.  Polynomials hold a shared reference
/// to their signature; relations and presentations are layered on top.
#[derive(Debug)]
pub struct Signature {
    gens: Vec<GeneratorInfo>,
    params: ParameterSet,
    by_name: BTreeMap<String, GenId>,
}

pub type SigRef = Arc<Signature>;

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.params == other.params
    }
}

impl Eq for Signature {}

impl Signature {
    /// Sorts generators by ascending precedence and assigns ids in that
    /// order.
    pub fn new(mut gens: Vec<GeneratorInfo>, params: ParameterSet) -> Result<SigRef, NcError> {
        gens.sort_by_key(|g| g.precedence);
        for w in gens.windows(2) {
            if w[0].precedence == w[1].precedence {
                return Err(NcError::DuplicatePrecedence(w[0].precedence));
            }
        }
        let mut by_name = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            if params.index_of(&g.name).is_some() {
                return Err(NcError::NameClashWithParameter(g.name.clone()));
            }
            if by_name.insert(g.name.clone(), GenId(i as u32)).is_some() {
                return Err(NcError::DuplicateGeneratorName(g.name.clone()));
            }
        }
        Ok(Arc::new(Signature {
            gens,
            params,
            by_name,
        }))
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn info(&self, id: GenId) -> &GeneratorInfo {
        &self.gens[id.0 as usize]
    }

    pub fn generators(&self) -> impl Iterator<Item = (GenId, &GeneratorInfo)> {
        self.gens
            .iter()
            .enumerate()
            .map(|(i, g)| (GenId(i as u32), g))
    }

    pub fn id_of(&self, name: &str) -> Result<GenId, NcError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| NcError::UnknownGenerator(name.to_owned()))
    }

    pub fn ghost_number_of_word(&self, w: &Word) -> i32 {
        w.letters().iter().map(|&g| self.info(g).ghost_number).sum()
    }

    pub fn parity_of_word(&self, w: &Word) -> Parity {
        let odd = w
            .letters()
            .iter()
            .filter(|&&g| self.info(g).parity == Parity::Odd)
            .count();
        if odd % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A word in the free monoid on the generators (empty word = unit).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<GenId>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: GenId) -> Self {
        Word(vec![g])
    }

    pub fn from_letters(letters: Vec<GenId>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[GenId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `prefix · mid · suffix` where `mid` replaces `self[pos..pos+len]`.
    pub fn splice(&self, pos: usize, len: usize, mid: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() - len + mid.0.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&mid.0);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    pub fn matches_at(&self, pos: usize, pat: &Word) -> bool {
        pos + pat.0.len() <= self.0.len() && self.0[pos..pos + pat.0.len()] == pat.0[..]
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    /// Degree first, then lexicographic on ids (ids ascend with precedence),
    /// which makes the order total, well-founded, and compatible with
    /// concatenation on both sides.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Ghost-number grading of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GhostNumber {
    Homogeneous(i32),
    Inhomogeneous,
}

/// Noncommutative polynomial: finite sum of scalar-weighted words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    sig: SigRef,
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero(sig: &SigRef) -> Self {
        Poly {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: &SigRef) -> Self {
        Self::scalar(sig, sig.params().one())
    }

    pub fn scalar(sig: &SigRef, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Word::unit(), c);
        }
        Poly {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn generator(sig: &SigRef, g: GenId) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::gen(g), sig.params().one());
        Poly {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn gen_by_name(sig: &SigRef, name: &str) -> Result<Self, NcError> {
        Ok(Self::generator(sig, sig.id_of(name)?))
    }

    pub fn word(sig: &SigRef, w: Word) -> Self {
        Self::term(sig, w, sig.params().one())
    }

    pub fn term(sig: &SigRef, w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Poly {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn from_terms(sig: &SigRef, it: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Poly::zero(sig);
        for (w, c) in it {
            p.insert_add(w, c);
        }
        p
    }

    pub fn sig(&self) -> &SigRef {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.sig.params().zero())
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    pub fn insert_add(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e = e.add(&c);
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    fn same_sig(&self, other: &Poly) -> Result<(), NcError> {
        if Arc::ptr_eq(&self.sig, &other.sig) || self.sig == other.sig {
            Ok(())
        } else {
            Err(NcError::MixedSignatures)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, NcError> {
        self.same_sig(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, NcError> {
        self.same_sig(other)?;
        let mut out = Poly::zero(&self.sig);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.insert_add(wa.concat(wb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.try_add(other).expect("mixed presentations")
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    /// Free product: words concatenate, scalars multiply.  No sign rules.
    pub fn mul(&self, other: &Poly) -> Poly {
        self.try_mul(other).expect("mixed presentations")
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.sig);
        }
        Poly {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.sig);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn ghost_number(&self) -> GhostNumber {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return GhostNumber::Homogeneous(0);
        };
        let g = self.sig.ghost_number_of_word(first);
        for w in it {
            if self.sig.ghost_number_of_word(w) != g {
                return GhostNumber::Inhomogeneous;
            }
        }
        GhostNumber::Homogeneous(g)
    }

    /// Parity, when all words agree.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let p = self.sig.parity_of_word(first);
        for w in it {
            if self.sig.parity_of_word(w) != p {
                return None;
            }
        }
        Some(p)
    }

    /// Apply parameter bindings to every coefficient.
    pub fn substitute_params(
        &self,
        bindings: &BTreeMap<String, Scalar>,
    ) -> Result<Poly, CoeffError> {
        let mut out = Poly::zero(&self.sig);
        for (w, c) in &self.terms {
            out.insert_add(w.clone(), c.substitute(bindings)?);
        }
        Ok(out)
    }

    /// Restriction to the terms selected by `pred`.
    pub fn filter_terms(&self, mut pred: impl FnMut(&Word) -> bool) -> Poly {
        Poly {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| pred(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// `p q ∓ q p` as a free polynomial (no reduction).
pub fn bracket(p: &Poly, q: &Poly, kind: BracketKind) -> Poly {
    let pq = p.mul(q);
    let qp = q.mul(p);
    match kind {
        BracketKind::Commutator => pq.sub(&qp),
        BracketKind::Anticommutator => pq.add(&qp),
    }
}

/// Graded bracket: anticommutator when both arguments are odd, commutator
/// otherwise.  Arguments must be parity-homogeneous.
pub fn graded_bracket(p: &Poly, q: &Poly) -> Result<Poly, NcError> {
    let (pp, pq) = (
        p.parity()
            .ok_or_else(|| NcError::InvalidRelation("parity-inhomogeneous operand".into()))?,
        q.parity()
            .ok_or_else(|| NcError::InvalidRelation("parity-inhomogeneous operand".into()))?,
    );
    let kind = if pp == Parity::Odd && pq == Parity::Odd {
        BracketKind::Anticommutator
    } else {
        BracketKind::Commutator
    };
    Ok(bracket(p, q, kind))
}

/// An oriented relation `lhs = rhs` with `lhs` a word of degree ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Poly,
}

/// A finitely generated presentation: generators, parameters, oriented
/// relations, and a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    sig: SigRef,
    relations: Vec<Relation>,
    label: String,
}

impl Presentation {
    pub fn new(sig: SigRef, relations: Vec<Relation>, label: &str) -> Result<Self, NcError> {
        let mut seen: Vec<&Word> = Vec::new();
        for rel in &relations {
            if rel.lhs.degree() < 2 {
                return Err(NcError::InvalidRelation(
                    "left side must have degree at least 2".into(),
                ));
            }
            if seen.contains(&&rel.lhs) {
                return Err(NcError::InvalidRelation(
                    "duplicate left-hand side word".into(),
                ));
            }
            seen.push(&rel.lhs);
            let g = sig.ghost_number_of_word(&rel.lhs);
            for (w, _) in rel.rhs.terms() {
                if sig.ghost_number_of_word(w) != g {
                    return Err(NcError::InvalidRelation(
                        "relation mixes ghost numbers across terms".into(),
                    ));
                }
                if w.degree() > rel.lhs.degree() {
                    return Err(NcError::InvalidRelation(
                        "right side exceeds left side degree".into(),
                    ));
                }
            }
        }
        Ok(Presentation {
            sig,
            relations,
            label: label.to_owned(),
        })
    }

    pub fn sig(&self) -> &SigRef {
        &self.sig
    }

    pub fn params(&self) -> &ParameterSet {
        self.sig.params()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Same generators and relations with every coefficient substituted.
    pub fn substitute_params(
        &self,
        bindings: &BTreeMap<String, Scalar>,
        label: &str,
    ) -> Result<Presentation, CoeffError> {
        let mut relations = Vec::with_capacity(self.relations.len());
        for rel in &self.relations {
            relations.push(Relation {
                lhs: rel.lhs.clone(),
                rhs: rel.rhs.substitute_params(bindings)?,
            });
        }
        Ok(Presentation {
            sig: self.sig.clone(),
            relations,
            label: label.to_owned(),
        })
    }
}

// --- rendering ----------------------------------------------------------

struct WordDisplay<'a> {
    sig: &'a Signature,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_unit() {
            return write!(f, "1");
        }
        // collapse runs of one generator into powers
        let mut first = true;
        let mut i = 0;
        let ls = self.word.letters();
        while i < ls.len() {
            let mut j = i + 1;
            while j < ls.len() && ls[j] == ls[i] {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = &self.sig.info(ls[i]).name;
            if j - i == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl Poly {
    pub fn render_word<'a>(&'a self, w: &'a Word) -> impl fmt::Display + 'a {
        WordDisplay {
            sig: &self.sig,
            word: w,
        }
    }
}

impl fmt::Display for Poly {
    /// Deterministic rendering: terms in descending term order, canonical
    /// scalar rendering, `^` for repeated letters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let lead = i == 0;
            if w.is_unit() {
                // bare scalar term
                let s = alloc::format!("{c}");
                if lead {
                    write!(f, "{s}")?;
                } else if let Some(rest) = s.strip_prefix('-') {
                    write!(f, " - {rest}")?;
                } else {
                    write!(f, " + {s}")?;
                }
                continue;
            }
            let one = self.sig.params().one();
            let minus_one = one.neg();
            if *c == one {
                if !lead {
                    write!(f, " + ")?;
                }
            } else if *c == minus_one {
                if lead {
                    write!(f, "-")?;
                } else {
                    write!(f, " - ")?;
                }
            } else {
                let s = alloc::format!("{c}");
                let (sign, body) = match s.strip_prefix('-') {
                    Some(rest) => ("-", rest),
                    None => ("+", s.as_str()),
                };
                if lead {
                    if sign == "-" {
                        write!(f, "-")?;
                    }
                } else if sign == "-" {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                if self.sig.params().is_empty() || !body.contains(|ch| ch == '+' || ch == '-') {
                    write!(f, "{body}*")?;
                } else {
                    write!(f, "({body})*")?;
                }
            }
            write!(
                f,
                "{}",
                WordDisplay {
                    sig: &self.sig,
                    word: w
                }
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> SigRef {
        let params = ParameterSet::new(&["a"]);
        Signature::new(
            vec![
                GeneratorInfo::new("chi1", Parity::Even, 0, 0),
                GeneratorInfo::new("chi2", Parity::Even, 0, 1),
                GeneratorInfo::new("c1", Parity::Odd, 1, 3),
                GeneratorInfo::new("b1", Parity::Odd, -1, 4),
            ],
            params,
        )
        .unwrap()
    }

    #[test]
    fn free_product_concatenates() {
        let s = sig();
        let c1 = Poly::gen_by_name(&s, "c1").unwrap();
        let chi1 = Poly::gen_by_name(&s, "chi1").unwrap();
        let p = c1.mul(&chi1);
        assert_eq!(p.len(), 1);
        let (w, c) = p.terms().next().unwrap();
        assert_eq!(w.degree(), 2);
        assert!(c.is_one());
        assert_eq!(alloc::format!("{p}"), "c1*chi1");
    }

    #[test]
    fn commutator_of_equal_args_vanishes() {
        let s = sig();
        let chi1 = Poly::gen_by_name(&s, "chi1").unwrap();
        let chi2 = Poly::gen_by_name(&s, "chi2").unwrap();
        let p = chi1.add(&chi2.scalar_mul(&s.params().int(3)));
        assert!(bracket(&p, &p, BracketKind::Commutator).is_zero());
        let c = bracket(&chi1, &chi2, BracketKind::Commutator);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn ghost_numbers() {
        let s = sig();
        let c1 = Poly::gen_by_name(&s, "c1").unwrap();
        let b1 = Poly::gen_by_name(&s, "b1").unwrap();
        assert_eq!(Poly::one(&s).ghost_number(), GhostNumber::Homogeneous(0));
        assert_eq!(c1.ghost_number(), GhostNumber::Homogeneous(1));
        assert_eq!(c1.add(&b1).ghost_number(), GhostNumber::Inhomogeneous);
        assert_eq!(c1.mul(&b1).ghost_number(), GhostNumber::Homogeneous(0));
    }

    #[test]
    fn presentation_rejects_mixed_ghost_relation() {
        let s = sig();
        let c1 = s.id_of("c1").unwrap();
        let chi1 = s.id_of("chi1").unwrap();
        let lhs = Word::from_letters(vec![c1, chi1]);
        // rhs mixes ghost numbers 1 and 0
        let rhs = Poly::gen_by_name(&s, "c1")
            .unwrap()
            .add(&Poly::one(&s));
        let err = Presentation::new(s.clone(), vec![Relation { lhs, rhs }], "bad");
        assert!(err.is_err());
    }

    #[test]
    fn word_order_is_deg_lex() {
        let s = sig();
        let chi1 = s.id_of("chi1").unwrap();
        let chi2 = s.id_of("chi2").unwrap();
        let w12 = Word::from_letters(vec![chi1, chi2]);
        let w21 = Word::from_letters(vec![chi2, chi1]);
        assert!(w21 > w12);
        assert!(w12 > Word::gen(chi2));
    }
}
