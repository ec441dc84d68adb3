//! Exact coefficient field: multivariate rational functions over the
//! rationals in a declared, ordered set of parameter symbols.
//!
//! Every [`Scalar`] is kept in canonical form — numerator and denominator
//! coprime, denominator monic under the graded-lexicographic monomial order
//! anchored by the [`ParameterSet`] declaration order — so equality is
//! structural and zero testing is exact.

pub mod mpoly;

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use mpoly::MPoly;

/// Errors arising in coefficient arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffError {
    DivisionByZero,
    /// A substitution made a denominator vanish; carries the rendered
    /// denominator and the offending bindings.
    DenominatorVanished { denominator: String, bindings: String },
    UnknownParameter(String),
    /// A value that had to be a plain rational still contains parameters.
    NotRational(String),
}

impl fmt::Display for CoeffError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffError::DivisionByZero => write!(f, "division by zero scalar"),
            CoeffError::DenominatorVanished { denominator, bindings } => write!(
                f,
                "denominator `{denominator}` vanishes under bindings {bindings}"
            ),
            CoeffError::UnknownParameter(name) => write!(f, "unknown parameter `{name}`"),
            CoeffError::NotRational(s) => write!(f, "expected a rational value, got `{s}`"),
        }
    }
}

impl core::error::Error for CoeffError {}

#[derive(Debug, PartialEq, Eq)]
struct ParamsInner {
    names: Vec<String>,
}

/// Ordered set of parameter symbols.  The declaration order is fixed at
/// creation and anchors the canonical monomial order.
#[derive(Clone, Debug)]
pub struct ParameterSet {
    inner: Arc<ParamsInner>,
}

impl PartialEq for ParameterSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.names == other.inner.names
    }
}

impl Eq for ParameterSet {}

impl ParameterSet {
    /// Panics on duplicate names; parameter sets are built from static
    /// declarations.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_owned()).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate parameter name `{n}`"
            );
        }
        ParameterSet {
            inner: Arc::new(ParamsInner { names }),
        }
    }

    pub fn empty() -> Self {
        Self::new::<&str>(&[])
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.names.iter().position(|n| n == name)
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.inner.names[idx]
    }

    // --- scalar constructors -------------------------------------------

    pub fn zero(&self) -> Scalar {
        Scalar {
            ps: self.clone(),
            num: MPoly::zero(),
            den: MPoly::one(self.len()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        self.rational(BigRational::from(BigInt::from(n)))
    }

    pub fn rational(&self, q: BigRational) -> Scalar {
        Scalar {
            ps: self.clone(),
            num: MPoly::constant(self.len(), q),
            den: MPoly::one(self.len()),
        }
    }

    pub fn ratio(&self, n: i64, d: i64) -> Scalar {
        assert!(d != 0);
        self.rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The parameter with the given name as a scalar.
    pub fn param(&self, name: &str) -> Scalar {
        let idx = self
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown parameter `{name}`"));
        Scalar {
            ps: self.clone(),
            num: MPoly::var(self.len(), idx),
            den: MPoly::one(self.len()),
        }
    }
}

/// Exact rational function in the declared parameters.
///
/// Canonical form: numerator and denominator coprime, denominator monic
/// (leading coefficient 1 under graded lex), zero represented as `0/1`.
/// Two scalars are equal iff their representations coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar {
    ps: ParameterSet,
    num: MPoly,
    den: MPoly,
}

impl Scalar {
    fn normalized(ps: ParameterSet, num: MPoly, den: MPoly) -> Result<Scalar, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(ps.zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().clone();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            num = num.mul_scalar(&inv);
            den = den.mul_scalar(&inv);
        }
        Ok(Scalar { ps, num, den })
    }

    pub fn params(&self) -> &ParameterSet {
        &self.ps
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.constant_value().map(|c| c.is_one()).unwrap_or(false)
            && self.num.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }

    fn check_params(&self, other: &Scalar) {
        assert!(
            self.ps == other.ps,
            "scalars over different parameter sets"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_params(other);
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::normalized(self.ps.clone(), num, den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            ps: self.ps.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_params(other);
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        Scalar::normalized(self.ps.clone(), num, den).expect("nonzero denominators")
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, CoeffError> {
        self.check_params(other);
        if other.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let num = self.num.mul(&other.den);
        let den = self.den.mul(&other.num);
        Scalar::normalized(self.ps.clone(), num, den)
    }

    pub fn inv(&self) -> Result<Scalar, CoeffError> {
        self.ps.one().div(self)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.ps.one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute bindings (parameter name → scalar) and re-normalise.
    /// Unbound parameters survive.  Fails if a denominator vanishes.
    pub fn substitute(&self, bindings: &BTreeMap<String, Scalar>) -> Result<Scalar, CoeffError> {
        for name in bindings.keys() {
            if self.ps.index_of(name).is_none() {
                return Err(CoeffError::UnknownParameter(name.clone()));
            }
        }
        let num = eval_poly(&self.ps, &self.num, bindings);
        let den = eval_poly(&self.ps, &self.den, bindings);
        if den.is_zero() {
            let mut bs: Vec<String> = bindings
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            bs.sort();
            return Err(CoeffError::DenominatorVanished {
                denominator: format!("{}", render_poly(&self.ps, &self.den)),
                bindings: bs.join(", "),
            });
        }
        num.div(&den)
    }

    /// The rational value of a parameter-free scalar.
    pub fn to_rational(&self) -> Result<BigRational, CoeffError> {
        match (self.num.constant_value(), self.den.constant_value()) {
            (Some(n), Some(d)) => Ok(n / d),
            _ => Err(CoeffError::NotRational(format!("{self}"))),
        }
    }

    /// Evaluate at a full rational point.
    pub fn eval_rational(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational, CoeffError> {
        let bindings: BTreeMap<String, Scalar> = point
            .iter()
            .map(|(k, v)| (k.clone(), self.ps.rational(v.clone())))
            .collect();
        self.substitute(&bindings)?.to_rational()
    }
}

fn eval_poly(ps: &ParameterSet, p: &MPoly, bindings: &BTreeMap<String, Scalar>) -> Scalar {
    let mut acc = ps.zero();
    for (mono, coeff) in &p.terms {
        let mut term = ps.rational(coeff.clone());
        for (idx, &e) in mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = match bindings.get(ps.name(idx)) {
                Some(s) => s.clone(),
                None => ps.param(ps.name(idx)),
            };
            term = term.mul(&base.pow(e as u32));
        }
        acc = acc.add(&term);
    }
    acc
}

// --- rendering ----------------------------------------------------------

struct PolyDisplay<'a> {
    ps: &'a ParameterSet,
    poly: &'a MPoly,
}

fn render_poly<'a>(ps: &'a ParameterSet, poly: &'a MPoly) -> PolyDisplay<'a> {
    PolyDisplay { ps, poly }
}

fn fmt_rational(f: &mut fmt::Formatter<'_>, q: &BigRational, lead: bool) -> fmt::Result {
    // `lead` selects "x" vs "+ x"/"- x" joining.
    let neg = q.is_negative();
    let abs = q.abs();
    if lead {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if abs.denom().is_one() {
        write!(f, "{}", abs.numer())
    } else {
        write!(f, "{}/{}", abs.numer(), abs.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // Descending: leading term first.
        for (i, (mono, coeff)) in self.poly.terms.iter().rev().enumerate() {
            let lead = i == 0;
            if mono.is_unit() {
                fmt_rational(f, coeff, lead)?;
                continue;
            }
            if coeff.abs().is_one() {
                if lead {
                    if coeff.is_negative() {
                        write!(f, "-")?;
                    }
                } else if coeff.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
            } else {
                fmt_rational(f, coeff, lead)?;
                write!(f, "*")?;
            }
            let mut first = true;
            for (idx, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{}", self.ps.name(idx))?;
                } else {
                    write!(f, "{}^{}", self.ps.name(idx), e)?;
                }
            }
        }
        Ok(())
    }
}

impl Scalar {
    /// True when the textual form is a single product (no top-level `+`/`-`
    /// after the first character), so it can be juxtaposed with `*`.
    pub fn is_single_term(&self) -> bool {
        self.num.terms.len() <= 1 && self.den.constant_value().map(|c| c.is_one()).unwrap_or(true)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().map(|c| c.is_one()).unwrap_or(false) {
            return write!(f, "{}", render_poly(&self.ps, &self.num));
        }
        if self.num.terms.len() > 1 {
            write!(f, "({})", render_poly(&self.ps, &self.num))?;
        } else {
            write!(f, "{}", render_poly(&self.ps, &self.num))?;
        }
        write!(f, "/")?;
        // Denominator is monic; parenthesise unless it is a single power of
        // a single parameter.
        let simple = self.den.terms.len() == 1 && {
            let (m, c) = self.den.terms.iter().next().unwrap();
            c.is_one() && m.0.iter().filter(|&&e| e > 0).count() == 1
        };
        if simple {
            write!(f, "{}", render_poly(&self.ps, &self.den))
        } else {
            write!(f, "({})", render_poly(&self.ps, &self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn ps() -> ParameterSet {
        ParameterSet::new(&["a1", "a2", "a3"])
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let p = ps();
        let a2 = p.param("a2");
        let a3 = p.param("a3");
        let two = p.int(2);
        // (a3/(2 a2)) * (2 a2 / a3) = 1
        let x = a3.div(&two.mul(&a2)).unwrap();
        let y = two.mul(&a2).div(&a3).unwrap();
        assert!(x.mul(&y).is_one());
    }

    #[test]
    fn like_terms_add() {
        let p = ps();
        let inv_a1 = p.one().div(&p.param("a1")).unwrap();
        let sum = inv_a1.add(&inv_a1);
        assert_eq!(sum, p.int(2).div(&p.param("a1")).unwrap());
        assert_eq!(sum.to_string(), "2/a1");
    }

    #[test]
    fn canonical_monic_denominator() {
        let p = ps();
        // (2 a2 - a3) / (2 a1) -> numerator a2 - 1/2 a3, denominator a1
        let num = p.int(2).mul(&p.param("a2")).sub(&p.param("a3"));
        let den = p.int(2).mul(&p.param("a1"));
        let beta = num.div(&den).unwrap();
        assert_eq!(beta.to_string(), "(a2 - 1/2*a3)/a1");
        // canonical == unique representation
        let beta2 = p
            .param("a2")
            .div(&p.param("a1"))
            .unwrap()
            .sub(&p.param("a3").div(&p.int(2).mul(&p.param("a1"))).unwrap());
        assert_eq!(beta, beta2);
    }

    #[test]
    fn substitute_beta_at_point() {
        let p = ps();
        let beta = p
            .int(2)
            .mul(&p.param("a2"))
            .sub(&p.param("a3"))
            .div(&p.int(2).mul(&p.param("a1")))
            .unwrap();
        let mut b = BTreeMap::new();
        b.insert("a1".to_string(), p.int(1));
        b.insert("a2".to_string(), p.int(1));
        b.insert("a3".to_string(), p.int(4));
        assert_eq!(beta.substitute(&b).unwrap(), p.int(-1));
    }

    #[test]
    fn substitute_partial() {
        let p = ps();
        // t = 2 a2 / a3 at a2 = a3 = alpha-like shared value: bind both to a1
        let t = p.int(2).mul(&p.param("a2")).div(&p.param("a3")).unwrap();
        let mut b = BTreeMap::new();
        b.insert("a2".to_string(), p.param("a1"));
        b.insert("a3".to_string(), p.param("a1"));
        assert_eq!(t.substitute(&b).unwrap(), p.int(2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let p = ps();
        assert_eq!(p.one().div(&p.zero()), Err(CoeffError::DivisionByZero));
        let diff = p.param("a2").sub(&p.param("a2"));
        assert_eq!(p.param("a1").div(&diff), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn vanishing_denominator_reported() {
        let p = ps();
        let x = p.one().div(&p.param("a1").sub(&p.param("a2"))).unwrap();
        let mut b = BTreeMap::new();
        b.insert("a1".to_string(), p.param("a2"));
        match x.substitute(&b) {
            Err(CoeffError::DenominatorVanished { .. }) => {}
            other => panic!("expected vanishing denominator, got {other:?}"),
        }
    }
}
