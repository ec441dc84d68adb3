//! Sparse multivariate polynomials over the rationals, plus the integer
//! GCD kernel used to keep rational functions in lowest terms.
//!
//! Monomials are exponent vectors of a fixed width (one slot per declared
//! parameter) ordered graded-lexicographically: total degree first, then
//! lexicographic with the first parameter most significant.  `BTreeMap`
//! iteration therefore ends at the leading monomial.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector of fixed width.  Ordering is graded lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn unit(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0u16; nvars];
        e[idx] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise quotient; `None` when not divisible.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Mono(e))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Sparse polynomial with rational coefficients.  No zero coefficients are
/// stored; the zero polynomial has an empty term map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Mono, BigRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::unit(nvars), c);
        }
        MPoly { terms }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::var(nvars, idx), BigRational::one());
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.leading_mono().is_unit())
    }

    /// The constant value, when [`is_constant`](Self::is_constant) holds.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn leading_mono(&self) -> &Mono {
        self.terms.keys().next_back().expect("leading term of zero")
    }

    pub fn leading_coeff(&self) -> &BigRational {
        self.terms.values().next_back().expect("leading term of zero")
    }

    fn insert_add(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let nvars = self.nvars();
        let mut base = self.clone();
        let mut acc = MPoly::one(nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn nvars(&self) -> usize {
        self.terms.keys().next().map(|m| m.0.len()).unwrap_or(0)
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &MPoly) -> Option<MPoly> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        let lm = other.leading_mono().clone();
        let lc = other.leading_coeff().clone();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.terms.iter().next_back().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            for (m, c) in &other.terms {
                rem.insert_add(qm.mul(m), -(c * &qc));
            }
            quot.insert_add(qm, qc);
        }
        Some(quot)
    }

    /// Greatest common divisor, returned primitive with positive leading
    /// coefficient (1 for coprime inputs).
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        if self.is_zero() && other.is_zero() {
            return MPoly::zero();
        }
        let nvars = if self.is_zero() {
            other.nvars()
        } else {
            self.nvars()
        };
        if self.is_constant() || other.is_constant() {
            if self.is_zero() {
                return make_primitive_q(other);
            }
            if other.is_zero() {
                return make_primitive_q(self);
            }
            return MPoly::one(nvars);
        }
        let za = to_primitive_int(self);
        let zb = to_primitive_int(other);
        let g = zgcd(&za, &zb);
        from_int(&g)
    }
}

/// Integer-coefficient polynomial used internally by the GCD kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ZPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl ZPoly {
    fn zero() -> Self {
        ZPoly {
            terms: BTreeMap::new(),
        }
    }

    fn one(nvars: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono::unit(nvars), BigInt::one());
        ZPoly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    fn nvars(&self) -> usize {
        self.terms.keys().next().map(|m| m.0.len()).unwrap_or(0)
    }

    fn insert_add(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn mul(&self, other: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn mul_z(&self, c: &BigInt) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    fn sub(&self, other: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), -c.clone());
        }
        out
    }

    /// Integer content (gcd of coefficients), always non-negative.
    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn div_z_exact(&self, c: &BigInt) -> ZPoly {
        ZPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| {
                    let (q, r) = k.div_rem(c);
                    debug_assert!(r.is_zero());
                    (m.clone(), q)
                })
                .collect(),
        }
    }

    /// Divide out integer content and normalise the leading coefficient sign.
    fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.terms.values().next_back().unwrap().is_negative() {
            c = -c;
        }
        self.div_z_exact(&c)
    }

    /// Exact polynomial division (panics if not divisible; callers only
    /// divide by known factors).
    fn div_exact(&self, other: &ZPoly) -> ZPoly {
        let mut rem = self.clone();
        let mut quot = ZPoly::zero();
        let lm = other.terms.keys().next_back().expect("divisor is zero").clone();
        let lc = other.terms.values().next_back().unwrap().clone();
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.terms.iter().next_back().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.div(&lm).expect("inexact polynomial division");
            let (qc, r) = rc.div_rem(&lc);
            assert!(r.is_zero(), "inexact polynomial division");
            for (m, c) in &other.terms {
                rem.insert_add(qm.mul(m), -(c * &qc));
            }
            quot.insert_add(qm, qc);
        }
        quot
    }

    fn degree_in(&self, var: usize) -> u16 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Highest variable index actually present, if any.
    fn main_var(&self) -> Option<usize> {
        let n = self.nvars();
        (0..n).rev().find(|&v| self.degree_in(v) > 0)
    }

    /// View as a univariate polynomial in `var` with `ZPoly` coefficients.
    fn as_univar(&self, var: usize) -> BTreeMap<u16, ZPoly> {
        let mut out: BTreeMap<u16, ZPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out.entry(e).or_insert_with(ZPoly::zero).insert_add(m2, c.clone());
        }
        out
    }

    fn var_pow(nvars: usize, var: usize, e: u16) -> ZPoly {
        let mut m = Mono::unit(nvars);
        m.0[var] = e;
        let mut terms = BTreeMap::new();
        terms.insert(m, BigInt::one());
        ZPoly { terms }
    }
}

fn to_primitive_int(p: &MPoly) -> ZPoly {
    let mut lcm = BigInt::one();
    for c in p.terms.values() {
        lcm = lcm.lcm(c.denom());
    }
    let z = ZPoly {
        terms: p
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&lcm / c.denom())))
            .collect(),
    };
    z.primitive()
}

fn from_int(p: &ZPoly) -> MPoly {
    MPoly {
        terms: p
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), BigRational::from(c.clone())))
            .collect(),
    }
}

fn make_primitive_q(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    from_int(&to_primitive_int(p))
}

/// Multivariate gcd via the primitive Euclidean algorithm (content split
/// off and handled recursively).
fn zgcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let nvars = a.nvars();
    if a.is_constant() || b.is_constant() {
        let g = a.content().gcd(&b.content());
        let mut terms = BTreeMap::new();
        terms.insert(Mono::unit(nvars), g);
        return ZPoly { terms };
    }
    let var = a.main_var().max(b.main_var()).expect("non-constant");

    let ua = a.as_univar(var);
    let ub = b.as_univar(var);
    let cont_a = ua.values().fold(ZPoly::zero(), |g, c| zgcd(&g, c));
    let cont_b = ub.values().fold(ZPoly::zero(), |g, c| zgcd(&g, c));
    let ppa = a.div_exact(&cont_a);
    let ppb = b.div_exact(&cont_b);
    let gc = zgcd(&cont_a, &cont_b);

    let (mut f, mut g) = if ppa.degree_in(var) >= ppb.degree_in(var) {
        (ppa, ppb)
    } else {
        (ppb, ppa)
    };
    loop {
        if g.is_zero() {
            let pp = primitive_in(&f, var);
            return gc.mul(&pp).primitive();
        }
        if g.degree_in(var) == 0 {
            // A degree-zero remainder divides both primitive parts only if
            // it is a unit, so the primitive-part gcd is trivial.
            return gc.primitive();
        }
        let r = prem(&f, &g, var);
        f = g;
        g = primitive_in(&r, var);
    }
}

/// Primitive part with respect to one variable: divide out the gcd of the
/// univariate coefficients.
fn primitive_in(p: &ZPoly, var: usize) -> ZPoly {
    if p.is_zero() {
        return p.clone();
    }
    let u = p.as_univar(var);
    let cont = u.values().fold(ZPoly::zero(), |g, c| zgcd(&g, c));
    p.div_exact(&cont).primitive()
}

/// Pseudo-remainder of `f` by `g` in `var` (fraction-free).
fn prem(f: &ZPoly, g: &ZPoly, var: usize) -> ZPoly {
    let nvars = f.nvars();
    let dg = g.degree_in(var);
    let ug = g.as_univar(var);
    let lc_g = ug.get(&dg).unwrap().clone();
    let mut r = f.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let dr = r.degree_in(var);
        if dr < dg {
            return r;
        }
        let ur = r.as_univar(var);
        let lc_r = ur.get(&dr).unwrap().clone();
        let shift = ZPoly::var_pow(nvars, var, dr - dg);
        r = r.mul(&lc_g).sub(&g.mul(&lc_r).mul(&shift));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn graded_lex_order() {
        // with two vars (a, b): a^2 > a*b > b^2 > a > b > 1
        let a2 = Mono(vec![2, 0]);
        let ab = Mono(vec![1, 1]);
        let b2 = Mono(vec![0, 2]);
        let a = Mono(vec![1, 0]);
        assert!(a2 > ab && ab > b2 && b2 > a);
    }

    #[test]
    fn gcd_cancels_common_factor() {
        // (x+1)*(x+2) and (x+1)*(x+3) over one var
        let x = MPoly::var(1, 0);
        let one = MPoly::one(1);
        let f = x.add(&one).mul(&x.add(&MPoly::constant(1, q(2))));
        let g = x.add(&one).mul(&x.add(&MPoly::constant(1, q(3))));
        let d = f.gcd(&g);
        assert_eq!(d, x.add(&one));
    }

    #[test]
    fn gcd_multivar() {
        // gcd((x+y)^2 * x, (x+y) * y) = x + y
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let s = x.add(&y);
        let f = s.pow(2).mul(&x);
        let g = s.mul(&y);
        assert_eq!(f.gcd(&g), s);
    }

    #[test]
    fn div_exact_roundtrip() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = x.add(&y).mul(&x.sub(&y));
        let q1 = f.div_exact(&x.add(&y)).unwrap();
        assert_eq!(q1, x.sub(&y));
        assert!(f.div_exact(&x).is_none());
        let _ = f.terms.len().to_string();
    }
}
