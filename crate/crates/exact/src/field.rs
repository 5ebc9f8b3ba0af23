use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ExactError;

/// An exact scalar. Which variant is valid depends on the owning [`Field`]:
/// `Rat` for the rationals, `Mod` for prime fields (residue in `0..p`), and
/// `Poly` for quotient rings (coefficients in the base, low degree first,
/// no trailing zeros, fewer coefficients than the modulus degree).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
    Poly(Vec<Scalar>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Checked by the root scan (degree <= 3).
    Verified,
    /// A root was found, so the quotient ring has zero divisors.
    Reducible,
    /// Not checked (degree > 3 or coefficients too large); taken on trust.
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    base: Field,
    modulus: Vec<Scalar>,
    irreducible: Irreducibility,
}

/// Coefficient domain: the rationals, a prime field, or a univariate
/// quotient ring over one of those.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Prime(u64),
    Quotient(Box<QuotientRing>),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, ExactError> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(ExactError::NotPrime(p))
        }
    }

    /// Quotient ring `base[t]/(modulus)`; `modulus` is given low degree first
    /// and is made monic.
    pub fn quotient(base: Field, modulus: Vec<Scalar>) -> Result<Field, ExactError> {
        if matches!(base, Field::Quotient(_)) {
            return Err(ExactError::BadFieldSpec {
                spec: format!("{base}[t]"),
                reason: "nested quotient rings are not supported".into(),
            });
        }
        let mut m = base.poly_trim(modulus);
        if m.len() < 2 {
            return Err(ExactError::BadFieldSpec {
                spec: format!("{base}[t]"),
                reason: "modulus must have degree at least 1".into(),
            });
        }
        let lead_inv = base.inv(m.last().unwrap())?;
        m = m.iter().map(|c| base.mul(c, &lead_inv)).collect();
        let irreducible = irreducibility(&base, &m);
        Ok(Field::Quotient(Box::new(QuotientRing {
            base,
            modulus: m,
            irreducible,
        })))
    }

    /// Parses the field grammar `QQ`, `Fp(7)`, `QQ[t]/(t^2+t+1)`, `Fp(2)[t]/(t^2+t+1)`.
    pub fn parse(spec: &str) -> Result<Field, ExactError> {
        let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |reason: &str| ExactError::BadFieldSpec {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (base_str, rest) = match s.find('[') {
            Some(i) => (&s[..i], Some(&s[i..])),
            None => (&s[..], None),
        };
        let base = if base_str == "QQ" || base_str == "Q" {
            Field::Rationals
        } else if let Some(inner) = base_str.strip_prefix("Fp(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = inner.parse().map_err(|_| bad("prime is not an integer"))?;
            Field::prime(p)?
        } else {
            return Err(bad("expected QQ or Fp(p)"));
        };
        match rest {
            None => Ok(base),
            Some(r) => {
                let poly = r
                    .strip_prefix("[t]/(")
                    .or_else(|| r.strip_prefix("[q]/("))
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| bad("expected [t]/(polynomial)"))?;
                let coeffs = base.parse_poly(poly).map_err(|e| match e {
                    ExactError::BadScalar { reason, .. } => bad(&reason),
                    other => other,
                })?;
                Field::quotient(base, coeffs)
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
            Field::Quotient(q) => q.base.characteristic(),
        }
    }

    /// The base field of a quotient ring, or the field itself.
    pub fn base(&self) -> &Field {
        match self {
            Field::Quotient(q) => &q.base,
            other => other,
        }
    }

    /// Modulus coefficients (low degree first) of a quotient ring.
    pub fn modulus(&self) -> Option<&[Scalar]> {
        match self {
            Field::Quotient(q) => Some(&q.modulus),
            _ => None,
        }
    }

    pub fn irreducibility(&self) -> Irreducibility {
        match self {
            Field::Quotient(q) => q.irreducible,
            _ => Irreducibility::Verified,
        }
    }

    /// Number of elements, if finite and small enough to count in a u64.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
            Field::Quotient(q) => {
                let p = q.base.order()?;
                p.checked_pow((q.modulus.len() - 1) as u32)
            }
        }
    }

    /// All elements of a finite field in a fixed order (zero first).
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..*p).map(Scalar::Mod).collect()),
            Field::Quotient(q) => {
                let p = match q.base {
                    Field::Prime(p) => p,
                    _ => return None,
                };
                let deg = q.modulus.len() - 1;
                let total = p.checked_pow(deg as u32)?;
                let mut out = Vec::with_capacity(total as usize);
                for mut n in 0..total {
                    let mut coeffs = Vec::with_capacity(deg);
                    for _ in 0..deg {
                        coeffs.push(Scalar::Mod(n % p));
                        n /= p;
                    }
                    out.push(Scalar::Poly(q.base.poly_trim(coeffs)));
                }
                Some(out)
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(_) => Scalar::Mod(0),
            Field::Quotient(_) => Scalar::Poly(Vec::new()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Mod(r.to_u64().unwrap())
            }
            Field::Quotient(q) => self.embed(q.base.from_bigint(n)),
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar, ExactError> {
        let num = self.from_bigint(r.numer());
        let den = self.from_bigint(r.denom());
        self.div(&num, &den)
    }

    fn embed(&self, c: Scalar) -> Scalar {
        match self {
            Field::Quotient(q) => Scalar::Poly(q.base.poly_trim(vec![c])),
            _ => c,
        }
    }

    /// The class of `t` in a quotient ring.
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            Field::Quotient(q) => {
                let poly = vec![q.base.zero(), q.base.one()];
                Some(Scalar::Poly(q.base.poly_rem(&poly, &q.modulus)))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(r) => *r == 0,
            Scalar::Poly(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            (Field::Quotient(q), Scalar::Poly(x), Scalar::Poly(y)) => {
                Scalar::Poly(q.base.poly_add(x, y))
            }
            _ => panic!("scalar {a:?} or {b:?} does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod((p - x) % p),
            (Field::Quotient(q), Scalar::Poly(x)) => {
                Scalar::Poly(x.iter().map(|c| q.base.neg(c)).collect())
            }
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(mul_mod(*x, *y, *p)),
            (Field::Quotient(q), Scalar::Poly(x), Scalar::Poly(y)) => {
                let prod = q.base.poly_mul(x, y);
                Scalar::Poly(q.base.poly_rem(&prod, &q.modulus))
            }
            _ => panic!("scalar {a:?} or {b:?} does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar, ExactError> {
        if self.is_zero(a) {
            return Err(ExactError::DivisionByZero);
        }
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            (Field::Prime(p), Scalar::Mod(x)) => Ok(Scalar::Mod(pow_mod(*x, p - 2, *p))),
            (Field::Quotient(q), Scalar::Poly(x)) => {
                let (g, s) = q.base.poly_gcd_cofactor(x, &q.modulus)?;
                if g.len() > 1 {
                    let zd = Scalar::Poly(g);
                    return Err(ExactError::NotAField {
                        zero_divisor: self.format(&zd),
                    });
                }
                // g is a nonzero constant: s*x = g (mod m)
                let ginv = q.base.inv(&g[0])?;
                let s: Vec<Scalar> = s.iter().map(|c| q.base.mul(c, &ginv)).collect();
                Ok(Scalar::Poly(q.base.poly_rem(&s, &q.modulus)))
            }
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, ExactError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, e: i64) -> Result<Scalar, ExactError> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Ok(acc)
    }

    /// Multiplicative order of a nonzero element, searched up to `cap`.
    pub fn multiplicative_order(&self, a: &Scalar, cap: u64) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        let one = self.one();
        let mut x = a.clone();
        for k in 1..=cap {
            if x == one {
                return Some(k);
            }
            x = self.mul(&x, a);
        }
        None
    }

    // ---- polynomials over a base field (Rationals or Prime) ----

    fn poly_trim(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        while v.last().is_some_and(|c| self.is_zero(c)) {
            v.pop();
        }
        v
    }

    fn poly_add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = a.len().max(b.len());
        let zero = self.zero();
        let v = (0..n)
            .map(|i| self.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        self.poly_trim(v)
    }

    fn poly_mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.poly_trim(out)
    }

    /// Remainder of `a` modulo `m` (`m` nonzero).
    fn poly_rem(&self, a: &[Scalar], m: &[Scalar]) -> Vec<Scalar> {
        self.poly_divrem(a, m).1
    }

    fn poly_divrem(&self, a: &[Scalar], m: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let mut r = self.poly_trim(a.to_vec());
        let dm = m.len() - 1;
        if r.len() < m.len() {
            return (Vec::new(), r);
        }
        let lead_inv = self.inv(&m[dm]).expect("nonzero leading coefficient");
        let mut quo = vec![self.zero(); r.len() - dm];
        while r.len() >= m.len() {
            let shift = r.len() - m.len();
            let c = self.mul(r.last().unwrap(), &lead_inv);
            for (i, mi) in m.iter().enumerate() {
                r[shift + i] = self.sub(&r[shift + i], &self.mul(&c, mi));
            }
            quo[shift] = c;
            r = self.poly_trim(r);
        }
        (self.poly_trim(quo), r)
    }

    /// Returns `(g, s)` with `g = gcd(a, m)` and `s*a = g (mod m)`.
    fn poly_gcd_cofactor(
        &self,
        a: &[Scalar],
        m: &[Scalar],
    ) -> Result<(Vec<Scalar>, Vec<Scalar>), ExactError> {
        let (mut r0, mut r1) = (m.to_vec(), self.poly_trim(a.to_vec()));
        let (mut s0, mut s1): (Vec<Scalar>, Vec<Scalar>) = (Vec::new(), vec![self.one()]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let qs = self.poly_mul(&q, &s1);
            let s2 = self.poly_add(&s0, &qs.iter().map(|c| self.neg(c)).collect::<Vec<_>>());
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        Ok((r0, s0))
    }

    fn poly_eval(&self, a: &[Scalar], x: &Scalar) -> Scalar {
        let mut acc = self.zero();
        for c in a.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    // ---- parsing and printing ----

    /// Parses a polynomial in `t` (or `q`) with coefficients in this field's
    /// base; returns coefficients low degree first.
    fn parse_poly(&self, text: &str) -> Result<Vec<Scalar>, ExactError> {
        let base = self.base();
        let bad = |reason: String| ExactError::BadScalar {
            literal: text.to_string(),
            reason,
        };
        let s: String = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        if s.is_empty() {
            return Err(bad("empty literal".into()));
        }
        let bytes = s.as_bytes();
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        if bytes[0] == b'-' || bytes[0] == b'+' {
            negative = bytes[0] == b'-';
            start = 1;
        }
        let mut i = start;
        while i <= bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start) {
                terms.push((negative, &s[start..i]));
                if i < bytes.len() {
                    negative = bytes[i] == b'-';
                }
                start = i + 1;
            }
            i += 1;
        }
        let mut coeffs: Vec<Scalar> = Vec::new();
        for (neg, term) in terms {
            if term.is_empty() {
                return Err(bad("dangling sign".into()));
            }
            let (coef_str, var_part) = match term.find(['t', 'q']) {
                Some(k) => (&term[..k], Some(&term[k + 1..])),
                None => (term, None),
            };
            let coef_str = coef_str.strip_suffix('*').unwrap_or(coef_str);
            let coef = if coef_str.is_empty() {
                if var_part.is_none() {
                    return Err(bad("empty term".into()));
                }
                base.one()
            } else {
                let (n, d) = match coef_str.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (coef_str, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad(format!("bad coefficient {coef_str:?}")))?;
                let d: BigInt = d.parse().map_err(|_| bad(format!("bad coefficient {coef_str:?}")))?;
                if d.is_zero() {
                    return Err(bad("zero denominator".into()));
                }
                base.div(&base.from_bigint(&n), &base.from_bigint(&d))
                    .map_err(|_| bad("denominator vanishes in this field".into()))?
            };
            let deg = match var_part {
                None => 0usize,
                Some("") => 1,
                Some(rest) => {
                    let e = rest
                        .strip_prefix('^')
                        .ok_or_else(|| bad(format!("unexpected {rest:?} after variable")))?;
                    e.parse().map_err(|_| bad(format!("bad exponent {e:?}")))?
                }
            };
            let coef = if neg { base.neg(&coef) } else { coef };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, base.zero());
            }
            coeffs[deg] = base.add(&coeffs[deg], &coef);
        }
        Ok(base.poly_trim(coeffs))
    }

    /// Parses a scalar literal such as `-1`, `3/2`, `t+1`, `q^2` (`q` aliases `t`).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ExactError> {
        let coeffs = self.parse_poly(text)?;
        match self {
            Field::Quotient(q) => Ok(Scalar::Poly(q.base.poly_rem(&coeffs, &q.modulus))),
            _ => match coeffs.len() {
                0 => Ok(self.zero()),
                1 => Ok(coeffs.into_iter().next().unwrap()),
                _ => Err(ExactError::BadScalar {
                    literal: text.to_string(),
                    reason: format!("{self} has no generator t"),
                }),
            },
        }
    }

    fn format_base(&self, c: &Scalar) -> String {
        match c {
            Scalar::Rat(r) => r.to_string(),
            Scalar::Mod(r) => r.to_string(),
            Scalar::Poly(_) => unreachable!("base scalars are never polynomials"),
        }
    }

    fn format_poly(&self, coeffs: &[Scalar], var: &str) -> String {
        if coeffs.is_empty() {
            return "0".into();
        }
        let base = self.base();
        let mut out = String::new();
        for (deg, c) in coeffs.iter().enumerate().rev() {
            if base.is_zero(c) {
                continue;
            }
            let negative = matches!(c, Scalar::Rat(r) if r.is_negative());
            let mag = if negative { base.neg(c) } else { c.clone() };
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mag_str = base.format_base(&mag);
            let mono = match deg {
                0 => String::new(),
                1 => var.to_string(),
                k => format!("{var}^{k}"),
            };
            if deg == 0 {
                out.push_str(&mag_str);
            } else if base.is_one(&mag) {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag_str}*{mono}"));
            }
        }
        out
    }

    /// Canonical text of a scalar; `parse_scalar(format(x)) == x`.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Poly(c) => self.format_poly(c, "t"),
            other => self.format_base(other),
        }
    }

    // ---- homomorphisms used by modular probes ----

    /// Roots in `F_p` of this ring's modulus (empty for non-quotient fields).
    pub fn modulus_roots_mod(&self, p: u64) -> Vec<u64> {
        let Field::Quotient(q) = self else {
            return Vec::new();
        };
        let target = Field::Prime(p);
        let Ok(m) = q
            .modulus
            .iter()
            .map(|c| target.map_base(c))
            .collect::<Result<Vec<_>, _>>()
        else {
            return Vec::new();
        };
        (0..p)
            .filter(|&r| target.is_zero(&target.poly_eval(&m, &Scalar::Mod(r))))
            .collect()
    }

    fn map_base(&self, c: &Scalar) -> Result<Scalar, ExactError> {
        match (self, c) {
            (Field::Prime(p), Scalar::Rat(r)) => {
                let d = self.from_bigint(r.denom());
                if self.is_zero(&d) {
                    return Err(ExactError::NoHomomorphism {
                        target: format!("Fp({p})"),
                        reason: format!("denominator of {r} vanishes"),
                    });
                }
                self.div(&self.from_bigint(r.numer()), &d)
            }
            (Field::Prime(p), Scalar::Mod(x)) => Ok(Scalar::Mod(x % p)),
            _ => Err(ExactError::NoHomomorphism {
                target: self.to_string(),
                reason: "unsupported source".into(),
            }),
        }
    }

    /// Maps a scalar of `self` into `F_p`, sending `t` to `root` for quotient
    /// rings. Fails if a denominator vanishes mod `p`.
    pub fn reduce_mod(&self, a: &Scalar, p: u64, root: Option<u64>) -> Result<Scalar, ExactError> {
        let target = Field::Prime(p);
        match a {
            Scalar::Poly(c) => {
                let r = root.ok_or_else(|| ExactError::NoHomomorphism {
                    target: target.to_string(),
                    reason: "no root chosen for t".into(),
                })?;
                let mapped = c
                    .iter()
                    .map(|x| target.map_base(x))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(target.poly_eval(&mapped, &Scalar::Mod(r)))
            }
            other => target.map_base(other),
        }
    }
}

fn irreducibility(base: &Field, m: &[Scalar]) -> Irreducibility {
    let deg = m.len() - 1;
    if deg == 1 {
        return Irreducibility::Verified;
    }
    if deg > 3 {
        return Irreducibility::Assumed;
    }
    let has_root = match base {
        Field::Prime(p) => {
            if *p > 1_000_000 {
                return Irreducibility::Assumed;
            }
            (0..*p).any(|r| base.is_zero(&base.poly_eval(m, &Scalar::Mod(r))))
        }
        Field::Rationals => {
            // clear denominators, then rational root test
            let den_lcm = m.iter().fold(BigInt::one(), |acc, c| match c {
                Scalar::Rat(r) => acc.lcm(r.denom()),
                _ => acc,
            });
            let ints: Vec<BigInt> = m
                .iter()
                .map(|c| match c {
                    Scalar::Rat(r) => (r * BigRational::from_integer(den_lcm.clone())).to_integer(),
                    _ => BigInt::zero(),
                })
                .collect();
            let a0 = ints[0].abs();
            let an = ints[deg].abs();
            if a0.is_zero() {
                true
            } else {
                match (a0.to_u64(), an.to_u64()) {
                    (Some(a0), Some(an)) if a0 < 1_000_000_000_000 && an < 1_000_000_000_000 => {
                        let mut found = false;
                        'outer: for num in divisors(a0) {
                            for den in divisors(an) {
                                for sign in [1i64, -1] {
                                    let x = Scalar::Rat(BigRational::new(
                                        BigInt::from(num) * sign,
                                        BigInt::from(den),
                                    ));
                                    if base.is_zero(&base.poly_eval(m, &x)) {
                                        found = true;
                                        break 'outer;
                                    }
                                }
                            }
                        }
                        found
                    }
                    _ => return Irreducibility::Assumed,
                }
            }
        }
        Field::Quotient(_) => return Irreducibility::Assumed,
    };
    if has_root {
        Irreducibility::Reducible
    } else {
        Irreducibility::Verified
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            if k * k != n {
                out.push(n / k);
            }
        }
        k += 1;
    }
    out
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "Fp({p})"),
            Field::Quotient(q) => {
                let poly = q.base.format_poly(&q.modulus, "t");
                write!(f, "{}[t]/({})", q.base, poly)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_strings_round_trip() {
        for s in ["QQ", "Fp(7)", "QQ[t]/(t^2+t+1)", "Fp(2)[t]/(t^2+t+1)", "QQ[t]/(t^2-t+1)"] {
            assert_eq!(Field::parse(s).unwrap().to_string(), s);
        }
        assert!(matches!(Field::parse("Fp(8)"), Err(ExactError::NotPrime(8))));
        assert!(Field::parse("RR").is_err());
    }

    #[test]
    fn scalar_literals() {
        let q = Field::Rationals;
        assert_eq!(q.format(&q.parse_scalar("\u{2212}1").unwrap()), "-1");
        assert_eq!(q.format(&q.parse_scalar("6/4").unwrap()), "3/2");
        let f7 = Field::parse("Fp(7)").unwrap();
        assert_eq!(f7.parse_scalar("-1").unwrap(), Scalar::Mod(6));
        assert_eq!(f7.parse_scalar("1/2").unwrap(), Scalar::Mod(4));
        let z3 = Field::parse("QQ[t]/(t^2+t+1)").unwrap();
        let t = z3.generator().unwrap();
        assert_eq!(z3.parse_scalar("q").unwrap(), t);
        // q^2 = -q - 1
        assert_eq!(z3.format(&z3.parse_scalar("q^2").unwrap()), "-t-1");
        assert_eq!(z3.format(&z3.parse_scalar("t+1").unwrap()), "t+1");
        assert_eq!(z3.format(&z3.parse_scalar("-3/2*t").unwrap()), "-3/2*t");
        assert!(Field::Rationals.parse_scalar("t").is_err());
    }

    #[test]
    fn cube_root_of_unity() {
        for spec in ["QQ[t]/(t^2+t+1)", "Fp(2)[t]/(t^2+t+1)"] {
            let f = Field::parse(spec).unwrap();
            let q = f.generator().unwrap();
            assert_eq!(f.pow(&q, 3).unwrap(), f.one());
            assert_ne!(q, f.one());
            assert_eq!(f.irreducibility(), Irreducibility::Verified);
        }
    }

    #[test]
    fn reducible_modulus_reports_zero_divisor() {
        let f = Field::parse("QQ[t]/(t^2-1)").unwrap();
        assert_eq!(f.irreducibility(), Irreducibility::Reducible);
        let x = f.parse_scalar("t+1").unwrap();
        match f.inv(&x) {
            Err(ExactError::NotAField { zero_divisor }) => assert_eq!(zero_divisor, "t+1"),
            other => panic!("expected NotAField, got {other:?}"),
        }
        // t^2 + 2 is irreducible over F_5 (the F_25 model)
        let f25 = Field::parse("Fp(5)[t]/(t^2+2)").unwrap();
        assert_eq!(f25.irreducibility(), Irreducibility::Verified);
        assert_eq!(f25.elements().unwrap().len(), 25);
    }

    #[test]
    fn modular_reduction_of_generator() {
        let z3 = Field::parse("QQ[t]/(t^2+t+1)").unwrap();
        let roots = z3.modulus_roots_mod(7);
        assert_eq!(roots, vec![2, 4]);
        let q2 = z3.parse_scalar("-q^2").unwrap();
        assert_eq!(z3.reduce_mod(&q2, 7, Some(2)).unwrap(), Scalar::Mod(3));
    }
}
