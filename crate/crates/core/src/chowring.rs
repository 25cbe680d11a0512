//! Graded ring generated by η, γ, ϑ and Chern symbols c_i, with the
//! relations η² = 0, γη = 0, γ² = −2ηϑ, and the Harris–Tu evaluation of
//! top Chern numbers on W^r_d of a general curve.
//!
//! ϑ is the theta divisor class. It is spelled `theta` in text and JSON.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Rational, Result};

/// A monomial η^a γ^b ϑ^c ∏ c_i^{e_i}.
///
/// `chern[i - 1]` is the exponent of c_i, with trailing zeros trimmed so
/// that equal monomials compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    eta: u32,
    gamma: u32,
    theta: u32,
    chern: Vec<u32>,
}

impl Monomial {
    pub fn new(eta: u32, gamma: u32, theta: u32, chern: &[(usize, u32)]) -> Self {
        let mut m = Monomial { eta, gamma, theta, chern: Vec::new() };
        for &(i, e) in chern {
            assert!(i >= 1, "Chern classes are indexed from 1");
            if m.chern.len() < i {
                m.chern.resize(i, 0);
            }
            m.chern[i - 1] += e;
        }
        m.trim();
        m
    }

    pub fn one() -> Self {
        Monomial { eta: 0, gamma: 0, theta: 0, chern: Vec::new() }
    }

    fn trim(&mut self) {
        while self.chern.last() == Some(&0) {
            self.chern.pop();
        }
    }

    pub fn eta(&self) -> u32 {
        self.eta
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    /// Exponent of c_i.
    pub fn chern(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.chern.get(i - 1).copied().unwrap_or(0)
    }

    /// `(i, e)` pairs with e > 0, in increasing i.
    pub fn chern_factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.chern.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i + 1, e))
    }

    pub fn max_chern_index(&self) -> usize {
        self.chern.len()
    }

    pub fn degree(&self) -> u32 {
        self.eta
            + self.gamma
            + self.theta
            + self.chern.iter().enumerate().map(|(i, &e)| (i as u32 + 1) * e).sum::<u32>()
    }

    pub fn is_normal(&self) -> bool {
        self.eta <= 1 && self.gamma <= 1 && !(self.eta == 1 && self.gamma == 1)
    }

    /// Product without applying the relations.
    pub fn times(&self, other: &Monomial) -> Monomial {
        let len = self.chern.len().max(other.chern.len());
        let chern = (0..len)
            .map(|i| self.chern.get(i).unwrap_or(&0) + other.chern.get(i).unwrap_or(&0))
            .collect();
        Monomial {
            eta: self.eta + other.eta,
            gamma: self.gamma + other.gamma,
            theta: self.theta + other.theta,
            chern,
        }
    }

    /// Rewrites to normal form. Returns the scalar picked up along the
    /// way, or `None` when the monomial is killed.
    fn normal_form(&self) -> Option<(Monomial, i64)> {
        let mut m = self.clone();
        let mut scale = 1i64;
        while m.gamma >= 2 {
            m.gamma -= 2;
            m.eta += 1;
            m.theta += 1;
            scale *= -2;
        }
        if m.eta >= 2 || (m.eta >= 1 && m.gamma >= 1) {
            return None;
        }
        Some((m, scale))
    }

    fn sort_key(&self) -> (u32, u32, u32, u32, &[u32]) {
        (self.degree(), self.eta, self.gamma, self.theta, &self.chern)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut push = |name: String, e: u32| match e {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{e}")),
        };
        push("eta".into(), self.eta);
        push("gamma".into(), self.gamma);
        push("theta".into(), self.theta);
        for (i, e) in self.chern_factors() {
            push(format!("c{i}"), e);
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Sparse polynomial over the rationals. Arithmetic always returns
/// normalized expressions. [`ChowExpr::from_terms`] and
/// [`ChowExpr::mul_raw`] do not, which is what [`normalize`] is for.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChowExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl ChowExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c))
    }

    pub fn eta() -> Self {
        Self::term(Monomial::new(1, 0, 0, &[]), Rational::one())
    }

    pub fn gamma() -> Self {
        Self::term(Monomial::new(0, 1, 0, &[]), Rational::one())
    }

    pub fn theta() -> Self {
        Self::term(Monomial::new(0, 0, 1, &[]), Rational::one())
    }

    /// The symbol c_i; c_0 is 1.
    pub fn chern(i: usize) -> Self {
        if i == 0 {
            return Self::one();
        }
        Self::term(Monomial::new(0, 0, 0, &[(i, 1)]), Rational::one())
    }

    /// A single term, normalized.
    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut e = ChowExpr::zero();
        e.add_term(&m, &c);
        e
    }

    /// Builds an expression from raw terms, without applying the relations.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut e = ChowExpr::zero();
        for (m, c) in terms {
            let slot = e.terms.entry(m).or_insert_with(Rational::zero);
            *slot += &c;
        }
        e.terms.retain(|_, c| !c.is_zero());
        e
    }

    fn add_term(&mut self, m: &Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let Some((m, scale)) = m.normal_form() else {
            return;
        };
        let c = if scale == 1 { c.clone() } else { c.mul_int(scale) };
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ChowExpr { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k))
    }

    /// Product without applying the relations.
    pub fn mul_raw(&self, other: &ChowExpr) -> ChowExpr {
        let mut out = ChowExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let slot = out.terms.entry(ma.times(mb)).or_insert_with(Rational::zero);
                *slot += &(ca * cb);
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Product truncated above `max_degree`.
    pub fn mul_truncated(&self, other: &ChowExpr, max_degree: u32) -> ChowExpr {
        let mut out = ChowExpr::zero();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > max_degree {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() <= max_degree {
                    out.add_term(&ma.times(mb), &(ca * cb));
                }
            }
        }
        out
    }

    /// The part of degree exactly `deg`.
    pub fn homogeneous(&self, deg: u32) -> Self {
        self.filter(|m| m.degree() == deg)
    }

    pub fn truncated(&self, max_degree: u32) -> Self {
        self.filter(|m| m.degree() <= max_degree)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        ChowExpr {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree if all terms share it.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Sets c_i = 0 for every i > `rank`.
    pub fn with_rank(&self, rank: usize) -> Self {
        self.filter(|m| m.max_chern_index() <= rank)
    }

    /// Coefficient of η, as an expression free of η and γ.
    ///
    /// On X × W a top class pushes forward to W through its η part only,
    /// because a lone γ integrates to zero along X.
    pub fn eta_coefficient(&self) -> Self {
        let mut out = ChowExpr::zero();
        for (m, c) in &self.terms {
            if m.eta == 1 && m.gamma == 0 {
                let mut stripped = m.clone();
                stripped.eta = 0;
                out.terms.insert(stripped, c.clone());
            }
        }
        out
    }

    /// Replaces c_i by (−1)^i c_i: switches between a bundle and its dual.
    pub fn dualized(&self) -> Self {
        ChowExpr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let odd = m.chern.iter().enumerate().map(|(i, &e)| (i + 1) as u32 * e).sum::<u32>() % 2 == 1;
                    (m.clone(), if odd { -c } else { c.clone() })
                })
                .collect(),
        }
    }
}

/// Applies η² → 0, γη → 0, γ² → −2ηϑ until nothing changes.
pub fn normalize(e: &ChowExpr) -> ChowExpr {
    let mut out = ChowExpr::zero();
    for (m, c) in &e.terms {
        out.add_term(m, c);
    }
    out
}

impl<'a> Add<&'a ChowExpr> for &'a ChowExpr {
    type Output = ChowExpr;
    fn add(self, rhs: &'a ChowExpr) -> ChowExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl<'a> Sub<&'a ChowExpr> for &'a ChowExpr {
    type Output = ChowExpr;
    fn sub(self, rhs: &'a ChowExpr) -> ChowExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a ChowExpr> for &'a ChowExpr {
    type Output = ChowExpr;
    fn mul(self, rhs: &'a ChowExpr) -> ChowExpr {
        let mut out = ChowExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(&ma.times(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &ChowExpr {
    type Output = ChowExpr;
    fn neg(self) -> ChowExpr {
        self.scale_int(-1)
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<ChowExpr> for ChowExpr {
            type Output = ChowExpr;
            fn $method(self, rhs: ChowExpr) -> ChowExpr { (&self).$method(&rhs) }
        }
        impl<'a> $trait<&'a ChowExpr> for ChowExpr {
            type Output = ChowExpr;
            fn $method(self, rhs: &'a ChowExpr) -> ChowExpr { (&self).$method(rhs) }
        }
        impl<'a> $trait<ChowExpr> for &'a ChowExpr {
            type Output = ChowExpr;
            fn $method(self, rhs: ChowExpr) -> ChowExpr { self.$method(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for ChowExpr {
    type Output = ChowExpr;
    fn neg(self) -> ChowExpr {
        -&self
    }
}

impl fmt::Display for ChowExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial::one() {
                write!(f, "{abs}")?;
            } else if abs == Rational::one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ChowExpr {
    type Err = Error;

    /// Parses sums of products such as `36*c2*theta - 32/3*theta^3 + eta`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parameter(format!("cannot parse expression {s:?}: {msg}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        // Split into signed terms at top-level + and -.
        let mut raw_terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev = None;
        for (i, ch) in compact.chars().enumerate() {
            let after_caret = prev.replace(ch) == Some('^');
            if (ch == '+' || ch == '-') && !after_caret {
                if !current.is_empty() {
                    raw_terms.push((negative, std::mem::take(&mut current)));
                } else if i > 0 {
                    return Err(bad("dangling sign"));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(bad("trailing sign"));
        }
        raw_terms.push((negative, current));

        let mut out = ChowExpr::zero();
        for (negative, body) in raw_terms {
            let mut coeff = Rational::one();
            let mut mono = Monomial::one();
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                let unit = match base {
                    "eta" => Monomial::new(1, 0, 0, &[]),
                    "gamma" => Monomial::new(0, 1, 0, &[]),
                    "theta" => Monomial::new(0, 0, 1, &[]),
                    _ if base.starts_with('c') && base.len() > 1 && base[1..].chars().all(|c| c.is_ascii_digit()) => {
                        let i: usize = base[1..].parse().map_err(|_| bad("bad Chern index"))?;
                        if i == 0 {
                            Monomial::one()
                        } else {
                            Monomial::new(0, 0, 0, &[(i, 1)])
                        }
                    }
                    _ => {
                        let r: Rational = base.parse().map_err(|_| bad("unknown factor"))?;
                        coeff = &coeff * &r.pow(exp);
                        continue;
                    }
                };
                for _ in 0..exp {
                    mono = mono.times(&unit);
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(&mono, &coeff);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    eta: u32,
    gamma: u32,
    theta: u32,
    c: BTreeMap<String, u32>,
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct ExprJson {
    terms: Vec<TermJson>,
}

impl Serialize for ChowExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                eta: m.eta,
                gamma: m.gamma,
                theta: m.theta,
                c: m.chern_factors().map(|(i, e)| (i.to_string(), e)).collect(),
                coeff: c.clone(),
            })
            .collect();
        ExprJson { terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChowExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ExprJson::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let mut chern = Vec::new();
            for (k, e) in t.c {
                let i: usize = k.parse().map_err(serde::de::Error::custom)?;
                if i == 0 {
                    return Err(serde::de::Error::custom("Chern classes are indexed from 1"));
                }
                chern.push((i, e));
            }
            terms.push((Monomial::new(t.eta, t.gamma, t.theta, &chern), t.coeff));
        }
        Ok(normalize(&ChowExpr::from_terms(terms)))
    }
}

/// Inverse of a total Chern class, truncated above `top_degree`.
pub fn total_chern_inverse(x: &ChowExpr, top_degree: u32) -> Result<ChowExpr> {
    let x = normalize(x);
    if x.constant_term() != Rational::one() {
        return Err(Error::Parameter(format!("total Chern class must start with 1, got constant {}", x.constant_term())));
    }
    // 1/(1+y) = Σ (−y)^j, and y has no constant term so j ≤ top_degree.
    let minus_y = -&(&x - &ChowExpr::one());
    let mut power = ChowExpr::one();
    let mut acc = ChowExpr::one();
    for _ in 0..top_degree {
        power = power.mul_truncated(&minus_y, top_degree);
        if power.is_zero() {
            break;
        }
        acc = &acc + &power;
    }
    Ok(acc)
}

/// Chern classes c_1, c_2, c_3 of Sym² V for V of rank r + 1.
pub fn sym2_chern(c1: &ChowExpr, c2: &ChowExpr, c3: &ChowExpr, r: u32) -> (ChowExpr, ChowExpr, ChowExpr) {
    let r = r as i64;
    let s1 = c1.scale_int(r + 2);
    let c1sq = c1 * c1;
    let s2 = &c1sq.scale(&Rational::new(r * (r + 3), 2)) + &c2.scale_int(r + 3);
    let s3 = &(&(&c1sq * c1).scale(&Rational::new(r * (r + 4) * (r - 1), 6)) + &c3.scale_int(r + 5))
        + &(c1 * c2).scale_int(r * r + 4 * r - 1);
    (s1, s2, s3)
}

/// Brill–Noether data (g, r, d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BnData {
    pub g: u32,
    pub r: u32,
    pub d: u32,
}

impl BnData {
    pub fn new(g: u32, r: u32, d: u32) -> Self {
        BnData { g, r, d }
    }

    /// ρ(g, r, d) = g − (r+1)(g−d+r).
    pub fn rho(&self) -> i64 {
        let (g, r, d) = (self.g as i64, self.r as i64, self.d as i64);
        g - (r + 1) * (g - d + r)
    }
}

/// x_1^{i_1} ⋯ x_{r+1}^{i_{r+1}} · ϑ^{ρ − Σ i}, with x_k the Chern roots
/// of the dual tautological bundle on W^r_d.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernRootMonomial {
    context: BnData,
    exponents: Vec<u32>,
}

impl ChernRootMonomial {
    /// Missing trailing exponents are zero.
    pub fn new(context: BnData, exponents: &[u32]) -> Result<Self> {
        let n = context.r as usize + 1;
        if exponents.len() > n {
            return Err(Error::Parameter(format!("{} exponents given for {} roots", exponents.len(), n)));
        }
        let rho = context.rho();
        if rho < 0 {
            return Err(Error::Parameter(format!("ρ{:?} = {rho} is negative", (context.g, context.r, context.d))));
        }
        let total: i64 = exponents.iter().map(|&e| e as i64).sum();
        if total > rho {
            return Err(Error::Parameter(format!("exponent sum {total} exceeds ρ = {rho}")));
        }
        let mut exps = exponents.to_vec();
        exps.resize(n, 0);
        Ok(ChernRootMonomial { context, exponents: exps })
    }

    pub fn context(&self) -> BnData {
        self.context
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn theta_power(&self) -> u32 {
        (self.context.rho() - self.exponents.iter().map(|&e| e as i64).sum::<i64>()) as u32
    }
}

/// Which denominator to use in the Vandermonde form of Harris–Tu.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum HarrisTuForm {
    /// ∏ (g−d+2r+i_k−k+1)!, which reproduces the classical counts.
    #[default]
    Corrected,
    /// ∏ (g−d+2r+i_k−k)!, kept for diagnostics only.
    Printed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarrisTuValue {
    pub value: Rational,
    /// Set when some factorial argument was negative and the value was
    /// taken to be 0.
    pub clamped: bool,
}

/// Factorials 0!..=n! as big integers.
#[derive(Clone, Debug)]
pub struct Factorials(Vec<BigInt>);

impl Factorials {
    pub fn up_to(n: usize) -> Self {
        let mut v = Vec::with_capacity(n + 1);
        v.push(BigInt::one());
        for k in 1..=n {
            let next = &v[k - 1] * BigInt::from(k);
            v.push(next);
        }
        Factorials(v)
    }

    pub fn get(&mut self, n: usize) -> &BigInt {
        while self.0.len() <= n {
            let k = self.0.len();
            let next = &self.0[k - 1] * BigInt::from(k);
            self.0.push(next);
        }
        &self.0[n]
    }
}

fn harris_tu_with(ctx: BnData, exps: &[u32], form: HarrisTuForm, facts: &mut Factorials) -> HarrisTuValue {
    let n = exps.len();
    let mut numer = BigInt::one();
    for k in 0..n {
        for j in k + 1..n {
            let f = exps[k] as i64 - exps[j] as i64 + (j - k) as i64;
            if f == 0 {
                return HarrisTuValue { value: Rational::zero(), clamped: false };
            }
            numer *= f;
        }
    }
    let shift = match form {
        HarrisTuForm::Corrected => 1,
        HarrisTuForm::Printed => 0,
    };
    let base = ctx.g as i64 - ctx.d as i64 + 2 * ctx.r as i64 + shift;
    let mut denom = BigInt::one();
    for (k, &e) in exps.iter().enumerate() {
        let arg = base + e as i64 - (k as i64 + 1);
        if arg < 0 {
            return HarrisTuValue { value: Rational::zero(), clamped: true };
        }
        denom *= facts.get(arg as usize);
    }
    numer *= facts.get(ctx.g as usize);
    HarrisTuValue { value: Rational::from_bigints(numer, denom), clamped: false }
}

/// Evaluates a root monomial against ϑ^{ρ−Σi} on W^r_d.
pub fn harris_tu(m: &ChernRootMonomial, form: HarrisTuForm) -> HarrisTuValue {
    let mut facts = Factorials::up_to(m.context.g as usize);
    harris_tu_with(m.context, &m.exponents, form, &mut facts)
}

pub fn harris_tu_monomial(m: &ChernRootMonomial) -> Rational {
    harris_tu(m, HarrisTuForm::Corrected).value
}

/// g! ∏_{i=0}^{r} i!/(g−d+r+i)!: the number of g^r_d on a general curve
/// when ρ = 0.
pub fn classical_count(ctx: BnData) -> Rational {
    let mut facts = Factorials::up_to(ctx.g as usize);
    let mut numer = facts.get(ctx.g as usize).clone();
    let mut denom = BigInt::one();
    for i in 0..=ctx.r as i64 {
        numer *= facts.get(i as usize);
        let arg = ctx.g as i64 - ctx.d as i64 + ctx.r as i64 + i;
        if arg < 0 {
            return Rational::zero();
        }
        denom *= facts.get(arg as usize);
    }
    Rational::from_bigints(numer, denom)
}

/// C_{2s+1} = (2s²+s)! ∏_{i=1}^{2s} i! / ∏_{i=s}^{3s} i!, the number of
/// g^{2s}_{2s²+2s} on a general curve of genus 2s²+s.
pub fn castelnuovo_number(s: u32) -> Rational {
    let mut facts = Factorials::up_to((2 * s * s + s) as usize);
    let mut numer = facts.get((2 * s * s + s) as usize).clone();
    for i in 1..=2 * s {
        numer *= facts.get(i as usize);
    }
    let mut denom = BigInt::one();
    for i in s..=3 * s {
        denom *= facts.get(i as usize);
    }
    Rational::from_bigints(numer, denom)
}

/// Polynomial in Chern roots and ϑ: (root exponents, ϑ exponent) → coeff.
type RootPoly = HashMap<(Vec<u32>, u32), Rational>;

fn root_poly_mul(a: &RootPoly, b: &RootPoly) -> RootPoly {
    let mut out: RootPoly = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
    for ((ea, ta), ca) in a {
        for ((eb, tb), cb) in b {
            let key: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry((key, ta + tb)).or_insert_with(Rational::zero) += &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn root_poly_one(n: usize) -> RootPoly {
    let mut p = HashMap::new();
    p.insert((vec![0; n], 0), Rational::one());
    p
}

/// Evaluates a homogeneous expression in ϑ and c_i of degree ρ by
/// substituting root expansions for each c_i.
fn evaluate_via_roots(
    expr: &ChowExpr,
    ctx: BnData,
    n_roots: usize,
    chern_in_roots: impl Fn(usize) -> Result<RootPoly>,
) -> Result<Rational> {
    let rho = ctx.rho() as u32;
    let mut cache: HashMap<usize, RootPoly> = HashMap::new();
    let mut collected: RootPoly = HashMap::new();
    for (m, c) in expr.terms() {
        if m.eta() != 0 || m.gamma() != 0 {
            return Err(Error::Parameter(format!("monomial {m} is not a class on W")));
        }
        if m.degree() != rho {
            return Err(Error::Degree { expected: rho, got: m.degree() });
        }
        let mut poly = root_poly_one(n_roots);
        for (i, e) in m.chern_factors() {
            if let std::collections::hash_map::Entry::Vacant(slot) = cache.entry(i) {
                slot.insert(chern_in_roots(i)?);
            }
            for _ in 0..e {
                poly = root_poly_mul(&poly, &cache[&i]);
            }
        }
        for ((exps, t), coeff) in poly {
            *collected.entry((exps, t + m.theta())).or_insert_with(Rational::zero) += &(&coeff * c);
        }
    }
    let mut facts = Factorials::up_to(ctx.g as usize + rho as usize + 2 * ctx.r as usize + 2);
    let mut total = Rational::zero();
    for ((exps, _), coeff) in collected {
        if coeff.is_zero() {
            continue;
        }
        let v = harris_tu_with(ctx, &exps, HarrisTuForm::Corrected, &mut facts);
        if !v.value.is_zero() {
            total += &(&coeff * &v.value);
        }
    }
    Ok(total)
}

/// Top Chern numbers on W^6_26 of a general genus-22 curve.
///
/// `expr` must be homogeneous of degree 8 in ϑ and c_1..c_7 (the Chern
/// classes of M^∨). Each c_i is rewritten through the rank-2 bundle N with
/// roots u_1, u_2, and each u_1^a u_2^b ϑ^c is evaluated by Harris–Tu on
/// W^1_16.
pub fn chern_number_g22(expr: &ChowExpr) -> Result<Rational> {
    let ctx = BnData::new(22, 1, 16);
    evaluate_via_roots(expr, ctx, 2, |i| {
        if i > 7 {
            return Err(Error::Parameter(format!("c{i} vanishes on a rank-7 bundle and is not expected here")));
        }
        let mut p: RootPoly = HashMap::new();
        let mut put = |u1: u32, u2: u32, t: u32, c: Rational| {
            *p.entry((vec![u1, u2], t)).or_insert_with(Rational::zero) += &c;
        };
        if i == 1 {
            put(0, 0, 1, Rational::one());
            put(1, 0, 0, -Rational::one());
            put(0, 1, 0, -Rational::one());
        } else {
            let k = (i - 2) as u32;
            let inv_fact = |n: u32| Rational::from_bigints(BigInt::one(), (1..=n).map(BigInt::from).product());
            put(1, 1, k, inv_fact(k));
            put(1, 0, k + 1, -inv_fact(k + 1));
            put(0, 1, k + 1, -inv_fact(k + 1));
            put(0, 0, k + 2, inv_fact(k + 2));
        }
        p.retain(|_, c| !c.is_zero());
        Ok(p)
    })
}

/// Top Chern numbers on W^{2s}_{2s²+2s+1} of a general curve of genus
/// 2s²+s, with c_i the i-th elementary symmetric function of the 2s+1
/// roots of M^∨.
pub fn chern_number_general(s: u32, expr: &ChowExpr) -> Result<Rational> {
    if s < 1 {
        return Err(Error::Parameter("s must be at least 1".into()));
    }
    let ctx = rho_one_context(s);
    let n = 2 * s as usize + 1;
    evaluate_via_roots(expr, ctx, n, |i| Ok(elementary_symmetric(n, i)))
}

/// (g, r, d) = (2s²+s, 2s, 2s²+2s+1).
pub fn rho_one_context(s: u32) -> BnData {
    BnData::new(2 * s * s + s, 2 * s, 2 * s * s + 2 * s + 1)
}

fn elementary_symmetric(n: usize, i: usize) -> RootPoly {
    let mut p: RootPoly = HashMap::new();
    if i > n {
        return p;
    }
    // Walk all i-subsets in lexicographic order.
    let mut idx: Vec<usize> = (0..i).collect();
    loop {
        let mut e = vec![0u32; n];
        for &k in &idx {
            e[k] = 1;
        }
        p.insert((e, 0), Rational::one());
        let mut pos = i;
        loop {
            if pos == 0 {
                return p;
            }
            pos -= 1;
            if idx[pos] < n - i + pos {
                idx[pos] += 1;
                for q in pos + 1..i {
                    idx[q] = idx[q - 1] + 1;
                }
                break;
            }
        }
        if i == 0 {
            return p;
        }
    }
}

/// Values recorded for the Harris–Tu evaluator, kept apart from the
/// evaluator so tests and the acceptance run compare against them.
pub mod recorded {
    use super::*;

    /// A root monomial and the value it should take.
    #[derive(Clone, Debug)]
    pub struct RecordedValue {
        pub exponents: Vec<u32>,
        pub value: Rational,
    }

    /// An identity m = factor · reference, where the reference is another
    /// root monomial or, when `None`, the count C_{2s+1}.
    #[derive(Clone, Debug)]
    pub struct RecordedIdentity {
        pub exponents: Vec<u32>,
        pub factor: Rational,
        pub reference: Option<Vec<u32>>,
    }

    fn ratio_22(k: i64, a: u64, b: u64) -> Rational {
        let f = |n: u64| (1..=n).map(BigInt::from).product::<BigInt>();
        Rational::from_bigints(BigInt::from(k) * f(22), f(a) * f(b))
    }

    /// The 19 monomials u_1^a u_2^b ϑ^{8−a−b} on W^1_16 of a genus-22 curve.
    pub fn harris_tu_table() -> Vec<RecordedValue> {
        let rows: [(u32, u32, i64, u64, u64); 19] = [
            (3, 0, 4, 11, 7),
            (0, 3, -2, 8, 10),
            (2, 0, 3, 10, 7),
            (0, 2, -1, 8, 9),
            (1, 0, 2, 7, 9),
            (0, 1, 0, 1, 1),
            (1, 4, -2, 9, 11),
            (4, 1, 4, 8, 12),
            (2, 1, 2, 8, 10),
            (1, 2, 0, 1, 1),
            (2, 3, 0, 1, 1),
            (3, 2, 2, 9, 11),
            (2, 2, 1, 9, 10),
            (4, 0, 5, 7, 12),
            (0, 4, -3, 8, 11),
            (3, 1, 3, 8, 11),
            (1, 3, -1, 9, 10),
            (1, 1, 1, 8, 9),
            (0, 0, 1, 7, 8),
        ];
        rows.iter()
            .map(|&(a, b, k, x, y)| RecordedValue { exponents: vec![a, b], value: ratio_22(k, x, y) })
            .collect()
    }

    fn ones_after(head: &[u32], count: usize) -> Vec<u32> {
        let mut v = head.to_vec();
        v.resize(head.len() + count, 1);
        v
    }

    /// Reductions of the ρ = 1 root monomials to C_{2s+1}, in the order they
    /// are usually listed. Requires s ≥ 2.
    pub fn rho_one_identities(s: u32) -> Vec<RecordedIdentity> {
        let n = s as usize;
        let si = s as i64;
        let q = |p: i64, r: i64| Rational::new(p, r);
        let top_theta = ones_after(&[], 2 * n);
        let top_theta2 = ones_after(&[], 2 * n - 1);
        let id = |exponents: Vec<u32>, factor: Rational, reference: Option<Vec<u32>>| RecordedIdentity {
            exponents,
            factor,
            reference,
        };
        vec![
            id(ones_after(&[], 2 * n + 1), Rational::one(), None),
            id(
                ones_after(&[2, 2], 2 * n - 3),
                q(si * (si - 1) * (si + 1).pow(2) * (2 * si + 1).pow(2), 3 * si * (3 * si + 1)),
                None,
            ),
            id(ones_after(&[2], 2 * n - 1), q(4 * si * (si + 1), 3 * si + 1), None),
            id(
                ones_after(&[3], 2 * n - 2),
                q(si * si * (si + 1).pow(2) * (2 * si - 1) * (2 * si + 3), (3 * si + 1) * (3 * si + 2)),
                None,
            ),
            id(top_theta.clone(), Rational::from_integer((2 * si + 1) * si), None),
            id(ones_after(&[2], 2 * n - 2), q((si + 1).pow(2) * (2 * si - 1), 3 * si + 1), Some(top_theta.clone())),
            id(
                ones_after(&[2, 2], 2 * n - 4),
                q((2 * si - 3) * (2 * si + 1) * (si + 1).pow(2) * (si + 2), 9 * (3 * si + 1)),
                Some(top_theta.clone()),
            ),
            id(
                ones_after(&[3], 2 * n - 3),
                q(
                    (si - 1) * (si + 1).pow(2) * (si + 2) * (2 * si - 1) * (2 * si + 3),
                    3 * (3 * si + 1) * (3 * si + 2),
                ),
                Some(top_theta),
            ),
            id(top_theta2.clone(), Rational::from_integer(2 * si * (si + 1) * (2 * si + 1)), None),
            id(
                ones_after(&[2], 2 * n - 3),
                q(4 * (si + 1) * (si - 1) * (si + 2), 3 * (3 * si + 1)),
                Some(top_theta2),
            ),
            id(
                ones_after(&[], 2 * n - 2),
                q((2 * si + 1) * (2 * si - 1) * (si + 2) * (si + 1) * si * si, 3),
                None,
            ),
        ]
    }

    /// Outcome of checking one identity: (left side, right side).
    pub fn evaluate_identity(s: u32, identity: &RecordedIdentity) -> Result<(Rational, Rational)> {
        let ctx = rho_one_context(s);
        let value = |e: &[u32]| ChernRootMonomial::new(ctx, e).map(|m| harris_tu_monomial(&m));
        let lhs = value(&identity.exponents)?;
        let base = match &identity.reference {
            Some(e) => value(e)?,
            None => castelnuovo_number(s),
        };
        Ok((lhs, &identity.factor * &base))
    }

    /// x1^2*x2*...*x5*theta^k style label.
    pub fn root_label(exponents: &[u32], theta: u32) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, &e) in exponents.iter().enumerate().filter(|(_, &e)| e > 0) {
            parts.push(if e == 1 { format!("x{}", k + 1) } else { format!("x{}^{e}", k + 1) });
        }
        match theta {
            0 => {}
            1 => parts.push("theta".into()),
            t => parts.push(format!("theta^{t}")),
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> ChowExpr {
        s.parse().unwrap()
    }

    #[test]
    fn relations() {
        let g = ChowExpr::gamma();
        let e = ChowExpr::eta();
        assert_eq!(&g * &g, parse("-2*eta*theta"));
        assert!((&e * &e).is_zero());
        assert!((&g * &e).is_zero());
        assert!(g.pow(3).is_zero());
    }

    #[test]
    fn normalize_is_idempotent_on_raw_products() {
        let a = parse("gamma + 3*eta + c2");
        let raw = a.mul_raw(&a);
        let n = normalize(&raw);
        assert_eq!(normalize(&n), n);
        assert_eq!(n, &a * &a);
    }

    #[test]
    fn jet_inverse() {
        let p = parse("26*eta + gamma");
        let q = parse("68*eta + gamma");
        let jet_dual = &(&ChowExpr::one() - &p) * &(&ChowExpr::one() - &q);
        assert_eq!(total_chern_inverse(&jet_dual, 3).unwrap(), parse("1 + 94*eta + 2*gamma - 6*eta*theta"));
        let b_dual = &(&ChowExpr::one() - &p) * &parse("1 + eta");
        assert_eq!(total_chern_inverse(&b_dual, 3).unwrap(), parse("1 + 25*eta + gamma - 2*eta*theta"));
        assert_eq!(total_chern_inverse(&ChowExpr::one(), 5).unwrap(), ChowExpr::one());
        assert!(total_chern_inverse(&parse("2 + eta"), 2).is_err());
    }

    #[test]
    fn sym2_coefficients_at_rank_seven() {
        let (s1, s2, s3) = sym2_chern(&ChowExpr::chern(1), &ChowExpr::chern(2), &ChowExpr::chern(3), 6);
        assert_eq!(s1, parse("8*c1"));
        assert_eq!(s2, parse("27*c1^2 + 9*c2"));
        assert_eq!(s3, parse("50*c1^3 + 11*c3 + 59*c1*c2"));
        // A line bundle has no c_2 or c_3, and its square has none either.
        let z = ChowExpr::zero();
        let (t1, t2, t3) = sym2_chern(&ChowExpr::chern(1), &z, &z, 0);
        assert_eq!(t1, parse("2*c1"));
        assert!(t2.is_zero() && t3.is_zero());
    }

    #[test]
    fn parse_display_round_trip() {
        let e = parse("36*c2*theta - 148*c1^2*theta + 1554*eta*c1^2 - 32/3*theta^3 + 11*c3");
        assert_eq!(parse(&e.to_string()), e);
        let json = serde_json::to_string(&e).unwrap();
        let back: ChowExpr = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        assert!("2*foo".parse::<ChowExpr>().is_err());
    }

    #[test]
    fn harris_tu_small_cases() {
        let ctx = BnData::new(22, 1, 16);
        let fact = |n: u64| -> BigInt { (1..=n).map(BigInt::from).product() };
        let ht = |e: &[u32]| harris_tu_monomial(&ChernRootMonomial::new(ctx, e).unwrap());
        assert_eq!(ht(&[3, 0]), Rational::from_bigints(BigInt::from(4) * fact(22), fact(11) * fact(7)));
        assert_eq!(ht(&[0, 1]), Rational::zero());
        assert_eq!(ht(&[0, 0]), Rational::from_bigints(fact(22), fact(7) * fact(8)));
        let printed = harris_tu(&ChernRootMonomial::new(ctx, &[0, 0]).unwrap(), HarrisTuForm::Printed);
        assert_eq!(printed.value, Rational::from_bigints(fact(22), fact(7) * fact(6)));
        let g4 = ChernRootMonomial::new(BnData::new(4, 1, 3), &[]).unwrap();
        assert_eq!(harris_tu_monomial(&g4), Rational::from_integer(2));
        assert!(ChernRootMonomial::new(ctx, &[5, 4]).is_err());
    }

    #[test]
    fn g22_degree_check() {
        assert!(matches!(chern_number_g22(&parse("theta^7")), Err(Error::Degree { .. })));
        assert_eq!(chern_number_g22(&parse("theta^8")).unwrap(), classical_ratio());
    }

    fn classical_ratio() -> Rational {
        let fact = |n: u64| -> BigInt { (1..=n).map(BigInt::from).product() };
        Rational::from_bigints(fact(22), fact(7) * fact(8))
    }

    #[test]
    fn castelnuovo() {
        assert_eq!(castelnuovo_number(2), Rational::from_integer(42));
        assert_eq!(castelnuovo_number(3), Rational::from_integer(1385670));
        assert_eq!(chern_number_general(2, &ChowExpr::chern(5)).unwrap(), Rational::from_integer(42));
        assert_eq!(classical_count(BnData::new(4, 1, 3)), Rational::from_integer(2));
    }

    #[test]
    fn elementary_counts() {
        assert_eq!(elementary_symmetric(5, 2).len(), 10);
        assert_eq!(elementary_symmetric(5, 0).len(), 1);
        assert_eq!(elementary_symmetric(5, 5).len(), 1);
        assert!(elementary_symmetric(3, 4).is_empty());
    }
}
