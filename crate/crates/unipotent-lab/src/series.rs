//! Degree-truncated free associative series and the Zassenhaus toolbox:
//! Magnus expansion in both of its modes, filtration indices of words, and
//! finite unit-group dimension quotients.
//!
//! Monomials are words in the generators; the degree of a monomial is the sum
//! of its generator weights (all weights are 1 unless a graded construction
//! assigns a relator-slot generator a higher weight). Everything above the
//! cutoff is discarded by every operation.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::words::{GenId, Word};
use crate::{Error, Result};

/// Coefficient ring tag: exact rationals or Z/p^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientRing {
    Rationals,
    IntegersModPE { p: u64, e: u32 },
}

impl CoefficientRing {
    pub fn mod_pe(p: u64, e: u32) -> Self {
        assert!(e >= 1, "e must be positive");
        CoefficientRing::IntegersModPE { p, e }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            CoefficientRing::Rationals => None,
            CoefficientRing::IntegersModPE { p, e } => Some(p.pow(*e)),
        }
    }
}

/// A coefficient in either ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coef {
    Rat(BigRational),
    Mod(u64),
}

impl Coef {
    pub fn is_zero(&self) -> bool {
        match self {
            Coef::Rat(r) => r.is_zero(),
            Coef::Mod(m) => *m == 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coef::Rat(r) => Some(r),
            Coef::Mod(_) => None,
        }
    }
}

impl CoefficientRing {
    pub fn zero(&self) -> Coef {
        match self {
            CoefficientRing::Rationals => Coef::Rat(BigRational::zero()),
            CoefficientRing::IntegersModPE { .. } => Coef::Mod(0),
        }
    }

    pub fn one(&self) -> Coef {
        match self {
            CoefficientRing::Rationals => Coef::Rat(BigRational::one()),
            CoefficientRing::IntegersModPE { .. } => Coef::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coef {
        match self {
            CoefficientRing::Rationals => Coef::Rat(BigRational::from_integer(BigInt::from(n))),
            CoefficientRing::IntegersModPE { .. } => {
                let m = self.modulus().unwrap() as i128;
                Coef::Mod((n as i128).rem_euclid(m) as u64)
            }
        }
    }

    pub fn add(&self, a: &Coef, b: &Coef) -> Coef {
        match (a, b) {
            (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x + y),
            (Coef::Mod(x), Coef::Mod(y)) => {
                let m = self.modulus().unwrap() as u128;
                Coef::Mod(((*x as u128 + *y as u128) % m) as u64)
            }
            _ => panic!("mixed coefficient kinds"),
        }
    }

    pub fn mul(&self, a: &Coef, b: &Coef) -> Coef {
        match (a, b) {
            (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x * y),
            (Coef::Mod(x), Coef::Mod(y)) => {
                let m = self.modulus().unwrap() as u128;
                Coef::Mod(((*x as u128 * *y as u128) % m) as u64)
            }
            _ => panic!("mixed coefficient kinds"),
        }
    }

    pub fn neg(&self, a: &Coef) -> Coef {
        match a {
            Coef::Rat(x) => Coef::Rat(-x),
            Coef::Mod(x) => {
                let m = self.modulus().unwrap();
                Coef::Mod(if *x == 0 { 0 } else { m - x })
            }
        }
    }
}

/// A word in the generators together with its (weighted) total degree.
/// Ordered by degree first, then lexicographically: deglex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    deg: u32,
    letters: Vec<GenId>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn letters(&self) -> &[GenId] {
        &self.letters
    }
}

/// Shared truncation context: ring, cutoff and generator weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCtx {
    pub ring: CoefficientRing,
    pub cutoff: u32,
    pub weights: Rc<Vec<u32>>,
}

impl SeriesCtx {
    pub fn new(ring: CoefficientRing, cutoff: u32, num_gens: usize) -> Self {
        SeriesCtx { ring, cutoff, weights: Rc::new(vec![1; num_gens]) }
    }

    pub fn with_weights(ring: CoefficientRing, cutoff: u32, weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w >= 1), "weights must be positive");
        SeriesCtx { ring, cutoff, weights: Rc::new(weights) }
    }

    pub fn num_gens(&self) -> usize {
        self.weights.len()
    }

    pub fn monomial(&self, letters: &[GenId]) -> Monomial {
        let deg = letters.iter().map(|&g| self.weights[g as usize]).sum();
        Monomial { deg, letters: letters.to_vec() }
    }

    fn compatible(&self, other: &SeriesCtx) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{:?} vs {:?}", self.ring, other.ring)));
        }
        if self.cutoff != other.cutoff {
            return Err(Error::CutoffMismatch(self.cutoff, other.cutoff));
        }
        if self.weights != other.weights {
            return Err(Error::RingMismatch("generator weight mismatch".into()));
        }
        Ok(())
    }
}

/// Element of the free associative algebra truncated above the cutoff degree.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub ctx: SeriesCtx,
    terms: BTreeMap<Monomial, Coef>,
}

impl TruncatedSeries {
    pub fn zero(ctx: &SeriesCtx) -> Self {
        TruncatedSeries { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &SeriesCtx) -> Self {
        let mut s = Self::zero(ctx);
        s.add_term(&[], ctx.ring.one());
        s
    }

    pub fn generator(ctx: &SeriesCtx, g: GenId) -> Self {
        let mut s = Self::zero(ctx);
        s.add_term(&[g], ctx.ring.one());
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coef)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, letters: &[GenId]) -> Coef {
        let m = self.ctx.monomial(letters);
        self.terms.get(&m).cloned().unwrap_or_else(|| self.ctx.ring.zero())
    }

    /// Constant term (the augmentation).
    pub fn augmentation(&self) -> Coef {
        self.coeff(&[])
    }

    pub fn add_term(&mut self, letters: &[GenId], c: Coef) {
        let m = self.ctx.monomial(letters);
        self.add_monomial(m, c);
    }

    fn add_monomial(&mut self, m: Monomial, c: Coef) {
        if c.is_zero() || m.deg > self.ctx.cutoff {
            return;
        }
        let ring = self.ctx.ring;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = ring.add(e.get(), &c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.ctx.compatible(&rhs.ctx)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_monomial(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> TruncatedSeries {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.ctx.ring.neg(c));
        }
        out
    }

    pub fn sub(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Coef) -> TruncatedSeries {
        let mut out = Self::zero(&self.ctx);
        for (m, v) in &self.terms {
            out.add_monomial(m.clone(), self.ctx.ring.mul(v, c));
        }
        out
    }

    /// Truncated product; degrees above the cutoff are discarded.
    pub fn mul(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.ctx.compatible(&rhs.ctx)?;
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let deg = ma.deg + mb.deg;
                if deg > self.ctx.cutoff {
                    continue;
                }
                let mut letters = ma.letters.clone();
                letters.extend_from_slice(&mb.letters);
                out.add_monomial(Monomial { deg, letters }, self.ctx.ring.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<TruncatedSeries> {
        let mut out = Self::one(&self.ctx);
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Inverse of a unit series (constant term must be invertible; computed as
    /// the truncated geometric series of 1 - u/u0).
    pub fn inverse_unit(&self) -> Result<TruncatedSeries> {
        let a0 = self.augmentation();
        let a0_inv = match &a0 {
            Coef::Rat(r) => {
                if r.is_zero() {
                    return Err(Error::ConstantTerm("inverse"));
                }
                Coef::Rat(r.recip())
            }
            Coef::Mod(m) => {
                let modulus = self.ctx.ring.modulus().unwrap();
                Coef::Mod(mod_inverse(*m, modulus).ok_or(Error::ConstantTerm("inverse"))?)
            }
        };
        let normalized = self.scale(&a0_inv);
        // normalized = 1 - t with t of positive degree
        let t = TruncatedSeries::one(&self.ctx).sub(&normalized)?;
        let mut out = TruncatedSeries::one(&self.ctx);
        let mut tp = TruncatedSeries::one(&self.ctx);
        for _ in 1..=self.ctx.cutoff {
            tp = tp.mul(&t)?;
            if tp.is_zero() {
                break;
            }
            out = out.add(&tp)?;
        }
        Ok(out.scale(&a0_inv))
    }

    /// Lowest degree among nonzero terms, None if zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.deg)
    }

    /// The homogeneous component of the given degree.
    pub fn homogeneous_part(&self, deg: u32) -> TruncatedSeries {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m.deg == deg {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Truncated exponential; rationals only, zero constant term required.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if self.ctx.ring != CoefficientRing::Rationals {
            return Err(Error::RationalsRequired("exp"));
        }
        if !self.augmentation().is_zero() {
            return Err(Error::ConstantTerm("exp"));
        }
        let mut out = TruncatedSeries::one(&self.ctx);
        let mut term = TruncatedSeries::one(&self.ctx);
        let mut factorial = BigInt::one();
        for k in 1..=self.ctx.cutoff {
            term = term.mul(self)?;
            if term.is_zero() {
                break;
            }
            factorial *= BigInt::from(k);
            let inv = Coef::Rat(BigRational::new(BigInt::one(), factorial.clone()));
            out = out.add(&term.scale(&inv))?;
        }
        Ok(out)
    }

    /// Truncated logarithm; rationals only, constant term 1 required.
    pub fn log(&self) -> Result<TruncatedSeries> {
        if self.ctx.ring != CoefficientRing::Rationals {
            return Err(Error::RationalsRequired("log"));
        }
        if self.augmentation() != self.ctx.ring.one() {
            return Err(Error::ConstantTerm("log"));
        }
        let u = self.sub(&TruncatedSeries::one(&self.ctx))?;
        let mut out = TruncatedSeries::zero(&self.ctx);
        let mut up = TruncatedSeries::one(&self.ctx);
        for k in 1..=self.ctx.cutoff {
            up = up.mul(&u)?;
            if up.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            let c = Coef::Rat(BigRational::new(sign, BigInt::from(k)));
            out = out.add(&up.scale(&c))?;
        }
        Ok(out)
    }

    /// Deglex-ordered human-readable rendering with exact coefficients.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mono = if m.letters.is_empty() {
                "1".to_string()
            } else {
                m.letters
                    .iter()
                    .map(|&g| names.get(g as usize).map(String::as_str).unwrap_or("?"))
                    .collect::<Vec<_>>()
                    .join("")
            };
            let cs = match c {
                Coef::Rat(r) => r.to_string(),
                Coef::Mod(v) => v.to_string(),
            };
            if cs == "1" && mono != "1" {
                parts.push(mono);
            } else if mono == "1" {
                parts.push(cs);
            } else {
                parts.push(format!("{cs}*{mono}"));
            }
        }
        parts.join(" + ")
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    // Extended Euclid.
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// The two Magnus substitutions. They are never mixed: Zassenhaus indices use
/// `OnePlusX`, the schematized (rational) side uses `Exponential`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MagnusMode {
    /// x maps to 1 + x, x^-1 to the truncated geometric inverse.
    OnePlusX,
    /// x maps to exp(x); rationals only.
    Exponential,
}

/// Multiplicative Magnus expansion of a word.
pub fn magnus_expand(w: &Word, ctx: &SeriesCtx, mode: MagnusMode) -> Result<TruncatedSeries> {
    if mode == MagnusMode::Exponential && ctx.ring != CoefficientRing::Rationals {
        return Err(Error::RationalsRequired("Exponential Magnus mode"));
    }
    let mut image_cache: HashMap<(GenId, bool), TruncatedSeries> = HashMap::new();
    let mut out = TruncatedSeries::one(ctx);
    for (g, sign) in w.single_letters() {
        if (g as usize) >= ctx.num_gens() {
            return Err(Error::UnknownGenerator(format!("generator id {g}")));
        }
        let key = (g, sign > 0);
        let img = match image_cache.get(&key) {
            Some(s) => s.clone(),
            None => {
                let s = match mode {
                    MagnusMode::OnePlusX => {
                        let base = TruncatedSeries::one(ctx)
                            .add(&TruncatedSeries::generator(ctx, g))?;
                        if sign > 0 {
                            base
                        } else {
                            base.inverse_unit()?
                        }
                    }
                    MagnusMode::Exponential => {
                        let x = TruncatedSeries::generator(ctx, g);
                        if sign > 0 {
                            x.exp()?
                        } else {
                            x.neg().exp()?
                        }
                    }
                };
                image_cache.insert(key, s.clone());
                s
            }
        };
        out = out.mul(&img)?;
    }
    Ok(out)
}

/// Zassenhaus filtration index of a word: the largest n <= cutoff with
/// expansion - 1 in the n-th power of the augmentation ideal over F_p, or the
/// marker `AtLeast(cutoff + 1)` when the truncated expansion is exactly 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZassenhausIndex {
    Finite(u32),
    AtLeast(u32),
}

impl std::fmt::Display for ZassenhausIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ZassenhausIndex::Finite(n) => write!(f, "{n}"),
            ZassenhausIndex::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

pub fn zassenhaus_index(w: &Word, p: u64, cutoff: u32, num_gens: usize) -> Result<ZassenhausIndex> {
    let ctx = SeriesCtx::new(CoefficientRing::mod_pe(p, 1), cutoff, num_gens);
    let expansion = magnus_expand(w, &ctx, MagnusMode::OnePlusX)?;
    let delta = expansion.sub(&TruncatedSeries::one(&ctx))?;
    match delta.min_degree() {
        Some(d) => Ok(ZassenhausIndex::Finite(d)),
        None => Ok(ZassenhausIndex::AtLeast(cutoff + 1)),
    }
}

/// The finite p-group F/M_n presented through its generator images in the unit
/// group 1 + Delta/Delta^n over F_p.
pub struct DimensionQuotient {
    /// log_p of the group order found by closure enumeration.
    pub order_log_p: u32,
    /// Images of the generators as truncated unit series (cutoff n - 1).
    pub generator_images: Vec<TruncatedSeries>,
}

/// Breadth-first closure of the subgroup generated by 1 + x_i inside the unit
/// group of the truncated algebra over F_p. Fails with a budget error rather
/// than returning a truncated answer.
pub fn dimension_quotient(rank: usize, p: u64, n: u32, budget: usize) -> Result<DimensionQuotient> {
    assert!(n >= 1);
    let ctx = SeriesCtx::new(CoefficientRing::mod_pe(p, 1), n - 1, rank);
    let mut gens = Vec::new();
    for g in 0..rank {
        let s = TruncatedSeries::one(&ctx).add(&TruncatedSeries::generator(&ctx, g as GenId))?;
        gens.push(s.clone());
        gens.push(s.inverse_unit()?);
    }
    let fingerprint = |s: &TruncatedSeries| -> Vec<(Monomial, Coef)> {
        s.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
    };
    let mut seen: HashSet<Vec<(Monomial, Coef)>> = HashSet::new();
    let mut queue = VecDeque::new();
    let one = TruncatedSeries::one(&ctx);
    seen.insert(fingerprint(&one));
    queue.push_back(one);
    while let Some(cur) = queue.pop_front() {
        for g in &gens {
            let next = cur.mul(g)?;
            let fp = fingerprint(&next);
            if !seen.contains(&fp) {
                if seen.len() >= budget {
                    return Err(Error::BudgetExhausted(budget));
                }
                seen.insert(fp);
                queue.push_back(next);
            }
        }
    }
    let order = seen.len() as u64;
    let mut log = 0u32;
    let mut acc = 1u64;
    while acc < order {
        acc *= p;
        log += 1;
    }
    if acc != order {
        return Err(Error::Dimension(format!(
            "closure size {order} is not a power of {p}"
        )));
    }
    let generator_images = (0..rank)
        .map(|g| gens[2 * g].clone())
        .collect();
    Ok(DimensionQuotient { order_log_p: log, generator_images })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qctx(cutoff: u32, n: usize) -> SeriesCtx {
        SeriesCtx::new(CoefficientRing::Rationals, cutoff, n)
    }

    fn rat(n: i64, d: i64) -> Coef {
        Coef::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn geometric_inverse_is_inverse() {
        let ctx = qctx(6, 1);
        let u = TruncatedSeries::one(&ctx).add(&TruncatedSeries::generator(&ctx, 0)).unwrap();
        let inv = u.inverse_unit().unwrap();
        assert_eq!(u.mul(&inv).unwrap(), TruncatedSeries::one(&ctx));
    }

    #[test]
    fn product_expansion_at_cutoff_two() {
        let ctx = qctx(2, 2);
        let a = TruncatedSeries::one(&ctx).add(&TruncatedSeries::generator(&ctx, 0)).unwrap();
        let b = TruncatedSeries::one(&ctx).add(&TruncatedSeries::generator(&ctx, 1)).unwrap();
        let p = a.mul(&b).unwrap();
        // 1 + x + y + xy
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.coeff(&[0, 1]), rat(1, 1));
        assert_eq!(p.coeff(&[1, 0]), rat(0, 1));
    }

    #[test]
    fn mul_monomials() {
        let ctx = qctx(4, 2);
        let x = TruncatedSeries::generator(&ctx, 0);
        let y = TruncatedSeries::generator(&ctx, 1);
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.coeff(&[0, 1]), rat(1, 1));
        assert_eq!(xy.num_terms(), 1);
    }

    #[test]
    fn ring_mismatch_rejected() {
        let a = TruncatedSeries::one(&qctx(3, 1));
        let b = TruncatedSeries::one(&SeriesCtx::new(CoefficientRing::mod_pe(2, 1), 3, 1));
        assert!(a.mul(&b).is_err());
        let c = TruncatedSeries::one(&qctx(4, 1));
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn exp_log_examples() {
        let ctx = qctx(3, 1);
        // exp(0) = 1
        assert_eq!(TruncatedSeries::zero(&ctx).exp().unwrap(), TruncatedSeries::one(&ctx));
        // log(1+x) = x - x^2/2 + x^3/3
        let u = TruncatedSeries::one(&ctx).add(&TruncatedSeries::generator(&ctx, 0)).unwrap();
        let l = u.log().unwrap();
        assert_eq!(l.coeff(&[0]), rat(1, 1));
        assert_eq!(l.coeff(&[0, 0]), rat(-1, 2));
        assert_eq!(l.coeff(&[0, 0, 0]), rat(1, 3));
    }

    #[test]
    fn exp_log_roundtrip_all_cutoffs() {
        for cutoff in 1..=8 {
            let ctx = qctx(cutoff, 2);
            let mut a = TruncatedSeries::generator(&ctx, 0);
            let sq = TruncatedSeries::generator(&ctx, 1)
                .mul(&TruncatedSeries::generator(&ctx, 0))
                .unwrap();
            a = a.add(&sq.scale(&rat(3, 2))).unwrap();
            assert_eq!(a.exp().unwrap().log().unwrap(), a);
        }
    }

    #[test]
    fn bch_degree_two() {
        let ctx = qctx(2, 2);
        let x = TruncatedSeries::generator(&ctx, 0);
        let y = TruncatedSeries::generator(&ctx, 1);
        let z = x.exp().unwrap().mul(&y.exp().unwrap()).unwrap().log().unwrap();
        // x + y + (1/2)(xy - yx)
        assert_eq!(z.coeff(&[0]), rat(1, 1));
        assert_eq!(z.coeff(&[1]), rat(1, 1));
        assert_eq!(z.coeff(&[0, 1]), rat(1, 2));
        assert_eq!(z.coeff(&[1, 0]), rat(-1, 2));
    }

    #[test]
    fn exp_errors() {
        let ctx = SeriesCtx::new(CoefficientRing::mod_pe(3, 1), 3, 1);
        assert!(TruncatedSeries::zero(&ctx).exp().is_err());
        let q = qctx(3, 1);
        assert!(TruncatedSeries::one(&q).exp().is_err());
        assert!(TruncatedSeries::zero(&q).log().is_err());
    }

    #[test]
    fn magnus_single_generator() {
        let ctx = SeriesCtx::new(CoefficientRing::mod_pe(2, 1), 4, 2);
        let s = magnus_expand(&Word::generator(0), &ctx, MagnusMode::OnePlusX).unwrap();
        assert_eq!(s.num_terms(), 2);
        assert_eq!(s.coeff(&[0]), Coef::Mod(1));
    }

    #[test]
    fn magnus_commutator_mod_two() {
        // [x,y] over F_2, cutoff 3: lowest Delta-degree term has degree 2,
        // with xy + yx (since xy - yx = xy + yx mod 2).
        let ctx = SeriesCtx::new(CoefficientRing::mod_pe(2, 1), 3, 2);
        let w = Word::commutator(&Word::generator(0), &Word::generator(1));
        let s = magnus_expand(&w, &ctx, MagnusMode::OnePlusX).unwrap();
        let delta = s.sub(&TruncatedSeries::one(&ctx)).unwrap();
        assert_eq!(delta.min_degree(), Some(2));
        assert_eq!(delta.coeff(&[0, 1]), Coef::Mod(1));
        assert_eq!(delta.coeff(&[1, 0]), Coef::Mod(1));
    }

    #[test]
    fn magnus_pth_power() {
        // x^p over Z/p at cutoff p: (1+x)^p = 1 + x^p since C(p,k) = 0 mod p.
        for p in [2u64, 3, 5] {
            let ctx = SeriesCtx::new(CoefficientRing::mod_pe(p, 1), p as u32, 1);
            let w = Word::generator(0).pow(p as i64);
            let s = magnus_expand(&w, &ctx, MagnusMode::OnePlusX).unwrap();
            let delta = s.sub(&TruncatedSeries::one(&ctx)).unwrap();
            assert_eq!(delta.min_degree(), Some(p as u32));
        }
    }

    #[test]
    fn magnus_multiplicative() {
        let ctx = qctx(4, 2);
        let u = Word::from_letters([(0, 1), (1, -2)]);
        let v = Word::from_letters([(1, 2), (0, 1)]);
        for mode in [MagnusMode::OnePlusX, MagnusMode::Exponential] {
            let lhs = magnus_expand(&u.concat(&v), &ctx, mode).unwrap();
            let rhs = magnus_expand(&u, &ctx, mode)
                .unwrap()
                .mul(&magnus_expand(&v, &ctx, mode).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exponential_mode_needs_rationals() {
        let ctx = SeriesCtx::new(CoefficientRing::mod_pe(2, 1), 3, 1);
        assert!(magnus_expand(&Word::generator(0), &ctx, MagnusMode::Exponential).is_err());
    }

    #[test]
    fn zassenhaus_examples() {
        assert_eq!(
            zassenhaus_index(&Word::identity(), 2, 5, 2).unwrap(),
            ZassenhausIndex::AtLeast(6)
        );
        let c = Word::commutator(&Word::generator(0), &Word::generator(1));
        for p in [2, 3, 5] {
            assert_eq!(zassenhaus_index(&c, p, 5, 2).unwrap(), ZassenhausIndex::Finite(2));
        }
        assert_eq!(
            zassenhaus_index(&Word::generator(0).pow(3), 3, 5, 1).unwrap(),
            ZassenhausIndex::Finite(3)
        );
    }

    #[test]
    fn dimension_quotient_examples() {
        // rank 2, p=2, n=2: elementary abelian of order 4
        let d = dimension_quotient(2, 2, 2, 1 << 20).unwrap();
        assert_eq!(d.order_log_p, 2);
        // rank 1, n=2: order p
        for p in [2, 3, 5] {
            assert_eq!(dimension_quotient(1, p, 2, 1 << 20).unwrap().order_log_p, 1);
        }
        // rank 1, p=2, n=3: cyclic of order 4 since (1+x)^2 = 1+x^2 != 1
        assert_eq!(dimension_quotient(1, 2, 3, 1 << 20).unwrap().order_log_p, 2);
    }

    #[test]
    fn dimension_quotient_budget() {
        assert!(matches!(
            dimension_quotient(2, 2, 4, 8),
            Err(Error::BudgetExhausted(8))
        ));
    }

    #[test]
    fn zassenhaus_membership_is_subgroup_like() {
        // index(uv) >= min(index u, index v) for a small sample.
        let words = [
            Word::generator(0).pow(2),
            Word::commutator(&Word::generator(0), &Word::generator(1)),
            Word::from_letters([(0, 1), (1, 1)]),
            Word::from_letters([(1, -1), (0, 2)]),
        ];
        let idx = |w: &Word| match zassenhaus_index(w, 2, 6, 2).unwrap() {
            ZassenhausIndex::Finite(n) => n,
            ZassenhausIndex::AtLeast(n) => n,
        };
        for u in &words {
            for v in &words {
                assert!(idx(&u.concat(v)) >= idx(u).min(idx(v)));
                let comm = Word::commutator(u, v);
                let bound = (idx(u) + idx(v)).min(7);
                assert!(idx(&comm) >= bound.min(7), "commutator index too small");
            }
        }
    }
}
