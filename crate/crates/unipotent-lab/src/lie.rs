//! Truncated free Lie algebras over Q with a Lyndon-word Hall basis.
//!
//! Generators carry positive integer weights; the basis in (weighted) degree d
//! consists of the bracketed Lyndon words of weight d, and everything above the
//! cutoff degree is discarded. Elements are flat coordinate vectors over the
//! full basis, so filtered (not necessarily graded) subspaces and maps are
//! handled uniformly; associated-graded data is recovered per degree.
//!
//! The bracketing of a Lyndon word follows its standard factorization, and the
//! associative expansion of a basis element is triangular: it equals its word
//! plus lexicographically larger words of the same multidegree. Coordinate
//! extraction from an associative series eliminates leading words in deglex
//! order, which also certifies that the series lies in the Lie subalgebra.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::QMatrix;
use crate::series::{magnus_expand, Coef, CoefficientRing, MagnusMode, SeriesCtx, TruncatedSeries};
use crate::words::{GenId, Word};
use crate::{Error, Result};

/// All Lyndon words over `num_gens` letters whose weighted degree is at most
/// `cutoff`, in lexicographic order (Duval's generation, bounded by length).
fn lyndon_words(num_gens: usize, weights: &[u32], cutoff: u32) -> Vec<Vec<GenId>> {
    assert!(num_gens > 0);
    let max_len = cutoff as usize;
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    let weight = |w: &[GenId]| -> u32 { w.iter().map(|&g| weights[g as usize]).sum() };
    let mut w: Vec<GenId> = vec![0];
    loop {
        if weight(&w) <= cutoff {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() % m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as usize == num_gens - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

/// Standard factorization w = uv of a Lyndon word of length >= 2: v is the
/// lexicographically smallest proper suffix.
fn standard_factorization(w: &[GenId]) -> (Vec<GenId>, Vec<GenId>) {
    debug_assert!(w.len() >= 2);
    let mut best = 1;
    for i in 2..w.len() {
        if w[i..] < w[best..] {
            best = i;
        }
    }
    (w[..best].to_vec(), w[best..].to_vec())
}

/// An element of a truncated free Lie algebra: coordinates over the Lyndon
/// basis of its algebra, in flat (degree-major, then lex) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub coords: Vec<BigRational>,
}

impl LieElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, rhs: &LieElement) -> LieElement {
        assert_eq!(self.coords.len(), rhs.coords.len(), "algebra mismatch");
        LieElement {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &LieElement) -> LieElement {
        self.add(&rhs.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> LieElement {
        LieElement { coords: self.coords.iter().map(|a| a * c).collect() }
    }
}

/// The free Lie algebra on weighted generators, truncated above `cutoff`.
pub struct FreeLieAlgebra {
    ctx: SeriesCtx,
    names: Vec<String>,
    basis: Vec<Vec<GenId>>,
    degrees: Vec<u32>,
    index: HashMap<Vec<GenId>, usize>,
    /// offsets[d] = flat index where the degree-d block starts; offsets has
    /// length cutoff + 2 so offsets[d + 1] - offsets[d] is the degree-d dim.
    offsets: Vec<usize>,
    expansions: RefCell<Vec<Option<Rc<TruncatedSeries>>>>,
    brackets: RefCell<HashMap<(usize, usize), Rc<Vec<(usize, BigRational)>>>>,
}

impl FreeLieAlgebra {
    pub fn new(names: Vec<String>, weights: Vec<u32>, cutoff: u32) -> Self {
        assert_eq!(names.len(), weights.len());
        assert!(cutoff >= 1);
        let ctx = SeriesCtx::with_weights(CoefficientRing::Rationals, cutoff, weights.clone());
        let mut basis = lyndon_words(names.len(), &weights, cutoff);
        let weight_of = |w: &[GenId]| -> u32 { w.iter().map(|&g| weights[g as usize]).sum() };
        basis.sort_by(|a, b| (weight_of(a), a.clone()).cmp(&(weight_of(b), b.clone())));
        let degrees: Vec<u32> = basis.iter().map(|w| weight_of(w)).collect();
        let index: HashMap<Vec<GenId>, usize> =
            basis.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut offsets = vec![0usize; cutoff as usize + 2];
        for d in 1..=cutoff as usize {
            let dim = degrees.iter().filter(|&&x| x == d as u32).count();
            offsets[d + 1] = offsets[d] + dim;
        }
        let n = basis.len();
        FreeLieAlgebra {
            ctx,
            names,
            basis,
            degrees,
            index,
            offsets,
            expansions: RefCell::new(vec![None; n]),
            brackets: RefCell::new(HashMap::new()),
        }
    }

    pub fn rank_one_weights(names: Vec<String>, cutoff: u32) -> Self {
        let n = names.len();
        Self::new(names, vec![1; n], cutoff)
    }

    pub fn cutoff(&self) -> u32 {
        self.ctx.cutoff
    }

    pub fn num_gens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.ctx.weights
    }

    pub fn series_ctx(&self) -> &SeriesCtx {
        &self.ctx
    }

    pub fn total_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_degree(&self, d: u32) -> usize {
        if d == 0 || d > self.ctx.cutoff {
            return 0;
        }
        self.offsets[d as usize + 1] - self.offsets[d as usize]
    }

    pub fn offset(&self, d: u32) -> usize {
        self.offsets[d as usize]
    }

    /// Basis dimensions by degree 1..=cutoff.
    pub fn degree_dims(&self) -> Vec<usize> {
        (1..=self.ctx.cutoff).map(|d| self.dim_degree(d)).collect()
    }

    pub fn basis_word(&self, i: usize) -> &[GenId] {
        &self.basis[i]
    }

    pub fn basis_degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn zero(&self) -> LieElement {
        LieElement { coords: vec![BigRational::zero(); self.total_dim()] }
    }

    pub fn basis_element(&self, i: usize) -> LieElement {
        let mut e = self.zero();
        e.coords[i] = BigRational::one();
        e
    }

    pub fn generator(&self, g: GenId) -> LieElement {
        let i = self.index[&vec![g]];
        self.basis_element(i)
    }

    pub fn min_degree(&self, a: &LieElement) -> Option<u32> {
        a.coords
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.degrees[i])
    }

    /// The degree-d homogeneous component.
    pub fn homogeneous(&self, a: &LieElement, d: u32) -> LieElement {
        let mut out = self.zero();
        if d >= 1 && d <= self.ctx.cutoff {
            let (lo, hi) = (self.offsets[d as usize], self.offsets[d as usize + 1]);
            out.coords[lo..hi].clone_from_slice(&a.coords[lo..hi]);
        }
        out
    }

    pub fn is_homogeneous(&self, a: &LieElement, d: u32) -> bool {
        a.coords
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || self.degrees[i] == d)
    }

    /// Associative expansion of the bracketed Lyndon word with basis index i.
    pub fn expansion(&self, i: usize) -> Rc<TruncatedSeries> {
        if let Some(s) = &self.expansions.borrow()[i] {
            return Rc::clone(s);
        }
        let w = self.basis[i].clone();
        let s = if w.len() == 1 {
            TruncatedSeries::generator(&self.ctx, w[0])
        } else {
            let (u, v) = standard_factorization(&w);
            let pu = self.expansion(self.index[&u]);
            let pv = self.expansion(self.index[&v]);
            pu.mul(&pv).unwrap().sub(&pv.mul(&pu).unwrap()).unwrap()
        };
        let rc = Rc::new(s);
        self.expansions.borrow_mut()[i] = Some(Rc::clone(&rc));
        rc
    }

    /// Embed a Lie element into the truncated associative algebra.
    pub fn to_series(&self, a: &LieElement) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(&self.ctx);
        for (i, c) in a.coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.expansion(i).scale(&Coef::Rat(c.clone()))).unwrap();
            }
        }
        out
    }

    /// Express an associative series in Lie coordinates, certifying along the
    /// way that it lies in the (truncated) free Lie subalgebra.
    pub fn from_series(&self, s: &TruncatedSeries) -> Result<LieElement> {
        if !s.augmentation().is_zero() {
            return Err(Error::NotLieElement(0));
        }
        let mut rem = s.clone();
        let mut out = self.zero();
        loop {
            let Some((mono, coef)) = rem.terms().next().map(|(m, c)| (m.clone(), c.clone()))
            else {
                break;
            };
            let i = *self
                .index
                .get(mono.letters())
                .ok_or(Error::NotLieElement(mono.degree()))?;
            let c = match coef {
                Coef::Rat(r) => r,
                Coef::Mod(_) => return Err(Error::RationalsRequired("Lie extraction")),
            };
            rem = rem.sub(&self.expansion(i).scale(&Coef::Rat(c.clone())))?;
            out.coords[i] = &out.coords[i] + c;
        }
        Ok(out)
    }

    /// Structure constants: bracket of basis elements i and j.
    fn basis_bracket(&self, i: usize, j: usize) -> Rc<Vec<(usize, BigRational)>> {
        if let Some(v) = self.brackets.borrow().get(&(i, j)) {
            return Rc::clone(v);
        }
        let out: Vec<(usize, BigRational)> = if i == j
            || self.degrees[i] + self.degrees[j] > self.ctx.cutoff
        {
            Vec::new()
        } else if i > j {
            self.basis_bracket(j, i)
                .iter()
                .map(|(k, c)| (*k, -c))
                .collect()
        } else {
            let pi = self.expansion(i);
            let pj = self.expansion(j);
            let comm = pi.mul(&pj).unwrap().sub(&pj.mul(&pi).unwrap()).unwrap();
            let e = self
                .from_series(&comm)
                .expect("bracket of basis elements is a Lie element");
            e.coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect()
        };
        let rc = Rc::new(out);
        self.brackets.borrow_mut().insert((i, j), Rc::clone(&rc));
        rc
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = self.zero();
        for (i, ca) in a.coords.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coords.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = ca * cb;
                for (k, sc) in self.basis_bracket(i, j).iter() {
                    out.coords[*k] = &out.coords[*k] + sc * &c;
                }
            }
        }
        out
    }

    /// Baker-Campbell-Hausdorff product, computed through the associative
    /// envelope: log(exp a * exp b) truncated at the cutoff.
    pub fn bch(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        let ea = self.to_series(a).exp()?;
        let eb = self.to_series(b).exp()?;
        self.from_series(&ea.mul(&eb)?.log()?)
    }

    pub fn bch_inverse(&self, a: &LieElement) -> LieElement {
        a.scale(&-BigRational::one())
    }

    /// Adjoint conjugation exp(ad a)(b) = sum_k ad_a^k(b) / k!.
    pub fn ad_exp(&self, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = b.clone();
        let mut term = b.clone();
        let mut factorial = BigInt::one();
        for k in 1..=self.ctx.cutoff {
            term = self.bracket(a, &term);
            if term.is_zero() {
                break;
            }
            factorial *= BigInt::from(k);
            out = out.add(&term.scale(&BigRational::new(BigInt::one(), factorial.clone())));
        }
        out
    }

    /// log of the exponential-mode Magnus expansion of a word: the image of
    /// the word in the truncated Lie algebra.
    pub fn log_word(&self, w: &Word) -> Result<LieElement> {
        let s = magnus_expand(w, &self.ctx, MagnusMode::Exponential)?;
        self.from_series(&s.log()?)
    }

    /// Human-readable bracketed rendering of a basis word.
    pub fn render_basis_word(&self, i: usize) -> String {
        fn go(w: &[GenId], names: &[String]) -> String {
            if w.len() == 1 {
                names[w[0] as usize].clone()
            } else {
                let (u, v) = standard_factorization(w);
                format!("[{},{}]", go(&u, names), go(&v, names))
            }
        }
        go(&self.basis[i], &self.names)
    }

    pub fn render(&self, a: &LieElement) -> String {
        let parts: Vec<String> = a
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let b = self.render_basis_word(i);
                if c.is_one() {
                    b
                } else {
                    format!("{c}*{b}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// A linear map between truncated free Lie algebras, stored as the flat matrix
/// sending source basis coordinates to target coordinates. Built from
/// generator images by freeness: the image of a bracketed Lyndon word is the
/// bracket of the images of its standard factors.
pub struct LieMap {
    pub matrix: QMatrix,
}

impl LieMap {
    pub fn from_generator_images(
        source: &FreeLieAlgebra,
        target: &FreeLieAlgebra,
        images: &[LieElement],
    ) -> Result<LieMap> {
        if images.len() != source.num_gens() {
            return Err(Error::Dimension(format!(
                "{} generator images for a rank-{} source",
                images.len(),
                source.num_gens()
            )));
        }
        for img in images {
            if img.coords.len() != target.total_dim() {
                return Err(Error::BasisMismatch);
            }
        }
        if source.cutoff() != target.cutoff() {
            return Err(Error::CutoffMismatch(source.cutoff(), target.cutoff()));
        }
        let mut cols: Vec<Option<LieElement>> = vec![None; source.total_dim()];
        fn image_of(
            i: usize,
            source: &FreeLieAlgebra,
            target: &FreeLieAlgebra,
            images: &[LieElement],
            cols: &mut Vec<Option<LieElement>>,
        ) -> LieElement {
            if let Some(e) = &cols[i] {
                return e.clone();
            }
            let w = source.basis_word(i).to_vec();
            let e = if w.len() == 1 {
                images[w[0] as usize].clone()
            } else {
                let (u, v) = standard_factorization(&w);
                let iu = source.index[&u];
                let iv = source.index[&v];
                let eu = image_of(iu, source, target, images, cols);
                let ev = image_of(iv, source, target, images, cols);
                target.bracket(&eu, &ev)
            };
            cols[i] = Some(e.clone());
            e
        }
        let columns: Vec<Vec<BigRational>> = (0..source.total_dim())
            .map(|i| image_of(i, source, target, images, &mut cols).coords)
            .collect();
        Ok(LieMap { matrix: QMatrix::from_columns(target.total_dim(), &columns) })
    }

    pub fn identity(alg: &FreeLieAlgebra) -> LieMap {
        LieMap { matrix: QMatrix::identity(alg.total_dim()) }
    }

    pub fn apply(&self, a: &LieElement) -> LieElement {
        LieElement { coords: self.matrix.mul_vec(&a.coords) }
    }

    pub fn kernel(&self) -> FlatSubspace {
        FlatSubspace { mat: self.matrix.kernel_basis() }
    }

    pub fn image(&self) -> FlatSubspace {
        FlatSubspace { mat: self.matrix.image_basis() }
    }

    /// Image of a subspace under this map.
    pub fn apply_subspace(&self, v: &FlatSubspace) -> FlatSubspace {
        FlatSubspace { mat: self.matrix.mul(&v.mat).image_basis() }
    }

    /// Exact check that brackets of basis pairs are preserved (a certificate
    /// that the generator images define a homomorphism at this truncation).
    pub fn check_homomorphism(
        &self,
        source: &FreeLieAlgebra,
        target: &FreeLieAlgebra,
    ) -> Result<()> {
        for i in 0..source.total_dim() {
            for j in (i + 1)..source.total_dim() {
                if source.basis_degree(i) + source.basis_degree(j) > source.cutoff() {
                    continue;
                }
                let bi = source.basis_element(i);
                let bj = source.basis_element(j);
                let lhs = self.apply(&source.bracket(&bi, &bj));
                let rhs = target.bracket(&self.apply(&bi), &self.apply(&bj));
                if lhs != rhs {
                    return Err(Error::NotHomomorphism(format!(
                        "bracket of basis elements {i} and {j} is not preserved"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A subspace of the flat coordinate space of a truncated Lie algebra, spanned
/// by the columns of `mat`. It need not be graded; associated-graded data is
/// computed per degree.
#[derive(Clone)]
pub struct FlatSubspace {
    pub mat: QMatrix,
}

impl FlatSubspace {
    pub fn from_elements(alg: &FreeLieAlgebra, elems: &[LieElement]) -> FlatSubspace {
        let cols: Vec<Vec<BigRational>> = elems.iter().map(|e| e.coords.clone()).collect();
        FlatSubspace { mat: QMatrix::from_columns(alg.total_dim(), &cols).image_basis() }
    }

    pub fn zero(alg: &FreeLieAlgebra) -> FlatSubspace {
        FlatSubspace { mat: QMatrix::zeros(alg.total_dim(), 0) }
    }

    pub fn full(alg: &FreeLieAlgebra) -> FlatSubspace {
        FlatSubspace { mat: QMatrix::identity(alg.total_dim()) }
    }

    pub fn dim(&self) -> usize {
        self.mat.rank()
    }

    pub fn basis_elements(&self) -> Vec<LieElement> {
        self.mat
            .image_basis()
            .columns()
            .into_iter()
            .map(|coords| LieElement { coords })
            .collect()
    }

    pub fn contains(&self, e: &LieElement) -> bool {
        self.mat.contains_vector(&e.coords)
    }

    pub fn contains_subspace(&self, other: &FlatSubspace) -> bool {
        self.mat.contains_subspace(&other.mat)
    }

    pub fn same_space(&self, other: &FlatSubspace) -> bool {
        self.mat.same_column_space(&other.mat)
    }

    pub fn sum(&self, other: &FlatSubspace) -> FlatSubspace {
        FlatSubspace { mat: self.mat.hstack(&other.mat).image_basis() }
    }

    pub fn intersect(&self, other: &FlatSubspace) -> FlatSubspace {
        FlatSubspace { mat: self.mat.intersect_columns(&other.mat) }
    }

    /// Columns spanning the filtration step V ∩ (degrees >= d), as flat
    /// vectors in the ambient coordinate space.
    pub fn filtration_step(&self, alg: &FreeLieAlgebra, d: u32) -> QMatrix {
        let lo = alg.offset(d);
        if lo == 0 {
            return self.mat.clone();
        }
        // Combinations whose coordinates vanish in all degrees < d.
        let head = self.mat.row_slice(0, lo);
        let combos = head.kernel_basis();
        self.mat.mul(&combos)
    }

    /// Basis of the degree-d piece of the associated graded, as homogeneous
    /// degree-d Lie elements (projections of filtration-step representatives).
    pub fn graded_basis(&self, alg: &FreeLieAlgebra, d: u32) -> Vec<LieElement> {
        let step = self.filtration_step(alg, d);
        let (lo, hi) = (alg.offset(d), alg.offset(d) + alg.dim_degree(d));
        let block = step.row_slice(lo, hi).image_basis();
        block
            .columns()
            .into_iter()
            .map(|col| {
                let mut e = alg.zero();
                e.coords[lo..hi].clone_from_slice(&col);
                e
            })
            .collect()
    }

    /// Dimensions of the associated graded pieces, degree 1..=cutoff.
    pub fn graded_dims(&self, alg: &FreeLieAlgebra) -> Vec<usize> {
        (1..=alg.cutoff())
            .map(|d| {
                let step = self.filtration_step(alg, d);
                let (lo, hi) = (alg.offset(d), alg.offset(d) + alg.dim_degree(d));
                step.row_slice(lo, hi).rank()
            })
            .collect()
    }
}

/// Smallest subspace containing `seed` and closed under bracketing with every
/// algebra generator: the Lie ideal generated by the seed (brackets with
/// generators suffice because the generators generate the algebra).
pub fn ideal_closure(alg: &FreeLieAlgebra, seed: &FlatSubspace) -> FlatSubspace {
    let mut cur = FlatSubspace { mat: seed.mat.image_basis() };
    loop {
        let mut next = cur.clone();
        for g in 0..alg.num_gens() {
            let gen = alg.generator(g as GenId);
            let bracketed: Vec<LieElement> = cur
                .basis_elements()
                .iter()
                .map(|e| alg.bracket(&gen, e))
                .collect();
            next = next.sum(&FlatSubspace::from_elements(alg, &bracketed));
        }
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

/// Span of all pairwise brackets of the given spanning elements. When the
/// spanning set spans an ideal or subalgebra V, this is [V, V].
pub fn commutator_span(alg: &FreeLieAlgebra, v: &FlatSubspace) -> FlatSubspace {
    let basis = v.basis_elements();
    let mut brackets = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            brackets.push(alg.bracket(&basis[i], &basis[j]));
        }
    }
    FlatSubspace::from_elements(alg, &brackets)
}

/// Coefficients of prod_d (1 - t^d)^(-g_d) up to t^n: the graded dimensions of
/// the universal envelope (equivalently the symmetric algebra) of a graded
/// space with g_d generators in degree d. `gen_counts[d - 1]` is g_d.
pub fn pbw_dims(gen_counts: &[usize], n: u32) -> Vec<BigInt> {
    let n = n as usize;
    let mut s: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    s[0] = BigInt::one();
    for (idx, &g) in gen_counts.iter().enumerate() {
        let d = idx + 1;
        if d > n {
            break;
        }
        for _ in 0..g {
            for i in d..=n {
                let prev = s[i - d].clone();
                s[i] += prev;
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Witt necklace count: number of Lyndon words of length d over k letters.
    fn witt(k: u64, d: u64) -> u64 {
        fn mobius(mut n: u64) -> i64 {
            let mut m = 1i64;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    m = -m;
                }
                p += 1;
            }
            if n > 1 {
                m = -m;
            }
            m
        }
        let mut total = 0i64;
        for e in 1..=d {
            if d % e == 0 {
                total += mobius(e) * (k.pow((d / e) as u32) as i64);
            }
        }
        (total / d as i64) as u64
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn hall_basis_sizes_match_witt_numbers() {
        for rank in [1usize, 2, 3] {
            let names = (0..rank).map(|i| format!("g{i}")).collect();
            let alg = FreeLieAlgebra::rank_one_weights(names, 6);
            let dims = alg.degree_dims();
            for d in 1..=6u64 {
                assert_eq!(dims[d as usize - 1] as u64, witt(rank as u64, d));
            }
        }
    }

    #[test]
    fn rank_two_cutoff_five_dims() {
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 5);
        assert_eq!(alg.degree_dims(), vec![2, 1, 2, 3, 6]);
        assert_eq!(alg.total_dim(), 14);
    }

    #[test]
    fn weighted_basis_dims() {
        // x of weight 1, y of weight 2, cutoff 3: degree pieces x; y; [x,y].
        let alg = FreeLieAlgebra::new(vec!["x".into(), "y".into()], vec![1, 2], 3);
        assert_eq!(alg.degree_dims(), vec![1, 1, 1]);
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi() {
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 5);
        let mk = |seeds: &[(usize, i64)]| {
            let mut e = alg.zero();
            for &(i, c) in seeds {
                e.coords[i % alg.total_dim()] += BigRational::from_integer(BigInt::from(c));
            }
            e
        };
        let a = mk(&[(0, 2), (3, -1), (5, 3)]);
        let b = mk(&[(1, 1), (2, 5), (7, -2)]);
        let c = mk(&[(0, -1), (4, 1), (9, 4)]);
        assert_eq!(alg.bracket(&a, &b), alg.bracket(&b, &a).scale(&q(-1, 1)));
        assert!(alg.bracket(&a, &a).is_zero());
        let jac = alg
            .bracket(&a, &alg.bracket(&b, &c))
            .add(&alg.bracket(&b, &alg.bracket(&c, &a)))
            .add(&alg.bracket(&c, &alg.bracket(&a, &b)));
        assert!(jac.is_zero());
    }

    #[test]
    fn series_roundtrip_and_non_lie_rejection() {
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 4);
        for i in 0..alg.total_dim() {
            let e = alg.basis_element(i);
            assert_eq!(alg.from_series(&alg.to_series(&e)).unwrap(), e);
        }
        // xy alone is not a Lie element (xy - yx is).
        let ctx = alg.series_ctx();
        let xy = TruncatedSeries::generator(ctx, 0)
            .mul(&TruncatedSeries::generator(ctx, 1))
            .unwrap();
        assert!(matches!(alg.from_series(&xy), Err(Error::NotLieElement(2))));
    }

    #[test]
    fn bch_degree_two() {
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 2);
        let x = alg.generator(0);
        let y = alg.generator(1);
        let z = alg.bch(&x, &y).unwrap();
        let expected = x.add(&y).add(&alg.bracket(&x, &y).scale(&q(1, 2)));
        assert_eq!(z, expected);
    }

    #[test]
    fn bch_group_laws() {
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into(), "z".into()], 4);
        let x = alg.generator(0);
        let y = alg.generator(1);
        let z = alg.generator(2);
        let ab_c = alg.bch(&alg.bch(&x, &y).unwrap(), &z).unwrap();
        let a_bc = alg.bch(&x, &alg.bch(&y, &z).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        assert!(alg.bch(&x, &alg.bch_inverse(&x)).unwrap().is_zero());
    }

    #[test]
    fn ad_exp_matches_bch_conjugation() {
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 5);
        let x = alg.generator(0);
        let y = alg.generator(1);
        // exp(ad x)(y) = log(exp(x) exp(y) exp(-x))
        let conj = alg
            .bch(&alg.bch(&x, &y).unwrap(), &alg.bch_inverse(&x))
            .unwrap();
        assert_eq!(alg.ad_exp(&x, &y), conj);
    }

    #[test]
    fn log_word_examples() {
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 4);
        // log of x^2 is 2x exactly.
        let two_x = alg.log_word(&Word::generator(0).pow(2)).unwrap();
        assert_eq!(two_x, alg.generator(0).scale(&q(2, 1)));
        // log of the group commutator starts with the Lie bracket [x,y].
        let c = alg
            .log_word(&Word::commutator(&Word::generator(0), &Word::generator(1)))
            .unwrap();
        assert_eq!(alg.min_degree(&c), Some(2));
        assert_eq!(alg.homogeneous(&c, 2), alg.bracket(&alg.generator(0), &alg.generator(1)));
        // and log is additive on powers of a single word:
        let w = Word::from_letters([(0, 1), (1, -1)]);
        let lw = alg.log_word(&w).unwrap();
        assert_eq!(alg.log_word(&w.pow(3)).unwrap(), alg.bch(&alg.bch(&lw, &lw).unwrap(), &lw).unwrap());
    }

    #[test]
    fn induced_map_kernel_is_ideal_generated_by_y() {
        let src = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 3);
        let tgt = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 3);
        // x -> x, y -> 0
        let map =
            LieMap::from_generator_images(&src, &tgt, &[tgt.generator(0), tgt.zero()]).unwrap();
        map.check_homomorphism(&src, &tgt).unwrap();
        let ker = map.kernel();
        assert_eq!(ker.graded_dims(&src), vec![1, 1, 2]);
        let ideal = ideal_closure(&src, &FlatSubspace::from_elements(&src, &[src.generator(1)]));
        assert!(ker.same_space(&ideal));
    }

    #[test]
    fn graded_dims_of_filtered_subspace() {
        // Span of x + [x,y] (filtered, not graded) and [x,[x,y]].
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 3);
        let x = alg.generator(0);
        let y = alg.generator(1);
        let v = FlatSubspace::from_elements(
            &alg,
            &[
                x.add(&alg.bracket(&x, &y)),
                alg.bracket(&x, &alg.bracket(&x, &y)),
            ],
        );
        // gr_1 sees x, gr_2 sees nothing (x + [x,y] leads in degree 1),
        // gr_3 sees [x,[x,y]].
        assert_eq!(v.graded_dims(&alg), vec![1, 0, 1]);
        let g3 = v.graded_basis(&alg, 3);
        assert_eq!(g3.len(), 1);
        assert!(alg.is_homogeneous(&g3[0], 3));
    }

    #[test]
    fn commutator_span_of_full_algebra() {
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 3);
        let full = FlatSubspace::full(&alg);
        let comm = commutator_span(&alg, &full);
        // [L, L] in degrees 2 and 3: dims 1 and 2.
        assert_eq!(comm.graded_dims(&alg), vec![0, 1, 2]);
    }

    #[test]
    fn pbw_rank_two_gives_powers_of_two() {
        // PBW: the envelope of the free Lie algebra on 2 generators is the
        // free associative algebra, with 2^d monomials in degree d.
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 6);
        let dims = pbw_dims(&alg.degree_dims(), 6);
        for d in 0..=6u32 {
            assert_eq!(dims[d as usize], BigInt::from(2u64.pow(d).min(u64::MAX)));
        }
    }

    #[test]
    fn render_basis_words() {
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 3);
        let rendered: Vec<String> =
            (0..alg.total_dim()).map(|i| alg.render_basis_word(i)).collect();
        assert!(rendered.contains(&"[x,y]".to_string()));
        assert!(rendered.contains(&"[x,[x,y]]".to_string()));
        assert!(rendered.contains(&"[[x,y],y]".to_string()));
    }
}
