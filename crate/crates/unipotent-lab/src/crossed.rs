//! Free pre-crossed modules, Peiffer quotients, abelianized graded modules,
//! and the abelianized comparison diagram with its second homotopy object.
//!
//! Everything happens at a fixed truncation cutoff c. The ambient objects are
//! the truncated free Lie algebras A = L(X ∪ Y) and B = L(X), where Y has one
//! generator per relator. Relator-slot generators carry the weight of the
//! lowest-degree term of the log of their relator, which aligns the degree
//! bookkeeping of both rows of the diagram.
//!
//! The face maps are d0 (x ↦ x, y ↦ 0), d1 (x ↦ x, y ↦ log r_y) and the
//! degeneracy s0 (x ↦ x). The pre-crossed module is K0 = Ker d0 → B with the
//! adjoint action of s0-lifted base elements; the Peiffer subspace is computed
//! two independent ways (commutator closure [K0, K1] and explicit
//! Peiffer-element closure), which must agree; the crossed module is the
//! quotient, and abelianizations give the graded modules of both rows.

use num_rational::BigRational;
use num_traits::Zero;

use num_bigint::BigInt;

use crate::lie::{
    commutator_span, pbw_dims, FlatSubspace, FreeLieAlgebra, LieElement, LieMap,
};
use crate::linalg::QMatrix;
use crate::sampling::RationalSampler;
use crate::words::{GenId, Presentation, SimplicialPresentation};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Graded quotients of filtered subspaces
// ---------------------------------------------------------------------------

/// Degreewise data of a quotient V/W of filtered subspaces of a truncated Lie
/// algebra: per-degree dimensions, explicit lifts of associated-graded basis
/// vectors, and the degree-d wall (the graded image of W) used to express
/// elements in quotient coordinates.
pub struct GradedQuotient {
    pub dims: Vec<usize>,
    /// reps[d - 1]: lifts in V ∩ (degrees >= d) whose degree-d projections
    /// descend to a basis of gr_d(V)/gr_d(W).
    pub reps: Vec<Vec<LieElement>>,
    /// wall[d - 1]: degree-d block coordinates spanning gr_d(W).
    wall: Vec<QMatrix>,
}

impl GradedQuotient {
    /// Build the quotient data; `reversed` flips the lift ordering before
    /// basis selection, producing an alternative (equally valid) set of
    /// representatives — used to make comparison maps non-vacuous.
    pub fn build(
        alg: &FreeLieAlgebra,
        v: &FlatSubspace,
        w: &FlatSubspace,
        reversed: bool,
    ) -> Result<GradedQuotient> {
        if !v.contains_subspace(w) {
            return Err(Error::NotContained);
        }
        let c = alg.cutoff();
        let mut dims = Vec::new();
        let mut reps = Vec::new();
        let mut wall = Vec::new();
        for d in 1..=c {
            let (lo, hi) = (alg.offset(d), alg.offset(d) + alg.dim_degree(d));
            let mut lift_cols = v.filtration_step(alg, d).columns();
            if reversed {
                lift_cols.reverse();
            }
            let lifts = QMatrix::from_columns(alg.total_dim(), &lift_cols);
            let pv = lifts.row_slice(lo, hi);
            let pw = w.filtration_step(alg, d).row_slice(lo, hi).image_basis();
            let (_, pivots) = pw.hstack(&pv).rref();
            let chosen: Vec<usize> = pivots
                .iter()
                .filter(|&&p| p >= pw.cols())
                .map(|&p| p - pw.cols())
                .collect();
            dims.push(chosen.len());
            reps.push(
                chosen
                    .iter()
                    .map(|&j| LieElement { coords: lifts.column(j) })
                    .collect(),
            );
            wall.push(pw);
        }
        Ok(GradedQuotient { dims, reps, wall })
    }

    fn rep_block(&self, alg: &FreeLieAlgebra, d: u32) -> QMatrix {
        let (lo, hi) = (alg.offset(d), alg.offset(d) + alg.dim_degree(d));
        let cols: Vec<Vec<BigRational>> = self.reps[d as usize - 1]
            .iter()
            .map(|e| e.coords[lo..hi].to_vec())
            .collect();
        QMatrix::from_columns(hi - lo, &cols)
    }

    /// Coordinates of the class of `elem` (an element of V with lowest degree
    /// >= d) in the degree-d quotient basis, modulo gr_d(W).
    pub fn express(&self, alg: &FreeLieAlgebra, d: u32, elem: &LieElement) -> Option<Vec<BigRational>> {
        let (lo, hi) = (alg.offset(d), alg.offset(d) + alg.dim_degree(d));
        if elem
            .coords
            .iter()
            .enumerate()
            .any(|(i, c)| !c.is_zero() && alg.basis_degree(i) < d)
        {
            return None;
        }
        let k = self.dims[d as usize - 1];
        let m = self.rep_block(alg, d).hstack(&self.wall[d as usize - 1]);
        let target = elem.coords[lo..hi].to_vec();
        let sol = m.solve(&target)?;
        Some(sol[..k].to_vec())
    }
}

// ---------------------------------------------------------------------------
// Pre-crossed module
// ---------------------------------------------------------------------------

pub struct PreCrossedModule {
    /// L(X ∪ Y) with relator-weighted Y-generators.
    pub ambient: FreeLieAlgebra,
    /// L(X).
    pub base: FreeLieAlgebra,
    pub spres: SimplicialPresentation,
    pub weights_y: Vec<u32>,
    pub d0: LieMap,
    pub d1: LieMap,
    pub s0: LieMap,
    /// K0 = Ker d0 (the top of the pre-crossed module), graded.
    pub top: FlatSubspace,
    /// K1 = Ker d1, filtered.
    pub k1: FlatSubspace,
    pub cm1_samples: usize,
}

impl PreCrossedModule {
    /// Action of a base element g on a top element h: adjoint conjugation by
    /// the s0-lift, exp(ad s0(g))(h).
    pub fn action(&self, g: &LieElement, h: &LieElement) -> LieElement {
        self.ambient.ad_exp(&self.s0.apply(g), h)
    }
}

/// Build the free pre-crossed module of a presentation at cutoff c, including
/// the exact CM1 check at `samples` deterministic rational points.
pub fn build_precrossed(
    spres: &SimplicialPresentation,
    c: u32,
    samples: usize,
    seed: u64,
) -> Result<PreCrossedModule> {
    let nx = spres.num_x();
    let ny = spres.num_y();
    if nx == 0 {
        return Err(Error::Dimension("presentation has no generators".into()));
    }
    let base = FreeLieAlgebra::rank_one_weights(spres.base.generators.clone(), c);

    // Relator-slot weights: lowest degree of the log of each relator.
    let mut weights_y = Vec::new();
    let mut d1_y_images = Vec::new();
    for r in &spres.base.relators {
        let lr = base.log_word(r)?;
        let w = base.min_degree(&lr).ok_or_else(|| {
            Error::RelatorVanishes(format!("{}", r.display(&spres.base.generators)))
        })?;
        weights_y.push(w);
        d1_y_images.push(lr);
    }

    let mut weights = vec![1u32; nx];
    weights.extend_from_slice(&weights_y);
    let ambient = FreeLieAlgebra::new(spres.xy_names(), weights, c);

    let mut d0_images = Vec::new();
    let mut d1_images = Vec::new();
    for i in 0..nx {
        d0_images.push(base.generator(i as GenId));
        d1_images.push(base.generator(i as GenId));
    }
    for j in 0..ny {
        d0_images.push(base.zero());
        d1_images.push(d1_y_images[j].clone());
    }
    let d0 = LieMap::from_generator_images(&ambient, &base, &d0_images)?;
    let d1 = LieMap::from_generator_images(&ambient, &base, &d1_images)?;
    let s0_images: Vec<LieElement> = (0..nx).map(|i| ambient.generator(i as GenId)).collect();
    let s0 = LieMap::from_generator_images(&base, &ambient, &s0_images)?;
    d0.check_homomorphism(&ambient, &base)?;
    d1.check_homomorphism(&ambient, &base)?;
    s0.check_homomorphism(&base, &ambient)?;

    let top = d0.kernel();
    let k1 = d1.kernel();

    // CM1 at sampled points: d1 of the conjugated top element equals the
    // base-level conjugate of its boundary, exactly.
    let mut sampler = RationalSampler::new(seed);
    let top_basis = top.basis_elements();
    for _ in 0..samples {
        let g = sampler.in_algebra(&base);
        let h = sampler.in_span(&ambient, &top_basis);
        let lhs = d1.apply(&ambient.ad_exp(&s0.apply(&g), &h));
        let rhs = base.ad_exp(&g, &d1.apply(&h));
        if lhs != rhs {
            return Err(Error::NotHomomorphism(
                "CM1 failed at a sampled point".into(),
            ));
        }
    }

    Ok(PreCrossedModule {
        ambient,
        base,
        spres: spres.clone(),
        weights_y,
        d0,
        d1,
        s0,
        top,
        k1,
        cm1_samples: samples,
    })
}

// ---------------------------------------------------------------------------
// Peiffer quotient
// ---------------------------------------------------------------------------

/// Smallest subspace containing `seed` and closed under bracketing with every
/// element of `operators`.
fn ad_closure(
    alg: &FreeLieAlgebra,
    seed: FlatSubspace,
    operators: &[LieElement],
) -> FlatSubspace {
    let mut cur = FlatSubspace { mat: seed.mat.image_basis() };
    loop {
        let mut new_elems = Vec::new();
        for op in operators {
            for e in cur.basis_elements() {
                new_elems.push(alg.bracket(op, &e));
            }
        }
        let next = cur.sum(&FlatSubspace::from_elements(alg, &new_elems));
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

/// Lie model of the commutator subgroup [A, B]: span of pairwise brackets of
/// spanning elements, closed under bracketing with A + B.
pub fn commutator_subalgebra(
    alg: &FreeLieAlgebra,
    a: &FlatSubspace,
    b: &FlatSubspace,
) -> FlatSubspace {
    let ba = a.basis_elements();
    let bb = b.basis_elements();
    let mut brackets = Vec::new();
    for x in &ba {
        for y in &bb {
            let (Some(dx), Some(dy)) = (alg.min_degree(x), alg.min_degree(y)) else {
                continue;
            };
            if dx + dy > alg.cutoff() {
                continue;
            }
            brackets.push(alg.bracket(x, y));
        }
    }
    let mut operators = ba;
    operators.extend(bb);
    ad_closure(alg, FlatSubspace::from_elements(alg, &brackets), &operators)
}

/// The explicit Peiffer element for a pair (a, b) of top elements:
/// bch of (action of the boundary of b on a) with the inverse of (group
/// conjugate of a by b).
fn peiffer_element(pcm: &PreCrossedModule, a: &LieElement, b: &LieElement) -> Result<LieElement> {
    let acted = pcm.ambient.ad_exp(&pcm.s0.apply(&pcm.d1.apply(b)), a);
    let conj = pcm.ambient.ad_exp(b, a);
    pcm.ambient.bch(&acted, &pcm.ambient.bch_inverse(&conj))
}

pub struct CrossedModule {
    pub pre: PreCrossedModule,
    /// The Peiffer subspace P = [K0, K1], verified against the explicit
    /// Peiffer-element closure.
    pub peiffer: FlatSubspace,
    pub cm2_samples: usize,
}

/// Quotient by the Peiffer subspace. The subspace is computed two independent
/// ways — commutator closure [Ker d0, Ker d1] and the closure of explicit
/// Peiffer elements over basis pairs — and the build fails if they disagree.
/// CM2 is then checked at sampled points: the Peiffer element of a random pair
/// lies in the subspace.
pub fn peiffer_quotient(
    pcm: PreCrossedModule,
    samples: usize,
    seed: u64,
) -> Result<CrossedModule> {
    let alg = &pcm.ambient;
    let route_one = commutator_subalgebra(alg, &pcm.top, &pcm.k1);

    let top_basis = pcm.top.basis_elements();
    let mut elements = Vec::new();
    for a in &top_basis {
        for b in &top_basis {
            let (Some(da), Some(db)) = (alg.min_degree(a), alg.min_degree(b)) else {
                continue;
            };
            if da + db > alg.cutoff() {
                continue;
            }
            elements.push(peiffer_element(&pcm, a, b)?);
        }
    }
    let mut operators = top_basis.clone();
    operators.extend(pcm.k1.basis_elements());
    let route_two = ad_closure(alg, FlatSubspace::from_elements(alg, &elements), &operators);

    if !route_one.same_space(&route_two) {
        let d1s = route_one.graded_dims(alg);
        let d2s = route_two.graded_dims(alg);
        let degree = (1..=alg.cutoff())
            .find(|&d| d1s[d as usize - 1] != d2s[d as usize - 1])
            .unwrap_or(0);
        return Err(Error::PeifferMismatch(degree));
    }

    let mut sampler = RationalSampler::new(seed);
    for _ in 0..samples {
        let a = sampler.in_span(alg, &top_basis);
        let b = sampler.in_span(alg, &top_basis);
        let p = peiffer_element(&pcm, &a, &b)?;
        if !route_one.contains(&p) {
            return Err(Error::NotHomomorphism(
                "CM2 failed at a sampled point: Peiffer element escapes the subspace".into(),
            ));
        }
    }

    Ok(CrossedModule { pre: pcm, peiffer: route_one, cm2_samples: samples })
}

// ---------------------------------------------------------------------------
// Abelianization
// ---------------------------------------------------------------------------

/// A graded module over the (truncated, enveloped) base: per-degree quotient
/// data plus the per-degree matrices of the degree-1 base generator actions.
pub struct GradedModule {
    pub quotient: GradedQuotient,
    /// action[i][d - 1]: the matrix of the action of base generator i from
    /// the degree-d piece to the degree-(d + 1) piece.
    pub action: Vec<Vec<QMatrix>>,
}

impl GradedModule {
    pub fn dims(&self) -> &[usize] {
        &self.quotient.dims
    }
}

fn module_from_quotient(
    alg: &FreeLieAlgebra,
    quotient: GradedQuotient,
    action_gens: &[LieElement],
) -> Result<GradedModule> {
    let c = alg.cutoff();
    let mut action = Vec::new();
    for g in action_gens {
        let mut per_degree = Vec::new();
        for d in 1..c {
            let src = &quotient.reps[d as usize - 1];
            let rows = quotient.dims[d as usize];
            let mut cols = Vec::new();
            for rep in src {
                let moved = alg.bracket(g, rep);
                let coords = quotient
                    .express(alg, d + 1, &moved)
                    .ok_or_else(|| Error::Dimension("action does not preserve the module".into()))?;
                cols.push(coords);
            }
            per_degree.push(QMatrix::from_columns(rows, &cols));
        }
        action.push(per_degree);
    }
    Ok(GradedModule { quotient, action })
}

/// Abelianizations of both rows: C̄ = K0/(P + [K0, K0]) as a module in the
/// ambient algebra, and R̄ = R/[R, R] in the base algebra, where R = d1(K0).
/// Also certifies that boundary images act trivially on C̄ (the stated CM2
/// consequence), exactly over flat bases.
pub fn abelianize(cm: &CrossedModule) -> Result<(GradedModule, GradedModule)> {
    let pcm = &cm.pre;
    let a = &pcm.ambient;
    let b = &pcm.base;
    let nx = pcm.spres.num_x();

    let k0_comm = commutator_span(a, &pcm.top);
    let wall_c = cm.peiffer.sum(&k0_comm);
    let cbar_q = GradedQuotient::build(a, &pcm.top, &wall_c, false)?;

    let r_u = pcm.d1.apply_subspace(&pcm.top);
    let r_comm = commutator_span(b, &r_u);
    let rbar_q = GradedQuotient::build(b, &r_u, &r_comm, false)?;

    // Boundary images act trivially on C̄: conjugating any top basis element
    // by the s0-lift of the boundary of another moves it only inside the wall.
    for t in pcm.top.basis_elements() {
        for v in pcm.top.basis_elements() {
            let moved = a.ad_exp(&pcm.s0.apply(&pcm.d1.apply(&t)), &v);
            if !wall_c.contains(&moved.sub(&v)) {
                return Err(Error::NotHomomorphism(
                    "a boundary image acts nontrivially on the abelianized top".into(),
                ));
            }
        }
    }

    let action_a: Vec<LieElement> = (0..nx).map(|i| a.generator(i as GenId)).collect();
    let action_b: Vec<LieElement> = (0..nx).map(|i| b.generator(i as GenId)).collect();
    let cbar = module_from_quotient(a, cbar_q, &action_a)?;
    let rbar = module_from_quotient(b, rbar_q, &action_b)?;
    Ok((cbar, rbar))
}

// ---------------------------------------------------------------------------
// Comparison diagram
// ---------------------------------------------------------------------------

/// Everything the comparison diagram yields at truncation: dimension tables,
/// the per-degree matrices of the comparison maps, the second homotopy object,
/// and the boolean verdicts. The top row is a truncation model: it carries the
/// same graded data as the bottom row with independently chosen bases, and
/// κ, τ are the change-of-basis comparison maps.
pub struct DiagramReport {
    pub cutoff: u32,
    pub prime: u64,
    pub names_x: Vec<String>,
    pub names_y: Vec<String>,
    pub weights_y: Vec<u32>,
    /// Graded Lie dimensions of the quotient (the unipotent target) algebra.
    pub gu_dims: Vec<usize>,
    pub cbar_dims: Vec<usize>,
    pub rbar_dims: Vec<usize>,
    /// Top-row ("truncation model") dimensions; equal to the bottom row by
    /// construction.
    pub top_cbar_dims: Vec<usize>,
    pub top_rbar_dims: Vec<usize>,
    pub u2_dims: Vec<usize>,
    /// π₂-truncation dimensions, reported equal to u₂ (kernel identification;
    /// quasirationality-conditional).
    pub pi2_dims: Vec<usize>,
    /// Explicit u₂ basis vectors: (degree, rendered element of the top).
    pub u2_basis: Vec<(u32, String)>,
    /// Per-degree matrices, index d - 1.
    pub mu: Vec<QMatrix>,
    pub gamma: Vec<QMatrix>,
    pub kappa: Vec<QMatrix>,
    pub tau: Vec<QMatrix>,
    pub commutative: bool,
    pub exact_rows: bool,
    pub freeness: bool,
    pub peiffer_agrees: bool,
    pub cm1_samples: usize,
    pub cm2_samples: usize,
    pub frattini_warnings: Vec<String>,
}

/// Build the full abelianized comparison diagram of a presentation at cutoff
/// c. Verdicts are recorded in the report rather than raised as errors.
pub fn build_diagram(
    pres: &Presentation,
    c: u32,
    samples: usize,
    seed: u64,
) -> Result<DiagramReport> {
    let spres = crate::words::simplicialize(pres);
    let pcm = build_precrossed(&spres, c, samples, seed)?;
    let cm = peiffer_quotient(pcm, samples, seed.wrapping_add(1))?;
    let (cbar, rbar) = abelianize(&cm)?;
    let pcm = &cm.pre;
    let a = &pcm.ambient;
    let b = &pcm.base;

    let r_u = pcm.d1.apply_subspace(&pcm.top);
    let r_comm = commutator_span(b, &r_u);
    let k0_comm = commutator_span(a, &pcm.top);
    let wall_c = cm.peiffer.sum(&k0_comm);

    // Top-row realization: same quotients with reversed basis selection.
    let top_cbar = GradedQuotient::build(a, &pcm.top, &wall_c, true)?;
    let top_rbar = GradedQuotient::build(b, &r_u, &r_comm, true)?;

    let express_err = || Error::Dimension("boundary image escapes the quotient".into());

    let mut mu = Vec::new();
    let mut gamma = Vec::new();
    let mut kappa = Vec::new();
    let mut tau = Vec::new();
    let mut u2_dims = Vec::new();
    let mut u2_basis = Vec::new();
    let mut commutative = true;
    let mut exact_rows = true;
    for d in 1..=c {
        let i = d as usize - 1;
        // μ: bottom-row boundary map C̄ -> R̄.
        let mut cols = Vec::new();
        for rep in &cbar.quotient.reps[i] {
            let img = pcm.d1.apply(rep);
            cols.push(rbar.quotient.express(b, d, &img).ok_or_else(express_err)?);
        }
        let mu_d = QMatrix::from_columns(rbar.quotient.dims[i], &cols);

        // γ: the same induced map computed in the top-row bases.
        let mut cols = Vec::new();
        for rep in &top_cbar.reps[i] {
            let img = pcm.d1.apply(rep);
            cols.push(top_rbar.express(b, d, &img).ok_or_else(express_err)?);
        }
        let gamma_d = QMatrix::from_columns(top_rbar.dims[i], &cols);

        // κ, τ: comparison (change-of-basis) maps top row -> bottom row.
        let mut cols = Vec::new();
        for rep in &top_cbar.reps[i] {
            cols.push(cbar.quotient.express(a, d, rep).ok_or_else(express_err)?);
        }
        let kappa_d = QMatrix::from_columns(cbar.quotient.dims[i], &cols);
        let mut cols = Vec::new();
        for rep in &top_rbar.reps[i] {
            cols.push(rbar.quotient.express(b, d, rep).ok_or_else(express_err)?);
        }
        let tau_d = QMatrix::from_columns(rbar.quotient.dims[i], &cols);

        // Square commutativity τ∘γ = μ∘κ, exactly.
        if tau_d.mul(&gamma_d) != mu_d.mul(&kappa_d) {
            commutative = false;
        }

        // u₂ = ker μ degreewise; exactness requires μ surjective.
        let ker = mu_d.kernel_basis();
        u2_dims.push(ker.cols());
        if mu_d.rank() != rbar.quotient.dims[i] {
            exact_rows = false;
        }
        for j in 0..ker.cols() {
            let combo = ker.column(j);
            let mut e = a.zero();
            for (t, cf) in combo.iter().enumerate() {
                e = e.add(&cbar.quotient.reps[i][t].scale(cf));
            }
            u2_basis.push((d, a.render(&e)));
        }

        mu.push(mu_d);
        gamma.push(gamma_d);
        kappa.push(kappa_d);
        tau.push(tau_d);
    }

    // Freeness: C̄ is free of rank |Y| over the envelope of the quotient Lie
    // algebra, with the slot for relator y placed in degree w_y.
    let gu_dims: Vec<usize> = {
        let r_graded = r_u.graded_dims(b);
        b.degree_dims()
            .iter()
            .zip(&r_graded)
            .map(|(full, ideal)| full - ideal)
            .collect()
    };
    let pbw = pbw_dims(&gu_dims, c);
    let mut freeness = true;
    for d in 1..=c {
        let mut expected = BigInt::from(0);
        for &w in &cm.pre.weights_y {
            if d >= w {
                expected += &pbw[(d - w) as usize];
            }
        }
        if BigInt::from(cbar.quotient.dims[d as usize - 1]) != expected {
            freeness = false;
        }
    }

    Ok(DiagramReport {
        cutoff: c,
        prime: pres.prime,
        names_x: pres.generators.clone(),
        names_y: (0..pres.relators.len()).map(|j| format!("y{j}")).collect(),
        weights_y: cm.pre.weights_y.clone(),
        gu_dims,
        cbar_dims: cbar.quotient.dims.clone(),
        rbar_dims: rbar.quotient.dims.clone(),
        top_cbar_dims: top_cbar.dims.clone(),
        top_rbar_dims: top_rbar.dims.clone(),
        pi2_dims: u2_dims.clone(),
        u2_dims,
        u2_basis,
        mu,
        gamma,
        kappa,
        tau,
        commutative,
        exact_rows,
        freeness,
        peiffer_agrees: true,
        cm1_samples: cm.pre.cm1_samples,
        cm2_samples: cm.cm2_samples,
        frattini_warnings: pres.frattini_warnings(),
    })
}
