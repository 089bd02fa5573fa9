//! User-facing analyses: the quasirationality graded torsion scanner, the
//! p-regularity scanner, and the one-relator cd=2 evidence pipeline.
//!
//! Both scanners work in the free Lie ring over the integers (the Lyndon basis
//! has integer structure constants), with the graded ideal r generated by the
//! initial forms of the relators. They are graded certificates: torsion found
//! here is an exact statement about the presentation-level graded objects;
//! absence of torsion up to the cutoff is evidence, not a proof about the
//! group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::crossed::{build_diagram, DiagramReport};
use crate::lie::{FreeLieAlgebra, LieElement};
use crate::linalg::{column_space_quotient, IntMatrix, InvariantFactors};
use crate::words::{GenId, Presentation};
use crate::{Error, Result};

/// Runtime configuration shared by the analyses and the CLI.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Truncation class, default 5, hard cap 10.
    pub cutoff: u32,
    /// Exponent e for Z/p^e computations.
    pub precision: u32,
    /// Sample count for exact point checks.
    pub samples: usize,
    /// Element budget for finite enumerations.
    pub budget: usize,
    /// Seed for the deterministic samplers.
    pub seed: u64,
}

pub const CUTOFF_CAP: u32 = 10;

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { cutoff: 5, precision: 3, samples: 100, budget: 1 << 20, seed: 0 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cutoff == 0 || self.cutoff > CUTOFF_CAP {
            return Err(Error::CutoffTooLarge(self.cutoff, CUTOFF_CAP));
        }
        Ok(())
    }
}

/// Which graded object a torsion scan inspected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanKind {
    /// Coinvariants (r/[L, r])_d — the quasirationality scanner.
    Coinvariants,
    /// Graded quotients (L/r)_d — the p-regularity scanner.
    GradedQuotient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionVerdict {
    TorsionAt(u32),
    TorsionFreeUpTo(u32),
}

/// Result of a graded torsion scan.
pub struct TorsionReport {
    pub kind: ScanKind,
    pub prime: u64,
    pub cutoff: u32,
    /// Invariant factors of the inspected piece, degree 1..=cutoff.
    pub per_degree: Vec<InvariantFactors>,
    pub verdict: TorsionVerdict,
}

impl TorsionReport {
    pub fn torsion_found(&self) -> bool {
        matches!(self.verdict, TorsionVerdict::TorsionAt(_))
    }
}

/// Initial form of a relator: the lowest-degree homogeneous Lie component of
/// its log, with denominators cleared (integer content preserved — a relator
/// like x^p keeps its leading coefficient p).
pub fn initial_form(alg: &FreeLieAlgebra, r: &crate::words::Word, names: &[String]) -> Result<(u32, LieElement)> {
    let lr = alg.log_word(r)?;
    let w = alg
        .min_degree(&lr)
        .ok_or_else(|| Error::RelatorVanishes(format!("{}", r.display(names))))?;
    let h = alg.homogeneous(&lr, w);
    let mut denom_lcm = BigInt::one();
    for c in &h.coords {
        if !c.is_zero() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
    }
    let scaled = h.scale(&BigRational::from_integer(denom_lcm));
    Ok((w, scaled))
}

/// Integer columns of the degree-d blocks of a family of homogeneous integer
/// Lie elements.
fn block_matrix(alg: &FreeLieAlgebra, d: u32, elems: &[LieElement]) -> IntMatrix {
    let (lo, hi) = (alg.offset(d), alg.offset(d) + alg.dim_degree(d));
    let mut m = IntMatrix::zeros(hi - lo, elems.len());
    for (j, e) in elems.iter().enumerate() {
        for (i, c) in e.coords[lo..hi].iter().enumerate() {
            debug_assert!(c.denom().is_one(), "integrality violated");
            m[(i, j)] = c.numer().clone();
        }
    }
    m
}

/// Per-degree integer spanning vectors of the graded ideal generated by the
/// relator initial forms: iterated brackets with the generators (which
/// suffice, by the Jacobi identity, to span all of ad(L) over Z).
fn ideal_vectors(alg: &FreeLieAlgebra, forms: &[(u32, LieElement)]) -> Vec<Vec<LieElement>> {
    let c = alg.cutoff();
    let mut per_degree: Vec<Vec<LieElement>> = vec![Vec::new(); c as usize + 1];
    for (w, h) in forms {
        per_degree[*w as usize].push(h.clone());
    }
    for d in 1..c {
        let current = per_degree[d as usize].clone();
        for v in &current {
            for g in 0..alg.num_gens() {
                per_degree[d as usize + 1].push(alg.bracket(&alg.generator(g as GenId), v));
            }
        }
    }
    per_degree
}

/// Spanning vectors of [L, r]_d: brackets of basis elements with ideal vectors
/// of complementary degree.
fn bracket_lr(
    alg: &FreeLieAlgebra,
    ideal: &[Vec<LieElement>],
    d: u32,
) -> Vec<LieElement> {
    let mut out = Vec::new();
    for e in 1..d {
        for i in 0..alg.total_dim() {
            if alg.basis_degree(i) != e {
                continue;
            }
            let b = alg.basis_element(i);
            for v in &ideal[(d - e) as usize] {
                out.push(alg.bracket(&b, v));
            }
        }
    }
    out
}

fn scan(pres: &Presentation, cutoff: u32, kind: ScanKind) -> Result<TorsionReport> {
    let p = pres.prime;
    let alg = FreeLieAlgebra::rank_one_weights(pres.generators.clone(), cutoff);
    let forms: Vec<(u32, LieElement)> = pres
        .relators
        .iter()
        .map(|r| initial_form(&alg, r, &pres.generators))
        .collect::<Result<_>>()?;
    let ideal = ideal_vectors(&alg, &forms);

    let mut per_degree = Vec::new();
    let mut torsion_at = None;
    for d in 1..=cutoff {
        let a = block_matrix(&alg, d, &ideal[d as usize]);
        let factors = match kind {
            ScanKind::Coinvariants => {
                let b = block_matrix(&alg, d, &bracket_lr(&alg, &ideal, d));
                column_space_quotient(&a, &b).ok_or_else(|| {
                    Error::Dimension("[L, r] escapes the ideal lattice".into())
                })?
            }
            ScanKind::GradedQuotient => {
                let n = alg.dim_degree(d);
                column_space_quotient(&IntMatrix::identity(n), &a)
                    .expect("the ideal lattice lies in the ambient lattice")
            }
        };
        let hit = match kind {
            ScanKind::Coinvariants => factors.has_torsion(),
            ScanKind::GradedQuotient => factors.has_p_torsion(p),
        };
        if hit && torsion_at.is_none() {
            torsion_at = Some(d);
        }
        per_degree.push(factors);
    }
    let verdict = match torsion_at {
        Some(d) => TorsionVerdict::TorsionAt(d),
        None => TorsionVerdict::TorsionFreeUpTo(cutoff),
    };
    Ok(TorsionReport { kind, prime: p, cutoff, per_degree, verdict })
}

/// Quasirationality scanner: per-degree invariant factors of the graded
/// relation-coinvariant pieces (r/[L, r])_d; any torsion is a certificate.
pub fn qr_graded_scan(pres: &Presentation, cutoff: u32) -> Result<TorsionReport> {
    scan(pres, cutoff, ScanKind::Coinvariants)
}

/// p-regularity scanner: per-degree invariant factors of (L/r)_d; the verdict
/// is p-regular up to the cutoff iff no p-torsion appears.
pub fn p_regularity_scan(pres: &Presentation, cutoff: u32) -> Result<TorsionReport> {
    scan(pres, cutoff, ScanKind::GradedQuotient)
}

/// The one-relator cd=2 evidence pipeline: the finite-level consequences of
/// the embedding hypothesis, aggregated.
pub struct CDEvidenceReport {
    pub cutoff: u32,
    pub relator_weight: u32,
    /// (a) rank-one freeness shadow: dim_d R̄ equals the envelope dimension
    /// shifted by the relator's initial degree.
    pub freeness_rank_one: bool,
    /// (b) κ-comparison matrices bijective per degree.
    pub kappa_bijective: bool,
    /// (c) u₂ = 0 per degree.
    pub u2_vanishes: bool,
    /// (d) p-regularity scan passes.
    pub p_regular: bool,
    /// First degree at which some check fails, if any.
    pub obstruction_degree: Option<u32>,
    pub verdict: String,
    pub diagram: DiagramReport,
    pub p_regularity: TorsionReport,
}

pub fn one_relator_cd2_evidence(
    pres: &Presentation,
    config: &RunConfig,
) -> Result<CDEvidenceReport> {
    config.validate()?;
    if pres.relators.len() != 1 {
        return Err(Error::NotOneRelator(pres.relators.len()));
    }
    let c = config.cutoff;
    let diagram = build_diagram(pres, c, config.samples, config.seed)?;
    let p_regularity = p_regularity_scan(pres, c)?;
    let w = diagram.weights_y[0];

    let pbw = crate::lie::pbw_dims(&diagram.gu_dims, c);
    let mut freeness_rank_one = true;
    let mut kappa_bijective = true;
    let mut u2_vanishes = true;
    let mut obstruction_degree = None;
    let note = |d: u32, obstruction: &mut Option<u32>| {
        if obstruction.is_none() {
            *obstruction = Some(d);
        }
    };
    for d in 1..=c {
        let i = d as usize - 1;
        let expected = if d >= w { pbw[(d - w) as usize].clone() } else { BigInt::zero() };
        if BigInt::from(diagram.rbar_dims[i]) != expected {
            freeness_rank_one = false;
            note(d, &mut obstruction_degree);
        }
        let k = &diagram.kappa[i];
        if k.rows() != k.cols() || k.rank() != k.rows() {
            kappa_bijective = false;
            note(d, &mut obstruction_degree);
        }
        if diagram.u2_dims[i] != 0 {
            u2_vanishes = false;
            note(d, &mut obstruction_degree);
        }
    }
    let p_regular = !p_regularity.torsion_found();
    if let TorsionVerdict::TorsionAt(d) = p_regularity.verdict {
        note(d, &mut obstruction_degree);
    }

    let all = freeness_rank_one && kappa_bijective && u2_vanishes && p_regular;
    let verdict = if all {
        format!("cd=2 evidence up to class {c}")
    } else {
        format!(
            "obstruction at degree {}",
            obstruction_degree.expect("a failed check records its degree")
        )
    };
    Ok(CDEvidenceReport {
        cutoff: c,
        relator_weight: w,
        freeness_rank_one,
        kappa_bijective,
        u2_vanishes,
        p_regular,
        obstruction_degree,
        verdict,
        diagram,
        p_regularity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_presentation;

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn free_presentation_is_torsion_free_and_p_regular() {
        let p = pres("p 2\ngenerators x y\n");
        let qr = qr_graded_scan(&p, 5).unwrap();
        assert_eq!(qr.verdict, TorsionVerdict::TorsionFreeUpTo(5));
        assert!(qr.per_degree.iter().all(|f| f.factors.is_empty()));
        let pr = p_regularity_scan(&p, 5).unwrap();
        assert_eq!(pr.verdict, TorsionVerdict::TorsionFreeUpTo(5));
        // Free Lie ring quotients are free of the full Witt rank.
        assert_eq!(pr.per_degree[4].rank(), 0);
        assert_eq!(pr.per_degree[4].factors.iter().filter(|f| f.is_zero()).count(), 6);
    }

    #[test]
    fn one_relator_commutator_scans_clean() {
        let p = pres("p 2\ngenerators x y\nrelator [x,y]\n");
        let qr = qr_graded_scan(&p, 5).unwrap();
        assert_eq!(qr.verdict, TorsionVerdict::TorsionFreeUpTo(5));
        let pr = p_regularity_scan(&p, 5).unwrap();
        assert_eq!(pr.verdict, TorsionVerdict::TorsionFreeUpTo(5));
        // (L/r)_1 free of rank 2, (L/r)_2 = 0: the quotient is abelian.
        assert_eq!(pr.per_degree[1].torsion().len(), 0);
    }

    #[test]
    fn p_power_initial_form_gives_degree_one_p_torsion() {
        for prime in [2u64, 3] {
            let text = format!("p {prime}\ngenerators x y\nrelator x^{prime}\n");
            let p = pres(&text);
            let pr = p_regularity_scan(&p, 3).unwrap();
            assert_eq!(pr.verdict, TorsionVerdict::TorsionAt(1));
            assert!(pr.per_degree[0]
                .torsion()
                .iter()
                .any(|f| f == &BigInt::from(prime)));
        }
    }

    #[test]
    fn initial_form_preserves_content() {
        let alg = FreeLieAlgebra::rank_one_weights(vec!["x".into(), "y".into()], 3);
        let p = pres("p 3\ngenerators x y\nrelator x^3\n");
        let (w, h) = initial_form(&alg, &p.relators[0], &p.generators).unwrap();
        assert_eq!(w, 1);
        assert_eq!(h, alg.generator(0).scale(&BigRational::from_integer(BigInt::from(3))));
    }

    #[test]
    fn cd2_evidence_for_commutator_relator() {
        let p = pres("p 2\ngenerators x y\nrelator [x,y]\n");
        let cfg = RunConfig { samples: 20, ..RunConfig::default() };
        let report = one_relator_cd2_evidence(&p, &cfg).unwrap();
        assert!(report.freeness_rank_one);
        assert!(report.kappa_bijective);
        assert!(report.u2_vanishes);
        assert!(report.p_regular);
        assert_eq!(report.verdict, "cd=2 evidence up to class 5");
    }

    #[test]
    fn cd2_obstruction_for_p_power_relator() {
        let p = pres("p 2\ngenerators x y\nrelator x^2\n");
        let cfg = RunConfig { cutoff: 3, samples: 10, ..RunConfig::default() };
        let report = one_relator_cd2_evidence(&p, &cfg).unwrap();
        assert!(!report.p_regular);
        assert!(report.verdict.starts_with("obstruction at degree"));
    }

    #[test]
    fn cd2_requires_one_relator() {
        let p = pres("p 2\ngenerators x y\n");
        let cfg = RunConfig::default();
        assert!(matches!(
            one_relator_cd2_evidence(&p, &cfg),
            Err(Error::NotOneRelator(0))
        ));
    }

    #[test]
    fn config_cap_enforced() {
        let cfg = RunConfig { cutoff: 11, ..RunConfig::default() };
        assert!(matches!(cfg.validate(), Err(Error::CutoffTooLarge(11, 10))));
    }

    #[test]
    fn torsion_certificate_is_monotone_in_cutoff() {
        // Whatever certificate appears at a low cutoff persists at higher ones.
        let p = pres("p 2\ngenerators x y\nrelator x^2\nrelator [x,y]\n");
        let low = qr_graded_scan(&p, 3).unwrap();
        if let TorsionVerdict::TorsionAt(d) = low.verdict {
            let high = qr_graded_scan(&p, 5).unwrap();
            assert_eq!(high.verdict, TorsionVerdict::TorsionAt(d));
        }
    }
}
