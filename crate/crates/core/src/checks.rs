//! Checkers for the Hilbert 90 statements expressible on an extension model.
//!
//! Every checker returns a [`TheoremReport`]; a failing report carries a
//! witness that can be verified with plain linear algebra. Precondition
//! violations (wrong `p`, invalid model) are errors, not failing reports.

use crate::cyclic::CyclicModule;
use crate::error::{Error, Result};
use crate::gfp::{is_zero_vector, unit_vector, Subspace};
use crate::model::{Axiom, ExtensionModel};
use crate::report::{TheoremReport, Verdict};

fn ensure_base(m: &ExtensionModel) -> Result<()> {
    m.ensure(&Axiom::BASE)
}

fn ensure_podd_axioms(m: &ExtensionModel) -> Result<()> {
    ensure_base(m)?;
    m.ensure(&[Axiom::A6])?;
    if m.check_axiom(Axiom::A7).verdict.is_fail() {
        return Err(Error::MissingSigmaMin1);
    }
    Ok(())
}

/// Exactness of `A --(sigma-1)--> A --N--> B`: `ker N = (sigma - 1)A`.
pub fn h90_holds(m: &ExtensionModel) -> Result<TheoremReport> {
    ensure_base(m)?;
    let ker = m.ker_n();
    let radical = m.radical();
    let report = match ker.witness_not_in(&radical) {
        None => m.report("h90_holds", Verdict::Pass),
        Some(y) => m
            .report("h90_holds", Verdict::Fail)
            .with_witness("y in ker N \\ (sigma-1)A", y),
    };
    Ok(report)
}

/// `i(B)` inside `(sigma - 1)A`.
pub fn small_h90(m: &ExtensionModel) -> Result<TheoremReport> {
    ensure_base(m)?;
    let radical = m.radical();
    for k in 0..m.b_dim() {
        let b = unit_vector(m.b_dim(), k);
        let ib = m.i().apply(&b);
        if !radical.contains(&ib) {
            return Ok(m
                .report("small_h90", Verdict::Fail)
                .with_witness("b", b)
                .with_witness("i(b) not in (sigma-1)A", ib));
        }
    }
    Ok(m.report("small_h90", Verdict::Pass))
}

fn spans_b(m: &ExtensionModel, rhs: &Subspace, checker: &str) -> TheoremReport {
    match (0..m.b_dim())
        .map(|k| unit_vector(m.b_dim(), k))
        .find(|b| !rhs.contains(b))
    {
        None => m.report(checker, Verdict::Pass),
        Some(b) => m
            .report(checker, Verdict::Fail)
            .with_witness("b not in right-hand side", b),
    }
}

/// `p = 2`: `B = N(A) + K_a`.
pub fn criterion_p2(m: &ExtensionModel) -> Result<TheoremReport> {
    if m.p() != 2 {
        return Err(Error::NotApplicable(format!(
            "criterion_p2 needs p = 2, model has p = {}",
            m.p()
        )));
    }
    ensure_base(m)?;
    let rhs = m.norm_range().sum(m.k_a())?;
    Ok(spans_b(m, &rhs, "criterion_p2"))
}

/// `p > 2`: `B = N(A) + K_xi`.
pub fn criterion_podd(m: &ExtensionModel) -> Result<TheoremReport> {
    if m.p() == 2 {
        return Err(Error::NotApplicable(
            "criterion_podd needs p > 2".to_string(),
        ));
    }
    ensure_podd_axioms(m)?;
    let rhs = m.norm_range().sum(m.k_xi())?;
    Ok(spans_b(m, &rhs, "criterion_podd"))
}

/// Under the norm hypothesis on `a` (p = 2) or `xi_p` (p > 2), Hilbert 90
/// holds iff `N` is surjective. Passes iff that equivalence holds.
pub fn cor_surjective_equiv(m: &ExtensionModel) -> Result<TheoremReport> {
    let flags = m.flags();
    let flag_axiom = if m.p() == 2 {
        if !flags.a_sum_two_squares {
            return Err(Error::HypothesisNotAsserted(
                "a_sum_two_squares".to_string(),
            ));
        }
        ensure_base(m)?;
        Axiom::FlagSumTwoSquares
    } else {
        if !flags.xi_is_norm {
            return Err(Error::HypothesisNotAsserted("xi_is_norm".to_string()));
        }
        ensure_podd_axioms(m)?;
        Axiom::FlagXiNorm
    };
    m.ensure(&[flag_axiom])?;
    let surjective = m.norm_range().is_full();
    let h90 = h90_holds(m)?.passed();
    let mut r = m
        .report("cor_surjective_equiv", Verdict::from_bool(surjective == h90))
        .with_note(format!("N surjective: {}, h90: {}", surjective, h90));
    if !surjective {
        let b = (0..m.b_dim())
            .map(|k| unit_vector(m.b_dim(), k))
            .find(|b| !m.norm_range().contains(b))
            .unwrap();
        r = r.with_witness("b not in N(A)", b);
    }
    Ok(r)
}

/// `(sigma-1)A cap A^G = i(K_xi) + i N(A)`.
pub fn check_sigmamin1(m: &ExtensionModel) -> Result<TheoremReport> {
    ensure_base(m)?;
    m.ensure(&[Axiom::A6])?;
    let (lhs, rhs) = m.sigmamin1_sides();
    if let Some(y) = lhs.witness_not_in(&rhs) {
        return Ok(m
            .report("check_sigmamin1", Verdict::Fail)
            .with_witness("y in (sigma-1)A cap A^G \\ (i(K_xi) + iN(A))", y));
    }
    if let Some(y) = rhs.witness_not_in(&lhs) {
        return Ok(m
            .report("check_sigmamin1", Verdict::Fail)
            .with_witness("y in i(K_xi) + iN(A) \\ (sigma-1)A cap A^G", y));
    }
    Ok(m.report("check_sigmamin1", Verdict::Pass))
}

/// The subspace `tau^{l-1} y` must land in for an element of length `l`.
fn length_target(m: &ExtensionModel, l: usize) -> Subspace {
    let norm_part = m.norm_range().image_under(m.i());
    if l == 2 {
        m.k_xi().image_under(m.i()).sum(&norm_part).unwrap()
    } else {
        norm_part
    }
}

/// For `y` of length `l >= 2`: `tau^{l-1} y` lies in `i N(A)` when `l >= 3`,
/// and in `i(K_xi) + i N(A)` when `l = 2`.
pub fn check_length_lemma(m: &ExtensionModel, y: &[u32]) -> Result<TheoremReport> {
    ensure_base(m)?;
    let l = m.module().length(y)?;
    if l < 2 {
        return Err(Error::LengthTooSmall(l));
    }
    let top = m.module().tau_power(l - 1).apply(y);
    let target = length_target(m, l);
    let verdict = Verdict::from_bool(target.contains(&top));
    let mut r = m
        .report("check_length_lemma", verdict)
        .with_note(format!("length {}", l));
    if verdict.is_fail() {
        r = r
            .with_witness("y", y.to_vec())
            .with_witness("(sigma-1)^(l-1) y", top);
    }
    Ok(r)
}

/// The length lemma for every nonzero `y` at once.
///
/// For fixed `l` the condition is linear on `ker tau^l` (vectors of smaller
/// length map to zero), so it suffices to test `tau^{l-1}` on a basis of
/// `ker tau^l`; a failing basis vector has length exactly `l`.
pub fn check_length_lemma_all(m: &ExtensionModel) -> Result<TheoremReport> {
    ensure_base(m)?;
    let module = m.module();
    let p = m.p() as usize;
    for l in 2..=p {
        let top = module.tau_power(l - 1);
        let target = length_target(m, l);
        for y in module.tau_power(l).kernel().basis() {
            let image = top.apply(&y);
            if !target.contains(&image) {
                return Ok(m
                    .report("check_length_lemma", Verdict::Fail)
                    .with_note(format!("length {}", l))
                    .with_witness("y", y)
                    .with_witness("(sigma-1)^(l-1) y", image));
            }
        }
    }
    Ok(m.report("check_length_lemma", Verdict::Pass))
}

/// A witness `A = i(Q) + P` with `i(Q) != 0`.
#[derive(Clone, Debug)]
pub struct RationalSummand {
    pub q: Subspace,
    pub p: Subspace,
    /// The element of `B` spanning `Q`.
    pub b: Vec<u32>,
}

/// Looks for `b` with `i(b)` outside `(sigma-1)A`; then `Q = <b>` and
/// `P` is any hyperplane containing `(sigma-1)A` but not `i(b)`, which is
/// automatically `sigma`-stable.
pub fn find_rational_summand(m: &ExtensionModel) -> Result<Option<RationalSummand>> {
    ensure_base(m)?;
    let field = m.field();
    let radical = m.radical();
    for k in 0..m.b_dim() {
        let b = unit_vector(m.b_dim(), k);
        let v = m.i().apply(&b);
        if is_zero_vector(&v) || !m.module().is_trivial_summand(&v)? {
            continue;
        }
        let with_v = radical.sum(&Subspace::span(field, m.a_dim(), &[v.clone()]))?;
        let mut p_basis = radical.basis();
        p_basis.extend(with_v.complement_in(&Subspace::full(field, m.a_dim()))?);
        return Ok(Some(RationalSummand {
            q: Subspace::span(field, m.b_dim(), &[b.clone()]),
            p: Subspace::span(field, m.a_dim(), &p_basis),
            b,
        }));
    }
    Ok(None)
}

/// Passes iff no nonzero `i(Q)`, `Q` inside `B`, is a `G`-direct summand of `A`.
pub fn summand_condition(m: &ExtensionModel) -> Result<TheoremReport> {
    Ok(match find_rational_summand(m)? {
        None => m.report("summand_condition", Verdict::Pass),
        Some(s) => {
            let iq = m.i().apply(&s.b);
            m.report("summand_condition", Verdict::Fail)
                .with_witness("b spanning Q", s.b)
                .with_witness("i(b), a trivial direct summand", iq)
        }
    })
}

/// `H^1(G, A) = 0` implies Hilbert 90.
pub fn h1_implies_h90(m: &ExtensionModel) -> Result<TheoremReport> {
    ensure_base(m)?;
    let h1 = m.module().h1();
    let h90 = h90_holds(m)?;
    let ok = h1.dim > 0 || h90.passed();
    let mut r = m
        .report("h1_implies_h90", Verdict::from_bool(ok))
        .with_note(format!("dim H1 = {}, h90 {}", h1.dim, h90.verdict));
    if !ok {
        r.witnesses = h90.witnesses;
    }
    Ok(r)
}

/// `H^1(G, M) = 0` iff `M` is free.
pub fn hs_equivalences(module: &CyclicModule) -> TheoremReport {
    let h1 = module.h1();
    let free = module.is_free();
    let mut r = TheoremReport::new(
        "hs_equivalences",
        Verdict::from_bool((h1.dim == 0) == free),
    )
    .with_note(format!("dim H1 = {}, free = {}", h1.dim, free));
    r.dims.a = module.dim();
    r.profile = module.profile().multiplicities().to_vec();
    if let Some(rep) = h1.representatives.first() {
        r = r.with_witness("H1 representative", rep.clone());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfp::{Fp, Matrix};
    use crate::model::Flags;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    /// p = 2, trivial A of dimension 2, i an isomorphism, N = 0.
    fn trivial_failing() -> ExtensionModel {
        let field = f(2);
        ExtensionModel::new(
            CyclicModule::trivial(field, 2),
            2,
            Matrix::identity(field, 2),
            Matrix::zeros(field, 2, 2),
            Subspace::zero(field, 2),
            Subspace::zero(field, 2),
            Flags::default(),
            "trivial-failing",
        )
        .unwrap()
    }

    #[test]
    fn zero_model_passes_everything() {
        let m = ExtensionModel::zero(f(3));
        assert!(h90_holds(&m).unwrap().passed());
        assert!(small_h90(&m).unwrap().passed());
        assert!(criterion_podd(&m).unwrap().passed());
        assert!(check_sigmamin1(&m).unwrap().passed());
        assert!(summand_condition(&m).unwrap().passed());
        let flagged = m.with_flags(Flags {
            a_sum_two_squares: false,
            xi_is_norm: true,
        });
        assert!(cor_surjective_equiv(&flagged).unwrap().passed());
    }

    #[test]
    fn free_block_passes() {
        for p in Fp::SUPPORTED {
            let m = ExtensionModel::free_block(f(p));
            assert!(h90_holds(&m).unwrap().passed());
            assert!(small_h90(&m).unwrap().passed());
            assert!(check_sigmamin1(&m).unwrap().passed());
            assert!(check_length_lemma_all(&m).unwrap().passed());
            if p == 2 {
                assert!(criterion_p2(&m).unwrap().passed());
            } else {
                assert!(criterion_podd(&m).unwrap().passed());
            }
            // generator of the free block has length p
            let g = unit_vector(p as usize, p as usize - 1);
            let r = check_length_lemma(&m, &g).unwrap();
            assert!(r.passed(), "{}", r);
        }
    }

    #[test]
    fn trivial_model_fails_with_witness() {
        let m = trivial_failing();
        let r = h90_holds(&m).unwrap();
        assert!(r.verdict.is_fail());
        let y = &r.witnesses[0].vector;
        assert!(m.n().apply(y).iter().all(|&x| x == 0));
        assert!(!m.radical().contains(y));
        assert!(small_h90(&m).unwrap().verdict.is_fail());
        assert!(criterion_p2(&m).unwrap().verdict.is_fail());
        assert!(summand_condition(&m).unwrap().verdict.is_fail());
    }

    #[test]
    fn applicability_errors() {
        let m2 = trivial_failing();
        assert!(matches!(criterion_podd(&m2), Err(Error::NotApplicable(_))));
        assert!(matches!(
            cor_surjective_equiv(&m2),
            Err(Error::HypothesisNotAsserted(_))
        ));
        let m3 = ExtensionModel::free_block(f(3));
        assert!(matches!(criterion_p2(&m3), Err(Error::NotApplicable(_))));
        assert!(matches!(
            check_length_lemma(&m3, &[1, 0, 0]),
            Err(Error::LengthTooSmall(1))
        ));
        assert!(matches!(
            check_length_lemma(&m3, &[0, 0, 0]),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn rational_summand_on_v1() {
        let field = f(2);
        let m = ExtensionModel::new(
            CyclicModule::trivial(field, 1),
            1,
            Matrix::identity(field, 1),
            Matrix::zeros(field, 1, 1),
            Subspace::zero(field, 1),
            Subspace::zero(field, 1),
            Flags::default(),
            "v1",
        )
        .unwrap();
        let s = find_rational_summand(&m).unwrap().unwrap();
        assert!(s.q.is_full());
        assert!(s.p.is_zero());
        assert!(summand_condition(&m).unwrap().verdict.is_fail());
        assert!(h90_holds(&m).unwrap().verdict.is_fail());
    }

    #[test]
    fn hs_equivalences_examples() {
        let free = CyclicModule::free(f(5), 2);
        assert!(hs_equivalences(&free).passed());
        let t = CyclicModule::trivial(f(5), 1);
        let r = hs_equivalences(&t);
        assert!(r.passed());
        assert_eq!(r.notes[0], "dim H1 = 1, free = false");
    }

    #[test]
    fn invalid_model_rejected_by_checkers() {
        let m = ExtensionModel::free_block(f(3))
            .with_k_a(Subspace::full(f(3), 1))
            .unwrap();
        assert_eq!(
            h90_holds(&m).unwrap_err(),
            Error::InvalidModel {
                axiom: "A5".into()
            }
        );
    }
}
