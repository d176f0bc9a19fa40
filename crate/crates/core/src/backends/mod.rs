//! Extension models built from genuine arithmetic.
//!
//! Each backend produces a [`DegreeTower`]: one [`ExtensionModel`] per
//! degree `n = 1..=n_max`, the cup-product maps with the classes of `a` and
//! `xi_p`, and the class of the `p`-th root of `a` in degree one.

pub mod finite_field;
pub mod hilbert;
pub mod local;
pub mod padic;
pub mod real;

pub use finite_field::ff_build_tower;
pub use hilbert::{hilbert_symbol, hilbert_symbol_int};
pub use local::{local_build_tower, AChoice};
pub use padic::LocalFieldElement;
pub use real::real_build_tower;

use crate::checks::h90_holds;
use crate::error::{Error, Result};
use crate::gfp::{unit_vector, Fp, Matrix};
use crate::model::{validate_model, ExtensionModel};
use crate::report::{Clause, TheoremReport, Verdict, Witness};

#[derive(Clone, Debug)]
pub struct DegreeTower {
    pub descriptor: String,
    pub field: Fp,
    pub n_max: usize,
    /// `models[n - 1]` is the degree-`n` model.
    pub models: Vec<ExtensionModel>,
    /// Dimensions of `B_0, ..., B_{n_max + 1}`; `B_0 = F_p`.
    pub b_dims: Vec<usize>,
    /// `cup_a[n - 1]`: `B_{n-1} -> B_n`, product with the class of `a`,
    /// for `n = 1..=n_max + 1`.
    pub cup_a: Vec<Matrix>,
    /// `cup_xi[n - 1]`: `B_{n-1} -> B_n`, product with the class of `xi_p`.
    pub cup_xi: Vec<Matrix>,
    /// Class of the `p`-th root of `a` in `A_1`.
    pub root_class: Vec<u32>,
    /// Cohomological dimension of `G_F(p)`; `None` means infinite.
    pub cd: Option<u32>,
}

impl DegreeTower {
    pub fn model(&self, n: usize) -> Option<&ExtensionModel> {
        if n == 0 {
            return None;
        }
        self.models.get(n - 1)
    }

    pub fn cup_a(&self, n: usize) -> Option<&Matrix> {
        n.checked_sub(1).and_then(|k| self.cup_a.get(k))
    }

    pub fn cup_xi(&self, n: usize) -> Option<&Matrix> {
        n.checked_sub(1).and_then(|k| self.cup_xi.get(k))
    }

    /// `h90_holds` at every degree.
    pub fn h90_verdicts(&self) -> Result<Vec<Verdict>> {
        self.models
            .iter()
            .map(|m| h90_holds(m).map(|r| r.verdict))
            .collect()
    }
}

/// Zero model of the given `B` dimension (used above the cohomological
/// dimension, where both sides vanish).
pub(crate) fn zero_degree_model(field: Fp, b_dim: usize, provenance: &str) -> Result<ExtensionModel> {
    let zero_b = crate::gfp::Subspace::zero(field, b_dim);
    ExtensionModel::new(
        crate::cyclic::CyclicModule::trivial(field, 0),
        b_dim,
        Matrix::zeros(field, 0, b_dim),
        Matrix::zeros(field, b_dim, 0),
        zero_b.clone(),
        zero_b,
        Default::default(),
        provenance,
    )
}

/// Tower invariants: every degree validates with A7, `K_a` and `K_xi` are
/// the images of the cup maps, and `(sigma - 1) root = i(xi)` in degree one.
pub fn tower_consistency(t: &DegreeTower) -> TheoremReport {
    let mut clauses = Vec::new();
    for (k, m) in t.models.iter().enumerate() {
        let n = k + 1;
        let v = validate_model(m, true);
        clauses.push(Clause {
            name: format!("validate[{}]", n),
            verdict: v.verdict,
            detail: v
                .first_failure()
                .map_or("A1-A8 and flags".to_string(), |c| format!("{} fails", c.name)),
            witness: v.first_failure().and_then(|c| c.witness.clone()),
        });
        for (label, cup, sub) in [
            ("K_a", &t.cup_a[k], m.k_a()),
            ("K_xi", &t.cup_xi[k], m.k_xi()),
        ] {
            let image = cup.image();
            clauses.push(Clause {
                name: format!("{}[{}]", label, n),
                verdict: Verdict::from_bool(&image == sub),
                detail: format!("{} = image of cup map", label),
                witness: image
                    .witness_not_in(sub)
                    .or_else(|| sub.witness_not_in(&image))
                    .map(|w| Witness::new("b", w)),
            });
        }
    }
    if let Some(m1) = t.model(1) {
        let lhs = m1.module().tau().apply(&t.root_class);
        let xi_class = t.cup_xi[0].apply(&unit_vector(t.b_dims[0], 0));
        let rhs = m1.i().apply(&xi_class);
        clauses.push(Clause {
            name: "root[1]".into(),
            verdict: Verdict::from_bool(lhs == rhs),
            detail: "(sigma-1) root_class = i(xi)".into(),
            witness: if lhs == rhs {
                None
            } else {
                Some(Witness::new("(sigma-1) root_class", lhs))
            },
        });
    }
    let ok = clauses.iter().all(|c| !c.verdict.is_fail());
    let mut r = TheoremReport::new("tower_consistency", Verdict::from_bool(ok))
        .with_note(t.descriptor.clone());
    r.clauses = clauses;
    r
}

/// Hilbert 90 is upward closed along the tower: once it holds at degree `n`
/// it holds at every higher degree.
pub fn hereditary_check(t: &DegreeTower) -> Result<TheoremReport> {
    let verdicts = t.h90_verdicts()?;
    let first_pass = verdicts.iter().position(|v| v.is_pass());
    let violation = first_pass.and_then(|start| {
        verdicts[start..]
            .iter()
            .position(|v| v.is_fail())
            .map(|off| start + off + 1)
    });
    let mut r = TheoremReport::new("hereditary_check", Verdict::from_bool(violation.is_none()))
        .with_note(format!(
            "h90 by degree: {}",
            verdicts
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    if let Some(n) = violation {
        r = r.with_note(format!("h90 fails again at degree {}", n));
    }
    Ok(r)
}

/// For `p = 2`: `H^1(G, A_n) = 0` iff `B_n = ann_n(a) (+) a.B_{n-1}`, where
/// `ann_n(a)` is the kernel of `cup_a[n + 1]`.
pub fn hs_p2_ann_check(t: &DegreeTower, n: usize) -> Result<TheoremReport> {
    if t.field.p() != 2 {
        return Err(Error::NotApplicable("hs_p2_ann_check needs p = 2".into()));
    }
    let model = t
        .model(n)
        .ok_or_else(|| Error::NotApplicable(format!("no model at degree {}", n)))?;
    let cup_n = t.cup_a(n).ok_or(Error::MissingCupMap(n))?;
    let cup_next = t.cup_a(n + 1).ok_or(Error::MissingCupMap(n + 1))?;
    let ann = cup_next.kernel();
    let a_part = cup_n.image();
    let inter = ann.intersect(&a_part)?;
    let total = ann.sum(&a_part)?;
    let decomposes = inter.is_zero() && total.is_full();
    let h1 = model.module().h1().dim;
    let mut r = model
        .report("hs_p2_ann_check", Verdict::from_bool((h1 == 0) == decomposes))
        .at_degree(n)
        .with_note(format!(
            "dim H1 = {}, dim ann = {}, dim a.B = {}, decomposition {}",
            h1,
            ann.dim(),
            a_part.dim(),
            decomposes
        ));
    if let Some(w) = inter.basis().first() {
        r = r.with_witness("ann cap a.B", w.clone());
    }
    Ok(r)
}

/// Corestriction is onto and Hilbert 90 holds in every degree `n >= cd`.
pub fn cd_forward_check(t: &DegreeTower) -> Result<TheoremReport> {
    let Some(cd) = t.cd else {
        return Ok(TheoremReport::new("cd_forward_check", Verdict::Skipped)
            .with_note("cohomological dimension is infinite"));
    };
    let mut clauses = Vec::new();
    for n in (cd as usize).max(1)..=t.n_max {
        let m = &t.models[n - 1];
        let surjective = m.norm_range().is_full();
        let h90 = h90_holds(m)?.passed();
        clauses.push(Clause {
            name: format!("n={}", n),
            verdict: Verdict::from_bool(surjective && h90),
            detail: format!("cor surjective {}, h90 {}", surjective, h90),
            witness: None,
        });
    }
    let ok = clauses.iter().all(|c| c.verdict.is_pass());
    let mut r = TheoremReport::new("cd_forward_check", Verdict::from_bool(ok))
        .with_note(format!("cd = {}", cd));
    r.clauses = clauses;
    Ok(r)
}
