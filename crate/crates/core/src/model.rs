//! The extension model: a pair of spaces standing in for `k_n E` and `k_n F`
//! with restriction `i`, norm `N`, and the distinguished subspaces
//! `K_a = {a} . k_{n-1} F` and `K_xi = {xi_p} . k_{n-1} F`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cyclic::CyclicModule;
use crate::error::{Error, Result};
use crate::gfp::{unit_vector, Fp, Matrix, Subspace};
use crate::report::{Clause, Dims, TheoremReport, Verdict, Witness};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Flags {
    /// `a` is a sum of two squares in `F` (meaningful for `p = 2`).
    pub a_sum_two_squares: bool,
    /// `xi_p` is a norm from `E`.
    pub xi_is_norm: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionModel {
    module: CyclicModule,
    b_dim: usize,
    i: Matrix,
    n: Matrix,
    k_a: Subspace,
    k_xi: Subspace,
    flags: Flags,
    provenance: String,
}

/// The axioms an extension model may be asked to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `sigma i = i`.
    A1,
    /// `N (sigma - 1) = 0`.
    A2,
    /// `i N = (sigma - 1)^{p-1}`.
    A3,
    /// `N i = 0`.
    A4,
    /// `ker i = K_a`.
    A5,
    /// `K_a` inside `N(A)`; only imposed for `p > 2`.
    A6,
    /// `(sigma - 1)A cap A^G = i(K_xi) + i N(A)`.
    A7,
    /// `ker N = (sigma - 1)A + i(B)`: exactness of the small Hilbert 90 sequence.
    A8,
    /// `a_sum_two_squares` implies `K_a` inside `N(A)`.
    FlagSumTwoSquares,
    /// `xi_is_norm` implies `K_xi` inside `N(A)`.
    FlagXiNorm,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::A4 => "A4",
            Axiom::A5 => "A5",
            Axiom::A6 => "A6",
            Axiom::A7 => "A7",
            Axiom::A8 => "A8",
            Axiom::FlagSumTwoSquares => "flag:a_sum_two_squares",
            Axiom::FlagXiNorm => "flag:xi_is_norm",
        }
    }

    /// Axioms every checker relies on.
    pub const BASE: [Axiom; 6] = [Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4, Axiom::A5, Axiom::A8];
}

impl ExtensionModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        module: CyclicModule,
        b_dim: usize,
        i: Matrix,
        n: Matrix,
        k_a: Subspace,
        k_xi: Subspace,
        flags: Flags,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let field = module.field();
        let a_dim = module.dim();
        for (what, m) in [("i", &i), ("N", &n)] {
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.p(),
                    right: m.field().p(),
                });
            }
            let expected = if what == "i" { (a_dim, b_dim) } else { (b_dim, a_dim) };
            if (m.rows(), m.cols()) != expected {
                return Err(Error::DimensionMismatch(format!(
                    "{} is {}x{}, expected {}x{}",
                    what,
                    m.rows(),
                    m.cols(),
                    expected.0,
                    expected.1
                )));
            }
        }
        for (what, s) in [("K_a", &k_a), ("K_xi", &k_xi)] {
            if s.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.p(),
                    right: s.field().p(),
                });
            }
            if s.ambient_dim() != b_dim {
                return Err(Error::DimensionMismatch(format!(
                    "{} lives in dimension {}, expected {}",
                    what,
                    s.ambient_dim(),
                    b_dim
                )));
            }
        }
        Ok(ExtensionModel {
            module,
            b_dim,
            i,
            n,
            k_a,
            k_xi,
            flags,
            provenance: provenance.into(),
        })
    }

    /// `A = B = 0`.
    pub fn zero(field: Fp) -> Self {
        ExtensionModel {
            module: CyclicModule::trivial(field, 0),
            b_dim: 0,
            i: Matrix::zeros(field, 0, 0),
            n: Matrix::zeros(field, 0, 0),
            k_a: Subspace::zero(field, 0),
            k_xi: Subspace::zero(field, 0),
            flags: Flags::default(),
            provenance: "zero".into(),
        }
    }

    /// One free block `A = F_p[G]` over `B = F_p`: `i` embeds `B` as the norm
    /// line and `N` is the coefficient sum.
    pub fn free_block(field: Fp) -> Self {
        let p = field.p() as usize;
        let module = CyclicModule::free(field, 1);
        let i = Matrix::from_columns(field, p, &[unit_vector(p, 0)]).unwrap();
        // In the Jordan basis the augmentation reads off the coefficient of
        // the generator e_p, and tau^{p-1} e_p = e_1.
        let n = Matrix::from_rows(field, p, &[unit_vector(p, p - 1)]).unwrap();
        ExtensionModel {
            module,
            b_dim: 1,
            i,
            n,
            k_a: Subspace::zero(field, 1),
            k_xi: Subspace::zero(field, 1),
            flags: Flags::default(),
            provenance: "free-block".into(),
        }
    }

    pub fn field(&self) -> Fp {
        self.module.field()
    }
    pub fn p(&self) -> u32 {
        self.module.p()
    }
    pub fn module(&self) -> &CyclicModule {
        &self.module
    }
    pub fn a_dim(&self) -> usize {
        self.module.dim()
    }
    pub fn b_dim(&self) -> usize {
        self.b_dim
    }
    pub fn sigma(&self) -> &Matrix {
        self.module.sigma()
    }
    pub fn i(&self) -> &Matrix {
        &self.i
    }
    pub fn n(&self) -> &Matrix {
        &self.n
    }
    pub fn k_a(&self) -> &Subspace {
        &self.k_a
    }
    pub fn k_xi(&self) -> &Subspace {
        &self.k_xi
    }
    pub fn flags(&self) -> Flags {
        self.flags
    }
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    pub fn with_k_a(mut self, k_a: Subspace) -> Result<Self> {
        if k_a.ambient_dim() != self.b_dim {
            return Err(Error::DimensionMismatch("K_a ambient dimension".into()));
        }
        self.k_a = k_a;
        Ok(self)
    }

    pub fn with_k_xi(mut self, k_xi: Subspace) -> Result<Self> {
        if k_xi.ambient_dim() != self.b_dim {
            return Err(Error::DimensionMismatch("K_xi ambient dimension".into()));
        }
        self.k_xi = k_xi;
        Ok(self)
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    /// `(sigma - 1) A`.
    pub fn radical(&self) -> Subspace {
        self.module.radical_part()
    }

    /// `A^G`.
    pub fn fixed(&self) -> Subspace {
        self.module.fixed_part()
    }

    pub fn ker_n(&self) -> Subspace {
        self.n.kernel()
    }

    /// `N(A)` inside `B`.
    pub fn norm_range(&self) -> Subspace {
        self.n.image()
    }

    /// `i(B)` inside `A`.
    pub fn restriction_range(&self) -> Subspace {
        self.i.image()
    }

    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(crate::format::model_to_text(self).as_bytes());
        digest.iter().take(8).map(|b| format!("{:02x}", b)).collect()
    }

    /// An empty report pre-filled with this model's dimensions and profile.
    pub fn report(&self, checker: &str, verdict: Verdict) -> TheoremReport {
        let mut r = TheoremReport::new(checker, verdict);
        r.dims = Dims {
            a: self.a_dim(),
            b: self.b_dim,
        };
        r.profile = self.module.profile().multiplicities().to_vec();
        r.fingerprint = self.fingerprint();
        r
    }

    /// Checks a single axiom, returning a witness on failure.
    pub fn check_axiom(&self, axiom: Axiom) -> Clause {
        let tau = self.module.tau();
        let name = axiom.name().to_string();
        let clause = |ok: bool, detail: &str, witness: Option<Witness>| Clause {
            name: name.clone(),
            verdict: Verdict::from_bool(ok),
            detail: detail.to_string(),
            witness: if ok { None } else { witness },
        };
        // First column e_j of `m` that is nonzero, as a witness in the source.
        let nonzero_column = |m: &Matrix, label: &str| {
            (0..m.cols())
                .find(|&c| m.column(c).iter().any(|&x| x != 0))
                .map(|c| Witness::new(label, unit_vector(m.cols(), c)))
        };
        match axiom {
            Axiom::A1 => {
                let m = tau.mul(&self.i);
                clause(m.is_zero(), "sigma i = i", nonzero_column(&m, "b"))
            }
            Axiom::A2 => {
                let m = self.n.mul(&tau);
                clause(m.is_zero(), "N (sigma-1) = 0", nonzero_column(&m, "y"))
            }
            Axiom::A3 => {
                let m = self.i.mul(&self.n).sub(&self.module.norm_operator());
                clause(m.is_zero(), "i N = (sigma-1)^(p-1)", nonzero_column(&m, "y"))
            }
            Axiom::A4 => {
                let m = self.n.mul(&self.i);
                clause(m.is_zero(), "N i = 0", nonzero_column(&m, "b"))
            }
            Axiom::A5 => {
                let ker = self.i.kernel();
                let w = ker
                    .witness_not_in(&self.k_a)
                    .or_else(|| self.k_a.witness_not_in(&ker))
                    .map(|v| Witness::new("b", v));
                clause(ker == self.k_a, "ker i = K_a", w)
            }
            Axiom::A6 => {
                if self.p() == 2 {
                    return Clause {
                        name,
                        verdict: Verdict::Skipped,
                        detail: "only imposed for p > 2".into(),
                        witness: None,
                    };
                }
                let range = self.norm_range();
                let w = self.k_a.witness_not_in(&range).map(|v| Witness::new("b", v));
                clause(w.is_none(), "K_a in N(A)", w)
            }
            Axiom::A7 => {
                let (lhs, rhs) = self.sigmamin1_sides();
                let w = lhs
                    .witness_not_in(&rhs)
                    .or_else(|| rhs.witness_not_in(&lhs))
                    .map(|v| Witness::new("y", v));
                clause(lhs == rhs, "(sigma-1)A cap A^G = i(K_xi) + iN(A)", w)
            }
            Axiom::A8 => {
                let ker = self.ker_n();
                let rhs = self.radical().sum(&self.restriction_range()).unwrap();
                let w = ker
                    .witness_not_in(&rhs)
                    .or_else(|| rhs.witness_not_in(&ker))
                    .map(|v| Witness::new("y", v));
                clause(ker == rhs, "ker N = (sigma-1)A + i(B)", w)
            }
            Axiom::FlagSumTwoSquares | Axiom::FlagXiNorm => {
                let (set, sub, what) = if axiom == Axiom::FlagSumTwoSquares {
                    (self.flags.a_sum_two_squares, &self.k_a, "K_a in N(A)")
                } else {
                    (self.flags.xi_is_norm, &self.k_xi, "K_xi in N(A)")
                };
                if !set {
                    return Clause {
                        name,
                        verdict: Verdict::Skipped,
                        detail: "flag not set".into(),
                        witness: None,
                    };
                }
                let w = sub
                    .witness_not_in(&self.norm_range())
                    .map(|v| Witness::new("b", v));
                clause(w.is_none(), what, w)
            }
        }
    }

    /// Both sides of `(sigma-1)A cap A^G = i(K_xi) + i N(A)`.
    pub fn sigmamin1_sides(&self) -> (Subspace, Subspace) {
        let lhs = self.radical().intersect(&self.fixed()).unwrap();
        let rhs = self
            .k_xi
            .image_under(&self.i)
            .sum(&self.norm_range().image_under(&self.i))
            .unwrap();
        (lhs, rhs)
    }

    /// Fails with the first violated axiom among `axioms`.
    pub fn ensure(&self, axioms: &[Axiom]) -> Result<()> {
        for &a in axioms {
            if self.check_axiom(a).verdict.is_fail() {
                return Err(Error::InvalidModel {
                    axiom: a.name().to_string(),
                });
            }
        }
        Ok(())
    }

    /// Component-wise direct sum.
    pub fn direct_sum(&self, other: &ExtensionModel) -> Result<ExtensionModel> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.p(),
                right: other.p(),
            });
        }
        let field = self.field();
        let b_dim = self.b_dim + other.b_dim;
        let embed = |s: &Subspace, offset: usize| -> Vec<Vec<u32>> {
            s.basis()
                .into_iter()
                .map(|v| {
                    let mut w = vec![0; b_dim];
                    w[offset..offset + v.len()].copy_from_slice(&v);
                    w
                })
                .collect()
        };
        let sum_sub = |a: &Subspace, b: &Subspace| {
            let mut rows = embed(a, 0);
            rows.extend(embed(b, self.b_dim));
            Subspace::span(field, b_dim, &rows)
        };
        ExtensionModel::new(
            self.module.direct_sum(&other.module)?,
            b_dim,
            self.i.block_diag(&other.i),
            self.n.block_diag(&other.n),
            sum_sub(&self.k_a, &other.k_a),
            sum_sub(&self.k_xi, &other.k_xi),
            Flags {
                a_sum_two_squares: self.flags.a_sum_two_squares && other.flags.a_sum_two_squares,
                xi_is_norm: self.flags.xi_is_norm && other.flags.xi_is_norm,
            },
            format!("sum({}, {})", self.provenance, other.provenance),
        )
    }

    /// The same model after changes of basis `P` on `A` and `R` on `B`
    /// (columns are the new basis vectors in old coordinates).
    pub fn change_basis(&self, pa: &Matrix, rb: &Matrix) -> Result<ExtensionModel> {
        let pa_inv = pa
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("basis change on A is singular".into()))?;
        let rb_inv = rb
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("basis change on B is singular".into()))?;
        let module = self.module.conjugate(pa)?;
        let i = pa_inv.mul(&self.i).mul(rb);
        let n = rb_inv.mul(&self.n).mul(pa);
        ExtensionModel::new(
            module,
            self.b_dim,
            i,
            n,
            self.k_a.image_under(&rb_inv),
            self.k_xi.image_under(&rb_inv),
            self.flags,
            self.provenance.clone(),
        )
    }
}

/// Axiom-by-axiom validation. Passes iff A1-A5 and A8 hold, plus A6 when
/// `p > 2`, plus A7 when `require_a7`, plus the semantics of any set flag.
pub fn validate_model(m: &ExtensionModel, require_a7: bool) -> TheoremReport {
    let mut axioms = Axiom::BASE.to_vec();
    axioms.push(Axiom::A6);
    axioms.push(Axiom::A7);
    axioms.push(Axiom::FlagSumTwoSquares);
    axioms.push(Axiom::FlagXiNorm);
    let mut clauses: Vec<Clause> = axioms.iter().map(|&a| m.check_axiom(a)).collect();
    if !require_a7 {
        if let Some(c) = clauses.iter_mut().find(|c| c.name == "A7") {
            if c.verdict.is_fail() {
                c.detail.push_str(" (not required)");
                c.verdict = Verdict::Skipped;
                c.witness = None;
            }
        }
    }
    let ok = clauses.iter().all(|c| !c.verdict.is_fail());
    let mut report = m.report("validate_model", Verdict::from_bool(ok));
    report.clauses = clauses;
    report
}
