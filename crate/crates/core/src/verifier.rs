//! Batch verification: a registry of named checks, constraint gating over an (α, δ) grid,
//! and deterministic text/JSON reports.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{build_ei, catalog_spans_fiber, e_sum_basis, printed_table_entry, psi_ei, verify_projection_lemma};
use crate::dim7::{self, build_dim7, Dim7Package};
use crate::duality::{self, DualModel};
use crate::error::{Error, Result};
use crate::homogeneous::{self, CurvatureFamily, HomogeneousModel};
use crate::sasaki::{deformation_params, verify_degree_three_products, verify_friedrich_kath_identity, Deformation, IdentityReport, SasakiFrame};
use crate::scalar::{field_sqrt, fmt_rational, int, parse_rational, ExactScalar, Rational};
use crate::spin::{hermitian, in_span, joint_kernel, omega_spin, rank, verify_clifford_relations, Spinor};

pub const ALL_DIMS: [usize; 3] = [7, 11, 15];
const DIM7: &[usize] = &[7];
pub const DEFAULT_ALPHAS: [&str; 7] = ["1", "2", "3", "-1", "-2", "4", "1/2"];
pub const DEFAULT_DELTAS: [&str; 7] = ["1", "2", "3", "4", "5", "-1", "-4"];
pub const SCHEMA_VERSION: u32 = 1;
const MAX_WITNESSES: usize = 5;

/// Every reference listed as in scope; each must appear in some check's paper_ref.
pub const IN_SCOPE_REFS: &[&str] = &[
    "§2.1",
    "Prop 2.3",
    "Prop 2.4",
    "Eq. (curvdifference)",
    "Prop 2.6",
    "Eq. (Utensor)",
    "Prop 2.7",
    "Eq. (cliffordmultONB)",
    "Thm 2.13",
    "Table 1",
    "Def 3.1",
    "Eq. (3Sas_def_parameters)",
    "Eq. (small_j_def)",
    "Lemma 3.3",
    "Lemma 3.4",
    "Lemma 3.5",
    "Thm 3.6",
    "Eq. (KS_with_torsion)",
    "Prop 3.8",
    "Thm 4.1",
    "Eq. (deformedKillingspinorsbundle)",
    "Lemma 4.4",
    "Lemma 4.5",
    "Eq. (modified_connection_formula)",
    "Eqs. (Phi1)–(Phi3)",
    "Prop 4.9",
    "Prop 4.10",
    "Prop 4.11",
    "Lemma 4.12",
    "Prop 4.13",
    "Remark 4.14",
    "Def 5.2",
    "Def 5.3",
    "Def 5.4",
    "Def 5.5",
    "Lemma 5.7",
    "Lemma 5.8",
    "Prop 5.9",
    "Prop 5.10",
    "Prop 5.12",
    "Thm 5.11",
    "Eq. (G2form)",
    "§6 canonical and auxiliary spinors",
    "Thm 6.1",
    "Thm 6.2",
    "Lemma 6.3",
    "Thm 6.4",
    "§6 Dirac/Friedrich remarks",
    "§6 holonomy remark",
    "fragment §1 parallel-case spinor count",
    "fragment §1 deformation parameters",
];

/// A parameter point: (α, δ) and the manifold dimension 4n − 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub alpha: Rational,
    pub delta: Rational,
    pub dim: usize,
}

impl Point {
    pub fn n(&self) -> usize {
        (self.dim + 1) / 4
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    AlphaNonZero,
    DeltaNonZero,
    /// αδ > 0, needed for the compact model.
    PositiveProduct,
    /// α > 0 and δ > 0.
    BothPositive,
    /// √(αδ) exists in ℚ(√2).
    SquareProduct,
    /// δ = 2α.
    Parallel,
}

impl Constraint {
    pub fn label(self) -> &'static str {
        match self {
            Constraint::AlphaNonZero => "α≠0",
            Constraint::DeltaNonZero => "δ≠0",
            Constraint::PositiveProduct => "αδ>0",
            Constraint::BothPositive => "α,δ>0",
            Constraint::SquareProduct => "√(αδ) exact",
            Constraint::Parallel => "δ=2α",
        }
    }

    /// The skip reason when (α, δ) violates the constraint.
    pub fn violation(self, alpha: &Rational, delta: &Rational) -> Option<&'static str> {
        let holds = match self {
            Constraint::AlphaNonZero => !alpha.is_zero(),
            Constraint::DeltaNonZero => !delta.is_zero(),
            Constraint::PositiveProduct => (alpha * delta).is_positive(),
            Constraint::BothPositive => alpha.is_positive() && delta.is_positive(),
            Constraint::SquareProduct => field_sqrt(&(alpha * delta)).is_some(),
            Constraint::Parallel => delta == &(int(2) * alpha),
        };
        if holds {
            return None;
        }
        Some(match self {
            Constraint::AlphaNonZero => "α=0 excluded",
            Constraint::DeltaNonZero => "δ=0 excluded",
            Constraint::PositiveProduct => "αδ≤0: no compact model",
            Constraint::BothPositive => "α,δ>0 required",
            Constraint::SquareProduct => "αδ not a rational square",
            Constraint::Parallel => "not parallel (δ≠2α)",
        })
    }
}

pub struct CheckSpec {
    pub id: &'static str,
    pub paper_ref: &'static str,
    pub constraints: &'static [Constraint],
    pub dims: &'static [usize],
    pub description: &'static str,
    pub run: fn(&Point) -> Result<IdentityReport>,
}

impl CheckSpec {
    pub fn skip_reason(&self, p: &Point) -> Option<&'static str> {
        self.constraints.iter().find_map(|c| c.violation(&p.alpha, &p.delta))
    }
}

use Constraint::*;

const POINTWISE: &[Constraint] = &[AlphaNonZero];
const DERIVATIVE: &[Constraint] = &[AlphaNonZero, DeltaNonZero];
const COMPACT: &[Constraint] = &[AlphaNonZero, DeltaNonZero, PositiveProduct];
const DEFORMED: &[Constraint] = &[AlphaNonZero, DeltaNonZero, BothPositive, SquareProduct];
const PARALLEL: &[Constraint] = &[AlphaNonZero, DeltaNonZero, Parallel];

static REGISTRY: &[CheckSpec] = &[
    CheckSpec {
        id: "def3.1.deformation_params",
        paper_ref: "Def 3.1, \"a>0, a+b>0, c≠0, c²=a+b\"; Eq. (3Sas_def_parameters), \"the parameters a,b,c needed to obtain\"",
        constraints: COMPACT,
        dims: &ALL_DIMS,
        description: "deformation (1,1) → (α,δ): a = 1/(αδ), c = 1/δ, constraints hold, lands on (α,δ)",
        run: run_deformation_params,
    },
    CheckSpec {
        id: "def5.1.calibration.s7",
        paper_ref: "Def 5.1, \"A 3-Sasakian data consists of\"; Eqs. (Phi1)–(Phi3) adapted frame from ad(ξ_i)",
        constraints: COMPACT,
        dims: DIM7,
        description: "sp(2) model: Jacobi, reductivity, dη axiom, exact λ₀, λ₁, orthonormal calibrated basis",
        run: run_calibration,
    },
    CheckSpec {
        id: "def5.4.dualize.s7",
        paper_ref: "Def 5.2 \"Extended symmetric data\"; Def 5.3 extended symmetric space; Def 5.4, \"𝔤′ := 𝔤₀ ⊕ i𝔤₁ ⊆ 𝔤^ℂ\"; Def 5.5 dual 3-(α,δ)-Sasaki space, \"where α′ := α and δ′ := −δ\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "dual is involutive, equals the formal (α,−δ) model, is calibrated; Φ′_i = θ(Φ_i)",
        run: run_dualize,
    },
    CheckSpec {
        id: "eq.G2form.canonical_spinor",
        paper_ref: "Eq. (G2form), \"ω := η_{1,2,3} + Σ η_i ∧ Φ_i^𝓗\"; §6 canonical and auxiliary spinors, \"ψ₀ = (1/√2)(ω + iy₁)\"",
        constraints: POINTWISE,
        dims: DIM7,
        description: "ω·ψ₀ = −7ψ₀ on a line, spectrum (−7)¹(+1)⁷, ψ₀ = (ω + iy₁)/√2, ψ₀…ψ₃ orthonormal",
        run: run_g2_canonical,
    },
    CheckSpec {
        id: "eq.cliffordmultONB.clifford_relations",
        paper_ref: "Eq. (cliffordmultONB), \"the action of the unit vectors e_i\"",
        constraints: &[],
        dims: &ALL_DIMS,
        description: "e_j·e_k + e_k·e_j = −2δ_jk on every monomial spinor",
        run: run_clifford_relations,
    },
    CheckSpec {
        id: "eq.curvdifference.s7",
        paper_ref: "Eq. (curvdifference), \"curvature tensors R, R^g\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "R^g = R − ¼g(T,T) − ⅛dT on all basis quadruples",
        run: run_curvdifference,
    },
    CheckSpec {
        id: "eq.small_j_def.sigma_isometry",
        paper_ref: "Eq. (small_j_def), \"σ acts as multiplication by √(αδ) on 𝓗 and multiplication by δ on 𝓥\"",
        constraints: DEFORMED,
        dims: &ALL_DIMS,
        description: "σ is an isometry (𝔪, g) → (𝔪, g′) with the stated scales",
        run: run_sigma_isometry,
    },
    CheckSpec {
        id: "frag.deformation_params.parallel",
        paper_ref: "fragment §1 deformation parameters, \"a = 2α₀²/(αδ)\"",
        constraints: COMPACT,
        dims: &ALL_DIMS,
        description: "deformation (α₀, 2α₀) → (α,δ): a, b, c in closed form with c² = a+b",
        run: run_parallel_deformation_params,
    },
    CheckSpec {
        id: "frag.parallel_count.s7",
        paper_ref: "fragment §1 parallel-case spinor count, \"admits at least 2n solutions\"; §6 holonomy remark, \"at least 4 linearly independent (globally-defined) ∇-parallel spinors\"",
        constraints: PARALLEL,
        dims: DIM7,
        description: "joint Λ̃/isotropy kernel has dimension ≥ 4 and contains ψ₀…ψ₃",
        run: run_parallel_count,
    },
    CheckSpec {
        id: "lemma3.5.difference_tensor",
        paper_ref: "Lemma 3.5, \"The difference tensor τ := ∇^{g′} − ∇^σ\"",
        constraints: DEFORMED,
        dims: &ALL_DIMS,
        description: "τ from the two connection corrections equals its closed form on every frame vector",
        run: run_difference_tensor,
    },
    CheckSpec {
        id: "lemma4.12.projection",
        paper_ref: "Lemma 4.12, items (i)–(iii), \"2δ_{i,r}(4n−3)ξ_i·ψ\" and \"−2δ + 8(n−1)(α−δ)\"",
        constraints: DERIVATIVE,
        dims: &ALL_DIMS,
        description: "E_i projections of Φ_pψ, [Φ_p,Φ_q]ψ and (∇_{ξ_p}Φ_q − ∇_{ξ_q}Φ_p)ψ",
        run: run_projection_lemma,
    },
    CheckSpec {
        id: "lemma4.4.degree_three_products",
        paper_ref: "Lemma 4.4, \"is an even permutation of (1,2,3), then\", Eqs. (degthreeproduct1), (degthreeproduct2)",
        constraints: POINTWISE,
        dims: &ALL_DIMS,
        description: "A_i(X)Φ_jψ and A_i(X)Φ_kψ in closed form for ψ ∈ E_i, all frame X",
        run: run_degree_three_products,
    },
    CheckSpec {
        id: "lemma4.5.friedrich_kath",
        paper_ref: "Lemma 4.5, \"manifold and ψ ∈ Γ(E_i), then\", Eq. (technicallemma2)",
        constraints: POINTWISE,
        dims: &ALL_DIMS,
        description: "the Friedrich–Kath identity for ψ ∈ E_i, all frame X, Y",
        run: run_friedrich_kath,
    },
    CheckSpec {
        id: "lemma5.7.tau_isomorphism.s7",
        paper_ref: "Lemma 5.7, τ-isomorphism, \"is an isomorphism of Lie algebras\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "τ is skew-valued and bracket-preserving on 𝔰𝔬(𝔪)₀ ⊕ i𝔰𝔬(𝔪)₁",
        run: run_tau_isomorphism,
    },
    CheckSpec {
        id: "lemma5.8.graded_parts.s7",
        paper_ref: "Lemma 5.8, \"ad(x)∈𝔰𝔬(𝔪)₀\"; \"Λ^g(x) ∈ 𝔰𝔬(𝔪)₀, Λ^g(y) ∈ 𝔰𝔬(𝔪)₁\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "ad and Λ^g are even along 𝔨 and odd along 𝔪₁",
        run: run_graded_parts,
    },
    CheckSpec {
        id: "lemma6.3.canonical_relation",
        paper_ref: "Lemma 6.3, Eq. (canonicalCliffrelation), \"(Φ_i − ξ_j·ξ_k)·ψ₀ = 0\"",
        constraints: POINTWISE,
        dims: DIM7,
        description: "(Φ_i − ξ_j·ξ_k)·ψ₀ = 0",
        run: run_canonical_relation,
    },
    CheckSpec {
        id: "lemma6.3.phi_on_canonical",
        paper_ref: "Lemma 6.3, \"Φ_i·ψ₀ = ψ_i\"",
        constraints: POINTWISE,
        dims: DIM7,
        description: "Φ_i·ψ₀ = ψ_i",
        run: run_phi_on_canonical,
    },
    CheckSpec {
        id: "lemma6.3.phi_on_other_auxiliary",
        paper_ref: "Lemma 6.3, \"Φ_i·ψ_j = −3ξ_i·ψ_j\"",
        constraints: POINTWISE,
        dims: DIM7,
        description: "Φ_i·ψ_j = −3ξ_i·ψ_j for i ≠ j",
        run: run_phi_on_other_auxiliary,
    },
    CheckSpec {
        id: "lemma6.3.phi_on_own_auxiliary",
        paper_ref: "Lemma 6.3, \"Φ_i·ψ_i = ξ_i·ψ_i\"",
        constraints: POINTWISE,
        dims: DIM7,
        description: "Φ_i·ψ_i = ξ_i·ψ_i",
        run: run_phi_on_own_auxiliary,
    },
    CheckSpec {
        id: "prop2.3.lc_derivatives.s7",
        paper_ref: "Prop 2.3, \"for any even permutation\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "∇^gφ_i and ∇^gξ_i from the model agree with the closed formulas",
        run: run_lc_derivatives,
    },
    CheckSpec {
        id: "prop2.6.nomizu_lc.s7",
        paper_ref: "Prop 2.6/Eq. (Utensor), \"where U is the symmetric\"; Prop 2.7(ii)/Eq. (LC_Nomizu_map_explicit_formula)",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "U-tensor and explicit Levi-Civita maps agree, are skew, torsion-free and equivariant",
        run: run_nomizu_lc,
    },
    CheckSpec {
        id: "prop2.7.nomizu_canonical.s7",
        paper_ref: "Prop 2.7(i)/Eq. (canonical_Nomizu_map_explicit_formula); Prop 2.4, \"unique metric connection ∇ with skew torsion\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "canonical map is equivariant, has torsion T and dT as closed forms, rotates φ_i by β",
        run: run_nomizu_canonical,
    },
    CheckSpec {
        id: "prop4.10.twisted_torsion_traces.s7",
        paper_ref: "Prop 4.10, \"g(T(X,Y), T(e_s, φ_i(e_s)))\" traces",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "φ_i-twisted traces of g(T,T) and dT in all four cases",
        run: run_twisted_torsion,
    },
    CheckSpec {
        id: "prop4.11.lc_projections.s7",
        paper_ref: "Prop 4.11, \"the orthogonal projection onto E_i\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "E_i projections of the spinorial Levi-Civita curvature",
        run: run_lc_projections,
    },
    CheckSpec {
        id: "prop4.13.flatness.s7",
        paper_ref: "Prop 4.13, \"The restriction ∇̂|_E is flat\"; Eq. (modified_connection_formula), \"the modified spinorial connection\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "R̂(X,Y)u = 0 for u ∈ E; not flat on all of Σ when α ≠ δ",
        run: run_flatness,
    },
    CheckSpec {
        id: "prop4.9.twisted_curvature_trace.s7",
        paper_ref: "Prop 4.9, \"4nαβ Φ_i(X,Y)\" (all four cases)",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "φ_i-twisted trace of the canonical curvature in all four cases",
        run: run_twisted_curvature,
    },
    CheckSpec {
        id: "prop5.10.spin_lift.s7",
        paper_ref: "Prop 5.10, \"admits a homogeneous spin structure if and only if\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "isotropy action and its spin lift coincide on source and dual",
        run: run_dual_spin_lift,
    },
    CheckSpec {
        id: "prop5.12.dual_canonical.s7",
        paper_ref: "Prop 5.12, \"the canonical connections\", Λ′(V)W = τ(Λ(V))W − (4α′/δ′)[V,W]",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "predicted dual canonical map equals the dual's own canonical map",
        run: run_dual_canonical,
    },
    CheckSpec {
        id: "prop5.8.dual_lc.s7",
        paper_ref: "Prop 5.9, \"the Levi-Civita connection of (M′,g′) has Nomizu map\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "predicted dual Levi-Civita map equals the dual's U-tensor and explicit maps",
        run: run_dual_lc,
    },
    CheckSpec {
        id: "remark4.14.dirac.s7",
        paper_ref: "Remark 4.14, \"the action of the (Riemannian) Dirac operator\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "Du = −((4n−1)α/2)u + ((α−δ)/2)Σξ_pΦ_pu on the E fiber",
        run: run_dirac_remark,
    },
    CheckSpec {
        id: "remark6.dirac_friedrich.s7",
        paper_ref: "§6 Dirac/Friedrich remarks, \"Dψ = ((−2α−5δ)/2)ψ\", \"Dψ₀ = ((6α+3δ)/2)ψ₀\", \"realizes Friedrich's bound\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "Dirac eigenvalues, R₀ = 6(δ²+8αδ−2α²), bound gaps 18(α−δ)² and 2(5α−δ)²",
        run: run_dirac_friedrich,
    },
    CheckSpec {
        id: "remark6.holonomy.s7",
        paper_ref: "§6 holonomy remark, \"∇_X ψ_i = … β(η_k(X)ξ_j − η_j(X)ξ_k)·ψ₀\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "ψ₀ is ∇-parallel for all (α,δ); ∇ψ_i = β(η_k(X)ξ_j − η_j(X)ξ_k)·ψ₀",
        run: run_holonomy,
    },
    CheckSpec {
        id: "sec2.1.structure_axioms",
        paper_ref: "§2.1 structure-tensor axioms; Eqs. (Phi1)–(Phi3); Prop 2.4, \"the torsion of ∇ is the 3-form\"",
        constraints: POINTWISE,
        dims: &ALL_DIMS,
        description: "almost 3-contact metric identities in the adapted frame; both torsion formulas agree",
        run: run_structure_axioms,
    },
    CheckSpec {
        id: "thm2.13.catalog_spans",
        paper_ref: "Thm 2.13(ii), \"spanned over C∞(M) by the Killing spinors\"; Table 1, \"Bases for the E_i in Low Dimensions\"",
        constraints: POINTWISE,
        dims: &ALL_DIMS,
        description: "each E_i has rank 2 and is spanned by the catalog spinors (both inclusions); printed entries lie in E_i",
        run: run_catalog_spans,
    },
    CheckSpec {
        id: "thm3.6.deformed_killing.s7",
        paper_ref: "Thm 3.6/Eq. (KS_with_torsion), \"admits at least n+1 linearly independent spinors\"; Lemma 3.3, \"The Levi-Civita connection ∇^{g′} of the\"; Lemma 3.4, \"is metric with respect to g′\"; Prop 3.8, generalized Killing spinors with torsion for ∇^σ",
        constraints: DEFORMED,
        dims: DIM7,
        description: "deformed (1,1) model equals the (α,δ) model; ψ_{−1}, ψ₀, ψ₁ satisfy the deformed equations",
        run: run_deformed_killing,
    },
    CheckSpec {
        id: "thm4.1.h_killing.s7",
        paper_ref: "Thm 4.1/Eq. (deformedKillingspinorsbundle), \"∇^g_X ψ = (α/2)X·ψ + ((α−δ)/2)Σ η_p(X)Φ_p·ψ\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "every spinor of the E fiber is H-Killing; rank(E) ≥ 2",
        run: run_h_killing,
    },
    CheckSpec {
        id: "thm5.11.dual_spinors.s7",
        paper_ref: "Thm 5.11, \"(i) … satisfies the 𝓗′-Killing equation\"; Eq. (Chap_dual:canonicaldualequation), \"2α′(Φ′_i − ξ′_j·ξ′_k)·ψ′\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "H-Killing ↔ H′-Killing both ways; parallel case dual equation; ψ′₀ parallel",
        run: run_dual_spinors,
    },
    CheckSpec {
        id: "thm6.1.generalized_killing.s7",
        paper_ref: "Thm 6.1/Eq. (dim7spinorialeqn3ad), \"Riemannian generalized Killing spinors\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "ψ₀…ψ₃ satisfy their generalized Killing equations; ψ₀ is ∇-parallel",
        run: run_generalized_killing,
    },
    CheckSpec {
        id: "thm6.2.dual_generalized_killing.s7",
        paper_ref: "Thm 6.2, generalized Killing equations on the dual",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "the same equations for (α,−δ) on the dual model",
        run: run_dual_generalized_killing,
    },
    CheckSpec {
        id: "thm6.4.equation_equivalence",
        paper_ref: "Thm 6.4, \"if and only if it satisfies the second equation\"",
        constraints: DERIVATIVE,
        dims: DIM7,
        description: "the two dimension-7 spinor equations have the same right-hand side on every frame direction",
        run: run_equation_equivalence,
    },
];

pub fn registry() -> &'static [CheckSpec] {
    REGISTRY
}

pub fn find(id: &str) -> Option<&'static CheckSpec> {
    REGISTRY.iter().find(|c| c.id == id)
}

// ---------------------------------------------------------------------------
// shared inputs

fn frame(p: &Point) -> Result<SasakiFrame> {
    SasakiFrame::build(p.n(), p.alpha.clone(), p.delta.clone())
}

/// The compact model when αδ > 0, otherwise the formal non-compact realization.
fn model(p: &Point) -> Result<Arc<HomogeneousModel>> {
    static CACHE: OnceLock<Mutex<HashMap<(Rational, Rational), Arc<HomogeneousModel>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (p.alpha.clone(), p.delta.clone());
    if let Some(m) = cache.lock().expect("model cache").get(&key) {
        return Ok(m.clone());
    }
    let m = if (&p.alpha * &p.delta).is_positive() {
        HomogeneousModel::build_s7(&p.alpha, &p.delta)?
    } else {
        HomogeneousModel::build_formal(&p.alpha, &p.delta)?
    };
    let m = Arc::new(m);
    cache.lock().expect("model cache").insert(key, m.clone());
    Ok(m)
}

fn dual_pair(p: &Point) -> Result<DualModel> {
    DualModel::new((*model(p)?).clone())
}

fn dim7_package(p: &Point) -> Result<Dim7Package> {
    build_dim7(&p.alpha, &p.delta)
}

fn absorb(rep: &mut IdentityReport, violations: Vec<String>) {
    rep.checked += 1;
    rep.violations.extend(violations);
}

// ---------------------------------------------------------------------------
// pointwise checks

fn run_structure_axioms(p: &Point) -> Result<IdentityReport> {
    let f = frame(p)?;
    let mut rep = IdentityReport::default();
    absorb(&mut rep, f.check_invariants());
    Ok(rep)
}

fn run_clifford_relations(p: &Point) -> Result<IdentityReport> {
    Ok(verify_clifford_relations(p.n()))
}

/// Printed entries known to be misprinted; the closed sums replace them.
const TABLE_MISPRINTS: [(usize, usize, usize); 2] = [(3, 3, 0), (4, 3, 0)];

fn run_catalog_spans(p: &Point) -> Result<IdentityReport> {
    let f = frame(p)?;
    let n = p.n();
    let mut rep = IdentityReport::default();
    for i in 1..=3 {
        let bundle = build_ei(&f, i);
        rep.record(bundle.dim() == 2, || format!("E_{i} has rank {}", bundle.dim()));
        rep.record(catalog_spans_fiber(&f, i)?, || format!("catalog spinors do not span E_{i}"));
        for b in 0..=1 {
            let psi = psi_ei(n, i, b)?;
            rep.record(f.in_e_fiber(i, &psi), || format!("Ψ_(E_{i},{b}) = {psi} is not in E_{i}"));
            if TABLE_MISPRINTS.contains(&(n, i, b)) {
                continue;
            }
            if let Some(t) = printed_table_entry(n, i, b) {
                rep.record(f.in_e_fiber(i, &t), || format!("printed entry (E_{i},{b}) = {t} is not in E_{i}"));
            }
        }
    }
    Ok(rep)
}

fn run_degree_three_products(p: &Point) -> Result<IdentityReport> {
    let f = frame(p)?;
    let mut rep = IdentityReport::default();
    for i in 1..=3 {
        for psi in &build_ei(&f, i).basis {
            rep.merge(verify_degree_three_products(&f, i, psi)?);
        }
    }
    Ok(rep)
}

fn run_friedrich_kath(p: &Point) -> Result<IdentityReport> {
    let f = frame(p)?;
    let mut rep = IdentityReport::default();
    for i in 1..=3 {
        for psi in &build_ei(&f, i).basis {
            rep.merge(verify_friedrich_kath_identity(&f, i, psi));
        }
    }
    Ok(rep)
}

fn run_projection_lemma(p: &Point) -> Result<IdentityReport> {
    let f = frame(p)?;
    let mut rep = IdentityReport::default();
    for i in 1..=3 {
        rep.merge(verify_projection_lemma(&f, i));
    }
    Ok(rep)
}

fn run_deformation_params(p: &Point) -> Result<IdentityReport> {
    let (al, de) = (&p.alpha, &p.delta);
    let dp = deformation_params(&int(1), &int(1), al, de)?;
    let mut rep = IdentityReport::default();
    rep.record(dp.constraints_hold(), || format!("constraints fail for {dp:?}"));
    rep.record(dp.deformed() == (al.clone(), de.clone()), || "deformation does not land on (α, δ)".into());
    rep.record(dp.a == int(1) / (al * de), || "a ≠ 1/(αδ)".into());
    rep.record(dp.c == int(1) / de, || "c ≠ 1/δ".into());
    Ok(rep)
}

fn run_parallel_deformation_params(p: &Point) -> Result<IdentityReport> {
    let (al, de) = (&p.alpha, &p.delta);
    let mut rep = IdentityReport::default();
    for a0 in [int(1), int(2), Rational::new(1.into(), 3.into())] {
        let d0 = int(2) * &a0;
        let dp = deformation_params(&a0, &d0, al, de)?;
        let two_a0_sq = int(2) * &a0 * &a0;
        let src = fmt_rational(&a0);
        rep.record(dp.a == &two_a0_sq / (al * de), || format!("α₀ = {src}: a ≠ 2α₀²/(αδ)"));
        rep.record(dp.b == &two_a0_sq * (int(2) * al - de) / (al * de * de), || format!("α₀ = {src}: b ≠ 2α₀²(2α−δ)/(αδ²)"));
        rep.record(dp.c == int(2) * &a0 / de, || format!("α₀ = {src}: c ≠ 2α₀/δ"));
        rep.record(dp.constraints_hold(), || format!("α₀ = {src}: constraints fail"));
        rep.record(dp.deformed() == (al.clone(), de.clone()), || format!("α₀ = {src}: lands elsewhere"));
    }
    Ok(rep)
}

fn run_sigma_isometry(p: &Point) -> Result<IdentityReport> {
    let def = Deformation::new(p.n(), &p.alpha, &p.delta)?;
    let mut rep = IdentityReport::default();
    rep.record(&def.root * &def.root == ExactScalar::real(&p.alpha * &p.delta), || "√(αδ)² ≠ αδ".into());
    let scales = def.sigma_scales();
    let delta = ExactScalar::real(p.delta.clone());
    for (j, s) in scales.iter().enumerate() {
        let want = if j < 3 { &delta } else { &def.root };
        rep.record(s == want, || format!("σ has the wrong scale on e_{}", j + 1));
    }
    rep.record(def.sigma_is_isometry(), || "σ is not an isometry onto g′".into());
    Ok(rep)
}

fn run_difference_tensor(p: &Point) -> Result<IdentityReport> {
    Ok(Deformation::new(p.n(), &p.alpha, &p.delta)?.check_difference_tensor())
}

// ---------------------------------------------------------------------------
// homogeneous model

fn run_calibration(p: &Point) -> Result<IdentityReport> {
    let m = HomogeneousModel::build_s7(&p.alpha, &p.delta)?;
    let mut rep = IdentityReport::default();
    absorb(&mut rep, m.check_lie_structure());
    absorb(&mut rep, m.check_calibration());
    let (al, de) = (&p.alpha, &p.delta);
    rep.record(m.lambda0 == int(-1) / (int(12) * de * de), || format!("λ₀ = {} ≠ −1/(12δ²)", fmt_rational(&m.lambda0)));
    rep.record(m.lambda1 == int(-1) / (int(24) * al * de), || format!("λ₁ = {} ≠ −1/(24αδ)", fmt_rational(&m.lambda1)));
    Ok(rep)
}

fn run_nomizu_lc(p: &Point) -> Result<IdentityReport> {
    Ok(homogeneous::verify_lc_maps(&*model(p)?))
}

fn run_nomizu_canonical(p: &Point) -> Result<IdentityReport> {
    Ok(homogeneous::verify_canonical_map(&*model(p)?))
}

fn run_lc_derivatives(p: &Point) -> Result<IdentityReport> {
    Ok(homogeneous::verify_lc_derivatives(&*model(p)?))
}

fn run_curvdifference(p: &Point) -> Result<IdentityReport> {
    Ok(homogeneous::verify_curvature_family(&*model(p)?, &[CurvatureFamily::Difference]))
}

fn run_twisted_curvature(p: &Point) -> Result<IdentityReport> {
    Ok(homogeneous::verify_curvature_family(&*model(p)?, &[CurvatureFamily::TwistedCurvature]))
}

fn run_twisted_torsion(p: &Point) -> Result<IdentityReport> {
    Ok(homogeneous::verify_curvature_family(&*model(p)?, &[CurvatureFamily::TwistedTorsion]))
}

fn run_lc_projections(p: &Point) -> Result<IdentityReport> {
    Ok(homogeneous::verify_curvature_family(&*model(p)?, &[CurvatureFamily::Projection]))
}

fn run_h_killing(p: &Point) -> Result<IdentityReport> {
    let m = model(p)?;
    let e = e_sum_basis(&m.frame);
    let mut rep = IdentityReport::default();
    for u in &e {
        rep.merge(homogeneous::verify_h_killing(&m, u)?);
    }
    rep.record(rank(&e) >= 2, || format!("E has rank {}", rank(&e)));
    let sols = homogeneous::h_killing_solutions(&m);
    for u in &e {
        rep.record(in_span(&sols, u), || format!("{u} missing from the invariant H-Killing solutions"));
    }
    Ok(rep)
}

fn run_deformed_killing(p: &Point) -> Result<IdentityReport> {
    homogeneous::verify_deformed_killing(&p.alpha, &p.delta)
}

fn run_flatness(p: &Point) -> Result<IdentityReport> {
    let m = model(p)?;
    let (mut rep, nonflat_elsewhere) = homogeneous::verify_modified_flatness(&m);
    let expect = p.alpha != p.delta;
    rep.record(nonflat_elsewhere == expect, || {
        if expect {
            "∇̂ is flat on all of Σ although α ≠ δ".into()
        } else {
            "∇̂ is not flat on Σ at α = δ".into()
        }
    });
    Ok(rep)
}

fn run_dirac_remark(p: &Point) -> Result<IdentityReport> {
    let m = model(p)?;
    let mut rep = IdentityReport::default();
    for u in e_sum_basis(&m.frame) {
        let lhs = homogeneous::dirac_on_invariant(&m, &u);
        rep.record(lhs == homogeneous::dirac_h_killing_formula(&m, &u), || format!("Dirac formula fails on {u}"));
    }
    Ok(rep)
}

fn auxiliary_family() -> Vec<Spinor> {
    let psi0 = homogeneous::canonical_spinor_unnormalized();
    let mut v = vec![psi0.clone()];
    v.extend((1..=3).map(|i| psi0.clifford_basis(i)));
    v
}

fn run_parallel_count(p: &Point) -> Result<IdentityReport> {
    let m = model(p)?;
    let sp = homogeneous::parallel_spinors(&m)?;
    let mut rep = IdentityReport::default();
    rep.record(sp.len() >= 2 * m.frame.n, || format!("only {} parallel invariant spinors", sp.len()));
    for (i, psi) in auxiliary_family().iter().enumerate() {
        rep.record(in_span(&sp, psi), || format!("ψ_{i} is not parallel"));
    }
    Ok(rep)
}

fn run_holonomy(p: &Point) -> Result<IdentityReport> {
    let m = model(p)?;
    let mut rep = IdentityReport::default();
    let mut ops = m.spin_nomizu(&m.nomizu_canonical());
    ops.extend(m.isotropy_spin());
    let kernel = joint_kernel(m.frame.n, &ops);
    let family = auxiliary_family();
    rep.record(in_span(&kernel, &family[0]), || "ψ₀ is not ∇-parallel".into());
    if !m.beta().is_zero() {
        for (i, psi) in family.iter().enumerate().skip(1) {
            rep.record(!in_span(&kernel, psi), || format!("ψ_{i} is parallel although β ≠ 0"));
        }
    }
    rep.merge(homogeneous::verify_auxiliary_derivatives(&m));
    Ok(rep)
}

// ---------------------------------------------------------------------------
// duality

fn run_dualize(p: &Point) -> Result<IdentityReport> {
    duality::verify_dual_structure(&dual_pair(p)?)
}

fn run_tau_isomorphism(_: &Point) -> Result<IdentityReport> {
    Ok(duality::tau_isomorphism_check())
}

fn run_graded_parts(p: &Point) -> Result<IdentityReport> {
    Ok(duality::verify_graded_parts(&*model(p)?))
}

fn run_dual_lc(p: &Point) -> Result<IdentityReport> {
    Ok(duality::verify_dual_lc(&dual_pair(p)?))
}

fn run_dual_canonical(p: &Point) -> Result<IdentityReport> {
    Ok(duality::verify_dual_canonical(&dual_pair(p)?))
}

fn run_dual_spin_lift(p: &Point) -> Result<IdentityReport> {
    Ok(duality::verify_dual_spin_lift(&dual_pair(p)?))
}

fn run_dual_spinors(p: &Point) -> Result<IdentityReport> {
    Ok(duality::verify_dual_spinors(&dual_pair(p)?))
}

// ---------------------------------------------------------------------------
// dimension 7

fn run_g2_canonical(p: &Point) -> Result<IdentityReport> {
    let pkg = dim7_package(p)?;
    let mut rep = IdentityReport::default();
    let spec = pkg.g2_spectrum();
    rep.record(spec == (1, 7), || format!("G₂ spectrum multiplicities {spec:?}"));
    let r2 = ExactScalar::sqrt2().inv()?;
    let expect = omega_spin(2).add(&Spinor::y(2, 1).scale(&ExactScalar::i())).scale(&r2);
    rep.record(pkg.psi[0] == expect, || format!("ψ₀ = {}", pkg.psi[0]));
    let op_psi = pkg.psi[0].clifford_form(&pkg.omega_g2);
    rep.record(op_psi == pkg.psi[0].scale(&ExactScalar::from_int(-7)), || "ω·ψ₀ ≠ −7ψ₀".into());
    for a in 0..4 {
        for b in 0..4 {
            let h = hermitian(&pkg.psi[a], &pkg.psi[b]);
            let want = if a == b { ExactScalar::one() } else { ExactScalar::zero() };
            rep.record(h == want, || format!("⟨ψ_{a}, ψ_{b}⟩ = {}", h.short()));
        }
    }
    Ok(rep)
}

fn run_phi_on_canonical(p: &Point) -> Result<IdentityReport> {
    Ok(dim7::verify_phi_on_canonical(&dim7_package(p)?))
}

fn run_phi_on_own_auxiliary(p: &Point) -> Result<IdentityReport> {
    Ok(dim7::verify_phi_on_own_auxiliary(&dim7_package(p)?))
}

fn run_phi_on_other_auxiliary(p: &Point) -> Result<IdentityReport> {
    Ok(dim7::verify_phi_on_other_auxiliary(&dim7_package(p)?))
}

fn run_canonical_relation(p: &Point) -> Result<IdentityReport> {
    Ok(dim7::verify_canonical_relation(&dim7_package(p)?))
}

fn run_equation_equivalence(p: &Point) -> Result<IdentityReport> {
    dim7::verify_equation_equivalence(&dim7_package(p)?)
}

fn run_generalized_killing(p: &Point) -> Result<IdentityReport> {
    Ok(dim7::verify_generalized_killing(&*model(p)?, &dim7_package(p)?))
}

fn run_dual_generalized_killing(p: &Point) -> Result<IdentityReport> {
    let dual = duality::dualize(&*model(p)?)?;
    let pkg = build_dim7(&p.alpha, &-&p.delta)?;
    Ok(dim7::verify_generalized_killing(&dual, &pkg))
}

fn run_dirac_friedrich(p: &Point) -> Result<IdentityReport> {
    Ok(dim7::verify_dirac_and_friedrich(&dim7_package(p)?, &*model(p)?))
}

// ---------------------------------------------------------------------------
// suite

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEntry {
    pub check_id: String,
    pub paper_ref: String,
    pub alpha: String,
    pub delta: String,
    pub dim: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checked: usize,
    pub violations: usize,
    pub witness: Vec<String>,
    /// Excluded from JSON so reports are byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: u32,
    pub summary: Summary,
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new(entries: Vec<ReportEntry>) -> Self {
        let mut summary = Summary { total: entries.len(), ..Summary::default() };
        for e in &entries {
            match e.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        Report { schema: "sasaki-verify-report", version: SCHEMA_VERSION, summary, entries }
    }

    pub fn any_failure(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = write!(out, "{tag} {:<40} α={:<5} δ={:<5} dim={:<2}", e.check_id, e.alpha, e.delta, e.dim);
            match e.status {
                Status::Skipped => {
                    let _ = writeln!(out, " ({})", e.reason.as_deref().unwrap_or(""));
                }
                _ => {
                    let _ = writeln!(out, " checked={} {:.1}ms", e.checked, e.wall_time.as_secs_f64() * 1e3);
                }
            }
            for w in &e.witness {
                let _ = writeln!(out, "    {w}");
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "{} entries: {} pass, {} fail, {} skipped", s.total, s.pass, s.fail, s.skipped);
        out
    }
}

pub fn default_grid() -> Vec<(Rational, Rational)> {
    let alphas: Vec<Rational> = DEFAULT_ALPHAS.iter().map(|s| parse_rational(s).expect("default grid")).collect();
    let deltas: Vec<Rational> = DEFAULT_DELTAS.iter().map(|s| parse_rational(s).expect("default grid")).collect();
    product_grid(&alphas, &deltas)
}

pub fn product_grid(alphas: &[Rational], deltas: &[Rational]) -> Vec<(Rational, Rational)> {
    alphas.iter().flat_map(|a| deltas.iter().map(move |d| (a.clone(), d.clone()))).collect()
}

/// Checks whose id matches the glob, in registry order.
pub fn select(filter: &str) -> Result<Vec<&'static CheckSpec>> {
    let pattern = glob::Pattern::new(filter).map_err(|e| Error::Parse(format!("filter {filter:?}: {e}")))?;
    let chosen: Vec<&CheckSpec> = REGISTRY.iter().filter(|c| pattern.matches(c.id)).collect();
    if chosen.is_empty() {
        return Err(Error::UnknownCheck(filter.to_string()));
    }
    Ok(chosen)
}

fn run_one(spec: &CheckSpec, p: &Point) -> ReportEntry {
    let mut entry = ReportEntry {
        check_id: spec.id.to_string(),
        paper_ref: spec.paper_ref.to_string(),
        alpha: fmt_rational(&p.alpha),
        delta: fmt_rational(&p.delta),
        dim: p.dim,
        status: Status::Skipped,
        reason: None,
        checked: 0,
        violations: 0,
        witness: Vec::new(),
        wall_time: Duration::ZERO,
    };
    if let Some(reason) = spec.skip_reason(p) {
        entry.reason = Some(reason.to_string());
        return entry;
    }
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| (spec.run)(p))
        .unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(Error::Failed(format!("panicked: {}", msg.unwrap_or_default())))
        });
    entry.wall_time = start.elapsed();
    match outcome {
        Ok(rep) => {
            entry.checked = rep.checked;
            entry.violations = rep.violations.len();
            entry.status = if rep.ok() { Status::Pass } else { Status::Fail };
            entry.witness = rep.violations.into_iter().take(MAX_WITNESSES).collect();
            if entry.violations > MAX_WITNESSES {
                entry.witness.push(format!("… and {} more", entry.violations - MAX_WITNESSES));
            }
        }
        Err(e) => {
            entry.status = Status::Fail;
            entry.violations = 1;
            entry.witness = vec![format!("error: {e}")];
        }
    }
    entry
}

/// Runs every selected check at every grid point and applicable dimension.
/// Entries are ordered by check id, then grid order, then dimension.
pub fn run_suite(filter: &str, grid: &[(Rational, Rational)], dims: &[usize]) -> Result<Vec<ReportEntry>> {
    if let Some(d) = dims.iter().find(|d| !ALL_DIMS.contains(d)) {
        return Err(Error::InvalidParameter(format!("dimension {d} not in {{7, 11, 15}}")));
    }
    let mut dims: Vec<usize> = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();
    let checks = select(filter)?;
    let mut tasks: Vec<(&CheckSpec, Point)> = Vec::new();
    for spec in checks {
        for (alpha, delta) in grid {
            for &dim in dims.iter().filter(|d| spec.dims.contains(d)) {
                tasks.push((spec, Point { alpha: alpha.clone(), delta: delta.clone(), dim }));
            }
        }
    }
    Ok(tasks.par_iter().map(|(spec, p)| run_one(spec, p)).collect())
}

/// One line per check: id, dimensions, constraints, reference.
pub fn list_checks() -> String {
    let mut out = String::new();
    for c in REGISTRY {
        let dims: Vec<String> = c.dims.iter().map(|d| d.to_string()).collect();
        let cons: Vec<&str> = c.constraints.iter().map(|k| k.label()).collect();
        let cons = if cons.is_empty() { "-".to_string() } else { cons.join(",") };
        let _ = writeln!(out, "{:<40} dims={:<8} [{}]\n    {}\n    ref: {}", c.id, dims.join(","), cons, c.description, c.paper_ref);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_unique() {
        let ids: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(ids, sorted);
        for c in REGISTRY {
            assert!(!c.paper_ref.is_empty() && !c.dims.is_empty(), "{}", c.id);
        }
    }

    #[test]
    fn every_in_scope_reference_is_covered() {
        for r in IN_SCOPE_REFS {
            assert!(REGISTRY.iter().any(|c| c.paper_ref.contains(r)), "no check cites {r}");
        }
    }

    #[test]
    fn lemma_suite_has_four_entries() {
        let grid = vec![(int(1), int(1))];
        let out = run_suite("lemma6.3.*", &grid, &ALL_DIMS).unwrap();
        assert_eq!(out.len(), 4);
        assert!(out.iter().all(|e| e.status == Status::Pass), "{out:?}");
    }

    #[test]
    fn zero_delta_skips_derivative_checks() {
        let grid = vec![(int(1), int(0))];
        let out = run_suite("*", &grid, &[7]).unwrap();
        for e in &out {
            let spec = find(&e.check_id).unwrap();
            if spec.constraints.contains(&DeltaNonZero) {
                assert_eq!(e.status, Status::Skipped, "{}", e.check_id);
                assert_eq!(e.reason.as_deref(), Some("δ=0 excluded"));
            } else {
                assert_eq!(e.status, Status::Pass, "{}: {:?}", e.check_id, e.witness);
            }
        }
    }

    #[test]
    fn deformation_gating() {
        let grid = vec![(int(1), int(4)), (int(4), int(1)), (int(1), int(1))];
        let out = run_suite("thm3.6.*", &grid, &[7]).unwrap();
        assert!(out.iter().all(|e| e.status == Status::Pass), "{out:?}");
        let out = run_suite("thm3.6.*", &[(int(2), int(3))], &[7]).unwrap();
        assert_eq!(out[0].status, Status::Skipped);
        assert_eq!(out[0].reason.as_deref(), Some("αδ not a rational square"));
    }

    #[test]
    fn unknown_filter_and_bad_dims() {
        assert!(matches!(select("no.such.check"), Err(Error::UnknownCheck(_))));
        assert!(run_suite("*", &[(int(1), int(1))], &[9]).is_err());
    }
}
