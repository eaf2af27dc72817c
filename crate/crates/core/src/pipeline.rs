//! End-to-end pipeline: realize a variety descriptor, compute its graded
//! pieces, tangency algebra, prolongations and vertex locus, run the
//! structural checks, and assemble a deterministic report. Also drives the
//! census over computed models and carries the audit table of expected
//! values.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::census::{
    self, bound_autocone, CensusRanges, ExpectedRelation, FlatModel, IhssReport, MainTableInput,
    MainTableReport, ProjectionCasesReport, ProlongEqualityReport,
};
use crate::error::Error;
use crate::geometry;
use crate::ideal::{forms_vanishing, GradedPiece};
use crate::lie::{self, LinearLieAlgebra};
use crate::matrix::MatrixQ;
use crate::scalar::{self, Scalar};
use crate::varieties::{self, Parametrization, ProjectionCenter, VarietyDescriptor};

const JACOBIAN_SEED: u64 = 17;
const TANGENCY_SEED: u64 = 2024;

#[derive(Debug, Clone)]
pub struct ComputeOptions {
    /// Ideal degrees beyond 2 to feed into the tangency solve.
    pub extra_degrees: Vec<usize>,
    /// Highest prolongation order to compute (0 skips prolongations).
    pub max_prolong: usize,
    /// Sample points for the tangency cross-validation.
    pub check_points: usize,
    /// Re-seeding budget for general sections.
    pub max_retries: u32,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions {
            extra_degrees: Vec::new(),
            max_prolong: 2,
            check_points: 20,
            max_retries: 5,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Checks {
    pub identity_in: bool,
    pub bracket_closed: bool,
    pub tangency_ok: Option<bool>,
    pub nondegenerate: Option<bool>,
    pub nondegeneracy_method: String,
    pub cone_weights_ok: Option<bool>,
    pub center_rank_ok: Option<bool>,
    pub prolong_1_within_ambient: bool,
    pub within_symmetry_bound: Option<bool>,
}

impl Checks {
    pub fn all_ok(&self) -> bool {
        self.identity_in
            && self.bracket_closed
            && self.tangency_ok.unwrap_or(true)
            && self.nondegenerate.unwrap_or(true)
            && self.cone_weights_ok.unwrap_or(true)
            && self.center_rank_ok.unwrap_or(true)
            && self.prolong_1_within_ambient
            && self.within_symmetry_bound.unwrap_or(true)
    }
}

/// Full report for one variety; serializes deterministically.
#[derive(Debug, Clone, Serialize)]
pub struct VarietyReport {
    pub variety: String,
    pub descriptor: VarietyDescriptor,
    pub ambient_dim: usize,
    pub variety_projective_dim: Option<usize>,
    pub codim: Option<usize>,
    pub ideal_dims: BTreeMap<String, usize>,
    pub dim_aut: usize,
    pub projective_aut_dim: usize,
    pub dim_prolong_1: usize,
    pub dim_prolong_2: usize,
    pub vertex_affine_dim: usize,
    pub vertex_projective_dim: i64,
    pub symmetry_bound: Option<i64>,
    pub seed: Option<u64>,
    pub seed_used: Option<u64>,
    pub attempts: Option<Vec<u64>>,
    pub checks: Checks,
}

/// A realized variety: an optional parametrization plus its degree-2 piece.
pub struct Model {
    pub label: String,
    pub descriptor: VarietyDescriptor,
    pub ambient_dim: usize,
    pub param: Option<Parametrization>,
    pub quadrics: GradedPiece,
    pub variety_projective_dim: Option<usize>,
    pub linear_dim: Option<usize>,
    pub nondegenerate: Option<bool>,
    pub nondegeneracy_method: String,
    pub center_rank_ok: Option<bool>,
    pub seed: Option<u64>,
    pub seed_used: Option<u64>,
    pub attempts: Option<Vec<u64>>,
}

fn parametrized(descriptor: &VarietyDescriptor) -> Result<Option<Parametrization>, Error> {
    Ok(match descriptor {
        VarietyDescriptor::Segre { params: [a, b] } => Some(varieties::segre(*a, *b)?),
        VarietyDescriptor::Veronese { params: [r, d] } => Some(varieties::veronese(*r, *d)?),
        VarietyDescriptor::Pluecker { params: [a, r] } => Some(varieties::pluecker(*a, *r)?),
        VarietyDescriptor::SymplVmrt { params: [k, m] } => Some(varieties::sympl_vmrt(*k, *m)?),
        VarietyDescriptor::Spinor10 => Some(varieties::spinor10()?),
        VarietyDescriptor::ConeOver { of, params: [t] } => {
            let base = parametrized(of)?.ok_or_else(|| {
                Error::InvalidParameter("cone_over requires a parametrized base".into())
            })?;
            Some(varieties::cone_over(&base, *t)?)
        }
        _ => None,
    })
}

/// Generic projective dimension of the image, from the Jacobian rank at
/// deterministic sample points.
fn image_projective_dim(p: &Parametrization) -> Result<usize, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(JACOBIAN_SEED);
    let mut best = 0usize;
    for _ in 0..3 {
        let params: Vec<Scalar> = (0..p.param_count)
            .map(|_| scalar::random_int_scalar(&mut rng, 7, false))
            .collect();
        best = best.max(p.jacobian_at(&params)?.rank());
    }
    Ok(best - 1)
}

fn center_vectors(
    of: &VarietyDescriptor,
    center: &ProjectionCenter,
    ambient: usize,
) -> Result<Vec<Vec<Scalar>>, Error> {
    match center {
        ProjectionCenter::Rank(k) => match of {
            VarietyDescriptor::Segre { params: [a, b] } => {
                if *k == 0 || k > a.min(b) {
                    return Err(Error::InvalidParameter(format!(
                        "rank-{k} center needs 1 <= k <= min({a},{b})"
                    )));
                }
                let mut v = vec![scalar::zero(); ambient];
                for i in 0..*k {
                    v[i * b + i] = scalar::one();
                }
                Ok(vec![v])
            }
            _ => Err(Error::InvalidParameter(
                "rank-style centers are defined for segre sources only".into(),
            )),
        },
        ProjectionCenter::Vectors(vs) => {
            if vs.is_empty() {
                return Err(Error::EmptyInput("projection center"));
            }
            vs.iter()
                .map(|v| {
                    if v.len() != ambient {
                        return Err(Error::DimensionMismatch {
                            context: "projection center",
                            left: ambient,
                            right: v.len(),
                        });
                    }
                    Ok(v.iter().map(|x| scalar::int(*x)).collect())
                })
                .collect()
        }
    }
}

/// Necessary rank condition for a biregular projection: center elements of
/// a Segre must have matrix rank at least 3, of a Pluecker at least 5.
fn center_rank_check(of: &VarietyDescriptor, vectors: &[Vec<Scalar>]) -> Option<bool> {
    match of {
        VarietyDescriptor::Segre { params: [a, b] } => {
            let ok = vectors.iter().all(|v| {
                let mut m = MatrixQ::zero(*a, *b);
                for i in 0..*a {
                    for j in 0..*b {
                        let x = &v[i * b + j];
                        if !num_traits::Zero::is_zero(x) {
                            m.set(i, j, x.clone());
                        }
                    }
                }
                m.rank() >= 3
            });
            Some(ok)
        }
        VarietyDescriptor::Pluecker { params: [a, r] } if *a == 2 => {
            let subsets: Vec<(usize, usize)> = (0..*r)
                .flat_map(|i| ((i + 1)..*r).map(move |j| (i, j)))
                .collect();
            let ok = vectors.iter().all(|v| {
                let mut m = MatrixQ::zero(*r, *r);
                for (idx, (i, j)) in subsets.iter().enumerate() {
                    let x = &v[idx];
                    if !num_traits::Zero::is_zero(x) {
                        m.set(*i, *j, x.clone());
                        m.set(*j, *i, -x.clone());
                    }
                }
                m.rank() >= 5
            });
            Some(ok)
        }
        _ => None,
    }
}

/// Builds the model for a descriptor: parametrization (when one exists) and
/// the degree-2 piece of its ideal.
pub fn realize(descriptor: &VarietyDescriptor, max_retries: u32) -> Result<Model, Error> {
    match descriptor {
        VarietyDescriptor::Quadric { params: [n] } => {
            let form = varieties::quadric_form(*n)?;
            let quadrics = GradedPiece::from_polynomials(*n, 2, &[form])?;
            Ok(Model {
                label: descriptor.label(),
                descriptor: descriptor.clone(),
                ambient_dim: *n,
                param: None,
                quadrics,
                variety_projective_dim: Some(n - 2),
                linear_dim: None,
                nondegenerate: Some(true),
                nondegeneracy_method: "full-rank quadric".into(),
                center_rank_ok: None,
                seed: None,
                seed_used: None,
                attempts: None,
            })
        }
        VarietyDescriptor::Section { of, seed, codim } => {
            let parent = realize(of, max_retries)?;
            if parent.quadrics.is_empty() {
                return Err(Error::TrivialPieces);
            }
            let outcome =
                geometry::general_section(&parent.quadrics, *seed, *codim, max_retries)?;
            Ok(Model {
                label: descriptor.label(),
                descriptor: descriptor.clone(),
                ambient_dim: parent.ambient_dim - codim,
                param: None,
                quadrics: outcome.piece,
                variety_projective_dim: parent
                    .variety_projective_dim
                    .map(|d| d.saturating_sub(*codim)),
                linear_dim: None,
                nondegenerate: Some(true),
                nondegeneracy_method: "restricted pieces, necessary condition only".into(),
                center_rank_ok: None,
                seed: Some(*seed),
                seed_used: Some(outcome.seed_used),
                attempts: Some(outcome.attempts),
            })
        }
        VarietyDescriptor::Projection { of, center } => {
            let base = parametrized(of)?.ok_or_else(|| {
                Error::InvalidParameter("projection requires a parametrized source".into())
            })?;
            let vectors = center_vectors(of, center, base.ambient_dim)?;
            let rank_ok = center_rank_check(of, &vectors);
            let projected = geometry::project(&base, &vectors)?;
            let linear = forms_vanishing(&projected, 1)?;
            let quadrics = forms_vanishing(&projected, 2)?;
            Ok(Model {
                label: descriptor.label(),
                descriptor: descriptor.clone(),
                ambient_dim: projected.ambient_dim,
                variety_projective_dim: Some(image_projective_dim(&projected)?),
                linear_dim: Some(linear.dim()),
                nondegenerate: Some(linear.dim() == 0),
                nondegeneracy_method: "kernel of pullback in degree 1".into(),
                param: Some(projected),
                quadrics,
                center_rank_ok: rank_ok,
                seed: None,
                seed_used: None,
                attempts: None,
            })
        }
        _ => {
            let p = parametrized(descriptor)?.expect("non-parametrized kinds handled above");
            let linear = forms_vanishing(&p, 1)?;
            let quadrics = forms_vanishing(&p, 2)?;
            Ok(Model {
                label: descriptor.label(),
                descriptor: descriptor.clone(),
                ambient_dim: p.ambient_dim,
                variety_projective_dim: Some(image_projective_dim(&p)?),
                linear_dim: Some(linear.dim()),
                nondegenerate: Some(linear.dim() == 0),
                nondegeneracy_method: "kernel of pullback in degree 1".into(),
                param: Some(p),
                quadrics,
                center_rank_ok: None,
                seed: None,
                seed_used: None,
                attempts: None,
            })
        }
    }
}

/// Runs the full pipeline for one descriptor.
pub fn run_compute(
    descriptor: &VarietyDescriptor,
    options: &ComputeOptions,
) -> Result<VarietyReport, Error> {
    let model = realize(descriptor, options.max_retries)?;
    let mut pieces = vec![model.quadrics.clone()];
    for d in &options.extra_degrees {
        if *d == 2 {
            continue;
        }
        let p = model.param.as_ref().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "degree-{d} piece requires a parametrized variety"
            ))
        })?;
        pieces.push(forms_vanishing(p, *d)?);
    }

    let mut ideal_dims = BTreeMap::new();
    if let Some(linear) = model.linear_dim {
        ideal_dims.insert("1".to_string(), linear);
    }
    for piece in &pieces {
        ideal_dims.insert(piece.degree.to_string(), piece.dim());
    }

    let alg = lie::aut_cone_labeled(&pieces, &model.label)?;
    let dim_aut = alg.dim();
    let projective_aut_dim = lie::projective_dim(&alg)?;

    let (dim_prolong_1, dim_prolong_2) = if options.max_prolong >= 1 {
        let tower = lie::prolongation_tower(&alg, options.max_prolong.max(1))?;
        let p1 = tower[0].dim();
        let p2 = tower.get(1).map_or(0, |s| s.dim());
        (p1, p2)
    } else {
        (0, 0)
    };

    let vertex = geometry::cone_vertex_space(&pieces)?;
    let vertex_affine_dim = vertex.len();
    let vertex_projective_dim = vertex_affine_dim as i64 - 1;

    let identity_in = alg.contains_identity();
    let bracket_closed = alg.is_bracket_closed()?;
    let tangency_ok = match &model.param {
        Some(p) => {
            let mut rng = ChaCha8Rng::seed_from_u64(TANGENCY_SEED);
            Some(lie::tangency_cross_validation(&alg, p, options.check_points, &mut rng)?)
        }
        None => None,
    };
    let cone_weights_ok = model.param.as_ref().map(Parametrization::cone_weights_consistent);

    let (codim, symmetry_bound) = match model.variety_projective_dim {
        Some(dim_x) => {
            let n = model.ambient_dim as i64 - 1;
            let c = n - dim_x as i64;
            let bound = bound_autocone(n, c, vertex_projective_dim).ok();
            (Some(c as usize), bound)
        }
        None => (None, None),
    };
    let within_symmetry_bound = symmetry_bound.map(|b| projective_aut_dim as i64 <= b);

    let checks = Checks {
        identity_in,
        bracket_closed,
        tangency_ok,
        nondegenerate: model.nondegenerate,
        nondegeneracy_method: model.nondegeneracy_method.clone(),
        cone_weights_ok,
        center_rank_ok: model.center_rank_ok,
        prolong_1_within_ambient: dim_prolong_1 <= model.ambient_dim,
        within_symmetry_bound,
    };

    Ok(VarietyReport {
        variety: model.label,
        descriptor: model.descriptor,
        ambient_dim: model.ambient_dim,
        variety_projective_dim: model.variety_projective_dim,
        codim,
        ideal_dims,
        dim_aut,
        projective_aut_dim,
        dim_prolong_1,
        dim_prolong_2,
        vertex_affine_dim,
        vertex_projective_dim,
        symmetry_bound,
        seed: model.seed,
        seed_used: model.seed_used,
        attempts: model.attempts,
        checks,
    })
}

/// Convenience wrapper: the tangency algebra of a realized descriptor.
pub fn algebra_for(descriptor: &VarietyDescriptor) -> Result<LinearLieAlgebra, Error> {
    let model = realize(descriptor, 5)?;
    lie::aut_cone_labeled(std::slice::from_ref(&model.quadrics), &model.label)
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub ranges: CensusRanges,
    pub with_prolong_equality: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            ranges: CensusRanges::default(),
            with_prolong_equality: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusSummary {
    pub ihss: IhssReport,
    pub projection_cases: ProjectionCasesReport,
    pub main_table: MainTableReport,
    pub prolong_equality: Option<ProlongEqualityReport>,
    pub violations: Vec<String>,
}

fn quick_dims(descriptor: &VarietyDescriptor) -> Result<(usize, usize), Error> {
    let options = ComputeOptions {
        max_prolong: 1,
        check_points: 0,
        ..ComputeOptions::default()
    };
    let report = run_compute(descriptor, &options)?;
    Ok((report.dim_aut, report.dim_prolong_1))
}

/// The standard locally flat models with their computed dimensions.
pub fn flat_model_dims() -> Result<Vec<(FlatModel, usize, usize)>, Error> {
    let mut out = Vec::new();
    for n in 4..=8 {
        let (aut, p1) = quick_dims(&VarietyDescriptor::Quadric { params: [n] })?;
        out.push((FlatModel::QuadricCone { n }, aut, p1));
    }
    for (a, b) in [(2, 2), (2, 3), (3, 3)] {
        let (aut, p1) = quick_dims(&VarietyDescriptor::Segre { params: [a, b] })?;
        out.push((FlatModel::Grassmannian { a, b }, aut, p1));
    }
    for r in 2..=4 {
        let (aut, p1) = quick_dims(&VarietyDescriptor::Veronese { params: [r, 2] })?;
        out.push((FlatModel::LagrangianGrassmannian { r }, aut, p1));
    }
    for r in 4..=6 {
        let (aut, p1) = quick_dims(&VarietyDescriptor::Pluecker { params: [2, r] })?;
        out.push((FlatModel::SpinorVariety { r }, aut, p1));
    }
    for (k, m) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let (aut, p1) = quick_dims(&VarietyDescriptor::SymplVmrt { params: [k, m] })?;
        out.push((FlatModel::SymplecticGrassmannian { k, m }, aut, p1));
    }
    Ok(out)
}

/// Runs the census: the closed-form range checks always, the classification
/// table from freshly computed small models, and optionally the flatness
/// equality over the full model list.
pub fn run_census(options: &CensusOptions) -> Result<CensusSummary, Error> {
    let ihss = census::check_lemma_ihss(&options.ranges);
    let projection_cases = census::check_pmain_projection_cases(&options.ranges);

    let (q_aut, q_p1) = quick_dims(&VarietyDescriptor::Quadric { params: [6] })?;
    let (s_aut, s_p1) = quick_dims(&VarietyDescriptor::Segre { params: [2, 3] })?;
    let (v_aut, v_p1) = quick_dims(&VarietyDescriptor::Veronese { params: [3, 2] })?;
    let (y_aut, y_p1) = quick_dims(&VarietyDescriptor::SymplVmrt { params: [2, 1] })?;
    let main_table = census::main_theorem_table(&[
        MainTableInput {
            model: "quadric(6)".into(),
            n: 6,
            dim_aut: q_aut,
            dim_prolong_1: q_p1,
            expected: ExpectedRelation::Strict,
            recovered: "hyperquadric Q^6".into(),
        },
        MainTableInput {
            model: "segre(2,3)".into(),
            n: 6,
            dim_aut: s_aut,
            dim_prolong_1: s_p1,
            expected: ExpectedRelation::Strict,
            recovered: "Gr(2,5)".into(),
        },
        MainTableInput {
            model: "veronese(3,2)".into(),
            n: 6,
            dim_aut: v_aut,
            dim_prolong_1: v_p1,
            expected: ExpectedRelation::Equality,
            recovered: "Lag(6)".into(),
        },
        MainTableInput {
            model: "sympl_vmrt(2,1)".into(),
            n: 5,
            dim_aut: y_aut,
            dim_prolong_1: y_p1,
            expected: ExpectedRelation::Equality,
            recovered: "general hyperplane section of Gr(2,5)".into(),
        },
    ])?;

    let prolong_equality = if options.with_prolong_equality {
        Some(census::prolong_equality_report(&flat_model_dims()?)?)
    } else {
        None
    };

    let mut violations: Vec<String> = Vec::new();
    violations.extend(ihss.violations.iter().cloned());
    violations.extend(projection_cases.violations.iter().cloned());
    violations.extend(main_table.violations.iter().cloned());
    if let Some(pe) = &prolong_equality {
        violations.extend(pe.violations.iter().cloned());
    }

    Ok(CensusSummary {
        ihss,
        projection_cases,
        main_table,
        prolong_equality,
        violations,
    })
}

/// One expected value with the mathematical fact it comes from; dumped by
/// the audit flag.
#[derive(Debug, Clone, Serialize)]
pub struct Fixture {
    pub model: String,
    pub quantity: String,
    pub expected: i64,
    pub source: String,
}

/// The audit table of pinned expected values.
pub fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    let mut push = |model: &str, quantity: &str, expected: i64, source: &str| {
        out.push(Fixture {
            model: model.into(),
            quantity: quantity.into(),
            expected,
            source: source.into(),
        });
    };
    for n in 4..=8i64 {
        push(
            &format!("quadric({n})"),
            "dim_aut",
            n * (n - 1) / 2 + 1,
            "orthogonal algebra of the form plus scalars",
        );
        push(
            &format!("quadric({n})"),
            "dim_prolong_1",
            n,
            "first prolongation of the conformal algebra is the dual space",
        );
    }
    for (a, b) in [(2i64, 2i64), (2, 3), (3, 3)] {
        push(
            &format!("segre({a},{b})"),
            "dim_aut",
            a * a + b * b - 1,
            "gl(A) + gl(B) acting on A tensor B, scalars glued",
        );
        push(
            &format!("segre({a},{b})"),
            "dim_prolong_1",
            a * b,
            "flatness equality against the Grassmannian symmetry count",
        );
    }
    for r in 2..=4i64 {
        push(
            &format!("veronese({r},2)"),
            "dim_aut",
            r * r,
            "gl(W) acting on Sym^2 W",
        );
        push(
            &format!("veronese({r},2)"),
            "dim_prolong_1",
            r * (r + 1) / 2,
            "flatness equality against the Lagrangian-Grassmannian count",
        );
    }
    for r in 4..=6i64 {
        push(
            &format!("pluecker(2,{r})"),
            "dim_aut",
            r * r,
            "gl(W) acting on wedge^2 W",
        );
        push(
            &format!("pluecker(2,{r})"),
            "dim_prolong_1",
            r * (r - 1) / 2,
            "flatness equality against the spinor-variety symmetry count",
        );
    }
    for (k, m) in [(2i64, 1i64), (2, 2), (3, 1), (3, 2)] {
        push(
            &format!("sympl_vmrt({k},{m})"),
            "dim_aut",
            m * m + k * k + k * m,
            "semidirect count (W* tensor Q) + gl(W) + gl(Q)",
        );
        push(
            &format!("sympl_vmrt({k},{m})"),
            "dim_prolong_1",
            k * (k + 1) / 2,
            "first prolongation is Sym^2 W*",
        );
    }
    push(
        "any model above",
        "dim_prolong_2",
        0,
        "second prolongation vanishes for smooth non-degenerate cone models",
    );
    push(
        "section(pluecker(2,5),codim=1)",
        "dim_aut",
        16,
        "hyperplane section of the Pluecker Gr(2,5)",
    );
    push(
        "section(pluecker(2,5),codim=1)",
        "dim_prolong_1",
        5,
        "hyperplane section of the Pluecker Gr(2,5)",
    );
    push(
        "section(pluecker(2,5),codim=2)",
        "dim_aut",
        9,
        "codimension-2 linear section of the Pluecker Gr(2,5)",
    );
    push(
        "section(pluecker(2,5),codim=2)",
        "dim_prolong_1",
        1,
        "codimension-2 linear section of the Pluecker Gr(2,5)",
    );
    push(
        "section(segre(2,3),codim=1)",
        "dim_aut",
        7,
        "projectively the symplectic model sympl_vmrt(2,1)",
    );
    push(
        "section(segre(2,3),codim=1)",
        "dim_prolong_1",
        3,
        "projectively the symplectic model sympl_vmrt(2,1)",
    );
    push(
        "spinor10",
        "dim_aut",
        46,
        "so(10) plus scalars",
    );
    push(
        "spinor10",
        "dim_prolong_1",
        16,
        "flatness equality against the Cayley-plane symmetry count",
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compute_report_for_segre_2_3() {
        let report = run_compute(
            &VarietyDescriptor::Segre { params: [2, 3] },
            &ComputeOptions::default(),
        )
        .unwrap();
        assert_eq!(report.dim_aut, 12);
        assert_eq!(report.dim_prolong_1, 6);
        assert_eq!(report.dim_prolong_2, 0);
        assert_eq!(report.vertex_affine_dim, 0);
        assert_eq!(report.variety_projective_dim, Some(3));
        assert_eq!(report.codim, Some(2));
        assert_eq!(report.ideal_dims.get("2"), Some(&3));
        assert!(report.checks.all_ok());
    }

    #[test]
    fn compute_report_for_quadric_6() {
        let report = run_compute(
            &VarietyDescriptor::Quadric { params: [6] },
            &ComputeOptions::default(),
        )
        .unwrap();
        assert_eq!(report.dim_aut, 16);
        assert_eq!(report.dim_prolong_1, 6);
        assert_eq!(report.dim_prolong_2, 0);
        assert!(report.checks.tangency_ok.is_none());
        assert!(report.checks.all_ok());
    }

    #[test]
    fn report_json_is_deterministic() {
        let d = VarietyDescriptor::Section {
            of: Box::new(VarietyDescriptor::Segre { params: [2, 3] }),
            seed: 7,
            codim: 1,
        };
        let opts = ComputeOptions::default();
        let a = serde_json::to_string(&run_compute(&d, &opts).unwrap()).unwrap();
        let b = serde_json::to_string(&run_compute(&d, &opts).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn census_default_is_clean() {
        let summary = run_census(&CensusOptions::default()).unwrap();
        assert!(summary.violations.is_empty(), "{:?}", summary.violations);
        assert_eq!(summary.main_table.rows.len(), 4);
    }

    #[test]
    fn fixtures_include_key_values() {
        let all = fixtures();
        let find = |model: &str, quantity: &str| {
            all.iter()
                .find(|f| f.model == model && f.quantity == quantity)
                .map(|f| f.expected)
        };
        assert_eq!(find("segre(2,3)", "dim_aut"), Some(12));
        assert_eq!(find("sympl_vmrt(2,1)", "dim_prolong_1"), Some(3));
        assert_eq!(find("spinor10", "dim_aut"), Some(46));
    }

    #[test]
    fn rank_two_projection_center_is_flagged_and_pieces_vanish() {
        let d = VarietyDescriptor::Projection {
            of: Box::new(VarietyDescriptor::Segre { params: [2, 2] }),
            center: ProjectionCenter::Rank(2),
        };
        let model = realize(&d, 5).unwrap();
        assert_eq!(model.center_rank_ok, Some(false));
        assert_eq!(model.quadrics.dim(), 0);
        assert!(matches!(
            run_compute(&d, &ComputeOptions::default()),
            Err(Error::TrivialPieces)
        ));
    }
}
