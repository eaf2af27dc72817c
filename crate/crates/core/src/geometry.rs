//! Cone-vertex detection, hyperplane sections, and linear projections.
//!
//! Sections carry a caveat: the degree-2 piece of a section is taken to be
//! the restriction of the degree-2 piece upstairs, which can undersell the
//! full ideal; every seeded section therefore runs necessary-condition
//! checks (dimension drop, restricted degeneracy, restricted vertex) and
//! re-seeds on failure.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::ideal::GradedPiece;
use crate::lie::span_constraint_rows;
use crate::matrix::{MatrixQ, RowReducer};
use crate::poly::{MonomialBasis, Polynomial};
use crate::scalar::{self, Scalar};
use crate::varieties::Parametrization;

/// Basis of the directions `p` such that the directional derivative of every
/// supplied form lies in the supplied piece one degree lower (the zero space
/// when absent). The result is a kernel, hence a linear subspace; for
/// quadratically generated cones it is the affine vertex locus.
pub fn cone_vertex_space(pieces: &[GradedPiece]) -> Result<Vec<Vec<Scalar>>, Error> {
    if pieces.is_empty() {
        return Err(Error::EmptyInput("graded pieces"));
    }
    let n = pieces[0].ambient_dim;
    let mut reducer = RowReducer::new(n);
    for piece in pieces {
        if piece.is_empty() || piece.degree == 0 {
            continue;
        }
        let lower = pieces
            .iter()
            .find(|p| p.degree == piece.degree - 1)
            .cloned()
            .unwrap_or_else(|| GradedPiece::empty(n, piece.degree - 1));
        let target = MonomialBasis::new(n, piece.degree - 1);
        for f in piece.polynomials() {
            let mut columns = vec![vec![Scalar::zero(); target.len()]; n];
            for (i, col) in columns.iter_mut().enumerate() {
                let fi = f.partial(i)?;
                for (m, c) in fi.terms() {
                    col[target.index_of(m).expect("degree matches")] = c.clone();
                }
            }
            for row in span_constraint_rows(&columns, &lower) {
                reducer.add_row_sparse(&row);
            }
        }
    }
    Ok(reducer.kernel_basis())
}

/// Restriction of a graded piece to the hyperplane `h = 0`: the coordinate
/// with the largest index among nonzero `h`-coefficients is eliminated by
/// substitution and the remaining coordinates are reindexed.
pub fn hyperplane_section(piece: &GradedPiece, h: &[Scalar]) -> Result<GradedPiece, Error> {
    let n = piece.ambient_dim;
    if h.len() != n {
        return Err(Error::DimensionMismatch {
            context: "hyperplane section",
            left: n,
            right: h.len(),
        });
    }
    let Some(k) = (0..n).rev().find(|i| !h[*i].is_zero()) else {
        return Err(Error::InvalidParameter("zero linear form".into()));
    };
    // x_k = -(1/h_k) * sum_{i != k} h_i x_i
    let mut replacement = Polynomial::zero(n);
    for i in 0..n {
        if i == k || h[i].is_zero() {
            continue;
        }
        replacement.add_term(
            crate::poly::Monomial::var(n, i),
            -(&h[i] / &h[k]),
        );
    }
    let restricted: Vec<Polynomial> = piece
        .polynomials()
        .iter()
        .map(|f| f.eliminate_var(k, &replacement))
        .collect::<Result<_, _>>()?;
    GradedPiece::from_polynomials(n - 1, piece.degree, &restricted)
}

/// Seeded random linear form with small integer coefficients.
pub fn seeded_linear_form(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Scalar> {
    loop {
        let h: Vec<Scalar> = (0..dim)
            .map(|_| scalar::int(rng.gen_range(-3..=3)))
            .collect();
        if h.iter().any(|c| !c.is_zero()) {
            return h;
        }
    }
}

/// Linear forms `l` on the section ambient with `l * x_i` in the span of the
/// restricted piece for every coordinate. A nonzero solution means the
/// restricted quadrics already certify the section lies in a hyperplane;
/// the converse need not hold (necessary condition only).
pub fn restricted_degeneracy_space(piece: &GradedPiece) -> Result<Vec<Vec<Scalar>>, Error> {
    let n = piece.ambient_dim;
    if piece.degree != 2 {
        return Err(Error::InvalidParameter(
            "degeneracy proxy expects a degree-2 piece".into(),
        ));
    }
    let target = piece.monomial_basis();
    let mut reducer = RowReducer::new(n);
    for i in 0..n {
        // Map l -> l * x_i, with column j the vector of x_j x_i.
        let mut columns = vec![vec![Scalar::zero(); target.len()]; n];
        for (j, col) in columns.iter_mut().enumerate() {
            let m = crate::poly::Monomial::var(n, j).times_var(i);
            col[target.index_of(&m).unwrap()] = scalar::one();
        }
        for row in span_constraint_rows(&columns, piece) {
            reducer.add_row_sparse(&row);
        }
    }
    Ok(reducer.kernel_basis())
}

/// Why a seeded section attempt was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SectionIssue {
    DimensionDropped { before: usize, after: usize },
    RestrictedDegenerate,
    RestrictedVertex { dim: usize },
}

/// Checks a restricted piece for the necessary-condition genericity flags.
pub fn section_genericity_issues(
    before: &GradedPiece,
    after: &GradedPiece,
) -> Result<Vec<SectionIssue>, Error> {
    let mut issues = Vec::new();
    if after.dim() < before.dim() {
        issues.push(SectionIssue::DimensionDropped {
            before: before.dim(),
            after: after.dim(),
        });
    }
    if !restricted_degeneracy_space(after)?.is_empty() {
        issues.push(SectionIssue::RestrictedDegenerate);
    }
    let vertex = cone_vertex_space(std::slice::from_ref(after))?;
    if !vertex.is_empty() {
        issues.push(SectionIssue::RestrictedVertex { dim: vertex.len() });
    }
    Ok(issues)
}

/// Outcome of a seeded general section.
pub struct SectionOutcome {
    pub piece: GradedPiece,
    pub seed_used: u64,
    pub attempts: Vec<u64>,
}

/// Cuts `codim` seeded general hyperplane sections, re-seeding up to
/// `max_retries` times when a genericity check fails. The successful seed
/// and all attempted seeds are reported.
pub fn general_section(
    piece: &GradedPiece,
    base_seed: u64,
    codim: usize,
    max_retries: u32,
) -> Result<SectionOutcome, Error> {
    if codim == 0 || codim >= piece.ambient_dim {
        return Err(Error::InvalidParameter(format!(
            "section codimension must be between 1 and {}",
            piece.ambient_dim - 1
        )));
    }
    let mut attempts = Vec::new();
    for attempt in 0..=max_retries {
        let seed = base_seed.wrapping_add(attempt as u64);
        attempts.push(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut current = piece.clone();
        let mut ok = true;
        for _ in 0..codim {
            let h = seeded_linear_form(&mut rng, current.ambient_dim);
            let next = hyperplane_section(&current, &h)?;
            if !section_genericity_issues(&current, &next)?.is_empty() {
                ok = false;
                break;
            }
            current = next;
        }
        if ok {
            return Ok(SectionOutcome {
                piece: current,
                seed_used: seed,
                attempts,
            });
        }
    }
    Err(Error::NonGeneralSeed {
        attempts: max_retries + 1,
        seeds: attempts,
    })
}

/// Linear projection of a parametrized cone away from the span of `L`:
/// the span is echelonized, its pivot coordinates are expressed in the
/// remaining ones, and those components are dropped.
pub fn project(p: &Parametrization, l: &[Vec<Scalar>]) -> Result<Parametrization, Error> {
    if l.is_empty() {
        return Ok(p.clone());
    }
    let n = p.ambient_dim;
    for v in l {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                context: "projection center",
                left: n,
                right: v.len(),
            });
        }
    }
    let m = MatrixQ::from_dense(l);
    let red = m.rref();
    if red.rank < l.len() {
        return Err(Error::InvalidParameter(
            "projection center vectors are linearly dependent".into(),
        ));
    }
    let pivots = red.pivots.clone();
    let keep: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut components = Vec::with_capacity(keep.len());
    for &c in &keep {
        let mut comp = p.components[c].clone();
        for (row, &pc) in pivots.iter().enumerate() {
            let coeff = red.matrix.get(row, c);
            if !coeff.is_zero() {
                comp = comp.sub(&p.components[pc].scale(&coeff))?;
            }
        }
        components.push(comp);
    }
    Ok(Parametrization {
        label: format!("projection({},{})", p.label, l.len()),
        param_count: p.param_count,
        ambient_dim: keep.len(),
        components,
        weights: p.weights.clone(),
    })
}

/// Report for the hyperplane-restriction dimension inequality: the
/// projective symmetry dimension of a non-cone variety is at most that of a
/// general hyperplane section plus the ambient projective dimension.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SectionInequalityReport {
    pub variety: String,
    pub ambient_projective_dim: usize,
    pub lhs_projective_aut: usize,
    pub section_projective_aut: usize,
    pub rhs: usize,
    pub holds: bool,
    pub equality: bool,
    pub seed_used: u64,
}

/// Computes both sides of the inequality for a parametrized, quadratically
/// generated, non-cone input.
pub fn section_inequality_check(
    p: &Parametrization,
    seed: u64,
) -> Result<SectionInequalityReport, Error> {
    if !crate::ideal::is_nondegenerate(p)? {
        return Err(Error::DegenerateInput(p.label.clone()));
    }
    let piece = crate::ideal::forms_vanishing(p, 2)?;
    section_inequality_check_piece(&piece, &p.label, seed)
}

/// Piece-level variant for generator-presented varieties; the non-cone
/// hypothesis is checked on the supplied quadrics.
pub fn section_inequality_check_piece(
    piece: &GradedPiece,
    label: &str,
    seed: u64,
) -> Result<SectionInequalityReport, Error> {
    if !cone_vertex_space(std::slice::from_ref(piece))?.is_empty() {
        return Err(Error::DegenerateInput(format!(
            "{label} is a cone; the section inequality assumes a non-cone input"
        )));
    }
    let alg = crate::lie::aut_cone_labeled(std::slice::from_ref(piece), label)?;
    let lhs = crate::lie::projective_dim(&alg)?;
    let outcome = general_section(piece, seed, 1, 5)?;
    let section_alg =
        crate::lie::aut_cone_labeled(std::slice::from_ref(&outcome.piece), "section")?;
    let section_dim = crate::lie::projective_dim(&section_alg)?;
    let n = piece.ambient_dim - 1;
    let rhs = section_dim + n;
    Ok(SectionInequalityReport {
        variety: label.to_string(),
        ambient_projective_dim: n,
        lhs_projective_aut: lhs,
        section_projective_aut: section_dim,
        rhs,
        holds: lhs <= rhs,
        equality: lhs == rhs,
        seed_used: outcome.seed_used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::forms_vanishing;
    use crate::lie::{aut_cone, prolongation};
    use crate::scalar::int;
    use crate::varieties::{cone_over, quadric_form, segre, sympl_vmrt, veronese};

    fn quadric_piece(n: usize) -> GradedPiece {
        GradedPiece::from_polynomials(n, 2, &[quadric_form(n).unwrap()]).unwrap()
    }

    #[test]
    fn segre_2_3_is_not_a_cone() {
        let piece = forms_vanishing(&segre(2, 3).unwrap(), 2).unwrap();
        assert!(cone_vertex_space(&[piece]).unwrap().is_empty());
    }

    #[test]
    fn planted_vertices_are_recovered() {
        let c1 = cone_over(&segre(2, 2).unwrap(), 1).unwrap();
        let piece = forms_vanishing(&c1, 2).unwrap();
        let vertex = cone_vertex_space(&[piece]).unwrap();
        assert_eq!(vertex.len(), 1);
        // The planted direction is the appended coordinate.
        assert!(vertex[0][..4].iter().all(Scalar::is_zero));

        let c2 = cone_over(&veronese(2, 2).unwrap(), 2).unwrap();
        let piece2 = forms_vanishing(&c2, 2).unwrap();
        assert_eq!(cone_vertex_space(&[piece2]).unwrap().len(), 2);
    }

    #[test]
    fn vertex_dimension_is_additive_over_cone_over() {
        let base = segre(2, 2).unwrap();
        let base_piece = forms_vanishing(&base, 2).unwrap();
        let base_vertex = cone_vertex_space(&[base_piece]).unwrap().len();
        for t in 1..=2 {
            let cone = cone_over(&base, t).unwrap();
            let piece = forms_vanishing(&cone, 2).unwrap();
            assert_eq!(
                cone_vertex_space(&[piece]).unwrap().len(),
                base_vertex + t
            );
        }
    }

    #[test]
    fn coordinate_section_of_quadric_is_substitution() {
        // x4 = 0 is tangent to this quadric at a point, so the substituted
        // form x1*x3 + x2^2 has rank 3 and the vertex check flags it.
        let piece = quadric_piece(5);
        let h = vec![int(0), int(0), int(0), int(0), int(1)];
        let section = hyperplane_section(&piece, &h).unwrap();
        assert_eq!(section.dim(), 1);
        assert_eq!(section.polynomials()[0].to_string(), "x1*x3 + x2^2");
        let issues = section_genericity_issues(&piece, &section).unwrap();
        assert_eq!(
            issues,
            vec![SectionIssue::RestrictedVertex { dim: 1 }]
        );

        // A non-tangent hyperplane gives a smooth quadric in one fewer
        // variable: full-rank and clean checks.
        let h2 = vec![int(1), int(0), int(0), int(0), int(-1)];
        let smooth = hyperplane_section(&piece, &h2).unwrap();
        assert_eq!(smooth.dim(), 1);
        assert!(section_genericity_issues(&piece, &smooth)
            .unwrap()
            .is_empty());
        let alg = aut_cone(&[smooth]).unwrap();
        assert_eq!(alg.dim(), 4 * 3 / 2 + 1);
    }

    #[test]
    fn seeded_section_of_segre_2_3_matches_sympl_model() {
        let piece = forms_vanishing(&segre(2, 3).unwrap(), 2).unwrap();
        let outcome = general_section(&piece, 1, 1, 5).unwrap();
        let alg = aut_cone(&[outcome.piece.clone()]).unwrap();
        assert_eq!(alg.dim(), 7);
        assert_eq!(prolongation(&alg, 1).unwrap().dim(), 3);

        // Independently computed model of the same section.
        let sympl = sympl_vmrt(2, 1).unwrap();
        let sympl_alg = aut_cone(&[forms_vanishing(&sympl, 2).unwrap()]).unwrap();
        assert_eq!(alg.dim(), sympl_alg.dim());
    }

    #[test]
    fn general_section_reports_seed_trail() {
        let piece = forms_vanishing(&segre(2, 2).unwrap(), 2).unwrap();
        let outcome = general_section(&piece, 42, 1, 5).unwrap();
        assert!(outcome.attempts.contains(&outcome.seed_used));
        // Deterministic: the same base seed reproduces the same piece.
        let again = general_section(&piece, 42, 1, 5).unwrap();
        assert_eq!(outcome.seed_used, again.seed_used);
        assert_eq!(outcome.piece.basis(), again.piece.basis());
    }

    #[test]
    fn projection_with_empty_center_is_identity() {
        let p = segre(2, 2).unwrap();
        let q = project(&p, &[]).unwrap();
        assert_eq!(q.ambient_dim, p.ambient_dim);
        for (a, b) in p.components.iter().zip(&q.components) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn projection_rejects_dependent_centers() {
        let p = segre(2, 2).unwrap();
        let v = vec![int(1), int(0), int(0), int(1)];
        let w = vec![int(2), int(0), int(0), int(2)];
        assert!(project(&p, &[v, w]).is_err());
    }

    #[test]
    fn projection_of_segre_4_4_from_rank_3_tensor() {
        let p = segre(4, 4).unwrap();
        // e0⊗f0 + e1⊗f1 + e2⊗f2 in row-major coordinates.
        let mut center = vec![int(0); 16];
        center[0] = int(1);
        center[5] = int(1);
        center[10] = int(1);
        let projected = project(&p, &[center]).unwrap();
        assert_eq!(projected.ambient_dim, 15);
        assert!(crate::ideal::is_nondegenerate(&projected).unwrap());
        let piece = forms_vanishing(&projected, 2).unwrap();
        let alg = aut_cone(&[piece]).unwrap();
        assert_eq!(prolongation(&alg, 1).unwrap().dim(), 1);
    }

    #[test]
    fn projection_of_segre_2_2_from_secant_point_degenerates() {
        // A rank-2 center meets the secant variety: the image closure is a
        // hypersurface-free full space, so no quadrics survive.
        let p = segre(2, 2).unwrap();
        let mut center = vec![int(0); 4];
        center[0] = int(1);
        center[3] = int(1);
        let projected = project(&p, &[center]).unwrap();
        assert_eq!(projected.ambient_dim, 3);
        let piece = forms_vanishing(&projected, 2).unwrap();
        assert_eq!(piece.dim(), 0);
        assert!(aut_cone(&[piece]).is_err());
    }

    #[test]
    fn section_inequality_for_segre_2_3() {
        let report = section_inequality_check(&segre(2, 3).unwrap(), 1).unwrap();
        assert!(report.holds);
        assert_eq!(report.lhs_projective_aut, 11);
        assert_eq!(report.section_projective_aut, 6);
        assert_eq!(report.rhs, 11);
        assert!(report.equality);
    }

    #[test]
    fn section_inequality_rejects_cones() {
        let cone = cone_over(&segre(2, 2).unwrap(), 1).unwrap();
        assert!(section_inequality_check(&cone, 1).is_err());
    }
}
