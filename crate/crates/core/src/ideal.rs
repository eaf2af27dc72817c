//! Degree-bounded graded pieces of homogeneous ideals.
//!
//! The primary route is symbolic: the degree-`d` forms vanishing on a
//! parametrized cone are the kernel of the exact linear map sending a form
//! to the coefficient vector of its pullback. No sampling is involved, so
//! the result is complete for the given degree.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::Error;
use crate::matrix::{canonical_basis, MatrixQ, RowReducer};
use crate::poly::{Monomial, MonomialBasis, Polynomial};
use crate::scalar::Scalar;
use crate::varieties::Parametrization;

/// A degree-`degree` space of forms on an `ambient_dim`-dimensional space,
/// stored as reduced-echelon coefficient vectors over the graded-lex
/// monomial basis.
#[derive(Clone)]
pub struct GradedPiece {
    pub ambient_dim: usize,
    pub degree: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl GradedPiece {
    /// Canonicalizes arbitrary spanning vectors into a graded piece.
    pub fn from_spans(ambient_dim: usize, degree: usize, spans: &[Vec<Scalar>]) -> Self {
        let expected = MonomialBasis::new(ambient_dim, degree).len();
        for v in spans {
            assert_eq!(v.len(), expected, "coefficient vector length mismatch");
        }
        let basis = canonical_basis(spans);
        let pivots = pivot_columns(&basis);
        GradedPiece {
            ambient_dim,
            degree,
            basis,
            pivots,
        }
    }

    pub fn from_polynomials(
        ambient_dim: usize,
        degree: usize,
        polys: &[Polynomial],
    ) -> Result<Self, Error> {
        let basis = MonomialBasis::new(ambient_dim, degree);
        let spans = polys
            .iter()
            .map(|p| p.coefficient_vector(&basis))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GradedPiece::from_spans(ambient_dim, degree, &spans))
    }

    pub fn empty(ambient_dim: usize, degree: usize) -> Self {
        GradedPiece {
            ambient_dim,
            degree,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn monomial_basis(&self) -> MonomialBasis {
        MonomialBasis::new(self.ambient_dim, self.degree)
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        let mb = self.monomial_basis();
        self.basis
            .iter()
            .map(|v| Polynomial::from_coefficient_vector(&mb, v))
            .collect()
    }

    /// Residual of a coefficient vector modulo this piece; zero residual
    /// means the form lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if r[pc].is_zero() {
                continue;
            }
            let f = r[pc].clone();
            for (j, b) in row.iter().enumerate() {
                if !b.is_zero() {
                    let sub = &f * b;
                    let cur = r[j].clone();
                    r[j] = cur - sub;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Serializable form: each basis element as a list of
    /// `(coefficient, exponent vector)` terms.
    pub fn to_terms(&self) -> Vec<Vec<(String, Vec<u16>)>> {
        let mb = self.monomial_basis();
        self.basis
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (crate::scalar::render(c), mb.monomial(i).0.clone()))
                    .collect()
            })
            .collect()
    }
}

fn pivot_columns(rref_rows: &[Vec<Scalar>]) -> Vec<usize> {
    rref_rows
        .iter()
        .map(|row| {
            row.iter()
                .position(|c| !c.is_zero())
                .expect("zero row in canonical basis")
        })
        .collect()
}

/// Degree-`d` forms vanishing identically on the image of `p`, computed as
/// the kernel of the pullback map on coefficient vectors.
pub fn forms_vanishing(p: &Parametrization, d: usize) -> Result<GradedPiece, Error> {
    if d < 1 {
        return Err(Error::InvalidParameter(
            "forms_vanishing requires degree >= 1".into(),
        ));
    }
    let n = p.ambient_dim;
    let ambient_basis = MonomialBasis::new(n, d);

    // Column c of the constraint matrix is the pullback of the c-th ambient
    // monomial; rows are indexed by the parameter monomials that occur.
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<Vec<(u32, Scalar)>> = Vec::new();
    let mut powers: Vec<Vec<Polynomial>> = p
        .components
        .iter()
        .map(|c| vec![Polynomial::constant(p.param_count, crate::scalar::one()), c.clone()])
        .collect();
    for (col, mono) in ambient_basis.monomials().iter().enumerate() {
        let mut pulled = Polynomial::constant(p.param_count, crate::scalar::one());
        for (i, e) in mono.0.iter().enumerate() {
            let e = *e as usize;
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e {
                let next = powers[i].last().unwrap().mul(&p.components[i])?;
                powers[i].push(next);
            }
            pulled = pulled.mul(&powers[i][e])?;
        }
        for (m, c) in pulled.terms() {
            let next_row = row_of.len();
            let r = *row_of.entry(m.clone()).or_insert(next_row);
            if r >= rows.len() {
                rows.push(Vec::new());
            }
            rows[r].push((col as u32, c.clone()));
        }
    }

    let mut reducer = RowReducer::new(ambient_basis.len());
    for mut row in rows {
        row.sort_by_key(|(c, _)| *c);
        reducer.add_row_sparse(&row);
    }
    let kernel = reducer.kernel_basis();
    Ok(GradedPiece::from_spans(n, d, &kernel))
}

/// Degree-`d` slice of the ideal generated by the given homogeneous forms:
/// the span of `m * g` over generators `g` and monomials `m` of
/// complementary degree.
pub fn degree_piece_from_generators(
    gens: &[Polynomial],
    d: usize,
) -> Result<GradedPiece, Error> {
    if gens.is_empty() {
        return Err(Error::EmptyInput("generators"));
    }
    let n = gens[0].vars();
    let target = MonomialBasis::new(n, d);
    let mut spans = Vec::new();
    for g in gens {
        if g.vars() != n {
            return Err(Error::DimensionMismatch {
                context: "generators",
                left: n,
                right: g.vars(),
            });
        }
        let e = g
            .homogeneous_degree()
            .ok_or(Error::InhomogeneousInput { expected: d })?;
        if g.is_zero() || e > d {
            continue;
        }
        if e == d {
            spans.push(g.coefficient_vector(&target)?);
            continue;
        }
        for m in MonomialBasis::new(n, d - e).monomials() {
            let product = g.mul(&Polynomial::monomial(n, m.clone(), crate::scalar::one()))?;
            spans.push(product.coefficient_vector(&target)?);
        }
    }
    Ok(GradedPiece::from_spans(n, d, &spans))
}

/// True when no nonzero linear form vanishes on the image of `p`.
pub fn is_nondegenerate(p: &Parametrization) -> Result<bool, Error> {
    Ok(forms_vanishing(p, 1)?.dim() == 0)
}

/// Maximal degree among defining forms; bounds how often a line can meet
/// the zero locus without being contained in it.
pub fn degree_bound(gens: &[Polynomial]) -> Result<usize, Error> {
    if gens.is_empty() {
        return Err(Error::EmptyInput("generators"));
    }
    Ok(gens.iter().map(Polynomial::degree).max().unwrap())
}

/// Sampling cross-check used by the tests: the span of forms vanishing at
/// `count` random image points. Contains the symbolic kernel; equality is
/// expected once `count` comfortably exceeds the codimension.
pub fn forms_vanishing_sampled(
    p: &Parametrization,
    d: usize,
    count: usize,
    rng: &mut impl rand::Rng,
) -> Result<GradedPiece, Error> {
    let n = p.ambient_dim;
    let basis = MonomialBasis::new(n, d);
    let mut m = MatrixQ::zero(count, basis.len());
    for row in 0..count {
        let params: Vec<Scalar> = (0..p.param_count)
            .map(|_| crate::scalar::random_int_scalar(rng, 9, false))
            .collect();
        let x = p.eval(&params)?;
        for (col, mono) in basis.monomials().iter().enumerate() {
            let mut v = crate::scalar::one();
            for (i, e) in mono.0.iter().enumerate() {
                for _ in 0..*e {
                    v *= &x[i];
                }
            }
            if !v.is_zero() {
                m.set(row, col, v);
            }
        }
    }
    Ok(GradedPiece::from_spans(n, d, &m.kernel_basis()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::scalar::int;
    use crate::varieties::{pluecker, segre, sympl_vmrt, veronese};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn segre_2_2_has_one_quadric() {
        let piece = forms_vanishing(&segre(2, 2).unwrap(), 2).unwrap();
        assert_eq!(piece.dim(), 1);
        let q = &piece.polynomials()[0];
        assert_eq!(q.to_string(), "x0*x3 - x1*x2");
    }

    #[test]
    fn segre_2_3_has_three_quadrics() {
        assert_eq!(forms_vanishing(&segre(2, 3).unwrap(), 2).unwrap().dim(), 3);
    }

    #[test]
    fn veronese_quadric_counts() {
        assert_eq!(
            forms_vanishing(&veronese(3, 2).unwrap(), 2).unwrap().dim(),
            6
        );
        assert_eq!(
            forms_vanishing(&veronese(2, 3).unwrap(), 2).unwrap().dim(),
            3
        );
    }

    #[test]
    fn pluecker_quadric_counts() {
        assert_eq!(
            forms_vanishing(&pluecker(2, 4).unwrap(), 2).unwrap().dim(),
            1
        );
        assert_eq!(
            forms_vanishing(&pluecker(2, 5).unwrap(), 2).unwrap().dim(),
            5
        );
        assert_eq!(
            forms_vanishing(&pluecker(2, 6).unwrap(), 2).unwrap().dim(),
            15
        );
    }

    #[test]
    fn symbolic_kernel_matches_point_sampling_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for (p, expected) in [
            (pluecker(2, 5).unwrap(), 5usize),
            (veronese(3, 2).unwrap(), 6usize),
        ] {
            let symbolic = forms_vanishing(&p, 2).unwrap();
            assert_eq!(symbolic.dim(), expected);
            let n2 = symbolic.monomial_basis().len();
            let sampled =
                forms_vanishing_sampled(&p, 2, 3 * (n2 - expected), &mut rng).unwrap();
            assert_eq!(sampled.dim(), symbolic.dim());
            for v in symbolic.basis() {
                assert!(sampled.contains(v));
            }
        }
    }

    #[test]
    fn no_linear_forms_vanish_on_table_varieties() {
        for p in [
            segre(2, 3).unwrap(),
            veronese(3, 2).unwrap(),
            pluecker(2, 5).unwrap(),
            sympl_vmrt(2, 1).unwrap(),
        ] {
            assert!(is_nondegenerate(&p).unwrap(), "{}", p.label);
        }
    }

    #[test]
    fn zero_component_means_degenerate() {
        let mut p = segre(2, 2).unwrap();
        p.components[1] = crate::poly::Polynomial::zero(p.param_count);
        assert!(!is_nondegenerate(&p).unwrap());
    }

    #[test]
    fn generator_slices() {
        let q = parse_polynomial("x0*x1", 2).unwrap();
        assert_eq!(degree_piece_from_generators(&[q.clone()], 2).unwrap().dim(), 1);

        // A full-rank quadric in n variables: multiplication by linear forms
        // is injective, so the cubic slice has dimension n.
        for n in 3..=5 {
            let q = crate::varieties::quadric_form(n).unwrap();
            assert_eq!(degree_piece_from_generators(&[q], 3).unwrap().dim(), n);
        }
    }

    #[test]
    fn quadrics_generate_the_cubic_slice_for_segre_2_3() {
        let p = segre(2, 3).unwrap();
        let quadrics = forms_vanishing(&p, 2).unwrap();
        let from_gens = degree_piece_from_generators(&quadrics.polynomials(), 3).unwrap();
        let direct = forms_vanishing(&p, 3).unwrap();
        assert_eq!(from_gens.dim(), direct.dim());
        assert_eq!(from_gens.basis(), direct.basis());
    }

    #[test]
    fn kernel_dimension_accounting() {
        // dim(image of pullback) + dim(kernel) = dim Sym^d.
        let p = segre(2, 3).unwrap();
        let piece = forms_vanishing(&p, 2).unwrap();
        let basis = piece.monomial_basis();
        let mut reducer = crate::matrix::RowReducer::new(
            crate::poly::MonomialBasis::new(p.param_count, 4).len(),
        );
        let param_basis = crate::poly::MonomialBasis::new(p.param_count, 4);
        for mono in basis.monomials() {
            let f = Polynomial::monomial(p.ambient_dim, mono.clone(), int(1));
            let pulled = f.compose(&p.components).unwrap();
            reducer.add_row_dense(&pulled.coefficient_vector(&param_basis).unwrap());
        }
        assert_eq!(reducer.rank() + piece.dim(), basis.len());
    }

    #[test]
    fn degree_bound_examples() {
        let q = parse_polynomial("x0^2", 1).unwrap();
        let c = parse_polynomial("x0^3", 1).unwrap();
        assert_eq!(degree_bound(&[q.clone()]).unwrap(), 2);
        assert_eq!(degree_bound(&[q, c]).unwrap(), 3);
        assert!(degree_bound(&[]).is_err());

        let segre_quadrics = forms_vanishing(&segre(2, 3).unwrap(), 2).unwrap();
        assert_eq!(degree_bound(&segre_quadrics.polynomials()).unwrap(), 2);
    }

    #[test]
    fn graded_piece_reduction_and_terms() {
        let p = segre(2, 3).unwrap();
        let piece = forms_vanishing(&p, 2).unwrap();
        for v in piece.basis() {
            assert!(piece.contains(v));
        }
        let outside = {
            let f = parse_polynomial("x0^2", 6).unwrap();
            f.coefficient_vector(&piece.monomial_basis()).unwrap()
        };
        assert!(!piece.contains(&outside));
        let terms = piece.to_terms();
        assert_eq!(terms.len(), piece.dim());
    }
}
