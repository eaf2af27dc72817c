//! Infinitesimal automorphisms of cones and their prolongations.
//!
//! `aut_cone` computes the matrices `g` whose derivation maps each supplied
//! graded piece into itself; when the pieces generate the ideal of the cone
//! this is exactly the algebra of linear vector fields tangent to it along
//! its smooth locus. `prolongation` computes the spaces of symmetric
//! multilinear maps whose partial evaluations land in the algebra.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::Error;
use crate::ideal::GradedPiece;
use crate::matrix::{canonical_basis, MatrixQ, RowReducer};
use crate::poly::{Monomial, MonomialBasis};
use crate::scalar::Scalar;
use crate::varieties::Parametrization;

/// A space of matrices closed under commutator, stored as a canonical
/// (reduced-echelon after row-major flattening) basis.
#[derive(Clone)]
pub struct LinearLieAlgebra {
    pub ambient_dim: usize,
    pub basis: Vec<MatrixQ>,
    pub provenance: String,
}

impl LinearLieAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn flattened_rows(&self) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(MatrixQ::flatten_row_major).collect()
    }

    fn span_reducer(&self) -> RowReducer {
        let n = self.ambient_dim;
        let mut red = RowReducer::new(n * n);
        for row in self.flattened_rows() {
            red.add_row_dense(&row);
        }
        red
    }

    pub fn contains_matrix(&self, m: &MatrixQ) -> bool {
        self.span_reducer().contains(&m.flatten_row_major())
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_matrix(&MatrixQ::identity(self.ambient_dim))
    }

    /// Checks `[b_i, b_j]` stays in the span for every basis pair.
    pub fn is_bracket_closed(&self) -> Result<bool, Error> {
        let red = self.span_reducer();
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                let br = bracket(a, b)?;
                if !red.contains(&br.flatten_row_major()) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Commutator `g h - h g`.
pub fn bracket(g: &MatrixQ, h: &MatrixQ) -> Result<MatrixQ, Error> {
    g.mul(h)?.sub(&h.mul(g)?)
}

/// Dimension of the induced algebra of projective transformations:
/// the scalars act trivially on projective space, so one less than the
/// cone algebra. Errors when the identity is missing, which signals that
/// the input did not come from a cone.
pub fn projective_dim(g: &LinearLieAlgebra) -> Result<usize, Error> {
    if !g.contains_identity() {
        return Err(Error::IdentityNotInSpan);
    }
    Ok(g.dim() - 1)
}

/// Constraint rows stating that the image of each unknown-basis column lies
/// in the span of `piece`. `columns[u]` is the coefficient vector of the
/// image of the u-th unknown; one row is emitted per coordinate where some
/// residual is nonzero.
pub(crate) fn span_constraint_rows(
    columns: &[Vec<Scalar>],
    piece: &GradedPiece,
) -> Vec<Vec<(u32, Scalar)>> {
    let reduced: Vec<Vec<Scalar>> = columns.iter().map(|c| piece.reduce(c)).collect();
    let len = reduced.first().map_or(0, Vec::len);
    let mut rows = Vec::new();
    for coord in 0..len {
        let mut row: Vec<(u32, Scalar)> = Vec::new();
        for (u, col) in reduced.iter().enumerate() {
            if !col[coord].is_zero() {
                row.push((u as u32, col[coord].clone()));
            }
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    rows
}

/// The matrices whose derivation action preserves every supplied graded
/// piece. With the degree-2 piece of a quadratically generated cone this is
/// the full tangency algebra of the cone.
pub fn aut_cone(pieces: &[GradedPiece]) -> Result<LinearLieAlgebra, Error> {
    aut_cone_labeled(pieces, "graded pieces")
}

pub fn aut_cone_labeled(
    pieces: &[GradedPiece],
    provenance: &str,
) -> Result<LinearLieAlgebra, Error> {
    if pieces.is_empty() || pieces.iter().all(GradedPiece::is_empty) {
        return Err(Error::TrivialPieces);
    }
    let n = pieces[0].ambient_dim;
    if pieces.iter().any(|p| p.ambient_dim != n) {
        return Err(Error::DimensionMismatch {
            context: "graded pieces",
            left: n,
            right: pieces.iter().find(|p| p.ambient_dim != n).unwrap().ambient_dim,
        });
    }

    let mut reducer = RowReducer::new(n * n);
    for piece in pieces {
        if piece.is_empty() {
            continue;
        }
        let target = piece.monomial_basis();
        for f in piece.polynomials() {
            // Column (i, j) of the derivation map is x_j * df/dx_i.
            let mut columns = vec![vec![Scalar::zero(); target.len()]; n * n];
            for i in 0..n {
                let fi = f.partial(i)?;
                if fi.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let col = &mut columns[i * n + j];
                    for (m, c) in fi.terms() {
                        let idx = target
                            .index_of(&m.times_var(j))
                            .expect("degree-d monomial in basis");
                        col[idx] = c.clone();
                    }
                }
            }
            for row in span_constraint_rows(&columns, piece) {
                reducer.add_row_sparse(&row);
            }
        }
    }

    let kernel = reducer.kernel_basis();
    let rows = canonical_basis(&kernel);
    let basis = rows
        .iter()
        .map(|flat| MatrixQ::from_flat(n, n, flat))
        .collect();
    Ok(LinearLieAlgebra {
        ambient_dim: n,
        basis,
        provenance: provenance.to_string(),
    })
}

/// Symmetric multilinear map `Sym^degree V -> V` stored by its values on
/// the degree-`degree` monomial basis.
#[derive(Clone)]
pub struct SymTensor {
    pub ambient_dim: usize,
    pub degree: usize,
    pub values: Vec<Vec<Scalar>>,
}

impl SymTensor {
    pub fn flatten(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.values.len() * self.ambient_dim);
        for v in &self.values {
            out.extend(v.iter().cloned());
        }
        out
    }

    pub fn from_flat(ambient_dim: usize, degree: usize, flat: &[Scalar]) -> Self {
        let count = flat.len() / ambient_dim;
        let values = (0..count)
            .map(|m| flat[m * ambient_dim..(m + 1) * ambient_dim].to_vec())
            .collect();
        SymTensor {
            ambient_dim,
            degree,
            values,
        }
    }

    /// Value on an argument multiset given as variable indices.
    pub fn apply_basis_args(&self, args: &[usize]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.degree);
        let mut mono = Monomial::constant(self.ambient_dim);
        for &a in args {
            mono.0[a] += 1;
        }
        let basis = MonomialBasis::new(self.ambient_dim, self.degree);
        self.values[basis.index_of(&mono).expect("degree matches")].clone()
    }

    /// The endomorphism `v -> A(mu, v)` for a degree-`degree - 1` monomial.
    pub fn partial_evaluation(&self, mu: &Monomial) -> MatrixQ {
        debug_assert_eq!(mu.degree(), self.degree - 1);
        let basis = MonomialBasis::new(self.ambient_dim, self.degree);
        let n = self.ambient_dim;
        let mut m = MatrixQ::zero(n, n);
        for l in 0..n {
            let idx = basis.index_of(&mu.times_var(l)).expect("degree matches");
            for i in 0..n {
                let v = &self.values[idx][i];
                if !v.is_zero() {
                    m.set(i, l, v.clone());
                }
            }
        }
        m
    }
}

/// Basis of the order-`order` prolongation space of a matrix algebra.
#[derive(Clone)]
pub struct ProlongationSpace {
    pub ambient_dim: usize,
    pub order: usize,
    pub basis: Vec<SymTensor>,
}

impl ProlongationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn empty(ambient_dim: usize, order: usize) -> Self {
        ProlongationSpace {
            ambient_dim,
            order,
            basis: Vec::new(),
        }
    }

    fn from_flat_spans(ambient_dim: usize, order: usize, spans: &[Vec<Scalar>]) -> Self {
        let rows = canonical_basis(spans);
        let basis = rows
            .iter()
            .map(|flat| SymTensor::from_flat(ambient_dim, order + 1, flat))
            .collect();
        ProlongationSpace {
            ambient_dim,
            order,
            basis,
        }
    }
}

fn flattened_rref(g: &LinearLieAlgebra) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let rows = canonical_basis(&g.flattened_rows());
    let pivots = rows
        .iter()
        .map(|r| r.iter().position(|c| !c.is_zero()).expect("nonzero row"))
        .collect();
    (rows, pivots)
}

/// Order-`k` prolongation. The first order is solved directly in the
/// monomial coordinatization of `Sym^2 V* ⊗ V`; higher orders lift the
/// previous space (a map `V -> previous space` with a symmetric total
/// tensor), which solves a far smaller system with the identical result.
pub fn prolongation(g: &LinearLieAlgebra, k: usize) -> Result<ProlongationSpace, Error> {
    let tower = prolongation_tower(g, k)?;
    Ok(tower.into_iter().last().expect("k >= 1 checked"))
}

/// Prolongations of orders `1..=k_max`, each computed from the previous.
pub fn prolongation_tower(
    g: &LinearLieAlgebra,
    k_max: usize,
) -> Result<Vec<ProlongationSpace>, Error> {
    if k_max == 0 {
        return Err(Error::InvalidParameter(
            "prolongation order must be at least 1".into(),
        ));
    }
    let mut tower = vec![prolong_direct(g, 1)?];
    for _ in 2..=k_max {
        let next = prolong_next(tower.last().unwrap())?;
        tower.push(next);
    }
    Ok(tower)
}

/// Direct monomial-coordinate solve for the order-`k` prolongation: the
/// unknown is the full value table on `Sym^{k+1}`, and each partial
/// evaluation is constrained into the span of `g`.
pub fn prolong_direct(g: &LinearLieAlgebra, k: usize) -> Result<ProlongationSpace, Error> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "prolongation order must be at least 1".into(),
        ));
    }
    let n = g.ambient_dim;
    let (rref_rows, pivots) = flattened_rref(g);
    let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
    let value_basis = MonomialBasis::new(n, k + 1);
    let arg_basis = MonomialBasis::new(n, k);
    let unknowns = value_basis.len() * n;
    let unknown = |mono_idx: usize, coord: usize| (mono_idx * n + coord) as u32;

    let mut reducer = RowReducer::new(unknowns);
    for mu in arg_basis.monomials() {
        // E[i][l] = A[mu + e_l][i]; constrain the residual of E modulo the
        // span of g to vanish at every non-pivot position.
        let value_index: Vec<usize> = (0..n)
            .map(|l| value_basis.index_of(&mu.times_var(l)).expect("in basis"))
            .collect();
        for c in 0..n * n {
            if pivot_set.contains(&c) {
                continue;
            }
            let (i, l) = (c / n, c % n);
            let mut row: Vec<(u32, Scalar)> = vec![(unknown(value_index[l], i), crate::scalar::one())];
            for (r, rref_row) in rref_rows.iter().enumerate() {
                let coeff = &rref_row[c];
                if coeff.is_zero() {
                    continue;
                }
                let (pi, pl) = (pivots[r] / n, pivots[r] % n);
                row.push((unknown(value_index[pl], pi), -coeff.clone()));
            }
            row.sort_by_key(|(col, _)| *col);
            // Merge duplicate columns, which occur when a pivot position
            // shares its value slot with the constrained position.
            let mut merged: Vec<(u32, Scalar)> = Vec::with_capacity(row.len());
            for (col, v) in row {
                match merged.last_mut() {
                    Some((c0, v0)) if *c0 == col => *v0 += v,
                    _ => merged.push((col, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            reducer.add_row_sparse(&merged);
        }
    }
    let kernel = reducer.kernel_basis();
    Ok(ProlongationSpace::from_flat_spans(n, k, &kernel))
}

/// Lifts an order-`k` prolongation space to order `k + 1`: solutions are
/// maps `V -> previous space` whose induced `(k + 2)`-linear map is
/// symmetric; the induced partial evaluations then land in the parent
/// algebra by induction.
pub fn prolong_next(prev: &ProlongationSpace) -> Result<ProlongationSpace, Error> {
    let n = prev.ambient_dim;
    let order = prev.order + 1;
    if prev.dim() == 0 {
        return Ok(ProlongationSpace::empty(n, order));
    }
    let q = prev.dim();
    let prev_degree = prev.order + 1;
    let prev_basis_monos = MonomialBasis::new(n, prev_degree);
    let slot_basis = MonomialBasis::new(n, prev_degree - 1);
    let unknowns = n * q;

    let mut reducer = RowReducer::new(unknowns);
    for j in 0..n {
        for l in j + 1..n {
            for mu in slot_basis.monomials() {
                let idx_l = prev_basis_monos.index_of(&mu.times_var(l)).unwrap();
                let idx_j = prev_basis_monos.index_of(&mu.times_var(j)).unwrap();
                for i in 0..n {
                    let mut row: Vec<(u32, Scalar)> = Vec::new();
                    for (s, tensor) in prev.basis.iter().enumerate() {
                        let a = &tensor.values[idx_l][i];
                        if !a.is_zero() {
                            row.push(((j * q + s) as u32, a.clone()));
                        }
                        let b = &tensor.values[idx_j][i];
                        if !b.is_zero() {
                            row.push(((l * q + s) as u32, -b.clone()));
                        }
                    }
                    if !row.is_empty() {
                        row.sort_by_key(|(col, _)| *col);
                        reducer.add_row_sparse(&row);
                    }
                }
            }
        }
    }

    let value_basis = MonomialBasis::new(n, order + 1);
    let spans: Vec<Vec<Scalar>> = reducer
        .kernel_basis()
        .iter()
        .map(|c| {
            let mut flat = vec![Scalar::zero(); value_basis.len() * n];
            for (m_idx, mono) in value_basis.monomials().iter().enumerate() {
                let j0 = mono.first_var().expect("positive degree");
                let reduced = mono.divide_var(j0).unwrap();
                let prev_idx = prev_basis_monos.index_of(&reduced).unwrap();
                for i in 0..n {
                    let mut acc = Scalar::zero();
                    for (s, tensor) in prev.basis.iter().enumerate() {
                        let coeff = &c[j0 * q + s];
                        if !coeff.is_zero() {
                            acc += coeff * &tensor.values[prev_idx][i];
                        }
                    }
                    flat[m_idx * n + i] = acc;
                }
            }
            flat
        })
        .collect();
    Ok(ProlongationSpace::from_flat_spans(n, order, &spans))
}

/// Verifies the tangency condition directly: for sampled smooth points
/// `x = phi(w)`, each `g x` must lie in the column span of the Jacobian.
pub fn tangency_cross_validation(
    g: &LinearLieAlgebra,
    p: &Parametrization,
    points: usize,
    rng: &mut impl rand::Rng,
) -> Result<bool, Error> {
    for _ in 0..points {
        let params: Vec<Scalar> = (0..p.param_count)
            .map(|_| crate::scalar::random_int_scalar(rng, 7, false))
            .collect();
        let x = p.eval(&params)?;
        let jac = p.jacobian_at(&params)?;
        let mut span = RowReducer::new(p.ambient_dim);
        for col in 0..jac.cols() {
            let column: Vec<Scalar> = (0..jac.rows()).map(|r| jac.get(r, col)).collect();
            span.add_row_dense(&column);
        }
        for b in &g.basis {
            if !span.contains(&b.apply(&x)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
