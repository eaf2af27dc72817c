//! Polynomial parametrizations of the classical cone varieties: Segre and
//! Veronese embeddings, Pluecker-embedded Grassmannians of planes, smooth
//! hyperquadrics (generator-presented), the symplectic-Grassmannian VMRT
//! model, the ten-dimensional spinor variety, and cones over any of them.
//!
//! Component orderings are frozen (graded-lex monomials, lex-sorted index
//! subsets) so downstream bases are reproducible.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poly::{binomial, Monomial, MonomialBasis, Polynomial};
use crate::scalar::{self, Scalar};

/// Polynomial map from parameter space onto (a dense subset of) an affine
/// cone. `weights` witnesses the cone property: scaling parameter `i` by
/// `lambda^weights[i]` scales every component by `lambda^degree`.
#[derive(Clone)]
pub struct Parametrization {
    pub label: String,
    pub param_count: usize,
    pub ambient_dim: usize,
    pub components: Vec<Polynomial>,
    pub weights: Option<ConeWeights>,
}

#[derive(Clone)]
pub struct ConeWeights {
    pub per_param: Vec<u32>,
    pub degree: u32,
}

impl Parametrization {
    /// Evaluates the map at a parameter point.
    pub fn eval(&self, params: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if params.len() != self.param_count {
            return Err(Error::DimensionMismatch {
                context: "parametrization evaluation",
                left: self.param_count,
                right: params.len(),
            });
        }
        self.components.iter().map(|c| c.eval(params)).collect()
    }

    /// Jacobian matrix (ambient_dim x param_count) at a parameter point.
    pub fn jacobian_at(&self, params: &[Scalar]) -> Result<crate::matrix::MatrixQ, Error> {
        let mut m = crate::matrix::MatrixQ::zero(self.ambient_dim, self.param_count);
        for (j, comp) in self.components.iter().enumerate() {
            for i in 0..self.param_count {
                let v = comp.partial(i)?.eval(params)?;
                if !num_traits::Zero::is_zero(&v) {
                    m.set(j, i, v);
                }
            }
        }
        Ok(m)
    }

    /// Exact witness that the image is a cone: every component must be
    /// weighted-homogeneous of the common degree under the stored weights.
    pub fn cone_weights_consistent(&self) -> bool {
        let Some(w) = &self.weights else { return false };
        self.components.iter().all(|comp| {
            comp.terms().all(|(m, _)| {
                let wd: u32 = m
                    .0
                    .iter()
                    .enumerate()
                    .map(|(i, e)| w.per_param[i] * *e as u32)
                    .sum();
                wd == w.degree
            })
        })
    }
}

/// Handle for constructing a variety from the command line or JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarietyDescriptor {
    Segre { params: [usize; 2] },
    Veronese { params: [usize; 2] },
    Pluecker { params: [usize; 2] },
    Quadric { params: [usize; 1] },
    SymplVmrt { params: [usize; 2] },
    Spinor10,
    ConeOver {
        of: Box<VarietyDescriptor>,
        params: [usize; 1],
    },
    Section {
        of: Box<VarietyDescriptor>,
        seed: u64,
        #[serde(default = "default_codim")]
        codim: usize,
    },
    Projection {
        of: Box<VarietyDescriptor>,
        center: ProjectionCenter,
    },
}

fn default_codim() -> usize {
    1
}

/// Projection center: either explicit integer vectors in ambient coordinates
/// or the standard rank-`r` tensor shorthand for a Segre source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionCenter {
    Rank(usize),
    Vectors(Vec<Vec<i64>>),
}

impl VarietyDescriptor {
    pub fn label(&self) -> String {
        match self {
            VarietyDescriptor::Segre { params: [a, b] } => format!("segre({a},{b})"),
            VarietyDescriptor::Veronese { params: [r, d] } => format!("veronese({r},{d})"),
            VarietyDescriptor::Pluecker { params: [a, r] } => format!("pluecker({a},{r})"),
            VarietyDescriptor::Quadric { params: [n] } => format!("quadric({n})"),
            VarietyDescriptor::SymplVmrt { params: [k, m] } => format!("sympl_vmrt({k},{m})"),
            VarietyDescriptor::Spinor10 => "spinor10".to_string(),
            VarietyDescriptor::ConeOver { of, params: [t] } => {
                format!("cone_over({},{t})", of.label())
            }
            VarietyDescriptor::Section { of, seed, codim } => {
                format!("section({},codim={codim},seed={seed})", of.label())
            }
            VarietyDescriptor::Projection { of, center } => {
                let c = match center {
                    ProjectionCenter::Rank(r) => format!("rank{r}"),
                    ProjectionCenter::Vectors(v) => format!("{}vec", v.len()),
                };
                format!("projection({},{c})", of.label())
            }
        }
    }
}

/// Segre embedding of P^{a-1} x P^{b-1}: component `(i, j)` is `s_i t_j`,
/// ordered row-major. The image cone is the rank-one `a x b` matrices.
pub fn segre(a: usize, b: usize) -> Result<Parametrization, Error> {
    if a < 2 || b < 2 {
        return Err(Error::InvalidParameter(format!(
            "segre requires both factors >= 2, got ({a},{b})"
        )));
    }
    let params = a + b;
    let mut components = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            let si = Polynomial::var(params, i);
            let tj = Polynomial::var(params, a + j);
            components.push(si.mul(&tj)?);
        }
    }
    Ok(Parametrization {
        label: format!("segre({a},{b})"),
        param_count: params,
        ambient_dim: a * b,
        components,
        weights: Some(ConeWeights {
            per_param: vec![1; params],
            degree: 2,
        }),
    })
}

/// Degree-`d` Veronese embedding of P^{r-1}: all degree-`d` monomials in
/// graded-lex order.
pub fn veronese(r: usize, d: usize) -> Result<Parametrization, Error> {
    if r < 2 || d < 2 {
        return Err(Error::InvalidParameter(format!(
            "veronese requires r >= 2 and d >= 2, got ({r},{d})"
        )));
    }
    let basis = MonomialBasis::new(r, d);
    let components = basis
        .monomials()
        .iter()
        .map(|m| Polynomial::monomial(r, m.clone(), scalar::one()))
        .collect();
    Ok(Parametrization {
        label: format!("veronese({r},{d})"),
        param_count: r,
        ambient_dim: basis.len(),
        components,
        weights: Some(ConeWeights {
            per_param: vec![1; r],
            degree: d as u32,
        }),
    })
}

/// Lex-sorted `a`-subsets of `{0, .., r-1}`.
fn sorted_subsets(r: usize, a: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(r, a));
    let mut current = Vec::with_capacity(a);
    fn rec(r: usize, a: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == a {
            out.push(current.clone());
            return;
        }
        for i in start..r {
            current.push(i);
            rec(r, a, i + 1, current, out);
            current.pop();
        }
    }
    rec(r, a, 0, &mut current, &mut out);
    out
}

/// Determinant of a small matrix of polynomials by Laplace expansion.
fn poly_det(m: &[Vec<Polynomial>]) -> Result<Polynomial, Error> {
    let n = m.len();
    let vars = m[0][0].vars();
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = Polynomial::zero(vars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|c| *c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let sub = m[0][j].mul(&poly_det(&minor)?)?;
        acc = if j % 2 == 0 { acc.add(&sub)? } else { acc.sub(&sub)? };
    }
    Ok(acc)
}

/// Pluecker embedding of Gr(a, r): parameters form an `a x r` matrix and the
/// components are its maximal minors, indexed by lex-sorted column subsets.
pub fn pluecker(a: usize, r: usize) -> Result<Parametrization, Error> {
    if a < 2 || a >= r {
        return Err(Error::InvalidParameter(format!(
            "pluecker requires 2 <= a < r, got ({a},{r})"
        )));
    }
    let params = a * r;
    let subsets = sorted_subsets(r, a);
    let mut components = Vec::with_capacity(subsets.len());
    for cols in &subsets {
        let sub: Vec<Vec<Polynomial>> = (0..a)
            .map(|i| {
                cols.iter()
                    .map(|&j| Polynomial::var(params, i * r + j))
                    .collect()
            })
            .collect();
        components.push(poly_det(&sub)?);
    }
    Ok(Parametrization {
        label: format!("pluecker({a},{r})"),
        param_count: params,
        ambient_dim: subsets.len(),
        components,
        weights: Some(ConeWeights {
            per_param: vec![1; params],
            degree: a as u32,
        }),
    })
}

/// The smooth hyperquadric in `n` ambient coordinates, presented by its
/// single defining form `sum_i x_i x_{n-1-i}` (hyperbolic, full rank).
pub fn quadric_form(n: usize) -> Result<Polynomial, Error> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "quadric requires ambient dimension >= 3, got {n}"
        )));
    }
    let mut q = Polynomial::zero(n);
    for i in 0..=(n - 1) / 2 {
        let m = Monomial::var(n, i).mul(&Monomial::var(n, n - 1 - i));
        q.add_term(m, scalar::one());
    }
    Ok(q)
}

/// VMRT model of the symplectic Grassmannian: the cone
/// `{(w ⊗ q, c · w ⊗ w)}` in `(W ⊗ Q) ⊕ Sym²W` with `dim W = k`,
/// `dim Q = m`. Components: the `k·m` products `w_i q_j` (row-major), then
/// the `k(k+1)/2` entries of `c · Sym²(w)` in graded-lex order.
pub fn sympl_vmrt(k: usize, m: usize) -> Result<Parametrization, Error> {
    if k < 2 || m < 1 {
        return Err(Error::InvalidParameter(format!(
            "sympl_vmrt requires k >= 2 and m >= 1, got ({k},{m})"
        )));
    }
    let params = k + m + 1; // w_0..w_{k-1}, q_0..q_{m-1}, c
    let c_index = k + m;
    let mut components = Vec::with_capacity(k * m + k * (k + 1) / 2);
    for i in 0..k {
        for j in 0..m {
            let wi = Polynomial::var(params, i);
            let qj = Polynomial::var(params, k + j);
            components.push(wi.mul(&qj)?);
        }
    }
    let sym2 = MonomialBasis::new(k, 2);
    for mono in sym2.monomials() {
        let mut lifted = Monomial::constant(params);
        for (i, e) in mono.0.iter().enumerate() {
            lifted.0[i] = *e;
        }
        lifted.0[c_index] = 1;
        components.push(Polynomial::monomial(params, lifted, scalar::one()));
    }
    let mut per_param = vec![1u32; params];
    for j in 0..m {
        per_param[k + j] = 2;
    }
    Ok(Parametrization {
        label: format!("sympl_vmrt({k},{m})"),
        param_count: params,
        ambient_dim: k * m + k * (k + 1) / 2,
        components,
        weights: Some(ConeWeights { per_param, degree: 3 }),
    })
}

/// The ten-dimensional spinor variety in P^15, parametrized on the even
/// exterior algebra chart: parameters are a homogenizing scalar `s` and a
/// 5x5 skew matrix `B`; components are `s^2`, the ten `s b_{ij}`, and the
/// five principal 4x4 Pfaffians of `B`.
pub fn spinor10() -> Result<Parametrization, Error> {
    let pairs = sorted_subsets(5, 2);
    let params = 1 + pairs.len(); // s, b_{ij}
    let b_index = |i: usize, j: usize| -> usize {
        debug_assert!(i < j);
        1 + pairs.iter().position(|p| p[0] == i && p[1] == j).unwrap()
    };
    let s = Polynomial::var(params, 0);
    let mut components = Vec::with_capacity(16);
    components.push(s.mul(&s)?);
    for p in &pairs {
        components.push(s.mul(&Polynomial::var(params, b_index(p[0], p[1])))?);
    }
    for l in 0..5 {
        let rest: Vec<usize> = (0..5).filter(|i| *i != l).collect();
        let (i, j, k, m) = (rest[0], rest[1], rest[2], rest[3]);
        // Pfaffian of the skew submatrix on rows/cols {i, j, k, m}.
        let term = |a: usize, b: usize, c: usize, d: usize| -> Result<Polynomial, Error> {
            Polynomial::var(params, b_index(a, b)).mul(&Polynomial::var(params, b_index(c, d)))
        };
        let pf = term(i, j, k, m)?
            .sub(&term(i, k, j, m)?)?
            .add(&term(i, m, j, k)?)?;
        components.push(pf);
    }
    Ok(Parametrization {
        label: "spinor10".to_string(),
        param_count: params,
        ambient_dim: 16,
        components,
        weights: Some(ConeWeights {
            per_param: vec![1; params],
            degree: 2,
        }),
    })
}

/// Cone over the image of `p` with a `t`-dimensional vertex: `t` new
/// parameters appear as `t` new identity components.
pub fn cone_over(p: &Parametrization, t: usize) -> Result<Parametrization, Error> {
    if t < 1 {
        return Err(Error::InvalidParameter(
            "cone_over requires at least one vertex direction".into(),
        ));
    }
    let params = p.param_count + t;
    let widen = |poly: &Polynomial| -> Polynomial {
        let mut out = Polynomial::zero(params);
        for (m, c) in poly.terms() {
            let mut e = m.0.clone();
            e.extend(std::iter::repeat(0).take(t));
            out.add_term(Monomial(e), c.clone());
        }
        out
    };
    let mut components: Vec<Polynomial> = p.components.iter().map(widen).collect();
    for u in 0..t {
        components.push(Polynomial::var(params, p.param_count + u));
    }
    let weights = p.weights.as_ref().map(|w| {
        let mut per_param = w.per_param.clone();
        per_param.extend(std::iter::repeat(w.degree).take(t));
        ConeWeights {
            per_param,
            degree: w.degree,
        }
    });
    Ok(Parametrization {
        label: format!("cone_over({},{t})", p.label),
        param_count: params,
        ambient_dim: p.ambient_dim + t,
        components,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::scalar::{int, random_int_scalar};
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_params(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| random_int_scalar(rng, 7, false)).collect()
    }

    fn all_constructors() -> Vec<Parametrization> {
        vec![
            segre(2, 2).unwrap(),
            segre(2, 3).unwrap(),
            veronese(2, 2).unwrap(),
            veronese(3, 2).unwrap(),
            veronese(2, 3).unwrap(),
            pluecker(2, 4).unwrap(),
            pluecker(2, 5).unwrap(),
            sympl_vmrt(2, 1).unwrap(),
            sympl_vmrt(3, 2).unwrap(),
            spinor10().unwrap(),
            cone_over(&segre(2, 2).unwrap(), 1).unwrap(),
        ]
    }

    #[test]
    fn segre_quadric_vanishes_on_image() {
        let p = segre(2, 2).unwrap();
        assert_eq!(p.ambient_dim, 4);
        assert_eq!(p.param_count, 4);
        let det = parse_polynomial("x0*x3 - x1*x2", 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let w = random_params(&mut rng, 4);
            let x = p.eval(&w).unwrap();
            assert!(det.eval(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn segre_rejects_small_factors() {
        assert!(segre(1, 3).is_err());
        assert!(segre(2, 1).is_err());
    }

    #[test]
    fn segre_4_4_three_by_three_minors_vanish() {
        let p = segre(4, 4).unwrap();
        assert_eq!(p.ambient_dim, 16);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let w = random_params(&mut rng, 8);
            let x = p.eval(&w).unwrap();
            // x as a 4x4 matrix has rank 1, so every 3x3 minor vanishes.
            for rows in sorted_subsets(4, 3) {
                for cols in sorted_subsets(4, 3) {
                    let det = {
                        let m: Vec<Vec<Scalar>> = rows
                            .iter()
                            .map(|&i| cols.iter().map(|&j| x[i * 4 + j].clone()).collect())
                            .collect();
                        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
                    };
                    assert!(det.is_zero());
                }
            }
        }
    }

    #[test]
    fn veronese_conic_relation() {
        let p = veronese(2, 2).unwrap();
        assert_eq!(p.ambient_dim, 3);
        let rel = parse_polynomial("x0*x2 - x1^2", 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let w = random_params(&mut rng, 2);
            assert!(rel.eval(&p.eval(&w).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn veronese_component_order_is_graded_lex() {
        let p = veronese(2, 3).unwrap();
        assert_eq!(p.ambient_dim, 4);
        let rendered: Vec<String> = p.components.iter().map(|c| c.to_string()).collect();
        assert_eq!(rendered, vec!["x0^3", "x0^2*x1", "x0*x1^2", "x1^3"]);
    }

    #[test]
    fn pluecker_relation_vanishes() {
        let p = pluecker(2, 4).unwrap();
        assert_eq!(p.ambient_dim, 6);
        // Coordinates in subset order 01,02,03,12,13,23.
        let rel = parse_polynomial("x0*x5 - x1*x4 + x2*x3", 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let w = random_params(&mut rng, 8);
            assert!(rel.eval(&p.eval(&w).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn pluecker_parameter_validation() {
        assert!(pluecker(1, 4).is_err());
        assert!(pluecker(3, 3).is_err());
        assert_eq!(pluecker(2, 6).unwrap().ambient_dim, 15);
    }

    #[test]
    fn quadric_form_examples() {
        assert_eq!(
            quadric_form(4).unwrap(),
            parse_polynomial("x0*x3 + x1*x2", 4).unwrap()
        );
        assert_eq!(
            quadric_form(3).unwrap(),
            parse_polynomial("x0*x2 + x1^2", 3).unwrap()
        );
        assert!(quadric_form(2).is_err());
    }

    #[test]
    fn quadric_symmetric_matrix_has_full_rank() {
        use crate::matrix::MatrixQ;
        for n in 3..=8 {
            let q = quadric_form(n).unwrap();
            let mut b = MatrixQ::zero(n, n);
            for (m, c) in q.terms() {
                let support: Vec<usize> = (0..n).filter(|i| m.0[*i] > 0).collect();
                match support.len() {
                    1 => b.set(support[0], support[0], c.clone()),
                    2 => {
                        let half = c / int(2);
                        b.set(support[0], support[1], half.clone());
                        b.set(support[1], support[0], half);
                    }
                    _ => unreachable!(),
                }
            }
            assert_eq!(b.rank(), n);
        }
    }

    #[test]
    fn sympl_vmrt_shape_and_sample_point() {
        let p = sympl_vmrt(2, 1).unwrap();
        assert_eq!(p.ambient_dim, 5);
        assert_eq!(p.param_count, 4);
        // w = (1, 0), q = 1, c = 1 maps to (1, 0, 1, 0, 0).
        let x = p
            .eval(&[int(1), int(0), int(1), int(1)])
            .unwrap();
        assert_eq!(x, vec![int(1), int(0), int(1), int(0), int(0)]);

        let p32 = sympl_vmrt(3, 2).unwrap();
        assert_eq!(p32.ambient_dim, 12);
        assert!(sympl_vmrt(1, 1).is_err());
    }

    #[test]
    fn spinor10_highest_weight_point() {
        let p = spinor10().unwrap();
        assert_eq!(p.ambient_dim, 16);
        assert_eq!(p.param_count, 11);
        // B = 0, s = 1 gives the highest-weight point (1, 0, ..., 0).
        let mut params = vec![int(0); 11];
        params[0] = int(1);
        let x = p.eval(&params).unwrap();
        assert_eq!(x[0], int(1));
        assert!(x[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn cone_over_adds_identity_components() {
        let base = segre(2, 2).unwrap();
        let cone = cone_over(&base, 2).unwrap();
        assert_eq!(cone.ambient_dim, base.ambient_dim + 2);
        assert_eq!(cone.param_count, base.param_count + 2);
        let w = vec![int(1), int(2), int(3), int(4), int(5), int(6)];
        let x = cone.eval(&w).unwrap();
        assert_eq!(x[4], int(5));
        assert_eq!(x[5], int(6));
        assert!(cone_over(&base, 0).is_err());
    }

    #[test]
    fn all_constructors_are_weighted_homogeneous_cones() {
        for p in all_constructors() {
            assert!(
                p.cone_weights_consistent(),
                "cone weights fail for {}",
                p.label
            );
        }
    }

    #[test]
    fn cone_invariance_at_random_points() {
        // phi(lambda^w . params) must be a scalar multiple of phi(params).
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for p in all_constructors() {
            let w = p.weights.clone().unwrap();
            for _ in 0..5 {
                let params = random_params(&mut rng, p.param_count);
                let lambda = int(rng.gen_range(2..=5));
                let scaled: Vec<Scalar> = params
                    .iter()
                    .zip(&w.per_param)
                    .map(|(v, e)| {
                        let mut acc = v.clone();
                        for _ in 0..*e {
                            acc *= &lambda;
                        }
                        acc
                    })
                    .collect();
                let x = p.eval(&params).unwrap();
                let y = p.eval(&scaled).unwrap();
                let mut factor = int(1);
                for _ in 0..w.degree {
                    factor *= &lambda;
                }
                for (a, b) in x.iter().zip(&y) {
                    assert_eq!(&(a * &factor), b, "{}", p.label);
                }
            }
        }
    }

    #[test]
    fn descriptor_json_round_trip() {
        let descriptors = vec![
            VarietyDescriptor::Segre { params: [2, 3] },
            VarietyDescriptor::Section {
                of: Box::new(VarietyDescriptor::Pluecker { params: [2, 5] }),
                seed: 12345,
                codim: 2,
            },
            VarietyDescriptor::Projection {
                of: Box::new(VarietyDescriptor::Segre { params: [4, 4] }),
                center: ProjectionCenter::Rank(3),
            },
        ];
        for d in descriptors {
            let text = serde_json::to_string(&d).unwrap();
            let back: VarietyDescriptor = serde_json::from_str(&text).unwrap();
            assert_eq!(back, d);
        }
        let parsed: VarietyDescriptor =
            serde_json::from_str(r#"{"kind":"segre","params":[2,3]}"#).unwrap();
        assert_eq!(parsed, VarietyDescriptor::Segre { params: [2, 3] });
    }
}
