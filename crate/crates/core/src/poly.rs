//! Sparse multivariate polynomials over exact rationals.
//!
//! Monomials are exponent vectors ordered graded-lexicographically (total
//! degree first, then lex with `x0` largest); every listed monomial basis and
//! every coefficient vector in the crate uses this order, largest monomial
//! first. The module also hosts the derivation action of a matrix on forms,
//! sign convention frozen by the first-order flow expansion
//! `f((I + t g) x) = f(x) + t (D_g f)(x) + O(t^2)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::matrix::MatrixQ;
use crate::scalar::{self, Scalar};

/// Exponent vector; total ordering is graded-lex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn constant(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    pub fn var(vars: usize, index: usize) -> Self {
        let mut e = vec![0; vars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|e| *e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Adds one to the exponent of `var`.
    pub fn times_var(&self, var: usize) -> Monomial {
        let mut e = self.0.clone();
        e[var] += 1;
        Monomial(e)
    }

    /// Removes one from the exponent of `var`; `None` if absent.
    pub fn divide_var(&self, var: usize) -> Option<Monomial> {
        if self.0[var] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[var] -= 1;
        Some(Monomial(e))
    }

    /// Smallest variable index with a positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|e| *e > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_monomial(self))
    }
}

fn render_monomial(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| {
            if *e == 1 {
                format!("x{i}")
            } else {
                format!("x{i}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Binomial coefficient as usize; arguments stay desk-scale here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// The ordered list of all degree-`degree` monomials in `vars` variables,
/// largest first in graded-lex. Coordinatizes the degree-`degree` forms.
#[derive(Clone)]
pub struct MonomialBasis {
    pub vars: usize,
    pub degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(vars: usize, degree: usize) -> Self {
        let mut monomials = Vec::with_capacity(binomial(vars + degree - 1, degree));
        let mut current = vec![0u16; vars];
        enumerate_rec(vars, degree, 0, &mut current, &mut monomials);
        debug_assert_eq!(monomials.len(), binomial(vars + degree - 1, degree));
        let index = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        MonomialBasis {
            vars,
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

fn enumerate_rec(
    vars: usize,
    remaining: usize,
    pos: usize,
    current: &mut Vec<u16>,
    out: &mut Vec<Monomial>,
) {
    if pos + 1 == vars {
        current[pos] = remaining as u16;
        out.push(Monomial(current.clone()));
        current[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e as u16;
        enumerate_rec(vars, remaining - e, pos + 1, current, out);
    }
    current[pos] = 0;
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Scalar) -> Self {
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(vars), c);
        }
        p
    }

    pub fn var(vars: usize, index: usize) -> Self {
        let mut p = Polynomial::zero(vars);
        p.terms.insert(Monomial::var(vars, index), Scalar::one());
        p
    }

    pub fn monomial(vars: usize, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.vars(), vars);
        let mut p = Polynomial::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .next_back()
            .map(Monomial::degree)
            .unwrap_or(0)
    }

    /// Common degree of all terms, if the polynomial is homogeneous
    /// (the zero polynomial is homogeneous of any degree).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.vars(), self.vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.vars);
        }
        Polynomial {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * s))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_vars(other)?;
        let mut out = Polynomial::zero(self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut out = Polynomial::constant(self.vars, Scalar::one());
        for _ in 0..e {
            out = out.mul(self).expect("same variable count");
        }
        out
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Result<Polynomial, Error> {
        if i >= self.vars {
            return Err(Error::VariableOutOfRange {
                index: i,
                vars: self.vars,
            });
        }
        let mut out = Polynomial::zero(self.vars);
        for (m, c) in &self.terms {
            if let Some(reduced) = m.divide_var(i) {
                out.add_term(reduced, c * scalar::int(m.0[i] as i64));
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, Error> {
        if point.len() != self.vars {
            return Err(Error::DimensionMismatch {
                context: "polynomial evaluation",
                left: self.vars,
                right: point.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, e) in m.0.iter().enumerate() {
                for _ in 0..*e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes the given polynomials for the variables; used for the
    /// pullback of a form along a parametrization.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial, Error> {
        if images.len() != self.vars {
            return Err(Error::DimensionMismatch {
                context: "polynomial composition",
                left: self.vars,
                right: images.len(),
            });
        }
        let target_vars = images
            .first()
            .map(Polynomial::vars)
            .ok_or(Error::EmptyInput("composition images"))?;
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::constant(target_vars, Scalar::one()), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target_vars);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target_vars, c.clone());
            for (i, e) in m.0.iter().enumerate() {
                let e = *e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e])?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Substitutes variable `k` by `replacement` (which must not involve
    /// `x_k`) and drops that coordinate, reindexing later variables down.
    pub fn eliminate_var(&self, k: usize, replacement: &Polynomial) -> Result<Polynomial, Error> {
        if k >= self.vars {
            return Err(Error::VariableOutOfRange {
                index: k,
                vars: self.vars,
            });
        }
        if replacement.terms.keys().any(|m| m.0[k] > 0) {
            return Err(Error::InvalidParameter(
                "replacement polynomial involves the eliminated variable".into(),
            ));
        }
        let drop = |m: &Monomial| -> Monomial {
            let mut e = m.0.clone();
            e.remove(k);
            Monomial(e)
        };
        let reduced_replacement = Polynomial {
            vars: self.vars - 1,
            terms: replacement
                .terms
                .iter()
                .map(|(m, c)| (drop(m), c.clone()))
                .collect(),
        };
        let mut out = Polynomial::zero(self.vars - 1);
        for (m, c) in &self.terms {
            let e_k = m.0[k] as usize;
            let stripped = {
                let mut e = m.0.clone();
                e[k] = 0;
                drop(&Monomial(e))
            };
            let base = Polynomial::monomial(self.vars - 1, stripped, c.clone());
            let term = base.mul(&reduced_replacement.pow(e_k))?;
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Coefficient vector over the given monomial basis; the polynomial must
    /// be homogeneous of the basis degree (or zero).
    pub fn coefficient_vector(&self, basis: &MonomialBasis) -> Result<Vec<Scalar>, Error> {
        if self.vars != basis.vars {
            return Err(Error::DimensionMismatch {
                context: "coefficient vector",
                left: self.vars,
                right: basis.vars,
            });
        }
        if !self.is_zero() && self.homogeneous_degree() != Some(basis.degree) {
            return Err(Error::InhomogeneousInput {
                expected: basis.degree,
            });
        }
        let mut out = vec![Scalar::zero(); basis.len()];
        for (m, c) in &self.terms {
            let idx = basis
                .index_of(m)
                .expect("homogeneous term must be in the basis");
            out[idx] = c.clone();
        }
        Ok(out)
    }

    /// Rebuilds a polynomial from a coefficient vector over `basis`.
    pub fn from_coefficient_vector(basis: &MonomialBasis, v: &[Scalar]) -> Polynomial {
        assert_eq!(v.len(), basis.len());
        let mut p = Polynomial::zero(basis.vars);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(basis.monomial(i).clone(), c.clone());
            }
        }
        p
    }

    fn check_vars(&self, other: &Polynomial) -> Result<(), Error> {
        if self.vars != other.vars {
            return Err(Error::DimensionMismatch {
                context: "polynomial arithmetic",
                left: self.vars,
                right: other.vars,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c < &Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = render_monomial(m);
            if mono == "1" {
                write!(f, "{}", scalar::render(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", scalar::render(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses the rendering grammar: terms joined by `+`/`-`, each a product of
/// an optional rational coefficient and `xN`/`xN^e` factors.
pub fn parse_polynomial(text: &str, vars: usize) -> Result<Polynomial, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial text".into()));
    }
    if text == "0" {
        return Ok(Polynomial::zero(vars));
    }
    let mut out = Polynomial::zero(vars);
    // Split into signed terms at top level (no parentheses in the grammar).
    let normalized = text.replace('\u{2212}', "-");
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut sign_negative = false;
    let mut seen_any = false;
    for ch in normalized.chars() {
        match ch {
            '+' | '-' if seen_any && !current.trim().is_empty() => {
                terms.push((sign_negative, current.trim().to_string()));
                current = String::new();
                sign_negative = ch == '-';
            }
            '-' if current.trim().is_empty() => {
                sign_negative = !sign_negative;
                seen_any = true;
            }
            '+' if current.trim().is_empty() => {
                seen_any = true;
            }
            _ => {
                if !ch.is_whitespace() {
                    current.push(ch);
                }
                seen_any = true;
            }
        }
    }
    if !current.trim().is_empty() {
        terms.push((sign_negative, current.trim().to_string()));
    }
    if terms.is_empty() {
        return Err(Error::Parse(format!("no terms in {text:?}")));
    }
    for (negative, term) in terms {
        let mut coeff = Scalar::one();
        let mut mono = Monomial::constant(vars);
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in {term:?}")));
            }
            if let Some(rest) = factor.strip_prefix('x') {
                let (var_text, exp) = match rest.split_once('^') {
                    Some((v, e)) => {
                        let e: u16 = e
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                        (v, e)
                    }
                    None => (rest, 1),
                };
                let var: usize = var_text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable in {factor:?}")))?;
                if var >= vars {
                    return Err(Error::VariableOutOfRange { index: var, vars });
                }
                mono.0[var] += exp;
            } else {
                let c = scalar::parse(factor)
                    .ok_or_else(|| Error::Parse(format!("bad coefficient {factor:?}")))?;
                coeff *= c;
            }
        }
        if negative {
            coeff = -coeff;
        }
        out.add_term(mono, coeff);
    }
    Ok(out)
}

/// Derivation of a form along the linear vector field of `g`:
/// `(D_g f)(x) = df_x(g x)`, so `D_g f = sum_{i,j} g[i][j] x_j df/dx_i`.
/// Homogeneous of the same degree as `f`, linear in both arguments.
pub fn derivation_apply(g: &MatrixQ, f: &Polynomial) -> Result<Polynomial, Error> {
    let n = f.vars();
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch {
            context: "derivation",
            left: g.rows(),
            right: n,
        });
    }
    let mut out = Polynomial::zero(n);
    for i in 0..n {
        let fi = f.partial(i)?;
        if fi.is_zero() {
            continue;
        }
        for (j, coeff) in g.row_entries(i) {
            let shifted = Polynomial {
                vars: n,
                terms: fi
                    .terms()
                    .map(|(m, c)| (m.times_var(*j as usize), c * coeff))
                    .collect(),
            };
            out = out.add(&shifted)?;
        }
    }
    Ok(out)
}
