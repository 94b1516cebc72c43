//! Sparse multivariate polynomials over complex doubles.
//!
//! Variables are addressed by 1-based index, matching the written names
//! `z1, z2, ..`: variable `k` of a polynomial in `M` variables must satisfy
//! `1 <= k <= M`.

mod uni;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub use num_complex::Complex64;
pub use uni::UniPoly;

use crate::PolyError;

/// Relative threshold below which trailing coefficients of a restriction are
/// considered cancelled and dropped.
pub const RESTRICT_DEAD_COEFF: f64 = 1e-14;

/// Upper bound on the number of stored terms any arithmetic result may have.
pub const MAX_TERMS: usize = 200_000;

/// Returns `Err` unless both parts of `c` are finite.
pub fn ensure_finite(c: Complex64) -> Result<Complex64, PolyError> {
    if c.re.is_finite() && c.im.is_finite() {
        Ok(c)
    } else {
        Err(PolyError::NonFinite)
    }
}

pub(crate) fn ensure_finite_slice(values: &[Complex64]) -> Result<(), PolyError> {
    values
        .iter()
        .try_for_each(|&c| ensure_finite(c).map(|_| ()))
}

/// Exponent vector of a single term.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared left to right (so `z1` sorts above `z2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    /// The monomial `z_k` (1-based `k`).
    pub fn var(num_vars: usize, k: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[k - 1] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `Π point_j^{e_j}`.
    pub fn evaluate(&self, point: &[Complex64]) -> Complex64 {
        self.0
            .iter()
            .zip(point)
            .fold(Complex64::new(1.0, 0.0), |acc, (&e, &z)| acc * z.powu(e))
    }

    /// `Π |point_j|^{e_j}`.
    pub fn evaluate_abs(&self, point: &[Complex64]) -> f64 {
        self.0
            .iter()
            .zip(point)
            .fold(1.0, |acc, (&e, z)| acc * z.norm().powi(e as i32))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `num_vars` complex variables.
///
/// Terms are kept in canonical form: no stored coefficient is zero, so the
/// null polynomial is exactly the empty term map.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Complex64>,
}

impl MultiPoly {
    /// The null polynomial in `num_vars` variables.
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Complex64) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::one(num_vars), c);
        p
    }

    /// The coordinate polynomial `z_k`.
    pub fn var(num_vars: usize, k: usize) -> Result<Self, PolyError> {
        check_index(num_vars, k)?;
        let mut p = Self::zero(num_vars);
        p.terms
            .insert(Monomial::var(num_vars, k), Complex64::new(1.0, 0.0));
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// monomials are summed and zero results dropped.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, Complex64)>,
    {
        if num_vars == 0 {
            return Err(PolyError::NoVariables);
        }
        let mut p = Self::zero(num_vars);
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(PolyError::DimensionMismatch {
                    expected: num_vars,
                    found: exps.len(),
                });
            }
            ensure_finite(c)?;
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Complex64) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let sum = *e.get() + c;
                if sum.re == 0.0 && sum.im == 0.0 {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                if c.re != 0.0 || c.im != 0.0 {
                    e.insert(c);
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// True for the null polynomial.
    pub fn is_null(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for nonzero constants and for the null polynomial.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_constant)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Complex64 {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    /// Total degree; `None` for the null polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Largest coefficient magnitude (0 for the null polynomial).
    pub fn coeff_scale(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Canonicality audit: every monomial has the right length and no stored
    /// coefficient is zero or non-finite.
    pub fn is_canonical(&self) -> bool {
        self.num_vars > 0
            && self.terms.iter().all(|(m, c)| {
                m.num_vars() == self.num_vars
                    && (c.re != 0.0 || c.im != 0.0)
                    && c.re.is_finite()
                    && c.im.is_finite()
            })
    }

    fn check_point(&self, point: &[Complex64]) -> Result<(), PolyError> {
        if point.len() != self.num_vars {
            return Err(PolyError::DimensionMismatch {
                expected: self.num_vars,
                found: point.len(),
            });
        }
        ensure_finite_slice(point)
    }

    /// `Σ coeff · Π point_j^{e_j}`, summed in canonical term order.
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64, PolyError> {
        self.check_point(point)?;
        Ok(self.terms.iter().map(|(m, &c)| c * m.evaluate(point)).sum())
    }

    /// `Σ |coeff| · Π |point_j|^{e_j}`: the magnitude scale against which
    /// evaluation roundoff is measured.
    pub fn evaluate_abs(&self, point: &[Complex64]) -> Result<f64, PolyError> {
        self.check_point(point)?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| c.norm() * m.evaluate_abs(point))
            .sum())
    }

    /// Exact partial derivative with respect to `z_k`.
    pub fn partial_derivative(&self, k: usize) -> Result<MultiPoly, PolyError> {
        check_index(self.num_vars, k)?;
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, &c) in &self.terms {
            let e = m.0[k - 1];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[k - 1] = e - 1;
            out.add_term(Monomial(exps), c * e as f64);
        }
        Ok(out)
    }

    /// The univariate polynomial `w ↦ P(.., w at slot k, ..)` with the other
    /// coordinates fixed to `others` (length `M-1`, in order, slot `k` omitted).
    ///
    /// Trailing coefficients smaller than [`RESTRICT_DEAD_COEFF`] times the
    /// largest collected coefficient are truncated.
    pub fn restrict(&self, k: usize, others: &[Complex64]) -> Result<UniPoly, PolyError> {
        check_index(self.num_vars, k)?;
        if others.len() + 1 != self.num_vars {
            return Err(PolyError::DimensionMismatch {
                expected: self.num_vars - 1,
                found: others.len(),
            });
        }
        ensure_finite_slice(others)?;
        let point = insert_coordinate(others, k, Complex64::new(1.0, 0.0));
        let degree = self.terms.keys().map(|m| m.0[k - 1]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![Complex64::default(); degree + 1];
        for (m, &c) in &self.terms {
            let e = m.0[k - 1] as usize;
            // slot k of `point` is 1, so it contributes nothing
            coeffs[e] += c * m.evaluate(&point);
        }
        let largest = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let cutoff = RESTRICT_DEAD_COEFF * largest;
        while coeffs.last().is_some_and(|c| c.norm() <= cutoff) {
            coeffs.pop();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same_vars(other)?;
        if self.terms.len().saturating_mul(other.terms.len()) > MAX_TERMS * 8 {
            return Err(PolyError::TooLarge);
        }
        let mut out = MultiPoly::zero(self.num_vars);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        if out.terms.len() > MAX_TERMS {
            return Err(PolyError::TooLarge);
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Result<MultiPoly, PolyError> {
        ensure_finite(s)?;
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        Ok(out)
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u32) -> Result<MultiPoly, PolyError> {
        let mut result = MultiPoly::constant(self.num_vars, Complex64::new(1.0, 0.0));
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiplies each coefficient by `f(monomial)`; used for coordinate
    /// rescalings. Zero results are dropped.
    pub fn map_coefficients<F>(&self, mut f: F) -> MultiPoly
    where
        F: FnMut(&Monomial, Complex64) -> Complex64,
    {
        let mut out = MultiPoly::zero(self.num_vars);
        for (m, &c) in &self.terms {
            out.add_term(m.clone(), f(m, c));
        }
        out
    }

    /// Re-embeds the polynomial into a space with more variables.
    pub fn with_num_vars(&self, num_vars: usize) -> Result<MultiPoly, PolyError> {
        let used = self.max_var_used();
        if num_vars == 0 || num_vars < used {
            return Err(PolyError::DimensionMismatch {
                expected: used.max(1),
                found: num_vars,
            });
        }
        Ok(MultiPoly {
            num_vars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| {
                    let mut e = m.0.clone();
                    e.resize(num_vars, 0);
                    (Monomial(e), c)
                })
                .collect(),
        })
    }

    /// Highest 1-based variable index appearing with a positive exponent.
    pub fn max_var_used(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|m| m.0.iter().rposition(|&e| e > 0))
            .map(|i| i + 1)
            .max()
            .unwrap_or(0)
    }

    /// Converts a polynomial in one variable to dense form.
    pub fn to_univariate(&self) -> Result<UniPoly, PolyError> {
        if self.num_vars != 1 {
            return Err(PolyError::DimensionMismatch {
                expected: 1,
                found: self.num_vars,
            });
        }
        let degree = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Complex64::default(); degree + 1];
        for (m, &c) in &self.terms {
            coeffs[m.0[0] as usize] = c;
        }
        Ok(UniPoly::new(coeffs))
    }

    fn check_same_vars(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.num_vars != other.num_vars {
            return Err(PolyError::DimensionMismatch {
                expected: self.num_vars,
                found: other.num_vars,
            });
        }
        Ok(())
    }
}

impl From<&UniPoly> for MultiPoly {
    fn from(p: &UniPoly) -> Self {
        let mut out = MultiPoly::zero(1);
        for (e, &c) in p.coeffs().iter().enumerate() {
            out.add_term(Monomial(vec![e as u32]), c);
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_poly(self))
    }
}

fn check_index(num_vars: usize, k: usize) -> Result<(), PolyError> {
    if k == 0 || k > num_vars {
        Err(PolyError::IndexOutOfRange { index: k, num_vars })
    } else {
        Ok(())
    }
}

/// Rebuilds a full point from the `M-1` fixed coordinates and the value of
/// coordinate `k` (1-based).
pub fn insert_coordinate(others: &[Complex64], k: usize, value: Complex64) -> Vec<Complex64> {
    let mut point = Vec::with_capacity(others.len() + 1);
    point.extend_from_slice(&others[..k - 1]);
    point.push(value);
    point.extend_from_slice(&others[k - 1..]);
    point
}

/// Drops coordinate `k` (1-based) from a point.
pub fn omit_coordinate(point: &[Complex64], k: usize) -> Vec<Complex64> {
    point
        .iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != k)
        .map(|(_, &c)| c)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(num_vars: usize, terms: &[(&[u32], Complex64)]) -> MultiPoly {
        MultiPoly::from_terms(num_vars, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn evaluate_product_minus_one_at_i_i() {
        let p = poly(2, &[(&[1, 1], c(1.0, 0.0)), (&[0, 0], c(-1.0, 0.0))]);
        assert_eq!(
            p.evaluate(&[c(0.0, 1.0), c(0.0, 1.0)]).unwrap(),
            c(-2.0, 0.0)
        );
    }

    #[test]
    fn evaluate_cubic_at_real_root() {
        let p = poly(
            1,
            &[
                (&[3], c(1.0, 0.0)),
                (&[2], c(-2.0, 0.0)),
                (&[1], c(1.0, 0.0)),
                (&[0], c(-2.0, 0.0)),
            ],
        );
        assert_eq!(p.evaluate(&[c(2.0, 0.0)]).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn evaluate_rejects_bad_points() {
        let p = MultiPoly::var(2, 1).unwrap();
        assert!(matches!(
            p.evaluate(&[c(1.0, 0.0)]),
            Err(PolyError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            p.evaluate(&[c(f64::NAN, 0.0), c(0.0, 0.0)]),
            Err(PolyError::NonFinite)
        ));
    }

    #[test]
    fn derivatives() {
        let p = poly(2, &[(&[2, 1], c(1.0, 0.0))]);
        assert_eq!(
            p.partial_derivative(1).unwrap(),
            poly(2, &[(&[1, 1], c(2.0, 0.0))])
        );
        assert_eq!(
            p.partial_derivative(2).unwrap(),
            poly(2, &[(&[2, 0], c(1.0, 0.0))])
        );
        assert!(p.partial_derivative(0).is_err());
        assert!(p.partial_derivative(3).is_err());

        let cubic = poly(
            1,
            &[
                (&[3], c(1.0, 0.0)),
                (&[2], c(-2.0, 0.0)),
                (&[1], c(1.0, 0.0)),
                (&[0], c(-2.0, 0.0)),
            ],
        );
        let expected = poly(
            1,
            &[
                (&[2], c(3.0, 0.0)),
                (&[1], c(-4.0, 0.0)),
                (&[0], c(1.0, 0.0)),
            ],
        );
        assert_eq!(cubic.partial_derivative(1).unwrap(), expected);
        assert!(MultiPoly::constant(1, c(3.0, 0.0))
            .partial_derivative(1)
            .unwrap()
            .is_null());
    }

    #[test]
    fn restrictions() {
        let p = poly(2, &[(&[2, 0], c(1.0, 0.0)), (&[0, 2], c(1.0, 0.0))]);
        let f = p.restrict(1, &[c(0.0, 1.0)]).unwrap();
        assert_eq!(f.coeffs(), &[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);

        let q = poly(2, &[(&[1, 1], c(1.0, 0.0)), (&[0, 0], c(-1.0, 0.0))]);
        let f = q.restrict(1, &[c(2.0, 0.0)]).unwrap();
        assert_eq!(f.coeffs(), &[c(-1.0, 0.0), c(2.0, 0.0)]);

        let r = poly(2, &[(&[1, 1], c(1.0, 0.0))]);
        assert!(r.restrict(1, &[c(0.0, 0.0)]).unwrap().is_null());

        assert!(r.restrict(1, &[]).is_err());
        assert!(r.restrict(3, &[c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn restriction_truncates_cancelled_top_coefficient() {
        // z1*z2 - z1 + 5 at z2 = 1: the w coefficient cancels
        let p = poly(
            2,
            &[
                (&[1, 1], c(1.0, 0.0)),
                (&[1, 0], c(-1.0, 0.0)),
                (&[0, 0], c(5.0, 0.0)),
            ],
        );
        let f = p.restrict(1, &[c(1.0, 0.0)]).unwrap();
        assert_eq!(f.degree(), Some(0));
    }

    #[test]
    fn ring_operations() {
        let z = MultiPoly::var(1, 1).unwrap();
        let one = MultiPoly::constant(1, c(1.0, 0.0));
        let prod = z.add(&one).unwrap().mul(&z.sub(&one).unwrap()).unwrap();
        assert_eq!(prod, poly(1, &[(&[2], c(1.0, 0.0)), (&[0], c(-1.0, 0.0))]));

        let minus_p = prod.scale(c(-1.0, 0.0)).unwrap();
        let sum = prod.add(&minus_p).unwrap();
        assert!(sum.is_null() && sum.is_canonical());

        let two = MultiPoly::constant(1, c(2.0, 0.0));
        let cubic = z
            .sub(&two)
            .unwrap()
            .mul(&z.pow(2).unwrap().add(&one).unwrap())
            .unwrap();
        let expected = poly(
            1,
            &[
                (&[3], c(1.0, 0.0)),
                (&[2], c(-2.0, 0.0)),
                (&[1], c(1.0, 0.0)),
                (&[0], c(-2.0, 0.0)),
            ],
        );
        assert_eq!(cubic, expected);

        assert!(z.add(&MultiPoly::var(2, 1).unwrap()).is_err());
        assert!(z.mul(&MultiPoly::var(2, 1).unwrap()).is_err());
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::new(vec![2, 0]);
        let b = Monomial::new(vec![0, 3]);
        let c = Monomial::new(vec![1, 1]);
        let d = Monomial::new(vec![0, 2]);
        assert!(a < b);
        assert!(d < c && c < a);
    }

    #[test]
    fn max_var_and_embedding() {
        let p = poly(3, &[(&[1, 0, 0], c(1.0, 0.0))]);
        assert_eq!(p.max_var_used(), 1);
        let q = p.with_num_vars(1).unwrap();
        assert_eq!(q.num_vars(), 1);
        assert!(poly(3, &[(&[0, 0, 1], c(1.0, 0.0))])
            .with_num_vars(2)
            .is_err());
    }

    #[test]
    fn insert_and_omit_are_inverse() {
        let others = [c(1.0, 0.0), c(2.0, 0.0)];
        let full = insert_coordinate(&others, 2, c(9.0, 0.0));
        assert_eq!(full, vec![c(1.0, 0.0), c(9.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(omit_coordinate(&full, 2), others.to_vec());
    }
}
