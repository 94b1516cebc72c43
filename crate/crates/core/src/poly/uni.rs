use num_complex::Complex64;

/// Dense univariate polynomial; `coeffs[j]` multiplies `w^j`.
///
/// Trailing exact zeros are trimmed on construction, so the leading
/// coefficient is nonzero unless the polynomial is null (empty vector).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct UniPoly {
    coeffs: Vec<Complex64>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![Complex64::new(1.0, 0.0)])
    }

    /// Monic polynomial with exactly the given multiset of roots.
    /// An empty root list gives the constant 1.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            // multiply by (w - r)
            coeffs.push(Complex64::default());
            for j in (0..coeffs.len()).rev() {
                let lower = if j > 0 {
                    coeffs[j - 1]
                } else {
                    Complex64::default()
                };
                coeffs[j] = lower - r * coeffs[j];
            }
        }
        UniPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_null(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the null polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True for nonzero constants and for the null polynomial.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    /// Largest coefficient magnitude.
    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::default(), |acc, &c| acc * w + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, w: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::default();
        let mut dp = Complex64::default();
        for &c in self.coeffs.iter().rev() {
            dp = dp * w + p;
            p = p * w + c;
        }
        (p, dp)
    }

    /// `Σ |c_j| |w|^j`.
    pub fn eval_abs(&self, w: Complex64) -> f64 {
        let r = w.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_null() || other.is_null() {
            return UniPoly::zero();
        }
        let mut out = vec![Complex64::default(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, s: Complex64) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }
}
