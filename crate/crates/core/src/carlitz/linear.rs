use std::fmt;

use num_rational::Ratio;

use crate::algebra::{min_prec, Field, Fq, FqPoly, Scalar};

/// An F_q-linear polynomial `sum_j u_j t^(q^j)`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for LinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.field.q();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, u)| !(u.is_exact() && u.is_zero()))
            .map(|(j, u)| format!("({u:?})*t^{}", (q as u64).pow(j as u32)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl LinearPoly {
    /// Trailing exact zeros are dropped; series coefficients are kept since
    /// they carry precision.
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Scalar>) -> LinearPoly {
        while coeffs.last().is_some_and(|u| u.is_exact() && u.is_zero()) {
            coeffs.pop();
        }
        LinearPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> LinearPoly {
        LinearPoly { field: field.clone(), coeffs: Vec::new() }
    }

    /// `u * t^(q^j)`
    pub fn monomial(field: &Field, j: usize, u: Scalar) -> LinearPoly {
        let mut coeffs = vec![Scalar::zero(field); j];
        coeffs.push(u);
        LinearPoly::from_coeffs(field, coeffs)
    }

    /// `t`
    pub fn identity(field: &Field) -> LinearPoly {
        LinearPoly::monomial(field, 0, Scalar::one(field))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `t^(q^j)`.
    pub fn coeff(&self, j: usize) -> Scalar {
        self.coeffs.get(j).cloned().unwrap_or_else(|| Scalar::zero(&self.field))
    }

    /// Number of coefficient slots.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn zip(&self, other: &LinearPoly, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> LinearPoly {
        let n = self.len().max(other.len());
        let coeffs = (0..n).map(|j| op(&self.coeff(j), &other.coeff(j))).collect();
        LinearPoly::from_coeffs(&self.field, coeffs)
    }

    fn map(&self, op: impl Fn(usize, &Scalar) -> Scalar) -> LinearPoly {
        let coeffs = self.coeffs.iter().enumerate().map(|(j, u)| op(j, u)).collect();
        LinearPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn add(&self, other: &LinearPoly) -> LinearPoly {
        self.zip(other, Scalar::add)
    }

    pub fn sub(&self, other: &LinearPoly) -> LinearPoly {
        self.zip(other, Scalar::sub)
    }

    pub fn neg(&self) -> LinearPoly {
        self.map(|_, u| u.neg())
    }

    pub fn scale(&self, c: &Scalar) -> LinearPoly {
        self.map(|_, u| u.mul(c))
    }

    pub fn scale_fq(&self, c: Fq) -> LinearPoly {
        self.map(|_, u| u.scale(c))
    }

    /// The function `t -> phi(t)^q`: coefficients raised to the q-th power and
    /// every exponent moved up one step.
    pub fn frobenius(&self) -> LinearPoly {
        let mut coeffs = vec![Scalar::zero(&self.field)];
        coeffs.extend(self.coeffs.iter().map(Scalar::frobenius));
        LinearPoly::from_coeffs(&self.field, coeffs)
    }

    /// `phi^(q^n)` as a function.
    pub fn frobenius_pow(&self, n: u32) -> LinearPoly {
        (0..n).fold(self.clone(), |acc, _| acc.frobenius())
    }

    /// `t -> phi(x t)`.
    pub fn scale_arg_x(&self) -> LinearPoly {
        let q = self.field.q() as usize;
        self.map(|j, u| u.mul_poly(&FqPoly::monomial(&self.field, Fq::ONE, q.pow(j as u32))))
    }

    /// `phi(xt) - x phi(t)`, computed from the definition.
    pub fn difference(&self) -> LinearPoly {
        let x = Scalar::from(FqPoly::x(&self.field));
        self.scale_arg_x().sub(&self.scale(&x))
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(&self.field);
        let mut power = t.clone();
        for (j, u) in self.coeffs.iter().enumerate() {
            if j > 0 {
                power = power.frobenius();
            }
            if u.is_exact() && u.is_zero() {
                continue;
            }
            acc = acc.add(&u.mul(&power));
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Coefficientwise comparison; the precision is `None` when every
    /// compared coefficient was exact.
    pub fn agree(&self, other: &LinearPoly) -> (bool, Option<Ratio<i64>>) {
        let n = self.len().max(other.len());
        let mut ok = true;
        let mut prec = None;
        for j in 0..n {
            let (eq, p) = self.coeff(j).agree(&other.coeff(j));
            ok &= eq;
            prec = min_prec(prec, p);
        }
        (ok, prec)
    }
}
