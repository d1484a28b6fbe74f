//! Polynomials over the rational quaternions with a central indeterminate.
//!
//! Evaluation is on the right: `f(α) = Σ aᵢ αⁱ`. It is not multiplicative in
//! general, but it is whenever one factor has rational coefficients.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::quat::{MinPoly, Quat, RingTag};

/// Largest degree any public operation will produce.
pub const MAX_DEGREE: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Quat>,
}

impl QPoly {
    /// Builds from coefficients listed from degree 0 upward.
    pub fn new(mut coeffs: Vec<Quat>) -> Result<QPoly> {
        while coeffs.last().is_some_and(Quat::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::DegreeCap(coeffs.len() - 1));
        }
        Ok(QPoly { coeffs })
    }

    pub fn zero() -> QPoly {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: Quat) -> QPoly {
        QPoly::new(vec![c]).expect("degree 0")
    }

    pub fn one() -> QPoly {
        QPoly::constant(Quat::ONE)
    }

    pub fn x() -> QPoly {
        QPoly::linear(Quat::ONE, Quat::ZERO)
    }

    /// `lead·x + c`.
    pub fn linear(lead: Quat, c: Quat) -> QPoly {
        QPoly::new(vec![c, lead]).expect("degree 1")
    }

    /// `x - β`.
    pub fn x_minus(beta: &Quat) -> Result<QPoly> {
        Ok(QPoly::linear(Quat::ONE, beta.checked_neg()?))
    }

    pub fn from_min_poly(m: &MinPoly) -> QPoly {
        QPoly::from_rationals(&m.coefficients())
    }

    pub fn from_rationals(cs: &[Rational64]) -> QPoly {
        QPoly::new(cs.iter().map(|&r| Quat::rational(r)).collect()).expect("small degree")
    }

    pub fn coeffs(&self) -> &[Quat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Quat {
        self.coeffs.get(k).copied().unwrap_or(Quat::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn has_rational_coefficients(&self) -> bool {
        self.coeffs.iter().all(Quat::is_rational)
    }

    pub fn checked_add(&self, rhs: &QPoly) -> Result<QPoly> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        (0..n)
            .map(|k| self.coeff(k).checked_add(&rhs.coeff(k)))
            .collect::<Result<Vec<_>>>()
            .and_then(QPoly::new)
    }

    pub fn checked_sub(&self, rhs: &QPoly) -> Result<QPoly> {
        self.checked_add(&rhs.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<QPoly> {
        self.coeffs
            .iter()
            .map(Quat::checked_neg)
            .collect::<Result<Vec<_>>>()
            .and_then(QPoly::new)
    }

    /// Convolution; coefficients of `self` stay on the left.
    pub fn checked_mul(&self, rhs: &QPoly) -> Result<QPoly> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(QPoly::zero());
        }
        let deg = self.coeffs.len() + rhs.coeffs.len() - 2;
        if deg > MAX_DEGREE {
            return Err(Error::DegreeCap(deg));
        }
        let mut out = vec![Quat::ZERO; deg + 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in rhs.coeffs.iter().enumerate() {
                out[a + b] = out[a + b].checked_add(&ca.checked_mul(cb)?)?;
            }
        }
        QPoly::new(out)
    }

    /// `c·f`.
    pub fn scale_left(&self, c: &Quat) -> Result<QPoly> {
        self.coeffs
            .iter()
            .map(|a| c.checked_mul(a))
            .collect::<Result<Vec<_>>>()
            .and_then(QPoly::new)
    }

    /// `f·c`.
    pub fn scale_right(&self, c: &Quat) -> Result<QPoly> {
        self.coeffs
            .iter()
            .map(|a| a.checked_mul(c))
            .collect::<Result<Vec<_>>>()
            .and_then(QPoly::new)
    }

    pub fn div_int(&self, k: i64) -> Result<QPoly> {
        self.coeffs
            .iter()
            .map(|a| a.div_int(k))
            .collect::<Result<Vec<_>>>()
            .and_then(QPoly::new)
    }

    /// `Σ aᵢ αⁱ` by Horner's rule, multiplying by `α` on the right.
    pub fn eval_right(&self, alpha: &Quat) -> Result<Quat> {
        let mut acc = Quat::ZERO;
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(alpha)?.checked_add(c)?;
        }
        Ok(acc)
    }

    /// `f = q·m + r` with `deg r < deg m`.
    pub fn divmod_central(&self, m: &MinPoly) -> Result<(QPoly, QPoly)> {
        let mc: Vec<Quat> = m.coefficients().into_iter().map(Quat::rational).collect();
        let dm = mc.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dm {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![Quat::ZERO; rem.len() - dm];
        for top in (dm..rem.len()).rev() {
            let lead = rem[top];
            if lead.is_zero() {
                continue;
            }
            let shift = top - dm;
            quot[shift] = lead;
            for (k, c) in mc.iter().enumerate() {
                rem[shift + k] = rem[shift + k].checked_sub(&lead.checked_mul(c)?)?;
            }
        }
        rem.truncate(dm);
        Ok((QPoly::new(quot)?, QPoly::new(rem)?))
    }

    pub fn is_integer_valued(&self, points: &[Quat], ring: RingTag) -> Result<bool> {
        for p in points {
            if !self.eval_right(p)?.in_ring(ring) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f(inner(x)) = Σ aᵢ inner(x)ⁱ`.
    pub fn compose_central(&self, inner: &QPoly) -> Result<QPoly> {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(inner)?.checked_add(&QPoly::constant(*c))?;
        }
        Ok(acc)
    }

    /// Writes `f = g/n` with `g` over the order and `n ≥ 1` minimal; returns
    /// the coefficients of `g` and `n`.
    pub fn over_order(&self, ring: RingTag) -> Result<(Vec<Quat>, i64)> {
        let mut n: i64 = 1;
        for c in &self.coeffs {
            n = n.lcm(&order_denominator(c, ring));
        }
        let num = self
            .coeffs
            .iter()
            .map(|c| c.scale(n))
            .collect::<Result<Vec<_>>>()?;
        Ok((num, n))
    }
}

/// Smallest `n ≥ 1` with `n·c` in the order.
pub(crate) fn order_denominator(c: &Quat, ring: RingTag) -> i64 {
    let d = c.denominator();
    if ring == RingTag::H && d % 2 == 0 && c.numerators().iter().all(|v| v % 2 != 0) {
        d / 2
    } else {
        d
    }
}

/// `a_n x^n + … + a_0`; compound coefficients are bracketed.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let simple = !s.contains('/') && !s[1..].contains(['+', '-']);
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ if simple => (false, s),
                _ => (false, format!("[{s}]")),
            };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if k == 0 || body != "1" {
                f.write_str(&body)?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}
