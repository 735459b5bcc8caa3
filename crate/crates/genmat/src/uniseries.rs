//! Univariate formal power series over the rationals, truncated at a fixed
//! order, plus the closed-form coefficient series of the exponential
//! calculus:
//!
//! * `A(w) = sum_{n>=0} w^n / (2n+1)!`  (sinh(sqrt(w))/sqrt(w))
//! * `B(w) = sum_{n>=0} w^n / (2n+2)!`  ((cosh(sqrt(w)) - 1)/w)
//! * `C(w) = sum_{n>=1} w^n / (2n)!`    (cosh(sqrt(w)) - 1)
//!
//! `A` and `B` drive the quadratic exponential formula `Q = I + A*M + B*M^2`;
//! the reversion of `C` recovers the eigenvalue datum from a trace.

use std::fmt;

use num_traits::Zero;

use crate::rat::{format_rat, inv_factorial, Rat};
use crate::series::TruncSeries;

/// Coefficients `c[k]` for `w^k`, `k = 0..=order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<Rat>,
    order: u32,
}

impl UniSeries {
    pub fn new(mut coeffs: Vec<Rat>, order: u32) -> UniSeries {
        coeffs.resize((order as usize) + 1, Rat::zero());
        UniSeries { coeffs, order }
    }

    pub fn zero(order: u32) -> UniSeries {
        UniSeries::new(Vec::new(), order)
    }

    pub fn constant(c: Rat, order: u32) -> UniSeries {
        UniSeries::new(vec![c], order)
    }

    pub fn one(order: u32) -> UniSeries {
        UniSeries::constant(Rat::from_integer(1.into()), order)
    }

    /// The identity series `w`.
    pub fn var(order: u32) -> UniSeries {
        UniSeries::new(vec![Rat::zero(), Rat::from_integer(1.into())], order)
    }

    /// Builds from a closed-form coefficient rule.
    pub fn from_fn(order: u32, f: impl Fn(u32) -> Rat) -> UniSeries {
        UniSeries::new((0..=order).map(f).collect(), order)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, k: u32) -> Rat {
        self.coeffs
            .get(k as usize)
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Index of the lowest nonzero coefficient, or `order + 1` when none.
    pub fn val(&self) -> u32 {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| k as u32)
            .unwrap_or(self.order + 1)
    }

    pub fn truncated(&self, order: u32) -> UniSeries {
        UniSeries::new(
            self.coeffs[..=(order.min(self.order) as usize)].to_vec(),
            order.min(self.order),
        )
    }

    pub fn scale(&self, r: &Rat) -> UniSeries {
        UniSeries::new(self.coeffs.iter().map(|c| c * r).collect(), self.order)
    }

    fn add_impl(&self, other: &UniSeries, negate: bool) -> UniSeries {
        let order = self.order.min(other.order);
        let coeffs = (0..=order as usize)
            .map(|k| {
                if negate {
                    &self.coeffs[k] - &other.coeffs[k]
                } else {
                    &self.coeffs[k] + &other.coeffs[k]
                }
            })
            .collect();
        UniSeries::new(coeffs, order)
    }

    /// Composition `self(inner)`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &UniSeries) -> UniSeries {
        assert!(
            inner.coeff(0).is_zero(),
            "composition requires zero constant term"
        );
        let v = inner.val().max(1);
        let order = inner
            .order
            .min((self.order + 1).saturating_mul(v).saturating_sub(1));
        let top = (order / v).min(self.order);
        let mut acc = UniSeries::constant(self.coeff(top), order);
        for k in (0..top).rev() {
            acc = &(&acc * inner) + &UniSeries::constant(self.coeff(k), order);
        }
        acc
    }

    /// `exp(self)`; requires zero constant term.
    pub fn exp(&self) -> UniSeries {
        assert!(self.coeff(0).is_zero(), "exp requires zero constant term");
        let mut acc = UniSeries::one(self.order);
        let mut pw = UniSeries::one(self.order);
        for n in 1..=self.order {
            pw = &pw * self;
            if pw.is_zero() {
                break;
            }
            acc = &acc + &pw.scale(&inv_factorial(n));
        }
        acc
    }

    /// `log(1 + self)`; requires zero constant term.
    pub fn log1p(&self) -> UniSeries {
        assert!(self.coeff(0).is_zero(), "log1p requires zero constant term");
        let mut acc = UniSeries::zero(self.order);
        let mut pw = UniSeries::one(self.order);
        for n in 1..=self.order {
            pw = &pw * self;
            if pw.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            acc = &acc + &pw.scale(&crate::rat::rat(sign, i64::from(n)));
        }
        acc
    }

    /// Compositional inverse: `r` with `self(r(w)) = w` up to the order.
    /// Requires zero constant term and an invertible linear coefficient.
    /// Solved layer by layer with undetermined coefficients.
    pub fn reverse(&self) -> UniSeries {
        assert!(self.coeff(0).is_zero(), "reversion requires zero constant term");
        let c1 = self.coeff(1);
        assert!(!c1.is_zero(), "reversion requires nonzero linear coefficient");
        let mut r = UniSeries::zero(self.order);
        if self.order == 0 {
            return r;
        }
        r.coeffs[1] = c1.recip();
        for k in 2..=self.order {
            let probe = self.compose(&r);
            let defect = probe.coeff(k);
            r.coeffs[k as usize] = -(defect / &c1);
        }
        r
    }

    /// Substitutes a multivariate series with positive valuation for `w`.
    /// The result is truncated at `g`'s order.
    pub fn compose_multi(&self, g: &TruncSeries) -> TruncSeries {
        assert!(
            g.constant_term().is_zero(),
            "composition requires zero constant term"
        );
        let v = g.val().max(1);
        let order = g
            .order()
            .min((self.order + 1).saturating_mul(v).saturating_sub(1));
        let top = (order / v).min(self.order);
        let vars = g.vars();
        let mut acc = TruncSeries::constant(vars, self.coeff(top), order);
        for k in (0..top).rev() {
            acc = &(&acc * g).truncated(order)
                + &TruncSeries::constant(vars, self.coeff(k), order);
        }
        acc
    }
}

impl std::ops::Add for &UniSeries {
    type Output = UniSeries;
    fn add(self, other: &UniSeries) -> UniSeries {
        self.add_impl(other, false)
    }
}

impl std::ops::Sub for &UniSeries {
    type Output = UniSeries;
    fn sub(self, other: &UniSeries) -> UniSeries {
        self.add_impl(other, true)
    }
}

impl std::ops::Mul for &UniSeries {
    type Output = UniSeries;
    fn mul(self, other: &UniSeries) -> UniSeries {
        let order = self.order.min(other.order);
        let mut coeffs = vec![Rat::zero(); order as usize + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order as usize + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order as usize {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        UniSeries::new(coeffs, order)
    }
}

impl fmt::Display for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match k {
                0 => format_rat(&num_traits::Signed::abs(c)),
                1 => format!("{}*w", format_rat(&num_traits::Signed::abs(c))),
                _ => format!("{}*w^{}", format_rat(&num_traits::Signed::abs(c)), k),
            };
            if first {
                if num_traits::Signed::is_negative(c) {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if num_traits::Signed::is_negative(c) {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `A(w) = sum w^n / (2n+1)!`.
pub fn a_series(order: u32) -> UniSeries {
    UniSeries::from_fn(order, |n| inv_factorial(2 * n + 1))
}

/// `B(w) = sum w^n / (2n+2)!`.
pub fn b_series(order: u32) -> UniSeries {
    UniSeries::from_fn(order, |n| inv_factorial(2 * n + 2))
}

/// `C(w) = cosh(sqrt(w)) - 1 = sum_{n>=1} w^n / (2n)!`.
pub fn cosh_sqrt_minus_one(order: u32) -> UniSeries {
    UniSeries::from_fn(order, |n| {
        if n == 0 {
            Rat::zero()
        } else {
            inv_factorial(2 * n)
        }
    })
}

/// Evaluates `A` and `B` at a positive-valuation multivariate series.
pub fn baker_ab(g: &TruncSeries) -> (TruncSeries, TruncSeries) {
    let v = g.val().max(1);
    let terms = g.order() / v;
    let a = a_series(terms).compose_multi(g);
    let b = b_series(terms).compose_multi(g);
    (a, b)
}
