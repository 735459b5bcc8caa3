//! Polynomials truncated at a weighted order, the working coefficient type.
//!
//! A [`TruncSeries`] stores a polynomial together with the weighted degree
//! `order` up to which its terms are known to be exact; terms above the
//! order are dropped eagerly. Binary operations propagate the order
//! valuation-aware: a product is exact to `min(o1 + val2, o2 + val1)`,
//! where `val` is the valuation (minimum weighted degree) of the other
//! factor, so multiplying by a positive-degree polynomial raises rather
//! than loses precision. `u32::MAX` plays the role of "exact to all
//! orders" and all order arithmetic saturates.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Poly, VarSpec};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    poly: Poly,
    order: u32,
}

impl TruncSeries {
    /// Truncates `poly` at weighted degree `order`.
    pub fn new(poly: Poly, order: u32) -> TruncSeries {
        TruncSeries {
            poly: poly.truncate_weighted(order),
            order,
        }
    }

    /// Wraps an exact polynomial: known to every order.
    pub fn exact(poly: Poly) -> TruncSeries {
        TruncSeries {
            poly,
            order: u32::MAX,
        }
    }

    pub fn zero(vars: &Arc<VarSpec>, order: u32) -> TruncSeries {
        TruncSeries {
            poly: Poly::zero(vars),
            order,
        }
    }

    pub fn one(vars: &Arc<VarSpec>, order: u32) -> TruncSeries {
        TruncSeries::new(Poly::one(vars), order)
    }

    pub fn constant(vars: &Arc<VarSpec>, c: Rat, order: u32) -> TruncSeries {
        TruncSeries::new(Poly::constant(vars, c), order)
    }

    pub fn var(vars: &Arc<VarSpec>, i: usize, order: u32) -> TruncSeries {
        TruncSeries::new(Poly::var(vars, i), order)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn vars(&self) -> &Arc<VarSpec> {
        self.poly.vars()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn constant_term(&self) -> Rat {
        self.poly.constant_term()
    }

    pub fn coeff(&self, exps: &[u16]) -> Rat {
        self.poly.coeff(exps)
    }

    /// Valuation: minimum weighted degree of the stored terms, or
    /// `order + 1` when no term is stored (the true valuation is at least
    /// that much).
    pub fn val(&self) -> u32 {
        self.poly
            .min_weighted_degree()
            .unwrap_or_else(|| self.order.saturating_add(1))
    }

    /// Re-truncates to a (usually lower) order.
    pub fn truncated(&self, order: u32) -> TruncSeries {
        TruncSeries::new(self.poly.clone(), order.min(self.order))
    }

    /// Declares the stored polynomial exact to `order`. Only sound when the
    /// caller knows the coefficients are complete (polynomial data); used to
    /// lift inputs before padded internal computations.
    pub fn with_order_exact(&self, order: u32) -> TruncSeries {
        TruncSeries::new(self.poly.clone(), order)
    }

    /// Terms agree after truncating both to `order`.
    pub fn eq_to_order(&self, other: &TruncSeries, order: u32) -> bool {
        self.poly.truncate_weighted(order) == other.poly.truncate_weighted(order)
    }

    /// Reduction modulo the k-th power of the augmentation ideal: drops
    /// terms with at least `k` variable factors. The order is unchanged.
    pub fn reduce_mod_omega(&self, k: u32) -> TruncSeries {
        TruncSeries {
            poly: self.poly.reduce_mod_omega(k),
            order: self.order,
        }
    }

    pub fn scale(&self, r: &Rat) -> TruncSeries {
        TruncSeries {
            poly: self.poly.scale(r),
            order: self.order,
        }
    }

    /// Multiplies by an exact polynomial; the order rises by the
    /// polynomial's valuation.
    pub fn mul_poly(&self, p: &Poly) -> TruncSeries {
        let bump = p.min_weighted_degree().unwrap_or(u32::MAX);
        TruncSeries::new(&self.poly * p, self.order.saturating_add(bump))
    }

    /// Multiplicative inverse up to the order. Requires a nonzero constant
    /// term.
    pub fn inverse(&self) -> Result<TruncSeries> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::usage(
                "series inverse requires a nonzero constant term",
            ));
        }
        let vars = self.vars();
        let scaled = self.scale(&c0.recip());
        let r = &TruncSeries::one(vars, self.order) - &scaled;
        let rv = r.val().max(1);
        let mut acc = TruncSeries::one(vars, self.order);
        let mut pw = TruncSeries::one(vars, self.order);
        let mut k = 0u32;
        while k.saturating_mul(rv) < self.order.saturating_add(1) && !r.is_zero() {
            pw = (&pw * &r).truncated(self.order);
            if pw.is_zero() {
                break;
            }
            acc = &acc + &pw;
            k += 1;
        }
        Ok(acc.scale(&c0.recip()).truncated(self.order))
    }

    /// Exact division by a homogeneous polynomial (monomials included):
    /// `Some(q)` with `q * den == self` up to the order, or `None` when the
    /// division leaves a remainder within the order.
    pub fn exact_div(&self, den: &Poly) -> Option<TruncSeries> {
        assert!(!den.is_zero(), "division by the zero polynomial");
        let lo = den.min_weighted_degree().unwrap();
        let hi = den.weighted_degree().unwrap();
        assert_eq!(
            lo, hi,
            "series division requires a homogeneous denominator"
        );
        let q = self.poly.exact_div(den)?;
        let order = if self.order == u32::MAX {
            u32::MAX
        } else {
            self.order - lo.min(self.order)
        };
        Some(TruncSeries { poly: q, order })
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.poly.to_json();
        if let Value::Object(map) = &mut v {
            map.insert("order".into(), json!(self.order));
        }
        v
    }

    pub fn from_json(vars: &Arc<VarSpec>, v: &Value) -> Result<TruncSeries> {
        let poly = Poly::from_json(vars, v)?;
        let order = v
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::usage("series JSON missing \"order\""))?;
        let order = u32::try_from(order).unwrap_or(u32::MAX);
        Ok(TruncSeries::new(poly, order))
    }

    fn add_impl(&self, other: &TruncSeries, negate: bool) -> TruncSeries {
        let order = self.order.min(other.order);
        let rhs = if negate {
            other.poly.neg()
        } else {
            other.poly.clone()
        };
        TruncSeries::new(&self.poly + &rhs, order)
    }
}

impl std::ops::Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, other: &TruncSeries) -> TruncSeries {
        self.add_impl(other, false)
    }
}

impl std::ops::Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, other: &TruncSeries) -> TruncSeries {
        self.add_impl(other, true)
    }
}

impl std::ops::Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            poly: self.poly.neg(),
            order: self.order,
        }
    }
}

impl std::ops::Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, other: &TruncSeries) -> TruncSeries {
        let order = (self.order.saturating_add(other.val()))
            .min(other.order.saturating_add(self.val()));
        TruncSeries::new(&self.poly * &other.poly, order)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}
