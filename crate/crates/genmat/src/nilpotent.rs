//! The 2×2 nilpotent worked example: U has a single upper entry a, V a
//! single lower entry b, so U² = V² = 0 and both exponentials truncate to
//! I + U and I + V. Their product is I + T with T = [[ab, a], [b, 0]],
//! and log(I + T) collapses onto the pencil 2T − cI with a univariate
//! coefficient series φ in c = ab. The module computes everything by
//! direct truncated matrix arithmetic and reports named pass/fail checks
//! together with φ's coefficient table.
//!
//! The closed form for φ is checked without square roots: with ξ the
//! series inverse of c = ξ²/(1+ξ) (the root of ξ² = c(ξ+1) tangent to c),
//! the identity φ(c(ξ))·ξ(2+ξ)/(1+ξ) = log(1+ξ) holds in K[[ξ]].

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Poly, VarSpec};
use crate::rat::{rat, rat_int, Rat};
use crate::uniseries::UniSeries;

/// A 2×2 matrix with exact polynomial entries in a and b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpMat {
    e: [[Poly; 2]; 2],
}

impl NilpMat {
    pub fn new(e: [[Poly; 2]; 2]) -> NilpMat {
        NilpMat { e }
    }

    pub fn zero(vars: &Arc<VarSpec>) -> NilpMat {
        NilpMat::new([
            [Poly::zero(vars), Poly::zero(vars)],
            [Poly::zero(vars), Poly::zero(vars)],
        ])
    }

    pub fn identity(vars: &Arc<VarSpec>) -> NilpMat {
        let mut m = NilpMat::zero(vars);
        m.e[0][0] = Poly::one(vars);
        m.e[1][1] = Poly::one(vars);
        m
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.e[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(Poly::is_zero)
    }

    pub fn scale(&self, r: &Rat) -> NilpMat {
        self.map(|p| p.scale(r))
    }

    pub fn scale_poly(&self, p: &Poly) -> NilpMat {
        self.map(|q| q * p)
    }

    pub fn truncate_weighted(&self, order: u32) -> NilpMat {
        self.map(|p| p.truncate_weighted(order))
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> NilpMat {
        NilpMat::new([
            [f(&self.e[0][0]), f(&self.e[0][1])],
            [f(&self.e[1][0]), f(&self.e[1][1])],
        ])
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..2)
                .map(|i| Value::Array((0..2).map(|j| self.e[i][j].to_json()).collect()))
                .collect(),
        )
    }
}

impl std::ops::Add for &NilpMat {
    type Output = NilpMat;
    fn add(self, other: &NilpMat) -> NilpMat {
        NilpMat::new([
            [
                &self.e[0][0] + &other.e[0][0],
                &self.e[0][1] + &other.e[0][1],
            ],
            [
                &self.e[1][0] + &other.e[1][0],
                &self.e[1][1] + &other.e[1][1],
            ],
        ])
    }
}

impl std::ops::Sub for &NilpMat {
    type Output = NilpMat;
    fn sub(self, other: &NilpMat) -> NilpMat {
        self + &other.scale(&rat_int(-1))
    }
}

impl std::ops::Mul for &NilpMat {
    type Output = NilpMat;
    fn mul(self, other: &NilpMat) -> NilpMat {
        let cell = |i: usize, j: usize| {
            &(&self.e[i][0] * &other.e[0][j]) + &(&self.e[i][1] * &other.e[1][j])
        };
        NilpMat::new([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
    }
}

impl fmt::Display for NilpMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[ {} | {} ]\n[ {} | {} ]",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}

/// One named verification with its outcome.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

/// Outcome of the worked example: the named checks, the coefficient table
/// of φ, and the matrices the checks talk about.
#[derive(Clone, Debug)]
pub struct NilpotentReport {
    order: u32,
    checks: Vec<Check>,
    phi: UniSeries,
    product: NilpMat,
    log_matrix: NilpMat,
}

impl NilpotentReport {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    /// The univariate series φ with log(I+T) = φ(c)·(2T − cI).
    pub fn phi(&self) -> &UniSeries {
        &self.phi
    }

    pub fn product(&self) -> &NilpMat {
        &self.product
    }

    pub fn log_matrix(&self) -> &NilpMat {
        &self.log_matrix
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "pass": c.pass }))
            .collect();
        let phi: Vec<Value> = (0..=self.phi.order())
            .map(|k| {
                let c = self.phi.coeff(k);
                json!({ "k": k, "num": c.numer().to_string(), "den": c.denom().to_string() })
            })
            .collect();
        json!({
            "order": self.order,
            "all_pass": self.all_pass(),
            "checks": checks,
            "phi": phi,
            "product": self.product.to_json(),
            "log": self.log_matrix.to_json(),
        })
    }
}

impl fmt::Display for NilpotentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order)?;
        for c in &self.checks {
            writeln!(f, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name)?;
        }
        for k in 0..=self.phi.order() {
            writeln!(f, "phi[{}] = {}", k, self.phi.coeff(k))?;
        }
        write!(f, "log(I + T) =\n{}", self.log_matrix)
    }
}

/// log(I + T) truncated at weighted degree `order`.
fn matrix_log_identity_plus(t: &NilpMat, vars: &Arc<VarSpec>, order: u32) -> NilpMat {
    let mut acc = NilpMat::zero(vars);
    let mut power = NilpMat::identity(vars);
    for n in 1..=order {
        power = (&power * t).truncate_weighted(order);
        if power.is_zero() {
            break;
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        acc = &acc + &power.scale(&rat(sign, i64::from(n)));
    }
    acc
}

/// Reads ψ(ab) out of a polynomial of the shape a·ψ(ab): `None` when the
/// division fails or the quotient involves a and b unevenly.
fn phi_from_entry(entry: &Poly, vars: &Arc<VarSpec>, max_k: u32) -> Option<UniSeries> {
    let two_a = Poly::var(vars, 0).scale(&rat_int(2));
    let psi = entry.exact_div(&two_a)?;
    let mut coeffs = vec![Rat::zero(); max_k as usize + 1];
    for (exps, c) in psi.terms() {
        if exps.len() != 2 || exps[0] != exps[1] || u32::from(exps[0]) > max_k {
            return None;
        }
        coeffs[exps[0] as usize] = c.clone();
    }
    Some(UniSeries::new(coeffs, max_k))
}

/// Runs the worked example at truncation degree `order` (at least 2) and
/// reports every check.
pub fn nilpotent_example(order: u32) -> Result<NilpotentReport> {
    if order < 2 {
        return Err(Error::usage("the example needs order at least 2"));
    }
    let vars = VarSpec::ab();
    let a = Poly::var(&vars, 0);
    let b = Poly::var(&vars, 1);
    let c = &a * &b;
    let zero = Poly::zero(&vars);
    let id = NilpMat::identity(&vars);
    let mut checks = Vec::new();

    let u = NilpMat::new([[zero.clone(), a.clone()], [zero.clone(), zero.clone()]]);
    let v = NilpMat::new([[zero.clone(), zero.clone()], [b.clone(), zero.clone()]]);

    // Both generators square to zero, so the exponential series stop after
    // the linear term and e^U = I + U, e^V = I + V hold exactly.
    checks.push(Check {
        name: "squares-of-generators-vanish",
        pass: (&u * &u).is_zero() && (&v * &v).is_zero(),
    });

    let exp_u = &id + &u;
    let exp_v = &id + &v;
    let product = &exp_u * &exp_v;
    let t = NilpMat::new([[c.clone(), a.clone()], [b.clone(), zero.clone()]]);

    checks.push(Check {
        name: "product-is-identity-plus-t",
        pass: product == &id + &t,
    });
    checks.push(Check {
        name: "corner-entry-is-one-plus-c",
        pass: *product.entry(0, 0) == &Poly::one(&vars) + &c,
    });

    // T² = c(T + I), and therefore Tⁿ = c(Tⁿ⁻¹ + Tⁿ⁻²) for every n ≥ 2.
    let t_plus_id_scaled = (&t + &id).scale_poly(&c);
    checks.push(Check {
        name: "t-squared-is-c-times-t-plus-identity",
        pass: &t * &t == t_plus_id_scaled,
    });
    let mut recurrence_holds = true;
    let mut prev = id.clone();
    let mut cur = t.clone();
    for _ in 2..=order {
        let next = &cur * &t;
        if next != (&cur + &prev).scale_poly(&c) {
            recurrence_holds = false;
            break;
        }
        prev = cur;
        cur = next;
    }
    checks.push(Check {
        name: "power-recurrence-up-to-order",
        pass: recurrence_holds,
    });

    // The matrix logarithm lies on the pencil 2T − cI.
    let log_matrix = matrix_log_identity_plus(&t, &vars, order);
    let max_k = (order - 1) / 2;
    let phi = phi_from_entry(log_matrix.entry(0, 1), &vars, max_k);
    let (phi, collinear) = match phi {
        Some(phi) => {
            let mut phi_poly = Poly::zero(&vars);
            for k in 0..=max_k {
                phi_poly = &phi_poly + &c.pow(k).scale(&phi.coeff(k));
            }
            let pencil = &t.scale(&rat_int(2)) - &id.scale_poly(&c);
            let rebuilt = pencil.scale_poly(&phi_poly).truncate_weighted(order);
            (phi, rebuilt == log_matrix)
        }
        None => (UniSeries::zero(max_k), false),
    };
    checks.push(Check {
        name: "log-is-phi-times-2t-minus-c",
        pass: collinear,
    });

    // Heads of φ frozen from the direct computation at higher order.
    let expected_heads = [rat(1, 2), rat(-1, 12), rat(1, 60), rat(-1, 280)];
    let compare = (max_k.min(3) + 1) as usize;
    checks.push(Check {
        name: "phi-leading-coefficients",
        pass: (0..compare).all(|k| phi.coeff(k as u32) == expected_heads[k]),
    });

    // Closed form: substituting c = ξ²/(1+ξ) turns φ into
    // log(1+ξ)·(1+ξ)/(ξ(2+ξ)), verified multiplied out in K[[ξ]].
    let xi_order = 2 * max_k + 1;
    let xi = UniSeries::var(xi_order);
    let inv_one_plus_xi = UniSeries::from_fn(xi_order, |k| {
        if k % 2 == 0 {
            rat_int(1)
        } else {
            rat_int(-1)
        }
    });
    let c_of_xi = &(&xi * &xi) * &inv_one_plus_xi;
    let two_plus_xi = &UniSeries::constant(rat_int(2), xi_order) + &xi;
    let factor = &(&xi * &two_plus_xi) * &inv_one_plus_xi;
    let lhs = &phi.compose(&c_of_xi) * &factor;
    let rhs = xi.log1p();
    checks.push(Check {
        name: "phi-closed-form-identity",
        pass: lhs == rhs,
    });

    Ok(NilpotentReport {
        order,
        checks,
        phi,
        product,
        log_matrix,
    })
}
