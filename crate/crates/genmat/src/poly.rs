//! Sparse multivariate polynomials over the rationals with weighted grading.
//!
//! A [`VarSpec`] fixes the variable names and positive integer weights; a
//! [`Poly`] maps exponent vectors to nonzero rational coefficients. The
//! weighted degree of a term is the weight-dot-exponent sum; the invariant
//! grading (t, u, v of weight 2) and the matrix-entry grading (weight 1) are
//! both instances. Graded-lex order is used for canonical printing and for
//! division pivoting only; storage order is plain lex on exponent vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rat::{format_rat, parse_rat, Rat};

/// Variable names and weights shared by all polynomials of one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSpec {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl VarSpec {
    pub fn new(vars: &[(&str, u32)]) -> Arc<VarSpec> {
        assert!(!vars.is_empty(), "empty variable list");
        assert!(vars.iter().all(|&(_, w)| w > 0), "weights must be positive");
        Arc::new(VarSpec {
            names: vars.iter().map(|&(n, _)| n.to_string()).collect(),
            weights: vars.iter().map(|&(_, w)| w).collect(),
        })
    }

    /// The invariant ring: t = tr(x^2), u = tr(y^2), v = tr(xy), weight 2.
    pub fn tuv() -> Arc<VarSpec> {
        VarSpec::new(&[("t", 2), ("u", 2), ("v", 2)])
    }

    /// Generic matrix entries (weight 1): x11, x12, x21, y11, y12, y21.
    pub fn xy_entries() -> Arc<VarSpec> {
        VarSpec::new(&[
            ("x11", 1),
            ("x12", 1),
            ("x21", 1),
            ("y11", 1),
            ("y12", 1),
            ("y21", 1),
        ])
    }

    /// Two weight-1 variables for the nilpotent 2x2 example.
    pub fn ab() -> Arc<VarSpec> {
        VarSpec::new(&[("a", 1), ("b", 1)])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn weighted_degree(&self, exps: &[u16]) -> u32 {
        exps.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| u32::from(e) * w)
            .sum()
    }
}

pub type Exps = Vec<u16>;

/// Graded-lex comparison: weighted degree first, then lex on exponents.
fn grlex(vars: &VarSpec, a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    vars.weighted_degree(a)
        .cmp(&vars.weighted_degree(b))
        .then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Arc<VarSpec>,
    terms: BTreeMap<Exps, Rat>,
}

impl Poly {
    pub fn zero(vars: &Arc<VarSpec>) -> Poly {
        Poly {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSpec>, c: Rat) -> Poly {
        let mut p = Poly::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &Arc<VarSpec>) -> Poly {
        Poly::constant(vars, Rat::from_integer(1.into()))
    }

    pub fn var(vars: &Arc<VarSpec>, i: usize) -> Poly {
        assert!(i < vars.len(), "variable index out of range");
        let mut exps = vec![0u16; vars.len()];
        exps[i] = 1;
        let mut p = Poly::zero(vars);
        p.add_term(exps, Rat::from_integer(1.into()));
        p
    }

    pub fn monomial(vars: &Arc<VarSpec>, exps: Exps, coeff: Rat) -> Poly {
        assert_eq!(exps.len(), vars.len(), "exponent arity mismatch");
        let mut p = Poly::zero(vars);
        p.add_term(exps, coeff);
        p
    }

    pub fn vars(&self) -> &Arc<VarSpec> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rat)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && crate::rat::is_one(&self.constant_term())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&vec![0u16; self.vars.len()])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn coeff(&self, exps: &[u16]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `c` to the coefficient at `exps`, dropping the term if it
    /// cancels to zero.
    pub fn add_term(&mut self, exps: Exps, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.vars.len());
        match self.terms.entry(exps) {
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

    /// Maximum weighted degree over the terms; `None` for the zero
    /// polynomial.
    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| self.vars.weighted_degree(e))
            .max()
    }

    /// Minimum weighted degree over the terms (the valuation); `None` for
    /// the zero polynomial.
    pub fn min_weighted_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| self.vars.weighted_degree(e))
            .min()
    }

    /// Drops all terms of weighted degree greater than `order`.
    pub fn truncate_weighted(&self, order: u32) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            if self.vars.weighted_degree(e) <= order {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Drops all terms whose total (unweighted) exponent sum is at least
    /// `k`: reduction modulo the k-th power of the augmentation ideal.
    pub fn reduce_mod_omega(&self, k: u32) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            let total: u32 = e.iter().map(|&x| u32::from(x)).sum();
            if total < k {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Poly {
        if r.is_zero() {
            return Poly::zero(&self.vars);
        }
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * r);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.vars);
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `args[i]` for variable `i`; the arguments live in a
    /// common (possibly different) ring.
    pub fn eval_subst(&self, args: &[Poly]) -> Poly {
        assert_eq!(args.len(), self.vars.len(), "substitution arity mismatch");
        let target = args
            .first()
            .map(|p| Arc::clone(p.vars()))
            .expect("at least one argument");
        assert!(
            args.iter().all(|p| Arc::ptr_eq(p.vars(), &target) || p.vars() == &target),
            "substitution arguments must share a ring"
        );
        let mut out = Poly::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = &term * &args[i].pow(u32::from(exp));
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Evaluates at a rational point.
    pub fn eval_rat(&self, vals: &[Rat]) -> Rat {
        assert_eq!(vals.len(), self.vars.len(), "evaluation arity mismatch");
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term *= &vals[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// The graded-lex leading term, if any.
    fn leading_term(&self) -> Option<(&Exps, &Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| grlex(&self.vars, a, b))
    }

    /// Exact division: `Some(q)` with `self == q * den`, or `None` when the
    /// division leaves a remainder. Complete decision procedure for a single
    /// divisor: division with remainder against the graded-lex leading term
    /// of `den` has zero remainder exactly when `den` divides `self`.
    ///
    /// Panics if `den` is zero.
    pub fn exact_div(&self, den: &Poly) -> Option<Poly> {
        assert!(!den.is_zero(), "division by the zero polynomial");
        assert_eq!(self.vars, den.vars, "variable spec mismatch");
        if den.terms.len() == 1 {
            let (de, dc) = den.terms.iter().next().unwrap();
            let mut q = Poly::zero(&self.vars);
            for (e, c) in &self.terms {
                let mut qe = Vec::with_capacity(e.len());
                for (&a, &b) in e.iter().zip(de.iter()) {
                    if a < b {
                        return None;
                    }
                    qe.push(a - b);
                }
                q.terms.insert(qe, c / dc);
            }
            return Some(q);
        }
        let (lead_e, lead_c) = den.leading_term().unwrap();
        let lead_e = lead_e.clone();
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut q = Poly::zero(&self.vars);
        while let Some((re, rc)) = rem.leading_term() {
            let mut qe = Vec::with_capacity(re.len());
            for (&a, &b) in re.iter().zip(lead_e.iter()) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let qc = rc / &lead_c;
            let mut shifted = Poly::zero(&self.vars);
            for (e, c) in &den.terms {
                let se: Exps = e.iter().zip(qe.iter()).map(|(&a, &b)| a + b).collect();
                shifted.terms.insert(se, c * &qc);
            }
            rem = &rem - &shifted;
            q.add_term(qe, qc);
        }
        Some(q)
    }

    /// Term pairs sorted by graded-lex order (ascending), the canonical
    /// printing order.
    pub fn sorted_terms(&self) -> Vec<(&Exps, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        // Ascending weighted degree; within a degree, descending lex so the
        // leftmost variable prints first (t before u before v).
        v.sort_by(|(a, _), (b, _)| {
            self.vars
                .weighted_degree(a)
                .cmp(&self.vars.weighted_degree(b))
                .then_with(|| b.cmp(a))
        });
        v
    }

    fn format_monomial(&self, exps: &[u16]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars.name(i).to_string()),
                _ => parts.push(format!("{}^{}", self.vars.name(i), e)),
            }
        }
        parts.join("*")
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                json!({
                    "exp": e.iter().map(|&x| u32::from(x)).collect::<Vec<_>>(),
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect();
        json!({
            "vars": self.vars.names(),
            "terms": terms,
        })
    }

    /// Reads the JSON polynomial form, validating the variable names
    /// against `vars`.
    pub fn from_json(vars: &Arc<VarSpec>, v: &Value) -> Result<Poly> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::usage("polynomial JSON must be an object"))?;
        let names = obj
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::usage("polynomial JSON missing \"vars\""))?;
        let names: Vec<&str> = names.iter().filter_map(Value::as_str).collect();
        if names != vars.names().iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(Error::usage(format!(
                "variable list {:?} does not match expected {:?}",
                names,
                vars.names()
            )));
        }
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::usage("polynomial JSON missing \"terms\""))?;
        let mut p = Poly::zero(vars);
        for t in terms {
            let exp = t
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::usage("term missing \"exp\""))?;
            if exp.len() != vars.len() {
                return Err(Error::usage("exponent arity mismatch"));
            }
            let exps: Exps = exp
                .iter()
                .map(|x| {
                    x.as_u64()
                        .filter(|&x| x <= u64::from(u16::MAX))
                        .map(|x| x as u16)
                        .ok_or_else(|| Error::usage("exponent must be a small nonnegative integer"))
                })
                .collect::<Result<_>>()?;
            let num = t
                .get("num")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::usage("term missing \"num\""))?;
            let den = t
                .get("den")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::usage("term missing \"den\""))?;
            let c = parse_rat(&format!("{num}/{den}"))
                .ok_or_else(|| Error::usage("malformed rational coefficient"))?;
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_impl(&self, other: &Poly, negate: bool) -> Poly {
        assert_eq!(self.vars, other.vars, "variable spec mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Sequential product, always available.
    pub fn mul_sequential(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars, "variable spec mismatch");
        let mut out = Poly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1
                    .iter()
                    .zip(e2.iter())
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                    .collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Parallel product: the left factor is chunked across the rayon pool
    /// and the partial products merged.
    #[cfg(feature = "parallel")]
    pub fn mul_parallel(&self, other: &Poly) -> Poly {
        use rayon::prelude::*;
        assert_eq!(self.vars, other.vars, "variable spec mismatch");
        let lhs: Vec<(&Exps, &Rat)> = self.terms.iter().collect();
        let chunk = lhs.len().div_ceil(rayon::current_num_threads().max(1)).max(1);
        let partials: Vec<BTreeMap<Exps, Rat>> = lhs
            .par_chunks(chunk)
            .map(|chunk| {
                let mut acc: BTreeMap<Exps, Rat> = BTreeMap::new();
                for &(e1, c1) in chunk {
                    for (e2, c2) in &other.terms {
                        let e: Exps = e1
                            .iter()
                            .zip(e2.iter())
                            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                            .collect();
                        let v = c1 * c2;
                        match acc.entry(e) {
                            std::collections::btree_map::Entry::Vacant(slot) => {
                                slot.insert(v);
                            }
                            std::collections::btree_map::Entry::Occupied(mut slot) => {
                                *slot.get_mut() += v;
                                if slot.get().is_zero() {
                                    slot.remove();
                                }
                            }
                        }
                    }
                }
                acc
            })
            .collect();
        let mut out = Poly::zero(&self.vars);
        for part in partials {
            for (e, c) in part {
                out.add_term(e, c);
            }
        }
        out
    }
}

/// Products at or above this many term pairs take the parallel path when
/// the `parallel` feature is enabled.
pub const PAR_MUL_THRESHOLD: usize = 4096;

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        self.add_impl(other, false)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self.add_impl(other, true)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        #[cfg(feature = "parallel")]
        {
            if self.term_count() * other.term_count() >= PAR_MUL_THRESHOLD {
                return self.mul_parallel(other);
            }
        }
        self.mul_sequential(other)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let mono = self.format_monomial(e);
            let abs = c.abs();
            let coeff = if mono.is_empty() || !abs.is_integer() || !crate::rat::is_one(&abs) {
                Some(format_rat(&abs))
            } else {
                None
            };
            let body = match (coeff, mono.is_empty()) {
                (Some(q), true) => q,
                (Some(q), false) => format!("{q}*{mono}"),
                (None, _) => mono,
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}
