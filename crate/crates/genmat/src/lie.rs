//! The Lie subalgebra generated by x and y inside the rank-4 module:
//! membership decision, coordinates in the free basis
//! {x, y} ∪ {xv−yt, xu−yv, [x,y]} over Q[t,u,v], and rewriting into
//! left-normed commutator expressions.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, NotLieReason, Result};
use crate::mat2::{format_word, parse_word, Gen};
use crate::poly::{Poly, VarSpec};
use crate::rat::{self, Rat};
use crate::series::TruncSeries;
use crate::walg::{w_bracket, WElement};

/// Coordinates of a Lie element
/// `αx + βy + a(xv−yt) + b(xu−yv) + c[x,y]`.
///
/// For an element of x,y-degree order N the series a and b are carried to
/// order N−3 and c to order N−2 (the generators have degrees 3, 3, 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieDecomp {
    order: u32,
    alpha: Rat,
    beta: Rat,
    a: TruncSeries,
    b: TruncSeries,
    c: TruncSeries,
}

fn fit(s: TruncSeries, target: Option<u32>) -> TruncSeries {
    match target {
        Some(t) => {
            assert!(
                s.order() >= t,
                "coefficient series of order {} too short for slot of order {}",
                s.order(),
                t
            );
            s.truncated(t)
        }
        None => TruncSeries::zero(s.vars(), 0),
    }
}

impl LieDecomp {
    pub fn new(
        alpha: Rat,
        beta: Rat,
        a: TruncSeries,
        b: TruncSeries,
        c: TruncSeries,
        order: u32,
    ) -> LieDecomp {
        let vars = a.vars().clone();
        assert!(b.vars() == &vars && c.vars() == &vars, "variable spec mismatch");
        LieDecomp {
            order,
            alpha,
            beta,
            a: fit(a, order.checked_sub(3)),
            b: fit(b, order.checked_sub(3)),
            c: fit(c, order.checked_sub(2)),
        }
    }

    pub fn from_polys(alpha: Rat, beta: Rat, a: Poly, b: Poly, c: Poly, order: u32) -> LieDecomp {
        LieDecomp::new(
            alpha,
            beta,
            TruncSeries::exact(a),
            TruncSeries::exact(b),
            TruncSeries::exact(c),
            order,
        )
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    pub fn beta(&self) -> &Rat {
        &self.beta
    }

    pub fn a(&self) -> &TruncSeries {
        &self.a
    }

    pub fn b(&self) -> &TruncSeries {
        &self.b
    }

    pub fn c(&self) -> &TruncSeries {
        &self.c
    }

    pub fn vars(&self) -> &Arc<VarSpec> {
        self.a.vars()
    }

    /// Expands the coordinates back into module components:
    /// px = α + av + bu, py = β − at − bv, pz = c.
    pub fn to_welement(&self) -> WElement {
        let vars = self.vars();
        let t = Poly::var(vars, 0);
        let u = Poly::var(vars, 1);
        let v = Poly::var(vars, 2);
        let slot_x = self.order.saturating_sub(1);
        let alpha = TruncSeries::constant(vars, self.alpha.clone(), slot_x);
        let beta = TruncSeries::constant(vars, self.beta.clone(), slot_x);
        let px = &alpha + &(&self.a.mul_poly(&v) + &self.b.mul_poly(&u));
        let py = &beta - &(&self.a.mul_poly(&t) + &self.b.mul_poly(&v));
        let p0 = TruncSeries::zero(vars, self.order);
        WElement::from_parts(p0, px, py, self.c.clone(), self.order)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "alpha": { "num": self.alpha.numer().to_string(), "den": self.alpha.denom().to_string() },
            "beta": { "num": self.beta.numer().to_string(), "den": self.beta.denom().to_string() },
            "a": self.a.poly().to_json(),
            "b": self.b.poly().to_json(),
            "c": self.c.poly().to_json(),
        })
    }
}

impl fmt::Display for LieDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha = {}", rat::format_rat(&self.alpha))?;
        writeln!(f, "beta  = {}", rat::format_rat(&self.beta))?;
        writeln!(f, "a     = {}", self.a)?;
        writeln!(f, "b     = {}", self.b)?;
        write!(f, "c     = {}", self.c)
    }
}

/// Decides membership of `e` in the Lie subalgebra, to e's order.
///
/// With f := px − px(0) and g := −(py − py(0)), solves
/// `va + ub = f`, `ta + vb = g` by Cramer's rule; both numerators must be
/// exactly divisible by v² − tu.
pub fn lie_membership(e: &WElement) -> Result<LieDecomp> {
    if !e.p0().is_zero() {
        return Err(Error::NotLie(NotLieReason::ScalarComponent));
    }
    let vars = e.vars();
    let t = Poly::var(vars, 0);
    let u = Poly::var(vars, 1);
    let v = Poly::var(vars, 2);
    let disc = &(&v * &v) - &(&t * &u);

    let alpha = e.px().constant_term();
    let beta = e.py().constant_term();
    let slot_x = e.px().order();
    let f = e.px() - &TruncSeries::constant(vars, alpha.clone(), slot_x);
    let g = -&(e.py() - &TruncSeries::constant(vars, beta.clone(), slot_x));

    let num_a = &f.mul_poly(&v) - &g.mul_poly(&u);
    let num_b = &g.mul_poly(&v) - &f.mul_poly(&t);
    let a = num_a
        .exact_div(&disc)
        .ok_or(Error::NotLie(NotLieReason::Divisibility))?;
    let b = num_b
        .exact_div(&disc)
        .ok_or(Error::NotLie(NotLieReason::Divisibility))?;
    Ok(LieDecomp::new(alpha, beta, a, b, e.pz().clone(), e.order()))
}

/// A finite sum of rational multiples of left-normed commutator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieExpr {
    terms: Vec<(Rat, Vec<Gen>)>,
}

impl LieExpr {
    pub fn new(terms: Vec<(Rat, Vec<Gen>)>) -> LieExpr {
        assert!(terms.iter().all(|(_, w)| !w.is_empty()), "empty word");
        LieExpr { terms }
    }

    pub fn terms(&self) -> &[(Rat, Vec<Gen>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, coeff: Rat, word: Vec<Gen>) {
        if !coeff.is_zero() {
            self.terms.push((coeff, word));
        }
    }

    /// Left-normed evaluation at the given truncation order.
    pub fn eval(&self, vars: &Arc<VarSpec>, order: u32) -> Result<WElement> {
        let mut acc = WElement::zero(vars, order);
        for (coeff, word) in &self.terms {
            let mut w = WElement::generator(vars, word[0], order);
            for &g in &word[1..] {
                w = w_bracket(&w, &WElement::generator(vars, g, order))?;
            }
            acc = &acc + &w.scale(coeff);
        }
        Ok(acc)
    }

    /// Rewrites a full decomposition, including the degree-1 part, into
    /// commutator words.
    pub fn from_decomp(d: &LieDecomp) -> LieExpr {
        let mut out = LieExpr::new(Vec::new());
        out.push(d.alpha.clone(), vec![Gen::X]);
        out.push(d.beta.clone(), vec![Gen::Y]);
        let ideal = LieDecomp {
            order: d.order,
            alpha: Rat::zero(),
            beta: Rat::zero(),
            a: d.a.clone(),
            b: d.b.clone(),
            c: d.c.clone(),
        };
        out.terms.extend(lie_form(&ideal).expect("alpha, beta cleared").terms);
        out
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(c, w)| {
                json!({
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                    "word": format_word(w),
                })
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(value: &Value) -> Result<LieExpr> {
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::usage("commutator-expression JSON missing \"terms\""))?;
        let mut out = Vec::new();
        for term in terms {
            let num = term
                .get("num")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::usage("term missing \"num\""))?;
            let den = term
                .get("den")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::usage("term missing \"den\""))?;
            let coeff = rat::parse_rat(&format!("{num}/{den}"))
                .ok_or_else(|| Error::usage("bad rational in term"))?;
            let word = term
                .get("word")
                .and_then(Value::as_str)
                .and_then(parse_word)
                .filter(|w| !w.is_empty())
                .ok_or_else(|| Error::usage("bad word in term"))?;
            out.push((coeff, word));
        }
        Ok(LieExpr::new(out))
    }
}

impl fmt::Display for LieExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (coeff, word)) in self.terms.iter().enumerate() {
            let neg = coeff < &Rat::zero();
            let mag = if neg { -coeff } else { coeff.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let word_text = if word.len() == 1 {
                word[0].as_char().to_string()
            } else {
                let letters: Vec<String> =
                    word.iter().map(|g| g.as_char().to_string()).collect();
                format!("[{}]", letters.join(","))
            };
            if rat::is_one(&mag) {
                write!(f, "{}", word_text)?;
            } else {
                write!(f, "{}·{}", rat::format_rat(&mag), word_text)?;
            }
        }
        Ok(())
    }
}

/// One rewriting family: the base word, then appended letter runs.
fn build_word(base: &[Gen], runs: &[(Gen, u32)], pairs: (Gen, Gen), pair_count: u32) -> Vec<Gen> {
    let mut w = base.to_vec();
    for &(g, n) in runs {
        w.extend(std::iter::repeat(g).take(n as usize));
    }
    for _ in 0..pair_count {
        w.push(pairs.0);
        w.push(pairs.1);
    }
    w
}

fn pow2(n: u32) -> Rat {
    Rat::from_integer(num_bigint::BigInt::from(1u8) << n)
}

/// Rewrites a commutator-ideal element (α = β = 0) into left-normed
/// commutator words, monomial by monomial:
///
/// - (xv−yt)·t^a u^b v^c → [x,y,y] y^{2b−1} x^{2a+1} (yx)^c / 2^{a+b+c+1}  (b > 0)
/// - (xv−yt)·t^a v^c     → [x,y,x] x^{2a} (yx)^c / 2^{a+c+1}
/// - (xu−yv)·t^a u^b v^c → [x,y,x] x^{2a−1} y^{2b+1} (xy)^c / 2^{a+b+c+1}  (a > 0)
/// - (xu−yv)·u^b v^c     → [x,y,y] y^{2b} (xy)^c / 2^{b+c+1}
/// - [x,y]·t^a u^b v^c   → [x,y] x^{2a} y^{2b} (xy)^c / 2^{a+b+c}
pub fn lie_form(d: &LieDecomp) -> Result<LieExpr> {
    if !d.alpha.is_zero() || !d.beta.is_zero() {
        return Err(Error::usage(
            "commutator rewriting needs a degree-1-free element (alpha = beta = 0)",
        ));
    }
    let (x, y) = (Gen::X, Gen::Y);
    let mut out = LieExpr::new(Vec::new());
    for (exps, q) in d.a.poly().terms() {
        let (a, b, c) = (u32::from(exps[0]), u32::from(exps[1]), u32::from(exps[2]));
        if b > 0 {
            out.push(
                q / pow2(a + b + c + 1),
                build_word(&[x, y, y], &[(y, 2 * b - 1), (x, 2 * a + 1)], (y, x), c),
            );
        } else {
            out.push(
                q / pow2(a + c + 1),
                build_word(&[x, y, x], &[(x, 2 * a)], (y, x), c),
            );
        }
    }
    for (exps, q) in d.b.poly().terms() {
        let (a, b, c) = (u32::from(exps[0]), u32::from(exps[1]), u32::from(exps[2]));
        if a > 0 {
            out.push(
                q / pow2(a + b + c + 1),
                build_word(&[x, y, x], &[(x, 2 * a - 1), (y, 2 * b + 1)], (x, y), c),
            );
        } else {
            out.push(
                q / pow2(b + c + 1),
                build_word(&[x, y, y], &[(y, 2 * b)], (x, y), c),
            );
        }
    }
    for (exps, q) in d.c.poly().terms() {
        let (a, b, c) = (u32::from(exps[0]), u32::from(exps[1]), u32::from(exps[2]));
        out.push(
            q / pow2(a + b + c),
            build_word(&[x, y], &[(x, 2 * a), (y, 2 * b)], (x, y), c),
        );
    }
    Ok(out)
}
