//! Brute-force ground truth in the free associative algebra on the two
//! letters x, y, truncated by word length: exponentials, logarithms, the
//! composition series z = log(eˣ·eʸ), and the projection onto the
//! four-component algebra. Multiplication is direct convolution over word
//! concatenation — transparent rather than fast, which is the point of an
//! oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::mat2::Gen;
use crate::poly::VarSpec;
use crate::rat::{rat, rat_int, Rat};
use crate::series::TruncSeries;
use crate::walg::{from_word, WElement};

/// A polynomial in non-commuting letters, truncated at a word length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSeries {
    order: u32,
    terms: BTreeMap<Vec<Gen>, Rat>,
}

impl FreeSeries {
    pub fn zero(order: u32) -> FreeSeries {
        FreeSeries {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> FreeSeries {
        let mut s = FreeSeries::zero(order);
        s.add_term(Vec::new(), rat_int(1));
        s
    }

    /// A single letter as a series.
    pub fn generator(g: Gen, order: u32) -> FreeSeries {
        let mut s = FreeSeries::zero(order);
        s.add_term(vec![g], rat_int(1));
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Gen>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[Gen]) -> Rat {
        self.terms.get(word).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&[])
    }

    /// Adds `c` to the coefficient of `word`, dropping words beyond the
    /// bound and coefficients that cancel to zero.
    pub fn add_term(&mut self, word: Vec<Gen>, c: Rat) {
        use std::collections::btree_map::Entry;
        if word.len() as u32 > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rat) -> FreeSeries {
        if r.is_zero() {
            return FreeSeries::zero(self.order);
        }
        FreeSeries {
            order: self.order,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * r)).collect(),
        }
    }

    pub fn truncated(&self, order: u32) -> FreeSeries {
        FreeSeries {
            order: order.min(self.order),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() as u32 <= order)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms in graded-lexicographic word order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<Gen>, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(w, _)| (w.len(), w.as_slice()));
        v
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(w, c)| {
                let word: String = w.iter().map(|g| g.as_char()).collect();
                json!({
                    "word": word,
                    "num": c.numer().to_string(),
                    "den": c.denom().to_string(),
                })
            })
            .collect();
        json!({ "order": self.order, "terms": terms })
    }
}

impl std::ops::Add for &FreeSeries {
    type Output = FreeSeries;
    fn add(self, other: &FreeSeries) -> FreeSeries {
        let mut out = self.truncated(self.order.min(other.order));
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &FreeSeries {
    type Output = FreeSeries;
    fn sub(self, other: &FreeSeries) -> FreeSeries {
        self + &(-other)
    }
}

impl std::ops::Neg for &FreeSeries {
    type Output = FreeSeries;
    fn neg(self) -> FreeSeries {
        self.scale(&rat_int(-1))
    }
}

impl fmt::Display for FreeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (word, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c < &Rat::zero();
            let mag = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let letters: Vec<String> = word.iter().map(|g| g.as_char().to_string()).collect();
            if word.is_empty() {
                out.push_str(&mag.to_string());
            } else if crate::rat::is_one(&mag) {
                out.push_str(&letters.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, letters.join("*")));
            }
        }
        write!(f, "{out}")
    }
}

/// Convolution over word concatenation, truncated at the smaller bound.
pub fn free_mul(p: &FreeSeries, q: &FreeSeries) -> FreeSeries {
    let order = p.order.min(q.order);
    let mut out = FreeSeries::zero(order);
    for (wp, cp) in &p.terms {
        for (wq, cq) in &q.terms {
            if (wp.len() + wq.len()) as u32 > order {
                continue;
            }
            let mut w = wp.clone();
            w.extend_from_slice(wq);
            out.add_term(w, cp * cq);
        }
    }
    out
}

/// Σ sⁿ/n!; the argument must have zero constant term so that the sum is
/// finite at every word length.
pub fn free_exp(s: &FreeSeries) -> Result<FreeSeries> {
    if !s.constant_term().is_zero() {
        return Err(Error::usage(
            "free exponential requires a zero constant term",
        ));
    }
    let mut acc = FreeSeries::one(s.order);
    let mut power = FreeSeries::one(s.order);
    for n in 1..=s.order {
        power = free_mul(&power, s);
        if power.is_zero() {
            break;
        }
        acc = &acc + &power.scale(&crate::rat::factorial(n).recip());
    }
    Ok(acc)
}

/// log(s) for s = 1 + u with u of zero constant term: Σ (−1)ⁿ⁺¹ uⁿ/n.
pub fn free_log(s: &FreeSeries) -> Result<FreeSeries> {
    if !crate::rat::is_one(&s.constant_term()) {
        return Err(Error::usage("free logarithm requires constant term 1"));
    }
    let u = s - &FreeSeries::one(s.order);
    let mut acc = FreeSeries::zero(s.order);
    let mut power = FreeSeries::one(s.order);
    for n in 1..=s.order {
        power = free_mul(&power, &u);
        if power.is_zero() {
            break;
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        acc = &acc + &power.scale(&rat(sign, i64::from(n)));
    }
    Ok(acc)
}

/// The composition series z = log(eˣ·eʸ) with all words up to length `n`.
pub fn bch(n: u32) -> FreeSeries {
    assert!(n >= 1, "the composition series needs order at least 1");
    let x = FreeSeries::generator(Gen::X, n);
    let y = FreeSeries::generator(Gen::Y, n);
    let ex = free_exp(&x).expect("letters have no constant term");
    let ey = free_exp(&y).expect("letters have no constant term");
    free_log(&free_mul(&ex, &ey)).expect("product of exponentials starts at 1")
}

/// The algebra morphism onto the four-component algebra: each word maps by
/// evaluation, the empty word to the scalar 1.
pub fn project_to_w(vars: &Arc<VarSpec>, s: &FreeSeries) -> WElement {
    let n = s.order;
    let mut acc = WElement::zero(vars, n);
    for (word, c) in &s.terms {
        let part = if word.is_empty() {
            WElement::scalar(TruncSeries::constant(vars, c.clone(), n), n)
        } else {
            from_word(vars, word, n).scale(c)
        };
        acc = &acc + &part;
    }
    acc
}
