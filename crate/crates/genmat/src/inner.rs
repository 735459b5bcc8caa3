//! Inner automorphisms of the completed algebra: the 3x3 matrix of ad X
//! on the coordinates (x, y, z), its closed-form exponential
//! Q = I + A(g)M + B(g)M², logarithm recovery from Q alone, group
//! composition, and reduction modulo nilpotency class.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::mat3::Mat3;
use crate::poly::Poly;
use num_traits::Zero;

use crate::rat::{factorial, rat};
use crate::series::TruncSeries;
use crate::uniseries::{a_series, b_series, cosh_sqrt_minus_one};
use crate::walg::WElement;

/// Row truncation orders for a coordinate matrix at element order `n`:
/// rows scale basis elements of x,y-degrees 1, 1, 2.
fn row_orders(n: u32) -> [u32; 3] {
    [n.saturating_sub(1), n.saturating_sub(1), n.saturating_sub(2)]
}

/// The matrix of ad X acting on (x, y, z) coordinates by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdMatrix {
    order: u32,
    m: Mat3,
}

/// The matrix of exp(ad X), with the series g(X), A(g), B(g) cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutMatrix {
    order: u32,
    q: Mat3,
    g: TruncSeries,
    big_a: TruncSeries,
    big_b: TruncSeries,
}

/// Recovered logarithm coordinates: X = a·x + b·y + c·[x,y]. For an input
/// of order N the series a, b are exact through degree N−2 and c through
/// N−3 (one resp. two degrees are consumed by the trace and the division
/// by a weight-2 scalar).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogTriple {
    pub a: TruncSeries,
    pub b: TruncSeries,
    pub c: TruncSeries,
}

fn require_no_scalar(x: &WElement) -> Result<()> {
    if x.p0().is_zero() {
        Ok(())
    } else {
        Err(Error::usage(
            "the element has a scalar component; only a·x + b·y + c·[x,y] has an adjoint matrix",
        ))
    }
}

/// Builds the nine entries from coordinate series a, b, c; entry orders
/// follow from the arithmetic.
fn ad_entries(a: &TruncSeries, b: &TruncSeries, c: &TruncSeries) -> Mat3 {
    let vars = a.vars();
    let t = Poly::var(vars, 0);
    let u = Poly::var(vars, 1);
    let v = Poly::var(vars, 2);
    let two = rat(2, 1);
    let m2 = rat(-2, 1);
    let zero_order = c.order().saturating_add(2);
    Mat3::new([
        [
            c.mul_poly(&v).scale(&m2),
            c.mul_poly(&u).scale(&m2),
            (&a.mul_poly(&v) + &b.mul_poly(&u)).scale(&two),
        ],
        [
            c.mul_poly(&t).scale(&two),
            c.mul_poly(&v).scale(&two),
            (&a.mul_poly(&t) + &b.mul_poly(&v)).scale(&m2),
        ],
        [
            b.clone(),
            -a,
            TruncSeries::zero(vars, zero_order),
        ],
    ])
}

/// The matrix of ad X for X = a·x + b·y + c·[x,y] (no scalar component;
/// the px, py, pz coefficients serve as a, b, c).
pub fn ad_matrix(x: &WElement) -> Result<AdMatrix> {
    require_no_scalar(x)?;
    let m = ad_entries(x.px(), x.py(), x.pz()).truncate_rows(row_orders(x.order()));
    Ok(AdMatrix { order: x.order(), m })
}

/// g(X) = 2(a²t + 2abv + b²u + 2c²(v² − tu)), truncated to the element
/// order.
pub fn g_of(x: &WElement) -> Result<TruncSeries> {
    require_no_scalar(x)?;
    let vars = x.vars();
    let t = Poly::var(vars, 0);
    let u = Poly::var(vars, 1);
    let v = Poly::var(vars, 2);
    let disc = &(&v * &v) - &(&t * &u);
    let (a, b, c) = (x.px(), x.py(), x.pz());
    let s = &(&(a * a).mul_poly(&t) + &(a * b).mul_poly(&v.scale(&rat(2, 1))))
        + &(&(b * b).mul_poly(&u) + &(c * c).mul_poly(&disc.scale(&rat(2, 1))));
    Ok(s.scale(&rat(2, 1)).truncated(x.order()))
}

impl AdMatrix {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    /// The derivation action: coordinates transform by the matrix, the
    /// scalar component is annihilated.
    pub fn apply(&self, e: &WElement) -> Result<WElement> {
        if e.order() != self.order {
            return Err(Error::usage(format!(
                "order mismatch: matrix {} vs element {}",
                self.order,
                e.order()
            )));
        }
        let (px, py, pz) = mat_apply(&self.m, e);
        Ok(WElement::from_parts(
            TruncSeries::zero(e.vars(), self.order),
            px,
            py,
            pz,
            self.order,
        ))
    }

    /// Reduces entries modulo the ⌊(c+1)/2⌋-th power of the augmentation
    /// ideal of Q[t,u,v].
    pub fn reduce_mod_class(&self, class: u32) -> AdMatrix {
        assert!(class >= 2, "nilpotency class must be at least 2");
        AdMatrix {
            order: self.order,
            m: self.m.reduce_mod_omega((class + 1) / 2),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "entries": entries_to_json(&self.m),
        })
    }

    pub fn from_json(value: &Value) -> Result<AdMatrix> {
        let (order, m) = entries_from_json(value)?;
        Ok(AdMatrix { order, m })
    }
}

fn mat_apply(m: &Mat3, e: &WElement) -> (TruncSeries, TruncSeries, TruncSeries) {
    let comp = |i: usize| -> TruncSeries {
        &(&(m.entry(i, 0) * e.px()) + &(m.entry(i, 1) * e.py())) + &(m.entry(i, 2) * e.pz())
    };
    (comp(0), comp(1), comp(2))
}

fn entries_to_json(m: &Mat3) -> Value {
    Value::Array(
        (0..3)
            .map(|i| {
                Value::Array((0..3).map(|j| m.entry(i, j).poly().to_json()).collect())
            })
            .collect(),
    )
}

fn entries_from_json(value: &Value) -> Result<(u32, Mat3)> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::usage("matrix JSON must be an object"))?;
    let order = obj
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::usage("matrix JSON needs a numeric \"order\""))? as u32;
    let rows = obj
        .get("entries")
        .and_then(Value::as_array)
        .filter(|r| r.len() == 3)
        .ok_or_else(|| Error::usage("matrix JSON needs 3x3 \"entries\""))?;
    let vars = crate::poly::VarSpec::tuv();
    let orders = row_orders(order);
    let mut cells = Vec::with_capacity(9);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == 3)
            .ok_or_else(|| Error::usage("matrix row must have 3 entries"))?;
        for cell in row {
            cells.push(TruncSeries::new(Poly::from_json(&vars, cell)?, orders[i]));
        }
    }
    let mut it = cells.into_iter();
    Ok((order, Mat3::from_fn(|_, _| it.next().expect("nine cells"))))
}

/// Enough univariate coefficients to saturate a composition with a series
/// whose valuation is at least 1 and order at most `n`.
pub(crate) fn uni_terms(n: u32) -> u32 {
    n + 1
}

/// The exponential: Q = I + A(g)·M + B(g)·M².
pub fn exp_ad(x: &WElement) -> Result<AutMatrix> {
    let n = x.order();
    let m = ad_matrix(x)?;
    let g = g_of(x)?;
    let k = uni_terms(n);
    let big_a = a_series(k).compose_multi(&g);
    let big_b = b_series(k).compose_multi(&g);
    let id = Mat3::identity(x.vars(), row_orders(n));
    let m2 = &m.m * &m.m;
    let q = &(&id + &m.m.scale_series(&big_a)) + &m2.scale_series(&big_b);
    Ok(AutMatrix {
        order: n,
        q: q.truncate_rows(row_orders(n)),
        g,
        big_a,
        big_b,
    })
}

impl AutMatrix {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.q
    }

    pub fn g(&self) -> &TruncSeries {
        &self.g
    }

    pub fn a_series(&self) -> &TruncSeries {
        &self.big_a
    }

    pub fn b_series(&self) -> &TruncSeries {
        &self.big_b
    }

    /// The automorphism action: coordinates transform by the matrix, the
    /// scalar component is fixed.
    pub fn apply(&self, e: &WElement) -> Result<WElement> {
        if e.order() != self.order {
            return Err(Error::usage(format!(
                "order mismatch: matrix {} vs element {}",
                self.order,
                e.order()
            )));
        }
        let (px, py, pz) = mat_apply(&self.q, e);
        Ok(WElement::from_parts(e.p0().clone(), px, py, pz, self.order))
    }

    /// The matrix of the composed automorphism: `self` applied first, then
    /// `other`. Coordinates transform by columns, so this is the column
    /// product mat(other)·mat(self).
    pub fn then(&self, other: &AutMatrix) -> Result<Mat3> {
        if self.order != other.order {
            return Err(Error::usage(format!(
                "order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        Ok((&other.q * &self.q).truncate_rows(row_orders(self.order)))
    }

    /// Reduces entries (and the cached series) modulo the ⌊(c+1)/2⌋-th
    /// power of the augmentation ideal.
    pub fn reduce_mod_class(&self, class: u32) -> AutMatrix {
        assert!(class >= 2, "nilpotency class must be at least 2");
        let k = (class + 1) / 2;
        AutMatrix {
            order: self.order,
            q: self.q.reduce_mod_omega(k),
            g: self.g.reduce_mod_omega(k),
            big_a: self.big_a.reduce_mod_omega(k),
            big_b: self.big_b.reduce_mod_omega(k),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "entries": entries_to_json(&self.q),
            "g": self.g.poly().to_json(),
            "A": self.big_a.poly().to_json(),
            "B": self.big_b.poly().to_json(),
        })
    }

    /// Reads a matrix back; the cached series are taken from the JSON when
    /// all three are present and recomputed from the trace otherwise.
    pub fn from_json(value: &Value) -> Result<AutMatrix> {
        let (order, q) = entries_from_json(value)?;
        let obj = value.as_object().expect("checked above");
        let vars = crate::poly::VarSpec::tuv();
        let cached = ["g", "A", "B"].map(|k| obj.get(k));
        let (g, big_a, big_b) = if cached.iter().all(Option::is_some) {
            let read = |v: &Value| -> Result<TruncSeries> {
                Ok(TruncSeries::new(Poly::from_json(&vars, v)?, order))
            };
            (
                read(cached[0].unwrap())?,
                read(cached[1].unwrap())?,
                read(cached[2].unwrap())?,
            )
        } else {
            let g = g_from_trace(&q)?;
            let k = uni_terms(order);
            let big_a = a_series(k).compose_multi(&g);
            let big_b = b_series(k).compose_multi(&g);
            (g, big_a, big_b)
        };
        Ok(AutMatrix {
            order,
            q,
            g,
            big_a,
            big_b,
        })
    }
}

/// Recovers g from the trace alone: tr(Q) = 3 + 2·cosh(√g) − 2, so with
/// h := (tr(Q) − 3)/2 and C(w) := cosh(√w) − 1, g is the reverse series
/// of C evaluated at h.
pub(crate) fn g_from_trace(q: &Mat3) -> Result<TruncSeries> {
    let tr = q.trace();
    let h = {
        let three = TruncSeries::constant(q.vars(), rat(3, 1), tr.order());
        (&tr - &three).scale(&rat(1, 2))
    };
    if !h.constant_term().is_zero() {
        return Err(Error::usage(
            "trace minus 3 has a nonzero constant term; not an inner-automorphism matrix",
        ));
    }
    let rev = cosh_sqrt_minus_one(uni_terms(h.order())).reverse();
    Ok(rev.compose_multi(&h))
}

/// Recovers X = a·x + b·y + c·[x,y] from the matrix of exp(ad X) alone.
///
/// M := (A/B)(Q − I) − (1/(2A))(Q² − I); then b = M₃₁, a = −M₃₂, and c
/// comes from the first nonzero entry among M₂₁ = 2ct, −M₁₂ = 2cu,
/// −M₁₁ = 2cv (zero means c = 0). The matrix rebuilt from (a, b, c) must
/// reproduce every entry of M; any discrepancy is reported as an
/// inconsistency, because a genuine exponential determines its logarithm
/// redundantly.
pub fn log_aut(aut: &AutMatrix) -> Result<LogTriple> {
    log_aut_matrix(&aut.q)
}

/// Logarithm recovery from the bare 3x3 matrix; see [`log_aut`].
pub fn log_aut_matrix(q: &Mat3) -> Result<LogTriple> {
    let vars = q.vars();
    let g = g_from_trace(q)?;
    let k = uni_terms(g.order());
    let big_a = a_series(k).compose_multi(&g);
    let big_b = b_series(k).compose_multi(&g);

    let q_minus_i = sub_identity(q);
    let q2_minus_i = sub_identity(&(q * q));
    let a_over_b = &big_a * &big_b.inverse()?;
    let half_inv_a = big_a.inverse()?.scale(&rat(1, 2));
    let m = &q_minus_i.scale_series(&a_over_b) - &q2_minus_i.scale_series(&half_inv_a);

    let b = m.entry(2, 0).clone();
    let a = -m.entry(2, 1);
    let t = Poly::var(vars, 0);
    let u = Poly::var(vars, 1);
    let v = Poly::var(vars, 2);
    let two = rat(2, 1);
    let c = if !m.entry(1, 0).is_zero() {
        m.entry(1, 0)
            .exact_div(&t.scale(&two))
            .ok_or_else(|| Error::consistency("entry (2,1) is not 2c·t for any series c"))?
    } else if !m.entry(0, 1).is_zero() {
        (-m.entry(0, 1))
            .exact_div(&u.scale(&two))
            .ok_or_else(|| Error::consistency("entry (1,2) is not -2c·u for any series c"))?
    } else if !m.entry(0, 0).is_zero() {
        (-m.entry(0, 0))
            .exact_div(&v.scale(&two))
            .ok_or_else(|| Error::consistency("entry (1,1) is not -2c·v for any series c"))?
    } else {
        // All three c-bearing entries vanish to their orders.
        TruncSeries::zero(vars, m.entry(1, 0).order().saturating_sub(2))
    };

    // Checksum: the rebuilt adjoint matrix must agree with M entrywise.
    let rebuilt = ad_entries(&a, &b, &c);
    for i in 0..3 {
        for j in 0..3 {
            let got = m.entry(i, j);
            let want = rebuilt.entry(i, j);
            let common = got.order().min(want.order());
            if !got.eq_to_order(want, common) {
                return Err(Error::consistency(format!(
                    "entry ({},{}) of the recovered logarithm matrix disagrees with its rebuild",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(LogTriple { a, b, c })
}

pub(crate) fn sub_identity(q: &Mat3) -> Mat3 {
    Mat3::from_fn(|i, j| {
        if i == j {
            let e = q.entry(i, j);
            e - &TruncSeries::one(q.vars(), e.order())
        } else {
            q.entry(i, j).clone()
        }
    })
}

impl LogTriple {
    /// Packs the triple into a p0-free element of the given order; the
    /// series must be precise enough for the element's slots.
    pub fn to_welement(&self, order: u32) -> WElement {
        WElement::from_parts(
            TruncSeries::zero(self.a.vars(), order),
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            order,
        )
    }
}

/// Internal working margin for composition: the logarithm loses up to
/// three degrees of precision, so the matrices are built that much deeper.
const COMPOSE_PADDING: u32 = 3;

/// The group law: the element Z with exp(ad Z) = exp(ad X)·exp(ad Y),
/// exact to the common order of X and Y.
///
/// The inputs must carry exact polynomial coefficients (compositions of
/// genuinely truncated series would need the caller to widen them first).
pub fn compose(x: &WElement, y: &WElement) -> Result<WElement> {
    if x.order() != y.order() {
        return Err(Error::usage(format!(
            "order mismatch: {} vs {}",
            x.order(),
            y.order()
        )));
    }
    let n = x.order();
    let deep = n + COMPOSE_PADDING;
    let xd = lift_exact(x, deep);
    let yd = lift_exact(y, deep);
    let qx = exp_ad(&xd)?;
    let qy = exp_ad(&yd)?;
    let q = qx.then(&qy)?;
    let triple = log_aut_matrix(&q)?;
    Ok(triple.to_welement(n))
}

/// Re-declares the coefficients of `e` as exact polynomials at a deeper
/// order. Sound only when `e` was built from polynomial data.
fn lift_exact(e: &WElement, order: u32) -> WElement {
    WElement::from_parts(
        e.p0().with_order_exact(u32::MAX),
        e.px().with_order_exact(u32::MAX),
        e.py().with_order_exact(u32::MAX),
        e.pz().with_order_exact(u32::MAX),
        order,
    )
}

/// Reduction of an element modulo nilpotency class c: content of
/// x,y-degree above c is dropped.
pub fn reduce_welement_mod_class(e: &WElement, class: u32) -> WElement {
    assert!(class >= 2, "nilpotency class must be at least 2");
    e.truncate(class.min(e.order()))
}

/// The definitional exponential Σₙ (e ad^n X)/n!, summed until the terms
/// vanish at the truncation order. The closed form is tested against this.
pub fn exp_by_summation(e: &WElement, x: &WElement) -> Result<WElement> {
    let mut acc = e.clone();
    let mut term = e.clone();
    for n in 1..=e.order() {
        term = crate::walg::w_bracket(&term, x)?;
        if term.is_zero() {
            break;
        }
        acc = &acc + &term.scale(&(rat(1, 1) / factorial(n)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarSpec;
    use crate::rat::rat_int;
    use crate::walg::{from_word, w_bracket};
    use std::sync::Arc;

    fn tuv() -> Arc<VarSpec> {
        VarSpec::tuv()
    }

    fn x_elem(order: u32) -> WElement {
        WElement::gen_x(&tuv(), order)
    }

    fn sample_x() -> WElement {
        // X = (1 + t)·x − 2v·y + (3/2)·[x,y] at order 10.
        let vars = tuv();
        let t = Poly::var(&vars, 0);
        let v = Poly::var(&vars, 2);
        WElement::from_polys(
            Poly::zero(&vars),
            &Poly::one(&vars) + &t,
            v.scale(&rat_int(-2)),
            Poly::constant(&vars, rat(3, 2)),
            10,
        )
    }

    #[test]
    fn adjoint_matrix_of_the_generators() {
        let vars = tuv();
        let m = ad_matrix(&x_elem(8)).unwrap();
        // Columns: image of x is 0, of y is −z, of z is 2(vx − ty).
        let expect = [
            ["0", "0", "2*v"],
            ["0", "0", "-2*t"],
            ["0", "-1", "0"],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(format!("{}", m.matrix().entry(i, j)), expect[i][j]);
            }
        }
        // For z: a=b=0, c=1.
        let m = ad_matrix(&WElement::gen_z(&vars, 8)).unwrap();
        let expect = [
            ["-2*v", "-2*u", "0"],
            ["2*t", "2*v", "0"],
            ["0", "0", "0"],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(format!("{}", m.matrix().entry(i, j)), expect[i][j]);
            }
        }
    }

    #[test]
    fn adjoint_action_matches_brackets() {
        let vars = tuv();
        let x = sample_x();
        let m = ad_matrix(&x).unwrap();
        for word in ["y", "xy", "xyx"] {
            let e = from_word(&vars, &crate::mat2::parse_word(word).unwrap(), 10);
            // The matrix ignores the scalar part, which a true bracket
            // also annihilates.
            let direct = w_bracket(&e, &x).unwrap();
            assert_eq!(m.apply(&e).unwrap(), direct, "word {word}");
        }
    }

    #[test]
    fn g_closed_form_and_cube_identity() {
        let vars = tuv();
        let t = Poly::var(&vars, 0);
        let u = Poly::var(&vars, 1);
        let v = Poly::var(&vars, 2);
        // X = x → g = 2t; X = z → g = 4(v² − tu).
        assert_eq!(
            g_of(&x_elem(8)).unwrap().poly(),
            &t.scale(&rat_int(2))
        );
        let disc = &(&v * &v) - &(&t * &u);
        assert_eq!(
            g_of(&WElement::gen_z(&vars, 8)).unwrap().poly(),
            &disc.scale(&rat_int(4))
        );

        // M³ = g·M for a mixed element.
        let x = sample_x();
        let m = ad_matrix(&x).unwrap();
        let g = g_of(&x).unwrap();
        let m2 = m.matrix() * m.matrix();
        let m3 = (&m2 * m.matrix()).truncate_rows(row_orders(10));
        let gm = m.matrix().scale_series(&g).truncate_rows(row_orders(10));
        assert_eq!(m3, gm);
        // tr(M) = 0 and tr(M²) = 2g.
        assert!(m.matrix().trace().is_zero());
        let tr2 = m2.trace();
        assert!(tr2.eq_to_order(&g.scale(&rat_int(2)), tr2.order()));
    }

    #[test]
    fn exponential_of_x_in_closed_form() {
        // Column 2 of exp(ad x): (−2Bv, 1 + 2Bt, −A) at A(2t), B(2t).
        let q = exp_ad(&x_elem(10)).unwrap();
        let vars = tuv();
        let two_t = TruncSeries::new(Poly::var(&vars, 0).scale(&rat_int(2)), 10);
        let a2t = a_series(11).compose_multi(&two_t);
        let b2t = b_series(11).compose_multi(&two_t);
        let t = Poly::var(&vars, 0);
        let v = Poly::var(&vars, 2);
        let col2 = [
            b2t.mul_poly(&v).scale(&rat_int(-2)),
            &TruncSeries::one(&vars, 9) + &b2t.mul_poly(&t).scale(&rat_int(2)),
            -&a2t,
        ];
        for (i, want) in col2.iter().enumerate() {
            let got = q.matrix().entry(i, 1);
            assert!(
                got.eq_to_order(want, got.order()),
                "row {i}: {got} vs {want}"
            );
        }
        // Cached A, B match the direct compositions.
        assert!(q.a_series().eq_to_order(&a2t, 9));
        assert!(q.b_series().eq_to_order(&b2t, 9));
    }

    #[test]
    fn exponential_matches_summation_oracle() {
        let vars = tuv();
        let x = sample_x();
        let q = exp_ad(&x).unwrap();
        for word in ["y", "x", "xy", "yxy"] {
            let e = from_word(&vars, &crate::mat2::parse_word(word).unwrap(), 10);
            let direct = exp_by_summation(&e, &x).unwrap();
            assert_eq!(q.apply(&e).unwrap(), direct, "word {word}");
        }
    }

    #[test]
    fn automorphism_is_multiplicative() {
        let vars = tuv();
        let x = sample_x();
        let q = exp_ad(&x).unwrap();
        let e1 = from_word(&vars, &crate::mat2::parse_word("xy").unwrap(), 10);
        let e2 = from_word(&vars, &crate::mat2::parse_word("yx").unwrap(), 10);
        let lhs = q.apply(&crate::walg::w_mul(&e1, &e2).unwrap()).unwrap();
        let rhs = crate::walg::w_mul(&q.apply(&e1).unwrap(), &q.apply(&e2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_identity() {
        let x = sample_x();
        let q = exp_ad(&x).unwrap();
        // tr(Q) = 3 + 2·B·g.
        let tr = q.matrix().trace();
        let want = &TruncSeries::constant(&tuv(), rat_int(3), tr.order())
            + &(q.b_series() * q.g()).scale(&rat_int(2));
        assert!(tr.eq_to_order(&want, tr.order()));
    }

    #[test]
    fn exp_log_round_trip() {
        let x = sample_x();
        let q = exp_ad(&x).unwrap();
        let triple = log_aut(&q).unwrap();
        // a, b recovered through order 8, c through order 7.
        assert!(triple.a.eq_to_order(x.px(), 8));
        assert!(triple.b.eq_to_order(x.py(), 8));
        assert!(triple.c.eq_to_order(x.pz(), 7));
        assert_eq!(triple.a.order(), 8);
        assert_eq!(triple.c.order(), 7);

        // Identity matrix → zero logarithm.
        let zero = WElement::zero(&tuv(), 10);
        let triple = log_aut(&exp_ad(&zero).unwrap()).unwrap();
        assert!(triple.a.is_zero() && triple.b.is_zero() && triple.c.is_zero());
    }

    #[test]
    fn tampering_is_detected() {
        let x = sample_x();
        let mut q = exp_ad(&x).unwrap();
        let e = q.q.entry(0, 2).clone();
        let t = Poly::var(&tuv(), 0);
        q.q.set_entry(0, 2, &e + &TruncSeries::new(t, e.order()));
        match log_aut(&q) {
            Err(Error::Consistency(_)) => {}
            other => panic!("expected a consistency failure, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn composition_group_law() {
        let vars = tuv();
        let x = WElement::gen_x(&vars, 8);
        let y = WElement::gen_y(&vars, 8);

        // Inverses compose to the identity.
        let z = compose(&x, &(-&x)).unwrap();
        assert!(z.is_zero());

        // Low-degree expansion of the product:
        // x + y + ½[x,y] − (1/6)(xv−yt) + (1/6)(xu−yv) − (1/12)v·[x,y] + ...
        let z = compose(&x, &y).unwrap();
        let zc = z.truncate(4);
        let t = Poly::var(&vars, 0);
        let u = Poly::var(&vars, 1);
        let v = Poly::var(&vars, 2);
        let px = &v.scale(&rat(-1, 6)) + &u.scale(&rat(1, 6));
        let px = &Poly::one(&vars) + &px;
        let py = &t.scale(&rat(1, 6)) + &v.scale(&rat(-1, 6));
        let py = &Poly::one(&vars) + &py;
        let pz = &Poly::constant(&vars, rat(1, 2)) + &v.scale(&rat(-1, 12));
        let expect = WElement::from_polys(Poly::zero(&vars), px, py, pz, 4);
        assert_eq!(zc, expect);

        // Homomorphism property at the matrix level.
        let qz = exp_ad(&z).unwrap();
        let qx = exp_ad(&x).unwrap();
        let qy = exp_ad(&y).unwrap();
        let prod = qx.then(&qy).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let lhs = qz.matrix().entry(i, j);
                let rhs = prod.entry(i, j);
                let common = lhs.order().min(rhs.order());
                assert!(lhs.eq_to_order(rhs, common), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn class_reduction() {
        let x = x_elem(8);
        let q = exp_ad(&x).unwrap();
        let reduced = q.reduce_mod_class(3);
        // Mod ω², column 2 becomes (−v, 1 + t, −1 − t/3).
        let vars = tuv();
        let t = Poly::var(&vars, 0);
        let v = Poly::var(&vars, 2);
        let want = [
            v.neg(),
            &Poly::one(&vars) + &t,
            &Poly::constant(&vars, rat_int(-1)) + &t.scale(&rat(-1, 3)),
        ];
        for (i, w) in want.iter().enumerate() {
            assert_eq!(reduced.matrix().entry(i, 1).poly(), w, "row {i}");
        }
        // Idempotent.
        assert_eq!(reduced.reduce_mod_class(3), reduced);
    }

    #[test]
    fn json_round_trips() {
        let x = sample_x();
        let m = ad_matrix(&x).unwrap();
        assert_eq!(AdMatrix::from_json(&m.to_json()).unwrap(), m);
        let q = exp_ad(&x).unwrap();
        let back = AutMatrix::from_json(&q.to_json()).unwrap();
        assert_eq!(back.matrix(), q.matrix());
        assert!(back.g().eq_to_order(q.g(), back.g().order().min(q.g().order())));
    }
}
