//! Adjoint calculus for the three-dimensional Lie algebra spanned by
//! p1, p2, p3 with brackets [p1,p2] = p1, [p1,p3] = 2·p2, [p2,p3] = p3.
//!
//! An element X = x1·p1 + x2·p2 + x3·p3 with series coordinates acts by
//! ad X, whose matrix P satisfies P³ = g·P for the scalar
//! g = x2² − 4·x1·x3. The exponential of the action is the closed form
//! Q = I + A(g)·P + B(g)·P², and X is recovered from Q by reading g off
//! the trace and dividing three entry combinations by 2·A(g). Everything
//! stays inside rational coefficients; √g is never formed.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::inner::{g_from_trace, sub_identity, uni_terms};
use crate::mat3::Mat3;
use crate::poly::{Poly, VarSpec};
use crate::rat::{rat, rat_int};
use crate::series::TruncSeries;
use crate::uniseries::{a_series, b_series};

/// Sign convention for the adjoint action: `p_matrix(x)` applied to the
/// coordinate column of Y yields the coordinates of [Y, X].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G3Element {
    coords: [TruncSeries; 3],
}

impl G3Element {
    /// Packs three coordinate series; they must share the variable set and
    /// the truncation order.
    pub fn new(coords: [TruncSeries; 3]) -> G3Element {
        let order = coords[0].order();
        let vars = coords[0].vars().clone();
        for c in &coords {
            assert!(Arc::ptr_eq(c.vars(), &vars), "mixed variable sets");
            assert_eq!(c.order(), order, "mixed coordinate orders");
        }
        G3Element { coords }
    }

    pub fn from_polys(polys: [Poly; 3], order: u32) -> G3Element {
        G3Element::new(polys.map(|p| TruncSeries::new(p, order)))
    }

    pub fn zero(vars: &Arc<VarSpec>, order: u32) -> G3Element {
        G3Element::new([
            TruncSeries::zero(vars, order),
            TruncSeries::zero(vars, order),
            TruncSeries::zero(vars, order),
        ])
    }

    /// The i-th basis element (i in 1..=3) as a constant-coordinate element.
    pub fn basis(vars: &Arc<VarSpec>, i: usize, order: u32) -> G3Element {
        assert!((1..=3).contains(&i), "basis index must be 1, 2 or 3");
        let mut e = G3Element::zero(vars, order);
        e.coords[i - 1] = TruncSeries::one(vars, order);
        e
    }

    pub fn coords(&self) -> &[TruncSeries; 3] {
        &self.coords
    }

    /// Coordinate by basis index (1..=3).
    pub fn coord(&self, i: usize) -> &TruncSeries {
        assert!((1..=3).contains(&i), "coordinate index must be 1, 2 or 3");
        &self.coords[i - 1]
    }

    pub fn order(&self) -> u32 {
        self.coords[0].order()
    }

    pub fn vars(&self) -> &Arc<VarSpec> {
        self.coords[0].vars()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(TruncSeries::is_zero)
    }

    pub fn truncate(&self, order: u32) -> G3Element {
        assert!(order <= self.order(), "truncation cannot raise the order");
        G3Element::new([
            self.coords[0].truncated(order),
            self.coords[1].truncated(order),
            self.coords[2].truncated(order),
        ])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "x1": self.coords[0].poly().to_json(),
            "x2": self.coords[1].poly().to_json(),
            "x3": self.coords[2].poly().to_json(),
        })
    }

    pub fn from_json(vars: &Arc<VarSpec>, value: &Value) -> Result<G3Element> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::usage("element must be a JSON object"))?;
        let order = obj
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::usage("element needs a numeric \"order\""))?
            as u32;
        let mut coords = Vec::with_capacity(3);
        for key in ["x1", "x2", "x3"] {
            let v = obj
                .get(key)
                .ok_or_else(|| Error::usage(format!("element needs a \"{key}\" component")))?;
            coords.push(TruncSeries::new(Poly::from_json(vars, v)?, order));
        }
        let mut it = coords.into_iter();
        Ok(G3Element::new([
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ]))
    }
}

impl fmt::Display for G3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x1 = {}\nx2 = {}\nx3 = {}",
            self.coords[0].poly(),
            self.coords[1].poly(),
            self.coords[2].poly()
        )
    }
}

/// The bracket from the structure constants:
/// [X,Y] = (x1·y2 − x2·y1)·p1 + 2(x1·y3 − x3·y1)·p2 + (x2·y3 − x3·y2)·p3.
pub fn g3_bracket(x: &G3Element, y: &G3Element) -> Result<G3Element> {
    if x.order() != y.order() {
        return Err(Error::usage(format!(
            "order mismatch: {} vs {}",
            x.order(),
            y.order()
        )));
    }
    let n = x.order();
    let [x1, x2, x3] = x.coords();
    let [y1, y2, y3] = y.coords();
    let c1 = &(x1 * y2) - &(x2 * y1);
    let c2 = (&(x1 * y3) - &(x3 * y1)).scale(&rat_int(2));
    let c3 = &(x2 * y3) - &(x3 * y2);
    Ok(G3Element::new([
        c1.truncated(n),
        c2.truncated(n),
        c3.truncated(n),
    ]))
}

/// The matrix of ad X in the basis p1, p2, p3 (column j holds the
/// coordinates of [p_j, X]):
///
/// ```text
///     [  x2   -x1    0  ]
/// P = [ 2·x3   0   -2·x1]
///     [  0    x3   -x2  ]
/// ```
pub fn p_matrix(x: &G3Element) -> Mat3 {
    let n = x.order();
    let [x1, x2, x3] = x.coords();
    let zero = TruncSeries::zero(x.vars(), n);
    let two = rat_int(2);
    Mat3::new([
        [x2.clone(), -x1, zero.clone()],
        [x3.scale(&two), zero.clone(), x1.scale(&rat_int(-2))],
        [zero, x3.clone(), -x2],
    ])
}

/// The scalar with P³ = g·P and tr(P²) = 2g: g = x2² − 4·x1·x3.
pub fn g3_g(x: &G3Element) -> TruncSeries {
    let [x1, x2, x3] = x.coords();
    (&(x2 * x2) - &(x1 * x3).scale(&rat_int(4))).truncated(x.order())
}

/// Applies the matrix to the coordinate column of `y`.
pub fn g3_apply(m: &Mat3, y: &G3Element) -> Result<G3Element> {
    let n = y.order();
    let col = |i: usize| -> TruncSeries {
        let s = &(&(m.entry(i, 0) * y.coord(1)) + &(m.entry(i, 1) * y.coord(2)))
            + &(m.entry(i, 2) * y.coord(3));
        s.truncated(n)
    };
    Ok(G3Element::new([col(0), col(1), col(2)]))
}

/// The exponential of the adjoint action: Q = I + A(g)·P + B(g)·P².
///
/// The coordinates must have zero constant term (the scalars A(g), B(g)
/// are series in g, which must lie in the augmentation ideal).
pub fn g3_exp(x: &G3Element) -> Result<Mat3> {
    for (i, c) in x.coords().iter().enumerate() {
        if !c.constant_term().is_zero() {
            return Err(Error::usage(format!(
                "exponential requires coordinate x{} to have zero constant term",
                i + 1
            )));
        }
    }
    let n = x.order();
    let g = g3_g(x);
    let k = uni_terms(n);
    let big_a = a_series(k).compose_multi(&g);
    let big_b = b_series(k).compose_multi(&g);
    let p = p_matrix(x);
    let p2 = &p * &p;
    let id = Mat3::identity(x.vars(), [n, n, n]);
    let q = &(&id + &p.scale_series(&big_a)) + &p2.scale_series(&big_b);
    Ok(q.truncate_rows([n, n, n]))
}

/// Recovers X from Q = exp(ad X): g comes from the trace by series
/// reversion, and with M1 = −σ12 − σ23/2, M2 = σ11 − σ33,
/// M3 = σ21/2 + σ32 each coordinate is Mᵢ/(2·A(g)).
///
/// The redundant expressions the entries of Q provide for the Mᵢ are
/// checked in cross-multiplied form; disagreement (a matrix that is not an
/// exponential) fails with a consistency error.
pub fn g3_recover(q: &Mat3) -> Result<G3Element> {
    let n = matrix_order(q);
    let (big_a, m) = verify_m_chain(q)?;
    let inv2a = big_a.scale(&rat_int(2)).inverse()?;
    let coord = |m: &TruncSeries| (m * &inv2a).truncated(n);
    Ok(G3Element::new([coord(&m[0]), coord(&m[1]), coord(&m[2])]))
}

fn matrix_order(q: &Mat3) -> u32 {
    (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| q.entry(i, j).order())
        .min()
        .unwrap()
}

/// Confirms that the redundant entry combinations of a claimed exponential
/// agree, and hands back A(g) and the three numerators M₁, M₂, M₃ with
/// 2·A·xᵢ = Mᵢ. Fails with a consistency error on any disagreement.
///
/// Every pair below equates two of the entry formulas for B/A² (after
/// clearing denominators), plus one anchor tying them to A and B from the
/// trace. An honest exponential satisfies all of them identically.
pub fn verify_m_chain(q: &Mat3) -> Result<(TruncSeries, [TruncSeries; 3])> {
    let n = matrix_order(q);
    let vars = q.vars().clone();
    let g = g_from_trace(q)?;
    let k = uni_terms(n);
    let big_a = a_series(k).compose_multi(&g);
    let big_b = b_series(k).compose_multi(&g);

    let s = |i: usize, j: usize| q.entry(i - 1, j - 1);
    let half = rat(1, 2);
    let m1 = -&(s(1, 2) + &s(2, 3).scale(&half));
    let m2 = s(1, 1) - s(3, 3);
    let m3 = &s(2, 1).scale(&half) + s(3, 2);

    let one = TruncSeries::one(&vars, n);
    let qmi = sub_identity(q);
    let two = rat_int(2);
    let checks: [(TruncSeries, TruncSeries, &str); 5] = [
        (
            &s(1, 3).scale(&two) * &(&m3 * &m3),
            &s(3, 1).scale(&two) * &(&m1 * &m1),
            "corner entries",
        ),
        (
            &(&one - s(2, 2)) * &(&m1 * &m2),
            &(s(2, 3) - &s(1, 2).scale(&two)) * &(&m1 * &m3),
            "central entry",
        ),
        (
            &(qmi.entry(0, 0) + qmi.entry(2, 2)).scale(&two) * &(&m1 * &m1),
            &s(1, 3).scale(&two) * &(&(&m2 * &m2) - &(&m1 * &m3).scale(&two)),
            "diagonal sum",
        ),
        (
            &(s(2, 1) - &s(3, 2).scale(&two)) * &(&m1 * &m2),
            &(s(2, 3) - &s(1, 2).scale(&two)) * &(&m2 * &m3),
            "side entries",
        ),
        (
            &big_b * &(&m1 * &m1),
            &s(1, 3).scale(&two) * &(&big_a * &big_a),
            "trace scalars",
        ),
    ];
    for (lhs, rhs, what) in &checks {
        let common = lhs.order().min(rhs.order()).min(n);
        if !lhs.eq_to_order(rhs, common) {
            return Err(Error::consistency(format!(
                "matrix is not an exponential: the {what} give conflicting coordinates"
            )));
        }
    }
    Ok((big_a, [m1, m2, m3]))
}

/// The group law: the element Z with exp(ad Z) = exp(ad X)·exp(ad Y)
/// (X applied first), exact to the common order. Recovery loses no
/// precision here, so no internal padding is needed.
pub fn g3_compose(x: &G3Element, y: &G3Element) -> Result<G3Element> {
    if x.order() != y.order() {
        return Err(Error::usage(format!(
            "order mismatch: {} vs {}",
            x.order(),
            y.order()
        )));
    }
    let n = x.order();
    let qx = g3_exp(x)?;
    let qy = g3_exp(y)?;
    let q = (&qy * &qx).truncate_rows([n, n, n]);
    g3_recover(&q)
}

/// Serializes a matrix of uniform order with plain polynomial entries.
pub fn g3_matrix_to_json(q: &Mat3) -> Value {
    let order = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| q.entry(i, j).order())
        .min()
        .unwrap();
    let entries: Vec<Value> = (0..3)
        .map(|i| Value::Array((0..3).map(|j| q.entry(i, j).poly().to_json()).collect()))
        .collect();
    json!({ "order": order, "entries": entries })
}

pub fn g3_matrix_from_json(vars: &Arc<VarSpec>, value: &Value) -> Result<Mat3> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::usage("matrix must be a JSON object"))?;
    let order = obj
        .get("order")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::usage("matrix needs a numeric \"order\""))? as u32;
    let rows = obj
        .get("entries")
        .and_then(Value::as_array)
        .filter(|r| r.len() == 3)
        .ok_or_else(|| Error::usage("matrix needs 3 rows of \"entries\""))?;
    let mut cells = Vec::with_capacity(9);
    for row in rows {
        let row = row
            .as_array()
            .filter(|r| r.len() == 3)
            .ok_or_else(|| Error::usage("matrix row must have 3 entries"))?;
        for cell in row {
            cells.push(TruncSeries::new(Poly::from_json(vars, cell)?, order));
        }
    }
    let mut it = cells.into_iter();
    Ok(Mat3::from_fn(|_, _| it.next().expect("nine cells")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars3() -> Arc<VarSpec> {
        VarSpec::new(&[("x1", 1), ("x2", 1), ("x3", 1)])
    }

    fn generic(vars: &Arc<VarSpec>, order: u32) -> G3Element {
        G3Element::from_polys(
            [
                Poly::var(vars, 0),
                Poly::var(vars, 1),
                Poly::var(vars, 2),
            ],
            order,
        )
    }

    #[test]
    fn p_matrix_of_first_basis_element() {
        let vars = vars3();
        let p1 = G3Element::basis(&vars, 1, 4);
        let m = p_matrix(&p1);
        let rows: Vec<Vec<String>> = (0..3)
            .map(|i| (0..3).map(|j| m.entry(i, j).poly().to_string()).collect())
            .collect();
        assert_eq!(
            rows,
            vec![
                vec!["0", "-1", "0"],
                vec!["0", "0", "-2"],
                vec!["0", "0", "0"],
            ]
        );
        assert!(m.trace().is_zero());
    }

    #[test]
    fn columns_match_the_bracket() {
        let vars = vars3();
        let x = generic(&vars, 6);
        let m = p_matrix(&x);
        for j in 1..=3 {
            let pj = G3Element::basis(&vars, j, 6);
            let via_matrix = g3_apply(&m, &pj).unwrap();
            let via_bracket = g3_bracket(&pj, &x).unwrap();
            assert_eq!(via_matrix, via_bracket, "column {j}");
        }
        // The full action agrees on a composite element too.
        let y = G3Element::from_polys(
            [
                &Poly::var(&vars, 1) + &Poly::var(&vars, 2),
                Poly::var(&vars, 0).scale(&rat_int(3)),
                &Poly::var(&vars, 0) - &Poly::var(&vars, 1),
            ],
            6,
        );
        assert_eq!(
            g3_apply(&m, &y).unwrap(),
            g3_bracket(&y, &x).unwrap()
        );
    }

    #[test]
    fn g_values_on_basis_elements() {
        let vars = vars3();
        assert!(g3_g(&G3Element::basis(&vars, 1, 4)).is_zero());
        let g2 = g3_g(&G3Element::basis(&vars, 2, 4));
        assert!(g2.poly().is_one());
        assert!(g3_g(&G3Element::basis(&vars, 3, 4)).is_zero());
    }

    #[test]
    fn p_cubed_is_g_times_p() {
        let vars = vars3();
        let x = generic(&vars, 7);
        let p = p_matrix(&x);
        let g = g3_g(&x);
        let p3 = &(&p * &p) * &p;
        let gp = p.scale_series(&g);
        for i in 0..3 {
            for j in 0..3 {
                let got = p3.entry(i, j);
                let want = gp.entry(i, j);
                assert!(got.eq_to_order(want, 7), "entry ({i},{j})");
            }
        }
        // tr(P²) = 2g.
        let tr2 = (&p * &p).trace();
        assert!(tr2.eq_to_order(&g.scale(&rat_int(2)), 7));
    }

    #[test]
    fn exponential_of_zero_and_of_nilpotent_element() {
        let vars = vars3();
        let zero = G3Element::zero(&vars, 5);
        let q = g3_exp(&zero).unwrap();
        assert!(q.eq_to_order(&Mat3::identity(&vars, [5, 5, 5]), 5));

        // g vanishes on multiples of p1, so the series stops at P²/2.
        let x = G3Element::from_polys(
            [Poly::var(&vars, 0), Poly::zero(&vars), Poly::zero(&vars)],
            5,
        );
        let p = p_matrix(&x);
        let q = g3_exp(&x).unwrap();
        let id = Mat3::identity(&vars, [5, 5, 5]);
        let expect = &(&id + &p) + &(&p * &p).scale(&rat(1, 2));
        assert!(q.eq_to_order(&expect, 5));
    }

    #[test]
    fn constant_coordinates_are_rejected() {
        let vars = vars3();
        let p2 = G3Element::basis(&vars, 2, 4);
        assert!(matches!(g3_exp(&p2), Err(Error::Usage(_))));
    }

    #[test]
    fn recovery_round_trip() {
        let vars = vars3();
        let x1 = Poly::var(&vars, 0);
        let x2 = Poly::var(&vars, 1);
        let x3 = Poly::var(&vars, 2);
        let x = G3Element::from_polys(
            [
                &x1 + &(&x2 * &x3),
                &x2.scale(&rat_int(2)) - &x3.pow(2),
                &x3 + &x1.pow(3),
            ],
            8,
        );
        let q = g3_exp(&x).unwrap();
        let back = g3_recover(&q).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn recovery_of_identity_is_zero() {
        let vars = vars3();
        let id = Mat3::identity(&vars, [6, 6, 6]);
        let z = g3_recover(&id).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn tampered_matrix_is_rejected() {
        let vars = vars3();
        let x = generic(&vars, 6);
        let mut q = g3_exp(&x).unwrap();
        let bumped = q.entry(0, 2) + &TruncSeries::new(Poly::var(&vars, 1), 6);
        q.set_entry(0, 2, bumped);
        assert!(matches!(g3_recover(&q), Err(Error::Consistency(_))));
    }

    #[test]
    fn composition_satisfies_the_defining_identity() {
        let vars = VarSpec::new(&[
            ("s1", 1),
            ("s2", 1),
            ("s3", 1),
            ("s4", 1),
            ("s5", 1),
            ("s6", 1),
        ]);
        let n = 6;
        let x = G3Element::from_polys(
            [
                Poly::var(&vars, 0),
                Poly::var(&vars, 1),
                Poly::var(&vars, 2),
            ],
            n,
        );
        let y = G3Element::from_polys(
            [
                Poly::var(&vars, 3),
                Poly::var(&vars, 4),
                Poly::var(&vars, 5),
            ],
            n,
        );
        let z = g3_compose(&x, &y).unwrap();
        let product = (&g3_exp(&y).unwrap() * &g3_exp(&x).unwrap()).truncate_rows([n, n, n]);
        let qz = g3_exp(&z).unwrap();
        assert!(qz.eq_to_order(&product, n));

        // First-degree part of the composition is X + Y.
        for i in 1..=3 {
            let linear = z.coord(i).poly().truncate_weighted(1);
            let expect = &Poly::var(&vars, i - 1) + &Poly::var(&vars, i + 2);
            assert_eq!(linear, expect, "coordinate {i}");
        }

        // Composing with the inverse cancels.
        let minus_x = G3Element::new([
            -x.coord(1),
            -x.coord(2),
            -x.coord(3),
        ]);
        assert!(g3_compose(&x, &minus_x).unwrap().is_zero());
    }

    #[test]
    fn json_round_trips() {
        let vars = vars3();
        let x = G3Element::from_polys(
            [
                &Poly::var(&vars, 0) + &Poly::var(&vars, 1).pow(2),
                Poly::var(&vars, 1),
                Poly::var(&vars, 2).scale(&rat(1, 3)),
            ],
            5,
        );
        let back = G3Element::from_json(&vars, &x.to_json()).unwrap();
        assert_eq!(back, x);

        let q = g3_exp(&x).unwrap();
        let qb = g3_matrix_from_json(&vars, &g3_matrix_to_json(&q)).unwrap();
        assert!(q.eq_to_order(&qb, 5));
    }
}
