//! The rank-4 module with basis {1, x, y, z = [x,y]} over the invariant
//! ring Q[t, u, v], where t = tr(x^2), u = tr(y^2), v = tr(xy).
//!
//! Elements are truncated by total x,y-degree: the basis elements carry
//! degrees 0, 1, 1, 2, and the scalars t, u, v each carry degree 2. An
//! element of order N therefore stores its four coefficient series at
//! orders N, N-1, N-1, N-2.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::mat2::{self, Gen, GenMat};
use crate::poly::{Poly, VarSpec};
use crate::rat::{rat, Rat};
use crate::series::TruncSeries;

/// Degree offsets of the basis elements 1, x, y, z.
const OFFSETS: [u32; 4] = [0, 1, 1, 2];

/// Truncation order of one coefficient series inside an element of order
/// `n`; `None` when the basis element's own degree already exceeds `n`.
fn component_order(n: u32, offset: u32) -> Option<u32> {
    n.checked_sub(offset)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WElement {
    order: u32,
    p0: TruncSeries,
    px: TruncSeries,
    py: TruncSeries,
    pz: TruncSeries,
}

impl WElement {
    /// Builds an element from its four coefficient series, truncating each
    /// to the order profile of `order`. Each supplied series must already
    /// be at least as precise as the slot it fills.
    pub fn from_parts(
        p0: TruncSeries,
        px: TruncSeries,
        py: TruncSeries,
        pz: TruncSeries,
        order: u32,
    ) -> WElement {
        let fit = |s: TruncSeries, offset: u32| -> TruncSeries {
            match component_order(order, offset) {
                Some(target) => {
                    assert!(
                        s.order() >= target,
                        "coefficient series of order {} is too short for slot {} of an order-{} element",
                        s.order(),
                        target,
                        order
                    );
                    s.truncated(target)
                }
                None => TruncSeries::zero(s.vars(), 0),
            }
        };
        let vars = p0.vars().clone();
        assert!(
            px.vars() == &vars && py.vars() == &vars && pz.vars() == &vars,
            "variable spec mismatch"
        );
        WElement {
            order,
            p0: fit(p0, OFFSETS[0]),
            px: fit(px, OFFSETS[1]),
            py: fit(py, OFFSETS[2]),
            pz: fit(pz, OFFSETS[3]),
        }
    }

    /// Builds an element from exact polynomial coefficients.
    pub fn from_polys(p0: Poly, px: Poly, py: Poly, pz: Poly, order: u32) -> WElement {
        WElement::from_parts(
            TruncSeries::exact(p0),
            TruncSeries::exact(px),
            TruncSeries::exact(py),
            TruncSeries::exact(pz),
            order,
        )
    }

    pub fn zero(vars: &Arc<VarSpec>, order: u32) -> WElement {
        let z = Poly::zero(vars);
        WElement::from_polys(z.clone(), z.clone(), z.clone(), z, order)
    }

    pub fn one(vars: &Arc<VarSpec>, order: u32) -> WElement {
        let z = Poly::zero(vars);
        WElement::from_polys(Poly::one(vars), z.clone(), z.clone(), z, order)
    }

    /// The generator x.
    pub fn gen_x(vars: &Arc<VarSpec>, order: u32) -> WElement {
        let z = Poly::zero(vars);
        WElement::from_polys(z.clone(), Poly::one(vars), z.clone(), z, order)
    }

    /// The generator y.
    pub fn gen_y(vars: &Arc<VarSpec>, order: u32) -> WElement {
        let z = Poly::zero(vars);
        WElement::from_polys(z.clone(), z.clone(), Poly::one(vars), z, order)
    }

    /// The commutator z = [x, y].
    pub fn gen_z(vars: &Arc<VarSpec>, order: u32) -> WElement {
        let z = Poly::zero(vars);
        WElement::from_polys(z.clone(), z.clone(), z, Poly::one(vars), order)
    }

    pub fn generator(vars: &Arc<VarSpec>, g: Gen, order: u32) -> WElement {
        match g {
            Gen::X => WElement::gen_x(vars, order),
            Gen::Y => WElement::gen_y(vars, order),
        }
    }

    /// A scalar (degree-zero basis) element.
    pub fn scalar(s: TruncSeries, order: u32) -> WElement {
        let z = TruncSeries::zero(s.vars(), order);
        WElement::from_parts(s, z.clone(), z.clone(), z, order)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn vars(&self) -> &Arc<VarSpec> {
        self.p0.vars()
    }

    pub fn p0(&self) -> &TruncSeries {
        &self.p0
    }

    pub fn px(&self) -> &TruncSeries {
        &self.px
    }

    pub fn py(&self) -> &TruncSeries {
        &self.py
    }

    pub fn pz(&self) -> &TruncSeries {
        &self.pz
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.px.is_zero() && self.py.is_zero() && self.pz.is_zero()
    }

    /// Drops all content of x,y-degree above `n`.
    pub fn truncate(&self, n: u32) -> WElement {
        assert!(n <= self.order, "cannot extend an element's order");
        let fit = |s: &TruncSeries, offset: u32| match component_order(n, offset) {
            Some(target) => s.truncated(target),
            None => TruncSeries::zero(s.vars(), 0),
        };
        WElement {
            order: n,
            p0: fit(&self.p0, OFFSETS[0]),
            px: fit(&self.px, OFFSETS[1]),
            py: fit(&self.py, OFFSETS[2]),
            pz: fit(&self.pz, OFFSETS[3]),
        }
    }

    /// Reduces every coefficient modulo the ideal generated by the degree-k
    /// monomials in t, u, v (unweighted exponent count).
    pub fn reduce_mod_omega(&self, k: u32) -> WElement {
        WElement {
            order: self.order,
            p0: self.p0.reduce_mod_omega(k),
            px: self.px.reduce_mod_omega(k),
            py: self.py.reduce_mod_omega(k),
            pz: self.pz.reduce_mod_omega(k),
        }
    }

    pub fn scale(&self, r: &Rat) -> WElement {
        WElement {
            order: self.order,
            p0: self.p0.scale(r),
            px: self.px.scale(r),
            py: self.py.scale(r),
            pz: self.pz.scale(r),
        }
    }

    /// Multiplies by a scalar polynomial.
    pub fn scale_poly(&self, p: &Poly) -> WElement {
        WElement::from_parts(
            self.p0.mul_poly(p),
            self.px.mul_poly(p),
            self.py.mul_poly(p),
            self.pz.mul_poly(p),
            self.order,
        )
    }

    /// Fails unless the orders agree; binary operations require it.
    fn check_order(&self, other: &WElement) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "order mismatch: {} vs {}",
                self.order, other.order
            )))
        }
    }

    /// Substitutes the generic matrices for x, y, z and the trace
    /// polynomials for t, u, v. Exact; meaningful when the coefficients
    /// are polynomials rather than genuinely truncated series.
    pub fn eval_generic(&self) -> GenMat {
        let x = GenMat::generic_x();
        let y = GenMat::generic_y();
        let z = mat2::bracket(&x, &y);
        let (t, u, v) = mat2::invariants();
        let subs = [t, u, v];
        let id = GenMat::identity(x.vars());
        let coeff = |s: &TruncSeries| s.poly().eval_subst(&subs);
        let mut acc = id.scale(&coeff(&self.p0));
        acc = &acc + &x.scale(&coeff(&self.px));
        acc = &acc + &y.scale(&coeff(&self.py));
        acc = &acc + &z.scale(&coeff(&self.pz));
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "p0": self.p0.poly().to_json(),
            "px": self.px.poly().to_json(),
            "py": self.py.poly().to_json(),
            "pz": self.pz.poly().to_json(),
        })
    }

    pub fn from_json(value: &Value) -> Result<WElement> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::usage("element JSON must be an object"))?;
        let order = obj
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::usage("element JSON needs a numeric \"order\""))?
            as u32;
        let vars = VarSpec::tuv();
        let field = |name: &str| -> Result<Poly> {
            Poly::from_json(
                &vars,
                obj.get(name)
                    .ok_or_else(|| Error::usage(format!("element JSON missing \"{name}\"")))?,
            )
        };
        Ok(WElement::from_polys(
            field("p0")?,
            field("px")?,
            field("py")?,
            field("pz")?,
            order,
        ))
    }
}

/// The product, via the closed form of the basis multiplication table:
/// x·x = t/2, y·y = u/2, x·y = (v+z)/2, y·x = (v−z)/2, x·z = ty − vx,
/// z·x = vx − ty, y·z = vy − ux, z·y = ux − vy, z·z = v² − tu.
pub fn w_mul(p: &WElement, q: &WElement) -> Result<WElement> {
    p.check_order(q)?;
    let vars = p.vars();
    let t = Poly::var(vars, 0);
    let u = Poly::var(vars, 1);
    let v = Poly::var(vars, 2);
    let disc = &(&v * &v) - &(&t * &u);
    let half = rat(1, 2);

    let p0q0 = &p.p0 * &q.p0;
    let pxqx = &p.px * &q.px;
    let pyqy = &p.py * &q.py;
    let pxqy = &p.px * &q.py;
    let pyqx = &p.py * &q.px;
    let pzqz = &p.pz * &q.pz;

    let r0 = &(&(&p0q0 + &pxqx.mul_poly(&t.scale(&half)))
        + &pyqy.mul_poly(&u.scale(&half)))
        + &(&(&pxqy + &pyqx).mul_poly(&v.scale(&half)) + &pzqz.mul_poly(&disc));

    let rx = &(&(&p.p0 * &q.px) + &(&p.px * &q.p0))
        + &(&(&(&p.pz * &q.px) - &(&p.px * &q.pz)).mul_poly(&v)
            + &(&(&p.pz * &q.py) - &(&p.py * &q.pz)).mul_poly(&u));

    let ry = &(&(&p.p0 * &q.py) + &(&p.py * &q.p0))
        + &(&(&(&p.px * &q.pz) - &(&p.pz * &q.px)).mul_poly(&t)
            + &(&(&p.py * &q.pz) - &(&p.pz * &q.py)).mul_poly(&v));

    let rz = &(&(&p.p0 * &q.pz) + &(&p.pz * &q.p0))
        + &(&(&pxqy - &pyqx).scale(&half));

    Ok(WElement::from_parts(r0, rx, ry, rz, p.order))
}

/// `[p, q] = pq - qp`.
pub fn w_bracket(p: &WElement, q: &WElement) -> Result<WElement> {
    Ok(&w_mul(p, q)? - &w_mul(q, p)?)
}

/// Iterated bracketing: `arg`, then `[arg, base]`, `[[arg, base], base]`,
/// and so on, `n` times.
pub fn w_ad_power(arg: &WElement, base: &WElement, n: u32) -> Result<WElement> {
    let mut acc = arg.clone();
    for _ in 0..n {
        acc = w_bracket(&acc, base)?;
    }
    Ok(acc)
}

/// The product of generators along a word.
pub fn from_word(vars: &Arc<VarSpec>, word: &[Gen], order: u32) -> WElement {
    assert!(
        word.len() as u32 <= order,
        "word of length {} exceeds truncation order {}",
        word.len(),
        order
    );
    assert!(!word.is_empty(), "empty word");
    let mut acc = WElement::generator(vars, word[0], order);
    for &g in &word[1..] {
        let f = WElement::generator(vars, g, order);
        acc = w_mul(&acc, &f).expect("orders agree by construction");
    }
    acc
}

impl std::ops::Add for &WElement {
    type Output = WElement;
    fn add(self, other: &WElement) -> WElement {
        self.check_order(other).expect("order mismatch in +");
        WElement {
            order: self.order,
            p0: &self.p0 + &other.p0,
            px: &self.px + &other.px,
            py: &self.py + &other.py,
            pz: &self.pz + &other.pz,
        }
    }
}

impl std::ops::Sub for &WElement {
    type Output = WElement;
    fn sub(self, other: &WElement) -> WElement {
        self.check_order(other).expect("order mismatch in -");
        WElement {
            order: self.order,
            p0: &self.p0 - &other.p0,
            px: &self.px - &other.px,
            py: &self.py - &other.py,
            pz: &self.pz - &other.pz,
        }
    }
}

impl std::ops::Neg for &WElement {
    type Output = WElement;
    fn neg(self) -> WElement {
        self.scale(&rat(-1, 1))
    }
}

impl fmt::Display for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.p0.is_zero() {
            parts.push(format!("{}", self.p0));
        }
        for (s, sym) in [(&self.px, "x"), (&self.py, "y"), (&self.pz, "[x,y]")] {
            if s.is_zero() {
                continue;
            }
            if s.poly().is_one() {
                parts.push(sym.to_string());
            } else {
                parts.push(format!("({})·{}", s, sym));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat2::parse_word;
    use crate::rat::rat_int;

    fn tuv() -> Arc<VarSpec> {
        VarSpec::tuv()
    }

    fn gens(order: u32) -> (WElement, WElement, WElement) {
        let vars = tuv();
        (
            WElement::gen_x(&vars, order),
            WElement::gen_y(&vars, order),
            WElement::gen_z(&vars, order),
        )
    }

    fn poly_t() -> Poly {
        Poly::var(&tuv(), 0)
    }

    fn poly_u() -> Poly {
        Poly::var(&tuv(), 1)
    }

    fn poly_v() -> Poly {
        Poly::var(&tuv(), 2)
    }

    #[test]
    fn multiplication_table() {
        let (x, y, z) = gens(8);
        let vars = tuv();
        let half = rat(1, 2);

        let xx = w_mul(&x, &x).unwrap();
        assert_eq!(xx, WElement::scalar(TruncSeries::exact(poly_t().scale(&half)), 8));

        let yy = w_mul(&y, &y).unwrap();
        assert_eq!(yy, WElement::scalar(TruncSeries::exact(poly_u().scale(&half)), 8));

        // x·y + y·x = v, x·y − y·x = z.
        let xy = w_mul(&x, &y).unwrap();
        let yx = w_mul(&y, &x).unwrap();
        assert_eq!(
            &xy + &yx,
            WElement::scalar(TruncSeries::exact(poly_v()), 8)
        );
        assert_eq!(&xy - &yx, z);

        // x·z = ty − vx and x·z + z·x = 0.
        let xz = w_mul(&x, &z).unwrap();
        let expect = WElement::from_polys(
            Poly::zero(&vars),
            poly_v().neg(),
            poly_t(),
            Poly::zero(&vars),
            8,
        );
        assert_eq!(xz, expect);
        let zx = w_mul(&z, &x).unwrap();
        assert!((&xz + &zx).is_zero());

        // y·z = vy − ux; z·y = ux − vy.
        let yz = w_mul(&y, &z).unwrap();
        let expect = WElement::from_polys(
            Poly::zero(&vars),
            poly_u().neg(),
            poly_v(),
            Poly::zero(&vars),
            8,
        );
        assert_eq!(yz, expect);
        assert_eq!(w_mul(&z, &y).unwrap(), expect.scale(&rat_int(-1)));

        // z·z = v² − tu.
        let zz = w_mul(&z, &z).unwrap();
        let disc = &(&poly_v() * &poly_v()) - &(&poly_t() * &poly_u());
        assert_eq!(zz, WElement::scalar(TruncSeries::exact(disc), 8));
    }

    #[test]
    fn ad_power_closed_forms() {
        let (x, y, z) = gens(10);
        let vars = tuv();

        // y ad^2 x = 2(−vx + ty).
        let got = w_ad_power(&y, &x, 2).unwrap();
        let expect = WElement::from_polys(
            Poly::zero(&vars),
            poly_v().scale(&rat_int(-2)),
            poly_t().scale(&rat_int(2)),
            Poly::zero(&vars),
            10,
        );
        assert_eq!(got, expect);

        // x ad^3 y = 2u·[x,y].
        let got = w_ad_power(&x, &y, 3).unwrap();
        assert_eq!(got, z.scale_poly(&poly_u().scale(&rat_int(2))));

        // The even/odd closed forms for k = 1..4.
        for k in 1u32..=4 {
            let two_k = Rat::from_integer(num_bigint::BigInt::from(1i64 << k));
            // y ad^{2k} x = 2^k t^{k−1} (−vx + ty).
            let got = w_ad_power(&y, &x, 2 * k).unwrap();
            let tk1 = poly_t().pow(k - 1);
            let expect = WElement::from_polys(
                Poly::zero(&vars),
                (&poly_v() * &tk1).scale(&-&two_k),
                (&poly_t() * &tk1).scale(&two_k),
                Poly::zero(&vars),
                10,
            );
            assert_eq!(got, expect);
            // y ad^{2k+1} x = 2^k t^k [y,x] = −2^k t^k z.
            let got = w_ad_power(&y, &x, 2 * k + 1).unwrap();
            let expect = WElement::from_polys(
                Poly::zero(&vars),
                Poly::zero(&vars),
                Poly::zero(&vars),
                poly_t().pow(k).scale(&-&two_k),
                10,
            );
            assert_eq!(got, expect);
            // x ad^{2k} y = 2^k u^{k−1} (ux − vy).
            let got = w_ad_power(&x, &y, 2 * k).unwrap();
            let uk1 = poly_u().pow(k - 1);
            let expect = WElement::from_polys(
                Poly::zero(&vars),
                (&poly_u() * &uk1).scale(&two_k),
                (&poly_v() * &uk1).scale(&-&two_k),
                Poly::zero(&vars),
                10,
            );
            assert_eq!(got, expect);
            // x ad^{2k+1} y = 2^k u^k [x,y].
            let got = w_ad_power(&x, &y, 2 * k + 1).unwrap();
            let expect = WElement::from_polys(
                Poly::zero(&vars),
                Poly::zero(&vars),
                Poly::zero(&vars),
                poly_u().pow(k).scale(&two_k),
                10,
            );
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn words() {
        let vars = tuv();
        // xyx = vx − (t/2)y.
        let got = from_word(&vars, &parse_word("xyx").unwrap(), 8);
        let expect = WElement::from_polys(
            Poly::zero(&vars),
            poly_v(),
            poly_t().scale(&rat(-1, 2)),
            Poly::zero(&vars),
            8,
        );
        assert_eq!(got, expect);

        // xx = t/2.
        let got = from_word(&vars, &parse_word("xx").unwrap(), 8);
        assert_eq!(
            got,
            WElement::scalar(TruncSeries::exact(poly_t().scale(&rat(1, 2))), 8)
        );

        // Associativity through a split product.
        let whole = from_word(&vars, &parse_word("xyxy").unwrap(), 8);
        let left = from_word(&vars, &parse_word("x").unwrap(), 8);
        let right = from_word(&vars, &parse_word("yxy").unwrap(), 8);
        assert_eq!(whole, w_mul(&left, &right).unwrap());
    }

    #[test]
    fn generic_matrix_oracle_on_words() {
        // The module product must match honest matrix products, for every
        // word of length at most 4.
        let vars = tuv();
        for len in 1usize..=4 {
            for bits in 0..(1u32 << len) {
                let word: Vec<Gen> = (0..len)
                    .map(|i| if bits >> i & 1 == 0 { Gen::X } else { Gen::Y })
                    .collect();
                let symbolic = from_word(&vars, &word, 6).eval_generic();
                let direct = mat2::eval_word(&word);
                assert_eq!(symbolic, direct, "word {:?}", word);
            }
        }
    }

    #[test]
    fn weak_identities() {
        let (x, y, _) = gens(8);
        let xx = w_mul(&x, &x).unwrap();
        let yy = w_mul(&y, &y).unwrap();
        assert!(w_bracket(&xx, &y).unwrap().is_zero());
        assert!(w_bracket(&yy, &x).unwrap().is_zero());
    }

    #[test]
    fn truncation() {
        let vars = tuv();
        let tx = WElement::gen_x(&vars, 8).scale_poly(&poly_t());
        assert!(tx.truncate(2).is_zero());
        let z = WElement::gen_z(&vars, 8);
        let z2 = z.truncate(2);
        assert!(!z2.is_zero());
        assert_eq!(z2.truncate(2), z2);
        assert!(z.truncate(1).is_zero());
    }

    #[test]
    fn display_forms() {
        let vars = tuv();
        let (x, y, z) = gens(8);
        let e = &(&x + &y) + &z.scale(&rat(1, 2));
        assert_eq!(format!("{}", e), "x + y + (1/2)·[x,y]");
        assert_eq!(format!("{}", WElement::zero(&vars, 8)), "0");
        let tx = x.scale_poly(&poly_t().neg());
        assert_eq!(format!("{}", tx), "(-t)·x");
        let s = WElement::scalar(TruncSeries::exact(poly_t().scale(&rat(1, 2))), 8);
        assert_eq!(format!("{}", s), "1/2*t");
    }

    #[test]
    fn json_round_trip() {
        let vars = tuv();
        let e = from_word(&vars, &parse_word("xyxy").unwrap(), 8);
        let back = WElement::from_json(&e.to_json()).unwrap();
        assert_eq!(e, back);
    }
}
