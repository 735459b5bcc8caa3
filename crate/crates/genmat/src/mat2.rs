//! Generic 2x2 matrices over a polynomial ring: the faithful model that
//! every symbolic identity in this crate is checked against.
//!
//! `generic_x` and `generic_y` are traceless with independent weight-1
//! entries; any polynomial identity of the abstract calculus must evaluate
//! to the zero matrix here, and conversely the generic pair is faithful for
//! the four-dimensional module with basis {1, x, y, [x,y]}.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::poly::{Poly, VarSpec};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenMat {
    e: [[Poly; 2]; 2],
}

/// The two non-commuting letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X,
    Y,
}

impl Gen {
    pub fn from_char(c: char) -> Option<Gen> {
        match c {
            'x' => Some(Gen::X),
            'y' => Some(Gen::Y),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Gen::X => 'x',
            Gen::Y => 'y',
        }
    }
}

/// Parses a word like `xyx` over the two letters.
pub fn parse_word(s: &str) -> Option<Vec<Gen>> {
    s.chars().map(Gen::from_char).collect()
}

/// Formats a word as a letter string.
pub fn format_word(w: &[Gen]) -> String {
    w.iter().map(|g| g.as_char()).collect()
}

impl GenMat {
    pub fn new(e: [[Poly; 2]; 2]) -> GenMat {
        let vars = e[0][0].vars();
        assert!(
            e.iter().flatten().all(|p| p.vars() == vars),
            "variable spec mismatch"
        );
        GenMat { e }
    }

    pub fn vars(&self) -> &Arc<VarSpec> {
        self.e[0][0].vars()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.e[i][j]
    }

    pub fn zero(vars: &Arc<VarSpec>) -> GenMat {
        GenMat::new([
            [Poly::zero(vars), Poly::zero(vars)],
            [Poly::zero(vars), Poly::zero(vars)],
        ])
    }

    pub fn identity(vars: &Arc<VarSpec>) -> GenMat {
        GenMat::new([
            [Poly::one(vars), Poly::zero(vars)],
            [Poly::zero(vars), Poly::one(vars)],
        ])
    }

    /// Traceless matrix `[[a, b], [c, -a]]` from three consecutive
    /// variables starting at index `base`.
    pub fn traceless_from_vars(vars: &Arc<VarSpec>, base: usize) -> GenMat {
        let a = Poly::var(vars, base);
        let b = Poly::var(vars, base + 1);
        let c = Poly::var(vars, base + 2);
        GenMat::new([[a.clone(), b], [c, a.neg()]])
    }

    /// The first generic traceless matrix over the six-entry ring.
    pub fn generic_x() -> GenMat {
        GenMat::traceless_from_vars(&VarSpec::xy_entries(), 0)
    }

    /// The second generic traceless matrix over the six-entry ring.
    pub fn generic_y() -> GenMat {
        GenMat::traceless_from_vars(&VarSpec::xy_entries(), 3)
    }

    pub fn trace(&self) -> Poly {
        &self.e[0][0] + &self.e[1][1]
    }

    pub fn scale(&self, p: &Poly) -> GenMat {
        GenMat::new([
            [&self.e[0][0] * p, &self.e[0][1] * p],
            [&self.e[1][0] * p, &self.e[1][1] * p],
        ])
    }

    pub fn scale_rat(&self, r: &Rat) -> GenMat {
        GenMat::new([
            [self.e[0][0].scale(r), self.e[0][1].scale(r)],
            [self.e[1][0].scale(r), self.e[1][1].scale(r)],
        ])
    }

    pub fn eval_rat(&self, vals: &[Rat]) -> RatMat2 {
        RatMat2([
            [self.e[0][0].eval_rat(vals), self.e[0][1].eval_rat(vals)],
            [self.e[1][0].eval_rat(vals), self.e[1][1].eval_rat(vals)],
        ])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "entries": [
                [self.e[0][0].to_json(), self.e[0][1].to_json()],
                [self.e[1][0].to_json(), self.e[1][1].to_json()],
            ]
        })
    }
}

impl std::ops::Add for &GenMat {
    type Output = GenMat;
    fn add(self, other: &GenMat) -> GenMat {
        GenMat::new([
            [&self.e[0][0] + &other.e[0][0], &self.e[0][1] + &other.e[0][1]],
            [&self.e[1][0] + &other.e[1][0], &self.e[1][1] + &other.e[1][1]],
        ])
    }
}

impl std::ops::Sub for &GenMat {
    type Output = GenMat;
    fn sub(self, other: &GenMat) -> GenMat {
        GenMat::new([
            [&self.e[0][0] - &other.e[0][0], &self.e[0][1] - &other.e[0][1]],
            [&self.e[1][0] - &other.e[1][0], &self.e[1][1] - &other.e[1][1]],
        ])
    }
}

impl std::ops::Mul for &GenMat {
    type Output = GenMat;
    fn mul(self, other: &GenMat) -> GenMat {
        let mut out = GenMat::zero(self.vars());
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Poly::zero(self.vars());
                for (k, row) in other.e.iter().enumerate() {
                    acc = &acc + &(&self.e[i][k] * &row[j]);
                }
                out.e[i][j] = acc;
            }
        }
        out
    }
}

impl std::ops::Neg for &GenMat {
    type Output = GenMat;
    fn neg(self) -> GenMat {
        GenMat::new([
            [self.e[0][0].neg(), self.e[0][1].neg()],
            [self.e[1][0].neg(), self.e[1][1].neg()],
        ])
    }
}

impl fmt::Display for GenMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[ {} | {} ]", self.e[0][0], self.e[0][1])?;
        write!(f, "[ {} | {} ]", self.e[1][0], self.e[1][1])
    }
}

/// `[A, B] = AB - BA`.
pub fn bracket(a: &GenMat, b: &GenMat) -> GenMat {
    &(a * b) - &(b * a)
}

/// The product of generic matrices along a word.
pub fn eval_word(word: &[Gen]) -> GenMat {
    assert!(!word.is_empty(), "empty word");
    let x = GenMat::generic_x();
    let y = GenMat::generic_y();
    let pick = |g: Gen| match g {
        Gen::X => x.clone(),
        Gen::Y => y.clone(),
    };
    let mut acc = pick(word[0]);
    for &g in &word[1..] {
        acc = &acc * &pick(g);
    }
    acc
}

/// tr(x^2), tr(y^2), tr(xy) of the generic pair, as entry polynomials.
pub fn invariants() -> (Poly, Poly, Poly) {
    let x = GenMat::generic_x();
    let y = GenMat::generic_y();
    ((&x * &x).trace(), (&y * &y).trace(), (&x * &y).trace())
}

/// The standard polynomial `s4 = sum_{sigma in S4} sign(sigma) *
/// m_{sigma(1)} m_{sigma(2)} m_{sigma(3)} m_{sigma(4)}`.
pub fn s4(ms: &[GenMat; 4]) -> GenMat {
    let mut acc = GenMat::zero(ms[0].vars());
    let mut idx = [0usize, 1, 2, 3];
    // Plain lexicographic enumeration of all 24 permutations.
    loop {
        let sign = permutation_sign(&idx);
        let prod = &(&(&ms[idx[0]] * &ms[idx[1]]) * &ms[idx[2]]) * &ms[idx[3]];
        acc = if sign > 0 { &acc + &prod } else { &acc - &prod };
        if !next_permutation(&mut idx) {
            break;
        }
    }
    acc
}

fn permutation_sign(p: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// 2x2 rational matrices for specialized checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat2(pub [[Rat; 2]; 2]);

impl RatMat2 {
    pub fn zero() -> RatMat2 {
        RatMat2([
            [Rat::zero(), Rat::zero()],
            [Rat::zero(), Rat::zero()],
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Rat::is_zero)
    }

    pub fn mul(&self, other: &RatMat2) -> RatMat2 {
        let mut out = RatMat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = &(&self.0[i][0] * &other.0[0][j])
                    + &(&self.0[i][1] * &other.0[1][j]);
            }
        }
        out
    }

    pub fn add(&self, other: &RatMat2) -> RatMat2 {
        let mut out = RatMat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = &self.0[i][j] + &other.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &RatMat2) -> RatMat2 {
        let mut out = RatMat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = &self.0[i][j] - &other.0[i][j];
            }
        }
        out
    }
}

/// `s4` on rational matrices.
pub fn s4_rat(ms: &[RatMat2; 4]) -> RatMat2 {
    let mut acc = RatMat2::zero();
    let mut idx = [0usize, 1, 2, 3];
    loop {
        let sign = permutation_sign(&idx);
        let prod = ms[idx[0]]
            .mul(&ms[idx[1]])
            .mul(&ms[idx[2]])
            .mul(&ms[idx[3]]);
        acc = if sign > 0 { acc.add(&prod) } else { acc.sub(&prod) };
        if !next_permutation(&mut idx) {
            break;
        }
    }
    acc
}
