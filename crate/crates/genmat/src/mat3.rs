//! 3x3 matrices with truncated-series entries, the representation space
//! for adjoint and automorphism matrices acting on coordinates (x, y, z).

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{Poly, VarSpec};
use crate::rat::Rat;
use crate::series::TruncSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat3 {
    e: [[TruncSeries; 3]; 3],
}

/// Total stored terms across entries; the parallel product is only worth
/// its overhead above this.
#[cfg(feature = "parallel")]
const PAR_MAT_THRESHOLD: usize = 600;

impl Mat3 {
    pub fn new(e: [[TruncSeries; 3]; 3]) -> Mat3 {
        let vars = e[0][0].vars().clone();
        assert!(
            e.iter().flatten().all(|s| s.vars() == &vars),
            "variable spec mismatch"
        );
        Mat3 { e }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> TruncSeries>(mut f: F) -> Mat3 {
        Mat3::new(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn zero(vars: &Arc<VarSpec>, order: u32) -> Mat3 {
        Mat3::from_fn(|_, _| TruncSeries::zero(vars, order))
    }

    /// Identity with per-row truncation orders.
    pub fn identity(vars: &Arc<VarSpec>, row_orders: [u32; 3]) -> Mat3 {
        Mat3::from_fn(|i, j| {
            if i == j {
                TruncSeries::one(vars, row_orders[i])
            } else {
                TruncSeries::zero(vars, row_orders[i])
            }
        })
    }

    pub fn vars(&self) -> &Arc<VarSpec> {
        self.e[0][0].vars()
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncSeries {
        &self.e[i][j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, s: TruncSeries) {
        assert!(s.vars() == self.vars(), "variable spec mismatch");
        self.e[i][j] = s;
    }

    pub fn trace(&self) -> TruncSeries {
        &(&self.e[0][0] + &self.e[1][1]) + &self.e[2][2]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(TruncSeries::is_zero)
    }

    pub fn term_count(&self) -> usize {
        self.e.iter().flatten().map(|s| s.poly().term_count()).sum()
    }

    pub fn map<F: Fn(&TruncSeries) -> TruncSeries>(&self, f: F) -> Mat3 {
        Mat3::from_fn(|i, j| f(&self.e[i][j]))
    }

    pub fn scale(&self, r: &Rat) -> Mat3 {
        self.map(|s| s.scale(r))
    }

    pub fn scale_poly(&self, p: &Poly) -> Mat3 {
        self.map(|s| s.mul_poly(p))
    }

    pub fn scale_series(&self, c: &TruncSeries) -> Mat3 {
        self.map(|s| s * c)
    }

    /// Truncates every entry of row i to `row_orders[i]`.
    /// Entrywise agreement after truncating both sides to `order`.
    pub fn eq_to_order(&self, other: &Mat3, order: u32) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.entry(i, j).eq_to_order(other.entry(i, j), order)))
    }

    pub fn truncate_rows(&self, row_orders: [u32; 3]) -> Mat3 {
        Mat3::from_fn(|i, j| self.e[i][j].truncated(row_orders[i]))
    }

    pub fn reduce_mod_omega(&self, k: u32) -> Mat3 {
        self.map(|s| s.reduce_mod_omega(k))
    }

    fn mul_entry(&self, other: &Mat3, i: usize, j: usize) -> TruncSeries {
        let mut acc = &self.e[i][0] * &other.e[0][j];
        for k in 1..3 {
            acc = &acc + &(&self.e[i][k] * &other.e[k][j]);
        }
        acc
    }

    pub fn mul_sequential(&self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| self.mul_entry(other, i, j))
    }

    #[cfg(feature = "parallel")]
    pub fn mul_parallel(&self, other: &Mat3) -> Mat3 {
        use rayon::prelude::*;
        let cells: Vec<TruncSeries> = (0..9usize)
            .into_par_iter()
            .map(|n| self.mul_entry(other, n / 3, n % 3))
            .collect();
        let mut it = cells.into_iter();
        Mat3::from_fn(|_, _| it.next().expect("nine cells"))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .e
            .iter()
            .map(|row| Value::Array(row.iter().map(TruncSeries::to_json).collect()))
            .collect();
        json!({ "entries": rows })
    }

    pub fn from_json(vars: &Arc<VarSpec>, value: &Value) -> Result<Mat3> {
        let rows = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::usage("matrix JSON missing \"entries\""))?;
        if rows.len() != 3 {
            return Err(Error::usage("matrix JSON needs 3 rows"));
        }
        let mut cells = Vec::with_capacity(9);
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == 3)
                .ok_or_else(|| Error::usage("matrix row must have 3 entries"))?;
            for cell in row {
                cells.push(TruncSeries::from_json(vars, cell)?);
            }
        }
        let mut it = cells.into_iter();
        Ok(Mat3::from_fn(|_, _| it.next().expect("nine cells")))
    }
}

impl std::ops::Add for &Mat3 {
    type Output = Mat3;
    fn add(self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| &self.e[i][j] + &other.e[i][j])
    }
}

impl std::ops::Sub for &Mat3 {
    type Output = Mat3;
    fn sub(self, other: &Mat3) -> Mat3 {
        Mat3::from_fn(|i, j| &self.e[i][j] - &other.e[i][j])
    }
}

impl std::ops::Mul for &Mat3 {
    type Output = Mat3;
    fn mul(self, other: &Mat3) -> Mat3 {
        #[cfg(feature = "parallel")]
        {
            if self.term_count() + other.term_count() > PAR_MAT_THRESHOLD {
                return self.mul_parallel(other);
            }
        }
        self.mul_sequential(other)
    }
}

impl std::ops::Neg for &Mat3 {
    type Output = Mat3;
    fn neg(self) -> Mat3 {
        self.map(|s| -s)
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.e.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[ {} | {} | {} ]", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}
