//! Dense boolean candidate matrix: rows are target nodes, columns query nodes.

use std::fmt;

use ndarray::Array2;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Entry `(t, q)` set means target node `t` may still host query node `q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndicatorMatrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl IndicatorMatrix {
    pub fn filled(rows: usize, cols: usize, value: bool) -> Self {
        IndicatorMatrix {
            rows,
            cols,
            bits: vec![value; rows * cols],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, true)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, false)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(rows * cols);
        for t in 0..rows {
            for q in 0..cols {
                bits.push(f(t, q));
            }
        }
        IndicatorMatrix { rows, cols, bits }
    }

    /// Parses rows written as strings of `0`/`1`.
    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Option<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut bits = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return None;
            }
            for c in row.chars() {
                bits.push(match c {
                    '1' => true,
                    '0' => false,
                    _ => return None,
                });
            }
        }
        Some(IndicatorMatrix {
            rows: rows.len(),
            cols,
            bits,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, t: usize, q: usize) -> bool {
        self.bits[t * self.cols + q]
    }

    #[inline]
    pub fn set(&mut self, t: usize, q: usize, value: bool) {
        self.bits[t * self.cols + q] = value;
    }

    pub fn row(&self, t: usize) -> &[bool] {
        &self.bits[t * self.cols..(t + 1) * self.cols]
    }

    /// Elementwise AND. Panics on shape mismatch.
    pub fn and_assign(&mut self, other: &IndicatorMatrix) {
        assert_eq!(self.shape(), other.shape(), "indicator shape mismatch");
        for (a, &b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
    }

    /// `self <= other` elementwise. Panics on shape mismatch.
    pub fn is_subset_of(&self, other: &IndicatorMatrix) -> bool {
        assert_eq!(self.shape(), other.shape(), "indicator shape mismatch");
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn column_has_one(&self, q: usize) -> bool {
        (0..self.rows).any(|t| self.get(t, q))
    }

    /// Number of target rows with at least one candidate query node.
    pub fn nonzero_rows(&self) -> usize {
        (0..self.rows).filter(|&t| self.row(t).contains(&true)).count()
    }

    pub fn to_real(&self) -> Array2<f64> {
        Array2::from_shape_fn((self.rows, self.cols), |(t, q)| {
            if self.get(t, q) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Transposed real copy, `cols x rows`.
    pub fn to_real_transposed(&self) -> Array2<f64> {
        Array2::from_shape_fn((self.cols, self.rows), |(q, t)| {
            if self.get(t, q) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Entries `>= threshold` become set.
    pub fn from_real_threshold(m: &Array2<f64>, threshold: f64) -> Self {
        let (rows, cols) = m.dim();
        IndicatorMatrix::from_fn(rows, cols, |t, q| m[[t, q]] >= threshold)
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|t| {
                self.row(t)
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for IndicatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IndicatorMatrix {}x{}", self.rows, self.cols)?;
        for row in self.to_row_strings() {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct IndicatorRepr {
    rows: usize,
    cols: usize,
    bits: Vec<String>,
}

impl Serialize for IndicatorMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IndicatorRepr {
            rows: self.rows,
            cols: self.cols,
            bits: self.to_row_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndicatorMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = IndicatorRepr::deserialize(d)?;
        let m = if repr.rows == 0 {
            Some(IndicatorMatrix::zeros(0, repr.cols))
        } else {
            IndicatorMatrix::from_rows(&repr.bits)
        };
        match m {
            Some(m) if m.shape() == (repr.rows, repr.cols) => Ok(m),
            _ => Err(serde::de::Error::custom("indicator rows do not match shape")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_helpers() {
        let m = IndicatorMatrix::from_rows(&["110", "000", "001"]).unwrap();
        assert_eq!(m.shape(), (3, 3));
        assert_eq!(m.count_ones(), 3);
        assert_eq!(m.nonzero_rows(), 2);
        assert!(m.column_has_one(1));
        assert!(!IndicatorMatrix::zeros(2, 2).column_has_one(0));
    }

    #[test]
    fn and_and_subset() {
        let a = IndicatorMatrix::from_rows(&["11", "01"]).unwrap();
        let mut b = IndicatorMatrix::from_rows(&["10", "11"]).unwrap();
        b.and_assign(&a);
        assert_eq!(b, IndicatorMatrix::from_rows(&["10", "01"]).unwrap());
        assert!(b.is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
    }

    #[test]
    fn json_round_trip() {
        let m = IndicatorMatrix::from_rows(&["101", "010"]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":3,"bits":["101","010"]}"#);
        assert_eq!(serde_json::from_str::<IndicatorMatrix>(&s).unwrap(), m);
        assert!(serde_json::from_str::<IndicatorMatrix>(r#"{"rows":3,"cols":3,"bits":["101"]}"#).is_err());
    }
}
