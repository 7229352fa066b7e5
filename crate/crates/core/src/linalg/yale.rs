use serde::{Deserialize, Serialize};

use super::{fmt_rational, parse_rational, LinalgError, RatMatrix, Rational};

/// Sparse (values, rows, cols) triplet with 1-based indices in row-major scan order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YaleTriplet {
    pub values: Vec<Rational>,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl YaleTriplet {
    pub fn from_matrix(m: &RatMatrix) -> Self {
        let mut t = YaleTriplet { values: Vec::new(), rows: Vec::new(), cols: Vec::new() };
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = &m[(r, c)];
                if !num_traits::Zero::is_zero(v) {
                    t.values.push(v.clone());
                    t.rows.push(r + 1);
                    t.cols.push(c + 1);
                }
            }
        }
        t
    }

    /// Builds a dense matrix. Entries may come in any order; a repeated position is an error.
    pub fn to_matrix(&self, rows: usize, cols: usize) -> Result<RatMatrix, LinalgError> {
        if self.values.len() != self.rows.len() || self.values.len() != self.cols.len() {
            return Err(LinalgError::Shape("triplet arrays differ in length".into()));
        }
        let mut m = RatMatrix::zeros(rows, cols);
        let mut seen = std::collections::HashSet::new();
        for ((v, &r), &c) in self.values.iter().zip(&self.rows).zip(&self.cols) {
            if r == 0 || c == 0 || r > rows || c > cols {
                return Err(LinalgError::IndexOutOfRange(r, c, rows, cols));
            }
            if !seen.insert((r, c)) {
                return Err(LinalgError::Shape(format!("duplicate triplet entry ({r},{c})")));
            }
            m[(r - 1, c - 1)] = v.clone();
        }
        Ok(m)
    }

    /// Compact constructor from integer-or-fraction text values.
    pub fn parse(values: &[&str], rows: &[usize], cols: &[usize]) -> Result<Self, LinalgError> {
        let values = values.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(YaleTriplet { values, rows: rows.to_vec(), cols: cols.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct YaleText {
    values: Vec<String>,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Serialize for YaleTriplet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        YaleText {
            values: self.values.iter().map(fmt_rational).collect(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for YaleTriplet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = YaleText::deserialize(d)?;
        let values = t
            .values
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(YaleTriplet { values, rows: t.rows, cols: t.cols })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn scan_order_and_roundtrip() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(0, 1), rat(1, 2)],
            vec![rat(-3, 1), rat(0, 1)],
            vec![rat(0, 1), rat(4, 1)],
        ])
        .unwrap();
        let t = m.to_yale();
        assert_eq!(t.rows, vec![1, 2, 3]);
        assert_eq!(t.cols, vec![2, 1, 2]);
        assert_eq!(t.to_matrix(3, 2).unwrap(), m);
    }

    #[test]
    fn rejects_bad_indices() {
        let t = YaleTriplet::parse(&["1"], &[3], &[1]).unwrap();
        assert!(t.to_matrix(2, 2).is_err());
        let t = YaleTriplet::parse(&["1", "2"], &[1, 1], &[1, 1]).unwrap();
        assert!(t.to_matrix(2, 2).is_err());
    }
}
