//! JSON encodings of the exact types used in reports.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactmat::{IntMatrix, IntVector};
use crate::seifert::{LaurentPoly, SeifertForm};

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    #[serde(with = "super::serde_bigint::rows")]
    entries: Vec<Vec<BigInt>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        if r.entries.len() != r.rows {
            return Err(D::Error::custom(format!(
                "matrix declares {} rows but lists {}",
                r.rows,
                r.entries.len()
            )));
        }
        IntMatrix::from_row_vecs(r.entries, r.cols).map_err(D::Error::custom)
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        super::serde_bigint::vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        super::serde_bigint::vec::deserialize(d).map(IntVector)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    min_degree: i64,
    #[serde(with = "super::serde_bigint::vec")]
    coefficients: Vec<BigInt>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            min_degree: self.min_degree(),
            coefficients: self.coefficients().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        Ok(LaurentPoly::new(r.min_degree, r.coefficients))
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    label: String,
    matrix: IntMatrix,
}

impl Serialize for SeifertForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormRepr {
            label: self.label().to_string(),
            matrix: self.matrix().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeifertForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FormRepr::deserialize(d)?;
        SeifertForm::new(r.matrix, r.label).map_err(D::Error::custom)
    }
}
