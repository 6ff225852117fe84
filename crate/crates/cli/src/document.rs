//! Cover specification files.

use bd_whittaker::cover::{CoverSpec, WeylInvariantForm};
use bd_whittaker::matrix::Matrix;
use bd_whittaker::root_datum::BasedRootDatum;
use bd_whittaker::{Error, Result};
use serde::{Deserialize, Serialize};

/// JSON shape of a cover: a based root datum, an optional Frobenius matrix on
/// `Y` (identity when absent), the Gram matrix `bq` of `B_Q`, and `(n, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDocument {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<Vec<Vec<i64>>>,
    pub bq: Vec<Vec<i64>>,
    pub n: u64,
    pub q: u64,
}

impl CoverDocument {
    pub fn to_cover(&self) -> Result<CoverSpec> {
        let frobenius = match &self.frobenius {
            Some(rows) => Some(Matrix::from_rows(rows)?),
            None => None,
        };
        let datum = BasedRootDatum::new(
            self.rank,
            self.roots.clone(),
            self.coroots.clone(),
            self.simple.clone(),
            frobenius,
        )?;
        let gram = Matrix::from_rows(&self.bq)?;
        if gram.nrows() != self.rank || gram.ncols() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: gram.nrows().max(gram.ncols()) });
        }
        CoverSpec::new(datum, WeylInvariantForm::new(gram)?, self.n, self.q)
    }
}
