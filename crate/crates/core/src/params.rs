//! Single-query evaluation: closed forms where their hypotheses hold,
//! the coset oracle everywhere else.

use crate::cosets::{oracle_bose_with_offset, oracle_dimension};
use crate::error::{Error, Result};
use crate::formulas::{
    bose_distance, bose_distance_nonnarrow, dimension, dimension_nonnarrow, BchResult, Source,
};
use crate::qadic::CodeIndex;

/// Dimension and Bose distance of the primitive BCH code with designed
/// distance `delta` and offset `b`. `min_distance` is left empty.
pub fn evaluate(delta: u64, b: u64, idx: &CodeIndex) -> Result<BchResult> {
    let n = idx.n();
    if b < 1 || b > n - 1 {
        return Err(Error::out_of_range("b", b, 1, n as i128 - 1));
    }
    if delta < 2 || b as u128 + delta as u128 - 2 > n as u128 - 1 {
        return Err(Error::out_of_range(
            "delta",
            delta,
            2,
            n as i128 + 1 - b as i128,
        ));
    }
    let closed_dim = if b == 1 {
        dimension(delta, idx)
    } else {
        dimension_nonnarrow(delta, b, idx)
    };
    let closed_bose = if b == 1 {
        bose_distance(delta, idx)
    } else {
        bose_distance_nonnarrow(delta, b, idx)
    };
    let (dimension, dim_closed) = resolve(closed_dim, || oracle_dimension(delta, b, idx))?;
    let (bose, bose_closed) = resolve(closed_bose, || oracle_bose_with_offset(delta, b, idx))?;
    let source = match (dim_closed, bose_closed) {
        (true, true) => Source::ClosedForm,
        (false, false) => Source::Oracle,
        _ => Source::Hybrid,
    };
    Ok(BchResult {
        n,
        dimension,
        bose,
        source,
        min_distance: None,
    })
}

fn resolve(closed: Result<u64>, oracle: impl FnOnce() -> Result<u64>) -> Result<(u64, bool)> {
    match closed {
        Ok(v) => Ok((v, true)),
        Err(e) if e.is_closed_form_gap() => Ok((oracle()?, false)),
        Err(e) => Err(e),
    }
}
