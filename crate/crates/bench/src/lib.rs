//! Benchmark inputs shared by the criterion targets: sizes chosen to match
//! the default verification parameters, so regressions here mirror
//! regressions in `qrr all`.

use qrr_core::series::{inv_poch1_table, QLaurent};

/// A dense series with ~order nonzero coefficients: 1/(q;q)_12.
pub fn dense_series(order: i64) -> QLaurent {
    inv_poch1_table(12, order).pop().expect("nonempty table")
}

/// The generating function of partitions, 1/(q;q^1)_order-ish tail, as a
/// second dense multiplicand.
pub fn dense_series_alt(order: i64) -> QLaurent {
    inv_poch1_table(7, order).pop().expect("nonempty table")
}
