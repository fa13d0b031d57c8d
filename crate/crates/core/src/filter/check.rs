use super::CheckMode;
use crate::indicator::IndicatorMatrix;
use crate::oracle::HopcroftKarp;

/// Necessary condition for an injective assignment inside `s`.
///
/// [`CheckMode::Paper`] asks that every query column has a candidate and
/// that at least `query_size` target rows carry one. [`CheckMode::Matching`]
/// asks for a matching between columns and rows that saturates every column.
pub fn check_assign(s: &IndicatorMatrix, query_size: usize, mode: CheckMode) -> bool {
    match mode {
        CheckMode::Paper => {
            (0..s.cols()).all(|q| s.column_has_one(q)) && s.nonzero_rows() >= query_size
        }
        CheckMode::Matching => {
            let mut hk = HopcroftKarp::new(s.cols(), s.rows());
            for t in 0..s.rows() {
                for (q, &set) in s.row(t).iter().enumerate() {
                    if set {
                        hk.add_edge(q, t);
                    }
                }
            }
            let size = hk.run();
            size == s.cols() && size >= query_size
        }
    }
}
