//! Neighborhood aggregation over adjacency lists.
//!
//! Every function reads `m` as one feature row per node and produces, for
//! each node, a reduction over its neighbors' rows. The number of neighbor
//! rows combined is added to the operation counter.

use ndarray::Array2;

use super::FilterError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reduce {
    Sum,
    Max,
    Min,
}

fn check_shape(adj: &[Vec<usize>], m: &Array2<f64>) -> Result<(), FilterError> {
    if m.nrows() != adj.len() {
        return Err(FilterError::Shape {
            expected: adj.len(),
            found: m.nrows(),
        });
    }
    Ok(())
}

fn aggregate(
    adj: &[Vec<usize>],
    m: &Array2<f64>,
    reduce: Reduce,
    ops: &mut u64,
) -> Result<Array2<f64>, FilterError> {
    check_shape(adj, m)?;
    let width = m.ncols();
    let src = m.as_standard_layout();
    let src = src.as_slice().expect("standard layout");
    let empty = match reduce {
        Reduce::Sum | Reduce::Max => 0.0,
        // vacuous conjunction
        Reduce::Min => 1.0,
    };
    let mut out = Array2::from_elem((adj.len(), width), empty);
    {
        let dst = out.as_slice_mut().expect("fresh array is contiguous");
        for (i, neighbors) in adj.iter().enumerate() {
            let acc = &mut dst[i * width..(i + 1) * width];
            for (n, &j) in neighbors.iter().enumerate() {
                let row = &src[j * width..(j + 1) * width];
                if n == 0 && reduce != Reduce::Sum {
                    acc.copy_from_slice(row);
                    continue;
                }
                match reduce {
                    Reduce::Sum => acc.iter_mut().zip(row).for_each(|(a, &b)| *a += b),
                    Reduce::Max => acc.iter_mut().zip(row).for_each(|(a, &b)| *a = a.max(b)),
                    Reduce::Min => acc.iter_mut().zip(row).for_each(|(a, &b)| *a = a.min(b)),
                }
            }
            *ops += neighbors.len() as u64;
        }
    }
    Ok(out)
}

/// Row `i` is the sum of the rows of `i`'s neighbors; isolated nodes get zeros.
pub fn agg_sum(adj: &[Vec<usize>], m: &Array2<f64>) -> Result<Array2<f64>, FilterError> {
    aggregate(adj, m, Reduce::Sum, &mut 0)
}

/// Elementwise maximum over neighbor rows; isolated nodes get zeros.
pub fn agg_max(adj: &[Vec<usize>], m: &Array2<f64>) -> Result<Array2<f64>, FilterError> {
    aggregate(adj, m, Reduce::Max, &mut 0)
}

/// Elementwise minimum over neighbor rows; isolated nodes get ones.
pub fn agg_min(adj: &[Vec<usize>], m: &Array2<f64>) -> Result<Array2<f64>, FilterError> {
    aggregate(adj, m, Reduce::Min, &mut 0)
}

/// Max aggregation over the degree-normalized adjacency `D^-1 A`: row `i`
/// is `max_j m_j / deg(i)`. Rows of degree zero are zero.
pub fn agg_max_normalized(
    adj: &[Vec<usize>],
    m: &Array2<f64>,
) -> Result<Array2<f64>, FilterError> {
    agg_max_normalized_counted(adj, m, &mut 0)
}

pub(crate) fn agg_sum_counted(
    adj: &[Vec<usize>],
    m: &Array2<f64>,
    ops: &mut u64,
) -> Result<Array2<f64>, FilterError> {
    aggregate(adj, m, Reduce::Sum, ops)
}

pub(crate) fn agg_max_counted(
    adj: &[Vec<usize>],
    m: &Array2<f64>,
    ops: &mut u64,
) -> Result<Array2<f64>, FilterError> {
    aggregate(adj, m, Reduce::Max, ops)
}

pub(crate) fn agg_min_counted(
    adj: &[Vec<usize>],
    m: &Array2<f64>,
    ops: &mut u64,
) -> Result<Array2<f64>, FilterError> {
    aggregate(adj, m, Reduce::Min, ops)
}

pub(crate) fn agg_max_normalized_counted(
    adj: &[Vec<usize>],
    m: &Array2<f64>,
    ops: &mut u64,
) -> Result<Array2<f64>, FilterError> {
    let mut out = aggregate(adj, m, Reduce::Max, ops)?;
    for (mut row, neighbors) in out.rows_mut().into_iter().zip(adj) {
        if !neighbors.is_empty() {
            let w = 1.0 / neighbors.len() as f64;
            row.mapv_inplace(|x| x * w);
        }
    }
    Ok(out)
}
