//! Data-parallel map over sweep cells, with a sequential fallback.
//!
//! Results always come back in input order, so reports do not depend on
//! scheduling.

use crate::catalog::{verify_cell, Identity, VerificationResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Mode {
    pub fn available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map<T, R, F>(items: &[T], mode: Mode, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// One cell of a sweep: identity, reading index, point.
#[derive(Clone, Copy, Debug)]
pub struct Cell {
    pub identity: &'static Identity,
    pub reading: usize,
    pub point: f64,
}

/// Cells in catalog order, then point order, then reading order.
pub fn cells(identities: &[&'static Identity], grid: &[f64]) -> Vec<Cell> {
    let mut out = Vec::new();
    for &e in identities {
        for point in e.points(grid) {
            for reading in 0..e.readings.len() {
                out.push(Cell {
                    identity: e,
                    reading,
                    point,
                });
            }
        }
    }
    out
}

pub fn sweep(identities: &[&'static Identity], grid: &[f64], tol: f64, mode: Mode) -> Vec<VerificationResult> {
    let cs = cells(identities, grid);
    map(&cs, mode, |c| verify_cell(c.identity, c.reading, c.point, tol))
}
