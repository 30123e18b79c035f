//! Incremental row reduction over exact rationals.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::quiver::Coeff;

/// A sparse row: column index to nonzero coefficient.
pub type Row = BTreeMap<usize, Coeff>;

/// Rows kept in echelon form keyed by their pivot (largest) column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, mut row: Row) -> Row {
        let mut bound = None;
        loop {
            let pivot = match bound {
                None => row.keys().next_back().copied(),
                Some(b) => row.range(..b).next_back().map(|(k, _)| *k),
            };
            let Some(col) = pivot else { return row };
            if let Some(basis) = self.pivots.get(&col) {
                let factor = row[&col].clone() / &basis[&col];
                for (k, v) in basis {
                    let entry = row.entry(*k).or_insert_with(Coeff::zero);
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        row.remove(k);
                    }
                }
            }
            bound = Some(col);
        }
    }

    /// Adds `row` to the span; returns true when it was independent.
    pub fn insert(&mut self, row: Row) -> bool {
        let reduced = self.reduce(row);
        match reduced.keys().next_back().copied() {
            Some(col) => {
                self.pivots.insert(col, reduced);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, row: Row) -> bool {
        self.reduce(row).is_empty()
    }
}
