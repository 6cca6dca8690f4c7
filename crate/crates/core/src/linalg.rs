use std::collections::BTreeMap;

use num::{One, Zero};

use crate::polynomial::Scalar;

pub type SparseRow<K> = BTreeMap<K, Scalar>;

/// Incrementally maintained reduced row-echelon basis over the rationals.
///
/// Rows are sparse maps from an ordered key space; the pivot of a row is its
/// smallest key, pivot coefficients are normalized to 1, and every row is
/// fully reduced against every other. This makes the stored basis canonical:
/// it depends only on the span, not on insertion order.
#[derive(Clone, Debug, Default)]
pub struct RowBasis<K: Ord + Clone> {
    rows: Vec<SparseRow<K>>,
}

fn sub_scaled<K: Ord + Clone>(row: &mut SparseRow<K>, other: &SparseRow<K>, c: &Scalar) {
    for (k, v) in other {
        let delta = c * v;
        match row.get_mut(k) {
            Some(e) => {
                *e -= delta;
                if e.is_zero() {
                    row.remove(k);
                }
            }
            None => {
                row.insert(k.clone(), -delta);
            }
        }
    }
}

impl<K: Ord + Clone> RowBasis<K> {
    pub fn new() -> Self {
        RowBasis { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis rows in ascending pivot order.
    pub fn rows(&self) -> &[SparseRow<K>] {
        &self.rows
    }

    /// Fully reduce a row against the basis.
    pub fn reduce(&self, mut row: SparseRow<K>) -> SparseRow<K> {
        for stored in &self.rows {
            let pivot = stored.keys().next().expect("stored rows are nonzero");
            if let Some(c) = row.get(pivot).cloned() {
                sub_scaled(&mut row, stored, &c);
            }
        }
        row
    }

    pub fn contains(&self, row: SparseRow<K>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Insert a row; returns true when it enlarges the span.
    pub fn insert(&mut self, row: SparseRow<K>) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let pivot = row.keys().next().expect("nonempty").clone();
        let lead = row.get(&pivot).expect("pivot present").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
        }
        for stored in &mut self.rows {
            if let Some(c) = stored.get(&pivot).cloned() {
                sub_scaled(stored, &row, &c);
            }
        }
        let pos = self
            .rows
            .partition_point(|r| r.keys().next().expect("nonzero") < &pivot);
        self.rows.insert(pos, row);
        true
    }
}
