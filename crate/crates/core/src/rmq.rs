//! Sparse-table range minimum: O(n log n) build, O(1) query.

pub struct SparseTableMin {
    width: usize,
    table: Vec<Vec<u32>>,
}

impl SparseTableMin {
    pub fn new(data: &[u32]) -> Self {
        let n = data.len();
        let levels = if n <= 1 { 1 } else { n.ilog2() as usize + 1 };
        let mut table = Vec::with_capacity(levels);
        table.push(data.to_vec());
        for j in 1..levels {
            let half = 1usize << (j - 1);
            let prev = &table[j - 1];
            let row: Vec<u32> = (0..n.saturating_sub((1 << j) - 1))
                .map(|i| prev[i].min(prev[i + half]))
                .collect();
            table.push(row);
        }
        SparseTableMin { width: n, table }
    }

    /// Minimum over the inclusive range `[i, j]`.
    pub fn min(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i <= j && j < self.width);
        let level = (j - i + 1).ilog2() as usize;
        self.table[level][i].min(self.table[level][j + 1 - (1 << level)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_scan() {
        let data = [5u32, 3, 8, 3, 9, 1, 4, 4, 2, 7, 0, 6];
        let st = SparseTableMin::new(&data);
        for i in 0..data.len() {
            for j in i..data.len() {
                let naive = *data[i..=j].iter().min().unwrap();
                assert_eq!(st.min(i, j), naive, "range [{i},{j}]");
            }
        }
    }

    #[test]
    fn singleton_and_empty() {
        let st = SparseTableMin::new(&[42]);
        assert_eq!(st.min(0, 0), 42);
        let _ = SparseTableMin::new(&[]);
    }
}
