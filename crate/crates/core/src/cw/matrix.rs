//! Dense GF(2) matrices with bit-packed rows; plain Gaussian elimination is
//! all a field needs for ranks.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        Self {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &bit) in row.iter().enumerate() {
                if bit % 2 == 1 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        let word = self.data[r * self.words_per_row + c / 64];
        (word >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let idx = r * self.words_per_row + c / 64;
        let mask = 1u64 << (c % 64);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words_per_row + c / 64] ^= 1u64 << (c % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| !self.get(r, c))
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.words_per_row, dst * self.words_per_row);
        for w in 0..self.words_per_row {
            let v = self.data[s + w];
            self.data[d + w] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words_per_row {
            self.data
                .swap(a * self.words_per_row + w, b * self.words_per_row + w);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    m.xor_row_into(rank, r);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Matrix product over GF(2); row `i` of the result is the XOR of the
    /// rows of `rhs` selected by row `i` of `self`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (s, d) = (k * rhs.words_per_row, i * out.words_per_row);
                    for w in 0..rhs.words_per_row {
                        out.data[d + w] ^= rhs.data[s + w];
                    }
                }
            }
        }
        out
    }
}
