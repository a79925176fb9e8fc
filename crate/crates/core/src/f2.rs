//! Dense linear algebra over F₂.
//!
//! Rows are packed bitsets. All eliminations pivot on the lowest available
//! row index, scanning columns left to right, so bases and solutions are
//! reproducible.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find_map(|(wi, &w)| {
            (w != 0).then(|| wi * 64 + w.trailing_zeros() as usize)
        })
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Restricts to the listed coordinates, in order.
    pub fn select(&self, coords: &[usize]) -> BitVec {
        BitVec::from_bools(&coords.iter().map(|&i| self.get(i)).collect::<Vec<_>>())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Row echelon data shared by rank, kernel and solve.
struct Echelon {
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BitVec::zeros(cols); rows] }
    }

    pub fn from_rows(cols: usize, data: Vec<BitVec>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols));
        Self { rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len());
        BitVec::from_bools(&self.data.iter().map(|row| row.dot(v)).collect::<Vec<_>>())
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> F2Matrix {
        F2Matrix::from_rows(cols.len(), rows.iter().map(|&r| self.data[r].select(cols)).collect())
    }

    fn echelon(&self) -> Echelon {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(c)) else { continue };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        rows.truncate(next);
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column (in column order).
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = BitVec::zeros(self.cols);
                x.set(free, true);
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if row.get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// Basis of the column space, as reduced vectors of length `rows`.
    pub fn image_basis(&self) -> Vec<BitVec> {
        self.transpose().echelon().rows
    }

    /// Some `x` with `A x = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows);
        let augmented: Vec<BitVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut ext = BitVec::zeros(self.cols + 1);
                for c in row.ones() {
                    ext.set(c, true);
                }
                ext.set(self.cols, b.get(r));
                ext
            })
            .collect();
        let ech = F2Matrix::from_rows(self.cols + 1, augmented).echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            x.set(p, row.get(self.cols));
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matrix(rows: &[&str]) -> F2Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        F2Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| BitVec::from_bools(&r.bytes().map(|b| b == b'1').collect::<Vec<_>>()))
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        let a = matrix(&["110", "011", "101"]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(format!("{:?}", k[0]), "111");
        assert!(a.mul_vec(&k[0]).is_zero());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = matrix(&["11", "11"]);
        assert!(a.solve(&BitVec::from_bools(&[true, false])).is_none());
        let x = a.solve(&BitVec::from_bools(&[true, true])).unwrap();
        assert_eq!(a.mul_vec(&x), BitVec::from_bools(&[true, true]));
    }

    #[test]
    fn empty_shapes() {
        let a = F2Matrix::zeros(0, 3);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel_basis().len(), 3);
        assert!(a.solve(&BitVec::zeros(0)).is_some());
        let b = F2Matrix::zeros(2, 0);
        assert!(b.solve(&BitVec::zeros(2)).is_some());
        assert!(b.solve(&BitVec::from_bools(&[true, false])).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = F2Matrix> {
        (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    F2Matrix::from_rows(c, rows.iter().map(|b| BitVec::from_bools(b)).collect())
                },
            )
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in arb_matrix()) {
            let kernel = a.kernel_basis();
            prop_assert_eq!(a.rank() + kernel.len(), a.cols());
            for v in &kernel {
                prop_assert!(a.mul_vec(v).is_zero());
            }
            prop_assert_eq!(a.rank(), a.transpose().rank());
            prop_assert_eq!(a.image_basis().len(), a.rank());
        }

        #[test]
        fn solve_recovers_images(a in arb_matrix(), seed in any::<u64>()) {
            let x: Vec<bool> = (0..a.cols()).map(|i| seed >> (i % 64) & 1 == 1).collect();
            let b = a.mul_vec(&BitVec::from_bools(&x));
            let y = a.solve(&b).expect("b is in the image");
            prop_assert_eq!(a.mul_vec(&y), b);
        }
    }
}
