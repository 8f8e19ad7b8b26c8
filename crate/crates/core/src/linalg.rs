//! Exact ranks: over ℚ by fraction-free elimination, over the two-element
//! field with packed bit rows.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank over ℚ of an integer matrix (Bareiss elimination).
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..a.len() {
            for c in col + 1..ncols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// A vector over the two-element field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitRow(Vec<u64>);

impl BitRow {
    pub fn zeros(len: usize) -> BitRow {
        BitRow(vec![0; len.div_ceil(64)])
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> BitRow {
        let mut words = Vec::new();
        for (i, b) in bits.into_iter().enumerate() {
            if i % 64 == 0 {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (i % 64);
            }
        }
        BitRow(words)
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor_with(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn lowest_bit(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// An echelon basis of a subspace, grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct F2Span {
    basis: Vec<(usize, BitRow)>,
}

impl F2Span {
    pub fn new() -> F2Span {
        F2Span::default()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, mut v: BitRow) -> BitRow {
        for (pivot, row) in &self.basis {
            if v.get(*pivot) {
                v.xor_with(row);
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: BitRow) -> bool {
        let v = self.reduce(v);
        match v.lowest_bit() {
            None => false,
            Some(pivot) => {
                for (_, row) in self.basis.iter_mut() {
                    if row.get(pivot) {
                        row.xor_with(&v);
                    }
                }
                self.basis.push((pivot, v));
                true
            }
        }
    }

    pub fn contains(&self, v: &BitRow) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

pub fn rank_f2(rows: impl IntoIterator<Item = BitRow>) -> usize {
    let mut span = F2Span::new();
    for r in rows {
        span.insert(r);
    }
    span.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_ranks() {
        assert_eq!(rank_q(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_q(&[vec![1, 2], vec![3, 4]]), 2);
        assert_eq!(rank_q(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_q(&[vec![2, 0, 1], vec![0, 2, 1], vec![2, 2, 2]]), 2);
        assert_eq!(rank_q(&[]), 0);
    }

    #[test]
    fn binary_ranks() {
        let r = |s: &str| BitRow::from_bits(s.chars().map(|c| c == '1'));
        assert_eq!(rank_f2([r("110"), r("011"), r("101")]), 2);
        assert_eq!(rank_f2([r("100"), r("010"), r("001")]), 3);
        let long: Vec<BitRow> = (0..70).map(|i| BitRow::from_bits((0..70).map(|j| j == i))).collect();
        assert_eq!(rank_f2(long), 70);
        let mut span = F2Span::new();
        span.insert(r("1100"));
        assert!(span.contains(&r("1100")));
        assert!(!span.contains(&r("0110")));
    }
}
