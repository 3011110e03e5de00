//! Integer lattices in row Hermite normal form, Smith invariants and
//! integer left kernels.
//!
//! Everything here is generic over the integer scalar ([`Int`]). The rest of
//! the crate works with `i64` through the [`IntLattice`](crate::IntLattice)
//! alias; kernels whose unimodular transforms can grow are computed over
//! `BigInt` and converted back once the result is reduced.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Integer scalar usable by the lattice routines.
pub trait Int:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Int for T where
    T: Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

fn is_zero_row<T: Int>(row: &[T]) -> bool {
    row.iter().all(Zero::is_zero)
}

/// `target -= q * source`, entrywise.
fn sub_multiple<T: Int>(target: &mut [T], source: &[T], q: &T) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        *t = t.clone() - q.clone() * s.clone();
    }
}

/// Row echelon reduction restricted to the first `pivot_cols` columns.
///
/// Rows are combined by unimodular operations only. Returns the number of
/// pivot rows; rows from that index on are zero in the pivot columns.
/// When `reduce_above` is set, entries above each pivot land in `[0, pivot)`.
fn echelon<T: Int>(m: &mut [Vec<T>], pivot_cols: usize, reduce_above: bool) -> usize {
    let mut prow = 0;
    for col in 0..pivot_cols {
        if prow == m.len() {
            break;
        }
        loop {
            let best = (prow..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let Some(best) = best else { break };
            m.swap(prow, best);
            let mut done = true;
            for i in prow + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[prow][col]);
                let (head, tail) = m.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[prow], &q);
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if prow == m.len() || m[prow][col].is_zero() {
            continue;
        }
        if m[prow][col].is_negative() {
            for x in m[prow].iter_mut() {
                *x = -x.clone();
            }
        }
        if reduce_above {
            for i in 0..prow {
                let q = m[i][col].div_floor(&m[prow][col]);
                let (head, tail) = m.split_at_mut(prow);
                sub_multiple(&mut head[i], &tail[0], &q);
            }
        }
        prow += 1;
    }
    prow
}

/// Row Hermite normal form of the row span of `rows` (zero rows dropped).
pub fn hnf<T: Int>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let mut m: Vec<Vec<T>> = rows.iter().filter(|r| !is_zero_row(r)).cloned().collect();
    for r in &m {
        assert_eq!(r.len(), ncols, "row length mismatch");
    }
    let rank = echelon(&mut m, ncols, true);
    m.truncate(rank);
    m
}

/// Basis (in Hermite form) of `{ x in Z^rows : x * M = 0 }` for the matrix
/// whose rows are `rows`.
pub fn left_kernel<T: Int>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let n = rows.len();
    let mut m: Vec<Vec<T>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), ncols, "row length mismatch");
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            row
        })
        .collect();
    let rank = echelon(&mut m, ncols, false);
    let kernel: Vec<Vec<T>> = m[rank..].iter().map(|r| r[ncols..].to_vec()).collect();
    hnf(&kernel, n)
}

/// Nonzero Smith invariants `d_1 | d_2 | ...` of the matrix, all positive.
pub fn smith_invariants<T: Int>(rows: &[Vec<T>], ncols: usize) -> Vec<T> {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let nrows = m.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..nrows {
            let q = m[i][t].div_floor(&m[t][t]);
            let (head, tail) = m.split_at_mut(i);
            sub_multiple(&mut tail[0], &head[t], &q);
            if !m[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..ncols {
            let q = m[t][j].div_floor(&m[t][t]);
            if q.is_zero() && m[t][j].is_zero() {
                continue;
            }
            for row in m.iter_mut() {
                let v = row[t].clone();
                row[j] = row[j].clone() - q.clone() * v;
            }
            if !m[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // pivot must divide the rest of the block
        let bad = (t + 1..nrows)
            .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
            .find(|&(i, j)| !m[i][j].is_multiple_of(&m[t][t]));
        if let Some((i, _)) = bad {
            let (head, tail) = m.split_at_mut(i);
            for (a, b) in head[t].iter_mut().zip(tail[0].iter()) {
                *a = a.clone() + b.clone();
            }
            continue;
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Invariant factors (> 1) and free rank of `Z^ncols / rowspan(rows)`.
pub fn quotient_structure<T: Int>(rows: &[Vec<T>], ncols: usize) -> (Vec<T>, usize) {
    let d = smith_invariants(rows, ncols);
    let free = ncols - d.len();
    (d.into_iter().filter(|x| !x.is_one()).collect(), free)
}

fn to_big<T: Int>(x: &T) -> BigInt {
    BigInt::from_i128(x.to_i128().expect("scalar fits in i128")).expect("i128 to BigInt")
}

fn from_big<T: Int>(x: &BigInt) -> T {
    let v = x.to_i128().expect("lattice entry exceeds i128");
    T::from_i128(v).expect("lattice entry exceeds the scalar type")
}

/// [`left_kernel`] computed over `BigInt`, returned in `T`.
pub fn left_kernel_exact<T: Int>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(to_big).collect()).collect();
    left_kernel(&big, ncols)
        .iter()
        .map(|r| r.iter().map(from_big).collect())
        .collect()
}

/// [`hnf`] computed over `BigInt`, returned in `T`.
pub fn hnf_exact<T: Int>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(to_big).collect()).collect();
    hnf(&big, ncols)
        .iter()
        .map(|r| r.iter().map(from_big).collect())
        .collect()
}

/// Sublattice of `Z^n` with a canonical row Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice<T> {
    ambient_rank: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Int> Lattice<T> {
    pub fn from_generators(ambient_rank: usize, generators: &[Vec<T>]) -> Self {
        Lattice {
            ambient_rank,
            basis: hnf(generators, ambient_rank),
        }
    }

    /// Like [`Lattice::from_generators`], reducing over `BigInt`.
    pub fn from_generators_exact(ambient_rank: usize, generators: &[Vec<T>]) -> Self {
        Lattice {
            ambient_rank,
            basis: hnf_exact(generators, ambient_rank),
        }
    }

    /// `Z^n` itself.
    pub fn full(ambient_rank: usize) -> Self {
        let gens: Vec<Vec<T>> = (0..ambient_rank)
            .map(|i| {
                (0..ambient_rank)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        Lattice {
            ambient_rank,
            basis: gens,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_rank
    }

    /// `[Z^n : L]` for a full-rank lattice (product of the Hermite pivots).
    pub fn index(&self) -> Option<T> {
        if !self.is_full_rank() {
            return None;
        }
        Some(
            self.basis
                .iter()
                .enumerate()
                .fold(T::one(), |acc, (i, row)| acc * row[i].clone()),
        )
    }

    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        let mut r = v.to_vec();
        for row in &self.basis {
            let col = row.iter().position(|x| !x.is_zero()).expect("basis row is nonzero");
            if !r[col].is_multiple_of(&row[col]) {
                return false;
            }
            let q = r[col].clone() / row[col].clone();
            sub_multiple(&mut r, row, &q);
        }
        is_zero_row(&r)
    }

    pub fn is_sublattice_of(&self, other: &Lattice<T>) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Lattice<T>) -> Self {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Lattice::from_generators(self.ambient_rank, &gens)
    }

    /// `L + m Z^n`.
    pub fn plus_scaled_full(&self, m: &T) -> Self {
        let mut gens = self.basis.clone();
        for i in 0..self.ambient_rank {
            let mut row = vec![T::zero(); self.ambient_rank];
            row[i] = m.clone();
            gens.push(row);
        }
        Lattice::from_generators(self.ambient_rank, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det2(m: &[Vec<i64>]) -> i64 {
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    #[test]
    fn hnf_of_swan_generators_for_c2() {
        // (3,0), (0,3), (1,1)
        let l = Lattice::<i64>::from_generators(2, &[vec![3, 0], vec![0, 3], vec![1, 1]]);
        assert_eq!(l.basis(), &[vec![1, 1], vec![0, 3]]);
        assert_eq!(l.index(), Some(3));
        assert!(l.contains(&[2, -1]));
        assert!(!l.contains(&[1, 0]));
    }

    #[test]
    fn hnf_index_matches_determinant() {
        let m = vec![vec![4, 7], vec![2, 9]];
        let l = Lattice::<i64>::from_generators(2, &m);
        assert_eq!(l.index(), Some(det2(&m).abs()));
    }

    #[test]
    fn smith_of_relation_lattice() {
        // span{(1,1),(4,0),(0,4)} -> Z^2 / L = C_4
        let (f, free) = quotient_structure(&[vec![1i64, 1], vec![4, 0], vec![0, 4]], 2);
        assert_eq!(f, vec![4]);
        assert_eq!(free, 0);
        assert_eq!(smith_invariants(&[vec![2i64, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(smith_invariants(&[vec![6i64, 4], vec![4, 6]], 2), vec![2, 10]);
    }

    #[test]
    fn left_kernel_mod_three() {
        // psi * (0,1,2)^T = 0 mod 3, as rows [0],[1],[2],[3]
        let rows = vec![vec![0i64], vec![1], vec![2], vec![3]];
        let k = left_kernel_exact(&rows, 1);
        let l = Lattice::from_generators(3, &k.iter().map(|r| r[..3].to_vec()).collect::<Vec<_>>());
        assert_eq!(l.index(), Some(3));
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(l.contains(&[a, b, c]), (b + 2 * c) % 3 == 0);
                }
            }
        }
    }

    #[test]
    fn big_and_small_scalars_agree() {
        let rows = vec![vec![12i64, 18, 6], vec![4, 10, 2], vec![3, 3, 9]];
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let small = hnf(&rows, 3);
        let via_big: Vec<Vec<i64>> = hnf(&big, 3).iter().map(|r| r.iter().map(from_big).collect()).collect();
        assert_eq!(small, via_big);
    }
}
