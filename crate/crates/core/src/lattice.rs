//! Integer Hermite normal form and the kernel lattice `H_k = ker ψ_k ⊆ Z^n`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::GroupWord;
use crate::error::{Error, Result};
use crate::ring::RingContext;

/// Row-style Hermite normal form of an integer matrix.
///
/// Nonzero rows come first, in echelon form with positive pivots; entries above
/// each pivot `d` are reduced to the centered range `(-d/2, d/2]`. Zero rows
/// are dropped.
pub fn hermite_normal_form(mut rows: Vec<Vec<i128>>) -> Vec<Vec<i128>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == rows.len() {
            break;
        }
        // Euclid down the column until a single nonzero entry remains.
        loop {
            let nonzero: Vec<usize> = (pivot_row..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .collect();
            if nonzero.is_empty() {
                break;
            }
            let smallest = *nonzero.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            rows.swap(pivot_row, smallest);
            let mut done = true;
            for i in pivot_row + 1..rows.len() {
                if rows[i][col] != 0 {
                    let factor = rows[i][col].div_euclid(rows[pivot_row][col]);
                    let pivot = rows[pivot_row].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pivot) {
                        *x -= factor * y;
                    }
                    if rows[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col] == 0 {
            continue;
        }
        if rows[pivot_row][col] < 0 {
            for x in rows[pivot_row].iter_mut() {
                *x = -*x;
            }
        }
        let d = rows[pivot_row][col];
        let pivot = rows[pivot_row].clone();
        for row in rows.iter_mut().take(pivot_row) {
            let mut rem = row[col].rem_euclid(d);
            if rem > d / 2 {
                rem -= d;
            }
            let factor = (row[col] - rem) / d;
            if factor != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= factor * y;
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

/// The lattice `H_k = {g ∈ Z^n : Σ g_i a_i ≡ 0 mod p^k}` in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelLattice {
    k: usize,
    basis: Vec<Vec<i64>>,
    index: u64,
}

impl KernelLattice {
    /// Computes the kernel of `ψ_k` by appending the congruence as an extra
    /// column and reducing the `(n+1) × (n+1)` system to Hermite normal form.
    pub fn compute(ctx: &RingContext) -> Result<Self> {
        let n = ctx.rank();
        let modulus = ctx.modulus() as i128;
        let residues = ctx.action().truncations(ctx.level() as u32);
        let mut rows = Vec::with_capacity(n + 1);
        for (i, &a) in residues.iter().enumerate() {
            let mut row = vec![0i128; n + 1];
            row[0] = a as i128;
            row[i + 1] = 1;
            rows.push(row);
        }
        let mut modulus_row = vec![0i128; n + 1];
        modulus_row[0] = modulus;
        rows.push(modulus_row);
        let hnf = hermite_normal_form(rows);
        let kernel: Vec<Vec<i128>> = hnf
            .into_iter()
            .filter(|row| row[0] == 0)
            .map(|row| row[1..].to_vec())
            .collect();
        let basis: Vec<Vec<i64>> = hermite_normal_form(kernel)
            .into_iter()
            .map(|row| row.into_iter().map(|x| x as i64).collect())
            .collect();
        if basis.len() != n {
            return Err(Error::InternalConsistency(format!(
                "kernel lattice has rank {} instead of {n}",
                basis.len()
            )));
        }
        let index = (0..n).map(|i| basis[i][i] as u64).product::<u64>();
        if index != ctx.modulus() {
            return Err(Error::InternalConsistency(format!(
                "kernel lattice index {index} differs from p^k = {}",
                ctx.modulus()
            )));
        }
        Ok(KernelLattice {
            k: ctx.level(),
            basis,
            index,
        })
    }

    pub fn level(&self) -> usize {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Upper-triangular basis rows.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// `|Z^n : H_k|`.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rank()).map(|i| self.basis[i][i]).collect()
    }

    /// Writes `g = rep + Σ λ_i b_i` with `0 ≤ rep_i < d_i`, returning `(rep, λ)`.
    pub fn reduce(&self, g: &[i64]) -> (GroupWord, Vec<i64>) {
        let mut rest = g.to_vec();
        let mut lambda = vec![0i64; self.rank()];
        for (i, row) in self.basis.iter().enumerate() {
            let l = rest[i].div_euclid(row[i]);
            lambda[i] = l;
            if l != 0 {
                for (x, y) in rest.iter_mut().zip(row) {
                    *x -= l * y;
                }
            }
        }
        (GroupWord::new(rest), lambda)
    }

    /// Coordinates of `g` in the basis, if `g ∈ H_k`.
    pub fn coordinates(&self, g: &[i64]) -> Option<Vec<i64>> {
        let (rep, lambda) = self.reduce(g);
        rep.is_zero().then_some(lambda)
    }

    pub fn contains(&self, g: &[i64]) -> bool {
        self.coordinates(g).is_some()
    }

    pub fn combine(&self, lambda: &[i64]) -> GroupWord {
        let n = self.rank();
        let mut g = vec![0i64; n];
        for (l, row) in lambda.iter().zip(&self.basis) {
            for (x, y) in g.iter_mut().zip(row) {
                *x += l * y;
            }
        }
        GroupWord::new(g)
    }

    /// One representative per coset of `H_k`: the fundamental box
    /// `0 ≤ g_i < d_i` of the triangular basis, in lexicographic order.
    pub fn coset_representatives(&self) -> Vec<GroupWord> {
        let diag = self.diagonal();
        let mut reps = vec![GroupWord::zero(self.rank())];
        for (i, &d) in diag.iter().enumerate() {
            reps = reps
                .into_iter()
                .flat_map(|g| {
                    (0..d).map(move |v| {
                        let mut w = g.to_vec();
                        w[i] = v;
                        GroupWord::new(w)
                    })
                })
                .collect();
        }
        reps.sort();
        reps
    }

    /// `self ⊆ other` as lattices.
    pub fn is_sublattice_of(&self, other: &KernelLattice) -> bool {
        self.basis.iter().all(|row| other.contains(row))
    }
}
