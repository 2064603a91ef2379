//! Tate cohomology of integer lattices with an action of a finite abelian group,
//! and the torus computations built on top of it.

pub mod snf;
pub mod torus;

pub use snf::{AbelianGroup, FiniteAbelianGroup, Mat};
pub use torus::{
    cocharacter_lattice, component_group_dual, coset_reps, norm_quotient, prasad_torus_identity,
    TorusExpr, TowerField, Verdict,
};

use crate::error::{Error, Result};
use snf::{identity, is_unimodular, kernel_basis, mat_add, mat_mul, mat_sub, mat_vec, subquotient};

/// `Z^n` with an action of `Z/o_1 x ... x Z/o_r`, generator `i` acting by `gens[i]`.
///
/// The action need not be faithful.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisLattice {
    rank: usize,
    orders: Vec<u32>,
    gens: Vec<Mat>,
}

impl GaloisLattice {
    pub fn new(rank: usize, orders: Vec<u32>, gens: Vec<Mat>) -> Result<Self> {
        if orders.len() != gens.len() || orders.contains(&0) {
            return Err(Error::BadRelations);
        }
        for g in &gens {
            if g.len() != rank || g.iter().any(|r| r.len() != rank) {
                return Err(Error::Invalid("generator has the wrong size".into()));
            }
            if !is_unimodular(g) {
                return Err(Error::NonInvertible);
            }
        }
        let id = identity(rank);
        for (g, &o) in gens.iter().zip(&orders) {
            if mat_pow(g, o, rank) != id {
                return Err(Error::BadRelations);
            }
        }
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if mat_mul(a, b) != mat_mul(b, a) {
                    return Err(Error::BadRelations);
                }
            }
        }
        Ok(GaloisLattice { rank, orders, gens })
    }

    pub fn trivial(rank: usize, orders: Vec<u32>) -> Self {
        let gens = orders.iter().map(|_| identity(rank)).collect();
        GaloisLattice { rank, orders, gens }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }

    pub fn group_order(&self) -> u64 {
        self.orders.iter().map(|&o| o as u64).product()
    }

    /// Matrix of every group element, indexed by exponent vectors in mixed radix.
    pub fn elements(&self) -> Vec<Mat> {
        let mut out = vec![identity(self.rank)];
        for (g, &o) in self.gens.iter().zip(&self.orders) {
            let powers: Vec<Mat> = (0..o).map(|k| mat_pow(g, k, self.rank)).collect();
            out = out
                .iter()
                .flat_map(|x| powers.iter().map(move |p| mat_mul(x, p)))
                .collect();
        }
        out
    }

    pub fn norm(&self) -> Mat {
        self.elements()
            .iter()
            .fold(snf::zeros(self.rank, self.rank), |acc, g| mat_add(&acc, g))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.orders != other.orders {
            return Err(Error::BadRelations);
        }
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| snf::block_diag(a, b))
            .collect();
        Ok(GaloisLattice {
            rank: self.rank + other.rank,
            orders: self.orders.clone(),
            gens,
        })
    }

    /// Same module, acting matrices conjugated by a unimodular change of basis.
    pub fn conjugate(&self, p: &Mat, p_inv: &Mat) -> Result<Self> {
        if mat_mul(p, p_inv) != identity(self.rank) {
            return Err(Error::NonInvertible);
        }
        let gens = self
            .gens
            .iter()
            .map(|g| mat_mul(&mat_mul(p, g), p_inv))
            .collect();
        GaloisLattice::new(self.rank, self.orders.clone(), gens)
    }

    /// Columns spanning the augmentation submodule `I_G M`.
    pub fn augmentation_span(&self) -> Vec<Vec<i64>> {
        let id = identity(self.rank);
        self.gens
            .iter()
            .flat_map(|g| snf::columns(&mat_sub(g, &id), self.rank))
            .collect()
    }

    pub fn norm_kernel(&self) -> Vec<Vec<i64>> {
        kernel_basis(&self.norm(), self.rank, self.rank)
    }

    pub fn invariants(&self) -> Vec<Vec<i64>> {
        let id = identity(self.rank);
        let stacked: Mat = self.gens.iter().flat_map(|g| mat_sub(g, &id)).collect();
        kernel_basis(&stacked, stacked.len(), self.rank)
    }
}

pub(crate) fn mat_pow(g: &Mat, k: u32, n: usize) -> Mat {
    (0..k).fold(identity(n), |acc, _| mat_mul(&acc, g))
}

fn finite(g: AbelianGroup) -> Result<FiniteAbelianGroup> {
    if g.free_rank != 0 {
        return Err(Error::Invalid("cohomology group is not finite".into()));
    }
    Ok(g.torsion())
}

/// `Ĥ^{-1} = ker N / I_G M` and `Ĥ^0 = M^G / N M`; degree 1 is also supported.
pub fn tate_cohomology(m: &GaloisLattice, degree: i32) -> Result<FiniteAbelianGroup> {
    match degree {
        -1 => finite(subquotient(&m.norm_kernel(), &m.augmentation_span())?),
        0 => {
            let image = snf::columns(&m.norm(), m.rank);
            finite(subquotient(&m.invariants(), &image)?)
        }
        1 => h1(m),
        _ => Err(Error::Invalid(format!("degree {degree} is not supported"))),
    }
}

/// `H^1` from the cocycle equations of the abelian presentation: a cocycle is
/// fixed by its values `x_i` on the generators, subject to `N_{s_i} x_i = 0`
/// and `(s_i - 1) x_j = (s_j - 1) x_i`.
pub fn h1(m: &GaloisLattice) -> Result<FiniteAbelianGroup> {
    let n = m.rank;
    let r = m.gens.len();
    let id = identity(n);
    let width = n * r;
    let mut rows: Mat = Vec::new();
    for i in 0..r {
        let local_norm = (0..m.orders[i])
            .map(|k| mat_pow(&m.gens[i], k, n))
            .fold(snf::zeros(n, n), |acc, p| mat_add(&acc, &p));
        for row in &local_norm {
            let mut full = vec![0; width];
            full[i * n..(i + 1) * n].copy_from_slice(row);
            rows.push(full);
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            let si = mat_sub(&m.gens[i], &id);
            let sj = mat_sub(&m.gens[j], &id);
            for k in 0..n {
                let mut full = vec![0; width];
                for c in 0..n {
                    full[j * n + c] += si[k][c];
                    full[i * n + c] -= sj[k][c];
                }
                rows.push(full);
            }
        }
    }
    let cocycles = kernel_basis(&rows, rows.len(), width);
    let coboundaries: Vec<Vec<i64>> = (0..n)
        .map(|c| {
            let mut e = vec![0; n];
            e[c] = 1;
            m.gens
                .iter()
                .flat_map(|g| {
                    let ge = mat_vec(g, &e);
                    ge.iter().zip(&e).map(|(a, b)| a - b).collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    finite(subquotient(&cocycles, &coboundaries)?)
}

/// Torsion of the coinvariants `M / I_G M`.
pub fn coinvariant_torsion(m: &GaloisLattice) -> FiniteAbelianGroup {
    AbelianGroup::cokernel(m.rank, &m.augmentation_span()).torsion()
}
