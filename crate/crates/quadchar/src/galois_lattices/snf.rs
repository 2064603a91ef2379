//! Smith normal form over the integers, with unimodular transforms.

use crate::error::{Error, Result};

/// Row-major integer matrix.
pub type Mat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![0; cols]; rows]
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Mat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn transpose(a: &Mat, rows: usize) -> Mat {
    let cols = a.first().map_or(0, Vec::len);
    debug_assert_eq!(a.len(), rows);
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j]).collect())
        .collect()
}

/// Matrix whose columns are the given vectors, each of length `rows`.
pub fn from_columns(cols: &[Vec<i64>], rows: usize) -> Mat {
    (0..rows)
        .map(|i| cols.iter().map(|c| c[i]).collect())
        .collect()
}

pub fn columns(a: &Mat, rows: usize) -> Vec<Vec<i64>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| a[i][j]).collect())
        .collect()
}

/// Block diagonal sum.
pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = zeros(n + m, n + m);
    for i in 0..n {
        out[i][..n].copy_from_slice(&a[i]);
    }
    for i in 0..m {
        out[n + i][n..].copy_from_slice(&b[i]);
    }
    out
}

/// `u * a * v = diag(d)` with `d[i] | d[i+1]`, `u` and `v` unimodular.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Mat,
    pub v: Mat,
    /// Nonzero diagonal entries, positive and forming a divisibility chain.
    pub diag: Vec<i64>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

/// Smith normal form of an `rows x cols` matrix.
pub fn smith(a: &Mat, rows: usize, cols: usize) -> Smith {
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    if m.is_empty() {
        m = vec![Vec::new(); rows];
    }
    let mut u: Vec<Vec<i128>> = to_wide(&identity(rows));
    let mut v: Vec<Vec<i128>> = to_wide(&identity(cols));
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_entry(&m, t, rows, cols) else {
                return finish(u, v, diag);
            };
            m.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(m[t][t]);
                if q != 0 {
                    add_row(&mut m, i, t, -q);
                    add_row(&mut u, i, t, -q);
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(m[t][t]);
                if q != 0 {
                    add_col(&mut m, j, t, -q);
                    add_col(&mut v, j, t, -q);
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Enforce divisibility against the remaining block.
            let p = m[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    add_row(&mut m, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(m[t][t]);
    }
    finish(u, v, diag)
}

fn to_wide(a: &Mat) -> Vec<Vec<i128>> {
    a.iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect()
}

fn narrow(a: Vec<Vec<i128>>) -> Mat {
    a.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).expect("transform entry overflow"))
                .collect()
        })
        .collect()
}

fn finish(u: Vec<Vec<i128>>, v: Vec<Vec<i128>>, diag: Vec<i128>) -> Smith {
    Smith {
        u: narrow(u),
        v: narrow(v),
        diag: diag
            .into_iter()
            .map(|x| i64::try_from(x).expect("diagonal overflow"))
            .collect(),
    }
}

fn min_entry(m: &[Vec<i128>], t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            let x = m[i][j];
            if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[dst] += k * row[src]
fn add_row(m: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    let src_row = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(src_row) {
        *x += k * y;
    }
}

/// col[dst] += k * col[src]
fn add_col(m: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    for row in m.iter_mut() {
        row[dst] += k * row[src];
    }
}

/// Saturated basis of the integer kernel of an `rows x cols` matrix, as column vectors.
pub fn kernel_basis(a: &Mat, rows: usize, cols: usize) -> Vec<Vec<i64>> {
    let s = smith(a, rows, cols);
    (s.rank()..cols)
        .map(|j| (0..cols).map(|i| s.v[i][j]).collect())
        .collect()
}

/// Determinant is a unit.
pub fn is_unimodular(a: &Mat) -> bool {
    let n = a.len();
    let s = smith(a, n, n);
    s.rank() == n && s.diag.iter().all(|&d| d == 1)
}

/// Coordinates of `w` in a saturated basis (columns of `basis`), if `w` lies in its span.
pub fn coordinates(basis: &[Vec<i64>], w: &[i64]) -> Option<Vec<i64>> {
    let n = w.len();
    let k = basis.len();
    if k == 0 {
        return w.iter().all(|&x| x == 0).then(Vec::new);
    }
    let b = from_columns(basis, n);
    let s = smith(&b, n, k);
    let uw = mat_vec(&s.u, w);
    let mut y = vec![0i64; k];
    for (i, &d) in s.diag.iter().enumerate() {
        if uw[i] % d != 0 {
            return None;
        }
        y[i] = uw[i] / d;
    }
    if uw[s.rank()..].iter().any(|&x| x != 0) {
        return None;
    }
    Some(mat_vec(&s.v, &y))
}

/// Finitely generated abelian group `Z^r x Z/d_1 x ... x Z/d_k` with `d_i | d_{i+1}`, `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    pub invariants: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianGroup {
    /// `Z^n` modulo the span of the given relation vectors.
    pub fn cokernel(n: usize, relations: &[Vec<i64>]) -> Self {
        let r = from_columns(relations, n);
        let s = smith(&r, n, relations.len());
        AbelianGroup {
            invariants: s
                .diag
                .iter()
                .filter(|&&d| d > 1)
                .map(|&d| d as u64)
                .collect(),
            free_rank: n - s.rank(),
        }
    }

    pub fn torsion(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup {
            invariants: self.invariants.clone(),
        }
    }
}

/// Finite abelian group in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct FiniteAbelianGroup {
    pub invariants: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariants: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_orders(&[n])
    }

    /// Normalizes an arbitrary product of cyclic groups.
    pub fn from_orders(orders: &[u64]) -> Self {
        let rels: Vec<Vec<i64>> = orders
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut v = vec![0; orders.len()];
                v[i] = d as i64;
                v
            })
            .collect();
        AbelianGroup::cokernel(orders.len(), &rels).torsion()
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut all = self.invariants.clone();
        all.extend(&other.invariants);
        Self::from_orders(&all)
    }

    pub fn name(&self) -> String {
        if self.is_trivial() {
            return "1".into();
        }
        self.invariants
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// `sub / rels` where both are given by generators inside `Z^n` and `rels`
/// lies in the span of `sub`; `sub` must be a saturated basis.
pub fn subquotient(sub: &[Vec<i64>], rels: &[Vec<i64>]) -> Result<AbelianGroup> {
    let coords: Vec<Vec<i64>> = rels
        .iter()
        .map(|w| {
            coordinates(sub, w).ok_or_else(|| Error::Invalid("relation outside sublattice".into()))
        })
        .collect::<Result<_>>()?;
    Ok(AbelianGroup::cokernel(sub.len(), &coords))
}

/// A finite subquotient `sub / rels` with explicit cyclic generators.
#[derive(Debug, Clone)]
pub struct Presented {
    basis: Vec<Vec<i64>>,
    u: Mat,
    /// Orders of the cyclic factors, all `>= 2`.
    pub orders: Vec<i64>,
    positions: Vec<usize>,
    /// Representatives in the ambient lattice of the cyclic generators.
    pub generators: Vec<Vec<i64>>,
}

impl Presented {
    pub fn new(sub: &[Vec<i64>], rels: &[Vec<i64>]) -> Result<Self> {
        let k = sub.len();
        let coords: Vec<Vec<i64>> = rels
            .iter()
            .map(|w| {
                coordinates(sub, w)
                    .ok_or_else(|| Error::Invalid("relation outside sublattice".into()))
            })
            .collect::<Result<_>>()?;
        let r = from_columns(&coords, k);
        let s = smith(&r, k, coords.len());
        if s.rank() != k {
            return Err(Error::Invalid("expected a finite quotient".into()));
        }
        let u_cols = columns(&s.u, k);
        let n = sub.first().map_or(0, Vec::len);
        let mut orders = Vec::new();
        let mut positions = Vec::new();
        let mut generators = Vec::new();
        for (i, &d) in s.diag.iter().enumerate() {
            if d > 1 {
                let mut e = vec![0; k];
                e[i] = 1;
                let c = coordinates(&u_cols, &e).expect("transform is unimodular");
                let ambient: Vec<i64> = (0..n)
                    .map(|row| sub.iter().zip(&c).map(|(b, x)| b[row] * x).sum())
                    .collect();
                orders.push(d);
                positions.push(i);
                generators.push(ambient);
            }
        }
        Ok(Presented {
            basis: sub.to_vec(),
            u: s.u,
            orders,
            positions,
            generators,
        })
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&d| d as u64).product()
    }

    /// Coordinates of the class of `w` against the cyclic generators.
    pub fn class_of(&self, w: &[i64]) -> Result<Vec<i64>> {
        let c = coordinates(&self.basis, w)
            .ok_or_else(|| Error::Invalid("vector outside sublattice".into()))?;
        let y = mat_vec(&self.u, &c);
        Ok(self
            .positions
            .iter()
            .zip(&self.orders)
            .map(|(&i, &d)| y[i].rem_euclid(d))
            .collect())
    }
}
