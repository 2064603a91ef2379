//! Independent oracles shared by the integration and acceptance tests.

#![allow(dead_code)]

use quadchar::galois_lattices::{GaloisLattice, Mat};

type Vector = Vec<i64>;

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn id(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Signed permutation matrices of order dividing 2.
pub fn signed_perm_involutions(n: usize) -> Vec<Mat> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for p in perms {
        for signs in 0..(1u32 << n) {
            let mut m = vec![vec![0; n]; n];
            for (i, &j) in p.iter().enumerate() {
                m[i][j] = if signs >> i & 1 == 1 { -1 } else { 1 };
            }
            if mul(&m, &m) == id(n) {
                out.push(m);
            }
        }
    }
    out
}

fn elementary(n: usize, i: usize, j: usize, k: i64) -> Mat {
    let mut m = id(n);
    m[i][j] = k;
    m
}

/// A non-signed-permutation change of basis and its inverse.
fn shear(n: usize) -> (Mat, Mat) {
    if n == 2 {
        (elementary(2, 0, 1, 1), elementary(2, 0, 1, -1))
    } else {
        (
            mul(&elementary(n, 1, 0, 2), &elementary(n, 0, n - 1, 1)),
            mul(&elementary(n, 0, n - 1, -1), &elementary(n, 1, 0, -2)),
        )
    }
}

/// Every rank <= 3 lattice with a signed permutation action of `Z/2` or
/// `Z/2 x Z/2`, plus one unimodular conjugate of each rank >= 2 lattice.
pub fn oracle_lattices() -> Vec<GaloisLattice> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let invs = signed_perm_involutions(n);
        let mut base = Vec::new();
        for a in &invs {
            base.push(GaloisLattice::new(n, vec![2], vec![a.clone()]).unwrap());
        }
        for a in &invs {
            for b in &invs {
                if mul(a, b) == mul(b, a) {
                    base.push(
                        GaloisLattice::new(n, vec![2, 2], vec![a.clone(), b.clone()]).unwrap(),
                    );
                }
            }
        }
        if n >= 2 {
            let (p, q) = shear(n);
            assert_eq!(mul(&p, &q), id(n));
            let conj: Vec<GaloisLattice> =
                base.iter().map(|m| m.conjugate(&p, &q).unwrap()).collect();
            base.extend(conj);
        }
        out.extend(base);
    }
    out
}

/// Cardinalities of `Ĥ^{-1}`, `Ĥ^0` and `H^1` of `M / modulus M`, by enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedCounts {
    pub hm1: u64,
    pub h0: u64,
    /// Enumerated only for cyclic groups, where it is compared against `Ĥ^{-1}`.
    pub h1: Option<u64>,
}

/// Elements of `(Z/modulus)^n` encoded in base `modulus`.
struct Truncation {
    n: usize,
    modulus: i64,
    size: usize,
}

impl Truncation {
    fn decode(&self, mut c: usize) -> Vector {
        (0..self.n)
            .map(|_| {
                let d = (c % self.modulus as usize) as i64;
                c /= self.modulus as usize;
                d
            })
            .collect()
    }

    fn encode(&self, v: &[i64]) -> usize {
        v.iter().rev().fold(0, |acc, &d| {
            acc * self.modulus as usize + d.rem_euclid(self.modulus) as usize
        })
    }

    fn action_table(&self, g: &Mat) -> Vec<usize> {
        (0..self.size)
            .map(|c| {
                let v = self.decode(c);
                let w: Vector = g
                    .iter()
                    .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
                    .collect();
                self.encode(&w)
            })
            .collect()
    }

    fn add_codes(&self, mut a: usize, mut b: usize) -> usize {
        let k = self.modulus as usize;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((a % k + b % k) % k) * place;
            a /= k;
            b /= k;
            place *= k;
        }
        out
    }

    fn add_table(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.add_codes(a, b)).collect())
            .collect()
    }

    fn neg_table(&self) -> Vec<usize> {
        (0..self.size)
            .map(|c| {
                let v: Vector = self.decode(c).iter().map(|x| -x).collect();
                self.encode(&v)
            })
            .collect()
    }
}

/// Group elements as `(exponent vector, matrix)`, built independently of the library.
fn group(m: &GaloisLattice) -> Vec<(Vec<u32>, Mat)> {
    let n = m.rank();
    let mut out = vec![(vec![], id(n))];
    for (g, &o) in m.gens().iter().zip(m.orders()) {
        let mut next = Vec::new();
        for (e, x) in &out {
            let mut p = x.clone();
            for k in 0..o {
                let mut e2 = e.clone();
                e2.push(k);
                next.push((e2, p.clone()));
                p = mul(&p, g);
            }
        }
        out = next;
    }
    out
}

fn span(gens: &[usize], add: &[Vec<usize>]) -> usize {
    let mut seen = vec![false; add.len()];
    seen[0] = true;
    let mut frontier = vec![0];
    let mut count = 1;
    while let Some(v) = frontier.pop() {
        for &g in gens {
            let w = add[v][g];
            if !seen[w] {
                seen[w] = true;
                count += 1;
                frontier.push(w);
            }
        }
    }
    count
}

pub fn truncated_counts(m: &GaloisLattice, modulus: i64) -> TruncatedCounts {
    let n = m.rank();
    let t = Truncation {
        n,
        modulus,
        size: (modulus as usize).pow(n as u32),
    };
    let add = t.add_table();
    let neg = t.neg_table();
    let elems = group(m);
    let act: Vec<Vec<usize>> = elems.iter().map(|(_, g)| t.action_table(g)).collect();
    let gen_act: Vec<Vec<usize>> = m.gens().iter().map(|g| t.action_table(g)).collect();
    let norm: Vec<usize> = (0..t.size)
        .map(|v| act.iter().fold(0, |acc, a| add[acc][a[v]]))
        .collect();

    let ker_norm = norm.iter().filter(|&&x| x == 0).count() as u64;
    let aug_gens: Vec<usize> = act
        .iter()
        .flat_map(|a| (0..t.size).map(|v| add[a[v]][neg[v]]))
        .collect();
    let aug = span(&aug_gens, &add) as u64;

    let fixed = (0..t.size)
        .filter(|&v| act.iter().all(|a| a[v] == v))
        .count() as u64;
    let mut norm_image = norm.clone();
    norm_image.sort();
    norm_image.dedup();

    TruncatedCounts {
        hm1: ker_norm / aug,
        h0: fixed / norm_image.len() as u64,
        h1: (m.gens().len() == 1)
            .then(|| h1_by_cocycles(m, &t, &elems, &act, &gen_act, &add, &neg))
            .flatten(),
    }
}

fn h1_by_cocycles(
    m: &GaloisLattice,
    t: &Truncation,
    elems: &[(Vec<u32>, Mat)],
    act: &[Vec<usize>],
    gen_act: &[Vec<usize>],
    add: &[Vec<usize>],
    neg: &[usize],
) -> Option<u64> {
    // Crossed homomorphisms f: G -> M_k, determined by their values on generators
    // and checked against f(gh) = f(g) + g f(h) on every pair.
    let r = m.gens().len();
    let orders = m.orders().to_vec();
    let index = |e: &[u32]| elems.iter().position(|(x, _)| x.as_slice() == e).unwrap();
    let mut product = vec![vec![0; elems.len()]; elems.len()];
    for (i, (a, _)) in elems.iter().enumerate() {
        for (j, (b, _)) in elems.iter().enumerate() {
            let ab: Vec<u32> = a
                .iter()
                .zip(b)
                .zip(&orders)
                .map(|((x, y), o)| (x + y) % o)
                .collect();
            product[i][j] = index(&ab);
        }
    }
    // For each non-identity element: (generator i, index of s_i^{-1} e).
    let steps: Vec<Option<(usize, usize)>> = elems
        .iter()
        .map(|(e, _)| {
            e.iter().position(|&x| x > 0).map(|i| {
                let mut prev = e.clone();
                prev[i] -= 1;
                (i, index(&prev))
            })
        })
        .collect();
    let mut cocycles = 0u64;
    let total = t.size.pow(r as u32);
    let mut f = vec![0usize; elems.len()];
    for mut choice in 0..total {
        let mut xs = Vec::with_capacity(r);
        for _ in 0..r {
            xs.push(choice % t.size);
            choice /= t.size;
        }
        // Lowering the first nonzero exponent gives an earlier element.
        for (pos, step) in steps.iter().enumerate() {
            f[pos] = match step {
                None => 0,
                Some((i, prev)) => add[xs[*i]][gen_act[*i][f[*prev]]],
            };
        }
        let ok = (0..elems.len())
            .all(|a| (0..elems.len()).all(|b| f[product[a][b]] == add[f[a]][act[a][f[b]]]));
        if ok {
            cocycles += 1;
        }
    }
    let mut coboundaries: Vec<Vec<usize>> = (0..t.size)
        .map(|v| gen_act.iter().map(|g| add[g[v]][neg[v]]).collect())
        .collect();
    coboundaries.sort();
    coboundaries.dedup();

    Some(cocycles / coboundaries.len() as u64)
}
