//! Tori split by a biquadratic extension `K/F`, described by expressions over
//! `Gm`, norm-one tori of quadratic steps, restriction of scalars and products.
//!
//! `Gal(K/F) = {1, g1, g2, g1 g2}` is encoded as bitmasks (bit 0 is `g1`,
//! bit 1 is `g2`, multiplication is xor). `E` is the fixed field of `g2`,
//! `E1` of `g1`, and `E3` of `g1 g2`.

use super::snf::{
    self, identity, subquotient, zeros, AbelianGroup, FiniteAbelianGroup, Mat, Presented,
};
use super::{coinvariant_torsion, tate_cohomology, GaloisLattice};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TowerField {
    F,
    E,
    E1,
    E3,
    K,
}

impl TowerField {
    pub const ALL: [TowerField; 5] = [
        TowerField::F,
        TowerField::E,
        TowerField::E1,
        TowerField::E3,
        TowerField::K,
    ];

    /// Elements of `Gal(K/self)`.
    pub fn subgroup(self) -> &'static [u8] {
        match self {
            TowerField::F => &[0, 1, 2, 3],
            TowerField::E => &[0, 2],
            TowerField::E1 => &[0, 1],
            TowerField::E3 => &[0, 3],
            TowerField::K => &[0],
        }
    }

    /// Generators of `Gal(K/self)` as an elementary abelian 2-group.
    pub fn generators(self) -> &'static [u8] {
        match self {
            TowerField::F => &[1, 2],
            TowerField::E => &[2],
            TowerField::E1 => &[1],
            TowerField::E3 => &[3],
            TowerField::K => &[],
        }
    }

    pub fn degree_over_f(self) -> usize {
        4 / self.subgroup().len()
    }

    /// `self ⊆ other`.
    pub fn contained_in(self, other: TowerField) -> bool {
        other.subgroup().iter().all(|g| self.subgroup().contains(g))
    }

    pub fn compositum(self, other: TowerField) -> TowerField {
        let common: Vec<u8> = self
            .subgroup()
            .iter()
            .copied()
            .filter(|g| other.subgroup().contains(g))
            .collect();
        Self::ALL
            .into_iter()
            .find(|f| f.subgroup() == common.as_slice())
            .expect("subgroups of the Klein four group are intersection closed")
    }

    pub fn name(self) -> &'static str {
        match self {
            TowerField::F => "F",
            TowerField::E => "E",
            TowerField::E1 => "E1",
            TowerField::E3 => "E3",
            TowerField::K => "K",
        }
    }
}

/// `[top : bottom] = 2` with `bottom ⊂ top`.
fn quadratic(top: TowerField, bottom: TowerField) -> bool {
    bottom.contained_in(top) && top.degree_over_f() == 2 * bottom.degree_over_f()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TorusExpr {
    /// `Gm` over the given field.
    Gm(TowerField),
    /// Norm-one torus of the quadratic step `top / bottom`, defined over `bottom`.
    U1 {
        top: TowerField,
        bottom: TowerField,
    },
    /// `Res_{top/bottom}` of a torus defined over `top`.
    Res {
        top: TowerField,
        bottom: TowerField,
        inner: Box<TorusExpr>,
    },
    Prod(Vec<TorusExpr>),
}

impl TorusExpr {
    pub fn u1(top: TowerField, bottom: TowerField) -> Self {
        TorusExpr::U1 { top, bottom }
    }

    pub fn res(top: TowerField, bottom: TowerField, inner: TorusExpr) -> Self {
        TorusExpr::Res {
            top,
            bottom,
            inner: Box::new(inner),
        }
    }

    /// Field of definition, after checking the tower.
    pub fn base(&self) -> Result<TowerField> {
        match self {
            TorusExpr::Gm(b) => Ok(*b),
            TorusExpr::U1 { top, bottom } => {
                if quadratic(*top, *bottom) {
                    Ok(*bottom)
                } else {
                    Err(Error::MalformedTower("norm-one step is not quadratic"))
                }
            }
            TorusExpr::Res { top, bottom, inner } => {
                if !bottom.contained_in(*top) {
                    return Err(Error::MalformedTower("restriction goes up the tower"));
                }
                if inner.base()? != *top {
                    return Err(Error::MalformedTower(
                        "restricted torus lives over another field",
                    ));
                }
                Ok(*bottom)
            }
            TorusExpr::Prod(parts) => {
                let first = parts
                    .first()
                    .ok_or(Error::MalformedTower("empty product"))?
                    .base()?;
                for p in &parts[1..] {
                    if p.base()? != first {
                        return Err(Error::MalformedTower(
                            "product factors over different fields",
                        ));
                    }
                }
                Ok(first)
            }
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            TorusExpr::Gm(_) | TorusExpr::U1 { .. } => 1,
            TorusExpr::Res { top, bottom, inner } => {
                inner.dimension() * top.degree_over_f() / bottom.degree_over_f()
            }
            TorusExpr::Prod(parts) => parts.iter().map(TorusExpr::dimension).sum(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            TorusExpr::Gm(b) => format!("Gm/{}", b.name()),
            TorusExpr::U1 { top, bottom } => format!("U1({}/{})", top.name(), bottom.name()),
            TorusExpr::Res { top, bottom, inner } => {
                format!("Res_{}/{}({})", top.name(), bottom.name(), inner.name())
            }
            TorusExpr::Prod(parts) => parts
                .iter()
                .map(TorusExpr::name)
                .collect::<Vec<_>>()
                .join(" x "),
        }
    }

    /// Action of each `g` in `Gal(K/base)` on the cocharacter lattice.
    fn action(&self, g: u8) -> Mat {
        match self {
            TorusExpr::Gm(_) => identity(1),
            TorusExpr::U1 { top, .. } => {
                if top.subgroup().contains(&g) {
                    identity(1)
                } else {
                    vec![vec![-1]]
                }
            }
            TorusExpr::Res { top, bottom, inner } => {
                let reps = coset_reps(*bottom, *top);
                let r = inner.dimension();
                let mut out = zeros(r * reps.len(), r * reps.len());
                for (k, &rk) in reps.iter().enumerate() {
                    // g r_k = r_i h with h in Gal(K/top).
                    let (i, h) = reps
                        .iter()
                        .enumerate()
                        .find_map(|(i, &ri)| {
                            let h = g ^ rk ^ ri;
                            top.subgroup().contains(&h).then_some((i, h))
                        })
                        .expect("coset representatives cover the group");
                    let block = inner.action(h);
                    for a in 0..r {
                        for b in 0..r {
                            out[i * r + a][k * r + b] = block[a][b];
                        }
                    }
                }
                out
            }
            TorusExpr::Prod(parts) => parts
                .iter()
                .map(|p| p.action(g))
                .reduce(|a, b| snf::block_diag(&a, &b))
                .unwrap_or_default(),
        }
    }

    /// The standard catalog over `F`: every rank-one torus, every restriction
    /// of a rank-one torus from a quadratic subfield, and two products.
    pub fn catalog() -> Vec<TorusExpr> {
        use TowerField::*;
        let mut out = vec![TorusExpr::Gm(F)];
        for m in [E, E1, E3] {
            out.push(TorusExpr::u1(m, F));
        }
        for m in [E, E1, E3] {
            out.push(TorusExpr::res(m, F, TorusExpr::Gm(m)));
            out.push(TorusExpr::res(m, F, TorusExpr::u1(K, m)));
        }
        out.push(TorusExpr::res(K, F, TorusExpr::Gm(K)));
        out.push(TorusExpr::res(
            E1,
            F,
            TorusExpr::res(K, E1, TorusExpr::Gm(K)),
        ));
        out.push(TorusExpr::Prod(vec![
            TorusExpr::u1(E, F),
            TorusExpr::Gm(F),
            TorusExpr::u1(E1, F),
        ]));
        out.push(TorusExpr::Prod(vec![
            TorusExpr::res(E1, F, TorusExpr::u1(K, E1)),
            TorusExpr::u1(E3, F),
        ]));
        out
    }
}

/// Representatives of `Gal(K/bottom) / Gal(K/top)`, identity first.
pub fn coset_reps(bottom: TowerField, top: TowerField) -> Vec<u8> {
    let mut reps: Vec<u8> = Vec::new();
    for &g in bottom.subgroup() {
        if !reps.iter().any(|&r| top.subgroup().contains(&(g ^ r))) {
            reps.push(g);
        }
    }
    reps
}

/// `X_*(S)` as a `Gal(K/level)`-lattice.
pub fn cocharacter_lattice(s: &TorusExpr, level: TowerField) -> Result<GaloisLattice> {
    let base = s.base()?;
    if !base.contained_in(level) {
        return Err(Error::MalformedTower(
            "level does not contain the base field",
        ));
    }
    let gens: Vec<Mat> = level.generators().iter().map(|&g| s.action(g)).collect();
    let orders = vec![2; gens.len()];
    GaloisLattice::new(s.dimension(), orders, gens)
}

/// Torsion of the coinvariants of `X_*(S)` under `Gal(K/level)`.
pub fn component_group_dual(s: &TorusExpr, level: TowerField) -> Result<FiniteAbelianGroup> {
    Ok(coinvariant_torsion(&cocharacter_lattice(s, level)?))
}

/// `S(B)/Nm S(L)` for `S` over `B` and `L/B` quadratic.
pub fn norm_quotient(s: &TorusExpr, l: TowerField) -> Result<FiniteAbelianGroup> {
    if !quadratic(l, s.base()?) {
        return Err(Error::Unsupported);
    }
    norm_quotient_rec(s, l)
}

fn norm_quotient_rec(s: &TorusExpr, l: TowerField) -> Result<FiniteAbelianGroup> {
    match s {
        TorusExpr::Gm(_) => Ok(FiniteAbelianGroup::cyclic(2)),
        TorusExpr::U1 { top, .. } => Ok(if *top == l {
            FiniteAbelianGroup::trivial()
        } else {
            FiniteAbelianGroup::cyclic(2)
        }),
        TorusExpr::Res { top, inner, .. } => {
            if l.contained_in(*top) {
                // L ⊗ top splits, so the norm is onto.
                Ok(FiniteAbelianGroup::trivial())
            } else {
                norm_quotient_rec(inner, top.compositum(l))
            }
        }
        TorusExpr::Prod(parts) => parts
            .iter()
            .try_fold(FiniteAbelianGroup::trivial(), |acc, p| {
                Ok(acc.product(&norm_quotient_rec(p, l)?))
            }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Verdict {
    pub lhs: u64,
    pub rhs: u64,
    pub equal: bool,
}

/// Kernel of restriction `H^1(B, S) -> H^1(L, S)` against the cokernel of
/// `π0(Ŝ^{Γ_L}) -> π0(Ŝ^{Γ_B})`, both through cocharacter lattices.
pub fn prasad_torus_identity(s: &TorusExpr, l: TowerField) -> Result<Verdict> {
    let base = s.base()?;
    if !quadratic(l, base) {
        return Err(Error::Unsupported);
    }
    let mg = cocharacter_lattice(s, base)?;
    let mh = cocharacter_lattice(s, l)?;
    let t = transfer(s, base, l);
    let lhs = restriction_kernel_order(&mg, &mh, &t)?;
    let rhs = dual_cokernel_order(&mg, &mh, &t)?;
    Ok(Verdict {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// Transfer `m -> Σ r m` over coset representatives of `Gal(K/l)` in `Gal(K/base)`.
fn transfer(s: &TorusExpr, base: TowerField, l: TowerField) -> Mat {
    let n = s.dimension();
    coset_reps(base, l)
        .iter()
        .fold(zeros(n, n), |acc, &r| snf::mat_add(&acc, &s.action(r)))
}

/// `|ker(Ĥ^{-1}(G, M) -> Ĥ^{-1}(H, M))|`, counted as `|Ĥ^{-1}(G)| / |image|`.
fn restriction_kernel_order(mg: &GaloisLattice, mh: &GaloisLattice, t: &Mat) -> Result<u64> {
    let kg = mg.norm_kernel();
    let kh = mh.norm_kernel();
    let mut rels: Vec<Vec<i64>> = kg.iter().map(|v| snf::mat_vec(t, v)).collect();
    rels.extend(mh.augmentation_span());
    let coimage = finite_order(subquotient(&kh, &rels)?)?;
    let hg = tate_cohomology(mg, -1)?.order();
    let hh = tate_cohomology(mh, -1)?.order();
    // |image| = |Ĥ^{-1}(H)| / |coker|.
    Ok(hg * coimage / hh)
}

/// Cokernel of the Pontryagin dual of restriction, which is the map
/// `π0(Ŝ^{Γ_L}) -> π0(Ŝ^{Γ_B})` under the Kottwitz isomorphism.
fn dual_cokernel_order(mg: &GaloisLattice, mh: &GaloisLattice, t: &Mat) -> Result<u64> {
    let pg = Presented::new(&mg.norm_kernel(), &mg.augmentation_span())?;
    let ph = Presented::new(&mh.norm_kernel(), &mh.augmentation_span())?;
    // res(e_i) = Σ_j c[i][j] f_j.
    let c: Vec<Vec<i64>> = pg
        .generators
        .iter()
        .map(|g| ph.class_of(&snf::mat_vec(t, g)))
        .collect::<Result<_>>()?;
    // The character f_j^* pulls back to e_i -> c_ij / b_j, i.e. (c_ij a_i / b_j) e_i^*.
    let k = pg.orders.len();
    let mut rels: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = pg.orders[i];
            v
        })
        .collect();
    for (j, &b) in ph.orders.iter().enumerate() {
        let col = (0..k)
            .map(|i| {
                let num = c[i][j] * pg.orders[i];
                if num % b != 0 {
                    return Err(Error::Invalid("restriction is not a homomorphism".into()));
                }
                Ok(num / b)
            })
            .collect::<Result<Vec<i64>>>()?;
        rels.push(col);
    }
    let coker = AbelianGroup::cokernel(k, &rels);
    Ok(coker.torsion().order())
}

fn finite_order(g: AbelianGroup) -> Result<u64> {
    if g.free_rank != 0 {
        return Err(Error::Invalid("expected a finite quotient".into()));
    }
    Ok(g.torsion().order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use TowerField::*;

    #[test]
    fn tower_lattice() {
        assert!(F.contained_in(E) && E.contained_in(K) && !E.contained_in(E1));
        assert_eq!(E.compositum(E1), K);
        assert_eq!(F.compositum(E3), E3);
        assert_eq!(coset_reps(F, E), vec![0, 1]);
        assert_eq!(coset_reps(F, E1), vec![0, 2]);
        assert_eq!(coset_reps(F, K).len(), 4);
    }

    #[test]
    fn malformed_towers() {
        assert!(TorusExpr::u1(K, F).base().is_err());
        assert!(TorusExpr::u1(E, E1).base().is_err());
        assert!(TorusExpr::res(E, F, TorusExpr::Gm(E1)).base().is_err());
        assert!(TorusExpr::Prod(vec![]).base().is_err());
        assert!(TorusExpr::Prod(vec![TorusExpr::Gm(F), TorusExpr::Gm(E)])
            .base()
            .is_err());
        assert!(cocharacter_lattice(&TorusExpr::Gm(E), F).is_err());
    }

    #[test]
    fn cocharacter_examples() {
        let u = TorusExpr::u1(E, F);
        let at_f = cocharacter_lattice(&u, F).unwrap();
        assert_eq!(at_f.gens(), &[vec![vec![-1]], vec![vec![1]]]);
        let at_e = cocharacter_lattice(&u, E).unwrap();
        assert_eq!(at_e.gens(), &[vec![vec![1]]]);
        let r = TorusExpr::res(E1, F, TorusExpr::u1(K, E1));
        let m = cocharacter_lattice(&r, F).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.gens()[0], vec![vec![-1, 0], vec![0, -1]]);
        assert_eq!(m.gens()[1], vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn component_group_examples() {
        assert!(component_group_dual(&TorusExpr::Gm(F), F)
            .unwrap()
            .is_trivial());
        let u = TorusExpr::u1(E, F);
        assert_eq!(component_group_dual(&u, F).unwrap().invariants, vec![2]);
        assert!(component_group_dual(&u, E).unwrap().is_trivial());
    }

    #[test]
    fn norm_quotient_examples() {
        assert_eq!(norm_quotient(&TorusExpr::Gm(F), E).unwrap().order(), 2);
        assert!(norm_quotient(&TorusExpr::u1(E, F), E).unwrap().is_trivial());
        assert_eq!(norm_quotient(&TorusExpr::u1(E1, F), E).unwrap().order(), 2);
        let r = TorusExpr::res(E1, F, TorusExpr::u1(K, E1));
        assert!(norm_quotient(&r, E).unwrap().is_trivial());
        assert!(norm_quotient(&TorusExpr::res(E, F, TorusExpr::Gm(E)), E)
            .unwrap()
            .is_trivial());
        assert_eq!(norm_quotient(&TorusExpr::Gm(F), K), Err(Error::Unsupported));
    }

    #[test]
    fn torus_identity_examples() {
        let cases = [
            (TorusExpr::Gm(F), 1),
            (TorusExpr::u1(E, F), 2),
            (TorusExpr::u1(E1, F), 2),
            (TorusExpr::res(E1, F, TorusExpr::u1(K, E1)), 2),
            (
                TorusExpr::Prod(vec![
                    TorusExpr::u1(E, F),
                    TorusExpr::Gm(F),
                    TorusExpr::u1(E1, F),
                ]),
                4,
            ),
        ];
        for (s, expect) in cases {
            let v = prasad_torus_identity(&s, E).unwrap();
            assert_eq!(
                (v.lhs, v.rhs, v.equal),
                (expect, expect, true),
                "{}",
                s.name()
            );
        }
    }
}
