//! Per-orbit contributions to the four quadratic characters, the consistent
//! orbit configurations, and the comparison of their product with the
//! character attached to ζ-data.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::padic_fields::{hilbert_symbol, LocalFieldDesc, SquareClass};
pub use crate::root_orbits::{op_class, Degree, Ramification, Symmetry};

/// One orbit's position in the tower, with the two gating flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct RootOrbitConfig {
    /// `[E_α : F_α]`.
    pub degree: Degree,
    pub sym_f: Symmetry,
    pub sym_e: Symmetry,
    pub ef: Ramification,
    /// `α^op` over `F`.
    pub sym_fop: Symmetry,
    /// `[E_α : F_{α^op}]`.
    pub degree_op: Degree,
    /// `α ∈ Φ_{r/2}`.
    pub in_phi_half: bool,
    /// `ord(α(t) - 1) = 0`.
    pub ord_zero: bool,
}

/// `(degree, α/F, α/E)`.
pub type ClassKey = (Degree, Symmetry, Symmetry);

/// Whether some tame tower realizes the data.
pub fn realizable(degree: Degree, sym_f: Symmetry, sym_e: Symmetry, ef: Ramification) -> bool {
    use Degree::*;
    use Ramification::*;
    use Symmetry::*;
    match (degree, sym_f, sym_e) {
        (TwoR, Asym, Asym) => ef == Ram,
        (_, Asym, Asym) => true,
        (_, Asym, _) => false,
        // E_α = F_α = E F_{±α}: an unramified E/F cannot produce a ramified step.
        (One, SymR, Asym) => ef == Ram,
        (One, SymUr, Asym) => true,
        (One, s, t) => s == t,
        (_, _, Asym) => false,
        // Biquadratic E_α/F_{±α}: [E_α:F_α] has the type opposite to F_α/F_{±α}.
        (TwoR, SymUr, SymUr) => ef == Ram,
        (TwoR, _, _) => false,
        (TwoUr, SymR, SymR) => true,
        (TwoUr, SymR, SymUr) => ef == Ram,
        (TwoUr, _, _) => false,
    }
}

/// Realizable classes that the tabulated case list omits: `α` symmetric
/// unramified over `F`, asymmetric over `E`, with `E/F` ramified.
pub fn untabulated(degree: Degree, sym_f: Symmetry, sym_e: Symmetry, ef: Ramification) -> bool {
    (degree, sym_f, sym_e, ef)
        == (
            Degree::One,
            Symmetry::SymUr,
            Symmetry::Asym,
            Ramification::Ram,
        )
}

impl RootOrbitConfig {
    pub fn new(
        degree: Degree,
        sym_f: Symmetry,
        sym_e: Symmetry,
        ef: Ramification,
        in_phi_half: bool,
        ord_zero: bool,
    ) -> Result<Self> {
        if !realizable(degree, sym_f, sym_e, ef) {
            return Err(Error::Invalid(format!(
                "no tower realizes ({}, {}, {}, E/F {})",
                degree.name(),
                sym_f.name(),
                sym_e.name(),
                ef.name()
            )));
        }
        let (sym_fop, degree_op) = op_class(sym_f, sym_e, degree)?;
        Ok(RootOrbitConfig {
            degree,
            sym_f,
            sym_e,
            ef,
            sym_fop,
            degree_op,
            in_phi_half,
            ord_zero,
        })
    }

    pub fn key(&self) -> ClassKey {
        (self.degree, self.sym_f, self.sym_e)
    }

    /// Key of the twisted root: `([E_α : F_{α^op}], α^op/F, α/E)`.
    pub fn op_key(&self) -> ClassKey {
        (self.degree_op, self.sym_fop, self.sym_e)
    }

    pub fn with_gates(mut self, in_phi_half: bool, ord_zero: bool) -> Self {
        self.in_phi_half = in_phi_half;
        self.ord_zero = ord_zero;
        self
    }

    pub fn label(&self) -> String {
        format!(
            "[{}] {}/F {}/E E/F {} phi_half={} ord0={}",
            self.degree.name(),
            self.sym_f.name(),
            self.sym_e.name(),
            self.ef.name(),
            self.in_phi_half,
            self.ord_zero
        )
    }
}

/// Consistent configurations of the tabulated case list, with every gate assignment.
pub fn enumerate_configs() -> Vec<RootOrbitConfig> {
    let mut out = Vec::new();
    for degree in Degree::ALL {
        for sym_f in Symmetry::ALL {
            for sym_e in Symmetry::ALL {
                for ef in [Ramification::Unram, Ramification::Ram] {
                    if !realizable(degree, sym_f, sym_e, ef)
                        || untabulated(degree, sym_f, sym_e, ef)
                    {
                        continue;
                    }
                    for in_phi_half in [false, true] {
                        for ord_zero in [false, true] {
                            out.push(
                                RootOrbitConfig::new(
                                    degree,
                                    sym_f,
                                    sym_e,
                                    ef,
                                    in_phi_half,
                                    ord_zero,
                                )
                                .expect("realizable"),
                            );
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Fields that tag residue characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum FieldTag {
    EAlpha,
    FAlpha,
}

impl FieldTag {
    fn name(self) -> &'static str {
        match self {
            FieldTag::EAlpha => "E_α",
            FieldTag::FAlpha => "F_α",
        }
    }
}

/// Basis characters of `S(F)`, each of order two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Basis {
    /// `sgn_{k^×} ∘ α` on the residue field of the tagged field.
    SgnUnits(FieldTag),
    /// `sgn_{k^1} ∘ α` on the norm-one residue group of the tagged field.
    SgnNormOne(FieldTag),
    /// `ω_{E_α/F_α} ∘ ι_{F_α} ∘ α`.
    OmegaQuad,
}

impl Basis {
    pub fn name(self) -> String {
        match self {
            Basis::SgnUnits(t) => format!("sgn_{{k_{{{}}}^×}}∘α", t.name()),
            Basis::SgnNormOne(t) => format!("sgn_{{k_{{{}}}^1}}∘α", t.name()),
            Basis::OmegaQuad => "ω_{E_α/F_α}∘ι_{F_α}∘α".to_string(),
        }
    }
}

/// Formal product of basis characters with exponents mod 2.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct CharContribution(BTreeSet<Basis>);

impl CharContribution {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn basis(b: Basis) -> Self {
        CharContribution(BTreeSet::from([b]))
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Basis> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        CharContribution(self.0.symmetric_difference(&other.0).copied().collect())
    }

    /// Value at a point, given the value of each basis character there.
    pub fn eval(&self, value: impl Fn(Basis) -> i8) -> i8 {
        self.0.iter().map(|&b| value(b)).product()
    }

    fn gated(b: Basis, gate: bool) -> Self {
        if gate {
            Self::basis(b)
        } else {
            Self::trivial()
        }
    }
}

impl fmt::Display for CharContribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("𝟙");
        }
        let parts: Vec<String> = self.0.iter().map(|b| b.name()).collect();
        f.write_str(&parts.join(" · "))
    }
}

/// Formal Prasad contribution: `ω_{E_α/F_α}∘ι∘α` for every symmetric root.
pub fn prasad_formal(sym_f: Symmetry) -> CharContribution {
    if sym_f.is_sym() {
        CharContribution::basis(Basis::OmegaQuad)
    } else {
        CharContribution::trivial()
    }
}

/// Prasad's contribution; `ω_{E_α/F_α}` is trivial when `E ⊂ F_α`.
pub fn prasad_contribution(cfg: &RootOrbitConfig) -> CharContribution {
    if cfg.degree == Degree::One {
        CharContribution::trivial()
    } else {
        prasad_formal(cfg.sym_f)
    }
}

pub fn kaletha_contribution(cfg: &RootOrbitConfig) -> CharContribution {
    use Degree::*;
    use Symmetry::*;
    let units = Basis::SgnUnits(FieldTag::EAlpha);
    let norm_one = Basis::SgnNormOne(FieldTag::EAlpha);
    match (cfg.degree, cfg.sym_f, cfg.sym_e) {
        (TwoR, Asym, _) => CharContribution::gated(units, cfg.in_phi_half),
        (TwoR, SymUr, _) => CharContribution::gated(norm_one, cfg.in_phi_half),
        (One, SymR, Asym) => CharContribution::gated(units, cfg.in_phi_half),
        (TwoUr, SymR, SymUr) => CharContribution::gated(norm_one, cfg.in_phi_half),
        // The rows symmetric over E carry only the toral invariant, trivial
        // for either value of ord_zero.
        _ => CharContribution::trivial(),
    }
}

/// Hakim's contribution. For `E/F` unramified it is trivial on every orbit.
pub fn hakim_contribution(cfg: &RootOrbitConfig) -> CharContribution {
    if cfg.ef == Ramification::Unram {
        return CharContribution::trivial();
    }
    hakim_formal(cfg.sym_f, cfg.in_phi_half)
}

/// Hakim's contribution as a function of the symmetry type alone.
pub fn hakim_formal(sym_f: Symmetry, in_phi_half: bool) -> CharContribution {
    CharContribution::gated(
        Basis::SgnUnits(FieldTag::FAlpha),
        sym_f == Symmetry::SymR && in_phi_half,
    )
}

/// ζ-data contribution, indexed by the twisted root over `F` against `α` over `E`.
pub fn zeta_contribution(cfg: &RootOrbitConfig) -> CharContribution {
    zeta_by_key(cfg.op_key())
}

pub fn zeta_by_key(key: ClassKey) -> CharContribution {
    use Degree::*;
    use Symmetry::*;
    match key {
        (One, SymR, Asym) => CharContribution::basis(Basis::SgnUnits(FieldTag::EAlpha)),
        // λ(E_{±α}/F_{±α})^2 / λ(E_α/F_{α^op}) = -1 makes the ratio ω_{E_α/F_α}.
        (TwoUr, SymR, SymR) | (TwoUr, SymR, SymUr) => CharContribution::basis(Basis::OmegaQuad),
        _ => CharContribution::trivial(),
    }
}

/// Square-class toral invariant of a rank-one symmetric subgroup: the Hilbert symbol `(a, b)`.
pub fn toral_invariant(f_pm: &LocalFieldDesc, a: SquareClass, b: SquareClass) -> Result<i8> {
    if a.is_trivial() {
        return Err(Error::TrivialClass);
    }
    Ok(hilbert_symbol(f_pm, a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Status {
    SymbolicEqual,
    NeedsElementCheck,
    Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Verdict {
    pub product: CharContribution,
    pub zeta: CharContribution,
    pub status: Status,
}

/// Identities that hold on the orbit's tower: `ω_{E_α/F_α}` is trivial when
/// `E_α = F_α`, and `k_{E_α} = k_{F_α}` unless `E_α/F_α` is unramified quadratic.
pub fn rewrite(c: &CharContribution, cfg: &RootOrbitConfig) -> CharContribution {
    let mut out = CharContribution::trivial();
    for b in c.symbols() {
        let r = match b {
            Basis::OmegaQuad if cfg.degree == Degree::One => continue,
            Basis::SgnUnits(FieldTag::FAlpha) if cfg.degree != Degree::TwoUr => {
                Basis::SgnUnits(FieldTag::EAlpha)
            }
            other => other,
        };
        out = out.mul(&CharContribution::basis(r));
    }
    out
}

fn discrepancy(cfg: &RootOrbitConfig) -> CharContribution {
    let product = prasad_contribution(cfg)
        .mul(&kaletha_contribution(cfg))
        .mul(&hakim_contribution(cfg));
    rewrite(&product.mul(&zeta_contribution(cfg)), cfg)
}

pub fn conjecture_check(cfg: &RootOrbitConfig) -> Verdict {
    let product = prasad_contribution(cfg)
        .mul(&kaletha_contribution(cfg))
        .mul(&hakim_contribution(cfg));
    let zeta = zeta_contribution(cfg);
    let d = discrepancy(cfg);
    let status = if d.is_trivial() {
        Status::SymbolicEqual
    } else if discrepancy(&cfg.with_gates(!cfg.in_phi_half, cfg.ord_zero)) != d {
        Status::NeedsElementCheck
    } else {
        Status::Mismatch
    };
    Verdict {
        product,
        zeta,
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic_fields::make_base;
    use Degree::*;
    use Ramification::*;
    use Symmetry::*;

    fn cfg(d: Degree, f: Symmetry, e: Symmetry, ef: Ramification, gate: bool) -> RootOrbitConfig {
        RootOrbitConfig::new(d, f, e, ef, gate, true).unwrap()
    }

    #[test]
    fn enumeration_shape() {
        let all = enumerate_configs();
        assert_eq!(all.len(), 60);
        let keys: BTreeSet<ClassKey> = all.iter().map(|c| c.key()).collect();
        assert_eq!(keys.len(), 10);
        let classes: BTreeSet<(ClassKey, Ramification)> =
            all.iter().map(|c| (c.key(), c.ef)).collect();
        assert_eq!(classes.len(), 15);
        assert!(classes.contains(&((One, Asym, Asym), Ram)));
        assert!(classes.contains(&((One, Asym, Asym), Unram)));
        assert!(classes.contains(&((TwoR, SymUr, SymUr), Ram)));
        assert!(!classes.contains(&((TwoR, SymUr, SymUr), Unram)));
        assert!(all.iter().all(|c| !(c.sym_e.is_sym() && !c.sym_f.is_sym())));
        assert!(all.iter().all(|c| !(c.ef == Unram && c.degree == TwoR)));
    }

    #[test]
    fn prasad_examples() {
        assert!(prasad_contribution(&cfg(One, Asym, Asym, Ram, true)).is_trivial());
        assert_eq!(
            prasad_contribution(&cfg(TwoUr, SymR, SymR, Ram, true)),
            CharContribution::basis(Basis::OmegaQuad)
        );
        assert!(prasad_contribution(&cfg(One, SymUr, SymUr, Unram, true)).is_trivial());
    }

    #[test]
    fn kaletha_examples() {
        assert_eq!(
            kaletha_contribution(&cfg(TwoR, Asym, Asym, Ram, true)),
            CharContribution::basis(Basis::SgnUnits(FieldTag::EAlpha))
        );
        assert!(kaletha_contribution(&cfg(TwoR, Asym, Asym, Ram, false)).is_trivial());
        assert!(kaletha_contribution(&cfg(One, SymUr, Asym, Unram, true)).is_trivial());
        assert_eq!(
            kaletha_contribution(&cfg(TwoUr, SymR, SymUr, Ram, true)),
            CharContribution::basis(Basis::SgnNormOne(FieldTag::EAlpha))
        );
    }

    #[test]
    fn hakim_examples() {
        assert!(hakim_contribution(&cfg(One, Asym, Asym, Ram, true)).is_trivial());
        assert!(hakim_contribution(&cfg(TwoR, SymUr, SymUr, Ram, true)).is_trivial());
        assert_eq!(
            hakim_contribution(&cfg(One, SymR, SymR, Ram, true)),
            CharContribution::basis(Basis::SgnUnits(FieldTag::FAlpha))
        );
    }

    #[test]
    fn zeta_examples() {
        assert!(zeta_by_key((One, Asym, Asym)).is_trivial());
        assert_eq!(
            zeta_by_key((TwoUr, SymR, SymR)),
            CharContribution::basis(Basis::OmegaQuad)
        );
        assert!(zeta_by_key((TwoR, SymR, SymUr)).is_trivial());
        // The twisted key of (2 r, sym ur, sym ur) is (2 ur, sym r, sym ur).
        assert_eq!(
            zeta_contribution(&cfg(TwoR, SymUr, SymUr, Ram, false)),
            CharContribution::basis(Basis::OmegaQuad)
        );
    }

    #[test]
    fn contribution_algebra() {
        let a = CharContribution::basis(Basis::OmegaQuad);
        let b = CharContribution::basis(Basis::SgnUnits(FieldTag::EAlpha));
        assert!(a.mul(&a).is_trivial());
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(
            a.mul(&b).to_string(),
            "sgn_{k_{E_α}^×}∘α · ω_{E_α/F_α}∘ι_{F_α}∘α"
        );
        assert_eq!(CharContribution::trivial().to_string(), "𝟙");
    }

    #[test]
    fn toral_invariant_examples() {
        let f = make_base(5).unwrap();
        assert_eq!(toral_invariant(&f, SquareClass::U, SquareClass::PI), Ok(-1));
        assert_eq!(toral_invariant(&f, SquareClass::U, SquareClass::U), Ok(1));
        assert_eq!(
            toral_invariant(&f, SquareClass::PI, SquareClass::ONE),
            Ok(1)
        );
        assert_eq!(
            toral_invariant(&f, SquareClass::ONE, SquareClass::PI),
            Err(Error::TrivialClass)
        );
    }

    #[test]
    fn never_mismatch() {
        for c in enumerate_configs() {
            let v = conjecture_check(&c);
            assert_ne!(v.status, Status::Mismatch, "{}", c.label());
            if c.ef == Unram {
                assert_eq!(v.status, Status::SymbolicEqual, "{}", c.label());
                assert_eq!(v.product, v.zeta);
            }
        }
    }

    #[test]
    fn gl2_odd_class_needs_elements() {
        let v = conjecture_check(&cfg(TwoUr, SymR, SymUr, Ram, true));
        assert_eq!(v.status, Status::NeedsElementCheck);
        assert!(v.zeta.is_trivial());
    }

    #[test]
    fn sym_r_asym_class_cancels() {
        for gate in [false, true] {
            let v = conjecture_check(&cfg(One, SymR, Asym, Ram, gate));
            assert_eq!(v.status, Status::SymbolicEqual);
        }
    }

    #[test]
    fn untabulated_class_is_consistent() {
        let c = RootOrbitConfig::new(One, SymUr, Asym, Ram, true, true).unwrap();
        assert_eq!(conjecture_check(&c).status, Status::SymbolicEqual);
        assert!(RootOrbitConfig::new(One, SymR, Asym, Unram, true, true).is_err());
    }
}
