//! The shipped fixture corpus: group bundles, semidirect bundles of coset
//! permutation actions, their partial restrictions, the gauge action on
//! `M_2`, and a few deliberately broken inputs.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::abelian::DualAction;
use crate::bundle::{
    group_bundle, partial_action_bundle, semidirect_bundle, FellBundle, GlobalAction, PartialActionData,
};
use crate::coaction::Coaction;
use crate::error::{Error, Result};
use crate::groups::{builtin, cyclic, FiniteGroup};
use crate::linalg::{CMatrix, Subspace, C64};

pub const GROUPS: [&str; 7] = ["c2", "c3", "c4", "v4", "s3", "d4", "q8"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Group,
    Semidirect,
    Partial,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Group, Kind::Semidirect, Kind::Partial];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Semidirect => "semidirect",
            Kind::Partial => "partial",
        }
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "group" => Ok(Kind::Group),
            "semidirect" => Ok(Kind::Semidirect),
            "partial" => Ok(Kind::Partial),
            other => Err(Error::BadParameter(format!("unknown fixture kind '{other}'"))),
        }
    }
}

/// A bundle fixture, written `<group>-<kind>`, e.g. `c2-semidirect`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixtureId {
    pub group: &'static str,
    pub kind: Kind,
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.group, self.kind.as_str())
    }
}

impl FromStr for FixtureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (g, k) = s
            .split_once('-')
            .ok_or_else(|| Error::BadParameter(format!("fixture '{s}' is not of the form <group>-<kind>")))?;
        let group = GROUPS
            .iter()
            .copied()
            .find(|&x| x == g)
            .ok_or_else(|| Error::BadParameter(format!("unknown fixture group '{g}'")))?;
        Ok(FixtureId { group, kind: k.parse()? })
    }
}

/// Every bundle fixture, group-major.
pub fn all_fixtures() -> Vec<FixtureId> {
    GROUPS
        .iter()
        .flat_map(|&g| Kind::ALL.iter().map(move |&kind| FixtureId { group: g, kind }))
        .collect()
}

/// Name of the action target `Ad(diag(1,−1))` of the dual of `C2` on `M_2`.
pub const GAUGE_M2: &str = "gauge-m2";

/// Subgroup whose cosets carry the permutation action.
fn coset_subgroup(name: &str) -> &'static [usize] {
    match name.to_ascii_lowercase().as_str() {
        "c4" => &[0, 2],
        "v4" => &[0, 1],
        "s3" => &[0, 3, 4],
        "d4" | "q8" => &[0, 1, 2, 3],
        _ => &[0],
    }
}

pub fn fixture_group(name: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(builtin(name)?))
}

/// Diagonal algebra `ℂ^X` on the cosets `X = G/H`, with `G` permuting them.
pub fn coset_action(g: Arc<FiniteGroup>) -> Result<GlobalAction> {
    let h = coset_subgroup(g.name());
    let cosets = g.left_cosets(h)?;
    let m = cosets.len();
    let coset_of = |x: usize| cosets.iter().position(|c| c.contains(&x)).expect("cosets partition G");
    let unitaries: Vec<CMatrix> = g
        .elements()
        .map(|t| {
            let mut p = CMatrix::zeros(m, m);
            for (i, c) in cosets.iter().enumerate() {
                p[(coset_of(g.mul(t, c[0])), i)] = C64::new(1.0, 0.0);
            }
            p
        })
        .collect();
    let diag: Vec<CMatrix> = (0..m).map(|i| CMatrix::unit(m, m, i, i)).collect();
    GlobalAction::inner(g, Subspace::span(m, m, &diag)?, &unitaries)
}

/// The ideal `span{E_xx : x ∈ S}` with `S = {0}` on two points, else `{0,1}`.
pub fn partial_data(g: Arc<FiniteGroup>) -> Result<PartialActionData> {
    let action = coset_action(g)?;
    let m = action.coefficient_dim();
    let keep = if m == 2 { 1 } else { 2 };
    let mats: Vec<CMatrix> = (0..keep).map(|i| CMatrix::unit(m, m, i, i)).collect();
    let ideal = Subspace::span(m, m, &mats)?;
    PartialActionData::new(action, ideal)
}

pub fn build(id: FixtureId) -> Result<FellBundle> {
    let g = fixture_group(id.group)?;
    match id.kind {
        Kind::Group => Ok(group_bundle(g)),
        Kind::Semidirect => semidirect_bundle(&coset_action(g)?),
        Kind::Partial => partial_action_bundle(&partial_data(g)?),
    }
}

/// `x ↦ Ad(diag(1,−1))^x` on `M_2`, as an action of the dual of `C2`.
pub fn gauge_m2() -> Result<DualAction> {
    let g = Arc::new(cyclic(2)?);
    let z = CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]);
    DualAction::inner(g, Subspace::full(2, 2), &[CMatrix::identity(2), z])
}

/// `B_e = span{I}`, `B_g = span{E_12}` over `C2`: the involution axiom fails.
pub fn nilpotent_fiber_bundle() -> Result<FellBundle> {
    let g = Arc::new(cyclic(2)?);
    FellBundle::from_spanning_sets(
        g,
        2,
        &[vec![CMatrix::identity(2)], vec![CMatrix::unit(2, 2, 0, 1)]],
    )
}

/// `λ_t ↦ λ_{t⁻¹} ⊗ λ_t` on `C*(C3)`: a *-homomorphism that is not coassociative.
pub fn twisted_translation() -> Result<Coaction> {
    let g = Arc::new(cyclic(3)?);
    let gg = g.clone();
    Coaction::translation_map(g, move |t| gg.inv(t), |t| t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_builds_and_satisfies_the_axioms() {
        for id in all_fixtures() {
            let b = build(id).unwrap_or_else(|e| panic!("{id}: {e}"));
            let cert = b.check_axioms(1e-9);
            assert!(cert.passed(), "{id}: {:?}", cert.failures());
        }
    }

    #[test]
    fn c2_fixtures_have_the_expected_fibers() {
        let semi = build("c2-semidirect".parse().unwrap()).unwrap();
        assert_eq!(semi.fiber_dims(), vec![2, 2]);
        let partial = build("c2-partial".parse().unwrap()).unwrap();
        assert_eq!(partial.fiber_dims(), vec![1, 0]);
        // C4 permutes the two cosets of {0, 2}
        let semi = build("c4-semidirect".parse().unwrap()).unwrap();
        assert_eq!(semi.fiber_dims(), vec![2; 4]);
        let semi = build("s3-semidirect".parse().unwrap()).unwrap();
        assert_eq!(semi.ambient_dim(), 12);
    }

    #[test]
    fn names_round_trip() {
        for id in all_fixtures() {
            assert_eq!(id.to_string().parse::<FixtureId>().unwrap(), id);
        }
        assert!("c5-group".parse::<FixtureId>().is_err());
    }

    #[test]
    fn counterexamples_fail_where_expected() {
        let cert = nilpotent_fiber_bundle().unwrap().check_axioms(1e-9);
        assert!(cert.failures().iter().any(|f| f.contains("involution")));
        assert!(gauge_m2().is_ok());
    }
}
