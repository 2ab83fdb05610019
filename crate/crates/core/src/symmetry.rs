//! Parity under the antipodal map `g(x, y, z) = (π−x, π−y, π−z)` and the Courant bound
//! restricted to one parity subspace.
//!
//! `u_{ℓ,m,n} ∘ g = (−1)^{ℓ+m+n+1} u_{ℓ,m,n}` and `ℓ²+m²+n² ≡ ℓ+m+n (mod 2)`, so on the
//! cube a whole eigenspace is even when its eigenvalue is odd and odd when it is even.
//! Nodal domains of an odd eigenfunction come in pairs exchanged by `g`; if `λ` is the
//! `j`-th eigenvalue of its subspace an eigenfunction has at most `2j` domains.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::spectrum::{enumerate_groups, BoxSpec, EigenvalueGroup, ModeTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

pub fn eigenspace_parity(t: &ModeTriple) -> Parity {
    if (t.l + t.m + t.n) % 2 == 1 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `±1` such that `u_t ∘ g = sign · u_t`.
pub fn antipodal_sign(t: &ModeTriple) -> f64 {
    match eigenspace_parity(t) {
        Parity::Even => 1.0,
        Parity::Odd => -1.0,
    }
}

/// Common parity of all modes, or `None` if the eigenspace mixes parities (only possible
/// on non-cubic boxes).
pub fn group_parity(group: &EigenvalueGroup) -> Option<Parity> {
    let first = eigenspace_parity(group.modes.first()?);
    group.modes.iter().all(|t| eigenspace_parity(t) == first).then_some(first)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricIndex {
    pub group: EigenvalueGroup,
    pub parity: Parity,
    /// Position of the eigenvalue inside its parity subspace, counted with multiplicity.
    pub j: u64,
    /// `2j`, the largest possible number of nodal domains.
    pub bound: u64,
}

pub fn symmetric_index(bx: &BoxSpec, value: f64, parity: Parity) -> Result<SymmetricIndex> {
    let groups = enumerate_groups(bx, value)?;
    let Some(group) = groups.iter().find(|g| g.value == value) else {
        return invalid(format!("{value} is not an eigenvalue of {bx:?}"));
    };
    match group_parity(group) {
        Some(p) if p == parity => {}
        Some(p) => return invalid(format!("eigenspace of {value} is {p}, not {parity}")),
        None => return invalid(format!("eigenspace of {value} mixes parities")),
    }
    let below = groups
        .iter()
        .filter(|g| g.value < value)
        .flat_map(|g| &g.modes)
        .filter(|t| eigenspace_parity(t) == parity)
        .count() as u64;
    let j = below + 1;
    Ok(SymmetricIndex { group: group.clone(), parity, j, bound: 2 * j })
}

/// True when the symmetric bound `2j` is below `k_min`, so no eigenfunction of the group
/// can have `k_min` nodal domains. Mixed-parity groups are never excluded.
pub fn symmetry_excludes(bx: &BoxSpec, group: &EigenvalueGroup) -> bool {
    let Some(parity) = group_parity(group) else {
        return false;
    };
    symmetric_index(bx, group.value, parity)
        .map(|s| s.bound < group.k_min)
        .unwrap_or(false)
}
