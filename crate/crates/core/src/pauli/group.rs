use std::fmt;

use serde::{Deserialize, Serialize};

use super::lim::{approx_eq, PauliLim, Scalar};
use super::string::{mask, PauliString};
use super::{PauliError, EPS_EQ};

/// Generators of a subgroup of the Pauli group; every generator has scalar `±1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSet {
    n: u32,
    gens: Vec<PauliLim>,
}

fn is_sign(c: Scalar) -> bool {
    approx_eq(c, Scalar::new(1.0, 0.0), EPS_EQ) || approx_eq(c, Scalar::new(-1.0, 0.0), EPS_EQ)
}

/// Snap a `±1` scalar to the exact value.
fn snap_sign(g: &PauliLim) -> PauliLim {
    let s = if g.scalar().re > 0.0 { 1.0 } else { -1.0 };
    g.with_scalar(Scalar::new(s, 0.0))
}

impl GeneratorSet {
    pub fn empty(n: u32) -> Self {
        Self { n, gens: Vec::new() }
    }

    pub fn new(n: u32, gens: Vec<PauliLim>) -> Result<Self, PauliError> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if g.n() != n {
                return Err(PauliError::DimensionMismatch { left: n, right: g.n() });
            }
            if !is_sign(g.scalar()) {
                return Err(PauliError::InvalidScalar(g.to_string()));
            }
            out.push(snap_sign(&g));
        }
        Ok(Self { n, gens: out })
    }

    /// Parse generators from their debug form, e.g. `["XX", "-ZZ"]`.
    pub fn parse(n: u32, gens: &[&str]) -> Result<Self, PauliError> {
        let lims = gens.iter().map(|s| s.parse()).collect::<Result<Vec<PauliLim>, _>>()?;
        Self::new(n, lims)
    }

    pub(crate) fn from_trusted(n: u32, gens: Vec<PauliLim>) -> Self {
        Self { n, gens: gens.iter().map(snap_sign).collect() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[PauliLim] {
        &self.gens
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PauliLim> {
        self.gens.iter()
    }

    pub fn push(&mut self, g: PauliLim) -> Result<(), PauliError> {
        if g.n() != self.n {
            return Err(PauliError::DimensionMismatch { left: self.n, right: g.n() });
        }
        if !is_sign(g.scalar()) {
            return Err(PauliError::InvalidScalar(g.to_string()));
        }
        self.gens.push(snap_sign(&g));
        Ok(())
    }

    /// Reduced row echelon form by Gauss-Jordan elimination on the check
    /// matrix, with phases carried by exact multiplication. Identity rows are
    /// dropped; a row reducing to `-I` (or `±iI`) is an error.
    pub fn rref(&self) -> Result<GeneratorSet, PauliError> {
        let mut rows: Vec<PauliLim> = self.gens.clone();
        let mut out: Vec<PauliLim> = Vec::new();
        for col in 0..2 * self.n {
            let Some(pos) = rows.iter().position(|r| r.string().check_bit(col)) else {
                continue;
            };
            let pivot = rows.swap_remove(pos);
            for r in rows.iter_mut().chain(out.iter_mut()) {
                if r.string().check_bit(col) {
                    *r = &*r * &pivot;
                }
            }
            out.push(pivot);
            if rows.is_empty() {
                break;
            }
        }
        for r in &rows {
            debug_assert!(r.is_identity_string());
            if !approx_eq(r.scalar(), Scalar::new(1.0, 0.0), EPS_EQ) {
                return Err(PauliError::NotStabilizerGroup(format!("generated {r}")));
            }
        }
        for (i, r) in out.iter().enumerate() {
            if !is_sign(r.scalar()) || out[..i].iter().any(|s| !s.commutes_with(r)) {
                return Err(PauliError::NotStabilizerGroup(format!(
                    "non-commuting generators around {r}"
                )));
            }
        }
        Ok(GeneratorSet::from_trusted(self.n, out))
    }

    /// Independent generating set of the same group.
    pub fn reduce_independent(&self) -> Result<GeneratorSet, PauliError> {
        self.rref()
    }

    /// Pivot columns of an RREF set, in row order.
    pub fn pivots(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.string().pivot().unwrap_or(u32::MAX)).collect()
    }

    /// Minimise the string of `a·h` over `h` in the group. Returns the exact
    /// product and the `h` used.
    pub fn division_remainder(&self, a: &PauliLim) -> Result<(PauliLim, PauliLim), PauliError> {
        a.string().check_len(&PauliString::identity(self.n))?;
        let reduced = self.rref()?;
        Ok(reduced.division_remainder_rref(a))
    }

    /// As [`division_remainder`](Self::division_remainder) for a set already in RREF.
    pub fn division_remainder_rref(&self, a: &PauliLim) -> (PauliLim, PauliLim) {
        let mut h = *a;
        let mut used = PauliLim::identity(self.n);
        for row in &self.gens {
            let col = row.string().pivot().expect("RREF rows are non-identity");
            if h.string().check_bit(col) {
                h = &h * row;
                used = &used * row;
            }
        }
        (h, used)
    }

    /// Exact membership, phase included.
    pub fn contains(&self, a: &PauliLim) -> Result<bool, PauliError> {
        let (rem, _) = self.division_remainder(a)?;
        Ok(rem.is_identity_string() && approx_eq(rem.scalar(), Scalar::new(1.0, 0.0), EPS_EQ))
    }

    /// Membership of the string, ignoring the scalar.
    pub fn contains_mod_phase(&self, a: &PauliLim) -> Result<bool, PauliError> {
        let (rem, _) = self.division_remainder(a)?;
        Ok(rem.is_identity_string())
    }

    pub fn is_diagonal(&self) -> bool {
        self.gens.iter().all(|g| g.string().is_diagonal())
    }

    /// Conjugate every generator by a fixed LIM: `{B g B⁻¹}`.
    pub fn conjugated_by(&self, b: &PauliLim) -> GeneratorSet {
        let inv = b.inverse();
        GeneratorSet::from_trusted(self.n, self.gens.iter().map(|g| &(b * g) * &inv).collect())
    }

    /// `I ⊗ g` for every generator, with `top` qubits added above.
    pub fn lift(&self, extra: u32) -> GeneratorSet {
        let id = PauliLim::identity(extra);
        GeneratorSet::from_trusted(self.n + extra, self.gens.iter().map(|g| id.kron(g)).collect())
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

/// Signed diagonal Paulis `±Z^a` packed as `a | sign << 127`.
fn pack_diag(g: &PauliLim) -> u128 {
    let sign = if g.scalar().re < 0.0 { 1u128 << 127 } else { 0 };
    g.string().z_bits() | sign
}

fn unpack_diag(n: u32, v: u128) -> PauliLim {
    let s = if v >> 127 == 1 { -1.0 } else { 1.0 };
    PauliLim::new(Scalar::new(s, 0.0), PauliString::from_bits(n, 0, v & mask(n)))
}

/// Intersection of two groups of signed diagonal Paulis, which behave as
/// GF(2) spaces with one extra sign coordinate.
pub fn zassenhaus_intersect(a: &GeneratorSet, b: &GeneratorSet) -> Result<GeneratorSet, PauliError> {
    if a.n != b.n {
        return Err(PauliError::DimensionMismatch { left: a.n, right: b.n });
    }
    if !a.is_diagonal() || !b.is_diagonal() {
        return Err(PauliError::NotDiagonal);
    }
    if a.n >= 127 {
        return Err(PauliError::TooManyQubits(a.n));
    }
    // Rows (left, right): (u, u) for u in a, (w, 0) for w in b.
    let mut rows: Vec<(u128, u128)> = a
        .gens
        .iter()
        .map(|g| (pack_diag(g), pack_diag(g)))
        .chain(b.gens.iter().map(|g| (pack_diag(g), 0)))
        .collect();
    let mut echelon: Vec<(u128, u128)> = Vec::new();
    for half in 0..2 {
        for bit in (0..128).rev() {
            let has = |r: &(u128, u128)| {
                let word = if half == 0 { r.0 } else { r.1 };
                word >> bit & 1 == 1
            };
            let Some(pos) = rows.iter().position(has) else { continue };
            let pivot = rows.swap_remove(pos);
            for r in rows.iter_mut() {
                if has(r) {
                    r.0 ^= pivot.0;
                    r.1 ^= pivot.1;
                }
            }
            echelon.push(pivot);
        }
    }
    let inter: Vec<PauliLim> = echelon
        .iter()
        .filter(|r| r.0 == 0 && r.1 != 0)
        .map(|r| unpack_diag(a.n, r.1))
        .collect();
    GeneratorSet::from_trusted(a.n, inter).rref()
}
