//! Minimisation over products of two stabilizer groups, and the coset and
//! group intersections built on it.

use std::cmp::Ordering;

use super::clifford::clifford_to_z_form;
use super::group::{zassenhaus_intersect, GeneratorSet};
use super::lim::{approx_eq, PauliLim, Scalar};
use super::string::PauliString;
use super::{PauliError, EPS_EQ};

type SplitRow = (PauliString, PauliLim, PauliLim);

/// Forward elimination over the check vectors of `G0 ∪ G1`, carrying each
/// row's split `p0 · p1`. Returns the pivot rows in echelon order and the rows
/// that reduced to the identity string; the latter have `p1 = ±p0` and span
/// the strings the two groups share.
fn eliminate(g0: &GeneratorSet, g1: &GeneratorSet) -> (Vec<SplitRow>, Vec<SplitRow>) {
    let n = g0.n();
    let id = PauliLim::identity(n);
    let mut rows: Vec<SplitRow> = g0
        .iter()
        .map(|g| (*g.string(), *g, id))
        .chain(g1.iter().map(|g| (*g.string(), id, *g)))
        .collect();
    let mut out = Vec::new();
    for col in 0..2 * n {
        let Some(pos) = rows.iter().position(|r| r.0.check_bit(col)) else { continue };
        let p = rows.swap_remove(pos);
        for r in rows.iter_mut() {
            if r.0.check_bit(col) {
                r.0 = r.0.xor(&p.0);
                r.1 = &r.1 * &p.1;
                r.2 = &r.2 * &p.2;
            }
        }
        out.push(p);
        if rows.is_empty() {
            break;
        }
    }
    (out, rows)
}

/// Elements `p ∈ ⟨g0⟩` whose string also occurs in `⟨g1⟩`, each flagged
/// with whether `⟨g1⟩` holds `-p` rather than `p`. They generate the shared
/// strings.
pub type SharedStrings = Vec<(PauliLim, bool)>;

fn shared_from(rest: Vec<SplitRow>) -> SharedStrings {
    rest.into_iter()
        .filter(|(_, p0, _)| !p0.is_identity_string())
        .map(|(_, p0, p1)| (p0, (&p0 * &p1).scalar().re < 0.0))
        .collect()
}

fn validated(g0: &GeneratorSet, g1: &GeneratorSet) -> Result<(GeneratorSet, GeneratorSet), PauliError> {
    if g0.n() != g1.n() {
        return Err(PauliError::DimensionMismatch { left: g0.n(), right: g1.n() });
    }
    Ok((g0.rref()?, g1.rref()?))
}

/// An element of `⟨g0⟩` whose negation lies in `⟨g1⟩`.
pub fn opposite_of(shared: &SharedStrings) -> Option<PauliLim> {
    shared.iter().find(|r| r.1).map(|r| r.0)
}

/// `⟨g0⟩ ∩ ⟨g1⟩`: the shared strings carry one sign character from each
/// group, and the intersection is the kernel of their product.
pub fn intersection_of(n: u32, shared: &SharedStrings) -> GeneratorSet {
    let flip = shared.iter().position(|r| r.1);
    let mut gens = Vec::with_capacity(shared.len());
    for (i, &(p, opposite)) in shared.iter().enumerate() {
        match flip {
            Some(f) if i == f => {}
            Some(f) if opposite => gens.push(&p * &shared[f].0),
            _ => gens.push(p),
        }
    }
    GeneratorSet::from_trusted(n, gens)
}

/// Some `g ∈ ⟨g0⟩` with `-g ∈ ⟨g1⟩`.
pub fn find_opposite(g0: &GeneratorSet, g1: &GeneratorSet) -> Result<Option<PauliLim>, PauliError> {
    let (g0, g1) = validated(g0, g1)?;
    Ok(opposite_of(&PairBasis::analyze(&g0, &g1).1))
}

/// Echelon rows of the combined check matrix of `G0 ∪ G1`, each carrying its split
/// `p0 · p1` with `p0 ∈ ⟨G0⟩` and `p1 ∈ ⟨G1⟩`.
#[derive(Clone, Debug)]
pub struct PairBasis {
    n: u32,
    rows: Vec<SplitRow>,
}

impl PairBasis {
    pub fn new(g0: &GeneratorSet, g1: &GeneratorSet) -> Self {
        Self::analyze(g0, g1).0
    }

    /// The basis together with the strings shared by the two groups, from a
    /// single elimination. The groups must be valid stabilizer groups.
    pub fn analyze(g0: &GeneratorSet, g1: &GeneratorSet) -> (Self, SharedStrings) {
        let (rows, rest) = eliminate(g0, g1);
        (Self { n: g0.n(), rows }, shared_from(rest))
    }

/// `(g0, g1)` minimising the string of `a · g0 · g1`.
    pub fn reduce(&self, a: &PauliLim) -> (PauliLim, PauliLim) {
        let mut h = *a.string();
        let mut g0 = PauliLim::identity(self.n);
        let mut g1 = PauliLim::identity(self.n);
        for (s, p0, p1) in &self.rows {
            let col = s.pivot().expect("non-identity row");
            if h.check_bit(col) {
                h = h.xor(s);
                g0 = &g0 * p0;
                g1 = &g1 * p1;
            }
        }
        (g0, g1)
    }
}

/// Result of [`arg_lex_min`]: `value = a · g0 · g1` exactly.
#[derive(Copy, Clone, Debug)]
pub struct LexMin {
    pub value: PauliLim,
    pub g0: PauliLim,
    pub g1: PauliLim,
}

/// Minimum of `{a · g0 · g1}` with a precomputed basis and opposite element.
pub fn arg_lex_min_with(basis: &PairBasis, opposite: Option<&PauliLim>, a: &PauliLim) -> LexMin {
    let (g0, g1) = basis.reduce(a);
    lex_min_from_reduced(g0, g1, opposite, a)
}

/// Finish [`arg_lex_min_with`] from `basis.reduce(a)`. The reduction depends
/// only on the string of `a`, so callers trying several scalings of one
/// string can share it.
pub fn lex_min_from_reduced(g0: PauliLim, g1: PauliLim, opposite: Option<&PauliLim>, a: &PauliLim) -> LexMin {
    let value = &(a * &g0) * &g1;
    let best = LexMin { value, g0, g1 };
    let Some(op) = opposite else { return best };
    let h0 = &g0 * op;
    let h1 = &(-*op) * &g1;
    let alt = &(a * &h0) * &h1;
    if alt.lex_cmp(&value) == Ordering::Less {
        LexMin { value: alt, g0: h0, g1: h1 }
    } else {
        best
    }
}

pub fn arg_lex_min(g0: &GeneratorSet, g1: &GeneratorSet, a: &PauliLim) -> Result<LexMin, PauliError> {
    a.string().check_len(&PauliString::identity(g0.n()))?;
    if g0.n() != g1.n() {
        return Err(PauliError::DimensionMismatch { left: g0.n(), right: g1.n() });
    }
    let opposite = find_opposite(g0, g1)?;
    Ok(arg_lex_min_with(&PairBasis::new(g0, g1), opposite.as_ref(), a))
}

pub fn lex_min(g0: &GeneratorSet, g1: &GeneratorSet, a: &PauliLim) -> Result<PauliLim, PauliError> {
    Ok(arg_lex_min(g0, g1, a)?.value)
}

/// Generators of `⟨g0⟩ ∩ ⟨g1⟩`, signs included, in RREF.
pub fn intersect_stabilizer_groups(
    g0: &GeneratorSet,
    g1: &GeneratorSet,
) -> Result<GeneratorSet, PauliError> {
    let (g0, g1) = validated(g0, g1)?;
    intersection_of(g0.n(), &PairBasis::analyze(&g0, &g1).1).rref()
}

/// The same intersection computed by mapping `g0` to single-qubit `Z`s with
/// a Clifford circuit and intersecting diagonal groups. Slower; kept as an
/// independent cross-check.
pub fn intersect_stabilizer_groups_z_form(
    g0: &GeneratorSet,
    g1: &GeneratorSet,
) -> Result<GeneratorSet, PauliError> {
    let n = g0.n();
    if n != g1.n() {
        return Err(PauliError::DimensionMismatch { left: n, right: g1.n() });
    }
    if g0.is_empty() || g1.is_empty() {
        return Ok(GeneratorSet::empty(n));
    }
    let g0 = g0.rref()?;
    let (u, z_form) = clifford_to_z_form(&g0)?;
    let h1 = u.conjugate_set(g1)?.rref()?;
    let diag: Vec<PauliLim> = h1.iter().filter(|g| g.string().is_diagonal()).copied().collect();
    let diag = GeneratorSet::new(n, diag)?;
    let inter = zassenhaus_intersect(&z_form, &diag)?;
    let back = u.inverse().conjugate_set(&inter)?;
    back.rref()
}

/// `π0⟨g0⟩ ∩ π1⟨g1⟩` as a representative and a group, or `None` if empty.
pub fn intersect_isomorphism_sets(
    pi0: &PauliLim,
    g0: &GeneratorSet,
    pi1: &PauliLim,
    g1: &GeneratorSet,
) -> Result<Option<(PauliLim, GeneratorSet)>, PauliError> {
    pi1.inverse().checked_mul(pi0)?;
    if g0.n() != g1.n() || g0.n() != pi0.n() {
        return Err(PauliError::DimensionMismatch { left: g0.n(), right: g1.n().max(pi0.n()) });
    }
    let (g0, g1) = validated(g0, g1)?;
    let (basis, shared) = PairBasis::analyze(&g0, &g1);
    match coset_meet_with(&basis, opposite_of(&shared).as_ref(), pi0, pi1) {
        None => Ok(None),
        Some(rep) => Ok(Some((rep, intersection_of(g0.n(), &shared).rref()?))),
    }
}

/// Representative of `π0⟨g0⟩ ∩ π1⟨g1⟩` from a precomputed [`PairBasis`] and
/// opposite element of the pair.
pub fn coset_meet_with(basis: &PairBasis, opposite: Option<&PauliLim>, pi0: &PauliLim, pi1: &PauliLim) -> Option<PauliLim> {
    let a = &pi1.inverse() * pi0;
    let m = arg_lex_min_with(basis, opposite, &a);
    is_unit_identity(&m.value).then(|| pi0 * &m.g0)
}

pub(crate) fn is_unit_identity(a: &PauliLim) -> bool {
    a.is_identity_string() && approx_eq(a.scalar(), Scalar::new(1.0, 0.0), EPS_EQ)
}
