//! Beat points, weak points, cores and weak reductions of finite T0-spaces.
//!
//! Removing a beat point is a strong deformation retraction, so repeated
//! removal reaches the core (unique up to isomorphism). Removing a weak point
//! only preserves the weak homotopy type; the result of [`weak_reduce`] is not
//! unique, but its order-complex homology is.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::PosetError;
use crate::poset::{isomorphic, Direction, ElementId, FinitePoset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RemovalKind {
    DownBeat,
    UpBeat,
    DownWeak,
    UpWeak,
}

impl RemovalKind {
    pub fn direction(self) -> Direction {
        match self {
            RemovalKind::DownBeat | RemovalKind::DownWeak => Direction::Down,
            RemovalKind::UpBeat | RemovalKind::UpWeak => Direction::Up,
        }
    }
}

impl fmt::Display for RemovalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RemovalKind::DownBeat => "down-beat",
            RemovalKind::UpBeat => "up-beat",
            RemovalKind::DownWeak => "down-weak",
            RemovalKind::UpWeak => "up-weak",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<(ElementId, RemovalKind)>,
    pub initial_size: usize,
    pub final_size: usize,
}

impl ReductionTrace {
    /// Trace lines of the form `removed <name> <kind>`.
    pub fn lines(&self) -> impl Iterator<Item = String> + '_ {
        self.steps
            .iter()
            .map(|(id, kind)| format!("removed {id} {kind}"))
    }
}

fn is_beat_idx(p: &FinitePoset, x: usize, direction: Direction) -> bool {
    let strict = p.relatives_idx(x, direction, true);
    (0..p.len()).any(|z| z != x && p.relatives_idx(z, direction, false) == strict)
}

fn is_weak_idx(p: &FinitePoset, x: usize, direction: Direction) -> bool {
    let strict = p.relatives_idx(x, direction, true);
    // The empty space is not contractible.
    !strict.is_empty() && core_size(&p.induced(&strict)) == 1
}

fn core_size(p: &FinitePoset) -> usize {
    core(p).0.len()
}

fn is_removable(p: &FinitePoset, x: usize, kind: RemovalKind) -> bool {
    match kind {
        RemovalKind::DownBeat | RemovalKind::UpBeat => is_beat_idx(p, x, kind.direction()),
        RemovalKind::DownWeak | RemovalKind::UpWeak => is_weak_idx(p, x, kind.direction()),
    }
}

/// Down beat points (`direction = Down`) or up beat points.
pub fn beat_points(p: &FinitePoset, direction: Direction) -> BTreeSet<ElementId> {
    (0..p.len())
        .filter(|&x| is_beat_idx(p, x, direction))
        .map(|x| p.id(x).clone())
        .collect()
}

/// Points whose strict down-set (or up-set) is contractible.
pub fn weak_points(p: &FinitePoset, direction: Direction) -> BTreeSet<ElementId> {
    (0..p.len())
        .filter(|&x| is_weak_idx(p, x, direction))
        .map(|x| p.id(x).clone())
        .collect()
}

/// The sub-poset on all points except `x`.
pub fn remove_point(p: &FinitePoset, x: &ElementId) -> Result<FinitePoset, PosetError> {
    let i = p.index_of(x)?;
    let keep: Vec<usize> = (0..p.len()).filter(|&j| j != i).collect();
    Ok(p.induced(&keep))
}

/// Removes points of the given kinds until none is left.
///
/// At each step the kinds are tried in order and, within the first kind that
/// has candidates, the point with the least id is removed.
fn reduce_deterministic(p: &FinitePoset, kinds: &[RemovalKind]) -> (FinitePoset, ReductionTrace) {
    let initial_size = p.len();
    let mut current = p.clone();
    let mut steps = Vec::new();
    'outer: loop {
        for &kind in kinds {
            let pick = (0..current.len())
                .filter(|&x| is_removable(&current, x, kind))
                .min_by(|&a, &b| current.id(a).cmp(current.id(b)));
            if let Some(x) = pick {
                let id = current.id(x).clone();
                current = remove_point(&current, &id).expect("point is present");
                steps.push((id, kind));
                continue 'outer;
            }
        }
        break;
    }
    let final_size = current.len();
    (
        current,
        ReductionTrace {
            steps,
            initial_size,
            final_size,
        },
    )
}

/// Stong core: beat points are removed until the space is minimal.
pub fn core(p: &FinitePoset) -> (FinitePoset, ReductionTrace) {
    reduce_deterministic(p, &[RemovalKind::DownBeat, RemovalKind::UpBeat])
}

/// Core computation with a caller-supplied choice among all current beat
/// points. `choose` receives the candidates (sorted by id) and returns the
/// position of the one to remove.
pub fn core_with<F>(p: &FinitePoset, mut choose: F) -> (FinitePoset, ReductionTrace)
where
    F: FnMut(&[(ElementId, RemovalKind)]) -> usize,
{
    let initial_size = p.len();
    let mut current = p.clone();
    let mut steps = Vec::new();
    loop {
        let mut candidates: Vec<(ElementId, RemovalKind)> = Vec::new();
        for x in 0..current.len() {
            if is_beat_idx(&current, x, Direction::Down) {
                candidates.push((current.id(x).clone(), RemovalKind::DownBeat));
            } else if is_beat_idx(&current, x, Direction::Up) {
                candidates.push((current.id(x).clone(), RemovalKind::UpBeat));
            }
        }
        if candidates.is_empty() {
            break;
        }
        candidates.sort();
        let (id, kind) = candidates.swap_remove(choose(&candidates).min(candidates.len() - 1));
        current = remove_point(&current, &id).expect("point is present");
        steps.push((id, kind));
    }
    let final_size = current.len();
    (
        current,
        ReductionTrace {
            steps,
            initial_size,
            final_size,
        },
    )
}

/// Beat points first, then weak points, until neither exists.
pub fn weak_reduce(p: &FinitePoset) -> (FinitePoset, ReductionTrace) {
    reduce_deterministic(
        p,
        &[
            RemovalKind::DownBeat,
            RemovalKind::UpBeat,
            RemovalKind::DownWeak,
            RemovalKind::UpWeak,
        ],
    )
}

/// Stong's criterion: homotopy equivalent iff the cores are isomorphic.
pub fn homotopy_equivalent(p: &FinitePoset, q: &FinitePoset) -> Result<bool, PosetError> {
    let (cp, _) = core(p);
    let (cq, _) = core(q);
    Ok(isomorphic(&cp, &cq)?.is_some())
}

/// Whether the space is contractible (its core is a point).
pub fn is_contractible(p: &FinitePoset) -> bool {
    core_size(p) == 1
}
