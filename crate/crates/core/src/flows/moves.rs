//! Resolution of one degeneracy at a time.

use std::collections::BTreeMap;

use super::diagram::{
    ComponentSignature, FlowDiagram, Location, Separatrix, Singular, SingularKind, SlotDir,
    SlotRef, Tag,
};
use super::enumerate::SINK_ID;
use super::map::derive_sink_rotation;
use super::validate::validate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    /// Clockwise neighbours; new edges go clockwise before the found one.
    Right,
    /// Counterclockwise neighbours; new edges go counterclockwise after it.
    Left,
}

/// Neighbouring slot of `slot` around its saddle, or around its circle for a
/// boundary point.
fn neighbour(d: &FlowDiagram, slot: &SlotRef, side: Side) -> Option<SlotRef> {
    let kind = d.kind(&slot.id)?;
    let ring: Vec<SlotRef> = match (kind.tag, kind.location) {
        (Tag::Saddle(k), _) => (0..2 * k as usize + 2)
            .map(|j| SlotRef::new(slot.id.clone(), j))
            .collect(),
        (Tag::BoundarySaddle(_), Location::Boundary(c)) => d.circle_slots(c),
        _ => return None,
    };
    let i = ring.iter().position(|r| r == slot)?;
    let n = ring.len();
    Some(match side {
        Side::Right => ring[(i + n - 1) % n].clone(),
        Side::Left => ring[(i + 1) % n].clone(),
    })
}

/// Follows in-slots upstream until one is fed by a source; returns the
/// source and the slot position for a new edge next to that feeder.
fn trace(d: &FlowDiagram, start: &SlotRef, side: Side) -> Option<(String, usize)> {
    let mut cur = start.clone();
    for _ in 0..=d.separatrices.len() {
        let sep = &d.separatrices[d.feeder(&cur)?];
        if d.kind(&sep.from.id)?.tag == Tag::Source {
            let pos = match side {
                Side::Right => sep.from.slot,
                Side::Left => sep.from.slot + 1,
            };
            return Some((sep.from.id.clone(), pos));
        }
        cur = neighbour(d, &sep.from, side)?;
    }
    None
}

fn insert_source_edge(d: &mut FlowDiagram, source: &str, pos: usize, to: SlotRef) {
    for s in &mut d.separatrices {
        if s.from.id == source && s.from.slot >= pos {
            s.from.slot += 1;
        }
    }
    d.separatrices.push(Separatrix {
        from: SlotRef::new(source, pos),
        to,
    });
}

fn to_sink(from: SlotRef) -> Separatrix {
    Separatrix {
        from,
        to: SlotRef::new(SINK_ID, usize::MAX),
    }
}

/// Moves every separatrix end on `id` through `remap`.
fn remap_slots(d: &mut FlowDiagram, id: &str, remap: impl Fn(usize) -> SlotRef) {
    for s in &mut d.separatrices {
        for end in [&mut s.from, &mut s.to] {
            if end.id == id {
                *end = remap(end.slot);
            }
        }
    }
}

fn locate(d: &FlowDiagram, id: &str) -> Option<(usize, usize)> {
    d.circles
        .iter()
        .enumerate()
        .find_map(|(c, circle)| circle.points.iter().position(|p| p == id).map(|i| (c, i)))
}

fn add_singular(d: &mut FlowDiagram, id: &str, kind: SingularKind) {
    d.singulars.push(Singular {
        id: id.to_string(),
        kind,
    });
}

fn remove_singular(d: &mut FlowDiagram, id: &str) {
    d.singulars.retain(|s| s.id != id);
}

/// Breaks the connection `e` on one side.
fn break_connection(d: &FlowDiagram, e: usize, side: Side) -> Option<FlowDiagram> {
    let sep = &d.separatrices[e];
    let start = neighbour(d, &sep.from, side)?;
    let (source, pos) = trace(d, &start, side)?;
    let mut out = d.clone();
    let target = out.separatrices[e].to.clone();
    out.separatrices[e] = to_sink(sep.from.clone());
    insert_source_edge(&mut out, &source, pos, target);
    Some(out)
}

/// Replaces boundary point `id` by consecutive points with the given slot
/// groups.
fn split_on_boundary(d: &FlowDiagram, id: &str, groups: &[Vec<usize>]) -> Option<FlowDiagram> {
    let (c, i) = locate(d, id)?;
    let mut out = d.clone();
    let names: Vec<String> = (0..groups.len())
        .map(|g| {
            let name = out.fresh_id(&format!("{id}_{g}"));
            add_singular(&mut out, &name, SingularKind::boundary_saddle(groups[g].len() as u32, c));
            name
        })
        .collect();
    let mut place = BTreeMap::new();
    for (g, slots) in groups.iter().enumerate() {
        for (j, &s) in slots.iter().enumerate() {
            place.insert(s, SlotRef::new(names[g].clone(), j));
        }
    }
    remap_slots(&mut out, id, |s| place[&s].clone());
    remove_singular(&mut out, id);
    let circle = &mut out.circles[c];
    circle.points.splice(i..=i, names);
    Some(out)
}

/// Moves a pinching off the boundary into an interior saddle.
fn detach_pinching(d: &FlowDiagram, id: &str) -> Option<FlowDiagram> {
    let (c, i) = locate(d, id)?;
    let points = &d.circles[c].points;
    let m = points.len();
    if m < 3 {
        return None;
    }
    let prev = &points[(i + m - 1) % m];
    let next = &points[(i + 1) % m];
    let s0 = d.slot_dir(&SlotRef::new(id, 0))?;
    let s1 = d.slot_dir(&SlotRef::new(id, 1))?;
    let prev_k = d.kind(prev)?.fixed_slots()?;
    let prev_last = SlotRef::new(prev.clone(), prev_k.checked_sub(1)?);
    let next_first = SlotRef::new(next.clone(), 0);
    let mut out = d.clone();
    let sigma = out.fresh_id(&format!("{id}_s"));
    add_singular(&mut out, &sigma, SingularKind::saddle(1));
    remap_slots(&mut out, id, |s| SlotRef::new(sigma.clone(), s));
    remove_singular(&mut out, id);
    out.circles[c].points.remove(i);
    // Slot 2 faces the next point, slot 3 the previous one.
    let (t_y, t_x) = (s0, s1);
    let (in_slot, out_slot, start, side) = if t_x == SlotDir::In {
        (3, 2, prev_last, Side::Right)
    } else {
        debug_assert_eq!(t_y, SlotDir::In);
        (2, 3, next_first, Side::Left)
    };
    let (source, pos) = trace(d, &start, side)?;
    out.separatrices.push(to_sink(SlotRef::new(sigma.clone(), out_slot)));
    insert_source_edge(&mut out, &source, pos, SlotRef::new(sigma, in_slot));
    Some(out)
}

/// Splits a 3/2-∂-saddle into a ∂-saddle and an interior saddle joined by a
/// connection.
fn split_three_halves_inward(d: &FlowDiagram, id: &str) -> Option<FlowDiagram> {
    let (c, i) = locate(d, id)?;
    let s0 = d.slot_dir(&SlotRef::new(id, 0))?;
    let mut out = d.clone();
    let q = out.fresh_id(&format!("{id}_q"));
    let sigma = out.fresh_id(&format!("{id}_s"));
    add_singular(&mut out, &q, SingularKind::boundary_saddle(1, c));
    add_singular(&mut out, &sigma, SingularKind::saddle(1));
    remap_slots(&mut out, id, |s| SlotRef::new(sigma.clone(), s));
    remove_singular(&mut out, id);
    out.circles[c].points[i] = q.clone();
    let (qs, ts) = (SlotRef::new(q, 0), SlotRef::new(sigma, 3));
    out.separatrices.push(match s0 {
        SlotDir::Out => Separatrix { from: qs, to: ts },
        SlotDir::In => Separatrix { from: ts, to: qs },
    });
    Some(out)
}

pub(crate) fn finish(mut d: FlowDiagram, sig: &ComponentSignature, codim: u32) -> Option<FlowDiagram> {
    d.derive_arcs();
    derive_sink_rotation(&mut d).ok()?;
    (validate(&d, sig).passed() && d.codimension() + 1 == codim).then_some(d)
}

/// Every diagram reached by resolving exactly one degeneracy, one per class,
/// sorted by canonical key.
pub fn resolution_moves(d: &FlowDiagram) -> Vec<FlowDiagram> {
    let sig = ComponentSignature::annulus();
    let codim = d.codimension();
    let mut by_key = BTreeMap::new();
    for (_, out) in move_candidates(d) {
        if let Some(out) = out.and_then(|x| finish(x, &sig, codim)) {
            by_key.entry(super::canonical_form(&out)).or_insert(out);
        }
    }
    by_key.into_values().collect()
}

/// Raw move outputs before validation, named by the move that made them.
pub fn move_candidates(d: &FlowDiagram) -> Vec<(String, Option<FlowDiagram>)> {
    let multi = |id: &str| d.kind(id).is_some_and(|k| k.is_multi_saddle());
    let mut raw = Vec::new();
    for (e, s) in d.separatrices.iter().enumerate() {
        if multi(&s.from.id) && multi(&s.to.id) {
            for side in [Side::Right, Side::Left] {
                raw.push((format!("break {} -> {} {side:?}", s.from, s.to), break_connection(d, e, side)));
            }
        }
    }
    for s in &d.singulars {
        match s.kind.tag {
            Tag::BoundarySaddle(2) => {
                raw.push((format!("split {}", s.id), split_on_boundary(d, &s.id, &[vec![0], vec![1]])));
                raw.push((format!("detach {}", s.id), detach_pinching(d, &s.id)));
            }
            Tag::BoundarySaddle(3) => {
                raw.push((format!("split {} 1+2", s.id), split_on_boundary(d, &s.id, &[vec![0], vec![1, 2]])));
                raw.push((format!("split {} 2+1", s.id), split_on_boundary(d, &s.id, &[vec![0, 1], vec![2]])));
                raw.push((format!("inward {}", s.id), split_three_halves_inward(d, &s.id)));
            }
            _ => {}
        }
    }
    raw
}
