//! Exhaustive generation of flow diagrams up to a codimension bound.

use std::collections::BTreeMap;

use super::diagram::{
    BoundaryCircle, ComponentSignature, FlowDiagram, Singular, SingularKind, SlotDir, SlotRef,
    Separatrix,
};
use super::map::derive_sink_rotation;
use super::validate::{validate, ValidationReport};
use crate::error::FlowError;

pub const SINK_ID: &str = "inf";

/// One topological equivalence class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowClass {
    pub diagram: FlowDiagram,
    pub key: Vec<u8>,
    pub q: (u32, u32),
}

impl FlowClass {
    pub fn new(diagram: FlowDiagram) -> Self {
        let key = super::canonical_form(&diagram);
        let q = diagram.codimension_pair();
        FlowClass { diagram, key, q }
    }

    pub fn codimension(&self) -> u32 {
        self.q.0 + self.q.1
    }
}

/// Classes grouped by codimension, each group sorted by canonical key.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Enumeration {
    pub classes: BTreeMap<u32, Vec<FlowClass>>,
    pub candidates: usize,
    pub valid_candidates: usize,
}

impl Enumeration {
    pub fn total(&self) -> usize {
        self.classes.values().map(Vec::len).sum()
    }

    pub fn strata_sizes(&self) -> Vec<usize> {
        let top = self.classes.keys().max().copied().unwrap_or(0);
        (0..=top).map(|q| self.classes.get(&q).map_or(0, Vec::len)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &FlowClass> {
        self.classes.values().flatten()
    }
}

fn check_signature(sig: &ComponentSignature) -> Result<(), FlowError> {
    if *sig != ComponentSignature::annulus() {
        return Err(FlowError::UnsupportedSignature(sig.to_string()));
    }
    Ok(())
}

/// All classes of codimension at most `max_codim`.
pub fn enumerate_component(sig: &ComponentSignature, max_codim: u32) -> Result<Enumeration, FlowError> {
    let mut found: BTreeMap<Vec<u8>, FlowClass> = BTreeMap::new();
    let mut out = Enumeration::default();
    for_each_candidate(sig, max_codim, |d, report| {
        out.candidates += 1;
        if report.passed() {
            out.valid_candidates += 1;
            let class = FlowClass::new(d.clone());
            found.entry(class.key.clone()).or_insert(class);
        }
    })?;
    for (_, class) in found {
        out.classes.entry(class.codimension()).or_default().push(class);
    }
    Ok(out)
}

/// Calls `visit` on every generated candidate with its validation report.
pub fn for_each_candidate<F>(sig: &ComponentSignature, max_codim: u32, mut visit: F) -> Result<(), FlowError>
where
    F: FnMut(&FlowDiagram, &ValidationReport),
{
    check_signature(sig)?;
    let target = -sig.multi_saddle_index_target().halves();
    let circles = sig.surface.boundary_circles();
    // Each circle needs an even positive slot total; interior saddles take the rest.
    for totals in slot_totals(circles, target as u32) {
        let boundary_halves: u32 = totals.iter().sum();
        let interior = (target as u32 - boundary_halves) / 2;
        for saddles in partitions(interior) {
            let words: Vec<Vec<Word>> = totals.iter().map(|&t| circle_words(t)).collect();
            for choice in product(&words) {
                let base = skeleton(&choice, &saddles);
                if base.codimension_pair().0 > max_codim {
                    continue;
                }
                wire(sig, &base, &choice, &saddles, max_codim, &mut visit);
            }
        }
    }
    Ok(())
}

/// Slot totals per circle: even, positive, halves summing to at most `target`
/// with an even remainder for the interior saddles.
fn slot_totals(circles: usize, target: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..circles {
        let mut next = Vec::new();
        for prefix in &out {
            let used: u32 = prefix.iter().sum();
            let mut t = 2;
            while used + t <= target {
                let mut p: Vec<u32> = prefix.clone();
                p.push(t);
                next.push(p);
                t += 2;
            }
        }
        out = next;
    }
    out.retain(|p| (target - p.iter().sum::<u32>()).is_multiple_of(2));
    out
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Multiplicities around a circle and the direction of its first slot.
#[derive(Clone, Debug)]
struct Word {
    ks: Vec<u32>,
    first: SlotDir,
}

fn circle_words(total: u32) -> Vec<Word> {
    fn compositions(n: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in 1..=n {
            for mut rest in compositions(n - k) {
                rest.insert(0, k);
                out.push(rest);
            }
        }
        out
    }
    compositions(total)
        .into_iter()
        .flat_map(|ks| {
            [SlotDir::In, SlotDir::Out].map(|first| Word {
                ks: ks.clone(),
                first,
            })
        })
        .collect()
}

fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|p| {
                list.iter().map(move |x| {
                    let mut q = p.clone();
                    q.push(x.clone());
                    q
                })
            })
            .collect();
    }
    out
}

fn point_id(circle: usize, i: usize) -> String {
    format!("{}{i}", if circle == 0 { 'u' } else { 'v' })
}

/// Singular points and circles without separatrices.
fn skeleton(words: &[Word], saddles: &[u32]) -> FlowDiagram {
    let mut d = FlowDiagram::default();
    d.singulars.push(Singular {
        id: SINK_ID.to_string(),
        kind: SingularKind::sink(),
    });
    for id in ["a", "b"] {
        d.singulars.push(Singular {
            id: id.to_string(),
            kind: SingularKind::source(),
        });
    }
    for (i, &k) in saddles.iter().enumerate() {
        d.singulars.push(Singular {
            id: format!("x{i}"),
            kind: SingularKind::saddle(k),
        });
    }
    for (c, w) in words.iter().enumerate() {
        let mut points = Vec::new();
        for (i, &k) in w.ks.iter().enumerate() {
            let id = point_id(c, i);
            d.singulars.push(Singular {
                id: id.clone(),
                kind: SingularKind::boundary_saddle(k, c),
            });
            points.push(id);
        }
        let arcs = Vec::with_capacity(points.len());
        d.circles.push(BoundaryCircle { points, arcs });
    }
    d
}

/// In and out slots of all multi-saddles, in a fixed order.
fn multi_slots(words: &[Word], saddles: &[u32]) -> (Vec<SlotRef>, Vec<SlotRef>) {
    let mut ins = Vec::new();
    let mut outs = Vec::new();
    for (i, &k) in saddles.iter().enumerate() {
        for j in 0..2 * k as usize + 2 {
            let r = SlotRef::new(format!("x{i}"), j);
            if j % 2 == 0 { ins.push(r) } else { outs.push(r) }
        }
    }
    for (c, w) in words.iter().enumerate() {
        let mut dir = w.first;
        for (i, &k) in w.ks.iter().enumerate() {
            for j in 0..k as usize {
                let r = SlotRef::new(point_id(c, i), j);
                match dir {
                    SlotDir::In => ins.push(r),
                    SlotDir::Out => outs.push(r),
                }
                dir = dir.flip();
            }
        }
    }
    (ins, outs)
}

/// Partial injections from out slots to in slots with at most `limit` pairs.
fn connections(outs: &[SlotRef], ins: &[SlotRef], limit: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(
        o: usize,
        outs: &[SlotRef],
        ins: &[SlotRef],
        limit: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if o == outs.len() {
            out.push(cur.clone());
            return;
        }
        go(o + 1, outs, ins, limit, used, cur, out);
        if cur.len() == limit {
            return;
        }
        for i in 0..ins.len() {
            if used[i] || ins[i].id == outs[o].id {
                continue;
            }
            used[i] = true;
            cur.push((o, i));
            go(o + 1, outs, ins, limit, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    go(0, outs, ins, limit, &mut vec![false; ins.len()], &mut Vec::new(), &mut out);
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Cyclic orders of `items`, each listed once with the first item in front.
fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    match items.split_first() {
        None => vec![Vec::new()],
        Some((&first, rest)) => permutations(rest)
            .into_iter()
            .map(|mut p| {
                p.insert(0, first);
                p
            })
            .collect(),
    }
}

fn wire<F>(
    sig: &ComponentSignature,
    base: &FlowDiagram,
    words: &[Word],
    saddles: &[u32],
    max_codim: u32,
    visit: &mut F,
) where
    F: FnMut(&FlowDiagram, &ValidationReport),
{
    let (ins, outs) = multi_slots(words, saddles);
    let q1 = base.codimension_pair().0;
    let limit = (max_codim - q1) as usize;
    for conns in connections(&outs, &ins, limit) {
        let mut fed = vec![false; ins.len()];
        let mut sent = vec![false; outs.len()];
        let mut seps = Vec::new();
        for &(o, i) in &conns {
            fed[i] = true;
            sent[o] = true;
            seps.push(Separatrix {
                from: outs[o].clone(),
                to: ins[i].clone(),
            });
        }
        for (o, r) in outs.iter().enumerate() {
            if !sent[o] {
                seps.push(Separatrix {
                    from: r.clone(),
                    to: SlotRef::new(SINK_ID, 0),
                });
            }
        }
        let open: Vec<usize> = (0..ins.len()).filter(|&i| !fed[i]).collect();
        for mask in 0..1u32 << open.len() {
            let by_source: [Vec<usize>; 2] = [0, 1].map(|s| {
                open.iter()
                    .enumerate()
                    .filter(|&(bit, _)| (mask >> bit) & 1 == s)
                    .map(|(_, &i)| i)
                    .collect()
            });
            for order_a in cyclic_orders(&by_source[0]) {
                for order_b in cyclic_orders(&by_source[1]) {
                    let mut d = base.clone();
                    d.separatrices = seps.clone();
                    for (src, order) in [("a", &order_a), ("b", &order_b)] {
                        for (slot, &i) in order.iter().enumerate() {
                            d.separatrices.push(Separatrix {
                                from: SlotRef::new(src, slot),
                                to: ins[i].clone(),
                            });
                        }
                    }
                    d.derive_arcs();
                    // On failure the provisional order stays and validation rejects it.
                    let _ = derive_sink_rotation(&mut d);
                    let report = validate(&d, sig);
                    visit(&d, &report);
                }
            }
        }
    }
}
