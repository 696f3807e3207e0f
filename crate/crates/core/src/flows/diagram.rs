//! Flow diagrams: singular points, boundary circles and separatrices.
//!
//! The rotation system is carried by slot numbers. Slot `j` of a vertex is
//! its `j`-th separatrix in counterclockwise order. On a boundary point the
//! full rotation is `[previous arc, slot 0, .., slot k-1, next arc]` followed
//! by the hole.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Sink,
    Source,
    /// Interior k-saddle with `2k + 2` separatrices.
    Saddle(u32),
    /// The k/2-∂-saddle: `k` interior separatrices plus two boundary arcs.
    BoundarySaddle(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Location {
    Interior,
    Boundary(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingularKind {
    pub tag: Tag,
    pub location: Location,
}

impl SingularKind {
    pub fn sink() -> Self {
        SingularKind {
            tag: Tag::Sink,
            location: Location::Interior,
        }
    }

    pub fn source() -> Self {
        SingularKind {
            tag: Tag::Source,
            location: Location::Interior,
        }
    }

    pub fn saddle(k: u32) -> Self {
        SingularKind {
            tag: Tag::Saddle(k),
            location: Location::Interior,
        }
    }

    pub fn boundary_saddle(k: u32, circle: usize) -> Self {
        SingularKind {
            tag: Tag::BoundarySaddle(k),
            location: Location::Boundary(circle),
        }
    }

    pub fn is_multi_saddle(&self) -> bool {
        matches!(self.tag, Tag::Saddle(_) | Tag::BoundarySaddle(_))
    }

    /// Number of interior slots fixed by the kind; `None` for sinks and sources.
    pub fn fixed_slots(&self) -> Option<usize> {
        match self.tag {
            Tag::Saddle(k) => Some(2 * k as usize + 2),
            Tag::BoundarySaddle(k) => Some(k as usize),
            Tag::Sink | Tag::Source => None,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Sink => f.write_str("sink"),
            Tag::Source => f.write_str("source"),
            Tag::Saddle(k) => write!(f, "saddle({k})"),
            Tag::BoundarySaddle(k) => write!(f, "boundary_saddle({k})"),
        }
    }
}

/// A multiple of one half, stored as the doubled value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_halves(halves: i64) -> Self {
        HalfInt(halves)
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn halves(self) -> i64 {
        self.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl std::iter::Sum for HalfInt {
    fn sum<I: Iterator<Item = HalfInt>>(iter: I) -> HalfInt {
        iter.fold(HalfInt::default(), Add::add)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Poincaré–Hopf index of a singular point.
pub fn index(kind: &SingularKind) -> HalfInt {
    match kind.tag {
        Tag::Sink | Tag::Source => HalfInt::from_int(1),
        Tag::Saddle(k) => HalfInt::from_int(-(k as i64)),
        Tag::BoundarySaddle(k) => HalfInt::from_halves(-(k as i64)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Surface {
    Annulus,
}

impl Surface {
    pub fn euler_characteristic(self) -> i64 {
        match self {
            Surface::Annulus => 0,
        }
    }

    pub fn boundary_circles(self) -> usize {
        match self {
            Surface::Annulus => 2,
        }
    }
}

/// Index sums of sinks and sources: `(interior, boundary doubled)` each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComponentSignature {
    pub k_minus: (u32, u32),
    pub k_plus: (u32, u32),
    pub surface: Surface,
}

impl ComponentSignature {
    /// One sink, two sources, no boundary sinks or sources, on the annulus.
    pub fn annulus() -> Self {
        ComponentSignature {
            k_minus: (1, 0),
            k_plus: (2, 0),
            surface: Surface::Annulus,
        }
    }

    /// Required sum of multi-saddle indices.
    pub fn multi_saddle_index_target(&self) -> HalfInt {
        let extrema = 2 * (self.k_minus.0 + self.k_plus.0) as i64
            + (self.k_minus.1 + self.k_plus.1) as i64;
        HalfInt::from_halves(2 * self.surface.euler_characteristic() - extrema)
    }
}

impl fmt::Display for ComponentSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{}) {:?}",
            self.k_minus.0, self.k_minus.1, self.k_plus.0, self.k_plus.1, self.surface
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlotDir {
    In,
    Out,
}

impl SlotDir {
    pub fn flip(self) -> SlotDir {
        match self {
            SlotDir::In => SlotDir::Out,
            SlotDir::Out => SlotDir::In,
        }
    }
}

/// Flow along the boundary arc that follows a point in its circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcFlow {
    /// From the point to the next one.
    Forward,
    /// From the next point back to this one.
    Backward,
}

/// Points in counterclockwise order around the hole; `arcs[i]` joins
/// `points[i]` and `points[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryCircle {
    pub points: Vec<String>,
    pub arcs: Vec<ArcFlow>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotRef {
    pub id: String,
    pub slot: usize,
}

impl SlotRef {
    pub fn new(id: impl Into<String>, slot: usize) -> Self {
        SlotRef {
            id: id.into(),
            slot,
        }
    }
}

impl fmt::Display for SlotRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.id, self.slot)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Separatrix {
    pub from: SlotRef,
    pub to: SlotRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Singular {
    pub id: String,
    pub kind: SingularKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FlowDiagram {
    pub singulars: Vec<Singular>,
    pub circles: Vec<BoundaryCircle>,
    pub separatrices: Vec<Separatrix>,
}

impl FlowDiagram {
    pub fn position(&self, id: &str) -> Option<usize> {
        self.singulars.iter().position(|s| s.id == id)
    }

    pub fn kind(&self, id: &str) -> Option<SingularKind> {
        self.singulars.iter().find(|s| s.id == id).map(|s| s.kind)
    }

    pub fn ids_with(&self, tag: impl Fn(Tag) -> bool) -> Vec<&str> {
        self.singulars
            .iter()
            .filter(|s| tag(s.kind.tag))
            .map(|s| s.id.as_str())
            .collect()
    }

    /// Direction of every slot that carries a separatrix end.
    pub fn slot_dirs(&self) -> BTreeMap<SlotRef, Vec<SlotDir>> {
        let mut dirs: BTreeMap<SlotRef, Vec<SlotDir>> = BTreeMap::new();
        for s in &self.separatrices {
            dirs.entry(s.from.clone()).or_default().push(SlotDir::Out);
            dirs.entry(s.to.clone()).or_default().push(SlotDir::In);
        }
        dirs
    }

    pub fn slot_dir(&self, slot: &SlotRef) -> Option<SlotDir> {
        self.separatrices.iter().find_map(|s| {
            if &s.from == slot {
                Some(SlotDir::Out)
            } else if &s.to == slot {
                Some(SlotDir::In)
            } else {
                None
            }
        })
    }

    /// Index of the separatrix entering `slot`.
    pub fn feeder(&self, slot: &SlotRef) -> Option<usize> {
        self.separatrices.iter().position(|s| &s.to == slot)
    }

    /// Sum of the indices of all multi-saddles.
    pub fn multi_saddle_index_sum(&self) -> HalfInt {
        self.singulars
            .iter()
            .filter(|s| s.kind.is_multi_saddle())
            .map(|s| index(&s.kind))
            .sum()
    }

    /// `(q1, q2)`: degeneracy of multi-saddles and the number of separatrices
    /// joining two multi-saddles through the interior.
    pub fn codimension_pair(&self) -> (u32, u32) {
        let q1 = self
            .singulars
            .iter()
            .map(|s| match s.kind.tag {
                Tag::Saddle(k) if k >= 2 => 2 * (k - 1),
                Tag::BoundarySaddle(k) if k >= 2 => k - 1,
                _ => 0,
            })
            .sum();
        let multi = |id: &str| self.kind(id).is_some_and(|k| k.is_multi_saddle());
        let q2 = self
            .separatrices
            .iter()
            .filter(|s| multi(&s.from.id) && multi(&s.to.id))
            .count() as u32;
        (q1, q2)
    }

    pub fn codimension(&self) -> u32 {
        let (q1, q2) = self.codimension_pair();
        q1 + q2
    }

    /// Slots of a circle in counterclockwise order, point by point.
    pub fn circle_slots(&self, circle: usize) -> Vec<SlotRef> {
        let mut out = Vec::new();
        for p in &self.circles[circle].points {
            let k = self.kind(p).and_then(|k| k.fixed_slots()).unwrap_or(0);
            out.extend((0..k).map(|j| SlotRef::new(p.clone(), j)));
        }
        out
    }

    /// Recomputes every arc direction from the slot directions next to it.
    pub fn derive_arcs(&mut self) {
        let dirs = self.slot_dirs();
        for c in 0..self.circles.len() {
            let arcs = self.circles[c]
                .points
                .iter()
                .map(|p| {
                    let k = self.kind(p).and_then(|k| k.fixed_slots()).unwrap_or(0);
                    let last = k
                        .checked_sub(1)
                        .and_then(|j| dirs.get(&SlotRef::new(p.clone(), j)))
                        .and_then(|d| d.first().copied());
                    match last {
                        Some(SlotDir::In) => ArcFlow::Forward,
                        _ => ArcFlow::Backward,
                    }
                })
                .collect();
            self.circles[c].arcs = arcs;
        }
    }

    /// An id starting with `base` that is not yet used.
    pub fn fresh_id(&self, base: &str) -> String {
        if self.position(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}_{i}"))
            .find(|c| self.position(c).is_none())
            .expect("unbounded search")
    }

    /// Renames singular points; ids missing from `names` keep their name.
    pub fn relabel(&self, names: &BTreeMap<String, String>) -> FlowDiagram {
        let rename = |id: &String| names.get(id).cloned().unwrap_or_else(|| id.clone());
        let slot = |s: &SlotRef| SlotRef::new(rename(&s.id), s.slot);
        FlowDiagram {
            singulars: self
                .singulars
                .iter()
                .map(|s| Singular {
                    id: rename(&s.id),
                    kind: s.kind,
                })
                .collect(),
            circles: self
                .circles
                .iter()
                .map(|c| BoundaryCircle {
                    points: c.points.iter().map(rename).collect(),
                    arcs: c.arcs.clone(),
                })
                .collect(),
            separatrices: self
                .separatrices
                .iter()
                .map(|s| Separatrix {
                    from: slot(&s.from),
                    to: slot(&s.to),
                })
                .collect(),
        }
    }

    /// Starts the cyclic word of `circle` at position `by`.
    pub fn rotate_circle(&self, circle: usize, by: usize) -> FlowDiagram {
        let mut d = self.clone();
        let c = &mut d.circles[circle];
        if !c.points.is_empty() {
            let r = by % c.points.len();
            c.points.rotate_left(r);
            c.arcs.rotate_left(r);
        }
        d
    }

    /// Exchanges the two boundary circles.
    pub fn swap_circles(&self) -> FlowDiagram {
        let mut d = self.clone();
        d.circles.reverse();
        let n = d.circles.len();
        for s in &mut d.singulars {
            if let Location::Boundary(c) = s.kind.location {
                s.kind.location = Location::Boundary(n - 1 - c);
            }
        }
        d
    }

    /// Mirror image: every rotation is reversed.
    pub fn reflect(&self) -> FlowDiagram {
        let mut degree: BTreeMap<String, usize> = BTreeMap::new();
        for s in &self.singulars {
            let n = match s.kind.fixed_slots() {
                Some(n) => n,
                None => self
                    .separatrices
                    .iter()
                    .filter(|e| e.from.id == s.id || e.to.id == s.id)
                    .count(),
            };
            degree.insert(s.id.clone(), n);
        }
        let flip = |r: &SlotRef| {
            let n = degree.get(&r.id).copied().unwrap_or(0);
            SlotRef::new(r.id.clone(), n.saturating_sub(1).saturating_sub(r.slot))
        };
        let mut d = self.clone();
        for e in &mut d.separatrices {
            e.from = flip(&e.from);
            e.to = flip(&e.to);
        }
        for c in &mut d.circles {
            c.points.reverse();
        }
        d.derive_arcs();
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::fixtures::{diagram, CONNECTION, PINCHING, SADDLE, SIX_HALVES};

    #[test]
    fn indices() {
        assert_eq!(index(&SingularKind::source()), HalfInt::from_int(1));
        assert_eq!(index(&SingularKind::sink()), HalfInt::from_int(1));
        assert_eq!(index(&SingularKind::saddle(2)), HalfInt::from_int(-2));
        assert_eq!(index(&SingularKind::boundary_saddle(1, 0)), HalfInt::from_halves(-1));
        assert_eq!(index(&SingularKind::boundary_saddle(3, 1)).to_string(), "-3/2");
        assert_eq!(HalfInt::from_halves(-6).to_string(), "-3");
    }

    #[test]
    fn annulus_target_is_minus_three() {
        let sig = ComponentSignature::annulus();
        assert_eq!(sig.multi_saddle_index_target(), HalfInt::from_int(-3));
        for text in [SIX_HALVES, SADDLE, CONNECTION, PINCHING] {
            assert_eq!(diagram(text).multi_saddle_index_sum(), HalfInt::from_int(-3));
        }
    }

    #[test]
    fn codimension_examples() {
        assert_eq!(diagram(SIX_HALVES).codimension_pair(), (0, 0));
        assert_eq!(diagram(SADDLE).codimension_pair(), (0, 0));
        assert_eq!(diagram(CONNECTION).codimension_pair(), (0, 1));
        assert_eq!(diagram(PINCHING).codimension_pair(), (1, 0));
        let mut d = FlowDiagram::default();
        d.singulars.push(Singular {
            id: "t".into(),
            kind: SingularKind::boundary_saddle(3, 0),
        });
        assert_eq!(d.codimension_pair(), (2, 0));
        d.singulars.push(Singular {
            id: "m".into(),
            kind: SingularKind::saddle(2),
        });
        assert_eq!(d.codimension(), 4);
    }

    #[test]
    fn slot_counts() {
        assert_eq!(SingularKind::saddle(1).fixed_slots(), Some(4));
        assert_eq!(SingularKind::saddle(2).fixed_slots(), Some(6));
        assert_eq!(SingularKind::boundary_saddle(2, 0).fixed_slots(), Some(2));
        assert_eq!(SingularKind::source().fixed_slots(), None);
        assert!(!SingularKind::sink().is_multi_saddle());
    }

    #[test]
    fn arcs_follow_slot_directions() {
        let mut d = diagram(SIX_HALVES);
        let expected = d.circles.clone();
        for c in &mut d.circles {
            c.arcs.iter_mut().for_each(|a| *a = ArcFlow::Forward);
        }
        d.derive_arcs();
        assert_eq!(d.circles, expected);
    }

    #[test]
    fn reflection_is_an_involution() {
        for text in [SIX_HALVES, SADDLE, PINCHING] {
            let d = diagram(text);
            assert_eq!(d.reflect().reflect(), d);
        }
    }

    #[test]
    fn fresh_ids_avoid_collisions() {
        let d = diagram(SADDLE);
        assert_eq!(d.fresh_id("y"), "y");
        assert_eq!(d.fresh_id("x0"), "x0_1");
    }
}
