//! Realizability rules for flow diagrams.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::diagram::{ArcFlow, ComponentSignature, FlowDiagram, Location, SlotDir, SlotRef, Tag};
use super::map::{Corner, Map};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Signature,
    Kind,
    Slots,
    Alternation,
    Index,
    BoundaryPattern,
    DistinctSources,
    Acyclicity,
    Embedding,
    Faces,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Signature => "signature",
            Rule::Kind => "kind",
            Rule::Slots => "slots",
            Rule::Alternation => "alternation",
            Rule::Index => "index",
            Rule::BoundaryPattern => "boundary-pattern",
            Rule::DistinctSources => "distinct-sources",
            Rule::Acyclicity => "acyclicity",
            Rule::Embedding => "embedding",
            Rule::Faces => "faces",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub ids: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed_rules(&self) -> BTreeSet<Rule> {
        self.violations.iter().map(|v| v.rule).collect()
    }

    fn push(&mut self, rule: Rule, ids: Vec<String>, detail: impl Into<String>) {
        self.violations.push(Violation {
            rule,
            ids,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{}: {} [{}]", v.rule, v.detail, v.ids.join(" "))?;
        }
        Ok(())
    }
}

/// Admissible singular-point structures on one boundary circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryPattern {
    TwoBoundarySaddles,
    FourBoundarySaddles,
    Pinching,
    ThreeHalves,
}

/// Classifies the cyclic sequence of boundary-saddle multiplicities.
pub fn classify_circle(ks: &[u32]) -> Option<BoundaryPattern> {
    let mut sorted = ks.to_vec();
    sorted.sort_unstable();
    match sorted.as_slice() {
        [1, 1] => Some(BoundaryPattern::TwoBoundarySaddles),
        [1, 1, 1, 1] => Some(BoundaryPattern::FourBoundarySaddles),
        [1, 1, 2] => Some(BoundaryPattern::Pinching),
        [1, 3] => Some(BoundaryPattern::ThreeHalves),
        _ => None,
    }
}

/// Checks every rule and lists all violations.
pub fn validate(d: &FlowDiagram, sig: &ComponentSignature) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_signature(d, sig, &mut report);
    check_kinds(d, &mut report);
    let slots_ok = check_slots(d, &mut report);
    if slots_ok {
        check_alternation(d, &mut report);
    }
    let sum = d.multi_saddle_index_sum();
    let target = sig.multi_saddle_index_target();
    if sum != target {
        let ids = d.ids_with(|t| matches!(t, Tag::Saddle(_) | Tag::BoundarySaddle(_)));
        report.push(
            Rule::Index,
            ids.into_iter().map(String::from).collect(),
            format!("multi-saddle index sum {sum}, expected {target}"),
        );
    }
    check_patterns(d, &mut report);
    check_distinct_sources(d, &mut report);
    check_acyclic(d, &mut report);
    if slots_ok {
        match Map::build(d) {
            Ok(map) => check_map(d, &map, &mut report),
            Err(msg) => report.push(Rule::Embedding, Vec::new(), msg),
        }
    }
    report
}

fn check_signature(d: &FlowDiagram, sig: &ComponentSignature, report: &mut ValidationReport) {
    let sinks = d.ids_with(|t| t == Tag::Sink);
    let sources = d.ids_with(|t| t == Tag::Source);
    if sinks.len() != sig.k_minus.0 as usize {
        report.push(
            Rule::Signature,
            sinks.iter().map(|s| s.to_string()).collect(),
            format!("{} sinks, expected {}", sinks.len(), sig.k_minus.0),
        );
    }
    if sources.len() != sig.k_plus.0 as usize {
        report.push(
            Rule::Signature,
            sources.iter().map(|s| s.to_string()).collect(),
            format!("{} sources, expected {}", sources.len(), sig.k_plus.0),
        );
    }
    if sig.k_minus.1 != 0 || sig.k_plus.1 != 0 {
        report.push(Rule::Signature, Vec::new(), "boundary sinks and sources are not modelled");
    }
    let circles = sig.surface.boundary_circles();
    if d.circles.len() != circles {
        report.push(
            Rule::Signature,
            Vec::new(),
            format!("{} boundary circles, expected {circles}", d.circles.len()),
        );
    }
}

fn check_kinds(d: &FlowDiagram, report: &mut ValidationReport) {
    let mut seen = BTreeSet::new();
    for s in &d.singulars {
        if !seen.insert(s.id.as_str()) {
            report.push(Rule::Kind, vec![s.id.clone()], "duplicate id");
        }
        let ok = match (s.kind.tag, s.kind.location) {
            (Tag::Saddle(0) | Tag::BoundarySaddle(0), _) => false,
            (Tag::BoundarySaddle(_), Location::Boundary(c)) => d
                .circles
                .get(c)
                .is_some_and(|circle| circle.points.iter().filter(|p| **p == s.id).count() == 1),
            (Tag::BoundarySaddle(_), Location::Interior) => false,
            (_, Location::Interior) => true,
            (_, Location::Boundary(_)) => false,
        };
        if !ok {
            report.push(
                Rule::Kind,
                vec![s.id.clone()],
                format!("{} cannot sit at {:?}", s.kind.tag, s.kind.location),
            );
        }
    }
    for (c, circle) in d.circles.iter().enumerate() {
        for p in &circle.points {
            if d.kind(p).map(|k| k.location) != Some(Location::Boundary(c)) {
                report.push(Rule::Kind, vec![p.clone()], format!("listed on circle {c}"));
            }
        }
    }
}

fn check_slots(d: &FlowDiagram, report: &mut ValidationReport) -> bool {
    let before = report.violations.len();
    let dirs = d.slot_dirs();
    let mut used: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (slot, ds) in &dirs {
        used.entry(slot.id.as_str()).or_default().push(slot.slot);
        if ds.len() > 1 {
            report.push(Rule::Slots, vec![slot.id.clone()], format!("slot {slot} used {} times", ds.len()));
        }
        match d.kind(&slot.id).map(|k| k.tag) {
            None => report.push(Rule::Slots, vec![slot.id.clone()], "unknown singular point"),
            Some(Tag::Source) if ds.contains(&SlotDir::In) => {
                report.push(Rule::Slots, vec![slot.id.clone()], "separatrix enters a source")
            }
            Some(Tag::Sink) if ds.contains(&SlotDir::Out) => {
                report.push(Rule::Slots, vec![slot.id.clone()], "separatrix leaves the sink")
            }
            _ => {}
        }
    }
    for s in &d.separatrices {
        if s.from.id == s.to.id {
            report.push(Rule::Slots, vec![s.from.id.clone()], "separatrix is a loop");
        }
    }
    for s in &d.singulars {
        let present = used.get(s.id.as_str()).cloned().unwrap_or_default();
        let expected = s.kind.fixed_slots().unwrap_or(present.len());
        let contiguous = present.len() == expected && present.iter().enumerate().all(|(i, &k)| i == k);
        if !contiguous {
            report.push(
                Rule::Slots,
                vec![s.id.clone()],
                format!("expected slots 0..{expected} each carrying one separatrix"),
            );
        }
    }
    report.violations.len() == before
}

fn check_alternation(d: &FlowDiagram, report: &mut ValidationReport) {
    let dirs = d.slot_dirs();
    let dir = |r: &SlotRef| dirs.get(r).and_then(|v| v.first().copied());
    for s in &d.singulars {
        if let Tag::Saddle(k) = s.kind.tag {
            let n = 2 * k as usize + 2;
            let bad = (0..n).any(|j| {
                dir(&SlotRef::new(s.id.clone(), j)) == dir(&SlotRef::new(s.id.clone(), (j + 1) % n))
            });
            if bad {
                report.push(Rule::Alternation, vec![s.id.clone()], "adjacent separatrices share a direction");
            }
        }
    }
    for (c, circle) in d.circles.iter().enumerate() {
        let slots = d.circle_slots(c);
        let n = slots.len();
        if n % 2 == 1 || (0..n).any(|j| dir(&slots[j]) == dir(&slots[(j + 1) % n])) {
            report.push(
                Rule::Alternation,
                circle.points.clone(),
                format!("slot directions on circle {c} do not alternate"),
            );
        }
        let mut derived = d.clone();
        derived.derive_arcs();
        if derived.circles[c].arcs != circle.arcs {
            report.push(
                Rule::Alternation,
                circle.points.clone(),
                format!("arc directions on circle {c} disagree with the slots"),
            );
        }
    }
}

fn check_patterns(d: &FlowDiagram, report: &mut ValidationReport) {
    for (c, circle) in d.circles.iter().enumerate() {
        let ks: Vec<u32> = circle
            .points
            .iter()
            .map(|p| match d.kind(p).map(|k| k.tag) {
                Some(Tag::BoundarySaddle(k)) => k,
                _ => 0,
            })
            .collect();
        if classify_circle(&ks).is_none() {
            report.push(
                Rule::BoundaryPattern,
                circle.points.clone(),
                format!("circle {c} carries multiplicities {ks:?}"),
            );
        }
    }
}

fn check_distinct_sources(d: &FlowDiagram, report: &mut ValidationReport) {
    let source_of = |slot: &SlotRef| {
        d.feeder(slot)
            .map(|e| &d.separatrices[e].from.id)
            .filter(|id| d.kind(id).map(|k| k.tag) == Some(Tag::Source))
    };
    let mut groups: Vec<(String, Vec<SlotRef>)> = Vec::new();
    for s in &d.singulars {
        if let Tag::Saddle(k) = s.kind.tag {
            groups.push((s.id.clone(), (0..2 * k as usize + 2).map(|j| SlotRef::new(s.id.clone(), j)).collect()));
        }
    }
    for c in 0..d.circles.len() {
        groups.push((format!("circle {c}"), d.circle_slots(c)));
    }
    for (owner, slots) in groups {
        let mut seen = BTreeSet::new();
        for slot in &slots {
            if let Some(src) = source_of(slot) {
                if !seen.insert(src.clone()) {
                    report.push(
                        Rule::DistinctSources,
                        vec![owner.clone(), src.clone()],
                        format!("{owner} is fed twice by {src}"),
                    );
                }
            }
        }
    }
}

fn check_acyclic(d: &FlowDiagram, report: &mut ValidationReport) {
    let n = d.singulars.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in &d.separatrices {
        if let (Some(a), Some(b)) = (d.position(&s.from.id), d.position(&s.to.id)) {
            succ[a].push(b);
        }
    }
    for c in &d.circles {
        let m = c.points.len();
        for i in 0..m {
            if let (Some(a), Some(b)) = (d.position(&c.points[i]), d.position(&c.points[(i + 1) % m])) {
                match c.arcs.get(i) {
                    Some(ArcFlow::Forward) => succ[a].push(b),
                    Some(ArcFlow::Backward) => succ[b].push(a),
                    None => {}
                }
            }
        }
    }
    let mut indeg = vec![0usize; n];
    for targets in &succ {
        for &b in targets {
            indeg[b] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = vec![false; n];
    while let Some(v) = stack.pop() {
        removed[v] = true;
        for &b in &succ[v] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                stack.push(b);
            }
        }
    }
    let cyclic: Vec<String> = (0..n).filter(|&v| !removed[v]).map(|v| d.singulars[v].id.clone()).collect();
    if !cyclic.is_empty() {
        report.push(Rule::Acyclicity, cyclic, "separatrices and arcs form a circuit");
    }
}

fn check_map(d: &FlowDiagram, map: &Map, report: &mut ValidationReport) {
    let faces = map.faces();
    let v = d.singulars.len() as i64;
    let e = (map.darts() / 2) as i64;
    let f = faces.len() as i64;
    if map.component_count() != 1 {
        report.push(Rule::Embedding, Vec::new(), format!("{} connected components", map.component_count()));
    }
    if v - e + f != 2 {
        report.push(Rule::Embedding, Vec::new(), format!("V - E + F = {}", v - e + f));
    }
    let name = |dart: usize| d.singulars[map.vertex[dart]].id.clone();
    let mut holes = 0;
    for face in &faces {
        let corners: Vec<Corner> = face.iter().map(|&y| map.corner(y)).collect();
        let ids: Vec<String> = face.iter().map(|&y| name(y)).collect();
        let hole_count = corners.iter().filter(|&&c| c == Corner::Hole).count();
        if hole_count > 0 {
            holes += 1;
            let on_one_circle = d.circles.iter().any(|c| {
                let mut a = c.points.clone();
                let mut b = ids.clone();
                a.sort();
                b.sort();
                a == b
            });
            if hole_count != corners.len() || !on_one_circle {
                report.push(Rule::Faces, ids, "hole face mixes with the interior");
            }
            continue;
        }
        let count = |k: Corner| corners.iter().filter(|&&c| c == k).count();
        if count(Corner::Source) != 1 || count(Corner::Sink) != 1 || count(Corner::Bad) != 0 {
            report.push(
                Rule::Faces,
                ids,
                format!(
                    "face with {} source and {} sink corners and {} folds",
                    count(Corner::Source),
                    count(Corner::Sink),
                    count(Corner::Bad)
                ),
            );
        }
    }
    if holes != d.circles.len() {
        report.push(Rule::Faces, Vec::new(), format!("{holes} hole faces for {} circles", d.circles.len()));
    }
}
