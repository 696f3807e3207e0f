//! Diagram text format.
//!
//! ```text
//! singular inf sink
//! singular a source
//! singular u0 boundary_saddle(1)
//! boundary 0 u0 > u1 <
//! sep a:0 -> u0:0
//! ```
//!
//! A boundary word lists points in counterclockwise order, each followed by
//! the flow of the next arc: `>` towards the next point, `<` back from it.

use std::fmt::Write as _;

use super::diagram::{
    ArcFlow, BoundaryCircle, FlowDiagram, Location, Separatrix, Singular, SingularKind, SlotRef,
    Tag,
};
use crate::error::FlowError;

fn parse_tag(s: &str) -> Option<Tag> {
    let arg = |prefix: &str| -> Option<u32> {
        s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
    };
    match s {
        "sink" => Some(Tag::Sink),
        "source" => Some(Tag::Source),
        _ => arg("saddle(")
            .map(Tag::Saddle)
            .or_else(|| arg("boundary_saddle(").map(Tag::BoundarySaddle)),
    }
}

fn parse_slot(s: &str) -> Option<SlotRef> {
    let (id, slot) = s.rsplit_once(':')?;
    Some(SlotRef::new(id, slot.parse().ok()?))
}

pub fn parse_diagram(text: &str) -> Result<FlowDiagram, FlowError> {
    let mut d = FlowDiagram::default();
    let mut circles: Vec<(usize, BoundaryCircle)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |msg: String| FlowError::Parse { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        let words: Vec<&str> = content.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["singular", id, kind] => {
                let tag = parse_tag(kind).ok_or_else(|| err(format!("unknown kind `{kind}`")))?;
                d.singulars.push(Singular {
                    id: id.to_string(),
                    kind: SingularKind {
                        tag,
                        location: Location::Interior,
                    },
                });
            }
            ["boundary", index, word @ ..] => {
                let index: usize = index
                    .parse()
                    .map_err(|_| err(format!("bad circle index `{index}`")))?;
                if word.len() % 2 == 1 {
                    return Err(err("boundary word must alternate points and arcs".into()));
                }
                let mut circle = BoundaryCircle {
                    points: Vec::new(),
                    arcs: Vec::new(),
                };
                for pair in word.chunks(2) {
                    circle.points.push(pair[0].to_string());
                    circle.arcs.push(match pair[1] {
                        ">" => ArcFlow::Forward,
                        "<" => ArcFlow::Backward,
                        other => return Err(err(format!("bad arc `{other}`"))),
                    });
                }
                if circles.iter().any(|(i, _)| *i == index) {
                    return Err(err(format!("circle {index} declared twice")));
                }
                circles.push((index, circle));
            }
            ["sep", from, "->", to] => {
                let from = parse_slot(from).ok_or_else(|| err(format!("bad slot `{from}`")))?;
                let to = parse_slot(to).ok_or_else(|| err(format!("bad slot `{to}`")))?;
                d.separatrices.push(Separatrix { from, to });
            }
            _ => return Err(err(format!("cannot parse `{content}`"))),
        }
    }
    circles.sort_by_key(|(i, _)| *i);
    for (pos, (index, circle)) in circles.into_iter().enumerate() {
        if pos != index {
            return Err(FlowError::Parse {
                line: 0,
                msg: format!("circle {pos} is missing"),
            });
        }
        for p in &circle.points {
            let s = d.singulars.iter_mut().find(|s| &s.id == p).ok_or_else(|| FlowError::Parse {
                line: 0,
                msg: format!("boundary point `{p}` is not declared"),
            })?;
            s.kind.location = Location::Boundary(index);
        }
        d.circles.push(circle);
    }
    Ok(d)
}

pub fn write_diagram(d: &FlowDiagram) -> String {
    let mut out = String::new();
    for s in &d.singulars {
        let _ = writeln!(out, "singular {} {}", s.id, s.kind.tag);
    }
    for (i, c) in d.circles.iter().enumerate() {
        let _ = write!(out, "boundary {i}");
        for (p, a) in c.points.iter().zip(&c.arcs) {
            let arrow = match a {
                ArcFlow::Forward => ">",
                ArcFlow::Backward => "<",
            };
            let _ = write!(out, " {p} {arrow}");
        }
        out.push('\n');
    }
    for s in &d.separatrices {
        let _ = writeln!(out, "sep {} -> {}", s.from, s.to);
    }
    out
}
