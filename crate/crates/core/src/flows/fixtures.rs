//! Hand-written diagrams shared by the unit tests.

use super::diagram::FlowDiagram;
use super::format::parse_diagram;

/// Six ∂-saddles, no interior saddle.
pub const SIX_HALVES: &str = "\
singular inf sink
singular a source
singular b source
singular u0 boundary_saddle(1)
singular u1 boundary_saddle(1)
singular v0 boundary_saddle(1)
singular v1 boundary_saddle(1)
singular v2 boundary_saddle(1)
singular v3 boundary_saddle(1)
boundary 0 u0 > u1 <
boundary 1 v0 > v1 < v2 > v3 <
sep u1:0 -> inf:0
sep v1:0 -> inf:1
sep v3:0 -> inf:2
sep a:0 -> u0:0
sep a:1 -> v2:0
sep b:0 -> v0:0
";

/// Interior saddle fed by both sources, each circle with two ∂-saddles.
pub const SADDLE: &str = "\
singular inf sink
singular a source
singular b source
singular x0 saddle(1)
singular u0 boundary_saddle(1)
singular u1 boundary_saddle(1)
singular v0 boundary_saddle(1)
singular v1 boundary_saddle(1)
boundary 0 u0 > u1 <
boundary 1 v0 > v1 <
sep x0:1 -> inf:0
sep x0:3 -> inf:1
sep u1:0 -> inf:3
sep v1:0 -> inf:2
sep a:0 -> x0:2
sep a:1 -> u0:0
sep a:2 -> v0:0
sep b:0 -> x0:0
";

/// One connection from a ∂-saddle to a ∂-saddle on the other circle.
pub const CONNECTION: &str = "\
singular inf sink
singular a source
singular b source
singular u0 boundary_saddle(1)
singular u1 boundary_saddle(1)
singular v0 boundary_saddle(1)
singular v1 boundary_saddle(1)
singular v2 boundary_saddle(1)
singular v3 boundary_saddle(1)
boundary 0 u0 > u1 <
boundary 1 v0 > v1 < v2 > v3 <
sep v3:0 -> u0:0
sep u1:0 -> inf:0
sep v1:0 -> inf:1
sep a:0 -> v2:0
sep b:0 -> v0:0
";

/// A pinching on the second circle.
pub const PINCHING: &str = "\
singular inf sink
singular a source
singular b source
singular u0 boundary_saddle(1)
singular u1 boundary_saddle(1)
singular v0 boundary_saddle(1)
singular v1 boundary_saddle(1)
singular v2 boundary_saddle(2)
boundary 0 u0 > u1 <
boundary 1 v0 > v1 < v2 <
sep u1:0 -> inf:0
sep v1:0 -> inf:1
sep v2:1 -> inf:2
sep a:0 -> u0:0
sep a:1 -> v2:0
sep b:0 -> v0:0
";

pub fn diagram(text: &str) -> FlowDiagram {
    parse_diagram(text).expect("fixture parses")
}

/// Fixture with every line containing `from` replaced by `to`.
pub fn edited(text: &str, edits: &[(&str, &str)]) -> FlowDiagram {
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    for (from, to) in edits {
        let hit = lines.iter().position(|l| l == from).expect("line to edit exists");
        if to.is_empty() {
            lines.remove(hit);
        } else {
            lines[hit] = to.to_string();
        }
    }
    diagram(&lines.join("\n"))
}
