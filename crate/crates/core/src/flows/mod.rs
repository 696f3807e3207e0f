//! Gradient flows on the annulus with one sink and two sources, encoded as
//! separatrix diagrams, enumerated up to codimension three and ordered by
//! degeneracy.
//!
//! The sink sits at infinity, so a diagram is a map on the sphere whose two
//! boundary circles bound forbidden faces.

mod diagram;
mod enumerate;
mod format;
mod map;
mod moves;
mod stratify;
mod validate;

#[cfg(test)]
mod fixtures;

pub use diagram::{
    index, ArcFlow, BoundaryCircle, ComponentSignature, FlowDiagram, HalfInt, Location,
    Separatrix, Singular, SingularKind, SlotDir, SlotRef, Surface, Tag,
};
pub use enumerate::{enumerate_component, for_each_candidate, Enumeration, FlowClass, SINK_ID};
pub use format::{parse_diagram, write_diagram};
pub use moves::{move_candidates, resolution_moves};
pub use stratify::{build_stratified_poset, class_names, structure_label};
pub use validate::{classify_circle, validate, BoundaryPattern, Rule, ValidationReport, Violation};

/// Key equal for two diagrams exactly when they differ by relabeling,
/// rotating boundary words, swapping circles or reflecting.
///
/// Diagrams whose slots do not form a map get the empty key.
pub fn canonical_form(d: &FlowDiagram) -> Vec<u8> {
    match map::Map::build(d) {
        Ok(m) => m
            .canonical_code()
            .into_iter()
            .flat_map(u32::to_be_bytes)
            .collect(),
        Err(_) => Vec::new(),
    }
}

/// Codimension pair `(q1, q2)` of a diagram.
pub fn codimension_pair(d: &FlowDiagram) -> (u32, u32) {
    d.codimension_pair()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::fixtures::{diagram, CONNECTION, PINCHING, SADDLE, SIX_HALVES};
    use super::*;

    #[test]
    fn keys_ignore_names() {
        let d = diagram(SADDLE);
        let names: BTreeMap<String, String> = [("a", "b"), ("b", "a"), ("x0", "s"), ("u0", "p")]
            .into_iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect();
        assert_eq!(canonical_form(&d.relabel(&names)), canonical_form(&d));
    }

    #[test]
    fn keys_ignore_mirror_rotation_and_swap() {
        for text in [SIX_HALVES, SADDLE, CONNECTION, PINCHING] {
            let d = diagram(text);
            let key = canonical_form(&d);
            assert!(!key.is_empty());
            assert_eq!(canonical_form(&d.reflect()), key);
            assert_eq!(canonical_form(&d.swap_circles()), key);
            assert_eq!(canonical_form(&d.rotate_circle(1, 1)), key);
        }
    }

    #[test]
    fn codim_zero_classes_have_distinct_keys() {
        let e = enumerate_component(&ComponentSignature::annulus(), 0).unwrap();
        let keys: Vec<&Vec<u8>> = e.iter().map(|c| &c.key).collect();
        assert_eq!(keys.len(), 3);
        assert!(keys[0] != keys[1] && keys[1] != keys[2] && keys[0] != keys[2]);
    }

    #[test]
    fn different_diagrams_have_different_keys() {
        let keys: Vec<Vec<u8>> = [SIX_HALVES, SADDLE, CONNECTION, PINCHING]
            .into_iter()
            .map(|t| canonical_form(&diagram(t)))
            .collect();
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                assert_ne!(keys[i], keys[j]);
            }
        }
    }

    #[test]
    fn broken_maps_get_the_empty_key() {
        let mut d = diagram(SADDLE);
        d.separatrices.pop();
        assert!(canonical_form(&d).is_empty());
    }
}
