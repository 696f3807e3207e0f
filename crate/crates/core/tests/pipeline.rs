use std::sync::OnceLock;

use strataflow::flows::{
    build_stratified_poset, enumerate_component, parse_diagram, resolution_moves, write_diagram,
    ComponentSignature, Enumeration,
};
use strataflow::poset::{parse_poset, write_poset};
use strataflow::{
    core, homotopy_equivalent, weak_points, Direction, ElementId, StratifiedPoset,
};

fn component() -> &'static (Enumeration, StratifiedPoset) {
    static C: OnceLock<(Enumeration, StratifiedPoset)> = OnceLock::new();
    C.get_or_init(|| {
        let e = enumerate_component(&ComponentSignature::annulus(), 3).unwrap();
        let sp = build_stratified_poset(&e).unwrap();
        (e, sp)
    })
}

#[test]
fn component_is_homotopy_equivalent_to_its_core() {
    let p = component().1.poset();
    let (c, trace) = core(p);
    assert_eq!(c.len(), 12);
    assert_eq!(trace.steps.len(), 17);
    assert!(homotopy_equivalent(p, &c).unwrap());
}

#[test]
fn core_has_a_weak_point_of_codimension_two() {
    let sp = &component().1;
    let (c, _) = core(sp.poset());
    let weak: Vec<ElementId> = [Direction::Down, Direction::Up]
        .into_iter()
        .flat_map(|d| weak_points(&c, d))
        .collect();
    assert!(!weak.is_empty());
    assert!(weak.iter().any(|id| sp.codim(id).unwrap() == 2));
}

#[test]
fn core_keeps_three_classes_per_codimension() {
    let sp = &component().1;
    let (c, _) = core(sp.poset());
    let mut per = [0usize; 4];
    for id in c.ids() {
        per[sp.codim(id).unwrap() as usize] += 1;
    }
    assert_eq!(per, [3, 3, 3, 3]);
}

#[test]
fn every_class_survives_the_text_format() {
    for class in component().0.iter() {
        let again = parse_diagram(&write_diagram(&class.diagram)).unwrap();
        assert_eq!(again, class.diagram);
    }
}

#[test]
fn generic_classes_are_maximal() {
    let sp = &component().1;
    let p = sp.poset();
    for i in 0..p.len() {
        let maximal = p.upper_covers_idx(i).next().is_none();
        assert_eq!(maximal, sp.codim_idx(i) == 0);
    }
    for class in component().0.classes[&0].iter() {
        assert!(resolution_moves(&class.diagram).is_empty());
    }
}

#[test]
fn component_poset_file_round_trips() {
    let sp = &component().1;
    let text = write_poset(sp.poset(), Some(&sp.codim_map()));
    let doc = parse_poset(&text).unwrap();
    assert_eq!(&doc.poset, sp.poset());
    assert_eq!(doc.stratified().unwrap().codim_map(), sp.codim_map());
    assert_eq!(write_poset(&doc.poset, Some(&doc.codim)), text);
}
