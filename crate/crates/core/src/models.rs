//! Small finite spaces used as reference models.

use crate::poset::{Element, ElementId, FinitePoset};

/// Chain `e0 < e1 < ... < e{n-1}`.
pub fn chain(n: usize) -> FinitePoset {
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let covers: Vec<(&str, &str)> = refs.windows(2).map(|w| (w[0], w[1])).collect();
    FinitePoset::from_names(&refs, &covers).expect("chain is a poset")
}

/// Minimal finite model of the circle: `a, b < c, d`.
pub fn circle_model() -> FinitePoset {
    FinitePoset::from_names(
        &["a", "b", "c", "d"],
        &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .expect("circle model is a poset")
}

/// Minimal finite model of the 2-sphere: `a, b < c, d < e, f` with every
/// cross relation between consecutive levels.
pub fn sphere_model() -> FinitePoset {
    FinitePoset::from_names(
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "e"),
            ("c", "f"),
            ("d", "e"),
            ("d", "f"),
        ],
    )
    .expect("sphere model is a poset")
}

/// `p` with a new greatest element adjoined.
pub fn cone(p: &FinitePoset) -> FinitePoset {
    let mut name = String::from("top");
    while p.contains(&ElementId::new(name.as_str())) {
        name.push('+');
    }
    let mut elements: Vec<Element> = p.elements().to_vec();
    elements.push(Element::new(name.as_str()));
    let apex = ElementId::new(name);
    let mut covers = p.cover_ids();
    covers.extend(p.ids().map(|id| (id.clone(), apex.clone())));
    FinitePoset::build(elements, &covers).expect("cone of a poset is a poset")
}
