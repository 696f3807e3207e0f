//! The stratified poset of flow classes.

use std::collections::BTreeMap;

use super::enumerate::{Enumeration, FlowClass};
use super::moves::resolution_moves;
use crate::error::FlowError;
use crate::poset::{Element, ElementId, FinitePoset, StratifiedPoset};

/// Element names `F<codim>_<index>`, in enumeration order.
pub fn class_names(e: &Enumeration) -> Vec<(ElementId, &FlowClass)> {
    e.classes
        .iter()
        .flat_map(|(q, list)| {
            list.iter()
                .enumerate()
                .map(move |(i, c)| (ElementId::new(format!("F{q}_{i}")), c))
        })
        .collect()
}

/// Short structural label such as `q=(1,1)`.
pub fn structure_label(c: &FlowClass) -> String {
    format!("q=({},{})", c.q.0, c.q.1)
}

/// Orders classes by degeneracy: `x < y` when `y` resolves from `x`.
pub fn build_stratified_poset(e: &Enumeration) -> Result<StratifiedPoset, FlowError> {
    let named = class_names(e);
    let by_key: BTreeMap<&[u8], &ElementId> =
        named.iter().map(|(id, c)| (c.key.as_slice(), id)).collect();
    let mut covers = Vec::new();
    for (id, class) in &named {
        for out in resolution_moves(&class.diagram) {
            let key = super::canonical_form(&out);
            let target = by_key
                .get(key.as_slice())
                .ok_or_else(|| FlowError::Stratification { from: id.to_string() })?;
            covers.push((id.clone(), (*target).clone()));
        }
    }
    let elements = named
        .iter()
        .map(|(id, c)| Element::labeled(id.as_str(), structure_label(c)))
        .collect();
    let poset = FinitePoset::build(elements, &covers)?;
    let codim = named
        .iter()
        .map(|(id, c)| (id.clone(), c.codimension()))
        .collect();
    Ok(StratifiedPoset::new(poset, &codim)?)
}
