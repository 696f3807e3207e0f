//! Finite posets as finite T0-spaces.
//!
//! A [`FinitePoset`] stores its covering relation (the Hasse diagram) and the
//! full reflexive order, which is derived eagerly at construction time. The
//! order is the specialization order of the space: `x <= y` when `x` lies in
//! the closure of `y`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::PosetError;

/// Default number of elements above which [`isomorphic`] refuses to search.
pub const DEFAULT_ISO_LIMIT: usize = 24;

/// Identifier of a point. Ordering and equality use the id only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(String);

impl ElementId {
    pub fn new(name: impl Into<String>) -> Self {
        ElementId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ElementId {
    fn from(s: &str) -> Self {
        ElementId(s.to_string())
    }
}

impl From<String> for ElementId {
    fn from(s: String) -> Self {
        ElementId(s)
    }
}

/// A point together with its human-readable label.
#[derive(Clone, Debug)]
pub struct Element {
    pub id: ElementId,
    pub label: String,
}

impl Element {
    pub fn new(id: impl Into<String>) -> Self {
        let id = id.into();
        Element {
            label: id.clone(),
            id: ElementId(id),
        }
    }

    pub fn labeled(id: impl Into<String>, label: impl Into<String>) -> Self {
        Element {
            id: ElementId(id.into()),
            label: label.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

/// Immutable finite partial order.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    elements: Vec<Element>,
    index: HashMap<ElementId, usize>,
    /// Cover pairs `(a, b)` with `a` covered by `b`, sorted.
    covers: Vec<(usize, usize)>,
    /// `leq[a][b]` holds when `a <= b`.
    leq: Vec<Vec<bool>>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .elements
                .iter()
                .zip(&other.elements)
                .all(|(a, b)| a.id == b.id)
            && self.cover_ids() == other.cover_ids()
    }
}

impl Eq for FinitePoset {}

impl FinitePoset {
    /// Builds a poset from declared elements and (possibly redundant) cover pairs.
    ///
    /// Pairs implied by transitivity are dropped, so the stored covers are the
    /// transitive reduction of the input relation.
    pub fn build(
        elements: Vec<Element>,
        covers: &[(ElementId, ElementId)],
    ) -> Result<Self, PosetError> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.id.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(e.id.to_string()));
            }
        }
        let lookup = |id: &ElementId| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| PosetError::UnknownElement(id.to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            pairs.push((lookup(a)?, lookup(b)?));
        }
        Self::from_relation(elements, index, &pairs)
    }

    /// Convenience constructor from plain names.
    pub fn from_names(names: &[&str], covers: &[(&str, &str)]) -> Result<Self, PosetError> {
        let elements = names.iter().map(|n| Element::new(*n)).collect();
        let covers: Vec<_> = covers
            .iter()
            .map(|(a, b)| (ElementId::from(*a), ElementId::from(*b)))
            .collect();
        Self::build(elements, &covers)
    }

    fn from_relation(
        elements: Vec<Element>,
        index: HashMap<ElementId, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = elements.len();
        let mut succ = vec![BTreeSet::new(); n];
        for &(a, b) in pairs {
            if a == b {
                return Err(PosetError::Cycle(elements[a].id.to_string()));
            }
            succ[a].insert(b);
        }
        let order = topological_order(&succ)
            .map_err(|i| PosetError::Cycle(elements[i].id.to_string()))?;

        // Reachability in reverse topological order.
        let mut leq = vec![vec![false; n]; n];
        for &a in order.iter().rev() {
            leq[a][a] = true;
            for &b in &succ[a] {
                for c in 0..n {
                    if leq[b][c] {
                        leq[a][c] = true;
                    }
                }
            }
        }

        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b])
                {
                    covers.push((a, b));
                }
            }
        }
        Ok(FinitePoset {
            elements,
            index,
            covers,
            leq,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn ids(&self) -> impl Iterator<Item = &ElementId> {
        self.elements.iter().map(|e| &e.id)
    }

    pub fn id(&self, i: usize) -> &ElementId {
        &self.elements[i].id
    }

    pub fn index_of(&self, id: &ElementId) -> Result<usize, PosetError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(id.to_string()))
    }

    pub fn contains(&self, id: &ElementId) -> bool {
        self.index.contains_key(id)
    }

    /// `a <= b` by position.
    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn leq(&self, a: &ElementId, b: &ElementId) -> Result<bool, PosetError> {
        Ok(self.leq[self.index_of(a)?][self.index_of(b)?])
    }

    pub fn comparable_idx(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    /// Cover pairs by position, sorted.
    pub fn cover_indices(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_ids(&self) -> Vec<(ElementId, ElementId)> {
        self.covers
            .iter()
            .map(|&(a, b)| (self.id(a).clone(), self.id(b).clone()))
            .collect()
    }

    pub fn upper_covers_idx(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.0 == i).map(|c| c.1)
    }

    pub fn lower_covers_idx(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.1 == i).map(|c| c.0)
    }

    /// Positions of `{y | x <= y}` (up) or `{y | y <= x}` (down).
    pub fn relatives_idx(&self, x: usize, direction: Direction, strict: bool) -> Vec<usize> {
        (0..self.len())
            .filter(|&y| !(strict && y == x))
            .filter(|&y| match direction {
                Direction::Up => self.leq[x][y],
                Direction::Down => self.leq[y][x],
            })
            .collect()
    }

    pub fn relatives(
        &self,
        x: &ElementId,
        direction: Direction,
        strict: bool,
    ) -> Result<BTreeSet<ElementId>, PosetError> {
        let i = self.index_of(x)?;
        Ok(self
            .relatives_idx(i, direction, strict)
            .into_iter()
            .map(|j| self.id(j).clone())
            .collect())
    }

    /// Sub-poset on the given positions with the restricted order.
    pub fn induced(&self, keep: &[usize]) -> FinitePoset {
        let elements: Vec<Element> = keep.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        let mut pairs = Vec::new();
        for (a, &ia) in keep.iter().enumerate() {
            for (b, &ib) in keep.iter().enumerate() {
                if a != b && self.leq[ia][ib] {
                    pairs.push((a, b));
                }
            }
        }
        Self::from_relation(elements, index, &pairs).expect("restriction of an order is acyclic")
    }

    /// The same points with the reversed order.
    pub fn opposite(&self) -> FinitePoset {
        let pairs: Vec<_> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        Self::from_relation(self.elements.clone(), self.index.clone(), &pairs)
            .expect("reversed order is acyclic")
    }

    /// Length of the longest chain ending at each point (minimal points have 0).
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut h = vec![0; n];
        let mut by_size: Vec<usize> = (0..n).collect();
        by_size.sort_by_key(|&i| (0..n).filter(|&j| self.leq[j][i]).count());
        for &i in &by_size {
            h[i] = self.lower_covers_idx(i).map(|j| h[j] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Number of connected components of the comparability graph.
    pub fn component_count(&self) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(i) = queue.pop_front() {
                for j in 0..n {
                    if !seen[j] && self.comparable_idx(i, j) {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        count
    }
}

/// Kahn's algorithm; on a cycle returns a vertex lying on one.
fn topological_order(succ: &[BTreeSet<usize>]) -> Result<Vec<usize>, usize> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &b in s {
            indeg[b] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(a) = queue.pop_front() {
        order.push(a);
        for &b in &succ[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                queue.push_back(b);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&i| indeg[i] > 0).unwrap_or(0))
    }
}

/// Builds a validated poset; see [`FinitePoset::build`].
pub fn build_poset(
    elements: Vec<Element>,
    covers: &[(ElementId, ElementId)],
) -> Result<FinitePoset, PosetError> {
    FinitePoset::build(elements, covers)
}

/// A poset graded by codimension: the abstract cell complex of strata.
///
/// Under the order convention used throughout, `x < y` means `x` is more
/// degenerate than `y`, so codimension strictly decreases going up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedPoset {
    poset: FinitePoset,
    codim: Vec<u32>,
}

impl StratifiedPoset {
    pub fn new(poset: FinitePoset, codim: &BTreeMap<ElementId, u32>) -> Result<Self, PosetError> {
        let codim = poset
            .ids()
            .map(|id| {
                codim
                    .get(id)
                    .copied()
                    .ok_or_else(|| PosetError::MissingCodim(id.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(StratifiedPoset { poset, codim })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn codim_idx(&self, i: usize) -> u32 {
        self.codim[i]
    }

    pub fn codim(&self, id: &ElementId) -> Result<u32, PosetError> {
        Ok(self.codim[self.poset.index_of(id)?])
    }

    pub fn codim_map(&self) -> BTreeMap<ElementId, u32> {
        self.poset
            .ids()
            .cloned()
            .zip(self.codim.iter().copied())
            .collect()
    }

    pub fn max_codim(&self) -> Option<u32> {
        self.codim.iter().copied().max()
    }

    /// Stratum sizes keyed by codimension.
    pub fn strata_sizes(&self) -> BTreeMap<u32, usize> {
        let mut sizes = BTreeMap::new();
        for &c in &self.codim {
            *sizes.entry(c).or_insert(0) += 1;
        }
        sizes
    }

    pub fn stratum(&self, q: u32) -> Vec<usize> {
        (0..self.poset.len()).filter(|&i| self.codim[i] == q).collect()
    }
}

/// Outcome of [`check_cell_complex`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellComplexReport {
    /// Pairs `x < y` with `codim(x) <= codim(y)`.
    pub violations: Vec<(ElementId, ElementId)>,
    /// Values of `q` for which the closure of stratum `q + 1` differs from
    /// the union of strata of codimension at least `q + 1`.
    pub closure_failures: Vec<i64>,
    /// Cover steps whose codimension drop is not exactly one.
    pub ungraded_covers: Vec<(ElementId, ElementId)>,
    pub strata: BTreeMap<u32, usize>,
}

impl CellComplexReport {
    /// The abstract cell complex law and the closure law both hold.
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.closure_failures.is_empty()
    }

    pub fn graded(&self) -> bool {
        self.ungraded_covers.is_empty()
    }
}

/// Checks the abstract cell complex law and the closure law of strata.
pub fn check_cell_complex(sp: &StratifiedPoset) -> CellComplexReport {
    let p = &sp.poset;
    let n = p.len();
    let mut report = CellComplexReport {
        strata: sp.strata_sizes(),
        ..Default::default()
    };
    for x in 0..n {
        for y in 0..n {
            if x != y && p.leq_idx(x, y) && sp.codim[x] <= sp.codim[y] {
                report.violations.push((p.id(x).clone(), p.id(y).clone()));
            }
        }
    }
    for &(a, b) in p.cover_indices() {
        if sp.codim[a] != sp.codim[b] + 1 {
            report
                .ungraded_covers
                .push((p.id(a).clone(), p.id(b).clone()));
        }
    }
    let max = sp.max_codim().map_or(-1, i64::from);
    for q in -1..max {
        let level = (q + 1) as u32;
        let closure: BTreeSet<usize> = (0..n)
            .filter(|&x| (0..n).any(|y| sp.codim[y] == level && p.leq_idx(x, y)))
            .collect();
        let expected: BTreeSet<usize> = (0..n).filter(|&x| sp.codim[x] >= level).collect();
        if closure != expected {
            report.closure_failures.push(q);
        }
    }
    report
}

/// Order-isomorphism search with the default bound.
pub fn isomorphic(
    p: &FinitePoset,
    q: &FinitePoset,
) -> Result<Option<BTreeMap<ElementId, ElementId>>, PosetError> {
    isomorphic_bounded(p, q, DEFAULT_ISO_LIMIT)
}

pub fn isomorphic_bounded(
    p: &FinitePoset,
    q: &FinitePoset,
    limit: usize,
) -> Result<Option<BTreeMap<ElementId, ElementId>>, PosetError> {
    iso_search(p, None, q, None, limit)
}

/// Isomorphism of stratified posets; codimension labels must be preserved.
pub fn isomorphic_stratified(
    p: &StratifiedPoset,
    q: &StratifiedPoset,
    limit: usize,
) -> Result<Option<BTreeMap<ElementId, ElementId>>, PosetError> {
    iso_search(&p.poset, Some(&p.codim), &q.poset, Some(&q.codim), limit)
}

type Invariant = (usize, usize, usize, usize, usize, u32);

fn invariants(p: &FinitePoset, colors: Option<&[u32]>) -> Vec<Invariant> {
    let heights = p.heights();
    (0..p.len())
        .map(|i| {
            (
                p.relatives_idx(i, Direction::Down, true).len(),
                p.relatives_idx(i, Direction::Up, true).len(),
                p.lower_covers_idx(i).count(),
                p.upper_covers_idx(i).count(),
                heights[i],
                colors.map_or(0, |c| c[i]),
            )
        })
        .collect()
}

fn iso_search(
    p: &FinitePoset,
    pc: Option<&[u32]>,
    q: &FinitePoset,
    qc: Option<&[u32]>,
    limit: usize,
) -> Result<Option<BTreeMap<ElementId, ElementId>>, PosetError> {
    if p.len() > limit && q.len() > limit {
        return Err(PosetError::SizeLimit {
            left: p.len(),
            right: q.len(),
            limit,
        });
    }
    if p.len() != q.len() || p.cover_indices().len() != q.cover_indices().len() {
        return Ok(None);
    }
    let ip = invariants(p, pc);
    let iq = invariants(q, qc);
    let mut sp = ip.clone();
    let mut sq = iq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return Ok(None);
    }

    // Visit the points with the fewest candidates first.
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| (iq.iter().filter(|&&v| v == ip[i]).count(), i));
    let candidates: Vec<Vec<usize>> = (0..p.len())
        .map(|i| (0..q.len()).filter(|&j| iq[j] == ip[i]).collect())
        .collect();

    let mut image = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    if extend(p, q, &order, &candidates, 0, &mut image, &mut used) {
        Ok(Some(
            (0..p.len())
                .map(|i| (p.id(i).clone(), q.id(image[i]).clone()))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

fn extend(
    p: &FinitePoset,
    q: &FinitePoset,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&a| {
            let fa = image[a];
            p.leq_idx(a, x) == q.leq_idx(fa, y) && p.leq_idx(x, a) == q.leq_idx(y, fa)
        });
        if !consistent {
            continue;
        }
        image[x] = y;
        used[y] = true;
        if extend(p, q, order, candidates, depth + 1, image, used) {
            return true;
        }
        used[y] = false;
        image[x] = usize::MAX;
    }
    false
}

/// Contents of a poset text file: the order plus any codimension labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetDocument {
    pub poset: FinitePoset,
    pub codim: BTreeMap<ElementId, u32>,
}

impl PosetDocument {
    /// Stratified view, available when every element carries a codimension.
    pub fn stratified(&self) -> Result<StratifiedPoset, PosetError> {
        StratifiedPoset::new(self.poset.clone(), &self.codim)
    }
}

pub fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "_'!+-".contains(c))
}

/// Parses the line-oriented poset format:
///
/// ```text
/// # comment
/// elem <name> [codim=<int>]
/// cover <a> <b>
/// ```
pub fn parse_poset(text: &str) -> Result<PosetDocument, PosetError> {
    let mut elements = Vec::new();
    let mut covers = Vec::new();
    let mut codim = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let err = |msg: String| PosetError::Parse { line, msg };
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["elem", name, rest @ ..] => {
                if !valid_name(name) {
                    return Err(err(format!("invalid element name `{name}`")));
                }
                match rest {
                    [] => {}
                    [attr] => {
                        let value = attr
                            .strip_prefix("codim=")
                            .ok_or_else(|| err(format!("unknown attribute `{attr}`")))?;
                        let value: u32 = value
                            .parse()
                            .map_err(|_| err(format!("invalid codimension `{value}`")))?;
                        codim.insert(ElementId::from(*name), value);
                    }
                    _ => return Err(err("too many fields in `elem`".into())),
                }
                elements.push(Element::new(*name));
            }
            ["cover", a, b] => covers.push((ElementId::from(*a), ElementId::from(*b))),
            _ => return Err(err(format!("unrecognized directive `{content}`"))),
        }
    }
    let poset = FinitePoset::build(elements, &covers)?;
    Ok(PosetDocument { poset, codim })
}

/// Serializes a poset (and optional codimension labels) in the text format.
pub fn write_poset(p: &FinitePoset, codim: Option<&BTreeMap<ElementId, u32>>) -> String {
    let mut out = String::new();
    for e in p.elements() {
        match codim.and_then(|c| c.get(&e.id)) {
            Some(c) => out.push_str(&format!("elem {} codim={}\n", e.id, c)),
            None => out.push_str(&format!("elem {}\n", e.id)),
        }
    }
    for (a, b) in p.cover_ids() {
        out.push_str(&format!("cover {a} {b}\n"));
    }
    out
}

/// Graphviz rendering of the Hasse diagram; edges point from lower to higher
/// elements and elements of equal codimension share a rank.
pub fn to_dot(p: &FinitePoset, codim: Option<&BTreeMap<ElementId, u32>>) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
    for e in p.elements() {
        out.push_str(&format!("  \"{}\" [label=\"{}\"];\n", e.id, e.label));
    }
    if let Some(codim) = codim {
        let mut ranks: BTreeMap<u32, Vec<&ElementId>> = BTreeMap::new();
        for id in p.ids() {
            if let Some(&c) = codim.get(id) {
                ranks.entry(c).or_default().push(id);
            }
        }
        for (c, ids) in ranks.iter().rev() {
            let names: Vec<String> = ids.iter().map(|id| format!("\"{id}\";")).collect();
            out.push_str(&format!(
                "  {{ rank=same; \"codim {c}\" [shape=plaintext]; {} }}\n",
                names.join(" ")
            ));
        }
        let levels: Vec<u32> = ranks.keys().rev().copied().collect();
        for w in levels.windows(2) {
            out.push_str(&format!(
                "  \"codim {}\" -> \"codim {}\" [style=invis];\n",
                w[0], w[1]
            ));
        }
    }
    for (a, b) in p.cover_ids() {
        out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinitePoset {
        FinitePoset::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn circle4() -> FinitePoset {
        crate::models::circle_model()
    }

    fn ids(names: &[&str]) -> BTreeSet<ElementId> {
        names.iter().map(|n| ElementId::from(*n)).collect()
    }

    #[test]
    fn redundant_cover_is_dropped() {
        let p = FinitePoset::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
            .unwrap();
        assert_eq!(p, chain3());
        assert_eq!(p.cover_ids().len(), 2);
        assert!(p.leq(&"a".into(), &"c".into()).unwrap());
    }

    #[test]
    fn singleton() {
        let p = FinitePoset::from_names(&["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.cover_ids().is_empty());
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = FinitePoset::from_names(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle(_)));
        let err = FinitePoset::from_names(&["a"], &[("a", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle(_)));
    }

    #[test]
    fn unknown_and_duplicate_elements() {
        let err = FinitePoset::from_names(&["a"], &[("a", "z")]).unwrap_err();
        assert_eq!(err, PosetError::UnknownElement("z".into()));
        let err = FinitePoset::from_names(&["a", "a"], &[]).unwrap_err();
        assert_eq!(err, PosetError::DuplicateElement("a".into()));
    }

    #[test]
    fn relatives_on_chain_and_circle() {
        let p = chain3();
        assert_eq!(p.relatives(&"b".into(), Direction::Up, true).unwrap(), ids(&["c"]));
        assert_eq!(
            p.relatives(&"b".into(), Direction::Down, false).unwrap(),
            ids(&["a", "b"])
        );
        let c = circle4();
        assert_eq!(
            c.relatives(&"a".into(), Direction::Up, true).unwrap(),
            ids(&["c", "d"])
        );
        assert!(matches!(
            c.relatives(&"q".into(), Direction::Up, true),
            Err(PosetError::UnknownElement(_))
        ));
    }

    #[test]
    fn cell_complex_chain() {
        let p = FinitePoset::from_names(&["a", "b"], &[("a", "b")]).unwrap();
        let good = StratifiedPoset::new(
            p.clone(),
            &BTreeMap::from([("a".into(), 1), ("b".into(), 0)]),
        )
        .unwrap();
        let r = check_cell_complex(&good);
        assert!(r.passed() && r.graded());

        let bad =
            StratifiedPoset::new(p, &BTreeMap::from([("a".into(), 0), ("b".into(), 0)])).unwrap();
        let r = check_cell_complex(&bad);
        assert!(!r.passed());
        assert_eq!(r.violations, vec![("a".into(), "b".into())]);
    }

    #[test]
    fn closure_law_detects_orphan_stratum() {
        // `c` has codim 1 but lies below no codim-0 element.
        let p = FinitePoset::from_names(&["a", "b", "c"], &[("a", "b")]).unwrap();
        let sp = StratifiedPoset::new(
            p,
            &BTreeMap::from([("a".into(), 1), ("b".into(), 0), ("c".into(), 1)]),
        )
        .unwrap();
        let r = check_cell_complex(&sp);
        assert!(r.violations.is_empty());
        assert_eq!(r.closure_failures, vec![-1]);
    }

    #[test]
    fn missing_codim() {
        let err = StratifiedPoset::new(chain3(), &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, PosetError::MissingCodim(_)));
    }

    #[test]
    fn chain_isomorphism_is_unique() {
        let q = FinitePoset::from_names(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        let m = isomorphic(&chain3(), &q).unwrap().unwrap();
        assert_eq!(m[&"a".into()], "x".into());
        assert_eq!(m[&"b".into()], "y".into());
        assert_eq!(m[&"c".into()], "z".into());
    }

    #[test]
    fn chain_vs_antichain() {
        let anti = FinitePoset::from_names(&["x", "y", "z"], &[]).unwrap();
        assert!(isomorphic(&chain3(), &anti).unwrap().is_none());
    }

    #[test]
    fn shuffled_circle_is_isomorphic() {
        let shuffled = FinitePoset::from_names(
            &["w", "z", "y", "x"],
            &[("y", "z"), ("x", "w"), ("y", "w"), ("x", "z")],
        )
        .unwrap();
        let m = isomorphic(&circle4(), &shuffled).unwrap().unwrap();
        let c = circle4();
        for a in c.ids() {
            for b in c.ids() {
                assert_eq!(c.leq(a, b).unwrap(), shuffled.leq(&m[a], &m[b]).unwrap());
            }
        }
    }

    #[test]
    fn size_limit() {
        let names: Vec<String> = (0..5).map(|i| format!("e{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let p = FinitePoset::from_names(&refs, &[]).unwrap();
        assert!(matches!(
            isomorphic_bounded(&p, &p, 4),
            Err(PosetError::SizeLimit { .. })
        ));
        assert!(isomorphic_bounded(&p, &p, 5).unwrap().is_some());
    }

    #[test]
    fn text_round_trip() {
        let text = "# a chain\nelem a codim=2\nelem b codim=1\nelem c codim=0\ncover a b\ncover b c\ncover a c\n";
        let doc = parse_poset(text).unwrap();
        assert_eq!(doc.poset, chain3());
        let out = write_poset(&doc.poset, Some(&doc.codim));
        assert_eq!(out, "elem a codim=2\nelem b codim=1\nelem c codim=0\ncover a b\ncover b c\n");
        assert_eq!(parse_poset(&out).unwrap(), doc);
        assert!(check_cell_complex(&doc.stratified().unwrap()).passed());
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_poset("elem a\nelem b@\n").unwrap_err();
        assert!(matches!(err, PosetError::Parse { line: 2, .. }));
        let err = parse_poset("elem a\nfoo\n").unwrap_err();
        assert!(matches!(err, PosetError::Parse { line: 2, .. }));
        let err = parse_poset("elem a codim=x\n").unwrap_err();
        assert!(matches!(err, PosetError::Parse { line: 1, .. }));
        assert!(parse_poset("elem C''\nelem d!\ncover C'' d!\n").is_ok());
    }

    #[test]
    fn dot_edges_point_upward() {
        let doc = parse_poset("elem a codim=1\nelem b codim=0\ncover a b\n").unwrap();
        let dot = to_dot(&doc.poset, Some(&doc.codim));
        assert!(dot.contains("\"a\" -> \"b\";"));
        assert!(dot.contains("rank=same"));
    }

    #[test]
    fn opposite_and_components() {
        let c = circle4();
        let op = c.opposite();
        assert!(op.leq(&"c".into(), &"a".into()).unwrap());
        assert_eq!(c.component_count(), 1);
        let anti = FinitePoset::from_names(&["x", "y"], &[]).unwrap();
        assert_eq!(anti.component_count(), 2);
        assert_eq!(chain3().heights(), vec![0, 1, 2]);
    }
}
