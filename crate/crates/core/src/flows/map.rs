//! The diagram as a combinatorial map on the sphere.
//!
//! Separatrix `e` owns darts `2e` (tail) and `2e + 1` (head); boundary arcs
//! follow. Faces are orbits of `phi(d) = sigma(alpha(d))` where `alpha` swaps
//! the two darts of an edge and `sigma` is the counterclockwise successor at a
//! vertex. A dart `y` of a face stands for the corner `(sigma^-1(y), y)`.

use std::collections::{BTreeMap, VecDeque};

use super::diagram::{ArcFlow, FlowDiagram, SlotRef, Tag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum DartLabel {
    SepOut = 1,
    SepIn = 2,
    ArcOut = 3,
    ArcIn = 4,
}

impl DartLabel {
    fn is_in(self) -> bool {
        matches!(self, DartLabel::SepIn | DartLabel::ArcIn)
    }

    fn is_arc(self) -> bool {
        matches!(self, DartLabel::ArcOut | DartLabel::ArcIn)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Corner {
    Sink,
    Source,
    Hole,
    InOut,
    Bad,
}

#[derive(Clone, Debug)]
pub(crate) struct Map {
    pub vertex: Vec<usize>,
    pub label: Vec<DartLabel>,
    pub rot: Vec<Vec<usize>>,
    pub pos: Vec<usize>,
    pub tags: Vec<Tag>,
    pub boundary: Vec<bool>,
}

impl Map {
    /// Builds the map; fails when a slot is missing, doubled or unknown.
    pub fn build(d: &FlowDiagram) -> Result<Map, String> {
        let n = d.singulars.len();
        let index: BTreeMap<&str, usize> = d
            .singulars
            .iter()
            .enumerate()
            .map(|(i, s)| (s.id.as_str(), i))
            .collect();
        let arc_count: usize = d.circles.iter().map(|c| c.points.len()).sum();
        let darts = 2 * (d.separatrices.len() + arc_count);
        let mut vertex = vec![usize::MAX; darts];
        let mut label = vec![DartLabel::SepOut; darts];
        let mut slots: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
        let vertex_of = |r: &SlotRef| {
            index
                .get(r.id.as_str())
                .copied()
                .ok_or_else(|| format!("unknown singular point `{}`", r.id))
        };
        for (e, s) in d.separatrices.iter().enumerate() {
            for (dart, end, lab) in [
                (2 * e, &s.from, DartLabel::SepOut),
                (2 * e + 1, &s.to, DartLabel::SepIn),
            ] {
                let v = vertex_of(end)?;
                vertex[dart] = v;
                label[dart] = lab;
                if slots[v].insert(end.slot, dart).is_some() {
                    return Err(format!("slot {end} carries two separatrices"));
                }
            }
        }
        let mut prev_arc = vec![None; n];
        let mut next_arc = vec![None; n];
        let mut boundary = vec![false; n];
        let mut base = 2 * d.separatrices.len();
        for c in &d.circles {
            let m = c.points.len();
            if c.arcs.len() != m {
                return Err("boundary word has mismatched arcs".to_string());
            }
            for i in 0..m {
                let u = *index
                    .get(c.points[i].as_str())
                    .ok_or_else(|| format!("unknown singular point `{}`", c.points[i]))?;
                let w = *index
                    .get(c.points[(i + 1) % m].as_str())
                    .ok_or_else(|| format!("unknown singular point `{}`", c.points[(i + 1) % m]))?;
                let (tail, head) = (base + 2 * i, base + 2 * i + 1);
                vertex[tail] = u;
                vertex[head] = w;
                let (lu, lw) = match c.arcs[i] {
                    ArcFlow::Forward => (DartLabel::ArcOut, DartLabel::ArcIn),
                    ArcFlow::Backward => (DartLabel::ArcIn, DartLabel::ArcOut),
                };
                label[tail] = lu;
                label[head] = lw;
                if next_arc[u].replace(tail).is_some() || prev_arc[w].replace(head).is_some() {
                    return Err(format!("`{}` lies on the boundary twice", c.points[i]));
                }
                boundary[u] = true;
            }
            base += 2 * m;
        }
        let mut rot = Vec::with_capacity(n);
        for v in 0..n {
            let s = &d.singulars[v];
            let count = s.kind.fixed_slots().unwrap_or(slots[v].len());
            if slots[v].len() != count || slots[v].keys().enumerate().any(|(i, &k)| i != k) {
                return Err(format!(
                    "`{}` needs slots 0..{} each used once",
                    s.id, count
                ));
            }
            let mut r = Vec::with_capacity(count + 2);
            r.extend(prev_arc[v]);
            r.extend(slots[v].values().copied());
            r.extend(next_arc[v]);
            rot.push(r);
        }
        let mut pos = vec![0; darts];
        for r in &rot {
            for (i, &x) in r.iter().enumerate() {
                pos[x] = i;
            }
        }
        Ok(Map {
            vertex,
            label,
            rot,
            pos,
            tags: d.singulars.iter().map(|s| s.kind.tag).collect(),
            boundary,
        })
    }

    pub fn darts(&self) -> usize {
        self.vertex.len()
    }

    pub fn sigma(&self, d: usize) -> usize {
        let r = &self.rot[self.vertex[d]];
        r[(self.pos[d] + 1) % r.len()]
    }

    pub fn sigma_inv(&self, d: usize) -> usize {
        let r = &self.rot[self.vertex[d]];
        r[(self.pos[d] + r.len() - 1) % r.len()]
    }

    pub fn phi(&self, d: usize) -> usize {
        self.sigma(d ^ 1)
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.darts()];
        let mut faces = Vec::new();
        for start in 0..self.darts() {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                face.push(d);
                d = self.phi(d);
            }
            faces.push(face);
        }
        faces
    }

    /// Kind of the corner ending at dart `y`.
    pub fn corner(&self, y: usize) -> Corner {
        let v = self.vertex[y];
        match self.tags[v] {
            Tag::Sink => return Corner::Sink,
            Tag::Source => return Corner::Source,
            _ => {}
        }
        let x = self.sigma_inv(y);
        if self.boundary[v] && self.pos[y] == 0 && self.label[x].is_arc() && self.label[y].is_arc()
        {
            return Corner::Hole;
        }
        if self.label[x].is_in() != self.label[y].is_in() {
            Corner::InOut
        } else {
            Corner::Bad
        }
    }

    pub fn component_count(&self) -> usize {
        let n = self.rot.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in 0..self.darts() / 2 {
            let (a, b) = (find(&mut parent, self.vertex[2 * e]), find(&mut parent, self.vertex[2 * e + 1]));
            parent[a] = b;
        }
        (0..n).filter(|&v| find(&mut parent, v) == v).count()
    }

    fn vertex_code(tag: Tag) -> u32 {
        match tag {
            Tag::Sink => 1,
            Tag::Source => 2,
            Tag::Saddle(k) => 10 + k,
            Tag::BoundarySaddle(k) => 100 + k,
        }
    }

    /// Breadth-first code of the map seen from `start`; `mirror` walks every
    /// rotation clockwise.
    fn code(&self, start: usize, mirror: bool) -> Vec<u32> {
        let n = self.rot.len();
        let step = |d: usize| if mirror { self.sigma_inv(d) } else { self.sigma(d) };
        let offset = |entry: usize, d: usize| {
            let len = self.rot[self.vertex[d]].len();
            let (a, b) = (self.pos[entry], self.pos[d]);
            ((if mirror { a + len - b } else { b + len - a }) % len) as u32
        };
        let mut number = vec![u32::MAX; n];
        let mut entry = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        let v0 = self.vertex[start];
        number[v0] = 0;
        entry[v0] = start;
        queue.push_back(v0);
        let mut next = 1;
        let mut code = Vec::with_capacity(4 * self.darts() + 2 * n);
        while let Some(v) = queue.pop_front() {
            let len = self.rot[v].len();
            code.push(Self::vertex_code(self.tags[v]));
            code.push(len as u32);
            let mut d = entry[v];
            for _ in 0..len {
                let a = d ^ 1;
                let w = self.vertex[a];
                if number[w] == u32::MAX {
                    number[w] = next;
                    next += 1;
                    entry[w] = a;
                    queue.push_back(w);
                }
                code.push(self.label[d] as u32);
                code.push(number[w]);
                code.push(offset(entry[w], a));
                d = step(d);
            }
        }
        code
    }

    /// Least code over all start darts and both orientations.
    pub fn canonical_code(&self) -> Vec<u32> {
        (0..self.darts())
            .flat_map(|d| [self.code(d, false), self.code(d, true)])
            .min()
            .unwrap_or_default()
    }
}

/// Rewrites the sink slot numbers so that each face carries exactly one sink
/// corner. Fails when the remaining rotations admit no such order.
pub(crate) fn derive_sink_rotation(d: &mut FlowDiagram) -> Result<(), String> {
    let sinks = d.ids_with(|t| t == Tag::Sink);
    let [sink] = sinks.as_slice() else {
        return Err("exactly one sink is required".to_string());
    };
    let sink = sink.to_string();
    let rays: Vec<usize> = (0..d.separatrices.len())
        .filter(|&e| d.separatrices[e].to.id == sink)
        .collect();
    for (i, &e) in rays.iter().enumerate() {
        d.separatrices[e].to.slot = i;
    }
    if rays.is_empty() {
        return Err("the sink has no separatrix".to_string());
    }
    let map = Map::build(d)?;
    let sink_v = d.position(&sink).expect("sink exists");
    // ccw successor at the sink, by separatrix index.
    let mut next: BTreeMap<usize, usize> = BTreeMap::new();
    for &r in &rays {
        let mut c = map.sigma(2 * r);
        let mut found = None;
        for _ in 0..=map.darts() {
            let a = c ^ 1;
            if map.vertex[a] == sink_v {
                found = Some(c / 2);
                break;
            }
            c = map.sigma(a);
        }
        let r_prev = found.ok_or_else(|| format!("face after separatrix {r} misses the sink"))?;
        if next.insert(r_prev, r).is_some() {
            return Err("a face meets the sink twice".to_string());
        }
    }
    let first = rays[0];
    let mut order = vec![first];
    let mut cur = *next.get(&first).ok_or("sink rotation is not a cycle")?;
    while cur != first {
        if order.len() > rays.len() {
            return Err("sink rotation is not a cycle".to_string());
        }
        order.push(cur);
        cur = *next.get(&cur).ok_or("sink rotation is not a cycle")?;
    }
    if order.len() != rays.len() {
        return Err("sink rotation splits into several cycles".to_string());
    }
    for (slot, e) in order.into_iter().enumerate() {
        d.separatrices[e].to.slot = slot;
    }
    Ok(())
}
