//! Order complexes and integral simplicial homology.

use std::collections::HashMap;
use std::fmt;

use crate::error::OverflowError;
use crate::poset::{ElementId, FinitePoset};

/// Finite abstract simplicial complex; simplices are sorted vertex positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<ElementId>,
    /// `simplices[k]` lists the k-simplices in lexicographic order.
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Closes the given facets under taking non-empty faces.
    pub fn from_facets(vertices: Vec<ElementId>, facets: &[Vec<usize>]) -> Self {
        let mut all: Vec<Vec<usize>> = (0..vertices.len()).map(|v| vec![v]).collect();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            assert!(f.iter().all(|&v| v < vertices.len()), "facet vertex out of range");
            let n = f.len();
            for mask in 1u64..(1u64 << n) {
                all.push((0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        Self::from_simplices(vertices, all)
    }

    fn from_simplices(vertices: Vec<ElementId>, mut all: Vec<Vec<usize>>) -> Self {
        all.sort();
        all.dedup();
        let top = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut simplices = vec![Vec::new(); top];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        SimplicialComplex {
            vertices,
            simplices,
        }
    }

    pub fn vertices(&self) -> &[ElementId] {
        &self.vertices
    }

    /// k-simplices, each a sorted list of vertex positions.
    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    /// Face closure and vertex completeness.
    pub fn is_closed(&self) -> bool {
        let present: std::collections::HashSet<&Vec<usize>> =
            self.simplices.iter().flatten().collect();
        (0..self.vertices.len()).all(|v| present.contains(&vec![v]))
            && self.simplices.iter().flatten().all(|s| {
                s.len() == 1
                    || (0..s.len()).all(|i| {
                        let mut face = s.clone();
                        face.remove(i);
                        present.contains(&face)
                    })
            })
    }

    /// Boundary matrix from k-chains to (k-1)-chains.
    pub fn boundary_matrix(&self, k: usize) -> IntMatrix {
        let cols = self.simplices(k);
        let rows = if k == 0 { &[][..] } else { self.simplices(k - 1) };
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        if k == 0 {
            return m;
        }
        let row_of: HashMap<&[usize], usize> = rows
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        for (j, s) in cols.iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let r = row_of[face.as_slice()];
                m.set(r, j, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }
}

/// Simplices are the non-empty chains of `p`.
pub fn order_complex(p: &FinitePoset) -> SimplicialComplex {
    let n = p.len();
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, list) in above.iter_mut().enumerate() {
        *list = (0..n).filter(|&y| y != x && p.leq_idx(x, y)).collect();
    }
    let mut all = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("chains are non-empty");
        for &y in &above[last] {
            let mut next = chain.clone();
            next.push(y);
            stack.push(next);
        }
        let mut sorted = chain;
        sorted.sort_unstable();
        all.push(sorted);
    }
    SimplicialComplex::from_simplices(p.ids().cloned().collect(), all)
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Invariant factors `d1 | d2 | ... | d_rank`, all positive.
    pub invariant_factors: Vec<u64>,
}

struct Reducer {
    m: IntMatrix,
    overflow: OverflowError,
}

impl Reducer {
    fn at(&self, r: usize, c: usize) -> i64 {
        self.m.get(r, c)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.m.cols {
                self.m.data.swap(a * self.m.cols + c, b * self.m.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.m.rows {
                self.m.data.swap(r * self.m.cols + a, r * self.m.cols + b);
            }
        }
    }

    /// row[target] -= factor * row[source]
    fn row_axpy(&mut self, target: usize, source: usize, factor: i64) -> Result<(), OverflowError> {
        for c in 0..self.m.cols {
            let v = factor
                .checked_mul(self.at(source, c))
                .and_then(|d| self.at(target, c).checked_sub(d))
                .ok_or_else(|| self.overflow.clone())?;
            self.m.set(target, c, v);
        }
        Ok(())
    }

    fn col_axpy(&mut self, target: usize, source: usize, factor: i64) -> Result<(), OverflowError> {
        for r in 0..self.m.rows {
            let v = factor
                .checked_mul(self.at(r, source))
                .and_then(|d| self.at(r, target).checked_sub(d))
                .ok_or_else(|| self.overflow.clone())?;
            self.m.set(r, target, v);
        }
        Ok(())
    }

    /// Position of the smallest non-zero magnitude in the block `[t.., t..]`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u64, usize, usize)> = None;
        for r in t..self.m.rows {
            for c in t..self.m.cols {
                let v = self.at(r, c).unsigned_abs();
                if v != 0 && best.is_none_or(|b| v < b.0) {
                    best = Some((v, r, c));
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn reduce(mut self) -> Result<SmithForm, OverflowError> {
        let mut factors = Vec::new();
        let limit = self.m.rows.min(self.m.cols);
        let mut t = 0;
        while t < limit {
            let Some((r, c)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let pivot = self.at(t, t);
                let mut dirty = false;
                for r in t + 1..self.m.rows {
                    let q = self.at(r, t) / pivot;
                    if q != 0 {
                        self.row_axpy(r, t, q)?;
                    }
                    if self.at(r, t) != 0 {
                        dirty = true;
                    }
                }
                for c in t + 1..self.m.cols {
                    let q = self.at(t, c) / pivot;
                    if q != 0 {
                        self.col_axpy(c, t, q)?;
                    }
                    if self.at(t, c) != 0 {
                        dirty = true;
                    }
                }
                if dirty {
                    // A remainder smaller than the pivot exists in row or column t.
                    let (r, c) = self.min_in_cross(t);
                    self.swap_rows(t, r);
                    self.swap_cols(t, c);
                    continue;
                }
                let offender = (t + 1..self.m.rows)
                    .flat_map(|r| (t + 1..self.m.cols).map(move |c| (r, c)))
                    .find(|&(r, c)| self.at(r, c) % pivot != 0);
                match offender {
                    Some((r, _)) => self.row_axpy(t, r, -1)?,
                    None => break,
                }
            }
            factors.push(self.at(t, t).unsigned_abs());
            t += 1;
        }
        Ok(SmithForm {
            rank: factors.len(),
            invariant_factors: factors,
        })
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (self.at(t, t).unsigned_abs(), t, t);
        for r in t + 1..self.m.rows {
            let v = self.at(r, t).unsigned_abs();
            if v != 0 && v < best.0 {
                best = (v, r, t);
            }
        }
        for c in t + 1..self.m.cols {
            let v = self.at(t, c).unsigned_abs();
            if v != 0 && v < best.0 {
                best = (v, t, c);
            }
        }
        (best.1, best.2)
    }
}

/// Smith normal form over the integers with checked 64-bit arithmetic.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm, OverflowError> {
    let overflow = OverflowError {
        rows: m.rows,
        cols: m.cols,
    };
    if m.data.contains(&i64::MIN) {
        return Err(overflow);
    }
    Reducer {
        m: m.clone(),
        overflow,
    }
    .reduce()
}

/// Betti numbers and torsion coefficients per dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
}

impl HomologyProfile {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// Equal groups in every degree; degrees missing from one side count as zero.
    pub fn same_groups(&self, other: &HomologyProfile) -> bool {
        let n = self.betti.len().max(other.betti.len());
        (0..n).all(|k| {
            self.betti.get(k).unwrap_or(&0) == other.betti.get(k).unwrap_or(&0)
                && self.torsion.get(k).map_or(&[][..], Vec::as_slice)
                    == other.torsion.get(k).map_or(&[][..], Vec::as_slice)
        })
    }

    /// Betti numbers without trailing zeros.
    pub fn nonzero_betti(&self) -> Vec<usize> {
        let end = self.betti.iter().rposition(|&b| b != 0).map_or(0, |i| i + 1);
        self.betti[..end].to_vec()
    }

    /// Alternating sum of Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl fmt::Display for HomologyProfile {
    /// One line per dimension: `H<k>: Z^<betti> [+ Z/<d> ...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.betti.iter().enumerate() {
            write!(f, "H{k}: Z^{b}")?;
            for d in &self.torsion[k] {
                write!(f, " + Z/{d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Integral simplicial homology via Smith normal forms of boundary maps.
pub fn homology(k: &SimplicialComplex) -> Result<HomologyProfile, OverflowError> {
    let Some(top) = k.dimension() else {
        return Ok(HomologyProfile::default());
    };
    // forms[d] is the Smith form of the boundary from d-chains.
    let mut forms = Vec::with_capacity(top + 2);
    forms.push(SmithForm {
        rank: 0,
        invariant_factors: Vec::new(),
    });
    for d in 1..=top {
        forms.push(smith_normal_form(&k.boundary_matrix(d))?);
    }
    let mut betti = Vec::with_capacity(top + 1);
    let mut torsion = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let n = k.simplices(d).len();
        let next = forms.get(d + 1);
        let image_rank = next.map_or(0, |f| f.rank);
        betti.push(n - forms[d].rank - image_rank);
        torsion.push(
            next.map(|f| f.invariant_factors.iter().copied().filter(|&x| x > 1).collect())
                .unwrap_or_default(),
        );
    }
    Ok(HomologyProfile { betti, torsion })
}

/// Alternating count of simplices by dimension.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.counts()
        .iter()
        .enumerate()
        .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}
