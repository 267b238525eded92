use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::Cyclotomic;

use super::GradedObject;

pub(crate) type Row = Vec<(u32, Cyclotomic)>;

/// A grade-preserving linear map between graded objects.
///
/// Stored sparsely by codomain row; each row lists `(domain column, value)`
/// sorted by column with no zero entries, so structural equality is value equality.
/// Composition is written left to right: `f.then(&g)` is the matrix product `g·f`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedMorphism {
    dom: GradedObject,
    cod: GradedObject,
    rows: Vec<Row>,
}

/// Dense view of one grade block: codomain positions × domain positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub grade: u32,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub matrix: Vec<Vec<Option<Cyclotomic>>>,
}

impl GradedMorphism {
    pub(crate) fn from_rows_unchecked(dom: GradedObject, cod: GradedObject, rows: Vec<Row>) -> Self {
        debug_assert_eq!(rows.len(), cod.dim());
        GradedMorphism { dom, cod, rows }
    }

    pub fn zero(dom: GradedObject, cod: GradedObject) -> Self {
        let rows = vec![Vec::new(); cod.dim()];
        GradedMorphism { dom, cod, rows }
    }

    /// Builds a morphism from `(row, col, value)` entries; repeated positions are summed.
    pub fn from_entries(
        dom: GradedObject,
        cod: GradedObject,
        entries: impl IntoIterator<Item = (usize, usize, Cyclotomic)>,
    ) -> Result<Self> {
        let mut acc: Vec<BTreeMap<u32, Cyclotomic>> = vec![BTreeMap::new(); cod.dim()];
        for (r, c, v) in entries {
            if r >= cod.dim() || c >= dom.dim() {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({r},{c}) outside {}x{}",
                    cod.dim(),
                    dom.dim()
                )));
            }
            if cod.grade(r) != dom.grade(c) {
                if v.is_zero() {
                    continue;
                }
                return Err(Error::ShapeMismatch(format!(
                    "entry ({r},{c}) joins grades {} and {}",
                    cod.grade(r),
                    dom.grade(c)
                )));
            }
            let slot = acc[r].entry(c as u32).or_insert_with(|| Cyclotomic::zero(v.order()));
            *slot = slot.try_add(&v)?;
        }
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(GradedMorphism { dom, cod, rows })
    }

    pub fn dom(&self) -> &GradedObject {
        &self.dom
    }

    pub fn cod(&self) -> &GradedObject {
        &self.cod
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn row(&self, r: usize) -> &[(u32, Cyclotomic)] {
        &self.rows[r]
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&Cyclotomic> {
        let row = &self.rows[r];
        row.binary_search_by_key(&(c as u32), |(k, _)| *k).ok().map(|i| &row[i].1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Cyclotomic)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &GradedMorphism) -> Result<GradedMorphism> {
        if self.cod != g.dom {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: codomain {} is not domain {}",
                self.cod, g.dom
            )));
        }
        let n = self.dom.dim();
        let mut scratch: Vec<Option<Cyclotomic>> = vec![None; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut rows = Vec::with_capacity(g.cod.dim());
        for grow in &g.rows {
            for (j, gv) in grow {
                for (k, fv) in &self.rows[*j as usize] {
                    let p = gv * fv;
                    match &mut scratch[*k as usize] {
                        Some(acc) => *acc += &p,
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*k);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut row = Vec::with_capacity(touched.len());
            for k in touched.drain(..) {
                if let Some(v) = scratch[k as usize].take() {
                    if !v.is_zero() {
                        row.push((k, v));
                    }
                }
            }
            rows.push(row);
        }
        Ok(GradedMorphism { dom: self.dom.clone(), cod: g.cod.clone(), rows })
    }

    fn zip_rows(&self, other: &Self, negate: bool) -> Result<GradedMorphism> {
        if !self.same_shape(other) {
            return Err(Error::ShapeMismatch("adding morphisms of different shapes".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut m: BTreeMap<u32, Cyclotomic> = a.iter().cloned().collect();
                for (c, v) in b {
                    let v = if negate { -v } else { v.clone() };
                    match m.get_mut(c) {
                        Some(x) => *x += &v,
                        None => {
                            m.insert(*c, v);
                        }
                    }
                }
                m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(GradedMorphism { dom: self.dom.clone(), cod: self.cod.clone(), rows })
    }

    pub fn add(&self, other: &Self) -> Result<GradedMorphism> {
        self.zip_rows(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<GradedMorphism> {
        self.zip_rows(other, true)
    }

    pub fn scale(&self, s: &Cyclotomic) -> GradedMorphism {
        if s.is_zero() {
            return GradedMorphism::zero(self.dom.clone(), self.cod.clone());
        }
        let rows = self.rows.iter().map(|row| row.iter().map(|(c, v)| (*c, v * s)).collect()).collect();
        GradedMorphism { dom: self.dom.clone(), cod: self.cod.clone(), rows }
    }

    pub fn neg(&self) -> GradedMorphism {
        let rows = self.rows.iter().map(|row| row.iter().map(|(c, v)| (*c, -v)).collect()).collect();
        GradedMorphism { dom: self.dom.clone(), cod: self.cod.clone(), rows }
    }

    /// Replaces the entry at `(r, c)`; used to build corrupted copies in tests and mutation sweeps.
    pub fn with_entry(&self, r: usize, c: usize, v: Option<Cyclotomic>) -> Result<GradedMorphism> {
        if r >= self.cod.dim() || c >= self.dom.dim() || self.cod.grade(r) != self.dom.grade(c) {
            return Err(Error::ShapeMismatch(format!("position ({r},{c}) is not grade-preserving")));
        }
        let mut out = self.clone();
        let row = &mut out.rows[r];
        let pos = row.binary_search_by_key(&(c as u32), |(k, _)| *k);
        match (pos, v.filter(|x| !x.is_zero())) {
            (Ok(i), Some(x)) => row[i].1 = x,
            (Ok(i), None) => {
                row.remove(i);
            }
            (Err(i), Some(x)) => row.insert(i, (c as u32, x)),
            (Err(_), None) => {}
        }
        Ok(out)
    }

    /// The block decomposition by grade, in increasing grade order.
    pub fn blocks(&self) -> Vec<Block> {
        let mut grades: Vec<u32> = self.cod.grades().iter().copied().filter(|g| self.dom.grades().contains(g)).collect();
        grades.sort_unstable();
        grades.dedup();
        grades
            .into_iter()
            .map(|g| {
                let rows: Vec<usize> = (0..self.cod.dim()).filter(|i| self.cod.grade(*i) == g).collect();
                let cols: Vec<usize> = (0..self.dom.dim()).filter(|i| self.dom.grade(*i) == g).collect();
                let matrix = rows
                    .iter()
                    .map(|r| cols.iter().map(|c| self.entry(*r, *c).cloned()).collect())
                    .collect();
                Block { grade: g, rows, cols, matrix }
            })
            .collect()
    }

    /// Positions `(row, col)` where an entry is allowed by the grading.
    pub fn admissible_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.cod.dim() {
            for c in 0..self.dom.dim() {
                if self.cod.grade(r) == self.dom.grade(c) {
                    out.push((r, c));
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for GradedMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -> {} {{", self.dom, self.cod)?;
        for (i, (r, c, v)) in self.entries().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " ({r},{c}): {v}")?;
        }
        write!(f, " }}")
    }
}
