//! Sparse exact linear algebra: incremental elimination, solving and inversion.

use std::collections::BTreeMap;

use crate::base::{BaseCategory, GradedMorphism, GradedObject};
use crate::error::{Error, Result};
use crate::scalars::Cyclotomic;

pub type SparseVec = BTreeMap<u32, Cyclotomic>;

struct Pivot {
    at: u32,
    image: SparseVec,
    preimage: SparseVec,
}

fn axpy(y: &mut SparseVec, a: &Cyclotomic, x: &SparseVec) {
    for (k, v) in x {
        let p = a * v;
        match y.get_mut(k) {
            Some(e) => {
                *e += &p;
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                y.insert(*k, p);
            }
        }
    }
}

/// Row reduction of a linear map given by the images of its source basis.
///
/// Pivots are kept in insertion order and each later pivot vanishes at every
/// earlier pivot coordinate, so a single forward pass solves `Ax = y`.
pub struct Solver {
    source_dim: usize,
    target_dim: usize,
    pivots: Vec<Pivot>,
}

impl Solver {
    pub fn new(target_dim: usize, columns: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut s = Solver { source_dim: 0, target_dim, pivots: Vec::new() };
        for col in columns {
            s.push_column(col);
        }
        s
    }

    fn push_column(&mut self, mut image: SparseVec) {
        let k = self.source_dim as u32;
        self.source_dim += 1;
        let Some(one) = image.values().next().map(|v| Cyclotomic::one(v.order())) else {
            return;
        };
        let mut preimage: SparseVec = std::iter::once((k, one)).collect();
        for p in &self.pivots {
            if let Some(c) = image.get(&p.at).cloned() {
                let neg = -&c;
                axpy(&mut image, &neg, &p.image);
                axpy(&mut preimage, &neg, &p.preimage);
            }
        }
        match image.iter().next().map(|(k, v)| (*k, v.clone())) {
            None => {}
            Some((at, lead)) => {
                let inv = lead.inv().expect("nonzero pivot");
                for v in image.values_mut() {
                    *v = &*v * &inv;
                }
                for v in preimage.values_mut() {
                    *v = &*v * &inv;
                }
                self.pivots.push(Pivot { at, image, preimage });
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source_dim
    }

    pub fn is_bijective(&self) -> bool {
        self.rank() == self.source_dim && self.rank() == self.target_dim
    }

    /// Some preimage of `y`, or `None` if `y` is outside the image.
    pub fn solve(&self, y: &SparseVec) -> Option<SparseVec> {
        let mut y = y.clone();
        let mut x = SparseVec::new();
        for p in &self.pivots {
            if let Some(c) = y.get(&p.at).cloned() {
                axpy(&mut x, &c, &p.preimage);
                let neg = -&c;
                axpy(&mut y, &neg, &p.image);
            }
        }
        y.is_empty().then_some(x)
    }
}

/// Columns of a morphism matrix as sparse vectors indexed by codomain position.
pub fn columns_of(f: &GradedMorphism) -> Vec<SparseVec> {
    let mut cols = vec![SparseVec::new(); f.dom().dim()];
    for (r, c, v) in f.entries() {
        cols[c].insert(r as u32, v.clone());
    }
    cols
}

pub fn morphism_rank(f: &GradedMorphism) -> usize {
    Solver::new(f.cod().dim(), columns_of(f)).rank()
}

/// The two-sided inverse, when `f` is invertible.
pub fn invert_morphism(f: &GradedMorphism) -> Option<GradedMorphism> {
    if f.dom().dim() != f.cod().dim() {
        return None;
    }
    let solver = Solver::new(f.cod().dim(), columns_of(f));
    if !solver.is_bijective() {
        return None;
    }
    let mut entries = Vec::new();
    for r in 0..f.cod().dim() {
        if f.row(r).is_empty() {
            return None;
        }
        let m = f.row(r)[0].1.order();
        let e: SparseVec = std::iter::once((r as u32, Cyclotomic::one(m))).collect();
        let x = solver.solve(&e)?;
        for (k, v) in x {
            entries.push((k as usize, r, v));
        }
    }
    GradedMorphism::from_entries(f.cod().clone(), f.dom().clone(), entries).ok()
}

/// Grade-0 basis elements `1 → x`, one per grade-0 position of `x`.
pub fn element_basis(base: &BaseCategory, x: &GradedObject) -> Vec<GradedMorphism> {
    x.grade_zero_positions()
        .into_iter()
        .map(|p| {
            GradedMorphism::from_entries(GradedObject::unit(), x.clone(), [(p, 0, base.one())])
                .expect("grade-0 position")
        })
        .collect()
}

/// Flattens a morphism to a sparse vector over its `(row, col)` positions.
pub fn vectorize(f: &GradedMorphism) -> SparseVec {
    let n = f.dom().dim() as u32;
    f.entries().map(|(r, c, v)| (r as u32 * n + c as u32, v.clone())).collect()
}

/// Elementary matrices spanning the grade-preserving maps `dom → cod`.
pub fn morphism_basis(base: &BaseCategory, dom: &GradedObject, cod: &GradedObject) -> Vec<GradedMorphism> {
    let mut out = Vec::new();
    for r in 0..cod.dim() {
        for c in 0..dom.dim() {
            if cod.grade(r) == dom.grade(c) {
                let e = GradedMorphism::from_entries(dom.clone(), cod.clone(), [(r, c, base.one())]);
                out.push(e.expect("admissible position"));
            }
        }
    }
    out
}

/// A fixed dense map `dom → cod`: the sum of the elementary basis with coefficients `1, 2, 3, …`.
///
/// Used where a law is linear in a morphism argument and one representative with
/// no special structure is enough to exercise it.
pub fn generic_morphism(base: &BaseCategory, dom: &GradedObject, cod: &GradedObject) -> GradedMorphism {
    let mut entries = Vec::new();
    let mut k = 0;
    for r in 0..cod.dim() {
        for c in 0..dom.dim() {
            if cod.grade(r) == dom.grade(c) {
                k += 1;
                entries.push((r, c, base.scalar(k)));
            }
        }
    }
    GradedMorphism::from_entries(dom.clone(), cod.clone(), entries).expect("admissible positions")
}

/// A random map `dom → cod` with entries `k·ζ^j`, `k ∈ [-3, 3]`.
pub fn random_morphism<R: rand::Rng>(base: &BaseCategory, dom: &GradedObject, cod: &GradedObject, rng: &mut R) -> GradedMorphism {
    let m = base.root_order();
    let mut entries = Vec::new();
    for r in 0..cod.dim() {
        for c in 0..dom.dim() {
            if cod.grade(r) == dom.grade(c) {
                let k = rng.gen_range(-3i64..=3);
                if k != 0 {
                    let z = crate::scalars::root_of_unity(m, rng.gen_range(0..m as i64));
                    entries.push((r, c, &base.scalar(k) * &z));
                }
            }
        }
    }
    GradedMorphism::from_entries(dom.clone(), cod.clone(), entries).expect("admissible positions")
}

/// Dimension of the space of grade-preserving maps `dom → cod`.
pub fn hom_dim(dom: &GradedObject, cod: &GradedObject) -> usize {
    dom.multiplicities().iter().map(|(g, n)| n * cod.multiplicity(*g)).sum()
}

/// A linear map from a span of basis morphisms into a space of morphisms `dom → cod`,
/// recorded by its values on the basis so it can be inverted.
pub struct MorphismMap {
    zero: GradedMorphism,
    basis: Vec<GradedMorphism>,
    dom: GradedObject,
    cod: GradedObject,
    solver: Solver,
}

impl MorphismMap {
    /// `source` is the shape `(dom, cod)` of the basis morphisms, `target` that of their images.
    pub fn new(
        source: (&GradedObject, &GradedObject),
        basis: Vec<GradedMorphism>,
        target: (&GradedObject, &GradedObject),
        eval: impl Fn(&GradedMorphism) -> Result<GradedMorphism>,
    ) -> Result<Self> {
        let zero = GradedMorphism::zero(source.0.clone(), source.1.clone());
        let (dom, cod) = (target.0.clone(), target.1.clone());
        let mut cols = Vec::with_capacity(basis.len());
        for b in &basis {
            let img = eval(b)?;
            if img.dom() != &dom || img.cod() != &cod {
                return Err(Error::ShapeMismatch(format!("image {} -> {} is not {dom} -> {cod}", img.dom(), img.cod())));
            }
            cols.push(vectorize(&img));
        }
        let solver = Solver::new(hom_dim(&dom, &cod), cols);
        Ok(MorphismMap { zero, basis, dom, cod, solver })
    }

    pub fn is_bijective(&self) -> bool {
        self.solver.is_bijective()
    }

    pub fn is_injective(&self) -> bool {
        self.solver.is_injective()
    }

    pub fn rank(&self) -> usize {
        self.solver.rank()
    }

    pub fn source_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn target_dim(&self) -> usize {
        self.solver.target_dim()
    }

    /// A combination of basis morphisms mapping to `y`, if `y` is in the image.
    pub fn preimage(&self, y: &GradedMorphism) -> Result<Option<GradedMorphism>> {
        if y.dom() != &self.dom || y.cod() != &self.cod {
            return Err(Error::ShapeMismatch(format!("{} -> {} is not {} -> {}", y.dom(), y.cod(), self.dom, self.cod)));
        }
        let Some(x) = self.solver.solve(&vectorize(y)) else {
            return Ok(None);
        };
        let mut acc = self.zero.clone();
        for (k, c) in x {
            acc = acc.add(&self.basis[k as usize].scale(&c))?;
        }
        Ok(Some(acc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::GradedObject;

    #[test]
    fn invert_block_matrix() {
        let u = GradedObject::from_grades(vec![0, 1, 0]);
        let one = Cyclotomic::one(4);
        let i = Cyclotomic::root_of_unity(4, 1);
        let f = GradedMorphism::from_entries(
            u.clone(),
            u.clone(),
            vec![(0, 0, one.clone()), (0, 2, i.clone()), (2, 0, one.clone()), (1, 1, i.clone())],
        )
        .unwrap();
        let g = invert_morphism(&f).unwrap();
        let id = GradedMorphism::from_entries(u.clone(), u.clone(), (0..3).map(|k| (k, k, one.clone()))).unwrap();
        assert_eq!(f.then(&g).unwrap(), id);
        assert_eq!(g.then(&f).unwrap(), id);
        let singular = f.with_entry(2, 0, None).unwrap().with_entry(2, 2, None).unwrap();
        assert!(invert_morphism(&singular).is_none());
        assert_eq!(morphism_rank(&singular), 2);
    }
}
