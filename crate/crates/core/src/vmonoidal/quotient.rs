use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::base::{BaseCategory, GradedMorphism, GradedObject};
use crate::enriched::{labels, verify_vcategory, Obj, VCat};
use crate::error::{Error, Result};
use crate::linalg::{element_basis, invert_morphism, MorphismMap};
use crate::report::{holds, instance, sweep, Report};

use super::{verify_vmonoidal, Classification, VMonoidal, VMonoidalCategory};

/// Coordinates of an element `1 → C(a→b)` at the grade-0 positions, as an element of `[0]^k`.
fn plain_element(hom: &GradedObject, x: &GradedMorphism) -> Result<GradedMorphism> {
    let pos = hom.grade_zero_positions();
    let cod = GradedObject::from_grades(vec![0; pos.len()]);
    let entries: Vec<_> = pos
        .iter()
        .enumerate()
        .filter_map(|(i, p)| x.row(*p).first().map(|(_, v)| (i, 0, v.clone())))
        .collect();
    GradedMorphism::from_entries(GradedObject::unit(), cod, entries)
}

/// `C^V` as a monoidal category over a trivially graded base, with `T(a→b) = [0]^k`
/// for `k` the number of grade-0 positions of `C(a→b)`.
struct Underlying<'a> {
    c: &'a dyn VMonoidal,
    plain: Arc<BaseCategory>,
    basis: HashMap<(Obj, Obj), Vec<GradedMorphism>>,
}

impl Underlying<'_> {
    fn basis(&self, a: &Obj, b: &Obj) -> Result<&[GradedMorphism]> {
        self.basis
            .get(&(a.clone(), b.clone()))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownObject(format!("({a}, {b})")))
    }

    fn to_plain(&self, a: &Obj, b: &Obj, x: &GradedMorphism) -> Result<GradedMorphism> {
        plain_element(&self.c.hom(a, b)?, x)
    }

    /// The bilinear map on basis pairs, written as a matrix `[0]^m⊗[0]^n → [0]^k`.
    fn bilinear(
        &self,
        left: (&Obj, &Obj),
        right: (&Obj, &Obj),
        out: (&Obj, &Obj),
        f: impl Fn(&GradedMorphism, &GradedMorphism) -> Result<GradedMorphism>,
    ) -> Result<GradedMorphism> {
        let (bl, br) = (self.basis(left.0, left.1)?, self.basis(right.0, right.1)?);
        let k = self.basis(out.0, out.1)?.len();
        let mut entries = Vec::new();
        for (i, x) in bl.iter().enumerate() {
            for (j, y) in br.iter().enumerate() {
                let z = self.to_plain(out.0, out.1, &f(x, y)?)?;
                for (r, _, v) in z.entries() {
                    entries.push((r, i * br.len() + j, v.clone()));
                }
            }
        }
        let zeros = |n: usize| GradedObject::from_grades(vec![0; n]);
        GradedMorphism::from_entries(zeros(bl.len() * br.len()), zeros(k), entries)
    }
}

impl VCat for Underlying<'_> {
    fn base(&self) -> &Arc<BaseCategory> {
        &self.plain
    }

    fn objects(&self) -> Vec<Obj> {
        self.c.objects()
    }

    fn hom(&self, a: &Obj, b: &Obj) -> Result<GradedObject> {
        Ok(GradedObject::from_grades(vec![0; self.basis(a, b)?.len()]))
    }

    fn comp(&self, a: &Obj, b: &Obj, d: &Obj) -> Result<GradedMorphism> {
        self.bilinear((a, b), (b, d), (a, d), |x, y| self.c.compose(a, b, d, x, y))
    }

    fn ident(&self, a: &Obj) -> Result<GradedMorphism> {
        self.to_plain(a, a, &self.c.ident(a)?)
    }
}

impl VMonoidal for Underlying<'_> {
    fn unit_object(&self) -> Obj {
        self.c.unit_object()
    }

    fn tensor_objects(&self, a: &Obj, b: &Obj) -> Result<Obj> {
        self.c.tensor_objects(a, b)
    }

    fn tensor_homs(&self, a: &Obj, b: &Obj, x: &Obj, d: &Obj) -> Result<GradedMorphism> {
        let (ac, bd) = (self.c.tensor_objects(a, x)?, self.c.tensor_objects(b, d)?);
        self.bilinear((a, b), (x, d), (&ac, &bd), |f, g| self.c.tensor_elements(a, b, x, d, f, g))
    }
}

/// The underlying monoidal category `C^V` of `c`'s window as a materialized category over
/// `plain`, a base with trivial grading group and the same scalars.
pub fn underlying_monoidal(c: &dyn VMonoidal, plain: Arc<BaseCategory>) -> Result<VMonoidalCategory> {
    let objs = c.objects();
    let mut basis = HashMap::new();
    for a in &objs {
        for b in &objs {
            basis.insert((a.clone(), b.clone()), element_basis(c.base(), &c.hom(a, b)?));
        }
    }
    VMonoidalCategory::materialize(&Underlying { c, plain, basis })
}

/// A strong monoidal functor `F: V → Z(T)` on the simple objects `g` of a pointed `V`:
/// objects `F(g)`, tensorators `ν_{g,h} ∈ T(F(g+h) → F(g)F(h))` and half-braidings
/// `e_{a,g} ∈ T(aF(g) → F(g)a)`.
#[derive(Clone, Default)]
pub struct CenterData {
    pub objects: BTreeMap<u32, Obj>,
    pub nu: BTreeMap<(u32, u32), GradedMorphism>,
    pub e: BTreeMap<(Obj, u32), GradedMorphism>,
}

impl CenterData {
    /// Reads `F`, `ν` and `e` off a classification whose weights are the simple objects,
    /// in the coordinates of [`underlying_monoidal`].
    pub fn from_classification(c: &dyn VMonoidal, cls: &Classification) -> Result<Self> {
        let base = c.base();
        let simple = |g: u32| GradedObject::simple(g);
        let mut out = CenterData::default();
        for g in base.group().elements() {
            let fg = cls.functor.get(&simple(g)).ok_or_else(|| Error::gap(format!("F([{g}])")))?;
            out.objects.insert(g, fg.clone());
        }
        for g in base.group().elements() {
            for h in base.group().elements() {
                let (fg, fh) = (&out.objects[&g], &out.objects[&h]);
                let fgh = &out.objects[&base.group().add(g, h)];
                let hom = c.hom(fgh, &c.tensor_objects(fg, fh)?)?;
                out.nu.insert((g, h), plain_element(&hom, cls.nu(&simple(g), &simple(h))?)?);
            }
            for a in c.objects() {
                let fg = &out.objects[&g];
                let hom = c.hom(&c.tensor_objects(&a, fg)?, &c.tensor_objects(fg, &a)?)?;
                out.e.insert((a.clone(), g), plain_element(&hom, cls.e(&a, &simple(g))?)?);
            }
        }
        Ok(out)
    }

    /// The unit functor over the trivial group: `F(0) = 1`, `ν = j`, `e = j`.
    pub fn unit_functor(t: &VMonoidalCategory) -> Result<Self> {
        let one = t.unit_object();
        let mut out = CenterData::default();
        out.objects.insert(0, one.clone());
        out.nu.insert((0, 0), t.ident(&one)?);
        for a in t.objects() {
            out.e.insert((a.clone(), 0), t.ident(&a)?);
        }
        Ok(out)
    }
}

/// Internal homs `[a,b]` of `T` with counits `ε_{a,b} ∈ T(a[a,b] → b)`.
#[derive(Clone, Default)]
pub struct ClosedData {
    pub hom: BTreeMap<(Obj, Obj), Obj>,
    pub counit: BTreeMap<(Obj, Obj), GradedMorphism>,
}

impl ClosedData {
    /// `[a,b] = a*b` and `ε_{a,b} = ev_a⊗j_b` from the duals of `c`, in the coordinates of
    /// [`underlying_monoidal`].
    pub fn from_duals(c: &dyn VMonoidal) -> Result<Self> {
        let one = c.unit_object();
        let mut out = ClosedData::default();
        for a in c.objects() {
            let d = c.dual(&a)?;
            let aas = c.tensor_objects(&a, &d.object)?;
            for b in c.objects() {
                let hom = c.tensor_objects(&d.object, &b)?;
                let eps = c.tensor_elements(&aas, &one, &b, &b, &d.ev, &c.ident(&b)?)?;
                let plain_eps = plain_element(&c.hom(&c.tensor_objects(&aas, &b)?, &b)?, &eps)?;
                out.hom.insert((a.clone(), b.clone()), hom);
                out.counit.insert((a.clone(), b), plain_eps);
            }
        }
        Ok(out)
    }
}

/// Per hom object: for each grade `g`, the inverted map
/// `Θ_{a,g,b}: T(F(g)→[a,b]) → T(aF(g)→b)` and the offset of its block.
struct HomData {
    hom: GradedObject,
    blocks: Vec<(usize, Arc<MorphismMap>)>,
    elements: Vec<GradedMorphism>,
}

struct Quotient<'a> {
    t: &'a VMonoidalCategory,
    vbase: Arc<BaseCategory>,
    f: &'a CenterData,
    homs: HashMap<(Obj, Obj), HomData>,
}

impl Quotient<'_> {
    fn data(&self, a: &Obj, b: &Obj) -> Result<&HomData> {
        self.homs.get(&(a.clone(), b.clone())).ok_or_else(|| Error::UnknownObject(format!("({a}, {b})")))
    }

    fn f(&self, g: u32) -> Result<&Obj> {
        self.f.objects.get(&g).ok_or_else(|| Error::gap(format!("F({g})")))
    }

    /// Grade-`g` column vector of `Q(a→b)` for `y ∈ T(aF(g)→b)`.
    fn coordinates(&self, a: &Obj, b: &Obj, g: u32, y: &GradedMorphism) -> Result<Vec<(usize, crate::scalars::Cyclotomic)>> {
        let d = self.data(a, b)?;
        let (offset, map) = &d.blocks[g as usize];
        let z = map.preimage(y)?.ok_or_else(|| Error::AdjointMismatch(format!("Θ at ({a}, {g}, {b}) is not onto")))?;
        Ok(z.entries().map(|(r, _, v)| (offset + r, v.clone())).collect())
    }

    fn matrix(
        &self,
        left: (&Obj, &Obj),
        right: (&Obj, &Obj),
        out: (&Obj, &Obj),
        f: impl Fn(u32, &GradedMorphism, u32, &GradedMorphism) -> Result<GradedMorphism>,
    ) -> Result<GradedMorphism> {
        let (dl, dr) = (self.data(left.0, left.1)?, self.data(right.0, right.1)?);
        let group = self.vbase.group();
        let mut entries = Vec::new();
        let n = dr.hom.dim();
        for (i, x) in dl.elements.iter().enumerate() {
            for (j, y) in dr.elements.iter().enumerate() {
                let (g, h) = (dl.hom.grade(i), dr.hom.grade(j));
                let z = f(g, x, h, y)?;
                for (r, v) in self.coordinates(out.0, out.1, group.add(g, h), &z)? {
                    entries.push((r, i * n + j, v));
                }
            }
        }
        let dom = self.vbase.tensor_obj(&dl.hom, &dr.hom);
        GradedMorphism::from_entries(dom, self.data(out.0, out.1)?.hom.clone(), entries)
    }

    fn nu(&self, g: u32, h: u32) -> Result<&GradedMorphism> {
        self.f.nu.get(&(g, h)).ok_or_else(|| Error::gap(format!("ν({g}, {h})")))
    }

    fn e(&self, a: &Obj, g: u32) -> Result<&GradedMorphism> {
        self.f.e.get(&(a.clone(), g)).ok_or_else(|| Error::gap(format!("e({a}, {g})")))
    }
}

impl VCat for Quotient<'_> {
    fn base(&self) -> &Arc<BaseCategory> {
        &self.vbase
    }

    fn objects(&self) -> Vec<Obj> {
        self.t.objects()
    }

    fn hom(&self, a: &Obj, b: &Obj) -> Result<GradedObject> {
        Ok(self.data(a, b)?.hom.clone())
    }

    /// `x;y ↦ (j_a⊗ν_{g,h});(x⊗j_{F(h)});y`.
    fn comp(&self, a: &Obj, b: &Obj, d: &Obj) -> Result<GradedMorphism> {
        let t = self.t;
        let group = self.vbase.group();
        self.matrix((a, b), (b, d), (a, d), |g, x, h, y| {
            let (fg, fh, fgh) = (self.f(g)?, self.f(h)?, self.f(group.add(g, h))?);
            let fgfh = t.tensor_objects(fg, fh)?;
            let afgh = t.tensor_objects(a, fgh)?;
            let afg = t.tensor_objects(a, fg)?;
            let afgfh = t.tensor_objects(&afg, fh)?;
            let bfh = t.tensor_objects(b, fh)?;
            let s1 = t.tensor_elements(a, a, fgh, &fgfh, &t.ident(a)?, self.nu(g, h)?)?;
            let s2 = t.tensor_elements(&afg, b, fh, fh, x, &t.ident(fh)?)?;
            let s12 = t.compose(&afgh, &afgfh, &bfh, &s1, &s2)?;
            t.compose(&afgh, &bfh, d, &s12, y)
        })
    }

    fn ident(&self, a: &Obj) -> Result<GradedMorphism> {
        let coords = self.coordinates(a, a, 0, &self.t.ident(a)?)?;
        let entries: Vec<_> = coords.into_iter().map(|(r, v)| (r, 0, v)).collect();
        GradedMorphism::from_entries(GradedObject::unit(), self.data(a, a)?.hom.clone(), entries)
    }
}

impl VMonoidal for Quotient<'_> {
    fn unit_object(&self) -> Obj {
        self.t.unit_object()
    }

    fn tensor_objects(&self, a: &Obj, b: &Obj) -> Result<Obj> {
        self.t.tensor_objects(a, b)
    }

    /// `x⊗y ↦ (j_{ac}⊗ν_{g,h});(j_a⊗e_{c,g}⊗j_{F(h)});(x⊗y)`.
    fn tensor_homs(&self, a: &Obj, b: &Obj, c: &Obj, d: &Obj) -> Result<GradedMorphism> {
        let t = self.t;
        let group = self.vbase.group();
        let (ac, bd) = (t.tensor_objects(a, c)?, t.tensor_objects(b, d)?);
        self.matrix((a, b), (c, d), (&ac, &bd), |g, x, h, y| {
            let (fg, fh, fgh) = (self.f(g)?, self.f(h)?, self.f(group.add(g, h))?);
            let fgfh = t.tensor_objects(fg, fh)?;
            let (cfg, fgc) = (t.tensor_objects(c, fg)?, t.tensor_objects(fg, c)?);
            let (acfg, afgc) = (t.tensor_objects(a, &cfg)?, t.tensor_objects(a, &fgc)?);
            let (afg, cfh) = (t.tensor_objects(a, fg)?, t.tensor_objects(c, fh)?);
            let s1 = t.tensor_elements(&ac, &ac, fgh, &fgfh, &t.ident(&ac)?, self.nu(g, h)?)?;
            let cross = t.tensor_elements(a, a, &cfg, &fgc, &t.ident(a)?, self.e(c, g)?)?;
            let s2 = t.tensor_elements(&acfg, &afgc, fh, fh, &cross, &t.ident(fh)?)?;
            let s3 = t.tensor_elements(&afg, b, &cfh, d, x, y)?;
            let start = t.tensor_objects(&ac, fgh)?;
            let mid1 = t.tensor_objects(&acfg, fh)?;
            let mid2 = t.tensor_objects(&afgc, fh)?;
            let s12 = t.compose(&start, &mid1, &mid2, &s1, &s2)?;
            t.compose(&start, &mid2, &bd, &s12, &s3)
        })
    }
}

/// Builds `T⫽F` over `vbase`: hom objects with grade-`g` multiplicity `dim T(F(g)→[a,b])`,
/// identified with `T(aF(g)→b)` through `Θ(z) = (j_a⊗z);ε_{a,b}`, and composition and tensor
/// transported through `ν` and `e`.
///
/// Fails with `CoverageGap` when `F(g)`, `ν`, `e` or `[a,b]` is missing, with
/// `ClosednessDataMissing` when a counit is missing, and with `AdjointMismatch` when some `Θ`
/// is not bijective. The report covers the V-category and V-monoidal laws of the result.
pub fn quotient_construction(
    t: &VMonoidalCategory,
    vbase: Arc<BaseCategory>,
    f: &CenterData,
    closed: &ClosedData,
) -> Result<(VMonoidalCategory, Report)> {
    let one = t.unit_object();
    let group = vbase.group().clone();
    let missing: Vec<String> = group.elements().filter(|g| !f.objects.contains_key(g)).map(|g| format!("F({g})")).collect();
    if !missing.is_empty() {
        return Err(Error::CoverageGap { missing });
    }
    if f.objects[&0] != one {
        return Err(Error::AdjointMismatch(format!("F(0) = {} is not the unit {one}", f.objects[&0])));
    }
    let objs = t.objects();
    let unit = GradedObject::unit();
    let mut homs = HashMap::new();
    for a in &objs {
        for b in &objs {
            let ab = closed.hom.get(&(a.clone(), b.clone())).ok_or_else(|| Error::gap(format!("[{a}, {b}]")))?;
            let eps = closed
                .counit
                .get(&(a.clone(), b.clone()))
                .ok_or_else(|| Error::ClosednessDataMissing(format!("counit at ({a}, {b})")))?;
            let a_ab = t.tensor_objects(a, ab)?;
            let mut grades = Vec::new();
            let mut blocks = Vec::new();
            let mut elements = Vec::new();
            for g in group.elements() {
                let fg = &f.objects[&g];
                let src = t.hom(fg, ab)?;
                let afg = t.tensor_objects(a, fg)?;
                let tgt = t.hom(&afg, b)?;
                let theta = |z: &GradedMorphism| -> Result<GradedMorphism> {
                    let lifted = t.tensor_elements(a, a, fg, ab, &t.ident(a)?, z)?;
                    t.compose(&afg, &a_ab, b, &lifted, eps)
                };
                let basis = element_basis(t.base(), &src);
                for z in &basis {
                    elements.push(theta(z)?);
                }
                let map = MorphismMap::new((&unit, &src), basis, (&unit, &tgt), theta)?;
                if !map.is_bijective() {
                    return Err(Error::AdjointMismatch(format!(
                        "Θ at ({a}, {g}, {b}) has rank {} between spaces of dimension {} and {}",
                        map.rank(),
                        map.source_dim(),
                        map.target_dim()
                    )));
                }
                blocks.push((grades.len(), Arc::new(map)));
                grades.extend(std::iter::repeat_n(g, src.dim()));
            }
            let hom = GradedObject::from_grades(grades);
            homs.insert((a.clone(), b.clone()), HomData { hom, blocks, elements });
        }
    }
    let q = Quotient { t, vbase, f, homs };
    let out = VMonoidalCategory::materialize(&q)?;
    let mut report = verify_vcategory(&out);
    report.extend(verify_vmonoidal(&out));
    Ok((out, report))
}

/// Checks that `iso_{a→b}: Q(a→b) → C(a→b)` is invertible and carries identities,
/// composition and tensor of `q` to those of `c`. Both categories must share their objects.
pub fn check_isomorphic(
    q: &dyn VMonoidal,
    c: &dyn VMonoidal,
    iso: &(dyn Fn(&Obj, &Obj) -> Result<GradedMorphism> + Sync),
) -> Report {
    let base = c.base().clone();
    let objs = q.objects();
    let mut report = Report::default();
    report.push(sweep("iso.objects", "same objects and object tensor", &[()], |_| {
        holds(Vec::new, || {
            let same = objs == c.objects();
            let mut tensor = true;
            for a in &objs {
                for b in &objs {
                    tensor &= q.tensor_objects(a, b)? == c.tensor_objects(a, b)?;
                }
            }
            Ok(same && tensor && q.unit_object() == c.unit_object())
        })
    }));
    let pairs: Vec<[&Obj; 2]> = objs.iter().flat_map(|a| objs.iter().map(move |b| [a, b])).collect();
    report.push(sweep("iso.invertible", "ψ_{a→b} is invertible", &pairs, |&[a, b]| {
        holds(|| labels(&[a, b]), || Ok(invert_morphism(&iso(a, b)?).is_some()))
    }));
    report.push(sweep("iso.ident", "j_a;ψ = j_a", &objs, |a| {
        instance(&base, || labels(&[a]), || Ok((q.ident(a)?.then(&iso(a, a)?)?, c.ident(a)?)))
    }));
    let triples: Vec<[&Obj; 3]> = pairs.iter().flat_map(|&[a, b]| objs.iter().map(move |d| [a, b, d])).collect();
    report.push(sweep("iso.comp", "(ψ⊗ψ);comp = comp;ψ", &triples, |&[a, b, d]| {
        instance(&base, || labels(&[a, b, d]), || {
            let lhs = base.tensor_mor(&iso(a, b)?, &iso(b, d)?).then(&c.comp(a, b, d)?)?;
            Ok((lhs, q.comp(a, b, d)?.then(&iso(a, d)?)?))
        })
    }));
    let quads: Vec<[&Obj; 4]> = triples.iter().flat_map(|&[a, b, d]| objs.iter().map(move |e| [a, b, d, e])).collect();
    report.push(sweep("iso.tensor", "(ψ⊗ψ);⊗ = ⊗;ψ", &quads, |&[a, b, x, d]| {
        instance(&base, || labels(&[a, b, x, d]), || {
            let (ac, bd) = (c.tensor_objects(a, x)?, c.tensor_objects(b, d)?);
            let lhs = base.tensor_mor(&iso(a, b)?, &iso(x, d)?).then(&c.tensor_homs(a, b, x, d)?)?;
            Ok((lhs, q.tensor_homs(a, b, x, d)?.then(&iso(&ac, &bd)?)?))
        })
    }));
    report
}
