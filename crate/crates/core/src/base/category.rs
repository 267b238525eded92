use crate::error::{Error, Result};
use crate::report::{Check, Report, Witness};
use crate::scalars::Cyclotomic;

use super::{GradedMorphism, GradedObject, GroupSpec};

/// The base of enrichment: G-graded spaces with the braiding given by a bicharacter.
///
/// The bicharacter is χ(g,h) = ζ_m^{e(g,h)}, with `e` extended bilinearly from
/// the exponents supplied on pairs of generators.
#[derive(Debug, Clone)]
pub struct BaseCategory {
    group: GroupSpec,
    m: u32,
    generator_exponents: Vec<(usize, usize, u32)>,
    exp: Vec<u32>,
    chi: Vec<Cyclotomic>,
    chi_inv: Vec<Cyclotomic>,
}

impl BaseCategory {
    /// `gens` lists `(i, j, e)` meaning e(generator_i, generator_j) = e; missing pairs are 0.
    pub fn new(orders: Vec<u32>, m: u32, gens: &[(usize, usize, i64)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::parse("root_order", "must be positive"));
        }
        let group = GroupSpec::new(orders)?;
        let k = group.orders().len();
        let mut table = vec![vec![0u32; k]; k];
        let mut generator_exponents = Vec::new();
        for &(i, j, e) in gens {
            if i >= k || j >= k {
                return Err(Error::parse("chi", format!("generator index ({i},{j}) out of range")));
            }
            let e = e.rem_euclid(m as i64) as u32;
            table[i][j] = e;
            generator_exponents.push((i, j, e));
        }
        generator_exponents.sort_unstable();
        generator_exponents.dedup_by_key(|(i, j, _)| (*i, *j));
        let n = group.size();
        let tuples: Vec<Vec<u32>> = (0..n as u32).map(|g| group.tuple_of(g)).collect();
        let mut exp = Vec::with_capacity(n * n);
        for x in &tuples {
            for y in &tuples {
                let mut s: u64 = 0;
                for (i, xi) in x.iter().enumerate() {
                    for (j, yj) in y.iter().enumerate() {
                        s += *xi as u64 * *yj as u64 * table[i][j] as u64;
                    }
                }
                exp.push((s % m as u64) as u32);
            }
        }
        let chi = exp.iter().map(|e| Cyclotomic::root_of_unity(m, *e as i64)).collect();
        let chi_inv = exp.iter().map(|e| Cyclotomic::root_of_unity(m, -(*e as i64))).collect();
        Ok(BaseCategory { group, m, generator_exponents, exp, chi, chi_inv })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// The order m of the scalar field Q(ζ_m).
    pub fn root_order(&self) -> u32 {
        self.m
    }

    pub fn generator_exponents(&self) -> &[(usize, usize, u32)] {
        &self.generator_exponents
    }

    pub fn chi_exponent(&self, g: u32, h: u32) -> u32 {
        self.exp[g as usize * self.group.size() + h as usize]
    }

    pub fn chi(&self, g: u32, h: u32) -> &Cyclotomic {
        &self.chi[g as usize * self.group.size() + h as usize]
    }

    pub fn chi_inv(&self, g: u32, h: u32) -> &Cyclotomic {
        &self.chi_inv[g as usize * self.group.size() + h as usize]
    }

    pub fn one(&self) -> Cyclotomic {
        Cyclotomic::one(self.m)
    }

    pub fn scalar(&self, n: i64) -> Cyclotomic {
        Cyclotomic::from_int(self.m, n)
    }

    /// Checks that the exponent table is biadditive and normalized.
    pub fn validate_bicharacter(&self) -> Report {
        let n = self.group.size() as u32;
        let m = self.m;
        let g = &self.group;
        let mut report = Report::default();
        let mut norm = Check::new("bicharacter.normalized", "e(0,h) = e(g,0) = 0");
        for h in 0..n {
            norm.count();
            if self.chi_exponent(0, h) != 0 || self.chi_exponent(h, 0) != 0 {
                norm.fail(Witness::tuple([g.element_label(h)]));
                break;
            }
        }
        report.push(norm);
        let mut left = Check::new("bicharacter.additive_left", "e(g+g',h) = e(g,h) + e(g',h)");
        let mut right = Check::new("bicharacter.additive_right", "e(g,h+h') = e(g,h) + e(g,h')");
        'outer: for a in 0..n {
            for b in 0..n {
                for h in 0..n {
                    left.count();
                    right.count();
                    let l = self.chi_exponent(g.add(a, b), h);
                    let r = (self.chi_exponent(a, h) + self.chi_exponent(b, h)) % m;
                    if l != r && left.passed() {
                        left.fail(
                            Witness::tuple([g.element_label(a), g.element_label(h)])
                                .note(format!("with g' = {}: {} != {}", g.element_label(b), l, r)),
                        );
                    }
                    let l = self.chi_exponent(h, g.add(a, b));
                    let r = (self.chi_exponent(h, a) + self.chi_exponent(h, b)) % m;
                    if l != r && right.passed() {
                        right.fail(
                            Witness::tuple([g.element_label(h), g.element_label(a)])
                                .note(format!("with h' = {}: {} != {}", g.element_label(b), l, r)),
                        );
                    }
                    if !left.passed() && !right.passed() {
                        break 'outer;
                    }
                }
            }
        }
        report.push(left);
        report.push(right);
        report
    }

    // ----- objects -----

    pub fn tensor_obj(&self, u: &GradedObject, v: &GradedObject) -> GradedObject {
        let mut out = Vec::with_capacity(u.dim() * v.dim());
        for a in u.grades() {
            for b in v.grades() {
                out.push(self.group.add(*a, *b));
            }
        }
        GradedObject::from_grades(out)
    }

    pub fn tensor_objs(&self, objs: &[&GradedObject]) -> GradedObject {
        objs.iter().fold(GradedObject::unit(), |acc, o| self.tensor_obj(&acc, o))
    }

    /// u* with u*(g) = u(−g), in the same basis order.
    pub fn dual_obj(&self, u: &GradedObject) -> GradedObject {
        GradedObject::from_grades(u.grades().iter().map(|g| self.group.neg(*g)).collect())
    }

    /// The internal hom u*⊗v.
    pub fn internal_hom(&self, u: &GradedObject, v: &GradedObject) -> GradedObject {
        self.tensor_obj(&self.dual_obj(u), v)
    }

    /// Recovers `w` from `x = left ⊗ w`.
    pub fn strip_left(&self, x: &GradedObject, left: &GradedObject) -> Result<GradedObject> {
        let mismatch = || Error::ShapeMismatch(format!("{x} does not factor as {left} ⊗ w"));
        if left.dim() == 0 || !x.dim().is_multiple_of(left.dim()) {
            return Err(mismatch());
        }
        let n = x.dim() / left.dim();
        let shift = self.group.neg(left.grade(0));
        let w = GradedObject::from_grades((0..n).map(|j| self.group.add(x.grade(j), shift)).collect());
        if &self.tensor_obj(left, &w) != x {
            return Err(mismatch());
        }
        Ok(w)
    }

    // ----- morphisms -----

    pub fn identity(&self, u: &GradedObject) -> GradedMorphism {
        let rows = (0..u.dim()).map(|i| vec![(i as u32, self.one())]).collect();
        GradedMorphism::from_rows_unchecked(u.clone(), u.clone(), rows)
    }

    pub fn tensor_mor(&self, f: &GradedMorphism, g: &GradedMorphism) -> GradedMorphism {
        let dom = self.tensor_obj(f.dom(), g.dom());
        let cod = self.tensor_obj(f.cod(), g.cod());
        let gd = g.dom().dim() as u32;
        let mut rows = Vec::with_capacity(cod.dim());
        for fr in f.rows() {
            for gr in g.rows() {
                let mut row = Vec::with_capacity(fr.len() * gr.len());
                for (c1, a) in fr {
                    for (c2, b) in gr {
                        row.push((c1 * gd + c2, a * b));
                    }
                }
                rows.push(row);
            }
        }
        GradedMorphism::from_rows_unchecked(dom, cod, rows)
    }

    pub fn tensor_mors(&self, fs: &[&GradedMorphism]) -> GradedMorphism {
        let mut acc = self.identity(&GradedObject::unit());
        for f in fs {
            acc = self.tensor_mor(&acc, f);
        }
        acc
    }

    /// ev_u: u⊗u* → 1, the identity pairing.
    pub fn ev(&self, u: &GradedObject) -> GradedMorphism {
        let n = u.dim() as u32;
        let row = (0..n).map(|i| (i * n + i, self.one())).collect();
        GradedMorphism::from_rows_unchecked(self.tensor_obj(u, &self.dual_obj(u)), GradedObject::unit(), vec![row])
    }

    /// coev_u: 1 → u*⊗u, the identity copairing.
    pub fn coev(&self, u: &GradedObject) -> GradedMorphism {
        let n = u.dim();
        let cod = self.tensor_obj(&self.dual_obj(u), u);
        let mut rows = vec![Vec::new(); n * n];
        for i in 0..n {
            rows[i * n + i] = vec![(0, self.one())];
        }
        GradedMorphism::from_rows_unchecked(GradedObject::unit(), cod, rows)
    }

    /// β_{u,v}: u⊗v → v⊗u sending e_i⊗e_j to χ(u_i, v_j) e_j⊗e_i.
    pub fn braiding(&self, u: &GradedObject, v: &GradedObject) -> GradedMorphism {
        self.braid_with(u, v, false)
    }

    /// β_{u,v}^{-1}: v⊗u → u⊗v.
    pub fn braiding_inv(&self, u: &GradedObject, v: &GradedObject) -> GradedMorphism {
        self.braid_with(u, v, true)
    }

    /// The plain swap u⊗v → v⊗u with no scalars; the braiding of the trivial bicharacter.
    pub fn swap(&self, u: &GradedObject, v: &GradedObject) -> GradedMorphism {
        let (du, dv) = (u.dim(), v.dim());
        let mut rows = vec![Vec::new(); du * dv];
        for i in 0..du {
            for j in 0..dv {
                rows[j * du + i] = vec![((i * dv + j) as u32, self.one())];
            }
        }
        GradedMorphism::from_rows_unchecked(self.tensor_obj(u, v), self.tensor_obj(v, u), rows)
    }

    fn braid_with(&self, u: &GradedObject, v: &GradedObject, inverse: bool) -> GradedMorphism {
        let (du, dv) = (u.dim(), v.dim());
        let mut rows = vec![Vec::new(); du * dv];
        for i in 0..du {
            for j in 0..dv {
                let (g, h) = (u.grade(i), v.grade(j));
                if inverse {
                    rows[i * dv + j] = vec![((j * du + i) as u32, self.chi_inv(g, h).clone())];
                } else {
                    rows[j * du + i] = vec![((i * dv + j) as u32, self.chi(g, h).clone())];
                }
            }
        }
        if inverse {
            GradedMorphism::from_rows_unchecked(self.tensor_obj(v, u), self.tensor_obj(u, v), rows)
        } else {
            GradedMorphism::from_rows_unchecked(self.tensor_obj(u, v), self.tensor_obj(v, u), rows)
        }
    }

    /// The counit ε_{u→v} = ev_u ⊗ 1_v : u⊗u*⊗v → v.
    pub fn eval_counit(&self, u: &GradedObject, v: &GradedObject) -> GradedMorphism {
        self.tensor_mor(&self.ev(u), &self.identity(v))
    }

    /// Sends f: u⊗w → v to its mate w → u*⊗v, namely (coev_u ⊗ 1_w) then (1_{u*} ⊗ f).
    pub fn mate_forward_w(&self, u: &GradedObject, w: &GradedObject, f: &GradedMorphism) -> Result<GradedMorphism> {
        if &self.tensor_obj(u, w) != f.dom() {
            return Err(Error::ShapeMismatch(format!("domain {} is not {u} ⊗ {w}", f.dom())));
        }
        let (du, dw, dv) = (u.dim(), w.dim(), f.cod().dim());
        let mut rows = vec![Vec::new(); du * dv];
        for (r, row) in f.rows().iter().enumerate() {
            for (c, val) in row {
                let (i, j) = (*c as usize / dw, *c as usize % dw);
                rows[i * dv + r].push((j as u32, val.clone()));
            }
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|(c, _)| *c);
        }
        Ok(GradedMorphism::from_rows_unchecked(w.clone(), self.internal_hom(u, f.cod()), rows))
    }

    pub fn mate_forward(&self, u: &GradedObject, f: &GradedMorphism) -> Result<GradedMorphism> {
        let w = self.strip_left(f.dom(), u)?;
        self.mate_forward_w(u, &w, f)
    }

    /// Sends g: w → u*⊗v to its mate u⊗w → v, namely (1_u ⊗ g) then (ev_u ⊗ 1_v).
    pub fn mate_backward_v(&self, u: &GradedObject, v: &GradedObject, g: &GradedMorphism) -> Result<GradedMorphism> {
        if &self.internal_hom(u, v) != g.cod() {
            return Err(Error::ShapeMismatch(format!("codomain {} is not {u}* ⊗ {v}", g.cod())));
        }
        let (du, dv, dw) = (u.dim(), v.dim(), g.dom().dim());
        let mut rows = vec![Vec::new(); dv];
        for i in 0..du {
            for (r, row) in rows.iter_mut().enumerate() {
                for (j, val) in g.row(i * dv + r) {
                    row.push(((i * dw) as u32 + j, val.clone()));
                }
            }
        }
        Ok(GradedMorphism::from_rows_unchecked(self.tensor_obj(u, g.dom()), v.clone(), rows))
    }

    pub fn mate_backward(&self, u: &GradedObject, g: &GradedMorphism) -> Result<GradedMorphism> {
        let v = self.strip_left(g.cod(), &self.dual_obj(u))?;
        self.mate_backward_v(u, &v, g)
    }

    /// The element 1 → x*⊗y corresponding to f: x → y.
    pub fn name_of(&self, f: &GradedMorphism) -> Result<GradedMorphism> {
        self.mate_forward_w(f.dom(), &GradedObject::unit(), f)
    }

    /// Inverse of [`Self::name_of`]: reads p: 1 → x*⊗y as a morphism x → y.
    pub fn unname(&self, x: &GradedObject, y: &GradedObject, p: &GradedMorphism) -> Result<GradedMorphism> {
        if !p.dom().is_unit() {
            return Err(Error::ShapeMismatch(format!("{} is not the unit", p.dom())));
        }
        self.mate_backward_v(x, y, p)
    }

    /// Whether `f` is grade-preserving and invertible, with its inverse.
    pub fn inverse(&self, f: &GradedMorphism) -> Option<GradedMorphism> {
        crate::linalg::invert_morphism(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn svec() -> BaseCategory {
        BaseCategory::new(vec![2], 2, &[(0, 0, 1)]).unwrap()
    }

    #[test]
    fn braiding_scalars() {
        let b = svec();
        let pi = GradedObject::simple(1);
        let beta = b.braiding(&pi, &pi);
        assert_eq!(beta.entry(0, 0), Some(&b.scalar(-1)));
        let u = GradedObject::from_grades(vec![0, 1]);
        assert_eq!(b.braiding(&GradedObject::unit(), &u), b.identity(&u));
        let z4 = BaseCategory::new(vec![4], 4, &[(0, 0, 1)]).unwrap();
        let d1 = GradedObject::simple(1);
        assert_eq!(z4.braiding(&d1, &d1).entry(0, 0), Some(&Cyclotomic::root_of_unity(4, 1)));
    }

    #[test]
    fn bad_bicharacter_has_witness() {
        let b = BaseCategory::new(vec![2], 3, &[(0, 0, 1)]).unwrap();
        let r = b.validate_bicharacter();
        assert!(!r.passed());
        let w = r.first_failure().unwrap().witness.as_ref().unwrap();
        assert_eq!(w.tuple, vec!["1".to_string(), "1".to_string()]);
        assert!(svec().validate_bicharacter().passed());
    }

    #[test]
    fn mates_and_counit() {
        let b = svec();
        let u = GradedObject::from_grades(vec![0, 1, 1]);
        let v = GradedObject::from_grades(vec![1, 0]);
        let id = b.identity(&b.internal_hom(&u, &v));
        let counit = b.mate_backward(&u, &id).unwrap();
        assert_eq!(counit, b.eval_counit(&u, &v));
        assert_eq!(b.mate_forward(&u, &counit).unwrap(), id);
        let pi = GradedObject::simple(1);
        let m = b.mate_forward(&pi, &b.identity(&pi)).unwrap();
        assert_eq!(m.dom(), &GradedObject::unit());
        assert_eq!(m.entry(0, 0), Some(&b.one()));
    }
}
