//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use vcwb::base::{verify_base, BaseCategory, GradedMorphism, GradedObject};
use vcwb::completion::{
    complete, completion_tensoring, double_completion_check, equivalence_conditions, rigidity_check, Completion,
};
use vcwb::enriched::{
    representable_vfunctor, verify_vcategory, verify_vcategory_filtered, verify_vfunctor, verify_vfunctor_filtered,
    verify_vnat, Obj, SelfEnrichment, VCat, VCategory, VFunctor, VNat,
};
use vcwb::fixtures::{svec, triv, vhat, z4};
use vcwb::module::{
    lift_agreement, roundtrip_check, vcat_to_module, Adjunction, AdjointData, SelfTensoring, Tensoring, TensoringData,
};
use vcwb::report::Report;
use vcwb::vmonoidal::{
    check_isomorphic, classify_center, completion_internal_hom, monoidal_equivalence_conditions, quotient_construction,
    self_enriched_monoidal, underlying_monoidal, verify_vmonoidal, verify_vmonoidal_with, CenterData, ClosedData,
    InterchangeBraid, MonoidalCompletion, VMonoidal, VMonoidalCategory, VerifyOptions,
};
use vcwb::workbench::{cmd_complete, CompleteOptions, Source};

type Outcome = Result<String, String>;

fn ensure(r: &Report, what: &str) -> Result<(), String> {
    if r.passed() {
        Ok(())
    } else {
        Err(format!("{what}: {:?} at {:?}", r.failures(), r.first_failure().and_then(|c| c.witness.as_ref())))
    }
}

fn simples(base: &BaseCategory) -> Vec<GradedObject> {
    base.group().elements().map(GradedObject::simple).collect()
}

fn window(base: &BaseCategory, d: usize) -> Vec<GradedObject> {
    SelfEnrichment::dim_window(base, d)
}

fn bump(base: &BaseCategory, f: &GradedMorphism, r: usize, c: usize) -> GradedMorphism {
    let v = f.entry(r, c).map_or(base.one(), |x| x + &base.one());
    f.with_entry(r, c, Some(v)).expect("admissible position")
}

/// Every admissible entry of every composition and identity table, raised by one,
/// must be caught by the verifier restricted to the tuples that read that table.
fn vcat_mutants(c: &VCategory) -> (usize, Vec<String>) {
    let base = c.base().clone();
    let objs = c.objects();
    let mut sites: Vec<(Vec<Obj>, GradedMorphism, usize, usize)> = Vec::new();
    for a in &objs {
        let j = c.ident(a).unwrap();
        sites.extend(j.admissible_positions().into_iter().map(|(r, k)| (vec![a.clone()], j.clone(), r, k)));
        for b in &objs {
            for d in &objs {
                let f = c.comp(a, b, d).unwrap();
                let key = vec![a.clone(), b.clone(), d.clone()];
                sites.extend(f.admissible_positions().into_iter().map(|(r, k)| (key.clone(), f.clone(), r, k)));
            }
        }
    }
    let survivors: Vec<String> = sites
        .par_iter()
        .filter_map(|(key, f, r, k)| {
            let g = bump(&base, f, *r, *k);
            let bad = match key.as_slice() {
                [a] => c.with_ident(a, g).unwrap(),
                [a, b, d] => c.with_comp(a, b, d, g).unwrap(),
                _ => unreachable!(),
            };
            let keep = |t: &[&Obj]| key.iter().all(|o| t.contains(&o));
            let caught = !verify_vcategory_filtered(&bad, &keep).passed();
            (!caught).then(|| format!("{key:?} ({r},{k})"))
        })
        .collect();
    (sites.len(), survivors)
}

fn vfunctor_mutants(f: &VFunctor) -> (usize, Vec<String>) {
    let base = f.source().base().clone();
    let objs = f.source().objects();
    let mut sites = Vec::new();
    for a in &objs {
        for b in &objs {
            let m = f.mor(a, b).unwrap();
            sites.extend(m.admissible_positions().into_iter().map(|(r, k)| (a.clone(), b.clone(), m.clone(), r, k)));
        }
    }
    let survivors: Vec<String> = sites
        .par_iter()
        .filter_map(|(a, b, m, r, k)| {
            let bad = f.with_component(a, b, bump(&base, m, *r, *k)).unwrap();
            let keep = |t: &[&Obj]| t.contains(&a) && t.contains(&b);
            (verify_vfunctor_filtered(&bad, &keep).passed()).then(|| format!("{a}→{b} ({r},{k})"))
        })
        .collect();
    (sites.len(), survivors)
}

fn vnat_mutants(s: &VNat) -> (usize, Vec<String>) {
    let objs = s.source().source().objects();
    let base = s.source().source().base().clone();
    let mut sites = Vec::new();
    for a in &objs {
        let m = s.component(a).unwrap();
        sites.extend(m.admissible_positions().into_iter().map(|(r, k)| (a.clone(), m.clone(), r, k)));
    }
    let survivors: Vec<String> = sites
        .par_iter()
        .filter_map(|(a, m, r, k)| {
            let bad = s.with_component(a, bump(&base, m, *r, *k)).unwrap();
            verify_vnat(&bad).passed().then(|| format!("σ_{a} ({r},{k})"))
        })
        .collect();
    (sites.len(), survivors)
}

fn criterion_1() -> Outcome {
    let mut hexagons = 0;
    for base in [svec(), z4()] {
        let r = verify_base(&base, &window(&base, 3), 1);
        ensure(&r, "base laws")?;
        hexagons += r.check("braiding.hexagon_left").map_or(0, |c| c.instances);
    }
    let s = self_enriched_monoidal(svec(), &[GradedObject::simple(1)]);
    ensure(&verify_vmonoidal(&s), "braided interchange")?;
    let r = verify_vmonoidal_with(&s, VerifyOptions { braid: InterchangeBraid::Identity, sample: None });
    if r.check("vmonoidal.braided_interchange").is_some_and(|c| c.passed()) {
        return Err("identity-braiding mutant survived".into());
    }
    Ok(format!("{hexagons} hexagon instances; identity-braiding mutant rejected"))
}

fn criterion_2() -> Outcome {
    let t = triv();
    let vs = VCategory::materialize(&vhat(svec(), 2)).map_err(|e| e.to_string())?;
    let vz = VCategory::materialize(&vhat(z4(), 1)).map_err(|e| e.to_string())?;
    for (name, c) in [("triv", &t), ("vhat svec", &vs), ("vhat z4", &vz)] {
        ensure(&verify_vcategory(c), name)?;
    }
    ensure(&verify_vcategory(&vhat(svec(), 3)), "vhat svec dim 3")?;
    ensure(&verify_vcategory(&vhat(z4(), 2)), "vhat z4 dim 2")?;

    let v: Arc<dyn VCat> = Arc::new(vhat(svec(), 2));
    let id = VFunctor::identity(v.clone());
    let two = Obj::V(GradedObject::from_grades(vec![0, 1]));
    let rep = representable_vfunctor(v.clone(), &two).map_err(|e| e.to_string())?;
    ensure(&verify_vfunctor(&id), "identity functor")?;
    ensure(&verify_vfunctor(&rep), "representable functor")?;
    let nat = VNat::identity(id.clone());
    ensure(&verify_vnat(&nat), "identity transformation")?;

    let mut total = 0;
    let mut survivors = Vec::new();
    for c in [&t, &vs, &vz] {
        let (n, s) = vcat_mutants(c);
        total += n;
        survivors.extend(s);
    }
    for f in [&id, &rep] {
        let (n, s) = vfunctor_mutants(f);
        total += n;
        survivors.extend(s);
    }
    let (n, s) = vnat_mutants(&nat);
    total += n;
    survivors.extend(s);
    if !survivors.is_empty() {
        return Err(format!("{} of {total} mutants survived, first {}", survivors.len(), survivors[0]));
    }
    Ok(format!("{total} single-entry mutants, all caught"))
}

fn criterion_3() -> Outcome {
    let mut isos = 0;
    for (base, d) in [(svec(), 3), (z4(), 2)] {
        let v = Arc::new(vhat(base, d));
        let t: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(v.clone(), v.window().to_vec()));
        let m = vcat_to_module(t).map_err(|e| e.to_string())?;
        let adj = AdjointData::from_module(&m).map_err(|e| e.to_string())?;
        let r = roundtrip_check(&m, &adj).map_err(|e| e.to_string())?;
        ensure(&r, "round trip")?;
        isos += r.check("roundtrip.hom_iso").map_or(0, |c| c.instances);
    }
    Ok(format!("{isos} hom isomorphisms checked"))
}

fn criterion_4() -> Outcome {
    let mut adjunctions = 0;
    for base in [svec(), z4()] {
        let w = window(&base, 1);
        let v = Arc::new(SelfEnrichment::new(base.clone(), window(&base, 2)));
        let t: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(v.clone(), w.clone()));
        let mut adjs: Vec<Adjunction> = window(&base, 2).iter().map(|u| Adjunction::tensor_hom(v.clone(), u)).collect();
        adjs.push(Adjunction::identity(v.clone()));
        for adj in adjs {
            let r = lift_agreement(&adj, t.clone(), t.clone(), &w).map_err(|e| e.to_string())?;
            if !r.check("adjunction.lift_agreement").is_some_and(|c| c.passed()) {
                return Err(format!("verdicts disagree on {}", adj.left.name()));
            }
            adjunctions += 1;
        }
    }
    let c: Arc<dyn VCat> = Arc::new(triv());
    let t: Arc<dyn Tensoring> = Arc::new(TensoringData::trivial(c.clone()).map_err(|e| e.to_string())?);
    let r = lift_agreement(&Adjunction::identity(c), t.clone(), t, &[GradedObject::unit()]).map_err(|e| e.to_string())?;
    ensure(&r, "identity on triv")?;
    Ok(format!("{} adjunctions, 0 disagreements", adjunctions + 1))
}

fn criterion_5() -> Outcome {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let (triv_src, simples_src): (Source, Source) = ("builtin:triv".parse().unwrap(), "builtin:simples".parse().unwrap());
    let plain = cmd_complete(&triv_src, &simples_src, CompleteOptions { monoidal: false, dim_cap: 16 })
        .map_err(|e| e.to_string())?;
    let want = std::fs::read_to_string(golden.join("triv_completion.json")).map_err(|e| e.to_string())?;
    if plain.output_text().as_deref() != Some(want.as_str()) {
        return Err("completion differs from the golden skeleton".into());
    }
    if plain.report.verdict != vcwb::report::Status::Pass {
        return Err(format!("plain completion report: {:?}", plain.report.checks));
    }
    let mono = cmd_complete(&triv_src, &simples_src, CompleteOptions { monoidal: true, dim_cap: 16 })
        .map_err(|e| e.to_string())?;
    if mono.report.verdict != vcwb::report::Status::Pass {
        return Err("monoidal completion does not verify".into());
    }

    let weights = [GradedObject::unit(), GradedObject::simple(1)];
    let cbar = Arc::new(Completion::over(Arc::new(triv()), &weights));
    ensure(&verify_vcategory(&complete(cbar.cat().clone(), cbar.window()).map_err(|e| e.to_string())?), "C̄")?;
    let t = completion_tensoring(cbar.clone(), &weights);
    let mut alphas = 0;
    for x in cbar.window() {
        for u in &weights {
            for v in &weights {
                let a = t.alpha(x, u, v).map_err(|e| e.to_string())?;
                let from = t.act(x, &cbar.base().tensor_obj(u, v)).map_err(|e| e.to_string())?;
                let to = t.act(&t.act(x, u).map_err(|e| e.to_string())?, v).map_err(|e| e.to_string())?;
                if cbar.inverse(&from, &to, &a).map_err(|e| e.to_string())?.is_none() {
                    return Err(format!("α at ({x}, {u}, {v}) is not invertible"));
                }
                alphas += 1;
            }
        }
    }
    Ok(format!("golden match; {alphas} α components invertible"))
}

fn criterion_6() -> Outcome {
    for base in [svec(), z4()] {
        let v = Arc::new(vhat(base.clone(), 2));
        let w = simples(&base);
        let tc: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(v.clone(), w.clone()));
        let r = equivalence_conditions(Arc::new(Completion::over(v, &w)), tc, &w).map_err(|e| e.to_string())?;
        ensure(&r, "four conditions")?;
        if !r.check("condition.agreement").is_some_and(|c| c.passed()) {
            return Err("conditions diverge".into());
        }
        let s = Arc::new(self_enriched_monoidal(base.clone(), &w));
        let tc: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(s.vhat().clone(), w.clone()));
        let r = monoidal_equivalence_conditions(s, tc, &w).map_err(|e| e.to_string())?;
        ensure(&r, "monoidal conditions")?;
    }
    Ok("all conditions true on svec and z4, plain and monoidal".into())
}

fn criterion_7() -> Outcome {
    let mut zigzags = 0;
    for base in [svec(), z4()] {
        let r = rigidity_check(base.clone(), &window(&base, 2)).map_err(|e| e.to_string())?;
        ensure(&r, "rigidity")?;
        zigzags += r.check("rigidity.zigzag_left").map_or(0, |c| c.instances);
    }
    let ws = [GradedObject::unit(), GradedObject::simple(1)];
    let r = double_completion_check(Arc::new(triv()), &ws, &ws, 1).map_err(|e| e.to_string())?;
    ensure(&r, "double completion of triv")?;
    let r = double_completion_check(Arc::new(vhat(svec(), 1)), &ws, &ws, 7).map_err(|e| e.to_string())?;
    ensure(&r, "double completion of vhat")?;
    Ok(format!("{zigzags} dual objects; double completion equivalent on triv and vhat"))
}

fn criterion_8() -> Outcome {
    let base = svec();
    let w = simples(&base);
    let s = Arc::new(self_enriched_monoidal(base.clone(), &w));
    let tc: Arc<dyn Tensoring> = Arc::new(SelfTensoring::new(s.vhat().clone(), w.clone()));
    let (cls, r) = classify_center(s.clone(), tc, &w).map_err(|e| e.to_string())?;
    ensure(&r, "classification")?;
    for ((u, v), nu) in &cls.nu {
        if base.inverse(nu).is_none() {
            return Err(format!("ν_{{{u},{v}}} is not invertible"));
        }
    }
    if !r.check("center.mu_inverse").is_some_and(|c| c.passed() && c.instances == (w.len() * w.len()) as u64) {
        return Err("μ^F is not ν^{-1}".into());
    }
    let pi = Obj::V(GradedObject::simple(1));
    let e = cls.e(&pi, &GradedObject::simple(1)).map_err(|e| e.to_string())?;
    let minus_one = base.scalar(-1);
    if e.entries().map(|(_, _, x)| x.clone()).collect::<Vec<_>>() != vec![minus_one] {
        return Err(format!("e_(Π,FΠ) = {e:?}"));
    }

    let plain = Arc::new(BaseCategory::new(vec![1], base.root_order(), &[]).map_err(|e| e.to_string())?);
    let t = underlying_monoidal(&*s, plain).map_err(|e| e.to_string())?;
    let fdata = CenterData::from_classification(&*s, &cls).map_err(|e| e.to_string())?;
    let closed = ClosedData::from_duals(&*s).map_err(|e| e.to_string())?;
    let (q, r) = quotient_construction(&t, base.clone(), &fdata, &closed).map_err(|e| e.to_string())?;
    ensure(&r, "quotient")?;
    let orig = VMonoidalCategory::materialize(&*s).map_err(|e| e.to_string())?;
    let iso = |a: &Obj, b: &Obj| Ok(base.identity(&orig.hom(a, b)?));
    ensure(&check_isomorphic(&q, &orig, &iso), "quotient round trip")?;
    Ok("ν invertible, μ^F = ν^-1, e_(Π,FΠ) = [-1], T⫽F ≅ original".into())
}

fn criterion_9() -> Outcome {
    let base = svec();
    let g = |gs: &[u32]| GradedObject::from_grades(gs.to_vec());
    let inner: Arc<dyn VMonoidal> = Arc::new(self_enriched_monoidal(base.clone(), &[g(&[1]), g(&[0, 1])]));
    let mut objs = Vec::new();
    for a in [GradedObject::unit(), g(&[1]), g(&[0, 1])] {
        for u in [GradedObject::unit(), g(&[1])] {
            objs.push(Obj::weighted(Obj::V(a.clone()), u));
        }
    }
    let cbar = Arc::new(Completion::new(inner.clone(), objs.clone()));
    let mc = Arc::new(MonoidalCompletion::new(cbar, inner.clone()));
    let group = base.group();
    let mut pairs = 0;
    for x in &objs {
        for z in &objs {
            let (hom, _, r) = completion_internal_hom(mc.clone(), x, z).map_err(|e| e.to_string())?;
            ensure(&r, &format!("θ̄ at ({x}, {z})"))?;
            // Brute force: count grades of u'*⊗C(ab→c)⊗w for y = b◀v, with u' = uv.
            let (c, w) = z.as_weighted().unwrap();
            for y in &objs {
                let xy = mc.tensor_objects(x, y).map_err(|e| e.to_string())?;
                let (ab, uv) = xy.as_weighted().unwrap();
                let h = inner.hom(ab, c).map_err(|e| e.to_string())?;
                let mut count = vec![0usize; group.size()];
                for p in uv.grades() {
                    for q in h.grades() {
                        for k in w.grades() {
                            count[group.add(group.add(group.neg(*p), *q), *k) as usize] += 1;
                        }
                    }
                }
                let got = mc.hom(y, &hom).map_err(|e| e.to_string())?;
                if group.elements().any(|e| got.multiplicity(e) != count[e as usize]) {
                    return Err(format!("[{x}, {z}] miscounts maps from {y}"));
                }
            }
            pairs += 1;
        }
    }
    Ok(format!("{} objects, {pairs} internal homs exact", objs.len()))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: &[&[&str]] = &[
        &["validate", "base", "builtin:svec"],
        &["validate", "vmonoidal", "builtin:vhat-svec-1"],
        &["complete", "builtin:vhat-svec-2", "builtin:simples"],
        &["complete", "builtin:triv", "builtin:simples", "--monoidal"],
        &["check-tensored", "builtin:vhat-z4-1", "builtin:canonical"],
        &["classify", "builtin:vhat-svec-1", "builtin:canonical"],
        &["search-tensoring", "builtin:vhat-svec-2", "--seed", "11"],
        &["export", "vmonoidal", "builtin:vhat-svec-1"],
    ];
    for args in runs {
        let mut seen: Option<Vec<u8>> = None;
        for (k, threads) in [Some("1"), Some("3"), None, Some("8")].into_iter().enumerate() {
            let out_path = dir.path().join(format!("out{k}.json"));
            let mut cmd = Command::new(env!("CARGO_BIN_EXE_vcwb"));
            cmd.args(*args).args(["--report", "json"]);
            let writes = matches!(args[0], "complete" | "classify" | "search-tensoring");
            if writes {
                cmd.arg("--out").arg(&out_path);
            }
            match threads {
                Some(n) => cmd.env("VCWB_THREADS", n),
                None => cmd.env_remove("VCWB_THREADS"),
            };
            let out = cmd.output().map_err(|e| e.to_string())?;
            if out.status.code() != Some(0) {
                return Err(format!("{args:?} exited {:?}", out.status.code()));
            }
            let mut bytes = out.stdout;
            if writes {
                bytes.extend(std::fs::read(&out_path).map_err(|e| e.to_string())?);
            }
            match &seen {
                None => seen = Some(bytes),
                Some(s) if *s == bytes => {}
                Some(_) => return Err(format!("{args:?} differs with VCWB_THREADS={threads:?}")),
            }
        }
    }
    Ok(format!("{} commands byte-identical over 4 runs each", runs.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("base-category laws", criterion_1),
        ("enriched axioms and mutation coverage", criterion_2),
        ("module round trip on V̂", criterion_3),
        ("lifting verdicts agree", criterion_4),
        ("completion of the one-object category", criterion_5),
        ("equivalent conditions for tensoredness", criterion_6),
        ("rigidity and double completion", criterion_7),
        ("center classification", criterion_8),
        ("closedness of the completion", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
