use std::collections::BTreeSet;
use std::sync::Arc;

use crate::base::{verify_base, GradedObject};
use crate::completion::{complete, completion_tensoring, equivalence_conditions, Completion};
use crate::enriched::{verify_vcategory, SelfEnrichment, VCategory};
use crate::error::{Error, Result};
use crate::json::base_to_json;
use crate::module::{check_representability, strong_module_check, vcat_to_module, Tensoring};
use crate::report::Report;
use crate::vmonoidal::{
    classify_center, monoidal_complete, monoidal_equivalence_conditions, tensored_iff_strong_check, verify_vmonoidal,
    VMonoidalCategory,
};

use super::inputs::{load_base, load_category, load_monoidal, load_tensoring, simples, Category};
use super::search::{search_tensoring, SearchOptions, SearchOutcome};
use super::{error_exit_code, parse_window, Outcome, RunReport, Source, EXIT_FAIL};

/// Dimension bound of the object window used by `validate base`.
const BASE_WINDOW_DIM: usize = 3;
const BASE_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidateKind {
    Base,
    Vcat,
    Vmonoidal,
    Tensoring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportKind {
    Base,
    Vcat,
    Vmonoidal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompleteOptions {
    pub monoidal: bool,
    pub dim_cap: usize,
}

/// Turns structural failures (coverage gaps, missing duals, non-representable
/// units) into a failing report; input errors stay errors.
fn run(command: &str, f: impl FnOnce() -> Result<Outcome>) -> Result<Outcome> {
    match f() {
        Err(e) if error_exit_code(&e) == EXIT_FAIL => Ok(Outcome::report_only(RunReport::from_error(command, &e))),
        other => other,
    }
}

/// The distinct weights in a tensoring's scope, in sorted order.
fn scope_weights(t: &dyn Tensoring) -> Vec<GradedObject> {
    t.scope().into_iter().map(|(_, v)| v).collect::<BTreeSet<_>>().into_iter().collect()
}

fn tensoring_for(src: &Source, c: &Category) -> Result<Arc<dyn Tensoring>> {
    load_tensoring(src, c.cat.clone(), c.vhat.as_ref())
}

/// `tensoring` requires `category`; the other kinds ignore it.
pub fn cmd_validate(kind: ValidateKind, file: &Source, category: Option<&Source>) -> Result<Outcome> {
    run("validate", || {
        let report = match kind {
            ValidateKind::Base => {
                let base = load_base(file)?;
                verify_base(&base, &SelfEnrichment::dim_window(&base, BASE_WINDOW_DIM), BASE_SEED)
            }
            ValidateKind::Vcat => verify_vcategory(&*load_category(file)?.cat),
            ValidateKind::Vmonoidal => {
                let m = load_monoidal(file)?;
                let mut r = verify_vcategory(&*m.cat);
                r.extend(verify_vmonoidal(&*m.cat));
                r
            }
            ValidateKind::Tensoring => {
                let cat_src = category.ok_or_else(|| Error::parse("--category", "validating a tensoring needs its category"))?;
                let c = load_category(cat_src)?;
                let t = tensoring_for(file, &c)?;
                let mut r = check_representability(&*t);
                if r.passed() {
                    let m = vcat_to_module(t.clone())?;
                    r.extend(m.check_strongly_unital());
                    r.extend(m.verify(&scope_weights(&*t)));
                }
                r
            }
        };
        Ok(Outcome::report_only(RunReport::new("validate", report)))
    })
}

/// Materializes `C̄` on `{a◀u}` for the objects `a` of the category and the
/// window's weights `u`; with `monoidal`, the monoidal completion of a
/// V-monoidal category instead.
pub fn cmd_complete(category: &Source, window: &Source, opts: CompleteOptions) -> Result<Outcome> {
    run("complete", || {
        if opts.monoidal {
            let m = load_monoidal(category)?;
            let weights = parse_window(window, m.cat.base())?;
            check_cap(&weights, opts.dim_cap)?;
            let mc = monoidal_complete(m.cat.clone(), &weights);
            let table = VMonoidalCategory::materialize(&mc)?;
            let mut report = verify_vcategory(&table);
            report.extend(verify_vmonoidal(&table));
            return Ok(Outcome { report: RunReport::new("complete", report), output: Some(table.to_json()) });
        }
        let c = load_category(category)?;
        let weights = parse_window(window, c.cat.base())?;
        check_cap(&weights, opts.dim_cap)?;
        let cbar = Arc::new(Completion::over(c.cat.clone(), &weights));
        let table = complete(c.cat.clone(), cbar.window())?;
        let mut report = verify_vcategory(&table);
        let module = vcat_to_module(Arc::new(completion_tensoring(cbar, &weights)))?;
        report.extend(strong_module_check(&module, &weights)?);
        Ok(Outcome { report: RunReport::new("complete", report), output: Some(table.to_json()) })
    })
}

fn check_cap(weights: &[GradedObject], cap: usize) -> Result<()> {
    let missing: Vec<String> =
        weights.iter().filter(|u| u.dim() > cap).map(|u| format!("{u} needs dimension {} > {cap}", u.dim())).collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::CoverageGap { missing })
    }
}

/// The four equivalent conditions and their agreement, for the weights in the
/// tensoring's scope; with `monoidal`, also the monoidal ones.
pub fn cmd_check_tensored(category: &Source, tensoring: &Source, monoidal: bool) -> Result<Outcome> {
    run("check-tensored", || {
        let report = if monoidal {
            let m = load_monoidal(category)?;
            let c = Category { cat: m.cat.clone(), vhat: m.vhat.clone(), table: None };
            let tc = tensoring_for(tensoring, &c)?;
            monoidal_equivalence_conditions(m.cat, tc.clone(), &scope_weights(&*tc))?
        } else {
            let c = load_category(category)?;
            let tc = tensoring_for(tensoring, &c)?;
            let weights = scope_weights(&*tc);
            equivalence_conditions(Arc::new(Completion::over(c.cat.clone(), &weights)), tc, &weights)?
        };
        Ok(Outcome::report_only(RunReport::new("check-tensored", report)))
    })
}

/// The center functor `(F, ν, e)` with its laws and the tensored/strong cross-check.
pub fn cmd_classify(vmonoidal: &Source, tensoring: &Source) -> Result<Outcome> {
    run("classify", || {
        let m = load_monoidal(vmonoidal)?;
        let c = Category { cat: m.cat.clone(), vhat: m.vhat.clone(), table: None };
        let tc = tensoring_for(tensoring, &c)?;
        let weights = scope_weights(&*tc);
        let (cls, mut report) = classify_center(m.cat.clone(), tc.clone(), &weights)?;
        report.extend(tensored_iff_strong_check(m.cat, tc, &weights)?);
        let mut run = RunReport::new("classify", report);
        run.note(if cls.strong { "braided strong monoidal" } else { "braided oplax monoidal" });
        Ok(Outcome { report: run, output: Some(cls.to_json()) })
    })
}

/// Weights default to the unit and the simple objects.
pub fn cmd_search_tensoring(
    category: &Source,
    weights: Option<&Source>,
    max_candidates: usize,
    seed: u64,
) -> Result<Outcome> {
    run("search-tensoring", || {
        let c = load_category(category)?;
        let weights = match weights {
            Some(w) => parse_window(w, c.cat.base())?,
            None => simples(c.cat.base()),
        };
        let opts = SearchOptions { weights, max_candidates, seed, attempts: 3 };
        let (out, report) = search_tensoring(c.cat.clone(), &opts)?;
        let run = RunReport::new("search-tensoring", report);
        match out {
            SearchOutcome::Found(t) => Ok(Outcome { report: run, output: Some(t.to_json()) }),
            SearchOutcome::NotFound { .. } => Ok(Outcome::report_only(run)),
        }
    })
}

/// The JSON form of a base, V-category or V-monoidal category.
pub fn cmd_export(kind: ExportKind, src: &Source) -> Result<Outcome> {
    run("export", || {
        let output = match kind {
            ExportKind::Base => base_to_json(&*load_base(src)?),
            ExportKind::Vcat => {
                let c = load_category(src)?;
                match c.table {
                    Some(t) => t.to_json(),
                    None => VCategory::materialize(&*c.cat)?.to_json(),
                }
            }
            ExportKind::Vmonoidal => {
                let m = load_monoidal(src)?;
                match m.table {
                    Some(t) => t.to_json(),
                    None => VMonoidalCategory::materialize(&*m.cat)?.to_json(),
                }
            }
        };
        Ok(Outcome { report: RunReport::new("export", Report::default()), output: Some(output) })
    })
}
