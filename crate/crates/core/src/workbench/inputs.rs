use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use serde_json::Value;

use crate::base::{BaseCategory, GradedObject};
use crate::enriched::{SelfEnrichment, VCat, VCategory};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::json::{base_from_json, object_from_json};
use crate::module::{SelfTensoring, Tensoring, TensoringData};
use crate::vmonoidal::{self_enriched_monoidal, VMonoidal, VMonoidalCategory};

use super::json_error;

/// A JSON file, or a built-in fixture named `builtin:NAME`.
///
/// Bases: `svec`, `z4`. Categories: `triv`, `vhat-<base>-<d>`. Tensorings:
/// `canonical`, `trivial`. Windows: `simples`, `dim-<d>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Builtin(String),
}

impl FromStr for Source {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.strip_prefix("builtin:") {
            Some(name) => Source::Builtin(name.to_string()),
            None => Source::File(PathBuf::from(s)),
        })
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::File(p) => write!(f, "{}", p.display()),
            Source::Builtin(n) => write!(f, "builtin:{n}"),
        }
    }
}

/// Paths in the returned errors are relative to the file; [`in_file`] adds its name.
pub(crate) fn read_value(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::parse("", e.to_string()))?;
    serde_json::from_str(&text).map_err(|e| json_error(&e))
}

/// Prefixes parse paths with the file they came from.
fn in_file<T>(src: &Source, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { path, message } if path.is_empty() => Error::parse(src.to_string(), message),
        Error::Parse { path, message } => Error::parse(format!("{src}: {path}"), message),
        other => other,
    })
}

fn unknown(kind: &str, name: &str) -> Error {
    Error::parse(format!("builtin:{name}"), format!("no built-in {kind} with this name"))
}

fn builtin_base(name: &str) -> Option<Arc<BaseCategory>> {
    match name {
        "svec" => Some(fixtures::svec()),
        "z4" => Some(fixtures::z4()),
        _ => None,
    }
}

/// `vhat-<base>-<d>` split into its base and dimension bound.
fn vhat_name(name: &str) -> Option<(Arc<BaseCategory>, usize)> {
    let rest = name.strip_prefix("vhat-")?;
    let (b, d) = rest.rsplit_once('-')?;
    Some((builtin_base(b)?, d.parse().ok().filter(|d| *d <= 4)?))
}

fn nonzero_window(base: &BaseCategory, d: usize) -> Vec<GradedObject> {
    SelfEnrichment::dim_window(base, d).into_iter().filter(|u| u.dim() > 0).collect()
}

pub(crate) fn load_base(src: &Source) -> Result<Arc<BaseCategory>> {
    match src {
        Source::Builtin(n) => builtin_base(n).ok_or_else(|| unknown("base", n)),
        Source::File(p) => in_file(src, read_value(p).and_then(|v| base_from_json(&v)).map(Arc::new)),
    }
}

/// A loaded V-category, remembering when it is a window of `V̂` so the
/// canonical tensoring can be offered.
#[derive(Clone)]
pub(crate) struct Category {
    pub cat: Arc<dyn VCat>,
    pub vhat: Option<Arc<SelfEnrichment>>,
    /// The materialized form, for file inputs and the one-object fixture.
    pub table: Option<Arc<VCategory>>,
}

pub(crate) fn load_category(src: &Source) -> Result<Category> {
    match src {
        Source::Builtin(n) if n == "triv" => {
            let t = Arc::new(fixtures::triv());
            Ok(Category { cat: t.clone(), vhat: None, table: Some(t) })
        }
        Source::Builtin(n) => {
            let (base, d) = vhat_name(n).ok_or_else(|| unknown("category", n))?;
            let v = Arc::new(SelfEnrichment::new(base.clone(), SelfEnrichment::dim_window(&base, d)));
            Ok(Category { cat: v.clone(), vhat: Some(v), table: None })
        }
        Source::File(p) => {
            let t = Arc::new(in_file(src, read_value(p).and_then(|v| VCategory::from_json(&v)))?);
            Ok(Category { cat: t.clone(), vhat: None, table: Some(t) })
        }
    }
}

#[derive(Clone)]
pub(crate) struct Monoidal {
    pub cat: Arc<dyn VMonoidal>,
    pub vhat: Option<Arc<SelfEnrichment>>,
    pub table: Option<Arc<VMonoidalCategory>>,
}

/// `vhat-<base>-<d>` is the monoidal self-enrichment on the nonzero objects of
/// dimension at most `d`, closed under `⊗` within that bound.
pub(crate) fn load_monoidal(src: &Source) -> Result<Monoidal> {
    match src {
        Source::Builtin(n) if n == "triv" => {
            let t = Arc::new(VMonoidalCategory::trivial(fixtures::svec(), "*"));
            Ok(Monoidal { cat: t.clone(), vhat: None, table: Some(t) })
        }
        Source::Builtin(n) => {
            let (base, d) = vhat_name(n).ok_or_else(|| unknown("V-monoidal category", n))?;
            let s = Arc::new(self_enriched_monoidal(base.clone(), &nonzero_window(&base, d)));
            Ok(Monoidal { vhat: Some(s.vhat().clone()), cat: s, table: None })
        }
        Source::File(p) => {
            let t = Arc::new(in_file(src, read_value(p).and_then(|v| VMonoidalCategory::from_json(&v)))?);
            Ok(Monoidal { cat: t.clone(), vhat: None, table: Some(t) })
        }
    }
}

/// `canonical` is `a◁v = a⊗v` on a window of `V̂` with weights the unit and the
/// simple objects, and `a◁1 = a` otherwise; `trivial` is always `a◁1 = a`.
pub(crate) fn load_tensoring(src: &Source, cat: Arc<dyn VCat>, vhat: Option<&Arc<SelfEnrichment>>) -> Result<Arc<dyn Tensoring>> {
    match src {
        Source::Builtin(n) if n == "canonical" => match vhat {
            Some(v) => Ok(Arc::new(SelfTensoring::new(v.clone(), simples(cat.base())))),
            None => Ok(Arc::new(TensoringData::trivial(cat)?)),
        },
        Source::Builtin(n) if n == "trivial" => Ok(Arc::new(TensoringData::trivial(cat)?)),
        Source::Builtin(n) => Err(unknown("tensoring", n)),
        Source::File(p) => Ok(Arc::new(in_file(src, read_value(p).and_then(|v| TensoringData::from_json(cat, &v)))?)),
    }
}

/// The unit followed by every other simple object.
pub(crate) fn simples(base: &BaseCategory) -> Vec<GradedObject> {
    base.group().elements().map(GradedObject::simple).collect()
}

/// A window file is an array of graded objects or `{"weights": [...]}`.
pub fn parse_window(src: &Source, base: &BaseCategory) -> Result<Vec<GradedObject>> {
    match src {
        Source::Builtin(n) if n == "simples" => Ok(simples(base)),
        Source::Builtin(n) => {
            let d = n.strip_prefix("dim-").and_then(|d| d.parse().ok()).ok_or_else(|| unknown("window", n))?;
            Ok(nonzero_window(base, d))
        }
        Source::File(p) => in_file(src, read_value(p).and_then(|v| weights_from_json(base, &v))),
    }
}

fn weights_from_json(base: &BaseCategory, v: &Value) -> Result<Vec<GradedObject>> {
    let items = v
        .get("weights")
        .unwrap_or(v)
        .as_array()
        .ok_or_else(|| Error::parse("weights", "expected an array of graded objects"))?;
    items.iter().enumerate().map(|(i, w)| object_from_json(base, w, &format!("weights[{i}]"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sources_and_builtins() {
        assert_eq!("builtin:svec".parse::<Source>().unwrap(), Source::Builtin("svec".into()));
        assert_eq!("a/b.json".parse::<Source>().unwrap(), Source::File("a/b.json".into()));
        assert_eq!(load_category(&"builtin:vhat-svec-2".parse().unwrap()).unwrap().cat.objects().len(), 6);
        assert!(matches!(load_base(&Source::Builtin("s3".into())), Err(Error::Parse { .. })));
        let base = fixtures::svec();
        assert_eq!(parse_window(&Source::Builtin("simples".into()), &base).unwrap(), vec![GradedObject::unit(), GradedObject::simple(1)]);
        let w = weights_from_json(&base, &serde_json::json!({"weights": [{"grades": [1, 0]}]})).unwrap();
        assert_eq!(w, vec![GradedObject::from_grades(vec![1, 0])]);
    }
}
