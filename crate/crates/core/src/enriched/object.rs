use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::base::{BaseCategory, GradedObject};
use crate::error::{Error, Result};
use crate::json::{object_from_json, object_to_json};

/// An object of some V-category.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obj {
    /// A named object of a user-supplied category.
    Named(Arc<str>),
    /// An object of V, seen as an object of the self-enrichment.
    V(GradedObject),
    /// The formal object `a◀u` of a completion.
    Weighted(Arc<Obj>, GradedObject),
}

impl Obj {
    pub fn named(s: &str) -> Self {
        Obj::Named(s.into())
    }

    pub fn v(u: GradedObject) -> Self {
        Obj::V(u)
    }

    pub fn weighted(a: Obj, u: GradedObject) -> Self {
        Obj::Weighted(Arc::new(a), u)
    }

    pub fn as_v(&self) -> Option<&GradedObject> {
        match self {
            Obj::V(u) => Some(u),
            _ => None,
        }
    }

    pub fn as_weighted(&self) -> Option<(&Obj, &GradedObject)> {
        match self {
            Obj::Weighted(a, u) => Some((a, u)),
            _ => None,
        }
    }

    pub(crate) fn expect_v(&self) -> Result<&GradedObject> {
        self.as_v().ok_or_else(|| Error::UnknownObject(self.to_string()))
    }

    pub(crate) fn expect_weighted(&self) -> Result<(&Obj, &GradedObject)> {
        self.as_weighted().ok_or_else(|| Error::UnknownObject(self.to_string()))
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Named(s) => write!(f, "{s}"),
            Obj::V(u) => write!(f, "{u}"),
            Obj::Weighted(a, u) => match **a {
                Obj::Weighted(..) => write!(f, "({a})◀{u}"),
                _ => write!(f, "{a}◀{u}"),
            },
        }
    }
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn obj_to_json(base: &BaseCategory, o: &Obj) -> Value {
    match o {
        Obj::Named(s) => Value::String(s.to_string()),
        Obj::V(u) => object_to_json(base, u),
        Obj::Weighted(a, u) => json!({ "base": obj_to_json(base, a), "weight": object_to_json(base, u) }),
    }
}

/// Strings are named objects, `{"base", "weight"}` is `a◀u`, anything else is read as an object of V.
pub fn obj_from_json(base: &BaseCategory, v: &Value, path: &str) -> Result<Obj> {
    match v {
        Value::String(s) => Ok(Obj::named(s)),
        Value::Object(m) if m.contains_key("base") => {
            let a = obj_from_json(base, &m["base"], &format!("{path}.base"))?;
            let w = m.get("weight").ok_or_else(|| Error::parse(path, "missing weight"))?;
            Ok(Obj::weighted(a, object_from_json(base, w, &format!("{path}.weight"))?))
        }
        Value::Object(_) => Ok(Obj::V(object_from_json(base, v, path)?)),
        _ => Err(Error::parse(path, "expected object label, graded object or {\"base\", \"weight\"}")),
    }
}
