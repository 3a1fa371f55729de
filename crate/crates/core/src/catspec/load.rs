//! Turning a parsed document into kernel values.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use super::document::{CatspecDocument, CategoryBody, FunctorAtom, FunctorExpr};
use super::parser::body_table;
use crate::bridge::to_objectless;
use crate::error::KernelError;
use crate::functor::{functor_compose, functor_identity, FunctorMap};
use crate::kernel::ObjlessCategory;
use crate::nat::NatTransf;
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("no {kind} named `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("category `{name}` is invalid:\n{report}")]
    InvalidCategory { name: String, report: ValidationReport },
    #[error("{context}: {source}")]
    Kernel {
        context: String,
        #[source]
        source: KernelError,
    },
    #[error("{0}")]
    Mismatch(String),
}

/// Categories of a document built once and shared; functors and
/// transformations are built on request.
pub struct Loader<'d> {
    doc: &'d CatspecDocument,
    categories: BTreeMap<&'d str, Result<Arc<ObjlessCategory>, LoadError>>,
}

fn build(name: &str, body: &CategoryBody) -> Result<Arc<ObjlessCategory>, LoadError> {
    let built = match body {
        CategoryBody::Objless { morphisms, table } => ObjlessCategory::new(morphisms.iter().cloned(), &body_table(table)),
        CategoryBody::Standard(s) => to_objectless(s),
    };
    match built {
        Ok(c) => Ok(Arc::new(c)),
        Err(KernelError::Invalid(report)) => Err(LoadError::InvalidCategory {
            name: name.to_string(),
            report,
        }),
        Err(e) => Err(LoadError::Kernel {
            context: format!("category `{name}`"),
            source: e,
        }),
    }
}

impl<'d> Loader<'d> {
    pub fn new(doc: &'d CatspecDocument) -> Self {
        let categories = doc
            .categories
            .iter()
            .map(|(n, b)| (n.as_str(), build(n, b)))
            .collect();
        Self { doc, categories }
    }

    pub fn document(&self) -> &'d CatspecDocument {
        self.doc
    }

    pub fn category(&self, name: &str) -> Result<Arc<ObjlessCategory>, LoadError> {
        self.categories.get(name).cloned().unwrap_or_else(|| {
            Err(LoadError::Unknown {
                kind: "category",
                name: name.to_string(),
            })
        })
    }

    /// Every category with its build result, by name.
    pub fn categories(&self) -> impl Iterator<Item = (&str, &Result<Arc<ObjlessCategory>, LoadError>)> {
        self.categories.iter().map(|(n, r)| (*n, r))
    }

    pub fn functor(&self, name: &str) -> Result<FunctorMap, LoadError> {
        let decl = self.doc.functors.get(name).ok_or_else(|| LoadError::Unknown {
            kind: "functor",
            name: name.to_string(),
        })?;
        let src = self.category(&decl.source)?;
        let tgt = self.category(&decl.target)?;
        FunctorMap::from_pairs(
            name,
            src,
            tgt,
            decl.map.iter().map(|(a, b)| (a.as_str(), b.as_str())),
            decl.variance,
        )
        .map_err(|e| LoadError::Kernel {
            context: format!("functor `{name}`"),
            source: e,
        })
    }

    pub fn functor_expr(&self, e: &FunctorExpr) -> Result<FunctorMap, LoadError> {
        let mut parts = e.0.iter().rev().map(|a| match a {
            FunctorAtom::Named(n) => self.functor(n),
            FunctorAtom::Identity(c) => Ok(functor_identity(&self.category(c)?).renamed(format!("id({c})"))),
        });
        let mut acc = parts
            .next()
            .ok_or_else(|| LoadError::Mismatch("empty functor expression".into()))??;
        for next in parts {
            let next = next?;
            acc = functor_compose(&next, &acc).ok_or_else(|| {
                LoadError::Mismatch(format!("cannot compose {} after {}", next.name, acc.name))
            })?;
        }
        Ok(acc.renamed(e.to_string()))
    }

    pub fn nat(&self, name: &str) -> Result<NatTransf, LoadError> {
        let decl = self.doc.nats.get(name).ok_or_else(|| LoadError::Unknown {
            kind: "transformation",
            name: name.to_string(),
        })?;
        let from = self.functor_expr(&decl.from)?;
        let to = self.functor_expr(&decl.to)?;
        let src_name = match decl.from.0.last() {
            Some(FunctorAtom::Named(f)) => self.doc.functors[f].source.clone(),
            Some(FunctorAtom::Identity(c)) => c.clone(),
            None => unreachable!("parser rejects empty expressions"),
        };
        // components of a standard source are keyed by objects
        let key = |k: &str| -> String {
            match &self.doc.categories[&src_name] {
                CategoryBody::Standard(s) => s
                    .id_of
                    .get(k)
                    .map_or_else(|| k.to_string(), |id| id.to_string()),
                CategoryBody::Objless { .. } => k.to_string(),
            }
        };
        let pairs: Vec<(String, String)> = decl
            .components
            .iter()
            .map(|(i, k)| (key(i), k.to_string()))
            .collect();
        NatTransf::from_names(
            name,
            from,
            to,
            pairs.iter().map(|(i, k)| (i.as_str(), k.as_str())),
        )
        .map_err(|e| LoadError::Kernel {
            context: format!("transformation `{name}`"),
            source: e,
        })
    }
}
