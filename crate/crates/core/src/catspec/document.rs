use std::collections::BTreeMap;
use std::fmt;

use super::diagnostic::Span;
use crate::bridge::StdCategory;
use crate::functor::{FunctorMap, Variance};
use crate::kernel::ObjlessCategory;
use crate::name::MorphismName;
use crate::nat::NatTransf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CategoryBody {
    /// Arrows (sorted) and the full composition table.
    Objless {
        morphisms: Vec<MorphismName>,
        table: BTreeMap<(MorphismName, MorphismName), MorphismName>,
    },
    Standard(StdCategory),
}

impl CategoryBody {
    pub fn from_objless(c: &ObjlessCategory) -> Self {
        CategoryBody::Objless {
            morphisms: c.names().to_vec(),
            table: c
                .entries()
                .map(|((g, f), h)| ((c.name(g).clone(), c.name(f).clone()), c.name(h).clone()))
                .collect(),
        }
    }

    /// Whether `name` is an arrow of this category.
    pub fn has_arrow(&self, name: &str) -> bool {
        match self {
            CategoryBody::Objless { morphisms, .. } => morphisms.iter().any(|m| m == name),
            CategoryBody::Standard(s) => s.arrows.contains_key(name),
        }
    }

    /// Whether `name` can key a component: any arrow of an arrow-only
    /// category (identity-ness is checked on loading), or an object.
    pub fn has_component_key(&self, name: &str) -> bool {
        match self {
            CategoryBody::Objless { .. } => self.has_arrow(name),
            CategoryBody::Standard(s) => s.objects.contains(name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorDecl {
    pub source: String,
    pub target: String,
    pub variance: Variance,
    pub map: BTreeMap<MorphismName, MorphismName>,
}

impl FunctorDecl {
    pub fn from_map(source: &str, target: &str, f: &FunctorMap) -> Self {
        FunctorDecl {
            source: source.to_string(),
            target: target.to_string(),
            variance: f.variance(),
            map: f.pairs().map(|(a, b)| (a.clone(), b.clone())).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum FunctorAtom {
    Named(String),
    /// `id(C)`
    Identity(String),
}

/// A chain `F . G . H` of functors, applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FunctorExpr(pub Vec<FunctorAtom>);

impl FunctorExpr {
    pub fn named(name: &str) -> Self {
        FunctorExpr(vec![FunctorAtom::Named(name.to_string())])
    }

    pub fn identity(category: &str) -> Self {
        FunctorExpr(vec![FunctorAtom::Identity(category.to_string())])
    }

    /// `self . before`
    pub fn after(mut self, before: FunctorExpr) -> Self {
        self.0.extend(before.0);
        self
    }
}

impl fmt::Display for FunctorAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorAtom::Named(n) => f.write_str(n),
            FunctorAtom::Identity(c) => write!(f, "id({c})"),
        }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" . ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatDecl {
    pub from: FunctorExpr,
    pub to: FunctorExpr,
    /// identity (arrow-only source) or object (standard source) -> arrow
    pub components: BTreeMap<String, MorphismName>,
}

impl NatDecl {
    /// Components keyed by the names of the source identities.
    pub fn from_transf(from: FunctorExpr, to: FunctorExpr, t: &NatTransf) -> Self {
        NatDecl {
            from,
            to,
            components: t
                .components()
                .map(|(i, k)| (t.source().name(i).to_string(), t.target().name(k).clone()))
                .collect(),
        }
    }
}

/// Where each entity was declared.
#[derive(Debug, Clone, Default)]
pub struct SourceSpans {
    pub categories: BTreeMap<String, Span>,
    pub functors: BTreeMap<String, Span>,
    pub nats: BTreeMap<String, Span>,
}

/// Named categories, functors and natural transformations. Equality ignores
/// source positions.
#[derive(Debug, Clone, Default)]
pub struct CatspecDocument {
    pub categories: BTreeMap<String, CategoryBody>,
    pub functors: BTreeMap<String, FunctorDecl>,
    pub nats: BTreeMap<String, NatDecl>,
    pub spans: SourceSpans,
}

impl PartialEq for CatspecDocument {
    fn eq(&self, other: &Self) -> bool {
        self.categories == other.categories && self.functors == other.functors && self.nats == other.nats
    }
}

impl Eq for CatspecDocument {}

impl CatspecDocument {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty() && self.functors.is_empty() && self.nats.is_empty()
    }

    pub fn add_objless(&mut self, name: &str, c: &ObjlessCategory) {
        self.categories.insert(name.to_string(), CategoryBody::from_objless(c));
    }

    pub fn add_standard(&mut self, name: &str, s: StdCategory) {
        self.categories.insert(name.to_string(), CategoryBody::Standard(s));
    }

    pub fn add_functor(&mut self, name: &str, source: &str, target: &str, f: &FunctorMap) {
        self.functors
            .insert(name.to_string(), FunctorDecl::from_map(source, target, f));
    }

    pub fn add_nat(&mut self, name: &str, from: FunctorExpr, to: FunctorExpr, t: &NatTransf) {
        self.nats.insert(name.to_string(), NatDecl::from_transf(from, to, t));
    }
}
