//! Functors stored as a single morphism-to-morphism map.
//!
//! There is no separate object map: the action on objects is the action on
//! identities.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{KernelError, Result};
use crate::kernel::{Arrow, ObjlessCategory};
use crate::name::MorphismName;
use crate::report::{ValidationReport, ViolationKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Variance {
    /// Variance of a composite.
    pub fn then(self, other: Variance) -> Variance {
        if self == other {
            Variance::Covariant
        } else {
            Variance::Contravariant
        }
    }
}

/// Two category handles denote the same category.
pub fn same_category(a: &Arc<ObjlessCategory>, b: &Arc<ObjlessCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A morphism map between two arrow-only categories.
///
/// The map may be partial; [`validate_functor`] reports missing arrows. Every
/// other operation expects a total map.
#[derive(Clone)]
pub struct FunctorMap {
    pub name: String,
    source: Arc<ObjlessCategory>,
    target: Arc<ObjlessCategory>,
    map: Vec<Option<Arrow>>,
    variance: Variance,
}

impl PartialEq for FunctorMap {
    /// Equal as functors; names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.variance == other.variance
            && same_category(&self.source, &other.source)
            && same_category(&self.target, &other.target)
            && self.map == other.map
    }
}

impl fmt::Debug for FunctorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .source
            .arrows()
            .map(|a| match self.get(a) {
                Some(b) => format!("{}->{}", self.source.name(a), self.target.name(b)),
                None => format!("{}->?", self.source.name(a)),
            })
            .collect();
        f.debug_struct("FunctorMap")
            .field("name", &self.name)
            .field("variance", &self.variance)
            .field("map", &pairs)
            .finish()
    }
}

impl FunctorMap {
    /// Builds a total functor from an arrow list indexed by source arrows.
    pub fn from_arrows(
        name: impl Into<String>,
        source: Arc<ObjlessCategory>,
        target: Arc<ObjlessCategory>,
        map: Vec<Arrow>,
        variance: Variance,
    ) -> Self {
        assert_eq!(map.len(), source.len(), "functor map must cover the source");
        Self {
            name: name.into(),
            source,
            target,
            map: map.into_iter().map(Some).collect(),
            variance,
        }
    }

    /// Builds a possibly partial functor from name pairs.
    pub fn from_pairs<'a>(
        name: impl Into<String>,
        source: Arc<ObjlessCategory>,
        target: Arc<ObjlessCategory>,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
        variance: Variance,
    ) -> Result<Self> {
        let mut map = vec![None; source.len()];
        for (from, to) in pairs {
            let (a, b) = (source.arrow(from)?, target.arrow(to)?);
            match map[a.index()] {
                Some(prev) if prev != b => {
                    return Err(KernelError::DuplicateName(format!("mapping of {from}")))
                }
                _ => map[a.index()] = Some(b),
            }
        }
        Ok(Self {
            name: name.into(),
            source,
            target,
            map,
            variance,
        })
    }

    pub fn source(&self) -> &Arc<ObjlessCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ObjlessCategory> {
        &self.target
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn get(&self, a: Arrow) -> Option<Arrow> {
        self.map[a.index()]
    }

    /// Image of `a`. Panics if the map leaves `a` out.
    pub fn at(&self, a: Arrow) -> Arrow {
        self.map[a.index()].unwrap_or_else(|| {
            panic!(
                "functor {} does not map {}",
                self.name,
                self.source.name(a)
            )
        })
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    /// Image of `a` by name.
    pub fn apply(&self, a: &str) -> Result<Option<&MorphismName>> {
        Ok(self.get(self.source.arrow(a)?).map(|b| self.target.name(b)))
    }

    /// `(source, image)` name pairs for the mapped arrows.
    pub fn pairs(&self) -> impl Iterator<Item = (&MorphismName, &MorphismName)> {
        self.source
            .arrows()
            .filter_map(|a| self.get(a).map(|b| (self.source.name(a), self.target.name(b))))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The same functor seen as a covariant functor out of the opposite of
    /// its source. Covariant functors come back unchanged.
    pub fn as_covariant(&self) -> FunctorMap {
        match self.variance {
            Variance::Covariant => self.clone(),
            Variance::Contravariant => FunctorMap {
                name: self.name.clone(),
                source: Arc::new(self.source.opposite()),
                target: self.target.clone(),
                map: self.map.clone(),
                variance: Variance::Covariant,
            },
        }
    }

    /// Inverse map, when this functor is a bijection on morphisms.
    pub fn inverse(&self) -> Option<FunctorMap> {
        if self.source.len() != self.target.len() || !self.is_total() {
            return None;
        }
        let mut inv = vec![None; self.target.len()];
        for a in self.source.arrows() {
            let slot = &mut inv[self.at(a).index()];
            if slot.is_some() {
                return None;
            }
            *slot = Some(a);
        }
        Some(FunctorMap {
            name: format!("{}_inv", self.name),
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
            variance: self.variance,
        })
    }

    /// Hom-class of the target that a valid functor sends `hom(from, to)` into.
    pub fn image_hom(&self, from: Arrow, to: Arrow) -> (Arrow, Arrow) {
        match self.variance {
            Variance::Covariant => (self.at(from), self.at(to)),
            Variance::Contravariant => (self.at(to), self.at(from)),
        }
    }
}

/// Checks totality, preservation of identities and of composition.
pub fn validate_functor(f: &FunctorMap) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (src, tgt) = (&f.source, &f.target);
    for a in src.arrows() {
        if f.get(a).is_none() {
            report.push(
                ViolationKind::Totality,
                &[src.name(a)],
                format!("{} does not map {}", f.name, src.name(a)),
            );
        }
    }
    let co = f.variance == Variance::Covariant;
    for &i in src.identities() {
        if let Some(j) = f.get(i) {
            if !tgt.is_identity(j) {
                report.push(
                    ViolationKind::IdentityPreservation,
                    &[src.name(i), tgt.name(j)],
                    format!(
                        "identity {} is sent to {}, which is not an identity",
                        src.name(i),
                        tgt.name(j)
                    ),
                );
            }
        }
    }
    for a in src.arrows() {
        let Some(b) = f.get(a) else { continue };
        let (d, c) = if co {
            (tgt.dom(b), tgt.cod(b))
        } else {
            (tgt.cod(b), tgt.dom(b))
        };
        for (end, expected, label) in [(src.dom(a), d, "domain"), (src.cod(a), c, "codomain")] {
            if let Some(img) = f.get(end) {
                if tgt.is_identity(img) && img != expected {
                    report.push(
                        ViolationKind::IdentityPreservation,
                        &[src.name(a), src.name(end), tgt.name(img)],
                        format!(
                            "{label} identity {} of {} goes to {}, not to the matching identity {} of {}",
                            src.name(end),
                            src.name(a),
                            tgt.name(img),
                            tgt.name(expected),
                            tgt.name(b)
                        ),
                    );
                }
            }
        }
    }
    for ((g, h), gh) in src.entries() {
        if report.is_full() {
            break;
        }
        let (Some(fg), Some(fh), Some(fgh)) = (f.get(g), f.get(h), f.get(gh)) else {
            continue;
        };
        let image = if co { tgt.compose(fg, fh) } else { tgt.compose(fh, fg) };
        let shown = if co {
            format!("{} . {}", tgt.name(fg), tgt.name(fh))
        } else {
            format!("{} . {}", tgt.name(fh), tgt.name(fg))
        };
        match image {
            Some(x) if x == fgh => {}
            Some(x) => report.push(
                ViolationKind::CompositionPreservation,
                &[src.name(g), src.name(h)],
                format!(
                    "{} . {} = {} maps to {}, but {shown} = {}",
                    src.name(g),
                    src.name(h),
                    src.name(gh),
                    tgt.name(fgh),
                    tgt.name(x)
                ),
            ),
            None => report.push(
                ViolationKind::CompositionPreservation,
                &[src.name(g), src.name(h)],
                format!(
                    "{} . {} is defined but {shown} is not",
                    src.name(g),
                    src.name(h)
                ),
            ),
        }
    }
    report
}

/// The identity functor of a category.
pub fn functor_identity(c: &Arc<ObjlessCategory>) -> FunctorMap {
    FunctorMap::from_arrows(
        "id",
        c.clone(),
        c.clone(),
        c.arrows().collect(),
        Variance::Covariant,
    )
}

/// `psi . phi`, defined when the target of `phi` is the source of `psi`.
pub fn functor_compose(psi: &FunctorMap, phi: &FunctorMap) -> Option<FunctorMap> {
    if !same_category(&phi.target, &psi.source) {
        return None;
    }
    // positions are name-ordered, so equal categories agree on them
    let map = phi
        .map
        .iter()
        .map(|m| m.and_then(|b| psi.get(b)))
        .collect();
    Some(FunctorMap {
        name: format!("{}_after_{}", psi.name, phi.name),
        source: phi.source.clone(),
        target: psi.target.clone(),
        map,
        variance: psi.variance.then(phi.variance),
    })
}

/// Identity functor on the source.
pub fn functor_dom(phi: &FunctorMap) -> FunctorMap {
    functor_identity(&phi.source)
}

/// Identity functor on the target.
pub fn functor_cod(phi: &FunctorMap) -> FunctorMap {
    functor_identity(&phi.target)
}

/// Whether every hom-class lands in the hom-class predicted by the variance.
pub fn respects_hom_classes(f: &FunctorMap) -> bool {
    let src = &f.source;
    let tgt = &f.target;
    let ids = src.identities();
    ids.iter().all(|&i| {
        ids.iter().all(|&j| {
            let (fi, fj) = f.image_hom(i, j);
            src.hom(i, j)
                .iter()
                .all(|&a| tgt.hom(fi, fj).contains(&f.at(a)))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn chain_to_z2(pairs: &[(&str, &str)]) -> FunctorMap {
        FunctorMap::from_pairs(
            "F",
            Arc::new(fixtures::two_chain()),
            Arc::new(fixtures::z2()),
            pairs.iter().copied(),
            Variance::Covariant,
        )
        .unwrap()
    }

    #[test]
    fn identity_functor_is_valid() {
        let c = Arc::new(fixtures::two_chain());
        let id = functor_identity(&c);
        assert!(validate_functor(&id).ok);
        assert_eq!(id.pairs().filter(|(a, b)| a == b).count(), 3);
    }

    #[test]
    fn collapsing_two_chain_onto_z2_is_a_functor() {
        let f = chain_to_z2(&[("i0", "e"), ("i1", "e"), ("a", "s")]);
        let r = validate_functor(&f);
        assert!(r.ok, "{r}");
        assert!(respects_hom_classes(&f));
    }

    #[test]
    fn identity_sent_to_non_identity_is_reported() {
        let f = chain_to_z2(&[("i0", "s"), ("i1", "e"), ("a", "s")]);
        let r = validate_functor(&f);
        assert!(r.has(ViolationKind::IdentityPreservation), "{r}");
    }

    #[test]
    fn partial_map_is_a_totality_violation() {
        let f = chain_to_z2(&[("i0", "e"), ("a", "s")]);
        let r = validate_functor(&f);
        assert_eq!(r.of_kind(ViolationKind::Totality).count(), 1);
    }

    #[test]
    fn unknown_target_name_is_an_error() {
        let r = FunctorMap::from_pairs(
            "F",
            Arc::new(fixtures::two_chain()),
            Arc::new(fixtures::z2()),
            [("i0", "nope")],
            Variance::Covariant,
        );
        assert_eq!(r.unwrap_err(), KernelError::NameNotFound("nope".into()));
    }

    #[test]
    fn composition_with_identities() {
        let f = chain_to_z2(&[("i0", "e"), ("i1", "e"), ("a", "s")]);
        let d = functor_dom(&f);
        let c = functor_cod(&f);
        assert_eq!(functor_compose(&f, &d).unwrap(), f);
        assert_eq!(functor_compose(&c, &f).unwrap(), f);
        assert!(functor_compose(&f, &c).is_none());
        assert!(functor_compose(&d, &f).is_none());
        assert_eq!(functor_dom(&d), d);
        assert_eq!(functor_cod(&d), d);
    }

    #[test]
    fn two_contravariant_functors_compose_covariantly() {
        let c = Arc::new(fixtures::two_chain());
        let op = Arc::new(c.opposite());
        let names: Vec<_> = c.names().iter().map(|n| n.as_str()).collect();
        let to_op = FunctorMap::from_pairs(
            "T",
            c.clone(),
            op.clone(),
            names.iter().map(|n| (*n, *n)),
            Variance::Contravariant,
        )
        .unwrap();
        let back = FunctorMap::from_pairs(
            "B",
            op,
            c.clone(),
            names.iter().map(|n| (*n, *n)),
            Variance::Contravariant,
        )
        .unwrap();
        assert!(validate_functor(&to_op).ok);
        assert!(validate_functor(&back).ok);
        assert!(validate_functor(&to_op.as_covariant()).ok);
        let both = functor_compose(&back, &to_op).unwrap();
        assert_eq!(both.variance(), Variance::Covariant);
        assert_eq!(both, functor_identity(&c));
    }

    #[test]
    fn contravariant_law_is_checked() {
        // the identity map on a non-commutative category is not contravariant
        let c = Arc::new(fixtures::three_chain());
        let names: Vec<_> = c.names().iter().map(|n| n.as_str()).collect();
        let f = FunctorMap::from_pairs(
            "F",
            c.clone(),
            c.clone(),
            names.iter().map(|n| (*n, *n)),
            Variance::Contravariant,
        )
        .unwrap();
        assert!(!validate_functor(&f).ok);
    }
}
