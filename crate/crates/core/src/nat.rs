//! Natural transformations keyed by the identities of the source category.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{KernelError, Result};
use crate::functor::{same_category, FunctorMap};
use crate::kernel::{Arrow, ObjlessCategory};
use crate::report::{ValidationReport, ViolationKind};

#[derive(Clone)]
pub struct NatTransf {
    pub name: String,
    from: FunctorMap,
    to: FunctorMap,
    /// source identity -> target arrow
    components: BTreeMap<Arrow, Arrow>,
}

impl fmt::Debug for NatTransf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let src = self.from.source();
        let tgt = self.from.target();
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|(&i, &k)| format!("{}:{}", src.name(i), tgt.name(k)))
            .collect();
        f.debug_struct("NatTransf")
            .field("name", &self.name)
            .field("from", &self.from.name)
            .field("to", &self.to.name)
            .field("components", &comps)
            .finish()
    }
}

impl NatTransf {
    /// Pairs two parallel functors with components. Components keyed by a
    /// non-identity are rejected; missing ones are left for validation.
    pub fn new(
        name: impl Into<String>,
        from: FunctorMap,
        to: FunctorMap,
        components: BTreeMap<Arrow, Arrow>,
    ) -> Result<Self> {
        let name = name.into();
        if !same_category(from.source(), to.source()) || !same_category(from.target(), to.target())
        {
            return Err(KernelError::Mismatch(format!(
                "{name}: functors {} and {} are not parallel",
                from.name, to.name
            )));
        }
        if from.variance() != to.variance() {
            return Err(KernelError::Mismatch(format!(
                "{name}: functors {} and {} differ in variance",
                from.name, to.name
            )));
        }
        for &i in components.keys() {
            if !from.source().is_identity(i) {
                return Err(KernelError::NotAnIdentity(from.source().name(i).to_string()));
            }
        }
        Ok(Self {
            name,
            from,
            to,
            components,
        })
    }

    /// Components given as `(identity, arrow)` names.
    pub fn from_names<'a>(
        name: impl Into<String>,
        from: FunctorMap,
        to: FunctorMap,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut components = BTreeMap::new();
        for (i, k) in pairs {
            let i = from.source().identity(i)?;
            let k = from.target().arrow(k)?;
            if components.insert(i, k).is_some_and(|prev| prev != k) {
                return Err(KernelError::DuplicateName(format!(
                    "component at {}",
                    from.source().name(i)
                )));
            }
        }
        Self::new(name, from, to, components)
    }

    /// Identity transformation of a total functor.
    pub fn identity(f: &FunctorMap) -> Self {
        let components = f
            .source()
            .identities()
            .iter()
            .map(|&i| (i, f.at(i)))
            .collect();
        Self {
            name: format!("id_{}", f.name),
            from: f.clone(),
            to: f.clone(),
            components,
        }
    }

    pub fn from_functor(&self) -> &FunctorMap {
        &self.from
    }

    pub fn to_functor(&self) -> &FunctorMap {
        &self.to
    }

    pub fn source(&self) -> &ObjlessCategory {
        self.from.source()
    }

    pub fn target(&self) -> &ObjlessCategory {
        self.from.target()
    }

    pub fn component(&self, identity: Arrow) -> Option<Arrow> {
        self.components.get(&identity).copied()
    }

    pub fn components(&self) -> impl Iterator<Item = (Arrow, Arrow)> + '_ {
        self.components.iter().map(|(&i, &k)| (i, k))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Checks totality, typing of each component, and every naturality square.
pub fn validate_nat(t: &NatTransf) -> ValidationReport {
    let mut report = ValidationReport::new();
    // contravariant pairs are checked as covariant functors out of the opposite
    let f = t.from.as_covariant();
    let g = t.to.as_covariant();
    let (src, tgt) = (f.source(), f.target());
    for &i in src.identities() {
        let Some(k) = t.component(i) else {
            report.push(
                ViolationKind::Totality,
                &[src.name(i)],
                format!("{} has no component at {}", t.name, src.name(i)),
            );
            continue;
        };
        let (Some(fi), Some(gi)) = (f.get(i), g.get(i)) else {
            continue;
        };
        if tgt.dom(k) != fi || tgt.cod(k) != gi {
            report.push(
                ViolationKind::Typing,
                &[src.name(i), tgt.name(k)],
                format!(
                    "component {} at {} should go from {} to {} but goes from {} to {}",
                    tgt.name(k),
                    src.name(i),
                    tgt.name(fi),
                    tgt.name(gi),
                    tgt.name(tgt.dom(k)),
                    tgt.name(tgt.cod(k))
                ),
            );
        }
    }
    if !report.ok {
        return report;
    }
    for a in src.arrows() {
        let (x, y) = (src.dom(a), src.cod(a));
        let (tx, ty) = (t.components[&x], t.components[&y]);
        let (Some(fa), Some(ga)) = (f.get(a), g.get(a)) else {
            continue;
        };
        let left = tgt.compose(ty, fa);
        let right = tgt.compose(ga, tx);
        if left.is_none() || left != right {
            let show = |o: Option<Arrow>| o.map_or("undefined".to_string(), |v| tgt.name(v).to_string());
            report.push(
                ViolationKind::Naturality,
                &[src.name(a)],
                format!(
                    "square at {} fails: {} . {} = {} but {} . {} = {}",
                    src.name(a),
                    tgt.name(ty),
                    tgt.name(fa),
                    show(left),
                    tgt.name(ga),
                    tgt.name(tx),
                    show(right)
                ),
            );
        }
    }
    report
}

/// Inverse of `a`, if `a` is an isomorphism.
pub fn inverse_of(c: &ObjlessCategory, a: Arrow) -> Option<Arrow> {
    let mut found = c.hom(c.cod(a), c.dom(a)).iter().copied().filter(|&g| {
        c.compose(g, a) == Some(c.dom(a)) && c.compose(a, g) == Some(c.cod(a))
    });
    let first = found.next();
    debug_assert!(found.next().is_none(), "inverses are unique");
    first
}

/// Whether every component is an isomorphism. Expects a valid transformation.
pub fn is_natural_isomorphism(t: &NatTransf) -> bool {
    let tgt = t.target();
    t.source()
        .identities()
        .iter()
        .all(|i| t.component(*i).is_some_and(|k| inverse_of(tgt, k).is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::functor::{functor_identity, Variance};
    use std::sync::Arc;

    fn points_of_walking_iso() -> (FunctorMap, FunctorMap) {
        let one = Arc::new(fixtures::one());
        let w = Arc::new(fixtures::walking_iso());
        let pick = |obj: &str| {
            FunctorMap::from_pairs(obj, one.clone(), w.clone(), [("e", obj)], Variance::Covariant)
                .unwrap()
        };
        (pick("id_A"), pick("id_B"))
    }

    #[test]
    fn identity_transformation_is_natural_and_invertible() {
        for (_, c) in fixtures::pool() {
            let id = NatTransf::identity(&functor_identity(&Arc::new(c)));
            assert!(validate_nat(&id).ok);
            assert!(is_natural_isomorphism(&id));
        }
    }

    #[test]
    fn point_transformation_through_f() {
        let (a, b) = points_of_walking_iso();
        let t = NatTransf::from_names("t", a, b, [("e", "f")]).unwrap();
        assert!(validate_nat(&t).ok);
        assert!(is_natural_isomorphism(&t));
    }

    #[test]
    fn mistyped_component_is_reported() {
        let (a, b) = points_of_walking_iso();
        let t = NatTransf::from_names("t", a, b, [("e", "id_A")]).unwrap();
        let r = validate_nat(&t);
        assert!(r.has(ViolationKind::Typing), "{r}");
    }

    #[test]
    fn missing_component_is_a_totality_violation() {
        let (a, b) = points_of_walking_iso();
        let t = NatTransf::from_names("t", a, b, []).unwrap();
        assert!(validate_nat(&t).has(ViolationKind::Totality));
    }

    #[test]
    fn non_invertible_component() {
        let two = Arc::new(fixtures::two_chain());
        let one = Arc::new(fixtures::one());
        let pick = |obj: &str| {
            FunctorMap::from_pairs(obj, one.clone(), two.clone(), [("e", obj)], Variance::Covariant)
                .unwrap()
        };
        let t = NatTransf::from_names("t", pick("i0"), pick("i1"), [("e", "a")]).unwrap();
        assert!(validate_nat(&t).ok);
        assert!(!is_natural_isomorphism(&t));
    }

    #[test]
    fn naturality_failure_is_reported() {
        // constant functors at i0 and i1 out of the 2-chain are natural via a;
        // replace one component with a non-natural choice in Z2
        let two = Arc::new(fixtures::two_chain());
        let z2 = Arc::new(fixtures::z2());
        let f = FunctorMap::from_pairs(
            "F",
            two.clone(),
            z2.clone(),
            [("i0", "e"), ("i1", "e"), ("a", "s")],
            Variance::Covariant,
        )
        .unwrap();
        let g = FunctorMap::from_pairs(
            "G",
            two,
            z2,
            [("i0", "e"), ("i1", "e"), ("a", "e")],
            Variance::Covariant,
        )
        .unwrap();
        // square at a: t1 . s = e . t0 needs t1 = t0 . s
        let t = NatTransf::from_names("t", f, g, [("i0", "e"), ("i1", "e")]).unwrap();
        assert!(validate_nat(&t).has(ViolationKind::Naturality));
    }

    #[test]
    fn non_parallel_functors_are_rejected() {
        let (a, _) = points_of_walking_iso();
        let other = functor_identity(&Arc::new(fixtures::one()));
        assert!(matches!(
            NatTransf::new("t", a, other, BTreeMap::new()),
            Err(KernelError::Mismatch(_))
        ));
    }
}
