//! Terminal objects, binary products and equalizers, checked by enumerating
//! every competing cone, and preservation of these limits by functors.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::KernelError;
use crate::functor::{FunctorMap, Variance};
use crate::kernel::{Arrow, ObjlessCategory};
use crate::name::MorphismName;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitKind {
    Terminal,
    Product,
    Equalizer,
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Terminal => "terminal",
            Self::Product => "product",
            Self::Equalizer => "equalizer",
        })
    }
}

/// A cone over a terminal, product or equalizer diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitCone {
    pub kind: LimitKind,
    /// an identity
    pub apex: Arrow,
    /// one leg per diagram node (none for terminal, two for products, one for equalizers)
    pub legs: Vec<Arrow>,
}

/// Why a cone is not universal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// apex of the competing cone
    pub object: MorphismName,
    pub detail: String,
}

pub fn terminal_objects(c: &ObjlessCategory) -> Vec<Arrow> {
    c.identities()
        .iter()
        .copied()
        .filter(|&t| is_terminal(c, t).is_ok())
        .collect()
}

/// `Ok` if `t` receives exactly one arrow from every identity.
pub fn is_terminal(c: &ObjlessCategory, t: Arrow) -> Result<(), Counterexample> {
    for &x in c.identities() {
        let n = c.hom(x, t).len();
        if n != 1 {
            return Err(Counterexample {
                object: c.name(x).clone(),
                detail: format!("{n} arrows from {} to {}", c.name(x), c.name(t)),
            });
        }
    }
    Ok(())
}

/// Arrows into `x` from stage `s`.
pub fn generalized_elements<'c>(
    c: &'c ObjlessCategory,
    x: &str,
    stage: &str,
) -> Result<Vec<&'c MorphismName>, KernelError> {
    c.hom_class(stage, x)
}

/// `Ok` if `(p, p1, p2)` is a product of `a` and `b`.
pub fn is_product_cone(
    c: &ObjlessCategory,
    a: Arrow,
    b: Arrow,
    p1: Arrow,
    p2: Arrow,
) -> Result<(), Counterexample> {
    let p = c.dom(p1);
    if c.dom(p2) != p || c.cod(p1) != a || c.cod(p2) != b {
        return Err(Counterexample {
            object: c.name(p).clone(),
            detail: "legs do not form a cone".into(),
        });
    }
    for &x in c.identities() {
        for &q1 in c.hom(x, a) {
            for &q2 in c.hom(x, b) {
                let n = c
                    .hom(x, p)
                    .iter()
                    .filter(|&&u| c.compose(p1, u) == Some(q1) && c.compose(p2, u) == Some(q2))
                    .count();
                if n != 1 {
                    return Err(Counterexample {
                        object: c.name(x).clone(),
                        detail: format!(
                            "cone ({}, {}) from {} factors {n} times through {}",
                            c.name(q1),
                            c.name(q2),
                            c.name(x),
                            c.name(p)
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// First universal product cone in name order.
pub fn binary_product(c: &ObjlessCategory, a: Arrow, b: Arrow) -> Option<LimitCone> {
    for &p in c.identities() {
        for &p1 in c.hom(p, a) {
            for &p2 in c.hom(p, b) {
                if is_product_cone(c, a, b, p1, p2).is_ok() {
                    return Some(LimitCone {
                        kind: LimitKind::Product,
                        apex: p,
                        legs: vec![p1, p2],
                    });
                }
            }
        }
    }
    None
}

pub fn parallel(c: &ObjlessCategory, f: Arrow, g: Arrow) -> bool {
    c.dom(f) == c.dom(g) && c.cod(f) == c.cod(g)
}

/// `Ok` if `e` equalizes `f` and `g` universally.
pub fn is_equalizer(c: &ObjlessCategory, f: Arrow, g: Arrow, e: Arrow) -> Result<(), Counterexample> {
    let x = c.dom(f);
    let ee = c.dom(e);
    if c.cod(e) != x || c.compose(f, e) != c.compose(g, e) {
        return Err(Counterexample {
            object: c.name(ee).clone(),
            detail: format!("{} does not equalize {} and {}", c.name(e), c.name(f), c.name(g)),
        });
    }
    for &z in c.identities() {
        for &h in c.hom(z, x) {
            if c.compose(f, h) != c.compose(g, h) {
                continue;
            }
            let n = c
                .hom(z, ee)
                .iter()
                .filter(|&&u| c.compose(e, u) == Some(h))
                .count();
            if n != 1 {
                return Err(Counterexample {
                    object: c.name(z).clone(),
                    detail: format!(
                        "{} equalizes but factors {n} times through {}",
                        c.name(h),
                        c.name(e)
                    ),
                });
            }
        }
    }
    Ok(())
}

/// First universal equalizer of a parallel pair, or `None` (also for a
/// non-parallel pair).
pub fn equalizer(c: &ObjlessCategory, f: Arrow, g: Arrow) -> Option<LimitCone> {
    if !parallel(c, f, g) {
        return None;
    }
    let x = c.dom(f);
    for &ee in c.identities() {
        for &e in c.hom(ee, x) {
            if is_equalizer(c, f, g, e).is_ok() {
                return Some(LimitCone {
                    kind: LimitKind::Equalizer,
                    apex: ee,
                    legs: vec![e],
                });
            }
        }
    }
    None
}

/// Which generating finite limits to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitScope {
    pub terminal: bool,
    pub products: bool,
    pub equalizers: bool,
}

impl LimitScope {
    pub const ALL: LimitScope = LimitScope {
        terminal: true,
        products: true,
        equalizers: true,
    };
}

impl Default for LimitScope {
    fn default() -> Self {
        Self::ALL
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitError {
    #[error("source category lacks {0}")]
    InapplicableScope(String),
    #[error("limit preservation is only checked for covariant functors")]
    Contravariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitFailure {
    pub kind: LimitKind,
    /// the source limit whose image is not a limit
    pub source: String,
    pub image: String,
    pub counterexample: Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    pub checked: usize,
    pub failures: Vec<LimitFailure>,
    /// scoped diagrams with no limit in the source; nothing to preserve there
    pub absent: Vec<String>,
}

impl LimitReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every parallel pair `(f, g)` of the category, including `f == g`.
fn parallel_pairs(c: &ObjlessCategory) -> Vec<(Arrow, Arrow)> {
    let mut out = Vec::new();
    for f in c.arrows() {
        for &g in c.hom(c.dom(f), c.cod(f)) {
            if f <= g {
                out.push((f, g));
            }
        }
    }
    out
}

/// Checks that the images of the scoped source limits are limits in the target.
///
/// Diagrams without a limit in the source are listed as absent. A scoped kind
/// with no instance at all in the source is an error.
pub fn preserves_finite_limits(f: &FunctorMap, scope: LimitScope) -> Result<LimitReport, LimitError> {
    if f.variance() != Variance::Covariant {
        return Err(LimitError::Contravariant);
    }
    let (src, tgt) = (f.source(), f.target());
    let n = |c: &ObjlessCategory, a: Arrow| c.name(a).to_string();

    let mut absent = Vec::new();
    let terminals = terminal_objects(src);
    if scope.terminal && terminals.is_empty() {
        return Err(LimitError::InapplicableScope("a terminal object".into()));
    }
    let mut products = Vec::new();
    if scope.products {
        let ids = src.identities();
        for (k, &a) in ids.iter().enumerate() {
            for &b in &ids[k..] {
                match binary_product(src, a, b) {
                    Some(cone) => products.push((a, b, cone)),
                    None => absent.push(format!("product of {} and {}", n(src, a), n(src, b))),
                }
            }
        }
        if products.is_empty() {
            return Err(LimitError::InapplicableScope("binary products".into()));
        }
    }
    let mut equalizers = Vec::new();
    if scope.equalizers {
        for (g, h) in parallel_pairs(src) {
            match equalizer(src, g, h) {
                Some(cone) => equalizers.push((g, h, cone)),
                None => absent.push(format!("equalizer of {} and {}", n(src, g), n(src, h))),
            }
        }
        if equalizers.is_empty() {
            return Err(LimitError::InapplicableScope("equalizers".into()));
        }
    }

    let mut report = LimitReport {
        checked: 0,
        failures: Vec::new(),
        absent,
    };
    for &t in &terminals {
        if !scope.terminal {
            break;
        }
        report.checked += 1;
        if let Err(ce) = is_terminal(tgt, f.at(t)) {
            report.failures.push(LimitFailure {
                kind: LimitKind::Terminal,
                source: format!("terminal {}", n(src, t)),
                image: n(tgt, f.at(t)),
                counterexample: ce,
            });
        }
    }
    for (a, b, cone) in products {
        report.checked += 1;
        let (p1, p2) = (cone.legs[0], cone.legs[1]);
        if let Err(ce) = is_product_cone(tgt, f.at(a), f.at(b), f.at(p1), f.at(p2)) {
            report.failures.push(LimitFailure {
                kind: LimitKind::Product,
                source: format!(
                    "{} = {} x {} via ({}, {})",
                    n(src, cone.apex),
                    n(src, a),
                    n(src, b),
                    n(src, p1),
                    n(src, p2)
                ),
                image: format!(
                    "({}, {}) over {} and {}",
                    n(tgt, f.at(p1)),
                    n(tgt, f.at(p2)),
                    n(tgt, f.at(a)),
                    n(tgt, f.at(b))
                ),
                counterexample: ce,
            });
        }
    }
    for (g, h, cone) in equalizers {
        report.checked += 1;
        let e = cone.legs[0];
        if let Err(ce) = is_equalizer(tgt, f.at(g), f.at(h), f.at(e)) {
            report.failures.push(LimitFailure {
                kind: LimitKind::Equalizer,
                source: format!("{} equalizes {} and {}", n(src, e), n(src, g), n(src, h)),
                image: n(tgt, f.at(e)),
                counterexample: ce,
            });
        }
    }
    Ok(report)
}

/// Names of the terminal identities.
pub fn terminal_names(c: &ObjlessCategory) -> BTreeSet<&MorphismName> {
    terminal_objects(c).into_iter().map(|t| c.name(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::functor::functor_identity;
    use crate::gen::{gen_poset, FinitePoset};
    use std::sync::Arc;

    fn id(c: &ObjlessCategory, s: &str) -> Arrow {
        c.identity(s).unwrap()
    }

    #[test]
    fn terminal_examples() {
        let two = fixtures::two_chain();
        assert_eq!(terminal_names(&two), BTreeSet::from([&crate::mname("i1")]));
        let fs = fixtures::fin_set2();
        assert_eq!(terminal_names(&fs), BTreeSet::from([&crate::mname("id_S1")]));
        let disc = crate::bridge::to_objectless(&crate::gen::gen_discrete(2)).unwrap();
        assert!(terminal_objects(&disc).is_empty());
    }

    #[test]
    fn generalized_element_counts() {
        let fs = fixtures::fin_set2();
        assert_eq!(generalized_elements(&fs, "id_S2", "id_S1").unwrap().len(), 2);
        assert!(generalized_elements(&fs, "id_S0", "id_S1").unwrap().is_empty());
        assert!(generalized_elements(&fs, "id_S2", "id_S2")
            .unwrap()
            .contains(&&crate::mname("id_S2")));
        assert!(generalized_elements(&fs, "S2_to_S2_00", "id_S1").is_err());
    }

    #[test]
    fn poset_products_are_meets() {
        let two = fixtures::two_chain();
        let p = binary_product(&two, id(&two, "i0"), id(&two, "i1")).unwrap();
        assert_eq!(p.apex, id(&two, "i0"));
        let q = binary_product(&two, id(&two, "i1"), id(&two, "i0")).unwrap();
        assert_eq!(q.apex, p.apex);
    }

    #[test]
    fn product_with_terminal_is_isomorphic_to_factor() {
        let fs = fixtures::fin_set2();
        let t = terminal_objects(&fs)[0];
        for &x in fs.identities() {
            let p = binary_product(&fs, x, t).unwrap();
            assert!(crate::equivalence::isomorphic_objects(&fs, p.apex, x));
        }
    }

    #[test]
    fn equalizer_of_distinct_points_is_empty() {
        let fs = fixtures::fin_set2();
        let f = fs.arrow("S1_to_S2_0").unwrap();
        let g = fs.arrow("S1_to_S2_1").unwrap();
        let e = equalizer(&fs, f, g).unwrap();
        assert_eq!(fs.name(e.apex), "id_S0");
        assert!(equalizer(&fs, f, fs.arrow("id_S1").unwrap()).is_none());
    }

    #[test]
    fn finset_has_all_products() {
        // |A x B| = |A| |B| within sizes 0..=2 only when the product fits
        let fs = fixtures::fin_set2();
        let s2 = id(&fs, "id_S2");
        assert!(binary_product(&fs, s2, s2).is_none());
    }

    #[test]
    fn identity_functor_preserves_limits() {
        let two = Arc::new(fixtures::two_chain());
        let r = preserves_finite_limits(&functor_identity(&two), LimitScope::ALL).unwrap();
        assert!(r.ok());
        assert!(r.checked > 0);
    }

    #[test]
    fn finset2_lacks_only_the_square_product() {
        let fs = Arc::new(fixtures::fin_set2());
        let r = preserves_finite_limits(&functor_identity(&fs), LimitScope::ALL).unwrap();
        assert!(r.ok());
        assert_eq!(r.absent, vec!["product of id_S2 and id_S2".to_string()]);
    }

    #[test]
    fn missing_terminal_makes_scope_inapplicable() {
        let disc = Arc::new(crate::bridge::to_objectless(&crate::gen::gen_discrete(2)).unwrap());
        let r = preserves_finite_limits(&functor_identity(&disc), LimitScope::ALL);
        assert_eq!(r, Err(LimitError::InapplicableScope("a terminal object".into())));
        let scope = LimitScope {
            terminal: false,
            ..LimitScope::ALL
        };
        assert!(preserves_finite_limits(&functor_identity(&disc), scope).unwrap().ok());
    }

    #[test]
    fn constant_functor_fails_terminal() {
        let two = Arc::new(fixtures::two_chain());
        let k = FunctorMap::from_pairs(
            "K",
            two.clone(),
            two.clone(),
            [("i0", "i0"), ("i1", "i0"), ("a", "i0")],
            Variance::Covariant,
        )
        .unwrap();
        let r = preserves_finite_limits(&k, LimitScope::ALL).unwrap();
        let term: Vec<_> = r.failures.iter().filter(|f| f.kind == LimitKind::Terminal).collect();
        assert_eq!(term.len(), 1);
        assert_eq!(term[0].counterexample.object, "i1");
    }

    #[test]
    fn meet_preserving_map_passes_products() {
        // diamond lattice onto the 2-chain by "is top"
        let diamond = FinitePoset::diamond();
        let chain = FinitePoset::chain(2);
        let d = Arc::new(gen_poset(&diamond).unwrap());
        let c = Arc::new(gen_poset(&chain).unwrap());
        let f = crate::adjunction::monotone_functor("top", &d, &diamond, &c, &chain, &[0, 0, 0, 1])
            .unwrap();
        let r = preserves_finite_limits(&f, LimitScope::ALL).unwrap();
        assert!(r.ok(), "{r:?}");
    }
}
