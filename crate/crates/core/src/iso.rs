//! Backtracking search for isomorphisms of categories.
//!
//! Identities are matched first, pruned by hom-class counts; the remaining
//! arrows are matched inside the hom-classes fixed by the identity matching.
//! Each composite is checked as soon as its three arrows are matched.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{KernelError, Result};
use crate::functor::{functor_compose, functor_identity, validate_functor, FunctorMap, Variance};
use crate::kernel::{Arrow, ObjlessCategory};

/// Default size limit for isomorphism and equivalence searches.
pub const DEFAULT_SEARCH_CAP: usize = 64;

/// Isomorphism-invariant data for an identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ObjectSig {
    endo: usize,
    auto: usize,
    /// sorted `(|hom(i, x)|, |hom(x, i)|)` over all identities `x`
    links: Vec<(usize, usize)>,
}

/// Isomorphism-invariant data for an arrow.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ArrowSig {
    dom: usize,
    cod: usize,
    identity: bool,
    invertible: bool,
    idempotent: bool,
    /// `|{g : g . a = a}|`
    left_fixers: usize,
    /// `|{f : a . f = a}|`
    right_fixers: usize,
}

struct Profile {
    object_class: Vec<usize>,
    arrow_sig: Vec<ArrowSig>,
}

fn is_invertible(c: &ObjlessCategory, a: Arrow) -> bool {
    c.hom(c.cod(a), c.dom(a)).iter().any(|&g| {
        c.compose(g, a) == Some(c.dom(a)) && c.compose(a, g) == Some(c.cod(a))
    })
}

fn object_sig(c: &ObjlessCategory, i: Arrow) -> ObjectSig {
    let mut links: Vec<(usize, usize)> = c
        .identities()
        .iter()
        .map(|&x| (c.hom(i, x).len(), c.hom(x, i).len()))
        .collect();
    links.sort_unstable();
    ObjectSig {
        endo: c.hom(i, i).len(),
        auto: c.hom(i, i).iter().filter(|&&a| is_invertible(c, a)).count(),
        links,
    }
}

/// Signatures for both categories with object classes numbered jointly.
fn profiles(c: &ObjlessCategory, d: &ObjlessCategory) -> (Profile, Profile) {
    let sc: Vec<ObjectSig> = c.identities().iter().map(|&i| object_sig(c, i)).collect();
    let sd: Vec<ObjectSig> = d.identities().iter().map(|&i| object_sig(d, i)).collect();
    let mut classes = BTreeMap::new();
    for s in sc.iter().chain(sd.iter()) {
        let next = classes.len();
        classes.entry(s.clone()).or_insert(next);
    }
    let build = |cat: &ObjlessCategory, sigs: &[ObjectSig]| {
        let mut object_class = vec![usize::MAX; cat.len()];
        for (&i, s) in cat.identities().iter().zip(sigs) {
            object_class[i.index()] = classes[s];
        }
        let mut left = vec![0usize; cat.len()];
        let mut right = vec![0usize; cat.len()];
        for ((g, f), h) in cat.entries() {
            if h == f {
                left[f.index()] += 1;
            }
            if h == g {
                right[g.index()] += 1;
            }
        }
        let arrow_sig = cat
            .arrows()
            .map(|a| ArrowSig {
                dom: object_class[cat.dom(a).index()],
                cod: object_class[cat.cod(a).index()],
                identity: cat.is_identity(a),
                invertible: is_invertible(cat, a),
                idempotent: cat.compose(a, a) == Some(a),
                left_fixers: left[a.index()],
                right_fixers: right[a.index()],
            })
            .collect();
        Profile {
            object_class,
            arrow_sig,
        }
    };
    (build(c, &sc), build(d, &sd))
}

struct Search<'a> {
    c: &'a ObjlessCategory,
    d: &'a ObjlessCategory,
    pc: Profile,
    pd: Profile,
    order: Vec<Arrow>,
    /// composites of `c` that become checkable at each step
    checks: Vec<Vec<(Arrow, Arrow, Arrow)>>,
    fwd: Vec<Option<Arrow>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn candidates(&self, a: Arrow) -> Vec<Arrow> {
        let c = self.c;
        let pool: Vec<Arrow> = if c.is_identity(a) {
            self.d.identities().to_vec()
        } else {
            let fd = self.fwd[c.dom(a).index()].expect("identities are matched first");
            let fc = self.fwd[c.cod(a).index()].expect("identities are matched first");
            self.d.hom(fd, fc).to_vec()
        };
        pool.into_iter()
            .filter(|b| !self.used[b.index()])
            .filter(|b| self.pc.arrow_sig[a.index()] == self.pd.arrow_sig[b.index()])
            .collect()
    }

    fn consistent(&self, step: usize) -> bool {
        let a = self.order[step];
        if self.c.is_identity(a) {
            let fa = self.fwd[a.index()].unwrap();
            if self.pc.object_class[a.index()] != self.pd.object_class[fa.index()] {
                return false;
            }
            for &x in &self.order[..=step] {
                let fx = self.fwd[x.index()].unwrap();
                if self.c.hom(a, x).len() != self.d.hom(fa, fx).len()
                    || self.c.hom(x, a).len() != self.d.hom(fx, fa).len()
                {
                    return false;
                }
            }
        }
        self.checks[step].iter().all(|&(g, f, h)| {
            let img = |x: Arrow| self.fwd[x.index()].unwrap();
            self.d.compose(img(g), img(f)) == Some(img(h))
        })
    }

    fn run(&mut self, step: usize) -> bool {
        if step == self.order.len() {
            return true;
        }
        let a = self.order[step];
        for b in self.candidates(a) {
            self.fwd[a.index()] = Some(b);
            self.used[b.index()] = true;
            if self.consistent(step) && self.run(step + 1) {
                return true;
            }
            self.used[b.index()] = false;
            self.fwd[a.index()] = None;
        }
        false
    }
}

fn check_cap(c: &ObjlessCategory, cap: usize, what: &str) -> Result<()> {
    if c.len() > cap {
        return Err(KernelError::Capacity {
            what: what.to_string(),
            size: c.len(),
            limit: cap,
        });
    }
    Ok(())
}

/// Finds a functor with a strict two-sided inverse, using the default cap.
pub fn find_category_isomorphism(
    c: &Arc<ObjlessCategory>,
    d: &Arc<ObjlessCategory>,
) -> Result<Option<FunctorMap>> {
    find_category_isomorphism_capped(c, d, DEFAULT_SEARCH_CAP)
}

pub fn find_category_isomorphism_capped(
    c: &Arc<ObjlessCategory>,
    d: &Arc<ObjlessCategory>,
    cap: usize,
) -> Result<Option<FunctorMap>> {
    check_cap(c, cap, "left category")?;
    check_cap(d, cap, "right category")?;
    if **c == **d {
        return Ok(Some(functor_identity(c).renamed("iso")));
    }
    if c.len() != d.len()
        || c.identities().len() != d.identities().len()
        || c.table_len() != d.table_len()
    {
        return Ok(None);
    }
    let (pc, pd) = profiles(c, d);
    let mut sc: Vec<&ArrowSig> = pc.arrow_sig.iter().collect();
    let mut sd: Vec<&ArrowSig> = pd.arrow_sig.iter().collect();
    sc.sort();
    sd.sort();
    if sc != sd {
        return Ok(None);
    }

    let mut order: Vec<Arrow> = c.identities().to_vec();
    let mut rest: Vec<Arrow> = c.arrows().filter(|&a| !c.is_identity(a)).collect();
    rest.sort_by_key(|&a| (c.dom(a), c.cod(a), a));
    order.extend(rest);
    let mut pos = vec![0; c.len()];
    for (k, a) in order.iter().enumerate() {
        pos[a.index()] = k;
    }
    let mut checks = vec![Vec::new(); c.len()];
    for ((g, f), h) in c.entries() {
        let last = pos[g.index()].max(pos[f.index()]).max(pos[h.index()]);
        checks[last].push((g, f, h));
    }
    let mut search = Search {
        c,
        d,
        pc,
        pd,
        order,
        checks,
        fwd: vec![None; c.len()],
        used: vec![false; d.len()],
    };
    if !search.run(0) {
        return Ok(None);
    }
    let map = search.fwd.into_iter().map(Option::unwrap).collect();
    let f = FunctorMap::from_arrows("iso", c.clone(), d.clone(), map, Variance::Covariant);
    assert!(
        is_verified_isomorphism(&f),
        "isomorphism search returned an unverifiable witness"
    );
    Ok(Some(f))
}

/// Re-checks an isomorphism witness: a valid functor with a valid inverse,
/// composing to identities both ways.
pub fn is_verified_isomorphism(f: &FunctorMap) -> bool {
    let Some(g) = f.inverse() else { return false };
    validate_functor(f).ok
        && validate_functor(&g).ok
        && functor_compose(&g, f).is_some_and(|gf| gf == functor_identity(f.source()))
        && functor_compose(f, &g).is_some_and(|fg| fg == functor_identity(f.target()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{fixtures, gen};

    #[test]
    fn self_isomorphism_is_identity() {
        for (_, c) in fixtures::pool() {
            let c = Arc::new(c);
            let f = find_category_isomorphism(&c, &c).unwrap().unwrap();
            assert_eq!(f, functor_identity(&c));
        }
    }

    #[test]
    fn relabelled_two_chain_is_found() {
        let c = Arc::new(fixtures::two_chain());
        let d = Arc::new(gen::gen_poset(&gen::FinitePoset::chain(2)).unwrap());
        let f = find_category_isomorphism(&c, &d).unwrap().unwrap();
        assert_eq!(f.apply("a").unwrap().unwrap(), "p0_le_p1");
        assert!(is_verified_isomorphism(&f));
    }

    #[test]
    fn walking_iso_is_not_isomorphic_to_one() {
        let w = Arc::new(fixtures::walking_iso());
        let one = Arc::new(fixtures::one());
        assert!(find_category_isomorphism(&w, &one).unwrap().is_none());
    }

    #[test]
    fn non_isomorphic_monoids_of_equal_size() {
        // Z2 against the two-element monoid with an idempotent
        let z2 = Arc::new(fixtures::z2());
        let idem = Arc::new(fixtures::idempotent_monoid());
        assert!(find_category_isomorphism(&z2, &idem).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let big = Arc::new(fixtures::fin_set_dup());
        let r = find_category_isomorphism_capped(&big, &big, 4);
        assert!(matches!(r, Err(KernelError::Capacity { limit: 4, .. })));
    }

    #[test]
    fn random_relabelling_is_recovered() {
        for seed in 0..30 {
            let c = gen::gen_random(seed, 16);
            let d = gen::relabel(&c, "r_", seed + 1000);
            let (c, d) = (Arc::new(c), Arc::new(d));
            let f = find_category_isomorphism(&c, &d).unwrap();
            assert!(f.is_some(), "seed {seed}");
        }
    }
}
