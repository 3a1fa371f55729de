//! Isomorphic objects, skeletons, and equivalence of categories.
//!
//! [`are_equivalent`] decides equivalence by comparing skeletons and then
//! assembles a full witness through the skeleton equivalences.
//! [`brute_force_equivalence`] searches the definition directly and serves
//! as an independent check on small inputs.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{KernelError, Result};
use crate::functor::{functor_compose, functor_identity, validate_functor, FunctorMap, Variance};
use crate::iso::{self, DEFAULT_SEARCH_CAP};
use crate::kernel::{Arrow, ObjlessCategory};
use crate::name::MorphismName;
use crate::nat::{inverse_of, is_natural_isomorphism, validate_nat, NatTransf};

/// Largest category accepted by [`brute_force_equivalence`].
pub const BRUTE_FORCE_CAP: usize = 12;

/// Inverse of the named morphism, if it is an isomorphism.
pub fn is_isomorphism<'c>(c: &'c ObjlessCategory, f: &str) -> Result<Option<&'c MorphismName>> {
    let a = c.arrow(f)?;
    Ok(inverse_of(c, a).map(|g| c.name(g)))
}

/// Whether some isomorphism runs between two identities.
pub fn isomorphic_objects(c: &ObjlessCategory, x: Arrow, y: Arrow) -> bool {
    c.hom(x, y).iter().any(|&f| inverse_of(c, f).is_some())
}

/// Partition of the identities into isomorphism classes.
///
/// Blocks are sorted internally and ordered by their least member.
pub fn iso_classes(c: &ObjlessCategory) -> Vec<Vec<Arrow>> {
    let ids = c.identities();
    let mut block_of: Vec<Option<usize>> = vec![None; ids.len()];
    let mut blocks: Vec<Vec<Arrow>> = Vec::new();
    for (k, &x) in ids.iter().enumerate() {
        if block_of[k].is_some() {
            continue;
        }
        let b = blocks.len();
        let mut block = Vec::new();
        for (m, &y) in ids.iter().enumerate().skip(k) {
            if isomorphic_objects(c, x, y) {
                block_of[m] = Some(b);
                block.push(y);
            }
        }
        blocks.push(block);
    }
    debug_assert!(is_equivalence_relation(c));
    blocks
}

/// Checks reflexivity, symmetry and transitivity of "isomorphic".
pub fn is_equivalence_relation(c: &ObjlessCategory) -> bool {
    let ids = c.identities();
    let rel: Vec<Vec<bool>> = ids
        .iter()
        .map(|&x| ids.iter().map(|&y| isomorphic_objects(c, x, y)).collect())
        .collect();
    let n = ids.len();
    (0..n).all(|i| rel[i][i])
        && (0..n).all(|i| (0..n).all(|j| rel[i][j] == rel[j][i]))
        && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(rel[i][j] && rel[j][k]) || rel[i][k])))
}

pub fn is_skeletal(c: &ObjlessCategory) -> bool {
    iso_classes(c).iter().all(|b| b.len() == 1)
}

/// A skeleton together with the data showing it is equivalent to the original.
#[derive(Debug, Clone)]
pub struct SkeletonResult {
    pub skeleton: Arc<ObjlessCategory>,
    /// skeleton -> original
    pub inclusion: FunctorMap,
    /// original -> skeleton
    pub retraction: FunctorMap,
    /// natural isomorphism from the identity of the original to inclusion . retraction
    pub witness: NatTransf,
    /// original identity -> chosen representative (original indices)
    pub representatives: BTreeMap<Arrow, Arrow>,
}

/// Order in which identities compete to represent their class.
fn seeded_rank(c: &ObjlessCategory, seed: u64) -> BTreeMap<Arrow, usize> {
    let mut ids = c.identities().to_vec();
    ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    ids.into_iter().enumerate().map(|(k, i)| (i, k)).collect()
}

/// Full subcategory on one representative per isomorphism class.
///
/// The representative of a class is the member ranked first by a shuffle of
/// the identities seeded with `seed`.
pub fn skeleton(c: &Arc<ObjlessCategory>, seed: u64) -> SkeletonResult {
    let rank = seeded_rank(c, seed);
    let mut representatives = BTreeMap::new();
    let mut reps = Vec::new();
    for block in iso_classes(c) {
        let rep = *block.iter().min_by_key(|i| rank[i]).expect("blocks are non-empty");
        reps.push(rep);
        for i in block {
            representatives.insert(i, rep);
        }
    }
    reps.sort();
    let skel = Arc::new(c.full_subcategory(&reps));

    // phi_x : x -> rep(x), identity on representatives
    let phi: BTreeMap<Arrow, Arrow> = representatives
        .iter()
        .map(|(&x, &r)| {
            let p = if x == r {
                x
            } else {
                *c.hom(x, r)
                    .iter()
                    .find(|&&f| inverse_of(c, f).is_some())
                    .expect("class members are isomorphic to their representative")
            };
            (x, p)
        })
        .collect();

    let to_skel = |a: Arrow| {
        skel.arrow(c.name(a).as_str())
            .expect("arrow between representatives lies in the skeleton")
    };
    let inclusion = FunctorMap::from_arrows(
        "inclusion",
        skel.clone(),
        c.clone(),
        skel.arrows()
            .map(|a| c.arrow(skel.name(a).as_str()).expect("skeleton arrows come from the original"))
            .collect(),
        Variance::Covariant,
    );
    let retraction = FunctorMap::from_arrows(
        "retraction",
        c.clone(),
        skel.clone(),
        c.arrows()
            .map(|a| {
                let (x, y) = (c.dom(a), c.cod(a));
                let back = inverse_of(c, phi[&x]).expect("phi is invertible");
                let moved = c
                    .compose(a, back)
                    .and_then(|ab| c.compose(phi[&y], ab))
                    .expect("conjugated arrow is composable");
                to_skel(moved)
            })
            .collect(),
        Variance::Covariant,
    );
    let round = functor_compose(&inclusion, &retraction).expect("retraction lands in the skeleton");
    let witness = NatTransf::new(
        "witness",
        functor_identity(c),
        round.renamed("inclusion_after_retraction"),
        phi,
    )
    .expect("identity and round trip are parallel");
    SkeletonResult {
        skeleton: skel,
        inclusion,
        retraction,
        witness,
        representatives,
    }
}

/// Functors both ways with natural isomorphisms to the identities.
#[derive(Debug, Clone)]
pub struct EquivalenceWitness {
    /// `C -> D`
    pub forward: FunctorMap,
    /// `D -> C`
    pub backward: FunctorMap,
    /// identity of `C` to `backward . forward`
    pub source_iso: NatTransf,
    /// identity of `D` to `forward . backward`
    pub target_iso: NatTransf,
}

/// Re-checks every part of an equivalence witness.
pub fn verify_equivalence(
    c: &Arc<ObjlessCategory>,
    d: &Arc<ObjlessCategory>,
    w: &EquivalenceWitness,
) -> std::result::Result<(), String> {
    let (f, g) = (&w.forward, &w.backward);
    for (functor, from, to) in [(f, c, d), (g, d, c)] {
        if functor.variance() != Variance::Covariant
            || **functor.source() != **from
            || **functor.target() != **to
        {
            return Err(format!("{} has the wrong source, target or variance", functor.name));
        }
        let r = validate_functor(functor);
        if !r.ok {
            return Err(format!("{} is not a functor:\n{r}", functor.name));
        }
    }
    let gf = functor_compose(g, f).ok_or("backward . forward is undefined")?;
    let fg = functor_compose(f, g).ok_or("forward . backward is undefined")?;
    for (t, from, to) in [
        (&w.source_iso, functor_identity(c), gf),
        (&w.target_iso, functor_identity(d), fg),
    ] {
        if *t.from_functor() != from || *t.to_functor() != to {
            return Err(format!("{} connects the wrong functors", t.name));
        }
        let r = validate_nat(t);
        if !r.ok {
            return Err(format!("{} is not natural:\n{r}", t.name));
        }
        if !is_natural_isomorphism(t) {
            return Err(format!("{} has a non-invertible component", t.name));
        }
    }
    Ok(())
}

fn cap(c: &ObjlessCategory, limit: usize, what: &str) -> Result<()> {
    if c.len() > limit {
        return Err(KernelError::Capacity {
            what: what.into(),
            size: c.len(),
            limit,
        });
    }
    Ok(())
}

/// Decides equivalence through skeletons.
///
/// With skeleton data `(I, R, phi)` on each side and an isomorphism `H`
/// between the skeletons, `F = I_D H R_C` and `G = I_C H^-1 R_D`; then
/// `G F = I_C R_C` and `F G = I_D R_D`, so the skeleton witnesses serve as
/// the two natural isomorphisms.
pub fn are_equivalent(
    c: &Arc<ObjlessCategory>,
    d: &Arc<ObjlessCategory>,
) -> Result<Option<EquivalenceWitness>> {
    cap(c, DEFAULT_SEARCH_CAP, "left category")?;
    cap(d, DEFAULT_SEARCH_CAP, "right category")?;
    let (sc, sd) = (skeleton(c, 0), skeleton(d, 0));
    let Some(h) = iso::find_category_isomorphism(&sc.skeleton, &sd.skeleton)? else {
        return Ok(None);
    };
    let h_inv = h.inverse().expect("isomorphisms invert");
    let chain = |fs: &[&FunctorMap]| {
        fs.iter()
            .skip(1)
            .fold(fs[0].clone(), |acc, f| {
                functor_compose(f, &acc).expect("skeleton functors chain")
            })
    };
    let forward = chain(&[&sc.retraction, &h, &sd.inclusion]).renamed("forward");
    let backward = chain(&[&sd.retraction, &h_inv, &sc.inclusion]).renamed("backward");
    let gf = functor_compose(&backward, &forward).expect("composable");
    let fg = functor_compose(&forward, &backward).expect("composable");
    let source_iso = NatTransf::new(
        "source_iso",
        functor_identity(c),
        gf.renamed("backward_after_forward"),
        sc.witness.components().collect(),
    )?;
    let target_iso = NatTransf::new(
        "target_iso",
        functor_identity(d),
        fg.renamed("forward_after_backward"),
        sd.witness.components().collect(),
    )?;
    let w = EquivalenceWitness {
        forward,
        backward,
        source_iso,
        target_iso,
    };
    if let Err(e) = verify_equivalence(c, d, &w) {
        panic!("equivalence witness failed re-validation: {e}");
    }
    Ok(Some(w))
}

/// Every covariant functor `c -> d`, found by backtracking over arrow images.
fn all_functors(c: &Arc<ObjlessCategory>, d: &Arc<ObjlessCategory>) -> Vec<Vec<Arrow>> {
    let mut order: Vec<Arrow> = c.identities().to_vec();
    order.extend(c.arrows().filter(|&a| !c.is_identity(a)));
    let mut pos = vec![0; c.len()];
    for (k, a) in order.iter().enumerate() {
        pos[a.index()] = k;
    }
    let mut checks = vec![Vec::new(); c.len()];
    for ((g, f), h) in c.entries() {
        checks[pos[g.index()].max(pos[f.index()]).max(pos[h.index()])].push((g, f, h));
    }
    let mut out = Vec::new();
    let mut img = vec![Arrow::from_index(0); c.len()];
    fn go(
        step: usize,
        c: &ObjlessCategory,
        d: &ObjlessCategory,
        order: &[Arrow],
        checks: &[Vec<(Arrow, Arrow, Arrow)>],
        img: &mut Vec<Arrow>,
        out: &mut Vec<Vec<Arrow>>,
    ) {
        if step == order.len() {
            out.push(img.clone());
            return;
        }
        let a = order[step];
        let candidates: Vec<Arrow> = if c.is_identity(a) {
            d.identities().to_vec()
        } else {
            d.hom(img[c.dom(a).index()], img[c.cod(a).index()]).to_vec()
        };
        for b in candidates {
            img[a.index()] = b;
            if checks[step]
                .iter()
                .all(|&(g, f, h)| d.compose(img[g.index()], img[f.index()]) == Some(img[h.index()]))
            {
                go(step + 1, c, d, order, checks, img, out);
            }
        }
    }
    go(0, c, d, &order, &checks, &mut img, &mut out);
    out
}

/// Components of a natural isomorphism from the identity of `c` to `gf`,
/// where `gf` is an arrow map `c -> c`.
fn natural_iso_to(c: &ObjlessCategory, gf: &[Arrow]) -> Option<BTreeMap<Arrow, Arrow>> {
    let ids = c.identities();
    let choices: Vec<Vec<Arrow>> = ids
        .iter()
        .map(|&x| {
            c.hom(x, gf[x.index()])
                .iter()
                .copied()
                .filter(|&k| inverse_of(c, k).is_some())
                .collect()
        })
        .collect();
    let mut pick = vec![Arrow::from_index(0); c.len()];
    fn go(
        k: usize,
        c: &ObjlessCategory,
        ids: &[Arrow],
        choices: &[Vec<Arrow>],
        gf: &[Arrow],
        pick: &mut Vec<Arrow>,
    ) -> bool {
        if k == ids.len() {
            // every square: tau_y . a = gf(a) . tau_x
            return c.arrows().all(|a| {
                let (x, y) = (c.dom(a), c.cod(a));
                c.compose(pick[y.index()], a).is_some()
                    && c.compose(pick[y.index()], a) == c.compose(gf[a.index()], pick[x.index()])
            });
        }
        for &t in &choices[k] {
            pick[ids[k].index()] = t;
            if go(k + 1, c, ids, choices, gf, pick) {
                return true;
            }
        }
        false
    }
    go(0, c, ids, &choices, gf, &mut pick)
        .then(|| ids.iter().map(|&i| (i, pick[i.index()])).collect())
}

/// Searches functor pairs and natural isomorphisms directly.
pub fn brute_force_equivalence(
    c: &Arc<ObjlessCategory>,
    d: &Arc<ObjlessCategory>,
) -> Result<Option<EquivalenceWitness>> {
    cap(c, BRUTE_FORCE_CAP, "left category")?;
    cap(d, BRUTE_FORCE_CAP, "right category")?;
    let forwards = all_functors(c, d);
    let backwards = all_functors(d, c);
    for f in &forwards {
        for g in &backwards {
            let gf: Vec<Arrow> = f.iter().map(|&b| g[b.index()]).collect();
            let Some(tau) = natural_iso_to(c, &gf) else { continue };
            let fg: Vec<Arrow> = g.iter().map(|&a| f[a.index()]).collect();
            let Some(sigma) = natural_iso_to(d, &fg) else { continue };
            let forward =
                FunctorMap::from_arrows("forward", c.clone(), d.clone(), f.clone(), Variance::Covariant);
            let backward =
                FunctorMap::from_arrows("backward", d.clone(), c.clone(), g.clone(), Variance::Covariant);
            let w = EquivalenceWitness {
                source_iso: NatTransf::new(
                    "source_iso",
                    functor_identity(c),
                    functor_compose(&backward, &forward).expect("composable"),
                    tau,
                )?,
                target_iso: NatTransf::new(
                    "target_iso",
                    functor_identity(d),
                    functor_compose(&forward, &backward).expect("composable"),
                    sigma,
                )?,
                forward,
                backward,
            };
            if let Err(e) = verify_equivalence(c, d, &w) {
                panic!("brute-force witness failed re-validation: {e}");
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{fixtures, gen};

    fn arc(c: ObjlessCategory) -> Arc<ObjlessCategory> {
        Arc::new(c)
    }

    fn names(c: &ObjlessCategory, block: &[Arrow]) -> Vec<String> {
        block.iter().map(|&a| c.name(a).to_string()).collect()
    }

    #[test]
    fn inverses() {
        let one = fixtures::one();
        assert_eq!(is_isomorphism(&one, "e").unwrap().unwrap(), "e");
        let z2 = fixtures::z2();
        assert_eq!(is_isomorphism(&z2, "s").unwrap().unwrap(), "s");
        let two = fixtures::two_chain();
        assert_eq!(is_isomorphism(&two, "a").unwrap(), None);
        assert_eq!(is_isomorphism(&two, "i1").unwrap().unwrap(), "i1");
        assert!(is_isomorphism(&two, "q").is_err());
    }

    #[test]
    fn iso_classes_of_fixtures() {
        let c = fixtures::fin_set_dup();
        let blocks: Vec<Vec<String>> = iso_classes(&c).iter().map(|b| names(&c, b)).collect();
        assert_eq!(
            blocks,
            vec![vec!["id_S0"], vec!["id_S1", "id_S1b"], vec!["id_S2"]]
        );
        let d = crate::bridge::to_objectless(&gen::gen_discrete(3)).unwrap();
        assert_eq!(iso_classes(&d).len(), 3);
        let w = fixtures::walking_iso();
        assert_eq!(iso_classes(&w).len(), 1);
        for (_, c) in fixtures::pool() {
            assert!(is_equivalence_relation(&c));
        }
    }

    #[test]
    fn skeletal_checks() {
        assert!(is_skeletal(&fixtures::fin_set2()));
        assert!(!is_skeletal(&fixtures::fin_set_dup()));
        assert!(is_skeletal(&crate::bridge::to_objectless(&gen::gen_discrete(4)).unwrap()));
    }

    #[test]
    fn skeleton_of_finsetdup_counts() {
        let c = arc(fixtures::fin_set_dup());
        for seed in 0..5 {
            let s = skeleton(&c, seed);
            assert_eq!(s.skeleton.identities().len(), 3);
            assert_eq!(s.skeleton.len(), 11);
            assert!(is_skeletal(&s.skeleton));
            assert!(validate_functor(&s.inclusion).ok);
            assert!(validate_functor(&s.retraction).ok);
            assert!(validate_nat(&s.witness).ok);
            assert!(is_natural_isomorphism(&s.witness));
            let ri = functor_compose(&s.retraction, &s.inclusion).unwrap();
            assert_eq!(ri, functor_identity(&s.skeleton));
        }
    }

    #[test]
    fn seeds_choose_different_representatives() {
        let c = arc(fixtures::fin_set_dup());
        let picks: std::collections::BTreeSet<Vec<String>> = (0..16)
            .map(|seed| names(&c, &skeleton(&c, seed).representatives.values().copied().collect::<Vec<_>>()))
            .collect();
        assert_eq!(picks.len(), 2);
    }

    #[test]
    fn walking_iso_skeleton_is_terminal() {
        let s = skeleton(&arc(fixtures::walking_iso()), 3);
        assert_eq!(s.skeleton.len(), 1);
    }

    #[test]
    fn skeleton_of_skeletal_category_is_itself() {
        for (_, c) in fixtures::pool() {
            if is_skeletal(&c) {
                let c = arc(c);
                assert_eq!(*skeleton(&c, 9).skeleton, *c);
            }
        }
    }

    #[test]
    fn equivalence_examples() {
        let w = arc(fixtures::walking_iso());
        let one = arc(fixtures::one());
        let wit = are_equivalent(&w, &one).unwrap().unwrap();
        assert!(verify_equivalence(&w, &one, &wit).is_ok());
        assert!(wit.forward.pairs().all(|(_, b)| b == "e"));
        assert!(brute_force_equivalence(&w, &one).unwrap().is_some());

        let two = arc(fixtures::two_chain());
        let disc = arc(crate::bridge::to_objectless(&gen::gen_discrete(2)).unwrap());
        assert!(are_equivalent(&two, &disc).unwrap().is_none());
        assert!(brute_force_equivalence(&two, &disc).unwrap().is_none());

        for (_, c) in fixtures::pool() {
            let c = arc(c);
            assert!(are_equivalent(&c, &c).unwrap().is_some());
        }
    }

    #[test]
    fn brute_force_cap() {
        let big = arc(fixtures::fin_set_dup());
        assert!(matches!(
            brute_force_equivalence(&big, &big),
            Err(KernelError::Capacity { limit: 12, .. })
        ));
    }

    #[test]
    fn all_functors_counts_monotone_maps() {
        // functors between chains are monotone maps: 2-chain to 3-chain has 6
        let two = arc(fixtures::two_chain());
        let three = arc(fixtures::three_chain());
        assert_eq!(all_functors(&two, &three).len(), 6);
        // monoid endomorphisms of Z2: trivial and identity
        let z2 = arc(fixtures::z2());
        assert_eq!(all_functors(&z2, &z2).len(), 2);
    }
}
