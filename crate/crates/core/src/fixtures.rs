//! Small named categories used throughout the tests, the benches and the CLI
//! examples.

use crate::bridge::to_objectless;
use crate::gen::{self, FinitePoset, MonoidTable};
use crate::kernel::{CompositionTable, ObjlessCategory};
use crate::name::mname;

fn objless(names: &[&str], triples: &[(&str, &str, &str)]) -> ObjlessCategory {
    let table = CompositionTable::from_triples(triples.iter().copied());
    ObjlessCategory::new(names.iter().map(|n| mname(n)), &table).expect("fixture is valid")
}

/// The terminal category: one identity `e`.
pub fn one() -> ObjlessCategory {
    objless(&["e"], &[("e", "e", "e")])
}

/// `Z2` as a one-object category.
pub fn z2() -> ObjlessCategory {
    objless(
        &["e", "s"],
        &[("e", "e", "e"), ("e", "s", "s"), ("s", "e", "s"), ("s", "s", "e")],
    )
}

/// `i0 -a-> i1`
pub fn two_chain() -> ObjlessCategory {
    objless(
        &["i0", "i1", "a"],
        &[("i0", "i0", "i0"), ("i1", "i1", "i1"), ("a", "i0", "a"), ("i1", "a", "a")],
    )
}

/// `i0 -a-> i1 -b-> i2` with `b . a = c`.
pub fn three_chain() -> ObjlessCategory {
    objless(
        &["i0", "i1", "i2", "a", "b", "c"],
        &[
            ("i0", "i0", "i0"),
            ("i1", "i1", "i1"),
            ("i2", "i2", "i2"),
            ("a", "i0", "a"),
            ("i1", "a", "a"),
            ("b", "i1", "b"),
            ("i2", "b", "b"),
            ("c", "i0", "c"),
            ("i2", "c", "c"),
            ("b", "a", "c"),
        ],
    )
}

/// Two objects joined by inverse arrows `f` and `g`; identities `id_A`, `id_B`.
pub fn walking_iso() -> ObjlessCategory {
    to_objectless(&gen::gen_walking_iso()).expect("fixture is valid")
}

/// Finite sets of sizes 0, 1, 2 with all functions.
pub fn fin_set2() -> ObjlessCategory {
    to_objectless(&gen::gen_finset(2, &[]).expect("fixture")).expect("fixture is valid")
}

/// [`fin_set2`] with a second one-element set `S1b`.
pub fn fin_set_dup() -> ObjlessCategory {
    to_objectless(&gen::gen_finset(2, &[1]).expect("fixture")).expect("fixture is valid")
}

/// The two-element monoid `{e, z}` with `z . z = z`.
pub fn idempotent_monoid() -> ObjlessCategory {
    objless(
        &["e", "z"],
        &[("e", "e", "e"), ("e", "z", "z"), ("z", "e", "z"), ("z", "z", "z")],
    )
}

pub fn discrete(n: usize) -> ObjlessCategory {
    to_objectless(&gen::gen_discrete(n)).expect("fixture is valid")
}

/// Three objects with exactly one arrow between any two.
pub fn codiscrete3() -> ObjlessCategory {
    let all: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
    // a preorder, so build the thin category directly
    let mut names = Vec::new();
    let name = |x: usize, y: usize| {
        if x == y {
            format!("o{x}")
        } else {
            format!("o{x}_to_o{y}")
        }
    };
    for &(x, y) in &all {
        names.push(name(x, y));
    }
    let mut triples = Vec::new();
    for &(x, y) in &all {
        for z in 0..3 {
            triples.push((name(y, z), name(x, y), name(x, z)));
        }
    }
    let names_ref: Vec<&str> = names.iter().map(String::as_str).collect();
    let triples_ref: Vec<(&str, &str, &str)> = triples
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    objless(&names_ref, &triples_ref)
}

/// Every fixture with at most 12 morphisms, by name.
pub fn pool() -> Vec<(&'static str, ObjlessCategory)> {
    let chain2 = || gen::gen_poset(&FinitePoset::chain(2)).unwrap();
    vec![
        ("One", one()),
        ("Z2", z2()),
        ("Z3", gen::gen_monoid(&MonoidTable::cyclic(3)).unwrap()),
        ("IdempotentMonoid", idempotent_monoid()),
        ("TwoChain", two_chain()),
        ("TwoChainRelabelled", chain2()),
        ("ThreeChain", three_chain()),
        ("ThreeChainOpposite", three_chain().opposite()),
        ("Span", gen::gen_poset(&FinitePoset::from_pairs(3, &[(0, 1), (0, 2)]).unwrap()).unwrap()),
        ("Discrete2", discrete(2)),
        ("Discrete3", discrete(3)),
        ("WalkingIso", walking_iso()),
        ("WalkingIsoAndOne", gen::coproduct(&[&walking_iso(), &one()])),
        ("Codiscrete3", codiscrete3()),
        ("TwoChainTimesZ2", gen::product(&two_chain(), &z2())),
        ("FinSet2", fin_set2()),
    ]
}

/// `P` = 2-chain, `Q` = 3-chain, `f = [0, 2]`, `g = [0, 0, 1]`.
pub fn galois() -> (FinitePoset, FinitePoset, Vec<usize>, Vec<usize>) {
    (
        FinitePoset::chain(2),
        FinitePoset::chain(3).with_prefix("q"),
        vec![0, 2],
        vec![0, 0, 1],
    )
}

/// [`galois`] with `g(1) = 1`, breaking the condition at `(1, 1)`.
pub fn galois_perturbed() -> (FinitePoset, FinitePoset, Vec<usize>, Vec<usize>) {
    let (p, q, f, _) = galois();
    (p, q, f, vec![0, 1, 1])
}

/// Diamond onto the 2-chain by "is above bottom", with right adjoint picking
/// bottom and top. A Galois connection whose left map sends the meet of the
/// two middle elements to 0 but each of them to 1.
pub fn galois_meet_breaking() -> (FinitePoset, FinitePoset, Vec<usize>, Vec<usize>) {
    (
        FinitePoset::diamond(),
        FinitePoset::chain(2).with_prefix("q"),
        vec![0, 1, 1, 1],
        vec![0, 3],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_sizes() {
        let pool = pool();
        assert!(pool.iter().all(|(_, c)| c.len() <= 12));
        let mut names: Vec<_> = pool.iter().map(|(n, _)| *n).collect();
        names.dedup();
        assert_eq!(names.len(), pool.len());
    }

    #[test]
    fn fixture_shapes() {
        assert_eq!(three_chain().hom_class("i0", "i2").unwrap(), vec!["c"]);
        assert_eq!(walking_iso().identities().len(), 2);
        assert_eq!(codiscrete3().len(), 9);
        assert_eq!(fin_set2().len(), 11);
        assert_eq!(fin_set_dup().len(), 18);
    }
}
