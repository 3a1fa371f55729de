//! Test-side oracles. They read only arrow names and the composition table
//! and recompute everything else from scratch.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::Arc;

use arrowcat::catspec::{self, Loader};
use arrowcat::{fixtures, ObjlessCategory};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn malformed_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/malformed")
}

/// `(file name, contents)` of every `.cat` file in a directory, sorted.
pub fn cat_files(dir: &PathBuf) -> Vec<(String, String)> {
    let mut out: Vec<_> = std::fs::read_dir(dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cat"))
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            (p.file_name().unwrap().to_string_lossy().into_owned(), text)
        })
        .collect();
    out.sort();
    out
}

/// Pool fixtures, FinSetDup, and every category in the fixture files.
pub fn all_fixtures() -> Vec<(String, Arc<ObjlessCategory>)> {
    let mut out: Vec<(String, Arc<ObjlessCategory>)> = fixtures::pool()
        .into_iter()
        .map(|(n, c)| (n.to_string(), Arc::new(c)))
        .collect();
    out.push(("FinSetDup".into(), Arc::new(fixtures::fin_set_dup())));
    out.push(("ThreeChainTimesCodiscrete3".into(), Arc::new(arrowcat::gen::product(&fixtures::three_chain(), &fixtures::codiscrete3()))));
    for (file, text) in cat_files(&fixture_dir()) {
        let doc = catspec::parse(&text).unwrap_or_else(|d| panic!("{file}: {d:?}"));
        let loader = Loader::new(&doc);
        for (name, c) in loader.categories() {
            let c = c.as_ref().unwrap_or_else(|e| panic!("{file}: {e}"));
            out.push((format!("{file}:{name}"), c.clone()));
        }
    }
    out
}

/// A composition table over plain strings.
pub struct Table {
    pub names: Vec<String>,
    pub comp: BTreeMap<(String, String), String>,
}

impl Table {
    pub fn of(c: &ObjlessCategory) -> Self {
        let t = c.composition_table();
        Table {
            names: c.names().iter().map(|n| n.to_string()).collect(),
            comp: t
                .iter()
                .map(|(a, b, r)| ((a.to_string(), b.to_string()), r.to_string()))
                .collect(),
        }
    }

    pub fn get(&self, after: &str, before: &str) -> Option<&String> {
        self.comp.get(&(after.to_string(), before.to_string()))
    }

    /// Self-composable arrows that are neutral wherever they compose.
    pub fn identities(&self) -> BTreeSet<String> {
        self.names
            .iter()
            .filter(|i| self.get(i, i) == Some(*i))
            .filter(|i| {
                self.comp.iter().all(|((a, b), r)| {
                    (a != *i || r == b) && (b != *i || r == a)
                })
            })
            .cloned()
            .collect()
    }

    /// Identities `i` with `a . i` defined.
    pub fn right_units(&self, a: &str, ids: &BTreeSet<String>) -> Vec<String> {
        ids.iter().filter(|i| self.get(a, i).is_some()).cloned().collect()
    }

    /// Identities `i` with `i . a` defined.
    pub fn left_units(&self, a: &str, ids: &BTreeSet<String>) -> Vec<String> {
        ids.iter().filter(|i| self.get(i, a).is_some()).cloned().collect()
    }

    /// Morphisms `b` with `b . i` defined and `g` with `i . g` defined.
    pub fn profile(&self, i: &str) -> (BTreeSet<String>, BTreeSet<String>) {
        let right = self.names.iter().filter(|b| self.get(b, i).is_some()).cloned().collect();
        let left = self.names.iter().filter(|g| self.get(i, g).is_some()).cloned().collect();
        (right, left)
    }
}

/// Unique domain and codomain identities, `i . j` defined only for `i == j`,
/// and `b . a` defined exactly when the ends meet, with the right ends.
/// Checked against the library's answers; returns the first discrepancy.
pub fn axiom_check(c: &ObjlessCategory) -> Result<(), String> {
    let t = Table::of(c);
    let ids = t.identities();
    let lib_ids: BTreeSet<String> = c.identity_names().map(|n| n.to_string()).collect();
    if ids != lib_ids {
        return Err(format!("identities {ids:?} but library says {lib_ids:?}"));
    }
    let mut d = BTreeMap::new();
    let mut k = BTreeMap::new();
    for a in &t.names {
        let (r, l) = (t.right_units(a, &ids), t.left_units(a, &ids));
        if r.len() != 1 || l.len() != 1 {
            return Err(format!("{a} has domain identities {r:?} and codomain identities {l:?}"));
        }
        if c.dom_id(a).unwrap() != r[0].as_str() || c.cod_id(a).unwrap() != l[0].as_str() {
            return Err(format!("{a}: library dom/cod disagree"));
        }
        d.insert(a.clone(), r[0].clone());
        k.insert(a.clone(), l[0].clone());
    }
    for i in &ids {
        for j in &ids {
            if t.get(i, j).is_some() != (i == j) {
                return Err(format!("{i} . {j} defined is {} for distinct or equal identities", t.get(i, j).is_some()));
            }
        }
    }
    for b in &t.names {
        for a in &t.names {
            match t.get(b, a) {
                Some(_) if d[b] != k[a] => return Err(format!("{b} . {a} defined but d({b}) != c({a})")),
                Some(ba) if d[ba] != d[a] || k[ba] != k[b] => {
                    return Err(format!("{b} . {a} = {ba} has the wrong ends"))
                }
                None if d[b] == k[a] => return Err(format!("{b} . {a} undefined although d({b}) = c({a})")),
                _ => {}
            }
            if c.compose_names(b, a).unwrap().map(|n| n.to_string()) != t.get(b, a).cloned() {
                return Err(format!("library composite of {b} . {a} differs from its own table"));
            }
        }
    }
    Ok(())
}

/// Every pair of distinct identities has different composition profiles.
pub fn discernibility_check(c: &ObjlessCategory) -> Result<(), String> {
    let t = Table::of(c);
    let ids: Vec<String> = t.identities().into_iter().collect();
    for (n, i) in ids.iter().enumerate() {
        for j in &ids[n + 1..] {
            if t.profile(i) == t.profile(j) {
                return Err(format!("{i} and {j} have the same profile"));
            }
            if !c.discernible(i, j).unwrap() {
                return Err(format!("library calls {i} and {j} indiscernible"));
            }
        }
    }
    Ok(())
}

/// `sum over n, m of m^n`: the arrows between sets of the given sizes.
pub fn function_count(sizes: &[u32]) -> u64 {
    sizes
        .iter()
        .flat_map(|&n| sizes.iter().map(move |&m| (m as u64).pow(n)))
        .sum()
}

/// Number of isomorphism classes of identities, by searching for inverse pairs.
pub fn iso_class_count(c: &ObjlessCategory) -> usize {
    let t = Table::of(c);
    let ids: Vec<String> = t.identities().into_iter().collect();
    let iso = |i: &String, j: &String| {
        t.comp.iter().any(|((g, f), r)| {
            r == i && t.get(f, g) == Some(j) && t.get(f, i).is_some() && t.get(g, j).is_some()
        })
    };
    let mut class: Vec<usize> = (0..ids.len()).collect();
    for a in 0..ids.len() {
        for b in 0..a {
            if iso(&ids[a], &ids[b]) {
                class[a] = class[b];
                break;
            }
        }
    }
    class.iter().enumerate().filter(|(k, &c)| *k == c).count()
}
