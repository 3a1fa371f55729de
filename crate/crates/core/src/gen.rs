//! Generators for fixture and random categories.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bridge::StdCategory;
use crate::error::KernelError;
use crate::kernel::{CompositionTable, ObjlessCategory};
use crate::name::{MorphismName, NameError, ObjectName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(String),
    #[error("relation is not antisymmetric at {0} and {1}")]
    NotAntisymmetric(String, String),
    #[error("relation is not transitive at {0}, {1}, {2}")]
    NotTransitive(String, String, String),
    #[error("map is not monotone: {x} <= {y} but their images are unrelated")]
    NotMonotone { x: String, y: String },
    #[error("map has {found} values but the domain has {expected} elements")]
    SizeMismatch { expected: usize, found: usize },
    #[error("map value {0} is out of range")]
    OutOfRange(usize),
    #[error("relation matrix is not square over the labels")]
    BadMatrix,
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("category is not the one generated from this poset")]
    NotPosetCategory,
    #[error(transparent)]
    Name(#[from] NameError),
}

/// A finite partial order given by its full relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, PosetError> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(PosetError::BadMatrix);
        }
        for (i, l) in labels.iter().enumerate() {
            crate::name::check_token(l)?;
            if labels[..i].contains(l) {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(PosetError::NotReflexive(labels[x].clone()));
            }
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(PosetError::NotAntisymmetric(labels[x].clone(), labels[y].clone()));
                }
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(PosetError::NotTransitive(
                            labels[x].clone(),
                            labels[y].clone(),
                            labels[z].clone(),
                        ));
                    }
                }
            }
        }
        Ok(Self { labels, leq })
    }

    /// Reflexive-transitive closure of the given pairs, labelled `p0, p1, ...`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, PosetError> {
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(PosetError::OutOfRange(x.max(y)));
            }
            leq[x][y] = true;
        }
        close(&mut leq);
        Self::new(default_labels("p", n), leq)
    }

    /// `0 < 1 < ... < n-1`
    pub fn chain(n: usize) -> Self {
        let leq = (0..n).map(|x| (0..n).map(|y| x <= y).collect()).collect();
        Self::new(default_labels("p", n), leq).expect("chains are posets")
    }

    /// Bottom 0, incomparable 1 and 2, top 3.
    pub fn diamond() -> Self {
        Self::from_pairs(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("the diamond is a poset")
    }

    /// Same order with labels `{prefix}0, {prefix}1, ...`.
    pub fn with_prefix(mut self, prefix: &str) -> Self {
        self.labels = default_labels(prefix, self.len());
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Checks that `f` is a monotone map from `self` into `target`.
    pub fn check_monotone(&self, target: &FinitePoset, f: &[usize]) -> Result<(), PosetError> {
        if f.len() != self.len() {
            return Err(PosetError::SizeMismatch {
                expected: self.len(),
                found: f.len(),
            });
        }
        if let Some(&v) = f.iter().find(|&&v| v >= target.len()) {
            return Err(PosetError::OutOfRange(v));
        }
        for x in 0..self.len() {
            for y in 0..self.len() {
                if self.leq(x, y) && !target.leq(f[x], f[y]) {
                    return Err(PosetError::NotMonotone {
                        x: self.labels[x].clone(),
                        y: self.labels[y].clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|k| format!("{prefix}{k}")).collect()
}

fn close(leq: &mut [Vec<bool>]) {
    let n = leq.len();
    for k in 0..n {
        for x in 0..n {
            if leq[x][k] {
                for y in 0..n {
                    if leq[k][y] {
                        leq[x][y] = true;
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("monoid table is not associative at ({0} {1}) {2}")]
    NonAssociative(String, String, String),
    #[error("monoid table has no unit")]
    NoUnit,
    #[error("monoid table must be square over its {0} elements")]
    BadTable(usize),
    #[error("carrier size {0} is too large (at most 9)")]
    TooLarge(usize),
    #[error("duplicated size {0} exceeds the maximum size")]
    BadDuplicate(usize),
    #[error(transparent)]
    Name(#[from] NameError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Arrows and a full composition table by index; the common shape all
/// generators build before validation.
#[derive(Debug, Clone)]
struct Raw {
    names: Vec<String>,
    comp: HashMap<(usize, usize), usize>,
}

impl Raw {
    fn from_category(c: &ObjlessCategory) -> Self {
        Raw {
            names: c.names().iter().map(|n| n.to_string()).collect(),
            comp: c
                .entries()
                .map(|((g, f), h)| ((g.index(), f.index()), h.index()))
                .collect(),
        }
    }

    fn thin(labels: &[String], leq: &[Vec<bool>]) -> Self {
        let n = labels.len();
        let mut index = HashMap::new();
        let mut names = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if leq[x][y] {
                    index.insert((x, y), names.len());
                    names.push(if x == y {
                        labels[x].clone()
                    } else {
                        format!("{}_le_{}", labels[x], labels[y])
                    });
                }
            }
        }
        let mut comp = HashMap::new();
        for (&(x, y), &f) in &index {
            for z in 0..n {
                if let Some(&g) = index.get(&(y, z)) {
                    comp.insert((g, f), index[&(x, z)]);
                }
            }
        }
        Raw { names, comp }
    }

    fn monoid(names: Vec<String>, product: &[Vec<usize>]) -> Self {
        let n = names.len();
        let comp = (0..n)
            .flat_map(|a| (0..n).map(move |b| ((a, b), product[a][b])))
            .collect();
        Raw { names, comp }
    }

    fn product(a: &Raw, b: &Raw) -> Self {
        let nb = b.names.len();
        let names = a
            .names
            .iter()
            .flat_map(|x| b.names.iter().map(move |y| format!("{x}_x_{y}")))
            .collect();
        let mut comp = HashMap::new();
        for (&(g, f), &h) in &a.comp {
            for (&(g2, f2), &h2) in &b.comp {
                comp.insert((g * nb + g2, f * nb + f2), h * nb + h2);
            }
        }
        Raw { names, comp }
    }

    fn coproduct(parts: &[(String, &Raw)]) -> Self {
        let mut names = Vec::new();
        let mut comp = HashMap::new();
        for (prefix, r) in parts {
            let off = names.len();
            names.extend(r.names.iter().map(|n| format!("{prefix}{n}")));
            comp.extend(r.comp.iter().map(|(&(g, f), &h)| ((g + off, f + off), h + off)));
        }
        Raw { names, comp }
    }

    fn build(&self) -> Result<ObjlessCategory, KernelError> {
        let mut names = Vec::with_capacity(self.names.len());
        for n in &self.names {
            names.push(MorphismName::new(n.as_str())?);
        }
        let mut table = CompositionTable::new();
        for (&(g, f), &h) in &self.comp {
            let _ = table.insert(names[g].clone(), names[f].clone(), names[h].clone());
        }
        ObjlessCategory::new(names, &table)
    }
}

/// Thin category of a poset: identities named by the labels, `x <= y` by
/// `x_le_y`.
pub fn gen_poset(p: &FinitePoset) -> Result<ObjlessCategory, PosetError> {
    Ok(Raw::thin(&p.labels, &p.leq)
        .build()
        .expect("poset categories are valid"))
}

/// A finite monoid as a one-object category. `product[a][b]` is `a` after `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidTable {
    pub elements: Vec<String>,
    pub product: Vec<Vec<usize>>,
}

impl MonoidTable {
    /// `Z_n` with elements `e, g1, ..., g{n-1}`.
    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n)
            .map(|k| if k == 0 { "e".to_string() } else { format!("g{k}") })
            .collect();
        let product = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        MonoidTable { elements, product }
    }

    fn check(&self) -> Result<(), GenError> {
        let n = self.elements.len();
        if n == 0 || self.product.len() != n || self.product.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(GenError::BadTable(n));
        }
        let p = &self.product;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if p[p[a][b]][c] != p[a][p[b][c]] {
                        let e = &self.elements;
                        return Err(GenError::NonAssociative(e[a].clone(), e[b].clone(), e[c].clone()));
                    }
                }
            }
        }
        if !(0..n).any(|u| (0..n).all(|a| p[u][a] == a && p[a][u] == a)) {
            return Err(GenError::NoUnit);
        }
        Ok(())
    }
}

pub fn gen_monoid(m: &MonoidTable) -> Result<ObjlessCategory, GenError> {
    m.check()?;
    Ok(Raw::monoid(m.elements.clone(), &m.product).build()?)
}

/// Finite sets of sizes `0..=max_size`, one object per size plus one extra
/// copy for every entry of `duplicates`, with every function between them.
///
/// Objects are `S{k}` with copies `S{k}b`, `S{k}c`, ...; identities are
/// `id_X`; a function `X -> Y` is named `X_to_Y_{values}` (just `X_to_Y`
/// out of the empty set).
pub fn gen_finset(max_size: usize, duplicates: &[usize]) -> Result<StdCategory, GenError> {
    if max_size > 9 {
        return Err(GenError::TooLarge(max_size));
    }
    let mut objects: Vec<(String, usize)> = (0..=max_size).map(|k| (format!("S{k}"), k)).collect();
    let mut copies = vec![0usize; max_size + 1];
    for &d in duplicates {
        if d > max_size {
            return Err(GenError::BadDuplicate(d));
        }
        copies[d] += 1;
        let suffix = (b'a' + copies[d] as u8) as char;
        objects.push((format!("S{d}{suffix}"), d));
    }
    objects.sort();

    // all functions m -> n as value vectors
    let functions = |m: usize, n: usize| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out
    };
    let mut s = StdCategory::new();
    let mut arrows: HashMap<(usize, usize, Vec<usize>), MorphismName> = HashMap::new();
    for (x, _) in &objects {
        s.add_object(ObjectName::new(x.as_str())?)?;
    }
    for (i, (x, m)) in objects.iter().enumerate() {
        for (j, (y, n)) in objects.iter().enumerate() {
            for f in functions(*m, *n) {
                let is_id = i == j && f.iter().enumerate().all(|(k, &v)| k == v);
                let name = if is_id {
                    format!("id_{x}")
                } else if f.is_empty() {
                    format!("{x}_to_{y}")
                } else {
                    let digits: String = f.iter().map(|v| v.to_string()).collect();
                    format!("{x}_to_{y}_{digits}")
                };
                let name = MorphismName::new(name)?;
                if is_id {
                    s.set_identity(ObjectName::new(x.as_str())?, name.clone())?;
                } else {
                    s.add_arrow(name.clone(), ObjectName::new(x.as_str())?, ObjectName::new(y.as_str())?)?;
                }
                arrows.insert((i, j, f), name);
            }
        }
    }
    for ((i, j, f), fname) in &arrows {
        for ((j2, k, g), gname) in &arrows {
            if j2 != j {
                continue;
            }
            let gf: Vec<usize> = f.iter().map(|&v| g[v]).collect();
            let h = &arrows[&(*i, *k, gf)];
            let _ = s.table.insert(gname.clone(), fname.clone(), h.clone());
        }
    }
    Ok(s)
}

/// `n` objects `o0, o1, ...` and only their identities `id_o0, ...`.
pub fn gen_discrete(n: usize) -> StdCategory {
    let mut s = StdCategory::new();
    for k in 0..n {
        s.add_object(ObjectName::new(format!("o{k}")).unwrap()).unwrap();
    }
    s.name_missing_identities().unwrap();
    s.complete_identities();
    s
}

/// Objects `A`, `B` with inverse arrows `f: A -> B` and `g: B -> A`.
pub fn gen_walking_iso() -> StdCategory {
    let mut s = StdCategory::new();
    for o in ["A", "B"] {
        s.add_object(ObjectName::new(o).unwrap()).unwrap();
    }
    s.name_missing_identities().unwrap();
    let obj = |o: &str| ObjectName::new(o).unwrap();
    s.add_arrow(MorphismName::new("f").unwrap(), obj("A"), obj("B")).unwrap();
    s.add_arrow(MorphismName::new("g").unwrap(), obj("B"), obj("A")).unwrap();
    s.complete_identities();
    s.compose("g", "f", "id_A").unwrap();
    s.compose("f", "g", "id_B").unwrap();
    s
}

/// Disjoint union; arrows of part `k` get the prefix `c{k}_`.
pub fn coproduct(parts: &[&ObjlessCategory]) -> ObjlessCategory {
    let raws: Vec<Raw> = parts.iter().map(|c| Raw::from_category(c)).collect();
    let named: Vec<(String, &Raw)> = raws.iter().enumerate().map(|(k, r)| (format!("c{k}_"), r)).collect();
    Raw::coproduct(&named).build().expect("coproducts of categories are categories")
}

/// Product category; the pair `(x, y)` is named `x_x_y`.
pub fn product(a: &ObjlessCategory, b: &ObjlessCategory) -> ObjlessCategory {
    Raw::product(&Raw::from_category(a), &Raw::from_category(b))
        .build()
        .expect("products of categories are categories")
}

fn random_preorder(rng: &mut ChaCha8Rng, max: usize) -> Raw {
    loop {
        let n = rng.gen_range(1..=4usize.min(max));
        let density = rng.gen_range(0.1..0.6);
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                *cell = x == y || rng.gen_bool(density);
            }
        }
        close(&mut leq);
        let raw = Raw::thin(&default_labels("x", n), &leq);
        if raw.names.len() <= max {
            return raw;
        }
    }
}

fn random_monoid(rng: &mut ChaCha8Rng, max: usize) -> Raw {
    let n = rng.gen_range(1..=5usize.min(max));
    let names: Vec<String> = (0..n)
        .map(|k| if k == 0 { "e".to_string() } else { format!("m{k}") })
        .collect();
    let product: Vec<Vec<usize>> = match rng.gen_range(0..4) {
        0 => (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
        1 => (0..n).map(|a| (0..n).map(|b| (a + b).min(n - 1)).collect()).collect(),
        2 => (0..n).map(|a| (0..n).map(|b| a.max(b)).collect()).collect(),
        // unit plus left zeros: m_k after anything is m_k
        _ => (0..n)
            .map(|a| (0..n).map(|b| if a == 0 { b } else { a }).collect())
            .collect(),
    };
    Raw::monoid(names, &product)
}

fn random_piece(rng: &mut ChaCha8Rng, max: usize, depth: usize) -> Raw {
    let kind = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..4) };
    match kind {
        0 => random_preorder(rng, max),
        1 => random_monoid(rng, max),
        2 if max >= 2 => {
            let a = random_preorder(rng, max.min(4));
            let b = random_monoid(rng, (max / a.names.len()).max(1));
            if a.names.len() * b.names.len() <= max {
                Raw::product(&a, &b)
            } else {
                a
            }
        }
        _ if max >= 2 => {
            let first = random_piece(rng, max - 1, depth - 1);
            let rest = max - first.names.len();
            if rest == 0 {
                return first;
            }
            let second = random_piece(rng, rest, depth - 1);
            Raw::coproduct(&[("c0_".into(), &first), ("c1_".into(), &second)])
        }
        _ => random_preorder(rng, max),
    }
}

/// A valid category with at most `max_morphisms` arrows, determined by `seed`:
/// a preorder, a small monoid, a product of the two, or a coproduct of such.
pub fn gen_random(seed: u64, max_morphisms: usize) -> ObjlessCategory {
    assert!(max_morphisms >= 1, "max_morphisms must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = random_piece(&mut rng, max_morphisms, 2);
    debug_assert!(raw.names.len() <= max_morphisms);
    raw.build().expect("random generator yields valid categories")
}

/// The same category with arrows renamed `{prefix}0, {prefix}1, ...` in a
/// seed-determined order.
pub fn relabel(c: &ObjlessCategory, prefix: &str, seed: u64) -> ObjlessCategory {
    let mut raw = Raw::from_category(c);
    let mut perm: Vec<usize> = (0..raw.names.len()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    for (k, &p) in perm.iter().enumerate() {
        raw.names[p] = format!("{prefix}{k}");
    }
    raw.build().expect("relabelling preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::{to_objectless, validate_standard};
    use crate::fixtures;

    #[test]
    fn finset_counts() {
        // sum over sizes m, n of n^m
        let s = gen_finset(2, &[]).unwrap();
        assert_eq!(s.objects.len(), 3);
        assert_eq!(s.arrows.len(), 11);
        assert!(validate_standard(&s).unwrap().ok);
        let d = gen_finset(2, &[1]).unwrap();
        assert_eq!(d.objects.len(), 4);
        assert_eq!(d.arrows.len(), 18);
        assert!(validate_standard(&d).unwrap().ok);
        assert_eq!(to_objectless(&gen_finset(3, &[]).unwrap()).unwrap().len(), 1 + 1 + 1 + 1 + 1 + 2 + 3 + 1 + 4 + 9 + 1 + 8 + 27);
    }

    #[test]
    fn finset_rejects_bad_duplicates() {
        assert!(matches!(gen_finset(2, &[3]), Err(GenError::BadDuplicate(3))));
        assert!(matches!(gen_finset(10, &[]), Err(GenError::TooLarge(10))));
    }

    #[test]
    fn discrete_one_is_terminal_category() {
        let c = to_objectless(&gen_discrete(1)).unwrap();
        assert_eq!(c, relabel_names(&fixtures::one(), &[("e", "id_o0")]));
    }

    #[test]
    fn two_chain_from_poset() {
        let c = gen_poset(&FinitePoset::chain(2)).unwrap();
        let expected = relabel_names(&fixtures::two_chain(), &[("i0", "p0"), ("i1", "p1"), ("a", "p0_le_p1")]);
        assert_eq!(c, expected);
    }

    fn relabel_names(c: &ObjlessCategory, map: &[(&str, &str)]) -> ObjlessCategory {
        let mut raw = Raw::from_category(c);
        for n in raw.names.iter_mut() {
            if let Some((_, to)) = map.iter().find(|(from, _)| from == n) {
                *n = to.to_string();
            }
        }
        raw.build().unwrap()
    }

    #[test]
    fn poset_axioms_are_checked() {
        let l = default_labels("p", 2);
        assert!(matches!(
            FinitePoset::new(l.clone(), vec![vec![true, true], vec![true, true]]),
            Err(PosetError::NotAntisymmetric(..))
        ));
        assert!(matches!(
            FinitePoset::new(l, vec![vec![false, false], vec![false, true]]),
            Err(PosetError::NotReflexive(_))
        ));
    }

    #[test]
    fn monoid_tables() {
        let z3 = gen_monoid(&MonoidTable::cyclic(3)).unwrap();
        assert_eq!(z3.identities().len(), 1);
        assert_eq!(z3.table_len(), 9);
        let bad = MonoidTable {
            elements: vec!["e".into(), "a".into(), "b".into()],
            // a.a = b, a.b = e, b.a = a: not associative
            product: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]],
        };
        assert!(matches!(gen_monoid(&bad), Err(GenError::NonAssociative(..))));
        let no_unit = MonoidTable {
            elements: vec!["a".into(), "b".into()],
            product: vec![vec![0, 0], vec![0, 0]],
        };
        assert_eq!(gen_monoid(&no_unit), Err(GenError::NoUnit));
    }

    #[test]
    fn random_is_deterministic_and_capped() {
        for seed in 0..200 {
            let c = gen_random(seed, 20);
            assert!(c.len() <= 20 && !c.is_empty());
            assert_eq!(c, gen_random(seed, 20));
        }
        for seed in 0..50 {
            assert_eq!(gen_random(seed, 1).len(), 1);
        }
    }

    #[test]
    fn random_mixture_covers_kinds() {
        let cats: Vec<_> = (0..200).map(|s| gen_random(s, 20)).collect();
        assert!(cats.iter().any(|c| c.identities().len() == 1 && c.len() > 1));
        assert!(cats.iter().any(|c| c.identities().len() > 2));
        assert!(cats.iter().any(|c| c.names().iter().any(|n| n.as_str().starts_with("c1_"))));
        assert!(cats.iter().any(|c| c.names().iter().any(|n| n.as_str().contains("_x_"))));
    }

    #[test]
    fn relabel_is_bijective() {
        let c = fixtures::fin_set_dup();
        let d = relabel(&c, "r_", 7);
        assert_eq!(c.len(), d.len());
        assert_eq!(c.table_len(), d.table_len());
        assert!(d.names().iter().all(|n| n.as_str().starts_with("r_")));
    }
}
