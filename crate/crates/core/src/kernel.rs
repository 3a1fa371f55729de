//! Arrow-only categories.
//!
//! An [`ObjlessCategory`] is nothing but a finite set of morphism names and a
//! partial composition table. Identities, domains and codomains are not
//! supplied; they are recovered from the table during validation and cached.
//!
//! Composition is written after-first: the table key `(g, f)` stands for
//! `g . f`, i.e. `g` applied after `f`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{KernelError, Result};
use crate::name::MorphismName;
use crate::report::{ValidationReport, ViolationKind};

/// Largest category accepted by the kernel.
pub const MAX_MORPHISMS: usize = 4096;

/// Position of a morphism inside one [`ObjlessCategory`].
///
/// Arrows are numbered in name order, so two categories with the same names
/// number their arrows identically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Arrow(u32);

impl Arrow {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Self {
        Arrow(i as u32)
    }
}

/// Two different results recorded for one composable pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conflict {
    pub after: MorphismName,
    pub before: MorphismName,
    pub kept: MorphismName,
    pub rejected: MorphismName,
}

/// Partial composition table over morphism names.
///
/// `(after, before) -> result` records that `after . before` is defined and
/// equals `result`. Inserting a second, different result for the same pair
/// keeps the first one and remembers the conflict so that validation can
/// report it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompositionTable {
    entries: BTreeMap<(MorphismName, MorphismName), MorphismName>,
    conflicts: Vec<Conflict>,
}

impl CompositionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(after, before, result)` literals.
    ///
    /// Panics on malformed names.
    pub fn from_triples<'a>(triples: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>) -> Self {
        let mut t = Self::new();
        for (g, f, h) in triples {
            let _ = t.insert(crate::mname(g), crate::mname(f), crate::mname(h));
        }
        t
    }

    pub fn insert(
        &mut self,
        after: MorphismName,
        before: MorphismName,
        result: MorphismName,
    ) -> std::result::Result<(), Conflict> {
        let key = (after, before);
        match self.entries.get(&key) {
            Some(existing) if *existing == result => Ok(()),
            Some(existing) => {
                let c = Conflict {
                    after: key.0.clone(),
                    before: key.1.clone(),
                    kept: existing.clone(),
                    rejected: result,
                };
                self.conflicts.push(c.clone());
                Err(c)
            }
            None => {
                self.entries.insert(key, result);
                Ok(())
            }
        }
    }

    pub fn remove(&mut self, after: &str, before: &str) -> Option<MorphismName> {
        let key = (MorphismName::new(after).ok()?, MorphismName::new(before).ok()?);
        self.entries.remove(&key)
    }

    pub fn get(&self, after: &MorphismName, before: &MorphismName) -> Option<&MorphismName> {
        self.entries.get(&(after.clone(), before.clone()))
    }

    /// Entries in lexicographic `(after, before)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&MorphismName, &MorphismName, &MorphismName)> {
        self.entries.iter().map(|((g, f), h)| (g, f, h))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn conflicts(&self) -> &[Conflict] {
        &self.conflicts
    }

    pub fn names(&self) -> impl Iterator<Item = &MorphismName> {
        self.iter().flat_map(|(g, f, h)| [g, f, h])
    }
}

/// Result of analysing raw arrow data.
struct Analysis {
    report: ValidationReport,
    identities: Vec<Arrow>,
    dom: Vec<Arrow>,
    cod: Vec<Arrow>,
}

/// Index-level view of a table used during validation.
struct Indexed<'a> {
    names: &'a [MorphismName],
    table: &'a HashMap<(Arrow, Arrow), Arrow>,
    /// entries `(g, f) -> h` grouped by `g`: `(f, h)`
    by_after: Vec<Vec<(Arrow, Arrow)>>,
    /// entries `(g, f) -> h` grouped by `f`: `(g, h)`
    by_before: Vec<Vec<(Arrow, Arrow)>>,
}

impl<'a> Indexed<'a> {
    fn new(names: &'a [MorphismName], table: &'a HashMap<(Arrow, Arrow), Arrow>) -> Self {
        let mut by_after = vec![Vec::new(); names.len()];
        let mut by_before = vec![Vec::new(); names.len()];
        let mut sorted: Vec<_> = table.iter().collect();
        sorted.sort();
        for (&(g, f), &h) in sorted {
            by_after[g.index()].push((f, h));
            by_before[f.index()].push((g, h));
        }
        Self {
            names,
            table,
            by_after,
            by_before,
        }
    }

    fn get(&self, g: Arrow, f: Arrow) -> Option<Arrow> {
        self.table.get(&(g, f)).copied()
    }

    fn n(&self, a: Arrow) -> &'a MorphismName {
        &self.names[a.index()]
    }

    fn entries(&self) -> impl Iterator<Item = (Arrow, Arrow, Arrow)> + '_ {
        self.by_after
            .iter()
            .enumerate()
            .flat_map(|(g, row)| row.iter().map(move |&(f, h)| (Arrow::from_index(g), f, h)))
    }

    fn check_associativity(&self, report: &mut ValidationReport) {
        for (b, a, ba) in self.entries() {
            // c . (b . a) against (c . b) . a
            for &(c, cb) in &self.by_before[b.index()] {
                if report.is_full() {
                    return;
                }
                match (self.get(c, ba), self.get(cb, a)) {
                    (Some(x), Some(y)) if x == y => {}
                    (Some(x), Some(y)) => report.push(
                        ViolationKind::AssociativityEqual,
                        &[self.n(c), self.n(b), self.n(a)],
                        format!(
                            "{c} . ({b} . {a}) = {} but ({c} . {b}) . {a} = {}",
                            self.n(x),
                            self.n(y),
                            c = self.n(c),
                            b = self.n(b),
                            a = self.n(a)
                        ),
                    ),
                    (left, _) => {
                        let missing = if left.is_none() {
                            format!("{} . {}", self.n(c), self.n(ba))
                        } else {
                            format!("{} . {}", self.n(cb), self.n(a))
                        };
                        report.push(
                            ViolationKind::AssociativityExistence,
                            &[self.n(c), self.n(b), self.n(a)],
                            format!(
                                "{b} . {a} and {c} . {b} are defined but {missing} is not",
                                c = self.n(c),
                                b = self.n(b),
                                a = self.n(a)
                            ),
                        )
                    }
                }
            }
            // c . (b . a) defined forces c . b
            for &(c, _) in &self.by_before[ba.index()] {
                if report.is_full() {
                    return;
                }
                if self.get(c, b).is_none() {
                    report.push(
                        ViolationKind::AssociativityExistence,
                        &[self.n(c), self.n(b), self.n(a)],
                        format!(
                            "{c} . ({b} . {a}) is defined but {c} . {b} is not",
                            c = self.n(c),
                            b = self.n(b),
                            a = self.n(a)
                        ),
                    );
                }
            }
        }
        // (c . b) . a defined forces b . a
        for (c, b, cb) in self.entries() {
            for &(a, _) in &self.by_after[cb.index()] {
                if report.is_full() {
                    return;
                }
                if self.get(b, a).is_none() {
                    report.push(
                        ViolationKind::AssociativityExistence,
                        &[self.n(c), self.n(b), self.n(a)],
                        format!(
                            "({c} . {b}) . {a} is defined but {b} . {a} is not",
                            c = self.n(c),
                            b = self.n(b),
                            a = self.n(a)
                        ),
                    );
                }
            }
        }
    }

    /// First composite showing that `i` is not neutral, as `(other, result, i_on_right)`.
    fn non_neutrality(&self, i: Arrow) -> Option<(Arrow, Arrow, bool)> {
        if let Some(&(g, h)) = self.by_before[i.index()].iter().find(|&&(g, h)| g != h) {
            return Some((g, h, true));
        }
        if let Some(&(f, h)) = self.by_after[i.index()].iter().find(|&&(f, h)| f != h) {
            return Some((f, h, false));
        }
        None
    }

    fn analyze(&self, conflicts: &[(Arrow, Arrow, Arrow, Arrow)]) -> Analysis {
        let n = self.names.len();
        let mut report = ValidationReport::new();
        for &(g, f, kept, rejected) in conflicts {
            report.push(
                ViolationKind::Functionality,
                &[self.n(g), self.n(f)],
                format!(
                    "{} . {} is given as both {} and {}",
                    self.n(g),
                    self.n(f),
                    self.n(kept),
                    self.n(rejected)
                ),
            );
        }
        self.check_associativity(&mut report);

        let neutral: Vec<bool> = (0..n)
            .map(Arrow::from_index)
            .map(|i| self.get(i, i).is_some() && self.non_neutrality(i).is_none())
            .collect();

        let mut dom = vec![Arrow(0); n];
        let mut cod = vec![Arrow(0); n];
        for a in (0..n).map(Arrow::from_index) {
            // domain side: a . i defined
            let right: Vec<Arrow> = self.by_after[a.index()]
                .iter()
                .map(|&(i, _)| i)
                .filter(|i| neutral[i.index()])
                .collect();
            let left: Vec<Arrow> = self.by_before[a.index()]
                .iter()
                .map(|&(i, _)| i)
                .filter(|i| neutral[i.index()])
                .collect();
            for (units, domain_side) in [(&right, true), (&left, false)] {
                match units.as_slice() {
                    [u] => {
                        if domain_side {
                            dom[a.index()] = *u;
                        } else {
                            cod[a.index()] = *u;
                        }
                    }
                    [] => self.report_missing_unit(&mut report, a, domain_side),
                    [u1, u2, ..] => report.push(
                        ViolationKind::IdentityNonunique,
                        &[self.n(a), self.n(*u1), self.n(*u2)],
                        format!(
                            "{} has several {} identities, including {} and {}",
                            self.n(a),
                            if domain_side { "domain" } else { "codomain" },
                            self.n(*u1),
                            self.n(*u2)
                        ),
                    ),
                }
            }
        }
        let identities = (0..n).filter(|&i| neutral[i]).map(Arrow::from_index).collect();
        Analysis {
            report,
            identities,
            dom,
            cod,
        }
    }

    fn report_missing_unit(&self, report: &mut ValidationReport, a: Arrow, domain_side: bool) {
        let side = if domain_side { "domain" } else { "codomain" };
        // an idempotent that fixes `a` but is not neutral elsewhere
        let pretender = if domain_side {
            self.by_after[a.index()]
                .iter()
                .find(|&&(i, h)| h == a && self.get(i, i) == Some(i))
                .map(|&(i, _)| i)
        } else {
            self.by_before[a.index()]
                .iter()
                .find(|&&(i, h)| h == a && self.get(i, i) == Some(i))
                .map(|&(i, _)| i)
        };
        match pretender.and_then(|i| self.non_neutrality(i).map(|w| (i, w))) {
            Some((i, (other, result, i_on_right))) => {
                let shown = if i_on_right {
                    format!("{} . {} = {}", self.n(other), self.n(i), self.n(result))
                } else {
                    format!("{} . {} = {}", self.n(i), self.n(other), self.n(result))
                };
                report.push(
                    ViolationKind::IdentityNonneutral,
                    &[self.n(a), self.n(i), self.n(other)],
                    format!(
                        "{} would be the {side} identity of {} but {shown}",
                        self.n(i),
                        self.n(a)
                    ),
                )
            }
            None => report.push(
                ViolationKind::IdentityMissing,
                &[self.n(a)],
                format!("{} has no {side} identity", self.n(a)),
            ),
        }
    }
}

/// Resolves raw name-level data to indices. Names come back sorted.
type Resolved = (
    Vec<MorphismName>,
    HashMap<(Arrow, Arrow), Arrow>,
    Vec<(Arrow, Arrow, Arrow, Arrow)>,
);

fn resolve(morphisms: &[MorphismName], table: &CompositionTable) -> Result<Resolved> {
    if morphisms.len() > MAX_MORPHISMS {
        return Err(KernelError::Capacity {
            what: "category".into(),
            size: morphisms.len(),
            limit: MAX_MORPHISMS,
        });
    }
    let mut names = morphisms.to_vec();
    names.sort();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(KernelError::DuplicateName(w[0].to_string()));
    }
    let index: HashMap<&MorphismName, Arrow> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n, Arrow::from_index(i)))
        .collect();
    let look = |n: &MorphismName| {
        index
            .get(n)
            .copied()
            .ok_or_else(|| KernelError::NameNotFound(n.to_string()))
    };
    let mut entries = HashMap::with_capacity(table.len());
    for (g, f, h) in table.iter() {
        entries.insert((look(g)?, look(f)?), look(h)?);
    }
    let mut conflicts = Vec::new();
    for c in table.conflicts() {
        conflicts.push((look(&c.after)?, look(&c.before)?, look(&c.kept)?, look(&c.rejected)?));
    }
    Ok((names, entries, conflicts))
}

/// Checks raw arrow data against the associativity and identity axioms.
///
/// All violations are collected (up to the report limit). Errors are reserved
/// for data that cannot be analysed at all: unknown or duplicate names and
/// oversized input.
pub fn validate_objectless(
    morphisms: &[MorphismName],
    table: &CompositionTable,
) -> Result<ValidationReport> {
    let (names, entries, conflicts) = resolve(morphisms, table)?;
    Ok(Indexed::new(&names, &entries).analyze(&conflicts).report)
}

/// Identities of valid raw data: the morphisms that are self-composable and
/// neutral wherever they compose.
pub fn infer_identities(
    morphisms: &[MorphismName],
    table: &CompositionTable,
) -> Result<BTreeSet<MorphismName>> {
    let cat = ObjlessCategory::new(morphisms.iter().cloned(), table)?;
    Ok(cat.identity_names().cloned().collect())
}

/// Morphisms composable with an identity, on either side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionProfile {
    /// `{b : b . i defined}`
    pub right_partners: BTreeSet<MorphismName>,
    /// `{g : i . g defined}`
    pub left_partners: BTreeSet<MorphismName>,
}

/// A validated arrow-only category.
#[derive(Clone)]
pub struct ObjlessCategory {
    names: Vec<MorphismName>,
    lookup: HashMap<MorphismName, Arrow>,
    table: BTreeMap<(Arrow, Arrow), Arrow>,
    fast: HashMap<(Arrow, Arrow), Arrow>,
    identities: Vec<Arrow>,
    is_identity: Vec<bool>,
    dom: Vec<Arrow>,
    cod: Vec<Arrow>,
    homs: HashMap<(Arrow, Arrow), Vec<Arrow>>,
}

impl PartialEq for ObjlessCategory {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.table == other.table
    }
}

impl Eq for ObjlessCategory {}

impl fmt::Debug for ObjlessCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ObjlessCategory")
            .field("morphisms", &self.names)
            .field("compositions", &self.table.len())
            .field("identities", &self.identity_names().collect::<Vec<_>>())
            .finish()
    }
}

impl ObjlessCategory {
    /// Validates raw data and builds the category, or returns the report.
    pub fn new(
        morphisms: impl IntoIterator<Item = MorphismName>,
        table: &CompositionTable,
    ) -> Result<Self> {
        let morphisms: Vec<_> = morphisms.into_iter().collect();
        let (names, entries, conflicts) = resolve(&morphisms, table)?;
        Self::build(names, entries, &conflicts)
    }

    /// Builds from sorted names and an index-level table.
    pub(crate) fn from_indexed(
        names: Vec<MorphismName>,
        table: HashMap<(Arrow, Arrow), Arrow>,
    ) -> Result<Self> {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        Self::build(names, table, &[])
    }

    fn build(
        names: Vec<MorphismName>,
        fast: HashMap<(Arrow, Arrow), Arrow>,
        conflicts: &[(Arrow, Arrow, Arrow, Arrow)],
    ) -> Result<Self> {
        if names.len() > MAX_MORPHISMS {
            return Err(KernelError::Capacity {
                what: "category".into(),
                size: names.len(),
                limit: MAX_MORPHISMS,
            });
        }
        let analysis = Indexed::new(&names, &fast).analyze(conflicts);
        if !analysis.report.ok {
            return Err(KernelError::Invalid(analysis.report));
        }
        let mut is_identity = vec![false; names.len()];
        for i in &analysis.identities {
            is_identity[i.index()] = true;
        }
        let mut homs: HashMap<(Arrow, Arrow), Vec<Arrow>> = HashMap::new();
        for a in 0..names.len() {
            homs.entry((analysis.dom[a], analysis.cod[a]))
                .or_default()
                .push(Arrow::from_index(a));
        }
        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), Arrow::from_index(i)))
            .collect();
        Ok(Self {
            names,
            lookup,
            table: fast.iter().map(|(k, v)| (*k, *v)).collect(),
            fast,
            identities: analysis.identities,
            is_identity,
            dom: analysis.dom,
            cod: analysis.cod,
            homs,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        (0..self.names.len()).map(Arrow::from_index)
    }

    /// Morphism names in sorted order; position `i` is `Arrow` number `i`.
    pub fn names(&self) -> &[MorphismName] {
        &self.names
    }

    pub fn name(&self, a: Arrow) -> &MorphismName {
        &self.names[a.index()]
    }

    pub fn arrow(&self, name: &str) -> Result<Arrow> {
        self.lookup
            .get(name)
            .copied()
            .ok_or_else(|| KernelError::NameNotFound(name.to_string()))
    }

    pub fn identities(&self) -> &[Arrow] {
        &self.identities
    }

    pub fn identity_names(&self) -> impl Iterator<Item = &MorphismName> {
        self.identities.iter().map(|&i| self.name(i))
    }

    pub fn is_identity(&self, a: Arrow) -> bool {
        self.is_identity[a.index()]
    }

    pub fn identity(&self, name: &str) -> Result<Arrow> {
        let a = self.arrow(name)?;
        if self.is_identity(a) {
            Ok(a)
        } else {
            Err(KernelError::NotAnIdentity(name.to_string()))
        }
    }

    /// The identity `i` with `a . i` defined.
    pub fn dom(&self, a: Arrow) -> Arrow {
        self.dom[a.index()]
    }

    /// The identity `i` with `i . a` defined.
    pub fn cod(&self, a: Arrow) -> Arrow {
        self.cod[a.index()]
    }

    /// `after . before`, if defined.
    pub fn compose(&self, after: Arrow, before: Arrow) -> Option<Arrow> {
        self.fast.get(&(after, before)).copied()
    }

    /// Table entries `((after, before), result)` in index order.
    pub fn entries(&self) -> impl Iterator<Item = ((Arrow, Arrow), Arrow)> + '_ {
        self.table.iter().map(|(k, v)| (*k, *v))
    }

    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    /// Morphisms from identity `from` to identity `to`.
    pub fn hom(&self, from: Arrow, to: Arrow) -> &[Arrow] {
        self.homs.get(&(from, to)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn composition_table(&self) -> CompositionTable {
        let mut t = CompositionTable::new();
        for ((g, f), h) in self.entries() {
            let _ = t.insert(self.name(g).clone(), self.name(f).clone(), self.name(h).clone());
        }
        t
    }

    pub fn dom_id(&self, name: &str) -> Result<&MorphismName> {
        Ok(self.name(self.dom(self.arrow(name)?)))
    }

    pub fn cod_id(&self, name: &str) -> Result<&MorphismName> {
        Ok(self.name(self.cod(self.arrow(name)?)))
    }

    /// `after . before` by name; `Ok(None)` when undefined.
    pub fn compose_names(&self, after: &str, before: &str) -> Result<Option<&MorphismName>> {
        let (g, f) = (self.arrow(after)?, self.arrow(before)?);
        Ok(self.compose(g, f).map(|h| self.name(h)))
    }

    pub fn hom_class(&self, from: &str, to: &str) -> Result<Vec<&MorphismName>> {
        let (i, j) = (self.identity(from)?, self.identity(to)?);
        Ok(self.hom(i, j).iter().map(|&a| self.name(a)).collect())
    }

    /// Partners of an identity as `(right, left)` arrow lists.
    pub fn profile(&self, i: Arrow) -> (Vec<Arrow>, Vec<Arrow>) {
        let right = self.arrows().filter(|&b| self.dom(b) == i).collect();
        let left = self.arrows().filter(|&g| self.cod(g) == i).collect();
        (right, left)
    }

    pub fn composition_profile(&self, identity: &str) -> Result<CompositionProfile> {
        let i = self.identity(identity)?;
        let (right, left) = self.profile(i);
        Ok(CompositionProfile {
            right_partners: right.into_iter().map(|a| self.name(a).clone()).collect(),
            left_partners: left.into_iter().map(|a| self.name(a).clone()).collect(),
        })
    }

    /// Whether two identities compose with different morphisms.
    pub fn discernible(&self, first: &str, second: &str) -> Result<bool> {
        Ok(self.composition_profile(first)? != self.composition_profile(second)?)
    }

    /// Same morphisms with every composite reversed.
    pub fn opposite(&self) -> ObjlessCategory {
        let table = self.fast.iter().map(|(&(g, f), &h)| ((f, g), h)).collect();
        Self::from_indexed(self.names.clone(), table)
            .expect("the opposite of a valid category is valid")
    }

    /// Full subcategory on the given identities.
    pub fn full_subcategory(&self, identities: &[Arrow]) -> ObjlessCategory {
        let keep: BTreeSet<Arrow> = identities.iter().copied().collect();
        let kept: Vec<Arrow> = self
            .arrows()
            .filter(|&a| keep.contains(&self.dom(a)) && keep.contains(&self.cod(a)))
            .collect();
        let renumber: HashMap<Arrow, Arrow> = kept
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, Arrow::from_index(i)))
            .collect();
        let mut table = HashMap::new();
        for ((g, f), h) in self.entries() {
            if let (Some(&g2), Some(&f2)) = (renumber.get(&g), renumber.get(&f)) {
                table.insert((g2, f2), renumber[&h]);
            }
        }
        let names = kept.iter().map(|&a| self.name(a).clone()).collect();
        Self::from_indexed(names, table).expect("full subcategories of a valid category are valid")
    }
}
