//! The objects-and-arrows presentation and conversions to and from the
//! arrow-only form.
//!
//! Converting to arrow-only form keeps arrow names and the table and forgets
//! objects; each object survives as its identity arrow. Converting back names
//! every object after its identity arrow.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{KernelError, Result};
use crate::iso;
use crate::kernel::{CompositionTable, ObjlessCategory};
use crate::name::{MorphismName, ObjectName};
use crate::report::{ValidationReport, ViolationKind};

/// A category given by objects, typed arrows, identity assignments and a
/// composition table over arrow names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StdCategory {
    pub objects: BTreeSet<ObjectName>,
    /// arrow name -> (domain, codomain)
    pub arrows: BTreeMap<MorphismName, (ObjectName, ObjectName)>,
    pub table: CompositionTable,
    pub id_of: BTreeMap<ObjectName, MorphismName>,
}

impl StdCategory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: ObjectName) -> Result<()> {
        if !self.objects.insert(name.clone()) {
            return Err(KernelError::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    pub fn add_arrow(&mut self, name: MorphismName, dom: ObjectName, cod: ObjectName) -> Result<()> {
        for o in [&dom, &cod] {
            if !self.objects.contains(o) {
                return Err(KernelError::NameNotFound(o.to_string()));
            }
        }
        if self.arrows.contains_key(&name) {
            return Err(KernelError::DuplicateName(name.to_string()));
        }
        self.arrows.insert(name, (dom, cod));
        Ok(())
    }

    /// Declares `name` as the identity arrow of `object`, adding the arrow.
    pub fn set_identity(&mut self, object: ObjectName, name: MorphismName) -> Result<()> {
        if self.id_of.contains_key(&object) {
            return Err(KernelError::DuplicateName(format!("identity of {object}")));
        }
        self.add_arrow(name.clone(), object.clone(), object.clone())?;
        self.id_of.insert(object, name);
        Ok(())
    }

    /// Adds `id_B` identities for objects that have none.
    pub fn name_missing_identities(&mut self) -> Result<()> {
        let missing: Vec<ObjectName> = self
            .objects
            .iter()
            .filter(|o| !self.id_of.contains_key(*o))
            .cloned()
            .collect();
        for o in missing {
            let name = MorphismName::new(format!("id_{o}"))?;
            self.set_identity(o, name)?;
        }
        Ok(())
    }

    /// Adds the entries `f . id = f` and `id . g = g` forced by the identity
    /// laws. Returns the conflicts with entries already present.
    pub fn complete_identities(&mut self) -> Vec<crate::kernel::Conflict> {
        let mut conflicts = Vec::new();
        for (obj, id) in &self.id_of {
            for (name, (d, c)) in &self.arrows {
                if d == obj {
                    if let Err(e) = self.table.insert(name.clone(), id.clone(), name.clone()) {
                        conflicts.push(e);
                    }
                }
                if c == obj {
                    if let Err(e) = self.table.insert(id.clone(), name.clone(), name.clone()) {
                        conflicts.push(e);
                    }
                }
            }
        }
        conflicts
    }

    pub fn compose(&mut self, after: &str, before: &str, result: &str) -> Result<()> {
        let _ = self
            .table
            .insert(MorphismName::new(after)?, MorphismName::new(before)?, MorphismName::new(result)?);
        Ok(())
    }

    pub fn is_identity_arrow(&self, name: &MorphismName) -> bool {
        self.id_of.values().any(|n| n == name)
    }

    /// Renames every object `B` to the name of its identity arrow.
    pub fn objects_renamed_to_identities(&self) -> StdCategory {
        let rename = |o: &ObjectName| {
            self.id_of
                .get(o)
                .map(|id| ObjectName::new(id.as_str()).expect("arrow names are valid object names"))
                .unwrap_or_else(|| o.clone())
        };
        StdCategory {
            objects: self.objects.iter().map(rename).collect(),
            arrows: self
                .arrows
                .iter()
                .map(|(n, (d, c))| (n.clone(), (rename(d), rename(c))))
                .collect(),
            table: self.table.clone(),
            id_of: self.id_of.iter().map(|(o, id)| (rename(o), id.clone())).collect(),
        }
    }
}

/// Checks typing, totality on composable pairs, associativity and neutrality
/// of the declared identities.
pub fn validate_standard(c: &StdCategory) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let arrow = |n: &MorphismName| {
        c.arrows
            .get(n)
            .ok_or_else(|| KernelError::NameNotFound(n.to_string()))
    };
    for (n, (d, cd)) in &c.arrows {
        for o in [d, cd] {
            if !c.objects.contains(o) {
                return Err(KernelError::NameNotFound(format!("object {o} (used by {n})")));
            }
        }
    }
    for n in c.table.names() {
        arrow(n)?;
    }
    for (o, id) in &c.id_of {
        if !c.objects.contains(o) {
            return Err(KernelError::NameNotFound(o.to_string()));
        }
        arrow(id)?;
    }

    for conflict in c.table.conflicts() {
        report.push(
            ViolationKind::Functionality,
            &[&conflict.after, &conflict.before],
            format!(
                "{} . {} is given as both {} and {}",
                conflict.after, conflict.before, conflict.kept, conflict.rejected
            ),
        );
    }
    for o in &c.objects {
        match c.id_of.get(o) {
            None => report.push(
                ViolationKind::IdentityMissing,
                &[],
                format!("object {o} has no identity arrow"),
            ),
            Some(id) => {
                let (d, cd) = &c.arrows[id];
                if d != o || cd != o {
                    report.push(
                        ViolationKind::Typing,
                        &[id],
                        format!("identity {id} of {o} is typed {d} -> {cd}"),
                    );
                }
            }
        }
    }
    for (g, f, h) in c.table.iter() {
        let ((fd, fc), (gd, gc), (hd, hc)) = (&c.arrows[f], &c.arrows[g], &c.arrows[h]);
        if fc != gd {
            report.push(
                ViolationKind::Typing,
                &[g, f],
                format!("{g} . {f} is listed but {f} ends at {fc} and {g} starts at {gd}"),
            );
        } else if hd != fd || hc != gc {
            report.push(
                ViolationKind::Typing,
                &[g, f, h],
                format!("{g} . {f} = {h} should be {fd} -> {gc} but {h} is {hd} -> {hc}"),
            );
        }
    }

    let mut incoming: BTreeMap<&ObjectName, Vec<&MorphismName>> = BTreeMap::new();
    let mut outgoing: BTreeMap<&ObjectName, Vec<&MorphismName>> = BTreeMap::new();
    for (n, (d, cd)) in &c.arrows {
        outgoing.entry(d).or_default().push(n);
        incoming.entry(cd).or_default().push(n);
    }
    for o in &c.objects {
        let (ins, outs) = (
            incoming.get(o).map(Vec::as_slice).unwrap_or(&[]),
            outgoing.get(o).map(Vec::as_slice).unwrap_or(&[]),
        );
        for f in ins {
            for g in outs {
                if report.is_full() {
                    return Ok(report);
                }
                if c.table.get(g, f).is_none() {
                    report.push(
                        ViolationKind::CompositionMissing,
                        &[g, f],
                        format!("{g} . {f} is composable through {o} but has no entry"),
                    );
                }
            }
        }
    }

    for (g, f, gf) in c.table.iter() {
        // h . (g . f) against (h . g) . f
        let Some(outs) = outgoing.get(&c.arrows[g].1) else {
            continue;
        };
        for h in outs {
            if report.is_full() {
                return Ok(report);
            }
            let left = c.table.get(h, gf);
            let right = c.table.get(h, g).and_then(|hg| c.table.get(hg, f));
            if let (Some(l), Some(r)) = (left, right) {
                if l != r {
                    report.push(
                        ViolationKind::AssociativityEqual,
                        &[h, g, f],
                        format!("{h} . ({g} . {f}) = {l} but ({h} . {g}) . {f} = {r}"),
                    );
                }
            }
        }
    }

    for (o, id) in &c.id_of {
        for f in incoming.get(o).into_iter().flatten() {
            if let Some(r) = c.table.get(id, f) {
                if r != *f {
                    report.push(
                        ViolationKind::IdentityNonneutral,
                        &[id, f, r],
                        format!("{id} . {f} = {r}, expected {f}"),
                    );
                }
            }
        }
        for g in outgoing.get(o).into_iter().flatten() {
            if let Some(r) = c.table.get(g, id) {
                if r != *g {
                    report.push(
                        ViolationKind::IdentityNonneutral,
                        &[id, g, r],
                        format!("{g} . {id} = {r}, expected {g}"),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Forgets objects: arrow names and the table carry over unchanged.
pub fn to_objectless(c: &StdCategory) -> Result<ObjlessCategory> {
    let report = validate_standard(c)?;
    if !report.ok {
        return Err(KernelError::Invalid(report));
    }
    let cat = ObjlessCategory::new(c.arrows.keys().cloned(), &c.table)?;
    debug_assert!(cat
        .identity_names()
        .eq(c.id_of.values().collect::<BTreeSet<_>>().into_iter()));
    Ok(cat)
}

/// Restores objects, naming each after its identity arrow.
pub fn to_standard(c: &ObjlessCategory) -> StdCategory {
    let obj = |n: &MorphismName| ObjectName::new(n.as_str()).expect("arrow names are valid object names");
    StdCategory {
        objects: c.identity_names().map(obj).collect(),
        arrows: c
            .arrows()
            .map(|a| (c.name(a).clone(), (obj(c.name(c.dom(a))), obj(c.name(c.cod(a))))))
            .collect(),
        table: c.composition_table(),
        id_of: c.identity_names().map(|i| (obj(i), i.clone())).collect(),
    }
}

/// Bijections carrying one presentation exactly onto another.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Renaming {
    pub objects: BTreeMap<ObjectName, ObjectName>,
    pub arrows: BTreeMap<MorphismName, MorphismName>,
}

/// Searches for object and arrow bijections transporting `c` onto `d`.
pub fn equal_up_to_renaming(c: &StdCategory, d: &StdCategory) -> Result<Option<Renaming>> {
    let (oc, od) = (Arc::new(to_objectless(c)?), Arc::new(to_objectless(d)?));
    let Some(f) = iso::find_category_isomorphism(&oc, &od)? else {
        return Ok(None);
    };
    let arrows: BTreeMap<MorphismName, MorphismName> = oc
        .arrows()
        .map(|a| (oc.name(a).clone(), od.name(f.at(a)).clone()))
        .collect();
    let object_of = |s: &StdCategory, id: &MorphismName| {
        s.id_of
            .iter()
            .find(|(_, i)| *i == id)
            .map(|(o, _)| o.clone())
            .expect("identity arrows belong to objects")
    };
    let objects = c
        .id_of
        .iter()
        .map(|(o, id)| (o.clone(), object_of(d, &arrows[id])))
        .collect();
    Ok(Some(Renaming { objects, arrows }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{fixtures, mname, oname};

    fn std_two_chain() -> StdCategory {
        let mut s = StdCategory::new();
        s.add_object(oname("X0")).unwrap();
        s.add_object(oname("X1")).unwrap();
        s.name_missing_identities().unwrap();
        s.add_arrow(mname("a"), oname("X0"), oname("X1")).unwrap();
        assert!(s.complete_identities().is_empty());
        s
    }

    #[test]
    fn standard_two_chain_is_valid() {
        let r = validate_standard(&std_two_chain()).unwrap();
        assert!(r.ok, "{r}");
    }

    #[test]
    fn dropped_entry_is_reported_missing() {
        let mut s = std_two_chain();
        s.table.remove("a", "id_X0").unwrap();
        let r = validate_standard(&s).unwrap();
        let missing: Vec<_> = r.of_kind(ViolationKind::CompositionMissing).collect();
        assert_eq!(missing.len(), 1, "{r}");
        assert_eq!(missing[0].witnesses, vec![mname("a"), mname("id_X0")]);
    }

    #[test]
    fn non_neutral_identity_is_reported() {
        let mut s = std_two_chain();
        s.table.remove("a", "id_X0").unwrap();
        s.compose("a", "id_X0", "id_X1").unwrap();
        let r = validate_standard(&s).unwrap();
        assert!(r.has(ViolationKind::IdentityNonneutral), "{r}");
    }

    #[test]
    fn conversion_matches_the_objectless_fixture() {
        let mut s = StdCategory::new();
        s.add_object(oname("O0")).unwrap();
        s.add_object(oname("O1")).unwrap();
        s.set_identity(oname("O0"), mname("i0")).unwrap();
        s.set_identity(oname("O1"), mname("i1")).unwrap();
        s.add_arrow(mname("a"), oname("O0"), oname("O1")).unwrap();
        s.complete_identities();
        let c = to_objectless(&s).unwrap();
        assert_eq!(c, fixtures::two_chain());
        assert_eq!(c.hom_class("i0", "i1").unwrap(), vec!["a"]);
    }

    #[test]
    fn discrete_conversion() {
        let c = to_objectless(&crate::gen::gen_discrete(3)).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.table_len(), 3);
        assert_eq!(c.identities().len(), 3);
    }

    #[test]
    fn finsetdup_has_four_identities() {
        let s = crate::gen::gen_finset(2, &[1]).unwrap();
        assert_eq!(to_objectless(&s).unwrap().identities().len(), 4);
    }

    #[test]
    fn to_standard_examples() {
        let s = to_standard(&fixtures::two_chain());
        assert_eq!(s.objects, BTreeSet::from([oname("i0"), oname("i1")]));
        assert_eq!(s.arrows[&mname("a")], (oname("i0"), oname("i1")));
        let one = to_standard(&fixtures::one());
        assert_eq!(one.objects.len(), 1);
        assert_eq!(one.arrows.len(), 1);
        let z2 = to_standard(&fixtures::z2());
        assert_eq!(z2.objects.len(), 1);
        assert_eq!(z2.arrows.len(), 2);
    }

    #[test]
    fn round_trips() {
        for (_, c) in fixtures::pool() {
            assert_eq!(to_objectless(&to_standard(&c)).unwrap(), c);
        }
        let s = std_two_chain();
        let back = to_standard(&to_objectless(&s).unwrap());
        assert_eq!(back, s.objects_renamed_to_identities());
    }

    #[test]
    fn renaming_search() {
        let s = std_two_chain();
        let r = equal_up_to_renaming(&s, &s).unwrap().unwrap();
        assert!(r.arrows.iter().all(|(a, b)| a == b));
        assert!(r.objects.iter().all(|(a, b)| a == b));

        let relabelled = to_standard(&fixtures::two_chain());
        let r = equal_up_to_renaming(&s, &relabelled).unwrap().unwrap();
        assert_eq!(r.objects[&oname("X0")], oname("i0"));
        assert_eq!(r.arrows[&mname("a")], mname("a"));
        assert_eq!(r.arrows[&mname("id_X1")], mname("i1"));

        let discrete = crate::gen::gen_discrete(2);
        assert_eq!(equal_up_to_renaming(&s, &discrete).unwrap(), None);
    }
}
