use std::fmt::Write;

use super::document::{CatspecDocument, CategoryBody, FunctorDecl, NatDecl};
use crate::bridge::StdCategory;
use crate::functor::Variance;

/// Canonical text: categories, then functors, then transformations, each
/// sorted by name, with sorted arrows and compositions.
pub fn serialize(doc: &CatspecDocument) -> String {
    let mut blocks = Vec::new();
    for (name, body) in &doc.categories {
        blocks.push(match body {
            CategoryBody::Objless { morphisms, table } => {
                let mut s = format!("objless {name} {{\n");
                let arrows: Vec<&str> = morphisms.iter().map(|m| m.as_str()).collect();
                if !arrows.is_empty() {
                    writeln!(s, "  arrows: {};", arrows.join(", ")).unwrap();
                }
                for ((g, f), h) in table {
                    writeln!(s, "  compose: {g} . {f} = {h};").unwrap();
                }
                s.push_str("}\n");
                s
            }
            CategoryBody::Standard(c) => standard(name, c),
        });
    }
    for (name, f) in &doc.functors {
        blocks.push(functor(name, f));
    }
    for (name, t) in &doc.nats {
        blocks.push(nat(name, t));
    }
    blocks.join("\n")
}

fn standard(name: &str, c: &StdCategory) -> String {
    let mut s = format!("category {name} {{\n");
    if !c.objects.is_empty() {
        let objs: Vec<&str> = c.objects.iter().map(|o| o.as_str()).collect();
        writeln!(s, "  objects: {};", objs.join(", ")).unwrap();
    }
    for (obj, id) in &c.id_of {
        if id.as_str() != format!("id_{obj}") {
            writeln!(s, "  id {obj} = {id};").unwrap();
        }
    }
    for (a, (d, cod)) in &c.arrows {
        if !c.is_identity_arrow(a) {
            writeln!(s, "  arrow {a}: {d} -> {cod};").unwrap();
        }
    }
    for (g, f, h) in c.table.iter() {
        // entries forced by the identity laws are restored on parsing
        let forced = (c.is_identity_arrow(g) && h == f) || (c.is_identity_arrow(f) && h == g);
        if !forced {
            writeln!(s, "  compose: {g} . {f} = {h};").unwrap();
        }
    }
    s.push_str("}\n");
    s
}

fn functor(name: &str, f: &FunctorDecl) -> String {
    let variance = match f.variance {
        Variance::Covariant => "",
        Variance::Contravariant => " contravariant",
    };
    let mut s = format!("functor {name}: {} -> {}{variance} {{\n", f.source, f.target);
    for (a, b) in &f.map {
        writeln!(s, "  map {a} -> {b};").unwrap();
    }
    s.push_str("}\n");
    s
}

fn nat(name: &str, t: &NatDecl) -> String {
    let mut s = format!("nat {name}: {} => {} {{\n", t.from, t.to);
    for (i, k) in &t.components {
        writeln!(s, "  component {i}: {k};").unwrap();
    }
    s.push_str("}\n");
    s
}
