//! Parsing in two passes: syntax into raw items, then name resolution into a
//! [`CatspecDocument`]. Either pass failing fails the whole parse.

use std::collections::{BTreeMap, BTreeSet};

use super::diagnostic::{Diagnostic, DiagnosticKind, Span};
use super::document::{CatspecDocument, CategoryBody, FunctorAtom, FunctorDecl, FunctorExpr, NatDecl};
use super::lexer::{lex, Tok, Token};
use crate::bridge::StdCategory;
use crate::functor::Variance;
use crate::kernel::CompositionTable;
use crate::name::{MorphismName, ObjectName};

#[derive(Debug, Clone)]
struct Ident {
    text: String,
    span: Span,
}

#[derive(Debug, Clone)]
struct Entry {
    after: Ident,
    before: Ident,
    result: Ident,
}

#[derive(Debug, Clone)]
struct Atom {
    ident: Ident,
    identity: bool,
}

#[derive(Debug)]
enum Item {
    Objless {
        name: Ident,
        arrows: Vec<Ident>,
        compose: Vec<Entry>,
    },
    Category {
        name: Ident,
        objects: Vec<Ident>,
        /// (name, dom, cod)
        arrows: Vec<(Ident, Ident, Ident)>,
        /// (object, arrow)
        ids: Vec<(Ident, Ident)>,
        compose: Vec<Entry>,
    },
    Functor {
        name: Ident,
        source: Ident,
        target: Ident,
        variance: Variance,
        maps: Vec<(Ident, Ident)>,
    },
    Nat {
        name: Ident,
        from: Vec<Atom>,
        to: Vec<Atom>,
        components: Vec<(Ident, Ident)>,
    },
}

struct Syntax {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Syntax {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn eof_span(&self) -> Span {
        self.toks.last().map_or(Span { line: 1, col: 1 }, |t| Span {
            line: t.end.line,
            col: t.end.col + 1,
        })
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        match self.toks.get(self.pos) {
            Some(t) => Diagnostic::new(
                DiagnosticKind::Syntax,
                t.start,
                format!("expected {wanted}, found {}", t.tok.describe()),
            ),
            None => Diagnostic::new(
                DiagnosticKind::Syntax,
                self.eof_span(),
                format!("expected {wanted}, found end of input"),
            ),
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        match self.toks.get(self.pos) {
            Some(Token {
                tok: Tok::Ident(s),
                start,
                ..
            }) => {
                let id = Ident {
                    text: s.clone(),
                    span: *start,
                };
                self.pos += 1;
                Ok(id)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    /// A `;` closing a statement. When the next token starts a new line or
    /// closes the block, the terminator is reported missing after the
    /// previous token.
    fn terminator(&mut self) -> PResult<()> {
        if self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            return Ok(());
        }
        let prev = &self.toks[self.pos - 1];
        let missing = match self.toks.get(self.pos) {
            None => true,
            Some(t) => t.tok == Tok::RBrace || t.start.line > prev.end.line,
        };
        if missing {
            Err(Diagnostic::new(
                DiagnosticKind::MissingTerminator,
                Span {
                    line: prev.end.line,
                    col: prev.end.col + 1,
                },
                format!("missing `;` after {}", prev.tok.describe()),
            ))
        } else {
            Err(self.unexpected("`;` or `,`"))
        }
    }

    fn list<T>(&mut self, mut one: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = vec![one(self)?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            out.push(one(self)?);
        }
        Ok(out)
    }

    fn entry(&mut self) -> PResult<Entry> {
        let after = self.ident("a morphism name")?;
        self.expect(Tok::Dot)?;
        let before = self.ident("a morphism name")?;
        self.expect(Tok::Eq)?;
        let result = self.ident("a morphism name")?;
        Ok(Entry { after, before, result })
    }

    fn block_end(&mut self) -> bool {
        if self.peek() == Some(&Tok::RBrace) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn statement_keyword(&mut self, allowed: &[&str]) -> PResult<String> {
        let wanted = allowed.iter().map(|k| format!("`{k}`")).collect::<Vec<_>>().join(", ");
        match self.peek() {
            Some(Tok::Ident(s)) if allowed.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(&format!("one of {wanted} or `}}`"))),
        }
    }

    fn objless(&mut self) -> PResult<Item> {
        let name = self.ident("a category name")?;
        self.expect(Tok::LBrace)?;
        let (mut arrows, mut compose) = (Vec::new(), Vec::new());
        while !self.block_end() {
            match self.statement_keyword(&["arrows", "compose"])?.as_str() {
                "arrows" => {
                    self.expect(Tok::Colon)?;
                    arrows.extend(self.list(|p| p.ident("a morphism name"))?);
                }
                _ => {
                    self.expect(Tok::Colon)?;
                    compose.extend(self.list(Self::entry)?);
                }
            }
            self.terminator()?;
        }
        Ok(Item::Objless { name, arrows, compose })
    }

    fn category(&mut self) -> PResult<Item> {
        let name = self.ident("a category name")?;
        self.expect(Tok::LBrace)?;
        let (mut objects, mut arrows, mut ids, mut compose) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        while !self.block_end() {
            match self.statement_keyword(&["objects", "arrow", "id", "compose"])?.as_str() {
                "objects" => {
                    self.expect(Tok::Colon)?;
                    objects.extend(self.list(|p| p.ident("an object name"))?);
                }
                "arrow" => {
                    let names = self.list(|p| p.ident("an arrow name"))?;
                    self.expect(Tok::Colon)?;
                    let dom = self.ident("an object name")?;
                    self.expect(Tok::Arrow)?;
                    let cod = self.ident("an object name")?;
                    arrows.extend(names.into_iter().map(|n| (n, dom.clone(), cod.clone())));
                }
                "id" => {
                    let obj = self.ident("an object name")?;
                    self.expect(Tok::Eq)?;
                    ids.push((obj, self.ident("an arrow name")?));
                }
                _ => {
                    self.expect(Tok::Colon)?;
                    compose.extend(self.list(Self::entry)?);
                }
            }
            self.terminator()?;
        }
        Ok(Item::Category {
            name,
            objects,
            arrows,
            ids,
            compose,
        })
    }

    fn functor(&mut self) -> PResult<Item> {
        let name = self.ident("a functor name")?;
        self.expect(Tok::Colon)?;
        let source = self.ident("a category name")?;
        self.expect(Tok::Arrow)?;
        let target = self.ident("a category name")?;
        let variance = if self.at_keyword("contravariant") {
            self.pos += 1;
            Variance::Contravariant
        } else if self.at_keyword("covariant") {
            self.pos += 1;
            Variance::Covariant
        } else {
            Variance::Covariant
        };
        self.expect(Tok::LBrace)?;
        let mut maps = Vec::new();
        while !self.block_end() {
            self.statement_keyword(&["map"])?;
            maps.extend(self.list(|p| {
                let a = p.ident("a morphism name")?;
                p.expect(Tok::Arrow)?;
                Ok((a, p.ident("a morphism name")?))
            })?);
            self.terminator()?;
        }
        Ok(Item::Functor {
            name,
            source,
            target,
            variance,
            maps,
        })
    }

    fn atom(&mut self) -> PResult<Atom> {
        let ident = self.ident("a functor or `id(...)`")?;
        if ident.text == "id" && self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            let cat = self.ident("a category name")?;
            self.expect(Tok::RParen)?;
            return Ok(Atom {
                ident: cat,
                identity: true,
            });
        }
        Ok(Atom { ident, identity: false })
    }

    fn functor_expr(&mut self) -> PResult<Vec<Atom>> {
        let mut out = vec![self.atom()?];
        while self.peek() == Some(&Tok::Dot) {
            self.pos += 1;
            out.push(self.atom()?);
        }
        Ok(out)
    }

    fn nat(&mut self) -> PResult<Item> {
        let name = self.ident("a transformation name")?;
        self.expect(Tok::Colon)?;
        let from = self.functor_expr()?;
        self.expect(Tok::FatArrow)?;
        let to = self.functor_expr()?;
        self.expect(Tok::LBrace)?;
        let mut components = Vec::new();
        while !self.block_end() {
            self.statement_keyword(&["component"])?;
            components.extend(self.list(|p| {
                let i = p.ident("an identity or object name")?;
                p.expect(Tok::Colon)?;
                Ok((i, p.ident("a morphism name")?))
            })?);
            self.terminator()?;
        }
        Ok(Item::Nat {
            name,
            from,
            to,
            components,
        })
    }

    fn items(&mut self) -> PResult<Vec<Item>> {
        let mut out = Vec::new();
        while self.peek().is_some() {
            let kw = self.statement_keyword_top()?;
            out.push(match kw.as_str() {
                "objless" => self.objless()?,
                "category" => self.category()?,
                "functor" => self.functor()?,
                _ => self.nat()?,
            });
        }
        Ok(out)
    }

    fn statement_keyword_top(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if ["objless", "category", "functor", "nat"].contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("`objless`, `category`, `functor` or `nat`")),
        }
    }
}

/// Name resolution over the whole document.
#[derive(Default)]
struct Resolver {
    diags: Vec<Diagnostic>,
    doc: CatspecDocument,
}

impl Resolver {
    fn err(&mut self, kind: DiagnosticKind, span: Span, msg: String) {
        self.diags.push(Diagnostic::new(kind, span, msg));
    }

    fn unknown(&mut self, what: &str, id: &Ident, scope: &str) {
        self.err(
            DiagnosticKind::UnknownName,
            id.span,
            format!("unknown {what} `{}` in {scope}", id.text),
        );
    }

    fn duplicate(&mut self, what: &str, id: &Ident, scope: &str) {
        self.err(
            DiagnosticKind::DuplicateName,
            id.span,
            format!("{what} `{}` is declared twice in {scope}", id.text),
        );
    }

    /// Resolves composition entries over a set of arrow names; returns the
    /// conflict-free table with the span of each entry.
    fn table(
        &mut self,
        scope: &str,
        arrows: &BTreeSet<String>,
        entries: &[Entry],
    ) -> BTreeMap<(MorphismName, MorphismName), (MorphismName, Span)> {
        let mut table: BTreeMap<(MorphismName, MorphismName), (MorphismName, Span)> = BTreeMap::new();
        for e in entries {
            let mut ok = true;
            for id in [&e.after, &e.before, &e.result] {
                if !arrows.contains(&id.text) {
                    self.unknown("morphism", id, scope);
                    ok = false;
                }
            }
            if !ok {
                continue;
            }
            let key = (name(&e.after), name(&e.before));
            let result = name(&e.result);
            match table.get(&key) {
                Some((prev, at)) if *prev != result => {
                    let msg = format!(
                        "{} . {} = {} conflicts with {} at line {}",
                        e.after.text, e.before.text, e.result.text, prev, at.line
                    );
                    self.err(DiagnosticKind::ConflictingComposition, e.after.span, msg);
                }
                Some(_) => {}
                None => {
                    table.insert(key, (result, e.after.span));
                }
            }
        }
        table
    }

    fn declare(&mut self, what: &str, id: &Ident, seen: &mut BTreeSet<String>, scope: &str) -> bool {
        if !seen.insert(id.text.clone()) {
            self.duplicate(what, id, scope);
            return false;
        }
        true
    }

    fn objless(&mut self, name_id: &Ident, arrows: &[Ident], compose: &[Entry]) {
        let scope = format!("category {}", name_id.text);
        let mut seen = BTreeSet::new();
        for a in arrows {
            self.declare("morphism", a, &mut seen, &scope);
        }
        let table = self.table(&scope, &seen, compose);
        let body = CategoryBody::Objless {
            morphisms: seen.iter().map(|s| MorphismName::new(s.as_str()).unwrap()).collect(),
            table: table.into_iter().map(|(k, (v, _))| (k, v)).collect(),
        };
        self.doc.categories.insert(name_id.text.clone(), body);
    }

    fn category(
        &mut self,
        name_id: &Ident,
        objects: &[Ident],
        arrows: &[(Ident, Ident, Ident)],
        ids: &[(Ident, Ident)],
        compose: &[Entry],
    ) {
        let scope = format!("category {}", name_id.text);
        let mut s = StdCategory::new();
        let mut seen_objects = BTreeSet::new();
        for o in objects {
            if self.declare("object", o, &mut seen_objects, &scope) {
                s.add_object(ObjectName::new(o.text.as_str()).unwrap()).unwrap();
            }
        }
        let mut seen_arrows = BTreeSet::new();
        let mut arrow_spans = BTreeMap::new();
        for (obj, id) in ids {
            if !seen_objects.contains(&obj.text) {
                self.unknown("object", obj, &scope);
                continue;
            }
            if s.id_of.contains_key(obj.text.as_str()) {
                self.err(
                    DiagnosticKind::DuplicateName,
                    obj.span,
                    format!("object `{}` has two identities in {scope}", obj.text),
                );
                continue;
            }
            if self.declare("arrow", id, &mut seen_arrows, &scope) {
                arrow_spans.insert(id.text.clone(), id.span);
                s.set_identity(ObjectName::new(obj.text.as_str()).unwrap(), name(id)).unwrap();
            }
        }
        for (a, d, c) in arrows {
            let mut ok = true;
            for o in [d, c] {
                if !seen_objects.contains(&o.text) {
                    self.unknown("object", o, &scope);
                    ok = false;
                }
            }
            if self.declare("arrow", a, &mut seen_arrows, &scope) && ok {
                arrow_spans.insert(a.text.clone(), a.span);
                s.add_arrow(name(a), ObjectName::new(d.text.as_str()).unwrap(), ObjectName::new(c.text.as_str()).unwrap())
                    .unwrap();
            }
        }
        let missing: Vec<String> = seen_objects
            .iter()
            .filter(|o| !s.id_of.contains_key(o.as_str()))
            .cloned()
            .collect();
        for o in missing {
            let auto = format!("id_{o}");
            if let Some(&span) = arrow_spans.get(&auto) {
                self.err(
                    DiagnosticKind::DuplicateName,
                    span,
                    format!("arrow `{auto}` clashes with the default identity of `{o}` in {scope}"),
                );
                continue;
            }
            seen_arrows.insert(auto.clone());
            s.set_identity(ObjectName::new(o.as_str()).unwrap(), MorphismName::new(auto).unwrap())
                .unwrap();
        }
        let table = self.table(&scope, &seen_arrows, compose);
        let mut spans = BTreeMap::new();
        for ((g, f), (h, span)) in table {
            spans.insert((g.clone(), f.clone()), span);
            let _ = s.table.insert(g, f, h);
        }
        for c in s.complete_identities() {
            let span = spans[&(c.after.clone(), c.before.clone())];
            self.err(
                DiagnosticKind::ConflictingComposition,
                span,
                format!(
                    "{} . {} = {} conflicts with the identity law, which gives {}",
                    c.after, c.before, c.kept, c.rejected
                ),
            );
        }
        self.doc.categories.insert(name_id.text.clone(), CategoryBody::Standard(s));
    }

    fn functor(&mut self, name_id: &Ident, source: &Ident, target: &Ident, variance: Variance, maps: &[(Ident, Ident)]) {
        let scope = format!("functor {}", name_id.text);
        let mut ok = true;
        for c in [source, target] {
            if !self.doc.categories.contains_key(&c.text) {
                self.unknown("category", c, &scope);
                ok = false;
            }
        }
        let mut map = BTreeMap::new();
        if ok {
            let (src, tgt) = (&self.doc.categories[&source.text], &self.doc.categories[&target.text]);
            let mut bad = Vec::new();
            let mut dup = Vec::new();
            for (a, b) in maps {
                if !src.has_arrow(&a.text) {
                    bad.push((a.clone(), source.text.clone()));
                } else if !tgt.has_arrow(&b.text) {
                    bad.push((b.clone(), target.text.clone()));
                } else if map.insert(name(a), name(b)).is_some() {
                    dup.push(a.clone());
                }
            }
            for (id, cat) in bad {
                self.unknown("morphism", &id, &format!("category {cat} ({scope})"));
            }
            for id in dup {
                self.duplicate("mapping of", &id, &scope);
            }
        }
        self.doc.functors.insert(
            name_id.text.clone(),
            FunctorDecl {
                source: source.text.clone(),
                target: target.text.clone(),
                variance,
                map,
            },
        );
    }

    /// Source and target category names of a functor chain.
    fn chain_ends(&mut self, atoms: &[Atom], scope: &str) -> Option<(String, String)> {
        let mut ends = Vec::new();
        for a in atoms {
            if a.identity {
                if !self.doc.categories.contains_key(&a.ident.text) {
                    self.unknown("category", &a.ident, scope);
                    return None;
                }
                ends.push((a.ident.text.clone(), a.ident.text.clone()));
            } else {
                let Some(f) = self.doc.functors.get(&a.ident.text) else {
                    self.unknown("functor", &a.ident, scope);
                    return None;
                };
                ends.push((f.source.clone(), f.target.clone()));
            }
        }
        for k in 1..ends.len() {
            if ends[k].1 != ends[k - 1].0 {
                self.err(
                    DiagnosticKind::TypeMismatch,
                    atoms[k - 1].ident.span,
                    format!(
                        "cannot compose {} after {}: {} lands in {} but {} starts at {}",
                        atoms[k - 1].ident.text,
                        atoms[k].ident.text,
                        atoms[k].ident.text,
                        ends[k].1,
                        atoms[k - 1].ident.text,
                        ends[k - 1].0
                    ),
                );
                return None;
            }
        }
        Some((ends.last().unwrap().0.clone(), ends[0].1.clone()))
    }

    fn nat(&mut self, name_id: &Ident, from: &[Atom], to: &[Atom], components: &[(Ident, Ident)]) {
        let scope = format!("transformation {}", name_id.text);
        let a = self.chain_ends(from, &scope);
        let b = self.chain_ends(to, &scope);
        let mut comps = BTreeMap::new();
        if let (Some(a), Some(b)) = (a, b) {
            if a != b {
                self.err(
                    DiagnosticKind::TypeMismatch,
                    to[0].ident.span,
                    format!(
                        "{scope} relates functors {} -> {} and {} -> {}",
                        a.0, a.1, b.0, b.1
                    ),
                );
            } else {
                let (src, tgt) = (&self.doc.categories[&a.0], &self.doc.categories[&a.1]);
                let mut bad = Vec::new();
                let mut dup = Vec::new();
                for (i, k) in components {
                    if !src.has_component_key(&i.text) {
                        bad.push(("identity or object", i.clone(), a.0.clone()));
                    } else if !tgt.has_arrow(&k.text) {
                        bad.push(("morphism", k.clone(), a.1.clone()));
                    } else if comps.insert(i.text.clone(), name(k)).is_some() {
                        dup.push(i.clone());
                    }
                }
                for (what, id, cat) in bad {
                    self.unknown(what, &id, &format!("category {cat} ({scope})"));
                }
                for id in dup {
                    self.duplicate("component at", &id, &scope);
                }
            }
        }
        let expr = |atoms: &[Atom]| {
            FunctorExpr(
                atoms
                    .iter()
                    .map(|a| {
                        if a.identity {
                            FunctorAtom::Identity(a.ident.text.clone())
                        } else {
                            FunctorAtom::Named(a.ident.text.clone())
                        }
                    })
                    .collect(),
            )
        };
        self.doc.nats.insert(
            name_id.text.clone(),
            NatDecl {
                from: expr(from),
                to: expr(to),
                components: comps,
            },
        );
    }

    fn run(mut self, items: &[Item]) -> Result<CatspecDocument, Vec<Diagnostic>> {
        // categories first, then functors, then transformations, so that
        // references resolve regardless of declaration order
        for item in items {
            let (name_id, kind) = match item {
                Item::Objless { name, .. } | Item::Category { name, .. } => (name, "category"),
                _ => continue,
            };
            if self.doc.categories.contains_key(&name_id.text) {
                self.duplicate(kind, name_id, "the document");
                continue;
            }
            self.doc.spans.categories.insert(name_id.text.clone(), name_id.span);
            match item {
                Item::Objless { name, arrows, compose } => self.objless(name, arrows, compose),
                Item::Category {
                    name,
                    objects,
                    arrows,
                    ids,
                    compose,
                } => self.category(name, objects, arrows, ids, compose),
                _ => unreachable!(),
            }
        }
        for item in items {
            if let Item::Functor {
                name,
                source,
                target,
                variance,
                maps,
            } = item
            {
                if self.doc.functors.contains_key(&name.text) {
                    self.duplicate("functor", name, "the document");
                    continue;
                }
                self.doc.spans.functors.insert(name.text.clone(), name.span);
                self.functor(name, source, target, *variance, maps);
            }
        }
        for item in items {
            if let Item::Nat {
                name,
                from,
                to,
                components,
            } = item
            {
                if self.doc.nats.contains_key(&name.text) {
                    self.duplicate("transformation", name, "the document");
                    continue;
                }
                self.doc.spans.nats.insert(name.text.clone(), name.span);
                self.nat(name, from, to, components);
            }
        }
        if self.diags.is_empty() {
            Ok(self.doc)
        } else {
            self.diags.sort_by_key(|d| d.span);
            Err(self.diags)
        }
    }
}

fn name(id: &Ident) -> MorphismName {
    MorphismName::new(id.text.as_str()).expect("the lexer only produces valid names")
}

/// Parses a whole document. Diagnostics are sorted by position.
pub fn parse(text: &str) -> Result<CatspecDocument, Vec<Diagnostic>> {
    let toks = lex(text)?;
    let mut syntax = Syntax { toks, pos: 0 };
    let items = syntax.items().map_err(|d| vec![d])?;
    Resolver::default().run(&items)
}

/// The composition table of an arrow-only body, as a kernel table.
pub fn body_table(table: &BTreeMap<(MorphismName, MorphismName), MorphismName>) -> CompositionTable {
    let mut t = CompositionTable::new();
    for ((g, f), h) in table {
        let _ = t.insert(g.clone(), f.clone(), h.clone());
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_CHAIN: &str = "\
objless TwoChain {
  arrows: i0, i1, a;
  compose: i0 . i0 = i0, i1 . i1 = i1, a . i0 = a, i1 . a = a;
}
";

    fn first(text: &str) -> Diagnostic {
        parse(text).unwrap_err().remove(0)
    }

    #[test]
    fn two_chain_block() {
        let doc = parse(TWO_CHAIN).unwrap();
        assert_eq!(doc.categories.len(), 1);
        let CategoryBody::Objless { morphisms, table } = &doc.categories["TwoChain"] else {
            panic!("expected an arrow-only body")
        };
        assert_eq!(morphisms.len(), 3);
        assert_eq!(table.len(), 4);
        assert_eq!(doc.spans.categories["TwoChain"], Span { line: 1, col: 9 });
    }

    #[test]
    fn empty_input() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn undeclared_result_is_unknown() {
        let d = first("objless C {\n  arrows: a, b;\n  compose: b . a = c;\n}\n");
        assert_eq!(d.kind, DiagnosticKind::UnknownName);
        assert_eq!(d.span, Span { line: 3, col: 20 });
    }

    #[test]
    fn missing_terminator_points_after_previous_token() {
        let d = first("objless C {\n  arrows: a\n  compose: a . a = a;\n}\n");
        assert_eq!(d.kind, DiagnosticKind::MissingTerminator);
        assert_eq!(d.span, Span { line: 2, col: 12 });
        let d = first("objless C { arrows: a }");
        assert_eq!(d.kind, DiagnosticKind::MissingTerminator);
    }

    #[test]
    fn same_line_garbage_is_syntax() {
        let d = first("objless C { arrows: a b; }");
        assert_eq!(d.kind, DiagnosticKind::Syntax);
        assert_eq!(d.span.col, 23);
    }

    #[test]
    fn duplicates_and_conflicts() {
        let d = first("objless C { arrows: a, a; compose: a . a = a; }");
        assert_eq!(d.kind, DiagnosticKind::DuplicateName);
        let d = first("objless C {\n arrows: e, s;\n compose: s . s = e;\n compose: s . s = s;\n}");
        assert_eq!(d.kind, DiagnosticKind::ConflictingComposition);
        assert_eq!(d.span.line, 4);
        let d = first("objless C { arrows: e; }\nobjless C { arrows: e; }");
        assert_eq!((d.kind, d.span.line), (DiagnosticKind::DuplicateName, 2));
    }

    #[test]
    fn standard_block_completes_identities() {
        let doc = parse("category W {\n objects: A, B;\n arrow f: A -> B;\n arrow g: B -> A;\n compose: g . f = id_A, f . g = id_B;\n}")
            .unwrap();
        let CategoryBody::Standard(s) = &doc.categories["W"] else { panic!() };
        assert_eq!(s.arrows.len(), 4);
        // three identity entries per object plus the two declared
        assert_eq!(s.table.len(), 3 + 3 + 2);
        assert_eq!(*s, crate::gen::gen_walking_iso());
    }

    #[test]
    fn declared_identity_names() {
        let doc = parse("category C { objects: X; id X = one; }").unwrap();
        let CategoryBody::Standard(s) = &doc.categories["C"] else { panic!() };
        assert_eq!(s.id_of[&crate::oname("X")], "one");
        let d = first("category C { objects: X; arrow id_X: X -> X; }");
        assert_eq!(d.kind, DiagnosticKind::DuplicateName);
        let d = first("category C { objects: X; id Y = one; }");
        assert_eq!(d.kind, DiagnosticKind::UnknownName);
    }

    #[test]
    fn identity_law_conflict() {
        let d = first("category C { objects: X; arrow f: X -> X;\n compose: f . id_X = id_X; }");
        assert_eq!((d.kind, d.span.line), (DiagnosticKind::ConflictingComposition, 2));
    }

    #[test]
    fn functors_and_transformations_resolve() {
        let text = format!(
            "{TWO_CHAIN}\nfunctor F: TwoChain -> TwoChain {{ map i0 -> i0, i1 -> i1, a -> a; }}\n\
             nat t: F => id(TwoChain) . F {{ component i0: i0; component i1: i1; }}\n"
        );
        let doc = parse(&text).unwrap();
        assert_eq!(doc.functors["F"].map.len(), 3);
        assert_eq!(doc.nats["t"].to.to_string(), "id(TwoChain) . F");
        assert_eq!(doc.nats["t"].components.len(), 2);
    }

    #[test]
    fn forward_references_resolve() {
        let text = format!("functor F: TwoChain -> TwoChain contravariant {{ map a -> a; }}\n{TWO_CHAIN}");
        let doc = parse(&text).unwrap();
        assert_eq!(doc.functors["F"].variance, Variance::Contravariant);
    }

    #[test]
    fn functor_references_are_checked() {
        let d = first(&format!("{TWO_CHAIN}functor F: TwoChain -> Nope {{ }}"));
        assert_eq!((d.kind, d.span.line), (DiagnosticKind::UnknownName, 5));
        let d = first(&format!("{TWO_CHAIN}functor F: TwoChain -> TwoChain {{\n map q -> a; }}"));
        assert_eq!((d.kind, d.span.line), (DiagnosticKind::UnknownName, 6));
    }

    #[test]
    fn chains_must_compose() {
        let text = format!(
            "{TWO_CHAIN}objless One {{ arrows: e; compose: e . e = e; }}\n\
             functor K: TwoChain -> One {{ map i0 -> e, i1 -> e, a -> e; }}\n\
             nat t: K => K . K {{ }}\n"
        );
        let d = first(&text);
        assert_eq!(d.kind, DiagnosticKind::TypeMismatch);
        assert_eq!(d.span.line, 7);
    }

    #[test]
    fn diagnostics_are_deterministic() {
        let text = "objless C {\n arrows: a;\n compose: a . b = c;\n}";
        let a = parse(text).unwrap_err();
        let b = parse(text).unwrap_err();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert!(a[0].span < a[1].span);
    }
}
