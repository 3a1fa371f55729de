use std::fmt::Write;
use std::path::Path;

use arrowcat::adjunction::{check_adjunction, is_admissible, AdjunctionCandidate, AdjunctionMode};
use arrowcat::bridge::{to_objectless, to_standard};
use arrowcat::catspec::{self, CatspecDocument, CategoryBody, FunctorExpr, LoadError, Loader};
use arrowcat::equivalence::{are_equivalent, brute_force_equivalence, is_skeletal, skeleton as build_skeleton, EquivalenceWitness};
use arrowcat::functor::validate_functor;
use arrowcat::gen::{self, FinitePoset, MonoidTable};
use arrowcat::iso::find_category_isomorphism;
use arrowcat::limits::{binary_product, equalizer, parallel, preserves_finite_limits, terminal_objects, LimitScope};
use arrowcat::nat::validate_nat;
use arrowcat::{KernelError, ObjlessCategory};
use clap::{Subcommand, ValueEnum};
use serde_json::json;

use crate::outcome::{Failure, Outcome};

fn read(path: &Path) -> Result<CatspecDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    catspec::parse(&text).map_err(|diags| {
        let lines: Vec<String> = diags.iter().map(|d| format!("{}:{d}", path.display())).collect();
        Failure {
            message: lines.join("\n"),
        }
    })
}

/// Categories and functors named on the command line must exist; invalid
/// categories are a failing verdict rather than a usage error.
enum Missing {
    Usage(Failure),
    Invalid(Outcome),
}

impl From<LoadError> for Missing {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Unknown { .. } => Missing::Usage(e.into()),
            LoadError::Kernel {
                source: KernelError::Capacity { .. },
                ..
            } => Missing::Usage(e.into()),
            LoadError::InvalidCategory { ref name, ref report } => {
                let text = format!("{e}\n");
                Missing::Invalid(
                    Outcome::new(false, text)
                        .field("category", name)
                        .field("violations", &report.violations),
                )
            }
            other => {
                let text = format!("{other}\n");
                Missing::Invalid(Outcome::new(false, text).field("error", other.to_string()))
            }
        }
    }
}

impl From<KernelError> for Missing {
    fn from(e: KernelError) -> Self {
        Missing::Usage(e.into())
    }
}

fn settle(r: Result<Outcome, Missing>) -> Result<Outcome, Failure> {
    match r {
        Ok(o) => Ok(o),
        Err(Missing::Usage(f)) => Err(f),
        Err(Missing::Invalid(o)) => Ok(o),
    }
}

fn objless_doc(cats: &[(&str, &ObjlessCategory)]) -> CatspecDocument {
    let mut doc = CatspecDocument::new();
    for (n, c) in cats {
        doc.add_objless(n, c);
    }
    doc
}

pub fn check(path: &Path) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    let loader = Loader::new(&doc);
    let mut text = String::new();
    let mut records = Vec::new();
    let mut holds = true;
    let mut note = |kind: &str, name: &str, ok: bool, detail: String, records: &mut Vec<_>| {
        holds &= ok;
        let _ = writeln!(text, "{kind} {name}: {}", if ok { "ok" } else { "INVALID" });
        if !ok {
            for line in detail.lines() {
                let _ = writeln!(text, "  {line}");
            }
        }
        records.push(json!({"kind": kind, "name": name, "ok": ok, "detail": detail}));
    };
    for (name, built) in loader.categories() {
        match built {
            Ok(_) => note("category", name, true, String::new(), &mut records),
            Err(e) => note("category", name, false, e.to_string(), &mut records),
        }
    }
    for name in doc.functors.keys() {
        match loader.functor(name) {
            Ok(f) => {
                let r = validate_functor(&f);
                note("functor", name, r.ok, r.to_string(), &mut records)
            }
            Err(e) => note("functor", name, false, e.to_string(), &mut records),
        }
    }
    for name in doc.nats.keys() {
        match loader.nat(name) {
            Ok(t) => {
                let r = validate_nat(&t);
                note("nat", name, r.ok, r.to_string(), &mut records)
            }
            Err(e) => note("nat", name, false, e.to_string(), &mut records),
        }
    }
    Ok(Outcome::new(holds, text).field("entities", records))
}

pub fn identities(path: &Path, cat: &str) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    settle((|| {
        let c = Loader::new(&doc).category(cat)?;
        let ids: Vec<&str> = c.identity_names().map(|n| n.as_str()).collect();
        let mut text = format!("identities: {}\n", ids.join(", "));
        let mut arrows = Vec::new();
        for a in c.arrows() {
            let (d, k) = (c.name(c.dom(a)), c.name(c.cod(a)));
            let _ = writeln!(text, "{}: {d} -> {k}", c.name(a));
            arrows.push(json!({"arrow": c.name(a), "dom": d, "cod": k}));
        }
        Ok(Outcome::new(true, text).field("identities", ids).field("arrows", arrows))
    })())
}

pub fn homs(path: &Path, cat: &str, pair: Option<(String, String)>) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    settle((|| {
        let c = Loader::new(&doc).category(cat)?;
        let pairs: Vec<(String, String)> = match pair {
            Some(p) => vec![p],
            None => {
                let ids: Vec<String> = c.identity_names().map(|n| n.to_string()).collect();
                ids.iter()
                    .flat_map(|x| ids.iter().map(move |y| (x.clone(), y.clone())))
                    .collect()
            }
        };
        let mut text = String::new();
        let mut out = Vec::new();
        let single = pairs.len() == 1;
        for (x, y) in pairs {
            let h: Vec<&str> = c.hom_class(&x, &y)?.into_iter().map(|n| n.as_str()).collect();
            if h.is_empty() && !single {
                continue;
            }
            let _ = writeln!(text, "hom({x}, {y}) = {{{}}}", h.join(", "));
            out.push(json!({"from": x, "to": y, "arrows": h}));
        }
        Ok(Outcome::new(true, text).field("homs", out))
    })())
}

fn skeleton_cmd(doc: &CatspecDocument, cat: &str, seed: u64) -> Result<Outcome, Missing> {
    let c = Loader::new(doc).category(cat)?;
    let s = build_skeleton(&c, seed);
    let skel_name = format!("{cat}Skeleton");
    let mut out = objless_doc(&[(cat, &c), (&skel_name, &s.skeleton)]);
    out.add_functor("inclusion", &skel_name, cat, &s.inclusion);
    out.add_functor("retraction", cat, &skel_name, &s.retraction);
    out.add_nat(
        "witness",
        FunctorExpr::identity(cat),
        FunctorExpr::named("inclusion").after(FunctorExpr::named("retraction")),
        &s.witness,
    );
    let text = catspec::serialize(&out);
    let reps: Vec<&str> = s.skeleton.identity_names().map(|n| n.as_str()).collect();
    Ok(Outcome::new(true, text.clone())
        .field("identities", s.skeleton.identities().len())
        .field("morphisms", s.skeleton.len())
        .field("representatives", reps)
        .field("input_skeletal", is_skeletal(&c))
        .field("catspec", text))
}

pub fn skeleton(path: &Path, cat: &str, seed: u64) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    settle(skeleton_cmd(&doc, cat, seed))
}

pub fn iso(path: &Path, left: &str, right: &str) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    settle((|| {
        let l = Loader::new(&doc);
        let (c, d) = (l.category(left)?, l.category(right)?);
        Ok(match find_category_isomorphism(&c, &d)? {
            Some(f) => {
                let mut out = objless_doc(&[(left, &c), (right, &d)]);
                out.add_functor("iso", left, right, &f);
                let text = catspec::serialize(&out);
                Outcome::new(true, format!("# {left} and {right} are isomorphic\n{text}")).field("catspec", text)
            }
            None => Outcome::new(false, format!("{left} and {right} are not isomorphic\n")),
        })
    })())
}

fn equivalence_doc(left: &str, right: &str, c: &ObjlessCategory, d: &ObjlessCategory, w: &EquivalenceWitness) -> String {
    let mut out = objless_doc(&[(left, c), (right, d)]);
    out.add_functor("forward", left, right, &w.forward);
    out.add_functor("backward", right, left, &w.backward);
    out.add_nat(
        "source_iso",
        FunctorExpr::identity(left),
        FunctorExpr::named("backward").after(FunctorExpr::named("forward")),
        &w.source_iso,
    );
    out.add_nat(
        "target_iso",
        FunctorExpr::identity(right),
        FunctorExpr::named("forward").after(FunctorExpr::named("backward")),
        &w.target_iso,
    );
    catspec::serialize(&out)
}

pub fn equiv(path: &Path, left: &str, right: &str, brute: bool) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    settle((|| {
        let l = Loader::new(&doc);
        let (c, d) = (l.category(left)?, l.category(right)?);
        let found = if brute {
            brute_force_equivalence(&c, &d)?
        } else {
            are_equivalent(&c, &d)?
        };
        Ok(match found {
            Some(w) => {
                let text = equivalence_doc(left, right, &c, &d, &w);
                Outcome::new(true, format!("# {left} and {right} are equivalent\n{text}")).field("catspec", text)
            }
            None => Outcome::new(false, format!("{left} and {right} are not equivalent\n")),
        })
    })())
}

pub fn functor_check(path: &Path, name: &str) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    settle((|| {
        let f = Loader::new(&doc).functor(name)?;
        let r = validate_functor(&f);
        Ok(Outcome::new(r.ok, format!("functor {name}: {r}\n")).field("violations", &r.violations))
    })())
}

pub fn nat_check(path: &Path, name: &str) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    settle((|| {
        let t = Loader::new(&doc).nat(name)?;
        let r = validate_nat(&t);
        let iso = r.ok && arrowcat::nat::is_natural_isomorphism(&t);
        let mut text = format!("nat {name}: {r}\n");
        if r.ok {
            let _ = writeln!(text, "natural isomorphism: {iso}");
        }
        Ok(Outcome::new(r.ok, text)
            .field("violations", &r.violations)
            .field("natural_isomorphism", iso))
    })())
}

fn candidate(doc: &CatspecDocument, names: [&String; 4], mode: AdjunctionMode) -> Result<AdjunctionCandidate, Missing> {
    let l = Loader::new(doc);
    Ok(AdjunctionCandidate {
        left: l.functor(names[0])?,
        right: l.functor(names[1])?,
        unit: l.nat(names[2])?,
        counit: l.nat(names[3])?,
        mode,
    })
}

pub fn adjoint_check(path: &Path, names: [&String; 4], mode: AdjunctionMode) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    settle((|| {
        let a = candidate(&doc, names, mode)?;
        let r = check_adjunction(&a).map_err(|e| Missing::Usage(e.into()))?;
        let mut text = format!(
            "{} -| {} ({}): {}\n",
            names[0],
            names[1],
            match mode {
                AdjunctionMode::Standard => "standard",
                AdjunctionMode::PaperLiteral => "paper-literal",
            },
            if r.ok { "adjunction" } else { "not an adjunction" }
        );
        for v in &r.violations {
            let _ = writeln!(text, "  {v}");
        }
        Ok(Outcome::new(r.ok, text).field("report", &r))
    })())
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeKind {
    Terminal,
    Products,
    Equalizers,
}

fn scope_of(kinds: &[ScopeKind]) -> LimitScope {
    LimitScope {
        terminal: kinds.contains(&ScopeKind::Terminal),
        products: kinds.contains(&ScopeKind::Products),
        equalizers: kinds.contains(&ScopeKind::Equalizers),
    }
}

pub fn limits(path: &Path, cat: Option<&str>, functor: Option<&str>, kinds: &[ScopeKind]) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    let scope = scope_of(kinds);
    settle((|| {
        let l = Loader::new(&doc);
        if let Some(name) = functor {
            let f = l.functor(name)?;
            let r = preserves_finite_limits(&f, scope).map_err(|e| Missing::Usage(e.into()))?;
            let mut text = format!(
                "functor {name}: {} ({} limits checked)\n",
                if r.ok() { "preserves the scoped limits" } else { "fails to preserve limits" },
                r.checked
            );
            for fl in &r.failures {
                let _ = writeln!(
                    text,
                    "  {} {} maps to {}, which is not one: {} ({})",
                    fl.kind, fl.source, fl.image, fl.counterexample.object, fl.counterexample.detail
                );
            }
            for a in &r.absent {
                let _ = writeln!(text, "  no {a} in the source");
            }
            return Ok(Outcome::new(r.ok(), text).field("report", &r));
        }
        let name = cat.expect("clap requires --cat or --functor");
        let c = l.category(name)?;
        let n = |a| c.name(a).to_string();
        let mut text = String::new();
        let terminals: Vec<String> = terminal_objects(&c).into_iter().map(n).collect();
        let mut products = Vec::new();
        let mut equalizers = Vec::new();
        if scope.terminal {
            let _ = writeln!(text, "terminal: {{{}}}", terminals.join(", "));
        }
        if scope.products {
            let ids = c.identities();
            for (k, &a) in ids.iter().enumerate() {
                for &b in &ids[k..] {
                    let apex = binary_product(&c, a, b).map(|p| n(p.apex));
                    let _ = writeln!(text, "{} x {} = {}", n(a), n(b), apex.as_deref().unwrap_or("none"));
                    products.push(json!({"left": n(a), "right": n(b), "apex": apex}));
                }
            }
        }
        if scope.equalizers {
            for f in c.arrows() {
                for g in c.arrows() {
                    if f < g && parallel(&c, f, g) {
                        let apex = equalizer(&c, f, g).map(|e| n(e.apex));
                        let _ = writeln!(text, "eq({}, {}) = {}", n(f), n(g), apex.as_deref().unwrap_or("none"));
                        equalizers.push(json!({"left": n(f), "right": n(g), "apex": apex}));
                    }
                }
            }
        }
        Ok(Outcome::new(true, text)
            .field("terminal", terminals)
            .field("products", products)
            .field("equalizers", equalizers))
    })())
}

pub fn admissible(path: &Path, names: [&String; 4]) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    settle((|| {
        let a = candidate(&doc, names, AdjunctionMode::Standard)?;
        let r = is_admissible(&a.left, &a.right, &a.unit, &a.counit).map_err(|e| Missing::Usage(e.into()))?;
        let mut text = format!(
            "{} -| {}: {}\n",
            names[0],
            names[1],
            if r.admissible { "admissible" } else { "not admissible" }
        );
        for v in &r.adjunction.violations {
            let _ = writeln!(text, "  adjunction: {v}");
        }
        if let Some(e) = &r.limit_error {
            let _ = writeln!(text, "  limits: {e}");
        }
        for fl in r.limits.iter().flat_map(|l| &l.failures) {
            let _ = writeln!(
                text,
                "  limits: {} {} maps to {}, counterexample {} ({})",
                fl.kind, fl.source, fl.image, fl.counterexample.object, fl.counterexample.detail
            );
        }
        Ok(Outcome::new(r.admissible, text).field("report", &r))
    })())
}

pub fn convert(path: &Path, to_std: bool) -> Result<Outcome, Failure> {
    let doc = read(path)?;
    let mut out = doc.clone();
    let mut failed = Vec::new();
    for (name, body) in &doc.categories {
        let converted = match (body, to_std) {
            (CategoryBody::Objless { .. }, true) => match Loader::new(&doc).category(name) {
                Ok(c) => CategoryBody::Standard(to_standard(&c)),
                Err(e) => {
                    failed.push(e.to_string());
                    continue;
                }
            },
            (CategoryBody::Standard(s), false) => match to_objectless(s) {
                Ok(c) => {
                    // components keyed by objects move to the identities
                    for nat in out.nats.values_mut() {
                        let src = match nat.from.0.last() {
                            Some(catspec::FunctorAtom::Identity(c)) => c.clone(),
                            Some(catspec::FunctorAtom::Named(f)) => doc.functors[f].source.clone(),
                            None => continue,
                        };
                        if &src == name {
                            nat.components = std::mem::take(&mut nat.components)
                                .into_iter()
                                .map(|(k, v)| (s.id_of.get(k.as_str()).map_or(k, |i| i.to_string()), v))
                                .collect();
                        }
                    }
                    CategoryBody::from_objless(&c)
                }
                Err(e) => {
                    failed.push(format!("category `{name}`: {e}"));
                    continue;
                }
            },
            _ => continue,
        };
        out.categories.insert(name.clone(), converted);
    }
    if !failed.is_empty() {
        return Ok(Outcome::new(false, failed.join("\n") + "\n").field("errors", failed));
    }
    let text = catspec::serialize(&out);
    Ok(Outcome::new(true, text.clone()).field("catspec", text))
}

#[derive(Subcommand)]
pub enum Generator {
    /// Finite sets of sizes 0..=max-size with all functions
    Finset {
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        /// Add one more set of this size (repeatable)
        #[arg(long)]
        dup: Vec<usize>,
        #[arg(long, default_value = "FinSet")]
        name: String,
    },
    /// Only identities
    Discrete {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Discrete")]
        name: String,
    },
    /// Two objects joined by inverse arrows
    WalkingIso {
        #[arg(long, default_value = "WalkingIso")]
        name: String,
    },
    /// The chain 0 < 1 < ... < n-1
    Chain {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "p")]
        prefix: String,
        #[arg(long, default_value = "Chain")]
        name: String,
    },
    /// The cyclic group of order n as a one-object category
    Cyclic {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "Cyclic")]
        name: String,
    },
    /// A seeded random category
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        max: usize,
        #[arg(long, default_value = "Random")]
        name: String,
    },
}

pub fn generate(what: Generator) -> Result<Outcome, Failure> {
    let mut doc = CatspecDocument::new();
    match what {
        Generator::Finset { max_size, dup, name } => doc.add_standard(&name, gen::gen_finset(max_size, &dup)?),
        Generator::Discrete { n, name } => doc.add_standard(&name, gen::gen_discrete(n)),
        Generator::WalkingIso { name } => doc.add_standard(&name, gen::gen_walking_iso()),
        Generator::Chain { n, prefix, name } => {
            let p = FinitePoset::chain(n).with_prefix(&prefix);
            doc.add_objless(&name, &gen::gen_poset(&p)?)
        }
        Generator::Cyclic { n, name } => {
            if n == 0 {
                return Err("the cyclic group needs n >= 1".into());
            }
            doc.add_objless(&name, &gen::gen_monoid(&MonoidTable::cyclic(n))?)
        }
        Generator::Random { seed, max, name } => {
            if max == 0 {
                return Err("--max must be at least 1".into());
            }
            doc.add_objless(&name, &gen::gen_random(seed, max))
        }
    }
    let text = catspec::serialize(&doc);
    Ok(Outcome::new(true, text.clone()).field("catspec", text))
}
