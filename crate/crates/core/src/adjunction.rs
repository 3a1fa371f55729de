//! Adjunctions given by unit and counit, the Galois-connection oracle for
//! posets, and the admissibility check (adjoint pair with a left exact left
//! adjoint).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::functor::{functor_compose, functor_identity, FunctorMap, Variance};
use crate::gen::{FinitePoset, PosetError};
use crate::kernel::ObjlessCategory;
use crate::limits::{preserves_finite_limits, LimitReport, LimitScope};
use crate::name::MorphismName;
use crate::nat::{validate_nat, NatTransf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdjunctionMode {
    /// Unit and counit are natural transformations with the right ends.
    PaperLiteral,
    /// Additionally both triangle identities hold.
    #[default]
    Standard,
}

/// `left: D -> C`, `right: C -> D`, `unit: Id_D => right . left`,
/// `counit: left . right => Id_C`.
#[derive(Debug, Clone)]
pub struct AdjunctionCandidate {
    pub left: FunctorMap,
    pub right: FunctorMap,
    pub unit: NatTransf,
    pub counit: NatTransf,
    pub mode: AdjunctionMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjunctionError {
    #[error("wiring mismatch: {0}")]
    Wiring(String),
}

/// A pair `(x in D, y in C)` where `hom(F x, y)` and `hom(x, G y)` differ in size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomMismatch {
    pub x: MorphismName,
    pub y: MorphismName,
    /// `|hom_C(F x, y)|`
    pub left: usize,
    /// `|hom_D(x, G y)|`
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionReport {
    pub mode: AdjunctionMode,
    pub ok: bool,
    /// unit and counit are valid natural transformations
    pub literal_ok: bool,
    /// only computed in standard mode
    pub triangles_ok: Option<bool>,
    pub violations: Vec<String>,
    /// only computed in standard mode
    pub hom_mismatches: Vec<HomMismatch>,
}

fn wiring(a: &AdjunctionCandidate) -> Result<(), AdjunctionError> {
    let (f, g) = (&a.left, &a.right);
    let err = |m: String| Err(AdjunctionError::Wiring(m));
    if f.variance() != Variance::Covariant || g.variance() != Variance::Covariant {
        return err("adjoint functors must be covariant".into());
    }
    if **f.source() != **g.target() || **f.target() != **g.source() {
        return err(format!(
            "{} and {} do not run in opposite directions between the same categories",
            f.name, g.name
        ));
    }
    let gf = functor_compose(g, f).expect("checked above");
    let fg = functor_compose(f, g).expect("checked above");
    if *a.unit.from_functor() != functor_identity(f.source()) || *a.unit.to_functor() != gf {
        return err(format!(
            "unit {} must run from the identity of the source of {} to {} . {}",
            a.unit.name, f.name, g.name, f.name
        ));
    }
    if *a.counit.from_functor() != fg || *a.counit.to_functor() != functor_identity(f.target()) {
        return err(format!(
            "counit {} must run from {} . {} to the identity of the target of {}",
            a.counit.name, f.name, g.name, f.name
        ));
    }
    Ok(())
}

/// Checks an adjunction candidate in the requested mode.
pub fn check_adjunction(a: &AdjunctionCandidate) -> Result<AdjunctionReport, AdjunctionError> {
    wiring(a)?;
    let (f, g) = (&a.left, &a.right);
    let (d, c) = (f.source(), f.target());
    let mut violations = Vec::new();
    for t in [&a.unit, &a.counit] {
        let r = validate_nat(t);
        for v in &r.violations {
            violations.push(format!("{}: [{}] {}", t.name, v.kind, v.message));
        }
    }
    let literal_ok = violations.is_empty();
    let mut report = AdjunctionReport {
        mode: a.mode,
        ok: literal_ok,
        literal_ok,
        triangles_ok: None,
        violations,
        hom_mismatches: Vec::new(),
    };
    if a.mode == AdjunctionMode::PaperLiteral {
        return Ok(report);
    }

    let mut triangles_ok = true;
    // counit_{F x} . F(unit_x) = id_{F x}
    for &x in d.identities() {
        let fx = f.at(x);
        let lhs = a
            .unit
            .component(x)
            .zip(a.counit.component(fx))
            .and_then(|(ux, cfx)| c.compose(cfx, f.at(ux)));
        if lhs != Some(fx) {
            triangles_ok = false;
            report.violations.push(format!(
                "triangle at {}: counit at {} after the image of the unit is not the identity {}",
                d.name(x),
                c.name(fx),
                c.name(fx)
            ));
        }
    }
    // G(counit_y) . unit_{G y} = id_{G y}
    for &y in c.identities() {
        let gy = g.at(y);
        let lhs = a
            .counit
            .component(y)
            .zip(a.unit.component(gy))
            .and_then(|(cy, ugy)| d.compose(g.at(cy), ugy));
        if lhs != Some(gy) {
            triangles_ok = false;
            report.violations.push(format!(
                "triangle at {}: the image of the counit after the unit at {} is not the identity {}",
                c.name(y),
                d.name(gy),
                d.name(gy)
            ));
        }
    }
    for &x in d.identities() {
        for &y in c.identities() {
            let left = c.hom(f.at(x), y).len();
            let right = d.hom(x, g.at(y)).len();
            if left != right {
                report.hom_mismatches.push(HomMismatch {
                    x: d.name(x).clone(),
                    y: c.name(y).clone(),
                    left,
                    right,
                });
            }
        }
    }
    for m in &report.hom_mismatches {
        report.violations.push(format!(
            "hom-sets differ at (x={}, y={}): |hom(F x, y)| = {} but |hom(x, G y)| = {}",
            m.x, m.y, m.left, m.right
        ));
    }
    report.triangles_ok = Some(triangles_ok);
    report.ok = literal_ok && triangles_ok && report.hom_mismatches.is_empty();
    Ok(report)
}

/// Galois condition `f(x) <= y  <=>  x <= g(y)` for all `x in P`, `y in Q`.
pub fn galois_oracle(
    p: &FinitePoset,
    q: &FinitePoset,
    f: &[usize],
    g: &[usize],
) -> Result<bool, PosetError> {
    Ok(galois_failures(p, q, f, g)?.is_empty())
}

/// The pairs `(x, y)` at which the Galois condition fails.
pub fn galois_failures(
    p: &FinitePoset,
    q: &FinitePoset,
    f: &[usize],
    g: &[usize],
) -> Result<Vec<(usize, usize)>, PosetError> {
    p.check_monotone(q, f)?;
    q.check_monotone(p, g)?;
    let mut out = Vec::new();
    for x in 0..p.len() {
        for y in 0..q.len() {
            if q.leq(f[x], y) != p.leq(x, g[y]) {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// The functor between poset categories induced by a monotone map.
pub fn monotone_functor(
    name: &str,
    pc: &Arc<ObjlessCategory>,
    p: &FinitePoset,
    qc: &Arc<ObjlessCategory>,
    q: &FinitePoset,
    f: &[usize],
) -> Result<FunctorMap, PosetError> {
    p.check_monotone(q, f)?;
    let id_of = |cat: &ObjlessCategory, poset: &FinitePoset, k: usize| {
        cat.identity(poset.label(k)).map_err(|_| PosetError::NotPosetCategory)
    };
    let mut map = vec![None; pc.len()];
    for a in pc.arrows() {
        let x = p.index_of(pc.name(pc.dom(a)).as_str()).ok_or(PosetError::NotPosetCategory)?;
        let y = p.index_of(pc.name(pc.cod(a)).as_str()).ok_or(PosetError::NotPosetCategory)?;
        let (fx, fy) = (id_of(qc, q, f[x])?, id_of(qc, q, f[y])?);
        map[a.index()] = Some(*qc.hom(fx, fy).first().ok_or(PosetError::NotPosetCategory)?);
    }
    Ok(FunctorMap::from_arrows(
        name,
        pc.clone(),
        qc.clone(),
        map.into_iter().map(Option::unwrap).collect(),
        Variance::Covariant,
    ))
}

/// Transformation between functors into a thin category, using the unique
/// arrow at each identity when one exists and leaving the component out
/// otherwise.
pub fn thin_transformation(name: &str, from: FunctorMap, to: FunctorMap) -> NatTransf {
    let tgt = from.target().clone();
    let components: BTreeMap<_, _> = from
        .source()
        .identities()
        .iter()
        .filter_map(|&i| tgt.hom(from.at(i), to.at(i)).first().map(|&k| (i, k)))
        .collect();
    NatTransf::new(name, from, to, components).expect("functors out of one category into one category")
}

/// Adjunction candidate for monotone maps `f: P -> Q`, `g: Q -> P` with
/// unique-arrow unit and counit.
pub fn galois_candidate(
    p: &FinitePoset,
    q: &FinitePoset,
    f: &[usize],
    g: &[usize],
    mode: AdjunctionMode,
) -> Result<AdjunctionCandidate, PosetError> {
    let pc = Arc::new(crate::gen::gen_poset(p)?);
    let qc = Arc::new(crate::gen::gen_poset(q)?);
    let left = monotone_functor("f", &pc, p, &qc, q, f)?;
    let right = monotone_functor("g", &qc, q, &pc, p, g)?;
    let gf = functor_compose(&right, &left).expect("composable").renamed("g_after_f");
    let fg = functor_compose(&left, &right).expect("composable").renamed("f_after_g");
    let unit = thin_transformation("unit", functor_identity(&pc), gf);
    let counit = thin_transformation("counit", fg, functor_identity(&qc));
    Ok(AdjunctionCandidate {
        left,
        right,
        unit,
        counit,
        mode,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub adjunction: AdjunctionReport,
    pub limits: Option<LimitReport>,
    /// set when the left adjoint's source lacks a scoped limit kind
    pub limit_error: Option<String>,
}

/// Adjoint pair `fstar -| fsub` (standard mode) whose left member preserves
/// terminal objects, binary products and equalizers.
pub fn is_admissible(
    fstar: &FunctorMap,
    fsub: &FunctorMap,
    unit: &NatTransf,
    counit: &NatTransf,
) -> Result<AdmissibilityReport, AdjunctionError> {
    let adjunction = check_adjunction(&AdjunctionCandidate {
        left: fstar.clone(),
        right: fsub.clone(),
        unit: unit.clone(),
        counit: counit.clone(),
        mode: AdjunctionMode::Standard,
    })?;
    let (limits, limit_error) = match preserves_finite_limits(fstar, LimitScope::ALL) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let admissible = adjunction.ok && limits.as_ref().is_some_and(LimitReport::ok);
    Ok(AdmissibilityReport {
        admissible,
        adjunction,
        limits,
        limit_error,
    })
}
