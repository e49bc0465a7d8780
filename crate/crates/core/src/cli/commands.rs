use std::sync::Arc;

use crate::fincat::{validate_category, FinCat, Functor, Variance};
use crate::induce::{
    frobenius_dims, induce, induced_character_oracle, restrict, FiniteGroup, GroupRep, SubgroupInclusion,
};
use crate::kan::{
    coend_vect, end_set, end_vect, fubini_check, function_bifunctor, hom_bifunctor, kan_adjunction_bifunctor,
    left_kan, right_kan, twisted, weighted_colimit_orthogonal, weighted_colimit_quotient, weighted_limit,
};
use crate::qlin::{ContractionCertificate, Rational};
use crate::setfun::{enumerate_nat_transformations, validate_set_functor, SetFunctor};
use crate::vectfun::{self, hom_space, validate_vect_functor, VectFunctor};

use super::format::{GroupSection, Item, Workspace};
use super::report::Report;
use super::{suite, CliError, Command, Inputs, Method, Options, SideArg};

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub(super) fn dispatch(command: &Command, opts: &Options) -> Result<Report, CliError> {
    let mut report = Report::new(command.name());
    match command {
        Command::Validate { inputs } => validate(&load(inputs, &mut report)?, &mut report),
        Command::Limit { inputs, diagram } => {
            let ws = load(inputs, &mut report)?;
            limit(&ws, diagram.as_deref(), opts, &mut report)
        }
        Command::Colimit { inputs, diagram } => {
            let ws = load(inputs, &mut report)?;
            colimit(&ws, diagram.as_deref(), opts, &mut report)
        }
        Command::WeightedLimit { inputs, weight, diagram } => {
            let ws = load(inputs, &mut report)?;
            weighted_lim(&ws, weight.as_deref(), diagram.as_deref(), opts, &mut report)
        }
        Command::WeightedColimit {
            inputs,
            weight,
            diagram,
            method,
            contraction,
        } => {
            let ws = load(inputs, &mut report)?;
            weighted_colim(&ws, weight.as_deref(), diagram.as_deref(), *method, *contraction, opts, &mut report)
        }
        Command::Kan {
            inputs,
            along,
            functor,
            side,
        } => {
            let ws = load(inputs, &mut report)?;
            kan(&ws, along.as_deref(), functor.as_deref(), *side, opts, &mut report)
        }
        Command::End {
            inputs,
            bifunctor,
            over,
            hom,
        } => {
            let mut ws = load(inputs, &mut report)?;
            end(&mut ws, bifunctor.as_deref(), over.as_deref(), hom.as_deref(), opts, &mut report)
        }
        Command::Coend {
            inputs,
            bifunctor,
            over,
        } => {
            let mut ws = load(inputs, &mut report)?;
            coend(&mut ws, bifunctor.as_deref(), over.as_deref(), opts, &mut report)
        }
        Command::FubiniCheck {
            inputs,
            bifunctor,
            over,
            kan,
        } => {
            let mut ws = load(inputs, &mut report)?;
            fubini(&mut ws, bifunctor.as_deref(), over.as_deref(), kan.as_deref(), opts, &mut report)
        }
        Command::Induce { inputs, along, rep } => {
            let ws = load(inputs, &mut report)?;
            induce_cmd(&ws, along.as_deref(), rep.as_deref(), opts, &mut report)
        }
        Command::Restrict { inputs, along, rep } => {
            let ws = load(inputs, &mut report)?;
            restrict_cmd(&ws, along.as_deref(), rep.as_deref(), opts, &mut report)
        }
        Command::Frobenius {
            inputs,
            along,
            sub_rep,
            rep,
        } => {
            let ws = load(inputs, &mut report)?;
            frobenius(&ws, along.as_deref(), sub_rep.as_deref(), rep.as_deref(), opts, &mut report)
        }
        Command::NatCount { inputs, from, to } => {
            let ws = load(inputs, &mut report)?;
            nat_count(&ws, from.as_deref(), to.as_deref(), opts, &mut report)
        }
        Command::Suite { seed, cases } => suite::run(*seed, *cases, opts, &mut report),
    }?;
    Ok(report)
}

fn load(inputs: &Inputs, report: &mut Report) -> Result<Workspace, CliError> {
    let mut ws = Workspace::new();
    for path in &inputs.files {
        ws.parse_file(path)?;
    }
    let names: Vec<String> = inputs.files.iter().map(|p| p.display().to_string()).collect();
    report.field("inputs", names.join(" "));
    Ok(ws)
}

/// The named item of `kind`, or the only one satisfying `accept` when no
/// name is given.
fn pick<'a>(
    ws: &'a Workspace,
    kind: &str,
    name: Option<&str>,
    flag: &str,
    accept: impl Fn(&Item) -> bool,
) -> Result<(&'a str, &'a Item), CliError> {
    if let Some(name) = name {
        return match ws.items().iter().find(|(n, _)| n == name) {
            Some((n, item)) if item.kind() == kind => Ok((n.as_str(), item)),
            Some((_, item)) => Err(input(format!("`{name}` is a {}, expected a {kind}", item.kind()))),
            None => Err(input(format!("no item named `{name}`"))),
        };
    }
    let candidates: Vec<_> = ws
        .items()
        .iter()
        .filter(|(_, item)| item.kind() == kind && accept(item))
        .collect();
    match candidates.as_slice() {
        [(n, item)] => Ok((n.as_str(), item)),
        [] => Err(input(format!("no suitable {kind} in the inputs"))),
        _ => Err(input(format!("several candidate {kind}s; choose one with --{flag}"))),
    }
}

fn check_category(name: &str, c: &FinCat) -> Result<(), CliError> {
    match validate_category(c).first() {
        Some(v) => Err(input(format!("the category of `{name}` is not a category: {v}"))),
        None => Ok(()),
    }
}

fn vect<'a>(
    ws: &'a Workspace,
    name: Option<&str>,
    flag: &str,
    on: Option<&FinCat>,
) -> Result<(&'a str, &'a VectFunctor), CliError> {
    let (n, item) = pick(ws, "vectfunctor", name, flag, |item| match (item, on) {
        (Item::VectFunctor(f), Some(c)) => f.source().as_ref() == c,
        _ => true,
    })?;
    let Item::VectFunctor(f) = item else { unreachable!() };
    check_category(n, f.source())?;
    if let Some(v) = validate_vect_functor(f).first() {
        return Err(input(format!("`{n}` is not a functor: {v}")));
    }
    Ok((n, f))
}

fn setf<'a>(
    ws: &'a Workspace,
    name: Option<&str>,
    flag: &str,
    variance: Option<Variance>,
) -> Result<(&'a str, &'a SetFunctor), CliError> {
    let (n, item) = pick(ws, "setfunctor", name, flag, |item| match (item, variance) {
        (Item::SetFunctor(f), Some(v)) => f.variance() == v,
        _ => true,
    })?;
    let Item::SetFunctor(f) = item else { unreachable!() };
    check_category(n, f.source())?;
    if let Some(v) = validate_set_functor(f).first() {
        return Err(input(format!("`{n}` is not a functor: {v}")));
    }
    Ok((n, f))
}

fn functor<'a>(ws: &'a Workspace, name: Option<&str>, flag: &str) -> Result<(&'a str, &'a Functor), CliError> {
    let (n, item) = pick(ws, "functor", name, flag, |_| true)?;
    let Item::Functor(k) = item else { unreachable!() };
    check_category(n, k.source())?;
    check_category(n, k.target())?;
    if let Some(v) = k.validate().first() {
        return Err(input(format!("`{n}` is not a functor: {v}")));
    }
    Ok((n, k))
}

fn group_of(ws: &Workspace, c: &FinCat) -> Option<(String, Arc<FiniteGroup>)> {
    ws.items().iter().find_map(|(n, item)| match item {
        Item::Group(GroupSection { group: Ok(g), .. }) if g.category().as_ref() == c => Some((n.clone(), g.clone())),
        _ => None,
    })
}

fn inclusion(ws: &Workspace, along: Option<&str>, report: &mut Report) -> Result<SubgroupInclusion, CliError> {
    let (kn, k) = functor(ws, along, "along")?;
    let (sub_name, sub) = group_of(ws, k.source()).ok_or_else(|| input(format!("source of `{kn}` is not a group")))?;
    let (sup_name, sup) = group_of(ws, k.target()).ok_or_else(|| input(format!("target of `{kn}` is not a group")))?;
    let inc = SubgroupInclusion::new(sub, sup, k.morphism_map().to_vec())?;
    report.field("along", kn);
    report.field("subgroup", format!("{sub_name} order {}", inc.sub().order()));
    report.field("group", format!("{sup_name} order {}", inc.sup().order()));
    report.field("index", inc.index());
    Ok(inc)
}

fn character_field(report: &mut Report, key: &str, rep: &GroupRep) {
    report.vector(key, rep.character());
}

fn elements_field(report: &mut Report, key: &str, g: &FiniteGroup) {
    let labels: Vec<&str> = (0..g.order()).map(|e| g.label(e)).collect();
    report.field(key, labels.join(" "));
}

fn certificate_text(cert: &ContractionCertificate) -> String {
    let list = |v: &[Rational]| v.iter().map(crate::qlin::format_rational).collect::<Vec<_>>().join(" ");
    match cert {
        ContractionCertificate::Contraction { diagonal, .. } => format!("contraction diagonal [{}]", list(diagonal)),
        ContractionCertificate::Expanding { witness } => format!("expanding witness [{}]", list(witness)),
    }
}

fn validate(ws: &Workspace, report: &mut Report) -> Result<(), CliError> {
    for (name, item) in ws.items() {
        let violations: Vec<String> = match item {
            Item::Category(c) => validate_category(c).iter().map(ToString::to_string).collect(),
            Item::Group(GroupSection { group: Ok(g), .. }) => {
                validate_category(g.category()).iter().map(ToString::to_string).collect()
            }
            Item::Group(GroupSection { group: Err(e), .. }) => vec![e.clone()],
            Item::Functor(k) => k.validate().iter().map(ToString::to_string).collect(),
            Item::SetFunctor(f) => validate_set_functor(f).iter().map(ToString::to_string).collect(),
            Item::VectFunctor(f) => validate_vect_functor(f).iter().map(ToString::to_string).collect(),
        };
        report.field(format!("item.{name}.kind"), item.kind());
        report.field(format!("item.{name}.violations"), violations.len());
        for (k, v) in violations.iter().enumerate() {
            report.field(format!("item.{name}.violation.{k}"), v);
        }
        report.verdict(format!("{name}.valid"), violations.is_empty());
    }
    Ok(())
}

fn limit(ws: &Workspace, diagram: Option<&str>, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    let (gn, g) = vect(ws, diagram, "diagram", None)?;
    if g.variance() != Variance::Covariant {
        return Err(input("limits of covariant diagrams only"));
    }
    let lim = vectfun::limit(g)?;
    report.field("diagram", gn);
    report.field("ambient", lim.ambient_dim());
    report.field("apex.dim", lim.apex_dim());
    if opts.bases {
        report.matrix("apex.basis", lim.apex.basis());
        for (o, leg) in lim.legs.iter().enumerate() {
            report.matrix(format!("leg.{}", g.source().object_label(o)), leg);
        }
    }
    report.verdict("cone", lim.cone().validate_cone(g).is_ok());
    report.verdict("universal", lim.factor(g, &lim.cone())?.is_identity());
    Ok(())
}

fn colimit(ws: &Workspace, diagram: Option<&str>, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    let (gn, g) = vect(ws, diagram, "diagram", None)?;
    if g.variance() != Variance::Covariant {
        return Err(input("colimits of covariant diagrams only"));
    }
    let col = vectfun::colimit(g)?;
    report.field("diagram", gn);
    report.field("ambient", col.ambient_dim());
    report.field("relations.dim", col.relations.dim());
    report.field("apex.dim", col.apex_dim());
    if opts.bases {
        report.matrix("relations.basis", col.relations.basis());
        report.matrix("apex.basis", col.apex.basis());
        for (o, inj) in col.injections.iter().enumerate() {
            report.matrix(format!("injection.{}", g.source().object_label(o)), inj);
        }
    }
    report.verdict("cocone", col.cocone().validate_cocone(g).is_ok());
    report.verdict("universal", col.factor(g, &col.cocone())?.is_identity());
    Ok(())
}

fn weight_keys(f: &SetFunctor) -> Vec<Vec<String>> {
    let c = f.source();
    (0..c.num_objects())
        .map(|i| f.set(i).iter().map(|x| format!("{}.{x}", c.object_label(i))).collect())
        .collect()
}

fn weighted_lim(
    ws: &Workspace,
    weight: Option<&str>,
    diagram: Option<&str>,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let (fname, f) = setf(ws, weight, "weight", Some(Variance::Covariant))?;
    let (gname, g) = vect(ws, diagram, "diagram", Some(f.source()))?;
    let wl = weighted_limit(f, g, &opts.limits())?;
    report.field("weight", fname);
    report.field("diagram", gname);
    report.field("elements.objects", wl.elements.labels.len());
    report.field("elements.morphisms", wl.elements.cat.num_morphisms());
    report.field("ambient", wl.limit.ambient_dim());
    report.field("apex.dim", wl.apex_dim());
    if opts.bases {
        report.matrix("apex.basis", wl.apex().basis());
        for (i, keys) in weight_keys(f).iter().enumerate() {
            for (x, key) in keys.iter().enumerate() {
                report.matrix(format!("leg.{key}"), &wl.universal.components[i][x]);
            }
        }
    }
    report.verdict("cylinder", wl.universal.validate_over(f, g).is_ok());
    report.verdict("universal", wl.factor(f, g, &wl.universal)?.is_identity());
    Ok(())
}

fn weighted_colim(
    ws: &Workspace,
    weight: Option<&str>,
    diagram: Option<&str>,
    method: Method,
    contraction: bool,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let (fname, f) = setf(ws, weight, "weight", Some(Variance::Contravariant))?;
    let (gname, g) = vect(ws, diagram, "diagram", Some(f.source()))?;
    report.field("weight", fname);
    report.field("diagram", gname);
    let limits = opts.limits();
    match method {
        Method::Orthogonal => {
            let o = weighted_colimit_orthogonal(f, g, &limits)?;
            report.field("method", "orthogonal");
            report.field("ambient", o.ambient);
            report.field("relations.dim", o.relations.dim());
            report.field("apex.dim", o.apex_dim());
            if opts.bases {
                report.matrix("relations.basis", o.relations.basis());
                report.matrix("apex.basis", o.apex.basis());
                for (i, keys) in weight_keys(f).iter().enumerate() {
                    for (x, key) in keys.iter().enumerate() {
                        report.matrix(format!("lambda.{key}"), &o.universal.components[i][x]);
                    }
                }
            }
            report.verdict("cylinder", o.universal.validate_under(f, g).is_ok());
            report.verdict("universal", o.factor(f, g, &o.universal)?.map.is_identity());
            if contraction {
                let keys: Vec<String> = weight_keys(f).into_iter().flatten().collect();
                let certs = o.lambda_certificates();
                let mut held = 0;
                let mut k = 0;
                for (i, comps) in o.universal.components.iter().enumerate() {
                    for x in 0..comps.len() {
                        let cert = &certs[k];
                        let ok = cert.holds() && cert.verify(&o.lambda_ambient(i, x));
                        held += usize::from(ok);
                        if opts.bases {
                            report.field(format!("lambda.{}.certificate", keys[k]), certificate_text(cert));
                        }
                        k += 1;
                    }
                }
                report.field("lambda.contractions", format!("{held}/{}", certs.len()));
                report.verdict("lambda.contraction", held == certs.len());
            }
        }
        Method::Quotient => {
            if contraction {
                return Err(input("contraction certificates need --method orthogonal"));
            }
            let q = weighted_colimit_quotient(f, g, &limits)?;
            report.field("method", "quotient");
            report.field("elements.objects", q.elements.labels.len());
            report.field("elements.morphisms", q.elements.cat.num_morphisms());
            report.field("ambient", q.colimit.ambient_dim());
            report.field("relations.dim", q.colimit.relations.dim());
            report.field("apex.dim", q.apex_dim());
            if opts.bases {
                report.matrix("relations.basis", q.colimit.relations.basis());
                report.matrix("apex.basis", q.colimit.apex.basis());
                for (i, keys) in weight_keys(f).iter().enumerate() {
                    for (x, key) in keys.iter().enumerate() {
                        report.matrix(format!("lambda.{key}"), &q.universal.components[i][x]);
                    }
                }
            }
            report.verdict("cylinder", q.universal.validate_under(f, g).is_ok());
            report.verdict("universal", q.factor(f, g, &q.universal)?.is_identity());
        }
    }
    Ok(())
}

fn kan(
    ws: &Workspace,
    along: Option<&str>,
    functor_name: Option<&str>,
    side: SideArg,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let (kn, k) = functor(ws, along, "along")?;
    let (tn, t) = vect(ws, functor_name, "functor", Some(k.source()))?;
    let limits = opts.limits();
    let result = match side {
        SideArg::Left => left_kan(k, t, &limits)?,
        SideArg::Right => right_kan(k, t, &limits)?,
    };
    report.field("along", kn);
    report.field("functor", tn);
    report.field("side", result.side.as_str());
    let c = k.target();
    for o in 0..c.num_objects() {
        report.field(format!("extension.dim.{}", c.object_label(o)), result.extension.dim(o));
    }
    for p in &result.provenance {
        report.field(format!("provenance.{}", c.object_label(p.object)), p);
    }
    if opts.bases {
        for m in 0..c.num_morphisms() {
            report.matrix(format!("extension.map.{}", c.morphism(m).label), result.extension.map(m));
        }
        for (o, comp) in result.mediating.components.iter().enumerate() {
            report.matrix(format!("mediating.{}", k.source().object_label(o)), comp);
        }
    }
    let lk = result.extension.reindex(k)?;
    let natural = match side {
        SideArg::Left => result.mediating.is_natural(t, &lk),
        SideArg::Right => result.mediating.is_natural(&lk, t),
    };
    report.verdict("functor", validate_vect_functor(&result.extension).is_empty());
    report.verdict("mediating.natural", natural);
    Ok(())
}

/// A category `C` from the inputs with `op(C)*C` equal to `source`.
fn base_category(ws: &mut Workspace, over: Option<&str>, source: &FinCat) -> Result<Arc<FinCat>, CliError> {
    if let Some(expr) = over {
        return ws.category(expr).ok_or_else(|| input(format!("no category `{expr}`")));
    }
    let names: Vec<String> = ws
        .items()
        .iter()
        .filter(|(_, item)| matches!(item, Item::Category(_) | Item::Group(_)))
        .map(|(n, _)| n.clone())
        .collect();
    for n in names {
        if let Some(c) = ws.category(&n) {
            if twisted(&c).as_ref() == source {
                return Ok(c);
            }
        }
    }
    Err(input("cannot tell which category the bifunctor lives over; pass --over"))
}

fn wedge_ids(c: &FinCat, tau: usize) -> (usize, usize) {
    let m = c.num_morphisms();
    (c.identity(c.dom(tau)) * m + tau, tau * m + c.identity(c.cod(tau)))
}

fn split_names(list: &str, n: usize, flag: &str) -> Result<Vec<String>, CliError> {
    let parts: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
    if parts.len() != n || parts.iter().any(String::is_empty) {
        return Err(input(format!("--{flag} expects {n} comma-separated names")));
    }
    Ok(parts)
}

fn end(
    ws: &mut Workspace,
    bifunctor: Option<&str>,
    over: Option<&str>,
    hom: Option<&str>,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let (c, h, expected) = if let Some(list) = hom {
        let names = split_names(list, 2, "hom")?;
        let (_, f) = vect(ws, Some(&names[0]), "hom", None)?;
        let (_, g) = vect(ws, Some(&names[1]), "hom", None)?;
        let h = hom_bifunctor(f, g)?;
        report.field("hom", format!("{},{}", names[0], names[1]));
        (f.source().clone(), h, Some(hom_space(f, g)?.dim))
    } else {
        let (hn, h) = vect(ws, bifunctor, "bifunctor", None)?;
        let h = h.clone();
        report.field("bifunctor", hn);
        (base_category(ws, over, h.source())?, h, None)
    };
    let e = end_vect(&c, &h)?;
    report.field("ambient", e.apex.ambient_dim());
    report.field("end.dim", e.dim());
    if let Some(d) = expected {
        report.field("hom_space.dim", d);
        report.verdict("hom_space", d == e.dim());
    }
    if opts.bases {
        report.matrix("end.basis", e.apex.basis());
    }
    let wedge = (0..c.num_morphisms()).all(|tau| {
        let (left, right) = wedge_ids(&c, tau);
        (h.map(left) * &e.projections[c.dom(tau)]) == (h.map(right) * &e.projections[c.cod(tau)])
    });
    report.verdict("wedge", wedge);
    Ok(())
}

fn coend(
    ws: &mut Workspace,
    bifunctor: Option<&str>,
    over: Option<&str>,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let (hn, h) = vect(ws, bifunctor, "bifunctor", None)?;
    let h = h.clone();
    report.field("bifunctor", hn);
    let c = base_category(ws, over, h.source())?;
    let e = coend_vect(&c, &h)?;
    report.field("ambient", e.apex.ambient_dim());
    report.field("relations.dim", e.relations.dim());
    report.field("coend.dim", e.dim());
    if opts.bases {
        report.matrix("coend.basis", e.apex.basis());
    }
    let m = c.num_morphisms();
    let cowedge = (0..m).all(|tau| {
        let (a, b) = (c.dom(tau), c.cod(tau));
        // both legs start at H(b, a)
        let to_aa = tau * m + c.identity(a);
        let to_bb = c.identity(b) * m + tau;
        (&e.injections[a] * h.map(to_aa)) == (&e.injections[b] * h.map(to_bb))
    });
    report.verdict("cowedge", cowedge);
    Ok(())
}

fn fubini(
    ws: &mut Workspace,
    bifunctor: Option<&str>,
    over: Option<&str>,
    kan: Option<&str>,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let (c, m, h, expected) = if let Some(list) = kan {
        let names = split_names(list, 3, "kan")?;
        let (_, k) = functor(ws, Some(&names[0]), "kan")?;
        let (_, t) = vect(ws, Some(&names[1]), "kan", None)?;
        let (_, s) = vect(ws, Some(&names[2]), "kan", None)?;
        let h = kan_adjunction_bifunctor(k, t, s)?;
        let nat = hom_space(t, &s.reindex(k)?)?.dim;
        report.field("kan", list);
        (k.target().clone(), k.source().clone(), h, Some(nat))
    } else {
        let names = split_names(over.unwrap_or_default(), 2, "over")?;
        let (hn, h) = vect(ws, bifunctor, "bifunctor", None)?;
        let h = h.clone();
        report.field("bifunctor", hn);
        let c = ws.category(&names[0]).ok_or_else(|| input(format!("no category `{}`", names[0])))?;
        let m = ws.category(&names[1]).ok_or_else(|| input(format!("no category `{}`", names[1])))?;
        (c, m, h, None)
    };
    let r = fubini_check(&c, &m, &h)?;
    report.field("end.cm.dim", r.dim_cm);
    report.field("end.mc.dim", r.dim_mc);
    report.field("same_image", r.same_image);
    report.field("comparison", if r.comparison.is_some() { "found" } else { "none" });
    if let Some(d) = expected {
        report.field("nat.dim", d);
        report.verdict("adjunction", d == r.dim_cm);
    }
    if opts.bases {
        if let Some(phi) = &r.comparison {
            report.matrix("comparison.matrix", phi);
        }
    }
    report.verdict("fubini", r.holds());
    Ok(())
}

fn rep_on<'a>(
    ws: &'a Workspace,
    name: Option<&str>,
    flag: &str,
    group: &Arc<FiniteGroup>,
) -> Result<(&'a str, GroupRep), CliError> {
    let (n, v) = vect(ws, name, flag, Some(group.category()))?;
    Ok((n, GroupRep::from_functor(group, v.clone())?))
}

fn matrices(report: &mut Report, prefix: &str, rep: &GroupRep) {
    let g = rep.group();
    for e in 0..g.order() {
        report.matrix(format!("{prefix}.{}", g.label(e)), rep.matrix(e));
    }
}

fn induce_cmd(
    ws: &Workspace,
    along: Option<&str>,
    rep: Option<&str>,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let inc = inclusion(ws, along, report)?;
    let (vn, v) = rep_on(ws, rep, "rep", inc.sub())?;
    let ind = induce(&v, &inc, &opts.limits())?;
    let oracle = induced_character_oracle(&v, &inc);
    report.field("rep", vn);
    report.field("rep.dim", v.dim());
    report.field("induced.dim", ind.dim());
    elements_field(report, "group.elements", inc.sup());
    character_field(report, "induced.character", &ind);
    report.vector("oracle.character", &oracle);
    if opts.bases {
        matrices(report, "induced.matrix", &ind);
    }
    report.verdict("dimension", ind.dim() == inc.index() * v.dim());
    report.verdict("character", ind.character() == &oracle[..]);
    Ok(())
}

fn restrict_cmd(
    ws: &Workspace,
    along: Option<&str>,
    rep: Option<&str>,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let inc = inclusion(ws, along, report)?;
    let (wn, w) = rep_on(ws, rep, "rep", inc.sup())?;
    let res = restrict(&w, &inc)?;
    report.field("rep", wn);
    report.field("restricted.dim", res.dim());
    elements_field(report, "subgroup.elements", inc.sub());
    character_field(report, "restricted.character", &res);
    if opts.bases {
        matrices(report, "restricted.matrix", &res);
    }
    let agrees = (0..inc.sub().order()).all(|h| res.character()[h] == w.character()[inc.image(h)]);
    report.verdict("character", agrees);
    Ok(())
}

fn frobenius(
    ws: &Workspace,
    along: Option<&str>,
    sub_rep: Option<&str>,
    rep: Option<&str>,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let inc = inclusion(ws, along, report)?;
    let (vn, v) = rep_on(ws, sub_rep, "sub-rep", inc.sub())?;
    let (wn, w) = rep_on(ws, rep, "rep", inc.sup())?;
    let d = frobenius_dims(&v, &w, &inc, &opts.limits())?;
    let ind = induce(&v, &inc, &opts.limits())?;
    let res = restrict(&w, &inc)?;
    report.field("sub-rep", vn);
    report.field("rep", wn);
    report.field("frobenius.dims", format!("({}, {})", d.induced, d.restricted));
    report.field("hom.induced", d.induced);
    report.field("hom.restricted", d.restricted);
    elements_field(report, "subgroup.elements", inc.sub());
    elements_field(report, "group.elements", inc.sup());
    character_field(report, "sub-rep.character", &v);
    character_field(report, "rep.character", &w);
    character_field(report, "induced.character", &ind);
    character_field(report, "restricted.character", &res);
    if opts.bases {
        matrices(report, "induced.matrix", &ind);
    }
    report.verdict("reciprocity", d.agree());
    Ok(())
}

fn nat_count(
    ws: &Workspace,
    from: Option<&str>,
    to: Option<&str>,
    opts: &Options,
    report: &mut Report,
) -> Result<(), CliError> {
    let names = ws.names_of("setfunctor");
    let (from, to) = match (from, to, names.as_slice()) {
        (Some(a), Some(b), _) => (a, b),
        (None, None, [a]) => (*a, *a),
        (None, None, [a, b]) => (*a, *b),
        _ => return Err(input("pass --from and --to")),
    };
    let (fname, f) = setf(ws, Some(from), "from", None)?;
    let (gname, g) = setf(ws, Some(to), "to", None)?;
    let limits = opts.limits();
    let nats = enumerate_nat_transformations(f, g, &limits)?;
    report.field("from", fname);
    report.field("to", gname);
    report.field("count", nats.len());
    if opts.bases {
        for (k, t) in nats.iter().enumerate() {
            let comps: Vec<String> = t
                .components
                .iter()
                .enumerate()
                .map(|(o, c)| {
                    let images: Vec<&str> = c.iter().map(|&y| g.set(o)[y].as_str()).collect();
                    format!("{}:[{}]", f.source().object_label(o), images.join(" "))
                })
                .collect();
            report.field(format!("transformation.{k}"), comps.join(" "));
        }
    }
    let all_natural = nats.iter().all(|t| t.is_natural(f, g));
    report.verdict("natural", all_natural);
    if f.variance() == Variance::Covariant && g.variance() == Variance::Covariant {
        let h = function_bifunctor(f, g, &limits)?;
        let end = end_set(f.source(), &h, &limits)?;
        report.field("end.count", end.len());
        report.verdict("end", end.len() == nats.len());
    }
    Ok(())
}
