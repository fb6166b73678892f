use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::ValueEnum;
use rpog_core::corpus::{census as run_census, CensusRow};
use rpog_core::gallery::{run_example, GalleryId, Report, ReportLine};
use rpog_core::internal::{
    full_verdict_sampled, is_effective, is_groupoid, is_groupoid_sampled, is_internal_category, is_internal_category_sampled,
    pxmod_to_graph, relation_graph, ReflexiveGraph,
};
use rpog_core::io::{load_object, Object};
use rpog_core::quasivariety::{check_axioms, to_model, AxiomReport};
use rpog_core::schreier::{check_action_rep, is_schreier, s_center, s_center_sampled, semidirect, SCenter, SymbolicSCenter};
use rpog_core::subobjects::{check_lattice_iso, check_modular, huq_commute, normal_lattice, normalization, smith_commute, EffEqRelation};
use rpog_core::symbolic::{build_example, sampled_validate, ExampleId, SampleConfig, SymbolicObject};
use rpog_core::{Error, FiniteRpoGroup, Result, Verdict};

pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub max_order: usize,
}

impl RunConfig {
    fn sampling(&self) -> SampleConfig {
        SampleConfig {
            seed: self.seed,
            samples: self.samples,
            ..SampleConfig::default()
        }
    }

    fn guard(&self, what: &str, actual: usize) -> Result<()> {
        if actual > self.max_order {
            return Err(Error::Guard {
                what: what.to_string(),
                actual,
                limit: self.max_order,
            });
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Preordered,
    Schreier,
    Category,
    Groupoid,
    Lattice,
    Modular,
    ActionRep,
    SCenter,
    Smith,
    Huq,
    Axioms,
    Effective,
}

impl CheckKind {
    fn name(self) -> &'static str {
        match self {
            CheckKind::Preordered => "preordered",
            CheckKind::Schreier => "schreier",
            CheckKind::Category => "category",
            CheckKind::Groupoid => "groupoid",
            CheckKind::Lattice => "lattice",
            CheckKind::Modular => "modular",
            CheckKind::ActionRep => "action-rep",
            CheckKind::SCenter => "s-center",
            CheckKind::Smith => "smith",
            CheckKind::Huq => "huq",
            CheckKind::Axioms => "axioms",
            CheckKind::Effective => "effective",
        }
    }

    fn binary(self) -> bool {
        matches!(self, CheckKind::ActionRep | CheckKind::Smith | CheckKind::Huq)
    }
}

pub enum Output {
    Report(Report),
    Census(Vec<CensusRow>),
}

impl Output {
    pub fn to_text(&self) -> String {
        match self {
            Output::Report(r) => r.to_text(),
            Output::Census(rows) => census_text(rows),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = match self {
            Output::Report(r) => serde_json::to_string_pretty(r),
            Output::Census(rows) => serde_json::to_string_pretty(rows),
        }
        .expect("serializable");
        s.push('\n');
        s
    }
}

enum Operand {
    Finite(Object),
    Symbolic(SymbolicObject),
}

/// An existing file wins; otherwise symbolic example names, then the
/// finite registry.
fn load(path: &Path, cfg: &RunConfig) -> Result<Operand> {
    if !path.exists() {
        if let Ok(id) = path.to_string_lossy().parse::<ExampleId>() {
            return Ok(Operand::Symbolic(build_example(id)));
        }
    }
    let obj = load_object(path)?;
    cfg.guard("carrier order", carrier_order(&obj))?;
    Ok(Operand::Finite(obj))
}

/// Size of the largest finite group the object is built on.
fn carrier_order(obj: &Object) -> usize {
    match obj {
        Object::Group(g) => g.order(),
        Object::Morphism(m) => m.dom().order().max(m.cod().order()),
        Object::Point(p) => p.total.order(),
        Object::Action(a) => a.base.order() * a.target.order(),
        Object::Graph(g) => g.apex.order(),
        Object::PrecrossedModule(p) => p.ker.order() * p.base.order(),
        Object::Relation(r) => r.carrier().order(),
        Object::NormalSubobject(n) => n.carrier().order(),
        Object::Sigma(s) => s.x0().len(),
    }
}

fn subject(obj: &Object) -> String {
    match obj {
        Object::Group(g) => g.name().to_string(),
        Object::Morphism(m) => format!("{} -> {}", m.dom().name(), m.cod().name()),
        Object::Point(p) => format!("point {} -> {}", p.total.name(), p.base.name()),
        Object::Action(a) => format!("action of {} on {}", a.base.name(), a.target.name()),
        Object::Graph(g) => format!("graph {} over {}", g.apex.name(), g.base.name()),
        Object::PrecrossedModule(p) => format!("precrossed module {} -> {}", p.ker.name(), p.base.name()),
        Object::Relation(r) => format!("relation on {}", r.carrier().name()),
        Object::NormalSubobject(n) => format!("normal subobject of {}", n.carrier().name()),
        Object::Sigma(s) => format!("sigma algebra on {} elements", s.carrier()),
    }
}

fn symbolic_subject(obj: &SymbolicObject) -> String {
    match obj {
        SymbolicObject::Rpo(g) => g.name.clone(),
        SymbolicObject::Graph(g) => format!("{} over {}", g.apex.name, g.base.name),
    }
}

fn labels(g: &FiniteRpoGroup, items: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<String> = items.into_iter().map(|a| g.label(a)).collect();
    format!("{{{}}}", v.join(","))
}

fn axiom_lines(r: &AxiomReport) -> Vec<ReportLine> {
    r.entries().into_iter().map(|(name, v)| ReportLine::new(name, v.clone())).collect()
}

pub fn validate(path: &Path, cfg: &RunConfig) -> Result<Output> {
    let title = format!("validate {}", path.display());
    let (subj, lines) = match load(path, cfg)? {
        Operand::Symbolic(obj) => {
            let s = cfg.sampling();
            let lines = match &obj {
                SymbolicObject::Rpo(g) => vec![ReportLine::new("cone closed", sampled_validate(g, &s)?)],
                SymbolicObject::Graph(g) => vec![
                    ReportLine::new("apex cone closed", sampled_validate(&g.apex, &s)?),
                    ReportLine::new("base cone closed", sampled_validate(&g.base, &s)?),
                ],
            };
            (symbolic_subject(&obj), lines)
        }
        Operand::Finite(obj) => {
            let group_line = |g: &FiniteRpoGroup| {
                ReportLine::new(format!("{} is an rpo group", g.name()), g.validate()).note(format!("order {}, cone of size {}", g.order(), g.cone().len()))
            };
            let lines = match &obj {
                Object::Group(g) => vec![group_line(g)],
                Object::Morphism(m) => vec![group_line(m.dom()), group_line(m.cod()), ReportLine::new("morphism", m.check())],
                Object::Point(p) => vec![group_line(&p.total), group_line(&p.base), ReportLine::new("split epimorphism", Verdict::pass())],
                Object::Action(a) => vec![group_line(&a.base), group_line(&a.target), ReportLine::new("action", a.check())],
                Object::Graph(g) => vec![group_line(&g.apex), group_line(&g.base), ReportLine::new("reflexive graph", Verdict::pass())],
                Object::PrecrossedModule(p) => vec![
                    group_line(&p.ker),
                    group_line(&p.base),
                    ReportLine::new("precrossed module", Verdict::pass()),
                ],
                Object::Relation(r) => vec![
                    group_line(r.carrier()),
                    ReportLine::new("effective relation", Verdict::pass()).note(format!("{} classes", r.classes().len())),
                ],
                Object::NormalSubobject(n) => vec![
                    group_line(n.carrier()),
                    ReportLine::new("normal subobject", Verdict::pass()).note(format!("order {}", n.order())),
                ],
                Object::Sigma(s) => axiom_lines(&check_axioms(s)),
            };
            (subject(&obj), lines)
        }
    };
    let lines = lines.into_iter().map(|l| l.expect(true)).collect();
    Ok(Output::Report(Report::new(title).section(subj, lines)))
}

fn wrong_kind(kind: CheckKind, what: &str) -> Error {
    Error::Precondition {
        what: format!("check {}", kind.name()),
        detail: format!("not available for a {what}"),
    }
}

fn as_relation(op: &Operand, kind: CheckKind) -> Result<EffEqRelation> {
    match op {
        Operand::Finite(Object::Relation(r)) => Ok(r.clone()),
        Operand::Finite(Object::NormalSubobject(n)) => Ok(EffEqRelation::of_normal(n)),
        Operand::Finite(o) => Err(wrong_kind(kind, o.kind())),
        Operand::Symbolic(_) => Err(wrong_kind(kind, "symbolic example")),
    }
}

fn as_group(op: &Operand, kind: CheckKind) -> Result<Arc<FiniteRpoGroup>> {
    match op {
        Operand::Finite(Object::Group(g)) => Ok(g.clone()),
        Operand::Finite(o) => Err(wrong_kind(kind, o.kind())),
        Operand::Symbolic(_) => Err(wrong_kind(kind, "symbolic example")),
    }
}

fn finite_graph(obj: &Object, kind: CheckKind) -> Result<ReflexiveGraph> {
    match obj {
        Object::Graph(g) => Ok(g.clone()),
        Object::PrecrossedModule(p) => pxmod_to_graph(p),
        Object::Morphism(m) => relation_graph(m),
        o => Err(wrong_kind(kind, o.kind())),
    }
}

pub fn check(kind: CheckKind, path: &Path, path2: Option<&Path>, expect: Option<bool>, cfg: &RunConfig) -> Result<Output> {
    let first = load(path, cfg)?;
    let second = match (kind.binary(), path2) {
        (true, Some(p)) => Some(load(p, cfg)?),
        (true, None) => return Err(Error::Parse(format!("check {} needs a second FILE", kind.name()))),
        (false, Some(p)) => return Err(Error::Parse(format!("check {} takes one FILE, got extra `{}`", kind.name(), p.display()))),
        (false, None) => None,
    };
    let mut title = format!("check {} {}", kind.name(), path.display());
    if let Some(p) = path2 {
        let _ = write!(title, " {}", p.display());
    }
    let subj = match &first {
        Operand::Finite(o) => subject(o),
        Operand::Symbolic(o) => symbolic_subject(o),
    };
    let mut lines = match second {
        Some(second) => binary_check(kind, &first, &second)?,
        None => match &first {
            Operand::Finite(obj) => finite_check(kind, obj)?,
            Operand::Symbolic(obj) => symbolic_check(kind, obj, &cfg.sampling())?,
        },
    };
    if let (Some(e), Some(line)) = (expect, lines.first_mut()) {
        line.expected = Some(e);
    }
    Ok(Output::Report(Report::new(title).section(subj, lines)))
}

fn finite_check(kind: CheckKind, obj: &Object) -> Result<Vec<ReportLine>> {
    let name = kind.name();
    let line = |v: Verdict| ReportLine::new(name, v);
    let lines = match kind {
        CheckKind::Preordered => vec![line(as_group(&Operand::Finite(obj.clone()), kind)?.is_preordered())],
        CheckKind::Schreier => {
            let p = match obj {
                Object::Point(p) => p.clone(),
                Object::Action(a) => semidirect(a)?,
                o => finite_graph(o, kind)?.point(),
            };
            vec![line(is_schreier(&p))]
        }
        CheckKind::Category => vec![line(is_internal_category(&finite_graph(obj, kind)?))],
        CheckKind::Groupoid => vec![line(is_groupoid(&finite_graph(obj, kind)?)?)],
        CheckKind::Effective => vec![line(is_effective(&finite_graph(obj, kind)?)?)],
        CheckKind::Lattice | CheckKind::Modular => {
            let g = as_group(&Operand::Finite(obj.clone()), kind)?;
            let lat = normal_lattice(&g);
            let v = if kind == CheckKind::Lattice { check_lattice_iso(&g) } else { check_modular(&lat.tables) };
            vec![line(v).note(format!("{}-element lattice", lat.len()))]
        }
        CheckKind::SCenter => {
            let g = as_group(&Operand::Finite(obj.clone()), kind)?;
            match s_center(&g)? {
                SCenter::Center(z) => {
                    let note = format!("center {} with cone {}", labels(&g, z.subgroup().iter()), labels(&g, z.cone().iter()));
                    vec![line(Verdict::pass()).note(note)]
                }
                SCenter::Refused(v) => vec![line(v).note("refused")],
            }
        }
        CheckKind::Axioms => match obj {
            Object::Sigma(s) => axiom_lines(&check_axioms(s)),
            Object::Group(g) => axiom_lines(&check_axioms(&to_model(g))),
            o => return Err(wrong_kind(kind, o.kind())),
        },
        CheckKind::ActionRep | CheckKind::Smith | CheckKind::Huq => unreachable!("binary checks"),
    };
    Ok(lines)
}

fn binary_check(kind: CheckKind, a: &Operand, b: &Operand) -> Result<Vec<ReportLine>> {
    let name = kind.name();
    Ok(match kind {
        CheckKind::ActionRep => {
            let (x, y) = (as_group(a, kind)?, as_group(b, kind)?);
            let r = check_action_rep(&x, &y)?;
            vec![ReportLine::new(name, r.verdict).note(format!("monotone morphisms: {}, extension classes: {}", r.morphisms, r.classes))]
        }
        CheckKind::Smith => {
            let (r, s) = (as_relation(a, kind)?, as_relation(b, kind)?);
            vec![ReportLine::new(name, smith_commute(&r, &s)?)]
        }
        CheckKind::Huq => {
            let (r, s) = (as_relation(a, kind)?, as_relation(b, kind)?);
            if **r.carrier() != **s.carrier() {
                return Err(Error::CarrierMismatch(format!("{} and {} are different carriers", r.carrier().name(), s.carrier().name())));
            }
            let (n, m) = (normalization(&r), normalization(&s));
            vec![ReportLine::new(name, huq_commute(r.carrier(), &n.as_subobject(), &m.as_subobject()))]
        }
        _ => unreachable!("unary checks"),
    })
}

fn symbolic_check(kind: CheckKind, obj: &SymbolicObject, cfg: &SampleConfig) -> Result<Vec<ReportLine>> {
    let name = kind.name();
    let line = |v: Verdict| ReportLine::new(name, v);
    match (kind, obj) {
        (CheckKind::Schreier, SymbolicObject::Graph(g)) => Ok(vec![line(full_verdict_sampled(g, cfg)?.is_schreier_graph)]),
        (CheckKind::Category, SymbolicObject::Graph(g)) => Ok(vec![line(is_internal_category_sampled(g, cfg)?)]),
        (CheckKind::Groupoid, SymbolicObject::Graph(g)) => Ok(vec![line(is_groupoid_sampled(g, cfg)?)]),
        (CheckKind::SCenter, SymbolicObject::Rpo(g)) => Ok(match s_center_sampled(g, cfg)? {
            SymbolicSCenter::Whole(v) => vec![line(v).note("whole object")],
            SymbolicSCenter::Refused(v) => vec![line(v).note("refused")],
        }),
        (kind, SymbolicObject::Rpo(_)) => Err(wrong_kind(kind, "symbolic rpo group")),
        (kind, SymbolicObject::Graph(_)) => Err(wrong_kind(kind, "symbolic graph")),
    }
}

pub fn example(id: &str, cfg: &RunConfig) -> Result<Output> {
    let sampling = cfg.sampling();
    if id != "all" {
        return Ok(Output::Report(run_example(id.parse()?, &sampling)?));
    }
    let mut out = Report::new("examples");
    for id in GalleryId::all() {
        let r = run_example(id, &sampling)?;
        for s in r.sections {
            out = out.section(format!("{id}: {}", s.subject), s.lines);
        }
    }
    Ok(Output::Report(out))
}

pub fn census(n: usize, cfg: &RunConfig) -> Result<Output> {
    cfg.guard("census order", n)?;
    Ok(Output::Census(run_census(n)?))
}

fn census_text(rows: &[CensusRow]) -> String {
    let header = ["order", "groups", "cones", "preordered", "points", "schreier", "graphs", "categories", "groupoids"];
    let mut out = header.iter().map(|h| format!("{h:>11}")).collect::<String>();
    out.push('\n');
    for r in rows {
        for v in [
            r.order,
            r.groups,
            r.cones,
            r.preordered,
            r.points,
            r.schreier_points,
            r.graphs,
            r.internal_categories,
            r.groupoids,
        ] {
            let _ = write!(out, "{v:>11}");
        }
        out.push('\n');
    }
    out
}
