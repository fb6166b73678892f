//! JSON loading for every object kind.
//!
//! A file holds one object. Any file may also carry `"groups": [...]`, a list
//! of rpo group objects that names inside the file resolve against before
//! the built-in registry. Tables are normalized so the identity has index 0;
//! maps referring to a normalized group are rewritten to match, and element
//! labels keep the user's original indices.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::finite::catalog::rpo_by_name;
use crate::finite::group::FiniteGroup;
use crate::finite::rpo::{Cone, FiniteRpoGroup, RpoMorphism};
use crate::internal::{PrecrossedModule, ReflexiveGraph};
use crate::quasivariety::{SigmaAlgebra, SigmaOps};
use crate::schreier::{ActionMorphism, SplitPoint};
use crate::subobjects::{EffEqRelation, NormalSubobject};

#[derive(Deserialize)]
struct GroupJson {
    name: String,
    order: usize,
    table: Vec<Vec<usize>>,
    cone: Vec<usize>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct MorphismJson {
    dom: String,
    cod: String,
    map: Vec<usize>,
}

#[derive(Deserialize)]
struct PointJson {
    total: String,
    base: String,
    d: Vec<usize>,
    e: Vec<usize>,
}

#[derive(Deserialize)]
struct ActionJson {
    base: String,
    target: String,
    act: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct GraphJson {
    apex: String,
    base: String,
    d: Vec<usize>,
    c: Vec<usize>,
    e: Vec<usize>,
}

#[derive(Deserialize)]
struct PxJson {
    base: String,
    ker: String,
    boundary: Vec<usize>,
    act: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RelationJson {
    carrier: String,
    partition: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct SubobjectJson {
    carrier: String,
    subgroup: Vec<usize>,
}

#[derive(Deserialize)]
struct SigmaJson {
    carrier: usize,
    zero: usize,
    plus: Vec<Vec<usize>>,
    neg: Vec<usize>,
    proj0: Vec<usize>,
    proj1: Vec<usize>,
    inj: Vec<usize>,
    #[serde(default)]
    tri: Option<Vec<usize>>,
}

/// Any loadable object.
#[derive(Clone, Debug)]
pub enum Object {
    Group(Arc<FiniteRpoGroup>),
    Morphism(RpoMorphism),
    Point(SplitPoint),
    Action(ActionMorphism),
    Graph(ReflexiveGraph),
    PrecrossedModule(PrecrossedModule),
    Relation(EffEqRelation),
    NormalSubobject(NormalSubobject),
    Sigma(SigmaAlgebra),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Group(_) => "group",
            Object::Morphism(_) => "morphism",
            Object::Point(_) => "point",
            Object::Action(_) => "action",
            Object::Graph(_) => "graph",
            Object::PrecrossedModule(_) => "precrossed module",
            Object::Relation(_) => "relation",
            Object::NormalSubobject(_) => "normal subobject",
            Object::Sigma(_) => "sigma algebra",
        }
    }
}

fn typed<T: DeserializeOwned>(v: &Value, context: &str) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse(format!("{context}: field `{path}`: {}", e.into_inner()))
    })
}

/// A group together with the relabelling applied on load (old -> new).
#[derive(Clone)]
struct Loaded {
    rpo: Arc<FiniteRpoGroup>,
    perm: Vec<usize>,
}

fn build_group(g: GroupJson) -> Result<Loaded> {
    if g.order != g.table.len() {
        return Err(Error::structural(format!(
            "group `{}`: order is {} but the table has {} rows",
            g.name,
            g.order,
            g.table.len()
        )));
    }
    let mut group = FiniteGroup::from_rows(&g.table)?;
    let n = group.order();
    let labels = match g.labels {
        Some(l) if l.len() != n => {
            return Err(Error::structural(format!("group `{}`: {} labels for {n} elements", g.name, l.len())))
        }
        Some(l) => l,
        None => (0..n).map(|i| i.to_string()).collect(),
    };
    group = group.with_labels(labels);
    let rpo = FiniteRpoGroup::new(g.name.clone(), group, &g.cone)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let rpo = match rpo.group().find_identity() {
        Some(e) if e != 0 => {
            perm.swap(0, e);
            let grp = rpo.group().permuted(&perm);
            let cone = Cone::from_indices(n, rpo.cone().iter().map(|a| perm[a]));
            FiniteRpoGroup::from_parts(g.name, grp, cone)
        }
        _ => rpo,
    };
    Ok(Loaded { rpo: Arc::new(rpo), perm })
}

struct Scope {
    groups: HashMap<String, Loaded>,
}

impl Scope {
    fn new(doc: &Value) -> Result<Self> {
        let mut groups = HashMap::new();
        if let Some(list) = doc.get("groups") {
            let list: Vec<GroupJson> = typed(list, "groups")?;
            for g in list {
                let name = g.name.clone();
                if groups.insert(name.clone(), build_group(g)?).is_some() {
                    return Err(Error::Parse(format!("group `{name}` is defined twice")));
                }
            }
        }
        Ok(Scope { groups })
    }

    fn group(&self, name: &str) -> Result<Loaded> {
        if let Some(l) = self.groups.get(name) {
            return Ok(l.clone());
        }
        let rpo = rpo_by_name(name)?;
        let perm = (0..rpo.order()).collect();
        Ok(Loaded { rpo, perm })
    }

    fn morphism(&self, dom: &str, cod: &str, map: &[usize]) -> Result<RpoMorphism> {
        let (d, c) = (self.group(dom)?, self.group(cod)?);
        if map.len() != d.rpo.order() {
            return Err(Error::structural(format!(
                "map {dom} -> {cod} has length {}, expected {}",
                map.len(),
                d.rpo.order()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= c.rpo.order()) {
            return Err(Error::structural(format!("map value {v} is out of range for `{cod}`")));
        }
        let mut out = vec![0; map.len()];
        for (i, &v) in map.iter().enumerate() {
            out[d.perm[i]] = c.perm[v];
        }
        RpoMorphism::new(d.rpo, c.rpo, out)
    }
}

/// Parses one object from JSON text.
pub fn parse_object(text: &str) -> Result<Object> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(e.to_string()))?;
    if !doc.is_object() {
        return Err(Error::Parse("top level must be a JSON object".into()));
    }
    let scope = Scope::new(&doc)?;
    let has = |k: &str| doc.get(k).is_some();
    if has("table") {
        return Ok(Object::Group(build_group(typed(&doc, "group")?)?.rpo));
    }
    if has("plus") {
        let s: SigmaJson = typed(&doc, "sigma algebra")?;
        let ops = SigmaOps {
            zero: s.zero,
            plus: s.plus,
            neg: s.neg,
            proj0: s.proj0,
            proj1: s.proj1,
            inj: s.inj,
            tri: s.tri,
        };
        return Ok(Object::Sigma(SigmaAlgebra::new(s.carrier, ops)?));
    }
    if has("map") {
        let m: MorphismJson = typed(&doc, "morphism")?;
        return Ok(Object::Morphism(scope.morphism(&m.dom, &m.cod, &m.map)?));
    }
    if has("total") {
        let p: PointJson = typed(&doc, "point")?;
        let d = scope.morphism(&p.total, &p.base, &p.d)?;
        let e = scope.morphism(&p.base, &p.total, &p.e)?;
        return Ok(Object::Point(SplitPoint::new(d, e)?));
    }
    if has("apex") {
        let g: GraphJson = typed(&doc, "graph")?;
        let d = scope.morphism(&g.apex, &g.base, &g.d)?;
        let c = scope.morphism(&g.apex, &g.base, &g.c)?;
        let e = scope.morphism(&g.base, &g.apex, &g.e)?;
        return Ok(Object::Graph(ReflexiveGraph::new(d, c, e)?));
    }
    if has("ker") {
        let p: PxJson = typed(&doc, "precrossed module")?;
        let boundary = scope.morphism(&p.ker, &p.base, &p.boundary)?;
        let action = action(&scope, &p.base, &p.ker, &p.act)?;
        return Ok(Object::PrecrossedModule(PrecrossedModule::new(boundary, action)?));
    }
    if has("target") {
        let a: ActionJson = typed(&doc, "action")?;
        return Ok(Object::Action(action(&scope, &a.base, &a.target, &a.act)?));
    }
    if has("partition") {
        let r: RelationJson = typed(&doc, "relation")?;
        let l = scope.group(&r.carrier)?;
        let partition: Vec<Vec<usize>> = r
            .partition
            .iter()
            .map(|block| remap(&l, block))
            .collect::<Result<_>>()?;
        return Ok(Object::Relation(EffEqRelation::from_partition(l.rpo, &partition)?));
    }
    if has("subgroup") {
        let s: SubobjectJson = typed(&doc, "normal subobject")?;
        let l = scope.group(&s.carrier)?;
        let set = crate::BitSet::from_indices(l.rpo.order(), remap(&l, &s.subgroup)?);
        return Ok(Object::NormalSubobject(NormalSubobject::new(l.rpo, set)?));
    }
    if let Some(Value::String(name)) = doc.get("name") {
        if doc.as_object().is_some_and(|o| o.len() == 1) {
            return Ok(Object::Group(rpo_by_name(name)?));
        }
    }
    Err(Error::Parse("cannot tell which kind of object this is".into()))
}

fn remap(l: &Loaded, items: &[usize]) -> Result<Vec<usize>> {
    items
        .iter()
        .map(|&i| {
            l.perm
                .get(i)
                .copied()
                .ok_or_else(|| Error::structural(format!("index {i} is out of range for `{}`", l.rpo.name())))
        })
        .collect()
}

fn action(scope: &Scope, base: &str, target: &str, act: &[Vec<usize>]) -> Result<ActionMorphism> {
    let (b, t) = (scope.group(base)?, scope.group(target)?);
    if act.len() != b.rpo.order() {
        return Err(Error::structural(format!("act has {} rows, expected {}", act.len(), b.rpo.order())));
    }
    let mut out = vec![Vec::new(); act.len()];
    for (x, row) in act.iter().enumerate() {
        let row = remap(&t, row)?;
        if row.len() != t.rpo.order() {
            return Err(Error::structural(format!("act row {x} has length {}", row.len())));
        }
        let mut r = vec![0; row.len()];
        for (k, v) in row.into_iter().enumerate() {
            r[t.perm[k]] = v;
        }
        out[b.perm[x]] = r;
    }
    ActionMorphism::new(b.rpo, t.rpo, out)
}

/// Reads and parses a file, or resolves a registry name when no such file
/// exists.
pub fn load_object(path: &Path) -> Result<Object> {
    match std::fs::read_to_string(path) {
        Ok(text) => parse_object(&text).map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
            other => other,
        }),
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => {
            let name = path.to_string_lossy();
            rpo_by_name(&name).map(Object::Group).map_err(|_| Error::Parse(format!("{name}: no such file")))
        }
        Err(err) => Err(Error::Parse(format!("{}: {err}", path.display()))),
    }
}

/// The JSON form of a finite rpo group.
pub fn group_to_json(g: &FiniteRpoGroup) -> Value {
    serde_json::json!({
        "name": g.name(),
        "order": g.order(),
        "table": g.group().rows(),
        "cone": g.cone().iter().collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::catalog::cyclic;

    #[test]
    fn round_trip_group() {
        let g = FiniteRpoGroup::new("C4", cyclic(4), &[0, 2]).unwrap();
        match parse_object(&group_to_json(&g).to_string()).unwrap() {
            Object::Group(h) => assert_eq!(*h, g),
            other => panic!("{}", other.kind()),
        }
    }

    #[test]
    fn identity_is_moved_to_zero() {
        // C2 with the identity stored at index 1.
        let text = r#"{"name":"C2","order":2,"table":[[1,0],[0,1]],"cone":[1]}"#;
        let Object::Group(g) = parse_object(text).unwrap() else { panic!() };
        assert_eq!(g.group().find_identity(), Some(0));
        assert_eq!(g.label(0), "1");
        assert!(g.validate().holds);
        let text = r#"{"groups":[{"name":"A","order":2,"table":[[1,0],[0,1]],"cone":[1]}],
                       "dom":"A","cod":"C2","map":[1,0]}"#;
        let Object::Morphism(f) = parse_object(text).unwrap() else { panic!() };
        assert_eq!(f.map(), &[0, 1]);
        assert!(f.check().holds);
    }

    #[test]
    fn errors_name_the_field() {
        let err = parse_object(r#"{"name":"x","order":2,"table":[[0,1],[1,0]],"cone":"no"}"#).unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.contains("cone")), "{err}");
        let err = parse_object("{\n\"name\": 1,,}").unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.contains("line 2")), "{err}");
        let err = parse_object(r#"{"name":"x","order":3,"table":[[0,1],[1,0]],"cone":[0]}"#).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
        let err = parse_object(r#"{"dom":"nope","cod":"C2","map":[0]}"#).unwrap_err();
        assert!(matches!(err, Error::UnknownName(_)));
    }

    #[test]
    fn registry_objects() {
        let Object::Relation(r) = parse_object(r#"{"carrier":"C4","partition":[[0,2],[1,3]]}"#).unwrap() else {
            panic!()
        };
        assert_eq!(r.classes().len(), 2);
        let Object::Group(g) = parse_object(r#"{"name":"S4_A4"}"#).unwrap() else { panic!() };
        assert_eq!(g.order(), 24);
    }
}
