//! Group and action input: family names, catalog names and JSON files.
//!
//! The JSON formats are described in `docs/input-format.md`.

use serde::Deserialize;
use serde_json::Value;

use crate::action::{full_aut, inner_action, inner_action_by, overgroup_action_realized, ActionSpec, Automorphism, Provenance};
use crate::constructors::{
    alt_realized, catalog_entry, catalog_names, cyclic, dihedral, elementary_abelian, extraspecial_p3_exp_p,
    gf_frobenius_pair, matrix_group, perm_conj, permutation_group, psl2, q8_central_d8, quaternion8, sl2_realized,
    sym_realized, CatalogEntry, FieldElem, GaloisField, Matrix, Perm,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Realization};

/// Concrete elements behind a loaded group, when it has them.
#[derive(Clone, Debug)]
pub enum Realized {
    Permutations(Realization<Perm>),
    Matrices(GaloisField, Realization<Matrix>),
}

/// A group ready for analysis, with the actions that come with it.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub group: FiniteGroup,
    pub realized: Option<Realized>,
    /// Actions defined by the source (catalog entry or family).
    pub actions: Vec<ActionSpec>,
    pub entry: Option<CatalogEntry>,
}

impl LoadedGroup {
    fn plain(group: FiniteGroup) -> Self {
        LoadedGroup { group, realized: None, actions: Vec::new(), entry: None }
    }

    fn perms(real: Realization<Perm>) -> Self {
        LoadedGroup { group: real.group.clone(), realized: Some(Realized::Permutations(real)), actions: Vec::new(), entry: None }
    }

    fn matrices(field: GaloisField, real: Realization<Matrix>) -> Self {
        LoadedGroup { group: real.group.clone(), realized: Some(Realized::Matrices(field, real)), actions: Vec::new(), entry: None }
    }

    /// Resolves a named action: one defined by the source, `inner`, or
    /// `full_aut` (alias `aut`).
    pub fn named_action(&self, name: &str, budget: u64) -> Result<ActionSpec> {
        if let Some(a) = self.actions.iter().find(|a| a.name == name) {
            return Ok(a.clone());
        }
        match name {
            "inner" | "inn" => Ok(inner_action(&self.group)),
            "full_aut" | "aut" => full_aut(&self.group, budget),
            _ => {
                let known: Vec<&str> = self.actions.iter().map(|a| a.name.as_str()).collect();
                Err(Error::Input(format!("unknown action {name}; available: inner, full_aut {known:?}")))
            }
        }
    }
}

/// A group description: a family with parameters, or generators.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupInput {
    Family {
        kind: String,
        #[serde(default)]
        params: Vec<i64>,
    },
    Matrices {
        #[serde(default)]
        name: Option<String>,
        field: u16,
        generators: Vec<Vec<Vec<i64>>>,
    },
    Permutations {
        #[serde(default)]
        name: Option<String>,
        generators: Vec<Vec<usize>>,
    },
}

/// An action description. Exactly one of the variant keys is present.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionInput {
    #[serde(default)]
    pub name: Option<String>,
    /// `true` for `Inn(G)`, or a list of element indices to conjugate by.
    #[serde(default)]
    pub inner: Option<Value>,
    /// Generators of an overgroup normalising `G`, in the format of the
    /// group's own generators.
    #[serde(default)]
    pub overgroup: Option<Vec<Value>>,
    #[serde(default)]
    pub full_aut: Option<bool>,
    /// Automorphisms as image arrays over element indices.
    #[serde(default)]
    pub maps: Option<Vec<Vec<usize>>>,
}

fn param(params: &[i64], i: usize, kind: &str) -> Result<i64> {
    params.get(i).copied().ok_or_else(|| Error::Input(format!("{kind} needs {} parameter(s)", i + 1)))
}

fn small<T: TryFrom<i64>>(v: i64, what: &str) -> Result<T> {
    T::try_from(v).map_err(|_| Error::Input(format!("{what} = {v} is out of range")))
}

/// Builds a family member; `kind` is case-insensitive.
pub fn build_family(kind: &str, params: &[i64]) -> Result<LoadedGroup> {
    let k = kind.to_ascii_lowercase();
    let p = |i| param(params, i, kind);
    let g = match k.as_str() {
        "cyclic" | "z" | "c" => LoadedGroup::plain(cyclic(small(p(0)?, "n")?)?),
        "elementary_abelian" => LoadedGroup::plain(elementary_abelian(small(p(0)?, "p")?, small(p(1)?, "k")?)?),
        "dihedral" | "d" => LoadedGroup::plain(dihedral(small(p(0)?, "order")?)?),
        "quaternion8" | "q8" => LoadedGroup::plain(quaternion8()?),
        "q8_central_d8" => LoadedGroup::plain(q8_central_d8()?),
        "sym" | "s" => LoadedGroup::perms(sym_realized(small(p(0)?, "n")?)?),
        "alt" | "a" => LoadedGroup::perms(alt_realized(small(p(0)?, "n")?)?),
        "sl2" => {
            let (f, real) = sl2_realized(small(p(0)?, "q")?)?;
            LoadedGroup::matrices(f, real)
        }
        "psl2" => LoadedGroup::plain(psl2(small(p(0)?, "q")?)?),
        "extraspecial_p3_exp_p" | "extraspecial" => LoadedGroup::plain(extraspecial_p3_exp_p(small(p(0)?, "p")?)?),
        "frobenius_pair" | "gf_frobenius_pair" => {
            let (g, a) = gf_frobenius_pair(small(p(0)?, "p")?, small(p(1)?, "n")?, small(p(2)?, "q")?, small(p(3)?, "m")?)?;
            LoadedGroup { group: g, realized: None, actions: vec![a], entry: None }
        }
        _ => return Err(Error::Input(format!("unknown group family {kind}"))),
    };
    Ok(g)
}

/// Resolves a group name: a catalog entry (`e2-sl25`) or a family call
/// such as `sl2(9)`, `SL(2,9)`, `sym(4)`, `q8`.
pub fn resolve_group_name(name: &str) -> Result<LoadedGroup> {
    if catalog_names().contains(&name) {
        let entry = catalog_entry(name)?;
        return Ok(LoadedGroup { group: entry.group.clone(), realized: None, actions: entry.actions.clone(), entry: Some(entry) });
    }
    let trimmed = name.trim();
    let (kind, args) = match trimmed.find('(') {
        Some(i) if trimmed.ends_with(')') => (&trimmed[..i], &trimmed[i + 1..trimmed.len() - 1]),
        _ => (trimmed, ""),
    };
    let mut params = args
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| Error::Input(format!("bad parameter {s} in {name}"))))
        .collect::<Result<Vec<_>>>()?;
    let mut kind = kind.to_ascii_lowercase();
    // SL(2,q) and PSL(2,q)
    if (kind == "sl" || kind == "psl") && params.first() == Some(&2) {
        params.remove(0);
        kind.push('2');
    }
    build_family(&kind, &params).map_err(|e| match e {
        Error::Input(msg) if msg.starts_with("unknown group family") => Error::Input(format!(
            "unknown group {name}; use a catalog name ({}) or a family such as sl2(5), sym(4), cyclic(6)",
            catalog_names().join(", ")
        )),
        e => e,
    })
}

fn field_elem(f: &GaloisField, v: i64) -> Result<FieldElem> {
    if f.degree() == 1 {
        Ok(f.from_int(v))
    } else if (0..f.order() as i64).contains(&v) {
        Ok(FieldElem(v as u16))
    } else {
        Err(Error::Input(format!("entry {v} is not an element code of GF({})", f.order())))
    }
}

fn parse_matrix(f: &GaloisField, rows: &[Vec<i64>]) -> Result<Matrix> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Input("matrices must be square and nonempty".into()));
    }
    let entries = rows.iter().flatten().map(|&v| field_elem(f, v)).collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_entries(n, entries)?;
    if f.mat_inv(&m).is_none() {
        return Err(Error::Input("singular matrix among generators".into()));
    }
    Ok(m)
}

fn parse_perm(images: &[usize]) -> Result<Perm> {
    let n = images.len();
    if n > u8::MAX as usize {
        return Err(Error::Input(format!("permutation degree {n} exceeds 255")));
    }
    let mut seen = vec![false; n];
    for &i in images {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Input(format!("{images:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(images.iter().map(|&i| i as u8).collect())
}

fn parse_perms(gens: &[Vec<usize>]) -> Result<(usize, Vec<Perm>)> {
    let perms = gens.iter().map(|g| parse_perm(g)).collect::<Result<Vec<_>>>()?;
    let degree = perms.first().map_or(1, Vec::len);
    if perms.iter().any(|p| p.len() != degree) {
        return Err(Error::Input("permutations of different degrees".into()));
    }
    Ok((degree, perms))
}

pub fn load_group(input: &GroupInput) -> Result<LoadedGroup> {
    match input {
        GroupInput::Family { kind, params } => build_family(kind, params),
        GroupInput::Permutations { name, generators } => {
            let (degree, perms) = parse_perms(generators)?;
            let real = permutation_group(name.clone().unwrap_or_else(|| "G".into()), degree, &perms)?;
            Ok(LoadedGroup::perms(real))
        }
        GroupInput::Matrices { name, field, generators } => {
            let f = GaloisField::of_order(*field)?;
            let mats = generators.iter().map(|m| parse_matrix(&f, m)).collect::<Result<Vec<_>>>()?;
            let real = matrix_group(name.clone().unwrap_or_else(|| "G".into()), &f, &mats)?;
            Ok(LoadedGroup::matrices(f, real))
        }
    }
}

pub fn parse_group_json(text: &str) -> Result<LoadedGroup> {
    let input: GroupInput = serde_json::from_str(text).map_err(|e| Error::Input(format!("group file: {e}")))?;
    load_group(&input)
}

pub fn parse_action_json(group: &LoadedGroup, text: &str, budget: u64) -> Result<ActionSpec> {
    let input: ActionInput = serde_json::from_str(text).map_err(|e| Error::Input(format!("action file: {e}")))?;
    load_action(group, &input, budget)
}

pub fn load_action(loaded: &LoadedGroup, input: &ActionInput, budget: u64) -> Result<ActionSpec> {
    let g = &loaded.group;
    let set = [input.inner.is_some(), input.overgroup.is_some(), input.full_aut.is_some(), input.maps.is_some()];
    if set.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::Input("an action needs exactly one of inner, overgroup, full_aut, maps".into()));
    }
    let name = |default: &str| input.name.clone().unwrap_or_else(|| default.into());
    if let Some(inner) = &input.inner {
        return match inner {
            Value::Bool(true) => Ok(ActionSpec { name: name("inner"), ..inner_action(g) }),
            Value::Array(xs) => {
                let elems = xs
                    .iter()
                    .map(|x| x.as_u64().map(|v| v as usize).filter(|&v| v < g.order()))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Input("inner: element indices expected".into()))?;
                Ok(inner_action_by(g, &elems, name("inner")))
            }
            _ => Err(Error::Input("inner must be true or a list of element indices".into())),
        };
    }
    if input.full_aut.is_some() {
        let a = full_aut(g, budget)?;
        return Ok(ActionSpec { name: name(&a.name), ..a });
    }
    if let Some(maps) = &input.maps {
        let gens = maps.iter().map(|m| Automorphism::new(g, m.clone())).collect::<Result<Vec<_>>>()?;
        return ActionSpec::new(g, name("maps"), gens, Provenance::Explicit);
    }
    let over = input.overgroup.as_deref().unwrap_or_default();
    match &loaded.realized {
        Some(Realized::Permutations(real)) => {
            let gens: Vec<Vec<usize>> = serde_json::from_value(Value::Array(over.to_vec()))
                .map_err(|e| Error::Input(format!("overgroup permutations: {e}")))?;
            let (_, perms) = parse_perms(&gens)?;
            overgroup_action_realized(real, &perms, |x: &Perm, h: &Perm| perm_conj(x, h), name("overgroup"))
        }
        Some(Realized::Matrices(f, real)) => {
            let gens: Vec<Vec<Vec<i64>>> = serde_json::from_value(Value::Array(over.to_vec()))
                .map_err(|e| Error::Input(format!("overgroup matrices: {e}")))?;
            let mats = gens.iter().map(|m| parse_matrix(f, m)).collect::<Result<Vec<_>>>()?;
            let fc = f.clone();
            overgroup_action_realized(real, &mats, move |x: &Matrix, h: &Matrix| fc.mat_conj(x, h), name("overgroup"))
        }
        None => Err(Error::Input("overgroup actions need a group given by permutations or matrices".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::DEFAULT_BUDGET;

    #[test]
    fn names_resolve() {
        assert_eq!(resolve_group_name("SL(2,9)").unwrap().group.order(), 720);
        assert_eq!(resolve_group_name("sl2(5)").unwrap().group.order(), 120);
        assert_eq!(resolve_group_name("sym(4)").unwrap().group.order(), 24);
        assert_eq!(resolve_group_name("q8").unwrap().group.order(), 8);
        assert!(resolve_group_name("e2-sl25").unwrap().entry.is_some());
        assert!(matches!(resolve_group_name("nonsense(3)"), Err(Error::Input(_))));
    }

    #[test]
    fn json_groups() {
        let s3 = parse_group_json(r#"{"generators": [[1,0,2],[1,2,0]]}"#).unwrap();
        assert_eq!(s3.group.order(), 6);
        let sl23 = parse_group_json(r#"{"field": 3, "generators": [[[1,1],[0,1]], [[1,0],[1,1]]]}"#).unwrap();
        assert_eq!(sl23.group.order(), 24);
        let fam = parse_group_json(r#"{"kind": "dihedral", "params": [10]}"#).unwrap();
        assert_eq!(fam.group.order(), 10);
        assert!(parse_group_json(r#"{"generators": [[0,0]]}"#).is_err());
        assert!(parse_group_json(r#"{"field": 4, "generators": [[[7]]]}"#).is_err());
    }

    #[test]
    fn json_actions() {
        let s4 = parse_group_json(r#"{"kind": "alt", "params": [4]}"#).unwrap();
        let inner = parse_action_json(&s4, r#"{"inner": true}"#, DEFAULT_BUDGET).unwrap();
        assert_eq!(inner.induced_order(&s4.group, 1000).unwrap(), 12);
        let over = parse_action_json(&s4, r#"{"overgroup": [[1,0,2,3]]}"#, DEFAULT_BUDGET).unwrap();
        assert_eq!(over.induced_order(&s4.group, 1000).unwrap(), 2);
        let aut = parse_action_json(&s4, r#"{"full_aut": true}"#, DEFAULT_BUDGET).unwrap();
        assert_eq!(aut.induced_order(&s4.group, 1000).unwrap(), 24);
        let id: Vec<usize> = (0..12).collect();
        let maps = format!(r#"{{"maps": [{id:?}]}}"#);
        assert_eq!(parse_action_json(&s4, &maps, DEFAULT_BUDGET).unwrap().induced_order(&s4.group, 10).unwrap(), 1);
        assert!(parse_action_json(&s4, r#"{"maps": [[1,0,2,3,4,5,6,7,8,9,10,11]]}"#, DEFAULT_BUDGET).is_err());
        assert!(parse_action_json(&s4, r#"{"inner": true, "full_aut": true}"#, DEFAULT_BUDGET).is_err());
    }
}
