//! Instance files: a group, a character of it and the dimension `n`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use immvar_core::exactalg::parse_rat;
use immvar_core::{Bounds, Character, CycloNum, MultiIndex, Perm, PermGroup, Rat};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub k: usize,
    pub n: usize,
    /// One-line permutations of `[k]`; an empty list gives the trivial group.
    #[serde(default)]
    pub generators: Vec<String>,
    pub character: CharacterSpec,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub bounds: Bounds,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CharacterSpec {
    // Empty braces so that stray fields are rejected for these kinds too.
    Trivial {},
    Sign {},
    /// `χ(g) = z_m^e` on each listed generator.
    GeneratorExponents {
        conductor: u32,
        exponents: BTreeMap<String, i64>,
    },
    /// A value for every group element, keyed by its one-line notation.
    Table {
        conductor: u32,
        values: BTreeMap<String, Value>,
    },
}

/// A rational such as `"-1/2"`, or power-basis coefficients of an element
/// of `Q(z_m)` such as `["0", "1"]` for `z_m`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Rational(String),
    Coefficients(Vec<String>),
}

/// A validated instance.
pub struct Instance {
    pub spec: InstanceSpec,
    pub group: Arc<PermGroup>,
    pub chi: Character,
}

impl Instance {
    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    pub fn bounds(&self) -> &Bounds {
        &self.spec.bounds
    }
}

fn perm(s: &str, k: usize) -> Result<Perm, CliError> {
    let p: Perm = s.parse().map_err(|e| CliError::input(format!("permutation {s:?}: {e}")))?;
    if p.degree() != k {
        return Err(CliError::input(format!("permutation {s:?} has degree {}, expected k = {k}", p.degree())));
    }
    Ok(p)
}

fn value(v: &Value, m: u32) -> Result<CycloNum, CliError> {
    let rat = |s: &str| parse_rat(s).map_err(|e| CliError::input(format!("value {s:?}: {e}")));
    Ok(match v {
        Value::Rational(s) => CycloNum::from_rat_in(m, rat(s)?),
        Value::Coefficients(cs) => {
            let coeffs = cs.iter().map(|c| rat(c)).collect::<Result<Vec<Rat>, _>>()?;
            CycloNum::new(m, coeffs)
        }
    })
}

pub fn parse_instance(text: &str) -> Result<InstanceSpec, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        CliError::input(format!(
            "line {}, column {}, field `{}`: {inner}",
            inner.line(),
            inner.column(),
            e.path()
        ))
    })
}

pub fn load(path: &Path, parallel: bool) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let mut spec = parse_instance(&text).map_err(|e| e.context(&path.display().to_string()))?;
    spec.bounds.parallel |= parallel;
    build(spec)
}

pub fn build(spec: InstanceSpec) -> Result<Instance, CliError> {
    let k = spec.k;
    if k == 0 || k > 255 || spec.n == 0 || spec.n > 255 {
        return Err(CliError::input(format!("k = {k} and n = {} must lie in 1..=255", spec.n)));
    }
    let gens = spec.generators.iter().map(|g| perm(g, k)).collect::<Result<Vec<_>, _>>()?;
    let group = Arc::new(PermGroup::closure(k, &gens)?);
    let chi = match &spec.character {
        CharacterSpec::Trivial {} => Character::trivial(group.clone()),
        CharacterSpec::Sign {} => Character::sign(group.clone()),
        CharacterSpec::GeneratorExponents { conductor, exponents } => {
            let map = exponents
                .iter()
                .map(|(g, &e)| Ok((perm(g, k)?, e)))
                .collect::<Result<BTreeMap<Perm, i64>, CliError>>()?;
            Character::from_generator_exponents(group.clone(), *conductor, &map)?
        }
        CharacterSpec::Table { conductor, values } => {
            let mut by_perm = BTreeMap::new();
            for (g, v) in values {
                by_perm.insert(perm(g, k)?, value(v, *conductor)?);
            }
            if by_perm.len() != group.order() {
                return Err(CliError::input(format!(
                    "table lists {} values, the group has {} elements",
                    by_perm.len(),
                    group.order()
                )));
            }
            let vals = group
                .elements()
                .iter()
                .map(|g| {
                    by_perm
                        .remove(g)
                        .ok_or_else(|| CliError::input(format!("table has no value for {g}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Character::from_table(group.clone(), *conductor, vals)?
        }
    };
    Ok(Instance { spec, group, chi })
}

pub fn multi_index(s: &str, n: usize) -> Result<MultiIndex, CliError> {
    let x: MultiIndex = s.parse().map_err(|e| CliError::input(format!("multi-index {s:?}: {e}")))?;
    MultiIndex::new(x.entries().iter().map(|&e| e as usize).collect(), n)
        .map_err(|e| CliError::input(format!("multi-index {s:?}: {e}")))
}
