//! Named invariant suites, each comparing two independent computations over
//! a fixed catalog of instances. The CLI's `verify` command runs these.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::bposet::{polya_rank_generating, BPoset};
use crate::character::Character;
use crate::chimatroid::{random_factors, support_is_matroid, SubsetB};
use crate::complexes::{shellable, Shelling, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactalg::{CycloNum, Rat};
use crate::immanant::{check_immanant_identity, MatrixR};
use crate::permgrp::{MultiIndex, Perm, PermGroup};
use crate::strata::{stratum_equations, truncate};
use crate::symtensor::{apply_idempotent, coords_in_basis, dim_formula, rank_of_image, SymTensor};

pub const SUITES: [&str; 7] = [
    "dimension",
    "identity",
    "polya",
    "matroid",
    "maximality",
    "strata",
    "topology",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str, seed: u64) -> Self {
        SuiteReport {
            name: name.to_string(),
            seed,
            checks: 0,
            failures: vec![],
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(name: &str, seed: u64, bounds: &Bounds) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(name, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match name {
        "dimension" => dimension(&mut r, bounds)?,
        "identity" => identity(&mut r, &mut rng)?,
        "polya" => polya(&mut r, bounds)?,
        "matroid" => matroid(&mut r, bounds)?,
        "maximality" => maximality(&mut r, &mut rng, 100, bounds)?,
        "strata" => strata(&mut r, &mut rng, bounds)?,
        "topology" => topology(&mut r, bounds)?,
        _ => return Err(Error::Parse(format!("unknown suite {name:?}; known: {}", SUITES.join(", ")))),
    }
    Ok(r)
}

/// Character of `S_k` given by a function of the cycle type, listed in
/// decreasing order.
pub fn symmetric_class_character(k: usize, f: impl Fn(&[usize]) -> i64) -> Result<Character> {
    let g = Arc::new(PermGroup::symmetric(k));
    let vals = g
        .elements()
        .iter()
        .map(|p| {
            let mut ct = p.cycle_lengths();
            ct.sort_unstable_by(|a, b| b.cmp(a));
            CycloNum::from_int_in(1, f(&ct))
        })
        .collect();
    Character::from_table(g, 1, vals)
}

/// A class function of `S_k` given on cycle types.
type ClassFn = fn(&[usize]) -> i64;

/// Non-linear irreducible characters of `S_3` and `S_4`.
pub fn symmetric_table_characters() -> Vec<Character> {
    let tables: [(usize, ClassFn); 4] = [
        (3, |ct| match ct {
            [1, 1, 1] => 2,
            [2, 1] => 0,
            _ => -1,
        }),
        (4, |ct| match ct {
            [1, 1, 1, 1] => 3,
            [2, 1, 1] => 1,
            [2, 2] => -1,
            [3, 1] => 0,
            _ => -1,
        }),
        (4, |ct| match ct {
            [1, 1, 1, 1] => 2,
            [2, 1, 1] => 0,
            [2, 2] => 2,
            [3, 1] => -1,
            _ => 0,
        }),
        (4, |ct| match ct {
            [1, 1, 1, 1] => 3,
            [2, 1, 1] => -1,
            [2, 2] => -1,
            [3, 1] => 0,
            _ => 1,
        }),
    ];
    tables
        .into_iter()
        .map(|(k, f)| symmetric_class_character(k, f).expect("character tables are class functions"))
        .collect()
}

/// Groups of degree `k` with at most 24 elements used by the sweeps.
pub fn catalog_groups(k: usize) -> Vec<PermGroup> {
    let mut out = vec![PermGroup::trivial(k)];
    if k >= 2 {
        out.push(PermGroup::cyclic(k));
    }
    if (3..=4).contains(&k) {
        out.push(PermGroup::symmetric(k));
        out.push(PermGroup::alternating(k));
    }
    for parts in young_shapes(k) {
        out.push(PermGroup::young_subgroup(k, &parts).expect("parts sum to k"));
    }
    out
}

fn young_shapes(k: usize) -> Vec<Vec<usize>> {
    match k {
        3 => vec![vec![2, 1]],
        4 => vec![vec![2, 2], vec![2, 1, 1], vec![3, 1]],
        5 => vec![vec![2, 3], vec![2, 2, 1], vec![4, 1]],
        _ => vec![],
    }
}

/// Trivial, sign, faithful cyclic and tabulated characters for `k <= 5`.
pub fn sweep_characters() -> Vec<Character> {
    let mut out = symmetric_table_characters();
    for k in 2..=5 {
        for g in catalog_groups(k) {
            let g = Arc::new(g);
            out.push(Character::trivial(g.clone()));
            if g.elements().iter().any(|p| p.sign() < 0) {
                out.push(Character::sign(g));
            }
        }
        let ck = Arc::new(PermGroup::cyclic(k));
        let gen: Perm = crate::permgrp::rotation(k);
        out.push(
            Character::from_generator_exponents(ck, k as u32, &[(gen, 1)].into())
                .expect("a rotation generates the cyclic group"),
        );
    }
    out
}

fn dimension(r: &mut SuiteReport, bounds: &Bounds) -> Result<()> {
    for chi in sweep_characters() {
        for n in 1..=3 {
            let f = dim_formula(&chi, n)?;
            let rank = rank_of_image(&chi, n, bounds)?;
            r.check(f == rank.into(), || format!("{chi:?} n={n}: formula {f}, rank {rank}"));
        }
    }
    Ok(())
}

fn random_rat(rng: &mut impl Rng) -> Rat {
    Rat::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into())
}

fn random_index(rng: &mut impl Rng, n: usize, k: usize) -> MultiIndex {
    MultiIndex::new((0..k).map(|_| rng.gen_range(1..=n)).collect(), n).expect("entries in range")
}

fn identity(r: &mut SuiteReport, rng: &mut impl Rng) -> Result<()> {
    for chi in sweep_characters().into_iter().filter(|c| c.group().degree() <= 4) {
        let k = chi.group().degree();
        for (m, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            for _ in 0..100 {
                let mat = MatrixR::from_fn(m, n, |_, _| random_rat(rng));
                let x = random_index(rng, m, k);
                let y = random_index(rng, n, k);
                let ok = check_immanant_identity(&chi, &mat, &x, &y)?;
                r.check(ok, || format!("{chi:?} x={x} y={y} m={m} n={n}"));
            }
        }
    }
    Ok(())
}

/// Groups of the Pólya sweep: trivial, cyclic and symmetric groups of
/// degree `k <= 6`, `A_3`, and Young subgroups of `S_4`.
pub fn polya_groups() -> Vec<PermGroup> {
    let mut out = vec![PermGroup::alternating(3)];
    for k in 1..=6 {
        out.push(PermGroup::trivial(k));
        if k >= 2 {
            out.push(PermGroup::cyclic(k));
            out.push(PermGroup::symmetric(k));
        }
    }
    for parts in young_shapes(4) {
        out.push(PermGroup::young_subgroup(4, &parts).expect("parts sum to 4"));
    }
    out
}

fn polya(r: &mut SuiteReport, bounds: &Bounds) -> Result<()> {
    for g in polya_groups() {
        let k = g.degree();
        let g = Arc::new(g);
        for n in 1..=3 {
            let b = BPoset::build(&Character::trivial(g.clone()), n, bounds)?;
            let counted = b.rank_generating()?;
            let formula = polya_rank_generating(&g, n);
            r.check(counted == formula, || format!("k={k} |G|={} n={n}: {counted} vs {formula}", g.order()));
            r.check(formula.degree() == Some(k * (n - 1)), || {
                format!("k={k} |G|={} n={n}: degree {:?}", g.order(), formula.degree())
            });
        }
    }
    Ok(())
}

fn matroid(r: &mut SuiteReport, bounds: &Bounds) -> Result<()> {
    for k in 1..=4 {
        for n in 1..=4 {
            let b = BPoset::build(&Character::trivial(Arc::new(PermGroup::symmetric(k))), n, bounds)?;
            for i in 0..b.len() {
                for j in b.up_set(i).ones() {
                    let iv = SubsetB::from_indices(&b, b.interval_idx(i, j));
                    let v = iv.is_chi_matroid(bounds)?;
                    r.check(v.is_matroid, || {
                        format!("S_{k}, n={n}: [{}, {}] fails at {:?}", b.element(i), b.element(j), v.witness)
                    });
                }
            }
        }
    }
    Ok(())
}

/// Trivial-character instances with `k <= 5`, `n <= 3`.
pub fn maximality_instances() -> Vec<(PermGroup, usize)> {
    let mut out = vec![];
    for k in 1..=5 {
        let mut groups = catalog_groups(k);
        if k == 5 {
            groups.push(PermGroup::symmetric(5));
        }
        for g in groups {
            for n in 2..=3 {
                out.push((g.clone(), n));
            }
        }
    }
    out
}

/// Draws `per_instance` decomposable points for every instance and checks
/// that each projected support is a χ-matroid.
pub fn maximality(r: &mut SuiteReport, rng: &mut impl Rng, per_instance: usize, bounds: &Bounds) -> Result<()> {
    for (g, n) in maximality_instances() {
        let k = g.degree();
        let order = g.order();
        let b = BPoset::build(&Character::trivial(Arc::new(g)), n, bounds)?;
        let mut drawn = 0;
        while drawn < per_instance {
            let f = random_factors(rng, k, n);
            let v = match support_is_matroid(&b, &f, bounds) {
                Err(Error::ProjectionVanishes) => continue,
                other => other?,
            };
            drawn += 1;
            r.check(v.verdict.is_matroid && v.verdict.maxima.len() == 1, || {
                format!("k={k} |G|={order} n={n}: support {:?} fails at {:?}", v.support, v.verdict.witness)
            });
        }
    }
    Ok(())
}

/// Compares evaluated stratum equations with the coordinates of the
/// projected truncated point, `per_stratum` times for every `x`.
pub fn strata_coherence(
    r: &mut SuiteReport,
    rng: &mut impl Rng,
    g: PermGroup,
    n: usize,
    per_stratum: usize,
    bounds: &Bounds,
) -> Result<()> {
    let k = g.degree();
    let g = Arc::new(g);
    let chi = Character::trivial(g.clone());
    let b = BPoset::build(&chi, n, bounds)?;
    for x in b.elements() {
        let eqs = stratum_equations(&g, n, x, bounds)?;
        for _ in 0..per_stratum {
            let a0 = MatrixR::from_fn(n, k, |_, _| loop {
                let q = random_rat(rng);
                if q != Rat::from_integer(0.into()) {
                    break q;
                }
            });
            let t = truncate(&a0, x)?;
            let cols: Vec<Vec<Rat>> = (1..=k).map(|j| t.column(j)).collect();
            let w = apply_idempotent(&chi, &SymTensor::decomposable(n, &cols)?)?;
            let coords = coords_in_basis(&chi, &w)?;
            let point: Vec<CycloNum> = (1..=n)
                .flat_map(|i| (1..=k).map(move |j| (i, j)))
                .map(|(i, j)| CycloNum::from_rat_in(1, a0.get(i, j).clone()))
                .collect();
            let zero = CycloNum::from_int_in(1, 0);
            let ok = eqs.iter().all(|(y, p)| p.eval(&point) == *coords.get(y).unwrap_or(&zero));
            r.check(ok, || format!("k={k} |G|={} n={n} x={x}", g.order()));
        }
    }
    Ok(())
}

fn strata(r: &mut SuiteReport, rng: &mut impl Rng, bounds: &Bounds) -> Result<()> {
    strata_coherence(r, rng, PermGroup::symmetric(2), 3, 50, bounds)?;
    for g in [PermGroup::cyclic(3), PermGroup::symmetric(3), PermGroup::young_subgroup(4, &[2, 2])?] {
        strata_coherence(r, rng, g, 2, 10, bounds)?;
    }
    strata_coherence(r, rng, PermGroup::alternating(3), 3, 10, bounds)
}

/// Reduced Euler characteristic of every open interval against `μ`.
pub fn philip_hall(r: &mut SuiteReport, b: &BPoset, bounds: &Bounds) -> Result<()> {
    for i in 0..b.len() {
        for j in b.up_set(i).ones().filter(|&j| j != i) {
            let c = SimplicialComplex::interval_complex(b, i, j, true, bounds)?;
            let chi = c.reduced_euler_characteristic();
            let mu = b.mobius_idx(i, j)?;
            r.check(chi == mu, || format!("({}, {}): χ̃ {chi}, μ {mu}", b.element(i), b.element(j)));
        }
    }
    Ok(())
}

/// Every closed interval of `b` is shellable.
pub fn intervals_shellable(r: &mut SuiteReport, b: &BPoset, bounds: &Bounds) -> Result<()> {
    for i in 0..b.len() {
        for j in b.up_set(i).ones() {
            let c = SimplicialComplex::interval_complex(b, i, j, false, bounds)?;
            let s = shellable(&c, bounds);
            r.check(matches!(s, Shelling::Yes { .. }), || {
                format!("[{}, {}]: {s:?}", b.element(i), b.element(j))
            });
        }
    }
    Ok(())
}

fn topology(r: &mut SuiteReport, bounds: &Bounds) -> Result<()> {
    let triv = |g: PermGroup, n| BPoset::build(&Character::trivial(Arc::new(g)), n, bounds);
    philip_hall(r, &triv(PermGroup::symmetric(2), 3)?, bounds)?;
    philip_hall(r, &triv(PermGroup::alternating(3), 3)?, bounds)?;
    philip_hall(r, &triv(PermGroup::cyclic(4), 3)?, bounds)?;
    intervals_shellable(r, &triv(PermGroup::symmetric(3), 3)?, bounds)
}
