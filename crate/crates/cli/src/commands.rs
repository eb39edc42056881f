use std::fmt::Write as _;
use std::path::Path;

use immvar_core::bposet::{polya_rank_generating, witt_count, BoundKind, LatticeReport};
use immvar_core::chimatroid::{random_factors, support_is_matroid, MatroidVerdict};
use immvar_core::complexes::shellable;
use immvar_core::exactalg::parse_rat;
use immvar_core::immanant::{generic_matrix, immanant, parametric_equations};
use immvar_core::strata::{chow_generators, hp_upper_bound, stratum_equations};
use immvar_core::suites::{run_suite, SuiteReport, SUITES};
use immvar_core::symtensor::{dim_formula, rank_of_image};
use immvar_core::{BPoset, Bounds, CycloNum, IntPoly, MatrixR, MultiIndex, Rat, Shelling, SimplicialComplex, SubsetB};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::instance::{load, multi_index, Instance};
use crate::{CliError, Command, Format};

pub struct Output {
    pub text: String,
    pub code: u8,
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> Result<Output, CliError> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::input(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => text(),
    };
    Ok(Output { text, code: 0 })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        CliError::input(format!("{}: line {}, field `{}`: {}", path.display(), e.inner().line(), e.path(), e.inner()))
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn rats(row: &[String]) -> Result<Vec<Rat>, CliError> {
    row.iter()
        .map(|s| parse_rat(s).map_err(|e| CliError::input(format!("entry {s:?}: {e}"))))
        .collect()
}

fn poly_text(p: &IntPoly) -> String {
    p.display_in("q")
}

fn joined(xs: &[MultiIndex]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn require_trivial(inst: &Instance, what: &str) -> Result<(), CliError> {
    if inst.chi.is_trivial() {
        Ok(())
    } else {
        Err(CliError::input(format!("{what} needs the trivial character")))
    }
}

pub fn run(cmd: Command, format: Format, parallel: bool) -> Result<Output, CliError> {
    match cmd {
        Command::Poset { spec, dot, json } => poset(&load(&spec, parallel)?, dot.as_deref(), json.as_deref(), format),
        Command::Polya { spec } => polya(&load(&spec, parallel)?, format),
        Command::Witt { k, n } => {
            let w = witt_count(k, n);
            emit(format, &serde_json::json!({ "k": k, "n": n, "count": w.to_string() }), || format!("{w}\n"))
        }
        Command::Dim { spec } => dim(&load(&spec, parallel)?, format),
        Command::Immanant { spec, matrix, x, y, rows, cols } => {
            immanant_cmd(&load(&spec, parallel)?, matrix.as_deref(), &x, &y, rows, cols, format)
        }
        Command::Equations { spec, stratum } => equations(&load(&spec, parallel)?, stratum.as_deref(), format),
        Command::MatroidCheck { spec, subset, factors, random, seed } => {
            matroid_check(&load(&spec, parallel)?, subset.as_deref(), factors.as_deref(), random, seed, format)
        }
        Command::Support { spec, factors } => support(&load(&spec, parallel)?, &factors, format),
        Command::Mobius { spec, x, y } => mobius(&load(&spec, parallel)?, &x, &y, format),
        Command::Shell { spec, interval, open, cap } => shell(&load(&spec, parallel)?, interval, open, cap, format),
        Command::Chow { spec } => chow(&load(&spec, parallel)?, format),
        Command::Verify { suite, seed } => verify(suite, seed, parallel, format),
    }
}

fn build_poset(inst: &Instance) -> Result<BPoset, CliError> {
    Ok(BPoset::build(&inst.chi, inst.n(), inst.bounds())?)
}

#[derive(Serialize)]
struct PosetSummary {
    k: usize,
    n: usize,
    group_order: usize,
    size: usize,
    covers: usize,
    graded: bool,
    rank_polynomial: Option<String>,
    rank_symmetric: Option<bool>,
    lattice: LatticeReport,
    distributive: bool,
    minimal: Vec<MultiIndex>,
    maximal: Vec<MultiIndex>,
}

fn poset(inst: &Instance, dot: Option<&Path>, json: Option<&Path>, format: Format) -> Result<Output, CliError> {
    let b = build_poset(inst)?;
    let lattice = b.lattice_report();
    let elems = |idx: Vec<usize>| idx.into_iter().map(|i| b.element(i).clone()).collect::<Vec<_>>();
    let summary = PosetSummary {
        k: inst.k(),
        n: inst.n(),
        group_order: inst.group.order(),
        size: b.len(),
        covers: b.cover_edges().len(),
        graded: b.is_graded(),
        rank_polynomial: b.rank_generating().ok().map(|p| poly_text(&p)),
        rank_symmetric: b.is_rank_symmetric().ok(),
        distributive: lattice.is_lattice && b.is_distributive(),
        lattice,
        minimal: elems(b.minimal_elements()),
        maximal: elems(b.maximal_elements()),
    };
    if let Some(path) = dot {
        write_file(path, &b.to_dot())?;
    }
    if let Some(path) = json {
        let mut s = serde_json::to_string_pretty(&b.to_export()).map_err(|e| CliError::input(e.to_string()))?;
        s.push('\n');
        write_file(path, &s)?;
    }
    emit(format, &summary, || {
        let s = &summary;
        let mut t = String::new();
        writeln!(t, "elements: {}", s.size).unwrap();
        writeln!(t, "cover relations: {}", s.covers).unwrap();
        writeln!(t, "graded: {}", s.graded).unwrap();
        if let Some(p) = &s.rank_polynomial {
            writeln!(t, "rank polynomial: {p}").unwrap();
            writeln!(t, "rank-symmetric: {}", s.rank_symmetric.unwrap_or(false)).unwrap();
        }
        writeln!(t, "lattice: {}", s.lattice.is_lattice).unwrap();
        if let Some(w) = &s.lattice.witness {
            let (side, extreme) = match w.kind {
                BoundKind::Join => ("upper", "minimal"),
                BoundKind::Meet => ("lower", "maximal"),
            };
            let (a, b) = (&w.pair.0, &w.pair.1);
            if w.bounds.is_empty() {
                writeln!(t, "witness: {a} and {b} have no common {side} bound").unwrap();
            } else {
                writeln!(t, "witness: {a} and {b} have {extreme} {side} bounds {}", joined(&w.bounds)).unwrap();
            }
        }
        writeln!(t, "distributive: {}", s.distributive).unwrap();
        writeln!(t, "minimal: {}", joined(&s.minimal)).unwrap();
        writeln!(t, "maximal: {}", joined(&s.maximal)).unwrap();
        t
    })
}

fn polya(inst: &Instance, format: Format) -> Result<Output, CliError> {
    let p = polya_rank_generating(&inst.group, inst.n());
    let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    emit(
        format,
        &serde_json::json!({ "polynomial": poly_text(&p), "coefficients": coeffs, "total": p.eval(&1.into()).to_string() }),
        || format!("{}\n", poly_text(&p)),
    )
}

fn dim(inst: &Instance, format: Format) -> Result<Output, CliError> {
    let f = dim_formula(&inst.chi, inst.n())?;
    let r = rank_of_image(&inst.chi, inst.n(), inst.bounds())?;
    let agree = f == r.into();
    emit(
        format,
        &serde_json::json!({ "formula": f.to_string(), "rank": r, "agree": agree }),
        || format!("formula: {f}\nrank: {r}\nagree: {agree}\n"),
    )
}

fn immanant_cmd(
    inst: &Instance,
    matrix: Option<&Path>,
    x: &str,
    y: &str,
    rows: Option<usize>,
    cols: Option<usize>,
    format: Format,
) -> Result<Output, CliError> {
    let value = match matrix {
        Some(path) => {
            let raw: Vec<Vec<String>> = read_json(path)?;
            let rows = raw.iter().map(|r| rats(r)).collect::<Result<Vec<_>, _>>()?;
            let m = MatrixR::from_rows(rows)?.map(|r| CycloNum::from_rat_in(1, r.clone()));
            let (x, y) = (multi_index(x, m.rows())?, multi_index(y, m.cols())?);
            immanant(&inst.chi, &x, &y, &m)?.to_string()
        }
        None => {
            let m = generic_matrix(rows.unwrap_or(inst.n()), cols.unwrap_or(inst.n()));
            let (x, y) = (multi_index(x, m.rows())?, multi_index(y, m.cols())?);
            immanant(&inst.chi, &x, &y, &m)?.to_string()
        }
    };
    emit(format, &serde_json::json!({ "x": x, "y": y, "value": value }), || format!("{value}\n"))
}

#[derive(Serialize)]
struct Equations {
    /// Factor multiplying every right-hand side; "1" for stratum equations.
    scale: String,
    stratum: Option<MultiIndex>,
    equations: Vec<(MultiIndex, String)>,
}

fn equations(inst: &Instance, stratum: Option<&str>, format: Format) -> Result<Output, CliError> {
    let (scale, top, eqs) = match stratum {
        Some(x) => {
            require_trivial(inst, "stratum equations")?;
            let x = multi_index(x, inst.n())?;
            let eqs = stratum_equations(&inst.group, inst.n(), &x, inst.bounds())?;
            ("1".to_string(), Some(x), eqs)
        }
        None => {
            let scale = Rat::new(inst.chi.degree().into(), inst.group.order().into());
            (scale.to_string(), None, parametric_equations(&inst.chi, inst.n(), inst.bounds())?)
        }
    };
    let out = Equations {
        scale,
        stratum: top,
        equations: eqs.into_iter().map(|(z, p)| (z, p.to_string())).collect(),
    };
    emit(format, &out, || {
        let mut t = String::new();
        if out.scale != "1" {
            writeln!(t, "# right-hand sides are to be multiplied by {}", out.scale).unwrap();
        }
        for (z, p) in &out.equations {
            writeln!(t, "x_{z} = {p}").unwrap();
        }
        t
    })
}

fn verdict_text(v: &MatroidVerdict) -> String {
    let mut t = format!("chi-matroid: {}\n", v.is_matroid);
    if let Some(s) = &v.witness {
        writeln!(t, "witness sigma: {s}").unwrap();
    }
    writeln!(t, "maxima: {}", joined(&v.maxima)).unwrap();
    t
}

#[derive(Serialize)]
struct RandomCheck {
    seed: u64,
    points: usize,
    vanished: usize,
    all_matroids: bool,
    failures: Vec<(Vec<Vec<String>>, MatroidVerdict)>,
}

fn matroid_check(
    inst: &Instance,
    subset: Option<&Path>,
    factors: Option<&Path>,
    random: Option<usize>,
    seed: Option<u64>,
    format: Format,
) -> Result<Output, CliError> {
    let b = build_poset(inst)?;
    if let Some(path) = subset {
        let raw: Vec<String> = read_json(path)?;
        let xs = raw.iter().map(|s| multi_index(s, inst.n())).collect::<Result<Vec<_>, _>>()?;
        let v = SubsetB::new(&b, xs)?.is_chi_matroid(inst.bounds())?;
        return emit(format, &v, || verdict_text(&v));
    }
    if let Some(path) = factors {
        let raw: Vec<Vec<String>> = read_json(path)?;
        let f = raw.iter().map(|r| rats(r)).collect::<Result<Vec<_>, _>>()?;
        let v = support_is_matroid(&b, &f, inst.bounds())?;
        return emit(format, &v, || format!("support: {}\n{}", joined(&v.support), verdict_text(&v.verdict)));
    }
    let points = random.ok_or_else(|| CliError::input("give one of --subset, --factors or --random"))?;
    let seed = seed.or(inst.spec.seed).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = RandomCheck {
        seed,
        points,
        vanished: 0,
        all_matroids: true,
        failures: vec![],
    };
    for _ in 0..points {
        let f = random_factors(&mut rng, inst.k(), inst.n());
        match support_is_matroid(&b, &f, inst.bounds()) {
            Err(immvar_core::Error::ProjectionVanishes) => out.vanished += 1,
            Err(e) => return Err(e.into()),
            Ok(v) if !v.verdict.is_matroid => {
                out.all_matroids = false;
                let shown = f.iter().map(|c| c.iter().map(|r| r.to_string()).collect()).collect();
                out.failures.push((shown, v.verdict));
            }
            Ok(_) => {}
        }
    }
    emit(format, &out, || {
        format!(
            "seed: {}\npoints: {}\nvanishing projections: {}\nall supports chi-matroids: {}\n",
            out.seed, out.points, out.vanished, out.all_matroids
        )
    })
}

fn support(inst: &Instance, factors: &Path, format: Format) -> Result<Output, CliError> {
    let b = build_poset(inst)?;
    let raw: Vec<Vec<String>> = read_json(factors)?;
    let f = raw.iter().map(|r| rats(r)).collect::<Result<Vec<_>, _>>()?;
    let v = support_is_matroid(&b, &f, inst.bounds())?;
    emit(format, &v.support, || format!("{}\n", joined(&v.support)))
}

fn mobius(inst: &Instance, x: &str, y: &str, format: Format) -> Result<Output, CliError> {
    let b = build_poset(inst)?;
    let (x, y) = (multi_index(x, inst.n())?, multi_index(y, inst.n())?);
    let mu = b.mobius(&x, &y)?;
    emit(format, &serde_json::json!({ "x": x, "y": y, "mobius": mu.to_string() }), || format!("{mu}\n"))
}

#[derive(Serialize)]
struct ShellReport {
    vertices: usize,
    facets: usize,
    dimension: isize,
    pure: bool,
    f_vector: Vec<String>,
    reduced_euler_characteristic: String,
    shelling: Shelling,
    /// The shelling order with vertices written as multi-indices.
    order: Option<Vec<Vec<MultiIndex>>>,
}

fn shell(inst: &Instance, interval: Option<Vec<String>>, open: bool, cap: Option<usize>, format: Format) -> Result<Output, CliError> {
    let b = build_poset(inst)?;
    let mut bounds: Bounds = inst.bounds().clone();
    if let Some(c) = cap {
        bounds.facet_cap = c;
    }
    let c = match interval {
        Some(iv) => {
            let (x, y) = (multi_index(&iv[0], inst.n())?, multi_index(&iv[1], inst.n())?);
            SimplicialComplex::interval_complex(&b, b.require(&x)?, b.require(&y)?, open, &bounds)?
        }
        None => SimplicialComplex::of_poset(&b, &bounds)?,
    };
    let s = shellable(&c, &bounds);
    let order = match &s {
        Shelling::Yes { order } => Some(
            order
                .iter()
                .map(|f| f.iter().map(|&v| b.element(v).clone()).collect())
                .collect(),
        ),
        _ => None,
    };
    let report = ShellReport {
        vertices: c.vertices().len(),
        facets: c.facets().len(),
        dimension: c.dimension(),
        pure: c.is_pure(),
        f_vector: c.f_vector().iter().map(|f| f.to_string()).collect(),
        reduced_euler_characteristic: c.reduced_euler_characteristic().to_string(),
        shelling: s,
        order,
    };
    emit(format, &report, || {
        let r = &report;
        let verdict = match &r.shelling {
            Shelling::Yes { .. } => "yes".to_string(),
            Shelling::No => "no".to_string(),
            Shelling::Unknown { facets, facet_cap, steps } => {
                format!("unknown ({facets} facets above cap {facet_cap}, {steps} steps searched)")
            }
        };
        format!(
            "vertices: {}\nfacets: {}\ndimension: {}\npure: {}\nf-vector: ({})\nreduced Euler characteristic: {}\nshellable: {verdict}\n",
            r.vertices,
            r.facets,
            r.dimension,
            r.pure,
            r.f_vector.join(", "),
            r.reduced_euler_characteristic
        )
    })
}

#[derive(Serialize)]
struct ChowReport {
    label: &'static str,
    generators: Vec<(MultiIndex, u32)>,
    hp_upper_bound: String,
}

fn chow(inst: &Instance, format: Format) -> Result<Output, CliError> {
    require_trivial(inst, "chow")?;
    let report = ChowReport {
        label: "generators, possibly redundant",
        generators: chow_generators(&inst.group, inst.n(), inst.bounds())?,
        hp_upper_bound: poly_text(&hp_upper_bound(&inst.group, inst.n())),
    };
    emit(format, &report, || {
        let mut t = format!("# {}\n", report.label);
        for (x, d) in &report.generators {
            writeln!(t, "{x} dim {d}").unwrap();
        }
        writeln!(t, "HP bound: {}", report.hp_upper_bound).unwrap();
        t
    })
}

fn verify(suite: Option<String>, seed: u64, parallel: bool, format: Format) -> Result<Output, CliError> {
    let bounds = Bounds {
        parallel,
        ..Bounds::default()
    };
    let names: Vec<String> = match suite {
        Some(s) => vec![s],
        None => SUITES.iter().map(|s| s.to_string()).collect(),
    };
    let reports = names
        .iter()
        .map(|n| run_suite(n, seed, &bounds))
        .collect::<Result<Vec<SuiteReport>, _>>()?;
    let ok = reports.iter().all(|r| r.passed());
    let mut out = emit(format, &reports, || {
        let mut t = String::new();
        for r in &reports {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            writeln!(t, "suite {}: {status} ({} checks, {} failures, seed {})", r.name, r.checks, r.failures.len(), r.seed).unwrap();
            for f in r.failures.iter().take(5) {
                writeln!(t, "  {f}").unwrap();
            }
        }
        t
    })?;
    if !ok {
        out.code = 1;
    }
    Ok(out)
}
