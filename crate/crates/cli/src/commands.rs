use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde_json::{json, Value};

use dessinator::dessin::{enumerate_dessins, Dessin, EnumerationOptions};
use dessinator::ends::{ends_estimate, parse_group};
use dessinator::fpgroup::{
    abelianization, coset_enumeration, parse_presentation, reidemeister_schreier, DEFAULT_MAX_COSETS,
};
use dessinator::homology::{cover_tower_genus, CoverSpec};
use dessinator::modular::{
    a4_normalization_check, k_subgroup_words, k_subgroup_words_with_translation_a4n, mobius_eval,
    modular_orbifold_invariants, subgroup_abelianization, MobiusWord, ProjectiveRational,
};
use dessinator::superelliptic::{
    affine_equivalent, evaluate_truncated, genus_formula, monodromy_data, parse_points, riemann_hurwitz,
    sine_fixture, BranchData,
};
use dessinator::triangle::{
    aut_normalizer_crosscheck, dessin_to_table, is_normal_regular, is_torsion_free_uniform, table_to_dessin,
    triangle_presentation, TriangleType, DEFAULT_CROSSCHECK_CAP,
};

use crate::{Cli, Command, CoverArgs, DessinCmd, FpgroupCmd, ModularCmd, SuperellipticCmd, TriangleCmd, SCHEMA_VERSION};

/// Branch data is only materialized up to this many points.
const HURWITZ_POINT_LIMIT: i64 = 4096;

pub fn run(cli: &Cli) -> Result<Value> {
    let mut payload = match &cli.command {
        Command::Dessin(DessinCmd::Analyze { input }) => analyze(&read_dessin(input)?),
        Command::Dessin(DessinCmd::Enumerate { m, cap }) => {
            let options = EnumerationOptions {
                cap: *cap,
                seed: cli.seed,
                threads: cli.threads,
            };
            let ds = enumerate_dessins(*m, &options)?;
            let files: Vec<_> = ds.iter().map(dessinator::dessin::DessinFile::from).collect();
            json!({ "m": m, "count": ds.len(), "dessins": files })
        }
        Command::Dessin(DessinCmd::Cover(args)) | Command::HomologyCover(args) => cover(args)?,
        Command::Triangle(TriangleCmd::Check {
            triple,
            subgroup,
            input,
            max_cosets,
        }) => match (triple, input) {
            (Some(triple), _) => triangle_index(triple, subgroup, max_cosets_or_env(*max_cosets)?)?,
            (None, Some(path)) => {
                let d = read_dessin(path)?;
                json!({
                    "type": d.dessin_type(),
                    "torsion_free_uniform": is_torsion_free_uniform(&d),
                    "normal_regular": is_normal_regular(&d),
                })
            }
            (None, None) => unreachable!("clap requires one of --type and --in"),
        },
        Command::Triangle(TriangleCmd::Roundtrip { input }) => {
            let d = read_dessin(input)?;
            let table = dessin_to_table(&d);
            let back = table_to_dessin(&table)?;
            let crosscheck = if d.edge_count() <= DEFAULT_CROSSCHECK_CAP {
                let (aut, normalizer) = aut_normalizer_crosscheck(&d, DEFAULT_CROSSCHECK_CAP)?;
                json!({ "aut_plus_size": aut, "normalizer_quotient_size": normalizer })
            } else {
                Value::Null
            };
            json!({
                "table": table.to_file(),
                "dessin": dessinator::dessin::DessinFile::from(&back),
                "isomorphic": d.isomorphic(&back).is_some(),
                "crosscheck": crosscheck,
            })
        }
        Command::Modular(ModularCmd::Kn {
            n,
            literal_translation,
            max_cosets,
        }) => {
            let max = max_cosets_or_env(*max_cosets)?;
            let words = if *literal_translation {
                k_subgroup_words_with_translation_a4n(*n)
            } else {
                k_subgroup_words(*n)
            };
            let inv = modular_orbifold_invariants(&words, max)?;
            let ab = subgroup_abelianization(&words, max)?;
            let mut v = serde_json::to_value(inv)?;
            v["n"] = json!(n);
            v["generators"] = json!(words);
            v["abelianization"] = serde_json::to_value(ab)?;
            if !literal_translation && *n >= 1 {
                v["a4_normalizes"] = json!(a4_normalization_check(*n, max)?);
            }
            v
        }
        Command::Modular(ModularCmd::Eval { word, z }) => {
            let w = MobiusWord::parse(word)?;
            let mut images = Vec::new();
            for point in z {
                let p = ProjectiveRational::parse(point)?;
                images.push(json!({ "z": p, "image": mobius_eval(&w, &p) }));
            }
            let m = w.matrix();
            let matrix: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            json!({ "word": w, "matrix": matrix, "images": images })
        }
        Command::Ends { group, rmax, cap } => {
            let oracle = parse_group(group)?;
            serde_json::to_value(ends_estimate(oracle.as_ref(), *rmax, *cap))?
        }
        Command::Superelliptic(cmd) => superelliptic(cmd)?,
        Command::Fpgroup(FpgroupCmd::Enumerate {
            presentation,
            subgroup,
            max_cosets,
        }) => {
            let p = parse_presentation(presentation)?;
            let h = p.parse_words(subgroup)?;
            let t = coset_enumeration(&p, &h, max_cosets_or_env(*max_cosets)?)?;
            serde_json::to_value(t.to_file())?
        }
        Command::Fpgroup(FpgroupCmd::Abelianize {
            presentation,
            subgroup,
            max_cosets,
        }) => {
            let p = parse_presentation(presentation)?;
            match subgroup {
                None => serde_json::to_value(abelianization(&p))?,
                Some(s) => {
                    let h = p.parse_words(s)?;
                    let t = coset_enumeration(&p, &h, max_cosets_or_env(*max_cosets)?)?;
                    let sub = reidemeister_schreier(&p, &t)?;
                    let mut v = serde_json::to_value(abelianization(&sub.presentation))?;
                    v["index"] = json!(t.index());
                    v["schreier_generators"] = json!(sub.presentation.generator_count());
                    v
                }
            }
        }
    };
    payload["schema_version"] = json!(SCHEMA_VERSION);
    Ok(payload)
}

/// Flag, then `DESSINATOR_MAX_COSETS`, then the library default.
fn max_cosets_or_env(flag: Option<usize>) -> Result<usize> {
    if let Some(m) = flag {
        return Ok(m);
    }
    match std::env::var("DESSINATOR_MAX_COSETS") {
        Ok(text) => text
            .trim()
            .parse()
            .with_context(|| format!("DESSINATOR_MAX_COSETS is not a count: '{text}'")),
        Err(_) => Ok(DEFAULT_MAX_COSETS),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_dessin(path: &Path) -> Result<Dessin> {
    Ok(Dessin::from_json(&read_text(path)?)?)
}

/// Big integers as JSON numbers when they fit, strings otherwise.
fn big(n: impl ToString) -> Value {
    let s = n.to_string();
    s.parse::<u64>().map_or(Value::String(s), |v| json!(v))
}

fn analyze(d: &Dessin) -> Value {
    let (plus, full) = d.aut_sizes();
    let passport = d.passport();
    json!({
        "edges": d.edge_count(),
        "sigma": d.sigma().to_string(),
        "tau": d.tau().to_string(),
        "passport": passport.to_string(),
        "degrees": passport,
        "genus": d.genus(),
        "euler_characteristic": d.euler_characteristic(),
        "type": d.dessin_type(),
        "uniform": d.is_uniform(),
        "clean": d.is_clean(),
        "bounded": d.is_bounded(),
        "monodromy_order": big(d.monodromy_order()),
        "aut_plus_size": plus,
        "aut_full_size": full,
        "classification": d.classify(),
    })
}

fn cover(args: &CoverArgs) -> Result<Value> {
    let base = read_dessin(&args.input)?;
    if let Some(levels) = args.levels {
        let tower = cover_tower_genus(&base, args.modulus, levels, args.cap)?;
        let mut v = serde_json::to_value(tower)?;
        v["base_genus"] = json!(base.genus());
        v["modulus"] = json!(args.modulus);
        return Ok(v);
    }
    let spec = CoverSpec::new(&base, args.modulus)?;
    let c = spec.build(args.cap)?;
    if let Some(out) = &args.out {
        fs::write(out, c.to_json() + "\n").with_context(|| format!("cannot write {}", out.display()))?;
    }
    let passport = c.passport();
    Ok(json!({
        "modulus": args.modulus,
        "homology_rank": spec.homology_rank,
        "base": { "edges": base.edge_count(), "genus": base.genus() },
        "cover": {
            "edges": c.edge_count(),
            "genus": c.genus(),
            "euler_characteristic": c.euler_characteristic(),
            "passport": passport.to_string(),
            "type": c.dessin_type(),
            "uniform": c.is_uniform(),
            "regular": c.monodromy_order() == c.edge_count().into(),
        },
        // undefined over a torus, where both sides vanish
        "euler_ratio": (base.euler_characteristic() != 0)
            .then(|| c.euler_characteristic() / base.euler_characteristic()),
        "deck_generators": spec.deck_generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "out": args.out.as_ref().map(|p| p.display().to_string()),
    }))
}

fn triangle_index(triple: &str, subgroup: &str, max_cosets: usize) -> Result<Value> {
    let parts: Vec<u64> = triple
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("triangle type must be 'a,b,c', got '{triple}'"))?;
    let [a, b, c] = parts[..] else {
        bail!("triangle type must have three entries, got '{triple}'");
    };
    if a == 0 || b == 0 || c == 0 {
        bail!("triangle type entries must be positive");
    }
    let t = TriangleType::new(a, b, c);
    let p = triangle_presentation(&t);
    let h = p.parse_words(subgroup)?;
    let table = coset_enumeration(&p, &h, max_cosets)?;
    Ok(json!({
        "type": t,
        "presentation": p.to_string(),
        "subgroup": h.iter().map(|w| w.format(p.generator_names())).collect::<Vec<_>>(),
        "index": table.index(),
    }))
}

fn parse_complex(text: &str) -> Result<Complex64> {
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .with_context(|| format!("'{text}' is not a point 're' or 're,im'"))
    };
    match text.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(text)?, 0.0)),
    }
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn superelliptic(cmd: &SuperellipticCmd) -> Result<Value> {
    Ok(match cmd {
        SuperellipticCmd::Genus { n, d } => {
            let genus = genus_formula(*n, *d)?;
            let mut v = json!({ "n": n, "d": d, "genus": genus });
            if n.checked_mul(*d).is_some_and(|b| b <= HURWITZ_POINT_LIMIT) {
                let b = BranchData::integers(*n as u64, (*n * *d) as usize)?;
                v["riemann_hurwitz"] = json!(riemann_hurwitz(&b)?);
                v["monodromy"] = serde_json::to_value(monodromy_data(&b))?;
            }
            v
        }
        SuperellipticCmd::Eval { fixture, n, z } => {
            if fixture != "sine" {
                bail!("unknown fixture '{fixture}' (available: sine)");
            }
            let z = parse_complex(z)?;
            let value = evaluate_truncated(&sine_fixture(*n), z)?;
            let reference = (z * std::f64::consts::PI).sin();
            let relative_error = if reference.norm() == 0.0 {
                Value::Null
            } else {
                json!((value - reference).norm() / reference.norm())
            };
            json!({
                "fixture": fixture,
                "N": n,
                "z": pair(z),
                "value": pair(value),
                "reference": pair(reference),
                "relative_error": relative_error,
            })
        }
        SuperellipticCmd::Moduli { a, b, tol } => {
            if tol.is_nan() || *tol < 0.0 {
                bail!("tolerance must be non-negative");
            }
            let xs = parse_points(&read_text(a)?)?;
            let ys = parse_points(&read_text(b)?)?;
            let found = affine_equivalent(&xs, &ys, *tol)?;
            let mut v = json!({
                "sizes": [xs.len(), ys.len()],
                "tol": tol,
                "equivalent": found.is_some(),
                "map": found.map(|(a, b)| json!({ "a": pair(a), "b": pair(b) })),
            });
            if xs.len() != ys.len() {
                v["diagnostic"] = json!("zero sets have different sizes");
            }
            v
        }
    })
}
