use clap::{Parser, Subcommand};
use kloc_cli::report::{self, OutputMode};
use kloc_cli::suite::{self, SuiteConfig};
use kloc_core::error::Result;
use num_bigint::BigInt;
use serde_json::json;
use std::process::ExitCode;

use kloc_core::{
    assemble_loc_coloc_les, bifunctor, coefficient_les, coefficient_object, cone, cone_les_check,
    dq_examples, eta_les_check, ext_bifunctor, finite_coefficients, fixture, homology,
    kko_cq_cq_bound, kko_cq_r, localize_group, localize_theory, octahedron_check, parse_complex,
    parse_ext_module, parse_graded, parse_prime_set, point_rc, s_equivalence_test, s_finite_test,
    splitting_check, theta_composite_check, theta_map, torsion_theory, BifunctorKind, ChainMap,
    Error, ExtModule, FgAbGroup, FreeComplex, GroupHom, IntMatrix, PrimeSet, RCPair,
    SplitCoefficient,
};

/// Exact localisation and colocalisation of homology theories with
/// finitely generated values.
#[derive(Parser)]
#[command(name = "kloc", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    output: String,
    /// Seed for the randomised suites
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// Trials per randomised suite
    #[arg(long, global = true, default_value_t = 500)]
    trials: u32,
    /// Cap on enumerated extension middles
    #[arg(long, global = true, default_value_t = 4096)]
    max_order: u64,
    /// Run property trials on all cores
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Normalise module literals and evaluate the four bifunctors
    Group {
        #[command(subcommand)]
        op: GroupOp,
    },
    /// Invert the primes of S in a group
    Localize {
        /// Group literal, e.g. "Z + Z/12"
        #[arg(long)]
        group: String,
        /// Prime set literal, e.g. "{2,3}", "odd", "all"
        #[arg(long = "S")]
        s: String,
    },
    /// Change coefficients of a graded theory
    Coeff {
        /// Graded group literal, e.g. "period=2: [Z, 0]"
        #[arg(long)]
        theory: String,
        /// Finite modulus (kind "finite")
        #[arg(long, required_if_eq("kind", "finite"))]
        q: Option<u64>,
        #[arg(long, default_value = "finite", value_parser = ["finite", "torsion", "localised"])]
        kind: String,
        /// Prime set (kinds "torsion" and "localised")
        #[arg(long = "S", required_if_eq_any([("kind", "torsion"), ("kind", "localised")]))]
        s: Option<String>,
    },
    /// Assemble and verify long exact sequences
    Les {
        #[command(subcommand)]
        which: LesOp,
    },
    /// Integral toy model: cones, S-finiteness, scaled inverses
    Toy {
        #[command(subcommand)]
        which: ToyOp,
    },
    /// Pairing computations for the named objects
    Kk {
        #[command(subcommand)]
        which: KkOp,
    },
    /// Real and complex theories in tandem
    Rc {
        #[command(subcommand)]
        which: RcOp,
    },
    /// Run every reproduction check and print the table
    PaperCheck,
}

#[derive(Subcommand)]
enum GroupOp {
    /// Print the canonical form of a module literal
    Normalize { expr: String },
    Hom { lhs: String, rhs: String },
    Ext { lhs: String, rhs: String },
    Tensor { lhs: String, rhs: String },
    Tor { lhs: String, rhs: String },
}

#[derive(Subcommand)]
enum LesOp {
    /// Theory, localisation and torsion theory
    LocColoc {
        #[arg(long)]
        theory: String,
        #[arg(long = "S")]
        s: String,
    },
    /// Mod s, mod st and mod t coefficients
    Coefficient {
        #[arg(long)]
        theory: String,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
    },
    /// Composite multiplications s, st, t on a complex
    Octahedron {
        /// Complex literal (JSON), e.g. {"lo":0,"hi":1,"ranks":[1,1],"differentials":[[[2]]]}
        #[arg(long)]
        complex: String,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
    },
    /// Cone of a scaled identity
    Cone {
        #[arg(long)]
        complex: String,
        /// Scale the identity by this integer
        #[arg(long, default_value_t = 1)]
        scale: i64,
    },
}

#[derive(Subcommand)]
enum ToyOp {
    /// Cone of the scaled identity with its homology and triangle
    Cone {
        #[arg(long)]
        complex: String,
        #[arg(long, default_value_t = 1)]
        scale: i64,
    },
    /// Least S-number annihilating the identity, if any
    Sfinite {
        #[arg(long)]
        complex: String,
        #[arg(long = "S")]
        s: String,
    },
    /// Cone test against the scaled-inverse search
    Sequiv {
        #[arg(long)]
        complex: String,
        #[arg(long, default_value_t = 1)]
        scale: i64,
        #[arg(long = "S")]
        s: String,
    },
    /// Comparison map between multiplication cones for q | p
    Theta {
        /// Base complex (default: one copy of Z in degree 0)
        #[arg(long)]
        complex: Option<String>,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        /// Also check transitivity through this intermediate modulus
        #[arg(long)]
        via: Option<u64>,
    },
}

#[derive(Subcommand)]
enum KkOp {
    /// Degreewise pairing table between two named objects
    Uct {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Cone of multiplication by q on the point
    Cq {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "complex", value_parser = ["complex", "real"])]
        flavor: String,
    },
    /// The divisible examples DQ and DQZ
    Dq,
}

#[derive(Subcommand)]
enum RcOp {
    /// The 24-node comparison cycle
    Les {
        /// Path to a pair description (JSON); default: the point
        #[arg(long)]
        pair: Option<String>,
    },
    /// Two-degree splitting after a coefficient change
    Split {
        /// Coefficient module: Z[1/S] with 2 in S, Z/s with s odd, or odd torsion
        #[arg(long = "H")]
        h: String,
        #[arg(long)]
        pair: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = match cli.output.as_str() {
        "json" => OutputMode::Json,
        _ => OutputMode::Text,
    };
    match dispatch(&cli, mode) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn config(cli: &Cli) -> SuiteConfig {
    SuiteConfig {
        seed: cli.seed,
        trials: cli.trials,
        max_order: cli.max_order,
        parallel: cli.parallel,
    }
}

/// Ok(false) means the command ran but its verification failed (exit 1).
fn dispatch(cli: &Cli, mode: OutputMode) -> Result<bool> {
    match &cli.command {
        Command::Group { op } => run_group(op, mode),
        Command::Localize { group, s } => {
            let g = kloc_core::parse_group(group)?;
            let s = parse_prime_set(s)?;
            let m = localize_group(&g, &s);
            report::emit(mode, vec![m.to_string()], json!({"value": m.to_string()}));
            Ok(true)
        }
        Command::Coeff { theory, q, kind, s } => run_coeff(cli, theory, *q, kind, s.as_deref(), mode),
        Command::Les { which } => run_les(which, mode),
        Command::Toy { which } => run_toy(which, mode),
        Command::Kk { which } => run_kk(cli, which, mode),
        Command::Rc { which } => run_rc(which, mode),
        Command::PaperCheck => {
            let cfg = config(cli);
            let results = suite::run_all(&cfg);
            report::emit(
                mode,
                report::checks_text(&cfg, &results),
                report::checks_json(&cfg, &results),
            );
            Ok(suite::all_passed(&results))
        }
    }
}

fn run_group(op: &GroupOp, mode: OutputMode) -> Result<bool> {
    let (kind, lhs, rhs) = match op {
        GroupOp::Normalize { expr } => {
            let m = parse_ext_module(expr)?;
            report::emit(mode, vec![m.to_string()], json!({"value": m.to_string()}));
            return Ok(true);
        }
        GroupOp::Hom { lhs, rhs } => (BifunctorKind::Hom, lhs, rhs),
        GroupOp::Ext { lhs, rhs } => (BifunctorKind::Ext, lhs, rhs),
        GroupOp::Tensor { lhs, rhs } => (BifunctorKind::Tensor, lhs, rhs),
        GroupOp::Tor { lhs, rhs } => (BifunctorKind::Tor, lhs, rhs),
    };
    let a = parse_ext_module(lhs)?;
    let b = parse_ext_module(rhs)?;
    let value = match (a.as_fg(), b.as_fg()) {
        (Some(x), Some(y)) => ExtModule::from_fg(&bifunctor(kind, &x, &y)),
        _ => ext_bifunctor(kind, &a, &b)?,
    };
    report::emit(
        mode,
        vec![value.to_string()],
        json!({"value": value.to_string()}),
    );
    Ok(true)
}

fn run_coeff(
    cli: &Cli,
    theory: &str,
    q: Option<u64>,
    kind: &str,
    s: Option<&str>,
    mode: OutputMode,
) -> Result<bool> {
    let f = parse_graded(theory)?;
    match kind {
        "finite" => {
            let q = q.expect("clap enforces --q for finite coefficients");
            let problems = finite_coefficients(&f, q, cli.max_order)?;
            report::emit(
                mode,
                report::problems_text(&problems),
                report::problems_json(&problems),
            );
        }
        other => {
            let s = parse_prime_set(s.expect("clap enforces --S here"))?;
            let g = if other == "torsion" {
                torsion_theory(&f, &s)?
            } else {
                localize_theory(&f, &s)?
            };
            report::emit(
                mode,
                report::graded_degrees_text(&g),
                report::graded_degrees_json(&g),
            );
        }
    }
    Ok(true)
}

fn scaled_identity(complex: &str, scale: i64) -> Result<ChainMap> {
    let c = parse_complex(complex)?;
    Ok(ChainMap::scaling(&c, scale))
}

fn run_les(which: &LesOp, mode: OutputMode) -> Result<bool> {
    let r = match which {
        LesOp::LocColoc { theory, s } => {
            let f = parse_graded(theory)?;
            let s = parse_prime_set(s)?;
            assemble_loc_coloc_les(&f, &s)?
        }
        LesOp::Coefficient { theory, s, t } => {
            let f = parse_graded(theory)?;
            coefficient_les(&f, *s, *t)?
        }
        LesOp::Octahedron { complex, s, t } => {
            let c = parse_complex(complex)?;
            octahedron_check(&c, *s, *t)?
        }
        LesOp::Cone { complex, scale } => cone_les_check(&scaled_identity(complex, *scale)?),
    };
    report::emit(mode, report::les_text(&r), report::les_json(&r));
    Ok(r.all_exact())
}

fn run_toy(which: &ToyOp, mode: OutputMode) -> Result<bool> {
    match which {
        ToyOp::Cone { complex, scale } => {
            let f = scaled_identity(complex, *scale)?;
            let triangle = cone(&f);
            let h = homology(&triangle.cone);
            let les = cone_les_check(&f);
            let mut text = vec![format!("cone: {}", kloc_core::print_complex(&triangle.cone))];
            text.push(format!("homology: {h}"));
            text.extend(report::les_text(&les));
            report::emit(
                mode,
                text,
                json!({
                    "cone": kloc_core::print_complex(&triangle.cone),
                    "homology": h.to_string(),
                    "les": report::les_json(&les),
                }),
            );
            Ok(les.all_exact())
        }
        ToyOp::Sfinite { complex, s } => {
            let c = parse_complex(complex)?;
            let s = parse_prime_set(s)?;
            let r = s_finite_test(&c, &s);
            report::emit(mode, report::sfinite_text(&r), report::sfinite_json(&r));
            Ok(true)
        }
        ToyOp::Sequiv { complex, scale, s } => {
            let f = scaled_identity(complex, *scale)?;
            let s = parse_prime_set(s)?;
            let r = s_equivalence_test(&f, &s);
            report::emit(mode, report::sequiv_text(&r), report::sequiv_json(&r));
            Ok(r.agree)
        }
        ToyOp::Theta { complex, q, p, via } => {
            let c = match complex {
                Some(text) => parse_complex(text)?,
                None => FreeComplex::concentrated(0, 1),
            };
            let th = theta_map(&c, *q, *p)?;
            let mut text = report::chain_map_text(&th);
            let mut value = report::chain_map_json(&th);
            let mut ok = true;
            if let Some(r) = via {
                let agrees = theta_composite_check(&c, *q, *r, *p)?;
                ok = agrees;
                text.push(format!(
                    "composite through {r} agrees up to homotopy: {}",
                    if agrees { "yes" } else { "no" }
                ));
                value
                    .as_object_mut()
                    .expect("chain map report is an object")
                    .insert("composite_agrees".into(), json!(agrees));
            }
            report::emit(mode, text, value);
            Ok(ok)
        }
    }
}

fn run_kk(cli: &Cli, which: &KkOp, mode: OutputMode) -> Result<bool> {
    match which {
        KkOp::Uct { source, target } => {
            let a = fixture(source)?;
            let b = fixture(target)?;
            let r = kloc_core::uct_kk(&a, &b, cli.max_order)?;
            report::emit(mode, report::uct_text(&r), report::uct_json(&r));
            Ok(true)
        }
        KkOp::Cq { q, flavor } => {
            if flavor == "real" {
                let seq = kko_cq_r(*q)?;
                let bound = kko_cq_cq_bound(*q, cli.max_order)?;
                let mut text = report::cq_real_text(&seq);
                text.extend(report::cq_bound_text(&bound));
                report::emit(
                    mode,
                    text,
                    json!({
                        "sequence": report::cq_real_json(&seq),
                        "self_pairing_bound": report::cq_bound_json(&bound),
                    }),
                );
                Ok(seq.les.all_exact() && bound.exponent_bound_holds)
            } else {
                let cq = fixture(&format!("Cq({q})"))?;
                let co = coefficient_object(&kloc_core::point_complex(), *q, cli.max_order)?;
                let fixture_k = cq.k_groups();
                let agree = co
                    .object
                    .as_ref()
                    .is_some_and(|o| o.k_groups() == fixture_k);
                let mut text = vec![format!(
                    "fixture Cq({q}): {}",
                    report::graded_degrees_text(fixture_k).join("")
                )];
                text.extend(report::coefficient_object_text(&co));
                text.push(format!("routes agree: {}", if agree { "yes" } else { "no" }));
                report::emit(
                    mode,
                    text,
                    json!({
                        "fixture": report::graded_degrees_json(fixture_k),
                        "coefficient_route": report::coefficient_object_json(&co),
                        "agree": agree,
                    }),
                );
                Ok(agree)
            }
        }
        KkOp::Dq => {
            let r = dq_examples(cli.max_order)?;
            report::emit(mode, report::divisible_text(&r), report::divisible_json(&r));
            Ok(true)
        }
    }
}

fn run_rc(which: &RcOp, mode: OutputMode) -> Result<bool> {
    match which {
        RcOp::Les { pair } => {
            let p = load_pair(pair.as_deref())?;
            let r = eta_les_check(&p);
            report::emit(mode, report::les_text(&r), report::les_json(&r));
            Ok(r.all_exact())
        }
        RcOp::Split { h, pair } => {
            let p = load_pair(pair.as_deref())?;
            let m = parse_ext_module(h)?;
            let coefficient = classify_coefficient(&m)?;
            let r = splitting_check(&p, &coefficient)?;
            report::emit(mode, report::splitting_text(&r), report::splitting_json(&r));
            Ok(r.all_iso)
        }
    }
}

fn classify_coefficient(m: &ExtModule) -> Result<SplitCoefficient> {
    let has_torsion = !m.torsion().is_trivial();
    let has_pruefer = !m.pruefer_parts().is_empty();
    match (m.free_rank(), has_torsion, has_pruefer) {
        (1, false, false) => Ok(SplitCoefficient::Localisation(m.base().clone())),
        (0, true, false) => {
            let factors = m.torsion().invariant_factors();
            let [s] = factors else {
                return Err(Error::InvalidArgument(format!(
                    "finite coefficients must be cyclic, got {m}"
                )));
            };
            let s = u64::try_from(s).map_err(|_| {
                Error::InvalidArgument(format!("modulus {s} does not fit in a machine word"))
            })?;
            Ok(SplitCoefficient::FiniteModulus(s))
        }
        (0, false, true) => {
            let mut set: Option<PrimeSet> = None;
            for (part, mult) in m.pruefer_parts() {
                if *mult != 1 {
                    return Err(Error::InvalidArgument(format!(
                        "torsion coefficients must be S-torsion of the rationals, got {m}"
                    )));
                }
                set = Some(match set {
                    None => part.clone(),
                    Some(acc) => acc.union(part),
                });
            }
            Ok(SplitCoefficient::Torsion(set.expect("nonempty parts")))
        }
        _ => Err(Error::InvalidArgument(format!(
            "coefficients must be Z[1/S], a finite cyclic group or S-torsion, got {m}"
        ))),
    }
}

fn json_matrix(v: &serde_json::Value, rows: usize, cols: usize) -> Result<IntMatrix> {
    let bad = |what: &str| Error::InvalidArgument(format!("pair file: {what}"));
    let arr = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    if arr.is_empty() {
        return Ok(IntMatrix::zero(rows, cols));
    }
    if arr.len() != rows {
        return Err(bad(&format!("expected {rows} rows, got {}", arr.len())));
    }
    let mut entries = Vec::new();
    for row in arr {
        let row = row.as_array().ok_or_else(|| bad("rows must be arrays"))?;
        if row.len() != cols {
            return Err(bad(&format!("expected {cols} columns, got {}", row.len())));
        }
        let mut parsed = Vec::new();
        for e in row {
            let n = match e {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| bad("entries must be integers"))?,
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| bad("string entries must be decimal integers"))?,
                _ => return Err(bad("entries must be integers")),
            };
            parsed.push(n);
        }
        entries.push(parsed);
    }
    Ok(IntMatrix::from_fn(rows, cols, |i, j| entries[i][j].clone()))
}

fn pair_maps(
    v: &serde_json::Value,
    field: &str,
    ends: impl Fn(i64) -> (FgAbGroup, FgAbGroup),
) -> Result<Vec<GroupHom>> {
    let bad = |what: String| Error::InvalidArgument(format!("pair file: {what}"));
    let arr = v
        .get(field)
        .and_then(|x| x.as_array())
        .ok_or_else(|| bad(format!("field '{field}' must be an array of 8 matrices")))?;
    if arr.len() != 8 {
        return Err(bad(format!("field '{field}' must list 8 matrices")));
    }
    let mut out = Vec::new();
    for (m, entry) in arr.iter().enumerate() {
        let (dom, cod) = ends(m as i64);
        let matrix = json_matrix(entry, cod.ngens(), dom.ngens())?;
        out.push(GroupHom::new(dom, cod, matrix)?);
    }
    Ok(out)
}

fn load_pair(path: Option<&str>) -> Result<RCPair> {
    let Some(path) = path else {
        return Ok(point_rc());
    };
    let bad = |what: String| Error::InvalidArgument(format!("pair file: {what}"));
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {path}: {e}")))?;
    let v: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let field = |name: &str| -> Result<&str> {
        v.get(name)
            .and_then(|x| x.as_str())
            .ok_or_else(|| bad(format!("field '{name}' must be a graded group literal")))
    };
    let real = parse_graded(field("real")?)?;
    let complex = parse_graded(field("complex")?)?;
    let ko = |m: i64| real.fg_at(m.rem_euclid(8)).expect("pair groups are f.g.");
    let ku = |m: i64| complex.fg_at(m.rem_euclid(2)).expect("pair groups are f.g.");
    let chi = pair_maps(&v, "chi", |m| (ko(m), ko(m + 1)))?;
    let c = pair_maps(&v, "c", |m| (ko(m), ku(m)))?;
    let delta = pair_maps(&v, "delta", |m| (ku(m), ko(m - 2)))?;
    RCPair::new(real, complex, chi, c, delta)
}
