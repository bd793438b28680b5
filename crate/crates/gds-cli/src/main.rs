//! `gds` — tensor product decompositions, regular parts and generic direct
//! summands for types A1 and A2.
//!
//! Weights are comma-separated fundamental coordinates, optionally in
//! parentheses: `7` or `(1,1)`. Extended affine Weyl elements are written as
//! an optional translation `t:(coords)` followed by a word over the simple
//! reflections `s1`, `s2`, … and the affine reflection `u`, e.g. `t:(1,1)`,
//! `u`, `t:(2)s1u`, or `e` for the identity.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gds::alcove::{Case, EllContext, ExtAffine};
use gds::label::{character_of, gfd_of, wfd_of, Decomposition, ModuleLabel};
use gds::roots::{Kind, Weight};
use gds::verlinde::TensorKind;
use gds::{selftest, sl2, sl3, verlinde};

#[derive(Parser)]
#[command(name = "gds", version, about = "Tensor product decompositions and generic direct summands for types A1 and A2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    #[value(name = "A1", alias = "a1")]
    A1,
    #[value(name = "A2", alias = "a2")]
    A2,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Modular,
    Quantum,
}

#[derive(Args)]
struct ContextArgs {
    /// Root system type
    #[arg(long = "type", value_enum, id = "type")]
    kind: TypeArg,
    /// The prime ell (modular) or order of the root of unity (quantum)
    #[arg(long)]
    ell: i64,
    /// Modular (algebraic group) or quantum (root of unity) case
    #[arg(long, value_enum, default_value = "modular")]
    case: CaseArg,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

impl ContextArgs {
    fn build(&self) -> Result<EllContext, gds::Error> {
        let case = match self.case {
            CaseArg::Modular => Case::Modular,
            CaseArg::Quantum => Case::Quantum,
        };
        let ctx = match self.kind {
            TypeArg::A1 => EllContext::a1(self.ell, case)?,
            TypeArg::A2 => EllContext::a2(self.ell, case)?,
        };
        for w in ctx.warnings() {
            eprintln!("warning: {w}");
        }
        Ok(ctx)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Krull-Schmidt data of a tensor product of two simple modules
    Decompose {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Highest weight of a simple tensor factor (exactly twice)
        #[arg(long = "simple", num_args = 1, action = clap::ArgAction::Append)]
        simples: Vec<String>,
    },
    /// The generic direct summand G(x,y) or G_nabla(x,y)
    GenericSummand {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Tensor product family: simple or dual-weyl
        #[arg(long, default_value = "simple")]
        kind: String,
    },
    /// Regular part of a tensor product, optionally translated by interior
    /// alcove weights
    RegularPart {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Interior-alcove translation target for the left factor
        #[arg(long)]
        lhs: Option<String>,
        /// Interior-alcove translation target for the right factor
        #[arg(long)]
        rhs: Option<String>,
        /// Tensor product family: simple, weyl or dual-weyl
        #[arg(long, default_value = "simple")]
        kind: String,
    },
    /// Verlinde fusion coefficients of two interior alcove weights
    Fusion {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Characters of labelled modules
    Character {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Weyl/dual Weyl character of a dominant weight
        #[arg(long)]
        weyl: Option<String>,
        /// Simple character of a dominant weight
        #[arg(long)]
        simple: Option<String>,
        /// SL2 tilting character T(c), 0 <= c <= 2*ell-2
        #[arg(long)]
        tilting: Option<i64>,
        /// SL2 twisted tilting product J(u), digits comma-separated
        #[arg(long)]
        jmod: Option<String>,
        /// Any module label, as JSON ('-' reads stdin)
        #[arg(long)]
        label: Option<String>,
    },
    /// Good/Weyl filtration dimension of a labelled module
    Gfd {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Module label as JSON ('-' reads stdin)
        #[arg(long)]
        label: String,
    },
    /// Alcove combinatorics of the extended affine Weyl group
    Alcove {
        #[command(flatten)]
        ctx: ContextArgs,
        /// Length of an element
        #[arg(long)]
        length: Option<String>,
        /// Locate a weight: x and lambda with weight = x . lambda
        #[arg(long)]
        locate: Option<String>,
        /// Apply the ell-dilated dot action of an element ...
        #[arg(long)]
        dot: Option<String>,
        /// ... to this weight
        #[arg(long)]
        weight: Option<String>,
        /// List the fundamental group
        #[arg(long)]
        omega: bool,
        /// Image of an element in the fundamental group
        #[arg(long = "omega-of")]
        omega_of: Option<String>,
        /// Steinberg digit factorization of an element
        #[arg(long)]
        steinberg: Option<String>,
    },
    /// Run the acceptance suite and report pass/fail per criterion
    Selftest {
        /// Worker threads for independent criteria (output stays ordered)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.name());
            ExitCode::from(1)
        }
    }
}

// ---------------------------------------------------------------------------
// argument parsing helpers
// ---------------------------------------------------------------------------

fn parse_weight(s: &str, rank: usize) -> Result<Weight, gds::Error> {
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    let coords: Result<Vec<i64>, _> =
        trimmed.split(',').map(|p| p.trim().parse::<i64>()).collect();
    let coords =
        coords.map_err(|_| gds::Error::Structure(format!("cannot parse weight `{s}`")))?;
    if coords.len() != rank {
        return Err(gds::Error::Structure(format!(
            "weight `{s}` has {} coordinates, expected {rank}",
            coords.len()
        )));
    }
    Ok(Weight::new(coords))
}

fn parse_element(s: &str, ctx: &EllContext) -> Result<ExtAffine, gds::Error> {
    let mut rest = s.trim();
    let mut out = ExtAffine::identity(ctx.rank());
    if let Some(after) = rest.strip_prefix("t:") {
        let close = after
            .find(')')
            .ok_or_else(|| gds::Error::Structure(format!("unclosed translation in `{s}`")))?;
        let gamma = parse_weight(&after[..=close], ctx.rank())?;
        out = ExtAffine::translation(gamma);
        rest = after[close + 1..].trim();
    }
    let mut chars = rest.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'e' => {}
            'u' => out = out.compose(&ctx.affine_reflection()),
            's' => {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                let i: usize = digits
                    .parse()
                    .map_err(|_| gds::Error::Structure(format!("bad reflection in `{s}`")))?;
                if i == 0 || i > ctx.rank() {
                    return Err(gds::Error::Structure(format!(
                        "s{i} is not a simple reflection of rank {}",
                        ctx.rank()
                    )));
                }
                out = out.compose(&ctx.simple_reflection(i - 1));
            }
            ' ' => {}
            other => {
                return Err(gds::Error::Structure(format!(
                    "unexpected `{other}` in element `{s}`"
                )))
            }
        }
    }
    Ok(out)
}

fn parse_label(s: &str) -> Result<ModuleLabel, gds::Error> {
    let text = if s == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| gds::Error::Structure(format!("stdin: {e}")))?;
        buf
    } else {
        s.to_string()
    };
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| gds::Error::Structure(format!("invalid JSON label: {e}")))?;
    ModuleLabel::from_json(&value)
}

fn parse_kind(s: &str) -> Result<TensorKind, gds::Error> {
    match s {
        "simple" => Ok(TensorKind::Simple),
        "weyl" => Ok(TensorKind::Weyl),
        "dual-weyl" | "dualweyl" | "nabla" => Ok(TensorKind::DualWeyl),
        other => Err(gds::Error::Structure(format!("unknown tensor kind `{other}`"))),
    }
}

fn fmt_weight(w: &Weight) -> String {
    if w.rank() == 1 {
        w.coord(0).to_string()
    } else {
        format!("{w}")
    }
}

// ---------------------------------------------------------------------------
// fusion cache persistence (GDS_CACHE_DIR)
// ---------------------------------------------------------------------------

const CACHE_MAGIC: &[u8; 4] = b"GDSF";
const CACHE_VERSION: u32 = 1;

fn cache_path(ctx: &EllContext) -> Option<PathBuf> {
    let dir = std::env::var_os("GDS_CACHE_DIR")?;
    let kind = match ctx.kind() {
        Kind::A1 => "a1",
        Kind::A2 => "a2",
        Kind::Generic => return None,
    };
    Some(PathBuf::from(dir).join(format!("fusion-v{CACHE_VERSION}-{kind}-{}-{}.bin", ctx.ell(), ctx.case())))
}

fn load_fusion_cache(ctx: &EllContext) {
    let Some(path) = cache_path(ctx) else { return };
    let Ok(bytes) = std::fs::read(&path) else { return };
    // best effort: a corrupt or mismatched cache is simply ignored
    let Some(entries) = decode_cache(&bytes, ctx.rank()) else { return };
    ctx.seed_fusion_cache(entries);
}

fn save_fusion_cache(ctx: &EllContext) {
    let Some(path) = cache_path(ctx) else { return };
    if let Some(parent) = path.parent() {
        let _ = std::fs::create_dir_all(parent);
    }
    let snapshot = ctx.fusion_cache_snapshot();
    if snapshot.is_empty() {
        return;
    }
    let _ = std::fs::write(&path, encode_cache(&snapshot, ctx.rank()));
}

fn encode_cache(entries: &[(Weight, Weight, BTreeMap<Weight, i64>)], rank: usize) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    out.extend_from_slice(&(rank as u32).to_le_bytes());
    out.extend_from_slice(&(entries.len() as u32).to_le_bytes());
    let put_weight = |out: &mut Vec<u8>, w: &Weight| {
        for c in w.coords() {
            out.extend_from_slice(&c.to_le_bytes());
        }
    };
    for (a, b, rows) in entries {
        put_weight(&mut out, a);
        put_weight(&mut out, b);
        out.extend_from_slice(&(rows.len() as u32).to_le_bytes());
        for (nu, m) in rows {
            put_weight(&mut out, nu);
            out.extend_from_slice(&m.to_le_bytes());
        }
    }
    out
}

fn decode_cache(bytes: &[u8], rank: usize) -> Option<Vec<(Weight, Weight, BTreeMap<Weight, i64>)>> {
    let mut pos = 0usize;
    let take = |pos: &mut usize, n: usize| -> Option<&[u8]> {
        let slice = bytes.get(*pos..*pos + n)?;
        *pos += n;
        Some(slice)
    };
    if take(&mut pos, 4)? != CACHE_MAGIC {
        return None;
    }
    let u32_at = |pos: &mut usize| -> Option<u32> {
        Some(u32::from_le_bytes(take(pos, 4)?.try_into().ok()?))
    };
    let i64_at = |pos: &mut usize| -> Option<i64> {
        Some(i64::from_le_bytes(take(pos, 8)?.try_into().ok()?))
    };
    if u32_at(&mut pos)? != CACHE_VERSION || u32_at(&mut pos)? as usize != rank {
        return None;
    }
    let count = u32_at(&mut pos)? as usize;
    let weight_at = |pos: &mut usize| -> Option<Weight> {
        let mut coords = Vec::with_capacity(rank);
        for _ in 0..rank {
            coords.push(i64::from_le_bytes(take(pos, 8)?.try_into().ok()?));
        }
        Some(Weight::new(coords))
    };
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let a = weight_at(&mut pos)?;
        let b = weight_at(&mut pos)?;
        let rows_n = u32_at(&mut pos)? as usize;
        let mut rows = BTreeMap::new();
        for _ in 0..rows_n {
            let nu = weight_at(&mut pos)?;
            let m = i64_at(&mut pos)?;
            rows.insert(nu, m);
        }
        out.push((a, b, rows));
    }
    if pos == bytes.len() {
        Some(out)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// command dispatch
// ---------------------------------------------------------------------------

fn run(command: Command) -> Result<ExitCode, gds::Error> {
    match command {
        Command::Decompose { ctx, simples } => {
            let ctx_args = ctx;
            let ctx = ctx_args.build()?;
            if simples.len() != 2 {
                return Err(gds::Error::Structure(
                    "decompose needs exactly two --simple weights".into(),
                ));
            }
            let a = parse_weight(&simples[0], ctx.rank())?;
            let b = parse_weight(&simples[1], ctx.rank())?;
            let (dec, unresolved) = decompose_simples(&a, &b, &ctx)?;
            print_decomposition(&dec, unresolved, &ctx, ctx_args.json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GenericSummand { ctx, x, y, kind } => {
            let ctx_args = ctx;
            let ctx = ctx_args.build()?;
            let x = parse_element(&x, &ctx)?;
            let y = parse_element(&y, &ctx)?;
            let (label, dim_name, dim) = match parse_kind(&kind)? {
                TensorKind::Simple => {
                    let g = match ctx.kind() {
                        Kind::A1 => sl2::generic_summand(&x, &y, &ctx)?,
                        Kind::A2 => sl3::generic_summand(&x, &y, &ctx)?,
                        Kind::Generic => unreachable!("CLI only builds A1/A2"),
                    };
                    let gfd = gfd_of(&g, &ctx)?;
                    (g, "gfd", gfd)
                }
                TensorKind::DualWeyl => {
                    let g = match ctx.kind() {
                        Kind::A1 => sl2::generic_summand_nabla(&x, &y, &ctx)?,
                        Kind::A2 => sl3::generic_summand_nabla_restricted(&x, &y, &ctx)?,
                        Kind::Generic => unreachable!(),
                    };
                    let wfd = wfd_of(&g, &ctx)?;
                    (g, "wfd", wfd)
                }
                TensorKind::Weyl => {
                    return Err(gds::Error::Scope(
                        "use --kind dual-weyl and dualize; see the regular-part subcommand".into(),
                    ))
                }
            };
            if ctx_args.json {
                let mut obj = serde_json::Map::new();
                obj.insert("label".into(), label.to_json());
                if let Some(d) = dim {
                    obj.insert(dim_name.into(), json!(d));
                }
                println!("{}", Value::Object(obj));
            } else {
                match dim {
                    Some(d) => println!("{label}  ({dim_name} {d})"),
                    None => println!("{label}"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::RegularPart { ctx, x, y, lhs, rhs, kind } => {
            let ctx_args = ctx;
            let ctx = ctx_args.build()?;
            let x = parse_element(&x, &ctx)?;
            let y = parse_element(&y, &ctx)?;
            let kind = parse_kind(&kind)?;
            let zero = Weight::zero(ctx.rank());
            let lhs = lhs.map(|s| parse_weight(&s, ctx.rank())).transpose()?.unwrap_or(zero.clone());
            let rhs = rhs.map(|s| parse_weight(&s, ctx.rank())).transpose()?.unwrap_or(zero.clone());
            load_fusion_cache(&ctx);
            let dec = if lhs.is_zero() && rhs.is_zero() && kind == TensorKind::Simple {
                match ctx.kind() {
                    Kind::A1 => sl2::regular_part(&x, &y, &ctx)?,
                    Kind::A2 => sl3::regular_part(&x, &y, &ctx)?,
                    Kind::Generic => unreachable!(),
                }
            } else {
                verlinde::translated_regular_part(&x, &y, &lhs, &rhs, &ctx, kind)?
            };
            save_fusion_cache(&ctx);
            print_decomposition(&dec, None, &ctx, ctx_args.json)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Fusion { ctx, lhs, rhs } => {
            let ctx_args = ctx;
            let ctx = ctx_args.build()?;
            let a = parse_weight(&lhs, ctx.rank())?;
            let b = parse_weight(&rhs, ctx.rank())?;
            load_fusion_cache(&ctx);
            let rows = verlinde::fusion(&a, &b, &ctx)?;
            save_fusion_cache(&ctx);
            if ctx_args.json {
                let coeffs: Vec<Value> = rows
                    .iter()
                    .map(|(nu, m)| {
                        json!({"target": nu.coords().to_vec(), "multiplicity": m})
                    })
                    .collect();
                println!(
                    "{}",
                    json!({"lhs": a.coords().to_vec(), "rhs": b.coords().to_vec(), "coefficients": coeffs})
                );
            } else {
                let parts: Vec<String> =
                    rows.iter().map(|(nu, m)| format!("{}:{m}", fmt_weight(nu))).collect();
                println!("{}", parts.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Character { ctx, weyl, simple, tilting, jmod, label } => {
            let ctx_args = ctx;
            let ctx = ctx_args.build()?;
            let selected = [weyl.is_some(), simple.is_some(), tilting.is_some(), jmod.is_some(), label.is_some()]
                .iter()
                .filter(|b| **b)
                .count();
            if selected != 1 {
                return Err(gds::Error::Structure(
                    "character needs exactly one of --weyl/--simple/--tilting/--jmod/--label".into(),
                ));
            }
            let character = if let Some(w) = weyl {
                ctx.weyl_character(&parse_weight(&w, ctx.rank())?)?
            } else if let Some(w) = simple {
                ctx.simple_character(&parse_weight(&w, ctx.rank())?)?
            } else if let Some(c) = tilting {
                ctx.tilting_character_a1(c)?
            } else if let Some(u) = jmod {
                let digits: Result<Vec<i64>, _> =
                    u.split(',').map(|p| p.trim().parse::<i64>()).collect();
                let digits = digits
                    .map_err(|_| gds::Error::Structure(format!("cannot parse digits `{u}`")))?;
                match character_of(&ModuleLabel::Jmod(digits), &ctx)? {
                    Some(c) => c,
                    None => return Err(gds::Error::Scope("character unknown".into())),
                }
            } else {
                let l = parse_label(label.as_deref().unwrap())?;
                match character_of(&l, &ctx)? {
                    Some(c) => c,
                    None => {
                        if ctx_args.json {
                            println!("{}", json!({"known": false}));
                        } else {
                            println!("unknown");
                        }
                        return Ok(ExitCode::SUCCESS);
                    }
                }
            };
            if ctx_args.json {
                let mults: Vec<Value> = character
                    .sorted_entries()
                    .iter()
                    .map(|(w, m)| json!({"weight": w.coords().to_vec(), "multiplicity": m}))
                    .collect();
                println!(
                    "{}",
                    json!({"known": true, "dimension": character.dimension(), "multiplicities": mults})
                );
            } else {
                println!("dimension {}", character.dimension());
                for (w, m) in character.sorted_entries() {
                    println!("{}: {m}", fmt_weight(&w));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gfd { ctx, label } => {
            let ctx_args = ctx;
            let ctx = ctx_args.build()?;
            let l = parse_label(&label)?;
            let g = gfd_of(&l, &ctx)?;
            let w = wfd_of(&l, &ctx)?;
            if ctx_args.json {
                let mut obj = serde_json::Map::new();
                obj.insert("label".into(), l.to_json());
                obj.insert("gfd".into(), g.map(|v| json!(v)).unwrap_or(Value::Null));
                obj.insert("wfd".into(), w.map(|v| json!(v)).unwrap_or(Value::Null));
                println!("{}", Value::Object(obj));
            } else {
                let show = |o: Option<u64>| o.map(|v| v.to_string()).unwrap_or("unknown".into());
                println!("gfd {}", show(g));
                println!("wfd {}", show(w));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Alcove { ctx, length, locate, dot, weight, omega, omega_of, steinberg } => {
            let ctx_args = ctx;
            let ctx = ctx_args.build()?;
            if let Some(s) = length {
                let x = parse_element(&s, &ctx)?;
                println!("{}", ctx.length(&x));
            } else if let Some(s) = locate {
                let mu = parse_weight(&s, ctx.rank())?;
                let loc = ctx.locate(&mu);
                if ctx_args.json {
                    println!(
                        "{}",
                        json!({
                            "fundamental": loc.fundamental.coords().to_vec(),
                            "regular": loc.regular,
                            "length": loc.steps,
                            "translation": loc.element.translation_part().coords().to_vec(),
                        })
                    );
                } else {
                    println!(
                        "fundamental {}, regular {}, length {}",
                        fmt_weight(&loc.fundamental),
                        loc.regular,
                        loc.steps
                    );
                }
            } else if let Some(s) = dot {
                let x = parse_element(&s, &ctx)?;
                let mu = weight
                    .ok_or_else(|| gds::Error::Structure("--dot needs --weight".into()))
                    .and_then(|w| parse_weight(&w, ctx.rank()))?;
                println!("{}", fmt_weight(&ctx.ell_dot(&x, &mu)));
            } else if omega {
                for om in ctx.omega_group() {
                    println!(
                        "t:{} acting with 0 -> {}",
                        fmt_weight(om.translation_part()),
                        fmt_weight(&ctx.ell_dot(om, &Weight::zero(ctx.rank())))
                    );
                }
            } else if let Some(s) = omega_of {
                let x = parse_element(&s, &ctx)?;
                let om = ctx.omega_of(&x);
                println!(
                    "omega with 0 -> {}",
                    fmt_weight(&ctx.ell_dot(&om, &Weight::zero(ctx.rank())))
                );
            } else if let Some(s) = steinberg {
                let x = parse_element(&s, &ctx)?;
                let st = ctx.steinberg_factor(&x)?;
                let x0dot = ctx.ell_dot(&st.x0, &Weight::zero(ctx.rank()));
                if ctx_args.json {
                    let class = st.class.as_ref().map(|c| {
                        json!({
                            "epsilon": c.epsilon,
                            "omega_dot_zero": ctx.ell_dot(&c.omega, &Weight::zero(ctx.rank())).coords().to_vec(),
                        })
                    });
                    println!(
                        "{}",
                        json!({
                            "restricted": x0dot.coords().to_vec(),
                            "lambda": st.lambda.coords().to_vec(),
                            "class": class.unwrap_or(Value::Null),
                        })
                    );
                } else {
                    print!("x.0 = {} + {}*{}", fmt_weight(&x0dot), ctx.ell(), fmt_weight(&st.lambda));
                    if let Some(c) = &st.class {
                        print!("  (epsilon {}, omega: 0 -> {})", c.epsilon, fmt_weight(&ctx.ell_dot(&c.omega, &Weight::zero(ctx.rank()))));
                    }
                    println!();
                }
            } else {
                return Err(gds::Error::Structure(
                    "alcove needs one of --length/--locate/--dot/--omega/--omega-of/--steinberg".into(),
                ));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { jobs, json } => {
            let reports = selftest::run_all(jobs.max(1));
            let mut all_pass = true;
            if json {
                let rows: Vec<Value> = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "criterion": r.id,
                            "name": r.name,
                            "passed": r.passed,
                            "detail": r.detail,
                            "millis": r.millis,
                        })
                    })
                    .collect();
                for r in &reports {
                    all_pass &= r.passed;
                }
                println!("{}", json!({"criteria": rows, "passed": all_pass}));
            } else {
                for r in &reports {
                    let status = if r.passed { "PASS" } else { "FAIL" };
                    println!("criterion {} [{}]: {} ({} ms) — {}", r.id, r.name, status, r.millis, r.detail);
                    all_pass &= r.passed;
                }
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

/// Full decomposition data for L(a) ⊗ L(b). In type A1 the Krull-Schmidt
/// decomposition is known completely in both cases. In type A2 the regular
/// part is returned together with the dimension of the unresolved complement
/// (the negligible tilting part, plus undetermined regular summands when the
/// decomposition is flagged incomplete).
fn decompose_simples(
    a: &Weight,
    b: &Weight,
    ctx: &EllContext,
) -> Result<(Decomposition, Option<i64>), gds::Error> {
    match ctx.kind() {
        Kind::A1 => {
            let dec = match ctx.case() {
                Case::Modular => sl2::doty_henke(a.coord(0), b.coord(0), ctx)?,
                Case::Quantum => sl2::quantum_full_tensor(a.coord(0), b.coord(0), ctx)?,
            };
            Ok((dec, None))
        }
        Kind::A2 => {
            let loc_a = ctx.locate(a);
            let loc_b = ctx.locate(b);
            if !loc_a.regular || !loc_b.regular {
                return Err(gds::Error::Scope(
                    "A2 decompose needs ell-regular highest weights (the regular part is zero otherwise)".into(),
                ));
            }
            let x = principal_element(a, ctx)?;
            let y = principal_element(b, ctx)?;
            let dec = sl3::regular_part(&x, &y, ctx)?;
            let product = ctx.simple_character(a)?.product(&ctx.simple_character(b)?)?;
            let mut known = gds::Character::zero(ctx.root_system().clone());
            for (l, m) in dec.summands() {
                if let Some(c) = character_of(l, ctx)? {
                    known.add_scaled(&c, *m as i64);
                }
            }
            let unresolved = product.minus(&known).dimension();
            Ok((dec, Some(unresolved)))
        }
        Kind::Generic => Err(gds::Error::EngineScope(format!("{:?}", ctx.root_system()))),
    }
}

/// Element of W_ext^+ with x ∙ 0 = μ, for μ in the extended principal block.
fn principal_element(mu: &Weight, ctx: &EllContext) -> Result<ExtAffine, gds::Error> {
    let loc = ctx.locate(mu);
    let omega = ctx
        .omega_group()
        .iter()
        .find(|o| ctx.ell_dot(o, &Weight::zero(ctx.rank())) == loc.fundamental)
        .cloned()
        .ok_or_else(|| {
            gds::Error::Block(format!("{mu} is not in the extended principal block"))
        })?;
    Ok(loc.element.compose(&omega))
}

fn print_decomposition(
    dec: &Decomposition,
    unresolved: Option<i64>,
    ctx: &EllContext,
    json: bool,
) -> Result<(), gds::Error> {
    if json {
        let mut v = dec.to_json(ctx)?;
        if let (Some(obj), Some(u)) = (v.as_object_mut(), unresolved) {
            obj.insert("unresolved_dimension".into(), json!(u));
        }
        println!("{v}");
    } else {
        for (label, mult, gfd) in dec.sorted_for_output(ctx)? {
            match gfd {
                Some(g) => println!("{mult} x {label}  (gfd {g})"),
                None => println!("{mult} x {label}"),
            }
        }
        println!("complete: {}", dec.is_complete());
        if let Some(u) = unresolved {
            println!("unresolved complement dimension: {u}");
        }
        let conservation = dec.verify_conservation(ctx)?;
        if conservation.exact {
            println!("character conservation: exact (dimension {})", dec.expected_character().dimension());
        } else if conservation.unknown_summands > 0 {
            println!(
                "character conservation: {} summands with unknown character",
                conservation.unknown_summands
            );
        }
    }
    Ok(())
}
