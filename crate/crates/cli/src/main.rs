use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;

use sympdeg_core::coxeter::evaluate;
use sympdeg_core::degen::{degeneration_path, degenerates};
use sympdeg_core::oracle::{
    hom_dim_bruteforce, rank_seq_bruteforce, realize_epsilon_form, realize_matrices,
};
use sympdeg_core::pbw::{
    build_mi, check_lemma_ui, dynkin_face_violations, find_interior_point, implicit_equalities,
    lagrangian_fixed_points, sigma_i_map, u_iprime_word, w_i_word, CRootVector, LemmaStatus,
    PbwSubset,
};
use sympdeg_core::rep::{dual, enumerate_with_dims, ext_dim, hom_dim, ranks_of, rep_of};
use sympdeg_core::render::{coefficient_quiver, hasse_dot, matrix_lines, sym_path_table};
use sympdeg_core::symdegen::{
    decompose_epsilon, is_epsilon_rep, sym_degenerates, sym_degeneration_path,
    sym_move_refinement, EpsIndecomposable, EpsilonRep, SymmetricType,
};
use sympdeg_core::{Error, RankSequence, Representation, Result};

#[derive(Parser)]
#[command(name = "sympdeg", version, about = "Degenerations of type-A quiver representations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct One {
    /// Representation file (`mult` or `rows` JSON).
    #[arg(long, value_name = "FILE")]
    rep: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Pair {
    #[arg(long, value_name = "FILE")]
    m: PathBuf,
    #[arg(long, value_name = "FILE")]
    n: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SymPair {
    #[command(flatten)]
    pair: Pair,
    /// odd-neg, even-pos, odd-pos or even-neg; defaults to the split type.
    #[arg(long = "type", value_name = "TYPE")]
    ty: Option<String>,
}

#[derive(Args)]
struct Subset {
    /// Rank of the symplectic group (`Sp_{2n}`).
    #[arg(long)]
    size: usize,
    /// Comma-separated subset of `{1, ..., n-1}`; empty for none.
    #[arg(long, default_value = "")]
    subset: String,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Rank sequence of a representation.
    Ranks(One),
    /// Representation with a given rank sequence.
    RepOfRanks(One),
    /// Duality ∇.
    Dual(One),
    /// dim Hom(M, N).
    Hom(Pair),
    /// dim Ext^1(M, N).
    Ext(Pair),
    /// Whether a representation carries an ε-form, and its decomposition.
    CheckEps {
        #[command(flatten)]
        one: One,
        #[arg(long = "type", value_name = "TYPE")]
        ty: Option<String>,
    },
    /// Whether N lies in the orbit closure of M.
    DegenCheck(Pair),
    /// Move sequence from M to N.
    DegenPath(Pair),
    /// Symmetric degeneration check.
    SymCheck(SymPair),
    /// Symmetric degeneration sequence.
    SymPath {
        #[command(flatten)]
        sp: SymPair,
        #[arg(long)]
        table: bool,
    },
    /// Bounded search for symmetric moves from M to N.
    SymMoves {
        #[command(flatten)]
        sp: SymPair,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// The module M^i and M^i ⊕ ∇M^i.
    PbwBuild(Subset),
    /// w_i, u_{i'} and the index maps.
    PbwWeyl(Subset),
    /// Dynkin-face membership of a point.
    PbwFace {
        #[command(flatten)]
        s: Subset,
        /// Root vector JSON.
        #[arg(long, value_name = "FILE")]
        point: PathBuf,
        /// Relative interior rather than closed face.
        #[arg(long)]
        strict: bool,
    },
    /// A relative interior point of the Dynkin face.
    PbwInterior(Subset),
    /// Torus-fixed points of the Lagrangian quiver Grassmannian.
    PbwFixedPoints(Subset),
    /// Predicted values of u_{i'} against the computed permutation.
    PbwLemmaUi(Subset),
    /// All (ε-)representations of a dimension vector, ordered by degeneration.
    Poset {
        #[arg(long = "type", value_name = "TYPE")]
        ty: Option<String>,
        #[arg(long, value_name = "CSV")]
        dims: String,
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Cap on the rank sum of the generic element.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
    },
    /// Matrix realizations checked against the combinatorics.
    OracleVerify {
        #[arg(long, value_name = "FILE")]
        rep: Option<PathBuf>,
        #[arg(long = "type", value_name = "TYPE")]
        ty: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random instances when no --rep is given.
        #[arg(long, default_value_t = 50)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Coefficient quiver drawing.
    RenderCoeff {
        #[arg(long, value_name = "FILE")]
        rep: PathBuf,
    },
}

fn read_json(path: &Path) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn parse_rep(v: serde_json::Value) -> Result<Representation> {
    if v.get("rows").is_some() {
        let r: RankSequence =
            serde_json::from_value(v).map_err(|e| Error::InvalidInput(e.to_string()))?;
        return rep_of(&r);
    }
    serde_json::from_value(v).map_err(|e| Error::InvalidInput(e.to_string()))
}

fn load_rep(path: &Path) -> Result<Representation> {
    parse_rep(read_json(path)?)
}

fn load_ranks(path: &Path) -> Result<RankSequence> {
    let v = read_json(path)?;
    if v.get("rows").is_some() {
        return serde_json::from_value(v).map_err(|e| Error::InvalidInput(e.to_string()));
    }
    Ok(ranks_of(&parse_rep(v)?))
}

fn sym_type(ty: Option<&str>, n: usize) -> Result<SymmetricType> {
    match ty {
        Some(name) => SymmetricType::from_name(name, n),
        None => Ok(SymmetricType::split_for(n)),
    }
}

fn load_pair(p: &Pair) -> Result<(Representation, Representation)> {
    let m = load_rep(&p.m)?;
    let n = load_rep(&p.n)?;
    if m.n() != n.n() {
        return Err(Error::MismatchedQuiver { left: m.n(), right: n.n() });
    }
    Ok((m, n))
}

fn load_sym_pair(sp: &SymPair) -> Result<(EpsilonRep, EpsilonRep)> {
    let (m, n) = load_pair(&sp.pair)?;
    let sym = sym_type(sp.ty.as_deref(), m.n())?;
    Ok((EpsilonRep::new(m, sym)?, EpsilonRep::new(n, sym)?))
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn parse_dims(csv: &str) -> Result<Vec<u32>> {
    csv.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad dimension {t:?}")))
        })
        .collect()
}

fn subset(s: &Subset) -> Result<PbwSubset> {
    PbwSubset::parse(s.size, &s.subset)
}

fn run(verb: Verb) -> Result<()> {
    match verb {
        Verb::Ranks(o) => {
            let r = load_ranks(&o.rep)?;
            if o.json {
                print_json(&r);
            } else {
                for line in matrix_lines(&r) {
                    println!("{line}");
                }
            }
        }
        Verb::RepOfRanks(o) => {
            let rep = rep_of(&load_ranks(&o.rep)?)?;
            if o.json {
                print_json(&rep);
            } else {
                println!("{rep}");
            }
        }
        Verb::Dual(o) => {
            let d = dual(&load_rep(&o.rep)?);
            if o.json {
                print_json(&d);
            } else {
                println!("{d}");
            }
        }
        Verb::Hom(p) => {
            let (m, n) = load_pair(&p)?;
            let v = hom_dim(&m, &n)?;
            if p.json {
                print_json(&json!({ "hom": v }));
            } else {
                println!("{v}");
            }
        }
        Verb::Ext(p) => {
            let (m, n) = load_pair(&p)?;
            let v = ext_dim(&m, &n)?;
            if p.json {
                print_json(&json!({ "ext": v }));
            } else {
                println!("{v}");
            }
        }
        Verb::CheckEps { one, ty } => {
            let rep = load_rep(&one.rep)?;
            let sym = sym_type(ty.as_deref(), rep.n())?;
            let parts = decompose_epsilon(&rep, sym).filter(|_| is_epsilon_rep(&rep, sym));
            if one.json {
                print_json(&json!({ "type": sym.name(), "epsilon": parts.is_some(), "summands": parts }));
            } else {
                match parts {
                    None => println!("{}: no", sym.name()),
                    Some(parts) => {
                        let text: Vec<String> = parts
                            .iter()
                            .map(|p| match p {
                                EpsIndecomposable::Pair(s) => format!("pair({s})"),
                                EpsIndecomposable::Single(s) => format!("single({s})"),
                            })
                            .collect();
                        println!("{}: yes", sym.name());
                        println!("{}", text.join(" + "));
                    }
                }
            }
        }
        Verb::DegenCheck(p) => {
            let (m, n) = load_pair(&p)?;
            let v = degenerates(&m, &n)?;
            if p.json {
                print_json(&json!({ "degenerates": v }));
            } else {
                println!("{}", if v { "yes" } else { "no" });
            }
        }
        Verb::DegenPath(p) => {
            let (m, n) = load_pair(&p)?;
            let path = degeneration_path(&m, &n)?;
            if p.json {
                print_json(&path);
            } else {
                println!("{m}");
                for step in &path {
                    println!("  {}  ->  {}", step.mv, step.rep);
                }
            }
        }
        Verb::SymCheck(sp) => {
            let (m, n) = load_sym_pair(&sp)?;
            let v = sym_degenerates(&m, &n)?;
            if sp.pair.json {
                print_json(&json!({ "type": m.sym().name(), "degenerates": v }));
            } else {
                println!("{}", if v { "yes" } else { "no" });
            }
        }
        Verb::SymPath { sp, table } => {
            let (m, n) = load_sym_pair(&sp)?;
            let path = sym_degeneration_path(&m, &n)?;
            if sp.pair.json {
                print_json(&path);
            } else if table {
                print!("{}", sym_path_table(&path));
            } else {
                for (k, step) in path.iter().enumerate() {
                    let peeled = step.peeled.map_or("-".to_string(), |s| s.to_string());
                    println!("{k}: Z = {}  peel {peeled}", step.z.rep());
                }
            }
        }
        Verb::SymMoves { sp, budget } => {
            let (m, n) = load_sym_pair(&sp)?;
            let found = sym_move_refinement(&m, &n, budget)?;
            if sp.pair.json {
                print_json(&json!({ "found": found.is_some(), "moves": found }));
            } else {
                match found {
                    None => println!("none within budget {budget}"),
                    Some(moves) if moves.is_empty() => println!("(no moves)"),
                    Some(moves) => {
                        let text: Vec<String> = moves.iter().map(|m| m.to_string()).collect();
                        println!("{}", text.join(" "));
                    }
                }
            }
        }
        Verb::PbwBuild(s) => {
            let p = subset(&s)?;
            let module = build_mi(&p);
            if s.json {
                print_json(&module);
            } else {
                println!("M^i     = {}", module.m_i);
                println!("M ⊕ ∇M  = {}", module.total.rep());
                println!("dims    = {:?}", module.total.rep().dim_vector().entries());
                println!("e       = {:?}", module.e.entries());
            }
        }
        Verb::PbwWeyl(s) => {
            let p = subset(&s)?;
            let w = w_i_word(&p);
            let u = u_iprime_word(&p);
            let (we, ue) = (evaluate(&w), evaluate(&u));
            if s.json {
                print_json(&json!({
                    "subset": p,
                    "sigma_i": sigma_i_map(&p),
                    "w_i": { "word": w, "one_line": we.one_line(), "length": we.length() },
                    "u_iprime": { "word": u, "one_line": ue.one_line(), "length": ue.length() },
                }));
            } else {
                println!("sigma_i  = {:?}", sigma_i_map(&p));
                println!("w_i      = {w}");
                println!("         = {we}  (length {})", we.length());
                println!("u_i'     = {u}");
                println!("         = {ue}  (length {})", ue.length());
            }
        }
        Verb::PbwFace { s, point, strict } => {
            let p = subset(&s)?;
            let d = CRootVector::from_json(&read_json(&point)?)?;
            let bad = dynkin_face_violations(&p, &d, strict)?;
            if s.json {
                let text: Vec<String> = bad.iter().map(|c| c.describe(p.n())).collect();
                print_json(&json!({ "contains": bad.is_empty(), "strict": strict, "violated": text }));
            } else if bad.is_empty() {
                println!("inside");
            } else {
                println!("outside");
                for c in &bad {
                    println!("  {}", c.describe(p.n()));
                }
            }
        }
        Verb::PbwInterior(s) => {
            let p = subset(&s)?;
            let d = find_interior_point(&p)?;
            if s.json {
                println!("{}", serde_json::to_string_pretty(&d.to_json()).expect("json"));
            } else {
                println!("forced equalities: {}", implicit_equalities(&p).len());
                let json = d.to_json();
                for e in json["values"].as_array().into_iter().flatten() {
                    println!("  d({}) = {}", e["root"].as_str().unwrap_or("?"), e["d"].as_str().unwrap_or("?"));
                }
            }
        }
        Verb::PbwFixedPoints(s) => {
            let p = subset(&s)?;
            let fps = lagrangian_fixed_points(&p);
            if s.json {
                print_json(&fps);
            } else {
                println!("{} fixed points", fps.len());
                for fp in &fps {
                    let sets: Vec<String> = fp
                        .sets
                        .iter()
                        .map(|set| {
                            let v: Vec<String> = set.iter().map(|x| x.to_string()).collect();
                            format!("{{{}}}", v.join(","))
                        })
                        .collect();
                    println!("  {}", sets.join(" ⊂ "));
                }
            }
        }
        Verb::PbwLemmaUi(s) => {
            let p = subset(&s)?;
            let report = check_lemma_ui(&p);
            if s.json {
                print_json(&report);
            } else {
                println!("subset {}  ell {:?}  h {:?}", report.subset, report.ell, report.h);
                println!("u = {:?}", report.u_one_line);
                for row in &report.rows {
                    println!(
                        "  j={} ell={} h={} {:?} predicted {:?} u {:?} u^-1 {:?}: {:?}",
                        row.j, row.ell_j, row.h_j, row.clause, row.predicted, row.under_u,
                        row.under_u_inverse, row.status
                    );
                }
                println!(
                    "agree {}  agree-inverse {}  disagree {}  out-of-range {}",
                    report.count(LemmaStatus::Agree),
                    report.count(LemmaStatus::AgreeInverse),
                    report.count(LemmaStatus::Disagree),
                    report.count(LemmaStatus::OutOfRange)
                );
            }
        }
        Verb::Poset { ty, dims, dot, json, budget } => {
            let dims = parse_dims(&dims)?;
            let n = dims.len();
            let sym = ty.as_deref().map(|t| SymmetricType::from_name(t, n)).transpose()?;
            let mut reps = enumerate_with_dims(&dims);
            if let Some(sym) = sym {
                reps.retain(|r| is_epsilon_rep(r, sym));
            }
            let size: u64 = reps.iter().map(|r| ranks_of(r).sum()).max().unwrap_or(0);
            if size > budget {
                return Err(Error::InstanceTooLarge { size, bound: budget });
            }
            if dot {
                print!("{}", hasse_dot(&reps));
            } else if json {
                print_json(&reps);
            } else {
                for r in &reps {
                    println!("{r}");
                }
            }
        }
        Verb::OracleVerify { rep, ty, seed, budget, json } => {
            let instances: Vec<Representation> = match &rep {
                Some(path) => vec![load_rep(path)?],
                None => {
                    let mut rng = StdRng::seed_from_u64(seed);
                    (0..budget)
                        .map(|_| {
                            let n = rng.gen_range(1..=5);
                            let mut r = Representation::zero(n);
                            for i in 1..=n {
                                for j in i..=n {
                                    if rng.gen_bool(0.3) {
                                        r.add(sympdeg_core::Segment::new(i, j, n).expect("in range"), rng.gen_range(1..=2));
                                    }
                                }
                            }
                            r
                        })
                        .collect()
                }
            };
            let mut checked = 0usize;
            let mut forms = 0usize;
            for r in &instances {
                let real = realize_matrices(r).scrambled(seed);
                if rank_seq_bruteforce(&real) != ranks_of(r) {
                    return Err(Error::AlgorithmStuck(format!("rank mismatch on {r}")));
                }
                let d = dual(r);
                let dreal = realize_matrices(&d).scrambled(seed.wrapping_add(1));
                if hom_dim_bruteforce(&real, &dreal)? != hom_dim(r, &d)? {
                    return Err(Error::AlgorithmStuck(format!("hom mismatch on {r}")));
                }
                let sym = match ty.as_deref() {
                    Some(t) => Some(SymmetricType::from_name(t, r.n())?),
                    None if rep.is_none() => Some(SymmetricType::split_for(r.n())),
                    None => None,
                };
                if let Some(sym) = sym {
                    let target = if rep.is_some() { r.clone() } else { r.direct_sum(&d)? };
                    if let Ok(e) = EpsilonRep::new(target, sym) {
                        realize_epsilon_form(&e)?
                            .scrambled(seed)
                            .verify()
                            .map_err(Error::AlgorithmStuck)?;
                        forms += 1;
                    } else if rep.is_some() {
                        return Err(Error::NotEpsilon);
                    }
                }
                checked += 1;
            }
            if json {
                print_json(&json!({ "seed": seed, "instances": checked, "forms": forms, "ok": true }));
            } else {
                println!("ok: {checked} instances, {forms} forms (seed {seed})");
            }
        }
        Verb::RenderCoeff { rep } => {
            for line in coefficient_quiver(&load_rep(&rep)?) {
                println!("{line}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string();
            if msg.starts_with(e.name()) {
                eprintln!("error: {msg}");
            } else {
                eprintln!("error: {}: {msg}", e.name());
            }
            ExitCode::from(1)
        }
    }
}
