use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use equivar::cas_cat::{self, CasMorphism};
use equivar::combinat::{count_injections, ClassFunction, Partition};
use equivar::equivariant::{build_p, build_q};
use equivar::groth::{self, KClassRep, KGenClass, Tag};
use equivar::homcalc::{ext_stable, ext_truncated, stable_hom_pq, tor_periodic, character_dim, HomSource};
use equivar::report::{timed, Report};
use equivar::verify;
use equivar::Error;

#[derive(Parser)]
#[command(name = "equivar", version, about = "Equivariant modules over truncated polynomial rings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Refuse jobs whose modules exceed this many basis elements.
    #[arg(long, env = "EQUIVAR_MAX_DIM", default_value_t = 50_000, global = true)]
    max_dim: usize,

    /// Largest accepted number of variables.
    #[arg(long, default_value_t = 5, global = true)]
    n_cap: usize,

    /// Omit runtime_ms so repeated runs compare byte for byte.
    #[arg(long, global = true)]
    no_runtime: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum KOp {
    P2q,
    Q2p,
    Mu,
    Rank,
    Tensor,
}

#[derive(Clone, Copy, ValueEnum)]
enum CasOp {
    HomDim,
    Compose,
    Injective,
    Compare,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of P_{s,n} or Q_{s,n} at N variables.
    Dim {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        n_vars: usize,
    },
    /// Stable Hom between P/Q modules, given as KIND,s,n.
    Hom {
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        #[arg(long = "N")]
        n_vars: usize,
    },
    /// Ext^i for i < degrees; stable unless --truncated.
    Ext {
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        #[arg(long = "N")]
        n_vars: usize,
        #[arg(long, default_value_t = 3)]
        degrees: usize,
        #[arg(long)]
        truncated: bool,
    },
    /// Characters of Tor_r(Q_{s,1}, Q_{s,1}) for r = 1..=r.
    Tor {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "N")]
        n_vars: usize,
    },
    /// Grothendieck-group calculations.
    Kclass {
        #[arg(long, value_enum)]
        op: KOp,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        lambda: String,
        /// Second partition for `tensor`.
        #[arg(long)]
        mu: Option<String>,
    },
    /// The category C(A_s).
    Cas {
        #[arg(long, value_enum)]
        op: CasOp,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long = "N")]
        n_vars: Option<usize>,
        /// Morphism JSON for `compose` (applied first).
        #[arg(long)]
        f: Option<String>,
        /// Morphism JSON for `compose` (applied second).
        #[arg(long)]
        g: Option<String>,
    },
    /// Acceptance checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "max-N")]
        max_n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::Decode(_)
            | Error::TooLarge(_)
            | Error::SizeMismatch(_)
            | Error::NoInclusion(_)
            | Error::TooShort { .. }
            | Error::LengthCap { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

struct Guard {
    max_dim: usize,
    n_cap: usize,
}

impl Guard {
    fn n(&self, n_vars: usize) -> Result<(), Failure> {
        if n_vars > self.n_cap {
            return Err(Failure::Usage(format!("N = {n_vars} exceeds the cap {}", self.n_cap)));
        }
        Ok(())
    }

    fn dim(&self, what: &str, d: Option<usize>) -> Result<(), Failure> {
        match d {
            Some(d) if d <= self.max_dim => Ok(()),
            Some(d) => Err(Failure::Usage(format!(
                "{what} has dimension {d}, above the limit {}",
                self.max_dim
            ))),
            None => Err(Failure::Usage(format!("{what} is too large"))),
        }
    }
}

fn closed_form(kind: Kind, s: usize, n: usize, n_vars: usize) -> Option<usize> {
    let inj = if n > n_vars { 0 } else { count_injections(n, n_vars)? };
    let free = match kind {
        Kind::P => n_vars,
        Kind::Q => n_vars.saturating_sub(n),
    };
    (s + 1).checked_pow(free as u32)?.checked_mul(inj)
}

fn source(spec: &str, g: &Guard, n_vars: usize) -> Result<HomSource, Failure> {
    let h = HomSource::parse(spec)?;
    let kind = match h {
        HomSource::P { .. } => Kind::P,
        HomSource::Q { .. } => Kind::Q,
    };
    g.dim(spec, closed_form(kind, h.r(), h.n(), n_vars + 1))?;
    Ok(h)
}

fn character_json(c: &ClassFunction) -> Value {
    let m: Map<String, Value> = c
        .values()
        .iter()
        .map(|(mu, v)| (mu.to_arg(), json!(v.to_string())))
        .collect();
    Value::Object(m)
}

fn class_json(c: &KGenClass) -> Value {
    let m: BTreeMap<String, String> = c
        .terms()
        .iter()
        .map(|((tag, s, l), v)| (format!("{tag}_{s}{l}"), v.to_string()))
        .collect();
    json!(m)
}

fn partition(s: &str) -> Result<Partition, Failure> {
    Ok(s.parse::<Partition>()?)
}

fn dispatch(cli: &Cli) -> Outcome {
    let g = Guard {
        max_dim: cli.max_dim,
        n_cap: cli.n_cap,
    };
    match &cli.command {
        Command::Dim { kind, s, n, n_vars } => {
            let (s, n, nv) = (*s, *n, *n_vars);
            g.n(nv)?;
            if n > nv {
                return Err(Failure::Usage(format!("need n ≤ N, got n={n} N={nv}")));
            }
            let closed = closed_form(*kind, s, n, nv);
            g.dim("module", closed)?;
            let m = match kind {
                Kind::P => build_p(s, n, nv)?,
                Kind::Q => build_q(s, n, nv)?,
            };
            let name = match kind {
                Kind::P => "P",
                Kind::Q => "Q",
            };
            let mut r = Report::new("dim")
                .param("kind", name)
                .param("s", s)
                .param("n", n)
                .param("N", nv);
            r.dims = json!({ nv.to_string(): m.dim() });
            r.result = json!({
                "dimension": m.dim(),
                "closed_form": closed,
                "agree": closed == Some(m.dim()),
            });
            Ok(r)
        }
        Command::Hom { src, dst, n_vars } => {
            g.n(*n_vars)?;
            let (a, b) = (source(src, &g, *n_vars)?, source(dst, &g, *n_vars)?);
            let h = stable_hom_pq(&a, &b, *n_vars)?;
            let mut r = Report::new("hom").param("src", src.as_str()).param("dst", dst.as_str()).param("N", *n_vars);
            r.dims = json!({
                n_vars.to_string(): h.dim_at_n,
                (n_vars + 1).to_string(): h.dim_at_n_plus_1,
            });
            r.stable_dims = json!(h.dim_stable);
            r.result = json!({ "stable_dim": h.dim_stable });
            Ok(r)
        }
        Command::Ext {
            src,
            dst,
            n_vars,
            degrees,
            truncated,
        } => {
            g.n(*n_vars)?;
            let (a, b) = (source(src, &g, *n_vars)?, source(dst, &g, *n_vars)?);
            let mut r = Report::new("ext")
                .param("src", src.as_str())
                .param("dst", dst.as_str())
                .param("N", *n_vars)
                .param("degrees", *degrees)
                .param("truncated", *truncated);
            if *truncated {
                let max_i = degrees.saturating_sub(1);
                let e = ext_truncated(&a.build(*n_vars)?, &b.build(*n_vars)?, max_i)?;
                r.dims = json!(e);
                r.result = json!({ "ext_dims": e });
            } else {
                let HomSource::Q { r: s, n: m } = b else {
                    return Err(Failure::Usage("stable Ext needs a Q target; use --truncated for P".into()));
                };
                let e = ext_stable(a, s, m, *n_vars, *degrees)?;
                r.stable_dims = json!(e);
                r.result = json!({ "ext_dims": e });
            }
            Ok(r)
        }
        Command::Tor { s, r: r_max, n_vars } => {
            g.n(*n_vars)?;
            g.dim("Q_{s,1}", closed_form(Kind::Q, *s, 1, *n_vars).and_then(|d| d.checked_mul(*n_vars)))?;
            let q = build_q(*s, 1, *n_vars)?.character();
            let chars = tor_periodic(*s, *r_max, *n_vars)?;
            let mut r = Report::new("tor").param("s", *s).param("r", *r_max).param("N", *n_vars);
            r.dims = json!(chars.iter().map(character_dim).collect::<Vec<_>>());
            r.result = json!({
                "characters": chars.iter().map(character_json).collect::<Vec<_>>(),
                "q_character": character_json(&q),
                "matches_q": chars.iter().map(|c| *c == q).collect::<Vec<_>>(),
            });
            Ok(r)
        }
        Command::Kclass { op, s, lambda, mu } => {
            let l = partition(lambda)?;
            let mut r = Report::new("kclass").param("s", *s).param("lambda", l.to_arg());
            r.result = match op {
                KOp::P2q => {
                    r = r.param("op", "p2q");
                    class_json(&groth::p_class_in_q_basis(&l, *s)?)
                }
                KOp::Q2p => {
                    r = r.param("op", "q2p");
                    class_json(&groth::q_class_in_p_basis(&l, *s)?)
                }
                KOp::Mu => {
                    r = r.param("op", "mu");
                    let img = groth::mu_n(&KClassRep::irreducible(l), *s)?;
                    serde_json::to_value(&img).map_err(|e| Failure::Internal(e.to_string()))?
                }
                KOp::Rank => {
                    r = r.param("op", "rank");
                    let e = groth::rank_expand(&KGenClass::basis(Tag::P, *s, l))?;
                    serde_json::to_value(&e).map_err(|e| Failure::Internal(e.to_string()))?
                }
                KOp::Tensor => {
                    let m = partition(mu.as_deref().ok_or_else(|| Failure::Usage("tensor needs --mu".into()))?)?;
                    r = r.param("op", "tensor").param("mu", m.to_arg());
                    let u = groth::tensor_induced_decompose(&KClassRep::irreducible(l), &KClassRep::irreducible(m))?;
                    let m: Map<String, Value> = u
                        .iter()
                        .map(|(k, c)| (k.to_string(), serde_json::to_value(c).unwrap_or(Value::Null)))
                        .collect();
                    Value::Object(m)
                }
            };
            Ok(r)
        }
        Command::Cas {
            op,
            m,
            n,
            s,
            n_vars,
            f,
            g: gm,
        } => {
            let mut r = Report::new("cas");
            match op {
                CasOp::HomDim => {
                    r = r.param("op", "hom-dim").param("m", *m).param("n", *n).param("s", *s);
                    let d = cas_cat::hom_dimension(*m, *n, *s)?;
                    r.dims = json!(d);
                    r.result = json!({ "hom_dim": d });
                }
                CasOp::Injective => {
                    r = r.param("op", "injective").param("m", *m).param("n", *n).param("s", *s);
                    g.dim("I_{s,n}", cas_cat::hom_dimension(*m, *n, *s).ok())?;
                    let i = cas_cat::injective_i(*s, *n, *m)?;
                    r.dims = json!(i.dim);
                    r.result = serde_json::to_value(&i).map_err(|e| Failure::Internal(e.to_string()))?;
                }
                CasOp::Compare => {
                    let nv = n_vars.unwrap_or(n + m + 1);
                    g.n(nv)?;
                    r = r.param("op", "compare").param("m", *m).param("n", *n).param("s", *s).param("N", nv);
                    let c = cas_cat::compare_with_p_homs(*m, *n, *s, nv)?;
                    r.dims = json!(c.cas_dim);
                    r.stable_dims = json!(c.stable_p_dim);
                    r.result = serde_json::to_value(&c).map_err(|e| Failure::Internal(e.to_string()))?;
                }
                CasOp::Compose => {
                    let need = |x: &Option<String>, name: &str| {
                        x.clone().ok_or_else(|| Failure::Usage(format!("compose needs --{name}")))
                    };
                    let fm = CasMorphism::from_json(&need(f, "f")?)?;
                    let gm = CasMorphism::from_json(&need(gm, "g")?)?;
                    r = r.param("op", "compose");
                    let h = cas_cat::compose(&gm, &fm)?;
                    let v: Value = serde_json::from_str(&h.to_json()?).map_err(|e| Failure::Internal(e.to_string()))?;
                    r.result = v;
                }
            }
            Ok(r)
        }
        Command::Verify { .. } => unreachable!("handled separately"),
    }
}

fn print_table(r: &Report) {
    println!("operation: {}", r.operation);
    for (k, v) in &r.parameters {
        println!("  {k}: {v}");
    }
    if !r.dims.is_null() {
        println!("dims: {}", r.dims);
    }
    if !r.stable_dims.is_null() {
        println!("stable dims: {}", r.stable_dims);
    }
    match &r.result {
        Value::Object(m) => {
            for (k, v) in m {
                println!("{k}: {v}");
            }
        }
        Value::Null => {}
        v => println!("result: {v}"),
    }
}

fn run_verify(cli: &Cli, suite: &str, max_n: Option<usize>, jobs: usize) -> ExitCode {
    let outcomes = match verify::run(suite, max_n, jobs) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    for o in &outcomes {
        match cli.format {
            Format::Json => {
                let mut v = serde_json::to_value(o).unwrap_or(Value::Null);
                if cli.no_runtime {
                    if let Value::Object(m) = &mut v {
                        m.remove("runtime_ms");
                    }
                }
                println!("{v}");
            }
            Format::Table => println!(
                "{} {}: {} expected {} got {}",
                if o.passed { "ok  " } else { "FAIL" },
                o.suite,
                o.name,
                o.expected,
                o.got
            ),
        }
    }
    if matches!(cli.format, Format::Table) {
        println!("{} checks, {failed} failed", outcomes.len());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Verify { suite, max_n, jobs } = &cli.command {
        return run_verify(&cli, suite, *max_n, *jobs);
    }
    let (out, ms) = timed(|| dispatch(&cli));
    match out {
        Ok(mut r) => {
            r.runtime_ms = ms;
            match cli.format {
                Format::Json => {
                    let v = if cli.no_runtime {
                        r.payload()
                    } else {
                        serde_json::to_value(&r).unwrap_or(Value::Null)
                    };
                    println!("{v}");
                }
                Format::Table => print_table(&r),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}
