mod cache;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use bmslab::exactmath::rat::parse_rat;
use bmslab::fockspace::bms_fock;
use bmslab::identities;
use bmslab::permoracle::{
    bms_connected_bruteforce, genus0_formula, unstable_onepoint, unstable_twopoint, EnumBudget, Partition,
};
use bmslab::quasipoly::{fit_poly, FIT_SIZE_CAP};
use bmslab::report::CheckReport;
use bmslab::spectral::{w_check, xi_from_poly, xi_series};
use bmslab::toporec::{expand_and_compare, Recursion, DEFAULT_BUDGET};
use bmslab::{Error, Rat, UPoly};

use cache::{Cache, CacheEntry, CacheKey};

#[derive(Parser)]
#[command(name = "bmslab", version, about = "Exact BMS numbers, identity checks and spectral-curve data")]
struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    /// JSON-lines result cache
    #[arg(long, global = true, env = "BMSLAB_CACHE")]
    cache_path: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Brute,
    Fock,
    Genus0,
    Unstable,
}

impl Route {
    fn name(self) -> &'static str {
        match self {
            Route::Brute => "brute",
            Route::Fock => "fock",
            Route::Genus0 => "genus0",
            Route::Unstable => "unstable",
        }
    }

    fn parse(s: &str) -> Option<Route> {
        Route::from_str(s, true).ok()
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// One BMS number by the chosen route
    Compute {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        g: u32,
        /// parts, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        mu: Vec<u32>,
        #[arg(long, value_enum, default_value = "fock")]
        route: Route,
        /// run every applicable route and require agreement
        #[arg(long)]
        cross_check: bool,
        /// recompute cached values and compare
        #[arg(long)]
        verify_cache: bool,
    },
    /// b°_{g,μ} for all μ with n parts, each at most mu_max
    Table {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        mu_max: u32,
        #[arg(long, value_enum, default_value = "fock")]
        route: Route,
    },
    /// Quasi-polynomial form of b°_{g,μ}
    Fit {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
    /// ξ-function expansions, or the Ξ^d element with prescribed coefficient polynomial
    Xi {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 12)]
        order: usize,
        #[arg(long)]
        d: Option<u32>,
        /// coefficients of P from the constant term up, comma separated rationals
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        poly: Option<Vec<String>>,
    },
    /// Reassemble b°_{g,μ} from W_{g,n}
    WCheck {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        mu_max: u32,
    },
    /// Topological recursion (m = 2) against the Fock route
    TrCheck {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        mu_max: u32,
    },
    /// The full identity suite as a JSON report
    Identities,
    /// Cache maintenance
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Recompute every cached value
    Verify,
    /// Keep only the latest entry per key
    Gc,
}

enum Fail {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) | Error::Parse(_) => Fail::Usage(e.to_string()),
            _ => Fail::Mismatch(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Mismatch(format!("cache I/O: {e}"))
    }
}

type Out = Result<(), Fail>;

fn route_value(route: Route, m: u32, g: u32, mu: &Partition) -> Result<Rat, Fail> {
    match route {
        Route::Brute => Ok(bms_connected_bruteforce(m, g, mu, &EnumBudget::default_for(m))?),
        Route::Fock => Ok(bms_fock(m, g, mu)?),
        Route::Genus0 => {
            if g != 0 {
                return Err(Fail::Usage("the genus0 route needs --g 0".into()));
            }
            Ok(genus0_formula(m, mu)?)
        }
        Route::Unstable => match (g, mu.parts()) {
            (0, [k]) => Ok(unstable_onepoint(m, *k)?),
            (0, [k1, k2]) => Ok(unstable_twopoint(m, *k1, *k2)?),
            _ => Err(Fail::Usage("the unstable route needs --g 0 and one or two parts".into())),
        },
    }
}

fn applicable(g: u32, mu: &Partition) -> Vec<Route> {
    let mut v = vec![Route::Fock, Route::Brute];
    if g == 0 {
        v.push(Route::Genus0);
        if mu.len() <= 2 {
            v.push(Route::Unstable);
        }
    }
    v
}

fn partition(mu: &[u32]) -> Result<Partition, Fail> {
    if mu.is_empty() || mu.contains(&0) {
        return Err(Fail::Usage("--mu needs positive parts".into()));
    }
    Ok(Partition::of(mu))
}

struct Ctx {
    json: bool,
    cache: Option<Cache>,
}

fn print_report(r: &CheckReport) {
    println!("{}", serde_json::to_string_pretty(r).expect("reports serialize"));
}

fn report_outcome(r: &CheckReport) -> Out {
    if r.passed() {
        Ok(())
    } else {
        Err(Fail::Mismatch(format!("{}: {} failure(s)", r.name, r.failures.len())))
    }
}

fn cmd_compute(ctx: &Ctx, m: u32, g: u32, mu: &[u32], route: Route, cross_check: bool, verify_cache: bool) -> Out {
    let p = partition(mu)?;
    let key = CacheKey { route: route.name().into(), m, g, mu: p.parts().to_vec() };
    let cached = match &ctx.cache {
        Some(c) => c.get(&key)?,
        None => None,
    };
    let value = match &cached {
        Some(e) if !verify_cache => parse_rat(&e.value)?,
        _ => {
            let v = route_value(route, m, g, &p)?;
            if let Some(e) = &cached {
                if e.value != v.to_string() {
                    return Err(Fail::Mismatch(format!("cached {} but recomputed {v}", e.value)));
                }
            } else if let Some(c) = &ctx.cache {
                c.append(&CacheEntry::new(key, v.to_string()))?;
            }
            v
        }
    };
    let mut routes = BTreeMap::new();
    if cross_check {
        for r in applicable(g, &p) {
            match route_value(r, m, g, &p) {
                Ok(v) => {
                    routes.insert(r.name(), v.to_string());
                }
                Err(Fail::Mismatch(msg)) if msg.contains("budget") => {
                    routes.insert(r.name(), "skipped: over budget".into());
                }
                Err(e) => return Err(e),
            }
        }
    }
    if ctx.json {
        let mut out = json!({"route": route.name(), "m": m, "g": g, "mu": p.parts(), "value": value.to_string()});
        if cross_check {
            out["routes"] = json!(routes);
        }
        println!("{out}");
    } else {
        println!("{value}");
        for (r, v) in &routes {
            eprintln!("{r}: {v}");
        }
    }
    let disagree = routes.values().any(|v| !v.starts_with("skipped") && *v != value.to_string());
    if disagree {
        return Err(Fail::Mismatch("routes disagree".into()));
    }
    Ok(())
}

fn nondecreasing(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in out {
            for k in v.last().copied().unwrap_or(1)..=max {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn cmd_table(ctx: &Ctx, m: u32, g: u32, n: usize, mu_max: u32, route: Route) -> Out {
    if n == 0 || mu_max == 0 {
        return Err(Fail::Usage("--n and --mu-max must be positive".into()));
    }
    let rows: Vec<Result<(Vec<u32>, Rat), Fail>> = nondecreasing(n, mu_max)
        .into_par_iter()
        .map(|mu| {
            let v = route_value(route, m, g, &Partition::of(&mu))?;
            Ok((mu, v))
        })
        .collect();
    let rows: Vec<(Vec<u32>, Rat)> = rows.into_iter().collect::<Result<_, _>>()?;
    if ctx.json {
        let v: Vec<_> = rows.iter().map(|(mu, v)| json!({"mu": mu, "value": v.to_string()})).collect();
        println!("{}", json!({"m": m, "g": g, "route": route.name(), "rows": v}));
    } else {
        println!("mu,value");
        for (mu, v) in rows {
            let mu: Vec<String> = mu.iter().map(|x| x.to_string()).collect();
            println!("{},{v}", mu.join(" "));
        }
    }
    Ok(())
}

fn cmd_fit(m: u32, g: u32, n: usize) -> Out {
    let form = fit_poly(m, g, n, 1, None, FIT_SIZE_CAP)?;
    println!("{}", serde_json::to_string_pretty(&form).expect("forms serialize"));
    Ok(())
}

fn cmd_xi(ctx: &Ctx, m: u32, order: usize, d: Option<u32>, poly: Option<Vec<String>>) -> Out {
    match (d, poly) {
        (Some(d), Some(c)) => {
            let c = c.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
            let e = xi_from_poly(m, d, &UPoly::from_coeffs(c))?;
            println!("{}", serde_json::to_string_pretty(&e).expect("elements serialize"));
        }
        (None, None) => {
            let mut all = Vec::new();
            for i in 0..m {
                all.push(xi_series(m, i, order)?);
            }
            if ctx.json {
                let v: Vec<Vec<String>> = all.iter().map(|s| s.coeffs().iter().map(|c| c.to_string()).collect()).collect();
                println!("{}", json!({"m": m, "order": order, "xi": v}));
            } else {
                for (i, s) in all.iter().enumerate() {
                    println!("xi_{i} = {s}");
                }
            }
        }
        _ => return Err(Fail::Usage("--d and --poly go together".into())),
    }
    Ok(())
}

fn cmd_wcheck(m: u32, g: u32, n: usize, mu_max: u32) -> Out {
    let form = fit_poly(m, g, n, 1, None, FIT_SIZE_CAP)?;
    let r = w_check(&form, mu_max)?;
    print_report(&r);
    report_outcome(&r)
}

fn cmd_trcheck(g: u32, n: usize, mu_max: u32) -> Out {
    if mu_max == 0 {
        return Err(Fail::Usage("--mu-max must be positive".into()));
    }
    let chi = (2 * g as i64 - 2 + n as i64).max(0) as u32;
    let mut rec = Recursion::new(DEFAULT_BUDGET.max(chi))?;
    let c = expand_and_compare(&mut rec, g, n, mu_max)?;
    println!("{}", serde_json::to_string_pretty(&c.rows).expect("rows serialize"));
    if c.all_equal() {
        Ok(())
    } else {
        Err(Fail::Mismatch("recursion and Fock route disagree".into()))
    }
}

fn cmd_identities() -> Out {
    let r = identities::run_all();
    println!("{}", serde_json::to_string_pretty(&r).expect("reports serialize"));
    if r.all_passed {
        Ok(())
    } else {
        let failed: Vec<&str> = r.identities.iter().filter(|e| !e.passed).map(|e| e.name.as_str()).collect();
        Err(Fail::Mismatch(format!("failed: {}", failed.join("; "))))
    }
}

fn cmd_cache(ctx: &Ctx, action: CacheCmd) -> Out {
    let Some(c) = &ctx.cache else {
        return Err(Fail::Usage("no cache: set --cache-path or BMSLAB_CACHE".into()));
    };
    match action {
        CacheCmd::Verify => {
            let loaded = c.load()?;
            let mut bad = Vec::new();
            for e in &loaded.entries {
                let Some(route) = Route::parse(&e.key.route) else {
                    bad.push(format!("unknown route {}", e.key.route));
                    continue;
                };
                let v = route_value(route, e.key.m, e.key.g, &partition(&e.key.mu)?)?;
                if v.to_string() != e.value {
                    bad.push(format!("{:?}: cached {}, recomputed {v}", e.key, e.value));
                }
            }
            println!(
                "{}",
                json!({"path": c.path(), "entries": loaded.entries.len(), "unparsable": loaded.bad_lines, "mismatches": bad})
            );
            if !bad.is_empty() || loaded.bad_lines > 0 {
                return Err(Fail::Mismatch("cache verification failed".into()));
            }
        }
        CacheCmd::Gc => {
            let (kept, removed) = c.gc()?;
            println!("{}", json!({"path": c.path(), "kept": kept, "removed": removed}));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if rayon::ThreadPoolBuilder::new().num_threads(j).build_global().is_err() {
            eprintln!("error: could not configure {j} worker threads");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx { json: cli.json, cache: cli.cache_path.as_ref().map(Cache::open) };
    let out = match cli.cmd {
        Cmd::Compute { m, g, mu, route, cross_check, verify_cache } => {
            cmd_compute(&ctx, m, g, &mu, route, cross_check, verify_cache)
        }
        Cmd::Table { m, g, n, mu_max, route } => cmd_table(&ctx, m, g, n, mu_max, route),
        Cmd::Fit { m, g, n } => cmd_fit(m, g, n),
        Cmd::Xi { m, order, d, poly } => cmd_xi(&ctx, m, order, d, poly),
        Cmd::WCheck { m, g, n, mu_max } => cmd_wcheck(m, g, n, mu_max),
        Cmd::TrCheck { g, n, mu_max } => cmd_trcheck(g, n, mu_max),
        Cmd::Identities => cmd_identities(),
        Cmd::Cache { action } => cmd_cache(&ctx, action),
    };
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
