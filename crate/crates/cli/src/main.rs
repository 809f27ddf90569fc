use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qav_core::currents::{g_identities, k_modes_k2_residuals, RELATIONS};
use qav_core::expr::parse_poly;
use qav_core::morphisms::xi;
use qav_core::presentations::DrinfeldLetters;
use qav_core::rewrite::complete_with;
use qav_core::rootvectors::Family;
use qav_core::verify::{
    check, exit_code, morph_grid, report, run_checks, run_suite_in, CheckReport, Context, Params, Suite, SuiteReport,
    Verdict, VerifyConfig, CATALOG, MAPS,
};
use qav_core::{build_drinfeld, build_uq, build_uq_tensor_square, ModeWindow, Presentation, RewriteBasis};

const USAGE_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "qav", version, about = "Exact rewriting and identity checks for a sign-twisted quantum affine sl2")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Preset {
    Uq,
    Uq2,
    Drinfeld,
}

#[derive(Args, Clone)]
struct Common {
    /// Completion degree.
    #[arg(long)]
    maxdeg: Option<usize>,
    /// Mode window: x+-(k) for |k| <= K.
    #[arg(long = "K", default_value_t = 2)]
    k: i64,
    /// Mode window: a(l) for 0 < |l| <= L.
    #[arg(long = "L", default_value_t = 2)]
    l: i64,
    /// Write a JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Serre images and n = 3 grids.
    #[arg(long)]
    extended: bool,
}

impl Common {
    fn window(&self) -> Result<ModeWindow> {
        Ok(ModeWindow::new(self.k, self.l)?)
    }

    fn degree(&self, default: usize) -> Result<usize> {
        match self.maxdeg {
            Some(0) => bail!("--maxdeg must be positive"),
            Some(d) => Ok(d),
            None if self.extended => Ok(VerifyConfig::EXTENDED_DEGREE),
            None => Ok(default),
        }
    }

    fn context(&self) -> Result<Context> {
        let d = self.degree(VerifyConfig::DEFAULT_DEGREE)?;
        Ok(Context::new(VerifyConfig::new(d, self.window()?, self.extended)))
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Complete a presentation and persist the basis.
    Build {
        #[arg(long, value_enum, default_value = "uq")]
        preset: Preset,
        /// Basis file to write.
        #[arg(long)]
        basis: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the normal form of an expression.
    Reduce {
        #[arg(long, value_enum, default_value = "uq")]
        preset: Preset,
        #[arg(long)]
        expr: String,
        /// Use a saved basis instead of completing.
        #[arg(long)]
        basis: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Print root vectors.
    Roots {
        /// Ealpha1, Ealpha2, Falpha1, Falpha2, Edelta, Fdelta, PsiA or PsiAneg.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Print the element itself, not only its size.
        #[arg(long)]
        print: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Apply a morphism or check that it respects the relations.
    Map {
        /// Map to apply: T1, T2, T1inv, T2inv, Phi, Omega, Delta, S, Psi, Xi.
        #[arg(long, requires = "apply")]
        name: Option<String>,
        #[arg(long)]
        apply: Option<String>,
        /// Map whose relation images to check.
        #[arg(long, conflicts_with = "name")]
        verify: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the current relations with the mode relations.
    Currents {
        /// C1..C8, g-identities, k-modes or all.
        #[arg(long, default_value = "all")]
        check: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite or a single catalog check.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// A single catalog id instead of a suite.
        #[arg(long)]
        check: Option<String>,
        /// Parameters of --check, as k=v,k=v.
        #[arg(long, default_value = "")]
        params: String,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Build { preset, basis, common } => build(preset, basis.as_deref(), &common),
        Cmd::Reduce { preset, expr, basis, common } => reduce(preset, &expr, basis.as_deref(), &common),
        Cmd::Roots { family, n, print, common } => roots(family.as_deref(), n, print, &common),
        Cmd::Map { name, apply, verify, common } => match (name, apply, verify) {
            (Some(n), Some(x), None) => map_apply(&n, &x, &common),
            (None, None, Some(v)) => map_verify(&v, &common),
            _ => bail!("use either --name M --apply EXPR or --verify M"),
        },
        Cmd::Currents { check, common } => currents(&check, &common),
        Cmd::Verify { suite, check, params, common } => verify(&suite, check.as_deref(), &params, &common),
    }
}

fn presentation(preset: Preset, c: &Common) -> Result<Presentation> {
    Ok(match preset {
        Preset::Uq => build_uq(),
        Preset::Uq2 => build_uq_tensor_square(),
        Preset::Drinfeld => build_drinfeld(c.window()?),
    })
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    if let Some(p) = path {
        let s = serde_json::to_string_pretty(value)? + "\n";
        std::fs::write(p, s).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn complete_preset(p: &Presentation, c: &Common, default: usize) -> Result<RewriteBasis> {
    let d = c.degree(default)?;
    let (b, _) = complete_with(p, d, Default::default())?;
    Ok(b)
}

#[derive(Serialize)]
struct BuildReport<'a> {
    preset: &'a str,
    presentation_hash: String,
    completion_degree: usize,
    rules: usize,
    basis_hash: String,
}

fn preset_name(p: Preset) -> &'static str {
    match p {
        Preset::Uq => "uq",
        Preset::Uq2 => "uq2",
        Preset::Drinfeld => "drinfeld",
    }
}

fn build(preset: Preset, out: Option<&Path>, c: &Common) -> Result<i32> {
    let p = presentation(preset, c)?;
    let b = complete_preset(&p, c, 8)?;
    if let Some(path) = out {
        b.save(path).with_context(|| format!("writing {}", path.display()))?;
    }
    let rep = BuildReport {
        preset: preset_name(preset),
        presentation_hash: p.hash(),
        completion_degree: b.completion_degree,
        rules: b.len(),
        basis_hash: b.hash(),
    };
    println!("{}: {} rules at degree {}, basis hash {}", rep.preset, rep.rules, rep.completion_degree, rep.basis_hash);
    write_json(c.json.as_deref(), &rep)?;
    Ok(0)
}

fn load_or_complete(preset: Preset, file: Option<&Path>, c: &Common, default: usize) -> Result<(Presentation, RewriteBasis)> {
    let p = presentation(preset, c)?;
    let b = match file {
        Some(path) => {
            let b = RewriteBasis::load(path).with_context(|| format!("loading {}", path.display()))?;
            if b.presentation_hash != p.hash() {
                bail!("{} was built from a different presentation than --preset {}", path.display(), preset_name(preset));
            }
            b
        }
        None => complete_preset(&p, c, default)?,
    };
    Ok((p, b))
}

#[derive(Serialize)]
struct ReduceReport {
    expr: String,
    normal_form: String,
    completion_degree: usize,
    basis_hash: String,
}

fn reduce(preset: Preset, expr: &str, file: Option<&Path>, c: &Common) -> Result<i32> {
    let (p, b) = load_or_complete(preset, file, c, 6)?;
    if preset == Preset::Drinfeld {
        let d = DrinfeldLetters::of(&p.alphabet, c.window()?);
        if qav_core::currents::basis_degenerate(&b, &d) {
            eprintln!("warning: this basis collapses the mode algebra; normal forms against it are not meaningful");
        }
    }
    let x = parse_poly(expr, &p.alphabet)?;
    let nf = b.reduce(&x).to_string_in(&p.alphabet);
    println!("{nf}");
    write_json(
        c.json.as_deref(),
        &ReduceReport { expr: expr.to_string(), normal_form: nf, completion_degree: b.completion_degree, basis_hash: b.hash() },
    )?;
    Ok(0)
}

#[derive(Serialize)]
struct RootEntry {
    family: String,
    n: usize,
    terms: usize,
    value: Option<String>,
}

fn roots(family: Option<&str>, n: Option<usize>, print: bool, c: &Common) -> Result<i32> {
    let ctx = c.context()?;
    let families: Vec<Family> = match family {
        Some(f) => vec![Family::parse(f)?],
        None => Family::ALL.to_vec(),
    };
    let need = n.unwrap_or(0).max(ctx.cfg.table_size());
    let basis = ctx.basis().map_err(|e| anyhow!(e))?.clone();
    let table = qav_core::rootvectors::RootTable::build(&ctx.uq, Arc::clone(&basis), need)?;
    let mut out = Vec::new();
    for f in families {
        let ns: Vec<usize> = match n {
            Some(n) => vec![n],
            None => (f.first()..=need).collect(),
        };
        for k in ns {
            let x = table.get(f, k)?;
            let s = x.to_string_in(&ctx.uq.alphabet);
            if print {
                println!("{}({k}) = {s}", f.name());
            } else {
                println!("{}({k}): {} terms", f.name(), x.len());
            }
            out.push(RootEntry { family: f.name().to_string(), n: k, terms: x.len(), value: print.then_some(s) });
        }
    }
    write_json(c.json.as_deref(), &out)?;
    Ok(0)
}

#[derive(Serialize)]
struct ApplyReport {
    map: String,
    input: String,
    image: String,
    completion_degree: usize,
    basis_hash: String,
}

fn map_apply(name: &str, expr: &str, c: &Common) -> Result<i32> {
    let ctx = c.context()?;
    let (m, basis, source, target) = match name {
        "Psi" => {
            let m = ctx.psi().map_err(|e| anyhow!(e))?.clone();
            (m, ctx.basis().map_err(|e| anyhow!(e))?.clone(), &ctx.drinfeld.alphabet, &ctx.uq.alphabet)
        }
        "Xi" => {
            // the mode algebra has no usable basis; report the free image
            let m = xi(&ctx.uq, &ctx.drinfeld);
            let x = parse_poly(expr, &ctx.uq.alphabet)?;
            let img = m.apply(&x)?.to_string_in(&ctx.drinfeld.alphabet);
            println!("{img}");
            let rep = ApplyReport {
                map: name.into(),
                input: expr.into(),
                image: img,
                completion_degree: 0,
                basis_hash: String::new(),
            };
            write_json(c.json.as_deref(), &rep)?;
            return Ok(0);
        }
        n if MAPS.contains(&n) => {
            let maps = ctx.maps().map_err(|e| anyhow!(e))?;
            let m = maps[n].clone();
            let b = if n == "Delta" { ctx.basis2() } else { ctx.basis() };
            let target = if n == "Delta" { &ctx.uq2().alphabet } else { &ctx.uq.alphabet };
            (m, b.map_err(|e| anyhow!(e))?.clone(), &ctx.uq.alphabet, target)
        }
        _ => bail!("unknown map `{name}`; known: {}, Psi, Xi", MAPS.join(", ")),
    };
    let x = parse_poly(expr, source)?;
    let img = m.apply_reduced(&x, &basis)?.to_string_in(target);
    println!("{img}");
    let rep = ApplyReport {
        map: name.into(),
        input: expr.into(),
        image: img,
        completion_degree: basis.completion_degree,
        basis_hash: basis.hash(),
    };
    write_json(c.json.as_deref(), &rep)?;
    Ok(0)
}

fn print_checks(checks: &[CheckReport]) {
    for r in checks {
        println!("{}", r.line());
    }
}

fn finish(rep: &SuiteReport, c: &Common) -> Result<i32> {
    print_checks(&rep.checks);
    let s = &rep.summary;
    println!(
        "{}: {} pass, {} fail, {} inconclusive{}",
        rep.suite,
        s.pass,
        s.fail,
        s.inconclusive,
        if rep.incomplete { " (incomplete)" } else { "" }
    );
    if let Some(p) = &c.json {
        std::fs::write(p, rep.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(rep.exit_code())
}

fn map_verify(name: &str, c: &Common) -> Result<i32> {
    let ctx = c.context()?;
    let todo: Vec<(&str, Params)> = match name {
        "Psi" => ctx
            .drinfeld
            .labels
            .iter()
            .map(|l| {
                let mut p = Params::default();
                p.set_text("relation", l);
                ("PSI_HOM", p)
            })
            .collect(),
        n if MAPS.contains(&n) => morph_grid(n, &ctx.uq.labels, true).into_iter().map(|p| ("MORPH", p)).collect(),
        _ => bail!("unknown map `{name}`; known: {}, Psi", MAPS.join(", ")),
    };
    let checks = run_checks(&ctx, &todo)?;
    finish(&report(&format!("map {name}"), &ctx, checks), c)
}

#[derive(Serialize)]
struct Named {
    name: String,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<String>,
}

#[derive(Serialize)]
struct CurrentsReport {
    window: [i64; 2],
    g_identities: Vec<Named>,
    k_modes: Vec<Named>,
    relations: Option<SuiteReport>,
}

fn currents(which: &str, c: &Common) -> Result<i32> {
    let ctx = c.context()?;
    let mut rep = CurrentsReport { window: [c.k, c.l], g_identities: Vec::new(), k_modes: Vec::new(), relations: None };
    let mut verdicts = Vec::new();
    let all = which == "all";
    if all || which == "g-identities" {
        for g in g_identities() {
            println!("{} {}", if g.holds { "pass" } else { "fail" }, g.name);
            verdicts.push(if g.holds { Verdict::Pass } else { Verdict::Fail });
            rep.g_identities.push(Named { name: g.name, holds: g.holds, residual: None });
        }
    }
    if all || which == "k-modes" {
        // k2 against the modes k+-(m), using only the k2 a(l) relations
        let d = DrinfeldLetters::of(&ctx.drinfeld.alphabet, ctx.cfg.window);
        let keep = |l: &str| l.starts_with("D2 k2") || l.starts_with("D1 inv");
        let mut sub = ctx.drinfeld.clone();
        let kept: Vec<usize> = (0..sub.labels.len()).filter(|&i| keep(&sub.labels[i])).collect();
        sub.relations = kept.iter().map(|&i| sub.relations[i].clone()).collect();
        sub.labels = kept.iter().map(|&i| sub.labels[i].clone()).collect();
        let b = complete_with(&sub, 3, Default::default())?.0;
        for (label, r) in k_modes_k2_residuals(&d, &b)? {
            let holds = r.is_zero();
            let name = format!("k2 {label} = (-1)^m {label} k2");
            println!("{} {name}", if holds { "pass" } else { "fail" });
            verdicts.push(if holds { Verdict::Pass } else { Verdict::Fail });
            let residual = (!holds).then(|| r.to_string_in(&ctx.drinfeld.alphabet));
            rep.k_modes.push(Named { name, holds, residual });
        }
    }
    let ids: Vec<&str> = if all {
        RELATIONS.to_vec()
    } else if RELATIONS.contains(&which) {
        vec![which]
    } else if which == "g-identities" || which == "k-modes" {
        Vec::new()
    } else {
        bail!("unknown current check `{which}`; use C1..C8, g-identities, k-modes or all");
    };
    if !ids.is_empty() {
        let todo: Vec<(&str, Params)> = ids
            .iter()
            .map(|r| {
                let mut p = Params::default();
                p.set_text("relation", r);
                ("CUR", p)
            })
            .collect();
        let checks = run_checks(&ctx, &todo)?;
        for r in &checks {
            println!("{}", r.line());
            for n in &r.notes {
                println!("  {n}");
            }
            verdicts.push(r.verdict);
        }
        rep.relations = Some(report("currents", &ctx, checks));
    }
    write_json(c.json.as_deref(), &rep)?;
    Ok(exit_code(verdicts, ctx.had_failures()))
}

fn verify(suite: &str, id: Option<&str>, params: &str, c: &Common) -> Result<i32> {
    let ctx = c.context()?;
    if let Some(id) = id {
        if !CATALOG.contains(&id) {
            bail!("unknown check id `{id}`; known: {}", CATALOG.join(", "));
        }
        let r = check(&ctx, id, &Params::parse(params)?)?;
        return finish(&report(id, &ctx, vec![r]), c);
    }
    let s: Suite = suite.parse()?;
    finish(&run_suite_in(&ctx, s)?, c)
}
