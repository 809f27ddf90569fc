//! Named, parameterized checks of the algebra's identities, suite
//! orchestration and report aggregation.

mod catalog;
mod context;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::currents::{compare_c_vs_d, CoeffVerdict, CurrentVerdict};
use crate::error::{QavError, Result};
use crate::freealg::{Alphabet, NCPoly};
use crate::rewrite::RewriteBasis;

pub use catalog::{current_grid, ef_degree, map_need, morph_grid, root_grid, suite_ids, Difference, EfDeg, CATALOG, MAPS};
pub use context::{Context, VerifyConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

/// Check parameters by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params(pub BTreeMap<String, ParamValue>);

impl Params {
    pub fn set_int(&mut self, k: &str, v: i64) {
        self.0.insert(k.to_string(), ParamValue::Int(v));
    }

    pub fn set_text(&mut self, k: &str, v: &str) {
        self.0.insert(k.to_string(), ParamValue::Text(v.to_string()));
    }

    pub fn int(&self, k: &str) -> Result<i64> {
        match self.0.get(k) {
            Some(ParamValue::Int(n)) => Ok(*n),
            Some(ParamValue::Text(s)) => {
                s.parse().map_err(|_| QavError::OutOfRange(format!("parameter `{k}` must be an integer, got `{s}`")))
            }
            None => Err(QavError::OutOfRange(format!("missing parameter `{k}`"))),
        }
    }

    pub fn text(&self, k: &str) -> Result<&str> {
        match self.0.get(k) {
            Some(ParamValue::Text(s)) => Ok(s),
            Some(ParamValue::Int(_)) => Err(QavError::OutOfRange(format!("parameter `{k}` must be text"))),
            None => Err(QavError::OutOfRange(format!("missing parameter `{k}`"))),
        }
    }

    /// Parses `k=v,k=v`; integer-looking values become integers.
    pub fn parse(s: &str) -> Result<Params> {
        let mut p = Params::default();
        for kv in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| QavError::OutOfRange(format!("parameter `{kv}` is not of the form key=value")))?;
            match v.trim().parse::<i64>() {
                Ok(n) => p.set_int(k.trim(), n),
                Err(_) => p.set_text(k.trim(), v.trim()),
            }
        }
        Ok(p)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.join(",")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub params: Params,
    pub verdict: Verdict,
    /// Normal form of `LHS - RHS`; `"0"` on a pass.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    /// What would be needed to decide an inconclusive check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shortfall: Option<String>,
    pub basis_degree: usize,
    pub basis_hash: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    /// Wall time; kept out of JSON so reports are reproducible byte for byte.
    #[serde(skip)]
    pub timing: Duration,
}

impl CheckReport {
    fn missing(id: &str, params: &Params, why: String) -> Self {
        CheckReport {
            id: id.to_string(),
            params: params.clone(),
            verdict: Verdict::Inconclusive,
            residual: None,
            shortfall: Some(format!("prerequisite unavailable: {why}")),
            basis_degree: 0,
            basis_hash: String::new(),
            notes: Vec::new(),
            timing: Duration::ZERO,
        }
    }

    /// Verdict from a normal form and the degree it needed.
    fn judge(id: &str, params: &Params, nf: &NCPoly, need: EfDeg, basis: &RewriteBasis, alpha: &Alphabet) -> Self {
        let d = basis.completion_degree;
        let (verdict, shortfall) = if nf.is_zero() {
            (Verdict::Pass, None)
        } else if need.top() <= d {
            (Verdict::Fail, None)
        } else {
            (
                Verdict::Inconclusive,
                Some(format!(
                    "words with {} e-letters and {} f-letters were rewritten; the basis is complete only to degree {d}",
                    need.e, need.f
                )),
            )
        };
        CheckReport {
            id: id.to_string(),
            params: params.clone(),
            verdict,
            residual: Some(nf.to_string_in(alpha)),
            shortfall,
            basis_degree: d,
            basis_hash: basis.hash(),
            notes: Vec::new(),
            timing: Duration::ZERO,
        }
    }

    pub fn line(&self) -> String {
        let mut s = format!("{} {} {}", self.verdict, self.id, self.params.describe());
        if self.verdict != Verdict::Pass {
            if let Some(r) = &self.residual {
                s.push_str(&format!(" residual: {r}"));
            }
            if let Some(x) = &self.shortfall {
                s.push_str(&format!(" ({x})"));
            }
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Structural,
    Rootvector,
    Drinfeld,
    Currents,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Structural => "structural",
            Suite::Rootvector => "rootvector",
            Suite::Drinfeld => "drinfeld",
            Suite::Currents => "currents",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = QavError;
    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "structural" => Suite::Structural,
            "rootvector" => Suite::Rootvector,
            "drinfeld" => Suite::Drinfeld,
            "currents" => Suite::Currents,
            "all" => Suite::All,
            _ => return Err(QavError::OutOfRange(format!("unknown suite `{s}`"))),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    /// Suite name, or what else produced the checks.
    pub suite: String,
    pub max_degree: usize,
    pub window: [i64; 2],
    pub extended: bool,
    pub basis_hashes: BTreeMap<String, String>,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
    /// A prerequisite could not be built within the budget.
    pub incomplete: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// 0 all pass, 1 any failure, 2 inconclusive or incomplete.
    pub fn exit_code(&self) -> i32 {
        exit_code(self.checks.iter().map(|c| c.verdict), self.incomplete)
    }
}

pub fn exit_code(verdicts: impl IntoIterator<Item = Verdict>, incomplete: bool) -> i32 {
    let mut worst = 0;
    for v in verdicts {
        worst = worst.max(match v {
            Verdict::Pass => 0,
            Verdict::Inconclusive => 2,
            Verdict::Fail => 3,
        });
    }
    match worst {
        3 => 1,
        0 if incomplete => 2,
        w => w,
    }
}

/// Runs one catalog entry.
pub fn check(ctx: &Context, id: &str, params: &Params) -> Result<CheckReport> {
    if !CATALOG.contains(&id) {
        return Err(QavError::UnknownCheck(id.to_string()));
    }
    let t0 = Instant::now();
    let mut r = match id {
        "PSI_HOM" => psi_hom(ctx, params)?,
        "XI_INV" => xi_inv(ctx, params)?,
        "MORPH" => morph(ctx, params)?,
        "CUR" => current(ctx, params)?,
        _ => match ctx.table() {
            Err(e) => CheckReport::missing(id, params, e),
            Ok(t) => match catalog::root_identity(id, params, t) {
                Ok(d) => CheckReport::judge(id, params, &d.acc, d.need, &t.basis, &ctx.uq.alphabet),
                Err(QavError::OutOfRange(why)) => CheckReport::missing(id, params, why),
                Err(e) => return Err(e),
            },
        },
    };
    r.timing = t0.elapsed();
    Ok(r)
}

fn psi_hom(ctx: &Context, params: &Params) -> Result<CheckReport> {
    let label = params.text("relation")?;
    let pos = ctx
        .drinfeld
        .labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| QavError::OutOfRange(format!("no relation `{label}` in the mode window")))?;
    let (basis, m) = match (ctx.basis(), ctx.psi()) {
        (Ok(b), Ok(m)) => (b, m),
        (Err(e), _) | (_, Err(e)) => return Ok(CheckReport::missing("PSI_HOM", params, e)),
    };
    let mut d = Difference::new(basis);
    d.image(crate::scalars::QRat::one(), m, &ctx.drinfeld.relations[pos])?;
    Ok(CheckReport::judge("PSI_HOM", params, &d.acc, d.need, basis, &ctx.uq.alphabet))
}

fn xi_inv(ctx: &Context, params: &Params) -> Result<CheckReport> {
    let g = params.text("generator")?;
    let gid = ctx.uq.alphabet.get(g)?;
    let (basis, m) = match (ctx.basis(), ctx.psi()) {
        (Ok(b), Ok(m)) => (b, m),
        (Err(e), _) | (_, Err(e)) => return Ok(CheckReport::missing("XI_INV", params, e)),
    };
    let xi = crate::morphisms::xi(&ctx.uq, &ctx.drinfeld);
    let mut d = Difference::new(basis);
    d.image(crate::scalars::QRat::one(), m, xi.image(gid)?)?;
    d.sub(&[&NCPoly::gen(gid)]);
    Ok(CheckReport::judge("XI_INV", params, &d.acc, d.need, basis, &ctx.uq.alphabet))
}

fn morph(ctx: &Context, params: &Params) -> Result<CheckReport> {
    let name = params.text("map")?;
    let label = params.text("relation")?;
    if !MAPS.contains(&name) {
        return Err(QavError::OutOfRange(format!("unknown map `{name}`")));
    }
    let pos = ctx
        .uq
        .labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| QavError::OutOfRange(format!("no relation `{label}`")))?;
    let maps = match ctx.maps() {
        Ok(m) => m,
        Err(e) => return Ok(CheckReport::missing("MORPH", params, e)),
    };
    let m = &maps[name];
    let (basis, alpha) = if name == "Delta" {
        match ctx.basis2() {
            Ok(b) => (b, &ctx.uq2().alphabet),
            Err(e) => return Ok(CheckReport::missing("MORPH", params, e)),
        }
    } else {
        (ctx.basis().expect("built with the maps"), &ctx.uq.alphabet)
    };
    let mut d = Difference::new(basis);
    d.image(crate::scalars::QRat::one(), m, &ctx.uq.relations[pos])?;
    Ok(CheckReport::judge("MORPH", params, &d.acc, d.need, basis, alpha))
}

fn current(ctx: &Context, params: &Params) -> Result<CheckReport> {
    let rel = params.text("relation")?;
    let basis = match ctx.current_basis() {
        Ok(b) => b,
        Err(e) => return Ok(CheckReport::missing("CUR", params, e)),
    };
    let rep = compare_c_vs_d(rel, &ctx.drinfeld, basis, ctx.cfg.window)?;
    let verdict = match rep.verdict {
        CurrentVerdict::Pass => Verdict::Pass,
        CurrentVerdict::Fail => Verdict::Fail,
        CurrentVerdict::Inconclusive => Verdict::Inconclusive,
    };
    let first_fail = rep.entries.iter().find(|e| e.verdict == CoeffVerdict::Fail);
    let residual = match verdict {
        Verdict::Pass => Some("0".to_string()),
        _ => first_fail.map(|e| format!("[{} z^{} w^{}] {}", e.component, e.z_exp, e.w_exp, e.residual.clone().unwrap_or_default())),
    };
    let shortfall = (verdict == Verdict::Inconclusive).then(|| {
        if rep.basis_degenerate {
            "the mode-algebra basis is degenerate".to_string()
        } else {
            "no coefficient of the window was decided".to_string()
        }
    });
    let mut notes: Vec<String> = rep.counts.iter().map(|(v, n)| format!("{}: {n}", coeff_name(*v))).collect();
    notes.extend(rep.notes.iter().cloned());
    notes.push(format!("expansion: {}", rep.expansion));
    Ok(CheckReport {
        id: "CUR".into(),
        params: params.clone(),
        verdict,
        residual,
        shortfall,
        basis_degree: rep.basis_degree,
        basis_hash: rep.basis_hash,
        notes,
        timing: Duration::ZERO,
    })
}

fn coeff_name(v: CoeffVerdict) -> &'static str {
    match v {
        CoeffVerdict::Member => "member",
        CoeffVerdict::Fail => "fail",
        CoeffVerdict::ParityMismatch => "parity-mismatch",
        CoeffVerdict::Margin => "margin",
    }
}

/// The instances a suite runs, in canonical order.
pub fn instances(ctx: &Context, suite: Suite) -> Vec<(&'static str, Params)> {
    let g = ctx.cfg.grid();
    let mut out = Vec::new();
    for id in suite_ids(suite) {
        let grid: Vec<Params> = match id {
            "MORPH" => MAPS.iter().flat_map(|m| catalog::morph_grid(m, &ctx.uq.labels, ctx.cfg.extended)).collect(),
            "CUR" => catalog::current_grid(),
            "PSI_HOM" => ctx
                .drinfeld
                .labels
                .iter()
                .map(|l| {
                    let mut p = Params::default();
                    p.set_text("relation", l);
                    p
                })
                .collect(),
            "XI_INV" => ctx
                .uq
                .alphabet
                .generators()
                .iter()
                .map(|gen| {
                    let mut p = Params::default();
                    p.set_text("generator", &gen.name);
                    p
                })
                .collect(),
            _ => root_grid(id, g),
        };
        out.extend(grid.into_iter().map(|p| (id, p)));
    }
    out
}

/// Runs every instance of a suite, in parallel, reporting in canonical
/// order.
pub fn run_suite(suite: Suite, cfg: VerifyConfig) -> Result<SuiteReport> {
    let ctx = Context::new(cfg);
    run_suite_in(&ctx, suite)
}

pub fn run_suite_in(ctx: &Context, suite: Suite) -> Result<SuiteReport> {
    let checks = run_checks(ctx, &instances(ctx, suite))?;
    Ok(report(&suite.to_string(), ctx, checks))
}

/// Runs the given instances in parallel; results keep the input order.
pub fn run_checks(ctx: &Context, todo: &[(&str, Params)]) -> Result<Vec<CheckReport>> {
    todo.par_iter().map(|(id, p)| check(ctx, id, p)).collect()
}

/// Aggregates checks run in `ctx`.
pub fn report(name: &str, ctx: &Context, checks: Vec<CheckReport>) -> SuiteReport {
    let mut summary = Summary::default();
    for c in &checks {
        match c.verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::Fail => summary.fail += 1,
            Verdict::Inconclusive => summary.inconclusive += 1,
        }
    }
    SuiteReport {
        suite: name.to_string(),
        max_degree: ctx.cfg.max_degree,
        window: [ctx.cfg.window.k, ctx.cfg.window.l],
        extended: ctx.cfg.extended,
        basis_hashes: ctx.basis_hashes(),
        checks,
        summary,
        incomplete: ctx.had_failures(),
    }
}

#[cfg(test)]
mod tests;
