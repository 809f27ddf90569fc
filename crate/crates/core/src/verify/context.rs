use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::currents::relation_basis;
use crate::error::Result;
use crate::morphisms::{antipode, braid, coproduct, omega, phi, psi, solve_braid_inverse, GenImageMap};
use crate::presentations::{build_drinfeld, build_uq, build_uq_tensor_square, ModeWindow, Presentation};
use crate::rewrite::{complete_with, Budget, RewriteBasis};
use crate::rootvectors::RootTable;

/// Suite parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Completion degree of the Chevalley bases.
    pub max_degree: usize,
    /// Mode window for the Drinfeld checks.
    pub window: ModeWindow,
    /// Serre images and `n = 3` grids.
    pub extended: bool,
    pub budget: Budget,
}

impl VerifyConfig {
    pub const DEFAULT_DEGREE: usize = 10;
    pub const EXTENDED_DEGREE: usize = 12;

    pub fn new(max_degree: usize, window: ModeWindow, extended: bool) -> Self {
        VerifyConfig { max_degree, window, extended, budget: Budget::default() }
    }

    /// Largest `n` of the instance grids.
    pub fn grid(&self) -> i64 {
        if self.extended {
            3
        } else {
            2
        }
    }

    /// Root-table size: one past the grid, and wide enough for the window.
    pub fn table_size(&self) -> usize {
        ((self.grid() + 1).max(self.window.k).max(self.window.l)) as usize
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig::new(VerifyConfig::DEFAULT_DEGREE, ModeWindow { k: 2, l: 2 }, false)
    }
}

type Lazy<T> = OnceLock<std::result::Result<T, String>>;

fn cached<T>(cell: &Lazy<T>, f: impl FnOnce() -> Result<T>) -> std::result::Result<&T, String> {
    cell.get_or_init(|| f().map_err(|e| e.to_string())).as_ref().map_err(Clone::clone)
}

/// Prerequisites shared by all checks, each built on first use.
pub struct Context {
    pub cfg: VerifyConfig,
    pub uq: Presentation,
    pub drinfeld: Presentation,
    uq2: OnceLock<Presentation>,
    basis: Lazy<Arc<RewriteBasis>>,
    basis2: Lazy<Arc<RewriteBasis>>,
    table: Lazy<Arc<RootTable>>,
    maps: Lazy<BTreeMap<String, GenImageMap>>,
    psi: Lazy<GenImageMap>,
    current_basis: Lazy<Arc<RewriteBasis>>,
}

impl Context {
    pub fn new(cfg: VerifyConfig) -> Self {
        Context {
            cfg,
            uq: build_uq(),
            drinfeld: build_drinfeld(cfg.window),
            uq2: OnceLock::new(),
            basis: OnceLock::new(),
            basis2: OnceLock::new(),
            table: OnceLock::new(),
            maps: OnceLock::new(),
            psi: OnceLock::new(),
            current_basis: OnceLock::new(),
        }
    }

    pub fn uq2(&self) -> &Presentation {
        self.uq2.get_or_init(build_uq_tensor_square)
    }

    pub fn basis(&self) -> std::result::Result<&Arc<RewriteBasis>, String> {
        cached(&self.basis, || {
            Ok(Arc::new(complete_with(&self.uq, self.cfg.max_degree, self.cfg.budget)?.0))
        })
    }

    /// Basis of `U (x) U`, the target of the coproduct.
    pub fn basis2(&self) -> std::result::Result<&Arc<RewriteBasis>, String> {
        cached(&self.basis2, || {
            Ok(Arc::new(complete_with(self.uq2(), self.cfg.max_degree, self.cfg.budget)?.0))
        })
    }

    pub fn table(&self) -> std::result::Result<&Arc<RootTable>, String> {
        let b = self.basis()?.clone();
        cached(&self.table, || Ok(Arc::new(RootTable::build(&self.uq, b, self.cfg.table_size())?)))
    }

    /// The structural morphisms by name; inverse braids are solved for.
    pub fn maps(&self) -> std::result::Result<&BTreeMap<String, GenImageMap>, String> {
        let b = self.basis()?.clone();
        cached(&self.maps, || {
            let p = &self.uq;
            let mut m = BTreeMap::new();
            m.insert("T1".to_string(), braid(p, 1));
            m.insert("T2".to_string(), braid(p, 2));
            m.insert("T1inv".to_string(), solve_braid_inverse(p, &b, 1)?.map);
            m.insert("T2inv".to_string(), solve_braid_inverse(p, &b, 2)?.map);
            m.insert("Phi".to_string(), phi(p));
            m.insert("Omega".to_string(), omega(p));
            m.insert("Delta".to_string(), coproduct(p, self.uq2()));
            m.insert("S".to_string(), antipode(p));
            Ok(m)
        })
    }

    pub fn psi(&self) -> std::result::Result<&GenImageMap, String> {
        let t = self.table()?.clone();
        cached(&self.psi, || psi(&self.drinfeld, &self.uq, &t, self.cfg.window))
    }

    /// The relation-level basis of the mode algebra used by the current
    /// comparisons.
    pub fn current_basis(&self) -> std::result::Result<&Arc<RewriteBasis>, String> {
        cached(&self.current_basis, || Ok(Arc::new(relation_basis(&self.drinfeld)?)))
    }

    /// Hashes of every basis built so far, by name.
    pub fn basis_hashes(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        for (name, cell) in [("uq", &self.basis), ("uq2", &self.basis2), ("drinfeld", &self.current_basis)] {
            if let Some(Ok(b)) = cell.get() {
                out.insert(name.to_string(), b.hash());
            }
        }
        out
    }

    /// Whether a prerequisite failed to build.
    pub fn had_failures(&self) -> bool {
        fn bad<T>(c: &Lazy<T>) -> bool {
            matches!(c.get(), Some(Err(_)))
        }
        bad(&self.basis)
            || bad(&self.basis2)
            || bad(&self.table)
            || bad(&self.maps)
            || bad(&self.psi)
            || bad(&self.current_basis)
    }
}
