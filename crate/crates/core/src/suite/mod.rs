//! Exact verification of the poly-Cauchy identities over parameter grids.
//!
//! Every identity is a pair of independently computed sides compared with
//! `==` over rationals or rational polynomials. Grid points are generated in a
//! fixed order and checked in parallel; the report keeps generation order, so
//! two runs differ only in the timing fields.

mod checks;
mod report;

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::rational::{rat, int};
use crate::special::SpecialTables;
use crate::stirling;

pub use report::{CheckReport, ParamValue, Params, SuiteReport, Status};

/// Largest `|k|` accepted on the command line and in [`SuiteConfig`].
pub const K_LIMIT: i64 = 16;
/// Largest `n` accepted as a grid cap.
pub const N_LIMIT: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown identity id `{0}`")]
    UnknownId(String),
    #[error("k range [{kmin}, {kmax}] is empty")]
    EmptyKRange { kmin: i64, kmax: i64 },
    #[error("|k| must be at most {K_LIMIT}, got {0}")]
    KOutOfRange(i64),
    #[error("nmax must be at most {N_LIMIT}, got {0}")]
    NOutOfRange(usize),
}

macro_rules! identities {
    ($($variant:ident => $name:literal, $desc:literal;)*) => {
        /// Every identity the suite knows how to check.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IdentityId {
            $($variant,)*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name,)*
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $desc,)*
                }
            }
        }

        impl FromStr for IdentityId {
            type Err = SuiteError;

            fn from_str(s: &str) -> Result<Self, SuiteError> {
                match s.trim() {
                    $($name => Ok(IdentityId::$variant),)*
                    other => Err(SuiteError::UnknownId(other.to_string())),
                }
            }
        }
    };
}

identities! {
    OracleEq26 => "ORACLE_EQ26", "closed form of C_n^(k)(x) equals the generating-function expansion";
    T1 => "T1", "coefficients of C_n^(k)(x) as sums over compositions of Bernoulli products";
    T2 => "T2", "three expressions for the x^j coefficient, including the j = 0 number case";
    T3 => "T3", "C_(n+1)^(k)(x) from Stirling sums in x+1 and x C_n^(k)(x+1)";
    T4 => "T4", "recurrence mixing index k and k-1 through B_l^(l)(1)";
    T5 => "T5", "Stirling-weighted sums of C^(k) against values at x = 1";
    T5Cor => "T5_COR", "C_(n-1)^(k-1)(1) as an alternating sum of C^(k) numbers";
    L6 => "L6", "C_n^(k) through the hybrid numbers T_l^(1,k) and T_l^(1,k-1)";
    L7 => "L7", "C_n^(k) through the hybrid numbers T^(a,k-l) for a <= m";
    E58 => "E58", "T_n^(r,k) by multinomial convolution equals its generating function";
    E62 => "E62", "m-th derivative of Lif_k(log(1+t)) as a Stirling combination";
    E67 => "E67", "derivative of C_n^(k)(x) in terms of lower polynomials";
    E39 => "E39", "C_n^(k)(x+y) via rising factorials of y";
    T8 => "T8", "expansion in higher-order Bernoulli polynomials via Carlitz numbers";
    T8Norlund => "T8_NORLUND", "Bernoulli-basis coefficients via products of Norlund numbers";
    T9 => "T9", "expansion in Frobenius-Euler polynomials via values C_j^(k)(a)";
    T9Alt => "T9_ALT", "Frobenius-Euler expansion via numbers C_j^(k) only";
    T10 => "T10", "expansion in rising factorials";
    E55Lif1 => "E55_LIF1", "k = 1 specialises to Cauchy numbers and Lif_1(t) = (e^t - 1)/t";
    NorlundEqCauchy => "NORLUND_EQ_CAUCHY", "Norlund numbers as B_n^(n) and Cauchy numbers as B_n^(n)(1)";
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Grid bounds and switches. `None` means the per-identity default.
#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub only: Option<Vec<IdentityId>>,
    pub nmax: Option<usize>,
    pub k_range: Option<(i64, i64)>,
    /// Flip the sign of one right-hand summand in every check.
    pub mutate: bool,
    pub sequential: bool,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), SuiteError> {
        if let Some((kmin, kmax)) = self.k_range {
            for k in [kmin, kmax] {
                if k.abs() > K_LIMIT {
                    return Err(SuiteError::KOutOfRange(k));
                }
            }
            if kmin > kmax {
                return Err(SuiteError::EmptyKRange { kmin, kmax });
            }
        }
        if let Some(n) = self.nmax {
            if n > N_LIMIT {
                return Err(SuiteError::NOutOfRange(n));
            }
        }
        Ok(())
    }

    fn ids(&self) -> Vec<IdentityId> {
        match &self.only {
            Some(ids) => IdentityId::ALL
                .iter()
                .copied()
                .filter(|id| ids.contains(id))
                .collect(),
            None => IdentityId::ALL.to_vec(),
        }
    }

    fn n_cap(&self, default: usize) -> usize {
        self.nmax.unwrap_or(default)
    }

    fn ks(&self, default: (i64, i64)) -> Vec<i64> {
        let (lo, hi) = self.k_range.unwrap_or(default);
        (lo..=hi).collect()
    }
}

const K_DEFAULT: (i64, i64) = (-2, 2);

fn p(pairs: &[(&'static str, i64)]) -> Params {
    Params(pairs.iter().map(|&(k, v)| (k, ParamValue::Int(v))).collect())
}

/// All grid points of one identity, in a fixed order.
pub fn grid(id: IdentityId, config: &SuiteConfig) -> Vec<Params> {
    use IdentityId::*;
    let mut out = Vec::new();
    let lambdas = [int(2), int(-1), rat(1, 2)];
    match id {
        OracleEq26 => {
            for k in config.ks((-3, 3)) {
                for n in 0..=config.n_cap(20) {
                    out.push(p(&[("n", n as i64), ("k", k)]));
                }
            }
        }
        T1 => {
            for k in config.ks(K_DEFAULT) {
                for n in 1..=config.n_cap(8) {
                    out.push(p(&[("n", n as i64), ("k", k)]));
                }
            }
        }
        T2 => {
            for k in config.ks(K_DEFAULT) {
                for n in 1..=config.n_cap(8) {
                    for j in 0..=n {
                        out.push(p(&[("n", n as i64), ("j", j as i64), ("k", k)]));
                    }
                }
            }
        }
        T3 | E39 => {
            for k in config.ks(K_DEFAULT) {
                for n in 0..=config.n_cap(12) {
                    out.push(p(&[("n", n as i64), ("k", k)]));
                }
            }
        }
        T4 | T5Cor | L6 => {
            for k in config.ks(K_DEFAULT) {
                for n in 1..=config.n_cap(12) {
                    out.push(p(&[("n", n as i64), ("k", k)]));
                }
            }
        }
        T5 => {
            for k in config.ks(K_DEFAULT) {
                for n in 1..=config.n_cap(12) {
                    for m in 1..=n {
                        out.push(p(&[("n", n as i64), ("m", m as i64), ("k", k)]));
                    }
                }
            }
        }
        L7 => {
            for k in config.ks(K_DEFAULT) {
                for n in 1..=config.n_cap(10) {
                    for m in 1..=n.min(4) {
                        out.push(p(&[("n", n as i64), ("m", m as i64), ("k", k)]));
                    }
                }
            }
        }
        E58 | T8 | T8Norlund => {
            for k in config.ks(K_DEFAULT) {
                for r in 0..=3 {
                    for n in 0..=config.n_cap(10) {
                        out.push(p(&[("n", n as i64), ("r", r), ("k", k)]));
                    }
                }
            }
        }
        T9 | T9Alt => {
            for k in config.ks(K_DEFAULT) {
                for lambda in &lambdas {
                    for r in 0..=3 {
                        for n in 0..=config.n_cap(10) {
                            let mut params = p(&[("n", n as i64), ("r", r), ("k", k)]);
                            params.0.push(("lambda", ParamValue::Rat(lambda.clone())));
                            out.push(params);
                        }
                    }
                }
            }
        }
        T10 => {
            for k in config.ks(K_DEFAULT) {
                for n in 0..=config.n_cap(15) {
                    out.push(p(&[("n", n as i64), ("k", k)]));
                }
            }
        }
        E62 => {
            let order = config.n_cap(12).max(1);
            for k in config.ks(K_DEFAULT) {
                for m in 1..=order.min(5) {
                    out.push(p(&[("m", m as i64), ("k", k), ("order", order as i64)]));
                }
            }
        }
        E67 => {
            for k in config.ks(K_DEFAULT) {
                for n in 1..=config.n_cap(15) {
                    out.push(p(&[("n", n as i64), ("k", k)]));
                }
            }
        }
        E55Lif1 => {
            for n in 0..=config.n_cap(16) {
                out.push(p(&[("n", n as i64)]));
            }
            for order in 0..=2 * config.n_cap(16) {
                out.push(p(&[("order", order as i64)]));
            }
        }
        NorlundEqCauchy => {
            for n in 0..=config.n_cap(16) {
                out.push(p(&[("n", n as i64)]));
            }
        }
    }
    out
}

/// Runs every selected identity over its grid.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    config.validate()?;
    let points: Vec<(IdentityId, Params)> = config
        .ids()
        .into_iter()
        .flat_map(|id| grid(id, config).into_iter().map(move |p| (id, p)))
        .collect();

    // Shared tables are grown here, before any worker thread reads them.
    let n_max = points
        .iter()
        .flat_map(|(_, p)| p.0.iter())
        .filter_map(|(_, v)| match v {
            ParamValue::Int(i) => Some(i.unsigned_abs() as usize),
            ParamValue::Rat(_) => None,
        })
        .max()
        .unwrap_or(0);
    stirling::precompute(2 * n_max + 4);
    let tables = SpecialTables::build(n_max + 2);

    let run_one = |(id, params): &(IdentityId, Params)| {
        let start = Instant::now();
        let verdict = checks::check(*id, params, &tables, config.mutate);
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        let (status, lhs, rhs) = match verdict {
            checks::Verdict::Pass => (Status::Pass, None, None),
            checks::Verdict::Fail { lhs, rhs } => (Status::Fail, Some(lhs), Some(rhs)),
        };
        CheckReport {
            id: *id,
            params: params.clone(),
            status,
            lhs,
            rhs,
            ms,
        }
    };
    let records = if config.sequential {
        points.iter().map(run_one).collect()
    } else {
        points.par_iter().map(run_one).collect()
    };
    Ok(SuiteReport { records })
}
