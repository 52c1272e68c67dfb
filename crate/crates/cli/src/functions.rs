use std::collections::BTreeMap;

use kbessel::kgamma::{digamma_k, gamma_k, pochhammer_k, trigamma_k, KGammaArg};
use kbessel::series::{
    confluent_phi_k_with, hyp_pfq_with, j_kbessel_with, modified_i_kbessel_with, w_kbessel_with, wright_psi_with,
    wright_representation_with, EvalResult, KBesselParams, KBesselShape, RepresentationConstants, SeriesOptions,
    WrightParams, DEFAULT_MAX_TERMS,
};

use crate::args::{Function, ParamArgs};
use crate::output::Failure;

pub const MAX_TERMS_ENV: &str = "KBESSEL_MAX_TERMS";

/// `--max-terms`, else `KBESSEL_MAX_TERMS`, else the library default.
pub fn max_terms(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_TERMS_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("{MAX_TERMS_ENV} must be a positive integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_MAX_TERMS),
    }
}

pub fn series_options(tol: f64, max_terms: usize) -> Result<SeriesOptions, Failure> {
    Ok(SeriesOptions::with_max_terms(tol, max_terms)?)
}

/// Named parameters with the names that were actually read, for echoing
/// back in reports.
pub struct Bound<'a> {
    args: &'a ParamArgs,
    used: BTreeMap<&'static str, f64>,
}

impl<'a> Bound<'a> {
    pub fn new(args: &'a ParamArgs) -> Self {
        Self {
            args,
            used: BTreeMap::new(),
        }
    }

    fn lookup(&self, name: &str) -> Option<f64> {
        let a = self.args;
        match name {
            "x" => a.x.or(a.t),
            "k" => a.k,
            "nu" => a.nu,
            "gamma" => a.gamma,
            "lambda" => a.lambda,
            "c" => a.c,
            "mu" => a.mu,
            "m" => a.m,
            "a" => a.a,
            "c_param" => a.c_param,
            "delta" => a.delta,
            "n" => a.n.map(|n| n as f64),
            _ => None,
        }
    }

    pub fn get(&mut self, name: &'static str) -> Result<f64, Failure> {
        let v = self
            .lookup(name)
            .ok_or_else(|| Failure::usage(format!("missing --{}", name.replace('_', "-"))))?;
        self.used.insert(name, v);
        Ok(v)
    }

    pub fn get_or(&mut self, name: &'static str, default: f64) -> f64 {
        let v = self.lookup(name).unwrap_or(default);
        self.used.insert(name, v);
        v
    }

    pub fn shape(&mut self) -> Result<KBesselShape, Failure> {
        Ok(KBesselShape::new(self.get("k")?, self.get("nu")?, self.get("gamma")?, self.get("lambda")?)?)
    }

    pub fn params(&mut self) -> Result<KBesselParams, Failure> {
        let shape = self.shape()?;
        Ok(shape.with_c(self.get("c")?))
    }

    pub fn used(&self) -> &BTreeMap<&'static str, f64> {
        &self.used
    }

    pub fn upper(&self) -> Option<&str> {
        self.args.upper.as_deref()
    }

    pub fn lower(&self) -> Option<&str> {
        self.args.lower.as_deref()
    }
}

fn parse_reals(s: Option<&str>) -> Result<Vec<f64>, Failure> {
    let Some(s) = s.map(str::trim).filter(|s| !s.is_empty()) else {
        return Ok(Vec::new());
    };
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| Failure::usage(format!("bad real {p:?}"))))
        .collect()
}

fn parse_pairs(s: Option<&str>) -> Result<Vec<(f64, f64)>, Failure> {
    let Some(s) = s.map(str::trim).filter(|s| !s.is_empty()) else {
        return Ok(Vec::new());
    };
    s.split(',')
        .map(|p| {
            let (v, w) = p
                .split_once(':')
                .ok_or_else(|| Failure::usage(format!("Wright parameter {p:?} must be value:weight")))?;
            let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| Failure::usage(format!("bad real {t:?}")));
            Ok((parse(v)?, parse(w)?))
        })
        .collect()
}

/// Everything but the evaluation point, resolved once.
pub enum Prepared {
    GammaK { k: f64 },
    DigammaK { k: f64 },
    TrigammaK { k: f64 },
    PochhammerK { k: f64, n: u64 },
    W(KBesselParams),
    I(KBesselShape),
    J(KBesselShape),
    PhiK { a: f64, c: f64, k: f64 },
    Pfq { upper: Vec<f64>, lower: Vec<f64> },
    Wright(WrightParams),
    WrightRep(KBesselParams, RepresentationConstants),
}

impl Prepared {
    pub fn new(function: Function, bound: &mut Bound) -> Result<Self, Failure> {
        Ok(match function {
            Function::GammaK => Prepared::GammaK { k: bound.get("k")? },
            Function::DigammaK => Prepared::DigammaK { k: bound.get("k")? },
            Function::TrigammaK => Prepared::TrigammaK { k: bound.get("k")? },
            Function::PochhammerK => {
                let k = bound.get("k")?;
                let n = bound.get("n")? as u64;
                Prepared::PochhammerK { k, n }
            }
            Function::W => Prepared::W(bound.params()?),
            Function::I => Prepared::I(bound.shape()?),
            Function::J => Prepared::J(bound.shape()?),
            Function::PhiK => Prepared::PhiK {
                a: bound.get("a")?,
                c: bound.get("c_param")?,
                k: bound.get("k")?,
            },
            Function::Pfq => Prepared::Pfq {
                upper: parse_reals(bound.upper())?,
                lower: parse_reals(bound.lower())?,
            },
            Function::Wright => {
                Prepared::Wright(WrightParams::new(parse_pairs(bound.upper())?, parse_pairs(bound.lower())?)?)
            }
            Function::WrightRep => Prepared::WrightRep(bound.params()?, RepresentationConstants::Derived),
        })
    }

    pub fn evaluate(&self, x: f64, opts: &SeriesOptions) -> Result<EvalResult, Failure> {
        let closed = |v: kbessel::Result<f64>| -> Result<EvalResult, Failure> { Ok(exact(v?)) };
        match self {
            Prepared::GammaK { k } => closed(KGammaArg::new(x, *k).and_then(gamma_k)),
            Prepared::DigammaK { k } => closed(digamma_k(x, *k)),
            Prepared::TrigammaK { k } => closed(trigamma_k(x, *k)),
            Prepared::PochhammerK { k, n } => closed(pochhammer_k(x, *n, *k)),
            Prepared::W(p) => Ok(w_kbessel_with(p, x, opts)?),
            Prepared::I(s) => Ok(modified_i_kbessel_with(s, x, opts)?),
            Prepared::J(s) => Ok(j_kbessel_with(s, x, opts)?),
            Prepared::PhiK { a, c, k } => Ok(confluent_phi_k_with(*a, *c, *k, x, opts)?),
            Prepared::Pfq { upper, lower } => Ok(hyp_pfq_with(upper, lower, x, opts)?),
            Prepared::Wright(wp) => Ok(wright_psi_with(wp, x, opts)?),
            Prepared::WrightRep(p, constants) => Ok(wright_representation_with(p, x, opts, *constants)?),
        }
    }
}

/// A closed-form value: no truncation, one "term".
fn exact(value: f64) -> EvalResult {
    EvalResult {
        value,
        abs_error_bound: 0.0,
        terms_used: 1,
        converged: true,
    }
}
