//! Line-oriented problem files:
//!
//! ```text
//! # Koszul complex in three variables
//! ring: x, y, z
//! rank: 3
//! omega: x*e1 + y*e2 + z*e3
//! p: 1
//! ```

use saito_core::exterior::{parse_form, parse_form_of_degree, ExteriorForm};
use saito_core::polyring::{
    parse_polynomial, parse_polynomial_list, MonomialOrder, Polynomial, RingSpec,
};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub ring: RingSpec,
    pub rank: Option<usize>,
    pub quotient: Vec<Polynomial>,
    pub omegas: Vec<ExteriorForm>,
    pub eta: Option<ExteriorForm>,
    pub p: Option<usize>,
    pub element: Option<Polynomial>,
    pub cap: Option<u32>,
    pub seed: Option<u64>,
}

const KEYS: &[&str] = &[
    "ring", "order", "rank", "quotient", "omega", "eta", "p", "element", "cap", "seed",
];

fn at(line: usize, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {e}"))
}

pub fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    match s.trim() {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        other => Err(format!(
            "unknown monomial order `{other}` (expected grevlex or lex)"
        )),
    }
}

pub fn parse_ring(vars: &str, order: MonomialOrder) -> Result<RingSpec, String> {
    let names: Vec<&str> = vars
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    RingSpec::new(&names, order).map_err(|e| e.to_string())
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries: Vec<(usize, &str, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| at(line, "expected `key: value`"))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(at(line, format!("unknown key `{key}`")));
            }
            if key != "omega" && entries.iter().any(|(_, k, _)| *k == key) {
                return Err(at(line, format!("duplicate key `{key}`")));
            }
            entries.push((line, key, value.trim()));
        }
        let get = |key: &str| {
            entries
                .iter()
                .find(|(_, k, _)| *k == key)
                .map(|(l, _, v)| (*l, *v))
        };

        let order = match get("order") {
            Some((l, v)) => parse_order(v).map_err(|e| at(l, e))?,
            None => MonomialOrder::default(),
        };
        let (rl, rv) =
            get("ring").ok_or_else(|| CliError::Input("missing `ring:` declaration".into()))?;
        let ring = parse_ring(rv, order).map_err(|e| at(rl, e))?;
        let nat = |key: &str| -> Result<Option<(usize, u64)>, CliError> {
            match get(key) {
                Some((l, v)) => v
                    .parse::<u64>()
                    .map(|n| Some((l, n)))
                    .map_err(|_| at(l, format!("`{key}` expects a natural number"))),
                None => Ok(None),
            }
        };
        let rank = nat("rank")?.map(|(_, n)| n as usize);
        let p = nat("p")?.map(|(_, n)| n as usize);
        let cap = nat("cap")?.map(|(_, n)| n as u32);
        let seed = nat("seed")?.map(|(_, n)| n);
        let quotient = match get("quotient") {
            Some((l, v)) => parse_polynomial_list(v, &ring).map_err(|e| at(l, e))?,
            None => Vec::new(),
        };
        let element = match get("element") {
            Some((l, v)) => Some(parse_polynomial(v, &ring).map_err(|e| at(l, e))?),
            None => None,
        };
        let needs_rank = || {
            rank.ok_or_else(|| CliError::Input("`rank:` is required when forms are given".into()))
        };
        let mut omegas = Vec::new();
        for (l, _, v) in entries.iter().filter(|(_, k, _)| *k == "omega") {
            let w = parse_form_of_degree(v, &ring, needs_rank()?, 1).map_err(|e| at(*l, e))?;
            omegas.push(w);
        }
        let eta = match get("eta") {
            Some((l, v)) => Some(
                match p {
                    Some(p) => parse_form_of_degree(v, &ring, needs_rank()?, p),
                    None => parse_form(v, &ring, needs_rank()?),
                }
                .map_err(|e| at(l, e))?,
            ),
            None => None,
        };
        Ok(ProblemFile {
            ring,
            rank,
            quotient,
            omegas,
            eta,
            p,
            element,
            cap,
            seed,
        })
    }
}
