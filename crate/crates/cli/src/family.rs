//! Command-line family tokens and the cases they expand to.

use std::fmt;

use serde_json::{json, Map, Value};
use trigsum_core::closed_forms::{Ell5Variant, SumSpec, Trig};
use trigsum_core::cotangent::{byrne_smith_sum, cot_power_sum, CotSumParams};
use trigsum_core::exact::{int, Rational};
use trigsum_core::oracle::Target;
use trigsum_core::walks::{cycle_closed_walks, path_closed_walks};
use trigsum_core::{Error, Result};

/// One family as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Sum(SumToken),
    Cot,
    ByrneSmith,
    PathWalks,
    CycleWalks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SumToken {
    Cos,
    Sin,
    Scaled(Trig),
    Coprime(Trig),
    Gcd(Trig),
    Quoniam,
    MercaHalf,
    MercaShifted,
    Barbero,
    Alternating(Trig),
    ShiftedCos,
    ShiftedSin,
    Weight3(Trig),
    WeightHalfPi,
    WeightPi3,
    Ell5(Ell5Variant),
}

/// Known deviations that `verify --expect-known-errata` reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Erratum {
    BarberoNaive,
    AlternatingPrinted(Trig),
    CotPositiveIndices,
    ByrneSmithPrinted,
}

impl Erratum {
    pub const ALL: [Erratum; 5] = [
        Erratum::BarberoNaive,
        Erratum::AlternatingPrinted(Trig::Cos),
        Erratum::AlternatingPrinted(Trig::Sin),
        Erratum::CotPositiveIndices,
        Erratum::ByrneSmithPrinted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Erratum::BarberoNaive => "barbero-naive",
            Erratum::AlternatingPrinted(Trig::Cos) => "alt-c-printed",
            Erratum::AlternatingPrinted(Trig::Sin) => "alt-s-printed",
            Erratum::CotPositiveIndices => "cot-positive-indices",
            Erratum::ByrneSmithPrinted => "byrne-smith-printed",
        }
    }
}

pub const SUM_TOKENS: [(&str, SumToken); 26] = [
    ("C", SumToken::Cos),
    ("S", SumToken::Sin),
    ("scaled-c", SumToken::Scaled(Trig::Cos)),
    ("scaled-s", SumToken::Scaled(Trig::Sin)),
    ("coprime-c", SumToken::Coprime(Trig::Cos)),
    ("coprime-s", SumToken::Coprime(Trig::Sin)),
    ("gcd-c", SumToken::Gcd(Trig::Cos)),
    ("gcd-s", SumToken::Gcd(Trig::Sin)),
    ("quoniam", SumToken::Quoniam),
    ("merca-half", SumToken::MercaHalf),
    ("merca-shifted", SumToken::MercaShifted),
    ("barbero", SumToken::Barbero),
    ("alt-c", SumToken::Alternating(Trig::Cos)),
    ("alt-s", SumToken::Alternating(Trig::Sin)),
    ("shifted-c", SumToken::ShiftedCos),
    ("shifted-s", SumToken::ShiftedSin),
    ("weight3-c", SumToken::Weight3(Trig::Cos)),
    ("weight3-s", SumToken::Weight3(Trig::Sin)),
    ("weight-half-pi", SumToken::WeightHalfPi),
    ("weight-pi3", SumToken::WeightPi3),
    ("ell5-product", SumToken::Ell5(Ell5Variant::Product)),
    ("ell5-alt-product", SumToken::Ell5(Ell5Variant::AltProduct)),
    ("ell5-cos2", SumToken::Ell5(Ell5Variant::Cos2)),
    ("ell5-cos4", SumToken::Ell5(Ell5Variant::Cos4)),
    ("cos", SumToken::Cos),
    ("sin", SumToken::Sin),
];

const OTHER_TOKENS: [(&str, Token); 4] = [
    ("cot", Token::Cot),
    ("byrne-smith", Token::ByrneSmith),
    ("path-walks", Token::PathWalks),
    ("cycle-walks", Token::CycleWalks),
];

pub enum Parsed {
    Family(Token),
    Erratum(Erratum),
    AllErrata,
}

pub fn parse_token(s: &str) -> std::result::Result<Parsed, String> {
    let t = s.trim();
    if let Some((_, tok)) = SUM_TOKENS
        .iter()
        .find(|(name, _)| name.eq_ignore_ascii_case(t))
    {
        return Ok(Parsed::Family(Token::Sum(*tok)));
    }
    if let Some((_, tok)) = OTHER_TOKENS
        .iter()
        .find(|(name, _)| name.eq_ignore_ascii_case(t))
    {
        return Ok(Parsed::Family(*tok));
    }
    if t.eq_ignore_ascii_case("errata") {
        return Ok(Parsed::AllErrata);
    }
    if let Some(e) = Erratum::ALL
        .iter()
        .find(|e| e.name().eq_ignore_ascii_case(t))
    {
        return Ok(Parsed::Erratum(*e));
    }
    Err(format!(
        "unknown family '{t}'; known: {}",
        token_names().join(", ")
    ))
}

pub fn token_names() -> Vec<&'static str> {
    SUM_TOKENS
        .iter()
        .map(|(n, _)| *n)
        .chain(OTHER_TOKENS.iter().map(|(n, _)| *n))
        .collect()
}

/// Integer parameters as given on the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct Params {
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub q: Option<u32>,
    pub k: Option<u32>,
}

/// A single evaluable instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Sum(SumSpec),
    Cot { n: u32, k: u32 },
    ByrneSmith { n: u32, k: u32 },
    PathWalks { n: u32, m: u32 },
    CycleWalks { n: u32, m: u32 },
}

fn need(v: Option<u32>, name: &str) -> std::result::Result<u32, String> {
    v.ok_or_else(|| format!("missing --{name}"))
}

impl SumToken {
    pub fn spec(self, m: u32, n: u32, q: u32) -> SumSpec {
        match self {
            SumToken::Cos => SumSpec::CosPower { m, n },
            SumToken::Sin => SumSpec::SinPower { m, n },
            SumToken::Scaled(kind) => SumSpec::Scaled { kind, m, n, q },
            SumToken::Coprime(kind) => SumSpec::Coprime { kind, m, n, q },
            SumToken::Gcd(kind) => SumSpec::GcdReduced { kind, m, n, q },
            SumToken::Quoniam => SumSpec::Quoniam { m, n },
            SumToken::MercaHalf => SumSpec::MercaHalf { p: m, n },
            SumToken::MercaShifted => SumSpec::MercaShifted { p: m, n },
            SumToken::Barbero => SumSpec::BarberoR { m, n },
            SumToken::Alternating(kind) => SumSpec::Alternating { kind, m, n },
            SumToken::ShiftedCos => SumSpec::ShiftedCos { m, n },
            SumToken::ShiftedSin => SumSpec::ShiftedSin { m, n },
            SumToken::Weight3(kind) => SumSpec::Weight3 { kind, m, n },
            SumToken::WeightHalfPi => SumSpec::WeightHalfPi { m, n },
            SumToken::WeightPi3 => SumSpec::WeightPi3 { m, n },
            SumToken::Ell5(variant) => SumSpec::Ell5 { variant, m, n },
        }
    }

    pub fn uses_q(self) -> bool {
        matches!(
            self,
            SumToken::Scaled(_) | SumToken::Coprime(_) | SumToken::Gcd(_)
        )
    }
}

impl Token {
    /// Builds a case from explicit parameters (for `eval` and `bench`).
    pub fn case(self, p: Params) -> std::result::Result<Case, String> {
        Ok(match self {
            Token::Sum(t) => {
                let q = if t.uses_q() { need(p.q, "q")? } else { 1 };
                Case::Sum(t.spec(need(p.m, "m")?, need(p.n, "n")?, q))
            }
            Token::Cot => Case::Cot {
                n: need(p.n, "n")?,
                k: need(p.k, "k")?,
            },
            Token::ByrneSmith => Case::ByrneSmith {
                n: need(p.n, "n")?,
                k: need(p.k, "k")?,
            },
            Token::PathWalks => Case::PathWalks {
                n: need(p.n, "n")?,
                m: need(p.m, "m")?,
            },
            Token::CycleWalks => Case::CycleWalks {
                n: need(p.n, "n")?,
                m: need(p.m, "m")?,
            },
        })
    }
}

impl Case {
    pub fn closed_form(&self) -> Result<Rational> {
        match *self {
            Case::Sum(spec) => spec.evaluate(),
            Case::Cot { n, k } => cot_power_sum(n, k),
            Case::ByrneSmith { n, k } => byrne_smith_sum(n, k),
            Case::PathWalks { n, m } => path_closed_walks(n, m).map(int),
            Case::CycleWalks { n, m } => cycle_closed_walks(n, m).map(int),
        }
    }

    /// Rejects parameters the closed form does not accept.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Case::Sum(spec) => spec.validate(),
            Case::Cot { n, k } => CotSumParams::new(n, k).map(|_| ()),
            Case::ByrneSmith { n, k } => {
                if n == 0 || k == 0 {
                    Err(Error::InvalidParameter("n and k must be positive".into()))
                } else {
                    Ok(())
                }
            }
            Case::PathWalks { n, .. } => path_closed_walks(n, 0).map(|_| ()),
            Case::CycleWalks { n, .. } => cycle_closed_walks(n, 0).map(|_| ()),
        }
    }

    pub fn target(&self) -> Target {
        match *self {
            Case::Sum(spec) => Target::Sum(spec),
            Case::Cot { n, k } => Target::Cot(CotSumParams { n, k }),
            Case::ByrneSmith { n, k } => Target::HalfShiftedCot { n, k },
            Case::PathWalks { n, m } => Target::PathSpectrum { n, m },
            Case::CycleWalks { n, m } => Target::CycleSpectrum { n, m },
        }
    }

    pub fn family_name(&self) -> String {
        match self {
            Case::Sum(spec) => spec.family().name().to_string(),
            Case::Cot { .. } => "CotPower".into(),
            Case::ByrneSmith { .. } => "HalfShiftedCot".into(),
            Case::PathWalks { .. } => "PathWalks".into(),
            Case::CycleWalks { .. } => "CycleWalks".into(),
        }
    }

    pub fn params_json(&self) -> Value {
        let mut map = Map::new();
        match *self {
            Case::Sum(spec) => {
                if let Some(kind) = spec.kind() {
                    map.insert("kind".into(), json!(kind.to_string()));
                }
                let m_name = match spec {
                    SumSpec::MercaHalf { .. } | SumSpec::MercaShifted { .. } => "p",
                    _ => "m",
                };
                map.insert(m_name.into(), json!(spec.m()));
                map.insert("n".into(), json!(spec.n()));
                if matches!(
                    spec,
                    SumSpec::Scaled { .. } | SumSpec::Coprime { .. } | SumSpec::GcdReduced { .. }
                ) {
                    map.insert("q".into(), json!(spec.q()));
                }
            }
            Case::Cot { n, k } | Case::ByrneSmith { n, k } => {
                map.insert("n".into(), json!(n));
                map.insert("k".into(), json!(k));
            }
            Case::PathWalks { n, m } | Case::CycleWalks { n, m } => {
                map.insert("n".into(), json!(n));
                map.insert("m".into(), json!(m));
            }
        }
        Value::Object(map)
    }

    /// Report ordering: family, then m, n, q (k plays the role of q for cotangents).
    pub fn sort_key(&self) -> (String, Option<Trig>, u32, u32, u32) {
        match *self {
            Case::Sum(spec) => {
                let (_, kind, m, n, q) = spec.sort_key();
                (self.family_name(), kind, m, n, q)
            }
            Case::Cot { n, k } | Case::ByrneSmith { n, k } => (self.family_name(), None, 0, n, k),
            Case::PathWalks { n, m } | Case::CycleWalks { n, m } => {
                (self.family_name(), None, m, n, 1)
            }
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::Sum(spec) => write!(f, "{spec}"),
            Case::Cot { n, k } => write!(f, "CotPower(n={n}, k={k})"),
            Case::ByrneSmith { n, k } => write!(f, "HalfShiftedCot(n={n}, k={k})"),
            Case::PathWalks { n, m } => write!(f, "PathWalks(n={n}, m={m})"),
            Case::CycleWalks { n, m } => write!(f, "CycleWalks(n={n}, m={m})"),
        }
    }
}

/// Parameter ranges for a verification grid.
#[derive(Clone, Copy, Debug)]
pub struct Grid {
    pub m_min: u32,
    pub m_max: u32,
    pub n_min: u32,
    pub n_max: u32,
    pub q_max: Option<u32>,
    pub k_max: u32,
}

/// Every admissible case of `token` in the grid; inadmissible combinations are skipped.
pub fn expand(token: Token, grid: &Grid) -> Vec<Case> {
    let mut out = Vec::new();
    for n in grid.n_min..=grid.n_max {
        match token {
            Token::Sum(t) => {
                for m in grid.m_min..=grid.m_max {
                    let qs: Vec<u32> = if t.uses_q() {
                        (1..=grid.q_max.unwrap_or(2 * n + 1)).collect()
                    } else {
                        vec![1]
                    };
                    for q in qs {
                        let case = Case::Sum(t.spec(m, n, q));
                        if case.validate().is_ok() {
                            out.push(case);
                        }
                    }
                }
            }
            Token::Cot | Token::ByrneSmith => {
                let k_min = if token == Token::Cot { 2 } else { 1 };
                for k in k_min..=grid.k_max {
                    let case = token.case(Params {
                        n: Some(n),
                        k: Some(k),
                        ..Params::default()
                    });
                    if let Ok(case) = case {
                        if case.validate().is_ok() {
                            out.push(case);
                        }
                    }
                }
            }
            Token::PathWalks | Token::CycleWalks => {
                for m in grid.m_min..=grid.m_max {
                    let case = token.case(Params {
                        n: Some(n),
                        m: Some(m),
                        ..Params::default()
                    });
                    if let Ok(case) = case {
                        if case.validate().is_ok() {
                            out.push(case);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `p/q` with `q` always present.
pub fn fraction(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Bare integer when the denominator is 1, else `p/q`.
pub fn human(v: &Rational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        fraction(v)
    }
}
