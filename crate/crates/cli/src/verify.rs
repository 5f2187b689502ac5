//! Closed form versus oracle campaigns, and reproduction of known errata.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use trigsum_core::closed_forms::{alternating_printed, barbero_r_uncorrected, SumSpec, Trig};
use trigsum_core::cotangent::{byrne_smith_printed, cot_power_sum_positive_indices, CotSumParams};
use trigsum_core::exact::{int, sign, Rational};
use trigsum_core::oracle::{self, Target};

use crate::family::{fraction, Case, Erratum};

#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub spec: String,
    pub closed_form: String,
    pub oracle: String,
    #[serde(rename = "match")]
    pub matched: bool,
    pub micros_closed: u64,
    pub micros_oracle: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErratumRecord {
    pub name: &'static str,
    pub params: Value,
    pub printed: String,
    pub truth: String,
    pub relation: String,
    pub reproduced: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrataSummary {
    pub total: usize,
    pub reproduced: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrataReport {
    pub records: Vec<ErratumRecord>,
    pub summary: ErrataSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub errata: Option<ErrataReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.mismatches == 0
            && self
                .errata
                .as_ref()
                .is_none_or(|e| e.summary.reproduced == e.summary.total)
    }
}

fn text_of(r: &trigsum_core::Result<Rational>) -> String {
    match r {
        Ok(v) => fraction(v),
        Err(e) => format!("error: {e}"),
    }
}

pub fn run_case(case: &Case) -> CaseRecord {
    let t0 = Instant::now();
    let closed = case.closed_form();
    let micros_closed = t0.elapsed().as_micros() as u64;
    let t1 = Instant::now();
    let reference = oracle::evaluate(&case.target());
    let micros_oracle = t1.elapsed().as_micros() as u64;
    let matched = matches!((&closed, &reference), (Ok(a), Ok(b)) if a == b);
    CaseRecord {
        spec: case.to_string(),
        closed_form: text_of(&closed),
        oracle: text_of(&reference),
        matched,
        micros_closed,
        micros_oracle,
    }
}

/// Runs every case, in parallel, and orders the records by (family, m, n, q).
pub fn run_campaign(cases: &[Case]) -> Vec<CaseRecord> {
    let mut results: Vec<(Case, CaseRecord)> =
        cases.par_iter().map(|c| (*c, run_case(c))).collect();
    results.sort_by_key(|(c, _)| c.sort_key());
    results.into_iter().map(|(_, r)| r).collect()
}

fn truth(target: Target) -> Rational {
    oracle::evaluate(&target).expect("oracle evaluation of a documented erratum")
}

fn erratum_records(e: Erratum) -> Vec<ErratumRecord> {
    match e {
        Erratum::BarberoNaive => {
            let printed = barbero_r_uncorrected(12, 3);
            let t = truth(Target::Sum(SumSpec::BarberoR { m: 12, n: 3 }));
            let diff = &t - &printed;
            let reproduced =
                printed == int(3_780_094) && t == int(3_798_310) && diff == int(18_216);
            vec![ErratumRecord {
                name: e.name(),
                params: json!({"m": 12, "n": 3}),
                printed: fraction(&printed),
                truth: fraction(&t),
                relation: format!("truth - printed = {}", diff.numer()),
                reproduced,
            }]
        }
        Erratum::AlternatingPrinted(kind) => {
            let mut out = Vec::new();
            for n in 1..=6u32 {
                for m in n..2 * n {
                    let printed = alternating_printed(kind, m, n);
                    let t = truth(Target::Sum(SumSpec::Alternating { kind, m, n: 2 * n }));
                    let factor = match kind {
                        Trig::Cos => int(n),
                        Trig::Sin => int(n) * int(sign(n as u64)),
                    };
                    let scaled_ok = t == &printed * &factor;
                    let differs = t != printed;
                    let reproduced = scaled_ok && differs == (factor != int(1));
                    out.push(ErratumRecord {
                        name: e.name(),
                        params: json!({"m": m, "n": n, "N": 2 * n}),
                        printed: fraction(&printed),
                        truth: fraction(&t),
                        relation: format!("truth = {} * printed", factor.numer()),
                        reproduced,
                    });
                }
            }
            out
        }
        Erratum::CotPositiveIndices => {
            let mut out = Vec::new();
            for n in 1..=3u32 {
                for k in 3..=8u32 {
                    let printed = cot_power_sum_positive_indices(n, k).expect("valid parameters");
                    let t = truth(Target::Cot(CotSumParams { n, k }));
                    out.push(ErratumRecord {
                        name: e.name(),
                        params: json!({"n": n, "k": k}),
                        printed: fraction(&printed),
                        truth: fraction(&t),
                        relation: "printed != truth".into(),
                        reproduced: printed != t,
                    });
                }
            }
            out
        }
        Erratum::ByrneSmithPrinted => {
            let printed = byrne_smith_printed(1, 2).expect("valid parameters");
            let t = truth(Target::HalfShiftedCot { n: 1, k: 2 });
            vec![ErratumRecord {
                name: e.name(),
                params: json!({"n": 1, "k": 2}),
                printed: fraction(&printed),
                truth: fraction(&t),
                relation: "printed != truth = 6".into(),
                reproduced: printed != t && t == int(6),
            }]
        }
    }
}

pub fn run_errata(list: &[Erratum]) -> ErrataReport {
    let records: Vec<ErratumRecord> = list.par_iter().flat_map(|e| erratum_records(*e)).collect();
    let reproduced = records.iter().filter(|r| r.reproduced).count();
    ErrataReport {
        summary: ErrataSummary {
            total: records.len(),
            reproduced,
        },
        records,
    }
}

pub fn build_report(cases: &[Case], errata: Option<&[Erratum]>) -> VerificationReport {
    let records = run_campaign(cases);
    let mismatches = records.iter().filter(|r| !r.matched).count();
    VerificationReport {
        summary: Summary {
            total: records.len(),
            mismatches,
        },
        cases: records,
        errata: errata.map(run_errata),
    }
}

/// Plain-text rendering: mismatches (or every case if `all`), errata, summary.
pub fn render_text(report: &VerificationReport, all: bool) -> String {
    let mut s = String::new();
    for c in &report.cases {
        if all || !c.matched {
            let tag = if c.matched { "ok" } else { "MISMATCH" };
            s.push_str(&format!(
                "{tag:8} {}  closed={}  oracle={}  ({} us / {} us)\n",
                c.spec, c.closed_form, c.oracle, c.micros_closed, c.micros_oracle
            ));
        }
    }
    if let Some(e) = &report.errata {
        for r in &e.records {
            let tag = if r.reproduced {
                "reproduced"
            } else {
                "NOT REPRODUCED"
            };
            s.push_str(&format!(
                "{} {}: printed {}, true {}; {} [{tag}]\n",
                r.name, r.params, r.printed, r.truth, r.relation
            ));
        }
        s.push_str(&format!(
            "errata: {} checked, {} reproduced\n",
            e.summary.total, e.summary.reproduced
        ));
    }
    s.push_str(&format!(
        "total {}, mismatches {}\n",
        report.summary.total, report.summary.mismatches
    ));
    s
}
