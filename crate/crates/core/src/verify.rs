//! Grid verification of the identities and per-summand traces.
//!
//! Cells are independent; they run on a rayon pool and are collected back in
//! canonical parameter order, so reports do not depend on the thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{prop3_rhs, theorem1_rhs, theorem2_rhs};
use crate::error::{Error, Result};
use crate::hypergeometric::{phi_evaluate, saalschutz_rhs, SaalschutzInstance};
use crate::laurent::{LaurentPoly, RenderStyle};
use crate::rational::RationalFunction;
use crate::refined::{
    f_enumerated, f_recursive_with, f_summands, theorem1_lhs_direct, theorem1_lhs_refined, theorem1_summands,
    theorem2_lhs_direct, theorem2_lhs_refined, theorem2_summands, FCache, FSumSpec, Summand,
};

pub type Params = BTreeMap<String, i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    Thm1,
    Thm2,
    Prop3,
    Saalschutz,
}

impl Identity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Identity::Thm1 => "thm1",
            Identity::Thm2 => "thm2",
            Identity::Prop3 => "prop3",
            Identity::Saalschutz => "saalschutz",
        }
    }

    /// Grid parameters, outermost loop first.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Identity::Thm1 => &["d0", "d1"],
            Identity::Thm2 => &["d1", "d2"],
            Identity::Prop3 => &["D", "d1", "k0"],
            Identity::Saalschutz => &["N", "a", "b", "c"],
        }
    }

    /// Default inclusive ranges (the acceptance grids). Saalschütz ranges are
    /// q-exponents.
    pub fn default_range(&self, name: &str) -> Option<ParamRange> {
        let r = |lo, hi| Some(ParamRange::new(lo, hi));
        match (self, name) {
            (Identity::Thm1, "d0") => r(2, 12),
            (Identity::Thm1, "d1") => r(1, 11),
            (Identity::Thm2, "d1" | "d2") => r(1, 10),
            (Identity::Prop3, "D") => r(1, 24),
            (Identity::Prop3, "d1" | "k0") => r(1, 8),
            (Identity::Saalschutz, "N") => r(1, 8),
            (Identity::Saalschutz, "a" | "b" | "c") => r(-3, 6),
            _ => None,
        }
    }

    fn in_domain(&self, v: &[i64]) -> bool {
        match self {
            Identity::Thm1 => v[0] > v[1] && v[1] >= 1,
            Identity::Thm2 => v[0] >= 1 && v[1] >= 1,
            Identity::Prop3 => v[0] >= 1 && 1 <= v[2] && v[2] <= v[1],
            Identity::Saalschutz => v[0] >= 0,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "thm1" => Ok(Identity::Thm1),
            "thm2" => Ok(Identity::Thm2),
            "prop3" => Ok(Identity::Prop3),
            "saalschutz" => Ok(Identity::Saalschutz),
            other => Err(format!("unknown identity {other:?} (expected thm1, thm2, prop3 or saalschutz)")),
        }
    }
}

/// Inclusive integer range, written `A..B` or `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRange {
    pub lo: i64,
    pub hi: i64,
}

impl ParamRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for ParamRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad range bound {t:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        let range = ParamRange::new(lo, hi);
        if range.is_empty() {
            return Err(format!("empty range {s:?}"));
        }
        Ok(range)
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// What to verify and how.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub identity: Identity,
    pub ranges: BTreeMap<String, ParamRange>,
    pub jobs: usize,
    /// Adds 1 to every right-hand side (harness negative control).
    pub corrupt: bool,
    /// Measure `elapsed_ms`; otherwise it is reported as 0 so reruns are
    /// byte-identical.
    pub timing: bool,
}

impl GridSpec {
    /// The identity's default grid, single-threaded.
    pub fn new(identity: Identity) -> Self {
        let ranges = identity
            .param_names()
            .iter()
            .map(|&n| (n.to_string(), identity.default_range(n).expect("default range")))
            .collect();
        Self {
            identity,
            ranges,
            jobs: 1,
            corrupt: false,
            timing: false,
        }
    }

    pub fn with_range(mut self, name: &str, range: ParamRange) -> Self {
        self.ranges.insert(name.to_string(), range);
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.jobs == 0 {
            return Err("parallelism must be at least 1".into());
        }
        let names = self.identity.param_names();
        for (name, range) in &self.ranges {
            if !names.contains(&name.as_str()) {
                return Err(format!("{} takes no parameter {name}", self.identity));
            }
            if range.is_empty() {
                return Err(format!("empty range for {name}"));
            }
        }
        for name in names {
            if !self.ranges.contains_key(*name) {
                return Err(format!("missing range for {name}"));
            }
        }
        Ok(())
    }

    /// All in-hypothesis cells in canonical (lexicographic) order.
    pub fn cells(&self) -> Vec<Params> {
        let names = self.identity.param_names();
        let mut values: Vec<Vec<i64>> = vec![Vec::new()];
        for name in names {
            let range = self.ranges[*name];
            values = values
                .into_iter()
                .flat_map(|prefix| {
                    range.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v);
                        next
                    })
                })
                .collect();
        }
        values
            .into_iter()
            .filter(|v| self.identity.in_domain(v))
            .map(|v| {
                let mut params: Params = names.iter().map(|n| n.to_string()).zip(v).collect();
                if self.identity == Identity::Saalschutz {
                    // stored in x-units, like the instance JSON form
                    for key in ["a", "b", "c"] {
                        *params.get_mut(key).unwrap() *= 2;
                    }
                }
                params
            })
            .collect()
    }
}

/// One side of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Side {
    Poly(LaurentPoly),
    Rational(RationalFunction),
}

impl Side {
    pub fn render(&self, style: RenderStyle) -> String {
        match self {
            Side::Poly(p) => p.render(style),
            Side::Rational(r) => r.render(style),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub identity: Identity,
    pub params: Params,
    pub lhs: Side,
    pub rhs: Side,
    pub equal: bool,
    pub elapsed_ms: u64,
}

impl VerificationRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record JSON")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellOutcome {
    Checked(VerificationRecord),
    Degenerate { identity: Identity, params: Params },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub degenerate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridReport {
    pub outcomes: Vec<CellOutcome>,
    pub summary: Summary,
}

impl GridReport {
    pub fn records(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.outcomes.iter().filter_map(|o| match o {
            CellOutcome::Checked(r) => Some(r),
            CellOutcome::Degenerate { .. } => None,
        })
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// Line-delimited JSON: one record per checked cell, then the summary.
    pub fn render_json_lines(&self) -> String {
        let mut out = String::new();
        for r in self.records() {
            out.push_str(&r.to_json());
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("summary JSON"));
        out.push('\n');
        out
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            match o {
                CellOutcome::Checked(r) => {
                    let tag = if r.equal { "PASS" } else { "FAIL" };
                    out.push_str(&format!("{tag} {} {}", r.identity, format_params(&r.params)));
                    if !r.equal {
                        out.push_str(&format!(
                            "\n  lhs = {}\n  rhs = {}",
                            r.lhs.render(RenderStyle::Plain),
                            r.rhs.render(RenderStyle::Plain)
                        ));
                    }
                    if r.elapsed_ms > 0 {
                        out.push_str(&format!(" ({} ms)", r.elapsed_ms));
                    }
                }
                CellOutcome::Degenerate { identity, params } => {
                    out.push_str(&format!("DEGENERATE {identity} {}", format_params(params)));
                }
            }
            out.push('\n');
        }
        let s = self.summary;
        out.push_str(&format!("pass={} fail={} degenerate={}\n", s.pass, s.fail, s.degenerate));
        out
    }
}

pub fn format_params(params: &Params) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn param(params: &Params, name: &str) -> Result<i64> {
    params.get(name).copied().ok_or_else(|| Error::MissingParameter(name.to_string()))
}

fn to_u32(v: i64, name: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::InvalidHypothesis(format!("{name} must be nonnegative (got {v})")))
}

/// Evaluates both sides of one cell. For the theorems the left side is
/// computed twice (direct transcription and through `f`); for the refined
/// sum by enumeration and by recursion. All routes must agree for `equal`.
pub fn evaluate_cell(identity: Identity, params: &Params, corrupt: bool, timing: bool) -> Result<CellOutcome> {
    let start = Instant::now();
    let bump = |p: LaurentPoly| if corrupt { p + LaurentPoly::one() } else { p };
    let (lhs, rhs, routes_agree) = match identity {
        Identity::Thm1 => {
            let (d0, d1) = (param(params, "d0")?, param(params, "d1")?);
            let direct = theorem1_lhs_direct(d0, d1)?;
            let refined = theorem1_lhs_refined(d0, d1)?;
            let agree = direct == refined;
            (Side::Poly(direct), Side::Poly(bump(theorem1_rhs(d0, d1)?)), agree)
        }
        Identity::Thm2 => {
            let (d1, d2) = (param(params, "d1")?, param(params, "d2")?);
            let direct = theorem2_lhs_direct(d1, d2)?;
            let refined = theorem2_lhs_refined(d1, d2)?;
            let agree = direct == refined;
            (Side::Poly(direct), Side::Poly(bump(theorem2_rhs(d1, d2)?)), agree)
        }
        Identity::Prop3 => {
            let d = param(params, "D")?;
            let (d1, k0) = (param(params, "d1")?, param(params, "k0")?);
            let spec = FSumSpec::new(d, to_u32(d1, "d1")?, to_u32(k0, "k0")?);
            let enumerated = f_enumerated(spec);
            let recursive = f_recursive_with(spec, &mut FCache::new());
            let agree = enumerated == recursive;
            (Side::Poly(enumerated), Side::Poly(bump(prop3_rhs(d, d1, k0)?)), agree)
        }
        Identity::Saalschutz => {
            let inst = SaalschutzInstance::new(
                param(params, "a")?,
                param(params, "b")?,
                param(params, "c")?,
                to_u32(param(params, "N")?, "N")?,
            );
            let sides = phi_evaluate(&inst.lhs_series()).and_then(|l| Ok((l, saalschutz_rhs(&inst)?)));
            match sides {
                Ok((lhs, rhs)) => {
                    let rhs = if corrupt { &rhs + &RationalFunction::one() } else { rhs };
                    (Side::Rational(lhs), Side::Rational(rhs), true)
                }
                Err(Error::PoleInDenominator) => {
                    return Ok(CellOutcome::Degenerate {
                        identity,
                        params: params.clone(),
                    })
                }
                Err(e) => return Err(e),
            }
        }
    };
    let equal = routes_agree
        && match (&lhs, &rhs) {
            (Side::Rational(a), Side::Rational(b)) => a == b,
            (a, b) => a == b,
        };
    let elapsed_ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(CellOutcome::Checked(VerificationRecord {
        identity,
        params: params.clone(),
        lhs,
        rhs,
        equal,
        elapsed_ms,
    }))
}

/// Runs every cell of the grid on `spec.jobs` threads.
pub fn run_grid(spec: &GridSpec) -> Result<GridReport> {
    spec.validate().map_err(Error::InvalidHypothesis)?;
    let cells = spec.cells();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs)
        .build()
        .expect("thread pool");
    let outcomes: Vec<CellOutcome> = pool.install(|| {
        cells
            .par_iter()
            .map(|params| evaluate_cell(spec.identity, params, spec.corrupt, spec.timing))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut summary = Summary::default();
    for o in &outcomes {
        match o {
            CellOutcome::Checked(r) if r.equal => summary.pass += 1,
            CellOutcome::Checked(_) => summary.fail += 1,
            CellOutcome::Degenerate { .. } => summary.degenerate += 1,
        }
    }
    Ok(GridReport { outcomes, summary })
}

/// Per-summand trace of a left-hand side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Explanation {
    pub identity: Identity,
    pub params: Params,
    pub summands: Vec<Summand>,
    pub total: LaurentPoly,
}

pub fn explain(identity: Identity, params: &Params) -> Result<Explanation> {
    let (summands, extra) = match identity {
        Identity::Thm1 => (theorem1_summands(param(params, "d0")?, param(params, "d1")?)?, None),
        Identity::Thm2 => (theorem2_summands(param(params, "d1")?, param(params, "d2")?)?, None),
        Identity::Prop3 => {
            let spec = FSumSpec::new(
                param(params, "D")?,
                to_u32(param(params, "d1")?, "d1")?,
                to_u32(param(params, "k0")?, "k0")?,
            );
            // the empty index (d1 = k0 = 0) has no summand to list
            let unit = (spec.d1 == 0 && spec.k0 == 0).then(LaurentPoly::one);
            (f_summands(spec), unit)
        }
        Identity::Saalschutz => {
            return Err(Error::InvalidHypothesis(
                "traces are available for thm1, thm2 and prop3".into(),
            ))
        }
    };
    let total = summands.iter().map(|s| &s.term).sum::<LaurentPoly>() + extra.unwrap_or_default();
    Ok(Explanation {
        identity,
        params: params.clone(),
        summands,
        total,
    })
}

impl Explanation {
    pub fn render(&self, style: RenderStyle) -> String {
        if style == RenderStyle::Json {
            return serde_json::to_string(self).expect("explanation JSON") + "\n";
        }
        let mut out = format!("{} {}\n", self.identity, format_params(&self.params));
        for s in &self.summands {
            let k0 = s.k0.map(|k| format!(" k0={k}")).unwrap_or_default();
            out.push_str(&format!("  {}{k0} : {}\n", s.index.to_json(), s.term.render(style)));
        }
        out.push_str(&format!("total: {}\n", self.total.render(style)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbinomial::qbinom;

    fn params(pairs: &[(&str, i64)]) -> Params {
        pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
    }

    #[test]
    fn ranges_parse() {
        assert_eq!("2..5".parse::<ParamRange>().unwrap(), ParamRange::new(2, 5));
        assert_eq!("-3..=6".parse::<ParamRange>().unwrap(), ParamRange::new(-3, 6));
        assert_eq!("4".parse::<ParamRange>().unwrap(), ParamRange::new(4, 4));
        assert!("5..2".parse::<ParamRange>().is_err());
        assert!("a..2".parse::<ParamRange>().is_err());
    }

    #[test]
    fn cells_are_filtered_and_ordered() {
        let spec = GridSpec::new(Identity::Thm1)
            .with_range("d0", ParamRange::new(2, 4))
            .with_range("d1", ParamRange::new(1, 3));
        let cells: Vec<(i64, i64)> = spec.cells().iter().map(|p| (p["d0"], p["d1"])).collect();
        assert_eq!(cells, vec![(2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)]);
        let s = GridSpec::new(Identity::Saalschutz)
            .with_range("N", ParamRange::new(1, 1))
            .with_range("a", ParamRange::new(-1, -1))
            .with_range("b", ParamRange::new(2, 2))
            .with_range("c", ParamRange::new(3, 3));
        assert_eq!(s.cells(), vec![params(&[("N", 1), ("a", -2), ("b", 4), ("c", 6)])]);
    }

    #[test]
    fn validation() {
        assert!(GridSpec::new(Identity::Thm2).validate().is_ok());
        assert!(GridSpec::new(Identity::Thm2).with_jobs(0).validate().is_err());
        assert!(GridSpec::new(Identity::Thm2).with_range("d0", ParamRange::new(1, 2)).validate().is_err());
        assert!(GridSpec::new(Identity::Thm2).with_range("d1", ParamRange::new(3, 2)).validate().is_err());
    }

    #[test]
    fn small_grids_pass() {
        let spec = GridSpec::new(Identity::Thm1)
            .with_range("d0", ParamRange::new(2, 5))
            .with_range("d1", ParamRange::new(1, 4));
        let report = run_grid(&spec).unwrap();
        assert_eq!(report.summary, Summary { pass: 10, fail: 0, degenerate: 0 });
        let spec = GridSpec::new(Identity::Prop3)
            .with_range("D", ParamRange::new(2, 10))
            .with_range("d1", ParamRange::new(1, 5))
            .with_range("k0", ParamRange::new(1, 5));
        let report = run_grid(&spec).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.summary.pass, 9 * 15);
    }

    #[test]
    fn corruption_is_detected() {
        let mut spec = GridSpec::new(Identity::Saalschutz)
            .with_range("N", ParamRange::new(1, 2))
            .with_range("a", ParamRange::new(0, 2))
            .with_range("b", ParamRange::new(1, 2))
            .with_range("c", ParamRange::new(-1, 3));
        let clean = run_grid(&spec).unwrap();
        assert!(clean.all_passed());
        assert!(clean.summary.degenerate > 0);
        spec.corrupt = true;
        let bad = run_grid(&spec).unwrap();
        assert_eq!(bad.summary.fail, clean.summary.pass);
        assert_eq!(bad.summary.degenerate, clean.summary.degenerate);
    }

    #[test]
    fn parallel_output_is_deterministic() {
        let spec = GridSpec::new(Identity::Thm2)
            .with_range("d1", ParamRange::new(1, 5))
            .with_range("d2", ParamRange::new(1, 5));
        let one = run_grid(&spec).unwrap().render_json_lines();
        let four = run_grid(&spec.clone().with_jobs(4)).unwrap().render_json_lines();
        assert_eq!(one, four);
        assert!(one.ends_with("{\"pass\":25,\"fail\":0,\"degenerate\":0}\n"));
    }

    #[test]
    fn record_schema() {
        let out = evaluate_cell(Identity::Thm2, &params(&[("d1", 1), ("d2", 1)]), false, false).unwrap();
        let CellOutcome::Checked(r) = out else { panic!("not degenerate") };
        assert_eq!(
            r.to_json(),
            r#"{"identity":"thm2","params":{"d1":1,"d2":1},"lhs":[[2,"1"],[0,"1"],[-2,"1"]],"rhs":[[2,"1"],[0,"1"],[-2,"1"]],"equal":true,"elapsed_ms":0}"#
        );
        let out = evaluate_cell(Identity::Saalschutz, &params(&[("N", 1), ("a", 2), ("b", 4), ("c", 10)]), false, false)
            .unwrap();
        let CellOutcome::Checked(r) = out else { panic!("not degenerate") };
        assert!(r.equal);
        assert!(r.to_json().contains(r#""lhs":{"num":"#));
    }

    #[test]
    fn traces() {
        let e = explain(Identity::Prop3, &params(&[("D", 8), ("d1", 2), ("k0", 2)])).unwrap();
        assert_eq!(e.summands.len(), 1);
        assert_eq!(e.summands[0].index.to_json(), r#"{"parts":[1],"mults":[2]}"#);
        assert_eq!(e.total, qbinom(8, 2));

        let e = explain(Identity::Thm1, &params(&[("d0", 2), ("d1", 1)])).unwrap();
        assert_eq!(e.summands.len(), 1);
        assert_eq!(e.summands[0].k0, Some(0));

        let e = explain(Identity::Thm2, &params(&[("d1", 1), ("d2", 1)])).unwrap();
        assert_eq!(e.summands.len(), 1);
        assert_eq!(e.total.render(RenderStyle::Plain), "q + 1 + q^(-1)");

        let e = explain(Identity::Thm1, &params(&[("d0", 7), ("d1", 3)])).unwrap();
        assert_eq!(e.total, crate::refined::theorem1_lhs(7, 3).unwrap());

        assert!(explain(Identity::Saalschutz, &params(&[])).is_err());
        assert!(matches!(
            explain(Identity::Thm1, &params(&[("d0", 3)])),
            Err(Error::MissingParameter(_))
        ));
    }
}
