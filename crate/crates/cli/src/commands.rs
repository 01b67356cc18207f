//! Subcommand implementations. Each returns a record, its tabular view and
//! whether the verdict was left undecided.

use std::cmp::Ordering;

use beta_forge::constants::{golden_ratio_polynomial, ConstantRow};
use beta_forge::dimension::{certified_doubling_interval, dimension_lower_bound_with, verify_certificate};
use beta_forge::expansions::{
    count_prefixes_capped, expand_tree, greedy_expansion, quasi_greedy_one, uniqueness_certificate, ExpansionError,
    Verdict, DEFAULT_FRONTIER_CAP,
};
use beta_forge::geometry::{Beta, ExpansionParams};
use beta_forge::numeric::rat;
use beta_forge::{CertifiedValue, Digit, Rational, Scalar};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{domain, CliError};
use crate::record::{display_value, format_bound, places_for, BetaInfo, OutputRecord, Params, Provenance, Table};
use crate::spec::{BetaSpec, PointSpec};

pub struct Outcome {
    pub record: OutputRecord,
    pub table: Table,
    pub undecided: bool,
}

/// The resolved `(m, beta)` pair plus how it was written.
pub struct Setup {
    pub m: Digit,
    pub spec: String,
    pub params: ExpansionParams,
    pub tol: Rational,
}

impl Setup {
    pub fn new(m: Digit, beta: &str, tol: &Rational) -> Result<Setup, CliError> {
        if m == 0 {
            return Err(CliError::Usage("--m must be positive".into()));
        }
        let params = BetaSpec::parse(beta)?.params(m, tol)?;
        Ok(Setup { m, spec: beta.trim().to_string(), params, tol: tol.clone() })
    }

    fn places(&self) -> usize {
        places_for(&self.tol)
    }

    fn beta_info(&self) -> BetaInfo {
        let places = self.places();
        let c = self.params.beta().certified(&fine(places));
        let (value, bound) = display_value(&c, places);
        BetaInfo { spec: self.spec.clone(), value, error_bound: format_bound(&bound) }
    }

    fn provenance(&self) -> Provenance {
        match self.params.beta() {
            Beta::Exact(_) => Provenance::Exact,
            Beta::Certified(c) => Provenance::Certified { error_bound: format_bound(&c.error_bound) },
        }
    }

    fn record(&self, command: &str, payload: Value) -> OutputRecord {
        OutputRecord {
            command: command.into(),
            params: Params { m: Value::from(self.m), beta: Some(self.beta_info()) },
            payload,
            provenance: self.provenance(),
        }
    }

    fn scalar(&self, x: &Scalar) -> String {
        scalar_string(x, self.places())
    }

    fn point(&self, spec: &str) -> Result<(Scalar, Value), CliError> {
        let x = PointSpec::parse(spec)?.resolve(&self.params);
        match self.params.interval_i().contains(&x) {
            Some(true) => {}
            Some(false) => return Err(CliError::Domain(format!("point {spec} lies outside [0, m/(beta-1)]"))),
            None => return Err(CliError::Domain(format!("cannot certify that {spec} lies in [0, m/(beta-1)]"))),
        }
        let info = json!({"spec": spec.trim(), "value": self.scalar(&x)});
        Ok((x, info))
    }
}

fn fine(places: usize) -> Rational {
    rat::pow2(-((places as f64 * 3.33).ceil() as i64 + 8))
}

pub fn scalar_string(x: &Scalar, places: usize) -> String {
    match x {
        Scalar::Exact(a) => display_value(&a.to_certified(&fine(places)), places).0,
        Scalar::Ball(iv) => rat::format_decimal(&iv.midpoint(), places),
    }
}

fn word(digits: &[Digit], m: Digit) -> String {
    let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
    parts.join(if m < 10 { "" } else { "," })
}

fn certified_json(c: &CertifiedValue, places: usize) -> (Value, String, String) {
    let (value, bound) = display_value(c, places);
    let bound = format_bound(&bound);
    (json!({"value": value, "error_bound": bound}), value, bound)
}

pub fn constants(lo: Digit, hi: Digit, tol: &Rational) -> Result<Outcome, CliError> {
    let places = places_for(tol);
    let rows: Vec<ConstantRow> = (lo..=hi)
        .into_par_iter()
        .map(|m| ConstantRow::compute(m, tol))
        .collect::<Result<_, _>>()
        .map_err(domain)?;
    let mut table = Table::flat(&[
        "m",
        "golden_ratio",
        "golden_ratio_error",
        "beta_f",
        "beta_f_error",
        "beta_c",
        "beta_c_error",
    ]);
    let mut out = Vec::new();
    let mut worst = Rational::from_integer(0.into());
    for row in &rows {
        let (g, gv, gb) = certified_json(&row.golden_ratio, places);
        let (f, fv, fb) = certified_json(&row.beta_f, places);
        let (c, cv, cb) = certified_json(&row.beta_c, places);
        for b in [&gb, &fb, &cb] {
            worst = rat::max(&worst, &rat::parse(b).expect("bound parses"));
        }
        table.rows.push(vec![row.m.to_string(), gv, gb, fv, fb, cv, cb]);
        out.push(json!({"m": row.m, "golden_ratio": g, "beta_f": f, "beta_c": c}));
    }
    let m = if lo == hi { Value::from(lo) } else { Value::from(format!("{lo}..{hi}")) };
    let record = OutputRecord {
        command: "constants".into(),
        params: Params { m, beta: None },
        payload: json!({"tol": format_bound(tol), "rows": out}),
        provenance: Provenance::Certified { error_bound: format_bound(&worst) },
    };
    Ok(Outcome { record, table, undecided: false })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Tree,
    Greedy,
    QuasiGreedy,
}

pub fn expand(s: &Setup, x: Option<&str>, depth: usize, mode: Mode, max_prefixes: u64) -> Result<Outcome, CliError> {
    let m = s.m;
    match mode {
        Mode::Tree | Mode::Greedy => {
            let spec = x.ok_or_else(|| CliError::Usage("--x is required for this mode".into()))?;
            let (point, info) = s.point(spec)?;
            if mode == Mode::Greedy {
                let digits = greedy_expansion(&s.params, &point, depth).map_err(expansion)?;
                let w = word(&digits.prefix(depth), m);
                let payload = json!({"mode": "greedy", "x": info, "depth": depth, "digits": w});
                let table = Table::fields(vec![("mode", "greedy".into()), ("depth", depth.to_string()), ("digits", w)]);
                return Ok(Outcome { record: s.record("expand", payload), table, undecided: false });
            }
            // A capped count is a lower bound, which is enough to refuse.
            let count = count_prefixes_capped(&s.params, &point, depth, DEFAULT_FRONTIER_CAP).map_err(expansion)?;
            let n = count.last().value().to_u64().unwrap_or(u64::MAX);
            if n > max_prefixes {
                return Err(CliError::Domain(format!(
                    "{n} prefixes at depth {depth} exceed --max-prefixes {max_prefixes}"
                )));
            }
            let tree = expand_tree(&s.params, &point, depth).map_err(expansion)?;
            let prefixes: Vec<String> = tree.prefixes().iter().map(|p| word(p, m)).collect();
            let mut table = Table::flat(&["prefix"]);
            table.rows = prefixes.iter().map(|p| vec![p.clone()]).collect();
            let payload = json!({"mode": "tree", "x": info, "depth": depth, "count": prefixes.len(), "prefixes": prefixes});
            Ok(Outcome { record: s.record("expand", payload), table, undecided: false })
        }
        Mode::QuasiGreedy => {
            let (digits, determined) = match quasi_greedy_one(&s.params, depth) {
                Ok(d) => (d.prefix(depth), true),
                Err(ExpansionError::QuasiGreedyUndetermined { determined }) => (determined, false),
                Err(e) => return Err(expansion(e)),
            };
            let w = word(&digits, m);
            let payload = json!({"mode": "quasi-greedy", "depth": depth, "digits": w, "complete": determined});
            let table = Table::fields(vec![
                ("mode", "quasi-greedy".into()),
                ("depth", depth.to_string()),
                ("digits", w),
                ("complete", determined.to_string()),
            ]);
            Ok(Outcome { record: s.record("expand", payload), table, undecided: !determined })
        }
    }
}

fn expansion(e: ExpansionError) -> CliError {
    domain(e)
}

pub fn count(s: &Setup, x: &str, depth: usize, cap: usize) -> Result<Outcome, CliError> {
    let (point, info) = s.point(x)?;
    let report = count_prefixes_capped(&s.params, &point, depth, cap).map_err(expansion)?;
    let mut table = Table::flat(&["depth", "count", "exact", "growth"]);
    let mut rows = Vec::new();
    for (j, (c, g)) in report.counts.iter().zip(&report.growth).enumerate() {
        let growth = format!("{g:.6}");
        table.rows.push(vec![j.to_string(), c.value().to_string(), c.is_exact().to_string(), growth.clone()]);
        rows.push(json!({"depth": j, "count": c.value().to_string(), "exact": c.is_exact(), "growth": growth}));
    }
    let payload = json!({"x": info, "depth": depth, "rows": rows});
    Ok(Outcome { record: s.record("count", payload), table, undecided: false })
}

/// Position of `beta` relative to `G(m)`.
fn regime(params: &ExpansionParams) -> &'static str {
    let b = params.beta_scalar();
    let poly = golden_ratio_polynomial(params.m());
    let mut value = params.integer(0);
    for c in poly.coefficients().iter().rev() {
        value = value.mul(b).add_rational(&Rational::from_integer(c.clone()));
    }
    match value.compare_rational(&rat::int(0)) {
        Some(Ordering::Greater) => "above_golden",
        Some(Ordering::Less) => "below_golden",
        Some(Ordering::Equal) => "at_golden",
        None => "undetermined",
    }
}

pub fn unique(s: &Setup, x: &str, max_steps: usize) -> Result<Outcome, CliError> {
    let (point, info) = s.point(x)?;
    let regime = regime(&s.params);
    let (verdict, detail, undecided) = match uniqueness_certificate(&s.params, &point, max_steps) {
        Ok(cert) => {
            let orbit: Vec<Value> = cert
                .orbit
                .iter()
                .map(|st| json!({"point": s.scalar(&st.point), "digit": st.digit}))
                .collect();
            match &cert.verdict {
                Verdict::Unique { cycle_start, cycle_len } => (
                    "unique",
                    json!({"cycle_start": cycle_start, "cycle_len": cycle_len, "orbit": orbit}),
                    false,
                ),
                Verdict::NotUnique { step, digits } => {
                    let branch = cert.branch_point.as_ref().map(|b| s.scalar(b));
                    ("not_unique", json!({"step": step, "digits": digits, "branch_point": branch, "orbit": orbit}), false)
                }
                Verdict::Undecided { horizon } => ("undecided", json!({"horizon": horizon}), true),
            }
        }
        Err(ExpansionError::InexactPoint) | Err(ExpansionError::Undetermined) => (
            "undetermined",
            json!({"reason": "a digit decision is not certified at this precision of beta"}),
            true,
        ),
        Err(e) => return Err(expansion(e)),
    };
    let payload = json!({"x": info, "max_steps": max_steps, "regime": regime, "verdict": verdict, "certificate": detail});
    let mut fields = vec![("verdict", verdict.to_string()), ("regime", regime.to_string())];
    if let Some(step) = detail.get("step") {
        fields.push(("branch_step", step.to_string()));
        fields.push(("branch_digits", detail["digits"].to_string()));
    }
    if let Some(len) = detail.get("cycle_len") {
        fields.push(("cycle_len", len.to_string()));
    }
    Ok(Outcome { record: s.record("unique", payload), table: Table::fields(fields), undecided })
}

pub fn dimension(s: &Setup, x: Option<&str>, depth: usize, cap: usize) -> Result<Outcome, CliError> {
    let data = certified_doubling_interval(&s.params).map_err(domain)?;
    let verified = verify_certificate(&s.params, &data.interval, &data.certificate).map_err(domain)?;
    let n_beta = data.certificate.n_beta;
    let lower = beta_forge::dimension::bound_from_n_beta(s.m, n_beta);
    let mut payload = json!({
        "parity_case": data.interval.parity_case,
        "construction": data.interval.epsilons.construction,
        "interval": {"lo": s.scalar(data.interval.lo()), "hi": s.scalar(data.interval.hi())},
        "n_beta": n_beta,
        "cover_pieces": data.certificate.pieces.len(),
        "certificate_verified": verified,
        "lower_bound": format!("{lower:.6}"),
    });
    let mut fields = vec![
        ("n_beta", n_beta.to_string()),
        ("lower_bound", format!("{lower:.6}")),
        ("interval", format!("[{}, {}]", s.scalar(data.interval.lo()), s.scalar(data.interval.hi()))),
        ("cover_pieces", data.certificate.pieces.len().to_string()),
        ("certificate_verified", verified.to_string()),
    ];
    if let Some(spec) = x {
        let (point, info) = s.point(spec)?;
        let b = dimension_lower_bound_with(&s.params, &data, &point, depth, cap).map_err(domain)?;
        let growth = format!("{:.6}", b.empirical_lower);
        payload["point"] = json!({
            "x": info,
            "j_x": b.j_x,
            "depth": depth,
            "empirical_growth": growth,
            "empirical_exact": b.empirical_exact,
        });
        fields.push(("j_x", b.j_x.to_string()));
        fields.push(("empirical_growth", growth));
    }
    Ok(Outcome { record: s.record("dimension", payload), table: Table::fields(fields), undecided: false })
}
