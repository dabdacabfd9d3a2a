//! One function per subcommand. Each returns the report text plus a one-line
//! verdict; failed invariants are listed so the caller can pick the exit code.

use serde::Serialize;
use serde_json::json;
use twistlab_core::growth::default_generators;
use twistlab_core::pi::test_identity;
use twistlab_core::simplicity::audit;
use twistlab_core::{
    gk_estimate, growth_table, Error, FreeBasis, KernelLattice, QuotientRing, Result, Tower,
};

use crate::config::{ExperimentConfig, Format};
use crate::formats::{growth_csv, GkJson, LatticeJson, PiReportJson, TowerJson, TraceJson};
use crate::literal::{format_element, parse_element};
use crate::VERSION;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: String,
    pub verdict: String,
    /// Names of invariants that did not hold.
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `{version, command, config, result}`, pretty printed with a newline.
pub fn envelope<T: Serialize>(
    command: &str,
    config: &ExperimentConfig,
    result: &T,
) -> Result<String> {
    let value = json!({
        "version": VERSION,
        "command": command,
        "config": config,
        "result": result,
    });
    let mut text = serde_json::to_string_pretty(&value)
        .map_err(|e| Error::InternalConsistency(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn require(field: Option<&String>, name: &str) -> Result<String> {
    field
        .cloned()
        .ok_or_else(|| Error::Usage(format!("--{name} is required")))
}

pub fn tower(config: &ExperimentConfig) -> Result<Outcome> {
    let tower = Tower::build(config.tower_config())?;
    let json = TowerJson::from_tower(&tower);
    let mut failures = Vec::new();
    if TowerJson::from_tower(&json.to_tower(config.order_budget)?) != json {
        failures.push("tower JSON round trip".into());
    }
    let orders: Vec<String> = tower
        .levels()
        .iter()
        .map(|l| l.order().to_string())
        .collect();
    Ok(Outcome {
        report: envelope("tower", config, &json)?,
        verdict: format!("tower with level orders {}", orders.join(", ")),
        failures,
    })
}

pub fn center(config: &ExperimentConfig) -> Result<Outcome> {
    let c = config.construction()?;
    let k = config.level();
    let ctx = c.context(k)?;
    let lattice = KernelLattice::compute(&ctx)?;
    let basis = FreeBasis::new(&ctx)?;
    let mut failures = Vec::new();
    let expected = (config.p as u64).pow(k as u32);
    if lattice.index() != expected {
        failures.push(format!(
            "lattice index {} != p^k = {expected}",
            lattice.index()
        ));
    }
    if basis.len() as u64 != expected * expected {
        failures.push(format!("free rank {} != p^2k", basis.len()));
    }
    let json = LatticeJson::from_lattice(&lattice);
    Ok(Outcome {
        verdict: format!("H_{k} has index {} with basis {:?}", json.index, json.basis),
        report: envelope("center", config, &json)?,
        failures,
    })
}

pub fn simplicity(config: &ExperimentConfig) -> Result<Outcome> {
    let c = config.construction()?;
    let ctx = c.context(config.level())?;
    let literal = require(config.element.as_ref(), "element")?;
    let r = parse_element(&ctx, &literal)?;
    let trace = twistlab_core::unit_in_ideal(&c, &r)?;
    let work = c.context(trace.separating_level)?;
    let audited = audit(&c, &trace)?;
    let json = TraceJson::from_trace(&ctx, &work, &trace);
    let mut failures = Vec::new();
    if !audited {
        failures.push("trace audit".into());
    }
    Ok(Outcome {
        verdict: format!(
            "unit {} reached in {} steps at level {}",
            json.final_unit,
            json.steps.len(),
            trace.separating_level
        ),
        report: envelope("simplicity", config, &json)?,
        failures,
    })
}

pub fn pi_test(config: &ExperimentConfig) -> Result<Outcome> {
    let c = config.construction()?;
    let ctx = c.context(config.level())?;
    let degree = config
        .degree
        .ok_or_else(|| Error::Usage("--degree is required".into()))?;
    let trials = config.trials.unwrap_or(100);
    let report = test_identity(&ctx, degree, trials, config.seed)?;
    let json = PiReportJson::from_report(&ctx, &report);
    let mut failures = Vec::new();
    if let Some(w) = &report.witness {
        let again = twistlab_core::standard_polynomial(&ctx, &w.elements)?;
        if again != w.value {
            failures.push("witness value reproduces".into());
        }
    }
    Ok(Outcome {
        verdict: json.verdict(),
        report: envelope("pi-test", config, &json)?,
        failures,
    })
}

pub fn growth(config: &ExperimentConfig) -> Result<Outcome> {
    let c = config.construction()?;
    let ctx = c.context(config.level())?;
    let n_max = config.n_max.unwrap_or(24);
    let table = growth_table(&ctx, &default_generators(&ctx), n_max, config.grade_budget)?;
    let estimate = gk_estimate(&table).ok().map(GkJson::from);
    let mut failures = Vec::new();
    if table.rows.windows(2).any(|w| w[0] > w[1]) {
        failures.push("filtration dimensions are nondecreasing".into());
    }
    let verdict = match (&estimate, table.cutoff) {
        (_, Some(n)) => format!("grade budget exhausted at N = {n}"),
        (Some(e), None) => format!(
            "gk_estimate slope={:.4} residual={:.4} points={}",
            e.slope, e.residual, e.points
        ),
        (None, None) => "too few rows for an estimate".into(),
    };
    let report = match config.format {
        Format::Csv => {
            let cfg = serde_json::to_string(config)
                .map_err(|e| Error::InternalConsistency(e.to_string()))?;
            let mut text = format!("# {VERSION} config={cfg}\n");
            if let Some(e) = &estimate {
                text.push_str(&format!(
                    "# gk_estimate slope={:.6} residual={:.6} points={}\n",
                    e.slope, e.residual, e.points
                ));
            }
            text + &growth_csv(&table)?
        }
        Format::Json => envelope(
            "growth",
            config,
            &json!({ "rows": table.rows, "cutoff": table.cutoff, "estimate": estimate }),
        )?,
    };
    Ok(Outcome {
        report,
        verdict,
        failures,
    })
}

pub fn invert(config: &ExperimentConfig) -> Result<Outcome> {
    let c = config.construction()?;
    let ctx = c.context(config.level())?;
    let quot = QuotientRing::new(&ctx)?.allow_large(config.allow_large);
    let num = parse_element(&ctx, &require(config.element.as_ref(), "element")?)?;
    let f = match &config.denominator {
        None => quot.from_ring(num)?,
        Some(d) => quot.fraction(num, parse_element(&ctx, d)?)?,
    };
    let inv = quot.invert(&f)?;
    let product = quot.mul(&f, &inv)?;
    let mut failures = Vec::new();
    if !quot.is_one(&product) {
        failures.push("f * f^-1 = 1".into());
    }
    let show = |x: &twistlab_core::CentralFraction| json!({ "num": format_element(&ctx, x.num()), "den": format_element(&ctx, x.den()) });
    let result = json!({
        "input": show(&f),
        "inverse": show(&inv),
        "product": show(&product),
        "product_is_one": quot.is_one(&product),
    });
    Ok(Outcome {
        verdict: format!(
            "inverse ({}) / ({}); product is {}",
            format_element(&ctx, inv.num()),
            format_element(&ctx, inv.den()),
            if quot.is_one(&product) { "1" } else { "not 1" }
        ),
        report: envelope("invert", config, &result)?,
        failures,
    })
}
