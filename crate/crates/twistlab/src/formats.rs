//! JSON and CSV shapes for towers, actions, lattices, traces and reports.

use serde::{Deserialize, Serialize};
use twistlab_core::action::level_horizon;
use twistlab_core::growth::GrowthTable;
use twistlab_core::pi::PiReport;
use twistlab_core::{
    ActionConfig, Error, GkEstimate, GroupWord, KernelLattice, PAdicExponent, Result, RingContext,
    ShrinkTrace, Tower, TowerConfig,
};

use crate::literal::{format_element, format_field, parse_element, parse_field};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelJson {
    pub m: usize,
    /// Lowest degree first, `GF(q)` indices.
    pub defining_polynomial: Vec<u32>,
    /// Coordinates of this level's generator in level `m + 1`.
    pub embedding_up: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerJson {
    pub p: u32,
    pub q: u32,
    pub levels: Vec<LevelJson>,
}

impl TowerJson {
    pub fn from_tower(tower: &Tower) -> Self {
        TowerJson {
            p: tower.p(),
            q: tower.q(),
            levels: tower
                .levels()
                .iter()
                .map(|l| LevelJson {
                    m: l.level(),
                    defining_polynomial: l.defining_polynomial().to_vec(),
                    embedding_up: l.embedding_up().map(|e| tower.coords(e)),
                })
                .collect(),
        }
    }

    /// Rebuilds the tower from the stored polynomials and embeddings,
    /// validating every one of them.
    pub fn to_tower(&self, order_budget: u64) -> Result<Tower> {
        let k_max = self
            .levels
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidConfig("tower has no levels".into()))?;
        if self.levels.iter().enumerate().any(|(i, l)| l.m != i) {
            return Err(Error::InvalidConfig(
                "levels must be listed in order".into(),
            ));
        }
        let polys = self
            .levels
            .iter()
            .map(|l| l.defining_polynomial.clone())
            .collect();
        let embeddings = self.levels[..k_max]
            .iter()
            .map(|l| {
                l.embedding_up.clone().ok_or_else(|| {
                    Error::InvalidConfig(format!("level {} lacks embedding_up", l.m))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if self.levels[k_max].embedding_up.is_some() {
            return Err(Error::InvalidConfig(
                "top level cannot embed further".into(),
            ));
        }
        let config = TowerConfig::new(self.p, self.q, k_max).with_budget(order_budget);
        Tower::from_parts(config, polys, embeddings)
    }
}

/// Exponents are listed by their digit positions below `horizon`; digits
/// beyond it never influence a materializable level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionJson {
    pub n: usize,
    pub p: u32,
    pub horizon: u32,
    pub exponents: Vec<Vec<u32>>,
}

impl ActionJson {
    pub fn from_action(action: &ActionConfig) -> Self {
        let horizon = level_horizon(action.p());
        ActionJson {
            n: action.rank(),
            p: action.p(),
            horizon,
            exponents: action
                .exponents()
                .iter()
                .map(|a| a.positions_below(horizon))
                .collect(),
        }
    }

    pub fn to_action(&self) -> Result<ActionConfig> {
        if self.exponents.len() != self.n {
            return Err(Error::InvalidConfig(format!(
                "n = {} but {} exponents given",
                self.n,
                self.exponents.len()
            )));
        }
        let exps = self
            .exponents
            .iter()
            .enumerate()
            .map(|(i, pos)| {
                if i == 0 && pos == &[0] {
                    Ok(PAdicExponent::one())
                } else {
                    PAdicExponent::finite(pos.clone(), format!("a_{}", i + 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        ActionConfig::new(self.p, exps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub k: usize,
    pub basis: Vec<Vec<i64>>,
    pub index: u64,
}

impl LatticeJson {
    pub fn from_lattice(lattice: &KernelLattice) -> Self {
        LatticeJson {
            k: lattice.level(),
            basis: lattice.basis().to_vec(),
            index: lattice.index(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub k: usize,
    pub d: String,
    pub g0: Vec<i64>,
    pub g1: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub input: String,
    pub input_level: usize,
    pub steps: Vec<StepJson>,
    pub final_unit: String,
}

impl TraceJson {
    /// `input_ctx` is the level of the input, `work` the separating level.
    pub fn from_trace(input_ctx: &RingContext, work: &RingContext, trace: &ShrinkTrace) -> Self {
        TraceJson {
            input: format_element(input_ctx, &trace.input),
            input_level: input_ctx.level(),
            steps: trace
                .steps
                .iter()
                .map(|s| StepJson {
                    k: s.level,
                    d: format_field(work.tower(), s.d),
                    g0: s.g0.to_vec(),
                    g1: s.g1.to_vec(),
                })
                .collect(),
            final_unit: format_element(work, &trace.final_unit),
        }
    }

    /// Inverse of [`TraceJson::from_trace`]; `lambda` is recomputed.
    pub fn to_trace(&self, input_ctx: &RingContext, work: &RingContext) -> Result<ShrinkTrace> {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let d = parse_field(work, &s.d)?;
                let g0 = GroupWord::new(s.g0.clone());
                Ok(twistlab_core::ShrinkStep {
                    level: s.k,
                    d,
                    lambda: work.act(&g0, d),
                    g0,
                    g1: GroupWord::new(s.g1.clone()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ShrinkTrace {
            input: parse_element(input_ctx, &self.input)?,
            separating_level: work.level(),
            steps,
            final_unit: parse_element(work, &self.final_unit)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub elements: Vec<String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiReportJson {
    pub level: usize,
    pub degree: usize,
    pub trials: u64,
    pub vanish_count: u64,
    pub seed: u64,
    pub witness: Option<WitnessJson>,
}

impl PiReportJson {
    pub fn from_report(ctx: &RingContext, report: &PiReport) -> Self {
        PiReportJson {
            level: report.level,
            degree: report.degree,
            trials: report.trials,
            vanish_count: report.vanish_count,
            seed: report.seed,
            witness: report.witness.as_ref().map(|w| WitnessJson {
                elements: w.elements.iter().map(|r| format_element(ctx, r)).collect(),
                value: format_element(ctx, &w.value),
            }),
        }
    }

    pub fn verdict(&self) -> String {
        match &self.witness {
            None => format!(
                "S_{} vanished on {}/{} tuples at level {}",
                self.degree, self.vanish_count, self.trials, self.level
            ),
            Some(_) => format!(
                "S_{} fails at level {}: nonzero on {}/{} tuples",
                self.degree,
                self.level,
                self.trials - self.vanish_count,
                self.trials
            ),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GkJson {
    pub slope: f64,
    pub residual: f64,
    pub points: usize,
}

impl From<GkEstimate> for GkJson {
    fn from(e: GkEstimate) -> Self {
        GkJson {
            slope: e.slope,
            residual: e.residual,
            points: e.points,
        }
    }
}

#[derive(Serialize)]
struct GrowthRow {
    #[serde(rename = "N")]
    n: usize,
    dim: u64,
}

/// `N,dim` rows with a header line.
pub fn growth_csv(table: &GrowthTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (n, &dim) in table.rows.iter().enumerate() {
        w.serialize(GrowthRow { n, dim })
            .map_err(|e| Error::InternalConsistency(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InternalConsistency(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InternalConsistency(e.to_string()))
}

/// Reads back the `N,dim` rows written by [`growth_csv`]; `#` lines are
/// skipped.
pub fn parse_growth_csv(text: &str) -> Result<Vec<u64>> {
    #[derive(Deserialize)]
    struct Row {
        #[serde(rename = "N")]
        n: usize,
        dim: u64,
    }
    let mut rows = Vec::new();
    for (i, rec) in csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .deserialize::<Row>()
        .enumerate()
    {
        let rec = rec.map_err(|e| Error::Usage(format!("growth csv: {e}")))?;
        if rec.n != i {
            return Err(Error::Usage(format!(
                "growth csv: row {i} labelled N = {}",
                rec.n
            )));
        }
        rows.push(rec.dim);
    }
    Ok(rows)
}
