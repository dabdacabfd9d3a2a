//! Growth of `V^N = span{products of ≤ N generators}` for homogeneous
//! generators, counted grade by grade.
//!
//! For homogeneous generators `V^N` is graded, and its component at `g` is
//! `W_g · g` for an `F`-subspace `W_g ⊆ L_k`; so `dim V^N = Σ_g dim W_g`.
//! Right multiplication by `c h` sends `W_g` to `W_g · ψ(g)(c)` in degree
//! `g + h`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::action::GroupWord;
use crate::error::{Error, Result};
use crate::field::GaloisField;
use crate::ring::{RingContext, RingElement};
use crate::tower::FieldElement;

/// Default ceiling on the number of grades tracked.
pub const DEFAULT_GRADE_BUDGET: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthTable {
    pub generators: Vec<RingElement>,
    /// `rows[N] = dim_F V^N`.
    pub rows: Vec<u64>,
    pub n_max: usize,
    /// First `N` that was not computed because the grade budget ran out.
    pub cutoff: Option<usize>,
}

/// Row-reduced basis of a subspace of `GF(q)^d`.
#[derive(Clone, Debug, Default)]
struct Subspace {
    rows: Vec<(usize, Vec<u32>)>,
}

impl Subspace {
    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v`; true when the dimension grew.
    fn insert(&mut self, f: &GaloisField, mut v: Vec<u32>) -> bool {
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Dimensions of `V^0 ⊆ V^1 ⊆ … ⊆ V^{n_max}` with `V = F + Σ F·gen`.
pub fn growth_table(
    ctx: &RingContext,
    generators: &[RingElement],
    n_max: usize,
    grade_budget: usize,
) -> Result<GrowthTable> {
    let mut gens: Vec<(GroupWord, FieldElement)> = Vec::new();
    for r in generators {
        ctx.check(r)?;
        if !r.is_homogeneous() || r.is_zero() {
            return Err(Error::Usage(format!(
                "growth generators must be nonzero and homogeneous; got {} terms",
                r.len()
            )));
        }
        let (g, c) = r.terms().next().unwrap();
        gens.push((g.clone(), *c));
    }
    let tower = ctx.tower();
    let field = tower.base_field();
    let mut grades: BTreeMap<GroupWord, Subspace> = BTreeMap::new();
    let mut unit = Subspace::default();
    unit.insert(field, tower.coords(tower.one(ctx.level())));
    grades.insert(GroupWord::zero(ctx.rank()), unit);
    let mut rows = Vec::with_capacity(n_max + 1);
    rows.push(1);
    let mut cutoff = None;
    for n in 1..=n_max {
        let mut next = grades.clone();
        for (g, space) in &grades {
            for (h, c) in &gens {
                let twist = ctx.act(g, *c);
                let target = next.entry(g + h).or_default();
                for (_, row) in &space.rows {
                    let w = tower.from_coords(ctx.level(), row)?;
                    target.insert(field, tower.coords(tower.mul(w, twist)));
                }
            }
        }
        if next.len() > grade_budget {
            cutoff = Some(n);
            break;
        }
        grades = next;
        rows.push(grades.values().map(|s| s.dim() as u64).sum());
    }
    Ok(GrowthTable {
        generators: generators.to_vec(),
        rows,
        n_max,
        cutoff,
    })
}

/// `{θ, x_1^{±1}, …, x_n^{±1}}`, which generates `S_k` as an `F`-algebra.
pub fn default_generators(ctx: &RingContext) -> Vec<RingElement> {
    let mut gens = Vec::new();
    if ctx.level() > 0 {
        gens.push(ctx.theta());
    }
    for i in 0..ctx.rank() {
        gens.push(ctx.x(i, 1));
        gens.push(ctx.x(i, -1));
    }
    gens
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GkEstimate {
    pub slope: f64,
    /// Root mean square of the fit residuals.
    pub residual: f64,
    pub points: usize,
}

/// Least-squares slope of `log dim V^N` against `log N` over the top half of
/// the table. A table that has stopped growing over that range reports 0.
pub fn gk_estimate(table: &GrowthTable) -> Result<GkEstimate> {
    let last = table.rows.len().saturating_sub(1);
    let first = last.div_ceil(2).max(1);
    let points = (last + 1).saturating_sub(first);
    if points < 6 {
        return Err(Error::Usage(format!(
            "need at least 6 rows in the fitted range, have {points}"
        )));
    }
    if table.rows[first] == table.rows[last] {
        return Ok(GkEstimate {
            slope: 0.0,
            residual: 0.0,
            points,
        });
    }
    let xs: Vec<f64> = (first..=last).map(|n| libm::log(n as f64)).collect();
    let ys: Vec<f64> = (first..=last)
        .map(|n| libm::log(table.rows[n] as f64))
        .collect();
    let len = points as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - intercept - slope * x;
            e * e
        })
        .sum();
    Ok(GkEstimate {
        slope,
        residual: libm::sqrt(sse / len),
        points,
    })
}
