//! End-to-end pipeline from a bipath function to its diagram, and the stability
//! check `d_B(B(V(f)), B(V(g))) <= ||f, g||`.

use rand::Rng;
use thiserror::Error as ThisError;

use crate::bottleneck::bottleneck_distance;
use crate::decomp::{decompose, GridDiagram};
use crate::diagram::{grid_diagram_to_continuous, Diagram};
use crate::homology::{build_filtration, compute_module, sup_distance, BValue, BipathFunction, SimplicialComplex};
use crate::linalg::PrimeField;
use crate::Error;

/// Slack allowed when comparing independently computed reals.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, ThisError, Clone, PartialEq)]
pub enum StabilityError {
    #[error(
        "the two functions send different simplices to -inf (first difference at {0}); \
         the stability bound only applies when f and g share the same -inf part on both arms"
    )]
    DifferentNegInfFibers(String),
}

/// The finite diagram of `H_q` of the sublevel filtration of `f`, and its continuous form.
pub fn persistence_diagrams(
    complex: &SimplicialComplex,
    f: &BipathFunction,
    q: usize,
    field: PrimeField,
) -> Result<(GridDiagram, Diagram), Error> {
    let filtration = build_filtration(complex, f)?;
    let module = compute_module(&filtration, q, field)?;
    let grid = decompose(&module)?;
    let continuous = grid_diagram_to_continuous(&grid, filtration.upper_values(), filtration.lower_values())?;
    Ok((grid, continuous))
}

pub fn persistence_diagram(
    complex: &SimplicialComplex,
    f: &BipathFunction,
    q: usize,
    field: PrimeField,
) -> Result<Diagram, Error> {
    Ok(persistence_diagrams(complex, f, q, field)?.1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    /// Bottleneck distance between the two diagrams.
    pub lhs: f64,
    /// `||f, g||`.
    pub rhs: f64,
    pub holds: bool,
}

pub fn stability_report(
    complex: &SimplicialComplex,
    f: &BipathFunction,
    g: &BipathFunction,
    q: usize,
    field: PrimeField,
) -> Result<StabilityReport, Error> {
    f.validate(complex)?;
    g.validate(complex)?;
    if let Some(k) = (0..complex.len()).find(|&k| f.neg_inf_fiber()[k] != g.neg_inf_fiber()[k]) {
        return Err(StabilityError::DifferentNegInfFibers(complex.simplex_label(k)).into());
    }
    let lhs = bottleneck_distance(
        &persistence_diagram(complex, f, q, field)?,
        &persistence_diagram(complex, g, q, field)?,
    );
    let rhs = sup_distance(f, g)?;
    Ok(StabilityReport { lhs, rhs, holds: lhs <= rhs + TOLERANCE })
}

/// Adds independent uniform noise in `[-delta, delta]` to every finite value.
pub fn perturb_values(values: &[BValue], delta: f64, rng: &mut impl Rng) -> Vec<BValue> {
    values
        .iter()
        .map(|&v| match v {
            BValue::Finite(x) if delta > 0.0 => BValue::Finite(x + rng.gen_range(-delta..=delta)),
            other => other,
        })
        .collect()
}

/// Perturbs every simplex value, then restores face monotonicity by raising each
/// simplex to the maximum over its faces. The result stays within `delta` of `f`.
pub fn perturb_simplexwise(
    complex: &SimplicialComplex,
    f: &BipathFunction,
    delta: f64,
    rng: &mut impl Rng,
) -> BipathFunction {
    let mut g = BipathFunction::new(perturb_values(&f.f1, delta, rng), perturb_values(&f.f2, delta, rng));
    let dim = complex.dimension().unwrap_or(0);
    for q in 1..=dim {
        for &k in complex.of_dim(q) {
            for face in complex.facets(k) {
                g.f1[k] = g.f1[k].max(g.f1[face]);
                g.f2[k] = g.f2[k].max(g.f2[face]);
            }
        }
    }
    g
}
