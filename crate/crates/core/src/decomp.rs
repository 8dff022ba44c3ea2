//! Persistence modules over `B_{n,m}` and their interval decomposition by Hom counting.
//!
//! For an interval-decomposable `V`, `dim Hom(k_I, V) = sum_J m_V(J) |Omega(I, J)|`.
//! The nonzero-Hom relation is acyclic, so the multiplicities fall out of a
//! unitriangular back-substitution along a topological order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::diagram::{contained_in_thickening, is_trivial, ContinuousInterval, Diagram};
use crate::linalg::{self, LinalgError, Matrix, PrimeField};
use crate::poset::{enumerate_intervals, omega_count, Arm, GridInterval, GridPoset};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModuleError {
    #[error("expected {expected} entries in {what}, got {got}")]
    Count { what: &'static str, expected: usize, got: usize },
    #[error("map {from} -> {to} has shape {rows}x{cols}, expected {exp_rows}x{exp_cols}")]
    EdgeShape {
        from: String,
        to: String,
        rows: usize,
        cols: usize,
        exp_rows: usize,
        exp_cols: usize,
    },
    #[error("map {from} -> {to} is over a different field")]
    EdgeField { from: String, to: String },
    #[error("the composites -inf -> +inf along the upper and lower paths differ")]
    NotFunctorial,
    #[error("intervals live on different posets")]
    PosetMismatch,
    #[error("the nonzero-Hom relation has a cycle through {0}")]
    HomCycle(String),
    #[error("negative multiplicity {value} for interval {interval}")]
    NegativeMultiplicity { interval: String, value: i64 },
    #[error("decomposition does not account for dim V at {element}: {expected} vs {got}")]
    DimensionMismatch { element: String, expected: usize, got: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A pointwise finite-dimensional representation of `B_{n,m}` over `GF(p)`.
///
/// Edge maps are stored per path: `upper[k]` is the map from position `k` to `k+1`
/// on the upper path (position 0 is `-inf`, position `n+1` is `+inf`), likewise `lower`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipathModule {
    poset: GridPoset,
    field: PrimeField,
    dims: Vec<usize>,
    upper: Vec<Matrix>,
    lower: Vec<Matrix>,
}

impl BipathModule {
    /// Assembles a module; shapes and functoriality are checked by [`validate_module`].
    pub fn from_parts(
        poset: GridPoset,
        field: PrimeField,
        dims: Vec<usize>,
        upper: Vec<Matrix>,
        lower: Vec<Matrix>,
    ) -> Self {
        Self { poset, field, dims, upper, lower }
    }

    pub fn zero(poset: GridPoset, field: PrimeField) -> Self {
        let upper = (0..=poset.n).map(|_| Matrix::zeros(field, 0, 0)).collect();
        let lower = (0..=poset.m).map(|_| Matrix::zeros(field, 0, 0)).collect();
        Self { poset, field, dims: vec![0; poset.len()], upper, lower }
    }

    pub fn poset(&self) -> GridPoset {
        self.poset
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self, element: usize) -> usize {
        self.dims[element]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn edges(&self, arm: Arm) -> &[Matrix] {
        match arm {
            Arm::Upper => &self.upper,
            Arm::Lower => &self.lower,
        }
    }

    /// The covering map from path position `pos` to `pos + 1`.
    pub fn edge(&self, arm: Arm, pos: usize) -> &Matrix {
        &self.edges(arm)[pos]
    }

    /// Composite map from path position `from` to `to` (`from <= to`).
    pub fn path_map(&self, arm: Arm, from: usize, to: usize) -> Matrix {
        assert!(from <= to);
        let start = self.poset.path_element(arm, from);
        let mut acc = Matrix::identity(self.field, self.dims[start]);
        for k in from..to {
            acc = self.edges(arm)[k].mul(&acc).expect("validated module has matching shapes");
        }
        acc
    }

    /// `T_q V(p, q) T_p^{-1}` for invertible per-element basis changes `T`.
    pub fn change_basis(&self, bases: &[Matrix]) -> Result<BipathModule, ModuleError> {
        if bases.len() != self.poset.len() {
            return Err(ModuleError::Count { what: "basis changes", expected: self.poset.len(), got: bases.len() });
        }
        let inverses = bases.iter().map(linalg::inverse).collect::<Result<Vec<_>, _>>()?;
        let conj = |arm: Arm| -> Result<Vec<Matrix>, ModuleError> {
            (0..=self.poset.arm_len(arm))
                .map(|pos| {
                    let p = self.poset.path_element(arm, pos);
                    let q = self.poset.path_element(arm, pos + 1);
                    Ok(bases[q].mul(self.edge(arm, pos))?.mul(&inverses[p])?)
                })
                .collect()
        };
        Ok(BipathModule {
            poset: self.poset,
            field: self.field,
            dims: self.dims.clone(),
            upper: conj(Arm::Upper)?,
            lower: conj(Arm::Lower)?,
        })
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &BipathModule) -> Result<BipathModule, ModuleError> {
        if self.poset != other.poset {
            return Err(ModuleError::PosetMismatch);
        }
        let block = |a: &Matrix, b: &Matrix| -> Result<Matrix, LinalgError> {
            let top = a.hstack(&Matrix::zeros(self.field, a.rows(), b.cols()))?;
            let bottom = Matrix::zeros(self.field, b.rows(), a.cols()).hstack(b)?;
            top.vstack(&bottom)
        };
        let upper = self.upper.iter().zip(&other.upper).map(|(a, b)| block(a, b)).collect::<Result<_, _>>()?;
        let lower = self.lower.iter().zip(&other.lower).map(|(a, b)| block(a, b)).collect::<Result<_, _>>()?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        Ok(BipathModule { poset: self.poset, field: self.field, dims, upper, lower })
    }
}

/// Checks dimensions, map shapes and that both paths give the same `V(-inf, +inf)`.
pub fn validate_module(v: &BipathModule) -> Result<(), ModuleError> {
    let poset = v.poset;
    if v.dims.len() != poset.len() {
        return Err(ModuleError::Count { what: "dimensions", expected: poset.len(), got: v.dims.len() });
    }
    for arm in [Arm::Upper, Arm::Lower] {
        let edges = v.edges(arm);
        let expected = poset.arm_len(arm) + 1;
        if edges.len() != expected {
            let what = if arm == Arm::Upper { "upper path maps" } else { "lower path maps" };
            return Err(ModuleError::Count { what, expected, got: edges.len() });
        }
        for (pos, map) in edges.iter().enumerate() {
            let p = poset.path_element(arm, pos);
            let q = poset.path_element(arm, pos + 1);
            if map.field() != v.field {
                return Err(ModuleError::EdgeField { from: poset.label(p), to: poset.label(q) });
            }
            if map.rows() != v.dims[q] || map.cols() != v.dims[p] {
                return Err(ModuleError::EdgeShape {
                    from: poset.label(p),
                    to: poset.label(q),
                    rows: map.rows(),
                    cols: map.cols(),
                    exp_rows: v.dims[q],
                    exp_cols: v.dims[p],
                });
            }
        }
    }
    let up = v.path_map(Arm::Upper, 0, poset.n + 1);
    let down = v.path_map(Arm::Lower, 0, poset.m + 1);
    if up != down {
        return Err(ModuleError::NotFunctorial);
    }
    Ok(())
}

/// A finite multiset of intervals of one `B_{n,m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDiagram {
    poset: GridPoset,
    entries: BTreeMap<GridInterval, usize>,
}

impl GridDiagram {
    pub fn new(poset: GridPoset) -> Self {
        Self { poset, entries: BTreeMap::new() }
    }

    pub fn poset(&self) -> GridPoset {
        self.poset
    }

    pub fn add(&mut self, interval: GridInterval, mult: usize) -> Result<(), ModuleError> {
        if interval.poset() != self.poset {
            return Err(ModuleError::PosetMismatch);
        }
        if mult > 0 {
            *self.entries.entry(interval).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn multiplicity(&self, interval: &GridInterval) -> usize {
        self.entries.get(interval).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GridInterval, usize)> {
        self.entries.iter().map(|(i, &m)| (i, m))
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(i, &m)| if m == 1 { i.to_string() } else { format!("{i} x{m}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `sum_I k_I^{m(I)}` with the standard basis at every element.
pub fn realize(diagram: &GridDiagram, field: PrimeField) -> BipathModule {
    let poset = diagram.poset;
    // basis at each element: one vector per copy of each interval containing it
    let copies: Vec<&GridInterval> = diagram
        .entries
        .iter()
        .flat_map(|(i, &m)| std::iter::repeat(i).take(m))
        .collect();
    let index: Vec<Vec<Option<usize>>> = (0..poset.len())
        .map(|e| {
            let mut next = 0;
            copies
                .iter()
                .map(|i| {
                    i.contains(e).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = (0..poset.len()).map(|e| index[e].iter().flatten().count()).collect();
    let maps = |arm: Arm| -> Vec<Matrix> {
        (0..=poset.arm_len(arm))
            .map(|pos| {
                let p = poset.path_element(arm, pos);
                let q = poset.path_element(arm, pos + 1);
                let mut m = Matrix::zeros(field, dims[q], dims[p]);
                for c in 0..copies.len() {
                    if let (Some(a), Some(b)) = (index[p][c], index[q][c]) {
                        m.set(b, a, 1);
                    }
                }
                m
            })
            .collect()
    };
    let (upper, lower) = (maps(Arm::Upper), maps(Arm::Lower));
    BipathModule { poset, field, dims, upper, lower }
}

/// `dim Hom(k_I, V)`.
///
/// A morphism is determined by its values at the minima of `I`; the remaining
/// conditions say those values die on leaving `I` and agree at `+inf`.
pub fn hom_dim(interval: &GridInterval, v: &BipathModule) -> Result<usize, ModuleError> {
    use crate::poset::GridShape::*;
    if interval.poset() != v.poset {
        return Err(ModuleError::PosetMismatch);
    }
    let (n, m) = (v.poset.n, v.poset.m);
    let kernel_dim = |map: &Matrix| map.cols() - linalg::rank(map);
    Ok(match interval.shape() {
        Upper { start, end } => kernel_dim(&v.path_map(Arm::Upper, start, end + 1)),
        Lower { start, end } => kernel_dim(&v.path_map(Arm::Lower, start, end + 1)),
        Whole => v.dims[v.poset.bottom()],
        Left { upper_to, lower_to } => {
            let up = v.path_map(Arm::Upper, 0, upper_to + 1);
            let down = v.path_map(Arm::Lower, 0, lower_to + 1);
            kernel_dim(&up.vstack(&down)?)
        }
        Right { upper_from, lower_from } => match (upper_from <= n, lower_from <= m) {
            (true, true) => {
                let up = v.path_map(Arm::Upper, upper_from, n + 1);
                let down = v.path_map(Arm::Lower, lower_from, m + 1);
                let p = v.field.modulus() - 1;
                kernel_dim(&up.hstack(&down.scale(p))?)
            }
            (true, false) => v.dims[v.poset.upper(upper_from)],
            (false, true) => v.dims[v.poset.lower(lower_from)],
            (false, false) => v.dims[v.poset.top()],
        },
    })
}

/// `dim Hom(k_I, V)` from the full system: one unknown vector per element of `I`,
/// `V(p,q) v_p = v_q` along covering edges inside `I` and `V(p,q) v_p = 0` on leaving `I`.
pub fn hom_dim_by_full_system(interval: &GridInterval, v: &BipathModule) -> Result<usize, ModuleError> {
    if interval.poset() != v.poset {
        return Err(ModuleError::PosetMismatch);
    }
    let poset = v.poset;
    let mut offset = vec![usize::MAX; poset.len()];
    let mut unknowns = 0;
    for e in interval.elements() {
        offset[e] = unknowns;
        unknowns += v.dims[e];
    }
    let mut blocks: Vec<Matrix> = Vec::new();
    let p = v.field.modulus() - 1;
    for (arm, from, to) in poset.path_edges() {
        if !interval.contains(from) {
            continue;
        }
        let pos = match poset.locate(from) {
            Some((_, i)) => i,
            None => 0,
        };
        let map = v.edge(arm, pos);
        let mut rows = Matrix::zeros(v.field, v.dims[to], unknowns);
        for r in 0..v.dims[to] {
            for c in 0..v.dims[from] {
                rows.set(r, offset[from] + c, map.get(r, c));
            }
            if interval.contains(to) {
                let c = offset[to] + r;
                rows.set(r, c, v.field.add(rows.get(r, c), p));
            }
        }
        blocks.push(rows);
    }
    let mut system = Matrix::zeros(v.field, 0, unknowns);
    for b in &blocks {
        system = system.vstack(b)?;
    }
    Ok(unknowns - linalg::rank(&system))
}

/// Orders intervals so that every nonzero `Hom(k_I, k_J)`, `I != J`, points forward.
/// Ties are broken by class (`R`, `U`, `B`, `D`, `L`) and then by shape.
pub fn hom_order(intervals: &[GridInterval]) -> Result<Vec<usize>, ModuleError> {
    let k = intervals.len();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    for a in 0..k {
        for b in 0..k {
            if a != b && omega_count(&intervals[a], &intervals[b]) > 0 {
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
    }
    let mut ready: BTreeSet<(u8, crate::poset::GridShape, usize)> = (0..k)
        .filter(|&a| indeg[a] == 0)
        .map(|a| {
            let (c, s) = intervals[a].order_key();
            (c, s, a)
        })
        .collect();
    let mut order = Vec::with_capacity(k);
    while let Some(first) = ready.pop_first() {
        let a = first.2;
        order.push(a);
        for &b in &succ[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                let (c, s) = intervals[b].order_key();
                ready.insert((c, s, b));
            }
        }
    }
    if order.len() < k {
        let stuck = (0..k).find(|&a| indeg[a] > 0).expect("some interval is on a cycle");
        return Err(ModuleError::HomCycle(intervals[stuck].to_string()));
    }
    Ok(order)
}

/// The interval decomposition of `V`.
pub fn decompose(v: &BipathModule) -> Result<GridDiagram, ModuleError> {
    validate_module(v)?;
    let poset = v.poset;
    // m(J) > 0 forces dim Hom(k_J, V) > 0, so only that support matters
    let mut support = Vec::new();
    let mut h = Vec::new();
    for interval in enumerate_intervals(&poset) {
        let d = hom_dim(&interval, v)?;
        if d > 0 {
            support.push(interval);
            h.push(d as i64);
        }
    }
    let order = hom_order(&support)?;
    let mut mult = vec![0i64; support.len()];
    for &a in order.iter().rev() {
        let mut value = h[a];
        for (b, &mb) in mult.iter().enumerate() {
            if b != a && mb != 0 {
                value -= mb * omega_count(&support[a], &support[b]) as i64;
            }
        }
        if value < 0 {
            return Err(ModuleError::NegativeMultiplicity { interval: support[a].to_string(), value });
        }
        mult[a] = value;
    }
    let mut diagram = GridDiagram::new(poset);
    for (interval, &m) in support.into_iter().zip(&mult) {
        diagram.add(interval, m as usize)?;
    }
    for e in 0..poset.len() {
        let got: usize = diagram.iter().filter(|(i, _)| i.contains(e)).map(|(_, m)| m).sum();
        if got != v.dims[e] {
            return Err(ModuleError::DimensionMismatch { element: poset.label(e), expected: v.dims[e], got });
        }
    }
    Ok(diagram)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InterleavingViolation {
    #[error("matching index out of range or used twice")]
    MalformedMatching,
    #[error("unmatched point {0} of the first diagram is not 2eps-trivial")]
    UnmatchedFirst(String),
    #[error("unmatched point {0} of the second diagram is not 2eps-trivial")]
    UnmatchedSecond(String),
    #[error("matched pair {0} / {1} is not eps-interleaved")]
    Pair(String, String),
}

/// Checks that `matching` (pairs of indices into the expanded point lists of
/// `d1` and `d2`) is a bottleneck `Lambda_eps`-interleaving.
pub fn verify_bottleneck_interleaving(
    d1: &Diagram,
    d2: &Diagram,
    matching: &[(usize, usize)],
    eps: f64,
) -> Result<(), InterleavingViolation> {
    let a = d1.expand();
    let b = d2.expand();
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    for &(i, j) in matching {
        if i >= a.len() || j >= b.len() || used_a[i] || used_b[j] {
            return Err(InterleavingViolation::MalformedMatching);
        }
        used_a[i] = true;
        used_b[j] = true;
        if !pair_interleaved(&a[i], &b[j], eps) {
            return Err(InterleavingViolation::Pair(a[i].to_string(), b[j].to_string()));
        }
    }
    if let Some(i) = (0..a.len()).find(|&i| !used_a[i] && !is_trivial(&a[i], 2.0 * eps)) {
        return Err(InterleavingViolation::UnmatchedFirst(a[i].to_string()));
    }
    if let Some(j) = (0..b.len()).find(|&j| !used_b[j] && !is_trivial(&b[j], 2.0 * eps)) {
        return Err(InterleavingViolation::UnmatchedSecond(b[j].to_string()));
    }
    Ok(())
}

// two 2eps-trivial modules are interleaved by zero maps; otherwise the
// per-class characterisation applies
fn pair_interleaved(i: &ContinuousInterval, j: &ContinuousInterval, eps: f64) -> bool {
    (is_trivial(i, 2.0 * eps) && is_trivial(j, 2.0 * eps))
        || (contained_in_thickening(j, i, eps) && contained_in_thickening(i, j, eps))
}
