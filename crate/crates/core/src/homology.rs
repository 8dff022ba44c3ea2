//! Simplicial complexes, bipath functions, their sublevelset filtrations over
//! `B_{n,m}`, and the induced homology modules.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::decomp::BipathModule;
use crate::linalg::{self, LinalgError, Matrix, PrimeField};
use crate::poset::{Arm, GridPoset};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HomologyError {
    #[error("vertex label {0:?} appears twice")]
    DuplicateVertex(String),
    #[error("simplex #{0} is empty")]
    EmptySimplex(usize),
    #[error("simplex #{simplex} refers to unknown vertex #{vertex}")]
    UnknownVertex { simplex: usize, vertex: usize },
    #[error("simplex {0} repeats a vertex")]
    RepeatedVertex(String),
    #[error("simplex {0} is listed twice")]
    DuplicateSimplex(String),
    #[error("the complex is not closed under faces: {simplex} is present but its face {face} is not")]
    MissingFace { simplex: String, face: String },
    #[error("function has {got} values, the complex has {expected} {what}")]
    Length { what: &'static str, expected: usize, got: usize },
    #[error("function value must not be NaN")]
    NotANumber,
    #[error("on simplex {0} exactly one of the two functions is -inf; both arms must share the same -inf part")]
    FiberMismatch(String),
    #[error("arm {arm} decreases from face {face} to simplex {simplex}; values must not drop when passing to a larger simplex")]
    NotMonotone { arm: u8, simplex: String, face: String },
    #[error("functions are defined on different complexes")]
    ComplexMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A finite abstract simplicial complex. Simplices are sorted vertex-index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    by_dim: Vec<Vec<usize>>,
    local: Vec<usize>,
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<String>, simplices: Vec<Vec<usize>>) -> Result<Self, HomologyError> {
        let mut seen = HashMap::new();
        for v in &vertices {
            if seen.insert(v.clone(), ()).is_some() {
                return Err(HomologyError::DuplicateVertex(v.clone()));
            }
        }
        let mut sorted = Vec::with_capacity(simplices.len());
        for (k, mut s) in simplices.into_iter().enumerate() {
            if s.is_empty() {
                return Err(HomologyError::EmptySimplex(k));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices.len()) {
                return Err(HomologyError::UnknownVertex { simplex: k, vertex: v });
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(HomologyError::RepeatedVertex(fmt_simplex(&vertices, &s)));
            }
            sorted.push(s);
        }
        let mut index = HashMap::with_capacity(sorted.len());
        for (k, s) in sorted.iter().enumerate() {
            if index.insert(s.clone(), k).is_some() {
                return Err(HomologyError::DuplicateSimplex(fmt_simplex(&vertices, s)));
            }
        }
        for s in &sorted {
            if s.len() < 2 {
                continue;
            }
            for drop in 0..s.len() {
                let face: Vec<usize> = facet(s, drop);
                if !index.contains_key(&face) {
                    return Err(HomologyError::MissingFace {
                        simplex: fmt_simplex(&vertices, s),
                        face: fmt_simplex(&vertices, &face),
                    });
                }
            }
        }
        let top = sorted.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top];
        let mut local = vec![0; sorted.len()];
        for (k, s) in sorted.iter().enumerate() {
            local[k] = by_dim[s.len() - 1].len();
            by_dim[s.len() - 1].push(k);
        }
        Ok(Self { vertices, simplices: sorted, index, by_dim, local })
    }

    /// The complex generated by `maximal` and all their faces.
    pub fn from_maximal(vertices: Vec<String>, maximal: &[Vec<usize>]) -> Result<Self, HomologyError> {
        let mut all: Vec<Vec<usize>> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            for mask in 1u32..(1 << s.len()) {
                let face: Vec<usize> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                if seen.insert(face.clone()) {
                    all.push(face);
                }
            }
        }
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Self::new(vertices, all)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        let mut s = s.to_vec();
        s.sort_unstable();
        self.index.get(&s).copied()
    }

    /// Index of the 0-simplex on vertex `v`, if present.
    pub fn vertex_simplex(&self, v: usize) -> Option<usize> {
        self.index.get(&vec![v]).copied()
    }

    /// Global indices of the `q`-simplices.
    pub fn of_dim(&self, q: usize) -> &[usize] {
        self.by_dim.get(q).map_or(&[], |v| v.as_slice())
    }

    /// Indices of the codimension-one faces.
    pub fn facets(&self, k: usize) -> Vec<usize> {
        let s = &self.simplices[k];
        if s.len() < 2 {
            return Vec::new();
        }
        (0..s.len()).map(|d| self.index[&facet(s, d)]).collect()
    }

    /// `d_q` from `q`-chains to `(q-1)`-chains, signs `(-1)^i`.
    pub fn boundary_matrix(&self, q: usize, field: PrimeField) -> Matrix {
        let cols = self.of_dim(q);
        let rows = if q == 0 { 0 } else { self.of_dim(q - 1).len() };
        let mut m = Matrix::zeros(field, rows, cols.len());
        if q == 0 {
            return m;
        }
        for (c, &k) in cols.iter().enumerate() {
            let s = &self.simplices[k];
            for i in 0..s.len() {
                let face = self.index[&facet(s, i)];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(self.local[face], c, field.element(sign));
            }
        }
        m
    }

    pub fn simplex_label(&self, k: usize) -> String {
        fmt_simplex(&self.vertices, &self.simplices[k])
    }

    /// Number of connected components.
    pub fn components(&self) -> usize {
        let verts: Vec<usize> = self.of_dim(0).iter().map(|&k| self.simplices[k][0]).collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for &k in self.of_dim(1) {
            let (a, b) = (self.simplices[k][0], self.simplices[k][1]);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let mut roots: Vec<usize> = verts.iter().map(|&v| find(&mut parent, v)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

fn facet(s: &[usize], drop: usize) -> Vec<usize> {
    s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect()
}

fn fmt_simplex(vertices: &[String], s: &[usize]) -> String {
    let names: Vec<&str> = s.iter().map(|&v| vertices.get(v).map_or("?", |x| x.as_str())).collect();
    format!("{{{}}}", names.join(","))
}

/// A point of one arm of the continuous bipath poset: `-inf`, a real, or `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BValue {
    NegInf,
    Finite(f64),
    PosInf,
}

impl BValue {
    pub fn finite(x: f64) -> Result<Self, HomologyError> {
        if x.is_nan() {
            Err(HomologyError::NotANumber)
        } else if x == f64::INFINITY {
            Ok(BValue::PosInf)
        } else if x == f64::NEG_INFINITY {
            Ok(BValue::NegInf)
        } else {
            Ok(BValue::Finite(if x == 0.0 { 0.0 } else { x }))
        }
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            BValue::NegInf => f64::NEG_INFINITY,
            BValue::Finite(x) => x,
            BValue::PosInf => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BValue::Finite(_))
    }
}

impl Eq for BValue {}

impl PartialOrd for BValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_f64().partial_cmp(&other.as_f64()).expect("B-values are never NaN")
    }
}

impl fmt::Display for BValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BValue::NegInf => write!(f, "-inf"),
            BValue::Finite(x) => write!(f, "{x}"),
            BValue::PosInf => write!(f, "+inf"),
        }
    }
}

/// `|a, b|`: zero for equal values, the difference of two reals, `+inf` otherwise.
pub fn b_distance(a: BValue, b: BValue) -> f64 {
    match (a, b) {
        (BValue::Finite(x), BValue::Finite(y)) => (x - y).abs(),
        _ if a == b => 0.0,
        _ => f64::INFINITY,
    }
}

/// A bipath function given per simplex: `f1` on the upper arm, `f2` on the lower arm.
#[derive(Debug, Clone, PartialEq)]
pub struct BipathFunction {
    pub f1: Vec<BValue>,
    pub f2: Vec<BValue>,
}

impl BipathFunction {
    pub fn new(f1: Vec<BValue>, f2: Vec<BValue>) -> Self {
        Self { f1, f2 }
    }

    /// Extends per-vertex values to simplices by taking the maximum over vertices.
    pub fn lower_star(complex: &SimplicialComplex, v1: &[BValue], v2: &[BValue]) -> Result<Self, HomologyError> {
        let nv = complex.vertices().len();
        for v in [v1, v2] {
            if v.len() != nv {
                return Err(HomologyError::Length { what: "vertices", expected: nv, got: v.len() });
            }
        }
        let ext = |vals: &[BValue]| -> Vec<BValue> {
            complex
                .simplices()
                .iter()
                .map(|s| s.iter().map(|&v| vals[v]).max().expect("simplices are nonempty"))
                .collect()
        };
        Ok(Self { f1: ext(v1), f2: ext(v2) })
    }

    /// Common `-inf` part, face monotonicity in each arm, and matching lengths.
    pub fn validate(&self, complex: &SimplicialComplex) -> Result<(), HomologyError> {
        for f in [&self.f1, &self.f2] {
            if f.len() != complex.len() {
                return Err(HomologyError::Length { what: "simplices", expected: complex.len(), got: f.len() });
            }
        }
        for k in 0..complex.len() {
            if (self.f1[k] == BValue::NegInf) != (self.f2[k] == BValue::NegInf) {
                return Err(HomologyError::FiberMismatch(complex.simplex_label(k)));
            }
            for face in complex.facets(k) {
                for (arm, f) in [(1u8, &self.f1), (2, &self.f2)] {
                    if f[face] > f[k] {
                        return Err(HomologyError::NotMonotone {
                            arm,
                            simplex: complex.simplex_label(k),
                            face: complex.simplex_label(face),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Indicator of `f1^{-1}(-inf)`.
    pub fn neg_inf_fiber(&self) -> Vec<bool> {
        self.f1.iter().map(|&x| x == BValue::NegInf).collect()
    }
}

/// `max(sup |f1, g1|, sup |f2, g2|)`.
pub fn sup_distance(f: &BipathFunction, g: &BipathFunction) -> Result<f64, HomologyError> {
    if f.f1.len() != g.f1.len() || f.f2.len() != g.f2.len() {
        return Err(HomologyError::ComplexMismatch);
    }
    let arm = |a: &[BValue], b: &[BValue]| a.iter().zip(b).map(|(&x, &y)| b_distance(x, y)).fold(0.0, f64::max);
    Ok(arm(&f.f1, &g.f1).max(arm(&f.f2, &g.f2)))
}

/// Sublevel sets of a bipath function on the critical grid `B_{n,m}`.
#[derive(Debug, Clone)]
pub struct BipathFiltration {
    complex: SimplicialComplex,
    upper_values: Vec<f64>,
    lower_values: Vec<f64>,
    membership: Vec<Vec<bool>>,
}

impl BipathFiltration {
    pub fn poset(&self) -> GridPoset {
        GridPoset::new(self.upper_values.len(), self.lower_values.len())
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn upper_values(&self) -> &[f64] {
        &self.upper_values
    }

    pub fn lower_values(&self) -> &[f64] {
        &self.lower_values
    }

    /// Simplices present at a poset element.
    pub fn sublevel(&self, element: usize) -> &[bool] {
        &self.membership[element]
    }
}

fn critical_values(f: &[BValue]) -> Vec<f64> {
    let mut v: Vec<f64> = f.iter().filter_map(|x| match x {
        BValue::Finite(r) => Some(*r),
        _ => None,
    }).collect();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    v.dedup();
    v
}

pub fn build_filtration(complex: &SimplicialComplex, f: &BipathFunction) -> Result<BipathFiltration, HomologyError> {
    f.validate(complex)?;
    let upper_values = critical_values(&f.f1);
    let lower_values = critical_values(&f.f2);
    let poset = GridPoset::new(upper_values.len(), lower_values.len());
    let mut membership = vec![vec![false; complex.len()]; poset.len()];
    membership[poset.bottom()] = f.neg_inf_fiber();
    membership[poset.top()] = vec![true; complex.len()];
    for (i, &u) in upper_values.iter().enumerate() {
        membership[poset.upper(i + 1)] = f.f1.iter().map(|&x| x <= BValue::Finite(u)).collect();
    }
    for (j, &l) in lower_values.iter().enumerate() {
        membership[poset.lower(j + 1)] = f.f2.iter().map(|&x| x <= BValue::Finite(l)).collect();
    }
    Ok(BipathFiltration { complex: complex.clone(), upper_values, lower_values, membership })
}

/// A basis of `H_q` of one sublevel set, in global `q`-chain coordinates,
/// together with the map taking a cycle to its homology class.
struct NodeHomology {
    basis: Matrix,
    extract: Matrix,
}

fn node_homology(
    d_q: &Matrix,
    d_q1: &Matrix,
    q_present: &[usize],
    q1_present: &[usize],
) -> Result<NodeHomology, LinalgError> {
    let field = d_q.field();
    let n = d_q.cols();
    let z_local = linalg::nullspace_basis(&d_q.select_columns(q_present));
    let mut z = Matrix::zeros(field, n, z_local.cols());
    for (r, &g) in q_present.iter().enumerate() {
        for c in 0..z_local.cols() {
            z.set(g, c, z_local.get(r, c));
        }
    }
    if z.cols() == 0 {
        return Ok(NodeHomology { basis: Matrix::zeros(field, n, 0), extract: Matrix::zeros(field, 0, n) });
    }
    let boundaries = linalg::column_basis(&d_q1.select_columns(q1_present));
    let left = linalg::left_inverse(&z)?;
    let sub = left.mul(&boundaries)?;
    let quotient = linalg::quotient_map(&sub, z.cols())?;
    Ok(NodeHomology { basis: z.mul(&quotient.complement)?, extract: quotient.projection.mul(&left)? })
}

/// `H_q` of the filtration with coefficients in `GF(p)`, as a representation of `B_{n,m}`.
pub fn compute_module(filtration: &BipathFiltration, q: usize, field: PrimeField) -> Result<BipathModule, HomologyError> {
    let poset = filtration.poset();
    let complex = &filtration.complex;
    let d_q = complex.boundary_matrix(q, field);
    let d_q1 = complex.boundary_matrix(q + 1, field);
    let present = |dim: usize, e: usize| -> Vec<usize> {
        complex
            .of_dim(dim)
            .iter()
            .enumerate()
            .filter(|&(_, &k)| filtration.membership[e][k])
            .map(|(local, _)| local)
            .collect()
    };
    let nodes: Vec<NodeHomology> = (0..poset.len())
        .map(|e| node_homology(&d_q, &d_q1, &present(q, e), &present(q + 1, e)))
        .collect::<Result<_, _>>()?;
    let dims: Vec<usize> = nodes.iter().map(|h| h.basis.cols()).collect();
    let maps = |arm: Arm| -> Result<Vec<Matrix>, LinalgError> {
        (0..=poset.arm_len(arm))
            .map(|pos| {
                let a = poset.path_element(arm, pos);
                let b = poset.path_element(arm, pos + 1);
                nodes[b].extract.mul(&nodes[a].basis)
            })
            .collect()
    };
    Ok(BipathModule::from_parts(poset, field, dims, maps(Arm::Upper)?, maps(Arm::Lower)?))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::decomp::{decompose, validate_module, GridDiagram};
    use crate::poset::{GridInterval, GridShape};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// The triangle of the worked `B_{2,2}` example.
    pub(crate) fn triangle_example() -> (SimplicialComplex, BipathFunction) {
        use BValue::*;
        let k = SimplicialComplex::new(
            labels(&["a", "b", "c"]),
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        let f1 = vec![NegInf, NegInf, Finite(1.0), Finite(2.0), Finite(2.0), Finite(2.0)];
        let f2 = vec![NegInf, NegInf, Finite(1.0), Finite(2.0), PosInf, PosInf];
        (k, BipathFunction::new(f1, f2))
    }

    #[test]
    fn complex_validation() {
        assert!(matches!(
            SimplicialComplex::new(labels(&["a", "b"]), vec![vec![0], vec![0, 1]]),
            Err(HomologyError::MissingFace { .. })
        ));
        assert!(matches!(
            SimplicialComplex::new(labels(&["a"]), vec![vec![0], vec![0]]),
            Err(HomologyError::DuplicateSimplex(_))
        ));
        assert!(matches!(
            SimplicialComplex::new(labels(&["a", "a"]), vec![]),
            Err(HomologyError::DuplicateVertex(_))
        ));
        let k = SimplicialComplex::from_maximal(labels(&["a", "b", "c"]), &[vec![0, 1, 2]]).unwrap();
        assert_eq!(k.len(), 7);
        assert_eq!(k.dimension(), Some(2));
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let k = SimplicialComplex::from_maximal(labels(&["a", "b", "c", "d"]), &[vec![0, 1, 2, 3]]).unwrap();
        for p in [2, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for q in 1..=3 {
                let dd = k.boundary_matrix(q, f).mul(&k.boundary_matrix(q + 1, f)).unwrap();
                assert!(dd.is_zero());
            }
        }
    }

    #[test]
    fn triangle_filtration() {
        let (k, f) = triangle_example();
        let filt = build_filtration(&k, &f).unwrap();
        let p = filt.poset();
        assert_eq!((p.n, p.m), (2, 2));
        let set = |e: usize| -> Vec<usize> { (0..k.len()).filter(|&s| filt.sublevel(e)[s]).collect() };
        assert_eq!(set(p.bottom()), vec![0, 1]);
        assert_eq!(set(p.upper(1)), vec![0, 1, 2]);
        assert_eq!(set(p.upper(2)), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(set(p.lower(1)), vec![0, 1, 2]);
        assert_eq!(set(p.lower(2)), vec![0, 1, 2, 3]);
    }

    #[test]
    fn triangle_module_decomposes() {
        let (k, f) = triangle_example();
        let filt = build_filtration(&k, &f).unwrap();
        let p = filt.poset();
        let shape = |s| GridInterval::from_shape(p, s).unwrap();
        for field in [2, 3] {
            let field = PrimeField::new(field).unwrap();
            let h0 = compute_module(&filt, 0, field).unwrap();
            let mut expected = GridDiagram::new(p);
            expected.add(GridInterval::whole(p), 1).unwrap();
            expected.add(shape(GridShape::Upper { start: 1, end: 1 }), 1).unwrap();
            expected.add(shape(GridShape::Lower { start: 1, end: 2 }), 1).unwrap();
            expected.add(shape(GridShape::Left { upper_to: 1, lower_to: 1 }), 1).unwrap();
            assert_eq!(decompose(&h0).unwrap(), expected);
            let h1 = compute_module(&filt, 1, field).unwrap();
            let mut expected = GridDiagram::new(p);
            expected.add(shape(GridShape::Right { upper_from: 2, lower_from: 3 }), 1).unwrap();
            assert_eq!(decompose(&h1).unwrap(), expected);
            assert!(decompose(&compute_module(&filt, 2, field).unwrap()).unwrap().is_empty());
        }
    }

    #[test]
    fn constant_neg_inf_function() {
        let (k, _) = triangle_example();
        let f = BipathFunction::new(vec![BValue::NegInf; 6], vec![BValue::NegInf; 6]);
        let filt = build_filtration(&k, &f).unwrap();
        assert_eq!((filt.poset().n, filt.poset().m), (0, 0));
        assert!(filt.sublevel(0).iter().all(|&b| b));
    }

    #[test]
    fn injective_vertex_values_give_one_node_each() {
        let k = SimplicialComplex::from_maximal(labels(&["a", "b", "c", "d"]), &[vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let v: Vec<BValue> = [3.0, 1.0, 4.0, 2.0].iter().map(|&x| BValue::Finite(x)).collect();
        let f = BipathFunction::lower_star(&k, &v, &v).unwrap();
        assert_eq!(build_filtration(&k, &f).unwrap().poset().n, 4);
    }

    #[test]
    fn function_validation() {
        let (k, f) = triangle_example();
        let mut bad = f.clone();
        bad.f2[2] = BValue::NegInf;
        assert!(matches!(bad.validate(&k), Err(HomologyError::FiberMismatch(_))));
        let mut bad = f.clone();
        bad.f1[4] = BValue::Finite(0.5);
        assert!(matches!(build_filtration(&k, &bad), Err(HomologyError::NotMonotone { .. })));
    }

    #[test]
    fn sup_distance_examples() {
        let (_, f) = triangle_example();
        assert_eq!(sup_distance(&f, &f).unwrap(), 0.0);
        let shift = |v: &Vec<BValue>| -> Vec<BValue> {
            v.iter().map(|x| match x { BValue::Finite(r) => BValue::Finite(r + 0.25), o => *o }).collect()
        };
        let g = BipathFunction::new(shift(&f.f1), shift(&f.f2));
        assert_eq!(sup_distance(&f, &g).unwrap(), 0.25);
        let mut h = f.clone();
        h.f2[4] = BValue::Finite(5.0);
        assert_eq!(sup_distance(&f, &h).unwrap(), f64::INFINITY);
    }

    #[test]
    fn empty_complex_gives_zero_module() {
        let k = SimplicialComplex::new(vec![], vec![]).unwrap();
        let f = BipathFunction::new(vec![], vec![]);
        let filt = build_filtration(&k, &f).unwrap();
        let v = compute_module(&filt, 0, PrimeField::gf2()).unwrap();
        assert!(v.dims().iter().all(|&d| d == 0));
    }

    pub(crate) fn random_complex(rng: &mut impl Rng, nv: usize) -> SimplicialComplex {
        let mut maximal: Vec<Vec<usize>> = (0..nv).map(|v| vec![v]).collect();
        let mut edges = std::collections::HashSet::new();
        for a in 0..nv {
            for b in a + 1..nv {
                if rng.gen_bool(0.35) {
                    edges.insert((a, b));
                    maximal.push(vec![a, b]);
                }
            }
        }
        for a in 0..nv {
            for b in a + 1..nv {
                for c in b + 1..nv {
                    if edges.contains(&(a, b)) && edges.contains(&(b, c)) && edges.contains(&(a, c)) && rng.gen_bool(0.3) {
                        maximal.push(vec![a, b, c]);
                    }
                }
            }
        }
        let names = (0..nv).map(|v| format!("v{v}")).collect();
        SimplicialComplex::from_maximal(names, &maximal).unwrap()
    }

    #[test]
    fn random_modules_are_functorial_and_count_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let nv = rng.gen_range(1..=8);
            let k = random_complex(&mut rng, nv);
            let vals = |rng: &mut ChaCha8Rng| -> Vec<BValue> {
                (0..nv).map(|_| BValue::Finite(rng.gen_range(0..6) as f64)).collect()
            };
            let (v1, v2) = (vals(&mut rng), vals(&mut rng));
            let f = BipathFunction::lower_star(&k, &v1, &v2).unwrap();
            let filt = build_filtration(&k, &f).unwrap();
            let field = PrimeField::new(3).unwrap();
            for q in 0..=2 {
                let v = compute_module(&filt, q, field).unwrap();
                validate_module(&v).unwrap();
                decompose(&v).unwrap();
                if q == 0 {
                    assert_eq!(v.dim(filt.poset().top()), k.components());
                }
                if q >= 2 && k.dimension().unwrap() < 2 {
                    assert!(v.dims().iter().all(|&d| d == 0));
                }
            }
            assert!(compute_module(&filt, 3, field).unwrap().dims().iter().all(|&d| d == 0));
        }
    }
}
