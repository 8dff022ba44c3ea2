//! Bottleneck distance between continuous bipath diagrams.
//!
//! Feasibility at a fixed `eps` is a perfect matching problem on the usual doubled
//! graph (each side gets a copy of the other to absorb trivial points). Feasibility
//! only changes at pair and triviality thresholds, so the distance is the smallest
//! threshold just above which a matching exists.

use thiserror::Error;

use crate::diagram::{matching_threshold, triviality_threshold, ContinuousInterval, Diagram, Threshold};
use crate::matching::maximum_matching;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BottleneckError {
    #[error("exhaustive search is limited to {limit} points in total, got {got}")]
    TooLarge { limit: usize, got: usize },
}

pub const BRUTE_FORCE_LIMIT: usize = 8;

/// A partial matching between the expanded point lists, valid at `eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub eps: f64,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BottleneckResult {
    /// The infimum; `+inf` when no matching exists at any `eps`.
    pub distance: f64,
    /// Whether a matching exists at `distance` itself.
    pub attained: bool,
    /// Absent exactly when `distance` is infinite.
    pub certificate: Option<Certificate>,
}

struct Instance {
    a: Vec<ContinuousInterval>,
    b: Vec<ContinuousInterval>,
    pair: Vec<Vec<Threshold>>,
    triv_a: Vec<Threshold>,
    triv_b: Vec<Threshold>,
}

impl Instance {
    fn new(d1: &Diagram, d2: &Diagram) -> Self {
        let a = d1.expand();
        let b = d2.expand();
        let pair = a.iter().map(|i| b.iter().map(|j| matching_threshold(i, j)).collect()).collect();
        let triv_a = a.iter().map(triviality_threshold).collect();
        let triv_b = b.iter().map(triviality_threshold).collect();
        Self { a, b, pair, triv_a, triv_b }
    }

    fn candidates(&self) -> Vec<f64> {
        let mut c: Vec<f64> = std::iter::once(0.0)
            .chain(self.pair.iter().flatten().map(|t| t.value))
            .chain(self.triv_a.iter().chain(&self.triv_b).map(|t| t.value))
            .filter(|v| v.is_finite())
            .collect();
        c.sort_by(|x, y| x.partial_cmp(y).expect("thresholds are never NaN"));
        c.dedup();
        c
    }

    /// A matching in which `ok` holds for every used threshold, if one exists.
    fn solve(&self, ok: impl Fn(&Threshold) -> bool) -> Option<Vec<(usize, usize)>> {
        let (k, l) = (self.a.len(), self.b.len());
        // left: a_0..a_k, then copies b'_0..b'_l; right: b_0..b_l, then copies a'_0..a'_k
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k + l];
        for i in 0..k {
            for j in 0..l {
                if ok(&self.pair[i][j]) {
                    adj[i].push(j);
                }
            }
            if ok(&self.triv_a[i]) {
                adj[i].push(l + i);
            }
        }
        for j in 0..l {
            if ok(&self.triv_b[j]) {
                adj[k + j].push(j);
            }
            adj[k + j].extend((0..k).map(|i| l + i));
        }
        let m = maximum_matching(k + l, &adj);
        if m.iter().any(|r| r.is_none()) {
            return None;
        }
        Some((0..k).filter_map(|i| m[i].filter(|&j| j < l).map(|j| (i, j))).collect())
    }
}

/// Whether a bottleneck matching exists at exactly `eps`.
pub fn feasible_at(d1: &Diagram, d2: &Diagram, eps: f64) -> bool {
    Instance::new(d1, d2).solve(|t| t.holds_at(eps)).is_some()
}

pub fn bottleneck(d1: &Diagram, d2: &Diagram) -> BottleneckResult {
    let inst = Instance::new(d1, d2);
    let cands = inst.candidates();
    let above = |c: f64| inst.solve(|t| t.holds_just_above(c)).is_some();
    // first candidate with a matching just above it
    let (mut lo, mut hi) = (0usize, cands.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if above(cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if lo == cands.len() {
        return BottleneckResult { distance: f64::INFINITY, attained: false, certificate: None };
    }
    let distance = cands[lo];
    let exact = inst.solve(|t| t.holds_at(distance));
    let attained = exact.is_some();
    let certificate = match exact {
        Some(pairs) => Certificate { eps: distance, pairs },
        None => {
            let eps = match cands.get(lo + 1) {
                Some(&next) => (distance + next) / 2.0,
                None => distance + 1.0,
            };
            let pairs = inst
                .solve(|t| t.holds_at(eps))
                .expect("feasible on the whole gap above the distance");
            Certificate { eps, pairs }
        }
    };
    BottleneckResult { distance, attained, certificate: Some(certificate) }
}

pub fn bottleneck_distance(d1: &Diagram, d2: &Diagram) -> f64 {
    bottleneck(d1, d2).distance
}

/// Minimum over all partial matchings of the largest threshold involved.
pub fn brute_force_bottleneck(d1: &Diagram, d2: &Diagram) -> Result<f64, BottleneckError> {
    let got = d1.len() + d2.len();
    if got > BRUTE_FORCE_LIMIT {
        return Err(BottleneckError::TooLarge { limit: BRUTE_FORCE_LIMIT, got });
    }
    let inst = Instance::new(d1, d2);
    fn go(inst: &Instance, i: usize, used: &mut Vec<bool>, cost: f64) -> f64 {
        if i == inst.a.len() {
            return (0..inst.b.len())
                .filter(|&j| !used[j])
                .map(|j| inst.triv_b[j].value)
                .fold(cost, f64::max);
        }
        let mut best = go(inst, i + 1, used, cost.max(inst.triv_a[i].value));
        for j in 0..inst.b.len() {
            if !used[j] {
                used[j] = true;
                best = best.min(go(inst, i + 1, used, cost.max(inst.pair[i][j].value)));
                used[j] = false;
            }
        }
        best
    }
    Ok(go(&inst, 0, &mut vec![false; inst.b.len()], 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::verify_bottleneck_interleaving;
    use crate::poset::{Dec, DecValue};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(v: f64) -> DecValue {
        DecValue::minus(v)
    }

    fn bar(b: f64, d: f64) -> ContinuousInterval {
        ContinuousInterval::upper_bar(m(b), m(d)).unwrap()
    }

    fn diag(points: &[ContinuousInterval]) -> Diagram {
        Diagram::from_points(points.iter().map(|&p| (p, 1))).unwrap()
    }

    pub(crate) fn random_point(rng: &mut impl Rng) -> ContinuousInterval {
        let val = |rng: &mut dyn rand::RngCore| -> f64 {
            match rng.gen_range(0..12) {
                0 => f64::NEG_INFINITY,
                1 => f64::INFINITY,
                _ => rng.gen_range(-16..=16) as f64 / 8.0,
            }
        };
        let dec = |rng: &mut dyn rand::RngCore| if rng.gen_bool(0.5) { Dec::Plus } else { Dec::Minus };
        loop {
            let a = DecValue::new(val(rng), dec(rng)).unwrap();
            let b = DecValue::new(val(rng), dec(rng)).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let p = match rng.gen_range(0..10) {
                0..=2 => ContinuousInterval::upper_bar(lo, hi).ok(),
                3..=5 => ContinuousInterval::lower_bar(lo, hi).ok(),
                6 => Some(ContinuousInterval::B),
                7 | 8 => ContinuousInterval::left(a, b).ok(),
                _ => ContinuousInterval::right(a, b).ok(),
            };
            if let Some(p) = p {
                return p;
            }
        }
    }

    #[test]
    fn examples() {
        let d = diag(&[bar(0.0, 2.0), ContinuousInterval::B]);
        assert_eq!(bottleneck_distance(&d, &d), 0.0);
        assert_eq!(bottleneck_distance(&diag(&[bar(0.0, 10.0)]), &Diagram::new()), 5.0);
        assert_eq!(bottleneck_distance(&diag(&[ContinuousInterval::B]), &Diagram::new()), f64::INFINITY);
        assert_eq!(brute_force_bottleneck(&Diagram::new(), &Diagram::new()).unwrap(), 0.0);
        assert_eq!(brute_force_bottleneck(&diag(&[bar(0.0, 4.0)]), &diag(&[bar(1.0, 3.0)])).unwrap(), 1.0);
        let big = Diagram::from_points([(bar(0.0, 1.0), 9)]).unwrap();
        assert!(brute_force_bottleneck(&big, &Diagram::new()).is_err());
    }

    #[test]
    fn attained_flag_follows_decorations() {
        // [0, 8) against (1, 8): shifting 1^+ down by 1 gives 0^+, which misses 0
        let far = diag(&[bar(0.0, 8.0)]);
        let near = diag(&[ContinuousInterval::upper_bar(DecValue::plus(1.0), m(8.0)).unwrap()]);
        for (x, y) in [(&far, &near), (&near, &far)] {
            let r = bottleneck(x, y);
            assert_eq!(r.distance, 1.0);
            assert!(!r.attained);
            assert!(!feasible_at(x, y, 1.0));
            let cert = r.certificate.unwrap();
            assert_eq!(cert.eps, (1.0 + 3.5) / 2.0);
            assert!(verify_bottleneck_interleaving(x, y, &cert.pairs, cert.eps).is_ok());
        }
        // [1, 8) is matched at exactly 1
        let r = bottleneck(&far, &diag(&[bar(1.0, 8.0)]));
        assert_eq!((r.distance, r.attained), (1.0, true));
    }

    #[test]
    fn agrees_with_brute_force_and_certificates_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let k = rng.gen_range(0..=4);
            let l = rng.gen_range(0..=4);
            let d1 = Diagram::from_points((0..k).map(|_| (random_point(&mut rng), 1))).unwrap();
            let d2 = Diagram::from_points((0..l).map(|_| (random_point(&mut rng), 1))).unwrap();
            let r = bottleneck(&d1, &d2);
            assert_eq!(r.distance, brute_force_bottleneck(&d1, &d2).unwrap());
            assert_eq!(r.distance, bottleneck_distance(&d2, &d1));
            if let Some(c) = r.certificate {
                assert!(verify_bottleneck_interleaving(&d1, &d2, &c.pairs, c.eps).is_ok());
            }
        }
    }

    #[test]
    fn feasibility_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let d1 = Diagram::from_points((0..rng.gen_range(0..5)).map(|_| (random_point(&mut rng), 1))).unwrap();
            let d2 = Diagram::from_points((0..rng.gen_range(0..5)).map(|_| (random_point(&mut rng), 1))).unwrap();
            for k in 0..16 {
                let eps = k as f64 / 8.0;
                if feasible_at(&d1, &d2, eps) {
                    assert!(feasible_at(&d1, &d2, 2.0 * eps));
                    assert!(feasible_at(&d1, &d2, eps + 0.125));
                }
            }
        }
    }
}
