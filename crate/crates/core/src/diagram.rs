//! Intervals of the continuous bipath poset with decorated endpoints, their
//! thickenings, triviality, and the thresholds at which two intervals can be matched.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::decomp::GridDiagram;
use crate::poset::{dec_cmp, Dec, DecValue, GridInterval, GridShape, IntervalClass};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagramError {
    #[error("invalid {class} interval: {reason}")]
    InvalidInterval { class: &'static str, reason: String },
    #[error("interval lives on B_{{{n},{m}}} but {got_n} upper and {got_m} lower critical values were given")]
    CriticalValues { n: usize, m: usize, got_n: usize, got_m: usize },
    #[error("critical values must be finite and strictly increasing")]
    UnsortedCriticalValues,
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
}

/// An interval of the continuous bipath poset.
///
/// Arm membership uses decorated cuts: a finite `r` lies in `U(b, d)` iff
/// `b <* r^+` and `r^- <* d`. An `L` arm with cut `c` is `{r : r^- <* c}` together
/// with `-inf`; an `R` arm with cut `c` is `{r : c <* r^+}` together with `+inf`.
/// `-inf^+` as an `L` cut (or `+inf^-` as an `R` cut) means the arm is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ContinuousInterval {
    U { birth: DecValue, death: DecValue },
    D { birth: DecValue, death: DecValue },
    B,
    L { upper: DecValue, lower: DecValue },
    R { upper: DecValue, lower: DecValue },
}

fn check_bar(class: &'static str, birth: DecValue, death: DecValue) -> Result<(), DiagramError> {
    let bad = |reason: &str| Err(DiagramError::InvalidInterval { class, reason: reason.into() });
    if birth == DecValue::NEG_INF_MINUS || death == DecValue::NEG_INF_MINUS {
        return bad("-inf^- is not an endpoint");
    }
    if birth == DecValue::POS_INF_PLUS || death == DecValue::POS_INF_PLUS {
        return bad("+inf^+ is not an endpoint");
    }
    if birth >= death {
        return bad("birth must be strictly below death");
    }
    Ok(())
}

impl ContinuousInterval {
    pub fn upper_bar(birth: DecValue, death: DecValue) -> Result<Self, DiagramError> {
        check_bar("U", birth, death)?;
        Ok(Self::U { birth, death })
    }

    pub fn lower_bar(birth: DecValue, death: DecValue) -> Result<Self, DiagramError> {
        check_bar("D", birth, death)?;
        Ok(Self::D { birth, death })
    }

    /// `L` interval; a cut of `-inf^-` is read as `-inf^+` (both give an empty arm).
    pub fn left(upper: DecValue, lower: DecValue) -> Result<Self, DiagramError> {
        let canon = |c: DecValue| if c == DecValue::NEG_INF_MINUS { DecValue::NEG_INF_PLUS } else { c };
        for c in [upper, lower] {
            if c == DecValue::POS_INF_PLUS {
                return Err(DiagramError::InvalidInterval {
                    class: "L",
                    reason: "+inf^+ is not a cut".into(),
                });
            }
        }
        Ok(Self::L { upper: canon(upper), lower: canon(lower) })
    }

    /// `R` interval; a cut of `+inf^+` is read as `+inf^-` (both give an empty arm).
    pub fn right(upper: DecValue, lower: DecValue) -> Result<Self, DiagramError> {
        let canon = |c: DecValue| if c == DecValue::POS_INF_PLUS { DecValue::POS_INF_MINUS } else { c };
        for c in [upper, lower] {
            if c == DecValue::NEG_INF_MINUS {
                return Err(DiagramError::InvalidInterval {
                    class: "R",
                    reason: "-inf^- is not a cut".into(),
                });
            }
        }
        Ok(Self::R { upper: canon(upper), lower: canon(lower) })
    }

    pub fn class(&self) -> IntervalClass {
        match self {
            Self::U { .. } => IntervalClass::U,
            Self::D { .. } => IntervalClass::D,
            Self::B => IntervalClass::B,
            Self::L { .. } => IntervalClass::L,
            Self::R { .. } => IntervalClass::R,
        }
    }

    /// Plot coordinates `(s, t)`: U/D as `(birth, death)` resp. `(death, birth)`,
    /// L as `(lower, upper)`, R as `(upper, lower)`. `None` for B.
    pub fn plot_point(&self) -> Option<(DecValue, DecValue)> {
        match *self {
            Self::U { birth, death } => Some((birth, death)),
            Self::D { birth, death } => Some((death, birth)),
            Self::B => None,
            Self::L { upper, lower } => Some((lower, upper)),
            Self::R { upper, lower } => Some((upper, lower)),
        }
    }
}

impl fmt::Display for ContinuousInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::U { birth, death } => write!(f, "U({birth}, {death})"),
            Self::D { birth, death } => write!(f, "D({birth}, {death})"),
            Self::B => write!(f, "B"),
            Self::L { upper, lower } => write!(f, "L(upper {upper}, lower {lower})"),
            Self::R { upper, lower } => write!(f, "R(upper {upper}, lower {lower})"),
        }
    }
}

/// A multiset of continuous intervals, ordered by class and then endpoints.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagram {
    points: BTreeMap<ContinuousInterval, usize>,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, interval: ContinuousInterval, mult: usize) -> Result<(), DiagramError> {
        if mult == 0 {
            return Err(DiagramError::ZeroMultiplicity);
        }
        *self.points.entry(interval).or_insert(0) += mult;
        Ok(())
    }

    pub fn from_points(points: impl IntoIterator<Item = (ContinuousInterval, usize)>) -> Result<Self, DiagramError> {
        let mut d = Self::new();
        for (i, m) in points {
            d.insert(i, m)?;
        }
        Ok(d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ContinuousInterval, usize)> {
        self.points.iter().map(|(i, &m)| (i, m))
    }

    pub fn multiplicity(&self, interval: &ContinuousInterval) -> usize {
        self.points.get(interval).copied().unwrap_or(0)
    }

    /// Number of distinct intervals.
    pub fn distinct(&self) -> usize {
        self.points.len()
    }

    /// Number of points counted with multiplicity.
    pub fn len(&self) -> usize {
        self.points.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One entry per point, repeated by multiplicity, in canonical order.
    pub fn expand(&self) -> Vec<ContinuousInterval> {
        self.points
            .iter()
            .flat_map(|(i, &m)| std::iter::repeat(*i).take(m))
            .collect()
    }
}

fn check_critical(values: &[f64]) -> Result<(), DiagramError> {
    if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DiagramError::UnsortedCriticalValues);
    }
    Ok(())
}

/// Places a grid interval on the real line under the sublevel convention:
/// grid node `i` stands for `[u_i, u_{i+1})`, with `u_{n+1} = +inf`.
pub fn grid_to_continuous(
    interval: &GridInterval,
    upper_values: &[f64],
    lower_values: &[f64],
) -> Result<ContinuousInterval, DiagramError> {
    let p = interval.poset();
    if upper_values.len() != p.n || lower_values.len() != p.m {
        return Err(DiagramError::CriticalValues {
            n: p.n,
            m: p.m,
            got_n: upper_values.len(),
            got_m: lower_values.len(),
        });
    }
    check_critical(upper_values)?;
    check_critical(lower_values)?;
    // 1-based index into the critical values, one past the end meaning +inf
    let cut = |values: &[f64], i: usize| -> DecValue {
        if i > values.len() {
            DecValue::POS_INF_MINUS
        } else {
            DecValue::minus(values[i - 1])
        }
    };
    let (u, l) = (upper_values, lower_values);
    match interval.shape() {
        GridShape::Upper { start, end } => ContinuousInterval::upper_bar(cut(u, start), cut(u, end + 1)),
        GridShape::Lower { start, end } => ContinuousInterval::lower_bar(cut(l, start), cut(l, end + 1)),
        GridShape::Whole => Ok(ContinuousInterval::B),
        GridShape::Left { upper_to, lower_to } => {
            ContinuousInterval::left(cut(u, upper_to + 1), cut(l, lower_to + 1))
        }
        GridShape::Right { upper_from, lower_from } => {
            ContinuousInterval::right(cut(u, upper_from), cut(l, lower_from))
        }
    }
}

pub fn grid_diagram_to_continuous(
    diagram: &GridDiagram,
    upper_values: &[f64],
    lower_values: &[f64],
) -> Result<Diagram, DiagramError> {
    let mut out = Diagram::new();
    for (interval, mult) in diagram.iter() {
        out.insert(grid_to_continuous(interval, upper_values, lower_values)?, mult)?;
    }
    Ok(out)
}

/// `Ex_eps(I)`: bars widen by `eps` at both ends, `L` cuts move up, `R` cuts move down.
pub fn thicken(interval: &ContinuousInterval, eps: f64) -> ContinuousInterval {
    assert!(eps >= 0.0, "thickening radius must be nonnegative");
    match *interval {
        ContinuousInterval::U { birth, death } => ContinuousInterval::U { birth: birth.shift(-eps), death: death.shift(eps) },
        ContinuousInterval::D { birth, death } => ContinuousInterval::D { birth: birth.shift(-eps), death: death.shift(eps) },
        ContinuousInterval::B => ContinuousInterval::B,
        ContinuousInterval::L { upper, lower } => ContinuousInterval::L { upper: upper.shift(eps), lower: lower.shift(eps) },
        ContinuousInterval::R { upper, lower } => ContinuousInterval::R { upper: upper.shift(-eps), lower: lower.shift(-eps) },
    }
}

/// `Lambda_delta`-triviality: no `r` with both `r` and `r + delta` in the interval.
pub fn is_trivial(interval: &ContinuousInterval, delta: f64) -> bool {
    match *interval {
        ContinuousInterval::U { birth, death } | ContinuousInterval::D { birth, death } => {
            let len = death.value() - birth.value();
            let closed = birth.dec() == Dec::Minus && death.dec() == Dec::Plus;
            !(len > delta || (len == delta && closed))
        }
        _ => false,
    }
}

/// `J c Ex_eps(I)`, restricted to intervals of the same class.
pub fn contained_in_thickening(j: &ContinuousInterval, i: &ContinuousInterval, eps: f64) -> bool {
    if i.class() != j.class() {
        return false;
    }
    Region::of(j).is_subset(&Region::of(&thicken(i, eps)))
}

/// The set of `eps >= 0` at which a monotone predicate holds: every `eps > value`,
/// plus `eps == value` itself when `attained`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub value: f64,
    pub attained: bool,
}

impl Threshold {
    pub const ALWAYS: Threshold = Threshold { value: 0.0, attained: true };
    pub const NEVER: Threshold = Threshold { value: f64::INFINITY, attained: false };

    fn at(value: f64, attained: bool) -> Self {
        if value < 0.0 {
            Self::ALWAYS
        } else {
            Self { value, attained }
        }
    }

    pub fn holds_at(&self, eps: f64) -> bool {
        eps > self.value || (eps == self.value && self.attained)
    }

    /// Holds on some interval `(eps, eps + h)`.
    pub fn holds_just_above(&self, eps: f64) -> bool {
        self.value <= eps && self.value.is_finite()
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    /// Both predicates together.
    pub fn and(self, other: Threshold) -> Threshold {
        match self.value.partial_cmp(&other.value).expect("thresholds are never NaN") {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal => Threshold { value: self.value, attained: self.attained && other.attained },
        }
    }
}

fn constant(holds: bool) -> Threshold {
    if holds {
        Threshold::ALWAYS
    } else {
        Threshold::NEVER
    }
}

/// `(x - eps) <=* y`.
fn shifted_down_leq(x: DecValue, y: DecValue) -> Threshold {
    if !x.is_finite() {
        constant(x <= y)
    } else if !y.is_finite() {
        constant(y.value() == f64::INFINITY)
    } else {
        Threshold::at(x.value() - y.value(), x.dec() <= y.dec())
    }
}

/// `y <=* (x + eps)`.
fn leq_shifted_up(y: DecValue, x: DecValue) -> Threshold {
    if !x.is_finite() {
        constant(y <= x)
    } else if !y.is_finite() {
        constant(y.value() == f64::NEG_INFINITY)
    } else {
        Threshold::at(y.value() - x.value(), y.dec() <= x.dec())
    }
}

/// The `eps` at which `J c Ex_eps(I)` holds (same class only; otherwise never).
pub fn containment_threshold(j: &ContinuousInterval, i: &ContinuousInterval) -> Threshold {
    use ContinuousInterval as C;
    match (*i, *j) {
        (C::U { birth: bi, death: di }, C::U { birth: bj, death: dj })
        | (C::D { birth: bi, death: di }, C::D { birth: bj, death: dj }) => {
            shifted_down_leq(bi, bj).and(leq_shifted_up(dj, di))
        }
        (C::B, C::B) => Threshold::ALWAYS,
        (C::L { upper: ui, lower: li }, C::L { upper: uj, lower: lj }) => {
            leq_shifted_up(uj, ui).and(leq_shifted_up(lj, li))
        }
        (C::R { upper: ui, lower: li }, C::R { upper: uj, lower: lj }) => {
            shifted_down_leq(ui, uj).and(shifted_down_leq(li, lj))
        }
        _ => Threshold::NEVER,
    }
}

/// The `eps` from which `I` and `J` may be matched: `J c Ex_eps(I)` and `I c Ex_eps(J)`.
pub fn matching_threshold(i: &ContinuousInterval, j: &ContinuousInterval) -> Threshold {
    containment_threshold(j, i).and(containment_threshold(i, j))
}

/// The `eps` from which the point may stay unmatched (it is `Lambda_{2 eps}`-trivial).
pub fn triviality_threshold(interval: &ContinuousInterval) -> Threshold {
    match *interval {
        ContinuousInterval::U { birth, death } | ContinuousInterval::D { birth, death } => {
            let len = death.value() - birth.value();
            if !len.is_finite() {
                return Threshold::NEVER;
            }
            let closed = birth.dec() == Dec::Minus && death.dec() == Dec::Plus;
            Threshold::at(len / 2.0, !closed)
        }
        _ => Threshold::NEVER,
    }
}

/// An arbitrary subset of the continuous bipath poset of the shape produced by
/// intervals and their up/down closures: flags for `-inf`/`+inf` plus one real
/// interval `{r : lo <* r^+, r^- <* hi}` per arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Region {
    pub bottom: bool,
    pub top: bool,
    pub upper: Option<(DecValue, DecValue)>,
    pub lower: Option<(DecValue, DecValue)>,
}

fn arm(lo: DecValue, hi: DecValue) -> Option<(DecValue, DecValue)> {
    let lo = if lo == DecValue::NEG_INF_MINUS { DecValue::NEG_INF_PLUS } else { lo };
    let hi = if hi == DecValue::POS_INF_PLUS { DecValue::POS_INF_MINUS } else { hi };
    (dec_cmp(&lo, &hi) == std::cmp::Ordering::Less).then_some((lo, hi))
}

const FULL: (DecValue, DecValue) = (DecValue::NEG_INF_PLUS, DecValue::POS_INF_MINUS);

impl Region {
    pub fn whole() -> Self {
        Self { bottom: true, top: true, upper: Some(FULL), lower: Some(FULL) }
    }

    pub fn of(interval: &ContinuousInterval) -> Self {
        let empty = Self { bottom: false, top: false, upper: None, lower: None };
        match *interval {
            ContinuousInterval::U { birth, death } => Self { upper: arm(birth, death), ..empty },
            ContinuousInterval::D { birth, death } => Self { lower: arm(birth, death), ..empty },
            ContinuousInterval::B => Self::whole(),
            ContinuousInterval::L { upper, lower } => Self {
                bottom: true,
                upper: arm(DecValue::NEG_INF_PLUS, upper),
                lower: arm(DecValue::NEG_INF_PLUS, lower),
                ..empty
            },
            ContinuousInterval::R { upper, lower } => Self {
                top: true,
                upper: arm(upper, DecValue::POS_INF_MINUS),
                lower: arm(lower, DecValue::POS_INF_MINUS),
                ..empty
            },
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.bottom && !self.top && self.upper.is_none() && self.lower.is_none()
    }

    /// Translation by `eps` along both arms; `-inf` and `+inf` are fixed.
    pub fn shift(&self, eps: f64) -> Self {
        let s = |a: Option<(DecValue, DecValue)>| a.and_then(|(lo, hi)| arm(lo.shift(eps), hi.shift(eps)));
        Self { upper: s(self.upper), lower: s(self.lower), ..*self }
    }

    pub fn upset(&self) -> Self {
        if self.bottom {
            return Self::whole();
        }
        let up = |a: Option<(DecValue, DecValue)>| a.map(|(lo, _)| (lo, DecValue::POS_INF_MINUS));
        Self {
            bottom: false,
            top: !self.is_empty(),
            upper: up(self.upper),
            lower: up(self.lower),
        }
    }

    pub fn downset(&self) -> Self {
        if self.top {
            return Self::whole();
        }
        let down = |a: Option<(DecValue, DecValue)>| a.map(|(_, hi)| (DecValue::NEG_INF_PLUS, hi));
        Self {
            bottom: !self.is_empty(),
            top: false,
            upper: down(self.upper),
            lower: down(self.lower),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let meet = |a: Option<(DecValue, DecValue)>, b: Option<(DecValue, DecValue)>| match (a, b) {
            (Some((l1, h1)), Some((l2, h2))) => arm(l1.max(l2), h1.min(h2)),
            _ => None,
        };
        Self {
            bottom: self.bottom && other.bottom,
            top: self.top && other.top,
            upper: meet(self.upper, other.upper),
            lower: meet(self.lower, other.lower),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        let arm_sub = |a: Option<(DecValue, DecValue)>, b: Option<(DecValue, DecValue)>| match (a, b) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some((l1, h1)), Some((l2, h2))) => l2 <= l1 && h1 <= h2,
        };
        (!self.bottom || other.bottom)
            && (!self.top || other.top)
            && arm_sub(self.upper, other.upper)
            && arm_sub(self.lower, other.lower)
    }

    /// `Lambda_{-eps}(A)^up n Lambda_eps(A)^down`, computed set-theoretically.
    pub fn thickening(&self, eps: f64) -> Self {
        self.shift(-eps).upset().intersect(&self.shift(eps).downset())
    }

    /// Reads the region back as an interval, if it is one.
    pub fn to_interval(&self) -> Option<ContinuousInterval> {
        let hi = |a: Option<(DecValue, DecValue)>| a.map_or(DecValue::NEG_INF_PLUS, |(_, h)| h);
        let lo = |a: Option<(DecValue, DecValue)>| a.map_or(DecValue::POS_INF_MINUS, |(l, _)| l);
        match (self.bottom, self.top) {
            (true, true) => (*self == Self::whole()).then_some(ContinuousInterval::B),
            (true, false) => ContinuousInterval::left(hi(self.upper), hi(self.lower)).ok(),
            (false, true) => ContinuousInterval::right(lo(self.upper), lo(self.lower)).ok(),
            (false, false) => match (self.upper, self.lower) {
                (Some((b, d)), None) => ContinuousInterval::upper_bar(b, d).ok(),
                (None, Some((b, d))) => ContinuousInterval::lower_bar(b, d).ok(),
                _ => None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::GridPoset;
    use proptest::prelude::*;

    fn m(v: f64) -> DecValue {
        DecValue::minus(v)
    }
    fn p(v: f64) -> DecValue {
        DecValue::plus(v)
    }
    fn u(b: DecValue, d: DecValue) -> ContinuousInterval {
        ContinuousInterval::upper_bar(b, d).unwrap()
    }

    #[test]
    fn grid_to_continuous_examples() {
        let poset = GridPoset::new(2, 2);
        let bar = GridInterval::from_shape(poset, GridShape::Upper { start: 1, end: 2 }).unwrap();
        let vals = [0.5, 1.2];
        assert_eq!(
            grid_to_continuous(&bar, &vals, &vals).unwrap(),
            u(m(0.5), DecValue::POS_INF_MINUS)
        );
        // an L interval with no lower nodes still contains the lower arm below l_1
        let l = GridInterval::from_shape(poset, GridShape::Left { upper_to: 1, lower_to: 0 }).unwrap();
        assert_eq!(
            grid_to_continuous(&l, &vals, &[0.7, 2.0]).unwrap(),
            ContinuousInterval::L { upper: m(1.2), lower: m(0.7) }
        );
        let b = GridInterval::whole(poset);
        assert_eq!(grid_to_continuous(&b, &vals, &vals).unwrap(), ContinuousInterval::B);
        assert!(grid_to_continuous(&b, &vals, &[1.0]).is_err());
    }

    #[test]
    fn grid_to_continuous_is_a_preimage() {
        // r is in the continuous interval iff its grid node is in the grid interval
        let poset = GridPoset::new(3, 2);
        let u_vals = [1.0, 2.0, 4.0];
        let l_vals = [0.5, 3.0];
        let node = |vals: &[f64], r: f64| vals.iter().rposition(|&v| v <= r).map_or(0, |i| i + 1);
        for interval in crate::poset::enumerate_intervals(&poset) {
            let c = grid_to_continuous(&interval, &u_vals, &l_vals).unwrap();
            let region = Region::of(&c);
            assert_eq!(region.bottom, interval.contains(poset.bottom()));
            assert_eq!(region.top, interval.contains(poset.top()));
            for k in 0..48 {
                let r = -1.0 + k as f64 * 0.125;
                let point = Region { bottom: false, top: false, upper: arm(m(r), p(r)), lower: None };
                let i = node(&u_vals, r);
                let expected = if i == 0 { interval.contains(poset.bottom()) } else { interval.contains(poset.upper(i)) };
                assert_eq!(point.is_subset(&region), expected, "{interval} at upper {r}");
                let point = Region { bottom: false, top: false, upper: None, lower: arm(m(r), p(r)) };
                let j = node(&l_vals, r);
                let expected = if j == 0 { interval.contains(poset.bottom()) } else { interval.contains(poset.lower(j)) };
                assert_eq!(point.is_subset(&region), expected, "{interval} at lower {r}");
            }
        }
    }

    #[test]
    fn constructor_validation() {
        assert!(ContinuousInterval::upper_bar(m(2.0), m(2.0)).is_err());
        assert!(ContinuousInterval::upper_bar(DecValue::NEG_INF_MINUS, m(2.0)).is_err());
        assert!(ContinuousInterval::upper_bar(m(2.0), p(2.0)).is_ok());
        assert!(ContinuousInterval::left(DecValue::POS_INF_PLUS, m(1.0)).is_err());
        assert_eq!(
            ContinuousInterval::left(DecValue::NEG_INF_MINUS, m(1.0)).unwrap(),
            ContinuousInterval::L { upper: DecValue::NEG_INF_PLUS, lower: m(1.0) }
        );
        assert_eq!(
            ContinuousInterval::right(DecValue::POS_INF_PLUS, m(1.0)).unwrap(),
            ContinuousInterval::R { upper: DecValue::POS_INF_MINUS, lower: m(1.0) }
        );
    }

    #[test]
    fn thicken_examples() {
        let l = ContinuousInterval::L { upper: m(3.0), lower: m(5.0) };
        assert_eq!(thicken(&l, 1.0), ContinuousInterval::L { upper: m(4.0), lower: m(6.0) });
        assert_eq!(thicken(&u(m(0.0), m(2.0)), 1.0), u(m(-1.0), m(3.0)));
        for i in [l, u(m(0.0), p(2.0)), ContinuousInterval::B] {
            assert_eq!(thicken(&i, 0.0), i);
        }
    }

    #[test]
    fn triviality_examples() {
        let l = ContinuousInterval::L { upper: m(3.0), lower: m(5.0) };
        assert!(!is_trivial(&l, 100.0));
        assert!(is_trivial(&u(m(0.0), m(2.0)), 2.0));
        assert!(!is_trivial(&u(m(0.0), p(2.0)), 2.0));
        assert!(!is_trivial(&u(m(0.0), m(2.0)), 1.5));
    }

    #[test]
    fn threshold_examples() {
        let t = matching_threshold(&u(m(0.0), m(2.0)), &u(m(1.0), m(3.0)));
        assert_eq!(t, Threshold { value: 1.0, attained: true });
        let a = ContinuousInterval::L { upper: DecValue::NEG_INF_PLUS, lower: m(3.0) };
        let b = ContinuousInterval::L { upper: m(2.0), lower: m(3.0) };
        assert!(!matching_threshold(&a, &b).is_finite());
        assert_eq!(matching_threshold(&ContinuousInterval::B, &ContinuousInterval::B), Threshold::ALWAYS);
        assert_eq!(triviality_threshold(&u(m(0.0), m(10.0))), Threshold { value: 5.0, attained: true });
        assert_eq!(triviality_threshold(&u(m(0.0), p(10.0))), Threshold { value: 5.0, attained: false });
        // moving the open birth 1^+ down by 1 gives 0^+, which misses the closed birth 0^-
        let t = matching_threshold(&u(m(0.0), m(2.0)), &u(p(1.0), m(2.0)));
        assert_eq!(t, Threshold { value: 1.0, attained: false });
        let t = matching_threshold(&u(p(0.0), m(2.0)), &u(m(1.0), m(2.0)));
        assert_eq!(t, Threshold { value: 1.0, attained: true });
    }

    fn dec_strategy() -> impl Strategy<Value = DecValue> {
        let value = prop_oneof![
            8 => (-16i32..=16).prop_map(|k| k as f64 / 4.0),
            1 => Just(f64::NEG_INFINITY),
            1 => Just(f64::INFINITY),
        ];
        (value, any::<bool>()).prop_map(|(v, plus)| DecValue::new(v, if plus { Dec::Plus } else { Dec::Minus }).unwrap())
    }

    pub(crate) fn interval_strategy() -> impl Strategy<Value = ContinuousInterval> {
        (0u8..5, dec_strategy(), dec_strategy()).prop_filter_map("invalid endpoints", |(c, a, b)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            match c {
                0 => ContinuousInterval::upper_bar(lo, hi).ok(),
                1 => ContinuousInterval::lower_bar(lo, hi).ok(),
                2 => Some(ContinuousInterval::B),
                3 => ContinuousInterval::left(a, b).ok(),
                _ => ContinuousInterval::right(a, b).ok(),
            }
        })
    }

    fn eps_strategy() -> impl Strategy<Value = f64> {
        (0i32..=40).prop_map(|k| k as f64 / 8.0)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn thicken_matches_set_definition(i in interval_strategy(), eps in eps_strategy()) {
            let oracle = Region::of(&i).thickening(eps);
            prop_assert_eq!(Region::of(&thicken(&i, eps)), oracle);
            prop_assert_eq!(oracle.to_interval(), Some(thicken(&i, eps)));
        }

        #[test]
        fn thicken_is_monotone(i in interval_strategy(), a in eps_strategy(), b in eps_strategy()) {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(Region::of(&i).is_subset(&Region::of(&thicken(&i, a))));
            prop_assert!(Region::of(&thicken(&i, a)).is_subset(&Region::of(&thicken(&i, b))));
        }

        #[test]
        fn triviality_matches_shift_definition(i in interval_strategy(), d in eps_strategy()) {
            // trivial iff no r with r and r + d both in I
            let r = Region::of(&i);
            let oracle = r.intersect(&r.shift(-d)).is_empty();
            prop_assert_eq!(is_trivial(&i, d), oracle);
            prop_assert_eq!(triviality_threshold(&i).holds_at(d / 2.0), oracle);
        }

        #[test]
        fn thresholds_agree_with_predicates(i in interval_strategy(), j in interval_strategy(), eps in eps_strategy()) {
            prop_assert_eq!(containment_threshold(&j, &i).holds_at(eps), contained_in_thickening(&j, &i, eps));
            let both = contained_in_thickening(&j, &i, eps) && contained_in_thickening(&i, &j, eps);
            prop_assert_eq!(matching_threshold(&i, &j).holds_at(eps), both);
        }

        #[test]
        fn cross_class_never_matches(i in interval_strategy(), j in interval_strategy()) {
            if i.class() != j.class() {
                prop_assert!(!matching_threshold(&i, &j).is_finite());
            }
            prop_assert_eq!(matching_threshold(&i, &j), matching_threshold(&j, &i));
        }
    }
}
