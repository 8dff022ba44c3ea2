//! Decorated numbers, the finite bipath poset `B_{n,m}`, its intervals and the
//! component calculus `Omega(I, J)` that indexes a basis of `Hom(k_I, k_J)`.
//!
//! Elements of `B_{n,m}` are encoded densely: `0` is `-inf`, `1..=n` is the upper
//! path, `n+1..=n+m` the lower path (`1'..m'`) and `n+m+1` is `+inf`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PosetError {
    #[error("decorated value must not be NaN")]
    NotANumber,
    #[error("-inf + +inf is undefined")]
    UndefinedSum,
    #[error("subset is not convex")]
    NotConvex,
    #[error("subset is not connected")]
    NotConnected,
    #[error("empty set is not an interval")]
    Empty,
    #[error("member set has length {got}, poset has {expected} elements")]
    WrongLength { expected: usize, got: usize },
    #[error("shape {0:?} is out of range for the poset")]
    BadShape(GridShape),
}

/// Side marker of a decorated number.
///
/// `Minus` sorts before `Plus` at equal values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dec {
    Minus,
    Plus,
}

/// An extended real `r` together with a decoration, ordered lexicographically:
/// `s^a <= t^b` iff `s < t`, or `s == t` and `(a, b)` is not `(+, -)`.
#[derive(Debug, Clone, Copy)]
pub struct DecValue {
    value: f64,
    dec: Dec,
}

impl DecValue {
    pub fn new(value: f64, dec: Dec) -> Result<Self, PosetError> {
        if value.is_nan() {
            return Err(PosetError::NotANumber);
        }
        // -0.0 and 0.0 must compare and hash identically
        let value = if value == 0.0 { 0.0 } else { value };
        Ok(Self { value, dec })
    }

    /// `r^-`. Panics on NaN.
    pub fn minus(value: f64) -> Self {
        Self::new(value, Dec::Minus).expect("NaN decorated value")
    }

    /// `r^+`. Panics on NaN.
    pub fn plus(value: f64) -> Self {
        Self::new(value, Dec::Plus).expect("NaN decorated value")
    }

    pub const NEG_INF_MINUS: DecValue = DecValue { value: f64::NEG_INFINITY, dec: Dec::Minus };
    pub const NEG_INF_PLUS: DecValue = DecValue { value: f64::NEG_INFINITY, dec: Dec::Plus };
    pub const POS_INF_MINUS: DecValue = DecValue { value: f64::INFINITY, dec: Dec::Minus };
    pub const POS_INF_PLUS: DecValue = DecValue { value: f64::INFINITY, dec: Dec::Plus };

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn dec(&self) -> Dec {
        self.dec
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }

    /// Translation by `eps` (any sign). `+-inf` are fixed points.
    pub fn shift(&self, eps: f64) -> Self {
        if self.value.is_finite() {
            Self::new(self.value + eps, self.dec).expect("finite shift of finite value")
        } else {
            *self
        }
    }

    /// Decorated sum: plus-decorated iff both summands are.
    pub fn add(&self, other: &DecValue) -> Result<Self, PosetError> {
        if self.value.is_infinite()
            && other.value.is_infinite()
            && self.value.signum() != other.value.signum()
        {
            return Err(PosetError::UndefinedSum);
        }
        let dec = if self.dec == Dec::Plus && other.dec == Dec::Plus {
            Dec::Plus
        } else {
            Dec::Minus
        };
        Self::new(self.value + other.value, dec)
    }
}

pub fn dec_cmp(a: &DecValue, b: &DecValue) -> Ordering {
    a.value
        .partial_cmp(&b.value)
        .expect("decorated values are never NaN")
        .then(a.dec.cmp(&b.dec))
}

pub fn dec_add(a: &DecValue, b: &DecValue) -> Result<DecValue, PosetError> {
    a.add(b)
}

pub fn dec_shift(a: &DecValue, eps: f64) -> DecValue {
    a.shift(eps)
}

impl PartialEq for DecValue {
    fn eq(&self, other: &Self) -> bool {
        dec_cmp(self, other) == Ordering::Equal
    }
}

impl Eq for DecValue {}

impl PartialOrd for DecValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DecValue {
    fn cmp(&self, other: &Self) -> Ordering {
        dec_cmp(self, other)
    }
}

impl std::hash::Hash for DecValue {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.value.to_bits().hash(state);
        self.dec.hash(state);
    }
}

impl fmt::Display for DecValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.dec {
            Dec::Minus => "-",
            Dec::Plus => "+",
        };
        if self.value == f64::INFINITY {
            write!(f, "+inf^{sign}")
        } else if self.value == f64::NEG_INFINITY {
            write!(f, "-inf^{sign}")
        } else {
            write!(f, "{}^{sign}", self.value)
        }
    }
}

/// Which of the two chains of the bipath poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arm {
    Upper,
    Lower,
}

/// The finite bipath poset `B_{n,m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoset {
    pub n: usize,
    pub m: usize,
}

impl GridPoset {
    pub fn new(n: usize, m: usize) -> Self {
        Self { n, m }
    }

    pub fn len(&self) -> usize {
        self.n + self.m + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.n + self.m + 1
    }

    /// Element for upper node `i` (1-based).
    pub fn upper(&self, i: usize) -> usize {
        debug_assert!(1 <= i && i <= self.n);
        i
    }

    /// Element for lower node `j'` (1-based).
    pub fn lower(&self, j: usize) -> usize {
        debug_assert!(1 <= j && j <= self.m);
        self.n + j
    }

    pub fn arm_len(&self, arm: Arm) -> usize {
        match arm {
            Arm::Upper => self.n,
            Arm::Lower => self.m,
        }
    }

    /// Element at position `pos` along a path: 0 is `-inf`, `len + 1` is `+inf`.
    pub fn path_element(&self, arm: Arm, pos: usize) -> usize {
        let len = self.arm_len(arm);
        assert!(pos <= len + 1, "path position out of range");
        if pos == 0 {
            self.bottom()
        } else if pos == len + 1 {
            self.top()
        } else {
            match arm {
                Arm::Upper => pos,
                Arm::Lower => self.n + pos,
            }
        }
    }

    /// Arm and 1-based position of an interior element; `None` for `+-inf`.
    pub fn locate(&self, e: usize) -> Option<(Arm, usize)> {
        if e == self.bottom() || e == self.top() {
            None
        } else if e <= self.n {
            Some((Arm::Upper, e))
        } else {
            Some((Arm::Lower, e - self.n))
        }
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        if p == q || p == self.bottom() || q == self.top() {
            return true;
        }
        match (self.locate(p), self.locate(q)) {
            (Some((a, i)), Some((b, j))) => a == b && i <= j,
            _ => false,
        }
    }

    /// Edges of the two paths `-inf -> ... -> +inf`, each as `(arm, from, to)`.
    /// When an arm is empty its path is the single edge `(-inf, +inf)`.
    pub fn path_edges(&self) -> Vec<(Arm, usize, usize)> {
        let mut out = Vec::with_capacity(self.n + self.m + 2);
        for arm in [Arm::Upper, Arm::Lower] {
            for pos in 0..=self.arm_len(arm) {
                out.push((arm, self.path_element(arm, pos), self.path_element(arm, pos + 1)));
            }
        }
        out
    }

    pub fn label(&self, e: usize) -> String {
        if e == self.bottom() {
            "-inf".to_string()
        } else if e == self.top() {
            "+inf".to_string()
        } else {
            match self.locate(e) {
                Some((Arm::Upper, i)) => i.to_string(),
                Some((Arm::Lower, j)) => format!("{j}'"),
                None => unreachable!(),
            }
        }
    }
}

/// `A^up`; the empty set maps to the whole poset.
pub fn upset(poset: &GridPoset, set: &[bool]) -> Vec<bool> {
    closure(poset, set, |a, p| poset.leq(a, p))
}

/// `A^down`; the empty set maps to the whole poset.
pub fn downset(poset: &GridPoset, set: &[bool]) -> Vec<bool> {
    closure(poset, set, |a, p| poset.leq(p, a))
}

fn closure(poset: &GridPoset, set: &[bool], rel: impl Fn(usize, usize) -> bool) -> Vec<bool> {
    if !set.iter().any(|&b| b) {
        return vec![true; poset.len()];
    }
    (0..poset.len())
        .map(|p| (0..poset.len()).any(|a| set[a] && rel(a, p)))
        .collect()
}

/// The five interval classes, declared in the order used for sorting output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IntervalClass {
    U,
    D,
    B,
    L,
    R,
}

impl IntervalClass {
    /// Rank in `R < {U, B, D} < L`, along which nonzero Homs point.
    pub fn hom_rank(self) -> u8 {
        match self {
            IntervalClass::R => 0,
            IntervalClass::U => 1,
            IntervalClass::B => 2,
            IntervalClass::D => 3,
            IntervalClass::L => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IntervalClass::U => "U",
            IntervalClass::D => "D",
            IntervalClass::B => "B",
            IntervalClass::L => "L",
            IntervalClass::R => "R",
        }
    }
}

/// Parametrisation of an interval of `B_{n,m}` by grid indices.
///
/// * `Upper { start, end }` is `[start, end]` on the upper path, `1 <= start <= end <= n`.
/// * `Lower { start, end }` is `[start', end']` on the lower path.
/// * `Left { upper_to, lower_to }` is `[-inf, upper_to] U [-inf, lower_to']`, with
///   `0` meaning no nodes of that arm (`upper_to <= n`, `lower_to <= m`).
/// * `Right { upper_from, lower_from }` is `[upper_from, +inf] U [lower_from', +inf]`, with
///   `n + 1` (resp. `m + 1`) meaning no nodes of that arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GridShape {
    Upper { start: usize, end: usize },
    Lower { start: usize, end: usize },
    Whole,
    Left { upper_to: usize, lower_to: usize },
    Right { upper_from: usize, lower_from: usize },
}

impl GridShape {
    pub fn class(&self) -> IntervalClass {
        match self {
            GridShape::Upper { .. } => IntervalClass::U,
            GridShape::Lower { .. } => IntervalClass::D,
            GridShape::Whole => IntervalClass::B,
            GridShape::Left { .. } => IntervalClass::L,
            GridShape::Right { .. } => IntervalClass::R,
        }
    }
}

/// An interval of `B_{n,m}` with its member set and class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridInterval {
    poset: GridPoset,
    shape: GridShape,
    members: Vec<bool>,
}

impl GridInterval {
    pub fn from_shape(poset: GridPoset, shape: GridShape) -> Result<Self, PosetError> {
        let (n, m) = (poset.n, poset.m);
        let ok = match shape {
            GridShape::Upper { start, end } => 1 <= start && start <= end && end <= n,
            GridShape::Lower { start, end } => 1 <= start && start <= end && end <= m,
            GridShape::Whole => true,
            GridShape::Left { upper_to, lower_to } => upper_to <= n && lower_to <= m,
            GridShape::Right { upper_from, lower_from } => {
                (1..=n + 1).contains(&upper_from) && (1..=m + 1).contains(&lower_from)
            }
        };
        if !ok {
            return Err(PosetError::BadShape(shape));
        }
        let mut members = vec![false; poset.len()];
        match shape {
            GridShape::Upper { start, end } => (start..=end).for_each(|i| members[poset.upper(i)] = true),
            GridShape::Lower { start, end } => (start..=end).for_each(|j| members[poset.lower(j)] = true),
            GridShape::Whole => members.iter_mut().for_each(|b| *b = true),
            GridShape::Left { upper_to, lower_to } => {
                members[poset.bottom()] = true;
                (1..=upper_to).for_each(|i| members[poset.upper(i)] = true);
                (1..=lower_to).for_each(|j| members[poset.lower(j)] = true);
            }
            GridShape::Right { upper_from, lower_from } => {
                members[poset.top()] = true;
                (upper_from..=n).for_each(|i| members[poset.upper(i)] = true);
                (lower_from..=m).for_each(|j| members[poset.lower(j)] = true);
            }
        }
        let interval = Self { poset, shape, members };
        debug_assert_eq!(
            classify(&poset, &interval.members).as_ref(),
            Ok(&shape),
            "shape and member set disagree"
        );
        Ok(interval)
    }

    /// Builds an interval from an explicit member set, checking convexity and connectivity.
    pub fn from_members(poset: GridPoset, members: Vec<bool>) -> Result<Self, PosetError> {
        if members.len() != poset.len() {
            return Err(PosetError::WrongLength { expected: poset.len(), got: members.len() });
        }
        let shape = classify(&poset, &members)?;
        Ok(Self { poset, shape, members })
    }

    pub fn whole(poset: GridPoset) -> Self {
        Self::from_shape(poset, GridShape::Whole).expect("whole poset is an interval")
    }

    pub fn poset(&self) -> GridPoset {
        self.poset
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn class(&self) -> IntervalClass {
        self.shape.class()
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members[e]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e)
    }

    pub fn is_subset_of(&self, other: &GridInterval) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    /// Minimal elements (one or two).
    pub fn minima(&self) -> Vec<usize> {
        self.elements()
            .filter(|&p| !self.elements().any(|q| q != p && self.poset.leq(q, p)))
            .collect()
    }

    /// Key for the deterministic tie-break of the Hom order.
    pub fn order_key(&self) -> (u8, GridShape) {
        (self.class().hom_rank(), self.shape)
    }

    /// The `<s, t>` label of the interval, e.g. `<2',1'>` or `<2,+inf>`.
    pub fn label(&self) -> String {
        let p = self.poset;
        let up = |i: usize| if i == 0 { "-inf".to_string() } else if i > p.n { "+inf".to_string() } else { i.to_string() };
        let lo = |j: usize| if j == 0 { "-inf".to_string() } else if j > p.m { "+inf".to_string() } else { format!("{j}'") };
        match self.shape {
            GridShape::Upper { start, end } => format!("<{},{}>", up(start), up(end)),
            GridShape::Lower { start, end } => format!("<{},{}>", lo(end), lo(start)),
            GridShape::Whole => format!("B_{{{},{}}}", p.n, p.m),
            GridShape::Left { upper_to, lower_to } => format!("<{},{}>", lo(lower_to), up(upper_to)),
            GridShape::Right { upper_from, lower_from } => format!("<{},{}>", up(upper_from), lo(lower_from)),
        }
    }
}

impl fmt::Display for GridInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.class().as_str(), self.label())
    }
}

fn is_convex(poset: &GridPoset, set: &[bool]) -> bool {
    let up = upset(poset, set);
    let down = downset(poset, set);
    (0..poset.len()).all(|p| set[p] == (up[p] && down[p]))
}

fn is_connected(poset: &GridPoset, set: &[bool]) -> bool {
    let comps = components_by_comparability(poset, set);
    comps.len() <= 1
}

/// Connected components of an arbitrary subset, using comparability as adjacency.
pub fn components_by_comparability(poset: &GridPoset, set: &[bool]) -> Vec<Vec<bool>> {
    let mut seen = vec![false; poset.len()];
    let mut out = Vec::new();
    for start in 0..poset.len() {
        if !set[start] || seen[start] {
            continue;
        }
        let mut comp = vec![false; poset.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(p) = stack.pop() {
            comp[p] = true;
            for q in 0..poset.len() {
                if set[q] && !seen[q] && (poset.leq(p, q) || poset.leq(q, p)) {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn classify(poset: &GridPoset, set: &[bool]) -> Result<GridShape, PosetError> {
    if !set.iter().any(|&b| b) {
        return Err(PosetError::Empty);
    }
    if !is_convex(poset, set) {
        return Err(PosetError::NotConvex);
    }
    if !is_connected(poset, set) {
        return Err(PosetError::NotConnected);
    }
    let (n, m) = (poset.n, poset.m);
    let upper: Vec<usize> = (1..=n).filter(|&i| set[poset.upper(i)]).collect();
    let lower: Vec<usize> = (1..=m).filter(|&j| set[poset.lower(j)]).collect();
    let has_bottom = set[poset.bottom()];
    let has_top = set[poset.top()];
    // convexity makes each arm's members a contiguous run
    Ok(match (has_bottom, has_top) {
        (true, true) => GridShape::Whole,
        (true, false) => GridShape::Left { upper_to: upper.len(), lower_to: lower.len() },
        (false, true) => GridShape::Right {
            upper_from: n + 1 - upper.len(),
            lower_from: m + 1 - lower.len(),
        },
        (false, false) => {
            if let (Some(&s), Some(&e)) = (upper.first(), upper.last()) {
                GridShape::Upper { start: s, end: e }
            } else {
                GridShape::Lower { start: lower[0], end: *lower.last().unwrap() }
            }
        }
    })
}

/// Every interval of `B_{n,m}`, each exactly once.
pub fn enumerate_intervals(poset: &GridPoset) -> Vec<GridInterval> {
    let (n, m) = (poset.n, poset.m);
    let mut shapes = Vec::new();
    for start in 1..=n {
        for end in start..=n {
            shapes.push(GridShape::Upper { start, end });
        }
    }
    for start in 1..=m {
        for end in start..=m {
            shapes.push(GridShape::Lower { start, end });
        }
    }
    shapes.push(GridShape::Whole);
    for upper_to in 0..=n {
        for lower_to in 0..=m {
            shapes.push(GridShape::Left { upper_to, lower_to });
        }
    }
    for upper_from in 1..=n + 1 {
        for lower_from in 1..=m + 1 {
            shapes.push(GridShape::Right { upper_from, lower_from });
        }
    }
    shapes
        .into_iter()
        .map(|s| GridInterval::from_shape(*poset, s).expect("enumerated shape is valid"))
        .collect()
}

/// `n(n+1)/2 + m(m+1)/2 + 2(n+1)(m+1) + 1`.
pub fn interval_count(poset: &GridPoset) -> usize {
    let (n, m) = (poset.n, poset.m);
    n * (n + 1) / 2 + m * (m + 1) / 2 + 2 * (n + 1) * (m + 1) + 1
}

/// Connected components of a convex set, found along path edges.
fn convex_components(poset: &GridPoset, set: &[bool]) -> Vec<Vec<bool>> {
    let len = poset.len();
    let mut parent: Vec<usize> = (0..len).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for (_, p, q) in poset.path_edges() {
        if set[p] && set[q] {
            let (a, b) = (find(&mut parent, p), find(&mut parent, q));
            parent[a] = b;
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut out: Vec<Vec<bool>> = Vec::new();
    for e in 0..len {
        if !set[e] {
            continue;
        }
        let r = find(&mut parent, e);
        match roots.iter().position(|&x| x == r) {
            Some(k) => out[k][e] = true,
            None => {
                roots.push(r);
                let mut comp = vec![false; len];
                comp[e] = true;
                out.push(comp);
            }
        }
    }
    out
}

/// Components `C` of `I n J` with `I n C^down c C` and `J n C^up c C`.
pub fn omega(i: &GridInterval, j: &GridInterval) -> Vec<Vec<bool>> {
    let poset = i.poset;
    assert_eq!(poset, j.poset, "intervals of different posets");
    let meet: Vec<bool> = i.members.iter().zip(&j.members).map(|(&a, &b)| a && b).collect();
    if !meet.iter().any(|&b| b) {
        return Vec::new();
    }
    convex_components(&poset, &meet)
        .into_iter()
        .filter(|c| {
            let down = downset(&poset, c);
            let up = upset(&poset, c);
            (0..poset.len()).all(|p| !(i.members[p] && down[p]) || c[p])
                && (0..poset.len()).all(|p| !(j.members[p] && up[p]) || c[p])
        })
        .collect()
}

pub fn omega_count(i: &GridInterval, j: &GridInterval) -> usize {
    omega(i, j).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_intervals(poset: &GridPoset) -> Vec<Vec<bool>> {
        let len = poset.len();
        (1u64..(1 << len))
            .map(|mask| (0..len).map(|e| mask >> e & 1 == 1).collect::<Vec<bool>>())
            .filter(|set| is_convex(poset, set) && is_connected(poset, set))
            .collect()
    }

    #[test]
    fn dec_cmp_examples() {
        assert_eq!(dec_cmp(&DecValue::minus(3.0), &DecValue::plus(3.0)), Ordering::Less);
        assert_eq!(dec_cmp(&DecValue::minus(3.0), &DecValue::minus(3.0)), Ordering::Equal);
        assert_eq!(dec_cmp(&DecValue::NEG_INF_PLUS, &DecValue::minus(5.0)), Ordering::Less);
        assert_eq!(DecValue::minus(-0.0), DecValue::minus(0.0));
        assert!(DecValue::new(f64::NAN, Dec::Plus).is_err());
    }

    #[test]
    fn dec_add_examples() {
        assert_eq!(dec_add(&DecValue::plus(1.0), &DecValue::plus(2.0)).unwrap(), DecValue::plus(3.0));
        assert_eq!(dec_add(&DecValue::minus(1.0), &DecValue::plus(2.0)).unwrap(), DecValue::minus(3.0));
        assert_eq!(dec_add(&DecValue::minus(0.0), &DecValue::minus(0.0)).unwrap(), DecValue::minus(0.0));
        assert_eq!(
            dec_add(&DecValue::NEG_INF_PLUS, &DecValue::plus(2.0)).unwrap().value(),
            f64::NEG_INFINITY
        );
        assert_eq!(
            dec_add(&DecValue::NEG_INF_PLUS, &DecValue::POS_INF_MINUS),
            Err(PosetError::UndefinedSum)
        );
    }

    #[test]
    fn dec_shift_examples() {
        assert_eq!(dec_shift(&DecValue::minus(2.0), 0.5), DecValue::minus(2.5));
        assert_eq!(dec_shift(&DecValue::NEG_INF_PLUS, 7.0), DecValue::NEG_INF_PLUS);
        assert_eq!(dec_shift(&DecValue::plus(2.0), 0.0), DecValue::plus(2.0));
    }

    #[test]
    fn extreme_decorated_values() {
        let vals = [
            DecValue::minus(0.0),
            DecValue::plus(1e300),
            DecValue::NEG_INF_PLUS,
            DecValue::POS_INF_MINUS,
        ];
        for v in vals {
            assert!(DecValue::NEG_INF_MINUS <= v);
            assert!(v <= DecValue::POS_INF_PLUS);
        }
    }

    #[test]
    fn poset_order() {
        let p = GridPoset::new(2, 3);
        for e in 0..p.len() {
            assert!(p.leq(p.bottom(), e));
            assert!(p.leq(e, p.top()));
            assert!(p.leq(e, e));
        }
        for i in 1..=2 {
            for j in 1..=3 {
                assert!(!p.leq(p.upper(i), p.lower(j)));
                assert!(!p.leq(p.lower(j), p.upper(i)));
            }
        }
        assert!(p.leq(p.upper(1), p.upper(2)));
        assert!(!p.leq(p.upper(2), p.upper(1)));
        for a in 0..p.len() {
            for b in 0..p.len() {
                if p.leq(a, b) && p.leq(b, a) {
                    assert_eq!(a, b);
                }
                for c in 0..p.len() {
                    if p.leq(a, b) && p.leq(b, c) {
                        assert!(p.leq(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn up_and_down_sets() {
        let p = GridPoset::new(2, 2);
        let mut s = vec![false; p.len()];
        s[p.bottom()] = true;
        assert!(upset(&p, &s).iter().all(|&b| b));
        assert!(downset(&p, &vec![false; p.len()]).iter().all(|&b| b));
        let mut one = vec![false; p.len()];
        one[p.upper(1)] = true;
        let up = upset(&p, &one);
        let expected: Vec<usize> = vec![p.upper(1), p.upper(2), p.top()];
        assert_eq!(up.iter().enumerate().filter(|(_, &b)| b).map(|(e, _)| e).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 0..=4 {
            for m in 0..=4 {
                let p = GridPoset::new(n, m);
                let ours = enumerate_intervals(&p);
                let mut brute = brute_force_intervals(&p);
                let mut mine: Vec<Vec<bool>> = ours.iter().map(|i| i.members.clone()).collect();
                brute.sort();
                mine.sort();
                assert_eq!(mine, brute, "B_{{{n},{m}}}");
                assert_eq!(ours.len(), interval_count(&p));
                // round trip through member-set classification
                for i in &ours {
                    let j = GridInterval::from_members(p, i.members.clone()).unwrap();
                    assert_eq!(&j, i);
                }
            }
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(brute_force_intervals(&GridPoset::new(2, 2)).len(), 25);
        assert_eq!(brute_force_intervals(&GridPoset::new(0, 0)).len(), 3);
        assert_eq!(brute_force_intervals(&GridPoset::new(1, 0)).len(), 6);
        assert_eq!(enumerate_intervals(&GridPoset::new(2, 2)).len(), 25);
    }

    #[test]
    fn rejects_non_intervals() {
        let p = GridPoset::new(2, 2);
        let mut s = vec![false; p.len()];
        s[p.bottom()] = true;
        s[p.upper(2)] = true;
        assert_eq!(GridInterval::from_members(p, s), Err(PosetError::NotConvex));
        let mut s = vec![false; p.len()];
        s[p.upper(1)] = true;
        s[p.lower(1)] = true;
        assert_eq!(GridInterval::from_members(p, s), Err(PosetError::NotConnected));
        assert_eq!(GridInterval::from_members(p, vec![false; p.len()]), Err(PosetError::Empty));
        assert!(GridInterval::from_shape(p, GridShape::Upper { start: 2, end: 1 }).is_err());
    }

    #[test]
    fn labels_follow_angle_notation() {
        let p = GridPoset::new(2, 2);
        let d = GridInterval::from_shape(p, GridShape::Lower { start: 1, end: 2 }).unwrap();
        assert_eq!(d.label(), "<2',1'>");
        let l = GridInterval::from_shape(p, GridShape::Left { upper_to: 1, lower_to: 1 }).unwrap();
        assert_eq!(l.label(), "<1',1>");
        let r = GridInterval::from_shape(p, GridShape::Right { upper_from: 2, lower_from: 3 }).unwrap();
        assert_eq!(r.label(), "<2,+inf>");
    }

    #[test]
    fn omega_examples() {
        let p = GridPoset::new(2, 2);
        let whole = GridInterval::whole(p);
        let u11 = GridInterval::from_shape(p, GridShape::Upper { start: 1, end: 1 }).unwrap();
        let l = GridInterval::from_shape(p, GridShape::Left { upper_to: 1, lower_to: 1 }).unwrap();
        assert_eq!(omega(&u11, &u11), vec![u11.members.clone()]);
        assert_eq!(omega_count(&whole, &u11), 0);
        assert_eq!(omega_count(&u11, &l), 1);
    }

    #[test]
    fn omega_returns_components() {
        for n in 0..=3 {
            for m in 0..=3 {
                let p = GridPoset::new(n, m);
                let all = enumerate_intervals(&p);
                for i in &all {
                    for j in &all {
                        let meet: Vec<bool> = i.members.iter().zip(&j.members).map(|(&a, &b)| a && b).collect();
                        let comps = components_by_comparability(&p, &meet);
                        for c in omega(i, j) {
                            assert!(comps.contains(&c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn omega_respects_class_order() {
        use IntervalClass::*;
        let allowed = |x: IntervalClass, y: IntervalClass| {
            x == y || x == R || y == L
        };
        for n in 0..=4 {
            for m in 0..=4 {
                let p = GridPoset::new(n, m);
                let all = enumerate_intervals(&p);
                for i in &all {
                    for j in &all {
                        if !allowed(i.class(), j.class()) {
                            assert!(omega(i, j).is_empty(), "{i} -> {j}");
                        }
                        match (i.class(), j.class()) {
                            (L, L) => assert_eq!(!omega(i, j).is_empty(), j.is_subset_of(i)),
                            (R, R) => assert_eq!(!omega(i, j).is_empty(), i.is_subset_of(j)),
                            _ => {}
                        }
                    }
                }
            }
        }
    }
}
