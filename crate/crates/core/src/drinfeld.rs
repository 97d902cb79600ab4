//! Finite balls in the Bruhat–Tits tree of `SL₂` over a local field, as
//! curve skeletons, and recovery of the residue field from them.
//!
//! A vertex is a pair `(n, D)`: the disc of radius `|π|^n` around the
//! center `Σ D[m] π^m`, with digits `D[m] ∈ {0, …, q−1}` at exponents
//! `m < n`. Zero digits are never stored, so each vertex has one form.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modular::{is_prime, prime_power};
use crate::scalar::Scalar;
use crate::semigraph::{Edge, SemiGraph};
use crate::skeleton::{CurveParams, EdgeDecor, Length, Skeleton, SkeletonError, VertexDecor};
use crate::ultrametric::{CenterSpace, DiscPoint, LogValue, UltrametricError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrinfeldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("inertia degree and ramification index must be at least 1")]
    ZeroParameter,
    #[error("residue field size {0} overflows")]
    TooLarge(u64),
    #[error("skeleton has no interior vertex")]
    NoInteriorVertex,
    #[error("interior valences are not uniform: {0:?} has {1}, {2:?} has {3}")]
    NonUniformValence(String, usize, String, usize),
    #[error("interior valence {0} is below 3")]
    ValenceTooSmall(usize),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("metric embedding needs an unramified field, got e = {0}")]
    Ramified(u64),
    #[error("malformed vertex id {0:?}")]
    BadVertexId(String),
    #[error("digit {digit} at exponent {exponent} is not below q = {q}")]
    BadDigit { exponent: i64, digit: u64, q: u64 },
    #[error(transparent)]
    Skeleton(#[from] SkeletonError),
}

impl DrinfeldError {
    pub fn code(&self) -> &'static str {
        match self {
            DrinfeldError::NotPrime(_) => "not_prime",
            DrinfeldError::ZeroParameter => "zero_parameter",
            DrinfeldError::TooLarge(_) => "too_large",
            DrinfeldError::NoInteriorVertex => "no_interior_vertex",
            DrinfeldError::NonUniformValence(..) => "non_uniform_valence",
            DrinfeldError::ValenceTooSmall(_) => "valence_too_small",
            DrinfeldError::NotPrimePower(_) => "not_prime_power",
            DrinfeldError::Ramified(_) => "ramified",
            DrinfeldError::BadVertexId(_) => "bad_vertex_id",
            DrinfeldError::BadDigit { .. } => "bad_digit",
            DrinfeldError::Skeleton(e) => e.code(),
        }
    }
}

/// Residue characteristic `p`, inertia degree `f`, ramification index `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFieldParams {
    pub p: u64,
    pub f: u32,
    pub e: u64,
    /// Characteristic zero ground field.
    #[serde(default = "yes")]
    pub mixed_characteristic: bool,
}

fn yes() -> bool {
    true
}

impl LocalFieldParams {
    pub fn new(p: u64, f: u32, e: u64) -> Result<Self, DrinfeldError> {
        if !is_prime(p) {
            return Err(DrinfeldError::NotPrime(p));
        }
        if f == 0 || e == 0 {
            return Err(DrinfeldError::ZeroParameter);
        }
        p.checked_pow(f).ok_or(DrinfeldError::TooLarge(p))?;
        Ok(LocalFieldParams { p, f, e, mixed_characteristic: true })
    }

    /// Residue field size `p^f`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// `f / e` in `log_p` units.
    pub fn edge_length<S: Scalar>(&self) -> S {
        S::from_ratio(self.f as i64, self.e as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BTVertex {
    pub level: i64,
    pub digits: BTreeMap<i64, u64>,
}

impl BTVertex {
    pub fn root() -> Self {
        BTVertex { level: 0, digits: BTreeMap::new() }
    }

    /// Drops zero digits; panics if an exponent is not below the level.
    pub fn new(level: i64, digits: BTreeMap<i64, u64>) -> Self {
        assert!(digits.keys().all(|&m| m < level), "digit exponents must lie below the level");
        BTVertex { level, digits: digits.into_iter().filter(|&(_, d)| d != 0).collect() }
    }

    pub fn parent(&self) -> Self {
        let level = self.level - 1;
        BTVertex { level, digits: self.digits.range(..level).map(|(&m, &d)| (m, d)).collect() }
    }

    /// Children in digit order.
    pub fn children(&self, q: u64) -> impl Iterator<Item = BTVertex> + '_ {
        (0..q).map(move |d| {
            let mut digits = self.digits.clone();
            if d != 0 {
                digits.insert(self.level, d);
            }
            BTVertex { level: self.level + 1, digits }
        })
    }

    /// `"n:"` followed by `m=d` pairs, e.g. `"2:0=1,1=2"`.
    pub fn id(&self) -> String {
        self.to_string()
    }

    pub fn parse(id: &str, q: u64) -> Result<Self, DrinfeldError> {
        let bad = || DrinfeldError::BadVertexId(id.to_string());
        let (level, rest) = id.split_once(':').ok_or_else(bad)?;
        let level: i64 = level.parse().map_err(|_| bad())?;
        let mut digits = BTreeMap::new();
        for pair in rest.split(',').filter(|s| !s.is_empty()) {
            let (m, d) = pair.split_once('=').ok_or_else(bad)?;
            let (m, d): (i64, u64) = (m.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?);
            if m >= level || d == 0 || digits.insert(m, d).is_some() {
                return Err(bad());
            }
            if d >= q {
                return Err(DrinfeldError::BadDigit { exponent: m, digit: d, q });
            }
        }
        Ok(BTVertex { level, digits })
    }

    /// Graph distance in the tree.
    pub fn distance(&self, other: &BTVertex) -> u64 {
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut steps = 0;
        while a.level > b.level {
            a = a.parent();
            steps += 1;
        }
        while b.level > a.level {
            b = b.parent();
            steps += 1;
        }
        while a != b {
            a = a.parent();
            b = b.parent();
            steps += 2;
        }
        steps
    }
}

impl fmt::Display for BTVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.level)?;
        let pairs: Vec<String> = self.digits.iter().map(|(m, d)| format!("{m}={d}")).collect();
        write!(f, "{}", pairs.join(","))
    }
}

/// Breadth-first list of `(vertex, depth, predecessor)` over the
/// radius-`radius` ball around the root, each neighbour list in (parent,
/// children by digit) order.
pub fn bt_ball_vertices(q: u64, radius: usize) -> Vec<(BTVertex, usize, Option<BTVertex>)> {
    let mut out = vec![(BTVertex::root(), 0, None)];
    let mut queue = VecDeque::from([(BTVertex::root(), None::<BTVertex>, 0usize)]);
    while let Some((v, from, depth)) = queue.pop_front() {
        if depth == radius {
            continue;
        }
        let parent = v.parent();
        for w in std::iter::once(parent).chain(v.children(q)) {
            if from.as_ref() == Some(&w) {
                continue;
            }
            out.push((w.clone(), depth + 1, Some(v.clone())));
            queue.push_back((w, Some(v.clone()), depth + 1));
        }
    }
    out
}

/// The ball as a skeleton: genus-0 type-2 vertices, closed edges of length
/// `f/e`, boundary vertices flagged incomplete.
pub fn bt_ball<S: Scalar>(params: &LocalFieldParams, radius: usize) -> Result<Skeleton<S>, DrinfeldError> {
    let q = params.q();
    let listed = bt_ball_vertices(q, radius);
    let mut vertices = Vec::with_capacity(listed.len());
    let mut decors = Vec::with_capacity(listed.len());
    let mut edges = Vec::new();
    for (v, depth, pred) in &listed {
        let id = v.id();
        if let Some(toward) = pred {
            let toward = toward.id();
            let edge = format!("[{id}|{toward}]");
            edges.push(Edge::closed(&edge, (&format!("{edge}.0"), &id), (&format!("{edge}.1"), &toward)));
        }
        vertices.push(id);
        decors.push(VertexDecor { incomplete: *depth == radius, ..VertexDecor::default() });
    }
    let graph = SemiGraph::new(vertices, edges).map_err(SkeletonError::from)?;
    let edge_decor = EdgeDecor { length: Length::Finite(params.edge_length::<S>()), cusp: None };
    let edge_decors = vec![edge_decor; graph.edge_count()];
    let curve = CurveParams { p: params.p, mixed_characteristic: params.mixed_characteristic, truncated: true };
    Ok(Skeleton::new(graph, decors, edge_decors, curve)?)
}

/// `(q, p, f)` from the common valence `q + 1` of the interior vertices.
pub fn recover_invariants<S: Scalar>(sk: &Skeleton<S>) -> Result<(u64, u64, u32), DrinfeldError> {
    let g = sk.graph();
    let mut common: Option<(usize, usize)> = None;
    for v in (0..g.vertex_count()).filter(|&v| !sk.vertex_decor(v).incomplete) {
        let val = g.valence(v);
        match common {
            None => common = Some((v, val)),
            Some((w, k)) if k != val => {
                return Err(DrinfeldError::NonUniformValence(
                    sk.vertex_id(w).to_string(),
                    k,
                    sk.vertex_id(v).to_string(),
                    val,
                ))
            }
            Some(_) => {}
        }
    }
    let (_, val) = common.ok_or(DrinfeldError::NoInteriorVertex)?;
    if val < 3 {
        return Err(DrinfeldError::ValenceTooSmall(val));
    }
    let q = val as u64 - 1;
    let (p, f) = prime_power(q).ok_or(DrinfeldError::NotPrimePower(q))?;
    Ok((q, p, f))
}

/// Centers `Σ D[m] π^m` with `log_p |a − b| = −f·m₀`, `m₀` the first
/// exponent where the digit strings differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitCenterSpace {
    pub f: u32,
}

impl<S: Scalar> CenterSpace<S> for DigitCenterSpace {
    type Center = BTreeMap<i64, u64>;

    fn log_dist(&self, a: &Self::Center, b: &Self::Center) -> Result<LogValue<S>, UltrametricError> {
        let first = a
            .keys()
            .chain(b.keys())
            .filter(|m| a.get(m).copied().unwrap_or(0) != b.get(m).copied().unwrap_or(0))
            .min();
        Ok(match first {
            None => LogValue::MinusInf,
            Some(&m) => LogValue::Finite(S::from_int(-(self.f as i64) * m)),
        })
    }
}

/// The vertex as a disc point of log-radius `−n·f`; requires `e = 1`.
pub fn embed_vertex<S: Scalar>(
    v: &BTVertex,
    params: &LocalFieldParams,
) -> Result<DiscPoint<BTreeMap<i64, u64>, S>, DrinfeldError> {
    if params.e != 1 {
        return Err(DrinfeldError::Ramified(params.e));
    }
    Ok(DiscPoint::type_two(v.digits.clone(), S::from_int(-v.level * params.f as i64)))
}
