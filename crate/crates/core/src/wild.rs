//! Splitting of `μ_{p^h}`-covers `z ↦ z^{p^h}` and Kummer `μ_ℓ`-covers
//! over annuli.
//!
//! All radii are `log_p` values with `|p| = p^{-1}`. `T` is the log-norm of
//! the center `z₀`, `S` the log-radius of the disc point `η_{z₀, r}`, and
//! `S < T` throughout.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::modular::is_prime;
use crate::scalar::Scalar;
use crate::skeleton::Length;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WildError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("S must be < T")]
    RadiusNotBelowCenter,
    #[error("fiber count p^h overflows for p = {p}, h = {h}")]
    Overflow { p: u64, h: u32 },
    #[error("annulus length must be positive")]
    NonPositiveLength,
    #[error("annulus length must exceed h - 1")]
    LengthTooShort,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("epsilon must be below p/(p-1)")]
    EpsilonAboveThreshold,
    #[error("epsilon must be below L - (h - 1)")]
    EpsilonAboveRoom,
    #[error("ell must be at least 2, got {0}")]
    BadDegree(u64),
    #[error("class {class} is not a residue mod {ell}")]
    BadClass { ell: u64, class: u64 },
}

impl WildError {
    pub fn code(&self) -> &'static str {
        match self {
            WildError::NotPrime(_) => "p_not_prime",
            WildError::RadiusNotBelowCenter => "s_not_below_t",
            WildError::Overflow { .. } => "count_overflow",
            WildError::NonPositiveLength => "nonpositive_length",
            WildError::LengthTooShort => "length_too_short",
            WildError::NonPositiveEpsilon => "nonpositive_epsilon",
            WildError::EpsilonAboveThreshold => "epsilon_above_threshold",
            WildError::EpsilonAboveRoom => "epsilon_above_room",
            WildError::BadDegree(_) => "bad_degree",
            WildError::BadClass { .. } => "bad_class",
        }
    }
}

fn prime<S: Scalar>(p: u64) -> Result<S, WildError> {
    if !is_prime(p) {
        return Err(WildError::NotPrime(p));
    }
    Ok(S::from_int(p as i64))
}

fn power(p: u64, h: u32) -> Result<u64, WildError> {
    p.checked_pow(h).ok_or(WildError::Overflow { p, h })
}

/// `log_p |ξ - ξ'|` for distinct `p`-th roots of unity: `-1/(p-1)`.
pub fn roots_of_unity_gap<S: Scalar>(p: u64) -> Result<S, WildError> {
    prime::<S>(p)?;
    Ok(S::from_ratio(-1, p as i64 - 1))
}

/// `p/(p-1)`.
fn wild_threshold<S: Scalar>(p: u64) -> S {
    S::from_ratio(p as i64, p as i64 - 1)
}

/// Image of `η_{z₁, ρ}` under `z ↦ z^p`, as `(log|z₁^p|, log ρ')`.
pub fn pushforward_step<S: Scalar>(t: &S, s: &S, p: u64) -> Result<(S, S), WildError> {
    let pp = prime::<S>(p)?;
    if s >= t {
        return Err(WildError::RadiusNotBelowCenter);
    }
    let one = S::from_int(1);
    let s_new = if *s <= t.clone() + roots_of_unity_gap::<S>(p)? {
        s.clone() - one.clone() + (pp.clone() - one) * t.clone()
    } else {
        pp.clone() * s.clone()
    };
    Ok((pp * t.clone(), s_new))
}

/// Number of points above `η_{z₀, r}` in the `μ_{p^h}`-torsor, read off
/// the threshold table.
pub fn fiber_count<S: Scalar>(t: &S, s: &S, p: u64, h: u32) -> Result<u64, WildError> {
    prime::<S>(p)?;
    if s >= t {
        return Err(WildError::RadiusNotBelowCenter);
    }
    let threshold = wild_threshold::<S>(p);
    for i in 0..h {
        let lower = t.clone() - S::from_int(i as i64) - threshold.clone();
        if *s >= lower {
            return power(p, i);
        }
    }
    power(p, h)
}

/// [`fiber_count`] computed by peeling one `p`-th root at a time: the `p`
/// preimages of a disc point are centered at conjugates `z̃ξ` with pairwise
/// log-distance `T/p - 1/(p-1)`, and are distinct exactly when their common
/// log-radius is below that distance.
pub fn fiber_count_oracle<S: Scalar>(t: &S, s: &S, p: u64, h: u32) -> Result<u64, WildError> {
    let pp = prime::<S>(p)?;
    if s >= t {
        return Err(WildError::RadiusNotBelowCenter);
    }
    let gap_unit = roots_of_unity_gap::<S>(p)?;
    let one = S::from_int(1);
    let (mut t, mut s) = (t.clone(), s.clone());
    let mut count: u64 = 1;
    for _ in 0..h {
        let t_pre = t.clone() / pp.clone();
        let s_pre = if s <= t.clone() - wild_threshold::<S>(p) {
            s.clone() + one.clone() - (pp.clone() - one.clone()) * t.clone() / pp.clone()
        } else {
            s.clone() / pp.clone()
        };
        let gap = t_pre.clone() + gap_unit.clone();
        if s_pre < gap {
            count = count.checked_mul(p).ok_or(WildError::Overflow { p, h })?;
        }
        (t, s) = (t_pre, s_pre);
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct LayoutSegment<S> {
    /// Distance from the `y`-end where the segment starts (excluded).
    #[serde(with = "crate::scalar::ratio_string")]
    pub start: S,
    /// Where the segment ends; included unless it is the far end.
    #[serde(with = "crate::scalar::ratio_string")]
    pub end: S,
    pub end_included: bool,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct TorsorLayout<S> {
    #[serde(with = "crate::scalar::ratio_string")]
    pub length: S,
    #[serde(with = "crate::scalar::ratio_string")]
    pub epsilon: S,
    pub p: u64,
    pub h: u32,
    pub breakpoints: Vec<String>,
    pub counts: Vec<u64>,
    pub segments: Vec<LayoutSegment<S>>,
}

impl<S: Scalar> TorsorLayout<S> {
    /// Fiber count at distance `delta ∈ (0, L)` from the `y`-end.
    pub fn count_at(&self, delta: &S) -> Result<u64, WildError> {
        layout_count(&self.epsilon, delta, self.p, self.h)
    }
}

fn layout_count<S: Scalar>(epsilon: &S, delta: &S, p: u64, h: u32) -> Result<u64, WildError> {
    let s = epsilon.clone() - wild_threshold::<S>(p) - delta.clone();
    fiber_count(&S::from_int(0), &s, p, h)
}

/// Splitting profile of the `μ_{p^h}`-cover along an annulus of length `L`
/// whose `y`-end sits at distance `ε` from the fully non-split region.
pub fn split_annulus_layout<S: Scalar>(length: &S, epsilon: &S, p: u64, h: u32) -> Result<TorsorLayout<S>, WildError> {
    prime::<S>(p)?;
    let h_minus_1 = S::from_int(h as i64 - 1);
    if !length.is_positive() {
        return Err(WildError::NonPositiveLength);
    }
    if *length <= h_minus_1 {
        return Err(WildError::LengthTooShort);
    }
    if !epsilon.is_positive() {
        return Err(WildError::NonPositiveEpsilon);
    }
    if *epsilon >= wild_threshold::<S>(p) {
        return Err(WildError::EpsilonAboveThreshold);
    }
    if *epsilon >= length.clone() - h_minus_1 {
        return Err(WildError::EpsilonAboveRoom);
    }
    let mut ends: Vec<S> = (0..h).map(|j| epsilon.clone() + S::from_int(j as i64)).collect();
    ends.push(length.clone());
    let mut segments = Vec::new();
    let mut start = S::from_int(0);
    for (k, end) in ends.iter().enumerate() {
        let last = k + 1 == ends.len();
        let probe = if last { (start.clone() + end.clone()) / S::from_int(2) } else { end.clone() };
        let count = layout_count(epsilon, &probe, p, h)?;
        segments.push(LayoutSegment { start: start.clone(), end: end.clone(), end_included: !last, count });
        start = end.clone();
    }
    Ok(TorsorLayout {
        length: length.clone(),
        epsilon: epsilon.clone(),
        p,
        h,
        breakpoints: ends[..ends.len() - 1].iter().map(Scalar::to_ratio_string).collect(),
        counts: segments.iter().map(|s| s.count).collect(),
        segments,
    })
}

/// One text row per segment, from the `y`-end to the `x`-end; each band
/// shows one `#` per sheet, capped at 64.
pub fn layout_ascii<S: Scalar>(layout: &TorsorLayout<S>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mu_{{{}^{}}} cover over an annulus of length {}", layout.p, layout.h, layout.length.to_ratio_string());
    let _ = writeln!(out, "y-end");
    for seg in &layout.segments {
        let close = if seg.end_included { "]" } else { ")" };
        let interval = format!("({}, {}{}", seg.start.to_ratio_string(), seg.end.to_ratio_string(), close);
        let bar: String = "#".repeat(seg.count.min(64) as usize);
        let more = if seg.count > 64 { "..." } else { "" };
        let _ = writeln!(out, "  {interval:<16} {:>6}  {bar}{more}", seg.count);
    }
    let _ = writeln!(out, "x-end");
    out
}

/// The profile as a chain of bands in DOT.
pub fn layout_dot<S: Scalar>(layout: &TorsorLayout<S>) -> String {
    let mut out = String::from("graph layout {\n  rankdir=LR;\n  node [shape=box];\n");
    let _ = writeln!(out, "  y [shape=point, label=\"y\"];");
    let _ = writeln!(out, "  x [shape=point, label=\"x\"];");
    let mut prev = "y".to_string();
    for (k, seg) in layout.segments.iter().enumerate() {
        let close = if seg.end_included { "]" } else { ")" };
        let id = format!("band{k}");
        let _ = writeln!(
            out,
            "  {id} [label=\"({}, {}{}\\n{} sheets\", penwidth={}];",
            seg.start.to_ratio_string(),
            seg.end.to_ratio_string(),
            close,
            seg.count,
            1 + seg.count.ilog2()
        );
        let _ = writeln!(out, "  {prev} -- {id};");
        prev = id;
    }
    let _ = writeln!(out, "  {prev} -- x;\n}}");
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct KummerCoverSummary<S> {
    pub ell: u64,
    pub class: u64,
    pub components: u64,
    pub component_length: Length<S>,
    pub component_degree: u64,
}

/// The `μ_ℓ`-torsor of class `c` over an annulus of length `L`: `gcd(c, ℓ)`
/// annuli, each mapping with degree `ℓ / gcd(c, ℓ)`.
pub fn kummer_cover<S: Scalar>(length: &Length<S>, ell: u64, class: u64) -> Result<KummerCoverSummary<S>, WildError> {
    if ell < 2 {
        return Err(WildError::BadDegree(ell));
    }
    if class >= ell {
        return Err(WildError::BadClass { ell, class });
    }
    let components = class.gcd(&ell);
    let component_degree = ell / components;
    let component_length = length.scale(&S::from_ratio(1, component_degree as i64));
    Ok(KummerCoverSummary { ell, class, components, component_length, component_degree })
}
