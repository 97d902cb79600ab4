//! Type-1 and type-2 points of the Berkovich projective line.
//!
//! A disc point `η_{a,r}` is stored as a center together with `log_p r`.
//! Centers are only ever compared through their pairwise log-distance, so
//! the center set is abstracted behind [`CenterSpace`]: either an explicit
//! finite table ([`TableCenterSpace`]) or a structured model such as the
//! digit strings of [`crate::drinfeld::DigitCenterSpace`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

/// `log_p` of a norm, with a sentinel for the zero norm.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogValue<S> {
    MinusInf,
    Finite(S),
}

impl<S: Scalar> LogValue<S> {
    pub fn finite(value: S) -> Self {
        LogValue::Finite(value)
    }

    pub fn is_minus_inf(&self) -> bool {
        matches!(self, LogValue::MinusInf)
    }

    pub fn as_finite(&self) -> Option<&S> {
        match self {
            LogValue::MinusInf => None,
            LogValue::Finite(v) => Some(v),
        }
    }

    /// Max-plus join; `MinusInf` is the neutral element.
    pub fn join(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn to_token(&self) -> String {
        match self {
            LogValue::MinusInf => "-inf".to_string(),
            LogValue::Finite(v) => v.to_ratio_string(),
        }
    }

    pub fn parse_token(s: &str) -> Option<Self> {
        match s.trim() {
            "-inf" => Some(LogValue::MinusInf),
            other => S::parse_ratio(other).map(LogValue::Finite),
        }
    }
}

impl<S: Scalar> fmt::Display for LogValue<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_token())
    }
}

impl<S: Scalar> Serialize for LogValue<S> {
    fn serialize<Ser: serde::Serializer>(&self, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        ser.serialize_str(&self.to_token())
    }
}

impl<'de, S: Scalar> Deserialize<'de> for LogValue<S> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let token = crate::scalar::ratio_string::RatioToken::deserialize(de)?;
        LogValue::parse_token(&token.0)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid log value {:?}", token.0)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UltrametricError {
    #[error("unknown center {0:?}")]
    UnknownCenter(String),
    #[error("log-distance table must be {centers}x{centers}, found {rows} rows or a ragged row")]
    Shape { centers: usize, rows: usize },
    #[error("duplicate center id {0:?}")]
    DuplicateCenter(String),
    #[error("diagonal entry at {0:?} is not -inf")]
    NonzeroDiagonal(String),
    #[error("table is not symmetric at ({0:?}, {1:?})")]
    Asymmetric(String, String),
    #[error("ultrametric inequality fails for ({a:?}, {b:?}, {c:?})")]
    UltrametricViolation { a: String, b: String, c: String },
    #[error("metric is only defined on type-2 and type-3 points")]
    TypeOnePoint,
}

impl UltrametricError {
    pub fn code(&self) -> &'static str {
        match self {
            UltrametricError::UnknownCenter(_) => "unknown_center",
            UltrametricError::Shape { .. } => "table_shape",
            UltrametricError::DuplicateCenter(_) => "duplicate_center",
            UltrametricError::NonzeroDiagonal(_) => "nonzero_diagonal",
            UltrametricError::Asymmetric(..) => "asymmetric_table",
            UltrametricError::UltrametricViolation { .. } => "ultrametric_violation",
            UltrametricError::TypeOnePoint => "type_one_point",
        }
    }
}

/// A set of centers in the ground field, seen only through `log_p |a - b|`.
pub trait CenterSpace<S: Scalar> {
    type Center: Clone + Eq + fmt::Debug;

    fn log_dist(&self, a: &Self::Center, b: &Self::Center) -> Result<LogValue<S>, UltrametricError>;
}

/// A finite center set given by an explicit symmetric log-distance table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct TableCenterSpace<S> {
    pub centers: Vec<String>,
    pub logdist: Vec<Vec<LogValue<S>>>,
}

impl<S: Scalar> TableCenterSpace<S> {
    pub fn new(centers: Vec<String>, logdist: Vec<Vec<LogValue<S>>>) -> Self {
        Self { centers, logdist }
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.centers.iter().position(|c| c == id)
    }

    /// Checks shape, diagonal, symmetry and the ultrametric inequality, in
    /// that order, reporting the first failure in row-major order.
    pub fn validate(&self) -> Result<(), UltrametricError> {
        let n = self.centers.len();
        if self.logdist.len() != n || self.logdist.iter().any(|row| row.len() != n) {
            return Err(UltrametricError::Shape { centers: n, rows: self.logdist.len() });
        }
        let mut seen = std::collections::BTreeSet::new();
        for c in &self.centers {
            if !seen.insert(c.as_str()) {
                return Err(UltrametricError::DuplicateCenter(c.clone()));
            }
        }
        for i in 0..n {
            if !self.logdist[i][i].is_minus_inf() {
                return Err(UltrametricError::NonzeroDiagonal(self.centers[i].clone()));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.logdist[i][j] != self.logdist[j][i] {
                    return Err(UltrametricError::Asymmetric(
                        self.centers[i].clone(),
                        self.centers[j].clone(),
                    ));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let bound = self.logdist[a][b].join(&self.logdist[b][c]);
                    if self.logdist[a][c] > bound {
                        return Err(UltrametricError::UltrametricViolation {
                            a: self.centers[a].clone(),
                            b: self.centers[b].clone(),
                            c: self.centers[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> CenterSpace<S> for TableCenterSpace<S> {
    type Center = String;

    fn log_dist(&self, a: &String, b: &String) -> Result<LogValue<S>, UltrametricError> {
        let i = self.index_of(a).ok_or_else(|| UltrametricError::UnknownCenter(a.clone()))?;
        let j = self.index_of(b).ok_or_else(|| UltrametricError::UnknownCenter(b.clone()))?;
        Ok(self.logdist[i][j].clone())
    }
}

pub fn validate_center_space<S: Scalar>(space: &TableCenterSpace<S>) -> Result<(), UltrametricError> {
    space.validate()
}

/// The point `η_{a,r}`; `log_radius = MinusInf` is the rigid point `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Serialize, S: Scalar", deserialize = "C: Deserialize<'de>, S: Scalar"))]
pub struct DiscPoint<C, S> {
    pub center: C,
    pub log_radius: LogValue<S>,
}

impl<C, S: Scalar> DiscPoint<C, S> {
    pub fn new(center: C, log_radius: LogValue<S>) -> Self {
        Self { center, log_radius }
    }

    pub fn type_two(center: C, log_radius: S) -> Self {
        Self { center, log_radius: LogValue::Finite(log_radius) }
    }

    pub fn rigid(center: C) -> Self {
        Self { center, log_radius: LogValue::MinusInf }
    }

    pub fn is_rigid(&self) -> bool {
        self.log_radius.is_minus_inf()
    }
}

/// Two disc points coincide iff their radii agree and each center lies in
/// the other's disc.
pub fn point_eq<S, Sp>(
    space: &Sp,
    x: &DiscPoint<Sp::Center, S>,
    y: &DiscPoint<Sp::Center, S>,
) -> Result<bool, UltrametricError>
where
    S: Scalar,
    Sp: CenterSpace<S>,
{
    let m = space.log_dist(&x.center, &y.center)?;
    Ok(x.log_radius == y.log_radius && m <= x.log_radius)
}

/// Path metric on type-2 points, in `log_p` units.
pub fn metric_d<S, Sp>(
    space: &Sp,
    x: &DiscPoint<Sp::Center, S>,
    y: &DiscPoint<Sp::Center, S>,
) -> Result<S, UltrametricError>
where
    S: Scalar,
    Sp: CenterSpace<S>,
{
    let (s, t) = match (&x.log_radius, &y.log_radius) {
        (LogValue::Finite(s), LogValue::Finite(t)) => (s.clone(), t.clone()),
        _ => return Err(UltrametricError::TypeOnePoint),
    };
    let m = space.log_dist(&x.center, &y.center)?;
    let larger = if s >= t { s.clone() } else { t.clone() };
    match m {
        LogValue::Finite(m) if m.cmp(&larger) != Ordering::Less => {
            Ok((m.clone() - s) + (m - t))
        }
        _ => Ok((s - t).abs()),
    }
}

/// Convenience: build a table space from `(id, id) -> log-distance` pairs.
/// Missing off-diagonal pairs are an error at validation time, not here.
pub fn table_from_pairs<S: Scalar>(
    centers: &[&str],
    pairs: &BTreeMap<(String, String), LogValue<S>>,
) -> TableCenterSpace<S> {
    let ids: Vec<String> = centers.iter().map(|c| c.to_string()).collect();
    let logdist = ids
        .iter()
        .map(|a| {
            ids.iter()
                .map(|b| {
                    if a == b {
                        return LogValue::MinusInf;
                    }
                    pairs
                        .get(&(a.clone(), b.clone()))
                        .or_else(|| pairs.get(&(b.clone(), a.clone())))
                        .cloned()
                        .unwrap_or(LogValue::MinusInf)
                })
                .collect()
        })
        .collect();
    TableCenterSpace::new(ids, logdist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn lv(n: i64) -> LogValue<Q> {
        LogValue::Finite(Q::from_int(n))
    }

    fn space(ids: &[&str], pairs: &[(&str, &str, LogValue<Q>)]) -> TableCenterSpace<Q> {
        let map = pairs
            .iter()
            .map(|(a, b, v)| ((a.to_string(), b.to_string()), v.clone()))
            .collect();
        table_from_pairs(ids, &map)
    }

    #[test]
    fn single_center_is_valid() {
        let s = space(&["a"], &[]);
        assert_eq!(s.validate(), Ok(()));
    }

    #[test]
    fn ultrametric_violation_reports_triple() {
        let s = space(&["a", "b", "c"], &[("a", "b", lv(0)), ("b", "c", lv(0)), ("a", "c", lv(1))]);
        assert_eq!(
            s.validate(),
            Err(UltrametricError::UltrametricViolation {
                a: "a".into(),
                b: "b".into(),
                c: "c".into()
            })
        );
    }

    #[test]
    fn digit_centers_are_ultrametric() {
        // a = 0, b = p, c = p + p^2 : first differing digits at 1, 1, 2
        let s = space(&["a", "b", "c"], &[("a", "b", lv(-1)), ("a", "c", lv(-1)), ("b", "c", lv(-2))]);
        assert_eq!(s.validate(), Ok(()));
    }

    #[test]
    fn diagonal_and_symmetry_errors_are_distinct() {
        let mut s = space(&["a", "b"], &[("a", "b", lv(0))]);
        s.logdist[0][0] = lv(0);
        assert_eq!(s.validate(), Err(UltrametricError::NonzeroDiagonal("a".into())));
        let mut s = space(&["a", "b"], &[("a", "b", lv(0))]);
        s.logdist[0][1] = lv(2);
        assert!(matches!(s.validate(), Err(UltrametricError::Asymmetric(..))));
        let mut s = space(&["a", "b"], &[("a", "b", lv(0))]);
        s.logdist.pop();
        assert!(matches!(s.validate(), Err(UltrametricError::Shape { .. })));
    }

    #[test]
    fn point_equality() {
        let s = space(&["a", "b"], &[("a", "b", lv(-2))]);
        let x = DiscPoint::type_two("a".to_string(), Q::from_int(-1));
        let y = DiscPoint::type_two("b".to_string(), Q::from_int(-1));
        let z = DiscPoint::type_two("a".to_string(), Q::from_int(-2));
        assert!(point_eq(&s, &x, &x).unwrap());
        assert!(point_eq(&s, &x, &y).unwrap());
        assert!(!point_eq(&s, &x, &z).unwrap());
        let stranger = DiscPoint::type_two("zz".to_string(), Q::from_int(-1));
        assert_eq!(point_eq(&s, &x, &stranger), Err(UltrametricError::UnknownCenter("zz".into())));
    }

    #[test]
    fn metric_branches() {
        let s = space(&["a", "b"], &[("a", "b", lv(0))]);
        let a1 = DiscPoint::type_two("a".to_string(), Q::from_int(-1));
        let a3 = DiscPoint::type_two("a".to_string(), Q::from_int(-3));
        let b2 = DiscPoint::type_two("b".to_string(), Q::from_int(-2));
        assert_eq!(metric_d(&s, &a1, &a3).unwrap(), Q::from_int(2));
        assert_eq!(metric_d(&s, &a1, &b2).unwrap(), Q::from_int(3));
        assert_eq!(metric_d(&s, &a1, &a1).unwrap(), Q::from_int(0));
    }

    #[test]
    fn metric_branches_agree_on_boundary() {
        // m equal to the larger log-radius: both formulas give |s - s'|
        let s = space(&["a", "b"], &[("a", "b", lv(-1))]);
        let x = DiscPoint::type_two("a".to_string(), Q::from_int(-1));
        let y = DiscPoint::type_two("b".to_string(), Q::from_int(-4));
        let first_branch = (Q::from_int(-1) - Q::from_int(-1)) + (Q::from_int(-1) - Q::from_int(-4));
        assert_eq!(metric_d(&s, &x, &y).unwrap(), first_branch);
        assert_eq!(first_branch, Q::from_int(3));
    }

    #[test]
    fn rigid_points_have_no_metric() {
        let s = space(&["a"], &[]);
        let x = DiscPoint::<String, Q>::rigid("a".to_string());
        let y = DiscPoint::type_two("a".to_string(), Q::from_int(0));
        assert_eq!(metric_d(&s, &x, &y), Err(UltrametricError::TypeOnePoint));
    }

    #[test]
    fn join_absorbs_minus_inf() {
        assert_eq!(LogValue::MinusInf.join(&lv(3)), lv(3));
        assert_eq!(lv(-3).join(&LogValue::MinusInf), lv(-3));
    }

    #[test]
    fn json_shape() {
        let s = space(&["a", "b"], &[("a", "b", LogValue::Finite(Q::from_ratio(-1, 2)))]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"centers":["a","b"],"logdist":[["-inf","-1/2"],["-1/2","-inf"]]}"#);
        let back: TableCenterSpace<Q> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let p: DiscPoint<String, Q> = serde_json::from_str(r#"{"center":"a","log_radius":"-2/4"}"#).unwrap();
        assert_eq!(p.log_radius, LogValue::Finite(Q::from_ratio(-1, 2)));
    }
}
