//! Finite groups given by multiplication tables.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group has no elements")]
    Empty,
    #[error("duplicate element id {0:?}")]
    DuplicateElement(String),
    #[error("multiplication table must be {0}x{0}")]
    Shape(usize),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("associativity fails at ({0:?}, {1:?}, {2:?})")]
    NotAssociative(String, String, String),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0:?} has no inverse")]
    NoInverse(String),
    #[error("invalid group parameter: {0}")]
    Parameter(String),
}

impl GroupError {
    pub fn code(&self) -> &'static str {
        match self {
            GroupError::Empty => "empty_group",
            GroupError::DuplicateElement(_) => "duplicate_element",
            GroupError::Shape(_) => "table_shape",
            GroupError::UnknownElement(_) => "unknown_element",
            GroupError::NotAssociative(..) => "not_associative",
            GroupError::NoIdentity => "no_identity",
            GroupError::NoInverse(_) => "no_inverse",
            GroupError::Parameter(_) => "group_parameter",
        }
    }
}

/// A finite group on elements `0..n`, with display ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

/// Table form, as in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    #[serde(deserialize_with = "crate::ids::id_list")]
    pub elements: Vec<String>,
    pub table: Vec<Vec<serde_json::Value>>,
}

/// A group as written in JSON: a named family or an explicit table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Dihedral(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(GroupTable),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Trivial => Ok(FiniteGroup::trivial()),
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
            GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n),
            GroupSpec::Product(a, b) => Ok(FiniteGroup::product(&a.build()?, &b.build()?)),
            GroupSpec::Table(t) => {
                let index: BTreeMap<&str, usize> =
                    t.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
                let mut table = Vec::with_capacity(t.table.len());
                for row in &t.table {
                    let mut out = Vec::with_capacity(row.len());
                    for cell in row {
                        let id = match cell {
                            serde_json::Value::String(s) => s.clone(),
                            other => other.to_string(),
                        };
                        out.push(*index.get(id.as_str()).ok_or(GroupError::UnknownElement(id))?);
                    }
                    table.push(out);
                }
                FiniteGroup::from_table(t.elements.clone(), table)
            }
        }
    }
}

impl FiniteGroup {
    /// Validates associativity, identity and inverses.
    pub fn from_table(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = elements.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut seen = BTreeSet::new();
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(GroupError::DuplicateElement(e.clone()));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::Shape(n));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| GroupError::NoInverse(elements[x].clone()))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(
                            elements[a].clone(),
                            elements[b].clone(),
                            elements[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(FiniteGroup { elements, table, identity, inverses })
    }

    pub fn trivial() -> Self {
        FiniteGroup { elements: vec!["1".into()], table: vec![vec![0]], identity: 0, inverses: vec![0] }
    }

    /// `Z/n` on `"0".."n-1"`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Parameter("cyclic order must be positive".into()));
        }
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(elements, table)
    }

    /// Symmetries of the `n`-gon, order `2n`: `r{i}` rotations, `s{i} = s r^i`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Parameter("dihedral parameter must be positive".into()));
        }
        // element k < n is r^k, element n + k is s r^k
        let elements = (0..n).map(|k| format!("r{k}")).chain((0..n).map(|k| format!("s{k}"))).collect();
        let mul = |a: usize, b: usize| -> usize {
            let (sa, ka) = (a >= n, a % n);
            let (sb, kb) = (b >= n, b % n);
            // r^ka s^sb = s^sb r^(±ka)
            let k = if sb { (n - ka + kb) % n } else { (ka + kb) % n };
            if sa ^ sb {
                n + k
            } else {
                k
            }
        };
        let table = (0..2 * n).map(|a| (0..2 * n).map(|b| mul(a, b)).collect()).collect();
        FiniteGroup::from_table(elements, table)
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let elements = (0..na * nb)
            .map(|i| format!("({},{})", a.elements[i / nb], b.elements[i % nb]))
            .collect();
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(elements, table).expect("direct product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_id(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == id)
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut out = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if out.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        out
    }

    pub fn is_subgroup(&self, set: &BTreeSet<usize>) -> bool {
        set.contains(&self.identity) && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    /// Canonical representatives of the left cosets `c H`: the identity for
    /// `H` itself, the smallest index otherwise.
    pub fn left_coset_reps(&self, h: &BTreeSet<usize>) -> Vec<usize> {
        let mut covered = BTreeSet::new();
        let mut reps = vec![self.identity];
        covered.extend(h.iter().copied());
        for c in 0..self.order() {
            if covered.contains(&c) {
                continue;
            }
            reps.push(c);
            covered.extend(h.iter().map(|&x| self.mul(c, x)));
        }
        reps
    }

    /// The subgroup on `set` as a group in its own right, keeping ids.
    pub fn subgroup(&self, set: &BTreeSet<usize>) -> FiniteGroup {
        assert!(self.is_subgroup(set), "subset is not a subgroup");
        let members: Vec<usize> = set.iter().copied().collect();
        let local: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let elements = members.iter().map(|&x| self.elements[x].clone()).collect();
        let table = members.iter().map(|&a| members.iter().map(|&b| local[&self.mul(a, b)]).collect()).collect();
        FiniteGroup::from_table(elements, table).expect("subgroup of a group is a group")
    }

    pub fn to_table(&self) -> GroupTable {
        GroupTable {
            elements: self.elements.clone(),
            table: self
                .table
                .iter()
                .map(|r| r.iter().map(|&x| serde_json::Value::String(self.elements[x].clone())).collect())
                .collect(),
        }
    }

    /// Whether `map` (indexed by elements of `self`) is an injective
    /// homomorphism into `target`.
    pub fn is_injective_hom(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        if map.len() != self.order() || map.iter().any(|&x| x >= target.order()) {
            return false;
        }
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        if distinct.len() != map.len() {
            return false;
        }
        (0..self.order()).all(|a| (0..self.order()).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

impl Serialize for FiniteGroup {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        GroupSpec::Table(self.to_table()).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        GroupSpec::deserialize(de)?.build().map_err(serde::de::Error::custom)
    }
}
