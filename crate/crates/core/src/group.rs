//! Finite groups given by their multiplication table.

use serde::{Deserialize, Serialize};

pub type GroupElem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub order: usize,
    pub identity: GroupElem,
    /// mult[a][b] = a*b
    pub mult: Vec<Vec<GroupElem>>,
    /// Filled on validation; inv[a] is the two-sided inverse of a.
    #[serde(skip)]
    pub inv: Vec<GroupElem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupViolation {
    Shape(String),
    Identity { side: &'static str, a: GroupElem },
    Associativity { a: GroupElem, b: GroupElem, c: GroupElem },
    Inverse { a: GroupElem },
}

impl std::fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupViolation::Shape(s) => write!(f, "malformed table: {s}"),
            GroupViolation::Identity { side, a } => write!(f, "identity fails on the {side} at {a}"),
            GroupViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails at ({a},{b},{c})")
            }
            GroupViolation::Inverse { a } => write!(f, "no two-sided inverse for {a}"),
        }
    }
}

impl FiniteGroup {
    pub fn trivial() -> Self {
        let mut g = FiniteGroup { order: 1, identity: 0, mult: vec![vec![0]], inv: vec![] };
        g.fill_inverses().unwrap();
        g
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut g = FiniteGroup { order: n, identity: 0, mult, inv: vec![] };
        g.fill_inverses().unwrap();
        g
    }

    /// Builds the group generated by permutations of {0..k-1} via composition.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Self {
        fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
            // (a ∘ b)(x) = a(b(x))
            b.iter().map(|&x| a[x]).collect()
        }
        let k = perms[0].len();
        let id: Vec<usize> = (0..k).collect();
        let mut elems = vec![id];
        loop {
            let mut added = false;
            let snapshot = elems.clone();
            for e in &snapshot {
                for p in perms {
                    let c = compose(e, p);
                    if !elems.contains(&c) {
                        elems.push(c);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        elems.sort();
        let identity = elems.iter().position(|e| e == &(0..k).collect::<Vec<_>>()).unwrap();
        let mult = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let c = compose(a, b);
                        elems.iter().position(|e| e == &c).unwrap()
                    })
                    .collect()
            })
            .collect();
        let mut g = FiniteGroup { order: elems.len(), identity, mult, inv: vec![] };
        g.fill_inverses().unwrap();
        g
    }

    /// Symmetric group S3 as permutations of three letters.
    pub fn s3() -> Self {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]])
    }

    pub fn mul(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: GroupElem) -> GroupElem {
        self.inv[a]
    }

    pub fn is_identity(&self, a: GroupElem) -> bool {
        a == self.identity
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> {
        0..self.order
    }

    pub fn conjugate(&self, h: GroupElem, g: GroupElem) -> GroupElem {
        // h^{-1} g h
        self.mul(self.mul(self.inverse(h), g), h)
    }

    /// Product of a word of (element, sign) pairs, left to right.
    pub fn word(&self, w: &[(GroupElem, bool)]) -> GroupElem {
        let mut acc = self.identity;
        for &(g, positive) in w {
            let x = if positive { g } else { self.inverse(g) };
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn fill_inverses(&mut self) -> Result<(), GroupViolation> {
        let mut inv = vec![usize::MAX; self.order];
        for a in 0..self.order {
            for b in 0..self.order {
                if self.mult[a][b] == self.identity && self.mult[b][a] == self.identity {
                    inv[a] = b;
                }
            }
            if inv[a] == usize::MAX {
                return Err(GroupViolation::Inverse { a });
            }
        }
        self.inv = inv;
        Ok(())
    }

    /// Exhaustively checks the group axioms, reporting every violation.
    pub fn validate(&self) -> Vec<GroupViolation> {
        let n = self.order;
        let mut out = Vec::new();
        if n == 0 {
            out.push(GroupViolation::Shape("order must be positive".into()));
            return out;
        }
        if self.identity >= n {
            out.push(GroupViolation::Shape("identity index out of range".into()));
            return out;
        }
        if self.mult.len() != n || self.mult.iter().any(|r| r.len() != n) {
            out.push(GroupViolation::Shape("mult table is not order x order".into()));
            return out;
        }
        for row in &self.mult {
            for &x in row {
                if x >= n {
                    out.push(GroupViolation::Shape(format!("table entry {x} out of range")));
                    return out;
                }
            }
        }
        let e = self.identity;
        for a in 0..n {
            if self.mult[e][a] != a {
                out.push(GroupViolation::Identity { side: "left", a });
            }
            if self.mult[a][e] != a {
                out.push(GroupViolation::Identity { side: "right", a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]] {
                        out.push(GroupViolation::Associativity { a, b, c });
                    }
                }
            }
        }
        let mut probe = self.clone();
        if let Err(v) = probe.fill_inverses() {
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_table_validates() {
        let g = FiniteGroup::cyclic(2);
        assert!(g.validate().is_empty());
        assert_eq!(g.inverse(1), 1);
    }

    #[test]
    fn broken_identity_is_reported() {
        let mut g = FiniteGroup::cyclic(2);
        g.mult[0][0] = 1;
        let report = g.validate();
        assert!(report.iter().any(|v| matches!(v, GroupViolation::Identity { .. })));
    }

    #[test]
    fn s3_from_permutation_oracle() {
        let g = FiniteGroup::s3();
        assert_eq!(g.order, 6);
        assert!(g.validate().is_empty());
        // S3 is nonabelian.
        let noncomm = (0..6).any(|a| (0..6).any(|b| g.mul(a, b) != g.mul(b, a)));
        assert!(noncomm);
    }

    #[test]
    fn every_single_mutation_of_z3_is_detected() {
        let base = FiniteGroup::cyclic(3);
        for i in 0..3 {
            for j in 0..3 {
                for v in 0..3 {
                    if base.mult[i][j] == v {
                        continue;
                    }
                    let mut g = base.clone();
                    g.mult[i][j] = v;
                    assert!(!g.validate().is_empty(), "mutation at ({i},{j})->{v} undetected");
                }
            }
        }
    }

    #[test]
    fn group_file_round_trip() {
        let g = FiniteGroup::s3();
        let s = serde_json::to_string(&g).unwrap();
        let mut h: FiniteGroup = serde_json::from_str(&s).unwrap();
        assert!(h.validate().is_empty());
        h.fill_inverses().unwrap();
        assert_eq!(g.mult, h.mult);
    }
}
