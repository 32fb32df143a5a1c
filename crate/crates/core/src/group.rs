//! Finite groups as multiplication tables, with the handful of concrete
//! groups shipped for the Fourier layer: Z_N, Z_N x Z_N, D_4, Q_8.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroup {
    names: Vec<String>,
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Builds a group from element names and a multiplication table
    /// (`mult[a][b]` = a*b), verifying the group axioms by enumeration.
    pub fn from_table(names: Vec<String>, mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::GroupAxiom("multiplication table is not n x n".into()));
        }
        for row in &mult {
            if row.iter().any(|&x| x >= n) {
                return Err(Error::GroupAxiom("table entry out of range".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e][a] == a && mult[a][e] == a))
            .ok_or_else(|| Error::GroupAxiom("no identity element".into()))?;
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| mult[a][b] == identity && mult[b][a] == identity)
                .ok_or_else(|| Error::GroupAxiom(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::GroupAxiom(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            names,
            mult,
            inv,
            identity,
        })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Left translation action of the group on itself, as an action table.
    pub fn translation_action(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| (0..n).map(|x| self.mul(a, x)).collect()).collect()
    }
}

/// Cyclic group Z_n.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let names = (0..n).map(|k| k.to_string()).collect();
    let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(names, mult).expect("cyclic group is valid")
}

/// Direct product Z_n x Z_n; element (a1, a2) has index a1*n + a2.
pub fn cyclic_squared(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let names = (0..n * n)
        .map(|k| format!("({},{})", k / n, k % n))
        .collect();
    let mult = (0..n * n)
        .map(|a| {
            (0..n * n)
                .map(|b| {
                    let (a1, a2) = (a / n, a % n);
                    let (b1, b2) = (b / n, b % n);
                    ((a1 + b1) % n) * n + (a2 + b2) % n
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(names, mult).expect("product group is valid")
}

/// Dihedral group D_4 of order 8, elements r^j s^k with s r s = r^{-1}.
/// Index = j + 4k for j in 0..4, k in 0..2.
pub fn dihedral4() -> FiniteGroup {
    let idx = |j: usize, k: usize| j + 4 * k;
    let names: Vec<String> = (0..8)
        .map(|i| {
            let (j, k) = (i % 4, i / 4);
            match (j, k) {
                (0, 0) => "e".to_string(),
                (j, 0) => format!("r{j}"),
                (0, 1) => "s".to_string(),
                (j, 1) => format!("r{j}s"),
                _ => unreachable!(),
            }
        })
        .collect();
    // (r^j1 s^k1)(r^j2 s^k2) = r^{j1 + j2*(-1)^{k1}} s^{k1+k2}
    let mult = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (j1, k1) = (a % 4, a / 4);
                    let (j2, k2) = (b % 4, b / 4);
                    let j = if k1 == 0 { (j1 + j2) % 4 } else { (j1 + 4 - j2 % 4) % 4 };
                    idx(j, (k1 + k2) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(names, mult).expect("D4 is valid")
}

/// Quaternion group Q_8 = {1, -1, i, -i, j, -j, k, -k}, indexed in that order.
pub fn quaternion8() -> FiniteGroup {
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    // represent x as (sign, axis) with axis in {1, i, j, k}
    let unpack = |x: usize| (x % 2, x / 2); // (sign bit, axis index 0..4)
    let pack = |s: usize, a: usize| a * 2 + s;
    // axis multiplication: (axis, axis) -> (sign, axis); 0=1, 1=i, 2=j, 3=k
    let axis_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) => (0, x),
            (x, 0) => (0, x),
            (1, 1) => (1, 0),
            (2, 2) => (1, 0),
            (3, 3) => (1, 0),
            (1, 2) => (0, 3),
            (2, 1) => (1, 3),
            (2, 3) => (0, 1),
            (3, 2) => (1, 1),
            (3, 1) => (0, 2),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let mult = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (sx, ax) = unpack(x);
                    let (sy, ay) = unpack(y);
                    let (sp, ap) = axis_mul(ax, ay);
                    pack((sx + sy + sp) % 2, ap)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(names, mult).expect("Q8 is valid")
}
