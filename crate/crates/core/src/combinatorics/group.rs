use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its Cayley table; `cayley[g][h]` is the index of
/// `gh`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupWire", into = "GroupWire")]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GroupWire {
    order: usize,
    cayley: Vec<Vec<usize>>,
}

impl TryFrom<GroupWire> for FiniteGroup {
    type Error = Error;
    fn try_from(w: GroupWire) -> Result<Self> {
        if w.cayley.len() != w.order {
            return Err(Error::InvalidGroup(format!(
                "order {} but table has {} rows",
                w.order,
                w.cayley.len()
            )));
        }
        group_from_cayley(w.cayley)
    }
}

impl From<FiniteGroup> for GroupWire {
    fn from(g: FiniteGroup) -> Self {
        GroupWire {
            order: g.order,
            cayley: g.cayley,
        }
    }
}

const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.cayley[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..g).all(|h| self.cayley[g][h] == self.cayley[h][g]))
    }

    /// The centre `{z : zg = gz for all g}`.
    pub fn centre(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.cayley[z][g] == self.cayley[g][z]))
            .collect()
    }
}

/// Validates a Cayley table and derives identity and inverses.
pub fn group_from_cayley(cayley: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    let n = cayley.len();
    if n == 0 {
        return Err(Error::InvalidGroup("empty table".into()));
    }
    if let Some(r) = cayley.iter().position(|row| row.len() != n) {
        return Err(Error::InvalidGroup(format!("closure: row {r} has wrong length")));
    }
    if let Some((g, h)) = (0..n).flat_map(|g| (0..n).map(move |h| (g, h))).find(|&(g, h)| cayley[g][h] >= n) {
        return Err(Error::InvalidGroup(format!("closure: entry [{g}][{h}] out of range")));
    }
    for i in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for j in 0..n {
            row_seen[cayley[i][j]] = true;
            col_seen[cayley[j][i]] = true;
        }
        if row_seen.contains(&false) {
            return Err(Error::InvalidGroup(format!("cancellation: row {i} is not a permutation")));
        }
        if col_seen.contains(&false) {
            return Err(Error::InvalidGroup(format!("cancellation: column {i} is not a permutation")));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| cayley[e][g] == g && cayley[g][e] == g))
        .ok_or_else(|| Error::InvalidGroup("identity: no two-sided identity".into()))?;
    if n <= ASSOCIATIVITY_CHECK_LIMIT {
        for a in 0..n {
            for b in 0..n {
                let ab = cayley[a][b];
                for c in 0..n {
                    if cayley[ab][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity: fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
    }
    // Row permutation plus identity gives a unique right inverse; associativity makes it two-sided.
    let mut inverse = vec![0; n];
    for g in 0..n {
        let h = (0..n).find(|&h| cayley[g][h] == identity).expect("row is a permutation");
        if cayley[h][g] != identity {
            return Err(Error::InvalidGroup(format!("inverse: element {g} has no two-sided inverse")));
        }
        inverse[g] = h;
    }
    Ok(FiniteGroup {
        order: n,
        cayley,
        identity,
        inverse,
    })
}

/// `ℤ_d` under addition mod `d`.
pub fn group_cyclic(d: usize) -> Result<FiniteGroup> {
    if d == 0 {
        return Err(Error::InvalidGroup("order must be positive".into()));
    }
    group_from_cayley((0..d).map(|a| (0..d).map(|b| (a + b) % d).collect()).collect())
}

/// Permutations of `{a, b, c}` with labels 0=e, 1=(ab), 2=(abc), 3=(ac),
/// 4=(acb), 5=(bc); the product `gh` applies `h` first.
pub fn group_s3() -> FiniteGroup {
    // Images of (a, b, c) = (0, 1, 2) under each labelled permutation.
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2], // e
        [1, 0, 2], // (ab)
        [1, 2, 0], // (abc)
        [2, 1, 0], // (ac)
        [2, 0, 1], // (acb)
        [0, 2, 1], // (bc)
    ];
    let label = |p: [usize; 3]| PERMS.iter().position(|q| *q == p).expect("S3 is closed");
    let table = (0..6)
        .map(|g| {
            (0..6)
                .map(|h| label([0, 1, 2].map(|x| PERMS[g][PERMS[h][x]])))
                .collect()
        })
        .collect();
    group_from_cayley(table).expect("S3 table is valid")
}

/// Direct product; `(a, b)` has index `a * |G2| + b`.
pub fn group_product(g1: &FiniteGroup, g2: &FiniteGroup) -> FiniteGroup {
    let (n1, n2) = (g1.order, g2.order);
    let table = (0..n1 * n2)
        .map(|x| {
            (0..n1 * n2)
                .map(|y| g1.mul(x / n2, y / n2) * n2 + g2.mul(x % n2, y % n2))
                .collect()
        })
        .collect();
    group_from_cayley(table).expect("product of groups is a group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_addition() {
        let g = group_cyclic(3).unwrap();
        assert_eq!(g.mul(1, 2), 0);
        assert_eq!(g.inv(1), 2);
        assert!(g.is_abelian());
    }

    #[test]
    fn s3_labelling() {
        let g = group_s3();
        assert_eq!(g.identity(), 0);
        // (ab)(bc) = (abc), (ab)(ac) = (acb)
        assert_eq!(g.mul(1, 5), 2);
        assert_eq!(g.mul(1, 3), 4);
        assert_eq!(g.inv(2), 4);
        assert!(!g.is_abelian());
        assert_eq!(g.centre(), vec![0]);
    }

    #[test]
    fn product_of_cyclic() {
        let g = group_product(&group_cyclic(2).unwrap(), &group_cyclic(2).unwrap());
        assert_eq!(g.order(), 4);
        assert!((0..4).all(|x| g.mul(x, x) == 0));
    }

    #[test]
    fn rejects_broken_tables() {
        let err = group_from_cayley(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(err.to_string().contains("cancellation"));
        // A latin square without identity.
        let err = group_from_cayley(vec![vec![1, 0, 2], vec![0, 2, 1], vec![2, 1, 0]]).unwrap_err();
        assert!(err.to_string().contains("identity"));
        // Loop of order 5 with identity 0 that is not associative.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = group_from_cayley(loop5).unwrap_err();
        assert!(err.to_string().contains("associativity"));
    }

    #[test]
    fn json_round_trip() {
        let g = group_s3();
        let json = serde_json::to_string(&g).unwrap();
        assert!(json.starts_with(r#"{"order":6,"cayley":"#));
        let back: FiniteGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<FiniteGroup>(r#"{"order":2,"cayley":[[0,1],[1,1]]}"#).is_err());
    }
}
