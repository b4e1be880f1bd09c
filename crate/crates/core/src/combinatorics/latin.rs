use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::group::FiniteGroup;
use crate::error::{Error, Result};

/// A `d × d` latin square `λ`; `table[a][b] = λ(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LatinWire", into = "LatinWire")]
pub struct LatinSquare {
    size: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct LatinWire {
    size: usize,
    table: Vec<Vec<usize>>,
}

impl TryFrom<LatinWire> for LatinSquare {
    type Error = Error;
    fn try_from(w: LatinWire) -> Result<Self> {
        if w.table.len() != w.size {
            return Err(Error::InvalidLatinSquare(format!(
                "size {} but table has {} rows",
                w.size,
                w.table.len()
            )));
        }
        LatinSquare::new(w.table)
    }
}

impl From<LatinSquare> for LatinWire {
    fn from(l: LatinSquare) -> Self {
        LatinWire {
            size: l.size,
            table: l.table,
        }
    }
}

impl LatinSquare {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let d = table.len();
        if d == 0 {
            return Err(Error::InvalidLatinSquare("empty table".into()));
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidLatinSquare(format!("row {r} has length {}", row.len())));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= d) {
                return Err(Error::InvalidLatinSquare(format!("symbol {v} out of range in row {r}")));
            }
        }
        for i in 0..d {
            let mut row_seen = vec![false; d];
            let mut col_seen = vec![false; d];
            for j in 0..d {
                if std::mem::replace(&mut row_seen[table[i][j]], true) {
                    return Err(Error::InvalidLatinSquare(format!("row {i} repeats symbol {}", table[i][j])));
                }
                if std::mem::replace(&mut col_seen[table[j][i]], true) {
                    return Err(Error::InvalidLatinSquare(format!("column {i} repeats symbol {}", table[j][i])));
                }
            }
        }
        Ok(Self { size: d, table })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `λ(a, b)`.
    pub fn at(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// The six latin squares a group induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `ab`
    E,
    /// `ab⁻¹`
    F,
    /// `a⁻¹b`
    G,
    /// `ba`
    L,
    /// `b⁻¹a`
    M,
    /// `ba⁻¹`
    N,
}

impl Variant {
    pub const ALL: [Variant; 6] = [Variant::E, Variant::F, Variant::G, Variant::L, Variant::M, Variant::N];

    /// The variant whose square is the inverse of this one's.
    pub fn inverse_partner(self) -> Variant {
        match self {
            Variant::E => Variant::G,
            Variant::G => Variant::E,
            Variant::F => Variant::M,
            Variant::M => Variant::F,
            Variant::L => Variant::N,
            Variant::N => Variant::L,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::E => "e",
            Variant::F => "f",
            Variant::G => "g",
            Variant::L => "l",
            Variant::M => "m",
            Variant::N => "n",
        };
        f.write_str(s)
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(Variant::E),
            "f" => Ok(Variant::F),
            "g" => Ok(Variant::G),
            "l" => Ok(Variant::L),
            "m" => Ok(Variant::M),
            "n" => Ok(Variant::N),
            other => Err(Error::InvalidArgument(format!(
                "unknown latin variant {other:?}; expected one of e, f, g, l, m, n"
            ))),
        }
    }
}

pub fn latin_from_group(g: &FiniteGroup, variant: Variant) -> LatinSquare {
    let n = g.order();
    let op = |a: usize, b: usize| match variant {
        Variant::E => g.mul(a, b),
        Variant::F => g.mul(a, g.inv(b)),
        Variant::G => g.mul(g.inv(a), b),
        Variant::L => g.mul(b, a),
        Variant::M => g.mul(g.inv(b), a),
        Variant::N => g.mul(b, g.inv(a)),
    };
    let table = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
    LatinSquare { size: n, table }
}

/// `μ` with `μ(a, λ(a, b)) = b`.
pub fn latin_inverse(lambda: &LatinSquare) -> LatinSquare {
    let d = lambda.size;
    let mut table = vec![vec![0; d]; d];
    for a in 0..d {
        for b in 0..d {
            table[a][lambda.table[a][b]] = b;
        }
    }
    LatinSquare { size: d, table }
}

/// Left identity `a` (`λ(a, b) = b` for all `b`) and right identity `c`
/// (`λ(b, c) = b` for all `b`), when they exist.
pub fn latin_identities(lambda: &LatinSquare) -> (Option<usize>, Option<usize>) {
    let d = lambda.size;
    let left = (0..d).find(|&a| (0..d).all(|b| lambda.table[a][b] == b));
    let right = (0..d).find(|&c| (0..d).all(|b| lambda.table[b][c] == b));
    (left, right)
}

/// `λ(n, λ(n′, k)) = λ(n′, λ(n, k))` for every `k`.
pub fn latin_crisscross(lambda: &LatinSquare, n: usize, n_prime: usize) -> bool {
    let t = &lambda.table;
    (0..lambda.size).all(|k| t[n][t[n_prime][k]] == t[n_prime][t[n][k]])
}

pub(crate) fn check_inverse_pair(lambda: &LatinSquare, mu: &LatinSquare) -> Result<()> {
    if lambda.size != mu.size {
        return Err(Error::InverseMismatch);
    }
    let d = lambda.size;
    let ok = (0..d).all(|a| (0..d).all(|b| mu.table[a][lambda.table[a][b]] == b));
    if ok {
        Ok(())
    } else {
        Err(Error::InverseMismatch)
    }
}

/// `λ(n, μ(n₀, λ(n′, k))) = λ(n′, μ(n₀, λ(n, k)))` for every `k`.
pub fn latin_twill(lambda: &LatinSquare, mu: &LatinSquare, n: usize, n0: usize, n_prime: usize) -> Result<bool> {
    check_inverse_pair(lambda, mu)?;
    let (l, m) = (&lambda.table, &mu.table);
    Ok((0..lambda.size).all(|k| l[n][m[n0][l[n_prime][k]]] == l[n_prime][m[n0][l[n][k]]]))
}
