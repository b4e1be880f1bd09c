use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::basis::{Fan, Label};
use crate::error::{Error, Result};

/// A covering subfamily of a fan together with the record of the search
/// that proves no smaller one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSelection {
    /// Indices into the fan's canonical MASS list, ascending.
    pub selected: Vec<usize>,
    pub masses: Vec<Vec<Label>>,
    pub certificate: CoverCertificate,
}

impl CoverSelection {
    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    /// MASSs that alone contain some element; every cover holds them.
    pub forced: Vec<usize>,
    /// For each size below the answer, the number of candidate subsets
    /// examined before that size was ruled out.
    pub exhausted: Vec<ExhaustedSize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustedSize {
    pub size: usize,
    pub subsets_checked: u64,
}

struct Instance {
    sets: Vec<FixedBitSet>,
    n: usize,
}

impl Instance {
    fn new(fan: &Fan) -> Result<Self> {
        let n = fan.universe().len();
        let sets = fan
            .masses()
            .iter()
            .map(|mass| {
                let mut s = FixedBitSet::with_capacity(n);
                for l in mass {
                    let i = fan
                        .universe()
                        .iter()
                        .position(|u| u == l)
                        .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
                    s.insert(i);
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { sets, n })
    }
}

/// Minimum-cardinality subfamily covering the fan's universe; among those,
/// the lexicographically smallest index set.
///
/// Forced MASSs are taken first, then sizes are tried in increasing order
/// with subsets enumerated lexicographically, so the first hit is both
/// minimal and lexicographically least.
pub fn minimal_cover(fan: &Fan) -> Result<CoverSelection> {
    let inst = Instance::new(fan)?;
    let mut union = FixedBitSet::with_capacity(inst.n);
    for s in &inst.sets {
        union.union_with(s);
    }
    if union.count_ones(..) != inst.n {
        return Err(Error::InvalidArgument("fan does not cover its universe".into()));
    }
    let mut forced: Vec<usize> = Vec::new();
    for e in 0..inst.n {
        let holders: Vec<usize> = (0..inst.sets.len()).filter(|&i| inst.sets[i].contains(e)).collect();
        if let [only] = holders[..] {
            if !forced.contains(&only) {
                forced.push(only);
            }
        }
    }
    forced.sort_unstable();
    let mut covered = FixedBitSet::with_capacity(inst.n);
    for &i in &forced {
        covered.union_with(&inst.sets[i]);
    }
    let optional: Vec<usize> = (0..inst.sets.len()).filter(|i| !forced.contains(i)).collect();
    let max_size = optional.iter().map(|&i| inst.sets[i].count_ones(..)).max().unwrap_or(0);

    let mut exhausted = Vec::new();
    for extra in 0..=optional.len() {
        let mut checked = 0u64;
        let mut chosen = Vec::with_capacity(extra);
        let found = search(&inst, &optional, 0, extra, &covered, max_size, &mut chosen, &mut checked);
        if found {
            let mut selected: Vec<usize> = forced.iter().copied().chain(chosen).collect();
            selected.sort_unstable();
            return Ok(CoverSelection {
                masses: selected.iter().map(|&i| fan.masses()[i].clone()).collect(),
                selected,
                certificate: CoverCertificate { forced, exhausted },
            });
        }
        exhausted.push(ExhaustedSize {
            size: forced.len() + extra,
            subsets_checked: checked,
        });
    }
    unreachable!("the whole fan covers its universe")
}

#[allow(clippy::too_many_arguments)]
fn search(
    inst: &Instance,
    optional: &[usize],
    start: usize,
    remaining: usize,
    covered: &FixedBitSet,
    max_size: usize,
    chosen: &mut Vec<usize>,
    checked: &mut u64,
) -> bool {
    let missing = inst.n - covered.count_ones(..);
    if remaining == 0 {
        *checked += 1;
        return missing == 0;
    }
    // Bound: the remaining picks cannot add more than their total size.
    if missing > remaining * max_size {
        *checked += 1;
        return false;
    }
    for k in start..=optional.len().saturating_sub(remaining) {
        let mut next = covered.clone();
        next.union_with(&inst.sets[optional[k]]);
        chosen.push(optional[k]);
        if search(inst, optional, k + 1, remaining - 1, &next, max_size, chosen, checked) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A subfamily of pairwise-disjoint MASSs covering the universe, if any.
/// Branches on the first uncovered element, trying MASSs in index order.
pub fn find_partition(fan: &Fan) -> Result<Option<Vec<usize>>> {
    let inst = Instance::new(fan)?;
    let mut chosen = Vec::new();
    let found = exact_cover(&inst, &FixedBitSet::with_capacity(inst.n), &mut chosen);
    Ok(found.then(|| {
        chosen.sort_unstable();
        chosen
    }))
}

fn exact_cover(inst: &Instance, covered: &FixedBitSet, chosen: &mut Vec<usize>) -> bool {
    let Some(e) = (0..inst.n).find(|&e| !covered.contains(e)) else {
        return true;
    };
    for (i, s) in inst.sets.iter().enumerate() {
        if s.contains(e) && s.is_disjoint(covered) {
            let mut next = covered.clone();
            next.union_with(s);
            chosen.push(i);
            if exact_cover(inst, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan(n: usize, masses: &[&[usize]]) -> Fan {
        let name = |i: usize| Label::Name(format!("v{i:02}"));
        Fan::new(
            (0..n).map(name).collect(),
            masses.iter().map(|m| m.iter().map(|&i| name(i)).collect()).collect(),
        )
    }

    /// Brute force over all subsets in (size, lexicographic) order.
    fn oracle(f: &Fan) -> Vec<usize> {
        let k = f.len();
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..(1 << k) {
            let sel: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let mut cov: Vec<&Label> = sel.iter().flat_map(|&i| f.masses()[i].iter()).collect();
            cov.sort();
            cov.dedup();
            if cov.len() == f.universe().len() {
                let better = match &best {
                    None => true,
                    Some(b) => (sel.len(), &sel) < (b.len(), b),
                };
                if better {
                    best = Some(sel);
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn matches_brute_force() {
        let cases: Vec<Fan> = vec![
            fan(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]),
            fan(6, &[&[0, 1, 2], &[3, 4, 5], &[0, 3], &[1, 4], &[2, 5], &[0, 1, 2, 3]]),
            fan(5, &[&[0], &[1, 2], &[2, 3], &[3, 4], &[1, 4]]),
            fan(3, &[&[0, 1, 2]]),
        ];
        for f in &cases {
            let c = minimal_cover(f).unwrap();
            assert_eq!(c.selected, oracle(f));
            for e in &c.certificate.exhausted {
                assert!(e.size < c.len());
            }
        }
    }

    #[test]
    fn partition_fan_is_its_own_cover() {
        let f = fan(6, &[&[0, 1], &[2, 3], &[4, 5]]);
        let c = minimal_cover(&f).unwrap();
        assert_eq!(c.selected, vec![0, 1, 2]);
        assert_eq!(c.certificate.forced, vec![0, 1, 2]);
        assert_eq!(find_partition(&f).unwrap(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn no_partition_when_overlaps_forced() {
        let f = fan(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(find_partition(&f).unwrap(), None);
    }
}
