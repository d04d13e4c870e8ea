use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer partition stored as weakly decreasing positive parts.
///
/// Ordering is lexicographic on the parts, and `partitions(n)` lists
/// partitions in decreasing order under it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "partition parts must be positive: {parts:?}"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Self(parts))
    }

    /// Sort and drop zeros; used for cycle types.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self(vec![n])
        }
    }

    pub fn column(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..first)
                .map(|j| self.0.iter().filter(|&&p| p > j).count())
                .collect(),
        )
    }

    /// Multiplicity of each part size: `m[i]` for part `i`, index 0 unused.
    pub fn multiplicities(&self) -> Vec<usize> {
        let top = self.0.first().copied().unwrap_or(0);
        let mut m = vec![0; top + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &row)| (0..row).map(|j| row - j + conj.0[j] - i - 1).collect())
            .collect()
    }

    /// `true` when `self` dominates `other` (same size assumed).
    pub fn dominates(&self, other: &Partition) -> bool {
        let mut a = 0;
        let mut b = 0;
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Comma-separated part list, as used on the command line.
    pub fn to_arg(&self) -> String {
        self.0
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_arg())
    }
}

/// Largest size accepted when parsing from text.
pub const MAX_PARSED_SIZE: usize = 64;

/// Accepts `2,1`, `(2,1)`, `[2, 1]`, and the empty string or `()` / `[]`
/// for the empty partition.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .or_else(|| t.strip_prefix('[').and_then(|x| x.strip_suffix(']')))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidParameter(format!("bad partition part {x:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let size = parts.iter().try_fold(0usize, |a, &p| a.checked_add(p));
        if size.is_none_or(|n| n > MAX_PARSED_SIZE) {
            return Err(Error::InvalidParameter(format!(
                "partition size exceeds {MAX_PARSED_SIZE}"
            )));
        }
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    // Brute force: all weakly decreasing sequences of positive integers summing to n.
    fn brute_count(n: usize) -> usize {
        fn count(rem: usize, max: usize) -> usize {
            if rem == 0 {
                return 1;
            }
            (1..=max.min(rem)).map(|p| count(rem - p, p)).sum()
        }
        count(n, n)
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(partitions(0), vec![Partition::empty()]);
        assert_eq!(partitions(1), vec![Partition::row(1)]);
        assert_eq!(partitions(4).len(), 5);
        for n in 0..10 {
            assert_eq!(partitions(n).len(), brute_count(n));
        }
    }

    #[test]
    fn order_is_reverse_lex() {
        let ps = partitions(5);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(ps[0], Partition::row(5));
        assert_eq!(ps[ps.len() - 1], Partition::column(5));
    }

    #[test]
    fn parse_forms() {
        let p: Partition = "2,1".parse().unwrap();
        assert_eq!(p.parts(), &[2, 1]);
        assert_eq!("(3, 1,1)".parse::<Partition>().unwrap().size(), 5);
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert!("7777777777".parse::<Partition>().is_err());
        assert!("40,30".parse::<Partition>().is_err());
    }

    #[test]
    fn json_roundtrip_and_rejection() {
        let p = Partition::new(vec![3, 1]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[3,1]");
        assert_eq!(serde_json::from_str::<Partition>(&s).unwrap(), p);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn conjugate_and_hooks() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.conjugate().parts(), &[2, 1, 1]);
        assert_eq!(p.hook_lengths(), vec![vec![4, 2, 1], vec![1]]);
        for n in 0..7 {
            for q in partitions(n) {
                assert_eq!(q.conjugate().conjugate(), q);
            }
        }
    }
}
