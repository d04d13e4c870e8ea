use serde::{Deserialize, Serialize};

use super::count_injections;
use crate::error::{Error, Result};

/// Injection `[n] -> [m]`, stored 0-based as the image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "InjectionRepr", into = "InjectionRepr")]
pub struct Injection {
    target: usize,
    images: Vec<usize>,
}

// JSON form uses 1-based image values.
#[derive(Serialize, Deserialize)]
struct InjectionRepr {
    m: usize,
    images: Vec<usize>,
}

impl TryFrom<InjectionRepr> for Injection {
    type Error = Error;
    fn try_from(r: InjectionRepr) -> Result<Self> {
        let images = r
            .images
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .ok_or_else(|| Error::InvalidParameter("injection values are 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Injection::new(images, r.m)
    }
}

impl From<Injection> for InjectionRepr {
    fn from(f: Injection) -> Self {
        InjectionRepr {
            m: f.target,
            images: f.images.iter().map(|v| v + 1).collect(),
        }
    }
}

impl Injection {
    pub fn new(images: Vec<usize>, target: usize) -> Result<Self> {
        let mut seen = vec![false; target];
        for &v in &images {
            if v >= target || seen[v] {
                return Err(Error::InvalidParameter(format!(
                    "not an injection into [{target}]: {images:?}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self { target, images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            target: n,
            images: (0..n).collect(),
        }
    }

    /// The standard inclusion `[n] -> [m]`.
    pub fn standard(n: usize, m: usize) -> Result<Self> {
        Self::new((0..n).collect(), m)
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Injection) -> Result<Injection> {
        if other.target != self.source() {
            return Err(Error::SizeMismatch(format!(
                "cannot compose [{}]->[{}] after [{}]->[{}]",
                self.source(),
                self.target,
                other.source(),
                other.target
            )));
        }
        Ok(Injection {
            target: self.target,
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    /// Preimage of `j`, if it is in the image.
    pub fn preimage(&self, j: usize) -> Option<usize> {
        self.images.iter().position(|&v| v == j)
    }
}

/// All injections `[n] -> [m]` in lexicographic order of image lists.
pub fn injections(n: usize, m: usize) -> Vec<Injection> {
    fn go(n: usize, m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Injection>) {
        if cur.len() == n {
            out.push(Injection {
                target: m,
                images: cur.clone(),
            });
            return;
        }
        for v in 0..m {
            if used[v] {
                continue;
            }
            used[v] = true;
            cur.push(v);
            go(n, m, cur, used, out);
            cur.pop();
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    if n <= m {
        go(n, m, &mut Vec::new(), &mut vec![false; m], &mut out);
    }
    out
}

/// Rank/unrank of image lists among injections `[n] -> [m]` in the
/// lexicographic order of [`injections`].
#[derive(Clone, Debug)]
pub struct InjectionIndex {
    n: usize,
    m: usize,
    // weights[i] = number of injections of the remaining n-i-1 slots.
    weights: Vec<usize>,
    count: usize,
}

impl InjectionIndex {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        let count = count_injections(n, m)
            .ok_or_else(|| Error::TooLarge(format!("injections [{n}]->[{m}] overflow")))?;
        let weights = (0..n)
            .map(|i| match m.checked_sub(i + 1) {
                Some(rest) => count_injections(n - i - 1, rest).unwrap_or(0),
                None => 0,
            })
            .collect();
        Ok(Self {
            n,
            m,
            weights,
            count,
        })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn rank(&self, images: &[usize]) -> usize {
        debug_assert_eq!(images.len(), self.n);
        let mut used = vec![false; self.m];
        let mut r = 0;
        for (i, &v) in images.iter().enumerate() {
            let smaller_free = (0..v).filter(|&u| !used[u]).count();
            r += smaller_free * self.weights[i];
            used[v] = true;
        }
        r
    }

    pub fn unrank(&self, mut r: usize) -> Vec<usize> {
        let mut used = vec![false; self.m];
        let mut out = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let k = r / self.weights[i];
            r %= self.weights[i];
            let v = (0..self.m)
                .filter(|&u| !used[u])
                .nth(k)
                .expect("rank in range");
            used[v] = true;
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::falling;

    // Brute force over all maps [n] -> [m], keeping the injective ones.
    fn brute(n: usize, m: usize) -> usize {
        let total = m.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let mut seen = vec![false; m];
                for _ in 0..n {
                    let v = c % m;
                    c /= m;
                    if seen[v] {
                        return false;
                    }
                    seen[v] = true;
                }
                true
            })
            .count()
    }

    #[test]
    fn examples() {
        assert_eq!(injections(1, 2).len(), 2);
        assert_eq!(injections(2, 3).len(), 6);
        assert!(injections(3, 2).is_empty());
        assert_eq!(injections(0, 0).len(), 1);
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 0..=5 {
            for m in 0..=5 {
                let want = if m == 0 { usize::from(n == 0) } else { brute(n, m) };
                assert_eq!(injections(n, m).len(), want, "n={n} m={m}");
                assert_eq!(
                    num_bigint::BigUint::from(injections(n, m).len()),
                    falling(m, n)
                );
            }
        }
    }

    #[test]
    fn rank_unrank_agree_with_enumeration() {
        for n in 0..=3 {
            for m in n..=5 {
                let idx = InjectionIndex::new(n, m).unwrap();
                for (k, f) in injections(n, m).iter().enumerate() {
                    assert_eq!(idx.rank(f.images()), k);
                    assert_eq!(idx.unrank(k), f.images());
                }
            }
        }
    }

    #[test]
    fn json_is_one_based() {
        let f = Injection::new(vec![1, 0], 3).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"m":3,"images":[2,1]}"#);
        assert_eq!(serde_json::from_str::<Injection>(&s).unwrap(), f);
        assert!(serde_json::from_str::<Injection>(r#"{"m":2,"images":[0]}"#).is_err());
        assert!(serde_json::from_str::<Injection>(r#"{"m":2,"images":[1,1]}"#).is_err());
    }
}
