use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::partition::{partitions, Partition};
use super::{factorial, Perm};
use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};

thread_local! {
    static MN_MEMO: RefCell<HashMap<(Vec<usize>, Vec<usize>), i64>> = RefCell::new(HashMap::new());
}

/// Value of the irreducible character `χ^λ` on the class of cycle type `μ`.
pub fn irreducible_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(format!(
            "character of {lambda} evaluated on class {mu}"
        )));
    }
    Ok(mn(lambda.parts(), mu.parts()))
}

// Murnaghan–Nakayama on beta-sets: removing an r-rim hook is moving one bead
// down r places to an empty position, with sign from the beads jumped over.
fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = MN_MEMO.with(|m| m.borrow().get(&key).copied()) {
        return v;
    }
    let r = mu[0];
    let rest = &mu[1..];
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut nb = beta.clone();
        nb[i] = b - r;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let mut nl: Vec<usize> = nb.iter().enumerate().map(|(k, &c)| c - (l - 1 - k)).collect();
        while nl.last() == Some(&0) {
            nl.pop();
        }
        let v = mn(&nl, rest);
        total += if jumped % 2 == 0 { v } else { -v };
    }
    MN_MEMO.with(|m| m.borrow_mut().insert(key, total));
    total
}

/// Hook length formula.
pub fn specht_dimension(lambda: &Partition) -> BigUint {
    let hooks: BigUint = lambda
        .hook_lengths()
        .iter()
        .flatten()
        .fold(BigUint::one(), |acc, &h| acc * h);
    factorial(lambda.size()) / hooks
}

/// `z_μ = Π_i i^{m_i} m_i!`, the order of the centralizer of a permutation of type μ.
pub fn z_centralizer(mu: &Partition) -> BigUint {
    mu.multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .fold(BigUint::one(), |acc, (i, &m)| {
            acc * BigUint::from(i).pow(m as u32) * factorial(m)
        })
}

fn z_rat(mu: &Partition) -> Rational {
    Rational::from_integer(BigInt::from(z_centralizer(mu)))
}

/// Rational-valued class function on `S_n`, keyed by cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    level: usize,
    values: BTreeMap<Partition, Rational>,
}

impl ClassFunction {
    pub fn zero(level: usize) -> Self {
        Self::from_fn(level, |_| Rational::zero())
    }

    pub fn from_fn(level: usize, f: impl Fn(&Partition) -> Rational) -> Self {
        Self {
            level,
            values: partitions(level).into_iter().map(|mu| {
                let v = f(&mu);
                (mu, v)
            }).collect(),
        }
    }

    pub fn from_values(level: usize, values: BTreeMap<Partition, Rational>) -> Result<Self> {
        let keys: Vec<&Partition> = values.keys().collect();
        let mut want = partitions(level);
        want.sort();
        if keys.len() != want.len() || keys.iter().zip(&want).any(|(a, b)| *a != b) {
            return Err(Error::InvalidParameter(format!(
                "class function keys must be exactly the partitions of {level}"
            )));
        }
        Ok(Self { level, values })
    }

    pub fn irreducible(lambda: &Partition) -> Self {
        Self::from_fn(lambda.size(), |mu| {
            rat(irreducible_character(lambda, mu).expect("sizes agree"))
        })
    }

    pub fn trivial(level: usize) -> Self {
        Self::from_fn(level, |_| Rational::one())
    }

    pub fn regular(level: usize) -> Self {
        let order = Rational::from_integer(BigInt::from(factorial(level)));
        Self::from_fn(level, |mu| {
            if mu.parts().iter().all(|&p| p == 1) {
                order.clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Character of the permutation action of `S_n` on a finite set, given
    /// the fixed-point count of a representative of each class.
    pub fn from_permutation_action(level: usize, fixed: impl Fn(&Perm) -> usize) -> Self {
        Self::from_fn(level, |mu| rat(fixed(&Perm::from_cycle_type(mu)) as i64))
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn get(&self, mu: &Partition) -> Rational {
        self.values.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn values(&self) -> &BTreeMap<Partition, Rational> {
        &self.values
    }

    pub fn degree(&self) -> Rational {
        self.get(&Partition::column(self.level))
    }

    fn check_level(&self, other: &ClassFunction) -> Result<()> {
        if self.level != other.level {
            return Err(Error::SizeMismatch(format!(
                "class functions at levels {} and {}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_level(other)?;
        Ok(Self::from_fn(self.level, |mu| self.get(mu) + other.get(mu)))
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_level(other)?;
        Ok(Self::from_fn(self.level, |mu| self.get(mu) - other.get(mu)))
    }

    pub fn scale(&self, a: &Rational) -> ClassFunction {
        Self::from_fn(self.level, |mu| self.get(mu) * a)
    }

    /// Pointwise product: the character of a tensor product.
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_level(other)?;
        Ok(Self::from_fn(self.level, |mu| self.get(mu) * other.get(mu)))
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }
}

pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<Rational> {
    f.check_level(g)?;
    Ok(f
        .values
        .iter()
        .map(|(mu, v)| v * g.get(mu) / z_rat(mu))
        .fold(Rational::zero(), |a, b| a + b))
}

/// Multiplicity `⟨f, χ^λ⟩` of every irreducible, zeros included.
pub fn decompose(f: &ClassFunction) -> BTreeMap<Partition, Rational> {
    partitions(f.level)
        .into_iter()
        .map(|lambda| {
            let m = inner_product(f, &ClassFunction::irreducible(&lambda)).expect("same level");
            (lambda, m)
        })
        .collect()
}

/// Character of the representation induced from the Young subgroup
/// `S_{n_1} × .. × S_{n_k}` of the outer tensor product of the factors.
pub fn induce_character(factors: &[ClassFunction]) -> ClassFunction {
    let mut it = factors.iter();
    let Some(first) = it.next() else {
        return ClassFunction::trivial(0);
    };
    it.fold(first.clone(), |acc, f| induce_pair(&acc, f))
}

fn induce_pair(f: &ClassFunction, g: &ClassFunction) -> ClassFunction {
    let a = f.level;
    let n = a + g.level;
    ClassFunction::from_fn(n, |mu| {
        let mut total = Rational::zero();
        for (alpha, beta) in splits(mu, a) {
            let fa = f.get(&alpha);
            if fa.is_zero() {
                continue;
            }
            total += fa * g.get(&beta) / (z_rat(&alpha) * z_rat(&beta));
        }
        total * z_rat(mu)
    })
}

/// Ways to split the multiset of parts of `mu` into `(alpha, beta)` with
/// `|alpha| = a`, each distinct split listed once.
pub(crate) fn splits(mu: &Partition, a: usize) -> Vec<(Partition, Partition)> {
    let mult = mu.multiplicities();
    let sizes: Vec<usize> = (1..mult.len()).filter(|&i| mult[i] > 0).collect();
    let mut out = Vec::new();
    fn go(
        k: usize,
        sizes: &[usize],
        mult: &[usize],
        rem: usize,
        take: &mut Vec<usize>,
        out: &mut Vec<(Partition, Partition)>,
    ) {
        if k == sizes.len() {
            if rem == 0 {
                let mut alpha = Vec::new();
                let mut beta = Vec::new();
                for (idx, &i) in sizes.iter().enumerate() {
                    alpha.extend(std::iter::repeat_n(i, take[idx]));
                    beta.extend(std::iter::repeat_n(i, mult[i] - take[idx]));
                }
                out.push((Partition::from_unsorted(alpha), Partition::from_unsorted(beta)));
            }
            return;
        }
        let i = sizes[k];
        for c in 0..=mult[i] {
            if c * i > rem {
                break;
            }
            take.push(c);
            go(k + 1, sizes, mult, rem - c * i, take, out);
            take.pop();
        }
    }
    go(0, &sizes, &mult, a, &mut Vec::new(), &mut out);
    out
}
