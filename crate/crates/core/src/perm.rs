//! Permutations of `0..n`.
//!
//! Composition convention, used by every module in this crate:
//! `p.compose(&q)` is the map `v -> p(q(v))`, i.e. the right factor is applied
//! first. Products of pairs `(a1, b1)(a2, b2) = (a1 a2, b1 b2)` follow the same
//! rule.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexLabeling;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        Self::from_u32(images.into_iter().map(|x| x as u32).collect())
    }

    pub fn from_u32(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles. Points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
                if touched[x] {
                    return Err(Error::NotAPermutation(format!(
                        "point {x} appears in more than one cycle"
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses either cycle notation (`(0 1 2)(3 4)`, `()`, `id`) or a one-line
    /// image array (`[1, 0, 2]` or `1 0 2`). Cycle entries may be vertex names
    /// when a labeling is supplied.
    pub fn parse(s: &str, n: usize, labeling: Option<&VertexLabeling>) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" || s == "()" {
            return Ok(Self::identity(n));
        }
        let resolve = |tok: &str| -> Result<usize> {
            if let Some(l) = labeling {
                if let Some(v) = l.index_of(tok) {
                    return Ok(v);
                }
            }
            tok.parse::<usize>()
                .map_err(|_| Error::malformed(format!("unknown vertex '{tok}'")))
        };
        if s.starts_with('(') {
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            let mut rest = s;
            while !rest.is_empty() {
                let rest_trim = rest.trim_start();
                if rest_trim.is_empty() {
                    break;
                }
                let body = rest_trim
                    .strip_prefix('(')
                    .ok_or_else(|| Error::malformed(format!("expected '(' in '{s}'")))?;
                let close = body
                    .find(')')
                    .ok_or_else(|| Error::malformed(format!("unclosed cycle in '{s}'")))?;
                let cycle = body[..close]
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(resolve)
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cycle);
                rest = &body[close + 1..];
            }
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            return Self::from_cycles(n, &refs);
        }
        let body = s.trim_start_matches('[').trim_end_matches(']');
        let images = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(resolve)
            .collect::<Result<Vec<_>>>()?;
        if images.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                actual: images.len(),
            });
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut result = Self::identity(self.len());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            k >>= 1;
        }
        result
    }

    /// Non-trivial cycles in canonical order: each starts at its least point,
    /// cycles sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Least `k >= 1` with `self^k = id`: the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycles()
            .iter()
            .fold(1u128, |acc, c| lcm(acc, c.len() as u128))
    }

    /// Cycle notation with vertex names from `labeling` when given.
    pub fn to_cycle_string(&self, labeling: Option<&VertexLabeling>) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let name = |v: usize| match labeling {
            Some(l) => l.name(v).to_string(),
            None => v.to_string(),
        };
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|&v| name(v)).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Permutation::from_u32(v)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string(None))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string(None))
    }
}

/// All permutations of `0..n` in lexicographic order of image arrays.
pub(crate) fn all_permutations(n: usize) -> impl Iterator<Item = Vec<u32>> {
    use itertools::Itertools;
    (0..n as u32).permutations(n)
}
