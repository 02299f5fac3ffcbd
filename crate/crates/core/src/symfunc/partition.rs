use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// An integer partition, parts in weakly decreasing order.
///
/// Partitions are ordered by weight first, then lexicographically by parts,
/// so that `1^n` comes first and `(n)` last within each degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the given parts into a partition, dropping zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ ∪ μ`: the multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// Every part multiplied by `k`.
    pub fn scale(&self, k: usize) -> Partition {
        Partition { parts: self.parts.iter().map(|p| p * k).collect() }
    }

    /// Multiplicity of each part size, `m[i]` for `i = 1..=max part`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts.first().copied().unwrap_or(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (1..=cols).map(|c| self.parts.iter().filter(|&&p| p >= c).count()).collect() }
    }

    /// All partitions of `n`, in the canonical order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (1..=max.min(n)).rev() {
                prefix.push(p);
                rec(n - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = String;
    fn try_from(parts: Vec<usize>) -> Result<Self, String> {
        if parts.contains(&0) || !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(format!("{parts:?} is not a weakly decreasing list of positive parts"));
        }
        Ok(Partition { parts })
    }
}

impl<const N: usize> From<[usize; N]> for Partition {
    fn from(parts: [usize; N]) -> Self {
        Partition::new(parts.to_vec())
    }
}

/// Exponent notation, e.g. `3^2,1^4`; the empty partition prints as `∅`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&q| q == p).count();
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Parses comma-separated parts with optional `^multiplicity`, e.g.
/// `4,2^2,1^2` or `3,2,1`.
impl FromStr for Partition {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (p, m) = match tok.split_once('^') {
                Some((p, m)) => (p, m),
                None => (tok, "1"),
            };
            let p: usize = p.parse().map_err(|_| format!("bad part {tok:?}"))?;
            let m: usize = m.parse().map_err(|_| format!("bad multiplicity {tok:?}"))?;
            if p == 0 {
                return Err("parts must be positive".into());
            }
            parts.extend(std::iter::repeat_n(p, m));
        }
        Ok(Partition::new(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let p4: Vec<String> = Partition::all(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(p4, ["1^4", "2,1^2", "2^2", "3,1", "4"]);
        assert!(Partition::from([3]) > Partition::from([1, 1]));
    }

    #[test]
    fn parse_and_display() {
        let p: Partition = "3^2,1^4".parse().unwrap();
        assert_eq!(p.parts(), &[3, 3, 1, 1, 1, 1]);
        assert_eq!(p.to_string(), "3^2,1^4");
        assert_eq!("1,2,2".parse::<Partition>().unwrap(), Partition::from([2, 2, 1]));
        assert!("0".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }

    #[test]
    fn conjugate_and_union() {
        assert_eq!(Partition::from([3, 1]).conjugate(), Partition::from([2, 1, 1]));
        assert_eq!(Partition::from([2, 1]).union(&Partition::from([3, 1])), Partition::from([3, 2, 1, 1]));
        assert_eq!(Partition::from([2, 1]).scale(3), Partition::from([6, 3]));
        assert_eq!(Partition::from([2, 2, 1]).multiplicities(), [0, 1, 2]);
    }

    #[test]
    fn serde_rejects_unsorted() {
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
        let p: Partition = serde_json::from_str("[2,1,1]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,1]");
    }
}
