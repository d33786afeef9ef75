//! Young diagrams (integer partitions) indexing Virasoro descendants.
//!
//! The enumeration order of [`young_diagrams`] is reverse-lexicographic on
//! the part lists, e.g. at level 4: (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
//! This order is the matrix-index contract shared by the Shapovalov
//! matrices, the Fock oracle and the block coefficients; do not change it.

use std::fmt;

/// A non-increasing list of positive integers. The empty diagram ∅ is the
/// unique diagram of level 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    parts: Vec<u32>,
}

impl YoungDiagram {
    /// Builds a diagram, checking the non-increasing invariant.
    pub fn new(parts: Vec<u32>) -> Option<Self> {
        if parts.iter().any(|&p| p == 0) {
            return None;
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// |ν| = Σ ν_i.
    pub fn level(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parses the comma-joined serialization, e.g. "2,1,1". The empty string
    /// parses to ∅.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Some(Self::empty());
        }
        let parts: Option<Vec<u32>> = s.split(',').map(|t| t.trim().parse().ok()).collect();
        Self::new(parts?)
    }
}

/// Comma-joined part list, e.g. "2,1,1"; ∅ prints as the empty string.
impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// All diagrams of level exactly `n`, in reverse-lexicographic order.
pub fn young_diagrams(n: u32) -> Vec<YoungDiagram> {
    let mut out = Vec::with_capacity(partition_count(n) as usize);
    let mut stack = Vec::new();
    emit(n, n, &mut stack, &mut out);
    out
}

fn emit(remaining: u32, max_part: u32, stack: &mut Vec<u32>, out: &mut Vec<YoungDiagram>) {
    if remaining == 0 {
        out.push(YoungDiagram {
            parts: stack.clone(),
        });
        return;
    }
    let top = remaining.min(max_part);
    for part in (1..=top).rev() {
        stack.push(part);
        emit(remaining - part, part, stack, out);
        stack.pop();
    }
}

/// p(n), the number of partitions of n, by dynamic programming over
/// admissible largest parts.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            table[total] += table[total - part];
        }
    }
    table[n]
}
