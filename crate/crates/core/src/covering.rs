//! Binary covering codes and the covering view of `h(G_{m,t})`.
//!
//! A vertex set hits every radius-`(m/2 - t)` Hamming ball exactly when,
//! read as a code, every word lies within distance `m/2 - t` of it. Lower
//! bounds come from ±1 vectors with small inner product against the code;
//! upper bounds from Sylvester–Hadamard rows or random prefixes extended by
//! an all-zeros and an all-ones suffix.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::families::hamming::{
    distance, parse_word, word_mask, word_to_string, HammingSpec, MAX_EXPLICIT_M,
};
use crate::vertex_set::VertexSet;
use crate::{Error, Result};

/// Largest word length for exhaustive scans of `Z_2^m`.
pub const MAX_SCAN_M: usize = 28;
/// Up to this length the radius is computed by breadth-first search.
const MAX_BFS_M: usize = 24;

/// A set of `m`-bit words aimed at covering radius `m/2 - t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringCode {
    m: usize,
    t: usize,
    /// sorted, without duplicates
    words: Vec<u64>,
}

impl CoveringCode {
    pub fn new(m: usize, t: usize, words: impl IntoIterator<Item = u64>) -> Result<Self> {
        if m == 0 || m > 64 {
            return Err(Error::InvalidParameter(format!(
                "word length {m} outside 1..=64"
            )));
        }
        if 2 * t > m {
            return Err(Error::InvalidParameter(format!(
                "t = {t} exceeds m/2 for m = {m}"
            )));
        }
        let mask = word_mask(m);
        let mut words: Vec<u64> = words.into_iter().collect();
        if let Some(w) = words.iter().find(|&&w| w & !mask != 0) {
            return Err(Error::InvalidParameter(format!(
                "codeword {w:#x} longer than {m} bits"
            )));
        }
        words.sort_unstable();
        words.dedup();
        Ok(Self { m, t, words })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `m/2 - t`, rounded down for odd `m`.
    pub fn target_radius(&self) -> usize {
        self.m / 2 - self.t
    }

    pub fn min_distance_to(&self, x: u64) -> usize {
        self.words
            .iter()
            .map(|&c| distance(c, x))
            .min()
            .unwrap_or(usize::MAX)
    }

    /// Text form: header `m=<m> t=<t>`, then one 0/1 word per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("m={} t={}\n", self.m, self.t);
        for &w in &self.words {
            writeln!(out, "{}", word_to_string(w, self.m)).expect("writing to a String");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let mut m = None;
        let mut t = None;
        for field in header.split_whitespace() {
            let bad = || Error::Parse {
                line: 1,
                msg: format!("bad header field {field:?}"),
            };
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            let value: usize = value.parse().map_err(|_| bad())?;
            match key {
                "m" => m = Some(value),
                "t" => t = Some(value),
                _ => return Err(bad()),
            }
        }
        let (Some(m), Some(t)) = (m, t) else {
            return Err(Error::Parse {
                line: 1,
                msg: "header must be \"m=<int> t=<int>\"".into(),
            });
        };
        let words = lines
            .map(|(i, l)| {
                parse_word(l.trim(), m).map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, t, words)
    }
}

/// Reads a hitting set of the radius-`(m/2 - t)` balls as a code.
pub fn hitting_set_to_code(spec: &HammingSpec, set: &VertexSet) -> Result<CoveringCode> {
    if set.is_empty() {
        return Err(Error::InvalidParameter("empty vertex set".into()));
    }
    if spec.vertex_count() != Some(set.universe()) {
        return Err(Error::InvalidParameter(format!(
            "vertex set is not over Z_2^{}",
            spec.m()
        )));
    }
    CoveringCode::new(spec.m(), spec.t(), set.iter().map(|v| v as u64))
}

pub fn code_to_hitting_set(code: &CoveringCode) -> Result<VertexSet> {
    if code.m > MAX_EXPLICIT_M {
        return Err(Error::TooLarge {
            n: 1 << code.m.min(63),
            limit: 1 << MAX_EXPLICIT_M,
        });
    }
    VertexSet::from_indices(1 << code.m, code.words.iter().map(|&w| w as usize))
}

/// Largest distance from a word of `Z_2^m` to the code (`m <= 28`).
pub fn covering_radius(code: &CoveringCode) -> Result<usize> {
    if code.is_empty() {
        return Err(Error::InvalidParameter(
            "covering radius of an empty code".into(),
        ));
    }
    if code.m > MAX_SCAN_M {
        return Err(Error::TooLarge {
            n: 1 << code.m.min(63),
            limit: 1 << MAX_SCAN_M,
        });
    }
    if code.m <= MAX_BFS_M {
        Ok(bfs_radius(code))
    } else {
        Ok((0..1u64 << code.m)
            .into_par_iter()
            .map(|x| code.min_distance_to(x))
            .max()
            .unwrap_or(0))
    }
}

/// Multi-source BFS on the hypercube from every codeword.
fn bfs_radius(code: &CoveringCode) -> usize {
    let size = 1usize << code.m;
    let mut dist = vec![u8::MAX; size];
    let mut frontier: Vec<u64> = code.words.clone();
    for &w in &frontier {
        dist[w as usize] = 0;
    }
    let mut radius = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &w in &frontier {
            for b in 0..code.m {
                let x = w ^ (1 << b);
                if dist[x as usize] == u8::MAX {
                    dist[x as usize] = radius as u8 + 1;
                    next.push(x);
                }
            }
        }
        if !next.is_empty() {
            radius += 1;
        }
        frontier = next;
    }
    radius
}

/// ±1 inner product of two `m`-bit words: `m - 2 * distance`.
#[inline]
pub fn signed_inner_product(a: u64, b: u64, m: usize) -> i64 {
    m as i64 - 2 * distance(a, b) as i64
}

fn is_far(code: &CoveringCode, t: usize, x: u64) -> bool {
    // distance > m/2 - t  <=>  inner product < 2t
    code.words
        .iter()
        .all(|&c| signed_inner_product(x, c, code.m) < 2 * t as i64)
}

/// Least word whose distance to every codeword exceeds `m/2 - t`, found by
/// exhaustive scan (`m <= 28`).
pub fn find_far_point(code: &CoveringCode, t: usize) -> Result<Option<u64>> {
    if code.m > MAX_SCAN_M {
        return Err(Error::TooLarge {
            n: 1 << code.m.min(63),
            limit: 1 << MAX_SCAN_M,
        });
    }
    if 2 * t > code.m {
        return Err(Error::InvalidParameter(format!("t = {t} exceeds m/2")));
    }
    Ok((0..1u64 << code.m)
        .into_par_iter()
        .find_first(|&x| is_far(code, t, x)))
}

/// Randomised far-point search for long words; `None` proves nothing.
pub fn find_far_point_sampled(
    code: &CoveringCode,
    t: usize,
    samples: usize,
    seed: u64,
) -> Option<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = word_mask(code.m);
    (0..samples)
        .map(|_| rng.gen::<u64>() & mask)
        .find(|&x| is_far(code, t, x))
}

/// Sylvester–Hadamard matrix of order `2^k` with entries `±1`.
pub fn sylvester(order: usize) -> Result<Vec<Vec<i8>>> {
    if !order.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "Sylvester order {order} is not a power of two"
        )));
    }
    let mut h = vec![vec![1i8]];
    while h.len() < order {
        let top = h.iter().map(|r| r.iter().chain(r).copied().collect());
        let bottom = h
            .iter()
            .map(|r| r.iter().copied().chain(r.iter().map(|&x| -x)).collect());
        h = top.chain(bottom).collect::<Vec<Vec<i8>>>();
    }
    Ok(h)
}

/// Least power of two `>= 4t^2`.
pub fn hadamard_order(t: usize) -> usize {
    (4 * t * t).next_power_of_two()
}

/// Prefixes placed in the leading positions, extended by all-zeros and all-ones.
fn extend_prefixes(m: usize, prefix_len: usize, prefixes: &[u64]) -> Vec<u64> {
    let suffix_len = m - prefix_len;
    let ones = word_mask(suffix_len);
    prefixes
        .iter()
        .flat_map(|&p| {
            let head = if suffix_len >= 64 { 0 } else { p << suffix_len };
            [head, head | ones]
        })
        .collect()
}

/// Rows of the Sylvester matrix of order `h0 = hadamard_order(t)` and their
/// negations, each extended to length `m` by both constant suffixes.
///
/// The code has `4 h0` words when `m > h0` and `2 h0` when `m = h0`.
pub fn build_hadamard_covering_code(spec: &HammingSpec) -> Result<CoveringCode> {
    let h0 = hadamard_order(spec.t());
    if spec.m() < h0 {
        return Err(Error::InvalidParameter(format!(
            "m = {} is below the Hadamard order {h0}",
            spec.m()
        )));
    }
    let rows = sylvester(h0)?;
    let prefixes: Vec<u64> = rows
        .iter()
        .flat_map(|row| {
            let word = row.iter().fold(0u64, |acc, &x| acc << 1 | (x < 0) as u64);
            [word, !word & word_mask(h0)]
        })
        .collect();
    CoveringCode::new(spec.m(), spec.t(), extend_prefixes(spec.m(), h0, &prefixes))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomCode {
    pub code: CoveringCode,
    /// Covering radius was checked exhaustively.
    pub verified: bool,
    /// Samples drawn, including the accepted one.
    pub attempts: usize,
}

/// Random prefixes of length `4t^2`, each extended by both constant suffixes.
///
/// Draws up to `trials` samples of `prefixes` prefixes and returns the first
/// whose covering radius is at most `m/2 - t`. Beyond `m = 28` the first
/// sample is returned unverified.
pub fn build_random_covering_code(
    spec: &HammingSpec,
    prefixes: usize,
    trials: usize,
    seed: u64,
) -> Result<RandomCode> {
    let len = 4 * spec.t() * spec.t();
    if len > spec.m() {
        return Err(Error::InvalidParameter(format!(
            "prefix length 4t^2 = {len} exceeds m = {}",
            spec.m()
        )));
    }
    if prefixes == 0 {
        return Err(Error::InvalidParameter("need at least one prefix".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=trials {
        let sample: Vec<u64> = (0..prefixes)
            .map(|_| rng.gen::<u64>() & word_mask(len))
            .collect();
        let code = CoveringCode::new(spec.m(), spec.t(), extend_prefixes(spec.m(), len, &sample))?;
        if spec.m() > MAX_SCAN_M {
            return Ok(RandomCode {
                code,
                verified: false,
                attempts: attempt,
            });
        }
        if covering_radius(&code)? <= spec.radius() {
            return Ok(RandomCode {
                code,
                verified: true,
                attempts: attempt,
            });
        }
    }
    Err(Error::Infeasible(format!(
        "no random code of radius <= {} in {trials} trials",
        spec.radius()
    )))
}

/// Smallest code size `T` not ruled out by the discrepancy argument:
/// a ±1 vector with all inner products at most `12 sqrt(T)` is far from
/// the code whenever `12 sqrt(T) < 2t`, so `T >= ceil(t^2 / 36)`.
pub fn discrepancy_lower_bound(t: usize) -> usize {
    (t * t).div_ceil(36)
}

/// `2t`, from the Kneser subgraph; weaker than the quadratic bound for large `t`.
pub fn kneser_lower_bound(spec: &HammingSpec) -> usize {
    2 * spec.t()
}

/// Minimum covering-code size for radius `radius` in `Z_2^m` by trying
/// every code of each size in turn (`m <= 6`). Returns one optimal code.
pub fn exact_min_code(m: usize, radius: usize) -> Result<Vec<u64>> {
    if m == 0 || m > 6 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive code search limited to 1 <= m <= 6, got {m}"
        )));
    }
    let n = 1usize << m;
    let full = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
    let balls: Vec<u64> = (0..n as u64)
        .map(|c| {
            (0..n as u64)
                .filter(|&x| distance(c, x) <= radius)
                .fold(0, |acc, x| acc | 1 << x)
        })
        .collect();
    for size in 1..=n {
        let mut cur: Vec<usize> = (0..size).collect();
        loop {
            if cur.iter().fold(0u64, |acc, &c| acc | balls[c]) == full {
                return Ok(cur.iter().map(|&c| c as u64).collect());
            }
            let Some(i) = (0..size).rev().find(|&i| cur[i] < n - (size - i)) else {
                break;
            };
            cur[i] += 1;
            for j in i + 1..size {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
    unreachable!("the whole space covers itself")
}
