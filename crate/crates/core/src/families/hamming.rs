//! Hamming graphs `G_{m,t}` on binary words of length `m`: two words are
//! adjacent iff their Hamming distance exceeds `m - 2t`. This is the Cayley
//! graph of `Z_2^m` generated by all words of weight at least `m - 2t + 1`.
//!
//! Words are stored in the low `m` bits of a `u64`. In text form the first
//! character is bit `m - 1`, so `"1110"` is the word `0b1110`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::graph::Graph;
use crate::mis::MisFamily;
use crate::vertex_set::VertexSet;
use crate::{Error, Result};

/// Largest word length with a materialised graph (`2^12 = 4096` vertices).
pub const MAX_EXPLICIT_M: usize = 12;
pub const MAX_M: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HammingSpec {
    m: usize,
    t: usize,
    /// `4t^2 <= m` was checked at construction.
    constrained: bool,
}

impl HammingSpec {
    /// Parameters satisfying `m` even, `t >= 1` and `4t^2 <= m`.
    pub fn new(m: usize, t: usize) -> Result<Self> {
        let spec = Self::unconstrained(m, t)?;
        if 4 * t * t > m {
            return Err(Error::InvalidParameter(format!(
                "4t^2 = {} exceeds m = {m}",
                4 * t * t
            )));
        }
        Ok(Self {
            constrained: true,
            ..spec
        })
    }

    /// As [`HammingSpec::new`] but without the `4t^2 <= m` requirement.
    pub fn unconstrained(m: usize, t: usize) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(2) || m > MAX_M {
            return Err(Error::InvalidParameter(format!(
                "m must be even and in 2..={MAX_M}, got {m}"
            )));
        }
        if t == 0 {
            return Err(Error::InvalidParameter("t must be positive".into()));
        }
        if t > m / 2 {
            return Err(Error::InvalidParameter(format!(
                "m/2 - t is negative for m = {m}, t = {t}"
            )));
        }
        Ok(Self {
            m,
            t,
            constrained: 4 * t * t <= m,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn is_constrained(&self) -> bool {
        self.constrained
    }

    /// `m/2 - t`: radius of the maximum independent balls and of the covering codes.
    pub fn radius(&self) -> usize {
        self.m / 2 - self.t
    }

    /// Smallest distance at which two words are adjacent, `m - 2t + 1`.
    pub fn min_adjacent_distance(&self) -> usize {
        self.m - 2 * self.t + 1
    }

    pub fn word_mask(&self) -> u64 {
        word_mask(self.m)
    }

    /// `2^m` as a vertex count, when it fits a `usize`.
    pub fn vertex_count(&self) -> Option<usize> {
        1usize.checked_shl(self.m as u32)
    }
}

pub(crate) fn word_mask(m: usize) -> u64 {
    if m >= 64 {
        !0
    } else {
        (1u64 << m) - 1
    }
}

#[inline]
pub fn distance(a: u64, b: u64) -> usize {
    (a ^ b).count_ones() as usize
}

/// Formats the low `m` bits of `w`, most significant first.
pub fn word_to_string(w: u64, m: usize) -> String {
    (0..m)
        .rev()
        .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_word(s: &str, m: usize) -> Result<u64> {
    if s.len() != m || m > MAX_M {
        return Err(Error::InvalidParameter(format!(
            "word {s:?} does not have length {m}"
        )));
    }
    s.chars().try_fold(0u64, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok(acc << 1 | 1),
        _ => Err(Error::InvalidParameter(format!(
            "word {s:?} is not a 0/1 string"
        ))),
    })
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// `sum_{i=0}^{r} C(m, i)`, the size of a radius-`r` ball.
pub fn ball_size(m: usize, r: usize) -> BigUint {
    (0..=r.min(m)).map(|i| binomial(m, i)).sum()
}

/// Independence number `sum_{i=0}^{m/2-t} C(m, i)`, attained by Hamming balls.
pub fn kleitman_alpha(spec: &HammingSpec) -> BigUint {
    ball_size(spec.m, spec.radius())
}

/// `G_{m,t}` without materialised adjacency.
#[derive(Clone, Copy, Debug)]
pub struct ImplicitHammingGraph {
    spec: HammingSpec,
}

impl ImplicitHammingGraph {
    pub fn new(spec: HammingSpec) -> Self {
        Self { spec }
    }

    pub fn spec(&self) -> &HammingSpec {
        &self.spec
    }

    #[inline]
    pub fn adjacent(&self, u: u64, v: u64) -> bool {
        distance(u, v) >= self.spec.min_adjacent_distance()
    }

    pub fn degree(&self) -> BigUint {
        (self.spec.min_adjacent_distance()..=self.spec.m)
            .map(|w| binomial(self.spec.m, w))
            .sum()
    }

    /// Neighbours of `v`, as `v XOR g` over generators `g` grouped by weight.
    pub fn neighbors(&self, v: u64) -> impl Iterator<Item = u64> + '_ {
        let m = self.spec.m;
        (self.spec.min_adjacent_distance()..=m)
            .flat_map(move |w| words_of_weight(m, w))
            .map(move |g| v ^ g)
    }
}

/// All `m`-bit words of weight `w`, in increasing numeric order.
pub fn words_of_weight(m: usize, w: usize) -> impl Iterator<Item = u64> {
    let mask = word_mask(m);
    let first = if w == 0 {
        Some(0)
    } else if w > m {
        None
    } else {
        Some(word_mask(w))
    };
    std::iter::successors(first, move |&x| {
        if x == 0 {
            return None;
        }
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x.checked_add(c)?;
        let next = (((r ^ x) >> 2) / c) | r;
        (next & !mask == 0 && next != 0).then_some(next)
    })
}

/// The explicit graph; requires `m <= 12`.
pub fn build_hamming_graph(spec: &HammingSpec) -> Result<Graph> {
    if spec.m > MAX_EXPLICIT_M {
        return Err(Error::TooLarge {
            n: 1 << spec.m.min(63),
            limit: 1 << MAX_EXPLICIT_M,
        });
    }
    let implicit = ImplicitHammingGraph::new(*spec);
    Graph::from_fn(1 << spec.m, |u, v| implicit.adjacent(u as u64, v as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HammingBall {
    pub m: usize,
    pub center: u64,
    pub radius: usize,
}

impl HammingBall {
    pub fn contains(&self, w: u64) -> bool {
        distance(self.center, w) <= self.radius
    }

    pub fn size(&self) -> BigUint {
        ball_size(self.m, self.radius)
    }

    /// Materialised membership; requires `m <= 12`.
    pub fn to_vertex_set(&self) -> Result<VertexSet> {
        if self.m > MAX_EXPLICIT_M {
            return Err(Error::TooLarge {
                n: 1 << self.m.min(63),
                limit: 1 << MAX_EXPLICIT_M,
            });
        }
        let n = 1usize << self.m;
        VertexSet::from_indices(n, (0..n).filter(|&w| self.contains(w as u64)))
    }
}

pub fn hamming_ball(spec: &HammingSpec, center: u64, radius: usize) -> Result<HammingBall> {
    if center & !spec.word_mask() != 0 {
        return Err(Error::InvalidParameter(format!(
            "center {center:#x} is not an {}-bit word",
            spec.m
        )));
    }
    if radius > spec.m {
        return Err(Error::InvalidParameter(format!(
            "radius {radius} exceeds m = {}",
            spec.m
        )));
    }
    Ok(HammingBall {
        m: spec.m,
        center,
        radius,
    })
}

/// The `2^m` balls of radius `m/2 - t`, one per centre, marked complete.
pub fn hamming_mis_family(spec: &HammingSpec) -> Result<MisFamily> {
    if spec.m > MAX_EXPLICIT_M {
        return Err(Error::TooLarge {
            n: 1 << spec.m.min(63),
            limit: 1 << MAX_EXPLICIT_M,
        });
    }
    let sets = (0..1u64 << spec.m)
        .map(|c| hamming_ball(spec, c, spec.radius())?.to_vertex_set())
        .collect::<Result<Vec<_>>>()?;
    let alpha = sets[0].len();
    let mut family = MisFamily {
        alpha,
        sets,
        complete: true,
    };
    family.canonicalize();
    Ok(family)
}
