//! Local metrics of a 3×3 configuration: topological numbers, the Hilditch
//! crossing number, and the Yokoi numbers.
//!
//! All five metrics are computed once for the 256 masks and served from
//! tables afterwards. The `compute_*` functions are the direct definitions
//! the tables are built from.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::grid::{Adjacency, NeighborhoodConfig, EVEN_BITS, NEIGHBOR_OFFSETS};

/// Number of components of the neighbor set `members` (bit `i` for `x_i`)
/// under `adjacency` that are `adjacency`-adjacent to the center. Paths run
/// through neighbors only; the center itself is excluded.
fn adjacent_components(members: u8, adjacency: Adjacency) -> u8 {
    let mut seen = 0u8;
    let mut count = 0u8;
    for start in 0..8 {
        if members & (1 << start) == 0 || seen & (1 << start) != 0 {
            continue;
        }
        let mut component = 1u8 << start;
        let mut frontier = vec![start];
        while let Some(i) = frontier.pop() {
            let (ic, ir) = NEIGHBOR_OFFSETS[i];
            for (j, &(jc, jr)) in NEIGHBOR_OFFSETS.iter().enumerate() {
                let bit = 1u8 << j;
                if members & bit != 0
                    && component & bit == 0
                    && adjacency.connects(jc - ic, jr - ir)
                {
                    component |= bit;
                    frontier.push(j);
                }
            }
        }
        seen |= component;
        // every neighbor is 8-adjacent to the center; 4-adjacency needs an
        // even-indexed member
        let touches_center = match adjacency {
            Adjacency::Eight => true,
            Adjacency::Four => component & EVEN_BITS != 0,
        };
        if touches_center {
            count += 1;
        }
    }
    count
}

/// `T_n(x, X)`: black components of the neighborhood, `n`-adjacent to `x`.
pub fn compute_topological_number(c: NeighborhoodConfig, n: Adjacency) -> u8 {
    adjacent_components(c.mask(), n)
}

/// `T_m(x, X̄)`: white components of the neighborhood, `m`-adjacent to `x`.
pub fn compute_topological_number_complement(c: NeighborhoodConfig, m: Adjacency) -> u8 {
    adjacent_components(!c.mask(), m)
}

/// Hilditch crossing number with the circular traversal starting at the
/// 4-neighbor `x_{2 * start}`.
///
/// A diagonal lying between two black 4-neighbors is skipped ("cutting the
/// angle"), then 0→1 passages are counted around the reduced cycle.
pub fn hilditch_from(c: NeighborhoodConfig, start: usize) -> u8 {
    let mut seq = [false; 8];
    let mut len = 0;
    for step in 0..8 {
        let i = (2 * start + step) % 8;
        if i % 2 == 1 && c.is_black(i - 1) && c.is_black(i + 1) {
            continue;
        }
        seq[len] = c.is_black(i);
        len += 1;
    }
    let seq = &seq[..len];
    (0..len).filter(|&k| !seq[k] && seq[(k + 1) % len]).count() as u8
}

pub fn compute_hilditch(c: NeighborhoodConfig) -> u8 {
    hilditch_from(c, 0)
}

/// Yokoi connectivity number, evaluated from its closed form.
pub fn compute_yokoi(c: NeighborhoodConfig, n: Adjacency) -> u8 {
    let p = |i: usize| -> i32 {
        let black = i32::from(c.is_black(i));
        match n {
            Adjacency::Four => black,
            Adjacency::Eight => 1 - black,
        }
    };
    let sum: i32 = [0, 2, 4, 6]
        .into_iter()
        .map(|k| p(k) - p(k) * p(k + 1) * p(k + 2))
        .sum();
    sum as u8
}

/// `n = 4`: no white 8-neighbor. `n = 8`: no white 4-neighbor.
pub fn is_interior(c: NeighborhoodConfig, n: Adjacency) -> bool {
    match n {
        Adjacency::Four => c.mask() == u8::MAX,
        Adjacency::Eight => c.mask() & EVEN_BITS == EVEN_BITS,
    }
}

/// `n = 8`: no black 8-neighbor. `n = 4`: no black 4-neighbor.
pub fn is_isolated(c: NeighborhoodConfig, n: Adjacency) -> bool {
    match n {
        Adjacency::Eight => c.mask() == 0,
        Adjacency::Four => c.mask() & EVEN_BITS == 0,
    }
}

/// Precomputed metric values for all 256 masks.
#[derive(Debug, Clone)]
pub struct MetricTables {
    pub t4: [u8; 256],
    pub t8: [u8; 256],
    pub h: [u8; 256],
    pub y4: [u8; 256],
    pub y8: [u8; 256],
}

impl MetricTables {
    pub fn build() -> Self {
        let table = |f: &dyn Fn(NeighborhoodConfig) -> u8| -> [u8; 256] {
            std::array::from_fn(|i| f(NeighborhoodConfig::new(i as u8)))
        };
        Self {
            t4: table(&|c| compute_topological_number(c, Adjacency::Four)),
            t8: table(&|c| compute_topological_number(c, Adjacency::Eight)),
            h: table(&compute_hilditch),
            y4: table(&|c| compute_yokoi(c, Adjacency::Four)),
            y8: table(&|c| compute_yokoi(c, Adjacency::Eight)),
        }
    }

    pub fn get() -> &'static MetricTables {
        static TABLES: OnceLock<MetricTables> = OnceLock::new();
        TABLES.get_or_init(MetricTables::build)
    }

    fn topological(&self, n: Adjacency) -> &[u8; 256] {
        match n {
            Adjacency::Four => &self.t4,
            Adjacency::Eight => &self.t8,
        }
    }

    fn yokoi(&self, n: Adjacency) -> &[u8; 256] {
        match n {
            Adjacency::Four => &self.y4,
            Adjacency::Eight => &self.y8,
        }
    }
}

pub fn topological_number(c: NeighborhoodConfig, n: Adjacency) -> u8 {
    MetricTables::get().topological(n)[c.index()]
}

/// The white components of `c` are the black components of its complement.
pub fn topological_number_complement(c: NeighborhoodConfig, m: Adjacency) -> u8 {
    MetricTables::get().topological(m)[c.complement().index()]
}

pub fn hilditch(c: NeighborhoodConfig) -> u8 {
    MetricTables::get().h[c.index()]
}

/// Like [`hilditch`] but rejects 4-adjacency, for which the number is not defined.
pub fn hilditch_for(c: NeighborhoodConfig, n: Adjacency) -> Result<u8> {
    match n {
        Adjacency::Eight => Ok(hilditch(c)),
        Adjacency::Four => Err(Error::HilditchRequiresEight),
    }
}

pub fn yokoi(c: NeighborhoodConfig, n: Adjacency) -> u8 {
    MetricTables::get().yokoi(n)[c.index()]
}
