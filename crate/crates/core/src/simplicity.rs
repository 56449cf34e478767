//! Simple-point classification.
//!
//! A black point is `n`-simple when turning it white changes neither the
//! number of `n`-components of black nor the number of `n̄`-components of
//! white. Four local characterizations decide this from the configuration
//! alone; [`oracle_is_simple`] decides it by counting components on a painted
//! canvas, and is what the local rules are checked against.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::grid::{
    count_components, extract_config, paint_config, Adjacency, BinaryImage, Color,
    NeighborhoodConfig, PixelCoord,
};
use crate::metrics::{
    hilditch, is_interior, topological_number, topological_number_complement, yokoi,
};

/// Side of the canvas the oracle paints configurations onto.
pub const DEFAULT_ORACLE_CANVAS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Characterization {
    /// `T_n(x, X) = 1` and `T_n̄(x, X̄) = 1`.
    TwoTopologicalNumbers,
    /// `T_n(x, X) = 1` and `x` is not `n`-interior.
    TopologicalNumberAndInterior,
    /// `H(x, X) = 1`; 8-adjacency only.
    Hilditch,
    /// `Y_n(x, X) = 1`.
    Yokoi,
    /// Global component counts before and after deletion.
    Oracle,
}

impl Characterization {
    pub const ALL: [Characterization; 5] = [
        Characterization::TwoTopologicalNumbers,
        Characterization::TopologicalNumberAndInterior,
        Characterization::Hilditch,
        Characterization::Yokoi,
        Characterization::Oracle,
    ];

    pub fn supports(self, n: Adjacency) -> bool {
        self != Characterization::Hilditch || n == Adjacency::Eight
    }

    pub fn name(self) -> &'static str {
        match self {
            Characterization::TwoTopologicalNumbers => "two-topological-numbers",
            Characterization::TopologicalNumberAndInterior => "topological-number-interior",
            Characterization::Hilditch => "hilditch",
            Characterization::Yokoi => "yokoi",
            Characterization::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Characterization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Characterization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Characterization::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown characterization {s:?}"))
    }
}

pub fn is_simple(c: NeighborhoodConfig, n: Adjacency, method: Characterization) -> Result<bool> {
    Ok(match method {
        Characterization::TwoTopologicalNumbers => {
            topological_number(c, n) == 1 && topological_number_complement(c, n.dual()) == 1
        }
        Characterization::TopologicalNumberAndInterior => {
            topological_number(c, n) == 1 && !is_interior(c, n)
        }
        Characterization::Hilditch => {
            if n != Adjacency::Eight {
                return Err(Error::HilditchRequiresEight);
            }
            hilditch(c) == 1
        }
        Characterization::Yokoi => yokoi(c, n) == 1,
        Characterization::Oracle => oracle_is_simple(c, n),
    })
}

/// Whether deleting `p` from `img` leaves both global component counts
/// unchanged. `p` must be black.
pub fn deletion_preserves_topology(img: &BinaryImage, p: PixelCoord, n: Adjacency) -> Result<bool> {
    if !img.is_black(p) {
        return Err(Error::CenterNotBlack(p));
    }
    let black = count_components(img, n, Color::Black);
    let white = count_components(img, n.dual(), Color::White);
    let mut after = img.clone();
    after.set(p, false);
    Ok(black == count_components(&after, n, Color::Black)
        && white == count_components(&after, n.dual(), Color::White))
}

/// Brute-force simplicity on a `canvas`×`canvas` painting of `c`.
pub fn oracle_is_simple_on_canvas(
    c: NeighborhoodConfig,
    n: Adjacency,
    canvas: usize,
) -> Result<bool> {
    let (img, center) = paint_config(c, canvas)?;
    deletion_preserves_topology(&img, center, n)
}

pub fn oracle_is_simple(c: NeighborhoodConfig, n: Adjacency) -> bool {
    oracle_is_simple_on_canvas(c, n, DEFAULT_ORACLE_CANVAS)
        .expect("default canvas is valid and its center is black")
}

/// 256-entry simple-point table for one adjacency.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicityLut {
    n: Adjacency,
    bits: [u64; 4],
}

impl SimplicityLut {
    pub fn from_fn(n: Adjacency, mut f: impl FnMut(NeighborhoodConfig) -> bool) -> Self {
        let mut bits = [0u64; 4];
        for c in NeighborhoodConfig::all() {
            if f(c) {
                bits[c.index() / 64] |= 1 << (c.index() % 64);
            }
        }
        Self { n, bits }
    }

    pub fn adjacency(&self) -> Adjacency {
        self.n
    }

    pub fn get(&self, c: NeighborhoodConfig) -> bool {
        self.bits[c.index() / 64] & (1 << (c.index() % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn simple_configs(&self) -> impl Iterator<Item = NeighborhoodConfig> + '_ {
        NeighborhoodConfig::all().filter(|&c| self.get(c))
    }

    /// Masks on which `self` and `other` disagree.
    pub fn diff(&self, other: &SimplicityLut) -> Vec<NeighborhoodConfig> {
        NeighborhoodConfig::all()
            .filter(|&c| self.get(c) != other.get(c))
            .collect()
    }

    /// 256 characters of `0`/`1`, mask 0 first.
    pub fn to_bit_string(&self) -> String {
        NeighborhoodConfig::all()
            .map(|c| if self.get(c) { '1' } else { '0' })
            .collect()
    }

    /// 32 bytes as lowercase hex; bit `i` of byte `j` is mask `8j + i`.
    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_bytes(&self) -> [u8; 32] {
        let mut out = [0u8; 32];
        for (j, byte) in out.iter_mut().enumerate() {
            *byte = (self.bits[j / 8] >> ((j % 8) * 8)) as u8;
        }
        out
    }
}

impl fmt::Debug for SimplicityLut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicityLut")
            .field("n", &self.n)
            .field("hex", &self.to_hex())
            .finish()
    }
}

pub fn build_lut(n: Adjacency, method: Characterization) -> Result<SimplicityLut> {
    if !method.supports(n) {
        return Err(Error::HilditchRequiresEight);
    }
    // method support was checked above, so no mask can fail
    Ok(SimplicityLut::from_fn(n, |c| {
        is_simple(c, n, method).unwrap_or(false)
    }))
}

/// The production classifier, built from one topological number plus the
/// interior test.
pub fn lut(n: Adjacency) -> &'static SimplicityLut {
    static LUT4: OnceLock<SimplicityLut> = OnceLock::new();
    static LUT8: OnceLock<SimplicityLut> = OnceLock::new();
    let cell = match n {
        Adjacency::Four => &LUT4,
        Adjacency::Eight => &LUT8,
    };
    cell.get_or_init(|| {
        build_lut(n, Characterization::TopologicalNumberAndInterior)
            .expect("supported for both adjacencies")
    })
}

/// LUT classification of the black pixel `p`.
pub fn image_is_simple(img: &BinaryImage, p: PixelCoord, n: Adjacency) -> Result<bool> {
    Ok(lut(n).get(extract_config(img, p)?))
}

/// Black pixels whose LUT classification disagrees with the global
/// before/after component comparison.
pub fn locality_mismatches(img: &BinaryImage, n: Adjacency) -> Vec<PixelCoord> {
    let table = lut(n);
    let black = count_components(img, n, Color::Black);
    let white = count_components(img, n.dual(), Color::White);
    let mut scratch = img.clone();
    img.black_pixels()
        .filter(|&p| {
            scratch.set(p, false);
            let global = black == count_components(&scratch, n, Color::Black)
                && white == count_components(&scratch, n.dual(), Color::White);
            scratch.set(p, true);
            global != table.get(img.config_at(p))
        })
        .collect()
}
