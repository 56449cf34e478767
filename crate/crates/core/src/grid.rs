//! Grid conventions, binary images, and connected-component labeling.
//!
//! Coordinates are `(col, row)` with columns increasing to the right and rows
//! increasing downward. A [`BinaryImage`] is a finite window onto an infinite
//! white plane: any read outside its bounds is white.
//!
//! The eight neighbors of a point are numbered counterclockwise starting at
//! East, so even indices are the 4-neighbors and odd indices the diagonals:
//!
//! ```text
//!   3 2 1
//!   4 x 0
//!   5 6 7
//! ```

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// `(dcol, drow)` offset of neighbor `x_i`.
pub const NEIGHBOR_OFFSETS: [(i64, i64); 8] = [
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

/// Bits of the four 4-neighbors (E, N, W, S).
pub const EVEN_BITS: u8 = 0b0101_0101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PixelCoord {
    pub col: i64,
    pub row: i64,
}

impl PixelCoord {
    pub const fn new(col: i64, row: i64) -> Self {
        Self { col, row }
    }

    pub const fn offset(self, dcol: i64, drow: i64) -> Self {
        Self::new(self.col + dcol, self.row + drow)
    }

    /// City-block distance.
    pub fn d4(self, other: Self) -> u64 {
        self.col.abs_diff(other.col) + self.row.abs_diff(other.row)
    }

    /// Chessboard distance.
    pub fn d8(self, other: Self) -> u64 {
        self.col
            .abs_diff(other.col)
            .max(self.row.abs_diff(other.row))
    }
}

impl From<(i64, i64)> for PixelCoord {
    fn from((col, row): (i64, i64)) -> Self {
        Self::new(col, row)
    }
}

impl fmt::Display for PixelCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.col, self.row)
    }
}

/// 4- or 8-adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Adjacency {
    Four,
    Eight,
}

impl Adjacency {
    pub const BOTH: [Adjacency; 2] = [Adjacency::Four, Adjacency::Eight];

    /// The adjacency paired with this one for the complement.
    pub const fn dual(self) -> Self {
        match self {
            Adjacency::Four => Adjacency::Eight,
            Adjacency::Eight => Adjacency::Four,
        }
    }

    pub const fn value(self) -> u32 {
        match self {
            Adjacency::Four => 4,
            Adjacency::Eight => 8,
        }
    }

    /// Whether two distinct points at offset `(dcol, drow)` are adjacent.
    pub fn connects(self, dcol: i64, drow: i64) -> bool {
        let (a, b) = (dcol.unsigned_abs(), drow.unsigned_abs());
        match self {
            Adjacency::Four => a + b == 1,
            Adjacency::Eight => a.max(b) == 1,
        }
    }
}

impl TryFrom<u32> for Adjacency {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        match n {
            4 => Ok(Adjacency::Four),
            8 => Ok(Adjacency::Eight),
            other => Err(Error::InvalidAdjacency(other)),
        }
    }
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The pair `(n, n̄)` of adjacencies used for the object and its complement.
///
/// Only `(4, 8)` and `(8, 4)` are representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConnectivityPair {
    object: Adjacency,
}

impl ConnectivityPair {
    pub const fn new(object: Adjacency) -> Self {
        Self { object }
    }

    pub const fn object(self) -> Adjacency {
        self.object
    }

    pub const fn complement(self) -> Adjacency {
        self.object.dual()
    }
}

impl From<Adjacency> for ConnectivityPair {
    fn from(object: Adjacency) -> Self {
        Self::new(object)
    }
}

/// Neighbors of `p` at distance 1 under the given adjacency, in `x_i` order.
pub fn neighbors(p: PixelCoord, adjacency: Adjacency) -> Vec<PixelCoord> {
    NEIGHBOR_OFFSETS
        .iter()
        .enumerate()
        .filter(|(i, _)| adjacency == Adjacency::Eight || i % 2 == 0)
        .map(|(_, &(dc, dr))| p.offset(dc, dr))
        .collect()
}

/// Black/white state of the eight neighbors of a black point, bit `i` for `x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NeighborhoodConfig(u8);

impl NeighborhoodConfig {
    pub const fn new(mask: u8) -> Self {
        Self(mask)
    }

    pub const fn mask(self) -> u8 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// Whether neighbor `x_i` is black. `i` is taken modulo 8.
    pub const fn is_black(self, i: usize) -> bool {
        self.0 & (1 << (i % 8)) != 0
    }

    /// Swaps black and white on the eight neighbors; the center stays black.
    pub const fn complement(self) -> Self {
        Self(!self.0)
    }

    pub const fn black_count(self) -> u32 {
        self.0.count_ones()
    }

    /// All 256 configurations in mask order.
    pub fn all() -> impl Iterator<Item = NeighborhoodConfig> + Clone {
        (0..=u8::MAX).map(NeighborhoodConfig)
    }
}

impl From<u8> for NeighborhoodConfig {
    fn from(mask: u8) -> Self {
        Self(mask)
    }
}

impl fmt::Display for NeighborhoodConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn complement_config(c: NeighborhoodConfig) -> NeighborhoodConfig {
    c.complement()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Black,
    White,
}

impl Color {
    fn matches(self, black: bool) -> bool {
        black == (self == Color::Black)
    }
}

/// A finite binary image; `true` is black.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl BinaryImage {
    /// All-white image.
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions { width, height });
        }
        Ok(Self {
            width,
            height,
            pixels: vec![false; width * height],
        })
    }

    pub fn filled(width: usize, height: usize, black: bool) -> Result<Self> {
        let mut img = Self::new(width, height)?;
        img.pixels.fill(black);
        Ok(img)
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let mut img = Self::new(width, height)?;
        for row in 0..height {
            for col in 0..width {
                img.pixels[row * width + col] = f(col, row);
            }
        }
        Ok(img)
    }

    /// Builds an image from `#`/`.` rows (`#` is black). Other characters are
    /// rejected, rows must have equal length.
    pub fn from_ascii(rows: &[&str]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut img = Self::new(width, height)?;
        for (row, line) in rows.iter().enumerate() {
            if line.chars().count() != width {
                return Err(Error::InvalidDimensions { width, height });
            }
            for (col, ch) in line.chars().enumerate() {
                img.pixels[row * width + col] = match ch {
                    '#' => true,
                    '.' => false,
                    _ => return Err(Error::InvalidDimensions { width, height }),
                };
            }
        }
        Ok(img)
    }

    /// Independent pixels, each black with probability `density`.
    pub fn random<R: Rng + ?Sized>(
        width: usize,
        height: usize,
        density: f64,
        rng: &mut R,
    ) -> Result<Self> {
        Self::from_fn(width, height, |_, _| rng.random_bool(density))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    fn index_of(&self, p: PixelCoord) -> Option<usize> {
        let col = usize::try_from(p.col).ok()?;
        let row = usize::try_from(p.row).ok()?;
        (col < self.width && row < self.height).then(|| row * self.width + col)
    }

    pub fn contains(&self, p: PixelCoord) -> bool {
        self.index_of(p).is_some()
    }

    /// Out-of-bounds reads are white.
    pub fn is_black(&self, p: PixelCoord) -> bool {
        self.index_of(p).is_some_and(|i| self.pixels[i])
    }

    pub fn get(&self, col: usize, row: usize) -> bool {
        col < self.width && row < self.height && self.pixels[row * self.width + col]
    }

    /// Writes a pixel; out-of-bounds writes are ignored.
    pub fn set(&mut self, p: PixelCoord, black: bool) {
        if let Some(i) = self.index_of(p) {
            self.pixels[i] = black;
        }
    }

    pub fn black_count(&self) -> usize {
        self.pixels.iter().filter(|&&b| b).count()
    }

    /// Black pixel coordinates in raster order.
    pub fn black_pixels(&self) -> impl Iterator<Item = PixelCoord> + '_ {
        let width = self.width;
        self.pixels
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| PixelCoord::new((i % width) as i64, (i / width) as i64))
    }

    /// Neighborhood mask of `p` with no check on the center pixel.
    pub fn config_at(&self, p: PixelCoord) -> NeighborhoodConfig {
        let mut mask = 0u8;
        for (i, &(dc, dr)) in NEIGHBOR_OFFSETS.iter().enumerate() {
            if self.is_black(p.offset(dc, dr)) {
                mask |= 1 << i;
            }
        }
        NeighborhoodConfig(mask)
    }

    /// Renders the image as `#`/`.` rows.
    pub fn to_ascii(&self) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for row in self.pixels.chunks(self.width) {
            out.extend(row.iter().map(|&b| if b { '#' } else { '.' }));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BinaryImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryImage {}x{}", self.width, self.height)?;
        f.write_str(&self.to_ascii())
    }
}

/// Configuration of the black pixel `p`.
pub fn extract_config(img: &BinaryImage, p: PixelCoord) -> Result<NeighborhoodConfig> {
    if !img.is_black(p) {
        return Err(Error::CenterNotBlack(p));
    }
    Ok(img.config_at(p))
}

/// Paints `c` around a black center on a `size`×`size` white canvas.
/// `size` must be odd and at least 3.
pub fn paint_config(c: NeighborhoodConfig, size: usize) -> Result<(BinaryImage, PixelCoord)> {
    if size < 3 || size.is_multiple_of(2) {
        return Err(Error::InvalidCanvas(size));
    }
    let mut img = BinaryImage::new(size, size)?;
    let center = PixelCoord::new((size / 2) as i64, (size / 2) as i64);
    img.set(center, true);
    for (i, &(dc, dr)) in NEIGHBOR_OFFSETS.iter().enumerate() {
        if c.is_black(i) {
            img.set(center.offset(dc, dr), true);
        }
    }
    Ok((img, center))
}

/// Component ids for one color under one adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    width: usize,
    labels: Vec<Option<u32>>,
    count: usize,
    includes_background: bool,
}

impl Labeling {
    pub fn count(&self) -> usize {
        self.count
    }

    /// True for white labelings, where everything outside the image forms one
    /// background component (always id 0).
    pub fn includes_background(&self) -> bool {
        self.includes_background
    }

    pub fn label(&self, col: usize, row: usize) -> Option<u32> {
        if col >= self.width {
            return None;
        }
        self.labels.get(row * self.width + col).copied().flatten()
    }

    pub fn labels(&self) -> &[Option<u32>] {
        &self.labels
    }
}

/// Flood-fills `color` on the image, padded by one white ring when labeling
/// white. Returns the padded width and per-cell ids.
fn label_padded(img: &BinaryImage, adjacency: Adjacency, color: Color) -> (usize, Vec<u32>, u32) {
    let pad = usize::from(color == Color::White);
    let pw = img.width + 2 * pad;
    let ph = img.height + 2 * pad;
    let mut member = vec![color == Color::White; pw * ph];
    for (row, line) in img.pixels.chunks(img.width).enumerate() {
        let start = (row + pad) * pw + pad;
        for (cell, &black) in member[start..start + img.width].iter_mut().zip(line) {
            *cell = color.matches(black);
        }
    }

    let steps: &[(i64, i64)] = match adjacency {
        Adjacency::Four => &[(1, 0), (0, -1), (-1, 0), (0, 1)],
        Adjacency::Eight => &NEIGHBOR_OFFSETS,
    };

    const UNLABELED: u32 = u32::MAX;
    let mut ids = vec![UNLABELED; pw * ph];
    let mut stack = Vec::new();
    let mut next = 0u32;
    for start in 0..pw * ph {
        if !member[start] || ids[start] != UNLABELED {
            continue;
        }
        ids[start] = next;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (c, r) = ((i % pw) as i64, (i / pw) as i64);
            for &(dc, dr) in steps {
                let (nc, nr) = (c + dc, r + dr);
                if nc < 0 || nr < 0 || nc >= pw as i64 || nr >= ph as i64 {
                    continue;
                }
                let j = nr as usize * pw + nc as usize;
                if member[j] && ids[j] == UNLABELED {
                    ids[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    (pw, ids, next)
}

/// Labels the connected components of `color` under `adjacency`.
///
/// White is labeled on the image surrounded by one extra ring of white, so
/// every white pixel touching the border joins the single background
/// component.
pub fn label_components(img: &BinaryImage, adjacency: Adjacency, color: Color) -> Labeling {
    let pad = usize::from(color == Color::White);
    let (pw, ids, count) = label_padded(img, adjacency, color);
    let labels = (0..img.height)
        .flat_map(|r| {
            let row_start = (r + pad) * pw + pad;
            ids[row_start..row_start + img.width].iter()
        })
        .map(|&id| (id != u32::MAX).then_some(id))
        .collect();
    Labeling {
        width: img.width,
        labels,
        count: count as usize,
        includes_background: color == Color::White,
    }
}

pub fn count_components(img: &BinaryImage, adjacency: Adjacency, color: Color) -> usize {
    label_padded(img, adjacency, color).2 as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(col: i64, row: i64) -> PixelCoord {
        PixelCoord::new(col, row)
    }

    #[test]
    fn neighbor_lists() {
        assert_eq!(
            neighbors(pc(0, 0), Adjacency::Four),
            vec![pc(1, 0), pc(0, -1), pc(-1, 0), pc(0, 1)]
        );
        let eight = neighbors(pc(0, 0), Adjacency::Eight);
        let expected: Vec<_> = NEIGHBOR_OFFSETS
            .iter()
            .map(|&o| PixelCoord::from(o))
            .collect();
        assert_eq!(eight, expected);
        assert_eq!(
            neighbors(pc(5, 7), Adjacency::Four),
            vec![pc(6, 7), pc(5, 6), pc(4, 7), pc(5, 8)]
        );
    }

    #[test]
    fn neighbors_are_unit_balls() {
        let p = pc(-3, 11);
        for adj in Adjacency::BOTH {
            let got = neighbors(p, adj);
            let mut ball = Vec::new();
            for dr in -2..=2 {
                for dc in -2..=2 {
                    let q = p.offset(dc, dr);
                    let d = match adj {
                        Adjacency::Four => p.d4(q),
                        Adjacency::Eight => p.d8(q),
                    };
                    if q != p && d <= 1 {
                        ball.push(q);
                    }
                }
            }
            assert_eq!(got.len(), ball.len());
            assert!(ball.iter().all(|q| got.contains(q)));
        }
    }

    #[test]
    fn adjacency_parsing() {
        assert_eq!(Adjacency::try_from(4).unwrap(), Adjacency::Four);
        assert_eq!(Adjacency::try_from(8).unwrap(), Adjacency::Eight);
        assert_eq!(Adjacency::try_from(6), Err(Error::InvalidAdjacency(6)));
        let pair = ConnectivityPair::new(Adjacency::Four);
        assert_eq!(pair.complement(), Adjacency::Eight);
        assert_eq!(
            ConnectivityPair::from(Adjacency::Eight).complement(),
            Adjacency::Four
        );
    }

    #[test]
    fn extract_config_examples() {
        let single = BinaryImage::filled(1, 1, true).unwrap();
        assert_eq!(extract_config(&single, pc(0, 0)).unwrap().mask(), 0);

        let mut block = BinaryImage::filled(3, 3, true).unwrap();
        assert_eq!(extract_config(&block, pc(1, 1)).unwrap().mask(), 255);

        block.set(pc(2, 0), false);
        assert_eq!(extract_config(&block, pc(1, 1)).unwrap().mask(), 253);
    }

    #[test]
    fn extract_config_rejects_white_center() {
        let img = BinaryImage::new(2, 2).unwrap();
        assert_eq!(
            extract_config(&img, pc(0, 0)),
            Err(Error::CenterNotBlack(pc(0, 0)))
        );
        // out of bounds is white too
        assert!(extract_config(&img, pc(-1, 5)).is_err());
    }

    #[test]
    fn paint_then_extract_is_identity() {
        for c in NeighborhoodConfig::all() {
            for size in [3, 5, 7] {
                let (img, center) = paint_config(c, size).unwrap();
                assert_eq!(extract_config(&img, center).unwrap(), c);
            }
        }
        assert_eq!(
            paint_config(NeighborhoodConfig::new(0), 4),
            Err(Error::InvalidCanvas(4))
        );
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement_config(0.into()).mask(), 255);
        assert_eq!(complement_config(255.into()).mask(), 0);
        assert_eq!(complement_config(253.into()).mask(), 2);
        for c in NeighborhoodConfig::all() {
            assert_eq!(complement_config(complement_config(c)), c);
        }
    }

    #[test]
    fn label_examples() {
        let diag = BinaryImage::from_ascii(&["#.", ".#"]).unwrap();
        assert_eq!(count_components(&diag, Adjacency::Four, Color::Black), 2);
        assert_eq!(count_components(&diag, Adjacency::Eight, Color::Black), 1);

        let ring = BinaryImage::from_ascii(&["###", "#.#", "###"]).unwrap();
        let white = label_components(&ring, Adjacency::Four, Color::White);
        assert_eq!(white.count(), 2);
        assert!(white.includes_background());
        assert_eq!(white.label(1, 1), Some(1));
        assert_eq!(white.label(0, 0), None);
        // diagonal leaks under 8-adjacency are blocked by the ring corners
        assert_eq!(count_components(&ring, Adjacency::Eight, Color::White), 2);
    }

    #[test]
    fn count_examples() {
        let white = BinaryImage::new(4, 4).unwrap();
        assert_eq!(count_components(&white, Adjacency::Eight, Color::White), 1);
        assert_eq!(count_components(&white, Adjacency::Four, Color::Black), 0);
        let path = BinaryImage::filled(3, 1, true).unwrap();
        assert_eq!(count_components(&path, Adjacency::Four, Color::Black), 1);
        // fully black image still has the background
        assert_eq!(count_components(&path, Adjacency::Four, Color::White), 1);
    }

    #[test]
    fn background_merges_border_white() {
        let img = BinaryImage::from_ascii(&[".#.", "###", ".#."]).unwrap();
        // four white corners all touch the border
        assert_eq!(count_components(&img, Adjacency::Four, Color::White), 1);
        let lab = label_components(&img, Adjacency::Four, Color::White);
        assert!([(0, 0), (2, 0), (0, 2), (2, 2)]
            .iter()
            .all(|&(c, r)| lab.label(c, r) == Some(0)));
    }

    #[test]
    fn rejects_empty_images() {
        assert!(BinaryImage::new(0, 3).is_err());
        assert!(BinaryImage::from_ascii(&[]).is_err());
        assert!(BinaryImage::from_ascii(&["#", "##"]).is_err());
    }
}
