//! Sequential thinning by repeated deletion of simple points.
//!
//! Pixels are visited in scan order and deleted immediately when simple, so
//! each deletion sees the image left by the previous one. Passes repeat until
//! one deletes nothing. The result depends on scan order.

use std::fmt;

use crate::error::{Error, Result};
use crate::grid::{
    count_components, Adjacency, BinaryImage, Color, NeighborhoodConfig, PixelCoord,
};
use crate::simplicity::lut;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanOrder {
    #[default]
    Raster,
    ReverseRaster,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThinningPolicy {
    pub n: Adjacency,
    /// Keep pixels with exactly one black neighbor.
    pub preserve_endpoints: bool,
    pub scan_order: ScanOrder,
}

impl ThinningPolicy {
    pub fn new(n: Adjacency) -> Self {
        Self {
            n,
            preserve_endpoints: false,
            scan_order: ScanOrder::Raster,
        }
    }

    pub fn with_endpoints(mut self, preserve: bool) -> Self {
        self.preserve_endpoints = preserve;
        self
    }

    pub fn with_scan_order(mut self, order: ScanOrder) -> Self {
        self.scan_order = order;
        self
    }

    /// Whether a black pixel with configuration `c` may be deleted.
    pub fn deletable(&self, c: NeighborhoodConfig) -> bool {
        lut(self.n).get(c) && !(self.preserve_endpoints && is_endpoint(c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ThinningReport {
    /// Passes that deleted at least one pixel.
    pub iterations: usize,
    pub deleted: usize,
    pub black_components_before: usize,
    pub black_components_after: usize,
    pub white_components_before: usize,
    pub white_components_after: usize,
}

impl ThinningReport {
    pub fn preserved(&self) -> bool {
        self.black_components_before == self.black_components_after
            && self.white_components_before == self.white_components_after
    }

    pub fn check(&self) -> Result<()> {
        if self.preserved() {
            Ok(())
        } else {
            Err(Error::TopologyChanged {
                black_before: self.black_components_before,
                black_after: self.black_components_after,
                white_before: self.white_components_before,
                white_after: self.white_components_after,
            })
        }
    }
}

impl fmt::Display for ThinningReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "iterations: {}", self.iterations)?;
        writeln!(f, "deleted: {}", self.deleted)?;
        writeln!(
            f,
            "black components: {} -> {}",
            self.black_components_before, self.black_components_after
        )?;
        writeln!(
            f,
            "white components: {} -> {}",
            self.white_components_before, self.white_components_after
        )?;
        write!(
            f,
            "topology: {}",
            if self.preserved() {
                "preserved"
            } else {
                "CHANGED"
            }
        )
    }
}

/// Exactly one black neighbor among the eight.
pub fn is_endpoint(c: NeighborhoodConfig) -> bool {
    c.black_count() == 1
}

/// Compares `n`-components of black and `n̄`-components of white.
pub fn audit(before: &BinaryImage, after: &BinaryImage, n: Adjacency) -> ThinningReport {
    ThinningReport {
        black_components_before: count_components(before, n, Color::Black),
        black_components_after: count_components(after, n, Color::Black),
        white_components_before: count_components(before, n.dual(), Color::White),
        white_components_after: count_components(after, n.dual(), Color::White),
        ..ThinningReport::default()
    }
}

pub fn thin(img: &BinaryImage, policy: ThinningPolicy) -> (BinaryImage, ThinningReport) {
    thin_observed(img, policy, |_, _| {})
}

/// Runs [`thin`], calling `observer` with the image right after each deletion.
pub fn thin_observed(
    img: &BinaryImage,
    policy: ThinningPolicy,
    mut observer: impl FnMut(&BinaryImage, PixelCoord),
) -> (BinaryImage, ThinningReport) {
    let mut out = img.clone();
    let (w, h) = (img.width(), img.height());
    let order: Vec<PixelCoord> = {
        let raster = (0..h).flat_map(|r| (0..w).map(move |c| PixelCoord::new(c as i64, r as i64)));
        match policy.scan_order {
            ScanOrder::Raster => raster.collect(),
            ScanOrder::ReverseRaster => {
                let mut v: Vec<_> = raster.collect();
                v.reverse();
                v
            }
        }
    };

    let mut iterations = 0;
    let mut deleted = 0;
    loop {
        let mut pass_deleted = 0;
        for &p in &order {
            if out.is_black(p) && policy.deletable(out.config_at(p)) {
                out.set(p, false);
                pass_deleted += 1;
                observer(&out, p);
            }
        }
        if pass_deleted == 0 {
            break;
        }
        iterations += 1;
        deleted += pass_deleted;
    }

    let report = ThinningReport {
        iterations,
        deleted,
        ..audit(img, &out, policy.n)
    };
    (out, report)
}

/// Black pixels of `img` that `policy` would still delete.
pub fn remaining_deletable(img: &BinaryImage, policy: ThinningPolicy) -> Vec<PixelCoord> {
    img.black_pixels()
        .filter(|&p| policy.deletable(img.config_at(p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Adjacency::{Eight, Four};

    #[test]
    fn endpoint_examples() {
        assert!(is_endpoint(NeighborhoodConfig::new(4)));
        assert!(!is_endpoint(NeighborhoodConfig::new(0)));
        assert!(!is_endpoint(NeighborhoodConfig::new(5)));
    }

    #[test]
    fn white_image_unchanged() {
        let img = BinaryImage::new(5, 4).unwrap();
        let (out, report) = thin(&img, ThinningPolicy::new(Eight));
        assert_eq!(out, img);
        assert_eq!(report.iterations, 0);
        assert_eq!(report.deleted, 0);
    }

    #[test]
    fn single_pixel_unchanged() {
        let img = BinaryImage::filled(1, 1, true).unwrap();
        for n in Adjacency::BOTH {
            let (out, report) = thin(&img, ThinningPolicy::new(n));
            assert_eq!(out, img);
            assert_eq!(report.deleted, 0);
        }
    }

    #[test]
    fn block_thins_to_one_pixel() {
        let img = BinaryImage::filled(3, 3, true).unwrap();
        let mut steps = 0;
        let (out, report) = thin_observed(&img, ThinningPolicy::new(Eight), |current, _| {
            steps += 1;
            assert!(audit(&img, current, Eight).preserved());
        });
        assert_eq!(out.black_count(), 1);
        assert_eq!(steps, 8);
        assert_eq!(report.deleted, 8);
        assert_eq!(
            (report.black_components_after, report.white_components_after),
            (1, 1)
        );
        assert!(report.check().is_ok());
    }

    #[test]
    fn audit_examples() {
        let img = BinaryImage::from_ascii(&["##.", "#.#", ".##"]).unwrap();
        assert!(audit(&img, &img, Four).preserved());

        let block = BinaryImage::filled(3, 3, true).unwrap();
        let dot = BinaryImage::from_ascii(&["...", ".#.", "..."]).unwrap();
        let r = audit(&block, &dot, Eight);
        assert_eq!(
            (r.black_components_before, r.black_components_after),
            (1, 1)
        );
        assert_eq!(
            (r.white_components_before, r.white_components_after),
            (1, 1)
        );

        let diag = BinaryImage::from_ascii(&["#.", ".#"]).unwrap();
        let half = BinaryImage::from_ascii(&["#.", ".."]).unwrap();
        let r = audit(&diag, &half, Four);
        assert_eq!(
            (r.black_components_before, r.black_components_after),
            (2, 1)
        );
        assert!(matches!(r.check(), Err(Error::TopologyChanged { .. })));
    }

    #[test]
    fn endpoints_keep_line_ends() {
        let line = BinaryImage::from_ascii(&["#####"]).unwrap();
        let policy = ThinningPolicy::new(Eight).with_endpoints(true);
        let (out, report) = thin(&line, policy);
        assert_eq!(out, line);
        assert_eq!(report.deleted, 0);

        let (out, _) = thin(&line, ThinningPolicy::new(Eight));
        assert_eq!(out.black_count(), 1);
    }

    #[test]
    fn fixpoint_and_ring() {
        let ring = BinaryImage::from_ascii(&["#####", "#####", "##.##", "#####", "#####"]).unwrap();
        for n in Adjacency::BOTH {
            for order in [ScanOrder::Raster, ScanOrder::ReverseRaster] {
                let policy = ThinningPolicy::new(n).with_scan_order(order);
                let (out, report) = thin(&ring, policy);
                assert!(report.preserved(), "{report}");
                assert_eq!(report.white_components_after, 2);
                assert!(remaining_deletable(&out, policy).is_empty());
            }
        }
    }
}
