use proptest::prelude::*;

use topo2d::config_spec::{format_bits, format_glyph, parse_config};
use topo2d::grid::paint_config;
use topo2d::metrics::hilditch_from;
use topo2d::pbm::{read_pbm, write_pbm, PbmVariant};
use topo2d::simplicity::{locality_mismatches, lut};
use topo2d::thinning::{remaining_deletable, thin, thin_observed, ScanOrder};
use topo2d::{
    audit, count_components, extract_config, label_components, Adjacency, BinaryImage, Color,
    NeighborhoodConfig, ThinningPolicy,
};

fn image(max_w: usize, max_h: usize) -> impl Strategy<Value = BinaryImage> {
    (1..=max_w, 1..=max_h).prop_flat_map(|(w, h)| {
        proptest::collection::vec(any::<bool>(), w * h)
            .prop_map(move |px| BinaryImage::from_fn(w, h, |c, r| px[r * w + c]).unwrap())
    })
}

fn adjacency() -> impl Strategy<Value = Adjacency> {
    prop_oneof![Just(Adjacency::Four), Just(Adjacency::Eight)]
}

fn policy() -> impl Strategy<Value = ThinningPolicy> {
    (adjacency(), any::<bool>(), any::<bool>()).prop_map(|(n, endpoints, reverse)| {
        ThinningPolicy::new(n)
            .with_endpoints(endpoints)
            .with_scan_order(if reverse {
                ScanOrder::ReverseRaster
            } else {
                ScanOrder::Raster
            })
    })
}

fn pad(img: &BinaryImage, left: usize, top: usize, right: usize, bottom: usize) -> BinaryImage {
    BinaryImage::from_fn(
        img.width() + left + right,
        img.height() + top + bottom,
        |c, r| c >= left && r >= top && img.get(c - left, r - top),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn eight_components_never_outnumber_four(img in image(12, 12)) {
        prop_assert!(
            count_components(&img, Adjacency::Eight, Color::Black)
                <= count_components(&img, Adjacency::Four, Color::Black)
        );
    }

    #[test]
    fn counts_survive_white_padding(
        img in image(10, 10),
        margins in (0usize..3, 0usize..3, 0usize..3, 0usize..3),
    ) {
        let padded = pad(&img, margins.0, margins.1, margins.2, margins.3);
        for n in Adjacency::BOTH {
            for color in [Color::Black, Color::White] {
                prop_assert_eq!(
                    count_components(&img, n, color),
                    count_components(&padded, n, color)
                );
            }
        }
    }

    #[test]
    fn labels_are_contiguous_partition(img in image(10, 10), n in adjacency(), white in any::<bool>()) {
        let color = if white { Color::White } else { Color::Black };
        let lab = label_components(&img, n, color);
        let mut seen = vec![false; lab.count()];
        for r in 0..img.height() {
            for c in 0..img.width() {
                let is_color = img.get(c, r) == (color == Color::Black);
                let label = lab.label(c, r);
                prop_assert_eq!(label.is_some(), is_color);
                if let Some(id) = label {
                    seen[id as usize] = true;
                    // neighbors of the same color share the id
                    for (dc, dr) in [(1i64, 0i64), (0, 1), (1, 1), (-1, 1)] {
                        if !n.connects(dc, dr) {
                            continue;
                        }
                        let (nc, nr) = (c as i64 + dc, r as i64 + dr);
                        if nc >= 0 && (nc as usize) < img.width() && (nr as usize) < img.height() {
                            let other = lab.label(nc as usize, nr as usize);
                            if other.is_some() {
                                prop_assert_eq!(other, label);
                            }
                        }
                    }
                }
            }
        }
        // white ids other than the background may be unused only if they
        // live entirely in the padding, which is id 0
        let unused = seen.iter().filter(|s| !**s).count();
        prop_assert!(unused == 0 || (white && unused == 1 && !seen[0]));
    }

    #[test]
    fn lut_agrees_with_global_check(img in image(12, 12), n in adjacency()) {
        prop_assert!(locality_mismatches(&img, n).is_empty());
    }

    #[test]
    fn thinning_preserves_topology_and_reaches_fixpoint(img in image(14, 14), policy in policy()) {
        let (out, report) = thin(&img, policy);
        prop_assert!(report.preserved(), "{}", report);
        prop_assert_eq!(report.deleted, img.black_count() - out.black_count());
        prop_assert!(remaining_deletable(&out, policy).is_empty());
        let recheck = audit(&img, &out, policy.n);
        prop_assert!(recheck.preserved());
    }

    #[test]
    fn thinning_is_deterministic(img in image(10, 10), policy in policy()) {
        prop_assert_eq!(thin(&img, policy), thin(&img, policy));
    }

    #[test]
    fn every_single_deletion_preserves_topology(img in image(8, 8), n in adjacency()) {
        let mut ok = true;
        let mut previous = img.clone();
        thin_observed(&img, ThinningPolicy::new(n), |current, _| {
            ok &= audit(&previous, current, n).preserved();
            previous = current.clone();
        });
        prop_assert!(ok);
    }

    #[test]
    fn pbm_round_trip(img in image(40, 12)) {
        for variant in [PbmVariant::Plain, PbmVariant::Raw] {
            prop_assert_eq!(&read_pbm(&write_pbm(&img, variant)).unwrap(), &img);
        }
    }

    #[test]
    fn config_text_forms_round_trip(mask in any::<u8>()) {
        let c = NeighborhoodConfig::new(mask);
        prop_assert_eq!(parse_config(&mask.to_string()).unwrap(), c);
        prop_assert_eq!(parse_config(&format_bits(c)).unwrap(), c);
        prop_assert_eq!(parse_config(&format_glyph(c)).unwrap(), c);
    }

    #[test]
    fn hilditch_start_invariance(mask in any::<u8>()) {
        let c = NeighborhoodConfig::new(mask);
        let h = hilditch_from(c, 0);
        for start in 1..4 {
            prop_assert_eq!(hilditch_from(c, start), h);
        }
    }

    #[test]
    fn painted_config_extracts_back(mask in any::<u8>(), half in 1usize..4) {
        let c = NeighborhoodConfig::new(mask);
        let (img, center) = paint_config(c, 2 * half + 1).unwrap();
        prop_assert_eq!(extract_config(&img, center).unwrap(), c);
    }
}

#[test]
fn thinned_blocks_keep_no_simple_pixel() {
    for side in 3..=10 {
        let block = BinaryImage::filled(side, side, true).unwrap();
        for n in Adjacency::BOTH {
            let (out, report) = thin(&block, ThinningPolicy::new(n));
            assert!(report.preserved());
            assert!(out.black_pixels().all(|p| !lut(n).get(out.config_at(p))));
        }
    }
}
