//! Map overlays and explored-state heatmaps as binary PPM images.
//!
//! Image pixel `(x, y)` is grid cell `(x, y)`; row 0 is the first map row.

use std::io::Cursor;

use image::codecs::pnm::{PnmEncoder, PnmSubtype, SampleEncoding};
use image::{ExtendedColorType, ImageEncoder, Rgb, RgbImage};

use crate::gridmap::GridMap;
use crate::primitives::sample_trajectory;
use crate::search::{for_each_zone_cell, PathSegment, SearchTree};

const BLACK: Rgb<u8> = Rgb([0, 0, 0]);
const WHITE: Rgb<u8> = Rgb([255, 255, 255]);
const RED: Rgb<u8> = Rgb([220, 0, 0]);
const TREE_GRAY: Rgb<u8> = Rgb([150, 150, 150]);
const ZONE_GRAY: [f64; 3] = [90.0, 90.0, 90.0];
const ZONE_FILL_ALPHA: f64 = 0.01;
const ZONE_RIM_ALPHA: f64 = 0.12;
const SAMPLE_STEP: f64 = 0.25;

/// Drawing layers, painted in the order given.
#[derive(Debug, Clone, Copy)]
pub enum Layer<'a> {
    /// Every admitted node's effective zone as a faint disc with a darker
    /// rim.
    Zones(&'a SearchTree),
    /// Every tree edge as a sampled arc.
    Tree(&'a SearchTree),
    Path(&'a [PathSegment]),
}

fn put(img: &mut RgbImage, x: f64, y: f64, c: Rgb<u8>) {
    let (ix, iy) = (x.floor(), y.floor());
    if ix >= 0.0 && iy >= 0.0 && (ix as u32) < img.width() && (iy as u32) < img.height() {
        img.put_pixel(ix as u32, iy as u32, c);
    }
}

fn blend(p: &mut Rgb<u8>, target: [f64; 3], alpha: f64) {
    for (c, t) in p.0.iter_mut().zip(target) {
        *c = (f64::from(*c) * (1.0 - alpha) + t * alpha).round() as u8;
    }
}

/// Obstacles black, free cells white, then `layers` on top.
pub fn render_overlay(map: &GridMap, layers: &[Layer<'_>]) -> RgbImage {
    let (w, h) = (map.width(), map.height());
    let mut img = RgbImage::from_fn(w as u32, h as u32, |x, y| {
        if map.cells()[y as usize * w + x as usize] {
            BLACK
        } else {
            WHITE
        }
    });
    for layer in layers {
        match layer {
            Layer::Zones(tree) => {
                for n in tree.iter() {
                    let (x, y, r) = (n.pose.x, n.pose.y, n.r_e);
                    for_each_zone_cell(x, y, r, w, h, |ix, iy| {
                        let d = (ix as f64 + 0.5 - x).hypot(iy as f64 + 0.5 - y);
                        let alpha = if d >= r - 1.0 {
                            ZONE_RIM_ALPHA
                        } else {
                            ZONE_FILL_ALPHA
                        };
                        blend(img.get_pixel_mut(ix, iy), ZONE_GRAY, alpha)
                    });
                }
            }
            Layer::Tree(tree) => {
                for n in tree.iter() {
                    let (Some(parent), Some(sp)) = (n.parent, n.via) else {
                        continue;
                    };
                    let start = tree.node(parent).pose;
                    for (x, y) in sample_trajectory(&start, &sp, SAMPLE_STEP) {
                        put(&mut img, x, y, TREE_GRAY);
                    }
                }
            }
            Layer::Path(segs) => {
                for s in segs.iter() {
                    for (x, y) in sample_trajectory(&s.start, &s.primitive, SAMPLE_STEP) {
                        put(&mut img, x, y, RED);
                    }
                }
            }
        }
    }
    img
}

/// Blue (untouched) through green to red (most compared), on
/// `log(1 + count)` normalized by the maximum.
pub fn esd_heatmap(esd: &[u64], width: usize, height: usize) -> RgbImage {
    assert_eq!(
        esd.len(),
        width * height,
        "esd length must be width * height"
    );
    let max = esd.iter().copied().max().unwrap_or(0);
    let norm = (max as f64).ln_1p();
    RgbImage::from_fn(width as u32, height as u32, |x, y| {
        let c = esd[y as usize * width + x as usize];
        if c == 0 {
            return Rgb([0, 0, 255]);
        }
        let t = (c as f64).ln_1p() / norm;
        let to_u8 = |v: f64| (v * 255.0).round() as u8;
        if t < 0.5 {
            let s = 2.0 * t;
            Rgb([0, to_u8(s), to_u8(1.0 - s)])
        } else {
            let s = 2.0 * t - 1.0;
            Rgb([to_u8(s), to_u8(1.0 - s), 0])
        }
    })
}

/// Binary PPM (`P6`, maxval 255).
pub fn write_ppm(img: &RgbImage) -> Vec<u8> {
    let mut out = Cursor::new(Vec::new());
    PnmEncoder::new(&mut out)
        .with_subtype(PnmSubtype::Pixmap(SampleEncoding::Binary))
        .write_image(
            img.as_raw(),
            img.width(),
            img.height(),
            ExtendedColorType::Rgb8,
        )
        .expect("encoding to memory cannot fail");
    out.into_inner()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::{base_primitive_set, scale_primitive, Pose};
    use crate::search::PlannerConfig;

    #[test]
    fn zero_counts_are_blue() {
        let img = esd_heatmap(&[0; 6], 3, 2);
        assert!(img.pixels().all(|p| *p == Rgb([0, 0, 255])));
    }

    #[test]
    fn single_hot_cell() {
        let mut esd = vec![0; 12];
        esd[5] = 7;
        let img = esd_heatmap(&esd, 4, 3);
        let hot: Vec<_> = img
            .enumerate_pixels()
            .filter(|(_, _, p)| **p != Rgb([0, 0, 255]))
            .collect();
        assert_eq!(hot.len(), 1);
        assert_eq!((hot[0].0, hot[0].1, *hot[0].2), (1, 1, Rgb([255, 0, 0])));
    }

    #[test]
    fn ramp_midpoint_is_green() {
        // log(1+3) / log(1+15) = 0.5
        let img = esd_heatmap(&[3, 15], 2, 1);
        assert_eq!(*img.get_pixel(0, 0), Rgb([0, 255, 0]));
    }

    #[test]
    fn plain_map() {
        let mut m = GridMap::new(3, 2).unwrap();
        m.set_obstacle(2, 1, true);
        let img = render_overlay(&m, &[]);
        assert_eq!(*img.get_pixel(2, 1), BLACK);
        assert_eq!(img.pixels().filter(|p| **p == WHITE).count(), 5);
    }

    #[test]
    fn straight_path_is_red_run() {
        let m = GridMap::new(20, 5).unwrap();
        let model = PlannerConfig::default_model();
        let straight = base_primitive_set(&model)
            .into_iter()
            .find(|p| p.is_straight())
            .unwrap();
        let sp = scale_primitive(&straight, 10.0 / straight.base_length, &model).unwrap();
        let seg = PathSegment {
            start: Pose::new(2.5, 2.5, 0.0),
            primitive: sp,
        };
        let img = render_overlay(&m, &[Layer::Path(&[seg])]);
        let red: Vec<_> = img
            .enumerate_pixels()
            .filter(|(_, _, p)| **p == RED)
            .map(|(x, y, _)| (x, y))
            .collect();
        assert_eq!(red, (2..=12).map(|x| (x, 2)).collect::<Vec<_>>());
    }

    #[test]
    fn ppm_header() {
        let img = RgbImage::from_pixel(2, 1, Rgb([1, 2, 3]));
        let bytes = write_ppm(&img);
        let (header, body) = bytes.split_at(bytes.len() - 6);
        let fields: Vec<_> = std::str::from_utf8(header)
            .unwrap()
            .split_ascii_whitespace()
            .collect();
        assert_eq!(fields, ["P6", "2", "1", "255"]);
        assert_eq!(body, [1, 2, 3, 1, 2, 3]);
    }
}
