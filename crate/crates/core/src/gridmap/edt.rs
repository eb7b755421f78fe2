//! Exact Euclidean distance transform (Felzenszwalb & Huttenlocher lower
//! envelope of parabolas), evaluated in integer arithmetic so the squared
//! distances are exact.

use super::{ClearanceMap, GridMap};

/// Marks "no obstacle in this row/column" during the separable passes.
const UNREACHED: i64 = i64::MAX;

/// Squared distance (in cells²) from every cell center to the nearest
/// obstacle center. `None` when the map holds no obstacle at all.
pub fn squared_distance_transform(map: &GridMap) -> Option<Vec<i64>> {
    let (w, h) = (map.width(), map.height());
    if map.obstacle_count() == 0 {
        return None;
    }

    // Pass 1: per column, squared vertical distance to the nearest obstacle.
    let mut cols = vec![UNREACHED; w * h];
    let mut f = vec![UNREACHED; h];
    let mut out = vec![0i64; h];
    let mut scratch = Envelope::with_capacity(h);
    for x in 0..w {
        for (y, fy) in f.iter_mut().enumerate() {
            *fy = if map.cells()[y * w + x] { 0 } else { UNREACHED };
        }
        scratch.transform(&f, &mut out);
        for y in 0..h {
            cols[y * w + x] = out[y];
        }
    }

    // Pass 2: per row, combine with horizontal offsets.
    let mut result = vec![0i64; w * h];
    let mut out = vec![0i64; w];
    let mut scratch = Envelope::with_capacity(w);
    for y in 0..h {
        let row = &cols[y * w..(y + 1) * w];
        scratch.transform(row, &mut out);
        result[y * w..(y + 1) * w].copy_from_slice(&out);
    }
    Some(result)
}

/// Clearance map of `map`. On an obstacle-free map every cell holds
/// [`ClearanceMap::sentinel`].
pub fn distance_transform(map: &GridMap) -> ClearanceMap {
    let (w, h) = (map.width(), map.height());
    let dist = match squared_distance_transform(map) {
        Some(sq) => sq.into_iter().map(|d| (d as f64).sqrt()).collect(),
        None => vec![(w + h) as f64; w * h],
    };
    ClearanceMap::from_raw(w, h, dist)
}

/// Reusable buffers for the 1D lower-envelope transform.
struct Envelope {
    /// Parabola apex positions.
    sites: Vec<usize>,
    /// Left boundary of each parabola's region, as a rational `num / den`
    /// (`None` = minus infinity).
    bounds: Vec<Option<(i64, i64)>>,
}

impl Envelope {
    fn with_capacity(n: usize) -> Self {
        Self {
            sites: Vec::with_capacity(n),
            bounds: Vec::with_capacity(n),
        }
    }

    /// `out[q] = min_p f[p] + (q - p)^2` over sites with finite `f`.
    fn transform(&mut self, f: &[i64], out: &mut [i64]) {
        self.sites.clear();
        self.bounds.clear();
        let n = f.len();
        for q in 0..n {
            if f[q] == UNREACHED {
                continue;
            }
            loop {
                let Some(&v) = self.sites.last() else {
                    self.sites.push(q);
                    self.bounds.push(None);
                    break;
                };
                // Intersection of parabolas at v and q: s = num / den.
                let num = (f[q] + (q * q) as i64) - (f[v] + (v * v) as i64);
                let den = 2 * (q as i64 - v as i64);
                let dominated = match *self.bounds.last().unwrap() {
                    None => false,
                    // s <= z  <=>  num * zden <= znum * den  (both dens > 0)
                    Some((znum, zden)) => num * zden <= znum * den,
                };
                if dominated {
                    self.sites.pop();
                    self.bounds.pop();
                } else {
                    self.sites.push(q);
                    self.bounds.push(Some((num, den)));
                    break;
                }
            }
        }
        if self.sites.is_empty() {
            out.iter_mut().for_each(|o| *o = UNREACHED);
            return;
        }
        let mut k = 0;
        for (q, o) in out.iter_mut().enumerate() {
            // Advance while the next region starts at or before q.
            while k + 1 < self.sites.len() {
                let (znum, zden) = self.bounds[k + 1].unwrap();
                if znum <= q as i64 * zden {
                    k += 1;
                } else {
                    break;
                }
            }
            let p = self.sites[k];
            let d = q as i64 - p as i64;
            *o = f[p] + d * d;
        }
    }
}
