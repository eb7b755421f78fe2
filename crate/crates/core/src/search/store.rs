use super::for_each_zone_run;

/// Best known path cost per lattice state, plus per-cell exploration
/// counters (how often any heading of a cell was compared against).
#[derive(Debug, Clone)]
pub struct GCostStore {
    width: usize,
    height: usize,
    g: Vec<f64>,
    esd: Vec<u64>,
    writes: u64,
}

impl GCostStore {
    pub fn new(width: usize, height: usize, headings: u32) -> Self {
        Self {
            width,
            height,
            g: vec![f64::INFINITY; width * height * headings as usize],
            esd: vec![0; width * height],
            writes: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub(crate) fn flat(&self, ix: u32, iy: u32, k: u32) -> usize {
        // Heading-major, so a zone row of one heading is contiguous.
        (k as usize * self.height + iy as usize) * self.width + ix as usize
    }

    pub fn get(&self, ix: u32, iy: u32, k: u32) -> f64 {
        self.g[self.flat(ix, iy, k)]
    }

    /// Counts a comparison that does not write (admission test of a child).
    #[inline]
    pub(crate) fn probe(&mut self, ix: u32, iy: u32, k: u32) -> f64 {
        self.esd[iy as usize * self.width + ix as usize] += 1;
        self.get(ix, iy, k)
    }

    /// Stamps `g` onto every same-heading state in the zone of radius `r_e`
    /// around `(x, y)` wherever it improves the stored cost. `on_write` sees
    /// `(ix, iy, old, new)` for each overwrite. Returns the overwrite count.
    pub fn zone_update(
        &mut self,
        x: f64,
        y: f64,
        k: u32,
        r_e: f64,
        g: f64,
        mut on_write: impl FnMut(u32, u32, f64, f64),
    ) -> usize {
        let mut updated = 0;
        let (w, h) = (self.width, self.height);
        for_each_zone_run(x, y, r_e, w, h, |iy, lo, hi| {
            let (lo, hi) = (lo as usize, hi as usize);
            let esd_row = iy as usize * w;
            for c in &mut self.esd[esd_row + lo..=esd_row + hi] {
                *c += 1;
            }
            let g_row = (k as usize * h + iy as usize) * w;
            for (ix, cell) in (lo..).zip(&mut self.g[g_row + lo..=g_row + hi]) {
                let old = *cell;
                if g < old {
                    *cell = g;
                    updated += 1;
                    on_write(ix as u32, iy, old, g);
                }
            }
        });
        self.writes += updated as u64;
        updated
    }

    pub fn writes(&self) -> u64 {
        self.writes
    }

    /// Per-cell comparison counts, row-major.
    pub fn esd(&self) -> &[u64] {
        &self.esd
    }

    pub(crate) fn into_esd(self) -> Vec<u64> {
        self.esd
    }
}
