use super::LabelGrid;

/// A 4-connected set of pixels.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub size: usize,
    /// Pixel indices, row-major.
    pub pixels: Vec<usize>,
    pub touches_edge: bool,
}

/// 4-connected components of the pixels satisfying `pred`, largest first.
pub fn components<L: Copy>(grid: &LabelGrid<L>, pred: impl Fn(usize, L) -> bool) -> Vec<Component> {
    let (w, h) = (grid.width, grid.height);
    let mask: Vec<bool> = grid.labels.iter().enumerate().map(|(k, &l)| pred(k, l)).collect();
    let mut seen = vec![false; w * h];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..w * h {
        if !mask[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut pixels = Vec::new();
        let mut edge = false;
        while let Some(k) = stack.pop() {
            pixels.push(k);
            let (i, j) = (k % w, k / w);
            edge |= i == 0 || j == 0 || i == w - 1 || j == h - 1;
            let mut visit = |n: usize| {
                if mask[n] && !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            };
            if i > 0 {
                visit(k - 1);
            }
            if i + 1 < w {
                visit(k + 1);
            }
            if j > 0 {
                visit(k - w);
            }
            if j + 1 < h {
                visit(k + w);
            }
        }
        pixels.sort_unstable();
        out.push(Component {
            size: pixels.len(),
            pixels,
            touches_edge: edge,
        });
    }
    out.sort_by(|a, b| b.size.cmp(&a.size).then(a.pixels[0].cmp(&b.pixels[0])));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_blocks() {
        #[rustfmt::skip]
        let labels = vec![
            1, 1, 0, 0,
            1, 0, 0, 1,
            0, 0, 1, 1,
            1, 0, 0, 0,
        ];
        let g = LabelGrid {
            width: 4,
            height: 4,
            labels,
        };
        let c = components(&g, |_, l| l == 1);
        assert_eq!(c.iter().map(|c| c.size).collect::<Vec<_>>(), vec![3, 3, 1]);
        // diagonal contact does not connect
        let c0 = components(&g, |_, l| l == 0);
        assert_eq!(c0.len(), 1);
    }
}

/// Components below this fraction of the frame are sub-pixel fragments of
/// regions pinched at a tangency.
pub const FRAGMENT_FRACTION: f64 = 1e-4;

/// Component structure of the lifted partition.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LiftedStructure {
    /// Components of the lifted rank-0 tile above the fragment size.
    pub rank0_regions: usize,
    pub rank0_fragments: usize,
    pub rank0_touches_edge: bool,
    /// Non-escaping components (band around the circle removed) by side.
    pub k_inside: usize,
    pub k_outside: usize,
    /// Components meeting both sides; zero when the circle splits K.
    pub k_straddling: usize,
}

impl LiftedStructure {
    /// One rank-0 region reaching the frame edge, and `K̃` split by the circle
    /// into nonempty parts on each side.
    pub fn matches_figure(&self) -> bool {
        self.rank0_regions == 1
            && self.rank0_touches_edge
            && self.k_straddling == 0
            && self.k_inside > 0
            && self.k_outside > 0
    }
}

/// `band` is the half-width, in pixels, of the annulus around the unit
/// circle removed before splitting the non-escaping set.
pub fn lifted_structure(
    grid: &LabelGrid<crate::quadrature::TileLabel>,
    cfg: &super::RenderConfig,
    band: f64,
) -> LiftedStructure {
    use crate::quadrature::TileLabel;
    let min = ((grid.labels.len() as f64) * FRAGMENT_FRACTION).ceil() as usize;
    let r0 = components(grid, |_, l| l == TileLabel::TileRank(0));
    let (big, small): (Vec<_>, Vec<_>) = r0.iter().partition(|c| c.size >= min);
    let w = grid.width;
    let h = band * cfg.pixel_size();
    let modulus = |k: usize| cfg.point(k % w, k / w).norm();
    let k = components(grid, |idx, l| {
        matches!(l, TileLabel::NonEscaping(_)) && (modulus(idx) - 1.0).abs() > h
    });
    let (mut inside, mut outside, mut both) = (0, 0, 0);
    for c in &k {
        let n_in = c.pixels.iter().filter(|&&p| modulus(p) < 1.0).count();
        match (n_in > 0, n_in < c.size) {
            (true, true) => both += 1,
            (true, false) => inside += 1,
            _ => outside += 1,
        }
    }
    LiftedStructure {
        rank0_regions: big.len(),
        rank0_fragments: small.len(),
        rank0_touches_edge: big.first().is_some_and(|c| c.touches_edge),
        k_inside: inside,
        k_outside: outside,
        k_straddling: both,
    }
}
