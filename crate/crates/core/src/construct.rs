//! Explicit prism labelings and the inductive extension to `C_{4k} x P_m`.
//!
//! Three families are covered, indexed by a multiplier `c in {1, 2, 4}`: the
//! labeling of `C_{4k} x P_m` is `c(2m-1)`-divisible and every induction step
//! shifts the old layers by `s = 4k + c` and writes a fixed pattern on the new
//! top layer. The prism labelings with `d = 3, 6, 12` are the base cases.

use std::fmt;

use crate::check::{check_alpha, check_d_graceful};
use crate::error::{Error, Result};
use crate::grid::{build_grid, Graph, GridGraph};
use crate::labeling::Labeling;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Which of the three inductive families to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `d = 2m - 1`, shift `4k + 1`.
    F1,
    /// `d = 2(2m - 1)`, shift `4k + 2`.
    F2,
    /// `d = 4(2m - 1)`, shift `4k + 4`; the pattern depends on the parity of `k`.
    F4(Parity),
}

impl Family {
    /// The family with multiplier `c in {1, 2, 4}`, tagged for `k` when needed.
    pub fn with_multiplier(c: u64, k: usize) -> Result<Self> {
        match c {
            1 => Ok(Family::F1),
            2 => Ok(Family::F2),
            4 => Ok(Family::F4(Parity::of(k))),
            _ => Err(Error::InvalidParameters(format!(
                "family multiplier must be 1, 2 or 4, got {c}"
            ))),
        }
    }

    pub fn multiplier(self) -> u64 {
        match self {
            Family::F1 => 1,
            Family::F2 => 2,
            Family::F4(_) => 4,
        }
    }

    pub fn shift(self, k: usize) -> u64 {
        4 * k as u64 + self.multiplier()
    }

    /// `d` for a grid with `m` layers.
    pub fn divisor(self, m: usize) -> u64 {
        self.multiplier() * (2 * m as u64 - 1)
    }

    pub fn base_variant(self) -> PrismVariant {
        match self {
            Family::F1 => PrismVariant::D3,
            Family::F2 => PrismVariant::D6,
            Family::F4(_) => PrismVariant::D12,
        }
    }

    fn check_parity(self, k: usize) -> Result<()> {
        match self {
            Family::F4(p) if p != Parity::of(k) => Err(Error::InvalidParameters(format!(
                "F4 tagged {p:?} but k = {k}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::F1 => f.write_str("F1"),
            Family::F2 => f.write_str("F2"),
            Family::F4(Parity::Even) => f.write_str("F4 (k even)"),
            Family::F4(Parity::Odd) => f.write_str("F4 (k odd)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrismVariant {
    D3,
    D6,
    D12,
}

impl PrismVariant {
    pub fn d(self) -> u64 {
        match self {
            PrismVariant::D3 => 3,
            PrismVariant::D6 => 6,
            PrismVariant::D12 => 12,
        }
    }
}

/// Labels of `x_{2i+1}`, `x_{2i}`, `y_{2i+1}` and `y_{2i}` as functions of `i`.
struct PrismFormulas {
    odd_x: Box<dyn Fn(u64) -> u64>,
    even_x: Box<dyn Fn(u64) -> u64>,
    odd_y: Box<dyn Fn(u64) -> u64>,
    even_y: Box<dyn Fn(u64) -> u64>,
}

fn prism_formulas(k: u64, variant: PrismVariant) -> PrismFormulas {
    match variant {
        PrismVariant::D3 => PrismFormulas {
            odd_x: Box::new(move |i| match i {
                0 => 6 * k + 1,
                i if i <= k => 8 * k + 2 - i,
                i => 8 * k + 1 - i,
            }),
            even_x: Box::new(move |i| 4 * k + i),
            odd_y: Box::new(|i| i),
            even_y: Box::new(move |i| {
                if i <= k {
                    12 * k + 3 - i
                } else {
                    12 * k + 2 - i
                }
            }),
        },
        PrismVariant::D6 => PrismFormulas {
            odd_x: Box::new(move |i| match i {
                0 => 6 * k + 2,
                i if i <= k => 8 * k + 4 - i,
                i => 8 * k + 2 - i,
            }),
            even_x: Box::new(move |i| 4 * k + 1 + i),
            odd_y: Box::new(|i| i),
            even_y: Box::new(move |i| {
                if i <= k {
                    12 * k + 6 - i
                } else {
                    12 * k + 4 - i
                }
            }),
        },
        PrismVariant::D12 if k.is_multiple_of(2) => {
            let half = k / 2;
            let three_half = 3 * k / 2;
            PrismFormulas {
                odd_x: Box::new(move |i| match i {
                    0 => 6 * k + 5,
                    i if i <= half => 8 * k + 8 - i,
                    i if i <= k => 8 * k + 7 - i,
                    i => 8 * k + 5 - i,
                }),
                even_x: Box::new(move |i| {
                    if i <= three_half {
                        4 * k + 3 + i
                    } else {
                        4 * k + 4 + i
                    }
                }),
                odd_y: Box::new(move |i| if i < three_half { i } else { i + 1 }),
                even_y: Box::new(move |i| match i {
                    i if i <= half => 12 * k + 12 - i,
                    i if i <= k => 12 * k + 11 - i,
                    i => 12 * k + 9 - i,
                }),
            }
        }
        PrismVariant::D12 => {
            let upper = (3 * k - 1) / 2;
            PrismFormulas {
                odd_x: Box::new(move |i| match i {
                    0 => 6 * k + 5,
                    i if i <= k => 8 * k + 8 - i,
                    i if i <= upper => 8 * k + 6 - i,
                    i => 8 * k + 5 - i,
                }),
                even_x: Box::new(move |i| {
                    if i <= k.div_ceil(2) {
                        4 * k + 3 + i
                    } else {
                        4 * k + 4 + i
                    }
                }),
                odd_y: Box::new(move |i| if i <= (k - 1) / 2 { i } else { i + 1 }),
                even_y: Box::new(move |i| match i {
                    i if i <= k => 12 * k + 12 - i,
                    i if i <= upper => 12 * k + 10 - i,
                    i => 12 * k + 9 - i,
                }),
            }
        }
    }
}

/// The explicit labeling of the prism `T_{8k} = C_{4k} x P_2` for `d = 3, 6, 12`
/// (`x_i` on layer 1, `y_i` on layer 2). The `d = 12` formulas differ by the
/// parity of `k`.
pub fn prism_labeling(k: usize, variant: PrismVariant) -> Result<(GridGraph, Labeling)> {
    let g = build_grid(k, 2)?;
    let p = g.prism_view()?;
    let rules = prism_formulas(k as u64, variant);
    let mut labels = vec![0; g.vertex_count()];
    for i in 0..2 * k {
        let iu = i as u64;
        labels[p.x(2 * i + 1)] = (rules.odd_x)(iu);
        labels[p.y(2 * i + 1)] = (rules.odd_y)(iu);
        labels[p.x(2 * i + 2)] = (rules.even_x)(iu + 1);
        labels[p.y(2 * i + 2)] = (rules.even_y)(iu + 1);
    }
    Ok((g, Labeling::new(labels)))
}

/// Target labels of a new top layer: lows at odd positions, highs
/// `ceiling - t` at even positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerPattern {
    pub ceiling: u64,
    pub lows: Vec<u64>,
    /// Values of `t` skipped when listing the highs `ceiling - t`.
    pub high_skips: Vec<u64>,
    /// The interleaved sequence `(low_1, high_1, low_2, high_2, ...)`.
    pub sequence: Vec<u64>,
}

pub fn layer_pattern(family: Family, k: usize, ceiling: u64) -> Result<LayerPattern> {
    if k < 1 {
        return Err(Error::InvalidParameters(format!("k must be >= 1, got {k}")));
    }
    family.check_parity(k)?;
    let k = k as u64;
    let (lows, skips, t_max): (Vec<u64>, Vec<u64>, u64) = match family {
        Family::F1 => ((0..2 * k).collect(), vec![k + 1], 2 * k + 1),
        Family::F2 => ((0..2 * k).collect(), vec![k + 1, k + 2], 2 * k + 2),
        Family::F4(Parity::Even) => (
            (0..=2 * k).filter(|&t| t != 3 * k / 2).collect(),
            vec![k / 2 + 1, k + 2, k + 3],
            2 * k + 3,
        ),
        Family::F4(Parity::Odd) => (
            (0..=2 * k).filter(|&t| t != k.div_ceil(2)).collect(),
            vec![k + 1, k + 2, (3 * k + 5) / 2],
            2 * k + 3,
        ),
    };
    let max_low = *lows.last().expect("k >= 1");
    if ceiling < t_max || ceiling - t_max <= max_low {
        return Err(Error::InvalidParameters(format!(
            "ceiling {ceiling} too small for the {family} pattern at k = {k}"
        )));
    }
    let highs = (1..=t_max)
        .filter(|t| !skips.contains(t))
        .map(|t| ceiling - t);
    let sequence = lows
        .iter()
        .zip(highs)
        .flat_map(|(&lo, hi)| [lo, hi])
        .collect();
    Ok(LayerPattern {
        ceiling,
        lows,
        high_skips: skips,
        sequence,
    })
}

/// Finds the 1-based position `j*` from which the top layer, read cyclically
/// in increasing `j`, spells the family's pattern for the current `m`.
pub fn seed_matches(g: &GridGraph, f: &Labeling, family: Family) -> Result<usize> {
    let m = g.m();
    let top = f.layer(g, m);
    let ceiling = family.shift(g.k()) * (2 * m as u64 - 1);
    let pattern = layer_pattern(family, g.k(), ceiling)?;
    let len = top.len();
    (0..len)
        .find(|&start| (0..len).all(|t| top[(start + t) % len] == pattern.sequence[t]))
        .map(|start| start + 1)
        .ok_or(Error::SeedMismatch { layer: m })
}

/// One induction step: `C_{4k} x P_m` to `C_{4k} x P_{m+1}`.
///
/// Old labels move up by `s`; the new layer carries the pattern for `m + 1`
/// with its `0` placed under the shifted maximum `2ms - 1` and continues in
/// increasing `j`. The result is re-verified before it is returned.
pub fn extend(g: &GridGraph, f: &Labeling, family: Family) -> Result<(GridGraph, Labeling)> {
    family.check_parity(g.k())?;
    seed_matches(g, f, family)?;
    let m = g.m();
    check_d_graceful(g, f, family.divisor(m))?;

    let s = family.shift(g.k());
    let next = build_grid(g.k(), m + 1)?;
    let mut labels: Vec<u64> = f.as_slice().iter().map(|&x| x + s).collect();

    let anchor_value = 2 * m as u64 * s - 1;
    let top = &labels[g.layer(m)];
    let anchor = top
        .iter()
        .position(|&x| x == anchor_value)
        .ok_or(Error::SeedMismatch { layer: m })?;

    let pattern = layer_pattern(family, g.k(), (2 * m as u64 + 1) * s)?;
    let len = g.cycle_len();
    let mut new_layer = vec![0; len];
    for (t, &value) in pattern.sequence.iter().enumerate() {
        new_layer[(anchor + t) % len] = value;
    }
    labels.extend(new_layer);
    let g_next = Labeling::new(labels);

    let guard = |what: &str, e: Error| Error::Inconsistent(format!("{what}: {e}"));
    check_d_graceful(&next, &g_next, family.divisor(m + 1))
        .map_err(|e| guard("extension is not d-divisible graceful", e.into()))?;
    check_alpha(&next, &g_next).map_err(|e| guard("extension is not alpha", e.into()))?;
    seed_matches(&next, &g_next, family)
        .map_err(|e| guard("extension lost the seed pattern", e))?;
    Ok((next, g_next))
}

/// A verified labeling of `C_{4k} x P_m` from one of the families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub grid: GridGraph,
    pub labeling: Labeling,
    pub family: Family,
    pub d: u64,
}

/// Prism base case followed by `m - 2` extension steps.
pub fn construct(k: usize, m: usize, family: Family) -> Result<Construction> {
    build_grid(k, m)?;
    family.check_parity(k)?;
    let (mut g, mut f) = prism_labeling(k, family.base_variant())?;
    check_d_graceful(&g, &f, family.divisor(2))?;
    check_alpha(&g, &f)?;
    for _ in 2..m {
        (g, f) = extend(&g, &f, family)?;
    }
    Ok(Construction {
        d: family.divisor(m),
        grid: g,
        labeling: f,
        family,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::{difference_profile, edge_differences, DifferenceProfile};

    fn layers(g: &GridGraph, f: &Labeling) -> Vec<Vec<u64>> {
        (1..=g.m()).map(|i| f.layer(g, i).to_vec()).collect()
    }

    #[test]
    fn prism_values() {
        let cases: [(usize, PrismVariant, Vec<u64>, Vec<u64>); 4] = [
            (1, PrismVariant::D3, vec![7, 5, 9, 6], vec![0, 14, 1, 12]),
            (1, PrismVariant::D6, vec![8, 6, 11, 7], vec![0, 17, 1, 14]),
            (
                2,
                PrismVariant::D12,
                vec![17, 12, 23, 13, 21, 14, 18, 16],
                vec![0, 35, 1, 33, 2, 30, 4, 29],
            ),
            (
                1,
                PrismVariant::D12,
                vec![11, 8, 15, 10],
                vec![0, 23, 2, 19],
            ),
        ];
        for (k, variant, x, y) in cases {
            let (g, f) = prism_labeling(k, variant).unwrap();
            assert_eq!(layers(&g, &f), vec![x, y], "k={k} {variant:?}");
            check_d_graceful(&g, &f, variant.d()).unwrap();
            check_alpha(&g, &f).unwrap();
        }
    }

    #[test]
    fn prism_d3_classes() {
        // f(O_y u E_x) = [0,2k-1] u [4k+1,6k], rest in the four upper runs
        for k in 1..=8u64 {
            let (g, f) = prism_labeling(k as usize, PrismVariant::D3).unwrap();
            let p = g.prism_view().unwrap();
            let mut low: Vec<u64> = p.odd_y().iter().chain(&p.even_x()).map(|&v| f[v]).collect();
            low.sort_unstable();
            let want: Vec<u64> = (0..2 * k).chain(4 * k + 1..=6 * k).collect();
            assert_eq!(low, want);
            let mut high: Vec<u64> = p.odd_x().iter().chain(&p.even_y()).map(|&v| f[v]).collect();
            high.sort_unstable();
            let want: Vec<u64> = (6 * k + 1..=7 * k)
                .chain(7 * k + 2..=8 * k + 1)
                .chain(10 * k + 2..=11 * k + 1)
                .chain(11 * k + 3..=12 * k + 2)
                .collect();
            assert_eq!(high, want);
        }
    }

    #[test]
    fn d3_first_and_last_differences() {
        // sigma_1 = 2k, rho_1 = 6k+1, epsilon_{4k} = 10k+2
        for k in 1..=8u64 {
            let (g, f) = prism_labeling(k as usize, PrismVariant::D3).unwrap();
            let pr = difference_profile(&g, &f).unwrap();
            assert_eq!(pr.sigma[0], 2 * k);
            assert_eq!(pr.rho[0], 6 * k + 1);
            assert_eq!(pr.epsilon[4 * k as usize - 1], 10 * k + 2);
        }
    }

    #[test]
    fn patterns() {
        let p = layer_pattern(Family::F1, 1, 25).unwrap();
        assert_eq!(p.sequence, vec![0, 24, 1, 22]);
        let p = layer_pattern(Family::F4(Parity::Even), 2, 36).unwrap();
        assert_eq!(p.sequence, vec![0, 35, 1, 33, 2, 30, 4, 29]);
        let p = layer_pattern(Family::F4(Parity::Odd), 1, 24).unwrap();
        assert_eq!(p.sequence, vec![0, 23, 2, 19]);
        assert!(layer_pattern(Family::F4(Parity::Odd), 2, 36).is_err());
        assert!(layer_pattern(Family::F1, 1, 4).is_err());
    }

    #[test]
    fn pattern_shape() {
        for k in 1..=10 {
            for family in [Family::F1, Family::F2, Family::F4(Parity::of(k))] {
                let m = 3;
                let ceiling = family.shift(k) * (2 * m - 1);
                let p = layer_pattern(family, k, ceiling).unwrap();
                assert_eq!(p.sequence.len(), 4 * k);
                assert_eq!(p.sequence[0], 0);
                let lows: Vec<u64> = p.sequence.iter().step_by(2).copied().collect();
                assert_eq!(lows, p.lows);
                assert!(lows.windows(2).all(|w| w[0] < w[1]));
                let highs: Vec<u64> = p.sequence.iter().skip(1).step_by(2).copied().collect();
                assert!(highs
                    .iter()
                    .all(|&h| h < ceiling && h > *lows.last().unwrap()));
            }
        }
    }

    #[test]
    fn prism_top_layer_is_the_pattern() {
        for k in 1..=8 {
            for family in [Family::F1, Family::F2, Family::F4(Parity::of(k))] {
                let (g, f) = prism_labeling(k, family.base_variant()).unwrap();
                assert_eq!(seed_matches(&g, &f, family).unwrap(), 1, "k={k} {family}");
            }
        }
    }

    #[test]
    fn worked_extension() {
        let (g, f) = prism_labeling(1, PrismVariant::D3).unwrap();
        let (g3, f3) = extend(&g, &f, Family::F1).unwrap();
        assert_eq!(
            layers(&g3, &f3),
            vec![vec![12, 10, 14, 11], vec![5, 19, 6, 17], vec![22, 0, 24, 1]]
        );
        assert_eq!(seed_matches(&g3, &f3, Family::F1).unwrap(), 2);
        assert_eq!(check_d_graceful(&g3, &f3, 5).unwrap().max_label, 24);
        assert_eq!(construct(1, 3, Family::F1).unwrap().labeling, f3);
    }

    #[test]
    fn shift_preserves_old_differences() {
        for family in [Family::F1, Family::F2, Family::F4(Parity::Odd)] {
            let c = construct(3, 3, family).unwrap();
            let (g4, f4) = extend(&c.grid, &c.labeling, family).unwrap();
            let old = edge_differences(&c.grid, &c.labeling);
            // canonical order: the old grid's cycle edges are a prefix of the
            // new one's, and its rungs sit right after the new layer's cycle
            let new = edge_differences(&g4, &f4);
            let len = c.grid.cycle_len();
            let m = c.grid.m();
            assert_eq!(old[..m * len], new[..m * len]);
            assert_eq!(old[m * len..], new[(m + 1) * len..(2 * m) * len]);
        }
    }

    #[test]
    fn base_case_is_prism() {
        let c = construct(1, 2, Family::F1).unwrap();
        assert_eq!(c.labeling, prism_labeling(1, PrismVariant::D3).unwrap().1);
        assert_eq!(c.d, 3);
    }

    #[test]
    fn zero_layer_has_no_seed() {
        let (g, mut f) = prism_labeling(1, PrismVariant::D3).unwrap();
        for v in g.layer(2) {
            f.set(v, 0);
        }
        assert!(matches!(
            seed_matches(&g, &f, Family::F1),
            Err(Error::SeedMismatch { layer: 2 })
        ));
        assert!(extend(&g, &f, Family::F1).is_err());
    }

    #[test]
    fn parity_mismatch() {
        assert!(construct(2, 3, Family::F4(Parity::Odd)).is_err());
        assert!(Family::with_multiplier(3, 1).is_err());
    }

    #[test]
    fn d12_is_odd_graceful_at_k1() {
        let (g, f) = prism_labeling(1, PrismVariant::D12).unwrap();
        let diffs = DifferenceProfile::sorted(&edge_differences(&g, &f));
        assert_eq!(diffs, (0..12).map(|t| 2 * t + 1).collect::<Vec<_>>());
    }
}
