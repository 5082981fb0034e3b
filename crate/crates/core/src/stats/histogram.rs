use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::simplex::{factorial, SimplexPoint};

/// Counts over the depth-`m` cube grid restricted to `Δ_k`.
///
/// A cell is keyed by `f = ⌊m x⌋`; it is the slice of the unit cube at `f`
/// by the hyperplane `Σ y = m`, a hypersimplex whose shape depends only on
/// `j = m − Σ f ∈ [1, k−1]` (for `k = 1` the single cell is the point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexHistogram {
    k: usize,
    depth: u32,
    bins: BTreeMap<Vec<u32>, u64>,
    total: u64,
}

impl SimplexHistogram {
    pub fn new(k: usize, depth: u32) -> Self {
        assert!(k >= 1 && depth >= 1);
        SimplexHistogram { k, depth, bins: BTreeMap::new(), total: 0 }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn bins(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.bins.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    /// Cell containing `x`; points on cell faces go to a deterministic
    /// neighbour.
    pub fn cell_of(&self, x: &SimplexPoint) -> Vec<u32> {
        let m = self.depth;
        let scaled: Vec<f64> = x.coords().iter().map(|v| v * m as f64).collect();
        let mut f: Vec<u32> = scaled.iter().map(|v| (v.floor() as u32).min(m - 1)).collect();
        if self.k == 1 {
            return vec![0];
        }
        // keep j = m − Σf within [1, k−1]
        loop {
            let s: u32 = f.iter().sum();
            if s + 1 > m {
                let i = (0..self.k)
                    .filter(|&i| f[i] > 0)
                    .min_by(|&a, &b| (scaled[a] - f[a] as f64).total_cmp(&(scaled[b] - f[b] as f64)))
                    .expect("some positive coordinate");
                f[i] -= 1;
            } else if s + (self.k as u32 - 1) < m {
                let i = (0..self.k)
                    .filter(|&i| f[i] + 1 < m)
                    .max_by(|&a, &b| (scaled[a] - f[a] as f64).total_cmp(&(scaled[b] - f[b] as f64)))
                    .expect("some coordinate below the top");
                f[i] += 1;
            } else {
                return f;
            }
        }
    }

    pub fn add(&mut self, x: &SimplexPoint) -> Result<()> {
        if x.dim() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, got: x.dim() });
        }
        let cell = self.cell_of(x);
        *self.bins.entry(cell).or_insert(0) += 1;
        self.total += 1;
        Ok(())
    }

    pub fn merge(&self, other: &SimplexHistogram) -> Result<SimplexHistogram> {
        if (self.k, self.depth) != (other.k, other.depth) {
            return Err(Error::ConfigMismatch(format!(
                "histograms (k={}, m={}) and (k={}, m={})",
                self.k, self.depth, other.k, other.depth
            )));
        }
        let mut out = self.clone();
        for (cell, n) in &other.bins {
            *out.bins.entry(cell.clone()).or_insert(0) += n;
        }
        out.total += other.total;
        Ok(out)
    }

    /// Riemannian volume of a cell: `√k · A(k−1, j−1) / ((k−1)! · m^{k−1})`
    /// with Eulerian numbers `A`.
    pub fn cell_volume(&self, cell: &[u32]) -> f64 {
        let k = self.k;
        if k == 1 {
            return 1.0;
        }
        let j = self.depth - cell.iter().sum::<u32>();
        (k as f64).sqrt() * eulerian(k - 1, j as usize - 1)
            / (factorial(k - 1) * (self.depth as f64).powi(k as i32 - 1))
    }

    /// Every cell of the grid.
    pub fn all_cells(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut f = vec![0u32; self.k];
        self.collect_cells(0, 0, &mut f, &mut out);
        out
    }

    fn collect_cells(&self, i: usize, s: u32, f: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let m = self.depth;
        if i == self.k {
            let lo = m.saturating_sub(self.k as u32 - 1);
            if (self.k == 1 && s == 0) || (self.k > 1 && s >= lo && s < m) {
                out.push(f.clone());
            }
            return;
        }
        for v in 0..m {
            if s + v >= m {
                break;
            }
            f[i] = v;
            self.collect_cells(i + 1, s + v, f, out);
        }
        f[i] = 0;
    }

    /// Barycenter of a cell: the average of the hypersimplex vertices
    /// `(f + e_S)/m` over `|S| = j`, i.e. `(f + j/k)/m`.
    pub fn cell_center(&self, cell: &[u32]) -> SimplexPoint {
        let m = self.depth as f64;
        let j = if self.k == 1 { 1.0 } else { (self.depth - cell.iter().sum::<u32>()) as f64 };
        let coords = cell.iter().map(|&f| (f as f64 + j / self.k as f64) / m).collect();
        SimplexPoint::from_normalized(coords)
    }

    /// `½ Σ |n_cell/N − 𝔭(cell)|` with the model mass of each cell taken
    /// by the midpoint rule.
    pub fn total_variation<D: Fn(&SimplexPoint) -> f64>(&self, density: D) -> f64 {
        let n = self.total as f64;
        0.5 * self
            .all_cells()
            .iter()
            .map(|c| {
                let emp = self.bins.get(c).copied().unwrap_or(0) as f64 / n;
                (emp - density(&self.cell_center(c)) * self.cell_volume(c)).abs()
            })
            .sum::<f64>()
    }

    /// CSV rows `x1,…,xk,count` with the lower cell corner `f/m`.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let names: Vec<String> = (1..=self.k).map(|i| format!("x{i}")).collect();
        let _ = writeln!(s, "{},count", names.join(","));
        for (cell, n) in &self.bins {
            let corner: Vec<String> = cell.iter().map(|&f| format!("{}", f as f64 / self.depth as f64)).collect();
            let _ = writeln!(s, "{},{}", corner.join(","), n);
        }
        s
    }
}

/// Eulerian number `A(n, j)`: permutations of `n` with `j` descents.
fn eulerian(n: usize, j: usize) -> f64 {
    let mut row = vec![1.0f64];
    for m in 1..=n {
        let mut next = vec![0.0; m];
        for (i, slot) in next.iter_mut().enumerate() {
            let a = if i < row.len() { (i + 1) as f64 * row[i] } else { 0.0 };
            let b = if i >= 1 && i - 1 < row.len() { (m - i) as f64 * row[i - 1] } else { 0.0 };
            *slot = a + b;
        }
        row = next;
    }
    row.get(j).copied().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::volume;
    use proptest::prelude::*;

    #[test]
    fn eulerian_numbers() {
        assert_eq!(eulerian(0, 0), 1.0);
        assert_eq!((0..3).map(|j| eulerian(3, j)).collect::<Vec<_>>(), vec![1.0, 4.0, 1.0]);
        assert_eq!((0..4).map(|j| eulerian(4, j)).collect::<Vec<_>>(), vec![1.0, 11.0, 11.0, 1.0]);
    }

    #[test]
    fn cell_volumes_sum_to_simplex_volume() {
        for k in 1..=5 {
            for m in [1u32, 2, 3, 7] {
                let h = SimplexHistogram::new(k, m);
                let cells = h.all_cells();
                let s: f64 = cells.iter().map(|c| h.cell_volume(c)).sum();
                assert!((s - volume(k)).abs() < 1e-12, "k={k} m={m}");
                if k == 2 {
                    assert_eq!(cells.len(), m as usize);
                }
            }
        }
    }

    #[test]
    fn pair_direction_example() {
        let mut h = SimplexHistogram::new(2, 10);
        h.add(&SimplexPoint::new(vec![0.5, 0.5]).unwrap()).unwrap();
        assert_eq!(h.total(), 1);
        let cells: Vec<_> = h.bins().collect();
        assert_eq!(cells.len(), 1);
        let (cell, n) = cells[0];
        assert_eq!(n, 1);
        assert_eq!(cell.iter().sum::<u32>(), 9);
    }

    #[test]
    fn vertices_land_in_valid_cells() {
        for k in 2..=4 {
            let h = SimplexHistogram::new(k, 5);
            let cells = h.all_cells();
            for i in 0..k {
                let mut x = vec![0.0; k];
                x[i] = 1.0;
                let c = h.cell_of(&SimplexPoint::new(x).unwrap());
                assert!(cells.contains(&c), "{c:?}");
            }
        }
    }

    #[test]
    fn uniform_total_variation_is_small() {
        let mut h = SimplexHistogram::new(2, 20);
        for i in 0..20_000 {
            let a = (i as f64 + 0.5) / 20_000.0;
            h.add(&SimplexPoint::new(vec![a, 1.0 - a]).unwrap()).unwrap();
        }
        let tv = h.total_variation(|_| std::f64::consts::FRAC_1_SQRT_2);
        assert!(tv < 1e-9, "{tv}");
    }

    #[test]
    fn config_mismatch_rejected() {
        let a = SimplexHistogram::new(2, 10);
        assert!(a.merge(&SimplexHistogram::new(2, 11)).is_err());
        assert!(a.merge(&SimplexHistogram::new(3, 10)).is_err());
    }

    fn points(k: usize) -> impl Strategy<Value = Vec<SimplexPoint>> {
        prop::collection::vec(prop::collection::vec(0.0f64..1.0, k), 0..20).prop_map(|v| {
            v.into_iter()
                .filter_map(|x| {
                    let s: f64 = x.iter().sum();
                    (s > 0.0).then(|| SimplexPoint::from_normalized(x.iter().map(|c| c / s).collect()))
                })
                .collect()
        })
    }

    fn hist(pts: &[SimplexPoint]) -> SimplexHistogram {
        let mut h = SimplexHistogram::new(3, 6);
        for p in pts {
            h.add(p).unwrap();
        }
        h
    }

    proptest! {
        #[test]
        fn merge_is_a_commutative_monoid(a in points(3), b in points(3), c in points(3)) {
            let (ha, hb, hc) = (hist(&a), hist(&b), hist(&c));
            let empty = SimplexHistogram::new(3, 6);
            prop_assert_eq!(ha.merge(&empty).unwrap(), ha.clone());
            prop_assert_eq!(ha.merge(&hb).unwrap(), hb.merge(&ha).unwrap());
            prop_assert_eq!(
                ha.merge(&hb).unwrap().merge(&hc).unwrap(),
                ha.merge(&hb.merge(&hc).unwrap()).unwrap()
            );
            let all: Vec<_> = a.iter().chain(&b).chain(&c).cloned().collect();
            prop_assert_eq!(ha.merge(&hb).unwrap().merge(&hc).unwrap().total(), all.len() as u64);
        }

        #[test]
        fn points_land_in_enumerated_cells(a in points(4)) {
            let h = SimplexHistogram::new(4, 5);
            let cells = h.all_cells();
            for p in &a {
                prop_assert!(cells.contains(&h.cell_of(p)));
            }
        }
    }
}
