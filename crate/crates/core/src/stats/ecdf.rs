use crate::error::{Error, Result};

/// Above this many distinct values an [`EmpiricalCDF`] compacts itself into a
/// weighted quantile sketch.
pub const SKETCH_THRESHOLD: usize = 10_000_000;

/// Empirical distribution of a finite sample, stored as sorted distinct
/// values with cumulative counts.
///
/// Equal values are merged, which loses nothing; the representation is
/// canonical, so the same multiset always produces an identical value
/// regardless of insertion or merge order. Once the number of distinct values
/// exceeds the capacity, adjacent values are pooled pairwise at their
/// weighted mean and the CDF becomes approximate.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCDF {
    values: Vec<f64>,
    /// `cum[i]` = number of samples `≤ values[i]`
    cum: Vec<u64>,
    capacity: usize,
    exact: bool,
}

impl Default for EmpiricalCDF {
    fn default() -> Self {
        Self::empty()
    }
}

impl EmpiricalCDF {
    pub fn empty() -> Self {
        Self::with_capacity(SKETCH_THRESHOLD)
    }

    pub fn with_capacity(capacity: usize) -> Self {
        assert!(capacity >= 2);
        EmpiricalCDF { values: Vec::new(), cum: Vec::new(), capacity, exact: true }
    }

    /// Panics on NaN.
    pub fn from_values(values: Vec<f64>) -> Self {
        Self::from_values_with_capacity(values, SKETCH_THRESHOLD)
    }

    pub fn from_values_with_capacity(mut values: Vec<f64>, capacity: usize) -> Self {
        assert!(values.iter().all(|v| !v.is_nan()), "NaN sample");
        values.sort_by(f64::total_cmp);
        let mut out = Self::with_capacity(capacity);
        let mut n = 0u64;
        for v in values {
            n += 1;
            if out.values.last() == Some(&v) {
                *out.cum.last_mut().expect("nonempty") = n;
            } else {
                out.values.push(v);
                out.cum.push(n);
            }
        }
        out.compact();
        out
    }

    pub fn len(&self) -> u64 {
        self.cum.last().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.cum.is_empty()
    }

    /// False once the sketch has pooled values.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn distinct(&self) -> usize {
        self.values.len()
    }

    /// `(value, count of samples ≤ value)` in increasing order.
    pub fn steps(&self) -> impl Iterator<Item = (f64, u64)> + '_ {
        self.values.iter().copied().zip(self.cum.iter().copied())
    }

    /// `F̂(t)`, the fraction of samples `≤ t`.
    pub fn eval(&self, t: f64) -> f64 {
        let i = self.values.partition_point(|&v| v <= t);
        if i == 0 {
            0.0
        } else {
            self.cum[i - 1] as f64 / self.len() as f64
        }
    }

    /// Sample mean, summed in increasing order.
    pub fn mean(&self) -> f64 {
        let mut prev = 0u64;
        let mut s = 0.0;
        for (v, c) in self.steps() {
            s += v * (c - prev) as f64;
            prev = c;
        }
        s / self.len() as f64
    }

    pub fn min(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// Pooled sample. Errors when the capacities differ.
    pub fn merge(&self, other: &EmpiricalCDF) -> Result<EmpiricalCDF> {
        if self.capacity != other.capacity {
            return Err(Error::ConfigMismatch(format!("ECDF capacities {} and {}", self.capacity, other.capacity)));
        }
        let counts = |e: &EmpiricalCDF| {
            let mut prev = 0;
            e.steps()
                .map(|(v, c)| {
                    let n = c - prev;
                    prev = c;
                    (v, n)
                })
                .collect::<Vec<_>>()
        };
        let (a, b) = (counts(self), counts(other));
        let mut out = Self::with_capacity(self.capacity);
        out.exact = self.exact && other.exact;
        let (mut i, mut j, mut n) = (0, 0, 0u64);
        while i < a.len() || j < b.len() {
            let (v, c) = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    i += 1;
                    j += 1;
                    (x.0, x.1 + y.1)
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    i += 1;
                    *x
                }
                (Some(x), None) => {
                    i += 1;
                    *x
                }
                (_, Some(y)) => {
                    j += 1;
                    *y
                }
                (None, None) => unreachable!(),
            };
            n += c;
            out.values.push(v);
            out.cum.push(n);
        }
        out.compact();
        Ok(out)
    }

    fn compact(&mut self) {
        while self.values.len() > self.capacity {
            self.exact = false;
            let mut values = Vec::with_capacity(self.values.len() / 2 + 1);
            let mut cum = Vec::with_capacity(values.capacity());
            let mut prev = 0u64;
            for (vs, cs) in self.values.chunks(2).zip(self.cum.chunks(2)) {
                let end = *cs.last().expect("chunk");
                let v = if vs.len() == 2 {
                    let (w0, w1) = ((cs[0] - prev) as f64, (cs[1] - cs[0]) as f64);
                    (vs[0] * w0 + vs[1] * w1) / (w0 + w1)
                } else {
                    vs[0]
                };
                values.push(v);
                cum.push(end);
                prev = end;
            }
            self.values = values;
            self.cum = cum;
        }
    }

    /// `(t, F̂(t))` on `n + 1` evenly spaced points of `[lo, hi]`.
    pub fn grid(&self, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
        (0..=n)
            .map(|i| {
                let t = if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 };
                (t, self.eval(t))
            })
            .collect()
    }
}
