use super::ecdf::EmpiricalCDF;
use super::histogram::SimplexHistogram;
use crate::error::Result;
use crate::exact::rational_to_f64;
use crate::orbit::OrbitStream;
use crate::simplex::polar;
use crate::torus::{KMulticurve, LengthFunctional};

/// Polar statistics of `(φ(γ₁), …, φ(γ_k))` over an orbit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthRecord {
    pub directions: SimplexHistogram,
    /// `Σ φ(γ_i) / L`
    pub radius: EmpiricalCDF,
    /// first coordinate of the direction, `φ(γ₁) / Σ φ(γ_i)`
    pub fraction: EmpiricalCDF,
}

/// Ratio statistics of `(ψ(γ_i)/φ(γ_i))_i` over an orbit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioRecord {
    pub marginals: Vec<EmpiricalCDF>,
    /// `max_{i<j} |r_i − r_j|`
    pub gap: EmpiricalCDF,
}

struct LengthAcc {
    directions: SimplexHistogram,
    radius: Vec<f64>,
    fraction: Vec<f64>,
}

/// One observation per orbit element, accumulated over `partitions`
/// independent workers. The result does not depend on `partitions`.
pub fn record_lengths(
    stream: &OrbitStream,
    phi: &LengthFunctional,
    depth: u32,
    partitions: usize,
) -> Result<LengthRecord> {
    let k = stream.query().basepoint.k();
    let cutoff = rational_to_f64(stream.query().cutoff);
    let parts = stream.fold_partitions(
        partitions,
        || LengthAcc { directions: SimplexHistogram::new(k, depth), radius: Vec::new(), fraction: Vec::new() },
        |acc, gamma| {
            let lengths = phi.component_lengths_f64(&gamma);
            let p = polar(&lengths).expect("lengths are positive");
            acc.radius.push(p.radius / cutoff);
            acc.fraction.push(p.direction.coords()[0]);
            acc.directions.add(&p.direction).expect("dimension matches");
        },
    );
    let mut out = LengthRecord {
        directions: SimplexHistogram::new(k, depth),
        radius: EmpiricalCDF::empty(),
        fraction: EmpiricalCDF::empty(),
    };
    for acc in parts {
        out.directions = out.directions.merge(&acc.directions)?;
        out.radius = out.radius.merge(&EmpiricalCDF::from_values(acc.radius))?;
        out.fraction = out.fraction.merge(&EmpiricalCDF::from_values(acc.fraction))?;
    }
    Ok(out)
}

/// `(ψ(γ_i) / φ(γ_i))_i`
pub fn ratio_vector(psi: &LengthFunctional, phi: &LengthFunctional, gamma: &KMulticurve) -> Vec<f64> {
    let num = psi.component_lengths_f64(gamma);
    let den = phi.component_lengths_f64(gamma);
    num.iter().zip(&den).map(|(a, b)| a / b).collect()
}

/// `max_{i<j} |r_i − r_j|`
pub fn max_gap(r: &[f64]) -> f64 {
    let mut g = 0.0f64;
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            g = g.max((r[i] - r[j]).abs());
        }
    }
    g
}

pub fn record_ratios(
    stream: &OrbitStream,
    psi: &LengthFunctional,
    phi: &LengthFunctional,
    partitions: usize,
) -> Result<RatioRecord> {
    let k = stream.query().basepoint.k();
    let parts = stream.fold_partitions(
        partitions,
        || (vec![Vec::new(); k], Vec::new()),
        |(marginals, gap): &mut (Vec<Vec<f64>>, Vec<f64>), gamma| {
            let r = ratio_vector(psi, phi, &gamma);
            gap.push(max_gap(&r));
            for (m, x) in marginals.iter_mut().zip(r) {
                m.push(x);
            }
        },
    );
    let mut out = RatioRecord { marginals: vec![EmpiricalCDF::empty(); k], gap: EmpiricalCDF::empty() };
    for (marginals, gap) in parts {
        for (m, v) in out.marginals.iter_mut().zip(marginals) {
            *m = m.merge(&EmpiricalCDF::from_values(v))?;
        }
        out.gap = out.gap.merge(&EmpiricalCDF::from_values(gap))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::{enumerate, OrbitQuery};
    use crate::Rational;

    fn stream(phi: &LengthFunctional, l: i64) -> OrbitStream {
        enumerate(OrbitQuery::standard(phi.clone(), Rational::from_integer(l)).unwrap()).unwrap()
    }

    #[test]
    fn standard_pair_observation() {
        let phi = LengthFunctional::alpha_plus_beta();
        let s = stream(&phi, 2);
        let rec = record_lengths(&s, &phi, 10, 1).unwrap();
        assert_eq!(rec.radius.len(), 2);
        assert_eq!(rec.directions.total(), 2);
        // both elements have φ-values (1, 1)
        assert_eq!(rec.fraction.steps().collect::<Vec<_>>(), vec![(0.5, 2)]);
        assert_eq!(rec.radius.steps().collect::<Vec<_>>(), vec![(1.0, 2)]);

        let flat = LengthFunctional::flat();
        let ratios = record_ratios(&s, &flat, &phi, 1).unwrap();
        assert_eq!(ratios.marginals[0].steps().collect::<Vec<_>>(), vec![(1.0, 2)]);
        assert_eq!(ratios.gap.steps().collect::<Vec<_>>(), vec![(0.0, 2)]);
    }

    #[test]
    fn ratio_example() {
        let gamma: KMulticurve = "1*(2,1);1*(1,1)".parse().unwrap();
        let r = ratio_vector(&LengthFunctional::flat(), &LengthFunctional::alpha_plus_beta(), &gamma);
        assert!((r[0] - 5f64.sqrt() / 3.0).abs() < 1e-15);
        assert!((r[1] - 2f64.sqrt() / 2.0).abs() < 1e-15);
        // √5/3 − √2/2
        assert!((max_gap(&r) - 0.038249211).abs() < 1e-9);
    }

    #[test]
    fn identical_functionals_have_zero_gap() {
        let phi = LengthFunctional::alpha_plus_beta();
        let s = stream(&phi, 20);
        let rec = record_ratios(&s, &phi, &phi, 3).unwrap();
        assert_eq!(rec.gap.max(), Some(0.0));
        assert_eq!(rec.marginals[1].min(), Some(1.0));
        assert_eq!(rec.gap.len(), s.count());
    }

    #[test]
    fn partitioning_does_not_change_records() {
        let phi = LengthFunctional::alpha_plus_beta();
        let flat = LengthFunctional::flat();
        let s = stream(&phi, 60);
        let one = record_lengths(&s, &phi, 16, 1).unwrap();
        let ratios = record_ratios(&s, &flat, &phi, 1).unwrap();
        for n in [2, 4, 8, 13] {
            assert_eq!(record_lengths(&s, &phi, 16, n).unwrap(), one);
            assert_eq!(record_ratios(&s, &flat, &phi, n).unwrap(), ratios);
        }
        assert_eq!(one.radius.len(), s.count());
    }
}
