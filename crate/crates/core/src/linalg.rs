//! Dense vector helpers, unit directions, orthonormal pairs and seeded
//! sampling on (constrained) spheres.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for unit length, orthogonality and the zero-sum flag.
pub const UNIT_TOL: f64 = 1e-12;
/// Tolerance after compounding operations.
pub const COMPOUND_TOL: f64 = 1e-10;

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn norm2(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

pub fn norm1(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

/// `y += alpha * x`
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Standard basis vector `e_{index+1}` in dimension `dim`.
pub fn unit_vector(dim: usize, index: usize) -> Vec<f64> {
    let mut e = vec![0.0; dim];
    e[index] = 1.0;
    e
}

/// A unit vector, with a truthful flag recording whether its coordinates sum to zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    coords: Vec<f64>,
    zero_sum: bool,
}

impl Direction {
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero_sum(&self) -> bool {
        self.zero_sum
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn neg(&self) -> Direction {
        Direction {
            coords: self.coords.iter().map(|v| -v).collect(),
            zero_sum: self.zero_sum,
        }
    }

    /// Fails with [`Error::NotZeroSum`] unless the flag is set.
    pub fn require_zero_sum(&self) -> Result<()> {
        if self.zero_sum {
            Ok(())
        } else {
            Err(Error::NotZeroSum)
        }
    }
}

/// Scale `x` to unit length.
pub fn normalize(x: &[f64]) -> Result<Direction> {
    let len = norm2(x);
    if !(len > 0.0) || !len.is_finite() {
        return Err(Error::DegenerateDirection);
    }
    let sum: f64 = x.iter().sum();
    let zero_sum = (sum / len).abs() <= UNIT_TOL;
    let mut coords: Vec<f64> = x.iter().map(|v| v / len).collect();
    if zero_sum {
        // keep the flag truthful after rounding
        let mean = coords.iter().sum::<f64>() / coords.len() as f64;
        coords.iter_mut().for_each(|c| *c -= mean);
    }
    Ok(Direction { coords, zero_sum })
}

/// Subtract the mean, then normalize. The result lies on the zero-sum sphere.
pub fn project_zero_sum(x: &[f64]) -> Result<Direction> {
    if x.is_empty() {
        return Err(Error::DirectionCollapses);
    }
    let scale = norm2(x);
    if !scale.is_finite() {
        return Err(Error::DegenerateDirection);
    }
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let centered: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let len = norm2(&centered);
    if !(len > UNIT_TOL * scale) || len == 0.0 {
        return Err(Error::DirectionCollapses);
    }
    let mut coords: Vec<f64> = centered.iter().map(|v| v / len).collect();
    let drift = coords.iter().sum::<f64>() / coords.len() as f64;
    coords.iter_mut().for_each(|c| *c -= drift);
    Ok(Direction {
        coords,
        zero_sum: true,
    })
}

/// Two orthonormal vectors spanning a plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthoPair {
    u: Vec<f64>,
    v: Vec<f64>,
}

impl OrthoPair {
    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn v(&self) -> &[f64] {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// Pair of standard basis vectors `(e_{i+1}, e_{j+1})`.
    pub fn coordinate(n: usize, i: usize, j: usize) -> Result<OrthoPair> {
        if i >= n || j >= n {
            return Err(Error::InvalidArgument(format!(
                "coordinate index out of range for dimension {n}"
            )));
        }
        orthonormal_pair(&unit_vector(n, i), &unit_vector(n, j))
    }

    /// The plane whose rows `(u_i, v_i)` are `sqrt(2/n) (cos((i-1)pi/n), sin((i-1)pi/n))`.
    /// It projects the cube onto a regular `2n`-gon.
    pub fn regular(n: usize) -> Result<OrthoPair> {
        if n < 2 {
            return Err(Error::DimensionTooSmall {
                what: "dimension",
                min: 2,
                got: n,
            });
        }
        let r = (2.0 / n as f64).sqrt();
        let angle = |i: usize| i as f64 * std::f64::consts::PI / n as f64;
        let u: Vec<f64> = (0..n).map(|i| r * angle(i).cos()).collect();
        let v: Vec<f64> = (0..n).map(|i| r * angle(i).sin()).collect();
        orthonormal_pair(&u, &v)
    }

    /// The 2x2 minors `u_i v_j - u_j v_i` for `i < j`, row-major.
    pub fn minors(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.u.len();
        (0..n).flat_map(move |i| {
            (i + 1..n).map(move |j| self.u[i] * self.v[j] - self.u[j] * self.v[i])
        })
    }

    /// Coordinates `(<x,u>, <x,v>)` of a point in the plane frame.
    pub fn coords_of(&self, x: &[f64]) -> [f64; 2] {
        [dot(x, &self.u), dot(x, &self.v)]
    }
}

fn subtract_projection(y: &mut [f64], u: &[f64]) {
    let c = dot(y, u);
    axpy(-c, u, y);
}

/// Gram–Schmidt on `(x, y)`.
pub fn orthonormal_pair(x: &[f64], y: &[f64]) -> Result<OrthoPair> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let u = normalize(x)
        .map_err(|_| Error::DegeneratePlane)?
        .into_coords();
    let ylen = norm2(y);
    if !(ylen > 0.0) || !ylen.is_finite() {
        return Err(Error::DegeneratePlane);
    }
    let mut r = y.to_vec();
    subtract_projection(&mut r, &u);
    if norm2(&r) < COMPOUND_TOL * ylen {
        return Err(Error::DegeneratePlane);
    }
    // second pass
    subtract_projection(&mut r, &u);
    let len = norm2(&r);
    let v = r.iter().map(|c| c / len).collect();
    Ok(OrthoPair { u, v })
}

/// Completes `vectors` (orthonormal, all of length `n`) to an orthonormal basis of
/// `R^n`, returning the `n - k` new vectors.
pub fn orthobasis_of_complement(vectors: &[Vec<f64>], n: usize) -> Result<Vec<Vec<f64>>> {
    if vectors.len() > n {
        return Err(Error::InvalidArgument(format!(
            "{} vectors cannot be orthonormal in dimension {n}",
            vectors.len()
        )));
    }
    for (i, a) in vectors.iter().enumerate() {
        if a.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.len(),
            });
        }
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            let deviation = (dot(a, b) - target).abs();
            if deviation > COMPOUND_TOL {
                return Err(Error::NotOrthonormal { deviation });
            }
        }
    }

    let mut basis: Vec<Vec<f64>> = vectors.to_vec();
    let mut out = Vec::with_capacity(n - vectors.len());
    while basis.len() < n {
        // greedy: the coordinate axis with the largest residual
        let mut best: Option<(f64, Vec<f64>)> = None;
        for axis in 0..n {
            let mut r = unit_vector(n, axis);
            for b in &basis {
                subtract_projection(&mut r, b);
            }
            let len = norm2(&r);
            if best.as_ref().is_none_or(|(l, _)| len > *l) {
                best = Some((len, r));
            }
        }
        let (_, mut r) = best.expect("n > 0");
        for b in &basis {
            subtract_projection(&mut r, b);
        }
        let len = norm2(&r);
        r.iter_mut().for_each(|c| *c /= len);
        basis.push(r.clone());
        out.push(r);
    }
    Ok(out)
}

/// Seed for the deterministic ChaCha8 streams used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent substream `index` of this seed.
    pub fn stream(self, index: u64) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(index);
        rng
    }

    /// A new seed drawn deterministically from substream `index`; used to hand a
    /// child computation its own seed.
    pub fn derive(self, index: u64) -> Seed {
        Seed(self.stream(index).random())
    }
}

impl std::fmt::Display for Seed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.sample(StandardNormal)).collect()
}

/// Uniform direction on the unit sphere of `R^m`, or on its intersection with the
/// zero-sum hyperplane.
pub fn random_direction<R: Rng + ?Sized>(rng: &mut R, m: usize, zero_sum: bool) -> Result<Direction> {
    if m < 2 {
        return Err(Error::DimensionTooSmall {
            what: "sampling dimension",
            min: 2,
            got: m,
        });
    }
    loop {
        let g = gaussian_vector(rng, m);
        let d = if zero_sum {
            project_zero_sum(&g)
        } else {
            normalize(&g)
        };
        match d {
            Ok(d) => return Ok(d),
            // probability zero; draw again
            Err(Error::DirectionCollapses | Error::DegenerateDirection) => continue,
            Err(e) => return Err(e),
        }
    }
}

pub fn sample_direction(m: usize, zero_sum: bool, seed: Seed) -> Result<Direction> {
    random_direction(&mut seed.rng(), m, zero_sum)
}

/// Uniformly random orthonormal pair in `R^n` (Gram–Schmidt of two Gaussians).
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<OrthoPair> {
    if n < 2 {
        return Err(Error::DimensionTooSmall {
            what: "dimension",
            min: 2,
            got: n,
        });
    }
    loop {
        let x = gaussian_vector(rng, n);
        let y = gaussian_vector(rng, n);
        match orthonormal_pair(&x, &y) {
            Ok(p) => return Ok(p),
            Err(Error::DegeneratePlane) => continue,
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        let d = normalize(&[2.0, 0.0, 0.0]).unwrap();
        assert_eq!(d.coords(), &[1.0, 0.0, 0.0]);
        assert!(!d.is_zero_sum());

        let d = normalize(&[1.0, -1.0, 0.0]).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert_abs_diff_eq!(d.coords()[0], s, epsilon = 1e-15);
        assert_abs_diff_eq!(d.coords()[1], -s, epsilon = 1e-15);
        assert!(d.is_zero_sum());

        let d = normalize(&[3.0, 4.0]).unwrap();
        assert_abs_diff_eq!(d.coords()[0], 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(d.coords()[1], 0.8, epsilon = 1e-15);

        assert_eq!(normalize(&[0.0, 0.0]), Err(Error::DegenerateDirection));
    }

    #[test]
    fn project_zero_sum_examples() {
        let d = project_zero_sum(&[1.0, 0.0, 0.0]).unwrap();
        let s = 6f64.sqrt();
        for (c, e) in d.coords().iter().zip([2.0 / s, -1.0 / s, -1.0 / s]) {
            assert_abs_diff_eq!(*c, e, epsilon = 1e-15);
        }
        assert!(d.is_zero_sum());

        let d = project_zero_sum(&[1.0, -1.0]).unwrap();
        assert_abs_diff_eq!(d.coords()[0], 1.0 / 2f64.sqrt(), epsilon = 1e-15);

        assert_eq!(
            project_zero_sum(&[5.0, 5.0, 5.0]),
            Err(Error::DirectionCollapses)
        );
    }

    #[test]
    fn orthonormal_pair_examples() {
        let p = orthonormal_pair(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(p.u(), &[1.0, 0.0, 0.0]);
        assert_eq!(p.v(), &[0.0, 1.0, 0.0]);

        // hand Gram–Schmidt: u = (1,1,0)/√2, y - <y,u>u = (1/2,-1/2,0)
        let p = orthonormal_pair(&[1.0, 1.0, 0.0], &[1.0, 0.0, 0.0]).unwrap();
        let s = 1.0 / 2f64.sqrt();
        for (c, e) in p.u().iter().zip([s, s, 0.0]) {
            assert_abs_diff_eq!(*c, e, epsilon = 1e-15);
        }
        for (c, e) in p.v().iter().zip([s, -s, 0.0]) {
            assert_abs_diff_eq!(*c, e, epsilon = 1e-15);
        }

        assert_eq!(
            orthonormal_pair(&[1.0, 0.0], &[2.0, 0.0]),
            Err(Error::DegeneratePlane)
        );
    }

    #[test]
    fn sampling_postconditions_and_determinism() {
        for m in 2..12 {
            for zero_sum in [false, true] {
                let d = sample_direction(m, zero_sum, Seed(m as u64)).unwrap();
                assert!((norm2(d.coords()) - 1.0).abs() <= UNIT_TOL);
                if zero_sum {
                    assert!(d.coords().iter().sum::<f64>().abs() <= UNIT_TOL);
                    assert!(d.is_zero_sum());
                }
                assert_eq!(d, sample_direction(m, zero_sum, Seed(m as u64)).unwrap());
            }
        }
        assert!(sample_direction(1, false, Seed(0)).is_err());
    }

    #[test]
    fn zero_sum_sampling_is_centered() {
        let m = 6;
        let mut rng = Seed(11).rng();
        let mut mean = vec![0.0; m];
        let trials = 100_000;
        for _ in 0..trials {
            let d = random_direction(&mut rng, m, true).unwrap();
            axpy(1.0 / trials as f64, d.coords(), &mut mean);
        }
        assert!(norm2(&mean) <= 5e-2);
    }

    #[test]
    fn complement_examples() {
        let c = orthobasis_of_complement(&[vec![1.0, 0.0, 0.0]], 3).unwrap();
        assert_eq!(c.len(), 2);
        for b in &c {
            assert_abs_diff_eq!(b[0], 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(norm2(b), 1.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(dot(&c[0], &c[1]), 0.0, epsilon = 1e-15);

        let s = 1.0 / 2f64.sqrt();
        let c = orthobasis_of_complement(&[vec![s, s]], 2).unwrap();
        assert_abs_diff_eq!(c[0][0].abs(), s, epsilon = 1e-15);
        assert_abs_diff_eq!(c[0][0] + c[0][1], 0.0, epsilon = 1e-15);

        assert!(matches!(
            orthobasis_of_complement(&[vec![1.0, 1.0]], 2),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn complement_satisfies_parseval() {
        let mut rng = Seed(3).rng();
        for trial in 0..100 {
            let n = 2 + trial % 9;
            let k = 1 + trial % (n - 1);
            let mut given: Vec<Vec<f64>> = Vec::new();
            // build k orthonormal vectors by Gram–Schmidt of Gaussians
            while given.len() < k {
                let mut g = gaussian_vector(&mut rng, n);
                for _ in 0..2 {
                    for b in &given {
                        subtract_projection(&mut g, b);
                    }
                }
                let len = norm2(&g);
                given.push(g.iter().map(|c| c / len).collect());
            }
            let rest = orthobasis_of_complement(&given, n).unwrap();
            assert_eq!(rest.len(), n - k);
            for r in &rest {
                for g in &given {
                    assert!(dot(r, g).abs() <= COMPOUND_TOL);
                }
            }
            let x = gaussian_vector(&mut rng, n);
            let energy: f64 = given.iter().chain(&rest).map(|b| dot(&x, b).powi(2)).sum();
            assert!((energy - dot(&x, &x)).abs() <= COMPOUND_TOL * dot(&x, &x).max(1.0));
        }
    }

    #[test]
    fn regular_pair_is_orthonormal() {
        for n in 2..=50 {
            let p = OrthoPair::regular(n).unwrap();
            assert!((norm2(p.u()) - 1.0).abs() <= UNIT_TOL);
            assert!((norm2(p.v()) - 1.0).abs() <= UNIT_TOL);
            assert!(dot(p.u(), p.v()).abs() <= UNIT_TOL);
        }
    }

    proptest! {
        #[test]
        fn normalize_gives_unit_vectors(x in prop::collection::vec(-1e3f64..1e3, 2..20)) {
            prop_assume!(norm2(&x) > 1e-6);
            let d = normalize(&x).unwrap();
            prop_assert!((norm2(d.coords()) - 1.0).abs() <= UNIT_TOL);
            if d.is_zero_sum() {
                prop_assert!(d.coords().iter().sum::<f64>().abs() <= UNIT_TOL);
            }
        }

        #[test]
        fn gram_schmidt_pairs_are_orthonormal(
            x in prop::collection::vec(-10f64..10.0, 5),
            y in prop::collection::vec(-10f64..10.0, 5),
        ) {
            if let Ok(p) = orthonormal_pair(&x, &y) {
                prop_assert!((norm2(p.u()) - 1.0).abs() <= UNIT_TOL);
                prop_assert!((norm2(p.v()) - 1.0).abs() <= UNIT_TOL);
                prop_assert!(dot(p.u(), p.v()).abs() <= UNIT_TOL);
            }
        }
    }
}
