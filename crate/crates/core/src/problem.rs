//! Problem representation and polytope-level transformations.
//!
//! A bargaining set is stored as the closed, convex, comprehensive hull of
//! a finite generator list. Generators are kept verbatim: no convex or
//! dominance reduction is applied, which keeps Minkowski sums exact and
//! tie-breaking reproducible.

use crate::coalition::Permutation;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An `n`-player bargaining set `ch(generators)`: utility vectors in
/// numeraire units whose hull is closed, convex, comprehensive, and
/// bounded above.
#[derive(Clone, Debug, PartialEq)]
pub struct BargainingProblem<T> {
    n: usize,
    generators: Vec<Vec<T>>,
}

/// An `n`-player problem whose alternatives carry a surplus: generators
/// live in dimension `n + 1`, the last entry being the alternative's
/// surplus (negative for a deficit).
#[derive(Clone, Debug, PartialEq)]
pub struct SurplusProblem<T> {
    n: usize,
    generators: Vec<Vec<T>>,
}

/// A solution vector: one numeraire amount per player.
#[derive(Clone, Debug, PartialEq)]
pub struct Allocation<T> {
    values: Vec<T>,
}

impl<T: Scalar> Allocation<T> {
    pub fn new(values: Vec<T>) -> Self {
        Allocation { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, player: usize) -> &T {
        &self.values[player]
    }

    pub fn total(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, v| acc + v.clone())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.values.iter()
    }
}

fn validate_generators<T: Scalar>(generators: &[Vec<T>], dim: usize) -> Result<()> {
    if generators.is_empty() {
        return Err(Error::EmptyProblem);
    }
    for g in generators {
        if g.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.len(),
            });
        }
        if let Some(idx) = g.iter().position(|v| !v.is_finite_value()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite generator entry at index {idx}"
            )));
        }
    }
    Ok(())
}

/// Shared surface of plain and surplus problems: generator access and the
/// hull-level transformations the axiom checks rely on.
pub trait Polytope<T: Scalar>: Clone + Sized {
    /// Number of players.
    fn players(&self) -> usize;

    /// Coordinate dimension of each generator (`n`, or `n + 1` with surplus).
    fn dim(&self) -> usize;

    fn generators(&self) -> &[Vec<T>];

    /// Builds a problem of the same kind from a new generator list.
    fn rebuild(&self, generators: Vec<Vec<T>>) -> Result<Self>;

    /// `rho(B)`: generator coordinates over players permuted; a surplus
    /// coordinate stays in place.
    fn permute(&self, rho: &Permutation) -> Result<Self>;

    /// Maximal total attainable with transfers: `max x_N`, plus the
    /// surplus entry when present.
    fn efficient_total(&self) -> T;

    /// Minkowski sum, represented exactly by all pairwise generator sums.
    fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let mut gens = Vec::with_capacity(self.generators().len() * other.generators().len());
        for a in self.generators() {
            for b in other.generators() {
                gens.push(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| x.clone() + y.clone())
                        .collect(),
                );
            }
        }
        self.rebuild(gens)
    }

    /// Shifts every generator by `t`.
    fn translate(&self, t: &[T]) -> Result<Self> {
        if t.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: t.len(),
            });
        }
        let gens = self
            .generators()
            .iter()
            .map(|g| g.iter().zip(t).map(|(x, y)| x.clone() + y.clone()).collect())
            .collect();
        self.rebuild(gens)
    }

    /// Scales every generator by `lambda >= 0`.
    fn scale(&self, lambda: &T) -> Result<Self> {
        if lambda < &T::zero() {
            return Err(Error::InvalidParameter(
                "scale factor must be nonnegative".into(),
            ));
        }
        let gens = self
            .generators()
            .iter()
            .map(|g| g.iter().map(|x| x.clone() * lambda.clone()).collect())
            .collect();
        self.rebuild(gens)
    }

    /// `B ∪ x`: extends the generator list by one point.
    fn add_point(&self, x: &[T]) -> Result<Self> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        let mut gens = self.generators().to_vec();
        gens.push(x.to_vec());
        self.rebuild(gens)
    }

    /// Generators not strictly dominated in every coordinate by another
    /// generator; the vertex-level stand-in for the strong Pareto frontier.
    fn pareto_generators(&self) -> Vec<&[T]> {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .filter(|(i, g)| {
                !gens.iter().enumerate().any(|(j, h)| {
                    j != *i && g.iter().zip(h.iter()).all(|(a, b)| b > a)
                })
            })
            .map(|(_, g)| g.as_slice())
            .collect()
    }
}

impl<T: Scalar> BargainingProblem<T> {
    /// Builds the problem representing `ch(generators)`. Generator order
    /// is preserved; duplicates and dominated points are retained.
    pub fn new(generators: Vec<Vec<T>>) -> Result<Self> {
        let dim = generators.first().map(|g| g.len()).unwrap_or(0);
        if dim == 0 && !generators.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        validate_generators(&generators, dim)?;
        Ok(BargainingProblem {
            n: dim,
            generators,
        })
    }

    /// The generator maximizing `x_N`, ties broken by lowest index.
    pub fn efficient_alternative(&self) -> (usize, &[T]) {
        let mut best = 0;
        let mut best_total = sum_slice(&self.generators[0], self.n);
        for (i, g) in self.generators.iter().enumerate().skip(1) {
            let total = sum_slice(g, self.n);
            if total > best_total {
                best = i;
                best_total = total;
            }
        }
        (best, &self.generators[best])
    }
}

impl<T: Scalar> SurplusProblem<T> {
    /// Builds a surplus problem from generators in dimension `n + 1`.
    pub fn new(n: usize, generators: Vec<Vec<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "surplus problems need at least one player".into(),
            ));
        }
        validate_generators(&generators, n + 1)?;
        Ok(SurplusProblem { n, generators })
    }

    /// The generator maximizing `x_N + x_{n+1}`, ties broken by lowest index.
    pub fn efficient_alternative(&self) -> (usize, &[T]) {
        let mut best = 0;
        let mut best_total = sum_slice(&self.generators[0], self.n + 1);
        for (i, g) in self.generators.iter().enumerate().skip(1) {
            let total = sum_slice(g, self.n + 1);
            if total > best_total {
                best = i;
                best_total = total;
            }
        }
        (best, &self.generators[best])
    }

    /// Drops the surplus coordinate.
    pub fn project(&self) -> BargainingProblem<T> {
        BargainingProblem {
            n: self.n,
            generators: self
                .generators
                .iter()
                .map(|g| g[..self.n].to_vec())
                .collect(),
        }
    }
}

fn sum_slice<T: Scalar>(g: &[T], len: usize) -> T {
    g[..len].iter().fold(T::zero(), |acc, v| acc + v.clone())
}

impl<T: Scalar> Polytope<T> for BargainingProblem<T> {
    fn players(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn generators(&self) -> &[Vec<T>] {
        &self.generators
    }

    fn rebuild(&self, generators: Vec<Vec<T>>) -> Result<Self> {
        validate_generators(&generators, self.n)?;
        Ok(BargainingProblem {
            n: self.n,
            generators,
        })
    }

    fn permute(&self, rho: &Permutation) -> Result<Self> {
        if rho.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rho.len(),
            });
        }
        let gens = self.generators.iter().map(|g| rho.apply(g)).collect();
        Ok(BargainingProblem {
            n: self.n,
            generators: gens,
        })
    }

    fn efficient_total(&self) -> T {
        let (_, alt) = self.efficient_alternative();
        sum_slice(alt, self.n)
    }
}

impl<T: Scalar> Polytope<T> for SurplusProblem<T> {
    fn players(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.n + 1
    }

    fn generators(&self) -> &[Vec<T>] {
        &self.generators
    }

    fn rebuild(&self, generators: Vec<Vec<T>>) -> Result<Self> {
        validate_generators(&generators, self.n + 1)?;
        Ok(SurplusProblem {
            n: self.n,
            generators,
        })
    }

    fn permute(&self, rho: &Permutation) -> Result<Self> {
        if rho.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rho.len(),
            });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let mut out = rho.apply(&g[..self.n]);
                out.push(g[self.n].clone());
                out
            })
            .collect();
        Ok(SurplusProblem {
            n: self.n,
            generators: gens,
        })
    }

    fn efficient_total(&self) -> T {
        let (_, alt) = self.efficient_alternative();
        sum_slice(alt, self.n + 1)
    }
}

/// A pairing of generator indices between two problems, covering every
/// generator on both sides.
#[derive(Clone, Debug)]
pub struct GeneratorMatching {
    pairs: Vec<(usize, usize)>,
}

impl GeneratorMatching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        GeneratorMatching { pairs }
    }

    /// Pairs generator `i` of one problem with generator `i` of the other.
    pub fn identity(len: usize) -> Self {
        GeneratorMatching {
            pairs: (0..len).map(|i| (i, i)).collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn validate(&self, len_a: usize, len_b: usize) -> Result<()> {
        let mut hit_a = vec![false; len_a];
        let mut hit_b = vec![false; len_b];
        for &(i, j) in &self.pairs {
            if i >= len_a || j >= len_b {
                return Err(Error::InvalidMatching);
            }
            hit_a[i] = true;
            hit_b[j] = true;
        }
        if hit_a.iter().all(|&h| h) && hit_b.iter().all(|&h| h) {
            Ok(())
        } else {
            Err(Error::InvalidMatching)
        }
    }
}

/// Upper bound on the Hausdorff distance between two hulls: the maximum
/// Euclidean displacement across matched generator pairs. Hulls of
/// pointwise-close sets are Hausdorff-close by at most this amount.
pub fn hausdorff_upper_bound<T: Scalar, P: Polytope<T>>(
    a: &P,
    b: &P,
    matching: &GeneratorMatching,
) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    matching.validate(a.generators().len(), b.generators().len())?;
    let mut worst = 0.0f64;
    for &(i, j) in matching.pairs() {
        let ga = &a.generators()[i];
        let gb = &b.generators()[j];
        let dist2: f64 = ga
            .iter()
            .zip(gb)
            .map(|(x, y)| {
                let d = x.to_f64() - y.to_f64();
                d * d
            })
            .sum();
        worst = worst.max(dist2.sqrt());
    }
    Ok(worst)
}
