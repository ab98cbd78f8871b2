//! Exact vectors, sup-norm geometry and rational affine subspaces.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg;
use crate::scalar::{ExactScalar, Rational};
use crate::Result;

/// A point of `R^n` with exactly represented coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactVector {
    coords: Vec<ExactScalar>,
}

impl ExactVector {
    pub fn new(coords: Vec<ExactScalar>) -> Self {
        ExactVector { coords }
    }

    pub fn from_rationals(v: &[Rational]) -> Self {
        ExactVector {
            coords: v.iter().cloned().map(ExactScalar::from_rational).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        ExactVector {
            coords: alloc::vec![ExactScalar::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &ExactScalar {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Every coordinate rational?
    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.is_rational())
    }

    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(|c| c.as_rational()).collect()
    }

    pub fn add(&self, o: &ExactVector) -> ExactVector {
        debug_assert_eq!(self.dim(), o.dim());
        ExactVector {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &ExactVector) -> ExactVector {
        debug_assert_eq!(self.dim(), o.dim());
        ExactVector {
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &ExactScalar) -> ExactVector {
        ExactVector {
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    /// `max_i |x_i|`, an exact scalar with decidable comparisons.
    pub fn sup_norm(&self) -> ExactScalar {
        let mut best = ExactScalar::zero();
        for c in &self.coords {
            let a = c.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    /// The rational-part / radical-coefficient decomposition: returns the
    /// rational part vector and, per radicand, the rational coefficient
    /// vector of `sqrt(d)` across coordinates.
    pub fn radicand_components(&self) -> (Vec<Rational>, Vec<(u64, Vec<Rational>)>) {
        let n = self.dim();
        let rational_part: Vec<Rational> = self.coords.iter().map(|c| c.rational_part()).collect();
        let mut radicands: Vec<u64> = Vec::new();
        for c in &self.coords {
            for (d, _) in c.radical_terms() {
                if !radicands.contains(&d) {
                    radicands.push(d);
                }
            }
        }
        radicands.sort_unstable();
        let comps = radicands
            .into_iter()
            .map(|d| {
                let v: Vec<Rational> = (0..n).map(|i| self.coords[i].coeff(d)).collect();
                (d, v)
            })
            .collect();
        (rational_part, comps)
    }
}

/// `||x - y||_inf`, exact.
pub fn sup_distance(x: &ExactVector, y: &ExactVector) -> Result<ExactScalar> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    Ok(x.sub(y).sup_norm())
}

/// An affine subspace `base + span_R(directions)` with rational directions.
///
/// The subspace is *rational* when it contains a rational point, which for
/// rational directions happens exactly when every radical component of the
/// base point lies in the rational span of the directions.
#[derive(Clone, Debug)]
pub struct AffineSubspace {
    base: ExactVector,
    directions: Vec<Vec<Rational>>,
}

impl AffineSubspace {
    /// Constructor; rejects dependent direction lists.
    pub fn new(base: ExactVector, directions: Vec<Vec<Rational>>) -> Result<Self> {
        for d in &directions {
            if d.len() != base.dim() {
                return Err(Error::DimensionMismatch {
                    expected: base.dim(),
                    got: d.len(),
                });
            }
        }
        if linalg::rank(&directions) != directions.len() {
            return Err(Error::InvalidInput(String::from(
                "direction basis is linearly dependent",
            )));
        }
        Ok(AffineSubspace { base, directions })
    }

    pub fn point(base: ExactVector) -> Self {
        AffineSubspace {
            base,
            directions: Vec::new(),
        }
    }

    pub fn base(&self) -> &ExactVector {
        &self.base
    }

    pub fn directions(&self) -> &[Vec<Rational>] {
        &self.directions
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    /// Parameters `t` with `base + D t = x`, if `x` lies in the subspace.
    pub fn parameters_of(&self, x: &ExactVector) -> Option<Vec<ExactScalar>> {
        if x.dim() != self.ambient_dim() {
            return None;
        }
        let rhs: Vec<ExactScalar> = x.sub(&self.base).coords;
        // columns = directions
        let n = self.ambient_dim();
        let k = self.directions.len();
        let a: Vec<Vec<ExactScalar>> = (0..n)
            .map(|i| {
                (0..k)
                    .map(|j| ExactScalar::from_rational(self.directions[j][i].clone()))
                    .collect()
            })
            .collect();
        linalg::solve(&a, &rhs).map(|(p, _)| p)
    }

    pub fn contains(&self, x: &ExactVector) -> bool {
        self.parameters_of(x).is_some()
    }

    /// Point of the subspace at rational parameters.
    pub fn at_rational(&self, t: &[Rational]) -> ExactVector {
        debug_assert_eq!(t.len(), self.directions.len());
        let mut coords = self.base.coords.clone();
        for (j, tj) in t.iter().enumerate() {
            for (i, c) in coords.iter_mut().enumerate() {
                let add = ExactScalar::from_rational(&self.directions[j][i] * tj);
                *c = &*c + &add;
            }
        }
        ExactVector { coords }
    }

    /// Constructive rationality test: every radical component of the base
    /// must be a rational combination of the directions.
    pub fn is_rational(&self) -> bool {
        self.rational_base().is_some()
    }

    /// A rational base point for the same subspace, when one exists.
    pub fn rational_base(&self) -> Option<Vec<Rational>> {
        let (rat, comps) = self.base.radicand_components();
        if comps.is_empty() {
            return Some(rat);
        }
        let n = self.ambient_dim();
        let k = self.directions.len();
        // columns = directions, solve D t = component for each radicand
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..k).map(|j| self.directions[j][i].clone()).collect())
            .collect();
        for (_, comp) in &comps {
            linalg::solve(&a, comp)?;
        }
        // base - sum_d sqrt(d) * comp_d = rational part, and it stays in W
        Some(rat)
    }

    /// Replaces the base point by a rational one when possible.
    pub fn canonicalized(&self) -> Option<AffineSubspace> {
        let base = self.rational_base()?;
        Some(AffineSubspace {
            base: ExactVector::from_rationals(&base),
            directions: self.directions.clone(),
        })
    }
}

/// Full solution set of `A x = b` over the reals, as an affine subspace with
/// rational directions (the kernel of the rational matrix `A`), or `None`
/// when the system is infeasible.
pub fn solve_affine(a: &[Vec<Rational>], b: &ExactVector) -> Result<Option<AffineSubspace>> {
    let rows = a.len();
    if b.dim() != rows {
        return Err(Error::DimensionMismatch {
            expected: rows,
            got: b.dim(),
        });
    }
    let cols = if rows == 0 { 0 } else { a[0].len() };
    for r in a {
        if r.len() != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: r.len(),
            });
        }
    }
    let a_lifted: Vec<Vec<ExactScalar>> = a
        .iter()
        .map(|row| row.iter().cloned().map(ExactScalar::from_rational).collect())
        .collect();
    let Some((particular, _)) = linalg::solve(&a_lifted, b.coords()) else {
        return Ok(None);
    };
    let kernel = linalg::nullspace(a);
    Ok(Some(AffineSubspace {
        base: ExactVector::new(particular),
        directions: kernel,
    }))
}
