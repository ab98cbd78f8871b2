//! Finitely generated affine monoids.
//!
//! Hilbert bases are computed per simplicial cone of a pulling triangulation:
//! lattice points of the ray parallelepiped generate, and a graded reduction
//! pass keeps exactly the irreducible elements. Halfspace slicing follows the
//! classical constructive route: the monoid cut by `l >= 0` is the image of
//! the Hilbert basis of `{a >= 0 : sum a_i l(g_i) >= 0}` in coefficient
//! space, one inequality at a time.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg;
use crate::polyhedra::RationalCone;
use crate::scalar::Rational;
use crate::Result;

/// Ambient lattice of a monoid: `N^n` or `Z^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeMode {
    Natural,
    Integer,
}

/// Which lattice a Hilbert basis is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertMode {
    /// Basis of `C /\ N^n`.
    Orthant,
    /// Basis of `C /\ Z^n`.
    Full,
}

/// A finitely generated submonoid of `Z^n`, given by generators.
///
/// Generator order is part of the value: per-generator truncation is
/// presentation-dependent by definition, so the stored order is the caller's.
/// `Z`-lattice monoids are accepted only when the cone of generators is
/// pointed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMonoid {
    ambient_dim: usize,
    lattice: LatticeMode,
    generators: Vec<Vec<BigInt>>,
    cone: RationalCone,
    saturated: Option<bool>,
}

impl AffineMonoid {
    pub fn new(generators: Vec<Vec<BigInt>>, lattice: LatticeMode) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::EmptyMonoid);
        };
        let ambient_dim = first.len();
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for g in &generators {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: g.len(),
                });
            }
            if lattice == LatticeMode::Natural && g.iter().any(|x| x.is_negative()) {
                return Err(Error::NegativeGenerator);
            }
            if g.iter().all(|x| x.is_zero()) {
                continue;
            }
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        if gens.is_empty() {
            return Err(Error::EmptyMonoid);
        }
        let cone = RationalCone::from_rays(&gens, ambient_dim).map_err(|e| match e {
            Error::ContainsLine => Error::NotPointed,
            other => other,
        })?;
        Ok(AffineMonoid {
            ambient_dim,
            lattice,
            generators: gens,
            cone,
            saturated: None,
        })
    }

    pub fn standard(dim: usize) -> Self {
        let gens: Vec<Vec<BigInt>> = (0..dim)
            .map(|i| {
                let mut v = vec![BigInt::zero(); dim];
                v[i] = BigInt::one();
                v
            })
            .collect();
        let mut m = AffineMonoid::new(gens, LatticeMode::Natural).expect("standard monoid");
        m.saturated = Some(true);
        m
    }

    pub(crate) fn with_saturated_flag(mut self, flag: bool) -> Self {
        self.saturated = Some(flag);
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn lattice(&self) -> LatticeMode {
        self.lattice
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// The real cone spanned by the generators.
    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    pub fn saturated_flag(&self) -> Option<bool> {
        self.saturated
    }

    /// Decomposition of `x` over the generators with the lexicographically
    /// smallest coefficient vector (in stored generator order), or `None`
    /// when `x` is not in the monoid.
    pub fn decompose(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        if x.len() != self.ambient_dim {
            return None;
        }
        if x.iter().all(|z| z.is_zero()) {
            return Some(vec![BigInt::zero(); self.generators.len()]);
        }
        if !self.cone.contains_int(x) {
            return None;
        }
        let grading = self.cone.positive_grading();
        let gen_deg: Vec<BigInt> = self
            .generators
            .iter()
            .map(|g| linalg::dot_int(&grading, g))
            .collect();
        debug_assert!(gen_deg.iter().all(|d| d.is_positive()));
        let mut coeffs = vec![BigInt::zero(); self.generators.len()];
        let mut residual = x.to_vec();
        if decompose_dfs(
            &self.generators,
            &self.cone,
            &grading,
            &gen_deg,
            0,
            &mut residual,
            &mut coeffs,
        ) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.decompose(x).is_some()
    }

    /// Set-level equality of the generated monoids.
    pub fn same_monoid(&self, other: &AffineMonoid) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.generators.iter().all(|g| other.contains(g))
            && other.generators.iter().all(|g| self.contains(g))
    }

    /// Saturation: the Hilbert basis of `cone(S)` in the ambient lattice.
    pub fn saturate(&self) -> Result<AffineMonoid> {
        let mode = match self.lattice {
            LatticeMode::Natural => HilbertMode::Orthant,
            LatticeMode::Integer => HilbertMode::Full,
        };
        let basis = hilbert_basis(&self.cone, mode)?;
        let m = AffineMonoid::new(basis, self.lattice)?;
        Ok(m.with_saturated_flag(true))
    }

    /// Decides saturation (no caching; values are immutable).
    pub fn is_saturated(&self) -> Result<bool> {
        if let Some(f) = self.saturated {
            return Ok(f);
        }
        let sat = self.saturate()?;
        Ok(sat.generators.iter().all(|g| self.contains(g)))
    }

    /// Truncation. Uniform mode is `kappa * S`, reduced to its atoms so the
    /// result is independent of the presentation; per-generator mode is the
    /// literal `sum N kappa_i g_i` in stored generator order.
    pub fn truncate(&self, t: &Truncation) -> Result<AffineMonoid> {
        match t {
            Truncation::Uniform(kappa) => {
                if *kappa == 0 {
                    return Err(Error::InvalidTruncation);
                }
                let k = BigInt::from(*kappa);
                let gens: Vec<Vec<BigInt>> = self
                    .generators
                    .iter()
                    .map(|g| g.iter().map(|x| x * &k).collect())
                    .collect();
                let atoms = reduce_to_atoms(gens, self.ambient_dim, self.lattice)?;
                AffineMonoid::new(atoms, self.lattice)
            }
            Truncation::PerGenerator(kappas) => {
                if kappas.len() != self.generators.len() {
                    return Err(Error::DimensionMismatch {
                        expected: self.generators.len(),
                        got: kappas.len(),
                    });
                }
                if kappas.iter().any(|&k| k == 0) {
                    return Err(Error::InvalidTruncation);
                }
                let gens: Vec<Vec<BigInt>> = self
                    .generators
                    .iter()
                    .zip(kappas)
                    .map(|(g, &k)| {
                        let kk = BigInt::from(k);
                        g.iter().map(|x| x * &kk).collect()
                    })
                    .collect();
                AffineMonoid::new(gens, self.lattice)
            }
        }
    }

    /// `S /\ C` by iterated halfspace slicing over the minimal inequality
    /// system of `C`; the output generator list is reduced to atoms and
    /// lex-sorted, so it does not depend on the inequality order.
    pub fn intersect_with_cone(&self, c: &RationalCone) -> Result<AffineMonoid> {
        if c.ambient_dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: c.ambient_dim(),
            });
        }
        let mut gens = self.generators.clone();
        for row in c.dual_description() {
            gens = slice_by_halfspace(&gens, &row)?;
            if gens.is_empty() {
                break;
            }
        }
        if gens.is_empty() {
            // the intersection is the trivial monoid
            return Err(Error::EmptyMonoid);
        }
        let atoms = reduce_to_atoms(gens, self.ambient_dim, self.lattice)?;
        let m = AffineMonoid::new(atoms, self.lattice)?;
        Ok(if self.saturated == Some(true) {
            m.with_saturated_flag(true)
        } else {
            m
        })
    }
}

fn decompose_dfs(
    gens: &[Vec<BigInt>],
    cone: &RationalCone,
    grading: &[BigInt],
    gen_deg: &[BigInt],
    i: usize,
    residual: &mut Vec<BigInt>,
    coeffs: &mut Vec<BigInt>,
) -> bool {
    if residual.iter().all(|z| z.is_zero()) {
        for c in coeffs.iter_mut().skip(i) {
            *c = BigInt::zero();
        }
        return true;
    }
    if i == gens.len() || !cone.contains_int(residual) {
        return false;
    }
    let deg = linalg::dot_int(grading, residual);
    let max_c: BigInt = &deg / &gen_deg[i];
    let mut used = BigInt::zero();
    loop {
        coeffs[i] = used.clone();
        if decompose_dfs(gens, cone, grading, gen_deg, i + 1, residual, coeffs) {
            return true;
        }
        used += 1;
        if used > max_c {
            let back = &used - 1;
            for (r, gi) in residual.iter_mut().zip(&gens[i]) {
                *r += gi * &back;
            }
            return false;
        }
        for (r, gi) in residual.iter_mut().zip(&gens[i]) {
            *r -= gi;
        }
    }
}

/// Truncation parameters.
#[derive(Clone, Debug)]
pub enum Truncation {
    Uniform(u64),
    PerGenerator(Vec<u64>),
}

/// An additive map between ambient lattices, acting by an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveMap {
    /// `target_dim x source_dim`.
    matrix: Vec<Vec<BigInt>>,
}

impl AdditiveMap {
    pub fn new(matrix: Vec<Vec<BigInt>>) -> Result<Self> {
        let Some(first) = matrix.first() else {
            return Err(Error::InvalidInput(String::from("empty matrix")));
        };
        let cols = first.len();
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput(String::from("ragged matrix")));
        }
        Ok(AdditiveMap { matrix })
    }

    pub fn source_dim(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.iter().map(|row| linalg::dot_int(row, x)).collect()
    }
}

/// Hilbert basis of `C /\ N^n` or `C /\ Z^n` for a pointed cone `C`: the
/// unique minimal generating set, lex-sorted.
pub fn hilbert_basis(cone: &RationalCone, mode: HilbertMode) -> Result<Vec<Vec<BigInt>>> {
    let n = cone.ambient_dim();
    let work = match mode {
        HilbertMode::Full => cone.clone(),
        HilbertMode::Orthant => {
            let rows: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    let mut r = vec![BigInt::zero(); n];
                    r[i] = BigInt::one();
                    r
                })
                .collect();
            let orthant = RationalCone::from_inequalities(&rows, n)?;
            cone.intersect(&orthant)?
        }
    };
    if work.extremal_rays().is_empty() {
        return Ok(Vec::new());
    }

    // candidate generators: lattice points of ray parallelepipeds over a
    // pulling triangulation
    let mut candidates: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for simplex in triangulate(&work) {
        for p in parallelepiped_lattice_points(&simplex) {
            if !p.iter().all(|x| x.is_zero()) {
                candidates.insert(p);
            }
        }
    }

    // graded reduction keeps exactly the irreducibles
    let grading = work.positive_grading();
    let mut cands: Vec<Vec<BigInt>> = candidates.into_iter().collect();
    cands.sort_by(|a, b| {
        let da = linalg::dot_int(&grading, a);
        let db = linalg::dot_int(&grading, b);
        da.cmp(&db).then_with(|| linalg::lex_cmp(a, b))
    });
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    for c in cands {
        if !generates(&basis, &c, &work, &grading) {
            basis.push(c);
        }
    }
    basis.sort_by(|a, b| linalg::lex_cmp(a, b));
    Ok(basis)
}

/// Is `x` an `N`-combination of `gens`? DFS with cone-membership pruning.
fn generates(gens: &[Vec<BigInt>], x: &[BigInt], cone: &RationalCone, grading: &[BigInt]) -> bool {
    if x.iter().all(|z| z.is_zero()) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let gen_deg: Vec<BigInt> = gens.iter().map(|g| linalg::dot_int(grading, g)).collect();
    let mut coeffs = vec![BigInt::zero(); gens.len()];
    let mut residual = x.to_vec();
    decompose_dfs(gens, cone, grading, &gen_deg, 0, &mut residual, &mut coeffs)
}

/// Pulling triangulation into simplicial subcones, each given by its rays.
fn triangulate(cone: &RationalCone) -> Vec<Vec<Vec<BigInt>>> {
    let rays = cone.extremal_rays().to_vec();
    let rank = cone.dim();
    if rays.len() <= rank {
        return vec![rays];
    }
    let apex = rays[0].clone();
    let mut out = Vec::new();
    for facet in cone.facets() {
        if linalg::dot_int(facet, &apex).is_zero() {
            continue; // apex lies on this facet
        }
        let facet_rays: Vec<Vec<BigInt>> = rays
            .iter()
            .filter(|r| linalg::dot_int(facet, r).is_zero())
            .cloned()
            .collect();
        if facet_rays.is_empty() {
            continue;
        }
        let facet_cone = RationalCone::from_rays(&facet_rays, cone.ambient_dim())
            .expect("face of a pointed cone is pointed");
        for mut simplex in triangulate(&facet_cone) {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    out
}

/// Lattice points of `{sum t_i r_i : 0 <= t_i <= 1}` for independent rays.
fn parallelepiped_lattice_points(rays: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rays.is_empty() {
        return Vec::new();
    }
    let n = rays[0].len();
    let k = rays.len();
    let mut lo = vec![BigInt::zero(); n];
    let mut hi = vec![BigInt::zero(); n];
    for r in rays {
        for j in 0..n {
            if r[j].is_negative() {
                lo[j] += &r[j];
            } else {
                hi[j] += &r[j];
            }
        }
    }
    // columns = rays; the parameter vector is unique when it exists
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..k).map(|j| Rational::from(rays[j][i].clone())).collect())
        .collect();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    let zero = Rational::zero();
    let one = Rational::one();
    'outer: loop {
        let b: Vec<Rational> = cur.iter().map(|x| Rational::from(x.clone())).collect();
        if let Some((t, kernel)) = linalg::solve(&a, &b) {
            debug_assert!(kernel.is_empty(), "rays are independent");
            if t.iter().all(|ti| *ti >= zero && *ti <= one) {
                out.push(cur.clone());
            }
        }
        for j in 0..n {
            cur[j] += 1;
            if cur[j] <= hi[j] {
                continue 'outer;
            }
            cur[j] = lo[j].clone();
            if j == n - 1 {
                break 'outer;
            }
        }
    }
    out
}

/// Generators of `<gens> /\ {l >= 0}`: images of the minimal solutions of
/// `{a in N^k : sum a_i l(g_i) >= 0}` in coefficient space.
fn slice_by_halfspace(gens: &[Vec<BigInt>], ell: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let vals: Vec<BigInt> = gens.iter().map(|g| linalg::dot_int(ell, g)).collect();
    if vals.iter().all(|v| !v.is_negative()) {
        return Ok(gens.to_vec());
    }
    let basis = minimal_inequality_solutions(&vals);
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    for a in basis {
        let mut img = vec![BigInt::zero(); gens[0].len()];
        for (ai, g) in a.iter().zip(gens) {
            for (x, gi) in img.iter_mut().zip(g) {
                *x += gi * ai;
            }
        }
        if !img.iter().all(|x| x.is_zero()) && !out.contains(&img) {
            out.push(img);
        }
    }
    Ok(out)
}

/// Minimal nonzero solutions of `w . a >= 0`, `a in N^k` (the Hilbert basis
/// of the knapsack monoid). Every minimal solution has `||a||_1` at most
/// `maxpos + maxneg`: ordering the chosen weights so that partial sums stay
/// in the open window `(-maxneg, maxpos)` forces, by pigeonhole, a proper
/// zero-sum segment in anything longer, which splits the solution.
fn minimal_inequality_solutions(w: &[BigInt]) -> Vec<Vec<BigInt>> {
    let k = w.len();
    let maxpos = w.iter().filter(|x| x.is_positive()).max().cloned();
    let Some(maxpos) = maxpos else {
        // no positive weight: solutions are supported on zero weights
        return (0..k)
            .filter(|&i| w[i].is_zero())
            .map(|i| {
                let mut e = vec![BigInt::zero(); k];
                e[i] = BigInt::one();
                e
            })
            .collect();
    };
    let maxneg = w
        .iter()
        .filter(|x| x.is_negative())
        .map(|x| -x.clone())
        .max()
        .unwrap_or_else(BigInt::zero);
    let bound_big = &maxpos + &maxneg;
    let bound = usize::try_from(&bound_big).expect("slice bound fits usize");

    let mut minimal: Vec<(Vec<BigInt>, BigInt)> = Vec::new(); // (a, w.a)
    // breadth-first over compositions so the reduction is graded; states
    // whose deficit cannot be recovered within the remaining budget and
    // states past a zero-sum split are dropped
    let mut level_points: Vec<Vec<u64>> = vec![vec![0; k]];
    for level in 1..=bound {
        let remaining = BigInt::from(bound - level);
        let mut next: BTreeSet<Vec<u64>> = BTreeSet::new();
        for p in &level_points {
            for i in 0..k {
                let mut q = p.clone();
                q[i] += 1;
                next.insert(q);
            }
        }
        let mut kept: Vec<Vec<u64>> = Vec::new();
        for q in next {
            let a: Vec<BigInt> = q.iter().map(|&x| BigInt::from(x)).collect();
            let dot = linalg::dot_int(w, &a);
            if dot.is_negative() {
                // keep only if the deficit can still be recovered
                if (&dot + &remaining * &maxpos).is_negative() {
                    continue;
                }
                kept.push(q);
                continue;
            }
            let reducible = minimal.iter().any(|(b, bdot)| {
                b.iter().zip(&a).all(|(bi, ai)| bi <= ai) && !(&dot - bdot).is_negative()
            });
            if !reducible {
                minimal.push((a, dot));
            }
            kept.push(q);
        }
        level_points = kept;
    }
    minimal.into_iter().map(|(a, _)| a).collect()
}

/// Removes generators expressible over the others until none is; the result
/// is the unique atom set, lex-sorted.
fn reduce_to_atoms(
    gens: Vec<Vec<BigInt>>,
    _ambient_dim: usize,
    lattice: LatticeMode,
) -> Result<Vec<Vec<BigInt>>> {
    let mut work: Vec<Vec<BigInt>> = Vec::new();
    for g in gens {
        if !g.iter().all(|x| x.is_zero()) && !work.contains(&g) {
            work.push(g);
        }
    }
    work.sort_by(|a, b| linalg::lex_cmp(a, b));
    loop {
        let mut removed = false;
        for i in 0..work.len() {
            if work.len() == 1 {
                break;
            }
            let mut others = work.clone();
            let g = others.remove(i);
            let m = AffineMonoid::new(others, lattice)?;
            if m.contains(&g) {
                work.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return Ok(work);
        }
    }
}

/// Preimage `lambda^{-1}(T) /\ source` for saturated `T` and `source`,
/// computed as `source /\ lambda^{-1}(cone(T))`.
pub fn preimage(map: &AdditiveMap, target: &AffineMonoid, source: &AffineMonoid) -> Result<AffineMonoid> {
    if map.source_dim() != source.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: source.ambient_dim(),
            got: map.source_dim(),
        });
    }
    if map.target_dim() != target.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: target.ambient_dim(),
            got: map.target_dim(),
        });
    }
    if !source.is_saturated()? || !target.is_saturated()? {
        return Err(Error::InvalidInput(String::from(
            "preimage requires saturated source and target",
        )));
    }
    // containment of T in the image monoid (bounded witness search)
    let images: Vec<Vec<BigInt>> = source.generators().iter().map(|g| map.apply(g)).collect();
    for t in target.generators() {
        if !bounded_combination(&images, t, 60) {
            return Err(Error::SurjectivityFailed);
        }
    }
    // slice the source by the pulled-back inequality system of cone(T)
    let mut gens = source.generators().to_vec();
    for row in target.cone().dual_description() {
        let pulled: Vec<BigInt> = (0..map.source_dim())
            .map(|j| {
                map.matrix()
                    .iter()
                    .zip(&row)
                    .map(|(mrow, ri)| &mrow[j] * ri)
                    .sum()
            })
            .collect();
        if pulled.iter().all(|x: &BigInt| x.is_zero()) {
            continue;
        }
        gens = slice_by_halfspace(&gens, &pulled)?;
        if gens.is_empty() {
            return Err(Error::EmptyMonoid);
        }
    }
    let atoms = reduce_to_atoms(gens, source.ambient_dim(), source.lattice())?;
    let m = AffineMonoid::new(atoms, source.lattice())?;
    Ok(m.with_saturated_flag(true))
}

/// Bounded search for `x = sum c_i v_i`, `c_i in N`, `sum c_i <= cap`.
/// Sound but budget-limited: the vectors need not span a pointed cone.
fn bounded_combination(vecs: &[Vec<BigInt>], x: &[BigInt], cap: u64) -> bool {
    fn dfs(vecs: &[Vec<BigInt>], i: usize, residual: &mut Vec<BigInt>, left: u64) -> bool {
        if residual.iter().all(|z| z.is_zero()) {
            return true;
        }
        if i == vecs.len() {
            return false;
        }
        let mut used = 0u64;
        loop {
            if dfs(vecs, i + 1, residual, left - used) {
                return true;
            }
            if used == left {
                for (r, vi) in residual.iter_mut().zip(&vecs[i]) {
                    *r += vi * BigInt::from(used);
                }
                return false;
            }
            used += 1;
            for (r, vi) in residual.iter_mut().zip(&vecs[i]) {
                *r -= vi;
            }
        }
    }
    let mut residual = x.to_vec();
    dfs(vecs, 0, &mut residual, cap)
}
