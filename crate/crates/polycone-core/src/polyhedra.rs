//! Rational polyhedral cones and polytopes with exact dual descriptions.
//!
//! Cones are pointed by standing convention; construction rejects anything
//! with a lineality space. Both descriptions (extremal rays and a minimal
//! integer inequality system) are computed eagerly by the incremental double
//! description method and cached on the value.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg;
use crate::lp;
use crate::scalar::{ExactScalar, Rational};
use crate::vector::ExactVector;
use crate::Result;

/// Membership strength, following the standing conventions: the relative
/// interior of a cone is the origin together with the topological interior
/// taken inside the linear span.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipMode {
    Closure,
    RelativeInterior,
    Interior,
}

/// A pointed rational polyhedral cone with cached dual description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCone {
    ambient_dim: usize,
    /// Extremal rays: primitive integer vectors, lex-sorted.
    rays: Vec<Vec<BigInt>>,
    /// Facet inequalities within the linear span: gcd-reduced integer rows.
    facets: Vec<Vec<BigInt>>,
    /// Integer rows vanishing exactly on the linear span.
    span_eqs: Vec<Vec<BigInt>>,
    span_rank: usize,
}

/// Incremental double description: extremal rays of `{x : rows . x >= 0}`.
///
/// Requires `rank(rows) == d` (pointedness of the result). Zero sets are
/// tracked as bitmasks and adjacency is decided by an exact rank test.
fn dd_extremal_rays(rows: &[Vec<BigInt>], d: usize) -> Result<Vec<Vec<BigInt>>> {
    assert!(rows.len() <= 128, "double description limited to 128 rows");
    if d == 0 {
        return Ok(Vec::new());
    }
    let rat_rows: Vec<Vec<Rational>> = rows.iter().map(|r| linalg::int_to_rational_vec(r)).collect();
    // pick d independent rows greedily
    let mut chosen: Vec<usize> = Vec::new();
    let mut acc: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rat_rows.iter().enumerate() {
        acc.push(row.clone());
        if linalg::rank(&acc) == acc.len() {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        } else {
            acc.pop();
        }
    }
    if chosen.len() != d {
        return Err(Error::ContainsLine);
    }
    let base: Vec<Vec<Rational>> = chosen.iter().map(|&i| rat_rows[i].clone()).collect();
    let inv = linalg::invert(&base).expect("chosen rows are independent");
    // ray_j = column j of inv: base_i . ray_j = delta_ij
    let mut rays: Vec<Vec<BigInt>> = (0..d)
        .map(|j| {
            let col: Vec<Rational> = (0..d).map(|i| inv[i][j].clone()).collect();
            linalg::rational_to_primitive(&col)
        })
        .collect();

    let processed_mask = |processed: &[usize], ray: &[BigInt]| -> u128 {
        let mut m = 0u128;
        for (k, &idx) in processed.iter().enumerate() {
            if linalg::dot_int(&rows[idx], ray).is_zero() {
                m |= 1 << k;
            }
        }
        m
    };

    let mut processed: Vec<usize> = chosen.clone();
    let mut zero_sets: Vec<u128> = rays
        .iter()
        .map(|r| processed_mask(&processed, r))
        .collect();

    for (idx, row) in rows.iter().enumerate() {
        if chosen.contains(&idx) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| linalg::dot_int(row, r)).collect();
        let mut pos = Vec::new();
        let mut zero = Vec::new();
        let mut neg = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            match crate::scalar::int_sign(v) {
                1 => pos.push(i),
                0 => zero.push(i),
                _ => neg.push(i),
            }
        }
        if neg.is_empty() {
            processed.push(idx);
            for (i, z) in zero_sets.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    *z |= 1 << (processed.len() - 1);
                }
            }
            continue;
        }
        let mut new_rays: Vec<Vec<BigInt>> = Vec::new();
        let mut new_sets: Vec<u128> = Vec::new();
        for &i in pos.iter().chain(zero.iter()) {
            new_rays.push(rays[i].clone());
            new_sets.push(zero_sets[i]);
        }
        // adjacent (positive, negative) pairs produce the rays on the wall
        for &p in &pos {
            for &q in &neg {
                let common = zero_sets[p] & zero_sets[q];
                let common_rows: Vec<Vec<Rational>> = processed
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| common & (1 << k) != 0)
                    .map(|(_, &ri)| rat_rows[ri].clone())
                    .collect();
                if linalg::rank(&common_rows) != d - 2 {
                    continue;
                }
                // w = v_p * ray_q - v_q * ray_p lies on the new hyperplane
                let w: Vec<BigInt> = rays[p]
                    .iter()
                    .zip(&rays[q])
                    .map(|(rp, rq)| &vals[p] * rq - &vals[q] * rp)
                    .collect();
                let w = linalg::primitive(&w);
                if new_rays.contains(&w) {
                    continue;
                }
                new_rays.push(w);
                new_sets.push(0); // recomputed below
            }
        }
        processed.push(idx);
        rays = new_rays;
        zero_sets = rays.iter().map(|r| processed_mask(&processed, r)).collect();
        let _ = new_sets;
    }
    rays.sort_by(|a, b| linalg::lex_cmp(a, b));
    rays.dedup();
    Ok(rays)
}

impl RationalCone {
    /// Cone spanned by the given rays. Rejects cones containing a line.
    pub fn from_rays(rays: &[Vec<BigInt>], ambient_dim: usize) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::InvalidInput(String::from("ambient dimension 0")));
        }
        for r in rays {
            if r.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: r.len(),
                });
            }
        }
        let mut gens: Vec<Vec<BigInt>> = rays
            .iter()
            .filter(|r| !r.iter().all(|x| x.is_zero()))
            .map(|r| linalg::primitive(r))
            .collect();
        gens.sort_by(|a, b| linalg::lex_cmp(a, b));
        gens.dedup();

        // linear span and its annihilator (functionals vanishing on all rays)
        let gens_rat: Vec<Vec<Rational>> = gens.iter().map(|g| linalg::int_to_rational_vec(g)).collect();
        let span_eqs_rat = if gens_rat.is_empty() {
            (0..ambient_dim)
                .map(|i| {
                    let mut e = vec![Rational::zero(); ambient_dim];
                    e[i] = Rational::one();
                    e
                })
                .collect()
        } else {
            linalg::nullspace(&gens_rat)
        };
        let mut span_eqs: Vec<Vec<BigInt>> = span_eqs_rat
            .iter()
            .map(|r| canonical_sign(linalg::rational_to_primitive(r)))
            .collect();
        span_eqs.sort_by(|a, b| linalg::lex_cmp(a, b));
        let span_rank = ambient_dim - span_eqs.len();

        // basis of the span chosen among the generators
        let mut basis_idx: Vec<usize> = Vec::new();
        let mut acc: Vec<Vec<Rational>> = Vec::new();
        for (i, g) in gens_rat.iter().enumerate() {
            acc.push(g.clone());
            if linalg::rank(&acc) == acc.len() {
                basis_idx.push(i);
            } else {
                acc.pop();
            }
        }
        debug_assert_eq!(basis_idx.len(), span_rank);

        let facets = if span_rank == 0 {
            Vec::new()
        } else {
            // coordinates of generators in the span basis
            let basis_cols: Vec<Vec<Rational>> = basis_idx.iter().map(|&i| gens_rat[i].clone()).collect();
            let b_mat: Vec<Vec<Rational>> = (0..ambient_dim)
                .map(|i| basis_cols.iter().map(|bc| bc[i].clone()).collect())
                .collect();
            let hats: Vec<Vec<BigInt>> = gens_rat
                .iter()
                .map(|g| {
                    let (sol, _) = linalg::solve(&b_mat, g).expect("generator lies in span");
                    linalg::rational_to_primitive(&sol)
                })
                .collect();
            // facet normals of the span cone = extremal rays of its polar
            let polar = dd_extremal_rays(&hats, span_rank)?;
            // lift y to the ambient functional B (B^T B)^{-1} y (in the span)
            let btb: Vec<Vec<Rational>> = (0..span_rank)
                .map(|i| {
                    (0..span_rank)
                        .map(|j| linalg::dot_rat(&basis_cols[i], &basis_cols[j]))
                        .collect()
                })
                .collect();
            let btb_inv = linalg::invert(&btb).expect("Gram matrix of a basis");
            let mut out: Vec<Vec<BigInt>> = polar
                .iter()
                .map(|y| {
                    let y_rat = linalg::int_to_rational_vec(y);
                    let w: Vec<Rational> = (0..span_rank)
                        .map(|i| linalg::dot_rat(&btb_inv[i], &y_rat))
                        .collect();
                    let lift: Vec<Rational> = (0..ambient_dim)
                        .map(|i| {
                            (0..span_rank)
                                .map(|j| &basis_cols[j][i] * &w[j])
                                .sum()
                        })
                        .collect();
                    linalg::rational_to_primitive(&lift)
                })
                .collect();
            out.sort_by(|a, b| linalg::lex_cmp(a, b));
            out.dedup();
            out
        };

        // pointedness: the combined system must have trivial kernel
        let mut stack: Vec<Vec<Rational>> = facets.iter().map(|f| linalg::int_to_rational_vec(f)).collect();
        stack.extend(span_eqs.iter().map(|e| linalg::int_to_rational_vec(e)));
        if linalg::rank(&stack) != ambient_dim {
            return Err(Error::ContainsLine);
        }

        let mut cone = RationalCone {
            ambient_dim,
            rays: gens,
            facets,
            span_eqs,
            span_rank,
        };
        cone.reduce_rays_to_extremal();
        Ok(cone)
    }

    pub fn from_rational_rays(rays: &[Vec<Rational>], ambient_dim: usize) -> Result<Self> {
        let ints: Vec<Vec<BigInt>> = rays.iter().map(|r| linalg::rational_to_primitive(r)).collect();
        RationalCone::from_rays(&ints, ambient_dim)
    }

    /// Cone `{x : rows . x >= 0}`. Rejects non-pointed input.
    pub fn from_inequalities(rows: &[Vec<BigInt>], ambient_dim: usize) -> Result<Self> {
        for r in rows {
            if r.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: r.len(),
                });
            }
        }
        let rat: Vec<Vec<Rational>> = rows.iter().map(|r| linalg::int_to_rational_vec(r)).collect();
        if linalg::rank(&rat) != ambient_dim {
            return Err(Error::ContainsLine);
        }
        let rays = dd_extremal_rays(rows, ambient_dim)?;
        let cone = RationalCone::from_rays(&rays, ambient_dim)?;
        debug_assert!(cone.rays.iter().all(|r| rows
            .iter()
            .all(|h| !linalg::dot_int(h, r).is_negative())));
        Ok(cone)
    }

    /// The zero cone.
    pub fn origin(ambient_dim: usize) -> Self {
        RationalCone::from_rays(&[], ambient_dim).expect("origin cone")
    }

    fn reduce_rays_to_extremal(&mut self) {
        let mut keep: Vec<Vec<BigInt>> = Vec::new();
        for r in &self.rays {
            let mut active: Vec<Vec<Rational>> = self
                .facets
                .iter()
                .filter(|f| linalg::dot_int(f, r).is_zero())
                .map(|f| linalg::int_to_rational_vec(f))
                .collect();
            active.extend(self.span_eqs.iter().map(|e| linalg::int_to_rational_vec(e)));
            if linalg::rank(&active) == self.ambient_dim - 1 {
                keep.push(r.clone());
            }
        }
        self.rays = keep;
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.span_rank
    }

    /// Extremal rays: primitive integer vectors, lex-sorted, unique up to
    /// positive scaling.
    pub fn extremal_rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    pub fn span_equalities(&self) -> &[Vec<BigInt>] {
        &self.span_eqs
    }

    /// Minimal inequality system: facets plus both signs of each span
    /// equality; the cone is exactly the solution set of `rows . x >= 0`.
    pub fn dual_description(&self) -> Vec<Vec<BigInt>> {
        let mut out = self.facets.clone();
        for e in &self.span_eqs {
            out.push(e.clone());
            out.push(e.iter().map(|x| -x).collect());
        }
        out.sort_by(|a, b| linalg::lex_cmp(a, b));
        out
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.span_rank == self.ambient_dim
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        self.span_eqs.iter().all(|e| linalg::dot_int(e, v).is_zero())
            && self.facets.iter().all(|f| !linalg::dot_int(f, v).is_negative())
    }

    pub fn contains_rat(&self, v: &[Rational]) -> bool {
        self.span_eqs
            .iter()
            .all(|e| linalg::dot_int_rat(e, v).is_zero())
            && self
                .facets
                .iter()
                .all(|f| !linalg::dot_int_rat(f, v).is_negative())
    }

    /// Membership at the requested strength for exactly represented points.
    pub fn membership(&self, x: &ExactVector, mode: MembershipMode) -> Result<bool> {
        if x.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: x.dim(),
            });
        }
        let eval = |row: &[BigInt]| -> ExactScalar {
            let mut acc = ExactScalar::zero();
            for (c, xi) in row.iter().zip(x.coords()) {
                acc += &(xi * &ExactScalar::from_rational(Rational::from(c.clone())));
            }
            acc
        };
        let on_span = self.span_eqs.iter().all(|e| eval(e).is_zero());
        match mode {
            MembershipMode::Closure => {
                Ok(on_span && self.facets.iter().all(|f| eval(f).signum() >= 0))
            }
            MembershipMode::RelativeInterior => {
                if x.is_zero() {
                    return Ok(true); // origin convention
                }
                Ok(on_span && self.facets.iter().all(|f| eval(f).signum() > 0))
            }
            MembershipMode::Interior => {
                if self.span_rank != self.ambient_dim {
                    return Ok(false);
                }
                Ok(self.facets.iter().all(|f| eval(f).signum() > 0))
            }
        }
    }

    /// Intersection of two pointed cones (pointed again).
    pub fn intersect(&self, other: &RationalCone) -> Result<RationalCone> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut rows = self.dual_description();
        rows.extend(other.dual_description());
        RationalCone::from_inequalities(&rows, self.ambient_dim)
    }

    /// A strictly positive integer functional on the cone minus the origin
    /// (sum of facet normals plus span equalities contributes nothing on the
    /// span): positive on every nonzero point of the cone.
    pub fn positive_grading(&self) -> Vec<BigInt> {
        let mut g = vec![BigInt::zero(); self.ambient_dim];
        for f in &self.facets {
            for (gi, fi) in g.iter_mut().zip(f) {
                *gi += fi;
            }
        }
        g
    }
}

fn canonical_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.iter().map(|y| -y).collect(),
        _ => v,
    }
}

/// Result of the segment-extension probe along `base -> through`.
#[derive(Clone, Debug)]
pub struct RayEscape {
    /// `sup { t >= 1 : base + t (through - base) in cone }`; `None` is
    /// `+infinity`.
    pub t_sup: Option<ExactScalar>,
    /// When `t_sup > 1`: a cone point `x'` with `through` strictly inside
    /// the open segment `(base, x')`, witnessing non-extremality.
    pub witness: Option<ExactVector>,
}

/// Escape parameter of the ray from `base` through `through`, plus the
/// deterministic interior witness (parameter midpoint, or `t = 2` on an
/// unbounded escape).
pub fn ray_escape(cone: &RationalCone, base: &ExactVector, through: &ExactVector) -> Result<RayEscape> {
    if !cone.membership(base, MembershipMode::Closure)?
        || !cone.membership(through, MembershipMode::Closure)?
    {
        return Err(Error::OutsideCone);
    }
    let dir = through.sub(base);
    if dir.is_zero() {
        return Err(Error::InvalidInput(String::from("base equals through")));
    }
    let eval = |row: &[BigInt], v: &ExactVector| -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for (c, xi) in row.iter().zip(v.coords()) {
            acc += &(xi * &ExactScalar::from_rational(Rational::from(c.clone())));
        }
        acc
    };
    let mut t_sup: Option<ExactScalar> = None;
    for f in cone.facets() {
        let fd = eval(f, &dir);
        if fd.is_negative() {
            let fb = eval(f, base);
            // f(base) + t f(dir) >= 0  =>  t <= f(base) / (-f(dir))
            let bound = &fb / &(-&fd);
            t_sup = Some(match t_sup {
                None => bound,
                Some(cur) => {
                    if bound < cur {
                        bound
                    } else {
                        cur
                    }
                }
            });
        }
    }
    let at = |t: &ExactScalar| base.add(&dir.scale(t));
    match t_sup {
        None => {
            let two = ExactScalar::from_int(2);
            Ok(RayEscape {
                t_sup: None,
                witness: Some(at(&two)),
            })
        }
        Some(t) => {
            let one = ExactScalar::one();
            debug_assert!(t >= one, "through lies in the cone");
            if t == one {
                Ok(RayEscape {
                    t_sup: Some(t),
                    witness: None,
                })
            } else {
                let half = ExactScalar::from_rational(crate::scalar::ratio(1, 2));
                let mid = &(&one + &t) * &half;
                let w = at(&mid);
                Ok(RayEscape {
                    t_sup: Some(t),
                    witness: Some(w),
                })
            }
        }
    }
}

/// A rational polytope stored by its extreme points.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<Rational>>,
}

impl RationalPolytope {
    /// Convex hull of the given points; redundant points are removed so the
    /// stored vertex list is irredundant.
    pub fn from_points(points: &[Vec<Rational>], ambient_dim: usize) -> Result<Self> {
        for p in points {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: p.len(),
                });
            }
        }
        let mut pts: Vec<Vec<Rational>> = points.to_vec();
        pts.sort();
        pts.dedup();
        let mut vertices = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            let others: Vec<&Vec<Rational>> = pts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q)
                .collect();
            if !in_convex_hull(p, &others) {
                vertices.push(p.clone());
            }
        }
        Ok(RationalPolytope {
            ambient_dim,
            vertices,
        })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        RationalPolytope {
            ambient_dim,
            vertices: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull (`-1` conventionally maps to `None`).
    pub fn dim(&self) -> Option<usize> {
        if self.vertices.is_empty() {
            return None;
        }
        let v0 = &self.vertices[0];
        let diffs: Vec<Vec<Rational>> = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        Some(linalg::rank(&diffs))
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        let refs: Vec<&Vec<Rational>> = self.vertices.iter().collect();
        in_convex_hull(p, &refs)
    }

    /// All lattice points (bounding box filtered by hull membership).
    pub fn lattice_points(&self) -> Vec<Vec<BigInt>> {
        if self.vertices.is_empty() {
            return Vec::new();
        }
        let n = self.ambient_dim;
        let mut lo = vec![BigInt::zero(); n];
        let mut hi = vec![BigInt::zero(); n];
        for j in 0..n {
            let mut mn = self.vertices[0][j].clone();
            let mut mx = mn.clone();
            for v in &self.vertices {
                if v[j] < mn {
                    mn = v[j].clone();
                }
                if v[j] > mx {
                    mx = v[j].clone();
                }
            }
            lo[j] = mn.ceil().to_integer();
            hi[j] = mx.floor().to_integer();
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'outer: loop {
            let p: Vec<Rational> = cur.iter().map(|x| Rational::from(x.clone())).collect();
            if self.contains(&p) {
                out.push(cur.clone());
            }
            // odometer
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
            if n == 0 {
                break;
            }
        }
        out.sort_by(|a, b| linalg::lex_cmp(a, b));
        out
    }
}

/// Exact convex-hull membership via LP feasibility.
pub fn in_convex_hull(p: &[Rational], points: &[&Vec<Rational>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = p.len();
    let k = points.len();
    // sum lambda_i q_i = p, sum lambda_i = 1, lambda >= 0
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    for j in 0..n {
        a.push(points.iter().map(|q| q[j].clone()).collect());
    }
    a.push(vec![Rational::one(); k]);
    let mut b: Vec<Rational> = p.to_vec();
    b.push(Rational::one());
    lp::feasible_nonneg(&a, &b).is_some()
}

/// Minkowski sum of two rational polytopes.
pub fn minkowski_sum(p: &RationalPolytope, q: &RationalPolytope) -> Result<RationalPolytope> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            got: q.ambient_dim(),
        });
    }
    if p.is_empty() || q.is_empty() {
        return Ok(RationalPolytope::empty(p.ambient_dim()));
    }
    let mut sums = Vec::with_capacity(p.vertices().len() * q.vertices().len());
    for a in p.vertices() {
        for b in q.vertices() {
            sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    RationalPolytope::from_points(&sums, p.ambient_dim())
}

/// The cone `R_+ B` over a polytope, generated by its vertices. Errors when
/// the result would contain a line.
pub fn cone_over(b: &RationalPolytope) -> Result<RationalCone> {
    if b.is_empty() {
        return Err(Error::InvalidInput(String::from("cone over empty polytope")));
    }
    RationalCone::from_rational_rays(b.vertices(), b.ambient_dim())
}

/// Fourier-Motzkin elimination of one variable from `{x : rows . x >= 0}`.
/// Returns the projected system (the eliminated column removed).
pub fn fourier_motzkin_eliminate(rows: &[Vec<Rational>], var: usize) -> Vec<Vec<Rational>> {
    let mut zero_rows: Vec<Vec<Rational>> = Vec::new();
    let mut pos: Vec<Vec<Rational>> = Vec::new();
    let mut neg: Vec<Vec<Rational>> = Vec::new();
    let strip = |r: &[Rational]| -> Vec<Rational> {
        r.iter()
            .enumerate()
            .filter(|(j, _)| *j != var)
            .map(|(_, x)| x.clone())
            .collect()
    };
    for r in rows {
        let c = &r[var];
        if c.is_zero() {
            zero_rows.push(strip(r));
        } else if c.is_positive() {
            pos.push(r.clone());
        } else {
            neg.push(r.clone());
        }
    }
    let mut out = zero_rows;
    for p in &pos {
        for q in &neg {
            // p_var * q - q_var * p has zero coefficient at var
            let combined: Vec<Rational> = p
                .iter()
                .zip(q)
                .map(|(pi, qi)| &p[var] * qi - &q[var] * pi)
                .collect();
            out.push(strip(&combined));
        }
    }
    // normalise and dedupe
    let mut canon: Vec<Vec<BigInt>> = out
        .iter()
        .filter(|r| !r.iter().all(|x| x.is_zero()))
        .map(|r| linalg::rational_to_primitive(r))
        .collect();
    canon.sort_by(|a, b| linalg::lex_cmp(a, b));
    canon.dedup();
    canon
        .into_iter()
        .map(|r| linalg::int_to_rational_vec(&r))
        .collect()
}

/// Entry point of the downward ray `x + R_- z` into the polyhedron
/// `{y : w_i . y >= c_i}`: the largest `t <= 0` with `x + t z` feasible,
/// together with the point. `None` when the ray misses the polyhedron.
pub fn halfspace_entry(
    halfspaces: &[(Vec<Rational>, Rational)],
    x: &ExactVector,
    z: &ExactVector,
) -> Option<(ExactScalar, ExactVector)> {
    let mut lower: Option<ExactScalar> = None;
    let mut upper = ExactScalar::zero(); // t <= 0
    for (w, c) in halfspaces {
        let wx = dot_rat_exact(w, x);
        let wz = dot_rat_exact(w, z);
        let cc = ExactScalar::from_rational(c.clone());
        match wz.signum() {
            0 => {
                if (&wx - &cc).is_negative() {
                    return None;
                }
            }
            1 => {
                // t >= (c - wx)/wz
                let bound = &(&cc - &wx) / &wz;
                lower = Some(match lower {
                    None => bound,
                    Some(cur) => {
                        if bound > cur {
                            bound
                        } else {
                            cur
                        }
                    }
                });
            }
            _ => {
                // t <= (c - wx)/wz
                let bound = &(&cc - &wx) / &wz;
                if bound < upper {
                    upper = bound;
                }
            }
        }
    }
    if let Some(lo) = &lower {
        if lo > &upper {
            return None;
        }
    }
    let point = x.add(&z.scale(&upper));
    Some((upper, point))
}

fn dot_rat_exact(w: &[Rational], v: &ExactVector) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (wi, vi) in w.iter().zip(v.coords()) {
        acc += &(vi * &ExactScalar::from_rational(wi.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    pub(crate) fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn cone(rays: &[&[i64]], dim: usize) -> RationalCone {
        let rs: Vec<Vec<BigInt>> = rays.iter().map(|r| iv(r)).collect();
        RationalCone::from_rays(&rs, dim).unwrap()
    }

    fn ev(v: &[i64]) -> ExactVector {
        ExactVector::from_rationals(&v.iter().map(|&x| ratio(x, 1)).collect::<Vec<_>>())
    }

    #[test]
    fn orthant_dual() {
        let c = cone(&[&[1, 0], &[0, 1]], 2);
        assert_eq!(c.dual_description(), vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn skew_cone_dual() {
        // gen {(1,0),(1,3)} -> {y >= 0, 3x - y >= 0}
        let c = cone(&[&[1, 0], &[1, 3]], 2);
        assert_eq!(c.dual_description(), vec![iv(&[0, 1]), iv(&[3, -1])]);
    }

    #[test]
    fn line_rejected() {
        let rs = vec![iv(&[1, 0]), iv(&[-1, 0])];
        assert!(matches!(
            RationalCone::from_rays(&rs, 2),
            Err(Error::ContainsLine)
        ));
    }

    #[test]
    fn extremal_reduction() {
        let c = cone(&[&[1, 0], &[1, 1], &[1, 2]], 2);
        assert_eq!(c.extremal_rays(), &[iv(&[1, 0]), iv(&[1, 2])]);
        let c = cone(&[&[2, 0]], 2);
        assert_eq!(c.extremal_rays(), &[iv(&[1, 0])]);
    }

    /// Brute-force facet oracle: normals from (r-1)-subsets of rays.
    fn facet_oracle(rays: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
        let rat: Vec<Vec<Rational>> = rays.iter().map(|r| linalg::int_to_rational_vec(r)).collect();
        let full_rank = linalg::rank(&rat);
        assert_eq!(full_rank, dim, "oracle assumes full-dimensional cone");
        let k = rays.len();
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        let subsets = 1u32 << k;
        for mask in 0..subsets {
            if (mask.count_ones() as usize) != dim - 1 {
                continue;
            }
            let sel: Vec<Vec<Rational>> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| rat[i].clone())
                .collect();
            if linalg::rank(&sel) != dim - 1 {
                continue;
            }
            let ns = linalg::nullspace(&sel);
            if ns.len() != 1 {
                continue;
            }
            let normal = linalg::rational_to_primitive(&ns[0]);
            let vals: Vec<i32> = rays
                .iter()
                .map(|r| crate::scalar::int_sign(&linalg::dot_int(&normal, r)))
                .collect();
            let cand = if vals.iter().all(|&s| s >= 0) {
                Some(normal)
            } else if vals.iter().all(|&s| s <= 0) {
                Some(normal.iter().map(|x| -x).collect())
            } else {
                None
            };
            if let Some(c) = cand {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        out.sort_by(|a, b| linalg::lex_cmp(a, b));
        out
    }

    #[test]
    fn four_ray_cone_matches_oracle() {
        let rays = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1]), iv(&[1, 1, -1])];
        let c = RationalCone::from_rays(&rays, 3).unwrap();
        assert_eq!(c.facets().len(), 4);
        assert_eq!(c.facets(), facet_oracle(&rays, 3).as_slice());
    }

    #[test]
    fn random_cones_match_oracle_and_roundtrip() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(5);
        let mut done = 0;
        while done < 40 {
            let dim = rng.gen_range(2..=3);
            let nrays = rng.gen_range(dim..=dim + 2);
            let rays: Vec<Vec<BigInt>> = (0..nrays)
                .map(|_| (0..dim).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect())
                .collect();
            let Ok(c) = RationalCone::from_rays(&rays, dim) else {
                continue;
            };
            if c.dim() != dim {
                continue;
            }
            done += 1;
            let oracle = facet_oracle(c.extremal_rays(), dim);
            assert_eq!(c.facets(), oracle.as_slice());
            // round-trip: rebuild from inequalities, same facets and rays
            let c2 = RationalCone::from_inequalities(&c.dual_description(), dim).unwrap();
            assert_eq!(c.facets(), c2.facets());
            assert_eq!(c.extremal_rays(), c2.extremal_rays());
        }
    }

    #[test]
    fn membership_modes() {
        let orthant = cone(&[&[1, 0], &[0, 1]], 2);
        // origin convention for relint
        assert!(orthant
            .membership(&ev(&[0, 0]), MembershipMode::RelativeInterior)
            .unwrap());
        assert!(!orthant.membership(&ev(&[1, 0]), MembershipMode::Interior).unwrap());
        assert!(orthant.membership(&ev(&[1, 0]), MembershipMode::Closure).unwrap());
        let c = cone(&[&[1, 0], &[1, 2]], 2);
        assert!(c.membership(&ev(&[1, 1]), MembershipMode::Interior).unwrap());
        // low-dimensional cone: relint strict inside span, never interior
        let ray = cone(&[&[1, 1]], 2);
        assert!(ray
            .membership(&ev(&[2, 2]), MembershipMode::RelativeInterior)
            .unwrap());
        assert!(!ray.membership(&ev(&[2, 2]), MembershipMode::Interior).unwrap());
        assert!(!ray
            .membership(&ev(&[1, 2]), MembershipMode::Closure)
            .unwrap());
    }

    #[test]
    fn membership_agrees_with_lp_oracle() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(17);
        let mut cones = Vec::new();
        while cones.len() < 8 {
            let dim = rng.gen_range(2..=4);
            let nrays = rng.gen_range(dim..=dim + 2);
            let rays: Vec<Vec<BigInt>> = (0..nrays)
                .map(|_| (0..dim).map(|_| BigInt::from(rng.gen_range(-10i64..=10))).collect())
                .collect();
            if let Ok(c) = RationalCone::from_rays(&rays, dim) {
                cones.push(c);
            }
        }
        for c in &cones {
            let dim = c.ambient_dim();
            for _ in 0..125 {
                let p: Vec<Rational> = (0..dim)
                    .map(|_| ratio(rng.gen_range(-8i64..=8), rng.gen_range(1i64..=3)))
                    .collect();
                let ours = c
                    .membership(&ExactVector::from_rationals(&p), MembershipMode::Closure)
                    .unwrap();
                // LP oracle on the generator side: p = sum nu_i r_i, nu >= 0
                let k = c.extremal_rays().len();
                let a: Vec<Vec<Rational>> = (0..dim)
                    .map(|j| {
                        (0..k)
                            .map(|i| Rational::from(c.extremal_rays()[i][j].clone()))
                            .collect()
                    })
                    .collect();
                let oracle = lp::feasible_nonneg(&a, &p).is_some();
                assert_eq!(ours, oracle);
            }
        }
    }

    #[test]
    fn ray_escape_examples() {
        // orthant, base (1,1), through (2,1): unbounded, witness (3,1)
        let orthant = cone(&[&[1, 0], &[0, 1]], 2);
        let r = ray_escape(&orthant, &ev(&[1, 1]), &ev(&[2, 1])).unwrap();
        assert!(r.t_sup.is_none());
        assert_eq!(r.witness.unwrap(), ev(&[3, 1]));

        // cone gen {(1,0),(1,1)}, base (2,1), through (1,1): t_sup = 1
        let c = cone(&[&[1, 0], &[1, 1]], 2);
        let r = ray_escape(&c, &ev(&[2, 1]), &ev(&[1, 1])).unwrap();
        assert_eq!(r.t_sup.unwrap(), ExactScalar::one());
        assert!(r.witness.is_none());

        // orthant, base (2,2), through (1,2): t_sup = 2, witness (1/2, 2)
        let r = ray_escape(&orthant, &ev(&[2, 2]), &ev(&[1, 2])).unwrap();
        assert_eq!(r.t_sup.unwrap(), ExactScalar::from_int(2));
        let w = r.witness.unwrap();
        assert_eq!(w.coords()[0], ExactScalar::from_rational(ratio(1, 2)));
        assert_eq!(w.coords()[1], ExactScalar::from_int(2));

        // outside-cone input rejected
        assert!(matches!(
            ray_escape(&orthant, &ev(&[-1, 0]), &ev(&[1, 1])),
            Err(Error::OutsideCone)
        ));
    }

    #[test]
    fn polytope_hull_and_minkowski() {
        let seg_x = RationalPolytope::from_points(
            &[vec![ratio(0, 1), ratio(0, 1)], vec![ratio(1, 1), ratio(0, 1)]],
            2,
        )
        .unwrap();
        let seg_y = RationalPolytope::from_points(
            &[vec![ratio(0, 1), ratio(0, 1)], vec![ratio(0, 1), ratio(1, 1)]],
            2,
        )
        .unwrap();
        let square = minkowski_sum(&seg_x, &seg_y).unwrap();
        assert_eq!(square.vertices().len(), 4);
        assert_eq!(square.dim(), Some(2));

        // P + point = translate
        let pt = RationalPolytope::from_points(&[vec![ratio(5, 1), ratio(7, 1)]], 2).unwrap();
        let tr = minkowski_sum(&square, &pt).unwrap();
        assert_eq!(tr.vertices().len(), 4);
        assert!(tr.contains(&[ratio(11, 2), ratio(15, 2)]));

        // interior point is not a vertex
        let with_mid = RationalPolytope::from_points(
            &[
                vec![ratio(0, 1), ratio(0, 1)],
                vec![ratio(2, 1), ratio(0, 1)],
                vec![ratio(0, 1), ratio(2, 1)],
                vec![ratio(1, 2), ratio(1, 2)],
            ],
            2,
        )
        .unwrap();
        assert_eq!(with_mid.vertices().len(), 3);
    }

    #[test]
    fn minkowski_matches_bruteforce_hull_oracle() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..20 {
            let tri = |rng: &mut StdRng| -> Vec<Vec<Rational>> {
                (0..3)
                    .map(|_| {
                        (0..2)
                            .map(|_| ratio(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=2)))
                            .collect()
                    })
                    .collect()
            };
            let p = RationalPolytope::from_points(&tri(&mut rng), 2).unwrap();
            let q = RationalPolytope::from_points(&tri(&mut rng), 2).unwrap();
            let sum = minkowski_sum(&p, &q).unwrap();
            // oracle: hull of all pairwise sums, by definition of from_points
            let mut pts = Vec::new();
            for a in p.vertices() {
                for b in q.vertices() {
                    pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>());
                }
            }
            let oracle = RationalPolytope::from_points(&pts, 2).unwrap();
            assert_eq!(sum, oracle);
            // and every pairwise sum is inside
            for pt in &pts {
                assert!(sum.contains(pt));
            }
        }
    }

    #[test]
    fn cone_over_polytope() {
        let b = RationalPolytope::from_points(
            &[vec![ratio(1, 1), ratio(0, 1)], vec![ratio(1, 1), ratio(1, 1)]],
            2,
        )
        .unwrap();
        let c = cone_over(&b).unwrap();
        assert_eq!(c.extremal_rays(), &[iv(&[1, 0]), iv(&[1, 1])]);

        // {x >= |y|}
        let b = RationalPolytope::from_points(
            &[vec![ratio(1, 1), ratio(-1, 1)], vec![ratio(1, 1), ratio(1, 1)]],
            2,
        )
        .unwrap();
        let c = cone_over(&b).unwrap();
        assert_eq!(c.dual_description(), vec![iv(&[1, -1]), iv(&[1, 1])]);

        // segment through the origin -> line -> rejected
        let b = RationalPolytope::from_points(
            &[
                vec![ratio(-1, 1), ratio(0, 1)],
                vec![ratio(0, 1), ratio(0, 1)],
                vec![ratio(1, 1), ratio(0, 1)],
            ],
            2,
        )
        .unwrap();
        assert!(matches!(cone_over(&b), Err(Error::ContainsLine)));
    }

    #[test]
    fn ray_escape_witness_is_exact_convex_combination() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(41);
        let mut checked = 0;
        while checked < 60 {
            let dim = rng.gen_range(2..=3);
            let nrays = rng.gen_range(dim..=dim + 1);
            let rays: Vec<Vec<BigInt>> = (0..nrays)
                .map(|_| (0..dim).map(|_| BigInt::from(rng.gen_range(0i64..=6))).collect())
                .collect();
            let Ok(c) = RationalCone::from_rays(&rays, dim) else {
                continue;
            };
            if c.extremal_rays().is_empty() {
                continue;
            }
            // random cone points as nonnegative combinations
            let mk = |rng: &mut StdRng| {
                let mut v = vec![ExactScalar::zero(); dim];
                for r in c.extremal_rays() {
                    let w = ratio(rng.gen_range(0i64..=4), rng.gen_range(1i64..=2));
                    for (vi, ri) in v.iter_mut().zip(r) {
                        *vi = &*vi
                            + &ExactScalar::from_rational(&w * Rational::from(ri.clone()));
                    }
                }
                ExactVector::new(v)
            };
            let base = mk(&mut rng);
            let through = mk(&mut rng);
            if base.sub(&through).is_zero() {
                continue;
            }
            checked += 1;
            let r = ray_escape(&c, &base, &through).unwrap();
            if let Some(w) = &r.witness {
                assert!(c.membership(w, MembershipMode::Closure).unwrap());
                // through = base + (w - base)/t*  with t* the witness parameter:
                // equivalently through is a convex combination of base and w.
                let t_star = match &r.t_sup {
                    None => ExactScalar::from_int(2),
                    Some(t) => {
                        let half = ExactScalar::from_rational(ratio(1, 2));
                        &(&ExactScalar::one() + t) * &half
                    }
                };
                let lam = t_star.inv().unwrap(); // through = (1-1/t*) base + (1/t*) w
                let one_minus = &ExactScalar::one() - &lam;
                let combo = base.scale(&one_minus).add(&w.scale(&lam));
                assert_eq!(combo, through);
            }
        }
    }

    #[test]
    fn fourier_motzkin_projection() {
        // {(x,y): x>=0, y>=0, x+y<=?} homogeneous: x>=0, y>=0, x-y>=0 -> project y
        let rows = vec![
            vec![ratio(1, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(1, 1)],
            vec![ratio(1, 1), ratio(-1, 1)],
        ];
        let proj = fourier_motzkin_eliminate(&rows, 1);
        // projection is {x >= 0}
        assert_eq!(proj, vec![vec![ratio(1, 1)]]);
    }

    #[test]
    fn halfspace_entry_basic() {
        // Q = {y <= 1} i.e. -y >= -1; from x=(0,2) along z=(0,1): entry at t=-1
        let hs = vec![(vec![ratio(0, 1), ratio(-1, 1)], ratio(-1, 1))];
        let x = ev(&[0, 2]);
        let z = ev(&[0, 1]);
        let (t, p) = halfspace_entry(&hs, &x, &z).unwrap();
        assert_eq!(t, ExactScalar::from_int(-1));
        assert_eq!(p, ev(&[0, 1]));
        // ray parallel to the boundary and outside: misses
        let x = ev(&[0, 2]);
        let z = ev(&[1, 0]);
        assert!(halfspace_entry(&hs, &x, &z).is_none());
    }
}
