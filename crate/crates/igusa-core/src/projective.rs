//! Projective points and linear subspaces over Q, singularity and node
//! tests, and seeded sampling of exact points on hypersurfaces.

use crate::matrix::{Matrix, RationalMatrix};
use crate::poly::{Homogeneity, MultiPoly};
use crate::quadext::{quadratic_roots, QuadExt, Scalar};
use crate::rational::{divisors, rat, Rational};
use crate::ring::Ring;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// A point of projective space with exact coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint<S: Scalar> {
    pub coords: Vec<S>,
}

impl<S: Scalar> ProjPoint<S> {
    pub fn new(coords: Vec<S>) -> Self {
        assert!(
            coords.iter().any(|c| !c.is_zero()),
            "projective point needs a nonzero coordinate"
        );
        ProjPoint { coords }
    }

    pub fn dim_ambient(&self) -> usize {
        self.coords.len() - 1
    }

    /// Equality up to scalar.
    pub fn projectively_equal(&self, other: &Self) -> bool {
        projectively_equal(&self.coords, &other.coords)
    }
}

impl ProjPoint<Rational> {
    pub fn from_ints(coords: &[i64]) -> Self {
        ProjPoint::new(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn lift(&self) -> ProjPoint<QuadExt> {
        ProjPoint::new(self.coords.iter().map(QuadExt::from_rational).collect())
    }
}

pub fn projectively_equal<S: Scalar>(a: &[S], b: &[S]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    // normalize each point by its own first nonzero coordinate, so points in
    // different quadratic extensions are never multiplied together
    let fa = a.iter().position(|c| !c.is_zero());
    let fb = b.iter().position(|c| !c.is_zero());
    if fa != fb {
        return false;
    }
    let Some(f) = fa else {
        return true;
    };
    let ia = a[f].inv().expect("nonzero");
    let ib = b[f].inv().expect("nonzero");
    (0..a.len()).all(|i| a[i].mul_ref(&ia) == b[i].mul_ref(&ib))
}

/// A linear subspace of P^n, stored as the row span of a matrix in reduced
/// row echelon form (canonical, so equality is matrix equality).
#[derive(Clone, Debug, PartialEq)]
pub struct ProjSubspace {
    /// Projective dimension of the ambient space.
    pub ambient: usize,
    basis: RationalMatrix,
}

impl ProjSubspace {
    /// Builds the span of the given vectors in P^`ambient`.
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "vector length {} in P^{ambient}",
                    v.len()
                )));
            }
        }
        let mut m = Matrix::from_rows(vectors);
        m.rref();
        let rows: Vec<Vec<Rational>> = m
            .rows_vec()
            .into_iter()
            .filter(|r| r.iter().any(|c| !c.is_zero()))
            .collect();
        if rows.is_empty() {
            return Err(Error::Degenerate("empty subspace".into()));
        }
        Ok(ProjSubspace {
            ambient,
            basis: Matrix::from_rows(rows),
        })
    }

    pub fn from_point(p: &ProjPoint<Rational>) -> Self {
        ProjSubspace::from_spanning(p.dim_ambient(), vec![p.coords.clone()]).unwrap()
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.basis.rows - 1
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rational>> {
        self.basis.rows_vec()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "ambient P^{} vs P^{}",
                self.ambient, other.ambient
            )))
        }
    }

    pub fn span(&self, other: &Self) -> Result<ProjSubspace> {
        self.check_ambient(other)?;
        ProjSubspace::from_spanning(
            self.ambient,
            self.basis
                .rows_vec()
                .into_iter()
                .chain(other.basis.rows_vec())
                .collect(),
        )
    }

    /// Intersection; `None` when empty.
    pub fn meet(&self, other: &Self) -> Result<Option<ProjSubspace>> {
        self.check_ambient(other)?;
        let eq_a = Matrix::from_rows(self.basis.kernel());
        let eq_b = Matrix::from_rows(other.basis.kernel());
        let stacked = if eq_a.rows == 0 {
            eq_b
        } else if eq_b.rows == 0 {
            eq_a
        } else {
            eq_a.stack(&eq_b)
        };
        if stacked.rows == 0 {
            // both are the whole space
            return Ok(Some(self.clone()));
        }
        let meet_basis = stacked.kernel();
        if meet_basis.is_empty() {
            return Ok(None);
        }
        Ok(Some(ProjSubspace::from_spanning(self.ambient, meet_basis)?))
    }

    pub fn contains_point(&self, p: &ProjPoint<Rational>) -> bool {
        if p.coords.len() != self.ambient + 1 {
            return false;
        }
        let stacked = self
            .basis
            .stack(&Matrix::from_rows(vec![p.coords.clone()]));
        stacked.rank() == self.basis.rows
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.rows_vec().iter().all(|r| {
            self.basis
                .stack(&Matrix::from_rows(vec![r.clone()]))
                .rank()
                == self.basis.rows
        })
    }

    /// Linear images parametrizing the subspace: ambient coordinate j maps to
    /// `sum_i basis[i][j] * u_i` in a parameter ring with dim()+1 variables.
    pub fn parametrization(&self, params: &Arc<Ring>) -> Vec<MultiPoly> {
        assert_eq!(params.num_vars(), self.basis.rows);
        (0..=self.ambient)
            .map(|j| {
                let mut p = MultiPoly::zero(params);
                for i in 0..self.basis.rows {
                    p = p.add(&MultiPoly::var(params, i).scale(self.basis.at(i, j)));
                }
                p
            })
            .collect()
    }

    /// The point of a zero-dimensional subspace.
    pub fn as_point(&self) -> Option<ProjPoint<Rational>> {
        (self.dim() == 0).then(|| ProjPoint::new(self.basis.row(0).to_vec()))
    }
}

/// Outcome of the singularity/node test at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularityTest {
    pub on_variety: bool,
    pub singular: bool,
    /// Rank of the Hessian of the local degree-2 part in an affine chart;
    /// only computed at singular points.
    pub node_rank: Option<usize>,
}

/// Tests whether `f` (homogeneous, in the chart ring of the point) is
/// singular at `p` and computes the Hessian rank of the local quadratic part.
pub fn singularity_test<S: Scalar>(f: &MultiPoly, p: &[S]) -> Result<SingularityTest> {
    match f.homogeneity() {
        Homogeneity::Degree(_) => {}
        _ => {
            return Err(Error::Degenerate(
                "singularity test requires a homogeneous polynomial".into(),
            ))
        }
    }
    let n = f.ring().num_vars();
    assert_eq!(p.len(), n);
    let on_variety = f.eval(p).is_zero();
    let grad: Vec<S> = (0..n).map(|v| f.derivative(v).eval(p)).collect();
    let singular = on_variety && grad.iter().all(|g| g.is_zero());
    if !singular {
        return Ok(SingularityTest {
            on_variety,
            singular,
            node_rank: None,
        });
    }
    // Affine chart at the first nonzero coordinate; scale the point there to
    // 1 so the chart Hessian is the ambient Hessian with row/col m removed.
    let m = p.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let scale = p[m].inv().expect("nonzero coordinate");
    let q: Vec<S> = p.iter().map(|c| c.mul_ref(&scale)).collect();
    let idx: Vec<usize> = (0..n).filter(|&i| i != m).collect();
    let mut hess = Matrix::zero(idx.len(), idx.len());
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            if b < a {
                continue;
            }
            let val = f.derivative(i).derivative(j).eval(&q);
            *hess.at_mut(a, b) = val.clone();
            *hess.at_mut(b, a) = val;
        }
    }
    Ok(SingularityTest {
        on_variety,
        singular,
        node_rank: Some(hess.rank()),
    })
}

/// All rational roots of a dense univariate polynomial (constant term first),
/// repeated by multiplicity, together with the deflated cofactor.
pub fn rational_roots(coeffs: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while c.last().map_or(false, |x| x.is_zero()) {
        c.pop();
    }
    let mut roots = Vec::new();
    if c.is_empty() {
        return (roots, c);
    }
    // strip roots at zero
    while c.len() > 1 && c[0].is_zero() {
        roots.push(Rational::zero());
        c.remove(0);
    }
    'search: while c.len() > 1 {
        // integer-normalize: roots are p/q with p | a0, q | lead
        let mut denom_lcm = BigInt::one();
        for k in &c {
            denom_lcm = num_integer::Integer::lcm(&denom_lcm, k.denom());
        }
        let ints: Vec<BigInt> = c
            .iter()
            .map(|k| {
                (k * Rational::from_integer(denom_lcm.clone()))
                    .numer()
                    .clone()
            })
            .collect();
        let a0 = ints.first().unwrap().clone();
        let an = ints.last().unwrap().clone();
        debug_assert!(!a0.is_zero() && !an.is_zero());
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for sgn in [1i64, -1] {
                    let cand = Rational::new(&p * BigInt::from(sgn), q.clone());
                    let mut acc = Rational::zero();
                    for k in c.iter().rev() {
                        acc = acc * &cand + k;
                    }
                    if acc.is_zero() {
                        roots.push(cand.clone());
                        // synthetic division by (t - cand)
                        let mut out = vec![Rational::zero(); c.len() - 1];
                        let mut carry = Rational::zero();
                        for i in (0..c.len() - 1).rev() {
                            carry = &c[i + 1] + &cand * &carry;
                            out[i] = carry.clone();
                        }
                        c = out;
                        continue 'search;
                    }
                }
            }
        }
        break;
    }
    (roots, c)
}

/// Exact roots in Q or a quadratic extension of a dense univariate
/// polynomial: rational roots are extracted first; a residual quadratic is
/// solved exactly; a residual of higher degree contributes nothing.
pub fn exact_roots(coeffs: &[Rational]) -> Result<Vec<QuadExt>> {
    let (rational, residual) = rational_roots(coeffs);
    let mut out: Vec<QuadExt> = rational.into_iter().map(QuadExt::rational).collect();
    if residual.len() == 3 {
        if let Some((r1, r2)) = quadratic_roots(&residual[2], &residual[1], &residual[0])? {
            out.push(r1);
            out.push(r2);
        }
    }
    Ok(out)
}

pub fn random_int_vector(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Rational> {
    (0..n).map(|_| rat(rng.gen_range(-bound..=bound))).collect()
}

/// Restriction of `f` to the line `s*P + t*Q` as dense coefficients in `t`
/// after setting `s = 1`.
pub fn restrict_to_line(f: &MultiPoly, p: &[Rational], q: &[Rational]) -> Result<Vec<Rational>> {
    let st = Ring::new(vec!["s", "t"]);
    let images: Vec<MultiPoly> = (0..f.ring().num_vars())
        .map(|j| {
            MultiPoly::var(&st, 0)
                .scale(&p[j])
                .add(&MultiPoly::var(&st, 1).scale(&q[j]))
        })
        .collect();
    let g = f.substitute_linear(&images)?;
    let d = f.total_degree();
    let mut dense = vec![Rational::zero(); d as usize + 1];
    for (m, c) in g.terms() {
        dense[m.0[1] as usize] = c.clone();
    }
    Ok(dense)
}

/// A point on the line `P + t Q` from a root `t`.
pub fn point_on_line(p: &[Rational], q: &[Rational], t: &QuadExt) -> Vec<QuadExt> {
    p.iter()
        .zip(q)
        .map(|(a, b)| QuadExt::from_rational(a).add_ref(&t.mul_ref(&QuadExt::from_rational(b))))
        .collect()
}

/// Deterministic, seeded sampling of an exact point on the hypersurface
/// `f = 0`, by intersecting with random rational lines and keeping rational
/// or quadratic-extension roots. Falls back to anchoring the line at a
/// small-height point of the hypersurface (using a tangent direction at a
/// smooth anchor so the residual intersection is quadratic).
pub fn sample_point_on(f: &MultiPoly, rng: &mut ChaCha8Rng) -> Result<ProjPoint<QuadExt>> {
    match f.homogeneity() {
        Homogeneity::Degree(d) if d > 0 => {}
        _ => {
            return Err(Error::Degenerate(
                "sampling needs a nonconstant homogeneous polynomial".into(),
            ))
        }
    }
    let n = f.ring().num_vars();
    let attempts = 32;
    for _ in 0..attempts {
        let p = random_int_vector(rng, n, 5);
        let q = random_int_vector(rng, n, 5);
        if p.iter().all(|c| c.is_zero()) || q.iter().all(|c| c.is_zero()) {
            continue;
        }
        // the two endpoints themselves
        if f.eval(&p).is_zero() {
            return Ok(ProjPoint::new(
                p.iter().map(QuadExt::from_rational).collect(),
            ));
        }
        if f.eval(&q).is_zero() {
            return Ok(ProjPoint::new(
                q.iter().map(QuadExt::from_rational).collect(),
            ));
        }
        let dense = restrict_to_line(f, &p, &q)?;
        if dense.iter().all(|c| c.is_zero()) {
            continue;
        }
        for t in exact_roots(&dense)? {
            let pt = point_on_line(&p, &q, &t);
            if pt.iter().any(|c| !c.is_zero()) {
                let val = f.eval(&pt);
                assert!(val.is_zero(), "root must land on the hypersurface");
                return Ok(ProjPoint::new(pt));
            }
        }
    }
    // Anchored fallback: small-height rational point, then lines through it.
    if let Some(anchor) = small_point_search(f, 3) {
        let grad: Vec<Rational> = (0..n).map(|v| f.derivative(v).eval(&anchor)).collect();
        let smooth = grad.iter().any(|g| !g.is_zero());
        for _ in 0..attempts {
            let mut dir = random_int_vector(rng, n, 5);
            if smooth {
                // force the direction into the tangent hyperplane so the
                // anchor is a double root of the restriction
                let dot: Rational = dir
                    .iter()
                    .zip(&grad)
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, x| acc + x);
                let Some(k) = (0..n).find(|&i| !grad[i].is_zero()) else {
                    continue;
                };
                dir[k] = &dir[k] - &(dot / &grad[k]);
            }
            if dir.iter().all(|c| c.is_zero()) {
                continue;
            }
            let dense = restrict_to_line(f, &anchor, &dir)?;
            if dense.iter().all(|c| c.is_zero()) {
                continue;
            }
            for t in exact_roots(&dense)? {
                if t.is_zero() {
                    continue;
                }
                let pt = point_on_line(&anchor, &dir, &t);
                if pt.iter().any(|c| !c.is_zero()) {
                    let val = f.eval(&pt);
                    assert!(val.is_zero());
                    return Ok(ProjPoint::new(pt));
                }
            }
        }
        return Ok(ProjPoint::new(
            anchor.iter().map(QuadExt::from_rational).collect(),
        ));
    }
    Err(Error::ResamplingExhausted(attempts))
}

/// Deterministic search for a projective point with integer coordinates of
/// height at most `bound` on `f = 0`.
pub fn small_point_search(f: &MultiPoly, bound: i64) -> Option<Vec<Rational>> {
    let n = f.ring().num_vars();
    let width = (2 * bound + 1) as u64;
    let total = width.checked_pow(n as u32)?;
    for code in 1..total {
        let mut c = code;
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(rat((c % width) as i64 - bound));
            c /= width;
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        // normalize lexicographic representative: first nonzero positive
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                continue;
            }
        }
        if f.eval(&v).is_zero() {
            return Some(v);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use rand::SeedableRng;

    fn line_from_pattern(rows: Vec<Vec<i64>>) -> ProjSubspace {
        ProjSubspace::from_spanning(
            5,
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn meet_of_two_singular_lines_is_triple_point() {
        // {z1=z2, z3=z4, z5=z6} and {z1=z2, z3=z5, z4=z6} inside {s1=0}
        let l1 = line_from_pattern(vec![vec![1, 1, 0, 0, -1, -1], vec![0, 0, 1, 1, -1, -1]]);
        let l2 = line_from_pattern(vec![vec![1, 1, 0, -1, 0, -1], vec![0, 0, 1, -1, 1, -1]]);
        let m = l1.meet(&l2).unwrap().unwrap();
        assert_eq!(m.dim(), 0);
        let p = m.as_point().unwrap();
        assert!(p.projectively_equal(&ProjPoint::from_ints(&[-2, -2, 1, 1, 1, 1])));
    }

    #[test]
    fn contains_point_on_parametrization() {
        let l = line_from_pattern(vec![vec![1, 1, 0, 0, -1, -1], vec![0, 0, 1, 1, -1, -1]]);
        // u = 2, v = 3 gives (2,2,3,3,-5,-5)
        let p = ProjPoint::from_ints(&[2, 2, 3, 3, -5, -5]);
        assert!(l.contains_point(&p));
        assert!(!l.contains_point(&ProjPoint::from_ints(&[1, 0, 0, 0, 0, -1])));
    }

    #[test]
    fn span_of_point_with_itself() {
        let p = ProjPoint::from_ints(&[1, 2, 3, 4, 5, -15]);
        let s = ProjSubspace::from_point(&p);
        let sp = s.span(&s).unwrap();
        assert_eq!(sp.dim(), 0);
        assert!(sp.as_point().unwrap().projectively_equal(&p));
    }

    #[test]
    fn modular_dimension_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let rows_a = 1 + rng.gen_range(0..3usize);
            let rows_b = 1 + rng.gen_range(0..3usize);
            let va: Vec<Vec<Rational>> = (0..rows_a)
                .map(|_| random_int_vector(&mut rng, 6, 4))
                .collect();
            let vb: Vec<Vec<Rational>> = (0..rows_b)
                .map(|_| random_int_vector(&mut rng, 6, 4))
                .collect();
            let a = match ProjSubspace::from_spanning(5, va) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let b = match ProjSubspace::from_spanning(5, vb) {
                Ok(s) => s,
                Err(_) => continue,
            };
            let span_dim = a.span(&b).unwrap().dim() as i64;
            let meet_dim = match a.meet(&b).unwrap() {
                Some(m) => m.dim() as i64,
                None => -1,
            };
            assert_eq!(
                meet_dim + span_dim,
                a.dim() as i64 + b.dim() as i64,
                "modular identity"
            );
        }
    }

    #[test]
    fn singularity_cone_vertex() {
        let r = Ring::new(vec!["z0", "z1", "z2", "z3", "z4"]);
        let f = parse_poly(&r, "z1*z2 + z3*z4").unwrap();
        let vertex: Vec<Rational> = vec![rat(1), rat(0), rat(0), rat(0), rat(0)];
        let t = singularity_test(&f, &vertex).unwrap();
        assert!(t.on_variety && t.singular);
        assert_eq!(t.node_rank, Some(4));
        // and f = z1 z2 + z3 z4 + z0^2 does not pass through that point
        let g = parse_poly(&r, "z1*z2 + z3*z4 + z0^2").unwrap();
        let t = singularity_test(&g, &vertex).unwrap();
        assert!(!t.on_variety);
    }

    #[test]
    fn singularity_scaling_invariance() {
        let r = Ring::new(vec!["z0", "z1", "z2", "z3", "z4"]);
        let f = parse_poly(&r, "z1*z2 + z3*z4").unwrap();
        let vertex: Vec<Rational> = vec![rat(-7), rat(0), rat(0), rat(0), rat(0)];
        let t = singularity_test(&f.scale(&rat(5)), &vertex).unwrap();
        assert!(t.singular);
        assert_eq!(t.node_rank, Some(4));
    }

    #[test]
    fn sample_on_hyperplane_and_quadric() {
        let r = Ring::new(vec!["z0", "z1", "z2"]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let f = parse_poly(&r, "z0").unwrap();
        let p = sample_point_on(&f, &mut rng).unwrap();
        assert!(p.coords[0].is_zero());
        let g = parse_poly(&r, "z0^2 - z1^2").unwrap();
        let p = sample_point_on(&g, &mut rng).unwrap();
        assert!(g.eval(&p.coords).is_zero());
    }

    #[test]
    fn rational_root_extraction() {
        // (t - 1)(t + 2)(2t - 3) = 2t^3 - t^2 - 7t + 6
        let coeffs = vec![rat(6), rat(-7), rat(-1), rat(2)];
        let (mut roots, rem) = rational_roots(&coeffs);
        roots.sort();
        assert_eq!(roots, vec![rat(-2), rat(1), crate::rational::ratio(3, 2)]);
        assert_eq!(rem.len(), 1);
    }
}
