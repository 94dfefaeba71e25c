//! Determinantal conic bundles over P^2: symmetric 3x3 matrices of quadrics
//! drawn from the doubled (2,2)-space, their degree-6 discriminants with
//! four ordinary nodes at the base points, rank stratification, Steiner
//! points and genus bookkeeping.

use crate::congruence::{form_to_matrix, DoublePointSpace};
use crate::groebner::{buchberger, projective_count, Budget, MonomialOrder};
use crate::matrix::{poly_det, Matrix};
use crate::poly::MultiPoly;
use crate::projective::{exact_roots, singularity_test, ProjPoint};
use crate::quadext::{QuadExt, Scalar};
use crate::rational::{rat, Rational};
use crate::ring::Ring;
use crate::{Error, Result};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A symmetric 3x3 matrix of quadrics in x1..x3, drawn from the
/// 16-dimensional doubled space of a base-point set.
#[derive(Clone, Debug)]
pub struct QuadricMatrix {
    pub entries: Vec<Vec<MultiPoly>>,
    pub base: Vec<ProjPoint<Rational>>,
}

impl QuadricMatrix {
    pub fn from_form(space: &DoublePointSpace, form: &MultiPoly) -> Self {
        QuadricMatrix {
            entries: form_to_matrix(form),
            base: space.base.points.clone(),
        }
    }

    /// Evaluates the matrix at an exact point.
    pub fn eval_at<S: Scalar>(&self, x: &[S]) -> Matrix<S> {
        let mut m = Matrix::zero(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                *m.at_mut(i, j) = self.entries[i][j].eval(x);
            }
        }
        m
    }

    /// Upper-triangle serialization in the polynomial text format.
    pub fn serialize_upper_triangle(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(6);
        for i in 0..3 {
            for j in i..3 {
                out.push(self.entries[i][j].to_string());
            }
        }
        out
    }

    /// Rebuilds a matrix from its upper-triangle text serialization.
    pub fn parse_upper_triangle(texts: &[String], base: Vec<ProjPoint<Rational>>) -> Result<Self> {
        if texts.len() != 6 {
            return Err(Error::Parse("expected 6 upper-triangle entries".into()));
        }
        let x3 = Ring::x3();
        let mut entries = vec![vec![MultiPoly::zero(&x3); 3]; 3];
        let mut it = texts.iter();
        for i in 0..3 {
            for j in i..3 {
                let p = crate::poly::parse_poly(&x3, it.next().unwrap())?;
                entries[i][j] = p.clone();
                entries[j][i] = p;
            }
        }
        Ok(QuadricMatrix { entries, base })
    }
}

/// The discriminant curve det A = 0.
#[derive(Clone, Debug)]
pub struct DiscriminantSextic {
    pub curve: MultiPoly,
}

/// Exact determinant; errors when the degree drops below 6 (a non-generic
/// sample).
pub fn discriminant(a: &QuadricMatrix) -> Result<DiscriminantSextic> {
    let det = poly_det(&a.entries)?;
    if det.total_degree() != 6 || det.is_zero() {
        return Err(Error::Degenerate(format!(
            "discriminant degree {} instead of 6",
            det.total_degree()
        )));
    }
    Ok(DiscriminantSextic { curve: det })
}

/// Certificate for "the discriminant is a 4-nodal sextic singular exactly at
/// the base points".
#[derive(Clone, Debug, Serialize)]
pub struct NodalCertificate {
    pub singular_scheme_length: u64,
    pub nodes_ordinary: bool,
    pub node_count: usize,
}

/// The Jacobian scheme of the sextic must be zero-dimensional of length 4,
/// and each base point must be an ordinary node (chart Hessian rank 2).
pub fn nodal_certificate(
    sextic: &DiscriminantSextic,
    base: &[ProjPoint<Rational>],
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Result<NodalCertificate> {
    for e in base {
        let t = singularity_test(&sextic.curve, &e.coords)?;
        if !t.singular || t.node_rank != Some(2) {
            return Err(Error::Degenerate(
                "base point is not an ordinary node of the discriminant".into(),
            ));
        }
    }
    let jac: Vec<MultiPoly> = (0..3).map(|v| sextic.curve.derivative(v)).collect();
    let count = projective_count(&jac, budget, rng)?;
    if count != 4 {
        return Err(Error::Degenerate(format!(
            "singular scheme has length {count}, expected 4"
        )));
    }
    Ok(NodalCertificate {
        singular_scheme_length: count,
        nodes_ordinary: true,
        node_count: base.len(),
    })
}

/// Draws random integer combinations of the doubled space until the
/// discriminant is a genuine 4-nodal sextic.
pub fn sample_matrix(
    space: &DoublePointSpace,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Result<(QuadricMatrix, DiscriminantSextic, NodalCertificate)> {
    for _ in 0..32 {
        let coeffs: Vec<i64> = (0..16).map(|_| rng.gen_range(-9..=9)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let form = space
            .forms
            .iter()
            .zip(&coeffs)
            .fold(MultiPoly::zero(space.forms[0].ring()), |acc, (f, &c)| {
                acc.add(&f.scale(&rat(c)))
            });
        if form.is_zero() {
            continue;
        }
        let a = QuadricMatrix::from_form(space, &form);
        let sextic = match discriminant(&a) {
            Ok(s) => s,
            Err(_) => continue,
        };
        match nodal_certificate(&sextic, &a.base, budget, rng) {
            Ok(cert) => return Ok((a, sextic, cert)),
            Err(Error::Budget(msg)) => return Err(Error::Budget(msg)),
            Err(_) => continue,
        }
    }
    Err(Error::ResamplingExhausted(32))
}

/// The rank <= 1 locus of A is empty: the ideal of 2x2 minors has affine
/// cone dimension 0 (the origin only).
pub fn rank_floor_certificate(a: &QuadricMatrix, budget: &Budget) -> Result<bool> {
    let mut minors = Vec::new();
    for i in 0..3 {
        for j in (i)..3 {
            for k in 0..3 {
                for l in (k)..3 {
                    if (i, k) >= (j, l) {
                        continue;
                    }
                    let m = a.entries[i][k]
                        .mul(&a.entries[j][l])
                        .sub(&a.entries[i][l].mul(&a.entries[j][k]));
                    if !m.is_zero() {
                        minors.push(m);
                    }
                }
            }
        }
    }
    if minors.is_empty() {
        // all 2x2 minors vanish identically: rank <= 1 everywhere
        return Ok(false);
    }
    let gb = buchberger(&minors, MonomialOrder::GrevLex, budget)?;
    Ok(gb.dimension() <= 0)
}

/// The singular point of the rank-2 conic over a discriminant point: the
/// kernel of A(x), read off from a nonzero adjugate column.
#[derive(Clone, Debug)]
pub struct SteinerRecord {
    pub x: Vec<QuadExt>,
    pub kernel_point: Vec<QuadExt>,
}

fn adjugate3(m: &Matrix<QuadExt>) -> Matrix<QuadExt> {
    let mut adj = Matrix::zero(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let r: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let det = m
                .at(r[0], c[0])
                .mul_ref(m.at(r[1], c[1]))
                .sub_ref(&m.at(r[0], c[1]).mul_ref(m.at(r[1], c[0])));
            let sign_flip = (i + j) % 2 == 1;
            *adj.at_mut(i, j) = if sign_flip { det.neg_ref() } else { det };
        }
    }
    adj
}

/// Computes the Steiner record at an exact point of the discriminant;
/// errors when rank A(x) < 2 (zero adjugate).
pub fn steiner_point(a: &QuadricMatrix, x: &[QuadExt]) -> Result<SteinerRecord> {
    let m = a.eval_at(x);
    let adj = adjugate3(&m);
    let col = (0..3).find(|&j| (0..3).any(|i| !adj.at(i, j).is_zero()));
    let Some(j) = col else {
        return Err(Error::Degenerate(
            "rank of A(x) is below 2: adjugate vanishes".into(),
        ));
    };
    let v: Vec<QuadExt> = (0..3).map(|i| adj.at(i, j).clone()).collect();
    // kernel certificate: A(x) v = 0 exactly
    let prod = m.mul_vec(&v);
    if prod.iter().any(|c| !c.is_zero()) {
        return Err(Error::Degenerate("adjugate column is not in the kernel".into()));
    }
    Ok(SteinerRecord {
        x: x.to_vec(),
        kernel_point: v,
    })
}

/// Exact points of the sextic on chords through pairs of nodes: the
/// restriction has double roots at both nodes, so the residual is a
/// quadratic with roots in a quadratic extension.
pub fn sample_points_on_sextic(
    sextic: &DiscriminantSextic,
    base: &[ProjPoint<Rational>],
    want: usize,
) -> Result<Vec<Vec<QuadExt>>> {
    let mut out: Vec<Vec<QuadExt>> = Vec::new();
    'pairs: for i in 0..base.len() {
        for j in 0..base.len() {
            if i == j {
                continue;
            }
            if out.len() >= want {
                break 'pairs;
            }
            let p = &base[i].coords;
            let q = &base[j].coords;
            let dense = crate::projective::restrict_to_line(&sextic.curve, p, q)?;
            for t in exact_roots(&dense)? {
                if t.is_zero() {
                    continue;
                }
                let pt = crate::projective::point_on_line(p, q, &t);
                if pt.iter().all(|c| c.is_zero()) {
                    continue;
                }
                if !sextic.curve.eval(&pt).is_zero() {
                    return Err(Error::Degenerate("sampled point escaped the sextic".into()));
                }
                // skip the nodes themselves
                if base
                    .iter()
                    .any(|b| crate::projective::projectively_equal(&pt, &b.lift().coords))
                {
                    continue;
                }
                if out
                    .iter()
                    .any(|prev| crate::projective::projectively_equal(prev, &pt))
                {
                    continue;
                }
                out.push(pt);
                if out.len() >= want {
                    break 'pairs;
                }
            }
        }
    }
    if out.len() < want {
        return Err(Error::Degenerate(format!(
            "only {} exact points found on the sextic, wanted {want}",
            out.len()
        )));
    }
    Ok(out)
}

/// Arithmetic and geometric genus of a nodal plane curve.
pub fn genus_bookkeeping(degree: u32, node_count: u32) -> (u32, u32) {
    let pa = (degree - 1) * (degree - 2) / 2;
    (pa, pa - node_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{basis_i_e2_22, BasePoints};
    use crate::poly::parse_poly;
    use rand::SeedableRng;

    fn space() -> DoublePointSpace {
        basis_i_e2_22(&BasePoints::standard()).unwrap()
    }

    #[test]
    fn diagonal_determinant() {
        let x3 = Ring::x3();
        let q1 = parse_poly(&x3, "x1^2 + x2*x3").unwrap();
        let q2 = parse_poly(&x3, "x2^2 - x1*x3").unwrap();
        let q3 = parse_poly(&x3, "x3^2 + x1*x2").unwrap();
        let zero = MultiPoly::zero(&x3);
        let a = QuadricMatrix {
            entries: vec![
                vec![q1.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), q2.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), q3.clone()],
            ],
            base: vec![],
        };
        let det = poly_det(&a.entries).unwrap();
        assert_eq!(det, q1.mul(&q2).mul(&q3));
    }

    #[test]
    fn accepted_sample_is_four_nodal() {
        let sp = space();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (a, sextic, cert) = sample_matrix(&sp, &Budget::default(), &mut rng).unwrap();
        assert_eq!(cert.singular_scheme_length, 4);
        assert_eq!(sextic.curve.total_degree(), 6);
        // determinant scaling: 2A gives the same projective curve
        let doubled = QuadricMatrix {
            entries: a
                .entries
                .iter()
                .map(|r| r.iter().map(|p| p.scale(&rat(2))).collect())
                .collect(),
            base: a.base.clone(),
        };
        let det2 = poly_det(&doubled.entries).unwrap();
        assert_eq!(det2, sextic.curve.scale(&rat(8)));
        // the sextic vanishes at each base point, forced by the kernel
        for e in &a.base {
            assert!(sextic.curve.eval(&e.coords).is_zero());
        }
        // genus bookkeeping
        assert_eq!(genus_bookkeeping(6, 4), (10, 6));
        assert_eq!(genus_bookkeeping(6, 0), (10, 10));
        assert_eq!(genus_bookkeeping(3, 0), (1, 1));
    }

    #[test]
    fn rank_certificates() {
        let sp = space();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (a, sextic, _) = sample_matrix(&sp, &Budget::default(), &mut rng).unwrap();
        assert!(rank_floor_certificate(&a, &Budget::default()).unwrap());
        // negative control: q times a rank-1 constant matrix has rank <= 1
        // everywhere
        let x3 = Ring::x3();
        let q = parse_poly(&x3, "x1^2 + x2^2 + x3^2").unwrap();
        let v = [rat(1), rat(2), rat(-1)];
        let rank1 = QuadricMatrix {
            entries: (0..3)
                .map(|i| (0..3).map(|j| q.scale(&(&v[i] * &v[j]))).collect())
                .collect(),
            base: vec![],
        };
        assert!(!rank_floor_certificate(&rank1, &Budget::default()).unwrap());
        // rank at the base points is exactly 2 with kernel the point itself
        for e in &a.base {
            let m = a.eval_at(&e.coords);
            assert_eq!(m.rank(), 2);
            let kernel = m.kernel();
            assert_eq!(kernel.len(), 1);
            assert!(crate::projective::projectively_equal(
                &kernel[0],
                &e.coords
            ));
        }
        // steiner at a base point: kernel contains e_i
        for e in &a.base {
            let rec = steiner_point(&a, &e.lift().coords).unwrap();
            assert!(crate::projective::projectively_equal(
                &rec.kernel_point,
                &e.lift().coords
            ));
        }
        let _ = sextic;
    }

    #[test]
    fn steiner_on_sampled_points() {
        let sp = space();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (a, sextic, _) = sample_matrix(&sp, &Budget::default(), &mut rng).unwrap();
        let pts = sample_points_on_sextic(&sextic, &a.base, 10).unwrap();
        assert_eq!(pts.len(), 10);
        let mut records = Vec::new();
        for p in &pts {
            // adjugate is nonzero on the curve away from deeper strata
            let rec = steiner_point(&a, p).unwrap();
            let mv = a.eval_at(p).mul_vec(&rec.kernel_point);
            assert!(mv.iter().all(|c| c.is_zero()));
            records.push(rec);
        }
        // injectivity shadow: distinct first coordinates give distinct records
        for i in 0..records.len() {
            for j in (i + 1)..records.len() {
                assert!(!crate::projective::projectively_equal(
                    &records[i].x,
                    &records[j].x
                ));
            }
        }
    }

    #[test]
    fn determinant_equivariance_under_congruence() {
        let sp = space();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (a, sextic, _) = sample_matrix(&sp, &Budget::default(), &mut rng).unwrap();
        // P^T A P multiplies the determinant by det(P)^2
        let p = [[rat(1), rat(2), rat(0)], [rat(0), rat(1), rat(-1)], [rat(3), rat(0), rat(1)]];
        let detp = Matrix::from_rows(p.iter().map(|r| r.to_vec()).collect())
            .det()
            .unwrap();
        assert!(!detp.is_zero());
        let mut conj = vec![vec![MultiPoly::zero(a.entries[0][0].ring()); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = MultiPoly::zero(a.entries[0][0].ring());
                for k in 0..3 {
                    for l in 0..3 {
                        acc = acc.add(&a.entries[k][l].scale(&(&p[k][i] * &p[l][j])));
                    }
                }
                conj[i][j] = acc;
            }
        }
        let det_conj = poly_det(&conj).unwrap();
        assert_eq!(det_conj, sextic.curve.scale(&(&detp * &detp)));
    }

    #[test]
    fn node_multiplicity_exactly_two_on_lines() {
        let sp = space();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (a, sextic, _) = sample_matrix(&sp, &Budget::default(), &mut rng).unwrap();
        // restriction to a chord through a node vanishes to order exactly 2
        let p = &a.base[0].coords;
        let dir = vec![rat(1), rat(3), rat(-2)];
        let dense = crate::projective::restrict_to_line(&sextic.curve, p, &dir).unwrap();
        assert!(dense[0].is_zero());
        assert!(dense[1].is_zero());
        assert!(!dense[2].is_zero());
    }

    #[test]
    fn perturbed_matrix_loses_the_nodes() {
        let sp = space();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (a, _, _) = sample_matrix(&sp, &Budget::default(), &mut rng).unwrap();
        let x3 = Ring::x3();
        let mut entries = a.entries.clone();
        entries[0][0] = entries[0][0].add(&parse_poly(&x3, "x1^2").unwrap());
        let perturbed = QuadricMatrix {
            entries,
            base: a.base.clone(),
        };
        let det = poly_det(&perturbed.entries).unwrap();
        // some base point is no longer singular (generic perturbation)
        let moved = perturbed.base.iter().any(|e| {
            let t = singularity_test(&det, &e.coords).unwrap();
            !t.singular
        });
        assert!(moved);
    }

    #[test]
    fn upper_triangle_roundtrip() {
        let sp = space();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (a, _, _) = sample_matrix(&sp, &Budget::default(), &mut rng).unwrap();
        let texts = a.serialize_upper_triangle();
        assert_eq!(texts.len(), 6);
        let b = QuadricMatrix::parse_upper_triangle(&texts, a.base.clone()).unwrap();
        assert_eq!(a.entries, b.entries);
    }
}
