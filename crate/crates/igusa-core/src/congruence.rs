//! The P^2 x P^2 model of the degree-2 plane congruence: the linear system
//! of (1,1)-forms through four diagonal base points, the induced degree-2
//! rational map to P^4, the plane family realizing the congruence, the
//! 16-dimensional space of doubled (2,2)-forms, and the focal double-conic
//! certificate.

use crate::groebner::{buchberger, eliminate, Budget, MonomialOrder};
use crate::matrix::{Matrix, RationalMatrix};
use crate::poly::{gcd as poly_gcd, square_analysis, Monomial, MultiPoly};
use crate::projective::{ProjPoint, ProjSubspace};
use crate::rational::{rat, Rational};
use crate::ring::Ring;
use crate::{Error, Result};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// Four base points of P^2 in general linear position (no 3 collinear),
/// diagonally embedded in P^2 x P^2.
#[derive(Clone, Debug)]
pub struct BasePoints {
    pub points: Vec<ProjPoint<Rational>>,
}

impl BasePoints {
    /// The standard frame {(1:0:0), (0:1:0), (0:0:1), (1:1:1)}.
    pub fn standard() -> Self {
        BasePoints {
            points: vec![
                ProjPoint::from_ints(&[1, 0, 0]),
                ProjPoint::from_ints(&[0, 1, 0]),
                ProjPoint::from_ints(&[0, 0, 1]),
                ProjPoint::from_ints(&[1, 1, 1]),
            ],
        }
    }

    /// General linear position, certified by nonvanishing 3x3 minors of all
    /// four triples.
    pub fn in_general_position(&self) -> bool {
        if self.points.len() != 4 {
            return false;
        }
        for skip in 0..4 {
            let rows: Vec<Vec<Rational>> = (0..4)
                .filter(|&i| i != skip)
                .map(|i| self.points[i].coords.clone())
                .collect();
            let det = Matrix::from_rows(rows).det().expect("3x3");
            if det.is_zero() {
                return false;
            }
        }
        true
    }

    /// Seeded random general-position base points with small coordinates.
    pub fn random(rng: &mut ChaCha8Rng) -> Result<Self> {
        for _ in 0..64 {
            let points: Vec<ProjPoint<Rational>> = (0..4)
                .map(|_| {
                    let coords: Vec<Rational> =
                        (0..3).map(|_| rat(rng.gen_range(-4..=4i64))).collect();
                    coords
                })
                .filter(|c| c.iter().any(|x| !x.is_zero()))
                .map(ProjPoint::new)
                .collect();
            if points.len() == 4 {
                let bp = BasePoints { points };
                if bp.in_general_position() {
                    return Ok(bp);
                }
            }
        }
        Err(Error::ResamplingExhausted(64))
    }
}

/// Basis of the (1,1)-forms vanishing at the diagonal base points, together
/// with the 5x3 matrix of y-coefficients with entries linear in x.
#[derive(Clone, Debug)]
pub struct BilinearMapData {
    pub base: BasePoints,
    /// Basis f0..f4 of the 5-dimensional solution space, in the bigraded
    /// ring Q[x1..x3, y1..y3].
    pub forms: Vec<MultiPoly>,
}

/// Solution space of the four vanishing conditions inside the 9-dimensional
/// space of (1,1)-forms; errors unless its dimension is exactly 5.
pub fn basis_i_e_11(base: &BasePoints) -> Result<BilinearMapData> {
    if !base.in_general_position() {
        return Err(Error::Degenerate(
            "base points must be in general linear position".into(),
        ));
    }
    let xy = Ring::xy();
    // monomial order: x_i y_j, i outer
    let mut conditions = Vec::with_capacity(4);
    for e in &base.points {
        let row: Vec<Rational> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| &e.coords[i] * &e.coords[j])
            .collect();
        conditions.push(row);
    }
    let kernel = Matrix::from_rows(conditions).kernel();
    if kernel.len() != 5 {
        return Err(Error::Degenerate(format!(
            "expected a 5-dimensional space of (1,1)-forms, got {}",
            kernel.len()
        )));
    }
    let forms: Vec<MultiPoly> = kernel
        .into_iter()
        .map(|coeffs| {
            let mut f = MultiPoly::zero(&xy);
            for i in 0..3 {
                for j in 0..3 {
                    let mut m = Monomial::one(6);
                    m.0[i] = 1;
                    m.0[3 + j] = 1;
                    f.add_term(m, coeffs[3 * i + j].clone());
                }
            }
            f
        })
        .collect();
    Ok(BilinearMapData {
        base: base.clone(),
        forms,
    })
}

impl BilinearMapData {
    /// Entry (k, j) of the 5x3 matrix M_x: the y_j-coefficient of f_k, a
    /// linear form in x.
    pub fn m_x_entries(&self) -> Vec<Vec<MultiPoly>> {
        let x3 = Ring::x3();
        self.forms
            .iter()
            .map(|f| {
                (0..3)
                    .map(|j| {
                        let mut entry = MultiPoly::zero(&x3);
                        for (m, c) in f.terms() {
                            if m.0[3 + j] == 1 {
                                let mut xm = Monomial::one(3);
                                for i in 0..3 {
                                    xm.0[i] = m.0[i];
                                }
                                entry.add_term(xm, c.clone());
                            }
                        }
                        entry
                    })
                    .collect()
            })
            .collect()
    }

    /// M_x evaluated at a rational point of the first factor.
    pub fn m_x_at(&self, x: &[Rational]) -> RationalMatrix {
        let entries = self.m_x_entries();
        Matrix::from_rows(
            entries
                .iter()
                .map(|row| row.iter().map(|e| e.eval(x)).collect())
                .collect(),
        )
    }

    /// Evaluates the rational map: the image point (f0 : ... : f4), or an
    /// indeterminacy error when all forms vanish.
    pub fn t_e_eval(&self, x: &[Rational], y: &[Rational]) -> Result<ProjPoint<Rational>> {
        let xy: Vec<Rational> = x.iter().chain(y.iter()).cloned().collect();
        let coords: Vec<Rational> = self.forms.iter().map(|f| f.eval(&xy)).collect();
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Degenerate(
                "indeterminacy point of the rational map".into(),
            ));
        }
        Ok(ProjPoint::new(coords))
    }

    /// The congruence plane through the image of {x} x P^2: the column span
    /// of M_x. Flags a rank drop by returning the smaller subspace.
    pub fn plane_of(&self, x: &[Rational]) -> Result<(ProjSubspace, bool)> {
        let m = self.m_x_at(x);
        let cols = m.transpose().rows_vec();
        let plane = ProjSubspace::from_spanning(4, cols)?;
        Ok((plane.clone(), plane.dim() == 2))
    }

    /// The three conics through the four base points given by the pairings
    /// of the points into two chords. Used to saturate away the base locus:
    /// a finite honest solution set meets at most two of the three conics,
    /// so the maximal saturated count is the honest count.
    fn base_conics(&self) -> Vec<MultiPoly> {
        let x3 = Ring::x3();
        let line = |a: &ProjPoint<Rational>, b: &ProjPoint<Rational>| -> MultiPoly {
            // coefficients = cross product of the two points
            let u = &a.coords;
            let v = &b.coords;
            let c = [
                &u[1] * &v[2] - &u[2] * &v[1],
                &u[2] * &v[0] - &u[0] * &v[2],
                &u[0] * &v[1] - &u[1] * &v[0],
            ];
            (0..3).fold(MultiPoly::zero(&x3), |acc, i| {
                acc.add(&MultiPoly::var(&x3, i).scale(&c[i]))
            })
        };
        let e = &self.base.points;
        [(1usize, 2usize, 3usize), (2, 1, 3), (3, 1, 2)]
            .iter()
            .map(|&(b1, c1, c2)| line(&e[0], &e[b1]).mul(&line(&e[c1], &e[c2])))
            .collect()
    }

    /// Equations of the four exceptional hyperplanes: the planes of the
    /// family living over the blown-up point e_i sweep the hyperplane
    /// spanned by the column spaces of M_(e_i) and N_(e_i). Points of these
    /// hyperplanes see one member of the family hiding over the exceptional
    /// curve, invisible in the x-chart, so counting draws avoid them.
    pub fn exceptional_hyperplanes(&self) -> Result<Vec<Vec<Rational>>> {
        let mut out = Vec::with_capacity(4);
        for e in &self.base.points {
            let m = self.m_x_at(&e.coords);
            let n = self.n_y_at(&e.coords);
            // rows of the stacked transpose are the spanning columns
            let span_rows: Vec<Vec<Rational>> = m
                .transpose()
                .rows_vec()
                .into_iter()
                .chain(n.transpose().rows_vec())
                .collect();
            let kernel = Matrix::from_rows(span_rows).kernel();
            if kernel.len() != 1 {
                return Err(Error::Degenerate(
                    "exceptional family does not sweep a hyperplane".into(),
                ));
            }
            out.push(kernel.into_iter().next().unwrap());
        }
        Ok(out)
    }

    /// The 5x3 matrix of the second-factor projection at a rational y: row k
    /// holds the x-coefficients of f_k with y substituted.
    pub fn n_y_at(&self, y: &[Rational]) -> RationalMatrix {
        let rows: Vec<Vec<Rational>> = self
            .forms
            .iter()
            .map(|f| {
                let mut row = vec![Rational::zero(); 3];
                for (m, c) in f.terms() {
                    let i = (0..3).find(|&i| m.0[i] == 1).expect("(1,1) form");
                    let j = (3..6).find(|&j| m.0[j] == 1).expect("(1,1) form");
                    row[i] += c * &y[j - 3];
                }
                row
            })
            .collect();
        Matrix::from_rows(rows)
    }
}

fn random_linear_form(ring: &Arc<Ring>, vars: std::ops::Range<usize>, rng: &mut ChaCha8Rng) -> MultiPoly {
    loop {
        let coeffs: Vec<i64> = vars.clone().map(|_| rng.gen_range(-9..=9)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        return vars
            .clone()
            .zip(&coeffs)
            .fold(MultiPoly::zero(ring), |acc, (v, &c)| {
                acc.add(&MultiPoly::var(ring, v).scale(&rat(c)))
            });
    }
}

/// Counts the fiber of the rational map over `p` with multiplicity: the
/// proportionality system of 2x2 minors, saturated against the base locus
/// (by inverting a basis form that is nonzero on the honest fiber) and
/// dehomogenized along random hyperplanes in both factors. Two independent
/// dehomogenizations must agree.
pub fn fiber_count(
    data: &BilinearMapData,
    p: &ProjPoint<Rational>,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Result<u64> {
    let ring = Ring::new(vec!["x1", "x2", "x3", "y1", "y2", "y3", "u"]);
    let lift =
        |f: &MultiPoly| -> MultiPoly {
            MultiPoly::from_terms(
                &ring,
                f.terms().map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.push(0);
                    (Monomial(e), c.clone())
                }),
            )
        };
    let forms: Vec<MultiPoly> = data.forms.iter().map(&lift).collect();
    let k0 = (0..5)
        .find(|&k| !p.coords[k].is_zero())
        .expect("nonzero point");
    let mut gens: Vec<MultiPoly> = Vec::new();
    for k in 0..5 {
        for l in (k + 1)..5 {
            let minor = forms[k]
                .scale(&p.coords[l])
                .sub(&forms[l].scale(&p.coords[k]));
            if !minor.is_zero() {
                gens.push(minor);
            }
        }
    }
    // saturation: u * f_k0 = 1 removes the base locus {all forms = 0}
    let sat = MultiPoly::var(&ring, 6)
        .mul(&forms[k0])
        .sub(&MultiPoly::one(&ring));
    gens.push(sat);
    // chart counts are lower bounds: take the maximum over five draws
    let mut best: Option<u64> = None;
    for _ in 0..5 {
        let chart_x = random_linear_form(&ring, 0..3, rng).sub(&MultiPoly::one(&ring));
        let chart_y = random_linear_form(&ring, 3..6, rng).sub(&MultiPoly::one(&ring));
        let mut system = gens.clone();
        system.push(chart_x);
        system.push(chart_y);
        let gb = buchberger(&system, MonomialOrder::GrevLex, budget)?;
        let count = gb.quotient_dimension()?;
        best = Some(best.map_or(count, |b| b.max(count)));
    }
    Ok(best.expect("five draws"))
}

/// Counts the planes of the family through `p`: the rank condition
/// rank [M_x' | p] <= 3 via its five 4x4 minors, saturated against the base
/// points by inverting a conic through them, then counted projectively.
pub fn order_check(
    data: &BilinearMapData,
    p: &ProjPoint<Rational>,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Result<u64> {
    let ring = Ring::new(vec!["x1", "x2", "x3", "u"]);
    let lift = |f: &MultiPoly| -> MultiPoly {
        MultiPoly::from_terms(
            &ring,
            f.terms().map(|(m, c)| {
                let mut e = m.0.clone();
                e.push(0);
                (Monomial(e), c.clone())
            }),
        )
    };
    let entries = data.m_x_entries();
    // rows of [M_x | p] in the 4-variable ring
    let rows: Vec<Vec<MultiPoly>> = (0..5)
        .map(|k| {
            let mut row: Vec<MultiPoly> = entries[k].iter().map(&lift).collect();
            row.push(MultiPoly::constant(&ring, p.coords[k].clone()));
            row
        })
        .collect();
    let mut gens: Vec<MultiPoly> = Vec::new();
    for skip in 0..5 {
        let sub: Vec<Vec<MultiPoly>> = (0..5)
            .filter(|&r| r != skip)
            .map(|r| rows[r].clone())
            .collect();
        let det = crate::matrix::poly_det(&sub)?;
        if !det.is_zero() {
            gens.push(det);
        }
    }
    // chart counts are lower bounds, and each honest solution avoids at
    // least one of the three pairing conics: the count is the maximum
    let mut best: Option<u64> = None;
    for conic in data.base_conics() {
        let sat = MultiPoly::var(&ring, 3)
            .mul(&lift(&conic))
            .sub(&MultiPoly::one(&ring));
        for _ in 0..5 {
            let chart = random_linear_form(&ring, 0..3, rng).sub(&MultiPoly::one(&ring));
            let mut system = gens.clone();
            system.push(sat.clone());
            system.push(chart);
            let gb = buchberger(&system, MonomialOrder::GrevLex, budget)?;
            let count = gb.quotient_dimension()?;
            best = Some(best.map_or(count, |b| b.max(count)));
        }
    }
    Ok(best.expect("draws"))
}

/// The 16-dimensional space of (2,2)-forms with multiplicity >= 2 at the
/// four diagonal base points.
#[derive(Clone, Debug)]
pub struct DoublePointSpace {
    pub base: BasePoints,
    pub forms: Vec<MultiPoly>,
}

fn xy_monomials_22() -> Vec<Monomial> {
    // 6 quadratic monomials in x times 6 in y, ordered deterministically
    let quads: Vec<[u16; 3]> = vec![
        [2, 0, 0],
        [1, 1, 0],
        [1, 0, 1],
        [0, 2, 0],
        [0, 1, 1],
        [0, 0, 2],
    ];
    let mut out = Vec::with_capacity(36);
    for qx in &quads {
        for qy in &quads {
            let mut e = vec![0u16; 6];
            e[..3].copy_from_slice(qx);
            e[3..].copy_from_slice(qy);
            out.push(Monomial(e));
        }
    }
    out
}

/// Imposes value and all first partials zero at every diagonal base point;
/// the solution space must have dimension exactly 36 - 20 = 16.
pub fn basis_i_e2_22(base: &BasePoints) -> Result<DoublePointSpace> {
    if !base.in_general_position() {
        return Err(Error::Degenerate(
            "base points must be in general linear position".into(),
        ));
    }
    let xy = Ring::xy();
    let monomials = xy_monomials_22();
    let basis_polys: Vec<MultiPoly> = monomials
        .iter()
        .map(|m| MultiPoly::from_terms(&xy, [(m.clone(), Rational::one())]))
        .collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for e in &base.points {
        let pt: Vec<Rational> = e.coords.iter().chain(e.coords.iter()).cloned().collect();
        rows.push(basis_polys.iter().map(|f| f.eval(&pt)).collect());
        for v in 0..6 {
            rows.push(
                basis_polys
                    .iter()
                    .map(|f| f.derivative(v).eval(&pt))
                    .collect(),
            );
        }
    }
    let kernel = Matrix::from_rows(rows).kernel();
    if kernel.len() != 16 {
        return Err(Error::Degenerate(format!(
            "expected a 16-dimensional double-point space, got {}",
            kernel.len()
        )));
    }
    let forms = kernel
        .into_iter()
        .map(|coeffs| {
            MultiPoly::from_terms(
                &xy,
                monomials
                    .iter()
                    .cloned()
                    .zip(coeffs)
                    .filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect();
    Ok(DoublePointSpace {
        base: base.clone(),
        forms,
    })
}

/// A (2,2)-form that is quadratic in y corresponds to a symmetric 3x3
/// matrix of x-quadrics via f = y^T A(x) y.
pub fn form_to_matrix(f: &MultiPoly) -> Vec<Vec<MultiPoly>> {
    let x3 = Ring::x3();
    let mut entries = vec![vec![MultiPoly::zero(&x3); 3]; 3];
    for (m, c) in f.terms() {
        let ydeg: Vec<u16> = m.0[3..6].to_vec();
        let mut xm = Monomial::one(3);
        for i in 0..3 {
            xm.0[i] = m.0[i];
        }
        let (j, k) = match ydeg.iter().position(|&e| e == 2) {
            Some(j) => (j, j),
            None => {
                let idx: Vec<usize> = (0..3).filter(|&j| ydeg[j] == 1).collect();
                (idx[0], idx[1])
            }
        };
        if j == k {
            entries[j][j].add_term(xm, c.clone());
        } else {
            let half = c / rat(2);
            entries[j][k].add_term(xm.clone(), half.clone());
            entries[k][j].add_term(xm, half);
        }
    }
    entries
}

/// Inverse of `form_to_matrix`: reconstructs y^T A(x) y.
pub fn matrix_to_form(entries: &[Vec<MultiPoly>]) -> MultiPoly {
    let xy = Ring::xy();
    let mut out = MultiPoly::zero(&xy);
    for j in 0..3 {
        for k in 0..3 {
            for (m, c) in entries[j][k].terms() {
                let mut e = vec![0u16; 6];
                e[..3].copy_from_slice(&m.0);
                e[3 + j] += 1;
                e[3 + k] += 1;
                out.add_term(Monomial(e), c.clone());
            }
        }
    }
    out
}

/// Bijection certificate for the matrix correspondence: both composites are
/// the identity on the 16 basis forms, and the matrix-side conditions hold:
/// A(e_i) e_i = 0 and the three x-derivative conditions at each base point.
pub fn matrix_correspondence_is_bijection(space: &DoublePointSpace) -> Result<bool> {
    for f in &space.forms {
        let a = form_to_matrix(f);
        if matrix_to_form(&a) != *f {
            return Ok(false);
        }
        // symmetry
        for j in 0..3 {
            for k in 0..3 {
                if a[j][k] != a[k][j] {
                    return Ok(false);
                }
            }
        }
        for e in &space.base.points {
            let ex = &e.coords;
            // A(e) e = 0
            for j in 0..3 {
                let mut acc = Rational::zero();
                for k in 0..3 {
                    acc += a[j][k].eval(ex) * &ex[k];
                }
                if !acc.is_zero() {
                    return Ok(false);
                }
            }
            // x-derivative conditions: e^T (dA/dx_m)(e) e = 0
            for m in 0..3 {
                let mut acc = Rational::zero();
                for j in 0..3 {
                    for k in 0..3 {
                        acc += a[j][k].derivative(m).eval(ex) * &ex[j] * &ex[k];
                    }
                }
                if !acc.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Counts the members of the plane family meeting a fixed general plane
/// improperly (in at least a line): the rank condition
/// rank [M_x' | plane] <= 4 on the 5x6 matrix via its 5x5 minors, saturated
/// against the base points. The classical class of the congruence is 3.
pub fn class_check(
    data: &BilinearMapData,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Result<u64> {
    let ring = Ring::new(vec!["x1", "x2", "x3", "u"]);
    let lift = |f: &MultiPoly| -> MultiPoly {
        MultiPoly::from_terms(
            &ring,
            f.terms().map(|(m, c)| {
                let mut e = m.0.clone();
                e.push(0);
                (Monomial(e), c.clone())
            }),
        )
    };
    let entries = data.m_x_entries();
    'draws: for _ in 0..8 {
        // a general plane of P^4, spanned by three random points
        let plane_cols: Vec<Vec<Rational>> = (0..3)
            .map(|_| (0..5).map(|_| rat(rng.gen_range(-6..=6i64))).collect())
            .collect();
        if Matrix::from_rows(plane_cols.clone()).rank() != 3 {
            continue;
        }
        // rows of the 5x6 matrix [M_x | plane basis]
        let rows: Vec<Vec<MultiPoly>> = (0..5)
            .map(|k| {
                let mut row: Vec<MultiPoly> = entries[k].iter().map(&lift).collect();
                for col in &plane_cols {
                    row.push(MultiPoly::constant(&ring, col[k].clone()));
                }
                row
            })
            .collect();
        let mut gens: Vec<MultiPoly> = Vec::new();
        for skip in 0..6 {
            let sub: Vec<Vec<MultiPoly>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter_map(|(c, p)| (c != skip).then(|| p.clone()))
                        .collect()
                })
                .collect();
            let det = crate::matrix::poly_det(&sub)?;
            if !det.is_zero() {
                gens.push(det);
            }
        }
        if gens.is_empty() {
            continue;
        }
        let mut best: Option<u64> = None;
        for conic in data.base_conics() {
            let sat = MultiPoly::var(&ring, 3)
                .mul(&lift(&conic))
                .sub(&MultiPoly::one(&ring));
            for _ in 0..5 {
                let chart = random_linear_form(&ring, 0..3, rng).sub(&MultiPoly::one(&ring));
                let mut system = gens.clone();
                system.push(sat.clone());
                system.push(chart);
                let gb = buchberger(&system, MonomialOrder::GrevLex, budget)?;
                let count = gb.quotient_dimension()?;
                best = Some(best.map_or(count, |b| b.max(count)));
            }
        }
        if let Some(c) = best {
            return Ok(c);
        }
        continue 'draws;
    }
    Err(Error::ResamplingExhausted(8))
}

/// Witness data of one focal check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct FocalCheck {
    pub branch_degree: u32,
    pub squarefree_degree: u32,
    pub passed: bool,
}

/// Certifies the focal double-conic property along a random line inside the
/// plane P_x: the fiber system over the moving point p(tau) is eliminated to
/// a single coordinate; after removing the base-locus factors the residual
/// elimination polynomial has degree 2 (the known sheet through x and one
/// residual sheet), and its discriminant D(tau) - the branch divisor
/// restricted to the line - must be a degree-4 polynomial whose squarefree
/// part has degree at most 2: an everywhere-doubled binary quartic.
pub fn focal_square_check(
    data: &BilinearMapData,
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Result<FocalCheck> {
    'draws: for _ in 0..32 {
        // generic x in the chart x1 = 1
        let x = vec![
            rat(1),
            rat(rng.gen_range(-6..=6i64)),
            rat(rng.gen_range(-6..=6i64)),
        ];
        let mx = data.m_x_at(&x);
        if mx.rank() != 3 {
            continue;
        }
        // random line in P_x through the images of two parameter points
        let ya: Vec<Rational> = (0..3).map(|_| rat(rng.gen_range(-5..=5i64))).collect();
        let yb: Vec<Rational> = (0..3).map(|_| rat(rng.gen_range(-5..=5i64))).collect();
        if ya.iter().all(|c| c.is_zero()) || yb.iter().all(|c| c.is_zero()) {
            continue;
        }
        let pa = mx.mul_vec(&ya);
        let pb = mx.mul_vec(&yb);
        if pa.iter().all(|c| c.is_zero())
            || pb.iter().all(|c| c.is_zero())
            || crate::projective::projectively_equal(&pa, &pb)
        {
            continue;
        }
        // ring for the unknown plane point x' = (1, s, t) and tau
        let ring = Ring::new(vec!["s", "t", "tau"]);
        let entries = data.m_x_entries();
        let lift_x = |f: &MultiPoly| -> MultiPoly {
            // x-linear form evaluated at (1, s, t)
            let images = vec![
                MultiPoly::one(&ring),
                MultiPoly::var(&ring, 0),
                MultiPoly::var(&ring, 1),
            ];
            f.substitute(&images).expect("substitution")
        };
        let tau = MultiPoly::var(&ring, 2);
        // moving point p(tau) = pa + tau pb
        let p_tau: Vec<MultiPoly> = (0..5)
            .map(|k| {
                MultiPoly::constant(&ring, pa[k].clone())
                    .add(&tau.scale(&pb[k]))
            })
            .collect();
        let rows: Vec<Vec<MultiPoly>> = (0..5)
            .map(|k| {
                let mut row: Vec<MultiPoly> = entries[k].iter().map(&lift_x).collect();
                row.push(p_tau[k].clone());
                row
            })
            .collect();
        let mut gens: Vec<MultiPoly> = Vec::new();
        for skip in 0..5 {
            let sub: Vec<Vec<MultiPoly>> = (0..5)
                .filter(|&r| r != skip)
                .map(|r| rows[r].clone())
                .collect();
            let det = crate::matrix::poly_det(&sub)?;
            if !det.is_zero() {
                gens.push(det);
            }
        }
        if gens.is_empty() {
            continue;
        }
        // eliminate t, keeping the curve in the (s, tau) plane
        let eliminated = eliminate(&gens, &[1], budget)?;
        if eliminated.is_empty() {
            continue;
        }
        let mut curve = MultiPoly::zero(&ring);
        for g in &eliminated {
            curve = poly_gcd(&curve, g);
        }
        if curve.is_zero() || curve.total_degree() == 0 {
            continue;
        }
        // strip tau-content and the base-locus sheets s = s(e_i); in the
        // chart x' = (1, s, t) the visible base points are e with e_1 != 0
        let content = {
            let coeffs = curve.univariate_coefficients(0);
            let mut c = MultiPoly::zero(&ring);
            for k in coeffs {
                if !k.is_zero() {
                    c = poly_gcd(&c, &k);
                }
            }
            c
        };
        if content.total_degree() > 0 {
            curve = crate::poly::exact_div(&curve, &content).expect("content divides");
        }
        let s_var = MultiPoly::var(&ring, 0);
        for e in &data.base.points {
            if e.coords[0].is_zero() {
                continue;
            }
            let se = &e.coords[1] / &e.coords[0];
            let factor = s_var.sub(&MultiPoly::constant(&ring, se));
            while let Some(q) = crate::poly::exact_div(&curve, &factor) {
                curve = q;
            }
        }
        // residual fiber polynomial: must be degree 2 in s, containing the
        // known sheet s = x_2/x_1 and the residual sheet
        if curve.degree_in_var(0) != 2 {
            continue;
        }
        let known_s = &x[1] / &x[0];
        let at_known: Vec<MultiPoly> = vec![
            MultiPoly::constant(&ring, known_s),
            MultiPoly::var(&ring, 1),
            MultiPoly::var(&ring, 2),
        ];
        if !curve.substitute(&at_known)?.is_zero() {
            // the known solution escaped the chart or the sheet; redraw
            continue 'draws;
        }
        let coeffs = curve.univariate_coefficients(0);
        let a = &coeffs[2];
        let b = &coeffs[1];
        let c = &coeffs[0];
        let disc = b.mul(b).sub(&a.mul(c).scale(&rat(4)));
        if disc.is_zero() {
            continue;
        }
        let disc = disc.primitive_normal_form();
        let branch_degree = disc.total_degree();
        if branch_degree != 4 {
            // the line met the fundamental locus or the branch at infinity
            // of the chart; resample per policy
            continue;
        }
        let an = square_analysis(&disc)?;
        let squarefree_degree = an.squarefree_part.total_degree();
        return Ok(FocalCheck {
            branch_degree,
            squarefree_degree,
            passed: squarefree_degree <= 2,
        });
    }
    Err(Error::ResamplingExhausted(32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn standard_frame_dimension_five() {
        let data = basis_i_e_11(&BasePoints::standard()).unwrap();
        assert_eq!(data.forms.len(), 5);
        // each basis form vanishes at every diagonal base point
        for f in &data.forms {
            assert_eq!(f.bidegree(), Some((1, 1)));
            for e in &data.base.points {
                let pt: Vec<Rational> =
                    e.coords.iter().chain(e.coords.iter()).cloned().collect();
                assert!(f.eval(&pt).is_zero());
            }
        }
    }

    #[test]
    fn collinear_base_points_rejected() {
        let bad = BasePoints {
            points: vec![
                ProjPoint::from_ints(&[1, 0, 0]),
                ProjPoint::from_ints(&[0, 1, 0]),
                ProjPoint::from_ints(&[1, 1, 0]),
                ProjPoint::from_ints(&[0, 0, 1]),
            ],
        };
        assert!(!bad.in_general_position());
        assert!(basis_i_e_11(&bad).is_err());
    }

    #[test]
    fn base_point_is_indeterminate() {
        let data = basis_i_e_11(&BasePoints::standard()).unwrap();
        let e1 = vec![rat(1), rat(0), rat(0)];
        assert!(data.t_e_eval(&e1, &e1).is_err());
        // a random pair maps to a rational point of P^4
        let x = vec![rat(2), rat(-1), rat(3)];
        let y = vec![rat(1), rat(4), rat(-2)];
        let p = data.t_e_eval(&x, &y).unwrap();
        assert_eq!(p.coords.len(), 5);
    }

    #[test]
    fn generic_plane_has_dimension_two() {
        let data = basis_i_e_11(&BasePoints::standard()).unwrap();
        let x = vec![rat(2), rat(-1), rat(3)];
        let (plane, full_rank) = data.plane_of(&x).unwrap();
        assert!(full_rank);
        assert_eq!(plane.dim(), 2);
        // injectivity on the fiber plane: rank 3 kernel check
        assert_eq!(data.m_x_at(&x).kernel().len(), 0);
        // the image of (x, y) lies on the plane
        let y = vec![rat(1), rat(4), rat(-2)];
        let p = data.t_e_eval(&x, &y).unwrap();
        assert!(plane.contains_point(&p));
    }

    #[test]
    fn double_point_space_dimension_sixteen() {
        let space = basis_i_e2_22(&BasePoints::standard()).unwrap();
        assert_eq!(space.forms.len(), 16);
        for f in &space.forms {
            assert_eq!(f.bidegree(), Some((2, 2)));
            for e in &space.base.points {
                let pt: Vec<Rational> =
                    e.coords.iter().chain(e.coords.iter()).cloned().collect();
                assert!(f.eval(&pt).is_zero());
                for v in 0..6 {
                    assert!(f.derivative(v).eval(&pt).is_zero());
                }
            }
        }
        assert!(matrix_correspondence_is_bijection(&space).unwrap());
    }

    #[test]
    fn random_frames_keep_dimensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let base = BasePoints::random(&mut rng).unwrap();
            assert_eq!(basis_i_e_11(&base).unwrap().forms.len(), 5);
            assert_eq!(basis_i_e2_22(&base).unwrap().forms.len(), 16);
        }
    }

    #[test]
    fn fiber_count_is_two() {
        let data = basis_i_e_11(&BasePoints::standard()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = vec![rat(2), rat(-1), rat(3)];
        let y = vec![rat(1), rat(4), rat(-2)];
        let p = data.t_e_eval(&x, &y).unwrap();
        // back-substitution: the known preimage satisfies the minor system
        for k in 0..5 {
            for l in (k + 1)..5 {
                let xy: Vec<Rational> = x.iter().chain(y.iter()).cloned().collect();
                let mk = data.forms[k].eval(&xy);
                let ml = data.forms[l].eval(&xy);
                assert_eq!(&mk * &p.coords[l], &ml * &p.coords[k]);
            }
        }
        let n = fiber_count(&data, &p, &Budget::default(), &mut rng).unwrap();
        assert_eq!(n, 2);
    }

    #[test]
    fn order_is_two() {
        let data = basis_i_e_11(&BasePoints::standard()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = ProjPoint::from_ints(&[3, -2, 1, 5, -4]);
        let n = order_check(&data, &p, &Budget::default(), &mut rng).unwrap();
        assert_eq!(n, 2);
        // a point on a known plane: the rank condition holds at that x
        let x0 = vec![rat(2), rat(-1), rat(3)];
        let y0 = vec![rat(1), rat(4), rat(-2)];
        let q = data.t_e_eval(&x0, &y0).unwrap();
        let m = data.m_x_at(&x0);
        let mut rows = m.transpose().rows_vec();
        rows.push(q.coords.clone());
        assert_eq!(Matrix::from_rows(rows).rank(), 3);
    }

    #[test]
    fn focal_check_passes() {
        let data = basis_i_e_11(&BasePoints::standard()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let check = focal_square_check(&data, &Budget::default(), &mut rng).unwrap();
        assert!(check.passed, "focal check: {check:?}");
    }
}
