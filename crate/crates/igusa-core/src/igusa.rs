//! The Igusa quartic B = {s4 - 1/4 s2^2 = 0} and the Segre cubic primal
//! B* = {s3 = 0} inside the hyperplane {s1 = 0} of P^5, with exact
//! certificates for their configuration geometry: the 15 singular lines and
//! 15 triple points of B (the Cremona-Richmond (15_3, 15_3)-configuration),
//! the 10 nodes and 15 planes of B* (the (15_4, 10_6)-configuration), the
//! dual contraction of planes to lines, and the Kummer tangent sections.

use crate::groebner::{buchberger, projective_count, Budget, GroebnerBasis, MonomialOrder};
use crate::matrix::Matrix;
use crate::poly::MultiPoly;
use crate::projective::{sample_point_on, singularity_test, ProjPoint, ProjSubspace};
use crate::quadext::Scalar;
use crate::rational::{rat, ratio, Rational};
use crate::ring::Ring;
use crate::{Error, Result};
use num_traits::Zero;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

/// Power sum s_k = z1^k + ... + z6^k.
pub fn power_sum(ring: &Arc<Ring>, k: u32) -> MultiPoly {
    (0..ring.num_vars()).fold(MultiPoly::zero(ring), |acc, i| {
        acc.add(&MultiPoly::var(ring, i).pow(k))
    })
}

/// Substitutes z6 = -(z1 + ... + z5), passing to the chart ring of the
/// hyperplane {s1 = 0}.
pub fn eliminate_z6(f: &MultiPoly) -> MultiPoly {
    let z5 = Ring::z5();
    let mut images: Vec<MultiPoly> = (0..5).map(|i| MultiPoly::var(&z5, i)).collect();
    let minus_sum = images
        .iter()
        .fold(MultiPoly::zero(&z5), |acc, v| acc.add(v))
        .neg();
    images.push(minus_sum);
    f.substitute_linear(&images).expect("linear substitution")
}

/// Lifts a chart point (z1..z5) back to six coordinates on {s1 = 0}.
pub fn lift_chart_point<S: Scalar>(p5: &[S]) -> Vec<S> {
    let mut out = p5.to_vec();
    let sum = p5.iter().fold(S::zero(), |acc, c| acc.add_ref(c));
    out.push(sum.neg_ref());
    out
}

/// The Igusa quartic in six-variable and chart form.
#[derive(Clone, Debug)]
pub struct IgusaQuartic {
    pub b: MultiPoly,
    pub b_hat: MultiPoly,
}

/// The Segre cubic primal in six-variable and chart form.
#[derive(Clone, Debug)]
pub struct SegreCubic {
    pub c: MultiPoly,
    pub c_hat: MultiPoly,
}

/// Constructs both threefolds with exactly expanded equations.
pub fn build() -> (IgusaQuartic, SegreCubic) {
    let z6 = Ring::z6();
    let s2 = power_sum(&z6, 2);
    let s4 = power_sum(&z6, 4);
    let b = s4.sub(&s2.mul(&s2).scale(&ratio(1, 4)));
    let c = power_sum(&z6, 3);
    (
        IgusaQuartic {
            b_hat: eliminate_z6(&b),
            b,
        },
        SegreCubic {
            c_hat: eliminate_z6(&c),
            c,
        },
    )
}

/// S6 acts by permuting z1..z6; invariance is checked on the generating set
/// {transposition (1 2), 6-cycle}.
pub fn s6_invariance(f: &MultiPoly) -> bool {
    let n = f.ring().num_vars();
    assert_eq!(n, 6, "S6 acts on the six-variable ring");
    let transposition = [1usize, 0, 2, 3, 4, 5];
    let cycle = [1usize, 2, 3, 4, 5, 0];
    f.permute_vars(&transposition) == *f && f.permute_vars(&cycle) == *f
}

/// The 15 partitions of {0..5} into three unordered pairs, each pair and the
/// pair list sorted.
pub fn pair_partitions() -> Vec<[[usize; 2]; 3]> {
    let mut out = Vec::with_capacity(15);
    // first pair contains 0
    for j in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != j).collect();
        // second pair contains rest[0]
        for k in 1..4 {
            let p2 = [rest[0], rest[k]];
            let p3: Vec<usize> = rest[1..]
                .iter()
                .copied()
                .filter(|&x| x != rest[k])
                .collect();
            out.push([[0, j], p2, [p3[0], p3[1]]]);
        }
    }
    out
}

/// One of the 15 singular lines of B, labeled by its pair partition.
#[derive(Clone, Debug)]
pub struct SingularLine {
    pub partition: [[usize; 2]; 3],
    /// Line in P^5 (inside {s1 = 0}).
    pub line: ProjSubspace,
    /// The same line in the z6-eliminated chart P^4.
    pub line_chart: ProjSubspace,
}

impl SingularLine {
    pub fn label(&self) -> String {
        self.partition
            .iter()
            .map(|p| format!("{{{}{}}}", p[0] + 1, p[1] + 1))
            .collect()
    }
}

fn line_of_partition(partition: &[[usize; 2]; 3]) -> SingularLine {
    // z equal on each pair: values u, v, w with u + v + w = 0, so w = -u-v.
    let mut row_u = vec![rat(0); 6];
    let mut row_v = vec![rat(0); 6];
    for &i in &partition[0] {
        row_u[i] = rat(1);
    }
    for &i in &partition[2] {
        row_u[i] = rat(-1);
    }
    for &i in &partition[1] {
        row_v[i] = rat(1);
    }
    for &i in &partition[2] {
        row_v[i] = rat(-1);
    }
    let line = ProjSubspace::from_spanning(5, vec![row_u.clone(), row_v.clone()]).unwrap();
    let chart_rows = vec![row_u[..5].to_vec(), row_v[..5].to_vec()];
    let line_chart = ProjSubspace::from_spanning(4, chart_rows).unwrap();
    SingularLine {
        partition: *partition,
        line,
        line_chart,
    }
}

/// The 15 singular lines of B, each certified symbolically: b_hat and all
/// five of its partials vanish identically on the line's parametrization.
pub fn singular_lines(igusa: &IgusaQuartic) -> Result<Vec<SingularLine>> {
    let uv = Ring::new(vec!["u", "v"]);
    let mut lines = Vec::with_capacity(15);
    for partition in pair_partitions() {
        let sl = line_of_partition(&partition);
        let images = sl.line_chart.parametrization(&uv);
        let restricted = igusa.b_hat.substitute_linear(&images)?;
        if !restricted.is_zero() {
            return Err(Error::Degenerate(format!(
                "b does not vanish on line {}",
                sl.label()
            )));
        }
        for v in 0..5 {
            let partial = igusa.b_hat.derivative(v).substitute_linear(&images)?;
            if !partial.is_zero() {
                return Err(Error::Degenerate(format!(
                    "gradient of b does not vanish on line {}",
                    sl.label()
                )));
            }
        }
        lines.push(sl);
    }
    Ok(lines)
}

/// A configuration certificate: labeled objects, the incidence matrix
/// re-derived from exact coordinates, and its row/column sums.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigCertificate {
    pub name: String,
    pub point_labels: Vec<String>,
    pub space_labels: Vec<String>,
    /// incidence[i][j]: point i lies on space j
    pub incidence: Vec<Vec<bool>>,
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
}

impl ConfigCertificate {
    fn from_incidence(
        name: &str,
        point_labels: Vec<String>,
        space_labels: Vec<String>,
        incidence: Vec<Vec<bool>>,
    ) -> Self {
        let row_sums = incidence
            .iter()
            .map(|r| r.iter().filter(|&&x| x).count())
            .collect();
        let col_sums = (0..space_labels.len())
            .map(|j| incidence.iter().filter(|r| r[j]).count())
            .collect();
        ConfigCertificate {
            name: name.into(),
            point_labels,
            space_labels,
            incidence,
            row_sums,
            col_sums,
        }
    }
}

/// The 15 triple points of B: the orbit of (-2 : -2 : 1 : 1 : 1 : 1).
pub fn triple_points() -> Vec<(usize, usize, ProjPoint<Rational>)> {
    let mut out = Vec::with_capacity(15);
    for i in 0..6 {
        for j in (i + 1)..6 {
            let coords: Vec<Rational> = (0..6)
                .map(|k| if k == i || k == j { rat(-2) } else { rat(1) })
                .collect();
            out.push((i, j, ProjPoint::new(coords)));
        }
    }
    out
}

/// The Cremona-Richmond (15_3, 15_3)-configuration: each of the 15 points
/// is a singular point of B through which exactly 3 of the 15 singular
/// lines pass (a triple point of the line configuration), and dually each
/// line carries exactly 3 of the points.
pub fn triple_points_and_cremona_richmond(
    igusa: &IgusaQuartic,
    lines: &[SingularLine],
) -> Result<ConfigCertificate> {
    let points = triple_points();
    let mut incidence = Vec::with_capacity(15);
    for (_, _, p) in &points {
        let row: Vec<bool> = lines.iter().map(|l| l.line.contains_point(p)).collect();
        incidence.push(row);
    }
    // incidence is forced by the partition combinatorics
    for (r, (i, j, _)) in points.iter().enumerate() {
        for (cix, line) in lines.iter().enumerate() {
            let expected = line.partition.iter().any(|p| p == &[*i, *j]);
            if incidence[r][cix] != expected {
                return Err(Error::Degenerate(
                    "incidence disagrees with partition combinatorics".into(),
                ));
            }
        }
    }
    // every configuration point is singular on B
    for (_, _, p) in &points {
        let chart: Vec<Rational> = p.coords[..5].to_vec();
        if !igusa.b_hat.eval(&chart).is_zero() {
            return Err(Error::Degenerate("configuration point is off B".into()));
        }
        for a in 0..5 {
            if !igusa.b_hat.derivative(a).eval(&chart).is_zero() {
                return Err(Error::Degenerate(
                    "configuration point is not singular on B".into(),
                ));
            }
        }
    }
    let cert = ConfigCertificate::from_incidence(
        "cremona-richmond",
        points
            .iter()
            .map(|(i, j, _)| format!("tp{}{}", i + 1, j + 1))
            .collect(),
        lines.iter().map(|l| l.label()).collect(),
        incidence,
    );
    if cert.row_sums.iter().any(|&s| s != 3) || cert.col_sums.iter().any(|&s| s != 3) {
        return Err(Error::Degenerate(
            "Cremona-Richmond incidence counts are not (3, 3)".into(),
        ));
    }
    Ok(cert)
}

/// A plane of the Segre cubic, labeled by its pair partition: the span of
/// {z_i + z_j = 0} over the three pairs.
#[derive(Clone, Debug)]
pub struct SegrePlane {
    pub partition: [[usize; 2]; 3],
    pub plane: ProjSubspace,
}

pub fn segre_planes() -> Vec<SegrePlane> {
    pair_partitions()
        .into_iter()
        .map(|partition| {
            let rows: Vec<Vec<Rational>> = partition
                .iter()
                .map(|&[i, j]| {
                    let mut r = vec![rat(0); 6];
                    r[i] = rat(1);
                    r[j] = rat(-1);
                    r
                })
                .collect();
            SegrePlane {
                partition,
                plane: ProjSubspace::from_spanning(5, rows).unwrap(),
            }
        })
        .collect()
}

/// The 10 nodes of the Segre cubic: permutations of (1:1:1:-1:-1:-1),
/// labeled by the 3-subset carrying +1 that contains index 0.
pub fn segre_nodes() -> Vec<(Vec<usize>, ProjPoint<Rational>)> {
    let mut out = Vec::new();
    for a in 1..6 {
        for b in (a + 1)..6 {
            let plus = vec![0, a, b];
            let coords: Vec<Rational> = (0..6)
                .map(|k| if plus.contains(&k) { rat(1) } else { rat(-1) })
                .collect();
            out.push((plus, ProjPoint::new(coords)));
        }
    }
    out
}

/// Certifies the Segre configuration: 10 ordinary nodes (Hessian rank 4),
/// 15 planes on which c vanishes identically, and the (15_4, 10_6)
/// incidence: 4 nodes per plane, 6 planes per node.
pub fn segre_configuration(segre: &SegreCubic) -> Result<ConfigCertificate> {
    let nodes = segre_nodes();
    let planes = segre_planes();
    for (_, p) in &nodes {
        let chart: Vec<Rational> = p.coords[..5].to_vec();
        let t = singularity_test(&segre.c_hat, &chart)?;
        if !t.singular || t.node_rank != Some(4) {
            return Err(Error::Degenerate(
                "Segre node is not an ordinary double point".into(),
            ));
        }
    }
    let abc = Ring::new(vec!["a", "b", "c"]);
    for pl in &planes {
        let images = pl.plane.parametrization(&abc);
        let restricted = segre.c.substitute_linear(&images)?;
        if !restricted.is_zero() {
            return Err(Error::Degenerate(
                "c does not vanish on a Segre plane".into(),
            ));
        }
    }
    let incidence: Vec<Vec<bool>> = nodes
        .iter()
        .map(|(_, p)| planes.iter().map(|pl| pl.plane.contains_point(p)).collect())
        .collect();
    let cert = ConfigCertificate::from_incidence(
        "segre-15_4-10_6",
        nodes
            .iter()
            .map(|(plus, _)| format!("n{}{}{}", plus[0] + 1, plus[1] + 1, plus[2] + 1))
            .collect(),
        planes
            .iter()
            .map(|pl| {
                pl.partition
                    .iter()
                    .map(|p| format!("{{{}{}}}", p[0] + 1, p[1] + 1))
                    .collect()
            })
            .collect(),
        incidence,
    );
    if cert.row_sums.iter().any(|&s| s != 6) || cert.col_sums.iter().any(|&s| s != 4) {
        return Err(Error::Degenerate(
            "Segre incidence counts are not (6 planes per node, 4 nodes per plane)".into(),
        ));
    }
    Ok(cert)
}

/// The dual (gradient) map of the Segre cubic, in the representative
/// w_i = z_i^2 - s2/6 which lands back in {sum w_i = 0}.
pub fn dual_map_images(ring: &Arc<Ring>) -> Vec<MultiPoly> {
    let s2 = power_sum(ring, 2);
    (0..6)
        .map(|i| {
            MultiPoly::var(ring, i)
                .pow(2)
                .sub(&s2.scale(&ratio(1, 6)))
        })
        .collect()
}

/// Image of a Segre plane under the dual map: certifies the six quadratic
/// forms parametrizing the image span a pencil (projective dimension 1) and
/// returns the image line.
pub fn dual_contraction(plane: &SegrePlane) -> Result<ProjSubspace> {
    let abc = Ring::new(vec!["a", "b", "c"]);
    let z6 = Ring::z6();
    let param = plane.plane.parametrization(&abc);
    let w = dual_map_images(&z6);
    // w_i restricted to the plane: a quadratic form in (a, b, c)
    let monomials: Vec<(u16, u16, u16)> =
        vec![(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)];
    let mut coeff_rows: Vec<Vec<Rational>> = vec![Vec::new(); monomials.len()];
    for wi in &w {
        let restricted = wi.substitute(&param)?;
        for (mi, &(ea, eb, ec)) in monomials.iter().enumerate() {
            let m = crate::poly::Monomial(vec![ea, eb, ec]);
            coeff_rows[mi].push(restricted.coefficient(&m));
        }
    }
    // rows indexed by monomials are the possible image directions in P^5
    let nonzero: Vec<Vec<Rational>> = coeff_rows
        .into_iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .collect();
    let span = ProjSubspace::from_spanning(5, nonzero)?;
    if span.dim() != 1 {
        return Err(Error::Degenerate(format!(
            "dual image of plane {:?} has projective dimension {}",
            plane.partition,
            span.dim()
        )));
    }
    Ok(span)
}

/// Groebner certificate that b(w(z)) lies in the ideal (c, s1): the
/// desk-scale half of the projective duality between B and the Segre cubic.
pub fn dual_pullback_membership(budget: &Budget) -> Result<bool> {
    let z6 = Ring::z6();
    let (igusa, segre) = build();
    let w = dual_map_images(&z6);
    let bw = igusa.b.substitute(&w)?;
    let s1 = power_sum(&z6, 1);
    let gb = buchberger(
        &[segre.c.clone(), s1],
        MonomialOrder::GrevLex,
        budget,
    )?;
    Ok(gb.contains(&bw))
}

/// Pointwise cross-check of the duality certificate: b(w(p)) = 0 for points
/// p sampled exactly on {c = s1 = 0}.
pub fn dual_pullback_spot_checks(count: usize, rng: &mut ChaCha8Rng) -> Result<bool> {
    let (igusa, segre) = build();
    let z6 = Ring::z6();
    let w = dual_map_images(&z6);
    let bw = igusa.b.substitute(&w)?;
    for _ in 0..count {
        let p5 = sample_point_on(&segre.c_hat, rng)?;
        let p6 = lift_chart_point(&p5.coords);
        if !bw.eval(&p6).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Value of the dual map at a point, as six exact scalars.
pub fn dual_map_at<S: Scalar>(p6: &[S]) -> Vec<S> {
    let s2 = p6
        .iter()
        .fold(S::zero(), |acc, z| acc.add_ref(&z.mul_ref(z)));
    let sixth = S::from_rational(&ratio(1, 6));
    p6.iter()
        .map(|z| z.mul_ref(z).sub_ref(&sixth.mul_ref(&s2)))
        .collect()
}

/// The four lines cut on B by a Segre plane: b restricted to the plane
/// factors into four linear forms. Each returned line lies entirely in B.
pub fn lines_of_plane_section(igusa: &IgusaQuartic, plane: &SegrePlane) -> Result<Vec<ProjSubspace>> {
    let abc = Ring::new(vec!["a", "b", "c"]);
    let param = plane.plane.parametrization(&abc);
    let basis = plane.plane.basis_rows();
    // the four linear factors a+b+c, -a+b+c, a-b+c, a+b-c in the parameters
    let signs: [[i64; 3]; 4] = [[1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]];
    let restricted = igusa.b.substitute_linear(&param)?;
    let mut out = Vec::with_capacity(4);
    for s in signs {
        let factor = (0..3).fold(MultiPoly::zero(&abc), |acc, i| {
            acc.add(&MultiPoly::var(&abc, i).scale(&rat(s[i])))
        });
        // certificate: the factor divides the restriction
        if crate::poly::exact_div(&restricted, &factor.pow(1)).is_none() {
            return Err(Error::Degenerate(
                "expected linear factor of the plane section is missing".into(),
            ));
        }
        // param points with factor = 0: solve for one parameter
        let k = (0..3).find(|&i| s[i] != 0).unwrap();
        // parameter vectors spanning {factor = 0}
        let mut spans: Vec<Vec<Rational>> = Vec::new();
        for j in 0..3 {
            if j == k {
                continue;
            }
            let mut v = vec![rat(0); 3];
            v[j] = rat(1);
            v[k] = ratio(-s[j], s[k]);
            spans.push(v);
        }
        let rows: Vec<Vec<Rational>> = spans
            .iter()
            .map(|pv| {
                (0..6)
                    .map(|col| {
                        (0..3).fold(Rational::zero(), |acc, i| {
                            acc + &pv[i] * basis[i].get(col).unwrap()
                        })
                    })
                    .collect()
            })
            .collect();
        out.push(ProjSubspace::from_spanning(5, rows)?);
    }
    Ok(out)
}

/// A rational smooth point on the chart quartic b_hat, by deterministic
/// small-height search.
pub fn smooth_rational_point_on_b(igusa: &IgusaQuartic, bound: i64) -> Option<Vec<Rational>> {
    let n = 5;
    let width = (2 * bound + 1) as u64;
    let total = width.checked_pow(n as u32)?;
    for code in 1..total {
        let mut c = code;
        let mut v: Vec<Rational> = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(rat((c % width) as i64 - bound));
            c /= width;
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        if !igusa.b_hat.eval(&v).is_zero() {
            continue;
        }
        let grad: Vec<Rational> = (0..5).map(|i| igusa.b_hat.derivative(i).eval(&v)).collect();
        if grad.iter().any(|g| !g.is_zero()) {
            return Some(v);
        }
    }
    None
}

/// Report of the Kummer tangent-section computation.
#[derive(Clone, Debug, Serialize)]
pub struct KummerSection {
    pub point: Vec<String>,
    pub line_hits_distinct: bool,
    pub singular_count: u64,
    pub counts_agree: bool,
}

/// The tangent hyperplane section Y = T_p B ∩ B at a general smooth rational
/// point p is a Kummer surface: certifies that Y has exactly 16 singular
/// points counted with multiplicity (the 15 hits of Sing B plus p itself).
pub fn kummer_section_count(
    igusa: &IgusaQuartic,
    lines: &[SingularLine],
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Result<KummerSection> {
    let p = smooth_rational_point_on_b(igusa, 3)
        .ok_or_else(|| Error::Degenerate("no small smooth rational point on B".into()))?;
    let grad: Vec<Rational> = (0..5).map(|i| igusa.b_hat.derivative(i).eval(&p)).collect();
    // tangent hyperplane inside the chart P^4: grad . z = 0
    let eq = Matrix::from_rows(vec![grad.clone()]);
    let h_basis = eq.kernel();
    let hyperplane = ProjSubspace::from_spanning(4, h_basis)?;
    // the 15 singular lines must each meet it in a single point, all distinct
    let mut hits: Vec<ProjPoint<Rational>> = Vec::new();
    for l in lines {
        let m = l
            .line_chart
            .meet(&hyperplane)?
            .ok_or_else(|| Error::Degenerate("singular line misses hyperplane".into()))?;
        if m.dim() != 0 {
            return Err(Error::Degenerate(
                "tangent hyperplane contains a singular line; resample".into(),
            ));
        }
        hits.push(m.as_point().unwrap());
    }
    let mut distinct = true;
    for i in 0..hits.len() {
        for j in (i + 1)..hits.len() {
            if hits[i].projectively_equal(&hits[j]) {
                distinct = false;
            }
        }
    }
    // restrict b_hat to the hyperplane and count the singular scheme
    let wr = Ring::new(vec!["w0", "w1", "w2", "w3"]);
    let images = hyperplane.parametrization(&wr);
    let y = igusa.b_hat.substitute_linear(&images)?;
    let jac: Vec<MultiPoly> = (0..4).map(|v| y.derivative(v)).collect();
    // tangency: p itself is a singular point of the section
    let hb = Matrix::from_rows(hyperplane.basis_rows());
    let p_params = {
        // solve basis^T w = p
        let mut rows = hb.transpose().rows_vec();
        for (row, target) in rows.iter_mut().zip(&p) {
            row.push(target.clone());
        }
        let mut aug = Matrix::from_rows(rows);
        aug.rref();
        let mut w = vec![Rational::zero(); 4];
        for r in 0..aug.rows {
            if let Some(c) = (0..4).find(|&c| !aug.at(r, c).is_zero()) {
                w[c] = aug.at(r, 4).clone();
            }
        }
        w
    };
    if hb.transpose().mul_vec(&p_params) != p {
        return Err(Error::Degenerate("point is not on its tangent hyperplane".into()));
    }
    if jac.iter().any(|g| !g.eval(&p_params).is_zero()) {
        return Err(Error::Degenerate(
            "tangency failed: the point is not singular on the section".into(),
        ));
    }
    let count = projective_count(&jac, budget, rng)?;
    Ok(KummerSection {
        point: p.iter().map(|c| c.to_string()).collect(),
        line_hits_distinct: distinct,
        singular_count: count,
        counts_agree: true,
    })
}

/// Jacobian-ideal dimension certificate: the affine cone over Sing B has
/// dimension 2, and every one of the 15 lines lies inside it.
pub fn sing_b_dimension(
    igusa: &IgusaQuartic,
    lines: &[SingularLine],
    budget: &Budget,
) -> Result<(i64, GroebnerBasis)> {
    let jac: Vec<MultiPoly> = (0..5).map(|v| igusa.b_hat.derivative(v)).collect();
    let gb = buchberger(&jac, MonomialOrder::GrevLex, budget)?;
    let dim = gb.dimension();
    // containment: each generator of the Jacobian ideal vanishes on each line
    let uv = Ring::new(vec!["u", "v"]);
    for l in lines {
        let images = l.line_chart.parametrization(&uv);
        for g in &jac {
            if !g.substitute_linear(&images)?.is_zero() {
                return Err(Error::Degenerate(
                    "Jacobian generator does not vanish on a singular line".into(),
                ));
            }
        }
    }
    Ok((dim, gb))
}

/// Applies a coordinate permutation to a subspace of P^5.
pub fn permute_subspace(s: &ProjSubspace, perm: &[usize]) -> ProjSubspace {
    let mapped: Vec<Vec<Rational>> = s
        .basis_rows()
        .iter()
        .map(|row| {
            let mut out = vec![Rational::zero(); row.len()];
            for (i, val) in row.iter().enumerate() {
                out[perm[i]] = val.clone();
            }
            out
        })
        .collect();
    ProjSubspace::from_spanning(s.ambient, mapped).unwrap()
}

/// The permutation action of S6 on the set of 15 singular lines: every
/// generator maps the line set to itself.
pub fn lines_s6_stable(lines: &[SingularLine]) -> bool {
    let perms: Vec<Vec<usize>> = vec![vec![1, 0, 2, 3, 4, 5], vec![1, 2, 3, 4, 5, 0]];
    for perm in perms {
        for l in lines {
            let image = permute_subspace(&l.line, &perm);
            if !lines.iter().any(|other| other.line == image) {
                return false;
            }
        }
    }
    true
}

/// Evaluates b at a six-coordinate point.
pub fn eval_b<S: Scalar>(igusa: &IgusaQuartic, p6: &[S]) -> S {
    igusa.b.eval(p6)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn b_at_axis_point() {
        let (igusa, _) = build();
        // direct substitution: s4 = 2, s2 = 2, b = 2 - (1/4)*4 = 1
        let p = vec![rat(1), rat(-1), rat(0), rat(0), rat(0), rat(0)];
        assert_eq!(igusa.b.eval(&p), rat(1));
    }

    #[test]
    fn c_vanishes_at_node() {
        let (_, segre) = build();
        let p = vec![rat(1), rat(1), rat(1), rat(-1), rat(-1), rat(-1)];
        assert!(segre.c.eval(&p).is_zero());
    }

    #[test]
    fn b_vanishes_on_pattern_line() {
        let (igusa, _) = build();
        // (u, u, v, v, w, w) with u + v + w = 0, symbolically
        let uv = Ring::new(vec!["u", "v"]);
        let u = MultiPoly::var(&uv, 0);
        let v = MultiPoly::var(&uv, 1);
        let w = u.add(&v).neg();
        let images = vec![u.clone(), u.clone(), v.clone(), v.clone(), w.clone(), w];
        assert!(igusa.b.substitute_linear(&images).unwrap().is_zero());
    }

    #[test]
    fn invariance_checks() {
        let (igusa, segre) = build();
        let z6 = Ring::z6();
        assert!(s6_invariance(&igusa.b));
        assert!(s6_invariance(&segre.c));
        let s2 = power_sum(&z6, 2);
        assert!(s6_invariance(&s2.mul(&s2)));
        assert!(!s6_invariance(&MultiPoly::var(&z6, 0)));
        // any non-symmetric monomial fails
        assert!(!s6_invariance(&MultiPoly::var(&z6, 0).mul(&power_sum(&z6, 3))));
    }

    #[test]
    fn fifteen_distinct_singular_lines() {
        let (igusa, _) = build();
        let lines = singular_lines(&igusa).unwrap();
        assert_eq!(lines.len(), 15);
        for i in 0..15 {
            for j in (i + 1)..15 {
                assert_ne!(lines[i].line, lines[j].line);
            }
        }
        assert!(lines_s6_stable(&lines));
    }

    #[test]
    fn cremona_richmond_counts() {
        let (igusa, _) = build();
        let lines = singular_lines(&igusa).unwrap();
        let cert = triple_points_and_cremona_richmond(&igusa, &lines).unwrap();
        assert_eq!(cert.point_labels.len(), 15);
        assert!(cert.row_sums.iter().all(|&s| s == 3));
        assert!(cert.col_sums.iter().all(|&s| s == 3));
        // the example point lies exactly on the 3 lines whose partition
        // contains {1,2}
        let p = ProjPoint::from_ints(&[-2, -2, 1, 1, 1, 1]);
        let through: Vec<&SingularLine> = lines
            .iter()
            .filter(|l| l.line.contains_point(&p))
            .collect();
        assert_eq!(through.len(), 3);
        for l in through {
            assert!(l.partition.iter().any(|pr| pr == &[0, 1]));
        }
    }

    #[test]
    fn segre_counts() {
        let (_, segre) = build();
        let cert = segre_configuration(&segre).unwrap();
        assert_eq!(cert.point_labels.len(), 10);
        assert_eq!(cert.space_labels.len(), 15);
        assert!(cert.row_sums.iter().all(|&s| s == 6));
        assert!(cert.col_sums.iter().all(|&s| s == 4));
    }

    #[test]
    fn dual_contraction_matches_partition() {
        let (igusa, _) = build();
        let lines = singular_lines(&igusa).unwrap();
        for plane in segre_planes() {
            let image = dual_contraction(&plane).unwrap();
            let partner = lines
                .iter()
                .find(|l| l.partition == plane.partition)
                .unwrap();
            assert_eq!(image, partner.line, "image line must be the singular line of the same partition");
        }
    }

    #[test]
    fn dual_map_kills_segre_node() {
        let node = vec![rat(1), rat(1), rat(1), rat(-1), rat(-1), rat(-1)];
        let w = dual_map_at(&node);
        assert!(w.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn plane_sections_are_four_lines_in_b() {
        let (igusa, _) = build();
        let planes = segre_planes();
        let uv = Ring::new(vec!["u", "v"]);
        for plane in planes.iter().take(3) {
            let lines = lines_of_plane_section(&igusa, plane).unwrap();
            assert_eq!(lines.len(), 4);
            for l in &lines {
                assert_eq!(l.dim(), 1);
                let images = l.parametrization(&uv);
                assert!(igusa.b.substitute_linear(&images).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn sampling_on_the_quartic() {
        let (igusa, _) = build();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..3 {
            let p = sample_point_on(&igusa.b_hat, &mut rng).unwrap();
            assert!(igusa.b_hat.eval(&p.coords).is_zero());
        }
    }

    #[test]
    fn smooth_point_exists() {
        let (igusa, _) = build();
        let p = smooth_rational_point_on_b(&igusa, 3).unwrap();
        assert!(igusa.b_hat.eval(&p).is_zero());
        let grad: Vec<Rational> = (0..5)
            .map(|i| igusa.b_hat.derivative(i).eval(&p))
            .collect();
        assert!(grad.iter().any(|g| !g.is_zero()));
    }

    #[test]
    fn dual_pullback() {
        assert!(dual_pullback_membership(&Budget::default()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(dual_pullback_spot_checks(5, &mut rng).unwrap());
    }
}
