//! Igusa pencils lambda a^2 + mu b: the 30-node singular locus of general
//! members, node ordinariness over quadratic extensions, the two
//! quadrics-through-points dimension certificates, and smoothness spot
//! checks along the contact surface {a = b = 0}.

use crate::groebner::{buchberger, Budget, MonomialOrder};
use crate::igusa::{
    eliminate_z6, lines_of_plane_section, power_sum, segre_planes, IgusaQuartic, SingularLine,
};
use crate::matrix::Matrix;
use crate::poly::{Monomial, MultiPoly};
use crate::projective::{projectively_equal, singularity_test};
use crate::quadext::{quadratic_roots, QuadExt, Scalar};
use crate::rational::{rat, Rational};
use crate::ring::Ring;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// The pencil spanned by the Igusa quartic b and the double quadric a^2.
#[derive(Clone, Debug)]
pub struct IgusaPencil {
    /// The quadric a in z1..z6.
    pub quadric: MultiPoly,
    /// a restricted to the chart (z6 eliminated).
    pub quadric_hat: MultiPoly,
}

impl IgusaPencil {
    pub fn new(quadric: MultiPoly) -> Self {
        IgusaPencil {
            quadric_hat: eliminate_z6(&quadric),
            quadric,
        }
    }

    /// The chart equation of the member lambda a^2 + mu b.
    pub fn member_hat(&self, igusa: &IgusaQuartic, lambda: &Rational, mu: &Rational) -> MultiPoly {
        self.quadric_hat
            .mul(&self.quadric_hat)
            .scale(lambda)
            .add(&igusa.b_hat.scale(mu))
    }
}

/// One of the 30 singular points of a general member: two per singular
/// line, with coordinates in Q or Q(sqrt d).
#[derive(Clone, Debug)]
pub struct PencilNode {
    pub line_index: usize,
    /// Field discriminant: 0 for a rational node.
    pub d: BigInt,
    /// Six exact coordinates on {s1 = 0}.
    pub coords: Vec<QuadExt>,
}

#[derive(Clone, Debug)]
pub struct NodeSet30 {
    pub nodes: Vec<PencilNode>,
}

/// Serialization form of the node set: line label, field discriminant and
/// coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct NodeWitness {
    pub line: String,
    pub d: String,
    pub coords: Vec<String>,
}

impl NodeSet30 {
    pub fn witnesses(&self, lines: &[SingularLine]) -> Vec<NodeWitness> {
        self.nodes
            .iter()
            .map(|n| NodeWitness {
                line: lines[n.line_index].label(),
                d: n.d.to_string(),
                coords: n.coords.iter().map(|c| c.to_string()).collect(),
            })
            .collect()
    }
}

/// Intersects {a = 0} with each of the 15 singular lines: the restriction
/// must be a nonzero binary quadratic with nonzero discriminant (else the
/// caller resamples a), and the 30 resulting points must be distinct.
pub fn sing_points(pencil: &IgusaPencil, lines: &[SingularLine]) -> Result<NodeSet30> {
    let uv = Ring::new(vec!["u", "v"]);
    let mut nodes = Vec::with_capacity(30);
    for (ix, line) in lines.iter().enumerate() {
        let rows = line.line.basis_rows();
        let images: Vec<MultiPoly> = (0..6)
            .map(|j| {
                MultiPoly::var(&uv, 0)
                    .scale(&rows[0][j])
                    .add(&MultiPoly::var(&uv, 1).scale(&rows[1][j]))
            })
            .collect();
        let restricted = pencil.quadric.substitute_linear(&images)?;
        let alpha = restricted.coefficient(&Monomial(vec![2, 0]));
        let beta = restricted.coefficient(&Monomial(vec![1, 1]));
        let gamma = restricted.coefficient(&Monomial(vec![0, 2]));
        if restricted.is_zero() {
            return Err(Error::Degenerate(format!(
                "a vanishes identically on line {}",
                line.label()
            )));
        }
        let disc = &beta * &beta - rat(4) * &alpha * &gamma;
        if disc.is_zero() {
            return Err(Error::Degenerate(format!(
                "a is tangent to line {}",
                line.label()
            )));
        }
        // projective roots (u : v) of alpha u^2 + beta u v + gamma v^2
        let mut uv_roots: Vec<(QuadExt, QuadExt)> = Vec::new();
        if alpha.is_zero() {
            // v (beta u + gamma v): roots (1:0) and (-gamma : beta)
            uv_roots.push((QuadExt::one(), QuadExt::zero()));
            uv_roots.push((
                QuadExt::rational(-gamma.clone()),
                QuadExt::rational(beta.clone()),
            ));
        } else {
            let (r1, r2) = quadratic_roots(&alpha, &beta, &gamma)?
                .ok_or_else(|| Error::Degenerate("degenerate binary quadratic".into()))?;
            uv_roots.push((r1, QuadExt::one()));
            uv_roots.push((r2, QuadExt::one()));
        }
        for (u, v) in uv_roots {
            let coords: Vec<QuadExt> = (0..6)
                .map(|j| {
                    u.mul_ref(&QuadExt::from_rational(&rows[0][j]))
                        .add_ref(&v.mul_ref(&QuadExt::from_rational(&rows[1][j])))
                })
                .collect();
            let d = coords
                .iter()
                .map(|c| c.d.clone())
                .find(|d| !d.is_zero())
                .unwrap_or_else(BigInt::zero);
            nodes.push(PencilNode {
                line_index: ix,
                d,
                coords,
            });
        }
    }
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            if projectively_equal(&nodes[i].coords, &nodes[j].coords) {
                return Err(Error::Degenerate(
                    "two of the 30 singular points coincide".into(),
                ));
            }
        }
    }
    Ok(NodeSet30 { nodes })
}

/// Certifies one node of the member lambda a^2 + mu b: the chart gradient
/// vanishes and the Hessian of the local quadratic part has rank 4.
pub fn node_certificate(
    pencil: &IgusaPencil,
    igusa: &IgusaQuartic,
    lambda: &Rational,
    mu: &Rational,
    node: &PencilNode,
) -> Result<bool> {
    if mu.is_zero() {
        return Err(Error::Degenerate(
            "the double quadric member is singular along a surface; node test \
             does not apply"
                .into(),
        ));
    }
    if lambda.is_zero() {
        return Err(Error::Degenerate(
            "the member is the quartic itself, singular along whole lines; \
             node test does not apply"
                .into(),
        ));
    }
    let member = pencil.member_hat(igusa, lambda, mu);
    let chart: Vec<QuadExt> = node.coords[..5].to_vec();
    if chart.iter().all(|c| c.is_zero()) {
        return Err(Error::Degenerate("node at the chart vertex".into()));
    }
    let t = singularity_test(&member, &chart)?;
    Ok(t.singular && t.node_rank == Some(4))
}

/// The 15 quadratic monomials of the chart P^4.
fn quadric_monomials() -> Vec<Monomial> {
    let mut out = Vec::with_capacity(15);
    for i in 0..5 {
        for j in i..5 {
            let mut e = vec![0u16; 5];
            e[i] += 1;
            e[j] += 1;
            out.push(Monomial(e));
        }
    }
    out
}

/// Dimension of the space of quadrics of the chart P^4 vanishing at the
/// given exact points (each quadratic-extension point imposes its rational
/// and irrational parts separately).
pub fn quadrics_through_points(points: &[Vec<QuadExt>]) -> usize {
    let z5 = Ring::z5();
    let monomials = quadric_monomials();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for p in points {
        let chart: Vec<QuadExt> = p[..5].to_vec();
        let mut rational_row = Vec::with_capacity(15);
        let mut surd_row = Vec::with_capacity(15);
        let mut has_surd = false;
        for m in &monomials {
            let f = MultiPoly::from_terms(&z5, [(m.clone(), Rational::one())]);
            let v = f.eval(&chart);
            if !v.b.is_zero() {
                has_surd = true;
            }
            rational_row.push(v.a);
            surd_row.push(v.b);
        }
        rows.push(rational_row);
        if has_surd {
            rows.push(surd_row);
        }
    }
    Matrix::from_rows(rows).kernel().len()
}

/// Dimension of the space of chart quadrics vanishing on all 15 singular
/// lines (three coefficient conditions per line).
pub fn quadrics_through_sing_b(lines: &[SingularLine]) -> Result<usize> {
    let z5 = Ring::z5();
    let uv = Ring::new(vec!["u", "v"]);
    let monomials = quadric_monomials();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for line in lines {
        let images = line.line_chart.parametrization(&uv);
        let restrictions: Vec<MultiPoly> = monomials
            .iter()
            .map(|m| {
                MultiPoly::from_terms(&z5, [(m.clone(), Rational::one())])
                    .substitute_linear(&images)
                    .expect("restriction")
            })
            .collect();
        for bm in [
            Monomial(vec![2, 0]),
            Monomial(vec![1, 1]),
            Monomial(vec![0, 2]),
        ] {
            rows.push(restrictions.iter().map(|r| r.coefficient(&bm)).collect());
        }
    }
    Ok(Matrix::from_rows(rows).kernel().len())
}

/// The coefficient vector of a chart quadric against the monomial basis.
pub fn quadric_coefficient_vector(q: &MultiPoly) -> Vec<Rational> {
    quadric_monomials()
        .iter()
        .map(|m| q.coefficient(m))
        .collect()
}

/// Checks that the kernel of the node conditions is spanned by a itself.
pub fn node_quadric_space_is_spanned_by_a(
    pencil: &IgusaPencil,
    nodes: &NodeSet30,
) -> Result<bool> {
    let z5 = Ring::z5();
    let monomials = quadric_monomials();
    let coords: Vec<Vec<QuadExt>> = nodes.nodes.iter().map(|n| n.coords.clone()).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for p in &coords {
        let chart: Vec<QuadExt> = p[..5].to_vec();
        let mut rational_row = Vec::with_capacity(15);
        let mut surd_row = Vec::with_capacity(15);
        for m in &monomials {
            let f = MultiPoly::from_terms(&z5, [(m.clone(), Rational::one())]);
            let v = f.eval(&chart);
            rational_row.push(v.a);
            surd_row.push(v.b);
        }
        rows.push(rational_row);
        if surd_row.iter().any(|c| !c.is_zero()) {
            rows.push(surd_row);
        }
    }
    let kernel = Matrix::from_rows(rows).kernel();
    if kernel.len() != 1 {
        return Ok(false);
    }
    let a_vec = quadric_coefficient_vector(&pencil.quadric_hat);
    Ok(crate::projective::projectively_equal(&kernel[0], &a_vec))
}

/// Draws a small-integer quadric until every line restriction has nonzero
/// discriminant, the 30 points are distinct, and the quadrics through them
/// form exactly the pencil of a itself.
pub fn sample_pencil(
    lines: &[SingularLine],
    rng: &mut ChaCha8Rng,
) -> Result<(IgusaPencil, NodeSet30)> {
    let z6 = Ring::z6();
    for _ in 0..64 {
        let mut a = MultiPoly::zero(&z6);
        for i in 0..6 {
            for j in i..6 {
                let c = rng.gen_range(-9..=9i64);
                if c != 0 {
                    let mut e = vec![0u16; 6];
                    e[i] += 1;
                    e[j] += 1;
                    a.add_term(Monomial(e), rat(c));
                }
            }
        }
        if a.is_zero() {
            continue;
        }
        let pencil = IgusaPencil::new(a);
        if pencil.quadric_hat.is_zero() {
            continue;
        }
        let nodes = match sing_points(&pencil, lines) {
            Ok(n) => n,
            Err(_) => continue,
        };
        if !node_quadric_space_is_spanned_by_a(&pencil, &nodes)? {
            continue;
        }
        return Ok((pencil, nodes));
    }
    Err(Error::ResamplingExhausted(64))
}

/// Exact points of the contact surface {a = b = 0}, obtained on the
/// rational lines that the Segre planes cut on B; every such point lies on
/// every member of the pencil.
pub fn contact_surface_points(
    pencil: &IgusaPencil,
    igusa: &IgusaQuartic,
    want: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<QuadExt>>> {
    let planes = segre_planes();
    let uv = Ring::new(vec!["u", "v"]);
    let mut out: Vec<Vec<QuadExt>> = Vec::new();
    for _ in 0..(want * 8) {
        if out.len() >= want {
            break;
        }
        let plane = &planes[rng.gen_range(0..planes.len())];
        let lines = lines_of_plane_section(igusa, plane)?;
        let line = &lines[rng.gen_range(0..4)];
        let rows = line.basis_rows();
        let images = line.parametrization(&uv);
        let restricted = pencil.quadric.substitute_linear(&images)?;
        if restricted.is_zero() {
            continue;
        }
        let alpha = restricted.coefficient(&Monomial(vec![2, 0]));
        let beta = restricted.coefficient(&Monomial(vec![1, 1]));
        let gamma = restricted.coefficient(&Monomial(vec![0, 2]));
        let mut uv_roots: Vec<(QuadExt, QuadExt)> = Vec::new();
        if alpha.is_zero() {
            if beta.is_zero() {
                continue;
            }
            uv_roots.push((QuadExt::one(), QuadExt::zero()));
            uv_roots.push((
                QuadExt::rational(-gamma.clone()),
                QuadExt::rational(beta.clone()),
            ));
        } else if let Some((r1, r2)) = quadratic_roots(&alpha, &beta, &gamma)? {
            uv_roots.push((r1, QuadExt::one()));
            uv_roots.push((r2, QuadExt::one()));
        } else {
            continue;
        }
        for (u, v) in uv_roots {
            if out.len() >= want {
                break;
            }
            let coords: Vec<QuadExt> = (0..6)
                .map(|j| {
                    u.mul_ref(&QuadExt::from_rational(&rows[0][j]))
                        .add_ref(&v.mul_ref(&QuadExt::from_rational(&rows[1][j])))
                })
                .collect();
            if coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            if out.iter().any(|p| projectively_equal(p, &coords)) {
                continue;
            }
            // exactness: on the quadric and on B
            if !pencil.quadric.eval(&coords).is_zero() || !igusa.b.eval(&coords).is_zero() {
                return Err(Error::Degenerate("contact point drifted off the surface".into()));
            }
            out.push(coords);
        }
    }
    if out.len() < want {
        return Err(Error::ResamplingExhausted(8 * want as u32));
    }
    Ok(out)
}

/// Smoothness spot checks: `n` exact points of the member away from the 30
/// nodes, each with a nonvanishing gradient. The points are sampled on the
/// contact surface, which is exactly where a Bertini argument allows
/// singularities, so the spot check probes the critical locus.
pub fn smoothness_sample(
    pencil: &IgusaPencil,
    igusa: &IgusaQuartic,
    lambda: &Rational,
    mu: &Rational,
    nodes: &NodeSet30,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<bool> {
    if mu.is_zero() {
        return Err(Error::Degenerate(
            "double quadric member excluded from smoothness checks".into(),
        ));
    }
    let member = pencil.member_hat(igusa, lambda, mu);
    let pts = contact_surface_points(pencil, igusa, n, rng)?;
    for p in &pts {
        if nodes.nodes.iter().any(|nd| projectively_equal(&nd.coords, p)) {
            continue;
        }
        let chart: Vec<QuadExt> = p[..5].to_vec();
        if chart.iter().all(|c| c.is_zero()) {
            continue;
        }
        if !member.eval(&chart).is_zero() {
            return Err(Error::Degenerate("sample point is off the member".into()));
        }
        let grad_zero = (0..5).all(|v| member.derivative(v).eval(&chart).is_zero());
        if grad_zero {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Members of the invariant pencil {s1 = lambda s2^2 + mu s4 = 0}: the
/// Jacobian ideal in the chart must have affine cone dimension <= 1, i.e.
/// isolated projective singularities.
pub fn invariant_pencil_check(lambda: &Rational, mu: &Rational, budget: &Budget) -> Result<bool> {
    let z6 = Ring::z6();
    let s2 = power_sum(&z6, 2);
    let s4 = power_sum(&z6, 4);
    let member = s2.mul(&s2).scale(lambda).add(&s4.scale(mu));
    let member_hat = eliminate_z6(&member);
    let jac: Vec<MultiPoly> = (0..5).map(|v| member_hat.derivative(v)).collect();
    let gb = buchberger(&jac, MonomialOrder::GrevLex, budget)?;
    Ok(gb.dimension() <= 1)
}

/// Slow full certificate: the Jacobian ideal of the member itself has cone
/// dimension <= 1 (so Sing X really is a finite set of points).
pub fn member_jacobian_isolated(
    pencil: &IgusaPencil,
    igusa: &IgusaQuartic,
    lambda: &Rational,
    mu: &Rational,
    budget: &Budget,
) -> Result<bool> {
    let member = pencil.member_hat(igusa, lambda, mu);
    let jac: Vec<MultiPoly> = (0..5).map(|v| member.derivative(v)).collect();
    let gb = buchberger(&jac, MonomialOrder::GrevLex, budget)?;
    Ok(gb.dimension() <= 1)
}

/// Galois stability: the two nodes on a line with irrational coordinates
/// are swapped by conjugation.
pub fn nodes_galois_stable(nodes: &NodeSet30) -> bool {
    for i in 0..nodes.nodes.len() {
        let n = &nodes.nodes[i];
        if n.d.is_zero() {
            continue;
        }
        let conj: Vec<QuadExt> = n.coords.iter().map(|c| c.conjugate()).collect();
        let partner = nodes
            .nodes
            .iter()
            .enumerate()
            .find(|(j, m)| *j != i && m.line_index == n.line_index)
            .map(|(_, m)| m);
        match partner {
            Some(m) => {
                if !projectively_equal(&m.coords, &conj) {
                    return false;
                }
            }
            None => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::igusa::{build, lift_chart_point, singular_lines};
    use crate::rational::ratio;
    use rand::SeedableRng;

    #[test]
    fn s2_restriction_has_irrational_roots() {
        // a = s2 on the line (u, u, v, v, w, w), w = -u-v restricts to
        // 2(u^2 + v^2 + w^2) = 4(u^2 + uv + v^2), discriminant -48 < 0
        let (igusa, _) = build();
        let lines = singular_lines(&igusa).unwrap();
        let z6 = Ring::z6();
        let pencil = IgusaPencil::new(power_sum(&z6, 2));
        let first = lines
            .iter()
            .position(|l| l.partition == [[0, 1], [2, 3], [4, 5]])
            .unwrap();
        let nodes = sing_points(&pencil, &lines).unwrap();
        let on_line: Vec<&PencilNode> = nodes
            .nodes
            .iter()
            .filter(|n| n.line_index == first)
            .collect();
        assert_eq!(on_line.len(), 2);
        for n in on_line {
            assert_eq!(n.d, BigInt::from(-3));
        }
    }

    #[test]
    fn thirty_nodes_on_generic_quadric() {
        let (igusa, _) = build();
        let lines = singular_lines(&igusa).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let (pencil, nodes) = sample_pencil(&lines, &mut rng).unwrap();
        assert_eq!(nodes.nodes.len(), 30);
        assert!(nodes_galois_stable(&nodes));
        // every node lies on both a and b exactly
        for n in &nodes.nodes {
            assert!(pencil.quadric.eval(&n.coords).is_zero());
            assert!(igusa.b.eval(&n.coords).is_zero());
        }
    }

    #[test]
    fn node_certificates_at_generic_member() {
        let (igusa, _) = build();
        let lines = singular_lines(&igusa).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let (pencil, nodes) = sample_pencil(&lines, &mut rng).unwrap();
        for node in &nodes.nodes {
            assert!(node_certificate(&pencil, &igusa, &rat(1), &rat(1), node).unwrap());
        }
        // the certified node set does not depend on the member
        for node in nodes.nodes.iter().take(4) {
            assert!(node_certificate(&pencil, &igusa, &rat(3), &rat(-2), node).unwrap());
        }
        // the two degenerate members are guarded: the double quadric and
        // the quartic itself
        assert!(node_certificate(&pencil, &igusa, &rat(1), &rat(0), &nodes.nodes[0]).is_err());
        assert!(node_certificate(&pencil, &igusa, &rat(0), &rat(1), &nodes.nodes[0]).is_err());
    }

    #[test]
    fn quadric_space_dimensions() {
        let (igusa, _) = build();
        let lines = singular_lines(&igusa).unwrap();
        assert_eq!(quadrics_through_sing_b(&lines).unwrap(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let (pencil, nodes) = sample_pencil(&lines, &mut rng).unwrap();
        assert!(node_quadric_space_is_spanned_by_a(&pencil, &nodes).unwrap());
        // negative control: 30 random rational points impose independent
        // conditions
        let mut pts: Vec<Vec<QuadExt>> = Vec::new();
        while pts.len() < 30 {
            let coords: Vec<Rational> =
                (0..5).map(|_| rat(rng.gen_range(-9..=9i64))).collect();
            if coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            let p6 = lift_chart_point(&coords);
            pts.push(p6.iter().map(QuadExt::from_rational).collect());
        }
        assert_eq!(quadrics_through_points(&pts), 0);
    }

    #[test]
    fn smoothness_spot_checks() {
        let (igusa, _) = build();
        let lines = singular_lines(&igusa).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let (pencil, nodes) = sample_pencil(&lines, &mut rng).unwrap();
        assert!(smoothness_sample(
            &pencil,
            &igusa,
            &rat(1),
            &rat(1),
            &nodes,
            25,
            &mut rng
        )
        .unwrap());
    }

    #[test]
    fn invariant_pencil_members() {
        // a generic member has isolated singularities
        assert!(invariant_pencil_check(&rat(1), &rat(1), &Budget::default()).unwrap());
        // the Igusa member (lambda : mu) = (-1/4 : 1) is singular along the
        // 15 lines: dimension 2, so the check fails
        assert!(!invariant_pencil_check(&ratio(-1, 4), &rat(1), &Budget::default()).unwrap());
    }
}
