//! Buchberger-based Groebner engine over Q: reduced bases, ideal membership,
//! Krull dimension, zero-dimensional solution counting and elimination.
//!
//! Pair selection uses the normal strategy, pair elimination the
//! Gebauer-Moller criteria, reduction is always full. Every entry point
//! carries an explicit resource budget and fails loudly rather than looping.

use crate::poly::{cmp_grevlex, Monomial, MultiPoly};
use crate::rational::{rat, Rational};
use crate::ring::Ring;
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::Instant;

/// Monomial orders: grevlex, lex, and the block elimination order that
/// compares the first block (grevlex) before the rest (grevlex).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// Eliminates the listed variables: any monomial containing one of them
    /// is larger than any monomial in the remaining variables.
    Block(Vec<usize>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GrevLex => cmp_grevlex(a, b),
            MonomialOrder::Lex => {
                for i in 0..a.0.len() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block(first) => {
                let da = a.degree_in(first);
                let db = b.degree_in(first);
                if da != db {
                    return da.cmp(&db);
                }
                // grevlex tie-break restricted to the first block, then the rest
                for &i in first.iter().rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                let rest: Vec<usize> =
                    (0..a.0.len()).filter(|i| !first.contains(i)).collect();
                let da = a.degree_in(&rest);
                let db = b.degree_in(&rest);
                if da != db {
                    return da.cmp(&db);
                }
                for &i in rest.iter().rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Resource limits for a Buchberger run.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_spairs: usize,
    pub max_degree: u32,
    pub max_seconds: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_spairs: 200_000,
            max_degree: 60,
            max_seconds: Some(600),
        }
    }
}

impl Budget {
    pub fn with_seconds(secs: u64) -> Self {
        Budget {
            max_seconds: Some(secs),
            ..Budget::default()
        }
    }
}

/// Internal representation: terms sorted descending in the active order.
#[derive(Clone, Debug)]
struct OrderedPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl OrderedPoly {
    fn from_multipoly(p: &MultiPoly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        OrderedPoly { terms }
    }

    fn to_multipoly(&self, ring: &Arc<Ring>) -> MultiPoly {
        MultiPoly::from_terms(ring, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    /// Scales to integer coprime coefficients, positive leading coefficient.
    fn primitive(&mut self) {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.terms.is_empty() {
            return;
        }
        let mut denom_lcm = BigInt::one();
        for (_, c) in &self.terms {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            numer_gcd = numer_gcd.gcd((c * Rational::from_integer(denom_lcm.clone())).numer());
        }
        let mut f = Rational::new(denom_lcm, numer_gcd);
        if (self.lc() * &f).is_negative() {
            f = -f;
        }
        for (_, c) in &mut self.terms {
            *c = &*c * &f;
        }
    }

    fn monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let lc = self.lc().clone();
        for (_, c) in &mut self.terms {
            *c = &*c / &lc;
        }
    }
}

/// `a - coef * m * b`, keeping the order invariant.
fn subtract_multiple(
    a: &OrderedPoly,
    coef: &Rational,
    m: &Monomial,
    b: &OrderedPoly,
    order: &MonomialOrder,
) -> OrderedPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.terms.len() && j < b.terms.len() {
        let bm = b.terms[j].0.mul(m);
        match order.cmp(&a.terms[i].0, &bm) {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, -(&b.terms[j].1 * coef)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a.terms[i].1 - &b.terms[j].1 * coef;
                if !c.is_zero() {
                    out.push((a.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    while i < a.terms.len() {
        out.push(a.terms[i].clone());
        i += 1;
    }
    while j < b.terms.len() {
        let bm = b.terms[j].0.mul(m);
        out.push((bm, -(&b.terms[j].1 * coef)));
        j += 1;
    }
    OrderedPoly { terms: out }
}

/// Full normal form of `p` modulo `basis`: every term is reduced.
fn normal_form(p: &OrderedPoly, basis: &[OrderedPoly], order: &MonomialOrder) -> OrderedPoly {
    let mut work = p.clone();
    let mut out: Vec<(Monomial, Rational)> = Vec::new();
    'outer: while !work.is_zero() {
        let (lm, lc) = (work.terms[0].0.clone(), work.terms[0].1.clone());
        for g in basis {
            if g.is_zero() {
                continue;
            }
            if g.lm().divides(&lm) {
                let m = lm.div(g.lm());
                let coef = &lc / g.lc();
                work = subtract_multiple(&work, &coef, &m, g, order);
                continue 'outer;
            }
        }
        out.push((lm, lc));
        work.terms.remove(0);
    }
    OrderedPoly { terms: out }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer-Moller update: install pairs of `t` (index of the newest basis
/// element) against all previous elements, pruning by the B, M and F
/// criteria, and prune old pairs by the new leading monomial.
fn update_pairs(
    pairs: &mut Vec<Pair>,
    basis: &[OrderedPoly],
    t: usize,
    order: &MonomialOrder,
) {
    let lt = basis[t].lm().clone();
    let mut fresh: Vec<Pair> = (0..t)
        .filter(|&i| !basis[i].is_zero())
        .map(|i| Pair {
            i,
            j: t,
            lcm: basis[i].lm().lcm(&lt),
        })
        .collect();

    // M criterion: drop (i, t) whenever some (j, t) has lcm strictly dividing.
    let mut keep: Vec<bool> = vec![true; fresh.len()];
    for a in 0..fresh.len() {
        for b in 0..fresh.len() {
            if a != b
                && keep[b]
                && fresh[b].lcm.divides(&fresh[a].lcm)
                && fresh[b].lcm != fresh[a].lcm
            {
                keep[a] = false;
                break;
            }
        }
    }
    // F criterion: among equal lcms keep a single representative.
    for a in 0..fresh.len() {
        if !keep[a] {
            continue;
        }
        for b in (a + 1)..fresh.len() {
            if keep[b] && fresh[a].lcm == fresh[b].lcm {
                keep[b] = false;
            }
        }
    }
    // B (Buchberger coprimality) criterion.
    for (a, pair) in fresh.iter().enumerate() {
        if keep[a] && basis[pair.i].lm().is_coprime_with(&lt) {
            keep[a] = false;
        }
    }

    // Prune the old pair list by the new element.
    pairs.retain(|p| {
        !(lt.divides(&p.lcm)
            && basis[p.i].lm().lcm(&lt) != p.lcm
            && basis[p.j].lm().lcm(&lt) != p.lcm)
    });

    let mut idx = 0;
    fresh.retain(|_| {
        let k = keep[idx];
        idx += 1;
        k
    });
    pairs.extend(fresh);
    // Normal selection strategy: smallest lcm (by the order) processed first;
    // keep the list sorted descending so pop() takes the smallest.
    pairs.sort_by(|a, b| order.cmp(&b.lcm, &a.lcm));
}

/// A reduced Groebner basis together with its order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    gens: Vec<MultiPoly>,
    lms: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.lms
    }

    /// Normal form of `p` modulo the basis.
    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        let internal: Vec<OrderedPoly> = self
            .gens
            .iter()
            .map(|g| OrderedPoly::from_multipoly(g, &self.order))
            .collect();
        let w = OrderedPoly::from_multipoly(p, &self.order);
        normal_form(&w, &internal, &self.order).to_multipoly(&self.ring)
    }

    /// Ideal membership: true iff the normal form vanishes.
    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].total_degree() == 0 && !self.gens[0].is_zero()
    }

    /// Krull dimension of the affine zero set, via maximal subsets of
    /// variables independent modulo the leading-term ideal; -1 for the unit
    /// ideal.
    pub fn dimension(&self) -> i64 {
        if self.is_unit_ideal() {
            return -1;
        }
        let n = self.ring.num_vars();
        let supports: Vec<Vec<usize>> = self.lms.iter().map(|m| m.support()).collect();
        let mut best: i64 = -1;
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let independent = supports
                .iter()
                .all(|sup| !sup.iter().all(|v| subset.contains(v)));
            if independent {
                best = best.max(subset.len() as i64);
            }
        }
        // The empty set is independent unless 1 is in the ideal.
        best
    }

    /// Number of standard monomials: the dimension of the quotient algebra,
    /// i.e. the number of solutions counted with multiplicity for a
    /// zero-dimensional ideal.
    pub fn quotient_dimension(&self) -> Result<u64> {
        if self.is_unit_ideal() {
            return Ok(0);
        }
        let n = self.ring.num_vars();
        // Zero-dimensionality: some pure power of every variable leads.
        let mut bound = vec![0u32; n];
        for v in 0..n {
            let pure = self
                .lms
                .iter()
                .filter(|m| m.support() == [v])
                .map(|m| m.0[v] as u32)
                .min();
            match pure {
                Some(d) => bound[v] = d,
                None => return Err(Error::NotZeroDimensional),
            }
        }
        // Count monomials under the staircase by depth-first enumeration.
        fn count(
            v: usize,
            current: &mut Vec<u16>,
            bound: &[u32],
            lms: &[Monomial],
        ) -> u64 {
            if v == bound.len() {
                let m = Monomial(current.clone());
                return if lms.iter().any(|l| l.divides(&m)) { 0 } else { 1 };
            }
            let mut total = 0;
            for e in 0..bound[v] {
                current.push(e as u16);
                total += count(v + 1, current, bound, lms);
                current.pop();
            }
            total
        }
        let mut cur = Vec::with_capacity(n);
        Ok(count(0, &mut cur, &bound, &self.lms))
    }
}

/// Runs Buchberger and returns the reduced Groebner basis.
pub fn buchberger(
    gens: &[MultiPoly],
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    let nonzero: Vec<&MultiPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .ok_or_else(|| Error::Degenerate("empty generator list".into()))?;
    for g in gens {
        if g.ring() != &ring {
            return Err(Error::RingMismatch("generators".into()));
        }
    }
    if nonzero.is_empty() {
        return Ok(GroebnerBasis {
            ring,
            order,
            gens: vec![],
            lms: vec![],
        });
    }
    let started = Instant::now();
    let mut basis: Vec<OrderedPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for g in nonzero {
        let mut p = OrderedPoly::from_multipoly(g, &order);
        p = normal_form(&p, &basis, &order);
        if p.is_zero() {
            continue;
        }
        p.primitive();
        basis.push(p);
        update_pairs(&mut pairs, &basis, basis.len() - 1, &order);
    }

    let mut processed = 0usize;
    while let Some(pair) = pairs.pop() {
        processed += 1;
        if processed > budget.max_spairs {
            return Err(Error::Budget(format!(
                "S-pair limit {} exceeded",
                budget.max_spairs
            )));
        }
        if pair.lcm.total_degree() > budget.max_degree {
            return Err(Error::Budget(format!(
                "degree limit {} exceeded by S-pair of degree {}",
                budget.max_degree,
                pair.lcm.total_degree()
            )));
        }
        if let Some(limit) = budget.max_seconds {
            if started.elapsed().as_secs() >= limit {
                return Err(Error::Budget(format!("time limit {limit}s exceeded")));
            }
        }
        let (f, g) = (&basis[pair.i], &basis[pair.j]);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        // s-polynomial
        let mf = pair.lcm.div(f.lm());
        let mg = pair.lcm.div(g.lm());
        let mut s = {
            let scaled_f: Vec<(Monomial, Rational)> = f
                .terms
                .iter()
                .map(|(m, c)| (m.mul(&mf), c / f.lc()))
                .collect();
            let fp = OrderedPoly { terms: scaled_f };
            subtract_multiple(&fp, &(Rational::one() / g.lc()), &mg, g, &order)
        };
        s = normal_form(&s, &basis, &order);
        if s.is_zero() {
            continue;
        }
        s.primitive();
        basis.push(s);
        update_pairs(&mut pairs, &basis, basis.len() - 1, &order);
    }

    // Minimalize: drop any element whose leading monomial is divisible by
    // another one, then inter-reduce fully and normalize monic.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j
                && keep[i]
                && keep[j]
                && basis[j].lm().divides(basis[i].lm())
                && (basis[j].lm() != basis[i].lm() || j < i)
            {
                keep[i] = false;
            }
        }
    }
    let minimal: Vec<OrderedPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    let mut reduced: Vec<OrderedPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<OrderedPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, p)| (j != i).then(|| p.clone()))
            .collect();
        let mut r = normal_form(&minimal[i], &others, &order);
        r.monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let lms: Vec<Monomial> = reduced.iter().map(|p| p.lm().clone()).collect();
    let gens: Vec<MultiPoly> = reduced.iter().map(|p| p.to_multipoly(&ring)).collect();
    Ok(GroebnerBasis {
        ring,
        order,
        gens,
        lms,
    })
}

fn random_chart_form(ring: &Arc<Ring>, rng: &mut ChaCha8Rng) -> MultiPoly {
    use rand::Rng;
    loop {
        let coeffs: Vec<i64> = (0..ring.num_vars()).map(|_| rng.gen_range(-4..=4)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        return (0..ring.num_vars()).fold(MultiPoly::zero(ring), |acc, i| {
            acc.add(&MultiPoly::var(ring, i).scale(&rat(coeffs[i])))
        });
    }
}

/// Counts solutions (with multiplicity) of a homogeneous zero-dimensional
/// system by dehomogenizing along a random hyperplane. A chart hyperplane
/// through a solution undercounts, so charts are drawn until the maximal
/// count is confirmed by a second independent dehomogenization.
pub fn projective_count(
    gens: &[MultiPoly],
    budget: &Budget,
    rng: &mut ChaCha8Rng,
) -> Result<u64> {
    let ring = gens[0].ring().clone();
    let mut counts: Vec<u64> = Vec::new();
    for _ in 0..8 {
        let chart = random_chart_form(&ring, rng).sub(&MultiPoly::one(&ring));
        let mut system = gens.to_vec();
        system.push(chart);
        let gb = buchberger(&system, MonomialOrder::GrevLex, budget)?;
        counts.push(gb.quotient_dimension()?);
        if counts.len() >= 2 {
            let max = *counts.iter().max().unwrap();
            if counts.iter().filter(|&&c| c == max).count() >= 2 {
                return Ok(max);
            }
        }
    }
    Err(Error::Degenerate(format!(
        "projective counts never stabilized: {counts:?}"
    )))
}

/// Generators of the elimination ideal `I ∩ Q[vars not in `eliminate`]`,
/// computed with the block order putting the eliminated variables first.
pub fn eliminate(
    gens: &[MultiPoly],
    eliminate_vars: &[usize],
    budget: &Budget,
) -> Result<Vec<MultiPoly>> {
    if eliminate_vars.is_empty() {
        return Ok(gens.to_vec());
    }
    let gb = buchberger(
        gens,
        MonomialOrder::Block(eliminate_vars.to_vec()),
        budget,
    )?;
    Ok(gb
        .generators()
        .iter()
        .filter(|g| {
            g.support()
                .iter()
                .all(|v| !eliminate_vars.contains(v))
        })
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::rat;

    fn gb(texts: &[&str], vars: Vec<&str>, order: MonomialOrder) -> GroebnerBasis {
        let ring = Ring::new(vars);
        let gens: Vec<MultiPoly> = texts.iter().map(|t| parse_poly(&ring, t).unwrap()).collect();
        buchberger(&gens, order, &Budget::default()).unwrap()
    }

    #[test]
    fn single_generator() {
        let basis = gb(&["x"], vec!["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(basis.generators().len(), 1);
        assert_eq!(basis.generators()[0].to_string(), "x");
    }

    #[test]
    fn lex_example() {
        // {x^2 - 1, y - x} with lex y > x reduces to {y - x, x^2 - 1}
        let ring = Ring::new(vec!["y", "x"]);
        let g1 = parse_poly(&ring, "x^2 - 1").unwrap();
        let g2 = parse_poly(&ring, "y - x").unwrap();
        let basis = buchberger(&[g1, g2], MonomialOrder::Lex, &Budget::default()).unwrap();
        let strs: Vec<String> = basis.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(strs.len(), 2);
        assert!(strs.contains(&"x^2 - 1".to_string()));
        assert!(strs.contains(&"y - x".to_string()));
    }

    #[test]
    fn quotient_dimension_two_points() {
        // {xy - 1, x^2 - 1}: solutions (1,1), (-1,-1)
        let basis = gb(&["x*y - 1", "x^2 - 1"], vec!["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(basis.quotient_dimension().unwrap(), 2);
    }

    #[test]
    fn quotient_dimension_double_point() {
        let basis = gb(&["x^2", "y"], vec!["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(basis.quotient_dimension().unwrap(), 2);
        let basis = gb(&["x^2 - 1"], vec!["x"], MonomialOrder::GrevLex);
        assert_eq!(basis.quotient_dimension().unwrap(), 2);
    }

    #[test]
    fn membership_examples() {
        let basis = gb(&["x"], vec!["x", "y"], MonomialOrder::GrevLex);
        let ring = basis.ring().clone();
        assert!(basis.contains(&parse_poly(&ring, "x^2 + x").unwrap()));
        let basis = gb(&["x", "y"], vec!["x", "y"], MonomialOrder::GrevLex);
        assert!(!basis.contains(&parse_poly(&basis.ring().clone(), "1").unwrap()));
    }

    #[test]
    fn dimension_examples() {
        let basis = gb(&["x", "y"], vec!["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(basis.dimension(), 0);
        let basis = gb(&["x"], vec!["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(basis.dimension(), 1);
        let basis = gb(&["x - 1", "x"], vec!["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(basis.dimension(), -1);
        // principal ideal: dimension = nvars - 1
        let basis = gb(
            &["x^2*y + z^3 - 1"],
            vec!["x", "y", "z"],
            MonomialOrder::GrevLex,
        );
        assert_eq!(basis.dimension(), 2);
    }

    #[test]
    fn eliminate_examples() {
        let ring = Ring::new(vec!["x", "y"]);
        let g1 = parse_poly(&ring, "y - x").unwrap();
        let g2 = parse_poly(&ring, "x^2 - 1").unwrap();
        let out = eliminate(&[g1.clone(), g2.clone()], &[0], &Budget::default()).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].to_string(), "y^2 - 1");
        // eliminating nothing returns the ideal unchanged
        let same = eliminate(&[g1.clone(), g2.clone()], &[], &Budget::default()).unwrap();
        assert_eq!(same, vec![g1, g2]);
        // eliminating x from (x) leaves nothing
        let g = parse_poly(&ring, "x").unwrap();
        let out = eliminate(&[g], &[0], &Budget::default()).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn quotient_count_invariant_under_linear_change() {
        use rand::{Rng, SeedableRng};
        let ring = Ring::new(vec!["x", "y"]);
        let gens = vec![
            parse_poly(&ring, "x^2 + y^2 - 5").unwrap(),
            parse_poly(&ring, "x*y - 2").unwrap(),
        ];
        let reference = buchberger(&gens, MonomialOrder::GrevLex, &Budget::default())
            .unwrap()
            .quotient_dimension()
            .unwrap();
        assert_eq!(reference, 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let mut tried = 0;
        while tried < 5 {
            let m: Vec<i64> = (0..4).map(|_| rng.gen_range(-4..=4)).collect();
            if m[0] * m[3] - m[1] * m[2] == 0 {
                continue;
            }
            tried += 1;
            let x = MultiPoly::var(&ring, 0);
            let y = MultiPoly::var(&ring, 1);
            let images = vec![
                x.scale(&rat(m[0])).add(&y.scale(&rat(m[1]))),
                x.scale(&rat(m[2])).add(&y.scale(&rat(m[3]))),
            ];
            let changed: Vec<MultiPoly> = gens
                .iter()
                .map(|g| g.substitute_linear(&images).unwrap())
                .collect();
            let count = buchberger(&changed, MonomialOrder::GrevLex, &Budget::default())
                .unwrap()
                .quotient_dimension()
                .unwrap();
            assert_eq!(count, reference);
        }
    }

    #[test]
    fn reduced_basis_unique_under_shuffle() {
        let ring = Ring::new(vec!["x", "y", "z"]);
        let gens = vec![
            parse_poly(&ring, "x^2 + y*z - 2").unwrap(),
            parse_poly(&ring, "y^2 - x*z + 1").unwrap(),
            parse_poly(&ring, "x*y + z^2 - 1").unwrap(),
        ];
        let b1 = buchberger(&gens, MonomialOrder::GrevLex, &Budget::default()).unwrap();
        let shuffled = vec![gens[2].clone(), gens[0].clone(), gens[1].clone()];
        let b2 = buchberger(&shuffled, MonomialOrder::GrevLex, &Budget::default()).unwrap();
        assert_eq!(b1.generators(), b2.generators());
        // every original generator reduces to zero
        for g in &gens {
            assert!(b1.contains(g));
        }
    }

    #[test]
    fn budget_is_reported() {
        let ring = Ring::new(vec!["x", "y", "z"]);
        let gens = vec![
            parse_poly(&ring, "x^5 + y^4 + z^3 - 1").unwrap(),
            parse_poly(&ring, "x^3 + y^3 + z^2 - 1").unwrap(),
        ];
        let tiny = Budget {
            max_spairs: 1,
            max_degree: 3,
            max_seconds: None,
        };
        match buchberger(&gens, MonomialOrder::GrevLex, &tiny) {
            Err(Error::Budget(_)) => {}
            other => panic!("expected budget failure, got {other:?}"),
        }
    }

    #[test]
    fn counts_zero_for_unit_ideal() {
        let basis = gb(&["x", "x - 1"], vec!["x"], MonomialOrder::GrevLex);
        assert!(basis.is_unit_ideal());
        assert_eq!(basis.quotient_dimension().unwrap(), 0);
        assert_eq!(basis.dimension(), -1);
        let _ = rat(0);
    }
}
