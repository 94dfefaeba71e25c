//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by exponent vectors, so every
//! iteration order is deterministic. Display order is graded reverse
//! lexicographic, and the text format round-trips exactly:
//! `3*z1^2*z2 - 1/4*z3^4`.

use crate::quadext::Scalar;
use crate::rational::{exact_sqrt, Rational};
use crate::ring::Ring;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector; length always equals the ring's variable count.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.0[i] as u32).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Quotient of exponent vectors; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }
}

/// Graded reverse lexicographic comparison; the canonical display order.
pub fn cmp_grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    let (da, db) = (a.total_degree(), b.total_degree());
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.0.len()).rev() {
        match a.0[i].cmp(&b.0[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// Homogeneity of a polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Inhomogeneous,
}

/// A sparse polynomial over Q. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        let mut p = MultiPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.num_vars()), c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        MultiPoly::constant(ring, Rational::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.num_vars());
        let mut p = MultiPoly::zero(ring);
        p.terms
            .insert(Monomial::var(ring.num_vars(), i), Rational::one());
        p
    }

    /// Variable by name; panics when absent from the ring.
    pub fn named_var(ring: &Arc<Ring>, name: &str) -> Self {
        let i = ring
            .var_index(name)
            .unwrap_or_else(|| panic!("no variable {name} in {ring:?}"));
        MultiPoly::var(ring, i)
    }

    pub fn from_terms<I>(ring: &Arc<Ring>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = MultiPoly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.ring.num_vars());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring, other.ring
            )))
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other).expect("ring mismatch in add");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other).expect("ring mismatch in sub");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other).expect("ring mismatch in mul");
        let mut out = MultiPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one(&self.ring);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in_var(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v] as u32).max().unwrap_or(0)
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    /// Bidegree for bigraded rings; `None` if not bihomogeneous or no grading.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let split = self.ring.block_split()?;
        let first: Vec<usize> = (0..split).collect();
        let second: Vec<usize> = (split..self.ring.num_vars()).collect();
        let mut it = self.terms.keys();
        let m0 = it.next()?;
        let bd = (m0.degree_in(&first), m0.degree_in(&second));
        for m in it {
            if (m.degree_in(&first), m.degree_in(&second)) != bd {
                return None;
            }
        }
        Some(bd)
    }

    pub fn derivative(&self, v: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[v] = e - 1;
                out.add_term(m2, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.ring.num_vars()).map(|v| self.derivative(v)).collect()
    }

    /// Exact evaluation at a point with coordinates in any scalar field.
    pub fn eval<S: Scalar>(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.ring.num_vars());
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = S::from_rational(c);
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul_ref(&point[i]);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc
    }

    /// Substitutes `images[i]` (a polynomial in a common target ring) for
    /// variable `i`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.ring.num_vars() {
            return Err(Error::DimensionMismatch(format!(
                "substitution needs {} images, got {}",
                self.ring.num_vars(),
                images.len()
            )));
        }
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .ok_or_else(|| Error::DimensionMismatch("empty substitution".into()))?;
        for im in images {
            if im.ring != target {
                return Err(Error::RingMismatch("substitution images".into()));
            }
        }
        // Cache powers of each image up to the needed exponent.
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|im| vec![MultiPoly::one(&target), im.clone()])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Linear substitution: every image must have degree <= 1. Preserves
    /// homogeneous degree when the images are linear forms.
    pub fn substitute_linear(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        for im in images {
            if im.total_degree() > 1 {
                return Err(Error::Degenerate(
                    "substitute_linear requires degree <= 1 images".into(),
                ));
            }
        }
        self.substitute(images)
    }

    /// Applies a permutation of the variables: variable `i` is replaced by
    /// variable `perm[i]` of the same ring.
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.ring.num_vars());
        let mut out = MultiPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; perm.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                e[perm[i]] += exp;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Leading term in grevlex; `None` for zero.
    pub fn leading_term_grevlex(&self) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| cmp_grevlex(a, b))
    }

    /// Scales so coefficients are coprime integers with positive grevlex
    /// leading coefficient. Returns the primitive polynomial.
    pub fn primitive_normal_form(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c * Rational::from_integer(denom_lcm.clone());
            debug_assert!(scaled.is_integer());
            numer_gcd = numer_gcd.gcd(scaled.numer());
        }
        let mut factor = Rational::new(denom_lcm, numer_gcd);
        let (_, lead) = self.leading_term_grevlex().unwrap();
        if (lead * &factor).is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Treats the polynomial as univariate in `v`, returning coefficients of
    /// `v^k` (index k) as polynomials with no `v` dependence.
    pub fn univariate_coefficients(&self, v: usize) -> Vec<MultiPoly> {
        let d = self.degree_in_var(v) as usize;
        let mut out = vec![MultiPoly::zero(&self.ring); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[v] as usize;
            let mut m2 = m.clone();
            m2.0[v] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    /// The polynomial `sum coeffs[k] * v^k`.
    pub fn from_univariate_coefficients(
        ring: &Arc<Ring>,
        v: usize,
        coeffs: &[MultiPoly],
    ) -> MultiPoly {
        let mut out = MultiPoly::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            let vk = MultiPoly::var(ring, v).pow(k as u32);
            out = out.add(&c.mul(&vk));
        }
        out
    }

    /// If the polynomial involves at most the single variable `v`, returns
    /// its dense rational coefficient list (constant first).
    pub fn as_dense_univariate(&self, v: usize) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.degree_in_var(v) as usize + 1];
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if i != v && e > 0 {
                    return None;
                }
            }
            out[m.0[v] as usize] = c.clone();
        }
        Some(out)
    }

    /// Variables with positive degree.
    pub fn support(&self) -> Vec<usize> {
        let mut present = vec![false; self.ring.num_vars()];
        for m in self.terms.keys() {
            for i in m.support() {
                present[i] = true;
            }
        }
        (0..present.len()).filter(|&i| present[i]).collect()
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

// ---------------------------------------------------------------------------
// exact division, gcd, square analysis
// ---------------------------------------------------------------------------

/// Exact division `p / q`; `None` when `q` does not divide `p`.
pub fn exact_div(p: &MultiPoly, q: &MultiPoly) -> Option<MultiPoly> {
    if q.is_zero() {
        return None;
    }
    let ring = p.ring().clone();
    let mut rem = p.clone();
    let mut quot = MultiPoly::zero(&ring);
    let (qm, qc) = {
        let (m, c) = q.leading_term_grevlex().unwrap();
        (m.clone(), c.clone())
    };
    while !rem.is_zero() {
        let (rm, rc) = {
            let (m, c) = rem.leading_term_grevlex().unwrap();
            (m.clone(), c.clone())
        };
        if !qm.divides(&rm) {
            return None;
        }
        let m = rm.div(&qm);
        let c = rc / &qc;
        let mut t = MultiPoly::zero(&ring);
        t.add_term(m, c);
        quot = quot.add(&t);
        rem = rem.sub(&t.mul(q));
    }
    Some(quot)
}

fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, v: usize) -> MultiPoly {
    let dg = g.degree_in_var(v);
    let g_coeffs = g.univariate_coefficients(v);
    let lg = g_coeffs[dg as usize].clone();
    let ring = f.ring().clone();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in_var(v) >= dg {
        let dr = r.degree_in_var(v);
        let r_coeffs = r.univariate_coefficients(v);
        let lr = r_coeffs[dr as usize].clone();
        // r <- lg * r - lr * v^(dr-dg) * g
        let shift = MultiPoly::var(&ring, v).pow(dr - dg);
        r = lg.mul(&r).sub(&lr.mul(&shift).mul(g));
        if !r.is_zero() && r.degree_in_var(v) == dr {
            // cancellation is forced by construction
            unreachable!("pseudo remainder failed to drop degree");
        }
    }
    r
}

fn content_in_var(f: &MultiPoly, v: usize) -> MultiPoly {
    let coeffs = f.univariate_coefficients(v);
    let mut c = MultiPoly::zero(f.ring());
    for k in coeffs {
        if !k.is_zero() {
            c = gcd(&c, &k);
        }
    }
    c
}

/// Multivariate gcd over Q by the primitive pseudo-remainder sequence,
/// normalized to primitive integer coefficients with positive leading term.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return q.primitive_normal_form();
    }
    if q.is_zero() {
        return p.primitive_normal_form();
    }
    let sup: Vec<usize> = {
        let mut s = p.support();
        for v in q.support() {
            if !s.contains(&v) {
                s.push(v);
            }
        }
        s
    };
    if sup.is_empty() {
        return MultiPoly::one(p.ring());
    }
    let v = *sup.last().unwrap();
    if p.degree_in_var(v) == 0 || q.degree_in_var(v) == 0 {
        // one operand free of the main variable: gcd with the content
        let (with_v, without_v) = if p.degree_in_var(v) == 0 { (q, p) } else { (p, q) };
        return gcd(&content_in_var(with_v, v), without_v);
    }
    let cont_p = content_in_var(p, v);
    let cont_q = content_in_var(q, v);
    let mut r0 = exact_div(p, &cont_p).expect("content divides");
    let mut r1 = exact_div(q, &cont_q).expect("content divides");
    if r0.degree_in_var(v) < r1.degree_in_var(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_zero() {
        let r = pseudo_rem(&r0, &r1, v);
        r0 = r1;
        r1 = if r.is_zero() {
            r
        } else {
            let c = content_in_var(&r, v);
            exact_div(&r, &c).expect("content divides")
        };
    }
    let cont_gcd = gcd(&cont_p, &cont_q);
    cont_gcd.mul(&r0).primitive_normal_form()
}

/// Result of `square_analysis`.
#[derive(Clone, Debug)]
pub struct SquareAnalysis {
    pub is_square: bool,
    /// A square root when `is_square`, determined up to sign.
    pub sqrt: Option<MultiPoly>,
    /// `p / gcd(p, all first partials)`, content removed: the product of the
    /// distinct irreducible factors of `p`.
    pub squarefree_part: MultiPoly,
}

fn try_poly_sqrt(p: &MultiPoly) -> Option<MultiPoly> {
    if p.is_zero() {
        return Some(p.clone());
    }
    let sup = p.support();
    if sup.is_empty() {
        let c = p.coefficient(&Monomial::one(p.ring().num_vars()));
        return exact_sqrt(&c).map(|r| MultiPoly::constant(p.ring(), r));
    }
    let v = sup[0];
    let n = p.degree_in_var(v);
    if n % 2 != 0 {
        return None;
    }
    let m = n / 2;
    let coeffs = p.univariate_coefficients(v);
    let lead_sqrt = try_poly_sqrt(&coeffs[n as usize])?;
    if lead_sqrt.is_zero() {
        return None;
    }
    // Determine the square root top-down. Writing q = sum b_k v^k, the
    // coefficient of v^(2m-j) in q^2 is the ordered sum over i + k = 2m - j
    // of b_i b_k, whose only unknown is b_(m-j) (appearing as 2 b_(m-j) b_m).
    let two_lead = lead_sqrt.scale(&Rational::from_integer(BigInt::from(2)));
    let mut b: Vec<Option<MultiPoly>> = vec![None; m as usize + 1];
    b[m as usize] = Some(lead_sqrt.clone());
    for j in 1..=m {
        let mut target = coeffs
            .get((2 * m - j) as usize)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(p.ring()));
        for i in (m - j + 1)..m {
            let k = 2 * m - j - i;
            let bi = b[i as usize].as_ref()?;
            let bk = b[k as usize].as_ref()?;
            target = target.sub(&bi.mul(bk));
        }
        let bj = exact_div(&target, &two_lead)?;
        b[(m - j) as usize] = Some(bj);
    }
    let root_coeffs: Vec<MultiPoly> = b.into_iter().map(|x| x.unwrap()).collect();
    let root = MultiPoly::from_univariate_coefficients(p.ring(), v, &root_coeffs);
    if root.mul(&root) == *p {
        Some(root)
    } else {
        None
    }
}

/// Perfect-square test, square root extraction and squarefree part.
/// Total on nonzero input.
pub fn square_analysis(p: &MultiPoly) -> Result<SquareAnalysis> {
    if p.is_zero() {
        return Err(Error::Degenerate("square_analysis of zero".into()));
    }
    let sqrt = try_poly_sqrt(p);
    let mut g = MultiPoly::zero(p.ring());
    for v in p.support() {
        g = gcd(&g, &p.derivative(v));
    }
    let g = gcd(&g, p);
    let squarefree_part = if g.total_degree() == 0 {
        p.primitive_normal_form()
    } else {
        exact_div(p, &g)
            .expect("gcd divides")
            .primitive_normal_form()
    };
    Ok(SquareAnalysis {
        is_square: sqrt.is_some(),
        sqrt,
        squarefree_part,
    })
}

// ---------------------------------------------------------------------------
// display and parsing
// ---------------------------------------------------------------------------

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| cmp_grevlex(b, a));
        for (idx, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = m.total_degree() == 0;
            let coeff_is_one = abs.is_one();
            if is_const || !coeff_is_one {
                write!(f, "{abs}")?;
            }
            let mut first_factor = is_const || !coeff_is_one;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if first_factor {
                    write!(f, "*")?;
                }
                first_factor = true;
                write!(f, "{}", self.ring.var_name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            input: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at byte {start}")));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn parse_ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.input.len() && self.input[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.input.len()
                && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
            {
                self.pos += 1;
            }
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected identifier at byte {start}")));
        }
        Ok(std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn parse_factor(&mut self, ring: &Arc<Ring>) -> Result<MultiPoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint()?;
                if self.peek() == Some(b'/') {
                    self.bump();
                    let d = self.parse_uint()?;
                    if d.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(MultiPoly::constant(ring, Rational::new(n, d)))
                } else {
                    Ok(MultiPoly::constant(ring, Rational::from_integer(n)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.parse_ident()?;
                let i = ring
                    .var_index(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                let mut p = MultiPoly::var(ring, i);
                if self.peek() == Some(b'^') {
                    self.bump();
                    let e: BigInt = self.parse_uint()?;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    p = p.pow(e);
                }
                Ok(p)
            }
            Some(b'(') => {
                self.bump();
                let p = self.parse_sum(ring)?;
                if self.bump() != Some(b')') {
                    return Err(Error::Parse("expected )".into()));
                }
                if self.peek() == Some(b'^') {
                    self.bump();
                    let e: BigInt = self.parse_uint()?;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(p.pow(e));
                }
                Ok(p)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }

    fn parse_term(&mut self, ring: &Arc<Ring>) -> Result<MultiPoly> {
        let mut p = self.parse_factor(ring)?;
        while self.peek() == Some(b'*') {
            self.bump();
            p = p.mul(&self.parse_factor(ring)?);
        }
        Ok(p)
    }

    fn parse_sum(&mut self, ring: &Arc<Ring>) -> Result<MultiPoly> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.bump();
            negate = true;
        } else if self.peek() == Some(b'+') {
            self.bump();
        }
        let mut p = self.parse_term(ring)?;
        if negate {
            p = p.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.parse_term(ring)?;
                    p = p.add(&t);
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.parse_term(ring)?;
                    p = p.sub(&t);
                }
                _ => break,
            }
        }
        Ok(p)
    }
}

/// Parses the human-readable polynomial format, e.g. `3*z1^2*z2 - 1/4*z3^4`.
pub fn parse_poly(ring: &Arc<Ring>, text: &str) -> Result<MultiPoly> {
    let mut p = Parser::new(text);
    let poly = p.parse_sum(ring)?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(Error::Parse(format!(
            "trailing input at byte {}: {:?}",
            p.pos,
            &text[p.pos..]
        )));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use proptest::prelude::*;

    fn zr() -> Arc<Ring> {
        Ring::z6()
    }

    fn z(i: usize) -> MultiPoly {
        MultiPoly::var(&zr(), i)
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::new(vec!["x", "y"]);
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn additive_identity() {
        let p = z(0).mul(&z(1)).add(&z(2).pow(3));
        assert_eq!(p.add(&MultiPoly::zero(&zr())), p);
    }

    #[test]
    fn s2_squared_has_21_terms() {
        // (z1^2 + ... + z6^2)^2: oracle count is C(6,2) + 6 = 21 monomials
        let s2 = (0..6).fold(MultiPoly::zero(&zr()), |acc, i| acc.add(&z(i).pow(2)));
        let sq = s2.pow(2);
        assert_eq!(sq.num_terms(), 21);
        // z1^4 coefficient 1, z1^2 z2^2 coefficient 2
        let mut m = Monomial::one(6);
        m.0[0] = 4;
        assert_eq!(sq.coefficient(&m), rat(1));
        let mut m = Monomial::one(6);
        m.0[0] = 2;
        m.0[1] = 2;
        assert_eq!(sq.coefficient(&m), rat(2));
    }

    #[test]
    fn product_degree_adds() {
        let p = z(0).pow(2).add(&z(1).mul(&z(2)));
        let q = z(3).pow(3).add(&z(4).pow(3));
        assert_eq!(p.mul(&q).total_degree(), 5);
        assert_eq!(p.mul(&q).homogeneity(), Homogeneity::Degree(5));
    }

    #[test]
    fn identity_substitution() {
        let r = Ring::new(vec!["x", "y"]);
        let s = Ring::new(vec!["s", "t"]);
        let p = MultiPoly::var(&r, 0)
            .pow(2)
            .add(&MultiPoly::var(&r, 1).pow(2));
        let images = vec![MultiPoly::var(&s, 0), MultiPoly::var(&s, 1)];
        let q = p.substitute_linear(&images).unwrap();
        let expect = MultiPoly::var(&s, 0)
            .pow(2)
            .add(&MultiPoly::var(&s, 1).pow(2));
        assert_eq!(q, expect);
    }

    #[test]
    fn square_analysis_examples() {
        let r = Ring::new(vec!["x", "y"]);
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        // (x + 2y)^2
        let q = x.add(&y.scale(&rat(2)));
        let sq = q.mul(&q);
        let an = square_analysis(&sq).unwrap();
        assert!(an.is_square);
        let root = an.sqrt.unwrap();
        assert!(root == q || root == q.neg());
        // x*y is not a square; squarefree part is itself
        let xy = x.mul(&y);
        let an = square_analysis(&xy).unwrap();
        assert!(!an.is_square);
        assert_eq!(an.squarefree_part, xy);
    }

    #[test]
    fn squarefree_part_tau() {
        // tau^2 (tau - 1)^4 -> tau (tau - 1)
        let r = Ring::new(vec!["tau"]);
        let tau = MultiPoly::var(&r, 0);
        let tm1 = tau.sub(&MultiPoly::one(&r));
        let p = tau.pow(2).mul(&tm1.pow(4));
        let an = square_analysis(&p).unwrap();
        let expect = tau.mul(&tm1).primitive_normal_form();
        assert_eq!(an.squarefree_part, expect);
        // and the whole thing is a square: (tau (tau-1)^2)^2
        assert!(an.is_square);
    }

    #[test]
    fn gcd_univariate_matches_euclid() {
        let r = Ring::new(vec!["t"]);
        let t = MultiPoly::var(&r, 0);
        // (t^2 - 1)(t + 2) and (t - 1)(t + 2)^2 have gcd (t-1)... no:
        // (t^2-1) = (t-1)(t+1); common factors (t-1)? and (t+2)
        let a = t.pow(2).sub(&MultiPoly::one(&r)).mul(&t.add(&MultiPoly::constant(&r, rat(2))));
        let b = t
            .sub(&MultiPoly::one(&r))
            .mul(&t.add(&MultiPoly::constant(&r, rat(2))).pow(2));
        let g = gcd(&a, &b);
        let expect = t
            .sub(&MultiPoly::one(&r))
            .mul(&t.add(&MultiPoly::constant(&r, rat(2))))
            .primitive_normal_form();
        assert_eq!(g, expect);
    }

    #[test]
    fn parse_print_example() {
        let p = parse_poly(&zr(), "3*z1^2*z2 - 1/4*z3^4").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "-1/4*z3^4 + 3*z1^2*z2");
        let q = parse_poly(&zr(), &p.to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn eval_matches_product() {
        let p = z(0).mul(&z(1)).add(&z(2).pow(2));
        let q = z(3).sub(&z(0));
        let pt: Vec<Rational> = (0..6).map(|i| ratio(i as i64 - 2, 3)).collect();
        let lhs = p.mul(&q).eval(&pt);
        let rhs = p.eval(&pt) * q.eval(&pt);
        assert_eq!(lhs, rhs);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // product evaluation is multiplicative, on random small polys/points
        #[test]
        fn eval_hom(coeffs1 in proptest::collection::vec(-9i64..10, 4),
                    coeffs2 in proptest::collection::vec(-9i64..10, 4),
                    pt in proptest::collection::vec((-6i64..7, 1i64..5), 6)) {
            let r = zr();
            let mk = |cs: &[i64]| {
                let mut p = MultiPoly::zero(&r);
                for (i, &c) in cs.iter().enumerate() {
                    let m = Monomial(vec![
                        (i % 3) as u16, ((i + 1) % 2) as u16, 0, (i % 2) as u16, 0, 1,
                    ]);
                    p.add_term(m, rat(c));
                }
                p
            };
            let p = mk(&coeffs1);
            let q = mk(&coeffs2);
            let point: Vec<Rational> = pt.iter().map(|&(n, d)| ratio(n, d)).collect();
            prop_assert_eq!(p.mul(&q).eval(&point), p.eval(&point) * q.eval(&point));
        }

        // parse/print round trip
        #[test]
        fn parse_roundtrip(cs in proptest::collection::vec((-20i64..21, 1i64..7), 1..6)) {
            let r = zr();
            let mut p = MultiPoly::zero(&r);
            for (i, &(n, d)) in cs.iter().enumerate() {
                let m = Monomial(vec![(i % 4) as u16, (i % 3) as u16, 1, 0, (i % 2) as u16, 0]);
                p.add_term(m, ratio(n, d));
            }
            let q = parse_poly(&r, &p.to_string()).unwrap();
            prop_assert_eq!(p, q);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        // sqrt of a square recovers the square, on 100 random quadratics
        #[test]
        fn square_roundtrip(c0 in -9i64..10, c1 in -9i64..10, c2 in -9i64..10) {
            prop_assume!(c0 != 0 || c1 != 0 || c2 != 0);
            let r = Ring::new(vec!["x", "y"]);
            let x = MultiPoly::var(&r, 0);
            let y = MultiPoly::var(&r, 1);
            let q = x.pow(2).scale(&rat(c0))
                .add(&x.mul(&y).scale(&rat(c1)))
                .add(&y.pow(2).scale(&rat(c2)));
            let sq = q.mul(&q);
            let an = square_analysis(&sq).unwrap();
            prop_assert!(an.is_square);
            let root = an.sqrt.unwrap();
            prop_assert_eq!(root.mul(&root), sq);
        }
    }
}
