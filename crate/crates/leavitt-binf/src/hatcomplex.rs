//! The diagonal-corner complex of the Leavitt algebra: a plain copy and
//! a shifted copy of the sum of corner subalgebras, with the cup product
//! and brace operations written on normal-form words.
//!
//! A plain element of internal degree `n` sits in cohomological degree
//! `n`; a shifted one in degree `n + 1`. The brace inserts shifted
//! arguments into the written word of the host monomial: into ghost gaps
//! (weakly increasing positions) and real gaps (strictly increasing),
//! never between the last ghost letter and the first real letter.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::combinat::{strictly_increasing, weakly_increasing};
use crate::error::CalcError;
use crate::field::{Field, Scalar};
use crate::leavitt::{
    equals, mul, raise_level, raise_step, render_terms, LeavittElement, LeavittMonomial,
};
use crate::quiver::{enumerate_paths, ArrowId, Path, Quiver};
use crate::sgcomplex::{SgElement, SgTerm};

/// Element of the two-copy complex. Both parts are supported on
/// diagonal monomials (equal corners).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatElement {
    pub plain: LeavittElement,
    pub shifted: LeavittElement,
}

fn assert_diagonal(x: &LeavittElement) {
    for m in x.terms.keys() {
        assert!(m.is_diagonal(), "corner mismatch: off-diagonal monomial");
    }
}

impl HatElement {
    pub fn zero(field: Field) -> HatElement {
        HatElement {
            plain: LeavittElement::zero(field),
            shifted: LeavittElement::zero(field),
        }
    }

    pub fn new(plain: LeavittElement, shifted: LeavittElement) -> HatElement {
        assert_eq!(plain.field, shifted.field, "mixed coefficient fields");
        assert_diagonal(&plain);
        assert_diagonal(&shifted);
        HatElement { plain, shifted }
    }

    pub fn from_plain(plain: LeavittElement) -> HatElement {
        let field = plain.field;
        HatElement::new(plain, LeavittElement::zero(field))
    }

    pub fn from_shifted(shifted: LeavittElement) -> HatElement {
        let field = shifted.field;
        HatElement::new(LeavittElement::zero(field), shifted)
    }

    pub fn field(&self) -> Field {
        self.plain.field
    }

    pub fn add(&self, other: &HatElement) -> HatElement {
        HatElement {
            plain: self.plain.add(&other.plain),
            shifted: self.shifted.add(&other.shifted),
        }
    }

    pub fn neg(&self) -> HatElement {
        HatElement { plain: self.plain.neg(), shifted: self.shifted.neg() }
    }

    pub fn sub(&self, other: &HatElement) -> HatElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> HatElement {
        HatElement { plain: self.plain.scale(c), shifted: self.shifted.scale(c) }
    }

    pub fn is_empty_form(&self) -> bool {
        self.plain.is_empty_form() && self.shifted.is_empty_form()
    }

    /// Cohomological degree: the shifted copy counts one above its
    /// internal degree. `None` for syntactic zero.
    pub fn degree(&self) -> Result<Option<i64>, CalcError> {
        let mut deg: Option<i64> = None;
        if !self.plain.is_empty_form() {
            match self.plain.l_degree() {
                Some(d) => deg = Some(d),
                None => return Err(CalcError::Inhomogeneous),
            }
        }
        if !self.shifted.is_empty_form() {
            let d = match self.shifted.l_degree() {
                Some(d) => d + 1,
                None => return Err(CalcError::Inhomogeneous),
            };
            match deg {
                Some(e) if e != d => return Err(CalcError::Inhomogeneous),
                _ => deg = Some(d),
            }
        }
        Ok(deg)
    }

    pub fn render(&self, q: &Quiver) -> String {
        let plain = self.plain.terms.iter().map(|(m, c)| (m.render(q), c));
        let shifted = self.shifted.terms.iter().map(|(m, c)| {
            let mut s = String::from("s^-1 ");
            s.push_str(&m.render(q));
            (s, c)
        });
        render_terms(q, self.field(), plain.chain(shifted))
    }
}

fn ghost_arrow(q: &Quiver, field: Field, a: ArrowId) -> LeavittElement {
    LeavittElement::monomial(field, LeavittMonomial::ghost_path(q, Path::of_arrow(q, a)))
}

fn real_arrow(q: &Quiver, field: Field, a: ArrowId) -> LeavittElement {
    LeavittElement::monomial(field, LeavittMonomial::real_path(q, Path::of_arrow(q, a)))
}

/// The differential: a plain corner element maps to its shifted copy
/// minus, with the parity of its degree, the fan conjugation sum at its
/// corner; the shifted copy is sent to zero.
pub fn delta_prime(q: &Quiver, x: &HatElement) -> HatElement {
    let field = x.field();
    let mut shifted = LeavittElement::zero(field);
    for (m, c) in &x.plain.terms {
        shifted.add_term(m.clone(), c.clone());
        let corner = m.left_corner();
        let sign = field.sign(m.degree()).neg();
        let elem = LeavittElement::monomial(field, m.clone());
        for &a in q.arrows_into(corner) {
            let conj = mul(q, &ghost_arrow(q, field, a), &mul(q, &elem, &real_arrow(q, field, a)));
            for (cm, cc) in conj.terms {
                shifted.add_term(cm, cc.mul(&sign).mul(c));
            }
        }
    }
    HatElement::new(LeavittElement::zero(field), shifted)
}

/// Cup product: plain times plain multiplies, shifted times plain
/// multiplies into the shifted copy, plain times shifted conjugates
/// through the arrow fan, shifted times shifted is zero.
pub fn cup_hat(q: &Quiver, x: &HatElement, y: &HatElement) -> HatElement {
    let field = x.field();
    assert_eq!(field, y.field(), "mixed coefficient fields");
    let plain = mul(q, &x.plain, &y.plain);
    let mut shifted = mul(q, &x.shifted, &y.plain);
    if !x.plain.is_empty_form() && !y.shifted.is_empty_form() {
        for a in q.arrows() {
            let word = mul(
                q,
                &ghost_arrow(q, field, a),
                &mul(q, &x.plain, &mul(q, &real_arrow(q, field, a), &y.shifted)),
            );
            shifted = shifted.add(&word);
        }
    }
    HatElement::new(plain, shifted)
}

/// Internal degrees of a monomial used in brace signs.
fn ldeg(m: &LeavittMonomial) -> i64 {
    m.degree()
}

/// Word-insertion brace of shifted argument monomials into a host
/// monomial. For a shifted host the leading ghost letter is fixed in
/// front and the remaining ghost letters carry the insertion gaps.
fn word_brace_mono(
    q: &Quiver,
    field: Field,
    host: &LeavittMonomial,
    host_shifted: bool,
    us: &[&LeavittMonomial],
) -> LeavittElement {
    let k = us.len();
    debug_assert!(k >= 1);
    let (prefix, betas): (Option<ArrowId>, &[ArrowId]) = if host_shifted {
        let (b0, rest) = host
            .ghost
            .arrows
            .split_first()
            .expect("shifted host raised to ghost length >= 1");
        (Some(*b0), rest)
    } else {
        (None, &host.ghost.arrows[..])
    };
    let alphas = &host.real.arrows[..];
    let p = betas.len();
    let m = alphas.len();
    let mut out = LeavittElement::zero(field);
    for b in 0..=k {
        let a = k - b;
        for ls in weakly_increasing(p, b) {
            for is in strictly_increasing(m, a) {
                let mut eps: i64 = 0;
                for (r, &l) in ls.iter().enumerate() {
                    eps += ldeg(us[r]) * (m as i64 + p as i64 - l as i64 + 1);
                }
                for (r, &i) in is.iter().enumerate() {
                    eps += ldeg(us[k - 1 - r]) * (i as i64 - 1);
                }
                let sign = field.sign(a as i64 + eps);

                let mut acc: Option<LeavittElement> = None;
                let push = |factor: LeavittElement, acc: &mut Option<LeavittElement>| {
                    *acc = Some(match acc.take() {
                        None => factor,
                        Some(cur) => mul(q, &cur, &factor),
                    });
                };
                if let Some(b0) = prefix {
                    push(ghost_arrow(q, field, b0), &mut acc);
                }
                let mut lpos = 0usize;
                for j in 1..=p {
                    while lpos < b && ls[lpos] == j {
                        push(LeavittElement::monomial(field, us[lpos].clone()), &mut acc);
                        lpos += 1;
                    }
                    push(ghost_arrow(q, field, betas[j - 1]), &mut acc);
                }
                for i in (1..=m).rev() {
                    push(real_arrow(q, field, alphas[i - 1]), &mut acc);
                    if let Some(r) = is.iter().position(|&g| g == i) {
                        push(
                            LeavittElement::monomial(field, us[k - 1 - r].clone()),
                            &mut acc,
                        );
                    }
                }
                if let Some(word) = acc {
                    out = out.add(&word.scale(&sign));
                }
            }
        }
    }
    out
}

/// Expands argument elements into tuples of shifted monomials with
/// combined coefficients; plain argument content contributes nothing.
fn shifted_tuples<'a>(
    us: &'a [HatElement],
    field: Field,
) -> Vec<(Vec<&'a LeavittMonomial>, Scalar)> {
    let mut tuples: Vec<(Vec<&LeavittMonomial>, Scalar)> =
        alloc::vec![(Vec::new(), field.one())];
    for u in us {
        let mut next = Vec::new();
        for (tuple, c) in &tuples {
            for (m, cm) in &u.shifted.terms {
                let mut t = tuple.clone();
                t.push(m);
                next.push((t, c.mul(cm)));
            }
        }
        tuples = next;
    }
    tuples
}

/// Brace on the word of an arbitrary element, as used on bar-complex
/// inputs: ghost gaps and real gaps without a leading fixed letter.
pub fn brace_leavitt(q: &Quiver, v: &LeavittElement, us: &[HatElement]) -> LeavittElement {
    if us.is_empty() {
        return v.clone();
    }
    let field = v.field;
    let mut out = LeavittElement::zero(field);
    for (tuple, c) in shifted_tuples(us, field) {
        for (vm, vc) in &v.terms {
            let w = word_brace_mono(q, field, vm, false, &tuple);
            out = out.add(&w.scale(&c.mul(vc)));
        }
    }
    out
}

fn brace_shifted_mono(
    q: &Quiver,
    field: Field,
    host: &LeavittMonomial,
    us: &[&LeavittMonomial],
) -> Result<LeavittElement, CalcError> {
    if host.ghost.is_empty() {
        let mut out = LeavittElement::zero(field);
        for raised in raise_step(q, host)? {
            out = out.add(&brace_shifted_mono(q, field, &raised, us)?);
        }
        return Ok(out);
    }
    Ok(word_brace_mono(q, field, host, true, us))
}

/// Brace operation on the two-copy complex. Arguments act through their
/// shifted parts only; an empty argument list returns the host.
pub fn brace_hat(
    q: &Quiver,
    x: &HatElement,
    us: &[HatElement],
) -> Result<HatElement, CalcError> {
    if us.is_empty() {
        return Ok(x.clone());
    }
    let field = x.field();
    let mut plain = LeavittElement::zero(field);
    let mut shifted = LeavittElement::zero(field);
    for (tuple, c) in shifted_tuples(us, field) {
        for (vm, vc) in &x.plain.terms {
            let w = word_brace_mono(q, field, vm, false, &tuple);
            plain = plain.add(&w.scale(&c.mul(vc)));
        }
        for (vm, vc) in &x.shifted.terms {
            let w = brace_shifted_mono(q, field, vm, &tuple)?;
            shifted = shifted.add(&w.scale(&c.mul(vc)));
        }
    }
    Ok(HatElement::new(plain, shifted))
}

/// One brace summand with explicit gap data, for oracle tests. `ls` are
/// ghost gaps taking the first arguments in order, `is` real gaps taking
/// the remaining arguments in reverse.
pub fn brace_hat_summand(
    q: &Quiver,
    field: Field,
    host: &LeavittMonomial,
    host_shifted: bool,
    us: &[LeavittMonomial],
    is: &[usize],
    ls: &[usize],
) -> LeavittElement {
    let k = us.len();
    assert_eq!(k, is.len() + ls.len());
    let refs: Vec<&LeavittMonomial> = us.iter().collect();
    let (prefix, betas): (Option<ArrowId>, &[ArrowId]) = if host_shifted {
        let (b0, rest) = host.ghost.arrows.split_first().expect("shifted host has a ghost letter");
        (Some(*b0), rest)
    } else {
        (None, &host.ghost.arrows[..])
    };
    let alphas = &host.real.arrows[..];
    let p = betas.len();
    let m = alphas.len();
    let b = ls.len();
    let mut eps: i64 = 0;
    for (r, &l) in ls.iter().enumerate() {
        eps += ldeg(refs[r]) * (m as i64 + p as i64 - l as i64 + 1);
    }
    for (r, &i) in is.iter().enumerate() {
        eps += ldeg(refs[k - 1 - r]) * (i as i64 - 1);
    }
    let sign = field.sign(is.len() as i64 + eps);
    let mut factors: Vec<LeavittElement> = Vec::new();
    if let Some(b0) = prefix {
        factors.push(ghost_arrow(q, field, b0));
    }
    let mut lpos = 0usize;
    for j in 1..=p {
        while lpos < b && ls[lpos] == j {
            factors.push(LeavittElement::monomial(field, refs[lpos].clone()));
            lpos += 1;
        }
        factors.push(ghost_arrow(q, field, betas[j - 1]));
    }
    for i in (1..=m).rev() {
        factors.push(real_arrow(q, field, alphas[i - 1]));
        if let Some(r) = is.iter().position(|&g| g == i) {
            factors.push(LeavittElement::monomial(field, refs[k - 1 - r].clone()));
        }
    }
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = mul(q, &acc, f);
    }
    acc.scale(&sign)
}

/// Recursive form of the brace, peeling the leading ghost letter of the
/// last argument. Agrees with the word-insertion form on every input.
pub fn brace_hat_recursive(
    q: &Quiver,
    v: &LeavittElement,
    us: &[HatElement],
) -> Result<LeavittElement, CalcError> {
    if us.is_empty() {
        return Ok(v.clone());
    }
    let field = v.field;
    let mut out = LeavittElement::zero(field);
    for (tuple, c) in shifted_tuples(us, field) {
        let monos: Vec<LeavittMonomial> = tuple.into_iter().cloned().collect();
        out = out.add(&rec_brace(q, field, v, &monos)?.scale(&c));
    }
    Ok(out)
}

fn rec_brace(
    q: &Quiver,
    field: Field,
    v: &LeavittElement,
    us: &[LeavittMonomial],
) -> Result<LeavittElement, CalcError> {
    if us.is_empty() {
        return Ok(v.clone());
    }
    let k = us.len();
    let eps_k: i64 = us.iter().map(ldeg).sum();
    let u_last = &us[k - 1];
    if u_last.ghost.is_empty() {
        let mut out = LeavittElement::zero(field);
        for raised in raise_step(q, u_last)? {
            let mut us2 = us[..k - 1].to_vec();
            us2.push(raised);
            out = out.add(&rec_brace(q, field, v, &us2)?);
        }
        return Ok(out);
    }
    let gamma0 = u_last.ghost.arrows[0];
    let du = ldeg(u_last);
    let u_tilde = LeavittMonomial {
        ghost: Path { base: q.tgt(gamma0), arrows: u_last.ghost.arrows[1..].to_vec() },
        real: u_last.real.clone(),
    };
    let u_tilde_elem = LeavittElement::monomial(field, u_tilde);
    let mut out = LeavittElement::zero(field);
    for (vm, vc) in &v.terms {
        let p = vm.ghost.len();
        let m = vm.real.len();
        let dv = vm.degree();
        for j in 0..p {
            let head = if j == 0 {
                ghost_arrow(q, field, gamma0)
            } else {
                let prefix = LeavittMonomial::ghost_path(
                    q,
                    Path { base: vm.ghost.base, arrows: vm.ghost.arrows[..j].to_vec() },
                );
                mul(
                    q,
                    &LeavittElement::monomial(field, prefix),
                    &ghost_arrow(q, field, gamma0),
                )
            };
            if head.is_empty_form() {
                continue;
            }
            let braced = rec_brace(q, field, &head, &us[..k - 1])?;
            if braced.is_empty_form() {
                continue;
            }
            let suffix = LeavittMonomial::ghost_path(
                q,
                Path {
                    base: q.src(vm.ghost.arrows[j]),
                    arrows: vm.ghost.arrows[j..].to_vec(),
                },
            );
            let mut tail = mul(q, &u_tilde_elem, &LeavittElement::monomial(field, suffix));
            if m > 0 {
                tail = mul(
                    q,
                    &tail,
                    &LeavittElement::monomial(field, LeavittMonomial::real_path(q, vm.real.clone())),
                );
            }
            let sign = field.sign((j as i64 + dv + 1) * eps_k + du);
            out = out.add(&mul(q, &braced, &tail).scale(&sign).scale(vc));
        }
        for j in 0..m {
            if vm.real.arrows[j] != gamma0 {
                continue;
            }
            let mut head = if p == 0 {
                LeavittElement::idempotent(field, vm.top(q))
            } else {
                LeavittElement::monomial(
                    field,
                    LeavittMonomial::ghost_path(q, vm.ghost.clone()),
                )
            };
            if j + 1 < m {
                let real_suffix = LeavittMonomial::real_path(
                    q,
                    Path {
                        base: q.src(vm.real.arrows[j + 1]),
                        arrows: vm.real.arrows[j + 1..].to_vec(),
                    },
                );
                head = mul(q, &head, &LeavittElement::monomial(field, real_suffix));
            }
            let braced = rec_brace(q, field, &head, &us[..k - 1])?;
            if braced.is_empty_form() {
                continue;
            }
            let mut tail = u_tilde_elem.clone();
            if j > 0 {
                let real_prefix = LeavittMonomial::real_path(
                    q,
                    Path { base: vm.real.base, arrows: vm.real.arrows[..j].to_vec() },
                );
                tail = mul(q, &tail, &LeavittElement::monomial(field, real_prefix));
            }
            let sign = field.sign((j as i64 + 1) * eps_k + du).neg();
            out = out.add(&mul(q, &braced, &tail).scale(&sign).scale(vc));
        }
    }
    Ok(out)
}

/// The strict comparison isomorphism from the parallel-pair complex:
/// a pair maps to the ghost-starred second leg times the first leg.
pub fn rho(q: &Quiver, x: &SgElement) -> HatElement {
    let field = x.field;
    let mut plain = LeavittElement::zero(field);
    let mut shifted = LeavittElement::zero(field);
    for (t, c) in &x.terms {
        let mono = LeavittMonomial::new(q, t.gamma_prime.clone(), t.gamma.clone())
            .expect("parallel pair has a common top");
        if t.shifted {
            shifted.add_term(mono, c.clone());
        } else {
            plain.add_term(mono, c.clone());
        }
    }
    HatElement::new(plain, shifted)
}

/// Inverse of the comparison isomorphism. A shifted monomial with a
/// trivial ghost leg is raised once so the pair's second leg is a real
/// path of positive length.
pub fn rho_inv(q: &Quiver, x: &HatElement) -> Result<SgElement, CalcError> {
    let field = x.field();
    let mut out = SgElement::zero(field);
    for (m, c) in &x.plain.terms {
        let t = SgTerm::new(q, m.real.clone(), m.ghost.clone(), false)
            .expect("diagonal monomial gives a parallel pair");
        out.add_term(t, c.clone());
    }
    for (m, c) in &x.shifted.terms {
        let monos = if m.ghost.is_empty() {
            raise_step(q, m)?
        } else {
            alloc::vec![m.clone()]
        };
        for raised in monos {
            let t = SgTerm::new(q, raised.real.clone(), raised.ghost.clone(), true)
                .expect("diagonal monomial gives a parallel pair");
            out.add_term(t, c.clone());
        }
    }
    Ok(out)
}

/// Exact equality componentwise.
pub fn hat_equals(q: &Quiver, x: &HatElement, y: &HatElement) -> Result<bool, CalcError> {
    Ok(equals(q, &x.plain, &y.plain)? && equals(q, &x.shifted, &y.shifted)?)
}

pub fn hat_is_zero(q: &Quiver, x: &HatElement) -> Result<bool, CalcError> {
    hat_equals(q, x, &HatElement::zero(x.field()))
}

/// Exact rank of a scalar matrix given as rows.
fn rank_rows(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].inv().expect("nonzero pivot");
        for r in pivot_row + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].mul(&inv);
            for c in col..cols {
                let delta = rows[pivot_row][c].mul(&factor);
                rows[r][c] = rows[r][c].sub(&delta);
            }
        }
        rank += 1;
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rank
}

/// Diagonal monomials of the given internal degree with real-leg length
/// `level`, the basis of one truncation stage.
pub fn diagonal_basis(q: &Quiver, degree: i64, level: usize) -> Vec<LeavittMonomial> {
    let g = level as i64 - degree;
    if g < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for real in enumerate_paths(q, level, None, None) {
        let top = real.target(q);
        for ghost in enumerate_paths(q, g as usize, Some(real.source()), Some(top)) {
            out.push(LeavittMonomial { ghost, real: real.clone() });
        }
    }
    out.sort();
    out
}

fn differential_rank(
    q: &Quiver,
    field: Field,
    degree: i64,
    level: usize,
) -> Result<(usize, usize), CalcError> {
    let domain = diagonal_basis(q, degree, level);
    if domain.is_empty() {
        return Ok((0, 0));
    }
    let codomain = diagonal_basis(q, degree, level + 1);
    let index: BTreeMap<&LeavittMonomial, usize> =
        codomain.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::with_capacity(domain.len());
    for m in &domain {
        let elem = LeavittElement::monomial(field, m.clone());
        let mut image = elem.clone();
        let sign = field.sign(degree).neg();
        for &a in q.arrows_into(m.left_corner()) {
            let conj = mul(q, &ghost_arrow(q, field, a), &mul(q, &elem, &real_arrow(q, field, a)));
            image = image.add(&conj.scale(&sign));
        }
        let raised = raise_level(q, &image, level + 1)?;
        let mut row = alloc::vec![field.zero(); codomain.len()];
        for (mono, c) in &raised.terms {
            let i = *index.get(mono).expect("raised monomial in stage basis");
            row[i] = c.clone();
        }
        rows.push(row);
    }
    Ok((domain.len(), rank_rows(rows)))
}

/// Cohomology dimension of one degree at one truncation stage.
fn h_dim(q: &Quiver, field: Field, degree: i64, level: usize) -> Result<usize, CalcError> {
    let (dim_here, rank_out) = differential_rank(q, field, degree, level)?;
    let kernel = dim_here - rank_out;
    let below = diagonal_basis(q, degree - 1, level + 1).len();
    let (_, rank_in) = differential_rank(q, field, degree - 1, level)?;
    Ok(kernel + below - rank_in)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomRow {
    pub degree: i64,
    pub dim: usize,
    pub level: usize,
    pub stabilized: bool,
}

/// Cohomology dimensions over a degree window, computed per truncation
/// stage by exact Gaussian rank; a row is stabilized when the last two
/// stages agree.
pub fn cohomology_dims(
    q: &Quiver,
    field: Field,
    min_degree: i64,
    max_degree: i64,
    max_level: usize,
) -> Result<Vec<CohomRow>, CalcError> {
    if let Some(v) = q.first_sink() {
        return Err(CalcError::SinkQuiver { vertex: q.vertex_name(v).to_string() });
    }
    let mut rows = Vec::new();
    let mut n = min_degree;
    while n <= max_degree {
        let dim_last = h_dim(q, field, n, max_level)?;
        let stabilized = if max_level >= 1 {
            h_dim(q, field, n, max_level - 1)? == dim_last
        } else {
            false
        };
        rows.push(CohomRow { degree: n, dim: dim_last, level: max_level, stabilized });
        n += 1;
    }
    Ok(rows)
}
