//! The Leavitt path algebra of a finite quiver without sinks.
//!
//! Every element is a linear combination of normal-form monomials
//! `mu* eta` where `mu` (ghost leg) and `eta` (real leg) are paths with a
//! common target, the monomial's top vertex. The written word is
//! `mu_1*.mu_2*...mu_p*.eta_m...eta_1`: ghost letters in application
//! order, real letters reversed. Products rewrite by the two
//! Cuntz-Krieger relations: a real letter meeting its own ghost collapses
//! to a vertex, and a full ghost-fan sum over a vertex collapses to that
//! vertex. The second relation is only used through level raising.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::CalcError;
use crate::field::{Field, Scalar};
use crate::quiver::{enumerate_paths, Path, Quiver, VertexId};

/// Hard cap on level-raising steps in a single normalization.
pub const RAISE_CAP: usize = 12;

/// Normal-form monomial `ghost* real` with a shared top vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LeavittMonomial {
    pub ghost: Path,
    pub real: Path,
}

impl LeavittMonomial {
    pub fn new(q: &Quiver, ghost: Path, real: Path) -> Option<LeavittMonomial> {
        if ghost.target(q) == real.target(q) {
            Some(LeavittMonomial { ghost, real })
        } else {
            None
        }
    }

    pub fn idempotent(v: VertexId) -> LeavittMonomial {
        LeavittMonomial { ghost: Path::trivial(v), real: Path::trivial(v) }
    }

    /// The path `p` itself, as a monomial with trivial ghost leg.
    pub fn real_path(q: &Quiver, p: Path) -> LeavittMonomial {
        let top = p.target(q);
        LeavittMonomial { ghost: Path::trivial(top), real: p }
    }

    /// The starred path `p*`, as a monomial with trivial real leg.
    pub fn ghost_path(q: &Quiver, p: Path) -> LeavittMonomial {
        let top = p.target(q);
        LeavittMonomial { ghost: p, real: Path::trivial(top) }
    }

    pub fn top(&self, q: &Quiver) -> VertexId {
        self.real.target(q)
    }

    /// Corner vertex acting from the left: the source of the ghost leg.
    pub fn left_corner(&self) -> VertexId {
        self.ghost.source()
    }

    /// Corner vertex acting from the right: the source of the real leg.
    pub fn right_corner(&self) -> VertexId {
        self.real.source()
    }

    pub fn degree(&self) -> i64 {
        self.real.len() as i64 - self.ghost.len() as i64
    }

    pub fn letters(&self) -> usize {
        self.ghost.len() + self.real.len()
    }

    pub fn is_idempotent(&self) -> bool {
        self.ghost.is_empty() && self.real.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.left_corner() == self.right_corner()
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.is_idempotent() {
            return self.real.render(q);
        }
        let mut s = String::new();
        for (i, &a) in self.ghost.arrows.iter().enumerate() {
            if i > 0 {
                s.push('.');
            }
            s.push_str(q.arrow_name(a));
            s.push('*');
        }
        if !self.real.is_empty() {
            if !self.ghost.is_empty() {
                s.push('.');
            }
            s.push_str(&self.real.render(q));
        }
        s
    }
}

/// Product of two normal-form monomials: zero or a single monomial.
///
/// The inner junction `real_x . ghost_y*` cancels letter by letter from
/// the first-applied end; any mismatch kills the product.
pub fn mono_mul_opt(
    _q: &Quiver,
    x: &LeavittMonomial,
    y: &LeavittMonomial,
) -> Option<LeavittMonomial> {
    if x.right_corner() != y.left_corner() {
        return None;
    }
    let eta = &x.real.arrows;
    let nu = &y.ghost.arrows;
    let common = eta.len().min(nu.len());
    for i in 0..common {
        if eta[i] != nu[i] {
            return None;
        }
    }
    if eta.len() >= nu.len() {
        // Ghost leg of y fully cancelled; remaining real letters of x
        // ride on top of y's real leg.
        let mut real = y.real.arrows.clone();
        real.extend_from_slice(&eta[common..]);
        Some(LeavittMonomial {
            ghost: x.ghost.clone(),
            real: Path { base: y.real.base, arrows: real },
        })
    } else {
        // Real leg of x fully cancelled; leftover ghost letters of y
        // extend x's ghost leg.
        let mut ghost = x.ghost.arrows.clone();
        ghost.extend_from_slice(&nu[common..]);
        Some(LeavittMonomial {
            ghost: Path { base: x.ghost.base, arrows: ghost },
            real: y.real.clone(),
        })
    }
}

/// Linear combination of normal-form monomials over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeavittElement {
    pub field: Field,
    pub terms: BTreeMap<LeavittMonomial, Scalar>,
}

impl LeavittElement {
    pub fn zero(field: Field) -> LeavittElement {
        LeavittElement { field, terms: BTreeMap::new() }
    }

    pub fn monomial(field: Field, m: LeavittMonomial) -> LeavittElement {
        let mut e = LeavittElement::zero(field);
        e.add_term(m, field.one());
        e
    }

    pub fn idempotent(field: Field, v: VertexId) -> LeavittElement {
        LeavittElement::monomial(field, LeavittMonomial::idempotent(v))
    }

    pub fn add_term(&mut self, m: LeavittMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &LeavittElement) -> LeavittElement {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LeavittElement {
        let mut out = LeavittElement::zero(self.field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &LeavittElement) -> LeavittElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> LeavittElement {
        let mut out = LeavittElement::zero(self.field);
        for (m, s) in &self.terms {
            out.add_term(m.clone(), s.mul(c));
        }
        out
    }

    /// Syntactic zero: no terms survive coefficient cancellation. Use
    /// [`is_zero`] for the normalized test that also sees relations.
    pub fn is_empty_form(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all monomials; `None` when zero or inhomogeneous.
    pub fn l_degree(&self) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => return None,
                _ => {}
            }
        }
        deg
    }

    /// Largest real-leg length among monomials; 0 when zero.
    pub fn max_level(&self) -> usize {
        self.terms.keys().map(|m| m.real.len()).max().unwrap_or(0)
    }

    pub fn render(&self, q: &Quiver) -> String {
        render_terms(q, self.field, self.terms.iter().map(|(m, c)| (m.render(q), c)))
    }
}

pub(crate) fn render_terms<'a, I>(_q: &Quiver, _field: Field, terms: I) -> String
where
    I: Iterator<Item = (String, &'a Scalar)>,
{
    let mut s = String::new();
    let mut first = true;
    for (body, c) in terms {
        if first {
            if c.is_one() {
                s.push_str(&body);
            } else if c.neg().is_one() && c.is_negative() {
                s.push('-');
                s.push_str(&body);
            } else {
                s.push_str(&c.to_string());
                s.push(' ');
                s.push_str(&body);
            }
            first = false;
            continue;
        }
        if c.is_negative() {
            let p = c.neg();
            s.push_str(" - ");
            if !p.is_one() {
                s.push_str(&p.to_string());
                s.push(' ');
            }
        } else {
            s.push_str(" + ");
            if !c.is_one() {
                s.push_str(&c.to_string());
                s.push(' ');
            }
        }
        s.push_str(&body);
    }
    if first {
        s.push('0');
    }
    s
}

/// Product of two monomials as an element: zero or a single term.
pub fn mono_mul(
    q: &Quiver,
    field: Field,
    x: &LeavittMonomial,
    y: &LeavittMonomial,
) -> LeavittElement {
    match mono_mul_opt(q, x, y) {
        Some(m) => LeavittElement::monomial(field, m),
        None => LeavittElement::zero(field),
    }
}

/// Bilinear product of elements.
pub fn mul(q: &Quiver, x: &LeavittElement, y: &LeavittElement) -> LeavittElement {
    assert_eq!(x.field, y.field, "mixed coefficient fields");
    let mut out = LeavittElement::zero(x.field);
    for (mx, cx) in &x.terms {
        for (my, cy) in &y.terms {
            if let Some(m) = mono_mul_opt(q, mx, my) {
                out.add_term(m, cx.mul(cy));
            }
        }
    }
    out
}

/// Product of a list of elements, left to right.
pub fn mul_all(q: &Quiver, factors: &[&LeavittElement]) -> LeavittElement {
    assert!(!factors.is_empty(), "empty product");
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = mul(q, &acc, f);
    }
    acc
}

/// One ghost-fan expansion at the top vertex: `mu* eta` becomes the sum
/// of `(a mu)* (a eta)` over arrows `a` leaving the top.
pub fn raise_step(q: &Quiver, m: &LeavittMonomial) -> Result<Vec<LeavittMonomial>, CalcError> {
    let top = m.top(q);
    let fan = q.arrows_from(top);
    if fan.is_empty() {
        return Err(CalcError::SinkQuiver { vertex: q.vertex_name(top).to_string() });
    }
    let mut out = Vec::with_capacity(fan.len());
    for &a in fan {
        let mut ghost = m.ghost.arrows.clone();
        ghost.push(a);
        let mut real = m.real.arrows.clone();
        real.push(a);
        out.push(LeavittMonomial {
            ghost: Path { base: m.ghost.base, arrows: ghost },
            real: Path { base: m.real.base, arrows: real },
        });
    }
    Ok(out)
}

fn raise_mono_to_level(
    q: &Quiver,
    m: &LeavittMonomial,
    level: usize,
) -> Result<Vec<LeavittMonomial>, CalcError> {
    let have = m.real.len();
    if have > level {
        return Err(CalcError::LevelTooLow { have, want: level });
    }
    let needed = level - have;
    if needed > RAISE_CAP {
        return Err(CalcError::RaiseCapExceeded { needed, cap: RAISE_CAP });
    }
    let mut layer = alloc::vec![m.clone()];
    for _ in 0..needed {
        let mut next = Vec::new();
        for mono in &layer {
            next.extend(raise_step(q, mono)?);
        }
        layer = next;
    }
    Ok(layer)
}

/// Rewrites every term so all real legs have length `level`.
pub fn raise_level(
    q: &Quiver,
    x: &LeavittElement,
    level: usize,
) -> Result<LeavittElement, CalcError> {
    let mut out = LeavittElement::zero(x.field);
    for (m, c) in &x.terms {
        for raised in raise_mono_to_level(q, m, level)? {
            out.add_term(raised, c.clone());
        }
    }
    Ok(out)
}

/// Exact zero test: raises all terms to a common level, where the
/// surviving monomials are linearly independent.
pub fn is_zero(q: &Quiver, x: &LeavittElement) -> Result<bool, CalcError> {
    if x.terms.is_empty() {
        return Ok(true);
    }
    let level = x.max_level();
    let raised = raise_level(q, x, level)?;
    Ok(raised.terms.is_empty())
}

/// Exact equality of elements modulo the Cuntz-Krieger relations.
pub fn equals(q: &Quiver, x: &LeavittElement, y: &LeavittElement) -> Result<bool, CalcError> {
    assert_eq!(x.field, y.field, "mixed coefficient fields");
    is_zero(q, &x.sub(y))
}

/// A summand `left (x) s_v (x) right` of the separated bimodule of
/// noncommutative forms; the middle slot remembers its vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DTensor {
    pub left: LeavittMonomial,
    pub mid: VertexId,
    pub right: LeavittMonomial,
}

/// Linear combination of [`DTensor`] summands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DTensorElement {
    pub field: Field,
    pub terms: BTreeMap<DTensor, Scalar>,
}

impl DTensorElement {
    pub fn zero(field: Field) -> DTensorElement {
        DTensorElement { field, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, t: DTensor, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.remove(&t);
        let sum = match cur {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(t, sum);
        }
    }

    pub fn add(&self, other: &DTensorElement) -> DTensorElement {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> DTensorElement {
        let mut out = DTensorElement::zero(self.field);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &DTensorElement) -> DTensorElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> DTensorElement {
        let mut out = DTensorElement::zero(self.field);
        for (t, s) in &self.terms {
            out.add_term(t.clone(), s.mul(c));
        }
        out
    }

    pub fn render(&self, q: &Quiver) -> String {
        let bodies = self.terms.iter().map(|(t, c)| {
            let mut s = t.left.render(q);
            s.push_str(" (x)s ");
            s.push_str(q.vertex_name(t.mid));
            s.push_str(" (x) ");
            s.push_str(&t.right.render(q));
            (s, c)
        });
        render_terms(q, self.field, bodies)
    }
}

/// Left module action `x . (l (x)s v (x) r) = (x l) (x)s v (x) r`.
pub fn dtensor_mul_left(
    q: &Quiver,
    x: &LeavittElement,
    t: &DTensorElement,
) -> DTensorElement {
    let mut out = DTensorElement::zero(t.field);
    for (dt, c) in &t.terms {
        for (mx, cx) in &x.terms {
            if let Some(l) = mono_mul_opt(q, mx, &dt.left) {
                out.add_term(
                    DTensor { left: l, mid: dt.mid, right: dt.right.clone() },
                    c.mul(cx),
                );
            }
        }
    }
    out
}

/// Right module action `(l (x)s v (x) r) . y = l (x)s v (x) (r y)`.
pub fn dtensor_mul_right(
    q: &Quiver,
    t: &DTensorElement,
    y: &LeavittElement,
) -> DTensorElement {
    let mut out = DTensorElement::zero(t.field);
    for (dt, c) in &t.terms {
        for (my, cy) in &y.terms {
            if let Some(r) = mono_mul_opt(q, &dt.right, my) {
                out.add_term(
                    DTensor { left: dt.left.clone(), mid: dt.mid, right: r },
                    c.mul(cy),
                );
            }
        }
    }
    out
}

/// Zero test in the bimodule: left and right factors are raised to
/// common levels independently, where the monomial triples form a basis.
pub fn dtensor_is_zero(q: &Quiver, t: &DTensorElement) -> Result<bool, CalcError> {
    if t.terms.is_empty() {
        return Ok(true);
    }
    let left_level = t.terms.keys().map(|d| d.left.real.len()).max().unwrap();
    let right_level = t.terms.keys().map(|d| d.right.real.len()).max().unwrap();
    let mut flat: BTreeMap<DTensor, Scalar> = BTreeMap::new();
    for (d, c) in &t.terms {
        for l in raise_mono_to_level(q, &d.left, left_level)? {
            for r in raise_mono_to_level(q, &d.right, right_level)? {
                let key = DTensor { left: l.clone(), mid: d.mid, right: r };
                let cur = flat.remove(&key);
                let sum = match cur {
                    Some(old) => old.add(c),
                    None => c.clone(),
                };
                if !sum.is_zero() {
                    flat.insert(key, sum);
                }
            }
        }
    }
    Ok(flat.is_empty())
}

pub fn dtensor_equals(
    q: &Quiver,
    a: &DTensorElement,
    b: &DTensorElement,
) -> Result<bool, CalcError> {
    assert_eq!(a.field, b.field, "mixed coefficient fields");
    dtensor_is_zero(q, &a.sub(b))
}

/// The universal-derivation image of a monomial, split into vertex
/// summands of the separated bimodule.
fn derivation_mono(q: &Quiver, m: &LeavittMonomial, field: Field) -> DTensorElement {
    let gamma = &m.ghost;
    let eta = &m.real;
    let p = gamma.len();
    let mm = eta.len();
    let mut out = DTensorElement::zero(field);
    if p >= 1 {
        let v = gamma.source();
        out.add_term(
            DTensor { left: LeavittMonomial::idempotent(v), mid: v, right: m.clone() },
            field.from_i64(-1),
        );
    }
    for l in 1..p {
        let cut = q.tgt(gamma.arrows[l - 1]);
        let left = LeavittMonomial {
            ghost: Path { base: gamma.base, arrows: gamma.arrows[..l].to_vec() },
            real: Path::trivial(cut),
        };
        let right = LeavittMonomial {
            ghost: Path { base: cut, arrows: gamma.arrows[l..].to_vec() },
            real: eta.clone(),
        };
        out.add_term(
            DTensor { left, mid: cut, right },
            field.sign(l as i64 + 1),
        );
    }
    for l in 1..mm {
        let cut = q.tgt(eta.arrows[l - 1]);
        let left = LeavittMonomial {
            ghost: gamma.clone(),
            real: Path { base: cut, arrows: eta.arrows[l..].to_vec() },
        };
        let right = LeavittMonomial {
            ghost: Path::trivial(cut),
            real: Path { base: eta.base, arrows: eta.arrows[..l].to_vec() },
        };
        out.add_term(
            DTensor { left, mid: cut, right },
            field.sign((mm + p) as i64 - l as i64),
        );
    }
    if mm >= 1 {
        let v = eta.source();
        out.add_term(
            DTensor { left: m.clone(), mid: v, right: LeavittMonomial::idempotent(v) },
            field.sign((mm + p) as i64),
        );
    }
    out
}

/// The degree-preserving derivation from the algebra to the separated
/// bimodule; kills idempotents and satisfies the graded Leibniz rule.
pub fn derivation_d(q: &Quiver, x: &LeavittElement) -> DTensorElement {
    let mut out = DTensorElement::zero(x.field);
    for (m, c) in &x.terms {
        out = out.add(&derivation_mono(q, m, x.field).scale(c));
    }
    out
}

/// Applies the derivation to both outer factors of its own image, with
/// the Koszul sign on the right factor. The composite lands in the
/// five-slot space whose interior factor is reduced modulo the span of
/// vertex idempotents, as in the normalized bar complex; the zero test
/// raises each slot independently and then quotients the interior slot
/// by the raised idempotent span.
pub fn derivation_squared_is_zero(q: &Quiver, x: &LeavittElement) -> Result<bool, CalcError> {
    type Key = (LeavittMonomial, VertexId, LeavittMonomial, VertexId, LeavittMonomial);
    let field = x.field;
    let mut terms: BTreeMap<Key, Scalar> = BTreeMap::new();
    let add = |key: Key, c: Scalar, terms: &mut BTreeMap<Key, Scalar>| {
        let sum = match terms.remove(&key) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            terms.insert(key, sum);
        }
    };
    for (d, c) in &derivation_d(q, x).terms {
        let left_elem = LeavittElement::monomial(field, d.left.clone());
        for (d2, c2) in &derivation_d(q, &left_elem).terms {
            if d2.right.is_idempotent() {
                continue;
            }
            add(
                (d2.left.clone(), d2.mid, d2.right.clone(), d.mid, d.right.clone()),
                c.mul(c2),
                &mut terms,
            );
        }
        let sign = field.sign(d.left.degree() + 1);
        let right_elem = LeavittElement::monomial(field, d.right.clone());
        for (d2, c2) in &derivation_d(q, &right_elem).terms {
            if d2.left.is_idempotent() {
                continue;
            }
            add(
                (d.left.clone(), d.mid, d2.left.clone(), d2.mid, d2.right.clone()),
                c.mul(c2).mul(&sign),
                &mut terms,
            );
        }
    }
    if terms.is_empty() {
        return Ok(true);
    }
    let l0 = terms.keys().map(|k| k.0.real.len()).max().unwrap();
    let l1 = terms.keys().map(|k| k.2.real.len()).max().unwrap();
    let l2 = terms.keys().map(|k| k.4.real.len()).max().unwrap();
    let mut flat: BTreeMap<Key, Scalar> = BTreeMap::new();
    for (k, c) in &terms {
        for a in raise_mono_to_level(q, &k.0, l0)? {
            for b in raise_mono_to_level(q, &k.2, l1)? {
                for r in raise_mono_to_level(q, &k.4, l2)? {
                    add((a.clone(), k.1, b.clone(), k.3, r), c.clone(), &mut flat);
                }
            }
        }
    }
    // Group by everything but the interior slot; each group must lie in
    // the span of the raised vertex idempotents, whose level-l1 image at
    // a vertex v is the full equal-leg fan over paths leaving v.
    type Outer = (LeavittMonomial, VertexId, VertexId, LeavittMonomial);
    let mut groups: BTreeMap<Outer, BTreeMap<LeavittMonomial, Scalar>> = BTreeMap::new();
    for ((a, i, b, j, r), c) in flat {
        groups.entry((a, i, j, r)).or_default().insert(b, c);
    }
    for group in groups.values() {
        let mut residual = group.clone();
        let mut lambda: BTreeMap<VertexId, Scalar> = BTreeMap::new();
        for (m, c) in group {
            if m.ghost == m.real {
                lambda.entry(m.ghost.source()).or_insert_with(|| c.clone());
            }
        }
        for (v, lam) in lambda {
            for p in enumerate_paths(q, l1, Some(v), None) {
                let key = LeavittMonomial { ghost: p.clone(), real: p };
                let sum = match residual.remove(&key) {
                    Some(old) => old.sub(&lam),
                    None => lam.neg(),
                };
                if !sum.is_zero() {
                    residual.insert(key, sum);
                }
            }
        }
        if !residual.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All normal-form monomials with the given total letter count,
/// optionally restricted to equal corners.
pub fn enumerate_monomials(
    q: &Quiver,
    letters: usize,
    diagonal_only: bool,
) -> Vec<LeavittMonomial> {
    let mut out = Vec::new();
    for g in 0..=letters {
        let r = letters - g;
        for ghost in enumerate_paths(q, g, None, None) {
            let top = ghost.target(q);
            for real in enumerate_paths(q, r, None, Some(top)) {
                let m = LeavittMonomial { ghost: ghost.clone(), real };
                if !diagonal_only || m.is_diagonal() {
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out
}

/// All monomials with letter count between 1 and `max_letters`.
pub fn enumerate_monomials_up_to(
    q: &Quiver,
    max_letters: usize,
    diagonal_only: bool,
) -> Vec<LeavittMonomial> {
    let mut out = Vec::new();
    for n in 1..=max_letters {
        out.extend(enumerate_monomials(q, n, diagonal_only));
    }
    out
}
