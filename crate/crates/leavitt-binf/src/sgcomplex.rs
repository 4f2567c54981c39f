//! The combinatorial cochain complex built from parallel-path pairs.
//!
//! A term is a pair of parallel paths `(gamma, gamma')` together with a
//! shift flag. Unshifted terms of bidegree `(m, p)` (with `m` the length
//! of `gamma` and `p` of `gamma'`) sit in total degree `m - p`; shifted
//! terms carry one extra suspension, so there `gamma'` has length `p + 1`
//! and the degree is still `m - p`. Terms at different `gamma'`-lengths
//! are compared through the level-raising map that prepends a common
//! arrow at the top of both legs.
//!
//! Products and braces are computed on closed walks: the walk of a term
//! climbs `gamma'` forwards and descends `gamma` backwards. Splicing
//! inserts argument walks into gaps; a backward step meeting a forward
//! step must cancel (equal arrows) or kill the summand, and cancellation
//! always terminates in a forwards-then-backwards walk.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::combinat::{strictly_increasing, weakly_increasing};
use crate::error::CalcError;
use crate::field::{Field, Scalar};
use crate::leavitt::{render_terms, RAISE_CAP};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};

/// A parallel-path pair with a shift flag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SgTerm {
    pub gamma: Path,
    pub gamma_prime: Path,
    pub shifted: bool,
}

impl SgTerm {
    pub fn new(q: &Quiver, gamma: Path, gamma_prime: Path, shifted: bool) -> Option<SgTerm> {
        if gamma.source() != gamma_prime.source() || gamma.target(q) != gamma_prime.target(q) {
            return None;
        }
        if shifted && gamma_prime.is_empty() {
            return None;
        }
        Some(SgTerm { gamma, gamma_prime, shifted })
    }

    pub fn base(&self) -> VertexId {
        self.gamma.source()
    }

    pub fn top(&self, q: &Quiver) -> VertexId {
        self.gamma.target(q)
    }

    /// Cohomological degree; the shift cancels one `gamma'` letter.
    pub fn degree(&self) -> i64 {
        let m = self.gamma.len() as i64;
        let p = self.gamma_prime.len() as i64;
        if self.shifted {
            m - p + 1
        } else {
            m - p
        }
    }

    pub fn letters(&self) -> usize {
        self.gamma.len() + self.gamma_prime.len()
    }

    pub fn render(&self, q: &Quiver) -> String {
        let walk = walk_of(self);
        let mut s = String::new();
        if walk.is_empty() {
            s.push_str("e(");
            s.push_str(q.vertex_name(self.base()));
            s.push(')');
        } else {
            for (i, step) in walk.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                match step {
                    Step::Fwd(a) => {
                        s.push_str("-> ");
                        s.push_str(q.arrow_name(*a));
                    }
                    Step::Bwd(a) => {
                        s.push_str("<- ");
                        s.push_str(q.arrow_name(*a));
                    }
                }
            }
        }
        if self.shifted {
            s.push_str(" [shifted]");
        }
        s
    }
}

/// Linear combination of terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgElement {
    pub field: Field,
    pub terms: BTreeMap<SgTerm, Scalar>,
}

impl SgElement {
    pub fn zero(field: Field) -> SgElement {
        SgElement { field, terms: BTreeMap::new() }
    }

    pub fn term(field: Field, t: SgTerm) -> SgElement {
        let mut e = SgElement::zero(field);
        e.add_term(t, field.one());
        e
    }

    pub fn add_term(&mut self, t: SgTerm, c: Scalar) {
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

    pub fn add(&self, other: &SgElement) -> SgElement {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> SgElement {
        let mut out = SgElement::zero(self.field);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &SgElement) -> SgElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> SgElement {
        let mut out = SgElement::zero(self.field);
        for (t, s) in &self.terms {
            out.add_term(t.clone(), s.mul(c));
        }
        out
    }

    pub fn is_empty_form(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render(&self, q: &Quiver) -> String {
        render_terms(q, self.field, self.terms.iter().map(|(t, c)| (t.render(q), c)))
    }
}

/// One step of a closed walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Step {
    Fwd(ArrowId),
    Bwd(ArrowId),
}

/// The closed walk of a term: up `gamma'`, down `gamma`.
pub fn walk_of(t: &SgTerm) -> Vec<Step> {
    let mut steps = Vec::with_capacity(t.letters());
    for &a in &t.gamma_prime.arrows {
        steps.push(Step::Fwd(a));
    }
    for &a in t.gamma.arrows.iter().rev() {
        steps.push(Step::Bwd(a));
    }
    steps
}

/// Cancels every backward-forward adjacency; `None` when a mismatched
/// pair kills the walk. The result has no `Bwd` before a `Fwd`.
pub fn cancel_walk(steps: &[Step]) -> Option<Vec<Step>> {
    let mut stack: Vec<Step> = Vec::with_capacity(steps.len());
    for &s in steps {
        match (stack.last(), s) {
            (Some(Step::Bwd(a)), Step::Fwd(b)) => {
                if *a == b {
                    stack.pop();
                } else {
                    return None;
                }
            }
            _ => stack.push(s),
        }
    }
    Some(stack)
}

/// Rebuilds a term from a cancelled walk anchored at `base`.
fn term_from_walk(q: &Quiver, base: VertexId, steps: &[Step], shifted: bool) -> SgTerm {
    let split = steps
        .iter()
        .position(|s| matches!(s, Step::Bwd(_)))
        .unwrap_or(steps.len());
    let fwd: Vec<ArrowId> = steps[..split]
        .iter()
        .map(|s| match s {
            Step::Fwd(a) => *a,
            Step::Bwd(_) => unreachable!("walk not cancelled"),
        })
        .collect();
    let bwd: Vec<ArrowId> = steps[split..]
        .iter()
        .rev()
        .map(|s| match s {
            Step::Bwd(a) => *a,
            Step::Fwd(_) => unreachable!("walk not cancelled"),
        })
        .collect();
    let gamma_prime = Path { base, arrows: fwd };
    let gamma = Path { base, arrows: bwd };
    SgTerm::new(q, gamma, gamma_prime, shifted).expect("spliced walk is parallel")
}

fn require_no_sinks(q: &Quiver) -> Result<(), CalcError> {
    if let Some(v) = q.first_sink() {
        return Err(CalcError::SinkQuiver { vertex: q.vertex_name(v).to_string() });
    }
    Ok(())
}

/// Level raising: prepends every arrow leaving the top vertex to both
/// legs. Injective, so comparisons may raise freely.
pub fn theta(q: &Quiver, x: &SgElement) -> Result<SgElement, CalcError> {
    require_no_sinks(q)?;
    let mut out = SgElement::zero(x.field);
    for (t, c) in &x.terms {
        for raised in theta_term(q, t)? {
            out.add_term(raised, c.clone());
        }
    }
    Ok(out)
}

fn theta_term(q: &Quiver, t: &SgTerm) -> Result<Vec<SgTerm>, CalcError> {
    let top = t.top(q);
    let fan = q.arrows_from(top);
    if fan.is_empty() {
        return Err(CalcError::SinkQuiver { vertex: q.vertex_name(top).to_string() });
    }
    let mut out = Vec::with_capacity(fan.len());
    for &a in fan {
        let mut g = t.gamma.arrows.clone();
        g.push(a);
        let mut gp = t.gamma_prime.arrows.clone();
        gp.push(a);
        out.push(SgTerm {
            gamma: Path { base: t.gamma.base, arrows: g },
            gamma_prime: Path { base: t.gamma_prime.base, arrows: gp },
            shifted: t.shifted,
        });
    }
    Ok(out)
}

/// Exact equality in the colimit: terms are grouped by shift flag and
/// degree, raised to a common `gamma'`-length, and compared there.
pub fn sg_equals(q: &Quiver, x: &SgElement, y: &SgElement) -> Result<bool, CalcError> {
    assert_eq!(x.field, y.field, "mixed coefficient fields");
    sg_is_zero(q, &x.sub(y))
}

pub fn sg_is_zero(q: &Quiver, x: &SgElement) -> Result<bool, CalcError> {
    if x.terms.is_empty() {
        return Ok(true);
    }
    require_no_sinks(q)?;
    let mut groups: BTreeMap<(bool, i64), Vec<(SgTerm, Scalar)>> = BTreeMap::new();
    for (t, c) in &x.terms {
        groups
            .entry((t.shifted, t.degree()))
            .or_default()
            .push((t.clone(), c.clone()));
    }
    for (_, terms) in groups {
        let target = terms.iter().map(|(t, _)| t.gamma_prime.len()).max().unwrap();
        let mut flat: BTreeMap<SgTerm, Scalar> = BTreeMap::new();
        for (t, c) in terms {
            let needed = target - t.gamma_prime.len();
            if needed > RAISE_CAP {
                return Err(CalcError::RaiseCapExceeded { needed, cap: RAISE_CAP });
            }
            let mut layer = alloc::vec![t];
            for _ in 0..needed {
                let mut next = Vec::new();
                for term in &layer {
                    next.extend(theta_term(q, term)?);
                }
                layer = next;
            }
            for term in layer {
                let cur = flat.remove(&term);
                let sum = match cur {
                    Some(old) => old.add(&c),
                    None => c.clone(),
                };
                if !sum.is_zero() {
                    flat.insert(term, sum);
                }
            }
        }
        if !flat.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The differential: raising at the top minus, with a sign, extension at
/// the base; both summands land in the shifted part. Shifted terms map
/// to zero.
pub fn differential_sg(q: &Quiver, x: &SgElement) -> Result<SgElement, CalcError> {
    require_no_sinks(q)?;
    let mut out = SgElement::zero(x.field);
    for (t, c) in &x.terms {
        if t.shifted {
            continue;
        }
        let m = t.gamma.len() as i64;
        let p = t.gamma_prime.len() as i64;
        for raised in theta_term(q, t)? {
            out.add_term(SgTerm { shifted: true, ..raised }, c.clone());
        }
        let tail_sign = x.field.sign(m - p).neg();
        for &b in q.arrows_into(t.base()) {
            let mut g = alloc::vec![b];
            g.extend_from_slice(&t.gamma.arrows);
            let mut gp = alloc::vec![b];
            gp.extend_from_slice(&t.gamma_prime.arrows);
            let nb = q.src(b);
            out.add_term(
                SgTerm {
                    gamma: Path { base: nb, arrows: g },
                    gamma_prime: Path { base: nb, arrows: gp },
                    shifted: true,
                },
                c.mul(&tail_sign),
            );
        }
    }
    Ok(out)
}

fn cup_terms(
    q: &Quiver,
    x: &SgTerm,
    y: &SgTerm,
) -> Option<SgTerm> {
    if x.shifted && y.shifted {
        return None;
    }
    if !y.shifted {
        // Walk of x, then walk of y, joined at the common base.
        if x.base() != y.base() {
            return None;
        }
        let mut steps = walk_of(x);
        steps.extend(walk_of(y));
        let cancelled = cancel_walk(&steps)?;
        Some(term_from_walk(q, x.base(), &cancelled, x.shifted))
    } else {
        // x unshifted, y shifted: the leading letter of y hops over the
        // whole walk of x.
        let b0 = y.gamma_prime.arrows[0];
        if q.tgt(b0) != x.base() {
            return None;
        }
        let mut steps = alloc::vec![Step::Fwd(b0)];
        steps.extend(walk_of(x));
        steps.extend(walk_of(y).into_iter().skip(1));
        let cancelled = cancel_walk(&steps)?;
        Some(term_from_walk(q, y.base(), &cancelled, true))
    }
}

/// Cup product. Two shifted factors multiply to zero; otherwise the
/// walks are concatenated and cancelled.
pub fn cup_sg(q: &Quiver, x: &SgElement, y: &SgElement) -> Result<SgElement, CalcError> {
    assert_eq!(x.field, y.field, "mixed coefficient fields");
    let mut out = SgElement::zero(x.field);
    for (tx, cx) in &x.terms {
        for (ty, cy) in &y.terms {
            if let Some(t) = cup_terms(q, tx, ty) {
                out.add_term(t, cx.mul(cy));
            }
        }
    }
    Ok(out)
}

/// Insertion slots of a term: `beta` gaps sit before a `gamma'` letter,
/// `alpha` gaps after a backward `gamma` letter. There is no slot
/// between the last forward and the first backward step.
struct Gaps {
    /// Number of usable `beta` gaps (`l` runs in `1..=beta_count`).
    beta_count: usize,
    /// Number of `alpha` gaps (`i` runs in `1..=alpha_count`).
    alpha_count: usize,
}

fn gaps_of(t: &SgTerm) -> Gaps {
    let p = t.gamma_prime.len();
    Gaps {
        beta_count: if t.shifted { p.saturating_sub(1) } else { p },
        alpha_count: t.gamma.len(),
    }
}

fn beta_walk_index(t: &SgTerm, l: usize) -> usize {
    if t.shifted {
        l
    } else {
        l - 1
    }
}

fn beta_gap_vertex(q: &Quiver, t: &SgTerm, l: usize) -> VertexId {
    q.src(t.gamma_prime.arrows[beta_walk_index(t, l)])
}

fn alpha_walk_index(t: &SgTerm, i: usize) -> usize {
    // After the backward step of gamma's i-th letter.
    t.gamma_prime.len() + (t.gamma.len() - i) + 1
}

fn alpha_gap_vertex(q: &Quiver, t: &SgTerm, i: usize) -> VertexId {
    q.src(t.gamma.arrows[i - 1])
}

/// One brace summand for fixed gap data. `ls` are the weakly increasing
/// `beta` gaps (taking the first arguments), `is` the strictly
/// increasing `alpha` gaps (taking the remaining arguments in reverse).
/// Returns the signed term, or `None` when a vertex or cancellation
/// mismatch kills the summand.
fn brace_summand_term(
    q: &Quiver,
    field: Field,
    x: &SgTerm,
    ys: &[&SgTerm],
    is: &[usize],
    ls: &[usize],
) -> Option<(Scalar, SgTerm)> {
    let a = is.len();
    let b = ls.len();
    let k = ys.len();
    debug_assert_eq!(a + b, k);
    if ys.iter().any(|y| !y.shifted) {
        return None;
    }
    let m = x.gamma.len() as i64;
    let p = gaps_of(x).beta_count as i64;

    // insertions: (walk position, tie-break, argument index)
    let mut insertions: Vec<(usize, usize, usize)> = Vec::with_capacity(k);
    let mut eps: i64 = 0;
    for (r, &l) in ls.iter().enumerate() {
        let y = ys[r];
        if beta_gap_vertex(q, x, l) != y.base() {
            return None;
        }
        insertions.push((beta_walk_index(x, l), r, r));
        eps += (y.degree() - 1) * (m + p - l as i64 + 1);
    }
    for (r, &i) in is.iter().enumerate() {
        // is[0] = i_1 pairs with the last argument, is[a-1] with y_{b+1}.
        let yidx = k - 1 - r;
        let y = ys[yidx];
        if alpha_gap_vertex(q, x, i) != y.base() {
            return None;
        }
        insertions.push((alpha_walk_index(x, i), 0, yidx));
        eps += (y.degree() - 1) * (i as i64 - 1);
    }
    insertions.sort();

    let host = walk_of(x);
    let mut steps: Vec<Step> = Vec::new();
    let mut ins = insertions.iter().peekable();
    for pos in 0..=host.len() {
        while let Some(&&(ipos, _, yidx)) = ins.peek() {
            if ipos == pos {
                steps.extend(walk_of(ys[yidx]));
                ins.next();
            } else {
                break;
            }
        }
        if pos < host.len() {
            steps.push(host[pos]);
        }
    }

    let cancelled = cancel_walk(&steps)?;
    let term = term_from_walk(q, x.base(), &cancelled, x.shifted);
    Some((field.sign(a as i64 + eps), term))
}

/// Single brace summand on explicit terms, exposed for oracle tests.
pub fn brace_sg_summand(
    q: &Quiver,
    field: Field,
    x: &SgTerm,
    ys: &[SgTerm],
    is: &[usize],
    ls: &[usize],
) -> SgElement {
    let refs: Vec<&SgTerm> = ys.iter().collect();
    let mut out = SgElement::zero(field);
    if let Some((c, t)) = brace_summand_term(q, field, x, &refs, is, ls) {
        out.add_term(t, c);
    }
    out
}

/// Brace operation. Arguments must be shifted termwise (unshifted
/// arguments contribute nothing); an empty argument list returns `x`.
pub fn brace_sg(q: &Quiver, x: &SgElement, ys: &[SgElement]) -> Result<SgElement, CalcError> {
    if ys.is_empty() {
        return Ok(x.clone());
    }
    let field = x.field;
    for y in ys {
        assert_eq!(y.field, field, "mixed coefficient fields");
    }
    let k = ys.len();
    let mut out = SgElement::zero(field);
    for (tx, cx) in &x.terms {
        let gaps = gaps_of(tx);
        let mut tuples: Vec<(Vec<&SgTerm>, Scalar)> = alloc::vec![(Vec::new(), cx.clone())];
        for y in ys {
            let mut next = Vec::new();
            for (tuple, c) in &tuples {
                for (ty, cy) in &y.terms {
                    let mut t2 = tuple.clone();
                    t2.push(ty);
                    next.push((t2, c.mul(cy)));
                }
            }
            tuples = next;
        }
        for (tuple, c) in tuples {
            if tuple.iter().any(|y| !y.shifted) {
                continue;
            }
            for b in 0..=k {
                let a = k - b;
                if a > gaps.alpha_count || (b > 0 && gaps.beta_count == 0) {
                    continue;
                }
                for ls in weakly_increasing(gaps.beta_count, b) {
                    for is in strictly_increasing(gaps.alpha_count, a) {
                        if let Some((sign, t)) =
                            brace_summand_term(q, field, tx, &tuple, &is, &ls)
                        {
                            out.add_term(t, c.mul(&sign));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Tail slot of a lambda word: a leftover arrow from a shifted term or
/// the base vertex of an unshifted one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tail {
    Arrow(ArrowId),
    Vertex(VertexId),
}

/// A monomial value of the comparison cochain: separated arrow slots and
/// a tail.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LambdaForm {
    pub arrows: Vec<ArrowId>,
    pub tail: Tail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaComb {
    pub field: Field,
    pub terms: BTreeMap<LambdaForm, Scalar>,
}

impl LambdaComb {
    pub fn zero(field: Field) -> LambdaComb {
        LambdaComb { field, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, f: LambdaForm, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.remove(&f);
        let sum = match cur {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(f, sum);
        }
    }

    pub fn render(&self, q: &Quiver) -> String {
        let bodies = self.terms.iter().map(|(t, c)| {
            let mut s = String::new();
            for &a in &t.arrows {
                s.push_str("s ");
                s.push_str(q.arrow_name(a));
                s.push_str(" (x) ");
            }
            match t.tail {
                Tail::Arrow(a) => s.push_str(q.arrow_name(a)),
                Tail::Vertex(v) => {
                    s.push_str("e(");
                    s.push_str(q.vertex_name(v));
                    s.push(')');
                }
            }
            (s, c)
        });
        render_terms(q, self.field, bodies)
    }
}

fn kappa_sign(field: Field, m: i64, p: i64) -> Scalar {
    let d = m - p;
    let eps = d * p + d * (d + 1) / 2;
    field.sign(eps)
}

/// Evaluates the comparison map on one input word of arrows. The input
/// lists the leftmost slot first, so it is the reversed `gamma` leg; a
/// term contributes only when its `gamma` matches exactly.
pub fn kappa_eval(
    q: &Quiver,
    x: &SgElement,
    input: &[ArrowId],
) -> Result<LambdaComb, CalcError> {
    let mut arity: Option<usize> = None;
    for t in x.terms.keys() {
        match arity {
            None => arity = Some(t.gamma.len()),
            Some(m) if m != t.gamma.len() => return Err(CalcError::Inhomogeneous),
            _ => {}
        }
    }
    if let Some(m) = arity {
        if m != input.len() {
            return Err(CalcError::ArityMismatch { expected: m, got: input.len() });
        }
    }
    let mut out = LambdaComb::zero(x.field);
    for (t, c) in &x.terms {
        let rev: Vec<ArrowId> = t.gamma.arrows.iter().rev().copied().collect();
        if rev != input {
            continue;
        }
        out.add_term(lambda_of_term(t), c.mul(&kappa_value_sign(x.field, t)));
    }
    let _ = q;
    Ok(out)
}

fn kappa_value_sign(field: Field, t: &SgTerm) -> Scalar {
    let m = t.gamma.len() as i64;
    let p = if t.shifted {
        t.gamma_prime.len() as i64 - 1
    } else {
        t.gamma_prime.len() as i64
    };
    kappa_sign(field, m, p)
}

fn lambda_of_term(t: &SgTerm) -> LambdaForm {
    if t.shifted {
        LambdaForm {
            arrows: t.gamma_prime.arrows[1..].iter().rev().copied().collect(),
            tail: Tail::Arrow(t.gamma_prime.arrows[0]),
        }
    } else {
        LambdaForm {
            arrows: t.gamma_prime.arrows.iter().rev().copied().collect(),
            tail: Tail::Vertex(t.gamma_prime.source()),
        }
    }
}

/// A slot of an intermediate word in a layered composite: a suspended
/// arrow or a lambda tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    S(ArrowId),
    Lam(Tail),
}

/// Linear combination of slot words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotComb {
    pub field: Field,
    pub terms: BTreeMap<Vec<Slot>, Scalar>,
}

impl SlotComb {
    pub fn zero(field: Field) -> SlotComb {
        SlotComb { field, terms: BTreeMap::new() }
    }

    pub fn word(field: Field, w: Vec<Slot>) -> SlotComb {
        let mut c = SlotComb::zero(field);
        c.add_term(w, field.one());
        c
    }

    pub fn add_term(&mut self, w: Vec<Slot>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let cur = self.terms.remove(&w);
        let sum = match cur {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(w, sum);
        }
    }

    pub fn scale(&self, c: &Scalar) -> SlotComb {
        let mut out = SlotComb::zero(self.field);
        for (w, s) in &self.terms {
            out.add_term(w.clone(), s.mul(c));
        }
        out
    }

    pub fn add(&self, other: &SlotComb) -> SlotComb {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn render(&self, q: &Quiver) -> String {
        let bodies = self.terms.iter().map(|(w, c)| {
            let mut s = String::from("[");
            for (i, slot) in w.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                match slot {
                    Slot::S(a) => {
                        s.push_str("S ");
                        s.push_str(q.arrow_name(*a));
                    }
                    Slot::Lam(Tail::Arrow(a)) => {
                        s.push_str("Lam ");
                        s.push_str(q.arrow_name(*a));
                    }
                    Slot::Lam(Tail::Vertex(v)) => {
                        s.push_str("Lam e(");
                        s.push_str(q.vertex_name(*v));
                        s.push(')');
                    }
                }
            }
            s.push(']');
            (s, c)
        });
        render_terms(q, self.field, bodies)
    }
}

/// A finite-table cochain on arrow words, the shape in which the
/// comparison map is composed into layered operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCochain {
    pub arity: usize,
    pub degree: i64,
    pub table: BTreeMap<Vec<ArrowId>, SlotComb>,
}

/// Collects the comparison values of a whole element into a table. The
/// element must be homogeneous in both the input arity and the degree.
pub fn kappa_table(q: &Quiver, x: &SgElement) -> Result<TableCochain, CalcError> {
    let mut arity: Option<usize> = None;
    let mut degree: Option<i64> = None;
    for t in x.terms.keys() {
        let m = t.gamma.len();
        match arity {
            None => arity = Some(m),
            Some(a) if a != m => return Err(CalcError::Inhomogeneous),
            _ => {}
        }
        match degree {
            None => degree = Some(t.degree()),
            Some(d) if d != t.degree() => return Err(CalcError::Inhomogeneous),
            _ => {}
        }
    }
    let arity = arity.unwrap_or(0);
    let degree = degree.unwrap_or(0);
    let mut table: BTreeMap<Vec<ArrowId>, SlotComb> = BTreeMap::new();
    for (t, c) in &x.terms {
        let key: Vec<ArrowId> = t.gamma.arrows.iter().rev().copied().collect();
        let form = lambda_of_term(t);
        let mut word: Vec<Slot> = form.arrows.iter().map(|&a| Slot::S(a)).collect();
        word.push(Slot::Lam(form.tail));
        let coeff = c.mul(&kappa_value_sign(x.field, t));
        table
            .entry(key)
            .or_insert_with(|| SlotComb::zero(x.field))
            .add_term(word, coeff);
    }
    let _ = q;
    Ok(TableCochain { arity, degree, table })
}

/// Bar reduction of a table cochain: vertex tails are dropped, an arrow
/// tail becomes a suspended slot at the cost of hopping over the slots
/// before it.
pub fn bar_table(t: &TableCochain) -> TableCochain {
    let mut table: BTreeMap<Vec<ArrowId>, SlotComb> = BTreeMap::new();
    for (key, comb) in &t.table {
        let mut out = SlotComb::zero(comb.field);
        for (word, c) in &comb.terms {
            let (last, head) = word.split_last().expect("table word has a tail");
            match last {
                Slot::Lam(Tail::Vertex(_)) => {
                    out.add_term(head.to_vec(), c.clone());
                }
                Slot::Lam(Tail::Arrow(a)) => {
                    let qcount = head.iter().filter(|s| matches!(s, Slot::S(_))).count();
                    let mut w = head.to_vec();
                    w.push(Slot::S(*a));
                    out.add_term(w, c.mul(&comb.field.sign(qcount as i64)));
                }
                Slot::S(_) => {
                    out.add_term(word.clone(), c.clone());
                }
            }
        }
        table.insert(key.clone(), out);
    }
    TableCochain { arity: t.arity, degree: t.degree, table }
}

/// One factor of a layered composite: identity slots on the left, a
/// table cochain, identity slots on the right.
#[derive(Debug, Clone)]
pub struct Layer {
    pub left: usize,
    pub map: TableCochain,
    pub right: usize,
}

/// Applies one layer to a slot-word combination. The consumed window
/// must be all suspended arrows; the layer picks up the sign of moving
/// its degree past the suspended slots to its left.
pub fn apply_layer(layer: &Layer, comb: &SlotComb) -> SlotComb {
    let field = comb.field;
    let mut out = SlotComb::zero(field);
    for (word, c) in &comb.terms {
        assert_eq!(
            word.len(),
            layer.left + layer.map.arity + layer.right,
            "layer width mismatch"
        );
        let window = &word[layer.left..layer.left + layer.map.arity];
        let mut key = Vec::with_capacity(window.len());
        let mut ok = true;
        for s in window {
            match s {
                Slot::S(a) => key.push(*a),
                Slot::Lam(_) => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let value = match layer.map.table.get(&key) {
            Some(v) => v,
            None => continue,
        };
        let before = word[..layer.left]
            .iter()
            .filter(|s| matches!(s, Slot::S(_)))
            .count();
        let koszul = field.sign(layer.map.degree * before as i64);
        for (vw, vc) in &value.terms {
            let mut w = Vec::with_capacity(layer.left + vw.len() + layer.right);
            w.extend_from_slice(&word[..layer.left]);
            w.extend_from_slice(vw);
            w.extend_from_slice(&word[layer.left + layer.map.arity..]);
            out.add_term(w, c.mul(vc).mul(&koszul));
        }
    }
    out
}

/// Applies a displayed composite right to left: the last layer acts
/// first.
pub fn apply_layers(layers: &[Layer], input: &SlotComb) -> SlotComb {
    let mut cur = input.clone();
    for layer in layers.iter().rev() {
        cur = apply_layer(layer, &cur);
    }
    cur
}
