//! Vertex-relative normalized cochain calculus on the Leavitt algebra,
//! with cochains as lazy evaluators on monomial tensors.
//!
//! A weight-`n` cochain consumes tensors of `n` non-degenerate
//! monomials; evaluators carry a weight profile and a declared degree
//! used in Koszul signs. On top of the calculus sit the deformation
//! retract (`psi`, `phi1`, `homotopy_h`), the transferred family
//! `phi_k` with its two defining formulas, and the bounded extensional
//! equality used by all identity suites.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::CalcError;
use crate::field::{Field, Scalar};
use crate::hatcomplex::{brace_hat, brace_leavitt, delta_prime, HatElement};
use crate::leavitt::{
    derivation_d, equals, mono_mul, mono_mul_opt, mul, LeavittElement, LeavittMonomial,
};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};
use crate::report::{Counterexample, SuiteReport};

/// True when the monomial equals a corner idempotent in the algebra, so
/// its class dies in the tensor factors of the normalized complex.
pub fn is_idempotent_class(q: &Quiver, m: &LeavittMonomial) -> bool {
    if m.is_idempotent() {
        return true;
    }
    if m.degree() != 0 || !m.is_diagonal() {
        return false;
    }
    let x = LeavittElement::monomial(Field::Q, m.clone());
    let e = LeavittElement::idempotent(Field::Q, m.left_corner());
    equals(q, &x, &e).unwrap_or(false)
}

/// Corner-composable tensor of non-degenerate monomials. The base
/// vertex carries the empty tensor and the left end of the chain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonomialTensor {
    pub base: VertexId,
    pub factors: Vec<LeavittMonomial>,
}

impl MonomialTensor {
    pub fn empty(v: VertexId) -> MonomialTensor {
        MonomialTensor { base: v, factors: Vec::new() }
    }

    /// `None` when adjacent corners mismatch or a factor is an
    /// idempotent class element.
    pub fn new(q: &Quiver, factors: Vec<LeavittMonomial>) -> Option<MonomialTensor> {
        let first = factors.first()?;
        let base = first.left_corner();
        let mut at = base;
        for f in &factors {
            if f.left_corner() != at || is_idempotent_class(q, f) {
                return None;
            }
            at = f.right_corner();
        }
        Some(MonomialTensor { base, factors })
    }

    pub fn weight(&self) -> usize {
        self.factors.len()
    }

    pub fn letters(&self) -> usize {
        self.factors.iter().map(|m| m.letters()).sum()
    }

    /// Corner vertex between factor `i` and factor `i+1` (0 = left end).
    pub fn junction(&self, i: usize) -> VertexId {
        if i == 0 {
            self.base
        } else {
            self.factors[i - 1].right_corner()
        }
    }

    pub fn right_corner(&self) -> VertexId {
        self.junction(self.weight())
    }

    /// Contiguous sub-tensor `[from, to)`, based at the inner junction.
    pub fn slice(&self, from: usize, to: usize) -> MonomialTensor {
        MonomialTensor { base: self.junction(from), factors: self.factors[from..to].to_vec() }
    }

    pub fn render(&self, q: &Quiver) -> String {
        if self.factors.is_empty() {
            return format!("(empty at {})", q.vertex_name(self.base));
        }
        let parts: Vec<String> =
            self.factors.iter().map(|m| format!("s {}", m.render(q))).collect();
        parts.join(" (x) ")
    }
}

/// Lazy cochain: a weight profile, a declared degree entering Koszul
/// signs, and an evaluation rule. Tensors outside the profile evaluate
/// to zero.
#[derive(Clone)]
pub struct CochainEvaluator<'q> {
    pub field: Field,
    pub weights: BTreeSet<usize>,
    pub degree: i64,
    rule: Rc<dyn Fn(&MonomialTensor) -> LeavittElement + 'q>,
}

impl<'q> CochainEvaluator<'q> {
    pub fn zero(field: Field, degree: i64) -> CochainEvaluator<'q> {
        CochainEvaluator {
            field,
            weights: BTreeSet::new(),
            degree,
            rule: Rc::new(move |_| LeavittElement::zero(field)),
        }
    }

    pub fn atom<F>(
        field: Field,
        weights: BTreeSet<usize>,
        degree: i64,
        rule: F,
    ) -> CochainEvaluator<'q>
    where
        F: Fn(&MonomialTensor) -> LeavittElement + 'q,
    {
        CochainEvaluator { field, weights, degree, rule: Rc::new(rule) }
    }

    /// Finite-table cochain: zero outside the listed tensors.
    pub fn from_table(
        field: Field,
        degree: i64,
        table: BTreeMap<MonomialTensor, LeavittElement>,
    ) -> CochainEvaluator<'q> {
        let weights = table.keys().map(|t| t.weight()).collect();
        CochainEvaluator {
            field,
            weights,
            degree,
            rule: Rc::new(move |t| {
                table.get(t).cloned().unwrap_or_else(|| LeavittElement::zero(field))
            }),
        }
    }

    pub fn eval(&self, t: &MonomialTensor) -> LeavittElement {
        if !self.weights.contains(&t.weight())
            || t.factors.iter().any(|m| m.is_idempotent())
        {
            return LeavittElement::zero(self.field);
        }
        (self.rule)(t)
    }

    /// Pointwise sum. The degree label of the first summand with a
    /// nonempty profile wins; callers add evaluators of equal degree.
    pub fn add(&self, other: &CochainEvaluator<'q>) -> CochainEvaluator<'q> {
        assert_eq!(self.field, other.field, "mixed coefficient fields");
        let degree = if self.weights.is_empty() { other.degree } else { self.degree };
        let a = self.clone();
        let b = other.clone();
        CochainEvaluator {
            field: self.field,
            weights: self.weights.union(&other.weights).cloned().collect(),
            degree,
            rule: Rc::new(move |t| a.eval(t).add(&b.eval(t))),
        }
    }

    pub fn scale(&self, c: &Scalar) -> CochainEvaluator<'q> {
        let a = self.clone();
        let c = c.clone();
        CochainEvaluator {
            field: self.field,
            weights: self.weights.clone(),
            degree: self.degree,
            rule: Rc::new(move |t| a.eval(t).scale(&c)),
        }
    }

    pub fn scale_sign(&self, exponent: i64) -> CochainEvaluator<'q> {
        self.scale(&self.field.sign(exponent))
    }

    pub fn neg(&self) -> CochainEvaluator<'q> {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn sub(&self, other: &CochainEvaluator<'q>) -> CochainEvaluator<'q> {
        self.add(&other.neg())
    }
}

fn ghost_elem(q: &Quiver, field: Field, a: ArrowId) -> LeavittElement {
    LeavittElement::monomial(field, LeavittMonomial::ghost_path(q, Path::of_arrow(q, a)))
}

fn real_mono(q: &Quiver, a: ArrowId) -> LeavittMonomial {
    LeavittMonomial::real_path(q, Path::of_arrow(q, a))
}

/// The contraction image of a single bar slot: each derivation summand
/// `x (x)s v (x) y` spreads over the arrow fan at `v` as
/// `-(x alpha*, s alpha, y)`, keeping only first slots that survive in
/// the normalized complex.
pub type BarSplice = BTreeMap<(LeavittMonomial, ArrowId), LeavittElement>;

fn bar_splice(q: &Quiver, z: &LeavittElement) -> BarSplice {
    let field = z.field;
    let mut out: BarSplice = BTreeMap::new();
    for (d, c) in &derivation_d(q, z).terms {
        for &alpha in q.arrows_from(d.mid) {
            let ghost = LeavittMonomial::ghost_path(q, Path::of_arrow(q, alpha));
            let Some(first) = mono_mul_opt(q, &d.left, &ghost) else {
                continue;
            };
            if is_idempotent_class(q, &first) {
                continue;
            }
            out.entry((first, alpha))
                .or_insert_with(|| LeavittElement::zero(field))
                .add_term(d.right.clone(), c.neg());
        }
    }
    out.retain(|_, v| !v.is_empty_form());
    out
}

pub fn iota_pi_bar(q: &Quiver, z: &LeavittElement) -> Result<BarSplice, CalcError> {
    if let Some(v) = q.first_sink() {
        return Err(CalcError::SinkQuiver { vertex: q.vertex_name(v).to_string() });
    }
    Ok(bar_splice(q, z))
}

/// Projection onto the two-copy complex: the weight-0 part lands in the
/// plain copy corner by corner, the weight-1 part is the ghost-arrow
/// contraction of the values on single arrows, and all higher weights
/// are ignored.
pub fn psi(q: &Quiver, f: &CochainEvaluator) -> HatElement {
    let field = f.field;
    let mut plain = LeavittElement::zero(field);
    if f.weights.contains(&0) {
        for v in q.vertices() {
            let val = f.eval(&MonomialTensor::empty(v));
            let e = LeavittElement::idempotent(field, v);
            plain = plain.add(&mul(q, &e, &mul(q, &val, &e)));
        }
    }
    let mut shifted = LeavittElement::zero(field);
    if f.weights.contains(&1) {
        for a in q.arrows() {
            let Some(t) = MonomialTensor::new(q, alloc::vec![real_mono(q, a)]) else {
                continue;
            };
            let val = f.eval(&t);
            let lproj = LeavittElement::idempotent(field, q.tgt(a));
            let rproj = LeavittElement::idempotent(field, q.src(a));
            let val = mul(q, &lproj, &mul(q, &val, &rproj));
            shifted = shifted.add(&mul(q, &ghost_elem(q, field, a), &val));
        }
        shifted = shifted.neg();
    }
    HatElement::new(plain, shifted)
}

fn require_no_sinks(q: &Quiver) -> Result<(), CalcError> {
    match q.first_sink() {
        Some(v) => Err(CalcError::SinkQuiver { vertex: q.vertex_name(v).to_string() }),
        None => Ok(()),
    }
}

/// Section of `psi`: a plain element becomes the weight-0 corner
/// cochain, a shifted monomial `s^-1 u` becomes the weight-1 evaluator
/// `s v -> (-1)^((|v|-1)|u|) v{s^-1 u}'`.
pub fn phi1<'q>(q: &'q Quiver, x: &HatElement) -> Result<CochainEvaluator<'q>, CalcError> {
    require_no_sinks(q)?;
    let field = x.field();
    let degree = x.degree()?.unwrap_or(0);
    let plain = x.plain.clone();
    let shifted = x.shifted.clone();
    let mut weights = BTreeSet::new();
    weights.insert(0);
    weights.insert(1);
    Ok(CochainEvaluator::atom(field, weights, degree, move |t| match t.weight() {
        0 => {
            let e = LeavittElement::idempotent(field, t.base);
            mul(q, &e, &mul(q, &plain, &e))
        }
        1 => {
            let v = &t.factors[0];
            let v_elem = LeavittElement::monomial(field, v.clone());
            let mut out = LeavittElement::zero(field);
            for (u, c) in &shifted.terms {
                let arg = HatElement::from_shifted(LeavittElement::monomial(field, u.clone()));
                let b = brace_leavitt(q, &v_elem, &[arg]);
                let sign = field.sign((v.degree() - 1) * u.degree());
                out = out.add(&b.scale(&sign.mul(c)));
            }
            out
        }
        _ => LeavittElement::zero(field),
    }))
}

/// External differential of the normalized cochain complex: outer
/// multiplications at both ends and signed merges of adjacent slots.
pub fn differential_cochain<'q>(
    q: &'q Quiver,
    f: &CochainEvaluator<'q>,
) -> CochainEvaluator<'q> {
    let field = f.field;
    let fdeg = f.degree;
    let g = f.clone();
    let weights: BTreeSet<usize> = f.weights.iter().map(|w| w + 1).collect();
    CochainEvaluator::atom(field, weights, fdeg + 1, move |t| {
        let n1 = t.weight();
        let n = n1 - 1;
        let mut out = LeavittElement::zero(field);
        let a1 = &t.factors[0];
        let inner = g.eval(&t.slice(1, n1));
        if !inner.is_empty_form() {
            let first = mul(q, &LeavittElement::monomial(field, a1.clone()), &inner);
            out = out.add(&first.scale(&field.sign((a1.degree() - 1) * fdeg).neg()));
        }
        let last = &t.factors[n1 - 1];
        let inner = g.eval(&t.slice(0, n));
        if !inner.is_empty_form() {
            let eps: i64 =
                fdeg + t.factors[..n].iter().map(|m| m.degree() - 1).sum::<i64>();
            let tail = mul(q, &inner, &LeavittElement::monomial(field, last.clone()));
            out = out.add(&tail.scale(&field.sign(eps)));
        }
        let mut eps = fdeg + (t.factors[0].degree() - 1);
        for i in 2..=n1 {
            let prod = mono_mul(q, field, &t.factors[i - 2], &t.factors[i - 1]);
            for (m, c) in &prod.terms {
                let mut factors = t.factors[..i - 2].to_vec();
                factors.push(m.clone());
                factors.extend_from_slice(&t.factors[i..]);
                if let Some(t2) = MonomialTensor::new(q, factors) {
                    let val = g.eval(&t2);
                    out = out.add(&val.scale(&field.sign(eps).neg().mul(c)));
                }
            }
            if i <= n {
                eps += t.factors[i - 1].degree() - 1;
            }
        }
        out
    })
}

/// Cup product of evaluators: every admissible split of the input
/// tensor, with the Koszul sign of moving the second cochain past the
/// first block.
pub fn cup_cochain<'q>(
    q: &'q Quiver,
    f: &CochainEvaluator<'q>,
    g: &CochainEvaluator<'q>,
) -> CochainEvaluator<'q> {
    assert_eq!(f.field, g.field, "mixed coefficient fields");
    let field = f.field;
    let gdeg = g.degree;
    let a = f.clone();
    let b = g.clone();
    let mut weights = BTreeSet::new();
    for wf in &f.weights {
        for wg in &g.weights {
            weights.insert(wf + wg);
        }
    }
    CochainEvaluator::atom(field, weights, f.degree + g.degree, move |t| {
        let n = t.weight();
        let mut out = LeavittElement::zero(field);
        for p in 0..=n {
            if !a.weights.contains(&p) || !b.weights.contains(&(n - p)) {
                continue;
            }
            let left = a.eval(&t.slice(0, p));
            if left.is_empty_form() {
                continue;
            }
            let right = b.eval(&t.slice(p, n));
            if right.is_empty_form() {
                continue;
            }
            let eps: i64 =
                t.factors[..p].iter().map(|m| m.degree()).sum::<i64>() - p as i64;
            out = out.add(&mul(q, &left, &right).scale(&field.sign(eps * gdeg)));
        }
        out
    })
}

/// In-order disjoint placements of `k` blocks with admissible weights
/// into `n` inputs: each entry lists `(inputs before the block, block
/// weight)`.
fn block_assignments(
    n: usize,
    options: &[Vec<usize>],
) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut cur: Vec<(usize, usize)> = Vec::new();
    fn rec(
        n: usize,
        options: &[Vec<usize>],
        j: usize,
        min_gap: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if j == options.len() {
            out.push(cur.clone());
            return;
        }
        for gap in min_gap..=n {
            for &w in &options[j] {
                if gap + w > n {
                    continue;
                }
                cur.push((gap, w));
                rec(n, options, j + 1, gap + w, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, options, 0, 0, &mut cur, &mut out);
    out
}

/// Brace of evaluators: the blocks consume disjoint in-order windows of
/// the input, their values are re-barred into the outer cochain, and
/// each block carries the Koszul sign of its position.
pub fn brace_cochain<'q>(
    q: &'q Quiver,
    f: &CochainEvaluator<'q>,
    gs: &[CochainEvaluator<'q>],
) -> CochainEvaluator<'q> {
    if gs.is_empty() {
        return f.clone();
    }
    let field = f.field;
    let k = gs.len();
    let outer = f.clone();
    let blocks: Vec<CochainEvaluator<'q>> = gs.to_vec();
    let mut weights = BTreeSet::new();
    {
        let option_sets: Vec<Vec<usize>> =
            gs.iter().map(|g| g.weights.iter().cloned().collect()).collect();
        let mut sums: Vec<usize> = alloc::vec![0];
        for set in &option_sets {
            let mut next = Vec::new();
            for s in &sums {
                for w in set {
                    next.push(s + w);
                }
            }
            sums = next;
        }
        for wf in &f.weights {
            if *wf < k {
                continue;
            }
            for s in &sums {
                weights.insert(wf - k + s);
            }
        }
    }
    let degree = f.degree + gs.iter().map(|g| g.degree - 1).sum::<i64>();
    CochainEvaluator::atom(field, weights, degree, move |t| {
        let n = t.weight();
        let options: Vec<Vec<usize>> =
            blocks.iter().map(|g| g.weights.iter().cloned().collect()).collect();
        let mut out = LeavittElement::zero(field);
        for assignment in block_assignments(n, &options) {
            let consumed: usize = assignment.iter().map(|&(_, w)| w).sum();
            if !outer.weights.contains(&(n - consumed + k)) {
                continue;
            }
            let mut eps: i64 = 0;
            for (j, &(gap, _)) in assignment.iter().enumerate() {
                let pre: i64 =
                    t.factors[..gap].iter().map(|m| m.degree() - 1).sum();
                eps += (blocks[j].degree - 1) * pre;
            }
            let vals: Vec<LeavittElement> = assignment
                .iter()
                .enumerate()
                .map(|(j, &(gap, w))| blocks[j].eval(&t.slice(gap, gap + w)))
                .collect();
            if vals.iter().any(|v| v.is_empty_form()) {
                continue;
            }
            let mut expansions: Vec<(Vec<LeavittMonomial>, Scalar)> =
                alloc::vec![(Vec::new(), field.one())];
            for v in &vals {
                let mut next = Vec::new();
                for (monos, c) in &expansions {
                    for (m, cm) in &v.terms {
                        let mut ms = monos.clone();
                        ms.push(m.clone());
                        next.push((ms, c.mul(cm)));
                    }
                }
                expansions = next;
            }
            for (monos, c) in expansions {
                let mut factors: Vec<LeavittMonomial> = Vec::new();
                let mut at = 0usize;
                for (j, &(gap, w)) in assignment.iter().enumerate() {
                    factors.extend_from_slice(&t.factors[at..gap]);
                    factors.push(monos[j].clone());
                    at = gap + w;
                }
                factors.extend_from_slice(&t.factors[at..]);
                let Some(t2) = MonomialTensor::new(q, factors) else {
                    continue;
                };
                let val = outer.eval(&t2);
                out = out.add(&val.scale(&c.mul(&field.sign(eps))));
            }
        }
        out
    })
}

/// Contraction homotopy: consumes the weight `>= 2` components of `f`
/// by splicing the last slot through the bar contraction and
/// right-multiplying the residue.
pub fn homotopy_h<'q>(q: &'q Quiver, f: &CochainEvaluator<'q>) -> CochainEvaluator<'q> {
    let field = f.field;
    let fdeg = f.degree;
    let g = f.clone();
    let weights: BTreeSet<usize> =
        f.weights.iter().filter(|&&w| w >= 2).map(|w| w - 1).collect();
    CochainEvaluator::atom(field, weights, fdeg - 1, move |t| {
        let n = t.weight();
        let last = &t.factors[n - 1];
        let splice = bar_splice(q, &LeavittElement::monomial(field, last.clone()));
        let pre: i64 =
            t.factors[..n - 1].iter().map(|m| m.degree() - 1).sum::<i64>();
        let sign = field.sign(1 + fdeg + pre);
        let mut out = LeavittElement::zero(field);
        for ((w, alpha), y) in &splice {
            let mut factors = t.factors[..n - 1].to_vec();
            factors.push(w.clone());
            factors.push(real_mono(q, *alpha));
            let Some(t2) = MonomialTensor::new(q, factors) else {
                continue;
            };
            let val = g.eval(&t2);
            if val.is_empty_form() {
                continue;
            }
            out = out.add(&mul(q, &val, y));
        }
        out.scale(&sign)
    })
}

fn shifted_monomial_tuples(
    us: &[HatElement],
    field: Field,
) -> Vec<(Vec<LeavittMonomial>, Scalar)> {
    let mut tuples: Vec<(Vec<LeavittMonomial>, Scalar)> =
        alloc::vec![(Vec::new(), field.one())];
    for u in us {
        let mut next = Vec::new();
        for (tuple, c) in &tuples {
            for (m, cm) in &u.shifted.terms {
                let mut t = tuple.clone();
                t.push(m.clone());
                next.push((t, c.mul(cm)));
            }
        }
        tuples = next;
    }
    tuples
}

fn hat_degree_label(x: &HatElement) -> i64 {
    x.degree().ok().flatten().unwrap_or(0)
}

/// Closed formula for the transferred weight-1 family: on `s v` the
/// value is the brace `v{s^-1 u_1, ..., s^-1 u_k}'` with the sign
/// `(-1)^((|v|-1)e_k + sum (|u_i|-1)(k-i))` over internal degrees.
pub fn phi_k<'q>(
    q: &'q Quiver,
    us: &[HatElement],
) -> Result<CochainEvaluator<'q>, CalcError> {
    assert!(!us.is_empty(), "transferred family needs at least one input");
    require_no_sinks(q)?;
    if us.len() == 1 {
        return phi1(q, &us[0]);
    }
    let field = us[0].field();
    let k = us.len();
    let degree = us.iter().map(hat_degree_label).sum::<i64>() - k as i64 + 1;
    let tuples = shifted_monomial_tuples(us, field);
    let mut weights = BTreeSet::new();
    weights.insert(1);
    Ok(CochainEvaluator::atom(field, weights, degree, move |t| {
        let v = &t.factors[0];
        let v_elem = LeavittElement::monomial(field, v.clone());
        let mut out = LeavittElement::zero(field);
        for (tuple, c) in &tuples {
            let eps_k: i64 = tuple.iter().map(|m| m.degree()).sum();
            let mut pre: i64 = 0;
            for (i, m) in tuple.iter().enumerate() {
                pre += (m.degree() - 1) * (k - 1 - i) as i64;
            }
            let args: Vec<HatElement> = tuple
                .iter()
                .map(|m| {
                    HatElement::from_shifted(LeavittElement::monomial(field, m.clone()))
                })
                .collect();
            let b = brace_leavitt(q, &v_elem, &args);
            let sign = field.sign((v.degree() - 1) * eps_k + pre);
            out = out.add(&b.scale(&sign.mul(c)));
        }
        out
    }))
}

/// The same family by the homotopy recursion: each step cups the
/// previous evaluator with the section of the next input and applies
/// the contraction homotopy.
pub fn phi_k_recursive<'q>(
    q: &'q Quiver,
    us: &[HatElement],
) -> Result<CochainEvaluator<'q>, CalcError> {
    assert!(!us.is_empty(), "transferred family needs at least one input");
    if us.len() == 1 {
        return phi1(q, &us[0]);
    }
    let k = us.len();
    let prev = phi_k_recursive(q, &us[..k - 1])?;
    let last = phi1(q, &us[k - 1])?;
    let cup = cup_cochain(q, &prev, &last);
    Ok(homotopy_h(q, &cup).scale_sign(k as i64 - 1))
}

/// Transferred products on the two-copy complex: the differential for
/// `k = 1`, and the projected cup of transferred evaluators above.
pub fn transfer_m_k(q: &Quiver, us: &[HatElement]) -> Result<HatElement, CalcError> {
    assert!(!us.is_empty(), "transferred product needs at least one input");
    if us.len() == 1 {
        return Ok(delta_prime(q, &us[0]));
    }
    let k = us.len() as i64;
    let prev = phi_k(q, &us[..us.len() - 1])?;
    let last = phi1(q, &us[us.len() - 1])?;
    let cup = cup_cochain(q, &prev, &last);
    Ok(psi(q, &cup).scale(&us[0].field().sign((k - 1) * (k - 2) / 2)))
}

/// Sign-twisted transferred family entering the comparison identity:
/// on `s a` the value is `(-1)^((|a|-1) e) a{s^-1 v_1, ...}'` with `e`
/// the total internal degree of the arguments.
pub fn phi_tilde<'q>(
    q: &'q Quiver,
    vs: &[HatElement],
) -> Result<CochainEvaluator<'q>, CalcError> {
    require_no_sinks(q)?;
    assert!(!vs.is_empty(), "sign-twisted family needs at least one input");
    let field = vs[0].field();
    let t_count = vs.len() as i64;
    let degree = vs.iter().map(hat_degree_label).sum::<i64>() - t_count + 1;
    let tuples = shifted_monomial_tuples(vs, field);
    let mut weights = BTreeSet::new();
    weights.insert(1);
    Ok(CochainEvaluator::atom(field, weights, degree, move |t| {
        let a = &t.factors[0];
        let a_elem = LeavittElement::monomial(field, a.clone());
        let mut out = LeavittElement::zero(field);
        for (tuple, c) in &tuples {
            let total: i64 = tuple.iter().map(|m| m.degree()).sum();
            let args: Vec<HatElement> = tuple
                .iter()
                .map(|m| {
                    HatElement::from_shifted(LeavittElement::monomial(field, m.clone()))
                })
                .collect();
            let b = brace_leavitt(q, &a_elem, &args);
            let sign = field.sign((a.degree() - 1) * total);
            out = out.add(&b.scale(&sign.mul(c)));
        }
        out
    }))
}

/// All composable tensors over the weight set with the letter bound;
/// weight 0 contributes one empty tensor per vertex.
pub fn enumerate_tensors(
    q: &Quiver,
    weights: &BTreeSet<usize>,
    max_letters: usize,
) -> Vec<MonomialTensor> {
    let mut candidates: Vec<LeavittMonomial> = Vec::new();
    for n in 1..=max_letters {
        for m in crate::leavitt::enumerate_monomials(q, n, false) {
            if !is_idempotent_class(q, &m) {
                candidates.push(m);
            }
        }
    }
    let mut out = Vec::new();
    for &w in weights {
        if w == 0 {
            for v in q.vertices() {
                out.push(MonomialTensor::empty(v));
            }
            continue;
        }
        let mut stack: Vec<(Vec<LeavittMonomial>, usize)> = alloc::vec![(Vec::new(), 0)];
        while let Some((factors, letters)) = stack.pop() {
            if factors.len() == w {
                out.push(MonomialTensor {
                    base: factors[0].left_corner(),
                    factors,
                });
                continue;
            }
            for m in candidates.iter().rev() {
                if letters + m.letters() > max_letters {
                    continue;
                }
                if let Some(last) = factors.last() {
                    if last.right_corner() != m.left_corner() {
                        continue;
                    }
                }
                let mut next = factors.clone();
                next.push(m.clone());
                stack.push((next, letters + m.letters()));
            }
        }
    }
    out
}

/// Extensional equality over all tensors within the letter bound and
/// the union of the two weight profiles.
pub fn bounded_equal(
    q: &Quiver,
    f: &CochainEvaluator,
    g: &CochainEvaluator,
    max_letters: usize,
    budget: usize,
) -> Result<Option<Counterexample>, CalcError> {
    assert_eq!(f.field, g.field, "mixed coefficient fields");
    let weights: BTreeSet<usize> = f.weights.union(&g.weights).cloned().collect();
    let tensors = enumerate_tensors(q, &weights, max_letters);
    if tensors.len() > budget {
        return Err(CalcError::BudgetExceeded { limit: budget });
    }
    for t in &tensors {
        let lhs = f.eval(t);
        let rhs = g.eval(t);
        if !equals(q, &lhs, &rhs)? {
            return Ok(Some(Counterexample {
                inputs: alloc::vec![t.render(q)],
                lhs: lhs.render(q),
                rhs: rhs.render(q),
            }));
        }
    }
    Ok(None)
}

/// Insertion data for the comparison identity: `p` in-order disjoint
/// windows `(j_i, l_i)` inside `q` argument slots.
pub(crate) fn insertion_data(p: usize, qn: usize) -> Vec<Vec<(usize, usize)>> {
    block_assignments(qn, &alloc::vec![(0..=qn).collect::<Vec<usize>>(); p])
}

fn hat_shift(m: &LeavittMonomial, field: Field) -> HatElement {
    HatElement::from_shifted(LeavittElement::monomial(field, m.clone()))
}

/// Verifies the comparison identity between the braced and the
/// interleaved sign-twisted families on every tuple of shifted
/// monomials within the letter bound. Tuples with `p = 0` or `q = 0`
/// degenerate to identities checked elsewhere and count as passing.
pub fn check_binf_morphism(
    q: &Quiver,
    field: Field,
    p: usize,
    qn: usize,
    arg_letters: usize,
    eval_letters: usize,
) -> Result<SuiteReport, CalcError> {
    require_no_sinks(q)?;
    let mut report = SuiteReport::new("binf-morphism");
    let mut atoms: Vec<LeavittMonomial> =
        q.vertices().map(LeavittMonomial::idempotent).collect();
    atoms.extend(crate::leavitt::enumerate_monomials_up_to(q, arg_letters, true));
    if p == 0 || qn == 0 {
        report.record(true, || unreachable!());
        return Ok(report);
    }
    let mut u_tuples: Vec<Vec<LeavittMonomial>> = alloc::vec![Vec::new()];
    for _ in 0..p {
        let mut next = Vec::new();
        for t in &u_tuples {
            for m in &atoms {
                let mut t2 = t.clone();
                t2.push(m.clone());
                next.push(t2);
            }
        }
        u_tuples = next;
    }
    let mut v_tuples: Vec<Vec<LeavittMonomial>> = alloc::vec![Vec::new()];
    for _ in 0..qn {
        let mut next = Vec::new();
        for t in &v_tuples {
            for m in &atoms {
                let mut t2 = t.clone();
                t2.push(m.clone());
                next.push(t2);
            }
        }
        v_tuples = next;
    }
    let data = insertion_data(p, qn);
    for ut in &u_tuples {
        let us: Vec<HatElement> = ut.iter().map(|m| hat_shift(m, field)).collect();
        let hat_u: Vec<i64> = ut.iter().map(|m| m.degree() + 1).collect();
        let sum_u: i64 = hat_u.iter().sum();
        for vt in &v_tuples {
            let vs: Vec<HatElement> = vt.iter().map(|m| hat_shift(m, field)).collect();
            let hat_v: Vec<i64> = vt.iter().map(|m| m.degree() + 1).collect();
            let sum_v: i64 = hat_v.iter().sum();
            let eps = (sum_u - p as i64) * (sum_v - qn as i64);
            let outer = phi_tilde(q, &vs)?;
            let block = phi_tilde(q, &us)?;
            let lhs = brace_cochain(q, &outer, &[block]).scale_sign(eps);
            let mut rhs = CochainEvaluator::zero(field, lhs.degree);
            for datum in &data {
                let mut tuple: Vec<HatElement> = Vec::new();
                let mut eta: i64 = 0;
                let mut at = 0usize;
                let mut ok = true;
                for (i, &(j, l)) in datum.iter().enumerate() {
                    for v in &vs[at..j] {
                        tuple.push(v.clone());
                    }
                    let w = match brace_hat(q, &us[i], &vs[j..j + l]) {
                        Ok(w) => w,
                        Err(e) => return Err(e),
                    };
                    if w.is_empty_form() {
                        ok = false;
                        break;
                    }
                    tuple.push(w);
                    let pre: i64 = hat_v[..j].iter().map(|d| d - 1).sum();
                    eta += (hat_u[i] - 1) * pre;
                    at = j + l;
                }
                if !ok {
                    continue;
                }
                for v in &vs[at..] {
                    tuple.push(v.clone());
                }
                rhs = rhs.add(&phi_tilde(q, &tuple)?.scale_sign(eta));
            }
            let cex = bounded_equal(q, &lhs, &rhs, eval_letters, 1_000_000)?;
            report.record(cex.is_none(), || {
                let inner = cex.unwrap();
                let mut inputs = alloc::vec![
                    format!(
                        "u = [{}]",
                        ut.iter()
                            .map(|m| format!("s^-1 {}", m.render(q)))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    format!(
                        "v = [{}]",
                        vt.iter()
                            .map(|m| format!("s^-1 {}", m.render(q)))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                ];
                inputs.extend(inner.inputs);
                Counterexample { inputs, lhs: inner.lhs, rhs: inner.rhs }
            });
        }
    }
    Ok(report)
}

fn hat_atom_pool(q: &Quiver, field: Field, max_letters: usize) -> Vec<HatElement> {
    let mut monos: Vec<LeavittMonomial> =
        q.vertices().map(LeavittMonomial::idempotent).collect();
    monos.extend(crate::leavitt::enumerate_monomials_up_to(q, max_letters, true));
    let mut out = Vec::new();
    for m in monos {
        let e = LeavittElement::monomial(field, m);
        out.push(HatElement::from_plain(e.clone()));
        out.push(HatElement::from_shifted(e));
    }
    out
}

fn labelled_cex(
    label: &str,
    inner: Option<Counterexample>,
    fallback: (&str, &str),
) -> Counterexample {
    match inner {
        Some(mut c) => {
            c.inputs.insert(0, label.to_string());
            c
        }
        None => Counterexample {
            inputs: alloc::vec![label.to_string()],
            lhs: fallback.0.to_string(),
            rhs: fallback.1.to_string(),
        },
    }
}

/// The deformation-retract identity suite: the projection retracts the
/// section exactly, the defect of the other composite is the boundary
/// of the homotopy, and the homotopy annihilates section values, bare
/// final arrows, and its own images (which the projection also kills).
/// Operator identities are tested extensionally on all tensors with at
/// most `max_letters` letters; pools are built over corner-diagonal
/// monomials.
pub fn check_retract_suite(
    q: &Quiver,
    field: Field,
    max_letters: usize,
) -> Result<Vec<SuiteReport>, CalcError> {
    require_no_sinks(q)?;
    let budget = 1_000_000;
    let zero = CochainEvaluator::zero(field, 0);

    let mut projection = SuiteReport::new("psi-phi-identity");
    for x in &hat_atom_pool(q, field, 2) {
        let back = psi(q, &phi1(q, x)?);
        let ok = crate::hatcomplex::hat_equals(q, &back, x)?;
        projection.record(ok, || Counterexample {
            inputs: alloc::vec![x.render(q)],
            lhs: back.render(q),
            rhs: x.render(q),
        });
    }

    let atoms = hat_atom_pool(q, field, 1);
    let mut pool: Vec<(String, CochainEvaluator)> = Vec::new();
    for x in &atoms {
        pool.push((format!("phi[{}]", x.render(q)), phi1(q, x)?));
        pool.push((
            format!("delta phi[{}]", x.render(q)),
            differential_cochain(q, &phi1(q, x)?),
        ));
    }
    for x in atoms.iter().take(4) {
        for y in atoms.iter().take(4) {
            let label = format!("phi[{}] u phi[{}]", x.render(q), y.render(q));
            let cup = cup_cochain(q, &phi1(q, x)?, &phi1(q, y)?);
            pool.push((format!("H[{}]", label), homotopy_h(q, &cup)));
            pool.push((label, cup));
        }
    }

    let mut homotopy = SuiteReport::new("homotopy-equation");
    for (label, g) in &pool {
        let lhs = g.sub(&phi1(q, &psi(q, g))?);
        let rhs = differential_cochain(q, &homotopy_h(q, g))
            .add(&homotopy_h(q, &differential_cochain(q, g)));
        let cex = bounded_equal(q, &lhs, &rhs, max_letters, budget)?;
        let ok = cex.is_none();
        homotopy.record(ok, || labelled_cex(label, cex, ("", "")));
    }

    let mut section_kill = SuiteReport::new("homotopy-annihilates-section");
    for x in &atoms {
        let g = homotopy_h(q, &phi1(q, x)?);
        let cex = bounded_equal(q, &g, &zero, max_letters, budget)?;
        let ok = cex.is_none();
        section_kill.record(ok, || labelled_cex(&format!("H phi[{}]", x.render(q)), cex, ("", "")));
    }

    let mut tail_kill = SuiteReport::new("homotopy-kills-final-arrows");
    let mut weights = BTreeSet::new();
    for (_, g) in &pool {
        weights.extend(homotopy_h(q, g).weights.clone());
    }
    let tensors = enumerate_tensors(q, &weights, max_letters);
    for (label, g) in &pool {
        let h = homotopy_h(q, g);
        let mut bad: Option<Counterexample> = None;
        for t in &tensors {
            let last = match t.factors.last() {
                Some(m) => m,
                None => continue,
            };
            if !(last.letters() == 1 && last.degree() == 1) {
                continue;
            }
            let val = h.eval(t);
            if !crate::leavitt::is_zero(q, &val)? {
                bad = Some(Counterexample {
                    inputs: alloc::vec![label.clone(), t.render(q)],
                    lhs: val.render(q),
                    rhs: String::from("0"),
                });
                break;
            }
        }
        let ok = bad.is_none();
        tail_kill.record(ok, || bad.unwrap());
    }

    let mut image_kill = SuiteReport::new("homotopy-annihilates-images");
    let mut small: Vec<(String, CochainEvaluator)> = Vec::new();
    for x in &atoms {
        small.push((format!("phi[{}]", x.render(q)), phi1(q, x)?));
    }
    for x in atoms.iter().take(3) {
        for y in atoms.iter().take(3) {
            small.push((
                format!("phi[{}] u phi[{}]", x.render(q), y.render(q)),
                cup_cochain(q, &phi1(q, x)?, &phi1(q, y)?),
            ));
        }
    }
    for (l1, g1) in &small {
        for (l2, g2) in &small {
            let inner = cup_cochain(q, g1, &homotopy_h(q, g2));
            let label = format!("{} u H[{}]", l1, l2);
            let cex = bounded_equal(q, &homotopy_h(q, &inner), &zero, max_letters, budget)?;
            let proj = psi(q, &inner);
            let proj_ok = crate::hatcomplex::hat_is_zero(q, &proj)?;
            let ok = cex.is_none() && proj_ok;
            image_kill.record(ok, || labelled_cex(&label, cex, (&proj.render(q), "0")));
        }
    }

    Ok(alloc::vec![projection, homotopy, section_kill, tail_kill, image_kill])
}

/// The transferred-structure suite: the two-argument transferred
/// product is the cup product and the three-argument one vanishes, the
/// closed form of the transferred family agrees with its recursion, and
/// the family satisfies the homotopy-morphism relations up to `n_cap`
/// arguments. Cochain identities are tested on tensors with at most
/// `max_letters` letters.
pub fn check_transfer_suite(
    q: &Quiver,
    field: Field,
    max_letters: usize,
    n_cap: usize,
) -> Result<Vec<SuiteReport>, CalcError> {
    require_no_sinks(q)?;
    let budget = 1_000_000;

    let mut products = SuiteReport::new("transferred-products");
    let pairs = hat_atom_pool(q, field, 2);
    for x in &pairs {
        let m1 = transfer_m_k(q, core::slice::from_ref(x))?;
        let d = delta_prime(q, x);
        let ok = crate::hatcomplex::hat_equals(q, &m1, &d)?;
        products.record(ok, || Counterexample {
            inputs: alloc::vec![x.render(q)],
            lhs: m1.render(q),
            rhs: d.render(q),
        });
    }
    for x in &pairs {
        for y in &pairs {
            let m2 = transfer_m_k(q, &[x.clone(), y.clone()])?;
            let cup = crate::hatcomplex::cup_hat(q, x, y);
            let ok = crate::hatcomplex::hat_equals(q, &m2, &cup)?;
            products.record(ok, || Counterexample {
                inputs: alloc::vec![x.render(q), y.render(q)],
                lhs: m2.render(q),
                rhs: cup.render(q),
            });
        }
    }
    let singles = hat_atom_pool(q, field, 1);
    for x in &singles {
        for y in &singles {
            for z in &singles {
                let m3 = transfer_m_k(q, &[x.clone(), y.clone(), z.clone()])?;
                let ok = crate::hatcomplex::hat_is_zero(q, &m3)?;
                products.record(ok, || Counterexample {
                    inputs: alloc::vec![x.render(q), y.render(q), z.render(q)],
                    lhs: m3.render(q),
                    rhs: String::from("0"),
                });
            }
        }
    }

    let mut closed = SuiteReport::new("closed-form-recursion");
    let shifted_pairs: Vec<HatElement> =
        pairs.iter().filter(|x| x.plain.is_empty_form()).cloned().collect();
    let shifted_singles: Vec<HatElement> =
        singles.iter().filter(|x| x.plain.is_empty_form()).cloned().collect();
    for u1 in &shifted_pairs {
        for u2 in &shifted_pairs {
            let us = [u1.clone(), u2.clone()];
            let lhs = phi_k(q, &us)?;
            let rhs = phi_k_recursive(q, &us)?;
            let cex = bounded_equal(q, &lhs, &rhs, max_letters, budget)?;
            let ok = cex.is_none();
            closed.record(ok, || {
                labelled_cex(&format!("[{}, {}]", u1.render(q), u2.render(q)), cex, ("", ""))
            });
        }
    }
    if n_cap >= 3 {
        for u1 in &shifted_singles {
            for u2 in &shifted_singles {
                for u3 in &shifted_singles {
                    let us = [u1.clone(), u2.clone(), u3.clone()];
                    let lhs = phi_k(q, &us)?;
                    let rhs = phi_k_recursive(q, &us)?;
                    let cex = bounded_equal(q, &lhs, &rhs, max_letters, budget)?;
                    let ok = cex.is_none();
                    closed.record(ok, || {
                        labelled_cex(
                            &format!(
                                "[{}, {}, {}]",
                                u1.render(q),
                                u2.render(q),
                                u3.render(q)
                            ),
                            cex,
                            ("", ""),
                        )
                    });
                }
            }
        }
    }

    let data: crate::binfverify::AInfMorphism<HatElement, CochainEvaluator> =
        crate::binfverify::AInfMorphism {
            source_m: Box::new(move |args| match args.len() {
                1 => Ok(delta_prime(q, &args[0])),
                2 => Ok(crate::hatcomplex::cup_hat(q, &args[0], &args[1])),
                _ => Ok(HatElement::zero(field)),
            }),
            map: Box::new(move |args| phi_k(q, args)),
            target_m1: Box::new(move |g| Ok(differential_cochain(q, g))),
            target_m2: Box::new(move |g1, g2| Ok(cup_cochain(q, g1, g2))),
            add: Box::new(|g1, g2| g1.add(g2)),
            scale_sign: Box::new(|g, e| g.scale_sign(e)),
            degree: Box::new(|x| x.degree().ok().flatten().unwrap_or(0)),
            equal: Box::new(move |g1, g2| bounded_equal(q, g1, g2, max_letters, budget)),
            render: Box::new(move |x| x.render(q)),
        };
    let morphism =
        crate::binfverify::check_a_infinity_morphism("transfer-morphism", &data, &singles, n_cap)?;

    Ok(alloc::vec![products, closed, morphism])
}
