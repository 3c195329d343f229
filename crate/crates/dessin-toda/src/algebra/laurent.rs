//! Series in 1/λ truncated at a fixed order, 2x2 matrices of them, and the
//! cyclic products over several spectral variables used by the n-point formulas.
//!
//! Multi-variable kernels 1/(λ_a − λ_b) are always expanded in the region
//! |λ_0| > |λ_1| > ... ordered by variable index.

use super::ring::{q, Rational, Ring};
use super::AlgebraError;

#[derive(Clone, PartialEq, Debug)]
pub struct Tail<C: Ring> {
    /// `c[k]` is the coefficient of λ^{-k}.
    c: Vec<C>,
}

impl<C: Ring> Tail<C> {
    pub fn zero(order: usize) -> Self {
        Tail {
            c: vec![C::zero_r(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut t = Tail::zero(order);
        t.c[0] = C::one_r();
        t
    }

    pub fn from_coeffs(c: Vec<C>) -> Self {
        assert!(!c.is_empty());
        Tail { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> C {
        self.c.get(k).cloned().unwrap_or_else(C::zero_r)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn set(&mut self, k: usize, v: C) {
        if k < self.c.len() {
            self.c[k] = v;
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Tail {
            c: (0..=n).map(|k| self.c[k].plus(&o.c[k])).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Tail {
            c: self.c.iter().map(|x| x.negate()).collect(),
        }
    }

    pub fn scale_by(&self, k: &C) -> Self {
        Tail {
            c: self.c.iter().map(|x| x.times(k)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Tail {
            c: self.c.iter().map(|x| x.scale(r)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut c = vec![C::zero_r(); n + 1];
        for i in 0..=n {
            if self.c[i].is_zero_r() {
                continue;
            }
            for j in 0..=(n - i) {
                if o.c[j].is_zero_r() {
                    continue;
                }
                c[i + j] = c[i + j].plus(&self.c[i].times(&o.c[j]));
            }
        }
        Tail { c }
    }

    /// Multiply by λ^{-s}.
    pub fn shift_down(&self, s: usize) -> Self {
        let n = self.order();
        let mut c = vec![C::zero_r(); n + 1];
        for k in 0..=n {
            if k + s <= n {
                c[k + s] = self.c[k].clone();
            }
        }
        Tail { c }
    }

    /// Multiply by λ; the constant coefficient must vanish and the order drops by one.
    pub fn shift_up(&self) -> Result<Self, AlgebraError> {
        if !self.c[0].is_zero_r() {
            return Err(AlgebraError::Domain("positive power of λ produced".into()));
        }
        Ok(Tail {
            c: self.c[1..].to_vec(),
        })
    }

    /// λ → −λ.
    pub fn reflect(&self) -> Self {
        Tail {
            c: self
                .c
                .iter()
                .enumerate()
                .map(|(k, x)| if k % 2 == 1 { x.negate() } else { x.clone() })
                .collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Tail {
            c: (0..=order).map(|k| self.coeff(k)).collect(),
        }
    }

    pub fn map_into<D: Ring, F: Fn(&C) -> D>(&self, f: F) -> Tail<D> {
        Tail {
            c: self.c.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero_r())
    }
}

/// A 2x2 matrix of tails.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat2<C: Ring> {
    pub e: [[Tail<C>; 2]; 2],
}

impl<C: Ring> Mat2<C> {
    pub fn new(a: Tail<C>, b: Tail<C>, c: Tail<C>, d: Tail<C>) -> Self {
        Mat2 {
            e: [[a, b], [c, d]],
        }
    }

    pub fn order(&self) -> usize {
        self.e
            .iter()
            .flat_map(|r| r.iter().map(|t| t.order()))
            .min()
            .unwrap()
    }

    pub fn get(&self, i: usize, j: usize) -> &Tail<C> {
        &self.e[i][j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let m = |i: usize, j: usize| self.e[i][0].mul(&o.e[0][j]).add(&self.e[i][1].mul(&o.e[1][j]));
        Mat2::new(m(0, 0), m(0, 1), m(1, 0), m(1, 1))
    }

    pub fn trace(&self) -> Tail<C> {
        self.e[0][0].add(&self.e[1][1])
    }

    pub fn det(&self) -> Tail<C> {
        self.e[0][0]
            .mul(&self.e[1][1])
            .sub(&self.e[0][1].mul(&self.e[1][0]))
    }

    /// Coefficient matrix of λ^{-k}.
    pub fn coeff(&self, k: usize) -> [[C; 2]; 2] {
        [
            [self.e[0][0].coeff(k), self.e[0][1].coeff(k)],
            [self.e[1][0].coeff(k), self.e[1][1].coeff(k)],
        ]
    }

    pub fn map_into<D: Ring, F: Fn(&C) -> D + Copy>(&self, f: F) -> Mat2<D> {
        Mat2::new(
            self.e[0][0].map_into(f),
            self.e[0][1].map_into(f),
            self.e[1][0].map_into(f),
            self.e[1][1].map_into(f),
        )
    }
}

fn mat_mul<C: Ring>(a: &[[C; 2]; 2], b: &[[C; 2]; 2]) -> [[C; 2]; 2] {
    let m = |i: usize, j: usize| a[i][0].times(&b[0][j]).plus(&a[i][1].times(&b[1][j]));
    [[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]]
}

/// Coefficient of Π_v λ_v^{e_v} in Π_{(a,b) ∈ edges} 1/(λ_a − λ_b), expanded in
/// the index-ordered region. `edges` must form a subgraph of a single cycle.
pub fn pure_edges_coefficient(edges: &[(usize, usize)], exps: &[i64]) -> i64 {
    let mut e = exps.to_vec();
    let mut edges = edges.to_vec();
    let mut sign = 1i64;
    loop {
        if edges.is_empty() {
            return if e.iter().all(|&x| x == 0) { sign } else { 0 };
        }
        let mut deg = vec![0usize; e.len()];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        if (0..e.len()).any(|v| deg[v] == 0 && e[v] != 0) {
            return 0;
        }
        let leaf = (0..e.len()).find(|&v| deg[v] == 1);
        match leaf {
            Some(v) => {
                let pos = edges.iter().position(|&(a, b)| a == v || b == v).unwrap();
                let (a, b) = edges.remove(pos);
                let (small, large) = (a.min(b), a.max(b));
                if a > b {
                    sign = -sign;
                }
                let i = if v == small { -e[v] - 1 } else { e[v] };
                if i < 0 {
                    return 0;
                }
                e[small] += i + 1;
                e[large] -= i;
            }
            None => {
                // a full cycle: one free index on an edge at the smallest vertex
                let vmin = edges.iter().map(|&(a, b)| a.min(b)).min().unwrap();
                let pos = edges
                    .iter()
                    .position(|&(a, b)| a == vmin || b == vmin)
                    .unwrap();
                let (a, b) = edges[pos];
                let large = a.max(b);
                let s = if a > b { -1 } else { 1 };
                let mut rest = edges.clone();
                rest.remove(pos);
                let mut total = 0i64;
                let bound = -e[vmin] - 1;
                for i in 0..=bound.max(-1) {
                    let mut e2 = e.clone();
                    e2[vmin] += i + 1;
                    e2[large] -= i;
                    total += pure_edges_coefficient(&rest, &e2);
                }
                return sign * s * total;
            }
        }
    }
}

/// Coefficient of λ_0^{e_0} λ_1^{e_1} in 1/(λ_0 − λ_1)^2.
pub fn double_pole_coefficient(e0: i64, e1: i64) -> i64 {
    if e1 >= 0 && e0 == -e1 - 2 {
        e1 + 1
    } else {
        0
    }
}

/// All orderings of 1..m−1 (the cyclic-class representatives fixing 0).
pub fn cyclic_representatives(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            prefix.push(x);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    let mut left: Vec<usize> = (1..m).collect();
    rec(&mut prefix, &mut left, &mut out);
    out
}

/// A two-variable kernel K(λ, μ) = [pure]·1/(λ−μ) + Σ reg[i][j] λ^{-i-1} μ^{-j-1}.
#[derive(Clone, Debug)]
pub struct DoubleKernel<C: Ring> {
    pub pure: bool,
    pub reg: Vec<Vec<C>>,
}

impl<C: Ring> DoubleKernel<C> {
    pub fn order(&self) -> usize {
        self.reg.len().saturating_sub(1)
    }
}

/// Same coefficient as [`cyclic_kernel_coefficient`], found by enumerating which
/// edges take their regular part and eliminating the pure poles one by one.
/// Much slower; kept as an independent check of the transfer method.
pub fn cyclic_kernel_coefficient_by_assignment<C: Ring>(
    k: &DoubleKernel<C>,
    exps: &[i64],
) -> Result<C, AlgebraError> {
    let m = exps.len();
    if m < 2 {
        return Err(AlgebraError::Domain("cyclic products need at least two variables".into()));
    }
    let budget = -exps.iter().sum::<i64>() - m as i64;
    if budget < 0 {
        return Ok(C::zero_r());
    }
    let mut total = C::zero_r();
    for sigma in cyclic_representatives(m) {
        let edges: Vec<(usize, usize)> = (0..m).map(|j| (sigma[j], sigma[(j + 1) % m])).collect();
        let mut acc = C::zero_r();
        assign_regular(k, &edges, 0, budget, &mut Vec::new(), &mut Vec::new(), exps, &mut acc)?;
        total = total.plus(&acc);
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn assign_regular<C: Ring>(
    k: &DoubleKernel<C>,
    edges: &[(usize, usize)],
    t: usize,
    budget: i64,
    pure: &mut Vec<(usize, usize)>,
    regs: &mut Vec<(usize, usize, usize, usize)>,
    exps: &[i64],
    acc: &mut C,
) -> Result<(), AlgebraError> {
    if t == edges.len() {
        if budget != 0 {
            return Ok(());
        }
        if !k.pure && !pure.is_empty() {
            return Ok(());
        }
        let mut e = exps.to_vec();
        let mut coef = C::one_r();
        for &(a, b, i, j) in regs.iter() {
            e[a] += i as i64 + 1;
            e[b] += j as i64 + 1;
            coef = coef.times(&k.reg[i][j]);
        }
        let c = pure_edges_coefficient(pure, &e);
        if c != 0 {
            *acc = acc.plus(&coef.scale(&q(c)));
        }
        return Ok(());
    }
    let (a, b) = edges[t];
    if k.pure {
        pure.push((a, b));
        assign_regular(k, edges, t + 1, budget, pure, regs, exps, acc)?;
        pure.pop();
    }
    if budget <= 0 {
        return Ok(());
    }
    for s in 1..=budget {
        for i in 0..s as usize {
            let j = s as usize - 1 - i;
            if i > k.order() || j > k.order() {
                continue;
            }
            if k.reg[i][j].is_zero_r() {
                continue;
            }
            regs.push((a, b, i, j));
            assign_regular(k, edges, t + 1, budget - s, pure, regs, exps, acc)?;
            regs.pop();
        }
    }
    Ok(())
}

/// Same coefficient as [`cyclic_trace_coefficient`], by enumerating the orders
/// taken from each resolvent factor. Kept as an independent check.
pub fn cyclic_trace_coefficient_by_assignment<C: Ring>(r: &Mat2<C>, exps: &[i64]) -> Result<C, AlgebraError> {
    let m = exps.len();
    if m < 2 {
        return Err(AlgebraError::Domain("cyclic products need at least two variables".into()));
    }
    let budget = -exps.iter().sum::<i64>() - m as i64;
    if budget < 0 {
        return Ok(C::zero_r());
    }
    if budget as usize > r.order() {
        return Err(AlgebraError::Order("resolvent order too small for the requested coefficient".into()));
    }
    let coeffs: Vec<[[C; 2]; 2]> = (0..=budget as usize).map(|k| r.coeff(k)).collect();
    let mut total = C::zero_r();
    let mut comps = Vec::new();
    compositions(budget as usize, m, &mut Vec::new(), &mut comps);
    for sigma in cyclic_representatives(m) {
        let edges: Vec<(usize, usize)> = (0..m).map(|j| (sigma[j], sigma[(j + 1) % m])).collect();
        for kv in &comps {
            let e: Vec<i64> = (0..m).map(|v| exps[v] + kv[v] as i64).collect();
            let c = pure_edges_coefficient(&edges, &e);
            if c == 0 {
                continue;
            }
            let mut prod = coeffs[kv[sigma[0]]].clone();
            for &v in &sigma[1..] {
                prod = mat_mul(&prod, &coeffs[kv[v]]);
            }
            let tr = prod[0][0].plus(&prod[1][1]);
            total = total.plus(&tr.scale(&q(c)));
        }
    }
    Ok(total)
}

/// 2x2 matrices over a ring, for accumulating ordered products along a cycle.
#[derive(Clone, PartialEq, Debug)]
pub struct Square<C: Ring>(pub [[C; 2]; 2]);

impl<C: Ring> Square<C> {
    pub fn trace(&self) -> C {
        self.0[0][0].plus(&self.0[1][1])
    }
}

impl<C: Ring> Ring for Square<C> {
    fn zero_r() -> Self {
        Square([[C::zero_r(), C::zero_r()], [C::zero_r(), C::zero_r()]])
    }
    fn one_r() -> Self {
        Square([[C::one_r(), C::zero_r()], [C::zero_r(), C::one_r()]])
    }
    fn is_zero_r(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_zero_r())
    }
    fn plus(&self, o: &Self) -> Self {
        let a = |i: usize, j: usize| self.0[i][j].plus(&o.0[i][j]);
        Square([[a(0, 0), a(0, 1)], [a(1, 0), a(1, 1)]])
    }
    fn times(&self, o: &Self) -> Self {
        Square(mat_mul(&self.0, &o.0))
    }
    fn negate(&self) -> Self {
        Square(self.0.clone().map(|r| r.map(|x| x.negate())))
    }
    fn from_rational(r: &Rational) -> Self {
        Square([[C::from_rational(r), C::zero_r()], [C::zero_r(), C::from_rational(r)]])
    }
    fn scale(&self, r: &Rational) -> Self {
        Square(self.0.clone().map(|row| row.map(|x| x.scale(r))))
    }
    fn try_div(&self, _o: &Self) -> Option<Self> {
        None
    }
}

/// Coefficient of Π λ_v^{e_v} in
/// Σ_{σ fixing 0} Π_j F_{σ(j)}(λ_{σ(j)}) K(λ_{σ(j)}, λ_{σ(j+1)}),
/// where F(λ) = Σ_k vertex(k) λ^{-k} (k ≤ max_k) and
/// K(λ, μ) = [pure]/(λ−μ) + Σ reg(i, j) λ^{-i-1} μ^{-j-1} (i, j ≤ reg_order).
///
/// Each variable appears in one vertex factor and two edges, so after fixing the
/// exponent of λ_0 on the closing edge the cycle is a chain: walking along it,
/// the exponent carried into the next vertex and the degree used so far
/// determine everything that follows.
pub fn cycle_coefficient<E, V, K>(
    exps: &[i64],
    vertex: V,
    max_k: usize,
    pure: bool,
    reg: K,
    reg_order: Option<usize>,
) -> Result<E, AlgebraError>
where
    E: Ring,
    V: Fn(usize, usize) -> E,
    K: Fn(usize, usize) -> E,
{
    let m = exps.len();
    if m < 2 {
        return Err(AlgebraError::Domain("cyclic products need at least two variables".into()));
    }
    let budget = -exps.iter().sum::<i64>() - m as i64;
    if budget < 0 {
        return Ok(E::zero_r());
    }
    let budget = budget as usize;
    let mut total = E::zero_r();
    for sigma in cyclic_representatives(m) {
        for k0 in 0..=budget.min(max_k) {
            let w0 = vertex(0, k0);
            if w0.is_zero_r() {
                continue;
            }
            // s: exponent of λ_0 on the closing edge
            for s in (exps[0] + k0 as i64 + 1)..=-1 {
                let mut states: std::collections::BTreeMap<(i64, usize), E> = Default::default();
                states.insert((exps[0] + k0 as i64 - s, k0), w0.clone());
                for j in 0..m {
                    let (a, b) = (sigma[j], sigma[(j + 1) % m]);
                    let closing = j == m - 1;
                    let mut next: std::collections::BTreeMap<(i64, usize), E> = Default::default();
                    let mut push = |y: i64, used: usize, e: E| {
                        if closing {
                            if y != s || used != budget {
                                return;
                            }
                            let slot = next.entry((y, used)).or_insert_with(E::zero_r);
                            *slot = slot.plus(&e);
                            return;
                        }
                        for k in 0..=(budget - used).min(max_k) {
                            let w = vertex(b, k);
                            if w.is_zero_r() {
                                continue;
                            }
                            let x = exps[b] + k as i64 - y;
                            let slot = next.entry((x, used + k)).or_insert_with(E::zero_r);
                            *slot = slot.plus(&e.times(&w));
                        }
                    };
                    for ((x, used), e) in &states {
                        let (x, used) = (*x, *used);
                        if pure {
                            if a < b && x <= -1 {
                                push(-x - 1, used, e.clone());
                            } else if a > b && x >= 0 {
                                push(-x - 1, used, e.negate());
                            }
                        }
                        if x <= -1 {
                            let i = (-x - 1) as usize;
                            if reg_order.is_some_and(|o| i > o) || used + i + 1 > budget {
                                continue;
                            }
                            let jmax = budget - used - i - 1;
                            let jmax = reg_order.map_or(jmax, |o| jmax.min(o));
                            for jj in 0..=jmax {
                                let c = reg(i, jj);
                                if c.is_zero_r() {
                                    continue;
                                }
                                push(-(jj as i64) - 1, used + i + jj + 1, e.times(&c));
                            }
                        }
                    }
                    states = next;
                    if states.is_empty() {
                        break;
                    }
                }
                for e in states.values() {
                    total = total.plus(e);
                }
            }
        }
    }
    Ok(total)
}

/// Coefficient of Π λ_v^{e_v} in Σ_{σ fixing 0} Π_j K(λ_{σ(j)}, λ_{σ(j+1)}).
/// Regular entries past the stored order count as zero, so callers size the
/// kernel to at least the total degree they extract.
pub fn cyclic_kernel_coefficient<C: Ring>(
    k: &DoubleKernel<C>,
    exps: &[i64],
) -> Result<C, AlgebraError> {
    let one = C::one_r();
    let zero = C::zero_r();
    cycle_coefficient(
        exps,
        |_, d| if d == 0 { one.clone() } else { zero.clone() },
        0,
        k.pure,
        |i, j| k.reg[i][j].clone(),
        Some(k.order()),
    )
}

/// Coefficient of Π λ_v^{e_v} in
/// Σ_{σ fixing 0} tr Π_j R(λ_{σ(j)}) / Π_j (λ_{σ(j)} − λ_{σ(j+1)}).
pub fn cyclic_trace_coefficient<C: Ring>(r: &Mat2<C>, exps: &[i64]) -> Result<C, AlgebraError> {
    let budget = -exps.iter().sum::<i64>() - exps.len() as i64;
    if budget > r.order() as i64 {
        return Err(AlgebraError::Order("resolvent order too small for the requested coefficient".into()));
    }
    let coeffs: Vec<Square<C>> = (0..=r.order()).map(|k| Square(r.coeff(k))).collect();
    let s: Square<C> = cycle_coefficient(
        exps,
        |_, k| coeffs[k].clone(),
        r.order(),
        true,
        |_, _| Square::zero_r(),
        Some(0),
    )?;
    Ok(s.trace())
}

fn compositions(n: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if parts == 1 {
        cur.push(n);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for k in 0..=n {
        cur.push(k);
        compositions(n - k, parts - 1, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{q, Rational};

    #[test]
    fn tail_product_truncates() {
        let a: Tail<Rational> = Tail::from_coeffs(vec![q(1), q(1), q(0)]);
        let b = a.mul(&a);
        assert_eq!(b.coeffs(), &[q(1), q(2), q(1)]);
        assert_eq!(a.reflect().coeffs(), &[q(1), q(-1), q(0)]);
    }

    #[test]
    fn single_pole_expansion() {
        // 1/(λ0 − λ1) = Σ λ1^i λ0^{-i-1}
        assert_eq!(pure_edges_coefficient(&[(0, 1)], &[-3, 2]), 1);
        assert_eq!(pure_edges_coefficient(&[(1, 0)], &[-3, 2]), -1);
        assert_eq!(pure_edges_coefficient(&[(0, 1)], &[-1, -1]), 0);
    }

    #[test]
    fn two_cycle_is_minus_double_pole() {
        for e1 in 0..4 {
            let e0 = -e1 - 2;
            assert_eq!(
                pure_edges_coefficient(&[(0, 1), (1, 0)], &[e0, e1]),
                -double_pole_coefficient(e0, e1)
            );
        }
    }

    #[test]
    fn pure_kernel_two_point_cancels_double_pole() {
        let k: DoubleKernel<Rational> = DoubleKernel {
            pure: true,
            reg: vec![vec![q(0); 3]; 3],
        };
        for e1 in -3i64..3 {
            for e0 in -6i64..0 {
                let v = cyclic_kernel_coefficient(&k, &[e0, e1]).unwrap();
                // (−1)^{m−1} Σ − δ/(λ−μ)^2
                let total = -v - q(double_pole_coefficient(e0, e1));
                assert_eq!(total, q(0), "at {:?}", (e0, e1));
            }
        }
    }

    #[test]
    fn three_cycles_of_pure_poles_cancel() {
        let k: DoubleKernel<Rational> = DoubleKernel {
            pure: true,
            reg: vec![vec![q(0)]],
        };
        for e in [[-2i64, -1, 0], [-3, 0, 0], [-1, -2, 0], [-4, 1, 0], [-2, 0, -1]] {
            assert_eq!(cyclic_kernel_coefficient(&k, &e).unwrap(), q(0), "{:?}", e);
        }
    }

    #[test]
    fn constant_regular_kernels_give_symmetric_products() {
        // K = λ^{-1} μ^{-1}: every cyclic product is Π λ_v^{-2}, (m−1)! times
        let k: DoubleKernel<Rational> = DoubleKernel {
            pure: false,
            reg: vec![vec![q(1)]],
        };
        assert_eq!(cyclic_kernel_coefficient(&k, &[-2, -2, -2]).unwrap(), q(2));
        assert_eq!(cyclic_kernel_coefficient(&k, &[-3, -2, -1]).unwrap(), q(0));
    }

    #[test]
    fn representatives_count() {
        assert_eq!(cyclic_representatives(4).len(), 6);
        assert!(cyclic_representatives(3).iter().all(|s| s[0] == 0));
    }

    #[test]
    fn transfer_matches_assignment_enumeration() {
        let k = crate::dessins::a_kernel(6);
        for e in [vec![-2i64, -3], vec![-3, -2, -2], vec![-2, -2, -2, -2], vec![-4, -2, -3]] {
            assert_eq!(
                cyclic_kernel_coefficient(&k, &e).unwrap(),
                cyclic_kernel_coefficient_by_assignment(&k, &e).unwrap(),
                "{:?}",
                e
            );
        }
        let r = crate::lue::m_matrix(6);
        for e in [vec![-2i64, -3], vec![-3, -2, -2], vec![-2, -3, -2, -2]] {
            assert_eq!(
                cyclic_trace_coefficient(&r, &e).unwrap(),
                cyclic_trace_coefficient_by_assignment(&r, &e).unwrap(),
                "{:?}",
                e
            );
        }
    }
}
