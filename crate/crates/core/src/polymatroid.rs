//! Polymatroid functions given by value tables, for exhaustive checks on
//! small ground sets.
//!
//! A [`SubmodularOracle`] stores `f` on all `2^n` subsets (bit `i` of a mask
//! is element `i`), so every polytope here is tested inequality by
//! inequality.

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::bruteforce::lp::{LinearProgram, LpOutcome, Relation};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::rational::{self, Rational};

/// Largest ground set accepted.
pub const MAX_GROUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmodularOracle {
    size: usize,
    table: Vec<Rational>,
}

/// The polytopes attached to `f` and `g(U) = f(E) - f(E - U)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Region {
    /// `x ≥ 0, x(A) ≤ f(A)`.
    P,
    /// `x ≥ 0, x(A) ≥ g(A)`.
    Q,
    /// `P` with `x(E) = f(E)`.
    B,
    /// `Q` with `x(E) = g(E)`.
    C,
    /// `x ≤ c, x(A) ≥ g(A)`.
    QCapped(Rational),
    /// `QCapped(c)` with `x(E) = g(E)`.
    CCapped(Rational),
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        Err(Error::TooLarge {
            what: "polymatroid ground set",
            size: n,
            limit: MAX_GROUND,
        })
    } else {
        Ok(())
    }
}

impl SubmodularOracle {
    /// Tabulates `f`. The axioms are not checked here; see [`Self::check_axioms`].
    pub fn from_fn(size: usize, f: impl Fn(u64) -> Rational) -> Result<Self> {
        check_size(size)?;
        let table = (0..1u64 << size).map(f).collect();
        Ok(Self { size, table })
    }

    /// Rank function of the graphic matroid of `g`.
    pub fn graphic(g: &Graph) -> Result<Self> {
        Self::from_fn(g.edge_count(), |m| rational::int(g.rank_mask(m) as i64))
    }

    /// `f(A) = |A|`.
    pub fn free(size: usize) -> Result<Self> {
        Self::from_fn(size, |m| rational::int(m.count_ones() as i64))
    }

    /// Rank of the uniform matroid `U_{k,n}`: `min(|A|, k)`.
    pub fn uniform(rank: usize, size: usize) -> Result<Self> {
        Self::from_fn(size, |m| rational::int((m.count_ones() as usize).min(rank) as i64))
    }

    /// A random polymatroid function: a scaled matroid rank (graphic on a few
    /// vertices, or uniform) plus a nonnegative modular part.
    pub fn random(rng: &mut impl Rng, size: usize) -> Result<Self> {
        check_size(size)?;
        let scale = rational::int(rng.gen_range(1..=3));
        let modular: Vec<Rational> = (0..size).map(|_| rational::int(rng.gen_range(0..=3))).collect();
        let rank: Box<dyn Fn(u64) -> usize> = if rng.gen_bool(0.5) {
            let k = rng.gen_range(1..=size.max(1));
            Box::new(move |m: u64| (m.count_ones() as usize).min(k))
        } else {
            let n = rng.gen_range(2..=4usize);
            let vertices: Vec<String> = (0..n).map(|v| v.to_string()).collect();
            let edges: Vec<_> = (0..size)
                .map(|e| {
                    let u = rng.gen_range(0..n);
                    let v = (u + rng.gen_range(1..n)) % n;
                    (format!("e{e}"), u.to_string(), v.to_string(), rational::one())
                })
                .collect();
            let g = Graph::new(vertices, edges)?;
            Box::new(move |m: u64| g.rank_mask(m))
        };
        Self::from_fn(size, |m| {
            &scale * rational::int(rank(m) as i64) + bits(m).fold(Rational::zero(), |a, e| a + &modular[e])
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn full_mask(&self) -> u64 {
        (1u64 << self.size) - 1
    }

    pub fn value(&self, mask: u64) -> &Rational {
        &self.table[mask as usize]
    }

    /// `g(U) = f(E) - f(E - U)`.
    pub fn corank(&self, mask: u64) -> Rational {
        let all = self.full_mask();
        self.value(all) - self.value(all & !mask)
    }

    /// `h(A) = -f(E) + f(E - A) + c|A|`, the function whose polymatroid is
    /// the image of `Q_{g,c}` under `x ↦ c - x`.
    pub fn translated(&self, c: &Rational) -> Self {
        let all = self.full_mask();
        let table = (0..=all)
            .map(|m| {
                -self.value(all) + self.value(all & !m) + c * rational::int(m.count_ones() as i64)
            })
            .collect();
        Self {
            size: self.size,
            table,
        }
    }

    /// Normalized, nondecreasing and submodular, each checked on every
    /// subset and element pair. Returns the first failure.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        if !self.table[0].is_zero() {
            return Err(format!("f(∅) = {}", rational::format(&self.table[0])));
        }
        for m in 0..=self.full_mask() {
            for i in (0..self.size).filter(|i| m >> i & 1 == 0) {
                let mi = m | 1 << i;
                if self.value(mi) < self.value(m) {
                    return Err(format!("not nondecreasing at {m:#b} + {i}"));
                }
                for j in (i + 1..self.size).filter(|j| m >> j & 1 == 0) {
                    let mj = m | 1 << j;
                    if self.value(mi) + self.value(mj) < self.value(m) + self.value(mi | mj) {
                        return Err(format!("not submodular at {m:#b} with {i}, {j}"));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_vector(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.size {
            return Err(Error::InvalidArgument(format!(
                "vector has {} entries for a ground set of {}",
                x.len(),
                self.size
            )));
        }
        Ok(())
    }

    /// `x(A)` for every mask.
    fn subset_sums(&self, x: &[Rational]) -> Vec<Rational> {
        let mut sums = vec![Rational::zero(); 1 << self.size];
        for m in 1..sums.len() {
            let low = m.trailing_zeros() as usize;
            sums[m] = &sums[m & (m - 1)] + &x[low];
        }
        sums
    }

    /// Membership of `x` in `h · region`.
    pub fn membership(&self, x: &[Rational], h: &Rational, region: &Region) -> Result<bool> {
        self.check_vector(x)?;
        let sums = self.subset_sums(x);
        let all = self.full_mask();
        let nonneg = || x.iter().all(|v| !v.is_negative());
        let below_f = || (0..=all).all(|m| sums[m as usize] <= h * self.value(m));
        let above_g = || (0..=all).all(|m| sums[m as usize] >= h * self.corank(m));
        let capped = |c: &Rational| x.iter().all(|v| *v <= h * c);
        let top_f = || sums[all as usize] == h * self.value(all);
        Ok(match region {
            Region::P => nonneg() && below_f(),
            Region::B => nonneg() && below_f() && top_f(),
            Region::Q => nonneg() && above_g(),
            Region::C => nonneg() && above_g() && top_f(),
            Region::QCapped(c) => capped(c) && above_g(),
            Region::CCapped(c) => capped(c) && above_g() && top_f(),
        })
    }

    /// `α = max x(A)/f(A)` over `f(A) > 0` and `β = min x(A)/g(A)` over
    /// `g(A) > 0`.
    pub fn alpha_beta(&self, x: &[Rational]) -> Result<(Rational, Rational)> {
        self.check_vector(x)?;
        if x.iter().any(|v| !v.is_positive()) {
            return Err(Error::InvalidArgument("vector must be positive".into()));
        }
        let sums = self.subset_sums(x);
        let mut alpha: Option<Rational> = None;
        let mut beta: Option<Rational> = None;
        for m in 1..=self.full_mask() {
            let s = &sums[m as usize];
            let f = self.value(m);
            if f.is_positive() {
                let r = s / f;
                if alpha.as_ref().is_none_or(|a| r > *a) {
                    alpha = Some(r);
                }
            } else if s.is_positive() {
                return Err(Error::InvalidArgument(
                    "vector is positive on a set of rank zero".into(),
                ));
            }
            let g = self.corank(m);
            if g.is_positive() {
                let r = s / g;
                if beta.as_ref().is_none_or(|b| r < *b) {
                    beta = Some(r);
                }
            }
        }
        match (alpha, beta) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::InvalidArgument("f(E) must be positive".into())),
        }
    }

    /// `max{ε : y + ε𝟙_j ∈ h·P_f}` = `min{h f(A) - y(A) : j ∈ A}`.
    fn room(&self, y: &[Rational], j: usize, h: &Rational) -> Rational {
        let sums = self.subset_sums(y);
        (0..=self.full_mask())
            .filter(|m| m >> j & 1 == 1)
            .map(|m| h * self.value(m) - &sums[m as usize])
            .min()
            .expect("the singleton contains j")
    }

    /// Greedy `P_f`-basis of `x`, saturating elements in the given order.
    pub fn p_basis_in_order(&self, x: &[Rational], order: &[usize]) -> Result<Vec<Rational>> {
        self.check_vector(x)?;
        if x.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidArgument("vector must be nonnegative".into()));
        }
        let one = rational::one();
        let mut y = vec![Rational::zero(); self.size];
        for &j in order {
            let cap = &x[j] - &y[j];
            let eps = self.room(&y, j, &one).min(cap);
            y[j] += eps;
        }
        Ok(y)
    }

    /// Greedy `P_f`-basis of `x` in element order.
    pub fn p_basis(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.p_basis_in_order(x, &(0..self.size).collect::<Vec<_>>())
    }

    /// The cheapest `P_f`-basis of `x`: greedy in nondecreasing cost order.
    pub fn greedy_min_cost_base(&self, x: &[Rational], costs: &[Rational]) -> Result<Vec<Rational>> {
        self.check_vector(costs)?;
        self.p_basis_in_order(x, &crate::adjust::greedy_order(costs))
    }

    /// Raises each element, cheapest first, by `min{α f(A) - (s+z)(A) : j ∈ A}`.
    pub fn generic_reinforce(&self, s: &[Rational], costs: &[Rational]) -> Result<Vec<Rational>> {
        self.check_vector(costs)?;
        let (alpha, _) = self.alpha_beta(s)?;
        let mut x = s.to_vec();
        let mut z = vec![Rational::zero(); self.size];
        for j in crate::adjust::greedy_order(costs) {
            let eps = self.room(&x, j, &alpha);
            x[j] += &eps;
            z[j] = eps;
        }
        Ok(z)
    }

    /// Lowers each element, cheapest first, by `min{(s-z)(A) - β g(A) : j ∈ A}`.
    ///
    /// With `c ≥ max(f(E), |s|∞)` this is the reinforcement greedy run in
    /// the translated polymatroid `t(Q_{g,c})`.
    pub fn generic_sparsify(&self, s: &[Rational], costs: &[Rational]) -> Result<Vec<Rational>> {
        self.check_vector(costs)?;
        let (_, beta) = self.alpha_beta(s)?;
        let mut x = s.to_vec();
        let mut z = vec![Rational::zero(); self.size];
        for j in crate::adjust::greedy_order(costs) {
            let sums = self.subset_sums(&x);
            let eps = (0..=self.full_mask())
                .filter(|m| m >> j & 1 == 1)
                .map(|m| &sums[m as usize] - &beta * self.corank(m))
                .min()
                .expect("the singleton contains j");
            x[j] -= &eps;
            z[j] = eps;
        }
        Ok(z)
    }

    /// `min{m·z : z ≥ 0, s + z ∈ h·B_f}` by linear programming over all
    /// subset inequalities; `None` when the set is empty.
    pub fn min_cost_reinforcement(&self, s: &[Rational], costs: &[Rational], h: &Rational) -> Result<Option<Rational>> {
        self.adjustment_lp(s, costs, h, true)
    }

    /// `min{m·z : z ≥ 0, s - z ∈ h·C_g}`; `None` when the set is empty.
    pub fn min_cost_sparsification(&self, s: &[Rational], costs: &[Rational], h: &Rational) -> Result<Option<Rational>> {
        self.adjustment_lp(s, costs, h, false)
    }

    fn adjustment_lp(&self, s: &[Rational], costs: &[Rational], h: &Rational, increase: bool) -> Result<Option<Rational>> {
        self.check_vector(s)?;
        self.check_vector(costs)?;
        let n = self.size;
        let all = self.full_mask();
        let sums = self.subset_sums(s);
        let sign = if increase { rational::one() } else { -rational::one() };
        let mut lp = LinearProgram::new(costs.to_vec());
        let row = |m: u64| -> Vec<Rational> {
            (0..n)
                .map(|i| if m >> i & 1 == 1 { sign.clone() } else { Rational::zero() })
                .collect()
        };
        for m in 1..=all {
            // (s ± z)(A) against h f(A) or h g(A)
            let s_a = &sums[m as usize];
            if increase {
                lp.constrain(row(m), Relation::Le, h * self.value(m) - s_a);
            } else {
                lp.constrain(row(m), Relation::Ge, h * self.corank(m) - s_a);
            }
        }
        lp.constrain(row(all), Relation::Eq, h * self.value(all) - &sums[all as usize]);
        if !increase {
            for (i, si) in s.iter().enumerate() {
                // s - z ≥ 0
                lp.constrain(row(1 << i), Relation::Ge, -si.clone());
            }
        }
        Ok(match lp.solve() {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => {
                return Err(Error::Internal("adjustment LP is unbounded".into()));
            }
        })
    }

    /// Whether some `b ∈ B_f` dominates `x`, by linear programming.
    pub fn dominated_by_base(&self, x: &[Rational]) -> Result<bool> {
        self.check_vector(x)?;
        let n = self.size;
        let all = self.full_mask();
        let mut lp = LinearProgram::new(vec![Rational::zero(); n]);
        let row = |m: u64| -> Vec<Rational> {
            (0..n)
                .map(|i| if m >> i & 1 == 1 { rational::one() } else { Rational::zero() })
                .collect()
        };
        for m in 1..=all {
            lp.constrain(row(m), Relation::Le, self.value(m).clone());
        }
        lp.constrain(row(all), Relation::Eq, self.value(all).clone());
        for (i, xi) in x.iter().enumerate() {
            lp.constrain(row(1 << i), Relation::Ge, xi.clone());
        }
        Ok(matches!(lp.solve(), LpOutcome::Optimal { .. }))
    }
}
