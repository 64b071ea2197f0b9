//! Truncated power series with exact rational coefficients, the group of
//! pairs `(g, h)` under `(g₁,h₁)·(g₂,h₂) = (g₁∘g₂, h₁∘g₂ + h₂)`, characters
//! of the paths-and-cycles species, and compositional inversion through four
//! routes that must agree coefficient for coefficient:
//!
//! * direct coefficient recursion;
//! * the signed face sum over associahedra, `b_n = Σ_F (-1)^{n-dim F} a_F`;
//! * the noncrossing-partition sum with Catalan coefficients;
//! * for the second component, the cyclohedron face sum
//!   `d_n = Σ_F (-1)^{n-dim F} c_{f₀} a_{f₁} ⋯ a_{f_k}` and the pointed
//!   noncrossing sum.
//!
//! A pair stores `g(x) = x + Σ a_n x^{n+1}` through `a_1..a_{N-1}` and
//! `h(x) = Σ c_n x^n/n` through `c_1..c_N`; with the `x^n/n` convention the
//! `c_n` are exactly the character values on cycles, and the face formulas
//! stay integer-weighted.

use std::collections::BTreeSet;

use num::traits::{One, Zero};
use num::BigInt;
use serde_json::{json, Value};

use crate::graphs::{standard_cycle, standard_path, ComponentKind, Label, LabeledGraph};
use crate::noncrossing::{
    adjacent_closure, adjacent_closure_pointed, catalan_coefficient, catalan_coefficient_pointed,
    enumerate_nc, enumerate_pnc,
};
use crate::polytope::{assoc_face_profile, cyclo_face_profile};
use crate::{Error, Rational, Result};

fn q(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parses an exact rational like `-5/8` or `3`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational `{text}`: {e}")))
}

/// Parses a comma-separated list of exact rationals.
pub fn parse_coeff_list(text: &str) -> Result<Vec<Rational>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_rational).collect()
}

/// A power series with zero constant term, truncated at order `N`:
/// coefficients of `x^1 .. x^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "order must be at least 1");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order])
    }

    /// The identity series `x`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `x^n`, `1 <= n <= order`.
    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, value: Rational) {
        self.coeffs[n - 1] = value;
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0].is_one()
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        check_orders(self.order(), other.order())?;
        Ok(TruncatedSeries::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, factor: &Rational) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|a| a * factor).collect())
    }

    /// Built-in exact series: `id` (x), `zero`, `geom` (x/(1-x)), `altgeom`
    /// (x/(1+x)), `exp` (e^x - 1), `log` (ln(1+x)), `nlog` (-ln(1-x)).
    pub fn named(name: &str, order: usize) -> Option<TruncatedSeries> {
        let coeff = |n: usize| -> Option<Rational> {
            let n_i = n as i64;
            Some(match name {
                "id" => {
                    if n == 1 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }
                "zero" => Rational::zero(),
                "geom" => Rational::one(),
                "altgeom" => q(if n % 2 == 1 { 1 } else { -1 }),
                "exp" => Rational::new(BigInt::one(), factorial(n)),
                "log" => Rational::new(
                    BigInt::from(if n % 2 == 1 { 1 } else { -1 }),
                    BigInt::from(n_i),
                ),
                "nlog" => Rational::new(BigInt::one(), BigInt::from(n_i)),
                _ => return None,
            })
        };
        let coeffs: Option<Vec<Rational>> = (1..=order).map(coeff).collect();
        coeffs.map(TruncatedSeries::new)
    }
}

fn check_orders(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::OrderMismatch(a, b))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// The ordinary Bell polynomial
/// `B̂_{n,k}(x_1, …, x_{n-k+1}) = Σ k!/(j_1!…j_{n-k+1}!) Π x_i^{j_i}`,
/// summed over `j_1 + … = k` and `j_1 + 2 j_2 + … = n`.
pub fn bell_ordinary(n: usize, k: usize, xs: &[Rational]) -> Rational {
    assert!(k >= 1 && k <= n, "need 1 <= k <= n");
    assert!(xs.len() > n - k, "need x_1 .. x_{{n-k+1}}");
    let mut total = Rational::zero();
    let mut js: Vec<usize> = Vec::new();
    let ctx = BellContext {
        k,
        max_part: n - k + 1,
        xs,
    };
    bell_rec(&ctx, 1, k, n, &mut js, &mut total);
    total
}

struct BellContext<'a> {
    k: usize,
    max_part: usize,
    xs: &'a [Rational],
}

fn bell_rec(
    ctx: &BellContext<'_>,
    part: usize,
    count_left: usize,
    weight_left: usize,
    js: &mut Vec<usize>,
    total: &mut Rational,
) {
    if part == ctx.max_part {
        if count_left * part == weight_left {
            js.push(count_left);
            *total += bell_term(ctx.k, js, ctx.xs);
            js.pop();
        }
        return;
    }
    let cap = weight_left / part;
    for j in 0..=count_left.min(cap) {
        js.push(j);
        bell_rec(
            ctx,
            part + 1,
            count_left - j,
            weight_left - part * j,
            js,
            total,
        );
        js.pop();
    }
}

fn bell_term(k: usize, js: &[usize], xs: &[Rational]) -> Rational {
    let mut denominator = BigInt::one();
    let mut product = Rational::one();
    for (i, &j) in js.iter().enumerate() {
        denominator *= factorial(j);
        for _ in 0..j {
            product *= &xs[i];
        }
    }
    product * Rational::new(factorial(k), denominator)
}

/// Composition `f ∘ g` by the Faà di Bruno formula
/// `h_n = Σ_k f_k B̂_{n,k}(g_1, …, g_{n-k+1})`. `g` must have zero constant
/// term; the callers of this crate keep it monic.
pub fn compose(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_orders(f.order(), g.order())?;
    let order = f.order();
    let mut out = TruncatedSeries::zero(order);
    for n in 1..=order {
        let mut h_n = Rational::zero();
        for k in 1..=n {
            if f.coeff(k).is_zero() {
                continue;
            }
            h_n += f.coeff(k) * bell_ordinary(n, k, &g.coeffs[..n - k + 1]);
        }
        out.set_coeff(n, h_n);
    }
    Ok(out)
}

/// The compositional inverse of a monic series by coefficient recursion;
/// both `g ∘ result = x` and `result ∘ g = x` are asserted before returning.
pub fn inverse_direct(g: &TruncatedSeries) -> TruncatedSeries {
    assert!(g.is_monic(), "compositional inversion needs a monic series");
    let order = g.order();
    let mut inverse = TruncatedSeries::identity(order);
    for n in 2..=order {
        let err = compose(g, &inverse).expect("orders match");
        let correction = inverse.coeff(n) - err.coeff(n);
        inverse.set_coeff(n, correction);
    }
    let id = TruncatedSeries::identity(order);
    assert_eq!(compose(g, &inverse).unwrap(), id, "right inverse failed");
    assert_eq!(compose(&inverse, g).unwrap(), id, "left inverse failed");
    inverse
}

/// A pair `(g, h)` truncated at order `N`: `g = x + Σ_{n<N} a_n x^{n+1}`
/// stored through `a_1..a_{N-1}`, `h = Σ_{n≤N} c_n x^n/n` stored through
/// `c_1..c_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPair {
    a: Vec<Rational>,
    c: Vec<Rational>,
}

impl TruncatedPair {
    pub fn new(a: Vec<Rational>, c: Vec<Rational>) -> Result<Self> {
        if a.len() + 1 != c.len() {
            return Err(Error::OrderMismatch(a.len() + 1, c.len()));
        }
        Ok(TruncatedPair { a, c })
    }

    /// The unit `(x, 0)`.
    pub fn identity(order: usize) -> Self {
        assert!(order >= 1);
        TruncatedPair {
            a: vec![Rational::zero(); order - 1],
            c: vec![Rational::zero(); order],
        }
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    /// `a_n`, the coefficient of `x^{n+1}` in `g`; `1 <= n <= N-1`.
    pub fn a(&self, n: usize) -> &Rational {
        &self.a[n - 1]
    }

    /// `c_n`, the weight of `x^n/n` in `h`; `1 <= n <= N`.
    pub fn c(&self, n: usize) -> &Rational {
        &self.c[n - 1]
    }

    pub fn a_coeffs(&self) -> &[Rational] {
        &self.a
    }

    pub fn c_coeffs(&self) -> &[Rational] {
        &self.c
    }

    /// `g` as a plain truncated series of the same order.
    pub fn g_series(&self) -> TruncatedSeries {
        let mut coeffs = vec![Rational::one()];
        coeffs.extend(self.a.iter().cloned());
        TruncatedSeries::new(coeffs)
    }

    /// `h` as a plain truncated series: coefficient of `x^n` is `c_n / n`.
    pub fn h_series(&self) -> TruncatedSeries {
        TruncatedSeries::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, c)| c / q(i as i64 + 1))
                .collect(),
        )
    }

    /// Builds a pair from a monic `g` and a plain `h` of equal order.
    pub fn from_gh(g: &TruncatedSeries, h: &TruncatedSeries) -> Result<Self> {
        check_orders(g.order(), h.order())?;
        assert!(g.is_monic(), "first pair component must be monic");
        let order = g.order();
        Ok(TruncatedPair {
            a: (2..=order).map(|n| g.coeff(n).clone()).collect(),
            c: (1..=order).map(|n| h.coeff(n) * q(n as i64)).collect(),
        })
    }

    /// Membership in the subgroup where paths and cycles of sizes 1 and 2
    /// evaluate equally: `a_1 = c_1` and `a_2 = c_2`.
    pub fn in_cbar(&self) -> bool {
        let order = self.order();
        (order < 2 || self.a(1) == self.c(1)) && (order < 3 || self.a(2) == self.c(2))
    }

    /// JSON form: `{"order":N,"a":[...],"c":[...]}` with exact rationals as
    /// strings.
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "a": self.a.iter().map(Rational::to_string).collect::<Vec<_>>(),
            "c": self.c.iter().map(Rational::to_string).collect::<Vec<_>>(),
        })
    }
}

/// The group law `(g₁,h₁)·(g₂,h₂) = (g₁∘g₂, h₁∘g₂ + h₂)`.
pub fn group_mul(p1: &TruncatedPair, p2: &TruncatedPair) -> Result<TruncatedPair> {
    check_orders(p1.order(), p2.order())?;
    let g = compose(&p1.g_series(), &p2.g_series())?;
    let h = compose(&p1.h_series(), &p2.g_series())?.add(&p2.h_series())?;
    TruncatedPair::from_gh(&g, &h)
}

/// The group inverse `(g,h)^{-1} = (g^{⟨-1⟩}, -h ∘ g^{⟨-1⟩})`.
pub fn group_inv(p: &TruncatedPair) -> TruncatedPair {
    let g_inv = inverse_direct(&p.g_series());
    let h_inv = compose(&p.h_series(), &g_inv).expect("orders match").neg();
    TruncatedPair::from_gh(&g_inv, &h_inv).expect("orders match")
}

/// A character: the multiplicative evaluation determined by `a_n` on paths
/// of size `n` and `c_n` on cycles of size `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pair: TruncatedPair,
}

impl Character {
    pub fn new(pair: TruncatedPair) -> Self {
        Character { pair }
    }

    pub fn pair(&self) -> &TruncatedPair {
        &self.pair
    }

    pub fn order(&self) -> usize {
        self.pair.order()
    }

    pub fn eval(&self, graph: &LabeledGraph) -> Result<Rational> {
        character_eval(self, graph)
    }
}

/// Evaluates a character on a graph: the product over components of `a_size`
/// for paths and `c_size` for cycles; 1 on the empty graph.
pub fn character_eval(chi: &Character, graph: &LabeledGraph) -> Result<Rational> {
    let order = chi.order();
    let mut value = Rational::one();
    for comp in graph.components() {
        let size = comp.size();
        match comp.kind() {
            ComponentKind::Path => {
                if size + 1 > order {
                    return Err(Error::OrderExceeded(size, order));
                }
                value *= chi.pair.a(size);
            }
            ComponentKind::Cycle => {
                if size > order {
                    return Err(Error::OrderExceeded(size, order));
                }
                value *= chi.pair.c(size);
            }
        }
    }
    Ok(value)
}

/// Evaluates a linear combination term by term.
pub fn character_eval_lc(chi: &Character, lc: &crate::hopf::LinearCombination) -> Result<Rational> {
    let mut value = Rational::zero();
    for (graph, coeff) in lc.terms() {
        value += coeff * character_eval(chi, graph)?;
    }
    Ok(value)
}

/// The convolution `(ζ∗ξ)(g) = Σ_{I=S⊔T} ζ(g|_S) ξ(g/_S)` over all `2^{|I|}`
/// decompositions.
pub fn convolve(zeta: &Character, xi: &Character, graph: &LabeledGraph) -> Result<Rational> {
    let labels: Vec<Label> = graph.ground_set().into_iter().collect();
    let n = labels.len();
    assert!(n <= 63, "convolution enumerates subsets by 64-bit mask");
    let mut total = Rational::zero();
    for mask in 0u64..(1 << n) {
        let subset: BTreeSet<Label> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| labels[i].clone())
            .collect();
        let restriction = graph.restrict(&subset)?;
        let contraction = graph.contract(&subset)?;
        total += character_eval(zeta, &restriction)? * character_eval(xi, &contraction)?;
    }
    Ok(total)
}

/// Inversion through associahedron faces: `b_n = Σ_{F ≤ a_n} (-1)^{n - dim F}
/// a_F` with `a_F` the product of `a_f` over the factor sizes of the face.
pub fn invert_via_assoc_faces(g: &TruncatedSeries) -> TruncatedSeries {
    assert!(g.is_monic(), "face inversion needs a monic series");
    let order = g.order();
    let mut out = TruncatedSeries::identity(order);
    for n in 1..order {
        let mut b_n = Rational::zero();
        for face in assoc_face_profile(n).iter() {
            let mut term = sign(face.tube_count);
            for &f in &face.factors {
                term *= g.coeff(f + 1);
            }
            b_n += term;
        }
        out.set_coeff(n + 1, b_n);
    }
    out
}

/// Inversion through noncrossing partitions:
/// `b_n = Σ_{π ∈ NC(p_n)} (-1)^{|π|} C_{(π̄:π)} Π a_{|π_i|}`.
pub fn invert_via_nc(g: &TruncatedSeries) -> TruncatedSeries {
    assert!(g.is_monic(), "noncrossing inversion needs a monic series");
    let order = g.order();
    let mut out = TruncatedSeries::identity(order);
    for n in 1..order {
        let host = standard_path(n);
        let mut b_n = Rational::zero();
        for partition in enumerate_nc(&host).expect("standard path host") {
            let closure = adjacent_closure(&partition);
            let catalan =
                catalan_coefficient(&partition, &closure).expect("closure was just computed");
            let mut term = sign(partition.len()) * Rational::from(BigInt::from(catalan.value));
            for block in partition.blocks() {
                term *= g.coeff(block.len() + 1);
            }
            b_n += term;
        }
        out.set_coeff(n + 1, b_n);
    }
    out
}

/// Pair inversion through polytope faces: the first component through
/// associahedra, the second through cyclohedron faces with the cyclic factor
/// `c_{f₀}` located by the coordinate rule.
pub fn invert_pair_via_cyclo_faces(p: &TruncatedPair) -> TruncatedPair {
    let order = p.order();
    let g_inv = invert_via_assoc_faces(&p.g_series());
    let mut c = Vec::with_capacity(order);
    for n in 1..=order {
        let mut d_n = Rational::zero();
        for face in cyclo_face_profile(n).iter() {
            let mut term = sign(face.tube_count) * p.c(face.zero_size);
            for &f in &face.factors {
                term *= p.a(f);
            }
            d_n += term;
        }
        c.push(d_n);
    }
    TruncatedPair::new((2..=order).map(|n| g_inv.coeff(n).clone()).collect(), c)
        .expect("orders match")
}

/// Pair inversion through pointed noncrossing partitions:
/// `d_n = Σ_{π ∈ PNC(c_n)} (-1)^{1+|π₊|} C_{(π̄₊:π₊)} c_{|π₀|} Π a_{|π_i|}`.
pub fn invert_pair_via_pnc(p: &TruncatedPair) -> TruncatedPair {
    let order = p.order();
    let g_inv = invert_via_nc(&p.g_series());
    let mut c = Vec::with_capacity(order);
    for n in 1..=order {
        let host = standard_cycle(n);
        let mut d_n = Rational::zero();
        for partition in enumerate_pnc(&host).expect("standard cycle host") {
            let closure = adjacent_closure_pointed(&partition);
            let catalan = catalan_coefficient_pointed(&partition, &closure)
                .expect("closure was just computed");
            let mut term = sign(partition.len())
                * Rational::from(BigInt::from(catalan.value))
                * p.c(partition.zero_block().len());
            for block in partition.blocks() {
                term *= p.a(block.len());
            }
            d_n += term;
        }
        c.push(d_n);
    }
    TruncatedPair::new((2..=order).map(|n| g_inv.coeff(n).clone()).collect(), c)
        .expect("orders match")
}

/// Membership test for the subgroup identifying paths and cycles of sizes 1
/// and 2: `a_1 = c_1` and `a_2 = c_2`.
pub fn restrict_to_cbar(p: &TruncatedPair) -> bool {
    p.in_cbar()
}

fn sign(exponent: usize) -> Rational {
    if exponent.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}
