//! Sparse multivariate polynomials over ℚ in the three variables `a, b, k`,
//! quotients of them, and the exact identity checks built on top.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under graded
//! lexicographic order, so equal polynomials have identical term maps and
//! "first differing monomial" reports are reproducible.

mod derive;
mod forms;
mod identities;
mod parse;
mod rational_fn;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{int, Rational};

pub use derive::{derive_ratio_symbolic, derive_symbolic_figure, HomogeneousPoint, SymbolicFigure};
pub use forms::{
    build_p, build_q, f1, f2, lower_multiplier, q_factors, upper_line_1, upper_line_2,
    upper_multiplier, P_TEXT,
};
pub use identities::{
    check_lower_identity, check_ratio_identity, check_rewrites, check_upper_identity,
    lower_identity, ratio_identity, rewrite_identities, upper_identity, verify_all, Identity,
    IdentityError, IdentityOutcome, IdentityReport, Side,
};
pub use parse::ParsePolyError;
pub use rational_fn::RationalFn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    A,
    B,
    K,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::A, Var::B, Var::K];

    fn index(self) -> usize {
        match self {
            Var::A => 0,
            Var::B => 1,
            Var::K => 2,
        }
    }

    fn name(self) -> char {
        ['a', 'b', 'k'][self.index()]
    }
}

/// Exponents of `(a, b, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(ea: u32, eb: u32, ek: u32) -> Self {
        Monomial([ea, eb, ek])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }
}

/// Graded lexicographic: total degree first, then exponents of `a, b, k`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "{}", v.name())?,
                _ => write!(f, "{}^{}", v.name(), e)?,
            }
        }
        Ok(())
    }
}

/// An assignment of rationals to `(a, b, k)`.
pub type Assignment = [Rational; 3];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

/// Products with at least this many term pairs are split across workers.
#[cfg(feature = "parallel")]
const PARALLEL_MUL_THRESHOLD: usize = 1 << 14;

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        MPoly::term(c, Monomial::ONE)
    }

    pub fn int(c: i64) -> Self {
        MPoly::constant(int(c))
    }

    pub fn var(v: Var) -> Self {
        MPoly::term(int(1), Monomial::var(v))
    }

    pub fn a() -> Self {
        MPoly::var(Var::A)
    }

    pub fn b() -> Self {
        MPoly::var(Var::B)
    }

    pub fn k() -> Self {
        MPoly::var(Var::K)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    /// Merges like terms and drops zeros; the input order is irrelevant.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Greatest term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn product<'a, I: IntoIterator<Item = &'a MPoly>>(factors: I) -> MPoly {
        factors.into_iter().fold(MPoly::one(), |acc, f| &acc * f)
    }

    /// Exact value at `(a, b, k)`.
    ///
    /// Works over a common denominator: with `x = n/d` and `E` the top
    /// exponent of `x`, a term's `x^e` becomes the integer `n^e·d^(E−e)`, so
    /// the sum is accumulated in `BigInt` and reduced once at the end.
    pub fn eval(&self, point: &Assignment) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut common_den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let tables: Vec<Vec<BigInt>> = Var::ALL
            .iter()
            .map(|v| {
                let top = self.degree_in(*v) as usize;
                let x = &point[v.index()];
                let (n, d) = (x.numer(), x.denom());
                let mut n_pows = vec![BigInt::one()];
                let mut d_pows = vec![BigInt::one()];
                for i in 1..=top {
                    let next_n = &n_pows[i - 1] * n;
                    let next_d = &d_pows[i - 1] * d;
                    n_pows.push(next_n);
                    d_pows.push(next_d);
                }
                common_den *= &d_pows[top];
                (0..=top).map(|e| &n_pows[e] * &d_pows[top - e]).collect()
            })
            .collect();
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numerator: BigInt = self
            .terms
            .iter()
            .map(|(m, c)| {
                c.numer()
                    * (&lcm / c.denom())
                    * &tables[0][m.0[0] as usize]
                    * &tables[1][m.0[1] as usize]
                    * &tables[2][m.0[2] as usize]
            })
            .sum();
        Rational::new(numerator, common_den)
    }

    pub fn eval_ints(&self, a: i64, b: i64, k: i64) -> Rational {
        self.eval(&[int(a), int(b), int(k)])
    }

    fn mul_terms<'a, I>(lhs: I, rhs: &MPoly) -> BTreeMap<Monomial, Rational>
    where
        I: Iterator<Item = (&'a Monomial, &'a Rational)>,
    {
        let mut acc = MPoly::zero();
        for (m1, c1) in lhs {
            for (m2, c2) in &rhs.terms {
                acc.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        acc.terms
    }

    fn mul_impl(&self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        #[cfg(feature = "parallel")]
        if self.len() * rhs.len() >= PARALLEL_MUL_THRESHOLD && self.len() > 1 {
            return self.mul_parallel(rhs);
        }
        MPoly {
            terms: MPoly::mul_terms(self.terms.iter(), rhs),
        }
    }

    /// Row blocks of `self` are multiplied on separate workers and summed
    /// back in block order; exact arithmetic makes the result identical to
    /// the sequential product.
    #[cfg(feature = "parallel")]
    fn mul_parallel(&self, rhs: &MPoly) -> MPoly {
        use rayon::prelude::*;
        let rows: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        let chunk = rows
            .len()
            .div_ceil(rayon::current_num_threads().max(1) * 4)
            .max(1);
        let partials: Vec<BTreeMap<Monomial, Rational>> = rows
            .par_chunks(chunk)
            .map(|block| MPoly::mul_terms(block.iter().copied(), rhs))
            .collect();
        let mut acc = MPoly::zero();
        for part in partials {
            for (m, c) in part {
                acc.add_term(m, &c);
            }
        }
        acc
    }

    /// Sequential product regardless of build features.
    pub fn mul_sequential(&self, rhs: &MPoly) -> MPoly {
        MPoly {
            terms: MPoly::mul_terms(self.terms.iter(), rhs),
        }
    }

    /// `x ↦ x` for each variable except `v`, which is replaced by `value`.
    pub fn substitute(&self, v: Var, value: &MPoly) -> MPoly {
        let max = self.degree_in(v);
        let mut powers = vec![MPoly::one()];
        for i in 1..=max as usize {
            let next = &powers[i - 1] * value;
            powers.push(next);
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            rest.0[v.index()] = 0;
            let t = MPoly::term(c.clone(), rest);
            out += &(&t * &powers[m.exponent(v) as usize]);
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a> AddAssign<&'a MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &'a MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl<'a> SubAssign<&'a MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &'a MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, &-c);
        }
    }
}

impl<'a> Add<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&int(-1))
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn poly(s: &str) -> MPoly {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (MPoly::a(), MPoly::b());
        assert_eq!(&(&a + &b) * &(&a - &b), poly("a^2 - b^2"));
    }

    #[test]
    fn cancellation_gives_zero() {
        let p = poly("3a^2k - 2b + 7");
        let z = &p + &p.scale(&int(-1));
        assert!(z.is_zero());
        assert_eq!(z, MPoly::zero());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn pow_and_eval() {
        let p = poly("a + b - 1");
        assert_eq!(p.pow(0), MPoly::one());
        assert_eq!(p.pow(3), &(&p * &p) * &p);
        assert_eq!(p.pow(3).eval_ints(2, 1, 0), int(8));
        assert_eq!(
            poly("a*b^2 + k/3").eval(&[rat(1, 2), int(2), int(1)]),
            rat(7, 3)
        );
    }

    #[test]
    fn graded_lex_order() {
        let m = |a, b, k| Monomial::new(a, b, k);
        assert!(m(0, 0, 2) > m(1, 0, 0));
        assert!(m(1, 0, 0) > m(0, 1, 0));
        assert!(m(0, 1, 0) > m(0, 0, 1));
        assert!(m(1, 1, 0) > m(1, 0, 1));
        let p = poly("k^3 + a^2 + b");
        assert_eq!(p.leading_term().unwrap().0, &m(0, 0, 3));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly("-a^2*k + 2b - 1").to_string(), "-a^2*k + 2*b - 1");
        assert_eq!(MPoly::zero().to_string(), "0");
    }

    #[test]
    fn substitution() {
        let p = poly("a^2 + a*b");
        let q = p.substitute(Var::A, &poly("b + 1"));
        assert_eq!(q, poly("2b^2 + 3b + 1"));
    }

    #[test]
    fn parallel_and_sequential_products_agree() {
        let p = poly("(a + 2b - 3k + 1/2)^6");
        let q = poly("(b - a*k + 5)^5");
        assert_eq!(&p * &q, p.mul_sequential(&q));
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(Monomial, Rational)>> {
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), -20i64..20, 1i64..6), 0..12).prop_map(
            |terms| {
                terms
                    .into_iter()
                    .map(|((a, b, k), n, d)| (Monomial::new(a, b, k), rat(n, d)))
                    .collect()
            },
        )
    }

    proptest! {
        #[test]
        fn canonical_form_ignores_term_order(terms in arb_poly(), seed in any::<u64>()) {
            let mut shuffled = terms.clone();
            let n = shuffled.len();
            if n > 1 {
                let mut s = seed;
                for i in (1..n).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    shuffled.swap(i, (s >> 33) as usize % (i + 1));
                }
            }
            prop_assert_eq!(MPoly::from_terms(terms), MPoly::from_terms(shuffled));
        }

        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            let (p, q, r) = (MPoly::from_terms(p), MPoly::from_terms(q), MPoly::from_terms(r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            let point = [rat(3, 7), int(-2), rat(5, 3)];
            prop_assert_eq!((&p * &q).eval(&point), p.eval(&point) * q.eval(&point));
        }

        #[test]
        fn display_round_trips(p in arb_poly()) {
            let p = MPoly::from_terms(p);
            let text = p.to_string();
            prop_assert_eq!(text.parse::<MPoly>().unwrap(), p);
        }
    }
}
