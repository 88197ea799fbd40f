//! The fixed polynomials of the crosscut area problem: `P` and `Q` with
//! `s/S = P/Q` in the canonical frame, the factors `F₁, F₂` of the lower-bound
//! gap and the two linear forms whose squares make up the upper-bound gap.

use std::sync::OnceLock;

use super::MPoly;

/// `P(a, b)` transcribed term by term (with `k` as a third variable).
/// [`super::check_ratio_identity`] is what certifies this text.
pub const P_TEXT: &str = "\
-2a^2k^2b + 6ab^4k^3 - 4ak^2b + 12a^2k^3b^2 + 9ab^4k^5 \
+ 16a^2k^4b^2 + 19a^2k^4b^3 + 9a^2b^3k^2 + 8a^3k^2b^2 + 17a^3k^3b^2 + 2a^2k^6b \
+ 2a^4k^6b + 8a^3k^5b - b^2a - 3b^2k^2 + a^2k + bk^2 + ak^2 - 8ab^3k^5 + 9a^4k^4b \
+ 2b^3ak - 4a^2k^5b + 6a^3kb + 3b^4k^3 - 5a^2kb + 3ab^4k^2 + 14a^3k^5b^2 \
+ 18a^2k^5b^3 - 4a^2k^5b^2 + 6a^3k^6b^2 + 15a^2k^3b^3 + 11ab^4k^4 + ab^2k^2 - 9ak^3b^2 \
+ 12a^3k^4b + 4ab^3k^4 + 8a^3k^2b + a^4k^3 + 3a^4k^2 - 4a^2k^6b^2 - 3a^3k^2 + 8a^4k^3b \
+ a^3k^3 - 2a^2k^3 - 5a^3k^4 + 6a^2k^6b^3 + 2b^2k^3 - a^2b - 2a^3k + 2ab^4k^6 \
+ 17a^3k^4b^2 + 5a^4k^5b + a^4k^4 + a^5k^5 + 4a^3k^3b + 12ab^3k^3 + 4ab^3k^2 \
+ 7a^2k^2b^2 - 2b^2ka + 7a^2b^2k + 8ak^4b + 8ak^5b^2 - 5b^3k^3 + b^3k^4 + 4b^3k^5 \
- 2bk^4 + 2b^2k^4 + 6a^2k^4 - 4b^2k^5 - 2ak^4 + 4a^2k^5 + a^4k + 2a^2b^2 + a^3b \
+ 2ak^6b^2 - 11ak^4b^2 - 3a^2k^3b - 17a^2k^4b - b^2k + 2a^4k^6 + 4a^4k^5 - 8a^3k^5 \
+ 2a^5k^4 + 2b^4k^6 - b^4k^4 - a^2k^2 + a^5k^3 + a^3b^2k - 2a^3k^6 + 2a^2b^3k \
- 2b^3k^6 + 2a^4k^2b + b^4ak + b^3a + b^5k^3 + 2b^4k^2 + b^3k + 2b^5k^4 + b^5k^5";

/// The five factors of `Q`, in display order.
pub const Q_FACTOR_TEXT: [&str; 5] = [
    "a + b",
    "ak^2 + ak + a + bk^2 + k",
    "-k + ak^2 + 2ak - 1 + a + b + bk^2 + bk",
    "bk^2 + bk + k + 1 + ak^2",
    "bk^2 + 2bk + b - k + ak^2 + ak",
];

pub const F1_TEXT: &str = "ak^2b + ak^2 + 2ak + a + b - 1 - k + b^2k - bk^2 + b^2k^2";
pub const F2_TEXT: &str = "a^2k^2 + a^2k + ba - 2ak + k + 2bak - ak^2 + ak^2b + bk^2";
pub const UPPER_LINE_1_TEXT: &str = "bk + 1 - a - ak";
pub const UPPER_LINE_2_TEXT: &str = "b + bk - 1 + ak - 2k";

fn parsed(text: &str) -> MPoly {
    text.parse().expect("built-in polynomial text parses")
}

pub fn build_p() -> MPoly {
    static P: OnceLock<MPoly> = OnceLock::new();
    P.get_or_init(|| parsed(P_TEXT)).clone()
}

pub fn q_factors() -> [MPoly; 5] {
    Q_FACTOR_TEXT.map(parsed)
}

pub fn build_q() -> MPoly {
    static Q: OnceLock<MPoly> = OnceLock::new();
    Q.get_or_init(|| MPoly::product(q_factors().iter())).clone()
}

pub fn f1() -> MPoly {
    parsed(F1_TEXT)
}

pub fn f2() -> MPoly {
    parsed(F2_TEXT)
}

/// `bk + 1 − a − ak`; zero on the first upper-equality line.
pub fn upper_line_1() -> MPoly {
    parsed(UPPER_LINE_1_TEXT)
}

/// `b + bk − 1 + ak − 2k`; zero on the second upper-equality line.
pub fn upper_line_2() -> MPoly {
    parsed(UPPER_LINE_2_TEXT)
}

/// `(k+1)(k²+k+1)`, the reciprocal of the lower bound.
pub fn lower_multiplier() -> MPoly {
    parsed("(k + 1)(k^2 + k + 1)")
}

/// `2k² + 2k + 1`, the reciprocal of the upper bound.
pub fn upper_multiplier() -> MPoly {
    parsed("2k^2 + 2k + 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use crate::rational::int;

    #[test]
    fn p_spot_coefficients() {
        let p = build_p();
        assert_eq!(p.coefficient(&Monomial::new(5, 0, 5)), int(1));
        assert_eq!(p.coefficient(&Monomial::new(0, 5, 3)), int(1));
        assert_eq!(p.degree_in(crate::poly::Var::K), 6);
    }

    #[test]
    fn p_and_q_values() {
        let (p, q) = (build_p(), build_q());
        assert_eq!(p.eval_ints(1, 1, 1), int(250));
        assert_eq!(p.eval_ints(2, 1, 1), int(1812));
        assert_eq!(q.eval_ints(1, 1, 1), int(1250));
        assert_eq!(q.eval_ints(2, 1, 1), int(9072));
        let f: Vec<_> = q_factors().iter().map(|f| f.eval_ints(2, 1, 1)).collect();
        assert_eq!(f, [3, 8, 9, 6, 7].map(int));
    }

    #[test]
    fn factor_spot_values() {
        assert_eq!(f1().eval_ints(1, 1, 1), int(5));
        assert_eq!(f2().eval_ints(1, 1, 1), int(5));
        assert_eq!(f1().eval_ints(2, 1, 1), int(10));
        assert_eq!(f2().eval_ints(2, 1, 1), int(12));
        assert_eq!(upper_line_1().eval_ints(2, 1, 1), int(-2));
        assert_eq!(upper_line_2().eval_ints(2, 1, 1), int(1));
        assert_eq!(upper_line_1().eval_ints(1, 1, 1), int(0));
        assert_eq!(upper_line_2().eval_ints(1, 1, 1), int(0));
    }
}
