//! Exact coefficients: rational functions over ℚ with formal `u` and `τ`.

mod expr;
mod parse;
mod poly;
mod rat;
mod ratfunc;

pub use expr::{ScalarExpr, UTau};
pub use parse::parse_expr;
pub use poly::{Monomial, Poly, Symbol, Q};
pub use ratfunc::{CoordMap, RationalFunction};

/// `p/q` as an exact rational.
pub fn q(p: i64, d: i64) -> Q {
    Q::new(p, d)
}

/// Substitutes in a scalar expression.
pub fn substitute(e: &ScalarExpr, map: &CoordMap) -> crate::error::Result<ScalarExpr> {
    e.substitute(map)
}
