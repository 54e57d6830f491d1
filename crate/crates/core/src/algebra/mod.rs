//! Exact polynomial and power-series arithmetic, q-analogs, and the registries
//! of generating functions and closed forms.

mod named;
mod numbers;
mod poly;
mod series;

pub use named::{
    closed_form, closed_form_min_n, closed_form_names, gf_names, gf_takes_k, named_gf, ClosedValue,
};
pub use numbers::{
    binom, catalan, fib_ext, fishburn_series, invert_inverse, invert_transform, pell, qbinom,
};
pub use poly::{Exponents, SparsePoly};
pub use series::{expand_rational, RationalGF, TruncatedSeries, XPoly};
