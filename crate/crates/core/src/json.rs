//! Deterministic JSON helpers: reals are written with 17 significant digits.

use std::str::FromStr;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::Serializer;

/// Text of `x` with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 {
        // avoid "-0" drifting into golden files
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

pub fn number(x: f64) -> serde_json::Number {
    serde_json::Number::from_str(&fmt17(x)).expect("formatted float is a JSON number")
}

pub fn sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&number(*x), s)
}

pub fn sig17_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let nums: Vec<serde_json::Number> = xs.iter().map(|&x| number(x)).collect();
    serde::Serialize::serialize(&nums, s)
}

pub fn sig17_pair<S: Serializer>(p: &(f64, f64), s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&[number(p.0), number(p.1)], s)
}

pub fn sig17_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &number(z.re))?;
    st.serialize_field("im", &number(z.im))?;
    st.end()
}

pub fn sig17_complex_vec<S: Serializer>(zs: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    #[derive(serde::Serialize)]
    struct C(#[serde(serialize_with = "sig17_complex")] Complex64);
    let wrapped: Vec<C> = zs.iter().map(|&z| C(z)).collect();
    serde::Serialize::serialize(&wrapped, s)
}
