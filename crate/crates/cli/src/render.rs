//! JSON renderings. Exact values become strings so nothing passes through a float.

use genus2cm::cmfield::{format_poly, QuarticCMField, Reflex, ShapeProfile};
use genus2cm::field::{format_rational, matrix::Matrix};
use genus2cm::float::CBall;
use genus2cm::ntheory::factor_integer;
use genus2cm::Fq;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

pub fn fq(x: &Fq) -> Value {
    let c = x.coeffs();
    if x.ctx().degree() == 1 {
        Value::String(c.first().copied().unwrap_or(0).to_string())
    } else {
        let mut v: Vec<Value> = c.iter().map(|n| Value::String(n.to_string())).collect();
        v.resize(x.ctx().degree(), Value::String("0".into()));
        Value::Array(v)
    }
}

pub fn rational(q: &BigRational) -> Value {
    Value::String(format_rational(q))
}

pub fn matrix<T>(m: &Matrix<T>, f: impl Fn(&T) -> Value) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(&f).collect())).collect())
}

pub fn ball(b: &CBall, digits: usize) -> Value {
    json!({
        "mid_re": b.re.to_sci(digits),
        "mid_im": b.im.to_sci(digits),
        "radius": format!("{:.3e}", b.rad),
    })
}

pub fn factored(n: &BigInt) -> String {
    let sign = if n < &BigInt::from(0) { "-" } else { "" };
    match factor_integer(n) {
        Some(f) if !f.is_empty() => {
            let parts: Vec<String> =
                f.iter().map(|(q, e)| if *e == 1 { q.to_string() } else { format!("{q}^{e}") }).collect();
            format!("{sign}{}", parts.join(" * "))
        }
        _ => n.to_string(),
    }
}

fn poly(c: &[BigInt]) -> Value {
    json!({
        "text": format_poly(c),
        "coeffs": c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

pub fn shapes(s: &ShapeProfile) -> Value {
    let mut m = Map::new();
    m.insert("K".into(), Value::String(s.k.to_string()));
    m.insert("K+".into(), Value::String(s.k_plus.to_string()));
    let opt = [("K*", &s.k_star), ("K*+", &s.k_star_plus), ("K1", &s.k1), ("K2", &s.k2)];
    for (name, v) in opt {
        if let Some(v) = v {
            m.insert(name.into(), Value::String(v.to_string()));
        }
    }
    Value::Object(m)
}

pub fn cm_field(k: &QuarticCMField) -> genus2cm::Result<Value> {
    let disc = k.discriminant()?;
    let reflex = match k.reflex_field()? {
        Reflex::Quartic(r) => json!({
            "kind": "quartic",
            "d": r.d.to_string(),
            "alpha": r.alpha.to_string(),
            "beta": r.beta.to_string(),
            "minpoly": poly(&r.minpoly()),
        }),
        Reflex::Biquadratic { discriminants, marked } => json!({
            "kind": "biquadratic",
            "discriminants": discriminants.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "marked": marked,
        }),
    };
    Ok(json!({
        "d": k.d.to_string(),
        "alpha": k.alpha.to_string(),
        "beta": k.beta.to_string(),
        "galois_type": k.galois_type().to_string(),
        "minpoly": poly(&k.minpoly()),
        "real_minpoly": poly(&k.real_minpoly()),
        "discriminant": disc.to_string(),
        "discriminant_factored": factored(&disc),
        "reflex": reflex,
    }))
}
