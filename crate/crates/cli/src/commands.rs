use std::path::Path;

use genus2cm::bounds::{
    class_invariant_bound, class_poly_coeff_bound, deformation_index_bounds, theta_valuation_bound,
    verify_fixture_with, BoundParams,
};
use genus2cm::cmfield::QuarticCMField;
use genus2cm::field::matrix;
use genus2cm::fixtures::FixtureStore;
use genus2cm::galois_tables::{predict, table_rows, verify_rows, FiniteGroupPresentation, GroupKind, Subfield};
use genus2cm::hasse_witt::{af_numbers, hasse_witt};
use genus2cm::invariants::{
    absolute_from_igusa_clebsch, gamma_from_j, igusa_clebsch, j_from_igusa_clebsch, HyperellipticModel,
    InvariantField,
};
use genus2cm::theta::{
    big_theta, class_polynomial, invariants_from_tau, parse_tau_json, rosenhain, theta_all, DenominatorBound,
    ThetaChar,
};
use genus2cm::{FieldDescriptor, FieldElement, Fq, Poly};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::render;
use crate::{BoundsCmd, Cli, CmWhat, Command, Failure, FieldArgs, TableKind, ThetaWhat};

type Out = Result<(Value, bool), Failure>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

pub fn run(cli: &Cli, store: &FixtureStore) -> Out {
    if !cli.only.is_empty() && !matches!(cli.cmd, Command::Papercheck) {
        return Err(Failure::Usage("--only applies to papercheck".into()));
    }
    let ok = |v: Value| Ok((v, true));
    match &cli.cmd {
        Command::Invariants { field, sextic } => ok(invariants(field, sextic)?),
        Command::Hassewitt { field, poly } => ok(hassewitt(field, poly)?),
        Command::Cmfield { k, p, what } => ok(cmfield(k, *p, *what)?),
        Command::Predict { k, p } => ok(predict_rows(k, *p)?),
        Command::Tables { kind, verify } => ok(tables(*kind, *verify)),
        Command::Bounds(b) => bounds(b, store),
        Command::Theta { tau, what } => ok(theta(tau, *what, cli.prec)?),
        Command::Classpoly { taus, denom, d, alpha, beta, primes, tol } => {
            let denom = match denom.as_str() {
                "auto" => {
                    let (Some(d), Some(a), Some(b)) = (d, alpha, beta) else {
                        return Err(Failure::Usage("--denom auto needs --d, --alpha and --beta".into()));
                    };
                    if primes.is_empty() {
                        return Err(Failure::Usage("--denom auto needs --primes".into()));
                    }
                    DenominatorBound::Auto { field: QuarticCMField::new(d.clone(), a.clone(), b.clone())?, primes: primes.clone() }
                }
                n => match n.parse::<BigInt>() {
                    Ok(n) if n > BigInt::from(0) => DenominatorBound::Fixed(n),
                    _ => return Err(Failure::Usage(format!("--denom must be auto or a positive integer, got {n}"))),
                },
            };
            let list = parse_tau_json(&read(taus)?, cli.prec)?;
            let cp = class_polynomial(&list, &denom, *tol)?;
            let h: Vec<Value> = cp
                .h
                .iter()
                .map(|r| {
                    json!({
                        "coeffs": r.coeffs.iter().map(render::rational).collect::<Vec<_>>(),
                        "max_residual": format!("{:.3e}", r.max_residual),
                    })
                })
                .collect();
            ok(json!({"h1": h[0], "h2": h[1], "h3": h[2]}))
        }
        Command::Papercheck => crate::papercheck::run(&cli.only, store),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn invariants(field: &str, sextic: &str) -> Result<Value, Failure> {
    let desc = FieldDescriptor::parse(field)?;
    let elems = desc.parse_element_list(sextic)?;
    if !(6..=7).contains(&elems.len()) {
        return Err(Failure::Usage(format!("--sextic needs 7 coefficients (or 6 for a quintic), got {}", elems.len())));
    }
    let mut v = match desc {
        FieldDescriptor::Rational => {
            let u = elems.into_iter().map(|e| match e {
                FieldElement::Rational(q) => q,
                FieldElement::Finite(_) => unreachable!("parsed over Q"),
            });
            invariant_record(u.collect(), render::rational)?
        }
        FieldDescriptor::Finite(_) => {
            let u = elems.into_iter().map(|e| match e {
                FieldElement::Finite(x) => x,
                FieldElement::Rational(_) => unreachable!("parsed over a finite field"),
            });
            invariant_record(u.collect(), render::fq)?
        }
    };
    v["field"] = Value::String(desc.to_string());
    Ok(v)
}

fn invariant_record<T: InvariantField>(u: Vec<T>, r: fn(&T) -> Value) -> Result<Value, Failure> {
    let model = HyperellipticModel::new(u)?;
    let ic = igusa_clebsch(&model)?;
    let j = j_from_igusa_clebsch(&ic).ok();
    let gamma = j.as_ref().and_then(|j| gamma_from_j(j).ok());
    let abs = absolute_from_igusa_clebsch(&ic).ok();
    Ok(json!({
        "A": r(&ic.a),
        "B": r(&ic.b),
        "C": r(&ic.c),
        "D": r(&ic.d),
        "J": j.map(|j| j.to_vec().iter().map(r).collect::<Vec<_>>()),
        "gamma": gamma.map(|g| g.g.iter().map(r).collect::<Vec<_>>()),
        "i": abs.map(|a| a.to_vec().iter().map(r).collect::<Vec<_>>()),
    }))
}

fn hassewitt(field: &str, poly: &str) -> Result<Value, Failure> {
    let FieldDescriptor::Finite(ctx) = FieldDescriptor::parse(field)? else {
        return Err(Failure::Usage("hassewitt needs a finite field".into()));
    };
    let mut c: Vec<Fq> = genus2cm::field::split_top_level(poly)
        .iter()
        .map(|s| Fq::parse(&ctx, s))
        .collect::<genus2cm::Result<_>>()?;
    match c.len() {
        6 => {}
        7 if c[0].coeffs().iter().all(|&x| x == 0) => {
            return Err(Failure::Usage("leading coefficient is zero; give six coefficients for a quintic".into()))
        }
        7 => {}
        n => return Err(Failure::Usage(format!("--poly needs 6 or 7 coefficients, got {n}"))),
    }
    c.reverse();
    let f = Poly::new(&Fq::from_i64(&ctx, 0), c);
    let hw = hasse_witt(&f)?;
    let pr = af_numbers(&hw)?;
    Ok(json!({
        "field": ctx.to_string(),
        "M": render::matrix(&hw.m, render::fq),
        "rank_M": matrix::rank(&hw.m),
        "a": pr.a_number,
        "f": pr.f_number,
        "superspecial": pr.superspecial,
        "ordinary": pr.ordinary,
    }))
}

fn field(k: &FieldArgs) -> Result<QuarticCMField, Failure> {
    Ok(QuarticCMField::new(k.d.clone(), k.alpha.clone(), k.beta.clone())?)
}

fn cmfield(k: &FieldArgs, p: Option<u64>, what: CmWhat) -> Result<Value, Failure> {
    let k = field(k)?;
    match (what, p) {
        (CmWhat::Shapes, None) => Err(Failure::Usage("shapes needs --p".into())),
        (CmWhat::Shapes, Some(p)) => Ok(json!({
            "galois_type": k.galois_type().to_string(),
            "p": p,
            "shapes": render::shapes(&k.shape_profile(p)?),
        })),
        (CmWhat::Info, p) => {
            let mut v = render::cm_field(&k)?;
            if let Some(p) = p {
                v["p"] = json!(p);
                v["shapes"] = render::shapes(&k.shape_profile(p)?);
            }
            Ok(v)
        }
    }
}

fn predict_rows(k: &FieldArgs, p: u64) -> Result<Value, Failure> {
    let r = predict(&field(k)?, p)?;
    if let Some(w) = &r.warning {
        eprintln!("warning: {w}");
    }
    let shapes = render::shapes(&r.shapes);
    let rows: Vec<Value> = r
        .matches
        .iter()
        .map(|m| {
            json!({
                "row": m.row,
                "a": m.profile.a_number,
                "f": m.profile.f_number,
                "superspecial": m.profile.superspecial,
                "ordinary": m.profile.ordinary,
                "type_norm": m.type_norm,
                "inertia_order": m.inertia_order,
                "shapes": shapes,
            })
        })
        .collect();
    Ok(Value::Array(rows))
}

fn group_kind(k: TableKind) -> GroupKind {
    match k {
        TableKind::Cyclic => GroupKind::C4,
        TableKind::Biquadratic => GroupKind::V4,
        TableKind::Nongalois => GroupKind::D4,
    }
}

fn table_fields(kind: GroupKind) -> Vec<Subfield> {
    let mut v = vec![Subfield::K, Subfield::KPlus];
    match kind {
        GroupKind::D4 => v.extend([Subfield::KStar, Subfield::KStarPlus]),
        GroupKind::V4 => v.push(Subfield::K1),
        GroupKind::C4 => {}
    }
    v.push(Subfield::N);
    v
}

fn tables(kind: TableKind, verify: bool) -> Value {
    let kind = group_kind(kind);
    if verify {
        let r = verify_rows(kind);
        let mut v = to_value(&r);
        v["shapes_consistent"] = json!(r.shapes_consistent());
        return v;
    }
    let g = FiniteGroupPresentation::new(kind);
    let rows: Vec<Value> = table_rows(kind)
        .iter()
        .map(|r| {
            let shapes: serde_json::Map<String, Value> =
                table_fields(kind).into_iter().map(|f| (f.to_string(), json!(r.shape(&g, f).to_string()))).collect();
            json!({
                "id": r.id,
                "I": r.i_printed,
                "D": r.d_printed,
                "a": r.a_number,
                "f": r.f_number,
                "superspecial": r.superspecial,
                "type_norm": r.type_norm,
                "shapes": shapes,
                "printed": to_value(&r.printed),
            })
        })
        .collect();
    Value::Array(rows)
}

fn bounds(b: &BoundsCmd, store: &FixtureStore) -> Out {
    let v = match b {
        BoundsCmd::Theorem { k, e, p, d, tr } => {
            to_value(&theta_valuation_bound(&BoundParams { k: *k, e: *e, p: *p, d: d.clone(), trace_r: tr.clone() })?)
        }
        BoundsCmd::Classpoly { i, a, p, d, tr, e } => to_value(&class_poly_coeff_bound(*i, *a, *p, d, tr, *e)?),
        BoundsCmd::Classinv { e_star, p, d, tr } => to_value(&class_invariant_bound(*e_star, *p, d, tr)?),
        BoundsCmd::Deform { p, e, n } => to_value(&deformation_index_bounds(*p, *e, *n)?),
        BoundsCmd::VerifyFixture { fixture, prime } => {
            let r = verify_fixture_with(store, fixture, *prime)?;
            return Ok((to_value(&r), r.passed));
        }
    };
    Ok((v, true))
}

fn theta(path: &Path, what: ThetaWhat, digits: u32) -> Result<Value, Failure> {
    let taus = parse_tau_json(&read(path)?, digits)?;
    let tol = 10f64.powi(-(digits as i32));
    let d = digits as usize;
    let mut out = Vec::new();
    for t in &taus {
        let v = match what {
            ThetaWhat::Constants => {
                let vals = theta_all(t, tol)?;
                // theta_all uses the same order as ThetaChar::all
                let m: serde_json::Map<String, Value> =
                    ThetaChar::all().iter().zip(&vals).map(|(c, v)| (c.label(), render::ball(v, d))).collect();
                Value::Object(m)
            }
            ThetaWhat::Bigtheta => render::ball(&big_theta(t, tol)?, d),
            ThetaWhat::Rosenhain => {
                Value::Array(rosenhain(t, tol)?.iter().map(|b| render::ball(b, d)).collect())
            }
            ThetaWhat::Invariants => {
                let a = invariants_from_tau(t, tol)?;
                json!({"i1": render::ball(&a.i1, d), "i2": render::ball(&a.i2, d), "i3": render::ball(&a.i3, d)})
            }
        };
        out.push(v);
    }
    Ok(Value::Array(out))
}
