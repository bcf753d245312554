//! Reference curves with known Hasse-Witt data, used by tests and the CLI self-check.
//!
//! Coefficients run from x^6 down to the constant term; entries use the
//! `a^N` power syntax for the chosen generator of the quadratic extension.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::FixtureStore;
use crate::factor::FqPoly;
use crate::field::{Fq, FieldDescriptor};
use crate::poly::Poly;

/// Where the curve lives and what its Hasse-Witt matrix should look like.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ReferenceCurve {
    pub name: String,
    pub field: String,
    pub coeffs: Vec<String>,
    /// Expected (rank M, rank M^(p) M).
    pub ranks: (usize, usize),
    /// Expected [c_{p-1}, c_{p-2}, c_{2p-1}, c_{2p-2}] when known exactly.
    pub entries: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct CurveFile {
    curves: Vec<ReferenceCurve>,
}

pub fn reference_curves() -> Result<Vec<ReferenceCurve>> {
    reference_curves_from(&FixtureStore::Embedded)
}

pub fn reference_curves_from(store: &FixtureStore) -> Result<Vec<ReferenceCurve>> {
    let text = store.text("curves")?;
    let f: CurveFile = serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("curves: {e}")))?;
    for c in &f.curves {
        if c.coeffs.len() != 7 || c.entries.as_ref().is_some_and(|e| e.len() != 4) {
            return Err(Error::Fixture(format!("curve {} has the wrong shape", c.name)));
        }
    }
    Ok(f.curves)
}

impl ReferenceCurve {
    pub fn descriptor(&self) -> Result<FieldDescriptor> {
        FieldDescriptor::parse(&self.field)
    }

    pub fn characteristic(&self) -> u64 {
        self.descriptor().map(|d| d.characteristic()).unwrap_or(0)
    }

    /// The sextic as a polynomial, lowest degree first.
    pub fn poly(&self) -> Result<FqPoly> {
        let ctx = match self.descriptor()? {
            FieldDescriptor::Finite(c) => c,
            FieldDescriptor::Rational => unreachable!("reference curves live over finite fields"),
        };
        let mut c: Vec<Fq> = self.coeffs.iter().map(|s| Fq::parse(&ctx, s)).collect::<Result<_>>()?;
        c.reverse();
        Ok(Poly::new(&Fq::from_i64(&ctx, 0), c))
    }

    pub fn expected_entries(&self) -> Result<Option<[Fq; 4]>> {
        let Some(e) = &self.entries else { return Ok(None) };
        let FieldDescriptor::Finite(ctx) = self.descriptor()? else { unreachable!() };
        let v: Vec<Fq> = e.iter().map(|s| Fq::parse(&ctx, s)).collect::<Result<_>>()?;
        Ok(Some([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]))
    }
}
