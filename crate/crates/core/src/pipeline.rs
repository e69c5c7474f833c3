//! The end-to-end chain of checks on one structure.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::ainf::{check_ainf, check_cinf};
use crate::error::{Error, Result};
use crate::hopf::{self, DEFAULT_MAX_DEGREE, DEFAULT_MAX_LENGTH};
use crate::linf::PlStructure;
use crate::report::Report;
use crate::structure::Structure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub max_degree: i64,
    pub max_length: usize,
    /// Highest arity for the L∞ axioms.
    pub max_arity: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_degree: DEFAULT_MAX_DEGREE, max_length: DEFAULT_MAX_LENGTH, max_arity: 4 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Bundle {
    pub structure: String,
    pub caps: Caps,
    pub reports: Vec<Report>,
    pub ell3_ranks: BTreeMap<i64, usize>,
}

impl Bundle {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }
}

fn timed(mut r: Report, start: Instant) -> Report {
    r.elapsed = start.elapsed();
    r
}

/// Runs the stages in order. Every stage runs even after a failure so the
/// bundle shows the whole picture.
pub fn run_pipeline(s: &Structure, caps: Caps) -> Result<Bundle> {
    let a = &s.coalgebra;
    if !a.space().connected() {
        return Err(Error::Precondition("the pipeline needs a connected structure".into()));
    }
    let (d, l) = (caps.max_degree, caps.max_length);
    let mut reports = Vec::new();

    let t = Instant::now();
    reports.push(timed(check_ainf(a, d), t));
    let t = Instant::now();
    reports.push(timed(check_cinf(a, d), t));

    let t = Instant::now();
    let mut prim = hopf::check_milnor_moore(a, d, l)?;
    prim.check = "primitives".into();
    let ph = hopf::coalgebra_primitives(a).len();
    let h = a.space().generators().len();
    prim.note(format!("dim PH̃ = {} of dim H̃ = {}", ph, h));
    if s.flags.expected_primitive && ph != h {
        prim.fail("PH = H", format!("only {} of {} generators are primitive", ph, h));
    }
    reports.push(timed(prim, t));

    let t = Instant::now();
    if s.flags.expected_primitive {
        reports.push(timed(hopf::check_primitive_ainf(a, d, l)?, t));
    } else {
        let mut r = Report::new("check-primitive");
        r.note("skipped: the structure is not declared primitive");
        reports.push(r);
    }

    let t = Instant::now();
    let mut ext = hopf::check_rho_identities(a, d, l)?;
    ext.check = "extend".into();
    ext.absorb(hopf::check_rho_closed_form(a, d, l)?);
    reports.push(timed(ext, t));

    let t = Instant::now();
    let mut sym = hopf::check_rho_preserves_primitives(a, d, l);
    sym.check = "symmetrize".into();
    reports.push(timed(sym, t));

    let pl = PlStructure::new(a, d, l);
    let t = Instant::now();
    reports.push(timed(pl.check_linf(caps.max_arity), t));
    let t = Instant::now();
    reports.push(timed(pl.check_bialgebra(d), t));

    let t = Instant::now();
    let ell3_ranks: BTreeMap<i64, usize> =
        pl.lie.dimensions().keys().map(|&deg| (deg, pl.ell3_rank(deg))).filter(|&(_, r)| r > 0).collect();
    let mut inv = Report::new("invariant").param("op", "ell3").param("max-degree", d);
    if ell3_ranks.is_empty() {
        inv.note("ℓ³ vanishes on the Lie basis");
    }
    for (deg, r) in &ell3_ranks {
        inv.note(format!("rank ℓ³ in degree {} = {}", deg, r));
    }
    reports.push(timed(inv, t));

    Ok(Bundle { structure: a.name.clone(), caps, reports, ell3_ranks })
}
