//! Direct checks of the interval inclusions behind the standard tables.

use std::fmt;

use super::{poles_and_zeros, require_norm_plus, require_w2_bound, standard_endpoints, standard_table, WKind};
use crate::error::Result;
use crate::exactnum::{int, rat, QuadElem, SquareFreeD};
use crate::mobius::{Arc, ArcSet, ExtPoint, MobiusMap};
use crate::pell::FundUnit;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub id: String,
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub d: SquareFreeD,
    pub kind: WKind,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

impl fmt::Display for LemmaCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", if self.holds { "ok" } else { "FAIL" }, self.id, self.statement)
    }
}

struct Checks(Vec<LemmaCheck>);

impl Checks {
    fn lt(&mut self, id: &str, a: &QuadElem, b: &QuadElem) {
        self.0.push(LemmaCheck { id: id.into(), statement: format!("{a} < {b}"), holds: a < b });
    }

    fn eq(&mut self, id: &str, a: &QuadElem, b: &QuadElem) {
        self.0.push(LemmaCheck { id: id.into(), statement: format!("{a} = {b}"), holds: a == b });
    }

    fn subset(&mut self, id: &str, a: &ArcSet, b: &ArcSet) {
        self.0.push(LemmaCheck { id: id.into(), statement: format!("{a} in {b}"), holds: a.is_subset(b).holds });
    }

    fn same(&mut self, id: &str, a: &ArcSet, b: &ArcSet) {
        self.0.push(LemmaCheck { id: id.into(), statement: format!("{a} = {b}"), holds: a == b });
    }
}

fn at(m: &MobiusMap, z: &QuadElem) -> QuadElem {
    match m.apply_finite(z) {
        ExtPoint::Finite(q) => q,
        ExtPoint::Infinity => panic!("endpoint {z} hits the pole of {m}"),
    }
}

fn closed(a: &QuadElem, b: &QuadElem) -> ArcSet {
    ArcSet::from_arc(&Arc::closed(a.clone().into(), b.clone().into()), a.d())
}

fn open(a: &QuadElem, b: &QuadElem) -> ArcSet {
    ArcSet::from_arc(&Arc::open(a.clone().into(), b.clone().into()), a.d())
}

/// Every inclusion used for the `w`-map and the homothety, evaluated exactly.
/// With `(a₂, a₁, b₁, b₂)` the table endpoints, the `w`-map must send the
/// outside of its own interval into the other one in both directions, and the
/// homothety must squeeze `[a₂, b₂]` into `]a₁, b₁[`.
pub fn verify_interval_lemmas(e: &FundUnit, kind: WKind) -> Result<LemmaReport> {
    require_norm_plus(e, "the interval inclusions")?;
    if kind == WKind::W2 {
        require_w2_bound(e)?;
    }
    let setup = standard_table(e, kind)?;
    let h1 = &setup.generators[0].map;
    let h2 = &setup.generators[1].map;
    let h1i = h1.inverse();
    let [a2, a1, b1, b2] = standard_endpoints(h1, kind)?;
    let [zp, z0, zpp, z0p] = poles_and_zeros(h1)?;
    let d = e.d;
    let x = QuadElem::rational(int(e.x.clone()), d);
    let yy = QuadElem::new(int(0), int(e.y.clone()), d);
    let one = QuadElem::one(d);
    let mut c = Checks(Vec::new());

    // The outside of the w-map's source interval, mapped forward and back.
    let (src, dst) = match kind {
        WKind::W1 => ((&a2, &a1), (&b1, &b2)),
        WKind::W2 | WKind::W3 => ((&b1, &b2), (&a2, &a1)),
    };
    let fwd = closed(src.0, src.1).complement().image(h1);
    let back = closed(dst.0, dst.1).complement().image(&h1i);
    let (i_lo, i_hi) = (at(h1, src.0), at(h1, src.1));
    let (j_lo, j_hi) = (at(&h1i, dst.0), at(&h1i, dst.1));
    let (i_lo, i_hi, j_lo, j_hi) = match kind {
        WKind::W1 => (i_lo, i_hi, j_lo, j_hi),
        _ => (i_hi, i_lo, j_hi, j_lo),
    };

    match kind {
        WKind::W1 => {
            c.lt("w-map.pole-zero", &z0, &zp);
            let x2 = &x * &x;
            let xy = &x * &yy;
            c.eq("w-map.I.lower-closed-form", &i_lo, &(&xy / (&x2 + QuadElem::from_int(2, d))));
            c.eq("w-map.I.upper-closed-form", &i_hi, &((&x2 + &one) / &xy));
            c.eq("w-map.J.lower-closed-form", &j_lo, &-((&x2 + &one) / &xy));
            c.eq("w-map.J.upper-closed-form", &j_hi, &-(&xy / (&x2 + QuadElem::from_int(2, d))));
        }
        WKind::W2 => {
            c.lt("w-map.zero-positive", &QuadElem::zero(d), &z0);
            c.lt("w-map.pole-zero", &z0, &zp);
            c.lt("w-map.inverse-pole-zero", &zpp, &z0p);
            c.lt("w-map.inverse-zero-negative", &z0p, &QuadElem::zero(d));
        }
        WKind::W3 => {
            c.lt("w-map.pole-zero", &z0, &zp);
            c.lt("w-map.inverse-pole-zero", &zpp, &z0p);
        }
    }
    c.same("w-map.I.is-interval", &fwd, &open(&i_lo, &i_hi));
    c.lt("w-map.I.lower-bound", dst.0, &i_lo);
    c.lt("w-map.I.ordered", &i_lo, &i_hi);
    c.lt("w-map.I.upper-bound", &i_hi, dst.1);
    c.subset("w-map.I.inclusion", &fwd, &closed(dst.0, dst.1));
    c.same("w-map.J.is-interval", &back, &open(&j_lo, &j_hi));
    c.lt("w-map.J.lower-bound", src.0, &j_lo);
    c.lt("w-map.J.ordered", &j_lo, &j_hi);
    c.lt("w-map.J.upper-bound", &j_hi, src.1);
    c.subset("w-map.J.inclusion", &back, &closed(src.0, src.1));

    // Homothety z -> rho z.
    let rho = at(h2, &one);
    c.lt("homothety.rho-positive", &QuadElem::zero(d), &rho);
    c.lt("homothety.rho-below-one", &rho, &one);
    let (h_lo, h_hi) = (at(h2, &a2), at(h2, &b2));
    c.lt("homothety.I.lower-bound", &a1, &h_lo);
    c.lt("homothety.I.upper-bound", &h_hi, &b1);
    c.subset("homothety.I.inclusion", &closed(&a2, &b2).image(h2), &open(&a1, &b1));
    c.subset("homothety.inverse.inclusion", &open(&a1, &b1).complement().image(&h2.inverse()), &open(&b2, &a2));
    match kind {
        WKind::W1 => {
            let y2d = &yy * &yy;
            let bound = (&x * &x).scale(&int(3)) / &y2d;
            let inv_rho = rho.invert()?;
            c.lt("homothety.3x^2/(y^2 d)<5", &bound, &QuadElem::from_int(5, d));
            c.lt("homothety.5<1/rho", &QuadElem::from_int(5, d), &inv_rho);
            c.eq("homothety.1/rho", &inv_rho, &(&x * &x + &y2d + (&x * &yy).scale(&int(2))));
            let r = (&x / &yy).scale(&rat(3, 2));
            c.lt("homothety.rho*3x/(2y sqrt d)<y sqrt d/(2x)", &(&rho * &r), &(&yy / &x).scale(&rat(1, 2)));
        }
        WKind::W2 => {
            let lhs = (x.scale(&int(5)) + QuadElem::from_int(7, d)) / (x.scale(&int(7)) + QuadElem::from_int(5, d));
            c.lt("homothety.(5x+7)/(7x+5)<y sqrt d/x", &lhs, &(&yy / &x));
        }
        WKind::W3 => {}
    }
    Ok(LemmaReport { d, kind, checks: c.0 })
}
