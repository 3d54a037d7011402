use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ExtPoint, MobiusMap};
use crate::error::{Error, Result};
use crate::exactnum::{rat, QuadElem, SquareFreeD};

/// A connected subset of Ω, read counterclockwise from `start` to `end`
/// (increasing reals, passing through ∞ when `start > end`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Arc {
    Full,
    Point(ExtPoint),
    /// Ω without one point.
    Punctured(ExtPoint),
    Proper { start: ExtPoint, end: ExtPoint, start_closed: bool, end_closed: bool },
}

impl Arc {
    /// With `start == end`, two closed flags give the point, two open flags the
    /// punctured circle; mixed flags are rejected.
    pub fn new(start: ExtPoint, end: ExtPoint, start_closed: bool, end_closed: bool) -> Result<Arc> {
        if start != end {
            return Ok(Arc::Proper { start, end, start_closed, end_closed });
        }
        match (start_closed, end_closed) {
            (true, true) => Ok(Arc::Point(start)),
            (false, false) => Ok(Arc::Punctured(start)),
            _ => Err(Error::DegenerateArc("half-open arc with equal endpoints")),
        }
    }

    pub fn open(start: ExtPoint, end: ExtPoint) -> Arc {
        Arc::new(start, end, false, false).unwrap()
    }

    pub fn closed(start: ExtPoint, end: ExtPoint) -> Arc {
        Arc::new(start, end, true, true).unwrap()
    }

    pub fn contains(&self, z: &ExtPoint) -> bool {
        match self {
            Arc::Full => true,
            Arc::Point(p) => p == z,
            Arc::Punctured(p) => p != z,
            Arc::Proper { start, end, start_closed, end_closed } => {
                if z == start {
                    *start_closed
                } else if z == end {
                    *end_closed
                } else if start < end {
                    start < z && z < end
                } else {
                    z > start || z < end
                }
            }
        }
    }

    /// Endpoints: none for Ω, one for the degenerate cases, two otherwise.
    pub fn endpoints(&self) -> Vec<&ExtPoint> {
        match self {
            Arc::Full => vec![],
            Arc::Point(p) | Arc::Punctured(p) => vec![p],
            Arc::Proper { start, end, .. } => vec![start, end],
        }
    }

    pub fn parse(s: &str, d: SquareFreeD) -> Result<Arc> {
        let s = s.trim();
        let bad = || Error::Parse(s.to_string());
        if s == "Omega" {
            return Ok(Arc::Full);
        }
        if let Some(p) = s.strip_prefix("Omega\\{").and_then(|r| r.strip_suffix('}')) {
            return Ok(Arc::Punctured(ExtPoint::parse(p, d)?));
        }
        if let Some(p) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            return Ok(Arc::Point(ExtPoint::parse(p, d)?));
        }
        let mut chars = s.chars();
        let first = chars.next().ok_or_else(bad)?;
        let last = chars.next_back().ok_or_else(bad)?;
        let inner: &str = &s[first.len_utf8()..s.len() - last.len_utf8()];
        let start_closed = match first {
            '[' => true,
            ']' => false,
            _ => return Err(bad()),
        };
        let end_closed = match last {
            ']' => true,
            '[' => false,
            _ => return Err(bad()),
        };
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        Arc::new(ExtPoint::parse(a, d)?, ExtPoint::parse(b, d)?, start_closed, end_closed)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arc::Full => write!(f, "Omega"),
            Arc::Point(p) => write!(f, "{{{p}}}"),
            Arc::Punctured(p) => write!(f, "Omega\\{{{p}}}"),
            Arc::Proper { start, end, start_closed, end_closed } => {
                let l = if *start_closed { '[' } else { ']' };
                let r = if *end_closed { ']' } else { '[' };
                write!(f, "{l}{start}, {end}{r}")
            }
        }
    }
}

/// Outcome of a containment test `A ⊆ B`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Containment {
    pub holds: bool,
    /// A point of `A \ B` when containment fails.
    pub witness: Option<String>,
    /// The failure consists of isolated endpoints only.
    pub boundary_only: bool,
}

/// A finite union of arcs of Ω, kept as a cyclic sequence of breakpoints
/// with membership flags for each breakpoint and each open gap after it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ArcSet {
    d: SquareFreeD,
    pts: Vec<ExtPoint>,
    in_pt: Vec<bool>,
    /// `in_gap[i]` covers the open arc from `pts[i]` to the next breakpoint;
    /// the last gap wraps to `pts[0]`.
    in_gap: Vec<bool>,
    /// Membership when there are no breakpoints.
    all: bool,
}

impl ArcSet {
    pub fn empty(d: SquareFreeD) -> ArcSet {
        ArcSet { d, pts: vec![], in_pt: vec![], in_gap: vec![], all: false }
    }

    pub fn full(d: SquareFreeD) -> ArcSet {
        ArcSet { all: true, ..ArcSet::empty(d) }
    }

    pub fn d(&self) -> SquareFreeD {
        self.d
    }

    pub fn from_arc(arc: &Arc, d: SquareFreeD) -> ArcSet {
        match arc {
            Arc::Full => ArcSet::full(d),
            Arc::Point(p) => ArcSet { d, pts: vec![p.clone()], in_pt: vec![true], in_gap: vec![false], all: false },
            Arc::Punctured(p) => ArcSet { d, pts: vec![p.clone()], in_pt: vec![false], in_gap: vec![true], all: false },
            Arc::Proper { start, end, start_closed, end_closed } => {
                let (pts, in_pt, in_gap) = if start < end {
                    (vec![start.clone(), end.clone()], vec![*start_closed, *end_closed], vec![true, false])
                } else {
                    (vec![end.clone(), start.clone()], vec![*end_closed, *start_closed], vec![false, true])
                };
                ArcSet { d, pts, in_pt, in_gap, all: false }
            }
        }
    }

    pub fn from_arcs(arcs: &[Arc], d: SquareFreeD) -> ArcSet {
        arcs.iter().fold(ArcSet::empty(d), |acc, a| acc.union(&ArcSet::from_arc(a, d)))
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty() && !self.all
    }

    pub fn is_full(&self) -> bool {
        self.pts.is_empty() && self.all
    }

    pub fn contains(&self, z: &ExtPoint) -> bool {
        if self.pts.is_empty() {
            return self.all;
        }
        match self.pts.binary_search(z) {
            Ok(i) => self.in_pt[i],
            Err(0) => *self.in_gap.last().unwrap(),
            Err(i) => self.in_gap[i - 1],
        }
    }

    pub fn complement(&self) -> ArcSet {
        ArcSet {
            d: self.d,
            pts: self.pts.clone(),
            in_pt: self.in_pt.iter().map(|b| !b).collect(),
            in_gap: self.in_gap.iter().map(|b| !b).collect(),
            all: !self.all,
        }
    }

    /// A point strictly inside gap `i` of the breakpoint list `pts`.
    fn gap_sample(pts: &[ExtPoint], i: usize, d: SquareFreeD) -> ExtPoint {
        let n = pts.len();
        let one = QuadElem::one(d);
        if n == 1 {
            return match &pts[0] {
                ExtPoint::Infinity => ExtPoint::Finite(QuadElem::zero(d)),
                ExtPoint::Finite(p) => ExtPoint::Finite(p + &one),
            };
        }
        if i + 1 < n {
            match (&pts[i], &pts[i + 1]) {
                (ExtPoint::Finite(p), ExtPoint::Finite(q)) => ExtPoint::Finite((p + q).scale(&rat(1, 2))),
                (ExtPoint::Finite(p), ExtPoint::Infinity) => ExtPoint::Finite(p + &one),
                _ => unreachable!("breakpoints are sorted with infinity last"),
            }
        } else {
            match (&pts[n - 1], &pts[0]) {
                (ExtPoint::Infinity, ExtPoint::Finite(q)) => ExtPoint::Finite(q - &one),
                _ => ExtPoint::Infinity,
            }
        }
    }

    fn combine(&self, other: &ArcSet, op: impl Fn(bool, bool) -> bool) -> ArcSet {
        let mut pts: Vec<ExtPoint> = self.pts.iter().chain(other.pts.iter()).cloned().collect();
        pts.sort();
        pts.dedup();
        if pts.is_empty() {
            return ArcSet { all: op(self.all, other.all), ..ArcSet::empty(self.d) };
        }
        let in_pt = pts.iter().map(|p| op(self.contains(p), other.contains(p))).collect();
        let in_gap = (0..pts.len())
            .map(|i| {
                let z = ArcSet::gap_sample(&pts, i, self.d);
                op(self.contains(&z), other.contains(&z))
            })
            .collect();
        let mut out = ArcSet { d: self.d, pts, in_pt, in_gap, all: false };
        out.normalize();
        out
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &ArcSet) -> ArcSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &ArcSet) -> ArcSet {
        self.combine(other, |a, b| a && !b)
    }

    /// Drops breakpoints whose flag agrees with both neighbouring gaps.
    fn normalize(&mut self) {
        loop {
            let n = self.pts.len();
            if n == 0 {
                return;
            }
            if n == 1 {
                if self.in_pt[0] == self.in_gap[0] {
                    self.all = self.in_pt[0];
                    self.pts.clear();
                    self.in_pt.clear();
                    self.in_gap.clear();
                }
                return;
            }
            let redundant = (0..n).find(|&i| {
                let prev = self.in_gap[(i + n - 1) % n];
                prev == self.in_pt[i] && prev == self.in_gap[i]
            });
            match redundant {
                Some(i) => {
                    self.pts.remove(i);
                    self.in_pt.remove(i);
                    self.in_gap.remove(i);
                }
                None => return,
            }
        }
    }

    /// Exact image under a Möbius map.
    pub fn image(&self, m: &MobiusMap) -> ArcSet {
        let n = self.pts.len();
        if n == 0 {
            return self.clone();
        }
        let mapped: Vec<ExtPoint> = self.pts.iter().map(|p| m.apply(p)).collect();
        let (mut pts, mut in_pt, mut in_gap) = if m.preserves_orientation() {
            (mapped, self.in_pt.clone(), self.in_gap.clone())
        } else {
            let pts: Vec<ExtPoint> = mapped.into_iter().rev().collect();
            let in_pt: Vec<bool> = self.in_pt.iter().rev().copied().collect();
            let in_gap: Vec<bool> = (0..n).map(|j| if j + 1 < n { self.in_gap[n - 2 - j] } else { self.in_gap[n - 1] }).collect();
            (pts, in_pt, in_gap)
        };
        let start = (0..n).min_by(|&a, &b| pts[a].cmp(&pts[b])).unwrap();
        pts.rotate_left(start);
        in_pt.rotate_left(start);
        in_gap.rotate_left(start);
        debug_assert!(pts.windows(2).all(|w| w[0] < w[1]));
        ArcSet { d: self.d, pts, in_pt, in_gap, all: false }
    }

    pub fn is_subset(&self, other: &ArcSet) -> Containment {
        let diff = self.difference(other);
        if diff.is_empty() {
            return Containment { holds: true, witness: None, boundary_only: false };
        }
        if diff.is_full() {
            return Containment { holds: false, witness: Some("0".into()), boundary_only: false };
        }
        let gap = diff.in_gap.iter().position(|&b| b);
        let witness = match gap {
            Some(i) => ArcSet::gap_sample(&diff.pts, i, diff.d),
            None => diff.pts[diff.in_pt.iter().position(|&b| b).unwrap()].clone(),
        };
        Containment { holds: false, witness: Some(witness.to_string()), boundary_only: gap.is_none() }
    }

    pub fn is_disjoint(&self, other: &ArcSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Decomposition into maximal connected arcs.
    pub fn arcs(&self) -> Vec<Arc> {
        let n = self.pts.len();
        if n == 0 {
            return if self.all { vec![Arc::Full] } else { vec![] };
        }
        // Cyclic element sequence: point 0, gap 0, point 1, gap 1, ...
        let flag = |e: usize| if e.is_multiple_of(2) { self.in_pt[e / 2] } else { self.in_gap[e / 2] };
        let len = 2 * n;
        let Some(off) = (0..len).find(|&e| !flag(e)) else {
            return vec![Arc::Full];
        };
        let mut out = Vec::new();
        let mut run_start: Option<usize> = None;
        for step in 1..=len {
            let e = (off + step) % len;
            match (flag(e), run_start) {
                (true, None) => run_start = Some(e),
                (false, Some(s)) => {
                    out.push(self.run_to_arc(s, (e + len - 1) % len));
                    run_start = None;
                }
                _ => {}
            }
        }
        out
    }

    fn run_to_arc(&self, s: usize, e: usize) -> Arc {
        let n = self.pts.len();
        if s == e && s.is_multiple_of(2) {
            return Arc::Point(self.pts[s / 2].clone());
        }
        let (start, start_closed) = (self.pts[s / 2].clone(), s.is_multiple_of(2));
        let (end, end_closed) = if e.is_multiple_of(2) { (self.pts[e / 2].clone(), true) } else { (self.pts[(e / 2 + 1) % n].clone(), false) };
        Arc::new(start, end, start_closed, end_closed).expect("runs never wrap onto a closed endpoint")
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs = self.arcs();
        if arcs.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = arcs.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" U "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn sf(d: u64) -> SquareFreeD {
        SquareFreeD::new(d).unwrap()
    }

    fn p(n: i64) -> ExtPoint {
        ExtPoint::Finite(QuadElem::from_int(n, sf(2)))
    }

    #[test]
    fn proper_arc_membership() {
        let a = Arc::new(ExtPoint::Infinity, p(-1), true, false).unwrap();
        assert!(a.contains(&ExtPoint::Infinity));
        assert!(a.contains(&p(-5)));
        assert!(!a.contains(&p(-1)));
        assert!(!a.contains(&p(0)));
        let b = Arc::new(p(1), ExtPoint::Infinity, false, true).unwrap();
        assert!(b.contains(&p(7)) && b.contains(&ExtPoint::Infinity) && !b.contains(&p(1)));
        let wrap = Arc::closed(p(3), p(-3));
        assert!(wrap.contains(&ExtPoint::Infinity) && wrap.contains(&p(10)) && !wrap.contains(&p(0)));
    }

    #[test]
    fn arcset_roundtrip_through_arcs() {
        let d = sf(2);
        for a in [
            Arc::closed(p(-2), p(3)),
            Arc::open(p(3), p(-2)),
            Arc::new(ExtPoint::Infinity, p(0), true, false).unwrap(),
            Arc::new(p(0), ExtPoint::Infinity, false, true).unwrap(),
            Arc::Point(p(4)),
            Arc::Punctured(ExtPoint::Infinity),
            Arc::Full,
        ] {
            assert_eq!(ArcSet::from_arc(&a, d).arcs(), vec![a.clone()], "{a}");
        }
        assert!(ArcSet::empty(d).arcs().is_empty());
    }

    #[test]
    fn union_merges_touching_arcs() {
        let d = sf(2);
        let a = ArcSet::from_arc(&Arc::new(p(0), p(1), true, false).unwrap(), d);
        let b = ArcSet::from_arc(&Arc::closed(p(1), p(2)), d);
        assert_eq!(a.union(&b).arcs(), vec![Arc::closed(p(0), p(2))]);
        let c = ArcSet::from_arc(&Arc::open(p(1), p(2)), d);
        let ac = a.union(&c);
        assert_eq!(ac.arcs().len(), 2);
        assert!(!ac.contains(&p(1)));
    }

    #[test]
    fn complement_of_closed_is_open_wrap() {
        let d = sf(2);
        let a = ArcSet::from_arc(&Arc::closed(p(-1), p(1)), d);
        assert_eq!(a.complement().arcs(), vec![Arc::open(p(1), p(-1))]);
        assert!(a.complement().complement() == a);
        assert!(a.is_disjoint(&a.complement()));
        assert!(a.union(&a.complement()).is_full());
    }

    #[test]
    fn subset_with_boundary_witness() {
        let d = sf(2);
        let a = ArcSet::from_arc(&Arc::closed(p(0), p(1)), d);
        let b = ArcSet::from_arc(&Arc::new(p(0), p(1), false, true).unwrap(), d);
        let c = a.is_subset(&b);
        assert!(!c.holds && c.boundary_only);
        assert_eq!(c.witness.as_deref(), Some("0"));
        assert!(b.is_subset(&a).holds);
        let big = ArcSet::from_arc(&Arc::closed(p(-1), p(3)), d);
        let c = big.is_subset(&a);
        assert!(!c.holds && !c.boundary_only);
    }

    #[test]
    fn image_under_reversing_map() {
        let d = sf(2);
        let inv = MobiusMap::from_ints([[0, -1], [1, 0]], d).unwrap();
        assert!(inv.preserves_orientation());
        let neg = MobiusMap::from_ints([[-1, 0], [0, 1]], d).unwrap();
        assert!(!neg.preserves_orientation());
        let a = Arc::new(p(1), p(2), true, false).unwrap();
        let s = ArcSet::from_arc(&a, d);
        assert_eq!(s.image(&neg).arcs(), vec![Arc::new(p(-2), p(-1), false, true).unwrap()]);
        let half = ExtPoint::Finite(QuadElem::new(rat(-1, 2), int(0), d));
        assert_eq!(s.image(&inv).arcs(), vec![Arc::new(p(-1), half, true, false).unwrap()]);
        // pole inside: ]-1, 1[ contains 0, image under -1/z is ]1, -1[ through infinity
        let s = ArcSet::from_arc(&Arc::open(p(-1), p(1)), d);
        assert_eq!(s.image(&inv).arcs(), vec![Arc::open(p(1), p(-1))]);
    }

    #[test]
    fn parse_and_display() {
        let d = sf(3);
        for s in ["[-1, 0[", "]1/2*sqrt(3), inf]", "{2}", "Omega", "Omega\\{inf}", "[inf, -1["] {
            assert_eq!(Arc::parse(s, d).unwrap().to_string(), s);
        }
        assert!(Arc::parse("(0, 1)", d).is_err());
        assert!(Arc::parse("[1, 1[", d).is_err());
    }
}
