#![allow(dead_code)]

use num::BigInt;
use proptest::prelude::*;

use quatfree::exactnum::{int, rat, QuadElem, SquareFreeD};
use quatfree::mobius::{Arc, ExtPoint, MobiusMap};
use quatfree::quaternion::{ImagQuad, QuatElem};

fn exact_sqrt(v: u128) -> Option<u128> {
    let mut r = (v as f64).sqrt() as u128;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    (r * r == v).then_some(r)
}

fn squares_mod(m: u64) -> Vec<bool> {
    let mut t = vec![false; m as usize];
    for r in 0..m {
        t[(r * r % m) as usize] = true;
    }
    t
}

const BLOCK: u64 = 16 * 9 * 5 * 7 * 11 * 13;
const FACTORS: [u64; 6] = [16, 9, 5, 7, 11, 13];

/// Smallest `y ≥ 1` with `d·y² ± 1` a perfect square, found by walking `y`
/// upward. Past the first block, `y` only visits residues mod 720720 where
/// `d·y² ± 1` is a square modulo every factor of 720720.
pub fn brute_force_pell(d: u64) -> (BigInt, BigInt, i32) {
    let mask64 = squares_mod(64);
    let dd = d as u128;
    let check = |y: u128| -> Option<(u128, i32)> {
        let base = dd * y * y;
        for (v, s) in [(base - 1, -1), (base + 1, 1)] {
            if mask64[(v % 64) as usize] {
                if let Some(x) = exact_sqrt(v) {
                    return Some((x, s));
                }
            }
        }
        None
    };
    let done = |y: u128, (x, s): (u128, i32)| (BigInt::from(x), BigInt::from(y), s);
    for y in 1..BLOCK as u128 {
        if let Some(hit) = check(y) {
            return done(y, hit);
        }
    }
    let tables: Vec<Vec<bool>> = FACTORS.iter().map(|&m| squares_mod(m)).collect();
    let admissible: Vec<u64> = (0..BLOCK)
        .filter(|&r| {
            let t = (d % BLOCK) * (r * r % BLOCK) % BLOCK;
            [t + BLOCK - 1, t + 1].iter().any(|&v| FACTORS.iter().zip(&tables).all(|(&m, tab)| tab[(v % m) as usize]))
        })
        .collect();
    let mut base = BLOCK as u128;
    loop {
        for &r in &admissible {
            let y = base + r as u128;
            if let Some(hit) = check(y) {
                return done(y, hit);
            }
        }
        base += BLOCK as u128;
    }
}

pub const SMALL_D: [u64; 8] = [1, 2, 3, 5, 6, 7, 11, 13];

pub fn arb_d() -> impl Strategy<Value = SquareFreeD> {
    proptest::sample::select(SMALL_D.to_vec()).prop_map(|d| SquareFreeD::new(d).unwrap())
}

fn arb_small_rat() -> impl Strategy<Value = quatfree::exactnum::Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, k)| rat(n, k))
}

pub fn arb_quat(d: SquareFreeD) -> impl Strategy<Value = QuatElem> {
    proptest::collection::vec((arb_small_rat(), arb_small_rat()), 4).prop_map(move |c| {
        let f = |i: usize| ImagQuad::new(c[i].0.clone(), c[i].1.clone(), d);
        QuatElem::new(f(0), f(1), f(2), f(3))
    })
}

pub fn arb_quad(d: SquareFreeD) -> impl Strategy<Value = QuadElem> {
    (-5i64..=5, -3i64..=3, 1i64..=2).prop_map(move |(a, b, k)| QuadElem::new(rat(a, k), int(b), d))
}

pub fn arb_point(d: SquareFreeD) -> impl Strategy<Value = ExtPoint> {
    prop_oneof![1 => Just(ExtPoint::Infinity), 8 => arb_quad(d).prop_map(ExtPoint::Finite)]
}

pub fn arb_map(d: SquareFreeD) -> impl Strategy<Value = MobiusMap> {
    (arb_quad(d), arb_quad(d), arb_quad(d), arb_quad(d))
        .prop_filter_map("singular", |(a, b, c, e)| MobiusMap::new(a, b, c, e).ok())
}

pub fn arb_arc(d: SquareFreeD) -> impl Strategy<Value = Arc> {
    (arb_point(d), arb_point(d), any::<bool>(), any::<bool>(), 0u8..10).prop_map(|(s, e, sc, ec, pick)| match pick {
        0 => Arc::Full,
        1 => Arc::Point(s),
        2 => Arc::Punctured(s),
        _ => Arc::new(s.clone(), e, sc, ec).unwrap_or(Arc::Point(s)),
    })
}

/// A field together with randomized data living in it.
pub fn with_d<S: Strategy>(f: impl Fn(SquareFreeD) -> S + Clone + 'static) -> impl Strategy<Value = (SquareFreeD, S::Value)>
where
    S::Value: std::fmt::Debug,
{
    arb_d().prop_flat_map(move |d| (Just(d), f(d)))
}
