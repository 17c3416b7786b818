//! Exact rank of sparse matrices.
//!
//! Columns are reduced one at a time against a table of pivot vectors keyed
//! by their leading row. Over GF(p) entries are machine words; over ℚ each
//! column is cleared of denominators and eliminated fraction-free, dividing
//! out the content after every step to keep entries small.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{Field, FieldScalar};
use crate::tqft::ExactLinearMap;

pub fn rank(m: &ExactLinearMap) -> usize {
    match m.field() {
        Field::Prime(p) => rank_mod_p(m, p as u64),
        Field::Rationals => rank_rational(m),
    }
}

fn modular_value(x: &FieldScalar) -> u64 {
    match x {
        FieldScalar::Modular { value, .. } => *value as u64,
        FieldScalar::Rational(_) => unreachable!("rational entry in a modular matrix"),
    }
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

type SparseMod = Vec<(usize, u64)>;

/// `row - k * pivot` over GF(p); both sorted by index.
fn axpy_mod(row: &SparseMod, k: u64, pivot: &SparseMod, p: u64) -> SparseMod {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ri = row.get(i).map_or(usize::MAX, |e| e.0);
        let pj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ri < pj {
            out.push(row[i]);
            i += 1;
        } else if pj < ri {
            out.push((pj, (p - k * pivot[j].1 % p) % p));
            j += 1;
        } else {
            let v = (row[i].1 + p - k * pivot[j].1 % p) % p;
            if v != 0 {
                out.push((ri, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn rank_mod_p(m: &ExactLinearMap, p: u64) -> usize {
    let mut pivots: HashMap<usize, SparseMod> = HashMap::new();
    for c in 0..m.cols() {
        let mut v: SparseMod = m
            .column(c)
            .iter()
            .map(|(&r, x)| (r, modular_value(x)))
            .filter(|&(_, x)| x != 0)
            .collect();
        while let Some(&(lead, val)) = v.first() {
            match pivots.get(&lead) {
                Some(pv) => v = axpy_mod(&v, val, pv, p),
                None => {
                    let inv = inverse_mod(val, p);
                    for e in &mut v {
                        e.1 = e.1 * inv % p;
                    }
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

type SparseInt = Vec<(usize, BigInt)>;

fn integer_column(m: &ExactLinearMap, c: usize) -> SparseInt {
    let entries: Vec<(usize, &num_rational::BigRational)> = m
        .column(c)
        .iter()
        .filter_map(|(&r, x)| match x {
            FieldScalar::Rational(q) if !q.is_zero() => Some((r, q)),
            FieldScalar::Rational(_) => None,
            FieldScalar::Modular { .. } => unreachable!("modular entry in a rational matrix"),
        })
        .collect();
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let mut v: SparseInt = entries
        .into_iter()
        .map(|(r, q)| (r, q.numer() * (&lcm / q.denom())))
        .collect();
    normalize(&mut v);
    v
}

/// Divides by the content and makes the leading entry positive.
fn normalize(v: &mut SparseInt) {
    let Some(first) = v.first() else { return };
    let mut g = first.1.abs();
    for (_, x) in v.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if first.1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for e in v.iter_mut() {
            e.1 = &e.1 / &g;
        }
    }
}

/// `a * row - b * pivot`, dropping zeros.
fn combine(row: &SparseInt, a: &BigInt, pivot: &SparseInt, b: &BigInt) -> SparseInt {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ri = row.get(i).map_or(usize::MAX, |e| e.0);
        let pj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ri < pj {
            out.push((ri, a * &row[i].1));
            i += 1;
        } else if pj < ri {
            out.push((pj, -(b * &pivot[j].1)));
            j += 1;
        } else {
            let v = a * &row[i].1 - b * &pivot[j].1;
            if !v.is_zero() {
                out.push((ri, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn rank_rational(m: &ExactLinearMap) -> usize {
    let mut pivots: HashMap<usize, SparseInt> = HashMap::new();
    for c in 0..m.cols() {
        let mut v = integer_column(m, c);
        while let Some((lead, val)) = v.first().map(|(r, x)| (*r, x.clone())) {
            match pivots.get(&lead) {
                Some(pv) => {
                    let g = val.gcd(&pv[0].1);
                    v = combine(&v, &(&pv[0].1 / &g), pv, &(val / g));
                    normalize(&mut v);
                }
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}
