//! Brute-force linear algebra on explicit degree pieces, written without the
//! Gröbner machinery so it can serve as an oracle.

#![allow(dead_code)]

use std::collections::HashMap;

use qacm::free::{FreeModule, GradedMap, Vector};
use qacm::{GradedModule, Monomial, Polynomial, PrimeField, Ring};

/// Rank of a set of sparse vectors over `F_p`, by incremental echelon form.
pub fn rank(field: PrimeField, dim: usize, vectors: impl IntoIterator<Item = Vec<(usize, u32)>>) -> usize {
    let p = field.characteristic() as u64;
    let mut pivots: Vec<Option<Vec<(usize, u32)>>> = vec![None; dim];
    let mut acc = vec![0u64; dim];
    let mut r = 0;
    for v in vectors {
        if v.is_empty() {
            continue;
        }
        for &(i, c) in &v {
            acc[i] = (acc[i] + c as u64) % p;
        }
        let start = v.iter().map(|t| t.0).min().unwrap();
        let mut lead = None;
        for c in start..dim {
            if acc[c] == 0 {
                continue;
            }
            match &pivots[c] {
                Some(row) => {
                    let k = acc[c];
                    for &(j, x) in row {
                        acc[j] = (acc[j] + (p - k) * x as u64) % p;
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        if let Some(c) = lead {
            let inv = field.inv(acc[c] as u32) as u64;
            let row: Vec<(usize, u32)> = (c..dim)
                .filter(|&j| acc[j] != 0)
                .map(|j| (j, (acc[j] * inv % p) as u32))
                .collect();
            pivots[c] = Some(row);
            r += 1;
        }
        acc.iter_mut().for_each(|x| *x = 0);
    }
    r
}

/// Index of the monomial basis of `⊕ S_{n - a_i}`.
pub struct Piece {
    pub offsets: Vec<usize>,
    pub index: Vec<HashMap<Monomial, usize>>,
    pub dim: usize,
}

impl Piece {
    pub fn new(free: &FreeModule, n: i32) -> Self {
        let mut offsets = Vec::new();
        let mut index = Vec::new();
        let mut dim = 0;
        for &a in &free.twists {
            offsets.push(dim);
            let d = n - a;
            let mons = if d >= 0 { Monomial::all_of_degree(d as u32) } else { Vec::new() };
            let map: HashMap<Monomial, usize> = mons.iter().enumerate().map(|(k, m)| (*m, k)).collect();
            dim += map.len();
            index.push(map);
        }
        Piece { offsets, index, dim }
    }

    /// `m · v` as a sparse vector of this piece.
    pub fn image(&self, m: &Monomial, v: &Vector) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (i, p) in v.components().iter().enumerate() {
            for (t, c) in p.terms() {
                let k = self.index[i][&t.mul(m)];
                out.push((self.offsets[i] + k, *c));
            }
        }
        out
    }
}

fn spanning_set(n: i32, vectors: &[(Vector, i32)], piece: &Piece) -> Vec<Vec<(usize, u32)>> {
    let mut out = Vec::new();
    for (v, deg) in vectors {
        let d = n - deg;
        if d < 0 || v.is_zero() {
            continue;
        }
        for m in Monomial::all_of_degree(d as u32) {
            out.push(piece.image(&m, v));
        }
    }
    out
}

fn quadric_vectors(ring: &Ring, free: &FreeModule) -> Vec<(Vector, i32)> {
    let f = ring.field();
    match ring.quadric_form() {
        None => Vec::new(),
        Some(q) => free
            .twists
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let mut v = Vector::zero(f, free.rank());
                v.set(i, q.clone());
                (v, a + 2)
            })
            .collect(),
    }
}

/// `dim coker(map)_n` over `ring`: the degree-`n` piece of the target over
/// `S`, divided by the span of all monomial multiples of relations and of
/// `q·e_i`.
pub fn cokernel_dim(ring: &Ring, map: &GradedMap, n: i32) -> u64 {
    let target = map.target();
    let piece = Piece::new(target, n);
    let mut rels: Vec<(Vector, i32)> =
        map.columns().iter().cloned().zip(map.source().twists.iter().copied()).collect();
    rels.extend(quadric_vectors(ring, target));
    let span = spanning_set(n, &rels, &piece);
    (piece.dim - rank(ring.field(), piece.dim, span)) as u64
}

pub fn module_dim(m: &GradedModule, n: i32) -> u64 {
    cokernel_dim(m.ring(), m.presentation(), n)
}

/// `dim ring_n`, as a cokernel.
pub fn ring_dim(ring: &Ring, n: i32) -> u64 {
    let f = ring.field();
    let free = FreeModule::new(vec![0]);
    cokernel_dim(ring, &GradedMap::zero(f, FreeModule::default(), free), n)
}

/// Rank over `ring` of `map_n : source_n → target_n`.
pub fn map_rank(ring: &Ring, map: &GradedMap, n: i32) -> u64 {
    let f = ring.field();
    let target = map.target();
    let mut all: Vec<(Vector, i32)> = map.columns().iter().cloned().zip(map.source().twists.iter().copied()).collect();
    let qv = quadric_vectors(ring, target);
    let piece = Piece::new(target, n);
    let base = rank(f, piece.dim, spanning_set(n, &qv, &piece));
    all.extend(qv);
    (rank(f, piece.dim, spanning_set(n, &all, &piece)) - base) as u64
}

/// `dim (I)_n` for an ideal of `ring` given by generators, via ranks in `S_n`.
pub fn ideal_dim(ring: &Ring, gens: &[Polynomial], n: i32) -> u64 {
    let f = ring.field();
    let free = FreeModule::new(vec![0]);
    let cols: Vec<Vector> = gens.iter().map(|g| Vector::new(vec![g.clone()])).collect();
    let map = GradedMap::from_columns(f, free, cols);
    map_rank(ring, &map, n)
}

/// `dim` of the degree-`n` part of `ker(R(-1)^3 → R)` for the three linear
/// forms `l`: `3·dim R_{n-1} - rank`.
pub fn linear_kernel_dim(ring: &Ring, l: &[Polynomial], n: i32) -> u64 {
    3 * ring_dim(ring, n - 1) - ideal_dim(ring, l, n)
}

/// Polynomials from text.
pub fn polys(ring: &Ring, text: &str) -> Vec<Polynomial> {
    qacm::parse::parse_polynomial_list(text, ring.field()).unwrap()
}
