//! Syzygies, minimization of presentation matrices, and minimal graded free
//! resolutions over `S`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::free::{FreeModule, GradedMap, Vector};
use crate::groebner::{minimal_generators, syzygies_over_s, GroebnerBasis};
use crate::module::GradedModule;
use crate::monomial::{Monomial, TermOrder};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Default bound on the number of syzygy steps.
pub const DEFAULT_MAX_STEPS: usize = 6;

/// `q·e_i` for every basis vector of `free`, or nothing over `S`.
pub(crate) fn quadric_relations(ring: &Ring, free: &FreeModule) -> Vec<Vector> {
    let f = ring.field();
    match ring.quadric_form() {
        None => Vec::new(),
        Some(q) => (0..free.rank())
            .map(|i| {
                let mut v = Vector::zero(f, free.rank());
                v.set(i, q.clone());
                v
            })
            .collect(),
    }
}

/// Dimension of the degree-`n` part of a free module over `ring`.
pub fn free_dimension(ring: &Ring, free: &FreeModule, n: i32) -> u64 {
    free.twists.iter().map(|a| ring_dimension(ring, n - a)).sum()
}

/// `dim ring_d`.
pub fn ring_dimension(ring: &Ring, d: i32) -> u64 {
    let s = Monomial::count_of_degree(d as i64);
    if ring.is_quotient() {
        s - Monomial::count_of_degree(d as i64 - 2)
    } else {
        s
    }
}

/// Minimal generators of the kernel of `map` over `ring`, as the columns of
/// a map into `map.source()`.
pub fn syzygy(ring: &Ring, map: &GradedMap) -> Result<GradedMap> {
    let f = ring.field();
    let r = map.num_cols();
    let mut cols = map.columns().to_vec();
    cols.extend(quadric_relations(ring, map.target()));
    let syz = syzygies_over_s(f, map.target(), &cols)?;
    let proj: Vec<Vector> = syz.into_iter().map(|s| Vector::new(s.into_components().into_iter().take(r).collect())).collect();
    let extra = quadric_relations(ring, map.source());
    let mins = minimal_generators(f, map.source(), &proj, &extra);
    Ok(GradedMap::from_columns(f, map.source().clone(), mins))
}

/// Syzygies of a list of homogeneous vectors of `free`; the source of the
/// returned map is the free module on the (nonzero) generators.
pub fn syzygy_of_generators(ring: &Ring, free: &FreeModule, gens: &[Vector]) -> Result<GradedMap> {
    let map = GradedMap::from_columns(ring.field(), free.clone(), gens.to_vec());
    syzygy(ring, &map)
}

fn constant_entry(map: &GradedMap) -> Option<(usize, usize, u32)> {
    for (c, col) in map.columns().iter().enumerate() {
        for (r, p) in col.components().iter().enumerate() {
            if !p.is_zero() && p.is_constant() {
                return Some((r, c, p.constant_coefficient()));
            }
        }
    }
    None
}

/// Removes unit entries of a presentation matrix by Gaussian pivoting. Each
/// pivot at `(r, c)` drops target basis vector `r` and source basis vector
/// `c`; the cokernel is unchanged up to isomorphism.
pub fn minimize(map: &GradedMap) -> GradedMap {
    let f = map.field();
    let mut cur = map.clone();
    while let Some((r, c, u)) = constant_entry(&cur) {
        let pivot = cur.columns()[c].clone();
        let inv = f.inv(u);
        let mut cols = Vec::new();
        let mut twists = Vec::new();
        for (j, col) in cur.columns().iter().enumerate() {
            if j == c {
                continue;
            }
            let a = col.get(r);
            let v = if a.is_zero() {
                col.clone()
            } else {
                col.add_mul(&a.scale(f.neg(inv)), &pivot)
            };
            let mut comps = v.into_components();
            comps.remove(r);
            cols.push(Vector::new(comps));
            twists.push(cur.source().twists[j]);
        }
        let mut target = cur.target().twists.clone();
        target.remove(r);
        cur = GradedMap::new_unchecked(f, FreeModule::new(twists), FreeModule::new(target), cols);
    }
    cur
}

/// A minimal presentation over `ring` of the cokernel of `map`: no unit
/// entries, and the relations minimally generate the relation module
/// modulo `q` times the target.
pub fn minimal_presentation(ring: &Ring, map: &GradedMap) -> GradedMap {
    let m = minimize(map);
    let extra = quadric_relations(ring, m.target());
    let cols = minimal_generators(ring.field(), m.target(), m.columns(), &extra);
    GradedMap::from_columns(ring.field(), m.target().clone(), cols)
}

/// Graded Betti numbers: `rows[i]` lists `(degree, count)` for `F_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub columns: Vec<Vec<(i32, usize)>>,
}

impl BettiTable {
    pub fn from_modules(mods: &[FreeModule]) -> Self {
        BettiTable { columns: mods.iter().map(FreeModule::degree_counts).collect() }
    }

    /// Total Betti numbers `β_i`.
    pub fn totals(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.iter().map(|(_, k)| k).sum()).collect()
    }

    pub fn get(&self, i: usize, degree: i32) -> usize {
        self.columns
            .get(i)
            .and_then(|c| c.iter().find(|(d, _)| *d == degree).map(|(_, k)| *k))
            .unwrap_or(0)
    }
}

impl fmt::Display for BettiTable {
    /// Rows indexed by `degree - i`, one column per homological degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all: Vec<i32> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |(d, _)| d - i as i32))
            .collect();
        let (Some(&lo), Some(&hi)) = (all.iter().min(), all.iter().max()) else {
            return writeln!(f, "0");
        };
        let totals: Vec<String> = self.totals().iter().map(|t| t.to_string()).collect();
        writeln!(f, "total:\t{}", totals.join("\t"))?;
        for row in lo..=hi {
            let cells: Vec<String> = (0..self.columns.len())
                .map(|i| match self.get(i, row + i as i32) {
                    0 => ".".to_string(),
                    k => k.to_string(),
                })
                .collect();
            writeln!(f, "{row}:\t{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

/// A graded free resolution `… → F_2 → F_1 → F_0`, stored as the maps
/// `maps[i] : F_{i+1} → F_i`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub ring: Ring,
    pub f0: FreeModule,
    pub maps: Vec<GradedMap>,
    pub minimal: bool,
}

impl Resolution {
    /// `F_i` for `i = 0 ..= length`.
    pub fn modules(&self) -> Vec<FreeModule> {
        let mut out = vec![self.f0.clone()];
        out.extend(self.maps.iter().map(|m| m.source().clone()));
        out
    }

    /// Number of nonzero maps; the projective dimension when complete.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_modules(&self.modules())
    }

    /// Castelnuovo–Mumford regularity: `max_i (max degree of F_i) - i`.
    pub fn regularity(&self) -> Option<i32> {
        self.modules()
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.twists.iter().max().map(|d| d - i as i32))
            .max()
    }

    /// Checks `d_i ∘ d_{i+1} = 0` exactly.
    pub fn composes_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].compose(&w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// No map has a unit entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| !m.has_nonzero_constant_entry())
    }

    /// Degreewise exactness at `F_1, …, F_k` for every `n` in `[lo, hi]`:
    /// `dim F_i,n = rank (d_i)_n + rank (d_{i+1})_n`, with the ranks of the
    /// degree pieces read off from Gröbner bases of the images.
    pub fn is_exact_on(&self, lo: i32, hi: i32) -> Result<bool> {
        let ranks: Vec<Vec<u64>> = self.maps.iter().map(|m| map_ranks(&self.ring, m, lo, hi)).collect::<Result<_>>()?;
        let mods = self.modules();
        for i in 1..mods.len() {
            for (k, n) in (lo..=hi).enumerate() {
                let dim = free_dimension(&self.ring, &mods[i], n);
                let below = ranks[i - 1][k];
                let above = ranks.get(i).map(|r| r[k]).unwrap_or(0);
                if dim != below + above {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Hilbert function of `coker(map)` over `ring` on `[lo, hi]`.
pub fn cokernel_hilbert(ring: &Ring, map: &GradedMap, lo: i32, hi: i32) -> Result<Vec<u64>> {
    let mut cols = map.columns().to_vec();
    cols.extend(quadric_relations(ring, map.target()));
    let cols: Vec<Vector> = cols.into_iter().filter(|c| !c.is_zero()).collect();
    let gb = GroebnerBasis::compute(ring.field(), map.target(), &cols, TermOrder::Grevlex)?;
    Ok((lo..=hi).map(|n| gb.standard_monomial_count(n)).collect())
}

/// Ranks of the degree pieces `map_n : source_n → target_n` over `ring`.
pub fn map_ranks(ring: &Ring, map: &GradedMap, lo: i32, hi: i32) -> Result<Vec<u64>> {
    let coker = cokernel_hilbert(ring, map, lo, hi)?;
    Ok((lo..=hi).zip(coker).map(|(n, c)| free_dimension(ring, map.target(), n) - c).collect())
}

/// Minimal graded free resolution over `S` of a module given over `S` or `R`
/// (an `R`-module is regarded as an `S`-module through its `q`-relations).
pub fn minimal_resolution_s(m: &GradedModule, max_steps: usize) -> Result<Resolution> {
    let s = m.ring().ambient_polynomial_ring();
    let pres = m.s_presentation();
    let mut maps = vec![minimal_presentation(&s, &pres)];
    let f0 = maps[0].target().clone();
    if maps[0].num_cols() == 0 {
        maps.clear();
    }
    while !maps.is_empty() && maps.len() < max_steps {
        let next = syzygy(&s, maps.last().unwrap())?;
        if next.num_cols() == 0 {
            break;
        }
        maps.push(next);
    }
    let res = Resolution { ring: s, f0, maps, minimal: true };
    if !res.composes_to_zero() {
        return Err(Error::Invariant("resolution maps do not compose to zero".into()));
    }
    Ok(res)
}

/// Projective dimension over `S`.
pub fn pd_s(m: &GradedModule) -> Result<usize> {
    Ok(minimal_resolution_s(m, DEFAULT_MAX_STEPS)?.length())
}

/// The E-type resolution `0 → E → L → I_C → 0` of a curve ideal over `R`.
#[derive(Debug, Clone)]
pub struct EtypeResolution {
    /// Minimal generators of `I_C`.
    pub generators: Vec<Polynomial>,
    /// `L = ⊕ R(-a_i)` with `a_i` the generator degrees.
    pub l: FreeModule,
    /// `α : L → R`, a `1 × r` matrix.
    pub alpha: GradedMap,
    /// `E = ker α`, embedded in `L` and minimally presented.
    pub kernel: GradedModule,
}

impl EtypeResolution {
    /// `dim L_n - dim E_n = dim (I_C)_n` for every `n` in `[lo, hi]`.
    pub fn is_exact_on(&self, lo: i32, hi: i32) -> Result<bool> {
        let ring = self.kernel.ring().clone();
        let e = self.kernel.hilbert_values(lo, hi)?;
        let image = map_ranks(&ring, &self.alpha, lo, hi)?;
        Ok((lo..=hi)
            .zip(e.iter().zip(image.iter()))
            .all(|(n, (e, i))| free_dimension(&ring, &self.l, n) == e + i))
    }
}

/// The E-type resolution of a saturated curve ideal over `R`.
pub fn etype_resolution(ideal: &crate::groebner::Ideal) -> Result<EtypeResolution> {
    let ring = ideal.ring().clone();
    if !ring.is_quotient() {
        return Err(Error::AmbientMismatch("E-type resolutions are taken over the quadric ring".into()));
    }
    crate::hilbert::require_curve(ideal)?;
    let sat = crate::groebner::saturate_irrelevant(ideal)?;
    if !ideal.contains_ideal(&sat)? {
        return Err(Error::NotSaturated);
    }
    let min = ideal.minimalize();
    let generators = min.gens().to_vec();
    let f = ring.field();
    let target = FreeModule::new(vec![0]);
    let cols: Vec<Vector> = generators.iter().map(|g| Vector::new(vec![g.clone()])).collect();
    let alpha = GradedMap::from_columns(f, target, cols);
    let l = alpha.source().clone();
    let kermap = syzygy(&ring, &alpha)?;
    let kernel = GradedModule::submodule(ring, l.clone(), kermap.columns().to_vec())?;
    Ok(EtypeResolution { generators, l, alpha, kernel })
}
