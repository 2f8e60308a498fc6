//! Instance generators and end-to-end checks of the zero-free bounds and the
//! polynomial identities behind them.

use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::charpoly::{
    cp_boolean_expansion, cp_cocircuit_expansion, cp_delete_contract, cp_mobius,
};
use crate::error::{Error, Result};
use crate::gfq::{prime_power, FieldSpec, MAX_ORDER};
use crate::io;
use crate::matroid::{
    elements, find_small_cocircuit, full_mask, mask_of, Matroid, MinorView, RankFn,
};
use crate::poly::{largest_real_root, sturm_positive_beyond, IntPolynomial, RootInterval};
use crate::projgeom::{
    brylawski_charpoly, embed, extend, neck_of_edge, pg_build, pg_point_count, split_along_neck,
    starfish_expansion, starfish_sum, ExtensionMatroid, MAX_PG_POINTS,
};
use crate::treedecomp::{best_heuristic, width, Tree, TreeDecomposition};

pub const RANDOM_MAX_ELEMENTS: usize = 20;
pub const GRAPHIC_CHECK_MAX_EDGES: usize = 16;
pub const SEED_ENV: &str = "MZ_SEED";

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Construction {
    Random {
        r: usize,
        n: usize,
    },
    Glued {
        block_rank: usize,
        blocks: usize,
        overlap_rank: usize,
        density: f64,
    },
    Uniform {
        r: usize,
        n: usize,
    },
    Graphic {
        vertices: usize,
        edges: usize,
    },
    File {
        path: PathBuf,
    },
}

#[derive(Debug, Clone)]
pub struct InstanceRecord {
    pub id: String,
    pub construction: Construction,
    pub q: u32,
    pub matroid: Matroid,
    pub decomposition: TreeDecomposition,
    /// Width of `decomposition`, always recomputed, never read from input.
    pub width: usize,
    pub seed: u64,
}

impl InstanceRecord {
    pub fn new(
        id: impl Into<String>,
        construction: Construction,
        q: u32,
        matroid: Matroid,
        decomposition: TreeDecomposition,
        seed: u64,
    ) -> Result<Self> {
        let width = width(&matroid, &decomposition)?.width;
        Ok(InstanceRecord {
            id: id.into(),
            construction,
            q,
            matroid,
            decomposition,
            width,
            seed,
        })
    }

    pub fn summary(&self) -> InstanceSummary<'_> {
        InstanceSummary {
            id: &self.id,
            construction: &self.construction,
            q: self.q,
            elements: self.matroid.size(),
            rank: self.matroid.full_rank(),
            width: self.width,
            tree_vertices: self.decomposition.tree().vertex_count(),
            seed: self.seed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InstanceSummary<'a> {
    pub id: &'a str,
    pub construction: &'a Construction,
    pub q: u32,
    pub elements: usize,
    pub rank: usize,
    pub width: usize,
    pub tree_vertices: usize,
    pub seed: u64,
}

fn field(q: u32) -> Result<Arc<FieldSpec>> {
    Ok(Arc::new(FieldSpec::gf(q)?))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of the `index`-th instance drawn from a base seed.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index)
}

/// `MZ_SEED` if set and numeric.
pub fn seed_override() -> Option<u64> {
    std::env::var(SEED_ENV).ok()?.trim().parse().ok()
}

/// Uniformly random `r × n` matrix over GF(q); zero columns are resampled.
pub fn gen_random_linear(q: u32, r: usize, n: usize, seed: u64) -> Result<InstanceRecord> {
    if n > RANDOM_MAX_ELEMENTS {
        return Err(Error::TooLarge(format!(
            "random instances have at most {RANDOM_MAX_ELEMENTS} elements"
        )));
    }
    if r > n {
        return Err(Error::Parse(format!("rank {r} exceeds {n} columns")));
    }
    if r == 0 && n > 0 {
        return Err(Error::RankZero);
    }
    let f = field(q)?;
    let mut g = rng(seed);
    let columns: Vec<Vec<u8>> = (0..n)
        .map(|_| loop {
            let c: Vec<u8> = (0..r).map(|_| g.gen_range(0..q) as u8).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        })
        .collect();
    let m = Matroid::from_columns(f, r, columns)?;
    let (dec, _) = best_heuristic(&m);
    InstanceRecord::new(
        format!("random-q{q}-r{r}-n{n}-s{seed}"),
        Construction::Random { r, n },
        q,
        m,
        dec,
        seed,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GluedParams {
    pub q: u32,
    pub block_rank: usize,
    pub blocks: usize,
    pub overlap_rank: usize,
    /// Probability of keeping each point of each block.
    pub density: f64,
}

impl GluedParams {
    pub fn stride(&self) -> usize {
        self.block_rank - self.overlap_rank
    }

    pub fn coordinates(&self) -> usize {
        self.block_rank + (self.blocks - 1) * self.stride()
    }
}

/// A path of projective blocks: block `i` lives on coordinates
/// `[i·s, i·s + block_rank)` with `s = block_rank − overlap_rank`, so
/// consecutive blocks share an `overlap_rank`-dimensional coordinate subspace.
/// Each point of each block is kept with probability `density`; the witness is
/// the path with one vertex per block, each element on the first block that
/// contains it.
pub fn gen_glued(params: GluedParams, seed: u64) -> Result<InstanceRecord> {
    let GluedParams {
        q,
        block_rank,
        blocks,
        overlap_rank,
        density,
    } = params;
    if block_rank == 0 || blocks == 0 || overlap_rank >= block_rank {
        return Err(Error::Parse(
            "glued blocks need 0 <= overlap_rank < block_rank and at least one block".into(),
        ));
    }
    let f = field(q)?;
    let pg = pg_build(block_rank, f.clone())?;
    let dim = params.coordinates();
    if dim > crate::matroid::MAX_ROWS {
        return Err(Error::TooLarge(format!("{dim} coordinates")));
    }
    let mut g = rng(seed);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut columns: Vec<Vec<u8>> = Vec::new();
    let mut tau = Vec::new();
    for b in 0..blocks {
        let offset = b * params.stride();
        for p in pg.points() {
            let keep = g.gen_bool(density.clamp(0.0, 1.0));
            let mut v = vec![0u8; dim];
            v[offset..offset + block_rank].copy_from_slice(p);
            if !keep || seen.contains(&v) {
                continue;
            }
            if columns.len() == crate::matroid::MAX_ELEMENTS {
                return Err(Error::TooLarge("glued instance exceeds 24 elements".into()));
            }
            seen.insert(v.clone());
            columns.push(v);
            tau.push(b);
        }
    }
    if columns.is_empty() {
        let mut v = vec![0u8; dim];
        v[..block_rank].copy_from_slice(&pg.points()[0]);
        columns.push(v);
        tau.push(0);
    }
    let m = Matroid::from_columns(f, dim, columns)?;
    let dec = TreeDecomposition::new(Tree::path(blocks), tau)?;
    InstanceRecord::new(
        format!("glued-q{q}-b{block_rank}x{blocks}-o{overlap_rank}-s{seed}"),
        Construction::Glued {
            block_rank,
            blocks,
            overlap_rank,
            density,
        },
        q,
        m,
        dec,
        seed,
    )
}

/// Two glued blocks with some points of their shared subspace removed, so the
/// edge between the blocks has a non-empty external neck whenever both blocks
/// still span their coordinates.
pub fn gen_extension(
    q: u32,
    block_rank: usize,
    overlap_rank: usize,
    density: f64,
    seed: u64,
) -> Result<InstanceRecord> {
    if overlap_rank == 0 {
        return Err(Error::Parse(
            "an empty overlap has no neck to remove points from".into(),
        ));
    }
    let params = GluedParams {
        q,
        block_rank,
        blocks: 2,
        overlap_rank,
        density,
    };
    let glued = gen_glued(params, seed)?;
    let rep = glued
        .matroid
        .linear_rep()
        .expect("glued instances are linear");
    let shared = |e: usize| {
        rep.column(e)
            .iter()
            .enumerate()
            .all(|(c, &x)| x == 0 || (params.stride()..block_rank).contains(&c))
    };
    let mut g = rng(seed ^ 0x5EED);
    let candidates: Vec<usize> = (0..glued.matroid.size()).filter(|&e| shared(e)).collect();
    let mut removed: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|_| g.gen_bool(0.5))
        .collect();
    if removed.is_empty() {
        if let Some(&e) = candidates.choose(&mut g) {
            removed.push(e);
        }
    }
    let kept = full_mask(glued.matroid.size()) & !mask_of(&removed);
    let m = glued.matroid.restrict(kept)?;
    let tau = elements(kept)
        .map(|e| glued.decomposition.assignment()[e])
        .collect();
    let dec = TreeDecomposition::new(glued.decomposition.tree().clone(), tau)?;
    InstanceRecord::new(
        format!("extension-q{q}-b{block_rank}-o{overlap_rank}-s{seed}"),
        glued.construction,
        q,
        m,
        dec,
        seed,
    )
}

/// Smallest supported prime power `q` with `q + 1 >= n`.
pub fn uniform_field_order(n: usize) -> Option<u32> {
    (2..=MAX_ORDER).find(|&q| prime_power(q).is_some() && q as usize + 1 >= n)
}

/// `U_{r,n}` as the columns `(1, t, …, t^{r−1})` for `t` in GF(q) plus the
/// point `(0, …, 0, 1)`; any `r` of them are independent.
pub fn gen_uniform(r: usize, n: usize, q: Option<u32>) -> Result<InstanceRecord> {
    let q = match q {
        Some(q) => q,
        None => uniform_field_order(n)
            .ok_or_else(|| Error::TooLarge(format!("U({r},{n}) needs q >= {}", n - 1)))?,
    };
    if n > q as usize + 1 {
        return Err(Error::Parse(format!(
            "U({r},{n}) is not representable over GF({q})"
        )));
    }
    if r > n {
        return Err(Error::Parse(format!("U({r},{n}) needs rank <= n")));
    }
    let f = field(q)?;
    let mut columns: Vec<Vec<u8>> = Vec::with_capacity(n);
    for t in f.elements().take(n.min(q as usize)) {
        let mut c = Vec::with_capacity(r);
        let mut power = crate::gfq::FieldElement::ONE;
        for _ in 0..r {
            c.push(power.index());
            power = f.mul(power, t);
        }
        columns.push(c);
    }
    if n == q as usize + 1 {
        let mut c = vec![0u8; r];
        if r > 0 {
            c[r - 1] = 1;
        }
        columns.push(c);
    }
    let m = Matroid::from_columns(f, r, columns)?;
    let (dec, _) = best_heuristic(&m);
    InstanceRecord::new(
        format!("uniform-r{r}-n{n}-q{q}"),
        Construction::Uniform { r, n },
        q,
        m,
        dec,
        0,
    )
}

/// Random simple graph with the given number of edges.
pub fn gen_graphic(vertices: usize, edges: usize, seed: u64) -> Result<InstanceRecord> {
    let mut all: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|u| (u + 1..vertices).map(move |v| (u, v)))
        .collect();
    if edges > all.len() {
        return Err(Error::Parse(format!(
            "{vertices} vertices carry at most {} edges",
            all.len()
        )));
    }
    all.shuffle(&mut rng(seed));
    all.truncate(edges);
    all.sort_unstable();
    let m = Matroid::graphic(vertices, all)?;
    let (dec, _) = best_heuristic(&m);
    InstanceRecord::new(
        format!("graphic-v{vertices}-e{edges}-s{seed}"),
        Construction::Graphic { vertices, edges },
        2,
        m,
        dec,
        seed,
    )
}

/// The largest supported prime power not exceeding `q`, used when an
/// instance family is requested for a non-prime-power line parameter.
pub fn generation_field(q: u32) -> u32 {
    (2..=q.clamp(2, MAX_ORDER))
        .rev()
        .find(|&p| prime_power(p).is_some())
        .unwrap_or(2)
}

const SUITE_MAX_ELEMENTS: usize = 18;

/// One member of the seeded family used for the bound suites: a mix of random
/// matrices of rank at most `k` and glued blocks of rank at most `k`, all with
/// witnessed width at most `k`.
pub fn suite_instance(q: u32, k: usize, seed: u64) -> Result<InstanceRecord> {
    let gq = generation_field(q);
    let k = k.max(1);
    let mut g = rng(seed);
    for attempt in 0..64u64 {
        let s = derive_seed(seed, attempt);
        // most draws aim at width exactly k
        let target = if g.gen_bool(0.75) {
            k
        } else {
            g.gen_range(1..=k)
        };
        let rec = match g.gen_range(0..4) {
            0 => {
                let n = g.gen_range(target + 1..=(target + 10).min(SUITE_MAX_ELEMENTS));
                gen_random_linear(gq, target, n, s)
            }
            1 => {
                let r = g.gen_range(target..=(2 * target).min(6));
                let n = g.gen_range(r + 1..=(r + 10).min(SUITE_MAX_ELEMENTS));
                gen_random_linear(gq, r, n, s)
            }
            _ => {
                let block_rank = target;
                let blocks = g.gen_range(2..=4);
                let overlap_rank = g.gen_range(0..block_rank);
                let p = pg_point_count(block_rank, gq as u64).unwrap() as usize;
                let shared = pg_point_count(overlap_rank, gq as u64).unwrap() as usize;
                let fresh = p + (blocks - 1) * (p - shared);
                let size = g.gen_range(6..=SUITE_MAX_ELEMENTS) as f64;
                let density = (size / fresh as f64).min(1.0);
                gen_glued(
                    GluedParams {
                        q: gq,
                        block_rank,
                        blocks,
                        overlap_rank,
                        density,
                    },
                    s,
                )
            }
        };
        match rec {
            Ok(rec) if rec.width <= k && rec.matroid.size() <= SUITE_MAX_ELEMENTS => {
                return Ok(InstanceRecord {
                    id: format!("suite-q{q}-k{k}-s{seed}"),
                    ..rec
                })
            }
            Ok(_) | Err(Error::TooLarge(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let rec = gen_random_linear(gq, k, k, seed)?;
    Ok(InstanceRecord {
        id: format!("suite-q{q}-k{k}-s{seed}"),
        ..rec
    })
}

pub fn suite(q: u32, k: usize, count: usize, seed: u64) -> Result<Vec<InstanceRecord>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| suite_instance(q, k, derive_seed(seed, i)))
        .collect()
}

/// Where instances come from: a directory of matroid files (with optional
/// `.dec` decompositions alongside) or a seed spec `family:count[@seed]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSource {
    Dir(PathBuf),
    Seeded {
        family: Family,
        count: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Suite,
    Random,
    Glued,
    Graphic,
    Extension,
    Lines,
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "suite" => Family::Suite,
            "random" => Family::Random,
            "glued" => Family::Glued,
            "graphic" => Family::Graphic,
            "extension" => Family::Extension,
            "lines" => Family::Lines,
            other => return Err(Error::Parse(format!("unknown instance family {other:?}"))),
        })
    }
}

impl InstanceSource {
    pub fn parse(s: &str) -> Result<Self> {
        let path = Path::new(s);
        if path.is_dir() {
            return Ok(InstanceSource::Dir(path.to_path_buf()));
        }
        let (family, rest) = s.split_once(':').ok_or_else(|| {
            Error::Parse(format!(
                "{s:?} is neither a directory nor family:count[@seed]"
            ))
        })?;
        let (count, seed) = match rest.split_once('@') {
            Some((c, sd)) => (
                c,
                sd.parse()
                    .map_err(|_| Error::Parse(format!("bad seed {sd:?}")))?,
            ),
            None => (rest, 0),
        };
        Ok(InstanceSource::Seeded {
            family: family.parse()?,
            count: count
                .parse()
                .map_err(|_| Error::Parse(format!("bad count {count:?}")))?,
            seed,
        })
    }
}

fn load_dir(dir: &Path, q: u32) -> Result<Vec<InstanceRecord>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "mat"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|path| {
            let m = io::read_matroid_file(&path)?;
            let dec_path = path.with_extension("dec");
            let dec = if dec_path.exists() {
                io::read_decomposition_file(&dec_path)?
            } else {
                best_heuristic(&m).0
            };
            let id = path.file_stem().unwrap().to_string_lossy().into_owned();
            let fq = m.field().map_or(q, |f| f.order());
            InstanceRecord::new(id, Construction::File { path: path.clone() }, fq, m, dec, 0)
        })
        .collect()
}

/// Materializes the instances of a source. `MZ_SEED` overrides the seed of a
/// seed spec.
pub fn load_instances(source: &InstanceSource, q: u32, k: usize) -> Result<Vec<InstanceRecord>> {
    match source {
        InstanceSource::Dir(dir) => load_dir(dir, q),
        &InstanceSource::Seeded {
            family,
            count,
            seed,
        } => {
            let seed = seed_override().unwrap_or(seed);
            let gq = generation_field(q);
            (0..count as u64)
                .into_par_iter()
                .map(|i| {
                    let s = derive_seed(seed, i);
                    let mut g = rng(s);
                    match family {
                        Family::Suite => suite_instance(q, k, s),
                        Family::Random => {
                            let r = g.gen_range(1..=k.max(1));
                            let n = g.gen_range(r..=(r + 8).min(RANDOM_MAX_ELEMENTS));
                            gen_random_linear(gq, r, n, s)
                        }
                        Family::Glued => gen_glued(
                            GluedParams {
                                q: gq,
                                block_rank: k.max(2),
                                blocks: 2,
                                overlap_rank: g.gen_range(0..k.max(2)),
                                density: g.gen_range(0.5..=1.0),
                            },
                            s,
                        ),
                        Family::Graphic => {
                            let v = g.gen_range(2..=7usize);
                            let e = g.gen_range(0..=(v * (v - 1) / 2).min(12));
                            gen_graphic(v, e, s)
                        }
                        Family::Extension => {
                            let block_rank = k.max(2);
                            let overlap = g.gen_range(1..block_rank);
                            gen_extension(gq, block_rank, overlap, g.gen_range(0.6..=1.0), s)
                        }
                        Family::Lines => gen_uniform(2, 3 + i as usize % 6, None),
                    }
                })
                .collect()
        }
    }
}

/// An exact rational serialized as decimal numerator and denominator strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactRational(pub BigRational);

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &self.0.numer().to_string())?;
        st.serialize_field("den", &self.0.denom().to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub lo: ExactRational,
    pub hi: ExactRational,
    pub exact: bool,
}

impl From<RootInterval> for RootReport {
    fn from(r: RootInterval) -> Self {
        RootReport {
            exact: r.is_exact(),
            lo: ExactRational(r.lo),
            hi: ExactRational(r.hi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Main,
    NoLines,
    Cocircuit,
    Kung,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub id: String,
    pub theorem: Theorem,
    pub bound: ExactRational,
    pub verdict: bool,
    pub width: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub largest_root: Option<RootReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocircuit_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<IntPolynomial>,
}

pub fn root_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 30)
}

/// `q^e` as a rational; negative exponents give `1/q^{|e|}`.
pub fn rational_power(q: u32, e: i64) -> BigRational {
    let p = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `(q^k − 1)/(q − 1)`.
pub fn geometric_bound(q: u32, k: usize) -> BigRational {
    let num = BigInt::from(q).pow(k as u32) - 1;
    BigRational::new(num, BigInt::from(q - 1))
}

/// Characteristic polynomial used by the bound suites.
pub fn charpoly(m: &Matroid) -> IntPolynomial {
    cp_delete_contract(m)
}

fn positivity_report(rec: &InstanceRecord, theorem: Theorem, bound: BigRational) -> BoundReport {
    let p = charpoly(&rec.matroid);
    let (verdict, root) = if p.is_zero() {
        (true, None)
    } else {
        (
            sturm_positive_beyond(&p, &bound),
            largest_real_root(&p, &root_tolerance()).map(RootReport::from),
        )
    };
    BoundReport {
        id: rec.id.clone(),
        theorem,
        bound: ExactRational(bound),
        verdict,
        width: rec.width,
        largest_root: root,
        cocircuit_size: None,
        polynomial: Some(p),
    }
}

fn check_widths(instances: &[InstanceRecord], k: usize) -> Result<()> {
    match instances.iter().find(|r| r.width > k) {
        Some(r) => Err(Error::WidthWitnessExceeded {
            id: r.id.clone(),
            width: r.width,
            k,
        }),
        None => Ok(()),
    }
}

/// Positivity of `χ_M` beyond `q^{k−1}` for every instance (the zero
/// polynomial of a matroid with a loop passes).
pub fn verify_main_theorem(
    instances: &[InstanceRecord],
    k: usize,
    q: u32,
) -> Result<Vec<BoundReport>> {
    check_widths(instances, k)?;
    let bound = rational_power(q, k as i64 - 1);
    Ok(instances
        .par_iter()
        .map(|rec| positivity_report(rec, Theorem::Main, bound.clone()))
        .collect())
}

/// Positivity beyond `(q^k − 1)/(q − 1)` for instances without a
/// `U_{2,q+2}` minor. Here `q` is any integer at least two.
pub fn verify_no_lines_theorem(
    instances: &[InstanceRecord],
    k: usize,
    q: u32,
) -> Result<Vec<BoundReport>> {
    if q < 2 {
        return Err(Error::Parse(
            "the line parameter q must be at least 2".into(),
        ));
    }
    check_widths(instances, k)?;
    let l = q as usize + 2;
    let minors: Vec<bool> = instances
        .par_iter()
        .map(|rec| rec.matroid.has_line_minor(l))
        .collect::<Result<_>>()?;
    if let Some(i) = minors.iter().position(|&b| b) {
        return Err(Error::LineMinorPresent {
            id: instances[i].id.clone(),
            l,
        });
    }
    let bound = geometric_bound(q, k);
    Ok(instances
        .par_iter()
        .map(|rec| positivity_report(rec, Theorem::NoLines, bound.clone()))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    DeletionContraction,
    Cocircuit,
    Brylawski,
    Starfish,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub identity: Identity,
    pub passed: bool,
    /// Not applicable to this instance (e.g. not linear, or too large).
    pub skipped: bool,
    /// Number of non-trivial terms checked (elements, neck points, ...).
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityReport {
    fn new(id: &str, identity: Identity) -> Self {
        IdentityReport {
            id: id.to_string(),
            identity,
            passed: true,
            skipped: false,
            size: 0,
            detail: None,
        }
    }

    fn skip(mut self, why: impl Into<String>) -> Self {
        self.skipped = true;
        self.detail = Some(why.into());
        self
    }

    fn fail(mut self, detail: String) -> Self {
        self.passed = false;
        self.detail = Some(detail);
        self
    }
}

/// Reference polynomial for identity checks, from the subset expansion.
fn reference(m: &Matroid) -> Result<IntPolynomial> {
    cp_boolean_expansion(m).or_else(|_| cp_mobius(m))
}

fn dump(m: &Matroid) -> String {
    io::write_matroid(m).unwrap_or_else(|_| format!("{m:?}"))
}

fn check_deletion_contraction(rec: &InstanceRecord) -> Result<IdentityReport> {
    let m = &rec.matroid;
    let mut report = IdentityReport::new(&rec.id, Identity::DeletionContraction);
    let whole = reference(m)?;
    let view = MinorView::new(m);
    for e in 0..m.size() {
        if m.rank(1 << e) == 0 || m.is_coloop(e) {
            continue;
        }
        report.size += 1;
        let del = cp_delete_contract(&view.delete(1 << e));
        let con = cp_delete_contract(&view.contract(1 << e));
        if &del - &con != whole {
            return Ok(report.fail(format!(
                "element {e}: chi = {whole}, chi(M\\e) - chi(M/e) = {del} - ({con})\n{}",
                dump(m)
            )));
        }
    }
    Ok(report)
}

fn check_cocircuit(rec: &InstanceRecord) -> Result<IdentityReport> {
    let mut report = IdentityReport::new(&rec.id, Identity::Cocircuit);
    let expansion = cp_cocircuit_expansion(&rec.matroid);
    let whole = reference(&rec.matroid)?;
    report.size = rec.matroid.size();
    if expansion != whole {
        return Ok(report.fail(format!(
            "cocircuit expansion {expansion} != {whole}\n{}",
            dump(&rec.matroid)
        )));
    }
    Ok(report)
}

/// The simplification of an instance with its decomposition restricted to the
/// kept elements.
pub fn simple_part(rec: &InstanceRecord) -> Result<(Matroid, TreeDecomposition)> {
    let loops = rec.matroid.loops();
    let loopless = rec
        .matroid
        .restrict(full_mask(rec.matroid.size()) & !loops)?;
    let kept: Vec<usize> = elements(full_mask(rec.matroid.size()) & !loops).collect();
    let s = loopless.simplify()?;
    let tau = s
        .representatives
        .iter()
        .map(|&e| rec.decomposition.assignment()[kept[e]])
        .collect();
    Ok((
        s.matroid,
        TreeDecomposition::new(rec.decomposition.tree().clone(), tau)?,
    ))
}

/// First leaf `w` (by index) and its neighbour `u`.
pub fn first_leaf_edge(dec: &TreeDecomposition) -> Option<(usize, usize)> {
    let t = dec.tree();
    (0..t.vertex_count())
        .find(|&v| t.is_leaf(v))
        .map(|w| (t.neighbors(w)[0], w))
}

/// An extension with the decomposition it was built from and the edge used.
pub type LeafExtension = (ExtensionMatroid, TreeDecomposition, (usize, usize));

/// The extension of the simple part by the external neck of the first leaf
/// edge, with the decomposition and the edge used.
pub fn leaf_extension(rec: &InstanceRecord) -> Result<Option<LeafExtension>> {
    if rec.matroid.linear_rep().is_none() || rec.matroid.full_rank() == 0 {
        return Ok(None);
    }
    let (m, dec) = simple_part(rec)?;
    let Some((u, w)) = first_leaf_edge(&dec) else {
        return Ok(None);
    };
    let q = rec.matroid.field().map_or(2, |f| f.order()) as u64;
    if pg_point_count(m.full_rank(), q).is_none_or(|c| c > MAX_PG_POINTS as u64) {
        return Ok(None);
    }
    let emb = embed(&m)?;
    let neck = neck_of_edge(&emb, &dec, u, w)?;
    if m.size() + neck.external.len() > crate::matroid::MAX_ELEMENTS {
        return Ok(None);
    }
    Ok(Some((extend(&emb, &neck.external)?, dec, (u, w))))
}

fn check_gluing(rec: &InstanceRecord) -> Result<(IdentityReport, IdentityReport)> {
    let bry = IdentityReport::new(&rec.id, Identity::Brylawski);
    let star = IdentityReport::new(&rec.id, Identity::Starfish);
    let Some((ext, dec, (u, w))) = leaf_extension(rec)? else {
        let why = "needs a linear instance with a leaf edge and a small extension";
        return Ok((bry.skip(why), star.skip(why)));
    };
    let base = ext.embedding().base().clone();

    let mut star = star;
    star.size = ext.added().len();
    let terms = starfish_expansion(&ext)?;
    let sum = starfish_sum(&terms);
    let whole = reference(&base)?;
    if sum != whole {
        star = star.fail(format!(
            "telescoping sum {sum} != {whole} with neck {:?}\n{}",
            ext.added(),
            dump(&base)
        ));
    }

    let mut bry = bry;
    let split = split_along_neck(&ext, &dec, u, w)?;
    bry.size = split.neck_elements.len();
    let quotient = brylawski_charpoly(&split.gluing)?;
    let direct = reference(ext.matroid())?;
    if quotient != direct {
        bry = bry.fail(format!(
            "quotient {quotient} != {direct} across neck {:?}\n{}",
            split.neck_elements,
            dump(ext.matroid())
        ));
    }
    Ok((bry, star))
}

/// Exact polynomial identities per instance: deletion-contraction at every
/// eligible element, the cocircuit expansion, the gluing quotient and the
/// telescoping sum across the first leaf edge.
pub fn verify_identities(instances: &[InstanceRecord]) -> Result<Vec<IdentityReport>> {
    let per: Vec<Vec<IdentityReport>> = instances
        .par_iter()
        .map(|rec| {
            let (bry, star) = check_gluing(rec)?;
            Ok(vec![
                check_deletion_contraction(rec)?,
                check_cocircuit(rec)?,
                bry,
                star,
            ])
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

/// Kung's size bound on simple instances without a `U_{2,q+2}` minor, and the
/// small-cocircuit bound `q^{k−1}` with `k` the witnessed width, both on the
/// simple part of each instance and with `q` the instance's field order.
pub fn verify_size_and_cocircuit_bounds(instances: &[InstanceRecord]) -> Result<Vec<BoundReport>> {
    let per: Vec<Vec<BoundReport>> = instances
        .par_iter()
        .map(|rec| {
            let (m, dec) = simple_part(rec)?;
            let q = rec.q;
            let r = m.full_rank();
            let k = width(&m, &dec)?.width;
            let mut out = Vec::new();
            if !m.has_line_minor(q as usize + 2)? {
                let bound = geometric_bound(q, r);
                out.push(BoundReport {
                    id: rec.id.clone(),
                    theorem: Theorem::Kung,
                    verdict: BigRational::from_integer(BigInt::from(m.size())) <= bound,
                    bound: ExactRational(bound),
                    width: k,
                    largest_root: None,
                    cocircuit_size: None,
                    polynomial: None,
                });
            }
            if r > 0 {
                let c = find_small_cocircuit(&m)?.count_ones() as usize;
                let bound = rational_power(q, k as i64 - 1);
                out.push(BoundReport {
                    id: rec.id.clone(),
                    theorem: Theorem::Cocircuit,
                    verdict: BigRational::from_integer(BigInt::from(c)) <= bound,
                    bound: ExactRational(bound),
                    width: k,
                    largest_root: None,
                    cocircuit_size: Some(c),
                    polynomial: None,
                });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

/// Chromatic polynomial by edge deletion-contraction on the multigraph.
pub fn chromatic_polynomial(vertices: usize, edges: &[(usize, usize)]) -> IntPolynomial {
    type Memo = HashMap<(usize, Vec<(usize, usize)>), IntPolynomial>;
    fn go(n: usize, edges: Vec<(usize, usize)>, memo: &mut Memo) -> IntPolynomial {
        let mut es: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        es.sort_unstable();
        es.dedup();
        if es.iter().any(|&(a, b)| a == b) {
            return IntPolynomial::zero();
        }
        let Some(&(a, b)) = es.last() else {
            return IntPolynomial::x().pow(n as u32);
        };
        let key = (n, es.clone());
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let deleted: Vec<(usize, usize)> = es[..es.len() - 1].to_vec();
        // merge b into a, then move the last vertex into b's slot
        let last = n - 1;
        let relabel = |x: usize| {
            let x = if x == b { a } else { x };
            if x == last {
                b
            } else {
                x
            }
        };
        let contracted: Vec<(usize, usize)> = deleted
            .iter()
            .map(|&(x, y)| (relabel(x), relabel(y)))
            .collect();
        let p = &go(n, deleted, memo) - &go(n - 1, contracted, memo);
        memo.insert(key, p.clone());
        p
    }
    go(vertices, edges.to_vec(), &mut HashMap::new())
}

pub fn graph_components(vertices: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut count = vertices;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphicReport {
    pub chromatic: IntPolynomial,
    pub components: usize,
    pub matroid: IntPolynomial,
    pub passed: bool,
}

/// Compares `χ_{M(G)}` from the matroid engines with the chromatic polynomial
/// of `G` divided by `λ^{components}`.
pub fn cross_check_graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<GraphicReport> {
    if edges.len() > GRAPHIC_CHECK_MAX_EDGES {
        return Err(Error::TooLarge(format!(
            "graphic cross-check takes at most {GRAPHIC_CHECK_MAX_EDGES} edges"
        )));
    }
    let chromatic = chromatic_polynomial(vertices, edges);
    let components = graph_components(vertices, edges);
    let m = Matroid::graphic(vertices, edges.to_vec())?;
    let matroid = cp_delete_contract(&m);
    let expect = chromatic.exact_div(&IntPolynomial::x().pow(components as u32));
    let passed = match &expect {
        Ok(e) => *e == matroid && cp_mobius(&m)? == matroid,
        Err(_) => false,
    };
    Ok(GraphicReport {
        chromatic,
        components,
        matroid,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::cp_pg_closed_form;
    use crate::matroid::tests::{fano, from_rows};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn record(m: Matroid, q: u32) -> InstanceRecord {
        let dec = TreeDecomposition::single_vertex(m.size());
        InstanceRecord::new("t", Construction::Random { r: 0, n: 0 }, q, m, dec, 0).unwrap()
    }

    #[test]
    fn random_generator_is_deterministic_and_loopless() {
        let a = gen_random_linear(3, 3, 9, 11).unwrap();
        let b = gen_random_linear(3, 3, 9, 11).unwrap();
        assert_eq!(
            io::write_matroid(&a.matroid).unwrap(),
            io::write_matroid(&b.matroid).unwrap()
        );
        assert!(!a.matroid.has_loop());
        assert!(gen_random_linear(2, 3, 21, 0).is_err());
    }

    #[test]
    fn random_generator_hits_fano_and_u24() {
        let fano_seed =
            (0..20_000).find(|&s| gen_random_linear(2, 3, 7, s).unwrap().matroid.is_simple());
        let rec = gen_random_linear(
            2,
            3,
            7,
            fano_seed.expect("some seed gives 7 distinct columns"),
        )
        .unwrap();
        assert_eq!(cp_delete_contract(&rec.matroid), cp_pg_closed_form(3, 2));

        let seed = (0..20_000)
            .find(|&s| gen_random_linear(3, 2, 4, s).unwrap().matroid.is_simple())
            .unwrap();
        let m = gen_random_linear(3, 2, 4, seed).unwrap().matroid;
        for s in 0..16u32 {
            assert_eq!(m.rank(s), (s.count_ones() as usize).min(2));
        }
    }

    #[test]
    fn random_free_matroid() {
        let rec = gen_random_linear(2, 4, 4, 3).unwrap();
        if rec.matroid.full_rank() == 4 {
            assert_eq!(cp_delete_contract(&rec.matroid), p(&[-1, 1]).pow(4));
        }
        let full_rank = (0..100)
            .map(|s| gen_random_linear(5, 4, 4, s).unwrap())
            .find(|r| r.matroid.full_rank() == 4);
        assert_eq!(
            cp_delete_contract(&full_rank.unwrap().matroid),
            p(&[-1, 1]).pow(4)
        );
    }

    #[test]
    fn glued_examples() {
        let two = GluedParams {
            q: 2,
            block_rank: 3,
            blocks: 2,
            overlap_rank: 2,
            density: 1.0,
        };
        let rec = gen_glued(two, 0).unwrap();
        assert_eq!(rec.matroid.size(), 11);
        assert_eq!(rec.width, 3);

        let one = gen_glued(GluedParams { blocks: 1, ..two }, 0).unwrap();
        assert_eq!(one.matroid.size(), 7);
        assert_eq!(cp_delete_contract(&one.matroid), cp_pg_closed_form(3, 2));

        let sum = gen_glued(
            GluedParams {
                overlap_rank: 0,
                ..two
            },
            0,
        )
        .unwrap();
        assert_eq!(sum.matroid.size(), 14);
        assert_eq!(
            cp_delete_contract(&sum.matroid),
            cp_pg_closed_form(3, 2).pow(2)
        );
    }

    #[test]
    fn glued_width_never_exceeds_block_rank() {
        for seed in 0..40 {
            for (q, br, ov) in [(2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 3, 1), (2, 2, 0)] {
                let params = GluedParams {
                    q,
                    block_rank: br,
                    blocks: 3,
                    overlap_rank: ov,
                    density: 0.6,
                };
                match gen_glued(params, seed) {
                    Ok(rec) => assert!(rec.width <= br, "{}", rec.id),
                    Err(Error::TooLarge(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn extension_instances_have_external_necks() {
        let mut nonempty = 0;
        for seed in 0..20 {
            let rec = gen_extension(2, 3, 2, 1.0, seed).unwrap();
            let (ext, _, _) = leaf_extension(&rec).unwrap().unwrap();
            nonempty += usize::from(!ext.added().is_empty());
            let reps = verify_identities(&[rec]).unwrap();
            assert!(reps.iter().all(|r| r.passed && !r.skipped), "{reps:?}");
        }
        assert_eq!(nonempty, 20);
    }

    #[test]
    fn uniform_generator() {
        for n in 2..=9 {
            for r in 1..=n.min(4) {
                let rec = gen_uniform(r, n, None).unwrap();
                let m = &rec.matroid;
                for s in 0..1u32 << n {
                    assert_eq!(m.rank(s), (s.count_ones() as usize).min(r), "U({r},{n})");
                }
            }
        }
        assert_eq!(uniform_field_order(6), Some(5));
        assert!(gen_uniform(2, 5, Some(2)).is_err());
    }

    #[test]
    fn suite_respects_width_and_size() {
        for (q, k) in [(2, 2), (3, 3), (2, 3), (3, 2)] {
            for rec in suite(q, k, 40, 5).unwrap() {
                assert!(rec.width <= k);
                assert!(rec.matroid.size() <= SUITE_MAX_ELEMENTS);
                assert!(!rec.matroid.has_loop());
            }
        }
    }

    #[test]
    fn main_theorem_examples() {
        let reps = verify_main_theorem(&[record(fano(), 2)], 3, 2).unwrap();
        assert!(reps[0].verdict);
        let root = reps[0].largest_root.as_ref().unwrap();
        assert!(root.exact);
        assert_eq!(root.lo.0, BigRational::from_integer(4.into()));

        let u23 = from_rows(2, &[&[1, 0, 1], &[0, 1, 1]]);
        let reps = verify_main_theorem(&[record(u23, 2)], 2, 2).unwrap();
        assert!(reps[0].verdict);
        assert_eq!(
            reps[0].largest_root.as_ref().unwrap().lo.0,
            BigRational::from_integer(2.into())
        );

        let looped = from_rows(2, &[&[1, 0]]);
        let reps = verify_main_theorem(&[record(looped, 2)], 1, 2).unwrap();
        assert!(reps[0].verdict && reps[0].largest_root.is_none());

        assert!(matches!(
            verify_main_theorem(&[record(fano(), 2)], 2, 2),
            Err(Error::WidthWitnessExceeded { width: 3, k: 2, .. })
        ));
    }

    #[test]
    fn no_lines_examples() {
        let reps = verify_no_lines_theorem(&[record(fano(), 2)], 3, 2).unwrap();
        assert!(reps[0].verdict);
        assert_eq!(reps[0].bound.0, BigRational::from_integer(7.into()));

        let u23 = from_rows(2, &[&[1, 0, 1], &[0, 1, 1]]);
        let reps = verify_no_lines_theorem(&[record(u23, 2)], 2, 2).unwrap();
        assert_eq!(reps[0].bound.0, BigRational::from_integer(3.into()));
        assert!(reps[0].verdict);

        let u25 = gen_uniform(2, 5, None).unwrap();
        assert!(matches!(
            verify_no_lines_theorem(&[u25], 2, 2),
            Err(Error::LineMinorPresent { l: 4, .. })
        ));
    }

    #[test]
    fn identities_on_small_instances() {
        let mut recs = vec![record(fano(), 2), record(from_rows(3, &[&[1]]), 3)];
        recs.push(
            gen_glued(
                GluedParams {
                    q: 2,
                    block_rank: 3,
                    blocks: 2,
                    overlap_rank: 0,
                    density: 1.0,
                },
                0,
            )
            .unwrap(),
        );
        for rep in verify_identities(&recs).unwrap() {
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn bounds_examples() {
        let reps = verify_size_and_cocircuit_bounds(&[record(fano(), 2)]).unwrap();
        let kung = reps.iter().find(|r| r.theorem == Theorem::Kung).unwrap();
        assert!(kung.verdict);
        assert_eq!(kung.bound.0, BigRational::from_integer(7.into()));

        let u23 = from_rows(2, &[&[1, 0, 1], &[0, 1, 1]]);
        let dec = TreeDecomposition::new(Tree::path(3), vec![0, 1, 2]).unwrap();
        let rec = InstanceRecord::new("u23", Construction::Random { r: 2, n: 3 }, 2, u23, dec, 0)
            .unwrap();
        assert_eq!(rec.width, 2);
        let reps = verify_size_and_cocircuit_bounds(&[rec]).unwrap();
        let c = reps
            .iter()
            .find(|r| r.theorem == Theorem::Cocircuit)
            .unwrap();
        assert_eq!(c.cocircuit_size, Some(2));
        assert_eq!(c.bound.0, BigRational::from_integer(2.into()));

        let free = record(from_rows(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 2);
        let reps = verify_size_and_cocircuit_bounds(&[free]).unwrap();
        let c = reps
            .iter()
            .find(|r| r.theorem == Theorem::Cocircuit)
            .unwrap();
        assert_eq!(c.cocircuit_size, Some(1));
        assert_eq!(c.bound.0, BigRational::from_integer(4.into()));
    }

    #[test]
    fn graphic_examples() {
        let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let rep = cross_check_graphic(4, &k4).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.matroid, &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-3, 1]));
        assert_eq!(rep.chromatic, &rep.matroid * &IntPolynomial::x());

        let tree = [(0, 1), (1, 2), (1, 3), (3, 4)];
        let rep = cross_check_graphic(5, &tree).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.matroid, p(&[-1, 1]).pow(4));

        let looped = [(0, 1), (1, 1)];
        let rep = cross_check_graphic(2, &looped).unwrap();
        assert!(rep.passed && rep.matroid.is_zero());
    }

    #[test]
    fn source_parsing() {
        assert_eq!(
            InstanceSource::parse("suite:500@7").unwrap(),
            InstanceSource::Seeded {
                family: Family::Suite,
                count: 500,
                seed: 7
            }
        );
        assert!(InstanceSource::parse("nothing").is_err());
        assert!(InstanceSource::parse("suite:x").is_err());
    }
}
