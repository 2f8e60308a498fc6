//! Matroids on at most 24 elements with subsets encoded as `u32` bitmasks.
//!
//! A [`Matroid`] is either linear (columns of a matrix over GF(q)), one of the
//! built-in rank oracles (uniform, graphic, arbitrary closure), or a minor
//! view of another matroid. All algorithms that only need a rank function are
//! written against [`RankFn`], so they work equally on minor views that never
//! materialize as a `Matroid`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gfq::{FieldElement, FieldSpec};

pub const MAX_ELEMENTS: usize = 24;
pub const MAX_ROWS: usize = 32;
/// Lattice enumeration gives up beyond this many flats.
pub const MAX_FLATS: usize = 2_000_000;

#[inline]
pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
pub fn elements(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let e = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(e)
        }
    })
}

pub fn mask_of(items: &[usize]) -> u32 {
    items.iter().fold(0, |m, &e| m | (1 << e))
}

/// Anything that can answer rank queries on subsets of a ground mask.
pub trait RankFn {
    fn ground(&self) -> u32;
    fn rank(&self, set: u32) -> usize;

    fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    fn closure(&self, set: u32) -> u32 {
        let r = self.rank(set);
        let mut cl = set;
        for e in elements(self.ground() & !set) {
            if self.rank(set | (1 << e)) == r {
                cl |= 1 << e;
            }
        }
        cl
    }

    fn loops(&self) -> u32 {
        elements(self.ground())
            .filter(|&e| self.rank(1 << e) == 0)
            .fold(0, |m, e| m | (1 << e))
    }

    fn is_coloop(&self, e: usize) -> bool {
        let g = self.ground();
        self.rank(g & !(1 << e)) < self.rank(g)
    }
}

#[derive(Clone)]
pub struct LinearRep {
    field: Arc<FieldSpec>,
    rows: usize,
    columns: Vec<Vec<u8>>,
}

impl LinearRep {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn column(&self, e: usize) -> &[u8] {
        &self.columns[e]
    }

    /// Row-major matrix entries.
    pub fn matrix(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows)
            .map(|i| {
                self.columns
                    .iter()
                    .map(|c| FieldElement::new(c[i]))
                    .collect()
            })
            .collect()
    }

    fn rank_of(&self, set: u32) -> usize {
        let field = &*self.field;
        let len = self.rows;
        let mut basis = [[0u8; MAX_ROWS]; MAX_ELEMENTS];
        let mut pivots = [0usize; MAX_ELEMENTS];
        let mut rank = 0;
        for e in elements(set) {
            let mut v = [0u8; MAX_ROWS];
            v[..len].copy_from_slice(&self.columns[e]);
            for i in 0..rank {
                let c = v[pivots[i]];
                if c != 0 {
                    let nc = field.neg_raw(c);
                    for j in 0..len {
                        if basis[i][j] != 0 {
                            v[j] = field.add_raw(v[j], field.mul_raw(nc, basis[i][j]));
                        }
                    }
                }
            }
            if let Some(p) = v[..len].iter().position(|&x| x != 0) {
                let inv = field.inv_raw(v[p]);
                for x in v[..len].iter_mut() {
                    *x = field.mul_raw(*x, inv);
                }
                basis[rank] = v;
                pivots[rank] = p;
                rank += 1;
                if rank == len {
                    break;
                }
            }
        }
        rank
    }
}

#[derive(Clone)]
enum Kind {
    Linear(LinearRep),
    Uniform {
        rank: usize,
    },
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    Oracle(Arc<dyn Fn(u32) -> usize + Send + Sync>),
    Minor {
        base: Arc<Matroid>,
        elements: Vec<usize>,
        contracted: u32,
        contracted_rank: usize,
    },
}

#[derive(Clone)]
pub struct Matroid {
    n: usize,
    kind: Kind,
    rank: usize,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            Kind::Linear(l) => format!("linear over GF({}) with {} rows", l.field.order(), l.rows),
            Kind::Uniform { rank } => format!("U({rank},{})", self.n),
            Kind::Graphic { vertices, .. } => format!("graphic on {vertices} vertices"),
            Kind::Oracle(_) => "oracle".to_string(),
            Kind::Minor { .. } => "minor".to_string(),
        };
        write!(
            f,
            "Matroid {{ n: {}, rank: {}, {kind} }}",
            self.n, self.rank
        )
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        Err(Error::TooLarge(format!(
            "{n} elements, at most {MAX_ELEMENTS} supported"
        )))
    } else {
        Ok(())
    }
}

impl Matroid {
    fn with_kind(n: usize, kind: Kind) -> Self {
        let mut m = Matroid { n, kind, rank: 0 };
        m.rank = m.rank_uncached(full_mask(n));
        m
    }

    /// Linear matroid of the columns of a row-major matrix.
    pub fn linear(field: Arc<FieldSpec>, matrix: &[Vec<FieldElement>]) -> Result<Self> {
        let rows = matrix.len();
        let n = matrix.first().map_or(0, Vec::len);
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::Parse("ragged matrix".into()));
        }
        let columns = (0..n)
            .map(|j| matrix.iter().map(|row| row[j].index()).collect())
            .collect();
        Self::from_columns(field, rows, columns)
    }

    /// Linear matroid from column vectors of raw field indices.
    pub fn from_columns(field: Arc<FieldSpec>, rows: usize, columns: Vec<Vec<u8>>) -> Result<Self> {
        check_size(columns.len())?;
        if rows > MAX_ROWS {
            return Err(Error::TooLarge(format!(
                "{rows} rows, at most {MAX_ROWS} supported"
            )));
        }
        for c in &columns {
            if c.len() != rows {
                return Err(Error::Parse("column length differs from row count".into()));
            }
            if c.iter().any(|&x| x as u32 >= field.order()) {
                return Err(Error::Parse(format!("entry outside GF({})", field.order())));
            }
        }
        let n = columns.len();
        Ok(Self::with_kind(
            n,
            Kind::Linear(LinearRep {
                field,
                rows,
                columns,
            }),
        ))
    }

    pub fn uniform(rank: usize, n: usize) -> Result<Self> {
        check_size(n)?;
        if rank > n {
            return Err(Error::Parse(format!("U({rank},{n}) needs rank <= n")));
        }
        Ok(Self::with_kind(n, Kind::Uniform { rank }))
    }

    /// Cycle matroid of a multigraph given by its edge list.
    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        check_size(edges.len())?;
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::Parse(format!(
                "edge ({u}, {v}) has an endpoint >= {vertices}"
            )));
        }
        Ok(Self::with_kind(
            edges.len(),
            Kind::Graphic { vertices, edges },
        ))
    }

    /// Matroid given by an arbitrary rank function. The caller vouches for the
    /// rank axioms.
    pub fn from_rank_fn(
        n: usize,
        rank: impl Fn(u32) -> usize + Send + Sync + 'static,
    ) -> Result<Self> {
        check_size(n)?;
        Ok(Self::with_kind(n, Kind::Oracle(Arc::new(rank))))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn linear_rep(&self) -> Option<&LinearRep> {
        match &self.kind {
            Kind::Linear(l) => Some(l),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<FieldSpec>> {
        self.linear_rep().map(LinearRep::field)
    }

    pub fn graph(&self) -> Option<(usize, &[(usize, usize)])> {
        match &self.kind {
            Kind::Graphic { vertices, edges } => Some((*vertices, edges)),
            _ => None,
        }
    }

    fn rank_uncached(&self, set: u32) -> usize {
        match &self.kind {
            Kind::Linear(l) => l.rank_of(set),
            Kind::Uniform { rank } => (set.count_ones() as usize).min(*rank),
            Kind::Graphic { vertices, edges } => {
                let mut parent: Vec<usize> = (0..*vertices).collect();
                fn find(p: &mut [usize], mut x: usize) -> usize {
                    while p[x] != x {
                        p[x] = p[p[x]];
                        x = p[x];
                    }
                    x
                }
                let mut rank = 0;
                for e in elements(set) {
                    let (a, b) = edges[e];
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                        rank += 1;
                    }
                }
                rank
            }
            Kind::Oracle(f) => f(set),
            Kind::Minor {
                base,
                elements: els,
                contracted,
                contracted_rank,
            } => {
                let lifted = elements(set).fold(*contracted, |m, e| m | (1 << els[e]));
                base.rank(lifted) - contracted_rank
            }
        }
    }

    /// Elements of the minor `self` expressed in the outermost non-minor
    /// matroid, plus that matroid and the contracted set there.
    fn flatten(&self) -> (Arc<Matroid>, Vec<usize>, u32) {
        match &self.kind {
            Kind::Minor {
                base,
                elements,
                contracted,
                ..
            } => (base.clone(), elements.clone(), *contracted),
            _ => (Arc::new(self.clone()), (0..self.n).collect(), 0),
        }
    }

    fn minor(&self, delete: u32, contract: u32) -> Result<Matroid> {
        let ground = full_mask(self.n);
        if (delete | contract) & !ground != 0 {
            return Err(Error::ElementOutOfRange(
                (32 - ((delete | contract) & !ground).leading_zeros()) as usize - 1,
            ));
        }
        let keep = ground & !delete & !contract;
        let (base, map, base_contracted) = self.flatten();
        let contracted = elements(contract).fold(base_contracted, |m, e| m | (1 << map[e]));
        let kept: Vec<usize> = elements(keep).map(|e| map[e]).collect();
        let contracted_rank = base.rank(contracted);
        let n = kept.len();
        Ok(Matroid::with_kind(
            n,
            Kind::Minor {
                base,
                elements: kept,
                contracted,
                contracted_rank,
            },
        ))
    }

    /// `M \ D`. Remaining elements keep their relative order. Linear matroids
    /// stay linear.
    pub fn delete(&self, set: u32) -> Result<Matroid> {
        if let Kind::Linear(l) = &self.kind {
            if set & !self.ground() != 0 {
                return self.minor(set, 0);
            }
            let columns = elements(self.ground() & !set)
                .map(|e| l.columns[e].clone())
                .collect();
            return Matroid::from_columns(l.field.clone(), l.rows, columns);
        }
        if let Kind::Uniform { rank } = self.kind {
            if set & !self.ground() == 0 {
                let n = self.n - set.count_ones() as usize;
                return Matroid::uniform(rank.min(n), n);
            }
        }
        self.minor(set, 0)
    }

    pub fn restrict(&self, set: u32) -> Result<Matroid> {
        self.delete(self.ground() & !set)
    }

    /// `M / C` as a rank-offset view: `r'(A) = r(A ∪ C) − r(C)`.
    pub fn contract(&self, set: u32) -> Result<Matroid> {
        self.minor(0, set)
    }

    /// `M / C` by row reduction of the representing matrix.
    pub fn contract_linear(&self, set: u32) -> Result<Matroid> {
        let l = self.linear_rep().ok_or(Error::NotLinear)?;
        let field = &*l.field;
        let mut rows: Vec<Vec<u8>> = (0..l.rows)
            .map(|i| l.columns.iter().map(|c| c[i]).collect())
            .collect();
        let mut pivot_rows = vec![false; l.rows];
        for c in elements(set) {
            let Some(p) = (0..l.rows).find(|&i| !pivot_rows[i] && rows[i][c] != 0) else {
                continue;
            };
            pivot_rows[p] = true;
            let inv = field.inv_raw(rows[p][c]);
            for x in rows[p].iter_mut() {
                *x = field.mul_raw(*x, inv);
            }
            for i in 0..l.rows {
                let f = rows[i][c];
                if i != p && f != 0 {
                    let nf = field.neg_raw(f);
                    for j in 0..self.n {
                        let t = field.mul_raw(nf, rows[p][j]);
                        rows[i][j] = field.add_raw(rows[i][j], t);
                    }
                }
            }
        }
        let kept_rows: Vec<usize> = (0..l.rows).filter(|&i| !pivot_rows[i]).collect();
        let columns = elements(self.ground() & !set)
            .map(|j| kept_rows.iter().map(|&i| rows[i][j]).collect())
            .collect();
        Matroid::from_columns(l.field.clone(), kept_rows.len(), columns)
    }

    /// An equivalent linear representation with exactly `r(M)` rows.
    pub fn row_reduced(&self) -> Result<Matroid> {
        let l = self.linear_rep().ok_or(Error::NotLinear)?;
        let field = &*l.field;
        let mut rows: Vec<Vec<u8>> = (0..l.rows)
            .map(|i| l.columns.iter().map(|c| c[i]).collect())
            .collect();
        let mut rank = 0;
        for c in 0..self.n {
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = field.inv_raw(rows[rank][c]);
            for x in rows[rank].iter_mut() {
                *x = field.mul_raw(*x, inv);
            }
            for i in 0..rows.len() {
                let f = rows[i][c];
                if i != rank && f != 0 {
                    let nf = field.neg_raw(f);
                    for j in 0..self.n {
                        let t = field.mul_raw(nf, rows[rank][j]);
                        rows[i][j] = field.add_raw(rows[i][j], t);
                    }
                }
            }
            rank += 1;
        }
        let columns = (0..self.n)
            .map(|j| (0..rank).map(|i| rows[i][j]).collect())
            .collect();
        Matroid::from_columns(l.field.clone(), rank, columns)
    }

    pub fn has_loop(&self) -> bool {
        self.loops() != 0
    }

    pub fn is_simple(&self) -> bool {
        if self.has_loop() {
            return false;
        }
        (0..self.n).all(|e| (e + 1..self.n).all(|f| self.rank((1 << e) | (1 << f)) == 2))
    }

    /// One representative (the lowest index) per parallel class.
    pub fn simplify(&self) -> Result<Simplification> {
        let classes = parallel_classes(self)?;
        let mut class_of = vec![0; self.n];
        let mut representatives = Vec::with_capacity(classes.len());
        for (i, class) in classes.iter().enumerate() {
            representatives.push(class.trailing_zeros() as usize);
            for e in elements(*class) {
                class_of[e] = i;
            }
        }
        let matroid = self.restrict(mask_of(&representatives))?;
        Ok(Simplification {
            matroid,
            representatives,
            class_of,
        })
    }

    pub fn all_flats_with_mobius(&self) -> Result<Vec<FlatRecord>> {
        flats_with_mobius(self)
    }

    pub fn cocircuits(&self) -> Result<Vec<u32>> {
        cocircuits(self)
    }

    pub fn find_small_cocircuit(&self) -> Result<u32> {
        find_small_cocircuit(self)
    }

    pub fn has_line_minor(&self, l: usize) -> Result<bool> {
        has_line_minor(self, l)
    }
}

impl RankFn for Matroid {
    fn ground(&self) -> u32 {
        full_mask(self.n)
    }

    fn rank(&self, set: u32) -> usize {
        let set = set & full_mask(self.n);
        if set == full_mask(self.n) {
            self.rank
        } else {
            self.rank_uncached(set)
        }
    }

    fn full_rank(&self) -> usize {
        self.rank
    }
}

/// Minor of a fixed matroid described purely by masks on its ground set.
#[derive(Clone, Copy)]
pub struct MinorView<'a, R: RankFn + ?Sized> {
    base: &'a R,
    ground: u32,
    contracted: u32,
    contracted_rank: usize,
}

impl<'a, R: RankFn + ?Sized> MinorView<'a, R> {
    pub fn new(base: &'a R) -> Self {
        MinorView {
            base,
            ground: base.ground(),
            contracted: 0,
            contracted_rank: 0,
        }
    }

    pub fn base(&self) -> &'a R {
        self.base
    }

    pub fn contracted(&self) -> u32 {
        self.contracted
    }

    pub fn delete(&self, set: u32) -> Self {
        MinorView {
            ground: self.ground & !set,
            ..*self
        }
    }

    pub fn contract(&self, set: u32) -> Self {
        let set = set & self.ground;
        let contracted = self.contracted | set;
        MinorView {
            base: self.base,
            ground: self.ground & !set,
            contracted,
            contracted_rank: self.base.rank(contracted),
        }
    }

    pub fn restrict(&self, set: u32) -> Self {
        self.delete(self.ground & !set)
    }
}

impl<R: RankFn + ?Sized> RankFn for MinorView<'_, R> {
    fn ground(&self) -> u32 {
        self.ground
    }

    fn rank(&self, set: u32) -> usize {
        self.base.rank((set & self.ground) | self.contracted) - self.contracted_rank
    }
}

#[derive(Debug, Clone)]
pub struct Simplification {
    pub matroid: Matroid,
    /// Original index of each element of `matroid`.
    pub representatives: Vec<usize>,
    /// Parallel class of each original element.
    pub class_of: Vec<usize>,
}

/// A flat with its rank and `μ(cl(∅), F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatRecord {
    pub elements: u32,
    pub rank: usize,
    pub mobius: BigInt,
}

/// Parallel classes of a loopless matroid, ordered by lowest element.
pub fn parallel_classes<R: RankFn + ?Sized>(m: &R) -> Result<Vec<u32>> {
    if m.loops() != 0 {
        return Err(Error::HasLoop);
    }
    let mut classes: Vec<u32> = Vec::new();
    let mut seen = 0u32;
    for e in elements(m.ground()) {
        if seen & (1 << e) != 0 {
            continue;
        }
        let class = elements(m.ground() & !seen)
            .filter(|&f| f == e || m.rank((1 << e) | (1 << f)) == 1)
            .fold(0, |acc, f| acc | (1 << f));
        seen |= class;
        classes.push(class);
    }
    Ok(classes)
}

/// Flats grouped by rank, starting from the closure of the empty set. Only
/// levels up to `max_rank` are produced.
pub fn flats_by_rank<R: RankFn + ?Sized>(m: &R, max_rank: usize) -> Result<Vec<Vec<u32>>> {
    let ground = m.ground();
    let r = m.full_rank().min(max_rank);
    let mut levels = vec![vec![m.closure(0)]];
    let mut total = 1usize;
    for _ in 0..r {
        let mut next: Vec<u32> = Vec::new();
        let mut seen: HashSet<u32> = HashSet::new();
        for &f in levels.last().unwrap() {
            let mut covered = f;
            for e in elements(ground & !f) {
                if covered & (1 << e) != 0 {
                    continue;
                }
                let g = m.closure(f | (1 << e));
                covered |= g;
                if seen.insert(g) {
                    next.push(g);
                }
            }
        }
        total += next.len();
        if total > MAX_FLATS {
            return Err(Error::TooLarge(format!("more than {MAX_FLATS} flats")));
        }
        next.sort_unstable();
        levels.push(next);
    }
    Ok(levels)
}

pub fn flats_with_mobius<R: RankFn + ?Sized>(m: &R) -> Result<Vec<FlatRecord>> {
    if m.loops() != 0 {
        return Err(Error::HasLoop);
    }
    let levels = flats_by_rank(m, usize::MAX)?;
    let mut out: Vec<FlatRecord> = Vec::new();
    for (rank, level) in levels.iter().enumerate() {
        let below = out.len();
        for &f in level {
            let mobius = if rank == 0 {
                BigInt::one()
            } else {
                let s: BigInt = out[..below]
                    .iter()
                    .filter(|g| g.elements & !f == 0)
                    .map(|g| &g.mobius)
                    .sum();
                -s
            };
            out.push(FlatRecord {
                elements: f,
                rank,
                mobius,
            });
        }
    }
    Ok(out)
}

/// Complements of hyperplanes.
pub fn cocircuits<R: RankFn + ?Sized>(m: &R) -> Result<Vec<u32>> {
    let r = m.full_rank();
    if r == 0 {
        return Err(Error::RankZero);
    }
    let levels = flats_by_rank(m, r - 1)?;
    let mut out: Vec<u32> = levels[r - 1].iter().map(|h| m.ground() & !h).collect();
    out.sort_unstable();
    Ok(out)
}

/// A minimum-size cocircuit; ties go to the smallest mask.
pub fn find_small_cocircuit<R: RankFn + ?Sized>(m: &R) -> Result<u32> {
    Ok(cocircuits(m)?
        .into_iter()
        .min_by_key(|c| (c.count_ones(), *c))
        .expect("a matroid of positive rank has a hyperplane"))
}

/// Whether `m` has a `U(2,l)` minor, found as a rank-2 interval of the
/// lattice of flats with at least `l` atoms.
pub fn has_line_minor<R: RankFn + ?Sized>(m: &R, l: usize) -> Result<bool> {
    let r = m.full_rank();
    if l < 2 {
        return Err(Error::Parse(format!("U(2,{l}) is not a line")));
    }
    if r < 2 {
        return Ok(false);
    }
    let ground = m.ground();
    let levels = flats_by_rank(m, r - 2)?;
    for level in &levels {
        for &f in level {
            let mut atoms: Vec<u32> = Vec::new();
            let mut covered = f;
            for e in elements(ground & !f) {
                if covered & (1 << e) == 0 {
                    let a = m.closure(f | (1 << e));
                    covered |= a;
                    atoms.push(a);
                }
            }
            if atoms.len() < l {
                continue;
            }
            let mut lines: HashMap<u32, usize> = HashMap::new();
            for (i, &a) in atoms.iter().enumerate() {
                for &b in &atoms[i + 1..] {
                    *lines.entry(m.closure(a | b)).or_default() += 1;
                }
            }
            // a line with k atoms collects k(k-1)/2 pairs
            let need = l * (l - 1) / 2;
            if lines.values().any(|&pairs| pairs >= need) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
