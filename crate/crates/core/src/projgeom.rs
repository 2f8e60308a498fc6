//! Projective geometries over GF(q), embeddings of simple linear matroids into
//! them, extensions `M^S`, necks of tree edges, and the gluing identities
//! used to decompose characteristic polynomials.

use std::collections::HashMap;
use std::sync::Arc;

use crate::charpoly::cp_delete_contract;
use crate::error::{Error, Result};
use crate::gfq::{normalize_vector, vectors_rank, FieldSpec};
use crate::matroid::{elements, flats_by_rank, full_mask, mask_of, Matroid, RankFn};
use crate::poly::IntPolynomial;
use crate::treedecomp::TreeDecomposition;

pub const MAX_PG_POINTS: usize = 4096;

/// The points of PG(r−1, q) as normalized vectors in lexicographic order.
#[derive(Debug, Clone)]
pub struct PGModel {
    rank: usize,
    field: Arc<FieldSpec>,
    points: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

pub fn pg_point_count(r: usize, q: u64) -> Option<u64> {
    let mut count: u64 = 0;
    let mut power: u64 = 1;
    for _ in 0..r {
        count = count.checked_add(power)?;
        power = power.checked_mul(q)?;
    }
    Some(count)
}

pub fn pg_build(r: usize, field: Arc<FieldSpec>) -> Result<PGModel> {
    if r == 0 {
        return Err(Error::RankZero);
    }
    let q = field.order() as u64;
    let count = pg_point_count(r, q)
        .filter(|&c| c <= MAX_PG_POINTS as u64)
        .ok_or_else(|| {
            Error::TooLarge(format!(
                "PG({}, {q}) has more than {MAX_PG_POINTS} points",
                r - 1
            ))
        })? as usize;
    let mut points = Vec::with_capacity(count);
    for lead in 0..r {
        let free = r - lead - 1;
        for tail in 0..q.pow(free as u32) {
            let mut v = vec![0u8; r];
            v[lead] = 1;
            let mut t = tail;
            for c in (lead + 1..r).rev() {
                v[c] = (t % q) as u8;
                t /= q;
            }
            points.push(v);
        }
    }
    points.sort_unstable();
    debug_assert_eq!(points.len(), count);
    let index = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    Ok(PGModel {
        rank: r,
        field,
        points,
        index,
    })
}

/// Row-reduced basis of a span, for membership tests.
#[derive(Debug, Clone)]
struct Span {
    basis: Vec<Vec<u8>>,
}

impl Span {
    fn new(field: &FieldSpec, vectors: Vec<Vec<u8>>) -> Self {
        let mut vectors = vectors;
        let rank = vectors_rank(field, &mut vectors);
        vectors.truncate(rank);
        Span { basis: vectors }
    }

    fn contains(&self, field: &FieldSpec, v: &[u8]) -> bool {
        let mut all = self.basis.clone();
        all.push(v.to_vec());
        vectors_rank(field, &mut all) == self.basis.len()
    }
}

impl PGModel {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn points(&self) -> &[Vec<u8>] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn index_of(&self, v: &[u8]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn rank_of_points(&self, pts: &[usize]) -> usize {
        let mut vs: Vec<Vec<u8>> = pts.iter().map(|&p| self.points[p].clone()).collect();
        vectors_rank(&self.field, &mut vs)
    }

    /// All points in the span of `pts`.
    pub fn closure_of_points(&self, pts: &[usize]) -> Vec<usize> {
        let span = self.span(pts);
        (0..self.points.len())
            .filter(|&p| span.contains(&self.field, &self.points[p]))
            .collect()
    }

    fn span(&self, pts: &[usize]) -> Span {
        Span::new(
            &self.field,
            pts.iter().map(|&p| self.points[p].clone()).collect(),
        )
    }

    /// The geometry as a linear matroid (points as columns, in order).
    pub fn matroid(&self) -> Result<Matroid> {
        Matroid::from_columns(self.field.clone(), self.rank, self.points.clone())
    }

    pub fn restriction(&self, pts: &[usize]) -> Result<Matroid> {
        Matroid::from_columns(
            self.field.clone(),
            self.rank,
            pts.iter().map(|&p| self.points[p].clone()).collect(),
        )
    }
}

#[derive(Debug, Clone)]
pub struct PGEmbedding {
    base: Matroid,
    model: PGModel,
    element_to_point: Vec<usize>,
}

/// Places a simple linear matroid inside the projective geometry of its own
/// rank over its field.
pub fn embed(m: &Matroid) -> Result<PGEmbedding> {
    if m.linear_rep().is_none() {
        return Err(Error::NotLinear);
    }
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    let base = if m.linear_rep().unwrap().rows() == m.full_rank() {
        m.clone()
    } else {
        m.row_reduced()?
    };
    let rep = base.linear_rep().expect("row reduction keeps the matrix");
    let model = pg_build(base.full_rank(), rep.field().clone())?;
    let element_to_point = (0..base.size())
        .map(|e| {
            let v =
                normalize_vector(rep.field(), rep.column(e)).expect("simple, so no zero column");
            model.index_of(&v).expect("normalized vectors are points")
        })
        .collect();
    Ok(PGEmbedding {
        base,
        model,
        element_to_point,
    })
}

impl PGEmbedding {
    pub fn base(&self) -> &Matroid {
        &self.base
    }

    pub fn model(&self) -> &PGModel {
        &self.model
    }

    pub fn element_to_point(&self) -> &[usize] {
        &self.element_to_point
    }

    pub fn point_of(&self, e: usize) -> usize {
        self.element_to_point[e]
    }

    pub fn element_at(&self, point: usize) -> Option<usize> {
        self.element_to_point.iter().position(|&p| p == point)
    }

    fn points_of(&self, set: u32) -> Vec<usize> {
        elements(set).map(|e| self.element_to_point[e]).collect()
    }

    /// Points of the geometry outside the image of `E(M)`.
    pub fn missing_points(&self) -> Vec<usize> {
        let mut used = vec![false; self.model.point_count()];
        for &p in &self.element_to_point {
            used[p] = true;
        }
        (0..self.model.point_count())
            .filter(|&p| !used[p])
            .collect()
    }
}

/// `M^S`: elements `0..n` are those of `M`, followed by the points of `S` in
/// the order given.
#[derive(Debug, Clone)]
pub struct ExtensionMatroid {
    embedding: PGEmbedding,
    added: Vec<usize>,
    matroid: Matroid,
}

pub fn extend(emb: &PGEmbedding, s: &[usize]) -> Result<ExtensionMatroid> {
    let mut taken = vec![false; emb.model.point_count()];
    for &p in &emb.element_to_point {
        taken[p] = true;
    }
    for &p in s {
        if p >= taken.len() || taken[p] {
            return Err(Error::PointCollision(p));
        }
        taken[p] = true;
    }
    let rep = emb.base.linear_rep().expect("embedded matroids are linear");
    let mut columns: Vec<Vec<u8>> = (0..emb.base.size())
        .map(|e| rep.column(e).to_vec())
        .collect();
    columns.extend(s.iter().map(|&p| emb.model.points[p].clone()));
    let matroid = Matroid::from_columns(rep.field().clone(), emb.model.rank, columns)?;
    Ok(ExtensionMatroid {
        embedding: emb.clone(),
        added: s.to_vec(),
        matroid,
    })
}

impl ExtensionMatroid {
    pub fn embedding(&self) -> &PGEmbedding {
        &self.embedding
    }

    pub fn added(&self) -> &[usize] {
        &self.added
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn base_size(&self) -> usize {
        self.embedding.base.size()
    }

    /// Element of `M^S` sitting at a point, if any.
    pub fn element_at(&self, point: usize) -> Option<usize> {
        self.embedding.element_at(point).or_else(|| {
            self.added
                .iter()
                .position(|&p| p == point)
                .map(|i| self.base_size() + i)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neck {
    /// Points of `cl(U') ∩ cl(W')`, ascending.
    pub neck: Vec<usize>,
    /// The neck minus the image of `E(M)`, ascending.
    pub external: Vec<usize>,
}

pub fn neck_of_edge(
    emb: &PGEmbedding,
    dec: &TreeDecomposition,
    u: usize,
    w: usize,
) -> Result<Neck> {
    if dec.element_count() != emb.base.size() {
        return Err(Error::Parse(
            "decomposition does not match the embedded matroid".into(),
        ));
    }
    let (us, ws) = dec.displayed_sets_edge(u, w)?;
    let field = &*emb.model.field;
    let su = emb.model.span(&emb.points_of(us));
    let sw = emb.model.span(&emb.points_of(ws));
    let neck: Vec<usize> = (0..emb.model.point_count())
        .filter(|&p| {
            let v = &emb.model.points[p];
            su.contains(field, v) && sw.contains(field, v)
        })
        .collect();
    let external = neck
        .iter()
        .copied()
        .filter(|&p| emb.element_at(p).is_none())
        .collect();
    Ok(Neck { neck, external })
}

/// Two matroids sharing a common restriction. Element `i` of `n` is element
/// `common_in_m1[i]` of `m1` and `common_in_m2[i]` of `m2`.
#[derive(Debug, Clone)]
pub struct Gluing {
    pub m1: Matroid,
    pub m2: Matroid,
    pub n: Matroid,
    pub common_in_m1: Vec<usize>,
    pub common_in_m2: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Split {
    pub gluing: Gluing,
    /// Elements of `M^S` forming `m1`, `m2` and `n`, in their index order.
    pub m1_elements: Vec<usize>,
    pub m2_elements: Vec<usize>,
    pub neck_elements: Vec<usize>,
}

fn positions(of: &[usize], within: &[usize]) -> Vec<usize> {
    of.iter()
        .map(|x| within.binary_search(x).expect("subset"))
        .collect()
}

/// Splits `M^S` along the neck of the leaf edge `uw` (`w` the leaf) into
/// `M1 = M^S|(E_w ∪ S')` and `M2 = M^S ∖ (E_w − S')` glued on `N = M^S|S'`.
pub fn split_along_neck(
    ext: &ExtensionMatroid,
    dec: &TreeDecomposition,
    u: usize,
    w: usize,
) -> Result<Split> {
    if !dec.tree().has_edge(u, w) {
        return Err(Error::EdgeNotInTree(u, w));
    }
    if !dec.tree().is_leaf(w) {
        return Err(Error::NotLeafEdge(u, w));
    }
    let neck = neck_of_edge(&ext.embedding, dec, u, w)?;
    let mut s_prime = 0u32;
    for &p in &neck.neck {
        let e = ext.element_at(p).ok_or(Error::NeckNotFilled)?;
        s_prime |= 1 << e;
    }
    let e_w = dec.bag(w);
    let all = full_mask(ext.matroid.size());
    let m1_mask = e_w | s_prime;
    let m2_mask = all & !(e_w & !s_prime);
    let m1_elements: Vec<usize> = elements(m1_mask).collect();
    let m2_elements: Vec<usize> = elements(m2_mask).collect();
    let neck_elements: Vec<usize> = elements(s_prime).collect();
    let gluing = Gluing {
        m1: ext.matroid.restrict(m1_mask)?,
        m2: ext.matroid.restrict(m2_mask)?,
        n: ext.matroid.restrict(s_prime)?,
        common_in_m1: positions(&neck_elements, &m1_elements),
        common_in_m2: positions(&neck_elements, &m2_elements),
    };
    if !is_modular_flat(&gluing.m1, gluing.m1.closure(mask_of(&gluing.common_in_m1))) {
        return Err(Error::NotModular("neck in the leaf side".into()));
    }
    Ok(Split {
        gluing,
        m1_elements,
        m2_elements,
        neck_elements,
    })
}

/// `r(F) + r(X) = r(F ∪ X) + r(F ∩ X)` for every flat `X`.
pub fn is_modular_flat<R: RankFn + ?Sized>(m: &R, f: u32) -> bool {
    let rf = m.rank(f);
    let Ok(levels) = flats_by_rank(m, m.full_rank()) else {
        return false;
    };
    levels
        .iter()
        .flatten()
        .all(|&x| rf + m.rank(x) == m.rank(f | x) + m.rank(f & x))
}

const GLUING_CHECK_MAX: usize = 20;

/// `χ_{M1} χ_{M2} / χ_N` after checking that `N` is the common restriction,
/// that its closure in `M1` is a modular flat, and that every element of that
/// closure outside `N` is a loop or parallel to an element of `N`.
pub fn brylawski_charpoly(g: &Gluing) -> Result<IntPolynomial> {
    let t = g.common_in_m1.len();
    if g.common_in_m2.len() != t || g.n.size() != t {
        return Err(Error::Parse("common restriction sizes differ".into()));
    }
    if t > GLUING_CHECK_MAX {
        return Err(Error::TooLarge(format!(
            "common restriction of {t} elements"
        )));
    }
    let lift = |map: &[usize], s: u32| elements(s).fold(0u32, |acc, i| acc | (1 << map[i]));
    for s in 0..=full_mask(t) {
        let r = g.n.rank(s);
        if g.m1.rank(lift(&g.common_in_m1, s)) != r || g.m2.rank(lift(&g.common_in_m2, s)) != r {
            return Err(Error::NotModular(
                "restrictions to the common set differ".into(),
            ));
        }
    }
    let t1 = mask_of(&g.common_in_m1);
    let cl = g.m1.closure(t1);
    for x in elements(cl & !t1) {
        let ok =
            g.m1.rank(1 << x) == 0 || elements(t1).any(|y| g.m1.rank((1 << x) | (1 << y)) == 1);
        if !ok {
            return Err(Error::NotModular(format!(
                "element {x} of the closure is neither a loop nor parallel to the common set"
            )));
        }
    }
    if !is_modular_flat(&g.m1, cl) {
        return Err(Error::NotModular("closure of the common set".into()));
    }
    let num = &cp_delete_contract(&g.m1) * &cp_delete_contract(&g.m2);
    num.exact_div(&cp_delete_contract(&g.n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermRole {
    /// `M^S` itself.
    Extension,
    /// `M^{s_1..s_i} / s_i`, with `i` counted from 1.
    Contraction(usize),
}

#[derive(Debug, Clone)]
pub struct StarfishTerm {
    pub matroid: Matroid,
    pub role: TermRole,
}

/// The terms of `χ_M = χ_{M^S} + Σ_i χ_{M^{s_1..s_i}/s_i}`.
pub fn starfish_expansion(ext: &ExtensionMatroid) -> Result<Vec<StarfishTerm>> {
    let n = ext.base_size();
    let mut terms = vec![StarfishTerm {
        matroid: ext.matroid.clone(),
        role: TermRole::Extension,
    }];
    for i in 1..=ext.added.len() {
        let prefix = full_mask(n + i);
        let m_i = ext.matroid.restrict(prefix)?;
        terms.push(StarfishTerm {
            matroid: m_i.contract_linear(1 << (n + i - 1))?,
            role: TermRole::Contraction(i),
        });
    }
    Ok(terms)
}

pub fn starfish_sum(terms: &[StarfishTerm]) -> IntPolynomial {
    terms.iter().map(|t| cp_delete_contract(&t.matroid)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeckSide {
    U,
    W,
}

/// The decomposition of `M^S` that keeps `τ` on `E(M)` and puts every added
/// element in the bag of `u` (or `w`). Every added point must lie in the
/// external neck of `uw`.
pub fn induced_decomposition(
    ext: &ExtensionMatroid,
    dec: &TreeDecomposition,
    u: usize,
    w: usize,
    side: NeckSide,
) -> Result<TreeDecomposition> {
    let neck = neck_of_edge(&ext.embedding, dec, u, w)?;
    if let Some(&p) = ext
        .added
        .iter()
        .find(|p| neck.external.binary_search(p).is_err())
    {
        return Err(Error::NotInNeck(p));
    }
    let v = match side {
        NeckSide::U => u,
        NeckSide::W => w,
    };
    dec.with_elements_at(v, ext.added.len())
}
