//! Finite dimensional representations of bound quivers: hom spaces,
//! kernels and cokernels, string and band modules, projective covers,
//! syzygies, and the split/indecomposability oracles used by the
//! almost-split machinery.

use alloc::vec::Vec;
use alloc::{vec};

use crate::field::Field;
use crate::matrix::{self, Matrix};
use crate::quiver::{ArrowId, BoundQuiver, Path, VertexId};
use crate::walk::Walk;

/// A representation: a vector space dimension per vertex and a matrix
/// per arrow, with `mats[a]` of shape dims[t a] x dims[s a].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep<E> {
    pub dims: Vec<usize>,
    pub mats: Vec<Matrix<E>>,
}

impl<E: Clone> Rep<E> {
    pub fn dim_total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim_total() == 0
    }
}

pub fn zero_rep<F: Field>(q: &BoundQuiver, f: &F) -> Rep<F::Elem> {
    Rep {
        dims: vec![0; q.num_vertices()],
        mats: q.arrows().map(|_| matrix::zero(f, 0, 0)).collect(),
    }
}

pub fn simple<F: Field>(q: &BoundQuiver, f: &F, x: VertexId) -> Rep<F::Elem> {
    let mut dims = vec![0; q.num_vertices()];
    dims[x.0] = 1;
    let mats = q
        .arrows()
        .map(|a| matrix::zero(f, dims[q.tgt(a).0], dims[q.src(a).0]))
        .collect();
    Rep { dims, mats }
}

pub fn direct_sum<F: Field>(q: &BoundQuiver, f: &F, parts: &[Rep<F::Elem>]) -> Rep<F::Elem> {
    let mut dims = vec![0; q.num_vertices()];
    for p in parts {
        for (d, pd) in dims.iter_mut().zip(&p.dims) {
            *d += pd;
        }
    }
    let mats = q
        .arrows()
        .map(|a| {
            let (rt, cs) = (dims[q.tgt(a).0], dims[q.src(a).0]);
            let mut m = matrix::zero(f, rt, cs);
            let mut ro = 0;
            let mut co = 0;
            for p in parts {
                let pm = &p.mats[a.0];
                for i in 0..pm.rows {
                    for j in 0..pm.cols {
                        m.set(ro + i, co + j, pm.at(i, j).clone());
                    }
                }
                ro += pm.rows;
                co += pm.cols;
            }
            m
        })
        .collect();
    Rep { dims, mats }
}

/// Evaluate a target-first arrow word on a representation: the matrix of
/// the induced map dims[source] -> dims[target]. `src` fixes the vertex
/// for the empty word.
pub fn word_eval<F: Field>(
    q: &BoundQuiver,
    f: &F,
    m: &Rep<F::Elem>,
    word: &[ArrowId],
    src: VertexId,
) -> Matrix<F::Elem> {
    if word.is_empty() {
        return matrix::identity(f, m.dims[src.0]);
    }
    debug_assert_eq!(q.src(*word.last().unwrap()), src);
    let mut acc = m.mats[word[word.len() - 1].0].clone();
    for k in (0..word.len() - 1).rev() {
        debug_assert_eq!(q.src(word[k]), q.tgt(word[k + 1]));
        acc = matrix::mul(f, &m.mats[word[k].0], &acc);
    }
    acc
}

pub fn path_action<F: Field>(
    q: &BoundQuiver,
    f: &F,
    m: &Rep<F::Elem>,
    p: &Path,
) -> Matrix<F::Elem> {
    word_eval(q, f, m, p.word(), p.s(q))
}

/// The relations of an algebra presented on a quiver: arrow words that
/// act as zero plus pairs of words that must act equally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub monomial: Vec<Vec<ArrowId>>,
    pub differences: Vec<(Vec<ArrowId>, Vec<ArrowId>)>,
}

impl AlgebraSpec {
    pub fn monomial_of(q: &BoundQuiver) -> AlgebraSpec {
        AlgebraSpec {
            monomial: q.relations().iter().map(|r| r.clone()).collect(),
            differences: Vec::new(),
        }
    }
}

/// Structural soundness plus all relations of the spec.
pub fn check_rep<F: Field>(
    q: &BoundQuiver,
    f: &F,
    spec: &AlgebraSpec,
    m: &Rep<F::Elem>,
) -> bool {
    if m.dims.len() != q.num_vertices() || m.mats.len() != q.num_arrows() {
        return false;
    }
    for a in q.arrows() {
        let mm = &m.mats[a.0];
        if mm.rows != m.dims[q.tgt(a).0] || mm.cols != m.dims[q.src(a).0] {
            return false;
        }
    }
    for w in &spec.monomial {
        let src = q.src(*w.last().unwrap());
        if !matrix::is_zero_matrix(f, &word_eval(q, f, m, w, src)) {
            return false;
        }
    }
    for (w1, w2) in &spec.differences {
        let src = q.src(*w1.last().unwrap());
        let a1 = word_eval(q, f, m, w1, src);
        let a2 = word_eval(q, f, m, w2, src);
        if a1 != a2 {
            return false;
        }
    }
    true
}

/// A morphism of representations: one matrix per vertex, mats[v] of
/// shape dims_target[v] x dims_source[v].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMap<E> {
    pub mats: Vec<Matrix<E>>,
}

pub fn identity_map<F: Field>(f: &F, m: &Rep<F::Elem>) -> RepMap<F::Elem> {
    RepMap { mats: m.dims.iter().map(|&d| matrix::identity(f, d)).collect() }
}

pub fn zero_map<F: Field>(f: &F, x: &Rep<F::Elem>, y: &Rep<F::Elem>) -> RepMap<F::Elem> {
    RepMap {
        mats: x.dims.iter().zip(&y.dims).map(|(&c, &r)| matrix::zero(f, r, c)).collect(),
    }
}

pub fn map_compose<F: Field>(f: &F, g: &RepMap<F::Elem>, h: &RepMap<F::Elem>) -> RepMap<F::Elem> {
    // h after g
    RepMap {
        mats: g.mats.iter().zip(&h.mats).map(|(gm, hm)| matrix::mul(f, hm, gm)).collect(),
    }
}

pub fn map_add<F: Field>(f: &F, g: &RepMap<F::Elem>, h: &RepMap<F::Elem>) -> RepMap<F::Elem> {
    RepMap { mats: g.mats.iter().zip(&h.mats).map(|(gm, hm)| matrix::add(f, gm, hm)).collect() }
}

pub fn map_scale<F: Field>(f: &F, c: &F::Elem, g: &RepMap<F::Elem>) -> RepMap<F::Elem> {
    RepMap { mats: g.mats.iter().map(|gm| matrix::scale(f, c, gm)).collect() }
}

pub fn map_is_zero<F: Field>(f: &F, g: &RepMap<F::Elem>) -> bool {
    g.mats.iter().all(|m| matrix::is_zero_matrix(f, m))
}

pub fn map_is_injective<F: Field>(f: &F, g: &RepMap<F::Elem>) -> bool {
    g.mats.iter().all(|m| matrix::rank(f, m) == m.cols)
}

pub fn map_is_surjective<F: Field>(f: &F, g: &RepMap<F::Elem>) -> bool {
    g.mats.iter().all(|m| matrix::rank(f, m) == m.rows)
}

pub fn map_is_iso<F: Field>(f: &F, g: &RepMap<F::Elem>) -> bool {
    g.mats.iter().all(|m| m.rows == m.cols && matrix::rank(f, m) == m.rows)
}

/// Does the morphism law hold on every arrow?
pub fn is_rep_map<F: Field>(
    q: &BoundQuiver,
    f: &F,
    x: &Rep<F::Elem>,
    y: &Rep<F::Elem>,
    g: &RepMap<F::Elem>,
) -> bool {
    q.arrows().all(|a| {
        let left = matrix::mul(f, &g.mats[q.tgt(a).0], &x.mats[a.0]);
        let right = matrix::mul(f, &y.mats[a.0], &g.mats[q.src(a).0]);
        left == right
    })
}

/// Basis of Hom(X, Y) as representation morphisms.
pub fn hom_basis<F: Field>(
    q: &BoundQuiver,
    f: &F,
    x: &Rep<F::Elem>,
    y: &Rep<F::Elem>,
) -> Vec<RepMap<F::Elem>> {
    // unknown layout: per vertex, row-major entries of mats[v]
    let mut offset = vec![0usize; q.num_vertices() + 1];
    for v in 0..q.num_vertices() {
        offset[v + 1] = offset[v] + y.dims[v] * x.dims[v];
    }
    let n = offset[q.num_vertices()];
    if n == 0 {
        return Vec::new();
    }
    let slot = |v: usize, r: usize, c: usize| offset[v] + r * x.dims[v] + c;
    let mut rows: Vec<Vec<(usize, F::Elem)>> = Vec::new();
    for a in q.arrows() {
        let (sv, tv) = (q.src(a).0, q.tgt(a).0);
        // f_t X_a - Y_a f_s = 0, entry (i, j): i < dims_y[t], j < dims_x[s]
        for i in 0..y.dims[tv] {
            for j in 0..x.dims[sv] {
                let mut row = Vec::new();
                for k in 0..x.dims[tv] {
                    row.push((slot(tv, i, k), x.mats[a.0].at(k, j).clone()));
                }
                for k in 0..y.dims[sv] {
                    row.push((slot(sv, k, j), f.neg(y.mats[a.0].at(i, k))));
                }
                rows.push(row);
            }
        }
    }
    let mut sys = matrix::zero(f, rows.len().max(1), n);
    for (r, row) in rows.iter().enumerate() {
        for (u, c) in row {
            let v = f.add(sys.at(r, *u), c);
            sys.set(r, *u, v);
        }
    }
    let ker = matrix::kernel(f, &sys);
    (0..ker.cols)
        .map(|bc| {
            let coeffs = ker.col(bc);
            let mats = (0..q.num_vertices())
                .map(|v| {
                    let mut m = matrix::zero(f, y.dims[v], x.dims[v]);
                    for r in 0..y.dims[v] {
                        for c in 0..x.dims[v] {
                            m.set(r, c, coeffs[slot(v, r, c)].clone());
                        }
                    }
                    m
                })
                .collect();
            RepMap { mats }
        })
        .collect()
}

pub fn dim_hom<F: Field>(q: &BoundQuiver, f: &F, x: &Rep<F::Elem>, y: &Rep<F::Elem>) -> usize {
    hom_basis(q, f, x, y).len()
}

fn combine_maps<F: Field>(
    f: &F,
    basis: &[RepMap<F::Elem>],
    coeffs: &[F::Elem],
) -> RepMap<F::Elem> {
    let mut acc = map_scale(f, &coeffs[0], &basis[0]);
    for (b, c) in basis.iter().zip(coeffs).skip(1) {
        acc = map_add(f, &acc, &map_scale(f, c, b));
    }
    acc
}

/// Search the span of `basis` for a member satisfying `pred`; exhaustive
/// when the coefficient space is small, seeded-random otherwise.
pub fn search_hom<F: Field, P: Fn(&RepMap<F::Elem>) -> bool>(
    f: &F,
    basis: &[RepMap<F::Elem>],
    pred: P,
) -> Option<RepMap<F::Elem>> {
    if basis.is_empty() {
        return None;
    }
    let dim = basis.len();
    match f.elements() {
        Some(es) if es.len().checked_pow(dim as u32).map(|n| n <= 200_000).unwrap_or(false) => {
            let mut idx = vec![0usize; dim];
            loop {
                let coeffs: Vec<F::Elem> = idx.iter().map(|&i| es[i].clone()).collect();
                if coeffs.iter().any(|c| !f.is_zero(c)) {
                    let cand = combine_maps(f, basis, &coeffs);
                    if pred(&cand) {
                        return Some(cand);
                    }
                }
                let mut k = 0;
                loop {
                    if k == dim {
                        return None;
                    }
                    idx[k] += 1;
                    if idx[k] < es.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
        elems => {
            let es = elems.unwrap_or_default();
            let mut state = 0x9E3779B97F4A7C15u64;
            for _ in 0..4000 {
                let coeffs: Vec<F::Elem> = (0..dim)
                    .map(|_| {
                        state =
                            state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        if es.is_empty() {
                            f.from_i64(((state >> 33) % 1000) as i64 - 500)
                        } else {
                            es[(state >> 33) as usize % es.len()].clone()
                        }
                    })
                    .collect();
                let cand = combine_maps(f, basis, &coeffs);
                if pred(&cand) {
                    return Some(cand);
                }
            }
            None
        }
    }
}

pub fn find_iso<F: Field>(
    q: &BoundQuiver,
    f: &F,
    x: &Rep<F::Elem>,
    y: &Rep<F::Elem>,
) -> Option<RepMap<F::Elem>> {
    if x.dims != y.dims {
        return None;
    }
    if x.is_zero() {
        return Some(identity_map(f, x));
    }
    let basis = hom_basis(q, f, x, y);
    search_hom(f, &basis, |g| map_is_iso(f, g))
}

pub fn is_isomorphic<F: Field>(
    q: &BoundQuiver,
    f: &F,
    x: &Rep<F::Elem>,
    y: &Rep<F::Elem>,
) -> bool {
    find_iso(q, f, x, y).is_some()
}

/// Kernel subrepresentation with its inclusion.
pub fn kernel_rep<F: Field>(
    q: &BoundQuiver,
    f: &F,
    x: &Rep<F::Elem>,
    _y: &Rep<F::Elem>,
    g: &RepMap<F::Elem>,
) -> (Rep<F::Elem>, RepMap<F::Elem>) {
    let inc: Vec<Matrix<F::Elem>> = g.mats.iter().map(|m| matrix::kernel(f, m)).collect();
    let dims: Vec<usize> = inc.iter().map(|k| k.cols).collect();
    let mats = q
        .arrows()
        .map(|a| {
            let (sv, tv) = (q.src(a).0, q.tgt(a).0);
            let rhs = matrix::mul(f, &x.mats[a.0], &inc[sv]);
            solve_matrix(f, &inc[tv], &rhs).expect("kernel is a subrepresentation")
        })
        .collect();
    (Rep { dims, mats }, RepMap { mats: inc })
}

/// Cokernel quotient with its projection.
pub fn cokernel_rep<F: Field>(
    q: &BoundQuiver,
    f: &F,
    _x: &Rep<F::Elem>,
    y: &Rep<F::Elem>,
    g: &RepMap<F::Elem>,
) -> (Rep<F::Elem>, RepMap<F::Elem>) {
    let proj: Vec<Matrix<F::Elem>> = g.mats.iter().map(|m| matrix::cokernel(f, m)).collect();
    let dims: Vec<usize> = proj.iter().map(|p| p.rows).collect();
    let mats = q
        .arrows()
        .map(|a| {
            let (sv, tv) = (q.src(a).0, q.tgt(a).0);
            // N proj_s = proj_t Y_a, solved through transposes
            let rhs = matrix::mul(f, &proj[tv], &y.mats[a.0]).transpose();
            let n_t = solve_matrix(f, &proj[sv].transpose(), &rhs)
                .expect("cokernel is a quotient representation");
            n_t.transpose()
        })
        .collect();
    (Rep { dims, mats }, RepMap { mats: proj })
}

fn solve_matrix<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, b.rows);
    let mut out = matrix::zero(f, a.cols, b.cols);
    for j in 0..b.cols {
        let x = matrix::solve(f, a, &b.col(j))?;
        for i in 0..a.cols {
            out.set(i, j, x[i].clone());
        }
    }
    Some(out)
}

/// Is 0 -> A -> B -> C -> 0 exact for the given maps?
pub fn is_short_exact<F: Field>(
    q: &BoundQuiver,
    f: &F,
    a: &Rep<F::Elem>,
    b: &Rep<F::Elem>,
    c: &Rep<F::Elem>,
    i: &RepMap<F::Elem>,
    p: &RepMap<F::Elem>,
) -> bool {
    is_rep_map(q, f, a, b, i)
        && is_rep_map(q, f, b, c, p)
        && map_is_injective(f, i)
        && map_is_surjective(f, p)
        && map_is_zero(f, &map_compose(f, i, p))
        && (0..q.num_vertices()).all(|v| {
            matrix::rank(f, &i.mats[v]) + matrix::rank(f, &p.mats[v]) == b.dims[v]
        })
}

/// Does the epimorphism p : B -> C admit a section?
pub fn section_exists<F: Field>(
    q: &BoundQuiver,
    f: &F,
    b: &Rep<F::Elem>,
    c: &Rep<F::Elem>,
    p: &RepMap<F::Elem>,
) -> bool {
    let basis = hom_basis(q, f, c, b);
    if c.is_zero() {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    // solve sum_k x_k (p h_k) = id_C as a linear system
    let composed: Vec<RepMap<F::Elem>> =
        basis.iter().map(|h| map_compose(f, h, p)).collect();
    let rows: usize = c.dims.iter().map(|&d| d * d).sum();
    let mut sys = matrix::zero(f, rows, basis.len());
    let mut rhs = vec![f.zero(); rows];
    let mut r = 0;
    for v in 0..q.num_vertices() {
        for i in 0..c.dims[v] {
            for j in 0..c.dims[v] {
                for (k, cm) in composed.iter().enumerate() {
                    sys.set(r, k, cm.mats[v].at(i, j).clone());
                }
                rhs[r] = if i == j { f.one() } else { f.zero() };
                r += 1;
            }
        }
    }
    matrix::solve(f, &sys, &rhs).is_some()
}

/// Indecomposability via idempotent search in the endomorphism algebra.
/// Requires a finite field unless the endomorphism algebra is trivial.
pub fn is_indecomposable<F: Field>(q: &BoundQuiver, f: &F, m: &Rep<F::Elem>) -> bool {
    if m.is_zero() {
        return false;
    }
    let basis = hom_basis(q, f, m, m);
    if basis.len() == 1 {
        return true;
    }
    let es = f.elements().expect("idempotent search needs a finite field");
    let dim = basis.len();
    assert!(
        es.len().checked_pow(dim as u32).map(|n| n <= 2_000_000).unwrap_or(false),
        "endomorphism algebra too large for exhaustive idempotent search"
    );
    let id = identity_map(f, m);
    let mut idx = vec![0usize; dim];
    loop {
        let coeffs: Vec<F::Elem> = idx.iter().map(|&i| es[i].clone()).collect();
        if coeffs.iter().any(|c| !f.is_zero(c)) {
            let e = combine_maps(f, &basis, &coeffs);
            if map_compose(f, &e, &e) == e && !map_is_zero(f, &e) && e != id {
                return false;
            }
        }
        let mut k = 0;
        loop {
            if k == dim {
                return true;
            }
            idx[k] += 1;
            if idx[k] < es.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// A string module: basis e_0, ..., e_l with e_i placed at the source of
/// the i-th front substring; letters act by identity towards the target.
#[derive(Clone, Debug)]
pub struct StringModule<E> {
    pub rep: Rep<E>,
    /// vertex of e_i
    pub verts: Vec<VertexId>,
    /// index of e_i inside its vertex space
    pub pos: Vec<usize>,
}

pub fn string_module<F: Field>(q: &BoundQuiver, f: &F, w: &Walk) -> StringModule<F::Elem> {
    let l = w.len();
    let mut verts = Vec::with_capacity(l + 1);
    verts.push(w.t(q));
    for i in 1..=l {
        verts.push(w.letter(i).s(q));
    }
    let mut dims = vec![0usize; q.num_vertices()];
    let mut pos = Vec::with_capacity(l + 1);
    for &v in &verts {
        pos.push(dims[v.0]);
        dims[v.0] += 1;
    }
    let mut mats: Vec<Matrix<F::Elem>> = q
        .arrows()
        .map(|a| matrix::zero(f, dims[q.tgt(a).0], dims[q.src(a).0]))
        .collect();
    for j in 1..=l {
        let letter = w.letter(j);
        let a = letter.arrow;
        if !letter.inverse {
            // e_j at s(a) maps to e_{j-1} at t(a)
            mats[a.0].set(pos[j - 1], pos[j], f.one());
        } else {
            // letter j is the inverse arrow: e_{j-1} at s(a) maps to e_j
            mats[a.0].set(pos[j], pos[j - 1], f.one());
        }
    }
    StringModule { rep: Rep { dims, mats }, verts, pos }
}

/// A band module W_{omega, mu}: blocks e_1, ..., e_l tensored with the
/// space mu acts on; the first letter wraps through mu.
#[derive(Clone, Debug)]
pub struct BandModule<E> {
    pub rep: Rep<E>,
    pub verts: Vec<VertexId>,
    /// starting index of block i (1-based, shifted down) in its vertex
    pub pos: Vec<usize>,
    pub block: usize,
}

pub fn band_module<F: Field>(
    q: &BoundQuiver,
    f: &F,
    w: &Walk,
    mu: &Matrix<F::Elem>,
) -> BandModule<F::Elem> {
    let l = w.len();
    assert!(l > 0);
    assert_eq!(mu.rows, mu.cols);
    assert!(matrix::inverse(f, mu).is_some(), "wrap automorphism is singular");
    let n = mu.rows;
    let verts: Vec<VertexId> = (1..=l).map(|i| w.letter(i).s(q)).collect();
    let mut dims = vec![0usize; q.num_vertices()];
    let mut pos = Vec::with_capacity(l);
    for &v in &verts {
        pos.push(dims[v.0]);
        dims[v.0] += n;
    }
    let mut mats: Vec<Matrix<F::Elem>> = q
        .arrows()
        .map(|a| matrix::zero(f, dims[q.tgt(a).0], dims[q.src(a).0]))
        .collect();
    let put_block = |a: ArrowId, bi: usize, bj: usize, m: &Matrix<F::Elem>,
                         mats: &mut Vec<Matrix<F::Elem>>| {
        for r in 0..n {
            for c in 0..n {
                mats[a.0].set(pos[bi - 1] + r, pos[bj - 1] + c, m.at(r, c).clone());
            }
        }
    };
    let idm = matrix::identity(f, n);
    for j in 1..=l {
        let letter = w.letter(j);
        let a = letter.arrow;
        if j >= 2 && !letter.inverse {
            put_block(a, j - 1, j, &idm, &mut mats);
        }
        if j >= 2 && letter.inverse {
            put_block(a, j, j - 1, &idm, &mut mats);
        }
        if j == 1 && !letter.inverse {
            // wrap: e_1 block maps to e_l block through mu
            put_block(a, l, 1, mu, &mut mats);
        }
        if j == 1 && letter.inverse {
            put_block(a, 1, l, mu, &mut mats);
        }
    }
    BandModule { rep: Rep { dims, mats }, verts, pos, block: n }
}

/// The projectives of an algebra together with an arrow-word basis per
/// indecomposable projective; basis[x][0] is the empty word (the
/// generator), all words are target-first and start at x.
#[derive(Clone, Debug)]
pub struct ProjAlg<E> {
    pub reps: Vec<Rep<E>>,
    pub basis: Vec<Vec<Vec<ArrowId>>>,
}

impl<E: Clone> ProjAlg<E> {
    pub fn proj(&self, x: VertexId) -> &Rep<E> {
        &self.reps[x.0]
    }
}

/// Projectives of a monomial bound quiver: bases are the paths out of
/// each vertex.
pub fn monomial_projectives<F: Field>(q: &BoundQuiver, f: &F) -> ProjAlg<F::Elem> {
    let mut reps = Vec::new();
    let mut basis = Vec::new();
    for x in q.vertices() {
        let paths = q.paths_from(x);
        let mut dims = vec![0usize; q.num_vertices()];
        let mut slot = Vec::new();
        for p in &paths {
            slot.push(dims[p.t(q).0]);
            dims[p.t(q).0] += 1;
        }
        let mut mats: Vec<Matrix<F::Elem>> = q
            .arrows()
            .map(|a| matrix::zero(f, dims[q.tgt(a).0], dims[q.src(a).0]))
            .collect();
        for (j, p) in paths.iter().enumerate() {
            for a in q.arrows_out(p.t(q)) {
                let mut word = vec![a];
                word.extend_from_slice(p.word());
                if let Some(longer) = Path::from_word(q, word) {
                    let i = paths.iter().position(|c| *c == longer).unwrap();
                    mats[a.0].set(slot[i], slot[j], f.one());
                }
            }
        }
        reps.push(Rep { dims, mats });
        basis.push(paths.iter().map(|p| p.word().to_vec()).collect());
    }
    ProjAlg { reps, basis }
}

/// Minimal projective cover of m: the summand vertices, the cover
/// representation, and the epimorphism onto m.
pub fn projective_cover<F: Field>(
    q: &BoundQuiver,
    f: &F,
    alg: &ProjAlg<F::Elem>,
    m: &Rep<F::Elem>,
) -> (Vec<VertexId>, Rep<F::Elem>, RepMap<F::Elem>) {
    // top generators: complete the radical (sum of incoming arrow
    // images) to all of m at every vertex by standard basis vectors
    let mut gens: Vec<(VertexId, Vec<F::Elem>)> = Vec::new();
    for v in q.vertices() {
        let dv = m.dims[v.0];
        if dv == 0 {
            continue;
        }
        let incoming: Vec<ArrowId> = q.arrows().filter(|&a| q.tgt(a) == v).collect();
        let rad_cols: usize = incoming.iter().map(|a| m.mats[a.0].cols).sum();
        let mut span = matrix::zero(f, dv, rad_cols + dv);
        let mut c = 0;
        for a in &incoming {
            for j in 0..m.mats[a.0].cols {
                for i in 0..dv {
                    span.set(i, c, m.mats[a.0].at(i, j).clone());
                }
                c += 1;
            }
        }
        let mut cur = matrix::rank(f, &span);
        for e in 0..dv {
            span.set(e, rad_cols + e, f.one());
            let r = matrix::rank(f, &span);
            if r > cur {
                cur = r;
                let mut vecv = vec![f.zero(); dv];
                vecv[e] = f.one();
                gens.push((v, vecv));
            } else {
                span.set(e, rad_cols + e, f.zero());
            }
        }
    }
    let summands: Vec<VertexId> = gens.iter().map(|(v, _)| *v).collect();
    let parts: Vec<Rep<F::Elem>> = summands.iter().map(|&v| alg.proj(v).clone()).collect();
    let cover = direct_sum(q, f, &parts);
    // epimorphism: basis word w of P_x maps the generator to w . gen
    let mut mats: Vec<Matrix<F::Elem>> = (0..q.num_vertices())
        .map(|v| matrix::zero(f, m.dims[v], cover.dims[v]))
        .collect();
    let mut col_off = vec![0usize; q.num_vertices()];
    for (gi, &x) in summands.iter().enumerate() {
        // recompute slot layout of P_x to place columns
        let mut local = vec![0usize; q.num_vertices()];
        for word in &alg.basis[x.0] {
            let tv = if word.is_empty() { x } else { q.tgt(word[0]) };
            let col = col_off[tv.0] + local[tv.0];
            local[tv.0] += 1;
            let act = word_eval(q, f, m, word, x);
            let genv = &gens[gi].1;
            for r in 0..m.dims[tv.0] {
                let mut acc = f.zero();
                for k in 0..act.cols {
                    acc = f.add(&acc, &f.mul(act.at(r, k), &genv[k]));
                }
                mats[tv.0].set(r, col, acc);
            }
        }
        for v in 0..q.num_vertices() {
            col_off[v] += parts[gi].dims[v];
        }
    }
    let pmap = RepMap { mats };
    debug_assert!(is_rep_map(q, f, &cover, m, &pmap));
    debug_assert!(map_is_surjective(f, &pmap));
    (summands, cover, pmap)
}

/// First syzygy: the kernel of the minimal projective cover.
pub fn syzygy<F: Field>(
    q: &BoundQuiver,
    f: &F,
    alg: &ProjAlg<F::Elem>,
    m: &Rep<F::Elem>,
) -> Rep<F::Elem> {
    let (_, cover, pmap) = projective_cover(q, f, alg, m);
    kernel_rep(q, f, &cover, m, &pmap).0
}
