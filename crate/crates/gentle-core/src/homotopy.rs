//! Homotopy strings: walks forbidden only from backtracks, the special
//! composition regime, directed decomposition with L and deg, antipaths,
//! homotopy bands with rotations, and bounded enumeration.

use alloc::vec::Vec;
use alloc::{vec};

use crate::quiver::{BoundQuiver, Sign, StringFunctions, VertexId};
use crate::walk::{is_primitive, Letter, SignTable, Walk};

/// Shared context: a bound quiver with string functions and the sign tables.
pub struct Ctx<'a> {
    pub q: &'a BoundQuiver,
    pub st: &'a StringFunctions,
    pub table: &'a SignTable,
}

impl<'a> Ctx<'a> {
    pub fn new(q: &'a BoundQuiver, st: &'a StringFunctions, table: &'a SignTable) -> Ctx<'a> {
        Ctx { q, st, table }
    }
}

/// Homotopy-string validity: composable and backtrack-free.
pub fn is_homotopy_string(q: &BoundQuiver, w: &Walk) -> bool {
    w.is_reduced_walk(q)
}

/// Homotopy-string composition; `None` is the undefined-marker. The rules
/// differ from string composition: relations may sit at the junction, and
/// trivial walks compose by direction-sensitive sign rules.
pub fn hcompose(ctx: &Ctx, w1: &Walk, w2: &Walk) -> Option<Walk> {
    let (q, st) = (ctx.q, ctx.st);
    match (w1.len() > 0, w2.len() > 0) {
        (true, true) => {
            if w1.s(q) != w2.t(q) {
                return None;
            }
            let a1 = *w1.letters().last().unwrap();
            let a2 = w2.letters()[0];
            let s1 = w1.sign_s(st);
            let t2 = w2.sign_t(st);
            let ok = (s1 == t2 && a1.inverse == a2.inverse)
                || (s1 == -t2 && a1.inverse != a2.inverse);
            if !ok {
                return None;
            }
            let mut ls = w1.letters().to_vec();
            ls.extend_from_slice(w2.letters());
            let w = Walk::Word(ls);
            debug_assert!(is_homotopy_string(q, &w));
            Some(w)
        }
        (true, false) => {
            let Walk::Trivial { at, sign } = *w2 else { unreachable!() };
            let last = *w1.letters().last().unwrap();
            let ok = at == w1.s(q)
                && ((sign == w1.sign_s(st) && !last.inverse)
                    || (sign == -w1.sign_s(st) && last.inverse));
            if ok {
                Some(w1.clone())
            } else {
                None
            }
        }
        (false, true) => {
            let Walk::Trivial { at, sign } = *w1 else { unreachable!() };
            let first = w2.letters()[0];
            let ok = at == w2.t(q)
                && ((sign == w2.sign_t(st) && !first.inverse)
                    || (sign == -w2.sign_t(st) && first.inverse));
            if ok {
                Some(w2.clone())
            } else {
                None
            }
        }
        (false, false) => {
            if w1 == w2 {
                Some(w1.clone())
            } else {
                None
            }
        }
    }
}

/// The unique presentation of a positive-length walk as directed pieces
/// whose pairwise compositions are defined: runs split at direction changes
/// and at relation junctions inside same-direction runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomp {
    pub pieces: Vec<Walk>,
    /// deg of the piece prefixes; entry i is deg omega^[i], so the last
    /// entry is deg omega.
    pub deg_prefix: Vec<i64>,
}

impl Decomp {
    pub fn l(&self) -> usize {
        self.pieces.len()
    }

    pub fn deg(&self) -> i64 {
        *self.deg_prefix.last().unwrap()
    }

    /// Is piece i (1-based) a path (as opposed to an inverse path)?
    pub fn piece_is_path(&self, i: usize) -> bool {
        !self.pieces[i - 1].letters()[0].inverse
    }
}

pub fn directed_decomposition(q: &BoundQuiver, w: &Walk) -> Decomp {
    let ls = w.letters();
    let mut pieces: Vec<Walk> = Vec::new();
    let mut cur: Vec<Letter> = Vec::new();
    for &l in ls {
        if let Some(&prev) = cur.last() {
            let split = if prev.inverse != l.inverse {
                true
            } else if l.inverse {
                // inverse run: the underlying path reads right-to-left
                q.is_rel2(l.arrow, prev.arrow)
            } else {
                q.is_rel2(prev.arrow, l.arrow)
            };
            if split {
                pieces.push(Walk::Word(core::mem::take(&mut cur)));
            }
        }
        cur.push(l);
    }
    if !cur.is_empty() {
        pieces.push(Walk::Word(cur));
    }
    debug_assert!(pieces.iter().all(|p| p.is_directed(q)));
    let mut deg_prefix = vec![0i64];
    let mut d = 0i64;
    for p in &pieces {
        d += if p.letters()[0].inverse { -1 } else { 1 };
        deg_prefix.push(d);
    }
    Decomp { pieces, deg_prefix }
}

/// omega^[i]: the composition of the first i directed pieces, with the
/// printed boundary convention at i = 0.
pub fn prefix(ctx: &Ctx, w: &Walk, d: &Decomp, i: usize) -> Walk {
    assert!(i <= d.l(), "piece index out of range");
    let (q, st) = (ctx.q, ctx.st);
    if i == 0 {
        let sign = if w.len() > 0 && !w.letters()[0].inverse {
            w.sign_t(st)
        } else {
            -w.sign_t(st)
        };
        return Walk::trivial(w.t(q), sign);
    }
    let n: usize = d.pieces[..i].iter().map(|p| p.len()).sum();
    Walk::Word(w.letters()[..n].to_vec())
}

/// ^[i]omega: the composition of the pieces after the first i, with the
/// boundary convention at i = L (the printed formula's `t omega` there is a
/// misprint for `s omega`).
pub fn suffix(ctx: &Ctx, w: &Walk, d: &Decomp, i: usize) -> Walk {
    assert!(i <= d.l(), "piece index out of range");
    let (q, st) = (ctx.q, ctx.st);
    if i == d.l() {
        let sign = if w.len() > 0 && w.letters().last().unwrap().inverse {
            -w.sign_s(st)
        } else {
            w.sign_s(st)
        };
        return Walk::trivial(w.s(q), sign);
    }
    let n: usize = d.pieces[..i].iter().map(|p| p.len()).sum();
    Walk::Word(w.letters()[n..].to_vec())
}

/// s omega^[i], the projective summand vertex at piece index i.
pub fn prefix_source(ctx: &Ctx, w: &Walk, d: &Decomp, i: usize) -> VertexId {
    prefix(ctx, w, d, i).s(ctx.q)
}

/// sigma_omega: the maximal-length simple string composing onto the walk.
/// It equals sigma_{t omega, delta} with delta = T omega when the first
/// letter is direct, and -T omega otherwise.
pub fn sigma_omega(ctx: &Ctx, w: &Walk) -> Walk {
    let delta = sigma_omega_sign(ctx, w);
    let sigma = ctx.table.sigma_max(w.t(ctx.q), delta).clone();
    debug_assert!(hcompose(ctx, &sigma, w).is_some());
    sigma
}

pub fn sigma_omega_sign(ctx: &Ctx, w: &Walk) -> Sign {
    if w.len() > 0 && !w.letters()[0].inverse {
        w.sign_t(ctx.st)
    } else {
        -w.sign_t(ctx.st)
    }
}

/// All antipaths with target x and T = eps, shortest first. The chain is
/// unique: each member extends the previous by its relation continuation.
pub fn theta_chain(ctx: &Ctx, x: VertexId, eps: Sign) -> Vec<Walk> {
    let (q, st) = (ctx.q, ctx.st);
    let mut chain = vec![Walk::trivial(x, -eps)];
    let start = q.arrows_in(x).into_iter().find(|&a| st.t(a) == eps);
    if let Some(a) = start {
        let mut word = vec![a];
        loop {
            chain.push(Walk::Word(word.iter().map(|&a| Letter::direct(a)).collect()));
            if word.len() > q.num_arrows() {
                break;
            }
            match q.rel_before(*word.last().unwrap()) {
                Some(c) => word.push(c),
                None => break,
            }
        }
    }
    chain
}

/// theta_{x,eps}: the maximal antipath into (x, eps), or `None` for the
/// absent-marker when the antipath chain cycles and has no maximum.
pub fn theta_max(ctx: &Ctx, x: VertexId, eps: Sign) -> Option<Walk> {
    let chain = theta_chain(ctx, x, eps);
    let last = chain.last().unwrap();
    if last.len() > ctx.q.num_arrows() {
        // the chain entered a relation cycle; no maximal member exists
        None
    } else {
        Some(last.clone())
    }
}

pub fn is_homotopy_band(ctx: &Ctx, w: &Walk) -> bool {
    let q = ctx.q;
    if w.len() == 0 || !is_homotopy_string(q, w) {
        return false;
    }
    let d = directed_decomposition(q, w);
    if d.deg() != 0 {
        return false;
    }
    let first_path = d.piece_is_path(1);
    let last_path = d.piece_is_path(d.l());
    if !(first_path ^ last_path) {
        return false;
    }
    w.s(q) == w.t(q) && w.sign_s(ctx.st) == -w.sign_t(ctx.st) && is_primitive(w.letters())
}

/// omega^(i) := ^[i]omega . omega^[i]; the rotation may fail to be a
/// homotopy band, hence the validity flag.
pub fn rotate(ctx: &Ctx, w: &Walk, i: usize) -> (Walk, bool) {
    let d = directed_decomposition(ctx.q, w);
    assert!(d.l() > 0, "rotation needs positive length");
    assert!(i < d.l(), "rotation index out of range");
    let n: usize = d.pieces[..i].iter().map(|p| p.len()).sum();
    let mut ls = w.letters()[n..].to_vec();
    ls.extend_from_slice(&w.letters()[..n]);
    let rotated = Walk::Word(ls);
    let valid = is_homotopy_band(ctx, &rotated);
    (rotated, valid)
}

/// Canonical band representative: the lexicographically least walk among
/// all piece rotations of omega and of omega^-1.
pub fn band_canonical(ctx: &Ctx, w: &Walk) -> Walk {
    let mut best = w.clone();
    for m in [w.clone(), w.invert()] {
        let d = directed_decomposition(ctx.q, &m);
        if m < best {
            best = m.clone();
        }
        for i in 1..d.l() {
            let (r, _) = rotate(ctx, &m, i);
            if r < best {
                best = r;
            }
        }
    }
    best
}

/// Every homotopy string of length <= max_len, in length-then-lex order.
/// Trivial walks come first, ordered by vertex then sign (+ before -).
pub fn enumerate_homotopy_strings(q: &BoundQuiver, max_len: usize) -> Vec<Walk> {
    let mut result = Vec::new();
    for x in q.vertices() {
        result.push(Walk::trivial(x, 1));
        result.push(Walk::trivial(x, -1));
    }
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _len in 1..=max_len {
        let mut next = Vec::new();
        for word in &frontier {
            for a in q.arrows() {
                for inverse in [false, true] {
                    let l = Letter { arrow: a, inverse };
                    if let Some(&prev) = word.last() {
                        if prev.s(q) != l.t(q) {
                            continue;
                        }
                        if prev.arrow == l.arrow && prev.inverse != l.inverse {
                            continue;
                        }
                    }
                    let mut w = word.clone();
                    w.push(l);
                    next.push(w);
                }
            }
        }
        next.sort();
        for w in &next {
            result.push(Walk::Word(w.clone()));
        }
        frontier = next;
    }
    result
}

/// Homotopy bands of length <= max_len, deduplicated up to rotation and
/// inversion via the canonical form, in length-then-lex order.
pub fn enumerate_homotopy_bands(ctx: &Ctx, max_len: usize) -> Vec<Walk> {
    let mut seen = alloc::collections::BTreeSet::new();
    let mut result = Vec::new();
    for w in enumerate_homotopy_strings(ctx.q, max_len) {
        if is_homotopy_band(ctx, &w) {
            let canon = band_canonical(ctx, &w);
            if seen.insert(canon.clone()) {
                result.push(canon);
            }
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::SignTable;
    use alloc::string::String;

    fn setup(which: u8) -> (BoundQuiver, StringFunctions, SignTable) {
        let q = match which {
            1 => BoundQuiver::build(&["1", "2"], &[("a", "1", "2")], &[]).unwrap(),
            2 => BoundQuiver::build(
                &["1", "2", "3"],
                &[("a", "1", "2"), ("b", "2", "3")],
                &[vec!["b", "a"]],
            )
            .unwrap(),
            _ => BoundQuiver::build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]).unwrap(),
        };
        let st = q.compute_string_functions().unwrap();
        let table = SignTable::new(&q, &st);
        (q, st, table)
    }

    fn w(q: &BoundQuiver, text: &str) -> Walk {
        let letters: Vec<Letter> = text
            .split_whitespace()
            .map(|part| {
                let (name, inv) = match part.strip_suffix('-') {
                    Some(n) => (n, true),
                    None => (part, false),
                };
                Letter { arrow: q.arrow_by_name(name).unwrap(), inverse: inv }
            })
            .collect();
        Walk::from_letters(letters)
    }

    #[test]
    fn compose_examples() {
        let (q, st, table) = setup(2);
        let ctx = Ctx::new(&q, &st, &table);
        assert_eq!(hcompose(&ctx, &w(&q, "b"), &w(&q, "a")), Some(w(&q, "b a")));

        let (q, st, table) = setup(1);
        let ctx = Ctx::new(&q, &st, &table);
        let v2 = q.vertex_by_name("2").unwrap();
        assert_eq!(hcompose(&ctx, &Walk::trivial(v2, 1), &w(&q, "a")), Some(w(&q, "a")));
        assert_eq!(hcompose(&ctx, &Walk::trivial(v2, 1), &Walk::trivial(v2, -1)), None);
    }

    #[test]
    fn decomposition_examples() {
        let (q, _, _) = setup(2);
        let d = directed_decomposition(&q, &w(&q, "b a"));
        assert_eq!(d.l(), 2);
        assert_eq!(d.pieces, vec![w(&q, "b"), w(&q, "a")]);
        assert_eq!(d.deg(), 2);

        let (q, _, _) = setup(3);
        let d = directed_decomposition(&q, &w(&q, "a b-"));
        assert_eq!(d.l(), 2);
        assert_eq!(d.deg(), 0);

        let (q, st, table) = setup(1);
        let ctx = Ctx::new(&q, &st, &table);
        let a = w(&q, "a");
        let d = directed_decomposition(&q, &a);
        assert_eq!(d.l(), 1);
        assert_eq!(d.deg(), 1);
        let v2 = q.vertex_by_name("2").unwrap();
        assert_eq!(prefix(&ctx, &a, &d, 0), Walk::trivial(v2, 1));
    }

    #[test]
    fn prefix_suffix_recompose() {
        for which in [1, 2, 3] {
            let (q, st, table) = setup(which);
            let ctx = Ctx::new(&q, &st, &table);
            for w in enumerate_homotopy_strings(&q, 4) {
                let d = directed_decomposition(&q, &w);
                for i in 0..=d.l() {
                    let p = prefix(&ctx, &w, &d, i);
                    let s = suffix(&ctx, &w, &d, i);
                    assert_eq!(hcompose(&ctx, &p, &s), Some(w.clone()), "split of {:?}", w);
                }
                let inv = w.invert();
                let di = directed_decomposition(&q, &inv);
                assert_eq!(di.l(), d.l());
                assert_eq!(di.deg(), -d.deg());
            }
        }
    }

    #[test]
    fn sigma_omega_examples() {
        let (q, st, table) = setup(2);
        let ctx = Ctx::new(&q, &st, &table);
        assert_eq!(sigma_omega(&ctx, &w(&q, "a")), w(&q, "b"));

        let (q, st, table) = setup(1);
        let ctx = Ctx::new(&q, &st, &table);
        let v1 = q.vertex_by_name("1").unwrap();
        let v2 = q.vertex_by_name("2").unwrap();
        assert_eq!(sigma_omega(&ctx, &w(&q, "a")), Walk::trivial(v2, 1));
        assert_eq!(sigma_omega(&ctx, &Walk::trivial(v1, 1)), w(&q, "a"));
    }

    #[test]
    fn theta_examples() {
        let (q, st, table) = setup(1);
        let ctx = Ctx::new(&q, &st, &table);
        let v2 = q.vertex_by_name("2").unwrap();
        assert_eq!(theta_max(&ctx, v2, 1), Some(w(&q, "a")));
        assert_eq!(theta_max(&ctx, v2, -1), Some(Walk::trivial(v2, 1)));

        let (q, st, table) = setup(2);
        let ctx = Ctx::new(&q, &st, &table);
        let v3 = q.vertex_by_name("3").unwrap();
        assert_eq!(theta_max(&ctx, v3, 1), Some(w(&q, "b a")));
    }

    #[test]
    fn antipath_lengths_bounded() {
        for which in [1, 2, 3] {
            let (q, st, table) = setup(which);
            let ctx = Ctx::new(&q, &st, &table);
            for x in q.vertices() {
                for eps in [1, -1] {
                    for theta in theta_chain(&ctx, x, eps) {
                        assert!(theta.len() <= q.num_arrows());
                    }
                }
            }
        }
    }

    #[test]
    fn band_examples() {
        let (q, st, table) = setup(3);
        let ctx = Ctx::new(&q, &st, &table);
        assert!(is_homotopy_band(&ctx, &w(&q, "a b-")));

        let (q, st, table) = setup(2);
        let ctx = Ctx::new(&q, &st, &table);
        assert!(!is_homotopy_band(&ctx, &w(&q, "b a")));

        let (q, st, table) = setup(1);
        let ctx = Ctx::new(&q, &st, &table);
        for w in enumerate_homotopy_strings(&q, 4) {
            assert!(!is_homotopy_band(&ctx, &w));
        }
    }

    #[test]
    fn enumeration_counts() {
        let (q, _, _) = setup(1);
        assert_eq!(enumerate_homotopy_strings(&q, 1).len(), 6);
        assert_eq!(enumerate_homotopy_strings(&q, 0).len(), 4);

        let (q, _, _) = setup(2);
        let e = enumerate_homotopy_strings(&q, 2);
        let words: Vec<String> = e.iter().map(|w| w.display(&q)).collect();
        assert!(words.contains(&String::from("b a")));
        assert!(words.contains(&String::from("a- b-")));
        assert!(!words.contains(&String::from("a a-")));
    }

    #[test]
    fn strings_are_homotopy_strings() {
        let (q, _, _) = setup(2);
        for hw in enumerate_homotopy_strings(&q, 4) {
            if hw.is_string(&q) {
                assert!(is_homotopy_string(&q, &hw));
            }
        }
        assert!(is_homotopy_string(&q, &w(&q, "b a")));
        assert!(!w(&q, "b a").is_string(&q));
    }

    #[test]
    fn band_dedup_on_kronecker() {
        let (q, st, table) = setup(3);
        let ctx = Ctx::new(&q, &st, &table);
        let bands = enumerate_homotopy_bands(&ctx, 2);
        assert_eq!(bands.len(), 1);
        assert_eq!(bands[0], band_canonical(&ctx, &w(&q, "b- a")));
    }
}
