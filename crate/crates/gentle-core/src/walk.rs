//! Strings over the double quiver: reduced walks avoiding relations, their
//! inverses, and backtracks, with the sign-extended S/T functions, substrings,
//! bands, and the Sigma/sigma/alpha lookup tables.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::quiver::{ArrowId, BoundQuiver, Sign, StringFunctions, VertexId};

/// A letter of the double quiver: an arrow or its formal inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub arrow: ArrowId,
    pub inverse: bool,
}

impl Letter {
    pub fn direct(arrow: ArrowId) -> Letter {
        Letter { arrow, inverse: false }
    }

    pub fn inv(arrow: ArrowId) -> Letter {
        Letter { arrow, inverse: true }
    }

    pub fn inverted(self) -> Letter {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }

    pub fn s(self, q: &BoundQuiver) -> VertexId {
        if self.inverse {
            q.tgt(self.arrow)
        } else {
            q.src(self.arrow)
        }
    }

    pub fn t(self, q: &BoundQuiver) -> VertexId {
        if self.inverse {
            q.src(self.arrow)
        } else {
            q.tgt(self.arrow)
        }
    }

    pub fn sign_s(self, st: &StringFunctions) -> Sign {
        if self.inverse {
            st.t(self.arrow)
        } else {
            st.s(self.arrow)
        }
    }

    pub fn sign_t(self, st: &StringFunctions) -> Sign {
        if self.inverse {
            st.s(self.arrow)
        } else {
            st.t(self.arrow)
        }
    }

    pub fn display(self, q: &BoundQuiver) -> String {
        if self.inverse {
            format!("{}-", q.arrow_name(self.arrow))
        } else {
            String::from(q.arrow_name(self.arrow))
        }
    }
}

/// A walk in the double quiver: either a trivial walk `1_{x,eps}` carrying
/// its sign, or a nonempty letter word stored left-to-right, first letter
/// nearest the target.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Walk {
    Trivial { at: VertexId, sign: Sign },
    Word(Vec<Letter>),
}

impl Walk {
    pub fn trivial(at: VertexId, sign: Sign) -> Walk {
        debug_assert!(sign == 1 || sign == -1);
        Walk::Trivial { at, sign }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Walk {
        assert!(!letters.is_empty(), "use Walk::trivial for length 0");
        Walk::Word(letters)
    }

    pub fn len(&self) -> usize {
        match self {
            Walk::Trivial { .. } => 0,
            Walk::Word(ls) => ls.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn letters(&self) -> &[Letter] {
        match self {
            Walk::Trivial { .. } => &[],
            Walk::Word(ls) => ls,
        }
    }

    /// 1-based letter access matching the alpha_i notation.
    pub fn letter(&self, i: usize) -> Letter {
        self.letters()[i - 1]
    }

    pub fn s(&self, q: &BoundQuiver) -> VertexId {
        match self {
            Walk::Trivial { at, .. } => *at,
            Walk::Word(ls) => ls.last().unwrap().s(q),
        }
    }

    pub fn t(&self, q: &BoundQuiver) -> VertexId {
        match self {
            Walk::Trivial { at, .. } => *at,
            Walk::Word(ls) => ls[0].t(q),
        }
    }

    pub fn sign_s(&self, st: &StringFunctions) -> Sign {
        match self {
            Walk::Trivial { sign, .. } => *sign,
            Walk::Word(ls) => ls.last().unwrap().sign_s(st),
        }
    }

    pub fn sign_t(&self, st: &StringFunctions) -> Sign {
        match self {
            Walk::Trivial { sign, .. } => -*sign,
            Walk::Word(ls) => ls[0].sign_t(st),
        }
    }

    pub fn invert(&self) -> Walk {
        match self {
            Walk::Trivial { at, sign } => Walk::Trivial { at: *at, sign: -sign },
            Walk::Word(ls) => {
                Walk::Word(ls.iter().rev().map(|l| l.inverted()).collect())
            }
        }
    }

    /// Do consecutive letters compose in the double quiver?
    pub fn composes(&self, q: &BoundQuiver) -> bool {
        self.letters().windows(2).all(|w| w[0].s(q) == w[1].t(q))
    }

    /// Walk with neither backtrack factors nor their mirrors; the common
    /// core of strings and homotopy strings.
    pub fn is_reduced_walk(&self, q: &BoundQuiver) -> bool {
        self.composes(q)
            && self.letters().windows(2).all(|w| {
                !(w[0].arrow == w[1].arrow && w[0].inverse != w[1].inverse)
            })
    }

    /// String test: reduced walk whose directed runs avoid the relation
    /// ideal in both directions.
    pub fn is_string(&self, q: &BoundQuiver) -> bool {
        if !self.is_reduced_walk(q) {
            return false;
        }
        let ls = self.letters();
        let mut i = 0;
        while i < ls.len() {
            let mut j = i;
            while j + 1 < ls.len() && ls[j + 1].inverse == ls[i].inverse {
                j += 1;
            }
            let mut word: Vec<ArrowId> = ls[i..=j].iter().map(|l| l.arrow).collect();
            if ls[i].inverse {
                word.reverse();
            }
            if q.word_hits_relation(&word) {
                return false;
            }
            i = j + 1;
        }
        true
    }

    /// Is the walk a directed string: trivial, a path, or an inverse path?
    pub fn is_directed(&self, q: &BoundQuiver) -> bool {
        self.is_string(q)
            && (self.letters().iter().all(|l| !l.inverse)
                || self.letters().iter().all(|l| l.inverse))
    }

    /// Simple string: trivial or a path of positive length.
    pub fn is_simple(&self, q: &BoundQuiver) -> bool {
        self.is_string(q) && self.letters().iter().all(|l| !l.inverse)
    }

    /// omega_[i]: the length-i head of the walk.
    pub fn substring_t(&self, q: &BoundQuiver, st: &StringFunctions, i: usize) -> Walk {
        assert!(i <= self.len(), "substring index out of range");
        if i == 0 {
            Walk::trivial(self.t(q), -self.sign_t(st))
        } else {
            Walk::Word(self.letters()[..i].to_vec())
        }
    }

    /// _[i]omega: the length-(l - i) tail of the walk.
    pub fn substring_s(&self, q: &BoundQuiver, st: &StringFunctions, i: usize) -> Walk {
        assert!(i <= self.len(), "substring index out of range");
        if i == self.len() {
            Walk::trivial(self.s(q), self.sign_s(st))
        } else {
            Walk::Word(self.letters()[i..].to_vec())
        }
    }

    pub fn display(&self, q: &BoundQuiver) -> String {
        match self {
            Walk::Trivial { at, sign } => {
                format!("1:({},{})", q.vertex_name(*at), if *sign > 0 { "+" } else { "-" })
            }
            Walk::Word(ls) => {
                let parts: Vec<String> = ls.iter().map(|l| l.display(q)).collect();
                parts.join(" ")
            }
        }
    }
}

/// Sign-governed composition of strings. `None` is the
/// undefined-marker; the inputs must already be strings.
pub fn string_compose(
    q: &BoundQuiver,
    st: &StringFunctions,
    w1: &Walk,
    w2: &Walk,
) -> Option<Walk> {
    match (w1.len() > 0, w2.len() > 0) {
        (true, true) => {
            if w1.s(q) != w2.t(q) {
                return None;
            }
            let mut ls = w1.letters().to_vec();
            ls.extend_from_slice(w2.letters());
            let w = Walk::Word(ls);
            if w.is_string(q) {
                // the string-function axioms force the signs to oppose here
                debug_assert_eq!(w1.sign_s(st), -w2.sign_t(st));
                Some(w)
            } else {
                None
            }
        }
        (true, false) => {
            // w1 . 1_{x,eps} defined iff x = s(w1) and eps = S(w1)
            if w2.s(q) == w1.s(q) && w2.sign_s(st) == w1.sign_s(st) {
                Some(w1.clone())
            } else {
                None
            }
        }
        (false, true) => {
            // 1_{x,eps} . w2 defined iff x = t(w2) and eps = -T(w2)
            if w1.s(q) == w2.t(q) && w1.sign_s(st) == -w2.sign_t(st) {
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

/// Band test: closed primitive string with opposing end
/// directions all of whose powers are strings.
pub fn is_band(q: &BoundQuiver, w: &Walk) -> bool {
    let l = w.len();
    if l == 0 || !w.is_string(q) || w.s(q) != w.t(q) {
        return false;
    }
    let first = w.letters()[0];
    let last = *w.letters().last().unwrap();
    if first.inverse == last.inverse {
        return false;
    }
    // all powers are strings iff a power long enough to contain every
    // possible relation-factor window is one
    let max_rel = q.relations().iter().map(|r| r.len()).max().unwrap_or(2);
    let k = core::cmp::max(2, max_rel / l + 2);
    let mut ls = Vec::new();
    for _ in 0..k {
        ls.extend_from_slice(w.letters());
    }
    if !Walk::Word(ls).is_string(q) {
        return false;
    }
    is_primitive(w.letters())
}

pub fn is_primitive(letters: &[Letter]) -> bool {
    let l = letters.len();
    for d in 1..l {
        if l % d == 0 && (0..l).all(|i| letters[i] == letters[i % d]) {
            return false;
        }
    }
    true
}

/// The Sigma/alpha/sigma lookup tables indexed by (vertex, sign).
#[derive(Clone, Debug)]
pub struct SignTable {
    /// Sigma_{x,eps}: simple strings with source x and S = eps, increasing
    /// length (a chain under source-end extension).
    sigma: Vec<[Vec<Walk>; 2]>,
    /// Sigma'_{x,eps}: simple strings with target x and T = eps.
    sigma_p: Vec<[Vec<Walk>; 2]>,
}

fn sidx(sign: Sign) -> usize {
    if sign > 0 {
        0
    } else {
        1
    }
}

impl SignTable {
    pub fn new(q: &BoundQuiver, st: &StringFunctions) -> SignTable {
        let mut sigma = Vec::new();
        let mut sigma_p = Vec::new();
        for x in q.vertices() {
            let mut sx: [Vec<Walk>; 2] = [Vec::new(), Vec::new()];
            let mut spx: [Vec<Walk>; 2] = [Vec::new(), Vec::new()];
            for sign in [1, -1] {
                // Sigma_{x,eps}: start at 1_{x,eps}, grow by prepending the
                // unique continuation at the target end, stop at a relation
                // hit (longer relations can kill a word later than pairwise
                // continuation data suggests)
                let mut chain = vec![Walk::trivial(x, sign)];
                let start = q.arrows_out(x).into_iter().find(|&a| st.s(a) == sign);
                if let Some(a) = start {
                    let mut word = vec![a];
                    loop {
                        if q.word_hits_relation(&word) {
                            break;
                        }
                        chain.push(Walk::Word(word.iter().map(|&a| Letter::direct(a)).collect()));
                        let head = word[0];
                        match q.cont_after(head) {
                            Some(c) if word.len() <= q.num_arrows() => word.insert(0, c),
                            _ => break,
                        }
                    }
                }
                sx[sidx(sign)] = chain;

                // Sigma'_{x,eps}: trivial member is 1_{x,-eps}; grow by
                // appending the continuation at the source end
                let mut chain = vec![Walk::trivial(x, -sign)];
                let start = q.arrows_in(x).into_iter().find(|&a| st.t(a) == sign);
                if let Some(a) = start {
                    let mut word = vec![a];
                    loop {
                        if q.word_hits_relation(&word) {
                            break;
                        }
                        chain.push(Walk::Word(word.iter().map(|&a| Letter::direct(a)).collect()));
                        let tail = *word.last().unwrap();
                        match q.cont_before(tail) {
                            Some(c) if word.len() <= q.num_arrows() => word.push(c),
                            _ => break,
                        }
                    }
                }
                spx[sidx(sign)] = chain;
            }
            sigma.push(sx);
            sigma_p.push(spx);
        }
        SignTable { sigma, sigma_p }
    }

    pub fn sigma_set(&self, x: VertexId, sign: Sign) -> &[Walk] {
        &self.sigma[x.0][sidx(sign)]
    }

    pub fn sigma_p_set(&self, x: VertexId, sign: Sign) -> &[Walk] {
        &self.sigma_p[x.0][sidx(sign)]
    }

    /// sigma_{x,eps}: the maximal-length member of Sigma_{x,eps}.
    pub fn sigma_max(&self, x: VertexId, sign: Sign) -> &Walk {
        self.sigma_set(x, sign).last().unwrap()
    }

    pub fn sigma_p_max(&self, x: VertexId, sign: Sign) -> &Walk {
        self.sigma_p_set(x, sign).last().unwrap()
    }

    /// alpha_{x,eps}: the length-1 member of Sigma_{x,eps}, if any.
    pub fn alpha(&self, x: VertexId, sign: Sign) -> Option<Letter> {
        self.sigma_set(x, sign).iter().find(|w| w.len() == 1).map(|w| w.letters()[0])
    }

    pub fn alpha_p(&self, x: VertexId, sign: Sign) -> Option<Letter> {
        self.sigma_p_set(x, sign).iter().find(|w| w.len() == 1).map(|w| w.letters()[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q1() -> (BoundQuiver, StringFunctions) {
        let q = BoundQuiver::build(&["1", "2"], &[("a", "1", "2")], &[]).unwrap();
        let st = q.compute_string_functions().unwrap();
        (q, st)
    }

    fn q2() -> (BoundQuiver, StringFunctions) {
        let q = BoundQuiver::build(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3")],
            &[vec!["b", "a"]],
        )
        .unwrap();
        let st = q.compute_string_functions().unwrap();
        (q, st)
    }

    fn q3() -> (BoundQuiver, StringFunctions) {
        let q = BoundQuiver::build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]).unwrap();
        let st = q.compute_string_functions().unwrap();
        (q, st)
    }

    fn w(q: &BoundQuiver, text: &str) -> Walk {
        let letters: Vec<Letter> = text
            .split_whitespace()
            .map(|part| {
                let (name, inv) = match part.strip_suffix('-') {
                    Some(n) => (n, true),
                    None => (part, false),
                };
                let a = q.arrow_by_name(name).unwrap();
                Letter { arrow: a, inverse: inv }
            })
            .collect();
        Walk::from_letters(letters)
    }

    #[test]
    fn is_string_examples() {
        let (q, _) = q2();
        assert!(!w(&q, "b a").is_string(&q));
        assert!(!w(&q, "a- a").is_string(&q));
        let (q, _) = q3();
        assert!(w(&q, "a b-").is_string(&q));
    }

    #[test]
    fn string_compose_trivial_rules() {
        let (q, st) = q1();
        let a = w(&q, "a");
        let v1 = q.vertex_by_name("1").unwrap();
        assert_eq!(string_compose(&q, &st, &a, &Walk::trivial(v1, 1)), Some(a.clone()));
        assert_eq!(string_compose(&q, &st, &a, &Walk::trivial(v1, -1)), None);
        let (q, st) = q2();
        assert_eq!(string_compose(&q, &st, &w(&q, "b"), &w(&q, "a")), None);
    }

    #[test]
    fn substrings() {
        let (q, st) = q3();
        let ab = w(&q, "a b-");
        assert_eq!(ab.substring_t(&q, &st, 1), w(&q, "a"));
        assert_eq!(ab.substring_s(&q, &st, 1), w(&q, "b-"));
        for i in 0..=2 {
            let head = ab.substring_t(&q, &st, i);
            let tail = ab.substring_s(&q, &st, i);
            assert_eq!(string_compose(&q, &st, &head, &tail), Some(ab.clone()));
        }
        let (q, st) = q1();
        let a = w(&q, "a");
        let v2 = q.vertex_by_name("2").unwrap();
        assert_eq!(a.substring_t(&q, &st, 0), Walk::trivial(v2, -1));
    }

    #[test]
    fn inversion_involution_and_signs() {
        let (q, st) = q3();
        let ab = w(&q, "a b-");
        assert_eq!(ab.invert().invert(), ab);
        assert_eq!(ab.invert().sign_s(&st), ab.sign_t(&st));
        assert_eq!(ab.invert().sign_t(&st), ab.sign_s(&st));
    }

    #[test]
    fn band_examples() {
        let (q, _) = q3();
        assert!(is_band(&q, &w(&q, "a b-")));
        assert!(!is_band(&q, &w(&q, "a b- a b-")));
        let (q, _) = q1();
        assert!(!is_band(&q, &w(&q, "a")));
    }

    #[test]
    fn sign_table_q1() {
        let (q, st) = q1();
        let table = SignTable::new(&q, &st);
        let v1 = q.vertex_by_name("1").unwrap();
        let v2 = q.vertex_by_name("2").unwrap();
        assert_eq!(*table.sigma_max(v1, 1), w(&q, "a"));
        assert_eq!(*table.sigma_max(v1, -1), Walk::trivial(v1, -1));
        assert_eq!(table.alpha(v2, 1), None);
        assert_eq!(table.alpha(v2, -1), None);
    }

    #[test]
    fn sign_table_q2_q3() {
        let (q, st) = q2();
        let table = SignTable::new(&q, &st);
        let v1 = q.vertex_by_name("1").unwrap();
        let v2 = q.vertex_by_name("2").unwrap();
        assert_eq!(*table.sigma_max(v1, 1), w(&q, "a"));
        assert_eq!(table.alpha(v2, 1).unwrap(), w(&q, "b").letters()[0]);

        let (q, st) = q3();
        let table = SignTable::new(&q, &st);
        let v1 = q.vertex_by_name("1").unwrap();
        assert_eq!(table.alpha(v1, 1).unwrap(), w(&q, "a").letters()[0]);
        assert_eq!(table.alpha(v1, -1).unwrap(), w(&q, "b").letters()[0]);
    }

    #[test]
    fn sigma_sets_are_chains() {
        for (q, st) in [q1(), q2(), q3()] {
            let table = SignTable::new(&q, &st);
            for x in q.vertices() {
                for sign in [1, -1] {
                    let set = table.sigma_set(x, sign);
                    for win in set.windows(2) {
                        assert_eq!(win[0].len() + 1, win[1].len());
                        // shorter member is the source-end segment of longer
                        let long = win[1].letters();
                        assert_eq!(&long[long.len() - win[0].len()..], win[0].letters());
                    }
                }
            }
        }
    }
}
