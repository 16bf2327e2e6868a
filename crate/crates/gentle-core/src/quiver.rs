//! Bound quivers with monomial relations, gentle validation, string
//! functions, maximal paths, and the path algebra with zero composition.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

/// Sign value, always +1 or -1.
pub type Sign = i8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ArrowId(pub usize);

/// A finite quiver with monomial relations.
///
/// Relations are stored as arrow words of length >= 2 in composition order:
/// the word `[a1, ..., al]` is the path `a1 ... al` with `s(ai) = t(ai+1)`,
/// so the first letter is the one nearest the target. Gentle quivers only
/// have length-2 relations; longer words occur for the repetitive quiver
/// where full paths join the relation set.
#[derive(Clone, Debug)]
pub struct BoundQuiver {
    vertex_names: Vec<String>,
    arrow_names: Vec<String>,
    src: Vec<VertexId>,
    tgt: Vec<VertexId>,
    relations: Vec<Vec<ArrowId>>,
    /// Length-2 relation members as (left, right) pairs, used by the
    /// (almost) gentle conditions and string-function constraints.
    rel2: BTreeSet<(ArrowId, ArrowId)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverError {
    DuplicateVertex(String),
    DuplicateArrow(String),
    UnknownVertex(String),
    UnknownArrow(String),
    RelationDoesNotCompose { index: usize },
    RelationTooShort { index: usize },
    IsolatedVertex(String),
    /// The string-function constraint system is inconsistent (cannot occur
    /// for almost gentle input; reported defensively).
    UnsatisfiableStringFunctions,
    /// A non-relation path cycle exists, so R is not admissible.
    NotAdmissible,
}

impl fmt::Display for QuiverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverError::DuplicateVertex(n) => write!(f, "duplicate vertex `{n}`"),
            QuiverError::DuplicateArrow(n) => write!(f, "duplicate arrow `{n}`"),
            QuiverError::UnknownVertex(n) => write!(f, "unknown vertex `{n}`"),
            QuiverError::UnknownArrow(n) => write!(f, "unknown arrow `{n}`"),
            QuiverError::RelationDoesNotCompose { index } => {
                write!(f, "relation #{index} does not compose")
            }
            QuiverError::RelationTooShort { index } => {
                write!(f, "relation #{index} has length < 2")
            }
            QuiverError::IsolatedVertex(n) => write!(f, "isolated vertex `{n}`"),
            QuiverError::UnsatisfiableStringFunctions => {
                write!(f, "string-function constraints are unsatisfiable")
            }
            QuiverError::NotAdmissible => {
                write!(f, "quiver has a relation-free cycle; relations not admissible")
            }
        }
    }
}

impl BoundQuiver {
    pub fn build(
        vertices: &[&str],
        arrows: &[(&str, &str, &str)],
        relations: &[Vec<&str>],
    ) -> Result<BoundQuiver, QuiverError> {
        let mut vnames = Vec::new();
        let mut vidx = BTreeMap::new();
        for &v in vertices {
            if vidx.insert(String::from(v), VertexId(vnames.len())).is_some() {
                return Err(QuiverError::DuplicateVertex(String::from(v)));
            }
            vnames.push(String::from(v));
        }
        let mut anames = Vec::new();
        let mut aidx = BTreeMap::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        for &(name, s, t) in arrows {
            if aidx.insert(String::from(name), ArrowId(anames.len())).is_some() {
                return Err(QuiverError::DuplicateArrow(String::from(name)));
            }
            anames.push(String::from(name));
            src.push(*vidx.get(s).ok_or_else(|| QuiverError::UnknownVertex(String::from(s)))?);
            tgt.push(*vidx.get(t).ok_or_else(|| QuiverError::UnknownVertex(String::from(t)))?);
        }
        let mut rels = Vec::new();
        for (index, r) in relations.iter().enumerate() {
            let mut word = Vec::new();
            for &a in r {
                word.push(*aidx.get(a).ok_or_else(|| QuiverError::UnknownArrow(String::from(a)))?);
            }
            if word.len() < 2 {
                return Err(QuiverError::RelationTooShort { index });
            }
            for w in word.windows(2) {
                if src[w[0].0] != tgt[w[1].0] {
                    return Err(QuiverError::RelationDoesNotCompose { index });
                }
            }
            rels.push(word);
        }
        BoundQuiver::from_parts(vnames, anames, src, tgt, rels)
    }

    pub fn from_parts(
        vertex_names: Vec<String>,
        arrow_names: Vec<String>,
        src: Vec<VertexId>,
        tgt: Vec<VertexId>,
        relations: Vec<Vec<ArrowId>>,
    ) -> Result<BoundQuiver, QuiverError> {
        for (v, name) in vertex_names.iter().enumerate() {
            let touched = src.iter().any(|s| s.0 == v) || tgt.iter().any(|t| t.0 == v);
            if !touched {
                return Err(QuiverError::IsolatedVertex(name.clone()));
            }
        }
        let mut rel2 = BTreeSet::new();
        for r in &relations {
            if r.len() == 2 {
                rel2.insert((r[0], r[1]));
            }
        }
        Ok(BoundQuiver { vertex_names, arrow_names, src, tgt, relations, rel2 })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrow_names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.num_vertices()).map(VertexId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.num_arrows()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrow_names[a.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrow_names.iter().position(|n| n == name).map(ArrowId)
    }

    pub fn src(&self, a: ArrowId) -> VertexId {
        self.src[a.0]
    }

    pub fn tgt(&self, a: ArrowId) -> VertexId {
        self.tgt[a.0]
    }

    pub fn relations(&self) -> &[Vec<ArrowId>] {
        &self.relations
    }

    /// Is the length-2 path `left . right` a relation member?
    pub fn is_rel2(&self, left: ArrowId, right: ArrowId) -> bool {
        self.rel2.contains(&(left, right))
    }

    /// Does the arrow word (in composition order) contain a relation word as
    /// a contiguous factor? Words containing one are zero in the path algebra.
    pub fn word_hits_relation(&self, word: &[ArrowId]) -> bool {
        self.relations.iter().any(|r| {
            word.len() >= r.len() && word.windows(r.len()).any(|w| w == r.as_slice())
        })
    }

    /// Keep a length-2 relation word in the relation ideal but stop
    /// counting it as a quadratic pair. Needed when a long zero word of
    /// a bound quiver happens to have length 2: continuations and sign
    /// conditions must treat the junction as relation-free even though
    /// the word itself is zero.
    pub fn declassify_rel2(&mut self, left: ArrowId, right: ArrowId) {
        self.rel2.remove(&(left, right));
    }

    pub fn arrows_out(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrows().filter(|&a| self.src(a) == v).collect()
    }

    pub fn arrows_in(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrows().filter(|&a| self.tgt(a) == v).collect()
    }

    pub fn validate_gentle(&self) -> GentleReport {
        let mut report = self.validate_almost_gentle();
        for (index, r) in self.relations.iter().enumerate() {
            if r.len() != 2 {
                report.violations.push(GentleViolation::RelationNotLength2 { index });
            }
        }
        report
    }

    /// Conditions (1)-(3) of the almost gentle definition. Relation
    /// membership of a composable arrow pair means membership of the
    /// length-2 word in R, not divisibility by longer relations.
    pub fn validate_almost_gentle(&self) -> GentleReport {
        let mut violations = Vec::new();
        for v in self.vertices() {
            if self.arrows_out(v).len() > 2 {
                violations.push(GentleViolation::TooManyOut { vertex: v });
            }
            if self.arrows_in(v).len() > 2 {
                violations.push(GentleViolation::TooManyIn { vertex: v });
            }
        }
        for a in self.arrows() {
            let after: Vec<ArrowId> =
                self.arrows_out(self.tgt(a)).into_iter().filter(|&b| !self.is_rel2(b, a)).collect();
            if after.len() > 1 {
                violations.push(GentleViolation::TwoNonRelAfter { arrow: a });
            }
            let after_rel: Vec<ArrowId> =
                self.arrows_out(self.tgt(a)).into_iter().filter(|&b| self.is_rel2(b, a)).collect();
            if after_rel.len() > 1 {
                violations.push(GentleViolation::TwoRelAfter { arrow: a });
            }
            let before: Vec<ArrowId> =
                self.arrows_in(self.src(a)).into_iter().filter(|&b| !self.is_rel2(a, b)).collect();
            if before.len() > 1 {
                violations.push(GentleViolation::TwoNonRelBefore { arrow: a });
            }
            let before_rel: Vec<ArrowId> =
                self.arrows_in(self.src(a)).into_iter().filter(|&b| self.is_rel2(a, b)).collect();
            if before_rel.len() > 1 {
                violations.push(GentleViolation::TwoRelBefore { arrow: a });
            }
        }
        GentleReport { violations }
    }

    /// The unique non-relation continuation of `a` at its target: the arrow
    /// `b` with `s(b) = t(a)` and `ba` not a relation, if any.
    pub fn cont_after(&self, a: ArrowId) -> Option<ArrowId> {
        self.arrows_out(self.tgt(a)).into_iter().find(|&b| !self.is_rel2(b, a))
    }

    /// The unique non-relation continuation of `a` at its source.
    pub fn cont_before(&self, a: ArrowId) -> Option<ArrowId> {
        self.arrows_in(self.src(a)).into_iter().find(|&b| !self.is_rel2(a, b))
    }

    /// The unique relation continuation of `a` at its target: `b` with
    /// `ba` a relation, if any.
    pub fn rel_after(&self, a: ArrowId) -> Option<ArrowId> {
        self.arrows_out(self.tgt(a)).into_iter().find(|&b| self.is_rel2(b, a))
    }

    pub fn rel_before(&self, a: ArrowId) -> Option<ArrowId> {
        self.arrows_in(self.src(a)).into_iter().find(|&b| self.is_rel2(a, b))
    }

    /// Deterministic string functions: arrows are processed in input order,
    /// the first arrow of each constraint-connected component gets S = +1
    /// (and T = +1 when unconstrained), and constraints are propagated by
    /// breadth-first search.
    pub fn compute_string_functions(&self) -> Result<StringFunctions, QuiverError> {
        // Variables 2a (= S of arrow a) and 2a+1 (= T of arrow a), with
        // parity edges var' = parity * var.
        let n = self.num_arrows();
        let mut edges: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); 2 * n];
        let add = |edges: &mut Vec<Vec<(usize, Sign)>>, u: usize, v: usize, p: Sign| {
            edges[u].push((v, p));
            edges[v].push((u, p));
        };
        for a in self.arrows() {
            for b in self.arrows() {
                if a.0 < b.0 && self.src(a) == self.src(b) {
                    add(&mut edges, 2 * a.0, 2 * b.0, -1);
                }
                if a.0 < b.0 && self.tgt(a) == self.tgt(b) {
                    add(&mut edges, 2 * a.0 + 1, 2 * b.0 + 1, -1);
                }
                // composable pair (a, b): the word ab
                if self.src(a) == self.tgt(b) {
                    let p = if self.is_rel2(a, b) { 1 } else { -1 };
                    add(&mut edges, 2 * a.0, 2 * b.0 + 1, p);
                }
            }
        }
        let mut val: Vec<Option<Sign>> = vec![None; 2 * n];
        let mut seeds: Vec<usize> = Vec::new();
        for a in 0..n {
            seeds.push(2 * a);
            seeds.push(2 * a + 1);
        }
        for seed in seeds {
            if val[seed].is_some() {
                continue;
            }
            val[seed] = Some(1);
            let mut queue = VecDeque::new();
            queue.push_back(seed);
            while let Some(u) = queue.pop_front() {
                let vu = val[u].unwrap();
                for &(v, p) in &edges[u] {
                    let want = vu * p;
                    match val[v] {
                        None => {
                            val[v] = Some(want);
                            queue.push_back(v);
                        }
                        Some(have) if have != want => {
                            return Err(QuiverError::UnsatisfiableStringFunctions)
                        }
                        _ => {}
                    }
                }
            }
        }
        let s = (0..n).map(|a| val[2 * a].unwrap()).collect();
        let t = (0..n).map(|a| val[2 * a + 1].unwrap()).collect();
        Ok(StringFunctions { s, t })
    }

    /// All maximal paths of the monomial bound quiver, each of positive
    /// length; every arrow occurs in exactly one of them.
    pub fn maximal_paths(&self) -> Result<Vec<Path>, QuiverError> {
        let mut result = Vec::new();
        let mut seen = vec![false; self.num_arrows()];
        for start in self.arrows() {
            if self.cont_before(start).is_some() {
                continue;
            }
            let mut word = vec![start];
            let mut cur = start;
            while let Some(next) = self.cont_after(cur) {
                if word.len() > self.num_arrows() {
                    return Err(QuiverError::NotAdmissible);
                }
                // word is built target-first: prepend the continuation
                word.insert(0, next);
                cur = next;
            }
            for &a in &word {
                seen[a.0] = true;
            }
            result.push(Path::from_word(self, word).expect("maximal path is a path"));
        }
        if seen.iter().any(|&s| !s) {
            // every arrow lies on a maximal path unless a cycle exists
            return Err(QuiverError::NotAdmissible);
        }
        result.sort_by(|p, q| self.path_key(p).cmp(&self.path_key(q)));
        Ok(result)
    }

    fn path_key(&self, p: &Path) -> Vec<ArrowId> {
        p.word.clone()
    }

    /// All paths with source `x`, including the trivial one, shortest first.
    /// Panics if the path set keeps growing past the admissibility bound.
    pub fn paths_from(&self, x: VertexId) -> Vec<Path> {
        let cap = 4 * self.num_arrows() + 4;
        let mut result = vec![Path::trivial(x)];
        // grow by prepending continuations at the target end
        let mut frontier: Vec<Vec<ArrowId>> =
            self.arrows().filter(|&a| self.src(a) == x).map(|a| vec![a]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for word in &frontier {
                if let Some(p) = Path::from_word(self, word.clone()) {
                    assert!(p.len() <= cap, "path growth exceeds admissibility bound");
                    for b in self.arrows_out(self.tgt(word[0])) {
                        let mut w = vec![b];
                        w.extend_from_slice(word);
                        next.push(w);
                    }
                    result.push(p);
                }
            }
            next.sort();
            frontier = next;
        }
        result
    }

    /// All paths from `x` to `y`, shortest first.
    pub fn paths_between(&self, x: VertexId, y: VertexId) -> Vec<Path> {
        self.paths_from(x).into_iter().filter(|p| p.t(self) == y).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GentleViolation {
    /// clause (1): more than two arrows out of the vertex
    TooManyOut { vertex: VertexId },
    /// clause (1): more than two arrows into the vertex
    TooManyIn { vertex: VertexId },
    /// clause (2): two non-relation continuations at the target of the arrow
    TwoNonRelAfter { arrow: ArrowId },
    /// clause (2): two non-relation continuations at the source of the arrow
    TwoNonRelBefore { arrow: ArrowId },
    /// clause (3): two relation continuations at the target of the arrow
    TwoRelAfter { arrow: ArrowId },
    /// clause (3): two relation continuations at the source of the arrow
    TwoRelBefore { arrow: ArrowId },
    /// gentle only: relation word of length other than 2
    RelationNotLength2 { index: usize },
}

impl GentleViolation {
    pub fn clause(&self) -> u8 {
        match self {
            GentleViolation::TooManyOut { .. } | GentleViolation::TooManyIn { .. } => 1,
            GentleViolation::TwoNonRelAfter { .. } | GentleViolation::TwoNonRelBefore { .. } => 2,
            GentleViolation::TwoRelAfter { .. } | GentleViolation::TwoRelBefore { .. } => 3,
            GentleViolation::RelationNotLength2 { .. } => 4,
        }
    }

    pub fn describe(&self, q: &BoundQuiver) -> String {
        match self {
            GentleViolation::TooManyOut { vertex } => {
                format!("clause (1): more than two arrows out of `{}`", q.vertex_name(*vertex))
            }
            GentleViolation::TooManyIn { vertex } => {
                format!("clause (1): more than two arrows into `{}`", q.vertex_name(*vertex))
            }
            GentleViolation::TwoNonRelAfter { arrow } => format!(
                "clause (2): two non-relation continuations after `{}`",
                q.arrow_name(*arrow)
            ),
            GentleViolation::TwoNonRelBefore { arrow } => format!(
                "clause (2): two non-relation continuations before `{}`",
                q.arrow_name(*arrow)
            ),
            GentleViolation::TwoRelAfter { arrow } => {
                format!("clause (3): two relation continuations after `{}`", q.arrow_name(*arrow))
            }
            GentleViolation::TwoRelBefore { arrow } => {
                format!("clause (3): two relation continuations before `{}`", q.arrow_name(*arrow))
            }
            GentleViolation::RelationNotLength2 { index } => {
                format!("gentle clause: relation #{index} does not have length 2")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GentleReport {
    pub violations: Vec<GentleViolation>,
}

impl GentleReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringFunctions {
    s: Vec<Sign>,
    t: Vec<Sign>,
}

impl StringFunctions {
    pub fn from_values(s: Vec<Sign>, t: Vec<Sign>) -> StringFunctions {
        StringFunctions { s, t }
    }

    pub fn s(&self, a: ArrowId) -> Sign {
        self.s[a.0]
    }

    pub fn t(&self, a: ArrowId) -> Sign {
        self.t[a.0]
    }

    /// Re-test all four string-function conditions over all arrow pairs.
    pub fn check(&self, q: &BoundQuiver) -> bool {
        for a in q.arrows() {
            for b in q.arrows() {
                if a != b && q.src(a) == q.src(b) && self.s(a) != -self.s(b) {
                    return false;
                }
                if a != b && q.tgt(a) == q.tgt(b) && self.t(a) != -self.t(b) {
                    return false;
                }
                if q.src(a) == q.tgt(b) {
                    let want = if q.is_rel2(a, b) { self.t(b) } else { -self.t(b) };
                    if self.s(a) != want {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A path in the monomial bound quiver: an arrow word avoiding relations,
/// or a trivial path at a vertex. The word is in composition order, first
/// letter nearest the target.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    word: Vec<ArrowId>,
    /// target vertex; for trivial paths the vertex itself
    at: VertexId,
}

impl Path {
    pub fn trivial(x: VertexId) -> Path {
        Path { word: Vec::new(), at: x }
    }

    pub fn arrow(q: &BoundQuiver, a: ArrowId) -> Path {
        Path { word: vec![a], at: q.tgt(a) }
    }

    /// Build from an arrow word; `None` when the word does not compose or
    /// hits a relation. Empty words are rejected (use `trivial`).
    pub fn from_word(q: &BoundQuiver, word: Vec<ArrowId>) -> Option<Path> {
        if word.is_empty() {
            return None;
        }
        for w in word.windows(2) {
            if q.src(w[0]) != q.tgt(w[1]) {
                return None;
            }
        }
        if q.word_hits_relation(&word) {
            return None;
        }
        let at = q.tgt(word[0]);
        Some(Path { word, at })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[ArrowId] {
        &self.word
    }

    pub fn s(&self, q: &BoundQuiver) -> VertexId {
        match self.word.last() {
            Some(&a) => q.src(a),
            None => self.at,
        }
    }

    pub fn t(&self, _q: &BoundQuiver) -> VertexId {
        self.at
    }

    pub fn display(&self, q: &BoundQuiver) -> String {
        if self.word.is_empty() {
            format!("1_{}", q.vertex_name(self.at))
        } else {
            let names: Vec<&str> = self.word.iter().map(|&a| q.arrow_name(a)).collect();
            names.join(" ")
        }
    }
}

/// Composition `p . r` with `s(p) = t(r)`; `None` is the zero of the path
/// algebra (concatenation hits a relation), `Err`-like misuse of endpoints
/// is also `None`-distinguished via panic-free contract: mismatched
/// endpoints return `None` as well after the explicit check below.
pub fn path_compose(q: &BoundQuiver, p: &Path, r: &Path) -> Option<Path> {
    assert_eq!(p.s(q), r.t(q), "path endpoints do not compose");
    if p.is_empty() {
        return Some(r.clone());
    }
    if r.is_empty() {
        return Some(p.clone());
    }
    let mut word = p.word.clone();
    word.extend_from_slice(&r.word);
    Path::from_word(q, word)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn q1() -> BoundQuiver {
        BoundQuiver::build(&["1", "2"], &[("a", "1", "2")], &[]).unwrap()
    }

    pub fn q2() -> BoundQuiver {
        BoundQuiver::build(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3")],
            &[vec!["b", "a"]],
        )
        .unwrap()
    }

    pub fn q3() -> BoundQuiver {
        BoundQuiver::build(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[]).unwrap()
    }

    #[test]
    fn build_rejects_non_composable_relation() {
        let r = BoundQuiver::build(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3")],
            &[vec!["a", "b"]],
        );
        assert_eq!(r.unwrap_err(), QuiverError::RelationDoesNotCompose { index: 0 });
    }

    #[test]
    fn gentle_reports() {
        assert!(q1().validate_gentle().is_ok());
        assert!(q2().validate_gentle().is_ok());
        assert!(q3().validate_gentle().is_ok());
        let bad = BoundQuiver::build(
            &["0", "1", "2", "3"],
            &[("a", "0", "1"), ("b", "0", "2"), ("c", "0", "3")],
            &[],
        )
        .unwrap();
        let report = bad.validate_gentle();
        assert!(report.violations.iter().any(|v| v.clause() == 1));
    }

    #[test]
    fn string_functions_q1() {
        let q = q1();
        let st = q.compute_string_functions().unwrap();
        let a = q.arrow_by_name("a").unwrap();
        assert_eq!(st.s(a), 1);
        assert_eq!(st.t(a), 1);
        assert!(st.check(&q));
    }

    #[test]
    fn string_functions_q2() {
        let q = q2();
        let st = q.compute_string_functions().unwrap();
        let a = q.arrow_by_name("a").unwrap();
        let b = q.arrow_by_name("b").unwrap();
        assert_eq!((st.s(a), st.t(a), st.s(b), st.t(b)), (1, 1, 1, 1));
        assert!(st.check(&q));
    }

    #[test]
    fn string_functions_q3() {
        let q = q3();
        let st = q.compute_string_functions().unwrap();
        let a = q.arrow_by_name("a").unwrap();
        let b = q.arrow_by_name("b").unwrap();
        assert_eq!((st.s(a), st.s(b), st.t(a), st.t(b)), (1, -1, 1, -1));
        assert!(st.check(&q));
    }

    #[test]
    fn maximal_paths_examples() {
        let q = q1();
        let mp = q.maximal_paths().unwrap();
        assert_eq!(mp.len(), 1);
        assert_eq!(mp[0].display(&q), "a");

        let q = q2();
        let mp = q.maximal_paths().unwrap();
        let words: Vec<String> = mp.iter().map(|p| p.display(&q)).collect();
        assert_eq!(words, vec!["a", "b"]);

        let q = q3();
        assert_eq!(q.maximal_paths().unwrap().len(), 2);
    }

    #[test]
    fn maximal_paths_partition_arrows() {
        for q in [q1(), q2(), q3()] {
            let mp = q.maximal_paths().unwrap();
            let total: usize = mp.iter().map(|p| p.len()).sum();
            assert_eq!(total, q.num_arrows());
            let mut seen = BTreeSet::new();
            for p in &mp {
                for &a in p.word() {
                    assert!(seen.insert(a));
                }
            }
        }
    }

    #[test]
    fn path_compose_examples() {
        let q = q2();
        let a = Path::arrow(&q, q.arrow_by_name("a").unwrap());
        let b = Path::arrow(&q, q.arrow_by_name("b").unwrap());
        assert_eq!(path_compose(&q, &b, &a), None);
        let one1 = Path::trivial(q.vertex_by_name("1").unwrap());
        assert_eq!(path_compose(&q, &a, &one1), Some(a.clone()));

        let q = q1();
        let a = Path::arrow(&q, q.arrow_by_name("a").unwrap());
        let one2 = Path::trivial(q.vertex_by_name("2").unwrap());
        assert_eq!(path_compose(&q, &one2, &a), Some(a));
    }

    #[test]
    fn longer_relation_word_detection() {
        // a quiver with a length-3 relation to exercise factor search
        let q = BoundQuiver::build(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
            &[vec!["c", "b", "a"]],
        )
        .unwrap();
        let a = q.arrow_by_name("a").unwrap();
        let b = q.arrow_by_name("b").unwrap();
        let c = q.arrow_by_name("c").unwrap();
        assert!(Path::from_word(&q, vec![b, a]).is_some());
        assert!(Path::from_word(&q, vec![c, b, a]).is_none());
        assert!(!q.is_rel2(b, a));
    }
}
