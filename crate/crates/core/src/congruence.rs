//! Congruences of finite semigroups.
//!
//! A congruence is stored as its canonical least-representative array, so two
//! congruences are equal iff their arrays are equal.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::semigroup::{Element, Semigroup};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    repr: Vec<Element>,
}

/// A partition of a set of elements into classes; printed as `[[0,2],[1,3]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    classes: Vec<Vec<Element>>,
}

impl Partition {
    /// Sorts each class and orders the classes by their least element.
    pub fn new(mut classes: Vec<Vec<Element>>) -> Self {
        classes.retain(|c| !c.is_empty());
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort_unstable();
        Partition { classes }
    }

    pub fn classes(&self) -> &[Vec<Element>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Inverse of the `Display` form.
    pub fn parse(text: &str) -> Result<Self> {
        let v: Vec<Vec<Element>> = serde_json::from_str(text.trim())
            .map_err(|e| Error::Malformed(format!("partition: {e}")))?;
        Ok(Partition::new(v))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, class) in self.classes.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, x) in class.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.classes.serialize(serializer)
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence{}", self.partition())
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition())
    }
}

impl Serialize for Congruence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.partition().serialize(serializer)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as root so canonicalization is a single pass
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl Congruence {
    /// The equality relation `0`.
    pub fn identity(n: usize) -> Self {
        Congruence {
            repr: (0..n).collect(),
        }
    }

    /// The all relation `1`.
    pub fn total(n: usize) -> Self {
        Congruence { repr: vec![0; n] }
    }

    pub fn parent_order(&self) -> usize {
        self.repr.len()
    }

    /// `repr[a]` is the least element of the class of `a`.
    pub fn repr(&self) -> &[Element] {
        &self.repr
    }

    #[inline]
    pub fn related(&self, a: Element, b: Element) -> bool {
        self.repr[a] == self.repr[b]
    }

    pub fn is_identity(&self) -> bool {
        self.repr.iter().enumerate().all(|(a, &r)| a == r)
    }

    pub fn is_total(&self) -> bool {
        self.repr.iter().all(|&r| r == 0)
    }

    pub fn class_count(&self) -> usize {
        self.repr.iter().enumerate().filter(|&(a, &r)| a == r).count()
    }

    /// All related pairs `(a, b)`, including the diagonal, in lexicographic order.
    pub fn pairs(&self) -> Vec<(Element, Element)> {
        let n = self.repr.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.repr[a] == self.repr[b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn classes(&self) -> Vec<Vec<Element>> {
        let n = self.repr.len();
        let mut classes: Vec<Vec<Element>> = vec![Vec::new(); n];
        for a in 0..n {
            classes[self.repr[a]].push(a);
        }
        classes.retain(|c| !c.is_empty());
        classes
    }

    pub fn partition(&self) -> Partition {
        Partition::new(self.classes())
    }

    /// `self ⊆ other` as relations.
    pub fn leq(&self, other: &Congruence) -> bool {
        self.repr
            .iter()
            .enumerate()
            .all(|(a, &r)| other.repr[a] == other.repr[r])
    }

    /// Canonical form of an equivalence given by arbitrary class labels.
    /// Does not check compatibility.
    pub fn from_labels<L: Eq + std::hash::Hash + Copy>(labels: &[L]) -> Self {
        let mut first: rustc_hash::FxHashMap<L, Element> = Default::default();
        let repr = labels
            .iter()
            .enumerate()
            .map(|(a, l)| *first.entry(*l).or_insert(a))
            .collect();
        Congruence { repr }
    }

    /// Builds a congruence from classes covering `0..n` and verifies it is
    /// compatible with the multiplication of `s`.
    pub fn from_partition(s: &Semigroup, classes: &[Vec<Element>]) -> Result<Self> {
        let n = s.order();
        let mut label = vec![usize::MAX; n];
        for (k, class) in classes.iter().enumerate() {
            for &a in class {
                if a >= n || label[a] != usize::MAX {
                    return Err(Error::InvalidArgument(format!(
                        "element {a} missing from or repeated in partition"
                    )));
                }
                label[a] = k;
            }
        }
        if label.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("partition does not cover the semigroup".into()));
        }
        let c = Congruence::from_labels(&label);
        if let Some((a, b, x)) = c.compatibility_violation(s) {
            return Err(Error::InvalidArgument(format!(
                "not a congruence: {a} ~ {b} but not after multiplying by {x}"
            )));
        }
        Ok(c)
    }

    /// A triple `(a, b, s)` with `a ~ b` but `sa !~ sb` or `as !~ bs`.
    pub fn compatibility_violation(&self, s: &Semigroup) -> Option<(Element, Element, Element)> {
        for a in s.elements() {
            let b = self.repr[a];
            if a == b {
                continue;
            }
            for x in s.elements() {
                if !self.related(s.mul(x, a), s.mul(x, b)) || !self.related(s.mul(a, x), s.mul(b, x)) {
                    return Some((a, b, x));
                }
            }
        }
        None
    }

    pub fn is_congruence_of(&self, s: &Semigroup) -> bool {
        self.repr.len() == s.order() && self.compatibility_violation(s).is_none()
    }
}

/// The least congruence containing `pairs`.
///
/// Union-find with a worklist: every pair that merges two classes has its
/// one-sided translates `(sa, sb)` and `(as, bs)` queued.
pub fn cg(s: &Semigroup, pairs: &[(Element, Element)]) -> Congruence {
    cg_from(s, &Congruence::identity(s.order()), pairs)
}

/// The least congruence containing `base` and `pairs`. `base` must already be
/// a congruence of `s`.
pub fn cg_from(s: &Semigroup, base: &Congruence, pairs: &[(Element, Element)]) -> Congruence {
    let n = s.order();
    let mut uf = UnionFind::new(n);
    for a in 0..n {
        uf.parent[a] = base.repr[a];
    }
    let mut work: Vec<(Element, Element)> = pairs.to_vec();
    while let Some((a, b)) = work.pop() {
        if uf.union(a, b) {
            for x in 0..n {
                work.push((s.mul(x, a), s.mul(x, b)));
                work.push((s.mul(a, x), s.mul(b, x)));
            }
        }
    }
    let repr = (0..n).map(|a| uf.find(a)).collect();
    Congruence { repr }
}

/// Intersection of two congruences.
pub fn meet(theta: &Congruence, psi: &Congruence) -> Congruence {
    assert_eq!(theta.parent_order(), psi.parent_order());
    let labels: Vec<(Element, Element)> = theta
        .repr
        .iter()
        .zip(&psi.repr)
        .map(|(&x, &y)| (x, y))
        .collect();
    Congruence::from_labels(&labels)
}

/// Least congruence containing both.
pub fn join(s: &Semigroup, theta: &Congruence, psi: &Congruence) -> Congruence {
    let pairs: Vec<_> = psi.repr.iter().enumerate().map(|(a, &r)| (a, r)).collect();
    cg_from(s, theta, &pairs)
}

/// `ρ_I`: the ideal `I` as one class, every other element alone.
pub fn rees_congruence(s: &Semigroup, ideal: &[Element]) -> Result<Congruence> {
    if ideal.is_empty() {
        return Err(Error::InvalidArgument("empty ideal".into()));
    }
    if let Some((x, a)) = s.ideal_violation(ideal) {
        return Err(Error::NotAnIdeal { s: x, a });
    }
    let low = *ideal.iter().min().unwrap();
    let mut repr: Vec<Element> = s.elements().collect();
    for &a in ideal {
        repr[a] = low;
    }
    Ok(Congruence { repr })
}

/// Quotient semigroup. Class `k` is the class with the `k`-th smallest
/// representative; the returned map sends each element to its class.
pub fn quotient(s: &Semigroup, theta: &Congruence) -> (Semigroup, Vec<Element>) {
    let n = s.order();
    let mut class_of_repr = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if theta.repr[a] == a {
            class_of_repr[a] = reps.len();
            reps.push(a);
        }
    }
    let projection: Vec<Element> = (0..n).map(|a| class_of_repr[theta.repr[a]]).collect();
    let q = Semigroup::from_fn(reps.len(), |i, j| projection[s.mul(reps[i], reps[j])])
        .expect("quotient by a congruence is a semigroup");
    (q, projection)
}

/// `θ` restricted to the subset `u`.
pub fn restrict(theta: &Congruence, u: &[Element]) -> Partition {
    let mut by_repr: rustc_hash::FxHashMap<Element, Vec<Element>> = Default::default();
    for &a in u {
        by_repr.entry(theta.repr[a]).or_default().push(a);
    }
    Partition::new(by_repr.into_values().collect())
}

/// Least congruence containing `theta` whose quotient is cancellative.
pub fn cancellative_closure(s: &Semigroup, theta: &Congruence) -> Congruence {
    let n = s.order();
    let mut delta = theta.clone();
    loop {
        let mut forced = Vec::new();
        for c in 0..n {
            for d in (c + 1)..n {
                if delta.related(c, d) {
                    continue;
                }
                if (0..n).any(|a| {
                    delta.related(s.mul(a, c), s.mul(a, d)) || delta.related(s.mul(c, a), s.mul(d, a))
                }) {
                    forced.push((c, d));
                }
            }
        }
        if forced.is_empty() {
            return delta;
        }
        delta = cg_from(s, &delta, &forced);
    }
}

/// Every congruence of `s`, by brute force over set partitions. Only for
/// small orders; used as an independent check on `cg`, `meet` and `join`.
pub fn all_congruences(s: &Semigroup) -> Vec<Congruence> {
    let n = s.order();
    assert!(n <= 8, "brute-force congruence enumeration is for tiny semigroups");
    let mut out = Vec::new();
    // restricted growth strings
    let mut labels = vec![0usize; n];
    fn rec(k: usize, max: usize, labels: &mut Vec<usize>, s: &Semigroup, out: &mut Vec<Congruence>) {
        let n = labels.len();
        if k == n {
            let c = Congruence::from_labels(labels);
            if c.compatibility_violation(s).is_none() {
                out.push(c);
            }
            return;
        }
        for l in 0..=max + 1 {
            labels[k] = l;
            rec(k + 1, max.max(l), labels, s, out);
        }
    }
    if n == 1 {
        return vec![Congruence::identity(1)];
    }
    labels[0] = 0;
    rec(1, 0, &mut labels, s, &mut out);
    out.sort();
    out
}
