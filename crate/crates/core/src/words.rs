//! Neumann–Taylor words `q_n`, cancellation, `ρ_n`, and bounded-length
//! rewriting in free monoids.

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::congruence::{cg, Congruence};
use crate::error::{Error, Result};
use crate::semigroup::{Element, Semigroup};
use crate::structure::group_series;

/// Default bound on `|S|^(n+1)` substitutions.
pub const DEFAULT_SUBSTITUTION_CAP: usize = 10_000_000;

/// Default bound on the number of words in a free-monoid computation.
pub const DEFAULT_WORD_CAP: usize = 2_000_000;

/// A word over `0..σ`.
pub type Word = Vec<u8>;

const LETTERS: [char; 3] = ['x', 'y', 'z'];

/// `x`, `y`, `z` for letters `0`, `1`, `2`; the empty word is `""`.
pub fn word_to_string(w: &[u8]) -> String {
    w.iter().map(|&c| LETTERS[c as usize]).collect()
}

pub fn parse_word(s: &str) -> Result<Word> {
    s.chars()
        .map(|c| {
            LETTERS
                .iter()
                .position(|&l| l == c)
                .map(|p| p as u8)
                .ok_or_else(|| Error::InvalidArgument(format!("letter {c:?} outside x, y, z")))
        })
        .collect()
}

/// The variables of `q_n`: `0` is `x`, `1` is `y`, `1 + i` is `z_i`.
pub fn q_pattern(n: usize) -> Vec<usize> {
    assert!(n >= 1);
    let mut q = vec![0, 1];
    for k in 1..n {
        let swapped: Vec<usize> = q.iter().map(|&v| swap_xy(v)).collect();
        q.push(1 + k);
        q.extend(swapped);
    }
    q
}

fn swap_xy(v: usize) -> usize {
    match v {
        0 => 1,
        1 => 0,
        v => v,
    }
}

/// Arguments of `q_n(x, y, z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QWordSpec<T> {
    pub n: usize,
    pub x: T,
    pub y: T,
    pub z: Vec<T>,
}

impl<T> QWordSpec<T> {
    fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("q_n needs n ≥ 1".into()));
        }
        if self.z.len() + 1 < self.n {
            return Err(Error::InvalidArgument(format!("q_{} needs {} z arguments", self.n, self.n - 1)));
        }
        Ok(())
    }

    fn var(&self, v: usize) -> &T {
        match v {
            0 => &self.x,
            1 => &self.y,
            v => &self.z[v - 2],
        }
    }

    /// The swapped instance `q_n(y, x, z)`.
    pub fn swapped(&self) -> Self
    where
        T: Clone,
    {
        QWordSpec {
            n: self.n,
            x: self.y.clone(),
            y: self.x.clone(),
            z: self.z.clone(),
        }
    }
}

impl QWordSpec<Element> {
    pub fn eval(&self, s: &Semigroup) -> Result<Element> {
        self.check()?;
        let vals: Vec<Element> = q_pattern(self.n).into_iter().map(|v| *self.var(v)).collect();
        if let Some(&bad) = vals.iter().find(|&&v| v >= s.order()) {
            return Err(Error::InvalidArgument(format!("element {bad} outside the semigroup")));
        }
        Ok(s.product(&vals))
    }
}

impl QWordSpec<Word> {
    pub fn eval(&self) -> Result<Word> {
        self.check()?;
        Ok(q_pattern(self.n).into_iter().flat_map(|v| self.var(v).iter().copied()).collect())
    }
}

/// How many substitutions `check_qn_identity` may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive { cap: usize },
    Sampled { samples: usize, seed: u64 },
}

impl Default for Coverage {
    fn default() -> Self {
        Coverage::Exhaustive {
            cap: DEFAULT_SUBSTITUTION_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QnWitness {
    pub x: Element,
    pub y: Element,
    pub z: Vec<Element>,
    pub left: Element,
    pub right: Element,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QnCheck {
    pub holds: bool,
    pub exhaustive: bool,
    pub checked: usize,
    pub witness: Option<QnWitness>,
}

fn substitution_count(order: usize, n: usize) -> Option<usize> {
    order.checked_pow(n as u32 + 1)
}

/// Calls `f(x, y, z)` for every substitution in `S^(n+1)` until it returns
/// `false`.
fn for_each_substitution(order: usize, n: usize, mut f: impl FnMut(Element, Element, &[Element]) -> bool) {
    let mut digits = vec![0; n + 1];
    loop {
        if !f(digits[0], digits[1], &digits[2..]) {
            return;
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return;
            }
            digits[k] += 1;
            if digits[k] < order {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Whether `S ⊨ q_n(x, y, z) ≈ q_n(y, x, z)`.
pub fn check_qn_identity(s: &Semigroup, n: usize, coverage: Coverage) -> Result<QnCheck> {
    if n == 0 {
        return Err(Error::InvalidArgument("q_n needs n ≥ 1".into()));
    }
    let pattern = q_pattern(n);
    let eval = |x: Element, y: Element, z: &[Element]| {
        let pick = |v: usize| match v {
            0 => x,
            1 => y,
            v => z[v - 2],
        };
        let left = pattern.iter().fold(None, |acc, &v| Some(acc.map_or(pick(v), |a| s.mul(a, pick(v)))));
        let right = pattern
            .iter()
            .fold(None, |acc, &v| Some(acc.map_or(pick(swap_xy(v)), |a| s.mul(a, pick(swap_xy(v))))));
        (left.unwrap(), right.unwrap())
    };
    let mut witness = None;
    let mut checked = 0;
    let mut test = |x: Element, y: Element, z: &[Element]| {
        checked += 1;
        let (left, right) = eval(x, y, z);
        if left != right {
            witness = Some(QnWitness {
                x,
                y,
                z: z.to_vec(),
                left,
                right,
            });
            return false;
        }
        true
    };
    let exhaustive = match coverage {
        Coverage::Exhaustive { cap } => {
            let total = substitution_count(s.order(), n).filter(|&t| t <= cap);
            if total.is_none() {
                return Err(Error::limit("q_n substitutions", cap));
            }
            for_each_substitution(s.order(), n, &mut test);
            true
        }
        Coverage::Sampled { samples, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut z = vec![0; n - 1];
            for _ in 0..samples {
                let x = rng.random_range(0..s.order());
                let y = rng.random_range(0..s.order());
                for v in z.iter_mut() {
                    *v = rng.random_range(0..s.order());
                }
                if !test(x, y, &z) {
                    break;
                }
            }
            false
        }
    };
    Ok(QnCheck {
        holds: witness.is_none(),
        exhaustive: exhaustive || witness.is_some(),
        checked,
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `ac = ad`
    Left,
    /// `ca = da`
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CancellationWitness {
    pub side: Side,
    pub a: Element,
    pub c: Element,
    pub d: Element,
}

/// First `(a, c, d)` with `c ≠ d` and `ac = ad` or `ca = da`.
pub fn cancellation_failure(s: &Semigroup) -> Option<CancellationWitness> {
    for a in s.elements() {
        for c in s.elements() {
            for d in c + 1..s.order() {
                if s.mul(a, c) == s.mul(a, d) {
                    return Some(CancellationWitness { side: Side::Left, a, c, d });
                }
                if s.mul(c, a) == s.mul(d, a) {
                    return Some(CancellationWitness { side: Side::Right, a, c, d });
                }
            }
        }
    }
    None
}

pub fn is_cancellative(s: &Semigroup) -> bool {
    cancellation_failure(s).is_none()
}

/// `ρ_n`, generated by all `(q_n(x, y, z), q_n(y, x, z))`.
pub fn rho_n(s: &Semigroup, n: usize, cap: usize) -> Result<Congruence> {
    Ok(cg(s, &rho_n_pairs(s, n, cap)?))
}

/// The distinct non-diagonal generating pairs of `ρ_n`.
pub fn rho_n_pairs(s: &Semigroup, n: usize, cap: usize) -> Result<Vec<(Element, Element)>> {
    if n == 0 {
        return Err(Error::InvalidArgument("q_n needs n ≥ 1".into()));
    }
    if substitution_count(s.order(), n).is_none_or(|t| t > cap) {
        return Err(Error::limit("q_n substitutions", cap));
    }
    let pattern = q_pattern(n);
    let mut pairs = FxHashSet::default();
    for_each_substitution(s.order(), n, |x, y, z| {
        let pick = |v: usize| match v {
            0 => x,
            1 => y,
            v => z[v - 2],
        };
        let left = s.product(&pattern.iter().map(|&v| pick(v)).collect::<Vec<_>>());
        let right = s.product(&pattern.iter().map(|&v| pick(swap_xy(v))).collect::<Vec<_>>());
        if left != right {
            pairs.insert((left.min(right), left.max(right)));
        }
        true
    });
    let mut pairs: Vec<_> = pairs.into_iter().collect();
    pairs.sort();
    Ok(pairs)
}

/// Embeddability of `S` into an `n`-nilpotent group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NtVerdict {
    pub n: usize,
    pub cancellative: bool,
    pub qn_identity: bool,
    /// Cancellative and satisfies the `q_n` identity.
    pub embeddable: bool,
    pub is_group: bool,
    pub group_nilpotent_class: Option<usize>,
    /// `S` is itself a group of nilpotent class at most `n`.
    pub group_of_class_at_most_n: bool,
}

pub fn nt_embeddable(s: &Semigroup, n: usize) -> Result<NtVerdict> {
    let cancellative = is_cancellative(s);
    let qn_identity = check_qn_identity(s, n, Coverage::default())?.holds;
    let series = group_series(s).ok();
    let group_nilpotent_class = series.as_ref().and_then(|g| g.nilpotent_class);
    Ok(NtVerdict {
        n,
        cancellative,
        qn_identity,
        embeddable: cancellative && qn_identity,
        is_group: series.is_some(),
        group_nilpotent_class,
        group_of_class_at_most_n: group_nilpotent_class.is_some_and(|c| c <= n),
    })
}

/// Words of one length, grouped into `ρ_n` classes.
#[derive(Debug, Clone, Serialize)]
pub struct Stratum {
    pub length: usize,
    /// Each class sorted; classes sorted by their least word.
    pub classes: Vec<Vec<Word>>,
    #[serde(skip)]
    label: Vec<u32>,
}

/// `ρ_n` on the free monoid over `σ` letters, restricted to words of length
/// at most `max_len`.
#[derive(Debug, Clone, Serialize)]
pub struct FreeRhoClasses {
    pub sigma: usize,
    pub n: usize,
    pub max_len: usize,
    pub strata: Vec<Stratum>,
}

fn encode(w: &[u8], sigma: usize) -> usize {
    w.iter().fold(0, |acc, &c| acc * sigma + c as usize)
}

fn decode(mut code: usize, len: usize, sigma: usize) -> Word {
    let mut w = vec![0u8; len];
    for slot in w.iter_mut().rev() {
        *slot = (code % sigma) as u8;
        code /= sigma;
    }
    w
}

/// Every word obtained from `w` by rewriting one factor `q_n(a, b, z)` to
/// `q_n(b, a, z)`, arguments possibly empty.
pub fn rewrite_neighbors(w: &[u8], n: usize) -> Vec<Word> {
    let pattern = q_pattern(n);
    let vars = n + 1;
    let mut out = FxHashSet::default();
    let mut binding: Vec<Option<(usize, usize)>> = vec![None; vars];

    fn go(
        w: &[u8],
        pattern: &[usize],
        k: usize,
        pos: usize,
        start: usize,
        binding: &mut Vec<Option<(usize, usize)>>,
        out: &mut FxHashSet<Word>,
    ) {
        if k == pattern.len() {
            let mut next = w[..start].to_vec();
            for &v in pattern {
                let (s, l) = binding[swap_xy(v)].unwrap();
                next.extend_from_slice(&w[s..s + l]);
            }
            next.extend_from_slice(&w[pos..]);
            if next != w {
                out.insert(next);
            }
            return;
        }
        let v = pattern[k];
        match binding[v] {
            Some((s, l)) => {
                if pos + l <= w.len() && w[s..s + l] == w[pos..pos + l] {
                    go(w, pattern, k + 1, pos + l, start, binding, out);
                }
            }
            None => {
                for l in 0..=w.len() - pos {
                    binding[v] = Some((pos, l));
                    go(w, pattern, k + 1, pos + l, start, binding, out);
                }
                binding[v] = None;
            }
        }
    }

    for start in 0..=w.len() {
        go(w, &pattern, 0, start, start, &mut binding, &mut out);
    }
    let mut out: Vec<Word> = out.into_iter().collect();
    out.sort();
    out
}

fn find(parent: &mut [u32], x: u32) -> u32 {
    let mut r = x;
    while parent[r as usize] != r {
        r = parent[r as usize];
    }
    let mut x = x;
    while parent[x as usize] != r {
        let next = parent[x as usize];
        parent[x as usize] = r;
        x = next;
    }
    r
}

fn stratum(sigma: usize, n: usize, length: usize) -> Stratum {
    let count = sigma.pow(length as u32);
    let mut parent: Vec<u32> = (0..count as u32).collect();
    for code in 0..count {
        let w = decode(code, length, sigma);
        for v in rewrite_neighbors(&w, n) {
            let (a, b) = (find(&mut parent, code as u32), find(&mut parent, encode(&v, sigma) as u32));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    // roots are least codes, and codes order words lexicographically
    let mut label = vec![u32::MAX; count];
    let mut classes: Vec<Vec<Word>> = Vec::new();
    let mut root_label: HashMap<u32, u32> = HashMap::new();
    for code in 0..count {
        let r = find(&mut parent, code as u32);
        let id = *root_label.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            (classes.len() - 1) as u32
        });
        label[code] = id;
        classes[id as usize].push(decode(code, length, sigma));
    }
    Stratum { length, classes, label }
}

#[cfg(feature = "parallel")]
fn build_strata(sigma: usize, n: usize, max_len: usize) -> Vec<Stratum> {
    use rayon::prelude::*;
    (0..=max_len).into_par_iter().map(|l| stratum(sigma, n, l)).collect()
}

#[cfg(not(feature = "parallel"))]
fn build_strata(sigma: usize, n: usize, max_len: usize) -> Vec<Stratum> {
    (0..=max_len).map(|l| stratum(sigma, n, l)).collect()
}

/// `ρ_n` classes of all words of length at most `max_len` over `σ ≤ 3`
/// letters, for `n ∈ {1, 2}`.
pub fn free_rho_classes(sigma: usize, n: usize, max_len: usize, cap: usize) -> Result<FreeRhoClasses> {
    if !(1..=3).contains(&sigma) {
        return Err(Error::InvalidArgument(format!("alphabet size {sigma} outside 1..=3")));
    }
    if !(1..=2).contains(&n) {
        return Err(Error::InvalidArgument(format!("level {n} outside 1..=2")));
    }
    let total = (0..=max_len).try_fold(0usize, |acc, l| acc.checked_add(sigma.checked_pow(l as u32)?));
    if total.is_none_or(|t| t > cap) {
        return Err(Error::limit("free monoid words", cap));
    }
    Ok(FreeRhoClasses {
        sigma,
        n,
        max_len,
        strata: build_strata(sigma, n, max_len),
    })
}

impl FreeRhoClasses {
    /// Index of `w`'s class within its stratum.
    pub fn class_id(&self, w: &[u8]) -> Option<usize> {
        if w.len() > self.max_len || w.iter().any(|&c| c as usize >= self.sigma) {
            return None;
        }
        Some(self.strata[w.len()].label[encode(w, self.sigma)] as usize)
    }

    pub fn class_of(&self, w: &[u8]) -> Option<&[Word]> {
        let id = self.class_id(w)?;
        Some(&self.strata[w.len()].classes[id])
    }

    pub fn equivalent(&self, a: &[u8], b: &[u8]) -> Option<bool> {
        if a.len() != b.len() {
            return Some(false);
        }
        Some(self.class_id(a)? == self.class_id(b)?)
    }

    /// The Lallement normal form in `w`'s class, when exactly one exists.
    pub fn normal_form(&self, w: &[u8]) -> Option<&Word> {
        let mut forms = self.class_of(w)?.iter().filter(|v| lallement_shape(v).is_some());
        let first = forms.next()?;
        forms.next().is_none().then_some(first)
    }

    pub fn class_count(&self) -> usize {
        self.strata.iter().map(|s| s.classes.len()).sum()
    }

    /// Classes whose number of Lallement words differs from one.
    pub fn lallement_violations(&self) -> Vec<(Word, usize)> {
        let mut out = Vec::new();
        for st in &self.strata {
            for class in &st.classes {
                let count = class.iter().filter(|w| lallement_shape(w).is_some()).count();
                if count != 1 {
                    out.push((class[0].clone(), count));
                }
            }
        }
        out
    }

    /// Pairs of words in one class with different letter counts or
    /// inversion statistic.
    pub fn invariant_violations(&self) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for st in &self.strata {
            for class in &st.classes {
                let key = |w: &Word| (letter_counts(w, self.sigma), inversions(w));
                let k0 = key(&class[0]);
                if let Some(w) = class.iter().find(|w| key(w) != k0) {
                    out.push((class[0].clone(), w.clone()));
                }
            }
        }
        out
    }

    /// Whether letter counts and the inversion statistic separate all classes.
    pub fn invariants_separate_classes(&self) -> bool {
        self.strata.iter().all(|st| {
            let mut keys = FxHashSet::default();
            st.classes
                .iter()
                .all(|c| keys.insert((letter_counts(&c[0], self.sigma), inversions(&c[0]))))
        })
    }

    /// `ab ≡ ac` (or `ba ≡ ca`) with `b ≢ c`, for single letters `a`.
    pub fn cancellation_failures(&self) -> Vec<CancellationFailure> {
        let mut out = Vec::new();
        for st in self.strata.iter().take(self.max_len) {
            let l = st.length;
            for a in 0..self.sigma as u8 {
                for side in [Side::Left, Side::Right] {
                    let mut seen: HashMap<usize, usize> = HashMap::new();
                    for b_code in 0..st.label.len() {
                        let b = decode(b_code, l, self.sigma);
                        let ext = match side {
                            Side::Left => [&[a][..], &b].concat(),
                            Side::Right => [&b[..], &[a]].concat(),
                        };
                        let key = self.class_id(&ext).unwrap();
                        let cls = st.label[b_code] as usize;
                        match seen.get(&key) {
                            Some(&other) if other != cls => out.push(CancellationFailure {
                                side,
                                letter: a,
                                b: st.classes[other][0].clone(),
                                c: b.clone(),
                            }),
                            Some(_) => {}
                            None => {
                                seen.insert(key, cls);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CancellationFailure {
    pub side: Side,
    pub letter: u8,
    pub b: Word,
    pub c: Word,
}

pub fn letter_counts(w: &[u8], sigma: usize) -> Vec<usize> {
    let mut c = vec![0; sigma];
    for &l in w {
        c[l as usize] += 1;
    }
    c
}

/// `#{i < j : w_i = x, w_j = y}`.
pub fn inversions(w: &[u8]) -> usize {
    let mut xs = 0;
    let mut total = 0;
    for &l in w {
        match l {
            0 => xs += 1,
            1 => total += xs,
            _ => {}
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum LallementShape {
    /// `x^α y^γ x^α'`
    Plain { alpha: usize, gamma: usize, alpha2: usize },
    /// `x^α y^β x y^β' x^α'`, `β, β' > 0`
    Split {
        alpha: usize,
        beta: usize,
        beta2: usize,
        alpha2: usize,
    },
}

/// The Lallement shape of a two-letter word, if it has one.
pub fn lallement_shape(w: &[u8]) -> Option<LallementShape> {
    if w.iter().any(|&c| c > 1) {
        return None;
    }
    let mut runs: Vec<(u8, usize)> = Vec::new();
    for &c in w {
        match runs.last_mut() {
            Some((l, k)) if *l == c => *k += 1,
            _ => runs.push((c, 1)),
        }
    }
    // pad to start and end with (possibly empty) x-runs
    if runs.first().is_none_or(|r| r.0 != 0) {
        runs.insert(0, (0, 0));
    }
    if runs.last().unwrap().0 != 0 {
        runs.push((0, 0));
    }
    match runs.as_slice() {
        [(0, a)] => Some(LallementShape::Plain {
            alpha: *a,
            gamma: 0,
            alpha2: 0,
        }),
        [(0, a), (1, g), (0, a2)] => Some(LallementShape::Plain {
            alpha: *a,
            gamma: *g,
            alpha2: *a2,
        }),
        [(0, a), (1, b), (0, 1), (1, b2), (0, a2)] => Some(LallementShape::Split {
            alpha: *a,
            beta: *b,
            beta2: *b2,
            alpha2: *a2,
        }),
        _ => None,
    }
}

pub fn is_lallement_normal(w: &[u8]) -> bool {
    lallement_shape(w).is_some()
}

/// Outcome of a bounded search for a cancellation failure of `ρ_2` over
/// three letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum CancellationSearch {
    Found { failure: CancellationFailure },
    Inconclusive { max_len: usize },
}

pub fn search_cancellation_failure(sigma: usize, max_len: usize, cap: usize) -> Result<CancellationSearch> {
    let classes = free_rho_classes(sigma, 2, max_len, cap)?;
    Ok(match classes.cancellation_failures().into_iter().next() {
        Some(failure) => CancellationSearch::Found { failure },
        None => CancellationSearch::Inconclusive { max_len },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn q_words() {
        let spec = QWordSpec {
            n: 1,
            x: w("x"),
            y: w("y"),
            z: vec![],
        };
        assert_eq!(spec.eval().unwrap(), w("xy"));
        let spec = QWordSpec {
            n: 2,
            x: w("x"),
            y: w("y"),
            z: vec![w("z")],
        };
        assert_eq!(spec.eval().unwrap(), w("xyzyx"));
        assert_eq!(spec.swapped().eval().unwrap(), w("yxzxy"));
        assert_eq!(q_pattern(3).len(), 11);
        let short = QWordSpec {
            n: 3,
            x: w("x"),
            y: w("y"),
            z: vec![w("z")],
        };
        assert!(short.eval().is_err());
    }

    #[test]
    fn q_symmetric_in_commutative() {
        let s = cyclic_group(5);
        for x in s.elements() {
            for y in s.elements() {
                for z in s.elements() {
                    let q = QWordSpec { n: 3, x, y, z: vec![z, x] };
                    assert_eq!(q.eval(&s).unwrap(), q.swapped().eval(&s).unwrap());
                }
            }
        }
    }

    /// Direct `q_n` evaluation by the recursive definition.
    fn q_rec(s: &Semigroup, n: usize, x: Element, y: Element, z: &[Element]) -> Element {
        if n == 1 {
            return s.mul(x, y);
        }
        let a = q_rec(s, n - 1, x, y, z);
        let b = q_rec(s, n - 1, y, x, z);
        s.mul(s.mul(a, z[n - 2]), b)
    }

    #[test]
    fn qn_identity_examples() {
        assert!(check_qn_identity(&cyclic_group(2), 1, Coverage::default()).unwrap().holds);
        let c = check_qn_identity(&symmetric_group3(), 2, Coverage::default()).unwrap();
        assert!(!c.holds);
        let wt = c.witness.unwrap();
        let s = symmetric_group3();
        assert_eq!(q_rec(&s, 2, wt.x, wt.y, &wt.z), wt.left);
        assert_eq!(q_rec(&s, 2, wt.y, wt.x, &wt.z), wt.right);
        assert_ne!(wt.left, wt.right);
        assert!(check_qn_identity(&semilattice2(), 1, Coverage::default()).unwrap().holds);
        // D4 has class 2
        assert!(check_qn_identity(&dihedral_group(4), 2, Coverage::default()).unwrap().holds);
        assert!(!check_qn_identity(&dihedral_group(4), 1, Coverage::default()).unwrap().holds);
        assert!(matches!(
            check_qn_identity(&dihedral_group(4), 3, Coverage::Exhaustive { cap: 100 }),
            Err(Error::ResourceLimit { .. })
        ));
        let sampled = check_qn_identity(
            &dihedral_group(4),
            2,
            Coverage::Sampled {
                samples: 50,
                seed: 7,
            },
        )
        .unwrap();
        assert!(sampled.holds && !sampled.exhaustive);
    }

    #[test]
    fn cancellation_examples() {
        for (_, g) in groups_up_to_order_8() {
            assert!(is_cancellative(&g));
        }
        assert_eq!(
            cancellation_failure(&semilattice2()),
            Some(CancellationWitness {
                side: Side::Left,
                a: 0,
                c: 0,
                d: 1
            })
        );
        assert!(!is_cancellative(&null_semigroup(2)));
    }

    #[test]
    fn rho_examples() {
        assert!(rho_n(&semilattice2(), 1, DEFAULT_SUBSTITUTION_CAP).unwrap().is_identity());
        let r = rho_n(&symmetric_group3(), 1, DEFAULT_SUBSTITUTION_CAP).unwrap();
        assert_eq!(r.partition().to_string(), "[[0,1,2],[3,4,5]]");
        assert!(rho_n(&cyclic_group(2), 2, DEFAULT_SUBSTITUTION_CAP).unwrap().is_identity());
    }

    #[test]
    fn nt_examples() {
        let v = nt_embeddable(&cyclic_group(4), 1).unwrap();
        assert!(v.embeddable && v.group_of_class_at_most_n);
        for n in 1..=2 {
            let v = nt_embeddable(&symmetric_group3(), n).unwrap();
            assert!(!v.embeddable && !v.group_of_class_at_most_n);
            assert!(!nt_embeddable(&semilattice2(), n).unwrap().embeddable);
        }
        let v = nt_embeddable(&quaternion_group(), 2).unwrap();
        assert!(v.embeddable && v.group_of_class_at_most_n);
    }

    #[test]
    fn lallement_shapes() {
        assert_eq!(
            lallement_shape(&w("xxyxx")),
            Some(LallementShape::Plain {
                alpha: 2,
                gamma: 1,
                alpha2: 2
            })
        );
        assert_eq!(
            lallement_shape(&w("yxy")),
            Some(LallementShape::Split {
                alpha: 0,
                beta: 1,
                beta2: 1,
                alpha2: 0
            })
        );
        assert!(is_lallement_normal(&w("")));
        assert!(is_lallement_normal(&w("yy")));
        assert!(is_lallement_normal(&w("xyxyx")));
        assert!(!is_lallement_normal(&w("yxxy")));
        assert!(!is_lallement_normal(&w("yxyxy")));
    }

    #[test]
    fn free_rho1_is_commutative_closure() {
        let c = free_rho_classes(3, 1, 5, DEFAULT_WORD_CAP).unwrap();
        for st in &c.strata {
            for class in &st.classes {
                let counts = letter_counts(&class[0], 3);
                assert!(class.iter().all(|v| letter_counts(v, 3) == counts));
            }
            // classes are exactly the letter multisets
            let multisets = (st.length + 1) * (st.length + 2) / 2;
            assert_eq!(st.classes.len(), multisets);
        }
    }

    #[test]
    fn free_rho2_examples() {
        let c = free_rho_classes(2, 2, 8, DEFAULT_WORD_CAP).unwrap();
        assert_eq!(c.strata[0].classes, vec![vec![Word::new()]]);
        let same = c.equivalent(&w("xyxy"), &w("xxyy")).unwrap();
        assert_eq!(same, c.normal_form(&w("xyxy")) == c.normal_form(&w("xxyy")));
        let nf = c.normal_form(&w("xyxyx")).unwrap();
        assert_eq!(letter_counts(nf, 2), vec![3, 2]);
        assert_eq!(inversions(nf), inversions(&w("xyxyx")));
        assert!(c.lallement_violations().is_empty());
        assert!(c.invariant_violations().is_empty());
        assert!(c.cancellation_failures().is_empty());
        // rewriting never leaves its length stratum
        assert!(rewrite_neighbors(&w("xyxyyx"), 2).iter().all(|v| v.len() == 6));
    }

    #[test]
    fn neighbor_example() {
        // xy·z·yx ↔ yx·z·xy with z = y
        assert!(rewrite_neighbors(&w("xyyyx"), 2).contains(&w("yxyxy")));
        // empty z: xyyx ↔ yxxy
        assert!(rewrite_neighbors(&w("xyyx"), 2).contains(&w("yxxy")));
        assert_eq!(rewrite_neighbors(&w("xy"), 1), vec![w("yx")]);
    }

    #[test]
    fn free_limits() {
        assert!(free_rho_classes(4, 2, 3, DEFAULT_WORD_CAP).is_err());
        assert!(matches!(
            free_rho_classes(3, 2, 20, DEFAULT_WORD_CAP),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
