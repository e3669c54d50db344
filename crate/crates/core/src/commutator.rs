//! Term-condition commutators.
//!
//! `M(α₁,…,αₙ)` is generated inside `S^(2^(n-1) × 2)`. A matrix is flattened
//! row-major, so row `r` occupies positions `2r` and `2r+1`. For the generator
//! built from `(a, b) ∈ αᵢ`, the entry at position `p = 2r + c` is `a` or `b`
//! depending on one bit of `p`: the column bit `c` for the last argument, and
//! row bit `n-2-i` for argument `i < n-1` (so the first argument splits the
//! rows into a top and a bottom half).
//!
//! Tuples are packed into a `u128` with 1, 2, 4 or 8 bits per coordinate and
//! multiplied one byte at a time through a 64K lookup table.

use std::collections::HashMap;
use std::fmt;

use rustc_hash::FxHashSet;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::congruence::{cg_from, meet, Congruence};
use crate::error::{Error, Result};
use crate::semigroup::{Element, Semigroup};

pub const DEFAULT_ARITY_CAP: usize = 4;
pub const DEFAULT_TUPLE_CAP: usize = 10_000_000;

/// Caps for the exponential closure computations. Exceeding one is an error,
/// never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub arity_cap: usize,
    pub tuple_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            arity_cap: DEFAULT_ARITY_CAP,
            tuple_cap: DEFAULT_TUPLE_CAP,
        }
    }
}

/// Bits per packed coordinate for a semigroup of the given order.
fn lane_bits(order: usize) -> Result<u32> {
    match order {
        0..=2 => Ok(1),
        3..=4 => Ok(2),
        5..=16 => Ok(4),
        17..=256 => Ok(8),
        _ => Err(Error::limit("semigroup order for packed tuples", 256)),
    }
}

/// Packed layout plus the bytewise multiplication table.
#[derive(Clone)]
struct Packing {
    bits: u32,
    len: usize,
    nbytes: usize,
    lane_mask: u128,
    byte_mul: Vec<u8>,
}

impl Packing {
    fn new(s: &Semigroup, len: usize) -> Result<Self> {
        let bits = lane_bits(s.order())?;
        if bits as usize * len > 128 {
            return Err(Error::limit(
                format!("packed tuple width: {len} coordinates of {bits} bits"),
                128,
            ));
        }
        let lanes = 8 / bits;
        let m = (1usize << bits) - 1;
        let n = s.order();
        let mut byte_mul = vec![0u8; 1 << 16];
        for x in 0..256usize {
            for y in 0..256usize {
                let mut out = 0usize;
                for lane in 0..lanes {
                    let sh = lane * bits;
                    let (a, b) = ((x >> sh) & m, (y >> sh) & m);
                    if a < n && b < n {
                        out |= s.mul(a, b) << sh;
                    }
                }
                byte_mul[(x << 8) | y] = out as u8;
            }
        }
        Ok(Packing {
            bits,
            len,
            nbytes: (bits as usize * len).div_ceil(8),
            lane_mask: (1u128 << bits) - 1,
            byte_mul,
        })
    }

    #[inline]
    fn mul(&self, p: u128, q: u128) -> u128 {
        let a = p.to_le_bytes();
        let b = q.to_le_bytes();
        let mut out = [0u8; 16];
        for k in 0..self.nbytes {
            out[k] = self.byte_mul[((a[k] as usize) << 8) | b[k] as usize];
        }
        u128::from_le_bytes(out)
    }

    #[inline]
    fn get(&self, t: u128, pos: usize) -> usize {
        ((t >> (pos as u32 * self.bits)) & self.lane_mask) as usize
    }

    fn pack(&self, coords: &[Element]) -> u128 {
        coords
            .iter()
            .enumerate()
            .fold(0u128, |acc, (p, &x)| acc | ((x as u128) << (p as u32 * self.bits)))
    }

    fn unpack(&self, t: u128) -> Vec<Element> {
        (0..self.len).map(|p| self.get(t, p)).collect()
    }
}

/// The subalgebra `M(α₁,…,αₙ)` as a deduplicated set of packed tuples.
#[derive(Clone)]
pub struct TupleAlgebra {
    arity: usize,
    packing: Packing,
    tuples: Vec<u128>,
}

impl fmt::Debug for TupleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TupleAlgebra")
            .field("arity", &self.arity)
            .field("tuple_len", &self.tuple_len())
            .field("tuples", &self.tuples.len())
            .finish()
    }
}

impl TupleAlgebra {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `2^arity`.
    pub fn tuple_len(&self) -> usize {
        self.packing.len
    }

    pub fn rows(&self) -> usize {
        self.packing.len / 2
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[Element]) -> bool {
        tuple.len() == self.tuple_len()
            && self.tuples.binary_search(&self.packing.pack(tuple)).is_ok()
    }

    /// Unpacked tuples in ascending packed order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<Element>> + '_ {
        self.tuples.iter().map(|&t| self.packing.unpack(t))
    }

    /// Pairs `(first, second)` of row `r` of every tuple, as matrices.
    pub fn matrices(&self) -> impl Iterator<Item = Vec<[Element; 2]>> + '_ {
        self.iter().map(to_rows)
    }

    /// Final-row pairs forced by the term condition relative to `delta`:
    /// every tuple whose other rows are all `delta`-related contributes its
    /// final row if that row is not.
    pub fn forced_pairs(&self, delta: &Congruence) -> Vec<(Element, Element)> {
        let repr = delta.repr();
        let n = repr.len();
        let rows = self.rows();
        let mut seen = vec![false; n * n];
        let mut out = Vec::new();
        for &t in &self.tuples {
            if let Some((x, y)) = self.violation(t, repr, rows) {
                let (lo, hi) = (x.min(y), x.max(y));
                if !seen[lo * n + hi] {
                    seen[lo * n + hi] = true;
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    #[inline]
    fn violation(&self, t: u128, repr: &[Element], rows: usize) -> Option<(Element, Element)> {
        for r in 0..rows - 1 {
            if repr[self.packing.get(t, 2 * r)] != repr[self.packing.get(t, 2 * r + 1)] {
                return None;
            }
        }
        let (x, y) = (
            self.packing.get(t, 2 * rows - 2),
            self.packing.get(t, 2 * rows - 1),
        );
        (repr[x] != repr[y]).then_some((x, y))
    }

    /// A matrix violating the term condition for `delta`, if any.
    pub fn witness(&self, delta: &Congruence) -> Option<Vec<[Element; 2]>> {
        let rows = self.rows();
        self.tuples
            .iter()
            .find(|&&t| self.violation(t, delta.repr(), rows).is_some())
            .map(|&t| to_rows(self.packing.unpack(t)))
    }
}

fn to_rows(t: Vec<Element>) -> Vec<[Element; 2]> {
    t.chunks(2).map(|c| [c[0], c[1]]).collect()
}

/// Which of `a`/`b` sits at flattened position `p` for argument `i` of `n`.
#[inline]
fn selects_second(i: usize, n: usize, p: usize) -> bool {
    if i == n - 1 {
        p & 1 == 1
    } else {
        ((p >> 1) >> (n - 2 - i)) & 1 == 1
    }
}

fn check_args(s: &Semigroup, args: &[Congruence], limits: &Limits) -> Result<()> {
    if args.is_empty() {
        return Err(Error::InvalidArgument("at least one congruence is required".into()));
    }
    if args.len() > limits.arity_cap {
        return Err(Error::limit(
            format!("commutator arity {}", args.len()),
            limits.arity_cap,
        ));
    }
    for (k, a) in args.iter().enumerate() {
        if !a.is_congruence_of(s) {
            return Err(Error::InvalidArgument(format!(
                "argument {k} is not a congruence of the semigroup"
            )));
        }
    }
    Ok(())
}

/// Generates `M(α₁,…,αₙ)` by closing the generator set under componentwise
/// multiplication.
pub fn generate_m(s: &Semigroup, args: &[Congruence], limits: &Limits) -> Result<TupleAlgebra> {
    check_args(s, args, limits)?;
    let n = args.len();
    let len = 1usize << n;
    let packing = Packing::new(s, len)?;

    let mut candidates: Vec<u128> = Vec::new();
    let mut coords = vec![0; len];
    for (i, alpha) in args.iter().enumerate() {
        for (a, b) in alpha.pairs() {
            for (p, c) in coords.iter_mut().enumerate() {
                *c = if selects_second(i, n, p) { b } else { a };
            }
            candidates.push(packing.pack(&coords));
        }
    }

    // Incremental closure: a candidate already in the closure of the earlier
    // ones is skipped. Otherwise it is added together with `x·g` for every
    // known `x`, and new elements are closed under right multiplication by
    // the generators kept so far.
    let mut gens: Vec<u128> = Vec::new();
    let mut set: FxHashSet<u128> = FxHashSet::default();
    let mut list: Vec<u128> = Vec::new();
    for g in candidates {
        if set.contains(&g) {
            continue;
        }
        gens.push(g);
        let old = list.len();
        let mut fresh = list.len();
        let mut add = |t: u128, list: &mut Vec<u128>| -> Result<()> {
            if set.insert(t) {
                list.push(t);
                if list.len() > limits.tuple_cap {
                    return Err(Error::limit("generated tuples", limits.tuple_cap));
                }
            }
            Ok(())
        };
        add(g, &mut list)?;
        for k in 0..old {
            add(packing.mul(list[k], g), &mut list)?;
        }
        while fresh < list.len() {
            let t = list[fresh];
            fresh += 1;
            for &h in &gens {
                add(packing.mul(t, h), &mut list)?;
            }
        }
    }
    drop(set);
    list.sort_unstable();
    Ok(TupleAlgebra {
        arity: n,
        packing,
        tuples: list,
    })
}

/// Least congruence for which every member of `m` satisfies the term
/// condition. Ascending fixpoint from `0`: each round adds the final-row
/// pairs forced by the current relation and closes with `cg`.
pub fn commutator_of(s: &Semigroup, m: &TupleAlgebra) -> Congruence {
    let mut delta = Congruence::identity(s.order());
    loop {
        let forced = m.forced_pairs(&delta);
        if forced.is_empty() {
            return delta;
        }
        delta = cg_from(s, &delta, &forced);
    }
}

/// `[α₁,…,αₙ]`.
pub fn tc_commutator(s: &Semigroup, args: &[Congruence], limits: &Limits) -> Result<Congruence> {
    let m = generate_m(s, args, limits)?;
    Ok(commutator_of(s, &m))
}

/// Memoizes commutators of one semigroup by argument list.
pub struct Commutators<'a> {
    s: &'a Semigroup,
    limits: Limits,
    cache: HashMap<Vec<Congruence>, Congruence>,
}

impl<'a> Commutators<'a> {
    pub fn new(s: &'a Semigroup, limits: Limits) -> Self {
        Commutators {
            s,
            limits,
            cache: HashMap::new(),
        }
    }

    pub fn semigroup(&self) -> &Semigroup {
        self.s
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn get(&mut self, args: &[Congruence]) -> Result<Congruence> {
        if let Some(c) = self.cache.get(args) {
            return Ok(c.clone());
        }
        let c = tc_commutator(self.s, args, &self.limits)?;
        self.cache.insert(args.to_vec(), c.clone());
        Ok(c)
    }

    /// `[1,…,1]` with `arity` arguments.
    pub fn total_power(&mut self, arity: usize) -> Result<Congruence> {
        let one = Congruence::total(self.s.order());
        self.get(&vec![one; arity])
    }

    pub fn series(&mut self, kind: SeriesKind) -> Result<Vec<Congruence>> {
        let one = Congruence::total(self.s.order());
        let mut chain = vec![one.clone()];
        loop {
            let prev = chain.last().unwrap().clone();
            let next = match kind {
                SeriesKind::Derived => self.get(&[prev.clone(), prev.clone()])?,
                SeriesKind::Left => self.get(&[one.clone(), prev.clone()])?,
                SeriesKind::Right => self.get(&[prev.clone(), one.clone()])?,
            };
            if next == prev {
                return Ok(chain);
            }
            chain.push(next);
        }
    }

    /// Term `k` of a series (`k = 0` is `1`), following the chain past
    /// stabilization.
    pub fn series_term(&mut self, kind: SeriesKind, k: usize) -> Result<Congruence> {
        let chain = self.series(kind)?;
        Ok(chain[k.min(chain.len() - 1)].clone())
    }
}

/// Which central or derived series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `[α]^{d+1} = [[α]^d, [α]^d]`
    Derived,
    /// `(1]^{d+1} = [1, (1]^d]`
    Left,
    /// `[1)^{d+1} = [[1)^d, 1]`
    Right,
}

impl std::str::FromStr for SeriesKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "derived" => Ok(SeriesKind::Derived),
            "left" => Ok(SeriesKind::Left),
            "right" => Ok(SeriesKind::Right),
            other => Err(Error::InvalidArgument(format!("unknown series kind {other:?}"))),
        }
    }
}

/// The chain starting at `1`, stopping at the first repeated term (which is
/// not repeated in the output).
pub fn series(s: &Semigroup, kind: SeriesKind, limits: &Limits) -> Result<Vec<Congruence>> {
    Commutators::new(s, *limits).series(kind)
}

/// `[1,1], [1,1,1], …` up to `max_arity` arguments, stopping early at `0`.
pub fn supernilpotent_chain(s: &Semigroup, max_arity: usize, limits: &Limits) -> Result<Vec<Congruence>> {
    if max_arity < 2 {
        return Err(Error::InvalidArgument("max_arity must be at least 2".into()));
    }
    let mut c = Commutators::new(s, *limits);
    let mut out = Vec::new();
    for k in 2..=max_arity {
        let term = c.total_power(k)?;
        let done = term.is_identity();
        out.push(term);
        if done {
            break;
        }
    }
    Ok(out)
}

/// Class of a chain ending at `0`, else `None`.
pub fn chain_class(chain: &[Congruence]) -> Option<usize> {
    chain.last().filter(|c| c.is_identity()).map(|_| chain.len() - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Definitional,
    Structural,
}

/// A solvability or nilpotence class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    /// Computed from the definition.
    Exact(usize),
    /// Property holds with class in `lower..=upper`.
    Within { lower: usize, upper: usize },
    /// Property fails (`⊥`).
    Never,
    /// Not decided: no vanishing term up to this arity.
    Unknown { checked_arity: usize },
}

impl Class {
    /// `Some(true)` if the property holds, `Some(false)` if it fails.
    pub fn holds(&self) -> Option<bool> {
        match self {
            Class::Exact(_) | Class::Within { .. } => Some(true),
            Class::Never => Some(false),
            Class::Unknown { .. } => None,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            Class::Exact(d) => Some(*d),
            _ => None,
        }
    }

    pub fn verdict_str(&self) -> &'static str {
        match self.holds() {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        }
    }
}

impl Serialize for Class {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Class::Exact(d) => serializer.serialize_u64(*d as u64),
            Class::Never => serializer.serialize_none(),
            Class::Within { lower, upper } => {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("lower", lower)?;
                m.serialize_entry("upper", upper)?;
                m.end()
            }
            Class::Unknown { checked_arity } => {
                let mut m = serializer.serialize_map(Some(1))?;
                m.serialize_entry("unknown_beyond_arity", checked_arity)?;
                m.end()
            }
        }
    }
}

/// A matrix of `M(…)` whose rows witness a term-condition failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub commutator: String,
    pub matrix: Vec<[Element; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub method: Method,
    pub order: usize,
    pub solvable: Option<bool>,
    pub solvable_class: Class,
    pub left_nilpotent: Option<bool>,
    pub left_nilpotent_class: Class,
    pub right_nilpotent: Option<bool>,
    pub right_nilpotent_class: Class,
    pub supernilpotent: &'static str,
    pub supernilpotent_class: Class,
    pub abelian: Option<bool>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl ClassReport {
    pub(crate) fn new(
        method: Method,
        order: usize,
        solvable: Class,
        left: Class,
        right: Class,
        supernilpotent: Class,
        abelian: Option<bool>,
    ) -> Self {
        ClassReport {
            method,
            order,
            solvable: solvable.holds(),
            solvable_class: solvable,
            left_nilpotent: left.holds(),
            left_nilpotent_class: left,
            right_nilpotent: right.holds(),
            right_nilpotent_class: right,
            supernilpotent: supernilpotent.verdict_str(),
            supernilpotent_class: supernilpotent,
            abelian,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }
}

/// Classification straight from the definitions.
///
/// Derived and one-sided central series are run to stabilization; a chain
/// that stabilizes above `0` means the property fails. The chain
/// `[1,1] ≥ [1,1,1] ≥ …` is run up to `limits.arity_cap` arguments. It is
/// reported as failing only when a term is total (then `[1,1]` is total and
/// the left series is stuck at `1`); otherwise an undecided chain is
/// `Unknown`, also when the tuple cap is hit at some arity.
pub fn classify_definitional(s: &Semigroup, limits: &Limits) -> Result<ClassReport> {
    let mut c = Commutators::new(s, *limits);
    let class_of = |chain: &[Congruence]| match chain_class(chain) {
        Some(d) => Class::Exact(d),
        None => Class::Never,
    };
    let solvable = class_of(&c.series(SeriesKind::Derived)?);
    let left = class_of(&c.series(SeriesKind::Left)?);
    let right = class_of(&c.series(SeriesKind::Right)?);

    let mut notes = Vec::new();
    let mut witnesses = Vec::new();
    let one = Congruence::total(s.order());
    let zero = Congruence::identity(s.order());

    let supernilpotent = if s.order() == 1 {
        Class::Exact(0)
    } else {
        let mut verdict = Class::Unknown {
            checked_arity: limits.arity_cap.max(1),
        };
        let mut last_nonzero: Option<usize> = None;
        for k in 2..=limits.arity_cap.max(1) {
            match c.total_power(k) {
                Ok(term) if term.is_identity() => {
                    verdict = Class::Exact(k - 1);
                    break;
                }
                Ok(term) if term.is_total() => {
                    last_nonzero = Some(k);
                    verdict = Class::Never;
                    break;
                }
                Ok(_) => last_nonzero = Some(k),
                Err(Error::ResourceLimit { what, limit }) => {
                    notes.push(format!(
                        "arity {k} supernilpotence check stopped: {what} exceeded {limit}"
                    ));
                    verdict = Class::Unknown { checked_arity: k - 1 };
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if let Some(k) = last_nonzero {
            let m = generate_m(s, &vec![one.clone(); k], limits)?;
            if let Some(w) = m.witness(&zero) {
                witnesses.push(Witness {
                    commutator: format!("[{}]", vec!["1"; k].join(",")),
                    matrix: w,
                });
            }
        }
        verdict
    };

    if s.order() > 1 && !c.get(&[one.clone(), one.clone()])?.is_identity() {
        let m = generate_m(s, &[one.clone(), one.clone()], limits)?;
        if let Some(w) = m.witness(&zero) {
            witnesses.insert(
                0,
                Witness {
                    commutator: "[1,1]".into(),
                    matrix: w,
                },
            );
        }
    }
    witnesses.dedup();

    let abelian = Some(matches!(solvable, Class::Exact(d) if d <= 1));
    let mut report = ClassReport::new(Method::Definitional, s.order(), solvable, left, right, supernilpotent, abelian);
    report.witnesses = witnesses;
    report.notes = notes;
    Ok(report)
}

/// `[α₁,…,αₙ] ≤ α₁ ∧ … ∧ αₙ`, checked directly.
pub fn below_meet(commutator: &Congruence, args: &[Congruence]) -> bool {
    let m = args[1..].iter().fold(args[0].clone(), |acc, a| meet(&acc, a));
    commutator.leq(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{all_congruences, cg};
    use crate::fixtures::*;
    use crate::semigroup::direct_product;

    fn lim() -> Limits {
        Limits::default()
    }

    fn ones(s: &Semigroup, k: usize) -> Vec<Congruence> {
        vec![Congruence::total(s.order()); k]
    }

    /// Independent closure: plain `Vec<usize>` tuples, both-sided products.
    fn naive_m(s: &Semigroup, args: &[Congruence]) -> std::collections::BTreeSet<Vec<usize>> {
        let n = args.len();
        let len = 1 << n;
        let mut gens = Vec::new();
        for (i, a) in args.iter().enumerate() {
            for (x, y) in a.pairs() {
                let t: Vec<usize> = (0..len)
                    .map(|p| {
                        let bit = if i == n - 1 { p % 2 } else { (p / 2 >> (n - 2 - i)) % 2 };
                        if bit == 1 { y } else { x }
                    })
                    .collect();
                gens.push(t);
            }
        }
        let mut set: std::collections::BTreeSet<Vec<usize>> = gens.iter().cloned().collect();
        loop {
            let cur: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &cur {
                for b in &cur {
                    set.insert(a.iter().zip(b).map(|(&x, &y)| s.mul(x, y)).collect());
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    /// Brute-force least δ among all congruences satisfying the term condition.
    fn brute_commutator(s: &Semigroup, args: &[Congruence]) -> Congruence {
        let m = naive_m(s, args);
        let rows = 1 << (args.len() - 1);
        let ok = |d: &Congruence| {
            m.iter().all(|t| {
                let pre = (0..rows - 1).all(|r| d.related(t[2 * r], t[2 * r + 1]));
                !pre || d.related(t[2 * rows - 2], t[2 * rows - 1])
            })
        };
        let good: Vec<_> = all_congruences(s).into_iter().filter(ok).collect();
        good.iter().find(|c| good.iter().all(|d| c.leq(d))).unwrap().clone()
    }

    #[test]
    fn unary_m_is_the_relation() {
        let z4 = cyclic_group(4);
        let theta = cg(&z4, &[(0, 2)]);
        let m = generate_m(&z4, &[theta.clone()], &lim()).unwrap();
        let got: Vec<_> = m.iter().map(|t| (t[0], t[1])).collect();
        assert_eq!(got.len(), theta.pairs().len());
        for p in theta.pairs() {
            assert!(got.contains(&p));
        }
        assert_eq!(tc_commutator(&z4, &[theta.clone()], &lim()).unwrap(), theta);
    }

    #[test]
    fn left_zero_m11_is_only_generator_patterns() {
        let s = left_zero(3);
        let m = generate_m(&s, &ones(&s, 2), &lim()).unwrap();
        for t in m.iter() {
            let row_pattern = t[0] == t[1] && t[2] == t[3];
            let col_pattern = t[0] == t[2] && t[1] == t[3];
            assert!(row_pattern || col_pattern, "{t:?}");
        }
    }

    #[test]
    fn semilattice_m11_contains_displayed_product() {
        let s = semilattice2();
        let m = generate_m(&s, &ones(&s, 2), &lim()).unwrap();
        assert!(m.contains(&[0, 0, 0, 1]));
        let m3 = generate_m(&s, &ones(&s, 3), &lim()).unwrap();
        assert!(m3.contains(&[0, 0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn generate_m_matches_naive_closure() {
        for s in [semilattice2(), cyclic_group(3), null_semigroup(3), adjoin_identity(&left_zero(2))] {
            let all = all_congruences(&s);
            for a in &all {
                for b in &all {
                    let m = generate_m(&s, &[a.clone(), b.clone()], &lim()).unwrap();
                    let naive = naive_m(&s, &[a.clone(), b.clone()]);
                    let got: std::collections::BTreeSet<_> = m.iter().collect();
                    assert_eq!(got, naive);
                }
            }
            let m = generate_m(&s, &ones(&s, 3), &lim()).unwrap();
            let got: std::collections::BTreeSet<_> = m.iter().collect();
            assert_eq!(got, naive_m(&s, &ones(&s, 3)));
        }
    }

    #[test]
    fn commutator_examples() {
        let sl2 = semilattice2();
        assert!(tc_commutator(&sl2, &ones(&sl2, 2), &lim()).unwrap().is_total());
        for s in [left_zero(2), right_zero(3), rectangular_band(2, 3)] {
            assert!(tc_commutator(&s, &ones(&s, 2), &lim()).unwrap().is_identity());
        }
        let null2 = null_semigroup(2);
        assert!(tc_commutator(&null2, &ones(&null2, 2), &lim()).unwrap().is_identity());
    }

    #[test]
    fn fixpoint_is_least_on_small_semigroups() {
        for s in [semilattice2(), cyclic_group(3), null_semigroup(3), adjoin_identity(&left_zero(2)), adjoin_zero(&cyclic_group(2))] {
            let all = all_congruences(&s);
            for a in &all {
                for b in &all {
                    let args = [a.clone(), b.clone()];
                    assert_eq!(tc_commutator(&s, &args, &lim()).unwrap(), brute_commutator(&s, &args));
                }
            }
        }
    }

    #[test]
    fn series_examples() {
        let sl2 = semilattice2();
        for kind in [SeriesKind::Derived, SeriesKind::Left, SeriesKind::Right] {
            let chain = series(&sl2, kind, &lim()).unwrap();
            assert_eq!(chain.len(), 1);
            assert_eq!(chain_class(&chain), None);
            let z2 = series(&cyclic_group(2), kind, &lim()).unwrap();
            assert_eq!(z2.len(), 2);
            assert_eq!(chain_class(&z2), Some(1));
        }
        let s3 = symmetric_group3();
        let d = series(&s3, SeriesKind::Derived, &lim()).unwrap();
        assert_eq!(d.len(), 3);
        // A3 = rotations = {0,1,2}
        assert_eq!(d[1].partition().to_string(), "[[0,1,2],[3,4,5]]");
        assert!(d[2].is_identity());
        let l = series(&s3, SeriesKind::Left, &lim()).unwrap();
        assert_eq!(chain_class(&l), None);
        assert_eq!(l.last().unwrap(), &d[1]);
    }

    #[test]
    fn supernilpotent_chain_examples() {
        let sl2 = semilattice2();
        let chain = supernilpotent_chain(&sl2, 3, &lim()).unwrap();
        assert!(chain.iter().all(Congruence::is_total));
        let rb = rectangular_band(2, 2);
        let chain = supernilpotent_chain(&rb, 3, &lim()).unwrap();
        assert_eq!(chain.len(), 1);
        assert!(chain[0].is_identity());
        let null3 = null_semigroup(3);
        assert!(supernilpotent_chain(&null3, 4, &lim()).unwrap()[0].is_identity());
        assert!(supernilpotent_chain(&null3, 1, &lim()).is_err());
    }

    #[test]
    fn classify_examples() {
        let r = classify_definitional(&semilattice2(), &lim()).unwrap();
        assert_eq!(r.solvable_class, Class::Never);
        assert_eq!(r.left_nilpotent_class, Class::Never);
        assert_eq!(r.right_nilpotent_class, Class::Never);
        assert_eq!(r.supernilpotent, "no");
        assert_eq!(r.abelian, Some(false));
        assert_eq!(r.witnesses[0].commutator, "[1,1]");
        let w = &r.witnesses[0].matrix;
        assert_eq!(w[0][0], w[0][1]);
        assert_ne!(w[1][0], w[1][1]);

        let r = classify_definitional(&rectangular_band(2, 2), &lim()).unwrap();
        for c in [r.solvable_class, r.left_nilpotent_class, r.right_nilpotent_class, r.supernilpotent_class] {
            assert_eq!(c, Class::Exact(1));
        }
        assert_eq!(r.abelian, Some(true));
        assert!(r.witnesses.is_empty());

        let prod = direct_product(&cyclic_group(2), &left_zero(2), 64).unwrap();
        assert_eq!(classify_definitional(&prod, &lim()).unwrap().abelian, Some(true));

        let trivial = cyclic_group(1);
        let r = classify_definitional(&trivial, &lim()).unwrap();
        assert_eq!(r.solvable_class, Class::Exact(0));
        assert_eq!(r.supernilpotent_class, Class::Exact(0));
    }

    #[test]
    fn caps_are_errors() {
        let s = cyclic_group(3);
        let tight = Limits { arity_cap: 4, tuple_cap: 5 };
        assert!(matches!(
            tc_commutator(&s, &ones(&s, 2), &tight),
            Err(Error::ResourceLimit { .. })
        ));
        let narrow = Limits { arity_cap: 2, tuple_cap: 1000 };
        assert!(matches!(
            tc_commutator(&s, &ones(&s, 3), &narrow),
            Err(Error::ResourceLimit { .. })
        ));
        // Unknown, not an error, when the supernilpotence chain runs out of room
        let r = classify_definitional(&symmetric_group3(), &Limits { arity_cap: 3, tuple_cap: DEFAULT_TUPLE_CAP }).unwrap();
        assert_eq!(r.supernilpotent_class, Class::Unknown { checked_arity: 3 });
    }

    #[test]
    fn report_serializes_bottom_as_null() {
        let r = classify_definitional(&semilattice2(), &lim()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert!(v["solvable_class"].is_null());
        assert_eq!(v["supernilpotent"], "no");
        assert_eq!(v["method"], "definitional");
    }
}
