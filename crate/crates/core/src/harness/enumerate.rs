//! Enumeration of small semigroups up to isomorphism.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

/// Largest order the enumerator accepts.
pub const MAX_ENUMERATION_ORDER: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dedup {
    /// Every labelled table.
    None,
    Iso,
    /// Isomorphism or anti-isomorphism.
    IsoAnti,
}

impl FromStr for Dedup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Dedup::None),
            "iso" => Ok(Dedup::Iso),
            "iso+anti" | "iso-anti" => Ok(Dedup::IsoAnti),
            _ => Err(Error::InvalidArgument(format!("unknown dedup mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    All,
    Monoid,
    WithZero,
}

impl FromStr for Filter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "all" => Ok(Filter::All),
            "monoid" => Ok(Filter::Monoid),
            "zero" | "with-zero" => Ok(Filter::WithZero),
            _ => Err(Error::InvalidArgument(format!("unknown filter {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationJob {
    pub order: usize,
    pub dedup: Dedup,
    pub filter: Filter,
}

impl EnumerationJob {
    pub fn new(order: usize) -> Self {
        EnumerationJob {
            order,
            dedup: Dedup::Iso,
            filter: Filter::All,
        }
    }
}

const UNSET: u8 = u8::MAX;

struct Search {
    n: usize,
    table: Vec<u8>,
    found: Vec<Vec<u8>>,
}

impl Search {
    fn get(&self, a: usize, b: usize) -> Option<usize> {
        let v = self.table[a * self.n + b];
        (v != UNSET).then_some(v as usize)
    }

    /// No fully defined triple violates associativity.
    fn consistent(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = self.get(x, y) else { continue };
                for z in 0..n {
                    let (Some(l), Some(yz)) = (self.get(xy, z), self.get(y, z)) else { continue };
                    if let Some(r) = self.get(x, yz) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, cell: usize) {
        if cell == self.table.len() {
            self.found.push(self.table.clone());
            return;
        }
        for v in 0..self.n {
            self.table[cell] = v as u8;
            if self.consistent() {
                self.run(cell + 1);
            }
        }
        self.table[cell] = UNSET;
    }
}

/// Every associative table on `0..n`.
pub fn labelled_tables(n: usize) -> Vec<Vec<u8>> {
    let mut search = Search {
        n,
        table: vec![UNSET; n * n],
        found: Vec::new(),
    };
    search.run(0);
    search.found
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn transpose(t: &[u8], n: usize) -> Vec<u8> {
    (0..n * n).map(|k| t[(k % n) * n + k / n]).collect()
}

/// Lexicographically least relabelling of `t`.
pub(crate) fn canonical(t: &[u8], n: usize, perms: &[Vec<usize>], anti: bool) -> Vec<u8> {
    let mut best = t.to_vec();
    let mut candidate = vec![0u8; n * n];
    let sources: Vec<Vec<u8>> = if anti { vec![t.to_vec(), transpose(t, n)] } else { vec![t.to_vec()] };
    for src in &sources {
        for p in perms {
            // candidate[p a][p b] = p[src[a][b]]
            for a in 0..n {
                for b in 0..n {
                    candidate[p[a] * n + p[b]] = p[src[a * n + b] as usize] as u8;
                }
            }
            if candidate < best {
                best.copy_from_slice(&candidate);
            }
        }
    }
    best
}

fn keep(t: &[u8], n: usize, filter: Filter) -> bool {
    let has = |pred: &dyn Fn(usize) -> bool| (0..n).any(pred);
    match filter {
        Filter::All => true,
        Filter::Monoid => has(&|e| (0..n).all(|x| t[e * n + x] as usize == x && t[x * n + e] as usize == x)),
        Filter::WithZero => has(&|z| (0..n).all(|x| t[z * n + x] as usize == z && t[x * n + z] as usize == z)),
    }
}

/// Semigroups of the given order, one per class, sorted by canonical table.
pub fn enumerate(job: EnumerationJob) -> Result<Vec<Semigroup>> {
    let n = job.order;
    if n == 0 {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::limit("enumeration order", MAX_ENUMERATION_ORDER));
    }
    let tables = labelled_tables(n).into_iter().filter(|t| keep(t, n, job.filter));
    let chosen: Vec<Vec<u8>> = match job.dedup {
        Dedup::None => tables.collect(),
        Dedup::Iso | Dedup::IsoAnti => {
            let perms = permutations(n);
            let anti = job.dedup == Dedup::IsoAnti;
            tables
                .map(|t| canonical(&t, n, &perms, anti))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect()
        }
    };
    chosen
        .into_iter()
        .map(|t| Semigroup::from_flat(n, t.into_iter().map(usize::from).collect()))
        .collect()
}

/// Semigroups of every order from 1 to `n_max` under `job`'s dedup and filter.
pub fn enumerate_up_to(n_max: usize, dedup: Dedup, filter: Filter) -> Result<Vec<Semigroup>> {
    let mut out = Vec::new();
    for order in 1..=n_max {
        out.extend(enumerate(EnumerationJob { order, dedup, filter })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force over all `n^(n²)` tables with an independent
    /// isomorphism test.
    fn naive_classes(n: usize, anti: bool) -> usize {
        let cells = n * n;
        let total = n.pow(cells as u32);
        let mut reps: Vec<Vec<usize>> = Vec::new();
        let perms = permutations(n);
        let assoc = |t: &[usize]| {
            (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]])))
        };
        let iso = |s: &[usize], t: &[usize]| {
            perms.iter().any(|p| {
                (0..n).all(|a| (0..n).all(|b| p[s[a * n + b]] == t[p[a] * n + p[b]])) || (anti && (0..n).all(|a| (0..n).all(|b| p[s[a * n + b]] == t[p[b] * n + p[a]])))
            })
        };
        for code in 0..total {
            let t: Vec<usize> = (0..cells).map(|k| code / n.pow(k as u32) % n).collect();
            if assoc(&t) && !reps.iter().any(|r| iso(r, &t)) {
                reps.push(t);
            }
        }
        reps.len()
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 1..=3 {
            for (dedup, anti) in [(Dedup::Iso, false), (Dedup::IsoAnti, true)] {
                let fast = enumerate(EnumerationJob { order: n, dedup, filter: Filter::All }).unwrap();
                assert_eq!(fast.len(), naive_classes(n, anti), "order {n} {dedup:?}");
            }
        }
    }

    #[test]
    fn known_counts() {
        let count = |order, dedup, filter| enumerate(EnumerationJob { order, dedup, filter }).unwrap().len();
        let iso: Vec<_> = (1..=4).map(|n| count(n, Dedup::Iso, Filter::All)).collect();
        assert_eq!(iso, [1, 5, 24, 188]);
        let anti: Vec<_> = (1..=4).map(|n| count(n, Dedup::IsoAnti, Filter::All)).collect();
        assert_eq!(anti, [1, 4, 18, 126]);
        let labelled: Vec<_> = (1..=3).map(|n| count(n, Dedup::None, Filter::All)).collect();
        assert_eq!(labelled, [1, 8, 113]);
        let monoids: Vec<_> = (1..=4).map(|n| count(n, Dedup::Iso, Filter::Monoid)).collect();
        assert_eq!(monoids, [1, 2, 7, 35]);
    }

    #[test]
    fn order_limit() {
        assert!(matches!(enumerate(EnumerationJob::new(6)), Err(Error::ResourceLimit { .. })));
        assert!(enumerate(EnumerationJob::new(0)).is_err());
    }

    #[test]
    fn output_is_canonical_and_sorted() {
        let all = enumerate(EnumerationJob::new(3)).unwrap();
        let perms = permutations(3);
        let flat: Vec<Vec<u8>> = all.iter().map(|s| s.flat_table().iter().map(|&x| x as u8).collect()).collect();
        for t in &flat {
            assert_eq!(&canonical(t, 3, &perms, false), t);
        }
        assert!(flat.windows(2).all(|w| w[0] < w[1]));
    }
}
