//! Finite semigroups given by Cayley tables.
//!
//! Elements are dense indices `0..order`. A [`Semigroup`] is only ever built
//! through [`Semigroup::from_table`] (or a constructor that calls it), so every
//! value in circulation has a verified associative table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element index relative to some [`Semigroup`].
pub type Element = usize;

/// Largest order produced by the constructors ([`direct_product`], [`rees_matrix`]).
pub const DEFAULT_ORDER_CAP: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    order: usize,
    table: Vec<Element>,
    identity: Option<Element>,
}

impl std::fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Semigroup")
            .field("order", &self.order)
            .field("table", &self.rows())
            .finish()
    }
}

/// JSON form of a table: `{"order": n, "table": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableJson {
    pub order: usize,
    pub table: Vec<Vec<i64>>,
}

impl Semigroup {
    /// Validates a square table. Records the identity if there is one.
    pub fn from_table(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if v < 0 || v as usize >= n {
                    return Err(Error::OutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        order: n,
                    });
                }
                table.push(v as usize);
            }
        }
        Self::from_flat(n, table)
    }

    /// Validates a row-major flat table of length `order * order`.
    pub fn from_flat(order: usize, table: Vec<Element>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::Malformed(format!(
                "flat table of length {} does not fit order {order}",
                table.len()
            )));
        }
        if let Some(i) = table.iter().position(|&v| v >= order) {
            return Err(Error::OutOfRange {
                row: i / order,
                col: i % order,
                value: table[i] as i64,
                order,
            });
        }
        let at = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity =
            (0..order).find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x));
        Ok(Semigroup {
            order,
            table,
            identity,
        })
    }

    /// Builds a semigroup from a multiplication closure, validating the result.
    pub fn from_fn(order: usize, f: impl Fn(Element, Element) -> Element) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b));
            }
        }
        Self::from_flat(order, table)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    /// Product of a nonempty sequence of elements, left to right.
    pub fn product(&self, elems: &[Element]) -> Element {
        let (first, rest) = elems.split_first().expect("empty product");
        rest.iter().fold(*first, |acc, &x| self.mul(acc, x))
    }

    pub fn flat_table(&self) -> &[Element] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn identity(&self) -> Option<Element> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    /// The two-sided zero, if any.
    pub fn zero(&self) -> Option<Element> {
        (0..self.order).find(|&z| (0..self.order).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `{ e : e*e = e }`, ascending.
    pub fn idempotents(&self) -> Vec<Element> {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Smallest multiplication-closed superset of `seed`, ascending.
    pub fn generate_subsemigroup(&self, seed: &[Element]) -> Vec<Element> {
        let mut inside = vec![false; self.order];
        let mut members: Vec<Element> = Vec::new();
        for &s in seed {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
            }
        }
        let gens = members.clone();
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            next += 1;
            for &g in &gens {
                for p in [self.mul(x, g), self.mul(g, x)] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// `A*B = { ab : a in A, b in B }`, ascending.
    pub fn set_product(&self, left: &[Element], right: &[Element]) -> Vec<Element> {
        let mut hit = vec![false; self.order];
        for &a in left {
            for &b in right {
                hit[self.mul(a, b)] = true;
            }
        }
        (0..self.order).filter(|&x| hit[x]).collect()
    }

    pub fn is_ideal(&self, set: &[Element]) -> bool {
        self.ideal_violation(set).is_none()
    }

    pub(crate) fn ideal_violation(&self, set: &[Element]) -> Option<(Element, Element)> {
        let mut inside = vec![false; self.order];
        for &a in set {
            inside[a] = true;
        }
        for &a in set {
            for s in self.elements() {
                if !inside[self.mul(s, a)] || !inside[self.mul(a, s)] {
                    return Some((s, a));
                }
            }
        }
        None
    }

    /// The subsemigroup on `elems` (which must be closed), relabelled to
    /// `0..elems.len()` in the given order. Returns the table and the embedding map.
    pub fn restrict_to(&self, elems: &[Element]) -> Result<(Semigroup, Vec<Element>)> {
        let mut index = vec![usize::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            index[e] = i;
        }
        let k = elems.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in elems {
            for &b in elems {
                let p = index[self.mul(a, b)];
                if p == usize::MAX {
                    return Err(Error::InvalidArgument(format!(
                        "{a}*{b} leaves the subset"
                    )));
                }
                table.push(p);
            }
        }
        Ok((Semigroup::from_flat(k, table)?, elems.to_vec()))
    }

    /// The opposite semigroup `a*b := b*a`.
    pub fn opposite(&self) -> Semigroup {
        let n = self.order;
        let table = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        Semigroup {
            order: n,
            table,
            identity: self.identity,
        }
    }

    /// Relabels elements by `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[Element]) -> Semigroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Semigroup {
            order: n,
            table,
            identity: self.identity.map(|e| perm[e]),
        }
    }

    pub fn is_homomorphism_to(&self, target: &Semigroup, map: &[Element]) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
        })
    }

    // ---- text and JSON formats ----

    /// Parses either the line format or the JSON format.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            Self::parse_json(input)
        } else {
            Self::parse_text(input)
        }
    }

    /// Line format: the order on the first line, then one row per line.
    /// Lines starting with `#` are comments.
    pub fn parse_text(input: &str) -> Result<Self> {
        let mut lines = input
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Malformed("missing order line".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Malformed(format!("bad order line {header:?}")))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>()
                        .map_err(|_| Error::Malformed(format!("bad entry {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::Malformed(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        Self::from_table(&rows)
    }

    pub fn parse_json(input: &str) -> Result<Self> {
        let parsed: TableJson =
            serde_json::from_str(input).map_err(|e| Error::Malformed(e.to_string()))?;
        if parsed.table.len() != parsed.order {
            return Err(Error::Malformed(format!(
                "order {} but {} rows",
                parsed.order,
                parsed.table.len()
            )));
        }
        Self::from_table(&parsed.table)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.table.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            order: self.order,
            table: self
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|v| v as i64).collect())
                .collect(),
        }
    }
}

/// Componentwise product; element `(s, t)` has index `s * |T| + t`.
pub fn direct_product(s: &Semigroup, t: &Semigroup, order_cap: usize) -> Result<Semigroup> {
    let n = s.order() * t.order();
    if n > order_cap {
        return Err(Error::limit("direct product order", order_cap));
    }
    let m = t.order();
    Semigroup::from_fn(n, |a, b| s.mul(a / m, b / m) * m + t.mul(a % m, b % m))
}

/// Identity and two-sided inverses of a group table.
pub fn group_inverses(g: &Semigroup) -> Result<(Element, Vec<Element>)> {
    let e = g
        .identity()
        .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
    let inv = g
        .elements()
        .map(|a| {
            g.elements()
                .find(|&b| g.mul(a, b) == e && g.mul(b, a) == e)
                .ok_or_else(|| Error::NotAGroup(format!("{a} has no inverse")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((e, inv))
}

pub fn is_group(g: &Semigroup) -> bool {
    group_inverses(g).is_ok()
}

/// Parameters of a Rees matrix semigroup `M(G; I, Λ; P)`.
#[derive(Debug, Clone)]
pub struct ReesSpec {
    pub group: Semigroup,
    pub i_size: usize,
    pub lambda_size: usize,
    /// `lambda_size` rows of `i_size` group indices; `sandwich[λ][i] = P_{λ i}`.
    pub sandwich: Vec<Vec<Element>>,
}

/// Coordinates `(i, g, λ)` of an element of a Rees matrix semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReesCoord {
    pub i: usize,
    pub g: Element,
    pub lambda: usize,
}

/// A Rees matrix semigroup together with its coordinate map.
#[derive(Debug, Clone)]
pub struct ReesSemigroup {
    pub semigroup: Semigroup,
    /// `coords[x]` are the coordinates of element `x`.
    pub coords: Vec<ReesCoord>,
    pub group_order: usize,
    pub lambda_size: usize,
}

impl ReesSemigroup {
    pub fn index_of(&self, c: ReesCoord) -> Element {
        (c.i * self.group_order + c.g) * self.lambda_size + c.lambda
    }
}

/// `(i, g, λ)(j, h, μ) = (i, g P_{λ j} h, μ)` on `I × G × Λ`, indexed
/// `(i * |G| + g) * |Λ| + λ`.
pub fn rees_matrix(spec: &ReesSpec, order_cap: usize) -> Result<ReesSemigroup> {
    group_inverses(&spec.group)?;
    let gn = spec.group.order();
    if spec.i_size == 0 || spec.lambda_size == 0 {
        return Err(Error::InvalidArgument("index sets must be nonempty".into()));
    }
    if spec.sandwich.len() != spec.lambda_size
        || spec.sandwich.iter().any(|row| row.len() != spec.i_size)
    {
        return Err(Error::InvalidArgument(format!(
            "sandwich matrix must be {}x{}",
            spec.lambda_size, spec.i_size
        )));
    }
    if spec.sandwich.iter().flatten().any(|&p| p >= gn) {
        return Err(Error::InvalidArgument("sandwich entry outside the group".into()));
    }
    let n = spec.i_size * gn * spec.lambda_size;
    if n > order_cap {
        return Err(Error::limit("Rees matrix semigroup order", order_cap));
    }
    let coords: Vec<ReesCoord> = (0..n)
        .map(|x| ReesCoord {
            i: x / (gn * spec.lambda_size),
            g: (x / spec.lambda_size) % gn,
            lambda: x % spec.lambda_size,
        })
        .collect();
    let index = |c: ReesCoord| (c.i * gn + c.g) * spec.lambda_size + c.lambda;
    let g = &spec.group;
    let semigroup = Semigroup::from_fn(n, |a, b| {
        let (x, y) = (coords[a], coords[b]);
        let mid = g.mul(g.mul(x.g, spec.sandwich[x.lambda][y.i]), y.g);
        index(ReesCoord {
            i: x.i,
            g: mid,
            lambda: y.lambda,
        })
    })?;
    Ok(ReesSemigroup {
        semigroup,
        coords,
        group_order: gn,
        lambda_size: spec.lambda_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rows(v: &[&[i64]]) -> Vec<Vec<i64>> {
        v.iter().map(|r| r.to_vec()).collect()
    }

    fn naive_associative(n: usize, t: &[Vec<i64>]) -> bool {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = t[a][b] as usize;
                    let bc = t[b][c] as usize;
                    if t[ab][c] != t[a][bc] {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn validate_examples() {
        let sl2 = Semigroup::from_table(&rows(&[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(sl2.identity(), Some(1));
        let z2 = Semigroup::from_table(&rows(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(z2.identity(), Some(0));
        // (0*0)*1 = 1*1 = 0 but 0*(0*1) = 0*0 = 1
        let bad = Semigroup::from_table(&rows(&[&[1, 0], &[0, 0]]));
        assert!(matches!(bad, Err(Error::NotAssociative { .. })));
        let oob = Semigroup::from_table(&rows(&[&[0, 2], &[0, 0]]));
        assert!(matches!(oob, Err(Error::OutOfRange { row: 0, col: 1, .. })));
        assert!(matches!(
            Semigroup::from_table(&rows(&[&[0, 0], &[0]])),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn validate_agrees_with_triple_loop_on_all_order_two_tables() {
        for code in 0..16u32 {
            let t: Vec<Vec<i64>> = (0..2)
                .map(|r| (0..2).map(|c| ((code >> (2 * r + c)) & 1) as i64).collect())
                .collect();
            assert_eq!(Semigroup::from_table(&t).is_ok(), naive_associative(2, &t));
        }
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(fixtures::semilattice2().idempotents(), vec![0, 1]);
        assert_eq!(fixtures::cyclic_group(2).idempotents(), vec![0]);
        assert_eq!(fixtures::left_zero(2).idempotents(), vec![0, 1]);
    }

    #[test]
    fn subsemigroup_examples() {
        let z4 = fixtures::cyclic_group(4);
        assert_eq!(z4.generate_subsemigroup(&[2]), vec![0, 2]);
        assert_eq!(z4.generate_subsemigroup(&[0, 1, 2, 3]), vec![0, 1, 2, 3]);
        assert_eq!(fixtures::semilattice2().generate_subsemigroup(&[1]), vec![1]);
        assert_eq!(z4.generate_subsemigroup(&[1]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn direct_product_examples() {
        let band = direct_product(&fixtures::left_zero(2), &fixtures::right_zero(2), 64).unwrap();
        // (s,t)(s',t') = (s,t')
        for a in band.elements() {
            for b in band.elements() {
                assert_eq!(band.mul(a, b), (a / 2) * 2 + b % 2);
            }
        }
        let s = fixtures::semilattice2();
        let trivial = fixtures::cyclic_group(1);
        assert_eq!(direct_product(&s, &trivial, 64).unwrap(), s);
        let v4 = direct_product(&fixtures::cyclic_group(2), &fixtures::cyclic_group(2), 64).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(v4.mul(a, b), a ^ b);
            }
        }
        assert!(matches!(
            direct_product(&fixtures::cyclic_group(8), &fixtures::cyclic_group(9), 64),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn rees_matrix_examples() {
        let z2 = fixtures::cyclic_group(2);
        let r = rees_matrix(
            &ReesSpec {
                group: z2.clone(),
                i_size: 1,
                lambda_size: 1,
                sandwich: vec![vec![0]],
            },
            64,
        )
        .unwrap();
        assert_eq!(r.semigroup, z2);

        let lz = rees_matrix(
            &ReesSpec {
                group: fixtures::cyclic_group(1),
                i_size: 2,
                lambda_size: 1,
                sandwich: vec![vec![0, 0]],
            },
            64,
        )
        .unwrap();
        assert_eq!(lz.semigroup, fixtures::left_zero(2));

        let big = rees_matrix(
            &ReesSpec {
                group: z2.clone(),
                i_size: 2,
                lambda_size: 2,
                sandwich: vec![vec![0, 0], vec![0, 1]],
            },
            64,
        )
        .unwrap();
        assert_eq!(big.semigroup.order(), 8);
        for (x, c) in big.coords.iter().enumerate() {
            assert_eq!(big.index_of(*c), x);
        }

        let not_group = ReesSpec {
            group: fixtures::semilattice2(),
            i_size: 1,
            lambda_size: 1,
            sandwich: vec![vec![0]],
        };
        assert!(matches!(rees_matrix(&not_group, 64), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn text_format_round_trip_is_bit_exact() {
        let text = "3\n0 0 0\n0 1 0\n0 0 2\n";
        let s = Semigroup::parse(text).unwrap();
        assert_eq!(s.to_text(), text);
        let with_comment = format!("{text}# semilattice\n# more\n");
        assert_eq!(Semigroup::parse(&with_comment).unwrap(), s);
        let json = r#"{"order": 2, "table": [[0,1],[1,0]]}"#;
        assert_eq!(Semigroup::parse(json).unwrap(), fixtures::cyclic_group(2));
        let back = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(Semigroup::parse(&back).unwrap(), s);
        assert!(Semigroup::parse("2\n0 0\n").is_err());
        assert!(Semigroup::parse("x\n").is_err());
    }
}
