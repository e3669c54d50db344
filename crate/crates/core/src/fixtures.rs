//! Named small semigroups used by tests, the CLI and the demo page.

use crate::semigroup::{direct_product, Semigroup, DEFAULT_ORDER_CAP};

fn build(order: usize, f: impl Fn(usize, usize) -> usize) -> Semigroup {
    Semigroup::from_fn(order, f).expect("fixture tables are associative")
}

/// `{0, 1}` under minimum: `0` is the zero, `1` the identity.
pub fn semilattice2() -> Semigroup {
    build(2, |a, b| a.min(b))
}

/// `xy = x`.
pub fn left_zero(n: usize) -> Semigroup {
    build(n, |a, _| a)
}

/// `xy = y`.
pub fn right_zero(n: usize) -> Semigroup {
    build(n, |_, b| b)
}

/// `rows × cols` rectangular band, `(i, λ)(j, μ) = (i, μ)`, index `i * cols + λ`.
pub fn rectangular_band(rows: usize, cols: usize) -> Semigroup {
    build(rows * cols, |a, b| (a / cols) * cols + b % cols)
}

/// Every product is `0`.
pub fn null_semigroup(n: usize) -> Semigroup {
    build(n, |_, _| 0)
}

/// `Z_n` under addition.
pub fn cyclic_group(n: usize) -> Semigroup {
    build(n, |a, b| (a + b) % n)
}

/// Dihedral group of order `2n`; `r^k s^e` has index `e * n + k`.
pub fn dihedral_group(n: usize) -> Semigroup {
    build(2 * n, |a, b| {
        let (ea, ka) = (a / n, a % n);
        let (eb, kb) = (b / n, b % n);
        let k = if ea == 0 { (ka + kb) % n } else { (ka + n - kb) % n };
        ((ea + eb) % 2) * n + k
    })
}

/// The symmetric group on three points, as the dihedral group of order 6.
pub fn symmetric_group3() -> Semigroup {
    dihedral_group(3)
}

/// Quaternion group; `±u` for `u ∈ {1, i, j, k}` has index `4 * sign + u`.
pub fn quaternion_group() -> Semigroup {
    // unit products: (sign flip, unit)
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    build(8, |a, b| {
        let (flip, u) = UNITS[a % 4][b % 4];
        ((a / 4 + b / 4 + flip) % 2) * 4 + u
    })
}

/// Every group of order at most 8 up to isomorphism, with a short name.
pub fn groups_up_to_order_8() -> Vec<(&'static str, Semigroup)> {
    let z = cyclic_group;
    let prod = |a: &Semigroup, b: &Semigroup| direct_product(a, b, DEFAULT_ORDER_CAP).unwrap();
    vec![
        ("Z1", z(1)),
        ("Z2", z(2)),
        ("Z3", z(3)),
        ("Z4", z(4)),
        ("Z2xZ2", prod(&z(2), &z(2))),
        ("Z5", z(5)),
        ("Z6", z(6)),
        ("S3", symmetric_group3()),
        ("Z7", z(7)),
        ("Z8", z(8)),
        ("Z4xZ2", prod(&z(4), &z(2))),
        ("Z2xZ2xZ2", prod(&prod(&z(2), &z(2)), &z(2))),
        ("D4", dihedral_group(4)),
        ("Q8", quaternion_group()),
    ]
}

/// `S ∪ {1}` with the new identity at index `|S|`.
pub fn adjoin_identity(s: &Semigroup) -> Semigroup {
    let n = s.order();
    build(n + 1, |a, b| match (a == n, b == n) {
        (true, _) => b,
        (_, true) => a,
        _ => s.mul(a, b),
    })
}

/// `S ∪ {0}` with the new zero at index `|S|`.
pub fn adjoin_zero(s: &Semigroup) -> Semigroup {
    let n = s.order();
    build(n + 1, |a, b| if a == n || b == n { n } else { s.mul(a, b) })
}

/// Looks up a fixture by name, e.g. `sl2`, `lz3`, `rz2`, `rb2x3`, `null3`,
/// `z4`, `d4`, `s3`, `q8`.
pub fn by_name(name: &str) -> Option<Semigroup> {
    let name = name.to_ascii_lowercase();
    let num = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?.parse().ok().filter(|&n: &usize| n >= 1 && n <= DEFAULT_ORDER_CAP)
    };
    match name.as_str() {
        "sl2" => return Some(semilattice2()),
        "s3" => return Some(symmetric_group3()),
        "q8" => return Some(quaternion_group()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("rb") {
        let (r, c) = rest.split_once('x')?;
        let (r, c): (usize, usize) = (r.parse().ok()?, c.parse().ok()?);
        if r == 0 || c == 0 || r * c > DEFAULT_ORDER_CAP {
            return None;
        }
        return Some(rectangular_band(r, c));
    }
    if let Some(n) = num("lz") {
        return Some(left_zero(n));
    }
    if let Some(n) = num("rz") {
        return Some(right_zero(n));
    }
    if let Some(n) = num("null") {
        return Some(null_semigroup(n));
    }
    if let Some(n) = num("z") {
        return Some(cyclic_group(n));
    }
    if let Some(n) = num("d") {
        return (2 * n <= DEFAULT_ORDER_CAP).then(|| dihedral_group(n));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::is_group;

    #[test]
    fn group_fixtures_are_groups() {
        for (name, g) in groups_up_to_order_8() {
            assert!(is_group(&g), "{name}");
        }
        let q = quaternion_group();
        // i^2 = -1, ij = k, ji = -k
        assert_eq!(q.mul(1, 1), 4);
        assert_eq!(q.mul(1, 2), 3);
        assert_eq!(q.mul(2, 1), 7);
        assert!(!q.is_commutative());
        assert!(!dihedral_group(4).is_commutative());
    }

    #[test]
    fn adjoined_elements() {
        let m = adjoin_identity(&left_zero(2));
        assert_eq!(m.identity(), Some(2));
        let z = adjoin_zero(&cyclic_group(3));
        assert_eq!(z.zero(), Some(3));
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("SL2"), Some(semilattice2()));
        assert_eq!(by_name("rb2x2").unwrap().order(), 4);
        assert_eq!(by_name("d3"), Some(symmetric_group3()));
        assert!(by_name("z0").is_none());
        assert!(by_name("bogus").is_none());
    }
}
