//! Kernel and Rees structure of finite semigroups, finite group series, and
//! the classifier that reads solvability and nilpotence off that structure.

use serde::Serialize;

use crate::commutator::{Class, ClassReport, Method};
use crate::congruence::{Congruence, Partition};
use crate::error::{Error, Result};
use crate::semigroup::{group_inverses, Element, ReesCoord, Semigroup};

/// Fixed-size bitset over the elements of a semigroup.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ElemSet(Vec<u64>);

impl ElemSet {
    fn new(n: usize) -> Self {
        ElemSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, x: usize) {
        self.0[x / 64] |= 1 << (x % 64);
    }
    fn contains(&self, x: usize) -> bool {
        self.0[x / 64] >> (x % 64) & 1 == 1
    }
    fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Green's relations as partitions, with the order on J-classes.
#[derive(Debug, Clone, Serialize)]
pub struct GreenData {
    pub r_classes: Partition,
    pub l_classes: Partition,
    pub j_classes: Partition,
    pub h_classes: Partition,
    /// `j_order[a][b]` iff `J_a ≤ J_b`, indexed like `j_classes`.
    pub j_order: Vec<Vec<bool>>,
}

fn principal_ideals(s: &Semigroup) -> (Vec<ElemSet>, Vec<ElemSet>, Vec<ElemSet>) {
    let n = s.order();
    let mut right = Vec::with_capacity(n);
    let mut left = Vec::with_capacity(n);
    let mut both = Vec::with_capacity(n);
    for a in s.elements() {
        let mut r = ElemSet::new(n);
        let mut l = ElemSet::new(n);
        let mut j = ElemSet::new(n);
        r.insert(a);
        l.insert(a);
        j.insert(a);
        for x in s.elements() {
            r.insert(s.mul(a, x));
            l.insert(s.mul(x, a));
            j.insert(s.mul(a, x));
            j.insert(s.mul(x, a));
            for y in s.elements() {
                j.insert(s.mul(s.mul(x, a), y));
            }
        }
        right.push(r);
        left.push(l);
        both.push(j);
    }
    (right, left, both)
}

fn labels_partition<L: Eq + std::hash::Hash + Copy>(labels: &[L]) -> Partition {
    Congruence::from_labels(labels).partition()
}

/// R, L, J and H classes from equality of principal one- and two-sided ideals.
pub fn green(s: &Semigroup) -> GreenData {
    let (right, left, both) = principal_ideals(s);
    let index_of = |sets: &[ElemSet]| -> Vec<usize> {
        let mut seen: Vec<&ElemSet> = Vec::new();
        sets.iter()
            .map(|x| match seen.iter().position(|y| *y == x) {
                Some(k) => k,
                None => {
                    seen.push(x);
                    seen.len() - 1
                }
            })
            .collect()
    };
    let r = index_of(&right);
    let l = index_of(&left);
    let j = index_of(&both);
    let h: Vec<(usize, usize)> = r.iter().copied().zip(l.iter().copied()).collect();
    let j_classes = labels_partition(&j);
    let reps: Vec<Element> = j_classes.classes().iter().map(|c| c[0]).collect();
    let j_order = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| both[a].is_subset(&both[b])).collect())
        .collect();
    GreenData {
        r_classes: labels_partition(&r),
        l_classes: labels_partition(&l),
        j_classes,
        h_classes: labels_partition(&h),
        j_order,
    }
}

/// The minimum ideal, ascending.
pub fn kernel(s: &Semigroup) -> Vec<Element> {
    let (_, _, both) = principal_ideals(s);
    let smallest = both.iter().min_by_key(|x| x.len()).unwrap();
    s.elements().filter(|&x| smallest.contains(x)).collect()
}

/// Why a set fails to be a completely simple ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimplicityWitness {
    /// `a` and `b` generate different ideals of `K`.
    JSplit { a: Element, b: Element },
    /// `lower < upper` as idempotents.
    NonPrimitive { lower: Element, upper: Element },
}

/// Whether the ideal `k` is a completely simple semigroup.
pub fn is_completely_simple(s: &Semigroup, k: &[Element]) -> Result<(bool, Option<SimplicityWitness>)> {
    if k.is_empty() {
        return Err(Error::InvalidArgument("empty set".into()));
    }
    if let Some((x, a)) = s.ideal_violation(k) {
        return Err(Error::NotAnIdeal { s: x, a });
    }
    let (sub, map) = s.restrict_to(k)?;
    let g = green(&sub);
    if g.j_classes.len() > 1 {
        let a = map[g.j_classes.classes()[0][0]];
        let b = map[g.j_classes.classes()[1][0]];
        return Ok((false, Some(SimplicityWitness::JSplit { a, b })));
    }
    let idem = sub.idempotents();
    for &e in &idem {
        for &f in &idem {
            if e != f && sub.mul(e, f) == f && sub.mul(f, e) == f {
                return Ok((
                    false,
                    Some(SimplicityWitness::NonPrimitive {
                        lower: map[f],
                        upper: map[e],
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

/// Least `m ≥ 1` with `S^m ⊆ set`, or `None` if the powers of `S` stabilize
/// outside it.
pub fn extension_index(s: &Semigroup, set: &[Element]) -> Option<usize> {
    let mut inside = vec![false; s.order()];
    for &x in set {
        inside[x] = true;
    }
    let all: Vec<Element> = s.elements().collect();
    let mut power = all.clone();
    let mut m = 1;
    loop {
        if power.iter().all(|&x| inside[x]) {
            return Some(m);
        }
        let next = s.set_product(&power, &all);
        if next == power {
            return None;
        }
        power = next;
        m += 1;
    }
}

/// `S^k` as a set, ascending.
pub fn power_set(s: &Semigroup, k: usize) -> Vec<Element> {
    let all: Vec<Element> = s.elements().collect();
    let mut power = all.clone();
    for _ in 1..k {
        let next = s.set_product(&power, &all);
        if next == power {
            break;
        }
        power = next;
    }
    power
}

/// `K ≅ M(G; I, Λ; P)` with explicit coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct KernelDecomposition {
    pub kernel: Vec<Element>,
    pub i_count: usize,
    pub lambda_count: usize,
    /// The idempotent `e` whose H-class is the group.
    pub idempotent: Element,
    /// `H_e` ascending; group index `g` is `group_elements[g]`.
    pub group_elements: Vec<Element>,
    #[serde(skip)]
    pub group: Semigroup,
    /// `sandwich[λ][i] = r_λ q_i`, as group indices.
    pub sandwich: Vec<Vec<usize>>,
    /// Coordinates of each element of `S`; `None` outside the kernel.
    pub coords: Vec<Option<ReesCoord>>,
    /// Least `m` with `S^m ⊆ K`.
    pub extension_index: Option<usize>,
}

impl KernelDecomposition {
    pub fn element_at(&self, c: ReesCoord) -> Option<Element> {
        self.coords.iter().position(|x| *x == Some(c))
    }

    pub fn group_identity(&self) -> usize {
        self.group_elements.iter().position(|&x| x == self.idempotent).unwrap()
    }
}

/// Rees coordinates for a completely simple ideal `k`.
///
/// `e` is the least idempotent of `k` and `G = H_e`. `I` and `Λ` are the R-
/// and L-classes of `k`, ordered by least element. `q_i` is the least element
/// of `R_i ∩ L_e` and `r_λ` the least of `R_e ∩ L_λ`, except that `e` is used
/// on `e`'s own classes. The map `(i, g, λ) ↦ q_i g r_λ` is checked to be a
/// bijective homomorphism before returning.
pub fn rees_decompose(s: &Semigroup, k: &[Element]) -> Result<KernelDecomposition> {
    let (ok, witness) = is_completely_simple(s, k)?;
    if !ok {
        return Err(Error::DecompositionFailed(format!(
            "not completely simple: {witness:?}"
        )));
    }
    let (sub, map) = s.restrict_to(k)?;
    let g = green(&sub);
    let class_of = |p: &Partition| {
        let mut label = vec![0usize; sub.order()];
        for (idx, c) in p.classes().iter().enumerate() {
            for &x in c {
                label[x] = idx;
            }
        }
        label
    };
    let r_of = class_of(&g.r_classes);
    let l_of = class_of(&g.l_classes);
    let e_local = sub.idempotents()[0];
    let e = map[e_local];
    let (re, le) = (r_of[e_local], l_of[e_local]);

    let h_e: Vec<Element> = sub
        .elements()
        .filter(|&x| r_of[x] == re && l_of[x] == le)
        .collect();
    let (group, _) = sub.restrict_to(&h_e)?;
    group_inverses(&group).map_err(|e| Error::DecompositionFailed(format!("H_e: {e}")))?;
    let mut g_index = vec![usize::MAX; sub.order()];
    for (idx, &x) in h_e.iter().enumerate() {
        g_index[x] = idx;
    }

    let i_count = g.r_classes.len();
    let lambda_count = g.l_classes.len();
    let q: Vec<Element> = (0..i_count)
        .map(|i| {
            if i == re {
                e_local
            } else {
                sub.elements().find(|&x| r_of[x] == i && l_of[x] == le).unwrap()
            }
        })
        .collect();
    let r: Vec<Element> = (0..lambda_count)
        .map(|l| {
            if l == le {
                e_local
            } else {
                sub.elements().find(|&x| r_of[x] == re && l_of[x] == l).unwrap()
            }
        })
        .collect();
    let mut sandwich = vec![vec![0; i_count]; lambda_count];
    for (l, row) in sandwich.iter_mut().enumerate() {
        for (i, cell) in row.iter_mut().enumerate() {
            let p = g_index[sub.mul(r[l], q[i])];
            if p == usize::MAX {
                return Err(Error::DecompositionFailed(format!(
                    "sandwich entry ({l},{i}) outside H_e"
                )));
            }
            *cell = p;
        }
    }

    let mut coords: Vec<Option<ReesCoord>> = vec![None; s.order()];
    for i in 0..i_count {
        for (gi, &gx) in h_e.iter().enumerate() {
            for l in 0..lambda_count {
                let x = map[sub.mul(sub.mul(q[i], gx), r[l])];
                if coords[x].is_some() {
                    return Err(Error::DecompositionFailed(format!("coordinate map not injective at {x}")));
                }
                coords[x] = Some(ReesCoord { i, g: gi, lambda: l });
            }
        }
    }
    if k.iter().any(|&x| coords[x].is_none()) {
        return Err(Error::DecompositionFailed("coordinate map not onto the kernel".into()));
    }
    for &x in k {
        for &y in k {
            let (cx, cy) = (coords[x].unwrap(), coords[y].unwrap());
            let mid = group.mul(group.mul(cx.g, sandwich[cx.lambda][cy.i]), cy.g);
            let expect = ReesCoord {
                i: cx.i,
                g: mid,
                lambda: cy.lambda,
            };
            if coords[s.mul(x, y)] != Some(expect) {
                return Err(Error::DecompositionFailed(format!(
                    "coordinates do not multiply by the Rees rule at {x}*{y}"
                )));
            }
        }
    }
    Ok(KernelDecomposition {
        kernel: k.to_vec(),
        i_count,
        lambda_count,
        idempotent: e,
        group_elements: h_e.iter().map(|&x| map[x]).collect(),
        group,
        sandwich,
        coords,
        extension_index: extension_index(s, k),
    })
}

/// Derived and lower central series of a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSeries {
    pub derived_series: Vec<Vec<Element>>,
    pub lower_central_series: Vec<Vec<Element>>,
    pub solvable_class: Option<usize>,
    pub nilpotent_class: Option<usize>,
}

/// `[A, B] = ⟨ a⁻¹b⁻¹ab ⟩`.
pub fn subgroup_commutator(g: &Semigroup, a: &[Element], b: &[Element]) -> Result<Vec<Element>> {
    let (e, inv) = group_inverses(g)?;
    let mut gens = vec![e];
    for &x in a {
        for &y in b {
            gens.push(g.product(&[inv[x], inv[y], x, y]));
        }
    }
    Ok(g.generate_subsemigroup(&gens))
}

fn descend(
    g: &Semigroup,
    next: impl Fn(&[Element]) -> Result<Vec<Element>>,
) -> Result<(Vec<Vec<Element>>, Option<usize>)> {
    let mut chain = vec![g.elements().collect::<Vec<_>>()];
    loop {
        let prev = chain.last().unwrap();
        let term = next(prev)?;
        if term == *prev {
            break;
        }
        chain.push(term);
    }
    let class = (chain.last().unwrap().len() == 1).then(|| chain.len() - 1);
    Ok((chain, class))
}

pub fn group_series(g: &Semigroup) -> Result<GroupSeries> {
    let all: Vec<Element> = g.elements().collect();
    let (derived_series, solvable_class) = descend(g, |h| subgroup_commutator(g, h, h))?;
    let (lower_central_series, nilpotent_class) = descend(g, |h| subgroup_commutator(g, h, &all))?;
    Ok(GroupSeries {
        derived_series,
        lower_central_series,
        solvable_class,
        nilpotent_class,
    })
}

pub fn is_normal_subgroup(g: &Semigroup, n: &[Element]) -> Result<bool> {
    let (e, inv) = group_inverses(g)?;
    let mut inside = vec![false; g.order()];
    for &x in n {
        if x >= g.order() {
            return Ok(false);
        }
        inside[x] = true;
    }
    if !inside[e] || n.iter().any(|&a| n.iter().any(|&b| !inside[g.mul(a, b)])) {
        return Ok(false);
    }
    Ok(n.iter().all(|&a| g.elements().all(|x| inside[g.product(&[inv[x], a, x])])))
}

/// All normal subgroups, sorted by size then elements.
pub fn normal_subgroups(g: &Semigroup) -> Result<Vec<Vec<Element>>> {
    let (e, inv) = group_inverses(g)?;
    let normal_closure = |seed: &[Element]| {
        let mut gens = vec![e];
        for &a in seed {
            for x in g.elements() {
                gens.push(g.product(&[inv[x], a, x]));
            }
        }
        g.generate_subsemigroup(&gens)
    };
    let mut found: Vec<Vec<Element>> = vec![vec![e]];
    for a in g.elements() {
        let c = normal_closure(&[a]);
        if !found.contains(&c) {
            found.push(c);
        }
    }
    // close under joins
    let mut k = 0;
    while k < found.len() {
        for j in 0..k {
            let union: Vec<Element> = found[k].iter().chain(&found[j]).copied().collect();
            let joined = g.generate_subsemigroup(&union);
            if !found.contains(&joined) {
                found.push(joined);
            }
        }
        k += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// `σ_N`: kernel elements with equal I and Λ coordinates and group
/// coordinates in the same coset of `N`; the diagonal elsewhere.
pub fn sigma_n(s: &Semigroup, dec: &KernelDecomposition, normal: &[Element]) -> Result<Congruence> {
    if !is_normal_subgroup(&dec.group, normal)? {
        return Err(Error::NotNormal(format!("{normal:?}")));
    }
    let g = &dec.group;
    let labels: Vec<(usize, usize, usize, usize)> = s
        .elements()
        .map(|x| match dec.coords[x] {
            None => (0, x, 0, 0),
            Some(c) => {
                let coset = normal.iter().map(|&n| g.mul(c.g, n)).min().unwrap();
                (1, c.i, c.lambda, coset)
            }
        })
        .collect();
    let sigma = Congruence::from_labels(&labels);
    if let Some((a, b, x)) = sigma.compatibility_violation(s) {
        return Err(Error::DecompositionFailed(format!(
            "sigma_N not compatible: {a} ~ {b}, multiplier {x}"
        )));
    }
    Ok(sigma)
}

/// Every element has a power `aⁿ` with `aⁿ b aⁿ = aⁿ` for some `b`.
pub fn eventually_regular(s: &Semigroup) -> bool {
    s.elements().all(|a| {
        let mut p = a;
        (0..=s.order()).any(|_| {
            let regular = s.elements().any(|b| s.mul(s.mul(p, b), p) == p);
            p = s.mul(p, a);
            regular
        })
    })
}

fn ceil_log2(m: usize) -> usize {
    let mut l = 0;
    while (1usize << l) < m {
        l += 1;
    }
    l
}

/// Structural data behind [`classify_structural`].
#[derive(Debug, Clone, Serialize)]
pub struct StructuralData {
    pub decomposition: KernelDecomposition,
    pub group_series: GroupSeries,
}

/// Classification from the kernel `K`, the index `m` with `S^m ⊆ K`, and the
/// series of the maximal subgroup `G` of `K`.
///
/// Solvable iff `m` exists and `G` is solvable; left, right and
/// supernilpotent iff `m` exists and `G` is nilpotent. Classes are reported
/// as ranges. Upper ends: `⌈log₂ m⌉ + n + 1` (solvable), `2m + n`
/// (nilpotent), `2m·max(n, 1)` (supernilpotent), tightened to `⌈log₂ m⌉` and
/// `m` when `K` is a single zero and to `1` when `S` is a rectangular band. Lower ends: a class `d` needs
/// `S^{2^d} ⊆ K` (solvable) or `S^{d+1} ⊆ K` (nilpotent), and `G` of the same
/// class.
pub fn classify_structural(s: &Semigroup) -> Result<ClassReport> {
    Ok(structural(s)?.0)
}

pub fn structural(s: &Semigroup) -> Result<(ClassReport, StructuralData)> {
    let k = kernel(s);
    let dec = rees_decompose(s, &k)?;
    let series = group_series(&dec.group)?;

    // all maximal subgroups of K are isomorphic; cross-check the classes
    let (sub, _) = s.restrict_to(&k)?;
    let g = green(&sub);
    for f in sub.idempotents() {
        let h = g.h_classes.classes().iter().find(|c| c.contains(&f)).unwrap();
        let (hf, _) = sub.restrict_to(h)?;
        let other = group_series(&hf)?;
        if other.solvable_class != series.solvable_class || other.nilpotent_class != series.nilpotent_class {
            return Err(Error::DecompositionFailed(
                "maximal subgroups of the kernel disagree".into(),
            ));
        }
    }

    let nontrivial = usize::from(s.order() > 1);
    let zero_kernel = k.len() == 1;
    // S itself a rectangular band
    let band = dec.extension_index == Some(1) && dec.group.order() == 1;
    let (solvable, nilpotent, supernilpotent) = match dec.extension_index {
        None => (Class::Never, Class::Never, Class::Never),
        Some(m) => {
            let l = ceil_log2(m);
            let solvable = match series.solvable_class {
                None => Class::Never,
                Some(n) => Class::Within {
                    lower: l.max(n).max(nontrivial),
                    upper: if zero_kernel { l } else { l + n + 1 },
                },
            };
            let (nilpotent, supernilpotent) = match series.nilpotent_class {
                None => (Class::Never, Class::Never),
                Some(n) => {
                    let lower = (m - 1).max(n).max(nontrivial);
                    let (nil, sup) = if zero_kernel {
                        (m, m)
                    } else if band {
                        (nontrivial, nontrivial)
                    } else {
                        (2 * m + n, 2 * m * n.max(1))
                    };
                    (
                        Class::Within { lower, upper: nil },
                        Class::Within { lower, upper: sup },
                    )
                }
            };
            (solvable, nilpotent, supernilpotent)
        }
    };
    let abelian = match solvable {
        Class::Never => Some(false),
        Class::Within { lower, .. } if lower > 1 => Some(false),
        Class::Within { upper, .. } if upper <= 1 => Some(true),
        _ => None,
    };
    let mut report = ClassReport::new(Method::Structural, s.order(), solvable, nilpotent, nilpotent, supernilpotent, abelian);
    report.notes.push(format!(
        "kernel size {}, |I|={}, |Λ|={}, |G|={}, m={}",
        k.len(),
        dec.i_count,
        dec.lambda_count,
        dec.group.order(),
        dec.extension_index.map_or("none".to_string(), |m| m.to_string())
    ));
    Ok((
        report,
        StructuralData {
            decomposition: dec,
            group_series: series,
        },
    ))
}
