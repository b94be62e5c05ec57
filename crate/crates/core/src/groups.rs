//! Small permutation-group engine: materialized element sets, wreath products
//! with C2, subgroup enumeration, coset actions, multiplicity reports, Malle
//! indices, and a fixed catalogue of transitive groups of degree <= 12.
//!
//! Groups are immutable after construction; every query works on the
//! materialized element list and the cached multiplication table.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rat::{rat, Rat};

pub const MAX_DEGREE: usize = 16;
pub const MAX_ORDER: usize = 1024;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    map: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            map: (0..n as u8).collect(),
        }
    }

    pub fn from_images(map: Vec<u8>) -> Self {
        let n = map.len();
        assert!(n <= MAX_DEGREE);
        let mut seen = vec![false; n];
        for &v in &map {
            assert!((v as usize) < n && !seen[v as usize], "not a permutation");
            seen[v as usize] = true;
        }
        Perm { map }
    }

    /// Permutation from disjoint cycles over 0-based points.
    pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Self {
        let mut map: Vec<u8> = (0..n as u8).collect();
        for cyc in cycles {
            for i in 0..cyc.len() {
                map[cyc[i] as usize] = cyc[(i + 1) % cyc.len()];
            }
        }
        Perm::from_images(map)
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    /// (self * other)(i) = self(other(i)).
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm {
            map: other.map.iter().map(|&i| self.map[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0u8; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[v as usize] = i as u8;
        }
        Perm { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i as u8 == v)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.mul(self);
            k += 1;
        }
        k
    }

    /// Cycle lengths, descending.
    pub fn cycle_type(&self) -> Vec<u8> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if !seen[i] {
                let mut j = i;
                let mut len = 0u8;
                while !seen[j] {
                    seen[j] = true;
                    j = self.map[j] as usize;
                    len += 1;
                }
                out.push(len);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn orbit_count(&self) -> usize {
        self.cycle_type().len()
    }
}

/// Set of element ids inside a fixed parent group, used for subgroup work.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct IdSet {
    words: Vec<u64>,
    count: usize,
}

impl IdSet {
    pub fn empty(n: usize) -> Self {
        IdSet {
            words: vec![0; n.div_ceil(64)],
            count: 0,
        }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        if self.words[w] >> b & 1 == 0 {
            self.words[w] |= 1 << b;
            self.count += 1;
            true
        } else {
            false
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter_map(move |b| {
                if bits >> b & 1 == 1 {
                    Some(w * 64 + b)
                } else {
                    None
                }
            })
        })
    }

    pub fn is_subset(&self, other: &IdSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    DegreeTooLarge(usize),
    OrderTooLarge,
    NotTransitive,
    TrivialGroup,
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::DegreeTooLarge(n) => write!(f, "degree {n} exceeds {MAX_DEGREE}"),
            GroupError::OrderTooLarge => write!(f, "group order exceeds {MAX_ORDER}"),
            GroupError::NotTransitive => write!(f, "group is not transitive"),
            GroupError::TrivialGroup => write!(f, "trivial group rejected"),
        }
    }
}

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    /// Sorted, deduplicated; index = element id.
    elements: Vec<Perm>,
    transitive: bool,
    mul_table: Vec<u16>,
    inv_table: Vec<u16>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree={}, order={}, transitive={})",
            self.degree,
            self.order(),
            self.transitive
        )
    }
}

impl PermGroup {
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<Self, GroupError> {
        if degree > MAX_DEGREE {
            return Err(GroupError::DegreeTooLarge(degree));
        }
        for g in &gens {
            assert_eq!(g.degree(), degree, "generator degree mismatch");
        }
        let mut set: BTreeSet<Perm> = BTreeSet::new();
        set.insert(Perm::identity(degree));
        let mut frontier: Vec<Perm> = vec![Perm::identity(degree)];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let q = g.mul(&p);
                if set.insert(q.clone()) {
                    if set.len() > MAX_ORDER {
                        return Err(GroupError::OrderTooLarge);
                    }
                    frontier.push(q);
                }
            }
        }
        let elements: Vec<Perm> = set.into_iter().collect();
        let n = elements.len();
        let idx = |p: &Perm| -> u16 {
            elements
                .binary_search(p)
                .expect("closure contains all products") as u16
        };
        let mut mul_table = vec![0u16; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul_table[i * n + j] = idx(&a.mul(b));
            }
        }
        let inv_table: Vec<u16> = elements.iter().map(|p| idx(&p.inverse())).collect();
        let transitive = {
            let mut seen = vec![false; degree];
            seen[0] = true;
            let mut stack = vec![0usize];
            while let Some(pt) = stack.pop() {
                for g in &elements {
                    let q = g.apply(pt);
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
            seen.into_iter().all(|b| b)
        };
        Ok(PermGroup {
            degree,
            gens,
            elements,
            transitive,
            mul_table,
            inv_table,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &Perm {
        &self.elements[id]
    }

    pub fn id_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn mul_ids(&self, a: usize, b: usize) -> usize {
        self.mul_table[a * self.elements.len() + b] as usize
    }

    pub fn inv_id(&self, a: usize) -> usize {
        self.inv_table[a] as usize
    }

    pub fn identity_id(&self) -> usize {
        self.id_of(&Perm::identity(self.degree)).unwrap()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul_ids(a, b) == self.mul_ids(b, a)))
    }

    pub fn has_element_of_order(&self, k: usize) -> bool {
        self.elements.iter().any(|p| p.order() == k)
    }

    /// Multiset of cycle types over all elements, with counts.
    pub fn cycle_type_distribution(&self) -> BTreeMap<Vec<u8>, usize> {
        let mut d = BTreeMap::new();
        for p in &self.elements {
            *d.entry(p.cycle_type()).or_insert(0) += 1;
        }
        d
    }

    /// Closure of a set of element ids inside this group.
    pub fn close_ids(&self, seed: &[usize]) -> IdSet {
        let mut set = IdSet::empty(self.order());
        let e = self.identity_id();
        set.insert(e);
        let mut frontier = vec![e];
        for &s in seed {
            if set.insert(s) {
                frontier.push(s);
            }
        }
        while let Some(x) = frontier.pop() {
            let mut adds = Vec::new();
            for y in set.iter() {
                let xy = self.mul_ids(x, y);
                if !set.contains(xy) {
                    adds.push(xy);
                }
                let yx = self.mul_ids(y, x);
                if !set.contains(yx) {
                    adds.push(yx);
                }
            }
            let ix = self.inv_id(x);
            if !set.contains(ix) {
                adds.push(ix);
            }
            for a in adds {
                if set.insert(a) {
                    frontier.push(a);
                }
            }
        }
        set
    }

    pub fn point_stabilizer_ids(&self, point: usize) -> IdSet {
        let mut set = IdSet::empty(self.order());
        for (i, p) in self.elements.iter().enumerate() {
            if p.apply(point) == point {
                set.insert(i);
            }
        }
        set
    }

    pub fn conjugate_set(&self, set: &IdSet, g: usize) -> IdSet {
        let gi = self.inv_id(g);
        let mut out = IdSet::empty(self.order());
        for x in set.iter() {
            out.insert(self.mul_ids(g, self.mul_ids(x, gi)));
        }
        out
    }

    /// All subgroups of order `k`, as element-id sets. Complete by growing
    /// closures one generator at a time; every intermediate closure of a
    /// subgroup of a target lies inside it, so pruning to orders dividing k
    /// loses nothing.
    pub fn subgroups_of_order(&self, k: usize) -> Vec<IdSet> {
        let n = self.order();
        if k == 0 || n % k != 0 {
            return Vec::new();
        }
        let mut found: BTreeSet<IdSet> = BTreeSet::new();
        let trivial = self.close_ids(&[]);
        let mut frontier: Vec<IdSet> = vec![trivial.clone()];
        let mut seen: BTreeSet<IdSet> = BTreeSet::new();
        seen.insert(trivial);
        while let Some(s) = frontier.pop() {
            if s.len() == k {
                found.insert(s.clone());
                continue;
            }
            for g in 0..n {
                if s.contains(g) {
                    continue;
                }
                let mut seed: Vec<usize> = s.iter().collect();
                seed.push(g);
                let t = self.close_ids(&seed);
                if t.len() <= k && k % t.len() == 0 && !seen.contains(&t) {
                    seen.insert(t.clone());
                    frontier.push(t);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Every subgroup (the full lattice). Intended for small orders.
    pub fn all_subgroups(&self) -> Vec<IdSet> {
        let n = self.order();
        let mut seen: BTreeSet<IdSet> = BTreeSet::new();
        let trivial = self.close_ids(&[]);
        let mut frontier = vec![trivial.clone()];
        seen.insert(trivial);
        while let Some(s) = frontier.pop() {
            for g in 0..n {
                if s.contains(g) {
                    continue;
                }
                let mut seed: Vec<usize> = s.iter().collect();
                seed.push(g);
                let t = self.close_ids(&seed);
                if !seen.contains(&t) {
                    seen.insert(t.clone());
                    frontier.push(t);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The image of the action of `self` on left cosets of `subgroup`.
    pub fn coset_action(&self, subgroup: &IdSet) -> PermGroup {
        let n = self.order();
        // coset representative: smallest element id in g*U
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for u in subgroup.iter() {
                coset_of[self.mul_ids(g, u)] = c;
            }
        }
        let images: Vec<Perm> = self
            .gens
            .iter()
            .map(|g| {
                let gid = self.id_of(g).unwrap();
                let map: Vec<u8> = reps
                    .iter()
                    .map(|&r| coset_of[self.mul_ids(gid, r)] as u8)
                    .collect();
                Perm::from_images(map)
            })
            .collect();
        PermGroup::from_generators(reps.len(), images).expect("coset action in bounds")
    }

    /// Subgroup ids as an abstract PermGroup via its own regular action.
    pub fn subgroup_as_regular(&self, set: &IdSet) -> PermGroup {
        let ids: Vec<usize> = set.iter().collect();
        let pos: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let gens: Vec<Perm> = ids
            .iter()
            .map(|&g| {
                Perm::from_images(ids.iter().map(|&x| pos[&self.mul_ids(g, x)] as u8).collect())
            })
            .collect();
        PermGroup::from_generators(ids.len(), gens).expect("regular action in bounds")
    }
}

/// Cyclic group generated by an n-cycle.
pub fn cyclic(n: usize) -> PermGroup {
    let cycle: Vec<u8> = (0..n as u8).collect();
    PermGroup::from_generators(n, vec![Perm::from_cycles(n, &[&cycle])]).unwrap()
}

/// S3 in its natural degree-3 action.
pub fn s3_natural() -> PermGroup {
    PermGroup::from_generators(
        3,
        vec![Perm::from_cycles(3, &[&[0, 1]]), Perm::from_cycles(3, &[&[0, 1, 2]])],
    )
    .unwrap()
}

/// A4 in its natural degree-4 action.
pub fn a4_natural() -> PermGroup {
    PermGroup::from_generators(
        4,
        vec![
            Perm::from_cycles(4, &[&[0, 1, 2]]),
            Perm::from_cycles(4, &[&[0, 1], &[2, 3]]),
        ],
    )
    .unwrap()
}

/// V4 = <(01)(23), (02)(13)> of degree 4.
pub fn v4_deg4() -> PermGroup {
    PermGroup::from_generators(
        4,
        vec![
            Perm::from_cycles(4, &[&[0, 1], &[2, 3]]),
            Perm::from_cycles(4, &[&[0, 2], &[1, 3]]),
        ],
    )
    .unwrap()
}

/// The regular representation of a group on its own elements.
pub fn regular_rep(g: &PermGroup) -> PermGroup {
    let n = g.order();
    assert!(n <= MAX_DEGREE);
    let gens: Vec<Perm> = g
        .generators()
        .iter()
        .map(|p| {
            let pid = g.id_of(p).unwrap();
            Perm::from_images((0..n).map(|x| g.mul_ids(pid, x) as u8).collect())
        })
        .collect();
    PermGroup::from_generators(n, gens).unwrap()
}

/// S3 as a regular (degree 6) transitive group.
pub fn s3_regular() -> PermGroup {
    regular_rep(&s3_natural())
}

/// A4 acting on the six cosets of a C2.
pub fn a4_degree6() -> PermGroup {
    let a4 = a4_natural();
    let subs = a4.subgroups_of_order(2);
    a4.coset_action(&subs[0])
}

/// Intransitive direct product (left factor on the first block of points).
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let n = a.degree() + b.degree();
    assert!(n <= MAX_DEGREE);
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut map: Vec<u8> = (0..n as u8).collect();
        for i in 0..a.degree() {
            map[i] = g.apply(i) as u8;
        }
        gens.push(Perm::from_images(map));
    }
    for g in b.generators() {
        let mut map: Vec<u8> = (0..n as u8).collect();
        for i in 0..b.degree() {
            map[a.degree() + i] = (a.degree() + g.apply(i)) as u8;
        }
        gens.push(Perm::from_images(map));
    }
    PermGroup::from_generators(n, gens).unwrap()
}

/// The imprimitive wreath product C2 wr H of degree 2n: block i is the point
/// pair {2i, 2i+1}; the base flips within blocks and H permutes blocks.
pub fn wreath_with_c2(h: &PermGroup) -> Result<PermGroup, GroupError> {
    if !h.is_transitive() {
        return Err(GroupError::NotTransitive);
    }
    let n = h.degree();
    if 2 * n > MAX_DEGREE {
        return Err(GroupError::DegreeTooLarge(2 * n));
    }
    let deg = 2 * n;
    let mut gens = Vec::new();
    gens.push(Perm::from_cycles(deg, &[&[0, 1]]));
    for g in h.generators() {
        let mut map = vec![0u8; deg];
        for i in 0..n {
            let j = g.apply(i);
            map[2 * i] = (2 * j) as u8;
            map[2 * i + 1] = (2 * j + 1) as u8;
        }
        gens.push(Perm::from_images(map));
    }
    let w = PermGroup::from_generators(deg, gens)?;
    // order must come out as 2^n * |H|
    assert_eq!(w.order(), (1usize << n) * h.order(), "wreath order");
    Ok(w)
}

/// C2 wr C3 of degree 6.
pub fn c2_wr_c3() -> PermGroup {
    wreath_with_c2(&cyclic(3)).unwrap()
}

/// C2 wr C2 = D4 of degree 4.
pub fn d4_deg4() -> PermGroup {
    wreath_with_c2(&cyclic(2)).unwrap()
}

/// Multiplicities of wreath extensions in the double count, under both
/// counting conventions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaReport {
    pub alpha_subfield: usize,
    pub alpha_isoclass: usize,
    pub valid_u_count: usize,
    pub stabilizer_conjugates: usize,
}

/// For G = C2 wr H with point stabilizer P, a subgroup U is valid when
/// P <= U, [G:U] = n, and the coset action of G on G/U is permutation
/// isomorphic to H. `alpha_subfield` counts valid U over P itself;
/// `alpha_isoclass` sums over all conjugates of P.
pub fn alpha(h: &PermGroup) -> Result<AlphaReport, GroupError> {
    if !h.is_transitive() {
        return Err(GroupError::NotTransitive);
    }
    let n = h.degree();
    let g = wreath_with_c2(h)?;
    let base_p = g.point_stabilizer_ids(0);
    let target_order = g.order() / n;
    // conjugates of the point stabilizer
    let mut conjugates: BTreeSet<IdSet> = BTreeSet::new();
    for x in 0..g.order() {
        conjugates.insert(g.conjugate_set(&base_p, x));
    }
    let mut valid_us: BTreeSet<IdSet> = BTreeSet::new();
    let mut alpha_subfield = 0usize;
    let mut alpha_isoclass = 0usize;
    for p in &conjugates {
        let mut count_here = 0usize;
        // [U : P] is forced, so U = <P, g> ranges over one-step extensions
        let mut candidates: BTreeSet<IdSet> = BTreeSet::new();
        if p.len() == target_order {
            candidates.insert(p.clone());
        }
        for x in 0..g.order() {
            if p.contains(x) {
                continue;
            }
            let mut seed: Vec<usize> = p.iter().collect();
            seed.push(x);
            let u = g.close_ids(&seed);
            if u.len() == target_order {
                candidates.insert(u);
            }
        }
        for u in candidates {
            let action = g.coset_action(&u);
            if action.degree() == n && perm_isomorphic(&action, h) {
                count_here += 1;
                valid_us.insert(u);
            }
        }
        if *p == base_p {
            alpha_subfield = count_here;
        }
        alpha_isoclass += count_here;
    }
    Ok(AlphaReport {
        alpha_subfield,
        alpha_isoclass,
        valid_u_count: valid_us.len(),
        stabilizer_conjugates: conjugates.len(),
    })
}

/// ind(g) = degree - number of orbits of g.
pub fn malle_index(g: &Perm) -> usize {
    g.degree() - g.orbit_count()
}

/// (ind(G), a(G) = 1/ind(G)) over nonidentity elements.
pub fn malle_invariants(g: &PermGroup) -> Result<(usize, Rat), GroupError> {
    let mut best: Option<usize> = None;
    for p in g.elements() {
        if p.is_identity() {
            continue;
        }
        let ind = malle_index(p);
        best = Some(best.map_or(ind, |b| b.min(ind)));
    }
    match best {
        None => Err(GroupError::TrivialGroup),
        Some(ind) => Ok((ind, rat(1, ind as i64))),
    }
}

/// True when a relabeling of points carries the element set of `a` onto the
/// element set of `b`. Degrees up to 6 are searched exhaustively.
pub fn perm_isomorphic(a: &PermGroup, b: &PermGroup) -> bool {
    if a.degree() != b.degree() || a.order() != b.order() {
        return false;
    }
    let n = a.degree();
    let b_set: BTreeSet<&Perm> = b.elements().iter().collect();
    let mut relabel: Vec<u8> = (0..n as u8).collect();
    permute_all(&mut relabel, 0, &mut |lab: &[u8]| {
        a.elements().iter().all(|p| {
            let mut map = vec![0u8; n];
            for i in 0..n {
                map[lab[i] as usize] = lab[p.apply(i)];
            }
            b_set.contains(&Perm::from_images(map))
        })
    })
}

fn permute_all(arr: &mut Vec<u8>, k: usize, check: &mut impl FnMut(&[u8]) -> bool) -> bool {
    if k == arr.len() {
        return check(arr);
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        if permute_all(arr, k + 1, check) {
            arr.swap(k, i);
            return true;
        }
        arr.swap(k, i);
    }
    false
}

/// Abstract isomorphism via generator-image backtracking, after comparing
/// order profiles.
pub fn abstract_isomorphic(a: &PermGroup, b: &PermGroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let profile = |g: &PermGroup| {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for p in g.elements() {
            *m.entry(p.order()).or_insert(0) += 1;
        }
        m
    };
    if profile(a) != profile(b) {
        return false;
    }
    // generating sequence for a
    let mut gens: Vec<usize> = Vec::new();
    let mut closed = a.close_ids(&[]);
    for x in 0..a.order() {
        if !closed.contains(x) {
            gens.push(x);
            closed = a.close_ids(&gens);
            if closed.len() == a.order() {
                break;
            }
        }
    }
    let orders: Vec<usize> = gens.iter().map(|&x| a.element(x).order()).collect();
    let mut images = vec![0usize; gens.len()];
    search_iso(a, b, &gens, &orders, &mut images, 0)
}

fn search_iso(
    a: &PermGroup,
    b: &PermGroup,
    gens: &[usize],
    orders: &[usize],
    images: &mut Vec<usize>,
    k: usize,
) -> bool {
    if k == gens.len() {
        return check_hom_bijective(a, b, gens, images);
    }
    for y in 0..b.order() {
        if b.element(y).order() == orders[k] {
            images[k] = y;
            if search_iso(a, b, gens, orders, images, k + 1) {
                return true;
            }
        }
    }
    false
}

/// Extend the generator assignment to a full map by words and verify it is a
/// bijective homomorphism.
fn check_hom_bijective(a: &PermGroup, b: &PermGroup, gens: &[usize], images: &[usize]) -> bool {
    let n = a.order();
    let mut map: Vec<Option<usize>> = vec![None; n];
    map[a.identity_id()] = Some(b.identity_id());
    let mut frontier = vec![a.identity_id()];
    while let Some(x) = frontier.pop() {
        let fx = map[x].unwrap();
        for (gi, &g) in gens.iter().enumerate() {
            let xg = a.mul_ids(x, g);
            let fxg = b.mul_ids(fx, images[gi]);
            match map[xg] {
                None => {
                    map[xg] = Some(fxg);
                    frontier.push(xg);
                }
                Some(v) => {
                    if v != fxg {
                        return false;
                    }
                }
            }
        }
    }
    if map.iter().any(|m| m.is_none()) {
        return false;
    }
    let mut hit = vec![false; n];
    for m in map.iter().flatten() {
        if hit[*m] {
            return false;
        }
        hit[*m] = true;
    }
    // homomorphism check on all pairs
    (0..n).all(|x| {
        (0..n).all(|y| {
            let fx = map[x].unwrap();
            let fy = map[y].unwrap();
            map[a.mul_ids(x, y)].unwrap() == b.mul_ids(fx, fy)
        })
    })
}

/// Catalogue label for the transitive groups this project meets.
pub fn identify_transitive(g: &PermGroup) -> String {
    if !g.is_transitive() {
        return String::from("unknown");
    }
    let label = match (g.degree(), g.order()) {
        (2, 2) => "C2",
        (3, 3) => "C3",
        (3, 6) => "S3",
        (4, 4) => {
            if g.has_element_of_order(4) {
                "C4"
            } else {
                "V4"
            }
        }
        (4, 8) => {
            if g.is_abelian() {
                "unknown"
            } else {
                "D4"
            }
        }
        (6, 6) => {
            if g.has_element_of_order(6) {
                "C6"
            } else {
                "S3(6)"
            }
        }
        (6, 12) => {
            if g.has_element_of_order(6) {
                "unknown"
            } else {
                "A4(6)"
            }
        }
        (6, 24) => {
            // the wreath has a unique (hence normal) subgroup of order 8
            if g.subgroups_of_order(8).len() == 1 {
                "C2wrC3"
            } else {
                "unknown"
            }
        }
        (12, 384) => "C2wrS3",
        _ => "unknown",
    };
    String::from(label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_orders_and_labels() {
        let d4 = d4_deg4();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.degree(), 4);
        assert_eq!(identify_transitive(&d4), "D4");

        let w = c2_wr_c3();
        assert_eq!(w.order(), 24);
        assert_eq!(w.degree(), 6);
        assert_eq!(identify_transitive(&w), "C2wrC3");

        let ws3 = wreath_with_c2(&s3_regular()).unwrap();
        assert_eq!(ws3.order(), 384);
        assert_eq!(ws3.degree(), 12);
        assert_eq!(identify_transitive(&ws3), "C2wrS3");

        let intransitive = PermGroup::from_generators(
            4,
            vec![Perm::from_cycles(4, &[&[0, 1]])],
        )
        .unwrap();
        assert!(matches!(
            wreath_with_c2(&intransitive),
            Err(GroupError::NotTransitive)
        ));
    }

    #[test]
    fn unique_order_eight_subgroup_in_wreath() {
        let w = c2_wr_c3();
        assert_eq!(w.subgroups_of_order(8).len(), 1);
        assert_eq!(w.subgroups_of_order(24).len(), 1);
        // non-divisor: empty, not an error
        assert!(w.subgroups_of_order(7).is_empty());
    }

    #[test]
    fn d4_has_three_subgroups_of_order_four() {
        let d4 = d4_deg4();
        assert_eq!(d4.subgroups_of_order(4).len(), 3);
    }

    #[test]
    fn subgroup_counts_match_brute_force_lattice() {
        // independent check: closures of all generator subsets of size <= 3
        for g in [d4_deg4(), c2_wr_c3(), s3_regular(), cyclic(6)] {
            let lattice = g.all_subgroups();
            let mut brute: BTreeSet<IdSet> = BTreeSet::new();
            let n = g.order();
            brute.insert(g.close_ids(&[]));
            for x in 0..n {
                brute.insert(g.close_ids(&[x]));
                for y in (x + 1)..n {
                    brute.insert(g.close_ids(&[x, y]));
                    for z in (y + 1)..n {
                        brute.insert(g.close_ids(&[x, y, z]));
                    }
                }
            }
            assert_eq!(lattice.len(), brute.len(), "lattice mismatch for {g:?}");
            for k in 1..=n {
                if n % k == 0 {
                    let direct = g.subgroups_of_order(k).len();
                    let filtered = lattice.iter().filter(|s| s.len() == k).count();
                    assert_eq!(direct, filtered, "order {k} in {g:?}");
                }
            }
        }
    }

    #[test]
    fn alpha_values() {
        let rep = alpha(&cyclic(2)).unwrap();
        assert_eq!(rep.alpha_subfield, 1);
        assert_eq!(rep.alpha_isoclass, 2);
        assert_eq!(rep.stabilizer_conjugates, 2);

        let rep = alpha(&cyclic(3)).unwrap();
        assert_eq!(rep.alpha_subfield, 1);
        assert_eq!(rep.alpha_isoclass, 3);
        assert_eq!(rep.stabilizer_conjugates, 3);
        assert!(rep.alpha_subfield <= rep.alpha_isoclass);
    }

    #[test]
    fn wreath_is_c2_times_a4() {
        let w = c2_wr_c3();
        let prod = direct_product(&cyclic(2), &a4_natural());
        assert!(abstract_isomorphic(&w, &prod));
        // and not isomorphic to S4, which shares the order
        let s4 = PermGroup::from_generators(
            4,
            vec![Perm::from_cycles(4, &[&[0, 1]]), Perm::from_cycles(4, &[&[0, 1, 2, 3]])],
        )
        .unwrap();
        assert!(!abstract_isomorphic(&w, &s4));
    }

    #[test]
    fn malle_indices() {
        // transposition in S4: 4 - 3 orbits
        let t = Perm::from_cycles(4, &[&[0, 1]]);
        assert_eq!(malle_index(&t), 1);

        let a46 = a4_degree6();
        assert_eq!(identify_transitive(&a46), "A4(6)");
        let (ind, a) = malle_invariants(&a46).unwrap();
        assert_eq!(ind, 2);
        assert_eq!(a, rat(1, 2));

        // V4 inside the degree-6 wreath: flips of two blocks
        let v4 = PermGroup::from_generators(
            6,
            vec![
                Perm::from_cycles(6, &[&[0, 1], &[2, 3]]),
                Perm::from_cycles(6, &[&[2, 3], &[4, 5]]),
            ],
        )
        .unwrap();
        let (ind, _) = malle_invariants(&v4).unwrap();
        assert_eq!(ind, 2);

        // single block flip in C2 wr H has index 1
        for h in [cyclic(2), cyclic(3), s3_regular()] {
            let w = wreath_with_c2(&h).unwrap();
            let (ind, _) = malle_invariants(&w).unwrap();
            assert_eq!(ind, 1);
        }

        assert!(malle_invariants(&PermGroup::from_generators(2, vec![]).unwrap()).is_err());
    }

    #[test]
    fn catalogue_degree_six() {
        assert_eq!(identify_transitive(&cyclic(6)), "C6");
        assert_eq!(identify_transitive(&s3_regular()), "S3(6)");
        assert_eq!(identify_transitive(&cyclic(4)), "C4");
        assert_eq!(identify_transitive(&v4_deg4()), "V4");
        assert_eq!(identify_transitive(&cyclic(2)), "C2");
        assert_eq!(identify_transitive(&s3_natural()), "S3");
    }

    #[test]
    fn coset_action_recovers_natural_s3() {
        let s3r = s3_regular();
        let stab_like = s3r.subgroups_of_order(2);
        assert_eq!(stab_like.len(), 3);
        let act = s3r.coset_action(&stab_like[0]);
        assert_eq!(act.degree(), 3);
        assert_eq!(act.order(), 6);
        assert!(perm_isomorphic(&act, &s3_natural()));
    }
}
