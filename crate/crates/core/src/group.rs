//! Materialized permutation groups with canonical element lists.
//!
//! Groups keep their full, lexicographically sorted element list behind an
//! `Arc`, so cloning a group is cheap and two groups are equal exactly when
//! their element lists coincide. All subgroup enumeration is bottom-up:
//! cyclic subgroups seeded from elements, closed under joins. Lattices are
//! memoized process-wide since the closure predicates revisit the same
//! groups constantly.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Materialization refuses to enumerate past this many elements unless the
/// caller raises the cap explicitly.
pub const DEFAULT_ORDER_CAP: usize = 1_000_000;

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Arc<Vec<Permutation>>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}
impl Eq for PermGroup {}

impl std::hash::Hash for PermGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.degree.hash(state);
        self.elements.hash(state);
    }
}

impl PartialOrd for PermGroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: degree, then order, then the element list itself.
impl Ord for PermGroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.order().cmp(&other.order()))
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, ⟨", self.degree, self.order())?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩)")
    }
}

/// Breadth-first closure of `gens` under right multiplication.
fn close_under_products(
    degree: usize,
    seed: &[Permutation],
    gens: &[Permutation],
    cap: usize,
) -> Result<Vec<Permutation>> {
    let mut set: HashSet<Permutation> = HashSet::with_capacity(seed.len() * 2 + 4);
    let id = Permutation::identity(degree);
    set.insert(id.clone());
    let mut queue: Vec<Permutation> = vec![id];
    for s in seed {
        if set.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    while let Some(e) = queue.pop() {
        for g in gens {
            let f = e.compose(g);
            if !set.contains(&f) {
                if set.len() >= cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                set.insert(f.clone());
                queue.push(f);
            }
        }
    }
    let mut elements: Vec<Permutation> = set.into_iter().collect();
    elements.sort_unstable();
    Ok(elements)
}

impl PermGroup {
    /// ⟨gens⟩, materialized breadth-first. Fails with `OrderCapExceeded`
    /// when the group would have more than `cap` elements.
    pub fn generate_with_cap(
        degree: usize,
        gens: Vec<Permutation>,
        cap: usize,
    ) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let seed: Vec<Permutation> = gens.clone();
        let elements = close_under_products(degree, &seed, &gens, cap)?;
        let generators = if gens.is_empty() {
            Vec::new()
        } else {
            gens
        };
        Ok(PermGroup {
            degree,
            generators,
            elements: Arc::new(elements),
        })
    }

    pub fn generate(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::generate_with_cap(degree, gens, DEFAULT_ORDER_CAP)
    }

    /// Wraps a full element list (sorted and deduplicated here). The caller
    /// is responsible for the list actually being closed; a small generating
    /// set is re-derived greedily so downstream generator-level loops stay
    /// cheap.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> PermGroup {
        let id = Permutation::identity(degree);
        if !elements.iter().any(|e| *e == id) {
            elements.push(id);
        }
        elements.sort_unstable();
        elements.dedup();
        let generators = reduce_generators(degree, &elements);
        PermGroup {
            degree,
            generators,
            elements: Arc::new(elements),
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_elements(degree, vec![Permutation::identity(degree)])
    }

    /// The full symmetric group on `n` points.
    pub fn symmetric(n: usize, cap: usize) -> Result<PermGroup> {
        if n <= 1 {
            return Ok(PermGroup::trivial(n));
        }
        let cycle = full_cycle(n);
        let swap = Permutation::from_cycles(n, &[vec![0, 1]]).unwrap();
        PermGroup::generate_with_cap(n, vec![cycle, swap], cap)
    }

    /// The left regular representation of Z_n: generated by `i ↦ i+1 mod n`.
    pub fn cyclic_regular(n: usize) -> PermGroup {
        if n <= 1 {
            return PermGroup::trivial(n);
        }
        PermGroup::generate_with_cap(n, vec![full_cycle(n)], n + 1).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn elements_arc(&self) -> Arc<Vec<Permutation>> {
        Arc::clone(&self.elements)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn orbits(&self) -> OrbitPartition {
        orbit_partition(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().cells.len() == 1
    }

    /// Transitive with trivial point stabilizers.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == self.degree.max(1)
    }

    pub fn is_symmetric_group(&self) -> bool {
        self.order() == factorial(self.degree)
    }

    /// Stabilizer of a single point, by filtering the element list.
    pub fn point_stabilizer(&self, point: usize) -> PermGroup {
        let elems = self
            .elements
            .iter()
            .filter(|e| e.apply(point) == point)
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, elems)
    }

    /// Least conjugating element of `self` carrying `h1` onto `h2`, searched
    /// exhaustively over the element list.
    pub fn conjugator(&self, h1: &PermGroup, h2: &PermGroup) -> Result<Option<Permutation>> {
        if !h1.is_subgroup_of(self) || !h2.is_subgroup_of(self) {
            return Err(Error::NotASubgroup);
        }
        if h1.order() != h2.order() {
            return Ok(None);
        }
        for g in self.elements.iter() {
            if conjugate_set(h1, g) == *h2.elements {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product::<usize>().max(1)
}

fn full_cycle(n: usize) -> Permutation {
    Permutation::from_images(&(0..n).map(|i| (i + 1) % n).collect::<Vec<_>>()).unwrap()
}

/// Sorted element list of `g⁻¹ H g`.
fn conjugate_set(h: &PermGroup, g: &Permutation) -> Vec<Permutation> {
    let mut v: Vec<Permutation> = h.elements().iter().map(|e| e.conjugate_by(g)).collect();
    v.sort_unstable();
    v
}

pub fn conjugate_group(h: &PermGroup, g: &Permutation) -> PermGroup {
    PermGroup::from_elements(h.degree(), conjugate_set(h, g))
}

/// Greedy small generating set: scan elements by descending element order,
/// adding any element not yet generated.
fn reduce_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    if elements.len() <= 1 {
        return Vec::new();
    }
    let mut by_order: Vec<&Permutation> = elements.iter().filter(|e| !e.is_identity()).collect();
    by_order.sort_by_key(|e| std::cmp::Reverse(e.order()));
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current: Vec<Permutation> = vec![Permutation::identity(degree)];
    for e in by_order {
        if current.binary_search(e).is_ok() {
            continue;
        }
        gens.push(e.clone());
        current = close_under_products(degree, &gens, &gens, elements.len() + 1)
            .expect("closure of a subset of a closed list");
        if current.len() == elements.len() {
            break;
        }
    }
    gens
}

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

/// Partition of the point set into orbits; cells sorted by least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub degree: usize,
    pub cells: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn cell_of(&self, point: usize) -> &[usize] {
        self.cells
            .iter()
            .find(|c| c.contains(&point))
            .expect("point in some orbit")
    }
}

/// Orbits need only the generators; no materialization happens here.
pub fn orbit_partition(degree: usize, gens: &[Permutation]) -> OrbitPartition {
    let mut seen = vec![false; degree];
    let mut cells = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut cell = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < cell.len() {
            let p = cell[i];
            for g in gens {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    cell.push(q);
                }
            }
            i += 1;
        }
        cell.sort_unstable();
        cells.push(cell);
    }
    OrbitPartition { degree, cells }
}

/// The action of `g` on an orbit, relabeled `0..|orbit|-1` in increasing
/// order of the orbit's points.
pub fn restrict_to_orbit(g: &Permutation, orbit: &[usize]) -> Permutation {
    let pos: HashMap<usize, usize> = orbit.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let images: Vec<usize> = orbit.iter().map(|&p| pos[&g.apply(p)]).collect();
    Permutation::from_images(&images).expect("orbit is invariant")
}

/// `{g^O : g ∈ G}` on `|O|` relabeled points, duplicates merged.
pub fn transitive_constituent(g: &PermGroup, orbit: &[usize]) -> Result<PermGroup> {
    let orbits = g.orbits();
    let mut sorted = orbit.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if !orbits.cells.iter().any(|c| *c == sorted) {
        return Err(Error::NotAnOrbit);
    }
    let elems: Vec<Permutation> = g
        .elements()
        .iter()
        .map(|e| restrict_to_orbit(e, &sorted))
        .collect();
    Ok(PermGroup::from_elements(sorted.len(), elems))
}

// ---------------------------------------------------------------------------
// Support
// ---------------------------------------------------------------------------

/// Union of the supports of all elements (computed from generator orbits).
pub fn group_support(g: &PermGroup) -> Vec<usize> {
    let orbits = orbit_partition(g.degree(), g.generators());
    let mut pts: Vec<usize> = orbits
        .cells
        .iter()
        .filter(|c| c.len() > 1)
        .flat_map(|c| c.iter().copied())
        .collect();
    pts.sort_unstable();
    pts
}

// ---------------------------------------------------------------------------
// Regular cyclic subgroups, conjugacy, pronormality, centralizer
// ---------------------------------------------------------------------------

/// All subgroups ⟨g⟩ with g a single full cycle; each is regular of order
/// equal to the degree. Deduplicated and canonically sorted.
pub fn regular_cyclic_subgroups(g: &PermGroup) -> Vec<PermGroup> {
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut out = Vec::new();
    for e in g.elements() {
        if !e.is_full_cycle() {
            continue;
        }
        let sub = PermGroup::generate_with_cap(g.degree(), vec![e.clone()], g.degree() + 1)
            .expect("cyclic subgroup within cap");
        if seen.insert(sub.elements().to_vec()) {
            out.push(sub);
        }
    }
    out.sort();
    out
}

/// All elements `γ ∈ ambient` with `γ⁻¹⟨u⟩γ = ⟨v⟩` for a full cycle u:
/// such a γ satisfies `γ⁻¹uγ = w` for some full-cycle generator w of ⟨v⟩,
/// i.e. `u∘γ = γ∘w`, so γ walks the w-cycle along the u-cycle and the
/// complete candidate set has at most n·φ(n) members. Returns the least
/// member of `ambient` among them, or None.
pub fn cyclic_conjugator(
    ambient: &PermGroup,
    u: &Permutation,
    v_group: &PermGroup,
) -> Option<Permutation> {
    let n = u.degree();
    let u_cycle = cycle_from(u, 0);
    let mut best: Option<Permutation> = None;
    for w in v_group.elements() {
        if !w.is_full_cycle() {
            continue;
        }
        let w_cycle = cycle_from(w, 0);
        for shift in 0..n {
            let mut images = vec![0usize; n];
            for i in 0..n {
                images[w_cycle[i]] = u_cycle[(i + shift) % n];
            }
            let g = Permutation::from_images(&images).unwrap();
            if ambient.contains(&g) && best.as_ref().is_none_or(|b| g < *b) {
                best = Some(g);
            }
        }
    }
    best
}

fn cycle_from(p: &Permutation, start: usize) -> Vec<usize> {
    let mut cycle = vec![start];
    let mut q = p.apply(start);
    while q != start {
        cycle.push(q);
        q = p.apply(q);
    }
    cycle
}

#[derive(Clone, Debug)]
pub struct PronormalReport {
    pub pronormal: bool,
    /// One `(g, k)` pair per distinct conjugate of the subgroup.
    pub witnesses: Vec<(Permutation, Permutation)>,
    pub violator: Option<Permutation>,
}

/// H is pronormal in G when for every g ∈ G some k ∈ ⟨H, g⁻¹Hg⟩ conjugates
/// g⁻¹Hg back onto H. The g-loop is deduplicated by the conjugate subgroup,
/// which is all the condition depends on.
pub fn is_pronormal(g: &PermGroup, h: &PermGroup) -> Result<PronormalReport> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup);
    }
    let mut seen: HashMap<Vec<Permutation>, ()> = HashMap::new();
    let mut witnesses = Vec::new();
    for conj_by in g.elements() {
        let conj = conjugate_set(h, conj_by);
        if seen.contains_key(&conj) {
            continue;
        }
        seen.insert(conj.clone(), ());
        let conj_group = PermGroup::from_elements(g.degree(), conj);
        let mut gens = h.generators().to_vec();
        gens.extend(conj_group.generators().iter().cloned());
        let join = PermGroup::generate_with_cap(g.degree(), gens, g.order() + 1)
            .expect("join of subgroups stays within the ambient group");
        let mut found = None;
        for k in join.elements() {
            if conjugate_set(&conj_group, k) == *h.elements() {
                found = Some(k.clone());
                break;
            }
        }
        match found {
            Some(k) => witnesses.push((conj_by.clone(), k)),
            None => {
                return Ok(PronormalReport {
                    pronormal: false,
                    witnesses,
                    violator: Some(conj_by.clone()),
                })
            }
        }
    }
    Ok(PronormalReport {
        pronormal: true,
        witnesses,
        violator: None,
    })
}

/// Elements of `g` commuting with every generator of `h`.
pub fn centralizer(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if g.degree() != h.degree() {
        return Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: h.degree(),
        });
    }
    let elems: Vec<Permutation> = g
        .elements()
        .iter()
        .filter(|e| h.generators().iter().all(|x| e.compose(x) == x.compose(e)))
        .cloned()
        .collect();
    Ok(PermGroup::from_elements(g.degree(), elems))
}

// ---------------------------------------------------------------------------
// Subgroup enumeration
// ---------------------------------------------------------------------------

fn lattice_cache() -> &'static Mutex<HashMap<Vec<u8>, Arc<Vec<PermGroup>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u8>, Arc<Vec<PermGroup>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn group_key(g: &PermGroup) -> Vec<u8> {
    let mut key = Vec::with_capacity(1 + g.order() * g.degree());
    key.push(g.degree() as u8);
    for e in g.elements() {
        for img in e.images() {
            key.push(img as u8);
        }
    }
    key
}

/// Every subgroup of `g`, canonically sorted. Built as the closure of the
/// cyclic subgroups under joins with cyclic subgroups; results are memoized
/// process-wide by element list.
pub fn subgroup_lattice(g: &PermGroup) -> Arc<Vec<PermGroup>> {
    let key = group_key(g);
    if let Some(hit) = lattice_cache().lock().unwrap().get(&key) {
        return Arc::clone(hit);
    }
    let lattice = Arc::new(build_lattice(g));
    lattice_cache()
        .lock()
        .unwrap()
        .insert(key, Arc::clone(&lattice));
    lattice
}

fn build_lattice(g: &PermGroup) -> Vec<PermGroup> {
    let degree = g.degree();
    // Cyclic seeds: one least generator per distinct cyclic subgroup.
    let mut cyclic_seen: HashSet<Vec<Permutation>> = HashSet::new();
    let mut seeds: Vec<(Permutation, Vec<Permutation>)> = Vec::new();
    for e in g.elements() {
        if e.is_identity() {
            continue;
        }
        let elems = close_under_products(degree, &[e.clone()], &[e.clone()], g.order() + 1)
            .expect("cyclic subgroup fits");
        if cyclic_seen.insert(elems.clone()) {
            seeds.push((e.clone(), elems));
        }
    }

    let mut pool: Vec<PermGroup> = vec![PermGroup::trivial(degree)];
    let mut index: HashMap<Vec<Permutation>, usize> = HashMap::new();
    index.insert(pool[0].elements().to_vec(), 0);
    for (gen, elems) in &seeds {
        if !index.contains_key(elems) {
            let sub = PermGroup {
                degree,
                generators: vec![gen.clone()],
                elements: Arc::new(elems.clone()),
            };
            index.insert(elems.clone(), pool.len());
            pool.push(sub);
        }
    }

    let mut next = 0;
    while next < pool.len() {
        let current = pool[next].clone();
        next += 1;
        if current.order() == g.order() {
            continue;
        }
        for (gen, _) in &seeds {
            if current.contains(gen) {
                continue;
            }
            let mut gens = current.generators().to_vec();
            gens.push(gen.clone());
            let elems =
                close_under_products(degree, current.elements(), &gens, g.order() + 1)
                    .expect("join of subgroups stays inside g");
            if index.contains_key(&elems) {
                continue;
            }
            let generators = reduce_generators(degree, &elems);
            let sub = PermGroup {
                degree,
                generators,
                elements: Arc::new(elems.clone()),
            };
            index.insert(elems, pool.len());
            pool.push(sub);
        }
    }
    pool.sort();
    pool
}

pub fn all_subgroups(g: &PermGroup) -> Vec<PermGroup> {
    subgroup_lattice(g).as_ref().clone()
}

/// All transitive subgroups of `g` (not merely up to conjugacy).
pub fn transitive_subgroups(g: &PermGroup) -> Vec<PermGroup> {
    subgroup_lattice(g)
        .iter()
        .filter(|h| h.is_transitive())
        .cloned()
        .collect()
}

// ---------------------------------------------------------------------------
// Normal structure
// ---------------------------------------------------------------------------

/// Closes `seeds` under conjugation by the generators of `g`, then
/// generates. The result is the least normal subgroup of `g` containing the
/// seeds.
pub fn normal_closure(g: &PermGroup, seeds: &[Permutation]) -> PermGroup {
    let mut set: HashSet<Permutation> = seeds.iter().cloned().collect();
    let mut queue: Vec<Permutation> = seeds.to_vec();
    while let Some(s) = queue.pop() {
        for x in g.generators() {
            let c = s.conjugate_by(x);
            if set.insert(c.clone()) {
                queue.push(c);
            }
        }
    }
    let gens: Vec<Permutation> = set.into_iter().collect();
    PermGroup::generate_with_cap(g.degree(), gens, g.order() + 1)
        .expect("normal closure stays inside g")
}

pub fn is_normal_in(h: &PermGroup, g: &PermGroup) -> bool {
    h.is_subgroup_of(g)
        && g.generators()
            .iter()
            .all(|x| h.generators().iter().all(|e| h.contains(&e.conjugate_by(x))))
}

/// Commutator subgroup, as the normal closure of generator commutators.
pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    let mut comms = Vec::new();
    for a in g.generators() {
        for b in g.generators() {
            let c = a
                .inverse()
                .compose(&b.inverse())
                .compose(&a.compose(b));
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    if comms.is_empty() {
        return PermGroup::trivial(g.degree());
    }
    normal_closure(g, &comms)
}

pub fn is_solvable(g: &PermGroup) -> bool {
    let mut current = g.clone();
    loop {
        let next = derived_subgroup(&current);
        if next.order() == current.order() {
            return current.is_trivial();
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn gen(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::generate(n, gens.iter().map(|s| perm(n, s)).collect()).unwrap()
    }

    #[test]
    fn generate_examples() {
        assert_eq!(gen(3, &["(0 1 2)"]).order(), 3);
        // breadth-first closure enumerates the dihedral group of order 8
        assert_eq!(gen(4, &["(0 1 2 3)", "(0 2)"]).order(), 8);
        assert_eq!(PermGroup::generate(1, vec![]).unwrap().order(), 1);
    }

    #[test]
    fn order_cap_signals_desk_scale() {
        let err = PermGroup::generate_with_cap(
            4,
            vec![perm(4, "(0 1 2 3)"), perm(4, "(0 1)")],
            10,
        );
        assert!(matches!(err, Err(Error::OrderCapExceeded { cap: 10 })));
    }

    #[test]
    fn orbit_examples() {
        let g = gen(4, &["(0 1)"]);
        assert_eq!(g.orbits().cells, vec![vec![0, 1], vec![2], vec![3]]);
        assert!(gen(4, &["(0 1 2 3)"]).is_transitive());
        let klein = gen(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        assert_eq!(klein.orbits().cells, vec![vec![0, 1, 2, 3]]);
        assert_eq!(klein.order(), 4);
    }

    #[test]
    fn transitive_constituent_examples() {
        let g = gen(4, &["(0 1)"]);
        let c = transitive_constituent(&g, &[0, 1]).unwrap();
        assert_eq!(c.degree(), 2);
        assert_eq!(c.order(), 2);

        let g = gen(5, &["(0 1)(2 3 4)"]);
        let c = transitive_constituent(&g, &[2, 3, 4]).unwrap();
        assert_eq!(c.order(), 3);

        let g = gen(4, &["(0 1 2 3)"]);
        let c = transitive_constituent(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c, g);

        assert!(transitive_constituent(&gen(4, &["(0 1)"]), &[0, 2]).is_err());
    }

    #[test]
    fn left_regular_representation() {
        let z4 = PermGroup::cyclic_regular(4);
        assert_eq!(z4.order(), 4);
        assert_eq!(
            z4.generators()[0].images().collect::<Vec<_>>(),
            vec![1, 2, 3, 0]
        );
        assert_eq!(PermGroup::cyclic_regular(1).order(), 1);
        let z6 = PermGroup::cyclic_regular(6);
        assert_eq!(z6.order(), 6);
        assert!(z6.is_transitive());
        assert!(z6.is_regular());
    }

    #[test]
    fn regular_cyclic_subgroup_examples() {
        let s3 = PermGroup::symmetric(3, 10).unwrap();
        // both 3-cycles generate the same subgroup
        assert_eq!(regular_cyclic_subgroups(&s3).len(), 1);
        let z4 = PermGroup::cyclic_regular(4);
        assert_eq!(regular_cyclic_subgroups(&z4), vec![z4.clone()]);
        let klein = gen(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        assert!(regular_cyclic_subgroups(&klein).is_empty());
    }

    #[test]
    fn conjugacy_examples() {
        let s3 = PermGroup::symmetric(3, 10).unwrap();
        let h1 = gen(3, &["(0 1)"]);
        let h2 = gen(3, &["(1 2)"]);
        let w = s3.conjugator(&h1, &h2).unwrap().unwrap();
        assert_eq!(conjugate_group(&h1, &w), h2);
        // identity comes back when the subgroups coincide
        assert!(s3.conjugator(&h1, &h1).unwrap().unwrap().is_identity());
        // conjugation preserves cycle type
        let s4 = PermGroup::symmetric(4, 30).unwrap();
        let a = gen(4, &["(0 1)"]);
        let b = gen(4, &["(0 1)(2 3)"]);
        assert!(s4.conjugator(&a, &b).unwrap().is_none());
    }

    #[test]
    fn cyclic_conjugator_agrees_with_exhaustive_search() {
        let s5 = PermGroup::symmetric(5, 130).unwrap();
        let x = PermGroup::cyclic_regular(5);
        let y = gen(5, &["(0 2 4 1 3)"]);
        let fast = cyclic_conjugator(&s5, &x.generators()[0], &y).unwrap();
        assert_eq!(conjugate_group(&x, &fast), y);
        let slow = s5.conjugator(&x, &y).unwrap().unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn pronormal_examples() {
        let s3 = PermGroup::symmetric(3, 10).unwrap();
        assert!(is_pronormal(&s3, &s3).unwrap().pronormal);
        assert!(is_pronormal(&s3, &gen(3, &["(0 1)"])).unwrap().pronormal);
        // Sylow subgroups are pronormal
        let s4 = PermGroup::symmetric(4, 30).unwrap();
        let syl3 = gen(4, &["(0 1 2)"]);
        assert!(is_pronormal(&s4, &syl3).unwrap().pronormal);
    }

    #[test]
    fn centralizer_examples() {
        let s4 = PermGroup::symmetric(4, 30).unwrap();
        // center of S_n is trivial for n >= 3
        assert!(centralizer(&s4, &s4).unwrap().is_trivial());
        assert_eq!(centralizer(&s4, &PermGroup::trivial(4)).unwrap(), s4);
        // regular abelian subgroups are self-centralizing
        let z4 = PermGroup::cyclic_regular(4);
        assert_eq!(centralizer(&s4, &z4).unwrap(), z4);
    }

    #[test]
    fn support_examples() {
        assert_eq!(perm(4, "(0 1)(2 3)").support(), vec![0, 1, 2, 3]);
        assert!(Permutation::identity(4).support().is_empty());
        let g = gen(5, &["(0 1)", "(1 2)"]);
        assert_eq!(group_support(&g), vec![0, 1, 2]);
    }

    #[test]
    fn orbit_stabilizer_holds_on_sample_groups() {
        for g in [
            PermGroup::symmetric(4, 30).unwrap(),
            gen(4, &["(0 1 2 3)", "(0 2)"]),
            gen(6, &["(0 1 2 3 4 5)"]),
            gen(4, &["(0 1)(2 3)", "(0 2)(1 3)"]),
        ] {
            let orbits = g.orbits();
            for p in 0..g.degree() {
                let orbit = orbits.cell_of(p).len();
                let stab = g.point_stabilizer(p).order();
                assert_eq!(orbit * stab, g.order());
            }
        }
    }

    #[test]
    fn transitive_subgroups_of_s4() {
        let s4 = PermGroup::symmetric(4, 30).unwrap();
        let mut orders: Vec<usize> = transitive_subgroups(&s4).iter().map(|h| h.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![4, 4, 4, 4, 8, 8, 8, 12, 24]);
    }

    #[test]
    fn transitive_subgroups_of_s3_and_regular() {
        let s3 = PermGroup::symmetric(3, 10).unwrap();
        let subs = transitive_subgroups(&s3);
        assert_eq!(subs.len(), 2);
        let z4 = PermGroup::cyclic_regular(4);
        assert_eq!(transitive_subgroups(&z4), vec![z4.clone()]);
    }

    /// Independent oracle: the lattice must match a pairwise-join closure
    /// of all cyclic subgroups, computed without the worklist machinery.
    #[test]
    fn lattice_matches_pairwise_join_oracle_on_s4() {
        let s4 = PermGroup::symmetric(4, 30).unwrap();
        let lattice = all_subgroups(&s4);

        let mut oracle: HashSet<Vec<Permutation>> = HashSet::new();
        oracle.insert(vec![Permutation::identity(4)]);
        for e in s4.elements() {
            let c = PermGroup::generate(4, vec![e.clone()]).unwrap();
            oracle.insert(c.elements().to_vec());
        }
        loop {
            let snapshot: Vec<Vec<Permutation>> = oracle.iter().cloned().collect();
            let before = oracle.len();
            for a in &snapshot {
                for b in &snapshot {
                    let mut gens = a.clone();
                    gens.extend(b.iter().cloned());
                    let joined = close_under_products(4, &gens, &gens, 30).unwrap();
                    oracle.insert(joined);
                }
            }
            if oracle.len() == before {
                break;
            }
        }
        assert_eq!(lattice.len(), oracle.len());
        assert_eq!(lattice.len(), 30);
        for h in &lattice {
            assert!(oracle.contains(h.elements()));
        }
    }

    #[test]
    fn solvability_and_derived_series() {
        assert!(is_solvable(&PermGroup::symmetric(4, 30).unwrap()));
        assert!(is_solvable(&PermGroup::cyclic_regular(6)));
        let s5 = PermGroup::symmetric(5, 130).unwrap();
        assert!(!is_solvable(&s5));
    }

    #[test]
    fn normal_closure_of_odd_part() {
        let s4 = PermGroup::symmetric(4, 30).unwrap();
        let v = normal_closure(&s4, &[perm(4, "(0 1)(2 3)")]);
        assert_eq!(v.order(), 4);
        assert!(is_normal_in(&v, &s4));
    }
}
