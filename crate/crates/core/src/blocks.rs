//! Block systems of transitive groups and the machinery around them:
//! minimal blocks, fix and quotient, the refinement order, imprimitivity
//! sequences, wreath and direct products.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::group::{orbit_partition, PermGroup};
use crate::perm::Permutation;

/// A partition of `{0..n-1}` into equal-size cells. Cells are sorted
/// internally and listed by least element, so the representation is
/// canonical and systems compare by value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockSystem {
    degree: usize,
    cells: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn from_cells(degree: usize, mut cells: Vec<Vec<usize>>) -> Result<BlockSystem> {
        for cell in &mut cells {
            cell.sort_unstable();
        }
        cells.sort();
        let mut covered = vec![false; degree];
        let size = cells.first().map(|c| c.len()).unwrap_or(0);
        for cell in &cells {
            if cell.len() != size {
                return Err(Error::NotABlockSystem);
            }
            for &p in cell {
                if p >= degree || covered[p] {
                    return Err(Error::NotABlockSystem);
                }
                covered[p] = true;
            }
        }
        if covered.iter().any(|&c| !c) {
            return Err(Error::NotABlockSystem);
        }
        Ok(BlockSystem { degree, cells })
    }

    pub fn singletons(degree: usize) -> BlockSystem {
        BlockSystem {
            degree,
            cells: (0..degree).map(|p| vec![p]).collect(),
        }
    }

    pub fn full(degree: usize) -> BlockSystem {
        BlockSystem {
            degree,
            cells: vec![(0..degree).collect()],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_size(&self) -> usize {
        self.cells.first().map(|c| c.len()).unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.cell_count() <= 1 || self.cell_size() == 1
    }

    /// `cell_index()[p]` is the index of the cell containing `p`.
    pub fn cell_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.degree];
        for (i, cell) in self.cells.iter().enumerate() {
            for &p in cell {
                idx[p] = i;
            }
        }
        idx
    }

    pub fn cell_of(&self, point: usize) -> &[usize] {
        let idx = self.cell_index();
        &self.cells[idx[point]]
    }

    /// Generator-level block test: every generator must permute the cells.
    pub fn is_block_system_of_gens(&self, gens: &[Permutation]) -> bool {
        let cell_set: HashSet<&[usize]> = self.cells.iter().map(|c| c.as_slice()).collect();
        gens.iter().all(|g| {
            self.cells.iter().all(|cell| {
                let mut image: Vec<usize> = cell.iter().map(|&p| g.apply(p)).collect();
                image.sort_unstable();
                cell_set.contains(image.as_slice())
            })
        })
    }

    pub fn is_block_system_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree() && self.is_block_system_of_gens(g.generators())
    }
}

/// Serializes as a sorted list of sorted cells, e.g. `[[0,2],[1,3]]`.
impl fmt::Display for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, cell) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{}]", cell.iter().join(","))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Minimal blocks
// ---------------------------------------------------------------------------

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi;
        true
    }
}

/// The smallest block of a transitive group containing the seed: the finest
/// G-congruence merging the seed points, computed by a union-find fixpoint
/// over the generators.
pub fn minimal_block(g: &PermGroup, seed: &[usize]) -> Result<Vec<usize>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    assert!(seed.len() >= 2, "seed needs at least two points");
    let n = g.degree();
    let mut uf = UnionFind::new(n);
    for &p in &seed[1..] {
        uf.union(seed[0], p);
    }
    loop {
        let mut changed = false;
        for gen in g.generators() {
            for p in 0..n {
                let r = uf.find(p);
                changed |= uf.union(gen.apply(p), gen.apply(r));
            }
        }
        if !changed {
            break;
        }
    }
    let root = uf.find(seed[0]);
    Ok((0..n).filter(|&p| uf.find(p) == root).collect())
}

// ---------------------------------------------------------------------------
// Enumerating block systems
// ---------------------------------------------------------------------------

/// Expands a block through point 0 to its full conjugate system.
fn system_of_block(g: &PermGroup, block: &[usize]) -> BlockSystem {
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = vec![block.to_vec()];
    seen.insert(block.to_vec());
    while let Some(cell) = queue.pop() {
        for gen in g.generators() {
            let mut image: Vec<usize> = cell.iter().map(|&p| gen.apply(p)).collect();
            image.sort_unstable();
            if seen.insert(image.clone()) {
                queue.push(image);
            }
        }
        cells.push(cell);
    }
    BlockSystem::from_cells(g.degree(), cells).expect("conjugate blocks partition the points")
}

/// Every block system of a transitive group, trivial ones included.
///
/// Every block containing 0 is a union of orbits of the stabilizer of 0, so
/// the candidates are the orbit unions of size dividing n, each confirmed by
/// the minimal-block closure.
pub fn all_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    let mut systems = vec![BlockSystem::singletons(n)];
    if n > 1 {
        systems.push(BlockSystem::full(n));
    }
    let stab = g.point_stabilizer(0);
    let orbits = orbit_partition(n, stab.generators());
    let others: Vec<&Vec<usize>> = orbits.cells.iter().filter(|c| !c.contains(&0)).collect();
    for mask in 1u64..(1u64 << others.len()) {
        let mut block = vec![0];
        for (i, orbit) in others.iter().enumerate() {
            if mask & (1 << i) != 0 {
                block.extend(orbit.iter().copied());
            }
        }
        if block.len() == n || n % block.len() != 0 {
            continue;
        }
        block.sort_unstable();
        if minimal_block(g, &block)? == block {
            systems.push(system_of_block(g, &block));
        }
    }
    systems.sort_by(|a, b| {
        a.cell_size()
            .cmp(&b.cell_size())
            .then_with(|| a.cells.cmp(&b.cells))
    });
    systems.dedup();
    Ok(systems)
}

/// `{g ∈ G : g(B) = B for every cell B}`; always normal in G.
pub fn fix(g: &PermGroup, system: &BlockSystem) -> Result<PermGroup> {
    if !system.is_block_system_of(g) {
        return Err(Error::NotABlockSystem);
    }
    let idx = system.cell_index();
    let elems: Vec<Permutation> = g
        .elements()
        .iter()
        .filter(|e| (0..g.degree()).all(|p| idx[e.apply(p)] == idx[p]))
        .cloned()
        .collect();
    Ok(PermGroup::from_elements(g.degree(), elems))
}

/// A block system is normal exactly when it is the orbit partition of a
/// normal subgroup; since fix(G,B) is normal and its orbits refine the
/// cells, that happens exactly when the orbits of fix(G,B) are the cells.
pub fn normal_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    let all = all_block_systems(g)?;
    let mut out = Vec::new();
    for system in all {
        if is_normal_block_system(g, &system)? {
            out.push(system);
        }
    }
    Ok(out)
}

pub fn is_normal_block_system(g: &PermGroup, system: &BlockSystem) -> Result<bool> {
    let f = fix(g, system)?;
    let orbits = f.orbits();
    Ok(orbits.cells == *system.cells())
}

// ---------------------------------------------------------------------------
// Quotient actions
// ---------------------------------------------------------------------------

/// The induced action of G on the cells of a block system, with the cells
/// relabeled by least element. `element_images[i]` is the action of
/// `source.elements()[i]`; the map is a homomorphism with kernel fix(G,B).
#[derive(Clone, Debug)]
pub struct QuotientAction {
    pub source: PermGroup,
    pub system: BlockSystem,
    pub quotient: PermGroup,
    pub element_images: Vec<Permutation>,
}

impl QuotientAction {
    pub fn kernel(&self) -> PermGroup {
        let elems: Vec<Permutation> = self
            .source
            .elements()
            .iter()
            .zip(&self.element_images)
            .filter(|(_, img)| img.is_identity())
            .map(|(e, _)| e.clone())
            .collect();
        PermGroup::from_elements(self.source.degree(), elems)
    }

    pub fn image_of(&self, e: &Permutation) -> Option<&Permutation> {
        self.source
            .elements()
            .binary_search(e)
            .ok()
            .map(|i| &self.element_images[i])
    }
}

/// The action of a single element on the cells.
pub fn quotient_action_of(g: &Permutation, system: &BlockSystem) -> Permutation {
    let idx = system.cell_index();
    let images: Vec<usize> = system
        .cells()
        .iter()
        .map(|cell| idx[g.apply(cell[0])])
        .collect();
    Permutation::from_images(&images).expect("block system images are a permutation of cells")
}

pub fn quotient(g: &PermGroup, system: &BlockSystem) -> Result<QuotientAction> {
    if !system.is_block_system_of(g) {
        return Err(Error::NotABlockSystem);
    }
    let element_images: Vec<Permutation> = g
        .elements()
        .iter()
        .map(|e| quotient_action_of(e, system))
        .collect();
    let quotient = PermGroup::from_elements(system.cell_count(), element_images.clone());
    Ok(QuotientAction {
        source: g.clone(),
        system: system.clone(),
        quotient,
        element_images,
    })
}

// ---------------------------------------------------------------------------
// Refinement order
// ---------------------------------------------------------------------------

/// Outcome of comparing block systems under refinement. `Equal` and
/// `Strict` carry the quotient system C/B living on B's cell indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refinement {
    Strict(BlockSystem),
    Equal(BlockSystem),
    Incomparable,
}

/// Does `b` refine `c` (every b-cell inside a c-cell)?
pub fn refines(b: &BlockSystem, c: &BlockSystem) -> Result<Refinement> {
    if b.degree() != c.degree() {
        return Err(Error::DegreeMismatch {
            expected: b.degree(),
            found: c.degree(),
        });
    }
    let c_idx = c.cell_index();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); c.cell_count()];
    for (bi, cell) in b.cells().iter().enumerate() {
        let target = c_idx[cell[0]];
        if cell.iter().any(|&p| c_idx[p] != target) {
            return Ok(Refinement::Incomparable);
        }
        groups[target].push(bi);
    }
    let quotient = BlockSystem::from_cells(b.cell_count(), groups)
        .expect("cells of b partition the cells of c");
    if b == c {
        Ok(Refinement::Equal(quotient))
    } else {
        Ok(Refinement::Strict(quotient))
    }
}

pub fn refines_weakly(b: &BlockSystem, c: &BlockSystem) -> bool {
    matches!(
        refines(b, c),
        Ok(Refinement::Strict(_)) | Ok(Refinement::Equal(_))
    )
}

// ---------------------------------------------------------------------------
// Imprimitivity sequences
// ---------------------------------------------------------------------------

/// Number of prime divisors with multiplicity.
pub fn omega(n: usize) -> usize {
    let mut n = n;
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            n /= p;
            count += 1;
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    count
}

/// A maximal chain of block systems with prime index ratios: singletons up
/// to the full set in Ω(n) prime steps.
#[derive(Clone, Debug)]
pub struct ImprimitivitySequence {
    pub systems: Vec<BlockSystem>,
    pub ratios: Vec<usize>,
    pub normal_flags: Vec<bool>,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| n % p != 0)
}

/// All chains B_0 ≺ B_1 ≺ … ≺ B_m with B_0 singletons, B_m the full set
/// and every cell-size ratio prime (hence m = Ω(n)). With `normal_only`,
/// every level must be a normal block system.
pub fn imprimitivity_sequences(
    g: &PermGroup,
    normal_only: bool,
) -> Result<Vec<ImprimitivitySequence>> {
    let systems = if normal_only {
        normal_block_systems(g)?
    } else {
        all_block_systems(g)?
    };
    let n = g.degree();
    let mut chains = Vec::new();
    let mut stack = vec![vec![BlockSystem::singletons(n)]];
    while let Some(chain) = stack.pop() {
        let last = chain.last().unwrap();
        if last.cell_size() == n.max(1) {
            let ratios: Vec<usize> = chain
                .windows(2)
                .map(|w| w[1].cell_size() / w[0].cell_size())
                .collect();
            let normal_flags: Vec<bool> = chain
                .iter()
                .map(|s| is_normal_block_system(g, s).unwrap_or(false))
                .collect();
            chains.push(ImprimitivitySequence {
                systems: chain,
                ratios,
                normal_flags,
            });
            continue;
        }
        // push extensions in reverse canonical order so the stack pops them
        // canonically
        for next in systems.iter().rev() {
            if next.cell_size() % last.cell_size() != 0 {
                continue;
            }
            let ratio = next.cell_size() / last.cell_size();
            if !is_prime(ratio) {
                continue;
            }
            if matches!(refines(last, next), Ok(Refinement::Strict(_))) {
                let mut extended = chain.clone();
                extended.push(next.clone());
                stack.push(extended);
            }
        }
    }
    chains.sort_by(|a, b| {
        let ka: Vec<&Vec<Vec<usize>>> = a.systems.iter().map(|s| &s.cells).collect();
        let kb: Vec<&Vec<Vec<usize>>> = b.systems.iter().map(|s| &s.cells).collect();
        ka.cmp(&kb)
    });
    Ok(chains)
}

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

/// The full wreath product of G ≤ Sym(X) and H ≤ Sym(Y) acting on X×Y by
/// `(x,y) ↦ (g(x), h_x(y))`, with point (x,y) encoded as `x·|Y| + y`.
/// Returns the product together with its lexi-partition (the rows), which
/// is verified to be a normal block system.
pub fn wreath_product(
    g: &PermGroup,
    h: &PermGroup,
    cap: usize,
) -> Result<(PermGroup, BlockSystem)> {
    let xs = g.degree();
    let ys = h.degree();
    let order = (h.order() as u128)
        .checked_pow(xs as u32)
        .and_then(|p| p.checked_mul(g.order() as u128))
        .ok_or(Error::OrderCapExceeded { cap })?;
    if order > cap as u128 {
        return Err(Error::OrderCapExceeded { cap });
    }
    let degree = xs * ys;
    let mut elements = Vec::with_capacity(order as usize);
    for top in g.elements() {
        let slots: Vec<&[Permutation]> = (0..xs).map(|_| h.elements()).collect();
        for choice in slots.into_iter().multi_cartesian_product() {
            let mut images = vec![0usize; degree];
            for x in 0..xs {
                for y in 0..ys {
                    images[x * ys + y] = top.apply(x) * ys + choice[x].apply(y);
                }
            }
            elements.push(Permutation::from_images(&images).unwrap());
        }
    }
    let product = PermGroup::from_elements(degree, elements);
    let lexi = BlockSystem::from_cells(
        degree,
        (0..xs).map(|x| (x * ys..(x + 1) * ys).collect()).collect(),
    )
    .unwrap();
    assert!(lexi.is_block_system_of(&product));
    assert!(is_normal_block_system(&product, &lexi).unwrap());
    Ok((product, lexi))
}

/// The canonical product action of H ≤ Sym(Z_m) and K ≤ Sym(Z_k) on
/// Z_m × Z_k, `(h,k)(i,j) = (h(i), k(j))`, point (i,j) encoded `i·k + j`.
pub fn direct_product_canonical(h: &PermGroup, k: &PermGroup, cap: usize) -> Result<PermGroup> {
    let m = h.degree();
    let kk = k.degree();
    if h.order().saturating_mul(k.order()) > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    let degree = m * kk;
    let mut elements = Vec::with_capacity(h.order() * k.order());
    for a in h.elements() {
        for b in k.elements() {
            let mut images = vec![0usize; degree];
            for i in 0..m {
                for j in 0..kk {
                    images[i * kk + j] = a.apply(i) * kk + b.apply(j);
                }
            }
            elements.push(Permutation::from_images(&images).unwrap());
        }
    }
    Ok(PermGroup::from_elements(degree, elements))
}
