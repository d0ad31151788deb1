//! The 5/2-closedness predicate and the closure construction: adjoin
//! restrictions of block-fixing elements to fixer-system cells, iterated to
//! a fixpoint.

use std::collections::HashSet;

use crate::blocks::{all_block_systems, fix, normal_block_systems, BlockSystem};
use crate::error::{Error, Result};
use crate::group::{transitive_subgroups, PermGroup};
use crate::perm::Permutation;

use super::{fixer_analysis, restrict, wreath_stabilizers_all_trivial, FixerAnalysis};

#[derive(Clone, Debug)]
pub struct Witness52 {
    pub subgroup_generators: Vec<Permutation>,
    pub system: BlockSystem,
    pub fixer_system: BlockSystem,
    pub element: Permutation,
    pub fixer_cell: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Closed52Report {
    pub closed: bool,
    pub witness: Option<Witness52>,
}

/// One fixer analysis per distinct (system, fix) pair over the transitive
/// subgroups: the analysis depends on the subgroup only through its fix.
fn transitive_fixer_pairs(g: &PermGroup) -> Result<Vec<(Vec<Permutation>, FixerAnalysis)>> {
    let mut seen: HashSet<(Vec<Vec<usize>>, Vec<Permutation>)> = HashSet::new();
    let mut out = Vec::new();
    for h in transitive_subgroups(g) {
        for system in normal_block_systems(&h)? {
            let f = fix(&h, &system)?;
            let key = (system.cells().to_vec(), f.elements().to_vec());
            if !seen.insert(key) {
                continue;
            }
            let analysis = fixer_analysis(&h, &system)?;
            out.push((h.generators().to_vec(), analysis));
        }
    }
    Ok(out)
}

fn fixes_each_cell(e: &Permutation, cells: &[&Vec<usize>]) -> bool {
    cells.iter().all(|cell| {
        cell.iter().all(|&p| {
            let q = e.apply(p);
            cell.binary_search(&q).is_ok()
        })
    })
}

/// Runs `visit` on every restriction demanded by the 5/2 condition:
/// for each transitive H ≤ G, each normal system B of H with fixer system
/// E, each E-cell, and each γ ∈ G fixing setwise every B-cell inside the
/// E-cell, the restriction γ|_E. Returns the first witness for which
/// `visit` answers false.
fn scan_restrictions(
    g: &PermGroup,
    mut visit: impl FnMut(&Permutation, &Permutation) -> bool,
) -> Result<Option<Witness52>> {
    for (hgens, analysis) in transitive_fixer_pairs(g)? {
        if analysis.fixer_system.cell_count() <= 1 {
            continue;
        }
        for e_cell in analysis.fixer_system.cells() {
            let inside: Vec<&Vec<usize>> = analysis
                .system
                .cells()
                .iter()
                .filter(|c| e_cell.binary_search(&c[0]).is_ok())
                .collect();
            for cand in g.elements() {
                if !fixes_each_cell(cand, &inside) {
                    continue;
                }
                let r = restrict(cand, e_cell).expect("fixing the cells setwise fixes their union");
                if !visit(cand, &r) {
                    return Ok(Some(Witness52 {
                        subgroup_generators: hgens.clone(),
                        system: analysis.system.clone(),
                        fixer_system: analysis.fixer_system.clone(),
                        element: cand.clone(),
                        fixer_cell: e_cell.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Definitional route: enumerate the transitive subgroups and test every
/// demanded restriction for membership.
pub fn is_five_halves_closed_definitional(g: &PermGroup) -> Result<Closed52Report> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let witness = scan_restrictions(g, |_, r| g.contains(r))?;
    Ok(Closed52Report {
        closed: witness.is_none(),
        witness,
    })
}

/// Tiered route. The symmetric group contains every restriction outright,
/// and when all wreath stabilizers over the valid partitions vanish, every
/// fixer system is the one-block system and the condition is vacuous; only
/// otherwise does the subgroup enumeration run.
pub fn is_five_halves_closed(g: &PermGroup) -> Result<Closed52Report> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if g.is_symmetric_group() {
        return Ok(Closed52Report {
            closed: true,
            witness: None,
        });
    }
    if wreath_stabilizers_all_trivial(g)?.is_ok() {
        return Ok(Closed52Report {
            closed: true,
            witness: None,
        });
    }
    is_five_halves_closed_definitional(g)
}

#[derive(Clone, Debug)]
pub struct StepRecord {
    pub step: usize,
    pub subgroup_generators: Vec<Permutation>,
    pub system: BlockSystem,
    pub fixer_system: BlockSystem,
    pub restriction: Permutation,
}

/// One closure step: G together with every demanded restriction.
pub fn five_halves_step(g: &PermGroup, cap: usize) -> Result<PermGroup> {
    let (group, _) = five_halves_step_with_records(g, cap, 0)?;
    Ok(group)
}

fn five_halves_step_with_records(
    g: &PermGroup,
    cap: usize,
    step: usize,
) -> Result<(PermGroup, Vec<StepRecord>)> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let mut added: Vec<Permutation> = Vec::new();
    let mut records = Vec::new();
    let mut seen: HashSet<Permutation> = HashSet::new();
    for (hgens, analysis) in transitive_fixer_pairs(g)? {
        if analysis.fixer_system.cell_count() <= 1 {
            continue;
        }
        for e_cell in analysis.fixer_system.cells() {
            let inside: Vec<&Vec<usize>> = analysis
                .system
                .cells()
                .iter()
                .filter(|c| e_cell.binary_search(&c[0]).is_ok())
                .collect();
            for cand in g.elements() {
                if !fixes_each_cell(cand, &inside) {
                    continue;
                }
                let r = restrict(cand, e_cell).expect("cell union is invariant");
                if !g.contains(&r) && seen.insert(r.clone()) {
                    records.push(StepRecord {
                        step,
                        subgroup_generators: hgens.clone(),
                        system: analysis.system.clone(),
                        fixer_system: analysis.fixer_system.clone(),
                        restriction: r.clone(),
                    });
                    added.push(r);
                }
            }
        }
    }
    if added.is_empty() {
        return Ok((g.clone(), records));
    }
    let mut gens = g.generators().to_vec();
    gens.extend(added);
    let group = PermGroup::generate_with_cap(g.degree(), gens, cap)?;
    Ok((group, records))
}

/// The trajectory of the closure construction, with the restrictions that
/// were genuinely new at each step.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub input: PermGroup,
    pub result: PermGroup,
    pub steps: usize,
    pub added_generators: Vec<Permutation>,
    pub records: Vec<StepRecord>,
}

/// Iterates the closure step to its fixpoint. The fixpoint contains the
/// input and has the same block systems (checked here); it is 5/2-closed
/// because a fixpoint of the step satisfies the very same membership
/// conditions the predicate tests.
pub fn five_halves_closure(g: &PermGroup, cap: usize) -> Result<ClosureReport> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let mut current = g.clone();
    let mut steps = 0usize;
    let mut records = Vec::new();
    let mut added_generators = Vec::new();
    loop {
        let (next, new_records) = five_halves_step_with_records(&current, cap, steps + 1)?;
        let changed = next != current;
        if changed {
            steps += 1;
            added_generators.extend(new_records.iter().map(|r| r.restriction.clone()));
            records.extend(new_records);
            current = next;
        } else {
            if steps == 0 {
                steps = 1;
            }
            break;
        }
    }
    assert!(g.is_subgroup_of(&current));
    assert_eq!(
        all_block_systems(g)?,
        all_block_systems(&current)?,
        "closure must preserve the block systems"
    );
    Ok(ClosureReport {
        input: g.clone(),
        result: current,
        steps,
        added_generators,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_CAP;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn gen(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::generate(n, gens.iter().map(|s| perm(n, s)).collect()).unwrap()
    }

    #[test]
    fn symmetric_groups_are_closed() {
        for n in 2..=6 {
            let s = PermGroup::symmetric(n, DEFAULT_ORDER_CAP).unwrap();
            assert!(is_five_halves_closed(&s).unwrap().closed);
        }
    }

    #[test]
    fn regular_groups_are_closed_and_fixed() {
        for n in 2..=8 {
            let z = PermGroup::cyclic_regular(n);
            assert!(is_five_halves_closed(&z).unwrap().closed);
            assert_eq!(five_halves_step(&z, DEFAULT_ORDER_CAP).unwrap(), z);
        }
        let klein = gen(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        assert!(is_five_halves_closed(&klein).unwrap().closed);
    }

    #[test]
    fn step_is_identity_on_closed_groups() {
        let s4 = PermGroup::symmetric(4, 30).unwrap();
        assert_eq!(five_halves_step(&s4, DEFAULT_ORDER_CAP).unwrap(), s4);
    }

    #[test]
    fn closure_reports_single_step_on_fixed_points() {
        for n in 2..=8 {
            let z = PermGroup::cyclic_regular(n);
            let report = five_halves_closure(&z, DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(report.result, z);
            assert_eq!(report.steps, 1);
            assert!(report.added_generators.is_empty());
        }
        let s5 = PermGroup::symmetric(5, 130).unwrap();
        let report = five_halves_closure(&s5, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(report.result, s5);
    }

    #[test]
    fn tiered_and_definitional_routes_agree() {
        let groups = [
            PermGroup::cyclic_regular(6),
            gen(4, &["(0 1 2 3)", "(0 2)"]),
            gen(4, &["(0 1)", "(2 3)", "(0 2)(1 3)"]),
            PermGroup::symmetric(4, 30).unwrap(),
            gen(6, &["(0 1 2 3 4 5)", "(1 5)(2 4)"]),
            gen(6, &["(0 2 4)(1 3 5)", "(0 3)(1 4)(2 5)"]),
        ];
        for g in groups {
            let fast = is_five_halves_closed(&g).unwrap().closed;
            let slow = is_five_halves_closed_definitional(&g).unwrap().closed;
            assert_eq!(fast, slow, "{g:?}");
        }
    }

    #[test]
    fn closure_is_idempotent_on_small_groups() {
        for g in [
            gen(4, &["(0 1)", "(2 3)", "(0 2)(1 3)"]),
            gen(6, &["(0 1 2 3 4 5)", "(1 5)(2 4)"]),
            gen(4, &["(0 1 2 3)"]),
        ] {
            let once = five_halves_closure(&g, DEFAULT_ORDER_CAP).unwrap();
            let twice = five_halves_closure(&once.result, DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(once.result, twice.result);
            assert!(is_five_halves_closed(&once.result).unwrap().closed);
        }
    }
}
