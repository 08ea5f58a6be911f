use std::collections::HashSet;

use super::{FiniteAbelianGroup, GroupElement};
use crate::error::{invalid, Result};

/// A subgroup, stored as the sorted list of its element indices.
///
/// Subgroups of `G` and of the dual of `G` share this type; the dual is
/// written in the same coordinate space.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: FiniteAbelianGroup,
    generators: Vec<usize>,
    elements: Vec<usize>,
    member: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Smallest subgroup containing `gens`.
    pub fn from_generators(parent: &FiniteAbelianGroup, gens: &[GroupElement]) -> Result<Self> {
        let idx = gens
            .iter()
            .map(|g| parent.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_generator_indices(parent, &idx))
    }

    pub fn from_generator_indices(parent: &FiniteAbelianGroup, gens: &[usize]) -> Self {
        let n = parent.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut elements = vec![0usize];
        // Closure under addition of generators; in a finite group this also
        // gives closure under negation.
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = parent.add(x, g);
                if !member[y] {
                    member[y] = true;
                    elements.push(y);
                    frontier.push(y);
                }
            }
        }
        elements.sort_unstable();
        Self {
            parent: parent.clone(),
            generators: gens.to_vec(),
            elements,
            member,
        }
    }

    fn from_members(parent: &FiniteAbelianGroup, member: Vec<bool>) -> Self {
        let elements: Vec<usize> = (0..parent.order()).filter(|&i| member[i]).collect();
        let generators = minimal_generators(parent, &elements);
        Self {
            parent: parent.clone(),
            generators,
            elements,
            member,
        }
    }

    pub fn trivial(parent: &FiniteAbelianGroup) -> Self {
        Self::from_generator_indices(parent, &[])
    }

    pub fn whole(parent: &FiniteAbelianGroup) -> Self {
        let member = vec![true; parent.order()];
        Self::from_members(parent, member)
    }

    pub fn parent(&self) -> &FiniteAbelianGroup {
        &self.parent
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<GroupElement> {
        self.generators.iter().map(|&g| self.parent.element(g)).collect()
    }

    /// Sorted canonical indices of the elements.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `|G| / |H|`.
    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.member.get(idx).copied().unwrap_or(false)
    }

    pub fn contains_element(&self, el: &GroupElement) -> Result<bool> {
        Ok(self.contains(self.parent.index_of(el)?))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elements.iter().all(|&x| other.contains(x))
    }

    /// `{w : <w, h> = 1 for all h in H}`, a subgroup of the dual.
    ///
    /// Checked on the generators only, with exact integer phases.
    pub fn annihilator(&self) -> Subgroup {
        let g = &self.parent;
        let member: Vec<bool> = (0..g.order())
            .map(|w| self.generators.iter().all(|&h| g.phase(w, h) == 0))
            .collect();
        Self::from_members(g, member)
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let member = (0..self.parent.order())
            .map(|i| self.member[i] && other.member[i])
            .collect();
        Ok(Self::from_members(&self.parent, member))
    }

    /// Subgroup generated by the union `H1 + H2`.
    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.check_parent(other)?;
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Ok(Self::from_generator_indices(&self.parent, &gens))
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent != other.parent {
            return invalid(format!(
                "subgroups live in different groups: {} vs {}",
                self.parent, other.parent
            ));
        }
        Ok(())
    }

    /// Coset representatives, each the smallest element of its coset.
    pub fn transversal(&self) -> Transversal {
        let g = &self.parent;
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::with_capacity(self.index());
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &h in &self.elements {
                coset_of[g.add(x, h)] = c;
            }
        }
        Transversal {
            subgroup: self.clone(),
            reps,
            coset_of,
        }
    }

    /// Checks closure under addition and negation element-wise.
    pub fn is_closed(&self) -> bool {
        let g = &self.parent;
        self.contains(0)
            && self.elements.iter().all(|&a| {
                self.contains(g.neg(a)) && self.elements.iter().all(|&b| self.contains(g.add(a, b)))
            })
    }
}

/// One representative per coset of a subgroup.
#[derive(Clone, Debug)]
pub struct Transversal {
    subgroup: Subgroup,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
}

impl Transversal {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Position in `reps` of the coset containing `x`.
    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// Representative of the coset containing `x`.
    pub fn rep_of(&self, x: usize) -> usize {
        self.reps[self.coset_of[x]]
    }
}

/// Greedy generating set: walk the elements in order, keep any element not
/// already in the span of the ones kept.
fn minimal_generators(parent: &FiniteAbelianGroup, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = Subgroup::from_generator_indices(parent, &[]);
    for &x in elements {
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::from_generator_indices(parent, &gens);
            if span.order() == elements.len() {
                break;
            }
        }
    }
    gens
}

/// Every subgroup of `g`, sorted by order and then by element list.
///
/// Stops early once `cap` subgroups are known.
pub fn all_subgroups(g: &FiniteAbelianGroup, cap: usize) -> Vec<Subgroup> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut cyclic = Vec::new();
    for x in 0..g.order() {
        let h = Subgroup::from_generator_indices(g, &[x]);
        if seen.insert(h.elements.clone()) {
            cyclic.push(h);
        }
    }
    let mut all = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() && all.len() < cap {
        let mut next = Vec::new();
        for a in &frontier {
            for c in &cyclic {
                if c.is_subgroup_of(a) {
                    continue;
                }
                let s = a.sum(c).expect("same parent");
                if seen.insert(s.elements.clone()) {
                    next.push(s.clone());
                    all.push(s);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    all.truncate(cap);
    all
}
