use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::complex::VertexId;
use crate::error::{Error, Result};
use crate::maps::Permutation;

/// Size and orbit structure of a generated permutation group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupClosure {
    pub order: usize,
    pub vertex_transitive: bool,
    /// Orbits on the union of the generators' domains, each sorted.
    pub orbits: Vec<Vec<VertexId>>,
}

/// Breadth-first closure of `generators` under composition.
///
/// Fails with [`Error::CapExceeded`] once more than `cap` elements are found.
pub fn group_closure(generators: &[Permutation], cap: usize) -> Result<GroupClosure> {
    let domain: Vec<VertexId> = generators
        .iter()
        .flat_map(|g| g.domain().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: HashMap<&VertexId, usize> = domain.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let gens: Vec<Vec<usize>> = generators
        .iter()
        .map(|g| domain.iter().map(|v| index[&g.apply(v)]).collect())
        .collect();

    let identity: Vec<usize> = (0..domain.len()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded(cap));
                }
                queue.push_back(q);
            }
        }
    }

    // orbits via union-find over generator edges
    let mut parent: Vec<usize> = (0..domain.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for g in &gens {
        for (i, &j) in g.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    let mut orbits: Vec<Vec<VertexId>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for (i, v) in domain.iter().enumerate() {
        let root = find(&mut parent, i);
        let at = *slot.entry(root).or_insert_with(|| {
            orbits.push(Vec::new());
            orbits.len() - 1
        });
        orbits[at].push(v.clone());
    }
    Ok(GroupClosure {
        order: seen.len(),
        vertex_transitive: orbits.len() <= 1,
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_transposition() {
        let t = Permutation::involution([("a", "b")]).unwrap();
        let g = group_closure(&[t], 10).unwrap();
        assert_eq!(g.order, 2);
        assert!(g.vertex_transitive);
    }

    #[test]
    fn dihedral_square() {
        let r = Permutation::from_pairs([("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")]).unwrap();
        let s = Permutation::involution([("2", "4")]).unwrap();
        let g = group_closure(&[r.clone(), s.clone()], 100).unwrap();
        assert_eq!(g.order, 8);
        assert_eq!(group_closure(&[r], 100).unwrap().order, 4);
        assert!(matches!(
            group_closure(
                &[
                    s.clone(),
                    Permutation::from_pairs([("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")]).unwrap()
                ],
                5
            ),
            Err(Error::CapExceeded(5))
        ));
        let s_full = Permutation::from_pairs([("1", "1"), ("2", "4"), ("3", "3"), ("4", "2")]).unwrap();
        let fixed = group_closure(&[s_full], 10).unwrap();
        assert!(!fixed.vertex_transitive);
    }
}
