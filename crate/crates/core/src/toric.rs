//! Minimal binomial generators of the defining ideal through fiber graphs.
//!
//! For `s ∈ H` the fiber graph `∇_s` has the factorizations of `s` as
//! vertices, two of them adjacent when their supports meet. A minimal
//! generating set has exactly `t − 1` binomials of degree `s`, where `t` is the
//! number of components of `∇_s`, and those binomials must join all `t`
//! components.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::rf::{all_rf_relations, Binomial};
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberGraph {
    pub degree: i64,
    /// Factorizations of `degree`, ascending lexicographically.
    pub vertices: Vec<Vec<u64>>,
    /// Vertex indices per component; components are ordered by their least
    /// vertex and each list is ascending.
    pub components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
}

impl FiberGraph {
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && shares_support(&self.vertices[a], &self.vertices[b])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.adjacent(a, b))
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn vertex_index(&self, factorization: &[u64]) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.as_slice().cmp(factorization))
            .ok()
    }

    pub fn component_of(&self, vertex: usize) -> usize {
        self.component_of[vertex]
    }

    /// Whether `binomials` join every component of the graph. Binomials of
    /// another degree are ignored.
    pub fn spanned_by<'a>(&self, binomials: impl IntoIterator<Item = &'a Binomial>) -> bool {
        self.spanning_subset(binomials).1 == self.components.len().max(1) - 1
    }

    /// Kruskal over `binomials` in the given order: returns the ones that join
    /// two yet-separate components, and how many merges happened.
    fn spanning_subset<'a>(
        &self,
        binomials: impl IntoIterator<Item = &'a Binomial>,
    ) -> (Vec<Binomial>, usize) {
        let mut uf = UnionFind::<usize>::new(self.components.len());
        let mut chosen = Vec::new();
        for b in binomials {
            if b.degree != self.degree {
                continue;
            }
            let (Some(x), Some(y)) = (self.vertex_index(&b.plus), self.vertex_index(&b.minus)) else {
                continue;
            };
            if uf.union(self.component_of[x], self.component_of[y]) {
                chosen.push(b.clone());
            }
        }
        let merges = chosen.len();
        (chosen, merges)
    }
}

fn shares_support(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(&x, &y)| x > 0 && y > 0)
}

/// The fiber graph of `s`; empty when `s ∉ H`.
pub fn fiber_graph(h: &NumericalSemigroup, s: i64) -> FiberGraph {
    let vertices = if s >= 0 && h.contains(s) {
        h.factorization_vectors(s, None)
    } else {
        Vec::new()
    };
    // vertices sharing a coordinate are merged through that coordinate
    let mut uf = UnionFind::<usize>::new(vertices.len());
    for c in 0..h.embedding_dimension() {
        let mut first = None;
        for (i, _) in vertices.iter().enumerate().filter(|(_, v)| v[c] > 0) {
            match first {
                None => first = Some(i),
                Some(f) => {
                    uf.union(f, i);
                }
            }
        }
    }
    let mut index_of_root = BTreeMap::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut component_of = Vec::with_capacity(vertices.len());
    for i in 0..vertices.len() {
        let root = uf.find(i);
        let c = *index_of_root.entry(root).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        components[c].push(i);
        component_of.push(c);
    }
    FiberGraph {
        degree: s,
        vertices,
        components,
        component_of,
    }
}

/// Number of components of `∇_s` without listing factorizations: they match
/// the components of the graph on `{i : s − gᵢ ∈ H}` with `i ~ j` when
/// `s − gᵢ − gⱼ ∈ H`.
pub fn fiber_component_count(h: &NumericalSemigroup, s: i64) -> usize {
    let gens = h.generators();
    let support: Vec<usize> = (0..gens.len()).filter(|&i| h.contains(s - gens[i])).collect();
    let mut uf = UnionFind::<usize>::new(support.len());
    for a in 0..support.len() {
        for b in a + 1..support.len() {
            if h.contains(s - gens[support[a]] - gens[support[b]]) {
                uf.union(a, b);
            }
        }
    }
    (0..support.len()).filter(|&a| uf.find(a) == a).count()
}

/// Largest degree that can carry a minimal generator: above it every
/// `s − gᵢ − gⱼ` lies past the Frobenius number.
pub fn betti_bound(h: &NumericalSemigroup) -> i64 {
    let frobenius = h.frobenius_number().unwrap_or(-1);
    let max = h.generators().iter().copied().max().unwrap_or(0);
    frobenius + 2 * max
}

/// Every `s ∈ H` whose fiber graph is disconnected, ascending.
pub fn betti_degrees(h: &NumericalSemigroup) -> Vec<i64> {
    if h.embedding_dimension() < 2 {
        return Vec::new();
    }
    (2 * h.multiplicity()..=betti_bound(h))
        .filter(|&s| h.contains(s) && fiber_component_count(h, s) > 1)
        .collect()
}

/// Which vertex stands for its component when building generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representative {
    #[default]
    Least,
    Greatest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalPresentation {
    pub generators: Vec<Binomial>,
    /// Degree of each generator, so repeated when a degree carries several.
    pub betti_degrees: Vec<i64>,
    pub count: usize,
}

pub fn minimal_generating_set(h: &NumericalSemigroup) -> MinimalPresentation {
    minimal_generating_set_with(h, Representative::Least)
}

/// Joins the representative of component 0 to that of every other component.
pub fn minimal_generating_set_with(h: &NumericalSemigroup, rep: Representative) -> MinimalPresentation {
    let gens = h.generators();
    let mut generators = Vec::new();
    for s in betti_degrees(h) {
        let graph = fiber_graph(h, s);
        let reps: Vec<usize> = graph
            .components
            .iter()
            .map(|c| match rep {
                Representative::Least => c[0],
                Representative::Greatest => c[c.len() - 1],
            })
            .collect();
        for &other in &reps[1..] {
            let b = Binomial::from_pair(&graph.vertices[reps[0]], &graph.vertices[other], gens)
                .expect("distinct components have distinct vertices");
            generators.push(b);
        }
    }
    let betti_degrees = generators.iter().map(|b| b.degree).collect();
    MinimalPresentation {
        count: generators.len(),
        generators,
        betti_degrees,
    }
}

/// Whether `binomials` is a minimal generating set: exactly `t − 1` of them
/// in each Betti degree, joining all components there, and none elsewhere.
pub fn is_minimal_generating_set(h: &NumericalSemigroup, binomials: &[Binomial]) -> bool {
    let mut by_degree: BTreeMap<i64, Vec<&Binomial>> = BTreeMap::new();
    for b in binomials {
        if !b.is_in_ideal(h.generators()) {
            return false;
        }
        by_degree.entry(b.degree).or_default().push(b);
    }
    let degrees = betti_degrees(h);
    if !by_degree.keys().all(|s| degrees.binary_search(s).is_ok()) {
        return false;
    }
    degrees.iter().all(|&s| {
        let graph = fiber_graph(h, s);
        let chosen = by_degree.get(&s).map(Vec::as_slice).unwrap_or(&[]);
        chosen.len() == graph.component_count() - 1 && graph.spanned_by(chosen.iter().copied())
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub holds: bool,
    /// Per Betti degree, the RF-relations chosen as generators.
    pub witness: BTreeMap<i64, Vec<Binomial>>,
    /// Betti degrees whose components the RF-relations fail to join.
    pub deficiency: Vec<i64>,
}

/// The union of all RF(f)-relations over `f ∈ PF(H)`.
pub fn rf_relation_pool(h: &NumericalSemigroup) -> BTreeSet<Binomial> {
    h.pseudo_frobenius()
        .into_iter()
        .filter(|&f| f >= 0)
        .flat_map(|f| {
            all_rf_relations(h, f)
                .map(|set| set.relations.into_keys().collect::<Vec<_>>())
                .unwrap_or_default()
        })
        .collect()
}

/// Checks whether RF-relations alone form a minimal generating set.
///
/// Relations are tried in ascending `(plus, minus)` order, so among several
/// joining the same pair of components the least one is kept.
pub fn is_minimally_generated_by_rf_relations(h: &NumericalSemigroup) -> TheoremVerdict {
    let pool = rf_relation_pool(h);
    let mut by_degree: BTreeMap<i64, Vec<&Binomial>> = BTreeMap::new();
    for b in &pool {
        by_degree.entry(b.degree).or_default().push(b);
    }
    let mut witness = BTreeMap::new();
    let mut deficiency = Vec::new();
    for s in betti_degrees(h) {
        let graph = fiber_graph(h, s);
        let candidates = by_degree.get(&s).map(Vec::as_slice).unwrap_or(&[]);
        let (chosen, merges) = graph.spanning_subset(candidates.iter().copied());
        if merges + 1 != graph.component_count() {
            deficiency.push(s);
        }
        witness.insert(s, chosen);
    }
    TheoremVerdict {
        holds: deficiency.is_empty(),
        witness,
        deficiency,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[i64]) -> NumericalSemigroup {
        NumericalSemigroup::new(gens).unwrap()
    }

    #[test]
    fn small_fibers() {
        let h = sg(&[2, 3]);
        let g = fiber_graph(&h, 6);
        assert_eq!(g.vertices, vec![vec![0, 2], vec![3, 0]]);
        assert!(g.edges().is_empty());
        assert_eq!(g.component_count(), 2);

        let g = fiber_graph(&h, 8);
        assert_eq!(g.vertices, vec![vec![1, 2], vec![4, 0]]);
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert!(g.is_connected());

        let g = fiber_graph(&h, 1);
        assert!(g.vertices.is_empty());
        assert_eq!(g.component_count(), 0);
    }

    #[test]
    fn components_match_edge_closure() {
        let h = NumericalSemigroup::from_minimal_generators(&[10, 19, 28, 37, 35]).unwrap();
        for s in [38, 56, 70, 75, 84, 105, 120, 150] {
            let g = fiber_graph(&h, s);
            // flood fill over explicit edges as an independent oracle
            let n = g.vertices.len();
            let mut label = vec![usize::MAX; n];
            let mut count = 0;
            for start in 0..n {
                if label[start] != usize::MAX {
                    continue;
                }
                let mut stack = vec![start];
                label[start] = count;
                while let Some(a) = stack.pop() {
                    for b in 0..n {
                        if label[b] == usize::MAX && g.adjacent(a, b) {
                            label[b] = count;
                            stack.push(b);
                        }
                    }
                }
                count += 1;
            }
            assert_eq!(g.component_count(), count, "s = {s}");
            assert_eq!(fiber_component_count(&h, s), count, "s = {s}");
        }
    }

    #[test]
    fn two_generator_ideal() {
        let h = sg(&[2, 3]);
        assert_eq!(betti_degrees(&h), vec![6]);
        let mp = minimal_generating_set(&h);
        assert_eq!(mp.count, 1);
        assert_eq!(mp.generators[0].plus, vec![3, 0]);
        assert_eq!(mp.generators[0].minus, vec![0, 2]);
        assert!(is_minimal_generating_set(&h, &mp.generators));
        assert!(sg(&[1]).generators().len() == 1 && betti_degrees(&sg(&[1])).is_empty());
    }

    #[test]
    fn complete_intersection_counts() {
        // ⟨4,6,7⟩: 12 = 3·4 = 2·6 and 14 = 2·7 = 2·4 + 6
        let h = sg(&[4, 6, 7]);
        let mp = minimal_generating_set(&h);
        assert_eq!(mp.betti_degrees, vec![12, 14]);
        // ⟨3,4,5⟩ is not a complete intersection: three generators
        assert_eq!(minimal_generating_set(&sg(&[3, 4, 5])).count, 3);
    }

    #[test]
    fn symmetric_example_has_six_generators() {
        let h = NumericalSemigroup::from_minimal_generators(&[10, 19, 28, 37, 35]).unwrap();
        let mp = minimal_generating_set(&h);
        assert_eq!(mp.count, 6);
        let reversed = minimal_generating_set_with(&h, Representative::Greatest);
        assert_eq!(reversed.count, 6);
        assert_eq!(reversed.betti_degrees, mp.betti_degrees);
        assert!(is_minimal_generating_set(&h, &reversed.generators));
        let verdict = is_minimally_generated_by_rf_relations(&h);
        assert!(verdict.holds);
        assert_eq!(verdict.witness.values().map(Vec::len).sum::<usize>(), 6);
    }

    #[test]
    fn generating_set_checker_rejects_bad_sets() {
        let h = sg(&[3, 4, 5]);
        let mut mp = minimal_generating_set(&h).generators;
        assert!(is_minimal_generating_set(&h, &mp));
        let extra = mp[0].clone();
        mp.push(extra);
        assert!(!is_minimal_generating_set(&h, &mp));
        mp.truncate(2);
        assert!(!is_minimal_generating_set(&h, &mp));
    }
}
