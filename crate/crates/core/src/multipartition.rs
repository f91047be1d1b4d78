//! Multipartitions, the cyclic shift ϖ, symbolic residues and the Kleshchev
//! classifier counting simple modules of the cyclotomic Hecke algebra.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::cherednik::Relation;
use crate::error::{LabError, Result};
use crate::reflection_group::GroupParams;

/// Default cap on the number of multipartitions enumerated.
pub const MAX_MULTIPARTITIONS: usize = 1_000_000;

/// A partition as weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of row i (1-based), zero beyond the last row.
    pub fn row_len(&self, i: usize) -> usize {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// All partitions of k, in reverse lexicographic order.
    pub fn all(k: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for part in (1..=rest.min(max)).rev() {
                cur.push(part);
                rec(rest - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An m-tuple of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        Multipartition(components)
    }

    pub fn empty(m: usize) -> Self {
        Multipartition(vec![Partition::empty(); m])
    }

    /// ρ_i: the one-row partition (n) in component i (1-based), empty elsewhere.
    pub fn rho(m: usize, n: usize, i: usize) -> Self {
        let mut comps = vec![Partition::empty(); m];
        comps[i - 1] = Partition::new(vec![n]);
        Multipartition(comps)
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    /// All m-multipartitions of n.
    pub fn all(m: usize, n: usize) -> Result<Vec<Multipartition>> {
        let by_size: Vec<Vec<Partition>> = (0..=n).map(Partition::all).collect();
        let mut out = Vec::new();
        fn rec(
            comp: usize,
            m: usize,
            rest: usize,
            by_size: &[Vec<Partition>],
            cur: &mut Vec<Partition>,
            out: &mut Vec<Multipartition>,
        ) -> Result<()> {
            if comp + 1 == m {
                for p in &by_size[rest] {
                    cur.push(p.clone());
                    out.push(Multipartition(cur.clone()));
                    cur.pop();
                }
                if out.len() > MAX_MULTIPARTITIONS {
                    return Err(LabError::CapExceeded {
                        what: "multipartition count",
                        required: out.len() as u128,
                        cap: MAX_MULTIPARTITIONS as u128,
                    });
                }
                return Ok(());
            }
            for k in (0..=rest).rev() {
                for p in &by_size[k] {
                    cur.push(p.clone());
                    rec(comp + 1, m, rest - k, by_size, cur, out)?;
                    cur.pop();
                }
            }
            Ok(())
        }
        rec(0, m, n, &by_size, &mut Vec::new(), &mut out)?;
        Ok(out)
    }

    pub fn with_node_added(&self, node: Node) -> Self {
        let mut comps = self.0.clone();
        let parts = &mut comps[node.comp - 1].0;
        if node.row > parts.len() {
            parts.push(1);
        } else {
            parts[node.row - 1] += 1;
        }
        Multipartition(comps)
    }

    pub fn with_node_removed(&self, node: Node) -> Self {
        let mut comps = self.0.clone();
        let parts = &mut comps[node.comp - 1].0;
        parts[node.row - 1] -= 1;
        if parts[node.row - 1] == 0 {
            parts.pop();
        }
        Multipartition(comps)
    }

    /// Corners that can be added, top to bottom.
    pub fn addable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (k, lam) in self.0.iter().enumerate() {
            for row in 1..=lam.0.len() + 1 {
                let len = lam.row_len(row);
                if row == 1 || lam.row_len(row - 1) > len {
                    out.push(Node { comp: k + 1, row, col: len + 1 });
                }
            }
        }
        out
    }

    /// Corners that can be removed, top to bottom.
    pub fn removable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (k, lam) in self.0.iter().enumerate() {
            for row in 1..=lam.0.len() {
                let len = lam.row_len(row);
                if lam.row_len(row + 1) < len {
                    out.push(Node { comp: k + 1, row, col: len });
                }
            }
        }
        out
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", comps.join(", "))
    }
}

/// A box of a multipartition: component, row and column, all 1-based.
///
/// The derived order (component, row, column) is the top-to-bottom order:
/// a node is below another if it sits in a later component, or in the same
/// component in a lower row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Node {
    pub comp: usize,
    pub row: usize,
    pub col: usize,
}

/// Symbolic residue η_p^{etaexp} · y_block · q^{qexp} under generic parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResidueSym {
    pub block: u32,
    pub qexp: i64,
    pub etaexp: u32,
}

impl fmt::Display for ResidueSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eta^{}*y_{}*q^{}", self.etaexp, self.block, self.qexp)
    }
}

/// Residue of a node. Component k = sp + t (1 <= t <= p) gives block s+1 and
/// η-exponent t−1; the q-exponent is the content col − row. Under the main
/// relation y_2 = q^{n−1}, so block 2 folds onto block 1.
pub fn residue(node: Node, params: &GroupParams, relation: Relation) -> ResidueSym {
    let p = params.p as usize;
    let s = (node.comp - 1) / p;
    let t = (node.comp - 1) % p + 1;
    let mut r = ResidueSym {
        block: s as u32 + 1,
        qexp: node.col as i64 - node.row as i64,
        etaexp: t as u32 - 1,
    };
    if relation == Relation::Main && r.block == 2 {
        r.block = 1;
        r.qexp += params.n as i64 - 1;
    }
    r
}

/// ϖ·λ with ϖ = (1,…,p)(p+1,…,2p)⋯ acting by ϖ(λ)^{(i)} = λ^{(ϖ^{-1}(i))}.
pub fn varpi_apply(lam: &Multipartition, params: &GroupParams) -> Multipartition {
    let p = params.p as usize;
    let comps = (0..lam.0.len())
        .map(|i| {
            let base = i / p * p;
            let prev = base + (i - base + p - 1) % p;
            lam.0[prev].clone()
        })
        .collect();
    Multipartition(comps)
}

/// o_λ, the length of the ϖ-orbit of λ.
pub fn orbit_size(lam: &Multipartition, params: &GroupParams) -> usize {
    let mut cur = varpi_apply(lam, params);
    let mut k = 1;
    while &cur != lam {
        cur = varpi_apply(&cur, params);
        k += 1;
    }
    k
}

/// The lexicographically least element of each ϖ-orbit on m-multipartitions of n.
pub fn orbit_representatives(params: &GroupParams) -> Result<Vec<Multipartition>> {
    let all = Multipartition::all(params.m as usize, params.n)?;
    let mut reps: Vec<Multipartition> = all
        .into_iter()
        .filter(|lam| {
            let mut cur = varpi_apply(lam, params);
            while &cur != lam {
                if &cur < lam {
                    return false;
                }
                cur = varpi_apply(&cur, params);
            }
            true
        })
        .collect();
    reps.sort();
    Ok(reps)
}

/// Good-node combinatorics and the inductive Kleshchev test, memoised.
pub struct KleshchevClassifier {
    params: GroupParams,
    relation: Relation,
    memo: HashMap<Multipartition, bool>,
}

impl KleshchevClassifier {
    pub fn new(params: GroupParams, relation: Relation) -> Self {
        KleshchevClassifier {
            params,
            relation,
            memo: HashMap::new(),
        }
    }

    pub fn residue(&self, node: Node) -> ResidueSym {
        residue(node, &self.params, self.relation)
    }

    pub fn addable_nodes(&self, lam: &Multipartition, r: ResidueSym) -> Vec<Node> {
        lam.addable().into_iter().filter(|&x| self.residue(x) == r).collect()
    }

    pub fn removable_nodes(&self, lam: &Multipartition, r: ResidueSym) -> Vec<Node> {
        lam.removable().into_iter().filter(|&x| self.residue(x) == r).collect()
    }

    /// A removable node x is normal when every addable node y of the same
    /// residue below x has strictly more removable than addable same-residue
    /// nodes strictly between x and y.
    pub fn is_normal_node(&self, lam: &Multipartition, x: Node) -> bool {
        let r = self.residue(x);
        let addable = self.addable_nodes(lam, r);
        let removable = self.removable_nodes(lam, r);
        addable.iter().filter(|&&y| y > x).all(|&y| {
            let rem = removable.iter().filter(|&&z| z > x && z < y).count();
            let add = addable.iter().filter(|&&z| z > x && z < y).count();
            rem > add
        })
    }

    /// Good node: the highest normal node of its residue.
    pub fn is_good_node(&self, lam: &Multipartition, x: Node) -> bool {
        if !self.is_normal_node(lam, x) {
            return false;
        }
        let r = self.residue(x);
        self.removable_nodes(lam, r)
            .into_iter()
            .filter(|&z| z < x)
            .all(|z| !self.is_normal_node(lam, z))
    }

    pub fn good_nodes(&self, lam: &Multipartition) -> Vec<Node> {
        lam.removable().into_iter().filter(|&x| self.is_good_node(lam, x)).collect()
    }

    /// The empty multipartition is Kleshchev; otherwise λ is Kleshchev when
    /// removing some good node leaves a Kleshchev multipartition.
    pub fn is_kleshchev(&mut self, lam: &Multipartition) -> bool {
        if lam.size() == 0 {
            return true;
        }
        if let Some(&v) = self.memo.get(lam) {
            return v;
        }
        let goods = self.good_nodes(lam);
        let v = goods.into_iter().any(|x| {
            let smaller = lam.with_node_removed(x);
            self.is_kleshchev(&smaller)
        });
        self.memo.insert(lam.clone(), v);
        v
    }
}

/// All non-Kleshchev m-multipartitions of n, sorted.
pub fn non_kleshchev_list(params: &GroupParams, relation: Relation) -> Result<Vec<Multipartition>> {
    let mut cls = KleshchevClassifier::new(*params, relation);
    let mut out: Vec<Multipartition> = Multipartition::all(params.m as usize, params.n)?
        .into_iter()
        .filter(|lam| !cls.is_kleshchev(lam))
        .collect();
    out.sort();
    Ok(out)
}

/// Number of simple modules of the Hecke algebra: Σ p/o_λ over Kleshchev
/// orbit representatives, under the main relation.
pub fn hecke_simple_count(params: &GroupParams) -> Result<usize> {
    let mut cls = KleshchevClassifier::new(*params, Relation::Main);
    Ok(orbit_representatives(params)?
        .iter()
        .filter(|lam| cls.is_kleshchev(lam))
        .map(|lam| params.p as usize / orbit_size(lam, params))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection_group::conjugacy_classes;

    fn g(m: u32, p: u32, n: usize) -> GroupParams {
        GroupParams::new(m, p, n).unwrap()
    }

    fn triples() -> Vec<GroupParams> {
        vec![g(3, 1, 2), g(9, 3, 2), g(4, 2, 3), g(4, 2, 2), g(2, 1, 3), g(6, 2, 2), g(6, 3, 2), g(3, 1, 3), g(6, 2, 3)]
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|k| Partition::all(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn multipartition_counts_match_generating_function() {
        // coefficient of t^n in Π_k (1 − t^k)^{−m}, by direct convolution
        for m in 1..=4usize {
            let nmax = 6;
            let p: Vec<usize> = (0..=nmax).map(|k| Partition::all(k).len()).collect();
            let mut series = vec![0usize; nmax + 1];
            series[0] = 1;
            for _ in 0..m {
                let mut next = vec![0; nmax + 1];
                for i in 0..=nmax {
                    for j in 0..=nmax - i {
                        next[i + j] += series[i] * p[j];
                    }
                }
                series = next;
            }
            for n in 0..=nmax {
                assert_eq!(Multipartition::all(m, n).unwrap().len(), series[n]);
            }
        }
    }

    #[test]
    fn varpi_examples() {
        let p1 = g(3, 1, 2);
        let lam = Multipartition::new(vec![Partition::new(vec![1]), Partition::empty(), Partition::new(vec![1])]);
        assert_eq!(varpi_apply(&lam, &p1), lam);
        let p2 = g(4, 2, 2);
        assert_eq!(varpi_apply(&Multipartition::rho(4, 2, 1), &p2), Multipartition::rho(4, 2, 2));
        assert_eq!(varpi_apply(&Multipartition::rho(4, 2, 3), &p2), Multipartition::rho(4, 2, 4));
        for params in triples() {
            for lam in Multipartition::all(params.m as usize, params.n).unwrap() {
                let mut cur = lam.clone();
                for _ in 0..params.p {
                    cur = varpi_apply(&cur, &params);
                }
                assert_eq!(cur, lam);
                assert_eq!(params.p as usize % orbit_size(&lam, &params), 0);
            }
        }
    }

    #[test]
    fn orbit_size_examples() {
        assert_eq!(orbit_size(&Multipartition::rho(3, 2, 2), &g(3, 1, 2)), 1);
        assert_eq!(orbit_size(&Multipartition::rho(4, 2, 1), &g(4, 2, 2)), 2);
        let all_equal = Multipartition::new(vec![Partition::new(vec![1]); 4]);
        assert_eq!(orbit_size(&all_equal, &g(4, 2, 4)), 1);
    }

    #[test]
    fn residue_examples() {
        let params = g(4, 2, 3);
        let r = |comp, row, col, rel| residue(Node { comp, row, col }, &params, rel);
        assert_eq!(r(1, 1, 1, Relation::Main), ResidueSym { block: 1, qexp: 0, etaexp: 0 });
        assert_eq!(r(3, 1, 1, Relation::Main), ResidueSym { block: 1, qexp: 2, etaexp: 0 });
        assert_eq!(r(3, 1, 1, Relation::None), ResidueSym { block: 2, qexp: 0, etaexp: 0 });
        assert_eq!(r(2, 2, 1, Relation::Main), ResidueSym { block: 1, qexp: -1, etaexp: 1 });
        let g9 = g(9, 3, 2);
        let r9 = residue(Node { comp: 7, row: 1, col: 1 }, &g9, Relation::Main);
        assert_eq!(r9, ResidueSym { block: 3, qexp: 0, etaexp: 0 });
    }

    #[test]
    fn addable_and_removable_examples() {
        let params = g(4, 2, 3);
        let cls = KleshchevClassifier::new(params, Relation::Main);
        let empty = Multipartition::empty(4);
        let q1 = ResidueSym { block: 1, qexp: 0, etaexp: 0 };
        assert_eq!(cls.addable_nodes(&empty, q1), vec![Node { comp: 1, row: 1, col: 1 }]);
        let rho1 = Multipartition::rho(4, 3, 1);
        assert_eq!(rho1.removable(), vec![Node { comp: 1, row: 1, col: 3 }]);
        assert_eq!(cls.residue(rho1.removable()[0]), ResidueSym { block: 1, qexp: 2, etaexp: 0 });
    }

    #[test]
    fn kleshchev_examples() {
        let params = g(4, 2, 3);
        let mut cls = KleshchevClassifier::new(params, Relation::Main);
        assert!(cls.is_kleshchev(&Multipartition::empty(4)));
        assert!(!cls.is_kleshchev(&Multipartition::rho(4, 3, 1)));
        let g9 = g(9, 3, 2);
        let mut cls9 = KleshchevClassifier::new(g9, Relation::Main);
        for k in 7..=9 {
            assert!(cls9.is_kleshchev(&Multipartition::rho(9, 2, k)));
            let col = Multipartition::new(
                (1..=9).map(|i| if i == k { Partition::new(vec![1, 1]) } else { Partition::empty() }).collect(),
            );
            assert!(cls9.is_kleshchev(&col));
        }
    }

    #[test]
    fn non_kleshchev_sets_are_the_rhos() {
        assert_eq!(
            non_kleshchev_list(&g(3, 1, 2), Relation::Main).unwrap(),
            vec![Multipartition::rho(3, 2, 1)]
        );
        for params in triples() {
            let expected: Vec<Multipartition> =
                (1..=params.p as usize).map(|i| Multipartition::rho(params.m as usize, params.n, i)).collect();
            let mut expected = expected;
            expected.sort();
            assert_eq!(non_kleshchev_list(&params, Relation::Main).unwrap(), expected, "{params}");
        }
    }

    #[test]
    fn generic_residues_make_everything_kleshchev() {
        // no coincidences between blocks: every multipartition is Kleshchev
        for params in [g(3, 1, 2), g(4, 2, 2)] {
            assert!(non_kleshchev_list(&params, Relation::None).unwrap().is_empty());
        }
    }

    #[test]
    fn kleshchev_is_varpi_invariant() {
        for params in triples() {
            let mut cls = KleshchevClassifier::new(params, Relation::Main);
            for lam in Multipartition::all(params.m as usize, params.n).unwrap() {
                let shifted = varpi_apply(&lam, &params);
                assert_eq!(cls.is_kleshchev(&lam), cls.is_kleshchev(&shifted), "{lam}");
            }
        }
    }

    #[test]
    fn peeling_good_nodes_stays_kleshchev() {
        for params in triples() {
            let mut cls = KleshchevClassifier::new(params, Relation::Main);
            for lam in Multipartition::all(params.m as usize, params.n).unwrap() {
                if !cls.is_kleshchev(&lam) {
                    continue;
                }
                let goods = cls.good_nodes(&lam);
                assert!(!goods.is_empty());
                assert!(goods.iter().any(|&x| cls.is_kleshchev(&lam.with_node_removed(x))));
                // adding then removing a node is the identity
                for y in lam.addable() {
                    assert_eq!(lam.with_node_added(y).with_node_removed(y), lam);
                }
            }
        }
    }

    #[test]
    fn hecke_count_is_class_count_minus_one() {
        assert_eq!(hecke_simple_count(&g(3, 1, 2)).unwrap(), 8);
        for params in triples() {
            let classes = conjugacy_classes(&params).unwrap().len();
            assert_eq!(hecke_simple_count(&params).unwrap(), classes - 1, "{params}");
        }
    }
}
