//! Ternary relations on the points of the dendrite that the homeomorphism
//! group can see: lying on a common arc, betweenness, and the tripod centre
//! fixed by every automorphism fixing the three legs.

use serde::Serialize;

use crate::dendrite_model::{DendriteModel, VertexId};
use crate::error::{Error, Result};
use crate::labelled_trees::OrderLabel;

/// Whether one of the three points lies on the arc through the other two.
pub fn common_arc(model: &DendriteModel, x: VertexId, y: VertexId, z: VertexId) -> Result<bool> {
    let m = model.median(x, y, z)?;
    Ok(m == x || m == y || m == z)
}

/// The centre of the tripod spanned by `x, y, z`, when they span one. Every
/// automorphism fixing the three points fixes it.
pub fn stabilizer_witness(model: &DendriteModel, x: VertexId, y: VertexId, z: VertexId) -> Result<Option<VertexId>> {
    if x == y || y == z || x == z {
        return Err(Error::NotDistinct);
    }
    let m = model.median(x, y, z)?;
    Ok((m != x && m != y && m != z).then_some(m))
}

/// `x ∈ [y, z]`.
pub fn betweenness(model: &DendriteModel, x: VertexId, y: VertexId, z: VertexId) -> Result<bool> {
    model.check(x)?;
    Ok(model.arc(y, z)?.contains(&x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BetweennessDecision {
    pub between: bool,
    /// A point `w` with neither `{w,x,y}` nor `{w,x,z}` on a common arc.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<VertexId>,
    pub extensions: usize,
}

/// Per-root ancestry, answering `common_arc(w, x, ·)` by lowest common ancestor
/// with `x` as the root.
struct Rooted {
    root: VertexId,
    parent: Vec<Option<VertexId>>,
    depth: Vec<usize>,
}

impl Rooted {
    fn new(model: &DendriteModel, root: VertexId) -> Self {
        let parent = model.parents_from(root);
        let mut depth = vec![usize::MAX; parent.len()];
        depth[root as usize] = 0;
        fn fill(v: usize, parent: &[Option<VertexId>], depth: &mut [usize]) -> usize {
            if depth[v] == usize::MAX {
                let p = parent[v].expect("non-root has a parent") as usize;
                depth[v] = fill(p, parent, depth) + 1;
            }
            depth[v]
        }
        for v in 0..parent.len() {
            fill(v, &parent, &mut depth);
        }
        Rooted { root, parent, depth }
    }

    fn lca(&self, mut a: VertexId, mut b: VertexId) -> VertexId {
        while self.depth[a as usize] > self.depth[b as usize] {
            a = self.parent[a as usize].expect("deeper than root");
        }
        while self.depth[b as usize] > self.depth[a as usize] {
            b = self.parent[b as usize].expect("deeper than root");
        }
        while a != b {
            a = self.parent[a as usize].expect("below the common root");
            b = self.parent[b as usize].expect("below the common root");
        }
        a
    }

    fn common_arc(&self, w: VertexId, y: VertexId) -> bool {
        let m = self.lca(w, y);
        m == w || m == y || m == self.root
    }
}

/// Decides `x ∈ [y, z]` using only the common-arc relation: it holds iff for
/// every `w`, `{w,x,y}` or `{w,x,z}` lies on a common arc. The quantifier
/// ranges over the current vertices plus one constructed witness: when `x`
/// is off `[y, z]`, a leaf hung from a branch point inside the arc from `x`
/// to `[y, z]` lies on no arc containing that arc. Building it takes one
/// extension, or two if no interior vertex has room.
pub fn betweenness_via_common_arc(
    model: &mut DendriteModel,
    x: VertexId,
    y: VertexId,
    z: VertexId,
    budget: usize,
) -> Result<BetweennessDecision> {
    let target = model.arc(y, z)?.into_iter().collect();
    let f = model.first_point(x, &target)?;
    let refutes = |model: &DendriteModel, w: VertexId| {
        let rooted = Rooted::new(model, x);
        !rooted.common_arc(w, y) && !rooted.common_arc(w, z)
    };
    let rooted = Rooted::new(model, x);
    if let Some(w) = model
        .vertex_ids()
        .find(|&w| !rooted.common_arc(w, y) && !rooted.common_arc(w, z))
    {
        return Ok(BetweennessDecision {
            between: false,
            witness: Some(w),
            extensions: 0,
        });
    }
    if f == x {
        return Ok(BetweennessDecision {
            between: true,
            witness: None,
            extensions: 0,
        });
    }
    let arc = model.arc(x, f)?;
    let roomy = arc[1..arc.len() - 1]
        .iter()
        .copied()
        .find(|&v| model.vertex(v).is_ok_and(|mv| !mv.is_saturated()));
    let needed = if roomy.is_some() { 1 } else { 2 };
    if needed > budget {
        return Err(Error::BudgetExhausted(budget));
    }
    let w = match roomy {
        Some(b) => model.sprout(b, OrderLabel::END)?,
        None => {
            let b = model.insert_on_edge([arc[0], arc[1]], model.signature().min_branch())?;
            model.sprout(b, OrderLabel::END)?
        }
    };
    let refuted = refutes(model, w);
    Ok(BetweennessDecision {
        between: !refuted,
        witness: refuted.then_some(w),
        extensions: needed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelled_trees::Signature;

    fn star() -> DendriteModel {
        DendriteModel::new(Signature::parse("3").unwrap(), 0)
    }

    #[test]
    fn relations_on_the_star() {
        let m = star();
        assert!(common_arc(&m, 1, 1, 1).unwrap());
        assert!(common_arc(&m, 1, 0, 2).unwrap());
        assert!(!common_arc(&m, 1, 2, 3).unwrap());
        assert_eq!(stabilizer_witness(&m, 1, 2, 3).unwrap(), Some(0));
        assert_eq!(stabilizer_witness(&m, 1, 0, 2).unwrap(), None);
        assert_eq!(stabilizer_witness(&m, 1, 1, 2), Err(Error::NotDistinct));
        assert!(betweenness(&m, 0, 1, 2).unwrap());
        assert!(betweenness(&m, 1, 1, 2).unwrap());
        assert!(!betweenness(&m, 3, 1, 2).unwrap());
    }

    #[test]
    fn decisions_by_extension_count() {
        let mut m = star();
        let a = m.insert_on_edge([0, 1], OrderLabel::Finite(3)).unwrap();
        // a has room: one sprout suffices
        let d = betweenness_via_common_arc(&mut m, 1, 2, 3, 2).unwrap();
        assert!(!d.between);
        assert_eq!(d.extensions, 1);
        assert_eq!(m.neighbours(a).len(), 3);
        // the leaf hung from a now refutes without extending
        let d = betweenness_via_common_arc(&mut m, 1, 2, 3, 2).unwrap();
        assert_eq!((d.between, d.extensions), (false, 0));
        assert!(betweenness_via_common_arc(&mut m, 0, 1, 2, 2).unwrap().between);
        assert!(betweenness_via_common_arc(&mut m, 2, 1, 2, 2).unwrap().between);
    }

    #[test]
    fn witness_is_built_in_two_steps() {
        let mut m = star();
        // 1 hangs off [2,3] through the saturated centre: x is adjacent to f
        let d = betweenness_via_common_arc(&mut m, 1, 2, 3, 2).unwrap();
        assert!(!d.between);
        assert_eq!(d.extensions, 2);
        assert_eq!(m.len(), 6);
        m.check_invariants().unwrap();

        let mut m = star();
        assert_eq!(
            betweenness_via_common_arc(&mut m, 1, 2, 3, 1),
            Err(Error::BudgetExhausted(1))
        );
    }
}
