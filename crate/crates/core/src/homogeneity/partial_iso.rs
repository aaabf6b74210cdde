use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dendrite_model::{DendriteModel, VertexId};
use crate::error::{Error, Result};
use crate::labelled_trees::{canonical_code, CanonicalCode, OrderLabel};

/// A retained vertex of a tuple's type, named so that it can be found again
/// from any tuple of the same type: either a coordinate or the median of three.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Anchor {
    Mark(usize),
    Median(usize, usize, usize),
}

/// Where a new point sits relative to the spanned subtree of a tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Placement {
    /// On a retained vertex.
    At(Anchor),
    /// Inside the arc of a type edge.
    Inside {
        from: Anchor,
        to: Anchor,
        label: OrderLabel,
    },
    /// Off the subtree, attached at a retained vertex.
    Off { at: Anchor, label: OrderLabel },
    /// Off the subtree, attached at a branch point inside the arc of a type edge.
    OffInside {
        from: Anchor,
        to: Anchor,
        branch: OrderLabel,
        label: OrderLabel,
    },
}

fn type_code(model: &DendriteModel, tuple: &[VertexId]) -> Result<CanonicalCode> {
    canonical_code(&model.configuration_type(tuple)?)
}

/// Tuples of equal arity lie in one orbit exactly when their types agree.
pub fn orbit_equal(model: &DendriteModel, a: &[VertexId], b: &[VertexId]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::ArityMismatch(a.len(), b.len()));
    }
    Ok(type_code(model, a)? == type_code(model, b)?)
}

fn locate(model: &DendriteModel, tuple: &[VertexId], v: VertexId) -> Result<Placement> {
    model.check(v)?;
    let skeleton = model.skeleton(tuple)?;
    let anchor = |r: VertexId| -> Anchor {
        if let Some(i) = tuple.iter().position(|&t| t == r) {
            return Anchor::Mark(i);
        }
        // An unmarked retained vertex branches at least three ways inside the
        // spanned subtree and every branch reaches a marked leaf.
        let mut marks = model
            .neighbours(r)
            .iter()
            .filter(|w| skeleton.steiner.contains(w))
            .map(|&start| {
                let mut seen = BTreeSet::from([r, start]);
                let mut queue = VecDeque::from([start]);
                while let Some(u) = queue.pop_front() {
                    if let Some(i) = tuple.iter().position(|&t| t == u) {
                        return i;
                    }
                    for &w in model.neighbours(u) {
                        if skeleton.steiner.contains(&w) && seen.insert(w) {
                            queue.push_back(w);
                        }
                    }
                }
                unreachable!("every branch of the spanned subtree ends at a mark")
            });
        let (i, j, k) = (
            marks.next().expect("three branches"),
            marks.next().expect("three branches"),
            marks.next().expect("three branches"),
        );
        Anchor::Median(i, j, k)
    };
    if skeleton.retained.contains(&v) {
        return Ok(Placement::At(anchor(v)));
    }
    let label = model.target(v);
    let foot = model.first_point_unchecked(v, &skeleton.steiner);
    if foot == v {
        let (a, b) = skeleton
            .edge_through(v)
            .expect("suppressed vertices lie on a type edge");
        return Ok(Placement::Inside {
            from: anchor(a),
            to: anchor(b),
            label,
        });
    }
    if skeleton.retained.contains(&foot) {
        return Ok(Placement::Off {
            at: anchor(foot),
            label,
        });
    }
    let (a, b) = skeleton
        .edge_through(foot)
        .expect("suppressed vertices lie on a type edge");
    Ok(Placement::OffInside {
        from: anchor(a),
        to: anchor(b),
        branch: model.target(foot),
        label,
    })
}

fn resolve(model: &DendriteModel, tuple: &[VertexId], anchor: Anchor) -> Result<VertexId> {
    match anchor {
        Anchor::Mark(i) => Ok(tuple[i]),
        Anchor::Median(i, j, k) => model.median(tuple[i], tuple[j], tuple[k]),
    }
}

/// Vertices hanging off `at` in directions that leave `steiner`.
fn hanging_off(model: &DendriteModel, at: VertexId, steiner: &BTreeSet<VertexId>) -> Vec<VertexId> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::from([at]);
    let mut queue: VecDeque<VertexId> = model
        .neighbours(at)
        .iter()
        .copied()
        .filter(|w| !steiner.contains(w))
        .collect();
    seen.extend(queue.iter().copied());
    while let Some(u) = queue.pop_front() {
        out.push(u);
        for &w in model.neighbours(u) {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    out
}

fn interior(model: &DendriteModel, a: VertexId, b: VertexId) -> Result<Vec<VertexId>> {
    let arc = model.arc(a, b)?;
    Ok(arc[1..arc.len() - 1].to_vec())
}

fn insert_on_arc(
    model: &mut DendriteModel,
    a: VertexId,
    b: VertexId,
    label: OrderLabel,
    rng: &mut ChaCha8Rng,
) -> Result<VertexId> {
    let arc = model.arc(a, b)?;
    let i = rand::Rng::gen_range(rng, 0..arc.len() - 1);
    model.insert_on_edge([arc[i], arc[i + 1]], label)
}

/// Finds or builds a point of `model` standing to `tuple` as the located
/// point stood to the source tuple. Existing candidates are preferred, chosen
/// by the seeded generator.
fn realize(
    model: &mut DendriteModel,
    tuple: &[VertexId],
    placement: Placement,
    rng: &mut ChaCha8Rng,
) -> Result<VertexId> {
    match placement {
        Placement::At(anchor) => resolve(model, tuple, anchor),
        Placement::Inside { from, to, label } => {
            let (a, b) = (resolve(model, tuple, from)?, resolve(model, tuple, to)?);
            let candidates: Vec<VertexId> = interior(model, a, b)?
                .into_iter()
                .filter(|&w| model.target(w) == label)
                .collect();
            match candidates.choose(rng) {
                Some(&w) => Ok(w),
                None => insert_on_arc(model, a, b, label, rng),
            }
        }
        Placement::Off { at, label } => {
            let x = resolve(model, tuple, at)?;
            let steiner = model.steiner_set(tuple)?;
            let candidates: Vec<VertexId> = hanging_off(model, x, &steiner)
                .into_iter()
                .filter(|&w| model.target(w) == label)
                .collect();
            match candidates.choose(rng) {
                Some(&w) => Ok(w),
                None => model.hang_leaf(x, label, &steiner),
            }
        }
        Placement::OffInside {
            from,
            to,
            branch,
            label,
        } => {
            let (a, b) = (resolve(model, tuple, from)?, resolve(model, tuple, to)?);
            let steiner = model.steiner_set(tuple)?;
            let feet: Vec<VertexId> = interior(model, a, b)?
                .into_iter()
                .filter(|&f| model.target(f) == branch)
                .collect();
            let candidates: Vec<VertexId> = feet
                .iter()
                .flat_map(|&f| hanging_off(model, f, &steiner))
                .filter(|&w| model.target(w) == label)
                .collect();
            if let Some(&w) = candidates.choose(rng) {
                return Ok(w);
            }
            let foot = match feet.choose(rng) {
                Some(&f) => f,
                None => insert_on_arc(model, a, b, branch, rng)?,
            };
            model.hang_leaf(foot, label, &steiner)
        }
    }
}

/// A finite matching between two models whose matched tuples have the same
/// type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialIso {
    pairs: Vec<(VertexId, VertexId)>,
}

impl PartialIso {
    pub fn new(domain: &DendriteModel, a: &[VertexId], codomain: &DendriteModel, b: &[VertexId]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::ArityMismatch(a.len(), b.len()));
        }
        if type_code(domain, a)? != type_code(codomain, b)? {
            return Err(Error::TypeMismatch);
        }
        Ok(PartialIso {
            pairs: a.iter().copied().zip(b.iter().copied()).collect(),
        })
    }

    pub fn pairs(&self) -> &[(VertexId, VertexId)] {
        &self.pairs
    }

    pub fn domain_tuple(&self) -> Vec<VertexId> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn codomain_tuple(&self) -> Vec<VertexId> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn image(&self, v: VertexId) -> Option<VertexId> {
        self.pairs.iter().find(|p| p.0 == v).map(|p| p.1)
    }

    pub fn preimage(&self, w: VertexId) -> Option<VertexId> {
        self.pairs.iter().find(|p| p.1 == w).map(|p| p.0)
    }

    /// Whether the matched tuples still have equal types.
    pub fn holds(&self, domain: &DendriteModel, codomain: &DendriteModel) -> Result<bool> {
        Ok(type_code(domain, &self.domain_tuple())? == type_code(codomain, &self.codomain_tuple())?)
    }

    /// Matches a new domain vertex, extending the codomain when no existing
    /// vertex fits.
    pub fn extend_one_point(
        &mut self,
        domain: &DendriteModel,
        codomain: &mut DendriteModel,
        v: VertexId,
        rng: &mut ChaCha8Rng,
    ) -> Result<VertexId> {
        if let Some(w) = self.image(v) {
            return Ok(w);
        }
        let placement = locate(domain, &self.domain_tuple(), v)?;
        let w = realize(codomain, &self.codomain_tuple(), placement, rng)?;
        self.pairs.push((v, w));
        Ok(w)
    }

    /// `extend_one_point` when domain and codomain are the same model.
    pub fn extend_within(&mut self, model: &mut DendriteModel, v: VertexId, rng: &mut ChaCha8Rng) -> Result<VertexId> {
        if let Some(w) = self.image(v) {
            return Ok(w);
        }
        let placement = locate(model, &self.domain_tuple(), v)?;
        let w = realize(model, &self.codomain_tuple(), placement, rng)?;
        self.pairs.push((v, w));
        Ok(w)
    }

    /// The backward step: finds a preimage for a new codomain vertex.
    pub fn extend_back_within(
        &mut self,
        model: &mut DendriteModel,
        w: VertexId,
        rng: &mut ChaCha8Rng,
    ) -> Result<VertexId> {
        if let Some(v) = self.preimage(w) {
            return Ok(v);
        }
        let placement = locate(model, &self.codomain_tuple(), w)?;
        let v = realize(model, &self.domain_tuple(), placement, rng)?;
        self.pairs.push((v, w));
        Ok(v)
    }
}

/// An automorphism of the limit, held as a partial isomorphism of one model
/// that grows on demand.
#[derive(Debug, Clone)]
pub struct LazyAutomorphism {
    model: DendriteModel,
    iso: PartialIso,
    rng: ChaCha8Rng,
}

/// Starts an automorphism sending `a` to `b` coordinatewise.
pub fn build_automorphism(model: DendriteModel, a: &[VertexId], b: &[VertexId], seed: u64) -> Result<LazyAutomorphism> {
    let iso = PartialIso::new(&model, a, &model, b)?;
    Ok(LazyAutomorphism {
        model,
        iso,
        rng: ChaCha8Rng::seed_from_u64(seed),
    })
}

impl LazyAutomorphism {
    pub fn apply(&mut self, v: VertexId) -> Result<VertexId> {
        self.iso.extend_within(&mut self.model, v, &mut self.rng)
    }

    pub fn apply_inverse(&mut self, w: VertexId) -> Result<VertexId> {
        self.iso.extend_back_within(&mut self.model, w, &mut self.rng)
    }

    pub fn matching(&self) -> &PartialIso {
        &self.iso
    }

    pub fn model(&self) -> &DendriteModel {
        &self.model
    }

    /// Mutable access for growing the model between queries. Extension moves
    /// never change the type of an existing tuple, so the matching stays valid.
    pub fn model_mut(&mut self) -> &mut DendriteModel {
        &mut self.model
    }

    pub fn into_model(self) -> DendriteModel {
        self.model
    }

    pub fn holds(&self) -> Result<bool> {
        self.iso.holds(&self.model, &self.model)
    }
}
