use std::collections::{BTreeSet, VecDeque};

use super::{DendriteModel, VertexId};
use crate::error::{Error, Result};
use crate::labelled_trees::OrderLabel;

impl DendriteModel {
    /// Breadth-first parent pointers from `root`.
    pub(crate) fn parents_from(&self, root: VertexId) -> Vec<Option<VertexId>> {
        let mut parent = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[root as usize] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbours(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    parent[w as usize] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// The unique path from `x` to `y`, both included.
    pub fn arc(&self, x: VertexId, y: VertexId) -> Result<Vec<VertexId>> {
        self.check(x)?;
        self.check(y)?;
        let parent = self.parents_from(y);
        let mut path = vec![x];
        let mut cur = x;
        while cur != y {
            cur = parent[cur as usize].expect("model is connected");
            path.push(cur);
        }
        Ok(path)
    }

    /// Nearest-point retraction of `x` onto the connected vertex set `target`.
    pub fn first_point(&self, x: VertexId, target: &BTreeSet<VertexId>) -> Result<VertexId> {
        self.check(x)?;
        self.check_connected(target)?;
        Ok(self.first_point_unchecked(x, target))
    }

    pub(crate) fn first_point_unchecked(&self, x: VertexId, target: &BTreeSet<VertexId>) -> VertexId {
        if target.contains(&x) {
            return x;
        }
        let mut seen = vec![false; self.len()];
        seen[x as usize] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbours(v) {
                if target.contains(&w) {
                    return w;
                }
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push_back(w);
                }
            }
        }
        unreachable!("target set is nonempty and the model is connected")
    }

    pub(crate) fn check_connected(&self, set: &BTreeSet<VertexId>) -> Result<()> {
        let start = *set.iter().next().ok_or(Error::EmptyVertexSet)?;
        for &v in set {
            self.check(v)?;
        }
        let mut reached = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbours(v) {
                if set.contains(&w) && reached.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if reached.len() == set.len() {
            Ok(())
        } else {
            Err(Error::DisconnectedVertexSet)
        }
    }

    /// The centre of the tripod spanned by three vertices.
    pub fn median(&self, x: VertexId, y: VertexId, z: VertexId) -> Result<VertexId> {
        self.check(x)?;
        let arc: BTreeSet<VertexId> = self.arc(y, z)?.into_iter().collect();
        Ok(self.first_point_unchecked(x, &arc))
    }

    /// Whether `(x, y)` lies in the entourage U_F, i.e. `arc(x, y)` meets `f`
    /// at most once.
    pub fn entourage_related(&self, x: VertexId, y: VertexId, f: &BTreeSet<VertexId>) -> Result<bool> {
        let hits = self.arc(x, y)?.iter().filter(|v| f.contains(v)).count();
        Ok(hits <= 1)
    }

    /// A vertex whose removal puts `x` and `y` in different components,
    /// chosen nearest to `x`. Adjacent points first get a regular point
    /// inserted between them.
    pub fn separate(&mut self, x: VertexId, y: VertexId) -> Result<VertexId> {
        if x == y {
            return Err(Error::NotDistinct);
        }
        let arc = self.arc(x, y)?;
        if arc.len() == 2 {
            return self.insert_on_edge([x, y], OrderLabel::REGULAR);
        }
        Ok(arc[1])
    }

    /// Vertex set of the smallest subtree containing all of `points`.
    pub fn steiner_set(&self, points: &[VertexId]) -> Result<BTreeSet<VertexId>> {
        let (&first, _) = points.split_first().ok_or(Error::EmptyTuple)?;
        for &p in points {
            self.check(p)?;
        }
        let parent = self.parents_from(first);
        let mut set = BTreeSet::from([first]);
        for &p in points {
            let mut cur = p;
            while set.insert(cur) {
                cur = parent[cur as usize].expect("model is connected");
            }
        }
        Ok(set)
    }
}
