//! The path category of an acyclic quiver as a finite category with an
//! explicit composition table.

use std::collections::BTreeMap;

use super::quiver::{hom_paths, Path, Quiver, VertexId};
use super::{FincatError, FiniteCategory};

/// Objects: vertices. Morphisms: paths, indexed per ordered vertex
/// pair in the deterministic (length, arrow sequence) order.
#[derive(Debug)]
pub struct PathCategory {
    quiver: Quiver,
    hom: BTreeMap<(VertexId, VertexId), Vec<Path>>,
    index: BTreeMap<(VertexId, VertexId, Vec<super::quiver::ArrowId>), usize>,
}

impl PathCategory {
    pub fn new(quiver: Quiver) -> Result<Self, FincatError> {
        if !quiver.is_acyclic() {
            return Err(FincatError::InfiniteHomSet);
        }
        let mut hom = BTreeMap::new();
        let mut index = BTreeMap::new();
        for a in quiver.vertices() {
            for b in quiver.vertices() {
                let paths = hom_paths(&quiver, a, b)?;
                for (i, p) in paths.iter().enumerate() {
                    index.insert((a, b, p.arrows.clone()), i);
                }
                hom.insert((a, b), paths);
            }
        }
        Ok(PathCategory { quiver, hom, index })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn paths(&self, a: VertexId, b: VertexId) -> &[Path] {
        &self.hom[&(a, b)]
    }

    pub fn path(&self, a: VertexId, b: VertexId, idx: usize) -> &Path {
        &self.hom[&(a, b)][idx]
    }

    pub fn path_index(&self, p: &Path) -> Option<usize> {
        self.index.get(&(p.src, p.tgt, p.arrows.clone())).copied()
    }
}

impl FiniteCategory for PathCategory {
    fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    fn vertex_label(&self, v: VertexId) -> String {
        self.quiver.vertex_name(v).to_string()
    }

    fn hom_len(&self, a: VertexId, b: VertexId) -> usize {
        self.hom[&(a, b)].len()
    }

    fn identity_idx(&self, v: VertexId) -> usize {
        self.index[&(v, v, Vec::new())]
    }

    fn compose_idx(&self, a: VertexId, b: VertexId, c: VertexId, g: usize, f: usize) -> usize {
        let fp = &self.hom[&(a, b)][f];
        let gp = &self.hom[&(b, c)][g];
        let mut arrows = fp.arrows.clone();
        arrows.extend_from_slice(&gp.arrows);
        self.index[&(a, c, arrows)]
    }

    fn mor_label(&self, a: VertexId, b: VertexId, idx: usize) -> String {
        self.hom[&(a, b)][idx].label(&self.quiver)
    }
}
