//! The additive hull of the integer linearisation of a finite
//! category: objects are formal finite direct sums of vertices,
//! morphisms are matrices of integer combinations of base morphisms.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::fincat::{FiniteCategory, VertexId};
use crate::freyd::base::{unit_coords, AdditiveBase, Biproduct, Coords, Mor};
use crate::freyd::FreydError;
use crate::zlin::FpAbGroup;

/// A formal finite direct sum of vertices. The summand order matters:
/// downstream presentation matrices index into it, so a permutation
/// gives an isomorphic but unequal object.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AddObject(pub Vec<VertexId>);

impl AddObject {
    pub fn zero() -> Self {
        AddObject(Vec::new())
    }

    pub fn single(v: VertexId) -> Self {
        AddObject(vec![v])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Basis element of a hom-group: base morphism `mor` from summand
/// `col` of the source to summand `row` of the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisTriple {
    pub row: usize,
    pub col: usize,
    pub mor: usize,
}

#[derive(Debug)]
struct HomBasis {
    triples: Vec<BasisTriple>,
    index: BTreeMap<(usize, usize, usize), usize>,
    group: Arc<FpAbGroup>,
}

/// The additive hull over a finite base category. Hom-groups are free
/// on the basis triples; composition structure constants come from the
/// base composition table.
#[derive(Debug)]
pub struct AddCategory<F: FiniteCategory> {
    base: Arc<F>,
    cache: Mutex<BTreeMap<(AddObject, AddObject), Arc<HomBasis>>>,
}

impl<F: FiniteCategory> AddCategory<F> {
    /// Requires certified-complete hom-sets in the base: the hull's
    /// hom-groups must be genuinely finite-rank.
    pub fn new(base: Arc<F>) -> Result<Self, FreydError> {
        if !base.complete() {
            return Err(FreydError::IncompleteBase);
        }
        Ok(AddCategory {
            base,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn base(&self) -> &Arc<F> {
        &self.base
    }

    fn basis(&self, x: &AddObject, y: &AddObject) -> Arc<HomBasis> {
        if let Some(b) = self.cache.lock().unwrap().get(&(x.clone(), y.clone())) {
            return b.clone();
        }
        let mut triples = Vec::new();
        let mut index = BTreeMap::new();
        for (row, &target) in y.0.iter().enumerate() {
            for (col, &source) in x.0.iter().enumerate() {
                for mor in 0..self.base.hom_len(source, target) {
                    index.insert((row, col, mor), triples.len());
                    triples.push(BasisTriple { row, col, mor });
                }
            }
        }
        let group = Arc::new(FpAbGroup::free(triples.len()));
        let data = Arc::new(HomBasis {
            triples,
            index,
            group,
        });
        self.cache
            .lock()
            .unwrap()
            .insert((x.clone(), y.clone()), data.clone());
        data
    }

    /// The distinguished basis of hom(x, y), as (row, col, base
    /// morphism index) triples in deterministic order.
    pub fn hom_basis(&self, x: &AddObject, y: &AddObject) -> Vec<BasisTriple> {
        self.basis(x, y).triples.clone()
    }

    pub fn basis_mor(&self, x: &AddObject, y: &AddObject, t: BasisTriple) -> Mor<AddObject> {
        let b = self.basis(x, y);
        let idx = b.index[&(t.row, t.col, t.mor)];
        Mor {
            src: x.clone(),
            tgt: y.clone(),
            coords: unit_coords(b.triples.len(), idx),
        }
    }

    /// Builds a morphism from a matrix of entries: `entries[row][col]`
    /// lists (coefficient, base morphism index) pairs for the component
    /// from summand `col` of `x` to summand `row` of `y`.
    pub fn from_entries(
        &self,
        x: &AddObject,
        y: &AddObject,
        entries: &[Vec<Vec<(i64, usize)>>],
    ) -> Mor<AddObject> {
        let b = self.basis(x, y);
        let mut coords = vec![BigInt::zero(); b.triples.len()];
        for (row, row_entries) in entries.iter().enumerate() {
            for (col, combo) in row_entries.iter().enumerate() {
                for &(c, mor) in combo {
                    coords[b.index[&(row, col, mor)]] += BigInt::from(c);
                }
            }
        }
        Mor {
            src: x.clone(),
            tgt: y.clone(),
            coords,
        }
    }

    /// The (row, col) entry of a morphism as (coefficient, base
    /// morphism index) pairs.
    pub fn entry(&self, m: &Mor<AddObject>, row: usize, col: usize) -> Vec<(BigInt, usize)> {
        let b = self.basis(&m.src, &m.tgt);
        b.triples
            .iter()
            .enumerate()
            .filter(|(_, t)| t.row == row && t.col == col)
            .filter(|(i, _)| !m.coords[*i].is_zero())
            .map(|(i, t)| (m.coords[i].clone(), t.mor))
            .collect()
    }

    pub fn label(&self, m: &Mor<AddObject>) -> String {
        let b = self.basis(&m.src, &m.tgt);
        let terms: Vec<String> = b
            .triples
            .iter()
            .enumerate()
            .filter(|(i, _)| !m.coords[*i].is_zero())
            .map(|(i, t)| {
                format!(
                    "{}*{}[{},{}]",
                    m.coords[i],
                    self.base.mor_label(m.src.0[t.col], m.tgt.0[t.row], t.mor),
                    t.row,
                    t.col
                )
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

impl<F: FiniteCategory> AdditiveBase for AddCategory<F> {
    type Obj = AddObject;

    fn hom(&self, x: &AddObject, y: &AddObject) -> Arc<FpAbGroup> {
        self.basis(x, y).group.clone()
    }

    fn compose_gens(&self, x: &AddObject, y: &AddObject, z: &AddObject, g: usize, f: usize) -> Coords {
        let bf = self.basis(x, y);
        let bg = self.basis(y, z);
        let bout = self.basis(x, z);
        let tf = bf.triples[f];
        let tg = bg.triples[g];
        let mut out = vec![BigInt::zero(); bout.triples.len()];
        // Nonzero only when the middle summand indices line up.
        if tf.row == tg.col {
            let a = x.0[tf.col];
            let b = y.0[tf.row];
            let c = z.0[tg.row];
            let composed = self.base.compose_idx(a, b, c, tg.mor, tf.mor);
            out[bout.index[&(tg.row, tf.col, composed)]] = BigInt::from(1);
        }
        out
    }

    fn identity(&self, x: &AddObject) -> Coords {
        let b = self.basis(x, x);
        let mut coords = vec![BigInt::zero(); b.triples.len()];
        for (i, &v) in x.0.iter().enumerate() {
            let id = self.base.identity_idx(v);
            coords[b.index[&(i, i, id)]] = BigInt::from(1);
        }
        coords
    }

    fn zero_object(&self) -> AddObject {
        AddObject::zero()
    }

    fn biproduct(&self, x: &AddObject, y: &AddObject) -> Biproduct<AddObject> {
        let mut summands = x.0.clone();
        summands.extend_from_slice(&y.0);
        let obj = AddObject(summands);
        let mk = |src: &AddObject, tgt: &AddObject, pairs: Vec<(usize, usize, VertexId)>| {
            let b = self.basis(src, tgt);
            let mut coords = vec![BigInt::zero(); b.triples.len()];
            for (row, col, v) in pairs {
                let id = self.base.identity_idx(v);
                coords[b.index[&(row, col, id)]] = BigInt::from(1);
            }
            Mor {
                src: src.clone(),
                tgt: tgt.clone(),
                coords,
            }
        };
        let nx = x.0.len();
        let inj_left = mk(
            x,
            &obj,
            x.0.iter().enumerate().map(|(i, &v)| (i, i, v)).collect(),
        );
        let inj_right = mk(
            y,
            &obj,
            y.0.iter()
                .enumerate()
                .map(|(i, &v)| (nx + i, i, v))
                .collect(),
        );
        let proj_left = mk(
            &obj,
            x,
            x.0.iter().enumerate().map(|(i, &v)| (i, i, v)).collect(),
        );
        let proj_right = mk(
            &obj,
            y,
            y.0.iter()
                .enumerate()
                .map(|(i, &v)| (i, nx + i, v))
                .collect(),
        );
        Biproduct {
            obj,
            inj_left,
            inj_right,
            proj_left,
            proj_right,
        }
    }
}
