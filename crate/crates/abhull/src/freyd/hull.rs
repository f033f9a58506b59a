//! The abelian hull tower over a finite base category: additive hull,
//! cokernel completion, opposite, completion again, opposite again.
//! The top level is abelian with computable kernels and cokernels.

use std::sync::Arc;

use crate::addhull::{AddCategory, AddObject};
use crate::fincat::{FiniteCategory, VertexId};

use super::base::{AdditiveBase, Mor};
use super::category::{Freyd, FreydObj};
use super::opposite::Opposite;
use super::FreydError;

/// Object of the first completion level.
pub type EObj = FreydObj<AddObject>;
/// Object of the abelian hull.
pub type HObj = FreydObj<EObj>;
/// Morphism of the abelian hull.
pub type HMor = Mor<HObj>;

/// Middle layer: the opposite of the first completion.
pub type MidLayer<F> = Opposite<Freyd<AddCategory<F>>>;
/// Top layer before the final opposite.
pub type TopCompletion<F> = Freyd<MidLayer<F>>;
/// The abelian hull as an additive base.
pub type HullLayer<F> = Opposite<TopCompletion<F>>;

/// The full completion tower over a finite category. All levels share
/// structure, so hom computations at the top reuse the cached data of
/// the levels below.
#[derive(Debug)]
pub struct Tower<F: FiniteCategory> {
    pub finite: Arc<F>,
    pub add: Arc<AddCategory<F>>,
    pub level2: Arc<Freyd<AddCategory<F>>>,
    pub mid: Arc<MidLayer<F>>,
    pub level3: Arc<TopCompletion<F>>,
    pub hull: Arc<HullLayer<F>>,
}

impl<F: FiniteCategory> Tower<F> {
    pub fn new(finite: Arc<F>) -> Result<Self, FreydError> {
        check_finite_category(finite.as_ref())?;
        let add = Arc::new(AddCategory::new(finite.clone())?);
        let level2 = Arc::new(Freyd::new(add.clone()));
        let mid = Arc::new(Opposite::new(level2.clone()));
        let level3 = Arc::new(Freyd::new(mid.clone()));
        let hull = Arc::new(Opposite::new(level3.clone()));
        Ok(Tower {
            finite,
            add,
            level2,
            mid,
            level3,
            hull,
        })
    }

    /// Embedding of a vertex through both completion levels.
    pub fn embed(&self, v: VertexId) -> HObj {
        let e_obj = self.level2.representable(&AddObject::single(v));
        self.level3.representable(&e_obj)
    }

    /// Embedding of an additive-hull object.
    pub fn embed_add(&self, a: &AddObject) -> HObj {
        let e_obj = self.level2.representable(a);
        self.level3.representable(&e_obj)
    }

    /// The representable morphism of the hull induced by an
    /// additive-hull morphism.
    pub fn embed_mor(&self, m: &Mor<AddObject>) -> Result<HMor, FreydError> {
        let rep2 = self.level2.representable_mor(m)?;
        // In the middle (opposite) layer the same data is a morphism
        // in the other direction; its representable at the top level
        // is the hull morphism embed(src) -> embed(tgt).
        let rep3 = self.level3.representable_mor(&rep2.swap_endpoints())?;
        Ok(rep3.swap_endpoints())
    }

    /// The representable morphism induced by a base-category morphism
    /// (a path or word index between two vertices).
    pub fn embed_base_mor(&self, a: VertexId, b: VertexId, idx: usize) -> Result<HMor, FreydError> {
        let src = AddObject::single(a);
        let tgt = AddObject::single(b);
        let group = self.add.hom(&src, &tgt);
        let mut coords = vec![num_bigint::BigInt::from(0); group.gen_count()];
        coords[idx] = num_bigint::BigInt::from(1);
        self.embed_mor(&Mor {
            src,
            tgt,
            coords,
        })
    }

    /// Kernel in the hull: the cokernel of the underlying morphism one
    /// opposite level down, transported back. Always available.
    pub fn kernel(&self, f: &HMor) -> (HObj, HMor) {
        let (obj, proj) = self.level3.cokernel(&f.swap_endpoints());
        (obj, proj.swap_endpoints())
    }

    /// Cokernel in the hull: the kernel one opposite level down, built
    /// from two weak kernels of the middle layer.
    pub fn cokernel(&self, f: &HMor) -> Result<(HObj, HMor), FreydError> {
        let (obj, incl) = self.level3.kernel(&f.swap_endpoints())?;
        Ok((obj, incl.swap_endpoints()))
    }

    pub fn hom(&self, x: &HObj, y: &HObj) -> Arc<crate::zlin::FpAbGroup> {
        self.hull.hom(x, y)
    }

    /// Hom-group generators as hull morphisms.
    pub fn hom_gens(&self, x: &HObj, y: &HObj) -> Vec<HMor> {
        let group = self.hull.hom(x, y);
        (0..group.gen_count())
            .map(|i| Mor {
                src: x.clone(),
                tgt: y.clone(),
                coords: super::base::unit_coords(group.gen_count(), i),
            })
            .collect()
    }

    pub fn compose(&self, g: &HMor, f: &HMor) -> Result<HMor, FreydError> {
        self.hull.compose_mor(g, f)
    }

    pub fn identity(&self, x: &HObj) -> HMor {
        self.hull.identity_mor(x)
    }

    pub fn is_zero_object(&self, x: &HObj) -> bool {
        self.hull.is_zero_object(x)
    }

    pub fn zero_object(&self) -> HObj {
        self.hull.zero_object()
    }
}

/// Associativity and identity laws of the finite base composition
/// table, checked exhaustively. Cheap for desk-scale categories and a
/// hard error otherwise: everything above rests on this table.
fn check_finite_category<F: FiniteCategory>(cat: &F) -> Result<(), FreydError> {
    let n = cat.vertex_count();
    let v = |i: usize| VertexId(i);
    for a in 0..n {
        for b in 0..n {
            for f in 0..cat.hom_len(v(a), v(b)) {
                let ia = cat.identity_idx(v(a));
                let ib = cat.identity_idx(v(b));
                if cat.compose_idx(v(a), v(a), v(b), f, ia) != f
                    || cat.compose_idx(v(a), v(b), v(b), ib, f) != f
                {
                    return Err(FreydError::BaseInconsistent("identity law fails"));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for f in 0..cat.hom_len(v(a), v(b)) {
                        for g in 0..cat.hom_len(v(b), v(c)) {
                            for h in 0..cat.hom_len(v(c), v(d)) {
                                let hg = cat.compose_idx(v(b), v(c), v(d), h, g);
                                let gf = cat.compose_idx(v(a), v(b), v(c), g, f);
                                if cat.compose_idx(v(a), v(b), v(d), hg, f)
                                    != cat.compose_idx(v(a), v(c), v(d), h, gf)
                                {
                                    return Err(FreydError::BaseInconsistent(
                                        "associativity fails",
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
