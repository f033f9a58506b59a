//! The functor induced on abelian hulls by localising the base
//! category: paths map to their reduced words, and the map is lifted
//! through the additive hull and both completion levels by
//! transporting presentations and re-expressing hom-group classes.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::{Arc, Mutex};

use crate::addhull::AddCategory;
use crate::fincat::{Letter, LocalisedCategory, PathCategory, ZigzagWord};
use crate::freyd::{
    AdditiveBase, Coords, Freyd, FreydObj, HMor, HObj, MidLayer, Mor, Opposite, Tower,
};
use crate::zlin::MatrixZ;

use super::SerreError;

/// A coordinate-level additive functor between computable bases.
pub trait CoordFunctor<S: AdditiveBase, T: AdditiveBase>: Debug {
    fn map_obj(&self, x: &S::Obj) -> T::Obj;
    /// Image of an element of hom(x, y) in hom(Fx, Fy) coordinates.
    fn map_coords(&self, x: &S::Obj, y: &S::Obj, c: &Coords) -> Result<Coords, SerreError>;
}

/// Base of the lift: the additive hulls of the path category and its
/// localisation. Objects keep their summand lists; a basis path maps
/// to the reduced word with the same arrow sequence.
#[derive(Debug)]
pub struct AddLift {
    src: Arc<AddCategory<PathCategory>>,
    tgt: Arc<AddCategory<LocalisedCategory>>,
}

impl AddLift {
    pub fn new(
        src: Arc<AddCategory<PathCategory>>,
        tgt: Arc<AddCategory<LocalisedCategory>>,
    ) -> Self {
        AddLift { src, tgt }
    }
}

impl CoordFunctor<AddCategory<PathCategory>, AddCategory<LocalisedCategory>> for AddLift {
    fn map_obj(&self, x: &crate::addhull::AddObject) -> crate::addhull::AddObject {
        x.clone()
    }

    fn map_coords(
        &self,
        x: &crate::addhull::AddObject,
        y: &crate::addhull::AddObject,
        c: &Coords,
    ) -> Result<Coords, SerreError> {
        let src_basis = self.src.hom_basis(x, y);
        let tgt_group = self.tgt.hom(x, y);
        let tgt_basis = self.tgt.hom_basis(x, y);
        let loc = self.tgt.base();
        let mut out = vec![num_bigint::BigInt::from(0); tgt_group.gen_count()];
        for (i, coeff) in c.iter().enumerate() {
            if coeff == &num_bigint::BigInt::from(0) {
                continue;
            }
            let t = src_basis[i];
            let a = x.0[t.col];
            let b = y.0[t.row];
            let path = self.src.base().path(a, b, t.mor);
            let word = ZigzagWord {
                src: a,
                tgt: b,
                letters: path.arrows.iter().map(|&ar| Letter::Fwd(ar)).collect(),
            };
            let widx = loc
                .word_index(&word)
                .ok_or(SerreError::IncompleteLocalisation)?;
            let pos = tgt_basis
                .iter()
                .position(|tt| tt.row == t.row && tt.col == t.col && tt.mor == widx)
                .ok_or_else(|| SerreError::Internal("basis triple missing in target".into()))?;
            out[pos] += coeff;
        }
        Ok(out)
    }
}

/// Lifts a coordinate functor through one completion level.
pub struct FreydLift<S: AdditiveBase, T: AdditiveBase, F: CoordFunctor<S, T>> {
    inner: F,
    src: Arc<Freyd<S>>,
    tgt: Arc<Freyd<T>>,
    cache: Mutex<BTreeMap<(FreydObj<S::Obj>, FreydObj<S::Obj>), Arc<MatrixZ>>>,
}

impl<S: AdditiveBase, T: AdditiveBase, F: CoordFunctor<S, T>> Debug for FreydLift<S, T, F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FreydLift({:?})", self.inner)
    }
}

impl<S: AdditiveBase, T: AdditiveBase, F: CoordFunctor<S, T>> FreydLift<S, T, F> {
    pub fn new(inner: F, src: Arc<Freyd<S>>, tgt: Arc<Freyd<T>>) -> Self {
        FreydLift {
            inner,
            src,
            tgt,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    /// Matrix whose rows are the images of the canonical generators of
    /// hom(x, y) expressed over the canonical generators of the mapped
    /// hom-group.
    fn gen_matrix(
        &self,
        x: &FreydObj<S::Obj>,
        y: &FreydObj<S::Obj>,
    ) -> Result<Arc<MatrixZ>, SerreError> {
        let key = (x.clone(), y.clone());
        if let Some(m) = self.cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let src_data = self.src.hom_data(x, y);
        let fx = self.map_obj_inner(x)?;
        let fy = self.map_obj_inner(y)?;
        let tgt_data = self.tgt.hom_data(&fx, &fy);
        let mut rows = Vec::with_capacity(src_data.gens.len());
        for gen in &src_data.gens {
            let mapped = self.inner.map_coords(&x.cod, &y.cod, &gen.f0)?;
            let row = tgt_data.classify(&mapped).ok_or_else(|| {
                SerreError::Internal("mapped component failed the compatibility condition".into())
            })?;
            rows.push(row);
        }
        let m = Arc::new(MatrixZ::from_rows(tgt_data.group.gen_count(), &rows));
        self.cache.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    fn map_obj_inner(&self, x: &FreydObj<S::Obj>) -> Result<FreydObj<T::Obj>, SerreError> {
        Ok(FreydObj {
            dom: self.inner.map_obj(&x.dom),
            cod: self.inner.map_obj(&x.cod),
            map: self.inner.map_coords(&x.dom, &x.cod, &x.map)?,
        })
    }
}

impl<S: AdditiveBase, T: AdditiveBase, F: CoordFunctor<S, T>> CoordFunctor<Freyd<S>, Freyd<T>>
    for FreydLift<S, T, F>
{
    fn map_obj(&self, x: &FreydObj<S::Obj>) -> FreydObj<T::Obj> {
        self.map_obj_inner(x)
            .expect("object transport over a complete localisation cannot fail")
    }

    fn map_coords(
        &self,
        x: &FreydObj<S::Obj>,
        y: &FreydObj<S::Obj>,
        c: &Coords,
    ) -> Result<Coords, SerreError> {
        let m = self.gen_matrix(x, y)?;
        let fx = self.map_obj_inner(x)?;
        let fy = self.map_obj_inner(y)?;
        let group = self.tgt.hom(&fx, &fy);
        Ok(group.reduce(&MatrixZ::vec_mul(c, &m)))
    }
}

/// Wraps a coordinate functor to act between the opposite bases.
#[derive(Debug)]
pub struct OpLift<F>(pub F);

impl<S, T, F> CoordFunctor<Opposite<S>, Opposite<T>> for OpLift<F>
where
    S: AdditiveBase,
    T: AdditiveBase,
    F: CoordFunctor<S, T>,
{
    fn map_obj(&self, x: &S::Obj) -> T::Obj {
        self.0.map_obj(x)
    }

    fn map_coords(&self, x: &S::Obj, y: &S::Obj, c: &Coords) -> Result<Coords, SerreError> {
        self.0.map_coords(y, x, c)
    }
}

type HullLift = OpLift<
    FreydLift<
        MidLayer<PathCategory>,
        MidLayer<LocalisedCategory>,
        OpLift<FreydLift<AddCategory<PathCategory>, AddCategory<LocalisedCategory>, AddLift>>,
    >,
>;

/// The induced functor between the two abelian hulls. Additive, maps
/// embedded objects to embedded objects, annihilates the kernels and
/// cokernels of the marked arrows, and is exact at the data level:
/// kernel and cokernel constructions commute with it on the nose.
pub struct InducedFunctor {
    pub src: Arc<Tower<PathCategory>>,
    pub tgt: Arc<Tower<LocalisedCategory>>,
    lift: HullLift,
}

impl Debug for InducedFunctor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "InducedFunctor")
    }
}

impl InducedFunctor {
    /// Builds the functor and verifies identity and composition
    /// preservation on a generated sample of hull morphisms. Requires
    /// the localised hom-sets to be certified complete (otherwise the
    /// target tower cannot be built at all).
    pub fn new(
        src: Arc<Tower<PathCategory>>,
        tgt: Arc<Tower<LocalisedCategory>>,
    ) -> Result<Self, SerreError> {
        if !tgt.finite.is_complete() {
            return Err(SerreError::IncompleteLocalisation);
        }
        let add_lift = AddLift::new(src.add.clone(), tgt.add.clone());
        let l2 = FreydLift::new(add_lift, src.level2.clone(), tgt.level2.clone());
        let l4 = FreydLift::new(OpLift(l2), src.level3.clone(), tgt.level3.clone());
        let functor = InducedFunctor {
            src,
            tgt,
            lift: OpLift(l4),
        };
        functor.self_check()?;
        Ok(functor)
    }

    pub fn apply_obj(&self, x: &HObj) -> Result<HObj, SerreError> {
        self.lift.0.map_obj_inner(x)
    }

    pub fn apply_mor(&self, m: &HMor) -> Result<HMor, SerreError> {
        Ok(Mor {
            src: self.apply_obj(&m.src)?,
            tgt: self.apply_obj(&m.tgt)?,
            coords: self.lift.map_coords(&m.src, &m.tgt, &m.coords)?,
        })
    }

    /// The image of an object is zero exactly when its identity maps
    /// to zero; this is the sound non-membership witness for the Serre
    /// subcategory.
    pub fn annihilates(&self, x: &HObj) -> Result<bool, SerreError> {
        Ok(self.tgt.is_zero_object(&self.apply_obj(x)?))
    }

    /// Identity and composition preservation over a small generated
    /// sample: all embedded vertices, one biproduct, and all hom-group
    /// generators between them.
    fn self_check(&self) -> Result<(), SerreError> {
        let quiver = self.src.finite.quiver();
        let mut objects: Vec<HObj> = quiver
            .vertices()
            .take(4)
            .map(|v| self.src.embed(v))
            .collect();
        if objects.len() >= 2 {
            let bp = self
                .src
                .hull
                .biproduct(&objects[0].clone(), &objects[1].clone());
            objects.push(bp.obj);
        }
        for x in &objects {
            let lx = self.apply_obj(x)?;
            let id_image = self.apply_mor(&self.src.identity(x))?;
            let id_target = self.tgt.identity(&lx);
            if !self.tgt.hull.eq_mor(&id_image, &id_target) {
                return Err(SerreError::NotFunctorial(
                    "identity not preserved".to_string(),
                ));
            }
        }
        for x in &objects {
            for y in &objects {
                for f in self.src.hom_gens(x, y) {
                    for z in &objects {
                        for g in self.src.hom_gens(y, z) {
                            let gf = self.src.compose(&g, &f).map_err(SerreError::Freyd)?;
                            let lhs = self.apply_mor(&gf)?;
                            let rhs = self
                                .tgt
                                .compose(&self.apply_mor(&g)?, &self.apply_mor(&f)?)
                                .map_err(SerreError::Freyd)?;
                            if !self.tgt.hull.eq_mor(&lhs, &rhs) {
                                return Err(SerreError::NotFunctorial(
                                    "composition not preserved".to_string(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
