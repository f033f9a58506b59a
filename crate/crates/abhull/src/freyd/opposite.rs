//! The opposite of a computable additive base: same objects, hom-sets
//! swapped, composition transposed. Weak kernels and weak cokernels
//! trade places, which is what makes the second completion level
//! abelian.

use std::sync::Arc;

use crate::zlin::FpAbGroup;

use super::base::{AdditiveBase, Biproduct, Coords, Mor};

#[derive(Debug)]
pub struct Opposite<B: AdditiveBase> {
    base: Arc<B>,
}

impl<B: AdditiveBase> Opposite<B> {
    pub fn new(base: Arc<B>) -> Self {
        Opposite { base }
    }

    pub fn base(&self) -> &Arc<B> {
        &self.base
    }
}

impl<B: AdditiveBase> AdditiveBase for Opposite<B> {
    type Obj = B::Obj;

    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Arc<FpAbGroup> {
        self.base.hom(y, x)
    }

    fn compose_gens(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj, g: usize, f: usize) -> Coords {
        // g: y -> z here is g: z -> y underneath; f: x -> y is y -> x.
        // The opposite composite g o f is the underlying f o g: z -> x.
        self.base.compose_gens(z, y, x, f, g)
    }

    fn identity(&self, x: &Self::Obj) -> Coords {
        self.base.identity(x)
    }

    fn zero_object(&self) -> Self::Obj {
        self.base.zero_object()
    }

    fn biproduct(&self, x: &Self::Obj, y: &Self::Obj) -> Biproduct<Self::Obj> {
        let bp = self.base.biproduct(x, y);
        Biproduct {
            obj: bp.obj,
            inj_left: bp.proj_left.swap_endpoints(),
            inj_right: bp.proj_right.swap_endpoints(),
            proj_left: bp.inj_left.swap_endpoints(),
            proj_right: bp.inj_right.swap_endpoints(),
        }
    }

    fn weak_kernel(&self, f: &Mor<Self::Obj>) -> Option<(Self::Obj, Mor<Self::Obj>)> {
        self.base
            .weak_cokernel(&f.swap_endpoints())
            .map(|(o, m)| (o, m.swap_endpoints()))
    }

    fn weak_cokernel(&self, f: &Mor<Self::Obj>) -> Option<(Self::Obj, Mor<Self::Obj>)> {
        self.base
            .weak_kernel(&f.swap_endpoints())
            .map(|(o, m)| (o, m.swap_endpoints()))
    }
}
