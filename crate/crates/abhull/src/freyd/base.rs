//! The computable additive base: the uniform interface through which
//! the cokernel completion is applied, once to the additive hull and
//! once more to the opposite of the result.
//!
//! Hom-groups are finitely presented abelian groups with distinguished
//! generators; morphism elements are integer coordinate vectors over
//! those generators, and composition is the bilinear extension of a
//! generator-pair table.

use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::zlin::{solve_left, FpAbGroup, MatrixZ};

use super::FreydError;

/// Coordinates of a hom-group element over the distinguished
/// generators of its presentation.
pub type Coords = Vec<BigInt>;

/// A morphism of an additive base: endpoints plus coordinates in
/// hom(src, tgt).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mor<O> {
    pub src: O,
    pub tgt: O,
    pub coords: Coords,
}

impl<O: Clone> Mor<O> {
    pub fn swap_endpoints(&self) -> Mor<O> {
        Mor {
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            coords: self.coords.clone(),
        }
    }
}

/// Biproduct of two objects with its structural morphisms.
#[derive(Clone, Debug)]
pub struct Biproduct<O> {
    pub obj: O,
    pub inj_left: Mor<O>,
    pub inj_right: Mor<O>,
    pub proj_left: Mor<O>,
    pub proj_right: Mor<O>,
}

/// An additive category with computable finitely presented hom-groups,
/// bilinear composition given on generators, identities, a zero
/// object, and biproducts. Implementations are immutable after
/// construction; hom computations are pure and cached internally.
pub trait AdditiveBase: Debug {
    type Obj: Clone + Ord + Debug;

    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Arc<FpAbGroup>;

    /// Composite of the g-th generator of hom(y, z) with the f-th
    /// generator of hom(x, y), in coordinates over hom(x, z).
    fn compose_gens(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj, g: usize, f: usize)
        -> Coords;

    fn identity(&self, x: &Self::Obj) -> Coords;

    fn zero_object(&self) -> Self::Obj;

    fn biproduct(&self, x: &Self::Obj, y: &Self::Obj) -> Biproduct<Self::Obj>;

    /// Weak kernel of a morphism, when the base supports one. A weak
    /// kernel k: W -> src(f) satisfies f o k = 0 and every t with
    /// f o t = 0 factors (not necessarily uniquely) through k.
    fn weak_kernel(&self, _f: &Mor<Self::Obj>) -> Option<(Self::Obj, Mor<Self::Obj>)> {
        None
    }

    /// Weak cokernel, dual to `weak_kernel`.
    fn weak_cokernel(&self, _f: &Mor<Self::Obj>) -> Option<(Self::Obj, Mor<Self::Obj>)> {
        None
    }

    /// Bilinear extension of `compose_gens` to arbitrary coordinates.
    fn compose(
        &self,
        x: &Self::Obj,
        y: &Self::Obj,
        z: &Self::Obj,
        g: &Coords,
        f: &Coords,
    ) -> Coords {
        let out_len = self.hom(x, z).gen_count();
        let mut out = vec![BigInt::zero(); out_len];
        for (gi, gc) in g.iter().enumerate() {
            if gc.is_zero() {
                continue;
            }
            for (fj, fc) in f.iter().enumerate() {
                if fc.is_zero() {
                    continue;
                }
                let term = self.compose_gens(x, y, z, gi, fj);
                let scale = gc * fc;
                for (o, t) in out.iter_mut().zip(term.iter()) {
                    *o += &scale * t;
                }
            }
        }
        out
    }

    fn zero_coords(&self, x: &Self::Obj, y: &Self::Obj) -> Coords {
        vec![BigInt::zero(); self.hom(x, y).gen_count()]
    }

    fn zero_mor(&self, x: &Self::Obj, y: &Self::Obj) -> Mor<Self::Obj> {
        Mor {
            src: x.clone(),
            tgt: y.clone(),
            coords: self.zero_coords(x, y),
        }
    }

    fn identity_mor(&self, x: &Self::Obj) -> Mor<Self::Obj> {
        Mor {
            src: x.clone(),
            tgt: x.clone(),
            coords: self.identity(x),
        }
    }

    fn compose_mor(&self, g: &Mor<Self::Obj>, f: &Mor<Self::Obj>) -> Result<Mor<Self::Obj>, FreydError> {
        if f.tgt != g.src {
            return Err(FreydError::EndpointMismatch);
        }
        Ok(Mor {
            src: f.src.clone(),
            tgt: g.tgt.clone(),
            coords: self.compose(&f.src, &f.tgt, &g.tgt, &g.coords, &f.coords),
        })
    }

    fn is_zero_mor(&self, m: &Mor<Self::Obj>) -> bool {
        self.hom(&m.src, &m.tgt).is_zero(&m.coords)
    }

    fn eq_mor(&self, a: &Mor<Self::Obj>, b: &Mor<Self::Obj>) -> bool {
        a.src == b.src
            && a.tgt == b.tgt
            && self.hom(&a.src, &a.tgt).eq_elements(&a.coords, &b.coords)
    }

    /// An object is zero exactly when its identity is the zero element
    /// of its endomorphism group.
    fn is_zero_object(&self, x: &Self::Obj) -> bool {
        self.hom(x, x).is_zero(&self.identity(x))
    }
}

pub fn add_coords(a: &Coords, b: &Coords) -> Coords {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

pub fn sub_coords(a: &Coords, b: &Coords) -> Coords {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

pub fn scale_coords(c: &BigInt, a: &Coords) -> Coords {
    a.iter().map(|x| c * x).collect()
}

pub fn unit_coords(len: usize, i: usize) -> Coords {
    let mut v = vec![BigInt::zero(); len];
    v[i] = BigInt::from(1);
    v
}

/// Matrix of the linear map "postcompose with m": hom(t, m.src) ->
/// hom(t, m.tgt), rows indexed by the source generators.
pub fn postcompose_matrix<B: AdditiveBase>(base: &B, t: &B::Obj, m: &Mor<B::Obj>) -> MatrixZ {
    let src_group = base.hom(t, &m.src);
    let tgt_group = base.hom(t, &m.tgt);
    let rows: Vec<Coords> = (0..src_group.gen_count())
        .map(|i| {
            base.compose(
                t,
                &m.src,
                &m.tgt,
                &m.coords,
                &unit_coords(src_group.gen_count(), i),
            )
        })
        .collect();
    MatrixZ::from_rows(tgt_group.gen_count(), &rows)
}

/// Matrix of the linear map "precompose with m": hom(m.tgt, t) ->
/// hom(m.src, t).
pub fn precompose_matrix<B: AdditiveBase>(base: &B, m: &Mor<B::Obj>, t: &B::Obj) -> MatrixZ {
    let src_group = base.hom(&m.tgt, t);
    let tgt_group = base.hom(&m.src, t);
    let rows: Vec<Coords> = (0..src_group.gen_count())
        .map(|i| {
            base.compose(
                &m.src,
                &m.tgt,
                t,
                &unit_coords(src_group.gen_count(), i),
                &m.coords,
            )
        })
        .collect();
    MatrixZ::from_rows(tgt_group.gen_count(), &rows)
}

/// Solves a linear equation over hom-groups: finds coordinates u with
/// u * map_matrix congruent to `target` modulo the relations of the
/// target hom-group.
fn solve_modulo(
    map_matrix: &MatrixZ,
    target_relations: &MatrixZ,
    target: &Coords,
) -> Option<Coords> {
    let stacked = map_matrix.vstack(target_relations);
    solve_left(&stacked, target)
        .expect("dimensions agree by construction")
        .map(|sol| sol[..map_matrix.rows()].to_vec())
}

/// Finds u with m o u = g (factors g through m on the left), if one
/// exists. The solution is deterministic but not necessarily unique;
/// see `factor_unique_through`.
pub fn factor_through<B: AdditiveBase>(
    base: &B,
    m: &Mor<B::Obj>,
    g: &Mor<B::Obj>,
) -> Option<Mor<B::Obj>> {
    assert_eq!(m.tgt, g.tgt, "factor_through: targets must agree");
    let mat = postcompose_matrix(base, &g.src, m);
    let relations = base.hom(&g.src, &g.tgt).relations().clone();
    solve_modulo(&mat, &relations, &g.coords).map(|coords| Mor {
        src: g.src.clone(),
        tgt: m.src.clone(),
        coords,
    })
}

/// Finds u with u o p = g (factors g through p on the right).
pub fn cofactor_through<B: AdditiveBase>(
    base: &B,
    p: &Mor<B::Obj>,
    g: &Mor<B::Obj>,
) -> Option<Mor<B::Obj>> {
    assert_eq!(p.src, g.src, "cofactor_through: sources must agree");
    let mat = precompose_matrix(base, p, &g.tgt);
    let relations = base.hom(&g.src, &g.tgt).relations().clone();
    solve_modulo(&mat, &relations, &g.coords).map(|coords| Mor {
        src: p.tgt.clone(),
        tgt: g.tgt.clone(),
        coords,
    })
}

/// Whether the map "postcompose with m" is injective out of hom(t,
/// m.src): every kernel vector of the linearized map must already be a
/// relation. This is the uniqueness half of universal-property checks.
pub fn postcompose_injective<B: AdditiveBase>(base: &B, t: &B::Obj, m: &Mor<B::Obj>) -> bool {
    let mat = postcompose_matrix(base, t, m);
    let tgt_rel = base.hom(t, &m.tgt).relations().clone();
    let src_group = base.hom(t, &m.src);
    let stacked = mat.vstack(&tgt_rel);
    let kernel = crate::zlin::kernel_lattice(&stacked);
    (0..kernel.rows()).all(|i| src_group.is_zero(&kernel.row(i)[..src_group.gen_count()]))
}

/// Dual of `postcompose_injective` for precomposition.
pub fn precompose_injective<B: AdditiveBase>(base: &B, m: &Mor<B::Obj>, t: &B::Obj) -> bool {
    let mat = precompose_matrix(base, m, t);
    let tgt_rel = base.hom(&m.src, t).relations().clone();
    let src_group = base.hom(&m.tgt, t);
    let stacked = mat.vstack(&tgt_rel);
    let kernel = crate::zlin::kernel_lattice(&stacked);
    (0..kernel.rows()).all(|i| src_group.is_zero(&kernel.row(i)[..src_group.gen_count()]))
}

/// Searches for a two-sided inverse of f by solving both composition
/// equations.
pub fn two_sided_inverse<B: AdditiveBase>(base: &B, f: &Mor<B::Obj>) -> Option<Mor<B::Obj>> {
    let id_src = base.identity_mor(&f.src);
    // u with f o u = id_tgt ... first find u with u o f = id_src.
    let u = cofactor_through(base, f, &id_src)?;
    let fu = base.compose_mor(f, &u).ok()?;
    let id_tgt = base.identity_mor(&f.tgt);
    if base.eq_mor(&fu, &id_tgt) {
        Some(u)
    } else {
        None
    }
}
