//! The cokernel completion of a computable additive base: objects are
//! presentations (morphisms of the base), morphisms are maps of
//! presentations modulo homotopy, and every hom-group is computed as a
//! subquotient of an integer lattice.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::zlin::{kernel_lattice, subquotient, FpAbGroup, MatrixZ, Subquotient};

use super::base::{
    add_coords, scale_coords, sub_coords, unit_coords, AdditiveBase, Biproduct, Coords, Mor,
};
use super::FreydError;

/// An object of the completion: the presentation `map: dom -> cod`,
/// standing for the cokernel of `map`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FreydObj<O> {
    pub dom: O,
    pub cod: O,
    pub map: Coords,
}

/// Representative data of a morphism of presentations: the component
/// `f0` between cokernel targets and a witness `f1` making the square
/// commute: f0 o a = b o f1.
#[derive(Clone, Debug)]
pub struct FreydParts {
    pub f0: Coords,
    pub f1: Coords,
}

/// Hom-group of a presentation pair: canonical diagonal group, one
/// representative per canonical generator, and the subquotient data
/// needed to classify arbitrary valid components.
#[derive(Debug)]
pub struct FreydHomData {
    pub group: Arc<FpAbGroup>,
    pub gens: Vec<FreydParts>,
    sub: Subquotient,
    /// Witness components aligned with the input generators of `sub`:
    /// row t is the f1 achieving compatibility for generator row t.
    witness_rows: MatrixZ,
}

impl FreydHomData {
    /// Canonical coordinates of the class of a component `f0`, if it
    /// admits a witness (i.e. genuinely defines a morphism).
    pub fn classify(&self, f0: &Coords) -> Option<Coords> {
        self.sub.coords(f0).expect("ambient dimensions agree")
    }

    /// Some witness for a valid component, chosen deterministically.
    pub fn witness(&self, f0: &Coords) -> Option<Coords> {
        self.sub
            .express(f0)
            .expect("ambient dimensions agree")
            .map(|c| MatrixZ::vec_mul(&c, &self.witness_rows))
    }

    /// Representative (f0, f1) of an element given in canonical
    /// coordinates.
    pub fn rep(&self, coords: &Coords) -> FreydParts {
        let ambient = self.sub.ambient_rank();
        let q = self.witness_rows.cols();
        let mut f0 = vec![BigInt::zero(); ambient];
        let mut f1 = vec![BigInt::zero(); q];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            f0 = add_coords(&f0, &scale_coords(c, &self.sub.gen_lifts[i]));
            let w = MatrixZ::vec_mul(&self.sub.gen_coeffs[i], &self.witness_rows);
            f1 = add_coords(&f1, &scale_coords(c, &w));
        }
        FreydParts { f0, f1 }
    }
}

/// The completion itself. Hom-data is computed once per object pair
/// and cached; the cache is the only interior state and is build-once.
#[derive(Debug)]
pub struct Freyd<B: AdditiveBase> {
    base: Arc<B>,
    cache: Mutex<BTreeMap<(FreydObj<B::Obj>, FreydObj<B::Obj>), Arc<FreydHomData>>>,
}

impl<B: AdditiveBase> Freyd<B> {
    pub fn new(base: Arc<B>) -> Self {
        Freyd {
            base,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn base(&self) -> &Arc<B> {
        &self.base
    }

    /// The presentation of a base object as a representable: the
    /// cokernel of the zero map out of the zero object.
    pub fn representable(&self, x: &B::Obj) -> FreydObj<B::Obj> {
        let zero = self.base.zero_object();
        FreydObj {
            map: self.base.zero_coords(&zero, x),
            dom: zero,
            cod: x.clone(),
        }
    }

    /// Hom-group with generator representatives.
    ///
    /// For X = (a: A1 -> A0), Y = (b: B1 -> B0) the group is
    /// { f0 : exists f1, f0 o a = b o f1 } / { b o h },
    /// computed by a kernel lattice for the compatibility condition and
    /// a subquotient for the homotopy congruence.
    pub fn hom_data(&self, x: &FreydObj<B::Obj>, y: &FreydObj<B::Obj>) -> Arc<FreydHomData> {
        let key = (x.clone(), y.clone());
        if let Some(d) = self.cache.lock().unwrap().get(&key) {
            return d.clone();
        }
        let h00 = self.base.hom(&x.cod, &y.cod);
        let h11 = self.base.hom(&x.dom, &y.dom);
        let h10 = self.base.hom(&x.dom, &y.cod);
        let h01 = self.base.hom(&x.cod, &y.dom);
        let p = h00.gen_count();
        let q = h11.gen_count();
        let m = h10.gen_count();

        // Compatibility: f0 o a = b o f1 modulo the relations of
        // hom(A1, B0), linearized over (f0, f1, relation coefficients).
        let mut rows: Vec<Coords> = Vec::with_capacity(p + q + h10.relations().rows());
        for i in 0..p {
            rows.push(
                self.base
                    .compose(&x.dom, &x.cod, &y.cod, &unit_coords(p, i), &x.map),
            );
        }
        for j in 0..q {
            rows.push(
                self.base
                    .compose(&x.dom, &y.dom, &y.cod, &y.map, &unit_coords(q, j)),
            );
        }
        for r in 0..h10.relations().rows() {
            rows.push(h10.relations().row_vec(r));
        }
        let stacked = MatrixZ::from_rows(m, &rows);
        let kernel = kernel_lattice(&stacked);

        let k = kernel.rows();
        let mut valid_rows: Vec<Coords> = Vec::with_capacity(k);
        let mut witness_rows: Vec<Coords> = Vec::with_capacity(k);
        for t in 0..k {
            let row = kernel.row(t);
            valid_rows.push(row[..p].to_vec());
            // x*P + y*Q + z*R = 0 means f0 = x has witness f1 = -y.
            witness_rows.push(row[p..p + q].iter().map(|v| -v.clone()).collect());
        }

        // Homotopy congruence: images b o h plus the relations of
        // hom(A0, B0).
        let mut rels: Vec<Coords> = Vec::new();
        for l in 0..h01.gen_count() {
            rels.push(self.base.compose(
                &x.cod,
                &y.dom,
                &y.cod,
                &y.map,
                &unit_coords(h01.gen_count(), l),
            ));
        }
        for r in 0..h00.relations().rows() {
            rels.push(h00.relations().row_vec(r));
        }

        let sub = subquotient(&valid_rows, &rels, p)
            .expect("homotopy congruence lies inside the valid lattice");
        let witness_matrix = MatrixZ::from_rows(q, &witness_rows);
        let gens: Vec<FreydParts> = (0..sub.gen_coeffs.len())
            .map(|i| FreydParts {
                f0: sub.gen_lifts[i].clone(),
                f1: MatrixZ::vec_mul(&sub.gen_coeffs[i], &witness_matrix),
            })
            .collect();
        let data = Arc::new(FreydHomData {
            group: Arc::new(sub.canonical.clone()),
            gens,
            sub,
            witness_rows: witness_matrix,
        });
        self.cache.lock().unwrap().insert(key, data.clone());
        data
    }

    /// Representative (f0, f1) of a morphism.
    pub fn parts(&self, f: &Mor<FreydObj<B::Obj>>) -> FreydParts {
        self.hom_data(&f.src, &f.tgt).rep(&f.coords)
    }

    /// Builds a morphism from a component f0, solving for a witness.
    /// Errors when f0 does not satisfy the compatibility condition.
    pub fn mor_from_component(
        &self,
        x: &FreydObj<B::Obj>,
        y: &FreydObj<B::Obj>,
        f0: &Coords,
    ) -> Result<Mor<FreydObj<B::Obj>>, FreydError> {
        let data = self.hom_data(x, y);
        let coords = data
            .classify(f0)
            .ok_or(FreydError::InvalidComponent)?;
        Ok(Mor {
            src: x.clone(),
            tgt: y.clone(),
            coords,
        })
    }

    /// The representable morphism between representables induced by a
    /// base morphism.
    pub fn representable_mor(
        &self,
        f: &Mor<B::Obj>,
    ) -> Result<Mor<FreydObj<B::Obj>>, FreydError> {
        let x = self.representable(&f.src);
        let y = self.representable(&f.tgt);
        self.mor_from_component(&x, &y, &f.coords)
    }

    /// Cokernel: the presentation (A0 (+) B1 -> B0) via [f0, b], with
    /// its projection. The projection p satisfies p o f = 0 exactly.
    pub fn cokernel(
        &self,
        f: &Mor<FreydObj<B::Obj>>,
    ) -> (FreydObj<B::Obj>, Mor<FreydObj<B::Obj>>) {
        let x = &f.src;
        let y = &f.tgt;
        let parts = self.parts(f);
        let bp = self.base.biproduct(&x.cod, &y.dom);
        let via_f0 = self.base.compose(
            &bp.obj,
            &x.cod,
            &y.cod,
            &parts.f0,
            &bp.proj_left.coords,
        );
        let via_b = self
            .base
            .compose(&bp.obj, &y.dom, &y.cod, &y.map, &bp.proj_right.coords);
        let cobj = FreydObj {
            dom: bp.obj,
            cod: y.cod.clone(),
            map: add_coords(&via_f0, &via_b),
        };
        let proj = self
            .mor_from_component(y, &cobj, &self.base.identity(&y.cod))
            .expect("cokernel projection is always valid");
        (cobj, proj)
    }

    /// Kernel via two weak kernels of the base; available exactly when
    /// the base supports weak kernels (i.e. one completion level up
    /// from an opposite completion). On a completion of a plain
    /// additive hull this reports that kernels are not available.
    pub fn kernel(
        &self,
        f: &Mor<FreydObj<B::Obj>>,
    ) -> Result<(FreydObj<B::Obj>, Mor<FreydObj<B::Obj>>), FreydError> {
        let x = &f.src;
        let y = &f.tgt;
        let parts = self.parts(f);
        // c = f0 o proj_A0 - b o proj_B1 : A0 (+) B1 -> B0.
        let bp = self.base.biproduct(&x.cod, &y.dom);
        let c_f0 = self.base.compose(
            &bp.obj,
            &x.cod,
            &y.cod,
            &parts.f0,
            &bp.proj_left.coords,
        );
        let c_b = self
            .base
            .compose(&bp.obj, &y.dom, &y.cod, &y.map, &bp.proj_right.coords);
        let c = Mor {
            src: bp.obj.clone(),
            tgt: y.cod.clone(),
            coords: sub_coords(&c_f0, &c_b),
        };
        let (w_obj, w_mor) = self
            .base
            .weak_kernel(&c)
            .ok_or(FreydError::NotAbelianAtThisLevel)?;
        let k0 = self
            .base
            .compose_mor(&bp.proj_left, &w_mor)
            .expect("weak kernel endpoints match");
        // d = k0 o proj_W - a o proj_A1 : W (+) A1 -> A0.
        let bp2 = self.base.biproduct(&w_obj, &x.dom);
        let d_k0 = self.base.compose(
            &bp2.obj,
            &w_obj,
            &x.cod,
            &k0.coords,
            &bp2.proj_left.coords,
        );
        let d_a = self
            .base
            .compose(&bp2.obj, &x.dom, &x.cod, &x.map, &bp2.proj_right.coords);
        let d = Mor {
            src: bp2.obj.clone(),
            tgt: x.cod.clone(),
            coords: sub_coords(&d_k0, &d_a),
        };
        let (v_obj, w2_mor) = self
            .base
            .weak_kernel(&d)
            .ok_or(FreydError::NotAbelianAtThisLevel)?;
        let k1 = self
            .base
            .compose_mor(&bp2.proj_left, &w2_mor)
            .expect("weak kernel endpoints match");
        let kobj = FreydObj {
            dom: v_obj,
            cod: w_obj,
            map: k1.coords,
        };
        let incl = self
            .mor_from_component(&kobj, x, &k0.coords)
            .expect("kernel inclusion is always valid");
        Ok((kobj, incl))
    }
}

impl<B: AdditiveBase> AdditiveBase for Freyd<B> {
    type Obj = FreydObj<B::Obj>;

    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Arc<FpAbGroup> {
        self.hom_data(x, y).group.clone()
    }

    fn compose_gens(&self, x: &Self::Obj, y: &Self::Obj, z: &Self::Obj, g: usize, f: usize) -> Coords {
        let dg = self.hom_data(y, z);
        let df = self.hom_data(x, y);
        let composed = self.base.compose(
            &x.cod,
            &y.cod,
            &z.cod,
            &dg.gens[g].f0,
            &df.gens[f].f0,
        );
        self.hom_data(x, z)
            .classify(&composed)
            .expect("composites of valid components are valid")
    }

    fn identity(&self, x: &Self::Obj) -> Coords {
        self.hom_data(x, x)
            .classify(&self.base.identity(&x.cod))
            .expect("identity component is valid")
    }

    fn zero_object(&self) -> Self::Obj {
        let zero = self.base.zero_object();
        FreydObj {
            map: self.base.zero_coords(&zero, &zero),
            dom: zero.clone(),
            cod: zero,
        }
    }

    fn biproduct(&self, x: &Self::Obj, y: &Self::Obj) -> Biproduct<Self::Obj> {
        let bp1 = self.base.biproduct(&x.dom, &y.dom);
        let bp0 = self.base.biproduct(&x.cod, &y.cod);
        // Diagonal presentation map: inj_A0 o a o proj_A1 + inj_B0 o b o proj_B1.
        let left = self.base.compose(
            &bp1.obj,
            &x.cod,
            &bp0.obj,
            &bp0.inj_left.coords,
            &self
                .base
                .compose(&bp1.obj, &x.dom, &x.cod, &x.map, &bp1.proj_left.coords),
        );
        let right = self.base.compose(
            &bp1.obj,
            &y.cod,
            &bp0.obj,
            &bp0.inj_right.coords,
            &self
                .base
                .compose(&bp1.obj, &y.dom, &y.cod, &y.map, &bp1.proj_right.coords),
        );
        let obj = FreydObj {
            dom: bp1.obj,
            cod: bp0.obj.clone(),
            map: add_coords(&left, &right),
        };
        let inj_left = self
            .mor_from_component(x, &obj, &bp0.inj_left.coords)
            .expect("biproduct injection is valid");
        let inj_right = self
            .mor_from_component(y, &obj, &bp0.inj_right.coords)
            .expect("biproduct injection is valid");
        let proj_left = self
            .mor_from_component(&obj, x, &bp0.proj_left.coords)
            .expect("biproduct projection is valid");
        let proj_right = self
            .mor_from_component(&obj, y, &bp0.proj_right.coords)
            .expect("biproduct projection is valid");
        Biproduct {
            obj,
            inj_left,
            inj_right,
            proj_left,
            proj_right,
        }
    }

    fn weak_kernel(&self, f: &Mor<Self::Obj>) -> Option<(Self::Obj, Mor<Self::Obj>)> {
        self.kernel(f).ok()
    }

    fn weak_cokernel(&self, f: &Mor<Self::Obj>) -> Option<(Self::Obj, Mor<Self::Obj>)> {
        Some(self.cokernel(f))
    }
}
