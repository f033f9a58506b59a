//! Quotient-category hom-sets via roofs: spans X <- W -> Y whose
//! backward leg lies in the multiplicative system, identified when a
//! bounded search finds a common refinement, and evaluated under the
//! induced functor where the backward leg becomes invertible.

use num_bigint::BigInt;

use crate::freyd::{two_sided_inverse, AdditiveBase, HMor, HObj, Mor};
use crate::zlin::{solve_left, subquotient, FpAbGroup, MatrixZ};

use super::membership::{sigma_contains, small_elements, SerreContext, Verdict};
use super::SerreError;

/// A fraction f o s^-1 : X -> Y with apex W: s: W -> X in the
/// multiplicative system, f: W -> Y arbitrary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roof {
    pub apex: HObj,
    pub s: HMor,
    pub f: HMor,
}

/// An equivalence class of found roofs together with the canonical
/// coordinates of its image in the localised hull's hom-group.
#[derive(Clone, Debug)]
pub struct RoofClass {
    pub members: Vec<Roof>,
    pub image: Vec<BigInt>,
}

#[derive(Debug)]
pub struct QuotientHom {
    pub classes: Vec<RoofClass>,
    /// hom-group between the localised images of the endpoints.
    pub target: std::sync::Arc<FpAbGroup>,
    pub images_independent: bool,
    pub images_generate: bool,
    /// Candidate backward legs whose membership stayed inconclusive.
    pub inconclusive_candidates: usize,
    /// Pairs with equal images that the bounded refinement search
    /// could not merge (distinct classes at this depth, not proven
    /// distinct).
    pub unmerged_equal_images: usize,
}

const ENUM_CAP: usize = 2000;

/// Enumerates roof classes from X to Y: apexes range over the embedded
/// vertices plus the endpoints, backward legs over hom-group
/// generators (plus identities) filtered by the multiplicative-system
/// test, forward legs over hom-group generators. Classes are merged by
/// bounded common-refinement search; distinctness is certified only by
/// distinct induced-functor images.
pub fn quotient_hom(
    ctx: &SerreContext,
    x: &HObj,
    y: &HObj,
) -> Result<QuotientHom, SerreError> {
    let tower = ctx.tower.clone();
    let functor = ctx.functor.clone();
    let lx = functor.apply_obj(x)?;
    let ly = functor.apply_obj(y)?;
    let target = functor.tgt.hom(&lx, &ly);

    // Deterministic apex pool.
    let mut pool: Vec<HObj> = tower
        .finite
        .quiver()
        .vertices()
        .map(|v| tower.embed(v))
        .collect();
    for extra in [x, y] {
        if !pool.contains(extra) {
            pool.push(extra.clone());
        }
    }

    let mut inconclusive = 0usize;
    let mut roofs: Vec<(Roof, Vec<BigInt>)> = Vec::new();
    for apex in &pool {
        // Backward-leg candidates: generators of hom(apex, x), plus
        // the identity when the apex is X itself.
        let mut s_cands: Vec<HMor> = tower.hom_gens(apex, x);
        if apex == x {
            s_cands.insert(0, tower.identity(x));
        }
        for s in s_cands {
            if tower.hull.is_zero_mor(&s) {
                continue;
            }
            match sigma_contains(ctx, &s)? {
                Verdict::InS(_) => {}
                Verdict::NotInS(_) => continue,
                Verdict::Inconclusive(_) => {
                    inconclusive += 1;
                    continue;
                }
            }
            let ls = functor.apply_mor(&s)?;
            let inv = two_sided_inverse(functor.tgt.hull.as_ref(), &ls).ok_or_else(|| {
                SerreError::Internal(
                    "backward leg accepted into the system but not invertible after localisation"
                        .into(),
                )
            })?;
            let mut f_cands: Vec<HMor> = tower.hom_gens(apex, y);
            if apex == y && x == y {
                f_cands.insert(0, tower.identity(y));
            }
            for f in f_cands {
                let lf = functor.apply_mor(&f)?;
                let image_mor = functor
                    .tgt
                    .compose(&lf, &inv)
                    .map_err(SerreError::Freyd)?;
                let image = target.reduce(&image_mor.coords);
                let roof = Roof {
                    apex: apex.clone(),
                    s: s.clone(),
                    f,
                };
                if !roofs.iter().any(|(r, _)| r == &roof) {
                    roofs.push((roof, image));
                }
            }
        }
    }

    // Merge by common refinement; only pairs with equal images can be
    // equivalent (the functor is constant on classes).
    let mut class_of: Vec<usize> = (0..roofs.len()).collect();
    let mut unmerged = 0usize;
    for i in 0..roofs.len() {
        for j in i + 1..roofs.len() {
            if roofs[i].1 != roofs[j].1 {
                continue;
            }
            if find_class(&class_of, i) == find_class(&class_of, j) {
                continue;
            }
            if has_common_refinement(ctx, &pool, &roofs[i].0, &roofs[j].0)? {
                let (ri, rj) = (find_class(&class_of, i), find_class(&class_of, j));
                class_of[rj.max(ri)] = rj.min(ri);
            } else {
                unmerged += 1;
            }
        }
    }

    let mut classes: Vec<RoofClass> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..roofs.len() {
        let root = find_class(&class_of, i);
        match reps.iter().position(|&r| r == root) {
            Some(k) => classes[k].members.push(roofs[i].0.clone()),
            None => {
                reps.push(root);
                classes.push(RoofClass {
                    members: vec![roofs[i].0.clone()],
                    image: roofs[i].1.clone(),
                });
            }
        }
    }
    classes.sort_by(|a, b| a.image.cmp(&b.image));

    let live = target.live_count();
    let image_rows: Vec<Vec<BigInt>> = classes.iter().map(|c| c.image.clone()).collect();
    let images_independent = {
        let sub = subquotient(&image_rows, &[], live).map_err(SerreError::Zlin)?;
        sub.canonical.rank() == classes.len() && sub.canonical.invariant_factors().is_empty()
    };
    let images_generate = {
        let mut rows = image_rows.clone();
        let rel = target.canonical_group();
        for r in 0..rel.relations().rows() {
            rows.push(rel.relations().row_vec(r));
        }
        let m = MatrixZ::from_rows(live, &rows);
        (0..live).all(|i| {
            let mut e = vec![BigInt::from(0); live];
            e[i] = BigInt::from(1);
            matches!(solve_left(&m, &e), Ok(Some(_)))
        })
    };

    Ok(QuotientHom {
        classes,
        target,
        images_independent,
        images_generate,
        inconclusive_candidates: inconclusive,
        unmerged_equal_images: unmerged,
    })
}

fn find_class(class_of: &[usize], mut i: usize) -> usize {
    while class_of[i] != i {
        i = class_of[i];
    }
    i
}

/// Searches for a common refinement of two roofs: an apex W'' with
/// legs u, u' such that s1 o u = s2 o u' lies in the multiplicative
/// system and f1 o u = f2 o u'. Failure means "distinct at this
/// depth", never a proof of distinctness.
fn has_common_refinement(
    ctx: &SerreContext,
    pool: &[HObj],
    r1: &Roof,
    r2: &Roof,
) -> Result<bool, SerreError> {
    if r1 == r2 {
        return Ok(true);
    }
    let tower = ctx.tower.as_ref();
    let bound = ctx.depth.max(1) as i64;
    for w in pool {
        let h1 = tower.hull.hom(w, &r1.apex);
        let h2 = tower.hull.hom(w, &r2.apex);
        let (c1, _) = small_elements(&h1, bound, ENUM_CAP);
        let (c2, _) = small_elements(&h2, bound, ENUM_CAP);
        for u in &c1 {
            let u = Mor {
                src: w.clone(),
                tgt: r1.apex.clone(),
                coords: u.clone(),
            };
            let s1u = tower.compose(&r1.s, &u).map_err(SerreError::Freyd)?;
            if tower.hull.is_zero_mor(&s1u) {
                continue;
            }
            let f1u = tower.compose(&r1.f, &u).map_err(SerreError::Freyd)?;
            for v in &c2 {
                let v = Mor {
                    src: w.clone(),
                    tgt: r2.apex.clone(),
                    coords: v.clone(),
                };
                let s2v = tower.compose(&r2.s, &v).map_err(SerreError::Freyd)?;
                if !tower.hull.eq_mor(&s1u, &s2v) {
                    continue;
                }
                let f2v = tower.compose(&r2.f, &v).map_err(SerreError::Freyd)?;
                if !tower.hull.eq_mor(&f1u, &f2v) {
                    continue;
                }
                if matches!(sigma_contains(ctx, &s1u)?, Verdict::InS(_)) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Convenience: image coordinates of a single roof under the induced
/// functor, for soundness tests.
pub fn roof_image(ctx: &SerreContext, roof: &Roof) -> Result<Vec<BigInt>, SerreError> {
    let functor = ctx.functor.as_ref();
    let ls = functor.apply_mor(&roof.s)?;
    let inv = two_sided_inverse(functor.tgt.hull.as_ref(), &ls)
        .ok_or_else(|| SerreError::Internal("backward leg not invertible".into()))?;
    let lf = functor.apply_mor(&roof.f)?;
    let image = functor.tgt.compose(&lf, &inv).map_err(SerreError::Freyd)?;
    let lx = functor.apply_obj(&roof.s.tgt)?;
    let ly = functor.apply_obj(&roof.f.tgt)?;
    Ok(functor.tgt.hom(&lx, &ly).reduce(&image.coords))
}

/// Decides roof equivalence by bounded common-refinement search over
/// the standard apex pool (embedded vertices plus the roofs' own
/// endpoints). A positive answer is sound; a negative answer only
/// means "distinct at this depth".
pub fn roofs_equivalent(ctx: &SerreContext, r1: &Roof, r2: &Roof) -> Result<bool, SerreError> {
    let tower = ctx.tower.as_ref();
    let mut pool: Vec<HObj> = tower
        .finite
        .quiver()
        .vertices()
        .map(|v| tower.embed(v))
        .collect();
    for extra in [&r1.s.tgt, &r1.f.tgt, &r2.s.tgt, &r2.f.tgt] {
        if !pool.contains(extra) {
            pool.push(extra.clone());
        }
    }
    has_common_refinement(ctx, &pool, r1, r2)
}

/// Checks that every generator is annihilated by the induced functor.
pub fn generators_annihilated(ctx: &SerreContext) -> Result<bool, SerreError> {
    for g in &ctx.gens.gens {
        if !ctx.functor.annihilates(&g.obj)? {
            return Ok(false);
        }
    }
    Ok(true)
}
