//! The Serre subcategory generated by the kernels and cokernels of the
//! marked arrows, with semidecidable membership: positive verdicts
//! carry a closure certificate, negative verdicts a nonvanishing image
//! under the induced functor, and anything else stays honestly
//! inconclusive.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::fincat::{ArrowId, Path, PathCategory};
use crate::freyd::{AdditiveBase, HMor, HObj, Tower};
use crate::zlin::FpAbGroup;

use super::functor::InducedFunctor;
use super::SerreError;

/// One generator of the Serre subcategory: the kernel or cokernel of a
/// marked arrow viewed in the abelian hull.
#[derive(Clone, Debug)]
pub struct SerreGenerator {
    pub label: String,
    pub obj: HObj,
}

#[derive(Clone, Debug, Default)]
pub struct SerreGenerators {
    pub gens: Vec<SerreGenerator>,
}

/// Kernel and cokernel objects of every marked arrow's representable
/// morphism, in arrow order.
pub fn serre_generators(
    tower: &Tower<PathCategory>,
    sigma: &[ArrowId],
) -> Result<SerreGenerators, SerreError> {
    let mut gens = Vec::new();
    for &a in sigma {
        let arrow = tower.finite.quiver().arrow(a).clone();
        let single = Path {
            src: arrow.src,
            tgt: arrow.tgt,
            arrows: vec![a],
        };
        let idx = tower
            .finite
            .path_index(&single)
            .ok_or_else(|| SerreError::Internal("marked arrow has no path index".into()))?;
        let rep = tower
            .embed_base_mor(arrow.src, arrow.tgt, idx)
            .map_err(SerreError::Freyd)?;
        let (ker, _) = tower.kernel(&rep);
        gens.push(SerreGenerator {
            label: format!("ker({})", arrow.name),
            obj: ker,
        });
        let (coker, _) = tower.cokernel(&rep).map_err(SerreError::Freyd)?;
        gens.push(SerreGenerator {
            label: format!("coker({})", arrow.name),
            obj: coker,
        });
    }
    Ok(SerreGenerators { gens })
}

/// Outcome of a membership query. A positive verdict names the closure
/// steps that produced the object; a negative one names the
/// nonvanishing invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    InS(String),
    NotInS(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn is_in(&self) -> bool {
        matches!(self, Verdict::InS(_))
    }

    pub fn is_not_in(&self) -> bool {
        matches!(self, Verdict::NotInS(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive(_))
    }
}

/// Shared state for membership and roof searches over one localisation
/// setup.
pub struct SerreContext {
    pub tower: Arc<Tower<PathCategory>>,
    pub functor: Arc<InducedFunctor>,
    pub gens: SerreGenerators,
    /// Coefficient/size bound for all bounded searches.
    pub depth: usize,
    cache: Mutex<BTreeMap<HObj, Verdict>>,
}

impl SerreContext {
    pub fn new(
        tower: Arc<Tower<PathCategory>>,
        functor: Arc<InducedFunctor>,
        gens: SerreGenerators,
        depth: usize,
    ) -> Self {
        SerreContext {
            tower,
            functor,
            gens,
            depth,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn target(&self) -> &Arc<Tower<crate::fincat::LocalisedCategory>> {
        &self.functor.tgt
    }
}

/// All elements of a hom-group with free coordinates bounded by
/// `bound` and torsion coordinates ranging over their residues, sorted
/// so that small combinations come first. Falls back to unit vectors
/// (with a truncation flag) when the full box exceeds `cap`.
pub fn small_elements(
    group: &FpAbGroup,
    bound: i64,
    cap: usize,
) -> (Vec<Vec<BigInt>>, bool) {
    let n = group.gen_count();
    let (_, factors) = group.canonical_form();
    let mut ranges: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let torsion_count = factors.len();
    let mut total: usize = 1;
    for i in 0..n {
        let r: Vec<BigInt> = if i < torsion_count {
            let d = &factors[i];
            let lim = BigInt::from(2 * bound + 1);
            let d_small = d <= &lim;
            let top = if d_small { d.clone() } else { lim };
            let mut v = Vec::new();
            let mut c = BigInt::zero();
            while c < top {
                v.push(c.clone());
                c += 1;
            }
            v
        } else {
            (-bound..=bound).map(BigInt::from).collect()
        };
        total = total.saturating_mul(r.len());
        ranges.push(r);
    }
    if total > cap {
        // Unit fallback.
        let mut out = Vec::new();
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            out.push(e.clone());
            e[i] = BigInt::from(-1);
            out.push(e);
        }
        return (out, true);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let v: Vec<BigInt> = (0..n).map(|i| ranges[i][idx[i]].clone()).collect();
        if !v.iter().all(|c| c.is_zero()) {
            out.push(v);
        }
        let mut i = 0;
        loop {
            if i == n {
                let key = |v: &Vec<BigInt>| {
                    (
                        v.iter().map(|c| c.abs()).sum::<BigInt>(),
                        v.clone(),
                    )
                };
                out.sort_by(|a, b| key(a).cmp(&key(b)));
                return (out, false);
            }
            idx[i] += 1;
            if idx[i] < ranges[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if n == 0 {
            return (out, false);
        }
    }
}

const ENUM_CAP: usize = 4000;

fn is_epi(tower: &Tower<PathCategory>, f: &HMor) -> Result<bool, SerreError> {
    let (c, _) = tower.cokernel(f).map_err(SerreError::Freyd)?;
    Ok(tower.is_zero_object(&c))
}

fn is_mono(tower: &Tower<PathCategory>, f: &HMor) -> bool {
    let (k, _) = tower.kernel(f);
    tower.is_zero_object(&k)
}

/// Bounded saturation: zero object, the generators themselves,
/// quotients and subobjects of known members, and extensions
/// discoverable at the coefficient bound. Soundness: every positive
/// answer is witnessed by a closure certificate, every negative answer
/// by a nonvanishing induced image (the functor annihilates the
/// generators, which is itself under test elsewhere).
pub fn membership(ctx: &SerreContext, x: &HObj) -> Result<Verdict, SerreError> {
    if let Some(v) = ctx.cache.lock().unwrap().get(x) {
        return Ok(v.clone());
    }
    let verdict = membership_uncached(ctx, x, ctx.depth)?;
    ctx.cache.lock().unwrap().insert(x.clone(), verdict.clone());
    Ok(verdict)
}

fn membership_uncached(ctx: &SerreContext, x: &HObj, depth: usize) -> Result<Verdict, SerreError> {
    let tower = ctx.tower.as_ref();
    if tower.is_zero_object(x) {
        return Ok(Verdict::InS("zero object".to_string()));
    }
    for g in &ctx.gens.gens {
        if &g.obj == x {
            return Ok(Verdict::InS(format!("generator {}", g.label)));
        }
    }
    // Sound negative test first: a nonvanishing image cannot be in S.
    if !ctx.functor.annihilates(x)? {
        return Ok(Verdict::NotInS(
            "induced functor image has nonzero identity".to_string(),
        ));
    }
    if let Some(v) = positive_search(ctx, x, depth)? {
        return Ok(Verdict::InS(v));
    }
    Ok(Verdict::Inconclusive(format!(
        "no closure certificate found at depth {depth}"
    )))
}

fn positive_search(
    ctx: &SerreContext,
    x: &HObj,
    depth: usize,
) -> Result<Option<String>, SerreError> {
    let tower = ctx.tower.as_ref();
    let bound = ctx.depth.max(1) as i64;
    // Quotients and subobjects of generators.
    for g in &ctx.gens.gens {
        let onto = tower.hull.hom(&g.obj, x);
        let (cands, _) = small_elements(&onto, bound, ENUM_CAP);
        for c in cands {
            let m = crate::freyd::Mor {
                src: g.obj.clone(),
                tgt: x.clone(),
                coords: c,
            };
            if is_epi(tower, &m)? {
                return Ok(Some(format!("quotient of {}", g.label)));
            }
        }
        let into = tower.hull.hom(x, &g.obj);
        let (cands, _) = small_elements(&into, bound, ENUM_CAP);
        for c in cands {
            let m = crate::freyd::Mor {
                src: x.clone(),
                tgt: g.obj.clone(),
                coords: c,
            };
            if is_mono(tower, &m) {
                return Ok(Some(format!("subobject of {}", g.label)));
            }
        }
    }
    // Extensions: a monomorphism from a generator whose cokernel is
    // itself certified lands x in S.
    if depth > 0 {
        for g in &ctx.gens.gens {
            let from = tower.hull.hom(&g.obj, x);
            let (cands, _) = small_elements(&from, bound, ENUM_CAP);
            for c in cands {
                let m = crate::freyd::Mor {
                    src: g.obj.clone(),
                    tgt: x.clone(),
                    coords: c,
                };
                if !is_mono(tower, &m) {
                    continue;
                }
                let (q, _) = tower.cokernel(&m).map_err(SerreError::Freyd)?;
                if tower.is_zero_object(&q) {
                    return Ok(Some(format!("isomorphic to {}", g.label)));
                }
                if let Verdict::InS(cert) = membership_uncached(ctx, &q, depth - 1)? {
                    return Ok(Some(format!("extension of [{cert}] by {}", g.label)));
                }
            }
        }
    }
    Ok(None)
}

/// Whether a morphism belongs to the multiplicative system of the
/// quotient: both its kernel and its cokernel must lie in S.
/// Inconclusive constituent verdicts propagate.
pub fn sigma_contains(ctx: &SerreContext, f: &HMor) -> Result<Verdict, SerreError> {
    let tower = ctx.tower.as_ref();
    let (ker, _) = tower.kernel(f);
    let (coker, _) = tower.cokernel(f).map_err(SerreError::Freyd)?;
    let vk = membership(ctx, &ker)?;
    let vc = membership(ctx, &coker)?;
    Ok(match (vk, vc) {
        (Verdict::InS(a), Verdict::InS(b)) => {
            Verdict::InS(format!("kernel: {a}; cokernel: {b}"))
        }
        (Verdict::NotInS(a), _) => Verdict::NotInS(format!("kernel outside S: {a}")),
        (_, Verdict::NotInS(b)) => Verdict::NotInS(format!("cokernel outside S: {b}")),
        (a, b) => Verdict::Inconclusive(format!("kernel: {a:?}; cokernel: {b:?}")),
    })
}
