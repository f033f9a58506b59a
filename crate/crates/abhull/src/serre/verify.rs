//! End-to-end verification over the span family: before the quotient
//! the hom-group between the two sinks is zero, after it the rank
//! equals the number of spans, and the roof classes found realize the
//! full target group.

use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{span_quiver, ArrowId, LocalisedCategory, PathCategory, VertexId};
use crate::freyd::Tower;

use super::functor::InducedFunctor;
use super::membership::{serre_generators, SerreContext};
use super::roofs::{generators_annihilated, quotient_hom};
use super::SerreError;

/// Default word-length bound; the span family's reduced words stabilize
/// at length three, so any bound of four or more certifies completeness.
pub const DEFAULT_LENGTH_BOUND: usize = 8;

/// Everything needed to run quotient experiments over one span size.
pub struct SpanSetup {
    pub src: Arc<Tower<PathCategory>>,
    pub tgt: Arc<Tower<LocalisedCategory>>,
    pub functor: Arc<InducedFunctor>,
    pub sigma: Vec<ArrowId>,
    pub x: VertexId,
    pub z: VertexId,
}

pub fn span_setup(n: usize, length_bound: usize) -> Result<SpanSetup, SerreError> {
    let (quiver, sigma) = span_quiver(n);
    let path_cat = PathCategory::new(quiver.clone()).map_err(SerreError::Fincat)?;
    let src = Arc::new(Tower::new(Arc::new(path_cat)).map_err(SerreError::Freyd)?);
    let loc = LocalisedCategory::new(quiver, sigma.clone(), length_bound)
        .map_err(SerreError::Fincat)?;
    if !loc.is_complete() {
        return Err(SerreError::IncompleteLocalisation);
    }
    let tgt = Arc::new(Tower::new(Arc::new(loc)).map_err(SerreError::Freyd)?);
    let functor = Arc::new(InducedFunctor::new(src.clone(), tgt.clone())?);
    let x = src
        .finite
        .quiver()
        .vertex_by_name("x")
        .expect("span quiver has vertex x");
    let z = src
        .finite
        .quiver()
        .vertex_by_name("z")
        .expect("span quiver has vertex z");
    Ok(SpanSetup {
        src,
        tgt,
        functor,
        sigma,
        x,
        z,
    })
}

impl SpanSetup {
    pub fn context(&self, depth: usize) -> Result<SerreContext, SerreError> {
        let gens = serre_generators(&self.src, &self.sigma)?;
        Ok(SerreContext::new(
            self.src.clone(),
            self.functor.clone(),
            gens,
            depth,
        ))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub n: usize,
    pub depth: usize,
    /// Rank of hom(embed x, embed z) before the quotient; expected 0.
    pub pre_rank: usize,
    /// Rank of the same hom after localisation; expected n.
    pub post_rank: usize,
    /// Number of reduced words x -> z in the localised base.
    pub localised_count: usize,
    /// Roof classes found between the embedded sinks.
    pub roof_classes: usize,
    pub images_independent: bool,
    pub images_generate: bool,
    pub generator_count: usize,
    pub generators_annihilated: bool,
    pub inconclusive: usize,
    pub ok: bool,
}

/// Runs the full pipeline at one span size. `ok` requires: pre-rank 0,
/// post-rank n, exactly n roof classes with independent generating
/// images, all generators annihilated, and no inconclusive verdicts.
pub fn verify_equivalence(
    n: usize,
    depth: usize,
    length_bound: usize,
) -> Result<EquivalenceReport, SerreError> {
    let setup = span_setup(n, length_bound)?;
    let ctx = setup.context(depth)?;
    let pre_rank = setup
        .src
        .hom(&setup.src.embed(setup.x), &setup.src.embed(setup.z))
        .rank();
    let post_rank = setup
        .tgt
        .hom(&setup.tgt.embed(setup.x), &setup.tgt.embed(setup.z))
        .rank();
    let localised_count = setup.tgt.finite.words(setup.x, setup.z).len();
    let annihilated = generators_annihilated(&ctx)?;
    let qh = quotient_hom(&ctx, &setup.src.embed(setup.x), &setup.src.embed(setup.z))?;
    let ok = pre_rank == 0
        && post_rank == n
        && localised_count == n
        && qh.classes.len() == n
        && qh.images_independent
        && qh.images_generate
        && annihilated
        && qh.inconclusive_candidates == 0
        && qh.unmerged_equal_images == 0;
    Ok(EquivalenceReport {
        n,
        depth,
        pre_rank,
        post_rank,
        localised_count,
        roof_classes: qh.classes.len(),
        images_independent: qh.images_independent,
        images_generate: qh.images_generate,
        generator_count: ctx.gens.gens.len(),
        generators_annihilated: annihilated,
        inconclusive: qh.inconclusive_candidates,
        ok,
    })
}
