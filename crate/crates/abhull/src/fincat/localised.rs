//! The localised category: reduced zigzag words with composition by
//! concatenate-and-reduce, enumerated up to a length bound.

use std::collections::{BTreeMap, BTreeSet};

use super::quiver::{ArrowId, Quiver, VertexId};
use super::word::{compose_words, enumerate_reduced_words, ZigzagWord};
use super::{FincatError, FiniteCategory};

/// Morphisms are reduced words cached per ordered vertex pair. When the
/// enumeration is complete the word sets are the genuine hom-sets and
/// composition always lands back in the cache; an incomplete
/// enumeration is carried as an explicit flag and rejected by
/// consumers that need the category to be finite.
#[derive(Debug)]
pub struct LocalisedCategory {
    quiver: Quiver,
    sigma: BTreeSet<ArrowId>,
    length_bound: usize,
    complete: bool,
    hom: BTreeMap<(VertexId, VertexId), Vec<ZigzagWord>>,
    index: BTreeMap<(VertexId, VertexId, Vec<u64>), usize>,
}

fn word_key(w: &ZigzagWord) -> Vec<u64> {
    w.letters
        .iter()
        .map(|l| match l {
            super::word::Letter::Inv(a) => 2 * a.0 as u64,
            super::word::Letter::Fwd(a) => 2 * a.0 as u64 + 1,
        })
        .collect()
}

impl LocalisedCategory {
    pub fn new(
        quiver: Quiver,
        sigma: Vec<ArrowId>,
        length_bound: usize,
    ) -> Result<Self, FincatError> {
        for a in &sigma {
            if a.0 >= quiver.arrow_count() {
                return Err(FincatError::UnknownArrow(format!("#{}", a.0)));
            }
        }
        let sigma: BTreeSet<ArrowId> = sigma.into_iter().collect();
        let (all, complete) = enumerate_reduced_words(&quiver, &sigma, length_bound);
        let mut hom: BTreeMap<(VertexId, VertexId), Vec<ZigzagWord>> = BTreeMap::new();
        for a in quiver.vertices() {
            for b in quiver.vertices() {
                hom.insert((a, b), Vec::new());
            }
        }
        for w in all {
            hom.get_mut(&(w.src, w.tgt)).expect("endpoint pair exists").push(w);
        }
        let mut index = BTreeMap::new();
        for ((a, b), words) in &hom {
            for (i, w) in words.iter().enumerate() {
                index.insert((*a, *b, word_key(w)), i);
            }
        }
        Ok(LocalisedCategory {
            quiver,
            sigma,
            length_bound,
            complete,
            hom,
            index,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn sigma(&self) -> &BTreeSet<ArrowId> {
        &self.sigma
    }

    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn words(&self, a: VertexId, b: VertexId) -> &[ZigzagWord] {
        &self.hom[&(a, b)]
    }

    pub fn word(&self, a: VertexId, b: VertexId, idx: usize) -> &ZigzagWord {
        &self.hom[&(a, b)][idx]
    }

    pub fn word_index(&self, w: &ZigzagWord) -> Option<usize> {
        self.index.get(&(w.src, w.tgt, word_key(w))).copied()
    }

    pub fn compose(&self, g: &ZigzagWord, f: &ZigzagWord) -> Result<ZigzagWord, FincatError> {
        let r = compose_words(g, f)?;
        if self.complete && self.word_index(&r).is_none() {
            return Err(FincatError::IncompleteEnumeration);
        }
        Ok(r)
    }
}

impl FiniteCategory for LocalisedCategory {
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
        let r = compose_words(&self.hom[&(b, c)][g], &self.hom[&(a, b)][f])
            .expect("indexed words are composable");
        self.word_index(&r)
            .expect("complete enumeration is closed under composition")
    }

    fn mor_label(&self, a: VertexId, b: VertexId, idx: usize) -> String {
        self.hom[&(a, b)][idx].label(&self.quiver)
    }

    fn complete(&self) -> bool {
        self.complete
    }
}
