//! Zigzag words: morphisms of the localisation of a path category at a
//! set of arrows, realized as normal forms of a cancellation rewriting
//! system.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::quiver::{ArrowId, Quiver, VertexId};
use super::FincatError;

/// A letter of a zigzag word: an arrow traversed forwards, or a marked
/// arrow traversed backwards (its formal inverse).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Fwd(ArrowId),
    Inv(ArrowId),
}

impl Letter {
    pub fn arrow(&self) -> ArrowId {
        match *self {
            Letter::Fwd(a) | Letter::Inv(a) => a,
        }
    }

    pub fn src(&self, q: &Quiver) -> VertexId {
        match *self {
            Letter::Fwd(a) => q.arrow(a).src,
            Letter::Inv(a) => q.arrow(a).tgt,
        }
    }

    pub fn tgt(&self, q: &Quiver) -> VertexId {
        match *self {
            Letter::Fwd(a) => q.arrow(a).tgt,
            Letter::Inv(a) => q.arrow(a).src,
        }
    }

    pub fn cancels(&self, other: &Letter) -> bool {
        matches!(
            (self, other),
            (Letter::Fwd(a), Letter::Inv(b)) | (Letter::Inv(a), Letter::Fwd(b)) if a == b
        )
    }
}

// Enumeration order for words: arrow index first, inverse before
// forward at the same arrow.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |l: &Letter| match *l {
            Letter::Inv(a) => (a.0, 0u8),
            Letter::Fwd(a) => (a.0, 1u8),
        };
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A composable sequence of letters in traversal order; the empty word
/// is the identity at `src == tgt`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZigzagWord {
    pub src: VertexId,
    pub tgt: VertexId,
    pub letters: Vec<Letter>,
}

impl ZigzagWord {
    pub fn identity(v: VertexId) -> Self {
        ZigzagWord {
            src: v,
            tgt: v,
            letters: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Checks composability of consecutive letters and that inverse
    /// letters only use arrows from `sigma`.
    pub fn well_formed(&self, q: &Quiver, sigma: &BTreeSet<ArrowId>) -> bool {
        let mut at = self.src;
        for l in &self.letters {
            if let Letter::Inv(a) = l {
                if !sigma.contains(a) {
                    return false;
                }
            }
            if l.src(q) != at {
                return false;
            }
            at = l.tgt(q);
        }
        at == self.tgt
    }

    /// No adjacent cancelling pair.
    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    /// Rendered in composition order (last traversed letter leftmost),
    /// with `^-1` marking inverses.
    pub fn label(&self, q: &Quiver) -> String {
        if self.letters.is_empty() {
            return format!("id_{}", q.vertex_name(self.src));
        }
        self.letters
            .iter()
            .rev()
            .map(|l| match l {
                Letter::Fwd(a) => q.arrow(*a).name.clone(),
                Letter::Inv(a) => format!("{}^-1", q.arrow(*a).name),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

// Word ordering: by length first, then letterwise.
impl Ord for ZigzagWord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.letters.len(), &self.letters, self.src, self.tgt).cmp(&(
            other.letters.len(),
            &other.letters,
            other.src,
            other.tgt,
        ))
    }
}

impl PartialOrd for ZigzagWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Normal form under the rewriting rules that cancel an arrow against
/// its own formal inverse in either order. One stack pass computes the
/// full fixed point, so the result is reduced and the map idempotent.
pub fn reduce_word(w: &ZigzagWord) -> ZigzagWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        match stack.last() {
            Some(top) if top.cancels(&l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    ZigzagWord {
        src: w.src,
        tgt: w.tgt,
        letters: stack,
    }
}

/// Concatenation `g` after `f`, then reduction.
pub fn compose_words(g: &ZigzagWord, f: &ZigzagWord) -> Result<ZigzagWord, FincatError> {
    if f.tgt != g.src {
        return Err(FincatError::EndpointMismatch);
    }
    let mut letters = f.letters.clone();
    letters.extend_from_slice(&g.letters);
    Ok(reduce_word(&ZigzagWord {
        src: f.src,
        tgt: g.tgt,
        letters,
    }))
}

/// All reduced words between all vertex pairs, level by level up to
/// `length_bound`. The second component is the completeness flag: true
/// when some level below the bound is empty, which certifies that no
/// longer reduced words exist anywhere (every prefix of a reduced word
/// is reduced, so empty levels stay empty).
pub fn enumerate_reduced_words(
    q: &Quiver,
    sigma: &BTreeSet<ArrowId>,
    length_bound: usize,
) -> (Vec<ZigzagWord>, bool) {
    let mut all: Vec<ZigzagWord> = q.vertices().map(ZigzagWord::identity).collect();
    let mut level: Vec<ZigzagWord> = all.clone();
    let mut complete = false;
    for _ in 1..=length_bound {
        let mut next = Vec::new();
        for w in &level {
            for (id, arrow) in q.arrows() {
                let mut push = |letter: Letter| {
                    if w.letters.last().map_or(false, |top| top.cancels(&letter)) {
                        return;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(letter);
                    next.push(ZigzagWord {
                        src: w.src,
                        tgt: letter.tgt(q),
                        letters,
                    });
                };
                if arrow.src == w.tgt {
                    push(Letter::Fwd(id));
                }
                if arrow.tgt == w.tgt && sigma.contains(&id) {
                    push(Letter::Inv(id));
                }
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.sort();
    (all, complete)
}

/// The reduced words a -> b of length at most `length_bound`, sorted,
/// plus the completeness flag of the enumeration. Incompleteness is
/// reported, never silently dropped.
pub fn localised_hom(
    q: &Quiver,
    sigma: &BTreeSet<ArrowId>,
    a: VertexId,
    b: VertexId,
    length_bound: usize,
) -> (Vec<ZigzagWord>, bool) {
    let (all, complete) = enumerate_reduced_words(q, sigma, length_bound);
    (
        all.into_iter()
            .filter(|w| w.src == a && w.tgt == b)
            .collect(),
        complete,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::quiver::span_quiver;

    fn sigma_set(s: &[ArrowId]) -> BTreeSet<ArrowId> {
        s.iter().copied().collect()
    }

    #[test]
    fn defining_cancellations() {
        let (q, sigma) = span_quiver(2);
        let sigma = sigma_set(&sigma);
        let x = q.vertex_by_name("x").unwrap();
        let y1 = q.vertex_by_name("y1").unwrap();
        let z = q.vertex_by_name("z").unwrap();
        let s1 = q.arrow_by_name("s1").unwrap();
        let t1 = q.arrow_by_name("t1").unwrap();

        // s1 then s1^-1 collapses to the identity at x... traversal
        // starts at x going backwards: x -> y1 -> x.
        let w = ZigzagWord {
            src: x,
            tgt: x,
            letters: vec![Letter::Inv(s1), Letter::Fwd(s1)],
        };
        assert!(w.well_formed(&q, &sigma));
        assert_eq!(reduce_word(&w), ZigzagWord::identity(x));

        // (s1^-1 s1) absorbed before t1: word y1 -> x -> y1 -> z.
        let w = ZigzagWord {
            src: y1,
            tgt: z,
            letters: vec![Letter::Fwd(s1), Letter::Inv(s1), Letter::Fwd(t1)],
        };
        let r = reduce_word(&w);
        assert_eq!(r.letters, vec![Letter::Fwd(t1)]);
        assert_eq!(reduce_word(&r), r, "reduction must be idempotent");
    }

    #[test]
    fn mixed_cancellation() {
        let (q, sigma) = span_quiver(2);
        let sigma = sigma_set(&sigma);
        // y1 --s1--> x --s2^-1--> y2 --s2--> x ... wait: build
        // t2 * s2^-1 * s1 * s1^-1 in composition order, i.e. traversal
        // x --s1^-1--> y1 --s1--> x --s2^-1--> y2 --t2--> z.
        let x = q.vertex_by_name("x").unwrap();
        let z = q.vertex_by_name("z").unwrap();
        let s1 = q.arrow_by_name("s1").unwrap();
        let s2 = q.arrow_by_name("s2").unwrap();
        let t2 = q.arrow_by_name("t2").unwrap();
        let w = ZigzagWord {
            src: x,
            tgt: z,
            letters: vec![
                Letter::Inv(s1),
                Letter::Fwd(s1),
                Letter::Inv(s2),
                Letter::Fwd(t2),
            ],
        };
        assert!(w.well_formed(&q, &sigma));
        let r = reduce_word(&w);
        assert_eq!(r.letters, vec![Letter::Inv(s2), Letter::Fwd(t2)]);
        assert_eq!(r.label(&q), "t2*s2^-1");
    }

    #[test]
    fn localised_hom_of_span_family() {
        for n in [1usize, 2, 3, 4] {
            let (q, sigma) = span_quiver(n);
            let sigma = sigma_set(&sigma);
            let x = q.vertex_by_name("x").unwrap();
            let z = q.vertex_by_name("z").unwrap();
            let (words, complete) = localised_hom(&q, &sigma, x, z, 8);
            assert!(complete, "span family saturates well below the bound");
            assert_eq!(words.len(), n);
            for (i, w) in words.iter().enumerate() {
                assert_eq!(w.label(&q), format!("t{}*s{}^-1", i + 1, i + 1));
            }
        }
    }

    #[test]
    fn localised_endomorphisms_of_x_are_trivial() {
        let (q, sigma) = span_quiver(2);
        let sigma = sigma_set(&sigma);
        let x = q.vertex_by_name("x").unwrap();
        let (words, complete) = localised_hom(&q, &sigma, x, x, 8);
        assert!(complete);
        assert_eq!(words, vec![ZigzagWord::identity(x)]);
    }

    #[test]
    fn localised_hom_between_span_tops() {
        let (q, sigma) = span_quiver(2);
        let sigma = sigma_set(&sigma);
        let y1 = q.vertex_by_name("y1").unwrap();
        let y2 = q.vertex_by_name("y2").unwrap();
        let (words, complete) = localised_hom(&q, &sigma, y1, y2, 8);
        assert!(complete);
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].label(&q), "s2^-1*s1");
    }

    #[test]
    fn empty_sigma_words_are_paths() {
        let (q, _) = span_quiver(2);
        let sigma = BTreeSet::new();
        let y1 = q.vertex_by_name("y1").unwrap();
        let x = q.vertex_by_name("x").unwrap();
        let (words, complete) = localised_hom(&q, &sigma, y1, x, 8);
        assert!(complete);
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].label(&q), "s1");
    }
}
