//! Finitely presented abelian groups in Smith-canonical form, and
//! subquotient presentations (span of generators modulo span of
//! relations inside an ambient lattice).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::MatrixZ;
use super::snf::{kernel_lattice, snf, SnfDecomposition};
use super::ZlinError;

/// An abelian group presented by `gen_count` generators and integer
/// relation rows. The canonical form (free rank plus invariant-factor
/// chain) is computed once via Smith normal form; two groups are
/// isomorphic exactly when their canonical forms agree.
#[derive(Clone, Debug)]
pub struct FpAbGroup {
    gen_count: usize,
    relations: MatrixZ,
    /// d_i per generator after the change of basis: 1 = dead, >1 =
    /// torsion, 0 = free. Units first, then the torsion chain, then
    /// zeros, as Smith normal form orders them.
    diag: Vec<BigInt>,
    v: MatrixZ,
    v_inv: MatrixZ,
    /// Indices of generators that survive in the canonical form.
    live: Vec<usize>,
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FpAbGroup {
    pub fn from_relations(gen_count: usize, relations: MatrixZ) -> Self {
        assert_eq!(
            relations.cols(),
            gen_count,
            "relation rows must have one entry per generator"
        );
        let dec = snf(&relations);
        let diag = dec.diagonal_padded(gen_count);
        let live: Vec<usize> = (0..gen_count).filter(|&i| !diag[i].is_one()).collect();
        let invariant_factors: Vec<BigInt> = live
            .iter()
            .map(|&i| diag[i].clone())
            .filter(|d| !d.is_zero())
            .collect();
        let free_rank = diag.iter().filter(|d| d.is_zero()).count();
        FpAbGroup {
            gen_count,
            relations,
            diag,
            v: dec.v,
            v_inv: dec.v_inv,
            live,
            free_rank,
            invariant_factors,
        }
    }

    /// Free abelian group of the given rank.
    pub fn free(rank: usize) -> Self {
        Self::from_relations(rank, MatrixZ::zero(0, rank))
    }

    /// Group already in canonical shape: torsion generators with the
    /// given invariant factors (each > 1, forming a divisibility
    /// chain), followed by free generators.
    pub fn diagonal(invariant_factors: &[BigInt], free_rank: usize) -> Self {
        let n = invariant_factors.len() + free_rank;
        let rows: Vec<Vec<BigInt>> = invariant_factors
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut row = vec![BigInt::zero(); n];
                row[i] = d.clone();
                row
            })
            .collect();
        Self::from_relations(n, MatrixZ::from_rows(n, &rows))
    }

    pub fn gen_count(&self) -> usize {
        self.gen_count
    }

    pub fn relations(&self) -> &MatrixZ {
        &self.relations
    }

    /// (free rank, invariant factors > 1 in divisibility order).
    pub fn canonical_form(&self) -> (usize, &[BigInt]) {
        (self.free_rank, &self.invariant_factors)
    }

    pub fn rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Number of canonical generators (torsion plus free).
    pub fn live_count(&self) -> usize {
        self.live.len()
    }

    pub fn is_isomorphic(&self, other: &FpAbGroup) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Canonical coordinates of an element given in generator
    /// coordinates: torsion coordinates are reduced into [0, d), dead
    /// coordinates dropped. Equal outputs exactly when the elements
    /// are congruent modulo the relation lattice.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.gen_count, "coordinate length mismatch");
        let y = MatrixZ::vec_mul(coords, &self.v);
        self.live
            .iter()
            .map(|&i| {
                let d = &self.diag[i];
                if d.is_zero() {
                    y[i].clone()
                } else {
                    ((&y[i] % d) + d) % d
                }
            })
            .collect()
    }

    pub fn is_zero(&self, coords: &[BigInt]) -> bool {
        self.reduce(coords).iter().all(|c| c.is_zero())
    }

    pub fn eq_elements(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    /// Lift of the i-th canonical generator back to generator
    /// coordinates.
    pub fn canonical_gen_lift(&self, i: usize) -> Vec<BigInt> {
        self.v_inv.row_vec(self.live[i])
    }

    /// The canonical form as a standalone diagonal group; its
    /// generators align with `canonical_gen_lift`.
    pub fn canonical_group(&self) -> FpAbGroup {
        FpAbGroup::diagonal(&self.invariant_factors, self.free_rank)
    }
}

impl PartialEq for FpAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.gen_count == other.gen_count && self.relations == other.relations
    }
}
impl Eq for FpAbGroup {}

/// An element of a finitely presented abelian group. Equality is
/// congruence modulo the relation lattice.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub group: Arc<FpAbGroup>,
    pub coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(group: Arc<FpAbGroup>, coords: Vec<BigInt>) -> Self {
        assert_eq!(coords.len(), group.gen_count());
        GroupElement { group, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_zero(&self.coords)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.as_ref() == other.group.as_ref()
            && self.group.eq_elements(&self.coords, &other.coords)
    }
}
impl Eq for GroupElement {}

/// Presentation of (span of `gens`) / (span of `rels`) inside an
/// ambient free lattice, together with the data needed to express
/// ambient vectors in canonical coordinates and to lift canonical
/// generators back to the ambient lattice.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient_rank: usize,
    gens: MatrixZ,
    gens_snf: SnfDecomposition,
    /// Full presentation on the input generators.
    pub group: FpAbGroup,
    /// Diagonal presentation on the canonical generators.
    pub canonical: FpAbGroup,
    /// Canonical generators as combinations of the input generators.
    pub gen_coeffs: Vec<Vec<BigInt>>,
    /// Canonical generators as ambient vectors.
    pub gen_lifts: Vec<Vec<BigInt>>,
}

/// Builds the subquotient presentation. Errors when a relation vector
/// does not lie in the span of the generators: that always signals a
/// logic bug in the caller, not bad input data.
pub fn subquotient(
    gens: &[Vec<BigInt>],
    rels: &[Vec<BigInt>],
    ambient_rank: usize,
) -> Result<Subquotient, ZlinError> {
    for g in gens.iter().chain(rels.iter()) {
        if g.len() != ambient_rank {
            return Err(ZlinError::DimensionMismatch {
                context: "subquotient vectors must have ambient length",
            });
        }
    }
    let gens_matrix = MatrixZ::from_rows(ambient_rank, gens);
    let gens_snf = snf(&gens_matrix);
    let mut relation_rows: Vec<Vec<BigInt>> = Vec::new();
    for r in rels {
        match gens_snf.solve_left(r)? {
            Some(c) => relation_rows.push(c),
            None => return Err(ZlinError::RelationOutsideSpan),
        }
    }
    let syzygies = kernel_lattice(&gens_matrix);
    for i in 0..syzygies.rows() {
        relation_rows.push(syzygies.row_vec(i));
    }
    let group = FpAbGroup::from_relations(
        gens.len(),
        MatrixZ::from_rows(gens.len(), &relation_rows),
    );
    let canonical = group.canonical_group();
    let gen_coeffs: Vec<Vec<BigInt>> = (0..group.live_count())
        .map(|i| group.canonical_gen_lift(i))
        .collect();
    let gen_lifts: Vec<Vec<BigInt>> = gen_coeffs
        .iter()
        .map(|c| MatrixZ::vec_mul(c, &gens_matrix))
        .collect();
    Ok(Subquotient {
        ambient_rank,
        gens: gens_matrix,
        gens_snf,
        group,
        canonical,
        gen_coeffs,
        gen_lifts,
    })
}

impl Subquotient {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Expresses an ambient vector as a combination of the input
    /// generators, if it lies in their span.
    pub fn express(&self, ambient: &[BigInt]) -> Result<Option<Vec<BigInt>>, ZlinError> {
        self.gens_snf.solve_left(ambient)
    }

    /// Canonical coordinates of the class of an ambient vector.
    pub fn coords(&self, ambient: &[BigInt]) -> Result<Option<Vec<BigInt>>, ZlinError> {
        Ok(self.express(ambient)?.map(|c| self.group.reduce(&c)))
    }

    pub fn contains(&self, ambient: &[BigInt]) -> bool {
        matches!(self.express(ambient), Ok(Some(_)))
    }

    pub fn gens_matrix(&self) -> &MatrixZ {
        &self.gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&e| BigInt::from(e)).collect()
    }

    #[test]
    fn standard_basis_mod_two_is_z2() {
        let q = subquotient(&[b(&[1])], &[b(&[2])], 1).unwrap();
        assert_eq!(q.group.canonical_form(), (0, &[BigInt::from(2)][..]));
    }

    #[test]
    fn free_rank_two() {
        let q = subquotient(&[b(&[1, 0]), b(&[0, 1])], &[], 2).unwrap();
        assert_eq!(q.group.canonical_form(), (2, &[][..]));
    }

    // gens (2,0), (0,3); the relation (2,3) = 1*(2,0) + 1*(0,3) kills one
    // rank: the quotient is free of rank 1.
    #[test]
    fn mixed_generators_relation() {
        let q = subquotient(&[b(&[2, 0]), b(&[0, 3])], &[b(&[2, 3])], 2).unwrap();
        assert_eq!(q.group.canonical_form(), (1, &[][..]));
    }

    #[test]
    fn relation_outside_span_is_an_error() {
        let err = subquotient(&[b(&[2])], &[b(&[1])], 1).unwrap_err();
        assert!(matches!(err, ZlinError::RelationOutsideSpan));
    }

    #[test]
    fn canonical_generator_lifts_are_consistent() {
        let q = subquotient(&[b(&[2, 0]), b(&[0, 3])], &[b(&[2, 3])], 2).unwrap();
        assert_eq!(q.gen_lifts.len(), 1);
        // The lift must be in the span and reduce to the unit coordinate.
        let c = q.coords(&q.gen_lifts[0]).unwrap().unwrap();
        assert_eq!(c, b(&[1]));
    }

    #[test]
    fn element_equality_is_congruence() {
        let g = Arc::new(FpAbGroup::from_relations(
            2,
            MatrixZ::from_i64(&[&[2, 0]]),
        ));
        let a = GroupElement::new(g.clone(), b(&[3, 1]));
        let bb = GroupElement::new(g.clone(), b(&[1, 1]));
        let c = GroupElement::new(g.clone(), b(&[0, 1]));
        assert_eq!(a, bb);
        assert_ne!(a, c);
    }

    #[test]
    fn empty_generator_list() {
        let q = subquotient(&[], &[], 3).unwrap();
        assert!(q.group.is_trivial());
        assert_eq!(q.express(&b(&[0, 0, 0])).unwrap(), Some(vec![]));
        assert_eq!(q.express(&b(&[1, 0, 0])).unwrap(), None);
    }
}
