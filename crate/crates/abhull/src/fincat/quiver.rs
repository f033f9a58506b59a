//! Finite quivers and their path sets.

use super::FincatError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: VertexId,
    pub tgt: VertexId,
}

/// A finite quiver: named vertices and named arrows with declared
/// endpoints. Names must be pairwise distinct and endpoints declared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
    ) -> Result<Self, FincatError> {
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(FincatError::DuplicateName(v.clone()));
            }
        }
        let lookup = |name: &str| -> Result<VertexId, FincatError> {
            vertices
                .iter()
                .position(|v| v == name)
                .map(VertexId)
                .ok_or_else(|| FincatError::UnknownVertex(name.to_string()))
        };
        let mut built = Vec::with_capacity(arrows.len());
        for (name, src, tgt) in arrows {
            if !seen.insert(name.clone()) {
                return Err(FincatError::DuplicateName(name));
            }
            built.push(Arrow {
                name,
                src: lookup(&src)?,
                tgt: lookup(&tgt)?,
            });
        }
        Ok(Quiver {
            vertex_names: vertices,
            arrows: built,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> impl Iterator<Item = (ArrowId, &Arrow)> + '_ {
        self.arrows.iter().enumerate().map(|(i, a)| (ArrowId(i), a))
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|v| v == name).map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    /// Kahn's algorithm; cyclic quivers have infinite path sets and are
    /// rejected wherever finite hom-sets are required.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count();
        let mut indegree = vec![0usize; n];
        for a in &self.arrows {
            indegree[a.tgt.0] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for a in &self.arrows {
                if a.src.0 == v {
                    indegree[a.tgt.0] -= 1;
                    if indegree[a.tgt.0] == 0 {
                        queue.push(a.tgt.0);
                    }
                }
            }
        }
        removed == n
    }
}

/// The family of quivers with two sinks `x`, `z` and `n` spans
/// `x <- y_i -> z` between them: left legs `s1..sn` (the arrows marked
/// for inversion, returned as the second component) and right legs
/// `t1..tn`.
pub fn span_quiver(n: usize) -> (Quiver, Vec<ArrowId>) {
    let mut vertices = vec!["x".to_string(), "z".to_string()];
    let mut arrows = Vec::new();
    for i in 1..=n {
        vertices.push(format!("y{i}"));
    }
    for i in 1..=n {
        let y = format!("y{i}");
        arrows.push((format!("s{i}"), y.clone(), "x".to_string()));
        arrows.push((format!("t{i}"), y, "z".to_string()));
    }
    let quiver = Quiver::new(vertices, arrows).expect("span quiver construction is well-formed");
    let sigma = (0..n).map(|i| ArrowId(2 * i)).collect();
    (quiver, sigma)
}

/// A directed path: a composable arrow sequence in traversal order.
/// The empty sequence is the identity path at `src == tgt`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub src: VertexId,
    pub tgt: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl Path {
    pub fn identity(v: VertexId) -> Self {
        Path {
            src: v,
            tgt: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("id_{}", q.vertex_name(self.src))
        } else {
            // Composition order: last traversed arrow leftmost.
            self.arrows
                .iter()
                .rev()
                .map(|&a| q.arrow(a).name.clone())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Composition `p` after `q`: requires target(q) = source(p).
pub fn compose_paths(p: &Path, q: &Path) -> Result<Path, FincatError> {
    if q.tgt != p.src {
        return Err(FincatError::EndpointMismatch);
    }
    let mut arrows = q.arrows.clone();
    arrows.extend_from_slice(&p.arrows);
    Ok(Path {
        src: q.src,
        tgt: p.tgt,
        arrows,
    })
}

/// The complete finite set of paths a -> b, sorted by (length, arrow
/// sequence). Errors on cyclic quivers, where path sets are infinite.
pub fn hom_paths(q: &Quiver, a: VertexId, b: VertexId) -> Result<Vec<Path>, FincatError> {
    if !q.is_acyclic() {
        return Err(FincatError::InfiniteHomSet);
    }
    let mut out = Vec::new();
    let mut stack: Vec<(VertexId, Vec<ArrowId>)> = vec![(a, Vec::new())];
    while let Some((v, trail)) = stack.pop() {
        if v == b {
            out.push(Path {
                src: a,
                tgt: b,
                arrows: trail.clone(),
            });
        }
        for (id, arrow) in q.arrows() {
            if arrow.src == v {
                let mut next = trail.clone();
                next.push(id);
                stack.push((arrow.tgt, next));
            }
        }
    }
    out.sort_by(|x, y| (x.len(), &x.arrows).cmp(&(y.len(), &y.arrows)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_quiver_counts() {
        let (q0, s0) = span_quiver(0);
        assert_eq!((q0.vertex_count(), q0.arrow_count(), s0.len()), (2, 0, 0));
        let (q1, s1) = span_quiver(1);
        assert_eq!((q1.vertex_count(), q1.arrow_count(), s1.len()), (3, 2, 1));
        let (q3, s3) = span_quiver(3);
        assert_eq!((q3.vertex_count(), q3.arrow_count(), s3.len()), (5, 6, 3));
    }

    #[test]
    fn hom_paths_on_spans() {
        let (q, _) = span_quiver(2);
        let x = q.vertex_by_name("x").unwrap();
        let z = q.vertex_by_name("z").unwrap();
        let y1 = q.vertex_by_name("y1").unwrap();
        let ps = hom_paths(&q, y1, x).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].label(&q), "s1");
        assert!(hom_paths(&q, x, z).unwrap().is_empty());
        let loops = hom_paths(&q, x, x).unwrap();
        assert_eq!(loops, vec![Path::identity(x)]);
    }

    #[test]
    fn cyclic_quiver_rejected() {
        let q = Quiver::new(
            vec!["a".into(), "b".into()],
            vec![
                ("f".into(), "a".into(), "b".into()),
                ("g".into(), "b".into(), "a".into()),
            ],
        )
        .unwrap();
        assert!(!q.is_acyclic());
        assert!(matches!(
            hom_paths(&q, VertexId(0), VertexId(0)),
            Err(FincatError::InfiniteHomSet)
        ));
    }

    #[test]
    fn composition_is_concatenation_with_units() {
        let q = Quiver::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                ("f".into(), "a".into(), "b".into()),
                ("g".into(), "b".into(), "c".into()),
            ],
        )
        .unwrap();
        let f = hom_paths(&q, VertexId(0), VertexId(1)).unwrap()[0].clone();
        let g = hom_paths(&q, VertexId(1), VertexId(2)).unwrap()[0].clone();
        let gf = compose_paths(&g, &f).unwrap();
        assert_eq!(gf.arrows, vec![ArrowId(0), ArrowId(1)]);
        assert_eq!(gf.label(&q), "g*f");
        let id_a = Path::identity(VertexId(0));
        assert_eq!(compose_paths(&f, &id_a).unwrap(), f);
        let id_b = Path::identity(VertexId(1));
        assert_eq!(compose_paths(&id_b, &f).unwrap(), f);
        assert!(compose_paths(&f, &g).is_err());
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(Quiver::new(vec!["a".into(), "a".into()], vec![]).is_err());
        assert!(Quiver::new(
            vec!["a".into()],
            vec![("a".into(), "a".into(), "a".into())]
        )
        .is_err());
    }
}
