use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;
use serde::Serialize;

use super::{eval, NewtonPolyhedron};
use crate::error::PolyhedronError;
use crate::geometry::linalg::solve_linear_ordered;
use crate::geometry::{
    affine_span, int, linear_span, rvec, AffineSubspace, ExponentVector, Rational, RationalVector,
};

/// A face `Q` of a Newton polyhedron.
///
/// Faces are identified by the vertices and coordinate rays they contain.
/// `Γ ∩ Q` is exactly `⋃ (g + N^rays)` over the minimal generators `g` lying
/// on `Q`, so `generators` and `rays` describe it without truncation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: usize,
    /// Every facet containing the face (empty for `P` itself).
    pub facets: BTreeSet<usize>,
    pub vertex_ids: Vec<usize>,
    pub vertices: Vec<ExponentVector>,
    /// Coordinates `i` with `e_i` in the recession cone of the face.
    pub rays: Vec<usize>,
    pub dim: usize,
    /// Minimal generators of the ideal lying on the face.
    pub generators: Vec<ExponentVector>,
    #[serde(skip)]
    pub affine_hull: AffineSubspace,
    /// Basis of the linear span `V_Q`.
    #[serde(skip)]
    pub linear_span: Vec<RationalVector>,
    /// A functional identically one on the face, if one exists.
    #[serde(skip)]
    pub functional: Option<RationalVector>,
    pub in_coordinate_hyperplane: bool,
    pub is_whole: bool,
}

impl Face {
    pub(crate) fn from_parts(
        p: &NewtonPolyhedron,
        id: usize,
        vertex_ids: Vec<usize>,
        rays: Vec<usize>,
    ) -> Face {
        let n = p.dim();
        let vertices: Vec<ExponentVector> =
            vertex_ids.iter().map(|&i| p.vertices()[i].clone()).collect();
        let is_whole = rays.len() == n;
        let facets: BTreeSet<usize> = p
            .facets()
            .iter()
            .enumerate()
            .filter(|(_, f)| {
                vertices.iter().all(|v| f.is_tight(v)) && rays.iter().all(|&i| f.normal[i] == 0)
            })
            .map(|(k, _)| k)
            .collect();
        let generators: Vec<ExponentVector> = p
            .ideal()
            .generators()
            .iter()
            .filter(|g| facets.iter().all(|&k| p.facets()[k].is_tight(g)))
            .cloned()
            .collect();
        let mut points: Vec<RationalVector> = vertices.iter().map(|v| rvec(v)).collect();
        for &i in &rays {
            let mut q = vertices[0].clone();
            q[i] += 1;
            points.push(rvec(&q));
        }
        let affine_hull = affine_span(&points).expect("faces contain a vertex");
        let mut spanning: Vec<RationalVector> = vertices.iter().map(|v| rvec(v)).collect();
        spanning.extend(rays.iter().map(|&i| unit(n, i)));
        let linear_span = linear_span(&spanning).expect("faces contain a vertex");
        let in_coordinate_hyperplane =
            (0..n).any(|i| !rays.contains(&i) && vertices.iter().all(|v| v[i] == 0));
        let mut face = Face {
            id,
            facets,
            vertex_ids,
            vertices,
            rays,
            dim: affine_hull.dim(),
            generators,
            affine_hull,
            linear_span,
            functional: None,
            in_coordinate_hyperplane,
            is_whole,
        };
        let order: Vec<usize> = (0..n).collect();
        face.functional = face_functional_ordered(&face, &order).ok();
        face
    }

    pub fn ambient_dim(&self) -> usize {
        self.affine_hull.ambient_dim()
    }

    pub fn is_facet(&self) -> bool {
        self.dim + 1 == self.ambient_dim()
    }

    /// Contributes roots: neither the whole polyhedron nor inside `{x_i = 0}`.
    pub fn is_root_bearing(&self) -> bool {
        !self.is_whole && !self.in_coordinate_hyperplane
    }

    /// Sum of the normalized functionals of the facets through the face; it
    /// is nonnegative, equals `|facets|` exactly on the face and exceeds it
    /// on the rest of `P`. Zero for the whole polyhedron.
    pub fn grading(&self, p: &NewtonPolyhedron) -> RationalVector {
        let mut l = vec![Rational::zero(); p.dim()];
        for &k in &self.facets {
            if let Some(f) = p.facets()[k].functional() {
                for (a, b) in l.iter_mut().zip(f) {
                    *a += b;
                }
            }
        }
        l
    }

    /// Points of `Γ ∩ Q` with every coordinate at most `bound`.
    pub fn points_in_box(&self, bound: i64) -> Vec<ExponentVector> {
        let mut out = BTreeSet::new();
        for g in &self.generators {
            if g.iter().any(|&x| x > bound) {
                continue;
            }
            let mut stack = vec![g.clone()];
            while let Some(q) = stack.pop() {
                if !out.insert(q.clone()) {
                    continue;
                }
                for &i in &self.rays {
                    if q[i] < bound {
                        let mut r = q.clone();
                        r[i] += 1;
                        stack.push(r);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Does `l` equal one on every vertex and vanish on every ray?
    pub fn verify_functional(&self, l: &[Rational]) -> bool {
        self.vertices.iter().all(|v| eval(l, v) == int(1))
            && self.rays.iter().all(|&i| l[i].is_zero())
    }
}

fn unit(n: usize, i: usize) -> RationalVector {
    let mut v = vec![Rational::zero(); n];
    v[i] = int(1);
    v
}

/// All faces of `P`, `P` itself first, then by decreasing dimension.
pub fn enumerate_faces(p: &NewtonPolyhedron) -> Vec<Face> {
    let n = p.dim();
    let nv = p.vertices().len();
    // element ids: vertices 0..nv, rays nv..nv+n
    let incidence: Vec<BTreeSet<usize>> = p
        .facets()
        .iter()
        .map(|f| {
            let mut s: BTreeSet<usize> = (0..nv).filter(|&i| f.is_tight(&p.vertices()[i])).collect();
            s.extend((0..n).filter(|&i| f.normal[i] == 0).map(|i| nv + i));
            s
        })
        .collect();
    let has_vertex = |s: &BTreeSet<usize>| s.iter().next().is_some_and(|&e| e < nv);

    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    seen.insert((0..nv + n).collect());
    let mut queue: VecDeque<BTreeSet<usize>> = VecDeque::new();
    for s in &incidence {
        if has_vertex(s) && seen.insert(s.clone()) {
            queue.push_back(s.clone());
        }
    }
    while let Some(s) = queue.pop_front() {
        for f in &incidence {
            let t: BTreeSet<usize> = s.intersection(f).copied().collect();
            if has_vertex(&t) && seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }

    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|s| {
            let vertex_ids: Vec<usize> = s.iter().copied().filter(|&e| e < nv).collect();
            let rays: Vec<usize> = s.iter().copied().filter(|&e| e >= nv).map(|e| e - nv).collect();
            Face::from_parts(p, 0, vertex_ids, rays)
        })
        .collect();
    faces.sort_by(|a, b| {
        b.dim
            .cmp(&a.dim)
            .then_with(|| (&a.vertex_ids, &a.rays).cmp(&(&b.vertex_ids, &b.rays)))
    });
    for (i, f) in faces.iter_mut().enumerate() {
        f.id = i;
    }
    faces
}

/// `L` with `L ≡ 1` on `Q`, canonicalized as the basic solution in the
/// natural variable order.
pub fn face_functional(face: &Face) -> Result<RationalVector, PolyhedronError> {
    let order: Vec<usize> = (0..face.ambient_dim()).collect();
    face_functional_ordered(face, &order)
}

/// `L` with `L ≡ 1` on `Q`: the basic solution supported on the earliest
/// possible variables of `order`. Only `L` restricted to `V_Q` is canonical.
pub fn face_functional_ordered(face: &Face, order: &[usize]) -> Result<RationalVector, PolyhedronError> {
    if face.is_whole {
        return Err(PolyhedronError::WholePolyhedron(face.id));
    }
    if face.in_coordinate_hyperplane {
        return Err(PolyhedronError::CoordinateFace(face.id));
    }
    let n = face.ambient_dim();
    let mut rows: Vec<RationalVector> = face.vertices.iter().map(|v| rvec(v)).collect();
    let mut rhs: Vec<Rational> = vec![int(1); rows.len()];
    for &i in &face.rays {
        rows.push(unit(n, i));
        rhs.push(Rational::zero());
    }
    solve_linear_ordered(n, &rows, &rhs, order)?
        .map(|s| s.particular)
        .ok_or(PolyhedronError::InconsistentFunctional(face.id))
}
