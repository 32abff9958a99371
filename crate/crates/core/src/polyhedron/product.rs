use std::collections::BTreeMap;

use super::{enumerate_faces, Face, FacetData, NewtonPolyhedron};

/// `P_a × P_b` for ideals in disjoint variables, together with the
/// factorization of each of its faces as `Q1 × Q2`.
#[derive(Debug, Clone)]
pub struct ProductPolyhedron {
    pub left: NewtonPolyhedron,
    pub right: NewtonPolyhedron,
    pub left_faces: Vec<Face>,
    pub right_faces: Vec<Face>,
    pub polyhedron: NewtonPolyhedron,
    /// Faces of the product; `faces[k]` is `left_faces[i] × right_faces[j]`
    /// for `(i, j) = factors[k]`.
    pub faces: Vec<Face>,
    pub factors: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
}

impl ProductPolyhedron {
    pub fn face_of(&self, left: usize, right: usize) -> Option<&Face> {
        self.index.get(&(left, right)).map(|&k| &self.faces[k])
    }

    pub fn factors_of(&self, face: usize) -> (usize, usize) {
        self.factors[face]
    }
}

/// Builds the product polyhedron directly from the two factors: vertices are
/// pairs of vertices, facets are the facets of either factor padded with
/// zeros, and every pair of faces (each polyhedron counting as a face of
/// itself) is a face of the product.
pub fn product_polyhedron(a: &NewtonPolyhedron, b: &NewtonPolyhedron) -> ProductPolyhedron {
    let (n, m) = (a.dim(), b.dim());
    let ideal = a.ideal().product(b.ideal());
    let mut vertices = Vec::with_capacity(a.vertices().len() * b.vertices().len());
    for u in a.vertices() {
        for v in b.vertices() {
            let mut w = u.clone();
            w.extend_from_slice(v);
            vertices.push(w);
        }
    }
    let facets: Vec<FacetData> = a
        .facets()
        .iter()
        .map(|f| f.extend(0, m))
        .chain(b.facets().iter().map(|f| f.extend(n, 0)))
        .collect();
    let polyhedron = NewtonPolyhedron::from_parts(ideal, vertices, facets);

    let left_faces = enumerate_faces(a);
    let right_faces = enumerate_faces(b);
    let nb = b.vertices().len();
    let mut faces = Vec::with_capacity(left_faces.len() * right_faces.len());
    let mut factors = Vec::with_capacity(faces.capacity());
    let mut index = BTreeMap::new();
    for q1 in &left_faces {
        for q2 in &right_faces {
            let vertex_ids: Vec<usize> = q1
                .vertex_ids
                .iter()
                .flat_map(|&i| q2.vertex_ids.iter().map(move |&j| i * nb + j))
                .collect();
            let rays: Vec<usize> = q1.rays.iter().copied().chain(q2.rays.iter().map(|&j| n + j)).collect();
            let k = faces.len();
            faces.push(Face::from_parts(&polyhedron, k, vertex_ids, rays));
            factors.push((q1.id, q2.id));
            index.insert((q1.id, q2.id), k);
        }
    }
    ProductPolyhedron {
        left: a.clone(),
        right: b.clone(),
        left_faces,
        right_faces,
        polyhedron,
        faces,
        factors,
        index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedron::{build_polyhedron, minimalize_generators};

    fn poly(gens: &[&[i64]]) -> NewtonPolyhedron {
        let raw: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
        build_polyhedron(&minimalize_generators(&raw).unwrap())
    }

    #[test]
    fn product_of_diagonals_is_a_face() {
        let pa = poly(&[&[2, 0], &[0, 7]]);
        let pb = poly(&[&[14, 0], &[0, 1]]);
        let prod = product_polyhedron(&pa, &pb);
        let da = prod.left_faces.iter().find(|f| f.is_root_bearing()).unwrap().id;
        let db = prod.right_faces.iter().find(|f| f.is_root_bearing()).unwrap().id;
        let q = prod.face_of(da, db).unwrap();
        assert_eq!(q.dim, 2);
        assert_eq!(q.vertices.len(), 4);
        assert!(q.is_root_bearing());
        assert_eq!(prod.faces.len(), prod.left_faces.len() * prod.right_faces.len());
    }

    #[test]
    fn facet_times_whole_is_facet() {
        let pa = poly(&[&[2, 0], &[0, 3]]);
        let pb = poly(&[&[1, 4], &[3, 1]]);
        let prod = product_polyhedron(&pa, &pb);
        for (k, &(i, j)) in prod.factors.iter().enumerate() {
            let (q1, q2) = (&prod.left_faces[i], &prod.right_faces[j]);
            let is_facet = prod.faces[k].is_facet();
            let expected = (q1.is_facet() && q2.is_whole) || (q1.is_whole && q2.is_facet());
            assert_eq!(is_facet, expected, "face pair ({i}, {j})");
        }
    }

    #[test]
    fn product_with_shifted_orthant() {
        let pa = poly(&[&[2, 0], &[0, 3]]);
        let pb = poly(&[&[1, 1]]);
        let prod = product_polyhedron(&pa, &pb);
        // shifted orthant in two variables has the boolean face lattice of size 4
        assert_eq!(prod.right_faces.len(), 4);
        assert_eq!(prod.faces.len(), 24);
    }
}
