//! Stacked triangulations, stored as their insertion history.
//!
//! Every face remembers which of its corners plays the red, blue and green
//! role. Inserting `w` into the face `(r, b, g)` adds the edges `w-r` (red),
//! `w-b` (blue), `w-g` (green) and replaces the face by `(w, b, g)`,
//! `(r, w, g)` and `(r, b, w)`, in which `w` takes the role of the corner it
//! replaced.

use std::collections::HashMap;

use super::{Color, TricoloredTree};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Outer(Color),
    /// The vertex added by the insertion with this index.
    Inner(usize),
}

const OUTER_FACE: [Vertex; 3] =
    [Vertex::Outer(Color::Red), Vertex::Outer(Color::Blue), Vertex::Outer(Color::Green)];

fn face_key(face: &[Vertex; 3]) -> [Vertex; 3] {
    let mut key = *face;
    key.sort_unstable();
    key
}

/// Faces of `face` after inserting `w`, indexed by the role `w` takes.
fn split(face: [Vertex; 3], w: Vertex) -> [[Vertex; 3]; 3] {
    let mut out = [face; 3];
    for (role, child) in out.iter_mut().enumerate() {
        child[role] = w;
    }
    out
}

fn role_color(role: usize) -> Color {
    [Color::Red, Color::Blue, Color::Green][role]
}

fn color_role(color: Color) -> usize {
    match color {
        Color::Red => 0,
        Color::Blue => 1,
        Color::Green => 2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StackedTriangulation {
    /// Role-ordered (red, blue, green) corners of the face each insertion
    /// subdivides.
    insertions: Vec<[Vertex; 3]>,
}

impl StackedTriangulation {
    /// The outer triangle with one vertex inserted.
    pub fn base() -> Self {
        StackedTriangulation { insertions: vec![OUTER_FACE] }
    }

    /// Replays `faces`, each naming the corners of an existing face in any
    /// order.
    pub fn new(faces: &[[Vertex; 3]]) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::InvalidTriangulation("no insertions".into()));
        }
        let mut open: HashMap<[Vertex; 3], [Vertex; 3]> = HashMap::new();
        open.insert(face_key(&OUTER_FACE), OUTER_FACE);
        let mut insertions = Vec::with_capacity(faces.len());
        for (i, face) in faces.iter().enumerate() {
            if let Some(Vertex::Inner(j)) = face.iter().find(|v| matches!(v, Vertex::Inner(j) if *j >= i)) {
                return Err(Error::InvalidTriangulation(format!(
                    "insertion {i} names vertex {j} before it exists"
                )));
            }
            let roles = open.remove(&face_key(face)).ok_or_else(|| {
                Error::InvalidTriangulation(format!("insertion {i} subdivides {face:?}, which is not a face"))
            })?;
            for child in split(roles, Vertex::Inner(i)) {
                open.insert(face_key(&child), child);
            }
            insertions.push(roles);
        }
        Ok(StackedTriangulation { insertions })
    }

    /// Number of internal vertices.
    pub fn len(&self) -> usize {
        self.insertions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.insertions.is_empty()
    }

    pub fn insertions(&self) -> &[[Vertex; 3]] {
        &self.insertions
    }

    /// Outer edges (uncolored) followed by the three colored edges of each
    /// insertion.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, Option<Color>)> {
        let mut out = vec![
            (OUTER_FACE[0], OUTER_FACE[1], None),
            (OUTER_FACE[1], OUTER_FACE[2], None),
            (OUTER_FACE[2], OUTER_FACE[0], None),
        ];
        for (i, face) in self.insertions.iter().enumerate() {
            for (role, &v) in face.iter().enumerate() {
                out.push((Vertex::Inner(i), v, Some(role_color(role))));
            }
        }
        out
    }

    /// Insertions reordered by depth and admissible label of the tree.
    pub fn canonical(&self) -> Result<Self> {
        Ok(tree_to_triangulation(&triangulation_to_tree(self)?))
    }
}

/// Each inserted vertex hangs from the deepest internal corner of the face it
/// subdivides, by an edge of that corner's role.
pub fn triangulation_to_tree(s: &StackedTriangulation) -> Result<TricoloredTree> {
    let m = s.len();
    let mut depth = vec![0usize; m];
    let mut parent: Vec<Option<usize>> = vec![None; m];
    let mut edges = Vec::with_capacity(m.saturating_sub(1));
    for (i, face) in s.insertions.iter().enumerate().skip(1) {
        let corners: Vec<(usize, usize)> = face
            .iter()
            .enumerate()
            .filter_map(|(role, v)| match v {
                Vertex::Inner(j) => Some((role, *j)),
                Vertex::Outer(_) => None,
            })
            .collect();
        let &(role, top) = corners
            .iter()
            .max_by_key(|(_, j)| depth[*j])
            .ok_or_else(|| Error::InvalidTriangulation(format!("insertion {i} touches no internal vertex")))?;
        // The other corners must be ancestors of the chosen one.
        for &(_, j) in &corners {
            let mut up = Some(top);
            while let Some(u) = up {
                if u == j {
                    break;
                }
                up = parent[u];
            }
            if up.is_none() {
                return Err(Error::Invariant(format!("corners of insertion {i} are not on one root path")));
            }
        }
        depth[i] = depth[top] + 1;
        parent[i] = Some(top);
        edges.push((top, i, role_color(role)));
    }
    Ok(TricoloredTree::from_edges(m, &edges)?.canonical())
}

/// Replays a tree parent-first: a child reached by color `c` subdivides the
/// face its parent created in the role of `c`.
pub fn tree_to_triangulation(t: &TricoloredTree) -> StackedTriangulation {
    let t = t.canonical();
    let depth = t.depths();
    let mut order: Vec<usize> = (0..t.len()).collect();
    order.sort_by_key(|&x| (depth[x], x));
    let mut index = vec![0; t.len()];
    for (i, &x) in order.iter().enumerate() {
        index[x] = i;
    }
    let mut faces: Vec<[Vertex; 3]> = Vec::with_capacity(t.len());
    for &x in &order {
        let face = match t.parent(x) {
            None => OUTER_FACE,
            Some((p, color)) => split(faces[index[p]], Vertex::Inner(index[p]))[color_role(color)],
        };
        faces.push(face);
    }
    StackedTriangulation::new(&faces).expect("replay of a valid tree is valid")
}
