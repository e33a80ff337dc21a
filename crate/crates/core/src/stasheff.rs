//! Face enumeration for the algebraic Stasheff polytope `B_n`.
//!
//! Facets of `B_n` are the strictly ordered stable partitions (arcs of the
//! marked circle). A face of codimension `k` is a good family of `k` facets;
//! vertices are the faces of codimension `n`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cyclic::{Contraction, GoodFamily, Mark, MarkedSet, StablePartition};
use crate::error::{Error, Result};

/// A face of `B_n`, represented by the good family of facets containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GoodFamily", into = "GoodFamily")]
pub struct Face {
    family: GoodFamily,
}

impl Face {
    pub fn new(family: GoodFamily) -> Result<Self> {
        if let Some(bad) = family.members().iter().find(|p| !p.is_strictly_ordered()) {
            return Err(Error::Precondition(format!("{bad} is not a facet of B_n")));
        }
        Ok(Face { family })
    }

    pub fn from_members(members: Vec<StablePartition>) -> Result<Self> {
        Face::new(GoodFamily::new(members)?)
    }

    pub fn family(&self) -> &GoodFamily {
        &self.family
    }

    pub fn members(&self) -> &[StablePartition] {
        self.family.members()
    }

    pub fn codim(&self) -> usize {
        self.family.len()
    }

    /// Dimension of the face, `n - codim`.
    pub fn dim(&self) -> usize {
        self.host().n() - self.codim()
    }

    pub fn host(&self) -> MarkedSet {
        self.family.host()
    }

    pub fn is_vertex(&self) -> bool {
        self.codim() == self.host().n()
    }
}

impl TryFrom<GoodFamily> for Face {
    type Error = Error;
    fn try_from(f: GoodFamily) -> Result<Self> {
        Face::new(f)
    }
}

impl From<Face> for GoodFamily {
    fn from(f: Face) -> Self {
        f.family
    }
}

/// All strictly ordered stable partitions, sorted by canonical mask.
pub fn facets(n: usize) -> Result<Vec<StablePartition>> {
    let host = MarkedSet::new(n)?;
    // canonical sides are runs inside positions 0..=n+1 of length 2..=n+1
    let line = n + 2;
    let mut out = Vec::with_capacity(n * (n + 3) / 2);
    for len in 2..=n + 1 {
        for start in 0..=line - len {
            let mask = ((1u64 << len) - 1) << start;
            out.push(StablePartition::from_mask(host, mask)?);
        }
    }
    out.sort();
    Ok(out)
}

/// Compatibility graph over the facets: `adj[i]` holds indices `j > i` with `a = 3`.
fn compatibility(facets: &[StablePartition]) -> Vec<Vec<usize>> {
    facets
        .iter()
        .enumerate()
        .map(|(i, p)| (i + 1..facets.len()).filter(|&j| p.a_count(&facets[j]).expect("same host") == 3).collect())
        .collect()
}

/// All faces of codimension `k`, i.e. good families of `k` facets.
pub fn faces(n: usize, k: usize) -> Result<Vec<Face>> {
    if k == 0 || k > n {
        return Err(Error::CodimOutOfRange { k, n });
    }
    let facets = facets(n)?;
    let adj = compatibility(&facets);
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(k);
    for start in 0..facets.len() {
        stack.push(start);
        extend_clique(&facets, &adj, k, &adj[start], &mut stack, &mut out);
        stack.pop();
    }
    Ok(out)
}

fn extend_clique(
    facets: &[StablePartition],
    adj: &[Vec<usize>],
    k: usize,
    candidates: &[usize],
    stack: &mut Vec<usize>,
    out: &mut Vec<Face>,
) {
    if stack.len() == k {
        let members = stack.iter().map(|&i| facets[i]).collect();
        out.push(Face { family: GoodFamily::from_sorted_unchecked(members) });
        return;
    }
    for (pos, &next) in candidates.iter().enumerate() {
        let narrowed: Vec<usize> =
            candidates[pos + 1..].iter().copied().filter(|c| adj[next].binary_search(c).is_ok()).collect();
        if stack.len() + 1 + narrowed.len() < k {
            continue;
        }
        stack.push(next);
        extend_clique(facets, adj, k, &narrowed, stack, out);
        stack.pop();
    }
}

pub fn vertices(n: usize) -> Result<Vec<Face>> {
    faces(n, n)
}

/// Image of a vertex under the projection onto `M_{0,{0,s_i,1,inf}} = P^1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexImage {
    ZeroPoint,
    OnePoint,
}

impl VertexImage {
    /// The point of `P^1` as a number.
    pub fn value(self) -> f64 {
        match self {
            VertexImage::ZeroPoint => 0.0,
            VertexImage::OnePoint => 1.0,
        }
    }
}

/// Restriction of a partition to `{0, s_i, 1, inf}` when it is stable (2|2).
pub(crate) enum FourPoint {
    Zero,
    One,
    Infinity,
}

pub(crate) fn four_point_restriction(p: &StablePartition, i: usize) -> Result<Option<FourPoint>> {
    let host = p.host();
    let four = host.four_point_mask(i)?;
    let (side, _) = p.restrict(four);
    if side.count_ones() != 2 {
        return Ok(None);
    }
    let zero = host.bit(Mark::Zero)?;
    let one = host.bit(Mark::One)?;
    Ok(Some(match side {
        s if s == zero | one => FourPoint::Infinity,
        s if s & zero != 0 => FourPoint::Zero,
        _ => FourPoint::One,
    }))
}

/// Projects a vertex of `B_n` to the 4-point space of `{0, s_i, 1, inf}`.
pub fn vertex_image(v: &Face, i: usize) -> Result<VertexImage> {
    let n = v.host().n();
    if !v.is_vertex() {
        return Err(Error::NotAVertex { codim: v.codim(), n });
    }
    if !(1..=n).contains(&i) {
        return Err(Error::UnknownMark(Mark::S(i).to_string()));
    }
    let mut image = None;
    for p in v.members() {
        let point = match four_point_restriction(p, i)? {
            None => continue,
            Some(FourPoint::Infinity) => return Err(Error::InfinityImage(i)),
            Some(FourPoint::Zero) => VertexImage::ZeroPoint,
            Some(FourPoint::One) => VertexImage::OnePoint,
        };
        match image {
            None => image = Some(point),
            Some(prev) if prev != point => return Err(Error::InconsistentImage(i)),
            Some(_) => {}
        }
    }
    image.ok_or(Error::InteriorImage(i))
}

/// Result of forgetting one mark on a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractedFace {
    pub face: Face,
    /// Members whose mark-holding side fell below two elements.
    pub collapsed: usize,
    /// Members that coincided with another member after contraction.
    pub merged: usize,
}

/// Forgets the movable mark `s` on a vertex of `B_n`, giving a vertex of `B_{n-1}`.
///
/// Exactly one member is lost: it either collapses or becomes equal to
/// another member. Anything else is reported as an anomaly.
pub fn contract_face(v: &Face, s: Mark) -> Result<ContractedFace> {
    let n = v.host().n();
    if n < 2 {
        return Err(Error::Precondition("contraction needs n >= 2 (B_0 is undefined)".into()));
    }
    if !v.is_vertex() {
        return Err(Error::NotAVertex { codim: v.codim(), n });
    }
    let mut survivors = Vec::with_capacity(n);
    let mut collapsed = 0;
    for p in v.members() {
        match p.contract(s)? {
            Contraction::Collapses => collapsed += 1,
            Contraction::Stable(q) => survivors.push(q),
        }
    }
    let before = survivors.len();
    survivors.sort();
    survivors.dedup();
    let merged = before - survivors.len();
    if collapsed + merged != 1 {
        return Err(Error::ContractionAnomaly { collapsed, merged });
    }
    let face = Face::from_members(survivors)?;
    if !face.is_vertex() {
        return Err(Error::ContractionAnomaly { collapsed, merged });
    }
    Ok(ContractedFace { face, collapsed, merged })
}

/// Graphviz rendering of the 1-skeleton: vertices joined when they share an edge face.
pub fn vertex_graph_dot(n: usize) -> Result<String> {
    let verts = vertices(n)?;
    let mut dot = String::new();
    writeln!(dot, "graph B{n} {{").unwrap();
    writeln!(dot, "  node [shape=box, fontsize=10];").unwrap();
    for (i, v) in verts.iter().enumerate() {
        let label: Vec<String> = v.members().iter().map(|p| p.to_string()).collect();
        writeln!(dot, "  v{i} [label=\"{}\"];", label.join("\\n")).unwrap();
    }
    for (i, a) in verts.iter().enumerate() {
        for (j, b) in verts.iter().enumerate().skip(i + 1) {
            let shared = a.members().iter().filter(|p| b.family().contains(p)).count();
            if shared + 1 == n {
                writeln!(dot, "  v{i} -- v{j};").unwrap();
            }
        }
    }
    dot.push_str("}\n");
    Ok(dot)
}
