// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Partial proper edge-colorings of multigraphs and the Kempe-chain
//! machinery built on them.
//!
//! A [`PartialColoring`] owns a copy of its host multigraph and assigns to
//! some of the host's edge instances a color in `1..=k`. The colored
//! instances form the subgraph `M`; everything else is uncolored.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeInstance, Multigraph, VertexSet};

mod augment;
mod bounds;
mod exact;
mod maximal;

pub use augment::try_extend;
pub use bounds::{
    check_star_forest_hypothesis, color_forest_bound, color_ore, color_vizing, BoundColoring,
    Telemetry,
};
pub use exact::{chromatic_index, decide_k_colorable, decide_with_mask};
pub use maximal::{
    all_maximal_subgraphs, greedy_augmented_subgraph, maximal_colorable_subgraph, shuffled_order,
    MaximalSubgraphCertificate,
};

pub type Color = u32;

/// Largest supported palette; color sets are 64-bit masks with bit 0 unused.
pub const MAX_COLORS: u32 = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("palette size {0} outside 1..={MAX_COLORS}")]
    BadPalette(u32),
    #[error("color {color} outside 1..={k}")]
    ColorOutOfRange { color: Color, k: u32 },
    #[error("edge {0} is not an edge of the host graph")]
    UnknownEdge(EdgeInstance),
    #[error("Kempe colors must differ")]
    SameColors,
    #[error("vertex {0} sees both Kempe colors and is interior to the chain")]
    InteriorStart(usize),
    #[error("path is not a maximal alternating path of the current coloring")]
    NotMaximal,
    #[error("coloring is not proper")]
    Improper,
    #[error("M + {0} is k-edge-colorable, so M is not maximal")]
    Augmentable(EdgeInstance),
    #[error("edge order must list every edge instance exactly once")]
    BadOrder,
    #[error("graph has no edges")]
    NoEdges,
    #[error("hypothesis violated: {0}")]
    Hypothesis(&'static str),
    #[error("exact search found no {k}-edge-coloring, contradicting the {bound} bound")]
    BoundFailed { k: u32, bound: &'static str },
}

/// A subset of the colors `1..=63`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(u64);

impl ColorSet {
    pub const fn empty() -> Self {
        ColorSet(0)
    }

    /// `[k] = {1, ..., k}`.
    pub fn palette(k: u32) -> Self {
        debug_assert!(k <= MAX_COLORS);
        ColorSet(((1u64 << k) - 1) << 1)
    }

    pub fn singleton(c: Color) -> Self {
        ColorSet(1u64 << c)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, c: Color) -> bool {
        c < 64 && self.0 >> c & 1 == 1
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1u64 << c;
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1u64 << c);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        ColorSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        ColorSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        ColorSet(self.0 & !o.0)
    }

    pub fn is_disjoint(self, o: Self) -> bool {
        self.0 & o.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<Color> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let c = bits.trailing_zeros();
                bits &= bits - 1;
                Some(c)
            }
        })
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::empty();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ColorSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<Color>::deserialize(d)?;
        if items.iter().any(|&c| c == 0 || c > MAX_COLORS) {
            return Err(serde::de::Error::custom("color out of range"));
        }
        Ok(items.into_iter().collect())
    }
}

/// A (not necessarily proper) assignment of colors in `[k]` to some edge
/// instances of a host multigraph.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialColoring {
    host: Multigraph,
    k: u32,
    slots: Vec<Option<Color>>,
}

impl fmt::Debug for PartialColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartialColoring")
            .field("k", &self.k)
            .field("host", &self.host)
            .field(
                "colored",
                &self.colored_edges().map(|(e, c)| (e.to_string(), c)).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PartialColoring {
    /// The empty coloring of `host` with palette `[k]`.
    pub fn empty(host: Multigraph, k: u32) -> Result<Self, ColoringError> {
        if k == 0 || k > MAX_COLORS {
            return Err(ColoringError::BadPalette(k));
        }
        let slots = vec![None; host.edge_count()];
        Ok(PartialColoring { host, k, slots })
    }

    /// Builds a coloring from explicit assignments without checking
    /// properness; use [`is_proper`](Self::is_proper) for that.
    pub fn from_assignments<I>(host: Multigraph, k: u32, colors: I) -> Result<Self, ColoringError>
    where
        I: IntoIterator<Item = (EdgeInstance, Color)>,
    {
        let mut c = Self::empty(host, k)?;
        for (e, color) in colors {
            let e = EdgeInstance::new(e.v, e.w, e.copy);
            let idx = c.host.edge_index(e).ok_or(ColoringError::UnknownEdge(e))?;
            if color == 0 || color > k {
                return Err(ColoringError::ColorOutOfRange { color, k });
            }
            c.slots[idx] = Some(color);
        }
        Ok(c)
    }

    pub(crate) fn from_slots(host: Multigraph, k: u32, slots: Vec<Option<Color>>) -> Self {
        debug_assert_eq!(slots.len(), host.edge_count());
        PartialColoring { host, k, slots }
    }

    pub fn host(&self) -> &Multigraph {
        &self.host
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub(crate) fn slots(&self) -> &[Option<Color>] {
        &self.slots
    }

    pub fn color_of(&self, e: EdgeInstance) -> Option<Color> {
        self.host.edge_index(e).and_then(|i| self.slots[i])
    }

    /// Assigns or clears the color of an edge, without a properness check.
    pub(crate) fn set(&mut self, e: EdgeInstance, c: Option<Color>) {
        let idx = self.host.edge_index(e).expect("edge of host");
        self.slots[idx] = c;
    }

    /// A copy with one more assignment; rejected if it breaks properness.
    pub fn with_color(&self, e: EdgeInstance, c: Color) -> Result<Self, ColoringError> {
        let e = EdgeInstance::new(e.v, e.w, e.copy);
        if !self.host.contains_edge(e) {
            return Err(ColoringError::UnknownEdge(e));
        }
        if c == 0 || c > self.k {
            return Err(ColoringError::ColorOutOfRange { color: c, k: self.k });
        }
        let mut next = self.clone();
        next.set(e, None);
        if next.present_at(e.v).contains(c) || next.present_at(e.w).contains(c) {
            return Err(ColoringError::Improper);
        }
        next.set(e, Some(c));
        Ok(next)
    }

    pub fn colored_edges(&self) -> impl Iterator<Item = (EdgeInstance, Color)> + '_ {
        self.host
            .edges()
            .zip(self.slots.iter())
            .filter_map(|(e, c)| c.map(|c| (e, c)))
    }

    pub fn uncolored_edges(&self) -> impl Iterator<Item = EdgeInstance> + '_ {
        self.host
            .edges()
            .zip(self.slots.iter())
            .filter_map(|(e, c)| c.is_none().then_some(e))
    }

    /// |E(M)|.
    pub fn colored_count(&self) -> usize {
        self.slots.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.slots.iter().all(Option::is_some)
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        self.slots.iter().flatten().copied().collect::<ColorSet>().len()
    }

    /// Colored instances incident to `v`, with their colors.
    pub fn colored_at(&self, v: usize) -> impl Iterator<Item = (EdgeInstance, Color)> + '_ {
        let n = self.host.n();
        (0..n).flat_map(move |w| {
            let m = self.host.mult(v, w);
            let base = if m > 0 { self.host.pair_offset(v, w) } else { 0 };
            (0..m).filter_map(move |copy| {
                self.slots[base + copy as usize].map(|c| (EdgeInstance::new(v, w, copy), c))
            })
        })
    }

    /// ψ(v): colors on edges incident to `v`.
    pub fn present_at(&self, v: usize) -> ColorSet {
        self.colored_at(v).map(|(_, c)| c).collect()
    }

    /// O(v) = [k] \ ψ(v).
    pub fn missing_at(&self, v: usize) -> ColorSet {
        ColorSet::palette(self.k).difference(self.present_at(v))
    }

    /// ψ(w, z): colors on the edges joining `w` and `z`.
    pub fn colors_between(&self, w: usize, z: usize) -> ColorSet {
        if w == z || self.host.mult(w, z) == 0 {
            return ColorSet::empty();
        }
        let base = self.host.pair_offset(w, z);
        (0..self.host.mult(w, z) as usize)
            .filter_map(|i| self.slots[base + i])
            .collect()
    }

    /// d_M(v).
    pub fn degree_in(&self, v: usize) -> u32 {
        self.colored_at(v).count() as u32
    }

    /// μ_M(v, w).
    pub fn mult_in(&self, v: usize, w: usize) -> u32 {
        if v == w || self.host.mult(v, w) == 0 {
            return 0;
        }
        let base = self.host.pair_offset(v, w);
        (0..self.host.mult(v, w) as usize)
            .filter(|&i| self.slots[base + i].is_some())
            .count() as u32
    }

    /// N_M(v).
    pub fn neighbors_in(&self, v: usize) -> VertexSet {
        (0..self.host.n()).filter(|&w| self.mult_in(v, w) > 0).collect()
    }

    /// The colored subgraph M as a multigraph on the host vertex set.
    pub fn colored_subgraph(&self) -> Multigraph {
        let keep: Vec<bool> = self.slots.iter().map(Option::is_some).collect();
        self.host.spanning_subgraph(&keep)
    }

    /// Some colored edge at `v` carrying color `c`.
    pub fn edge_with_color(&self, v: usize, c: Color) -> Option<EdgeInstance> {
        self.colored_at(v).find(|&(_, x)| x == c).map(|(e, _)| e)
    }

    /// True iff no two distinct colored instances sharing an endpoint carry
    /// the same color (parallel instances share both).
    pub fn is_proper(&self) -> bool {
        (0..self.host.n()).all(|v| {
            let mut seen = ColorSet::empty();
            self.colored_at(v).all(|(_, c)| {
                let fresh = !seen.contains(c);
                seen.insert(c);
                fresh
            })
        })
    }

    /// Re-hosts the coloring on `host`, keeping the color of every instance
    /// that exists in both graphs.
    pub fn rehost(&self, host: &Multigraph) -> Self {
        let slots = host.edges().map(|e| self.color_of(e)).collect();
        PartialColoring {
            host: host.clone(),
            k: self.k,
            slots,
        }
    }

    /// Same assignment with a larger palette.
    pub fn with_palette(&self, k: u32) -> Result<Self, ColoringError> {
        if k == 0 || k > MAX_COLORS {
            return Err(ColoringError::BadPalette(k));
        }
        if let Some(&c) = self.slots.iter().flatten().find(|&&c| c > k) {
            return Err(ColoringError::ColorOutOfRange { color: c, k });
        }
        Ok(PartialColoring {
            host: self.host.clone(),
            k,
            slots: self.slots.clone(),
        })
    }
}

/// A path in M whose edges alternate between colors `alpha` and `beta`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KempePath {
    pub alpha: Color,
    pub beta: Color,
    /// Vertices in path order; the first is the start vertex.
    pub vertices: Vec<usize>,
    pub edges: Vec<EdgeInstance>,
    /// False when cut short by [`truncate_at`](Self::truncate_at).
    pub maximal: bool,
}

impl KempePath {
    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("path has a start vertex")
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The prefix ending at the first visit to `v`, if the path visits it.
    pub fn truncate_at(&self, v: usize) -> Option<KempePath> {
        let pos = self.vertices.iter().position(|&x| x == v)?;
        Some(KempePath {
            alpha: self.alpha,
            beta: self.beta,
            vertices: self.vertices[..=pos].to_vec(),
            edges: self.edges[..pos].to_vec(),
            maximal: self.maximal && pos + 1 == self.vertices.len(),
        })
    }
}

/// The unique maximal [α, β]-path starting at `v`.
///
/// `v` must see at most one of the two colors; a vertex missing both yields
/// the length-0 path.
pub fn kempe_path_from(
    c: &PartialColoring,
    v: usize,
    alpha: Color,
    beta: Color,
) -> Result<KempePath, ColoringError> {
    if alpha == beta {
        return Err(ColoringError::SameColors);
    }
    for x in [alpha, beta] {
        if x == 0 || x > c.k() {
            return Err(ColoringError::ColorOutOfRange { color: x, k: c.k() });
        }
    }
    let here = c.present_at(v);
    if here.contains(alpha) && here.contains(beta) {
        return Err(ColoringError::InteriorStart(v));
    }
    let mut next = if here.contains(alpha) { alpha } else { beta };
    let mut vertices = vec![v];
    let mut edges = Vec::new();
    let mut cur = v;
    // A proper coloring cannot revisit an edge; the bound guards improper input.
    while edges.len() <= c.colored_count() {
        let Some(e) = c.edge_with_color(cur, next) else {
            break;
        };
        if edges.contains(&e) {
            break;
        }
        edges.push(e);
        cur = e.other(cur);
        vertices.push(cur);
        next = if next == alpha { beta } else { alpha };
    }
    Ok(KempePath {
        alpha,
        beta,
        vertices,
        edges,
        maximal: true,
    })
}

/// Exchanges α and β along a maximal alternating path.
pub fn kempe_swap(c: &PartialColoring, p: &KempePath) -> Result<PartialColoring, ColoringError> {
    if !p.maximal {
        return Err(ColoringError::NotMaximal);
    }
    let fresh = kempe_path_from(c, p.start(), p.alpha, p.beta)?;
    if fresh.edges != p.edges {
        return Err(ColoringError::NotMaximal);
    }
    let mut next = c.clone();
    swap_in_place(&mut next, p);
    Ok(next)
}

pub(crate) fn swap_in_place(c: &mut PartialColoring, p: &KempePath) {
    for &e in &p.edges {
        let old = c.color_of(e).expect("path edge is colored");
        let new = if old == p.alpha { p.beta } else { p.alpha };
        c.set(e, Some(new));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn e(v: usize, w: usize, copy: u32) -> EdgeInstance {
        EdgeInstance::new(v, w, copy)
    }

    fn rainbow_k3() -> PartialColoring {
        PartialColoring::from_assignments(
            named::complete(3),
            3,
            [(e(0, 1, 0), 1), (e(1, 2, 0), 2), (e(0, 2, 0), 3)],
        )
        .unwrap()
    }

    fn p3_12() -> PartialColoring {
        PartialColoring::from_assignments(named::path(3), 2, [(e(0, 1, 0), 1), (e(1, 2, 0), 2)])
            .unwrap()
    }

    #[test]
    fn properness_examples() {
        assert!(PartialColoring::empty(named::complete(3), 2).unwrap().is_proper());
        assert!(rainbow_k3().is_proper());
        let g = Multigraph::build(2, [(0, 1, 2)]).unwrap();
        let bad =
            PartialColoring::from_assignments(g, 2, [(e(0, 1, 0), 1), (e(0, 1, 1), 1)]).unwrap();
        assert!(!bad.is_proper());
    }

    #[test]
    fn missing_color_examples() {
        let c = PartialColoring::empty(Multigraph::new(1).unwrap(), 3).unwrap();
        assert_eq!(c.missing_at(0), ColorSet::palette(3));
        let c = PartialColoring::from_assignments(
            named::path(3),
            3,
            [(e(0, 1, 0), 1), (e(1, 2, 0), 2)],
        )
        .unwrap();
        assert_eq!(c.missing_at(1), ColorSet::singleton(3));
        assert!(rainbow_k3().with_palette(2).is_err());
        let c = p3_12();
        assert!(c.missing_at(1).is_empty());
        assert_eq!(c.missing_at(1).len() as u32, c.k() - c.degree_in(1));
    }

    #[test]
    fn accessors_on_parallel_edges() {
        let g = Multigraph::build(3, [(0, 1, 2), (1, 2, 1)]).unwrap();
        let c = PartialColoring::from_assignments(g, 3, [(e(0, 1, 1), 2), (e(1, 2, 0), 1)]).unwrap();
        assert_eq!(c.mult_in(0, 1), 1);
        assert_eq!(c.colors_between(1, 0), ColorSet::singleton(2));
        assert_eq!(c.degree_in(1), 2);
        assert_eq!(c.uncolored_edges().collect::<Vec<_>>(), vec![e(0, 1, 0)]);
        assert_eq!(c.neighbors_in(1), [0, 2].into_iter().collect());
        assert_eq!(c.colored_subgraph().mult(0, 1), 1);
    }

    #[test]
    fn kempe_path_examples() {
        let c = p3_12();
        let p = kempe_path_from(&c, 0, 1, 2).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        let p = kempe_path_from(&rainbow_k3().with_palette(4).unwrap(), 0, 4, 2).unwrap();
        assert!(p.is_empty());
        // 0 misses 2; the (1,2) chain runs 0 -1- 1 -2- 2 and stops since 2 has no color 1.
        let p = kempe_path_from(&rainbow_k3(), 0, 1, 2).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        assert_eq!(p.len(), 2);
        assert_eq!(
            kempe_path_from(&c, 1, 1, 2).unwrap_err(),
            ColoringError::InteriorStart(1)
        );
        assert_eq!(kempe_path_from(&c, 0, 1, 1).unwrap_err(), ColoringError::SameColors);
    }

    #[test]
    fn kempe_swap_examples() {
        let c = p3_12();
        let empty = kempe_path_from(&c.with_palette(4).unwrap(), 0, 3, 4).unwrap();
        assert_eq!(kempe_swap(&c.with_palette(4).unwrap(), &empty).unwrap(), c.with_palette(4).unwrap());
        let p = kempe_path_from(&c, 0, 1, 2).unwrap();
        let swapped = kempe_swap(&c, &p).unwrap();
        assert_eq!(swapped.color_of(e(0, 1, 0)), Some(2));
        assert_eq!(swapped.color_of(e(1, 2, 0)), Some(1));
        assert!(swapped.is_proper());
        let back = kempe_swap(&swapped, &kempe_path_from(&swapped, 0, 1, 2).unwrap()).unwrap();
        assert_eq!(back, c);
        let cut = p.truncate_at(1).unwrap();
        assert!(!cut.maximal);
        assert_eq!(kempe_swap(&c, &cut).unwrap_err(), ColoringError::NotMaximal);
    }

    #[test]
    fn with_color_rejects_conflicts() {
        let c = PartialColoring::empty(named::path(3), 2).unwrap();
        let c = c.with_color(e(0, 1, 0), 1).unwrap();
        assert_eq!(c.with_color(e(1, 2, 0), 1).unwrap_err(), ColoringError::Improper);
        assert!(c.with_color(e(0, 2, 0), 2).is_err());
    }

    #[test]
    fn color_set_basics() {
        let s = ColorSet::palette(3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(s.first(), Some(1));
        assert_eq!(format!("{}", ColorSet::singleton(2)), "{2}");
    }
}
