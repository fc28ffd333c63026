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

//! τ and ν of `I_k ∨ H` for triangle-free `H`, from `φ_k(H)` and
//! `α'_k(H)`, cross-checked against the general oracles and through the
//! explicit constructions that turn packings into colorings and covers into
//! vertex sets (and back).

use std::collections::HashSet;

use serde::Serialize;

use super::triangles::{nu_exact, tau_exact, triangles};
use super::{alpha_prime_k, is_triangle_free, phi_k, phi_of, TuzaError};
use crate::coloring::{decide_k_colorable, PartialColoring};
use crate::graph::{join, EdgeInstance, Multigraph, VertexSet};

/// `I_k ∨ H` with `H` simple and triangle-free. `H` keeps its labels and
/// the independent vertices are `|V(H)|..|V(H)| + k`.
#[derive(Debug, Clone)]
pub struct TuzaInstance {
    pub k: u32,
    pub h: Multigraph,
    pub g: Multigraph,
}

impl TuzaInstance {
    pub fn new(k: u32, h: Multigraph) -> Result<Self, TuzaError> {
        super::check_simple(&h, k)?;
        if !is_triangle_free(&h) {
            return Err(TuzaError::NotTriangleFree);
        }
        let g = join(k as usize, &h)?;
        Ok(TuzaInstance { k, h, g })
    }

    fn apex(&self, i: u32) -> usize {
        self.h.n() + i as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuzaReport {
    pub k: u32,
    pub phi: i64,
    pub k_optimal_set: VertexSet,
    pub alpha: usize,
    pub alpha_witness: Vec<EdgeInstance>,
    pub tau: i64,
    pub nu: usize,
    /// τ ≤ 2ν.
    pub tau_le_2nu: bool,
}

/// τ and ν of the join from `φ_k(H)` and `α'_k(H)`.
pub fn tau_nu_join(inst: &TuzaInstance) -> Result<TuzaReport, TuzaError> {
    let (phi, witness) = phi_k(&inst.h, inst.k)?;
    let (alpha, alpha_witness) = alpha_prime_k(&inst.h, inst.k)?;
    let tau = inst.k as i64 * inst.h.n() as i64 - phi;
    Ok(TuzaReport {
        k: inst.k,
        phi,
        k_optimal_set: witness.set,
        alpha,
        alpha_witness,
        tau,
        nu: alpha,
        tau_le_2nu: tau <= 2 * alpha as i64,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinValidation {
    pub report: TuzaReport,
    pub tau_oracle: usize,
    pub nu_oracle: usize,
    /// Triangle count equals k·|E(H)|.
    pub triangle_count_ok: bool,
    pub tau_matches: bool,
    pub nu_matches: bool,
    /// A maximum k-colorable subgraph of H yields α'_k edge-disjoint triangles.
    pub packing_from_coloring: bool,
    /// An optimal packing yields a k-colorable subgraph of H of size ν.
    pub coloring_from_packing: bool,
    /// A k-optimal set yields a cover of size k|V(H)| − φ_k.
    pub cover_from_set: bool,
    /// An optimal cover, made uniform over I_k, yields a set D with
    /// k|V(H)| − φ_k(D) ≤ τ.
    pub set_from_cover: bool,
    /// ν ≤ τ ≤ 3ν for the oracle values.
    pub oracle_sandwich: bool,
}

impl JoinValidation {
    pub fn all_ok(&self) -> bool {
        self.triangle_count_ok
            && self.tau_matches
            && self.nu_matches
            && self.packing_from_coloring
            && self.coloring_from_packing
            && self.cover_from_set
            && self.set_from_cover
            && self.oracle_sandwich
            && self.report.tau_le_2nu
    }
}

fn edge_key(v: usize, w: usize) -> (usize, usize) {
    (v.min(w), v.max(w))
}

fn is_cover(g: &Multigraph, x: &HashSet<(usize, usize)>) -> bool {
    triangles(g).iter().all(|&[a, b, c]| {
        x.contains(&(a, b)) || x.contains(&(a, c)) || x.contains(&(b, c))
    })
}

fn packing_from_coloring(inst: &TuzaInstance, witness: &[EdgeInstance]) -> bool {
    let keep: Vec<bool> = inst.h.edges().map(|e| witness.contains(&e)).collect();
    let sub = inst.h.spanning_subgraph(&keep);
    let Some(coloring) = decide_k_colorable(&sub, inst.k) else {
        return false;
    };
    let mut used = HashSet::new();
    let mut count = 0;
    for (e, color) in coloring.colored_edges() {
        let apex = inst.apex(color - 1);
        for pair in [edge_key(e.v, e.w), edge_key(apex, e.v), edge_key(apex, e.w)] {
            if inst.g.mult(pair.0, pair.1) == 0 || !used.insert(pair) {
                return false;
            }
        }
        count += 1;
    }
    count == witness.len()
}

fn coloring_from_packing(inst: &TuzaInstance, family: &[[usize; 3]]) -> bool {
    let hn = inst.h.n();
    let mut colors = Vec::new();
    for &tri in family {
        let apexes: Vec<usize> = tri.iter().copied().filter(|&v| v >= hn).collect();
        let base: Vec<usize> = tri.iter().copied().filter(|&v| v < hn).collect();
        if apexes.len() != 1 || base.len() != 2 {
            return false;
        }
        let color = (apexes[0] - hn) as u32 + 1;
        colors.push((EdgeInstance::new(base[0], base[1], 0), color));
    }
    match PartialColoring::from_assignments(inst.h.clone(), inst.k, colors) {
        Ok(c) => c.is_proper() && c.colored_count() == family.len(),
        Err(_) => false,
    }
}

fn cover_from_set(inst: &TuzaInstance, d: VertexSet, expected: i64) -> bool {
    let mut x: HashSet<(usize, usize)> = HashSet::new();
    for (v, w, _) in inst.h.pairs() {
        if d.contains(v) && d.contains(w) {
            x.insert((v, w));
        }
    }
    for i in 0..inst.k {
        for w in inst.h.vertices().difference(d).iter() {
            x.insert(edge_key(w, inst.apex(i)));
        }
    }
    x.len() as i64 == expected && is_cover(&inst.g, &x)
}

fn set_from_cover(inst: &TuzaInstance, cover: &[(usize, usize)]) -> bool {
    let hn = inst.h.n();
    let apex_sets: Vec<VertexSet> = (0..inst.k)
        .map(|i| {
            let a = inst.apex(i);
            cover
                .iter()
                .filter(|&&(v, w)| v == a || w == a)
                .map(|&(v, w)| if v == a { w } else { v })
                .collect()
        })
        .collect();
    let star = (0..inst.k as usize)
        .min_by_key(|&i| (apex_sets[i].len(), i))
        .expect("k ≥ 1");
    let c_star = apex_sets[star];
    let mut x1: HashSet<(usize, usize)> = cover
        .iter()
        .copied()
        .filter(|&(v, w)| v < hn && w < hn)
        .collect();
    for i in 0..inst.k {
        for w in c_star.iter() {
            x1.insert(edge_key(w, inst.apex(i)));
        }
    }
    let d = inst.h.vertices().difference(c_star);
    let bound = inst.k as i64 * hn as i64 - phi_of(&inst.h, inst.k, d);
    is_cover(&inst.g, &x1) && x1.len() <= cover.len() && bound <= x1.len() as i64
}

/// Formula values, oracle values, and all four constructions.
pub fn validate_join(inst: &TuzaInstance) -> Result<JoinValidation, TuzaError> {
    let report = tau_nu_join(inst)?;
    let (tau_oracle, cover) = tau_exact(&inst.g)?;
    let (nu_oracle, family) = nu_exact(&inst.g)?;
    let triangle_count_ok = triangles(&inst.g).len() == inst.k as usize * inst.h.edge_count();
    Ok(JoinValidation {
        tau_matches: report.tau == tau_oracle as i64,
        nu_matches: report.nu == nu_oracle,
        triangle_count_ok,
        packing_from_coloring: packing_from_coloring(inst, &report.alpha_witness),
        coloring_from_packing: coloring_from_packing(inst, &family),
        cover_from_set: cover_from_set(inst, report.k_optimal_set, report.tau),
        set_from_cover: set_from_cover(inst, &cover),
        oracle_sandwich: nu_oracle <= tau_oracle && tau_oracle <= 3 * nu_oracle,
        tau_oracle,
        nu_oracle,
        report,
    })
}
