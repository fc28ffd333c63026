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

//! Extending a proper partial coloring by one edge with multi-fans and
//! Kempe swaps.
//!
//! A multi-fan at `x` for the uncolored edge `e0 = x y0` is a sequence of
//! distinct edges `e0, e1, ..., ep` at `x` where the color of each `ei`
//! (i ≥ 1) is missing at the far end of some earlier edge. When a color is
//! missing at both `x` and a fan vertex, rotating colors back along the
//! predecessor chain colors `e0`. When two distinct fan vertices miss a
//! common color, an [α, β] swap away from `x` creates that situation.
//! None of this is complete on its own, so callers fall back to exact search.

use super::{kempe_path_from, swap_in_place, ColorSet, PartialColoring};
use crate::graph::EdgeInstance;

struct FanEntry {
    vertex: usize,
    edge: EdgeInstance,
    pred: usize,
}

/// Tries to color the uncolored edge `e` without exact search, recoloring
/// other edges of `M` as needed. On failure `c` is left unchanged.
pub fn try_extend(c: &mut PartialColoring, e: EdgeInstance) -> bool {
    debug_assert!(c.color_of(e).is_none());
    if c.missing_at(e.v).is_empty() || c.missing_at(e.w).is_empty() {
        return false;
    }
    if let Some(col) = c.missing_at(e.v).intersection(c.missing_at(e.w)).first() {
        c.set(e, Some(col));
        return true;
    }
    for x in [e.v, e.w] {
        let mut trial = c.clone();
        if fan_augment(&mut trial, e, x) {
            *c = trial;
            return true;
        }
    }
    // One Kempe swap at an endpoint, then the fan again.
    let k = c.k();
    for x in [e.v, e.w] {
        for alpha in c.missing_at(x).iter() {
            for beta in 1..=k {
                if beta == alpha {
                    continue;
                }
                let Ok(p) = kempe_path_from(c, x, alpha, beta) else {
                    continue;
                };
                if p.is_empty() {
                    continue;
                }
                let mut trial = c.clone();
                swap_in_place(&mut trial, &p);
                if let Some(col) = trial
                    .missing_at(e.v)
                    .intersection(trial.missing_at(e.w))
                    .first()
                {
                    trial.set(e, Some(col));
                    *c = trial;
                    return true;
                }
                for x2 in [e.v, e.w] {
                    let mut t2 = trial.clone();
                    if fan_augment(&mut t2, e, x2) {
                        *c = t2;
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn fan_augment(c: &mut PartialColoring, e0: EdgeInstance, x: usize) -> bool {
    let budget = 2 * c.host().edge_count() + 8;
    for _ in 0..budget {
        let missing_x = c.missing_at(x);
        let Some(alpha) = missing_x.first() else {
            return false;
        };
        let fan = build_fan(c, e0, x);

        for (i, entry) in fan.iter().enumerate() {
            if let Some(col) = missing_x.intersection(c.missing_at(entry.vertex)).first() {
                return shift(c, &fan, i, col);
            }
        }

        // Two distinct fan vertices missing a common color.
        let mut pick = None;
        'outer: for j in 1..fan.len() {
            let oj = c.missing_at(fan[j].vertex);
            for i in 0..j {
                if fan[i].vertex == fan[j].vertex {
                    continue;
                }
                if let Some(beta) = oj.intersection(c.missing_at(fan[i].vertex)).first() {
                    pick = Some((fan[i].vertex, fan[j].vertex, beta));
                    break 'outer;
                }
            }
        }
        let Some((yi, yj, beta)) = pick else {
            return false;
        };
        let Ok(px) = kempe_path_from(c, x, alpha, beta) else {
            return false;
        };
        let target = if px.end() != yj { yj } else { yi };
        let Ok(pt) = kempe_path_from(c, target, alpha, beta) else {
            return false;
        };
        if pt.vertices.contains(&x) {
            return false;
        }
        swap_in_place(c, &pt);
    }
    false
}

fn build_fan(c: &PartialColoring, e0: EdgeInstance, x: usize) -> Vec<FanEntry> {
    let k = c.k();
    let mut fan = vec![FanEntry {
        vertex: e0.other(x),
        edge: e0,
        pred: 0,
    }];
    // owner[col] = earliest fan entry whose vertex misses col.
    let mut owner: Vec<Option<usize>> = vec![None; k as usize + 1];
    fn claim(owner: &mut [Option<usize>], set: ColorSet, idx: usize) {
        for col in set.iter() {
            owner[col as usize].get_or_insert(idx);
        }
    }
    claim(&mut owner, c.missing_at(fan[0].vertex), 0);
    let at_x: Vec<_> = c.colored_at(x).collect();
    let mut taken = vec![false; at_x.len()];
    loop {
        let next = at_x
            .iter()
            .enumerate()
            .find(|&(i, &(_, col))| !taken[i] && owner[col as usize].is_some());
        let Some((i, &(edge, col))) = next else {
            break;
        };
        taken[i] = true;
        let idx = fan.len();
        let vertex = edge.other(x);
        fan.push(FanEntry {
            vertex,
            edge,
            pred: owner[col as usize].unwrap(),
        });
        claim(&mut owner, c.missing_at(vertex), idx);
    }
    fan
}

/// Rotates colors along the predecessor chain ending at fan entry `i`, which
/// receives `col` (missing at both `x` and its far end).
fn shift(c: &mut PartialColoring, fan: &[FanEntry], i: usize, col: u32) -> bool {
    let mut chain = vec![i];
    while *chain.last().unwrap() != 0 {
        let p = fan[*chain.last().unwrap()].pred;
        chain.push(p);
    }
    chain.reverse();
    let before = c.clone();
    let new_colors: Vec<(EdgeInstance, u32)> = chain
        .iter()
        .enumerate()
        .map(|(s, &idx)| {
            let color = match chain.get(s + 1) {
                Some(&next) => before.color_of(fan[next].edge).expect("fan edge is colored"),
                None => col,
            };
            (fan[idx].edge, color)
        })
        .collect();
    for (edge, color) in new_colors {
        c.set(edge, Some(color));
    }
    if c.is_proper() {
        true
    } else {
        *c = before;
        false
    }
}
