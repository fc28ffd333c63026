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

//! Exhaustive generation of small multigraphs up to isomorphism.
//!
//! Graphs on `n` vertices are produced by attaching a new vertex to every
//! graph on `n - 1` vertices in every possible way and keeping one graph per
//! canonical form. The canonical form is the lexicographically least
//! multiplicity code over all vertex orders compatible with a color
//! refinement partition, so it is exact (not a hash).

use std::collections::BTreeMap;

use crate::graph::Multigraph;

/// Upper-triangle multiplicities in column order: `(0,1), (0,2), (1,2),
/// (0,3), ...` under the vertex order `perm`. The search builds the same
/// code incrementally; this is its reference form.
#[cfg(test)]
fn code_under(g: &Multigraph, perm: &[usize]) -> Vec<u8> {
    let n = perm.len();
    let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            code.push(g.mult(perm[i], perm[j]) as u8);
        }
    }
    code
}

/// Stable vertex colors from iterated refinement by neighbor multisets.
fn refine(g: &Multigraph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = vec![0; n];
    loop {
        let sigs: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u32)> = g
                    .neighbors(v)
                    .iter()
                    .map(|w| (color[w], g.mult(v, w)))
                    .collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<(usize, u32)>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).unwrap())
            .collect();
        let classes_before = {
            let mut c = color.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        let done = distinct.len() == classes_before;
        color = next;
        if done {
            return color;
        }
    }
}

struct Canon<'a> {
    g: &'a Multigraph,
    cell_of_position: Vec<usize>,
    color: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<Vec<u8>>,
}

impl Canon<'_> {
    /// `cmp` is the comparison of the current prefix against `best`.
    fn search(&mut self, j: usize, code: &mut Vec<u8>, mut less: bool) {
        let n = self.g.n();
        if j == n {
            if less || self.best.is_none() {
                self.best = Some(code.clone());
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.color[v] != self.cell_of_position[j] {
                continue;
            }
            let start = code.len();
            for i in 0..j {
                code.push(self.g.mult(self.perm[i], v) as u8);
            }
            let mut branch_less = less;
            if !less {
                if let Some(best) = &self.best {
                    match code[start..].cmp(&best[start..start + j]) {
                        std::cmp::Ordering::Greater => {
                            code.truncate(start);
                            continue;
                        }
                        std::cmp::Ordering::Less => branch_less = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            self.used[v] = true;
            self.perm.push(v);
            self.search(j + 1, code, branch_less);
            self.perm.pop();
            self.used[v] = false;
            code.truncate(start);
            if less {
                // `best` was replaced below this branch; compare afresh.
                less = false;
            }
        }
    }
}

/// The canonical code of `g`: equal for two graphs iff they are isomorphic.
pub fn canonical_code(g: &Multigraph) -> Vec<u8> {
    let n = g.n();
    let color = refine(g);
    let mut cell_of_position = color.clone();
    cell_of_position.sort_unstable();
    let mut canon = Canon {
        g,
        cell_of_position,
        color,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    canon.search(0, &mut Vec::new(), false);
    let mut code = vec![n as u8];
    code.extend(canon.best.unwrap_or_default());
    code
}

fn from_code(n: usize, code: &[u8]) -> Multigraph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if code[idx] > 0 {
                edges.push((i, j, code[idx] as u32));
            }
            idx += 1;
        }
    }
    Multigraph::build(n, edges).expect("valid code")
}

/// The canonical representative of the isomorphism class of `g`.
pub fn canonical_form(g: &Multigraph) -> Multigraph {
    let code = canonical_code(g);
    from_code(g.n(), &code[1..])
}

/// All multigraphs on exactly `n` vertices with multiplicities at most
/// `max_mult`, one per isomorphism class, in canonical-code order.
pub fn nonisomorphic_multigraphs(n: usize, max_mult: u32) -> Vec<Multigraph> {
    let mut layer: Vec<Multigraph> = vec![Multigraph::new(0).unwrap()];
    for size in 1..=n {
        let mut next: BTreeMap<Vec<u8>, Multigraph> = BTreeMap::new();
        let prev = size - 1;
        let choices = (max_mult as u64 + 1).pow(prev as u32);
        for g in &layer {
            for mut pick in 0..choices {
                let mut edges: Vec<(usize, usize, u32)> = g.pairs().collect();
                for v in 0..prev {
                    let m = (pick % (max_mult as u64 + 1)) as u32;
                    pick /= max_mult as u64 + 1;
                    if m > 0 {
                        edges.push((v, prev, m));
                    }
                }
                let h = Multigraph::build(size, edges).unwrap();
                next.entry(canonical_code(&h)).or_insert_with(|| canonical_form(&h));
            }
        }
        layer = next.into_values().collect();
    }
    layer
}

/// All simple graphs on exactly `n` vertices up to isomorphism.
pub fn nonisomorphic_simple_graphs(n: usize) -> Vec<Multigraph> {
    nonisomorphic_multigraphs(n, 1)
}
