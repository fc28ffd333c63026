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

//! Small named graph families.

use crate::graph::{GraphError, Multigraph};

/// K_n.
pub fn complete(n: usize) -> Multigraph {
    let edges = (0..n).flat_map(|v| (v + 1..n).map(move |w| (v, w, 1)));
    Multigraph::build(n, edges).expect("complete graph")
}

/// C_n for n ≥ 3.
pub fn cycle(n: usize) -> Multigraph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    Multigraph::build(n, (0..n).map(|v| (v, (v + 1) % n, 1))).expect("cycle")
}

/// P_n, the path on n vertices.
pub fn path(n: usize) -> Multigraph {
    Multigraph::build(n, (1..n).map(|v| (v - 1, v, 1))).expect("path")
}

/// K_{a,b} with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
    let edges = (0..a).flat_map(|v| (a..a + b).map(move |w| (v, w, 1)));
    Multigraph::build(a + b, edges).expect("complete bipartite graph")
}

/// K_{1,leaves} with center 0.
pub fn star(leaves: usize) -> Multigraph {
    complete_bipartite(1, leaves)
}

/// Parses names such as `K4`, `C5`, `P3`, `K3,3`, `S4` (star with 4 leaves)
/// and `E5` (edgeless).
pub fn by_name(name: &str) -> Option<Result<Multigraph, GraphError>> {
    let (family, rest) = name.split_at(name.char_indices().nth(1)?.0);
    let parse = |s: &str| s.parse::<usize>().ok();
    let graph = match family {
        "K" => match rest.split_once(',') {
            Some((a, b)) => complete_bipartite(parse(a)?, parse(b)?),
            None => complete(parse(rest)?),
        },
        "C" => {
            let n = parse(rest)?;
            if n < 3 {
                return None;
            }
            cycle(n)
        }
        "P" => path(parse(rest)?),
        "S" => star(parse(rest)?),
        "E" => return Some(Multigraph::new(parse(rest)?)),
        _ => return None,
    };
    Some(Ok(graph))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families() {
        assert_eq!(complete(4).edge_count(), 6);
        assert_eq!(cycle(5).max_degree(), 2);
        assert_eq!(path(3).edge_count(), 2);
        assert_eq!(complete_bipartite(3, 3).edge_count(), 9);
        assert_eq!(star(3).degree(0), 3);
    }

    #[test]
    fn names() {
        assert_eq!(by_name("C5").unwrap().unwrap(), cycle(5));
        assert_eq!(by_name("K3,3").unwrap().unwrap(), complete_bipartite(3, 3));
        assert_eq!(by_name("E2").unwrap().unwrap().edge_count(), 0);
        assert!(by_name("C2").is_none());
        assert!(by_name("Q3").is_none());
        assert!(by_name("").is_none());
    }
}
