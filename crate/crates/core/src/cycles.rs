//! The snake graph, simple signed cycles and the cycle action on patterns.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::pattern::{GtPattern, PatternError};
use crate::snakes::{mixed_tiles, sign_sort, sort_mixed_tiles, Sign, SnakeError, SnakePartition, Signs};

/// One snake as an undirected edge between its start and end rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub snake: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SnakeGraph {
    /// Vertices are the rows `1..=m`; row `0` can appear only for snakes
    /// reaching the bottom row, which canonical partitions never produce.
    pub m: usize,
    pub edges: Vec<GraphEdge>,
}

impl SnakeGraph {
    pub fn new(sp: &SnakePartition) -> Self {
        let (m, _) = sp.dims();
        let edges = sp
            .snakes()
            .iter()
            .map(|s| GraphEdge {
                snake: s.id,
                start: s.start_row(),
                end: s.end_row(),
            })
            .collect();
        Self { m, edges }
    }

    pub fn edge(&self, snake: usize) -> Option<&GraphEdge> {
        self.edges.iter().find(|e| e.snake == snake)
    }

    /// Degree of every row `0..=m`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out = vec![0; self.m + 1];
        for e in &self.edges {
            out[e.start] += 1;
            out[e.end] += 1;
        }
        out
    }

    /// Neighbours of each row as `(neighbour, snake)`, sorted.
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.m + 1];
        for e in &self.edges {
            adj[e.start].push((e.end, e.snake));
            adj[e.end].push((e.start, e.snake));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Lines `snake_id: start_row -- end_row`.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{}: {} -- {}", e.snake, e.start, e.end);
        }
        out
    }

    /// DOT text; edges of `highlight` are drawn bold and directed by a label.
    pub fn to_dot(&self, highlight: Option<&SignedCycle>) -> String {
        let mut out = String::from("graph snakes {\n");
        let degrees = self.degrees();
        for (row, &d) in degrees.iter().enumerate().skip(1) {
            if d > 0 {
                let _ = writeln!(out, "  {row};");
            }
        }
        for e in &self.edges {
            let on_cycle = highlight.and_then(|c| c.edges.iter().find(|d| d.snake == e.snake));
            match on_cycle {
                Some(d) => {
                    let _ = writeln!(
                        out,
                        "  {} -- {} [label=\"{} ({}->{})\", style=bold];",
                        e.start, e.end, e.snake, d.tail, d.head
                    );
                }
                None => {
                    let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.start, e.end, e.snake);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A traversed snake edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirectedEdge {
    pub snake: usize,
    pub tail: usize,
    pub head: usize,
}

impl DirectedEdge {
    pub fn sign(&self) -> Sign {
        if self.head > self.tail {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("snake {0} is not an edge of the graph")]
    UnknownSnake(usize),
    #[error("snakes {0} and {1} do not share a row")]
    NotConsecutive(usize, usize),
    #[error("the cycle is not simple")]
    CycleNotSimple,
    #[error("the action produced an invalid pattern: {source}")]
    PostValidationFailed { rows: Vec<Vec<i64>>, source: PatternError },
    #[error(transparent)]
    Snake(#[from] SnakeError),
}

/// A closed walk in the snake graph with a sign on each traversed snake.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedCycle {
    pub edges: Vec<DirectedEdge>,
}

impl SignedCycle {
    /// Orients a closed sequence of snakes. The first snake leaves the row it
    /// does not share with the second one.
    pub fn from_snake_sequence(graph: &SnakeGraph, snakes: &[usize]) -> Result<Self, CycleError> {
        let lookup = |s: usize| graph.edge(s).copied().ok_or(CycleError::UnknownSnake(s));
        let first = lookup(snakes[0])?;
        let mut tail = if snakes.len() > 1 {
            let second = lookup(snakes[1])?;
            let shares = |v: usize| v == second.start || v == second.end;
            match (shares(first.start), shares(first.end)) {
                (true, false) => first.end,
                (false, true) | (true, true) => first.start,
                (false, false) => return Err(CycleError::NotConsecutive(snakes[0], snakes[1])),
            }
        } else {
            first.start
        };
        let mut edges = Vec::with_capacity(snakes.len());
        for &s in snakes {
            let e = lookup(s)?;
            let head = if e.start == tail {
                e.end
            } else if e.end == tail {
                e.start
            } else {
                return Err(CycleError::NotConsecutive(edges.last().map_or(s, |d: &DirectedEdge| d.snake), s));
            };
            edges.push(DirectedEdge { snake: s, tail, head });
            tail = head;
        }
        Ok(Self { edges })
    }

    /// A walk given explicitly as `(snake, tail, head)` triples.
    pub fn from_walk(graph: &SnakeGraph, walk: &[(usize, usize, usize)]) -> Result<Self, CycleError> {
        let mut edges = Vec::with_capacity(walk.len());
        for &(snake, tail, head) in walk {
            let e = graph.edge(snake).ok_or(CycleError::UnknownSnake(snake))?;
            let matches = (e.start == tail && e.end == head) || (e.start == head && e.end == tail);
            if !matches {
                return Err(CycleError::NotConsecutive(snake, snake));
            }
            edges.push(DirectedEdge { snake, tail, head });
        }
        Ok(Self { edges })
    }

    pub fn signs(&self) -> Signs {
        self.edges.iter().map(|e| (e.snake, e.sign())).collect()
    }

    /// Closed, with distinct snakes and no repeated vertex.
    pub fn is_simple(&self) -> bool {
        if self.edges.is_empty() {
            return false;
        }
        let closed = self
            .edges
            .iter()
            .zip(self.edges.iter().cycle().skip(1))
            .all(|(a, b)| a.head == b.tail);
        let mut tails: Vec<usize> = self.edges.iter().map(|e| e.tail).collect();
        let mut snakes: Vec<usize> = self.edges.iter().map(|e| e.snake).collect();
        tails.sort_unstable();
        snakes.sort_unstable();
        let distinct = |v: &[usize]| v.windows(2).all(|w| w[0] != w[1]);
        closed && distinct(&tails) && distinct(&snakes)
    }

    /// Every edge reversed and every sign negated.
    pub fn reverse(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .rev()
            .map(|e| DirectedEdge {
                snake: e.snake,
                tail: e.head,
                head: e.tail,
            })
            .collect();
        Self { edges }
    }

    pub fn snakes(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.snake).collect()
    }
}

/// A simple cycle found by depth-first search from the lowest row with an
/// edge, trying neighbours by row and then by snake id.
pub fn find_simple_cycle(graph: &SnakeGraph) -> Option<SignedCycle> {
    let adj = graph.adjacency();
    let mut visited = vec![false; graph.m + 1];
    let mut on_path: Vec<Option<usize>> = vec![None; graph.m + 1];
    for root in 0..=graph.m {
        if visited[root] || adj[root].is_empty() {
            continue;
        }
        let mut path_edges: Vec<DirectedEdge> = Vec::new();
        if let Some(c) = dfs(root, None, &adj, &mut visited, &mut on_path, &mut path_edges) {
            return Some(SignedCycle { edges: c });
        }
    }
    None
}

fn dfs(
    v: usize,
    via: Option<usize>,
    adj: &[Vec<(usize, usize)>],
    visited: &mut [bool],
    on_path: &mut [Option<usize>],
    path_edges: &mut Vec<DirectedEdge>,
) -> Option<Vec<DirectedEdge>> {
    visited[v] = true;
    on_path[v] = Some(path_edges.len());
    for &(w, snake) in &adj[v] {
        if Some(snake) == via {
            continue;
        }
        let step = DirectedEdge { snake, tail: v, head: w };
        if let Some(pos) = on_path[w] {
            let mut cycle = path_edges[pos..].to_vec();
            cycle.push(step);
            return Some(cycle);
        }
        if visited[w] {
            continue;
        }
        path_edges.push(step);
        if let Some(c) = dfs(w, Some(snake), adj, visited, on_path, path_edges) {
            return Some(c);
        }
        path_edges.pop();
    }
    on_path[v] = None;
    None
}

/// Whether every row holds as many positive snake cells as negative ones.
pub fn rows_balanced(sp: &SnakePartition, signs: &Signs) -> bool {
    let (m, _) = sp.dims();
    let mut balance = vec![0i64; m + 1];
    for (&id, &sign) in signs {
        if let Ok(s) = sp.snake(id) {
            for c in &s.cells {
                balance[c.row] += sign.delta();
            }
        }
    }
    balance.iter().all(|&b| b == 0)
}

/// Adds the sign of each signed snake to its cells, then sorts every row
/// decreasingly. No simplicity requirement.
pub fn apply_signs(g: &GtPattern, sp: &SnakePartition, signs: &Signs) -> Result<GtPattern, CycleError> {
    let mut rows = g.rows().to_vec();
    for (&id, &sign) in signs {
        for c in &sp.snake(id)?.cells {
            rows[c.row - 1][c.col - 1] += sign.delta();
        }
    }
    for row in &mut rows {
        row.sort_unstable_by(|a, b| b.cmp(a));
    }
    GtPattern::new(rows.clone()).map_err(|source| CycleError::PostValidationFailed { rows, source })
}

/// The cycle action of a simple signed cycle.
pub fn apply_cycle(g: &GtPattern, sp: &SnakePartition, c: &SignedCycle) -> Result<GtPattern, CycleError> {
    if !c.is_simple() {
        return Err(CycleError::CycleNotSimple);
    }
    apply_signs(g, sp, &c.signs())
}

/// Results of a cycle and of its reverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingCheck {
    pub forward: GtPattern,
    pub reversed: GtPattern,
}

impl OrderingCheck {
    fn ordered(&self) -> (&GtPattern, &GtPattern) {
        if self.forward.lex_key() > self.reversed.lex_key() {
            (&self.reversed, &self.forward)
        } else {
            (&self.forward, &self.reversed)
        }
    }

    pub fn larger(&self) -> &GtPattern {
        self.ordered().1
    }

    pub fn smaller(&self) -> &GtPattern {
        self.ordered().0
    }

    /// Whether `g` lies strictly between the two results.
    pub fn is_strict_sandwich(&self, g: &GtPattern) -> bool {
        let key = g.lex_key();
        let (lo, hi) = (self.smaller().lex_key(), self.larger().lex_key());
        lo.cmp(&key) == Ordering::Less && key.cmp(&hi) == Ordering::Less
    }
}

pub fn ordering_check(g: &GtPattern, sp: &SnakePartition, c: &SignedCycle) -> Result<OrderingCheck, CycleError> {
    Ok(OrderingCheck {
        forward: apply_cycle(g, sp, c)?,
        reversed: apply_cycle(g, sp, &c.reverse())?,
    })
}

/// Outcome of replaying the cycle action through snake moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MechanismReport {
    pub mixed_tiles: usize,
    pub two_signed_mixed_tiles: usize,
    pub improper_mixed_tiles: usize,
    pub mixed_shape_violations: usize,
    pub result: GtPattern,
}

/// Replays the action without any row sorting: sign-sort every tile, sort
/// every mixed tile, then add the signs snake by snake. Each snake keeps its
/// content while it moves, so cells take the value of the snake that ends
/// up owning them.
pub fn apply_cycle_by_moves(g: &GtPattern, sp: &SnakePartition, c: &SignedCycle) -> Result<MechanismReport, CycleError> {
    let signs = c.signs();
    let sorted = sign_sort(sp, &signs)?;
    let mixed = mixed_tiles(&sorted, &signs);
    let two_signed = mixed.iter().filter(|t| t.has_both_signs(&signs)).count();
    let improper = mixed.iter().filter(|t| !t.proper).count();
    let violations = mixed.iter().map(|t| t.shape_violations.len()).sum();
    let settled = sort_mixed_tiles(&sorted, &signs)?;
    let mut rows = g.rows().to_vec();
    for s in settled.snakes() {
        let delta = signs.get(&s.id).map_or(0, |x| x.delta());
        for cell in &s.cells {
            rows[cell.row - 1][cell.col - 1] = s.content + delta;
        }
    }
    let result = GtPattern::new(rows.clone()).map_err(|source| CycleError::PostValidationFailed { rows, source })?;
    Ok(MechanismReport {
        mixed_tiles: mixed.len(),
        two_signed_mixed_tiles: two_signed,
        improper_mixed_tiles: improper,
        mixed_shape_violations: violations,
        result,
    })
}
