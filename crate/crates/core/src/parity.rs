//! Systems of equations `s(u) XOR s(v) = c` over GF(2), solved by
//! propagation along a spanning forest.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub struct ParitySystem {
    adj: Vec<Vec<(usize, bool)>>,
}

/// A cycle of variables whose constraint parities sum to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityConflict {
    pub cycle: Vec<usize>,
}

impl ParitySystem {
    pub fn new(vars: usize) -> Self {
        ParitySystem {
            adj: vec![Vec::new(); vars],
        }
    }

    pub fn vars(&self) -> usize {
        self.adj.len()
    }

    /// Adds the constraint `s(u) XOR s(v) = parity`.
    pub fn add(&mut self, u: usize, v: usize, parity: bool) {
        self.adj[u].push((v, parity));
        if u != v {
            self.adj[v].push((u, parity));
        }
    }

    /// Solves the system. Every component is rooted at its minimal variable,
    /// which is assigned `false`.
    pub fn solve(&self) -> Result<Vec<bool>, ParityConflict> {
        let n = self.vars();
        let mut value = vec![false; n];
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &(v, parity) in &self.adj[u] {
                    let want = value[u] ^ parity;
                    if !seen[v] {
                        seen[v] = true;
                        value[v] = want;
                        parent[v] = Some(u);
                        queue.push_back(v);
                    } else if value[v] != want {
                        return Err(ParityConflict {
                            cycle: tree_cycle(&parent, u, v),
                        });
                    }
                }
            }
        }
        Ok(value)
    }
}

/// The cycle formed by the tree paths from `u` and `v` plus the edge `u–v`.
fn tree_cycle(parent: &[Option<usize>], u: usize, v: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while let Some(y) = parent[x] {
            p.push(y);
            x = y;
        }
        p
    };
    let (mut pu, mut pv) = (path(u), path(v));
    // trim the shared tail down to the lowest common ancestor
    while pu.len() > 1 && pv.len() > 1 && pu[pu.len() - 2] == pv[pv.len() - 2] {
        pu.pop();
        pv.pop();
    }
    pv.pop();
    pv.reverse();
    pu.extend(pv);
    pu
}
