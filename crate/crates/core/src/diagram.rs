//! Planar link diagrams in a PD-code style.
//!
//! Edges are the strand segments between events. An event is either a
//! crossing, with four slots listed counterclockwise starting from an
//! under-strand edge, or a bend (a cap or cup) joining two edges. Every edge
//! occurs exactly twice across all slots and bend ends, which lets
//! crossing-free components live in the same structure.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("edge {edge} occurs {count} times (expected 2)")]
    EdgeOccurrence { edge: usize, count: usize },
    #[error("edge label {0} out of range")]
    EdgeOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Edge ids counterclockwise, `slots[0]` and `slots[2]` on the under strand.
    pub slots: [usize; 4],
    /// Left column of the crossing (the generator index).
    pub column: usize,
    /// Position of the letter in the braid word.
    pub row: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BendKind {
    Cap,
    Cup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bend {
    pub ends: [usize; 2],
    pub kind: BendKind,
    /// Left column the bend starts from.
    pub column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Crossing(usize, usize),
    Bend(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    edge_count: usize,
    crossings: Vec<Crossing>,
    bends: Vec<Bend>,
}

/// One traversal direction per component: `heads[e]` is the slot of the
/// event edge `e` flows into.
#[derive(Debug, Clone)]
pub(crate) struct Traversal {
    pub component_of: Vec<usize>,
    pub components: usize,
    heads: Vec<Node>,
}

impl LinkDiagram {
    pub fn new(edge_count: usize, crossings: Vec<Crossing>, bends: Vec<Bend>) -> Result<Self, DiagramError> {
        let d = LinkDiagram { edge_count, crossings, bends };
        d.validate()?;
        Ok(d)
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn bends(&self) -> &[Bend] {
        &self.bends
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let mut counts = vec![0usize; self.edge_count];
        let all = self
            .crossings
            .iter()
            .flat_map(|c| c.slots.iter())
            .chain(self.bends.iter().flat_map(|b| b.ends.iter()));
        for &e in all {
            *counts.get_mut(e).ok_or(DiagramError::EdgeOutOfRange(e))? += 1;
        }
        match counts.iter().enumerate().find(|(_, &c)| c != 2) {
            Some((edge, &count)) => Err(DiagramError::EdgeOccurrence { edge, count }),
            None => Ok(()),
        }
    }

    fn occurrences(&self) -> Vec<Vec<Node>> {
        let mut occ = vec![Vec::with_capacity(2); self.edge_count];
        for (k, c) in self.crossings.iter().enumerate() {
            for (s, &e) in c.slots.iter().enumerate() {
                occ[e].push(Node::Crossing(k, s));
            }
        }
        for (k, b) in self.bends.iter().enumerate() {
            for (s, &e) in b.ends.iter().enumerate() {
                occ[e].push(Node::Bend(k, s));
            }
        }
        occ
    }

    fn through(&self, node: Node) -> (usize, Node) {
        match node {
            Node::Crossing(k, s) => {
                let out = (s + 2) % 4;
                (self.crossings[k].slots[out], Node::Crossing(k, out))
            }
            Node::Bend(k, s) => {
                let out = 1 - s;
                (self.bends[k].ends[out], Node::Bend(k, out))
            }
        }
    }

    /// Walk every component once, starting each at its smallest edge in the
    /// direction of that edge's second occurrence.
    pub(crate) fn traversal(&self) -> Traversal {
        let occ = self.occurrences();
        let mut component_of = vec![usize::MAX; self.edge_count];
        let mut heads = vec![Node::Bend(usize::MAX, 0); self.edge_count];
        let mut components = 0;
        for start in 0..self.edge_count {
            if component_of[start] != usize::MAX {
                continue;
            }
            let mut edge = start;
            let mut head = occ[start][1];
            loop {
                component_of[edge] = components;
                heads[edge] = head;
                let (next, tail) = self.through(head);
                if next == start {
                    break;
                }
                head = if occ[next][0] == tail { occ[next][1] } else { occ[next][0] };
                edge = next;
            }
            components += 1;
        }
        Traversal { component_of, components, heads }
    }

    pub fn component_count(&self) -> usize {
        self.traversal().components
    }

    /// Whether edge `e` flows into crossing `k` at slot `s` under the
    /// reference traversal.
    pub(crate) fn flows_into(t: &Traversal, e: usize, k: usize, s: usize) -> bool {
        t.heads[e] == Node::Crossing(k, s)
    }

    /// Edge labels merged across bends, numbered from 1 in order of first
    /// appearance in the crossing list.
    fn pd_labels(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.edge_count).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for b in &self.bends {
            let (a, c) = (find(&mut parent, b.ends[0]), find(&mut parent, b.ends[1]));
            if a != c {
                parent[a.max(c)] = a.min(c);
            }
        }
        let mut label_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut labels = vec![0; self.edge_count];
        for c in &self.crossings {
            for &e in &c.slots {
                let r = find(&mut parent, e);
                let next = label_of_root.len() + 1;
                labels[e] = *label_of_root.entry(r).or_insert(next);
            }
        }
        labels
    }

    /// PD text: a `components <k>` header and one `X a b c d` line per
    /// crossing, in word order.
    pub fn to_pd_text(&self) -> String {
        let labels = self.pd_labels();
        let mut out = String::new();
        let _ = writeln!(out, "components {}", self.component_count());
        for c in &self.crossings {
            let [a, b, cc, d] = c.slots.map(|e| labels[e]);
            let _ = writeln!(out, "X {a} {b} {cc} {d}");
        }
        out
    }

    /// A copy with an extra crossing-free unknot drawn to the side.
    pub fn with_distant_unknot(&self) -> LinkDiagram {
        let (e0, e1) = (self.edge_count, self.edge_count + 1);
        let column = self.bends.iter().map(|b| b.column + 2).chain(self.crossings.iter().map(|c| c.column + 2)).max().unwrap_or(1);
        let mut bends = self.bends.clone();
        bends.push(Bend { ends: [e0, e1], kind: BendKind::Cap, column });
        bends.push(Bend { ends: [e0, e1], kind: BendKind::Cup, column });
        LinkDiagram { edge_count: self.edge_count + 2, crossings: self.crossings.clone(), bends }
    }
}
