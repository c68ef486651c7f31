//! Stallings-folding automata for finitely generated subgroups of free
//! groups: membership and shortlex coset representatives.

use std::collections::{BTreeMap, BTreeSet};

use super::word::{Generator, Letter, Sign, Word};

/// Folded core graph of a finitely generated subgroup, based at vertex 0.
///
/// Edges are positively labeled: an edge `u --g--> v` reads letter `x<g>`
/// forwards and `X<g>` backwards. Foldedness means every vertex has at
/// most one outgoing and one incoming edge per generator.
#[derive(Clone, Debug)]
pub struct SubgroupAutomaton {
    forward: Vec<BTreeMap<u32, usize>>,
    backward: Vec<BTreeMap<u32, usize>>,
}

impl SubgroupAutomaton {
    /// Stallings folding of the petal automaton of the given subgroup
    /// generators.
    pub fn fold(generators: &[Word]) -> SubgroupAutomaton {
        // Edge list on a scratch vertex set; vertex 0 is the base.
        let mut edges: BTreeSet<(usize, u32, usize)> = BTreeSet::new();
        let mut next_vertex = 1usize;
        for w in generators {
            let mut cur = 0usize;
            let n = w.len();
            for (i, l) in w.letters().iter().enumerate() {
                let target = if i + 1 == n {
                    0
                } else {
                    next_vertex += 1;
                    next_vertex - 1
                };
                match l.sign {
                    Sign::Plus => edges.insert((cur, l.gen.index(), target)),
                    Sign::Minus => edges.insert((target, l.gen.index(), cur)),
                };
                cur = target;
            }
        }

        // Fold: repeatedly identify targets of equally-labeled edges.
        let mut uf = UnionFind::new(next_vertex);
        loop {
            let canon: BTreeSet<(usize, u32, usize)> = edges
                .iter()
                .map(|&(u, g, v)| (uf.find(u), g, uf.find(v)))
                .collect();
            let mut merged = false;
            let mut out: BTreeMap<(usize, u32), usize> = BTreeMap::new();
            let mut inc: BTreeMap<(usize, u32), usize> = BTreeMap::new();
            for &(u, g, v) in &canon {
                if let Some(&v2) = out.get(&(u, g)) {
                    if v2 != v {
                        uf.union(v, v2);
                        merged = true;
                        break;
                    }
                } else {
                    out.insert((u, g), v);
                }
                if let Some(&u2) = inc.get(&(v, g)) {
                    if u2 != u {
                        uf.union(u, u2);
                        merged = true;
                        break;
                    }
                } else {
                    inc.insert((v, g), u);
                }
            }
            edges = canon;
            if !merged {
                break;
            }
        }

        // Trim hair: non-base vertices of total degree <= 1.
        loop {
            let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
            for &(u, _, v) in &edges {
                *degree.entry(u).or_insert(0) += 1;
                *degree.entry(v).or_insert(0) += 1;
            }
            let hair: BTreeSet<usize> = degree
                .iter()
                .filter(|&(&v, &d)| v != uf.find(0) && d <= 1)
                .map(|(&v, _)| v)
                .collect();
            if hair.is_empty() {
                break;
            }
            edges.retain(|&(u, _, v)| !hair.contains(&u) && !hair.contains(&v));
        }

        // Compact vertex numbering with the base at 0.
        let base = uf.find(0);
        let mut index: BTreeMap<usize, usize> = BTreeMap::new();
        index.insert(base, 0);
        for &(u, _, v) in &edges {
            let n = index.len();
            index.entry(u).or_insert(n);
            let n = index.len();
            index.entry(v).or_insert(n);
        }
        let mut forward = vec![BTreeMap::new(); index.len().max(1)];
        let mut backward = vec![BTreeMap::new(); index.len().max(1)];
        for &(u, g, v) in &edges {
            forward[index[&u]].insert(g, index[&v]);
            backward[index[&v]].insert(g, index[&u]);
        }
        SubgroupAutomaton { forward, backward }
    }

    pub fn vertex_count(&self) -> usize {
        self.forward.len()
    }

    pub fn edge_count(&self) -> usize {
        self.forward.iter().map(|m| m.len()).sum()
    }

    /// `rank = |edges| - |vertices| + 1`.
    pub fn rank(&self) -> usize {
        self.edge_count() + 1 - self.vertex_count()
    }

    fn step(&self, vertex: usize, l: Letter) -> Option<usize> {
        match l.sign {
            Sign::Plus => self.forward[vertex].get(&l.gen.index()).copied(),
            Sign::Minus => self.backward[vertex].get(&l.gen.index()).copied(),
        }
    }

    /// Membership in the subgroup: `w` labels a closed path at the base.
    pub fn contains(&self, w: &Word) -> bool {
        let mut cur = 0usize;
        for &l in w.letters() {
            match self.step(cur, l) {
                Some(next) => cur = next,
                None => return false,
            }
        }
        cur == 0
    }

    /// Shortlex-least word `r` with `r * w^-1` in the subgroup; `r`
    /// represents the right coset `Hw` and is idempotent under repetition.
    pub fn coset_rep(&self, w: &Word) -> Word {
        let rank = self
            .forward
            .iter()
            .flat_map(|m| m.keys())
            .copied()
            .max()
            .unwrap_or(0)
            .max(w.max_generator_index())
            .max(1);
        let w_inv = w.invert();
        // `w` itself qualifies, so the shortlex sweep terminates.
        for candidate in ShortlexWords::new(rank) {
            if self.contains(&candidate.multiply(&w_inv)) {
                return candidate;
            }
        }
        unreachable!("shortlex enumeration reaches w");
    }
}

/// True iff the words freely generate a subgroup of rank equal to their
/// count (folded rank drops exactly on Nielsen-dependent tuples).
pub fn is_free_basis(words: &[Word]) -> bool {
    if words.iter().any(|w| w.is_empty()) {
        return false;
    }
    SubgroupAutomaton::fold(words).rank() == words.len()
}

/// Iterator over all freely reduced words of rank `rank` in shortlex
/// order: by length, then by `x1 < X1 < x2 < X2 < ...`.
pub struct ShortlexWords {
    alphabet: Vec<Letter>,
    /// positions into `alphabet`; None until the first call
    state: Option<Vec<usize>>,
    length: usize,
}

impl ShortlexWords {
    pub fn new(rank: u32) -> ShortlexWords {
        let mut alphabet = Vec::new();
        for i in 1..=rank.max(1) {
            alphabet.push(Letter::new(Generator::new(i), Sign::Plus));
            alphabet.push(Letter::new(Generator::new(i), Sign::Minus));
        }
        ShortlexWords { alphabet, state: None, length: 0 }
    }

    fn word_of(&self, state: &[usize]) -> Word {
        Word::from_letters(state.iter().map(|&i| self.alphabet[i]))
    }

    fn is_reduced(&self, state: &[usize]) -> bool {
        state
            .windows(2)
            .all(|p| !self.alphabet[p[0]].is_inverse_of(self.alphabet[p[1]]))
    }

    fn advance(&self, state: &mut Vec<usize>) -> bool {
        let n = self.alphabet.len();
        let mut pos = state.len();
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            state[pos] += 1;
            if state[pos] < n {
                for p in state.iter_mut().skip(pos + 1) {
                    *p = 0;
                }
                return true;
            }
        }
    }
}

impl Iterator for ShortlexWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            let Some(mut state) = self.state.take() else {
                self.state = Some(Vec::new());
                return Some(Word::identity());
            };
            if !self.advance(&mut state) {
                self.length += 1;
                state = vec![0; self.length];
            }
            let word = self.is_reduced(&state).then(|| self.word_of(&state));
            self.state = Some(state);
            if let Some(w) = word {
                return Some(w);
            }
        }
    }
}


struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n.max(1)).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
