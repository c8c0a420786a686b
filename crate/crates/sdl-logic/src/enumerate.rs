//! Exhaustive countermodel search over bounded serial Kripke models.
//!
//! This is the independent oracle for the tableau: it evaluates raw formulas
//! semantically (no normalization, no tableau rules) over every serial model
//! with at most `max_worlds` worlds, up to this canonical ordering:
//!
//! * worlds are numbered by distance from the designated world 0, level by
//!   level, and unreachable worlds are dropped;
//! * worlds at distance `d` (the modal depth of the input) carry a self-loop
//!   and no other edges — no subformula is ever evaluated past depth `d`, so
//!   deeper structure cannot influence satisfaction at world 0;
//! * of the structures identical up to renaming worlds within a level, only
//!   the lexicographically least survives.
//!
//! Every serial model of the input with at most `max_worlds` worlds maps to a
//! canonical representative in this enumeration with the same size bound, so
//! an empty result is a proof that no such model exists. Valuations are swept
//! bit-parallel, 64 per machine word.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

use crate::formula::{set_atoms, set_modal_depth, SdlFormula};
use crate::kripke::KripkeModel;

/// Valuation bits (atom count x world count) the sweep is willing to cover.
pub const VALUATION_BIT_GUARD: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error(
        "enumeration guard exceeded: {atoms} atoms x {max_worlds} worlds needs {bits} \
         valuation bits per structure (cap {VALUATION_BIT_GUARD})"
    )]
    GuardExceeded { atoms: usize, max_worlds: usize, bits: usize },
}

/// Every satisfying serial model with at most `max_worlds` worlds, up to the
/// module's canonical ordering. Deterministic: models appear by world count,
/// then structure, then valuation index.
pub fn enumerate_models(
    gamma: &[SdlFormula],
    max_worlds: usize,
) -> Result<Vec<KripkeModel>, EnumerateError> {
    let search = Search::new(gamma, max_worlds)?;
    let mut out = Vec::new();
    for n in 1..=max_worlds {
        let structures = structures_for(n, search.depth);

        #[cfg(feature = "parallel")]
        let per_structure: Vec<Vec<KripkeModel>> = structures
            .par_iter()
            .map(|s| search.satisfying_models(s))
            .collect();
        #[cfg(not(feature = "parallel"))]
        let per_structure: Vec<Vec<KripkeModel>> =
            structures.iter().map(|s| search.satisfying_models(s)).collect();

        out.extend(per_structure.into_iter().flatten());
    }
    Ok(out)
}

/// The first model `enumerate_models` would return, without materializing
/// the rest.
pub fn exists_model(
    gamma: &[SdlFormula],
    max_worlds: usize,
) -> Result<Option<KripkeModel>, EnumerateError> {
    let search = Search::new(gamma, max_worlds)?;
    for n in 1..=max_worlds {
        for structure in structures_for(n, search.depth).iter() {
            if let Some(model) = search.satisfying_models(structure).into_iter().next() {
                return Ok(Some(model));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Formula arena

#[derive(Debug, Clone, Copy)]
enum Node {
    Atom(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Oblig(usize),
    Perm(usize),
}

struct Search {
    nodes: Vec<Node>,
    roots: Vec<usize>,
    atom_names: Vec<String>,
    atoms: usize,
    depth: usize,
}

impl Search {
    fn new(gamma: &[SdlFormula], max_worlds: usize) -> Result<Self, EnumerateError> {
        let atom_names = set_atoms(gamma);
        let bits = atom_names.len() * max_worlds;
        if bits > VALUATION_BIT_GUARD {
            return Err(EnumerateError::GuardExceeded {
                atoms: atom_names.len(),
                max_worlds,
                bits,
            });
        }
        let mut nodes = Vec::new();
        let mut dedup: HashMap<SdlFormula, usize> = HashMap::new();
        let roots =
            gamma.iter().map(|f| intern(f, &atom_names, &mut nodes, &mut dedup)).collect();
        Ok(Search {
            nodes,
            roots,
            atoms: atom_names.len(),
            atom_names,
            depth: set_modal_depth(gamma),
        })
    }

    /// All satisfying models over one structure, in valuation order.
    fn satisfying_models(&self, structure: &Structure) -> Vec<KripkeModel> {
        let n = structure.len();
        let bits = self.atoms * n;
        let block_bits = bits.min(14);
        let block_len = 1usize << block_bits;
        let words = block_len.div_ceil(64);
        let total = 1usize << bits;

        let mut found = Vec::new();
        let mut sweep = Sweep {
            search: self,
            structure,
            block_base: 0,
            words,
            memo: vec![None; self.nodes.len() * n],
        };

        let mut block_base = 0;
        while block_base < total {
            sweep.block_base = block_base;
            sweep.memo.iter_mut().for_each(|m| *m = None);

            // Conjunction of the roots at the designated world.
            let mut sat = vec![!0u64; words];
            for &root in &self.roots {
                sweep.ensure(root, 0);
                let cell = sweep.memo[root * n].as_ref().unwrap();
                for (acc, word) in sat.iter_mut().zip(cell) {
                    *acc &= word;
                }
            }
            if block_len < 64 {
                sat[0] &= (1u64 << block_len) - 1;
            }

            for (w_idx, mut word) in sat.iter().copied().enumerate() {
                while word != 0 {
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    let index = block_base + w_idx * 64 + bit;
                    found.push(self.materialize(structure, index));
                }
            }
            block_base += block_len;
        }
        found
    }

    fn materialize(&self, structure: &Structure, valuation_index: usize) -> KripkeModel {
        let n = structure.len();
        let accessibility = structure
            .succ_masks
            .iter()
            .map(|&mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
            .collect();
        let valuation = (0..n)
            .map(|w| {
                self.atom_names
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| valuation_index >> (w * self.atoms + i) & 1 == 1)
                    .map(|(_, a)| a.clone())
                    .collect()
            })
            .collect();
        KripkeModel { worlds: n, accessibility, valuation }
    }
}

fn intern(
    formula: &SdlFormula,
    atoms: &[String],
    nodes: &mut Vec<Node>,
    dedup: &mut HashMap<SdlFormula, usize>,
) -> usize {
    if let Some(&idx) = dedup.get(formula) {
        return idx;
    }
    let node = match formula {
        SdlFormula::Atom(a) => Node::Atom(atoms.iter().position(|x| x == a).unwrap()),
        SdlFormula::Not(g) => Node::Not(intern(g, atoms, nodes, dedup)),
        SdlFormula::And(l, r) => {
            Node::And(intern(l, atoms, nodes, dedup), intern(r, atoms, nodes, dedup))
        }
        SdlFormula::Or(l, r) => {
            Node::Or(intern(l, atoms, nodes, dedup), intern(r, atoms, nodes, dedup))
        }
        SdlFormula::Implies(l, r) => {
            Node::Implies(intern(l, atoms, nodes, dedup), intern(r, atoms, nodes, dedup))
        }
        SdlFormula::Oblig(g) => Node::Oblig(intern(g, atoms, nodes, dedup)),
        SdlFormula::Perm(g) => Node::Perm(intern(g, atoms, nodes, dedup)),
    };
    let idx = nodes.len();
    nodes.push(node);
    dedup.insert(formula.clone(), idx);
    idx
}

// ---------------------------------------------------------------------------
// Bit-parallel valuation sweep

/// Word patterns for valuation-index bit k < 6 within one 64-valuation word.
const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

struct Sweep<'a> {
    search: &'a Search,
    structure: &'a Structure,
    block_base: usize,
    words: usize,
    /// Truth bit-vector per (node, world), demand-computed.
    memo: Vec<Option<Vec<u64>>>,
}

impl Sweep<'_> {
    fn cell_index(&self, node: usize, world: usize) -> usize {
        node * self.structure.len() + world
    }

    fn ensure(&mut self, node: usize, world: usize) {
        if self.memo[self.cell_index(node, world)].is_some() {
            return;
        }
        let value = match self.search.nodes[node] {
            Node::Atom(i) => self.atom_pattern(world * self.search.atoms + i),
            Node::Not(g) => {
                self.ensure(g, world);
                self.cell(g, world).iter().map(|w| !w).collect()
            }
            Node::And(l, r) => {
                self.ensure(l, world);
                self.ensure(r, world);
                self.zip(l, r, world, |a, b| a & b)
            }
            Node::Or(l, r) => {
                self.ensure(l, world);
                self.ensure(r, world);
                self.zip(l, r, world, |a, b| a | b)
            }
            Node::Implies(l, r) => {
                self.ensure(l, world);
                self.ensure(r, world);
                self.zip(l, r, world, |a, b| !a | b)
            }
            Node::Oblig(g) => {
                let mut acc = vec![!0u64; self.words];
                for v in self.structure.successors(world) {
                    self.ensure(g, v);
                    for (a, b) in acc.iter_mut().zip(self.cell(g, v)) {
                        *a &= b;
                    }
                }
                acc
            }
            Node::Perm(g) => {
                let mut acc = vec![0u64; self.words];
                for v in self.structure.successors(world) {
                    self.ensure(g, v);
                    for (a, b) in acc.iter_mut().zip(self.cell(g, v)) {
                        *a |= b;
                    }
                }
                acc
            }
        };
        let idx = self.cell_index(node, world);
        self.memo[idx] = Some(value);
    }

    fn cell(&self, node: usize, world: usize) -> &Vec<u64> {
        self.memo[self.cell_index(node, world)].as_ref().unwrap()
    }

    fn zip(&self, l: usize, r: usize, world: usize, op: impl Fn(u64, u64) -> u64) -> Vec<u64> {
        self.cell(l, world)
            .iter()
            .zip(self.cell(r, world))
            .map(|(a, b)| op(*a, *b))
            .collect()
    }

    /// Truth of valuation-index bit `k` across the block.
    fn atom_pattern(&self, k: usize) -> Vec<u64> {
        (0..self.words)
            .map(|w| {
                if k < 6 {
                    LOW_PATTERNS[k]
                } else if (self.block_base + w * 64) >> k & 1 == 1 {
                    !0u64
                } else {
                    0u64
                }
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Canonical structures

/// A serial digraph over `levels.len()` worlds in canonical level order.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Structure {
    levels: Vec<usize>,
    succ_masks: Vec<u32>,
}

impl Structure {
    fn len(&self) -> usize {
        self.levels.len()
    }

    fn successors(&self, world: usize) -> impl Iterator<Item = usize> + '_ {
        let mask = self.succ_masks[world];
        (0..self.len()).filter(move |v| mask & (1 << v) != 0)
    }
}

static STRUCTURE_CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Vec<Structure>>>>> =
    OnceLock::new();

fn structures_for(n: usize, depth: usize) -> Arc<Vec<Structure>> {
    let cache = STRUCTURE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(n, depth)) {
        return Arc::clone(hit);
    }
    let built = Arc::new(generate_structures(n, depth));
    cache.lock().unwrap().insert((n, depth), Arc::clone(&built));
    built
}

fn generate_structures(n: usize, depth: usize) -> Vec<Structure> {
    if n == 1 {
        // Only the self-loop is canonical for a single world.
        return vec![Structure { levels: vec![0], succ_masks: vec![1] }];
    }
    if depth == 0 {
        // Satisfaction is purely propositional at world 0; everything beyond
        // it canonicalizes away.
        return Vec::new();
    }

    let mut out = Vec::new();
    for composition in compositions(n - 1, depth) {
        let mut levels = vec![0usize];
        for (level, &count) in composition.iter().enumerate() {
            levels.extend(std::iter::repeat(level + 1).take(count));
        }
        generate_for_levels(&levels, depth, &mut out);
    }
    out
}

/// Ordered compositions of `total` into at most `max_parts` parts, each >= 1.
fn compositions(total: usize, max_parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(remaining: usize, slots: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in 1..=remaining {
            current.push(part);
            go(remaining - part, slots - 1, current, out);
            current.pop();
        }
    }
    go(total, max_parts, &mut current, &mut out);
    out
}

fn generate_for_levels(levels: &[usize], depth: usize, out: &mut Vec<Structure>) {
    let n = levels.len();
    let level_mask = |cap: usize| -> u32 {
        (0..n).filter(|&w| levels[w] <= cap).fold(0, |m, w| m | (1 << w))
    };
    let ones_mask: u32 = (0..n).filter(|&w| levels[w] == 1).fold(0, |m, w| m | (1 << w));

    // Per-world successor-set choices.
    let mut options: Vec<Vec<u32>> = Vec::with_capacity(n);
    for w in 0..n {
        let level = levels[w];
        if w == 0 {
            // The designated world is the only level-0 world, so it must
            // reach every level-1 world; a self-loop is the free choice.
            options.push(vec![ones_mask, ones_mask | 1]);
        } else if level == depth {
            options.push(vec![1 << w]);
        } else {
            let allowed = level_mask(level + 1);
            let choices: Vec<u32> = (1..=allowed)
                .filter(|m| m & allowed == *m && *m != 0)
                .collect();
            options.push(choices);
        }
    }

    let perms = level_permutations(levels);
    let mut masks = vec![0u32; n];
    product(&options, 0, &mut masks, &mut |masks| {
        if !covered(levels, masks) {
            return;
        }
        if !is_lex_minimal(levels, masks, &perms) {
            return;
        }
        out.push(Structure { levels: levels.to_vec(), succ_masks: masks.to_vec() });
    });
}

fn product(options: &[Vec<u32>], world: usize, masks: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if world == options.len() {
        emit(masks);
        return;
    }
    for &mask in &options[world] {
        masks[world] = mask;
        product(options, world + 1, masks, emit);
    }
}

/// Every world at level >= 2 needs a predecessor one level up; level-1
/// coverage is built into the designated world's options.
fn covered(levels: &[usize], masks: &[u32]) -> bool {
    for (v, &level) in levels.iter().enumerate() {
        if level >= 2 {
            let hit = (0..levels.len())
                .any(|u| levels[u] == level - 1 && masks[u] & (1 << v) != 0);
            if !hit {
                return false;
            }
        }
    }
    true
}

/// Permutations of worlds that fix world 0 and preserve levels.
fn level_permutations(levels: &[usize]) -> Vec<Vec<usize>> {
    let n = levels.len();
    let max_level = *levels.iter().max().unwrap();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for level in 1..=max_level {
        blocks.push((0..n).filter(|&w| levels[w] == level).collect());
    }

    let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
    for block in blocks {
        let block_perms = permutations(&block);
        let mut next = Vec::with_capacity(perms.len() * block_perms.len());
        for perm in &perms {
            for bp in &block_perms {
                let mut combined = perm.clone();
                for (slot, &target) in block.iter().zip(bp) {
                    combined[*slot] = target;
                }
                next.push(combined);
            }
        }
        perms = next;
    }
    perms
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &item) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, item);
            out.push(tail);
        }
    }
    out
}

fn is_lex_minimal(levels: &[usize], masks: &[u32], perms: &[Vec<usize>]) -> bool {
    let n = levels.len();
    let mut image = vec![0u32; n];
    for perm in perms {
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            continue;
        }
        for w in 0..n {
            let mut permuted = 0u32;
            let mask = masks[w];
            for v in 0..n {
                if mask & (1 << v) != 0 {
                    permuted |= 1 << perm[v];
                }
            }
            image[perm[w]] = permuted;
        }
        if image.as_slice() < masks {
            return false;
        }
    }
    true
}
