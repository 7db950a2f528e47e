//! Closure of finite matrix groups and bounded word search.
//!
//! Matrices over Z/2 (the g x g mod-2 action) and Z/3 (the free part mod 3)
//! are packed row-major into a `u128`: one bit per entry over Z/2, two bits
//! per entry over Z/3. Closure is breadth-first with parent links, so every
//! element comes with a word in the generators.

use std::collections::VecDeque;
use std::thread;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mcg::MappingClass;
use crate::words::GeneratorWord;

pub const DEFAULT_CAP: usize = 50_000_000;
/// Environment variable holding the worker count for closure.
pub const THREADS_ENV: &str = "MCG_THREADS";
const BLOCK: usize = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    Z2,
    Z3,
}

impl Rep {
    pub fn modulus(self) -> u8 {
        match self {
            Rep::Z2 => 2,
            Rep::Z3 => 3,
        }
    }

    /// Matrix size used for genus `g`.
    pub fn size(self, g: usize) -> usize {
        match self {
            Rep::Z2 => g,
            Rep::Z3 => g - 1,
        }
    }

    /// Row-major entries of a mapping class in this representation.
    pub fn entries(self, m: &MappingClass) -> Vec<u8> {
        match self {
            Rep::Z2 => m.mat_z2().data().to_vec(),
            Rep::Z3 => m.mat_z3(),
        }
    }
}

/// Packed square matrices over Z/2 or Z/3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Packing {
    rep: Rep,
    n: usize,
}

impl Packing {
    pub fn new(rep: Rep, n: usize) -> Result<Self> {
        let bits = match rep {
            Rep::Z2 => n * n,
            Rep::Z3 => 2 * n * n,
        };
        if n == 0 || bits > 128 {
            return Err(Error::UnsupportedMatrix { size: n, modulus: rep.modulus() });
        }
        Ok(Packing { rep, n })
    }

    pub fn for_genus(rep: Rep, g: usize) -> Result<Self> {
        Self::new(rep, rep.size(g))
    }

    pub fn rep(&self) -> Rep {
        self.rep
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn width(&self) -> usize {
        match self.rep {
            Rep::Z2 => 1,
            Rep::Z3 => 2,
        }
    }

    pub fn encode(&self, entries: &[u8]) -> u128 {
        let w = self.width();
        entries.iter().enumerate().fold(0u128, |acc, (i, &e)| acc | (u128::from(e % self.rep.modulus()) << (i * w)))
    }

    pub fn decode(&self, key: u128) -> Vec<u8> {
        let w = self.width();
        let mask = (1u128 << w) - 1;
        (0..self.n * self.n).map(|i| ((key >> (i * w)) & mask) as u8).collect()
    }

    pub fn key(&self, m: &MappingClass) -> u128 {
        self.encode(&self.rep.entries(m))
    }

    pub fn identity(&self) -> u128 {
        let mut e = vec![0u8; self.n * self.n];
        for i in 0..self.n {
            e[i * self.n + i] = 1;
        }
        self.encode(&e)
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let n = self.n;
        match self.rep {
            Rep::Z2 => {
                let mask = (1u128 << n) - 1;
                let mut out = 0u128;
                for i in 0..n {
                    let row = (a >> (i * n)) & mask;
                    let mut acc = 0u128;
                    for j in 0..n {
                        if (row >> j) & 1 == 1 {
                            acc ^= (b >> (j * n)) & mask;
                        }
                    }
                    out |= acc << (i * n);
                }
                out
            }
            Rep::Z3 => {
                let mut ea = [0u8; 64];
                let mut eb = [0u8; 64];
                for i in 0..n * n {
                    ea[i] = ((a >> (2 * i)) & 3) as u8;
                    eb[i] = ((b >> (2 * i)) & 3) as u8;
                }
                let mut out = 0u128;
                for i in 0..n {
                    for j in 0..n {
                        let s: u32 = (0..n).map(|k| u32::from(ea[i * n + k]) * u32::from(eb[k * n + j])).sum();
                        out |= u128::from(s % 3) << (2 * (i * n + j));
                    }
                }
                out
            }
        }
    }

    /// Gauss-Jordan inverse over the prime field.
    pub fn inverse(&self, key: u128) -> Option<u128> {
        let n = self.n;
        let p = u32::from(self.rep.modulus());
        let e = self.decode(key);
        let mut a: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut row: Vec<u32> = e[i * n..(i + 1) * n].iter().map(|&v| u32::from(v)).collect();
                row.extend((0..n).map(|j| u32::from(i == j)));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, piv);
            // Over Z/2 and Z/3 every unit is its own inverse.
            let inv = a[col][col];
            for v in a[col].iter_mut() {
                *v = (*v * inv) % p;
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for c in 0..2 * n {
                        a[r][c] = (a[r][c] + p * p - f * a[col][c]) % p;
                    }
                }
            }
        }
        let out: Vec<u8> = (0..n).flat_map(|i| a[i][n..].iter().map(|&v| v as u8).collect::<Vec<_>>()).collect();
        Some(self.encode(&out))
    }
}

/// Result of a breadth-first closure.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    packing: Packing,
    generators: Vec<u128>,
    /// Letter l is generator l/2, inverted when l is odd.
    letters: Vec<u128>,
    keys: Vec<u128>,
    parent: Vec<u32>,
    via: Vec<u8>,
    index: FxHashMap<u128, u32>,
    complete: bool,
    cap: usize,
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.keys.len()
    }

    /// False when the cap stopped the search; `order` is then a lower bound.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn generators(&self) -> &[u128] {
        &self.generators
    }

    pub fn contains(&self, key: u128) -> bool {
        self.index.contains_key(&key)
    }

    pub fn keys(&self) -> &[u128] {
        &self.keys
    }

    /// Word for an element as (generator index, exponent) pairs, leftmost
    /// applied last.
    pub fn word_of(&self, key: u128) -> Option<Vec<(usize, i8)>> {
        let mut idx = *self.index.get(&key)? as usize;
        let mut out = Vec::new();
        while idx != 0 {
            let l = self.via[idx] as usize;
            out.push((l / 2, if l.is_multiple_of(2) { 1 } else { -1 }));
            idx = self.parent[idx] as usize;
        }
        Some(out)
    }

    /// Multiplies out a word produced by [`Self::word_of`].
    pub fn evaluate_word(&self, word: &[(usize, i8)]) -> u128 {
        word.iter().fold(self.packing.identity(), |acc, &(g, e)| {
            let m = self.letters[2 * g + usize::from(e < 0)];
            self.packing.mul(acc, m)
        })
    }

    /// Sorted canonical keys (hex) with generator words, one per line.
    pub fn export(&self, names: &[String]) -> String {
        let mut idx: Vec<usize> = (0..self.keys.len()).collect();
        idx.sort_by_key(|&i| self.keys[i]);
        let mut out = String::new();
        for i in idx {
            let word = self.word_of(self.keys[i]).unwrap_or_default();
            out.push_str(&format!("{:032x} {}\n", self.keys[i], render_index_word(&word, names)));
        }
        out
    }
}

fn render_index_word(word: &[(usize, i8)], names: &[String]) -> String {
    if word.is_empty() {
        return "ID".into();
    }
    let parts: Vec<String> = word
        .iter()
        .map(|&(g, e)| {
            let n = names.get(g).cloned().unwrap_or_else(|| format!("g{g}"));
            let n = if n.contains(' ') { format!("({n})") } else { n };
            if e < 0 {
                format!("{n}'")
            } else {
                n
            }
        })
        .collect();
    parts.join(" ")
}

/// Worker count from the environment, at least 1.
pub fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()).filter(|&n: &usize| n >= 1).unwrap_or(1)
}

pub fn closure(packing: Packing, generators: &[u128], cap: usize) -> Result<FiniteGroupTable> {
    closure_with_threads(packing, generators, cap, threads_from_env())
}

/// Breadth-first closure under left multiplication by the generators and
/// their inverses. Products are computed in parallel blocks and merged in a
/// fixed order, so the table does not depend on the worker count.
pub fn closure_with_threads(packing: Packing, generators: &[u128], cap: usize, threads: usize) -> Result<FiniteGroupTable> {
    let mut letters = Vec::with_capacity(2 * generators.len());
    for (i, &g) in generators.iter().enumerate() {
        let inv = packing.inverse(g).ok_or(Error::SingularGenerator(i))?;
        letters.push(g);
        letters.push(inv);
    }
    // Skip inverse letters that repeat the generator (involutions).
    let active: Vec<usize> = (0..letters.len()).filter(|&l| l % 2 == 0 || letters[l] != letters[l - 1]).collect();

    let id = packing.identity();
    let mut index = FxHashMap::default();
    index.insert(id, 0u32);
    let mut table = FiniteGroupTable {
        packing,
        generators: generators.to_vec(),
        letters,
        keys: vec![id],
        parent: vec![0],
        via: vec![0],
        index,
        complete: true,
        cap,
    };
    let threads = threads.max(1);
    let mut pos = 0;
    'outer: while pos < table.keys.len() {
        let end = (pos + BLOCK).min(table.keys.len());
        let block = &table.keys[pos..end];
        let products = products_parallel(&packing, block, &table.letters, &active, threads);
        for (off, chunk) in products.chunks(active.len()).enumerate() {
            for (&l, &p) in active.iter().zip(chunk) {
                if table.index.contains_key(&p) {
                    continue;
                }
                if table.keys.len() >= cap {
                    table.complete = false;
                    break 'outer;
                }
                table.index.insert(p, table.keys.len() as u32);
                table.keys.push(p);
                table.parent.push((pos + off) as u32);
                table.via.push(l as u8);
            }
        }
        pos = end;
    }
    Ok(table)
}

fn products_parallel(packing: &Packing, block: &[u128], letters: &[u128], active: &[usize], threads: usize) -> Vec<u128> {
    let work = |xs: &[u128]| -> Vec<u128> {
        let mut out = Vec::with_capacity(xs.len() * active.len());
        for &x in xs {
            out.extend(active.iter().map(|&l| packing.mul(letters[l], x)));
        }
        out
    };
    if threads == 1 || block.len() < 2 * threads {
        return work(block);
    }
    let chunk = block.len().div_ceil(threads);
    thread::scope(|s| {
        let handles: Vec<_> = block.chunks(chunk).map(|c| s.spawn(move || work(c))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("closure worker panicked")).collect()
    })
}

/// A generator given as a word together with its value.
#[derive(Clone, Debug)]
pub struct NamedGen {
    pub word: GeneratorWord,
    pub class: MappingClass,
}

impl NamedGen {
    pub fn new(word: GeneratorWord, class: MappingClass) -> Self {
        NamedGen { word, class }
    }
}

/// Expands an index word over named generators into a generator word.
pub fn expand_word(word: &[(usize, i8)], gens: &[NamedGen]) -> GeneratorWord {
    word.iter().fold(GeneratorWord::identity(), |acc, &(g, e)| {
        let w = if e < 0 { gens[g].word.inverse() } else { gens[g].word.clone() };
        acc.concat(&w)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SubgroupVerdict {
    Equal {
        order: usize,
        /// Each B generator as a word in the A generators.
        b_in_a: Vec<GeneratorWord>,
        a_in_b: Vec<GeneratorWord>,
    },
    NotEqual {
        order_a: usize,
        order_b: usize,
        /// Generators of B outside <A>, then generators of A outside <B>.
        b_missing: Vec<usize>,
        a_missing: Vec<usize>,
    },
    Indeterminate {
        partial_a: usize,
        partial_b: usize,
        cap: usize,
    },
}

pub fn subgroup_equal(a: &[NamedGen], b: &[NamedGen], rep: Rep, cap: usize) -> Result<SubgroupVerdict> {
    subgroup_equal_with_threads(a, b, rep, cap, threads_from_env())
}

pub fn subgroup_equal_with_threads(
    a: &[NamedGen],
    b: &[NamedGen],
    rep: Rep,
    cap: usize,
    threads: usize,
) -> Result<SubgroupVerdict> {
    let g = a.first().or(b.first()).map(|x| x.class.genus()).ok_or(Error::EmptyWord)?;
    let packing = Packing::for_genus(rep, g)?;
    let keys_a: Vec<u128> = a.iter().map(|x| packing.key(&x.class)).collect();
    let keys_b: Vec<u128> = b.iter().map(|x| packing.key(&x.class)).collect();
    let ta = closure_with_threads(packing, &keys_a, cap, threads)?;
    let tb = closure_with_threads(packing, &keys_b, cap, threads)?;
    if !ta.is_complete() || !tb.is_complete() {
        return Ok(SubgroupVerdict::Indeterminate { partial_a: ta.order(), partial_b: tb.order(), cap });
    }
    let b_missing: Vec<usize> = (0..b.len()).filter(|&i| !ta.contains(keys_b[i])).collect();
    let a_missing: Vec<usize> = (0..a.len()).filter(|&i| !tb.contains(keys_a[i])).collect();
    if !b_missing.is_empty() || !a_missing.is_empty() {
        return Ok(SubgroupVerdict::NotEqual { order_a: ta.order(), order_b: tb.order(), b_missing, a_missing });
    }
    let b_in_a = keys_b.iter().map(|&k| expand_word(&ta.word_of(k).expect("member"), a)).collect();
    let a_in_b = keys_a.iter().map(|&k| expand_word(&tb.word_of(k).expect("member"), b)).collect();
    Ok(SubgroupVerdict::Equal { order: ta.order(), b_in_a, a_in_b })
}

/// Least k in 0..g with t^k tau1 t^-k = tau2 on H_1.
pub fn find_conjugating_power(t: &MappingClass, tau1: &MappingClass, tau2: &MappingClass) -> Option<usize> {
    let g = t.genus();
    let t_inv = t.inverse();
    let mut conj = tau1.clone();
    for k in 0..g {
        if conj == *tau2 {
            return Some(k);
        }
        conj = t.compose(&conj).compose(&t_inv);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExpressResult {
    /// `length` counts generators, not the tokens of the expanded word.
    Found { word: GeneratorWord, length: usize },
    /// Every word up to `depth` letters was checked.
    NotFound { depth: usize, visited: usize },
    /// The visited-set cap stopped the search after `depth` full levels.
    CapReached { depth: usize, visited: usize },
}

/// Shortest word (up to `depth` letters) in the generators and their
/// inverses equal to `target` on H_1. Breadth-first, deduplicated by value.
pub fn express_bounded(target: &MappingClass, gens: &[NamedGen], depth: usize, cap: usize) -> ExpressResult {
    let g = target.genus();
    let mut letters: Vec<(usize, i8, MappingClass)> = Vec::new();
    for (i, gen) in gens.iter().enumerate() {
        letters.push((i, 1, gen.class.clone()));
        let inv = gen.class.inverse();
        if inv != gen.class {
            letters.push((i, -1, inv));
        }
    }
    let id = MappingClass::identity(g);
    if *target == id {
        return ExpressResult::Found { word: GeneratorWord::identity(), length: 0 };
    }
    let mut seen: FxHashSet<MappingClass> = FxHashSet::default();
    seen.insert(id.clone());
    let mut nodes: Vec<(usize, usize)> = vec![(0, 0)];
    let mut frontier: VecDeque<(usize, MappingClass)> = VecDeque::from([(0, id)]);
    for d in 1..=depth {
        let mut next = VecDeque::new();
        while let Some((node, m)) = frontier.pop_front() {
            for (li, (_, _, l)) in letters.iter().enumerate() {
                let p = l.compose(&m);
                if seen.contains(&p) {
                    continue;
                }
                nodes.push((node, li));
                if p == *target {
                    let mut word = Vec::new();
                    let mut n = nodes.len() - 1;
                    while n != 0 {
                        let (parent, li) = nodes[n];
                        word.push((letters[li].0, letters[li].1));
                        n = parent;
                    }
                    let length = word.len();
                    let word = expand_word(&word, gens);
                    return ExpressResult::Found { word, length };
                }
                if seen.len() >= cap {
                    return ExpressResult::CapReached { depth: d - 1, visited: seen.len() };
                }
                seen.insert(p.clone());
                next.push_back((nodes.len() - 1, p));
            }
        }
        frontier = next;
    }
    ExpressResult::NotFound { depth, visited: seen.len() }
}
