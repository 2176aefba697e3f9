use crate::complex::{Color, LocalRule};
use crate::exhaustion::ConeTypes;

/// Chain lengths per generation.
///
/// The length of a chain is the number of single edges on it; a chain of
/// length `ℓ` alternates `ℓ` single edges with `ℓ - 1` bundles of `q - 1`
/// parallel edges, so it spans `2ℓ - 1` steps of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainSchedule {
    /// Every chain has length `c`; `c = 1` is the modular tree.
    Constant(usize),
    /// `ℓ_k = c·g^(k-1)` for the first `prefix` generations, then
    /// `ℓ_k = c·g^(prefix-1)·⌈√(k/prefix)⌉`.
    Growing {
        c: usize,
        growth: usize,
        prefix: usize,
    },
    /// `ℓ_k = start + step·(k-1)`.
    Arithmetic { start: usize, step: usize },
    /// Lengths repeated cyclically: generation `k` uses `lengths[(k-1) % len]`.
    Periodic(Vec<usize>),
}

/// Bound `ℓ_k ≤ a·k^exponent + b` valid for every generation `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LengthEnvelope {
    pub a: f64,
    pub b: f64,
    pub exponent: f64,
}

impl LengthEnvelope {
    pub fn eval(&self, k: usize) -> f64 {
        self.a * (k as f64).powf(self.exponent) + self.b
    }
}

impl ChainSchedule {
    /// Length of the chains from generation `k - 1` to generation `k`.
    pub fn length(&self, k: usize) -> usize {
        debug_assert!(k >= 1);
        match self {
            ChainSchedule::Constant(c) => *c,
            ChainSchedule::Growing { c, growth, prefix } => {
                let top = c * growth.pow((*prefix as u32).saturating_sub(1));
                if k <= *prefix {
                    c * growth.pow(k as u32 - 1)
                } else {
                    // smallest s with s² · prefix ≥ k
                    let mut s = num_integer::Roots::sqrt(&(k / prefix));
                    while s * s * prefix < k {
                        s += 1;
                    }
                    top * s
                }
            }
            ChainSchedule::Arithmetic { start, step } => start + step * (k - 1),
            ChainSchedule::Periodic(lengths) => lengths[(k - 1) % lengths.len()],
        }
    }

    /// Number of graph steps along a chain of generation `k`.
    pub fn steps(&self, k: usize) -> usize {
        2 * self.length(k) - 1
    }

    /// Closed-form envelope of the schedule, known from its definition.
    pub fn envelope(&self) -> LengthEnvelope {
        match self {
            ChainSchedule::Constant(c) => LengthEnvelope {
                a: 0.0,
                b: *c as f64,
                exponent: 0.0,
            },
            ChainSchedule::Growing { c, growth, prefix } => {
                let top = (c * growth.pow((*prefix as u32).saturating_sub(1))) as f64;
                // ⌈√(k/p)⌉ ≤ √(k/p) + 1, and the prefix never exceeds `top`
                LengthEnvelope {
                    a: top / (*prefix as f64).sqrt(),
                    b: top,
                    exponent: 0.5,
                }
            }
            ChainSchedule::Arithmetic { start, step } => LengthEnvelope {
                a: *step as f64,
                b: *start as f64,
                exponent: if *step == 0 { 0.0 } else { 1.0 },
            },
            ChainSchedule::Periodic(lengths) => LengthEnvelope {
                a: 0.0,
                b: lengths.iter().copied().max().unwrap_or(1) as f64,
                exponent: 0.0,
            },
        }
    }

    pub fn is_valid(&self) -> bool {
        match self {
            ChainSchedule::Constant(c) => *c >= 1,
            ChainSchedule::Growing { c, growth, prefix } => *c >= 1 && *growth >= 1 && *prefix >= 1,
            ChainSchedule::Arithmetic { start, .. } => *start >= 1,
            ChainSchedule::Periodic(l) => !l.is_empty() && l.iter().all(|&x| x >= 1),
        }
    }
}

/// A vertex of a [`ChainTree`]: the slots chosen at the branch vertices
/// passed so far, and how many steps into the current chain it lies.
///
/// The base is `(ε, 0)`; `pos = steps(k)` with `k = word.len()` is the
/// branch vertex ending the current chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeVertex {
    pub word: Vec<u8>,
    pub pos: usize,
}

impl TreeVertex {
    pub fn generation(&self) -> usize {
        self.word.len()
    }
}

/// Tree-shaped line complex with every non-bigon face logarithmic.
///
/// Branch vertices have `q` distinct neighbors and chain vertices two. The
/// chain leaving a branch vertex through slot `s` uses slot `s` for its
/// single edges and all other slots for its bundles, so it ends in a branch
/// vertex reached through slot `s` again.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainTree {
    q: usize,
    schedule: ChainSchedule,
}

impl ChainTree {
    pub fn new(q: usize, schedule: ChainSchedule) -> Self {
        assert!(q >= 3, "chain trees need q ≥ 3");
        assert!(q <= u8::MAX as usize);
        assert!(schedule.is_valid(), "chain lengths must be positive");
        ChainTree { q, schedule }
    }

    /// The universal covering of the sphere punctured at `q` points.
    pub fn regular(q: usize) -> Self {
        ChainTree::new(q, ChainSchedule::Constant(1))
    }

    pub fn schedule(&self) -> &ChainSchedule {
        &self.schedule
    }

    fn is_branch(&self, v: &TreeVertex) -> bool {
        v.word.is_empty() || v.pos == self.schedule.steps(v.word.len())
    }

    fn branch_at(&self, word: &[u8]) -> TreeVertex {
        let pos = if word.is_empty() {
            0
        } else {
            self.schedule.steps(word.len())
        };
        TreeVertex {
            word: word.to_vec(),
            pos,
        }
    }

    fn back(&self, v: &TreeVertex) -> TreeVertex {
        if v.pos == 1 {
            self.branch_at(&v.word[..v.word.len() - 1])
        } else {
            TreeVertex {
                word: v.word.clone(),
                pos: v.pos - 1,
            }
        }
    }
}

impl LocalRule for ChainTree {
    type Vertex = TreeVertex;

    fn q(&self) -> usize {
        self.q
    }

    fn base(&self) -> TreeVertex {
        TreeVertex {
            word: Vec::new(),
            pos: 0,
        }
    }

    fn color(&self, v: &TreeVertex) -> Color {
        // every chain spans an odd number of steps
        let parity = if v.word.is_empty() {
            0
        } else {
            (v.word.len() - 1 + v.pos) % 2
        };
        if parity == 0 {
            Color::Inner
        } else {
            Color::Outer
        }
    }

    fn neighbor(&self, v: &TreeVertex, slot: usize) -> TreeVertex {
        let last = v.word.last().map(|&s| s as usize);
        if self.is_branch(v) {
            if last == Some(slot) {
                return self.back(v);
            }
            let mut word = v.word.clone();
            word.push(slot as u8);
            return TreeVertex { word, pos: 1 };
        }
        // odd steps of a chain are single edges through its own slot
        let single_behind = v.pos % 2 == 1;
        let backwards = (last == Some(slot)) == single_behind;
        if backwards {
            self.back(v)
        } else {
            TreeVertex {
                word: v.word.clone(),
                pos: v.pos + 1,
            }
        }
    }
}

/// Cone type `(generation, position, incoming slot)`: the subtree hanging
/// below a vertex depends on nothing else.
impl ConeTypes for ChainTree {
    type Cone = (usize, usize, u8);

    fn cone(&self, v: &TreeVertex) -> Self::Cone {
        (
            v.word.len(),
            v.pos,
            v.word.last().copied().unwrap_or(u8::MAX),
        )
    }

    fn within(&self, v: &TreeVertex, radius: usize) -> bool {
        let mut d = v.pos;
        for k in 1..v.word.len() {
            if d > radius {
                return false;
            }
            d += self.schedule.steps(k);
        }
        d <= radius
    }
}
