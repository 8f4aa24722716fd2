//! The category of paint: tensor words as objects, brushstroke morphisms,
//! the strict monoidal product and the braiding.
//!
//! Objects are formal words of paint states. `⊗` is concatenation, so the
//! associator and unitors are literal equalities. What a word *looks like*
//! is a separate question answered by [`crate::canvas::eval_word`], which is
//! where layering order becomes visible.
//!
//! Morphisms are trees over three generators (identities, single-position
//! strokes, adjacent braids) closed under composition and tensor. A tree
//! denotes a function on word states: sequences of paint states with the
//! same region signature as the source word.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canvas::PaintState;
use crate::color::{mix_color, Color, Load, Texture};
use crate::error::PaintError;
use crate::sample::Sampler;

/// An object of the category: an ordered sequence of paint states.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TensorWord(Vec<PaintState>);

impl TensorWord {
    pub fn new(factors: Vec<PaintState>) -> Self {
        TensorWord(factors)
    }

    /// The unit object: the empty word.
    pub fn unit() -> Self {
        TensorWord(Vec::new())
    }

    pub fn single(state: PaintState) -> Self {
        TensorWord(vec![state])
    }

    pub fn factors(&self) -> &[PaintState] {
        &self.0
    }

    pub fn into_factors(self) -> Vec<PaintState> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tensor(&self, other: &TensorWord) -> TensorWord {
        tensor_words(self, other)
    }

    fn same_signature(&self, state: &[PaintState]) -> bool {
        self.0.len() == state.len() && self.0.iter().zip(state).all(|(a, b)| a.region() == b.region())
    }
}

impl fmt::Display for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊗ ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl From<Vec<PaintState>> for TensorWord {
    fn from(factors: Vec<PaintState>) -> Self {
        TensorWord(factors)
    }
}

/// `w1 ⊗ w2`.
pub fn tensor_words(w1: &TensorWord, w2: &TensorWord) -> TensorWord {
    let mut factors = Vec::with_capacity(w1.len() + w2.len());
    factors.extend_from_slice(&w1.0);
    factors.extend_from_slice(&w2.0);
    TensorWord(factors)
}

pub fn unit_word() -> TensorWord {
    TensorWord::unit()
}

/// A non-negative fraction in lowest terms with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u32,
    den: u32,
}

impl Ratio {
    pub fn new(num: u32, den: u32) -> Result<Self, PaintError> {
        if den == 0 {
            return Err(PaintError::ZeroDenominator);
        }
        let g = gcd(num, den);
        Ok(Ratio { num: num / g, den: den / g })
    }

    pub fn numerator(self) -> u32 {
        self.num
    }

    pub fn denominator(self) -> u32 {
        self.den
    }

    /// `floor(load * num / den)`, clamped to 256.
    pub fn scale(self, load: Load) -> Load {
        Load::saturating(u64::from(load.value()) * u64::from(self.num) / u64::from(self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// A brushstroke acting on one factor. Never changes the factor's region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StrokeGen {
    SetColor(Color),
    /// Mixes the given color into the factor at the given load.
    AddColor(Color, Load),
    /// Panics when applied if the texture is `blank`; constructors reject it.
    SetTexture(Texture),
    ScaleLoad(Ratio),
    DoNothing,
}

impl StrokeGen {
    pub fn set_texture(texture: Texture) -> Result<Self, PaintError> {
        if texture == Texture::Blank {
            return Err(PaintError::BlankTexture);
        }
        Ok(StrokeGen::SetTexture(texture))
    }

    pub fn apply(&self, state: &PaintState) -> PaintState {
        match *self {
            StrokeGen::SetColor(c) => state.with_color(c),
            StrokeGen::AddColor(c, load) => state.with_color(mix_color(state.color(), c, load)),
            StrokeGen::SetTexture(t) => state.with_texture(t),
            StrokeGen::ScaleLoad(ratio) => state.with_load(ratio.scale(state.load())),
            StrokeGen::DoNothing => state.clone(),
        }
    }
}

impl fmt::Display for StrokeGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrokeGen::SetColor(c) => write!(f, "(set_color {})", c.to_hex_short()),
            StrokeGen::AddColor(c, l) => write!(f, "(add_color {} {})", c.to_hex_short(), l.value()),
            StrokeGen::SetTexture(t) => write!(f, "(set_texture {t})"),
            StrokeGen::ScaleLoad(r) => write!(f, "(scale_load {r})"),
            StrokeGen::DoNothing => f.write_str("(do_nothing)"),
        }
    }
}

/// Composition/tensor tree over the generators. Every node knows its arity
/// so tensor nodes can split a word state between their children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Id {
        arity: usize,
    },
    Stroke {
        arity: usize,
        position: usize,
        generator: StrokeGen,
    },
    Braid {
        arity: usize,
        position: usize,
    },
    /// `Comp(g, f)` is `g ∘ f`: run `f` first.
    Comp(Box<Tree>, Box<Tree>),
    Tensor(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn arity(&self) -> usize {
        match self {
            Tree::Id { arity } | Tree::Stroke { arity, .. } | Tree::Braid { arity, .. } => *arity,
            Tree::Comp(_, f) => f.arity(),
            Tree::Tensor(l, r) => l.arity() + r.arity(),
        }
    }

    fn apply_in_place(&self, state: &mut [PaintState]) {
        debug_assert_eq!(state.len(), self.arity());
        match self {
            Tree::Id { .. } => {}
            Tree::Stroke { position, generator, .. } => {
                state[*position] = generator.apply(&state[*position]);
            }
            Tree::Braid { position, .. } => state.swap(*position, position + 1),
            Tree::Comp(g, f) => {
                f.apply_in_place(state);
                g.apply_in_place(state);
            }
            Tree::Tensor(l, r) => {
                let (left, right) = state.split_at_mut(l.arity());
                l.apply_in_place(left);
                r.apply_in_place(right);
            }
        }
    }

    /// Number of generator leaves.
    pub fn size(&self) -> usize {
        match self {
            Tree::Id { .. } | Tree::Stroke { .. } | Tree::Braid { .. } => 1,
            Tree::Comp(a, b) | Tree::Tensor(a, b) => a.size() + b.size(),
        }
    }
}

/// S-expression form, e.g. `(comp (braid 0) (tensor (stroke 0 (set_texture stippled)) (id 1)))`.
impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Id { arity } => write!(f, "(id {arity})"),
            Tree::Stroke { position, generator, .. } => write!(f, "(stroke {position} {generator})"),
            Tree::Braid { position, .. } => write!(f, "(braid {position})"),
            Tree::Comp(g, h) => write!(f, "(comp {g} {h})"),
            Tree::Tensor(l, r) => write!(f, "(tensor {l} {r})"),
        }
    }
}

/// An arrow `source → target`. Only built through the constructors below,
/// which keep `denote(source) == target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: TensorWord,
    target: TensorWord,
    tree: Tree,
}

impl Morphism {
    pub fn source(&self) -> &TensorWord {
        &self.source
    }

    pub fn target(&self) -> &TensorWord {
        &self.target
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    /// Applies the denotation to a word state with the source's region signature.
    pub fn apply(&self, state: &[PaintState]) -> Result<Vec<PaintState>, PaintError> {
        if !self.source.same_signature(state) {
            return Err(PaintError::SignatureMismatch);
        }
        let mut out = state.to_vec();
        self.tree.apply_in_place(&mut out);
        Ok(out)
    }

    fn from_tree(source: TensorWord, tree: Tree) -> Self {
        let mut factors = source.0.clone();
        tree.apply_in_place(&mut factors);
        Morphism { source, target: TensorWord(factors), tree }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.tree, f)
    }
}

pub fn id_morphism(w: &TensorWord) -> Morphism {
    Morphism { source: w.clone(), target: w.clone(), tree: Tree::Id { arity: w.len() } }
}

/// `g ∘ f`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism, PaintError> {
    if f.target != g.source {
        return Err(PaintError::BoundaryMismatch { left: f.target.to_string(), right: g.source.to_string() });
    }
    Ok(Morphism {
        source: f.source.clone(),
        target: g.target.clone(),
        tree: Tree::Comp(Box::new(g.tree.clone()), Box::new(f.tree.clone())),
    })
}

/// `f ⊗ g`: `f` acts on the left block, `g` on the right.
pub fn tensor_morphisms(f: &Morphism, g: &Morphism) -> Morphism {
    Morphism {
        source: tensor_words(&f.source, &g.source),
        target: tensor_words(&f.target, &g.target),
        tree: Tree::Tensor(Box::new(f.tree.clone()), Box::new(g.tree.clone())),
    }
}

/// Swaps factors `i` and `i + 1`.
pub fn braid(w: &TensorWord, i: usize) -> Result<Morphism, PaintError> {
    if i + 1 >= w.len() {
        return Err(PaintError::PositionOutOfRange { position: i, len: w.len() });
    }
    Ok(Morphism::from_tree(w.clone(), Tree::Braid { arity: w.len(), position: i }))
}

/// The braiding `a ⊗ b → b ⊗ a` for whole blocks, as a composite of
/// adjacent swaps. Identity when either block is the unit.
pub fn braid_blocks(a: &TensorWord, b: &TensorWord) -> Morphism {
    let mut f = id_morphism(&tensor_words(a, b));
    let m = a.len();
    for j in 0..b.len() {
        for k in (j..j + m).rev() {
            let step = braid(f.target(), k).expect("swap position inside the word");
            f = compose(&step, &f).expect("step starts at the previous target");
        }
    }
    f
}

/// Applies `generator` to factor `i`.
pub fn stroke_morphism(w: &TensorWord, i: usize, generator: StrokeGen) -> Result<Morphism, PaintError> {
    if i >= w.len() {
        return Err(PaintError::PositionOutOfRange { position: i, len: w.len() });
    }
    if generator == StrokeGen::SetTexture(Texture::Blank) {
        return Err(PaintError::BlankTexture);
    }
    Ok(Morphism::from_tree(w.clone(), Tree::Stroke { arity: w.len(), position: i, generator }))
}

/// Deterministic set of word states used to compare denotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TestEnsemble {
    pub seed: u64,
    pub samples: usize,
}

impl Default for TestEnsemble {
    fn default() -> Self {
        TestEnsemble { seed: 0, samples: 64 }
    }
}

impl TestEnsemble {
    pub fn new(seed: u64, samples: usize) -> Self {
        TestEnsemble { seed, samples }
    }

    /// The source word itself, four boundary states (all loads 0, all loads
    /// 256, all channels 0, all channels 65535) and `samples` seeded states
    /// over the same region signature.
    pub fn states(&self, source: &TensorWord) -> Vec<Vec<PaintState>> {
        let base = source.factors();
        let map = |f: &dyn Fn(&PaintState) -> PaintState| base.iter().map(f).collect::<Vec<_>>();
        let mut out = vec![
            base.to_vec(),
            map(&|s| s.with_load(Load::NONE)),
            map(&|s| s.with_load(Load::FULL)),
            map(&|s| s.with_color(Color::BLACK)),
            map(&|s| s.with_color(Color::WHITE)),
        ];
        let mut sampler = Sampler::stream(self.seed, "ensemble", source.len() as u64);
        out.extend((0..self.samples).map(|_| sampler.restate(source)));
        out
    }
}

/// Extensional equality: same endpoints and identical action on every state
/// of the ensemble.
pub fn morphism_equal(f: &Morphism, g: &Morphism, ensemble: &TestEnsemble) -> bool {
    first_disagreement(f, g, ensemble).is_none()
}

/// The first ensemble state on which `f` and `g` disagree, with both outputs.
/// Mismatched endpoints report the source word with the two targets.
pub fn first_disagreement(
    f: &Morphism,
    g: &Morphism,
    ensemble: &TestEnsemble,
) -> Option<(Vec<PaintState>, Vec<PaintState>, Vec<PaintState>)> {
    if f.source != g.source || f.target != g.target {
        return Some((f.source.0.clone(), f.target.0.clone(), g.target.0.clone()));
    }
    ensemble.states(&f.source).into_iter().find_map(|state| {
        let a = f.apply(&state).expect("ensemble matches the source signature");
        let b = g.apply(&state).expect("ensemble matches the source signature");
        (a != b).then_some((state, a, b))
    })
}
