//! Paint as a strict braided monoidal category.
//!
//! Objects are tensor words of paint states, morphisms are brushstrokes and
//! braids, and [`canvas::eval_word`] gives each word its painted appearance.
//! [`laws`] turns the coherence claims into runnable checks, [`dsl`] is a
//! small scripting language over all of it, and [`render`] writes PPM images.

pub mod canvas;
pub mod category;
pub mod color;
pub mod dsl;
pub mod error;
pub mod laws;
pub mod render;
pub mod sample;

pub use canvas::{
    blank, canvas_equal, eval_word, eval_word_with, CanvasState, LayerFn, PaintState, Rect, Region, Regions,
};
pub use category::{
    braid, braid_blocks, compose, id_morphism, morphism_equal, stroke_morphism, tensor_morphisms, tensor_words,
    unit_word, Morphism, Ratio, StrokeGen, TensorWord, TestEnsemble, Tree,
};
pub use color::{color_distance, layer, mix_channel, mix_color, Color, Load, RegionPaint, Texture};
pub use error::PaintError;
pub use laws::{run_all, LawCheckConfig, LawEntry, LawReport};
pub use render::{rasterize, texture_pattern, write_ppm, Image};
