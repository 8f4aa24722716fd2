//! Regions, paint states and the evaluation of tensor words into canvases.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::category::TensorWord;
use crate::color::{layer, Color, Load, RegionPaint, Texture};
use crate::error::PaintError;

/// Signature of a layering kernel. [`layer`] is the standard one; law tests
/// swap in sabotaged kernels to make sure the checks can fail.
pub type LayerFn = fn(&RegionPaint, &PaintState) -> RegionPaint;

/// Axis-aligned pixel rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub x: u32,
    pub y: u32,
    pub width: u32,
    pub height: u32,
}

impl Rect {
    pub const fn new(x: u32, y: u32, width: u32, height: u32) -> Self {
        Rect { x, y, width, height }
    }

    pub fn right(&self) -> u64 {
        u64::from(self.x) + u64::from(self.width)
    }

    pub fn bottom(&self) -> u64 {
        u64::from(self.y) + u64::from(self.height)
    }

    pub fn overlaps(&self, other: &Rect) -> bool {
        u64::from(self.x) < other.right()
            && u64::from(other.x) < self.right()
            && u64::from(self.y) < other.bottom()
            && u64::from(other.y) < self.bottom()
    }

    pub fn contains(&self, px: u32, py: u32) -> bool {
        px >= self.x && u64::from(px) < self.right() && py >= self.y && u64::from(py) < self.bottom()
    }
}

/// A named canvas region.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    pub name: String,
    pub rect: Rect,
}

impl Region {
    pub fn new(name: impl Into<String>, rect: Rect) -> Self {
        Region { name: name.into(), rect }
    }
}

/// The set of declared regions. Names are unique and rectangles never overlap.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Regions {
    by_name: BTreeMap<String, Rect>,
    order: Vec<String>,
}

impl Regions {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_list(regions: &[Region]) -> Result<Self, PaintError> {
        let mut out = Regions::new();
        for r in regions {
            out.register(r.clone())?;
        }
        Ok(out)
    }

    pub fn register(&mut self, region: Region) -> Result<(), PaintError> {
        if self.by_name.contains_key(&region.name) {
            return Err(PaintError::DuplicateRegion(region.name));
        }
        if region.rect.width == 0 || region.rect.height == 0 {
            return Err(PaintError::EmptyRegion(region.name));
        }
        if let Some(other) = self.iter().find(|r| r.rect.overlaps(&region.rect)) {
            return Err(PaintError::RegionOverlap(region.name, other.name));
        }
        self.order.push(region.name.clone());
        self.by_name.insert(region.name, region.rect);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<Rect> {
        self.by_name.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Regions in declaration order.
    pub fn iter(&self) -> impl Iterator<Item = Region> + '_ {
        self.order.iter().map(|n| Region::new(n.clone(), self.by_name[n]))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(String::as_str)
    }

    /// Smallest image size holding every region, at least 1x1.
    pub fn extent(&self) -> (u32, u32) {
        self.by_name.values().fold((1, 1), |(w, h), r| {
            (w.max(r.right().min(u32::MAX.into()) as u32), h.max(r.bottom().min(u32::MAX.into()) as u32))
        })
    }
}

/// One atomic coat: a color and texture laid on a region with some pigment load.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPaintState")]
pub struct PaintState {
    region: String,
    color: Color,
    texture: Texture,
    load: Load,
}

#[derive(Deserialize)]
struct RawPaintState {
    region: String,
    color: Color,
    texture: Texture,
    load: Load,
}

impl TryFrom<RawPaintState> for PaintState {
    type Error = PaintError;

    fn try_from(raw: RawPaintState) -> Result<Self, Self::Error> {
        PaintState::new(raw.region, raw.color, raw.texture, raw.load)
    }
}

impl PaintState {
    pub fn new(region: impl Into<String>, color: Color, texture: Texture, load: Load) -> Result<Self, PaintError> {
        if texture == Texture::Blank {
            return Err(PaintError::BlankTexture);
        }
        Ok(PaintState { region: region.into(), color, texture, load })
    }

    pub fn region(&self) -> &str {
        &self.region
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn texture(&self) -> Texture {
        self.texture
    }

    pub fn load(&self) -> Load {
        self.load
    }

    pub fn with_color(&self, color: Color) -> Self {
        PaintState { color, ..self.clone() }
    }

    /// Panics on `Texture::Blank`; callers hold a paintable texture.
    pub fn with_texture(&self, texture: Texture) -> Self {
        assert_ne!(texture, Texture::Blank, "blank texture in a paint state");
        PaintState { texture, ..self.clone() }
    }

    pub fn with_load(&self, load: Load) -> Self {
        PaintState { load, ..self.clone() }
    }

    /// The region content this coat produces on bare canvas.
    pub fn paint(&self) -> RegionPaint {
        RegionPaint::new(self.color, self.texture).expect("paint states never carry blank")
    }
}

impl fmt::Display for PaintState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, load {})", self.region, self.color.to_hex_short(), self.texture, self.load.value())
    }
}

/// An evaluated canvas. Regions without an entry are bare ground.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CanvasState {
    regions: BTreeMap<String, RegionPaint>,
}

impl CanvasState {
    pub fn get(&self, region: &str) -> Option<&RegionPaint> {
        self.regions.get(region)
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &RegionPaint)> {
        self.regions.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Overrides one region's paint. The region must be registered by whoever
    /// later renders or compares this canvas.
    pub fn with_region(mut self, region: impl Into<String>, paint: RegionPaint) -> Self {
        self.regions.insert(region.into(), paint);
        self
    }

    /// Canonical JSON: keys sorted, colors as `#RRRRGGGGBBBB`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("canvas serialization is infallible")
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("canvas serialization is infallible")
    }
}

/// The unit canvas: nothing painted.
pub fn blank() -> CanvasState {
    CanvasState::default()
}

pub fn canvas_equal(a: &CanvasState, b: &CanvasState) -> bool {
    a == b
}

/// Folds a word left to right with the standard kernel.
pub fn eval_word(word: &TensorWord, regions: &Regions) -> Result<CanvasState, PaintError> {
    eval_word_with(word, regions, layer)
}

/// Folds a word left to right: the first coat in a region covers the ground,
/// each later coat is layered over what is already there.
pub fn eval_word_with(word: &TensorWord, regions: &Regions, kernel: LayerFn) -> Result<CanvasState, PaintError> {
    let mut canvas = CanvasState::default();
    for coat in word.factors() {
        if !regions.contains(coat.region()) {
            return Err(PaintError::UnknownRegion(coat.region().to_string()));
        }
        let next = match canvas.regions.get(coat.region()) {
            None => coat.paint(),
            Some(existing) => kernel(existing, coat),
        };
        canvas.regions.insert(coat.region().to_string(), next);
    }
    Ok(canvas)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pool() -> Regions {
        Regions::from_list(&[Region::new("R1", Rect::new(0, 0, 32, 32)), Region::new("R2", Rect::new(32, 0, 32, 32))])
            .unwrap()
    }

    fn ps(region: &str, color: Color, texture: Texture, load: u16) -> PaintState {
        PaintState::new(region, color, texture, Load::new(load).unwrap()).unwrap()
    }

    fn word(factors: Vec<PaintState>) -> TensorWord {
        TensorWord::new(factors)
    }

    #[test]
    fn disjoint_regions_both_appear() {
        let w = word(vec![ps("R1", Color::RED, Texture::Smooth, 200), ps("R2", Color::BLUE, Texture::Impasto, 200)]);
        let c = eval_word(&w, &pool()).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.get("R1"), Some(&RegionPaint::new(Color::RED, Texture::Smooth).unwrap()));
        assert_eq!(c.get("R2"), Some(&RegionPaint::new(Color::BLUE, Texture::Impasto).unwrap()));
    }

    #[test]
    fn empty_word_is_blank() {
        let c = eval_word(&TensorWord::unit(), &pool()).unwrap();
        assert!(canvas_equal(&c, &blank()));
        assert!(blank().is_empty());
    }

    #[test]
    fn transparent_blue_over_red_gives_purple() {
        for base_load in [0, 17, 200, 256] {
            let w = word(vec![
                ps("R1", Color::RED, Texture::Smooth, base_load),
                ps("R1", Color::BLUE, Texture::Transparent, 128),
            ]);
            let c = eval_word(&w, &pool()).unwrap();
            let want = RegionPaint::new(Color::new(32768, 0, 32768), Texture::Transparent).unwrap();
            assert_eq!(c.get("R1"), Some(&want));
        }
    }

    #[test]
    fn unknown_region_is_rejected() {
        let w = word(vec![ps("R9", Color::RED, Texture::Smooth, 10)]);
        assert_eq!(eval_word(&w, &pool()), Err(PaintError::UnknownRegion("R9".into())));
    }

    #[test]
    fn canvas_equality_is_bit_exact() {
        let a = blank().with_region("R1", RegionPaint::new(Color::RED, Texture::Smooth).unwrap());
        let b = blank().with_region("R1", RegionPaint::new(Color::RED, Texture::Smooth).unwrap());
        let c = blank().with_region("R1", RegionPaint::new(Color::new(65534, 0, 0), Texture::Smooth).unwrap());
        assert!(canvas_equal(&blank(), &blank()));
        assert!(canvas_equal(&a, &b));
        assert!(!canvas_equal(&a, &c));
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let c = blank()
            .with_region("b", RegionPaint::new(Color::BLUE, Texture::Impasto).unwrap())
            .with_region("a", RegionPaint::new(Color::RED, Texture::Smooth).unwrap());
        assert_eq!(
            c.to_json(),
            r##"{"a":{"color":"#FFFF00000000","texture":"smooth"},"b":{"color":"#00000000FFFF","texture":"impasto"}}"##
        );
        assert_eq!(blank().to_json(), "{}");
    }

    #[test]
    fn registration_rules() {
        let mut regions = pool();
        assert_eq!(
            regions.register(Region::new("R1", Rect::new(100, 100, 1, 1))),
            Err(PaintError::DuplicateRegion("R1".into()))
        );
        assert_eq!(
            regions.register(Region::new("R3", Rect::new(31, 31, 2, 2))),
            Err(PaintError::RegionOverlap("R3".into(), "R1".into()))
        );
        assert_eq!(
            regions.register(Region::new("R4", Rect::new(0, 40, 0, 3))),
            Err(PaintError::EmptyRegion("R4".into()))
        );
        // Touching edges do not overlap.
        regions.register(Region::new("R5", Rect::new(0, 32, 64, 1))).unwrap();
        assert_eq!(regions.extent(), (64, 33));
    }

    #[test]
    fn paint_state_rejects_blank() {
        assert_eq!(PaintState::new("R1", Color::RED, Texture::Blank, Load::HALF), Err(PaintError::BlankTexture));
    }

    #[test]
    fn paint_state_json_round_trip() {
        let s = ps("R2", Color::new(1, 2, 3), Texture::Stippled, 77);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r##"{"region":"R2","color":"#000100020003","texture":"stippled","load":77}"##);
        assert_eq!(serde_json::from_str::<PaintState>(&text).unwrap(), s);
        let blank = text.replace("stippled", "blank");
        assert!(serde_json::from_str::<PaintState>(&blank).is_err());
    }
}
