//! Exact color, texture and pigment-load arithmetic.
//!
//! Everything here is fixed point. Channels are 16-bit linear intensities and
//! loads live on a `[0, 256]` scale, so the layering kernel produces the same
//! bytes on every platform and equality checks never need a tolerance.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PaintError;

/// Largest channel value.
pub const CHANNEL_MAX: u16 = u16::MAX;

/// Load at or above which the top coat's texture wins.
pub const TEXTURE_TAKEOVER: u16 = 128;

/// A 16-bit-per-channel linear RGB color.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color {
    pub r: u16,
    pub g: u16,
    pub b: u16,
}

impl Color {
    pub const BLACK: Color = Color::new(0, 0, 0);
    pub const WHITE: Color = Color::new(CHANNEL_MAX, CHANNEL_MAX, CHANNEL_MAX);
    pub const RED: Color = Color::new(CHANNEL_MAX, 0, 0);
    pub const BLUE: Color = Color::new(0, 0, CHANNEL_MAX);
    pub const YELLOW: Color = Color::new(CHANNEL_MAX, CHANNEL_MAX, 0);

    pub const fn new(r: u16, g: u16, b: u16) -> Self {
        Color { r, g, b }
    }

    /// Builds a color from wide integers, rejecting anything outside `[0, 65535]`.
    pub fn from_channels(r: i64, g: i64, b: i64) -> Result<Self, PaintError> {
        let ch = |v: i64| u16::try_from(v).map_err(|_| PaintError::ChannelOutOfRange(v));
        Ok(Color::new(ch(r)?, ch(g)?, ch(b)?))
    }

    /// Scales 8-bit channels to 16 bits (`ch * 257`).
    pub const fn from_rgb8(r: u8, g: u8, b: u8) -> Self {
        Color::new(r as u16 * 257, g as u16 * 257, b as u16 * 257)
    }

    pub fn channels(self) -> [u16; 3] {
        [self.r, self.g, self.b]
    }

    /// True when every channel is an exact multiple of 257, i.e. the color
    /// round-trips through the 8-bit `#RRGGBB` form.
    pub fn is_rgb8_exact(self) -> bool {
        self.channels().iter().all(|c| c % 257 == 0)
    }

    /// `#RRGGBB` when exact, `#RRRRGGGGBBBB` otherwise.
    pub fn to_hex_short(self) -> String {
        if self.is_rgb8_exact() {
            format!("#{:02X}{:02X}{:02X}", self.r / 257, self.g / 257, self.b / 257)
        } else {
            self.to_hex16()
        }
    }

    /// Full 16-bit `#RRRRGGGGBBBB`.
    pub fn to_hex16(self) -> String {
        format!("#{:04X}{:04X}{:04X}", self.r, self.g, self.b)
    }

    /// Parses hex digits (with or without a leading `#`): 6 digits are 8-bit
    /// channels scaled by 257, 12 digits are raw 16-bit channels.
    pub fn parse_hex(text: &str) -> Result<Self, PaintError> {
        let digits = text.strip_prefix('#').unwrap_or(text);
        let bad = || PaintError::BadHexColor(text.to_string());
        if !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(bad());
        }
        match digits.len() {
            6 => {
                let ch = |i: usize| u8::from_str_radix(&digits[i..i + 2], 16).map_err(|_| bad());
                Ok(Color::from_rgb8(ch(0)?, ch(2)?, ch(4)?))
            }
            12 => {
                let ch = |i: usize| u16::from_str_radix(&digits[i..i + 4], 16).map_err(|_| bad());
                Ok(Color::new(ch(0)?, ch(4)?, ch(8)?))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex16())
    }
}

impl FromStr for Color {
    type Err = PaintError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Color::parse_hex(s)
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex16())
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Color::parse_hex(&text).map_err(serde::de::Error::custom)
    }
}

/// Surface texture label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Texture {
    Smooth,
    Stippled,
    Impasto,
    Transparent,
    /// Bare ground. Never carried by a paint state.
    Blank,
}

impl Texture {
    /// The textures a paint state may carry.
    pub const PAINTABLE: [Texture; 4] = [Texture::Smooth, Texture::Stippled, Texture::Impasto, Texture::Transparent];

    pub fn name(self) -> &'static str {
        match self {
            Texture::Smooth => "smooth",
            Texture::Stippled => "stippled",
            Texture::Impasto => "impasto",
            Texture::Transparent => "transparent",
            Texture::Blank => "blank",
        }
    }
}

impl fmt::Display for Texture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Texture {
    type Err = PaintError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "smooth" => Ok(Texture::Smooth),
            "stippled" => Ok(Texture::Stippled),
            "impasto" => Ok(Texture::Impasto),
            "transparent" => Ok(Texture::Transparent),
            "blank" => Ok(Texture::Blank),
            other => Err(PaintError::UnknownTexture(other.to_string())),
        }
    }
}

/// Pigment load in `[0, 256]`: 0 is no pigment, 256 fully covers what is below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Load(u16);

impl Load {
    pub const MAX_VALUE: u16 = 256;
    pub const NONE: Load = Load(0);
    pub const HALF: Load = Load(128);
    pub const FULL: Load = Load(256);

    pub fn new(value: u16) -> Result<Self, PaintError> {
        if value > Self::MAX_VALUE {
            return Err(PaintError::LoadOutOfRange(value.into()));
        }
        Ok(Load(value))
    }

    /// Clamps into range instead of failing.
    pub fn saturating(value: u64) -> Self {
        Load(value.min(Self::MAX_VALUE as u64) as u16)
    }

    pub fn value(self) -> u16 {
        self.0
    }
}

impl<'de> Deserialize<'de> for Load {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = u16::deserialize(deserializer)?;
        Load::new(value).map_err(serde::de::Error::custom)
    }
}

/// What a painted region looks like once all its coats are folded together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RegionPaint {
    color: Color,
    texture: Texture,
}

impl RegionPaint {
    pub fn new(color: Color, texture: Texture) -> Result<Self, PaintError> {
        if texture == Texture::Blank {
            return Err(PaintError::BlankTexture);
        }
        Ok(RegionPaint { color, texture })
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn texture(&self) -> Texture {
        self.texture
    }
}

/// Mixes one channel: `floor((bottom * (256 - load) + top * load + 128) / 256)`.
pub fn mix_channel(bottom: u16, top: u16, load: Load) -> u16 {
    let l = u32::from(load.value());
    let mixed = (u32::from(bottom) * (256 - l) + u32::from(top) * l + 128) / 256;
    // Convex combination of two u16 values plus a sub-unit bias.
    mixed as u16
}

/// Mixes `top` over `bottom` channel by channel at the given load.
pub fn mix_color(bottom: Color, top: Color, load: Load) -> Color {
    Color::new(
        mix_channel(bottom.r, top.r, load),
        mix_channel(bottom.g, top.g, load),
        mix_channel(bottom.b, top.b, load),
    )
}

/// Lays a coat over an already painted region.
pub fn layer(bottom: &RegionPaint, top: &crate::canvas::PaintState) -> RegionPaint {
    let texture = if top.load().value() >= TEXTURE_TAKEOVER { top.texture() } else { bottom.texture };
    RegionPaint { color: mix_color(bottom.color, top.color(), top.load()), texture }
}

/// Chebyshev distance between two colors.
pub fn color_distance(a: Color, b: Color) -> u16 {
    a.channels().iter().zip(b.channels()).map(|(x, y)| x.abs_diff(y)).max().unwrap_or(0)
}
