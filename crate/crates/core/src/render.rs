//! Rasterizing canvases to binary PPM.

use crate::canvas::{CanvasState, Regions};
use crate::color::{Color, Texture};
use crate::error::PaintError;

pub type Rgb8 = [u8; 3];

pub const GROUND: Rgb8 = [255, 255, 255];

/// Row-major 8-bit RGB image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    width: u32,
    height: u32,
    pixels: Vec<Rgb8>,
}

impl Image {
    pub fn filled(width: u32, height: u32, fill: Rgb8) -> Result<Self, PaintError> {
        if width == 0 || height == 0 {
            return Err(PaintError::EmptyImage);
        }
        Ok(Image { width, height, pixels: vec![fill; width as usize * height as usize] })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[Rgb8] {
        &self.pixels
    }

    pub fn pixel(&self, x: u32, y: u32) -> Rgb8 {
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    pub fn set_pixel(&mut self, x: u32, y: u32, rgb: Rgb8) {
        let w = self.width as usize;
        self.pixels[y as usize * w + x as usize] = rgb;
    }
}

/// `floor((ch + 128) / 257)`, clamped to 255.
pub fn channel_to_u8(ch: u16) -> u8 {
    ((u32::from(ch) + 128) / 257).min(255) as u8
}

pub fn color_to_rgb8(c: Color) -> Rgb8 {
    [channel_to_u8(c.r), channel_to_u8(c.g), channel_to_u8(c.b)]
}

/// Deterministic per-pixel texture modulation.
pub fn texture_pattern(texture: Texture, x: u32, y: u32, base: Rgb8) -> Rgb8 {
    let darken = |by: u8| base.map(|c| c.saturating_sub(by));
    match texture {
        Texture::Smooth | Texture::Blank => base,
        Texture::Stippled => {
            if (u64::from(x) + 2 * u64::from(y)) % 4 == 0 {
                darken(48)
            } else {
                base
            }
        }
        Texture::Impasto => {
            if (u64::from(x) + u64::from(y)) % 6 < 2 {
                darken(32)
            } else {
                base
            }
        }
        Texture::Transparent => base.map(|c| c + (255 - c) / 2),
    }
}

/// Paints every region of `canvas` onto a white ground.
pub fn rasterize(canvas: &CanvasState, regions: &Regions, width: u32, height: u32) -> Result<Image, PaintError> {
    let mut img = Image::filled(width, height, GROUND)?;
    for (name, paint) in canvas.iter() {
        let rect = regions.get(name).ok_or_else(|| PaintError::UnknownRegion(name.to_string()))?;
        if rect.right() > u64::from(width) || rect.bottom() > u64::from(height) {
            return Err(PaintError::RegionOutOfBounds { name: name.to_string(), width, height });
        }
        let base = color_to_rgb8(paint.color());
        for y in rect.y..rect.y + rect.height {
            for x in rect.x..rect.x + rect.width {
                img.set_pixel(x, y, texture_pattern(paint.texture(), x, y, base));
            }
        }
    }
    Ok(img)
}

/// Binary P6 encoding: `P6\n<w> <h>\n255\n` followed by raw RGB bytes.
pub fn write_ppm(img: &Image) -> Vec<u8> {
    let header = format!("P6\n{} {}\n255\n", img.width, img.height);
    let mut out = Vec::with_capacity(header.len() + img.pixels.len() * 3);
    out.extend_from_slice(header.as_bytes());
    for px in &img.pixels {
        out.extend_from_slice(px);
    }
    out
}
