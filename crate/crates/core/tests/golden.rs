use std::path::PathBuf;

use paintcat_core::dsl::{run_source, EvalOptions, QUICKSTART};
use paintcat_core::render::{write_ppm, Image, GROUND};

fn golden() -> Vec<u8> {
    std::fs::read(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/quickstart.ppm")).unwrap()
}

fn quickstart_image() -> Image {
    let exec = run_source(QUICKSTART, &EvalOptions::default()).unwrap();
    let (_, path, image) = exec.renders().next().unwrap();
    assert_eq!(path, "out.ppm");
    image.clone()
}

#[test]
fn quickstart_matches_golden_bytes() {
    assert_eq!(write_ppm(&quickstart_image()), golden());
}

#[test]
fn golden_pixels_match_hand_arithmetic() {
    // After `braid w at 0` the word is s2 ⊗ s1 ⊗ s3. R1: s2 covers the ground,
    // then s1 (#CC2222, load 200) mixes over it:
    //   r = (8738*56 + 52428*200 + 128) / 256 = 42871 -> 167
    //   g = (13107*56 + 8738*200 + 128) / 256 = 9694  -> 38
    //   b = (52428*56 + 8738*200 + 128) / 256 = 18295 -> 71
    // and load 200 >= 128 hands the texture to s1 (smooth).
    let img = quickstart_image();
    for y in 0..32 {
        for x in 0..32 {
            assert_eq!(img.pixel(x, y), [167, 38, 71]);
        }
    }
    // R2: impasto #22CC55, darkened by 32 on the (x + y) mod 6 < 2 ridges.
    for y in 0..32 {
        for x in 32..64 {
            let want = if (x + y) % 6 < 2 { [2, 172, 53] } else { [34, 204, 85] };
            assert_eq!(img.pixel(x, y), want, "({x}, {y})");
        }
    }
    assert!(!img.pixels().contains(&GROUND));
}

#[test]
fn golden_header() {
    let bytes = golden();
    assert!(bytes.starts_with(b"P6\n64 32\n255\n"));
    assert_eq!(bytes.len(), 13 + 64 * 32 * 3);
}
