use std::fmt::Write;

use super::ast::{GenExpr, Script, Stmt, WordExpr};

fn word_expr(out: &mut String, expr: &WordExpr) {
    match expr {
        WordExpr::Name(n) => out.push_str(n),
        WordExpr::Unit => out.push('I'),
        WordExpr::Tensor(l, r) => {
            word_expr(out, l);
            out.push_str(" (x) ");
            // Left-nested chains print flat; a nested right operand keeps its parens.
            if matches!(**r, WordExpr::Tensor(..)) {
                out.push('(');
                word_expr(out, r);
                out.push(')');
            } else {
                word_expr(out, r);
            }
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Canonical source text: one statement per line, single spaces, comments dropped.
pub fn pretty_print(script: &Script) -> String {
    let mut out = String::new();
    for statement in &script.statements {
        // Writing to a String cannot fail.
        let _ = match &statement.stmt {
            Stmt::Region { name, x, y, width, height } => write!(out, "region {name} rect {x} {y} {width} {height}"),
            Stmt::State { name, region, color, texture, load } => write!(
                out,
                "state {name} = paint {region} color {} texture {texture} load {load}",
                color.to_hex_short()
            ),
            Stmt::Word { name, expr } => {
                let _ = write!(out, "word {name} = ");
                word_expr(&mut out, expr);
                Ok(())
            }
            Stmt::Stroke { name, generator } => {
                let _ = write!(out, "stroke {name} = ");
                match generator {
                    GenExpr::SetColor(c) => write!(out, "set_color {}", c.to_hex_short()),
                    GenExpr::AddColor(c, l) => write!(out, "add_color {} {l}", c.to_hex_short()),
                    GenExpr::SetTexture(t) => write!(out, "set_texture {t}"),
                    GenExpr::ScaleLoad(n, d) => write!(out, "scale_load {n}/{d}"),
                    GenExpr::DoNothing => write!(out, "do_nothing"),
                }
            }
            Stmt::Apply { stroke, word, position } => write!(out, "apply {stroke} to {word} at {position}"),
            Stmt::Braid { word, position } => write!(out, "braid {word} at {position}"),
            Stmt::Check { seed, samples } => {
                out.push_str("check laws");
                if let Some(s) = seed {
                    let _ = write!(out, " seed {s}");
                }
                if let Some(n) = samples {
                    let _ = write!(out, " samples {n}");
                }
                Ok(())
            }
            Stmt::Render { word, path, size } => {
                let _ = write!(out, "render {word} {}", quote(path));
                if let Some((w, h)) = size {
                    let _ = write!(out, " size {w} {h}");
                }
                Ok(())
            }
            Stmt::Print { name } => write!(out, "print {name}"),
        };
        out.push('\n');
    }
    out
}
