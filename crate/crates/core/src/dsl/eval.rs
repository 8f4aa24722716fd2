use std::collections::HashMap;

use super::ast::{GenExpr, Script, Span, Statement, Stmt, WordExpr};
use super::EvalError;
use crate::canvas::{eval_word, CanvasState, PaintState, Rect, Region, Regions};
use crate::category::{braid, stroke_morphism, Ratio, StrokeGen, TensorWord};
use crate::color::Load;
use crate::error::PaintError;
use crate::laws::{builtin_pool, run_all, LawCheckConfig, LawReport};
use crate::render::{rasterize, Image};

/// Defaults for statements that leave parameters out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub seed: u64,
    pub samples: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { seed: 42, samples: 64 }
    }
}

#[derive(Clone, Debug)]
pub enum Output {
    /// A `render` statement. Nothing is written to disk here.
    Render {
        word: String,
        path: String,
        image: Image,
    },
    /// A `print` statement: canonical canvas JSON.
    Print {
        name: String,
        json: String,
    },
    Report(LawReport),
}

/// Everything a script produced, in statement order, plus the final bindings.
#[derive(Clone, Debug, Default)]
pub struct Execution {
    pub outputs: Vec<Output>,
    pub regions: Regions,
    values: HashMap<String, Value>,
}

impl Execution {
    /// True unless some `check laws` statement reported a failure.
    pub fn laws_passed(&self) -> bool {
        self.outputs.iter().all(|o| !matches!(o, Output::Report(r) if !r.passed))
    }

    /// The word bound to `name`, if it names a word or a single state.
    pub fn word(&self, name: &str) -> Option<TensorWord> {
        match self.values.get(name)? {
            Value::Word(w) => Some(w.clone()),
            Value::State(s) => Some(TensorWord::single(s.clone())),
            Value::Stroke(_) => None,
        }
    }

    pub fn canvas(&self, name: &str) -> Option<CanvasState> {
        self.word(name).map(|w| eval_word(&w, &self.regions).expect("bound words use declared regions"))
    }

    pub fn renders(&self) -> impl Iterator<Item = (&str, &str, &Image)> {
        self.outputs.iter().filter_map(|o| match o {
            Output::Render { word, path, image } => Some((word.as_str(), path.as_str(), image)),
            _ => None,
        })
    }

    /// Machine-readable text for standard output: printed canvases and law
    /// reports, one per line.
    pub fn stdout_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outputs {
            match o {
                Output::Print { json, .. } => out.push_str(json),
                Output::Report(r) => out.push_str(&r.to_json()),
                Output::Render { .. } => continue,
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug)]
enum Value {
    State(PaintState),
    Word(TensorWord),
    Stroke(StrokeGen),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::State(_) => "state",
            Value::Word(_) => "word",
            Value::Stroke(_) => "stroke",
        }
    }
}

struct Machine<'o> {
    opts: &'o EvalOptions,
    exec: Execution,
}

fn to_u32(value: u64, what: &str) -> Result<u32, String> {
    u32::try_from(value).map_err(|_| format!("{what} {value} is too large"))
}

impl Machine<'_> {
    fn lookup(&self, name: &str) -> Result<&Value, String> {
        self.exec.values.get(name).ok_or_else(|| format!("unbound identifier `{name}`"))
    }

    fn word(&self, name: &str) -> Result<TensorWord, String> {
        match self.lookup(name)? {
            Value::Word(w) => Ok(w.clone()),
            Value::State(s) => Ok(TensorWord::single(s.clone())),
            other => Err(format!("`{name}` is a {}, expected a word or state", other.kind())),
        }
    }

    fn word_expr(&self, expr: &WordExpr) -> Result<TensorWord, String> {
        match expr {
            WordExpr::Name(n) => self.word(n),
            WordExpr::Unit => Ok(TensorWord::unit()),
            WordExpr::Tensor(l, r) => Ok(self.word_expr(l)?.tensor(&self.word_expr(r)?)),
        }
    }

    fn generator(&self, generator: &GenExpr) -> Result<StrokeGen, String> {
        Ok(match *generator {
            GenExpr::SetColor(c) => StrokeGen::SetColor(c),
            GenExpr::AddColor(c, l) => StrokeGen::AddColor(c, load(l)?),
            GenExpr::SetTexture(t) => StrokeGen::set_texture(t).map_err(|e| e.to_string())?,
            GenExpr::ScaleLoad(n, d) => StrokeGen::ScaleLoad(
                Ratio::new(to_u32(n, "numerator")?, to_u32(d, "denominator")?).map_err(|e| e.to_string())?,
            ),
            GenExpr::DoNothing => StrokeGen::DoNothing,
        })
    }

    fn position(value: u64) -> Result<usize, String> {
        usize::try_from(value).map_err(|_| format!("position {value} is too large"))
    }

    fn run(&mut self, stmt: &Stmt) -> Result<(), String> {
        let paint = |e: PaintError| e.to_string();
        match stmt {
            Stmt::Region { name, x, y, width, height } => {
                let rect =
                    Rect::new(to_u32(*x, "x")?, to_u32(*y, "y")?, to_u32(*width, "width")?, to_u32(*height, "height")?);
                self.exec.regions.register(Region::new(name.clone(), rect)).map_err(paint)?;
            }
            Stmt::State { name, region, color, texture, load: l } => {
                if !self.exec.regions.contains(region) {
                    return Err(format!("unbound region `{region}`"));
                }
                let state = PaintState::new(region.clone(), *color, *texture, load(*l)?).map_err(paint)?;
                self.exec.values.insert(name.clone(), Value::State(state));
            }
            Stmt::Word { name, expr } => {
                let word = self.word_expr(expr)?;
                self.exec.values.insert(name.clone(), Value::Word(word));
            }
            Stmt::Stroke { name, generator } => {
                let generator = self.generator(generator)?;
                self.exec.values.insert(name.clone(), Value::Stroke(generator));
            }
            Stmt::Apply { stroke, word, position } => {
                let generator = match self.lookup(stroke)? {
                    Value::Stroke(g) => *g,
                    other => return Err(format!("`{stroke}` is a {}, expected a stroke", other.kind())),
                };
                let target = self.word(word)?;
                let f = stroke_morphism(&target, Self::position(*position)?, generator).map_err(paint)?;
                self.exec.values.insert(word.clone(), Value::Word(f.target().clone()));
            }
            Stmt::Braid { word, position } => {
                let target = self.word(word)?;
                let beta = braid(&target, Self::position(*position)?).map_err(paint)?;
                self.exec.values.insert(word.clone(), Value::Word(beta.target().clone()));
            }
            Stmt::Check { seed, samples } => {
                let pool: Vec<Region> =
                    if self.exec.regions.len() >= 2 { self.exec.regions.iter().collect() } else { builtin_pool() };
                let samples = match samples {
                    Some(n) => usize::try_from(*n).map_err(|_| format!("samples {n} is too large"))?,
                    None => self.opts.samples,
                };
                let cfg = LawCheckConfig {
                    seed: seed.unwrap_or(self.opts.seed),
                    samples,
                    region_pool: pool,
                    ..LawCheckConfig::default()
                };
                let report = run_all(&cfg).map_err(paint)?;
                self.exec.outputs.push(Output::Report(report));
            }
            Stmt::Render { word, path, size } => {
                let target = self.word(word)?;
                let canvas = eval_word(&target, &self.exec.regions).map_err(paint)?;
                let (w, h) = match size {
                    Some((w, h)) => (to_u32(*w, "width")?, to_u32(*h, "height")?),
                    None => self.exec.regions.extent(),
                };
                let image = rasterize(&canvas, &self.exec.regions, w, h).map_err(paint)?;
                self.exec.outputs.push(Output::Render { word: word.clone(), path: path.clone(), image });
            }
            Stmt::Print { name } => {
                let target = self.word(name)?;
                let canvas = eval_word(&target, &self.exec.regions).map_err(paint)?;
                self.exec.outputs.push(Output::Print { name: name.clone(), json: canvas.to_json() });
            }
        }
        Ok(())
    }
}

fn load(value: u64) -> Result<Load, String> {
    u16::try_from(value).ok().and_then(|v| Load::new(v).ok()).ok_or_else(|| format!("load {value} outside [0, 256]"))
}

fn located(statement: &Statement, message: String) -> EvalError {
    let Span { line, column, .. } = statement.span;
    EvalError { message, line, column, span: statement.span }
}

/// Runs a script statement by statement. Stops at the first error, which
/// carries the position of the failing statement.
pub fn eval_script(script: &Script, opts: &EvalOptions) -> Result<Execution, EvalError> {
    let mut machine = Machine { opts, exec: Execution::default() };
    for statement in &script.statements {
        machine.run(&statement.stmt).map_err(|m| located(statement, m))?;
    }
    Ok(machine.exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::{Color, Texture};
    use crate::dsl::{parse_source, QUICKSTART};
    use crate::render::GROUND;

    fn run(text: &str) -> Result<Execution, EvalError> {
        eval_script(&parse_source(text).unwrap(), &EvalOptions::default())
    }

    #[test]
    fn quickstart_end_to_end() {
        let exec = run(QUICKSTART).unwrap();
        assert!(exec.laws_passed());
        let renders: Vec<_> = exec.renders().collect();
        assert_eq!(renders.len(), 1);
        assert_eq!(renders[0].1, "out.ppm");
        assert_eq!((renders[0].2.width(), renders[0].2.height()), (64, 32));
        let w = exec.word("w").unwrap();
        assert_eq!(
            w.factors().iter().map(|s| s.texture()).collect::<Vec<_>>(),
            vec![Texture::Transparent, Texture::Smooth, Texture::Impasto]
        );
        let text = exec.stdout_text();
        assert!(text.contains("\"passed\": true"));
        assert!(text.trim_end().ends_with(&exec.canvas("w").unwrap().to_json()));
    }

    #[test]
    fn render_of_empty_word_is_blank() {
        let exec = run("region R rect 0 0 4 4\nword w = I\nrender w \"e.ppm\"").unwrap();
        let (_, _, image) = exec.renders().next().unwrap();
        assert!(image.pixels().iter().all(|p| *p == GROUND));
        assert_eq!((image.width(), image.height()), (4, 4));
    }

    #[test]
    fn double_braid_restores() {
        let text = "region A rect 0 0 1 1\nstate a = paint A color #FF0000 texture smooth load 9\nstate b = paint A color #0000FF texture impasto load 99\nword w = a (x) b\nword orig = w\nbraid w at 0\nbraid w at 0";
        let exec = run(text).unwrap();
        assert_eq!(exec.word("w"), exec.word("orig"));
    }

    #[test]
    fn apply_rebinds_word() {
        let text = "region A rect 0 0 1 1\nstate a = paint A color #FF0000 texture smooth load 9\nstroke y = add_color #FFFF00 128\nword w = a\napply y to w at 0";
        let exec = run(text).unwrap();
        assert_eq!(exec.word("w").unwrap().factors()[0].color(), Color::new(65535, 32768, 0));
    }

    #[test]
    fn evaluation_errors_carry_positions() {
        let e = run("region R1 rect 0 0 2 2\nstate s = paint R9 color #FFFFFF texture smooth load 3").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        assert!(e.message.contains("R9"));

        let e = run("region A rect 0 0 2 2\nregion B rect 1 1 2 2").unwrap_err();
        assert!(e.message.contains("overlaps"));
        assert_eq!(e.line, 2);

        let e = run("print nope").unwrap_err();
        assert!(e.message.contains("unbound identifier `nope`"));

        let e = run(
            "region A rect 0 0 1 1\nstate a = paint A color #FF0000 texture smooth load 9\nword w = a\n  braid w at 0",
        )
        .unwrap_err();
        assert_eq!((e.line, e.column), (4, 3));
        assert!(e.span.contains(4, 13));

        let e = run("region A rect 0 0 1 1\nstate a = paint A color #FF0000 texture smooth load 300").unwrap_err();
        assert!(e.message.contains("load 300"));

        let e = run("stroke f = scale_load 1/0").unwrap_err();
        assert!(e.message.contains("denominator"));

        let e = run("region A rect 0 0 1 1\nstate a = paint A color #FF0000 texture smooth load 9\nword w = a\napply w to w at 0").unwrap_err();
        assert!(e.message.contains("expected a stroke"));
    }

    #[test]
    fn render_bounds_checked() {
        let text =
            "region A rect 0 0 8 8\nstate a = paint A color #FF0000 texture smooth load 9\nrender a \"x.ppm\" size 4 4";
        let e = run(text).unwrap_err();
        assert!(e.message.contains("does not fit"));
    }

    #[test]
    fn check_uses_option_defaults() {
        let script = parse_source("check laws").unwrap();
        let exec = eval_script(&script, &EvalOptions { seed: 9, samples: 3 }).unwrap();
        let Output::Report(report) = &exec.outputs[0] else { panic!() };
        assert_eq!(report.seed, 9);
        assert!(report.laws.iter().all(|e| e.instances == 3));
    }

    #[test]
    fn deterministic_outputs() {
        let a = run(QUICKSTART).unwrap();
        let b = run(QUICKSTART).unwrap();
        assert_eq!(a.stdout_text(), b.stdout_text());
        assert_eq!(a.renders().next().unwrap().2, b.renders().next().unwrap().2);
    }
}
