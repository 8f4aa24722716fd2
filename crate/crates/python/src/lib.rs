//! Python bindings. Colors cross the boundary as hex strings, canvases and
//! law reports as JSON text, images as binary PPM.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use paintcat_core::category::{self, Ratio, TestEnsemble};
use paintcat_core::dsl::{self, EvalOptions};
use paintcat_core::laws::{self, LawCheckConfig};
use paintcat_core::{Color, Load, Rect, Region, Regions as CoreRegions, StrokeGen, TensorWord, Texture};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn color(hex: &str) -> PyResult<Color> {
    Color::parse_hex(hex).map_err(value_error)
}

fn load(value: u16) -> PyResult<Load> {
    Load::new(value).map_err(value_error)
}

fn texture(name: &str) -> PyResult<Texture> {
    name.parse::<Texture>().map_err(value_error)
}

fn config(seed: u64, samples: usize) -> PyResult<LawCheckConfig> {
    let cfg = LawCheckConfig::with_seed(seed).samples(samples);
    cfg.validate().map_err(value_error)?;
    Ok(cfg)
}

#[pyclass(name = "PaintState", module = "paintcat", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPaintState(paintcat_core::PaintState);

#[pymethods]
impl PyPaintState {
    #[new]
    fn new(region: &str, color: &str, texture: &str, load: u16) -> PyResult<Self> {
        paintcat_core::PaintState::new(region, self::color(color)?, self::texture(texture)?, self::load(load)?)
            .map(Self)
            .map_err(value_error)
    }

    #[getter]
    fn region(&self) -> &str {
        self.0.region()
    }

    /// 16-bit hex form, `#RRRRGGGGBBBB`.
    #[getter]
    fn color(&self) -> String {
        self.0.color().to_hex16()
    }

    #[getter]
    fn texture(&self) -> &'static str {
        self.0.texture().name()
    }

    #[getter]
    fn load(&self) -> u16 {
        self.0.load().value()
    }

    fn __repr__(&self) -> String {
        format!(
            "PaintState({:?}, {:?}, {:?}, {})",
            self.0.region(),
            self.0.color().to_hex_short(),
            self.0.texture().name(),
            self.0.load().value()
        )
    }
}

#[pyclass(name = "Word", module = "paintcat", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyWord(TensorWord);

#[pymethods]
impl PyWord {
    #[new]
    #[pyo3(signature = (states = Vec::new()))]
    fn new(states: Vec<PyRef<'_, PyPaintState>>) -> Self {
        Self(TensorWord::new(states.iter().map(|s| s.0.clone()).collect()))
    }

    #[staticmethod]
    fn unit() -> Self {
        Self(TensorWord::unit())
    }

    fn tensor(&self, other: &PyWord) -> Self {
        Self(self.0.tensor(&other.0))
    }

    fn __matmul__(&self, other: &PyWord) -> Self {
        self.tensor(other)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn states(&self) -> Vec<PyPaintState> {
        self.0.factors().iter().cloned().map(PyPaintState).collect()
    }

    fn __repr__(&self) -> String {
        format!("Word({})", self.0)
    }
}

#[pyclass(name = "Regions", module = "paintcat", frozen, skip_from_py_object)]
struct PyRegions(CoreRegions);

#[pymethods]
impl PyRegions {
    /// `regions` is a list of `(name, x, y, width, height)` tuples.
    #[new]
    fn new(regions: Vec<(String, u32, u32, u32, u32)>) -> PyResult<Self> {
        let list: Vec<Region> =
            regions.into_iter().map(|(n, x, y, w, h)| Region::new(n, Rect::new(x, y, w, h))).collect();
        CoreRegions::from_list(&list).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn builtin() -> PyResult<Self> {
        CoreRegions::from_list(&laws::builtin_pool()).map(Self).map_err(value_error)
    }

    fn names(&self) -> Vec<String> {
        self.0.names().map(str::to_owned).collect()
    }

    fn extent(&self) -> (u32, u32) {
        self.0.extent()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyclass(name = "Morphism", module = "paintcat", frozen, skip_from_py_object)]
struct PyMorphism(category::Morphism);

fn generator(op: &str, args: &Bound<'_, pyo3::types::PyTuple>) -> PyResult<StrokeGen> {
    let arg = |i: usize| args.get_item(i).map_err(|_| value_error(format!("`{op}` expects more arguments")));
    let expect = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(value_error(format!("`{op}` takes {n} argument(s), got {}", args.len())))
        }
    };
    match op {
        "set_color" => {
            expect(1)?;
            Ok(StrokeGen::SetColor(color(&arg(0)?.extract::<String>()?)?))
        }
        "add_color" => {
            expect(2)?;
            Ok(StrokeGen::AddColor(color(&arg(0)?.extract::<String>()?)?, load(arg(1)?.extract()?)?))
        }
        "set_texture" => {
            expect(1)?;
            StrokeGen::set_texture(texture(&arg(0)?.extract::<String>()?)?).map_err(value_error)
        }
        "scale_load" => {
            expect(2)?;
            Ok(StrokeGen::ScaleLoad(Ratio::new(arg(0)?.extract()?, arg(1)?.extract()?).map_err(value_error)?))
        }
        "do_nothing" => {
            expect(0)?;
            Ok(StrokeGen::DoNothing)
        }
        other => Err(value_error(format!("unknown stroke `{other}`"))),
    }
}

#[pymethods]
impl PyMorphism {
    #[staticmethod]
    fn identity(word: &PyWord) -> Self {
        Self(category::id_morphism(&word.0))
    }

    #[staticmethod]
    fn braid(word: &PyWord, position: usize) -> PyResult<Self> {
        category::braid(&word.0, position).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn braid_blocks(a: &PyWord, b: &PyWord) -> Self {
        Self(category::braid_blocks(&a.0, &b.0))
    }

    /// `Morphism.stroke(word, 1, "add_color", "#2233CC", 128)`
    #[staticmethod]
    #[pyo3(signature = (word, position, op, *args))]
    fn stroke(word: &PyWord, position: usize, op: &str, args: &Bound<'_, pyo3::types::PyTuple>) -> PyResult<Self> {
        category::stroke_morphism(&word.0, position, generator(op, args)?).map(Self).map_err(value_error)
    }

    #[getter]
    fn source(&self) -> PyWord {
        PyWord(self.0.source().clone())
    }

    #[getter]
    fn target(&self) -> PyWord {
        PyWord(self.0.target().clone())
    }

    /// `self ∘ first`: runs `first`, then `self`.
    fn after(&self, first: &PyMorphism) -> PyResult<Self> {
        category::compose(&self.0, &first.0).map(Self).map_err(value_error)
    }

    fn tensor(&self, other: &PyMorphism) -> Self {
        Self(category::tensor_morphisms(&self.0, &other.0))
    }

    fn apply(&self, word: &PyWord) -> PyResult<PyWord> {
        self.0.apply(word.0.factors()).map(|s| PyWord(TensorWord::new(s))).map_err(value_error)
    }

    #[pyo3(signature = (other, seed = 42, samples = 64))]
    fn equals(&self, other: &PyMorphism, seed: u64, samples: usize) -> bool {
        category::morphism_equal(&self.0, &other.0, &TestEnsemble::new(seed, samples))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Morphism({})", self.0)
    }
}

#[pyfunction]
fn mix_channel(bottom: u16, top: u16, load: u16) -> PyResult<u16> {
    Ok(paintcat_core::mix_channel(bottom, top, self::load(load)?))
}

#[pyfunction]
fn color_distance(a: &str, b: &str) -> PyResult<u16> {
    Ok(paintcat_core::color_distance(color(a)?, color(b)?))
}

/// Canonical canvas JSON for `word` painted onto `regions`.
#[pyfunction]
fn eval_word(word: &PyWord, regions: &PyRegions) -> PyResult<String> {
    paintcat_core::eval_word(&word.0, &regions.0).map(|c| c.to_json()).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (word, regions, width = None, height = None))]
fn render<'py>(
    py: Python<'py>,
    word: &PyWord,
    regions: &PyRegions,
    width: Option<u32>,
    height: Option<u32>,
) -> PyResult<Bound<'py, PyBytes>> {
    let (ew, eh) = regions.0.extent();
    let canvas = paintcat_core::eval_word(&word.0, &regions.0).map_err(value_error)?;
    let image = paintcat_core::rasterize(&canvas, &regions.0, width.unwrap_or(ew), height.unwrap_or(eh))
        .map_err(value_error)?;
    Ok(PyBytes::new(py, &paintcat_core::write_ppm(&image)))
}

#[pyfunction]
#[pyo3(signature = (seed = 42, samples = 64))]
fn check_laws(py: Python<'_>, seed: u64, samples: usize) -> PyResult<String> {
    let cfg = config(seed, samples)?;
    let report = py.detach(|| laws::run_all(&cfg)).map_err(value_error)?;
    Ok(report.to_json())
}

#[pyfunction]
#[pyo3(signature = (name, seed = 42, samples = 64))]
fn check_law(name: &str, seed: u64, samples: usize) -> PyResult<String> {
    let entry = laws::check_law(name, &config(seed, samples)?).map_err(value_error)?;
    serde_json::to_string_pretty(&entry).map_err(value_error)
}

/// Runs a script without touching the file system. Returns a dict with
/// `stdout`, `laws_passed` and `renders`, a list of `(path, ppm_bytes)`.
#[pyfunction]
#[pyo3(signature = (source, seed = 42, samples = 64))]
fn run_script<'py>(
    py: Python<'py>,
    source: &str,
    seed: u64,
    samples: usize,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let exec = dsl::run_source(source, &EvalOptions { seed, samples }).map_err(value_error)?;
    let out = pyo3::types::PyDict::new(py);
    out.set_item("stdout", exec.stdout_text())?;
    out.set_item("laws_passed", exec.laws_passed())?;
    let renders: Vec<(String, Bound<'py, PyBytes>)> = exec
        .renders()
        .map(|(_, path, image)| (path.to_owned(), PyBytes::new(py, &paintcat_core::write_ppm(image))))
        .collect();
    out.set_item("renders", renders)?;
    Ok(out)
}

#[pyfunction]
fn format_script(source: &str) -> PyResult<String> {
    dsl::parse_source(source).map(|s| dsl::pretty_print(&s)).map_err(value_error)
}

#[pymodule]
pub fn paintcat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPaintState>()?;
    m.add_class::<PyWord>()?;
    m.add_class::<PyRegions>()?;
    m.add_class::<PyMorphism>()?;
    m.add_function(wrap_pyfunction!(mix_channel, m)?)?;
    m.add_function(wrap_pyfunction!(color_distance, m)?)?;
    m.add_function(wrap_pyfunction!(eval_word, m)?)?;
    m.add_function(wrap_pyfunction!(render, m)?)?;
    m.add_function(wrap_pyfunction!(check_laws, m)?)?;
    m.add_function(wrap_pyfunction!(check_law, m)?)?;
    m.add_function(wrap_pyfunction!(run_script, m)?)?;
    m.add_function(wrap_pyfunction!(format_script, m)?)?;
    m.add("LAWS", laws::ALL_LAWS.to_vec())?;
    Ok(())
}
