"""Smoke test for the Python bindings.

Builds the extension with cargo, loads it, and exercises the main entry
points. Run from anywhere: `python3 python/smoke_test.py`.
"""

import importlib.util
import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    subprocess.run(["cargo", "build", "--release", "-p", "paintcat-py"], cwd=ROOT, check=True)
    built = ROOT / "target" / "release" / "libpaintcat.so"
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(built, tmp / "paintcat.so")
    spec = importlib.util.spec_from_file_location("paintcat", tmp / "paintcat.so")
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    pc = load_module()

    assert pc.mix_channel(0, 65535, 128) == 32768
    assert pc.mix_channel(1234, 999, 0) == 1234
    assert pc.color_distance("#FF0000", "#0000FF") == 65535

    red = pc.PaintState("R1", "#FF0000", "smooth", 200)
    blue = pc.PaintState("R1", "#0000FF", "smooth", 200)
    assert red.color == "#FFFF00000000" and red.load == 200
    word = pc.Word([red]) @ pc.Word([blue])
    assert len(word) == 2 and pc.Word.unit() @ word == word

    regions = pc.Regions.builtin()
    forward = json.loads(pc.eval_word(word, regions))
    swapped = pc.Morphism.braid(word, 0)
    assert swapped.target == pc.Word([blue, red])
    backward = json.loads(pc.eval_word(swapped.target, regions))
    assert forward["R1"] != backward["R1"], "layer order should matter"

    twice = pc.Morphism.braid(swapped.target, 0).after(swapped)
    assert twice.equals(pc.Morphism.identity(word))

    thin = pc.Morphism.stroke(word, 1, "scale_load", 1, 2)
    assert thin.target.states[1].load == 100
    assert str(pc.Morphism.stroke(word, 0, "set_texture", "stippled")) == "(stroke 0 (set_texture stippled))"

    ppm = pc.render(word, regions)
    assert ppm.startswith(b"P6\n96 32\n255\n")

    report = json.loads(pc.check_laws(seed=7, samples=8))
    assert report["passed"] and len(report["laws"]) == len(pc.LAWS)

    quickstart = (ROOT / "crates" / "core" / "examples" / "quickstart.paint").read_text()
    result = pc.run_script(quickstart)
    golden = (ROOT / "crates" / "core" / "tests" / "golden" / "quickstart.ppm").read_bytes()
    assert result["laws_passed"]
    assert result["renders"] == [("out.ppm", golden)]
    assert pc.format_script(quickstart) == quickstart

    try:
        pc.PaintState("R1", "#FF0000", "blank", 10)
    except ValueError:
        pass
    else:
        raise AssertionError("blank texture accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    sys.exit(main())
