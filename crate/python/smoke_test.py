"""Smoke test for the Python bindings.

Imports ``fewbraid`` if it is installed; otherwise builds the extension with
cargo and loads it from a temporary directory.
"""

import cmath
import importlib
import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        return importlib.import_module("fewbraid")
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "fewbraid-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / ("libfewbraid_py.dylib" if sys.platform == "darwin" else "libfewbraid_py.so")
    where = Path(tempfile.mkdtemp(prefix="fewbraid-"))
    shutil.copy(lib, where / "fewbraid.so")
    sys.path.insert(0, str(where))
    return importlib.import_module("fewbraid")


def main():
    fb = load()

    half_twist = fb.ArtinWord(3, [1, 2, 1])
    assert half_twist.normal_form() == (1, [])
    assert half_twist == fb.ArtinWord(3, [2, 1, 2])
    assert half_twist.compose(half_twist.invert()).normal_form() == (0, [])

    d = 5
    b1, t = fb.AnnularWord.b(1, d), fb.AnnularWord.tau(d)
    # time order: τ★b_1 is the word τ⁻¹ b_1 τ
    assert t.invert() * b1 * t == fb.AnnularWord.b(2, d)
    assert fb.AnnularWord(d, "r1").is_pure()
    assert fb.AnnularWord(d, "r1").winding() == [1, 0, 0, 0, 0]
    assert fb.AnnularWord(3, "r1 r1").wreath_image(2)[1] == [0, 0, 0]

    w = fb.loop_monodromy([0, 3, 7], "gamma", eps=0.042)
    assert w == fb.AnnularWord(7, "B1"), str(w)
    assert str(fb.loop_monodromy([0, 2, 5], "ell", j=3, t=math.e**2)) == "b3"
    assert str(fb.loop_monodromy([0, 2, 3], "monomial")) == "t"

    r = fb.roots([-1, 0, 1], [0, 1, 3])
    assert len(r) == 3 and all(abs(z**3 - 1) < 1e-12 for z in r)
    assert not fb.is_nonsingular([1, 2, 1], [0, 1, 2])

    on_curve = cmath.exp(1j * 0.4)
    assert fb.is_tropical_condition(2, 3, 0.5, 0.5)
    assert fb.tropical_components(2, 3, 0.5, 0.5) == 3
    assert fb.tropical_components(2, 3, -(on_curve ** -2), on_curve ** -3) == 2

    assert fb.bullet_support(8, [1, 5], [3]) == [1, 5]
    e = fb.euclid_word(3, 2, 6)
    assert e["branch"] == "ℓ=2,k=3" and e["verified"] and e["value"]

    loops = fb.surjectivity_witnesses([0, 2, 3])
    assert [x["target"] for x in loops] == ["b1", "b2", "b3", "t"]
    assert all(x["verified"] for x in loops)

    try:
        fb.loop_monodromy([0, 2, 3, 5], "gamma")
    except ValueError:
        pass
    else:
        raise AssertionError("gamma needs a trinomial")

    print(f"fewbraid {fb.__version__}: python smoke test passed")


if __name__ == "__main__":
    main()
