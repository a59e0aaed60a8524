"""Smoke test for the Python bindings.

Imports an installed ``frechet1d`` module if there is one; otherwise builds
the extension with cargo and loads it from a temporary directory.
"""

import importlib
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        return importlib.import_module("frechet1d")
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "frechet1d-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libfrechet1d_py.so"
    where = Path(tempfile.mkdtemp())
    shutil.copy(lib, where / "frechet1d.so")
    sys.path.insert(0, str(where))
    return importlib.import_module("frechet1d")


def main():
    f = load()
    a, b, c = f.TimeSeries([0, 2]), f.TimeSeries(["0", "1"]), f.TimeSeries([2, 0])

    assert len(a) == 2
    assert a.values() == [Fraction(0), Fraction(2)]
    assert f.TimeSeries([1, "1.5"]).values() == [Fraction(1), Fraction(3, 2)]

    assert f.distance(a, c) == 2
    assert f.decide(a, c, 2) and not f.decide(a, c, "1.99")
    assert f.decide(a, a, 0)

    assert f.translation_distance(a, b) == (Fraction(1, 2), Fraction(1, 2))
    assert f.decide_translation(a, b, Fraction(1, 2)) == Fraction(1, 2)
    assert f.decide_translation(a, b, "0.49") is None

    p, q = f.TimeSeries([1, 2]), f.TimeSeries([1, 1.5])
    assert f.scaling_distance(p, q) == (Fraction(1, 5), Fraction(6, 5))
    assert f.decide_scaling(a, b, 0) == 2

    assert f.TimeSeries([0.5, 0, 4, 1, 5, 4.5]).signature(1) == [0, 1, 2, 3, 4, 5]
    assert f.distance(p.translate(3), q.translate(3)) == f.distance(p, q)

    for bad in ([1], [0, "x"], [0, float("nan")]):
        try:
            f.TimeSeries(bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"accepted {bad!r}")
    try:
        f.decide(a, b, -1)
    except ValueError:
        pass
    else:
        raise AssertionError("accepted a negative delta")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
