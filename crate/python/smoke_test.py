"""Smoke test for the spslab extension module.

Run after `cargo build -p spslab-python --features extension-module`; the
built library is copied next to a temporary module path if `spslab` is not
already importable.
"""

import glob
import importlib
import json
import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    try:
        return importlib.import_module("spslab")
    except ImportError:
        pass
    built = sorted(
        glob.glob(os.path.join(ROOT, "target", "*", "libspslab.so"))
        + glob.glob(os.path.join(ROOT, "target", "*", "libspslab.dylib")),
        key=os.path.getmtime,
    )
    if not built:
        sys.exit("spslab is not built; run cargo build -p spslab-python --features extension-module")
    tmp = tempfile.mkdtemp()
    shutil.copy(built[-1], os.path.join(tmp, "spslab.so"))
    sys.path.insert(0, tmp)
    return importlib.import_module("spslab")


def main():
    sp = load()

    s7 = sp.build_st(1)
    assert len(json.loads(s7)["elements"]) == 7
    assert sp.con_size(s7) == 5
    assert sp.is_patch(s7)
    assert sp.validate(s7) == []

    con = json.loads(sp.con(s7))
    assert len(con["jir_poset"]["elements"]) == 3
    assert len(con["jir_poset"]["covers"]) == 2

    lamps = json.loads(sp.lamps(s7))["lamps"]
    assert sorted(l["kind"] for l in lamps) == ["internal", "left-boundary", "right-boundary"]

    for m in range(1, 4):
        for n in range(1, 4):
            assert sp.con_size(sp.build_grid(m, n)) == 2 ** (m + n)

    b2 = sp.build_grid(1, 1)
    assert sp.con_size(sp.theorem2([b2, b2], "H")) == 16
    assert sp.con_size(sp.theorem2([s7])) == 9

    report = json.loads(sp.check(s7))
    assert all(c["verdict"] != "fail" for c in report["checks"])

    script = json.loads(sp.decompose(s7))
    assert script == {"grid": [1, 1], "steps": [{"cell": [1, 1], "rank": 1}]}

    assert sp.render_diagram(s7).startswith("<svg")
    assert sp.corpus_sizes(7) == [4, 6, 7]

    try:
        sp.con_size('{"elements": ["a"], "covers": [["a", "b"]]}')
    except ValueError:
        pass
    else:
        raise AssertionError("unknown element accepted")

    print("spslab smoke test: ok")


if __name__ == "__main__":
    main()
