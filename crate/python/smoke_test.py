"""Smoke test for the Python bindings.

Build first:  pip install -e crates/py --no-build-isolation
Run:          python python/smoke_test.py   (or pytest python/)
"""

import json
import pathlib

import sympdeg

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def load(name):
    raw = json.loads((DATA / name).read_text())
    if "rows" in raw:
        return sympdeg.Rep.from_ranks(raw["rows"])
    return sympdeg.Rep.from_json(json.dumps(raw))


def test_ranks_and_dual():
    m = load("m_example.json")
    assert m.ranks() == [[1, 1, 1, 1, 0], [2, 2, 2, 1], [4, 2, 1], [2, 1], [1]]
    assert sympdeg.Rep.from_ranks(m.ranks()) == m
    assert m.dual().dual() == m
    assert sympdeg.Rep.from_json(m.to_json()) == m
    assert sympdeg.realized_ranks(m, seed=5) == m.ranks()


def test_hom_ext():
    a = sympdeg.Rep(3, [(1, 2, 1)])
    b = sympdeg.Rep(3, [(2, 3, 1)])
    assert sympdeg.hom(a, a) == 1
    assert sympdeg.ext(a, b) == 1
    assert sympdeg.ext(b, a) == 0


def test_degenerations():
    m, n = load("ex1_M.json"), load("ex1_N.json")
    assert sympdeg.degenerates(m, n)
    assert not sympdeg.degenerates(n, m)
    path = sympdeg.degeneration_path(m, n)
    assert path[-1][1] == n
    assert sympdeg.sym_degenerates(m, n)
    steps = json.loads(sympdeg.sym_path(m, n))
    assert len(steps) >= 2
    table = sympdeg.sym_table(m, n)
    assert table.startswith("+------+")
    assert table == sympdeg.sym_table(m, n)
    sympdeg.verify_form(m, "odd-neg", seed=1)


def test_errors():
    try:
        sympdeg.Rep.from_ranks([[1, 2], [1]])
    except sympdeg.SympdegError as e:
        assert "InvalidRankSequence" in str(e)
    else:
        raise AssertionError("expected SympdegError")
    try:
        sympdeg.degeneration_path(load("ex1_N.json"), load("ex1_M.json"))
    except sympdeg.SympdegError as e:
        assert "NotComparable" in str(e)
    else:
        raise AssertionError("expected SympdegError")


def test_pbw():
    (w, w_line), (u, _) = sympdeg.pbw_words(3, "1")
    assert w == "s4 s3 s4 s2 s3 s4 s1"
    assert len(w_line) == 4
    point = sympdeg.pbw_interior(4, "1,3")
    assert sympdeg.pbw_face_contains(4, "1,3", point, strict=True)
    assert len(sympdeg.pbw_fixed_points(3, "")) > 0
    report = json.loads(sympdeg.pbw_lemma_ui(3, "1,2"))
    assert report["subset"]["n"] == 3


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print("ok", name)
