import re

import pytest

from simflip.cli import main
from simflip.core import is_isomorphic, octahedron, read_tri, standard, validate, write_tri
from simflip.figure import emit_figure, tutte_layout
from simflip.flips import check_flipset, read_flipset
from simflip.separating import separating_triangles


def _kv(text):
    return dict(re.findall(r"(\w+)=(\S+)", text.strip().splitlines()[-1]))


def test_generate_standard(tmp_path, capsys):
    out = tmp_path / "d10.tri"
    assert main(["generate", "--standard", "10", "-o", str(out)]) == 0
    assert read_tri(out) == standard(10)


def test_generate_random_seeded(tmp_path):
    a, b = tmp_path / "a.tri", tmp_path / "b.tri"
    main(["--seed", "5", "generate", "--random", "30", "-o", str(a)])
    main(["generate", "--random", "30", "--seed", "5", "-o", str(b)])
    assert a.read_text() == b.read_text()


def test_four_connect(tmp_path, capsys):
    src = tmp_path / "d10.tri"
    write_tri(standard(10), src)
    flips, out = tmp_path / "s.txt", tmp_path / "u.tri"
    assert main(["four-connect", str(src), "--flips", str(flips), "-o", str(out)]) == 0
    kv = _kv(capsys.readouterr().out)
    assert kv["separating_triangles"] == "0"
    U = read_tri(out)
    assert validate(U).ok and not separating_triangles(U)
    assert check_flipset(standard(10), read_flipset(flips)).ok


def test_four_connect_three(tmp_path, capsys):
    src = tmp_path / "r.tri"
    main(["--seed", "2", "generate", "--random", "40", "-o", str(src)])
    assert main(["four-connect", str(src), "--three"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3


def test_check_flipset_consecutive(tmp_path, capsys):
    src = tmp_path / "o.tri"
    write_tri(octahedron(), src)
    a, b, c = octahedron().face_list[0]
    s = tmp_path / "s.txt"
    s.write_text(f"{a} {b}\n{b} {c}\n")
    assert main(["check-flipset", str(src), str(s)]) == 1
    out = capsys.readouterr().out
    assert "consecutive" in out and _kv(out.splitlines()[0])["flippable"] == "false"


def test_morph_and_apply_agree(tmp_path, capsys):
    a, b = tmp_path / "a.tri", tmp_path / "b.tri"
    main(["--seed", "1", "generate", "--random", "30", "-o", str(a)])
    main(["--seed", "2", "generate", "--random", "30", "-o", str(b)])
    seq = tmp_path / "seq.jsonl"
    capsys.readouterr()
    assert main(["morph", str(a), str(b), "-o", str(seq), "--verify", "--stats"]) == 0
    m = _kv(capsys.readouterr().out)
    assert float(m["steps"]) <= float(m["step_bound"])
    end = tmp_path / "end.tri"
    assert main(["apply", str(a), "--sequence", str(seq), "-o", str(end)]) == 0
    ap = _kv(capsys.readouterr().out)
    assert ap["code"] == m["code"]
    assert is_isomorphic(read_tri(end), read_tri(b)) is not None


def test_outer_morph(tmp_path, capsys):
    a, b = tmp_path / "a.outer", tmp_path / "b.outer"
    main(["--seed", "1", "generate", "--outer", "40", "-o", str(a)])
    main(["--seed", "2", "generate", "--outer", "40", "-o", str(b)])
    capsys.readouterr()
    assert main(["outer-morph", str(a), str(b), "-o", str(tmp_path / "o.jsonl"), "--verify"]) == 0
    kv = _kv(capsys.readouterr().out)
    assert float(kv["steps"]) <= float(kv["step_bound"])


def test_hamiltonize(tmp_path, capsys):
    src = tmp_path / "r.tri"
    main(["--seed", "3", "generate", "--random", "40", "-o", str(src)])
    assert main(["hamiltonize", str(src)]) == 0
    out = capsys.readouterr().out
    cyc = [int(t) for t in out.split("cycle:")[1].splitlines()[0].split()]
    assert sorted(cyc) == list(range(40))


def test_maxflip_modes(tmp_path, capsys):
    ico = tmp_path / "ico.tri"
    main(["generate", "--named", "icosahedron", "-o", str(ico)])
    assert main(["maxflip", str(ico), "--exact"]) == 0
    assert _kv(capsys.readouterr().out)["msf_exact"] == "10"
    k4 = tmp_path / "k4.tri"
    main(["generate", "--named", "k4", "-o", str(k4)])
    w = tmp_path / "w.txt"
    assert main(["maxflip", "--seven-family", str(k4), "--exact", "-o", str(w)]) == 0
    kv = _kv(capsys.readouterr().out)
    assert kv["msf_exact"] == "12" and len(read_flipset(w)) == 12


def test_stats_and_iso(tmp_path, capsys):
    a = tmp_path / "a.tri"
    write_tri(standard(8), a)
    assert main(["stats", str(a)]) == 0
    kv = _kv(capsys.readouterr().out)
    assert kv["dominant"] == "2" and kv["n"] == "8"
    assert main(["iso", str(a), str(a), "--iso-mode", "reflect"]) == 0
    assert _kv(capsys.readouterr().out)["isomorphic"] == "true"


def test_validate_batch(tmp_path, capsys):
    good, bad = tmp_path / "g.tri", tmp_path / "b.tri"
    write_tri(standard(6), good)
    bad.write_text("n 4\n0: 1 2\n")
    assert main(["validate", str(good)]) == 0
    assert main(["validate", str(good), str(bad), "--jobs", "2"]) == 1


def test_exit_codes(tmp_path, capsys):
    with pytest.raises(SystemExit) as ei:
        main(["nonsense"])
    assert ei.value.code == 64
    assert main(["generate"]) == 64
    assert main(["stats", str(tmp_path / "missing.tri")]) == 1
    a, b = tmp_path / "a.tri", tmp_path / "b.tri"
    write_tri(standard(6), a)
    write_tri(standard(7), b)
    assert main(["morph", str(a), str(b)]) == 1


def test_figure_flags(tmp_path):
    src = tmp_path / "o.tri"
    write_tri(octahedron(), src)
    s = tmp_path / "s.txt"
    assert main(["maxflip", str(src), "-o", str(s), "--svg", str(tmp_path / "f.svg"),
                 "--dot", str(tmp_path / "f.dot")]) == 0
    svg = (tmp_path / "f.svg").read_text()
    assert svg.count("stroke-dasharray") == len(read_flipset(s)) == 3
    assert (tmp_path / "f.dot").read_text().count("dashed") == 3


def test_figure_layout():
    T = standard(8)
    pos = tutte_layout(T)
    for v in range(T.n):
        if v in T.outerface:
            continue
        nb = pos[list(T.rotation[v])].mean(axis=0)
        assert abs(pos[v] - nb).max() < 1e-9
    dot, svg = emit_figure(octahedron())
    assert svg.count("<circle") == 6 and dot.count("--") == 12
    dot, svg = emit_figure(octahedron().__class__.from_faces(
        [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)], 4))
    assert svg.count("<circle") == 4
