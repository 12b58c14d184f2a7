import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from tjkernel.cli import main
from tjkernel.generators import FamilySpec, generate
from tjkernel.graph import build_graph
from tjkernel.instance import TokenInstance
from tjkernel.io import FormatError, emit_instance, parse_instance, parse_witness
from tjkernel.oracle import validate_sequence

K33_TEXT = """c K33 with tokens on one side each
p tj 6 9 2
e 1 4
e 1 5
e 1 6
e 2 4
e 2 5
e 2 6
e 3 4
e 3 5
e 3 6
i 1
i 2
j 4
j 5
"""

P5_TEXT = "p tj 5 4 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ni 1\nj 5\n"

# Matching 1-3, 2-4 between I and J; vertices 5..8 isolated.
SHORTCUT_TEXT = "p tj 8 2 2\ne 1 3\ne 2 4\ni 1\ni 2\nj 3\nj 4\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# --- instance format -------------------------------------------------------


def test_parse_k33():
    parsed = parse_instance(K33_TEXT)
    inst = parsed.instance
    assert inst.graph.vertex_count == 6 and inst.graph.edge_count == 9
    assert inst.i == {0, 1} and inst.j == {3, 4}
    assert parsed.comments == ["K33 with tokens on one side each"]


def test_metadata_comments():
    text = "c genus-upper-bound 1\nc k23-free true\n" + P5_TEXT
    assert parse_instance(text).metadata == {"genus-upper-bound": "1", "k23-free": "true"}


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("p tj 5 4\n", 1, "expects 3 integers"),
        ("e 1 2\np tj 2 1 1\n", 1, "before header"),
        ("p tj 2 1 1\ne 1 3\ni 1\nj 2\n", 2, "outside"),
        ("p tj 2 1 1\ne 1 1\ni 1\nj 2\n", 2, "self-loop"),
        ("p tj 3 2 1\ne 1 2\ne 2 1\ni 1\nj 3\n", 3, "duplicate edge"),
        ("p tj 2 0 1\np tj 2 0 1\n", 2, "duplicate header"),
        ("p tj 3 1 1\ne 1 2\ni 1\n", 3, "'j' lines"),
        ("p tj 3 2 1\ne 1 2\ni 1\nj 3\n", 4, "declares 2 edges"),
        ("p tj 3 1 2\ne 1 2\ni 1\ni 2\nj 3\nj 1\n", 6, "not independent"),
        ("p tj 3 0 1\nx 1\n", 2, "unknown line type"),
        ("p col 3 0 1\n", 1, "p tj"),
        ("", 1, "missing"),
    ],
)
def test_parse_errors(text, line, fragment):
    with pytest.raises(FormatError) as exc:
        parse_instance(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)


@st.composite
def instances(draw):
    n = draw(st.integers(1, 12))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = build_graph(n, edges)
    order = draw(st.permutations(range(n)))
    picks = []
    for v in order:
        if not g.neighbors(v) & set(picks):
            picks.append(v)
    k = draw(st.integers(1, len(picks)))
    j = draw(st.permutations(picks))[:k]
    return TokenInstance(g, frozenset(picks[:k]), frozenset(j))


@settings(max_examples=200)
@given(instances())
def test_round_trip(inst):
    assert parse_instance(emit_instance(inst, ["x"])).instance == inst


# --- kernelize -------------------------------------------------------------


def test_kernelize_k33_identity(capsys, write, tmp_path):
    src = write("k33.tj", K33_TEXT)
    out, stats = tmp_path / "k.tj", tmp_path / "s.json"
    code, _, _ = run(capsys, "kernelize", src, out, "--stats", stats)
    assert code == 0
    assert parse_instance(out.read_text()).instance == parse_instance(K33_TEXT).instance
    doc = json.loads(stats.read_text())
    assert doc["decision"] == "reduced"
    assert doc["kernel_n"] == 6 == parse_instance(out.read_text()).instance.graph.vertex_count
    assert doc["kernel_to_input"] == [1, 2, 3, 4, 5, 6]
    assert [p["action"] for p in doc["pairs"]] == ["kept", "kept"]
    for key in ("x_size", "c1_size", "c2_size", "c3_size", "pair_count", "time_total_s"):
        assert key in doc


def test_kernelize_yes_with_witness(capsys, write, tmp_path):
    src = write("yes.tj", SHORTCUT_TEXT)
    out, wit = tmp_path / "k.tj", tmp_path / "w.txt"
    code, _, _ = run(capsys, "kernelize", src, out, "--witness", wit)
    assert code == 0
    assert out.read_text() == "s YES\n"
    inst = parse_instance(SHORTCUT_TEXT).instance
    moves = parse_witness(wit.read_text())
    assert validate_sequence(inst.graph, inst.i, inst.j, moves)


def test_kernelize_malformed_header(capsys, write, tmp_path):
    src = write("bad.tj", "p tj 5 4\n")
    code, _, err = run(capsys, "kernelize", src, tmp_path / "o.tj")
    assert code == 2
    assert "line 1" in err


def test_kernelize_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "kernelize", tmp_path / "nope.tj", tmp_path / "o.tj")
    assert code == 2 and "error" in err


def test_kernelize_relabels_and_reports_bounds(capsys, tmp_path):
    src, out, stats = tmp_path / "p.tj", tmp_path / "k.tj", tmp_path / "s.json"
    assert run(capsys, "gen", "--family", "planted_c2", "--m", 10, "--k", 1, "--out", src)[0] == 0
    assert run(capsys, "kernelize", src, out, "--stats", stats)[0] == 0
    doc = json.loads(stats.read_text())
    kernel = parse_instance(out.read_text())
    assert doc["kernel_n"] == kernel.instance.graph.vertex_count == 6
    assert doc["kernel_to_input"] == [1, 2, 3, 5, 7, 9]
    assert doc["genus"] == 0 and doc["kernel_size_bound"] == 50
    assert doc["kernel_size_bound_holds"] is True
    assert kernel.metadata["genus-upper-bound"] == "0"


def test_kernelize_k23_mode_rejects_k23(capsys, tmp_path):
    src = tmp_path / "p.tj"
    run(capsys, "gen", "--family", "planted_c2", "--m", 10, "--k", 1, "--out", src)
    code, _, err = run(capsys, "kernelize", src, tmp_path / "o.tj", "--mode", "k23")
    assert code == 2 and "K_2,3" in err


def test_kernelize_idempotent(capsys, tmp_path):
    rng = random.Random(3)
    for trial in range(25):
        fam = rng.choice(["planted_c2", "complete_bipartite", "random_gnp"])
        params = {
            "planted_c2": {"m": rng.randint(4, 20)},
            "complete_bipartite": {"a": rng.randint(2, 4), "b": rng.randint(2, 6)},
            "random_gnp": {"n": rng.randint(6, 20), "p": 0.5},
        }[fam]
        try:
            gen = generate(FamilySpec(fam, params, seed=trial), rng.randint(1, 2))
        except ValueError:
            continue
        src = tmp_path / f"in{trial}.tj"
        once, twice = tmp_path / f"a{trial}.tj", tmp_path / f"b{trial}.tj"
        src.write_text(emit_instance(TokenInstance(gen.graph, gen.i, gen.j)))
        run(capsys, "kernelize", src, once)
        if once.read_text().startswith("s YES"):
            continue
        run(capsys, "kernelize", once, twice)
        assert parse_instance(twice.read_text()).instance == parse_instance(once.read_text()).instance


# --- solve -----------------------------------------------------------------


def test_solve_p5(capsys, write, tmp_path):
    wit = tmp_path / "w.txt"
    code, out, _ = run(capsys, "solve", write("p5.tj", P5_TEXT), "--witness", wit)
    assert code == 0 and out.splitlines()[0] == "s YES"
    assert parse_witness(wit.read_text()) == [(0, 4)]


def test_solve_k33(capsys, write):
    code, out, _ = run(capsys, "solve", write("k33.tj", K33_TEXT))
    assert code == 0 and out.splitlines()[0] == "s NO"


def test_solve_budget(capsys, tmp_path):
    src = tmp_path / "t.tj"
    run(capsys, "gen", "--family", "torus", "--m", 10, "--n", 10, "--k", 3, "--seed", 2, "--out", src)
    code, out, _ = run(capsys, "solve", src, "--budget", 10)
    assert code == 0 and out.splitlines()[0] == "s UNKNOWN"


def test_solve_bidirectional(capsys, write):
    code, out, _ = run(capsys, "solve", write("k33.tj", K33_TEXT), "--bidirectional")
    assert out.splitlines()[0] == "s NO"


# --- verify ----------------------------------------------------------------


def test_verify_k33(capsys, write):
    code, out, _ = run(capsys, "verify", write("k33.tj", K33_TEXT))
    assert code == 0
    assert out.startswith("MATCH original=NO kernel=NO")


def test_verify_planted(capsys, tmp_path):
    src, stats = tmp_path / "p.tj", tmp_path / "s.json"
    run(capsys, "gen", "--family", "planted_c2", "--m", 10, "--k", 1, "--out", src)
    code, out, _ = run(capsys, "verify", src, "--stats", stats)
    assert code == 0 and out.startswith("MATCH original=YES kernel=YES")
    doc = json.loads(stats.read_text())
    assert doc["kernel_n"] < doc["input_n"] == 12


def test_verify_shortcut(capsys, write):
    code, out, _ = run(capsys, "verify", write("yes.tj", SHORTCUT_TEXT))
    assert code == 0
    assert out.startswith("MATCH original=YES kernel=YES") and "kernel_n=decided" in out


def test_verify_unknown(capsys, tmp_path):
    src = tmp_path / "t.tj"
    run(capsys, "gen", "--family", "grid", "--m", 2, "--n", 12, "--k", 3, "--seed", 5, "--out", src)
    code, out, _ = run(capsys, "verify", src, "--budget", 3)
    assert code == 0 and out.startswith("UNKNOWN")


# --- gen -------------------------------------------------------------------


def test_gen_torus_header(capsys, tmp_path):
    out = tmp_path / "t.tj"
    code, _, _ = run(capsys, "gen", "--family", "torus", "--m", 4, "--n", 4, "--k", 2, "--seed", 1, "--out", out)
    assert code == 0
    text = out.read_text()
    assert "p tj 16 32 2" in text.splitlines()
    meta = parse_instance(text).metadata
    assert meta["genus-upper-bound"] == "1" and meta["seed"] == "1"


def test_gen_grid_too_small(capsys):
    code, _, err = run(capsys, "gen", "--family", "grid", "--m", 2, "--n", 2, "--k", 3)
    assert code == 2 and "independent" in err


def test_gen_fan_stdout(capsys):
    code, out, _ = run(capsys, "gen", "--family", "outerplanar_fan", "--n", 10, "--k", 2, "--seed", 3)
    assert code == 0
    assert "c k23-free true" in out.splitlines()
    assert parse_instance(out).instance.graph.vertex_count == 10


def test_gen_fixed_placement(capsys):
    code, out, _ = run(
        capsys, "gen", "--family", "complete_bipartite", "--a", 3, "--b", 3, "--k", 2,
        "--i", "1,2", "--j", "4,5",
    )
    assert code == 0
    inst = parse_instance(out).instance
    assert inst.i == {0, 1} and inst.j == {3, 4}


def test_gen_is_deterministic(capsys):
    argv = ["gen", "--family", "random_gnp", "--n", 15, "--p", 0.3, "--k", 2, "--seed", 77]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_bad_usage_exit_code(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "gen", "--family", "grid", "--k", 1)[0] == 2
