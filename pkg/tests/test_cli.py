import io
import json
import subprocess
import sys

import pytest

from foamcalc.cli import InputError, RunConfig, main, run

TREFOIL = "X+(1,5,2,4) X+(3,1,4,6) X+(5,3,6,2)"


def call(**kw):
    out, err = io.StringIO(), io.StringIO()
    code = run(RunConfig(**kw), out, err)
    return code, out.getvalue(), err.getvalue()


def test_surface():
    assert call(command="surface", genus=1) == (0, "2\n", "")
    assert call(command="surface", genus=3)[1].strip() == "8*a + 2*h^2"


def test_euler_matches_skein():
    e = call(command="euler", braid="s1 s1 s1", strands=2)
    s = call(command="skein", braid="s1 s1 s1", strands=2)
    assert e[0] == s[0] == 0 and e[1] == s[1]


def test_unknot_json():
    code, out, _ = call(command="homology", pd="U1", output_format="json")
    assert code == 0
    data = json.loads(out)
    assert data["mode"] == "graded"
    assert data["entries"] == [{"i": 0, "j": -1, "rank": 1}, {"i": 0, "j": 1, "rank": 1}]


def test_filtered_json_has_no_j():
    _, out, _ = call(command="homology", pd="U1", a="1", output_format="json")
    data = json.loads(out)
    assert data["mode"] == "filtered" and data["entries"] == [{"i": 0, "rank": 2}]


def test_invariance_check():
    ok = json.loads(call(command="invariance-check", pd="U1", pd2="X+(1,1,2,2)", output_format="json")[1])
    assert ok["pass"] is True
    r2 = call(command="invariance-check", pd=TREFOIL, braid2="s1 s1 s1 s2", strands2=3)
    assert r2[0] == 0 and r2[1].startswith("pass")
    bad = json.loads(call(command="invariance-check", pd="U1", pd2="X+(2,4,3,1) X+(4,2,1,3)", a="1", output_format="json")[1])
    assert bad["pass"] is False


def test_seeded_moves_are_reproducible():
    kw = dict(command="invariance-check", braid="s1 s1 s1", strands=2, moves=3, seed=7, output_format="json")
    first = call(**kw)
    assert first == call(**kw)
    assert json.loads(first[1])["pass"] is True


def test_colorings():
    code, out, _ = call(command="colorings", pd="X+(2,4,3,1) X+(4,2,1,3)", a="1", output_format="json")
    data = json.loads(out)
    assert code == 0 and data["pass"] and data["reading"] == "unordered"
    assert sorted(c["degree"] for c in data["colorings"]) == [-4, -4, 0, 0]
    assert call(command="colorings", pd="U1")[0] == 2


def test_foam_eval():
    assert call(command="foam-eval", genus=3)[1].strip() == "8*a + 2*h^2"
    assert call(command="foam-eval", genus=0, dots=1)[1].strip() == "1"
    assert call(command="foam-eval", word="bogus[")[0] == 2


@pytest.mark.parametrize(
    "kw",
    [
        dict(command="homology", pd="X+(1,2"),
        dict(command="homology", pd="X+(1,2,3,4)"),
        dict(command="homology", pd="U1", a="symbolic"),
        dict(command="homology", pd="U1", h="1/0"),
        dict(command="homology", braid="s1"),
        dict(command="homology"),
        dict(command="surface"),
        dict(command="surface", genus=-2),
    ],
)
def test_input_errors(kw):
    code, out, err = call(**kw)
    assert code == 2 and out == "" and err.startswith("input error")


def test_parse_error_has_position():
    _, _, err = call(command="homology", pd="X+(1,2,3,4) X?(1)")
    assert "column" in err


def test_config_validation():
    with pytest.raises(InputError):
        RunConfig(command="nope")
    with pytest.raises(InputError):
        RunConfig(command="skein", output_format="xml")


def test_computation_failure_exit_code(monkeypatch):
    from foamcalc import cli
    from foamcalc.complex import ComplexError

    def boom(*a, **k):
        raise ComplexError("d∘d ≠ 0")

    monkeypatch.setattr(cli, "build_complex", boom)
    assert call(command="euler", pd="U1")[0] == 1


def test_output_is_identical_across_threads(monkeypatch):
    outs = set()
    for t in ("1", "4"):
        monkeypatch.setenv("FOAMCALC_THREADS", t)
        outs.add(call(command="homology", pd=TREFOIL, a="1", output_format="json")[1])
    outs.add(call(command="homology", pd=TREFOIL, a="1", output_format="json", threads=3)[1])
    assert len(outs) == 1


def test_main_entry_point(capsys):
    assert main(["surface", "--genus", "1"]) == 0
    assert capsys.readouterr().out == "2\n"
    assert main(["bogus"]) == 2


def test_module_subprocess():
    r = subprocess.run(
        [sys.executable, "-m", "foamcalc", "skein", "--pd", "U2"],
        capture_output=True, text=True, check=False,
    )
    assert r.returncode == 0 and r.stdout.strip()
