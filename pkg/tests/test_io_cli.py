import json
import os
import subprocess
import sys

import numpy as np
import pytest

from gbsim import cli, io
from gbsim.ensembles import haar_unitary
from gbsim.errors import ParseError
from gbsim.sampler import build_distribution, draw
from gbsim.state import output_state


def test_complex_and_matrix_roundtrip():
    m = np.array([[1 + 2j, -0.5], [3e-300j, 1 / 3]])
    back = io.matrix_from_json(json.loads(json.dumps(io.matrix_to_json(m))))
    np.testing.assert_array_equal(back, m)
    assert io.complex_from_json(2) == 2
    with pytest.raises(ParseError):
        io.complex_from_json("x")
    with pytest.raises(ParseError):
        io.matrix_from_json([[1, 2], [3]])


def test_state_unitary_table_roundtrip():
    t = haar_unitary(3, 4)
    state = output_state(t, [0.2, 0.1, 0])
    s2 = io.state_from_json(io.loads(io.dumps(io.state_to_json(state))))
    np.testing.assert_array_equal(s2.sigma, state.sigma)
    t2 = io.unitary_from_json(io.loads(io.dumps(io.unitary_to_json(t, seed=4))))
    np.testing.assert_array_equal(t2.t, t.t)
    tab = build_distribution(t, [0.2, 0.1, 0], 4)
    tab2 = io.table_from_json(io.loads(io.dumps(io.table_to_json(tab))))
    assert tab2.patterns == tab.patterns and tab2.residual == tab.residual
    np.testing.assert_array_equal(tab2.probabilities, tab.probabilities)
    samples = draw(tab, 500, 3)
    assert io.samples_from_json(io.samples_to_json(samples, 500, 3)) == samples


def test_schema_version_checked():
    with pytest.raises(ParseError):
        io.loads('{"schema_version": 99, "payload": {}}')
    with pytest.raises(ParseError):
        io.loads("{not json")
    assert io.loads('{"a": 1}') == {"a": 1}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_haf_command(tmp_path, capsys):
    f = tmp_path / "m.json"
    io.write(f, [[1] * 4] * 4)
    code, out, _ = run(capsys, "haf", str(f))
    assert code == 0 and out == "3\n"
    code, out, _ = run(capsys, "haf", str(f), "--check")
    assert "recursive 3" in out
    io.write(f, [[1] * 3] * 3)
    assert run(capsys, "haf", str(f))[1] == "0\n"


def test_haf_resource_cap(tmp_path, capsys):
    f = tmp_path / "big.json"
    io.write(f, np.ones((18, 18)).tolist())
    code, _, err = run(capsys, "--json", "haf", str(f))
    assert code == 3
    record = json.loads(err.strip().splitlines()[-1])
    assert record["exit_code"] == 3 and record["error"] == "ResourceError"


def test_input_errors(tmp_path, capsys):
    assert run(capsys, "haf", str(tmp_path / "missing.json"))[0] == 2
    f = tmp_path / "asym.json"
    io.write(f, [[0, 1], [2, 0]])
    assert run(capsys, "haf", str(f))[0] == 2
    code, _, err = run(capsys, "prob", "--squeeze", "-1", "--pattern", "2", "--json")
    assert code == 2 and json.loads(err.strip().splitlines()[-1])["exit_code"] == 2


def test_prob_command(capsys):
    code, out, _ = run(capsys, "prob", "--squeeze", "0.5", "--pattern", "2")
    assert code == 0 and out == "0.0946910915602177\n"
    _, general, _ = run(capsys, "prob", "--haar-seed", "3", "--squeeze", "0.4", "0.4", "0",
                        "--pattern", "1", "1", "0", "--method", "general")
    _, squeezed, _ = run(capsys, "prob", "--haar-seed", "3", "--squeeze", "0.4", "0.4", "0",
                         "--pattern", "1", "1", "0")
    assert float(general) == pytest.approx(float(squeezed), rel=1e-10)


def test_prob_warns_on_rank_deficiency(capsys):
    code, _, err = run(capsys, "prob", "--squeeze", "0.5", "--pattern", "2", "2")
    assert code == 0 and "warning" in err


def test_sample_files_are_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code, _, _ = run(capsys, "sample", "--modes", "3", "--squeeze", "0.3", "0.3", "--haar-seed", "5",
                         "--cutoff", "4", "--draws", "1000", "--sample-seed", "9", "--out", str(p))
        assert code == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    payload = io.read(paths[0])
    assert payload["samples"]["draws"] == 1000
    assert payload["table"]["metadata"]["unitary_seed"] == 5


def test_sample_requires_seed(capsys):
    assert run(capsys, "sample", "--modes", "2", "--squeeze", "0.3", "--cutoff", "2", "--draws", "5")[0] == 2


def test_compare_command(capsys):
    code, out, _ = run(capsys, "compare", "--photons", "3")
    assert code == 0
    rows = dict(line.split() for line in out.strip().splitlines())
    assert rows["squeezers_K"] == "9" and rows["space_gbs"] == "84" and rows["space_sbs"] == "7056"
    assert float(rows["ratio_asymptotic"]) == pytest.approx((6 / 8) ** 3)


def test_haar_command(tmp_path, capsys):
    f = tmp_path / "u.json"
    assert run(capsys, "haar", "--modes", "4", "--seed", "1", "--out", str(f))[0] == 0
    np.testing.assert_array_equal(io.unitary_from_json(io.read(f)).t, haar_unitary(4, 1).t)
    code, out, _ = run(capsys, "haar", "--modes", "2", "--seed", "1", "--coe")
    assert code == 0 and "coe" in io.loads(out)
    code, out, _ = run(capsys, "prob", "--unitary", str(f), "--squeeze", "0.2", "--pattern", "1", "1", "0", "0")
    assert code == 0 and float(out) > 0


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, GBSIM_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "import gbsim; print(gbsim.BACKEND_NAME)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
