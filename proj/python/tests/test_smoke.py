import math

import numpy as np
import pytest

import lpmult


def test_riesz_symbol_blocks():
    su2 = lpmult.GroupModel.su2()
    r = lpmult.riesz_symbol(su2, [0.0, 0.0, 1.0], 10)
    assert r.band == 10 and len(r) == 11
    block = r.su2_block(2)
    assert block.shape == (3, 3)
    # Diagonal -i m / sqrt(l(l+1)) at spin 1.
    assert np.allclose(np.diag(block), [1j / math.sqrt(2), 0, -1j / math.sqrt(2)])
    assert r.max_op_norm(10) <= 1 + 1e-12
    built = lpmult.build_symbol(su2, "riesz:D3", 10)
    assert built.max_hs_diff(r, 10) == 0.0


def test_checkers_pass_and_fail():
    su2 = lpmult.GroupModel.su2()
    report = lpmult.check(lpmult.build_symbol(su2, "riesz:D3", 24), "refined")
    assert report["pass"] and report["range"] == 22
    t3 = lpmult.GroupModel.torus(3)
    good = lpmult.check(lpmult.build_symbol(t3, "k1/abs(k)", 65), "torus3", range=64)
    bad = lpmult.check(lpmult.build_symbol(t3, "sign(k1)", 65), "torus3", range=64)
    assert good["pass"] and not bad["pass"]
    assert not bad["conditions"][1]["pass"]


def test_errors_map_to_python_exceptions():
    su2 = lpmult.GroupModel.su2()
    with pytest.raises(lpmult.ExceptionalParameterError):
        lpmult.invert_vf_symbol([0.0, 0.0, 1.0], 0.5j, 4)
    with pytest.raises(ValueError):
        lpmult.riesz_symbol(su2, [1.0, 1.0, 0.0], 4)
    with pytest.raises(lpmult.ResolutionError):
        lpmult.check(lpmult.build_symbol(su2, "identity", 4), "mikhlin")
    with pytest.raises(lpmult.ConfigError):
        lpmult.build_symbol(su2, "nope", 4)


def test_vector_field_inverse():
    X = [0.0, 0.0, 1.0]
    pts = lpmult.exceptional_set(X, 1.0)
    assert all(abs(z.real) < 1e-12 for z in pts)
    assert sorted(round(z.imag * 2) for z in pts) == [-2, -1, 0, 1, 2]
    assert lpmult.recursion_residual(X, 1.0, 0, 12) < 1e-9


def test_central_sequences():
    s = [complex(math.cos(L), 0.1 * L) for L in range(21)]
    lat = lpmult.delta2(s)
    quad = lpmult.delta2_by_quadrature(s)
    assert len(lat) == 19
    assert max(abs(a - b) for a, b in zip(lat, quad)) < 1e-9
    ones = [1.0 + 0j] * 41
    assert max(abs(v) for v in lpmult.nweiss_delta(ones)) < 1e-10


def test_ladders():
    r = lpmult.ladder("c_r")
    assert r["pass"] and abs(r["fit"]["slope"] + 1) < 0.15
    cz = lpmult.ladder("cz_riesz")
    assert cz["fit"]["slope"] >= 1 / 6 - 0.1 and cz["fit"]["r2"] >= 0.95


def test_run_command_and_symbol_file(tmp_path):
    env = lpmult.run_command("fourier-selftest", group="all", seed=3)
    assert env["pass"] and env["schema_version"] == "lpmult-report/1"
    env = lpmult.run_command("invert", c="1", recursion_check=True)
    assert env["results"]["recursion"]["max"] < 1e-9
    with pytest.raises(lpmult.ExceptionalParameterError):
        lpmult.run_command("invert", c="0.5i")
    su2 = lpmult.GroupModel.su2()
    s = lpmult.build_symbol(su2, "laplacian-function:heat:0.1", 5)
    path = str(tmp_path / "heat.sym")
    lpmult.write_symbol_file(s, path)
    back = lpmult.read_symbol_file(path)
    assert back.max_hs_diff(s, 5) == 0.0 and back.model == su2
