import json

import numpy as np
import pytest

from chm_mub.chm import build_eq5
from chm_mub.jsonio import (
    InputFormatError,
    angles_from_dict,
    dump_json,
    load_json_file,
    matrix_from_dict,
    matrix_to_dict,
    params_from_dict,
    params_to_dict,
)
from chm_mub.presets import lemma2i_params


def test_matrix_roundtrip_bit_exact():
    m = build_eq5()
    d = matrix_to_dict(m)
    # through an actual JSON string, as the CLI would
    m2 = matrix_from_dict(json.loads(json.dumps(d)))
    assert np.array_equal(m, m2)


def test_matrix_from_dict_validation():
    with pytest.raises(InputFormatError):
        matrix_from_dict({"rows": 2, "cols": 2, "data": [[1, 0]]})
    with pytest.raises(InputFormatError):
        matrix_from_dict({"rows": 2, "cols": 2})
    with pytest.raises(InputFormatError):
        matrix_from_dict([1, 2, 3])
    with pytest.raises(InputFormatError):
        matrix_from_dict({"rows": 1, "cols": 1, "data": [[np.inf, 0]]})


def test_params_roundtrip():
    p = lemma2i_params()
    d = json.loads(json.dumps(params_to_dict(p)))
    p2 = params_from_dict(d)
    assert p2.alpha == p.alpha
    assert p2.beta == p.beta
    assert p2.gamma == p.gamma
    assert np.array_equal(p2.v, p.v)
    assert np.array_equal(p2.w, p.w)


def test_angles_from_dict_without_matrices():
    d = {"alpha": [0.1, 0.2, 0.3], "beta": [0, 0, 0], "gamma": [1, 2, 3]}
    alpha, beta, gamma = angles_from_dict(d)
    assert alpha == (0.1, 0.2, 0.3)


def test_angles_from_dict_validation():
    with pytest.raises(InputFormatError):
        angles_from_dict({"alpha": [0.1, 0.2], "beta": [0, 0, 0], "gamma": [0, 0, 0]})
    with pytest.raises(InputFormatError):
        angles_from_dict({"beta": [0, 0, 0], "gamma": [0, 0, 0]})


def test_params_from_dict_requires_unitary():
    p = lemma2i_params()
    d = params_to_dict(p)
    d["v"]["data"][0] = [5.0, 0.0]
    with pytest.raises(InputFormatError):
        params_from_dict(d)


def test_load_json_file_reports_line_numbers(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "rows": 2,\n  "cols": oops\n}\n')
    with pytest.raises(InputFormatError) as err:
        load_json_file(str(bad))
    assert ":3:" in str(err.value)


def test_dump_json_deterministic():
    d = matrix_to_dict(build_eq5())
    assert dump_json(d) == dump_json(matrix_to_dict(build_eq5()))
