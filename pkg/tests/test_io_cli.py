import json
import math

import numpy as np
import pytest

from munorm import (
    Endomorphism,
    EventuallyPeriodicSeq,
    Partition,
    PeriodicBandOperator,
    make_space,
)
from munorm import io as mio
from munorm.cli import main


# --------------------------------------------------------------------------
# serialization round trips


def test_space_round_trip():
    sp = make_space([0.2, 0.3, 0.5])
    assert mio.space_from_obj(mio.space_to_obj(sp)) == sp


def test_partition_round_trip_one_based():
    p = Partition(4, [[0, 1], [2, 3]])
    obj = mio.partition_to_obj(p)
    assert obj == {"blocks": [[1, 2], [3, 4]]}
    assert mio.partition_from_obj(obj, 4) == p


def test_matrix_round_trip_and_optional_im():
    m = np.array([[1 + 2j, 0], [0, -1j]])
    back = mio.matrix_from_obj(mio.matrix_to_obj(m))
    np.testing.assert_array_equal(back, m)
    real_only = mio.matrix_from_obj({"re": [[1, 0], [0, 1]]})
    np.testing.assert_array_equal(real_only, np.eye(2))


def test_endomorphism_round_trip_one_based():
    sp = make_space([0.25] * 4)
    endo = Endomorphism(sp, [1, 2, 3, 0])
    obj = mio.endomorphism_to_obj(endo)
    assert obj == {"map": [2, 3, 4, 1]}
    assert mio.endomorphism_from_obj(obj, sp) == endo


def test_seq_round_trip():
    seq = EventuallyPeriodicSeq([1.0, 2j], [3.0], middle={0: 1 - 1j}, k0=1)
    back = mio.seq_from_obj(mio.seq_to_obj(seq))
    np.testing.assert_array_equal(back.left, seq.left)
    np.testing.assert_array_equal(back.right, seq.right)
    assert back.middle == seq.middle and back.k0 == seq.k0


def test_bandop_round_trip():
    op = PeriodicBandOperator(2, 1, [[1, 2j, 0], [0, 1, -1]], [(3, 4, 0.5j)])
    back = mio.bandop_from_obj(mio.bandop_to_obj(op))
    np.testing.assert_array_equal(back.coeffs, op.coeffs)
    assert back.perturbation == op.perturbation


def test_field_errors_name_the_field():
    with pytest.raises(ValueError, match="'weights'"):
        mio.space_from_obj({})
    with pytest.raises(ValueError, match="'blocks'"):
        mio.partition_from_obj({"block": []}, 2)
    with pytest.raises(ValueError, match="re, im"):
        mio.seq_from_obj({"left": ["x"], "right": [1]})


# --------------------------------------------------------------------------
# CLI


@pytest.fixture()
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj), encoding="utf-8")
        return str(path)

    return tmp_path, write


def run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_cli_mu_norm_projector(files, capsys):
    tmp, write = files
    space = write("u4.json", {"weights": [0.25, 0.25, 0.25, 0.25]})
    proj = write("proj13.json", {"re": np.diag([1.0, 0.0, 1.0, 0.0]).tolist()})
    code, rep = run_cli(capsys, ["mu-norm", "--space", space, "--op", proj])
    assert code == 0
    assert rep["schema"] == "mu-norm-lab/1"
    assert rep["results"]["mu_norm_sq"] == pytest.approx(0.5, abs=1e-12)
    check = rep["diagnostics"]["checks"][0]
    assert check["passed"] and "tolerance" in check


def test_cli_m_chi_and_mu_dim(files, capsys):
    tmp, write = files
    space = write("s.json", {"weights": [0.2, 0.3, 0.5]})
    op = write("p.json", {"re": np.diag([1.0, 0.0, 0.0]).tolist()})
    part = write("chi.json", {"blocks": [[1], [2, 3]]})
    code, rep = run_cli(capsys, ["m-chi", "--space", space, "--op", op,
                                 "--partition", part])
    assert code == 0
    assert rep["results"]["m_chi"] == pytest.approx(0.2, abs=1e-12)

    basis = write("basis.json", {"re": [[1 / math.sqrt(0.2), 0.0, 0.0]]})
    code, rep = run_cli(capsys, ["mu-dim", "--space", space, "--basis", basis])
    assert code == 0
    assert rep["results"]["mu_dim"] == pytest.approx(0.2, abs=1e-10)


def test_cli_entropy_reports(files, capsys):
    tmp, write = files
    space = write("u2.json", {"weights": [0.5, 0.5]})
    h = 1 / math.sqrt(2)
    op = write("h.json", {"re": [[h, h], [h, -h]]})
    part = write("chi.json", {"blocks": [[1], [2]]})
    code, rep = run_cli(capsys, ["entropy", "--space", space, "--op", op,
                                 "--partition", part, "--N", "3"])
    assert code == 0
    assert rep["results"]["closed_form"] == pytest.approx(math.log(2), abs=1e-12)
    assert rep["results"]["differences"][-1] == pytest.approx(math.log(2), abs=1e-10)

    code, rep2 = run_cli(capsys, ["entropy", "--space", space, "--op", op,
                                  "--partition", part, "--N", "3", "--log-base", "2"])
    assert rep2["results"]["closed_form"] == pytest.approx(1.0, abs=1e-12)
    assert rep2["results"]["unit"] == "bits"


def test_cli_ks_entropy_and_markov(files, capsys):
    tmp, write = files
    space = write("u3.json", {"weights": [1 / 3, 1 / 3, 1 / 3]})
    endo = write("f.json", {"map": [2, 3, 1]})
    part = write("chi.json", {"blocks": [[1], [2], [3]]})
    code, rep = run_cli(capsys, ["ks-entropy", "--space", space, "--endo", endo,
                                 "--partition", part, "--N", "2"])
    assert code == 0
    assert rep["results"]["values"][-1] == pytest.approx(math.log(3), abs=1e-12)

    p = write("p.json", {"re": [[0.5, 0.5], [0.5, 0.5]]})
    dist = write("nu.json", {"weights": [0.5, 0.5]})
    code, rep = run_cli(capsys, ["markov-rate", "--p", p, "--dist", dist])
    assert code == 0
    assert rep["results"]["entropy_rate"] == pytest.approx(math.log(2), abs=1e-12)


def test_cli_rho_and_conv(files, capsys):
    tmp, write = files
    seq = write("seq.json", {"left": [[0.0, 0.0]], "right": [[1.0, 0.0], [0.0, 0.0]],
                             "middle": {}, "k0": 1})
    code, rep = run_cli(capsys, ["rho", "--seq", seq])
    assert code == 0
    assert rep["results"]["rho"] == pytest.approx(0.5, abs=1e-15)
    assert rep["results"]["left_mean"] == 0.0
    assert rep["diagnostics"]["checks"][0]["passed"]

    code, rep = run_cli(capsys, ["conv", "--seq", seq])
    assert rep["results"]["conv_norm"] == 1.0
    assert rep["results"]["mu_norm_sq"] == 0.5


def test_cli_dt_commands(files, capsys):
    tmp, write = files
    cos2 = write("cos.json", {
        "tau": 1, "band": 1,
        "coeffs": [[[1.0, 0.0], [0.0, 0.0], [1.0, 0.0]]],
        "perturbation": [],
    })
    code, rep = run_cli(capsys, ["dt-mu-norm", "--op", cos2])
    assert code == 0
    assert rep["results"]["quadrature"] == pytest.approx(2.0, abs=1e-12)
    assert rep["results"]["closed_form"] == pytest.approx(2.0, abs=1e-12)

    code, rep = run_cli(capsys, ["dt-norm", "--op", cos2])
    assert rep["results"]["dt_norm"] == pytest.approx(2.0, abs=1e-15)

    code, rep = run_cli(capsys, ["avg-trace", "--op", cos2])
    assert rep["results"]["avg_trace"] == pytest.approx(2.0, abs=1e-15)
    assert rep["diagnostics"]["window_average"] == pytest.approx(2.0, abs=1e-2)


def test_cli_verify_suite(files, capsys):
    code, rep = run_cli(capsys, ["verify", "--suite", "triangle",
                                 "--trials", "50", "--seed", "7"])
    assert code == 0
    props = rep["results"]["properties"]
    assert props[0]["trials"] == 50 and props[0]["passed"]
    assert rep["results"]["all_passed"]


def test_cli_verify_unknown_suite(files, capsys):
    code = main(["verify", "--suite", "nope", "--trials", "1", "--seed", "0"])
    assert code == 2
    assert "unknown suite" in capsys.readouterr().err


def test_cli_exit_codes(files, capsys):
    tmp, write = files
    bad = tmp / "bad.json"
    bad.write_text('{"weights": [0.5,]}', encoding="utf-8")
    proj = write("p.json", {"re": [[1.0]]})
    code = main(["mu-norm", "--space", str(bad), "--op", proj])
    assert code == 2
    err = capsys.readouterr().err
    assert "line" in err  # malformed JSON reports position

    negative = write("neg.json", {"weights": [1.5, -0.5]})
    code = main(["mu-norm", "--space", negative, "--op", proj])
    assert code == 2

    # term cap exceeded is a distinct exit code
    space = write("u2.json", {"weights": [0.5, 0.5]})
    op = write("id.json", {"re": [[1.0, 0.0], [0.0, 1.0]]})
    part = write("chi.json", {"blocks": [[1], [2]]})
    code = main(["entropy", "--space", space, "--op", op, "--partition", part,
                 "--N", "4", "--cap", "8"])
    assert code == 3
    assert "cap exceeded" in capsys.readouterr().err


def test_cli_reports_are_deterministic(files, capsys, tmp_path):
    tmp, write = files
    space = write("u2.json", {"weights": [0.5, 0.5]})
    op = write("w.json", {"re": [[1.0, 2.0], [0.0, 1.0]], "im": [[0.0, 1.0], [0.0, 0.0]]})
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["mu-norm", "--space", space, "--op", op, "--out", str(out1)]) == 0
    assert main(["mu-norm", "--space", space, "--op", op, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()

    v1 = main(["verify", "--suite", "homogeneity", "--trials", "20", "--seed", "3",
               "--out", str(out1)])
    v2 = main(["verify", "--suite", "homogeneity", "--trials", "20", "--seed", "3",
               "--out", str(out2)])
    assert v1 == v2 == 0
    assert out1.read_bytes() == out2.read_bytes()
