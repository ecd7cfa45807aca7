import csv
import json

import numpy as np
import pytest

from eurbounds.cli import main
from eurbounds.sweep import (
    DescriptorError,
    ScanSpec,
    parse_measurement,
    parse_state,
    run_scan,
)


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_state_descriptors(tmp_path):
    st = parse_state("werner:0.8")
    assert st.dim_a == 2
    st = parse_state("horodecki:0.6")
    assert st.dim_a == 3
    path = tmp_path / "state.json"
    rho = np.diag([0.5, 0.0, 0.0, 0.5])
    path.write_text(json.dumps({
        "dim_a": 2, "dim_b": 2,
        "rho": [[[v.real, v.imag] for v in row] for row in rho.astype(complex)],
    }))
    st = parse_state(f"file:{path}")
    assert np.allclose(st.rho, rho)
    with pytest.raises(DescriptorError):
        parse_state("bogus:1")
    with pytest.raises(DescriptorError):
        parse_state("werner:2.0")


def test_parse_measurement_descriptors():
    assert parse_measurement("qubit:0.5,0.2").build().dim == 2
    assert parse_measurement("y2").build().label == "Y2"
    assert parse_measurement("group2.z").build().dim == 3
    assert parse_measurement("random:3,7").build().dim == 3
    d = parse_measurement("qubit:theta,0.1")
    assert d.params == ("theta",)
    assert d.build({"theta": 0.0}).dim == 2
    with pytest.raises(DescriptorError):
        d.build()
    with pytest.raises(DescriptorError):
        parse_measurement("nope:1")


def test_bound_command(capsys):
    code, out, _ = run_cli(
        capsys, "bound", "--state", "werner:0.8",
        "--meas", "qubit:0.5,0.39", "--meas", "y2", "--meas", "z2",
    )
    assert code == 0
    rep = json.loads(out)
    for key in ("L1", "Lopt", "eur_total", "U1", "Uopt", "iep_dep",
                "iep_indep", "h_ab_cond", "lhs_eur", "lhs_iep",
                "best_ordering_eur", "best_cover"):
        assert key in rep
    assert rep["eur_total"] >= max(0.0, rep["L1"] - 1e-12)
    assert np.isclose(rep["h_ab_cond"], -0.152415320175426, atol=1e-9)


def test_bound_command_horodecki(capsys):
    code, out, _ = run_cli(
        capsys, "bound", "--state", "horodecki:0.6",
        "--meas", "qutritx:1.0,0.5", "--meas", "group1.y", "--meas", "group1.z",
    )
    assert code == 0
    rep = json.loads(out)
    assert np.isfinite(rep["eur_total"])
    assert rep["lhs_eur"] >= rep["eur_total"] - 1e-9


def test_bound_command_errors(capsys):
    code, _, err = run_cli(capsys, "bound", "--state", "werner:0.8")
    assert code == 1
    code, _, err = run_cli(
        capsys, "bound", "--state", "werner:9", "--meas", "z2", "--meas", "y2"
    )
    assert code == 1
    assert "werner" in err


def test_scan_smoke(tmp_path, capsys):
    spec = {
        "state": "werner:0.8",
        "measurements": ["qubit:theta,phi", "y2", "z2"],
        "grid": [
            {"param": "theta", "start": 0.0, "stop": 3.0, "count": 2},
            {"param": "phi", "start": 0.0, "stop": 6.0, "count": 2},
        ],
    }
    spec_path = tmp_path / "scan.json"
    spec_path.write_text(json.dumps(spec))
    out_path = tmp_path / "out.csv"
    code, _, _ = run_cli(capsys, "scan", "--spec", str(spec_path),
                         "--out", str(out_path))
    assert code == 0
    with open(out_path) as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["theta", "phi", "lhs_eur", "L1", "Lopt", "eur_total",
                       "lhs_iep", "U1", "Uopt", "iep_dep", "iep_indep"]
    assert len(rows) == 5  # header + 2x2 grid
    # row-major, theta outer
    assert [r[0] for r in rows[1:]] == ["0", "0", "3", "3"]
    meta = json.loads((tmp_path / "out.csv.meta.json").read_text())
    assert meta["grid"][0]["param"] == "theta"
    assert "spec_sha256" in meta


def test_scan_byte_stable(tmp_path, capsys):
    spec = {
        "state": "werner:0.5",
        "measurements": ["qubit:theta,0.3", "z2"],
        "grid": [{"param": "theta", "start": 0.0, "stop": 1.0, "count": 3}],
        "outputs": ["eur_total", "iep_dep"],
    }
    spec_path = tmp_path / "scan.json"
    spec_path.write_text(json.dumps(spec))
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli(capsys, "scan", "--spec", str(spec_path), "--out", str(p1))
    run_cli(capsys, "scan", "--spec", str(spec_path), "--out", str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_scan_matches_library(tmp_path, capsys):
    from eurbounds.bounds import eur_total
    from eurbounds.states import MeasurementSet, qubit_basis, qubit_z_basis, \
        werner_state

    spec = ScanSpec.from_dict({
        "state": "werner:0.5",
        "measurements": ["qubit:theta,0.3", "z2"],
        "grid": [{"param": "theta", "start": 0.0, "stop": 1.0, "count": 3}],
        "outputs": ["eur_total"],
    })
    header, rows = run_scan(spec)
    st = werner_state(0.5)
    for theta, val in rows:
        ms = MeasurementSet((qubit_basis(theta, 0.3), qubit_z_basis()))
        assert np.isclose(val, eur_total(st, ms), atol=1e-12)


def test_scan_bad_spec(tmp_path, capsys):
    spec_path = tmp_path / "scan.json"
    spec_path.write_text(json.dumps({
        "state": "werner:0.5",
        "measurements": ["z2", "y2"],
        "grid": [{"param": "theta", "start": 0, "stop": 1, "count": 3}],
    }))
    code, _, err = run_cli(capsys, "scan", "--spec", str(spec_path),
                           "--out", str(tmp_path / "x.csv"))
    assert code == 1
    assert "theta" in err


def test_verify_command(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--trials", "20", "--seed", "42",
        "--dims", "2x2", "--n-meas", "3",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["total"] == 20
    assert rep["violations"] == []


def test_verify_flag_error(capsys):
    code, _, _ = run_cli(capsys, "verify", "--trials", "0")
    assert code == 1


def test_verify_violations_exit_code(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--trials", "2", "--tolerance", "-1",
    )
    assert code == 2
    assert json.loads(out)["violations"]


def test_lemma_command(capsys):
    code, out, _ = run_cli(
        capsys, "lemma", "--trials", "20", "--seed", "3", "--dims", "2x2",
        "--n-meas", "2",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["violations"] == 0
    assert rep["finite"] + rep["infinite_rhs"] == 20


def test_lemma_explicit_ordering(capsys):
    code, out, _ = run_cli(
        capsys, "lemma", "--trials", "5", "--n-meas", "3",
        "--ordering", "2,1,3",
    )
    assert code == 0
    assert json.loads(out)["violations"] == 0


def test_lemma_product_states(capsys):
    code, out, _ = run_cli(
        capsys, "lemma", "--trials", "10", "--product-states",
        "--n-meas", "2",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["violations"] == 0
