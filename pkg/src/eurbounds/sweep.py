"""State/measurement descriptors, scan specifications and CSV emission.

Descriptor grammar (also shown in the CLI help):
  states:        werner:ETA | horodecki:ALPHA | file:PATH
  measurements:  qubit:THETA,PHI | y2 | z2 | qutritx:THETA,PHI
                 | groupG.y | groupG.z (G in 1..3) | random:D,SEED | file:PATH
Numeric arguments may instead be names (e.g. qubit:theta,phi); named
arguments become sweepable parameters that a scan grid binds per point.
"""

import csv
import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bounds import compute_report
from .states import (
    BipartiteState,
    MeasurementSet,
    ProjectiveMeasurement,
    horodecki_state,
    qubit_basis,
    qubit_y_basis,
    qubit_z_basis,
    qutrit_group,
    qutrit_x_basis,
    random_basis,
    werner_state,
)

REPORT_FIELDS = (
    "h_ab_cond",
    "lhs_eur",
    "lhs_iep",
    "l1",
    "lopt",
    "eur_total",
    "b_tilde",
    "u1",
    "uopt",
    "u1_tilde",
    "u2_tilde",
    "uopt_tilde",
    "iep_dep",
    "iep_indep",
)

# CSV column aliases for the scan output
_COLUMN_ALIASES = {
    "L1": "l1",
    "Lopt": "lopt",
    "U1": "u1",
    "Uopt": "uopt",
    "U1_tilde": "u1_tilde",
    "U2_tilde": "u2_tilde",
    "B_tilde": "b_tilde",
}

DEFAULT_SCAN_COLUMNS = (
    "lhs_eur",
    "L1",
    "Lopt",
    "eur_total",
    "lhs_iep",
    "U1",
    "Uopt",
    "iep_dep",
    "iep_indep",
)


class DescriptorError(ValueError):
    """Malformed state/measurement descriptor."""


def _matrix_from_json(node):
    """Nested arrays of [re, im] pairs -> complex ndarray."""
    return np.array(
        [[complex(entry[0], entry[1]) for entry in row] for row in node]
    )


def parse_state(descr):
    """Parse a state descriptor into a BipartiteState."""
    name, _, arg = descr.partition(":")
    try:
        if name == "werner":
            return werner_state(float(arg))
        if name == "horodecki":
            return horodecki_state(float(arg))
        if name == "file":
            with open(arg) as f:
                node = json.load(f)
            return BipartiteState(
                _matrix_from_json(node["rho"]), node["dim_a"], node["dim_b"]
            )
    except (ValueError, KeyError, OSError) as exc:
        raise DescriptorError(f"state descriptor {descr!r}: {exc}") from exc
    raise DescriptorError(f"unknown state descriptor {descr!r}")


def _split_args(arg, descr, count):
    parts = arg.split(",") if arg else []
    if len(parts) != count:
        raise DescriptorError(f"{descr!r} needs {count} arguments, got {len(parts)}")
    return parts


@dataclass(frozen=True)
class MeasurementDescriptor:
    """A measurement constructor with possibly unbound (named) arguments."""

    text: str
    params: tuple  # names of unbound arguments, in order

    def build(self, bindings=None):
        """Instantiate with all named arguments bound to numbers."""
        bindings = bindings or {}
        missing = [p for p in self.params if p not in bindings]
        if missing:
            raise DescriptorError(f"{self.text!r}: unbound parameters {missing}")
        return _build_measurement(self.text, bindings)


def parse_measurement(descr):
    name, _, arg = descr.partition(":")
    if name in ("qubit", "qutritx"):
        parts = _split_args(arg, descr, 2)
    elif name == "random":
        parts = _split_args(arg, descr, 2)
    elif name in ("y2", "z2") or name.startswith("group"):
        parts = []
    elif name == "file":
        parts = []
    else:
        raise DescriptorError(f"unknown measurement descriptor {descr!r}")
    params = []
    for p in parts:
        try:
            float(p)
        except ValueError:
            params.append(p)
    return MeasurementDescriptor(descr, tuple(params))


def _value(token, bindings):
    try:
        return float(token)
    except ValueError:
        return float(bindings[token])


def _build_measurement(descr, bindings):
    name, _, arg = descr.partition(":")
    try:
        if name == "qubit":
            t, p = (_value(x, bindings) for x in arg.split(","))
            return qubit_basis(t, p)
        if name == "qutritx":
            t, p = (_value(x, bindings) for x in arg.split(","))
            return qutrit_x_basis(t, p)
        if name == "y2":
            return qubit_y_basis()
        if name == "z2":
            return qubit_z_basis()
        if name.startswith("group"):
            base, _, which = name.partition(".")
            return qutrit_group(int(base[5:]), which)
        if name == "random":
            d, seed = (_value(x, bindings) for x in arg.split(","))
            return random_basis(int(d), int(seed))
        if name == "file":
            with open(arg) as f:
                node = json.load(f)
            return ProjectiveMeasurement(
                node.get("label", arg), _matrix_from_json(node["vectors"])
            )
    except (ValueError, KeyError, OSError) as exc:
        raise DescriptorError(f"measurement descriptor {descr!r}: {exc}") from exc
    raise DescriptorError(f"unknown measurement descriptor {descr!r}")


@dataclass(frozen=True)
class GridAxis:
    param: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ValueError(f"grid axis {self.param!r} needs count >= 2")

    def values(self):
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class ScanSpec:
    """A parameter scan: state, measurements, up to two swept axes."""

    state: str
    measurements: tuple
    grid: tuple
    outputs: tuple = DEFAULT_SCAN_COLUMNS

    @classmethod
    def from_dict(cls, node):
        grid = tuple(
            GridAxis(g["param"], float(g["start"]), float(g["stop"]), int(g["count"]))
            for g in node["grid"]
        )
        if not 1 <= len(grid) <= 2:
            raise ValueError("grid must define one or two axes")
        spec = cls(
            state=node["state"],
            measurements=tuple(node["measurements"]),
            grid=grid,
            outputs=tuple(node.get("outputs", DEFAULT_SCAN_COLUMNS)),
        )
        spec.validate()
        return spec

    @classmethod
    def from_file(cls, path):
        with open(path) as f:
            return cls.from_dict(json.load(f))

    def validate(self):
        descriptors = [parse_measurement(m) for m in self.measurements]
        for axis in self.grid:
            holders = [d for d in descriptors if axis.param in d.params]
            if len(holders) != 1:
                raise ValueError(
                    f"swept parameter {axis.param!r} must appear in exactly one "
                    f"measurement descriptor, found in {len(holders)}"
                )
        unknown = [
            c for c in self.outputs if _COLUMN_ALIASES.get(c, c) not in REPORT_FIELDS
        ]
        if unknown:
            raise ValueError(f"unknown output columns {unknown}")


def _report_value(report, column):
    return getattr(report, _COLUMN_ALIASES.get(column, column))


def run_scan(spec, workers=1):
    """Evaluate the scan grid; rows are row-major with the first axis outer.

    Returns (header, rows) with floats unformatted.
    """
    state = parse_state(spec.state)
    descriptors = [parse_measurement(m) for m in spec.measurements]

    axes_values = [axis.values() for axis in spec.grid]
    points = []
    if len(axes_values) == 1:
        points = [(v,) for v in axes_values[0]]
    else:
        points = [(a, b) for a in axes_values[0] for b in axes_values[1]]

    def evaluate(point):
        bindings = {axis.param: val for axis, val in zip(spec.grid, point)}
        ms = MeasurementSet(tuple(d.build(bindings) for d in descriptors))
        return compute_report(state, ms)

    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_scan_point, [(spec, p) for p in points]))
    else:
        reports = [evaluate(p) for p in points]

    header = [axis.param for axis in spec.grid] + list(spec.outputs)
    rows = [
        list(point) + [_report_value(rep, c) for c in spec.outputs]
        for point, rep in zip(points, reports)
    ]
    return header, rows


def _scan_point(args):
    # module-level so ProcessPoolExecutor can pickle it
    spec, point = args
    state = parse_state(spec.state)
    descriptors = [parse_measurement(m) for m in spec.measurements]
    bindings = {axis.param: val for axis, val in zip(spec.grid, point)}
    ms = MeasurementSet(tuple(d.build(bindings) for d in descriptors))
    return compute_report(state, ms)


def write_scan_csv(path, header, rows, spec, spec_path=None):
    """Write the CSV (12 significant digits) and its metadata sidecar."""
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        for row in rows:
            w.writerow([f"{v:.12g}" for v in row])
    meta = {
        "tool": "eurbounds",
        "version": __version__,
        "state": spec.state,
        "measurements": list(spec.measurements),
        "grid": [
            {"param": a.param, "start": a.start, "stop": a.stop, "count": a.count}
            for a in spec.grid
        ],
        "outputs": list(spec.outputs),
    }
    if spec_path is not None:
        with open(spec_path, "rb") as f:
            meta["spec_sha256"] = hashlib.sha256(f.read()).hexdigest()
    with open(str(path) + ".meta.json", "w") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")
