"""Run configuration, stepping loops, CSV/snapshot output, experiment drivers.

A ProblemSpec pins everything needed to reproduce a run: catalog problem,
scheme, grid resolution, time step, horizon, SAV shift and output plan.
Specs serialize to a flat ``key = value`` manifest; reloading a manifest
reproduces the run byte-for-byte (no timestamps are written).

CSV schema (one row per output time):
    t,E_mod,E_orig,err_l2,err_inf,iters
Missing entries are left empty. Field snapshots are a short ASCII header
(one ``key value`` line each, terminated by a ``data`` line) followed by
raw little-endian float64 payload, row-major; complex fields store the
real plane then the imaginary plane (``components 2``).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import avf, kg, nls
from .catalog import CatalogEntry, get_entry
from .diagnostics import RunRecord, convergence_orders, error_norms
from .grids import ComplexField, Field, GridSpec
from .tables import build_kg_tables, build_nls_tables

SCHEMES = ("esavs", "eavfs")
TRANSFORMS = ("identity", "sin_half")


@dataclass(frozen=True)
class ProblemSpec:
    """Complete, serializable description of one run."""

    problem: str
    scheme: str = "esavs"
    n: int | None = None            # per-axis node count; None -> catalog default
    tau: float | None = None
    t_end: float | None = None
    c0: float | None = None
    cadence: int = 10               # record diagnostics every this many steps
    out: str | None = None
    snapshot_times: tuple[float, ...] = ()
    snapshot_transform: str | None = None
    fp_tol: float = 1e-14
    fp_max_iters: int = 200

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.snapshot_transform is not None and self.snapshot_transform not in TRANSFORMS:
            raise ValueError(f"transform must be one of {TRANSFORMS}")
        if self.cadence < 1:
            raise ValueError("cadence must be >= 1")


@dataclass
class RunResult:
    spec: ProblemSpec
    records: list[RunRecord]
    final_state: object
    total_iters: int
    wall_seconds: float
    files: list[Path] = field(default_factory=list)


# --------------------------------------------------------------------------
# spec resolution and manifest round-trip
# --------------------------------------------------------------------------

_SPEC_KEYS = ("problem", "scheme", "n", "tau", "t_end", "c0", "cadence", "out",
              "snapshots", "transform", "fp_tol", "fp_max_iters")


def resolve(spec: ProblemSpec) -> tuple[CatalogEntry, GridSpec, object, float, float, int]:
    """Fill in catalog defaults; returns (entry, grid, problem, tau, t_end, n_steps)."""
    entry = get_entry(spec.problem)
    grid = entry.make_grid(spec.n)
    tau = spec.tau if spec.tau is not None else entry.default_tau
    t_end = spec.t_end if spec.t_end is not None else entry.default_t_end
    c0 = spec.c0 if spec.c0 is not None else entry.default_c0
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    if t_end < 0.0:
        raise ValueError("t_end must be nonnegative")
    n_steps = int(round(t_end / tau)) if t_end > 0 else 0
    if abs(n_steps * tau - t_end) > 1e-9 * max(1.0, t_end):
        raise ValueError(f"t_end = {t_end:g} is not an integer number of steps of tau = {tau:g}")
    for t_snap in spec.snapshot_times:
        if not (0.0 <= t_snap <= t_end + 1e-12):
            raise ValueError(f"snapshot time {t_snap:g} outside [0, {t_end:g}]")
    problem = entry.make_problem(grid, c0)
    return entry, grid, problem, tau, t_end, n_steps


def spec_to_manifest(spec: ProblemSpec) -> str:
    """Flat key = value manifest, the same format parse_manifest reads."""
    lines = [
        f"problem = {spec.problem}",
        f"scheme = {spec.scheme}",
    ]
    if spec.n is not None:
        lines.append(f"n = {spec.n}")
    if spec.tau is not None:
        lines.append(f"tau = {spec.tau!r}")
    if spec.t_end is not None:
        lines.append(f"t_end = {spec.t_end!r}")
    if spec.c0 is not None:
        lines.append(f"c0 = {spec.c0!r}")
    lines.append(f"cadence = {spec.cadence}")
    if spec.out is not None:
        lines.append(f"out = {spec.out}")
    if spec.snapshot_times:
        lines.append("snapshots = " + ", ".join(repr(t) for t in spec.snapshot_times))
    if spec.snapshot_transform is not None:
        lines.append(f"transform = {spec.snapshot_transform}")
    lines.append(f"fp_tol = {spec.fp_tol!r}")
    lines.append(f"fp_max_iters = {spec.fp_max_iters}")
    return "\n".join(lines) + "\n"


def parse_manifest(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; '#' starts a comment, blank lines ignored."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"manifest line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _SPEC_KEYS:
            raise ValueError(f"manifest line {lineno}: unknown key {key!r}")
        out[key] = value
    return out


def spec_from_mapping(mapping: dict[str, str]) -> ProblemSpec:
    """Build a ProblemSpec from manifest strings (all values still textual)."""
    if "problem" not in mapping:
        raise ValueError("manifest is missing the 'problem' key")
    kwargs: dict = {"problem": mapping["problem"]}
    if "scheme" in mapping:
        kwargs["scheme"] = mapping["scheme"]
    if "n" in mapping:
        kwargs["n"] = int(mapping["n"])
    if "tau" in mapping:
        kwargs["tau"] = float(mapping["tau"])
    if "t_end" in mapping:
        kwargs["t_end"] = float(mapping["t_end"])
    if "c0" in mapping:
        kwargs["c0"] = float(mapping["c0"])
    if "cadence" in mapping:
        kwargs["cadence"] = int(mapping["cadence"])
    if "out" in mapping:
        kwargs["out"] = mapping["out"]
    if "snapshots" in mapping:
        parts = [p for p in mapping["snapshots"].split(",") if p.strip()]
        kwargs["snapshot_times"] = tuple(float(p) for p in parts)
    if "transform" in mapping:
        kwargs["snapshot_transform"] = mapping["transform"]
    if "fp_tol" in mapping:
        kwargs["fp_tol"] = float(mapping["fp_tol"])
    if "fp_max_iters" in mapping:
        kwargs["fp_max_iters"] = int(mapping["fp_max_iters"])
    return ProblemSpec(**kwargs)


# --------------------------------------------------------------------------
# the stepping loop
# --------------------------------------------------------------------------


def run(spec: ProblemSpec) -> RunResult:
    """Init -> step loop -> diagnostics; writes CSV and snapshots when out is set."""
    entry, grid, problem, tau, t_end, n_steps = resolve(spec)
    lam = entry.laplacian_eigenvalues(grid)
    is_wave = entry.kind == "wave"
    if is_wave:
        tables = build_kg_tables(grid, lam, problem.omega, tau)
        state = kg.kg_init(problem)
    else:
        tables = build_nls_tables(grid, lam, tau)
        state = nls.nls_init(problem)
    cfg = avf.FixedPointConfig(tol=spec.fp_tol, max_iters=spec.fp_max_iters)

    transform = spec.snapshot_transform or entry.default_transform
    snap_left = sorted(spec.snapshot_times)
    out_dir = Path(spec.out) if spec.out is not None else None
    files: list[Path] = []
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    def energies(st):
        if is_wave:
            return kg.kg_modified_energy(st, problem), kg.kg_original_energy(st, problem)
        return nls.nls_modified_energy(st, problem), nls.nls_hamiltonian(st, problem)

    def record(st, iters):
        e_mod, e_orig = energies(st)
        err_l2 = err_inf = None
        if entry.exact is not None:
            err_l2, err_inf = error_norms(st.u, entry.exact, st.t)
        return RunRecord(t=st.t, E_mod=e_mod, E_orig=e_orig,
                         err_l2=err_l2, err_inf=err_inf, iters=iters)

    def maybe_snapshot(st):
        while snap_left and st.t >= snap_left[0] - 0.5 * tau:
            target = snap_left.pop(0)
            if out_dir is not None:
                path = out_dir / f"snapshot_t{target:g}.dat"
                write_snapshot(path, st.u, st.t, transform)
                files.append(path)

    records = [record(state, None)]
    maybe_snapshot(state)
    total_iters = 0
    t_start = time.perf_counter()
    for step_idx in range(1, n_steps + 1):
        if is_wave:
            if spec.scheme == "esavs":
                state = kg.kg_step(state, tables, problem)
                iters = 0
            else:
                state, iters = avf.eavf_step_kg(state, tables, problem, cfg)
        else:
            if spec.scheme == "esavs":
                state = nls.nls_step(state, tables, problem)
                iters = 0
            else:
                state, iters = avf.eavf_step_nls(state, tables, problem, cfg)
        total_iters += iters
        if step_idx % spec.cadence == 0 or step_idx == n_steps:
            records.append(record(state, iters))
        maybe_snapshot(state)
    wall = time.perf_counter() - t_start

    if out_dir is not None:
        csv_path = out_dir / "run.csv"
        write_run_csv(csv_path, records)
        files.append(csv_path)
    return RunResult(spec=spec, records=records, final_state=state,
                     total_iters=total_iters, wall_seconds=wall, files=files)


# --------------------------------------------------------------------------
# output files
# --------------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    assert np.isfinite(value), "refusing to write non-finite diagnostics"
    return f"{value:.16e}"


def write_run_csv(path: Path, records: list[RunRecord]):
    times = [r.t for r in records]
    assert all(t1 <= t2 for t1, t2 in zip(times, times[1:])), "records out of order"
    lines = ["t,E_mod,E_orig,err_l2,err_inf,iters"]
    for r in records:
        lines.append(",".join(
            _fmt(v) for v in (r.t, r.E_mod, r.E_orig, r.err_l2, r.err_inf, r.iters)
        ))
    Path(path).write_text("\n".join(lines) + "\n")


def write_snapshot(path: Path, u: Field | ComplexField, t: float, transform: str):
    """Self-describing binary field dump; see the module docstring for the layout."""
    grid = u.grid
    if transform == "sin_half":
        payload = np.sin(0.5 * np.real(u.values))
    elif transform == "identity":
        payload = u.values
    else:
        raise ValueError(f"unknown transform {transform!r}")
    complex_payload = np.iscomplexobj(payload)
    header = [
        "expsav-snapshot 1",
        f"dim {grid.dim}",
        "shape " + " ".join(str(m) for m in grid.n),
        "a " + " ".join(f"{v!r}" for v in grid.a),
        "b " + " ".join(f"{v!r}" for v in grid.b),
        f"time {t!r}",
        f"transform {transform}",
        f"components {2 if complex_payload else 1}",
        "dtype <f8",
        "data",
    ]
    assert np.all(np.isfinite(payload)), "refusing to write non-finite snapshot"
    blob = b"".join(line.encode() + b"\n" for line in header)
    if complex_payload:
        blob += payload.real.astype("<f8").tobytes() + payload.imag.astype("<f8").tobytes()
    else:
        blob += payload.astype("<f8").tobytes()
    Path(path).write_bytes(blob)


def read_snapshot(path: Path) -> tuple[dict, np.ndarray]:
    """Inverse of write_snapshot; returns (header dict, flat values)."""
    raw = Path(path).read_bytes()
    header: dict[str, str] = {}
    offset = 0
    while True:
        end = raw.index(b"\n", offset)
        line = raw[offset:end].decode()
        offset = end + 1
        if line == "data":
            break
        key, _, value = line.partition(" ")
        header[key] = value
    flat = np.frombuffer(raw[offset:], dtype="<f8")
    if header.get("components") == "2":
        half = flat.size // 2
        return header, flat[:half] + 1j * flat[half:]
    return header, flat


# --------------------------------------------------------------------------
# experiment drivers
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LadderRow:
    level: int
    n: int
    tau: float
    err_l2: float
    err_inf: float
    order_l2: float | None
    order_inf: float | None


def convergence_driver(base: ProblemSpec, levels: int) -> list[LadderRow]:
    """Refinement ladder from the base spec; halves tau (and h, for wave problems)."""
    if levels < 2:
        raise ValueError("need at least 2 ladder levels")
    entry, grid, _, tau, _, _ = resolve(base)
    n0 = grid.n[0]
    rows: list[LadderRow] = []
    for level in range(levels):
        factor = 2**level
        n = n0 * factor if entry.refine == "space_time" else n0
        spec = replace(base, n=n, tau=tau / factor, out=None)
        result = run(spec)
        last = result.records[-1]
        if last.err_l2 is None:
            raise ValueError(f"{base.problem} has no analytic solution to converge against")
        rows.append(LadderRow(level=level, n=n, tau=tau / factor,
                              err_l2=last.err_l2, err_inf=last.err_inf,
                              order_l2=None, order_inf=None))
    orders_l2 = convergence_orders([r.err_l2 for r in rows])
    orders_inf = convergence_orders([r.err_inf for r in rows])
    for idx in range(1, levels):
        rows[idx] = replace(rows[idx], order_l2=orders_l2[idx - 1], order_inf=orders_inf[idx - 1])
    return rows


def write_ladder_csv(path: Path, rows: list[LadderRow]):
    lines = ["level,n,tau,err_l2,order_l2,err_inf,order_inf"]
    for r in rows:
        lines.append(",".join([
            str(r.level), str(r.n), _fmt(r.tau),
            _fmt(r.err_l2), _fmt(r.order_l2), _fmt(r.err_inf), _fmt(r.order_inf),
        ]))
    Path(path).write_text("\n".join(lines) + "\n")


@dataclass(frozen=True)
class CompareRow:
    scheme: str
    err_l2: float | None
    err_inf: float | None
    energy_drift: float
    wall_seconds: float
    total_iters: int


def compare_driver(spec: ProblemSpec) -> list[CompareRow]:
    """Run both schemes on identical settings; ESAVS must report zero iterations."""
    rows = []
    for scheme in SCHEMES:
        result = run(replace(spec, scheme=scheme, out=None))
        drift = float(np.max(np.abs(
            np.array([r.E_mod for r in result.records]) - result.records[0].E_mod
        )))
        last = result.records[-1]
        rows.append(CompareRow(scheme=scheme, err_l2=last.err_l2, err_inf=last.err_inf,
                               energy_drift=drift, wall_seconds=result.wall_seconds,
                               total_iters=result.total_iters))
    esavs = next(r for r in rows if r.scheme == "esavs")
    assert esavs.total_iters == 0, "linearly implicit scheme must not iterate"
    return rows


def write_compare_csv(path: Path, rows: list[CompareRow]):
    lines = ["scheme,err_l2,err_inf,energy_drift,wall_seconds,total_iters"]
    for r in rows:
        lines.append(",".join([
            r.scheme, _fmt(r.err_l2), _fmt(r.err_inf), _fmt(r.energy_drift),
            _fmt(r.wall_seconds), str(r.total_iters),
        ]))
    Path(path).write_text("\n".join(lines) + "\n")
