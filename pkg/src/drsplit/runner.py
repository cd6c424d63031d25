"""Experiment runner: configuration, persistence, and the identity sweep.

Trace CSV and summary JSON are written with 17 significant digits and fixed
key/column order, so identical (config, seed) inputs produce byte-identical
files. Wall time is kept on the in-memory summary only; the persisted JSON
carries ``null`` there to preserve reproducibility of the artifact.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigError
from .identities import (
    ResidualReport,
    affine_gap_residuals,
    dr_decomposition_residuals,
    eight_point_residual,
    fixed_point_step_residuals,
    linear_relation_residual,
    skew_residuals,
    three_point_residuals,
)
from .operators import (
    MonotoneOperator,
    dual_flip,
    inner_shift,
    inverse,
    normal_cone,
    outer_shift,
    piecewise_linear_1d,
    product,
    projector_operator,
    rotator,
    scaled_id_plus_normal_cone,
)
from .scenarios import (
    CheckResult,
    get_scenario,
    random_affine_pair,
    random_pw1d_pair,
)
from .space import AffineSubspace, Ball, Box, NonnegativeOrthant, Singleton
from .splitting import DRTrace, dr_apply, iterate

# ---------------------------------------------------------------------------
# configuration


@dataclass(eq=False)
class ScenarioConfig:
    scenario: str
    dim: Optional[int] = None
    x0: Optional[tuple[float, ...]] = None
    max_iters: Optional[int] = None
    step_tol: Optional[float] = None
    seed: int = 0
    out_trace: Optional[str] = None
    out_summary: Optional[str] = None
    params: dict = field(default_factory=dict)


def parse_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` text file; '#' starts a comment."""
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
                key, value = line.split("=", 1)
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return values


def _parse_x0(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip() != "")
    except ValueError as exc:
        raise ConfigError(f"invalid x0 {text!r}: {exc}") from exc


def make_config(file_values: dict[str, str] | None = None, **overrides) -> ScenarioConfig:
    """Merge config-file values with overrides; overrides win."""
    merged: dict[str, object] = dict(file_values or {})
    for key, value in overrides.items():
        if value is not None:
            merged[key] = value
    scenario = merged.pop("scenario", None)
    if not scenario:
        raise ConfigError("no scenario given")
    cfg = ScenarioConfig(scenario=str(scenario))
    try:
        if "dim" in merged:
            cfg.dim = int(merged.pop("dim"))
        if "x0" in merged:
            raw = merged.pop("x0")
            cfg.x0 = _parse_x0(raw) if isinstance(raw, str) else tuple(float(v) for v in raw)
        if "iters" in merged:
            cfg.max_iters = int(merged.pop("iters"))
        if "tol" in merged:
            cfg.step_tol = float(merged.pop("tol"))
        if "seed" in merged:
            cfg.seed = int(merged.pop("seed"))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration value: {exc}") from exc
    cfg.out_trace = merged.pop("out_trace", None)
    cfg.out_summary = merged.pop("out_summary", None)
    for key, value in merged.items():
        try:
            cfg.params[key] = float(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid parameter {key}={value!r}") from exc
    return cfg


# ---------------------------------------------------------------------------
# persistence


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def write_trace_csv(trace: DRTrace, path: str) -> None:
    """Columns: n, governing, shadow, dual shadow, second shadow, step norm,
    running displacement estimate (the current step vector)."""
    d = trace.problem.dim
    header = (
        ["n"]
        + [f"g{i}" for i in range(d)]
        + [f"s{i}" for i in range(d)]
        + [f"ds{i}" for i in range(d)]
        + [f"bs{i}" for i in range(d)]
        + ["step_norm"]
        + [f"v{i}" for i in range(d)]
    )
    lines = [",".join(header)]
    for r in trace.records:
        cells = [str(r.n)]
        for vec in (r.governing, r.shadow, r.dual_shadow, r.b_shadow):
            cells.extend(format_float(c) for c in vec)
        cells.append(format_float(np.linalg.norm(r.step)))
        cells.extend(format_float(c) for c in r.step)
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _json_number(x: float) -> str:
    if x is None or not math.isfinite(x):
        return "null"
    return format_float(x)


def _json_vector(v) -> str:
    return "[" + ", ".join(_json_number(float(c)) for c in v) + "]"


@dataclass(eq=False)
class RunSummary:
    scenario: str
    iterations: int
    v_estimate: np.ndarray
    final_step_norm: float
    shadow_limit: np.ndarray
    checks: dict[str, CheckResult]
    wall_ms: float

    @property
    def all_passed(self) -> bool:
        return all(c.verdict for c in self.checks.values())

    def to_json_text(self, include_wall: bool = False) -> str:
        check_parts = []
        for name, c in self.checks.items():
            witness = "null" if c.witness_index is None else str(int(c.witness_index))
            check_parts.append(
                f'{json.dumps(name)}: {{"verdict": {str(bool(c.verdict)).lower()}, '
                f'"worst_value": {_json_number(c.worst_value)}, '
                f'"witness_index": {witness}}}'
            )
        wall = _json_number(self.wall_ms) if include_wall else "null"
        return (
            "{\n"
            f'  "scenario": {json.dumps(self.scenario)},\n'
            f'  "iters": {self.iterations},\n'
            f'  "v_estimate": {_json_vector(self.v_estimate)},\n'
            f'  "final_step_norm": {_json_number(self.final_step_norm)},\n'
            f'  "shadow_limit": {_json_vector(self.shadow_limit)},\n'
            '  "checks": {' + ", ".join(check_parts) + "},\n"
            f'  "wall_ms": {wall}\n'
            "}\n"
        )


def write_summary_json(summary: RunSummary, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(summary.to_json_text(include_wall=False))


# ---------------------------------------------------------------------------
# running scenarios


def run(config: ScenarioConfig) -> tuple[RunSummary, DRTrace]:
    """Build the scenario, iterate, evaluate its checks, persist outputs."""
    spec = get_scenario(config.scenario)
    t0 = time.perf_counter()
    inst = spec.build(dim=config.dim, x0=config.x0, seed=config.seed, **config.params)
    max_iters = config.max_iters if config.max_iters is not None else inst.default_iters
    step_tol = config.step_tol if config.step_tol is not None else inst.default_step_tol
    trace = iterate(inst.problem, max_iters=max_iters, step_tol=step_tol, shadow_tol=inst.shadow_tol)
    checks = inst.run_checks(trace)
    wall_ms = 1000.0 * (time.perf_counter() - t0)
    summary = RunSummary(
        scenario=inst.name,
        iterations=len(trace),
        v_estimate=trace.v_estimate,
        final_step_norm=float(np.linalg.norm(trace.records[-1].step)),
        shadow_limit=trace.shadow[-1],
        checks=checks,
        wall_ms=wall_ms,
    )
    try:
        if config.out_trace:
            write_trace_csv(trace, config.out_trace)
        if config.out_summary:
            write_summary_json(summary, config.out_summary)
    except OSError as exc:
        raise ConfigError(f"cannot write output: {exc}") from exc
    return summary, trace


# ---------------------------------------------------------------------------
# the registered operator-pair library and the identity sweep


@dataclass(eq=False)
class PairEntry:
    label: str
    A: MonotoneOperator
    B: MonotoneOperator
    dim: int
    skew_family: bool = False
    affine_sets: Optional[tuple] = None


def operator_pair_library() -> list[PairEntry]:
    """Registered operator pairs covering dimensions 1-5 and every combinator."""
    entries: list[PairEntry] = []
    entries.append(
        PairEntry(
            "points-1d",
            normal_cone(Singleton(np.array([0.0]))),
            normal_cone(Singleton(np.array([2.0]))),
            1,
        )
    )
    entries.append(
        PairEntry(
            "intervals-1d",
            piecewise_linear_1d([(0.0, math.inf, 0.0), (1.0, 0.0, math.inf)]),
            normal_cone(Box(np.array([0.5]), np.array([2.0]))),
            1,
        )
    )
    a1, b1, _ = random_pw1d_pair(np.random.default_rng(2024))
    entries.append(PairEntry("kinked-1d", a1, b1, 1))

    orthant = NonnegativeOrthant(2)
    entries.append(PairEntry("rotator-cone", normal_cone(orthant), rotator(), 2))
    entries.append(PairEntry("rotator-rotator", rotator(), rotator(), 2, skew_family=True))
    entries.append(PairEntry("rotator-inverse", rotator(), inverse(rotator()), 2))

    axis = AffineSubspace(np.zeros(2), np.array([[1.0, 0.0]]))
    entries.append(
        PairEntry(
            "shifted-subspace",
            normal_cone(axis),
            scaled_id_plus_normal_cone(1.0, AffineSubspace(np.array([0.0, -1.0]), axis.basis)),
            2,
        )
    )
    upper = AffineSubspace(np.array([0.0, 1.0]), np.array([[1.0, 0.0]]))
    lower = AffineSubspace(np.array([0.0, -1.0]), np.array([[1.0, 0.0]]))
    entries.append(PairEntry("parallel-lines", normal_cone(upper), normal_cone(lower), 2))

    diag = AffineSubspace.from_span(np.zeros(2), [np.array([1.0, 1.0])])
    entries.append(
        PairEntry("projectors", projector_operator(axis), projector_operator(diag), 2)
    )
    entries.append(
        PairEntry(
            "affine-consistent",
            normal_cone(axis),
            normal_cone(diag),
            2,
            affine_sets=(axis, diag),
        )
    )
    entries.append(
        PairEntry(
            "disjoint-balls",
            normal_cone(Ball(np.array([0.0, 0.0]), 1.0)),
            normal_cone(Ball(np.array([4.0, 0.0]), 1.0)),
            2,
        )
    )
    entries.append(
        PairEntry(
            "product-3d",
            product(normal_cone(orthant), normal_cone(Singleton(np.array([0.0])))),
            product(rotator(), normal_cone(Singleton(np.array([2.0])))),
            3,
        )
    )
    entries.append(
        PairEntry(
            "ball-box-4d",
            normal_cone(Ball(0.5 * np.ones(4), 1.2)),
            normal_cone(Box(-np.ones(4), np.ones(4))),
            4,
        )
    )
    rng5 = np.random.default_rng(55)
    U5, V5, _ = random_affine_pair(5, rng5)
    a5, b5 = normal_cone(U5), normal_cone(V5)
    entries.append(PairEntry("random-affine-5d", a5, b5, 5, affine_sets=(U5, V5)))
    w5 = rng5.uniform(-1.0, 1.0, 5)
    entries.append(PairEntry("shifted-5d", outer_shift(a5, w5), inner_shift(b5, w5), 5))
    entries.append(PairEntry("inverse-dual-5d", inverse(a5), dual_flip(b5), 5))
    return entries


@dataclass(eq=False)
class WorstRecord:
    value: float
    pair: str
    sample: int

    def to_json_dict(self) -> dict:
        return {"value": self.value, "pair": self.pair, "sample": self.sample}


@dataclass(eq=False)
class IdentitySweep:
    """Worst residual per identity over every pair and sample, plus verdicts."""

    seed: int
    samples: int
    worst: dict[str, WorstRecord]
    slack_worst: dict[str, WorstRecord]
    rel_tol: float
    slack_tol: float

    @property
    def passed(self) -> bool:
        ok = all(rec.value <= self.rel_tol for rec in self.worst.values())
        ok_slack = all(rec.value >= -self.slack_tol for rec in self.slack_worst.values())
        return ok and ok_slack

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "rel_tol": self.rel_tol,
            "slack_tol": self.slack_tol,
            "passed": self.passed,
            "worst": {k: v.to_json_dict() for k, v in sorted(self.worst.items())},
            "slack_worst": {k: v.to_json_dict() for k, v in sorted(self.slack_worst.items())},
        }


def _absorb(worst: dict[str, WorstRecord], report: ResidualReport, pair: str, sample: int):
    for name, value in report.entries.items():
        if name.endswith("_slack"):
            continue
        if name not in worst or value > worst[name].value:
            worst[name] = WorstRecord(value, pair, sample)


def _absorb_slacks(slacks: dict[str, WorstRecord], report: ResidualReport, pair: str, sample: int):
    for name, value in report.entries.items():
        if not name.endswith("_slack"):
            continue
        if name not in slacks or value < slacks[name].value:
            slacks[name] = WorstRecord(value, pair, sample)


def _absorb_value(worst: dict[str, WorstRecord], name: str, value: float, pair: str, sample: int):
    if name not in worst or value > worst[name].value:
        worst[name] = WorstRecord(value, pair, sample)


def _scaled_vec_residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    raw = float(np.linalg.norm(lhs - rhs))
    return raw / (1.0 + max(float(np.linalg.norm(lhs)), float(np.linalg.norm(rhs))))


def check_identities(
    seed: int = 7,
    samples: int = 200,
    pairs: Optional[list[PairEntry]] = None,
    rel_tol: float = 1e-9,
    slack_tol: float = 1e-10,
) -> IdentitySweep:
    """Evaluate every identity over every registered pair at seeded random points."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    entries = operator_pair_library() if pairs is None else pairs
    rng = np.random.default_rng(seed)
    worst: dict[str, WorstRecord] = {}
    slack_worst: dict[str, WorstRecord] = {}

    for d in sorted({e.dim for e in entries}):
        tag = f"points-dim{d}"
        for s in range(samples):
            pts = rng.standard_normal((8, d)) * 1.5
            _absorb(worst, three_point_residuals(pts[0], pts[1], pts[2]), tag, s)
            _absorb_value(
                worst, "eight_point", eight_point_residual(*pts), tag, s
            )

    for entry in entries:
        A, B = entry.A, entry.B
        a_inv = inverse(A)
        b_inv = inverse(B)
        dual_b = dual_flip(b_inv)
        prod = product(A, B)
        for s in range(samples):
            x = rng.standard_normal(entry.dim) * 1.5
            y = rng.standard_normal(entry.dim) * 1.5
            rep = dr_decomposition_residuals(A, B, x, y)
            _absorb(worst, rep, entry.label, s)
            _absorb_slacks(slack_worst, rep, entry.label, s)
            _absorb(worst, fixed_point_step_residuals(A, B, x), entry.label, s)
            _absorb_value(
                worst,
                "inverse_resolvent_sum",
                max(
                    _scaled_vec_residual(A.resolvent_map(x) + a_inv.resolvent_map(x), x),
                    _scaled_vec_residual(B.resolvent_map(x) + b_inv.resolvent_map(x), x),
                ),
                entry.label,
                s,
            )
            _absorb_value(
                worst,
                "self_duality",
                _scaled_vec_residual(dr_apply(A, B, x), dr_apply(a_inv, dual_b, x)),
                entry.label,
                s,
            )
            xy = np.concatenate([x, y])
            _absorb_value(
                worst,
                "product_resolvent",
                _scaled_vec_residual(
                    prod.resolvent_map(xy),
                    np.concatenate([A.resolvent_map(x), B.resolvent_map(y)]),
                ),
                entry.label,
                s,
            )
            if A.is_linear_relation and B.is_linear_relation:
                _absorb_value(
                    worst,
                    "linear_relation_step",
                    linear_relation_residual(A, B, x),
                    entry.label,
                    s,
                )
            if entry.skew_family:
                _absorb(worst, skew_residuals(A, B, x, y), entry.label, s)
            if entry.affine_sets is not None:
                _absorb(
                    worst,
                    affine_gap_residuals(entry.affine_sets[0], entry.affine_sets[1], x),
                    entry.label,
                    s,
                )
    return IdentitySweep(
        seed=seed,
        samples=samples,
        worst=worst,
        slack_worst=slack_worst,
        rel_tol=rel_tol,
        slack_tol=slack_tol,
    )
