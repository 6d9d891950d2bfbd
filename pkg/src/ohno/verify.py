"""Catalogue of identities with grid-based verification and reporting.

Each catalogue entry is an :class:`IdentitySpec` with a fixed name, a kind,
a parameter list, and a one-line statement.  Two kinds exist:

* ``numeric``: both sides are evaluated to floats; a point passes when the
  absolute residual is at most ``cfg.tol * max(evals, 1) * 4``, where
  ``evals`` counts the distinct indices appearing in the evaluated
  combinations (each contributes one evaluation whose error is of order
  ``cfg.tol``; the factor 4 absorbs accumulation and rounding).
* ``exact-symbolic``: both sides are exact rational combinations and must
  be identical term by term; no floats are involved.

:func:`verify` expands a parameter grid (per-identity defaults, overridable
point-wise), refuses points that violate an identity's hypotheses (refused
points are recorded with a reason and excluded from the verdict; if every
point is refused the call raises), and returns a :class:`VerificationReport`.
Reports serialise to JSON (all points, including refusals) or CSV (evaluated
points only) via :func:`report_to_file`.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterator, Mapping, Optional, Union

from ohno.indices import (
    Index,
    IndexCombination,
    dual_linear,
    hast,
    iter_admissible,
    repeat,
    sha,
    star_single,
)
from ohno.sums import (
    composed_single,
    composed_split,
    dual_gap,
    dual_gap_operands,
    dual_gap_skew,
    dualized_hast_expansion,
    dualized_shuffle_expansion,
    grouped_single,
    grouped_split,
    hast_merge_sides,
    hast_shifted_sum,
    hoffman_sides,
    ohno_sum_symbolic,
    term_a,
    term_b,
    term_c,
)
from ohno.zeta import EvalConfig, eval_combination, eval_zeta

__all__ = [
    "IdentitySpec",
    "PointResult",
    "VerificationReport",
    "list_identities",
    "report_to_file",
    "verify",
]

#: Numeric pass threshold is ``cfg.tol * max(evals, 1) * RESIDUAL_MARGIN``.
RESIDUAL_MARGIN = 4


@dataclass(frozen=True)
class IdentitySpec:
    """A catalogue entry: what is verified and over which parameters."""

    name: str
    kind: str  # "numeric" | "exact-symbolic"
    params: tuple[str, ...]
    statement: str


@dataclass(frozen=True)
class PointResult:
    """Outcome at a single grid point.

    Exactly one of ``residual`` (numeric kind) and ``equal`` (exact kind) is
    set for evaluated points; refused points carry a ``reason`` instead.
    """

    params: Mapping[str, Any]
    residual: Optional[float] = None
    equal: Optional[bool] = None
    threshold: Optional[float] = None
    evals: int = 0
    elapsed_ms: float = 0.0
    refused: bool = False
    reason: Optional[str] = None

    @property
    def passed(self) -> Optional[bool]:
        """True/False for evaluated points; None for refused ones."""
        if self.refused:
            return None
        if self.equal is not None:
            return self.equal
        return self.residual <= self.threshold


@dataclass(frozen=True)
class VerificationReport:
    """Aggregate outcome of one :func:`verify` call."""

    identity: str
    kind: str
    grid: Mapping[str, Any]
    tol: float
    passed: bool
    max_residual: Optional[float]
    points: tuple[PointResult, ...]
    elapsed_ms: float

    @property
    def evaluated(self) -> tuple[PointResult, ...]:
        return tuple(p for p in self.points if not p.refused)

    @property
    def refusals(self) -> tuple[PointResult, ...]:
        return tuple(p for p in self.points if p.refused)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        n_eval = len(self.evaluated)
        n_ref = len(self.refusals)
        head = f"{self.identity}: {status} ({n_eval} evaluated, {n_ref} refused"
        if self.kind == "numeric":
            mr = "n/a" if self.max_residual is None else f"{self.max_residual:.3e}"
            return f"{head}, max residual {mr})"
        unequal = sum(1 for p in self.evaluated if p.equal is False)
        tail = "all equal" if unequal == 0 else f"{unequal} unequal"
        return f"{head}, {tail})"


# -- the catalogue ------------------------------------------------------------

_SPECS: dict[str, IdentitySpec] = {}
_DEFAULTS: dict[str, dict[str, Any]] = {}


def _register(name: str, kind: str, params: tuple[str, ...], statement: str, defaults: dict[str, Any]) -> None:
    _SPECS[name] = IdentitySpec(name, kind, params, statement)
    _DEFAULTS[name] = defaults


_register(
    "duality",
    "numeric",
    ("k",),
    "the value of an admissible index equals the value of its dual",
    {"weight": 6},
)
_register(
    "ohno",
    "numeric",
    ("k", "m"),
    "order-m shifted sums of an admissible index and of its dual agree",
    {"weight": 5, "m": (0, 1, 2)},
)
_register(
    "stuffle_single",
    "numeric",
    ("n", "k"),
    "the product of a depth-one value with any value expands through the depth-one harmonic product",
    {"n": (2, 3), "weight": 4},
)
_register(
    "hoffman",
    "numeric",
    ("k",),
    "raising one entry (summed over positions) equals splitting one entry (summed over splits)",
    {"weight": 6},
)
_register(
    "hmos",
    "numeric",
    ("s", "t", "m"),
    "the depth-one dual gap at block length zero is symmetric in its two parameters",
    {"s": (2, 3, 4, 5), "t": (2, 3, 4, 5), "m": (0, 1, 2, 3)},
)
_register(
    "main",
    "numeric",
    ("s", "t", "l", "m"),
    "the dual gap against a {2}-block is symmetric in its two parameters",
    {"s": (2, 3, 4), "t": (2, 3, 4), "l": (0, 1, 2), "m": (0, 1, 2)},
)
_register(
    "lemma_fmpre1",
    "numeric",
    ("s", "t", "l", "m"),
    "the dual gap equals the signed pair of position-sum families of the shifted body",
    {"s": (2, 3), "t": (1, 2, 3), "l": (0, 1), "m": (0, 1, 2)},
)
_register(
    "lemma_fmpre2",
    "numeric",
    ("s", "t", "l", "m"),
    "telescoping two position-sum families reduces to one shifted position-sum",
    {"s": (1, 2, 3), "t": (1, 2), "l": (0, 1), "m": (1, 2)},
)
_register(
    "lemma_fm",
    "numeric",
    ("s", "t", "l", "m"),
    "the first difference of dual gaps equals the signed shifted position-sums",
    {"s": (3, 4), "t": (1, 2), "l": (0, 1), "m": (1, 2)},
)
_register(
    "lemma_oooo",
    "numeric",
    ("s", "t", "l", "m"),
    "dualised interleave minus dualised position-sum families are symmetric in the two parameters",
    {"s": (3, 4), "t": (3, 4), "l": (0, 1), "m": (0, 1, 2)},
)
_register(
    "lemma_dddd",
    "numeric",
    ("s", "t", "l", "m"),
    "the skew dual gap satisfies the triangle recurrence in (order, parameters)",
    {"s": (3, 4), "t": (3, 4), "l": (0, 1), "m": (1, 2)},
)
_register(
    "sha_expansion_oooo",
    "exact-symbolic",
    ("s", "t", "l"),
    "closed expansions of the dualised interleave and dualised position-sum families",
    {"s": (2, 3, 4), "t": (2, 3, 4), "l": (1, 2)},
)
_register(
    "hast_symmetry",
    "exact-symbolic",
    ("s", "t", "l"),
    "a position-sum against an interleaved {2}-block merges into a symmetric closed form",
    {"s": (2, 3, 4), "t": (1, 2, 3), "l": (0, 1, 2)},
)
_register(
    "add1",
    "exact-symbolic",
    ("s", "l", "m", "p", "q"),
    "layered block sums with a raised entry equal weighted composition sums",
    {"s": (2, 3), "l": (1, 2), "m": (0, 1, 2), "p": None, "q": None},
)
_register(
    "add2",
    "exact-symbolic",
    ("s", "l", "m", "p", "q"),
    "layered block sums with a split entry equal weighted composition sums",
    {"s": (2, 3), "l": (1, 2), "m": (0, 1, 2), "p": None, "q": None},
)
_register(
    "abc_decomposition",
    "numeric",
    ("s", "l", "m"),
    "the skew dual gap against parameter 2 equals its three-part closed decomposition",
    {"s": (2, 3), "l": (0, 1), "m": (0, 1)},
)


def list_identities() -> tuple[IdentitySpec, ...]:
    """All catalogue entries, in stable registry order."""
    return tuple(_SPECS.values())


# -- hypothesis checks --------------------------------------------------------


def _need_int(params: Mapping[str, Any], name: str, low: int) -> Optional[str]:
    v = params[name]
    if not isinstance(v, int) or isinstance(v, bool):
        return f"{name} must be an integer, got {v!r}"
    if v < low:
        return f"{name} must be at least {low}, got {v}"
    return None


def _need_admissible(params: Mapping[str, Any], name: str = "k") -> Optional[str]:
    k = params[name]
    if not isinstance(k, Index):
        return f"{name} must be an index, got {k!r}"
    if not k.admissible:
        return f"{name} must be admissible (nonempty, last entry >= 2), got {k}"
    return None


def _chk_many(params: Mapping[str, Any], bounds: dict[str, int]) -> Optional[str]:
    for name, low in bounds.items():
        reason = _need_int(params, name, low)
        if reason:
            return reason
    return None


def _chk_pq_window(params: Mapping[str, Any]) -> Optional[str]:
    reason = _chk_many(params, {"s": 2, "l": 1, "m": 0})
    if reason:
        return reason
    l = params["l"]
    for name in ("p", "q"):
        reason = _need_int(params, name, 1)
        if reason:
            return reason
        if params[name] > l + 1:
            return f"{name} must be at most l+1 = {l + 1}, got {params[name]}"
    return None


_CHECKS = {
    "duality": lambda p: _need_admissible(p),
    "ohno": lambda p: _need_admissible(p) or _need_int(p, "m", 0),
    "stuffle_single": lambda p: _need_int(p, "n", 2) or _need_admissible(p),
    "hoffman": lambda p: _need_admissible(p),
    "hmos": lambda p: _chk_many(p, {"s": 2, "t": 2, "m": 0}),
    "main": lambda p: _chk_many(p, {"s": 2, "t": 2, "l": 0, "m": 0}),
    "lemma_fmpre1": lambda p: _chk_many(p, {"s": 2, "t": 1, "l": 0, "m": 0}),
    "lemma_fmpre2": lambda p: _chk_many(p, {"s": 1, "t": 1, "l": 0, "m": 1}),
    "lemma_fm": lambda p: _chk_many(p, {"s": 3, "t": 1, "l": 0, "m": 1}),
    "lemma_oooo": lambda p: _chk_many(p, {"s": 3, "t": 3, "l": 0, "m": 0}),
    "lemma_dddd": lambda p: _chk_many(p, {"s": 3, "t": 3, "l": 0, "m": 1}),
    "sha_expansion_oooo": lambda p: _chk_many(p, {"s": 2, "t": 2, "l": 1}),
    "hast_symmetry": lambda p: _chk_many(p, {"s": 2, "t": 1, "l": 0}),
    "add1": _chk_pq_window,
    "add2": _chk_pq_window,
    "abc_decomposition": lambda p: _chk_many(p, {"s": 2, "l": 0, "m": 0}),
}


# -- point runners ------------------------------------------------------------


def _distinct(*combs: IndexCombination) -> int:
    seen: set[Index] = set()
    for c in combs:
        seen.update(c.support())
    return len(seen)


def _skew_combs(s: int, t: int, l: int, m: int) -> tuple[IndexCombination, ...]:
    plain_st, dual_st = dual_gap_operands(s, Index((t + 1,)), l)
    plain_ts, dual_ts = dual_gap_operands(t, Index((s + 1,)), l)
    return tuple(ohno_sum_symbolic(c, m) for c in (plain_st, dual_st, plain_ts, dual_ts))


def _run_duality(cfg: EvalConfig, k: Index) -> tuple[float, int]:
    kd = k.dual()
    residual = abs(eval_zeta(k, cfg) - eval_zeta(kd, cfg))
    return residual, len({k, kd})


def _run_ohno(cfg: EvalConfig, k: Index, m: int) -> tuple[float, int]:
    lhs = ohno_sum_symbolic(k, m)
    rhs = ohno_sum_symbolic(k.dual(), m)
    residual = abs(eval_combination(lhs, cfg) - eval_combination(rhs, cfg))
    return residual, _distinct(lhs, rhs)


def _run_stuffle(cfg: EvalConfig, n: int, k: Index) -> tuple[float, int]:
    merged = star_single(n, k)
    product = eval_zeta(Index((n,)), cfg) * eval_zeta(k, cfg)
    residual = abs(product - eval_combination(merged, cfg))
    factors = IndexCombination(((Index((n,)), 1), (k, 1)))
    return residual, _distinct(factors, merged)


def _run_hoffman(cfg: EvalConfig, k: Index) -> tuple[float, int]:
    lhs, rhs = hoffman_sides(k)
    residual = abs(eval_combination(lhs, cfg) - eval_combination(rhs, cfg))
    return residual, _distinct(lhs, rhs)


def _run_hmos(cfg: EvalConfig, s: int, t: int, m: int) -> tuple[float, int]:
    residual = abs(dual_gap_skew(s, t, 0, m, cfg))
    return residual, _distinct(*_skew_combs(s, t, 0, m))


def _run_main(cfg: EvalConfig, s: int, t: int, l: int, m: int) -> tuple[float, int]:
    residual = abs(dual_gap_skew(s, t, l, m, cfg))
    return residual, _distinct(*_skew_combs(s, t, l, m))


def _run_fmpre1(cfg: EvalConfig, s: int, t: int, l: int, m: int) -> tuple[float, int]:
    body = sha(Index((t + 1,)), repeat(2, l))
    plain_fam = hast_shifted_sum(body, s, m)
    dual_fam = hast_shifted_sum(dual_linear(body), s, m)
    lhs = dual_gap(s, Index((t + 1,)), l, m, cfg)
    rhs = eval_combination(dual_fam - plain_fam, cfg)
    plain, dualised = dual_gap_operands(s, Index((t + 1,)), l)
    evals = _distinct(
        ohno_sum_symbolic(plain, m), ohno_sum_symbolic(dualised, m), plain_fam, dual_fam
    )
    return abs(lhs - rhs), evals


def _run_fmpre2(cfg: EvalConfig, s: int, t: int, l: int, m: int) -> tuple[float, int]:
    body = sha(Index((t + 1,)), repeat(2, l))
    residuals: list[float] = []
    pieces: list[IndexCombination] = []
    for base in (body, dual_linear(body)):
        upper = hast_shifted_sum(base, s, m)
        lower = hast_shifted_sum(base, s + 1, m - 1)
        merged = ohno_sum_symbolic(hast(s, base), m)
        residuals.append(abs(eval_combination(upper - lower, cfg) - eval_combination(merged, cfg)))
        pieces.extend((upper, lower, merged))
    return max(residuals), _distinct(*pieces)


def _run_fm(cfg: EvalConfig, s: int, t: int, l: int, m: int) -> tuple[float, int]:
    body = sha(Index((t + 1,)), repeat(2, l))
    plain_fam = ohno_sum_symbolic(hast(s - 1, body), m)
    dual_fam = ohno_sum_symbolic(hast(s - 1, dual_linear(body)), m)
    lhs = dual_gap(s - 1, Index((t + 1,)), l, m, cfg) - dual_gap(s, Index((t + 1,)), l, m - 1, cfg)
    rhs = eval_combination(dual_fam - plain_fam, cfg)
    p1, d1 = dual_gap_operands(s - 1, Index((t + 1,)), l)
    p2, d2 = dual_gap_operands(s, Index((t + 1,)), l)
    evals = _distinct(
        ohno_sum_symbolic(p1, m),
        ohno_sum_symbolic(d1, m),
        ohno_sum_symbolic(p2, m - 1),
        ohno_sum_symbolic(d2, m - 1),
        plain_fam,
        dual_fam,
    )
    return abs(lhs - rhs), evals


def _run_oooo(cfg: EvalConfig, s: int, t: int, l: int, m: int) -> tuple[float, int]:
    def side(x: int, y: int) -> tuple[IndexCombination, IndexCombination]:
        inter = ohno_sum_symbolic(sha(Index((x,)), dual_linear(sha(Index((y,)), repeat(2, l)))), m)
        pos = ohno_sum_symbolic(hast(x - 1, dual_linear(sha(Index((y + 1,)), repeat(2, l)))), m)
        return inter, pos

    a1, a2 = side(s, t)
    b1, b2 = side(t, s)
    residual = abs(eval_combination(a1 - a2 - b1 + b2, cfg))
    return residual, _distinct(a1, a2, b1, b2)


def _run_dddd(cfg: EvalConfig, s: int, t: int, l: int, m: int) -> tuple[float, int]:
    residual = abs(
        dual_gap_skew(s, t, l, m - 1, cfg)
        - dual_gap_skew(s - 1, t, l, m, cfg)
        - dual_gap_skew(s, t - 1, l, m, cfg)
    )
    evals = _distinct(
        *_skew_combs(s, t, l, m - 1),
        *_skew_combs(s - 1, t, l, m),
        *_skew_combs(s, t - 1, l, m),
    )
    return residual, evals


def _run_sha_expansion(cfg: EvalConfig, s: int, t: int, l: int) -> tuple[bool, int]:
    lhs1, rhs1 = dualized_shuffle_expansion(s, t, l)
    lhs2, rhs2 = dualized_hast_expansion(s, t, l)
    return (lhs1 == rhs1) and (lhs2 == rhs2), 0


def _run_hast_symmetry(cfg: EvalConfig, s: int, t: int, l: int) -> tuple[bool, int]:
    lhs, rhs = hast_merge_sides(s, t, l)
    return lhs == rhs, 0


def _run_add1(cfg: EvalConfig, s: int, l: int, m: int, p: int, q: int) -> tuple[bool, int]:
    return grouped_single(s, l, m, p, q) == composed_single(s, l, m, p, q), 0


def _run_add2(cfg: EvalConfig, s: int, l: int, m: int, p: int, q: int) -> tuple[bool, int]:
    return grouped_split(s, l, m, p, q) == composed_split(s, l, m, p, q), 0


def _run_abc(cfg: EvalConfig, s: int, l: int, m: int) -> tuple[float, int]:
    part_a = term_a(s, l, m)
    part_b = term_b(s, l, m)
    part_c = term_c(s, l, m)
    lhs = dual_gap_skew(s, 2, l, m, cfg)
    rhs = eval_combination(part_a + part_b + part_c, cfg)
    evals = _distinct(*_skew_combs(s, 2, l, m), part_a, part_b, part_c)
    return abs(lhs - rhs), evals


_RUNNERS = {
    "duality": _run_duality,
    "ohno": _run_ohno,
    "stuffle_single": _run_stuffle,
    "hoffman": _run_hoffman,
    "hmos": _run_hmos,
    "main": _run_main,
    "lemma_fmpre1": _run_fmpre1,
    "lemma_fmpre2": _run_fmpre2,
    "lemma_fm": _run_fm,
    "lemma_oooo": _run_oooo,
    "lemma_dddd": _run_dddd,
    "sha_expansion_oooo": _run_sha_expansion,
    "hast_symmetry": _run_hast_symmetry,
    "add1": _run_add1,
    "add2": _run_add2,
    "abc_decomposition": _run_abc,
}


# -- grid handling ------------------------------------------------------------


def _coerce_index(value: Union[Index, str]) -> Index:
    if isinstance(value, Index):
        return value
    if isinstance(value, str):
        text = value.strip()
        if text.startswith("(") and text.endswith(")") and text != "()":
            text = text[1:-1]
        return Index.from_text(text)
    raise ValueError(f"expected an index or index text, got {value!r}")


def _as_list(value: Any, index_valued: bool) -> list[Any]:
    if index_valued:
        if isinstance(value, (Index, str)):
            return [_coerce_index(value)]
        return [_coerce_index(v) for v in value]
    if isinstance(value, int) and not isinstance(value, bool):
        return [value]
    out = list(value)
    for v in out:
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"grid values must be integers, got {v!r}")
    return out


def _normalize_grid(
    spec: IdentitySpec, overrides: Mapping[str, Any]
) -> tuple[dict[str, Optional[list[Any]]], dict[str, Any]]:
    """Merge overrides into the identity's default grid.

    Returns (value lists per parameter; None marks the dynamic p/q window)
    and a JSON-friendly description of the grid actually used.
    """
    defaults = _DEFAULTS[spec.name]
    allowed = set(spec.params) | ({"weight"} if "weight" in defaults else set())
    unknown = set(overrides) - allowed
    if unknown:
        raise ValueError(
            f"unknown grid parameter(s) {sorted(unknown)} for {spec.name}; allowed: {sorted(allowed)}"
        )

    norm: dict[str, Optional[list[Any]]] = {}
    desc: dict[str, Any] = {}
    for name in spec.params:
        if name == "k":
            if "k" in overrides:
                values = _as_list(overrides["k"], index_valued=True)
                desc["k"] = [str(v) for v in values]
            else:
                weight = overrides.get("weight", defaults["weight"])
                if not isinstance(weight, int) or isinstance(weight, bool) or weight < 2:
                    raise ValueError(f"weight must be an integer >= 2, got {weight!r}")
                values = list(iter_admissible(weight))
                desc["weight"] = weight
            norm["k"] = values
        elif name in ("p", "q") and defaults[name] is None and name not in overrides:
            norm[name] = None
            desc[name] = "1..l+1"
        else:
            values = _as_list(overrides.get(name, defaults[name]), index_valued=False)
            norm[name] = values
            desc[name] = values
    return norm, desc


def _iter_points(spec: IdentitySpec, norm: Mapping[str, Optional[list[Any]]]) -> Iterator[dict[str, Any]]:
    names = spec.params

    def rec(i: int, current: dict[str, Any]) -> Iterator[dict[str, Any]]:
        if i == len(names):
            yield dict(current)
            return
        name = names[i]
        values = norm[name]
        if values is None:
            values = list(range(1, current["l"] + 2))
        for v in values:
            current[name] = v
            yield from rec(i + 1, current)
        current.pop(name, None)

    yield from rec(0, {})


def _display_params(params: Mapping[str, Any]) -> dict[str, Any]:
    return {k: (str(v) if isinstance(v, Index) else v) for k, v in params.items()}


# -- the driver ---------------------------------------------------------------


def verify(
    name: str,
    *,
    cfg: Optional[EvalConfig] = None,
    jobs: int = 1,
    **grid: Any,
) -> VerificationReport:
    """Verify one catalogue identity over a parameter grid.

    ``grid`` keyword arguments override the per-identity defaults; each value
    may be a single int/index or an iterable.  Index families default to all
    admissible indices up to the identity's default ``weight`` bound (override
    with ``weight=...`` or an explicit ``k=...`` list).  Points violating the
    identity's hypotheses are refused, recorded, and excluded from the
    verdict; if every point is refused a ``ValueError`` is raised.
    """
    if name not in _SPECS:
        known = ", ".join(_SPECS)
        raise ValueError(f"unknown identity {name!r}; known identities: {known}")
    if not isinstance(jobs, int) or isinstance(jobs, bool) or jobs < 1:
        raise ValueError(f"jobs must be a positive integer, got {jobs!r}")
    spec = _SPECS[name]
    cfg = cfg or EvalConfig()
    norm, desc = _normalize_grid(spec, grid)
    points = list(_iter_points(spec, norm))
    if not points:
        raise ValueError(f"the grid for {name} is empty")

    check = _CHECKS[name]
    runner = _RUNNERS[name]

    def run_point(params: dict[str, Any]) -> PointResult:
        shown = _display_params(params)
        reason = check(params)
        if reason is not None:
            return PointResult(params=shown, refused=True, reason=reason)
        start = time.perf_counter()
        outcome, evals = runner(cfg, **params)
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        if spec.kind == "numeric":
            threshold = cfg.tol * max(evals, 1) * RESIDUAL_MARGIN
            return PointResult(
                params=shown,
                residual=outcome,
                threshold=threshold,
                evals=evals,
                elapsed_ms=elapsed_ms,
            )
        return PointResult(params=shown, equal=outcome, evals=evals, elapsed_ms=elapsed_ms)

    start = time.perf_counter()
    if jobs == 1:
        results = [run_point(p) for p in points]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_point, points))
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    evaluated = [r for r in results if not r.refused]
    if not evaluated:
        reasons = "; ".join(sorted({r.reason for r in results}))
        raise ValueError(f"every grid point violates the hypotheses of {name}: {reasons}")
    passed = all(r.passed for r in evaluated)
    residuals = [r.residual for r in evaluated if r.residual is not None]
    max_residual = max(residuals) if residuals else None
    return VerificationReport(
        identity=name,
        kind=spec.kind,
        grid=desc,
        tol=cfg.tol,
        passed=passed,
        max_residual=max_residual,
        points=tuple(results),
        elapsed_ms=elapsed_ms,
    )


# -- report serialisation -----------------------------------------------------


def _point_dict(point: PointResult) -> dict[str, Any]:
    if point.refused:
        return {"params": dict(point.params), "refused": True, "reason": point.reason}
    out: dict[str, Any] = {"params": dict(point.params)}
    if point.equal is not None:
        out["equal"] = point.equal
    else:
        out["residual"] = point.residual
        out["threshold"] = point.threshold
    out["evals"] = point.evals
    out["elapsed_ms"] = round(point.elapsed_ms, 3)
    out["pass"] = point.passed
    return out


def report_dict(report: VerificationReport) -> dict[str, Any]:
    """JSON-shaped dictionary form of a report."""
    return {
        "identity": report.identity,
        "kind": report.kind,
        "grid": dict(report.grid),
        "tol": report.tol,
        "pass": report.passed,
        "max_residual": report.max_residual,
        "points": [_point_dict(p) for p in report.points],
    }


def _params_text(params: Mapping[str, Any]) -> str:
    return ";".join(f"{k}={v}" for k, v in params.items())


def report_to_file(report: VerificationReport, path: str, fmt: str = "json") -> None:
    """Write a report as ``json`` (all points) or ``csv`` (evaluated points)."""
    if fmt == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report_dict(report), fh, indent=2)
            fh.write("\n")
        return
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["identity", "params", "residual", "tol", "pass", "evals", "elapsed_ms"])
            for point in report.points:
                if point.refused:
                    continue
                if point.equal is not None:
                    residual = "equal" if point.equal else "unequal"
                    tol = ""
                else:
                    residual = repr(point.residual)
                    tol = repr(point.threshold)
                writer.writerow(
                    [
                        report.identity,
                        _params_text(point.params),
                        residual,
                        tol,
                        str(point.passed),
                        point.evals,
                        round(point.elapsed_ms, 3),
                    ]
                )
        return
    raise ValueError(f"unknown report format {fmt!r}; use 'json' or 'csv'")
