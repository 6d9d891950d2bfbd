"""Numeric evaluation of multiple zeta values.

For an admissible index ``k = (k1, ..., kr)`` the value is the nested sum

    zeta(k) = sum over 0 < m1 < ... < mr of  m1^-k1 * ... * mr^-kr.

Two evaluators are provided:

``eval_zeta``
    Production path.  The index is encoded as a binary word, the associated
    iterated integral is split at 1/2, and the value becomes a finite sum,
    over all deconcatenations of the word, of products of partial integrals
    at 1/2.  Every partial integral is a nested power series with geometric
    ratio 1/2, summed in fixed-point integer arithmetic at a working
    precision derived from the tolerance.  This converges geometrically for
    *every* admissible index, including the ones with entries equal to 1 or
    a final entry of 2 where direct summation is hopeless.

``eval_zeta_direct``
    Independent oracle.  Straight summation of the defining nested sum up to
    a cutoff, together with a proven upper bound on the truncated tail of
    order ``N^(1-kr) * (log N)^(r-1)``.  Slowly convergent by design; used
    only to cross-check the production path.

Error budget of ``eval_zeta`` (absolute, target ``cfg.tol``):

* truncation: each series factor is summed until a provable tail majorant
  drops below ``2^-(P-8)`` where ``P`` is the working precision in bits;
  with the default ``P >= 2*ceil(log2(1/tol)) + 16`` this leaves every
  deconcatenation term far inside a uniform split of ``tol/2``;
* rounding: fixed-point arithmetic with ``P`` fractional bits keeps the
  accumulated rounding below ``tol/10``;
* the final conversion rounds once to the nearest double.

Repeated evaluation with an identical configuration is bit-identical.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from ohno.indices import Index, IndexCombination, as_combination

__all__ = [
    "EvalConfig",
    "PrecisionError",
    "ZetaCache",
    "eval_combination",
    "eval_zeta",
    "eval_zeta_direct",
    "from_word",
    "reverse_swap",
    "to_word",
]


class PrecisionError(RuntimeError):
    """Raised when a series cap is exhausted before the error budget is met."""


# -- word codec ---------------------------------------------------------------

_SWAP = str.maketrans("XY", "YX")


def to_word(k: Index) -> str:
    """Encode an admissible index as a word over {X, Y}.

    ``(k1, ..., kr)`` maps to ``X^(kr-1) Y X^(k(r-1)-1) Y ... X^(k1-1) Y``:
    the entries are read last-to-first, each contributing an X-run followed
    by a single Y.  The word length equals the weight; admissibility makes
    the word start with X and end with Y.
    """
    if not k.admissible:
        raise ValueError(f"only admissible indices have a word encoding, got {k}")
    return "".join("X" * (e - 1) + "Y" for e in reversed(k.entries))


def from_word(word: str) -> Index:
    """Decode a word over {X, Y} back to an admissible index."""
    if not word or set(word) - {"X", "Y"}:
        raise ValueError(f"malformed word {word!r}: expected a nonempty string over X/Y")
    if word[0] != "X" or word[-1] != "Y":
        raise ValueError(f"malformed word {word!r}: must start with X and end with Y")
    blocks: list[int] = []
    run = 0
    for ch in word:
        if ch == "X":
            run += 1
        else:
            blocks.append(run + 1)
            run = 0
    return Index(tuple(reversed(blocks)))


def reverse_swap(word: str) -> str:
    """Reverse the word and exchange X with Y (the word form of duality)."""
    return word[::-1].translate(_SWAP)


# -- configuration and cache --------------------------------------------------

# Finest per-term tolerance bucket used by eval_combination when it scales
# budgets by coefficient mass.  Results are doubles, so refining past the
# double-precision floor (bucket 15, tol 1e-15) buys nothing.
_MAX_COMBINATION_BUCKET = 15


def _bucket_of(tol: float) -> int:
    """Tolerance bucket: number of decimal digits, rounded towards finer."""
    return max(1, math.ceil(-math.log10(tol) - 1e-9))


def _default_precision(bucket: int) -> int:
    """Working precision in bits for a given tolerance bucket."""
    return 2 * math.ceil(bucket * math.log2(10)) + 16


@dataclass(frozen=True)
class ZetaCacheStats:
    hits: int = 0
    misses: int = 0


class ZetaCache:
    """Memo for evaluated indices, keyed by index and tolerance bucket.

    Each index stores the value computed at the finest bucket requested so
    far; a request at a coarser tolerance reuses it.  Safe for concurrent
    readers and writers (last write wins, which is idempotent because values
    are deterministic functions of index and bucket).

    The flat-file form has one line per index:
    ``index<TAB>tol-bucket<TAB>hex-float``.
    """

    def __init__(self, path: Optional[str] = None):
        self._entries: dict[Index, tuple[int, float]] = {}
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0
        if path is not None and os.path.exists(path):
            self.load(path)

    def lookup(self, k: Index, bucket: int) -> Optional[float]:
        entry = self._entries.get(k)
        if entry is not None and entry[0] >= bucket:
            with self._lock:
                self._hits += 1
            return entry[1]
        with self._lock:
            self._misses += 1
        return None

    def store(self, k: Index, bucket: int, value: float) -> None:
        with self._lock:
            current = self._entries.get(k)
            if current is None or current[0] < bucket:
                self._entries[k] = (bucket, value)

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def stats(self) -> ZetaCacheStats:
        return ZetaCacheStats(self._hits, self._misses)

    def save(self, path: str) -> None:
        with self._lock:
            rows = sorted(
                ((k.to_text(), b, v) for k, (b, v) in self._entries.items()),
                key=lambda row: row[0],
            )
        with open(path, "w", encoding="ascii") as fh:
            for text, bucket, value in rows:
                fh.write(f"{text}\t{bucket}\t{value.hex()}\n")

    def load(self, path: str) -> None:
        with open(path, "r", encoding="ascii") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    text, bucket_text, hex_text = line.split("\t")
                    k = Index.from_text(text)
                    bucket = int(bucket_text)
                    value = float.fromhex(hex_text)
                except ValueError:
                    raise ValueError(f"malformed cache line {line!r}") from None
                self.store(k, bucket, value)


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation knobs.

    ``tol``
        Absolute accuracy target for a single value.  Values are returned as
        doubles, so targets below about 1e-15 are not honourable; the
        constructor rejects them.
    ``max_terms``
        Cap on the length of any single series factor.  Exhausting it raises
        :class:`PrecisionError` rather than returning a degraded value.
    ``working_precision``
        Fixed-point fractional bits for internal arithmetic.  ``None``
        derives ``2*ceil(log2(1/tol)) + 16`` from the tolerance bucket;
        explicit values below that are rejected.
    ``cache``
        Optional :class:`ZetaCache`.  Results with the cache enabled are
        bit-identical to results without it for a fixed configuration.
    """

    tol: float = 1e-12
    max_terms: int = 256
    working_precision: Optional[int] = None
    cache: Optional[ZetaCache] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not (isinstance(self.tol, float) or isinstance(self.tol, int)) or self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.tol < 1e-15:
            raise ValueError(f"tol {self.tol!r} is below the double-precision floor 1e-15")
        if not isinstance(self.max_terms, int) or self.max_terms < 8:
            raise ValueError(f"max_terms must be an integer >= 8, got {self.max_terms!r}")
        if self.working_precision is not None:
            needed = _default_precision(self.bucket)
            if not isinstance(self.working_precision, int) or self.working_precision < needed:
                raise ValueError(
                    f"working_precision {self.working_precision!r} is below the "
                    f"{needed} bits required for tol {self.tol}"
                )

    @property
    def bucket(self) -> int:
        return _bucket_of(self.tol)

    @property
    def precision(self) -> int:
        if self.working_precision is not None:
            return self.working_precision
        return _default_precision(self.bucket)


DEFAULT_CONFIG = EvalConfig()


# -- series factors in fixed point --------------------------------------------

# Cache of partial-integral values at 1/2, keyed by (word, precision).  The
# stopping rule depends only on the key, so entries are pure functions of it
# and can be shared freely across evaluations.
_FACTOR_CACHE: dict[tuple[str, int], int] = {}
_FACTOR_LOCK = threading.Lock()


def _word_runs(word: str) -> tuple[int, ...]:
    """Split a Y-terminated word into X-run lengths plus one per Y."""
    runs: list[int] = []
    x = 0
    for ch in word:
        if ch == "X":
            x += 1
        else:
            runs.append(x + 1)
            x = 0
    if x:
        raise ValueError(f"series word {word!r} does not end with Y")
    return tuple(runs)


def _series_half_fixed(runs: tuple[int, ...], fbits: int, max_terms: int) -> int:
    """Fixed-point value of the nested series

        sum over m1 > m2 > ... > mk >= 1 of  (1/2)^m1 / (m1^n1 * ... * mk^nk)

    with ``runs = (n1, ..., nk)``, to ``fbits`` fractional bits.

    Truncation stops once the proven tail majorant

        2^-N * (1 + ln N)^(k-1) * rho/(1-rho),   rho = exp((k-1)/N) / 2

    falls below ``2^-(fbits-8)``; the majorant dominates the true tail
    because the inner sums are bounded by (1 + ln N)^(k-1) and
    ``(1 + ln(N+j)) <= (1 + ln N) * exp(j/N)``.
    """
    k = len(runs)
    one = 1 << fbits
    if k == 0:
        return one
    inner = [0] * (k + 1)
    inner[k] = one
    acc = 0
    stop_log2 = -(fbits - 8)
    m = 0
    while True:
        m += 1
        if m > max_terms:
            raise PrecisionError(
                f"series cap of {max_terms} terms exhausted before the error "
                f"budget was met (runs {runs}, precision {fbits} bits)"
            )
        invs = [one // m**n for n in runs]
        acc += (invs[0] * inner[1]) >> (fbits + m)
        for i in range(1, k):
            inner[i] += (invs[i] * inner[i + 1]) >> fbits
        if m >= k:
            rho = math.exp((k - 1) / m) / 2.0
            if rho < 1.0:
                tail_log2 = -m + (k - 1) * math.log2(1.0 + math.log(m)) + math.log2(rho / (1.0 - rho))
                if tail_log2 < stop_log2:
                    return acc


def _factor(word: str, fbits: int, max_terms: int) -> int:
    if not word:
        return 1 << fbits
    key = (word, fbits)
    cached = _FACTOR_CACHE.get(key)
    if cached is not None:
        return cached
    value = _series_half_fixed(_word_runs(word), fbits, max_terms)
    with _FACTOR_LOCK:
        _FACTOR_CACHE[key] = value
    return value


def clear_factor_cache() -> None:
    """Drop memoised series factors (they are recomputed on demand)."""
    with _FACTOR_LOCK:
        _FACTOR_CACHE.clear()


# -- evaluators ---------------------------------------------------------------


def _eval_uncached(k: Index, cfg: EvalConfig) -> float:
    fbits = cfg.precision
    word = to_word(k)
    acc = 0
    for j in range(len(word) + 1):
        upper = _factor(reverse_swap(word[:j]), fbits, cfg.max_terms)
        lower = _factor(word[j:], fbits, cfg.max_terms)
        acc += (upper * lower) >> fbits
    return math.ldexp(float(acc), -fbits)


def eval_zeta(k: Index, cfg: Optional[EvalConfig] = None) -> float:
    """Evaluate an admissible index to within ``cfg.tol`` (absolute)."""
    cfg = cfg or DEFAULT_CONFIG
    if not isinstance(k, Index):
        raise ValueError(f"expected an Index, got {k!r}")
    if not k.admissible:
        raise ValueError(f"cannot evaluate non-admissible index {k}")
    bucket = cfg.bucket
    if cfg.cache is not None:
        hit = cfg.cache.lookup(k, bucket)
        if hit is not None:
            return hit
    value = _eval_uncached(k, cfg)
    if cfg.cache is not None:
        cfg.cache.store(k, bucket, value)
    return value


def eval_combination(comb: Union[Index, IndexCombination], cfg: Optional[EvalConfig] = None) -> float:
    """Evaluate a rational combination of admissible indices.

    Per-term tolerances are scaled by the combination's coefficient mass so
    the truncation budgets sum to at most ``cfg.tol``; the per-term budget is
    never pushed below 1e-15 because the memoised values are doubles anyway.
    """
    cfg = cfg or DEFAULT_CONFIG
    comb = as_combination(comb)
    for idx in comb.support():
        if not idx.admissible:
            raise ValueError(f"cannot evaluate non-admissible index {idx}")
    if comb.is_zero:
        return 0.0
    if cfg.working_precision is None:
        mass = float(comb.coefficient_mass())
        bucket = max(cfg.bucket, math.ceil(-math.log10(cfg.tol / max(mass, 1.0)) - 1e-9))
        bucket = min(bucket, _MAX_COMBINATION_BUCKET)
        term_cfg = EvalConfig(tol=10.0**-bucket, max_terms=cfg.max_terms, cache=cfg.cache)
    else:
        term_cfg = cfg
    return math.fsum(float(c) * eval_zeta(k, term_cfg) for k, c in comb.items())


def eval_zeta_direct(k: Index, terms: int) -> tuple[float, float]:
    """Direct nested summation up to ``mr <= terms``; returns (value, tail bound).

    The bound covers the truncation error:

        tail <= terms^(1-kr) * (1+ln terms)^(r-1)
                / ((kr-1) - (r-1)/(1+ln terms))

    valid once the summand is decreasing and the denominator positive;
    otherwise the bound degenerates to infinity.  Deliberately slow: this is
    the oracle, not the production evaluator.
    """
    if not k.admissible:
        raise ValueError(f"cannot evaluate non-admissible index {k}")
    r = k.depth
    if terms < r:
        raise ValueError(f"need at least depth={r} summation terms, got {terms}")
    ks = k.entries
    partial_terms: list[float] = []
    # levels[j] accumulates the depth-j partial sum over m_j <= current m - 1;
    # levels[0] is the empty-product sentinel.
    levels = [0.0] * (r + 1)
    levels[0] = 1.0
    for m in range(1, terms + 1):
        partial_terms.append(levels[r - 1] / m ** ks[r - 1])
        for j in range(r - 1, 0, -1):
            levels[j] += levels[j - 1] / m ** ks[j - 1]
    value = math.fsum(partial_terms)

    log_n = 1.0 + math.log(terms)
    kr = ks[-1]
    denom = (kr - 1) - (r - 1) / log_n
    decreasing = (r - 1) / log_n <= kr
    if denom <= 0 or not decreasing:
        bound = math.inf
    else:
        bound = terms ** (1 - kr) * log_n ** (r - 1) / denom
    return value, bound
