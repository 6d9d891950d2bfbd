"""Exact algebra of integer-sequence indices and their rational formal sums.

An *index* is a finite sequence of positive integers.  It is *admissible*
when it is nonempty and its last entry is at least 2; admissible indices are
exactly the ones whose nested sum converges (see :mod:`ohno.zeta`).

On top of single indices the module provides Q-linear formal combinations
and the three products used throughout the package:

* ``sha``      -- the interleaving (shuffle-of-entries) product ``#``,
* ``hast``     -- the position sum: add a fixed amount to one entry, summed
                  over all positions,
* ``star_single`` -- the depth-one harmonic product ``(k) * l = (k)#l + (k) hast l``.

Everything in this module is exact: coefficients are ``fractions.Fraction``
and no floats ever appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Union

__all__ = [
    "EMPTY",
    "Index",
    "IndexCombination",
    "ShiftVector",
    "append_entry",
    "as_combination",
    "combination_to_text",
    "dual_linear",
    "enumerate_shifts",
    "hast",
    "iter_admissible",
    "repeat",
    "sha",
    "star_single",
]

#: A componentwise shift: a tuple of nonnegative integers.  The depth match
#: with the index being shifted is checked at the point of use.
ShiftVector = tuple

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Index:
    """A finite sequence of positive integers.

    The empty index ``EMPTY`` is the multiplicative unit of ``sha``; it is
    never admissible and never evaluated.
    """

    entries: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        for e in entries:
            if not isinstance(e, int) or isinstance(e, bool) or e < 1:
                raise ValueError(f"index entries must be positive integers, got {entries!r}")
        object.__setattr__(self, "entries", entries)

    @property
    def weight(self) -> int:
        """Sum of the entries."""
        return sum(self.entries)

    @property
    def depth(self) -> int:
        """Number of entries."""
        return len(self.entries)

    @property
    def admissible(self) -> bool:
        """True when nonempty with last entry >= 2."""
        return bool(self.entries) and self.entries[-1] >= 2

    def dual(self) -> "Index":
        """The dual index.

        Writing the index as ``({1}^(a1-1), b1+1, ..., {1}^(al-1), bl+1)``
        with all ``ap, bq >= 1``, the dual is
        ``({1}^(bl-1), al+1, ..., {1}^(b1-1), a1+1)``.  Duality is an
        involution on admissible indices; it preserves weight and sends
        depth to weight minus depth.
        """
        if not self.admissible:
            raise ValueError(f"dual is defined for admissible indices only, got {self}")
        pairs: list[tuple[int, int]] = []
        ones = 0
        for e in self.entries:
            if e == 1:
                ones += 1
            else:
                pairs.append((ones + 1, e - 1))
                ones = 0
        out: list[int] = []
        for a, b in reversed(pairs):
            out.extend([1] * (b - 1))
            out.append(a + 1)
        return Index(tuple(out))

    def oplus(self, shift: ShiftVector) -> "Index":
        """Componentwise sum with a same-depth vector of nonnegative integers."""
        shift = tuple(shift)
        if len(shift) != self.depth:
            raise ValueError(
                f"shift {shift!r} has length {len(shift)}, index {self} has depth {self.depth}"
            )
        for v in shift:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"shift entries must be nonnegative integers, got {shift!r}")
        return Index(tuple(e + v for e, v in zip(self.entries, shift)))

    def to_text(self) -> str:
        """Comma-separated entries, e.g. ``"1,3"``; the empty index is ``"()"``."""
        if not self.entries:
            return "()"
        return ",".join(str(e) for e in self.entries)

    @staticmethod
    def from_text(text: str) -> "Index":
        text = text.strip()
        if text == "()" or text == "":
            return EMPTY
        try:
            entries = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise ValueError(f"malformed index text {text!r}") from None
        return Index(entries)

    def __str__(self) -> str:
        return f"({self.to_text()})" if self.entries else "()"

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)


EMPTY = Index(())


def repeat(a: int, l: int) -> Index:
    """The index ``({a}^l)``: the entry ``a`` repeated ``l`` times."""
    if not isinstance(a, int) or a < 1:
        raise ValueError(f"repeat needs a positive entry, got {a!r}")
    if not isinstance(l, int) or l < 0:
        raise ValueError(f"repeat needs a nonnegative count, got {l!r}")
    return Index((a,) * l)


def _sort_key(k: Index) -> tuple[int, tuple[int, ...]]:
    return (k.depth, k.entries)


class IndexCombination:
    """A finite formal sum of indices with exact rational coefficients.

    Zero-coefficient terms are dropped eagerly, so two combinations are equal
    exactly when they carry the same support with the same coefficients.
    Instances are treated as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Index, Scalar], Iterable[tuple[Index, Scalar]], None] = None):
        data: dict[Index, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                if not isinstance(k, Index):
                    raise ValueError(f"combination keys must be Index, got {k!r}")
                c = Fraction(c)
                if c:
                    data[k] = data.get(k, Fraction(0)) + c
                    if not data[k]:
                        del data[k]
        self._terms = {k: c for k, c in data.items() if c}

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zero() -> "IndexCombination":
        return IndexCombination()

    @staticmethod
    def from_index(k: Index, coef: Scalar = 1) -> "IndexCombination":
        return IndexCombination({k: coef})

    # -- inspection -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> list[tuple[Index, Fraction]]:
        """Terms in canonical order: by depth, then lexicographically."""
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def support(self) -> list[Index]:
        return sorted(self._terms, key=_sort_key)

    def coefficient(self, k: Index) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def coefficient_mass(self) -> Fraction:
        """Sum of absolute values of the coefficients."""
        return sum((abs(c) for c in self._terms.values()), Fraction(0))

    def term_count(self) -> Fraction:
        """Sum of the coefficients (terms counted with multiplicity)."""
        return sum(self._terms.values(), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Index, Fraction]]:
        return iter(self.items())

    def __contains__(self, k: Index) -> bool:
        return k in self._terms

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "IndexCombination") -> "IndexCombination":
        if not isinstance(other, IndexCombination):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return IndexCombination(out)

    def __sub__(self, other: "IndexCombination") -> "IndexCombination":
        if not isinstance(other, IndexCombination):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, Fraction(0)) - c
        return IndexCombination(out)

    def __neg__(self) -> "IndexCombination":
        return IndexCombination({k: -c for k, c in self._terms.items()})

    def __mul__(self, scalar: Scalar) -> "IndexCombination":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return IndexCombination({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexCombination):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]  # mutable-dict backed; not hashable

    # -- structural maps ------------------------------------------------------

    def map_indices(self, f: Callable[[Index], Index]) -> "IndexCombination":
        """Apply an index-to-index map to the support, keeping coefficients."""
        out: dict[Index, Fraction] = {}
        for k, c in self._terms.items():
            kk = f(k)
            out[kk] = out.get(kk, Fraction(0)) + c
        return IndexCombination(out)

    def map_linear(self, f: Callable[[Index], "IndexCombination"]) -> "IndexCombination":
        """Extend an index-to-combination map linearly."""
        out: dict[Index, Fraction] = {}
        for k, c in self._terms.items():
            for kk, cc in f(k)._terms.items():
                out[kk] = out.get(kk, Fraction(0)) + c * cc
        return IndexCombination(out)

    def __repr__(self) -> str:
        return f"IndexCombination({combination_to_text(self)!r})"

    def __str__(self) -> str:
        return combination_to_text(self)


def as_combination(x: Union[Index, IndexCombination]) -> IndexCombination:
    """Lift an index to a one-term combination; pass combinations through."""
    if isinstance(x, IndexCombination):
        return x
    if isinstance(x, Index):
        return IndexCombination.from_index(x)
    raise ValueError(f"expected Index or IndexCombination, got {x!r}")


def combination_to_text(comb: IndexCombination) -> str:
    """Canonical text form: ``coef*(entries)`` terms joined by `` + ``/`` - ``.

    Unit coefficients are left implicit; the zero combination prints ``"0"``.
    The result round-trips through the expression parser in :mod:`ohno.expr`.
    """
    if comb.is_zero:
        return "0"
    parts: list[str] = []
    for i, (k, c) in enumerate(comb.items()):
        body = str(k)
        mag = abs(c)
        term = body if mag == 1 else f"{mag}*{body}"
        if i == 0:
            parts.append(f"-{term}" if c < 0 else term)
        else:
            parts.append(f" - {term}" if c < 0 else f" + {term}")
    return "".join(parts)


# -- duality on combinations --------------------------------------------------


def dual_linear(comb: Union[Index, IndexCombination]) -> IndexCombination:
    """Apply duality to every support index, keeping coefficients."""
    return as_combination(comb).map_indices(lambda k: k.dual())


# -- shift enumeration --------------------------------------------------------


def enumerate_shifts(r: int, m: int) -> list[tuple[int, ...]]:
    """All length-``r`` tuples of nonnegative integers with sum ``m``.

    Ordered lexicographically; there are ``C(m + r - 1, r - 1)`` of them.
    """
    if not isinstance(r, int) or r < 0:
        raise ValueError(f"shift length must be a nonnegative integer, got {r!r}")
    if not isinstance(m, int) or m < 0:
        raise ValueError(f"shift total must be a nonnegative integer, got {m!r}")
    if r == 0:
        if m > 0:
            raise ValueError(f"no length-0 shift vector has sum {m}")
        return [()]
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for v in range(remaining + 1):
            rec(prefix + (v,), remaining - v, slots - 1)

    rec((), m, r)
    return out


def iter_admissible(max_weight: int) -> Iterator[Index]:
    """All admissible indices of weight at most ``max_weight``, by weight."""
    if max_weight < 2:
        return
    for w in range(2, max_weight + 1):
        yield from _admissible_of_weight(w)


def _admissible_of_weight(w: int) -> Iterator[Index]:
    def compositions(total: int) -> Iterator[tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in compositions(total - first):
                yield (first,) + rest

    for last in range(2, w + 1):
        for head in compositions(w - last):
            yield Index(head + (last,))


# -- the interleaving product -------------------------------------------------


@lru_cache(maxsize=None)
def _interleave(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Interleavings of two entry sequences, with multiplicities.

    Defined by the end-recursion  (K,k)#(L,l) = (K#(L,l), k) + ((K,k)#L, l)
    with the empty sequence as the unit.
    """
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    acc: dict[tuple[int, ...], int] = {}
    for t, n in _interleave(a[:-1], b):
        key = t + (a[-1],)
        acc[key] = acc.get(key, 0) + n
    for t, n in _interleave(a, b[:-1]):
        key = t + (b[-1],)
        acc[key] = acc.get(key, 0) + n
    return tuple(sorted(acc.items()))


def sha(left: Union[Index, IndexCombination], right: Union[Index, IndexCombination]) -> IndexCombination:
    """The interleaving product ``#``, extended bilinearly.

    For single indices of depths p and q the result has ``C(p+q, p)`` terms
    counted with multiplicity.  ``#`` is commutative and associative with
    unit the empty index.
    """
    a = as_combination(left)
    b = as_combination(right)
    out: dict[Index, Fraction] = {}
    for ka, ca in a._terms.items():
        for kb, cb in b._terms.items():
            c = ca * cb
            for entries, mult in _interleave(ka.entries, kb.entries):
                key = Index(entries)
                out[key] = out.get(key, Fraction(0)) + c * mult
    return IndexCombination(out)


# -- the position-sum product -------------------------------------------------


def hast(k: int, target: Union[Index, IndexCombination]) -> IndexCombination:
    """Add ``k`` to one entry of the target, summed over all positions.

    ``(k) hast (l1, ..., lr) = (l1+k, ..., lr) + ... + (l1, ..., lr+k)``,
    extended linearly.  Undefined against the empty index.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"hast needs a positive integer summand, got {k!r}")
    comb = as_combination(target)

    def one(idx: Index) -> IndexCombination:
        if idx.depth == 0:
            raise ValueError("hast is undefined against the empty index ()")
        terms: dict[Index, Fraction] = {}
        for i in range(idx.depth):
            entries = list(idx.entries)
            entries[i] += k
            key = Index(tuple(entries))
            terms[key] = terms.get(key, Fraction(0)) + 1
        return IndexCombination(terms)

    return comb.map_linear(one)


def star_single(k: int, target: Union[Index, IndexCombination]) -> IndexCombination:
    """The depth-one harmonic product: ``(k) * l = (k)#l + (k) hast l``.

    Against admissible targets this realises the product rule
    ``zeta(k) * zeta(l) = zeta((k) * l)`` for ``k >= 2``.
    """
    comb = as_combination(target)
    for idx in comb.support():
        if idx.depth == 0:
            raise ValueError("star_single is undefined against the empty index ()")
    return sha(Index((k,)), comb) + hast(k, comb)


# -- misc structural helpers --------------------------------------------------


def append_entry(comb: Union[Index, IndexCombination], entry: int) -> IndexCombination:
    """Append ``entry`` at the end of every support index."""
    if not isinstance(entry, int) or entry < 1:
        raise ValueError(f"appended entry must be a positive integer, got {entry!r}")
    return as_combination(comb).map_indices(lambda k: Index(k.entries + (entry,)))
