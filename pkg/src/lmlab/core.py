"""Error-ball combinatorics for the limited-magnitude channel.

The central object is the error ball: all integer vectors of Hamming weight
at most ``e`` whose entries lie in ``[-kminus, kplus]``.  A code corrects the
corresponding errors exactly when the balls centered at its codewords are
pairwise disjoint, so everything downstream (tiling verification, exclusion
bounds, density estimates) is driven by the quantities computed here.

All arithmetic is exact: volumes are arbitrary-precision integers, ratio
bounds are ``fractions.Fraction`` values, and enumeration yields every ball
vector exactly once in lexicographic coordinate order.  No floating point
enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .errors import (
    CapExceededError,
    DimensionMismatchError,
    HypothesesUnmetError,
    InvalidParameterError,
)

#: Default guardrail for explicit ball enumeration (number of vectors).
DEFAULT_ENUM_CAP = 10**7


def _require_int(name: str, value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class BallParams:
    """Parameters ``(n, e, kplus, kminus)`` of an error ball.

    ``n`` is the ambient dimension, ``e`` the maximum number of erroneous
    coordinates, and ``kplus`` / ``kminus`` bound how far a coordinate may
    move in the positive / negative direction.  The symmetric channel has
    ``kplus == kminus == s``.
    """

    n: int
    e: int
    kplus: int
    kminus: int

    def __post_init__(self) -> None:
        for name in ("n", "e", "kplus", "kminus"):
            _require_int(name, getattr(self, name))
        if self.n < 1:
            raise InvalidParameterError(f"dimension must be positive, got n={self.n}")
        if not 0 <= self.e <= self.n:
            raise InvalidParameterError(f"need 0 <= e <= n, got e={self.e}, n={self.n}")
        if not self.kplus >= self.kminus >= 0:
            raise InvalidParameterError(
                f"need kplus >= kminus >= 0, got kplus={self.kplus}, kminus={self.kminus}"
            )
        if self.e >= 1 and self.kplus == 0:
            raise InvalidParameterError("kplus and kminus cannot both be 0 when e >= 1")

    @classmethod
    def symmetric(cls, n: int, e: int, s: int) -> "BallParams":
        """The symmetric ball with magnitude bound ``s`` in both directions."""
        _require_int("s", s)
        if s < 1:
            raise InvalidParameterError(f"magnitude s must be >= 1, got {s}")
        return cls(n=n, e=e, kplus=s, kminus=s)

    @property
    def is_symmetric(self) -> bool:
        return self.kplus == self.kminus

    @property
    def s(self) -> int:
        if not self.is_symmetric:
            raise InvalidParameterError("ball is not symmetric; s is undefined")
        return self.kplus

    @property
    def span(self) -> int:
        """Number of nonzero values available to an erroneous coordinate."""
        return self.kplus + self.kminus


@dataclass(frozen=True)
class IntVector:
    """A point of Z^n."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def weight(self) -> int:
        """Hamming weight: the number of nonzero coordinates."""
        return sum(1 for c in self.coords if c)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coords) if c)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __neg__(self) -> "IntVector":
        return IntVector(tuple(-c for c in self.coords))

    def __add__(self, other: "IntVector | Sequence[int]") -> "IntVector":
        oc = tuple(other)
        if len(oc) != len(self.coords):
            raise DimensionMismatchError(f"cannot add vectors of length {len(self.coords)} and {len(oc)}")
        return IntVector(tuple(a + b for a, b in zip(self.coords, oc)))

    def __sub__(self, other: "IntVector | Sequence[int]") -> "IntVector":
        oc = tuple(other)
        if len(oc) != len(self.coords):
            raise DimensionMismatchError(f"cannot subtract vectors of length {len(self.coords)} and {len(oc)}")
        return IntVector(tuple(a - b for a, b in zip(self.coords, oc)))


@dataclass(frozen=True)
class PairWeightMatrix:
    """Symbol-pair weight matrix for magnitude bound ``s``.

    Indexed by symbol values ``x, y`` in ``[-s, s]``: the entry is 0 when
    ``x == y``, 1 when ``1 <= |x - y| <= s`` and 2 when
    ``s + 1 <= |x - y| <= 2s``.
    """

    s: int
    entries: tuple[tuple[int, ...], ...]

    def entry(self, x: int, y: int) -> int:
        s = self.s
        if not (-s <= x <= s and -s <= y <= s):
            raise InvalidParameterError(f"symbols must lie in [-{s}, {s}], got ({x}, {y})")
        return self.entries[x + s][y + s]


def ball_volume(params: BallParams) -> int:
    """Exact number of vectors in the ball: sum of C(n,i) * (kplus+kminus)^i."""
    span = params.span
    return sum(comb(params.n, i) * span**i for i in range(params.e + 1))


def iter_ball_coords(params: BallParams, cap: int = DEFAULT_ENUM_CAP) -> Iterator[tuple[int, ...]]:
    """Yield each ball vector once, as a raw tuple, in lexicographic order.

    Fast path shared by the verifiers; ``enumerate_ball`` wraps the same
    stream in :class:`IntVector`.
    """
    volume = ball_volume(params)
    if volume > cap:
        raise CapExceededError(f"ball volume {volume} exceeds the enumeration cap {cap}")
    lo, hi = -params.kminus, params.kplus
    n = params.n

    def rec(prefix: tuple[int, ...], budget: int, i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield prefix
            return
        if budget == 0:
            yield prefix + (0,) * (n - i)
            return
        for v in range(lo, hi + 1):
            yield from rec(prefix + (v,), budget - (v != 0), i + 1)

    return rec((), params.e, 0)


def enumerate_ball(params: BallParams, cap: int = DEFAULT_ENUM_CAP) -> Iterator[IntVector]:
    """Stream the ball in lexicographic coordinate order (restartable)."""
    for coords in iter_ball_coords(params, cap):
        yield IntVector(coords)


@lru_cache(maxsize=64)
def pair_weight_matrix(s: int) -> PairWeightMatrix:
    """The (2s+1) x (2s+1) symbol-pair weight matrix."""
    _require_int("s", s)
    if s < 1:
        raise InvalidParameterError(f"magnitude s must be >= 1, got {s}")

    def weight(x: int, y: int) -> int:
        d = abs(x - y)
        if d == 0:
            return 0
        return 1 if d <= s else 2

    rows = tuple(
        tuple(weight(x, y) for y in range(-s, s + 1)) for x in range(-s, s + 1)
    )
    return PairWeightMatrix(s=s, entries=rows)


def volume_ratio_bound(n: int, e: int, r: int, s: int) -> Fraction:
    """Lower bound ((n-e-r+1)/(e+r))^r * (2s)^r on the volume ratio.

    Bounds the ratio of the radius-``(e+r)`` ball volume to the radius-``e``
    ball volume from below.  Valid whenever ``e + r <= n - 1``, which is
    exactly the domain on which the one-step bound ``(n-e')/(e'+1) * 2s``
    applies at every intermediate radius ``e' = e, ..., e+r-1``.
    """
    for name, value in (("n", n), ("e", e), ("r", r), ("s", s)):
        _require_int(name, value)
    if n < 1 or e < 0 or r < 1 or s < 1:
        raise InvalidParameterError(
            f"need n >= 1, e >= 0, r >= 1, s >= 1; got n={n}, e={e}, r={r}, s={s}"
        )
    if e + r > n - 1:
        raise HypothesesUnmetError(f"ratio bound needs e + r <= n - 1, got e+r={e + r}, n={n}")
    return Fraction((n - e - r + 1) ** r * (2 * s) ** r, (e + r) ** r)
