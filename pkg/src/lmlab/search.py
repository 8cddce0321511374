"""Exhaustive search for perfect lattice codes and finite-window checks.

Sublattices of Z^n of a given index are enumerated through their Hermite
normal forms (upper triangular, positive diagonal, entries above a diagonal
reduced modulo it), one representative per sublattice, in lexicographic
order by diagonal and then by the off-diagonal entries.  A perfect-code
search verifies each candidate of index equal to the ball volume.

Window verification and density estimation are deliberately independent of
the quotient-group machinery: they place balls cell by cell inside a finite
box, which is the brute-force counterpart used to cross-check lattice
verdicts.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .core import (
    DEFAULT_ENUM_CAP,
    BallParams,
    IntVector,
    ball_volume,
    iter_ball_coords,
)
from .errors import CapExceededError, DimensionMismatchError, InvalidParameterError
from .lattice import (
    VERDICT_TILES,
    Lattice,
    QuotientMap,
    verify_lattice_tiling,
)
from .metric import DEFAULT_CELL_CAP

#: Largest sublattice index the exhaustive enumeration will accept.
DEFAULT_INDEX_CAP = 10**4
#: Dimension limit for exhaustive sublattice searches.
MAX_SEARCH_DIMENSION = 4


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def _ordered_factorizations(index: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (index,)
        return
    for d in _divisors(index):
        for rest in _ordered_factorizations(index // d, parts - 1):
            yield (d,) + rest


def enumerate_sublattices(
    n: int, index: int, index_cap: int = DEFAULT_INDEX_CAP
) -> Iterator[Lattice]:
    """Yield one Hermite-normal-form generator per sublattice of the index.

    For a fixed diagonal (d_1, ..., d_n) with product equal to the index,
    the free entries are those above each diagonal element, ranging over
    [0, d_j); diagonals ascend lexicographically, then the off-diagonal
    entries read row by row.
    """
    if not isinstance(n, int) or not 1 <= n <= MAX_SEARCH_DIMENSION:
        raise InvalidParameterError(
            f"sublattice enumeration supports 1 <= n <= {MAX_SEARCH_DIMENSION}, got {n!r}"
        )
    if not isinstance(index, int) or index < 1:
        raise InvalidParameterError(f"index must be a positive integer, got {index!r}")
    if index > index_cap:
        raise CapExceededError(f"index {index} exceeds the enumeration cap {index_cap}")
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for diag in _ordered_factorizations(index, n):
        ranges = [range(diag[j]) for _, j in positions]
        for offs in itertools.product(*ranges):
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = diag[i]
            for (i, j), value in zip(positions, offs):
                rows[i][j] = value
            yield Lattice(tuple(tuple(row) for row in rows))


def search_perfect_lattices(
    params: BallParams,
    index_cap: int = DEFAULT_INDEX_CAP,
    cap: int = DEFAULT_ENUM_CAP,
    threads: int = 1,
) -> list[Lattice]:
    """All HNF lattices of index |ball| whose translates tile Z^n by the ball.

    The candidate set is exhaustive, so the returned list is the complete
    collection of perfect lattice codes for these parameters (one canonical
    generator per lattice), sorted canonically regardless of worker count.
    """
    index = ball_volume(params)
    candidates = list(enumerate_sublattices(params.n, index, index_cap))

    def tiles(lattice: Lattice) -> bool:
        return verify_lattice_tiling(lattice, params, cap).verdict == VERDICT_TILES

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(tiles, candidates))
    else:
        verdicts = [tiles(c) for c in candidates]
    found = [c for c, ok in zip(candidates, verdicts) if ok]
    found.sort(key=lambda lat: lat.gen)
    return found


def _normalize_translates(
    translates: Iterable[IntVector | Sequence[int]], n: int
) -> list[tuple[int, ...]]:
    out = []
    for t in translates:
        coords = t.coords if isinstance(t, IntVector) else tuple(int(x) for x in t)
        if len(coords) != n:
            raise DimensionMismatchError(
                f"translate {coords} has length {len(coords)}, expected {n}"
            )
        out.append(coords)
    return out


def verify_window_packing(
    translates: Iterable[IntVector | Sequence[int]],
    params: BallParams,
    window: int,
    cap: int = DEFAULT_CELL_CAP,
) -> tuple[bool, IntVector | None]:
    """Brute-force disjointness of translated balls inside [-window, window]^n.

    Cells outside the window are ignored.  Returns ``(True, None)`` when no
    two balls share a window cell, otherwise ``(False, cell)`` with an
    overlapping cell as witness.
    """
    if not isinstance(window, int) or window < 0:
        raise InvalidParameterError(f"window must be a nonnegative integer, got {window!r}")
    points = _normalize_translates(translates, params.n)
    total = len(points) * ball_volume(params)
    if total > cap:
        raise CapExceededError(f"window check needs {total} cells, cap is {cap}")
    ball = list(iter_ball_coords(params, cap))
    occupied: dict[tuple[int, ...], tuple[int, ...]] = {}
    for t in points:
        for b in ball:
            cell = tuple(a + d for a, d in zip(t, b))
            if any(abs(c) > window for c in cell):
                continue
            owner = occupied.get(cell)
            if owner is not None and owner != t:
                return False, IntVector(cell)
            occupied[cell] = t
    return True, None


def lattice_points_in_window(
    lattice: Lattice, window: int, cap: int = DEFAULT_ENUM_CAP
) -> list[tuple[int, ...]]:
    """All lattice points inside [-window, window]^n, in lexicographic order."""
    n = lattice.n
    cells = (2 * window + 1) ** n
    if cells > cap:
        raise CapExceededError(f"window holds {cells} cells, cap is {cap}")
    qmap = QuotientMap(lattice)
    zero = (0,) * n
    return [
        cell
        for cell in itertools.product(range(-window, window + 1), repeat=n)
        if qmap.residue(cell) == zero
    ]


def estimate_density(
    subject: Lattice | Iterable[IntVector | Sequence[int]],
    params: BallParams,
    window: int,
    cap: int = DEFAULT_ENUM_CAP,
) -> Fraction:
    """Exact covered fraction |T in window| * |ball| / (2*window+1)^n.

    ``subject`` is a lattice or an explicit translate set.  For a tiling the
    estimate differs from 1 only through boundary effects: balls centered in
    the window cover at least the box shrunk by the ball reach ``kplus`` and
    at most the box grown by it, so the estimate is sandwiched between
    ``((2W-2k+1)/(2W+1))^n`` and ``((2W+2k+1)/(2W+1))^n``, a 1 + O(1/W)
    window.  Counts and the final ratio are exact rationals.
    """
    if not isinstance(window, int) or window < 0:
        raise InvalidParameterError(f"window must be a nonnegative integer, got {window!r}")
    if isinstance(subject, Lattice):
        if subject.n != params.n:
            raise DimensionMismatchError(
                f"lattice dimension {subject.n} does not match ball dimension {params.n}"
            )
        count = len(lattice_points_in_window(subject, window, cap))
    else:
        points = _normalize_translates(subject, params.n)
        count = sum(1 for p in points if all(abs(c) <= window for c in p))
    total_cells = (2 * window + 1) ** params.n
    return Fraction(count * ball_volume(params), total_cells)
