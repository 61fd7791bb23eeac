"""Named CGF families and exhaustive combinatorial oracles for them."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .cgf_core import RationalForm
from .polyring import IntPoly

__all__ = [
    "Partition",
    "family",
    "qbinomial",
    "qfactorial",
    "qmultinomial",
    "qcatalan",
    "macmahon_box",
    "hook_lengths",
    "hook_cgf",
    "bruteforce_oracle",
    "plane_partitions",
    "syt_maj",
    "box_partitions",
    "partitions_of",
    "OracleTooLarge",
    "MAX_STATES",
]

MAX_STATES = 10**7


class OracleTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> Partition:
        return cls(tuple(int(t) for t in text.split(",") if t.strip()))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> tuple[int, ...]:
        if not self.parts:
            return ()
        return tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))

    def b(self) -> int:
        """``sum (i - 1) lambda_i`` with rows indexed from 1."""
        return sum(i * p for i, p in enumerate(self.parts))


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    def rec(n: int, top: int) -> Iterator[tuple[int, ...]]:
        if n == 0:
            yield ()
            return
        for first in range(min(n, top), 0, -1):
            for rest in rec(n - first, first):
                yield (first,) + rest

    for parts in rec(n, n if max_part is None else max_part):
        yield Partition(parts)


def qbinomial(n: int, k: int) -> RationalForm:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return RationalForm(tuple(range(n - k + 1, n + 1)), tuple(range(1, k + 1)))


def qfactorial(n: int) -> RationalForm:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return RationalForm(tuple(range(1, n + 1)), (1,) * n)


def qmultinomial(composition: Iterable[int]) -> RationalForm:
    comp = [int(c) for c in composition]
    if not comp or any(c < 0 for c in comp):
        raise ValueError("composition must be a nonempty list of nonnegative integers")
    n = sum(comp)
    den = [j for c in comp for j in range(1, c + 1)]
    num = list(range(1, n + 1))
    den += [1] * (len(num) - len(den))
    return RationalForm(tuple(num), tuple(den))


def qcatalan(n: int) -> RationalForm:
    """``[2n]! / ([n]! [n+1]!)``, written as ``prod_{j=n+2}^{2n} [j] / prod_{j=1}^{n} [j]``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    num = list(range(n + 2, 2 * n + 1))
    den = list(range(1, n + 1))
    num += [1] * (len(den) - len(num))
    return RationalForm(tuple(num), tuple(den))


def _qmultinomial(*params) -> RationalForm:
    # accept family("qmultinomial", [2, 1]) as well as family("qmultinomial", 2, 1)
    if len(params) == 1 and not isinstance(params[0], int):
        params = tuple(params[0])
    return qmultinomial(params)


_FAMILIES = {
    "qbinomial": qbinomial,
    "qfactorial": qfactorial,
    "qmultinomial": _qmultinomial,
    "qcatalan": qcatalan,
}


def family(name: str, *params) -> RationalForm:
    try:
        fn = _FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(_FAMILIES)}") from None
    return fn(*params)


def macmahon_box(x: int, y: int, z: int) -> RationalForm:
    """Size generating function of plane partitions in an ``x * y * z`` box (unreduced)."""
    if min(x, y, z) < 1:
        raise ValueError("box sides must be positive")
    num = [i + j + z - 1 for i in range(1, x + 1) for j in range(1, y + 1)]
    den = [i + j - 1 for i in range(1, x + 1) for j in range(1, y + 1)]
    return RationalForm(tuple(num), tuple(den))


def hook_lengths(lam: Partition) -> list[int]:
    conj = lam.conjugate()
    return [
        (row - j - 1) + (conj[j] - i - 1) + 1
        for i, row in enumerate(lam.parts)
        for j in range(row)
    ]


def hook_cgf(lam: Partition) -> RationalForm:
    """Major-index generating function of SYT(lam): ``q^b(lam) [n]! / prod [h_c]``."""
    if not lam.parts:
        raise ValueError("empty partition")
    n = lam.size
    return RationalForm(tuple(range(1, n + 1)), tuple(hook_lengths(lam)), beta=lam.b())


def _poly_from_counts(counts: dict[int, int]) -> IntPoly:
    if not counts:
        return IntPoly()
    top = max(counts)
    return IntPoly(counts.get(k, 0) for k in range(top + 1))


def plane_partitions(x: int, y: int, z: int) -> IntPoly:
    """Enumerate ``x * y`` arrays with entries in ``[0, z]`` weakly decreasing along rows and columns."""
    if (z + 1) ** (x * y) > MAX_STATES:
        raise OracleTooLarge(f"plane_partitions({x},{y},{z}) exceeds {MAX_STATES} states")
    counts: dict[int, int] = {}
    grid = [[0] * y for _ in range(x)]

    def rec(cell: int, size: int) -> None:
        if cell == x * y:
            counts[size] = counts.get(size, 0) + 1
            return
        i, j = divmod(cell, y)
        top = z
        if i > 0:
            top = min(top, grid[i - 1][j])
        if j > 0:
            top = min(top, grid[i][j - 1])
        for v in range(top + 1):
            grid[i][j] = v
            rec(cell + 1, size + v)

    rec(0, 0)
    return _poly_from_counts(counts)


def syt_maj(lam: Partition) -> IntPoly:
    """Sum of ``q^maj(T)`` over standard Young tableaux ``T`` of shape ``lam``.

    ``i`` is a descent of ``T`` when ``i + 1`` sits in a strictly lower row.
    """
    shape = list(lam.parts)
    n = lam.size
    if n > 12:
        raise OracleTooLarge("syt_maj is limited to |lambda| <= 12")
    counts: dict[int, int] = {}
    filled = [0] * len(shape)
    row_of = [0] * (n + 1)

    def rec(k: int, maj: int) -> None:
        if k > n:
            counts[maj] = counts.get(maj, 0) + 1
            return
        for r in range(len(shape)):
            if filled[r] < shape[r] and (r == 0 or filled[r - 1] > filled[r]):
                filled[r] += 1
                row_of[k] = r
                add = k - 1 if k > 1 and r > row_of[k - 1] else 0
                rec(k + 1, maj + add)
                filled[r] -= 1

    rec(1, 0)
    return _poly_from_counts(counts)


def box_partitions(n: int, k: int) -> IntPoly:
    """Partitions fitting in a ``k * (n - k)`` rectangle, counted by size."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    width = n - k
    counts: dict[int, int] = {}

    def rec(rows_left: int, top: int, size: int) -> None:
        if rows_left == 0:
            counts[size] = counts.get(size, 0) + 1
            return
        for v in range(top + 1):
            rec(rows_left - 1, v, size + v)

    rec(k, width, 0)
    return _poly_from_counts(counts)


def bruteforce_oracle(kind: str, *params) -> IntPoly:
    if kind == "plane_partitions":
        return plane_partitions(*params)
    if kind == "syt_maj":
        (lam,) = params
        return syt_maj(lam if isinstance(lam, Partition) else Partition(tuple(lam)))
    if kind == "box_partitions":
        return box_partitions(*params)
    raise ValueError(f"unknown oracle {kind!r}")
