"""Finite groups as validated Cayley tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import NoIdentity, NoInverse, NotAssociative, OrderCapExceeded

DEFAULT_ORDER_CAP = 64


@dataclass(frozen=True)
class FiniteGroup:
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverses[x]

    def is_abelian(self) -> bool:
        return self.noncommuting_pair() is None

    def noncommuting_pair(self) -> Optional[tuple[int, int]]:
        n = self.order
        for x in range(n):
            for y in range(x + 1, n):
                if self.table[x][y] != self.table[y][x]:
                    return (x, y)
        return None


def validate_table(table: Sequence[Sequence[int]], name: str = "", cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Check a Cayley table exhaustively and return the group it defines.

    Raises NotAssociative with the first failing triple, NoIdentity, or
    NoInverse with the offending element.
    """
    n = len(table)
    if n == 0:
        raise ValueError("empty table")
    if n > cap:
        raise OrderCapExceeded(f"group order {n} exceeds cap {cap}", order=n, cap=cap)
    rows = tuple(tuple(int(v) for v in row) for row in table)
    for row in rows:
        if len(row) != n:
            raise ValueError("table is not square")
        for v in row:
            if not 0 <= v < n:
                raise ValueError(f"entry {v} out of range")
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            xy = rx[y]
            ry = rows[y]
            rxy = rows[xy]
            for z in range(n):
                if rxy[z] != rx[ry[z]]:
                    raise NotAssociative(f"({x}*{y})*{z} != {x}*({y}*{z})", triple=[x, y, z])
    ident = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            ident = e
            break
    if ident is None:
        raise NoIdentity("no two-sided identity")
    inverses = []
    for x in range(n):
        inv = next((y for y in range(n) if rows[x][y] == ident and rows[y][x] == ident), None)
        if inv is None:
            raise NoInverse(f"element {x} has no inverse", element=x)
        inverses.append(inv)
    return FiniteGroup(rows, ident, tuple(inverses), name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return validate_table(table, name=f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Pairs (a, b) are indexed a * |H| + b."""
    m = h.order
    n = g.order * m
    table = [[0] * n for _ in range(n)]
    for a1 in range(g.order):
        for b1 in range(m):
            row = table[a1 * m + b1]
            for a2 in range(g.order):
                for b2 in range(m):
                    row[a2 * m + b2] = g.table[a1][a2] * m + h.table[b1][b2]
    return validate_table(table, name=f"{g.name}x{h.name}", cap=cap)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon; r^k s^j has index k + n*j."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def mul(x: int, y: int) -> int:
        k1, j1 = x % n, x // n
        k2, j2 = y % n, y // n
        k = (k1 + (k2 if j1 == 0 else -k2)) % n
        return k + n * ((j1 + j2) % 2)

    table = [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]
    return validate_table(table, name=f"D{n}")
