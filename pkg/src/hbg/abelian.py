"""Abelianization and exact integer Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .presentation import Presentation
from .word import Word


@dataclass(frozen=True)
class IntMatrix:
    """Row i holds the exponent sums of relator i; one column per generator."""

    rows: tuple[tuple[int, ...], ...]
    cols: int
    col_names: tuple[str, ...] = ()

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("column count required for an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.cols

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class SnfResult:
    # equality compares the group (free rank and torsion), not the 1s
    diagonal: tuple[int, ...] = field(compare=False)   # nonzero invariant factors including 1s
    free_rank: int = 0
    torsion: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(d for d in self.diagonal if d != 1))

    def __str__(self) -> str:
        return f"free_rank={self.free_rank} torsion=[{','.join(map(str, self.torsion))}]"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def exponent_vector(w: Word, names: Sequence[str]) -> list[int]:
    index = {n: i for i, n in enumerate(names)}
    vec = [0] * len(names)
    for name, exp in w.letters:
        vec[index[name]] += exp
    return vec


def abelianize(p: Presentation) -> IntMatrix:
    names = p.generators
    rows = tuple(tuple(exponent_vector(r, names)) for r in p.relators)
    return IntMatrix(rows, len(names), tuple(names))


def _diagonalize(a: list[list[int]], m: int, n: int) -> list[int]:
    """In-place unimodular diagonalization; returns the diagonal with the
    divisibility chain enforced."""
    diag: list[int] = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the trailing block
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        done = False
            rt = a[t]
            for j in range(t + 1, n):
                if rt[j]:
                    q = rt[j] // p
                    if q:
                        for row in a[t:]:
                            row[j] -= q * row[t]
                    if rt[j]:
                        done = False
            if done:
                # divisibility: fold any offending row into the pivot row
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                rt, rb = a[t], a[bad]
                for j in range(t, n):
                    rt[j] += rb[j]
                continue
            # a smaller remainder appeared in the pivot row/column: move it in
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, n):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, pi, pj = best
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def smith_normal_form(m: IntMatrix) -> SnfResult:
    rows, cols = m.shape
    a = m.to_lists()
    diag = _diagonalize(a, rows, cols)
    return SnfResult(tuple(diag), cols - len(diag))


def invariants(p: Presentation) -> SnfResult:
    return smith_normal_form(abelianize(p))


# -- lattice membership --------------------------------------------------

def hermite_rows(rows: Sequence[Sequence[int]], cols: int) -> list[list[int]]:
    """Row echelon basis over the integers of the lattice spanned by ``rows``."""
    a = [list(r) for r in rows if any(r)]
    basis: list[list[int]] = []
    col = 0
    while a and col < cols:
        nz = [r for r in a if r[col]]
        if not nz:
            col += 1
            continue
        zero = [r for r in a if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [x - q * y for x, y in zip(r, piv)]
                if r[col]:
                    rest.append(r)
                elif any(r):
                    zero.append(r)
            nz = [piv] + rest
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        a = zero
        col += 1
    return basis


def in_lattice(vec: Sequence[int], basis: list[list[int]]) -> bool:
    v = list(vec)
    for row in basis:
        col = next(j for j, x in enumerate(row) if x)
        if any(v[:col]):
            return False
        if v[col] % row[col]:
            return False
        q = v[col] // row[col]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return not any(v)
