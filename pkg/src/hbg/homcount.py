"""Counting homomorphisms from a presented group into small finite groups.

The count |Hom(G, T)| only depends on the group G, so two presentations of
the same group must agree on every target T.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import HbgError, MissingAssignment, UnknownGroupName
from .presentation import Presentation
from .word import Word


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]

    def __post_init__(self):
        self._verify()

    def _verify(self) -> None:
        n, t, e = self.order, self.table, self.identity
        if len(t) != n or any(len(row) != n for row in t):
            raise HbgError(f"{self.name}: table is not {n}x{n}")
        for x in range(n):
            if t[e][x] != x or t[x][e] != x:
                raise HbgError(f"{self.name}: {e} is not an identity")
            if t[x][self.inverses[x]] != e:
                raise HbgError(f"{self.name}: bad inverse for {x}")
        for x in range(n):
            tx = t[x]
            for y in range(n):
                txy = t[tx[y]]
                ty = t[y]
                for z in range(n):
                    if txy[z] != tx[ty[z]]:
                        raise HbgError(f"{self.name}: not associative at {(x, y, z)}")

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverses[x], -k
        acc = self.identity
        while k:
            if k & 1:
                acc = self.table[acc][x]
            x = self.table[x][x]
            k >>= 1
        return acc

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            k += 1
        return k

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[x][y] == t[y][x] for x in range(self.order) for y in range(x))

    @classmethod
    def from_permutations(cls, name: str, gens: Sequence[Sequence[int]]) -> FiniteGroup:
        """Close a set of permutations (tuples of images) under composition."""
        degree = len(gens[0])
        ident = tuple(range(degree))
        elements = [ident]
        index = {ident: 0}
        frontier = [ident]
        gens = [tuple(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = tuple(g[x[i]] for i in range(degree))
                    if y not in index:
                        index[y] = len(elements)
                        elements.append(y)
                        nxt.append(y)
            frontier = nxt
        n = len(elements)
        # (x*y)(i) = x(y(i)): apply y first
        table = tuple(
            tuple(index[tuple(x[y[i]] for i in range(degree))] for y in elements)
            for x in elements
        )
        inverses = tuple(row.index(0) for row in table)
        return cls(name, n, table, 0, inverses)


def _cycle(n: int, k: int = 1, offset: int = 0, degree: int | None = None) -> tuple[int, ...]:
    degree = degree or n + offset
    perm = list(range(degree))
    for i in range(n):
        perm[offset + i] = offset + (i + k) % n
    return tuple(perm)


def _dihedral(n: int) -> list[tuple[int, ...]]:
    rot = _cycle(n)
    refl = tuple((-i) % n for i in range(n))
    return [rot, refl]


def _quaternion() -> list[tuple[int, ...]]:
    # left regular action of i and j on (1, i, j, k, -1, -i, -j, -k)
    els = ["1", "i", "j", "k"]
    mult = {("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
            ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i")}

    def times(a: str, b: tuple[int, str]) -> tuple[int, str]:
        s, u = b
        if u == "1":
            return s, a
        if (a, u) in mult:
            s2, v = mult[(a, u)]
            return s * s2, v
        raise KeyError

    def idx(s: int, u: str) -> int:
        return els.index(u) + (0 if s == 1 else 4)

    perms = []
    for a in ("i", "j"):
        perm = []
        for k in range(8):
            s, u = (1 if k < 4 else -1), els[k % 4]
            s2, v = times(a, (s, u))
            perm.append(idx(s2, v))
        perms.append(tuple(perm))
    return perms


BUILTIN_GROUPS = ("C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "D4", "Q8", "D5", "A4", "D6", "S4")


def builtin_group(name: str) -> FiniteGroup:
    if name in ("C2", "C3", "C4", "C5", "C6"):
        n = int(name[1:])
        return FiniteGroup.from_permutations(name, [_cycle(n)])
    if name == "C2xC2":
        return FiniteGroup.from_permutations(name, [(1, 0, 2, 3), (0, 1, 3, 2)])
    if name == "S3":
        return FiniteGroup.from_permutations(name, [(1, 0, 2), (1, 2, 0)])
    if name in ("D4", "D5", "D6"):
        return FiniteGroup.from_permutations(name, _dihedral(int(name[1:])))
    if name == "Q8":
        return FiniteGroup.from_permutations(name, _quaternion())
    if name == "A4":
        return FiniteGroup.from_permutations(name, [(1, 2, 0, 3), (1, 0, 3, 2)])
    if name == "S4":
        return FiniteGroup.from_permutations(name, [(1, 0, 2, 3), (1, 2, 3, 0)])
    raise UnknownGroupName(f"unknown group {name!r}; choose from {', '.join(BUILTIN_GROUPS)}")


def evaluate_word(w: Word, assignment: Mapping[str, int], group: FiniteGroup) -> int:
    acc = group.identity
    table = group.table
    for name, exp in w.letters:
        try:
            x = assignment[name]
        except KeyError:
            raise MissingAssignment(f"no image for generator {name!r}") from None
        acc = table[acc][group.power(x, exp)]
    return acc


# -- backtracking --------------------------------------------------------

class _Plan:
    """Assignment order plus, per position, the relators completed there and
    an optional relator that pins the generator's image."""

    def __init__(self, p: Presentation, group: FiniteGroup):
        names = list(p.generators)
        relators = [r for r in p.relators if r]
        occ = {n: 0 for n in names}
        for r in relators:
            for n, e in r.letters:
                occ[n] += abs(e)
        # descending occurrence count; declaration order breaks ties
        self.order = sorted(names, key=lambda n: (-occ[n], names.index(n)))
        pos = {n: i for i, n in enumerate(self.order)}
        n = len(self.order)
        self.checks: list[list[tuple[tuple[int, int], ...]]] = [[] for _ in range(n)]
        self.solvers: list[tuple | None] = [None] * n
        for r in relators:
            compiled = tuple((pos[name], e) for name, e in r.letters)
            last = max(i for i, _ in compiled)
            hits = [k for k, (i, _) in enumerate(compiled) if i == last]
            if self.solvers[last] is None and len(hits) == 1 and abs(compiled[hits[0]][1]) == 1:
                k = hits[0]
                self.solvers[last] = (compiled[:k], compiled[k][1], compiled[k + 1:])
            self.checks[last].append(compiled)
        self.group = group
        self.size = n


def _powers(group: FiniteGroup) -> list[list[int]]:
    # x^k for k taken mod |G|
    out = []
    for x in range(group.order):
        row = [group.identity]
        for _ in range(group.order - 1):
            row.append(group.table[row[-1]][x])
        out.append(row)
    return out


def _count_from(plan: _Plan, prefix: Sequence[int]) -> int:
    group = plan.group
    table = group.table
    inv = group.inverses
    ident = group.identity
    order = group.order
    pw = _powers(group)
    n = plan.size
    checks = plan.checks
    solvers = plan.solvers
    values = [0] * n

    def evaluate(word) -> int:
        acc = ident
        for i, e in word:
            acc = table[acc][pw[values[i]][e % order]]
        return acc

    def ok(level: int) -> bool:
        for word in checks[level]:
            if evaluate(word) != ident:
                return False
        return True

    def rec(level: int) -> int:
        if level == n:
            return 1
        solver = solvers[level]
        if solver is not None:
            before, sign, after = solver
            # before * x^sign * after = 1  =>  x^sign = before^-1 after^-1
            x = table[inv[evaluate(before)]][inv[evaluate(after)]]
            values[level] = x if sign == 1 else inv[x]
            return rec(level + 1) if ok(level) else 0
        total = 0
        for x in range(order):
            values[level] = x
            if ok(level):
                total += rec(level + 1)
        return total

    for level, x in enumerate(prefix):
        if solvers[level] is not None:
            raise ValueError("prefix levels must be free choices")
        values[level] = x
        if not ok(level):
            return 0
    return rec(len(prefix))


def _branch(args) -> int:
    p, group, first = args
    plan = _Plan(p, group)
    return _count_from(plan, [first])


def count_homomorphisms(p: Presentation, group: FiniteGroup, workers: int = 1) -> int:
    """|Hom(<p>, group)| by pruned backtracking."""
    plan = _Plan(p, group)
    if plan.size == 0:
        return 1
    if workers <= 1 or plan.solvers[0] is not None:
        return _count_from(plan, [])
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_branch, [(p, group, x) for x in range(group.order)]))


def count_homomorphisms_exhaustive(p: Presentation, group: FiniteGroup) -> int:
    """Unpruned enumeration of every assignment; reference for small cases."""
    names = p.generators
    relators = p.relators
    total = 0
    for images in itertools.product(range(group.order), repeat=len(names)):
        assignment = dict(zip(names, images))
        if all(evaluate_word(r, assignment, group) == group.identity for r in relators):
            total += 1
    return total


def abelian_hom_count(free_rank: int, torsion: Sequence[int], group: FiniteGroup) -> int:
    """|Hom(Z^r + sum Z/d_i, A)| for an abelian target A."""
    count = group.order ** free_rank
    for d in torsion:
        count *= sum(1 for x in range(group.order) if group.power(x, d) == group.identity)
    return count
