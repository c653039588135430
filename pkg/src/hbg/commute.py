"""Words modulo the commutation relators of a presentation.

Relators of the form [x, y] for generators x != y define a partially
commutative (right-angled Artin) quotient whose word problem is solved by
greedy cancellation.  Every shuffle performed here is recorded as a
conjugate of the corresponding commutator relator, so triviality modulo
commutation comes with an explicit certificate.

Letters are coded as integers: generator index i is ``i + 1`` and its
inverse ``-(i + 1)``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .presentation import Presentation, canonical_relator
from .word import Word, commutator, conjugate_witness

Code = int


class Commutation:
    def __init__(self, p: Presentation, exclude: Iterable[int] = ()):
        self.presentation = p
        self.names = p.generators
        self.index = {n: i for i, n in enumerate(self.names)}
        n = len(self.names)
        self.commutes = [[i == j for j in range(n)] for i in range(n)]
        self.pair_relation: dict[tuple[int, int], int] = {}
        self.relation_indices: set[int] = set()
        excluded = set(exclude)
        canon_pairs = {}
        for i in range(n):
            for j in range(i + 1, n):
                c = commutator(Word.generator(self.names[i], p.alphabet),
                               Word.generator(self.names[j], p.alphabet))
                canon_pairs[canonical_relator(c, p.alphabet)] = (i, j)
        for k, rel in enumerate(p.relations):
            if k in excluded:
                continue
            pair = canon_pairs.get(canonical_relator(rel.relator, p.alphabet))
            if pair is None:
                continue
            self.relation_indices.add(k)
            if pair not in self.pair_relation:
                self.pair_relation[pair] = k
                i, j = pair
                self.commutes[i][j] = self.commutes[j][i] = True
        self._swap_cache: dict[tuple[Code, Code], tuple[tuple[Code, ...], int, int]] = {}

    # -- conversions ----------------------------------------------------

    def encode(self, w: Word) -> tuple[Code, ...]:
        return tuple((self.index[n] + 1) * e for n, e in w.units())

    def decode(self, codes: Sequence[Code]) -> Word:
        return Word(((self.names[abs(c) - 1], 1 if c > 0 else -1) for c in codes),
                    self.presentation.alphabet)

    def commute(self, x: Code, y: Code) -> bool:
        return self.commutes[abs(x) - 1][abs(y) - 1]

    # -- word problem ---------------------------------------------------

    def reduce(self, codes: Iterable[Code]) -> list[Code]:
        out: list[Code] = []
        commutes = self.commutes
        for c in codes:
            g = abs(c) - 1
            row = commutes[g]
            j = len(out) - 1
            hit = -1
            while j >= 0:
                d = out[j]
                if d == -c:
                    hit = j
                    break
                if d == c or not row[abs(d) - 1]:
                    break
                j -= 1
            if hit >= 0:
                del out[hit]
            else:
                out.append(c)
        return out

    def normal_form(self, codes: Iterable[Code]) -> tuple[Code, ...]:
        """Shortlex-least representative of the reduced word."""
        rest = self.reduce(codes)
        out: list[Code] = []
        commutes = self.commutes
        key = _code_key
        while rest:
            best = -1
            for k, c in enumerate(rest):
                row = commutes[abs(c) - 1]
                if all(row[abs(d) - 1] for d in rest[:k]):
                    if best < 0 or key(c) < key(rest[best]):
                        best = k
            out.append(rest.pop(best))
        return tuple(out)

    def is_trivial(self, codes: Iterable[Code]) -> bool:
        return not self.reduce(codes)

    # -- certificates ---------------------------------------------------

    def _swap(self, y: Code, x: Code) -> tuple[tuple[Code, ...], int, int]:
        """Witness for y x -> x y: y x y^-1 x^-1 = c R^s c^-1."""
        key = (y, x)
        hit = self._swap_cache.get(key)
        if hit is None:
            pair = tuple(sorted((abs(y) - 1, abs(x) - 1)))
            k = self.pair_relation[pair]
            relator = self.presentation.relations[k].relator
            found = conjugate_witness(self.decode((y, x, -y, -x)), relator)
            assert found is not None
            conj, sign = found
            hit = (self.encode(conj), k, sign)
            self._swap_cache[key] = hit
        return hit

    def certificate(self, codes: Sequence[Code]) -> list[tuple[tuple[Code, ...], int, int]] | None:
        """Factors ``(conjugator, relation index, sign)`` whose product freely
        equals the word, or None if the word is not trivial here."""
        out: list[Code] = []
        factors: list[tuple[tuple[Code, ...], int, int]] = []
        commutes = self.commutes
        for c in codes:
            row = commutes[abs(c) - 1]
            j = len(out) - 1
            hit = -1
            while j >= 0:
                d = out[j]
                if d == -c:
                    hit = j
                    break
                if d == c or not row[abs(d) - 1]:
                    break
                j -= 1
            if hit < 0:
                out.append(c)
                continue
            # move c left across out[hit+1:], one swap at a time
            for pos in range(len(out) - 1, hit, -1):
                conj, k, sign = self._swap(out[pos], c)
                factors.append((tuple(out[:pos]) + conj, k, sign))
            del out[hit]
        if out:
            return None
        return factors


def _code_key(c: Code) -> int:
    return 2 * (abs(c) - 1) + (0 if c > 0 else 1)
