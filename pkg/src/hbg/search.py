"""Bounded search for certificates.

``derive`` looks for a way to write a target word as a product of
conjugates of relators.  Commutator relators [x, y] between generators are
handled exactly by :mod:`hbg.commute`; the remaining ("essential") relators
are inserted one at a time into the residual word by iterative deepening on
their number.  An insertion is only tried where it cancels against the
residual, which keeps the branching small for the shallow derivations this
is meant for.
"""

from __future__ import annotations

import time
from collections import OrderedDict
from dataclasses import dataclass

from .abelian import abelianize, exponent_vector, hermite_rows, in_lattice
from .commute import Code, Commutation
from .presentation import Presentation
from .tietze import Certificate, Factor, evaluate_certificate
from .word import Word, cyclic_reduce, invert, power


@dataclass(frozen=True)
class SearchBudget:
    max_factors: int = 8
    max_conjugator_length: int = 6
    max_intermediate_length: int = 64
    time_limit: float = 60.0
    memo_size: int = 200_000


@dataclass(frozen=True)
class Unknown:
    """No certificate found.  ``refuted`` is set only when the abelian
    filter proves that none exists."""

    reason: str
    nodes: int = 0
    refuted: bool = False

    def __bool__(self) -> bool:
        return False


def abelian_filter(p: Presentation, target: Word) -> bool:
    """Necessary condition: the target's exponent sums lie in the lattice
    spanned by the relators' exponent sums."""
    m = abelianize(p)
    basis = hermite_rows(m.rows, m.cols)
    return in_lattice(exponent_vector(target, p.generators), basis)


class _Rotation:
    __slots__ = ("codes", "rel", "sign", "conj_p", "conj_q", "vec")

    def __init__(self, codes, rel, sign, conj_p, conj_q, vec):
        self.codes = codes
        self.rel = rel
        self.sign = sign
        self.conj_p = conj_p      # rotation = conj R^s conj^-1, two choices
        self.conj_q = conj_q
        self.vec = vec


class _Timeout(Exception):
    pass


class Deriver:
    def __init__(self, p: Presentation, budget: SearchBudget | None = None):
        self.p = p
        self.budget = budget or SearchBudget()
        self.comm = Commutation(p)
        self.nodes = 0
        names = p.generators
        self.rotations: list[_Rotation] = []
        self.by_first: dict[Code, list[_Rotation]] = {}
        self.by_last: dict[Code, list[_Rotation]] = {}
        enc = self.comm.encode
        for k, rel in enumerate(p.relations):
            if k in self.comm.relation_indices or not rel.relator:
                continue
            if self.comm.is_trivial(enc(rel.relator)):
                continue
            for sign in (1, -1):
                rs = power(rel.relator, sign)
                core, c0 = cyclic_reduce(rs)
                units = core.units()
                vec = tuple(exponent_vector(rs, names))
                seen = set()
                for i in range(len(units)):
                    rot = units[i:] + units[:i]
                    codes = enc(Word(rot, p.alphabet)) if rot else ()
                    if codes in seen:
                        continue
                    seen.add(codes)
                    pw = Word(units[:i], p.alphabet)
                    qw = Word(units[i:], p.alphabet)
                    # rot = q p = p^-1 core p = q core q^-1 ; core = c0^-1 R^s c0
                    conj_p = enc(invert(pw) * invert(c0))
                    conj_q = enc(qw * invert(c0))
                    r = _Rotation(codes, k, sign, conj_p, conj_q, vec)
                    self.rotations.append(r)
                    self.by_first.setdefault(codes[0], []).append(r)
                    self.by_last.setdefault(codes[-1], []).append(r)

    def _ref(self, k: int):
        label = self.p.relations[k].label
        return label if label is not None else k

    def _vec(self, codes) -> tuple[int, ...]:
        v = [0] * len(self.p.generators)
        for c in codes:
            v[abs(c) - 1] += 1 if c > 0 else -1
        return tuple(v)

    def _candidates(self, w: tuple[Code, ...], remaining: int):
        comm = self.comm
        budget = self.budget
        seen = set()
        out = []
        need = None
        if remaining == 1:
            need = tuple(-x for x in self._vec(w))
        n = len(w)
        for j, x in enumerate(w):
            # insertion points where a rotation starting with x^-1 meets x
            k = j + 1
            while True:
                for rot in self.by_first.get(-x, ()):
                    seen_key = (k, id(rot))
                    if seen_key not in seen:
                        seen.add(seen_key)
                        out.append((k, rot))
                if k >= n or not comm.commute(w[k], x) or w[k] == x:
                    break
                k += 1
            # insertion points where a rotation ending with x^-1 meets x
            k = j
            while True:
                for rot in self.by_last.get(-x, ()):
                    seen_key = (k, id(rot))
                    if seen_key not in seen:
                        seen.add(seen_key)
                        out.append((k, rot))
                if k == 0 or not comm.commute(w[k - 1], x) or w[k - 1] == x:
                    break
                k -= 1
        scored = []
        for k, rot in out:
            if need is not None and rot.vec != need:
                continue
            # conjugators only matter modulo commutation, so keep them reduced
            prefix = w[:k]
            cp = comm.reduce(prefix + rot.conj_p)
            cq = comm.reduce(prefix + rot.conj_q)
            conj = cp if len(cp) <= len(cq) else cq
            if len(conj) > budget.max_conjugator_length:
                continue
            new = comm.reduce(w[:k] + rot.codes + w[k:])
            if len(new) > budget.max_intermediate_length:
                continue
            scored.append((len(new), len(conj), rot.rel, -rot.sign, k, rot.codes, tuple(conj), rot, new))
        scored.sort(key=lambda t: t[:6])
        return scored

    def search(self, target: Word) -> Certificate | Unknown:
        budget = self.budget
        comm = self.comm
        t_codes = comm.encode(target)
        deadline = time.monotonic() + budget.time_limit
        memo: OrderedDict[tuple[Code, ...], int] = OrderedDict()
        path: list[tuple[tuple[Code, ...], int, int]] = []

        def dfs(w: tuple[Code, ...], remaining: int) -> bool:
            self.nodes += 1
            if not w:
                return True
            if remaining == 0:
                return False
            if self.nodes % 256 == 0 and time.monotonic() > deadline:
                raise _Timeout
            failed = memo.get(w)
            if failed is not None and failed >= remaining:
                memo.move_to_end(w)
                return False
            for _, _, _, _, _, _, conj, rot, new in self._candidates(w, remaining):
                path.append((conj, rot.rel, rot.sign))
                if dfs(comm.normal_form(new), remaining - 1):
                    return True
                path.pop()
            memo[w] = remaining
            if len(memo) > budget.memo_size:
                memo.popitem(last=False)
            return False

        start = comm.normal_form(t_codes)
        try:
            for depth in range(budget.max_factors + 1):
                if dfs(start, depth):
                    return self._assemble(target, path)
        except _Timeout:
            return Unknown(f"time limit {budget.time_limit}s reached", self.nodes)
        return Unknown(f"no certificate with at most {budget.max_factors} essential factors", self.nodes)

    def _assemble(self, target: Word, path) -> Certificate:
        comm = self.comm
        # residual_{i+1} = F_i residual_i, so Q = F_k ... F_1 T is trivial
        # modulo commutation and T = F_1^-1 ... F_k^-1 Q.
        q: list[Code] = []
        for conj, k, sign in reversed(path):
            rel = comm.encode(power(self.p.relations[k].relator, sign))
            q.extend(conj + rel + _inv(conj))
        q.extend(comm.encode(target))
        q = _free(q)
        shuffles = comm.certificate(q)
        if shuffles is None:
            raise AssertionError("residual not trivial modulo commutation")
        factors = [Factor(comm.decode(conj), self._ref(k), -sign) for conj, k, sign in path]
        factors += [Factor(comm.decode(conj), self._ref(k), sign) for conj, k, sign in shuffles]
        cert = Certificate(tuple(factors))
        got = evaluate_certificate(self.p, cert)
        if got != target.with_alphabet(self.p.alphabet):
            raise AssertionError(f"derive produced a failing certificate: {got} != {target}")
        return cert


def _inv(codes):
    return tuple(-c for c in reversed(codes))


def _free(codes) -> list[Code]:
    out: list[Code] = []
    for c in codes:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return out


def derive(p: Presentation, target: Word, budget: SearchBudget | None = None) -> Certificate | Unknown:
    """Certificate for ``target`` as a consequence of the relators of ``p``,
    or :class:`Unknown` if none was found within the budget."""
    target = target.with_alphabet(p.alphabet)
    if not target:
        return Certificate()
    if not abelian_filter(p, target):
        return Unknown("provably non-derivable: fails in the abelianization", refuted=True)
    return Deriver(p, budget).search(target)
