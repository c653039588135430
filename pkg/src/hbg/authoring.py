"""Builds ``corpus/genus2_reduction.tietze``.

Each step names the relator to add or drop; certificates come from
:func:`hbg.search.derive` at authoring time and are written out explicitly,
so replay never searches.  Run ``python -m hbg.authoring`` to regenerate.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

from .errors import HbgError
from .presentation import Presentation, load_presentation, relation_from_text
from .search import SearchBudget, derive
from .tietze import (AddRelator, Certificate, RemoveGenerator, RemoveRelator, RenameGenerator,
                     Script, apply_move, render_script)

CORPUS = Path(__file__).parent / "corpus"


def _cites(note: str, cert: Certificate) -> str:
    refs = sorted({str(f.relation) for f in cert.factors})
    if not refs:
        return f"{note}; free reduction suffices"
    return f"{note}; uses {' '.join(refs)}"


class Author:
    def __init__(self, source: Presentation, budget: SearchBudget | None = None, log=None):
        self.p = source
        self.moves: list = []
        self.budget = budget or SearchBudget()
        self.log = log
        self.timings: list[tuple[str, float, int]] = []

    def _say(self, msg: str) -> None:
        if self.log:
            print(msg, file=self.log, flush=True)

    def _derive(self, p: Presentation, target, what: str, budget: SearchBudget | None) -> Certificate:
        t0 = time.monotonic()
        cert = derive(p, target, budget or self.budget)
        dt = time.monotonic() - t0
        if not isinstance(cert, Certificate):
            raise HbgError(f"{what}: no certificate ({cert.reason})")
        self.timings.append((what, dt, len(cert)))
        self._say(f"  {what}: {len(cert)} factors in {dt:.2f}s")
        return cert

    def _apply(self, move) -> None:
        self.p = apply_move(self.p, move)
        self.moves.append(move)

    def addrel(self, label: str, text: str, note: str, budget: SearchBudget | None = None) -> None:
        relator = relation_from_text(text, self.p.alphabet, label).relator
        cert = self._derive(self.p, relator, f"addrel {label}", budget)
        self._apply(AddRelator(label, relator, cert, _cites(note, cert)))

    def delrel(self, ref: str, note: str, budget: SearchBudget | None = None) -> None:
        removed = self.p.relation(ref).relator
        rest = self.p.without_relation(ref)
        cert = self._derive(rest, removed, f"delrel {ref}", budget)
        self._apply(RemoveRelator(ref, cert, _cites(note, cert)))

    def delgen(self, name: str, via: str, note: str) -> None:
        self._apply(RemoveGenerator(name, via, note))

    def rename(self, old: str, new: str, note: str) -> None:
        self._apply(RenameGenerator(old, new, note))


def build_genus2(log=None) -> tuple[Script, Author]:
    source = load_presentation(CORPUS / "wajnryb_genus2.pres")
    a = Author(source, log=log)
    A = "a1^2 a2^2"

    # lantern block
    a.addrel("P3'", "d-11 = d-22", "d-11 = d-22")
    a.addrel("P4.1''", "d12 = d-2-1", "d12 = d-2-1")
    a.addrel("P4.2''", f"d-21 = {A} d12^-1 d-11^-1", "solve for d-21")
    a.addrel("P4.3''", f"d-12 = {A} d-11^-1 d12^-1", "solve for d-12")
    a.delrel("P4.4", "P4.4 is redundant")
    for ref in ("P3", "P4.1", "P4.2", "P4.3"):
        a.delrel(ref, f"{ref} is redundant")

    # eliminate d-2-1, d-22, d-21, d-12
    a.delgen("d-2-1", "P4.1''", "d-2-1 = d12")
    a.delgen("d-22", "P3'", "d-22 = d-11")
    a.delgen("d-21", "P4.2''", "d-21 = a1^2 a2^2 d12^-1 d-11^-1")
    a.delgen("d-12", "P4.3''", "d-12 = a1^2 a2^2 d-11^-1 d12^-1")

    # the pure braid relations become trivial modulo P1
    for i in range(1, 12):
        a.delrel(f"P2.{i}", f"P2.{i} is trivial modulo commutation")
    for x in ("a1", "a2"):
        for d in ("d-2-1", "d-21", "d-22", "d-12"):
            a.delrel(f"P1.{x}{d}", f"{x} <-> {d} is redundant")

    # eliminate d-11, o2, e
    a.delgen("d-11", "P6a", "d-11 = o^2")
    a.delgen("o2", "D5", "o2 = (t d12^-1) * o")
    a.delgen("e", "D7", "e = o z o^-1 z")

    a.rename("d12", "d", "d12 is the only d generator left")

    a.addrel("D1'", "d <-> o t o", "o t o commutes with d")
    a.delrel("D1", "D1 is redundant")
    a.addrel("D2'", f"o d o d = {A}", "o d o d = a1^2 a2^2")
    a.delrel("D2", "D2 is redundant")
    a.delrel("D3", "D3 is redundant")
    for x in ("a1", "a2"):
        a.delrel(f"P1.{x}d-11", f"{x} <-> o^2 is redundant")
    a.delrel("P8c", "o <-> o^2 holds in the free group")
    a.delrel("P10g", "P10g is redundant")
    a.addrel("P9'", "r^2 = d^-2 a1^2 a2^-2", "r^2 = d^-2 a1^2 a2^-2")
    a.delrel("P9", "P9 is redundant")
    a.delrel("P10f", "P10f (r * d = a2) is redundant")
    a.delgen("z", "D6", "z = a1^-1 a2^-1 o t o d is an abbreviation")
    return Script("wajnryb_genus2.pres", "simple_genus2.pres", a.moves, CORPUS), a


def main(argv: list[str] | None = None) -> int:
    script, author = build_genus2(log=sys.stderr)
    out = CORPUS / "genus2_reduction.tietze"
    out.write_text(render_script(script), encoding="utf-8")
    print(f"wrote {out} ({len(script.moves)} moves)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
