"""Finite presentations: data model, ``.pres`` text format, canonical form."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DuplicateLabel, GeneratorInTarget, HbgError, ParseError, UnknownRelation
from .word import Alphabet, Word, commutator, cyclic_reduce, invert, parse_word

LABEL_RE = re.compile(r"[A-Za-z0-9_.'\-]+")


@dataclass(frozen=True)
class Relation:
    label: str | None
    relator: Word

    def __str__(self) -> str:
        return f"{self.label}: {self.relator}" if self.label else str(self.relator)


class Presentation:
    """Generators in declaration order plus an ordered list of relators."""

    __slots__ = ("alphabet", "relations")

    def __init__(self, alphabet: Alphabet | Iterable[str], relations: Iterable[Relation] = ()):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        rels = []
        labels: set[str] = set()
        for rel in relations:
            if rel.label is not None:
                if rel.label in labels:
                    raise DuplicateLabel(f"relation label {rel.label!r} used twice")
                labels.add(rel.label)
            rels.append(Relation(rel.label, rel.relator.with_alphabet(alphabet)))
        self.alphabet = alphabet
        self.relations: tuple[Relation, ...] = tuple(rels)

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.names

    @property
    def relators(self) -> list[Word]:
        return [r.relator for r in self.relations]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Presentation) and self.alphabet == other.alphabet
                and self.relations == other.relations)

    def __repr__(self) -> str:
        return f"<Presentation {len(self.alphabet)} generators, {len(self.relations)} relations>"

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def find(self, ref: str | int) -> int:
        """Index of a relation given its label, ``#k`` or integer k (0-based)."""
        if isinstance(ref, str) and ref.startswith("#"):
            try:
                ref = int(ref[1:])
            except ValueError:
                raise UnknownRelation(f"bad relation index {ref!r}") from None
        if isinstance(ref, int):
            if 0 <= ref < len(self.relations):
                return ref
            raise UnknownRelation(f"no relation #{ref}")
        for i, rel in enumerate(self.relations):
            if rel.label == ref:
                return i
        raise UnknownRelation(f"no relation labelled {ref!r}")

    def relation(self, ref: str | int) -> Relation:
        return self.relations[self.find(ref)]

    def with_relation(self, relator: Word, label: str | None = None) -> Presentation:
        return Presentation(self.alphabet, self.relations + (Relation(label, relator),))

    def without_relation(self, ref: str | int) -> Presentation:
        i = self.find(ref)
        return Presentation(self.alphabet, self.relations[:i] + self.relations[i + 1:])


def relation_from_text(text: str, alphabet: Alphabet, label: str | None = None) -> Relation:
    """Relator, equality (``u = v``) or commuting (``u <-> v``) form."""
    if "<->" in text:
        lhs, _, rhs = text.partition("<->")
        relator = commutator(parse_word(lhs, alphabet), parse_word(rhs, alphabet))
    elif "=" in text:
        lhs, _, rhs = text.partition("=")
        if "=" in rhs:
            raise ParseError("more than one '=' in relation")
        relator = parse_word(lhs, alphabet) * invert(parse_word(rhs, alphabet))
    else:
        relator = parse_word(text, alphabet)
    return Relation(label, relator)


def parse_presentation(text: str, source: str | None = None) -> Presentation:
    alphabet: Alphabet | None = None
    relations: list[Relation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if alphabet is None:
                if not line.startswith("gens:"):
                    raise ParseError("first line must be 'gens: ...'")
                alphabet = Alphabet(line[5:].split())
                continue
            if line.startswith("gens:"):
                raise ParseError("'gens:' given twice")
            if not line.startswith("rel") or (len(line) > 3 and line[3] not in " :\t"):
                raise ParseError(f"expected 'rel', got {line.split()[0]!r}")
            body = line[3:].strip()
            label = None
            if ":" in body:
                head, _, body = body.partition(":")
                head = head.strip()
                if head:
                    if not LABEL_RE.fullmatch(head):
                        raise ParseError(f"bad relation label {head!r}")
                    label = head
            relations.append(relation_from_text(body, alphabet, label))
        except ParseError as exc:
            raise ParseError(exc.message, position=exc.position, line=lineno, source=source) from None
        except HbgError as exc:
            exc.args = (f"{source or '<text>'}:line {lineno}: {exc}",)
            raise
    if alphabet is None:
        raise ParseError("missing 'gens:' line", source=source)
    return Presentation(alphabet, relations)


def load_presentation(path: str | Path) -> Presentation:
    path = Path(path)
    return parse_presentation(path.read_text(encoding="utf-8"), source=str(path))


def render(p: Presentation) -> str:
    lines = ["gens: " + " ".join(p.generators)]
    for rel in p.relations:
        lines.append(f"rel {rel.label}: {rel.relator}" if rel.label else f"rel: {rel.relator}")
    return "\n".join(lines) + "\n"


# -- canonical form ------------------------------------------------------

def _unit_key(units: Sequence[tuple[str, int]], alphabet: Alphabet) -> tuple:
    return tuple(2 * alphabet.index(n) + (0 if e > 0 else 1) for n, e in units)


def canonical_relator(w: Word, alphabet: Alphabet | None = None) -> Word:
    """Least cyclic rotation of ``w`` or ``w^-1``; identity if trivial."""
    alphabet = alphabet or w.alphabet
    core, _ = cyclic_reduce(w)
    if not core:
        return core
    best = None
    best_key = None
    for cand in (core, invert(core)):
        units = cand.units()
        for k in range(len(units)):
            rot = units[k:] + units[:k]
            key = _unit_key(rot, alphabet)
            if best_key is None or key < best_key:
                best, best_key = rot, key
    return Word(best, alphabet)


def canonicalize(p: Presentation) -> Presentation:
    seen: dict[Word, Relation] = {}
    for rel in p.relations:
        canon = canonical_relator(rel.relator, p.alphabet)
        if canon and canon not in seen:
            seen[canon] = Relation(rel.label, canon)
    ordered = sorted(seen.values(), key=lambda r: _unit_key(r.relator.units(), p.alphabet))
    return Presentation(p.alphabet, ordered)


def equal_canonical(p: Presentation, q: Presentation) -> bool:
    if p.generators != q.generators:
        return False
    cp, cq = canonicalize(p), canonicalize(q)
    return cp.relators == cq.relators


def substitute_generator(p: Presentation, g: str, w: Word) -> Presentation:
    """Replace ``g`` by ``w`` in every relator and drop ``g``."""
    p.alphabet.index(g)
    if g in w.generators():
        raise GeneratorInTarget(f"replacement for {g} mentions {g}")
    new_alphabet = p.alphabet.without(g)
    images = {g: w.with_alphabet(p.alphabet)}
    rels = []
    for rel in p.relations:
        rels.append(Relation(rel.label, rel.relator.substitute(images).with_alphabet(new_alphabet)))
    return Presentation(new_alphabet, rels)
