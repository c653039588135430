"""Certified Tietze moves and replay of ``.tietze`` scripts.

Adding or removing a relator requires an explicit certificate: a product of
conjugates of relators that freely equals the relator in question.  Replay
never searches; it only evaluates certificates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence, Union

from .errors import (BadEliminationRelator, CertificateMismatch, HbgError, NameClash, ParseError,
                     UnknownGenerator, UnknownRelation)
from .presentation import (LABEL_RE, Presentation, Relation, equal_canonical, load_presentation,
                           relation_from_text, substitute_generator)
from .word import NAME_RE, Word, invert, parse_word, power, product

RelRef = Union[str, int]


@dataclass(frozen=True)
class Factor:
    conjugator: Word
    relation: RelRef
    sign: int = 1

    def __str__(self) -> str:
        ref = f"#{self.relation}" if isinstance(self.relation, int) else self.relation
        return f"({self.conjugator} ; {ref} ; {'+' if self.sign > 0 else '-'})"


@dataclass(frozen=True)
class Certificate:
    factors: tuple[Factor, ...] = ()

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return " ".join(map(str, self.factors))

    def inverse(self) -> Certificate:
        return Certificate(tuple(Factor(f.conjugator, f.relation, -f.sign) for f in reversed(self.factors)))

    def __add__(self, other: Certificate) -> Certificate:
        return Certificate(self.factors + other.factors)


def evaluate_certificate(p: Presentation, cert: Certificate) -> Word:
    letters: list[tuple[str, int]] = []
    for f in cert.factors:
        rel = p.relation(f.relation).relator
        conj = f.conjugator.with_alphabet(p.alphabet)
        letters.extend(conj.letters)
        letters.extend(power(rel, f.sign).letters)
        letters.extend(invert(conj).letters)
    return Word(letters, p.alphabet)


# -- moves ---------------------------------------------------------------

@dataclass(frozen=True)
class AddRelator:
    label: str | None
    relator: Word
    cert: Certificate
    note: str = ""

    def describe(self) -> str:
        return f"addrel {self.label or ''}: {self.relator} ({len(self.cert)} factors)"


@dataclass(frozen=True)
class RemoveRelator:
    relation: RelRef
    cert: Certificate
    note: str = ""

    def describe(self) -> str:
        return f"delrel {self.relation} ({len(self.cert)} factors)"


@dataclass(frozen=True)
class AddGenerator:
    name: str
    definition: Word
    label: str | None = None
    note: str = ""

    def describe(self) -> str:
        return f"addgen {self.name} := {self.definition}"


@dataclass(frozen=True)
class RemoveGenerator:
    name: str
    via: RelRef
    note: str = ""

    def describe(self) -> str:
        return f"delgen {self.name} via {self.via}"


@dataclass(frozen=True)
class RenameGenerator:
    old: str
    new: str
    note: str = ""

    def describe(self) -> str:
        return f"rename {self.old} -> {self.new}"


TietzeMove = Union[AddRelator, RemoveRelator, AddGenerator, RemoveGenerator, RenameGenerator]


def _check(p: Presentation, cert: Certificate, expected: Word) -> None:
    got = evaluate_certificate(p, cert)
    expected = expected.with_alphabet(p.alphabet)
    if got != expected:
        raise CertificateMismatch(expected, got)


def solve_for(relator: Word, g: str) -> Word:
    """Given a relator with a single occurrence of ``g`` (exponent +-1),
    return the word w with g = w."""
    hits = [i for i, (n, _) in enumerate(relator.letters) if n == g]
    if len(hits) != 1 or abs(relator.letters[hits[0]][1]) != 1:
        raise BadEliminationRelator(f"relator {relator} does not contain {g} exactly once")
    i = hits[0]
    sign = relator.letters[i][1]
    before = Word(relator.letters[:i], relator.alphabet)
    after = Word(relator.letters[i + 1:], relator.alphabet)
    # before g^s after = 1  =>  g^s = before^-1 after^-1
    return power(invert(before) * invert(after), sign)


def apply_move(p: Presentation, m: TietzeMove) -> Presentation:
    if isinstance(m, AddRelator):
        relator = m.relator.with_alphabet(p.alphabet)
        _check(p, m.cert, relator)
        return p.with_relation(relator, m.label)
    if isinstance(m, RemoveRelator):
        removed = p.relation(m.relation).relator
        rest = p.without_relation(m.relation)
        _check(rest, m.cert, removed)
        return rest
    if isinstance(m, AddGenerator):
        if m.name in p.alphabet:
            raise NameClash(f"generator {m.name!r} already exists")
        definition = m.definition.with_alphabet(p.alphabet)
        alphabet = p.alphabet.extended(m.name)
        relator = Word(((m.name, 1),) + invert(definition).letters, alphabet)
        return Presentation(alphabet, p.relations + (Relation(m.label or f"def-{m.name}", relator),))
    if isinstance(m, RemoveGenerator):
        if m.name not in p.alphabet:
            raise UnknownGenerator(m.name)
        via = p.relation(m.via).relator
        value = solve_for(via, m.name)
        return substitute_generator(p.without_relation(m.via), m.name, value)
    if isinstance(m, RenameGenerator):
        if m.old not in p.alphabet:
            raise UnknownGenerator(m.old)
        if m.new in p.alphabet:
            raise NameClash(f"generator {m.new!r} already exists")
        if not NAME_RE.fullmatch(m.new):
            raise ParseError(f"invalid generator name {m.new!r}")
        alphabet = p.alphabet.renamed(m.old, m.new)
        return Presentation(alphabet, [Relation(r.label, r.relator.rename(m.old, m.new, alphabet))
                                       for r in p.relations])
    raise TypeError(f"not a Tietze move: {m!r}")


# -- script files --------------------------------------------------------

@dataclass
class Script:
    source: str
    target: str
    moves: list[TietzeMove] = field(default_factory=list)
    base_dir: Path = field(default_factory=Path)
    lines: list[int] = field(default_factory=list)

    def source_path(self) -> Path:
        return self.base_dir / self.source

    def target_path(self) -> Path:
        return self.base_dir / self.target


_COMMENT_RE = re.compile(r"#(?!\d)")
_FACTOR_RE = re.compile(r"\(([^();]*(?:\([^()]*\)[^();]*)*);\s*([^;()\s]+)\s*;\s*([+-])\s*\)")


def _strip_comment(line: str) -> tuple[str, str]:
    m = _COMMENT_RE.search(line)
    if m is None:
        return line, ""
    return line[:m.start()], line[m.end():].strip()


def parse_certificate(text: str) -> Certificate:
    text = text.strip()
    factors = []
    pos = 0
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _FACTOR_RE.match(text, pos)
        if not m:
            raise ParseError(f"malformed certificate factor near {text[pos:pos + 30]!r}")
        conj = parse_word(m.group(1))
        ref: RelRef = m.group(2)
        if ref.startswith("#"):
            ref = int(ref[1:])
        factors.append(Factor(conj, ref, 1 if m.group(3) == "+" else -1))
        pos = m.end()
    return Certificate(tuple(factors))


def _ref(text: str) -> RelRef:
    text = text.strip()
    if text.startswith("#"):
        try:
            return int(text[1:])
        except ValueError:
            raise ParseError(f"bad relation index {text!r}") from None
    if not LABEL_RE.fullmatch(text):
        raise ParseError(f"bad relation reference {text!r}")
    return text


def _split_by(body: str) -> tuple[str, Certificate]:
    head, sep, tail = body.partition(" by ")
    if not sep:
        if body.rstrip().endswith(" by") or body.strip() == "by":
            return body.rstrip()[:-2], Certificate()
        return body, Certificate()
    return head, parse_certificate(tail)


def parse_script(text: str, source: str | None = None, base_dir: Path | None = None) -> Script:
    # continuation lines (leading whitespace) extend the previous statement;
    # comment-only lines become the note of the next statement
    statements: list[tuple[int, str, str]] = []
    pending: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, comment = _strip_comment(raw)
        if not body.strip():
            if comment:
                pending.append(comment)
            continue
        if raw[:1].isspace() and statements:
            n, prev, note = statements[-1]
            statements[-1] = (n, prev + " " + body.strip(), note)
        else:
            notes = pending + ([comment] if comment else [])
            statements.append((lineno, body.strip(), "; ".join(notes)))
            pending = []

    src = tgt = None
    moves: list[TietzeMove] = []
    lines: list[int] = []
    for lineno, stmt, note in statements:
        try:
            kw, _, rest = stmt.partition(" ")
            rest = rest.strip()
            if kw == "source":
                src = rest
            elif kw == "target":
                tgt = rest
            elif kw == "addrel":
                head, cert = _split_by(rest)
                label, colon, expr = head.partition(":")
                if not colon:
                    raise ParseError("addrel needs '<label>: <expr>'")
                label = label.strip() or None
                if label is not None and not LABEL_RE.fullmatch(label):
                    raise ParseError(f"bad label {label!r}")
                rel = relation_from_text(expr, None, label)
                moves.append(AddRelator(label, rel.relator, cert, note))
                lines.append(lineno)
            elif kw == "delrel":
                head, cert = _split_by(rest)
                moves.append(RemoveRelator(_ref(head), cert, note))
                lines.append(lineno)
            elif kw == "addgen":
                name, sep, expr = rest.partition(":=")
                if not sep:
                    raise ParseError("addgen needs '<name> := <expr>'")
                moves.append(AddGenerator(name.strip(), parse_word(expr), None, note))
                lines.append(lineno)
            elif kw == "delgen":
                name, sep, via = rest.partition(" via ")
                if not sep:
                    raise ParseError("delgen needs '<name> via <relation>'")
                moves.append(RemoveGenerator(name.strip(), _ref(via), note))
                lines.append(lineno)
            elif kw == "rename":
                old, sep, new = rest.partition("->")
                if not sep:
                    raise ParseError("rename needs '<old> -> <new>'")
                moves.append(RenameGenerator(old.strip(), new.strip(), note))
                lines.append(lineno)
            else:
                raise ParseError(f"unknown statement {kw!r}")
        except ParseError as exc:
            raise ParseError(exc.message, position=exc.position, line=lineno, source=source) from None
    if src is None or tgt is None:
        raise ParseError("script needs 'source' and 'target' headers", source=source)
    return Script(src, tgt, moves, base_dir or Path("."), lines)


def load_script(path: str | Path) -> Script:
    path = Path(path)
    return parse_script(path.read_text(encoding="utf-8"), source=str(path), base_dir=path.parent)


def render_move(m: TietzeMove) -> str:
    if isinstance(m, AddRelator):
        head = f"addrel {m.label or ''}: {m.relator}"
        return _with_cert(head, m.cert)
    if isinstance(m, RemoveRelator):
        ref = f"#{m.relation}" if isinstance(m.relation, int) else m.relation
        return _with_cert(f"delrel {ref}", m.cert)
    if isinstance(m, AddGenerator):
        return f"addgen {m.name} := {m.definition}"
    if isinstance(m, RemoveGenerator):
        ref = f"#{m.via}" if isinstance(m.via, int) else m.via
        return f"delgen {m.name} via {ref}"
    return f"rename {m.old} -> {m.new}"


def _with_cert(head: str, cert: Certificate) -> str:
    if not cert.factors:
        return head + " by"
    lines = [head + " by"]
    for f in cert.factors:
        lines.append("    " + str(f))
    return "\n".join(lines)


def render_script(s: Script, comments: Sequence[str] | None = None) -> str:
    out = [f"source {s.source}", f"target {s.target}", ""]
    for i, m in enumerate(s.moves):
        note = comments[i] if comments else getattr(m, "note", "")
        if note:
            out.append(f"# {note}")
        out.append(render_move(m))
    return "\n".join(out) + "\n"


# -- replay --------------------------------------------------------------

@dataclass
class MoveStatus:
    index: int
    description: str
    ok: bool
    message: str = ""
    line: int | None = None


@dataclass
class ReplayReport:
    statuses: list[MoveStatus]
    final: Presentation | None
    target: Presentation | None
    equals_target: bool
    failed_index: int | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.failed_index is None and self.error is None and self.equals_target

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "moves": len(self.statuses),
            "verified": sum(1 for s in self.statuses if s.ok),
            "failed_index": self.failed_index,
            "error": self.error,
            "equals_target": self.equals_target,
            "final_generators": list(self.final.generators) if self.final else None,
            "final_relations": len(self.final.relations) if self.final else None,
        }


def replay(source: Presentation, moves: Sequence[TietzeMove], target: Presentation | None = None,
           on_step: Callable[[int, Presentation], None] | None = None,
           lines: Sequence[int] | None = None) -> ReplayReport:
    p = source
    statuses: list[MoveStatus] = []
    for i, m in enumerate(moves):
        line = lines[i] if lines else None
        try:
            p = apply_move(p, m)
        except HbgError as exc:
            statuses.append(MoveStatus(i, m.describe(), False, str(exc), line))
            return ReplayReport(statuses, p, target, False, failed_index=i, error=str(exc))
        statuses.append(MoveStatus(i, m.describe(), True, line=line))
        if on_step is not None:
            on_step(i, p)
    equal = equal_canonical(p, target) if target is not None else False
    return ReplayReport(statuses, p, target, equal)


def replay_script(s: Script, on_step: Callable[[int, Presentation], None] | None = None) -> ReplayReport:
    source = load_presentation(s.source_path())
    target = load_presentation(s.target_path())
    return replay(source, s.moves, target, on_step=on_step, lines=s.lines)
