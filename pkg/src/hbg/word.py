"""Free-group words over a named generator alphabet.

Words are immutable and always freely reduced.  Letters are stored
run-length encoded as ``(generator name, nonzero exponent)`` pairs so that
powers such as ``a1^4`` stay compact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import AlphabetMismatch, DuplicateGenerator, ParseError, UnknownGenerator

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*")


@dataclass(frozen=True)
class Generator:
    name: str
    id: int


class Alphabet:
    """An ordered list of generator names; order is declaration order."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        index: dict[str, int] = {}
        for i, name in enumerate(names):
            if not NAME_RE.fullmatch(name):
                raise ParseError(f"invalid generator name {name!r}")
            if name in index:
                raise DuplicateGenerator(f"generator {name!r} declared twice")
            index[name] = i
        self.names = names
        self._index = index

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({' '.join(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def generators(self) -> list[Generator]:
        return [Generator(n, i) for i, n in enumerate(self.names)]

    def without(self, name: str) -> Alphabet:
        self.index(name)
        return Alphabet(n for n in self.names if n != name)

    def renamed(self, old: str, new: str) -> Alphabet:
        self.index(old)
        return Alphabet(new if n == old else n for n in self.names)

    def extended(self, name: str) -> Alphabet:
        return Alphabet(self.names + (name,))


def _reduce(pairs: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[list] = []
    for name, exp in pairs:
        if exp == 0:
            continue
        if out and out[-1][0] == name:
            out[-1][1] += exp
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([name, exp])
    return tuple((n, e) for n, e in out)


class Word:
    """A freely reduced word in the free group on an alphabet."""

    __slots__ = ("letters", "alphabet", "_hash")

    def __init__(self, letters: Iterable[tuple[str, int]] = (), alphabet: Alphabet | None = None):
        letters = _reduce(letters)
        if alphabet is not None:
            for name, _ in letters:
                if name not in alphabet:
                    raise UnknownGenerator(name)
        self.letters = letters
        self.alphabet = alphabet
        self._hash = None

    @classmethod
    def identity(cls, alphabet: Alphabet | None = None) -> Word:
        return cls((), alphabet)

    @classmethod
    def generator(cls, name: str, alphabet: Alphabet | None = None, exponent: int = 1) -> Word:
        return cls(((name, exponent),), alphabet)

    @classmethod
    def from_units(cls, units: Iterable[tuple[str, int]], alphabet: Alphabet | None = None) -> Word:
        return cls(units, alphabet)

    # -- basic protocol -------------------------------------------------

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.letters)

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __pow__(self, n: int) -> Word:
        return power(self, n)

    def is_identity(self) -> bool:
        return not self.letters

    def units(self) -> list[tuple[str, int]]:
        """Expand to single letters ``(name, +1 | -1)``."""
        out = []
        for name, exp in self.letters:
            step = 1 if exp > 0 else -1
            out.extend([(name, step)] * abs(exp))
        return out

    def generators(self) -> set[str]:
        return {n for n, _ in self.letters}

    def exponent_sum(self, name: str) -> int:
        return sum(e for n, e in self.letters if n == name)

    def occurrences(self, name: str) -> int:
        return sum(abs(e) for n, e in self.letters if n == name)

    def inverse(self) -> Word:
        return invert(self)

    def with_alphabet(self, alphabet: Alphabet) -> Word:
        return Word(self.letters, alphabet)

    def substitute(self, images: Mapping[str, Word]) -> Word:
        """Replace each generator with its image (generators absent from
        ``images`` are kept)."""
        out: list[tuple[str, int]] = []
        for name, exp in self.letters:
            image = images.get(name)
            if image is None:
                out.append((name, exp))
                continue
            piece = image.letters if exp > 0 else invert(image).letters
            for _ in range(abs(exp)):
                out.extend(piece)
        return Word(out, self.alphabet)

    def rename(self, old: str, new: str, alphabet: Alphabet | None = None) -> Word:
        return Word(((new if n == old else n, e) for n, e in self.letters), alphabet)


def _check_alphabets(u: Word, v: Word) -> Alphabet | None:
    if u.alphabet is not None and v.alphabet is not None and u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"{u.alphabet!r} vs {v.alphabet!r}")
    return u.alphabet if u.alphabet is not None else v.alphabet


def multiply(u: Word, v: Word) -> Word:
    alphabet = _check_alphabets(u, v)
    return Word(u.letters + v.letters, alphabet)


def product(words: Sequence[Word], alphabet: Alphabet | None = None) -> Word:
    letters: list[tuple[str, int]] = []
    for w in words:
        if alphabet is None:
            alphabet = w.alphabet
        elif w.alphabet is not None and w.alphabet != alphabet:
            raise AlphabetMismatch(f"{alphabet!r} vs {w.alphabet!r}")
        letters.extend(w.letters)
    return Word(letters, alphabet)


def invert(w: Word) -> Word:
    return Word(((n, -e) for n, e in reversed(w.letters)), w.alphabet)


def power(w: Word, n: int) -> Word:
    base = w if n >= 0 else invert(w)
    return Word(base.letters * abs(n), w.alphabet)


def conjugate(h: Word, g: Word) -> Word:
    """``h * g``, i.e. h g h^-1."""
    alphabet = _check_alphabets(h, g)
    return Word(h.letters + g.letters + invert(h).letters, alphabet)


def commutator(x: Word, y: Word) -> Word:
    """``[x, y]`` = x y x^-1 y^-1."""
    alphabet = _check_alphabets(x, y)
    return Word(x.letters + y.letters + invert(x).letters + invert(y).letters, alphabet)


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split ``w`` as conjugator * core with ``core`` cyclically reduced."""
    units = w.units()
    i, j = 0, len(units) - 1
    while i < j and units[i][0] == units[j][0] and units[i][1] == -units[j][1]:
        i += 1
        j -= 1
    core = Word(units[i:j + 1], w.alphabet)
    conj = Word(units[:i], w.alphabet)
    return core, conj


def rotations(w: Word) -> list[tuple[Word, Word]]:
    """All distinct cyclic rotations of a cyclically reduced word.

    Returns ``(rotation, p)`` pairs with ``rotation = p^-1 w p``.
    """
    units = w.units()
    seen: set[Word] = set()
    out = []
    for k in range(max(len(units), 1)):
        rot = Word(units[k:] + units[:k], w.alphabet)
        if rot in seen:
            continue
        seen.add(rot)
        out.append((rot, Word(units[:k], w.alphabet)))
    return out


# -- parsing -------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, alphabet: Alphabet | None):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self._skip()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def error(self, message: str) -> ParseError:
        return ParseError(message, position=self.pos)

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek()
            raise self.error(f"expected {ch!r}, found {found!r}" if found else f"expected {ch!r} at end of input")
        self.pos += 1

    def parse(self) -> Word:
        w = self.conj_expr()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()!r}")
        return w

    def conj_expr(self) -> Word:
        w = self.expr()
        while self.peek() == "*":
            self.pos += 1
            rhs = self.expr()
            w = conjugate(w, rhs)
        return w

    def expr(self) -> Word:
        parts = [self.term()]
        while True:
            ch = self.peek()
            if ch is None or ch in ")],*":
                break
            parts.append(self.term())
        return product(parts, self.alphabet)

    def term(self) -> Word:
        w = self.atom()
        while self.peek() == "^":
            self.pos += 1
            self._skip()
            m = re.compile(r"[+-]?\d+").match(self.text, self.pos)
            if not m:
                raise self.error("malformed exponent")
            self.pos = m.end()
            w = power(w, int(m.group()))
        return w

    def atom(self) -> Word:
        ch = self.peek()
        if ch is None:
            raise self.error("unexpected end of input")
        if ch == "(":
            self.pos += 1
            w = self.conj_expr()
            self.expect(")")
            return w
        if ch == "[":
            self.pos += 1
            x = self.conj_expr()
            self.expect(",")
            y = self.conj_expr()
            self.expect("]")
            return commutator(x, y)
        if ch == "1" and not (self.pos + 1 < len(self.text) and self.text[self.pos + 1].isdigit()):
            self.pos += 1
            return Word.identity(self.alphabet)
        m = NAME_RE.match(self.text, self.pos)
        if not m:
            raise self.error(f"unexpected {ch!r}")
        name = m.group()
        if self.alphabet is not None and name not in self.alphabet:
            raise UnknownGenerator(name)
        self.pos = m.end()
        return Word.generator(name, self.alphabet)


def parse_word(text: str, alphabet: Alphabet | Sequence[str] | None = None) -> Word:
    """Parse a word expression.

    Juxtaposition is product, ``x^n`` a power, ``[x, y]`` the commutator
    and ``h * g`` the conjugate h g h^-1 (left associative, looser than
    juxtaposition).  ``1`` denotes the identity; ``#`` starts a comment.
    """
    if alphabet is not None and not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    text = text.split("#", 1)[0]
    return _Parser(text, alphabet).parse()


def conjugate_witness(word: Word, relator: Word) -> tuple[Word, int] | None:
    """Find ``(c, s)`` with word = c relator^s c^-1 as free-group elements."""
    core_w, c_w = cyclic_reduce(word)
    core_r, c_r = cyclic_reduce(relator)
    if len(core_w) != len(core_r) or not core_r:
        return None
    units_w = core_w.units()
    for sign in (1, -1):
        t = core_r if sign == 1 else invert(core_r)
        units_t = t.units()
        n = len(units_t)
        for k in range(n):
            # rotation q p of t = p q with len(p) = k
            if units_t[k:] + units_t[:k] == units_w:
                p = Word(units_t[:k], word.alphabet)
                return product([c_w, invert(p), invert(c_r)], word.alphabet), sign
    return None
