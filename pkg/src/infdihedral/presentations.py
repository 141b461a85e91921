"""Free-group words, finite presentations and their mod-2 characters."""

from __future__ import annotations

import itertools
import json
import os
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .intlinalg import IntMatrix, mod2_nullspace, rank_and_betti

DEFAULT_CAP = 20


class PresentationError(ValueError):
    """Bad presentation text or data."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class CapExceeded(RuntimeError):
    pass


def default_cap() -> int:
    """Character-space dimension cap; ``DIHEDRAL_CAP`` overrides the default."""
    raw = os.environ.get("DIHEDRAL_CAP")
    if raw is None:
        return DEFAULT_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError("DIHEDRAL_CAP must be at least 1")
    return cap


Letter = tuple[int, int]


@dataclass(frozen=True)
class Word:
    """A word in the free group on indexed generators.

    Each letter is ``(index, sign)`` with sign ``+1`` or ``-1``.  Words built
    through the helpers below are always freely reduced.
    """

    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, letters: Iterable[Sequence[int]]) -> "Word":
        return cls(tuple((int(i), int(s)) for i, s in letters)).normalize()

    @classmethod
    def gen(cls, i: int, power: int = 1) -> "Word":
        s = 1 if power > 0 else -1
        return cls(((i, s),) * abs(power))

    def normalize(self) -> "Word":
        out: list[Letter] = []
        for i, s in self.letters:
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {s}")
            if out and out[-1][0] == i and out[-1][1] == -s:
                out.pop()
            else:
                out.append((i, s))
        return Word(tuple(out))

    def inverse(self) -> "Word":
        return Word(tuple((i, -s) for i, s in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters).normalize()

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n)).normalize()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def exponent_sums(self, n: int) -> list[int]:
        v = [0] * n
        for i, s in self.letters:
            v[i] += s
        return v

    def render(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "1"
        parts = []
        for i, group in itertools.groupby(self.letters):
            k = len(list(group)) * i[1]
            name = names[i[0]]
            parts.append(name if k == 1 else f"{name}^{k}")
        return " ".join(parts)


def normalize(w: Word) -> Word:
    return w.normalize()


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        names = self.generator_names
        if len(set(names)) != len(names):
            raise PresentationError("generator names must be distinct")
        if any(not n for n in names):
            raise PresentationError("generator names must be non-empty")
        n = len(names)
        reduced = []
        for r in self.relators:
            for i, _ in r.letters:
                if not 0 <= i < n:
                    raise PresentationError(f"relator letter index {i} out of range")
            reduced.append(r.normalize())
        object.__setattr__(self, "relators", tuple(reduced))

    @property
    def n_generators(self) -> int:
        return len(self.generator_names)

    def index(self, name: str) -> int:
        try:
            return self.generator_names.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def render(self) -> str:
        rels = ", ".join(r.render(self.generator_names) for r in self.relators)
        return f"< {', '.join(self.generator_names)} | {rels} >"

    def to_json(self) -> dict:
        return {
            "generators": list(self.generator_names),
            "relators": [[[i, s] for i, s in r.letters] for r in self.relators],
        }


def abelianization_matrix(P: Presentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    n = P.n_generators
    return IntMatrix.from_rows([r.exponent_sums(n) for r in P.relators], n)


def b1(P: Presentation) -> int:
    return rank_and_betti(abelianization_matrix(P), P.n_generators)[1]


@dataclass(frozen=True)
class Mod2Character:
    """A homomorphism to Z/2, given by its values on the generators."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) & 1 for v in self.values))

    def is_zero(self) -> bool:
        return not any(self.values)

    def bits(self) -> str:
        return ",".join(map(str, self.values))

    def __call__(self, w: Word) -> int:
        return evaluate_character(self, w)


def evaluate_character(chi: Mod2Character, w: Word) -> int:
    return sum(chi.values[i] for i, _ in w.letters) & 1


def check_character(P: Presentation, chi: Mod2Character) -> None:
    if len(chi.values) != P.n_generators:
        raise PresentationError(
            f"character has {len(chi.values)} values for {P.n_generators} generators"
        )
    for r in P.relators:
        if evaluate_character(chi, r):
            raise PresentationError(
                f"not a character: relator {r.render(P.generator_names)} has odd weight"
            )


def character_basis(P: Presentation) -> list[tuple[int, ...]]:
    A = abelianization_matrix(P)
    return mod2_nullspace(A.to_rows() if A.rows else [], cols=P.n_generators)


def enumerate_characters(P: Presentation, cap: int | None = None) -> list[Mod2Character]:
    """All nonzero homomorphisms to Z/2, sorted lexicographically.

    ``cap`` bounds the dimension of the character space; beyond it the
    enumeration (2**dim - 1 entries) is refused.
    """
    if cap is None:
        cap = default_cap()
    basis = character_basis(P)
    if len(basis) > cap:
        raise CapExceeded(
            f"character space has dimension {len(basis)}, above the cap of {cap}"
        )
    found = set()
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        if not any(coeffs):
            continue
        v = [0] * P.n_generators
        for c, b in zip(coeffs, basis):
            if c:
                v = [x ^ y for x, y in zip(v, b)]
        found.add(tuple(v))
    return [Mod2Character(v) for v in sorted(found)]


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_.@]*)|(?P<int>[+-]?\d+)|(?P<sym>[<>|,=^'()*]))"
)


def _tokenize(text: str):
    pos = 0
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(p):
        line = max(i for i, s in enumerate(line_starts) if s <= p)
        return line + 1, p - line_starts[line] + 1

    tokens = []
    while True:
        m = re.compile(r"\s*").match(text, pos)
        pos = m.end()
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"unexpected character {text[pos]!r}", *where(pos))
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), where(start)))
        pos = m.end()
    tokens.append(("end", "", where(len(text))))
    return tokens


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.names: list[str] = []

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise PresentationError(f"expected {want!r}, got {got!r}", *tok[2])
        self.i += 1
        return tok

    def parse(self) -> Presentation:
        self.take("sym", "<")
        if self.peek()[1] == "|":
            raise PresentationError("empty generator list", *self.peek()[2])
        while True:
            _, name, loc = self.take("name")
            if name in self.names:
                raise PresentationError(f"duplicate generator {name!r}", *loc)
            self.names.append(name)
            if self.peek()[1] == ",":
                self.take()
                continue
            break
        self.take("sym", "|")
        relators = []
        if self.peek()[1] != ">":
            while True:
                relators.append(self.relator())
                if self.peek()[1] == ",":
                    self.take()
                    continue
                break
        self.take("sym", ">")
        self.take("end")
        return Presentation(tuple(self.names), tuple(relators))

    def relator(self) -> Word:
        lhs = self.word()
        if self.peek()[1] == "=":
            self.take()
            rhs = self.word()
            return lhs * rhs.inverse()
        return lhs

    def word(self) -> Word:
        w = Word()
        start = self.peek()
        while True:
            kind, val, _ = self.peek()
            if kind == "name" or val == "(":
                w = w * self.factor()
            elif val == "*":
                self.take()
            elif kind == "int" and val == "1":
                self.take()
            else:
                break
        if self.peek() is start:
            raise PresentationError("empty relator", *start[2])
        return w

    def factor(self) -> Word:
        kind, val, loc = self.take()
        if kind == "name":
            if val not in self.names:
                raise PresentationError(f"unknown generator {val!r}", *loc)
            base = Word.gen(self.names.index(val))
        else:
            base = self.word()
            self.take("sym", ")")
        while True:
            nxt = self.peek()[1]
            if nxt == "'":
                self.take()
                base = base.inverse()
            elif nxt == "^":
                self.take()
                _, k, kloc = self.take("int")
                if int(k) == 0:
                    raise PresentationError("exponent must be nonzero", *kloc)
                base = base ** int(k)
            else:
                return base


def parse_presentation(text: str) -> Presentation:
    """Parse ``< x, y | x y x = y x y >`` or the JSON form.

    Relators are products of ``name``, ``name^k`` and ``name'``; an equation
    ``u = v`` is stored as ``u v^-1``.  Parenthesised subwords are accepted
    too.
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise PresentationError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from None
        return presentation_from_json(data)
    return _Parser(text).parse()


def presentation_from_json(data: dict) -> Presentation:
    try:
        gens = data["generators"]
        rels = data.get("relators", [])
    except (KeyError, TypeError, AttributeError):
        raise PresentationError("JSON presentation needs a 'generators' list") from None
    if not gens:
        raise PresentationError("empty generator list")
    words = []
    for r in rels:
        try:
            words.append(Word.of(r))
        except (TypeError, ValueError) as e:
            raise PresentationError(f"bad relator {r!r}: {e}") from None
    return Presentation(tuple(str(g) for g in gens), tuple(words))


def free_group(n: int, prefix: str = "x") -> Presentation:
    return Presentation(tuple(f"{prefix}{i + 1}" for i in range(n)))
