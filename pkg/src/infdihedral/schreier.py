"""Reidemeister-Schreier rewriting for index-2 subgroups.

The transversal is ``{1, g}`` where ``g`` is the first generator with
character value 1.  Coset bit 0 is the trivial coset.  The Schreier
generator ``x@u`` stands for ``t_u x t_v^-1`` where ``t_v`` is the
representative of the coset of ``t_u x``; ``g@0`` equals the identity and is
dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentations import (
    Mod2Character,
    Presentation,
    PresentationError,
    Word,
    b1,
    evaluate_character,
)


class NotInSubgroup(ValueError):
    pass


@dataclass(frozen=True)
class IndexTwoSubgroup:
    parent: Presentation
    chi: Mod2Character
    g_index: int
    # (parent generator index, coset bit) for each Schreier generator
    schreier_generators: tuple[tuple[int, int], ...]
    K_presentation: Presentation
    _lookup: dict = field(repr=False, compare=False, hash=False, default=None)

    def index_of(self, x: int, coset: int) -> int | None:
        """Schreier generator index for ``x@coset``; None for the dropped one."""
        return self._lookup.get((x, coset))

    def schreier_word(self, k: int) -> Word:
        """The Schreier generator ``k`` written as a parent word."""
        x, u = self.schreier_generators[k]
        g = Word.gen(self.g_index)
        t_u = g if u else Word()
        v = u ^ self.chi.values[x]
        t_v = g if v else Word()
        return t_u * Word.gen(x) * t_v.inverse()

    @property
    def g(self) -> Word:
        return Word.gen(self.g_index)


def reidemeister_schreier(P: Presentation, chi: Mod2Character) -> IndexTwoSubgroup:
    if len(chi.values) != P.n_generators:
        raise PresentationError("character length does not match generator count")
    if chi.is_zero():
        raise PresentationError("not an index-2 subgroup: character is identically zero")
    g = chi.values.index(1)
    gens = []
    lookup = {}
    for u in (0, 1):
        for x in range(P.n_generators):
            if (x, u) == (g, 0):
                continue
            lookup[(x, u)] = len(gens)
            gens.append((x, u))
    names = tuple(f"{P.generator_names[x]}@{u}" for x, u in gens)
    # placeholder K presentation so rewriting can run before relators exist
    S = IndexTwoSubgroup(P, chi, g, tuple(gens), Presentation(names), lookup)
    gw = Word.gen(g)
    rels = []
    for r in P.relators:
        rels.append(rewrite(S, r))
        rels.append(rewrite(S, gw * r * gw.inverse()))
    return IndexTwoSubgroup(P, chi, g, tuple(gens), Presentation(names, tuple(rels)), lookup)


def rewrite(S: IndexTwoSubgroup, w: Word) -> Word:
    """Rewrite a parent word lying in the subgroup into Schreier generators."""
    chi = S.chi.values
    coset = 0
    out = []
    for x, s in w.letters:
        if s > 0:
            k = S._lookup.get((x, coset))
            if k is not None:
                out.append((k, 1))
            coset ^= chi[x]
        else:
            coset ^= chi[x]
            k = S._lookup.get((x, coset))
            if k is not None:
                out.append((k, -1))
    if coset:
        raise NotInSubgroup("element not in subgroup")
    return Word(tuple(out)).normalize()


def b1_of_subgroup(S: IndexTwoSubgroup) -> int:
    return b1(S.K_presentation)


def in_subgroup(S: IndexTwoSubgroup, w: Word) -> bool:
    return evaluate_character(S.chi, w) == 0
