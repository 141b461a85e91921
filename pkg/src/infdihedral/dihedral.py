"""Surjections onto the infinite dihedral group Z/2 * Z/2.

An index-2 subgroup K = ker(chi) gives a surjection onto Z/2 * Z/2 with
kernel-of-projection K exactly when the covering involution acts on
H_1(K)/torsion with a nontrivial -1 eigenspace.  A primitive integral
functional psi in that eigenspace defines the map

    k   -> (ab)^psi(k)
    g k -> a (ab)^psi(k)

for g a fixed element outside K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .intlinalg import (
    IntMatrix,
    SmithDecomposition,
    content_and_primitive,
    smith_normal_form,
    unimodular_inverse,
)
from .presentations import (
    Mod2Character,
    Presentation,
    Word,
    abelianization_matrix,
    b1,
    check_character,
    enumerate_characters,
)
from .schreier import IndexTwoSubgroup, b1_of_subgroup, reidemeister_schreier, rewrite


class InvariantError(AssertionError):
    """An internal consistency check failed; this is a bug, not bad input."""


@dataclass(frozen=True)
class DInfElement:
    """``a^flip (ab)^shift`` in Z/2 * Z/2 = <a, b | a^2, b^2>."""

    flip: int = 0
    shift: int = 0

    def __post_init__(self):
        if self.flip not in (0, 1):
            raise ValueError("flip must be 0 or 1")

    def __mul__(self, other: "DInfElement") -> "DInfElement":
        return dinf_multiply(self, other)

    def inverse(self) -> "DInfElement":
        # reflections are involutions
        return self if self.flip else DInfElement(0, -self.shift)

    def is_identity(self) -> bool:
        return self.flip == 0 and self.shift == 0

    def to_json(self) -> dict:
        return {"flip": self.flip, "shift": self.shift}

    def __str__(self):
        if self.is_identity():
            return "1"
        t = "" if self.shift == 0 else f"(ab)^{self.shift}"
        return ("a" if self.flip else "") + t


IDENTITY = DInfElement(0, 0)
A_GEN = DInfElement(1, 0)
B_GEN = DInfElement(1, 1)
AB = DInfElement(0, 1)


def dinf_multiply(e1: DInfElement, e2: DInfElement) -> DInfElement:
    n1 = -e1.shift if e2.flip else e1.shift
    return DInfElement(e1.flip ^ e2.flip, n1 + e2.shift)


def evaluate_word(w: Word, images: Sequence[DInfElement]) -> DInfElement:
    out = IDENTITY
    for i, s in w.letters:
        out = out * (images[i] if s > 0 else images[i].inverse())
    return out


@dataclass(frozen=True)
class TauAction:
    """Action of conjugation by ``g`` on H_1(K) in Smith coordinates.

    ``A`` acts on column vectors of free-part coordinates; a functional psi
    (row vector) is sent to ``psi @ A``.
    """

    subgroup: IndexTwoSubgroup
    free_rank: int
    torsion: tuple[int, ...]
    A: IntMatrix
    basis_data: SmithDecomposition = field(repr=False)

    @property
    def free_projection(self) -> IntMatrix:
        U = self.basis_data.U
        r = self.basis_data.rank
        return IntMatrix.from_rows([U.row(i) for i in range(r, U.rows)], U.cols)

    def free_coordinates(self, k: Word) -> tuple[int, ...]:
        """Free-part coordinates of a parent word lying in K."""
        S = self.subgroup
        m = S.K_presentation.n_generators
        x = rewrite(S, k).exponent_sums(m)
        U = self.basis_data.U
        r = self.basis_data.rank
        return tuple(sum(a * b for a, b in zip(U.row(i), x)) for i in range(r, U.rows))


def _conjugation_matrix(S: IndexTwoSubgroup) -> IntMatrix:
    """Column k is the abelianised rewrite of g^-1 s_k g."""
    m = S.K_presentation.n_generators
    g = S.g
    cols = []
    for k in range(m):
        w = g.inverse() * S.schreier_word(k) * g
        cols.append(rewrite(S, w).exponent_sums(m))
    return IntMatrix.from_rows(cols, m).T if m else IntMatrix.zeros(0, 0)


def tau_action(S: IndexTwoSubgroup) -> TauAction:
    K = S.K_presentation
    m = K.n_generators
    R = abelianization_matrix(K)
    snf = smith_normal_form(R.T)  # H_1(K) = coker(R^T)
    rank = snf.rank
    free = list(range(rank, m))
    T = _conjugation_matrix(S)
    C = snf.U @ T @ unimodular_inverse(snf.U)
    for i in free:
        for j in range(rank):
            if C[i, j]:
                raise InvariantError("conjugation leaks torsion into the free part")
    A = IntMatrix.from_rows([[C[i, j] for j in free] for i in free], len(free))
    if A @ A != IntMatrix.identity(len(free)):
        raise InvariantError("conjugation action is not an involution on H_1")
    return TauAction(S, len(free), snf.torsion, A, snf)


def find_psi(T: TauAction, b1_parent: int | None = None) -> tuple[int, ...] | None:
    """Primitive integral functional in the -1 eigenspace, or None.

    Uses ``e - e A`` for the first dual basis vector ``e`` not fixed by the
    action.  When ``b1_parent`` is given, the eigenspace dimension count is
    checked against it.
    """
    A = T.A
    n = T.free_rank
    psi = None
    for j in range(n):
        row = A.row(j)
        v = tuple(int(i == j) - row[i] for i in range(n))
        if any(v):
            psi = content_and_primitive(v)[1]
            break
    if b1_parent is not None and (psi is not None) != (n > b1_parent):
        raise InvariantError(
            f"-1 eigenspace {'non' if psi else ''}zero but b1(K)={n}, b1(G)={b1_parent}"
        )
    if psi is not None:
        image = IntMatrix.from_rows([psi]) @ A
        if image.row(0) != tuple(-x for x in psi):
            raise InvariantError("psi is not in the -1 eigenspace")
    return psi


def psi_value(T: TauAction, psi: Sequence[int], k: Word) -> int:
    return sum(a * b for a, b in zip(psi, T.free_coordinates(k)))


@dataclass(frozen=True)
class DihedralSurjection:
    chi: Mod2Character
    g_index: int
    psi: tuple[int, ...]
    images: tuple[DInfElement, ...]
    verified: bool
    tau: TauAction | None = field(default=None, repr=False, compare=False)

    def to_json(self, P: Presentation) -> dict:
        names = P.generator_names
        return {
            "character": list(self.chi.values),
            "transversal": names[self.g_index],
            "psi": list(self.psi),
            "images": [
                {"generator": names[i], **e.to_json()} for i, e in enumerate(self.images)
            ],
        }


def images_from_json(P: Presentation, data: dict) -> list[DInfElement]:
    by_name = {d["generator"]: DInfElement(int(d["flip"]), int(d["shift"])) for d in data["images"]}
    return [by_name[n] for n in P.generator_names]


def generates(images: Sequence[DInfElement]) -> bool:
    """Whether the elements generate all of Z/2 * Z/2."""
    refl = [e.shift for e in images if e.flip]
    if not refl:
        return False
    g = 0
    for e in images:
        if not e.flip:
            g = gcd(g, e.shift)
    for r in refl:
        g = gcd(g, r - refl[0])
    return g == 1


def verify_surjection(P: Presentation, images: Sequence[DInfElement]) -> bool:
    if len(images) != P.n_generators:
        raise ValueError(f"expected {P.n_generators} images, got {len(images)}")
    if any(not evaluate_word(r, images).is_identity() for r in P.relators):
        return False
    return generates(images)


def construct_surjection(P: Presentation, chi: Mod2Character) -> DihedralSurjection | None:
    S = reidemeister_schreier(P, chi)
    T = tau_action(S)
    psi = find_psi(T, b1(P))
    if psi is None:
        return None
    g = S.g
    if psi_value(T, psi, g * g) != 0:
        raise InvariantError("psi does not vanish on g^2")
    images = []
    for x in range(P.n_generators):
        xw = Word.gen(x)
        if chi.values[x]:
            images.append(DInfElement(1, psi_value(T, psi, g.inverse() * xw)))
        else:
            images.append(DInfElement(0, psi_value(T, psi, xw)))
    for x, e in enumerate(images):
        if e.flip != chi.values[x]:
            raise InvariantError("image flip disagrees with the character")
    if not verify_surjection(P, images):
        raise InvariantError("constructed map failed verification")
    return DihedralSurjection(chi, S.g_index, psi, tuple(images), True, T)


@dataclass(frozen=True)
class CharacterEvidence:
    chi: Mod2Character
    b1_subgroup: int
    b1_group: int

    @property
    def realizable(self) -> bool:
        return self.b1_subgroup > self.b1_group

    def to_json(self) -> dict:
        return {
            "character": list(self.chi.values),
            "b1_subgroup": self.b1_subgroup,
            "b1_group": self.b1_group,
        }


@dataclass(frozen=True)
class Verdict:
    answer: bool
    surjection: DihedralSurjection | None
    table: tuple[CharacterEvidence, ...]
    b1_group: int

    @property
    def label(self) -> str:
        return "YES" if self.answer else "NO"

    def to_json(self, P: Presentation) -> dict:
        return {
            "verdict": self.label,
            "b1_group": self.b1_group,
            "surjection": self.surjection.to_json(P) if self.surjection else None,
            "evidence": [e.to_json() for e in self.table],
        }


def _evaluate(P: Presentation, chi: Mod2Character, b1_group: int):
    S = reidemeister_schreier(P, chi)
    ev = CharacterEvidence(chi, b1_of_subgroup(S), b1_group)
    surj = construct_surjection(P, chi)
    if (surj is not None) != ev.realizable:
        raise InvariantError("construction and Betti comparison disagree")
    return ev, surj


def decide(P: Presentation, cap: int | None = None) -> Verdict:
    """Does ``P`` surject onto Z/2 * Z/2?  First realizable character wins."""
    b1_group = b1(P)
    table = []
    for chi in enumerate_characters(P, cap):
        ev, surj = _evaluate(P, chi, b1_group)
        table.append(ev)
        if surj is not None:
            return Verdict(True, surj, tuple(table), b1_group)
    return Verdict(False, None, tuple(table), b1_group)


def admits_pair_dual_to(P: Presentation, alpha: Mod2Character) -> Verdict:
    """Surjection whose composite to Z/2 is exactly ``alpha``, if any."""
    check_character(P, alpha)
    if alpha.is_zero():
        raise ValueError("class must be nonzero")
    ev, surj = _evaluate(P, alpha, b1(P))
    return Verdict(surj is not None, surj, (ev,), ev.b1_group)
