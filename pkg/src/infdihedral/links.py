"""Link diagrams from PD codes, Wirtinger presentations and cover analysis.

PD convention
-------------
``X(a,b,c,d)`` lists the four edge labels around a crossing counterclockwise,
starting from the incoming under-edge ``a``; the under-strand runs
``a -> c``.  The over-strand runs either ``d -> b`` or ``b -> d``.  Its
direction is found by tracing each component from one of its under-passes.
A component that never passes under anything is oriented so that, from its
smallest label, the next edge is the next larger label when possible.

A crossing is positive (right-handed) when the over-strand leaves through
``b``, i.e. runs ``d -> b``, and negative when it runs ``b -> d``.
``O(k)`` adds ``k`` crossingless unknotted components.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Sequence

from .dihedral import Verdict, admits_pair_dual_to, decide
from .intlinalg import IntMatrix, smith_normal_form
from .presentations import (
    CapExceeded,
    Mod2Character,
    Presentation,
    Word,
    abelianization_matrix,
    b1,
    default_cap,
    evaluate_character,
)
from .schreier import b1_of_subgroup, reidemeister_schreier, rewrite


class PDError(ValueError):
    pass


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]
    free_loops: int = 0

    def __post_init__(self):
        counts: dict[int, int] = {}
        for x in self.crossings:
            if len(x) != 4:
                raise PDError(f"crossing {x} does not have four labels")
            for lab in x:
                if lab < 1:
                    raise PDError(f"arc label {lab} is not positive")
                counts[lab] = counts.get(lab, 0) + 1
        bad = sorted(lab for lab, c in counts.items() if c != 2)
        if bad:
            raise PDError(f"arc labels {bad} do not appear exactly twice")
        if counts and sorted(counts) != list(range(1, len(counts) + 1)):
            raise PDError("arc labels are not the contiguous range 1..N")
        if self.free_loops < 0:
            raise PDError("negative free loop count")
        if not self.crossings and not self.free_loops:
            raise PDError("empty diagram")

    @property
    def n_edges(self) -> int:
        return 2 * len(self.crossings)

    def render(self) -> str:
        parts = [f"X({a},{b},{c},{d})" for a, b, c, d in self.crossings]
        if self.free_loops:
            parts.append(f"O({self.free_loops})")
        return " ".join(parts)


_PD_TOKEN = re.compile(r"([XO])\s*[\(\[]([^\)\]]*)[\)\]]")


def parse_pd(text: str) -> PDCode:
    """Parse ``X(a,b,c,d)`` tuples and an optional ``O(k)`` token."""
    body = text.strip()
    m = re.fullmatch(r"PD\s*[\[\(](.*)[\]\)]", body, re.S)
    if m:
        body = m.group(1)
    crossings = []
    loops = 0
    pos = 0
    for m in _PD_TOKEN.finditer(body):
        gap = body[pos:m.start()]
        if gap.strip(" \t\r\n,"):
            raise PDError(f"unexpected text {gap.strip()!r} at offset {pos}")
        pos = m.end()
        fields = [f.strip() for f in m.group(2).split(",")]
        try:
            nums = [int(f) for f in fields]
        except ValueError:
            raise PDError(f"malformed tuple {m.group(0)!r}") from None
        if m.group(1) == "X":
            if len(nums) != 4:
                raise PDError(f"malformed tuple {m.group(0)!r}: need four labels")
            crossings.append(tuple(nums))
        else:
            if len(nums) != 1:
                raise PDError(f"malformed token {m.group(0)!r}")
            loops += nums[0]
    if body[pos:].strip(" \t\r\n,"):
        raise PDError(f"unexpected text {body[pos:].strip()!r} at offset {pos}")
    return PDCode(tuple(crossings), loops)


@dataclass(frozen=True)
class CrossingInfo:
    under_in: int
    under_out: int
    over_in: int
    over_out: int
    sign: int
    under_component: int
    over_component: int


@dataclass(frozen=True)
class LinkDiagram:
    pd: PDCode
    components: tuple[tuple[int, ...], ...]  # edge labels in orientation order
    signs: tuple[int, ...]
    crossing_info: tuple[CrossingInfo, ...]

    @property
    def n_components(self) -> int:
        return len(self.components) + self.pd.free_loops

    def component_of(self, label: int) -> int:
        for i, comp in enumerate(self.components):
            if label in comp:
                return i
        raise KeyError(label)


def _slots(pd: PDCode) -> dict[int, list[tuple[int, int]]]:
    where: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(pd.crossings):
        for s, lab in enumerate(x):
            where.setdefault(lab, []).append((ci, s))
    return where


def _trace(pd, where, start_label, head):
    """Follow a component from ``start_label`` whose head slot is ``head``.

    Returns the edge sequence and the head slot of every edge.
    """
    seq, heads = [], {}
    label, h = start_label, head
    while label not in heads:
        seq.append(label)
        heads[label] = h
        ci, s = h
        nxt_slot = (ci, (s + 2) % 4)
        label = pd.crossings[ci][nxt_slot[1]]
        occ = where[label]
        # the next edge leaves through nxt_slot; its head is the other slot
        if occ[0] == nxt_slot:
            h = occ[1]
        elif occ[1] == nxt_slot:
            h = occ[0]
        else:
            raise PDError("inconsistent orientation trace")
    if label != start_label:
        raise PDError("inconsistent orientation trace")
    return seq, heads


def build_diagram(pd: PDCode) -> LinkDiagram:
    where = _slots(pd)
    remaining = set(where)
    components = []
    heads: dict[int, tuple[int, int]] = {}
    while remaining:
        comp = _component_labels(pd, min(remaining))
        start = None
        for lab in sorted(comp):
            for ci, s in where[lab]:
                if s == 0:
                    start = (lab, (ci, s))
                    break
            if start:
                break
        if start is None:
            lab = min(comp)
            options = []
            for h in where[lab]:
                seq, hd = _trace(pd, where, lab, h)
                options.append((seq, hd))
            succ = [o for o in options if len(o[0]) > 1 and o[0][1] == lab + 1]
            seq, hd = (succ or options)[0]
        else:
            seq, hd = _trace(pd, where, *start)
            lo = seq.index(min(seq))
            seq = seq[lo:] + seq[:lo]
        if set(seq) != comp:
            raise PDError("inconsistent orientation trace")
        components.append(tuple(seq))
        heads.update(hd)
        remaining -= comp
    components.sort(key=min)
    comp_of = {lab: i for i, comp in enumerate(components) for lab in comp}

    signs, info = [], []
    for ci, (a, b, c, d) in enumerate(pd.crossings):
        if heads[a] != (ci, 0) or heads[c] == (ci, 2):
            raise PDError(f"crossing {ci + 1}: under-strand does not run a -> c")
        if heads[d] == (ci, 3) and heads[b] != (ci, 1):
            sign, o_in, o_out = 1, d, b
        elif heads[b] == (ci, 1) and heads[d] != (ci, 3):
            sign, o_in, o_out = -1, b, d
        else:
            raise PDError(f"crossing {ci + 1}: inconsistent over-strand orientation")
        signs.append(sign)
        info.append(CrossingInfo(a, c, o_in, o_out, sign, comp_of[a], comp_of[b]))

    D = LinkDiagram(pd, tuple(components), tuple(signs), tuple(info))
    lk2 = _signed_counts(D)
    for i, j in itertools.combinations(range(len(components)), 2):
        if lk2[i][j] % 2:
            raise PDError("odd signed crossing count between two components")
    return D


def _component_labels(pd: PDCode, label: int) -> set[int]:
    # edges joined through a<->c and b<->d continuations
    adj: dict[int, set[int]] = {}
    for a, b, c, d in pd.crossings:
        adj.setdefault(a, set()).add(c)
        adj.setdefault(c, set()).add(a)
        adj.setdefault(b, set()).add(d)
        adj.setdefault(d, set()).add(b)
    seen, stack = {label}, [label]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _signed_counts(D: LinkDiagram) -> list[list[int]]:
    n = D.n_components
    out = [[0] * n for _ in range(n)]
    for c in D.crossing_info:
        i, j = c.under_component, c.over_component
        if i != j:
            out[i][j] += c.sign
            out[j][i] += c.sign
    return out


def linking_matrix(D: LinkDiagram) -> IntMatrix:
    n = D.n_components
    counts = _signed_counts(D)
    if n == 0:
        return IntMatrix.zeros(0, 0)
    return IntMatrix.from_rows([[x // 2 for x in row] for row in counts], n)


@dataclass(frozen=True)
class Wirtinger:
    presentation: Presentation
    meridians: tuple[int, ...]  # one generator index per component
    arc_of_edge: dict = field(compare=False, repr=False)
    longitudes: tuple[Word, ...] = field(compare=False, repr=False, default=())


def wirtinger(D: LinkDiagram) -> Wirtinger:
    """One generator per over-arc, one conjugation relator per crossing."""
    pd = D.pd
    parent = {lab: lab for comp in D.components for lab in comp}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in D.crossing_info:
        ra, rb = find(c.over_in), find(c.over_out)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(x) for x in parent}, key=lambda r: min(l for l in parent if find(l) == r))
    gen_of_root = {r: i for i, r in enumerate(roots)}
    arc_of_edge = {lab: gen_of_root[find(lab)] for lab in parent}
    names = [f"x{min(l for l in parent if find(l) == r)}" for r in roots]
    names += [f"o{k + 1}" for k in range(pd.free_loops)]

    rels = []
    for c in D.crossing_info:
        o = Word.gen(arc_of_edge[c.over_in], c.sign)
        u = Word.gen(arc_of_edge[c.under_in])
        v = Word.gen(arc_of_edge[c.under_out])
        rels.append(v * (o * u * o.inverse()).inverse())
    P = Presentation(tuple(names), tuple(rels))

    meridians = [arc_of_edge[comp[0]] for comp in D.components]
    meridians += [len(roots) + k for k in range(pd.free_loops)]

    by_under_in = {c.under_in: c for c in D.crossing_info}
    longitudes = []
    for i, comp in enumerate(D.components):
        w = Word()
        writhe = 0
        for lab in comp:
            c = by_under_in.get(lab)
            if c is None:
                continue
            w = Word.gen(arc_of_edge[c.over_in], c.sign) * w
            if c.over_component == i:
                writhe += c.sign
        longitudes.append(w * Word.gen(meridians[i], -writhe))
    longitudes += [Word() for _ in range(pd.free_loops)]
    return Wirtinger(P, tuple(meridians), arc_of_edge, tuple(longitudes))


def meridian_character(D: LinkDiagram, subset, W: Wirtinger | None = None) -> Mod2Character:
    """Character sending the meridians of the chosen components (0-based) to 1."""
    subset = set(subset)
    if not subset:
        raise ValueError("component subset must be non-empty")
    if not subset <= set(range(D.n_components)):
        raise ValueError(f"component indices must lie in 0..{D.n_components - 1}")
    W = W or wirtinger(D)
    P = W.presentation
    values = [0] * P.n_generators
    for lab, g in W.arc_of_edge.items():
        if D.component_of(lab) in subset:
            values[g] = 1
    n_arcs = P.n_generators - D.pd.free_loops
    for k in range(D.pd.free_loops):
        if len(D.components) + k in subset:
            values[n_arcs + k] = 1
    chi = Mod2Character(tuple(values))
    for r in P.relators:
        if evaluate_character(chi, r):
            raise AssertionError("meridian character fails relator parity")
    return chi


@dataclass(frozen=True)
class LinkCountVerdict:
    answer: bool
    reason: str

    def to_json(self):
        return {"verdict": "YES" if self.answer else "NO", "reason": self.reason}


def corollary_1_2(D: LinkDiagram) -> LinkCountVerdict:
    """Component count and linking-number parity criterion for link exteriors."""
    n = D.n_components
    if n >= 3:
        return LinkCountVerdict(True, "three components or more")
    if n == 2:
        lk = linking_matrix(D)[0, 1]
        if lk % 2 == 0:
            return LinkCountVerdict(True, f"two components with even linking number ({lk})")
        return LinkCountVerdict(False, f"two components with odd linking number ({lk})")
    return LinkCountVerdict(False, "knot: exterior is a Z/2-homology solid torus")


@dataclass(frozen=True)
class BranchedCover:
    b1: int
    invariant_factors: tuple[int, ...]
    order: int | None  # None when infinite
    n_components: int

    @property
    def alexander_at_minus_one(self) -> int:
        """|Delta_L(-1,...,-1)| for the multivariable polynomial.

        Equals the order for knots and half the order for links with two or
        more components (Torres); 0 when H_1 is infinite.
        """
        if self.order is None:
            return 0
        return self.order if self.n_components == 1 else self.order // 2

    def to_json(self):
        return {
            "b1": self.b1,
            "invariant_factors": list(self.invariant_factors),
            "order": self.order if self.order is not None else "infinite",
            "alexander_at_minus_one": self.alexander_at_minus_one,
        }


def branched_double_cover_h1(D: LinkDiagram, W: Wirtinger | None = None) -> BranchedCover:
    """H_1 of the double cover of S^3 branched over the link.

    Fills the all-meridians double cover of the exterior by killing one
    lifted meridian square per component.
    """
    W = W or wirtinger(D)
    P = W.presentation
    chi = meridian_character(D, range(D.n_components), W)
    S = reidemeister_schreier(P, chi)
    K = S.K_presentation
    extra = tuple(rewrite(S, Word.gen(m, 2)) for m in W.meridians)
    filled = Presentation(K.generator_names, K.relators + extra)
    snf = smith_normal_form(abelianization_matrix(filled))
    betti = filled.n_generators - snf.rank
    torsion = snf.torsion
    order = None
    if betti == 0:
        order = 1
        for d in torsion:
            order *= d
    return BranchedCover(betti, torsion, order, D.n_components)


@dataclass(frozen=True)
class ClassReport:
    components: tuple[int, ...]  # 0-based
    character: Mod2Character
    b1_cover: int
    realizable: bool
    lifted_tori: int
    lifted_tori_from_linking: int

    def to_json(self):
        return {
            "components": [c + 1 for c in self.components],
            "character": list(self.character.values),
            "b1_cover": self.b1_cover,
            "realizable": self.realizable,
            "boundary_tori": self.lifted_tori,
        }


@dataclass(frozen=True)
class LinkAnalysis:
    n_components: int
    b1_exterior: int
    linking_matrix: IntMatrix
    corollary: LinkCountVerdict
    group_verdict: Verdict
    per_class: tuple[ClassReport, ...]
    branched_cover: BranchedCover
    consistency_flags: dict
    presentation: Presentation = field(repr=False)

    @property
    def answer(self) -> bool:
        return self.corollary.answer

    def class_report(self, components) -> ClassReport:
        key = tuple(sorted(components))
        for c in self.per_class:
            if c.components == key:
                return c
        raise KeyError(components)

    def to_json(self) -> dict:
        all_ones = self.per_class[-1].realizable if self.per_class else False
        return {
            "verdict": "YES" if self.answer else "NO",
            "reason": self.corollary.reason,
            "n_components": self.n_components,
            "b1_exterior": self.b1_exterior,
            "linking_matrix": self.linking_matrix.to_rows(),
            "group": self.group_verdict.to_json(self.presentation),
            "classes": [c.to_json() for c in self.per_class],
            "branched_cover": self.branched_cover.to_json(),
            "spanning_pair_exists": all_ones,
            "disconnected_spanning_surface": all_ones,
            "consistency": dict(self.consistency_flags),
        }


def _lifted_tori(W: Wirtinger, chi: Mod2Character) -> int:
    # a boundary torus lifts to two tori iff chi kills its whole peripheral group
    total = 0
    for m, lon in zip(W.meridians, W.longitudes):
        killed = chi.values[m] == 0 and evaluate_character(chi, lon) == 0
        total += 2 if killed else 1
    return total


def _lifted_tori_from_linking(lk: IntMatrix, bits: Sequence[int]) -> int:
    total = 0
    for i, a in enumerate(bits):
        lon = sum(lk[i, j] * bits[j] for j in range(len(bits)) if j != i) % 2
        total += 2 if (a == 0 and lon == 0) else 1
    return total


def analyze(D: LinkDiagram, cap: int | None = None) -> LinkAnalysis:
    if cap is None:
        cap = default_cap()
    n = D.n_components
    if n > cap:
        raise CapExceeded(f"{2 ** n - 1} classes exceed the cap of dimension {cap}")
    W = wirtinger(D)
    P = W.presentation
    b1_ext = b1(P)
    lk = linking_matrix(D)
    cor = corollary_1_2(D)
    verdict = decide(P, cap)

    reports = []
    for bits in sorted(itertools.product((0, 1), repeat=n)):
        if not any(bits):
            continue
        comps = tuple(i for i, b in enumerate(bits) if b)
        chi = meridian_character(D, comps, W)
        b1_cover = b1_of_subgroup(reidemeister_schreier(P, chi))
        reports.append(ClassReport(
            comps, chi, b1_cover, b1_cover > b1_ext,
            _lifted_tori(W, chi), _lifted_tori_from_linking(lk, bits),
        ))

    bc = branched_double_cover_h1(D, W)
    all_ones = reports[-1]
    flags = {
        "wirtinger_b1_is_component_count": b1_ext == n,
        "corollary_matches_group": cor.answer == verdict.answer,
        "group_matches_classes": verdict.answer == any(r.realizable for r in reports),
        "all_ones_iff_branched_b1": all_ones.realizable == (bc.b1 > 0),
        "branched_b1_identity": bc.b1 == all_ones.b1_cover - b1_ext,
        "lifted_tori_agree": all(r.lifted_tori == r.lifted_tori_from_linking for r in reports),
        "boundary_growth_implies_realizable": all(
            r.realizable for r in reports if r.lifted_tori > n
        ),
    }
    return LinkAnalysis(n, b1_ext, lk, cor, verdict, tuple(reports), bc, flags, P)


def class_verdict(D: LinkDiagram, components) -> Verdict:
    W = wirtinger(D)
    return admits_pair_dual_to(W.presentation, meridian_character(D, components, W))
