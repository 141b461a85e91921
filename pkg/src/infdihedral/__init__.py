"""Surjections onto the infinite dihedral group and disjoint surfaces in link exteriors."""

from .dihedral import (
    DInfElement,
    DihedralSurjection,
    Verdict,
    admits_pair_dual_to,
    construct_surjection,
    decide,
    dinf_multiply,
    find_psi,
    tau_action,
    verify_surjection,
)
from .fixtures import NAMES, fixture_text, load_fixture
from .intlinalg import IntMatrix, content_and_primitive, mod2_nullspace, rank_and_betti, smith_normal_form
from .links import (
    analyze,
    branched_double_cover_h1,
    build_diagram,
    corollary_1_2,
    linking_matrix,
    meridian_character,
    parse_pd,
    wirtinger,
)
from .presentations import (
    Mod2Character,
    Presentation,
    Word,
    abelianization_matrix,
    b1,
    enumerate_characters,
    evaluate_character,
    parse_presentation,
)
from .schreier import b1_of_subgroup, reidemeister_schreier, rewrite

__version__ = "0.1.0"
