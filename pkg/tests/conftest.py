import pytest

from infdihedral.fixtures import NAMES, load_fixture
from infdihedral.links import wirtinger
from infdihedral.presentations import parse_presentation

MODEL_GROUPS = {
    "Z": "< x | >",
    "F2": "< x, y | >",
    "F3": "< x, y, z | >",
    "ZxZ": "< x, y | x y x' y' >",
    "D_inf": "< a, b | a^2, b^2 >",
    "trefoil_group": "< x, y | x y x = y x y >",
    "Z4": "< x | x^4 >",
    "S3": "< a, b | a^2, b^2, (a b)^3 >",
    "Q8": "< i, j | i^4, i^2 = j^2, j i j' = i' >",
    "D_inf_x_Z2": "< a, b, c | a^2, b^2, c^2, a c = c a, b c = c b >",
    "Z2_free_Z": "< a, t | a^2 >",
    "BS12": "< a, t | t a t' = a^2 >",
    "klein_bottle": "< a, b | a b a' = b' >",
}


@pytest.fixture(scope="session")
def diagrams():
    return {name: load_fixture(name) for name in NAMES}


@pytest.fixture(scope="session")
def wirtingers(diagrams):
    return {name: wirtinger(D) for name, D in diagrams.items()}


def corpus_presentations():
    out = {k: parse_presentation(v) for k, v in MODEL_GROUPS.items()}
    for name in NAMES:
        out[f"wirtinger:{name}"] = wirtinger(load_fixture(name)).presentation
    return out


ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
