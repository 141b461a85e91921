"""Bundled PD codes for small links."""

from importlib import resources

from .links import LinkDiagram, build_diagram, parse_pd

NAMES = (
    "unknot",
    "trefoil",
    "figure_eight",
    "hopf",
    "whitehead",
    "borromean",
    "unlink2",
    "unlink3",
)


def fixture_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"no fixture named {name!r}; choose from {', '.join(NAMES)}")
    return resources.files("infdihedral.data").joinpath(f"{name}.pd").read_text().strip()


def load_fixture(name: str) -> LinkDiagram:
    return build_diagram(parse_pd(fixture_text(name)))
