"""Maximum induced matching in permutation and trapezoid graphs."""

from .chain import ChainDP, InducedMatching, MatchLists, build_mim
from .dsu import MinNameDisjointSet, cal_phi
from .errors import *  # noqa: F401,F403
from .models import (
    EdgeList,
    Match,
    PermutationModel,
    Trapezoid,
    TrapezoidModel,
    edges_from_model,
    is_match,
    make_permutation,
    match_less,
    normalize_trapezoids,
    point_model,
)
from .permutation import (
    build_all_matches,
    calculate_f_and_link_linear,
    calculate_f_and_link_quadratic,
    mim_permutation,
)
from .trapezoid import build_all_matches_trap, calculate_f_and_link_trap, mim_trapezoid

__version__ = "0.1.0"
