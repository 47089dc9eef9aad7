"""Exact radius-r flip-width of small graphs."""

from .bijoin import DecompTree, build_decomposition, check_bijoin, is_completely_decomposable
from .census import CensusRecord, CensusReport, run_census
from .errors import (
    BudgetExceeded,
    ConsistencyError,
    FlipwidthError,
    Graph6Error,
    InvalidFlipSpec,
    InvalidTriple,
    NotDecomposable,
    OrderCapError,
    WidthViolation,
)
from .flips import FlipSpec, apply_flip, enumerate_kflips, flip_pair, parse_flipspec
from .game import GameVerdict, TableStrategy, flip_width, solve, verify_strategy
from .graph import INF, Graph, complement, emit_graph6, enumerate_graphs, parse_graph6
from .obstructions import ObstructionKind, hertz_check, is_obstruction_free
from .strategy import eliminate_cross_edges, scripted_radius1, synthesize_strategy

__version__ = "0.1.0"
