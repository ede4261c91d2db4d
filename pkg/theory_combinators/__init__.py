from theory_combinators.category import GeneralExtension, cartesian_lift, check_pullback_square
from theory_combinators.combinators import TheoryEnv, check_compatibility, flatten, load_library
from theory_combinators.context import Assignment, Context, check_assignment, check_context
from theory_combinators.parser import parse_tpc

__all__ = [
    "Assignment",
    "Context",
    "GeneralExtension",
    "TheoryEnv",
    "cartesian_lift",
    "check_assignment",
    "check_compatibility",
    "check_context",
    "check_pullback_square",
    "flatten",
    "load_library",
    "parse_tpc",
]
