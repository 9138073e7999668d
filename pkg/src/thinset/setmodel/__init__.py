from .catalog import CATALOG, build
from .exprs import (EMPTY, OMEGA, BlockFamily, Certificate, Difference, Explicit, Generator,
                    Intersection, ResidueClass, SetExpr, Union)
from .parser import parse_set_expr
from .prefix import (GapSequence, Prefix, certificate_blocks, count_upto, enumerate_upto,
                     family_blocks, gap_sequence, member, window_count)

__all__ = [
    "CATALOG", "build", "EMPTY", "OMEGA", "BlockFamily", "Certificate", "Difference",
    "Explicit", "Generator", "Intersection", "ResidueClass", "SetExpr", "Union",
    "parse_set_expr", "GapSequence", "Prefix", "certificate_blocks", "count_upto",
    "enumerate_upto", "family_blocks", "gap_sequence", "member", "window_count",
]
