"""Tables of marks, section posets and the double Burnside algebra of small groups."""

from marksmith.groups import (
    BoundExceeded,
    FiniteGroup,
    GroupError,
    NotASubgroupError,
    Perm,
    ProductGroup,
    direct_product,
)
from marksmith.catalogue import parse_group

__all__ = [
    "BoundExceeded",
    "FiniteGroup",
    "GroupError",
    "NotASubgroupError",
    "Perm",
    "ProductGroup",
    "direct_product",
    "parse_group",
]
__version__ = "0.1.0"
