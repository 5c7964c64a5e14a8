"""Recognition, certificates, clique-width expressions and coloring for
(2P3, C4, C6)-free graphs."""

from .certificates import Certificate, certificate_problems, verify_certificate
from .cliquewidth import evaluate, expr_for, parse, to_text, width
from .coloring import (
    chromatic_exact,
    chromatic_structured,
    k_colorable_cwd,
    peel_simplicial,
)
from .families import add_universal, random_member, thicken
from .graph import Graph, load_graph
from .named import base_library, pentagon
from .patterns import find_induced, forbidden_profile
from .recognizer import HasSimplicial, InClassNoSimplicial, NotInClass, classify

__all__ = [
    "Certificate", "certificate_problems", "verify_certificate",
    "evaluate", "expr_for", "parse", "to_text", "width",
    "chromatic_exact", "chromatic_structured", "k_colorable_cwd", "peel_simplicial",
    "add_universal", "random_member", "thicken",
    "Graph", "load_graph", "base_library", "pentagon",
    "find_induced", "forbidden_profile",
    "HasSimplicial", "InClassNoSimplicial", "NotInClass", "classify",
]
