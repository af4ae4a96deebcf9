"""Delta diagrams: combinatorial link diagrams whose regions have 3-5 sides."""

from .core import (
    BraidWord,
    Diagram,
    DiagramError,
    Face,
    ParseError,
    braid_closure,
    classify,
    emit_pd,
    euler_defect,
    faces,
    pad_even,
    parse_braid_word,
    parse_pd,
    random_braid_word,
    split_counts,
)
from .coloring import ColoringReport, count_colorings, determinant
from .moves import (
    MoveError,
    MoveScript,
    R1Add,
    R2Push,
    R3Slide,
    apply_r1_add,
    apply_r2_push,
    apply_r3_slide,
    apply_script,
    fingerprint,
)
from .deltaize import KinkifyResult, crossing_budget, diagram_budget, hopf_delta, kinkify
from .invariants import FeatureReport, charges, discharge, feature_report, happy_triangle

__version__ = "0.1.0"

__all__ = [
    "BraidWord", "Diagram", "DiagramError", "Face", "ParseError",
    "braid_closure", "classify", "emit_pd", "euler_defect", "faces",
    "pad_even", "parse_braid_word", "parse_pd", "random_braid_word",
    "split_counts",
    "ColoringReport", "count_colorings", "determinant",
    "MoveError", "MoveScript", "R1Add", "R2Push", "R3Slide",
    "apply_r1_add", "apply_r2_push", "apply_r3_slide", "apply_script",
    "fingerprint",
    "KinkifyResult", "crossing_budget", "diagram_budget", "hopf_delta",
    "kinkify",
    "FeatureReport", "charges", "discharge", "feature_report",
    "happy_triangle",
]
