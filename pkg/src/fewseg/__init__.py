"""fewseg: graph layout engine for segment-sparse drawings.

Tree layouts (tidier, quad, fewsegments), force layouts (forcedir,
fdfewseg with collinear path constraints), stimulus generators, drawing
metrics, and SVG/JSON emitters, exposed as a library, a FastAPI service
and a CLI.
"""

from .complexity import (
    count_crossings,
    count_segments,
    is_planar_drawing,
    odd_degree_bound,
)
from .decomposition import heavy_path_decomposition
from .fewsegments import FewSegParams, layout_fewsegments
from .force import ForceParams, layout_fdfewseg, layout_force_directed
from .generators import (
    GraphSpec,
    TreeSpec,
    prufer_decode,
    random_sparse_graph,
    random_tree,
)
from .metrics import batch_report, evaluate
from .model import Drawing, Graph, RootedTree
from .paths import select_paths, validate_path_set
from .quad import QuadParams, layout_quad
from .tidier import layout_tidier

__version__ = "0.1.0"

__all__ = [
    "Drawing",
    "FewSegParams",
    "ForceParams",
    "Graph",
    "GraphSpec",
    "QuadParams",
    "RootedTree",
    "TreeSpec",
    "batch_report",
    "count_crossings",
    "count_segments",
    "evaluate",
    "heavy_path_decomposition",
    "is_planar_drawing",
    "layout_fdfewseg",
    "layout_fewsegments",
    "layout_force_directed",
    "layout_quad",
    "layout_tidier",
    "odd_degree_bound",
    "prufer_decode",
    "random_sparse_graph",
    "random_tree",
    "select_paths",
    "validate_path_set",
    "__version__",
]
