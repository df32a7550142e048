"""Controlled-language toolkit for maritime coast-pilot text.

Parses and validates controlled French sentences against a georeferenced
knowledge base, and generates pilot-book paragraphs from it: batch
volumes, interactive map-zone queries, and moderated collaborative
updates.
"""

from .content import content_determination, select_subgraph, tag_components
from .diagnostics import Diagnostic
from .doc import DocNode, DocTree, VolumeMeta, guiding_path, load_doc_tree, save_doc_tree
from .geometry import (
    AreaGraph,
    GeoPolygon,
    GuidingPath,
    Modifier,
    apply_modifier,
    barycenter,
    build_area_graph,
    partial_inclusion,
    polygon_area,
)
from .kb import (
    KbGraph,
    KnowledgeBase,
    RelationInstance,
    add_relation_instance,
    connected_components,
    lexicalize,
    load,
    persist,
    validate_kb,
)
from .lexicon import Lexicon
from .litinaut import (
    contextual_omission,
    gen_referring,
    merge_conjunction,
    merge_relative,
    to_litinaut,
)
from .parser import InautSentence, parse
from .pipeline import Generator
from .planning import GenerationPlan, order_relations, select_start_node, sort_components
from .realize import RealizationContext, realize_inaut
from .semantics import KbDelta, check_articles, semantify, validate_segment
from .tokenizer import Token, detokenize, tokenize
from .weights import WeightConfig, load_weights, save_weights

__version__ = "0.1.0"

__all__ = [
    "AreaGraph", "Diagnostic", "DocNode", "DocTree", "GenerationPlan", "GeoPolygon",
    "Generator", "GuidingPath", "InautSentence", "KbDelta", "KbGraph", "KnowledgeBase",
    "Lexicon", "Modifier", "RealizationContext", "RelationInstance", "Token",
    "VolumeMeta", "WeightConfig", "add_relation_instance", "apply_modifier",
    "barycenter", "build_area_graph", "check_articles", "connected_components",
    "content_determination", "contextual_omission", "detokenize", "gen_referring",
    "guiding_path", "lexicalize", "load", "load_doc_tree", "load_weights",
    "merge_conjunction", "merge_relative", "order_relations", "parse",
    "partial_inclusion", "persist", "polygon_area", "realize_inaut",
    "save_doc_tree", "save_weights", "select_start_node", "select_subgraph",
    "semantify", "sort_components", "tag_components", "to_litinaut", "tokenize",
    "validate_kb", "validate_segment",
]
