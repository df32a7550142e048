"""Static weight tables steering document planning: semantic interest of
concepts, start-node criteria weights, component sorting thresholds,
component tagging rules, and contextual-omission prefixes.

All values are explicit configuration, loadable from JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ParseError


@dataclass(frozen=True)
class TagRule:
    tag: str
    instance_name: str | None = None
    concept: str | None = None

    def matches(self, names: set[str], concepts: set[str]) -> bool:
        if self.instance_name is not None:
            return self.instance_name in names
        if self.concept is not None:
            return self.concept in concepts
        return False


DEFAULT_SEMANTIC_WEIGHTS = {"port": 10.0, "mouillage": 8.0, "baie": 5.0, "plage": 2.0}
DEFAULT_TAG_RULES = (TagRule("Mouillages", instance_name="mouillage"),)
DEFAULT_OMISSION_PREFIXES = {"Mouillages": ("Le mouillage est autorisé",)}


@dataclass
class WeightConfig:
    semantic_weight: dict[str, float] = field(
        default_factory=lambda: dict(DEFAULT_SEMANTIC_WEIGHTS))
    relation_weight: dict[str, float] = field(default_factory=dict)
    neighbor_inheritance_factor: float = 0.5
    title_match_weight: float = 10.0
    lattice_weight: float = 5.0
    size_difference_ratio: float = 3.0
    local_maximum_credit: float = 0.5
    tag_rules: tuple[TagRule, ...] = DEFAULT_TAG_RULES
    omission_prefixes: dict[str, tuple[str, ...]] = field(
        default_factory=lambda: dict(DEFAULT_OMISSION_PREFIXES))

    def __post_init__(self):
        for table in (self.semantic_weight, self.relation_weight):
            for key, w in table.items():
                if not (w >= 0 and w == w and w != float("inf")):
                    raise ValueError(f"weight for {key!r} must be finite and >= 0")
        if not 0 < self.neighbor_inheritance_factor < 1:
            raise ValueError("neighbor_inheritance_factor must lie in (0, 1)")
        if self.size_difference_ratio <= 1:
            raise ValueError("size_difference_ratio must exceed 1")

    def concept_weight(self, concept_id: str) -> float:
        return self.semantic_weight.get(concept_id, 0.0)

    def to_dict(self) -> dict:
        return {
            "semantic_weight": dict(sorted(self.semantic_weight.items())),
            "relation_weight": dict(sorted(self.relation_weight.items())),
            "neighbor_inheritance_factor": self.neighbor_inheritance_factor,
            "title_match_weight": self.title_match_weight,
            "lattice_weight": self.lattice_weight,
            "size_difference_ratio": self.size_difference_ratio,
            "local_maximum_credit": self.local_maximum_credit,
            "tag_rules": [{"tag": r.tag, "instance_name": r.instance_name, "concept": r.concept}
                          for r in self.tag_rules],
            "omission_prefixes": {k: list(v) for k, v in sorted(self.omission_prefixes.items())},
        }


def save_weights(config: WeightConfig) -> bytes:
    return json.dumps(config.to_dict(), ensure_ascii=False, sort_keys=True, indent=2).encode("utf-8")


def load_weights(data: bytes) -> WeightConfig:
    try:
        doc = json.loads(data.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid weights file: {exc.msg}", exc.lineno, exc.colno) from exc
    base = WeightConfig()
    return WeightConfig(
        semantic_weight={k: float(v) for k, v in doc.get("semantic_weight", base.semantic_weight).items()},
        relation_weight={k: float(v) for k, v in doc.get("relation_weight", {}).items()},
        neighbor_inheritance_factor=float(doc.get("neighbor_inheritance_factor",
                                                  base.neighbor_inheritance_factor)),
        title_match_weight=float(doc.get("title_match_weight", base.title_match_weight)),
        lattice_weight=float(doc.get("lattice_weight", base.lattice_weight)),
        size_difference_ratio=float(doc.get("size_difference_ratio", base.size_difference_ratio)),
        local_maximum_credit=float(doc.get("local_maximum_credit", base.local_maximum_credit)),
        tag_rules=tuple(TagRule(r["tag"], r.get("instance_name"), r.get("concept"))
                        for r in doc.get("tag_rules", [])) or DEFAULT_TAG_RULES,
        omission_prefixes={k: tuple(v) for k, v in doc.get("omission_prefixes",
                                                           base.omission_prefixes).items()},
    )
