"""Worked example around the bay of Banyuls: knowledge base, geographic
areas, document tree and sentence corpus. Used by the test suite and by
`inaut fixtures` to seed a runnable data set.

Coordinates are synthetic but keep the real SE-to-NW march of that coast,
so upper-level section barycenters trace the guiding path in document
order.
"""

from __future__ import annotations

from .doc import DocNode, DocTree, VolumeMeta
from .geometry import AreaGraph, GeoPolygon, build_area_graph
from .kb import (
    AttributeRole,
    AttributeSchema,
    ComplexRelationSchema,
    ConceptSchema,
    DefaultTextRule,
    Instance,
    InstanceAttribute,
    KnowledgeBase,
    LexicalAttrs,
    MemberRole,
    RelationInstance,
    ROLE_AGENT,
    ROLE_PATIENT,
    SimpleRelationSchema,
    ValueEntry,
    ValueType,
    VerbLexeme,
)


def _rect(x0: float, y0: float, x1: float, y1: float, id: str) -> GeoPolygon:
    return GeoPolygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)), id)


def banyuls_areas() -> dict[str, GeoPolygon]:
    """Section zones plus the feature polygons of the bay instances."""
    return {
        # hierarchical subdivision zones, centers marching SE -> NW
        "zone-2": _rect(3.05, 42.28, 3.43, 42.48, "zone-2"),
        "zone-2.2": _rect(3.03, 42.33, 3.41, 42.49, "zone-2.2"),
        "zone-2.2.1": _rect(3.17, 42.40, 3.23, 42.45, "zone-2.2.1"),
        "zone-2.2.2": _rect(3.15, 42.41, 3.21, 42.46, "zone-2.2.2"),
        "zone-2.2.3": _rect(3.13, 42.42, 3.19, 42.47, "zone-2.2.3"),
        "zone-2.2.4": _rect(3.11, 42.43, 3.17, 42.48, "zone-2.2.4"),
        "zone-2.2.5": _rect(3.09, 42.44, 3.15, 42.49, "zone-2.2.5"),
        # feature areas inside the bay section
        "area-baie": _rect(3.115, 42.435, 3.165, 42.475, "area-baie"),
        # the cape juts out: 85% of it lies inside the bay polygon
        "area-cap": _rect(3.118, 42.4665, 3.128, 42.4765, "area-cap"),
        "area-ile": _rect(3.158, 42.448, 3.163, 42.456, "area-ile"),
        "area-anse-ville": _rect(3.120, 42.458, 3.150, 42.472, "area-anse-ville"),
        "area-anse-fontaule": _rect(3.120, 42.438, 3.150, 42.452, "area-anse-fontaule"),
        "area-nd-salette": _rect(3.112, 42.455, 3.116, 42.459, "area-nd-salette"),
    }


def banyuls_area_graph() -> AreaGraph:
    return build_area_graph(banyuls_areas())


def banyuls_doc() -> DocTree:
    leaf = DocNode("2.2.4.1", "Généralités", level=4, leaf_type="Généralités")
    sections = [
        DocNode("2.2.1", "Crique de Peyrefite", level=3, geo_link="zone-2.2.1"),
        DocNode("2.2.2", "Cap l'Abeille", level=3, geo_link="zone-2.2.2"),
        DocNode("2.2.3", "Anse de Terrimbo", level=3, geo_link="zone-2.2.3"),
        DocNode("2.2.4", "Port de Banyuls-sur-Mer", level=3, geo_link="zone-2.2.4",
                children=[leaf]),
        DocNode("2.2.5", "Baie de Paulilles", level=3, geo_link="zone-2.2.5"),
    ]
    root = DocNode("0", "Instructions nautiques, de Cerbère à Port-Vendres", level=0, children=[
        DocNode("2", "De la frontière espagnole à Port-Vendres", level=1, geo_link="zone-2",
                children=[
                    DocNode("2.2", "De cap Cerbère au cap Béar", level=2, geo_link="zone-2.2",
                            children=sections),
                ]),
    ])
    meta = VolumeMeta("Instructions nautiques, de Cerbère à Port-Vendres",
                      ((3.45, 42.15), (3.05, 42.55)))
    return DocTree(root, meta)


def _participles(stem: str) -> dict[str, str]:
    return {"m.sg": stem, "f.sg": stem + "e", "m.pl": stem + "s", "f.pl": stem + "es"}


def _dual_voice(active_3s: str, active_3p: str, participle_stem: str) -> VerbLexeme:
    return VerbLexeme(active_3s=active_3s, active_3p=active_3p,
                      passive_participle=_participles(participle_stem))


def banyuls_kb() -> KnowledgeBase:
    kb = KnowledgeBase()

    for cid, parents in [
        ("lieu", ()),
        ("baie", ("lieu",)), ("anse", ("baie",)), ("cap", ("lieu",)), ("île", ("lieu",)),
        ("amer", ("lieu",)), ("côte", ("lieu",)), ("plage", ("lieu",)), ("port", ("lieu",)),
        ("rivage", ("lieu",)), ("agglomération", ("lieu",)), ("mouillage", ("lieu",)),
    ]:
        kb.concepts[cid] = ConceptSchema(cid, cid, parents)

    def inst(iid, name, concept, geo=None, gender="m", number="sg",
             policy="definite", elision=False):
        kb.instances[iid] = Instance(iid, name, (concept,), geo,
                                     LexicalAttrs(gender, number, policy, elision))

    inst("baie-de-banyuls", "baie de Banyuls", "baie", "area-baie", gender="f")
    inst("cap-d-osne", "cap d'Osne", "cap", "area-cap")
    inst("ile-grosse", "île Grosse", "île", "area-ile", gender="f", elision=True)
    inst("anse-de-la-ville", "anse de la Ville", "anse", "area-anse-ville",
         gender="f", elision=True)
    inst("anse-du-fontaule", "anse du Fontaulé", "anse", "area-anse-fontaule",
         gender="f", elision=True)
    inst("nd-salette", "Notre-Dame de la Salette", "amer", "area-nd-salette",
         gender="f", policy="none")
    inst("cote", "côte", "côte", gender="f")
    inst("plage", "plage", "plage", gender="f", policy="indefinite_as_object")
    inst("port", "port", "port")
    inst("rivage", "rivage", "rivage")
    inst("agglomeration", "agglomération", "agglomération", gender="f", elision=True)
    inst("amer", "amer", "amer", policy="indefinite_as_object")

    kb.attributes["profondeur"] = AttributeSchema(
        "profondeur", "profondeur", "port", ValueType.NUMBER)
    kb.instance_attributes = (InstanceAttribute("profondeur", "port", 4.5),)

    for vid, kwargs in [
        ("NW", {}),
        ("Est", {"elision": True}),
        ("Nord", {}),
        ("Sud", {}),
        ("WSW", {"elision": True}),
        ("remarquable", {"pos": "adj"}),
        ("partie", {"gender": "f"}),
        ("parties", {"gender": "f", "number": "pl"}),
    ]:
        kb.values[vid] = ValueEntry(vid, vid, **kwargs)

    def simple(sid, name, active_3s, active_3p, stem):
        kb.simple_relations[sid] = SimpleRelationSchema(
            sid, name, "lieu", "lieu", _dual_voice(active_3s, active_3p, stem))

    simple("borde", "borde", "borde", "bordent", "bordé")
    simple("domine", "domine", "domine", "dominent", "dominé")
    simple("abrite", "abrite", "abrite", "abritent", "abrité")
    simple("prolonge", "prolonge", "prolonge", "prolongent", "prolongé")

    kb.complex_relations["est_limite_par"] = ComplexRelationSchema(
        "est_limite_par", "est limité par",
        member_roles=(MemberRole("limitant", "lieu", prep="par"),
                      MemberRole("limité", "lieu")),
        attribute_roles=(AttributeRole("à", prep="à"),),
        lexeme=_dual_voice("limite", "limitent", "limité"),
        subject_role="limité", agent_role="limitant",
    )
    kb.complex_relations["est_divise_par"] = ComplexRelationSchema(
        "est_divise_par", "est divisé par",
        member_roles=(MemberRole("divisé", "lieu"),
                      MemberRole("diviseur_1", "lieu", prep="par"),
                      MemberRole("diviseur_2", "lieu", prep="par")),
        attribute_roles=(AttributeRole("à_1", prep="à", grouped_with="diviseur_1"),
                         AttributeRole("à_2", prep="à", grouped_with="diviseur_2")),
        lexeme=VerbLexeme(passive_participle=_participles("divisé")),
        subject_role="divisé",
        default_text=DefaultTextRule(role_prefix="diviseur"),
    )
    kb.complex_relations["est_amer"] = ComplexRelationSchema(
        "est_amer", "est",
        member_roles=(MemberRole("sujet", "lieu"),
                      MemberRole("amer", "amer"),
                      MemberRole("référence", "lieu", prep="de")),
        attribute_roles=(AttributeRole("qualité"),
                         AttributeRole("à", prep="à")),
        lexeme=VerbLexeme(active_3s="est", active_3p="sont"),
        subject_role="amer", agent_role="sujet", adjective_role="qualité",
    )
    kb.complex_relations["est_relie_a"] = ComplexRelationSchema(
        "est_relie_a", "est relié à",
        member_roles=(MemberRole("relié", "lieu"),
                      MemberRole("lieu", "lieu", prep="à")),
        lexeme=VerbLexeme(passive_participle=_participles("relié")),
        subject_role="relié",
    )

    def rel(rid, schema, members, attributes=None):
        kb.relation_instances[rid] = RelationInstance(rid, schema, members, attributes or {})

    rel("r1", "est_limite_par", {"limitant": "cap-d-osne", "limité": "baie-de-banyuls"},
        {"à": "NW"})
    rel("r2", "est_limite_par", {"limitant": "ile-grosse", "limité": "baie-de-banyuls"},
        {"à": "Est"})
    rel("r3", "est_divise_par", {"divisé": "baie-de-banyuls",
                                 "diviseur_1": "anse-de-la-ville",
                                 "diviseur_2": "anse-du-fontaule"},
        {"à_1": "Nord", "à_2": "Sud"})
    rel("r4", "borde", {ROLE_AGENT: "plage", ROLE_PATIENT: "anse-de-la-ville"})
    rel("r5", "domine", {ROLE_AGENT: "agglomeration", ROLE_PATIENT: "plage"})
    rel("r6", "abrite", {ROLE_AGENT: "anse-du-fontaule", ROLE_PATIENT: "port"})
    rel("r7", "prolonge", {ROLE_AGENT: "cap-d-osne", ROLE_PATIENT: "cote"})
    rel("r8", "est_relie_a", {"relié": "ile-grosse", "lieu": "rivage"})
    rel("r9", "est_amer", {"sujet": "nd-salette", "amer": "amer", "référence": "port"},
        {"qualité": "remarquable", "à": "WSW"})
    return kb


# Every complete sentence of the language as printed in its documentation
# examples; all must validate with zero diagnostics.
CORPUS = (
    "La [baie de Banyuls] est limitée par le [cap d'Osne] au NW.",
    "Le [cap d'Osne] limite la [baie de Banyuls] au NW.",
    "[Notre-Dame de la Salette] est un amer remarquable à l'WSW du port.",
    "L'[anse de la Ville] est bordée par une plage.",
    "La plage est dominée par l'agglomération.",
    "La [baie de Banyuls] est limitée au NW par le [cap d'Osne].",
    "La [baie de Banyuls] est limitée à l'Est par l'[île Grosse].",
)

GOLDEN_CONJUNCTION = ("La [baie de Banyuls] est limitée au NW par le [cap d'Osne] "
                      "et à l'Est par l'[île Grosse].")
GOLDEN_RELATIVE = ("L'[anse de la Ville] est bordée par une plage, "
                   "dominée par l'agglomération.")
GOLDEN_PRONOUN_PREFIX = "Elle est divisée en deux parties par"
