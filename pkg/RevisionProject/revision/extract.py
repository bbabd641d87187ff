"""
Des opérateurs vers les préférences.

- extract_assignment : relation canonique ω1 ⪯K ω2 ssi pour toute classe Γ
  contenant les deux mondes, ω1 ⊨ K ∘ Γ ou ω2 ⊭ K ∘ Γ
- detached_pairs : mondes absents de tous les résultats K ∘ Γ
- preorder_lift : retrait des paires détachées puis extension totale, ou rangs
  tirés des préférences forcées (forced_order)
- representability : verdict à trois valeurs (représentable, non représentable, inconnu)
"""

import logging
from dataclasses import dataclass
from typing import Optional

import networkx as nx
import numpy as np

from .audit import Assignment, check_compatible, check_faithful, check_postulates
from .change import semantic_function
from .constants import NOT_REPRESENTABLE, REPRESENTABLE, UNKNOWN
from .exceptions import MinPreservationFailure, PostulateFailure, TransitivityFailure
from .kernel import ModelSet, canonical_base, enumerate_classes, models_of
from .orders import (
    WorldRelation,
    is_min_complete,
    is_preorder,
    is_transitive,
    longest_chain_ranks,
    min_set,
    order_extend,
)

logger = logging.getLogger(__name__)


# ---------- EXTRACTION ----------

def extract_relation(op, logic, k_models):
    """Relation extraite ⪯K pour la classe de K donnée par ses modèles"""
    outcomes = semantic_function(op, logic)
    size = len(logic.worlds)
    matrix = np.ones((size, size), dtype=bool)
    for gc in enumerate_classes(logic):
        result = outcomes[(int(k_models), int(gc.models))]
        inside = list(gc.models & result)
        outside = list(gc.models - result)
        if inside and outside:
            matrix[np.ix_(outside, inside)] = False
    return WorldRelation(logic, matrix)


def extract_assignment(op, logic):
    """
    Affectation canonique de l'opérateur.

    Les paires sans classe commune restent reliées dans les deux sens.
    """
    relations = {c.models: extract_relation(op, logic, c.models) for c in enumerate_classes(logic)}
    logger.info(f"[extraction] {op.name} sur {logic.name} : {len(relations)} relations")
    return Assignment(logic, relations, label=f"extracted({op.name})")


def appearing_worlds(op, logic, k_models):
    outcomes = semantic_function(op, logic)
    mask = 0
    for gc in enumerate_classes(logic):
        mask |= outcomes[(int(k_models), int(gc.models))]
    return ModelSet(mask)


def detached_pairs(op, logic, k):
    """Paires non ordonnées (i ≤ j) de mondes qu'aucun résultat K ∘ Γ ne contient"""
    absent = list(logic.universe - appearing_worlds(op, logic, models_of(logic, k)))
    return frozenset((i, j) for i in absent for j in absent if i <= j)


# ---------- GRAPHE DES PRÉFÉRENCES STRICTES FORCÉES ----------

def _normalized(cycle):
    start = cycle.index(min(cycle))
    return cycle[start:] + cycle[:start]


@dataclass(frozen=True)
class ForcedStrictGraph:
    """
    Par classe K, arête ω1 → ω2 lorsqu'une classe Γ contient les deux mondes
    avec ω1 ⊨ K ∘ Γ et ω2 ⊭ K ∘ Γ. Chaque arête porte sa première classe témoin.
    """

    logic: object
    graphs: dict

    def graph_for(self, k_models):
        return self.graphs[int(k_models)]

    def find_cycle(self, k_models):
        """
        Cycle le plus court (puis lexicographiquement minimal, commençant par
        son plus petit monde), ou None.
        """
        graph = self.graph_for(k_models)
        best = None
        for u, v in sorted(graph.edges()):
            try:
                path = nx.shortest_path(graph, v, u)
            except nx.NetworkXNoPath:
                continue
            cycle = _normalized([u] + path[:-1])
            if best is None or (len(cycle), cycle) < (len(best), best):
                best = cycle
        if best is None:
            return None
        return [
            (a, b, graph.edges[a, b]["gamma"])
            for a, b in zip(best, best[1:] + best[:1])
        ]


def _forced_graph(logic, classes, outcomes, k_models):
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(logic.worlds)))
    for gc in classes:
        result = outcomes[(int(k_models), int(gc.models))]
        outside = list(gc.models - result)
        for u in gc.models & result:
            for v in outside:
                if not graph.has_edge(u, v):
                    graph.add_edge(u, v, gamma=gc.models)
    return graph


def forced_strict_graph(op, logic):
    outcomes = semantic_function(op, logic)
    classes = enumerate_classes(logic)
    graphs = {int(kc.models): _forced_graph(logic, classes, outcomes, kc.models) for kc in classes}
    return ForcedStrictGraph(logic, graphs)


# ---------- RELÈVEMENT EN PRÉORDRE ----------

def forced_order(op, logic, k_models):
    """
    Préordre total lu directement sur les résultats K ∘ Γ, ou None.

    Les mondes d'un même résultat partagent un rang ; ceux de Γ hors du
    résultat sont strictement au-dessus (arêtes du graphe des préférences
    forcées). None si ces contraintes se contredisent.
    """
    outcomes = semantic_function(op, logic)
    classes = enumerate_classes(logic)
    forced = _forced_graph(logic, classes, outcomes, k_models)

    ties = nx.Graph()
    ties.add_nodes_from(forced.nodes)
    for gc in classes:
        members = list(outcomes[(int(k_models), int(gc.models))])
        ties.add_edges_from(zip(members, members[1:]))
    block = {}
    for component in nx.connected_components(ties):
        leader = min(component)
        block.update((world, leader) for world in component)

    condensed = nx.DiGraph()
    condensed.add_nodes_from(set(block.values()))
    for u, v in forced.edges():
        if block[u] == block[v]:
            return None
        condensed.add_edge(block[u], block[v])
    if not nx.is_directed_acyclic_graph(condensed):
        return None
    ranks = longest_chain_ranks(condensed)
    return WorldRelation.from_ranks(logic, [ranks[block[w]] for w in range(len(logic.worlds))])


def _min_change(extracted, lifted, logic):
    """Première classe dont les minimaux changent, en MinPreservationFailure, ou None"""
    for gc in enumerate_classes(logic):
        expected = min_set(extracted, gc.models)
        obtained = min_set(lifted, gc.models)
        if expected != obtained:
            return MinPreservationFailure(
                logic.describe_base(gc.canonical_base),
                logic.describe_models(expected),
                logic.describe_models(obtained),
            )
    return None


def preorder_lift(op, logic, k):
    """
    Préordre total ⪯2 pour K : relation extraite privée des paires détachées
    (diagonale conservée), étendue par rangs, puis vérifiée classe par
    classe : min(Γ, ⪯2) = min(Γ, ⪯K extraite).

    Si la relation réduite n'est pas transitive, ou si son extension change
    des minimaux, les rangs sont pris sur le graphe des préférences forcées
    (forced_order).

    Raises:
        TransitivityFailure: relation réduite non transitive et préférences
            forcées contradictoires
        MinPreservationFailure: première classe dont les minimaux changent
    """
    k_models = models_of(logic, k)
    extracted = extract_relation(op, logic, k_models)
    absent = list(logic.universe - appearing_worlds(op, logic, k_models))

    matrix = extracted.matrix.copy()
    if absent:
        matrix[np.ix_(absent, absent)] = False
    np.fill_diagonal(matrix, True)
    reduced = WorldRelation(logic, matrix)

    candidates = []
    transitive = is_transitive(reduced)
    if transitive:
        candidates.append(order_extend(reduced))
    else:
        logger.info(f"[relèvement] K={logic.describe_base(k)} : {transitive.witness}, repli sur les préférences forcées")
    forced = forced_order(op, logic, k_models)
    if forced is not None:
        candidates.append(forced)
    if not candidates:
        raise TransitivityFailure(transitive.witness["worlds"])

    failures = []
    for lifted in candidates:
        failure = _min_change(extracted, lifted, logic)
        if failure is None:
            return lifted
        failures.append(failure)
    raise failures[0]


# ---------- REPRÉSENTABILITÉ ----------

@dataclass(frozen=True)
class RepresentabilityVerdict:
    """
    status : representable | notRepresentable | unknown.

    Représentable : `assignment` est un préordre total fidèle compatible.
    Non représentable : `k` et `cycle`, liste d'arêtes (ω, ω′, Mod(Γ) témoin).
    """

    status: str
    assignment: Optional[Assignment] = None
    k: Optional[object] = None
    cycle: Optional[tuple] = None
    reason: Optional[str] = None

    def describe_cycle(self, logic):
        return [
            {
                "from": logic.worlds[u],
                "to": logic.worlds[v],
                "gamma": logic.sentence_names(canonical_base(logic, gamma)),
            }
            for u, v, gamma in self.cycle or ()
        ]


def _verify_witness(op, logic, assignment):
    """Premier défaut du témoin représentable, ou None"""
    if not check_faithful(assignment, logic).passed:
        return "affectation relevée non fidèle"
    for kc, relation in assignment.items():
        if not is_preorder(relation):
            return f"relation non préordre pour K={logic.describe_base(kc.canonical_base)}"
        if not is_min_complete(relation, logic):
            return f"relation non min-complete pour K={logic.describe_base(kc.canonical_base)}"
    if not check_compatible(op, assignment, logic).passed:
        return "affectation relevée non compatible"
    return None


def representability(op, logic, seed=None, syntax_sensitive=False, report=None, g4_max_bases=None):
    """
    Décide (ou non) la représentabilité par préordres totaux.

    Un rapport d'audit déjà calculé pour cet opérateur peut être transmis
    par `report` pour éviter un second audit.

    Raises:
        PostulateFailure: l'opérateur échoue à l'audit (G1)–(G6)
    """
    if report is None:
        report = check_postulates(
            op, logic, seed=seed, syntax_sensitive=syntax_sensitive, g4_max_bases=g4_max_bases
        )
    if not report.passed:
        raise PostulateFailure(report)

    classes = enumerate_classes(logic)
    graph = forced_strict_graph(op, logic)
    for kc in classes:
        cycle = graph.find_cycle(kc.models)
        if cycle:
            logger.info(f"[représentabilité] cycle forcé pour K={logic.describe_base(kc.canonical_base)}")
            return RepresentabilityVerdict(NOT_REPRESENTABLE, k=kc.canonical_base, cycle=tuple(cycle))

    lifted = {}
    for kc in classes:
        try:
            lifted[kc.models] = preorder_lift(op, logic, kc.canonical_base)
        except (TransitivityFailure, MinPreservationFailure) as exc:
            return RepresentabilityVerdict(UNKNOWN, k=kc.canonical_base, reason=str(exc))

    assignment = Assignment(logic, lifted, label=f"lifted({op.name})")
    defect = _verify_witness(op, logic, assignment)
    if defect:
        return RepresentabilityVerdict(UNKNOWN, reason=defect)
    return RepresentabilityVerdict(REPRESENTABLE, assignment=assignment)
