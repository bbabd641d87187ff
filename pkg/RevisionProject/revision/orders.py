"""
Relations binaires sur les mondes.

Une WorldRelation est une matrice booléenne |Ω|×|Ω| (entrée (i, j) : ωi ⪯ ωj).
Ce module fournit la minimalité universelle, les prédicats structurels
(total, réflexif, transitif, préordre), les propriétés min-retractive,
min-complete, min-expressible, et l'extension en préordre total par
classement selon la plus longue chaîne stricte.

Toutes les propriétés quantifient sur les classes sémantiques : elles ne
dépendent des bases qu'à travers Mod(Γ).
"""

import logging
from dataclasses import dataclass
from typing import Any, Optional

import networkx as nx
import numpy as np

from .exceptions import ContractViolation, InputError
from .kernel import ModelSet, enumerate_classes, is_expressible

logger = logging.getLogger(__name__)


# ---------- RELATIONS ----------

class WorldRelation:
    """
    Relation binaire sur les mondes d'une logique, immuable.

    Args:
        logic: logique propriétaire
        matrix: tableau carré de booléens, ligne i colonne j pour ωi ⪯ ωj
    """

    __slots__ = ("logic", "matrix", "_rows", "_cols")

    def __init__(self, logic, matrix):
        matrix = np.array(matrix, dtype=bool)
        size = len(logic.worlds)
        if matrix.shape != (size, size):
            raise InputError(
                f"matrice {matrix.shape} incompatible avec {size} mondes", source=logic.name
            )
        matrix.setflags(write=False)
        self.logic = logic
        self.matrix = matrix
        self._rows = None
        self._cols = None

    # Constructeurs

    @classmethod
    def full(cls, logic):
        size = len(logic.worlds)
        return cls(logic, np.ones((size, size), dtype=bool))

    @classmethod
    def identity(cls, logic):
        return cls(logic, np.eye(len(logic.worlds), dtype=bool))

    @classmethod
    def from_pairs(cls, logic, pairs, reflexive=True):
        size = len(logic.worlds)
        matrix = np.eye(size, dtype=bool) if reflexive else np.zeros((size, size), dtype=bool)
        for i, j in pairs:
            matrix[i, j] = True
        return cls(logic, matrix)

    @classmethod
    def from_ranks(cls, logic, ranks):
        """Préordre total : ωi ⪯ ωj ssi rang(ωi) ≤ rang(ωj)"""
        ranks = np.asarray(ranks)
        return cls(logic, ranks[:, None] <= ranks[None, :])

    # Accès

    @property
    def size(self):
        return self.matrix.shape[0]

    @property
    def row_masks(self):
        """Pour chaque ωi, le masque des ωj tels que ωi ⪯ ωj"""
        if self._rows is None:
            self._rows = tuple(
                int(sum(1 << int(j) for j in np.flatnonzero(row))) for row in self.matrix
            )
        return self._rows

    @property
    def col_masks(self):
        """Pour chaque ωj, le masque des ωi tels que ωi ⪯ ωj"""
        if self._cols is None:
            self._cols = tuple(
                int(sum(1 << int(i) for i in np.flatnonzero(col))) for col in self.matrix.T
            )
        return self._cols

    def leq(self, i, j):
        return bool(self.matrix[i, j])

    def strict(self, i, j):
        return bool(self.matrix[i, j]) and not bool(self.matrix[j, i])

    def strict_pairs(self):
        strict = self.matrix & ~self.matrix.T
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(strict))]

    def equivalent_pairs(self):
        both = np.triu(self.matrix & self.matrix.T, k=1)
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(both))]

    def incomparable_pairs(self):
        neither = np.triu(~self.matrix & ~self.matrix.T, k=1)
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(neither))]

    def contains(self, other):
        """Inclusion des ensembles d'arêtes : other ⊆ self"""
        return not bool((other.matrix & ~self.matrix).any())

    def to_rows(self):
        return [[int(v) for v in row] for row in self.matrix]

    def __eq__(self, other):
        if not isinstance(other, WorldRelation):
            return NotImplemented
        return self.logic is other.logic and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash((id(self.logic), self.matrix.tobytes()))

    def __repr__(self):
        return f"WorldRelation({self.logic.name!r}, {len(self.strict_pairs())} paires strictes)"


@dataclass(frozen=True)
class PropertyVerdict:
    """Verdict d'une propriété ; témoin présent ssi la propriété échoue"""

    holds: bool
    witness: Optional[Any] = None

    def __bool__(self):
        return self.holds


HOLDS = PropertyVerdict(True)


def _class_witness(logic, semantic_class, **extra):
    witness = {
        "class": logic.world_names(semantic_class.models),
        "base": logic.sentence_names(semantic_class.canonical_base),
    }
    witness.update(extra)
    return witness


# ---------- MINIMALITÉ ----------

def min_set(rel, subset):
    """
    { ω ∈ S | ∀ω′ ∈ S : ω ⪯ ω′ } : définition universelle.

    Valable aussi pour les relations non totales ou non transitives.
    """
    subset = ModelSet(subset)
    rows = rel.row_masks
    mask = 0
    for index in subset:
        if subset.issubset(rows[index]):
            mask |= 1 << index
    return ModelSet(mask)


def strict_min_set(rel, subset):
    """{ ω ∈ S | aucun ω″ ∈ S avec ω″ ≺ ω } ; coïncide avec min_set si la relation est totale"""
    subset = ModelSet(subset)
    rows, cols = rel.row_masks, rel.col_masks
    mask = 0
    for index in subset:
        strictly_below = cols[index] & ~rows[index]
        if strictly_below & subset == 0:
            mask |= 1 << index
    return ModelSet(mask)


# ---------- PRÉDICATS STRUCTURELS ----------

def is_reflexive(rel):
    diagonal = np.diagonal(rel.matrix)
    if diagonal.all():
        return HOLDS
    index = int(np.argmin(diagonal))
    return PropertyVerdict(False, {"world": rel.logic.worlds[index]})


def is_total(rel):
    related = rel.matrix | rel.matrix.T
    if related.all():
        return HOLDS
    # related est symétrique : le premier trou en ordre ligne a i ≤ j
    i, j = (int(v) for v in np.argwhere(~related)[0])
    return PropertyVerdict(False, {"worlds": [rel.logic.worlds[i], rel.logic.worlds[j]]})


def is_transitive(rel):
    matrix = rel.matrix
    for i in range(rel.size):
        for j in np.flatnonzero(matrix[i]):
            missing = matrix[j] & ~matrix[i]
            if missing.any():
                k = int(np.argmax(missing))
                names = rel.logic.worlds
                return PropertyVerdict(False, {"worlds": [names[i], names[int(j)], names[k]]})
    return HOLDS


def is_preorder(rel):
    reflexive = is_reflexive(rel)
    if not reflexive:
        return reflexive
    return is_transitive(rel)


# ---------- PROPRIÉTÉS DE MINIMALITÉ ----------

def is_min_retractive(rel, logic):
    """
    ω′ ⪯ ω avec ω minimal dans Mod(Γ) impose ω′ minimal, pour toute classe Γ.

    Témoin : (classe Γ, ω′, ω), le plus petit dans l'ordre canonique.
    """
    rows = rel.row_masks
    for semantic_class in enumerate_classes(logic):
        members = semantic_class.models
        minimum = min_set(rel, members)
        if not minimum:
            continue
        for lower in members - minimum:
            above = rows[lower] & minimum
            if above:
                upper = (above & -above).bit_length() - 1
                return PropertyVerdict(False, _class_witness(
                    logic, semantic_class, worlds=[logic.worlds[lower], logic.worlds[upper]]
                ))
    return HOLDS


def is_min_complete(rel, logic):
    for semantic_class in enumerate_classes(logic):
        if semantic_class.models and not min_set(rel, semantic_class.models):
            return PropertyVerdict(False, _class_witness(logic, semantic_class))
    return HOLDS


def is_min_friendly(rel, logic):
    retractive = is_min_retractive(rel, logic)
    if not retractive:
        return retractive
    return is_min_complete(rel, logic)


def is_min_expressible(rel, logic):
    for semantic_class in enumerate_classes(logic):
        minimum = min_set(rel, semantic_class.models)
        if not is_expressible(logic, minimum):
            return PropertyVerdict(False, _class_witness(
                logic, semantic_class, min=logic.world_names(minimum)
            ))
    return HOLDS


# ---------- EXTENSION D'ORDRE ----------

def strict_graph(rel):
    """Graphe orienté des paires strictes ωi ≺ ωj"""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(rel.size))
    graph.add_edges_from(rel.strict_pairs())
    return graph


def longest_chain_ranks(graph):
    """Rang de chaque nœud d'un graphe acyclique : plus longue chaîne d'arêtes en dessous"""
    ranks = {node: 0 for node in graph.nodes}
    for node in nx.lexicographical_topological_sort(graph):
        ranks[node] = max((ranks[p] + 1 for p in graph.predecessors(node)), default=0)
    return ranks


def chain_ranks(rel):
    """Rang de chaque monde : longueur de la plus longue chaîne stricte en dessous"""
    ranks = longest_chain_ranks(strict_graph(rel))
    return [ranks[i] for i in range(rel.size)]


def order_extend(rel):
    """
    Étend un préordre (éventuellement partiel) en préordre total.

    ω ⪯2 ω′ ssi rang(ω) ≤ rang(ω′). Le résultat contient la relation
    d'entrée et préserve ses paires strictes.

    Raises:
        ContractViolation: relation non réflexive ou non transitive
    """
    verdict = is_preorder(rel)
    if not verdict:
        raise ContractViolation(f"order_extend exige un préordre : {verdict.witness}")
    ranks = chain_ranks(rel)
    logger.debug(f"[extension] rangs {ranks}")
    return WorldRelation.from_ranks(rel.logic, ranks)
