"""
Opérateurs de changement de base.

Familles disponibles :
- fullMeet : K ∘ Γ = K ∪ Γ si cohérent, sinon Γ
- table : résultats donnés par classes, avec complétion full-meet ou erreur
- induced : K ∘ Γ = base canonique de min(Mod(Γ), ⪯K) pour une affectation
- builtinEx : l'opérateur d'exemple à six cas sur les logiques lex
- loopCounterexample : l'opérateur construit à partir d'une boucle critique

Tous les opérateurs sont immuables ; `apply` est pur.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

from .constants import EX_BASE, EX_GUARDED_CASES
from .exceptions import ContractViolation, InputError, MinExpressibilityError
from .kernel import (
    BeliefBase,
    canonical_base,
    enumerate_classes,
    is_expressible,
    models_of,
)
from .orders import min_set

logger = logging.getLogger(__name__)


def _as_base(base):
    return base if type(base) is BeliefBase else BeliefBase(base)


def full_meet(logic, k, g):
    union = _as_base(k) | g
    return union if models_of(logic, union) else _as_base(g)


# ----- OPÉRATEURS ----- #

class ChangeOperator:
    """Opérateur de changement multiple de base sur une logique"""

    kind = None

    def __init__(self, logic, name):
        self.logic = logic
        self.name = name

    def apply(self, k, g):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, logic={self.logic.name!r})"


class FullMeetOperator(ChangeOperator):
    kind = "fullMeet"

    def apply(self, k, g):
        return full_meet(self.logic, k, g)


class TableOperator(ChangeOperator):
    """
    Opérateur défini par une table (classe de K, classe de Γ) -> base résultat.

    Les entrées sont comparées sémantiquement ; les couples absents passent
    par full-meet (default="full-meet"). Avec default="error", la table doit
    couvrir tous les couples de classes dès la construction.
    """

    kind = "table"

    def __init__(self, logic, name, entries, default):
        super().__init__(logic, name)
        self.entries = dict(entries)
        self.default = default

    def apply(self, k, g):
        key = (int(models_of(self.logic, k)), int(models_of(self.logic, g)))
        result = self.entries.get(key)
        if result is not None:
            return result
        if self.default == "full-meet":
            return full_meet(self.logic, k, g)
        raise ContractViolation(f"table {self.name} sans entrée pour {key}")


class InducedOperator(ChangeOperator):
    """K ∘ Γ = B_{Γ,⪯K} : base canonique des minimaux de Mod(Γ) pour ⪯K"""

    kind = "induced"

    def __init__(self, logic, name, assignment):
        super().__init__(logic, name)
        self.assignment = assignment

    def apply(self, k, g):
        relation = self.assignment.relation_for(k)
        return canonical_base(self.logic, min_set(relation, models_of(self.logic, g)))


class ExampleOperator(ChangeOperator):
    """Opérateur d'exemple ∘_Ex : six cas pour K ≡ {ψ0}, full-meet ailleurs"""

    kind = "builtinEx"

    def __init__(self, logic, name="ex"):
        super().__init__(logic, name)
        self.k_models = models_of(logic, logic.base(*EX_BASE))
        self.cases = tuple(
            (logic.sentence_index(added), None if blocked is None else logic.sentence_index(blocked))
            for added, blocked in EX_GUARDED_CASES
        )

    def apply(self, k, g):
        logic = self.logic
        k_models = models_of(logic, k)
        if k_models != self.k_models:
            return full_meet(logic, k, g)
        g = _as_base(g)
        g_models = models_of(logic, g)
        if k_models & g_models:
            return _as_base(k) | g
        for added, blocked in self.cases:
            if logic.models[added] & g_models and (blocked is None or not logic.models[blocked] & g_models):
                return g.with_sentence(added)
        return g


# ----- BOUCLES CRITIQUES ----- #

def loop_regions(gamma_models):
    """Régions (Mod Γi ∩ Mod Γi⊕1) \\ Mod Γi⊕2 pour i = 0, 1, 2"""
    return tuple(
        (gamma_models[i] & gamma_models[(i + 1) % 3]) - gamma_models[(i + 2) % 3]
        for i in range(3)
    )


def compute_b_prime(logic, gamma_models, prime_models, k_models):
    """
    𝔅′ : classes Γ′ avec ∅ ≠ Mod(Γ′) ⊆ Mod(Γ) \\ ⋃ Mod(Γi) pour une classe Γ
    cohérente avec chaque Γ′i, restreintes à celles incohérentes avec K.
    Ordre canonique des classes.
    """
    union = gamma_models[0] | gamma_models[1] | gamma_models[2]
    classes = enumerate_classes(logic)
    targets = [
        c.models - union for c in classes
        if all(c.models & p for p in prime_models)
    ]
    return tuple(
        c for c in classes
        if c.models
        and c.models.isdisjoint(k_models)
        and any(c.models.issubset(t) for t in targets)
    )


@dataclass(frozen=True)
class LoopData:
    """Données d'une boucle critique : Γ0..Γ2, Γ′0..Γ′2, K et 𝔅′ ordonné"""

    gammas: tuple
    gamma_primes: tuple
    k: BeliefBase
    b_prime: tuple

    @classmethod
    def build(cls, logic, gammas, gamma_primes, k):
        """
        Valide les conditions (1) et (2) puis calcule 𝔅′.

        Raises:
            ContractViolation: une des deux conditions échoue
        """
        gammas = tuple(_as_base(g) for g in gammas)
        gamma_primes = tuple(_as_base(g) for g in gamma_primes)
        if len(gammas) != 3 or len(gamma_primes) != 3:
            raise ContractViolation("une boucle comporte exactement trois Γ et trois Γ′")
        k = _as_base(k)
        k_models = models_of(logic, k)
        gamma_models = tuple(models_of(logic, g) for g in gammas)
        prime_models = tuple(models_of(logic, g) for g in gamma_primes)

        for i, models in enumerate(gamma_models):
            if models & k_models:
                raise ContractViolation(f"condition (1) : K cohérent avec Γ{i}")
        for i, (region, models) in enumerate(zip(loop_regions(gamma_models), prime_models)):
            if not models or not models.issubset(region):
                raise ContractViolation(
                    f"condition (2) : Mod(Γ′{i}) = {logic.describe_models(models)} "
                    f"hors de la région {logic.describe_models(region)}"
                )
        b_prime = compute_b_prime(logic, gamma_models, prime_models, k_models)
        logger.debug(f"[boucle] 𝔅′ = {[logic.describe_models(c.models) for c in b_prime]}")
        return cls(gammas, gamma_primes, k, b_prime)


class LoopOperator(ChangeOperator):
    """
    Contre-exemple construit sur une boucle critique, pour K et ses équivalents :
    K ∪ Γ si cohérent ; sinon Γ ∪ Γ_min (premier membre de 𝔅′ cohérent avec Γ) ;
    sinon Γ ∪ Γ′i si Γ′i est cohérent et Γ′i⊕2 incohérent avec Γ ; sinon Γ.
    Full-meet pour les autres K.
    """

    kind = "loopCounterexample"

    def __init__(self, logic, name, loop):
        super().__init__(logic, name)
        self.loop = loop
        self.k_models = models_of(logic, loop.k)
        self.prime_models = tuple(models_of(logic, g) for g in loop.gamma_primes)

    def apply(self, k, g):
        logic = self.logic
        k_models = models_of(logic, k)
        if k_models != self.k_models:
            return full_meet(logic, k, g)
        g = _as_base(g)
        g_models = models_of(logic, g)
        if k_models & g_models:
            return _as_base(k) | g
        for candidate in self.loop.b_prime:
            if candidate.models & g_models:
                return g | candidate.canonical_base
        primes = self.prime_models
        for i in range(3):
            if primes[i] & g_models and not primes[(i + 2) % 3] & g_models:
                return g | self.loop.gamma_primes[i]
        return g


# ----- CONSTRUCTEURS ----- #

def apply(op, k, g):
    """K ∘ Γ pour l'opérateur donné"""
    return op.apply(k, g)


def make_full_meet(logic):
    return FullMeetOperator(logic, "full-meet")


def make_table(logic, entries, default="full-meet", name="table"):
    """
    Opérateur tabulé.

    Args:
        entries: itérable de triplets (K, Γ, résultat) de bases
        default: "full-meet" ou "error"

    Raises:
        InputError: entrées contradictoires, ou couverture incomplète avec default="error"
    """
    if default not in ("full-meet", "error"):
        raise InputError(f"valeur par défaut inconnue : {default!r}")
    table = {}
    for k, g, result in entries:
        key = (int(models_of(logic, k)), int(models_of(logic, g)))
        result = _as_base(result)
        previous = table.get(key)
        if previous is not None and models_of(logic, previous) != models_of(logic, result):
            raise InputError(
                f"entrées contradictoires pour K={logic.describe_base(k)}, Γ={logic.describe_base(g)}"
            )
        table.setdefault(key, result)

    if default == "error":
        classes = enumerate_classes(logic)
        for kc in classes:
            for gc in classes:
                if (int(kc.models), int(gc.models)) not in table:
                    raise InputError(
                        f"table incomplète : aucune entrée pour K={logic.describe_base(kc.canonical_base)}, "
                        f"Γ={logic.describe_base(gc.canonical_base)}"
                    )
    logger.info(f"[table] {name} : {len(table)} entrées, défaut {default}")
    return TableOperator(logic, name, table, default)


def make_induced(assignment, name=None):
    """
    Opérateur induit par une affectation min-exprimable.

    Raises:
        MinExpressibilityError: premier couple (classe K, classe Γ) dont les
            minimaux ne sont pas exprimables
    """
    logic = assignment.logic
    classes = enumerate_classes(logic)
    for k_label, relation in assignment.labelled_relations():
        for gc in classes:
            minimum = min_set(relation, gc.models)
            if not is_expressible(logic, minimum):
                raise MinExpressibilityError(
                    k_label,
                    logic.describe_base(gc.canonical_base),
                    logic.describe_models(minimum),
                )
    return InducedOperator(logic, name or f"induced({assignment.label})", assignment)


def make_builtin_ex(logic):
    """
    Opérateur d'exemple sur lex_paper ou lex_core.

    Raises:
        InputError: la logique ne déclare pas les phrases ψ0..ψ4
    """
    required = set(EX_BASE).union(*(filter(None, case) for case in EX_GUARDED_CASES))
    missing = sorted(required - set(logic.sentences))
    if missing:
        raise InputError(
            f"∘_Ex exige les phrases {', '.join(sorted(required))} ; absentes : {', '.join(missing)}",
            source=logic.name,
        )
    if logic.name not in ("lex_paper", "lex_core"):
        logger.warning(f"[ex] logique {logic.name} hors des variantes lex")
    return ExampleOperator(logic)


def make_loop_operator(logic, loop):
    return LoopOperator(logic, "loop", loop)


# ----- FONCTION SÉMANTIQUE ----- #

@lru_cache(maxsize=64)
def semantic_function(op, logic):
    """Table (classe K, classe Γ) -> Mod(K ∘ Γ), calculée sur les bases canoniques"""
    classes = enumerate_classes(logic)
    table = {}
    for kc in classes:
        for gc in classes:
            result = op.apply(kc.canonical_base, gc.canonical_base)
            table[(int(kc.models), int(gc.models))] = models_of(logic, result)
    logger.debug(f"[fonction] {op.name} sur {logic.name} : {len(table)} couples")
    return table


def operators_agree(first, second, logic):
    """Premier couple de classes où les deux opérateurs divergent, ou None"""
    left = semantic_function(first, logic)
    right = semantic_function(second, logic)
    for key, models in left.items():
        if right[key] != models:
            return key
    return None
