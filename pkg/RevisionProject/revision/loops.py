"""
Boucles critiques, disjonctivité et chaîne de contre-exemple.

Une boucle critique est un triplet de classes Γ0, Γ1, Γ2 avec :
(1) une classe K incohérente avec chaque Γi ;
(2) des classes Γ′i non vides incluses dans (Mod Γi ∩ Mod Γi⊕1) \\ Mod Γi⊕2 ;
(3) pour toute classe Γ cohérente avec chaque Γ′i, une classe non vide
    incluse dans Mod(Γ) \\ (Mod Γ0 ∪ Mod Γ1 ∪ Mod Γ2).
Les conditions ne dépendent que des régions : l'ordre du triplet est indifférent.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Optional

from django.conf import settings

from .audit import check_postulates, layered_assignment, linear_assignment
from .change import LoopData, loop_regions, make_full_meet, make_induced, make_loop_operator
from .constants import NOT_REPRESENTABLE, REPRESENTABLE
from .exceptions import ContractViolation, MinExpressibilityError, PostulateFailure
from .extract import representability
from .kernel import enumerate_classes, expressible_closure, models_of
from .orders import HOLDS, PropertyVerdict

logger = logging.getLogger(__name__)


# ---------- DISJONCTIVITÉ ----------

def is_disjunctive(logic):
    """
    L'union de deux ensembles exprimables est-elle toujours exprimable ?

    Témoin : l'union non exprimable la plus petite (taille, puis ordre des
    mondes), avec la première paire de classes qui la produit.
    """
    closure = expressible_closure(logic)
    if len(closure) == 2 ** len(logic.worlds):
        return HOLDS
    members = set(int(m) for m in closure)
    classes = enumerate_classes(logic)
    best = None
    for left, right in combinations(classes, 2):
        union = left.models | right.models
        if int(union) in members:
            continue
        key = (len(union), tuple(union))
        if best is None or key < best[0]:
            best = (key, union, left, right)
    if best is None:
        return HOLDS
    _, union, left, right = best
    return PropertyVerdict(False, {
        "union": logic.world_names(union),
        "left": logic.sentence_names(left.canonical_base),
        "right": logic.sentence_names(right.canonical_base),
    })


# ---------- BOUCLES CRITIQUES ----------

@dataclass(frozen=True)
class CriticalLoop:
    """
    Boucle critique validée.

    certificate : pour la condition (3), couples (Γ, Γ′) sur toutes les
    classes Γ cohérentes avec chaque Γ′i, dans l'ordre canonique.
    """

    gammas: tuple
    gamma_primes: tuple
    k: object
    certificate: tuple

    def to_loop_data(self, logic):
        return LoopData.build(logic, self.gammas, self.gamma_primes, self.k)

    def to_dict(self, logic):
        names = logic.sentence_names
        return {
            "gammas": [names(g) for g in self.gammas],
            "gamma_models": [logic.world_names(models_of(logic, g)) for g in self.gammas],
            "gamma_primes": [names(g) for g in self.gamma_primes],
            "gamma_prime_models": [logic.world_names(models_of(logic, g)) for g in self.gamma_primes],
            "k": names(self.k),
            "condition3": [
                {"gamma": names(g), "witness": names(w)} for g, w in self.certificate
            ],
        }


class LoopList(list):
    """Boucles retenues ; `total` compte toutes les boucles trouvées"""

    total = 0


class _LoopSearch:
    """Structures précalculées pour une logique"""

    def __init__(self, logic):
        self.logic = logic
        self.classes = enumerate_classes(logic)
        self.nonempty = [c for c in self.classes if c.models]
        self._inside = {}

    def first_inside(self, target):
        """Première classe non vide (ordre canonique) incluse dans target"""
        key = int(target)
        if key not in self._inside:
            self._inside[key] = next(
                (c for c in self.nonempty if c.models.issubset(target)), None
            )
        return self._inside[key]

    def minimal_inside(self, region):
        candidates = [c for c in self.nonempty if c.models.issubset(region)]
        return [
            c for c in candidates
            if not any(d.models != c.models and d.models.issubset(c.models) for d in candidates)
        ]

    def k_class(self, union):
        return next((c for c in self.classes if c.models.isdisjoint(union)), None)

    def condition_3(self, union, prime_models):
        """Certificat de la condition (3), ou (None, classe Γ en défaut)"""
        certificate = []
        for gc in self.classes:
            if not all(gc.models & p for p in prime_models):
                continue
            witness = self.first_inside(gc.models - union)
            if witness is None:
                return None, gc
            certificate.append((gc.canonical_base, witness.canonical_base))
        return tuple(certificate), None

    def examine(self, triple):
        """
        Examine un triplet de classes.

        Returns:
            (CriticalLoop ou None, raison du rejet ou None)
        """
        gamma_models = tuple(c.models for c in triple)
        union = gamma_models[0] | gamma_models[1] | gamma_models[2]
        k = self.k_class(union)
        if k is None:
            return None, {"condition": 1}
        options = [self.minimal_inside(r) for r in loop_regions(gamma_models)]
        if not all(options):
            return None, {"condition": 2, "index": next(i for i, o in enumerate(options) if not o)}
        blocking = None
        for primes in product(*options):
            certificate, failing = self.condition_3(union, tuple(p.models for p in primes))
            if certificate is not None:
                loop = CriticalLoop(
                    tuple(c.canonical_base for c in triple),
                    tuple(p.canonical_base for p in primes),
                    k.canonical_base,
                    certificate,
                )
                return loop, None
            blocking = blocking or failing
        return None, {"condition": 3, "class": blocking}


def find_critical_loops(logic, limit=None):
    """
    Recherche exhaustive des boucles critiques sur les triplets de classes,
    dans l'ordre canonique.

    Args:
        limit: nombre maximal de boucles retournées (LAB_CONFIG['LOOP_LIMIT'] par défaut)

    Returns:
        LoopList ; `total` compte toutes les boucles, même au-delà de la limite
    """
    limit = settings.LAB_CONFIG['LOOP_LIMIT'] if limit is None else limit
    search = _LoopSearch(logic)
    loops = LoopList()
    for triple in combinations(search.nonempty, 3):
        loop, _ = search.examine(triple)
        if loop is None:
            continue
        loops.total += 1
        if len(loops) < limit:
            loops.append(loop)
    logger.info(f"[boucles] {logic.name} : {loops.total} boucle(s), {len(loops)} retenue(s)")
    return loops


def explain_candidate(logic, gammas):
    """
    Verdict détaillé pour un triplet de bases donné : la boucle si elle
    existe, sinon la condition en défaut (et la classe Γ bloquante pour (3)).
    """
    classes = enumerate_classes(logic)
    by_models = {int(c.models): c for c in classes}
    triple = tuple(by_models[int(models_of(logic, g))] for g in gammas)
    loop, rejection = _LoopSearch(logic).examine(triple)
    if rejection and rejection.get("class") is not None:
        blocking = rejection["class"]
        rejection = {
            "condition": 3,
            "class": logic.world_names(blocking.models),
            "base": logic.sentence_names(blocking.canonical_base),
        }
    return loop, rejection


def validate_loop(logic, loop):
    """Revalide (1)–(3) depuis les données stockées ; liste des conditions en défaut"""
    failures = []
    try:
        loop.to_loop_data(logic)
    except ContractViolation as exc:
        failures.append(str(exc))

    gamma_models = tuple(models_of(logic, g) for g in loop.gammas)
    prime_models = tuple(models_of(logic, g) for g in loop.gamma_primes)
    union = gamma_models[0] | gamma_models[1] | gamma_models[2]
    certified = {int(models_of(logic, g)): models_of(logic, w) for g, w in loop.certificate}
    for gc in enumerate_classes(logic):
        if not all(gc.models & p for p in prime_models):
            continue
        witness = certified.get(int(gc.models))
        if witness is None or not witness or not witness.issubset(gc.models - union):
            failures.append(f"condition (3) non certifiée pour Γ={logic.describe_models(gc.models)}")
    return failures


# ---------- CHAÎNE DE CONTRE-EXEMPLE ----------

@dataclass
class PipelineReport:
    """Résultat de la chaîne boucle → opérateur → audit → représentabilité"""

    logic: str
    loop_total: int = 0
    loop: Optional[CriticalLoop] = None
    b_prime: tuple = ()
    audit: Optional[object] = None
    verdict: Optional[object] = None
    lifted: list = field(default_factory=list)
    findings: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.findings


def _fixture_operators(logic):
    operators = [make_full_meet(logic)]
    for assignment in (layered_assignment(logic), linear_assignment(logic)):
        try:
            operators.append(make_induced(assignment))
        except MinExpressibilityError as exc:
            logger.info(f"[chaîne] affectation {assignment.label} ignorée : {exc}")
    return operators


def counterexample_pipeline(logic, seed=None, limit=None, g4_max_bases=None):
    """
    Avec boucle : construit l'opérateur de contre-exemple, l'audite et exige
    un verdict non représentable. Sans boucle : chaque opérateur d'exemple
    doit se relever en préordre total. Tout écart devient un « finding ».
    """
    report = PipelineReport(logic.name)
    loops = find_critical_loops(logic, limit)
    report.loop_total = loops.total

    if loops:
        loop = loops[0]
        report.loop = loop
        data = loop.to_loop_data(logic)
        report.b_prime = data.b_prime
        operator = make_loop_operator(logic, data)
        report.audit = check_postulates(operator, logic, seed=seed, g4_max_bases=g4_max_bases)
        if not report.audit.passed:
            report.findings.append(f"l'opérateur de boucle échoue à l'audit : {report.audit.summary}")
            return report
        report.verdict = representability(operator, logic, seed=seed, report=report.audit)
        if report.verdict.status != NOT_REPRESENTABLE:
            report.findings.append(f"verdict inattendu pour l'opérateur de boucle : {report.verdict.status}")
        return report

    for operator in _fixture_operators(logic):
        try:
            verdict = representability(operator, logic, seed=seed, g4_max_bases=g4_max_bases)
        except PostulateFailure as exc:
            report.findings.append(str(exc))
            continue
        report.lifted.append((operator.name, verdict.status))
        if verdict.status != REPRESENTABLE:
            report.findings.append(f"{operator.name} ne se relève pas : {verdict.status} ({verdict.reason})")
    logger.info(f"[chaîne] {logic.name} : {len(report.findings)} écart(s)")
    return report
