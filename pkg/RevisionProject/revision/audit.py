"""
Audit des opérateurs et des affectations.

- check_postulates : (G1)–(G6) pour un opérateur
- check_faithful : totalité et (F1)–(F3) pour une affectation
- check_compatible : Mod(K ∘ Γ) = min(Mod(Γ), ⪯K) sur tous les couples de classes
- check_min_friendly : min-retractive, min-complete, min-expressible par classe K

Les quantifications portent sur les classes sémantiques ; seul (G4) parcourt
les bases syntaxiques (exhaustivement sous le seuil, par échantillon au-delà).
Chaque vérification conserve ses premiers témoins dans l'ordre canonique :
le premier est le plus petit.
"""

import logging
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np
from django.conf import settings

from .change import semantic_function
from .constants import (
    POSTULATES,
    VERDICT_FAIL,
    VERDICT_PASS,
    VERDICT_SAMPLED,
)
from .exceptions import InputError
from .kernel import BeliefBase, ModelSet, enumerate_classes, models_of
from .orders import (
    WorldRelation,
    is_min_complete,
    is_min_expressible,
    is_min_retractive,
    is_total,
    min_set,
)

logger = logging.getLogger(__name__)


# ---------- AFFECTATIONS ----------

class Assignment:
    """
    Affectation K ↦ ⪯K, indexée par les classes sémantiques de K.

    Args:
        logic: logique propriétaire
        relations: table ModelSet (masque de la classe K) -> WorldRelation,
            couvrant toutes les classes
        by_base: en mode syntaxique, table BeliefBase -> WorldRelation qui
            prime sur la table par classes
        label: nom utilisé dans les rapports
    """

    def __init__(self, logic, relations, by_base=None, label="assignment"):
        self.logic = logic
        self.label = label
        self._relations = {}
        for key, relation in relations.items():
            if relation.logic is not logic:
                raise InputError("relation d'une autre logique dans l'affectation", source=logic.name)
            self._relations[int(key)] = relation
        for semantic_class in enumerate_classes(logic):
            if int(semantic_class.models) not in self._relations:
                raise InputError(
                    f"aucune relation pour la classe K={logic.describe_base(semantic_class.canonical_base)}",
                    source=logic.name,
                )
        self.by_base = {BeliefBase(b): r for b, r in by_base.items()} if by_base else None

    @property
    def syntactic(self):
        return self.by_base is not None

    def relation_for_class(self, models):
        return self._relations[int(models)]

    def relation_for(self, base):
        if self.by_base is not None:
            relation = self.by_base.get(base)
            if relation is not None:
                return relation
        return self._relations[int(models_of(self.logic, base))]

    def items(self):
        """Couples (classe, relation) dans l'ordre canonique des classes"""
        return [(c, self._relations[int(c.models)]) for c in enumerate_classes(self.logic)]

    def labelled_relations(self):
        """Relations à parcourir, avec l'étiquette de leur base"""
        logic = self.logic
        labelled = [(logic.describe_base(c.canonical_base), r) for c, r in self.items()]
        if self.by_base:
            for base in sorted(self.by_base, key=lambda b: b.sort_key):
                labelled.append((logic.describe_base(base), self.by_base[base]))
        return labelled

    @classmethod
    def from_function(cls, logic, build, label="assignment"):
        """Affectation construite classe par classe : build(classe) -> WorldRelation"""
        return cls(logic, {c.models: build(c) for c in enumerate_classes(logic)}, label=label)

    @classmethod
    def from_ranks(cls, logic, rank, label="ranks"):
        """Préordres totaux donnés par rank(classe) -> liste de rangs par monde"""
        return cls.from_function(logic, lambda c: WorldRelation.from_ranks(logic, rank(c)), label)


def layered_assignment(logic):
    """Deux couches : modèles de K en bas, tout le reste au-dessus (full-meet)"""
    return Assignment.from_ranks(
        logic,
        lambda c: [0 if i in c.models else 1 for i in range(len(logic.worlds))],
        label="layered",
    )


def linear_assignment(logic):
    """Modèles de K en bas, puis les autres mondes un par un dans l'ordre déclaré"""
    def rank(semantic_class):
        ranks, next_rank = [], 1
        for i in range(len(logic.worlds)):
            if i in semantic_class.models:
                ranks.append(0)
            else:
                ranks.append(next_rank)
                next_rank += 1
        return ranks
    return Assignment.from_ranks(logic, rank, label="linear")


# ---------- RAPPORTS ----------

@dataclass(frozen=True)
class CheckResult:
    name: str
    verdict: str
    witnesses: tuple = ()

    @property
    def passed(self):
        return self.verdict != VERDICT_FAIL


@dataclass(frozen=True)
class AuditReport:
    """Rapport d'audit : vérifications dans l'ordre demandé, témoins minimaux"""

    subject: str
    checks: tuple
    exhaustive: bool = True

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def summary(self):
        return {
            "pass": sum(1 for c in self.checks if c.verdict == VERDICT_PASS),
            "sampled": sum(1 for c in self.checks if c.verdict == VERDICT_SAMPLED),
            "fail": sum(1 for c in self.checks if c.verdict == VERDICT_FAIL),
        }

    def check(self, name):
        for result in self.checks:
            if result.name == name:
                return result
        raise KeyError(name)

    def to_dict(self):
        return {
            "subject": self.subject,
            "checks": [
                {"name": c.name, "verdict": c.verdict, "witnesses": list(c.witnesses)}
                for c in self.checks
            ],
            "exhaustive": self.exhaustive,
            "summary": self.summary,
        }


def _max_witnesses():
    return settings.LAB_CONFIG['MAX_WITNESSES']


def _result(name, witnesses, sampled=False):
    if witnesses:
        return CheckResult(name, VERDICT_FAIL, tuple(witnesses))
    return CheckResult(name, VERDICT_SAMPLED if sampled else VERDICT_PASS)


# ---------- POSTULATS ----------

def _pair_witness(logic, kc, gc, result, **extra):
    witness = {
        "k": logic.sentence_names(kc.canonical_base),
        "gamma": logic.sentence_names(gc.canonical_base),
        "result": logic.world_names(result),
    }
    witness.update({key: logic.world_names(value) for key, value in extra.items()})
    return witness


def _check_basic(name, logic, classes, outcomes, cap):
    witnesses = []
    for kc in classes:
        for gc in classes:
            result = outcomes[(int(kc.models), int(gc.models))]
            if name == "G1":
                failed = not result.issubset(gc.models)
                extra = {}
            elif name == "G2":
                expected = kc.models & gc.models
                failed = bool(expected) and result != expected
                extra = {"expected": expected}
            else:
                failed = bool(gc.models) and not result
                extra = {}
            if failed:
                witnesses.append(_pair_witness(logic, kc, gc, result, **extra))
                if len(witnesses) >= cap:
                    return witnesses
    return witnesses


def _check_triples(op, logic, classes, outcomes, which, cap):
    """(G5) et (G6) sur tous les triplets (K, Γ1, Γ2), Γ1 ∪ Γ2 pris littéralement"""
    found = {name: [] for name in ("G5", "G6") if name in which}
    for kc in classes:
        for g1 in classes:
            first = outcomes[(int(kc.models), int(g1.models))]
            for g2 in classes:
                if all(len(w) >= cap for w in found.values()):
                    return found
                combined = models_of(logic, op.apply(kc.canonical_base, g1.canonical_base | g2.canonical_base))
                lhs = first & g2.models
                violated = []
                if "G5" in found and not lhs.issubset(combined):
                    violated.append("G5")
                if "G6" in found and lhs and not combined.issubset(lhs):
                    violated.append("G6")
                for name in violated:
                    if len(found[name]) < cap:
                        found[name].append({
                            "k": logic.sentence_names(kc.canonical_base),
                            "gamma1": logic.sentence_names(g1.canonical_base),
                            "gamma2": logic.sentence_names(g2.canonical_base),
                            "left": logic.world_names(lhs),
                            "right": logic.world_names(combined),
                        })
    return found


def _all_bases(logic):
    """Toutes les bases avec leurs modèles, par taille puis indices"""
    masks = [int(m) for m in logic.models]
    count = len(masks)
    bases = []
    for size in range(count + 1):
        for combo in combinations(range(count), size):
            mask = int(logic.universe)
            for index in combo:
                mask &= masks[index]
            bases.append((BeliefBase(combo), mask))
    return bases


def _random_base(rng, count):
    size = int(rng.integers(0, min(count, 6) + 1))
    return BeliefBase(int(i) for i in rng.choice(count, size=size, replace=False))


def raw_tuples(logic, arity, seed, max_bases=None, max_tuples=None):
    """
    Tuples de bases brutes (base, masque des modèles) à parcourir.

    Parcours exhaustif (produit cartésien des bases, par taille puis indices)
    tant que 2^|phrases| <= max_bases et (2^|phrases|)^arity <= max_tuples ;
    sinon G4_SAMPLE_SIZE tuples tirés par un générateur ensemencé.

    Returns:
        (itérable de tuples, exhaustif)
    """
    config = settings.LAB_CONFIG
    max_bases = config['G4_EXHAUSTIVE_MAX_BASES'] if max_bases is None else max_bases
    max_tuples = config['RAW_SCAN_MAX_TUPLES'] if max_tuples is None else max_tuples
    count = len(logic.sentences)
    if 2 ** count <= max_bases and 2 ** (count * arity) <= max_tuples:
        logger.debug(f"[audit] parcours exhaustif : {2 ** (count * arity)} tuples d'arité {arity}")
        return product(_all_bases(logic), repeat=arity), True

    sample_size = config['G4_SAMPLE_SIZE']
    logger.info(f"[audit] parcours échantillonné : {sample_size} tuples d'arité {arity}, graine {seed}")
    rng = np.random.default_rng(seed)

    def draw():
        for _ in range(sample_size):
            bases = [_random_base(rng, count) for _ in range(arity)]
            yield tuple((base, int(models_of(logic, base))) for base in bases)

    return draw(), False


def _check_g4(op, logic, outcomes, tuples, cap):
    """
    (G4) : pour tout couple de bases brutes (K, Γ), K ∘ Γ doit être équivalent
    au résultat sur les bases canoniques des classes de K et Γ.
    """
    witnesses = []
    for (k, k_mask), (g, g_mask) in tuples:
        got = models_of(logic, op.apply(k, g))
        expected = outcomes[(k_mask, g_mask)]
        if got != expected:
            witnesses.append({
                "k": logic.sentence_names(k),
                "gamma": logic.sentence_names(g),
                "result": logic.world_names(got),
                "expected": logic.world_names(expected),
            })
            if len(witnesses) >= cap:
                break
    return witnesses


def _check_raw_basic(op, logic, tuples, requested, cap):
    """(G1)–(G3) sur des couples de bases brutes (mode sensible à la syntaxe)"""
    found = {name: [] for name in ("G1", "G2", "G3") if name in requested}
    for (k, k_mask), (g, g_mask) in tuples:
        if all(len(w) >= cap for w in found.values()):
            break
        result = models_of(logic, op.apply(k, g))
        expected = ModelSet(k_mask & g_mask)
        violated = {
            "G1": not result.issubset(g_mask),
            "G2": bool(expected) and result != expected,
            "G3": bool(g_mask) and not result,
        }
        for name, witnesses in found.items():
            if violated[name] and len(witnesses) < cap:
                witnesses.append({
                    "k": logic.sentence_names(k),
                    "gamma": logic.sentence_names(g),
                    "result": logic.world_names(result),
                })
    return found


def _check_raw_triples(op, logic, tuples, requested, cap):
    """(G5) et (G6) sur des triplets de bases brutes (mode sensible à la syntaxe)"""
    found = {name: [] for name in ("G5", "G6") if name in requested}
    for (k, _), (g1, _), (g2, g2_mask) in tuples:
        if all(len(w) >= cap for w in found.values()):
            break
        lhs = models_of(logic, op.apply(k, g1)) & g2_mask
        combined = models_of(logic, op.apply(k, g1 | g2))
        violated = {
            "G5": not lhs.issubset(combined),
            "G6": bool(lhs) and not combined.issubset(lhs),
        }
        for name, witnesses in found.items():
            if violated[name] and len(witnesses) < cap:
                witnesses.append({
                    "k": logic.sentence_names(k),
                    "gamma1": logic.sentence_names(g1),
                    "gamma2": logic.sentence_names(g2),
                    "left": logic.world_names(lhs),
                    "right": logic.world_names(combined),
                })
    return found


def check_postulates(op, logic, which=None, seed=None, syntax_sensitive=False, g4_max_bases=None,
                     max_tuples=None):
    """
    Audit (G1)–(G6) d'un opérateur.

    Args:
        op: opérateur audité
        logic: logique de l'opérateur
        which: sous-ensemble de postulats (tous par défaut), rapporté dans l'ordre G1..G6
        seed: graine des parcours échantillonnés
        syntax_sensitive: abandonne (G4) ; (G1)–(G3), (G5) et (G6) sont alors
            aussi vérifiés sur des bases brutes
        g4_max_bases: seuil du parcours exhaustif, en nombre de bases
            (LAB_CONFIG['G4_EXHAUSTIVE_MAX_BASES'] par défaut)
        max_tuples: seuil du parcours exhaustif, en nombre de tuples de bases
            (LAB_CONFIG['RAW_SCAN_MAX_TUPLES'] par défaut)

    Returns:
        AuditReport
    """
    requested = tuple(POSTULATES) if which is None else tuple(which)
    unknown = [name for name in requested if name not in POSTULATES]
    if unknown:
        raise InputError(f"postulats inconnus : {', '.join(unknown)}")
    if syntax_sensitive:
        requested = tuple(name for name in requested if name != "G4")
    seed = settings.LAB_CONFIG['DEFAULT_SEED'] if seed is None else seed
    cap = _max_witnesses()

    def scan(arity):
        return raw_tuples(logic, arity, seed, g4_max_bases, max_tuples)

    classes = enumerate_classes(logic)
    outcomes = semantic_function(op, logic)
    logger.info(f"[audit] {op.name} sur {logic.name} : {len(classes)} classes, postulats {requested}")

    found = {name: _check_basic(name, logic, classes, outcomes, cap)
             for name in ("G1", "G2", "G3") if name in requested}
    if {"G5", "G6"} & set(requested):
        found.update(_check_triples(op, logic, classes, outcomes, requested, cap))
    complete = {name: True for name in requested}

    if "G4" in requested:
        tuples, complete["G4"] = scan(2)
        found["G4"] = _check_g4(op, logic, outcomes, tuples, cap)
    if syntax_sensitive:
        raw_checks = (
            (("G1", "G2", "G3"), 2, _check_raw_basic),
            (("G5", "G6"), 3, _check_raw_triples),
        )
        for names, arity, checker in raw_checks:
            names = [name for name in names if name in requested]
            if not names:
                continue
            tuples, exhaustive_scan = scan(arity)
            for name, witnesses in checker(op, logic, tuples, names, cap).items():
                found[name] = (found[name] + witnesses)[:cap]
                complete[name] = exhaustive_scan

    checks = tuple(
        _result(name, found[name], sampled=not complete[name])
        for name in POSTULATES if name in requested
    )
    report = AuditReport(f"{op.name}@{logic.name}", checks, all(complete.values()))
    logger.info(f"[audit] {report.subject} : {report.summary}")
    return report


# ---------- FIDÉLITÉ ET COMPATIBILITÉ ----------

def _faithful_subjects(a):
    """(étiquette, modèles de K, relation) : classes puis bases brutes en mode syntaxique"""
    logic = a.logic
    subjects = [(c.canonical_base, c.models, r) for c, r in a.items()]
    if a.by_base:
        for base in sorted(a.by_base, key=lambda b: b.sort_key):
            subjects.append((base, models_of(logic, base), a.by_base[base]))
    return subjects


def check_faithful(a, logic=None, syntax_sensitive=False):
    """
    Totalité et (F1)–(F3) d'une affectation.

    (F3) tient par construction en mode sémantique ; en mode syntaxique,
    chaque relation brute est comparée à celle de la base canonique de sa
    classe. syntax_sensitive abandonne (F3).
    """
    logic = logic or a.logic
    cap = _max_witnesses()
    names = logic.worlds
    subjects = _faithful_subjects(a)
    found = {"total": [], "F1": [], "F2": []}

    for base, k_models, relation in subjects:
        label = logic.sentence_names(base)
        totality = is_total(relation)
        if not totality and len(found["total"]) < cap:
            found["total"].append({"k": label, **totality.witness})
        for i in k_models:
            for j in range(relation.size):
                if j in k_models:
                    if relation.strict(i, j) and len(found["F1"]) < cap:
                        found["F1"].append({"k": label, "worlds": [names[i], names[j]]})
                elif not relation.strict(i, j) and len(found["F2"]) < cap:
                    found["F2"].append({"k": label, "worlds": [names[i], names[j]]})

    checks = [_result(name, found[name]) for name in ("total", "F1", "F2")]
    if not syntax_sensitive:
        witnesses = []
        if a.by_base:
            for base in sorted(a.by_base, key=lambda b: b.sort_key):
                canonical = a.relation_for_class(models_of(logic, base))
                if a.by_base[base] != canonical and len(witnesses) < cap:
                    witnesses.append({"k": logic.sentence_names(base)})
        checks.append(_result("F3", witnesses))

    report = AuditReport(f"{a.label}@{logic.name}", tuple(checks))
    logger.info(f"[fidélité] {report.subject} : {report.summary}")
    return report


def check_compatible(op, a, logic=None):
    """Mod(K ∘ Γ) = min(Mod(Γ), ⪯K) pour tous les couples de classes"""
    logic = logic or a.logic
    cap = _max_witnesses()
    outcomes = semantic_function(op, logic)
    classes = enumerate_classes(logic)
    witnesses = []
    for kc in classes:
        relation = a.relation_for(kc.canonical_base)
        for gc in classes:
            result = outcomes[(int(kc.models), int(gc.models))]
            minimum = min_set(relation, gc.models)
            if result != minimum:
                witnesses.append(_pair_witness(logic, kc, gc, result, min=minimum))
                if len(witnesses) >= cap:
                    break
        if len(witnesses) >= cap:
            break
    report = AuditReport(f"{op.name}~{a.label}@{logic.name}", (_result("compatible", witnesses),))
    logger.info(f"[compatibilité] {report.subject} : {report.summary}")
    return report


def check_min_friendly(a, logic=None):
    """min-retractive, min-complete et min-expressible pour chaque ⪯K"""
    logic = logic or a.logic
    cap = _max_witnesses()
    scans = (
        ("min-retractive", is_min_retractive),
        ("min-complete", is_min_complete),
        ("min-expressible", is_min_expressible),
    )
    checks = []
    for name, scan in scans:
        witnesses = []
        for kc, relation in a.items():
            verdict = scan(relation, logic)
            if not verdict:
                witnesses.append({"k": logic.sentence_names(kc.canonical_base), **verdict.witness})
                if len(witnesses) >= cap:
                    break
        checks.append(_result(name, witnesses))
    return AuditReport(f"{a.label}@{logic.name}", tuple(checks))

