"""
Surface en ligne de commande du laboratoire.

`run(RunConfig)` exécute une commande et renvoie (code de sortie, texte) ;
les commandes de gestion Django (`manage.py audit ...`) n'en sont que
l'habillage. Codes : 0 succès, 1 vérification en échec, 2 entrée invalide.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from django.core.management.base import BaseCommand, CommandError

from .audit import (
    check_compatible,
    check_faithful,
    check_min_friendly,
    check_postulates,
    layered_assignment,
    linear_assignment,
)
from .change import make_builtin_ex, make_full_meet, make_loop_operator
from .constants import (
    BUILTIN_OPERATOR_NAMES,
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    INPUT_ERROR_MESSAGE,
    REPRESENTABLE,
)
from .demo import build_demo
from .exceptions import InputError, MinPreservationFailure, PostulateFailure, TransitivityFailure
from .extract import detached_pairs, extract_assignment, extract_relation, preorder_lift, representability
from .kernel import check_desk_scale, enumerate_classes, expressible_closure, models_of
from .loaders import BUILTIN_PREFIX, load_assignment, load_operator, parse_base, resolve_logic
from .loops import find_critical_loops, is_disjunctive
from .reports import (
    audit_lines,
    format_value,
    loop_lines,
    relation_json,
    relation_lines,
    render_json,
    verdict_json,
    verdict_lines,
)

logger = logging.getLogger(__name__)

COMMANDS = ("info", "audit", "extract", "lift", "loops", "represent", "demo")

BUILTIN_ASSIGNMENTS = {"layered": layered_assignment, "linear": linear_assignment}


@dataclass(frozen=True)
class RunConfig:
    """Paramètres d'une exécution ; `seed` et les plafonds suivent LAB_CONFIG par défaut"""

    command: str
    logic: Optional[str] = None
    operator: Optional[str] = None
    assignment: Optional[str] = None
    base: Optional[str] = None
    json: bool = False
    seed: Optional[int] = None
    max_classes: Optional[int] = None
    loop_limit: Optional[int] = None
    syntax_sensitive: bool = False


# ---------- RÉSOLUTION DES ENTRÉES ----------

def resolve_operator(source, logic, loop_limit=None):
    """builtin:full-meet, builtin:ex, builtin:loop (première boucle critique) ou fichier"""
    if source is None:
        raise InputError("--operator est requis")
    if not source.startswith(BUILTIN_PREFIX):
        return load_operator(source, logic)
    name = source[len(BUILTIN_PREFIX):]
    if name == "full-meet":
        return make_full_meet(logic)
    if name == "ex":
        return make_builtin_ex(logic)
    if name == "loop":
        loops = find_critical_loops(logic, loop_limit)
        if not loops:
            raise InputError(f"aucune boucle critique dans {logic.name}", source=source)
        return make_loop_operator(logic, loops[0].to_loop_data(logic))
    raise InputError(f"opérateur intégré inconnu (attendu : {', '.join(BUILTIN_OPERATOR_NAMES)})", source=source)


def resolve_assignment(source, logic, operator=None):
    """extracted (depuis --operator), builtin:layered, builtin:linear ou fichier"""
    if source == "extracted":
        if operator is None:
            raise InputError("--assignment extracted exige --operator")
        return extract_assignment(operator, logic)
    if source.startswith(BUILTIN_PREFIX):
        build = BUILTIN_ASSIGNMENTS.get(source[len(BUILTIN_PREFIX):])
        if build is None:
            raise InputError("affectation intégrée inconnue (attendu : layered, linear)", source=source)
        return build(logic)
    return load_assignment(source, logic)


def _required_base(config, logic):
    if config.base is None:
        raise InputError("--base est requis")
    return parse_base(logic, config.base)


# ---------- COMMANDES ----------

def _info(config, logic):
    classes = enumerate_classes(logic)
    disjunctive = is_disjunctive(logic)
    payload = {
        "worlds": list(logic.worlds),
        "sentences": len(logic.sentences),
        "closure": len(expressible_closure(logic)),
        "classes": [
            {"models": logic.world_names(c.models), "base": logic.sentence_names(c.canonical_base)}
            for c in classes
        ],
        "disjunctive": {"holds": disjunctive.holds, "witness": disjunctive.witness},
    }
    lines = [
        f"Logique {logic.name} : {len(logic.worlds)} mondes, {len(logic.sentences)} phrases, {len(classes)} classes",
        f"Disjonctive : {'oui' if disjunctive.holds else 'non'}",
    ]
    if not disjunctive.holds:
        lines.append(f"  témoin : {format_value(disjunctive.witness)}")
    for c in classes:
        lines.append(f"  {logic.describe_models(c.models):<28} {logic.describe_base(c.canonical_base)}")
    return EXIT_OK, payload, lines


def _audit(config, logic):
    if config.operator is None and config.assignment is None:
        raise InputError("--operator ou --assignment est requis")
    operator = resolve_operator(config.operator, logic, config.loop_limit) if config.operator else None
    reports = []
    if operator is not None:
        reports.append(check_postulates(
            operator, logic, seed=config.seed, syntax_sensitive=config.syntax_sensitive
        ))
    if config.assignment is not None:
        assignment = resolve_assignment(config.assignment, logic, operator)
        reports.append(check_faithful(assignment, logic, syntax_sensitive=config.syntax_sensitive))
        reports.append(check_min_friendly(assignment, logic))
        if operator is not None:
            reports.append(check_compatible(operator, assignment, logic))
    passed = all(r.passed for r in reports)
    lines = []
    for report in reports:
        lines.extend(audit_lines(report))
    return (EXIT_OK if passed else EXIT_CHECK_FAILED), {"reports": [r.to_dict() for r in reports]}, lines


def _extract(config, logic):
    operator = resolve_operator(config.operator, logic, config.loop_limit)
    base = _required_base(config, logic)
    relation = extract_relation(operator, logic, models_of(logic, base))
    detached = sorted(detached_pairs(operator, logic, base))
    payload = {
        "k": logic.sentence_names(base),
        "relation": relation_json(relation),
        "detached": [[logic.worlds[i], logic.worlds[j]] for i, j in detached],
    }
    lines = relation_lines(relation, f"Relation extraite de {operator.name} pour K = {logic.describe_base(base)}")
    lines.append(f"  détachées     : {format_value(payload['detached']) if detached else 'aucune'}")
    return EXIT_OK, payload, lines


def _lift(config, logic):
    operator = resolve_operator(config.operator, logic, config.loop_limit)
    base = _required_base(config, logic)
    try:
        lifted = preorder_lift(operator, logic, base)
    except (TransitivityFailure, MinPreservationFailure) as exc:
        return EXIT_CHECK_FAILED, {"k": logic.sentence_names(base), "failure": str(exc)}, [f"Relèvement impossible : {exc}"]
    payload = {"k": logic.sentence_names(base), "relation": relation_json(lifted)}
    return EXIT_OK, payload, relation_lines(lifted, f"Préordre relevé pour K = {logic.describe_base(base)}")


def _loops(config, logic):
    loops = find_critical_loops(logic, config.loop_limit)
    payload = {"loop_total": loops.total, "loops": [loop.to_dict(logic) for loop in loops]}
    lines = [f"{loops.total} boucle(s) critique(s) dans {logic.name}, {len(loops)} affichée(s)"]
    for index, loop in enumerate(loops):
        lines.extend(loop_lines(logic, loop, index))
    return EXIT_OK, payload, lines


def _represent(config, logic):
    operator = resolve_operator(config.operator, logic, config.loop_limit)
    try:
        verdict = representability(operator, logic, seed=config.seed, syntax_sensitive=config.syntax_sensitive)
    except PostulateFailure as exc:
        payload = {"reports": [exc.report.to_dict()]}
        return EXIT_CHECK_FAILED, payload, [str(exc)] + audit_lines(exc.report)
    code = EXIT_OK if verdict.status == REPRESENTABLE else EXIT_CHECK_FAILED
    return code, {"verdict": verdict_json(verdict, logic)}, verdict_lines(verdict, logic)


HANDLERS = {
    "info": _info,
    "audit": _audit,
    "extract": _extract,
    "lift": _lift,
    "loops": _loops,
    "represent": _represent,
}


def run(config):
    """
    Exécute une commande.

    Returns:
        (code de sortie, texte à écrire sur la sortie standard)
    """
    if config.command not in COMMANDS:
        raise InputError(f"commande inconnue : {config.command!r}")
    envelope = {"command": config.command}
    try:
        if config.command == "demo":
            ok, payload, lines = build_demo(seed=config.seed)
            code = EXIT_OK if ok else EXIT_CHECK_FAILED
        else:
            logic = resolve_logic(config.logic)
            check_desk_scale(logic, config.max_classes)
            envelope["logic"] = logic.name
            code, payload, lines = HANDLERS[config.command](config, logic)
    except InputError as exc:
        logger.warning(f"[{config.command}] {INPUT_ERROR_MESSAGE} : {exc.diagnostic()}")
        code, payload, lines = EXIT_INPUT_ERROR, {"error": exc.diagnostic()}, [f"{INPUT_ERROR_MESSAGE} : {exc.diagnostic()}"]

    if config.json:
        return code, render_json({**envelope, "exit_code": code, **payload})
    return code, "\n".join(lines) + "\n"


# ---------- COMMANDES DE GESTION ----------

class LabCommand(BaseCommand):
    """Base des commandes `manage.py` : options communes et codes de sortie"""

    command_name = None
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument("--logic", help="builtin:NOM (lex_paper, lex_core, propositional(n), horn(n)) ou fichier JSON")
        parser.add_argument("--operator", help="builtin:full-meet, builtin:ex, builtin:loop ou fichier JSON")
        parser.add_argument("--assignment", help="extracted, builtin:layered, builtin:linear ou fichier JSON")
        parser.add_argument("--base", help="phrases de K séparées par des virgules (vide pour ∅)")
        parser.add_argument("--json", action="store_true", help="rapport JSON validé")
        parser.add_argument("--seed", type=int, help="graine de l'échantillonnage (G4)")
        parser.add_argument("--max-classes", type=int, help="plafond du nombre de classes sémantiques (4096 par défaut ; propositional(4) en compte 65536)")
        parser.add_argument("--loop-limit", type=int, help="nombre maximal de boucles retournées")
        parser.add_argument("--syntax-sensitive", action="store_true", help="abandonne (G4) et (F3)")

    def handle(self, *args, **options):
        config = RunConfig(
            command=self.command_name,
            logic=options.get("logic"),
            operator=options.get("operator"),
            assignment=options.get("assignment"),
            base=options.get("base"),
            json=options.get("json", False),
            seed=options.get("seed"),
            max_classes=options.get("max_classes"),
            loop_limit=options.get("loop_limit"),
            syntax_sensitive=options.get("syntax_sensitive", False),
        )
        code, text = run(config)
        self.stdout.write(text, ending="")
        if code != EXIT_OK:
            raise CommandError(f"{self.command_name} : code de sortie {code}", returncode=code)
