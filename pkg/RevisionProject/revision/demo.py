"""
Démonstration reproductible sur la logique d'exemple.

Chaque section confronte une affirmation publiée (constants.PUBLISHED_CLAIMS)
au résultat calculé et joint la note de divergence correspondante. Aucune
donnée variable (date, durée) n'entre dans la sortie : deux exécutions
produisent les mêmes octets.
"""

import logging

from .audit import check_postulates
from .change import make_builtin_ex
from .constants import DIVERGENCE_NOTES, NOT_REPRESENTABLE, PUBLISHED_CLAIMS, PUBLISHED_EX_STRICT_LISTING
from .extract import extract_relation
from .kernel import builtin_logic, enumerate_classes, models_of
from .loops import counterexample_pipeline, explain_candidate, find_critical_loops, is_disjunctive
from .reports import audit_lines, format_value, relation_lines, verdict_lines

logger = logging.getLogger(__name__)

LOOP_CANDIDATE = (("φ1",), ("φ2",), ("φ3",))


def _section(key, computed, agrees):
    return {
        "claim": PUBLISHED_CLAIMS[key],
        "computed": computed,
        "agrees": agrees,
        "note": None if agrees else DIVERGENCE_NOTES[key],
    }


def _extraction_section(logic):
    relation = extract_relation(make_builtin_ex(logic), logic, models_of(logic, logic.base("ψ0")))
    names = logic.worlds
    computed = {(names[i], names[j]) for i, j in relation.strict_pairs()}
    published = set(PUBLISHED_EX_STRICT_LISTING)
    section = _section("extraction", {
        "strict": [list(p) for p in sorted(computed)],
        "published_only": [list(p) for p in sorted(published - computed)],
        "computed_only": [list(p) for p in sorted(computed - published)],
    }, computed == published)
    return section, relation


def _loop_section(lex, core):
    candidate = tuple(lex.base(*names) for names in LOOP_CANDIDATE)
    loop, rejection = explain_candidate(lex, candidate)
    core_loops = find_critical_loops(core)
    computed = {
        "lex_paper": {"loop": loop is not None, "rejection": rejection},
        "lex_core": {
            "total": core_loops.total,
            "first": core_loops[0].to_dict(core) if core_loops else None,
        },
    }
    return _section("critical_loop", computed, loop is not None)


def build_demo(seed=None):
    """
    Construit la démonstration.

    Returns:
        (ok, payload JSON, lignes de texte) ; ok est faux si la chaîne de
        contre-exemple ne se comporte pas comme attendu
    """
    lex = builtin_logic("lex_paper")
    core = builtin_logic("lex_core")
    propositional = builtin_logic("propositional(2)")

    disjunctive = is_disjunctive(lex)
    extraction, relation = _extraction_section(lex)
    ex_audit = check_postulates(make_builtin_ex(lex), lex, seed=seed)
    postulates = _section("ex_postulates", ex_audit.to_dict(), ex_audit.passed)
    loop = _loop_section(lex, core)

    core_run = counterexample_pipeline(core, seed=seed)
    b_prime = [core.world_names(c.models) for c in core_run.b_prime]
    claimed = [core.world_names(models_of(core, core.base("φ4")))]
    b_prime_section = _section("b_prime", b_prime, b_prime == claimed)
    plain_run = counterexample_pipeline(propositional, seed=seed)

    ok = (
        core_run.passed and core_run.verdict is not None
        and core_run.verdict.status == NOT_REPRESENTABLE and plain_run.passed
    )
    payload = {
        "logic": lex.name,
        "classes": len(enumerate_classes(lex)),
        "disjunctive": {"holds": disjunctive.holds, "witness": disjunctive.witness},
        "sections": {
            "extraction": extraction,
            "ex_postulates": postulates,
            "critical_loop": loop,
            "b_prime": b_prime_section,
        },
        "pipelines": {
            core.name: {
                "loop_total": core_run.loop_total,
                "audit": core_run.audit.to_dict() if core_run.audit else None,
                "verdict": core_run.verdict.status if core_run.verdict else None,
                "cycle": core_run.verdict.describe_cycle(core) if core_run.verdict else [],
                "findings": core_run.findings,
            },
            propositional.name: {
                "loop_total": plain_run.loop_total,
                "lifted": [list(item) for item in plain_run.lifted],
                "findings": plain_run.findings,
            },
        },
    }

    lines = [
        f"Logique {lex.name} : {payload['classes']} classes sémantiques",
        f"Disjonctive : {'oui' if disjunctive.holds else 'non'}"
        + ("" if disjunctive.holds else f" (union {format_value(disjunctive.witness['union'])})"),
        "",
    ]
    for key, section in payload["sections"].items():
        lines.append(f"[{key}] {'conforme' if section['agrees'] else 'divergent'}")
        lines.append(f"  publié : {section['claim']}")
        if section["note"]:
            lines.append(f"  note   : {section['note']}")
        if key == "extraction":
            lines.extend(relation_lines(relation, "  relation extraite pour K = {ψ0} :"))
            lines.append(f"  publié seulement : {format_value(section['computed']['published_only'])}")
        elif key == "ex_postulates":
            lines.extend("  " + line for line in audit_lines(ex_audit))
        elif key == "critical_loop":
            rejection = section["computed"]["lex_paper"]["rejection"]
            if rejection:
                lines.append(f"  lex_paper : rejet, {format_value(rejection)}")
            lines.append(f"  lex_core  : {section['computed']['lex_core']['total']} boucle(s)")
        elif key == "b_prime":
            lines.append(f"  calculé : {format_value(b_prime)}")
        lines.append("")

    lines.append(f"Chaîne {core.name} : {core_run.loop_total} boucle(s)")
    if core_run.verdict:
        lines.extend("  " + line for line in verdict_lines(core_run.verdict, core))
    lines.append(f"Chaîne {propositional.name} : {plain_run.loop_total} boucle(s)")
    for name, status in plain_run.lifted:
        lines.append(f"  {name} : {status}")
    for finding in core_run.findings + plain_run.findings:
        lines.append(f"  écart : {finding}")

    logger.info(f"[démo] terminée, ok={ok}")
    return ok, payload, lines
