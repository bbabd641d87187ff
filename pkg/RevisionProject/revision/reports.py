"""
Mise en forme des résultats.

Mode texte : listes de paires (strictes, équivalentes, incomparables).
Mode JSON : matrices complètes ; chaque document est validé contre
schemas/report.schema.json avant d'être écrit.
"""

import json

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from .constants import FAITHFUL_LABELS, POSTULATE_LABELS, PROPERTY_LABELS
from .exceptions import ContractViolation
from .loaders import json_path, read_schema

LABELS = {**POSTULATE_LABELS, **FAITHFUL_LABELS, **PROPERTY_LABELS}


# ---------- VALEURS ----------

def format_value(value):
    if isinstance(value, (list, tuple)):
        return "{" + ", ".join(format_value(v) for v in value) + "}"
    if isinstance(value, dict):
        return ", ".join(f"{k}={format_value(v)}" for k, v in value.items())
    return str(value)


def pair_text(logic, pairs, symbol):
    if not pairs:
        return "aucune"
    return ", ".join(f"{logic.worlds[i]}{symbol}{logic.worlds[j]}" for i, j in pairs)


# ---------- RELATIONS ----------

def relation_json(relation):
    return {"worlds": list(relation.logic.worlds), "matrix": relation.to_rows()}


def relation_lines(relation, title):
    logic = relation.logic
    return [
        title,
        f"  strictes      : {pair_text(logic, relation.strict_pairs(), ' ≺ ')}",
        f"  équivalentes  : {pair_text(logic, relation.equivalent_pairs(), ' ~ ')}",
        f"  incomparables : {pair_text(logic, relation.incomparable_pairs(), ' ? ')}",
    ]


# ---------- AUDITS ----------

def audit_lines(report):
    status = "OK" if report.passed else "ÉCHEC"
    scope = "exhaustif" if report.exhaustive else "échantillonné"
    lines = [f"Audit {report.subject} : {status} ({scope})"]
    for check in report.checks:
        label = LABELS.get(check.name, "")
        lines.append(f"  {check.name:<16} {check.verdict:<13} {label}".rstrip())
        for witness in check.witnesses:
            lines.append(f"      témoin : {format_value(witness)}")
    return lines


# ---------- BOUCLES ----------

def loop_lines(logic, loop, index):
    data = loop.to_dict(logic)
    return [
        f"Boucle {index} :",
        f"  Γ  = {format_value(data['gammas'])}  modèles {format_value(data['gamma_models'])}",
        f"  Γ′ = {format_value(data['gamma_primes'])}  modèles {format_value(data['gamma_prime_models'])}",
        f"  K  = {format_value(data['k'])}",
        f"  condition (3) : {len(data['condition3'])} classe(s) certifiée(s)",
    ]


# ---------- REPRÉSENTABILITÉ ----------

def verdict_json(verdict, logic):
    payload = {"status": verdict.status}
    if verdict.k is not None:
        payload["k"] = logic.sentence_names(verdict.k)
    if verdict.cycle:
        payload["cycle"] = verdict.describe_cycle(logic)
    if verdict.reason:
        payload["reason"] = verdict.reason
    if verdict.assignment is not None:
        payload["assignment"] = [
            {"k": logic.sentence_names(c.canonical_base), **relation_json(r)}
            for c, r in verdict.assignment.items()
        ]
    return payload


def verdict_lines(verdict, logic):
    lines = [f"Verdict : {verdict.status}"]
    if verdict.k is not None:
        lines.append(f"  K = {logic.describe_base(verdict.k)}")
    if verdict.cycle:
        lines.append("  cycle forcé :")
        for edge in verdict.describe_cycle(logic):
            lines.append(f"    {edge['from']} ≺ {edge['to']}  (Γ = {format_value(edge['gamma'])})")
    if verdict.reason:
        lines.append(f"  raison : {verdict.reason}")
    if verdict.assignment is not None:
        for c, relation in verdict.assignment.items():
            lines.extend(relation_lines(relation, f"  ⪯ pour K = {logic.describe_base(c.canonical_base)}"))
    return lines


# ---------- SORTIE JSON ----------

def render_json(payload):
    """
    Sérialise un rapport après validation.

    Raises:
        ContractViolation: le rapport ne respecte pas report.schema.json
    """
    error = best_match(Draft202012Validator(read_schema("report")).iter_errors(payload))
    if error is not None:
        raise ContractViolation(f"rapport invalide en {json_path(error.absolute_path)} : {error.message}")
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
