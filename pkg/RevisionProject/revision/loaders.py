"""
Lecture et écriture des fichiers JSON du laboratoire.

Formats : logique, relation, affectation, opérateur. Chaque document est
validé par jsonschema (schémas livrés dans schemas/) avant interprétation ;
les diagnostics portent une position (ligne:colonne ou chemin JSON).
"""

import json
import logging
from functools import lru_cache
from pathlib import Path

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from .audit import Assignment
from .change import make_builtin_ex, make_full_meet, make_table
from .exceptions import InputError
from .kernel import LogicSpec, ModelSet, builtin_logic, canonical_base, models_of
from .orders import WorldRelation

logger = logging.getLogger(__name__)

SCHEMA_DIR = Path(__file__).resolve().parent / "schemas"

BUILTIN_PREFIX = "builtin:"


# ---------- FONCTIONS UTILITAIRES ----------

@lru_cache(maxsize=None)
def read_schema(name):
    """Lit un schéma JSON livré avec l'application"""
    path = SCHEMA_DIR / f"{name}.schema.json"
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


def json_path(parts):
    path = "$"
    for part in parts:
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


def validate_document(data, schema_name, source=None):
    """
    Valide un document contre un schéma livré.

    Raises:
        InputError: première erreur pertinente, avec son chemin JSON
    """
    validator = Draft202012Validator(read_schema(schema_name))
    error = best_match(validator.iter_errors(data))
    if error is not None:
        raise InputError(error.message, position=json_path(error.absolute_path), source=source)
    return data


def read_json(path, schema_name):
    """Charge et valide un fichier JSON"""
    source = str(path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"lecture impossible ({exc.strerror})", source=source) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, position=f"{exc.lineno}:{exc.colno}", source=source) from None
    logger.debug(f"[lecture] {source} ({schema_name})")
    return validate_document(data, schema_name, source)


# ---------- LOGIQUES ----------

def logic_from_dict(data, source=None):
    validate_document(data, "logic", source)
    positions = {}
    for index, name in enumerate(data["worlds"]):
        if name in positions:
            raise InputError(f"monde déclaré deux fois : {name!r}", position=f"$.worlds[{index}]", source=source)
        positions[name] = index
    names, models = [], []
    for i, sentence in enumerate(data["sentences"]):
        members = []
        for j, world in enumerate(sentence["models"]):
            if world not in positions:
                raise InputError(
                    f"monde inconnu : {world!r}", position=f"$.sentences[{i}].models[{j}]", source=source
                )
            members.append(positions[world])
        names.append(sentence["name"])
        models.append(ModelSet.of(members))
    return LogicSpec(data["name"], data["worlds"], names, models)


def dump_logic(logic):
    return {
        "name": logic.name,
        "worlds": list(logic.worlds),
        "sentences": [
            {"name": name, "models": logic.world_names(models)}
            for name, models in zip(logic.sentences, logic.models)
        ],
    }


def load_logic(path):
    return logic_from_dict(read_json(path, "logic"), str(path))


def resolve_logic(source):
    """Logique intégrée (builtin:NOM) ou fichier"""
    if source is None:
        raise InputError("--logic est requis")
    if source.startswith(BUILTIN_PREFIX):
        return builtin_logic(source[len(BUILTIN_PREFIX):])
    return load_logic(source)


# ---------- BASES, RELATIONS, AFFECTATIONS ----------

def parse_base(logic, text):
    """Base depuis une liste de noms séparés par des virgules (vide = ∅)"""
    names = [part.strip() for part in (text or "").split(",") if part.strip()]
    return logic.base(*names)


def _check_logic_name(logic, data, source):
    if data["logic"] != logic.name:
        raise InputError(
            f"document pour la logique {data['logic']!r}, attendu {logic.name!r}",
            position="$.logic", source=source,
        )


def _relation(logic, matrix, position, source):
    size = len(logic.worlds)
    if len(matrix) != size or any(len(row) != size for row in matrix):
        raise InputError(f"matrice attendue de taille {size}×{size}", position=position, source=source)
    return WorldRelation(logic, matrix)


def relation_from_dict(logic, data, source=None):
    validate_document(data, "relation", source)
    _check_logic_name(logic, data, source)
    return _relation(logic, data["matrix"], "$.matrix", source)


def dump_relation(relation):
    return {"logic": relation.logic.name, "matrix": relation.to_rows()}


def load_relation(path, logic):
    return relation_from_dict(logic, read_json(path, "relation"), str(path))


def assignment_from_dict(logic, data, source=None, label=None):
    """
    Affectation : une relation par classe K (clé = toute base de la classe).

    En mode « syntactic », les entrées dont la base n'est pas canonique
    alimentent la table par bases brutes.
    """
    validate_document(data, "assignment", source)
    _check_logic_name(logic, data, source)
    syntactic = data.get("mode", "semantic") == "syntactic"
    relations, by_base = {}, {}
    for index, entry in enumerate(data["relations"]):
        position = f"$.relations[{index}]"
        base = logic.base(*entry["base"])
        models = int(models_of(logic, base))
        relation = _relation(logic, entry["matrix"], f"{position}.matrix", source)
        if syntactic and base != canonical_base(logic, models):
            by_base[base] = relation
            continue
        if models in relations:
            raise InputError("deux relations pour la même classe K", position=f"{position}.base", source=source)
        relations[models] = relation
    return Assignment(logic, relations, by_base=by_base if syntactic else None,
                      label=label or Path(source or "assignment").stem)


def dump_assignment(assignment):
    logic = assignment.logic
    return {
        "logic": logic.name,
        "relations": [
            {"base": logic.sentence_names(c.canonical_base), "matrix": r.to_rows()}
            for c, r in assignment.items()
        ],
    }


def load_assignment(path, logic):
    return assignment_from_dict(logic, read_json(path, "assignment"), str(path))


# ---------- OPÉRATEURS ----------

def operator_from_dict(logic, data, source=None):
    validate_document(data, "operator", source)
    kind = data["type"]
    if kind == "full-meet":
        return make_full_meet(logic)
    if kind == "builtin":
        return make_builtin_ex(logic)
    entries = [
        (logic.base(*e["base"]), logic.base(*e["input"]), logic.base(*e["result"]))
        for e in data["entries"]
    ]
    name = Path(source).stem if source else "table"
    return make_table(logic, entries, default=data.get("default", "full-meet"), name=name)


def load_operator(path, logic):
    return operator_from_dict(logic, read_json(path, "operator"), str(path))
