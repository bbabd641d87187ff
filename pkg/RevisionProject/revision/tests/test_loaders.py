"""
Tests de lecture des fichiers JSON.

Ce module vérifie :
- Le chargement de la logique d'exemple livrée dans fixtures/
- Les diagnostics : ligne:colonne pour le JSON mal formé, chemin JSON sinon
- builtin:NOM, les bases en ligne de commande
- Relations, affectations (sémantiques et syntaxiques) et opérateurs
"""

import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from ..audit import linear_assignment
from ..change import make_builtin_ex, operators_agree
from ..exceptions import InputError
from ..kernel import EMPTY_BASE, builtin_logic, enumerate_classes, models_of
from ..loaders import (
    assignment_from_dict,
    dump_assignment,
    dump_logic,
    dump_relation,
    load_logic,
    load_operator,
    logic_from_dict,
    operator_from_dict,
    parse_base,
    relation_from_dict,
    resolve_logic,
)
from ..orders import WorldRelation

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


class LogicFileTest(SimpleTestCase):
    """
    Tests du format logique.

    Objectif : toute erreur porte la source et sa position
    """

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def _write(self, name, text):
        path = Path(self.tmp.name) / name
        path.write_text(text, encoding="utf-8")
        return path

    def test_fixture_matches_builtin(self):
        logic = load_logic(FIXTURES / "lex_paper.json")
        self.assertEqual(logic.name, "lex_paper")
        self.assertEqual(len(enumerate_classes(logic)), 14)
        self.assertEqual(logic.world_names(models_of(logic, logic.base("φ3"))), ["ω1", "ω3"])
        self.assertIsNot(logic, builtin_logic("lex_paper"))

    def test_malformed_json_reports_line_and_column(self):
        path = self._write("broken.json", '{"name": "x",\n  "worlds": [}')
        with self.assertRaises(InputError) as caught:
            load_logic(path)
        self.assertTrue(caught.exception.position.startswith("2:"))
        self.assertEqual(caught.exception.source, str(path))

    def test_schema_error_reports_json_path(self):
        data = {"name": "x", "worlds": ["a"], "sentences": [{"name": "p", "models": "a"}]}
        with self.assertRaises(InputError) as caught:
            logic_from_dict(data, "inline")
        self.assertEqual(caught.exception.position, "$.sentences[0].models")
        self.assertTrue(caught.exception.diagnostic().startswith("inline:$.sentences[0].models: "))

    def test_unknown_world(self):
        data = {"name": "x", "worlds": ["a"], "sentences": [{"name": "p", "models": ["b"]}]}
        with self.assertRaises(InputError) as caught:
            logic_from_dict(data)
        self.assertEqual(caught.exception.position, "$.sentences[0].models[0]")

    def test_duplicate_world(self):
        data = {"name": "x", "worlds": ["a", "a"], "sentences": []}
        with self.assertRaises(InputError) as caught:
            logic_from_dict(data)
        self.assertEqual(caught.exception.position, "$.worlds[1]")

    def test_missing_file(self):
        with self.assertRaises(InputError) as caught:
            load_logic(Path(self.tmp.name) / "absent.json")
        self.assertIsNone(caught.exception.position)

    def test_dump_then_load_keeps_models(self):
        logic = builtin_logic("horn(2)")
        path = self._write("horn.json", json.dumps(dump_logic(logic), ensure_ascii=False))
        loaded = load_logic(path)
        self.assertEqual(loaded.worlds, logic.worlds)
        self.assertEqual(loaded.models, logic.models)


class ResolutionTest(SimpleTestCase):
    """Tests de resolve_logic et parse_base"""

    def test_builtin_prefix(self):
        self.assertIs(resolve_logic("builtin:lex_core"), builtin_logic("lex_core"))

    def test_logic_required(self):
        with self.assertRaises(InputError):
            resolve_logic(None)

    def test_unknown_builtin(self):
        with self.assertRaises(InputError):
            resolve_logic("builtin:modal(1)")

    def test_parse_base(self):
        logic = builtin_logic("lex_paper")
        self.assertEqual(parse_base(logic, "ψ0, φ0"), logic.base("ψ0", "φ0"))
        self.assertEqual(parse_base(logic, ""), EMPTY_BASE)
        with self.assertRaises(InputError):
            parse_base(logic, "ψ0,χ")


class RelationAndAssignmentTest(SimpleTestCase):
    """Tests des relations et des affectations"""

    def setUp(self):
        self.logic = builtin_logic("lex_paper")

    def test_relation_logic_mismatch(self):
        data = dump_relation(WorldRelation.identity(self.logic))
        data["logic"] = "lex_core"
        with self.assertRaises(InputError) as caught:
            relation_from_dict(self.logic, data)
        self.assertEqual(caught.exception.position, "$.logic")

    def test_relation_size_checked(self):
        data = {"logic": "lex_paper", "matrix": [[1, 0], [0, 1]]}
        with self.assertRaises(InputError) as caught:
            relation_from_dict(self.logic, data)
        self.assertEqual(caught.exception.position, "$.matrix")

    def test_assignment_round_trip(self):
        assignment = linear_assignment(self.logic)
        loaded = assignment_from_dict(self.logic, dump_assignment(assignment), label="copie")
        self.assertEqual(loaded.label, "copie")
        self.assertFalse(loaded.syntactic)
        for (c, relation), (_, original) in zip(loaded.items(), assignment.items()):
            self.assertEqual(relation, original, self.logic.describe_base(c.canonical_base))

    def test_two_relations_for_one_class(self):
        data = dump_assignment(linear_assignment(self.logic))
        data["relations"].append({"base": ["ψ0", "φ0"], "matrix": data["relations"][0]["matrix"]})
        with self.assertRaises(InputError) as caught:
            assignment_from_dict(self.logic, data)
        self.assertEqual(caught.exception.position, f"$.relations[{len(data['relations']) - 1}].base")

    def test_syntactic_mode_keeps_raw_bases(self):
        data = dump_assignment(linear_assignment(self.logic))
        other = WorldRelation.from_ranks(self.logic, [0, 5, 4, 3, 2, 1])
        data["mode"] = "syntactic"
        data["relations"].append({"base": ["ψ0", "φ0"], "matrix": other.to_rows()})
        assignment = assignment_from_dict(self.logic, data)
        self.assertTrue(assignment.syntactic)
        self.assertEqual(assignment.relation_for(self.logic.base("ψ0", "φ0")), other)
        self.assertNotEqual(assignment.relation_for(self.logic.base("ψ0")), other)


class OperatorFileTest(SimpleTestCase):
    """Tests du format opérateur"""

    def setUp(self):
        self.logic = builtin_logic("lex_paper")

    def test_full_meet(self):
        self.assertEqual(operator_from_dict(self.logic, {"type": "full-meet"}).kind, "fullMeet")

    def test_builtin_fixture(self):
        op = load_operator(FIXTURES / "ex_operator.json", self.logic)
        self.assertIsNone(operators_agree(op, make_builtin_ex(self.logic), self.logic))

    def test_table_named_after_file(self):
        self.assertEqual(load_operator(FIXTURES / "ex_table.json", self.logic).name, "ex_table")

    def test_unknown_type_rejected(self):
        with self.assertRaises(InputError):
            operator_from_dict(self.logic, {"type": "random"})
