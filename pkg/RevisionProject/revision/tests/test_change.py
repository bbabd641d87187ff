"""
Tests des opérateurs de changement de base.

Ce module vérifie :
- full-meet (cohérent / incohérent)
- L'opérateur d'exemple ∘_Ex sur lex_paper, cas par cas
- Les tables (conflits, couverture, valeur par défaut)
- Les opérateurs induits et l'erreur de min-exprimabilité
- LoopData et l'opérateur de boucle sur lex_core
- La sémanticité des opérateurs intégrés sur toutes les bases brutes
"""

from pathlib import Path

from django.test import SimpleTestCase

from ..audit import Assignment, check_postulates, layered_assignment, raw_tuples
from ..change import (
    LoopData,
    apply,
    compute_b_prime,
    make_builtin_ex,
    make_full_meet,
    make_induced,
    make_loop_operator,
    make_table,
    operators_agree,
    semantic_function,
)
from ..exceptions import ContractViolation, InputError, MinExpressibilityError
from ..kernel import builtin_logic, models_of
from ..loaders import load_operator
from ..orders import WorldRelation

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# Résultats de ∘_Ex pour K = {ψ0} : base de Γ -> mondes de K ∘ Γ
EX_OUTCOMES = {
    (): ["ω0"],
    ("φ4",): ["ω4"],
    ("φ0",): ["ω0"],
    ("φ0", "φ4"): ["ω1", "ω2", "ω3"],
    ("φ1",): ["ω1"],
    ("φ3",): ["ω3"],
    ("φ2",): ["ω2"],
    ("ψ0",): ["ω0"],
    ("ψ1",): ["ω1"],
    ("ψ2",): ["ω2"],
    ("ψ3",): ["ω3"],
    ("ψ4",): ["ω4"],
    ("ψ5",): ["ω5"],
    ("ψ0", "ψ1"): [],
}


def _outcome(logic, op, k, g):
    return logic.world_names(models_of(logic, apply(op, logic.base(*k), logic.base(*g))))


class FullMeetTest(SimpleTestCase):
    """Tests de full-meet"""

    def setUp(self):
        self.logic = builtin_logic("lex_paper")
        self.op = make_full_meet(self.logic)

    def test_consistent_union_is_kept(self):
        self.assertEqual(_outcome(self.logic, self.op, ["φ0"], ["φ4"]), ["ω1", "ω2", "ω3"])

    def test_inconsistent_union_falls_back_to_input(self):
        result = apply(self.op, self.logic.base("ψ0"), self.logic.base("φ1"))
        self.assertEqual(result, self.logic.base("φ1"))

    def test_kind_and_name(self):
        self.assertEqual(self.op.kind, "fullMeet")
        self.assertEqual(self.op.name, "full-meet")


class ExampleOperatorTest(SimpleTestCase):
    """
    Tests de ∘_Ex.

    Objectif : reproduire les 14 résultats pour K = {ψ0}, full-meet ailleurs
    """

    def setUp(self):
        self.logic = builtin_logic("lex_paper")
        self.op = make_builtin_ex(self.logic)

    def test_outcomes_for_psi0(self):
        for gamma, expected in EX_OUTCOMES.items():
            with self.subTest(gamma=gamma):
                self.assertEqual(_outcome(self.logic, self.op, ["ψ0"], list(gamma)), expected)

    def test_guarded_cases_extend_gamma(self):
        base = self.logic.base
        cases = {
            ("φ4",): ("φ4", "ψ4"),
            ("φ1",): ("φ1", "ψ1"),
            ("φ2",): ("φ2", "ψ2"),
            ("φ3",): ("φ3", "ψ3"),
            ("ψ4",): ("ψ4",),
            ("ψ5",): ("ψ5",),
            ("φ0",): ("ψ0", "φ0"),
        }
        for gamma, expected in cases.items():
            with self.subTest(gamma=gamma):
                self.assertEqual(self.op.apply(base("ψ0"), base(*gamma)), base(*expected))

    def test_requires_lex_sentences(self):
        with self.assertRaises(InputError):
            make_builtin_ex(builtin_logic("propositional(2)"))

    def test_equivalent_k_uses_same_cases(self):
        self.assertEqual(_outcome(self.logic, self.op, ["ψ0", "φ0"], ["φ1"]), ["ω1"])

    def test_other_k_is_full_meet(self):
        full = make_full_meet(self.logic)
        for k in (["ψ1"], ["φ4"], []):
            with self.subTest(k=k):
                self.assertEqual(_outcome(self.logic, self.op, k, ["φ2"]), _outcome(self.logic, full, k, ["φ2"]))

    def test_table_fixture_agrees(self):
        table = load_operator(FIXTURES / "ex_table.json", self.logic)
        self.assertIsNone(operators_agree(table, self.op, self.logic))


class TableOperatorTest(SimpleTestCase):
    """Tests de make_table"""

    def setUp(self):
        self.logic = builtin_logic("lex_paper")

    def test_conflicting_entries(self):
        base = self.logic.base
        entries = [(base("ψ0"), base("φ1"), base("ψ1")), (base("ψ0"), base("φ1"), base("ψ2"))]
        with self.assertRaises(InputError):
            make_table(self.logic, entries)

    def test_equivalent_duplicates_accepted(self):
        base = self.logic.base
        entries = [(base("ψ0"), base("φ1"), base("ψ1")), (base("ψ0", "φ0"), base("φ1"), base("ψ1", "φ1"))]
        table = make_table(self.logic, entries)
        self.assertEqual(len(table.entries), 1)

    def test_error_default_requires_full_coverage(self):
        base = self.logic.base
        with self.assertRaises(InputError):
            make_table(self.logic, [(base("ψ0"), base("φ1"), base("ψ1"))], default="error")

    def test_unknown_default(self):
        with self.assertRaises(InputError):
            make_table(self.logic, [], default="random")

    def test_missing_entry_uses_full_meet(self):
        table = make_table(self.logic, [])
        self.assertIsNone(operators_agree(table, make_full_meet(self.logic), self.logic))


class InducedOperatorTest(SimpleTestCase):
    """Tests des opérateurs induits"""

    def test_layered_induces_full_meet(self):
        logic = builtin_logic("lex_paper")
        induced = make_induced(layered_assignment(logic))
        self.assertEqual(induced.name, "induced(layered)")
        self.assertIsNone(operators_agree(induced, make_full_meet(logic), logic))

    def test_non_min_expressible_assignment(self):
        logic = builtin_logic("lex_paper")
        tied = WorldRelation.from_ranks(logic, [0, 1, 1, 1, 0, 2])
        assignment = Assignment.from_function(logic, lambda c: tied, label="tied")
        with self.assertRaises(MinExpressibilityError) as caught:
            make_induced(assignment)
        self.assertEqual(caught.exception.minimum, "{ω0, ω4}")

    def test_semantic_function_covers_class_pairs(self):
        logic = builtin_logic("lex_core")
        table = semantic_function(make_full_meet(logic), logic)
        self.assertEqual(len(table), 12 * 12)


class LoopOperatorTest(SimpleTestCase):
    """
    Tests de la construction sur boucle critique (lex_core).

    Boucle : Γ = ({φ1}, {φ3}, {φ2}), Γ′ = ({ψ1}, {ψ3}, {ψ2}), K = {ψ0}
    """

    def setUp(self):
        self.logic = builtin_logic("lex_core")
        base = self.logic.base
        self.loop = LoopData.build(
            self.logic,
            (base("φ1"), base("φ3"), base("φ2")),
            (base("ψ1"), base("ψ3"), base("ψ2")),
            base("ψ0"),
        )
        self.op = make_loop_operator(self.logic, self.loop)

    def test_b_prime(self):
        self.assertEqual([self.logic.world_names(c.models) for c in self.loop.b_prime], [["ω4"], ["ω5"]])

    def test_outcomes_for_k(self):
        expected = {
            (): ["ω0"],
            ("φ4",): ["ω4"],
            ("φ1",): ["ω2"],
            ("φ3",): ["ω1"],
            ("φ2",): ["ω3"],
            ("ψ5",): ["ω5"],
        }
        for gamma, worlds in expected.items():
            with self.subTest(gamma=gamma):
                self.assertEqual(_outcome(self.logic, self.op, ["ψ0"], list(gamma)), worlds)

    def test_condition_one_checked(self):
        base = self.logic.base
        with self.assertRaises(ContractViolation):
            LoopData.build(self.logic, (base("φ1"), base("φ3"), base("φ2")),
                           (base("ψ1"), base("ψ3"), base("ψ2")), base("φ4"))

    def test_condition_two_checked(self):
        base = self.logic.base
        with self.assertRaises(ContractViolation):
            LoopData.build(self.logic, (base("φ1"), base("φ3"), base("φ2")),
                           (base("ψ2"), base("ψ3"), base("ψ4")), base("ψ0"))

    def test_compute_b_prime_direct(self):
        logic = self.logic
        gammas = tuple(models_of(logic, g) for g in self.loop.gammas)
        primes = tuple(models_of(logic, g) for g in self.loop.gamma_primes)
        b_prime = compute_b_prime(logic, gammas, primes, models_of(logic, self.loop.k))
        self.assertEqual(b_prime, self.loop.b_prime)


def _raw_bases(logic):
    count = len(logic.sentences)
    tuples, exhaustive = raw_tuples(logic, 1, seed=0, max_bases=2 ** count, max_tuples=2 ** count)
    assert exhaustive
    return [pair for (pair,) in tuples]


class SemanticityTest(SimpleTestCase):
    """
    Les opérateurs intégrés ne dépendent que des modèles de K et de Γ.

    Objectif : pour toute base brute K équivalente à {ψ0} et toute base
    brute Γ, K ∘ Γ a les modèles du résultat sur les bases canoniques
    """

    def _assert_semantic(self, op, logic, k_models):
        outcomes = semantic_function(op, logic)
        bases = _raw_bases(logic)
        k_bases = [k for k, mask in bases if mask == int(k_models)]
        self.assertGreater(len(k_bases), 1)
        for k in k_bases:
            for g, g_mask in bases:
                with self.subTest(k=logic.describe_base(k), gamma=logic.describe_base(g)):
                    self.assertEqual(models_of(logic, op.apply(k, g)), outcomes[(int(k_models), g_mask)])

    def test_example_operator(self):
        logic = builtin_logic("lex_paper")
        self._assert_semantic(make_builtin_ex(logic), logic, models_of(logic, logic.base("ψ0")))

    def test_loop_operator(self):
        logic = builtin_logic("lex_core")
        base = logic.base
        loop = LoopData.build(
            logic,
            (base("φ1"), base("φ3"), base("φ2")),
            (base("ψ1"), base("ψ3"), base("ψ2")),
            base("ψ0"),
        )
        self._assert_semantic(make_loop_operator(logic, loop), logic, models_of(logic, base("ψ0")))

    def test_induced_operator_exhaustive_g4(self):
        logic = builtin_logic("horn(2)")
        report = check_postulates(make_induced(layered_assignment(logic)), logic, which=["G4"])
        self.assertTrue(report.exhaustive)
        self.assertTrue(report.passed, report.to_dict())
