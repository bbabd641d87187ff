"""
Tests de l'extraction, du relèvement et de la représentabilité.

Ce module vérifie :
- La relation extraite de ∘_Ex sur lex_paper pour K = {ψ0}
- Les paires détachées
- preorder_lift : succès sur les opérateurs induits (avec repli sur les
  préférences forcées), échecs typés sinon
- representability : les trois verdicts et le cycle témoin
"""

from django.test import SimpleTestCase

from ..audit import check_compatible, check_faithful, check_postulates, layered_assignment, linear_assignment
from ..change import LoopData, apply, make_builtin_ex, make_full_meet, make_induced, make_loop_operator, operators_agree
from ..constants import NOT_REPRESENTABLE, REPRESENTABLE
from ..exceptions import PostulateFailure, TransitivityFailure
from ..extract import (
    detached_pairs,
    extract_assignment,
    extract_relation,
    forced_order,
    forced_strict_graph,
    preorder_lift,
    representability,
)
from ..kernel import LogicSpec, builtin_logic, enumerate_classes, models_of
from ..orders import WorldRelation, is_total, is_transitive, min_set


def _names(logic, pairs):
    return {(logic.worlds[i], logic.worlds[j]) for i, j in pairs}


def _core_loop_operator():
    logic = builtin_logic("lex_core")
    base = logic.base
    loop = LoopData.build(
        logic,
        (base("φ1"), base("φ3"), base("φ2")),
        (base("ψ1"), base("ψ3"), base("ψ2")),
        base("ψ0"),
    )
    return logic, make_loop_operator(logic, loop)


class ExtractionTest(SimpleTestCase):
    """
    Tests de la relation extraite de ∘_Ex (lex_paper, K = {ψ0}).

    Objectif : ω0 sous tous, cycle strict ω1 ≺ ω2 ≺ ω3 ≺ ω1, ω4 sous ω1, ω2, ω3, ω5,
    et (ωi, ω5) reliés dans les deux sens pour i = 1, 2, 3
    """

    def setUp(self):
        self.logic = builtin_logic("lex_paper")
        self.op = make_builtin_ex(self.logic)
        self.relation = extract_relation(self.op, self.logic, models_of(self.logic, self.logic.base("ψ0")))

    def test_strict_pairs(self):
        expected = (
            {("ω0", f"ω{i}") for i in range(1, 6)}
            | {("ω1", "ω2"), ("ω2", "ω3"), ("ω3", "ω1")}
            | {("ω4", "ω1"), ("ω4", "ω2"), ("ω4", "ω3"), ("ω4", "ω5")}
        )
        self.assertEqual(_names(self.logic, self.relation.strict_pairs()), expected)

    def test_two_way_pairs_with_omega5(self):
        self.assertEqual(
            _names(self.logic, self.relation.equivalent_pairs()),
            {("ω1", "ω5"), ("ω2", "ω5"), ("ω3", "ω5")},
        )

    def test_reflexive_and_total(self):
        for i in range(6):
            self.assertTrue(self.relation.leq(i, i))
        self.assertEqual(self.relation.incomparable_pairs(), [])

    def test_no_detached_pairs(self):
        self.assertEqual(detached_pairs(self.op, self.logic, self.logic.base("ψ0")), frozenset())

    def test_detached_pairs_without_singletons(self):
        # seuls Ω et {a} sont exprimables : b et c ne sortent jamais de K ∘ Γ
        logic = LogicSpec("tiny", ["a", "b", "c"], ["p"], [0b001])
        pairs = detached_pairs(make_full_meet(logic), logic, logic.base("p"))
        self.assertEqual(pairs, frozenset({(1, 1), (1, 2), (2, 2)}))

    def test_extracted_assignment_breaks_on_the_cycle(self):
        assignment = extract_assignment(self.op, self.logic)
        self.assertEqual(assignment.label, "extracted(ex)")
        report = check_compatible(self.op, assignment)
        self.assertFalse(report.passed)
        witness = report.check("compatible").witnesses[0]
        self.assertEqual((witness["k"], witness["gamma"]), (["ψ0"], ["φ0", "φ4"]))
        self.assertEqual(witness["min"], [])

    def test_extracted_assignment_of_full_meet_is_compatible(self):
        op = make_full_meet(self.logic)
        self.assertTrue(check_compatible(op, extract_assignment(op, self.logic)).passed)

    def test_forced_graph_cycle_for_ex(self):
        graph = forced_strict_graph(self.op, self.logic)
        cycle = graph.find_cycle(models_of(self.logic, self.logic.base("ψ0")))
        self.assertEqual([(u, v) for u, v, _ in cycle], [(1, 2), (2, 3), (3, 1)])


class PreorderLiftTest(SimpleTestCase):
    """Tests de preorder_lift"""

    def test_lift_of_induced_operator_preserves_results(self):
        logic = builtin_logic("lex_paper")
        op = make_induced(linear_assignment(logic))
        for kc in enumerate_classes(logic):
            lifted = preorder_lift(op, logic, kc.canonical_base)
            self.assertTrue(is_total(lifted))
            for gc in enumerate_classes(logic):
                with self.subTest(k=logic.describe_base(kc.canonical_base), gamma=logic.describe_base(gc.canonical_base)):
                    result = models_of(logic, apply(op, kc.canonical_base, gc.canonical_base))
                    self.assertEqual(min_set(lifted, gc.models), result)

    def test_non_transitive_extraction_uses_forced_preferences(self):
        logic = builtin_logic("lex_paper")
        op = make_induced(linear_assignment(logic))
        k = logic.base("ψ0")
        extracted = extract_relation(op, logic, models_of(logic, k))
        self.assertFalse(is_transitive(extracted))
        self.assertEqual(detached_pairs(op, logic, k), frozenset())
        expected = WorldRelation.from_ranks(logic, [0, 1, 2, 3, 2, 2])
        self.assertEqual(forced_order(op, logic, models_of(logic, k)), expected)
        self.assertEqual(preorder_lift(op, logic, k), expected)

    def test_forced_order_rejects_contradictory_results(self):
        logic = builtin_logic("lex_paper")
        self.assertIsNone(forced_order(make_builtin_ex(logic), logic, models_of(logic, logic.base("ψ0"))))

    def test_lift_fails_on_ex(self):
        logic = builtin_logic("lex_paper")
        with self.assertRaises(TransitivityFailure) as caught:
            preorder_lift(make_builtin_ex(logic), logic, logic.base("ψ0"))
        self.assertEqual(len(caught.exception.triple), 3)

    def test_lift_of_full_meet_is_layered(self):
        logic = builtin_logic("horn(2)")
        layered = layered_assignment(logic)
        for c, relation in layered.items():
            self.assertEqual(preorder_lift(make_full_meet(logic), logic, c.canonical_base), relation)


class RepresentabilityTest(SimpleTestCase):
    """
    Tests des verdicts de représentabilité.

    Objectif : représentable sur propositional(2), non représentable avec un
    cycle sur {ω1, ω2, ω3} pour l'opérateur de boucle de lex_core
    """

    def test_full_meet_on_propositional_is_representable(self):
        logic = builtin_logic("propositional(2)")
        op = make_full_meet(logic)
        verdict = representability(op, logic)
        self.assertEqual(verdict.status, REPRESENTABLE)
        self.assertTrue(check_faithful(verdict.assignment).passed)
        self.assertTrue(check_compatible(op, verdict.assignment).passed)
        self.assertIsNone(operators_agree(make_induced(verdict.assignment), op, logic))

    def test_operator_induced_by_linear_preorders_is_representable(self):
        logic = builtin_logic("lex_paper")
        op = make_induced(linear_assignment(logic))
        verdict = representability(op, logic)
        self.assertEqual(verdict.status, REPRESENTABLE, verdict.reason)
        self.assertIsNone(operators_agree(make_induced(verdict.assignment), op, logic))

    def test_loop_operator_not_representable(self):
        logic, op = _core_loop_operator()
        verdict = representability(op, logic)
        self.assertEqual(verdict.status, NOT_REPRESENTABLE)
        self.assertEqual(verdict.k, logic.base("ψ0"))
        self.assertEqual(len(verdict.cycle), 3)
        self.assertEqual({u for u, _, _ in verdict.cycle}, {1, 2, 3})
        described = verdict.describe_cycle(logic)
        self.assertEqual([(e["from"], e["to"]) for e in described], [("ω1", "ω3"), ("ω3", "ω2"), ("ω2", "ω1")])
        self.assertEqual([e["gamma"] for e in described], [["φ3"], ["φ2"], ["φ1"]])

    def test_failing_operator_raises(self):
        logic = builtin_logic("lex_paper")
        with self.assertRaises(PostulateFailure) as caught:
            representability(make_builtin_ex(logic), logic)
        self.assertFalse(caught.exception.report.passed)

    def test_precomputed_report_is_reused(self):
        logic = builtin_logic("lex_paper")
        op = make_builtin_ex(logic)
        report = check_postulates(op, logic, which=["G1"])
        verdict = representability(op, logic, report=report)
        self.assertEqual(verdict.status, NOT_REPRESENTABLE)
