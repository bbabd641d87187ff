"""
Exceptions du laboratoire.

Les échecs de postulats ou de propriétés sont des verdicts (voir audit.py) ;
les exceptions ci-dessous signalent des entrées invalides, des contrats
violés ou des constructions impossibles.
"""


class LabError(Exception):
    """Racine des erreurs du laboratoire"""


class InputError(LabError, ValueError):
    """
    Entrée invalide : identifiant inconnu, plafond dépassé, fichier mal formé.

    Args:
        message: description lisible de l'erreur
        position: emplacement dans la source (``ligne:colonne`` ou chemin JSON)
        source: fichier ou nom intégré concerné
    """

    def __init__(self, message, position=None, source=None):
        self.message = message
        self.position = position
        self.source = source
        super().__init__(self.diagnostic())

    def diagnostic(self):
        parts = [p for p in (self.source, self.position) if p]
        if parts:
            return f"{':'.join(str(p) for p in parts)}: {self.message}"
        return self.message


class ContractViolation(LabError):
    """Précondition d'une opération non respectée"""


class MinExpressibilityError(LabError):
    """L'affectation n'est pas min-exprimable pour le couple (classe K, classe Γ)"""

    def __init__(self, k_class, gamma_class, minimum):
        self.k_class = k_class
        self.gamma_class = gamma_class
        self.minimum = minimum
        super().__init__(
            f"min(Mod(Γ), ⪯K) non exprimable : K={k_class}, Γ={gamma_class}, min={minimum}"
        )


class TransitivityFailure(LabError):
    """La relation extraite privée des paires détachées n'est pas transitive"""

    def __init__(self, triple):
        self.triple = tuple(triple)
        a, b, c = self.triple
        super().__init__(f"transitivité violée : {a} ⪯ {b}, {b} ⪯ {c} mais pas {a} ⪯ {c}")


class MinPreservationFailure(LabError):
    """L'extension totale change l'ensemble des minimaux d'une classe"""

    def __init__(self, gamma_class, expected, obtained):
        self.gamma_class = gamma_class
        self.expected = expected
        self.obtained = obtained
        super().__init__(
            f"minimaux non préservés sur Γ={gamma_class} : attendu {expected}, obtenu {obtained}"
        )


class PostulateFailure(LabError):
    """L'opérateur échoue à l'audit (G1)–(G6) ; la question posée n'a pas de sens"""

    def __init__(self, report):
        self.report = report
        failed = ", ".join(c.name for c in report.checks if not c.passed)
        super().__init__(f"postulats non satisfaits par {report.subject} : {failed}")
