# Logiques intégrées
BUILTIN_LOGIC_NAMES = ('lex_paper', 'lex_core', 'propositional(n)', 'horn(n)')

# Opérateurs intégrés (préfixe builtin: en ligne de commande)
BUILTIN_OPERATOR_NAMES = ('full-meet', 'ex', 'loop')

# Mondes de la logique d'exemple L_Ex
LEX_WORLDS = ('ω0', 'ω1', 'ω2', 'ω3', 'ω4', 'ω5')

# Phrases de L_Ex, dans l'ordre de déclaration, avec leurs modèles
LEX_PAPER_SENTENCES = (
    ('ψ0', ('ω0',)),
    ('ψ1', ('ω1',)),
    ('ψ2', ('ω2',)),
    ('ψ3', ('ω3',)),
    ('ψ4', ('ω4',)),
    ('ψ5', ('ω5',)),
    ('φ0', ('ω0', 'ω1', 'ω2', 'ω3')),
    ('φ1', ('ω1', 'ω2')),
    ('φ2', ('ω2', 'ω3')),
    ('φ3', ('ω3', 'ω1')),
    ('φ4', ('ω1', 'ω2', 'ω3', 'ω4', 'ω5')),
)

# Base K de l'opérateur d'exemple ∘_Ex
EX_BASE = ('ψ0',)

# Cas gardés de ∘_Ex, essayés dans l'ordre : (phrase ajoutée, doit être cohérente, doit être incohérente)
EX_GUARDED_CASES = (
    ('ψ4', None),
    ('ψ1', 'ψ3'),
    ('ψ2', 'ψ1'),
    ('ψ3', 'ψ2'),
)

# Libellés des postulats
POSTULATE_LABELS = {
    'G1': "K ∘ Γ ⊨ Γ",
    'G2': "si K ∪ Γ est cohérent, K ∘ Γ ≡ K ∪ Γ",
    'G3': "si Γ est cohérent, K ∘ Γ est cohérent",
    'G4': "si K1 ≡ K2 et Γ1 ≡ Γ2, K1 ∘ Γ1 ≡ K2 ∘ Γ2",
    'G5': "(K ∘ Γ1) ∪ Γ2 ⊨ K ∘ (Γ1 ∪ Γ2)",
    'G6': "si (K ∘ Γ1) ∪ Γ2 est cohérent, K ∘ (Γ1 ∪ Γ2) ⊨ (K ∘ Γ1) ∪ Γ2",
}

POSTULATES = tuple(POSTULATE_LABELS)

FAITHFUL_LABELS = {
    'total': "chaque ⪯K est total",
    'F1': "pas de préférence stricte entre modèles de K",
    'F2': "modèles de K strictement sous les non-modèles",
    'F3': "bases équivalentes, relations égales",
}

PROPERTY_LABELS = {
    'min-retractive': "tout ω′ ⪯ ω minimal dans Mod(Γ) est minimal",
    'min-complete': "Mod(Γ) non vide a des minimaux",
    'min-expressible': "min(Mod(Γ), ⪯K) est exprimable",
    'compatible': "Mod(K ∘ Γ) = min(Mod(Γ), ⪯K)",
}

# Verdicts des rapports
VERDICT_PASS = 'pass'
VERDICT_FAIL = 'fail'
VERDICT_SAMPLED = 'sampled-pass'

# Verdicts de représentabilité
REPRESENTABLE = 'representable'
NOT_REPRESENTABLE = 'notRepresentable'
UNKNOWN = 'unknown'

# Codes de sortie
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

# Message d'erreur centralisé
INPUT_ERROR_MESSAGE = "Entrée invalide"

# Listing publié de la relation extraite de ∘_Ex pour K = {ψ0} (paires strictes)
PUBLISHED_EX_STRICT_LISTING = (
    [('ω0', f'ω{i}') for i in range(1, 6)]
    + [('ω1', 'ω2'), ('ω2', 'ω3'), ('ω3', 'ω1')]
    + [('ω4', 'ω1'), ('ω4', 'ω2'), ('ω4', 'ω3'), ('ω4', 'ω5')]
    + [(f'ω{i}', 'ω5') for i in range(0, 5)]
)

# Affirmations publiées sur la logique d'exemple, confrontées au calcul par la démo
PUBLISHED_CLAIMS = {
    'ex_postulates': "∘_Ex satisfait (G1)–(G6) sur L_Ex",
    'critical_loop': "({φ1}, {φ2}, {φ3}) forme une boucle critique pour L_Ex, Γ′ = ({ψ2}, {ψ3}, {ψ4})",
    'b_prime': "𝔅′ = {{φ4}}",
    'extraction': "ωi ≺ ω5 pour 0 ≤ i ≤ 4",
}

# Notes de divergence émises par la démo
DIVERGENCE_NOTES = {
    'extraction': (
        "Les paires (ω1, ω5), (ω2, ω5), (ω3, ω5) sont reliées dans les deux sens : "
        "les seules classes communes sont Mod {ω1..ω5} et Ω, dont les résultats excluent les deux mondes."
    ),
    'critical_loop': (
        "Sur lex_paper, {ω1, ω2, ω3} = Mod({φ0, φ4}) est exprimable et viole la condition (3) ; "
        "la boucle n'existe que dans lex_core (φ0 retiré)."
    ),
    'b_prime': (
        "Calculé selon les conditions de la construction : Mod({φ4}) n'est pas inclus dans "
        "Mod(Γ) privé des Mod(Γi) ; on obtient les classes de {ψ4} et de {ψ5}."
    ),
    'ex_postulates': "Le verdict affiché est celui du balayage exhaustif, pas celui publié.",
}
