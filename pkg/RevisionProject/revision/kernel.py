"""
Noyau : logiques finies monotones représentées en extension.

Une logique est donnée par ses mondes (ordonnés), ses phrases (ordonnées) et,
pour chaque phrase, l'ensemble de ses modèles. Les ensembles de mondes sont
encodés en masques de bits (bit i = monde i) ; les bases sont des ensembles
d'indices de phrases.

Primitives fournies :
- models_of, entails, equivalent, is_consistent
- expressible_closure : fermeture par intersection des Mod(φ) et de Ω
- enumerate_classes : classes sémantiques avec base canonique
- builtin_logic : logiques d'exemple (lex_paper, lex_core, propositional(n), horn(n))
"""

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations

from django.conf import settings

from .constants import LEX_PAPER_SENTENCES, LEX_WORLDS, BUILTIN_LOGIC_NAMES
from .exceptions import InputError

logger = logging.getLogger(__name__)

# Logiques gardées en cache (fermeture, classes, index)
LOGIC_CACHE_SIZE = 32


# ---------- ENSEMBLES DE MONDES ET BASES ----------

class ModelSet(int):
    """Ensemble de mondes encodé en masque de bits (bit i = monde i)"""

    __slots__ = ()

    @classmethod
    def of(cls, indices):
        mask = 0
        for index in indices:
            mask |= 1 << index
        return cls(mask)

    def __contains__(self, index):
        return bool((int(self) >> index) & 1)

    def __iter__(self):
        mask = int(self)
        index = 0
        while mask:
            if mask & 1:
                yield index
            mask >>= 1
            index += 1

    def __len__(self):
        return int(self).bit_count()

    def __and__(self, other):
        return ModelSet(int(self) & int(other))

    def __or__(self, other):
        return ModelSet(int(self) | int(other))

    def __sub__(self, other):
        return ModelSet(int(self) & ~int(other))

    def issubset(self, other):
        return int(self) & ~int(other) == 0

    def isdisjoint(self, other):
        return int(self) & int(other) == 0

    @property
    def sort_key(self):
        """Ordre canonique : taille décroissante puis vecteur d'appartenance"""
        return (-len(self), tuple(self))

    def __repr__(self):
        return f"ModelSet({{{', '.join(str(i) for i in self)}}})"


class BeliefBase(frozenset):
    """Base de croyances : ensemble fini d'indices de phrases"""

    __slots__ = ()

    def __or__(self, other):
        return BeliefBase(frozenset.__or__(self, other))

    def with_sentence(self, index):
        return BeliefBase(self | {index})

    @property
    def sort_key(self):
        return (len(self), tuple(sorted(self)))

    def __repr__(self):
        return f"BeliefBase({{{', '.join(str(i) for i in sorted(self))}}})"


EMPTY_BASE = BeliefBase()


@dataclass(frozen=True)
class SemanticClass:
    """Classe d'équivalence de bases : ses modèles et sa base canonique"""

    models: ModelSet
    canonical_base: BeliefBase

    @property
    def sort_key(self):
        return self.models.sort_key


# ---------- LOGIQUES ----------

@dataclass(frozen=True, eq=False)
class LogicSpec:
    """
    Logique finie monotone (L, Ω, ⊨) donnée en extension.

    Args:
        name: identifiant de la logique
        worlds: noms des mondes, dans l'ordre canonique
        sentences: noms des phrases, dans l'ordre canonique
        models: pour chaque phrase, l'ensemble de ses modèles

    L'égalité est l'identité : deux chargements d'un même fichier donnent deux
    logiques distinctes (comparer `signature` au besoin).
    """

    name: str
    worlds: tuple
    sentences: tuple
    models: tuple = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "sentences", tuple(self.sentences))
        object.__setattr__(self, "models", tuple(ModelSet(m) for m in self.models))

        if not self.worlds:
            raise InputError("une logique doit déclarer au moins un monde", source=self.name)
        for kind, names in (("monde", self.worlds), ("phrase", self.sentences)):
            seen = set()
            for name in names:
                if name in seen:
                    raise InputError(f"{kind} déclaré deux fois : {name!r}", source=self.name)
                seen.add(name)
        if len(self.models) != len(self.sentences):
            raise InputError("une table de modèles par phrase est requise", source=self.name)
        for sentence, mask in zip(self.sentences, self.models):
            if not mask.issubset(self.universe):
                raise InputError(f"modèles hors des mondes déclarés pour {sentence!r}", source=self.name)

    @cached_property
    def universe(self):
        return ModelSet((1 << len(self.worlds)) - 1)

    @cached_property
    def _world_positions(self):
        return {name: index for index, name in enumerate(self.worlds)}

    @cached_property
    def _sentence_positions(self):
        return {name: index for index, name in enumerate(self.sentences)}

    @cached_property
    def signature(self):
        return (self.name, self.worlds, self.sentences, tuple(int(m) for m in self.models))

    def world_index(self, name):
        try:
            return self._world_positions[name]
        except KeyError:
            raise InputError(f"monde inconnu : {name!r}", source=self.name) from None

    def sentence_index(self, name):
        try:
            return self._sentence_positions[name]
        except KeyError:
            raise InputError(f"phrase inconnue : {name!r}", source=self.name) from None

    def base(self, *names):
        """Construit une base à partir de noms de phrases"""
        return BeliefBase(self.sentence_index(n) for n in names)

    def model_set(self, *names):
        """Construit un ensemble de mondes à partir de noms de mondes"""
        return ModelSet.of(self.world_index(n) for n in names)

    def world_names(self, models):
        return [self.worlds[i] for i in ModelSet(models)]

    def sentence_names(self, base):
        return [self.sentences[i] for i in sorted(base)]

    def describe_models(self, models):
        return "{" + ", ".join(self.world_names(models)) + "}"

    def describe_base(self, base):
        if not base:
            return "∅"
        return "{" + ", ".join(self.sentence_names(base)) + "}"

    def __repr__(self):
        return f"LogicSpec({self.name!r}, {len(self.worlds)} mondes, {len(self.sentences)} phrases)"


# ---------- PRIMITIVES MODÈLES ----------

def models_of(logic, base):
    """
    Mod(K) : intersection des modèles des phrases de la base (Ω pour ∅).

    Raises:
        InputError: identifiant de phrase inconnu
    """
    mask = int(logic.universe)
    models = logic.models
    for index in base:
        if not isinstance(index, int) or not 0 <= index < len(models):
            raise InputError(f"identifiant de phrase inconnu : {index!r}", source=logic.name)
        mask &= models[index]
    return ModelSet(mask)


def entails(logic, k1, k2):
    """K1 ⊨ K2 ssi Mod(K1) ⊆ Mod(K2)"""
    return models_of(logic, k1).issubset(models_of(logic, k2))


def equivalent(logic, k1, k2):
    return models_of(logic, k1) == models_of(logic, k2)


def is_consistent(logic, base):
    return models_of(logic, base) != 0


# ---------- FERMETURE ET CLASSES SÉMANTIQUES ----------

@lru_cache(maxsize=LOGIC_CACHE_SIZE)
def expressible_closure(logic):
    """
    Ensembles de mondes exprimables par une base, dans l'ordre canonique.

    Fermeture par intersection des Mod(φ) et de Ω. Les phrases sont traitées
    par taille décroissante ; une phrase déjà dans la fermeture n'apporte rien
    (la fermeture courante est close par intersection).
    """
    closure = {int(logic.universe)}
    for mask in sorted(set(int(m) for m in logic.models), key=lambda m: (-m.bit_count(), m)):
        if mask in closure:
            continue
        closure |= {member & mask for member in closure}
    result = tuple(sorted((ModelSet(m) for m in closure), key=lambda ms: ms.sort_key))
    logger.debug(f"[fermeture] {logic.name} : {len(result)} ensembles exprimables")
    return result


def _canonical_base_for(logic, target, single):
    if target == logic.universe:
        return EMPTY_BASE
    if target in single:
        return BeliefBase((single[target],))
    candidates = [i for i, m in enumerate(logic.models) if target.issubset(m)]
    for size in range(2, len(candidates) + 1):
        for combo in combinations(candidates, size):
            mask = int(logic.universe)
            for index in combo:
                mask &= logic.models[index]
            if mask == target:
                return BeliefBase(combo)
    raise InputError(f"ensemble non exprimable : {logic.describe_models(target)}", source=logic.name)


@lru_cache(maxsize=LOGIC_CACHE_SIZE)
def enumerate_classes(logic):
    """
    Une classe sémantique par ensemble exprimable, dans l'ordre canonique.

    La base canonique est la plus petite (en cardinal) atteignant l'ensemble,
    les ex aequo étant départagés lexicographiquement sur les indices de phrases.
    """
    single = {}
    for index, mask in enumerate(logic.models):
        single.setdefault(int(mask), index)
    classes = tuple(
        SemanticClass(models, _canonical_base_for(logic, models, single))
        for models in expressible_closure(logic)
    )
    logger.info(f"[classes] {logic.name} : {len(classes)} classes sémantiques")
    return classes


@lru_cache(maxsize=LOGIC_CACHE_SIZE)
def class_index(logic):
    """Table ModelSet -> SemanticClass"""
    return {int(c.models): c for c in enumerate_classes(logic)}


def is_expressible(logic, models):
    return int(models) in class_index(logic)


def canonical_base(logic, models):
    try:
        return class_index(logic)[int(models)].canonical_base
    except KeyError:
        raise InputError(f"ensemble non exprimable : {logic.describe_models(models)}", source=logic.name) from None


def class_of(logic, base):
    return class_index(logic)[int(models_of(logic, base))]


def check_desk_scale(logic, max_classes=None):
    """Refuse les logiques dont le nombre de classes dépasse le plafond"""
    cap = max_classes if max_classes is not None else settings.LAB_CONFIG['MAX_CLASSES']
    count = len(expressible_closure(logic))
    if count > cap:
        raise InputError(
            f"{count} classes sémantiques dépassent le plafond de {cap} (relever --max-classes ou REVISIA_MAX_CLASSES)",
            source=logic.name,
        )
    return count


# ---------- LOGIQUES INTÉGRÉES ----------

_BUILTIN_PATTERN = re.compile(r"^(lex_paper|lex_core|propositional|horn)(?:\((\d+)\)|(\d+))?$")


def _lex_logic(name, drop=()):
    worlds = LEX_WORLDS
    position = {w: i for i, w in enumerate(worlds)}
    sentences, models = [], []
    for sentence, members in LEX_PAPER_SENTENCES:
        if sentence in drop:
            continue
        sentences.append(sentence)
        models.append(ModelSet.of(position[w] for w in members))
    return LogicSpec(name, worlds, sentences, models)


def _atom_holds(world, atom, n):
    return bool((world >> (n - 1 - atom)) & 1)


def _propositional_logic(n):
    worlds = [format(i, f"0{n}b") for i in range(2 ** n)]
    count = 2 ** len(worlds)
    return LogicSpec(f"propositional({n})", worlds, [f"p{k}" for k in range(count)], range(count))


def _horn_clauses(n):
    for size in range(n + 1):
        for negatives in combinations(range(n), size):
            yield negatives, None
            for head in range(n):
                if head not in negatives:
                    yield negatives, head


def _horn_logic(n):
    atoms = "abcd"[:n]
    worlds = [format(i, f"0{n}b") for i in range(2 ** n)]
    sentences, models = [], []
    for negatives, head in _horn_clauses(n):
        literals = [f"¬{atoms[a]}" for a in negatives]
        if head is not None:
            literals.append(atoms[head])
        sentences.append("∨".join(literals) or "⊥")
        models.append(ModelSet.of(
            w for w in range(len(worlds))
            if any(not _atom_holds(w, a, n) for a in negatives)
            or (head is not None and _atom_holds(w, head, n))
        ))
    return LogicSpec(f"horn({n})", worlds, sentences, models)


def builtin_logic(name):
    """
    Logique intégrée par nom.

    Noms acceptés : lex_paper, lex_core, propositional(n) / propositionalN,
    horn(n) / hornN.

    Raises:
        InputError: nom inconnu ou plafond d'atomes dépassé
    """
    match = _BUILTIN_PATTERN.match(name.strip())
    if not match:
        raise InputError(
            f"logique intégrée inconnue : {name!r} (attendu : {', '.join(BUILTIN_LOGIC_NAMES)})"
        )
    family, bracketed, bare = match.groups()
    size = bracketed if bracketed is not None else bare
    if family in ("lex_paper", "lex_core"):
        if size is not None:
            raise InputError(f"la logique {family} ne prend pas de paramètre")
        return _build_builtin(family, None)

    if size is None:
        raise InputError(f"nombre d'atomes requis pour {family}")
    n = int(size)
    cap = settings.LAB_CONFIG['PROPOSITIONAL_MAX_ATOMS' if family == "propositional" else 'HORN_MAX_ATOMS']
    if not 1 <= n <= cap:
        raise InputError(f"{family}({n}) : nombre d'atomes hors de [1, {cap}]")
    return _build_builtin(family, n)


@lru_cache(maxsize=None)
def _build_builtin(family, n):
    """Une seule instance par logique, quelle que soit la graphie du nom"""
    logger.debug(f"[logique] construction de {family}" + ("" if n is None else f"({n})"))
    if family == "lex_paper":
        return _lex_logic(family)
    if family == "lex_core":
        return _lex_logic(family, drop=("φ0",))
    return _propositional_logic(n) if family == "propositional" else _horn_logic(n)
