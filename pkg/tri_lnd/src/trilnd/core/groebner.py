# -----------------------------------------------------------------------------
# File: trilnd/core/groebner.py
# -----------------------------------------------------------------------------

"""Basi di Groebner con l'algoritmo di Buchberger.

Strategia normale per la scelta delle coppie (lcm minimo nell'ordine, a
parita' l'indice della coppia), criteri di Gebauer-Moeller, base ridotta e
monica ordinata per monomio direttivo crescente. Sopra il motore stanno
l'eliminazione, l'intersezione ideale principale / sottoalgebra e il test di
appartenenza a una sottoalgebra con variabili etichetta.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.orderings import MonomialOrder as _SympyOrder
from sympy.polys.orderings import grlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from trilnd.core.polynomial import TAG_PREFIX, Polynomial, VarSet
from trilnd.exceptions import VarSetMismatchError

logger = logging.getLogger(__name__)

_ORDER_KINDS = ("lex", "grlex", "block")
_INNER_KINDS = ("lex", "grlex")

TaggedGenerators = Sequence[Tuple[str, Polynomial]]


class _BlockKey(_SympyOrder):
    """Ordine a blocchi: grlex sul primo blocco, poi l'ordine interno sul resto."""

    alias = "block"
    is_global = True

    def __init__(self, size: int, inner: str):
        self.size = size
        self.inner = inner

    def __call__(self, monomial):
        head = monomial[: self.size]
        tail = monomial[self.size:]
        inner_key = (sum(tail), tail) if self.inner == "grlex" else tail
        return (sum(head), head, inner_key)

    def __repr__(self) -> str:
        return f"_BlockKey({self.size}, {self.inner!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _BlockKey) and (self.size, self.inner) == (other.size, other.inner)

    def __hash__(self) -> int:
        return hash((_BlockKey, self.size, self.inner))


@dataclass(frozen=True)
class MonomialOrder:
    """
    Ordine monomiale su variabili con nome.

    ``ranking`` elenca le variabili dalla piu' grande alla piu' piccola: il
    lex ``u < p < s`` si scrive ``MonomialOrder.lex("s", "p", "u")``. Per
    ``block`` le prime ``eliminated`` variabili formano il blocco eliminato
    (grlex interno) e sono piu' grandi di ogni monomio del blocco tenuto, che
    usa l'ordine ``inner``.
    """

    kind: str
    ranking: Tuple[str, ...]
    eliminated: int = 0
    inner: str = "lex"

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranking", tuple(self.ranking))
        if self.kind not in _ORDER_KINDS:
            raise ValueError(f"Ordine sconosciuto: {self.kind}")
        if self.inner not in _INNER_KINDS:
            raise ValueError(f"Ordine interno sconosciuto: {self.inner}")
        if len(set(self.ranking)) != len(self.ranking):
            raise VarSetMismatchError(f"Ranking non biiettivo: {self.ranking}")
        if self.kind == "block" and not 0 < self.eliminated < len(self.ranking):
            raise ValueError("Il blocco eliminato deve essere proprio e non vuoto")

    @classmethod
    def lex(cls, *ranking: str) -> "MonomialOrder":
        return cls("lex", tuple(ranking))

    @classmethod
    def grlex(cls, *ranking: str) -> "MonomialOrder":
        return cls("grlex", tuple(ranking))

    @classmethod
    def block(cls, eliminated: Sequence[str], kept: "MonomialOrder") -> "MonomialOrder":
        if kept.kind == "block":
            raise ValueError("Il blocco tenuto deve essere lex o grlex")
        return cls("block", tuple(eliminated) + kept.ranking, len(eliminated), kept.kind)

    @property
    def varset(self) -> VarSet:
        return VarSet(self.ranking)

    @property
    def kept(self) -> "MonomialOrder":
        if self.kind != "block":
            return self
        return MonomialOrder(self.inner, self.ranking[self.eliminated:])

    @property
    def ring(self) -> PolyRing:
        return _order_ring(self)

    def renamed(self, mapping: Dict[str, str]) -> "MonomialOrder":
        return MonomialOrder(
            self.kind, tuple(mapping.get(name, name) for name in self.ranking), self.eliminated, self.inner
        )

    def __str__(self) -> str:
        if self.kind == "block":
            head = " > ".join(self.ranking[: self.eliminated])
            tail = " > ".join(self.ranking[self.eliminated:])
            return f"block(grlex[{head}] >> {self.inner}[{tail}])"
        return f"{self.kind}[{' > '.join(self.ranking)}]"


@lru_cache(maxsize=None)
def _order_ring(order: MonomialOrder) -> PolyRing:
    if order.kind == "lex":
        key = lex
    elif order.kind == "grlex":
        key = grlex
    else:
        key = _BlockKey(order.eliminated, order.inner)
    return PolyRing(tuple(Symbol(name) for name in order.ranking), QQ, key)


def _to_order(p: Polynomial, order: MonomialOrder) -> PolyElement:
    missing = [name for name in p.variables_used() if name not in order.ranking]
    if missing:
        raise VarSetMismatchError(f"Variabili {missing} non coperte da {order}")
    moved = p.embed(order.varset)
    ring = order.ring
    return ring.from_dict(moved.terms()) if not moved.is_zero else ring.zero


def _from_order(element: PolyElement, order: MonomialOrder, varset: VarSet) -> Polynomial:
    return Polynomial.from_terms(order.varset, dict(element)).embed(varset)


@dataclass(frozen=True)
class GroebnerBasis:
    """Base (ridotta) di un ideale rispetto a un ordine; canonica se ``reduced``."""

    generators: Tuple[Polynomial, ...]
    order: MonomialOrder
    varset: VarSet
    reduced: bool = True

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.generators)

    def __getitem__(self, index: int) -> Polynomial:
        return self.generators[index]

    @property
    def is_zero_ideal(self) -> bool:
        return not self.generators

    @property
    def is_unit_ideal(self) -> bool:
        return any(g.is_constant for g in self.generators)

    def elements(self) -> List[PolyElement]:
        return [_to_order(g, self.order) for g in self.generators]

    def leading_monomial(self, index: int) -> Dict[str, int]:
        """Monomio direttivo (nell'ordine della base) come mappa nome -> esponente."""
        element = _to_order(self.generators[index], self.order)
        return {name: e for name, e in zip(self.order.ranking, element.LM) if e}

    def contains(self, p: Polynomial) -> bool:
        return normal_form(p, self).is_zero

    def texts(self) -> List[str]:
        return [g.to_text() for g in self.generators]


# ---- Motore di Buchberger ----


def _spoly(f: PolyElement, g: PolyElement, lmf, lmg, ring: PolyRing) -> PolyElement:
    lcm = ring.monomial_lcm(lmf, lmg)
    return f.mul_monom(ring.monomial_div(lcm, lmf)) - g.mul_monom(ring.monomial_div(lcm, lmg))


def _update(G: List[PolyElement], lmG: list, pairs: Set[Tuple[int, int]], f: PolyElement, ring: PolyRing):
    """Aggiunge ``f`` alla base aggiornando le coppie con i criteri di Gebauer-Moeller."""
    lmf = f.LM
    lcm, mul, div = ring.monomial_lcm, ring.monomial_mul, ring.monomial_div

    kept = set()
    for i, j in pairs:
        lcm_ij = lcm(lmG[i], lmG[j])
        if div(lcm_ij, lmf) is None or lcm_ij == lcm(lmG[i], lmf) or lcm_ij == lcm(lmG[j], lmf):
            kept.add((i, j))

    groups: Dict[tuple, List[int]] = {}
    for i in range(len(G)):
        groups.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimal = []
    for candidate in sorted(groups, key=ring.order):
        if all(div(candidate, other) is None for other in minimal):
            minimal.append(candidate)
    fresh = set()
    for candidate in minimal:
        # criterio del prodotto: lcm coprimo rende inutile l'intero gruppo
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in groups[candidate]):
            fresh.add((min(groups[candidate]), len(G)))

    G.append(f)
    lmG.append(lmf)
    return kept | fresh


def _minimalize(G: List[PolyElement], ring: PolyRing) -> List[PolyElement]:
    minimal: List[PolyElement] = []
    for f in sorted(G, key=lambda h: ring.order(h.LM)):
        if all(ring.monomial_div(f.LM, g.LM) is None for g in minimal):
            minimal.append(f)
    return minimal


def _interreduce(G: List[PolyElement]) -> List[PolyElement]:
    return [G[i].rem(G[:i] + G[i + 1:]).monic() for i in range(len(G))]


def _reduced_basis(F: Sequence[PolyElement], ring: PolyRing) -> List[PolyElement]:
    G: List[PolyElement] = []
    lmG: list = []
    pairs: Set[Tuple[int, int]] = set()
    for f in F:
        if f:
            pairs = _update(G, lmG, pairs, f.monic(), ring)
    reductions = 0
    while pairs:
        i, j = min(pairs, key=lambda pair: (ring.order(ring.monomial_lcm(lmG[pair[0]], lmG[pair[1]])), pair))
        pairs.remove((i, j))
        remainder = _spoly(G[i], G[j], lmG[i], lmG[j], ring).rem(G)
        reductions += 1
        if remainder:
            pairs = _update(G, lmG, pairs, remainder.monic(), ring)
    basis = _interreduce(_minimalize(G, ring))
    logger.debug(f"Buchberger: {reductions} S-polinomi ridotti, base ridotta di {len(basis)} elementi")
    return sorted(basis, key=lambda h: ring.order(h.LM))


# ---- Public API ----


def _common_varset(polys: Iterable[Polynomial]) -> VarSet:
    polys = list(polys)
    varset = polys[0].varset
    for p in polys[1:]:
        if p.varset != varset:
            varset = varset.union(p.varset)
    return varset


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder) -> GroebnerBasis:
    """
    Base di Groebner ridotta dell'ideale generato da ``gens``.

    Args:
        gens: Generatori (lista non vuota).
        order: Ordine monomiale che copre tutte le variabili dei generatori.

    Returns:
        La base ridotta, monica, ordinata per monomio direttivo crescente.
    """
    if not gens:
        raise ValueError("Servono dei generatori")
    varset = _common_varset(gens)
    if not set(varset.names) <= set(order.ranking):
        raise VarSetMismatchError(f"L'ordine {order} non copre {varset}")
    if set(order.ranking) != set(varset.names):
        varset = varset.union(order.ranking)
    ring = order.ring
    elements = _reduced_basis([_to_order(g, order) for g in gens], ring)
    return GroebnerBasis(tuple(_from_order(e, order, varset) for e in elements), order, varset, True)


@lru_cache(maxsize=128)
def _cached_basis(gens: Tuple[Polynomial, ...], order: MonomialOrder) -> GroebnerBasis:
    return buchberger(gens, order)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Resto unico di ``p`` rispetto alla base; nullo sse ``p`` sta nell'ideale."""
    if gb.is_zero_ideal:
        return p.embed(gb.varset)
    remainder = _to_order(p, gb.order).rem(gb.elements())
    return _from_order(remainder, gb.order, gb.varset)


def eliminate(
    gens: Sequence[Polynomial],
    drop: Iterable[str],
    order_hint: Optional[MonomialOrder] = None,
) -> GroebnerBasis:
    """
    Ideale di eliminazione nelle variabili tenute.

    Args:
        gens: Generatori dell'ideale.
        drop: Variabili da eliminare (sottoinsieme proprio).
        order_hint: Ordine sulle variabili tenute (default: lex nell'ordine del VarSet).

    Returns:
        Base ridotta dell'ideale di eliminazione rispetto all'ordine tenuto.
    """
    varset = _common_varset(gens)
    drop = [name for name in varset.names if name in set(drop)]
    kept = [name for name in varset.names if name not in drop]
    if not kept:
        raise ValueError("Non si possono eliminare tutte le variabili")
    kept_order = order_hint or MonomialOrder.lex(*kept)
    if set(kept_order.ranking) != set(kept):
        raise VarSetMismatchError(f"{kept_order} non ordina esattamente {kept}")
    kept_varset = VarSet(tuple(kept))
    if not drop:
        full = buchberger(gens, kept_order)
        return GroebnerBasis(tuple(g.embed(kept_varset) for g in full), kept_order, kept_varset)
    full = buchberger(gens, MonomialOrder.block(drop, kept_order))
    survivors = tuple(g.embed(kept_varset) for g in full if set(g.variables_used()) <= set(kept))
    return GroebnerBasis(survivors, kept_order, kept_varset)


def _tag_setup(
    base: VarSet, gens: TaggedGenerators
) -> Tuple[VarSet, Dict[str, str], List[Polynomial]]:
    """Prepara l'anello congiunto con etichette interne prive di collisioni."""
    tags = [tag for tag, _ in gens]
    if len(set(tags)) != len(tags):
        raise VarSetMismatchError(f"Etichette duplicate: {tags}")
    for _, generator in gens:
        base = base.union(generator.varset) if not generator.varset.issubset(base) else base
    internal = {tag: f"{TAG_PREFIX}{index}" for index, tag in enumerate(tags)}
    joint = base.union(internal.values())
    relations = [
        Polynomial.variable(joint, internal[tag]) - generator.embed(joint) for tag, generator in gens
    ]
    return joint, internal, relations


def intersect_subalgebra(
    q: Polynomial,
    gens: TaggedGenerators,
    inner_order: MonomialOrder,
    hints: Sequence[Polynomial] = (),
) -> GroebnerBasis:
    """
    Base ridotta di ``{H : H(gens) in q K[x,y,z]}`` nelle variabili etichetta.

    Si eliminano x, y, z dall'ideale ``(q, T1 - g1, ..., Tk - gk)`` con un
    ordine a blocchi che mette le variabili di ``q`` sopra tutte le etichette.

    Args:
        q: Generatore dell'ideale principale.
        gens: Coppie (etichetta, polinomio).
        inner_order: Ordine sulle etichette (es. lex s > p > u).
        hints: Elementi noti dell'ideale, espressi nelle etichette (es. c(U)).

    Returns:
        La base ridotta nelle etichette rispetto a ``inner_order``.
    """
    tags = tuple(tag for tag, _ in gens)
    if set(inner_order.ranking) != set(tags) or inner_order.kind == "block":
        raise VarSetMismatchError(f"{inner_order} deve ordinare esattamente le etichette {tags}")
    clash = [tag for tag in tags if tag in q.varset]
    if clash:
        logger.debug(f"Etichette {clash} coincidono con variabili ambiente: uso nomi interni")
    joint, internal, relations = _tag_setup(q.varset, gens)
    reverse = {value: key for key, value in internal.items()}
    ambient = [name for name in joint.names if name not in reverse]
    extra = [hint.rename(internal).embed(joint) for hint in hints]
    ideal = tuple([q.embed(joint)] + relations + extra)
    order = MonomialOrder.block(ambient, inner_order.renamed(internal))
    full = _cached_basis(ideal, order)
    tag_varset = VarSet(tags)
    inner_varset = VarSet(tuple(internal[tag] for tag in tags))
    survivors = tuple(
        g.embed(inner_varset).rename(reverse)
        for g in full
        if set(g.variables_used()) <= set(reverse)
    )
    logger.debug(f"Intersezione con {q}: {len(full)} elementi, {len(survivors)} nelle etichette")
    return GroebnerBasis(survivors, inner_order, tag_varset)


def subalgebra_membership(
    h: Polynomial,
    gens: TaggedGenerators,
    modulus: Optional[Polynomial] = None,
) -> Optional[Polynomial]:
    """
    Decide se ``h`` sta in ``K[gens] + (modulus)``.

    Returns:
        H nelle etichette con ``h - H(gens)`` nell'ideale ``(modulus)``
        (appartenenza esatta se il modulo manca), oppure None.
    """
    base = h.varset if modulus is None else h.varset.union(modulus.varset)
    joint, internal, relations = _tag_setup(base, gens)
    reverse = {value: key for key, value in internal.items()}
    ambient = [name for name in joint.names if name not in reverse]
    ideal = list(relations)
    if modulus is not None:
        if modulus.is_zero:
            modulus = None
        else:
            ideal.insert(0, modulus.embed(joint))
    inner = MonomialOrder.grlex(*internal.values())
    order = MonomialOrder.block(ambient, inner)
    full = _cached_basis(tuple(ideal), order)
    remainder = normal_form(h.embed(joint), full)
    if not set(remainder.variables_used()) <= set(reverse):
        return None
    inner_varset = VarSet(tuple(internal[tag] for tag, _ in gens))
    return remainder.embed(inner_varset).rename(reverse)


def substitute_tags(expression: Polynomial, gens: TaggedGenerators) -> Polynomial:
    """Valuta un'espressione nelle etichette sui polinomi corrispondenti."""
    return expression.substitute({tag: generator for tag, generator in gens})
