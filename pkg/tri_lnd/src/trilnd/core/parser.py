# -----------------------------------------------------------------------------
# File: trilnd/core/parser.py
# -----------------------------------------------------------------------------

"""Lettura della grammatica testuale dei polinomi.

Grammatica (spazi irrilevanti, niente moltiplicazione implicita)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := NUMBER | NAME | "(" expr ")"
    NUMBER := INTEGER ("/" INTEGER)?

La stampa inversa e' ``format_polynomial``: ``parse(format(p)) == p``.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Union

from trilnd.core.polynomial import Polynomial, VarSet, to_rational
from trilnd.exceptions import PolynomialSyntaxError, UndeclaredVariableError

logger = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"(?P<space>[ \t\r\n]+)"
    r"|(?P<number>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^()])"
)


@dataclass(slots=True)
class Token:
    kind: str  # "number", "name", "op", "end"
    text: str
    line: int
    column: int


def tokenize(text: str, line_offset: int = 0, column_offset: int = 0) -> List[Token]:
    """Spezza il testo in token con riga e colonna (base 1)."""
    tokens: List[Token] = []
    position = 0
    line, line_start = 1, 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        column = position - line_start + 1
        if match is None:
            raise PolynomialSyntaxError(
                "Carattere inatteso",
                line + line_offset,
                column + (column_offset if line == 1 else 0),
                text[position],
            )
        kind = match.lastgroup
        fragment = match.group()
        if kind == "space":
            for offset, char in enumerate(fragment):
                if char == "\n":
                    line += 1
                    line_start = position + offset + 1
        else:
            tokens.append(Token(kind, fragment, line + line_offset, column + (column_offset if line == 1 else 0)))
        position = match.end()
    end_column = len(text) - line_start + 1
    tokens.append(Token("end", "", line + line_offset, end_column + (column_offset if line == 1 else 0)))
    return tokens


class _Parser:
    """Discesa ricorsiva che valuta direttamente nell'anello del VarSet."""

    def __init__(self, tokens: List[Token], varset: VarSet):
        self.tokens = tokens
        self.index = 0
        self.varset = varset

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def fail(self, message: str, token: Optional[Token] = None) -> PolynomialSyntaxError:
        token = token or self.current
        shown = token.text if token.kind != "end" else "<fine>"
        return PolynomialSyntaxError(message, token.line, token.column, shown)

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.index += 1
            return True
        return False

    def parse(self) -> Polynomial:
        value = self.expr()
        if self.current.kind != "end":
            raise self.fail("Token inatteso")
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while True:
            if self.accept("+"):
                value = value + self.term()
            elif self.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self) -> Polynomial:
        value = self.unary()
        while self.accept("*"):
            value = value * self.unary()
        if self.current.kind in ("number", "name") or (self.current.kind == "op" and self.current.text == "("):
            raise self.fail("Moltiplicazione implicita non ammessa")
        return value

    def unary(self) -> Polynomial:
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.accept("^"):
            token = self.current
            if token.kind == "op" and token.text == "-":
                raise self.fail("Esponente negativo non ammesso")
            if token.kind != "number" or "/" in token.text:
                raise self.fail("Esponente intero non negativo richiesto")
            self.advance()
            base = base ** int(token.text)
            if self.current.kind == "op" and self.current.text == "^":
                raise self.fail("Potenze concatenate non ammesse: usare le parentesi")
        return base

    def atom(self) -> Polynomial:
        token = self.current
        if token.kind == "number":
            self.advance()
            numerator, _, denominator = token.text.partition("/")
            if denominator and int(denominator) == 0:
                raise self.fail("Denominatore nullo", token)
            return Polynomial.constant(self.varset, to_rational(token.text))
        if token.kind == "name":
            self.advance()
            if token.text not in self.varset:
                raise UndeclaredVariableError(
                    f"Variabile non dichiarata {token.text!r}", token.line, token.column, token.text
                )
            return Polynomial.variable(self.varset, token.text)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                raise self.fail("Attesa ')'")
            return value
        raise self.fail("Atteso numero, variabile o '('")


def parse_polynomial(
    text: str,
    varset: Union[VarSet, Iterable[str]],
    line_offset: int = 0,
    column_offset: int = 0,
) -> Polynomial:
    """
    Legge un polinomio nella grammatica testuale.

    Args:
        text: Testo del polinomio.
        varset: Variabili dichiarate.
        line_offset: Righe da aggiungere alle posizioni d'errore (testo incorporato in un documento).
        column_offset: Colonne da aggiungere sulla prima riga.

    Returns:
        Il polinomio nel VarSet dichiarato.
    """
    if not isinstance(varset, VarSet):
        varset = VarSet(tuple(varset))
    tokens = tokenize(text, line_offset, column_offset)
    if tokens[0].kind == "end":
        raise PolynomialSyntaxError("Polinomio vuoto", tokens[0].line, tokens[0].column, "<fine>")
    return _Parser(tokens, varset).parse()
