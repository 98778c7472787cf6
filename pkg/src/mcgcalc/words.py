"""Freely reduced words and structured factorizations of mapping classes.

A word is a product of twist letters ``T(c)^e`` about symbolic curves and
formal letters ``F(g)^e`` standing for unnamed mapping classes.  Products
are written in functional order: in ``w = l1 l2 ... ln`` the rightmost
letter acts first.  Words are always stored freely reduced (no zero
exponents, no adjacent letters sharing a generator).

A factorization is a product of twist powers, commutator blocks and
conjugated factors; ``flatten`` expands it to a word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union


# --------------------------------------------------------------------------
# curves and generators


@dataclass(frozen=True)
class BaseCurve:
    """A named curve of the active surface configuration."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ImageCurve:
    """The symbolic image f(c) of a curve under a mapping class word f."""

    mapping: "Word"
    curve: "CurveExpr"

    def __str__(self) -> str:
        return f"({self.mapping})({self.curve})"


CurveExpr = Union[BaseCurve, ImageCurve]


def curve(name: str) -> BaseCurve:
    return BaseCurve(name)


def image_curve(mapping: "Word", inner: CurveExpr) -> CurveExpr:
    """Image of ``inner`` under ``mapping``; the identity map is dropped."""
    if not mapping.letters:
        return inner
    return ImageCurve(mapping, inner)


@dataclass(frozen=True)
class Twist:
    """Generator: right Dehn twist about a curve."""

    curve: CurveExpr

    def __str__(self) -> str:
        return f"T({self.curve})"


@dataclass(frozen=True)
class Formal:
    """Generator: a formal mapping-class symbol."""

    symbol: str

    def __str__(self) -> str:
        return f"F({self.symbol})"


Generator = Union[Twist, Formal]


@dataclass(frozen=True)
class Letter:
    gen: Generator
    exponent: int

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.exponent)

    def __str__(self) -> str:
        if self.exponent == 1:
            return str(self.gen)
        return f"{self.gen}^{self.exponent}"


# --------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class Word:
    """A freely reduced product of letters.  Build via :func:`free_reduce`."""

    letters: tuple[Letter, ...] = ()

    def __mul__(self, other: "Word") -> "Word":
        return free_reduce(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def inverse(self) -> "Word":
        return Word(tuple(l.inverse() for l in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def length(self) -> int:
        """Total letter count with exponent multiplicity."""
        return sum(abs(l.exponent) for l in self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(str(l) for l in self.letters)


EPSILON = Word()


def free_reduce(letters: Iterable[Letter]) -> Word:
    """The unique freely reduced word for a letter sequence.

    Adjacent letters with the same generator merge by adding exponents;
    zero exponents vanish.  Idempotent.
    """
    stack: list[Letter] = []
    for letter in letters:
        if letter.exponent == 0:
            continue
        if stack and stack[-1].gen == letter.gen:
            merged = stack[-1].exponent + letter.exponent
            stack.pop()
            if merged != 0:
                stack.append(Letter(letter.gen, merged))
        else:
            stack.append(letter)
    return Word(tuple(stack))


def word(*letters: Letter) -> Word:
    return free_reduce(letters)


def twist(name: str, exponent: int = 1) -> Word:
    return word(Letter(Twist(BaseCurve(name)), exponent))


def formal(name: str, exponent: int = 1) -> Word:
    return word(Letter(Formal(name), exponent))


def invert(w: Word) -> Word:
    """Group inverse; ``w * invert(w)`` reduces to the empty word."""
    return w.inverse()


def commutator_word(u: Word, v: Word) -> Word:
    """The reduced word u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


# --------------------------------------------------------------------------
# factorizations


@dataclass(frozen=True)
class TwistPower:
    curve: CurveExpr
    exponent: int


@dataclass(frozen=True)
class CommutatorOf:
    left: Word
    right: Word


@dataclass(frozen=True)
class Conjugated:
    factor: "Factor"
    by: Word


Factor = Union[TwistPower, CommutatorOf, Conjugated]


@dataclass(frozen=True)
class Factorization:
    factors: tuple[Factor, ...] = ()

    def __mul__(self, other: "Factorization") -> "Factorization":
        return Factorization(self.factors + other.factors)


@dataclass(frozen=True)
class Census:
    """Block counts of a factorization before any free reduction."""

    commutator_count: int
    positive_twist_count: int
    negative_twist_count: int


def commutator_of(u: Word, v: Word) -> Factorization:
    """Single commutator block [u, v]; flattens to u v u^-1 v^-1."""
    return Factorization((CommutatorOf(u, v),))


def twist_factor(name: str, exponent: int) -> Factorization:
    return Factorization((TwistPower(BaseCurve(name), exponent),))


def conjugate_factorization(f: Factorization, by: Word) -> Factorization:
    return Factorization(tuple(Conjugated(factor, by) for factor in f.factors))


def invert_factorization(f: Factorization) -> Factorization:
    """Inverse product: factors reversed, commutator entries swapped.

    [u, v]^-1 = [v, u], (t_c^e)^-1 = t_c^-e, (g x g^-1)^-1 = g x^-1 g^-1.
    """

    def invert_factor(factor: Factor) -> Factor:
        if isinstance(factor, TwistPower):
            return TwistPower(factor.curve, -factor.exponent)
        if isinstance(factor, CommutatorOf):
            return CommutatorOf(factor.right, factor.left)
        return Conjugated(invert_factor(factor.factor), factor.by)

    return Factorization(tuple(invert_factor(x) for x in reversed(f.factors)))


def _flatten_factor(factor: Factor) -> Word:
    if isinstance(factor, TwistPower):
        return word(Letter(Twist(factor.curve), factor.exponent))
    if isinstance(factor, CommutatorOf):
        return commutator_word(factor.left, factor.right)
    inner = _flatten_factor(factor.factor)
    return factor.by * inner * factor.by.inverse()


def flatten(f: Factorization) -> Word:
    """Expand commutators and conjugations, concatenate, freely reduce."""
    out: list[Letter] = []
    for factor in f.factors:
        out.extend(_flatten_factor(factor).letters)
    return free_reduce(out)


def twist_census(f: Factorization) -> Census:
    """Counts of commutator blocks and signed twist letters.

    Twist letters are counted with exponent multiplicity on the twist-power
    factors themselves (conjugating words and commutator entries are block
    structure, not vanishing-cycle data).
    """
    commutators = 0
    positive = 0
    negative = 0

    def visit(factor: Factor) -> None:
        nonlocal commutators, positive, negative
        if isinstance(factor, TwistPower):
            if factor.exponent > 0:
                positive += factor.exponent
            else:
                negative += -factor.exponent
        elif isinstance(factor, CommutatorOf):
            commutators += 1
        else:
            visit(factor.factor)

    for factor in f.factors:
        visit(factor)
    return Census(commutators, positive, negative)
