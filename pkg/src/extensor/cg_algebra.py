"""Peano spaces: bracket, meet, dotted meet, and Hodge star operators.

A Peano space is the exterior algebra together with a chosen top-step
integral E; the bracket of n vectors is the coefficient of their wedge
against E.  The meet comes in two coproduct-slice expansions (sliced on
the left or on the right argument) which agree; the dotted meet is the
same sum with the slice reversed and differs by a fixed sign.  Hodge
stars are attached to an ordered basis and send a canonical extensor to
its signed complement.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import linalg
from .exterior import (DimensionMismatch, ExteriorElement, Vector, as_vector,
                       make_extensor, substitute)
from .words import merge_words


class PeanoSpace:
    """An ambient dimension together with a nonzero top-step integral."""

    __slots__ = ("dim", "integral", "_scale", "_top")

    def __init__(self, integral: ExteriorElement):
        n = integral.dim
        if not integral or integral.step() != n:
            raise ValueError("the integral must be nonzero of top step")
        self.dim = n
        self.integral = integral
        self._top = tuple(range(1, n + 1))
        self._scale = integral.terms[self._top]

    @classmethod
    def standard(cls, dim: int, scale=1) -> "PeanoSpace":
        return cls(ExteriorElement.monomial(dim, range(1, dim + 1), scale))

    def bracket(self, vectors: Sequence) -> Fraction:
        """The unique scalar with wedge(vectors) = bracket * E."""
        vecs = [as_vector(v) for v in vectors]
        if len(vecs) != self.dim:
            raise ValueError(f"bracket takes exactly {self.dim} vectors")
        return self.bracket_element(make_extensor(vecs, self.dim))

    def bracket_element(self, x: ExteriorElement) -> Fraction:
        """Bracket of an element; components below top step contribute 0."""
        if x.dim != self.dim:
            raise DimensionMismatch("element lives in another dimension")
        return x.terms.get(self._top, Fraction(0)) / self._scale

    def meet(self, a: ExteriorElement, b: ExteriorElement,
             side: str = "left") -> ExteriorElement:
        """Meet of homogeneous elements by either slice expansion.

        The left mode slices the first argument with type
        (n-b, a+b-n), the right mode slices the second with type
        (a+b-n, n-a).  Steps short of the dimension give zero.
        """
        n = self.dim
        if a.dim != n or b.dim != n:
            raise DimensionMismatch("meet needs elements of the ambient space")
        if not a or not b:
            return ExteriorElement.zero(n)
        sa, sb = a.step(), b.step()
        if sa + sb < n:
            return ExteriorElement.zero(n)
        out = ExteriorElement.zero(n)
        if side == "left":
            for (w1, w2), c in a.slice((n - sb, sa + sb - n)).terms.items():
                scal = self.bracket_element(
                    ExteriorElement.monomial(n, w1).wedge(b))
                if scal:
                    out = out + ExteriorElement.monomial(n, w2, c * scal)
        elif side == "right":
            for (w1, w2), c in b.slice((sa + sb - n, n - sa)).terms.items():
                scal = self.bracket_element(
                    a.wedge(ExteriorElement.monomial(n, w2)))
                if scal:
                    out = out + ExteriorElement.monomial(n, w1, c * scal)
        else:
            raise ValueError(f"unknown meet side {side!r}")
        return out

    def dot_meet(self, a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
        """Meet variant slicing the first argument as (a+b-n, n-b).

        Equals the meet up to the sign (-1)^((a+b-n)(n-b)); iterated
        uses nest left to right.
        """
        n = self.dim
        if a.dim != n or b.dim != n:
            raise DimensionMismatch("elements of another dimension")
        if not a or not b:
            return ExteriorElement.zero(n)
        sa, sb = a.step(), b.step()
        if sa + sb < n:
            return ExteriorElement.zero(n)
        out = ExteriorElement.zero(n)
        for (w1, w2), c in a.slice((sa + sb - n, n - sb)).terms.items():
            scal = self.bracket_element(ExteriorElement.monomial(n, w2).wedge(b))
            if scal:
                out = out + ExteriorElement.monomial(n, w1, c * scal)
        return out

    def meet_chain(self, first: ExteriorElement, *rest: ExteriorElement,
                   side: str = "left") -> ExteriorElement:
        """Iterated meet, nested left to right."""
        acc = first
        for x in rest:
            acc = self.meet(acc, x, side)
        return acc


def join(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    """The join is the wedge product."""
    return a.wedge(b)


class OrderedBasis:
    """An ordered basis of the space, carrying its Hodge star operator."""

    __slots__ = ("vectors", "F", "_to_basis", "_from_basis")

    def __init__(self, vectors: Sequence):
        vecs = [as_vector(v) for v in vectors]
        n = len(vecs)
        if any(len(v) != n for v in vecs):
            raise DimensionMismatch("need n vectors of length n")
        F = make_extensor(vecs, n)
        if not F:
            raise ValueError("basis vectors are dependent")
        self.vectors: tuple[Vector, ...] = tuple(vecs)
        self.F = F
        # transition matrix P has the basis vectors as columns
        p = [[vecs[j][i] for j in range(n)] for i in range(n)]
        pinv = linalg.invert(p)
        self._from_basis = [ExteriorElement.from_vector(v) for v in vecs]
        self._to_basis = [
            ExteriorElement(n, {(i + 1,): pinv[i][j] for i in range(n) if pinv[i][j]})
            for j in range(n)]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def peano(self) -> PeanoSpace:
        """The Peano space induced by taking F as the integral."""
        return PeanoSpace(self.F)

    def star(self, a: ExteriorElement) -> ExteriorElement:
        """Signed complement of canonical extensors, extended linearly.

        Elements given in ambient coordinates are first rewritten in
        this basis, starred there, and mapped back.
        """
        n = self.dim
        if a.dim != n:
            raise DimensionMismatch("element of another dimension")
        in_basis = substitute(a, self._to_basis)
        full = tuple(range(1, n + 1))
        out: dict = {}
        for word, c in in_basis.terms.items():
            comp = tuple(i for i in full if i not in word)
            sign, _ = merge_words(word, comp)
            out[comp] = out.get(comp, Fraction(0)) + sign * c
        return substitute(ExteriorElement(n, out), self._from_basis)

    def star_tensor(self, t) -> "TensorPowerElement":
        """The star applied to every fold of a tensor power element."""
        return t.map_folds(self.star)


def hodge(basis: OrderedBasis, a: ExteriorElement) -> ExteriorElement:
    """The star operator of the given ordered basis."""
    return basis.star(a)


def standard_basis(dim: int) -> OrderedBasis:
    from .exterior import unit_vector
    return OrderedBasis([unit_vector(dim, i) for i in range(1, dim + 1)])
