"""Exterior algebra over the rationals with exact arithmetic.

Elements are sparse maps from index words (strictly increasing tuples
of 1-based basis indices) to Fraction coefficients; the empty word is
the unit.  Extensors are wedges of vectors built with
:func:`make_extensor`; a vector is a tuple of ``dim`` rationals.  All
values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .words import merge_words, word_slices

Word = tuple[int, ...]
Vector = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    """Operands live in exterior algebras of different dimensions."""


def as_vector(coords: Iterable) -> Vector:
    return tuple(Fraction(c) for c in coords)


def unit_vector(dim: int, i: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(1, dim + 1))


class ExteriorElement:
    """A sparse element of the exterior algebra of a fixed dimension."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        clean: dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if not c:
                continue
            w = tuple(word)
            if any(i < 1 or i > dim for i in w):
                raise ValueError(f"index word {w} out of range for dimension {dim}")
            if any(a >= b for a, b in zip(w, w[1:])):
                raise ValueError(f"index word {w} is not strictly increasing")
            clean[w] = c
        self.dim = dim
        self.terms = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "ExteriorElement":
        return cls(dim, {})

    @classmethod
    def unit(cls, dim: int) -> "ExteriorElement":
        return cls(dim, {(): Fraction(1)})

    @classmethod
    def monomial(cls, dim: int, word: Sequence[int], coeff=1) -> "ExteriorElement":
        return cls(dim, {tuple(word): Fraction(coeff)})

    @classmethod
    def from_vector(cls, coords: Iterable) -> "ExteriorElement":
        v = as_vector(coords)
        return cls(len(v), {(i,): c for i, c in enumerate(v, start=1) if c})

    # -- ring structure ----------------------------------------------

    def _check(self, other: "ExteriorElement"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim}")

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return ExteriorElement(self.dim, out)

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self + (-other)

    def __neg__(self) -> "ExteriorElement":
        return ExteriorElement(self.dim, {w: -c for w, c in self.terms.items()})

    def __mul__(self, scalar) -> "ExteriorElement":
        s = Fraction(scalar)
        return ExteriorElement(self.dim, {w: s * c for w, c in self.terms.items()})

    __rmul__ = __mul__

    def wedge(self, other: "ExteriorElement") -> "ExteriorElement":
        """The join: bilinear, associative, graded-anticommutative."""
        self._check(other)
        out: dict[Word, Fraction] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                sign, w = merge_words(u, v)
                if sign == 0:
                    continue
                out[w] = out.get(w, Fraction(0)) + sign * cu * cv
        return ExteriorElement(self.dim, out)

    __xor__ = wedge

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExteriorElement)
                and self.dim == other.dim and self.terms == other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- grading -----------------------------------------------------

    def step(self):
        """Common grade of the terms; None for zero, error when mixed."""
        steps = {len(w) for w in self.terms}
        if not steps:
            return None
        if len(steps) > 1:
            raise ValueError("element is not homogeneous")
        return steps.pop()

    @property
    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def homogeneous_component(self, k: int) -> "ExteriorElement":
        return ExteriorElement(
            self.dim, {w: c for w, c in self.terms.items() if len(w) == k})

    def scalar_part(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    # -- coproduct ---------------------------------------------------

    def slice(self, parts: Sequence[int]):
        """Coproduct slice into the tensor power with one fold per part.

        On a monomial this is the signed sum over ordered set partitions
        of the index word into blocks of the given sizes; terms whose
        word length differs from the total are zero.
        """
        from .tensor_power import TensorPowerElement

        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise ValueError("negative part size")
        out: dict[tuple[Word, ...], Fraction] = {}
        for word, c in self.terms.items():
            if len(word) != sum(parts):
                continue
            for sign, blocks in word_slices(word, parts):
                out[blocks] = out.get(blocks, Fraction(0)) + sign * c
        return TensorPowerElement(self.dim, len(parts), out)

    # -- presentation ------------------------------------------------

    def __str__(self) -> str:
        return format_terms(
            sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])),
            word_str)

    def __repr__(self) -> str:
        return f"ExteriorElement({self.dim}, {self.terms!r})"


def word_str(word: Word) -> str:
    if not word:
        return "1"
    return "^".join(f"e{i}" for i in word)


def format_terms(items, key_str) -> str:
    """Render sorted (key, coeff) pairs in the canonical sum syntax."""
    if not items:
        return "0"
    parts = []
    for key, coeff in items:
        mono = key_str(key)
        mag = abs(coeff)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag} {mono}"
        parts.append(("-" if coeff < 0 else "+", body))
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def make_extensor(vectors: Sequence, dim: int | None = None) -> ExteriorElement:
    """Expand the wedge of coordinate vectors in the canonical basis.

    Dependent vectors give the zero element.
    """
    vecs = [as_vector(v) for v in vectors]
    if dim is None:
        if not vecs:
            raise ValueError("ambient dimension needed for an empty wedge")
        dim = len(vecs[0])
    out = ExteriorElement.unit(dim)
    for v in vecs:
        if len(v) != dim:
            raise DimensionMismatch(f"vector of length {len(v)} in dimension {dim}")
        out = out.wedge(ExteriorElement.from_vector(v))
        if not out:
            break
    return out


def substitute(a: ExteriorElement, images: Sequence[ExteriorElement]) -> ExteriorElement:
    """Apply the algebra morphism sending basis vector i to images[i-1]."""
    if len(images) != a.dim:
        raise DimensionMismatch("need one image per basis vector")
    tdim = images[0].dim if images else a.dim
    out = ExteriorElement.zero(tdim)
    for word, c in a.terms.items():
        acc = ExteriorElement.unit(tdim)
        for i in word:
            acc = acc.wedge(images[i - 1])
            if not acc:
                break
        out = out + c * acc
    return out


def extensor_span(a: ExteriorElement) -> list[Vector]:
    """Basis of the divisor space {v : v wedge a = 0}.

    For a nonzero extensor this is exactly the subspace the extensor
    represents.
    """
    if not a:
        raise ValueError("zero element has no span")
    n = a.dim
    images = [ExteriorElement.monomial(n, (i,)).wedge(a) for i in range(1, n + 1)]
    out_words = sorted({w for img in images for w in img.terms})
    rows = [[img.terms.get(w, Fraction(0)) for img in images] for w in out_words]
    return [tuple(v) for v in linalg.nullspace(rows, n)]
