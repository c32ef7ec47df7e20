"""Word combinatorics shared by the exterior and letterplace layers.

A word is a tuple of pairwise distinct, totally ordered atoms: basis
indices on the coordinate side, letters on the letterplace side.  All
signs are permutation parities relative to the written order of the
word, so the same helpers serve both sides.
"""

from __future__ import annotations

from itertools import combinations


def inversions(seq) -> int:
    count = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                count += 1
    return count


def sort_with_sign(seq):
    """Sort ``seq`` into a word, returning ``(sign, word)``.

    The sign is the parity of the sorting permutation, or 0 when an
    atom repeats (in which case the word is empty).
    """
    items = tuple(seq)
    if len(set(items)) != len(items):
        return 0, ()
    return (-1) ** inversions(items), tuple(sorted(items))


def merge_words(u, v):
    """Merge two sorted words, returning ``(sign, merged)``.

    Returns ``(0, None)`` when the words share an atom.  The sign is
    the parity of the shuffle taking the concatenation uv to sorted
    order.
    """
    if set(u) & set(v):
        return 0, None
    cross = sum(1 for x in u for y in v if x > y)
    return (-1) ** cross, tuple(sorted(u + v))


def position_slices(n, parts):
    """Ordered partitions of ``range(n)`` into blocks of the given sizes.

    Yields ``(sign, blocks)`` where each block keeps its positions in
    increasing order and the sign is the parity of the concatenation of
    the blocks as a permutation of ``range(n)``.  Yields nothing when a
    part is negative or the sizes do not sum to ``n``.
    """
    parts = tuple(parts)
    if any(p < 0 for p in parts) or sum(parts) != n:
        return

    def rec(remaining, sizes):
        if not sizes:
            yield ()
            return
        k = sizes[0]
        for block in combinations(remaining, k):
            taken = set(block)
            rest = tuple(x for x in remaining if x not in taken)
            for tail in rec(rest, sizes[1:]):
                yield (block,) + tail

    for blocks in rec(tuple(range(n)), parts):
        flat = [i for b in blocks for i in b]
        yield (-1) ** inversions(flat), blocks


def word_slices(word, parts):
    """Signed slices of ``word`` into subwords of the given sizes."""
    word = tuple(word)
    for sign, blocks in position_slices(len(word), parts):
        yield sign, tuple(tuple(word[i] for i in b) for b in blocks)
