"""Fold-wise kernels shared by the coordinate and letterplace tensor powers.

Terms are maps from m-tuples of words to coefficients.  The product is
the Z2-graded one; the raising and lowering geometric products move a
degree-h slice of the source fold into the destination fold with the
Koszul sign of the folds crossed on the way.
"""

from __future__ import annotations

from .words import merge_words, word_slices


def graded_product_terms(a_terms: dict, b_terms: dict) -> dict:
    out: dict = {}
    for ka, ca in a_terms.items():
        for kb, cb in b_terms.items():
            koszul = sum(len(ka[i]) * len(kb[j])
                         for i in range(len(ka)) for j in range(i))
            sign = -1 if koszul % 2 else 1
            folds = []
            for u, v in zip(ka, kb):
                s, w = merge_words(u, v)
                if s == 0:
                    folds = None
                    break
                sign *= s
                folds.append(w)
            if folds is None:
                continue
            key = tuple(folds)
            c = out.get(key, 0) + sign * ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out


def diamond_terms(terms: dict, h: int, dest: int, src: int, m: int) -> dict:
    """Geometric product kernel: slice fold ``src``, graft onto ``dest``.

    ``src < dest`` raises: the top part of the (a-h, h) slice of the
    source is wedged onto the left of the destination.  ``src > dest``
    lowers: the bottom part of the (h, a-h) slice is wedged onto the
    right.  ``src == dest`` is the diagonal operator, defined for h = 1
    only, scaling each term by the step of the fold.
    """
    if h < 0:
        raise ValueError("negative power")
    if not (1 <= dest <= m and 1 <= src <= m):
        raise ValueError(f"fold out of range for m={m}")
    if dest == src:
        if h != 1:
            raise ValueError("diagonal geometric product is defined for h = 1 only")
        out = {}
        for key, c in terms.items():
            v = c * len(key[src - 1])
            if v:
                out[key] = v
        return out
    if h == 0:
        return dict(terms)

    lo, hi = min(dest, src), max(dest, src)
    out: dict = {}
    for key, c in terms.items():
        w = key[src - 1]
        a = len(w)
        if h > a:
            continue
        between = sum(len(key[k]) for k in range(lo, hi - 1))
        pref = -1 if (h * between) % 2 else 1
        parts = (a - h, h) if src < dest else (h, a - h)
        moved_at = 1 if src < dest else 0
        for sl_sign, blocks in word_slices(w, parts):
            moved = blocks[moved_at]
            kept = blocks[1 - moved_at]
            if src < dest:
                msign, merged = merge_words(moved, key[dest - 1])
            else:
                msign, merged = merge_words(key[dest - 1], moved)
            if msign == 0:
                continue
            folds = list(key)
            folds[src - 1] = kept
            folds[dest - 1] = merged
            nk = tuple(folds)
            v = out.get(nk, 0) + c * pref * sl_sign * msign
            if v:
                out[nk] = v
            elif nk in out:
                del out[nk]
    return out
