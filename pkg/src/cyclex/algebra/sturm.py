"""Exact real-root counting and isolation over Q by Sturm sequences."""

from __future__ import annotations

from fractions import Fraction

from .unipoly import UniPoly

__all__ = [
    "sturm_sequence",
    "sturm_has_real_root",
    "count_real_roots",
    "isolate_real_roots",
    "root_bound",
    "squarefree_part",
]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def squarefree_part(u: UniPoly) -> UniPoly:
    g = u.gcd(u.derivative())
    return u // g if g.degree > 0 else u


def sturm_sequence(u: UniPoly) -> list[UniPoly]:
    """Sturm chain of the squarefree part of ``u``.

    Using the squarefree part keeps the ``(lo, hi]`` counting rule valid
    when an endpoint is itself a root.
    """
    if not u:
        raise ValueError("Sturm sequence of the zero polynomial")
    u = squarefree_part(u)
    seq = [u, u.derivative()]
    while seq[-1]:
        r = seq[-2] % seq[-1]
        seq.append(-r)
    seq.pop()
    return seq


def _variations(signs) -> int:
    s = [v for v in signs if v]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _at_infinity(seq: list[UniPoly], positive: bool) -> int:
    return _variations(
        _sign(p.lc) * (1 if positive or p.degree % 2 == 0 else -1) for p in seq
    )


def _at(seq: list[UniPoly], x: Fraction) -> int:
    return _variations(_sign(p(x)) for p in seq)


def count_real_roots(u: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots in ``(lo, hi]``; unbounded by default."""
    seq = sturm_sequence(u)
    vlo = _at_infinity(seq, False) if lo is None else _at(seq, Fraction(lo))
    vhi = _at_infinity(seq, True) if hi is None else _at(seq, Fraction(hi))
    return vlo - vhi


def sturm_has_real_root(u: UniPoly) -> bool:
    if u.degree == 0:
        return False
    return count_real_roots(u) > 0


def root_bound(u: UniPoly) -> Fraction:
    """Cauchy bound: all roots lie in ``[-B, B]``."""
    lc = abs(u.lc)
    return 1 + max((abs(c) / lc for c in u.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(u: UniPoly, width=Fraction(1, 10**12)) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]``, each holding exactly one distinct root,
    bisected until narrower than ``width``."""
    seq = sturm_sequence(u)
    b = root_bound(u)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-b, b, _at(seq, -b), _at(seq, b))]
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vmid = _at(seq, mid)
        stack.append((mid, hi, vmid, vhi))
        stack.append((lo, mid, vlo, vmid))
    return sorted(out)
