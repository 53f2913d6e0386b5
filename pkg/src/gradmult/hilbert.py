"""Hilbert series of homogeneous quotients via the leading-ideal numerator.

The numerator over (1-t)^n is computed from the monomial leading ideal by
pivot recursion: split on a most-frequent variable p, using
N(I) = N(I + p) + t * N(I : p), with pairwise-coprime generator sets as the
closed-form base case.
"""

import math
from dataclasses import dataclass

from .monomials import mono_divides


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_add(a, b):
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return _poly_trim(out)


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, va in enumerate(a):
        if va == 0:
            continue
        for j, vb in enumerate(b):
            out[i + j] += va * vb
    return _poly_trim(out)


def _poly_shift(a, k):
    return _poly_trim([0] * k + list(a))


def _one_minus_tk(k):
    out = [0] * (k + 1)
    out[0] = 1
    out[k] = -1
    return out


def _minimalize(gens):
    out = []
    for m in sorted(set(gens), key=lambda e: (sum(e), e)):
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return out


def _numerator(gens):
    """Numerator over (1-t)^n for the monomial ideal with these minimal generators."""
    if not gens:
        return [1]
    n = len(gens[0])
    counts = [0] * n
    for m in gens:
        for i, e in enumerate(m):
            if e:
                counts[i] += 1
    top = max(counts)
    if top <= 1:
        # supports pairwise disjoint: complete intersection of monomials
        out = [1]
        for m in gens:
            out = _poly_mul(out, _one_minus_tk(sum(m)))
        return out
    pivot = counts.index(top)
    pure = tuple(1 if i == pivot else 0 for i in range(n))
    plus_gens = [m for m in gens if m[pivot] == 0] + [pure]
    colon_gens = _minimalize(
        m[:pivot] + (m[pivot] - 1,) + m[pivot + 1:] if m[pivot] else m for m in gens
    )
    return _poly_add(_numerator(plus_gens), _poly_shift(_numerator(colon_gens), 1))


@dataclass(frozen=True)
class HilbertData:
    """Reduced Hilbert series Q(t)/(1-t)^d of a homogeneous quotient."""

    numerator: tuple
    dimension: int
    multiplicity: int

    def hilbert_function(self, m):
        """dim_k of the degree-m graded piece."""
        if m < 0:
            return 0
        d = self.dimension
        if d == 0:
            return self.numerator[m] if m < len(self.numerator) else 0
        total = 0
        for j, q in enumerate(self.numerator):
            if j > m:
                break
            total += q * math.comb(m - j + d - 1, d - 1)
        return total


def hilbert_data(ideal):
    """Hilbert data of ring/ideal for a homogeneous proper ideal (zero ideal allowed)."""
    gb = ideal.groebner()
    for g in gb:
        if not g.is_homogeneous():
            raise ValueError("hilbert_data requires a homogeneous ideal")
    if ideal.is_unit():
        raise ValueError("hilbert_data of the unit ideal (empty quotient)")
    n = ideal.ring.n
    num = _numerator([g.leading_monomial() for g in gb])
    cancels = 0
    while num and sum(num) == 0:
        acc = 0
        out = []
        for v in num[:-1]:
            acc += v
            out.append(acc)
        num = _poly_trim(out)
        cancels += 1
    d = n - cancels
    e = sum(num)
    if e <= 0 or d < 0:
        raise ArithmeticError("inconsistent Hilbert series reduction")
    return HilbertData(numerator=tuple(num), dimension=d, multiplicity=e)
