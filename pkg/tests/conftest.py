import itertools

import numpy as np
import pytest

from qmatball.permgroup import AdmissibleString, Permutation, admissible_bound


def subgroup_on_first_half(m: int) -> list[Permutation]:
    """All permutations moving only 1..m/2 (the double-coset subgroup)."""
    n = m // 2
    tail = tuple(range(n + 1, m + 1))
    return [
        Permutation(m, perm + tail) for perm in itertools.permutations(range(1, n + 1))
    ]


def brute_force_orbit(sigma: Permutation) -> list[Permutation]:
    sub = subgroup_on_first_half(sigma.m)
    return [g * sigma * h for g in sub for h in sub]


def all_reduced_words(sigma: Permutation) -> list[tuple[int, ...]]:
    """Every reduced word of sigma, via recursion on right descents."""
    if sigma.is_identity():
        return [()]
    words = []
    for i in range(1, sigma.m):
        if sigma(i) > sigma(i + 1):
            shorter = sigma * Permutation.transposition(sigma.m, i)
            words.extend(word + (i,) for word in all_reduced_words(shorter))
    return sorted(set(words))


def random_phases_for(ks, rng) -> AdmissibleString:
    """Admissible string over ks with a random phase on every free row."""
    n = len(ks)
    phases = []
    for j in range(n, 0, -1):
        if ks[n - j] == admissible_bound(ks, j):
            phases.append(0.0)
        else:
            phases.append(float(rng.uniform(0.0, 2.0 * np.pi * 0.999)))
    return AdmissibleString(n, tuple(ks), tuple(phases))


def term_signature(op):
    """Multiset of (scalar, factor-tag-tuple) pairs, scalars rounded."""
    sig = []
    for term in op.terms:
        tags = tuple(
            "I" if F is None else "*".join(F.provenance or ("?",))
            for F in term.factors
        )
        sig.append((complex(round(term.scalar.real, 12), round(term.scalar.imag, 12)), tags))
    return sorted(sig, key=repr)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
