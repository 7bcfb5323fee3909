"""Seeded random generators of exact rational points, flags and PL functions."""
import random
from fractions import Fraction

from stratlink.flags import make_flag, make_regular
from stratlink.geometry import PLFunction, SimplexPoint, in_phi_hood
from stratlink.poset import chain_poset

CHAIN5 = chain_poset("01234")


def random_flag(rng: random.Random, P=CHAIN5, max_len=5):
    n = rng.randint(1, max_len)
    return make_flag(P, sorted(rng.choices(P.elements, k=n), key=P.rank))


def random_point(rng: random.Random, J, zero_above=None, sparse=0.3, den=12):
    P = J.poset
    while True:
        w = []
        for e in J.entries:
            if zero_above is not None and not P.leq(e, zero_above):
                w.append(0)
            elif rng.random() < sparse:
                w.append(0)
            else:
                w.append(rng.randint(1, den))
        if sum(w):
            total = sum(w)
            return SimplexPoint(J, tuple(Fraction(x, total) for x in w))


def random_phi(rng: random.Random):
    k = rng.randint(1, 4)
    xs = sorted({Fraction(rng.randint(1, 19), 20) for _ in range(k - 1)})
    xs = [Fraction(0)] + xs + [Fraction(1)]
    ys = [Fraction(rng.randint(0, 6), 6)] + [Fraction(rng.randint(1, 12), 12) for _ in xs[1:]]
    return PLFunction(tuple(xs), tuple(ys))


def point_in_hoods(rng: random.Random, J, labels, zero_above=None, tries=60):
    """Random point of |Δ^J| lying in the standard neighborhood of every label given."""
    for _ in range(tries):
        x = random_point(rng, J, zero_above=zero_above, sparse=0.4)
        if all(in_phi_hood(x, p) for p in labels):
            return x
    return None


def random_regular_sublabels(rng: random.Random, J):
    labels = sorted(set(J.entries), key=J.poset.rank)
    k = rng.randint(1, len(labels))
    return make_regular(J.poset, sorted(rng.sample(labels, k), key=J.poset.rank))
