"""Random generators for the explicit families, shared by several test modules."""

import random

from fewform.certification import membership
from fewform.forms import BinaryForm


def random_u1(rng: random.Random, d: int = 7) -> BinaryForm:
    while True:
        lam = rng.randint((d + 4) // 2, d - 1)
        c = [0] * (d + 1)
        c[0] = rng.choice([k for k in range(-9, 10) if k])
        for k in range(lam, d - 1):
            c[k] = rng.randint(-9, 9)
        c[lam] = c[lam] or 1
        c[d - 1] = c[d] = 1
        F = BinaryForm(c)
        if membership(F, "U1")[0]:
            return F


def random_v2(rng: random.Random, d: int = 12) -> BinaryForm:
    while True:
        lam = rng.randint((d + 1) // 2, d - 5)
        c = [0] * (d + 1)
        c[0] = rng.randint(1, 30)
        c[lam] = rng.choice([k for k in range(-30, 31) if k])
        for k in range(lam + 5, d):
            c[k] = rng.randint(-30, 30)
        c[d] = rng.choice([k for k in range(-30, 31) if k])
        F = BinaryForm(c)
        if membership(F, "V2")[0]:
            return F


def distinct_pairs(gen, rng: random.Random, n: int):
    out = []
    while len(out) < n:
        F, G = gen(rng), gen(rng)
        if F != G:
            out.append((F, G))
    return out
