"""Set-level hypotheses: dilation-free, reduced, homography-free, and the U/V families."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import arith
from .errors import DomainError, HypothesisError
from .forms import BinaryForm, MonicPolynomial, discriminant, lambda_gap
from .homography import ProjectiveMap, inversion_pair
from .isomorphy import DEFAULT_DENOM_CAP, DEFAULT_PRECISION, isomorphisms

CERTIFIED = "certified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

THEOREM_486 = "theorem486"
THEOREM_527 = "theorem527"
ROOT_SEARCH = "root_search"


@dataclass(frozen=True)
class FormSet:
    degree: int
    members: tuple[BinaryForm, ...]

    def __init__(self, members: Iterable[BinaryForm]):
        members = tuple(members)
        if not members:
            raise DomainError("a form set needs at least one member")
        d = members[0].degree
        if any(F.degree != d for F in members):
            raise DomainError("all forms in a set must share the degree")
        if len({F.coeffs for F in members}) != len(members):
            raise DomainError("duplicate forms in set")
        object.__setattr__(self, "degree", d)
        object.__setattr__(self, "members", members)

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def pairs(self):
        return itertools.combinations(self.members, 2)


@dataclass(frozen=True)
class Certificate:
    verdict: str
    route: str
    witness: dict | None = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "route": self.route, "witness": self.witness}
        if self.reason:
            out["reason"] = self.reason
        return out


def _fmt(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# dilations

def dilation_solutions(F: BinaryForm, G: BinaryForm) -> list[tuple[Fraction, Fraction]]:
    """All rational (u, v) with F(uX, vY) = G(X, Y)."""
    if F.degree != G.degree:
        raise DomainError("forms must have equal degree")
    d = F.degree
    a, b = F.coeffs, G.coeffs
    support = [i for i in range(d + 1) if a[i] != 0]
    if support != [i for i in range(d + 1) if b[i] != 0]:
        return []
    if len(support) < 2:
        raise DomainError("monomial forms have infinitely many dilations")
    i, j = support[0], support[1]
    # (v/u)^(j-i) = (b_j a_i)/(a_j b_i), then u^d w^i = b_i/a_i
    out = set()
    for w in arith.rational_nth_roots(b[j] * a[i] / (a[j] * b[i]), j - i):
        if w == 0:
            continue
        for u in arith.rational_nth_roots(b[i] / (a[i] * w ** i), d):
            if u == 0:
                continue
            v = w * u
            if all(a[k] * u ** (d - k) * v ** k == b[k] for k in support):
                out.add((u, v))
    return sorted(out)


def is_dilation_free(S: FormSet) -> Certificate:
    for F, G in itertools.permutations(S.members, 2):
        sols = dilation_solutions(F, G)
        if sols:
            u, v = sols[0]
            return Certificate(REFUTED, "dilation", {"F": str(F), "G": str(G), "u": _fmt(u), "v": _fmt(v)})
    return Certificate(CERTIFIED, "dilation")


def _is_binomial(F: BinaryForm) -> bool:
    return F.coeffs[0] != 0 and F.coeffs[-1] != 0 and not any(F.coeffs[1:-1])


def antidiagonal_solutions(F: BinaryForm, G: BinaryForm, over: str = "Q") -> list[tuple]:
    """(u, v) with F(vY, uX) = G(X, Y) for binomials F = aX^d + bY^d, G = a'X^d + b'Y^d.

    F(vY, uX) = b u^d X^d + a v^d Y^d, so u^d = a'/b and v^d = b'/a.
    Over C a solution always exists; the returned marker is ("C", "C").
    """
    d = F.degree
    a, b = F.coeffs[0], F.coeffs[-1]
    a2, b2 = G.coeffs[0], G.coeffs[-1]
    if over == "C":
        return [("C", "C")]
    return [(u, v) for u in arith.rational_nth_roots(a2 / b, d) for v in arith.rational_nth_roots(b2 / a, d)]


def is_reduced(S: FormSet, over: str = "Q") -> Certificate:
    """The three reducedness clauses; the antidiagonal clause is solved over ``over`` (Q or C)."""
    for F in S:
        if F.coeffs[0] == 0 or F.coeffs[-1] == 0:
            return Certificate(REFUTED, "reduced", {"F": str(F)}, "a0*ad != 0")
    dil = is_dilation_free(S)
    if dil.verdict != CERTIFIED:
        return Certificate(REFUTED, "reduced", dil.witness, "dilation-free")
    binomials = [F for F in S if _is_binomial(F)]
    for F, G in itertools.permutations(binomials, 2):
        sols = antidiagonal_solutions(F, G, over)
        if sols:
            u, v = sols[0]
            return Certificate(
                REFUTED, "reduced", {"F": str(F), "G": str(G), "u": str(u), "v": str(v)}, "binomial swap"
            )
    return Certificate(CERTIFIED, "reduced")


# ---------------------------------------------------------------------------
# membership in the explicit families

def _odd_sign_rule(F: BinaryForm) -> bool:
    k = next((k for k in range(1, F.degree + 1, 2) if F.coeffs[k] != 0), None)
    return k is None or F.coeffs[k] > 0


def _zero_run(F: BinaryForm, lam: int) -> bool:
    d = F.degree
    return all(F.coeffs[k] == 0 for k in range(lam + 1, lam + 5) if k <= d) and lam + 4 <= d


def _is_middle_trinomial(F: BinaryForm) -> bool:
    d = F.degree
    if d % 2:
        return False
    return all(c == 0 for k, c in enumerate(F.coeffs) if k not in (0, d // 2, d))


def membership(F: BinaryForm, which: str) -> tuple[bool, str]:
    """Membership in U1, U2, V1 or V2; returns (member, first violated clause or 'ok')."""
    which = which.upper()
    if which not in ("U1", "U2", "V1", "V2"):
        raise DomainError(f"unknown set {which!r}")
    d = F.degree
    a = F.coeffs
    if d < 2 or discriminant(F) == 0:
        return False, "nonzero discriminant"
    integral = which in ("U2", "V2")
    if integral and not F.is_integral():
        return False, "integer coefficients"
    if integral:
        if not a[0] > 0:
            return False, "a0 > 0"
    elif a[0] == 0:
        return False, "a0 != 0"
    if which in ("U1", "V1"):
        if not (a[d - 1] == 1 and a[d] == 1):
            return False, "a_{d-1} = a_d = 1"
    elif a[d] == 0:
        return False, "a_d != 0"
    lam = lambda_gap(F, "plus")
    if which == "U1":
        if 2 * lam < d + 3:
            return False, "Lambda+ >= (d+3)/2"
        return True, "ok"
    if which == "U2":
        if not (2 * lam >= d + 3 and lam <= d - 1):
            return False, "(d+3)/2 <= Lambda+ <= d-1"
    if which in ("V1", "V2"):
        upper = d - 6 if which == "V1" else d - 5
        if not (2 * lam >= d and lam <= upper):
            return False, f"d/2 <= Lambda+ <= d-{d - upper}"
        if not _zero_run(F, lam):
            return False, "a_k = 0 for Lambda+ < k <= Lambda+ + 4"
        if which == "V1":
            return True, "ok"
    if d < 2 or not (arith.is_k_free(a[0], d) and arith.is_k_free(a[d], d)):
        return False, "a0 and a_d are d-free"
    if not _odd_sign_rule(F):
        return False, "first nonzero odd-index coefficient is positive"
    if which == "V2" and _is_middle_trinomial(F):
        return False, "not a0 X^d + a_{d/2} X^{d/2} Y^{d/2} + a_d Y^d"
    return True, "ok"


# ---------------------------------------------------------------------------
# homographies between monic polynomials under the theorem hypotheses

@dataclass(frozen=True)
class PairClassification:
    route: str
    homotheties: tuple[Fraction, ...]
    inversions: tuple[Fraction, ...]

    def maps(self) -> list[ProjectiveMap]:
        out = [ProjectiveMap(q, 0, 0, 1) for q in self.homotheties]
        out += [ProjectiveMap(0, r, 1, 0) for r in self.inversions]
        return out


def _lambda_plus(f: MonicPolynomial) -> int:
    return lambda_gap(f.to_form(), "plus")


def _gap_pattern(f: MonicPolynomial) -> bool:
    d = f.degree
    lam = _lambda_plus(f)
    return lam <= d - 5 and all(f.coeffs[k] == 0 for k in range(lam + 1, lam + 5))


def pair_route(f: MonicPolynomial, g: MonicPolynomial) -> str | None:
    d = f.degree
    if f.coeffs[-1] == 0 or g.coeffs[-1] == 0:
        return None
    lf, lg = _lambda_plus(f), _lambda_plus(g)
    if lf + lg >= d + 3:
        return "gap_sum"
    if d >= 10 and lf + lg >= d and _gap_pattern(f) and _gap_pattern(g):
        return "gap_pattern"
    return None


def homothety_solutions(f: MonicPolynomial, g: MonicPolynomial) -> list[Fraction]:
    """Rational q with h_{q,0}(f) = g, i.e. beta_j = alpha_j q^j."""
    a, b = f.coeffs, g.coeffs
    d = f.degree
    supp = [j for j in range(1, d + 1) if a[j] != 0]
    if supp != [j for j in range(1, d + 1) if b[j] != 0]:
        return []
    j = supp[0]
    return [q for q in arith.rational_nth_roots(b[j] / a[j], j) if q != 0 and all(a[k] * q ** k == b[k] for k in supp)]


def inversion_solutions(f: MonicPolynomial, g: MonicPolynomial) -> list[Fraction]:
    """Rational r with h_{0,r,0}(f) = g; r^d = alpha_d beta_d is necessary."""
    a, b = f.coeffs, g.coeffs
    d = f.degree
    if a[d] == 0 or b[d] == 0:
        return []
    return [r for r in arith.rational_nth_roots(a[d] * b[d], d) if r != 0 and inversion_pair(f, r) == g]


def classify_pair_homographies(f: MonicPolynomial, g: MonicPolynomial) -> PairClassification:
    """All rational homographies with h(f) = g, when the gap hypotheses exclude other shapes."""
    if f.degree != g.degree:
        raise DomainError("degrees differ")
    for p in (f, g):
        if discriminant(p.to_form()) == 0:
            raise DomainError("zero discriminant")
    route = pair_route(f, g)
    if route is None:
        raise HypothesisError("gap hypotheses not met; fall back to the root search")
    return PairClassification(route, tuple(homothety_solutions(f, g)), tuple(inversion_solutions(f, g)))


# ---------------------------------------------------------------------------
# theorem routes

def _theorem_clauses(S: FormSet, which: str) -> str | None:
    d = S.degree
    red = is_reduced(S)
    if red.verdict != CERTIFIED:
        return f"reduced ({red.reason})"
    for F in S:
        lam = lambda_gap(F, "plus")
        if which == "486":
            if 2 * lam < d + 3:
                return "Lambda+ >= (d+3)/2"
        else:
            if d < 11:
                return "d >= 11"
            if not (2 * lam >= d and lam <= d - 4):
                return "d/2 <= Lambda+ <= d-4"
            if not all(F.coeffs[k] == 0 for k in range(lam + 1, lam + 5) if k <= d) or lam + 4 > d:
                return "a_k = 0 for Lambda+ < k <= Lambda+ + 4"
            if _is_middle_trinomial(F):
                return "no trinomial a0 X^d + a_{d/2} X^{d/2} Y^{d/2} + a_d Y^d"
    if which == "486" and d < 3:
        return "d >= 3"
    return None


def check_theorem(S: FormSet, which: str | int) -> Certificate:
    """Certified when every hypothesis of the chosen theorem holds; never refutes."""
    which = str(which)
    if which not in ("486", "527"):
        raise DomainError("theorem must be 486 or 527")
    route = THEOREM_486 if which == "486" else THEOREM_527
    for F in S:
        if discriminant(F) == 0:
            return Certificate(INCONCLUSIVE, route, None, "nonzero discriminant")
    failed = _theorem_clauses(S, which)
    if failed:
        return Certificate(INCONCLUSIVE, route, None, failed)
    return Certificate(CERTIFIED, route)


def homography_free(
    S: FormSet,
    budget: int | None = None,
    theorem: str = "auto",
    precision_bits: int = DEFAULT_PRECISION,
    denom_cap: int = DEFAULT_DENOM_CAP,
    threads: int = 1,
) -> Certificate:
    """Theorem fast paths first, then a pairwise isomorphism search over Q.

    ``budget`` caps the number of pairs examined by the search.
    """
    if len(S) == 1:
        return Certificate(CERTIFIED, ROOT_SEARCH, None, "singleton")
    routes = ("486", "527") if theorem == "auto" else (str(theorem),)
    reasons = []
    for which in routes:
        cert = check_theorem(S, which)
        if cert.verdict == CERTIFIED:
            return cert
        reasons.append(f"{cert.route}: {cert.reason}")
    pairs = list(S.pairs())
    truncated = budget is not None and len(pairs) > budget
    if truncated:
        pairs = pairs[:budget]

    def search(pair):
        F, G = pair
        return isomorphisms(F, G, allow_scalar=False, precision_bits=precision_bits, denom_cap=denom_cap)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(search, pairs))
    for (F, G), certs in zip(pairs, results):
        if certs:
            # report the representative with a positive leading entry
            g = next((c.gamma for c in certs if next(e for e in c.gamma.entries() if e != 0) > 0), certs[0].gamma)
            return Certificate(
                REFUTED,
                ROOT_SEARCH,
                {"F": str(F), "G": str(G), "gamma": [[str(x) for x in row] for row in g.rows()]},
                "F o gamma = G",
            )
    if truncated:
        return Certificate(INCONCLUSIVE, ROOT_SEARCH, None, f"budget of {budget} pairs exhausted")
    return Certificate(CERTIFIED, ROOT_SEARCH, None, "; ".join(reasons))
