"""Replays a fixed list of exact identities and reports each one's status.

Fixtures can be swapped out through ``overrides``, which is how fault
injection is exercised: changing one form should make exactly the checks
that depend on it fail.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import arith, fixtures
from .counting import theta_d
from .forms import BinaryForm, MonicPolynomial, discriminant
from .homography import (
    apply,
    act_on_form,
    example_f_numerator,
    example_system,
    first_step_solve,
    mat_mul,
    quotient_Q,
    transition_matrices,
)
from .isomorphy import isomorphisms

PASS = "pass"
FAIL = "fail"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class ReplayReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status != PASS]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "passed": len(self.results) - len(self.failures),
            "failed": len(self.failures),
            "results": [r.to_json() for r in self.results],
        }

    def table(self) -> str:
        w = max(len(r.name) for r in self.results)
        lines = [f"{r.name:<{w}}  {r.status.upper():<4}  {r.detail}".rstrip() for r in self.results]
        lines.append(f"{len(self.results) - len(self.failures)} passed, {len(self.failures)} failed")
        return "\n".join(lines)


def _invariance(F: BinaryForm, gamma) -> tuple[bool, str]:
    G = act_on_form(F, gamma)
    if G == F:
        return True, ""
    i = next(k for k, (a, b) in enumerate(zip(G.coeffs, F.coeffs)) if a != b)
    return False, f"coefficient {i}: got {G.coeffs[i]}, expected {F.coeffs[i]}"


def _check_forms(forms) -> list[tuple[str, bool, str]]:
    out = []
    for key in ("cubic", "quartic", "decic"):
        F, gamma = forms[key]
        ok, msg = _invariance(F, gamma)
        out.append((f"{key}-invariance", ok, msg))
    F = forms["decic"][0]
    disc = discriminant(F)
    out.append(("decic-discriminant", disc != 0, "" if disc != 0 else "discriminant is 0"))
    g = F.content_gcd()
    out.append(("decic-coprime", g == 1, "" if g == 1 else f"content {g}"))
    return out


def _check_cubic_pair():
    f, g, h = fixtures.CUBIC_PAIR_F, fixtures.CUBIC_PAIR_G, fixtures.CUBIC_PAIR_H
    got = apply(h, f)
    if got != g:
        return False, f"got {got}"
    prod = f(h.s) * g(h.q)
    if prod != h.r ** 3:
        return False, f"f(s)g(q) = {prod}"
    return True, "f(s)g(q) = 8"


def _check_first_step(dmax=20):
    for d in range(4, dmax + 1):
        sol = first_step_solve(d, 1, 2, 1)
        want_g = MonicPolynomial([1] + [0] * (d - 2) + [d, 3 - d])
        bad = []
        if sol.g != want_g:
            bad.append(f"g = {sol.g}")
        if sol.kappa != 4:
            bad.append(f"kappa = {sol.kappa}")
        if sol.alpha_3 != arith.binom(d, 3):
            bad.append(f"alpha_3 = {sol.alpha_3}")
        if any(sol.f.coeffs[i] != 0 for i in (1, 2)):
            bad.append("alpha_1 or alpha_2 nonzero")
        if discriminant(sol.g.to_form()) == 0:
            bad.append("disc(g) = 0")
        if bad:
            return False, f"d={d}: " + ", ".join(bad)
    return True, f"d = 4..{dmax}"


Q_CLOSED = {
    0: lambda lp: Fraction(lp + 3, 3 * (lp + 2)),
    1: lambda lp: Fraction(lp + 2, 2 * (lp + 1)),
    2: lambda lp: Fraction(lp + 2, 2),
}


def _check_quotient(nu, lmax=50):
    for lp in range(1, lmax + 1):
        q = quotient_Q(lp, nu)
        if q == 1:
            return False, f"Q = 1 at lambda'={lp}"
        want = Q_CLOSED[nu](lp)
        if q != want:
            return False, f"lambda'={lp}: computed {q}, closed form {want}"
    return True, f"lambda' = 1..{lmax}"


def _check_inverse(dmax=64):
    for d in range(1, dmax + 1):
        T = transition_matrices(d)
        P = mat_mul(T.A, T.A_inv)
        n = len(P)
        if any(P[i][j] != (1 if i == j else 0) for i in range(n) for j in range(n)):
            return False, f"d={d}"
    return True, f"d = 1..{dmax}"


def _check_gap_example():
    ex = example_system(12, 3)
    if ex.beta_lambda is None:
        return False, "singular system"
    num = example_f_numerator(12, 3, ex.beta_lambda, ex.beta_d)
    lead = num[0]
    if lead == 0 or num[1] != 0 or num[3] != 0:
        return False, f"alpha_1 = {num[1] / lead}, alpha_3 = {num[3] / lead}"
    return True, "d=12, lambda'=3"


def g_a_discriminant_poly(points: int = 30) -> list[Fraction]:
    """disc(t^12 + a t^6 + t + 1) as a polynomial in a, by exact interpolation."""
    xs = list(range(points))
    ys = []
    for a in xs:
        c = [1] + [0] * 5 + [a] + [0] * 4 + [1, 1]
        ys.append(discriminant(BinaryForm(c)))
    return arith.lagrange_interpolate(xs, ys)


def _check_g_a():
    p = g_a_discriminant_poly()
    roots = arith.rational_roots(p)
    if roots:
        return False, f"rational roots {roots}"
    return True, f"degree {len(p) - 1} in a, no rational root"


def _check_inversion_sign():
    F = fixtures.inversion_quartic(2, 3)
    G = act_on_form(F, fixtures.INVERSION)
    ratio = G.coeffs[0] / F.coeffs[0]
    lifts = [c for c in isomorphisms(F, F) if c.gamma.entries()[0] == 0]
    if lifts:
        return False, f"F o (0,-1;1,0) = {ratio} F, so the inversion lifts"
    return True, ""


def _check_theta():
    v = theta_d(3)
    if int(v * 10 ** 4) != 6475:
        return False, f"theta_3 = {v}"
    if abs(theta_d(4) - 13 / 29) > 1e-15 or theta_d(21) != 1 / 20:
        return False, "theta_4 or theta_21"
    return True, f"theta_3 = {v:.6f}"


def verify_paper(overrides: dict | None = None) -> ReplayReport:
    forms = dict(fixtures.REFERENCE_FORMS)
    if overrides:
        forms.update(overrides)
    report = ReplayReport()

    def run(name, fn, *args):
        t = time.perf_counter()
        try:
            ok, detail = fn(*args)
        except Exception as exc:  # a crash is a failure of that item only
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        report.results.append(CheckResult(name, PASS if ok else FAIL, detail, time.perf_counter() - t))

    t = time.perf_counter()
    for name, ok, detail in _check_forms(forms):
        report.results.append(CheckResult(name, PASS if ok else FAIL, detail, time.perf_counter() - t))
    run("cubic-pair-homography", _check_cubic_pair)
    run("first-step-family", _check_first_step)
    for nu in (0, 1, 2):
        run(f"quotient-closed-form-nu{nu}", _check_quotient, nu)
    run("transition-inverse", _check_inverse)
    run("gap-example-d12", _check_gap_example)
    run("g_a-discriminant", _check_g_a)
    run("inversion-not-lifted", _check_inversion_sign)
    run("theta-values", _check_theta)
    return report


def mutated(F: BinaryForm, index: int = 0, delta: int = 1) -> BinaryForm:
    c = list(F.coeffs)
    c[index] += delta
    return BinaryForm(c)


__all__ = ["verify_paper", "ReplayReport", "CheckResult", "mutated", "g_a_discriminant_poly", "Q_CLOSED"]
