"""Exact multivariate polynomials in q0..q3 and the entrywise identity proof.

The polynomial engine is the trusted side of the dual check: the squaring
kernel is only believed because every entry it produces, expanded over
rational polynomials in the four indeterminates, is literally equal to the
corresponding product-form entry. A brute-force integer grid gives a second,
fully independent numeric check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .logan import compute_intermediates, rotmat_logan
from .profiles import ScalarProfile, RATIONAL
from .quaternion import ENTRY_NAMES, Quaternion, rotmat_direct

VAR_NAMES = ("q0", "q1", "q2", "q3")
MAX_EXPONENT = 4  # enough for entries of R^T R; everything here is degree <= 2


class Polynomial4:
    """Polynomial in q0..q3 with exact rational coefficients.

    Canonical form: a map from exponent 4-tuples to nonzero coefficients.
    Equality is map equality. Immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        for exps, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != 4 or any(e < 0 or e > MAX_EXPONENT for e in exps):
                raise ValueError(f"bad exponent tuple {exps}")
            clean[exps] = coeff
        self._terms = clean

    @classmethod
    def zero(cls) -> "Polynomial4":
        return cls()

    @classmethod
    def constant(cls, c) -> "Polynomial4":
        return cls({(0, 0, 0, 0): Fraction(c)})

    @classmethod
    def variable(cls, index: int) -> "Polynomial4":
        exps = [0, 0, 0, 0]
        exps[index] = 1
        return cls({tuple(exps): Fraction(1)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def __add__(self, other: "Polynomial4") -> "Polynomial4":
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + coeff
        return Polynomial4(terms)

    def __sub__(self, other: "Polynomial4") -> "Polynomial4":
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) - coeff
        return Polynomial4(terms)

    def __neg__(self) -> "Polynomial4":
        return Polynomial4({e: -c for e, c in self._terms.items()})

    def __mul__(self, other: "Polynomial4") -> "Polynomial4":
        terms = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exps = tuple(x + y for x, y in zip(ea, eb))
                terms[exps] = terms.get(exps, Fraction(0)) + ca * cb
        return Polynomial4(terms)

    def scale(self, c) -> "Polynomial4":
        c = Fraction(c)
        return Polynomial4({e: k * c for e, k in self._terms.items()})

    def evaluate(self, values):
        total = Fraction(0)
        for exps, coeff in self._terms.items():
            term = coeff
            for v, e in zip(values, exps):
                if e:
                    term *= Fraction(v) ** e
            total += term
        return total

    def __eq__(self, other):
        return isinstance(other, Polynomial4) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps in sorted(self._terms, key=lambda e: (-sum(e), e)):
            coeff = self._terms[exps]
            factors = []
            for name, e in zip(VAR_NAMES, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{coeff}*{mono}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    __repr__ = __str__


class PolynomialProfile(ScalarProfile):
    """Arithmetic over Polynomial4. The oracle is allowed to multiply."""

    name = "polynomial"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def square(self, a):
        return a * a

    def double(self, a):
        return a + a

    def halve(self, a):
        return a.scale(Fraction(1, 2))

    @property
    def zero(self):
        return Polynomial4.zero()

    @property
    def one(self):
        return Polynomial4.constant(1)

    def from_real(self, x):
        return Polynomial4.constant(Fraction(x))


POLY = PolynomialProfile()


def symbolic_quaternion() -> Quaternion:
    """The quaternion whose components are the four indeterminates."""
    return Quaternion(*(Polynomial4.variable(i) for i in range(4)))


@dataclass(frozen=True)
class EntryCheck:
    entry: str
    passed: bool
    difference: Polynomial4

    def __str__(self):
        status = "ok" if self.passed else f"FAIL diff = {self.difference}"
        return f"{self.entry}: {status}"


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            c.entry: {"passed": c.passed, "difference": str(c.difference)}
            for c in self.checks
        }

    def __str__(self):
        return "\n".join(str(c) for c in self.checks)


def verify_entrywise_identity() -> IdentityReport:
    """Expand both kernels symbolically and compare all nine entries."""
    q = symbolic_quaternion()
    direct = rotmat_direct(q, POLY).entries()
    logan = rotmat_logan(q, POLY).entries()
    checks = []
    for name in ENTRY_NAMES:
        diff = logan[name] - direct[name]
        checks.append(EntryCheck(name, diff.is_zero(), diff))
    return IdentityReport(tuple(checks))


def printed_errata_report() -> IdentityReport:
    """Expand the source text's printed (uncorrected) assignments.

    Each returned check "passes" when the printed formula is a genuine
    non-identity, i.e. its difference against the product-form entry is a
    nonzero polynomial. This pins the typos down instead of hand-waving them.
    """
    q = symbolic_quaternion()
    p = POLY
    direct = rotmat_direct(q, p).entries()
    inter = compute_intermediates(q, p)

    s0, s2, s3 = p.square(q.q0), p.square(q.q2), p.square(q.q3)
    theta2 = p.add(s0, s2)  # printed but unused by the corrected assembly
    theta3_printed = p.sub(s0, s2)  # printed theta3; corrected form uses q1^2

    printed = {
        "c00": p.add(theta3_printed, inter.theta4),
        "c02": p.sub(p.add(inter.phi2, inter.phi3), inter.lam),
        "c12": p.add(p.sub(inter.phi1, inter.phi5), p.sub(theta2, inter.theta1)),
        "c20": p.sub(p.add(inter.phi4, inter.phi5), inter.lam),
        "c21": p.add(p.sub(inter.phi2, inter.phi3), p.sub(theta3_printed, inter.theta4)),
    }
    checks = []
    for name, poly in printed.items():
        diff = poly - direct[name]
        checks.append(EntryCheck(name, not diff.is_zero(), diff))
    return IdentityReport(tuple(checks))


@dataclass(frozen=True)
class GridResult:
    cases: int
    counterexample: tuple | None

    @property
    def passed(self) -> bool:
        return self.counterexample is None


def grid_equivalence(bound: int) -> GridResult:
    """Compare both kernels with exact arithmetic on every integer quaternion
    in {-bound..bound}^4. Returns the first mismatch, if any."""
    if not 1 <= bound <= 5:
        raise ValueError("bound must be in 1..5 to keep the grid tractable")
    coords = range(-bound, bound + 1)
    cases = 0
    for tup in itertools.product(coords, repeat=4):
        q = Quaternion(*tup)
        cases += 1
        if rotmat_direct(q, RATIONAL).flat() != rotmat_logan(q, RATIONAL).flat():
            return GridResult(cases, tup)
    return GridResult(cases, None)
