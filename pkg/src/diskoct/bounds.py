"""Closed-form approximation-ratio bound of the three-candidate algorithm.

Everything is parameterised by the dead-density coefficient

    kappa = 3 ** -((3/8) d + 5/4)

where d is the average degree of G[V(T)]. The per-vertex dead probability
bound (1/3) ** ((3/8) d + 1/4) equals 3 * kappa. The derandomized variant
substitutes 400 ** -3 for that probability, i.e. kappa = 400 ** -3 / 3.

With rho0 the base-subroutine ratio, the bound rho is the larger root of

    (kappa + 1) rho^2 - ((2 + rho0) kappa + 3) rho + 2 rho0 kappa.

Arithmetic runs in mpmath at 50 significant digits.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf, power, sqrt

mp.dps = 50

DERANDOMIZED_DEAD_FRACTION = mpf(400) ** -3


def _m(x) -> mpf:
    # strings keep decimal inputs like "2.25" exact before conversion
    return mpf(str(x)) if isinstance(x, float) else mpf(x)


def kappa_from_degree(d) -> mpf:
    d = _m(d)
    if d < 0:
        raise ValueError("average degree must be non-negative")
    return power(3, -(mpf(3) / 8 * d + mpf(5) / 4))


def kappa_derandomized() -> mpf:
    return DERANDOMIZED_DEAD_FRACTION / 3


def dead_probability_lower_bound(deg) -> mpf:
    """(1/3) ** ((3/8) deg + 1/4)."""
    return power(3, -(mpf(3) / 8 * _m(deg) + mpf(1) / 4))


def quadratic(rho, kappa, rho0) -> mpf:
    rho, kappa, rho0 = _m(rho), _m(kappa), _m(rho0)
    return (kappa + 1) * rho**2 - ((2 + rho0) * kappa + 3) * rho + 2 * rho0 * kappa


@dataclass(frozen=True)
class BoundParams:
    """Either the average degree ``d`` or ``kappa`` directly, plus ``rho0``."""

    rho0: object = 1
    d: object = None
    kappa_value: object = None

    def __post_init__(self):
        if (self.d is None) == (self.kappa_value is None):
            raise ValueError("give exactly one of d and kappa")
        if _m(self.rho0) < 1:
            raise ValueError("rho0 must be >= 1")
        if self.kappa_value is not None and not 0 < _m(self.kappa_value) <= 1:
            raise ValueError("kappa must lie in (0, 1]")

    @property
    def kappa(self) -> mpf:
        return kappa_from_degree(self.d) if self.d is not None else _m(self.kappa_value)


@dataclass(frozen=True)
class BoundResult:
    rho: mpf
    root: mpf
    clamped: bool
    a: mpf
    b: mpf
    rho1: mpf
    rho2: mpf
    rho3: mpf
    kappa: mpf
    rho0: mpf

    def to_dict(self, digits: int = 15) -> dict:
        f = float
        return {
            "rho": f(self.rho),
            "root": f(self.root),
            "rho_str": mp.nstr(self.rho, digits),
            "clamped_to_2": self.clamped,
            "a": f(self.a),
            "b": f(self.b),
            "b_exceeds_one": bool(self.b > 1),
            "rho1": f(self.rho1),
            "rho2": f(self.rho2),
            "rho3": f(self.rho3),
            "kappa": f(self.kappa),
            "rho0": f(self.rho0),
        }


def larger_root(kappa, rho0) -> mpf:
    kappa, rho0 = _m(kappa), _m(rho0)
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    A = kappa + 1
    B = (2 + rho0) * kappa + 3
    C = 2 * rho0 * kappa
    return (B + sqrt(B * B - 4 * A * C)) / (2 * A)


def ratio_bound(kappa, rho0) -> tuple[mpf, bool]:
    """Larger root, clamped below at 2; the flag says whether clamping happened.

    The ratio-3 candidate analysis assumes rho >= 2, so a raw root below 2
    only certifies a 2-approximation.
    """
    if _m(rho0) < 1:
        raise ValueError("rho0 must be >= 1")
    root = larger_root(kappa, rho0)
    return (mpf(2), True) if root < 2 else (root, False)


def worst_case_ab(kappa, rho0, rho) -> tuple[mpf, mpf]:
    """The (a, b) at which all three candidate ratios coincide."""
    kappa, rho0, rho = _m(kappa), _m(rho0), _m(rho)
    den = (3 - rho0 + rho) + (rho - 2) * kappa
    if den == 0:
        raise ZeroDivisionError("degenerate denominator in worst-case (a, b)")
    a = (2 * rho - rho0) / den
    return a, 3 * kappa * a


def candidate_ratios(a, b, kappa, rho0, rho) -> tuple[mpf, mpf, mpf]:
    """Ratio bounds of S1, S2 and S3 as functions of a = |T|/opt and b = tri(O)/opt."""
    a, b, kappa, rho0, rho = map(_m, (a, b, kappa, rho0, rho))
    dead = 3 * kappa
    rho1 = 3 * a + rho0 * (1 - a)
    rho2 = rho0 + (1 - dead) * (3 - rho0) * a + (3 - rho0) * b
    rho3 = 2 * b / 3 + rho * (2 - a - b / 3)
    return rho1, rho2, rho3


def bound(kappa, rho0, rho=None) -> BoundResult:
    """Full report: rho, the worst-case (a, b), and rho1..rho3 there.

    ``rho`` defaults to the raw larger root; (a, b) and the candidate ratios
    are evaluated at it.
    """
    kappa, rho0 = _m(kappa), _m(rho0)
    root = larger_root(kappa, rho0)
    clamped_rho, clamped = ratio_bound(kappa, rho0)
    at = root if rho is None else _m(rho)
    a, b = worst_case_ab(kappa, rho0, at)
    r1, r2, r3 = candidate_ratios(a, b, kappa, rho0, at)
    return BoundResult(clamped_rho, root, clamped, a, b, r1, r2, r3, kappa, rho0)
