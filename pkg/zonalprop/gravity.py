"""Zonal gravity model: field constants, small parameters and inclination polynomials."""
from dataclasses import dataclass, replace

from . import exceptions
from .utils import check_finite

MODELS = ('two-body', 'j2', 'j2j3')


@dataclass(frozen=True)
class GravityField:
    """Central body with the degree 2 and 3 zonal coefficients.

    ``c20`` and ``c30`` are the unnormalized coefficients, ``C20 = -J2`` and ``C30 = -J3``.
    """
    mu: float
    alpha: float
    c20: float = 0.0
    c30: float = 0.0

    def __post_init__(self):
        check_finite(self.mu, self.alpha, self.c20, self.c30, what="gravity constant")
        if self.mu <= 0:
            raise exceptions.DomainError(f"mu must be positive, got {self.mu}")
        if self.alpha <= 0:
            raise exceptions.DomainError(f"alpha must be positive, got {self.alpha}")
        if abs(self.c20) >= 1 or abs(self.c30) >= 1:
            raise exceptions.DomainError(f"Zonal coefficients must be below 1 in magnitude: {self.c20}, {self.c30}")

    @property
    def j2(self):
        return -self.c20

    @property
    def j3(self):
        return -self.c30

    def for_model(self, model):
        if model not in MODELS:
            raise exceptions.ConfigError(f"Unknown model '{model}', use one of {', '.join(MODELS)}")
        if model == 'two-body':
            return replace(self, c20=0.0, c30=0.0)
        if model == 'j2':
            return replace(self, c30=0.0)
        return self

    def inflated(self, multiplier):
        """Same field with C20 scaled by ``multiplier``, used by the scaling-law checks."""
        return replace(self, c20=self.c20 * multiplier)


@dataclass(frozen=True)
class SmallParams:
    eps2: float
    eps3: float
    p: float


def small_params(Theta, field):
    check_finite(Theta, what="angular momentum")
    if Theta <= 0:
        raise exceptions.NonEllipticError(f"Angular momentum must be positive, got {Theta}")

    p = Theta * Theta / field.mu
    ratio = field.alpha / p
    eps2 = 0.25 * field.c20 * ratio * ratio

    if field.c20 == 0.0:
        if field.c30 != 0.0:
            raise exceptions.DomainError("eps3 is undefined for a field with C30 but no C20")
        eps3 = 0.0
    else:
        eps3 = 0.5 * ratio * field.c30 / field.c20

    return SmallParams(eps2=eps2, eps3=eps3, p=p)


@dataclass(frozen=True)
class InclinationPolynomials:
    c: float
    q0: float
    q1: float
    q2: float
    q3: float
    q5: float
    q6: float
    q7: float
    q8: float
    q9: float
    q10: float
    q11: float
    q12: float
    q13: float
    q14: float
    q15: float

    def __getitem__(self, index):
        if index == 4:
            raise KeyError("There is no q4 inclination polynomial")
        return getattr(self, f"q{index}")


def q_polynomials(c):
    c2 = c * c
    c4 = c2 * c2
    c6 = c4 * c2
    s2 = 1.0 - c2

    q0 = (1.0 - 15.0 * c2) * (1.0 - 5.0 * c2)
    # q5 / c kept as a polynomial so polar orbits stay regular
    q6 = c * (11.0 - 30.0 * c2 + 75.0 * c4)

    return InclinationPolynomials(
        c=c,
        q0=q0,
        q1=0.25 * (1.0 - 43.0 * c2 + 155.0 * c4 - 225.0 * c6),
        q2=s2 * q0,
        q3=0.25 * (1.0 + c2 + 35.0 * c4 + 75.0 * c6),
        q5=c * q6,
        q6=q6,
        q7=0.25 * (1.0 + 3.0 * c2 - 5.0 * c4 + 225.0 * c6),
        q8=0.25 * (1.0 - 45.0 * c2 + 195.0 * c4 - 375.0 * c6),
        q9=0.25 * (1.0 + 75.0 * c4),
        q10=0.25 * (1.0 - 40.0 * c2 + 75.0 * c4),
        q11=2.0 * c2 * (6.0 - 25.0 * c2 + 75.0 * c4),
        q12=10.0 * c2,
        q13=q0 * (1.0 + c),
        q14=0.25 * (1.0 - c) * (1.0 - 20.0 * c - 40.0 * c2 + 75.0 * c4),
        q15=0.25 * (1.0 + 23.0 * c - 20.0 * c2 - 80.0 * c2 * c + 75.0 * c4 + 225.0 * c4 * c),
    )


@dataclass(frozen=True)
class PCoefficients:
    P1: float
    P2: float
    P3: float
    P4: float


def p_coefficients(kappa, sigma, q):
    k2 = kappa * kappa
    sg2 = sigma * sigma
    return PCoefficients(
        P1=q.q2 * kappa + q.q7 * k2 + q.q8 * sg2,
        P2=q.q0 * kappa + q.q9 * k2 + q.q10 * sg2,
        P3=q.q2 + q.q11 * kappa,
        P4=q.q0 + q.q12 * kappa,
    )


def critical_factor(c):
    """1 - 5 cos^2 I, zero at the critical inclinations."""
    return 1.0 - 5.0 * c * c

