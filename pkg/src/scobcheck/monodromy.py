"""Exact checks on the bundle monodromies and the order-three fiber monodromy."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .matrix import Matrix
from .models import FiniteTable, automorphism_order, extend_automorphism, quaternion_group


class Poly:
    """Dense univariate polynomial with integer coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, c: int) -> Poly:
        return cls([c])

    @classmethod
    def var(cls) -> Poly:
        return cls([0, 1])

    @staticmethod
    def lift(x) -> Poly:
        return x if isinstance(x, Poly) else Poly([x])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Poly)):
            return self.coeffs == Poly.lift(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> Poly:
        o = Poly.lift(other).coeffs
        n = max(len(self.coeffs), len(o))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o + (0,) * (n - len(o))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-x for x in self.coeffs)

    def __sub__(self, other) -> Poly:
        return self + (-Poly.lift(other))

    def __rsub__(self, other) -> Poly:
        return Poly.lift(other) - self

    def __mul__(self, other) -> Poly:
        o = Poly.lift(other).coeffs
        if not self.coeffs or not o:
            return Poly()
        out = [0] * (len(self.coeffs) + len(o) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(o):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def discriminant(self) -> int:
        if self.degree != 2:
            raise ValueError("discriminant implemented for quadratics only")
        c, b, a = self.coeffs
        return b * b - 4 * a * c

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else "t" if k == 1 else f"t^{k}"
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c)
            terms.append(f"{coef}{mono}")
        s = " + ".join(terms)
        return s.replace("+ -", "- ")


T = Poly.var()

MONODROMY_A = Matrix([[0, 1], [1, 1]])
MONODROMY_B = Matrix([[0, -1], [-1, -1]])
# ends of the (punctured torus x| -I) bundle are identified by this matrix
PHI = Matrix([[0, 1, 0], [1, 1, 0], [0, 0, -1]])
# the alternative identification (x, y, z) -> (x, -y, -z) drawn for the isotopy endpoint
PHI_ONE_ALTERNATIVE = Matrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]])


def isotopy_matrix() -> Matrix:
    """The family ``phi_t`` joining ``PHI`` (t = 0) to a diagonal matrix (t = 1)."""
    return Matrix([
        [-T, 1 - T, Poly.const(0)],
        [1 - T, Poly.const(1), Poly.const(0)],
        [Poly.const(0), Poly.const(0), Poly.const(-1)],
    ])


def evaluate(m: Matrix, t) -> Matrix:
    return m.map(lambda p: Poly.lift(p)(t))


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


@dataclass
class Report:
    checks: list[Check]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.as_dict() for c in self.checks], "notes": self.notes}


def verify_matrix_identities() -> Report:
    A, B = MONODROMY_A, MONODROMY_B
    A2, B2 = A @ A, B @ B
    C = B.inverse() @ A
    I2 = Matrix.identity(2)
    expected_square = Matrix([[1, 1], [1, 2]])
    checks = [
        Check("A^2 = B^2 = [[1,1],[1,2]]", A2 == B2 == expected_square,
              {"A^2": A2.tolist(), "B^2": B2.tolist()}),
        Check("C = B^-1 A = -I", C == -I2, {"C": C.tolist()}),
        Check("det A = det B = -1",
              A.det_cofactor() == B.det_cofactor() == -1 and A.det_bareiss() == B.det_bareiss() == -1,
              {"det A": A.det_cofactor(), "det B": B.det_cofactor()}),
        Check("C^2 = I", C @ C == I2, {"C^2": (C @ C).tolist()}),
    ]
    return Report(checks)


def infinite_order_probe(m: Matrix = MONODROMY_A, max_power: int = 100, trace_window: int = 20) -> Check:
    """``m^k != I`` for ``1 <= k <= max_power`` and traces strictly increase from ``k = 2``."""
    ident = Matrix.identity(m.rows)
    power = ident
    never_identity = True
    traces = []
    for k in range(1, max_power + 1):
        power = power @ m
        if power == ident:
            never_identity = False
        if k <= trace_window:
            traces.append(power.trace())
    increasing = all(b > a for a, b in zip(traces[1:], traces[2:]))
    return Check("A has infinite order", never_identity and increasing,
                 {"max_power": max_power, "traces": traces})


def fiber_monodromy_order(images: dict[str, str] | None = None, fiber: FiniteTable | None = None) -> int:
    """Order of the quaternion automorphism ``i -> j, j -> k`` (or another map on Q8)."""
    fiber = fiber or quaternion_group()
    perm = extend_automorphism(fiber, images if images is not None else {"i": "j", "j": "k"})
    return automorphism_order(fiber, perm)


def isotopy_family_checks(samples: int = 100) -> Report:
    phi = isotopy_matrix()
    phi0 = evaluate(phi, 0)
    phi1 = evaluate(phi, 1)
    block = Matrix([[phi[0, 0], phi[0, 1]], [phi[1, 0], phi[1, 1]]])
    block_det = Poly.lift(block.det_cofactor())
    full_det = Poly.lift(phi.det_cofactor())
    disc = block_det.discriminant()
    expected_block = -(T * T - T + 1)

    # numeric route: rational samples, determinant by fraction-free elimination
    sampled = [evaluate(phi, Fraction(k, samples)).det_bareiss() for k in range(samples + 1)]
    symbolic_positive = full_det.degree == 2 and full_det.coeffs[-1] > 0 and full_det.discriminant() < 0

    checks = [
        Check("phi_0 = PHI", phi0 == PHI, {"phi_0": phi0.tolist()}),
        Check("phi_1 = diag(-1, 1, -1)", phi1 == Matrix([[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
              {"phi_1": phi1.tolist()}),
        Check("upper block det = -(t^2 - t + 1)", block_det == expected_block,
              {"block_det": repr(block_det)}),
        Check("discriminant = -3", disc == -3, {"discriminant": disc}),
        Check("det phi_t > 0 on [0,1] (sampled and symbolic)",
              all(d > 0 for d in sampled) and symbolic_positive
              and all(full_det(Fraction(k, samples)) == sampled[k] for k in range(samples + 1)),
              {"det": repr(full_det), "min_sampled": str(min(sampled)), "samples": samples + 1}),
    ]
    notes = []
    if phi1 != PHI_ONE_ALTERNATIVE:
        notes.append(
            f"phi_1 = {phi1.tolist()} differs from the drawn identification "
            f"(x, y, z) -> (x, -y, -z) = {PHI_ONE_ALTERNATIVE.tolist()}; only the displayed family is checked")
    return Report(checks, notes)
