"""Genus-2 Siegel forms through their Fourier-Jacobi expansions.

The arithmetic lift below is only a generator of test data; the integrality
certificate does not (and cannot) check Siegel modularity of its input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import thetas as T
from .errors import InsufficientData, NotHolomorphic, UnsupportedCharacter
from .forms import JacobiForm, hecke_V
from .series import ScaledSeries
from .structure import Certificate

ASSUMPTION = (
    "input is the Fourier-Jacobi expansion of a genus-2 Siegel modular form of the stated weight"
)


@dataclass(frozen=True)
class FourierJacobiExpansion:
    weight: int
    fj: tuple[JacobiForm, ...]

    def __post_init__(self):
        object.__setattr__(self, "fj", tuple(self.fj))
        for m, f in enumerate(self.fj):
            if f.index != m or f.weight != self.weight:
                raise ValueError(f"f_{m} has weight {f.weight} and index {f.index}")
            if not f.is_holomorphic():
                raise NotHolomorphic(f"f_{m} violates 4nm >= l^2")
        if self.fj and any(l2 for (_, l2), _ in self.fj[0].series.items()):
            raise ValueError("f_0 must not depend on z")

    @property
    def M(self) -> int:
        return len(self.fj) - 1

    def rows(self, m: int) -> int:
        """Number of known integer q1-orders of f_m."""
        return -(-self.fj[m].prec24 // 24)

    def c(self, n: int, l: int, m: int) -> Fraction:
        return self.fj[m].series.coefficient(24 * n, 2 * l)

    def triples(self):
        """Every (n, l, m) whose coefficient is known and may be nonzero."""
        for m, f in enumerate(self.fj):
            for n in range(self.rows(m)):
                lmax = int((4 * n * m) ** 0.5)
                for l in range(-lmax, lmax + 1):
                    if l * l <= 4 * n * m:
                        yield n, l, m

    def symmetry_violation(self):
        """First known triple with c(n,l,m) != c(m,l,n), or ``None``."""
        for n, l, m in self.triples():
            if n <= self.M and m < self.rows(n):
                a, b = self.c(n, l, m), self.c(m, l, n)
                if a != b:
                    return (n, l, m), a, b
        return None

    def to_json(self) -> dict:
        return {"weight": self.weight, "fj": [f.to_json() for f in self.fj]}

    @classmethod
    def from_json(cls, data: dict) -> FourierJacobiExpansion:
        return cls(int(data["weight"]), tuple(JacobiForm.from_json(f) for f in data["fj"]))


def gritsenko_lift(phi: JacobiForm, M: int) -> FourierJacobiExpansion:
    """f_m = phi | V_m for 1 <= m <= M; f_0 from the constant term of phi.

    The known q1-orders of f_m are floor(N/m) where N is that of ``phi``.
    """
    if not phi.trivial_character or phi.index != 1 or phi.weight.denominator != 1:
        raise UnsupportedCharacter("the lift needs an index-1 form of integral weight and trivial character")
    k = int(phi.weight)
    if k % 2 or k < 4:
        raise ValueError("the lift needs even weight >= 4")
    if not phi.is_holomorphic():
        raise NotHolomorphic("input violates 4n >= l^2")
    rows = -(-phi.prec24 // 24)
    c00 = phi.series.coefficient(0, 0)
    # c(n,0,0) = c(0,0,n) = sigma_{k-1}(n) c(0,0); the n = 0 term is -B_k/2k c(0,0)
    if c00:
        e = T.eisenstein(k, 24 * rows)
        f0 = e.scale(c00 * (-T.bernoulli(k) / (2 * k)))
    else:
        f0 = ScaledSeries.zero(24 * rows)
    fj = [JacobiForm(f0, k, 0, 0, 0)]
    for m in range(1, M + 1):
        fj.append(hecke_V(phi, m))
    return FourierJacobiExpansion(k, tuple(fj))


def siegel_certify_integral(F: FourierJacobiExpansion) -> Certificate:
    """Integrality from c(n,l,m) with m <= [(k+1)/5], n <= [(k+m)/6], l^2 <= 4nm."""
    if F.weight % 2:
        raise ValueError("weight must be even")
    k = F.weight // 2
    mmax = (k + 1) // 5
    if F.M < mmax:
        raise InsufficientData(f"need f_0..f_{mmax}, have f_0..f_{F.M}")
    checked = []
    witness = None
    for m in range(mmax + 1):
        nmax = (k + m) // 6
        if F.rows(m) < nmax + 1:
            raise InsufficientData(f"f_{m} is known to {F.rows(m)} orders, need {nmax + 1}")
        for n in range(nmax + 1):
            lmax = int((4 * n * m) ** 0.5) + 1
            for l in range(-lmax, lmax + 1):
                if l * l > 4 * n * m:
                    continue
                checked.append((n, l, m))
                c = F.c(n, l, m)
                if c.denominator != 1 and witness is None:
                    witness = (n, l, m, c)
    verdict = "INTEGRAL" if witness is None else "NOT-INTEGRAL"
    return Certificate(
        F.weight, mmax, mmax, checked, verdict, witness, ASSUMPTION,
        {"bounds": {"m_max": mmax, "n_max": {m: (k + m) // 6 for m in range(mmax + 1)}}},
    )
