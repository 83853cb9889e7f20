"""Finite abelian p-groups presented by cyclic-factor exponents.

A group ``G = C_{p^l1} x ... x C_{p^lk}`` is described by its prime ``p``
and the exponent list ``lambdas = (l1, ..., lk)``, kept sorted descending.
Elements are plain tuples of componentwise-reduced exponents; the module
provides the arithmetic and the counting formulas for the power subgroups
``G^{p^i}`` (p^i-th powers) and the torsion layers ``G[p^i]`` (elements of
order dividing p^i).

Orders of groups and subgroups are carried as p-adic exponents.  Plain
magnitudes are materialized only below :data:`GROUP_ORDER_CAP`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

GroupElement = tuple[int, ...]

# Largest |G| ever materialized as a plain integer (coefficient vectors,
# product tables, element enumeration).  Counting formulas stay in exponent
# form and have no such limit.
GROUP_ORDER_CAP = 1 << 20

# Dense multiplication index tables are |G| x |G|; keep them desk-scale.
_PRODUCT_TABLE_CAP = 1 << 10


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for desk-scale p."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def p_valuation(m: int, p: int) -> int:
    """Exponent of the largest power of p dividing m (m != 0)."""
    if m == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian p-group ``C_{p^l1} x ... x C_{p^lk}``.

    The exponent list is canonicalized (sorted descending) on construction,
    so two specs are equal iff they present the same group.

    >>> GroupSpec(2, (1, 2)) == GroupSpec(2, (2, 1))
    True
    >>> GroupSpec(2, (1, 2)).order()
    8
    """

    p: int
    lambdas: tuple[int, ...]

    def __post_init__(self) -> None:
        p = int(self.p)
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        lams = tuple(sorted((int(l) for l in self.lambdas), reverse=True))
        if not lams:
            raise ValueError("lambdas must be nonempty")
        if lams[-1] < 1:
            raise ValueError(f"cyclic factor exponents must be >= 1, got {lams}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "lambdas", lams)

    @property
    def k(self) -> int:
        """Number of cyclic direct factors."""
        return len(self.lambdas)

    @property
    def exponent_exp(self) -> int:
        """n with exp(G) = p^n."""
        return self.lambdas[0]

    @property
    def size_exp(self) -> int:
        """m with |G| = p^m."""
        return sum(self.lambdas)

    @property
    def radices(self) -> tuple[int, ...]:
        return tuple(self.p ** l for l in self.lambdas)

    def order(self) -> int:
        """|G| as a plain integer; refuses to exceed GROUP_ORDER_CAP."""
        n = self.p ** self.size_exp
        if n > GROUP_ORDER_CAP:
            raise ValueError(
                f"|G| = {self.p}^{self.size_exp} exceeds the materialization "
                f"cap {GROUP_ORDER_CAP}"
            )
        return n

    def to_text(self) -> str:
        """Canonical text form, e.g. ``p=2;lambda=2,1``."""
        return f"p={self.p};lambda={','.join(map(str, self.lambdas))}"

    @classmethod
    def from_text(cls, text: str) -> "GroupSpec":
        """Parse ``p=<prime>;lambda=<comma-list>``."""
        fields = dict(
            part.split("=", 1) for part in text.strip().split(";") if part
        )
        try:
            p = int(fields["p"])
            lams = tuple(int(x) for x in fields["lambda"].split(","))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"malformed group spec text: {text!r}") from exc
        return cls(p, lams)


def agemo_order_exp(spec: GroupSpec, i: int) -> int:
    """m with |G^{p^i}| = p^m, namely sum_j max(lambda_j - i, 0)."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    return sum(max(l - i, 0) for l in spec.lambdas)


def omega_order_exp(spec: GroupSpec, i: int) -> int:
    """m with |G[p^i]| = p^m, namely sum_j min(lambda_j, i)."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    return sum(min(l, i) for l in spec.lambdas)


def cyclic_factor_count(spec: GroupSpec, i: int) -> int:
    """Number of cyclic direct factors of order exactly p^i."""
    if i < 1:
        raise ValueError("i must be >= 1")
    return spec.lambdas.count(i)


def identity(spec: GroupSpec) -> GroupElement:
    return (0,) * spec.k


def element(spec: GroupSpec, exponents) -> GroupElement:
    """Build a reduced element tuple, validating the length."""
    exps = tuple(int(x) for x in exponents)
    if len(exps) != spec.k:
        raise ValueError(f"expected {spec.k} exponents, got {len(exps)}")
    return tuple(x % r for x, r in zip(exps, spec.radices))


def element_mul(spec: GroupSpec, g: GroupElement, h: GroupElement) -> GroupElement:
    return tuple((a + b) % r for a, b, r in zip(g, h, spec.radices))


def element_inv(spec: GroupSpec, g: GroupElement) -> GroupElement:
    return tuple((-a) % r for a, r in zip(g, spec.radices))


def element_pow(spec: GroupSpec, g: GroupElement, m: int) -> GroupElement:
    """g^m by componentwise multiplication of exponents."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return tuple((m * a) % r for a, r in zip(g, spec.radices))


def element_order(spec: GroupSpec, g: GroupElement) -> int:
    """Least p^t with g^{p^t} = 1, via coordinate valuations."""
    p = spec.p
    t = 0
    for a, l in zip(g, spec.lambdas):
        if a:
            t = max(t, l - p_valuation(a, p))
    return p ** t


def enumerate_elements(spec: GroupSpec) -> Iterator[GroupElement]:
    """All elements in mixed-radix order, last coordinate fastest.

    This order is the fixed coefficient indexing of the ring module:
    index 0 is the identity.

    >>> list(enumerate_elements(GroupSpec(2, (1, 1))))
    [(0, 0), (0, 1), (1, 0), (1, 1)]
    """
    spec.order()  # enforce the materialization cap before streaming
    return itertools.product(*(range(r) for r in spec.radices))


def element_index(spec: GroupSpec, g: GroupElement) -> int:
    """Position of g in enumerate_elements order."""
    idx = 0
    for a, r in zip(g, spec.radices):
        idx = idx * r + a
    return idx


def element_from_index(spec: GroupSpec, idx: int) -> GroupElement:
    out = []
    for r in reversed(spec.radices):
        idx, a = divmod(idx, r)
        out.append(a)
    return tuple(reversed(out))


@lru_cache(maxsize=None)
def product_index_table(spec: GroupSpec) -> tuple[tuple[int, ...], ...]:
    """Dense table T with T[i][j] = index of (element i) * (element j)."""
    order = spec.order()
    if order > _PRODUCT_TABLE_CAP:
        raise ValueError(
            f"|G| = {order} exceeds the dense product table cap "
            f"{_PRODUCT_TABLE_CAP}"
        )
    els = list(enumerate_elements(spec))
    index = {g: i for i, g in enumerate(els)}
    return tuple(
        tuple(index[element_mul(spec, g, h)] for h in els) for g in els
    )
