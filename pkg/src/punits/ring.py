"""Exact arithmetic in the modular group ring Z_{p^e}G.

Elements are dense coefficient vectors over the group, indexed by
:func:`punits.pgroup.enumerate_elements` order, with coefficients kept as
canonical residues mod p^e.  Multiplication is the naive O(|G|^2)
convolution; it is the reference semantics that any faster path must
reproduce bit for bit.

The normalized units V = 1 + w, where w is the augmentation ideal
(coefficient sums equal to 0), form a finite abelian p-group, so unit
orders and inverses are computed by iterated p-th powering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .pgroup import (
    GroupElement,
    GroupSpec,
    element_index,
    is_prime,
    p_valuation,
    product_index_table,
)

# p^e must stay below 2^31 so that a product of two residues fits in a
# 64-bit intermediate; keeps the batch enumeration paths big-integer free.
RING_CHAR_CAP = 1 << 31


@dataclass(frozen=True)
class RingSpec:
    """The coefficient ring Z_{p^e} together with the group G."""

    group: GroupSpec
    e: int

    def __post_init__(self) -> None:
        e = int(self.e)
        if e < 1:
            raise ValueError(f"e must be >= 1, got {e}")
        if self.group.p ** e > RING_CHAR_CAP:
            raise ValueError(
                f"characteristic {self.group.p}^{e} exceeds cap {RING_CHAR_CAP}"
            )
        object.__setattr__(self, "e", e)

    @property
    def p(self) -> int:
        return self.group.p

    @property
    def modulus(self) -> int:
        return self.p ** self.e

    @property
    def size(self) -> int:
        """|G|, the coefficient vector length."""
        return self.group.order()

    def to_text(self) -> str:
        return f"{self.group.to_text()};e={self.e}"


def _convolve(spec: RingSpec, a, b) -> tuple[int, ...]:
    # Reference group-ring product: exact Python integers, reduced once.
    table = product_index_table(spec.group)
    q = spec.modulus
    out = [0] * len(a)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        row = table[i]
        for j, bj in enumerate(b):
            if bj:
                out[row[j]] += ai * bj
    return tuple(c % q for c in out)


@dataclass(frozen=True)
class RingElement:
    """A group-ring element; immutable, coefficients canonical mod p^e."""

    spec: RingSpec
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        q = self.spec.modulus
        coeffs = tuple(int(c) % q for c in self.coeffs)
        if len(coeffs) != self.spec.size:
            raise ValueError(
                f"expected {self.spec.size} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    def _check_same_spec(self, other: "RingElement") -> None:
        if self.spec != other.spec:
            raise ValueError("ring spec mismatch")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check_same_spec(other)
        return RingElement(
            self.spec, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check_same_spec(other)
        return RingElement(
            self.spec, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "RingElement":
        return RingElement(self.spec, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.spec, tuple(other * a for a in self.coeffs))
        self._check_same_spec(other)
        return RingElement(self.spec, _convolve(self.spec, self.coeffs, other.coeffs))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, m: int) -> "RingElement":
        if m < 0:
            raise ValueError("negative powers are not defined; use unit_inverse")
        result = one(self.spec)
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def to_text(self) -> str:
        """Canonical text form ``p=..;lambda=..;e=..;coeffs=c0,c1,...``."""
        return f"{self.spec.to_text()};coeffs={','.join(map(str, self.coeffs))}"

    @classmethod
    def from_text(cls, text: str) -> "RingElement":
        fields = dict(
            part.split("=", 1) for part in text.strip().split(";") if part
        )
        try:
            group = GroupSpec(int(fields["p"]), tuple(int(x) for x in fields["lambda"].split(",")))
            spec = RingSpec(group, int(fields["e"]))
            coeffs = tuple(int(x) for x in fields["coeffs"].split(","))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"malformed ring element text: {text!r}") from exc
        return cls(spec, coeffs)


def zero(spec: RingSpec) -> RingElement:
    return RingElement(spec, (0,) * spec.size)


def one(spec: RingSpec) -> RingElement:
    coeffs = [0] * spec.size
    coeffs[0] = 1
    return RingElement(spec, tuple(coeffs))


def scalar(spec: RingSpec, c: int) -> RingElement:
    coeffs = [0] * spec.size
    coeffs[0] = c
    return RingElement(spec, tuple(coeffs))


def from_group_element(spec: RingSpec, g: GroupElement) -> RingElement:
    coeffs = [0] * spec.size
    coeffs[element_index(spec.group, g)] = 1
    return RingElement(spec, tuple(coeffs))


def mul(x: RingElement, y: RingElement) -> RingElement:
    """Group-ring product (commutative convolution)."""
    return x * y


def augmentation(x: RingElement) -> int:
    """Coefficient sum mod p^e; x lies in the augmentation ideal iff 0."""
    return sum(x.coeffs) % x.spec.modulus


def is_normalized_unit(x: RingElement) -> bool:
    """True iff x in 1 + w, equivalently augmentation(x) = 1."""
    return augmentation(x) == 1


def _p_torsion_order_exp(u: RingElement, max_exp: int) -> Optional[int]:
    # Least m <= max_exp with u^{p^m} = 1, or None if not reached.  Only
    # meaningful for p-power torsion units (all of 1 + w, and more
    # generally 1 + p*Z_{p^e}G).
    p = u.spec.p
    ident = one(u.spec)
    cur = u
    for m in range(max_exp + 1):
        if cur == ident:
            return m
        cur = cur ** p
    return None


def _order_exp_bound(spec: RingSpec) -> int:
    # exp(V) divides p^{n+e-1}; two extra steps of slack so that a wrong
    # answer surfaces as an error instead of an infinite loop.
    return spec.group.exponent_exp + spec.e + 2


def unit_order(u: RingElement) -> int:
    """Least p^m with u^{p^m} = 1, for a normalized unit u."""
    if not is_normalized_unit(u):
        raise ValueError("unit_order requires a normalized unit (augmentation 1)")
    m = _p_torsion_order_exp(u, _order_exp_bound(u.spec))
    if m is None:
        raise ArithmeticError("p-power order bound exceeded; internal error")
    return u.spec.p ** m


def unit_inverse(u: RingElement) -> RingElement:
    """Inverse of a normalized unit, as u^{p^m - 1} with p^m = |u|."""
    if not is_normalized_unit(u):
        raise ValueError("unit_inverse requires a normalized unit (augmentation 1)")
    order = unit_order(u)
    if order == 1:
        return u
    return u ** (order - 1)


def reduce_mod(x: RingElement, e_target: int) -> RingElement:
    """Coefficientwise reduction Z_{p^e}G -> Z_{p^{e_target}}G.

    A surjective ring homomorphism for e_target <= e; maps normalized
    units to normalized units.
    """
    if not 1 <= e_target <= x.spec.e:
        raise ValueError(f"e_target must be in [1, {x.spec.e}], got {e_target}")
    target = RingSpec(x.spec.group, e_target)
    return RingElement(target, x.coeffs)


def p_reduced_factorization(u: RingElement) -> tuple[RingElement, RingElement]:
    """Split a normalized unit as u = red * (1 + p^{e-1} z) with z in w.

    ``red`` is the unit 1 + sum_g (u_g mod p^{e-1})(g - 1): its non-identity
    coefficients are the low digits of u's, and its identity coefficient is
    fixed by augmentation 1.  ``z`` is the unique solution with coefficients
    in [0, p) except for an augmentation-zero adjustment on the identity
    coordinate.
    """
    spec = u.spec
    if spec.e < 2:
        raise ValueError("p-reduced factorization requires e >= 2")
    if not is_normalized_unit(u):
        raise ValueError("p_reduced_factorization requires a normalized unit")
    q = spec.modulus
    q1 = spec.p ** (spec.e - 1)

    low = [c % q1 for c in u.coeffs]
    low[0] = (1 - sum(low[1:])) % q
    red = RingElement(spec, tuple(low))

    w = unit_inverse(red) * u
    diff = list(w.coeffs)
    diff[0] = (diff[0] - 1) % q
    if any(c % q1 for c in diff):
        raise ArithmeticError("reduced part does not agree with u mod p^{e-1}")
    zt = [(c // q1) % spec.p for c in diff]
    zt[0] = (zt[0] - sum(zt)) % q
    z = RingElement(spec, tuple(zt))

    if augmentation(z) != 0:
        raise ArithmeticError("carry part escaped the augmentation ideal")
    if red * (one(spec) + q1 * z) != u:
        raise ArithmeticError("p-reduced factorization failed to recompose")
    return red, z


def binomial_p_power(p: int, n: int, j: int) -> int:
    """t such that p^t exactly divides binomial(p^n, j), for 1 <= j <= p^n.

    Equals n - v_p(j); computed from the valuation of j alone, with no
    large factorials.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 1 <= j <= p ** n:
        raise ValueError(f"j must be in [1, {p}^{n}], got {j}")
    return n - p_valuation(j, p)


def lemma9_predicted_order(d: int, y: RingElement) -> Optional[int]:
    """Closed-form order of the unit 1 + p^d y, or None when undetermined.

    With s the minimal coefficient valuation of y (so y = p^s z and
    p^{e-1} z != 0), the order is p^{e-d-s} unless p = 2, d + s = 1 and
    z^2 has an odd coefficient; in that exceptional case no order is
    asserted and None is returned.
    """
    spec = y.spec
    p, e = spec.p, spec.e
    if y.is_zero():
        raise ValueError("y must be nonzero")
    if not 1 <= d < e:
        raise ValueError(f"d must satisfy 1 <= d < e, got d={d}, e={e}")
    s = min(p_valuation(c, p) for c in y.coeffs if c)
    if p == 2 and d == 1 and s == 0:
        ysq = y * y
        if any(c & 1 for c in ysq.coeffs):
            return None
    return p ** max(e - d - s, 0)
