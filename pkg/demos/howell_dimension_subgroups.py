"""Howell normal forms and the dimension subgroup chain.

Over Z_{p^e} a row span can contain vectors that no echelon row reaches
(zero divisors): the Howell form appends the needed annihilator rows and
is canonical for the span.  That machinery decides membership in powers
of the augmentation ideal w, which in turn pins down the dimension
subgroups D_n = G ∩ (1 + w^n).

Run:  python demos/howell_dimension_subgroups.py
"""

from punits import (
    GroupSpec,
    ResidueMatrix,
    RingSpec,
    dimension_subgroup,
    howell_form,
    ideal_power_generators,
    module_membership,
    module_size_exp,
    nilpotency_index,
)

print("=" * 72)
print("Why Howell instead of Hermite: span{(2,1)} over Z_4")
print("=" * 72)
print()
M = ResidueMatrix(2, 2, 2, ((2, 1),))
H = howell_form(M)
print(f"  generators: {M.rows}")
print(f"  Howell form: {H.rows}")
print(f"  (0,2) = 2*(2,1) is in the span: {module_membership((0, 2), M)}")
print("  The trailing row (0,2) is what makes that membership decidable")
print("  by forward reduction alone.")

print()
print("=" * 72)
print("The chain w ⊇ w^2 ⊇ ... for Z_4 C_4")
print("=" * 72)
print()
rs = RingSpec(GroupSpec(2, (2,)), 2)
nu = nilpotency_index(rs)
for n in range(1, nu + 1):
    M = ideal_power_generators(rs, n)
    H = howell_form(M)
    print(f"  w^{n}: |w^{n}| = 2^{module_size_exp(M)}")
    for row in H.rows:
        print(f"        {row}")
print(f"  nilpotency index: w^{nu} = 0")

print()
print("=" * 72)
print("Dimension subgroups D_n = G ∩ (1 + w^n) for Z_4 C_8")
print("=" * 72)
print()
group = GroupSpec(2, (3,))
rs = RingSpec(group, 2)
nu = nilpotency_index(rs)
for n in range(1, min(nu, 9) + 1):
    index = dimension_subgroup(group, rs.e, n)
    label = "G" if index == 0 else f"G^{2 ** index}"
    print(f"  D_{n:<2} = {label}")
print()
print("The formula jumps exactly at n = p^i + 1; the oracle check")
print("(lemma3) confirms each value by Howell membership of g - 1 in w^n.")
