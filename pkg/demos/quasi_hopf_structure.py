"""
The twist as a shifted cocycle, and the associator it generates
===============================================================

The parameter-dependent twist F(x) fails the ordinary cocycle identity
by a controlled amount: the failure is exactly a parameter shift.  That
mismatch assembles into an associator, and the associator turns the
usual Hopf axioms into their quasi-Hopf versions.  Every identity below
is checked symbolically, so a PASS is a proof for those spins.
"""

from fractions import Fraction

from dynrmat import associator_phi, verify_relation

half = Fraction(1, 2)
one = Fraction(1)

# The shifted cocycle identity: composing the twist on legs (12)3 with a
# shift on the spectator equals composing on 1(23) without one.
print(verify_relation("COCYCLE", (half, half, half)).line())
print(verify_relation("COCYCLE", (half, one, half)).line())

# Because the twist is a coboundary of the one-leg boundary matrix, the
# cocycle identity collapses to a two-leg statement as well.
for spins in [(half, half), (half, one), (one, one)]:
    print(verify_relation("COBOUNDARY", spins).line())

# The associator on three spin-1/2 legs.  For this family it is diagonal
# in the weight basis, which is why both of its closed forms are cheap
# to compare.
phi = associator_phi(half, half, half)
print("\nassociator diagonal, first entries:")
for (r, c), v in sorted(phi.data.items())[:4]:
    print("  (%d,%d) = %s" % (r, c, v))

print(verify_relation("PHI_FORMS", (half, half, half)).line())
print(verify_relation("PHI_FORMS", (half, half, one)).line())

# The quasi-Hopf suite: coassociativity up to conjugation by the
# associator, the pentagon-compatible exchange equation, and the two
# triangle identities that tie the exchange matrix to the coproduct.
for name in (
    "SHIFTED_COASSOC",
    "PHI_CONJUGATION",
    "QUASI_YBE",
    "QUASITRIANG_LEFT",
    "QUASITRIANG_RIGHT",
):
    print(verify_relation(name, (half, half, half)).line())

# Endpoint degenerations: at x -> 0 the twist collapses to the identity
# and the dressed matrix collapses to the constant one; at x -> infinity
# it lands on the opposite constant solution, conjugated by a weight
# factor.  Checked entrywise in closed form.
print(verify_relation("TWIST_LIMITS", (half, one)).line())
print(verify_relation("TWIST_LIMITS", (half, half)).line())
