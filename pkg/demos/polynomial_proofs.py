"""
Proving an identity for fixed n
===============================

Clearing denominators turns each identity into a polynomial in m and r.
Vanishing on a large enough grid then proves it.
"""

from walkident.prove import degree_bound, seeded_mutations, verify_induction, verify_polynomial

for ident in ("I1", "I2", "I3", "I4", "I7", "I8"):
    cert = verify_polynomial(ident, 3)
    print(f"{ident}: n=3, D={degree_bound(ident, 3)}, {cert.summary()}")

# a wrong identity fails at the very first grid point
for ident, mutant in seeded_mutations().items():
    print(f"mutated {ident}:", verify_polynomial(mutant, 2).summary())

# I7 and I8 have summands free of n, so they go by induction on n
certs = verify_induction("I7", 10)
print("I7 by induction:", all(c.verified for c in certs), f"({len(certs)} certificates)")
