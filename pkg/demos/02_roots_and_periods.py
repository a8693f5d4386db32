"""How the Tribonacci recurrence looks p-adically.

X^3 - X^2 - X - 1 factors mod p in one of three ways (discriminant -44, so
p = 2, 11 are off limits).  The roots are Hensel-lifted into the unramified
extension, the Binet weights c = lambda / P'(lambda) fall out, and the period
N of T mod p is the order of the group the roots generate in the residue field.
"""

from tribadic import prime_context, splitting_type, trib_mod

print("splitting types:")
for p in (47, 13, 5):
    d, factors = splitting_type(p)
    shape = {1: "three rational roots", 2: "linear x quadratic", 3: "irreducible"}[d]
    print(f"  p = {p}: d = {d} ({shape})")

print("\nBinet form recovers the sequence exactly (p = 13, all in the quadratic extension):")
ctx = prime_context(13, 24)
pk = 13**24
for n in (-17, -4, 0, 1, 10, 21):
    acc = ctx.ring.zero
    for ci, li in zip(ctx.weights, ctx.roots):
        acc = acc + ci * li**n
    binet = acc.to_padic().residue  # raises if any extension coordinate survives
    print(f"  sum c*lambda^{n:>3} = {binet % 10**9:>9}...  == T({n}) mod 13^24: {binet == trib_mod(n, pk)}")

print("\nperiods (published N column):")
for p, listed in ((5, 31), (7, 48), (13, 168), (83, 287), (397, 132), (599, 598)):
    ctx = prime_context(p, 8)
    mark = "ok" if ctx.n_period == listed else "MISMATCH"
    print(f"  N_{p} = {ctx.n_period:>6}  (published {listed:>6})  {mark}")

print("\nand T(n + N) = T(n) (mod p) really holds, e.g. p = 83:")
ctx = prime_context(83, 8)
window = all(trib_mod(n + ctx.n_period, 83) == trib_mod(n, 83) for n in range(-20, 120))
print(f"  checked on a window of 140 values: {window}")
print(f"  p^d - 1 factored for the order computation: {ctx.factorization}")
