"""A tour of the fixed-precision p-adic toolkit.

Values live in Z_p modulo p^K (default K = 24).  The residue tracks its own
certified valuation, and exp / log / cube roots come with the ultrametric
guarantees that the rest of the package leans on.
"""

from tribadic import PAdicInt, cube_root, padic_exp, padic_inv, padic_log, val_int

p, K = 7, 12

print(f"Working in Z_{p} at precision {p}^{K}\n")

x = PAdicInt(p, K, 3 * 7**2)
print(f"x = 3*7^2 as a residue: {x.residue}, certified valuation nu_7(x) = {x.known_val}")
print(f"val_int(24, 2) = {val_int(24, 2)}   (24 = 2^3 * 3)")

u = PAdicInt(p, K, 5)
v = padic_inv(u)
print(f"\n5^-1 mod 7^{K} = {v.residue};  check 5 * inv = {(u * v).residue}")

# exp and log are mutually inverse between pZ_p and 1 + pZ_p
z = PAdicInt(p, K, 7 * 123456)
e = padic_exp(z)
print(f"\nexp(z) for z = 7*123456: residue {e.residue}")
print(f"  nu(exp(z) - 1) = {(e - 1).known_val} = nu(z) = {z.known_val}")
print(f"  log(exp(z)) == z: {padic_log(e) == z}")

w = PAdicInt(p, K, 7 * 999)
print(f"  exp(z + w) == exp(z)exp(w): {padic_exp(z + w) == padic_exp(z) * padic_exp(w)}")

# for p = 2 (mod 3), every unit has a single cube root in Z_p
p = 5
two = PAdicInt(p, 6, 2)
r = cube_root(two)
print(f"\ncube root of 2 in Z_5 (mod 5^6): {r.residue};  r^3 = {(r * r * r).residue}")
brute = [y for y in range(5**3) if y**3 % 5**3 == 2 % 5**3]
print(f"exhaustive search mod 5^3 finds exactly {brute} -- matches r mod 125 = {r.residue % 125}")
