"""Finding a p-adic zero of the Tribonacci interpolation: the p = 5 story.

T(21) = 121415 = 5 * 24283, so the class n = 21 (mod 31) is divisible by 5
somewhere p-adically deep.  The interpolant f(z), with f(m) = T(21 + 31m),
is divided by 5 and expanded as a power series g; Strassman's bound says one
zero, Hensel's lemma finds it, and the zero turns out to sit exactly over the
rational point 1/3 -- one of the two twisted rational zeros of the sequence.
"""

from tribadic import (
    classify_zero,
    eval_f,
    hensel_zero,
    prime_context,
    series_coeffs,
    strassman_mu,
    trib,
)

ctx = prime_context(5, 24)
print(f"p = 5, N = {ctx.n_period}, T(21) = {trib(21)} = 5 * {trib(21) // 5}")

print("\nf interpolates the subsequence: f(m) = T(21 + 31m)")
for m in (0, 1, 2):
    got = eval_f(ctx, 21, m).residue
    print(f"  f({m}) mod 5^24 = {got}  == T({21 + 31 * m}) mod 5^24: {got == trib(21 + 31 * m) % 5**24}")

series = series_coeffs(ctx, 21)
print(f"\ng = f/5: beta_0 = T(21)/5 = {series.coeffs[0].residue}")
print(f"coefficient valuations: {[b.known_val for b in series.coeffs[:9]]} ...")
print(f"Strassman bound on the number of zeros: mu = {strassman_mu(series)}")

record = hensel_zero(series)
print(f"\nNewton residual valuations per step: {record.residual_vals}  (doubling: Hensel at work)")
print(f"zero b, first 10 digits base 5: {record.b.digits()[:10]}")

a = 21 + 31 * record.b
print(f"\nl + N*b mod 5 = {a.residue % 5}  (the published table lists u = 2 for p = 5)")
target = classify_zero(ctx, record)
print(f"classification of l + N*b: {target.kind} {target.value}")
print(f"indeed 3*(l + N*b) - 1 vanishes mod 5^22: {(3 * a - 1).known_val >= 22}")
print("\nso the only 5-adic zero of this class is the twisted rational zero 1/3:")
print("nu_5(T(n)) = 1 + nu_5(n - 1/3) on the whole class n = 21 (mod 31).")
