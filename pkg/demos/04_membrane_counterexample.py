"""Why the size condition cannot be dropped.

The square membrane's (2,1) and (1,2) eigenfunctions share the
wavenumber pi sqrt(5) / a, vanish at the square's center, and integrate
to zero over the square, so the mean-value identity holds there for
free.  The square still is not a disk; what saves the theorem is that
the square fails the size condition: enclosing it about its center
needs lambda * r0 = pi sqrt(5/2) = 4.967294, past j_{1,1} = 3.831706.
The gap, about 1.135588, is the margin by which this counterexample
misses the theorem's hypothesis.
"""

from helmholtz_means import membrane_counterexample

for a in (1.0, 2.0):
    print(f"square of side a = {a}:")
    for rep in membrane_counterexample(a):
        print(
            f"   {rep.name:26s} lhs = {rep.lhs:+12.7f}  rhs = {rep.rhs:+12.7f}"
            f"  -> {rep.verdict}"
        )
    print()

print("identical dimensionless verdicts for every a: lambda scales like 1/a")
print("and the enclosing radius like a, so the failure is scale-free.")
