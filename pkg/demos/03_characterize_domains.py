"""The inverse direction: does the identity single out balls?

Feed the identity battery three domains at the same wavenumber:

* a genuine ball about the tested center  -> every identity holds,
* the same ball shifted off the center    -> the radial field snitches,
* a square (at generic lambda)            -> detected as long as the
                                             size condition holds.

The verdict vocabulary is deliberately one-sided: a finite family can
refute ballhood, never prove it.
"""

from helmholtz_means import ball, box, characterize, make_problem, translate

domains = [
    ("ball about x0", ball([0.0, 0.0], 1.0)),
    ("same ball shifted by 0.3", translate(ball([0.0, 0.0], 1.0), [0.3, 0.0])),
    ("square of equal-ish size", box([-0.5, -0.5], [0.5, 0.5])),
]

for label, d in domains:
    p = make_problem(d, 1.0, [0.0, 0.0])
    rep = characterize(p)
    diag = rep.diagnostics
    print(f"{label}:")
    print(f"   equivalent radius r = {p.r:.6f}, critical radius r0 = {p.r0:.6f}")
    print(f"   conclusion: {diag['conclusion']}  (verdict: {rep.verdict})")
    if diag["witness"]:
        w = diag["witness"]
        print(f"   witness: {w['kind']} field, identity residual {w['residual']:+.3e}")
    print()

print("the shifted ball and the square both fail through the radial witness;")
print("only the true ball survives the whole family.")
