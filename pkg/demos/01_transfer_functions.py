"""Closed-form harmonic transfer functions of a quadratic system.

Driving E x' = A x + Q (x kron x) + B u with a single complex tone
u = alpha e^{jwt} produces output harmonics at w, 2w, 3w, ...; their
kernels H1, H2, H3 are evaluated here in closed form for the two-state
benchmark system.
"""

import numpy as np

import quadrom as q

sys_ = q.make_toy_system()
print("benchmark system: n =", sys_.n)
print("A =\n", sys_.A)
print("Q =\n", sys_.Q)

# evaluate the first three harmonic transfer functions on a log grid
grid = q.log_grid(10.0 ** -0.5, 5.0, 9)
print(f"\n{'omega':>8} {'|H1|':>12} {'|H2|':>12} {'|H3|':>12}")
for w in grid:
    h1 = q.eval_h1(sys_, 1j * w)
    h2 = q.eval_h2(sys_, 1j * w)
    h3 = q.eval_h3(sys_, 1j * w)
    print(f"{w:8.4f} {abs(h1):12.5f} {abs(h2):12.5f} {abs(h3):12.5f}")

# the resonance of the linear part sits near omega = 2; the second and
# third harmonics additionally light up near omega = 1 and 2/3 where a
# multiple of the drive hits the resonance
peak = grid[np.argmax([abs(q.eval_h2(sys_, 1j * w)) for w in grid])]
print(f"\nsecond harmonic peaks near omega = {peak:.3f} (resonance/2)")

# all kernels roll off at high frequency
for m, ev in ((1, q.eval_h1), (2, q.eval_h2), (3, q.eval_h3)):
    print(f"|H{m}(j*1e6)| = {abs(ev(sys_, 1e6j)):.3e}")
