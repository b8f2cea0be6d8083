"""The bialgebroid acting on 1-forms of a finite set, for n = 2 and 3."""

import time

from halg.calculus import finite_set_bialgebroid, verify_finite_set

for n in (2, 3):
    t0 = time.perf_counter()
    _, _, fs = finite_set_bialgebroid(n)
    rep = verify_finite_set(fs)
    print(f"n={n}: ok={rep.ok}, dim H0={rep.info['dim H0']}, dim H={rep.info['dim H']}, "
          f"{time.perf_counter() - t0:.1f}s")
