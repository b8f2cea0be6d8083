"""Hodge star, metric and Laplacians on the toy Kähler cell and on a non-closed fixture."""

from halg.kahler import kahler_fixture, laplacians, metric_and_inner_product

for name in ("toykahler", "kodaira-thurston"):
    fx = kahler_fixture(name)
    hd = fx.hermitian()
    A = fx.c.dga.alg
    print(f"{name}: dims {fx.c.dga.graded.dims()}, n = {hd.n}")
    if name == "toykahler":
        for i, lab in enumerate(A.labels):
            print(f"  ⋆{lab} = {A.show(hd.hodge.cols[i])}")
    met, _ = metric_and_inner_product(hd)
    lap, _ = laplacians(hd, met)
    print("  Δ_d = 2Δ_∂ :", lap.lap_d == lap.lap_delta.scaled(2))
    print("  failing:", fx.suite().failed_ids())
