"""Build the convolution algebroid of a small groupoid and run every check on it."""

from halg.actions import adjoint_check, function_module_algebra, invariants
from halg.constructors import convolution_algebroid
from halg.groupoid import groupoid_preset
from halg.hopf import derived_identities, verify_hopf, verify_star
from halg.linalg import FinSpace, LinMap
from halg.scalar import sc

g = groupoid_preset("action:Z3:cycle3")
h = convolution_algebroid(g)
print(f"{g}: dim H = {h.H.dim}, base dim = {h.core.left.A.dim}")

for rep in (verify_hopf(h.core), derived_identities(h.core), verify_star(h)):
    print(f"  {rep.suite}: {len(rep.items)} checks, failing {rep.failed_ids()}")

# C(X) as a module algebra; the uniform state is right invariant
b = function_module_algebra(h)
print("  invariant functions:", invariants(b).dim)
n = g.n_objects
tau = LinMap(b.alg.space, FinSpace(["τ"]), [{0: sc(1) / sc(n)}] * n)
print("  adjoint identity:", adjoint_check(b, tau).ok)

# a corrupted antipode is caught with a witness
from dataclasses import replace
bad = replace(h.core, S=h.core.S.scaled(sc(2)))
item = verify_hopf(bad).item("antipode-axiom-left")
print(f"  doubled antipode: {item.axiom} passed={item.passed}; {item.witness}")
