"""Smoke test for the Python bindings: build with
`pip install --no-build-isolation ./crates/python`, then run this file."""

import clusterdt as cd

q = cd.Quiver([1, 2, 3], [(2, 1, 1), (1, 3, 1), (2, 3, 2)])
f = cd.dt_transform(q)
assert str(f[0]) == "1 + X1 + X1*X2", f[0]
assert str(f[1]) == "1 + X2", f[1]
assert f[2].n_terms == 8 and f[2].coefficient_sum() == "13"
assert cd.ascendant_tree(q, 2).ideal_function() == f[2]

markov = cd.Quiver([1, 2, 3], [(1, 2, 2), (2, 3, 2), (3, 1, 2)])
assert cd.search(markov, depth=8) is None

q5 = cd.Quiver.qn(5)
fs = cd.dt_transform(q5, cd.qn_maximal_green(5))
lift = cd.lift3d_poset(5, 1, 1, 0)
assert lift.ideal_function() == fs[q5.position("1,1,0")]
assert lift.count_ideals() == "6"

p = cd.Poset(["X1", "X2", "0"], [(1, 0), (2, 1)])
assert p.truncate_zeros().ideal_function() == p.ideal_function()
assert p.opposite().count_ideals() == p.count_ideals()

ok, report = cd.verify("acyclic-example")
assert ok, report
print("smoke test passed")
