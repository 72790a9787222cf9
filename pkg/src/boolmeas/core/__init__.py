"""
Core modules.

interval_model  clopen sets of [0,1), lambda, shift and bit flips
algebras        finite, Cantor and finite-cofinite presentations
measures        measures on presentations, partitions, epsilon nets
names           homomorphisms into the interval model and point semantics
simplex         exact rational simplex
kelley          Kelley intersection numbers
dynamics        mixing, centering sequences, chunk symmetry
convergence     pointwise vs uniform convergence of homomorphisms
sampling        seeded bit streams and sample points
"""
