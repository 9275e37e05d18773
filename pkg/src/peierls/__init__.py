"""
peierls: realize the Peierls argument for planar graphs with polynomial growth and
isoperimetric dimension bigger than one. Build planar duals, count minimal cut-sets
through dual cycles, measure the growth and isoperimetric constants, evaluate the
path-counting bounds and compare the resulting bound on p_c with simulation.
"""

__version__ = "0.1"
