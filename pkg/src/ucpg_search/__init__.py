"""
Continuous-time quantum-walk search on uniform complete multi-partite graphs.

The package reduces the walk to the three-dimensional invariant subspace spanned by the
marked vertex, the rest of its partition and the remaining partitions, picks the
coupling factor that makes the marked level degenerate with the search level, and
simulates the walk in reduced and full space.

Subpackages:
- graph: configurations, adjacency matrices and the collapsed basis.
- reduction: closed-form and Krylov reductions and their certification.
- spectral: search Hamiltonian, eigenbasis change and the coupling factor.
- dynamics: time evolution, peak measurement and the end-to-end pipeline.
- special_cases: complete, complete bipartite and star graphs.
- controllers: command implementations used by the CLI.
- outputs: CSV/JSON writers and run manifests.
"""

__version__ = "1.0.0"
