"""Exact computations with enriched categories, chain complexes and derived Homs.

Modules, bottom up: ``linalg`` (exact matrices over Q, Z, F_p), ``base``
(free modules as a closed symmetric monoidal category), ``chains`` (bounded
complexes), ``enriched`` (enriched categories, functors, natural
transformations), ``functors`` (ends, the module action, Yoneda and coend),
``translation`` (dg-functors versus complexes of functors), ``derived``
(derived Homs and generator checks), ``textio`` and ``cli``.
"""

__version__ = "0.1.0"
