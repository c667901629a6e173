"""Graph linear canonical transforms (C++ core with Python bindings)."""

from ._glct import (
    GlctError,
    Operator,
    ParamMatrix,
    SpectralGraph,
    __version__,
    analyze,
    bipolar_signal,
    cddhfs,
    chirp_exponent_sum,
    cmccm,
    corpus_graph,
    decompose_b0,
    decompose_cmccm,
    decompose_iwasawa,
    generate,
    identity,
    inverse_by_negation,
    inverse_by_params,
    nmse,
    opcount,
    rotation,
    run_experiment,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
