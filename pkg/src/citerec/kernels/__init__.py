"""Kernel selection: compiled extension when built, pure Python otherwise.

``BACKEND`` records which implementation is active. Both expose identical
functions over CSR adjacency (int64 indptr, int32 indices) and int32
codepoint arrays; the equivalence is covered by tests and the benchmark in
``benchmarks/bench_kernels.py``.
"""

try:
    from . import _core as _impl

    BACKEND = "compiled"
except ImportError:
    from . import _fallback as _impl

    BACKEND = "python"

khop_closure = _impl.khop_closure
distance_histogram = _impl.distance_histogram
intersection_size = _impl.intersection_size
levenshtein = _impl.levenshtein


def available_backends() -> dict[str, object]:
    """All importable kernel implementations, keyed by backend name."""
    from . import _fallback

    backends: dict[str, object] = {"python": _fallback}
    try:
        from . import _core

        backends["compiled"] = _core
    except ImportError:
        pass
    return backends
