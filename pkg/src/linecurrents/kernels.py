"""Backend selection for the hot loops.

The Cython extension ``_kernels`` is used when it was built; otherwise the
numpy implementation in ``_kernels_py`` is used.  ``use_backend`` switches
explicitly (benchmarks and cross-checks).
"""
from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

_active = _compiled if _compiled is not None else _kernels_py


def backend_name() -> str:
    return "compiled" if _active is _compiled and _compiled is not None else "python"


def use_backend(name: str) -> None:
    global _active
    try:
        _active = BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def field_at_points(px, py, cx, cy, cur):
    return _active.field_at_points(px, py, cx, cy, cur)


def polygon_moments(px, py, bx, by, r_scale, m_max, nodes, weights):
    return _active.polygon_moments(px, py, bx, by, float(r_scale), int(m_max), nodes, weights)
