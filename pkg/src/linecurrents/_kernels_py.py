"""Numpy implementations of the inner loops (fallback when the extension is absent)."""
import numpy as np

TWO_PI_INV_MU0 = 2e-7  # mu0 / (2 pi), exact with mu0 = 4 pi 1e-7


def field_at_points(px, py, cx, cy, cur, chunk=1 << 20):
    """B = (mu0/2pi) sum I z x (r - r_n) / |r - r_n|^2 at every (px, py)."""
    px = np.asarray(px, dtype=float)
    py = np.asarray(py, dtype=float)
    cx = np.asarray(cx, dtype=float)[None, :]
    cy = np.asarray(cy, dtype=float)[None, :]
    cur = TWO_PI_INV_MU0 * np.asarray(cur, dtype=complex)[None, :]
    bx = np.empty(len(px), dtype=complex)
    by = np.empty(len(px), dtype=complex)
    rows = max(1, chunk // max(1, cx.shape[1]))
    for start in range(0, len(px), rows):
        sl = slice(start, start + rows)
        dx = px[sl, None] - cx
        dy = py[sl, None] - cy
        scale = cur / (dx * dx + dy * dy)
        bx[sl] = -np.sum(scale * dy, axis=1)
        by[sl] = np.sum(scale * dx, axis=1)
    return bx, by


def polygon_moments(px, py, bx, by, r_scale, m_max, nodes, weights):
    """Closed-polygon integral of [Bx(tx + j ty) + By(ty - j tx)] f^m dl, m = 0..m_max.

    The field is linear along each segment; ``nodes``/``weights`` are a
    quadrature rule on [0, 1].  The 1/mu0 factor is left to the caller.
    """
    x1 = np.asarray(px, dtype=float)
    y1 = np.asarray(py, dtype=float)
    x2 = np.roll(x1, -1)
    y2 = np.roll(y1, -1)
    b1x = np.asarray(bx, dtype=complex)
    b1y = np.asarray(by, dtype=complex)
    b2x = np.roll(b1x, -1)
    b2y = np.roll(b1y, -1)
    length = np.hypot(x2 - x1, y2 - y1)
    tx = ((x2 - x1) / length)[:, None]
    ty = ((y2 - y1) / length)[:, None]
    t = np.asarray(nodes, dtype=float)[None, :]
    s = 1.0 - t
    xs = x1[:, None] * s + x2[:, None] * t
    ys = y1[:, None] * s + y2[:, None] * t
    fbx = b1x[:, None] * s + b2x[:, None] * t
    fby = b1y[:, None] * s + b2y[:, None] * t
    term = (fbx * (tx + 1j * ty) + fby * (ty - 1j * tx)) * (length[:, None] * weights[None, :])
    f = np.exp((1j * xs - ys) / r_scale)
    out = np.empty(m_max + 1, dtype=complex)
    for m in range(m_max + 1):
        out[m] = term.sum()
        term = term * f
    return out
