import itertools
from fractions import Fraction
from pathlib import Path

import pytest

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir():
    return DATA


def box_min(lat, center, modulus="2"):
    """Naive shifted minimum over the box |xi_k| <= 2 r max|G|; returns (value, all minimizers)."""
    from surgery_lattices._exact import inverse
    g = [list(r) for r in lat.gram]
    r = len(g)
    inv = inverse(g)
    bound = 2 * r * max(abs(x) for row in g for x in row)
    best, arg = None, []
    if modulus == "2":
        for t in itertools.product(range(-bound, bound + 1), repeat=r):
            if any((t[k] - center[k]) % 2 for k in range(r)):
                continue
            v = sum(t[a] * inv[a][b] * t[b] for a in range(r) for b in range(r))
            if best is None or v < best:
                best, arg = v, [t]
            elif v == best:
                arg.append(t)
        return best, arg
    # modulus 2G: xi = c + 2 G m
    for m in itertools.product(range(-bound, bound + 1), repeat=r):
        xi = tuple(center[k] + 2 * sum(g[k][j] * m[j] for j in range(r)) for k in range(r))
        v = sum(xi[a] * inv[a][b] * xi[b] for a in range(r) for b in range(r))
        if best is None or v < best:
            best, arg = v, [xi]
        elif v == best:
            arg.append(xi)
    return best, arg
