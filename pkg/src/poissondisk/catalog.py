"""Closed-form test mappings with exact jets, sources and distortion constants.

==========================  ==================  ==============  ========================
label                       f(z)                g = Laplacian f  K
==========================  ==================  ==============  ========================
``identity``                z                   0               1
``scale:M``                 M z                 0               1
``shear:b``                 z + b conj(z)       0               (1+|b|)/(1-|b|)
``quadratic-source:c``      z + c |z|^2         4c              1/(1-2|c|)
``cubic:c`` (real c)        z + c z |z|^2       8 c z           see :func:`_cubic_K`
``constant:c``              c                   0               undefined
==========================  ==================  ==============  ========================
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .solver import SourceField, WirtingerJet
from .validation import check_disk_points


def _const(c):
    return lambda z: np.full(np.shape(z), c, dtype=complex)


@dataclass(frozen=True)
class CatalogMap:
    """A mapping of the closed disk with closed-form jets.

    Construction checks ``4 d/dzbar f_z = g`` by central differences on a
    sample grid and, when ``exact_K`` is given, that the distortion ratio
    ``||D_f|| / lambda(D_f)`` never exceeds it.
    """

    label: str
    f: Callable
    f_z: Callable
    f_zbar: Callable
    g: Callable
    exact_K: Optional[float] = None
    params: dict = field(default_factory=dict)
    g_text: str = "0"
    sense_preserving: bool = True
    source: SourceField = field(init=False, repr=False, compare=False)

    closed = True
    max_radius = 1.0
    default_tolerance = 1e-8

    def __post_init__(self):
        grid = _check_grid()
        h = 1e-5
        dzbar = 0.5 * ((self.f_z(grid + h) - self.f_z(grid - h)) / (2 * h)
                       + 1j * (self.f_z(grid + 1j * h) - self.f_z(grid - 1j * h)) / (2 * h))
        gv = self.g(grid)
        if np.max(np.abs(4.0 * dzbar - gv) / (1.0 + np.abs(gv))) > 1e-5:
            raise ValueError(f"{self.label}: 4 d/dzbar f_z does not match g")
        if self.exact_K is not None:
            j = self.jets(np.concatenate([grid, np.exp(2j * np.pi * np.arange(64) / 64)]))
            ratio = j.op_norm / j.min_stretch
            if np.max(ratio) > self.exact_K * (1 + 1e-6):
                raise ValueError(f"{self.label}: distortion exceeds exact_K")
        object.__setattr__(self, "source", SourceField.from_callable(self.g))

    def evaluate(self, Z):
        z = check_disk_points(Z, closed=True)
        return np.broadcast_to(self.f(z), z.shape).astype(complex)

    predict = evaluate

    def jets(self, Z):
        z = check_disk_points(Z, closed=True)
        b = lambda v: np.broadcast_to(np.asarray(v, dtype=complex), z.shape)
        return WirtingerJet(b(self.f(z)), b(self.f_z(z)), b(self.f_zbar(z)))

    def boundary_samples(self, n=2048):
        e = np.exp(2j * np.pi * np.arange(n) / n)
        return np.broadcast_to(self.f(e), e.shape).astype(complex)

    @property
    def quadrature(self):
        return {"jets": "closed-form"}

    def scaled(self, M):
        """The map ``M f`` (``M > 0``), with ``g`` scaled accordingly."""
        M = float(M)
        return CatalogMap(f"{M:g}*({self.label})", lambda z: M * self.f(z),
                          lambda z: M * self.f_z(z), lambda z: M * self.f_zbar(z),
                          lambda z: M * self.g(z), self.exact_K, dict(self.params),
                          f"{M:g}*({self.g_text})", self.sense_preserving)


def _check_grid():
    r = np.linspace(0.05, 0.9, 6)
    t = 2 * np.pi * np.arange(7) / 7
    return (r[:, None] * np.exp(1j * t)).ravel()


def identity():
    one = _const(1.0)
    return CatalogMap("identity", lambda z: z * 1.0, one, _const(0.0), _const(0.0), 1.0)


def scale(M):
    M = float(M)
    if not M > 0:
        raise ValueError("scale factor must be positive")
    return CatalogMap(f"scale:{M:g}", lambda z: M * z, _const(M), _const(0.0), _const(0.0),
                      1.0, {"M": M})


def shear(beta):
    beta = complex(beta)
    if not abs(beta) < 1:
        raise ValueError("shear needs |beta| < 1")
    if beta.imag == 0:
        beta = beta.real
    K = (1 + abs(beta)) / (1 - abs(beta))
    return CatalogMap(f"shear:{beta:g}", lambda z: z + beta * np.conj(z), _const(1.0),
                      _const(beta), _const(0.0), K, {"beta": beta})


def quadratic_source(c):
    c = complex(c)
    if not abs(c) < 0.5:
        raise ValueError("quadratic-source needs |c| < 1/2 to stay sense-preserving")
    if c.imag == 0:
        c = c.real
    K = 1.0 / (1.0 - 2.0 * abs(c))
    return CatalogMap(f"quadratic-source:{c:g}", lambda z: z + c * np.abs(z) ** 2,
                      lambda z: 1.0 + c * np.conj(z), lambda z: c * z, _const(4.0 * c), K,
                      {"c": c}, f"4c = {4 * c:g}")


def _cubic_K(c):
    # ratio (|1 + 2c t| + |c| t) / (|1 + 2c t| - |c| t), t = |z|^2, is increasing in t
    if c >= 0:
        return (1 + 3 * c) / (1 + c)
    return (1 - abs(c)) / (1 - 3 * abs(c))


def cubic(c):
    c = float(c)
    if not -1.0 / 3.0 < c < 1.0:
        raise ValueError("cubic needs -1/3 < c < 1")
    return CatalogMap(f"cubic:{c:g}", lambda z: z + c * z * np.abs(z) ** 2,
                      lambda z: 1.0 + 2.0 * c * np.abs(z) ** 2, lambda z: c * z * z,
                      lambda z: 8.0 * c * z, _cubic_K(c), {"c": c}, f"8cz = {8 * c:g}z")


def constant(c=1.0):
    c = complex(c)
    zero = _const(0.0)
    return CatalogMap(f"constant:{c:g}", _const(c), zero, zero, zero, None, {"c": c},
                      sense_preserving=False)


_FAMILIES = {
    "identity": (identity, None),
    "scale": (scale, "M"),
    "shear": (shear, "beta"),
    "quadratic-source": (quadratic_source, "c"),
    "cubic": (cubic, "c"),
    "constant": (constant, "c"),
}

DEFAULT_LABELS = ("identity", "scale:2", "shear:0.5", "quadratic-source:0.1", "cubic:0.1",
                  "constant:1")


def parse_map(label):
    """Build a :class:`CatalogMap` from a label such as ``"shear:0.5"``."""
    name, _, arg = label.strip().partition(":")
    if name not in _FAMILIES:
        raise KeyError(f"unknown catalog label {label!r}; known: {', '.join(_FAMILIES)}")
    factory, pname = _FAMILIES[name]
    if pname is None:
        if arg:
            raise ValueError(f"{name} takes no parameter")
        return factory()
    if not arg:
        raise ValueError(f"{name} needs a parameter, e.g. {name}:0.5")
    value = complex(arg.replace("i", "j"))
    return factory(value.real if value.imag == 0 else value)


def default_catalog(sense_preserving_only=False):
    maps = [parse_map(lbl) for lbl in DEFAULT_LABELS]
    if sense_preserving_only:
        maps = [m for m in maps if m.sense_preserving]
    return maps


def catalog_listing():
    """One record per family: label pattern, parameter, K and g."""
    rows = []
    for name, (factory, pname) in _FAMILIES.items():
        example = parse_map(name if pname is None else next(
            lbl for lbl in DEFAULT_LABELS if lbl.startswith(name + ":")))
        rows.append({
            "label": name if pname is None else f"{name}:{pname}",
            "example": example.label,
            "K": {"identity": "1", "scale": "1", "shear": "(1+|beta|)/(1-|beta|)",
                  "quadratic-source": "1/(1-2|c|)",
                  "cubic": "(1+3c)/(1+c) for c>=0, (1-|c|)/(1-3|c|) for c<0",
                  "constant": "undefined"}[name],
            "example_K": example.exact_K,
            "g": {"identity": "0", "scale": "0", "shear": "0", "quadratic-source": "4c",
                  "cubic": "8cz", "constant": "0"}[name],
            "sense_preserving": example.sense_preserving,
        })
    return rows
