"""Bogoyavlensky lattices through their moment sequences.

Float functions take and return plain floats. The ``*_exact`` variants accept
ints, decimal strings, ``p/q`` strings or ``fractions.Fraction`` and return
``Fraction`` values.
"""

from fractions import Fraction

from . import _bogolat
from ._bogolat import lattice_rhs, moments, reconstruct, rk4, solve_cauchy, verify

__all__ = [
    "charpoly",
    "delta_ladder",
    "frc",
    "lattice_rhs",
    "lattice_rhs_exact",
    "lax_residual",
    "miura_forward",
    "miura_inverse",
    "moments",
    "moments_exact",
    "reconstruct",
    "reconstruct_exact",
    "rk4",
    "solve_cauchy",
    "verify",
]


def _encode(values):
    out = []
    for v in values:
        if isinstance(v, Fraction):
            out.append(f"{v.numerator}/{v.denominator}")
        elif isinstance(v, float):
            out.append(repr(v))
        else:
            out.append(str(v))
    return out


def _decode(values):
    return [Fraction(v) for v in values]


def _decode_table(table):
    return [[_decode(row) for row in block] for block in table]


def _encode_table(table):
    return [[_encode(row) for row in block] for block in table]


def lattice_rhs_exact(family, p, coeffs):
    return _decode(_bogolat.lattice_rhs_exact(family, p, _encode(coeffs)))


def lax_residual(family, p, coeffs, window=False):
    """Largest entry of |L' - [L, A]|, exact."""
    return Fraction(_bogolat.lax_residual_exact(family, p, _encode(coeffs), window))


def moments_exact(family, p, coeffs, max_index, window=False):
    """table[k][m-1][n-1] = S_k^{m,n} of the Lax matrix."""
    return _decode_table(_bogolat.moments_exact(family, p, _encode(coeffs), max_index, window))


def delta_ladder(table, max_k):
    """[Delta_{-1}, Delta_0, ..., Delta_{max_k}] from an exact moment table."""
    return _decode(_bogolat.delta_ladder_exact(_encode_table(table), max_k))


def reconstruct_exact(table, count):
    family, p, coeffs = _bogolat.reconstruct_exact(_encode_table(table), count)
    return family, p, _decode(coeffs)


def miura_forward(p, coeffs):
    return _decode(_bogolat.miura_forward_exact(p, _encode(coeffs)))


def miura_inverse(p, coeffs, seeds=None):
    if seeds is None:
        seeds = [1] * (p - 1)
    return _decode(_bogolat.miura_inverse_exact(p, _encode(coeffs), _encode(seeds)))


def frc(kind, p, coeffs):
    return _decode(_bogolat.frc_exact(kind, p, _encode(coeffs)))


def charpoly(family, p, coeffs):
    return _decode(_bogolat.charpoly_exact(family, p, _encode(coeffs)))
