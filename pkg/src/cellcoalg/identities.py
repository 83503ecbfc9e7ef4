"""Chain-level identities of the coalgebra and join structures, as reports.

Each check evaluates both sides on every cell (or pair of cells) of the
standard simplex or cube up to a given dimension and records the cells on
which they differ.  The same functions back the test suite and the
``selfcheck`` command.
"""

from __future__ import annotations

from itertools import product

from . import cubical, simplicial
from .cochains import Report
from .einfty import (classic_map, difference_on, iterated_coproduct_op, psi,
                     psi_identity_failures)
from .free import GradedMap, agree_on, hom_boundary, identity, tensor, zero_map

_MODULES = {"simplex": simplicial, "cube": cubical}


def _maps(model):
    mod = _MODULES[model.name]
    cop = mod.AW if model.name == "simplex" else mod.SERRE
    return mod, cop, identity(mod.deg)


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    return x


def _report(name: str, labels, bad) -> Report:
    rep = Report(name, len(labels))
    for lab in bad:
        rep.failures.append({"cells": _jsonable(lab)})
    return rep


def coassociativity(model, n: int) -> Report:
    """``(Delta (x) id) Delta = (id (x) Delta) Delta`` on every face of the n-cell."""
    mod, cop, ID = _maps(model)
    labels = [(c,) for c in model.cells(n)]
    lhs = tensor(cop, ID) @ cop
    rhs = tensor(ID, cop) @ cop
    return _report(f"coassociativity({model.name}, n={n})", labels, agree_on(lhs, rhs, labels))


def counit(model, n: int) -> Report:
    """``(eps (x) id) Delta = id = (id (x) eps) Delta``."""
    mod, cop, ID = _maps(model)
    labels = [(c,) for c in model.cells(n)]
    bad = agree_on(tensor(mod.EPS, ID) @ cop, ID, labels)
    bad += [b for b in agree_on(tensor(ID, mod.EPS) @ cop, ID, labels) if b not in bad]
    return _report(f"counit({model.name}, n={n})", labels, bad)


def coproduct_chain_map(model, n: int) -> Report:
    mod, cop, ID = _maps(model)
    labels = [(c,) for c in model.cells(n)]
    bad = agree_on(hom_boundary(cop, mod.BOUNDARY, mod.BOUNDARY), zero_map(-1, mod.deg), labels)
    return _report(f"coproduct_chain_map({model.name}, n={n})", labels, bad)


def join_homotopy(model, n: int) -> Report:
    """``d* = eps (x) id - id (x) eps`` on pairs of faces of the n-cell."""
    mod, _, ID = _maps(model)
    cells = model.cells(n)
    labels = list(product(cells, cells))
    lhs = hom_boundary(mod.JOIN, mod.BOUNDARY, mod.BOUNDARY)
    rhs = tensor(mod.EPS, ID) - tensor(ID, mod.EPS)
    return _report(f"join_homotopy({model.name}, n={n})", labels, agree_on(lhs, rhs, labels))


def join_counit(model, n: int) -> Report:
    """``eps o * = 0``."""
    mod, _, ID = _maps(model)
    cells = model.cells(n)
    labels = list(product(cells, cells))
    eps_join = mod.EPS @ mod.JOIN
    return _report(f"join_counit({model.name}, n={n})", labels,
                   agree_on(eps_join, zero_map(1, mod.deg, arity=2), labels))


def psi_boundary_identities(model, r: int, i_max: int, n_max: int) -> Report:
    """``d psi(e_{2m+1}) = T psi(e_{2m})`` and ``d psi(e_{2m}) = N psi(e_{2m-1})``."""
    bad = psi_identity_failures(model, r, i_max, n_max)
    rep = Report(f"psi_boundary({model.name}, r={r}, i<={i_max}, n<={n_max})",
                 (i_max + 1) * (n_max + 1))
    for i, cell in bad:
        rep.failures.append({"i": i, "cell": model.to_json(cell)})
    return rep


def psi_base_case(model, r: int, n_max: int) -> Report:
    """``psi(r)(e_0)`` equals the iterated coproduct ``Delta^{r-1}``."""
    rep = Report(f"psi_base({model.name}, r={r}, n<={n_max})", n_max + 1)
    tops = [model.top(n) for n in range(n_max + 1)]
    for cell in difference_on(psi(model, r, 0), iterated_coproduct_op(model, r - 1), tops):
        rep.failures.append({"cell": model.to_json(cell)})
    return rep


def psi2_matches_recursion(model, i_max: int, n_max: int) -> Report:
    """``psi(2)(e_i)`` against Steenrod's cup-i recursion, literally."""
    rep = Report(f"psi2_vs_recursion({model.name}, i<={i_max}, n<={n_max})",
                 (i_max + 1) * (n_max + 1))
    for i in range(i_max + 1):
        classic: GradedMap = classic_map(model, i)
        for n in range(n_max + 1):
            top = model.top(n)
            a = psi(model, 2, i).top(n)
            b = {k: v for k, v in classic.raw((top,)).items() if v}
            if a != b:
                rep.failures.append({"i": i, "n": n})
    return rep
