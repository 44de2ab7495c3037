"""Reading and writing instance, witness, hypergraph and experiment files.

Instance files are JSON: {"p": 3, "n": 4, "m": 2, "matrices": [[[i, j, val], ...], ...]} with 1-based
i < j entries of each strict upper triangle; the lower triangle is the negation and absent entries are zero.
Witness files are JSON with the basis stored as a list of column vectors. Hypergraph files are text: a
"n ell" header and then one edge per line as 1-based vertex numbers.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import TextIO, Union

import numpy as np

from algebra import altspace
from algebra.altspace import AltSpace, Witness, WitnessReport
from algebra.field import FieldCtx
from algebra.matrix import Subspace
from combinatorics.hypergraph import Hypergraph, make_hypergraph
from combinatorics.randgen import BghReport
from util.RamseyErrors import InputError, InstanceFormatError
from util.RamseyLogging import getLogger
from util.util import WitnessKind, ensure_parent

LOGGER = getLogger(__name__)

PathLike = Union[str, Path]


def _load_json(path: PathLike) -> dict:
    try:
        with open(path, 'r', encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InstanceFormatError("json", e.msg, e.lineno) from e
    except OSError as e:
        raise InstanceFormatError("file", f"cannot read {path}: {e.strerror}") from e


def _int_field(obj: dict, key: str, where: str = "") -> int:
    name = f"{where}{key}"
    if key not in obj:
        raise InstanceFormatError(name, "missing")
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise InstanceFormatError(name, f"expected an integer, got {val!r}")
    return val


def instance_from_dict(data: dict) -> AltSpace:
    if not isinstance(data, dict):
        raise InstanceFormatError("$", "top level must be an object")
    p = _int_field(data, "p")
    n = _int_field(data, "n")
    m = _int_field(data, "m")
    if n < 0 or m < 0:
        raise InstanceFormatError("n" if n < 0 else "m", "must be non-negative")
    try:
        ctx = FieldCtx(p)
    except InputError as e:
        raise InstanceFormatError("p", str(e)) from e
    slices = data.get("matrices")
    if not isinstance(slices, list):
        raise InstanceFormatError("matrices", "missing or not a list")
    if len(slices) != m:
        raise InstanceFormatError("matrices", f"expected {m} slices, found {len(slices)}")
    gens = []
    for k, entries in enumerate(slices):
        if not isinstance(entries, list):
            raise InstanceFormatError(f"matrices[{k}]", "not a list of [i, j, val] entries")
        a = np.zeros((n, n), dtype=np.int64)
        for e, entry in enumerate(entries):
            where = f"matrices[{k}][{e}]"
            if not (isinstance(entry, list) and len(entry) == 3 and
                    all(isinstance(x, int) and not isinstance(x, bool) for x in entry)):
                raise InstanceFormatError(where, f"expected [i, j, val], got {entry!r}")
            i, j, val = entry
            if not 1 <= i < j <= n:
                raise InstanceFormatError(where, f"need 1 <= i < j <= {n}, got i={i}, j={j}")
            if not 0 <= val < p:
                raise InstanceFormatError(where, f"value {val} outside 0..{p - 1}")
            a[i - 1, j - 1] = val
            a[j - 1, i - 1] = (-val) % p
        gens.append(a)
    return altspace.from_bilinear_map(ctx, n, m, gens)


def read_instance(path: PathLike) -> AltSpace:
    a = instance_from_dict(_load_json(path))
    LOGGER.info("Read %s from %s", a, path)
    return a


def instance_to_dict(a: AltSpace) -> dict:
    iu = np.triu_indices(a.n, 1)
    slices = []
    for g in a.gens:
        vals = g[iu]
        nz = np.flatnonzero(vals)
        slices.append([[int(iu[0][k]) + 1, int(iu[1][k]) + 1, int(vals[k])] for k in nz])
    return {"p": a.ctx.p, "n": a.n, "m": a.m, "matrices": slices}


def write_instance(a: AltSpace, path: PathLike):
    path = ensure_parent(path)
    with open(path, 'w', encoding="utf-8") as f:
        json.dump(instance_to_dict(a), f)
    LOGGER.info("Wrote %s to %s", a, path)


def witness_to_dict(w: Witness, report: WitnessReport = None) -> dict:
    basis = w.basis.basis
    return {"kind": WitnessKind(w.kind).value,
            "dim": int(basis.shape[1]),
            "basis": [[int(x) for x in basis[:, j]] for j in range(basis.shape[1])],
            "verified": bool(report.ok) if report else False,
            "measured_dim": int(report.measured_dim) if report else -1}


def write_witness(w: Witness, report: WitnessReport, path: PathLike):
    path = ensure_parent(path)
    with open(path, 'w', encoding="utf-8") as f:
        json.dump(witness_to_dict(w, report), f, indent=2)


def witness_from_dict(data: dict, ctx: FieldCtx, n: int) -> Witness:
    """Structure is validated here; rank and the isotropy/completeness claims are left to verify_witness."""
    if not isinstance(data, dict):
        raise InstanceFormatError("$", "top level must be an object")
    try:
        kind = WitnessKind(data.get("kind"))
    except ValueError as e:
        raise InstanceFormatError("kind", f"expected isotropic or complete, got {data.get('kind')!r}") from e
    dim = _int_field(data, "dim")
    cols = data.get("basis")
    if not isinstance(cols, list) or len(cols) != dim:
        raise InstanceFormatError("basis", f"expected {dim} column vectors")
    for j, c in enumerate(cols):
        if not (isinstance(c, list) and len(c) == n and all(isinstance(x, int) and not isinstance(x, bool) for x in c)):
            raise InstanceFormatError(f"basis[{j}]", f"expected {n} integers")
    basis = np.array(cols, dtype=np.int64).T.reshape(n, dim)
    return Witness(kind, Subspace(ctx, n, basis))


def read_witness(path: PathLike, ctx: FieldCtx, n: int) -> Witness:
    return witness_from_dict(_load_json(path), ctx, n)


def parse_hypergraph(text: str) -> Hypergraph:
    lines = [(no, ln.strip()) for no, ln in enumerate(text.splitlines(), start=1)]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InstanceFormatError("header", "empty hypergraph file", 1)
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(x.isdigit() for x in parts):
        raise InstanceFormatError("header", f"expected 'n ell', got {header!r}", no)
    n, ell = int(parts[0]), int(parts[1])
    edges = []
    for no, ln in lines[1:]:
        parts = ln.split()
        if not all(x.isdigit() for x in parts):
            raise InstanceFormatError("edge", f"non-integer vertex in {ln!r}", no)
        edge = [int(x) for x in parts]
        if len(edge) != ell or len(set(edge)) != ell:
            raise InstanceFormatError("edge", f"expected {ell} distinct vertices, got {ln!r}", no)
        if min(edge) < 1 or max(edge) > n:
            raise InstanceFormatError("edge", f"vertex outside 1..{n} in {ln!r}", no)
        edges.append([v - 1 for v in edge])
    try:
        return make_hypergraph(n, ell, edges)
    except InputError as e:
        raise InstanceFormatError("header", str(e), lines[0][0]) from e


def read_hypergraph(path: PathLike) -> Hypergraph:
    with open(path, 'r', encoding="utf-8") as f:
        return parse_hypergraph(f.read())


def format_hypergraph(h: Hypergraph) -> str:
    out = [f"{h.n} {h.ell}"]
    out += [" ".join(str(v + 1) for v in e) for e in h.edges]
    return "\n".join(out) + "\n"


def write_trials_csv(report: BghReport, out: TextIO):
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["trial", "alpha_isotropic", "alpha_complete"])
    for row in report.rows:
        writer.writerow([row.trial, row.alpha_isotropic, row.alpha_complete])
