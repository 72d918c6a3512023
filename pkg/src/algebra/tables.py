"""
Multiplication Tables
Names for basis vectors and the per-idempotent tables: for a matching a,
rows run over the pieces ending in a and columns over the pieces
starting at a.

For n = 2 the matchings are a = {(1,2),(3,4)} and b = {(1,4),(2,3)}; the
circles of W(a)a are a1 = {1,2}, a2 = {3,4}, those of W(b)b are
b1 = {1,4}, b2 = {2,3}, and the single circles of W(b)a, W(a)b are
c_ba, c_ab.
"""
import json
import os
from typing import Optional

import pandas as pd

from config import OUTPUT
from src.algebra.base import ArcAlgebra, ArcElement, BasisVector
from src.algebra.exterior import GaussInt, bits
from src.errors import DiagramError

N2_NAMES = {
    BasisVector(0, 0, 0): "1_a", BasisVector(0, 0, 1): "a1",
    BasisVector(0, 0, 2): "a2", BasisVector(0, 0, 3): "a1^a2",
    BasisVector(1, 1, 0): "1_b", BasisVector(1, 1, 1): "b1",
    BasisVector(1, 1, 2): "b2", BasisVector(1, 1, 3): "b1^b2",
    BasisVector(1, 0, 0): "1_ba", BasisVector(1, 0, 1): "c_ba",
    BasisVector(0, 1, 0): "1_ab", BasisVector(0, 1, 1): "c_ab",
}
N2_SIDES = {"a": 0, "b": 1}


def basis_name(algebra: ArcAlgebra, bv: BasisVector) -> str:
    if algebra.n == 2:
        return N2_NAMES[bv]
    circles = algebra.diagram(bv.top, bv.bottom).circles
    word = "^".join("{" + ",".join(map(str, circles[k])) + "}" for k in bits(bv.mask))
    return f"{bv.top}|{bv.bottom}:{word or '1'}"


def resolve_side(algebra: ArcAlgebra, side: str) -> int:
    if algebra.n == 2 and side in N2_SIDES:
        return N2_SIDES[side]
    try:
        k = int(side.split(":")[-1])
    except ValueError as e:
        raise DiagramError(f"unknown side {side!r}") from e
    if k not in algebra.ids():
        raise DiagramError(f"unknown side {side!r} for n={algebra.n}")
    return k


def side_basis(algebra: ArcAlgebra, a: int) -> tuple[list[BasisVector], list[BasisVector]]:
    """Rows: pieces (., a), diagonal first. Columns: pieces (a, .), diagonal first."""
    others = [b for b in algebra.ids() if b != a]
    rows = algebra.piece_basis(a, a) + [bv for b in others for bv in algebra.piece_basis(b, a)]
    cols = algebra.piece_basis(a, a) + [bv for b in others for bv in algebra.piece_basis(a, b)]
    return rows, cols


def format_terms(algebra: ArcAlgebra, terms: dict) -> str:
    if not terms:
        return "0"
    out = ""
    for bv in sorted(terms):
        c = terms[bv]
        name = basis_name(algebra, bv)
        text = str(c)
        if text == "1":
            piece, negative = name, False
        elif text == "-1":
            piece, negative = name, True
        else:
            piece, negative = f"{text}·{name}", False
        if not out:
            out = ("-" if negative else "") + piece
        else:
            out += (" - " if negative else " + ") + piece
    return out


def _coeff_json(c):
    c = GaussInt.lift(c)
    return c.re if not c.im else [c.re, c.im]


def table_record(algebra: ArcAlgebra, side: str, kind: str) -> dict:
    a = resolve_side(algebra, side)
    rows, cols = side_basis(algebra, a)
    entries = []
    for x in rows:
        line = []
        for y in cols:
            product = algebra.product_basis(x, y)
            line.append({basis_name(algebra, k): _coeff_json(v) for k, v in sorted(product.items())})
        entries.append(line)
    return {
        'n': algebra.n,
        'algebra': kind,
        'side': side,
        'rows': [basis_name(algebra, x) for x in rows],
        'cols': [basis_name(algebra, y) for y in cols],
        'entries': entries,
    }


def multiplication_table(algebra: ArcAlgebra, side: str) -> pd.DataFrame:
    a = resolve_side(algebra, side)
    rows, cols = side_basis(algebra, a)
    data = [[format_terms(algebra, algebra.product_basis(x, y)) for y in cols] for x in rows]
    return pd.DataFrame(data,
                        index=[basis_name(algebra, x) for x in rows],
                        columns=[basis_name(algebra, y) for y in cols])


def golden_path(kind: str, side: str, n: int = 2) -> str:
    return os.path.join(OUTPUT["golden_dir"], f"{kind}_n{n}_{side}.json")


def load_golden(kind: str, side: str, n: int = 2) -> Optional[dict]:
    path = golden_path(kind, side, n)
    if not os.path.exists(path):
        return None
    with open(path) as f:
        return json.load(f)


def parse_basis(algebra: ArcAlgebra, text: str) -> BasisVector:
    """An n=2 name, or 'top|bottom|mask' with matching ids."""
    text = text.strip()
    if algebra.n == 2:
        for bv, name in N2_NAMES.items():
            if name == text:
                return bv
    try:
        top, bottom, mask = (int(p) for p in text.split("|"))
    except ValueError as e:
        raise DiagramError(f"cannot parse basis element {text!r}") from e
    if top not in algebra.ids() or bottom not in algebra.ids():
        raise DiagramError(f"unknown matching in {text!r}")
    if not 0 <= mask < 1 << len(algebra.diagram(top, bottom)):
        raise DiagramError(f"mask {mask} out of range in {text!r}")
    return BasisVector(top, bottom, mask)


def parse_element(algebra: ArcAlgebra, text: str) -> ArcElement:
    """Comma-separated terms 'coeff*basis' or 'basis', e.g. 'b2,-1*b1'."""
    terms: dict = {}
    for part in text.split(","):
        if not part.strip():
            continue
        coeff, _, name = part.rpartition("*")
        try:
            c = int(coeff) if coeff.strip() else 1
        except ValueError as e:
            raise DiagramError(f"bad coefficient in {part!r}") from e
        bv = parse_basis(algebra, name)
        terms[bv] = terms.get(bv, 0) + c
    return ArcElement(algebra.n, terms)
