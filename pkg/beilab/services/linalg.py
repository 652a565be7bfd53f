from __future__ import annotations

from typing import Dict, Iterable, Tuple

from beilab.services.polynomial import Field

Row = Dict[int, object]


def rank_from_row_dicts(rows: Iterable[Row], field: Field) -> Tuple[int, Dict[int, Row]]:
    """
    Sparse Gaussian elimination on rows given as {col: coeff}.
    Returns (rank, pivots) where pivots maps pivot_col -> normalized row (pivot coeff = 1).
    """
    norm = field.normalize
    pivots: Dict[int, Row] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v != 0}
        while r:
            pc = min(r)
            piv = pivots.get(pc)
            if piv is None:
                inv = field.inverse(r[pc])
                pivots[pc] = {c: norm(v * inv) for c, v in r.items()}
                break
            coeff = r[pc]
            for c, pv in piv.items():
                v = norm(r.get(c, 0) - coeff * pv)
                if v:
                    r[c] = v
                else:
                    r.pop(c, None)
    return len(pivots), pivots


def rank(rows: Iterable[Row], field: Field) -> int:
    return rank_from_row_dicts(rows, field)[0]
