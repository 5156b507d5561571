"""Pure Python scan kernel: exact power sums over square scans.

Same interface as the compiled kernel (_scan_c).  Values are generated
row-at-a-time with numpy; power sums for low degrees accumulate in
int64 where overflow is provably impossible, everything else in
arbitrary-precision Python integers, so results are exact at any size.
"""

from __future__ import annotations

import numpy as np

IS_COMPILED = False


def _safe_int64_degree(max_abs: int, m: int) -> int:
    """Highest degree whose power sums certainly fit in signed int64."""
    max_abs = max(max_abs, 1)
    e = 0
    while max_abs ** (e + 1) * m < 2 ** 62:
        e += 1
    return e


def scan_pair(aa, bb, add_table, wtable, emax, row_start, row_end,
              want_presence):
    """Scan rows [row_start, row_end) of the virtual square.

    aa, bb: (m, size) int32 ring elements per axis index (t folded into aa).
    add_table: (q, q) int32 ring addition.
    wtable: (size, q) int64 per-coordinate value contributions.
    Returns (row_sums, col_sums, diag, anti, presence): row_sums has one
    [s_1..s_emax] entry per scanned row; col_sums covers all m columns
    (partial over the scanned rows); diag/anti likewise partial.
    """
    m = aa.shape[0]
    size = aa.shape[1]
    ks = np.arange(size)

    def row_values(i):
        w = add_table[aa[i][None, :], bb]        # (m, size)
        return wtable[ks[None, :], w].sum(axis=1) + 1

    # entries of the virtual square are exactly 1..m*m
    return _scan(row_values, m, m * m, m * m, emax, row_start, row_end,
                 want_presence)


def scan_dense(values, emax, row_start, row_end, want_presence):
    values = np.asarray(values, dtype=np.int64)
    m = values.shape[0]
    max_abs = int(np.abs(values).max(initial=0))
    return _scan(lambda i: values[i], m, m * m, max_abs, emax,
                 row_start, row_end, want_presence)


def _scan(row_values, m, ncells, max_abs, emax, row_start, row_end,
          want_presence):
    fast = min(emax, _safe_int64_degree(max_abs, m))
    row_sums = []
    col_fast = [np.zeros(m, dtype=np.int64) for _ in range(fast)]
    col_slow = [np.zeros(m, dtype=object) for _ in range(fast, emax)]
    diag = [0] * emax
    anti = [0] * emax
    presence = np.zeros(ncells, dtype=np.uint8) if want_presence else None

    for i in range(row_start, row_end):
        vals = row_values(i)
        if presence is not None:
            in_range = vals[(vals >= 1) & (vals <= ncells)]
            presence[in_range - 1] = 1
        sums = []
        power = None
        for e in range(1, emax + 1):
            if e == 1:
                power = vals if fast >= 1 else vals.astype(object)
            else:
                if e == fast + 1:
                    power = power.astype(object)
                power = power * vals
            if e <= fast:
                col_fast[e - 1] += power
            else:
                col_slow[e - 1 - fast] += power
            sums.append(int(power.sum()))
        row_sums.append(sums)
        dv = int(vals[i])
        av = int(vals[m - 1 - i])
        dp = ap = 1
        for e in range(emax):
            dp *= dv
            ap *= av
            diag[e] += dp
            anti[e] += ap

    col_sums = []
    for j in range(m):
        entry = [int(col_fast[e][j]) for e in range(fast)]
        entry += [int(col_slow[e][j]) for e in range(emax - fast)]
        col_sums.append(entry)
    return row_sums, col_sums, diag, anti, presence
