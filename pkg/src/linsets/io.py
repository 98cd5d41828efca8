"""Text formats for subspaces and function tables.

Subspace block::

    p h n r e m
    <m rows of r*(n/e) integers>

Each integer is an element of F_{q^e} written in the tower's polynomial
encoding (base-p digits, low degree first, of its residue modulo the tower
modulus).  Lines starting with ``#`` are ignored; blocks are separated by
blank lines.
"""
from .field_tower import make_tower
from .fq_linalg import Subspace
from .linalg import field_ops, rref


def format_subspace(U):
    T = U.tower
    lines = [f"{T.p} {T.h} {T.n} {U.r} {U.e} {U.dim}"]
    lines += [" ".join(str(x) for x in row) for row in U.basis]
    return "\n".join(lines) + "\n"


def _blocks(text):
    block = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            if block:
                yield block
                block = []
            continue
        block.append(line)
    if block:
        yield block


def parse_subspaces(text):
    out = []
    lines = [ln for blk in _blocks(text) for ln in blk]
    i = 0
    while i < len(lines):
        p, h, n, r, e, m = (int(x) for x in lines[i].split())
        T = make_tower(p, h, n)
        width = r * (n // e)
        rows = []
        for row_line in lines[i + 1:i + 1 + m]:
            row = [int(x) for x in row_line.split()]
            if len(row) != width:
                raise ValueError(f"expected {width} coordinates, got {len(row)}")
            if any(not T.in_subfield(x, e) for x in row):
                raise ValueError("coordinate outside F_{q^e}")
            rows.append(row)
        if len(rows) != m:
            raise ValueError("truncated subspace block")
        basis, piv = rref(rows, field_ops(T, e), width)
        out.append(Subspace(T, r, e, basis, piv))
        i += 1 + m
    return out


def parse_subspace(text):
    found = parse_subspaces(text)
    if len(found) != 1:
        raise ValueError(f"expected one subspace, found {len(found)}")
    return found[0]


def read_subspace(path):
    with open(path) as fh:
        return parse_subspace(fh.read())


def write_subspace(U, path):
    with open(path, "w") as fh:
        fh.write(format_subspace(U))


def parse_function_table(text):
    """Lines ``x f(x)`` of field-element ints; returns dict x -> f(x)."""
    table = {}
    for blk in _blocks(text):
        for line in blk:
            x, y = (int(v) for v in line.split())
            table[x] = y
    return table


def format_function_table(table):
    return "".join(f"{x} {table[x]}\n" for x in sorted(table))
