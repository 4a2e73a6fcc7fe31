"""Latin structures: validated symbol grids, conjugates, intercalates, parities.

Symbols, rows and columns are 0-based everywhere in the Python API.  The text
format (``.lsq``) and everything printed for humans is 1-based.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class LatinError(ValueError):
    """A grid violates the invariants of the structure it was built as."""


class ParseError(LatinError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class OrderGuardError(ValueError):
    """Raised when an exhaustive computation is asked for an order beyond its guard."""

    def __init__(self, what: str, order: int, limit: int):
        self.what = what
        self.order = order
        self.limit = limit
        super().__init__(f"{what}: order {order} exceeds guard {limit}")


def permutation_parity(perm: Sequence[int]) -> int:
    """Parity (0 even, 1 odd) of a permutation of ``range(len(perm))``."""
    n = len(perm)
    seen = [False] * n
    cycles = 0
    for i in range(n):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return (n - cycles) & 1


def cycle_count(perm: Sequence[int]) -> int:
    n = len(perm)
    seen = [False] * n
    cycles = 0
    for i in range(n):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return cycles


def _first_repeat(values: Sequence[int]) -> int | None:
    seen = set()
    for pos, v in enumerate(values):
        if v in seen:
            return pos
        seen.add(v)
    return None


class SymbolArray:
    """An ``m x k`` grid of symbols drawn from ``range(n_symbols)``.

    The base of the Latin structure hierarchy.  It only checks shape and
    symbol range; subclasses add the row/column constraints.  Instances are
    immutable and hashable.
    """

    __slots__ = ("_cells", "_n_symbols")

    def __init__(self, cells, n_symbols: int | None = None):
        a = np.array(cells, dtype=np.int64)
        if a.size == 0:
            a = a.reshape(a.shape if a.ndim == 2 else (0, 0))
        if a.ndim != 2:
            raise LatinError(f"expected a 2-d grid, got shape {a.shape}")
        if n_symbols is None:
            n_symbols = max(a.shape)
        if n_symbols < 0:
            raise LatinError("negative symbol universe")
        if a.size and (a.min() < 0 or a.max() >= n_symbols):
            r, c = np.argwhere((a < 0) | (a >= n_symbols))[0]
            raise LatinError(
                f"symbol {a[r, c] + 1} at ({r + 1},{c + 1}) outside 1..{n_symbols}"
            )
        a.setflags(write=False)
        self._cells = a
        self._n_symbols = int(n_symbols)
        self._validate()

    def _validate(self) -> None:
        pass

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], n_symbols: int | None = None):
        """Build from 1-based symbol rows, as printed in the literature."""
        rows = [list(r) for r in rows]
        cells = np.array(rows, dtype=np.int64) - 1 if rows else np.zeros((0, 0), np.int64)
        return cls(cells, n_symbols)

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def n_symbols(self) -> int:
        return self._n_symbols

    @property
    def shape(self) -> tuple[int, int]:
        return self._cells.shape

    @property
    def rows(self) -> int:
        return self._cells.shape[0]

    @property
    def cols(self) -> int:
        return self._cells.shape[1]

    def __getitem__(self, idx):
        return self._cells[idx]

    def __eq__(self, other):
        if not isinstance(other, SymbolArray):
            return NotImplemented
        return (
            self._n_symbols == other._n_symbols
            and self.shape == other.shape
            and bool(np.array_equal(self._cells, other._cells))
        )

    def __hash__(self):
        return hash((self._n_symbols, self.shape, self._cells.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}({self.to_lists()!r})"

    def to_lists(self) -> list[list[int]]:
        """1-based rows."""
        return (self._cells + 1).tolist()

    def to_text(self) -> str:
        return format_square(self)

    def key(self) -> str:
        """Short stable content hash, used to name subjects in reports."""
        h = hashlib.sha1(self.to_text().encode()).hexdigest()
        return h[:12]

    # invariant probes, shared by parse-time classification
    def row_repeat(self) -> tuple[int, int] | None:
        for r, row in enumerate(self._cells.tolist()):
            pos = _first_repeat(row)
            if pos is not None:
                return r, pos
        return None

    def column_repeat(self) -> tuple[int, int] | None:
        for c, col in enumerate(self._cells.T.tolist()):
            pos = _first_repeat(col)
            if pos is not None:
                return pos, c
        return None


class LatinArray(SymbolArray):
    """No symbol repeated within any row or within any column."""

    __slots__ = ()

    def _validate(self):
        super()._validate()
        bad = self.row_repeat()
        if bad is not None:
            raise LatinError(f"symbol repeated in row {bad[0] + 1} (column {bad[1] + 1})")
        bad = self.column_repeat()
        if bad is not None:
            raise LatinError(f"symbol repeated in column {bad[1] + 1} (row {bad[0] + 1})")


class RowLatinRectangle(SymbolArray):
    """``m x n`` grid over ``n`` symbols whose rows are permutations."""

    __slots__ = ()

    def _validate(self):
        super()._validate()
        if self.cols != self.n_symbols:
            raise LatinError(
                f"row-Latin rows need {self.n_symbols} columns, got {self.cols}"
            )
        if self.rows > self.cols:
            raise LatinError("row-Latin rectangle has more rows than columns")
        bad = self.row_repeat()
        if bad is not None:
            raise LatinError(f"symbol repeated in row {bad[0] + 1} (column {bad[1] + 1})")


class LatinRectangle(RowLatinRectangle, LatinArray):
    __slots__ = ()


class RowLatinSquare(RowLatinRectangle):
    __slots__ = ()

    def _validate(self):
        super()._validate()
        if self.rows != self.cols:
            raise LatinError(f"not square: {self.rows}x{self.cols}")

    @property
    def order(self) -> int:
        return self.rows


class LatinSquare(RowLatinSquare, LatinRectangle):
    __slots__ = ()

    def symbol_positions(self) -> np.ndarray:
        """``pos[s, r]`` is the column holding symbol ``s`` in row ``r``."""
        n = self.order
        pos = np.empty((n, n), dtype=np.int64)
        r = np.repeat(np.arange(n), n)
        c = np.tile(np.arange(n), n)
        pos[self._cells.ravel(), r] = c
        return pos


_CLASS_ORDER = (LatinSquare, RowLatinSquare, LatinRectangle, LatinArray, RowLatinRectangle)


def classify(cells, n_symbols: int | None = None) -> SymbolArray:
    """Return the most constrained structure the grid satisfies.

    Falls back to a bare :class:`SymbolArray` when no Latin property holds.
    """
    base = SymbolArray(cells, n_symbols)
    for cls in _CLASS_ORDER:
        try:
            return cls(base.cells, base.n_symbols)
        except LatinError:
            continue
    return base


def cyclic_square(n: int) -> LatinSquare:
    """Cayley table of Z_n."""
    i = np.arange(n)
    return LatinSquare((i[:, None] + i[None, :]) % n)


def elementary_abelian_square(k: int) -> LatinSquare:
    """Cayley table of Z_2^k (XOR table), order 2^k."""
    i = np.arange(1 << k)
    return LatinSquare(i[:, None] ^ i[None, :])


# --------------------------------------------------------------------------
# text format

_KIND_NAMES = {
    "square": LatinSquare,
    "row-latin": RowLatinSquare,
    "rectangle": RowLatinRectangle,
    "array": LatinArray,
}


def parse_square(text: str, kind: str | None = None) -> SymbolArray:
    """Parse the ``.lsq`` text format.

    Line 1 is ``n`` (square) or ``m k n`` (array with ``n`` symbols); then one
    line per row of whitespace separated 1-based symbols.  Blank lines are
    ignored.  With ``kind`` given ("square", "row-latin", "rectangle",
    "array") that structure is demanded and its first violated invariant is
    reported; otherwise the most constrained structure is returned.
    """
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, toks) for no, toks in lines if toks]
    if not lines:
        raise ParseError("empty input")
    head_no, head = lines[0]
    try:
        dims = [int(t) for t in head]
    except ValueError:
        raise ParseError(f"bad header {' '.join(head)!r}", head_no) from None
    if len(dims) == 1:
        m = k = n = dims[0]
    elif len(dims) == 3:
        m, k, n = dims
    else:
        raise ParseError("header must be 'n' or 'm k n'", head_no)
    if min(m, k, n) < 0:
        raise ParseError("negative dimension", head_no)
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} rows, found {len(body)}", body[-1][0] if body else head_no)
    cells = np.zeros((m, k), dtype=np.int64)
    for r, (no, toks) in enumerate(body):
        if len(toks) != k:
            raise ParseError(f"ragged row: expected {k} entries, found {len(toks)}", no)
        for c, tok in enumerate(toks):
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"not an integer: {tok!r}", no, c + 1) from None
            if not 1 <= v <= n:
                raise ParseError(f"symbol {v} out of range 1..{n}", no, c + 1)
            cells[r, c] = v - 1
    row_line = [no for no, _ in body]

    def locate(err_cls):
        probe = SymbolArray(cells, n)
        if issubclass(err_cls, RowLatinRectangle) and k != n:
            return ParseError(f"row-Latin grid needs {n} columns, has {k}", head_no)
        if issubclass(err_cls, RowLatinSquare) and m != k:
            return ParseError(f"not square: {m}x{k}", head_no)
        bad = probe.row_repeat()
        if bad is not None:
            return ParseError("duplicate symbol in row", row_line[bad[0]], bad[1] + 1)
        bad = probe.column_repeat()
        if bad is not None and issubclass(err_cls, LatinArray):
            return ParseError("duplicate symbol in column", row_line[bad[0]], bad[1] + 1)
        return ParseError(f"grid is not a {err_cls.__name__}")

    if kind is not None:
        try:
            cls = _KIND_NAMES[kind]
        except KeyError:
            raise ValueError(f"unknown kind {kind!r}") from None
        try:
            return cls(cells, n)
        except LatinError:
            raise locate(cls) from None
    result = classify(cells, n)
    if type(result) is SymbolArray:
        raise locate(LatinArray)
    return result


def format_square(a: SymbolArray) -> str:
    m, k = a.shape
    if isinstance(a, RowLatinSquare):
        head = f"{m}"
    else:
        head = f"{m} {k} {a.n_symbols}"
    width = len(str(a.n_symbols))
    lines = [head]
    for row in a.to_lists():
        lines.append(" ".join(str(v).rjust(width) for v in row))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# conjugates, deletion


def _as_perm3(perm) -> tuple[int, int, int]:
    if isinstance(perm, str):
        perm = tuple(int(ch) for ch in perm)
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != [1, 2, 3]:
        raise ValueError(f"not a permutation of 123 in image notation: {perm}")
    return perm


S3 = ("123", "132", "213", "231", "312", "321")


def compose3(h, g) -> str:
    """Image notation of ``h o g`` (apply ``g`` first)."""
    h, g = _as_perm3(h), _as_perm3(g)
    return "".join(str(h[g[i] - 1]) for i in range(3))


def conjugate(L: LatinSquare, perm) -> LatinSquare:
    """The ``perm``-conjugate of ``L``; ``perm`` in image notation, e.g. "312".

    Coordinate ``i`` of every entry (row, column, symbol) moves to position
    ``perm[i]``, so "213" is the transpose and "312" sends ``(r, c, s)`` to
    ``(c, s, r)``.
    """
    p = _as_perm3(perm)
    n = L.order
    r = np.repeat(np.arange(n), n)
    c = np.tile(np.arange(n), n)
    old = np.stack([r, c, L.cells.ravel()], axis=1)
    new = np.empty_like(old)
    for i in range(3):
        new[:, p[i] - 1] = old[:, i]
    out = np.empty((n, n), dtype=np.int64)
    out[new[:, 0], new[:, 1]] = new[:, 2]
    return LatinSquare(out)


def delete(L: SymbolArray, i: int, j: int) -> SymbolArray:
    """Delete row ``i`` and column ``j``; the symbol universe is kept."""
    m, k = L.shape
    if not (0 <= i < m and 0 <= j < k):
        raise IndexError(f"cell ({i},{j}) outside {m}x{k} grid")
    cells = np.delete(np.delete(L.cells, i, axis=0), j, axis=1)
    return classify(cells, L.n_symbols)


def delete_row(L: SymbolArray, i: int) -> SymbolArray:
    if not 0 <= i < L.rows:
        raise IndexError(f"row {i} outside grid")
    return classify(np.delete(L.cells, i, axis=0), L.n_symbols)


def reinsert(A: SymbolArray, i: int, j: int, row, col, corner: int) -> np.ndarray:
    """Inverse of :func:`delete` given the removed row, column and corner cell.

    ``row`` and ``col`` are the removed row/column without the corner entry.
    """
    cells = np.insert(A.cells, i, np.asarray(row, dtype=np.int64), axis=0)
    col = np.insert(np.asarray(col, dtype=np.int64), i, corner)
    return np.insert(cells, j, col, axis=1)


# --------------------------------------------------------------------------
# intercalates


@dataclass(frozen=True, order=True)
class Intercalate:
    """Rows ``r1 < r2``, columns ``c1 < c2``; ``a`` sits at (r1,c1) and (r2,c2)."""

    r1: int
    r2: int
    c1: int
    c2: int
    a: int
    b: int

    def cells(self):
        return ((self.r1, self.c1), (self.r1, self.c2), (self.r2, self.c1), (self.r2, self.c2))

    def present_in(self, L: SymbolArray) -> bool:
        g = L.cells
        n = L.rows
        if not (0 <= self.r1 < self.r2 < n and 0 <= self.c1 < self.c2 < L.cols):
            return False
        return (
            self.a != self.b
            and g[self.r1, self.c1] == self.a
            and g[self.r2, self.c2] == self.a
            and g[self.r1, self.c2] == self.b
            and g[self.r2, self.c1] == self.b
        )


def find_intercalates(L: LatinSquare) -> list[Intercalate]:
    """All intercalates, ordered by ``(r1, r2, c1, c2)``."""
    g = L.cells.tolist()
    pos = L.symbol_positions().T.tolist()  # pos[r][s] -> column
    n = L.order
    out = []
    for r1 in range(n):
        row1 = g[r1]
        for r2 in range(r1 + 1, n):
            row2 = g[r2]
            p2 = pos[r2]
            for c1 in range(n):
                c2 = p2[row1[c1]]
                if c2 > c1 and row1[c2] == row2[c1]:
                    out.append(Intercalate(r1, r2, c1, c2, row1[c1], row1[c2]))
    return out


def turn_intercalate(L: LatinSquare, ic: Intercalate) -> LatinSquare:
    if not ic.present_in(L):
        raise LatinError(f"{ic} is not an intercalate of this square")
    cells = L.cells.copy()
    cells[ic.r1, ic.c1] = cells[ic.r2, ic.c2] = ic.b
    cells[ic.r1, ic.c2] = cells[ic.r2, ic.c1] = ic.a
    return LatinSquare(cells)


# --------------------------------------------------------------------------
# parities


@dataclass(frozen=True)
class Diagonal:
    """A diagonal as its row -> column bijection."""

    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cols", tuple(int(c) for c in self.cols))
        if sorted(self.cols) != list(range(len(self.cols))):
            raise LatinError(f"not a bijection: {self.cols}")

    def symbols(self, L: SymbolArray) -> list[int]:
        return [int(L.cells[r, c]) for r, c in enumerate(self.cols)]

    def weight(self, L: SymbolArray) -> int:
        return len(set(self.symbols(L)))


class TransversalParities(NamedTuple):
    eps_r: int
    eps_c: int
    eps_s: int

    @property
    def label(self) -> str:
        return f"{self.eps_r}{self.eps_c}{self.eps_s}"


def transversal_parities(L: LatinSquare, d: Diagonal | Sequence[int]) -> TransversalParities:
    """Parities of the row->column, column->symbol and symbol->row maps."""
    if not isinstance(d, Diagonal):
        d = Diagonal(tuple(d))
    n = L.order
    if len(d.cols) != n:
        raise LatinError("diagonal length differs from the order")
    syms = d.symbols(L)
    if len(set(syms)) != n:
        raise LatinError("diagonal is not a transversal")
    sigma_r = list(d.cols)
    sigma_c = [0] * n
    sigma_s = [0] * n
    for r in range(n):
        sigma_c[sigma_r[r]] = syms[r]
        sigma_s[syms[r]] = r
    return TransversalParities(
        permutation_parity(sigma_r), permutation_parity(sigma_c), permutation_parity(sigma_s)
    )


def square_parities(L: LatinSquare) -> tuple[int, int, int]:
    """``(pi_r, pi_c, pi_s)``: Z_2 sums of row, column and symbol permutation parities.

    Rows are read as column -> symbol maps, columns as row -> symbol maps and
    symbols as row -> column maps.
    """
    g = L.cells
    pi_r = sum(permutation_parity(row) for row in g.tolist()) & 1
    pi_c = sum(permutation_parity(col) for col in g.T.tolist()) & 1
    pi_s = sum(permutation_parity(p) for p in L.symbol_positions().tolist()) & 1
    return pi_r, pi_c, pi_s
