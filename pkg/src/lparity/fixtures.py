"""Published example squares, embedded and mirrored as ``.lsq`` files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .core import LatinSquare, RowLatinSquare, SymbolArray, format_square, parse_square

ORDER9 = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9],
    [2, 1, 4, 3, 6, 5, 9, 7, 8],
    [3, 6, 1, 8, 7, 9, 5, 2, 4],
    [4, 3, 5, 6, 9, 7, 8, 1, 2],
    [5, 4, 2, 9, 8, 1, 6, 3, 7],
    [6, 9, 7, 5, 3, 8, 2, 4, 1],
    [7, 8, 9, 1, 2, 3, 4, 5, 6],
    [8, 5, 6, 7, 4, 2, 1, 9, 3],
    [9, 7, 8, 2, 1, 4, 3, 6, 5],
]

ORDER10 = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
    [2, 1, 4, 3, 6, 5, 8, 7, 10, 9],
    [3, 6, 5, 7, 2, 8, 10, 9, 4, 1],
    [4, 5, 6, 8, 7, 9, 2, 10, 1, 3],
    [5, 8, 7, 9, 1, 10, 4, 3, 2, 6],
    [6, 4, 8, 10, 9, 7, 1, 2, 3, 5],
    [7, 3, 10, 5, 8, 1, 9, 4, 6, 2],
    [8, 7, 9, 6, 10, 2, 3, 1, 5, 4],
    [9, 10, 1, 2, 3, 4, 5, 6, 7, 8],
    [10, 9, 2, 1, 4, 3, 6, 5, 8, 7],
]

ORDER11 = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
    [2, 1, 4, 3, 6, 5, 8, 7, 11, 9, 10],
    [3, 8, 1, 6, 7, 10, 11, 9, 4, 5, 2],
    [4, 11, 2, 8, 9, 7, 5, 10, 1, 3, 6],
    [5, 3, 6, 10, 8, 9, 1, 2, 7, 11, 4],
    [6, 4, 7, 9, 10, 11, 2, 3, 8, 1, 5],
    [7, 5, 8, 11, 4, 2, 10, 1, 3, 6, 9],
    [8, 7, 9, 5, 11, 1, 6, 4, 10, 2, 3],
    [9, 10, 11, 1, 2, 3, 4, 5, 6, 7, 8],
    [10, 6, 5, 7, 3, 8, 9, 11, 2, 4, 1],
    [11, 9, 10, 2, 1, 4, 3, 6, 5, 8, 7],
]

# every transversal passes through (row 2, column 1), 1-based
L5 = [
    [1, 2, 3, 4, 5],
    [2, 1, 4, 5, 3],
    [3, 4, 5, 1, 2],
    [4, 5, 2, 3, 1],
    [5, 3, 1, 2, 4],
]
L5_SHADED = (1, 0)

ROW_LATIN2 = [
    [1, 2],
    [1, 2],
]

ROW_LATIN6 = [
    [1, 3, 6, 2, 5, 4],
    [2, 1, 5, 6, 4, 3],
    [3, 2, 4, 1, 5, 6],
    [4, 2, 1, 5, 6, 3],
    [5, 2, 3, 6, 1, 4],
    [6, 5, 2, 3, 4, 1],
]

_TABLE = {
    "order9": (LatinSquare, ORDER9),
    "order10": (LatinSquare, ORDER10),
    "order11": (LatinSquare, ORDER11),
    "L5": (LatinSquare, L5),
    "rowlatin2": (RowLatinSquare, ROW_LATIN2),
    "rowlatin6": (RowLatinSquare, ROW_LATIN6),
}

NAMES = tuple(_TABLE)


def paper_fixtures() -> dict[str, SymbolArray]:
    return {name: cls.from_rows(rows) for name, (cls, rows) in _TABLE.items()}


def fixture(name: str) -> SymbolArray:
    cls, rows = _TABLE[name]
    return cls.from_rows(rows)


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("lparity") / "data" / f"{name}.lsq"))


def load_fixture_file(name: str) -> SymbolArray:
    return parse_square(fixture_path(name).read_text())


def emit_fixtures(directory) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, sq in paper_fixtures().items():
        p = out / f"{name}.lsq"
        p.write_text(format_square(sq))
        written.append(p)
    return written
